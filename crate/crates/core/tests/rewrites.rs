use proptest::prelude::*;
use qrep_core::gen::{random_connected, random_strongly_connected, random_tree};
use qrep_core::matgroup::rng_from_seed;
use qrep_core::ops::{collapse, reduce_to_rose, reverse_arrows, ReductionTrace};
use qrep_core::topology::{
    betti_number, euler_characteristic, fundamental_cycles, is_strongly_connected, is_super_cyclic,
};
use qrep_core::{Quiver, RelationSet, Word};

fn connected(seed: u64) -> Quiver {
    random_connected(&mut rng_from_seed(seed), 8, 14)
}

/// Independent cycle-rank count: union-find over the underlying graph.
fn union_find_b1(q: &Quiver) -> usize {
    let idx = |v: &str| q.vertex_index(v).unwrap();
    let mut parent: Vec<usize> = (0..q.num_vertices()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut extra = 0;
    for a in q.arrows() {
        let (x, y) = (find(&mut parent, idx(&a.tail)), find(&mut parent, idx(&a.head)));
        if x == y {
            extra += 1;
        } else {
            parent[x] = y;
        }
    }
    extra
}

proptest! {
    #[test]
    fn betti_matches_union_find(seed in any::<u64>()) {
        let q = connected(seed);
        prop_assert_eq!(betti_number(&q), union_find_b1(&q));
        prop_assert_eq!(euler_characteristic(&q), 1 - betti_number(&q) as i64);
    }

    #[test]
    fn collapse_preserves_b1(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let q = connected(seed);
        let candidates: Vec<_> = q.arrows().iter().filter(|a| !a.is_loop()).collect();
        prop_assume!(!candidates.is_empty());
        let a = pick.get(&candidates);
        let (c, _, step) = collapse(&q, &RelationSet::default(), &a.id).unwrap();
        prop_assert_eq!(betti_number(&c), betti_number(&q));
        prop_assert_eq!(c.num_vertices() + 1, q.num_vertices());
        prop_assert_eq!(step.merged, std::cmp::min(a.tail.clone(), a.head.clone()));
    }

    #[test]
    fn reduction_yields_rose(seed in any::<u64>()) {
        let q = connected(seed);
        let (cycles, _) = fundamental_cycles(&q);
        let relations = RelationSet::new(cycles.iter().take(1).cloned().collect());
        let (rose, rel, trace) = reduce_to_rose(&q, &relations).unwrap();
        prop_assert_eq!(rose.num_vertices(), 1);
        prop_assert_eq!(rose.num_arrows(), betti_number(&q));
        prop_assert!(rose.arrows().iter().all(|a| a.is_loop()));
        prop_assert_eq!(trace.replay().unwrap(), (rose.clone(), rel.clone()));
        prop_assert!(rel.validate(&rose).is_ok());
        for w in &cycles {
            let t = trace.translate(w);
            prop_assert_eq!(t.closed_at(&rose).unwrap().is_some() || t.is_empty(), true);
        }
    }

    #[test]
    fn reverse_is_an_involution(seed in any::<u64>(), mask in any::<u16>()) {
        let q = connected(seed);
        let subset: Vec<String> = q
            .arrow_ids()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 16) & 1 == 1)
            .map(|(_, a)| a.to_string())
            .collect();
        let r = reverse_arrows(&q, &subset).unwrap();
        prop_assert_eq!(reverse_arrows(&r, &subset).unwrap(), q.clone());
        prop_assert_eq!(betti_number(&r), betti_number(&q));
    }

    #[test]
    fn strongly_connected_implies_no_ends(seed in any::<u64>()) {
        let q = random_strongly_connected(&mut rng_from_seed(seed), 7, 12);
        prop_assert!(is_strongly_connected(&q));
        prop_assert!(is_super_cyclic(&q));
    }

    #[test]
    fn trees_collapse_to_a_point(seed in any::<u64>(), nv in 1usize..9) {
        let t = random_tree(&mut rng_from_seed(seed), nv);
        let (rose, _, trace) = reduce_to_rose(&t, &RelationSet::default()).unwrap();
        prop_assert_eq!(rose.num_arrows(), 0);
        prop_assert_eq!(trace.steps.len(), nv - 1);
    }
}

#[test]
fn single_step_trace_matches_collapse() {
    let q = Quiver::from_triples(&["v0", "v1"], &[("a0", "v0", "v1"), ("a1", "v1", "v0")]).unwrap();
    let r = RelationSet::new(vec![Word::path(&["a1", "a0"])]);
    let t = ReductionTrace::single(&q, &r, "a0").unwrap();
    assert_eq!(t.target.num_vertices(), 1);
    assert_eq!(t.relations, RelationSet::new(vec![Word::path(&["a1"])]));
    assert_eq!(t.replay().unwrap(), (t.target.clone(), t.relations.clone()));
}
