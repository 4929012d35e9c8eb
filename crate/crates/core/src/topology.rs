//! Topological invariants and structural predicates of quivers.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::quiver::Quiver;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Source,
    Sink,
    Internal,
    Isolated,
}

impl VertexKind {
    pub fn is_end(self) -> bool {
        matches!(self, VertexKind::Source | VertexKind::Sink)
    }

    pub fn name(self) -> &'static str {
        match self {
            VertexKind::Source => "source",
            VertexKind::Sink => "sink",
            VertexKind::Internal => "internal",
            VertexKind::Isolated => "isolated",
        }
    }
}

/// Connected components of the underlying undirected graph, each sorted,
/// listed in order of their smallest vertex.
pub fn components(q: &Quiver) -> Vec<Vec<String>> {
    let n = q.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for a in q.arrows() {
        let t = q.vertex_index(&a.tail).unwrap();
        let h = q.vertex_index(&a.head).unwrap();
        adj[t].push(h);
        adj[h].push(t);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp.into_iter().map(|i| q.vertices()[i].clone()).collect());
    }
    out
}

pub fn is_connected(q: &Quiver) -> bool {
    components(q).len() == 1
}

/// First Betti number `N_A - N_V + c` of the underlying 1-complex.
pub fn betti_number(q: &Quiver) -> usize {
    q.num_arrows() + components(q).len() - q.num_vertices()
}

/// `N_V - N_A`.
pub fn euler_characteristic(q: &Quiver) -> i64 {
    q.num_vertices() as i64 - q.num_arrows() as i64
}

/// Loops count as both incoming and outgoing, so a vertex carrying only a
/// loop is internal.
pub fn classify_vertex(q: &Quiver, v: &str) -> Result<VertexKind> {
    q.require_vertex(v)?;
    let incoming = q.arrows().iter().any(|a| a.head == v);
    let outgoing = q.arrows().iter().any(|a| a.tail == v);
    Ok(match (incoming, outgoing) {
        (false, false) => VertexKind::Isolated,
        (true, false) => VertexKind::Sink,
        (false, true) => VertexKind::Source,
        (true, true) => VertexKind::Internal,
    })
}

/// Sources and sinks, in vertex order.
pub fn ends(q: &Quiver) -> Vec<(String, VertexKind)> {
    q.vertices()
        .iter()
        .filter_map(|v| {
            let k = classify_vertex(q, v).unwrap();
            k.is_end().then(|| (v.clone(), k))
        })
        .collect()
}

/// No vertex is a source or a sink.
pub fn is_super_cyclic(q: &Quiver) -> bool {
    ends(q).is_empty()
}

/// Strongly connected components (Tarjan), as sorted vertex lists.
pub fn strongly_connected_components(q: &Quiver) -> Vec<Vec<String>> {
    let n = q.num_vertices();
    let mut succ = vec![Vec::new(); n];
    for a in q.arrows() {
        let t = q.vertex_index(&a.tail).unwrap();
        let h = q.vertex_index(&a.head).unwrap();
        succ[t].push(h);
    }
    let mut st = Tarjan {
        succ: &succ,
        counter: 0,
        index: vec![None; n],
        low: vec![0; n],
        stack: Vec::new(),
        on_stack: vec![false; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.index[v].is_none() {
            st.visit(v);
        }
    }
    let mut comps: Vec<Vec<String>> = st
        .comps
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c.into_iter().map(|i| q.vertices()[i].clone()).collect()
        })
        .collect();
    comps.sort();
    comps
}

struct Tarjan<'a> {
    succ: &'a [Vec<usize>],
    counter: usize,
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    stack: Vec<usize>,
    on_stack: Vec<bool>,
    comps: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = Some(self.counter);
        self.low[v] = self.counter;
        self.counter += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for i in 0..self.succ[v].len() {
            let w = self.succ[v][i];
            match self.index[w] {
                None => {
                    self.visit(w);
                    self.low[v] = self.low[v].min(self.low[w]);
                }
                Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(self.low[v]) == self.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = self.stack.pop().expect("tarjan stack underflow");
                self.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            self.comps.push(comp);
        }
    }
}

pub fn is_strongly_connected(q: &Quiver) -> bool {
    strongly_connected_components(q).len() == 1
}

/// Shortest oriented path from `from` to `to` (ties broken by arrow id).
/// The empty word is returned when `from == to`.
pub fn directed_path(q: &Quiver, from: &str, to: &str) -> Result<Option<Word>> {
    q.require_vertex(from)?;
    q.require_vertex(to)?;
    let mut prev: BTreeMap<&str, &str> = BTreeMap::new();
    let mut via: BTreeMap<&str, &str> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(from);
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for a in q.arrows().iter().filter(|a| a.tail == u) {
            let w = a.head.as_str();
            if seen.insert(w) {
                prev.insert(w, u);
                via.insert(w, a.id.as_str());
                queue.push_back(w);
            }
        }
    }
    if !seen.contains(to) {
        return Ok(None);
    }
    // walking back from `to` yields letters in composition order
    let mut letters = Vec::new();
    let mut cur = to;
    while cur != from {
        letters.push(Letter::fwd(via[cur]));
        cur = prev[cur];
    }
    Ok(Some(Word::new(letters)))
}

/// Deterministic BFS spanning forest: one root per component (its smallest
/// vertex), neighbours explored in arrow-id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest {
    /// Tree arrows in discovery order.
    pub tree_arrows: Vec<String>,
    /// vertex -> (tree arrow, parent vertex), absent for roots.
    pub parent: BTreeMap<String, (String, String)>,
    /// vertex -> root of its component.
    pub root: BTreeMap<String, String>,
    pub roots: Vec<String>,
}

impl SpanningForest {
    pub fn new(q: &Quiver) -> Self {
        let mut parent = BTreeMap::new();
        let mut root = BTreeMap::new();
        let mut roots = Vec::new();
        let mut tree_arrows = Vec::new();
        for r in q.vertices() {
            if root.contains_key(r) {
                continue;
            }
            roots.push(r.clone());
            root.insert(r.clone(), r.clone());
            let mut queue = VecDeque::new();
            queue.push_back(r.clone());
            while let Some(u) = queue.pop_front() {
                for a in q.incident(&u) {
                    if a.is_loop() {
                        continue;
                    }
                    let w = if a.tail == u { &a.head } else { &a.tail };
                    if root.contains_key(w) {
                        continue;
                    }
                    root.insert(w.clone(), r.clone());
                    parent.insert(w.clone(), (a.id.clone(), u.clone()));
                    tree_arrows.push(a.id.clone());
                    queue.push_back(w.clone());
                }
            }
        }
        SpanningForest {
            tree_arrows,
            parent,
            root,
            roots,
        }
    }

    pub fn is_tree_arrow(&self, id: &str) -> bool {
        self.tree_arrows.iter().any(|a| a == id)
    }

    /// Tree path from the root of `v`'s component to `v`.
    pub fn path_from_root(&self, q: &Quiver, v: &str) -> Word {
        let mut letters = Vec::new();
        let mut cur = v;
        while let Some((arrow, p)) = self.parent.get(cur) {
            let a = q.arrow(arrow).expect("tree arrow belongs to quiver");
            if a.tail == *p {
                letters.push(Letter::fwd(arrow.clone()));
            } else {
                letters.push(Letter::inv(arrow.clone()));
            }
            cur = p;
        }
        Word::new(letters)
    }
}

/// For each non-tree arrow `a` (in arrow-id order) the closed word at the
/// component root: tree path to `t_a`, then `a`, then back to the root.
pub fn fundamental_cycles(q: &Quiver) -> (Vec<Word>, SpanningForest) {
    let forest = SpanningForest::new(q);
    let cycles = q
        .arrows()
        .iter()
        .filter(|a| !forest.is_tree_arrow(&a.id))
        .map(|a| {
            let to_tail = forest.path_from_root(q, &a.tail);
            let back = forest.path_from_root(q, &a.head).inverse();
            back.compose(&Word::new(vec![Letter::fwd(a.id.clone())]))
                .compose(&to_tail)
        })
        .collect();
    (cycles, forest)
}

/// Complex dimension of the moduli space of `g`-valued representations of a
/// connected quiver: `dim Z(G) - dim G * chi(Q)`, or 0 when `Q` is a tree.
pub fn dimension_formula(q: &Quiver, g: &GroupSpec) -> Result<i64> {
    if !is_connected(q) {
        return Err(Error::Disconnected);
    }
    let (dim, center) = match (g.dim(), g.center_dim()) {
        (Some(d), Some(c)) => (d as i64, c as i64),
        _ => return Err(Error::CompactGroup),
    };
    if betti_number(q) == 0 {
        return Ok(0);
    }
    Ok(center - dim * euler_characteristic(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_loop() -> Quiver {
        Quiver::from_triples(&["v0"], &[("a0", "v0", "v0")]).unwrap()
    }

    fn theta() -> Quiver {
        Quiver::from_triples(
            &["v0", "v1"],
            &[("a0", "v0", "v1"), ("a1", "v0", "v1"), ("a2", "v0", "v1")],
        )
        .unwrap()
    }

    fn bridge() -> Quiver {
        Quiver::from_triples(
            &["p0", "p1", "q0", "q1"],
            &[
                ("a", "p0", "p1"),
                ("b", "p1", "p0"),
                ("c", "q0", "q1"),
                ("d", "q1", "q0"),
                ("e", "p0", "q0"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_number(&one_loop()), 1);
        let cyc = Quiver::from_triples(
            &["v0", "v1", "v2"],
            &[("a0", "v0", "v1"), ("a1", "v1", "v2"), ("a2", "v2", "v0")],
        )
        .unwrap();
        assert_eq!(betti_number(&cyc), 1);
        let two = Quiver::from_triples(&["x", "y"], &[("a", "x", "x"), ("b", "y", "y")]).unwrap();
        assert_eq!(betti_number(&two), 2);
    }

    #[test]
    fn euler_examples() {
        let tree = Quiver::from_triples(
            &["v0", "v1", "v2", "v3", "v4"],
            &[
                ("a0", "v0", "v1"),
                ("a1", "v1", "v2"),
                ("a2", "v3", "v1"),
                ("a3", "v3", "v4"),
            ],
        )
        .unwrap();
        assert_eq!(euler_characteristic(&tree), 1);
        assert_eq!(euler_characteristic(&one_loop()), 0);
        assert_eq!(euler_characteristic(&theta()), -1);
    }

    #[test]
    fn classification() {
        let tail = Quiver::from_triples(&["v0", "v1"], &[("a0", "v0", "v1"), ("a1", "v1", "v1")])
            .unwrap();
        assert_eq!(classify_vertex(&tail, "v0").unwrap(), VertexKind::Source);
        assert_eq!(classify_vertex(&tail, "v1").unwrap(), VertexKind::Internal);
        let one = Quiver::from_triples(&["v0", "v1"], &[("a0", "v0", "v1")]).unwrap();
        assert_eq!(classify_vertex(&one, "v1").unwrap(), VertexKind::Sink);
        assert_eq!(classify_vertex(&one_loop(), "v0").unwrap(), VertexKind::Internal);
        let iso = Quiver::from_triples(&["v"], &[]).unwrap();
        assert_eq!(classify_vertex(&iso, "v").unwrap(), VertexKind::Isolated);
        assert!(classify_vertex(&iso, "w").is_err());
    }

    #[test]
    fn predicates() {
        assert_eq!(
            (is_super_cyclic(&one_loop()), is_strongly_connected(&one_loop())),
            (true, true)
        );
        let one = Quiver::from_triples(&["v0", "v1"], &[("a0", "v0", "v1")]).unwrap();
        assert_eq!((is_super_cyclic(&one), is_strongly_connected(&one)), (false, false));
        let b = bridge();
        assert_eq!((is_super_cyclic(&b), is_strongly_connected(&b)), (true, false));
        assert_eq!(strongly_connected_components(&b).len(), 2);
    }

    #[test]
    fn fundamental_cycle_examples() {
        let tree = Quiver::from_triples(&["v0", "v1", "v2"], &[("a", "v0", "v1"), ("b", "v2", "v1")])
            .unwrap();
        assert!(fundamental_cycles(&tree).0.is_empty());

        let (c, _) = fundamental_cycles(&one_loop());
        assert_eq!(c, vec![Word::path(&["a0"])]);

        let (c, forest) = fundamental_cycles(&theta());
        assert_eq!(forest.tree_arrows, vec![String::from("a0")]);
        // based at the root v0: a1 first, then back along a0
        assert_eq!(
            c,
            vec![
                Word::new(vec![Letter::inv("a0"), Letter::fwd("a1")]),
                Word::new(vec![Letter::inv("a0"), Letter::fwd("a2")]),
            ]
        );
        for w in &c {
            assert_eq!(w.closed_at(&theta()).unwrap(), Some("v0".into()));
        }
    }

    #[test]
    fn fundamental_cycles_are_closed_at_roots() {
        let b = bridge();
        let (cycles, forest) = fundamental_cycles(&b);
        assert_eq!(cycles.len(), betti_number(&b));
        for w in &cycles {
            let base = w.closed_at(&b).unwrap().unwrap();
            assert_eq!(forest.root[&base], base);
        }
    }

    #[test]
    fn dimension_examples() {
        let rose = Quiver::from_triples(&["v"], &[("x", "v", "v"), ("y", "v", "v")]).unwrap();
        assert_eq!(dimension_formula(&rose, &GroupSpec::gl(2)).unwrap(), 5);
        assert_eq!(dimension_formula(&rose, &GroupSpec::sl(2)).unwrap(), 3);
        let tree = Quiver::from_triples(&["v0", "v1"], &[("a", "v0", "v1")]).unwrap();
        assert_eq!(dimension_formula(&tree, &GroupSpec::gl(3)).unwrap(), 0);
        assert_eq!(dimension_formula(&tree, &GroupSpec::sl(2)).unwrap(), 0);
        assert_eq!(
            dimension_formula(&rose, &GroupSpec::u(2)).unwrap_err(),
            Error::CompactGroup
        );
        let two = Quiver::from_triples(&["x", "y"], &[("a", "x", "x"), ("b", "y", "y")]).unwrap();
        assert_eq!(
            dimension_formula(&two, &GroupSpec::gl(2)).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn directed_paths() {
        let b = bridge();
        assert!(directed_path(&b, "q0", "p0").unwrap().is_none());
        let w = directed_path(&b, "p1", "q1").unwrap().unwrap();
        assert_eq!(w, Word::path(&["c", "e", "b"]));
        let ep = w.endpoints(&b).unwrap().unwrap();
        assert_eq!((ep.start.as_str(), ep.end.as_str()), ("p1", "q1"));
    }
}
