//! Group-valued representations, the gauge action and what is built on it.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::matgroup::{in_group, rng_from_seed, sample_element};
use crate::matrix::{CMatrix, C64};
use crate::ops::{collapse, reverse_arrows, ReductionTrace};
use crate::quiver::Quiver;
use crate::topology::{fundamental_cycles, is_connected, SpanningForest};
use crate::word::{RelationSet, Word};
use crate::TOL_MEMBERSHIP;

/// A marking `f: Q_A -> G`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    quiver: Quiver,
    group: GroupSpec,
    markings: BTreeMap<String, CMatrix>,
}

fn check_matrices(
    keys: &[String],
    group: &GroupSpec,
    values: &BTreeMap<String, CMatrix>,
    tol: f64,
) -> Result<()> {
    for k in keys {
        let m = values.get(k).ok_or_else(|| Error::MissingMarking(k.clone()))?;
        if m.n() != group.n {
            return Err(Error::SizeMismatch {
                expected: group.n,
                found: m.n(),
            });
        }
        if !in_group(m, group, tol)? {
            return Err(Error::NotInGroup(k.clone()));
        }
    }
    if let Some(extra) = values.keys().find(|k| keys.binary_search(k).is_err()) {
        return Err(Error::MissingMarking(extra.clone()));
    }
    Ok(())
}

impl Representation {
    /// Checked constructor: every arrow marked, every marking in the group
    /// at `TOL_MEMBERSHIP`.
    pub fn new(quiver: Quiver, group: GroupSpec, markings: BTreeMap<String, CMatrix>) -> Result<Self> {
        let ids: Vec<String> = quiver.arrow_ids().map(ToString::to_string).collect();
        check_matrices(&ids, &group, &markings, TOL_MEMBERSHIP)?;
        Ok(Representation {
            quiver,
            group,
            markings,
        })
    }

    pub(crate) fn from_parts(quiver: Quiver, group: GroupSpec, markings: BTreeMap<String, CMatrix>) -> Self {
        debug_assert_eq!(quiver.num_arrows(), markings.len());
        Representation {
            quiver,
            group,
            markings,
        }
    }

    pub fn identity(quiver: Quiver, group: GroupSpec) -> Self {
        let markings = quiver
            .arrow_ids()
            .map(|a| (a.to_string(), CMatrix::identity(group.n)))
            .collect();
        Representation::from_parts(quiver, group, markings)
    }

    /// One independent sample per arrow, in arrow-id order.
    pub fn sample<R: Rng + ?Sized>(quiver: Quiver, group: GroupSpec, rng: &mut R) -> Self {
        let markings = quiver
            .arrow_ids()
            .map(|a| (a.to_string(), sample_element(&group, rng)))
            .collect();
        Representation::from_parts(quiver, group, markings)
    }

    pub fn random(quiver: Quiver, group: GroupSpec, seed: u64) -> Self {
        Representation::sample(quiver, group, &mut rng_from_seed(seed))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn markings(&self) -> &BTreeMap<String, CMatrix> {
        &self.markings
    }

    pub fn marking(&self, arrow: &str) -> Result<&CMatrix> {
        self.markings
            .get(arrow)
            .ok_or_else(|| Error::UnknownArrow(arrow.to_string()))
    }

    /// Largest Frobenius distance between corresponding markings.
    pub fn max_dist(&self, other: &Representation) -> Result<f64> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        Ok(self
            .markings
            .iter()
            .map(|(a, m)| m.dist(&other.markings[a]))
            .fold(0.0, f64::max))
    }

    /// Applies `op` to every marking, keeping quiver and group.
    pub fn map_markings(&self, mut op: impl FnMut(&str, &CMatrix) -> Result<CMatrix>) -> Result<Self> {
        let markings = self
            .markings
            .iter()
            .map(|(a, m)| Ok((a.clone(), op(a, m)?)))
            .collect::<Result<_>>()?;
        Ok(Representation::from_parts(self.quiver.clone(), self.group, markings))
    }

    /// Same markings reinterpreted in another group of the same size.
    pub fn with_group(self, group: GroupSpec) -> Result<Self> {
        if group.n != self.group.n {
            return Err(Error::GroupMismatch);
        }
        Representation::new(self.quiver, group, self.markings)
    }
}

/// A gauge element `g: Q_V -> G`; products are taken vertex-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeElement {
    quiver: Quiver,
    group: GroupSpec,
    values: BTreeMap<String, CMatrix>,
}

impl GaugeElement {
    pub fn new(quiver: Quiver, group: GroupSpec, values: BTreeMap<String, CMatrix>) -> Result<Self> {
        check_matrices(quiver.vertices(), &group, &values, TOL_MEMBERSHIP)?;
        Ok(GaugeElement { quiver, group, values })
    }

    pub(crate) fn from_parts(quiver: Quiver, group: GroupSpec, values: BTreeMap<String, CMatrix>) -> Self {
        GaugeElement { quiver, group, values }
    }

    pub fn identity(quiver: Quiver, group: GroupSpec) -> Self {
        let values = quiver
            .vertices()
            .iter()
            .map(|v| (v.clone(), CMatrix::identity(group.n)))
            .collect();
        GaugeElement { quiver, group, values }
    }

    pub fn sample<R: Rng + ?Sized>(quiver: Quiver, group: GroupSpec, rng: &mut R) -> Self {
        let values = quiver
            .vertices()
            .iter()
            .map(|v| (v.clone(), sample_element(&group, rng)))
            .collect();
        GaugeElement { quiver, group, values }
    }

    pub fn random(quiver: Quiver, group: GroupSpec, seed: u64) -> Self {
        GaugeElement::sample(quiver, group, &mut rng_from_seed(seed))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &BTreeMap<String, CMatrix> {
        &self.values
    }

    pub fn value(&self, v: &str) -> Result<&CMatrix> {
        self.values
            .get(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    /// `(self * other)(v) = self(v) other(v)`.
    pub fn compose(&self, other: &GaugeElement) -> Result<GaugeElement> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let values = self
            .values
            .iter()
            .map(|(v, m)| (v.clone(), m * &other.values[v]))
            .collect();
        Ok(GaugeElement::from_parts(self.quiver.clone(), self.group, values))
    }

    pub fn inverse(&self) -> Result<GaugeElement> {
        let values = self
            .values
            .iter()
            .map(|(v, m)| Ok((v.clone(), m.inverse()?)))
            .collect::<Result<_>>()?;
        Ok(GaugeElement::from_parts(self.quiver.clone(), self.group, values))
    }
}

fn gauge_markings(
    q: &Quiver,
    values: &BTreeMap<String, CMatrix>,
    markings: &BTreeMap<String, CMatrix>,
) -> Result<BTreeMap<String, CMatrix>> {
    let inverses: BTreeMap<&str, CMatrix> = values
        .iter()
        .map(|(v, m)| Ok((v.as_str(), m.inverse()?)))
        .collect::<Result<_>>()?;
    Ok(q.arrows()
        .iter()
        .map(|a| {
            let m = &(&values[&a.head] * &markings[&a.id]) * &inverses[a.tail.as_str()];
            (a.id.clone(), m)
        })
        .collect())
}

/// `(g . f)(a) = g(h_a) f(a) g(t_a)^-1`.
pub fn gauge_act(g: &GaugeElement, f: &Representation) -> Result<Representation> {
    if g.quiver != f.quiver {
        return Err(Error::QuiverMismatch);
    }
    if g.group != f.group {
        return Err(Error::GroupMismatch);
    }
    let markings = gauge_markings(&f.quiver, &g.values, &f.markings)?;
    Ok(Representation::from_parts(f.quiver.clone(), f.group, markings))
}

/// Gauge action on raw matrix markings (no group contract on the markings).
pub(crate) fn gauge_act_raw(
    g: &GaugeElement,
    q: &Quiver,
    markings: &BTreeMap<String, CMatrix>,
) -> Result<BTreeMap<String, CMatrix>> {
    if g.quiver != *q {
        return Err(Error::QuiverMismatch);
    }
    gauge_markings(q, &g.values, markings)
}

/// `f(a_k) ... f(a_1)` with inverses for `-1` letters. The empty word
/// evaluates to the identity.
pub fn evaluate_word(f: &Representation, w: &Word) -> Result<CMatrix> {
    w.endpoints(&f.quiver)?;
    let mut out = CMatrix::identity(f.group.n);
    for l in &w.letters {
        let m = &f.markings[&l.arrow];
        if l.inverse {
            out = &out * &m.inverse()?;
        } else {
            out = &out * m;
        }
    }
    Ok(out)
}

/// `||f(w) - I||_F <= tol` for every relation `w`.
pub fn satisfies_relations(f: &Representation, r: &RelationSet, tol: f64) -> Result<bool> {
    if let Err(v) = r.validate(&f.quiver) {
        let first = &v[0];
        return Err(Error::InvalidRelation {
            relation: first.relation,
            index: first.letter.unwrap_or(0),
        });
    }
    let id = CMatrix::identity(f.group.n);
    for w in &r.relations {
        if evaluate_word(f, w)?.dist(&id) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Traces of closed words.
pub fn trace_invariants(f: &Representation, words: &[Word]) -> Result<Vec<C64>> {
    words
        .iter()
        .map(|w| {
            w.closed_at(&f.quiver)?;
            Ok(evaluate_word(f, w)?.trace())
        })
        .collect()
}

/// Words whose traces are compared when testing gauge equivalence:
/// fundamental cycles, products of pairs sharing a basepoint, and the
/// relation words.
pub fn word_menu(q: &Quiver, relations: &RelationSet) -> Vec<Word> {
    let (cycles, _) = fundamental_cycles(q);
    let mut menu = cycles.clone();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            let bi = cycles[i].closed_at(q).ok().flatten();
            let bj = cycles[j].closed_at(q).ok().flatten();
            if bi.is_some() && bi == bj {
                menu.push(cycles[i].compose(&cycles[j]));
            }
        }
    }
    menu.extend(relations.relations.iter().cloned());
    menu
}

/// Result of pushing a representation along a reduction trace.
#[derive(Debug, Clone, PartialEq)]
pub struct Pushforward {
    pub representation: Representation,
    /// Accumulated step gauges as a gauge element on the source quiver: for
    /// every closed word `w` based at `v`,
    /// `push(translate(w)) = conjugator(v) f(w) conjugator(v)^-1`.
    pub conjugator: GaugeElement,
}

/// Replays a reduction trace on `f`: at each step the gauge that is the
/// collapsed arrow's marking at its tail (identity elsewhere) makes that
/// marking the identity, after which the arrow is dropped.
pub fn pushforward_collapse_with_conjugator(f: &Representation, trace: &ReductionTrace) -> Result<Pushforward> {
    if f.quiver != trace.source {
        return Err(Error::QuiverMismatch);
    }
    let n = f.group.n;
    let mut quiver = f.quiver.clone();
    let mut markings = f.markings.clone();
    let mut current: BTreeMap<String, String> =
        f.quiver.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
    let mut conj: BTreeMap<String, CMatrix> = f
        .quiver
        .vertices()
        .iter()
        .map(|v| (v.clone(), CMatrix::identity(n)))
        .collect();
    let empty = RelationSet::default();
    for step in &trace.steps {
        let (next, _, replayed) = collapse(&quiver, &empty, &step.arrow)?;
        if replayed != *step {
            return Err(Error::QuiverMismatch);
        }
        let f0 = markings
            .remove(&step.arrow)
            .ok_or_else(|| Error::MissingMarking(step.arrow.clone()))?;
        let f0_inv = f0.inverse()?;
        for a in quiver.arrows() {
            if a.id == step.arrow {
                continue;
            }
            let m = markings.get_mut(&a.id).expect("marking for every arrow");
            if a.head == step.tail {
                *m = &f0 * m;
            }
            if a.tail == step.tail {
                *m = &*m * &f0_inv;
            }
        }
        for (orig, cur) in current.iter_mut() {
            if *cur == step.tail {
                let c = conj.get_mut(orig).unwrap();
                *c = &f0 * c;
            }
            *cur = step.vertex_map.get(cur).expect("total vertex map").to_string();
        }
        quiver = next;
    }
    if quiver != trace.target {
        return Err(Error::QuiverMismatch);
    }
    Ok(Pushforward {
        representation: Representation::from_parts(quiver, f.group, markings),
        conjugator: GaugeElement::from_parts(f.quiver.clone(), f.group, conj),
    })
}

pub fn pushforward_collapse(f: &Representation, trace: &ReductionTrace) -> Result<Representation> {
    Ok(pushforward_collapse_with_conjugator(f, trace)?.representation)
}

/// The gauge element on the trace's target induced by `g`: at every step
/// the merged vertex takes the value of `g` at the head of the collapsed
/// arrow. Pushforward intertwines `g` with it.
pub fn induced_gauge(g: &GaugeElement, trace: &ReductionTrace) -> Result<GaugeElement> {
    if g.quiver != trace.source {
        return Err(Error::QuiverMismatch);
    }
    let mut values = g.values.clone();
    for step in &trace.steps {
        let head_value = values
            .get(&step.head)
            .cloned()
            .ok_or_else(|| Error::UnknownVertex(step.head.clone()))?;
        let removed = if step.merged == step.tail { &step.head } else { &step.tail };
        values.remove(removed);
        values.insert(step.merged.clone(), head_value);
    }
    Ok(GaugeElement::from_parts(trace.target.clone(), g.group, values))
}

/// Gauge along the BFS spanning tree (identity at each root) making every
/// tree arrow's marking the identity.
pub fn normal_form_tree_gauge(f: &Representation) -> Result<(GaugeElement, Representation)> {
    if !is_connected(&f.quiver) {
        return Err(Error::Disconnected);
    }
    let forest = SpanningForest::new(&f.quiver);
    let n = f.group.n;
    let mut values: BTreeMap<String, CMatrix> = BTreeMap::new();
    for r in &forest.roots {
        values.insert(r.clone(), CMatrix::identity(n));
    }
    for arrow_id in &forest.tree_arrows {
        let a = f.quiver.arrow(arrow_id).expect("tree arrow");
        let m = &f.markings[arrow_id];
        // the parent side is already gauged
        if values.contains_key(&a.tail) {
            let gt = values[&a.tail].clone();
            values.insert(a.head.clone(), &gt * &m.inverse()?);
        } else {
            let gh = values[&a.head].clone();
            values.insert(a.tail.clone(), &gh * m);
        }
    }
    let g = GaugeElement::from_parts(f.quiver.clone(), f.group, values);
    let gauged = gauge_act(&g, f)?;
    Ok((g, gauged))
}

/// `psi(g, f)(a) = g(h_a)^mu_a f(a) g(t_a)^-nu_a`. Only an action when the
/// group is abelian.
pub fn weighted_act(
    g: &GaugeElement,
    f: &Representation,
    mu: &BTreeMap<String, u64>,
    nu: &BTreeMap<String, u64>,
) -> Result<Representation> {
    if g.quiver != f.quiver {
        return Err(Error::QuiverMismatch);
    }
    if g.group != f.group {
        return Err(Error::GroupMismatch);
    }
    let mut markings = BTreeMap::new();
    for a in f.quiver.arrows() {
        let m = *mu.get(&a.id).ok_or_else(|| Error::MissingWeight(a.id.clone()))?;
        let k = *nu.get(&a.id).ok_or_else(|| Error::MissingWeight(a.id.clone()))?;
        let left = g.values[&a.head].powi(m as i64)?;
        let right = g.values[&a.tail].powi(-(k as i64))?;
        markings.insert(a.id.clone(), &(&left * &f.markings[&a.id]) * &right);
    }
    Ok(Representation::from_parts(f.quiver.clone(), f.group, markings))
}

/// Reverses the listed arrows and inverts their markings.
pub fn reverse_representation<S: AsRef<str>>(f: &Representation, subset: &[S]) -> Result<Representation> {
    let q = reverse_arrows(&f.quiver, subset)?;
    let mut markings = f.markings.clone();
    for s in subset {
        let m = markings.get_mut(s.as_ref()).unwrap();
        *m = m.inverse()?;
    }
    Ok(Representation::from_parts(q, f.group, markings))
}

/// Same gauge values viewed on another quiver with the same vertices.
pub fn transport_gauge(g: &GaugeElement, q: &Quiver) -> Result<GaugeElement> {
    if g.quiver.vertices() != q.vertices() {
        return Err(Error::QuiverMismatch);
    }
    Ok(GaugeElement::from_parts(q.clone(), g.group, g.values.clone()))
}
