//! Additive quiver representations (`End(W)` per arrow) and orbit-closure
//! diagnostics for the embedding of group-valued representations.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::matrix::{CMatrix, C64};
use crate::quiver::Quiver;
use crate::representation::{gauge_act_raw, GaugeElement, Representation};
use crate::topology::{classify_vertex, directed_path, ends, is_connected, is_strongly_connected, VertexKind};
use crate::word::{Letter, Word};

/// Markings in `End(C^n)`; invertibility is not required.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveRep {
    quiver: Quiver,
    n: usize,
    markings: BTreeMap<String, CMatrix>,
}

impl AdditiveRep {
    pub fn new(quiver: Quiver, n: usize, markings: BTreeMap<String, CMatrix>) -> Result<Self> {
        for a in quiver.arrow_ids() {
            let m = markings
                .get(a)
                .ok_or_else(|| Error::MissingMarking(a.to_string()))?;
            if m.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: m.n(),
                });
            }
        }
        if let Some(extra) = markings.keys().find(|k| quiver.arrow(k).is_none()) {
            return Err(Error::UnknownArrow(extra.clone()));
        }
        Ok(AdditiveRep { quiver, n, markings })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn markings(&self) -> &BTreeMap<String, CMatrix> {
        &self.markings
    }

    pub fn marking(&self, a: &str) -> Result<&CMatrix> {
        self.markings
            .get(a)
            .ok_or_else(|| Error::UnknownArrow(a.to_string()))
    }

    /// Every marking has determinant one within `tol`.
    pub fn is_unimodular(&self, tol: f64) -> bool {
        self.unimodular_violation(tol).is_none()
    }

    fn unimodular_violation(&self, tol: f64) -> Option<&str> {
        self.markings
            .iter()
            .find(|(_, m)| (m.det() - 1.0).norm() > tol)
            .map(|(a, _)| a.as_str())
    }

    /// Back to a group-valued representation; fails unless every marking
    /// lies in `group`.
    pub fn to_representation(&self, group: GroupSpec) -> Result<Representation> {
        if group.n != self.n {
            return Err(Error::GroupMismatch);
        }
        Representation::new(self.quiver.clone(), group, self.markings.clone())
    }

    pub fn max_dist(&self, other: &AdditiveRep) -> Result<f64> {
        if self.quiver != other.quiver || self.n != other.n {
            return Err(Error::QuiverMismatch);
        }
        Ok(self
            .markings
            .iter()
            .map(|(a, m)| m.dist(&other.markings[a]))
            .fold(0.0, f64::max))
    }
}

/// The canonical inclusion of group-valued markings into `End(W)` markings.
pub fn embed_additive(f: &Representation) -> AdditiveRep {
    AdditiveRep {
        quiver: f.quiver().clone(),
        n: f.group().n,
        markings: f.markings().clone(),
    }
}

/// `g(h_a) x(a) g(t_a)^-1`.
pub fn gauge_act_additive(g: &GaugeElement, x: &AdditiveRep) -> Result<AdditiveRep> {
    if g.group().n != x.n {
        return Err(Error::GroupMismatch);
    }
    let markings = gauge_act_raw(g, &x.quiver, &x.markings)?;
    Ok(AdditiveRep {
        quiver: x.quiver.clone(),
        n: x.n,
        markings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `g_v = t I`, `t -> 0`.
    Sink,
    /// `g_v = t I`, `t -> infinity`.
    Source,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSample {
    pub t: f64,
    pub representation: AdditiveRep,
}

/// One-parameter degeneration at an end `v`: `g_v = t I`, identity
/// elsewhere. The limit zeroes every arrow at `v`; a zero marking stays zero
/// under any gauge, so the limit is in the orbit closure but not the orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationWitness {
    pub vertex: String,
    pub direction: Direction,
    pub samples: Vec<WitnessSample>,
    pub limit: AdditiveRep,
    /// Arrows that were nonzero and vanish in the limit.
    pub zeroed: Vec<String>,
}

impl DegenerationWitness {
    /// The gauge element of the one-parameter subgroup at parameter `t`.
    pub fn gauge_at(&self, t: f64) -> GaugeElement {
        let n = self.limit.n;
        let values = self
            .limit
            .quiver
            .vertices()
            .iter()
            .map(|v| {
                let m = if *v == self.vertex {
                    CMatrix::scalar(n, C64::new(t, 0.0))
                } else {
                    CMatrix::identity(n)
                };
                (v.clone(), m)
            })
            .collect();
        GaugeElement::new(self.limit.quiver.clone(), GroupSpec::gl(n), values)
            .expect("nonzero scalar gauge")
    }
}

const SINK_SAMPLES: [f64; 4] = [1.0, 0.5, 0.125, 0.015625];

pub fn sink_source_witness(x: &AdditiveRep, v: &str) -> Result<DegenerationWitness> {
    let direction = match classify_vertex(&x.quiver, v)? {
        VertexKind::Sink => Direction::Sink,
        VertexKind::Source => Direction::Source,
        _ => return Err(Error::NotAnEnd(v.to_string())),
    };
    let incident: Vec<&str> = x.quiver.incident(v).map(|a| a.id.as_str()).collect();
    let zeroed: Vec<String> = incident
        .iter()
        .filter(|a| x.markings[**a].frobenius_norm() > 0.0)
        .map(|a| a.to_string())
        .collect();
    if zeroed.is_empty() {
        return Err(Error::NothingToDegenerate(v.to_string()));
    }
    // sink arrows are multiplied by t, source arrows by 1/t
    let factor = |t: f64| match direction {
        Direction::Sink => t,
        Direction::Source => 1.0 / t,
    };
    let scaled = |s: f64| -> AdditiveRep {
        let mut markings = x.markings.clone();
        for a in &incident {
            let m = markings.get_mut(*a).unwrap();
            *m = m.scale_real(s);
        }
        AdditiveRep {
            quiver: x.quiver.clone(),
            n: x.n,
            markings,
        }
    };
    let samples = SINK_SAMPLES
        .iter()
        .map(|&s| {
            let t = match direction {
                Direction::Sink => s,
                Direction::Source => 1.0 / s,
            };
            WitnessSample {
                t,
                representation: scaled(factor(t)),
            }
        })
        .collect();
    let mut limit = x.clone();
    for a in &incident {
        limit.markings.insert(a.to_string(), CMatrix::zeros(x.n));
    }
    Ok(DegenerationWitness {
        vertex: v.to_string(),
        direction,
        samples,
        limit,
        zeroed,
    })
}

pub type WeightAssignment = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonotoneCheck {
    Constant,
    /// `alpha(h_a) < alpha(t_a)`; `cycle` is an oriented cycle through `a`,
    /// based at `t_a`.
    NotMonotone { arrow: String, cycle: Word },
    /// Monotone but not constant: following `cycle` (through an arrow with
    /// `alpha(h) > alpha(t)`) forces `alpha(t) >= alpha(h)`, a contradiction.
    Contradiction { cycle: Word },
}

fn cycle_through(q: &Quiver, arrow: &str) -> Result<Word> {
    let a = q.require_arrow(arrow)?;
    let back = directed_path(q, &a.head, &a.tail)?.ok_or(Error::NotStronglyConnected)?;
    Ok(back.compose(&Word::new(alloc::vec![Letter::fwd(arrow)])))
}

/// On a strongly connected quiver every arrow lies on an oriented cycle, so
/// weights with `alpha(h_a) >= alpha(t_a)` for all arrows are constant.
pub fn monotone_weights_force_constant(q: &Quiver, alpha: &WeightAssignment) -> Result<MonotoneCheck> {
    if !is_strongly_connected(q) {
        return Err(Error::NotStronglyConnected);
    }
    for v in q.vertices() {
        if !alpha.contains_key(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
    }
    let first = alpha[&q.vertices()[0]];
    if q.vertices().iter().all(|v| alpha[v] == first) {
        return Ok(MonotoneCheck::Constant);
    }
    if let Some(a) = q.arrows().iter().find(|a| alpha[&a.head] < alpha[&a.tail]) {
        return Ok(MonotoneCheck::NotMonotone {
            arrow: a.id.clone(),
            cycle: cycle_through(q, &a.id)?,
        });
    }
    let a = q
        .arrows()
        .iter()
        .find(|a| alpha[&a.head] > alpha[&a.tail])
        .expect("non-constant weights on a connected quiver differ along some arrow");
    Ok(MonotoneCheck::Contradiction {
        cycle: cycle_through(q, &a.id)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Strongly connected: no non-constant monotone weights exist. `sample`
    /// records the check on one non-constant assignment (absent for a
    /// single vertex).
    AllInvertibleOrbitsClosed { sample: Option<(WeightAssignment, MonotoneCheck)> },
    /// Every invertible representation degenerates at these ends.
    EndsObstruct(Vec<String>),
    /// No ends, but not strongly connected.
    Inconclusive,
}

pub fn closed_orbit_certificate(q: &Quiver) -> Result<Certificate> {
    if !is_connected(q) {
        return Err(Error::Disconnected);
    }
    let e = ends(q);
    if !e.is_empty() {
        return Ok(Certificate::EndsObstruct(e.into_iter().map(|(v, _)| v).collect()));
    }
    if !is_strongly_connected(q) {
        return Ok(Certificate::Inconclusive);
    }
    let sample = if q.num_vertices() > 1 {
        let alpha: WeightAssignment = q
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i64::from(i == 0)))
            .collect();
        let check = monotone_weights_force_constant(q, &alpha)?;
        Some((alpha, check))
    } else {
        None
    };
    Ok(Certificate::AllInvertibleOrbitsClosed { sample })
}

/// Rescales a gauge element carrying unimodular `x` to unimodular `x'` so it
/// becomes unit-determinant at every vertex: `g'_v = g_v / c` with `c` the
/// principal `n`-th root of the common determinant. Scalars cancel on every
/// arrow, so `g'` still carries `x` to `x'`.
pub fn unimodular_rescale(
    g: &GaugeElement,
    x: &AdditiveRep,
    x_prime: &AdditiveRep,
    tol: f64,
) -> Result<GaugeElement> {
    if x.quiver != x_prime.quiver || x.n != x_prime.n {
        return Err(Error::QuiverMismatch);
    }
    if let Some(a) = x.unimodular_violation(tol) {
        return Err(Error::NotUnimodular(a.to_string()));
    }
    if let Some(a) = x_prime.unimodular_violation(tol) {
        return Err(Error::NotUnimodular(a.to_string()));
    }
    let moved = gauge_act_additive(g, x)?;
    for (a, m) in &moved.markings {
        if m.dist(&x_prime.markings[a]) > tol {
            return Err(Error::ActionMismatch { arrow: a.clone() });
        }
    }
    let dets: BTreeMap<&str, C64> = g.values().iter().map(|(v, m)| (v.as_str(), m.det())).collect();
    let d = *dets.values().next().ok_or(Error::EmptyQuiver)?;
    for (v, dv) in &dets {
        if (dv - d).norm() > tol * d.norm().max(1.0) {
            return Err(Error::DeterminantMismatch {
                vertex: v.to_string(),
            });
        }
    }
    let c = d.powf(1.0 / x.n as f64);
    let inv_c = c.inv();
    let values = g
        .values()
        .iter()
        .map(|(v, m)| (v.clone(), m.scale(inv_c)))
        .collect();
    let group = GroupSpec::sl(x.n);
    Ok(GaugeElement::from_parts(g.quiver().clone(), group, values))
}
