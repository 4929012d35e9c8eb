//! Moment matrices, the Kempf-Ness residual and the norm-minimizing flow.
//!
//! For Hermitian directions `u` (one per vertex) the real pairing
//! `<X, Y> = Re tr(X* Y)` summed over arrows regroups as
//!
//! ```text
//! <u . f, f> = sum_v tr(u_v M_v),   M_v = sum_{t_a = v} f(a)* f(a) - sum_{h_a = v} f(a) f(a)*
//! ```
//!
//! with the infinitesimal action `(u . f)(a) = f(a) u(t_a) - u(h_a) f(a)`.
//! Moving along `exp(s u)` changes the orbit norm at rate
//! `-2 sum_v tr(u_v M_v)`, so `u = M` is the steepest-descent direction.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::matgroup::hermitian_exp;
use crate::matrix::{CMatrix, C64};
use crate::quiver::Quiver;
use crate::representation::{gauge_act, GaugeElement, Representation};

#[derive(Debug, Clone, PartialEq)]
pub struct KNResidual {
    pub moments: BTreeMap<String, CMatrix>,
    /// `sqrt(sum_v ||pi(M_v)||_F^2)`.
    pub aggregate: f64,
}

/// Identity for `GL`/`U`/torus, traceless part for `SL`/`SU`.
pub fn project(m: &CMatrix, group: &GroupSpec) -> CMatrix {
    if group.family.is_special() {
        let shift = m.trace() / m.n() as f64;
        m - &CMatrix::scalar(m.n(), shift)
    } else {
        m.clone()
    }
}

/// Unitary markings give `M_v = (out_v - in_v) I`: zero after the traceless
/// projection, and for `GL`/`U` only on degree-balanced quivers.
pub fn kn_moment(f: &Representation) -> KNResidual {
    let q = f.quiver();
    let n = f.group().n;
    let mut moments: BTreeMap<String, CMatrix> =
        q.vertices().iter().map(|v| (v.clone(), CMatrix::zeros(n))).collect();
    for a in q.arrows() {
        let m = &f.markings()[&a.id];
        let outgoing = &m.adjoint() * m;
        let incoming = m * &m.adjoint();
        let t = moments.get_mut(&a.tail).unwrap();
        *t = &*t + &outgoing;
        let h = moments.get_mut(&a.head).unwrap();
        *h = &*h - &incoming;
    }
    for m in moments.values_mut() {
        *m = m.hermitian_part();
    }
    let aggregate = libm::sqrt(
        moments
            .values()
            .map(|m| project(m, f.group()).frobenius_norm_sqr())
            .sum(),
    );
    KNResidual { moments, aggregate }
}

/// `sum_a ||f(a)||_F^2`.
pub fn orbit_norm(f: &Representation) -> f64 {
    f.markings().values().map(CMatrix::frobenius_norm_sqr).sum()
}

/// `sum_a tr(f1(a)* f2(a))`; its real part is the `G_K`-invariant inner
/// product on markings.
pub fn hermitian_pairing(
    f1: &BTreeMap<String, CMatrix>,
    f2: &BTreeMap<String, CMatrix>,
) -> Result<C64> {
    if f1.len() != f2.len() {
        return Err(Error::QuiverMismatch);
    }
    f1.iter()
        .map(|(a, m)| {
            let other = f2.get(a).ok_or(Error::QuiverMismatch)?;
            Ok((&m.adjoint() * other).trace())
        })
        .sum()
}

/// `(u . f)(a) = f(a) u(t_a) - u(h_a) f(a)` for a Lie algebra element `u`.
pub fn infinitesimal_action(
    q: &Quiver,
    u: &BTreeMap<String, CMatrix>,
    markings: &BTreeMap<String, CMatrix>,
) -> Result<BTreeMap<String, CMatrix>> {
    q.arrows()
        .iter()
        .map(|a| {
            let m = markings
                .get(&a.id)
                .ok_or_else(|| Error::MissingMarking(a.id.clone()))?;
            let ut = u.get(&a.tail).ok_or_else(|| Error::UnknownVertex(a.tail.clone()))?;
            let uh = u.get(&a.head).ok_or_else(|| Error::UnknownVertex(a.head.clone()))?;
            Ok((a.id.clone(), &(m * ut) - &(uh * m)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowReport {
    /// Accepted steps.
    pub iterations: usize,
    pub residual_history: Vec<f64>,
    pub norm_history: Vec<f64>,
    pub representation: Representation,
    pub converged: bool,
}

const MAX_BACKTRACK: usize = 60;

/// Steepest descent of the orbit norm over the gauge orbit along Hermitian
/// directions: `f <- exp(eps pi(M)) . f`, halving `eps` until the norm
/// strictly decreases and doubling it after each accepted step.
///
/// Stops once the residual is at most `tol`, after `max_iter` accepted steps,
/// or when no step size decreases the norm (then `converged` is false).
pub fn kn_flow(f: &Representation, step0: f64, max_iter: usize, tol: f64) -> Result<FlowReport> {
    if f.group().family.is_compact() {
        return Err(Error::CompactGroup);
    }
    if !(step0 > 0.0) || !step0.is_finite() {
        return Err(Error::ParameterOutOfRange("step0"));
    }
    let group = *f.group();
    let mut current = f.clone();
    let mut residual = kn_moment(&current);
    let mut norm = orbit_norm(&current);
    let mut residual_history = alloc::vec![residual.aggregate];
    let mut norm_history = alloc::vec![norm];
    let mut eps = step0;
    let mut iterations = 0;
    let mut converged = residual.aggregate <= tol;
    while !converged && iterations < max_iter {
        let directions: BTreeMap<String, CMatrix> = residual
            .moments
            .iter()
            .map(|(v, m)| (v.clone(), project(m, &group)))
            .collect();
        let mut next = None;
        let mut any_finite = false;
        for _ in 0..MAX_BACKTRACK {
            let values = directions
                .iter()
                .map(|(v, d)| Ok((v.clone(), hermitian_exp(&d.scale_real(eps))?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            let g = GaugeElement::from_parts(current.quiver().clone(), group, values);
            let candidate = match gauge_act(&g, &current) {
                Ok(c) => c,
                Err(Error::Singular) => {
                    eps *= 0.5;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let cand_norm = orbit_norm(&candidate);
            if !cand_norm.is_finite() {
                eps *= 0.5;
                continue;
            }
            any_finite = true;
            if cand_norm < norm {
                next = Some((candidate, cand_norm));
                break;
            }
            eps *= 0.5;
        }
        let Some((candidate, cand_norm)) = next else {
            if !any_finite {
                return Err(Error::StepFailure { iteration: iterations });
            }
            break;
        };
        current = candidate;
        norm = cand_norm;
        residual = kn_moment(&current);
        if !residual.aggregate.is_finite() {
            return Err(Error::StepFailure { iteration: iterations });
        }
        residual_history.push(residual.aggregate);
        norm_history.push(norm);
        iterations += 1;
        eps *= 2.0;
        converged = residual.aggregate <= tol;
    }
    Ok(FlowReport {
        iterations,
        residual_history,
        norm_history,
        representation: current,
        converged,
    })
}
