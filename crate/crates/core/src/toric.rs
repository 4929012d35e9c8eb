//! Weighted scalar actions `g(h)^mu f g(t)^-nu` and their invariant Laurent
//! monomials, computed exactly over `Z`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::lattice::{self, IntMatrix};
use crate::matgroup::rng_from_seed;
use crate::matrix::{CMatrix, C64};
use crate::quiver::Quiver;
use crate::representation::{weighted_act, GaugeElement, Representation};

pub const MAX_WEIGHT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedToricAction {
    quiver: Quiver,
    mu: BTreeMap<String, u64>,
    nu: BTreeMap<String, u64>,
    /// Rows follow `quiver.arrows()`, columns `quiver.vertices()`.
    b: Vec<Vec<i64>>,
}

fn build_b(q: &Quiver, mu: &BTreeMap<String, u64>, nu: &BTreeMap<String, u64>) -> Vec<Vec<i64>> {
    q.arrows()
        .iter()
        .map(|a| {
            let mut row = alloc::vec![0i64; q.num_vertices()];
            row[q.vertex_index(&a.head).unwrap()] += mu[&a.id] as i64;
            row[q.vertex_index(&a.tail).unwrap()] -= nu[&a.id] as i64;
            row
        })
        .collect()
}

pub fn weight_matrix(
    q: &Quiver,
    mu: &BTreeMap<String, u64>,
    nu: &BTreeMap<String, u64>,
) -> Result<WeightedToricAction> {
    for a in q.arrow_ids() {
        for w in [mu, nu] {
            let x = *w.get(a).ok_or_else(|| Error::MissingWeight(a.to_string()))?;
            if x > MAX_WEIGHT {
                return Err(Error::WeightTooLarge(a.to_string()));
            }
        }
    }
    let keep = |w: &BTreeMap<String, u64>| -> BTreeMap<String, u64> {
        q.arrow_ids().map(|a| (a.to_string(), w[a])).collect()
    };
    let (mu, nu) = (keep(mu), keep(nu));
    let b = build_b(q, &mu, &nu);
    Ok(WeightedToricAction {
        quiver: q.clone(),
        mu,
        nu,
        b,
    })
}

/// `mu = nu = 1` on every arrow: the ordinary gauge action.
pub fn unit_weights(q: &Quiver) -> BTreeMap<String, u64> {
    q.arrow_ids().map(|a| (a.to_string(), 1)).collect()
}

impl WeightedToricAction {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn mu(&self) -> &BTreeMap<String, u64> {
        &self.mu
    }

    pub fn nu(&self) -> &BTreeMap<String, u64> {
        &self.nu
    }

    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Stored matrix equals the one rebuilt from the weights.
    pub fn is_consistent(&self) -> bool {
        build_b(&self.quiver, &self.mu, &self.nu) == self.b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    /// Exponent order: `quiver.arrows()`.
    pub arrows: Vec<String>,
    pub vectors: Vec<Vec<BigInt>>,
    pub rank: usize,
    pub cell_dimension: usize,
    /// Smith invariant factors of the basis matrix; all ones iff the basis
    /// spans the whole kernel lattice.
    pub smith: Vec<BigInt>,
}

impl MonomialBasis {
    pub fn is_saturated(&self) -> bool {
        self.smith.len() == self.vectors.len() && self.smith.iter().all(|d| d.is_one())
    }
}

pub fn invariant_monomial_basis(w: &WeightedToricAction) -> MonomialBasis {
    let b: IntMatrix = lattice::from_i64(&w.b);
    let width = w.quiver.num_vertices();
    let vectors = lattice::left_kernel(&b, width);
    let rank = lattice::rank(&b, width);
    let smith = lattice::smith_invariants(&vectors, w.quiver.num_arrows());
    MonomialBasis {
        arrows: w.quiver.arrow_ids().map(ToString::to_string).collect(),
        cell_dimension: w.quiver.num_arrows() - rank,
        rank,
        vectors,
        smith,
    }
}

/// `B^T m = 0` in exact arithmetic.
pub fn is_invariant_exact(w: &WeightedToricAction, m: &[BigInt]) -> bool {
    m.len() == w.quiver.num_arrows()
        && lattice::annihilates(&lattice::from_i64(&w.b), m, w.quiver.num_vertices())
}

/// `prod_a (after_a / before_a)^{m_a}`, summed in log space so that large
/// exponents neither overflow nor underflow.
fn monomial_ratio(before: &Representation, after: &Representation, arrows: &[String], m: &[i64]) -> C64 {
    let log = arrows.iter().zip(m).fold(C64::new(0.0, 0.0), |acc, (a, &k)| {
        let r = after.markings()[a][(0, 0)] / before.markings()[a][(0, 0)];
        acc + r.ln() * k as f64
    });
    log.exp()
}

fn random_scalar<R: Rng>(rng: &mut R) -> C64 {
    let r = libm::exp(rng.random_range(libm::log(0.8)..=libm::log(1.25)));
    let theta = rng.random_range(0.0..core::f64::consts::TAU);
    C64::from_polar(r, theta)
}

/// Numeric cross-check: the monomial `prod f_a^{m_a}` is unchanged by the
/// weighted action on random scalar data (relative deviation at most 1e-9).
pub fn check_invariance(w: &WeightedToricAction, m: &[i64], trials: usize, seed: u64) -> Result<bool> {
    let q = &w.quiver;
    if m.len() != q.num_arrows() {
        return Err(Error::SizeMismatch {
            expected: q.num_arrows(),
            found: m.len(),
        });
    }
    let arrows: Vec<String> = q.arrow_ids().map(ToString::to_string).collect();
    let group = GroupSpec::torus();
    let mut rng = rng_from_seed(seed);
    for _ in 0..trials {
        let markings = arrows
            .iter()
            .map(|a| (a.clone(), CMatrix::scalar(1, random_scalar(&mut rng))))
            .collect();
        let f = Representation::new(q.clone(), group, markings)?;
        let values = q
            .vertices()
            .iter()
            .map(|v| (v.clone(), CMatrix::scalar(1, random_scalar(&mut rng))))
            .collect();
        let g = GaugeElement::new(q.clone(), group, values)?;
        let moved = weighted_act(&g, &f, &w.mu, &w.nu)?;
        if (monomial_ratio(&f, &moved, &arrows, m) - 1.0).norm() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis vectors as machine integers, when they fit.
pub fn to_i64_vectors(vs: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    vs.iter().map(|v| v.iter().map(ToPrimitive::to_i64).collect()).collect()
}
