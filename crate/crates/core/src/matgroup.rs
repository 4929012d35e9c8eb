//! Matrix groups: membership, seeded sampling, Cartan involution, polar
//! decomposition and functions of Hermitian positive-definite matrices.
//!
//! Fractional powers and logarithms always go through the Hermitian
//! eigendecomposition.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::group::{Family, GroupSpec};
use crate::matrix::{CMatrix, C64};
use crate::{TOL_EQ, TOL_MEMBERSHIP};

/// The Cartan involution of `GL(n, C)` fixing `U(n)` is `g -> (g*)^-1`;
/// on the Lie algebra it is `X -> -X*`. This returns the conjugate
/// transpose `m*` that both are built from.
pub fn cartan_involution(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn in_group(m: &CMatrix, g: &GroupSpec, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::ParameterOutOfRange("tol"));
    }
    if m.n() != g.n {
        return Err(Error::SizeMismatch {
            expected: g.n,
            found: m.n(),
        });
    }
    let det = m.det();
    Ok(match g.family {
        Family::GL | Family::Torus => det.norm() > tol,
        Family::SL => (det - 1.0).norm() <= tol,
        Family::U => m.unitary_defect() <= tol,
        Family::SU => m.unitary_defect() <= tol && (det - 1.0).norm() <= tol,
    })
}

/// Deterministic RNG used for every sampler in the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (`E|z|^2 = 1`).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let data: Vec<C64> = (0..n * n).map(|_| complex_normal(rng)).collect();
    CMatrix::new(n, data).expect("gaussian samples are finite")
}

/// Samples an element of `g` from an explicit RNG.
///
/// Compact families: Gram-Schmidt QR of a Ginibre matrix (positive `R`
/// diagonal, hence Haar), `SU` after dividing by the principal `n`-th root
/// of the determinant. `GL`: `exp(Z / sqrt n)`; `SL`: the same with `Z` made
/// traceless.
pub fn sample_element<R: Rng + ?Sized>(g: &GroupSpec, rng: &mut R) -> CMatrix {
    let n = g.n;
    match g.family {
        Family::U | Family::SU => loop {
            let z = ginibre(n, rng);
            let Ok((q, _)) = z.qr() else { continue };
            if g.family == Family::U {
                break q;
            }
            let root = q.det().powf(1.0 / n as f64);
            break q.scale(root.inv());
        },
        Family::GL | Family::Torus => ginibre(n, rng).scale_real(1.0 / libm::sqrt(n as f64)).exp(),
        Family::SL => {
            let z = ginibre(n, rng).scale_real(1.0 / libm::sqrt(n as f64));
            let shift = z.trace() / n as f64;
            (&z - &CMatrix::scalar(n, shift)).exp()
        }
    }
}

/// Seeded sample; identical seeds give bit-identical matrices.
pub fn random_element(g: &GroupSpec, seed: u64) -> CMatrix {
    sample_element(g, &mut rng_from_seed(seed))
}

/// Random Hermitian positive-definite matrix, for tests and examples.
pub fn sample_positive<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let a = ginibre(n, rng);
    (&(&a * &a.adjoint()) + &CMatrix::scalar(n, C64::new(0.1, 0.0))).hermitian_part()
}

/// `g = k e^p` with `k` unitary and `p` Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarFactors {
    pub k: CMatrix,
    pub p: CMatrix,
}

impl PolarFactors {
    /// `k e^p`.
    pub fn reconstruct(&self) -> CMatrix {
        let (w, v) = self.p.eigh();
        &self.k * &CMatrix::hermitian_function(&w, &v, libm::exp)
    }
}

/// `k = g (g* g)^{-1/2}`, `p = (1/2) log(g* g)`.
pub fn polar_decompose(gm: &CMatrix) -> Result<PolarFactors> {
    if gm.det().norm() <= TOL_MEMBERSHIP {
        return Err(Error::Singular);
    }
    let h = (&gm.adjoint() * gm).hermitian_part();
    let (w, v) = h.eigh();
    if w.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Singular);
    }
    let inv_sqrt = CMatrix::hermitian_function(&w, &v, |x| 1.0 / libm::sqrt(x));
    let p = CMatrix::hermitian_function(&w, &v, |x| 0.5 * libm::log(x));
    Ok(PolarFactors { k: gm * &inv_sqrt, p })
}

fn check_positive(h: &CMatrix, tol: f64) -> Result<(Vec<f64>, CMatrix)> {
    if h.hermitian_defect() > tol {
        return Err(Error::NotHermitian);
    }
    let (w, v) = h.eigh();
    if w.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::NotPositive);
    }
    Ok((w, v))
}

/// `h^s` for Hermitian positive-definite `h`.
pub fn hermitian_power(h: &CMatrix, s: f64) -> Result<CMatrix> {
    let (w, v) = check_positive(h, TOL_EQ)?;
    Ok(CMatrix::hermitian_function(&w, &v, |x| libm::pow(x, s)))
}

/// Principal logarithm of a Hermitian positive-definite matrix.
pub fn hermitian_log(h: &CMatrix) -> Result<CMatrix> {
    let (w, v) = check_positive(h, TOL_EQ)?;
    Ok(CMatrix::hermitian_function(&w, &v, libm::log))
}

/// `exp(h)` for Hermitian `h`.
pub fn hermitian_exp(h: &CMatrix) -> Result<CMatrix> {
    if h.hermitian_defect() > TOL_EQ {
        return Err(Error::NotHermitian);
    }
    let (w, v) = h.eigh();
    Ok(CMatrix::hermitian_function(&w, &v, libm::exp))
}
