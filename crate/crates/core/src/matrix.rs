//! Dense square complex matrices, sized for desk-scale work (n <= 16).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Row-major `n x n` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    /// Checked constructor: the entries must be finite.
    pub fn new(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: libm::sqrt(data.len() as f64) as usize,
            });
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(CMatrix { n, data })
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch { expected: n, found: 0 });
        }
        CMatrix::new(n, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    /// Real matrix from rows; panics on ragged input.
    pub fn real(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        CMatrix::new(n, rows.iter().flat_map(|r| r.iter().map(|&x| C64::new(x, 0.0))).collect())
            .expect("finite entries")
    }

    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![C64::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::one();
        }
        m
    }

    pub fn scalar(n: usize, z: C64) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diag(d: &[C64]) -> Self {
        let mut m = CMatrix::zeros(d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diag_real(d: &[f64]) -> Self {
        let mut m = CMatrix::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, z: C64) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| x * z).collect(),
        }
    }

    pub fn scale_real(&self, x: f64) -> CMatrix {
        self.scale(C64::new(x, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.frobenius_norm_sqr())
    }

    /// Frobenius distance.
    pub fn dist(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.n, other.n, "size mismatch");
        libm::sqrt(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum(),
        )
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `||m - m*||_F`.
    pub fn hermitian_defect(&self) -> f64 {
        self.dist(&self.adjoint())
    }

    /// `||m m* - I||_F`.
    pub fn unitary_defect(&self) -> f64 {
        (self * &self.adjoint()).dist(&CMatrix::identity(self.n))
    }

    /// Makes the matrix exactly Hermitian by averaging with its adjoint.
    pub fn hermitian_part(&self) -> CMatrix {
        (self + &self.adjoint()).scale_real(0.5)
    }

    /// LU factorization with partial pivoting: (packed LU, permutation, sign).
    fn lu(&self) -> (Vec<C64>, Vec<usize>, f64, bool) {
        let n = self.n;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .unwrap();
            if a[p * n + k].norm() == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                a[i * n + k] = f;
                for j in k + 1..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
            }
        }
        (a, perm, sign, singular)
    }

    pub fn det(&self) -> C64 {
        let (a, _, sign, singular) = self.lu();
        if singular {
            return C64::zero();
        }
        (0..self.n).fold(C64::new(sign, 0.0), |acc, i| acc * a[i * self.n + i])
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.n;
        let (a, perm, _, singular) = self.lu();
        if singular {
            return Err(Error::Singular);
        }
        let mut inv = CMatrix::zeros(n);
        for col in 0..n {
            // solve L U x = P e_col
            let mut x: Vec<C64> = (0..n)
                .map(|i| if perm[i] == col { C64::one() } else { C64::zero() })
                .collect();
            for i in 0..n {
                for k in 0..i {
                    let t = a[i * n + k] * x[k];
                    x[i] -= t;
                }
            }
            for i in (0..n).rev() {
                for k in i + 1..n {
                    let t = a[i * n + k] * x[k];
                    x[i] -= t;
                }
                x[i] /= a[i * n + i];
            }
            for i in 0..n {
                inv[(i, col)] = x[i];
            }
        }
        if inv.is_finite() {
            Ok(inv)
        } else {
            Err(Error::Singular)
        }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, k: i64) -> Result<CMatrix> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Matrix exponential by scaling and squaring of a Taylor series.
    pub fn exp(&self) -> CMatrix {
        let n = self.n;
        let norm = self.norm1();
        let mut squarings = 0u32;
        if norm > 0.5 {
            squarings = libm::ceil(libm::log2(norm / 0.5)) as u32;
        }
        let a = self.scale_real(libm::ldexp(1.0, -(squarings as i32)));
        let mut term = CMatrix::identity(n);
        let mut sum = CMatrix::identity(n);
        for k in 1..=30 {
            term = (&term * &a).scale_real(1.0 / k as f64);
            sum = &sum + &term;
            if term.frobenius_norm() <= 1e-18 * sum.frobenius_norm() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations: ascending eigenvalues and unitary `V` with
    /// `self = V diag(w) V*`. Only the Hermitian part is used.
    pub fn eigh(&self) -> (Vec<f64>, CMatrix) {
        let n = self.n;
        let mut a = self.hermitian_part();
        let mut v = CMatrix::identity(n);
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum();
            if libm::sqrt(off) <= 1e-17 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    let mag = apq.norm();
                    if mag <= 1e-300 {
                        continue;
                    }
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    // phase making the (p, q) entry real, then a real rotation
                    let phase = apq / mag;
                    let theta = (aqq - app) / (2.0 * mag);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                    } else {
                        -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                    };
                    let c = 1.0 / libm::sqrt(t * t + 1.0);
                    let s = t * c;
                    // U restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                    let pc = phase.conj();
                    let u_pp = C64::new(c, 0.0);
                    let u_pq = C64::new(s, 0.0);
                    let u_qp = pc * (-s);
                    let u_qq = pc * c;
                    // a <- a U
                    for i in 0..n {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = aip * u_pp + aiq * u_qp;
                        a[(i, q)] = aip * u_pq + aiq * u_qq;
                    }
                    // a <- U* a
                    for j in 0..n {
                        let apj = a[(p, j)];
                        let aqj = a[(q, j)];
                        a[(p, j)] = u_pp.conj() * apj + u_qp.conj() * aqj;
                        a[(q, j)] = u_pq.conj() * apj + u_qq.conj() * aqj;
                    }
                    a[(p, q)] = C64::zero();
                    a[(q, p)] = C64::zero();
                    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * u_pp + viq * u_qp;
                        v[(i, q)] = vip * u_pq + viq * u_qq;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
        let w = order.iter().map(|&i| a[(i, i)].re).collect();
        let mut vs = CMatrix::zeros(n);
        for (new, &old) in order.iter().enumerate() {
            for i in 0..n {
                vs[(i, new)] = v[(i, old)];
            }
        }
        (w, vs)
    }

    /// `V diag(f(w)) V*` for the Hermitian eigendecomposition of `self`.
    pub fn hermitian_function(w: &[f64], v: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = v.n;
        let mut out = CMatrix::zeros(n);
        let fw: Vec<f64> = w.iter().map(|&x| f(x)).collect();
        for i in 0..n {
            for j in 0..n {
                let mut s = C64::zero();
                for k in 0..n {
                    s += v[(i, k)] * fw[k] * v[(j, k)].conj();
                }
                out[(i, j)] = s;
            }
        }
        out
    }

    /// QR factorization by classical Gram-Schmidt with one
    /// reorthogonalization pass. `R` has a real positive diagonal.
    pub fn qr(&self) -> Result<(CMatrix, CMatrix)> {
        let n = self.n;
        let mut q = CMatrix::zeros(n);
        let mut r = CMatrix::zeros(n);
        for j in 0..n {
            let mut col: Vec<C64> = (0..n).map(|i| self[(i, j)]).collect();
            for _pass in 0..2 {
                for k in 0..j {
                    let proj: C64 = (0..n).map(|i| q[(i, k)].conj() * col[i]).sum();
                    r[(k, j)] += proj;
                    for (i, c) in col.iter_mut().enumerate() {
                        *c -= proj * q[(i, k)];
                    }
                }
            }
            let norm = libm::sqrt(col.iter().map(|z| z.norm_sqr()).sum::<f64>());
            if norm == 0.0 {
                return Err(Error::Singular);
            }
            r[(j, j)] = C64::new(norm, 0.0);
            for i in 0..n {
                q[(i, j)] = col[i] / norm;
            }
        }
        Ok((q, r))
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}
