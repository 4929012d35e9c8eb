//! Exact integer linear algebra over `Z`: row echelon with a unimodular
//! transform, Hermite normal form, left kernels and Smith invariant factors.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect()
}

fn ncols(a: &IntMatrix, fallback: usize) -> usize {
    a.first().map_or(fallback, Vec::len)
}

/// `row_i -= q * row_r`.
fn sub_row(a: &mut IntMatrix, i: usize, r: usize, q: &BigInt) {
    let (src, dst) = if r < i {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[r], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(r);
        (&hi[0], &mut lo[i])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for x in &mut a[i] {
        *x = -&*x;
    }
}

/// Row echelon form `H = U A` with `U` unimodular. Returns `(H, U, pivots)`
/// where `pivots[k]` is the pivot column of row `k`; rows past
/// `pivots.len()` are zero. Pivots are positive.
pub fn row_echelon(a: &IntMatrix, width: usize) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let m = a.len();
    let n = ncols(a, width);
    let mut h = a.clone();
    let mut u = identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[i][j].is_zero())
                .min_by(|&x, &y| h[x][j].abs().cmp(&h[y][j].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[i][j].is_zero() {
                    continue;
                }
                let q = h[i][j].div_floor(&h[r][j]);
                sub_row(&mut h, i, r, &q);
                sub_row(&mut u, i, r, &q);
                if !h[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (r..m).all(|i| h[i][j].is_zero()) {
            continue;
        }
        if h[r][j].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        pivots.push(j);
        r += 1;
    }
    (h, u, pivots)
}

/// Row Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite(a: &IntMatrix, width: usize) -> IntMatrix {
    let (mut h, _, pivots) = row_echelon(a, width);
    h.truncate(pivots.len());
    for (k, &j) in pivots.iter().enumerate() {
        for i in 0..k {
            let q = h[i][j].div_floor(&h[k][j]);
            if !q.is_zero() {
                sub_row(&mut h, i, k, &q);
            }
        }
    }
    h
}

pub fn rank(a: &IntMatrix, width: usize) -> usize {
    row_echelon(a, width).2.len()
}

/// A lattice basis of `{ m : m^T A = 0 }`, in Hermite normal form.
pub fn left_kernel(a: &IntMatrix, width: usize) -> IntMatrix {
    let (_, u, pivots) = row_echelon(a, width);
    let kernel: IntMatrix = u[pivots.len()..].to_vec();
    hermite(&kernel, a.len())
}

/// Nonzero Smith invariant factors `d_1 | d_2 | ...`, all positive.
pub fn smith_invariants(a: &IntMatrix, width: usize) -> Vec<BigInt> {
    let mut s = a.clone();
    let m = s.len();
    let n = ncols(&s, width);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block as pivot
        let best = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !s[i][j].is_zero())
            .min_by(|&(a1, b1), &(a2, b2)| s[a1][b1].abs().cmp(&s[a2][b2].abs()));
        let Some((pi, pj)) = best else { break };
        s.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = s[i][t].div_floor(&s[t][t]);
            if !q.is_zero() {
                sub_row(&mut s, i, t, &q);
            }
            clean &= s[i][t].is_zero();
        }
        for j in t + 1..n {
            let q = s[t][j].div_floor(&s[t][t]);
            if !q.is_zero() {
                for row in s.iter_mut() {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
            }
            clean &= s[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the block
        let bad = (t + 1..m)
            .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !s[i][j].is_multiple_of(&s[t][t]));
        if let Some((i, _)) = bad {
            let neg = -BigInt::one();
            sub_row(&mut s, t, i, &neg);
            continue;
        }
        diag.push(s[t][t].abs());
        t += 1;
    }
    diag
}

/// `true` when `a^T m = 0` exactly, i.e. `m` lies in the left kernel.
pub fn annihilates(a: &IntMatrix, m: &[BigInt], width: usize) -> bool {
    let n = ncols(a, width);
    (0..n).all(|j| {
        a.iter()
            .zip(m)
            .fold(BigInt::zero(), |acc, (row, x)| acc + &row[j] * x)
            .is_zero()
    })
}
