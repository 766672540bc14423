//! Exact integer and rational matrix routines over arbitrary-precision integers.
//!
//! Matrices are plain row-major `Vec<Vec<_>>`; everything here is small
//! (rank ≤ 8) so no attempt is made at cache-friendly layouts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity_int(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Inverse and determinant of a square integer matrix by Gauss–Jordan
/// elimination over the rationals. Returns `None` for singular input.
pub fn rational_inverse(m: &[Vec<i64>]) -> Option<(RatMatrix, BigRational)> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some((inv, det))
}

/// Smith normal form `left · m · right = diag(d_1, …, d_n)` of a square
/// integer matrix, with `d_k ≥ 0` and `d_k | d_{k+1}` among the nonzero entries.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Pivot rule: the nonzero entry of least absolute value in the trailing
/// submatrix, ties broken by row-major position.
fn pick_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            if a[i][j].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    // row_dst -= q * row_src
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(src_row.iter()) {
        *d -= q * s;
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let n = m.len();
    let mut a = to_big(m);
    let mut left = identity_int(n);
    let mut right = identity_int(n);

    for t in 0..n {
        'pivoting: loop {
            let Some((pi, pj)) = pick_pivot(&a, t) else {
                break 'pivoting;
            };
            if pi != t {
                a.swap(pi, t);
                left.swap(pi, t);
            }
            if pj != t {
                swap_cols(&mut a, pj, t);
                swap_cols(&mut right, pj, t);
            }

            let mut clean = true;
            for i in (t + 1)..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut left, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut right, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivoting;
            }

            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = ((t + 1)..n)
                .flat_map(|i| ((t + 1)..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            if let Some((i, _)) = offending {
                let minus_one = -BigInt::one();
                row_axpy(&mut a, t, i, &minus_one);
                row_axpy(&mut left, t, i, &minus_one);
                continue 'pivoting;
            }

            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -x.clone();
                }
                for x in left[t].iter_mut() {
                    *x = -x.clone();
                }
            }
            break 'pivoting;
        }
    }

    let diagonal = (0..n).map(|i| a[i][i].clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}
