//! Small dense exact linear algebra: rational elimination, integer row
//! echelon bases and Smith normal form.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn to_rational(m: &[Vec<i64>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let k = b.len();
    let n = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| (0..k).map(|t| row[t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Rank over ℚ.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a: RatMatrix = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c];
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c] / pivot;
                for j in c..cols {
                    let t = a[r][j] * f;
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c];
        for x in a[c].iter_mut() {
            *x /= pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..2 * n {
                    let t = a[c][j] * f;
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row vector times rational matrix.
pub fn row_times(v: &[Rational], m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = if m.is_empty() { 0 } else { m[0].len() };
    (0..n)
        .map(|j| v.iter().zip(m).map(|(x, row)| *x * row[j]).sum())
        .collect()
}

/// A basis (row echelon form) of the ℤ-span of the given integer rows.
pub fn lattice_basis(gens: &[Vec<i64>]) -> IntMatrix {
    let mut a: Vec<Vec<i128>> = gens
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        loop {
            // Euclid down the column until at most one nonzero entry remains at or below r.
            let nz: Vec<usize> = (r..rows).filter(|&i| a[i][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    a.swap(r, p);
                    if a[r][c] < 0 {
                        a[r].iter_mut().for_each(|x| *x = -*x);
                    }
                    r += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            for i in r + 1..rows {
                if a[i][c] != 0 {
                    let q = a[i][c].div_euclid(a[r][c]);
                    for j in c..cols {
                        let t = a[r][j] * q;
                        a[i][j] -= t;
                    }
                }
            }
        }
        if r == rows {
            break;
        }
    }
    a.truncate(r);
    a.into_iter()
        .map(|row| row.into_iter().map(|x| x as i64).collect())
        .collect()
}

/// Smith normal form of an integer matrix: returns the diagonal entries
/// `d_1 | d_2 | ...` (length `min(rows, cols)`, nonnegative) and a
/// unimodular `V` such that `U·A·V = D` for some unimodular `U`.
pub fn smith(a: &[Vec<i64>]) -> (Vec<i64>, IntMatrix) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let n = rows.min(cols);

    let swap_cols = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
        for row in v.iter_mut() {
            row.swap(x, y);
        }
    };
    // col_y -= q * col_x
    let col_op = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, x: usize, y: usize, q: i128| {
        for row in m.iter_mut() {
            row[y] -= q * row[x];
        }
        for row in v.iter_mut() {
            row[y] -= q * row[x];
        }
    };

    for k in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                let diag = (0..n).map(|i| m[i][i].abs() as i64).collect();
                return (diag, to_i64(v));
            };
            m.swap(k, pi);
            swap_cols(&mut m, &mut v, k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                let q = m[i][k].div_euclid(m[k][k]);
                if q != 0 {
                    let pivot_row = m[k].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                }
                clean &= m[i][k] == 0;
            }
            for j in k + 1..cols {
                let q = m[k][j].div_euclid(m[k][k]);
                if q != 0 {
                    col_op(&mut m, &mut v, k, j, q);
                }
                clean &= m[k][j] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into row k and retry.
            let p = m[k][k];
            if let Some(i) = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| m[i][j] % p != 0)) {
                let offending = m[i].clone();
                for (x, o) in m[k].iter_mut().zip(&offending) {
                    *x += o;
                }
                continue;
            }
            break;
        }
    }
    let diag = (0..n).map(|i| m[i][i].abs() as i64).collect();
    (diag, to_i64(v))
}

fn to_i64(m: Vec<Vec<i128>>) -> IntMatrix {
    m.into_iter()
        .map(|r| r.into_iter().map(|x| x as i64).collect())
        .collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|q| q.is_integer())
}

pub fn all_nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|q| !q.is_negative())
}
