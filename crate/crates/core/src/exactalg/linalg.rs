//! Exact dense linear algebra over the rationals.
//!
//! Elimination first clears denominators row by row and runs fraction-free
//! (Bareiss) elimination over the integers, then finishes the reduced row
//! echelon form with rational back-substitution. Pivot choice is the first
//! nonzero entry, so results are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_scale(a: &Matrix, c: &Rational) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn trace(a: &Matrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

pub fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// Row echelon form with the pivot columns, via Bareiss elimination.
fn bareiss_echelon(m: &Matrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| integer_row(r)).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        // Columns left of c in rows below r are already zero.
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (ech, pivots) = bareiss_echelon(m);
    let cols = m.first().map_or(0, Vec::len);
    let mut out: Matrix = Vec::with_capacity(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        let lead = Rational::from_integer(ech[r][c].clone());
        let row: Vec<Rational> = ech[r]
            .iter()
            .map(|x| Rational::from_integer(x.clone()) / &lead)
            .collect();
        out.push(row);
    }
    for r in (0..pivots.len()).rev() {
        let c = pivots[r];
        for i in 0..r {
            let f = out[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = &out[r][j] * &f;
                out[i][j] -= v;
            }
        }
    }
    let rows = m.len();
    while out.len() < rows {
        out.push(vec![Rational::zero(); cols]);
    }
    (out, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    bareiss_echelon(m).1.len()
}

/// Basis of `{v : m v = 0}`; each vector has a single free coordinate set to 1.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    if m.is_empty() {
        return (0..cols)
            .map(|i| {
                let mut v = vec![Rational::zero(); cols];
                v[i] = Rational::one();
                v
            })
            .collect();
    }
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = b`, or `None` when inconsistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[row][cols].clone();
    }
    Some(x)
}

pub fn det(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for i in c + 1..n {
            let f = &a[i][c] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &a[c][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    d
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coefficients `(c1, c2, c3)` of `t^3 - c1 t^2 + c2 t - c3` for a 3x3 matrix.
pub fn char_poly3(a: &Matrix) -> [Rational; 3] {
    let c1 = trace(a);
    let a2 = mat_mul(a, a);
    let c2 = (&c1 * &c1 - trace(&a2)) / Rational::from_integer(2.into());
    [c1, c2, det(a)]
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, by exact
/// congruence diagonalization.
pub fn inertia(sym: &Matrix) -> (usize, usize, usize) {
    let n = sym.len();
    let mut a = sym.clone();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // a_kk = a_jj = 0 but a_kj != 0: add row/column j to k.
                for i in 0..n {
                    let v = a[j][i].clone();
                    a[k][i] += v;
                }
                for i in 0..n {
                    let v = a[i][j].clone();
                    a[i][k] += v;
                }
            }
        }
        let p = a[k][k].clone();
        diag.push(p.clone());
        if p.is_zero() {
            continue;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
            for j in k..n {
                let v = &a[j][k] * &f;
                a[j][i] -= v;
            }
        }
    }
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    (pos, neg, n - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_two() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let n = nullspace(&a, 3);
        assert_eq!(n.len(), 1);
        assert!(mat_vec(&a, &n[0]).iter().all(Zero::is_zero));
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 6)]];
        assert_eq!(rank(&a), 1);
        assert_eq!(nullspace(&a, 2), vec![vec![rat(-2, 3), int(1)]]);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = solve(&a, &[int(3), int(2)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)]).is_none());
    }

    #[test]
    fn determinant_and_char_poly() {
        let a = m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(det(&a), int(-1));
        let [c1, c2, c3] = char_poly3(&m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]));
        assert_eq!((c1, c2, c3), (int(10), int(31), int(30)));
    }

    #[test]
    fn inertia_of_lorentzian_forms() {
        assert_eq!(inertia(&m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])), (2, 1, 0));
        assert_eq!(inertia(&m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -1]])), (1, 1, 1));
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
    }
}
