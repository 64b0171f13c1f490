//! Dense exact linear algebra and a small multivariate polynomial type.

use crate::rational::{int, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

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
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                let y = b[k][j];
                if !y.is_zero() {
                    out[i][j] += *x * y;
                }
            }
        }
    }
    out
}

pub fn mul_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| *x * *y).sum())
        .collect()
}

/// Reduces `m` in place to reduced row echelon form over its first `ncols`
/// columns and returns the pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= f * *y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut m = m.clone();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column with that entry 1.
pub fn nullspace(m: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = m.clone();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free];
        }
        basis.push(v);
    }
    basis
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
        d *= a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c] * inv;
            for j in c..n {
                let y = a[c][j];
                a[i][j] -= f * y;
            }
        }
    }
    d
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `m x = b` when a solution exists.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(*y);
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols];
    }
    Some(x)
}

/// Sparse polynomial in finitely many variables, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// `sum_i coeffs[i] * t_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, *c);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += *c;
            if slot.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -*c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = out.terms.entry(e.clone()).or_insert_with(Rational::zero);
                *slot += *c1 * *c2;
                if slot.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = *c;
                for (x, k) in point.iter().zip(e) {
                    for _ in 0..*k {
                        v *= *x;
                    }
                }
                v
            })
            .sum()
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoized on the set of remaining columns. Cheap for sparse input.
/// `nvars` is the number of variables the entries are written in.
pub fn det_poly(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    assert!(n < 64, "det_poly supports fewer than 64 rows");
    let full: u64 = (1u64 << n) - 1;
    let mut memo: HashMap<u64, Poly> = HashMap::new();
    expand(m, 0, full, nvars, &mut memo)
}

fn expand(
    m: &[Vec<Poly>],
    row: usize,
    cols: u64,
    nvars: usize,
    memo: &mut HashMap<u64, Poly>,
) -> Poly {
    if row == m.len() {
        return Poly::constant(Rational::one(), nvars);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Poly::zero();
    let mut sign_pos = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let minor = expand(m, row + 1, cols & !(1 << c), nvars, memo);
            if !minor.is_zero() {
                let term = entry.mul(&minor);
                acc = if sign_pos { acc.add(&term) } else { acc.add(&term.neg()) };
            }
        }
        sign_pos = !sign_pos;
    }
    memo.insert(cols, acc.clone());
    acc
}
