//! Canonical root systems in ambient coordinates.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{frac, int, Rational};
use num_traits::{One, Signed, Zero};
use std::cmp::Reverse;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Vector in ambient coordinates. Roots, the distortion and Cartan-plane
/// normals all live here.
pub type Weight = Vec<Rational>;
pub type Root = Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesLabel {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    A1xA1,
}

impl SeriesLabel {
    pub const ALL: [SeriesLabel; 10] = [
        SeriesLabel::A,
        SeriesLabel::B,
        SeriesLabel::C,
        SeriesLabel::D,
        SeriesLabel::E6,
        SeriesLabel::E7,
        SeriesLabel::E8,
        SeriesLabel::F4,
        SeriesLabel::G2,
        SeriesLabel::A1xA1,
    ];

    /// Rank for the types that have only one.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            SeriesLabel::E6 => Some(6),
            SeriesLabel::E7 => Some(7),
            SeriesLabel::E8 => Some(8),
            SeriesLabel::F4 => Some(4),
            SeriesLabel::G2 | SeriesLabel::A1xA1 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            SeriesLabel::A => 1,
            SeriesLabel::B | SeriesLabel::C => 2,
            SeriesLabel::D => 3,
            other => other.fixed_rank().unwrap(),
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self.fixed_rank() {
            Some(r) => r == rank,
            None => rank >= self.min_rank(),
        }
    }

    /// Classical number of roots.
    pub fn root_count(self, n: usize) -> usize {
        match self {
            SeriesLabel::A => n * (n + 1),
            SeriesLabel::B | SeriesLabel::C => 2 * n * n,
            SeriesLabel::D => 2 * n * (n - 1),
            SeriesLabel::E6 => 72,
            SeriesLabel::E7 => 126,
            SeriesLabel::E8 => 240,
            SeriesLabel::F4 => 48,
            SeriesLabel::G2 => 12,
            SeriesLabel::A1xA1 => 4,
        }
    }
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesLabel::A => "A",
            SeriesLabel::B => "B",
            SeriesLabel::C => "C",
            SeriesLabel::D => "D",
            SeriesLabel::E6 => "E6",
            SeriesLabel::E7 => "E7",
            SeriesLabel::E8 => "E8",
            SeriesLabel::F4 => "F4",
            SeriesLabel::G2 => "G2",
            SeriesLabel::A1xA1 => "A1xA1",
        };
        f.write_str(s)
    }
}

impl FromStr for SeriesLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeriesLabel::ALL
            .iter()
            .copied()
            .find(|l| l.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Input(format!("unknown type label {s:?}")))
    }
}

fn unit(dim: usize, i: usize) -> Weight {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

fn combo(dim: usize, terms: &[(usize, i64)]) -> Weight {
    let mut v = vec![Rational::zero(); dim];
    for &(i, c) in terms {
        v[i] += int(c);
    }
    v
}

pub fn add(v: &[Rational], w: &[Rational]) -> Weight {
    v.iter().zip(w).map(|(a, b)| *a + *b).collect()
}

pub fn sub(v: &[Rational], w: &[Rational]) -> Weight {
    v.iter().zip(w).map(|(a, b)| *a - *b).collect()
}

pub fn scale(c: Rational, v: &[Rational]) -> Weight {
    v.iter().map(|a| c * *a).collect()
}

pub fn neg(v: &[Rational]) -> Weight {
    v.iter().map(|a| -*a).collect()
}

pub fn dot(v: &[Rational], w: &[Rational]) -> Rational {
    v.iter().zip(w).map(|(a, b)| *a * *b).sum()
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Compact text form such as `(1,-1,0)` or `(1/2,-1/2,...)`.
pub fn format_weight(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Human form in terms of the ambient basis, e.g. `e1-e2` or `-2e1`.
pub fn pretty_weight(v: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = if c.abs() == Rational::one() { String::new() } else { c.abs().to_string() };
        let sign = if *c < Rational::zero() { "-" } else if out.is_empty() { "" } else { "+" };
        out.push_str(&format!("{sign}{mag}e{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn simple_roots(label: SeriesLabel, n: usize) -> (usize, Vec<Weight>) {
    match label {
        SeriesLabel::A => {
            let dim = n + 1;
            (dim, (0..n).map(|i| combo(dim, &[(i, 1), (i + 1, -1)])).collect())
        }
        SeriesLabel::B | SeriesLabel::C | SeriesLabel::D => {
            let mut s: Vec<Weight> = (0..n - 1).map(|i| combo(n, &[(i, 1), (i + 1, -1)])).collect();
            s.push(match label {
                SeriesLabel::B => unit(n, n - 1),
                SeriesLabel::C => combo(n, &[(n - 1, 2)]),
                _ => combo(n, &[(n - 2, 1), (n - 1, 1)]),
            });
            (n, s)
        }
        SeriesLabel::G2 => (3, vec![combo(3, &[(0, 1), (1, -1)]), combo(3, &[(0, -2), (1, 1), (2, 1)])]),
        SeriesLabel::F4 => {
            let h = frac(1, 2);
            (
                4,
                vec![
                    vec![h, -h, -h, -h],
                    unit(4, 3),
                    combo(4, &[(2, 1), (3, -1)]),
                    combo(4, &[(1, 1), (2, -1)]),
                ],
            )
        }
        SeriesLabel::E6 | SeriesLabel::E7 | SeriesLabel::E8 => {
            let h = frac(1, 2);
            let mut first = vec![-h; 8];
            first[0] = h;
            first[7] = h;
            let mut s = vec![first, combo(8, &[(0, 1), (1, 1)])];
            for i in 0..n - 2 {
                s.push(combo(8, &[(i + 1, 1), (i, -1)]));
            }
            (8, s)
        }
        SeriesLabel::A1xA1 => (4, vec![combo(4, &[(0, 1), (1, -1)]), combo(4, &[(2, 1), (3, -1)])]),
    }
}

/// A reduced root system with its canonical positive system and ordering.
///
/// Roots are stored as the positive roots in canonical order (by height,
/// then lexicographically on simple-root coefficients with earlier simple
/// roots first), followed by their negatives in the same order.
#[derive(Debug)]
pub struct RootSystem {
    label: SeriesLabel,
    rank: usize,
    dim: usize,
    simples: Vec<Weight>,
    roots: Vec<Weight>,
    npos: usize,
    coeffs: Vec<Vec<i64>>,
    norm2: Vec<Rational>,
    index: HashMap<Weight, usize>,
    sums: Vec<i32>,
    reflections: Vec<Vec<usize>>,
    pairings: Vec<Vec<i64>>,
    gram_inv: linalg::Matrix,
    lex_rank: Vec<usize>,
}

impl RootSystem {
    pub fn build(label: SeriesLabel, rank: usize) -> Result<Arc<RootSystem>> {
        if !label.valid_rank(rank) {
            return Err(Error::InvalidRank { label: label.to_string(), rank });
        }
        let (dim, simples) = simple_roots(label, rank);
        let reflect = |v: &Weight, a: &Weight| -> Weight {
            let c = int(2) * dot(v, a) / dot(a, a);
            sub(v, &scale(c, a))
        };
        let mut seen: HashSet<Weight> = simples.iter().cloned().collect();
        let mut queue: VecDeque<Weight> = simples.iter().cloned().collect();
        let mut all = Vec::new();
        while let Some(v) = queue.pop_front() {
            for a in &simples {
                let w = reflect(&v, a);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
            all.push(v);
        }
        let gram: linalg::Matrix =
            simples.iter().map(|a| simples.iter().map(|b| dot(a, b)).collect()).collect();
        let gram_inv = linalg::inverse(&gram).expect("simple roots are independent");
        let coeffs_of = |v: &Weight| -> Vec<i64> {
            let rhs: Vec<Rational> = simples.iter().map(|a| dot(v, a)).collect();
            linalg::mul_vec(&gram_inv, &rhs)
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "root coefficient is not integral");
                    c.to_integer()
                })
                .collect()
        };
        let mut pos: Vec<(Weight, Vec<i64>)> = all
            .into_iter()
            .map(|v| {
                let c = coeffs_of(&v);
                (v, c)
            })
            .filter(|(_, c)| c.iter().all(|&x| x >= 0))
            .collect();
        pos.sort_by_key(|(_, c)| (c.iter().sum::<i64>(), Reverse(c.clone())));
        let npos = pos.len();
        let mut roots: Vec<Weight> = pos.iter().map(|(v, _)| v.clone()).collect();
        let mut coeffs: Vec<Vec<i64>> = pos.iter().map(|(_, c)| c.clone()).collect();
        for i in 0..npos {
            roots.push(neg(&roots[i]));
            coeffs.push(coeffs[i].iter().map(|x| -x).collect());
        }
        let nroots = roots.len();
        let index: HashMap<Weight, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let norm2: Vec<Rational> = roots.iter().map(|r| dot(r, r)).collect();
        let mut sums = vec![-1i32; nroots * nroots];
        for i in 0..nroots {
            for j in 0..nroots {
                if let Some(&k) = index.get(&add(&roots[i], &roots[j])) {
                    sums[i * nroots + j] = k as i32;
                }
            }
        }
        let reflections: Vec<Vec<usize>> = simples
            .iter()
            .map(|a| roots.iter().map(|r| index[&reflect(r, a)]).collect())
            .collect();
        let pairings: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| {
                simples
                    .iter()
                    .map(|a| {
                        let c = int(2) * dot(r, a) / dot(a, a);
                        assert!(c.is_integer());
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut by_lex: Vec<usize> = (0..nroots).collect();
        by_lex.sort_by(|&a, &b| roots[a].cmp(&roots[b]));
        let mut lex_rank = vec![0; nroots];
        for (r, &i) in by_lex.iter().enumerate() {
            lex_rank[i] = r;
        }
        Ok(Arc::new(RootSystem {
            label,
            rank,
            dim,
            simples,
            roots,
            npos,
            coeffs,
            norm2,
            index,
            sums,
            reflections,
            pairings,
            gram_inv,
            lex_rank,
        }))
    }

    pub fn label(&self) -> SeriesLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn positives(&self) -> &[Weight] {
        &self.roots[..self.npos]
    }

    pub fn simples(&self) -> &[Weight] {
        &self.simples
    }

    pub fn root(&self, i: usize) -> &Weight {
        &self.roots[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    /// Index of the negative of root `i`.
    pub fn neg_index(&self, i: usize) -> usize {
        (i + self.npos) % self.roots.len()
    }

    /// Index of the `k`-th simple root.
    pub fn simple_index(&self, k: usize) -> usize {
        self.index[&self.simples[k]]
    }

    pub fn coeffs(&self, i: usize) -> &[i64] {
        &self.coeffs[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.coeffs[i].iter().sum()
    }

    pub fn norm2(&self, i: usize) -> Rational {
        self.norm2[i]
    }

    pub fn index_of(&self, v: &[Rational]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Index of `roots[i] + roots[j]` when that is a root.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.sums[i * self.roots.len() + j];
        (k >= 0).then_some(k as usize)
    }

    /// Root index permutation induced by the `k`-th simple reflection.
    pub fn simple_reflection(&self, k: usize) -> &[usize] {
        &self.reflections[k]
    }

    /// `<root_i, coroot of simple k>`, an integer.
    pub fn simple_pairing(&self, i: usize, k: usize) -> i64 {
        self.pairings[i][k]
    }

    /// `2 (v, simple_k) / (simple_k, simple_k)` for any weight.
    pub fn coroot_pairing(&self, v: &[Rational], k: usize) -> Rational {
        let a = &self.simples[k];
        int(2) * dot(v, a) / dot(a, a)
    }

    /// Coordinates of a weight in the span of the simple roots.
    pub fn simple_coords(&self, v: &[Rational]) -> Vec<Rational> {
        let rhs: Vec<Rational> = self.simples.iter().map(|a| dot(v, a)).collect();
        linalg::mul_vec(&self.gram_inv, &rhs)
    }

    /// Whether a weight lies in the real span of the roots.
    pub fn in_root_span(&self, v: &[Rational]) -> bool {
        let c = self.simple_coords(v);
        let back = self
            .simples
            .iter()
            .zip(&c)
            .fold(vec![Rational::zero(); self.dim], |acc, (a, x)| add(&acc, &scale(*x, a)));
        back == v
    }

    /// Cartan matrix `A[i][j] = <simple_i, coroot_j>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.pairings[self.simple_index(i)][j]).collect())
            .collect()
    }

    fn check_dim(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    fn require_root(&self, v: &[Rational]) -> Result<usize> {
        self.check_dim(v)?;
        self.index_of(v).ok_or_else(|| Error::NotARoot(format_weight(v)))
    }

    pub fn is_root(&self, v: &[Rational]) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.index.contains_key(v))
    }

    pub fn inner(&self, v: &[Rational], w: &[Rational]) -> Result<Rational> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        Ok(dot(v, w))
    }

    pub fn weyl_reflect(&self, mirror: &[Rational], v: &[Rational]) -> Result<Weight> {
        self.require_root(mirror)?;
        self.check_dim(v)?;
        let c = int(2) * dot(v, mirror) / dot(mirror, mirror);
        Ok(sub(v, &scale(c, mirror)))
    }

    /// Applies simple reflections `s_{word[0]}`, then `s_{word[1]}`, ... to a weight.
    pub fn apply_word(&self, word: &[usize], v: &[Rational]) -> Weight {
        let mut w = v.to_vec();
        for &k in word {
            let a = &self.simples[k];
            let c = int(2) * dot(&w, a) / dot(a, a);
            w = sub(&w, &scale(c, a));
        }
        w
    }

    /// Index of the lowest root.
    pub fn minimal_index(&self) -> Result<usize> {
        if self.label == SeriesLabel::A1xA1 {
            return Err(Error::Reducible);
        }
        Ok(self.neg_index(self.npos - 1))
    }

    pub fn minimal_root(&self) -> Result<Root> {
        Ok(self.roots[self.minimal_index()?].clone())
    }

    /// Simultaneous Weyl orbit of a pair of roots, by index.
    pub fn pair_orbit(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let mut seen = HashSet::from([(i, j)]);
        let mut queue = VecDeque::from([(i, j)]);
        let mut out = Vec::new();
        while let Some((a, b)) = queue.pop_front() {
            for perm in &self.reflections {
                let next = (perm[a], perm[b]);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
            out.push((a, b));
        }
        out
    }

    /// Orbit representative by index: the lexicographically greatest pair of
    /// coordinate vectors.
    pub fn canonical_pair_index(&self, i: usize, j: usize) -> (usize, usize) {
        self.pair_orbit(i, j)
            .into_iter()
            .max_by_key(|&(a, b)| (self.lex_rank[a], self.lex_rank[b]))
            .unwrap()
    }

    pub fn canonical_pair_rep(&self, pair: (&[Rational], &[Rational])) -> Result<(Root, Root)> {
        let i = self.require_root(pair.0)?;
        let j = self.require_root(pair.1)?;
        let (a, b) = self.canonical_pair_index(i, j);
        Ok((self.roots[a].clone(), self.roots[b].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Weight {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn counts_and_rank_checks() {
        assert_eq!(RootSystem::build(SeriesLabel::G2, 2).unwrap().num_roots(), 12);
        assert_eq!(RootSystem::build(SeriesLabel::B, 3).unwrap().num_roots(), 18);
        let a1 = RootSystem::build(SeriesLabel::A, 1).unwrap();
        assert_eq!(a1.roots(), &[w(&[1, -1]), w(&[-1, 1])]);
        assert!(matches!(RootSystem::build(SeriesLabel::D, 2), Err(Error::InvalidRank { .. })));
        assert!(RootSystem::build(SeriesLabel::E6, 5).is_err());
        assert!(RootSystem::build(SeriesLabel::C, 1).is_err());
    }

    #[test]
    fn membership() {
        let b3 = RootSystem::build(SeriesLabel::B, 3).unwrap();
        assert!(b3.is_root(&w(&[1, 1, 0])).unwrap());
        assert!(!b3.is_root(&w(&[0, 0, 0])).unwrap());
        assert!(b3.is_root(&w(&[1, 0])).is_err());
        let a3 = RootSystem::build(SeriesLabel::A, 3).unwrap();
        assert!(!a3.is_root(&w(&[1, 1, -1, -1])).unwrap());
    }

    #[test]
    fn minimal_roots() {
        let a4 = RootSystem::build(SeriesLabel::A, 4).unwrap();
        assert_eq!(a4.minimal_root().unwrap(), w(&[-1, 0, 0, 0, 1]));
        let b4 = RootSystem::build(SeriesLabel::B, 4).unwrap();
        assert_eq!(b4.minimal_root().unwrap(), w(&[-1, -1, 0, 0]));
        let g2 = RootSystem::build(SeriesLabel::G2, 2).unwrap();
        assert_eq!(g2.minimal_root().unwrap(), w(&[1, 1, -2]));
        let f4 = RootSystem::build(SeriesLabel::F4, 4).unwrap();
        assert_eq!(f4.minimal_root().unwrap(), w(&[-1, -1, 0, 0]));
        let e7 = RootSystem::build(SeriesLabel::E7, 7).unwrap();
        assert_eq!(e7.minimal_root().unwrap(), w(&[0, 0, 0, 0, 0, 0, 1, -1]));
        let e8 = RootSystem::build(SeriesLabel::E8, 8).unwrap();
        assert_eq!(e8.minimal_root().unwrap(), w(&[0, 0, 0, 0, 0, 0, -1, -1]));
        let e6 = RootSystem::build(SeriesLabel::E6, 6).unwrap();
        let h = frac(1, 2);
        assert_eq!(e6.minimal_root().unwrap(), vec![-h, -h, -h, -h, -h, h, h, -h]);
        let p = RootSystem::build(SeriesLabel::A1xA1, 2).unwrap();
        assert_eq!(p.minimal_root(), Err(Error::Reducible));
    }

    #[test]
    fn inner_and_reflect() {
        let b2 = RootSystem::build(SeriesLabel::B, 2).unwrap();
        assert_eq!(b2.inner(&w(&[1, 1]), &w(&[1, -1])).unwrap(), int(0));
        assert_eq!(b2.weyl_reflect(&w(&[0, 1]), &w(&[1, -1])).unwrap(), w(&[1, 1]));
        assert!(matches!(b2.weyl_reflect(&w(&[2, 0]), &w(&[1, 0])), Err(Error::NotARoot(_))));
        let g2 = RootSystem::build(SeriesLabel::G2, 2).unwrap();
        let long = g2.root(g2.num_positive() - 1).clone();
        assert_eq!(g2.inner(&long, &long).unwrap(), int(6));
        let a2 = RootSystem::build(SeriesLabel::A, 2).unwrap();
        assert_eq!(a2.weyl_reflect(&w(&[1, -1, 0]), &w(&[1, -1, 0])).unwrap(), w(&[-1, 1, 0]));
    }

    #[test]
    fn canonical_order_starts_with_simples() {
        for (l, r) in [(SeriesLabel::B, 4), (SeriesLabel::F4, 4), (SeriesLabel::E6, 6)] {
            let rs = RootSystem::build(l, r).unwrap();
            for k in 0..r {
                assert_eq!(rs.simple_index(k), k);
            }
        }
    }

    #[test]
    fn pair_representatives() {
        let b3 = RootSystem::build(SeriesLabel::B, 3).unwrap();
        let rep = b3.canonical_pair_rep((&w(&[0, 1, 0]), &w(&[0, 0, 1]))).unwrap();
        assert_eq!(rep, (w(&[1, 0, 0]), w(&[0, 1, 0])));
        let c3 = RootSystem::build(SeriesLabel::C, 3).unwrap();
        let rep = c3.canonical_pair_rep((&w(&[1, 1, 0]), &w(&[1, -1, 0]))).unwrap();
        assert_eq!(rep, (w(&[1, 1, 0]), w(&[1, -1, 0])));
        let a2 = RootSystem::build(SeriesLabel::A, 2).unwrap();
        let i = a2.index_of(&w(&[1, -1, 0])).unwrap();
        assert!(a2.pair_orbit(i, i).contains(&(i, i)));
    }
}
