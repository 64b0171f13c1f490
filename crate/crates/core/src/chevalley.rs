//! Chevalley basis, structure constants and the adjoint action.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, Rational};
use crate::rootsys::{format_weight, RootSystem, SeriesLabel};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Structure constants `N(a, b)` with `[E_a, E_b] = N(a, b) E_{a+b}`, and
/// `[E_a, E_{-a}] = h_a`, the coroot with `a(h_a) = 2`.
///
/// Signs are fixed by setting `N = +(p+1)` on extraspecial pairs of the
/// canonical positive order; everything else follows from the standard
/// identities among structure constants.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    system: Arc<RootSystem>,
    table: Vec<i64>,
    coroots: Vec<Vec<Rational>>,
}

/// Element of `g`: coefficients on the simple coroots `h_1..h_r` plus a
/// finitely supported map from root index to the coefficient of `E_root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub system: (SeriesLabel, usize),
    pub cartan: Vec<Rational>,
    pub roots: BTreeMap<usize, Rational>,
}

impl AlgebraElement {
    pub fn zero(rs: &RootSystem) -> Self {
        AlgebraElement {
            system: (rs.label(), rs.rank()),
            cartan: vec![Rational::zero(); rs.rank()],
            roots: BTreeMap::new(),
        }
    }

    /// The root vector `E_{roots[i]}`.
    pub fn root_vector(rs: &RootSystem, i: usize) -> Self {
        let mut e = Self::zero(rs);
        e.roots.insert(i, int(1));
        e
    }

    /// The simple coroot `h_k`.
    pub fn coroot(rs: &RootSystem, k: usize) -> Self {
        let mut e = Self::zero(rs);
        e.cartan[k] = int(1);
        e
    }

    pub fn cartan_element(rs: &RootSystem, coeffs: Vec<Rational>) -> Self {
        let mut e = Self::zero(rs);
        e.cartan = coeffs;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.cartan.iter().all(|c| c.is_zero()) && self.roots.values().all(|c| c.is_zero())
    }

    pub fn scaled(&self, c: Rational) -> Self {
        let mut out = self.clone();
        for x in out.cartan.iter_mut() {
            *x *= c;
        }
        for x in out.roots.values_mut() {
            *x *= c;
        }
        out.roots.retain(|_, x| !x.is_zero());
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, y) in out.cartan.iter_mut().zip(&other.cartan) {
            *x += *y;
        }
        for (k, v) in &other.roots {
            *out.roots.entry(*k).or_insert_with(Rational::zero) += *v;
        }
        out.roots.retain(|_, x| !x.is_zero());
        out
    }

    /// Coordinates in the basis `h_1..h_r, E_0..E_{n-1}`.
    pub fn coords(&self, nroots: usize) -> Vec<Rational> {
        let mut v = self.cartan.clone();
        v.extend(std::iter::repeat_n(Rational::zero(), nroots));
        let r = self.cartan.len();
        for (k, c) in &self.roots {
            v[r + k] = *c;
        }
        v
    }

    fn add_root(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.roots.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.roots.remove(&i);
        }
    }
}

impl StructureConstants {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let n = rs.num_roots();
        let npos = rs.num_positive();
        let mut pos = vec![0i64; n * n];
        for xi in 0..npos {
            let pairs: Vec<(usize, usize)> = (0..xi)
                .filter_map(|r| {
                    let s = (r + 1..xi).find(|&s| rs.sum_index(r, s) == Some(xi))?;
                    Some((r, s))
                })
                .collect();
            let Some(&(r1, s1)) = pairs.first() else { continue };
            let p = string_below(&rs, r1, s1);
            pos[r1 * n + s1] = p + 1;
            pos[s1 * n + r1] = -(p + 1);
            for &(r, s) in &pairs[1..] {
                let get = |x: usize, y: usize| n_value(&rs, &pos, x, y);
                let nr1 = rs.neg_index(r1);
                let ns1 = rs.neg_index(s1);
                let mut bracket = Rational::zero();
                if let Some(k) = rs.sum_index(s, nr1) {
                    bracket += get(s, nr1) * get(r, ns1) / rs.norm2(k);
                }
                if let Some(k) = rs.sum_index(r, nr1) {
                    bracket += get(nr1, r) * get(s, ns1) / rs.norm2(k);
                }
                let v = -rs.norm2(xi) / get(nr1, ns1) * bracket;
                assert!(v.is_integer(), "non-integral structure constant");
                let v = v.to_integer();
                pos[r * n + s] = v;
                pos[s * n + r] = -v;
            }
        }
        let mut table = vec![0i64; n * n];
        for x in 0..n {
            for y in 0..n {
                if rs.sum_index(x, y).is_some() {
                    let v = n_value(&rs, &pos, x, y);
                    assert!(v.is_integer());
                    table[x * n + y] = v.to_integer();
                }
            }
        }
        let coroots = (0..n)
            .map(|i| {
                (0..rs.rank())
                    .map(|k| {
                        let a = &rs.simples()[k];
                        int(rs.coeffs(i)[k]) * crate::rootsys::dot(a, a) / rs.norm2(i)
                    })
                    .collect()
            })
            .collect();
        StructureConstants { system: rs, table, coroots }
    }

    /// Constants in the basis `s_a E_a`, with `s_a = s_{-a} = ±1` so that
    /// `[E_a, E_{-a}] = h_a` still holds.
    pub fn rescaled(&self, signs: &[i64]) -> Result<Self> {
        let rs = &self.system;
        let n = rs.num_roots();
        if signs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: signs.len() });
        }
        if (0..n).any(|a| signs[a].abs() != 1 || signs[a] != signs[rs.neg_index(a)]) {
            return Err(Error::Input("signs must be ±1 and agree on opposite roots".into()));
        }
        let mut table = self.table.clone();
        for (a, b, v) in self.entries() {
            let c = rs.sum_index(a, b).expect("nonzero constant off a root sum");
            table[a * n + b] = signs[a] * signs[b] * signs[c] * v;
        }
        Ok(StructureConstants { system: rs.clone(), table, coroots: self.coroots.clone() })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    /// `N(a, b)`, zero when `a + b` is not a root.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.table[a * self.system.num_roots() + b]
    }

    /// Coefficients of `[E_a, E_{-a}]` on the simple coroots.
    pub fn coroot(&self, a: usize) -> &[Rational] {
        &self.coroots[a]
    }

    /// Ratio between `h_a` and the Killing-dual vector of `a` under the
    /// ambient form: `H_a = (a, a)/2 * h_a`.
    pub fn coroot_scale(&self, a: usize) -> Rational {
        self.system.norm2(a) / int(2)
    }

    pub fn dim(&self) -> usize {
        self.system.rank() + self.system.num_roots()
    }

    /// Value of root `i` on a Cartan element given in coroot coordinates.
    pub fn eval_root(&self, i: usize, h: &[Rational]) -> Rational {
        h.iter()
            .enumerate()
            .map(|(k, c)| *c * int(self.system.simple_pairing(i, k)))
            .sum()
    }

    /// Value of an arbitrary weight on a Cartan element.
    pub fn eval_weight(&self, w: &[Rational], h: &[Rational]) -> Rational {
        h.iter()
            .enumerate()
            .map(|(k, c)| *c * self.system.coroot_pairing(w, k))
            .sum()
    }

    /// All `(a, b, N)` with `a + b` a root, in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let n = self.system.num_roots();
        (0..n * n).filter_map(move |k| {
            let v = self.table[k];
            (v != 0).then_some((k / n, k % n, v))
        })
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.system != (self.system.label(), self.system.rank()) {
            return Err(Error::SystemMismatch);
        }
        Ok(())
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        let rs = &self.system;
        let mut out = AlgebraElement::zero(rs);
        for (&s, cy) in &y.roots {
            out.add_root(s, self.eval_root(s, &x.cartan) * *cy);
        }
        for (&r, cx) in &x.roots {
            out.add_root(r, -self.eval_root(r, &y.cartan) * *cx);
        }
        for (&r, cx) in &x.roots {
            for (&s, cy) in &y.roots {
                if s == rs.neg_index(r) {
                    for (slot, c) in out.cartan.iter_mut().zip(&self.coroots[r]) {
                        *slot += *cx * *cy * *c;
                    }
                } else if let Some(t) = rs.sum_index(r, s) {
                    out.add_root(t, *cx * *cy * int(self.n(r, s)));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_p` from `domain` into `codomain`; column `j` holds the
    /// coordinates of `[p, domain[j]]`.
    pub fn ad_matrix(
        &self,
        p: &AlgebraElement,
        domain: &[AlgebraElement],
        codomain: &[AlgebraElement],
    ) -> Result<linalg::Matrix> {
        let n = self.system.num_roots();
        let basis = linalg::transpose(&codomain.iter().map(|c| c.coords(n)).collect());
        let mut cols = Vec::with_capacity(domain.len());
        for (j, b) in domain.iter().enumerate() {
            let img = self.bracket(p, b)?;
            let target = img.coords(n);
            let sol = if codomain.is_empty() {
                target.iter().all(|x| x.is_zero()).then(Vec::new)
            } else {
                linalg::solve(&basis, &target)
            };
            cols.push(sol.ok_or_else(|| Error::NotInvariant(format!("image of domain vector {j}")))?);
        }
        let mut m = linalg::zeros(codomain.len(), domain.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[i][j] = *v;
            }
        }
        Ok(m)
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
    pub fn jacobiator(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
        z: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        let a = self.bracket(x, &self.bracket(y, z)?)?;
        let b = self.bracket(y, &self.bracket(z, x)?)?;
        let c = self.bracket(z, &self.bracket(x, y)?)?;
        Ok(a.plus(&b).plus(&c))
    }

    /// Basis `h_1..h_r, E_0..E_{n-1}` of the whole algebra.
    pub fn basis(&self) -> Vec<AlgebraElement> {
        let rs = &self.system;
        (0..rs.rank())
            .map(|k| AlgebraElement::coroot(rs, k))
            .chain((0..rs.num_roots()).map(|i| AlgebraElement::root_vector(rs, i)))
            .collect()
    }

    /// JSON lines `{"alpha":[..],"beta":[..],"n":".."}`.
    pub fn dump_lines(&self) -> Vec<String> {
        let rs = &self.system;
        self.entries()
            .map(|(a, b, v)| {
                let enc = |i: usize| -> Vec<String> { rs.root(i).iter().map(|x| x.to_string()).collect() };
                serde_json::json!({"alpha": enc(a), "beta": enc(b), "n": v.to_string()}).to_string()
            })
            .collect()
    }

    pub fn describe(&self, i: usize) -> String {
        format_weight(self.system.root(i))
    }
}

/// Largest `p` with `s - p r` a root.
pub fn string_below(rs: &RootSystem, r: usize, s: usize) -> i64 {
    let nr = rs.neg_index(r);
    let mut cur = s;
    let mut p = 0;
    while let Some(next) = rs.sum_index(cur, nr) {
        cur = next;
        p += 1;
    }
    p
}

fn n_value(rs: &RootSystem, pos: &[i64], x: usize, y: usize) -> Rational {
    let n = rs.num_roots();
    let Some(sum) = rs.sum_index(x, y) else {
        return Rational::zero();
    };
    let (px, py) = (rs.is_positive(x), rs.is_positive(y));
    if px && py {
        let v = pos[x * n + y];
        assert!(v != 0, "structure constant requested before it was fixed");
        return int(v);
    }
    if !px && !py {
        return -n_value(rs, pos, rs.neg_index(x), rs.neg_index(y));
    }
    let t = rs.neg_index(sum);
    let pt = rs.is_positive(t);
    if pt == py {
        rs.norm2(t) / rs.norm2(x) * n_value(rs, pos, y, t)
    } else {
        rs.norm2(t) / rs.norm2(y) * n_value(rs, pos, t, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn sc(l: SeriesLabel, r: usize) -> StructureConstants {
        StructureConstants::new(RootSystem::build(l, r).unwrap())
    }

    fn idx(s: &StructureConstants, xs: &[i64]) -> usize {
        let w: Vec<Rational> = xs.iter().map(|&x| int(x)).collect();
        s.system().index_of(&w).unwrap()
    }

    #[test]
    fn a2_simple_pair_is_plus_one() {
        let s = sc(SeriesLabel::A, 2);
        let a = idx(&s, &[1, -1, 0]);
        let b = idx(&s, &[0, 1, -1]);
        assert_eq!(s.n(a, b), 1);
        assert_eq!(s.n(b, a), -1);
    }

    #[test]
    fn magnitudes_follow_root_strings() {
        for (l, r) in [(SeriesLabel::B, 3), (SeriesLabel::G2, 2), (SeriesLabel::F4, 4)] {
            let s = sc(l, r);
            let rs = s.system().clone();
            for (a, b, v) in s.entries() {
                assert_eq!(v.abs(), string_below(&rs, a, b) + 1);
                assert_eq!(s.n(b, a), -v);
            }
        }
    }

    #[test]
    fn b3_short_long_bracket() {
        let s = sc(SeriesLabel::B, 3);
        let rs = s.system().clone();
        let x = AlgebraElement::root_vector(&rs, idx(&s, &[1, -1, 0]));
        let y = AlgebraElement::root_vector(&rs, idx(&s, &[-1, 0, 0]));
        let z = s.bracket(&x, &y).unwrap();
        let t = idx(&s, &[0, -1, 0]);
        assert_eq!(z.roots.len(), 1);
        assert_eq!(z.roots[&t].abs(), int(1));
    }

    #[test]
    fn cartan_action_and_antisymmetry() {
        let s = sc(SeriesLabel::C, 3);
        let rs = s.system().clone();
        for i in 0..rs.num_roots() {
            let e = AlgebraElement::root_vector(&rs, i);
            assert!(s.bracket(&e, &e).unwrap().is_zero());
            let h = AlgebraElement::cartan_element(&rs, vec![int(1), int(2), int(-1)]);
            let img = s.bracket(&h, &e).unwrap();
            assert_eq!(img, e.scaled(s.eval_root(i, &h.cartan)));
            let f = AlgebraElement::root_vector(&rs, rs.neg_index(i));
            let hr = s.bracket(&e, &f).unwrap();
            assert!(hr.roots.is_empty());
            assert_eq!(s.eval_root(i, &hr.cartan), int(2));
        }
    }

    #[test]
    fn jacobi_on_small_systems() {
        for (l, r) in [(SeriesLabel::A, 3), (SeriesLabel::B, 2), (SeriesLabel::G2, 2), (SeriesLabel::C, 3)] {
            let s = sc(l, r);
            let basis = s.basis();
            for x in &basis {
                for y in &basis {
                    for z in &basis {
                        assert!(s.jacobiator(x, y, z).unwrap().is_zero(), "{l}{r}");
                    }
                }
            }
        }
    }

    #[test]
    fn ad_matrix_of_cartan_is_diagonal() {
        let s = sc(SeriesLabel::A, 2);
        let rs = s.system().clone();
        let h = AlgebraElement::coroot(&rs, 0);
        let dom: Vec<_> = (0..rs.num_roots()).map(|i| AlgebraElement::root_vector(&rs, i)).collect();
        let m = s.ad_matrix(&h, &dom, &dom).unwrap();
        for i in 0..dom.len() {
            for j in 0..dom.len() {
                let want = if i == j { int(rs.simple_pairing(i, 0)) } else { int(0) };
                assert_eq!(m[i][j], want);
            }
        }
        let zero = AlgebraElement::zero(&rs);
        let m0 = s.ad_matrix(&zero, &dom, &dom).unwrap();
        assert!(m0.iter().flatten().all(|x| x.is_zero()));
        let e = AlgebraElement::root_vector(&rs, 0);
        let err = s.ad_matrix(&e, &dom, &dom[..1]);
        assert!(matches!(err, Err(Error::NotInvariant(_))));
    }
}
