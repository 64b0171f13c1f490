//! Invariant symmetric forms on `g/h` that scale by the distortion.
//!
//! Unknowns are the entries `<u_l, u_m>` for quotient labels with
//! `l + m = delta`; every other entry vanishes by weight. Each generator `x`
//! of `p` contributes `<[x,u],v> + <u,[x,v]> - delta(x) <u,v> = 0`.

use crate::chevalley::{AlgebraElement, StructureConstants};
use crate::error::{Error, Result};
use crate::isotropy::{quotient_basis, quotient_labels, IsotropyConfig, Label};
use crate::linalg::{self, Matrix, Poly};
use crate::rational::{int, Rational};
use crate::rootsys::{self, Weight};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormUnknowns {
    /// Pairs of positions in the quotient basis, first <= second.
    pub entries: Vec<(usize, usize)>,
    pub index: HashMap<(usize, usize), usize>,
}

impl FormUnknowns {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a.min(b), a.max(b))).copied()
    }
}

#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub labels: Vec<Label>,
    pub names: Vec<String>,
    pub unknowns: FormUnknowns,
    pub rows: Matrix,
    config: IsotropyConfig,
}

impl LinearSystem {
    pub fn config(&self) -> &IsotropyConfig {
        &self.config
    }

    /// Gram matrix on the quotient basis for a coefficient vector.
    pub fn gram(&self, x: &[Rational]) -> Matrix {
        let n = self.labels.len();
        let mut g = linalg::zeros(n, n);
        for (k, &(a, b)) in self.unknowns.entries.iter().enumerate() {
            g[a][b] = x[k];
            g[b][a] = x[k];
        }
        g
    }

    /// Unknown names as label pairs.
    pub fn unknown_names(&self) -> Vec<(String, String)> {
        self.unknowns
            .entries
            .iter()
            .map(|&(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }
}

/// Why no nondegenerate solution exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// The solution space is zero.
    NoSolution,
    /// The determinant of the generic solution, a polynomial in the
    /// solution-space coordinates, is identically zero.
    DeterminantVanishes { dimension: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSolution {
    pub dimension: usize,
    pub basis: Vec<Vec<Rational>>,
    pub nondegenerate_witness: Option<Vec<Rational>>,
    /// Largest absolute value of any assembled constraint on any basis
    /// vector; always exactly zero.
    pub residual_certificate: Rational,
    pub infeasibility: Option<Infeasibility>,
}

impl FormSolution {
    pub fn feasible(&self) -> bool {
        self.nondegenerate_witness.is_some()
    }

    /// Feasible with a one-dimensional solution space, so the conformal
    /// class is a single point.
    pub fn unique_class(&self) -> bool {
        self.feasible() && self.dimension == 1
    }
}

struct Quotient<'a> {
    config: &'a IsotropyConfig,
    pos: HashMap<Label, usize>,
    lift_h: Option<Vec<Rational>>,
}

impl<'a> Quotient<'a> {
    fn new(config: &'a IsotropyConfig, labels: &[Label]) -> Self {
        let pos = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Quotient { config, pos, lift_h: config.cartan_lift() }
    }

    fn project(&self, x: &AlgebraElement) -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        for (r, c) in &x.roots {
            if let Some(&p) = self.pos.get(&Label::Root(*r)) {
                out.push((p, *c));
            }
        }
        if let Some(&p) = self.pos.get(&Label::Cartan) {
            let v = self.config.cartan_projection(&x.cartan);
            if !v.is_zero() {
                out.push((p, v));
            }
        }
        out
    }

    fn lift(&self, l: Label) -> AlgebraElement {
        let rs = &self.config.system;
        match l {
            Label::Root(i) => AlgebraElement::root_vector(rs, i),
            Label::Cartan => AlgebraElement::cartan_element(rs, self.lift_h.clone().expect("Cartan label has a lift")),
        }
    }
}

/// Generators of `p`: simple coroots with their distortion values, then the
/// root vectors of `p`, which act isometrically.
fn generators(sc: &StructureConstants, config: &IsotropyConfig) -> Vec<(AlgebraElement, Rational, Weight)> {
    let rs = &config.system;
    let zero_w = vec![Rational::zero(); rs.dim()];
    let mut out: Vec<_> = (0..rs.rank())
        .map(|k| {
            let d = rs.coroot_pairing(&config.delta.functional, k);
            (AlgebraElement::coroot(rs, k), d, zero_w.clone())
        })
        .collect();
    for &g in &config.p_roots {
        out.push((AlgebraElement::root_vector(rs, g), Rational::zero(), rs.root(g).clone()));
    }
    let _ = sc;
    out
}

pub fn assemble(sc: &StructureConstants, config: &IsotropyConfig) -> Result<LinearSystem> {
    let labels = quotient_basis(config)?;
    build(sc, config, labels)
}

/// Assembles without the structural checks, which are stated relative to
/// the standard Borel. Used for Weyl-translated configurations.
pub fn assemble_unvalidated(sc: &StructureConstants, config: &IsotropyConfig) -> Result<LinearSystem> {
    build(sc, config, quotient_labels(config))
}

fn build(sc: &StructureConstants, config: &IsotropyConfig, labels: Vec<Label>) -> Result<LinearSystem> {
    if sc.system().label() != config.system.label() || sc.system().rank() != config.system.rank() {
        return Err(Error::SystemMismatch);
    }
    let names: Vec<String> = labels.iter().map(|l| config.label_name(*l)).collect();
    let weights: Vec<Weight> = labels.iter().map(|l| config.label_weight(*l)).collect();
    let mut by_weight: HashMap<Weight, usize> = HashMap::new();
    for (i, w) in weights.iter().enumerate() {
        by_weight.insert(w.clone(), i);
    }
    let delta = &config.delta.functional;
    let mut entries = Vec::new();
    let mut index = HashMap::new();
    for a in 0..labels.len() {
        if let Some(&b) = by_weight.get(&rootsys::sub(delta, &weights[a])) {
            if a <= b {
                index.insert((a, b), entries.len());
                entries.push((a, b));
            }
        }
    }
    let unknowns = FormUnknowns { entries, index };
    let q = Quotient::new(config, &labels);
    let lifts: Vec<AlgebraElement> = labels.iter().map(|l| q.lift(*l)).collect();
    let mut rows = Vec::new();
    for (x, dx, wx) in generators(sc, config) {
        let images: Vec<Vec<(usize, Rational)>> =
            lifts.iter().map(|u| q.project(&sc.bracket(&x, u).expect("same system"))).collect();
        let target = rootsys::sub(delta, &wx);
        for a in 0..labels.len() {
            let Some(&b) = by_weight.get(&rootsys::sub(&target, &weights[a])) else { continue };
            if b < a {
                continue;
            }
            let mut row = vec![Rational::zero(); unknowns.len()];
            for &(c, coef) in &images[a] {
                if let Some(k) = unknowns.get(c, b) {
                    row[k] += coef;
                }
            }
            for &(c, coef) in &images[b] {
                if let Some(k) = unknowns.get(a, c) {
                    row[k] += coef;
                }
            }
            if let Some(k) = unknowns.get(a, b) {
                row[k] -= dx;
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(LinearSystem { labels, names, unknowns, rows, config: config.clone() })
}

fn first_primes(n: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut k = 3i64;
    while out.len() < n {
        if (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0) {
            out.push(k);
        }
        k += 1;
    }
    out
}

fn combine(basis: &[Vec<Rational>], coeffs: &[Rational], len: usize) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); len];
    for (v, c) in basis.iter().zip(coeffs) {
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += *c * *vi;
        }
    }
    x
}

/// Determinant of the Gram matrix of the generic solution
/// `sum_i t_i basis_i` as a polynomial in the `t_i`.
pub fn generic_determinant(system: &LinearSystem, basis: &[Vec<Rational>]) -> Poly {
    let d = basis.len();
    let n = system.labels.len();
    let mut m: Vec<Vec<Poly>> = vec![vec![Poly::zero(); n]; n];
    for (k, &(a, b)) in system.unknowns.entries.iter().enumerate() {
        let coeffs: Vec<Rational> = basis.iter().map(|v| v[k]).collect();
        let p = Poly::linear(&coeffs);
        m[a][b] = p.clone();
        m[b][a] = p;
    }
    linalg::det_poly(&m, d)
}

pub fn solve(system: &LinearSystem) -> FormSolution {
    let nunk = system.unknowns.len();
    let basis = if system.rows.is_empty() {
        linalg::identity(nunk)
    } else {
        linalg::nullspace(&system.rows, nunk)
    };
    let residual = basis
        .iter()
        .flat_map(|v| linalg::mul_vec(&system.rows, v))
        .map(|r| r.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let dimension = basis.len();
    if dimension == 0 {
        return FormSolution {
            dimension,
            basis,
            nondegenerate_witness: None,
            residual_certificate: residual,
            infeasibility: Some(Infeasibility::NoSolution),
        };
    }
    let primes: Vec<Rational> = first_primes(dimension).into_iter().map(int).collect();
    let x = combine(&basis, &primes, nunk);
    if !linalg::det(&system.gram(&x)).is_zero() {
        return FormSolution {
            dimension,
            basis,
            nondegenerate_witness: Some(x),
            residual_certificate: residual,
            infeasibility: None,
        };
    }
    let poly = generic_determinant(system, &basis);
    if poly.is_zero() {
        return FormSolution {
            dimension,
            basis,
            nondegenerate_witness: None,
            residual_certificate: residual,
            infeasibility: Some(Infeasibility::DeterminantVanishes { dimension }),
        };
    }
    // A nonzero polynomial has a nonvanishing integer point; search a
    // deterministic stream of small ones.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    loop {
        let point: Vec<Rational> = (0..dimension).map(|_| int(rng.gen_range(-20..=20))).collect();
        if !poly.eval(&point).is_zero() {
            let x = combine(&basis, &point, nunk);
            return FormSolution {
                dimension,
                basis,
                nondegenerate_witness: Some(x),
                residual_certificate: residual,
                infeasibility: None,
            };
        }
    }
}

/// Assembles and solves in one step.
pub fn solve_config(sc: &StructureConstants, config: &IsotropyConfig) -> Result<(LinearSystem, FormSolution)> {
    let system = assemble(sc, config)?;
    let sol = solve(&system);
    Ok((system, sol))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualReport {
    pub triples_checked: usize,
    pub max_residual: Rational,
}

/// Re-checks invariance of the form with coefficients `x` for every element
/// of a spanning set of `p` against every pair of basis vectors of `g`.
pub fn verify_invariance(
    sc: &StructureConstants,
    system: &LinearSystem,
    x: &[Rational],
) -> Result<ResidualReport> {
    let config = &system.config;
    let rs = &config.system;
    let q = Quotient::new(config, &system.labels);
    let gram = system.gram(x);
    let form = |u: &[(usize, Rational)], v: &[(usize, Rational)]| -> Rational {
        let mut s = Rational::zero();
        for (a, ca) in u {
            for (b, cb) in v {
                let g = gram[*a][*b];
                if !g.is_zero() {
                    s += *ca * *cb * g;
                }
            }
        }
        s
    };
    let basis = sc.basis();
    let weight = |i: usize| -> Weight {
        if i < rs.rank() {
            vec![Rational::zero(); rs.dim()]
        } else {
            rs.root(i - rs.rank()).clone()
        }
    };
    let weights: Vec<Weight> = (0..basis.len()).map(weight).collect();
    let mut by_weight: HashMap<Weight, Vec<usize>> = HashMap::new();
    for (i, w) in weights.iter().enumerate() {
        by_weight.entry(w.clone()).or_default().push(i);
    }
    let proj: Vec<Vec<(usize, Rational)>> = basis.iter().map(|b| q.project(b)).collect();
    let mut spanning: Vec<(AlgebraElement, Rational, Weight)> = (0..rs.rank())
        .map(|k| {
            (
                AlgebraElement::coroot(rs, k),
                rs.coroot_pairing(&config.delta.functional, k),
                vec![Rational::zero(); rs.dim()],
            )
        })
        .collect();
    for &g in &config.p_roots {
        spanning.push((AlgebraElement::root_vector(rs, g), Rational::zero(), rs.root(g).clone()));
    }
    let mut checked = 0;
    let mut worst = Rational::zero();
    for (p, dp, wp) in &spanning {
        let images: Vec<Vec<(usize, Rational)>> =
            basis.iter().map(|u| q.project(&sc.bracket(p, u).expect("same system"))).collect();
        let target = rootsys::sub(&config.delta.functional, wp);
        for u in 0..basis.len() {
            let Some(vs) = by_weight.get(&rootsys::sub(&target, &weights[u])) else { continue };
            for &v in vs {
                let r = form(&images[u], &proj[v]) + form(&proj[u], &images[v]) - *dp * form(&proj[u], &proj[v]);
                checked += 1;
                if !r.is_zero() {
                    let name = |i: usize| {
                        if i < rs.rank() {
                            format!("h{}", i + 1)
                        } else {
                            rootsys::format_weight(rs.root(i - rs.rank()))
                        }
                    };
                    return Err(Error::ResidualNonzero(format!(
                        "p = {:?}, u = {}, v = {}, residual {}",
                        p.roots.keys().map(|&i| rootsys::format_weight(rs.root(i))).collect::<Vec<_>>(),
                        name(u),
                        name(v),
                        r
                    )));
                }
                if r.abs() > worst {
                    worst = r.abs();
                }
            }
        }
    }
    Ok(ResidualReport { triples_checked: checked, max_residual: worst })
}
