//! Candidate isotropy subalgebras `h` inside their normalizer `p`.
//!
//! `h` is stored as a set of roots together with the subspace `a ∩ h` of the
//! Cartan. Coroots are identified with root directions through the ambient
//! form, so `a ∩ h` is a subspace of the root span and `h_b ∈ a ∩ h` exactly
//! when `b` lies in it.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};
use crate::rootsys::{self, dot, format_weight, pretty_weight, Root, RootSystem, SeriesLabel, Weight};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    Case1,
    Case2,
    Parabolic,
    LowRank,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "case1" => Ok(CaseTag::Case1),
            "case2" => Ok(CaseTag::Case2),
            "parabolic" => Ok(CaseTag::Parabolic),
            "lowrank" => Ok(CaseTag::LowRank),
            _ => Err(Error::Input(format!("unknown case {s:?}"))),
        }
    }
}

/// How far a candidate got before it was ruled out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stage {
    RootCombinatorics,
    IsotropyClosure,
    SolverFeasibility,
    Survivor,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CartanPart {
    Full,
    /// `a ∩ h` is the kernel of this weight.
    Hyperplane { normal: Weight },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distortion {
    pub functional: Weight,
    pub as_root: Option<Root>,
    pub as_sum: Option<(Root, Root)>,
}

impl Distortion {
    pub fn new(rs: &RootSystem, functional: Weight) -> Result<Self> {
        if functional.len() != rs.dim() {
            return Err(Error::DimensionMismatch { expected: rs.dim(), got: functional.len() });
        }
        if rootsys::is_zero(&functional) {
            return Err(Error::Input("distortion must be nonzero".into()));
        }
        let as_root = rs.index_of(&functional).map(|_| functional.clone());
        Ok(Distortion { functional, as_root, as_sum: None })
    }

    pub fn with_sum(mut self, a: Root, b: Root) -> Self {
        self.as_sum = Some((a, b));
        self
    }
}

/// Element of a quotient basis: a root vector or the Cartan direction
/// transverse to `a ∩ h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Root(usize),
    Cartan,
}

/// Machine-checkable reason a candidate was ruled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `g_root` has no possible partner, so it lies in `h`, but the case
    /// requires it outside.
    Unpaired { root: Root, difference: Weight },
    /// `[E_left, E_right]` (or the Cartan action when `right` is absent)
    /// forces `forced` into `h`, which the case forbids.
    Closure { rule: &'static str, left: Root, right: Option<Root>, forced: Root },
    /// The listed directions together span the whole Cartan.
    CartanFill { spanning: Vec<Weight> },
    /// Every solution of the invariance equations is degenerate.
    Degenerate { detail: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Unpaired { root, difference } => write!(
                f,
                "delta - ({}) = {} is not a root, so g_({}) lies in h",
                pretty_weight(root),
                pretty_weight(difference),
                pretty_weight(root)
            ),
            Witness::Closure { rule, left, right: Some(r), forced } => write!(
                f,
                "{rule}: ({}) + ({}) puts g_({}) in h",
                pretty_weight(left),
                pretty_weight(r),
                pretty_weight(forced)
            ),
            Witness::Closure { rule, left, right: None, forced } => {
                write!(f, "{rule}: from g_({}) puts g_({}) in h", pretty_weight(left), pretty_weight(forced))
            }
            Witness::CartanFill { spanning } => {
                let s: Vec<String> = spanning.iter().map(|w| pretty_weight(w)).collect();
                write!(f, "a ∩ h = a, spanned by coroots of {}", s.join(", "))
            }
            Witness::Degenerate { detail } => write!(f, "every invariant form is degenerate: {detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub stage: Stage,
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub struct IsotropyConfig {
    pub case_tag: CaseTag,
    pub system: Arc<RootSystem>,
    pub delta: Distortion,
    pub cartan_part: CartanPart,
    /// Root indices `b` with `g_b ⊆ h`.
    pub h_roots: BTreeSet<usize>,
    /// Root indices of the normalizer part used for the invariance equations.
    pub p_roots: BTreeSet<usize>,
    /// The distinguished root: `alpha` for Case1, the omitted simple root for
    /// the parabolic case.
    pub alpha: Option<usize>,
}

impl IsotropyConfig {
    pub fn h_root_vectors(&self) -> Vec<Root> {
        self.h_roots.iter().map(|&i| self.system.root(i).clone()).collect()
    }

    pub fn p_root_vectors(&self) -> Vec<Root> {
        self.p_roots.iter().map(|&i| self.system.root(i).clone()).collect()
    }

    /// Whether the coroot direction `w` lies in `a ∩ h`.
    pub fn in_cartan_part(&self, w: &[Rational]) -> bool {
        match &self.cartan_part {
            CartanPart::Full => true,
            CartanPart::Hyperplane { normal } => dot(normal, w).is_zero(),
        }
    }

    /// Simple-coroot coordinates of a Cartan element transverse to `a ∩ h`
    /// with normal value 1.
    pub fn cartan_lift(&self) -> Option<Vec<Rational>> {
        let CartanPart::Hyperplane { normal } = &self.cartan_part else { return None };
        let rs = &self.system;
        let k = (0..rs.rank()).find(|&k| !rs.coroot_pairing(normal, k).is_zero())?;
        let mut v = vec![Rational::zero(); rs.rank()];
        v[k] = rs.coroot_pairing(normal, k).recip();
        Some(v)
    }

    /// Value of the normal on a Cartan element; the quotient coordinate of
    /// the Cartan label.
    pub fn cartan_projection(&self, h: &[Rational]) -> Rational {
        match &self.cartan_part {
            CartanPart::Full => Rational::zero(),
            CartanPart::Hyperplane { normal } => {
                h.iter().enumerate().map(|(k, c)| *c * self.system.coroot_pairing(normal, k)).sum()
            }
        }
    }

    /// Weight of a quotient label.
    pub fn label_weight(&self, l: Label) -> Weight {
        match l {
            Label::Root(i) => self.system.root(i).clone(),
            Label::Cartan => vec![Rational::zero(); self.system.dim()],
        }
    }

    pub fn label_name(&self, l: Label) -> String {
        match l {
            Label::Root(i) => format_weight(self.system.root(i)),
            Label::Cartan => "H".to_string(),
        }
    }

    /// Applies the simple reflections in `word` to every root-level datum of
    /// the configuration.
    pub fn weyl_translate(&self, word: &[usize]) -> IsotropyConfig {
        let rs = &self.system;
        let map = |i: usize| word.iter().fold(i, |acc, &k| rs.simple_reflection(k)[acc]);
        let tw = |w: &Weight| rs.apply_word(word, w);
        IsotropyConfig {
            case_tag: self.case_tag,
            system: rs.clone(),
            delta: Distortion {
                functional: tw(&self.delta.functional),
                as_root: self.delta.as_root.as_ref().map(tw),
                as_sum: self.delta.as_sum.as_ref().map(|(a, b)| (tw(a), tw(b))),
            },
            cartan_part: match &self.cartan_part {
                CartanPart::Full => CartanPart::Full,
                CartanPart::Hyperplane { normal } => CartanPart::Hyperplane { normal: tw(normal) },
            },
            h_roots: self.h_roots.iter().map(|&i| map(i)).collect(),
            p_roots: self.p_roots.iter().map(|&i| map(i)).collect(),
            alpha: self.alpha.map(map),
        }
    }
}

/// Partner weight `delta - alpha` when it is a root, or `Some(Cartan)` when
/// it vanishes.
pub fn pairing_partner(rs: &RootSystem, delta: &Distortion, alpha: &[Rational]) -> Option<Label> {
    let diff = rootsys::sub(&delta.functional, alpha);
    if rootsys::is_zero(&diff) {
        return Some(Label::Cartan);
    }
    rs.index_of(&diff).map(Label::Root)
}

/// Basis of a subspace of the root span, kept in row echelon form.
#[derive(Debug, Clone)]
struct Span {
    rows: Vec<Weight>,
    gens: Vec<Weight>,
}

impl Span {
    fn new() -> Self {
        Span { rows: Vec::new(), gens: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn contains(&self, w: &[Rational]) -> bool {
        let mut m = self.rows.clone();
        m.push(w.to_vec());
        linalg::rank(&m) == self.rows.len()
    }

    fn insert(&mut self, w: &[Rational]) -> bool {
        if self.contains(w) {
            return false;
        }
        self.rows.push(w.to_vec());
        self.gens.push(w.to_vec());
        true
    }

    fn orthogonal(&self, w: &[Rational]) -> bool {
        self.rows.iter().all(|r| dot(r, w).is_zero())
    }
}

/// Basis of the orthogonal complement of `vectors` inside the root span.
fn complement(rs: &RootSystem, vectors: &[Weight]) -> Vec<Weight> {
    let m: linalg::Matrix = vectors
        .iter()
        .map(|v| rs.simples().iter().map(|a| dot(a, v)).collect())
        .collect();
    let ns = if m.is_empty() {
        linalg::identity(rs.rank())
    } else {
        linalg::nullspace(&m, rs.rank())
    };
    ns.into_iter()
        .map(|x| {
            rs.simples()
                .iter()
                .zip(&x)
                .fold(vec![Rational::zero(); rs.dim()], |acc, (a, c)| rootsys::add(&acc, &rootsys::scale(*c, a)))
        })
        .collect()
}

/// Scales a nonzero weight to a primitive integral vector whose first
/// nonzero coordinate is positive.
fn primitive(w: &[Rational]) -> Weight {
    let lcm = w.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let ints: Vec<i64> = w.iter().map(|x| (*x * Rational::from_integer(lcm)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| num_integer::gcd(acc, *x));
    let first = ints.iter().find(|x| **x != 0).copied().unwrap_or(1);
    let s = if first < 0 { -g } else { g };
    ints.iter().map(|x| Rational::from_integer(x / s)).collect()
}

fn roots_in_levi(rs: &RootSystem, omitted: usize) -> impl Fn(usize) -> bool + '_ {
    move |i| rs.is_positive(i) || rs.coeffs(i)[omitted] == 0
}

struct Closure<'a> {
    rs: &'a RootSystem,
    delta: Weight,
    in_h: Vec<bool>,
    must_out: Vec<bool>,
    span: Span,
    span_fixed: bool,
}

impl Closure<'_> {
    fn in_p(&self, i: usize) -> bool {
        self.in_h[i] || self.rs.is_positive(i)
    }

    fn add(&mut self, k: usize, witness: impl FnOnce() -> Witness) -> std::result::Result<bool, Obstruction> {
        if self.in_h[k] {
            return Ok(false);
        }
        if self.must_out[k] {
            return Err(Obstruction { stage: Stage::IsotropyClosure, witness: witness() });
        }
        self.in_h[k] = true;
        Ok(true)
    }

    fn add_cartan(&mut self, w: &[Rational], trigger: impl FnOnce() -> Witness) -> std::result::Result<bool, Obstruction> {
        if self.span.contains(w) {
            return Ok(false);
        }
        if self.span_fixed {
            return Err(Obstruction { stage: Stage::IsotropyClosure, witness: trigger() });
        }
        self.span.insert(w);
        if self.span.dim() == self.rs.rank() {
            return Err(Obstruction {
                stage: Stage::RootCombinatorics,
                witness: Witness::CartanFill { spanning: self.span.gens.clone() },
            });
        }
        Ok(true)
    }

    fn run(&mut self) -> std::result::Result<(), Obstruction> {
        let rs = self.rs;
        let n = rs.num_roots();
        let full = self.span.dim() == rs.rank();
        loop {
            let mut changed = false;
            for b in 0..n {
                if !self.in_h[b] {
                    continue;
                }
                let diff = rootsys::sub(&self.delta, rs.root(b));
                if rootsys::is_zero(&diff) && !full {
                    let fill = Witness::CartanFill { spanning: vec![] };
                    return Err(Obstruction { stage: Stage::IsotropyClosure, witness: fill });
                }
                if let Some(k) = rs.index_of(&diff) {
                    let (l, f) = (rs.root(b).clone(), rs.root(k).clone());
                    changed |= self.add(k, || Witness::Closure {
                        rule: "partner of a root in h",
                        left: l,
                        right: None,
                        forced: f,
                    })?;
                }
                for g in 0..n {
                    if !self.in_p(g) || !self.in_h[b] {
                        continue;
                    }
                    if g == rs.neg_index(b) {
                        let (l, r) = (rs.root(g).clone(), rs.root(b).clone());
                        changed |= self.add_cartan(rs.root(b), || Witness::Closure {
                            rule: "coroot leaves a ∩ h",
                            left: l,
                            right: Some(r.clone()),
                            forced: r,
                        })?;
                    } else if let Some(k) = rs.sum_index(g, b) {
                        let (l, r, f) = (rs.root(g).clone(), rs.root(b).clone(), rs.root(k).clone());
                        changed |= self.add(k, || Witness::Closure {
                            rule: "ideal under p",
                            left: l,
                            right: Some(r),
                            forced: f,
                        })?;
                    }
                }
            }
            for g in 0..n {
                if self.in_p(g) && !self.in_h[g] && !self.span.orthogonal(rs.root(g)) {
                    let l = rs.root(g).clone();
                    changed |= self.add(g, || Witness::Closure {
                        rule: "Cartan action of a ∩ h",
                        left: l.clone(),
                        right: None,
                        forced: l,
                    })?;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }
}

/// Derives the maximal isotropy candidate forced by the pairing rule, then
/// closes it under the subalgebra, ideal and Cartan conditions.
///
/// For `Case1` the root `alpha` is read from `delta.as_sum`; when absent it is
/// inferred and must be unique. For the parabolic case `delta.as_sum` must be
/// `(minimal root, -alpha)` with `alpha` simple; for `LowRank` the Borel is
/// taken as `h`.
pub fn derive_isotropy(rs: &Arc<RootSystem>, delta: &Distortion, case_tag: CaseTag) -> Result<IsotropyConfig> {
    derive_detailed(rs, delta, case_tag)?.map_err(|o| Error::Inconsistent(o.witness.to_string()))
}

/// Like [`derive_isotropy`] but reports eliminations with their stage and
/// witness. The outer error is for malformed input.
pub fn derive_detailed(
    rs: &Arc<RootSystem>,
    delta: &Distortion,
    case_tag: CaseTag,
) -> Result<std::result::Result<IsotropyConfig, Obstruction>> {
    let n = rs.num_roots();
    let d = delta.functional.clone();
    let mut in_h = vec![false; n];
    let mut must_out = vec![false; n];
    let mut span = Span::new();
    let mut span_fixed = true;
    let mut alpha = None;
    match case_tag {
        CaseTag::Case1 => {
            let di = rs
                .index_of(&d)
                .ok_or_else(|| Error::Input(format!("Case1 distortion {} is not a root", format_weight(&d))))?;
            let a = match &delta.as_sum {
                Some((a, _)) => rs.index_of(a).ok_or_else(|| Error::NotARoot(format_weight(a)))?,
                None => {
                    let cands: Vec<usize> = (0..rs.num_positive())
                        .filter(|&a| dot(rs.root(a), &d).is_zero())
                        .filter(|&a| rs.index_of(&rootsys::sub(&d, rs.root(a))).is_some())
                        .collect();
                    match cands.as_slice() {
                        [a] => *a,
                        [] => return Err(Error::Input("no admissible alpha for this distortion".into())),
                        _ => return Err(Error::Input("alpha is ambiguous; give it explicitly".into())),
                    }
                }
            };
            let dma = rs
                .index_of(&rootsys::sub(&d, rs.root(a)))
                .ok_or_else(|| Error::Input("delta - alpha is not a root".into()))?;
            if !rs.is_positive(a) || !dot(rs.root(a), &d).is_zero() {
                return Err(Error::Input("alpha must be positive and orthogonal to delta".into()));
            }
            for k in [di, a, dma] {
                must_out[k] = true;
            }
            for w in complement(rs, &[rs.root(a).clone()]) {
                span.insert(&w);
            }
            alpha = Some(a);
        }
        CaseTag::Case2 => {
            let di = rs
                .index_of(&d)
                .ok_or_else(|| Error::Input(format!("Case2 distortion {} is not a root", format_weight(&d))))?;
            if rs.is_positive(di) {
                return Err(Error::Input("Case2 distortion must be a negative root".into()));
            }
            must_out[di] = true;
            for b in in_h.iter_mut().take(rs.num_positive()) {
                *b = true;
            }
            span.insert(&d);
            span_fixed = false;
        }
        CaseTag::Parabolic => {
            let a = match &delta.as_sum {
                Some((_, neg_a)) => rs
                    .index_of(&rootsys::neg(neg_a))
                    .ok_or_else(|| Error::NotARoot(format_weight(neg_a)))?,
                None => return Err(Error::Input("parabolic distortion needs its simple root".into())),
            };
            let k = (0..rs.rank())
                .find(|&k| rs.simple_index(k) == a)
                .ok_or_else(|| Error::Input("parabolic alpha must be simple".into()))?;
            let levi = roots_in_levi(rs, k);
            for i in 0..n {
                in_h[i] = levi(i);
                must_out[i] = !levi(i);
            }
            for s in rs.simples() {
                span.insert(s);
            }
            alpha = Some(a);
        }
        CaseTag::LowRank => {
            for i in 0..n {
                in_h[i] = rs.is_positive(i);
                must_out[i] = !rs.is_positive(i);
            }
            for s in rs.simples() {
                span.insert(s);
            }
        }
    }
    let full = span.dim() == rs.rank();
    let mut cl = Closure { rs, delta: d.clone(), in_h, must_out, span, span_fixed };
    for i in 0..n {
        let diff = rootsys::sub(&d, rs.root(i));
        let unpaired = if rootsys::is_zero(&diff) { full } else { rs.index_of(&diff).is_none() };
        if unpaired {
            let root = rs.root(i).clone();
            if let Err(o) = cl.add(i, || Witness::Unpaired { root, difference: diff }) {
                return Ok(Err(Obstruction { stage: Stage::RootCombinatorics, witness: o.witness }));
            }
        }
    }
    if let Err(o) = cl.run() {
        return Ok(Err(o));
    }
    let cartan_part = if cl.span.dim() == rs.rank() {
        CartanPart::Full
    } else {
        let normals = complement(rs, &cl.span.rows);
        if normals.len() != 1 {
            return Err(Error::Underdetermined(format!(
                "a ∩ h has codimension {} after closure",
                normals.len()
            )));
        }
        let normal = match (case_tag, alpha) {
            (CaseTag::Case1, Some(a)) => rs.root(a).clone(),
            _ => primitive(&normals[0]),
        };
        CartanPart::Hyperplane { normal }
    };
    let h_roots: BTreeSet<usize> = (0..n).filter(|&i| cl.in_h[i]).collect();
    let p_roots: BTreeSet<usize> = (0..n).filter(|&i| cl.in_p(i)).collect();
    Ok(Ok(IsotropyConfig {
        case_tag,
        system: rs.clone(),
        delta: delta.clone(),
        cartan_part,
        h_roots,
        p_roots,
        alpha,
    }))
}

/// Distortion for the parabolic candidate omitting simple root `k`.
pub fn parabolic_distortion(rs: &RootSystem, k: usize) -> Result<Distortion> {
    let a = rs.simples()[k].clone();
    let m = rs.minimal_root()?;
    Distortion::new(rs, rootsys::sub(&m, &a)).map(|d| d.with_sum(m, rootsys::neg(&a)))
}

/// Distortion `2/dim (sum of weights of g/b)` for the Borel of a product of
/// rank-one factors: the trace of the Cartan action on the quotient.
pub fn borel_distortion(rs: &RootSystem) -> Result<Distortion> {
    let npos = rs.num_positive();
    let mut sum = vec![Rational::zero(); rs.dim()];
    for i in 0..npos {
        sum = rootsys::add(&sum, rs.root(rs.neg_index(i)));
    }
    Distortion::new(rs, rootsys::scale(Rational::new(2, npos as i64), &sum))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks the structural axioms of a configuration and reports a witness
/// for each failure.
pub fn validate(config: &IsotropyConfig) -> ValidationReport {
    let rs = &config.system;
    let n = rs.num_roots();
    let h = &config.h_roots;
    let p = &config.p_roots;
    let name = |i: usize| pretty_weight(rs.root(i));
    let mut checks = Vec::new();

    // [x, h] ⊆ h for root vectors x in `acting`
    let bracket_closure = |acting: &dyn Fn(usize) -> bool| -> Option<String> {
        for &b in h {
            for g in (0..n).filter(|&g| acting(g)) {
                if g == rs.neg_index(b) {
                    if !config.in_cartan_part(rs.root(b)) {
                        return Some(format!("[E_{}, E_{}] is a coroot outside a ∩ h", name(g), name(b)));
                    }
                } else if let Some(k) = rs.sum_index(g, b) {
                    if !h.contains(&k) {
                        return Some(format!("({}) + ({}) = {} not in h", name(g), name(b), name(k)));
                    }
                }
            }
        }
        for g in (0..n).filter(|&g| acting(g) && !h.contains(&g)) {
            let moved = match &config.cartan_part {
                CartanPart::Full => true,
                CartanPart::Hyperplane { normal } => !is_parallel(rs.root(g), normal),
            };
            if moved {
                return Some(format!("a ∩ h moves E_{} which is not in h", name(g)));
            }
        }
        None
    };
    let add = |checks: &mut Vec<Check>, name: &'static str, w: Option<String>| {
        checks.push(Check { name, passed: w.is_none(), witness: w });
    };

    add(&mut checks, "distortion nonzero", rootsys::is_zero(&config.delta.functional).then(|| "delta = 0".into()));
    add(&mut checks, "normalized by a + g+", bracket_closure(&|g| rs.is_positive(g)));
    let sub_ok = {
        let mut w = None;
        'outer: for &a in h {
            for &b in h {
                if b == rs.neg_index(a) {
                    if !config.in_cartan_part(rs.root(a)) {
                        w = Some(format!("coroot of {} not in a ∩ h", name(a)));
                        break 'outer;
                    }
                } else if let Some(k) = rs.sum_index(a, b) {
                    if !h.contains(&k) {
                        w = Some(format!("({}) + ({}) not in h", name(a), name(b)));
                        break 'outer;
                    }
                }
            }
        }
        w
    };
    add(&mut checks, "subalgebra", sub_ok);
    add(&mut checks, "contained in p", h.iter().find(|i| !p.contains(i)).map(|&i| format!("{} in h but not p", name(i))));
    add(&mut checks, "ideal of p", bracket_closure(&|g| p.contains(&g)));
    let proper = !(h.len() == n && config.cartan_part == CartanPart::Full);
    add(&mut checks, "proper", (!proper).then(|| "h = g".into()));
    let pairing = {
        let mut w = None;
        for i in (0..n).filter(|i| !h.contains(i)) {
            match pairing_partner(rs, &config.delta, rs.root(i)) {
                Some(Label::Root(k)) if !h.contains(&k) => {}
                Some(Label::Cartan) if config.cartan_part != CartanPart::Full => {}
                _ => {
                    w = Some(format!("g_({}) has no partner outside h", name(i)));
                    break;
                }
            }
        }
        if w.is_none() {
            if let CartanPart::Hyperplane { .. } = config.cartan_part {
                let ok = rs.index_of(&config.delta.functional).is_some_and(|d| !h.contains(&d));
                if !ok {
                    w = Some("the Cartan direction has no partner".into());
                }
            }
        }
        w
    };
    add(&mut checks, "pairing", pairing);
    let positives_in_h = (0..rs.num_positive()).all(|i| h.contains(&i));
    let case_check = match config.case_tag {
        CaseTag::Case1 => match (&config.cartan_part, &config.delta.as_root) {
            (CartanPart::Hyperplane { normal }, Some(d)) if dot(normal, d).is_zero() => None,
            _ => Some("Case1 needs delta a root and a Cartan hyperplane orthogonal to it".to_string()),
        },
        CaseTag::Case2 => {
            let minimal = rs.minimal_root().ok();
            if !matches!(config.cartan_part, CartanPart::Hyperplane { .. }) {
                Some("Case2 needs a Cartan hyperplane".to_string())
            } else if minimal.as_ref() != Some(&config.delta.functional) {
                Some("Case2 distortion is not the minimal root".to_string())
            } else if !positives_in_h {
                Some("Case2 needs g+ inside h".to_string())
            } else {
                None
            }
        }
        CaseTag::Parabolic => {
            let missing: Vec<usize> = (0..rs.rank())
                .filter(|&k| !h.contains(&rs.neg_index(rs.simple_index(k))))
                .collect();
            if config.cartan_part != CartanPart::Full || !positives_in_h {
                Some("parabolic h must contain the Borel".to_string())
            } else if missing.len() != 1 {
                Some(format!("{} simple roots have negatives outside h", missing.len()))
            } else {
                None
            }
        }
        CaseTag::LowRank => (config.cartan_part != CartanPart::Full || !positives_in_h)
            .then(|| "h must contain the Borel".to_string()),
    };
    add(&mut checks, "case structure", case_check);
    ValidationReport { checks }
}

fn is_parallel(v: &[Rational], w: &[Rational]) -> bool {
    let m = vec![v.to_vec(), w.to_vec()];
    linalg::rank(&m) < 2
}

/// Basis of `g/h` as weight labels: roots outside `h` by increasing height
/// then lexicographically, then the Cartan label when `a ⊄ h`.
pub fn quotient_basis(config: &IsotropyConfig) -> Result<Vec<Label>> {
    let report = validate(config);
    if !report.passed() {
        let f = report.failures();
        return Err(Error::NotValidated(format!("{}: {}", f[0].name, f[0].witness.clone().unwrap_or_default())));
    }
    Ok(quotient_labels(config))
}

pub(crate) fn quotient_labels(config: &IsotropyConfig) -> Vec<Label> {
    let rs = &config.system;
    let mut roots: Vec<usize> = (0..rs.num_roots()).filter(|i| !config.h_roots.contains(i)).collect();
    roots.sort_by(|&a, &b| (rs.height(a), rs.root(a)).cmp(&(rs.height(b), rs.root(b))));
    let mut out: Vec<Label> = roots.into_iter().map(Label::Root).collect();
    if matches!(config.cartan_part, CartanPart::Hyperplane { .. }) {
        out.push(Label::Cartan);
    }
    out
}

/// JSON description of a configuration to derive:
/// `{"label":"C","rank":3,"case":"Case1","delta":["-1","-1","0"],"alpha":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub label: String,
    pub rank: usize,
    pub case: String,
    #[serde(default)]
    pub delta: Option<Vec<String>>,
    #[serde(default)]
    pub alpha: Option<Vec<String>>,
}

impl ConfigSpec {
    fn parse_weight(rs: &RootSystem, v: &[String]) -> Result<Weight> {
        let w: Weight = v
            .iter()
            .map(|s| rational::parse(s).map_err(|e| Error::Input(e.to_string())))
            .collect::<Result<_>>()?;
        if w.len() != rs.dim() {
            return Err(Error::DimensionMismatch { expected: rs.dim(), got: w.len() });
        }
        Ok(w)
    }

    /// Builds the distortion described by the spec. Parabolic specs need
    /// `alpha` (a simple root); `delta` defaults to the minimal root minus it.
    pub fn distortion(&self) -> Result<(Arc<RootSystem>, CaseTag, Distortion)> {
        let label: SeriesLabel = self.label.parse()?;
        let rs = RootSystem::build(label, self.rank)?;
        let case: CaseTag = self.case.parse()?;
        let delta = self.delta.as_ref().map(|d| Self::parse_weight(&rs, d)).transpose()?;
        let alpha = self.alpha.as_ref().map(|a| Self::parse_weight(&rs, a)).transpose()?;
        let dist = match case {
            CaseTag::Case1 | CaseTag::Case2 => {
                let d = delta.ok_or_else(|| Error::Input("delta is required".into()))?;
                let dist = Distortion::new(&rs, d.clone())?;
                match alpha {
                    Some(a) => {
                        let rest = rootsys::sub(&d, &a);
                        dist.with_sum(a, rest)
                    }
                    None => dist,
                }
            }
            CaseTag::Parabolic => {
                let a = alpha.ok_or_else(|| Error::Input("alpha is required".into()))?;
                let k = (0..rs.rank())
                    .find(|&k| rs.simples()[k] == a)
                    .ok_or_else(|| Error::Input("alpha must be a simple root".into()))?;
                let dist = parabolic_distortion(&rs, k)?;
                if let Some(d) = delta {
                    if d != dist.functional {
                        return Err(Error::Input("delta must be the minimal root minus alpha".into()));
                    }
                }
                dist
            }
            CaseTag::LowRank => match delta {
                Some(d) => Distortion::new(&rs, d)?,
                None => borel_distortion(&rs)?,
            },
        };
        Ok((rs, case, dist))
    }
}

/// Scalar `c` with `w = c * v`, if any.
pub fn ratio(v: &[Rational], w: &[Rational]) -> Option<Rational> {
    let k = v.iter().position(|x| !x.is_zero())?;
    let c = w[k] / v[k];
    (rootsys::scale(c, v) == w).then_some(c)
}
