//! Independent brute-force oracles checked against the library.

mod common;

use common::*;
use lie_conformal::chevalley::{string_below, StructureConstants};
use lie_conformal::isotropy::{derive_detailed, pairing_partner, CaseTag, Distortion, Label};
use lie_conformal::rational::int;
use lie_conformal::rootsys::{RootSystem, SeriesLabel, Weight};
use lie_conformal::Rational;
use std::collections::{BTreeMap, BTreeSet, HashMap};

fn signs_of(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0u32..1 << n).map(move |m| (0..n).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect())
}

fn e(dim: usize, i: usize, c: i64) -> Weight {
    let mut v = vec![int(0); dim];
    v[i] = int(c);
    v
}

/// `±e_i ± e_j` for `i < j`.
fn pm_pairs(dim: usize, upto: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    for i in 0..upto {
        for j in i + 1..upto {
            for s in signs_of(2) {
                out.push(add(&e(dim, i, s[0]), &e(dim, j, s[1])));
            }
        }
    }
    out
}

fn e8_roots() -> Vec<Weight> {
    let mut out = pm_pairs(8, 8);
    for s in signs_of(8) {
        if s.iter().filter(|&&x| x < 0).count() % 2 == 0 {
            out.push(half(&s));
        }
    }
    out
}

/// Root sets written down from the coordinate descriptions of each type.
fn brute_roots(label: SeriesLabel, n: usize) -> BTreeSet<Weight> {
    let mut out: Vec<Weight> = Vec::new();
    match label {
        SeriesLabel::A => {
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        out.push(sub(&e(n + 1, i, 1), &e(n + 1, j, 1)));
                    }
                }
            }
        }
        SeriesLabel::B | SeriesLabel::C | SeriesLabel::D => {
            out = pm_pairs(n, n);
            let c = match label {
                SeriesLabel::B => 1,
                SeriesLabel::C => 2,
                _ => 0,
            };
            if c > 0 {
                for i in 0..n {
                    out.push(e(n, i, c));
                    out.push(e(n, i, -c));
                }
            }
        }
        SeriesLabel::G2 => {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        out.push(sub(&e(3, i, 1), &e(3, j, 1)));
                    }
                }
                let v: Weight = (0..3).map(|k| int(if k == i { 2 } else { -1 })).collect();
                out.push(neg(&v));
                out.push(v);
            }
        }
        SeriesLabel::F4 => {
            out = pm_pairs(4, 4);
            for i in 0..4 {
                out.push(e(4, i, 1));
                out.push(e(4, i, -1));
            }
            out.extend(signs_of(4).map(|s| half(&s)));
        }
        SeriesLabel::E8 => out = e8_roots(),
        SeriesLabel::E7 => {
            let normal = w(&[0, 0, 0, 0, 0, 0, 1, 1]);
            out = e8_roots().into_iter().filter(|r| dot(r, &normal) == int(0)).collect();
        }
        SeriesLabel::E6 => {
            let n1 = w(&[0, 0, 0, 0, 0, 0, 1, 1]);
            let n2 = w(&[0, 0, 0, 0, 0, -1, 1, 0]);
            out = e8_roots()
                .into_iter()
                .filter(|r| dot(r, &n1) == int(0) && dot(r, &n2) == int(0))
                .collect();
        }
        SeriesLabel::A1xA1 => {
            for v in [w(&[1, -1, 0, 0]), w(&[0, 0, 1, -1])] {
                out.push(neg(&v));
                out.push(v);
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn root_sets_match_coordinate_descriptions() {
    for rs in all_systems(8) {
        let lib: BTreeSet<Weight> = rs.roots().iter().cloned().collect();
        let brute = brute_roots(rs.label(), rs.rank());
        assert_eq!(lib, brute, "{}{}", rs.label(), rs.rank());
        assert_eq!(rs.num_roots(), rs.label().root_count(rs.rank()));
    }
}

#[test]
fn brute_force_counts() {
    assert_eq!(brute_roots(SeriesLabel::B, 3).len(), 18);
    assert_eq!(brute_roots(SeriesLabel::G2, 2).len(), 12);
    assert_eq!(brute_roots(SeriesLabel::E6, 6).len(), 72);
    assert_eq!(brute_roots(SeriesLabel::E7, 7).len(), 126);
    assert_eq!(brute_roots(SeriesLabel::E8, 8).len(), 240);
    assert_eq!(brute_roots(SeriesLabel::F4, 4).len(), 48);
}

/// Positives are simples plus roots reachable from a smaller positive by
/// adding a simple root, and they split the roots in half.
#[test]
fn positive_systems_descend_to_simples() {
    for rs in all_systems(8) {
        let pos: BTreeSet<Weight> = rs.positives().iter().cloned().collect();
        assert_eq!(pos.len() * 2, rs.num_roots());
        for p in &pos {
            assert!(!pos.contains(&neg(p)));
            if rs.simples().contains(p) {
                continue;
            }
            assert!(
                rs.simples().iter().any(|s| pos.contains(&sub(p, s))),
                "{}{}: {:?} has no simple descent",
                rs.label(),
                rs.rank(),
                p
            );
        }
    }
}

#[test]
fn membership_by_enumeration() {
    let a3 = sys(SeriesLabel::A, 3);
    let v = w(&[1, 1, -1, -1]);
    assert!(!brute_roots(SeriesLabel::A, 3).contains(&v));
    assert!(!a3.is_root(&v).unwrap());
    let b3 = sys(SeriesLabel::B, 3);
    assert!(b3.is_root(&w(&[1, 1, 0])).unwrap());
    assert!(!b3.is_root(&w(&[0, 0, 0])).unwrap());
}

#[test]
fn reflection_by_formula() {
    let b2 = sys(SeriesLabel::B, 2);
    let (m, v) = (w(&[0, 1]), w(&[1, -1]));
    assert_eq!(reflect(&m, &v), w(&[1, 1]));
    assert_eq!(b2.weyl_reflect(&m, &v).unwrap(), reflect(&m, &v));
}

/// Highest roots located as the unique long dominant roots.
#[test]
fn highest_roots() {
    for rs in all_systems(8) {
        if rs.label() == SeriesLabel::A1xA1 {
            continue;
        }
        let roots = brute_roots(rs.label(), rs.rank());
        let long = roots.iter().map(|r| dot(r, r)).max().unwrap();
        let tops: Vec<&Weight> = roots
            .iter()
            .filter(|r| dot(r, r) == long)
            .filter(|r| rs.simples().iter().all(|s| dot(r, s) >= int(0)))
            .collect();
        assert_eq!(tops.len(), 1, "{}{}", rs.label(), rs.rank());
        assert_eq!(&neg(tops[0]), &rs.minimal_root().unwrap());
    }
    assert_eq!(sys(SeriesLabel::E8, 8).minimal_root().unwrap(), w(&[0, 0, 0, 0, 0, 0, -1, -1]));
    assert_eq!(sys(SeriesLabel::E6, 6).minimal_root().unwrap(), neg(&half(&[1, 1, 1, 1, 1, -1, -1, 1])));
}

/// Structure constants reconstructed from nothing but the Jacobi identity,
/// the string magnitudes and the extraspecial normalization.
struct SignOracle<'a> {
    rs: &'a RootSystem,
    var: HashMap<(usize, usize), (usize, i64)>,
    mag: HashMap<(usize, usize), i64>,
    nvars: usize,
}

#[derive(Clone, Default)]
struct Elem {
    roots: BTreeMap<usize, Rational>,
    cartan: Vec<Rational>,
}

impl<'a> SignOracle<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let n = rs.num_roots();
        let mut var = HashMap::new();
        let mut mag = HashMap::new();
        let mut nvars = 0;
        for a in 0..n {
            for b in a + 1..n {
                if rs.index_of(&add(rs.root(a), rs.root(b))).is_some() {
                    var.insert((a, b), (nvars, 1));
                    var.insert((b, a), (nvars, -1));
                    nvars += 1;
                    // p: how far b can be lowered along a
                    let mut p = 0;
                    let mut cur = rs.root(b).clone();
                    loop {
                        cur = sub(&cur, rs.root(a));
                        if rs.index_of(&cur).is_none() {
                            break;
                        }
                        p += 1;
                    }
                    mag.insert((a, b), p + 1);
                    mag.insert((b, a), p + 1);
                }
            }
        }
        SignOracle { rs, var, mag, nvars }
    }

    fn n(&self, a: usize, b: usize, signs: &[i64], used: &mut Vec<usize>) -> i64 {
        let (v, o) = self.var[&(a, b)];
        used.push(v);
        signs[v] * o * self.mag[&(a, b)]
    }

    fn ad(&self, a: usize, x: &Elem, signs: &[i64], used: &mut Vec<usize>) -> Elem {
        let rs = self.rs;
        let ra = rs.root(a);
        let mut out = Elem { roots: BTreeMap::new(), cartan: vec![int(0); rs.dim()] };
        let put = |k: usize, c: Rational, out: &mut Elem| {
            *out.roots.entry(k).or_insert(int(0)) += c;
        };
        for (&b, &c) in &x.roots {
            let s = add(ra, rs.root(b));
            if s.iter().all(|t| *t == int(0)) {
                let coroot: Weight = ra.iter().map(|t| int(2) * *t / dot(ra, ra)).collect();
                out.cartan = add(&out.cartan, &coroot.iter().map(|t| *t * c).collect::<Vec<_>>());
            } else if let Some(k) = rs.index_of(&s) {
                put(k, c * int(self.n(a, b, signs, used)), &mut out);
            }
        }
        if !x.cartan.is_empty() {
            let v = dot(ra, &x.cartan);
            if v != int(0) {
                put(a, -v, &mut out);
            }
        }
        out.roots.retain(|_, c| *c != int(0));
        out
    }

    fn single(&self, a: usize) -> Elem {
        Elem { roots: BTreeMap::from([(a, int(1))]), cartan: vec![] }
    }

    fn jacobi(&self, x: usize, y: usize, z: usize, signs: &[i64], used: &mut Vec<usize>) -> bool {
        let mut total = Elem { roots: BTreeMap::new(), cartan: vec![int(0); self.rs.dim()] };
        for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
            let inner = self.ad(q, &self.single(r), signs, used);
            let t = self.ad(p, &inner, signs, used);
            for (k, c) in t.roots {
                *total.roots.entry(k).or_insert(int(0)) += c;
            }
            total.cartan = add(&total.cartan, &t.cartan);
        }
        total.roots.values().all(|c| *c == int(0)) && total.cartan.iter().all(|c| *c == int(0))
    }

    /// All sign tables satisfying every Jacobi identity among root vectors,
    /// with the extraspecial constants positive. Stops after `limit`.
    fn solutions(&self, limit: usize) -> Vec<Vec<i64>> {
        let rs = self.rs;
        let n = rs.num_roots();
        let mut fixed = vec![0i64; self.nvars];
        for xi in 0..rs.num_positive() {
            let pair = (0..xi).find_map(|r| (r + 1..xi).find(|&s| rs.sum_index(r, s) == Some(xi)).map(|s| (r, s)));
            if let Some((r, s)) = pair {
                let (v, o) = self.var[&(r, s)];
                fixed[v] = o;
            }
        }
        let mut by_last: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); self.nvars];
        let ones = vec![1i64; self.nvars];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut used = Vec::new();
                    self.jacobi(x, y, z, &ones, &mut used);
                    if let Some(&m) = used.iter().max() {
                        by_last[m].push((x, y, z));
                    }
                }
            }
        }
        let mut out = Vec::new();
        let mut signs = vec![0i64; self.nvars];
        self.search(0, &fixed, &by_last, &mut signs, &mut out, limit);
        out
    }

    fn search(
        &self,
        k: usize,
        fixed: &[i64],
        by_last: &[Vec<(usize, usize, usize)>],
        signs: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == self.nvars {
            out.push(signs.clone());
            return;
        }
        let choices: &[i64] = if fixed[k] != 0 { &[fixed[k]][..] } else { &[1, -1] };
        for &s in choices {
            signs[k] = s;
            let ok = by_last[k].iter().all(|&(x, y, z)| self.jacobi(x, y, z, signs, &mut Vec::new()));
            if ok {
                self.search(k + 1, fixed, by_last, signs, out, limit);
            }
        }
        signs[k] = 0;
    }
}

#[test]
fn jacobi_sign_oracle_reproduces_constants() {
    for (l, r) in [
        (SeriesLabel::A, 2),
        (SeriesLabel::B, 2),
        (SeriesLabel::C, 2),
        (SeriesLabel::G2, 2),
        (SeriesLabel::A, 3),
        (SeriesLabel::B, 3),
    ] {
        let rs = sys(l, r);
        let sc = StructureConstants::new(rs.clone());
        let oracle = SignOracle::new(&rs);
        let sols = oracle.solutions(2);
        assert_eq!(sols.len(), 1, "{l}{r}: sign solutions");
        for &(a, b) in oracle.var.keys() {
            let got = oracle.n(a, b, &sols[0], &mut Vec::new());
            assert_eq!(sc.n(a, b), got, "{l}{r}: N({:?}, {:?})", rs.root(a), rs.root(b));
        }
        let entries = sc.entries().count();
        assert_eq!(entries, oracle.var.len(), "{l}{r}: table support");
    }
}

#[test]
fn a2_simple_constant_is_plus_one() {
    let rs = sys(SeriesLabel::A, 2);
    let sc = StructureConstants::new(rs.clone());
    let a = rs.index_of(&w(&[1, -1, 0])).unwrap();
    let b = rs.index_of(&w(&[0, 1, -1])).unwrap();
    assert_eq!(sc.n(a, b), 1);
}

#[test]
fn b3_bracket_magnitude_from_string() {
    let rs = sys(SeriesLabel::B, 3);
    let sc = StructureConstants::new(rs.clone());
    let a = rs.index_of(&w(&[1, -1, 0])).unwrap();
    let b = rs.index_of(&w(&[-1, 0, 0])).unwrap();
    // -e1 - (e1 - e2) is not a root, so the string below has length zero
    assert_eq!(string_below(&rs, a, b), 0);
    assert_eq!(sc.n(a, b).abs(), 1);
}

#[test]
fn pairing_partners() {
    let c3 = sys(SeriesLabel::C, 3);
    let d = Distortion::new(&c3, w(&[-1, -1, 0])).unwrap();
    let p = pairing_partner(&c3, &d, &w(&[1, -1, 0]));
    assert_eq!(p, Some(Label::Root(c3.index_of(&w(&[-2, 0, 0])).unwrap())));
    assert_eq!(pairing_partner(&c3, &d, &w(&[-1, -1, 0])), Some(Label::Cartan));
    let a2 = sys(SeriesLabel::A, 2);
    let d = Distortion::new(&a2, w(&[-1, 0, 1])).unwrap();
    assert!(!brute_roots(SeriesLabel::A, 2).contains(&w(&[-1, -1, 2])));
    assert_eq!(pairing_partner(&a2, &d, &w(&[0, 1, -1])), None);
}

/// Root parts `S` of a Case1 isotropy algebra, by exhaustive search over
/// subsets: `S` avoids `delta`, `alpha`, `delta - alpha`, holds every root
/// without a partner, holds the partners of its members, is stable under
/// brackets with `S` and the positive roots, only meets `-b` when the coroot
/// of `b` lies in `alpha`-perp, and holds every positive root the Cartan part
/// acts on nontrivially.
fn case1_subsets(rs: &RootSystem, delta: &Weight, alpha: &Weight) -> Vec<BTreeSet<usize>> {
    let n = rs.num_roots();
    let d = rs.index_of(delta).unwrap();
    let a = rs.index_of(alpha).unwrap();
    let dma = rs.index_of(&sub(delta, alpha)).unwrap();
    let forced: BTreeSet<usize> = (0..n)
        .filter(|&b| rs.index_of(&sub(delta, rs.root(b))).is_none() && b != d)
        .chain((0..rs.num_positive()).filter(|&g| g != a))
        .collect();
    let free: Vec<usize> = (0..n).filter(|b| !forced.contains(b) && ![d, a, dma].contains(b)).collect();
    if forced.iter().any(|b| [d, a, dma].contains(b)) {
        return vec![];
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << free.len() {
        let s: BTreeSet<usize> =
            forced.iter().copied().chain(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &b)| b)).collect();
        let ok = s.iter().all(|&b| {
            let partner_ok = rs.index_of(&sub(delta, rs.root(b))).is_none_or(|k| s.contains(&k));
            let ideal_ok = (0..n).filter(|g| s.contains(g) || rs.is_positive(*g)).all(|g| {
                if g == rs.neg_index(b) {
                    dot(rs.root(b), alpha) == int(0)
                } else {
                    rs.sum_index(g, b).is_none_or(|k| s.contains(&k))
                }
            });
            partner_ok && ideal_ok
        });
        if ok {
            out.push(s);
        }
    }
    out
}

#[test]
fn case1_closure_matches_exhaustive_search() {
    let cases = [
        (SeriesLabel::B, 3, w(&[-1, 0, 0]), w(&[0, 1, 0])),
        (SeriesLabel::B, 2, w(&[-1, 0]), w(&[0, 1])),
        (SeriesLabel::C, 3, w(&[-1, -1, 0]), w(&[1, -1, 0])),
        (SeriesLabel::C, 3, w(&[0, -1, -1]), w(&[0, 1, -1])),
    ];
    for (l, r, delta, alpha) in cases {
        let rs = sys(l, r);
        let dist = Distortion::new(&rs, delta.clone()).unwrap().with_sum(alpha.clone(), sub(&delta, &alpha));
        let lib = derive_detailed(&rs, &dist, CaseTag::Case1).unwrap();
        let brute = case1_subsets(&rs, &delta, &alpha);
        match lib {
            Err(_) => assert!(brute.is_empty(), "{l}{r}: oracle found {} isotropy sets", brute.len()),
            Ok(cfg) => {
                let least = brute.iter().min_by_key(|s| s.len()).expect("oracle found nothing");
                assert!(brute.iter().all(|s| s.is_superset(least)));
                assert_eq!(&cfg.h_roots, least, "{l}{r}");
            }
        }
    }
}

/// Re-expands `<[p,u],v> + <u,[p,v]> = delta(p) <u,v>` over every basis
/// element `p` of the normalizer and every pair `u, v` of the whole algebra,
/// with the form pulled back from the quotient.
fn invariance_defect(spec: &lie_conformal::isotropy::ConfigSpec) -> (usize, Rational) {
    use lie_conformal::chevalley::AlgebraElement;
    use lie_conformal::invform::solve_config;
    use lie_conformal::isotropy::derive_isotropy;
    let (rs, case, dist) = spec.distortion().unwrap();
    let cfg = derive_isotropy(&rs, &dist, case).unwrap();
    let sc = StructureConstants::new(rs.clone());
    let (sys, sol) = solve_config(&sc, &cfg).unwrap();
    let Some(x) = sol.nondegenerate_witness else { return (0, int(0)) };
    let gram = sys.gram(&x);
    let project = |e: &AlgebraElement| -> Vec<Rational> {
        sys.labels
            .iter()
            .map(|l| match l {
                Label::Root(i) => e.roots.get(i).copied().unwrap_or(int(0)),
                Label::Cartan => cfg.cartan_projection(&e.cartan),
            })
            .collect()
    };
    let form = |u: &AlgebraElement, v: &AlgebraElement| -> Rational {
        let (pu, pv) = (project(u), project(v));
        let mut s = int(0);
        for i in 0..pu.len() {
            for j in 0..pv.len() {
                s += pu[i] * gram[i][j] * pv[j];
            }
        }
        s
    };
    let basis = sc.basis();
    let mut p_basis: Vec<(AlgebraElement, Rational)> = (0..rs.rank())
        .map(|k| (AlgebraElement::coroot(&rs, k), sc.eval_weight(&cfg.delta.functional, &basis[k].cartan)))
        .collect();
    p_basis.extend(cfg.p_roots.iter().map(|&i| (AlgebraElement::root_vector(&rs, i), int(0))));
    let mut worst = int(0);
    let mut checked = 0;
    for (p, dp) in &p_basis {
        let images: Vec<AlgebraElement> = basis.iter().map(|u| sc.bracket(p, u).unwrap()).collect();
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let r = form(&images[a], v) + form(u, &images[b]) - *dp * form(u, v);
                checked += 1;
                if num_traits::Signed::abs(&r) > worst {
                    worst = num_traits::Signed::abs(&r);
                }
            }
        }
    }
    (checked, worst)
}

#[test]
fn spinor_parabolic_forms_are_invariant() {
    for file in ["b3_alpha_e3.json", "d4_alpha_e3_plus_e4.json", "d4_alpha_e3_minus_e4.json", "c3_case1.json", "g2_parabolic.json"] {
        let spec = serde_json::from_str(&std::fs::read_to_string(data(&format!("configs/{file}"))).unwrap()).unwrap();
        let (checked, worst) = invariance_defect(&spec);
        assert!(checked > 0, "{file}: no nondegenerate witness");
        assert_eq!(worst, int(0), "{file}");
    }
}
