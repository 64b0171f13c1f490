//! Exhaustive search over candidate isotropy configurations.
//!
//! Each candidate goes through the root-combinatorial closure of
//! [`derive_detailed`] and, if it survives, through the invariant-form
//! solver. Verdicts are merged in a fixed order regardless of evaluation
//! order.

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::invform::{self, FormSolution, Infeasibility};
use crate::isotropy::{
    borel_distortion, derive_detailed, parabolic_distortion, validate, CaseTag, Distortion, IsotropyConfig, Stage,
    Witness,
};
use crate::rational::{self, int};
use crate::rootsys::{self, dot, pretty_weight, Root, RootSystem, SeriesLabel, Weight};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Named rows of the expected classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurvivorLabel {
    #[serde(rename = "Sp_case")]
    SpCase,
    #[serde(rename = "SL_case")]
    SlCase,
    #[serde(rename = "Einstein_Bn")]
    EinsteinBn,
    #[serde(rename = "Einstein_Dn")]
    EinsteinDn,
    #[serde(rename = "Eins3_B2")]
    Eins3B2,
    #[serde(rename = "G2_Eins5")]
    G2Eins5,
    #[serde(rename = "CP1")]
    Cp1,
    #[serde(rename = "CP1xCP1")]
    Cp1xCp1,
}

impl SurvivorLabel {
    pub fn name(self) -> &'static str {
        match self {
            SurvivorLabel::SpCase => "Sp_case",
            SurvivorLabel::SlCase => "SL_case",
            SurvivorLabel::EinsteinBn => "Einstein_Bn",
            SurvivorLabel::EinsteinDn => "Einstein_Dn",
            SurvivorLabel::Eins3B2 => "Eins3_B2",
            SurvivorLabel::G2Eins5 => "G2_Eins5",
            SurvivorLabel::Cp1 => "CP1",
            SurvivorLabel::Cp1xCp1 => "CP1xCP1",
        }
    }

    /// Series the row is stated in.
    fn native(self) -> SeriesLabel {
        match self {
            SurvivorLabel::SpCase => SeriesLabel::C,
            SurvivorLabel::SlCase => SeriesLabel::A,
            SurvivorLabel::EinsteinBn | SurvivorLabel::Eins3B2 => SeriesLabel::B,
            SurvivorLabel::EinsteinDn => SeriesLabel::D,
            SurvivorLabel::G2Eins5 => SeriesLabel::G2,
            SurvivorLabel::Cp1 => SeriesLabel::A,
            SurvivorLabel::Cp1xCp1 => SeriesLabel::A1xA1,
        }
    }
}

impl fmt::Display for SurvivorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub system: Arc<RootSystem>,
    pub case: CaseTag,
    pub delta: Weight,
    pub alpha: Option<Root>,
}

impl Candidate {
    fn distortion(&self) -> Result<Distortion> {
        let rs = &self.system;
        match self.case {
            CaseTag::Case1 => {
                let a = self.alpha.clone().ok_or_else(|| Error::Input("Case1 needs alpha".into()))?;
                let rest = rootsys::sub(&self.delta, &a);
                Ok(Distortion::new(rs, self.delta.clone())?.with_sum(a, rest))
            }
            CaseTag::Case2 => Distortion::new(rs, self.delta.clone()),
            CaseTag::Parabolic => {
                let a = self.alpha.as_ref().ok_or_else(|| Error::Input("parabolic needs alpha".into()))?;
                let k = (0..rs.rank())
                    .find(|&k| &rs.simples()[k] == a)
                    .ok_or_else(|| Error::Input("alpha must be simple".into()))?;
                parabolic_distortion(rs, k)
            }
            CaseTag::LowRank => borel_distortion(rs),
        }
    }

    fn sort_key(&self) -> (usize, usize, CaseTag, Vec<i64>) {
        let label_pos = SeriesLabel::ALL.iter().position(|l| *l == self.system.label()).unwrap_or(usize::MAX);
        // Ratios are exact; scale to integers for a total order.
        let alpha = self
            .alpha
            .as_ref()
            .map(|a| a.iter().map(|x| -(x.numer() * (12 / x.denom()))).collect())
            .unwrap_or_default();
        (label_pos, self.system.rank(), self.case, alpha)
    }
}

#[derive(Debug, Clone)]
pub struct CandidateVerdict {
    pub candidate: Candidate,
    pub config: Option<IsotropyConfig>,
    pub stage_reached: Stage,
    pub reason: String,
    pub survivor_label: Option<SurvivorLabel>,
    /// Present for every candidate that reached the solver.
    pub solution: Option<FormSolution>,
    pub notes: Vec<String>,
}

impl CandidateVerdict {
    pub fn is_survivor(&self) -> bool {
        self.stage_reached == Stage::Survivor
    }
}

/// Pairs `(-delta, alpha)` with `alpha` orthogonal to `delta` and
/// `delta - alpha` a root, one per Weyl orbit, as canonical representatives.
pub fn enumerate_case1(rs: &RootSystem) -> Result<Vec<(Root, Root)>> {
    if rs.label() == SeriesLabel::A1xA1 {
        return Err(Error::Reducible);
    }
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for md in 0..rs.num_roots() {
        for a in 0..rs.num_roots() {
            if case1_pair_ok(rs, md, a) {
                let c = rs.canonical_pair_index(md, a);
                if !reps.contains(&c) {
                    reps.push(c);
                }
            }
        }
    }
    Ok(reps.into_iter().map(|(m, a)| (rs.root(m).clone(), rs.root(a).clone())).collect())
}

fn case1_pair_ok(rs: &RootSystem, minus_delta: usize, alpha: usize) -> bool {
    let md = rs.root(minus_delta);
    let a = rs.root(alpha);
    dot(md, a).is_zero() && rs.index_of(&rootsys::add(md, a)).is_some()
}

/// Every pair of the Case1 orbits placed against the standard Borel: `alpha`
/// positive, `delta` any root with the orbit property.
pub fn case1_positions(rs: &Arc<RootSystem>) -> Vec<Candidate> {
    let mut out = Vec::new();
    for a in 0..rs.num_positive() {
        for md in 0..rs.num_roots() {
            if case1_pair_ok(rs, md, a) {
                out.push(Candidate {
                    system: rs.clone(),
                    case: CaseTag::Case1,
                    delta: rootsys::neg(rs.root(md)),
                    alpha: Some(rs.root(a).clone()),
                });
            }
        }
    }
    out
}

/// The Case2 candidate: `delta` the minimal root, provided the Cartan
/// directions forced into `h` by unpaired negative simple roots leave room
/// for a proper `a ∩ h`.
pub fn enumerate_case2(rs: &Arc<RootSystem>) -> Result<Option<Candidate>> {
    let m = rs.minimal_root()?;
    let mut rows = vec![m.clone()];
    for k in 0..rs.rank() {
        let s = &rs.simples()[k];
        if rs.index_of(&rootsys::add(&m, s)).is_none() {
            rows.push(s.clone());
        }
    }
    if crate::linalg::rank(&rows) == rs.rank() {
        return Ok(None);
    }
    Ok(Some(Candidate { system: rs.clone(), case: CaseTag::Case2, delta: m, alpha: None }))
}

/// One maximal-parabolic candidate per simple root, or the Borel for the
/// rank-one product.
pub fn enumerate_parabolic(rs: &Arc<RootSystem>) -> Result<Vec<Candidate>> {
    if rs.label() == SeriesLabel::A1xA1 {
        let d = borel_distortion(rs)?;
        return Ok(vec![Candidate { system: rs.clone(), case: CaseTag::LowRank, delta: d.functional, alpha: None }]);
    }
    (0..rs.rank())
        .map(|k| {
            let d = parabolic_distortion(rs, k)?;
            Ok(Candidate {
                system: rs.clone(),
                case: CaseTag::Parabolic,
                delta: d.functional,
                alpha: Some(rs.simples()[k].clone()),
            })
        })
        .collect()
}

fn label_survivor(c: &Candidate) -> (Option<SurvivorLabel>, Vec<String>) {
    use SeriesLabel::*;
    let rs = &c.system;
    let n = rs.rank();
    let w = |xs: &[i64]| -> Weight {
        let mut v: Weight = xs.iter().map(|&x| int(x)).collect();
        v.resize(rs.dim(), int(0));
        v
    };
    let alpha_is = |xs: &[i64]| c.alpha.as_ref() == Some(&w(xs));
    match (c.case, rs.label()) {
        (CaseTag::Case1, C) => (Some(SurvivorLabel::SpCase), vec![]),
        (CaseTag::Case1, B) if n == 2 => (Some(SurvivorLabel::SpCase), vec!["B2 = C2".into()]),
        (CaseTag::Case2, A) => (Some(SurvivorLabel::SlCase), vec![]),
        (CaseTag::Case2, D) if n == 3 => (Some(SurvivorLabel::SlCase), vec!["D3 = A3".into()]),
        (CaseTag::Parabolic, B) if alpha_is(&[1, -1]) => {
            if n == 2 {
                (Some(SurvivorLabel::Eins3B2), vec![])
            } else {
                (Some(SurvivorLabel::EinsteinBn), vec![])
            }
        }
        (CaseTag::Parabolic, D) if alpha_is(&[1, -1]) => (Some(SurvivorLabel::EinsteinDn), vec![]),
        (CaseTag::Parabolic, C) if n == 2 && alpha_is(&[0, 2]) => {
            (Some(SurvivorLabel::Eins3B2), vec!["C2 = B2".into()])
        }
        (CaseTag::Parabolic, A) if n == 3 && alpha_is(&[0, 1, -1]) => {
            (Some(SurvivorLabel::EinsteinDn), vec!["A3 = D3".into()])
        }
        (CaseTag::Parabolic, G2) if alpha_is(&[1, -1]) => (Some(SurvivorLabel::G2Eins5), vec![]),
        (CaseTag::LowRank, A) if n == 1 => (Some(SurvivorLabel::Cp1), vec![]),
        (CaseTag::LowRank, A1xA1) => (Some(SurvivorLabel::Cp1xCp1), vec![]),
        _ => (None, vec!["not a row of the expected classification".into()]),
    }
}

/// Runs closure and solver on one candidate.
pub fn evaluate(c: &Candidate) -> Result<CandidateVerdict> {
    let dist = c.distortion()?;
    let verdict = |config, stage, reason: String, solution| CandidateVerdict {
        candidate: c.clone(),
        config,
        stage_reached: stage,
        reason,
        survivor_label: None,
        solution,
        notes: vec![],
    };
    let config = match derive_detailed(&c.system, &dist, c.case)? {
        Ok(cfg) => cfg,
        Err(o) => return Ok(verdict(None, o.stage, o.witness.to_string(), None)),
    };
    let report = validate(&config);
    if !report.passed() {
        let f = report.failures();
        let reason = format!("{}: {}", f[0].name, f[0].witness.clone().unwrap_or_default());
        return Ok(verdict(Some(config), Stage::IsotropyClosure, reason, None));
    }
    let sc = StructureConstants::new(c.system.clone());
    let (_, sol) = invform::solve_config(&sc, &config)?;
    if !sol.feasible() {
        let detail = match sol.infeasibility {
            Some(Infeasibility::NoSolution) => "the invariance equations have only the zero solution".to_string(),
            Some(Infeasibility::DeterminantVanishes { dimension }) => {
                format!("generic determinant over the {dimension}-dimensional solution space is identically zero")
            }
            None => "no nondegenerate solution".to_string(),
        };
        let reason = Witness::Degenerate { detail }.to_string();
        return Ok(verdict(Some(config), Stage::SolverFeasibility, reason, Some(sol)));
    }
    let (label, notes) = label_survivor(c);
    let reason = format!("nondegenerate invariant form, solution space of dimension {}", sol.dimension);
    let mut v = verdict(Some(config), Stage::Survivor, reason, Some(sol));
    v.survivor_label = label;
    v.notes = notes;
    Ok(v)
}

/// Case1 verdict for a given `(-delta, alpha)`.
pub fn eliminate_case1(rs: &Arc<RootSystem>, pair: (&[crate::Rational], &[crate::Rational])) -> Result<CandidateVerdict> {
    evaluate(&Candidate {
        system: rs.clone(),
        case: CaseTag::Case1,
        delta: rootsys::neg(pair.0),
        alpha: Some(pair.1.to_vec()),
    })
}

pub fn eliminate_parabolic(candidate: &Candidate) -> Result<CandidateVerdict> {
    evaluate(candidate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseFilter {
    All,
    Only(CaseTag),
}

impl std::str::FromStr for CaseFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(CaseFilter::All),
            "case1" => Ok(CaseFilter::Only(CaseTag::Case1)),
            "case2" => Ok(CaseFilter::Only(CaseTag::Case2)),
            "parabolic" => Ok(CaseFilter::Only(CaseTag::Parabolic)),
            _ => Err(Error::Input(format!("unknown case {s:?}"))),
        }
    }
}

impl CaseFilter {
    fn admits(self, c: CaseTag) -> bool {
        match self {
            CaseFilter::All => true,
            // The rank-one Borels belong to the parabolic family.
            CaseFilter::Only(CaseTag::Parabolic) => matches!(c, CaseTag::Parabolic | CaseTag::LowRank),
            CaseFilter::Only(t) => t == c,
        }
    }
}

/// Systems searched: classical series of rank 2..=max_rank (D from 3), all
/// exceptional types, and the two rank-one Borel models.
pub fn systems(max_rank: usize) -> Result<Vec<Arc<RootSystem>>> {
    let mut out = vec![RootSystem::build(SeriesLabel::A, 1)?];
    for label in SeriesLabel::ALL {
        match label.fixed_rank() {
            Some(r) => out.push(RootSystem::build(label, r)?),
            None => {
                for r in label.min_rank().max(2)..=max_rank {
                    out.push(RootSystem::build(label, r)?);
                }
            }
        }
    }
    Ok(out)
}

pub fn candidates(max_rank: usize, filter: CaseFilter) -> Result<Vec<Candidate>> {
    if max_rank < 2 {
        return Err(Error::InvalidRank { label: "max_rank".into(), rank: max_rank });
    }
    let mut out = Vec::new();
    for rs in systems(max_rank)? {
        if rs.label() == SeriesLabel::A1xA1 || rs.rank() == 1 {
            let d = borel_distortion(&rs)?;
            out.push(Candidate { system: rs.clone(), case: CaseTag::LowRank, delta: d.functional, alpha: None });
            continue;
        }
        out.extend(case1_positions(&rs));
        // Kept even when the fast path rules it out, so that the report
        // carries the closure witness.
        let m = rs.minimal_root()?;
        out.push(Candidate { system: rs.clone(), case: CaseTag::Case2, delta: m, alpha: None });
        out.extend(enumerate_parabolic(&rs)?);
    }
    out.retain(|c| filter.admits(c.case));
    out.sort_by_key(|c| c.sort_key());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurvivorRow {
    pub survivor: String,
    pub label: String,
    pub rank: usize,
    pub case: String,
    pub delta: Vec<String>,
    pub alpha: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorEntry {
    #[serde(flatten)]
    pub row: SurvivorRow,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub max_rank: usize,
    pub verdicts: Vec<CandidateVerdict>,
    pub survivors: Vec<SurvivorEntry>,
}

fn strings(w: &[crate::Rational]) -> Vec<String> {
    w.iter().map(rational::to_string).collect()
}

fn row_of(v: &CandidateVerdict) -> SurvivorRow {
    let c = &v.candidate;
    SurvivorRow {
        survivor: v.survivor_label.map(|l| l.name().to_string()).unwrap_or_else(|| "unlisted".into()),
        label: c.system.label().to_string(),
        rank: c.system.rank(),
        case: c.case.to_string(),
        delta: strings(&c.delta),
        alpha: c.alpha.as_deref().map(strings),
    }
}

/// Collapses survivors related by a low-rank isomorphism onto the row stated
/// in the native series, keeping the others as notes.
fn dedup(verdicts: &[CandidateVerdict]) -> Vec<SurvivorEntry> {
    let mut groups: BTreeMap<(String, usize, String), Vec<&CandidateVerdict>> = BTreeMap::new();
    for v in verdicts.iter().filter(|v| v.is_survivor()) {
        let key = match v.survivor_label {
            Some(l) => (l.name().to_string(), v.candidate.system.rank(), String::new()),
            None => ("unlisted".into(), v.candidate.system.rank(), format!("{:?}", row_of(v))),
        };
        groups.entry(key).or_default().push(v);
    }
    let mut out: Vec<SurvivorEntry> = groups
        .into_values()
        .map(|g| {
            let primary = g
                .iter()
                .find(|v| v.survivor_label.is_some_and(|l| l.native() == v.candidate.system.label()))
                .unwrap_or(&g[0]);
            let mut notes = primary.notes.clone();
            for v in g.iter().filter(|v| !std::ptr::eq(**v, *primary)) {
                let r = row_of(v);
                notes.push(format!(
                    "{}{} {} alpha={} is the same row{}",
                    r.label,
                    if v.candidate.system.label().fixed_rank().is_some() { String::new() } else { r.rank.to_string() },
                    r.case,
                    v.candidate.alpha.as_deref().map(pretty_weight).unwrap_or_else(|| "-".into()),
                    v.notes.first().map(|n| format!(" ({n})")).unwrap_or_default()
                ));
            }
            SurvivorEntry { row: row_of(primary), notes }
        })
        .collect();
    out.sort_by(|a, b| a.row.cmp(&b.row));
    out
}

pub fn classify(max_rank: usize, filter: CaseFilter) -> Result<ClassificationReport> {
    let cands = candidates(max_rank, filter)?;
    let verdicts = cands.par_iter().map(evaluate).collect::<Result<Vec<_>>>()?;
    let survivors = dedup(&verdicts);
    Ok(ClassificationReport { max_rank, verdicts, survivors })
}

pub fn classify_all(max_rank: usize) -> Result<ClassificationReport> {
    classify(max_rank, CaseFilter::All)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedSurvivors {
    pub survivors: Vec<SurvivorRow>,
}

/// The expected survivor rows up to `max_rank`, one per row of the
/// classification, stated in the native series.
pub fn theorem_table(max_rank: usize, filter: CaseFilter) -> Vec<SurvivorRow> {
    let v = |xs: &[i64]| -> Vec<String> { xs.iter().map(|x| x.to_string()).collect() };
    let e = |dim: usize, entries: &[(usize, i64)]| -> Vec<i64> {
        let mut out = vec![0; dim];
        for &(i, c) in entries {
            out[i] = c;
        }
        out
    };
    let row = |survivor: SurvivorLabel, label: &str, rank: usize, case: CaseTag, delta: Vec<i64>, alpha: Option<Vec<i64>>| {
        SurvivorRow {
            survivor: survivor.name().into(),
            label: label.into(),
            rank,
            case: case.to_string(),
            delta: v(&delta),
            alpha: alpha.map(|a| v(&a)),
        }
    };
    let mut out = Vec::new();
    if filter.admits(CaseTag::Case1) {
        for n in 2..=max_rank {
            let (d, a) = (e(n, &[(0, -1), (1, -1)]), e(n, &[(0, 1), (1, -1)]));
            out.push(row(SurvivorLabel::SpCase, "C", n, CaseTag::Case1, d, Some(a)));
        }
    }
    if filter.admits(CaseTag::Case2) {
        for n in 2..=max_rank {
            out.push(row(SurvivorLabel::SlCase, "A", n, CaseTag::Case2, e(n + 1, &[(0, -1), (n, 1)]), None));
        }
    }
    if filter.admits(CaseTag::Parabolic) {
        let a = |n| Some(e(n, &[(0, 1), (1, -1)]));
        out.push(row(SurvivorLabel::Eins3B2, "B", 2, CaseTag::Parabolic, e(2, &[(0, -2)]), a(2)));
        for n in 3..=max_rank {
            out.push(row(SurvivorLabel::EinsteinBn, "B", n, CaseTag::Parabolic, e(n, &[(0, -2)]), a(n)));
            out.push(row(SurvivorLabel::EinsteinDn, "D", n, CaseTag::Parabolic, e(n, &[(0, -2)]), a(n)));
        }
        out.push(row(SurvivorLabel::G2Eins5, "G2", 2, CaseTag::Parabolic, vec![0, 2, -2], Some(vec![1, -1, 0])));
        out.push(row(SurvivorLabel::Cp1, "A", 1, CaseTag::LowRank, vec![-2, 2], None));
        out.push(row(SurvivorLabel::Cp1xCp1, "A1xA1", 2, CaseTag::LowRank, vec![-1, 1, -1, 1], None));
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Comparison {
    pub missing: Vec<SurvivorRow>,
    pub unexpected: Vec<SurvivorRow>,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

impl ClassificationReport {
    pub fn survivor_rows(&self) -> Vec<SurvivorRow> {
        self.survivors.iter().map(|s| s.row.clone()).collect()
    }

    pub fn compare(&self, expected: &[SurvivorRow]) -> Comparison {
        let got = self.survivor_rows();
        Comparison {
            missing: expected.iter().filter(|r| !got.contains(r)).cloned().collect(),
            unexpected: got.iter().filter(|r| !expected.contains(r)).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let candidates: Vec<serde_json::Value> = self
            .verdicts
            .iter()
            .map(|v| {
                let c = &v.candidate;
                serde_json::json!({
                    "label": c.system.label().to_string(),
                    "rank": c.system.rank(),
                    "case": c.case.to_string(),
                    "delta": strings(&c.delta),
                    "alpha": c.alpha.as_deref().map(strings),
                    "verdict": if v.is_survivor() { "survivor" } else { "eliminated" },
                    "stage": v.stage_reached.to_string(),
                    "witness": v.reason,
                    "survivor_label": v.survivor_label.map(|l| l.name()),
                    "solution_dimension": v.solution.as_ref().map(|s| s.dimension),
                })
            })
            .collect();
        serde_json::json!({
            "max_rank": self.max_rank,
            "candidates": candidates,
            "survivors": self.survivors,
        })
    }

    pub fn to_table(&self) -> String {
        let mut rows: Vec<[String; 7]> = vec![[
            "label".into(),
            "rank".into(),
            "case".into(),
            "delta".into(),
            "alpha".into(),
            "stage".into(),
            "witness".into(),
        ]];
        for v in &self.verdicts {
            let c = &v.candidate;
            rows.push([
                c.system.label().to_string(),
                c.system.rank().to_string(),
                c.case.to_string(),
                pretty_weight(&c.delta),
                c.alpha.as_deref().map(pretty_weight).unwrap_or_else(|| "-".into()),
                v.stage_reached.to_string(),
                match v.survivor_label {
                    Some(l) if v.is_survivor() => format!("{l}: {}", v.reason),
                    _ => v.reason.clone(),
                },
            ]);
        }
        let widths: Vec<usize> = (0..6).map(|k| rows.iter().map(|r| r[k].chars().count()).max().unwrap()).collect();
        let mut out = String::new();
        for r in &rows {
            for k in 0..6 {
                out.push_str(&format!("{:<w$}  ", r[k], w = widths[k]));
            }
            out.push_str(&r[6]);
            out.push('\n');
        }
        out.push_str("\nsurvivors:\n");
        for s in &self.survivors {
            let r = &s.row;
            out.push_str(&format!(
                "  {:<12} {}{} {} delta=({}) alpha=({})\n",
                r.survivor,
                r.label,
                r.rank,
                r.case,
                r.delta.join(","),
                r.alpha.as_ref().map(|a| a.join(",")).unwrap_or_default()
            ));
            for n in &s.notes {
                out.push_str(&format!("      note: {n}\n"));
            }
        }
        out
    }
}
