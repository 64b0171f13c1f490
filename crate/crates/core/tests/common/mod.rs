#![allow(dead_code)]

use lie_conformal::rational::{frac, int};
use lie_conformal::rootsys::{RootSystem, SeriesLabel, Weight};
use lie_conformal::Rational;
use rand::Rng;
use std::path::PathBuf;
use std::sync::Arc;

pub fn w(xs: &[i64]) -> Weight {
    xs.iter().map(|&x| int(x)).collect()
}

/// Half-integer vector from doubled coordinates.
pub fn half(xs: &[i64]) -> Weight {
    xs.iter().map(|&x| frac(x, 2)).collect()
}

pub fn sys(label: SeriesLabel, rank: usize) -> Arc<RootSystem> {
    RootSystem::build(label, rank).unwrap()
}

/// Every system of rank at most `max_rank`, plus the rank-two product.
pub fn all_systems(max_rank: usize) -> Vec<Arc<RootSystem>> {
    let mut out = Vec::new();
    for l in SeriesLabel::ALL {
        match l.fixed_rank() {
            Some(r) if r <= max_rank => out.push(sys(l, r)),
            Some(_) => {}
            None => {
                for r in l.min_rank()..=max_rank {
                    out.push(sys(l, r));
                }
            }
        }
    }
    out
}

pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(0..rank)).collect()
}

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

pub fn dot(v: &[Rational], u: &[Rational]) -> Rational {
    v.iter().zip(u).map(|(a, b)| *a * *b).sum()
}

pub fn sub(v: &[Rational], u: &[Rational]) -> Weight {
    v.iter().zip(u).map(|(a, b)| *a - *b).collect()
}

pub fn add(v: &[Rational], u: &[Rational]) -> Weight {
    v.iter().zip(u).map(|(a, b)| *a + *b).collect()
}

pub fn neg(v: &[Rational]) -> Weight {
    v.iter().map(|a| -*a).collect()
}

/// `v - 2 (v, m)/(m, m) m`.
pub fn reflect(m: &[Rational], v: &[Rational]) -> Weight {
    let c = int(2) * dot(v, m) / dot(m, m);
    v.iter().zip(m).map(|(a, b)| *a - c * *b).collect()
}
