//! Depth-truncated formal characters of parabolic Verma modules.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{height_vector, is_pminus, simple_root_coeffs, truncate_weight, ParabolicSpec, Weight};
use crate::error::{Error, Result};
use crate::liedata::RootDatum;
use crate::weylgroup::{dot, generated_subgroup, RootSystem};

pub const DEFAULT_DEPTH: usize = 10;

/// Multiplicities of the weights `gamma` with `anchor - gamma` of height at most `depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub anchor: Weight,
    pub depth: usize,
    #[serde(serialize_with = "serialize_mults")]
    pub mults: BTreeMap<Weight, u64>,
}

#[derive(Serialize)]
struct Entry<'a> {
    weight: &'a Weight,
    multiplicity: u64,
}

fn serialize_mults<S: serde::Serializer>(m: &BTreeMap<Weight, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|(weight, &multiplicity)| Entry { weight, multiplicity }))
}

impl Character {
    pub fn get(&self, w: &Weight) -> u64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.mults.values().sum()
    }

    /// Pointwise sum; the anchor and depth of `self` are kept.
    pub fn sum(&self, o: &Character) -> Character {
        let mut mults = self.mults.clone();
        for (w, c) in &o.mults {
            *mults.entry(w.clone()).or_default() += c;
        }
        Character { anchor: self.anchor.clone(), depth: self.depth, mults }
    }
}

/// Kostant partition function on simple-root coordinate vectors of height at most `depth`.
fn partition_table(roots: &[Vec<i64>], rank: usize, depth: usize) -> HashMap<Vec<i64>, i64> {
    let mut table: HashMap<Vec<i64>, i64> = HashMap::from([(vec![0; rank], 1)]);
    for beta in roots {
        let h: i64 = beta.iter().sum();
        let mut result = table.clone();
        let mut frontier = table;
        loop {
            frontier = frontier
                .into_iter()
                .filter(|(c, _)| c.iter().sum::<i64>() + h <= depth as i64)
                .map(|(c, p)| (c.iter().zip(beta).map(|(a, b)| a + b).collect(), p))
                .collect();
            if frontier.is_empty() {
                break;
            }
            for (c, p) in &frontier {
                *result.entry(c.clone()).or_default() += p;
            }
        }
        table = result;
    }
    table
}

/// `sum_{z in W_Y} (-1)^{l(z)} e^{z . mu} / prod_{alpha > 0} (1 - e^{-alpha})`, cut at `depth`.
pub fn verma_character(mu: &Weight, datum: &RootDatum, y: &ParabolicSpec, depth: usize) -> Result<Character> {
    if !is_pminus(mu, datum, y) {
        return Err(Error::NotParabolicDominant(mu.to_string()));
    }
    let rs = RootSystem::new(datum);
    let r = datum.num_simple();
    let pos: Vec<Vec<i64>> = rs
        .positive
        .iter()
        .map(|a| {
            let v: Vec<_> = a.iter().map(|&x| num_rational::Rational64::from_integer(x)).collect();
            simple_root_coeffs(&v, datum).expect("root in span").into_iter().map(|x| x.to_integer()).collect()
        })
        .collect();
    let table = partition_table(&pos, r, depth);
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for z in generated_subgroup(&rs, &y.roots(datum)) {
        let sign = if z.length(&rs) % 2 == 0 { 1 } else { -1 };
        let nu = dot(&z, mu, datum);
        let cz = height_vector(&nu, mu, datum)?.expect("levi reflection of a weight stays in its root coset");
        let hz: i64 = cz.iter().sum();
        for (c, p) in &table {
            if hz + c.iter().sum::<i64>() <= depth as i64 {
                let key: Vec<i64> = cz.iter().zip(c).map(|(a, b)| a + b).collect();
                *acc.entry(key).or_default() += sign * p;
            }
        }
    }
    let roots = datum.dense_roots();
    let mut mults = BTreeMap::new();
    for (c, v) in acc {
        assert!(v >= 0, "negative multiplicity in a Verma character");
        if v == 0 {
            continue;
        }
        let mut shift = vec![0i64; datum.size()];
        for (k, &ck) in c.iter().enumerate() {
            for (s, &a) in shift.iter_mut().zip(&roots[k]) {
                *s += ck * a;
            }
        }
        mults.insert(mu.sub_dense(&shift), v as u64);
    }
    Ok(Character { anchor: mu.clone(), depth, mults })
}

/// Keeps the weights supported in rank `k`, re-expressed at rank `k`.
pub fn truncate_character(ch: &Character, k: usize) -> Character {
    let mults = ch.mults.iter().filter_map(|(w, &c)| truncate_weight(w, k).map(|t| (t, c))).collect();
    Character { anchor: ch.anchor.resized(k), depth: ch.depth, mults }
}
