use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{bruhat_leq, dot_checked, left_coset_reps, simple_reflection_dense, stabilizer_roots, RootSystem, WeylElt};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::liedata::RootDatum;
use crate::weights::{is_dominant, is_integral, is_p, is_pminus, ParabolicSpec, Weight};

#[derive(Clone, Debug, Serialize)]
pub struct BlockElement {
    pub weight: Weight,
    /// The unique minimal `w` with `weight = w . lambda`.
    pub w: WeylElt,
    pub word: Vec<usize>,
    pub length: usize,
    /// Whether the weight also lies in `P_n`.
    pub in_p: bool,
}

/// The linkage class of a dominant weight: `Lambda^{lambda,-}` with `Lambda^lambda` marked.
#[derive(Clone, Debug, Serialize)]
pub struct BlockPoset {
    pub anchor: Weight,
    pub datum: RootDatum,
    #[serde(skip)]
    pub y: ParabolicSpec,
    pub y_labels: Vec<String>,
    pub stabilizer: Vec<usize>,
    /// `|W_Y \\ W|`.
    pub cosets: usize,
    /// Sorted by `(length, weight)`.
    pub elements: Vec<BlockElement>,
    #[serde(skip)]
    index: HashMap<Weight, usize>,
}

/// Walks `mu + rho` back to the dominant chamber; returns the word of `w` with `mu = w . lambda`.
fn descend(mu: &Weight, datum: &RootDatum, rs: &RootSystem) -> Vec<usize> {
    let rho = datum.rho();
    let mut y: Vec<HalfInt> = mu.tilde().coords.iter().zip(rho.coords()).map(|(&a, &b)| a + b).collect();
    let mut word = Vec::new();
    while let Some(i) = (0..rs.simple.len()).find(|&i| RootSystem::pair(&y, &rs.simple[i]) < HalfInt::ZERO) {
        y = simple_reflection_dense(&rs.simple[i]).apply(&y);
        word.push(i);
    }
    word
}

/// `Lambda^{lambda,-}_n`: the dot images `w . lambda` in `P^-_n`, each tagged with its minimal `w`.
///
/// Every such weight is `w . lambda` for a minimal representative `w` of `W_Y \ W`, so only
/// those cosets are visited rather than the whole orbit.
pub fn orbit_block(lambda: &Weight, datum: &RootDatum, y: &ParabolicSpec) -> Result<BlockPoset> {
    if !is_integral(lambda, datum) {
        return Err(Error::NotIntegral(lambda.to_string()));
    }
    if !is_dominant(lambda, datum) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let rs = RootSystem::new(datum);
    let reps = left_coset_reps(&rs, &y.roots(datum));
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut kept = Vec::new();
    for w in &reps {
        let mu = dot_checked(w, lambda, datum)?;
        if is_pminus(&mu, datum, y) && seen.insert(mu.clone()) {
            kept.push(mu);
        }
    }
    let mut elements: Vec<BlockElement> = kept
        .into_iter()
        .map(|weight| {
            let word = descend(&weight, datum, &rs);
            let w = WeylElt::from_word(&word, &rs);
            let in_p = is_p(&weight, datum, y);
            BlockElement { length: word.len(), weight, w, word, in_p }
        })
        .collect();
    elements.sort_by(|a, b| (a.length, &a.weight).cmp(&(b.length, &b.weight)));
    let index = elements.iter().enumerate().map(|(i, e)| (e.weight.clone(), i)).collect();
    Ok(BlockPoset {
        anchor: lambda.clone(),
        datum: datum.clone(),
        y: y.clone(),
        y_labels: y.labels(datum),
        stabilizer: stabilizer_roots(lambda, datum),
        cosets: reps.len(),
        elements,
        index,
    })
}

impl BlockPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_regular(&self) -> bool {
        self.stabilizer.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Indices of the elements in `Lambda^lambda_n`.
    pub fn p_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].in_p).collect()
    }

    pub fn root_system(&self) -> RootSystem {
        RootSystem::new(&self.datum)
    }

    /// Bruhat covers `(i, j)` with `w_i < w_j` and lengths differing by one.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let rs = self.root_system();
        let mut out = Vec::new();
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                if b.length == a.length + 1 && bruhat_leq(&a.w, &b.w, &rs) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
