use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::klambda::find_k_lambda;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::liedata::RootDatum;
use crate::weights::{ParabolicSpec, Weight};
use crate::weylgroup::{dot_simple_checked, longest_element, orbit_block, stabilizer_roots, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncPrimeCheck {
    pub k: usize,
    /// Labels at rank `n` that survive `tr'` down to rank `k`.
    pub kept: usize,
    /// `|Lambda'_k|`, computed from scratch at rank `k`.
    pub expected: usize,
    pub exact: bool,
}

/// Label combinatorics of the dual block `O'_{n,phi}`.
#[derive(Clone, Debug, Serialize)]
pub struct DualBlockLabels {
    pub lambda: Weight,
    pub n: usize,
    pub k_lambda: usize,
    pub k_prime: usize,
    pub n0: usize,
    /// `(phi + rho)(E_j) = a` for every tail index.
    pub a: HalfInt,
    pub phi: Weight,
    /// Simple roots killed by `phi + rho`; equal to `Y`.
    pub phi_singular: Vec<String>,
    pub phi_singular_is_y: bool,
    /// The stabilizer of `phi` under the dot action is exactly `W_Y`.
    pub stabilizer_is_wy: bool,
    /// `Y'_n`: simple roots killed by `lambda + rho_n`.
    pub y_prime: Vec<String>,
    pub y_prime_recomputed: bool,
    /// `Lambda'_n`, sorted.
    pub labels: Vec<Weight>,
    /// `|Lambda^lambda_n|` for comparison.
    pub block_labels: usize,
    pub label_counts_match: bool,
    /// `(w . phi)(E_n) >= phi(E_n)` over the whole orbit.
    pub tail_bound: bool,
    pub truncations: Vec<TruncPrimeCheck>,
}

impl DualBlockLabels {
    pub fn pass(&self) -> bool {
        self.phi_singular_is_y
            && self.stabilizer_is_wy
            && self.y_prime_recomputed
            && self.label_counts_match
            && self.tail_bound
            && self.truncations.iter().all(|t| t.exact)
    }
}

fn search_phi(datum: &RootDatum, y: &ParabolicSpec, lambda: &Weight) -> Result<(HalfInt, Weight)> {
    let (m, n) = (datum.m, datum.n);
    let shifted = lambda.add(&datum.rho());
    let bound = shifted.coords().iter().map(|c| c.abs()).max().unwrap_or(HalfInt::ZERO);
    let floor = -(bound + HalfInt::from_int(2 * m as i64 + 2));
    let want: BTreeSet<usize> = y.roots(datum).into_iter().collect();
    let rs = RootSystem::new(datum);
    let wy_roots = longest_element(&rs, &y.roots(datum)).length(&rs);
    let mut a = -HalfInt::HALF;
    while a >= floor {
        if a <= -bound {
            let span = -a.doubled();
            let mut t = vec![0i64; m];
            loop {
                let head: Vec<HalfInt> = t.iter().map(|&ti| a + HalfInt::from_int(ti)).collect();
                let u = Weight::from_parts(&head, &vec![a; n], n, HalfInt::ZERO);
                let ok = (0..datum.num_simple()).all(|i| {
                    let p = datum.pairing(&u, i);
                    p.is_integer() && (p == HalfInt::ZERO) == want.contains(&i)
                });
                if ok && singular_positive_roots(&u, &rs) == wy_roots {
                    return Ok((a, u.sub(&datum.rho())));
                }
                // odometer over t in [0, span]^m
                let Some(p) = (0..m).rev().find(|&p| t[p] < span) else { break };
                t[p] += 1;
                for q in p + 1..m {
                    t[q] = 0;
                }
            }
        }
        a -= HalfInt::HALF;
    }
    let violated = if floor > -bound {
        "a <= +-(lambda + rho)(E_j) for all j".to_string()
    } else {
        format!("no head values with |(phi + rho)(E_j)| <= -a and singular set Y for a >= {floor}")
    };
    Err(Error::NoDualAnchor(violated))
}

/// Positive roots orthogonal to `v`; their reflections generate the stabilizer of `v`.
fn singular_positive_roots(v: &Weight, rs: &RootSystem) -> usize {
    let x = v.tilde().coords;
    rs.positive.iter().filter(|a| RootSystem::pair(&x, a) == HalfInt::ZERO).count()
}

fn labels_at(phi: &Weight, datum: &RootDatum, y_prime: &[usize]) -> Result<(Vec<Weight>, bool)> {
    let mut seen: HashSet<Weight> = HashSet::from([phi.clone()]);
    let mut queue = VecDeque::from([phi.clone()]);
    let mut kept = Vec::new();
    let last = phi.coords()[phi.coords().len() - 1];
    let mut tail_bound = true;
    while let Some(mu) = queue.pop_front() {
        tail_bound &= mu.coords()[mu.coords().len() - 1] >= last;
        if y_prime.iter().all(|&i| datum.pairing(&mu, i) >= HalfInt::ZERO) {
            kept.push(mu.clone());
        }
        for i in 0..datum.num_simple() {
            let nu = dot_simple_checked(i, &mu, datum)?;
            if seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    kept.sort();
    Ok((kept, tail_bound))
}

/// `tr'` on labels: keeps `mu` with `mu(E_r) = phi(E_r)` for all `r > k`, cut to rank `k`.
pub fn trunc_prime(labels: &[Weight], phi: &Weight, k: usize) -> Vec<Weight> {
    let m = phi.m();
    let mut out: Vec<Weight> = labels
        .iter()
        .filter(|mu| mu.coords()[m + k..] == phi.coords()[m + k..])
        .map(|mu| mu.resized(k))
        .collect();
    out.sort();
    out
}

fn names(datum: &RootDatum, roots: &[usize]) -> Vec<String> {
    roots.iter().map(|&i| datum.simple_roots[i].label.to_string()).collect()
}

/// Builds `phi` for `lambda`, the labels `Lambda'_n` of the dual block, and checks `tr'` against
/// independently computed `Lambda'_k` for every `n0 <= k < n`.
pub fn dual_block_labels(lambda: &Weight, datum: &RootDatum, y: &ParabolicSpec, n: usize) -> Result<DualBlockLabels> {
    let kl = find_k_lambda(lambda, datum, y)?;
    let k_prime = lambda.tail_support() + 1;
    let n0 = kl.k_lambda.max(k_prime);
    if n < n0 {
        return Err(Error::InvalidRank(format!("dual block needs n >= n0 = {n0}, got {n}")));
    }
    let dn = datum.at_rank(n)?;
    let lam_n = lambda.resized(n);
    let (a, phi) = search_phi(&dn, y, &lam_n)?;
    let phi_sing = stabilizer_roots(&phi, &dn);
    let rs = RootSystem::new(&dn);
    let stabilizer_is_wy =
        singular_positive_roots(&phi.add(&dn.rho()), &rs) == longest_element(&rs, &y.roots(&dn)).length(&rs);
    let y_prime = stabilizer_roots(&lam_n, &dn);
    let y_prime_recomputed = (0..dn.num_simple())
        .filter(|&i| dn.pairing(&lam_n.add(&dn.rho()), i) == HalfInt::ZERO)
        .eq(y_prime.iter().copied());
    let (labels, tail_bound) = labels_at(&phi, &dn, &y_prime)?;
    let block_labels = orbit_block(&lam_n, &dn, y)?.p_indices().len();

    let mut truncations = Vec::new();
    for k in n0..n {
        let dk = datum.at_rank(k)?;
        let (expected, _) = labels_at(&phi.resized(k), &dk, &stabilizer_roots(&lambda.resized(k), &dk))?;
        let kept = trunc_prime(&labels, &phi, k);
        truncations.push(TruncPrimeCheck { k, kept: kept.len(), expected: expected.len(), exact: kept == expected });
    }
    Ok(DualBlockLabels {
        lambda: lam_n,
        n,
        k_lambda: kl.k_lambda,
        k_prime,
        n0,
        a,
        phi_singular_is_y: phi_sing == y.roots(&dn),
        phi,
        stabilizer_is_wy,
        phi_singular: names(&dn, &phi_sing),
        y_prime: names(&dn, &y_prime),
        y_prime_recomputed,
        label_counts_match: labels.len() == block_labels,
        block_labels,
        labels,
        tail_bound,
        truncations,
    })
}
