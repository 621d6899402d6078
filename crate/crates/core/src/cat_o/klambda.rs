use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::liedata::{rho_coord, RootDatum};
use crate::weights::{is_dominant, is_integral, ParabolicSpec, Weight};
use crate::weylgroup::orbit_block;

/// One affine constraint `n >= threshold` that makes the inequality hold for index `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KLambdaBound {
    pub index: String,
    /// `(lambda + rho)(E_j - delta_j K)`, or the affine expression for moving indices.
    pub value: String,
    pub threshold: HalfInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub n: usize,
    pub inequality: bool,
    /// `x_n = (lambda + rho_n)(E_n - K)`.
    pub x_n: HalfInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub n: usize,
    pub pminus: usize,
    pub p: usize,
    pub equal: bool,
}

/// `k_lambda` together with the certificate that `x_n <= -|x_j|` for every `j in I(n)`, `n >= k_lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KLambda {
    pub k_lambda: usize,
    pub support: usize,
    /// Beyond the support, `x_j = kappa - j`.
    pub kappa: HalfInt,
    pub bounds: Vec<KLambdaBound>,
    /// From this rank on, the affine bounds alone prove the inequality.
    pub symbolic_from: usize,
    /// Direct evaluation on `max(support, 1) ..= symbolic_from`.
    pub direct: Vec<RankCheck>,
    /// `x_n` is negative at `n = k_lambda` and drops by one per rank afterwards.
    pub premise: bool,
    pub enumeration: Vec<Enumeration>,
}

impl KLambda {
    pub fn pass(&self) -> bool {
        self.premise && self.enumeration.iter().all(|e| e.equal)
    }
}

fn ceil(h: HalfInt) -> i64 {
    (h.doubled() + 1).div_euclid(2)
}

/// `x_j = (lambda + rho_n)(E_j - delta_j K)` over `I(n)` in position order.
fn shifted(lambda: &Weight, datum: &RootDatum, n: usize) -> Vec<HalfInt> {
    let rho = crate::liedata::rho(datum.lie_type, datum.m, n);
    lambda.resized(n).tilde().coords.iter().zip(rho.coords()).map(|(&a, &b)| a + b).collect()
}

fn inequality(x: &[HalfInt]) -> bool {
    let last = *x.last().expect("nonempty index set");
    x.iter().all(|&xj| last <= -xj.abs())
}

/// Smallest rank from which `O_{n,lambda} = O^-_{n,lambda}` is certified by the inequality
/// `(lambda + rho_n)(E_n - K) <= +-(lambda + rho_n)(E_j - delta_j K)`, `j in I(n)`, cross-checked by
/// enumerating the block at `k_lambda`, `k_lambda + 1` and `k_lambda + 2`.
pub fn find_k_lambda(lambda: &Weight, datum: &RootDatum, y: &ParabolicSpec) -> Result<KLambda> {
    let datum_here = datum.at_rank(lambda.n())?;
    if !is_integral(lambda, &datum_here) {
        return Err(Error::NotIntegral(lambda.to_string()));
    }
    if !is_dominant(lambda, &datum_here) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let t = datum.lie_type;
    let m = datum.m;
    let s = lambda.tail_support();
    let d = lambda.level();
    let kappa = -d + rho_coord(t, m, 1) + HalfInt::ONE;

    // indices whose x_j does not move with n
    let fixed = shifted(lambda, datum, s.max(1));
    let fixed_count = m + s;
    let mut bounds: Vec<KLambdaBound> = (0..fixed_count)
        .map(|p| {
            let j = if p < m { p as i64 - m as i64 } else { (p - m + 1) as i64 };
            KLambdaBound { index: j.to_string(), value: fixed[p].to_string(), threshold: kappa + fixed[p].abs() }
        })
        .collect();
    bounds.push(KLambdaBound { index: "n".into(), value: format!("{kappa} - n"), threshold: kappa });
    bounds.push(KLambdaBound {
        index: format!("{}..n-1", s + 1),
        value: format!("{kappa} - j"),
        threshold: kappa.scale(2) - HalfInt::from_int(s as i64 + 1),
    });
    let worst = bounds.iter().map(|b| ceil(b.threshold)).max().unwrap_or(0);
    let symbolic_from = worst.max(s as i64 + 2) as usize;

    let start = s.max(1);
    let direct: Vec<RankCheck> = (start..=symbolic_from)
        .map(|n| {
            let x = shifted(lambda, datum, n);
            RankCheck { n, inequality: inequality(&x), x_n: *x.last().expect("nonempty") }
        })
        .collect();
    let mut k_lambda = symbolic_from;
    for check in direct.iter().rev() {
        if !check.inequality {
            break;
        }
        k_lambda = check.n;
    }
    let premise = direct.iter().find(|c| c.n == k_lambda).is_some_and(|c| c.x_n < HalfInt::ZERO);

    let mut enumeration = Vec::new();
    for n in k_lambda..=k_lambda + 2 {
        let dn = datum.at_rank(n)?;
        let block = orbit_block(&lambda.resized(n), &dn, y)?;
        let p = block.p_indices().len();
        enumeration.push(Enumeration { n, pminus: block.len(), p, equal: p == block.len() });
    }
    Ok(KLambda { k_lambda, support: s, kappa, bounds, symbolic_from, direct, premise, enumeration })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liedata::LieType;

    fn hi(v: i64) -> HalfInt {
        HalfInt::from_int(v)
    }

    // the inequality at rank n, evaluated from the definitions
    fn oracle(lambda: &Weight, t: LieType, m: usize, n: usize) -> bool {
        let mut x = Vec::new();
        for j in (-(m as i64)..0).chain(1..=n as i64) {
            let raw = if j < 0 { lambda.head()[(j + m as i64) as usize] } else { lambda.tail().get(j as usize - 1).copied().unwrap_or(HalfInt::ZERO) };
            let delta = if j > 0 { lambda.level() } else { HalfInt::ZERO };
            x.push(raw - delta + rho_coord(t, m, j));
        }
        let last = x[x.len() - 1];
        x.iter().all(|&v| last <= v && last <= -v)
    }

    fn sample(t: LieType, m: usize, tail: &[i64]) -> (Weight, RootDatum) {
        let (h, d) = if t == LieType::A { (tail.first().copied().unwrap_or(0) + 1, 0) } else { (-1, 8) };
        let n = tail.len().max(1);
        let tl: Vec<HalfInt> = tail.iter().map(|&v| hi(v)).collect();
        (Weight::from_parts(&vec![hi(h); m], &tl, n, hi(d)), RootDatum::with_degenerate(t, m, n).unwrap())
    }

    #[test]
    fn zero_weight_certificate() {
        for t in LieType::ALL {
            let d = RootDatum::with_degenerate(t, 1, 1).unwrap();
            let k = find_k_lambda(&Weight::zero(1, 1, HalfInt::ZERO), &d, &ParabolicSpec::standard(&d)).unwrap();
            assert!(k.pass(), "{t}: {k:?}");
            assert_eq!(k.enumeration.len(), 3);
            assert_eq!(k.enumeration[0].n, k.k_lambda);
        }
    }

    #[test]
    fn certificate_matches_direct_evaluation() {
        for t in LieType::ALL {
            for m in 1..=2 {
                for tail in [vec![], vec![1], vec![2, 1], vec![3, 3, 1]] {
                    let (lam, d) = sample(t, m, &tail);
                    let k = find_k_lambda(&lam, &d, &ParabolicSpec::standard(&d)).unwrap();
                    for n in k.k_lambda..k.k_lambda + 8 {
                        assert!(oracle(&lam, t, m, n), "{t} {lam} n={n}");
                    }
                    if k.k_lambda > lam.tail_support().max(1) {
                        assert!(!oracle(&lam, t, m, k.k_lambda - 1), "{t} {lam} not minimal");
                    }
                    assert!(k.pass(), "{t} {lam}: {k:?}");
                }
            }
        }
    }

    #[test]
    fn premise_slope_is_minus_one() {
        let (lam, d) = sample(LieType::B, 1, &[2, 1]);
        let k = find_k_lambda(&lam, &d, &ParabolicSpec::standard(&d)).unwrap();
        let after: Vec<_> = k.direct.iter().filter(|c| c.n > k.support).collect();
        for w in after.windows(2) {
            assert_eq!(w[1].x_n, w[0].x_n - HalfInt::ONE);
        }
    }

    #[test]
    fn grows_with_partition_length() {
        for t in LieType::ALL {
            let ks: Vec<usize> = (0..5)
                .map(|len| {
                    let (lam, d) = sample(t, 1, &vec![1; len]);
                    find_k_lambda(&lam, &d, &ParabolicSpec::standard(&d)).unwrap().k_lambda
                })
                .collect();
            assert!(ks.windows(2).all(|w| w[0] <= w[1]), "{t}: {ks:?}");
            assert!(ks[4] > ks[0], "{t}: {ks:?}");
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let d = RootDatum::new(LieType::A, 1, 2).unwrap();
        let lam = Weight::from_parts(&[hi(0)], &[hi(0), hi(2)], 2, HalfInt::ZERO);
        assert!(matches!(find_k_lambda(&lam, &d, &ParabolicSpec::standard(&d)), Err(Error::NotDominant(_))));
    }
}
