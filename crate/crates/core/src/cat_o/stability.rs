use serde::Serialize;

use super::GradedMatrices;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::weights::{embed, is_p, is_regular_dominant, ParabolicSpec, Weight};
use crate::weylgroup::orbit_block;
use crate::liedata::RootDatum;

/// Comparison of the rank-`n` block restricted to `Lambda^lambda_k` with the rank-`k` block.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub lambda: Weight,
    pub k: usize,
    pub n: usize,
    /// `Lambda^lambda_k`, in rank-`k` block order.
    pub labels: Vec<Weight>,
    /// Rank-`n` labels whose tail vanishes beyond `k` are exactly the embedded rank-`k` labels.
    pub labels_match: bool,
    pub d_equal: Vec<Vec<bool>>,
    pub c_equal: Vec<Vec<bool>>,
    /// Rank-`n` coefficient at least the rank-`k` coefficient, degree by degree.
    pub e_dominates: Vec<Vec<bool>>,
    pub e_equal: Vec<Vec<bool>>,
    pub d_pass: bool,
    pub c_pass: bool,
    pub e_pass: bool,
    pub e_all_equal: bool,
}

impl StabilityReport {
    pub fn pass(&self) -> bool {
        self.labels_match && self.d_pass && self.c_pass && self.e_pass
    }
}

fn dominates(big: &LaurentPoly, small: &LaurentPoly) -> bool {
    small.terms().all(|(e, c)| big.coeff(e) >= c)
}

fn table(n: usize, f: impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
}

/// Computes the blocks of `lambda in P_k` at ranks `k = lambda.n()` and `n`, and compares
/// `D`, `C` (entrywise equality) and `E` (entrywise inequality) on `Lambda^lambda_k`.
pub fn truncation_stability(lambda: &Weight, datum_k: &RootDatum, y: &ParabolicSpec, n: usize) -> Result<StabilityReport> {
    let k = datum_k.n;
    if lambda.n() != k {
        return Err(Error::RankMismatch(format!("{lambda} is not a rank {k} weight")));
    }
    if n < k {
        return Err(Error::RankMismatch(format!("stability needs k <= n, got k = {k}, n = {n}")));
    }
    if !is_p(lambda, datum_k, y) {
        return Err(Error::NotParabolicDominant(lambda.to_string()));
    }
    if !is_regular_dominant(lambda, datum_k) {
        return Err(Error::SingularAnchor(lambda.to_string()));
    }
    let small = GradedMatrices::compute(&orbit_block(lambda, datum_k, y)?)?;
    let datum_n = datum_k.at_rank(n)?;
    let big = GradedMatrices::compute(&orbit_block(&embed(lambda, datum_k, n)?, &datum_n, y)?)?;

    let embedded: Vec<Weight> = small.labels.iter().map(|w| w.resized(n)).collect();
    let mut kept: Vec<&Weight> = big.labels.iter().filter(|w| w.tail()[k..].iter().all(|c| c.doubled() == 0)).collect();
    kept.sort();
    let mut want: Vec<&Weight> = embedded.iter().collect();
    want.sort();
    let labels_match = kept == want;
    let pos: Vec<Option<usize>> = embedded.iter().map(|w| big.labels.iter().position(|l| l == w)).collect();

    let dim = small.dim();
    let entry = |m: &crate::polymatrix::PolyMatrix, i: usize, j: usize| -> Option<LaurentPoly> {
        Some(m.get(pos[i]?, pos[j]?).clone())
    };
    let d_equal = table(dim, |i, j| entry(&big.d, i, j).as_ref() == Some(small.d.get(i, j)));
    let c_equal = table(dim, |i, j| entry(&big.c, i, j).as_ref() == Some(small.c.get(i, j)));
    let e_dominates = table(dim, |i, j| entry(&big.e, i, j).is_some_and(|p| dominates(&p, small.e.get(i, j))));
    let e_equal = table(dim, |i, j| entry(&big.e, i, j).as_ref() == Some(small.e.get(i, j)));
    let all = |t: &Vec<Vec<bool>>| t.iter().flatten().all(|&b| b);
    Ok(StabilityReport {
        lambda: lambda.clone(),
        k,
        n,
        labels: small.labels.clone(),
        labels_match,
        d_pass: all(&d_equal),
        c_pass: all(&c_equal),
        e_pass: all(&e_dominates),
        e_all_equal: all(&e_equal),
        d_equal,
        c_equal,
        e_dominates,
        e_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfint::HalfInt;
    use crate::liedata::LieType;

    fn regular(t: LieType) -> (Weight, RootDatum) {
        let d = RootDatum::with_degenerate(t, 1, 2).unwrap();
        let (h, lv) = if t == LieType::A { (1, 0) } else { (-1, 6) };
        (Weight::from_parts(&[HalfInt::from_int(h)], &[HalfInt::ONE], 2, HalfInt::from_int(lv)), d)
    }

    #[test]
    fn equal_ranks_are_trivially_stable() {
        let (lam, d) = regular(LieType::A);
        let r = truncation_stability(&lam, &d, &ParabolicSpec::standard(&d), 2).unwrap();
        assert!(r.pass() && r.e_all_equal);
    }

    #[test]
    fn d_and_c_restrict_exactly() {
        for t in LieType::ALL {
            let (lam, d) = regular(t);
            let r = truncation_stability(&lam, &d, &ParabolicSpec::standard(&d), 3).unwrap();
            assert!(r.pass(), "{t}: {r:?}");
            assert_eq!(r.labels.len(), r.d_equal.len());
        }
    }

    #[test]
    fn dominates_compares_coefficientwise() {
        let p = |s: &str| LaurentPoly::parse(s).unwrap();
        assert!(dominates(&p("1+2q^2"), &p("1+q^2")));
        assert!(!dominates(&p("1+q^2"), &p("q")));
        assert!(dominates(&p("q"), &p("0")));
    }

    #[test]
    fn rejects_weights_outside_p() {
        let d = RootDatum::new(LieType::A, 1, 2).unwrap();
        let lam = Weight::from_parts(&[HalfInt::from_int(-3)], &[HalfInt::from_int(-1), HalfInt::from_int(-2)], 2, HalfInt::ZERO);
        assert!(matches!(
            truncation_stability(&lam, &d, &ParabolicSpec::standard(&d), 3),
            Err(Error::NotParabolicDominant(_))
        ));
    }
}
