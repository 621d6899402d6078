//! Block-level homological data: graded decomposition, Ext and Cartan matrices,
//! their certificates, truncation stability, `k_lambda`, and dual-block labels.

mod dual;
mod klambda;
mod stability;

use std::collections::BTreeMap;

use serde::Serialize;

pub use dual::{dual_block_labels, trunc_prime, DualBlockLabels, TruncPrimeCheck};
pub use klambda::{find_k_lambda, Enumeration, KLambda, KLambdaBound, RankCheck};
pub use stability::{truncation_stability, StabilityReport};

use crate::error::{Error, Result};
use crate::klengine::BlockKl;
use crate::poly::LaurentPoly;
use crate::polymatrix::PolyMatrix;
use crate::weights::{height_vector, verma_character, Weight};
use crate::weylgroup::BlockPoset;

/// `D(q)`, `Ext(Delta, L)`, `C(q)` and `E(q)` over `Lambda^lambda_n`, in block order.
#[derive(Clone, Debug, Serialize)]
pub struct GradedMatrices {
    pub labels: Vec<Weight>,
    pub lengths: Vec<usize>,
    /// `D_{mu,gamma} = sum_i [Delta(mu) : L(gamma)<i>] q^i`.
    pub d: PolyMatrix,
    /// `X_{mu,gamma} = sum_i dim Ext^i(Delta(mu), L(gamma)) q^i`.
    pub ext_delta_simple: PolyMatrix,
    /// `C = D^T D`, the graded Cartan matrix.
    pub c: PolyMatrix,
    /// `E = X^T X`, the Hilbert matrix of the Ext algebra.
    pub e: PolyMatrix,
}

impl GradedMatrices {
    pub fn compute(block: &BlockPoset) -> Result<Self> {
        let kl = BlockKl::new(block)?;
        let idx = block.p_indices();
        let d = kl.decomposition_matrix(&idx);
        let x = kl.ext_matrix(&idx);
        let c = d.transpose().mul(&d);
        let e = x.transpose().mul(&x);
        Ok(GradedMatrices {
            labels: idx.iter().map(|&i| block.elements[i].weight.clone()).collect(),
            lengths: idx.iter().map(|&i| block.elements[i].length).collect(),
            d,
            ext_delta_simple: x,
            c,
            e,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn position(&self, w: &Weight) -> Result<usize> {
        self.labels.iter().position(|l| l == w).ok_or_else(|| Error::RankMismatch(format!("{w} is not in the block")))
    }
}

fn coeff_list(p: &LaurentPoly) -> Vec<u64> {
    match p.degree() {
        None => Vec::new(),
        Some(deg) => (0..=deg).map(|i| p.coeff(i).max(0) as u64).collect(),
    }
}

/// `dim Ext^i(Delta(mu), L(gamma))` for `i = 0, 1, ...`.
pub fn ext_delta_simple(m: &GradedMatrices, mu: &Weight, gamma: &Weight) -> Result<Vec<u64>> {
    Ok(coeff_list(m.ext_delta_simple.get(m.position(mu)?, m.position(gamma)?)))
}

/// `dim Ext^j(L(mu), L(gamma))` for `j = 0, 1, ...`.
pub fn ext_simple_simple(m: &GradedMatrices, mu: &Weight, gamma: &Weight) -> Result<Vec<u64>> {
    Ok(coeff_list(m.e.get(m.position(mu)?, m.position(gamma)?)))
}

/// Graded Cartan matrix of a regular block.
pub fn graded_cartan(block: &BlockPoset) -> Result<PolyMatrix> {
    Ok(GradedMatrices::compute(block)?.c)
}

/// Monomials whose degree has the wrong parity against the length difference.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub monomials_checked: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl ParityReport {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }

    fn scan(&mut self, name: &str, mat: &PolyMatrix, lengths: &[usize]) {
        for (i, row) in mat.rows().iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let want = (lengths[i] + lengths[j]) % 2;
                for (e, _) in p.terms() {
                    self.monomials_checked += 1;
                    if e.rem_euclid(2) as usize != want {
                        self.violations += 1;
                        if self.first_violation.is_none() {
                            self.first_violation = Some(format!("{name}[{i}][{j}] has q^{e}"));
                        }
                    }
                }
            }
        }
    }
}

pub fn parity_certificate(m: &GradedMatrices) -> ParityReport {
    let mut r = ParityReport::default();
    r.scan("D", &m.d, &m.lengths);
    r.scan("Ext(Delta,L)", &m.ext_delta_simple, &m.lengths);
    r.scan("C", &m.c, &m.lengths);
    r.scan("E", &m.e, &m.lengths);
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BggReport {
    pub d_unitriangular: bool,
    pub ext_unitriangular: bool,
    pub symmetric: bool,
    pub unit_diagonal: bool,
    pub nonnegative: bool,
    /// `C(1) = D(1)^T D(1)` recomputed over the integers.
    pub reciprocity_at_one: bool,
}

impl BggReport {
    pub fn pass(&self) -> bool {
        self.d_unitriangular
            && self.ext_unitriangular
            && self.symmetric
            && self.unit_diagonal
            && self.nonnegative
            && self.reciprocity_at_one
    }
}

fn int_mul_tn(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[k][i] * a[k][j]).sum()).collect()).collect()
}

pub fn bgg_certificate(m: &GradedMatrices) -> BggReport {
    let n = m.dim();
    BggReport {
        d_unitriangular: m.d.is_upper_unitriangular(),
        ext_unitriangular: m.ext_delta_simple.transpose().is_upper_unitriangular(),
        symmetric: m.c.is_symmetric(),
        unit_diagonal: (0..n).all(|i| m.c.get(i, i).coeff(0) == 1),
        nonnegative: m.c.rows().iter().flatten().all(LaurentPoly::has_nonnegative_coeffs),
        reciprocity_at_one: m.c.eval_one() == int_mul_tn(&m.d.eval_one()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    /// First entry where `C(q) E(-q)^T` differs from the identity.
    pub c_e_defect: Option<(usize, usize)>,
    /// The same for `E(-q)^T C(q)`.
    pub e_c_defect: Option<(usize, usize)>,
    /// First entry where `D(q) X(-q)^T` differs from the identity.
    pub inversion_defect: Option<(usize, usize)>,
    pub e_symmetric: bool,
    pub e_nonnegative: bool,
    pub first_offending_entry: Option<String>,
}

impl KoszulReport {
    pub fn pass(&self) -> bool {
        self.c_e_defect.is_none()
            && self.e_c_defect.is_none()
            && self.inversion_defect.is_none()
            && self.e_symmetric
            && self.e_nonnegative
    }
}

pub fn koszulity_certificate(m: &GradedMatrices) -> KoszulReport {
    let em = m.e.neg_var().transpose();
    let ce = m.c.mul(&em);
    let ec = em.mul(&m.c);
    let c_e_defect = ce.identity_defect();
    let first_offending_entry = c_e_defect.map(|(i, j)| format!("(C E(-q)^T)[{i}][{j}] = {}", ce.get(i, j)));
    KoszulReport {
        c_e_defect,
        e_c_defect: ec.identity_defect(),
        inversion_defect: m.d.mul(&m.ext_delta_simple.neg_var().transpose()).identity_defect(),
        e_symmetric: m.e.is_symmetric(),
        e_nonnegative: m.e.rows().iter().flatten().all(LaurentPoly::has_nonnegative_coeffs),
        first_offending_entry,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub parity: ParityReport,
    pub bgg: BggReport,
    pub koszul: KoszulReport,
}

impl Certificates {
    pub fn compute(m: &GradedMatrices) -> Self {
        Certificates { parity: parity_certificate(m), bgg: bgg_certificate(m), koszul: koszulity_certificate(m) }
    }

    pub fn pass(&self) -> bool {
        self.parity.pass() && self.bgg.pass() && self.koszul.pass()
    }
}

/// `ch L` from inverting `D(1)`, checked against truncated Verma characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterReport {
    pub depth: usize,
    pub weights_checked: usize,
    pub negative_multiplicities: usize,
    pub alternating_inverse: bool,
    pub reconstructs_verma: bool,
}

impl CharacterReport {
    pub fn pass(&self) -> bool {
        self.negative_multiplicities == 0 && self.alternating_inverse && self.reconstructs_verma
    }
}

/// Within the window of weights at height at most `depth` below the anchor:
/// `ch L(gamma) = sum_mu (D(1)^{-1})_{gamma,mu} ch Delta(mu)` must be nonnegative and
/// `sum_gamma D(1)_{mu,gamma} ch L(gamma)` must give back `ch Delta(mu)`.
pub fn character_consistency(block: &BlockPoset, m: &GradedMatrices, depth: usize) -> Result<CharacterReport> {
    let n = m.dim();
    let inv = m.d.inverse_upper_unitriangular().expect("D is unitriangular");
    let inv1 = inv.eval_one();
    let alternating_inverse = (0..n).all(|i| {
        (0..n).all(|j| {
            let v = inv1[i][j];
            v == 0 || (v > 0) == ((m.lengths[i] + m.lengths[j]) % 2 == 0)
        })
    });
    let mut verma: Vec<BTreeMap<Weight, i64>> = Vec::with_capacity(n);
    for mu in &m.labels {
        let h: i64 = height_vector(mu, &block.anchor, &block.datum)?.map(|c| c.iter().sum()).unwrap_or(i64::MAX);
        let mut map = BTreeMap::new();
        if h <= depth as i64 {
            let ch = verma_character(mu, &block.datum, &block.y, depth - h as usize)?;
            for (w, c) in ch.mults {
                map.insert(w, c as i64);
            }
        }
        verma.push(map);
    }
    let mut simple: Vec<BTreeMap<Weight, i64>> = vec![BTreeMap::new(); n];
    for (g, target) in simple.iter_mut().enumerate() {
        for (mu, ch) in verma.iter().enumerate() {
            let c = inv1[g][mu];
            if c != 0 {
                for (w, v) in ch {
                    *target.entry(w.clone()).or_default() += c * v;
                }
            }
        }
    }
    let d1 = m.d.eval_one();
    let mut reconstructs_verma = true;
    for (mu, ch) in verma.iter().enumerate() {
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (g, s) in simple.iter().enumerate() {
            if d1[mu][g] != 0 {
                for (w, v) in s {
                    *acc.entry(w.clone()).or_default() += d1[mu][g] * v;
                }
            }
        }
        acc.retain(|_, v| *v != 0);
        reconstructs_verma &= acc == *ch;
    }
    let weights_checked = simple.iter().map(BTreeMap::len).sum();
    let negative_multiplicities = simple.iter().flat_map(|s| s.values()).filter(|&&v| v < 0).count();
    Ok(CharacterReport { depth, weights_checked, negative_multiplicities, alternating_inverse, reconstructs_verma })
}
