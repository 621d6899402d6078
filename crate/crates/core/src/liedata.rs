//! Root data and the explicit matrix realization of the Lie algebras of
//! types a, b, c, d built from a head diagram of size `m` and a tail of rank `n`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::sparse::{Idx, SparseMatrix};
use crate::weights::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LieType {
    A,
    B,
    C,
    D,
}

impl LieType {
    pub const ALL: [LieType; 4] = [LieType::A, LieType::B, LieType::C, LieType::D];

    /// Whether the Weyl group contains sign changes.
    pub fn has_signs(self) -> bool {
        self != LieType::A
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "a",
            LieType::B => "b",
            LieType::C => "c",
            LieType::D => "d",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(LieType::A),
            "b" => Ok(LieType::B),
            "c" => Ok(LieType::C),
            "d" => Ok(LieType::D),
            other => Err(Error::Parse { key: "type".into(), msg: format!("unknown type `{other}` (expected a, b, c or d)") }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RankSpec {
    pub m: usize,
    pub n: usize,
}

impl RankSpec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidRank(format!("need m >= 1 and n >= 1, got m={m}, n={n}")));
        }
        Ok(RankSpec { m, n })
    }

    /// Total number of coordinates `m + n`.
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    /// Position of index `i` in `(-m, ..., -1, 1, ..., n)`.
    pub fn position(&self, i: i64) -> usize {
        if i < 0 {
            (i + self.m as i64) as usize
        } else {
            self.m + i as usize - 1
        }
    }

    /// Index at a position, inverse of [`RankSpec::position`].
    pub fn index_at(&self, pos: usize) -> i64 {
        if pos < self.m {
            pos as i64 - self.m as i64
        } else {
            (pos - self.m) as i64 + 1
        }
    }
}

/// The ordered indices `{-m..-1} ∪ {1..n}` together with their barred mirrors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexSet {
    pub unbarred: Vec<i64>,
    pub barred: Vec<Idx>,
}

pub fn index_set(m: usize, n: usize) -> Result<IndexSet> {
    let rank = RankSpec::new(m, n)?;
    let unbarred: Vec<i64> = (0..rank.size()).map(|p| rank.index_at(p)).collect();
    let mut barred: Vec<Idx> = unbarred.iter().rev().map(|&i| Idx::Bar(i)).collect();
    barred.sort();
    barred.push(Idx::ZeroBar);
    Ok(IndexSet { unbarred, barred })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootLabel {
    /// `alpha_j = e_j - e_{j+1}`, `-m <= j <= -2`.
    Alpha(i64),
    /// `beta_x = e_{-1} - e_1`.
    BetaCross,
    /// `beta_r = e_r - e_{r+1}`.
    Beta(i64),
    /// `-e_{-m}` (type b).
    MinusEps,
    /// `-2 e_{-m}` (type c).
    MinusTwoEps,
    /// `-e_{-m} - e_{-m+1}`, or `-e_{-1} - e_1` when `m = 1` (type d).
    MinusEpsPair,
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLabel::Alpha(j) => write!(f, "alpha_{j}"),
            RootLabel::BetaCross => write!(f, "beta_x"),
            RootLabel::Beta(r) => write!(f, "beta_{r}"),
            RootLabel::MinusEps => write!(f, "-eps"),
            RootLabel::MinusTwoEps => write!(f, "-2eps"),
            RootLabel::MinusEpsPair => write!(f, "-eps-eps"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleRoot {
    pub label: RootLabel,
    /// Sparse coefficient vector over `{e_i}` as `(index, coefficient)`.
    pub coeffs: Vec<(i64, i64)>,
}

impl SimpleRoot {
    pub fn is_tail(&self) -> bool {
        matches!(self.label, RootLabel::Beta(_))
    }

    pub fn is_head(&self) -> bool {
        !matches!(self.label, RootLabel::Beta(_) | RootLabel::BetaCross)
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for &(i, c) in &self.coeffs {
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}e({i})"));
        }
        s
    }
}

/// `alpha^vee = h_alpha + k K`, with `h_alpha = sum_i cartan[i] E_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coroot {
    pub cartan: Vec<(i64, i64)>,
    pub k: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub m: usize,
    pub n: usize,
    pub degenerate: bool,
    pub simple_roots: Vec<SimpleRoot>,
    pub coroots: Vec<Coroot>,
}

impl RootDatum {
    /// Standard datum; type d needs `m >= 2`.
    pub fn new(lie_type: LieType, m: usize, n: usize) -> Result<Self> {
        if lie_type == LieType::D && m == 1 {
            return Err(Error::InvalidRank(
                "type d with m = 1 uses the degenerate diagram; request it explicitly".into(),
            ));
        }
        Self::with_degenerate(lie_type, m, n)
    }

    /// Like [`RootDatum::new`], accepting the degenerate `m = 1` diagram for type d.
    pub fn with_degenerate(lie_type: LieType, m: usize, n: usize) -> Result<Self> {
        let rank = RankSpec::new(m, n)?;
        let simple_roots = simple_roots_unchecked(lie_type, rank);
        let real = Realization::build(lie_type, rank);
        let coroots = simple_roots
            .iter()
            .map(|r| real.coroot(r).map(|(c, _)| c))
            .collect::<Result<Vec<_>>>()?;
        Ok(RootDatum { lie_type, m, n, degenerate: m == 1, simple_roots, coroots })
    }

    pub fn rank(&self) -> RankSpec {
        RankSpec { m: self.m, n: self.n }
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn beta_cross(&self) -> usize {
        self.simple_roots.iter().position(|r| r.label == RootLabel::BetaCross).expect("beta_x present")
    }

    /// Positions of the head roots, in diagram order.
    pub fn head_roots(&self) -> Vec<usize> {
        (0..self.num_simple()).filter(|&i| self.simple_roots[i].is_head()).collect()
    }

    /// `lambda(alpha_i^vee)` for the `i`-th simple root.
    pub fn pairing(&self, weight: &Weight, i: usize) -> HalfInt {
        let c = &self.coroots[i];
        let mut acc = weight.level() * c.k;
        for &(idx, v) in &c.cartan {
            acc += weight.get(idx) * v;
        }
        acc
    }

    /// `rho` with `rho(K) = 0`.
    pub fn rho(&self) -> Weight {
        rho(self.lie_type, self.m, self.n)
    }

    /// Same datum at another tail rank.
    pub fn at_rank(&self, n: usize) -> Result<Self> {
        Self::with_degenerate(self.lie_type, self.m, n)
    }

    /// Simple roots as dense vectors over positions `0..m+n`.
    pub fn dense_roots(&self) -> Vec<Vec<i64>> {
        let rank = self.rank();
        self.simple_roots
            .iter()
            .map(|r| {
                let mut v = vec![0; self.size()];
                for &(i, c) in &r.coeffs {
                    v[rank.position(i)] = c;
                }
                v
            })
            .collect()
    }
}

fn simple_roots_unchecked(t: LieType, rank: RankSpec) -> Vec<SimpleRoot> {
    let m = rank.m as i64;
    let n = rank.n as i64;
    let mut out = Vec::new();
    match t {
        LieType::A => {}
        LieType::B => out.push(SimpleRoot { label: RootLabel::MinusEps, coeffs: vec![(-m, -1)] }),
        LieType::C => out.push(SimpleRoot { label: RootLabel::MinusTwoEps, coeffs: vec![(-m, -2)] }),
        LieType::D => {
            let second = if m == 1 { 1 } else { -m + 1 };
            out.push(SimpleRoot { label: RootLabel::MinusEpsPair, coeffs: vec![(-m, -1), (second, -1)] })
        }
    }
    for j in -m..=-2 {
        out.push(SimpleRoot { label: RootLabel::Alpha(j), coeffs: vec![(j, 1), (j + 1, -1)] });
    }
    out.push(SimpleRoot { label: RootLabel::BetaCross, coeffs: vec![(-1, 1), (1, -1)] });
    for r in 1..n {
        out.push(SimpleRoot { label: RootLabel::Beta(r), coeffs: vec![(r, 1), (r + 1, -1)] });
    }
    out
}

/// Ordered simple roots: head roots per the diagram, then `beta_x`, then the tail.
pub fn simple_roots(t: LieType, m: usize, n: usize) -> Result<Vec<SimpleRoot>> {
    Ok(RootDatum::new(t, m, n)?.simple_roots)
}

/// A positive root vector with the root it is expected to carry.
#[derive(Clone, Debug, Serialize)]
pub struct RootVector {
    pub name: String,
    /// Sparse root over `{e_i}`.
    pub root: Vec<(i64, i64)>,
    pub matrix: SparseMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub m: usize,
    pub n: usize,
    /// `(i, E_i)` in index order.
    pub cartan: Vec<(i64, SparseMatrix)>,
    pub pos_root_vectors: Vec<RootVector>,
    pub j: SparseMatrix,
}

fn one() -> Rational64 {
    Rational64::one()
}

fn root_of(pairs: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut acc: std::collections::BTreeMap<i64, i64> = Default::default();
    for &(i, c) in pairs {
        *acc.entry(i).or_default() += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

impl Realization {
    fn build(t: LieType, rank: RankSpec) -> Self {
        let idx: Vec<i64> = (0..rank.size()).map(|p| rank.index_at(p)).collect();
        let p = Idx::Plain;
        let b = Idx::Bar;
        let cartan = idx
            .iter()
            .map(|&i| {
                let e = SparseMatrix::unit(p(i), p(i));
                let e = if t == LieType::A { e } else { e.sub(&SparseMatrix::unit(b(i), b(i))) };
                (i, e)
            })
            .collect();
        let mut vecs = Vec::new();
        for (x, &i) in idx.iter().enumerate() {
            for &j in &idx[x + 1..] {
                let m = if t == LieType::A {
                    SparseMatrix::unit(p(i), p(j))
                } else {
                    SparseMatrix::unit(p(i), p(j)).sub(&SparseMatrix::unit(b(j), b(i)))
                };
                vecs.push(RootVector { name: format!("E({i},{j})"), root: root_of(&[(i, 1), (j, -1)]), matrix: m });
            }
        }
        if t != LieType::A {
            for (x, &i) in idx.iter().enumerate() {
                let start = if t == LieType::C { x } else { x + 1 };
                for &j in &idx[start..] {
                    let m = match t {
                        LieType::C => SparseMatrix::unit(b(i), p(j)).add(&SparseMatrix::unit(b(j), p(i))),
                        _ => SparseMatrix::unit(b(i), p(j)).sub(&SparseMatrix::unit(b(j), p(i))),
                    };
                    vecs.push(RootVector {
                        name: format!("E(bar {i},{j})"),
                        root: root_of(&[(i, -1), (j, -1)]),
                        matrix: m,
                    });
                }
            }
        }
        if t == LieType::B {
            for &i in &idx {
                let m = SparseMatrix::unit(b(i), Idx::ZeroBar).sub(&SparseMatrix::unit(Idx::ZeroBar, p(i)));
                vecs.push(RootVector { name: format!("E(bar {i},bar 0)"), root: vec![(i, -1)], matrix: m });
            }
        }
        let mut j = SparseMatrix::zero();
        let tail = idx.iter().copied().filter(|&i| i > 0);
        if t == LieType::A {
            for r in tail {
                j.add_entry(p(r), p(r), -one());
            }
        } else {
            j.add_entry(Idx::ZeroBar, Idx::ZeroBar, one());
            for r in tail {
                j.add_entry(b(r), b(r), one());
            }
        }
        Realization { lie_type: t, m: rank.m, n: rank.n, cartan, pos_root_vectors: vecs, j }
    }

    /// `alpha(E_i)` read off from `[E_i, v]`; `None` if `v` is not an eigenvector.
    pub fn measured_root(&self, v: &SparseMatrix) -> Option<Vec<(i64, Rational64)>> {
        let mut out = Vec::new();
        for (i, h) in &self.cartan {
            let br = h.bracket(v);
            let c = if br.is_zero() { Rational64::zero() } else { br.ratio_to(v)? };
            if !c.is_zero() {
                out.push((*i, c));
            }
        }
        Some(out)
    }

    /// `true` iff `[h, v] = alpha(h) v` for all Cartan basis elements, with `alpha` the assigned root.
    pub fn verify_root_vector(&self, rv: &RootVector) -> bool {
        let expected: Vec<(i64, Rational64)> =
            rv.root.iter().map(|&(i, c)| (i, Rational64::from_integer(c))).collect();
        self.measured_root(&rv.matrix) == Some(expected)
    }

    /// Coroot of a simple root: `h = [x, x^T]` normalized to `alpha(h) = 2`,
    /// then corrected by `tr(J h)`. Also returns the root vector used.
    pub fn coroot(&self, root: &SimpleRoot) -> Result<(Coroot, SparseMatrix)> {
        let want = root_of(&root.coeffs);
        let rv = self
            .pos_root_vectors
            .iter()
            .find(|v| v.root == want)
            .ok_or_else(|| Error::InvalidRank(format!("no root vector for {}", root.label)))?;
        let x = &rv.matrix;
        let h = x.bracket(&x.transpose());
        let coeffs: Vec<(i64, Rational64)> =
            self.cartan.iter().map(|(i, _)| (*i, h.entry(Idx::Plain(*i), Idx::Plain(*i)))).collect();
        let rebuilt = coeffs.iter().fold(SparseMatrix::zero(), |acc, (i, c)| {
            acc.add(&self.cartan.iter().find(|(k, _)| k == i).unwrap().1.scale(*c))
        });
        if rebuilt != h {
            return Err(Error::InvalidRank(format!("[x, x^T] for {} is not in the Cartan", root.label)));
        }
        let alpha_h: Rational64 = root
            .coeffs
            .iter()
            .map(|&(i, c)| Rational64::from_integer(c) * coeffs.iter().find(|(k, _)| *k == i).unwrap().1)
            .sum();
        let norm = Rational64::from_integer(2) / alpha_h;
        let h_alpha = h.scale(norm);
        let k = self.j.mul(&h_alpha).trace();
        let to_int = |r: Rational64| -> Result<i64> {
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(Error::InvalidRank(format!("non-integral coroot coefficient {r}")))
            }
        };
        let cartan = coeffs
            .iter()
            .map(|(i, c)| Ok((*i, to_int(c * norm)?)))
            .filter(|r| !matches!(r, Ok((_, 0))))
            .collect::<Result<Vec<_>>>()?;
        Ok((Coroot { cartan, k: to_int(k)? }, h_alpha))
    }

    /// Basis of the realized algebra: Cartan elements, positive and negative root vectors.
    pub fn basis(&self) -> Vec<SparseMatrix> {
        let mut out: Vec<SparseMatrix> = self.cartan.iter().map(|(_, h)| h.clone()).collect();
        for v in &self.pos_root_vectors {
            out.push(v.matrix.clone());
            out.push(v.matrix.transpose());
        }
        out
    }
}

pub fn realize(t: LieType, m: usize, n: usize) -> Result<Realization> {
    Ok(Realization::build(t, RankSpec::new(m, n)?))
}

/// `tau(A, B) = tr([J, A] B)`.
pub fn cocycle_tau(a: &SparseMatrix, b: &SparseMatrix, j: &SparseMatrix) -> Rational64 {
    j.bracket(a).mul(b).trace()
}

/// The 2-cocycle condition `tau([a,b],c) + tau([b,c],a) + tau([c,a],b) = 0`.
pub fn cocycle_cyclic(a: &SparseMatrix, b: &SparseMatrix, c: &SparseMatrix, j: &SparseMatrix) -> bool {
    let t = cocycle_tau(&a.bracket(b), c, j) + cocycle_tau(&b.bracket(c), a, j) + cocycle_tau(&c.bracket(a), b, j);
    t.is_zero()
}

/// An element `A + k K` of `G ⊕ CK`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Central {
    pub a: SparseMatrix,
    pub k: Rational64,
}

/// `iota(A + kK) = A + (tr(JA) + k) K`.
pub fn iota(x: &Central, j: &SparseMatrix) -> Central {
    Central { a: x.a.clone(), k: x.k + j.mul(&x.a).trace() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IotaCheck {
    pub pass: bool,
    pub witness: Option<String>,
}

/// Checks `iota([x, y]) = [iota(x), iota(y)]`, where the left bracket is the
/// split one and the right bracket carries the cocycle.
pub fn iota_check(x: &Central, y: &Central, j: &SparseMatrix) -> IotaCheck {
    let split = Central { a: x.a.bracket(&y.a), k: Rational64::zero() };
    let lhs = iota(&split, j);
    let (ix, iy) = (iota(x, j), iota(y, j));
    let rhs = Central { a: ix.a.bracket(&iy.a), k: cocycle_tau(&ix.a, &iy.a, j) };
    if lhs == rhs {
        IotaCheck { pass: true, witness: None }
    } else {
        IotaCheck { pass: false, witness: Some(format!("K-parts differ: {} vs {}", lhs.k, rhs.k)) }
    }
}

/// `rho(E_j)`: `-m-1/2-j+delta_j` (b), `-m-1-j+delta_j` (c), `-m-j+delta_j` (a, d).
pub fn rho_coord(t: LieType, m: usize, j: i64) -> HalfInt {
    let delta = if j > 0 { 1 } else { 0 };
    let base = HalfInt::from_int(-(m as i64) - j + delta);
    match t {
        LieType::B => base - HalfInt::HALF,
        LieType::C => base - HalfInt::ONE,
        LieType::A | LieType::D => base,
    }
}

pub fn rho(t: LieType, m: usize, n: usize) -> Weight {
    let rank = RankSpec { m, n };
    let coords = (0..m + n).map(|p| rho_coord(t, m, rank.index_at(p))).collect();
    Weight::new(m, coords, HalfInt::ZERO)
}
