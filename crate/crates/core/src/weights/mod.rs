//! Integral weights, parabolic data, dominance, the partial order and truncation.

mod character;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use character::{truncate_character, verma_character, Character, DEFAULT_DEPTH};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::liedata::{LieType, RankSpec, RootDatum};

/// `mu(E_i)` for `i` in `(-m, ..., -1, 1, ..., n)` and the level `mu(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    m: usize,
    coords: Vec<HalfInt>,
    level: HalfInt,
}

impl Weight {
    pub fn new(m: usize, coords: Vec<HalfInt>, level: HalfInt) -> Self {
        assert!(coords.len() > m, "weight needs at least one tail coordinate");
        Weight { m, coords, level }
    }

    pub fn zero(m: usize, n: usize, level: HalfInt) -> Self {
        Weight::new(m, vec![HalfInt::ZERO; m + n], level)
    }

    /// Builds a weight from integer head and tail values given doubled.
    pub fn from_parts(head: &[HalfInt], tail: &[HalfInt], n: usize, level: HalfInt) -> Self {
        let mut coords = head.to_vec();
        coords.extend_from_slice(tail);
        coords.resize(head.len() + n, HalfInt::ZERO);
        Weight::new(head.len(), coords, level)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.coords.len() - self.m
    }

    pub fn rank(&self) -> RankSpec {
        RankSpec { m: self.m, n: self.n() }
    }

    pub fn level(&self) -> HalfInt {
        self.level
    }

    pub fn coords(&self) -> &[HalfInt] {
        &self.coords
    }

    pub fn head(&self) -> &[HalfInt] {
        &self.coords[..self.m]
    }

    pub fn tail(&self) -> &[HalfInt] {
        &self.coords[self.m..]
    }

    pub fn get(&self, i: i64) -> HalfInt {
        self.coords[self.rank().position(i)]
    }

    pub fn set(&mut self, i: i64, v: HalfInt) {
        let p = self.rank().position(i);
        self.coords[p] = v;
    }

    pub fn tilde(&self) -> TildeCoords {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(p, &c)| if p >= self.m { c - self.level } else { c })
            .collect();
        TildeCoords { m: self.m, coords, level: self.level }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank());
        let coords = self.coords.iter().zip(&o.coords).map(|(&a, &b)| a + b).collect();
        Weight::new(self.m, coords, self.level + o.level)
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank());
        let coords = self.coords.iter().zip(&o.coords).map(|(&a, &b)| a - b).collect();
        Weight::new(self.m, coords, self.level - o.level)
    }

    /// Subtracts an integer combination of `e_i` given as a dense vector.
    pub fn sub_dense(&self, v: &[i64]) -> Weight {
        let coords = self.coords.iter().zip(v).map(|(&a, &b)| a - HalfInt::from_int(b)).collect();
        Weight::new(self.m, coords, self.level)
    }

    /// Zero-extends or cuts the tail to length `n`.
    pub fn resized(&self, n: usize) -> Weight {
        let mut coords = self.coords.clone();
        coords.resize(self.m + n, HalfInt::ZERO);
        Weight::new(self.m, coords, self.level)
    }

    /// Number of nonzero tail entries.
    pub fn tail_support(&self) -> usize {
        self.tail().iter().rposition(|c| *c != HalfInt::ZERO).map_or(0, |p| p + 1)
    }
}

fn fmt_list(v: &[HalfInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "head:{} tail:{} d:{}", fmt_list(self.head()), fmt_list(self.tail()), self.level)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Weight", 3)?;
        st.serialize_field("head", self.head())?;
        st.serialize_field("tail", self.tail())?;
        st.serialize_field("d", &self.level)?;
        st.end()
    }
}

/// `mu~_i = mu(E_i - delta_i K)`, together with the level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TildeCoords {
    pub m: usize,
    pub coords: Vec<HalfInt>,
    pub level: HalfInt,
}

impl TildeCoords {
    pub fn to_weight(&self) -> Weight {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(p, &c)| if p >= self.m { c + self.level } else { c })
            .collect();
        Weight::new(self.m, coords, self.level)
    }
}

/// The parabolic subset `Y`: all tail roots, never `beta_x`, and a chosen set of head roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSpec {
    head: BTreeSet<usize>,
}

impl ParabolicSpec {
    /// `Y` from head-root positions (indices into the simple-root list, all before `beta_x`).
    pub fn new(datum: &RootDatum, head: impl IntoIterator<Item = usize>) -> Result<Self> {
        let bx = datum.beta_cross();
        let head: BTreeSet<usize> = head.into_iter().collect();
        if let Some(&bad) = head.iter().find(|&&i| i >= bx) {
            let what = if bad == bx { "beta_x cannot lie in Y".to_string() } else { format!("index {bad} is not a head root") };
            return Err(Error::InvalidParabolic(what));
        }
        Ok(ParabolicSpec { head })
    }

    /// Validates an arbitrary subset of simple-root positions.
    pub fn from_roots(datum: &RootDatum, roots: &BTreeSet<usize>) -> Result<Self> {
        let bx = datum.beta_cross();
        if roots.contains(&bx) {
            return Err(Error::InvalidParabolic("beta_x cannot lie in Y".into()));
        }
        if let Some(r) = (bx + 1..datum.num_simple()).find(|r| !roots.contains(r)) {
            return Err(Error::InvalidParabolic(format!("tail root {} missing from Y", datum.simple_roots[r].label)));
        }
        ParabolicSpec::new(datum, roots.iter().copied().filter(|&i| i < bx))
    }

    /// `Y = Pi \ {beta_x}`.
    pub fn standard(datum: &RootDatum) -> Self {
        ParabolicSpec { head: (0..datum.beta_cross()).collect() }
    }

    /// `Y` = tail roots only.
    pub fn tail_only() -> Self {
        ParabolicSpec { head: BTreeSet::new() }
    }

    /// Every admissible `Y` for the datum.
    pub fn all(datum: &RootDatum) -> Vec<Self> {
        let h = datum.beta_cross();
        (0u64..1 << h)
            .map(|mask| ParabolicSpec { head: (0..h).filter(|i| mask >> i & 1 == 1).collect() })
            .collect()
    }

    pub fn head(&self) -> &BTreeSet<usize> {
        &self.head
    }

    pub fn contains(&self, datum: &RootDatum, i: usize) -> bool {
        let bx = datum.beta_cross();
        if i < bx {
            self.head.contains(&i)
        } else {
            i > bx
        }
    }

    /// Positions of the roots of `Y` in the datum.
    pub fn roots(&self, datum: &RootDatum) -> Vec<usize> {
        (0..datum.num_simple()).filter(|&i| self.contains(datum, i)).collect()
    }

    pub fn labels(&self, datum: &RootDatum) -> Vec<String> {
        self.roots(datum).into_iter().map(|i| datum.simple_roots[i].label.to_string()).collect()
    }

    /// Parses `standard`, `tail`, or a comma-separated list of head-root labels.
    pub fn parse(datum: &RootDatum, s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "standard" | "" => return Ok(Self::standard(datum)),
            "tail" => return Ok(Self::tail_only()),
            _ => {}
        }
        let mut head = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let pos = datum
                .simple_roots
                .iter()
                .position(|r| r.label.to_string() == part)
                .ok_or_else(|| Error::Parse { key: "y".into(), msg: format!("unknown simple root `{part}`") })?;
            if pos > datum.beta_cross() {
                continue;
            }
            head.push(pos);
        }
        Self::new(datum, head)
    }
}

fn check_shape(w: &Weight, datum: &RootDatum) -> bool {
    w.m() == datum.m && w.n() == datum.n
}

/// Membership in `X_n`.
pub fn is_integral(w: &Weight, datum: &RootDatum) -> bool {
    check_shape(w, datum)
        && w.tail().iter().all(|c| c.is_integer())
        && (0..datum.num_simple()).all(|i| datum.pairing(w, i).is_integer())
}

/// Membership in `P^-_n`.
pub fn is_pminus(w: &Weight, datum: &RootDatum, y: &ParabolicSpec) -> bool {
    is_integral(w, datum) && y.roots(datum).into_iter().all(|i| datum.pairing(w, i) >= HalfInt::ZERO)
}

/// Membership in `P_n`.
pub fn is_p(w: &Weight, datum: &RootDatum, y: &ParabolicSpec) -> bool {
    is_pminus(w, datum, y) && w.tail().iter().all(|&c| c >= HalfInt::ZERO)
}

/// `(mu + rho)(alpha^vee) >= 0` for every simple root.
pub fn is_dominant(w: &Weight, datum: &RootDatum) -> bool {
    let shifted = w.add(&datum.rho());
    (0..datum.num_simple()).all(|i| datum.pairing(&shifted, i) >= HalfInt::ZERO)
}

/// Dominant with no vanishing `(mu + rho)(alpha^vee)`.
pub fn is_regular_dominant(w: &Weight, datum: &RootDatum) -> bool {
    let shifted = w.add(&datum.rho());
    (0..datum.num_simple()).all(|i| datum.pairing(&shifted, i) > HalfInt::ZERO)
}

/// Zero-extends `lambda in X_k` to rank `n`.
pub fn embed(lambda: &Weight, datum_k: &RootDatum, n: usize) -> Result<Weight> {
    if !is_integral(lambda, datum_k) {
        return Err(Error::NotIntegral(lambda.to_string()));
    }
    if n < datum_k.n {
        return Err(Error::RankMismatch(format!("cannot embed rank {} into rank {n}", datum_k.n)));
    }
    Ok(lambda.resized(n))
}

/// `Some(mu)` at rank `k` when `mu_j = 0` for all `j > k`.
pub fn truncate_weight(mu: &Weight, k: usize) -> Option<Weight> {
    if k >= mu.n() {
        return Some(mu.clone());
    }
    mu.tail()[k..].iter().all(|c| *c == HalfInt::ZERO).then(|| mu.resized(k))
}

/// Coefficients of `v` (dense over `e_i`) in the simple-root basis, if it lies in their span.
pub fn simple_root_coeffs(v: &[Rational64], datum: &RootDatum) -> Option<Vec<Rational64>> {
    let roots = datum.dense_roots();
    let r = roots.len();
    let rows = v.len();
    // augmented matrix: columns are simple roots
    let mut a: Vec<Vec<Rational64>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational64> = roots.iter().map(|root| Rational64::from_integer(root[i])).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col];
                for j in 0..=r {
                    let t = a[row][j] * f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if (row..rows).any(|i| !a[i][r].is_zero()) {
        return None;
    }
    let mut out = vec![Rational64::zero(); r];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = a[i][r];
    }
    Some(out)
}

/// `lambda - mu` in the simple-root basis, when integral.
pub fn height_vector(mu: &Weight, lambda: &Weight, datum: &RootDatum) -> Result<Option<Vec<i64>>> {
    if mu.level() != lambda.level() {
        return Err(Error::LevelMismatch(mu.level().to_string(), lambda.level().to_string()));
    }
    if mu.rank() != lambda.rank() || mu.rank() != datum.rank() {
        return Err(Error::RankMismatch(format!("{mu} vs {lambda}")));
    }
    let diff: Vec<Rational64> =
        lambda.sub(mu).coords().iter().map(|c| Rational64::new(c.doubled(), 2)).collect();
    Ok(simple_root_coeffs(&diff, datum)
        .filter(|c| c.iter().all(|x| x.is_integer()))
        .map(|c| c.into_iter().map(|x| x.to_integer()).collect()))
}

/// `mu <= lambda`: `lambda - mu` is a nonnegative integral combination of simple roots.
pub fn leq(mu: &Weight, lambda: &Weight, datum: &RootDatum) -> Result<bool> {
    Ok(height_vector(mu, lambda, datum)?.is_some_and(|c| c.iter().all(|&x| x >= 0)))
}

/// A parsed weight specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    pub lie_type: Option<LieType>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub head: Option<Vec<HalfInt>>,
    pub tail: Vec<HalfInt>,
    pub level: HalfInt,
}

fn parse_list(key: &str, v: &str) -> Result<Vec<HalfInt>> {
    let inner = v
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse { key: key.into(), msg: format!("expected a bracketed list, got `{v}`") })?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<HalfInt>().map_err(|_| Error::Parse { key: key.into(), msg: format!("bad value `{s}`") }))
        .collect()
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim().parse().map_err(|_| Error::Parse { key: key.into(), msg: format!("expected a positive integer, got `{v}`") })
}

impl WeightSpec {
    /// Parses `type:b m:1 n:2 head:[-1/2] tail:[2,1] d:0`; every key is optional.
    pub fn parse(s: &str) -> Result<Self> {
        let mut spec = WeightSpec { lie_type: None, m: None, n: None, head: None, tail: Vec::new(), level: HalfInt::ZERO };
        for tok in s.split_whitespace() {
            let (k, v) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse { key: tok.into(), msg: "expected key:value".into() })?;
            match k {
                "type" => spec.lie_type = Some(v.parse()?),
                "m" => spec.m = Some(parse_usize(k, v)?),
                "n" => spec.n = Some(parse_usize(k, v)?),
                "head" => spec.head = Some(parse_list(k, v)?),
                "tail" => spec.tail = parse_list(k, v)?,
                "d" => {
                    spec.level = v.parse().map_err(|_| Error::Parse { key: "d".into(), msg: format!("bad level `{v}`") })?
                }
                other => return Err(Error::Parse { key: other.into(), msg: "unknown key".into() }),
            }
        }
        Ok(spec)
    }

    /// The weight at head size `m` and rank `n`; missing head entries are zero.
    pub fn weight(&self, m: usize, n: usize) -> Result<Weight> {
        let head = self.head.clone().unwrap_or_else(|| vec![HalfInt::ZERO; m]);
        if head.len() != m {
            return Err(Error::Parse { key: "head".into(), msg: format!("expected {m} entries, got {}", head.len()) });
        }
        if self.tail.len() > n {
            return Err(Error::Parse { key: "tail".into(), msg: format!("{} entries exceed n = {n}", self.tail.len()) });
        }
        Ok(Weight::from_parts(&head, &self.tail, n, self.level))
    }
}
