//! Finitely supported matrices over the symbolic index set
//! `... < 2bar < 1bar < -1bar < ... < -mbar < 0bar < -m < ... < -1 < 1 < 2 < ...`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// An index of the basis of `V_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Idx {
    /// `i` for `i in {-m..-1} ∪ {1, 2, ...}`.
    Plain(i64),
    /// `ī`.
    Bar(i64),
    /// `0̄`.
    ZeroBar,
}

impl Idx {
    fn key(self) -> (u8, i64) {
        match self {
            Idx::Bar(i) if i > 0 => (0, -i),
            Idx::Bar(i) => (1, -i),
            Idx::ZeroBar => (2, 0),
            Idx::Plain(i) => (3, i),
        }
    }

    pub fn bar(self) -> Idx {
        match self {
            Idx::Plain(i) => Idx::Bar(i),
            Idx::Bar(i) => Idx::Plain(i),
            Idx::ZeroBar => Idx::ZeroBar,
        }
    }
}

impl Ord for Idx {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Idx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Idx::Plain(i) => write!(f, "{i}"),
            Idx::Bar(i) => write!(f, "bar({i})"),
            Idx::ZeroBar => write!(f, "bar(0)"),
        }
    }
}

impl Serialize for Idx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact rational matrix with finitely many nonzero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    entries: BTreeMap<(Idx, Idx), Rational64>,
}

impl SparseMatrix {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Elementary matrix `E_{rs}`.
    pub fn unit(r: Idx, s: Idx) -> Self {
        let mut m = Self::zero();
        m.entries.insert((r, s), Rational64::one());
        m
    }

    pub fn entry(&self, r: Idx, s: Idx) -> Rational64 {
        self.entries.get(&(r, s)).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Idx, Idx), &Rational64)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, r: Idx, s: Idx, v: Rational64) {
        let e = self.entries.entry((r, s)).or_insert_with(Rational64::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, s));
        }
    }

    pub fn scale(&self, c: Rational64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseMatrix { entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(a, b), &v) in &o.entries {
            r.add_entry(a, b, v);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-Rational64::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut by_row: BTreeMap<Idx, Vec<(Idx, Rational64)>> = BTreeMap::new();
        for (&(a, b), &v) in &o.entries {
            by_row.entry(a).or_default().push((b, v));
        }
        let mut r = Self::zero();
        for (&(i, k), &v) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, w) in row {
                    r.add_entry(i, j, v * w);
                }
            }
        }
        r
    }

    /// `[A, B] = AB - BA`.
    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Rational64 {
        self.entries
            .iter()
            .filter(|((a, b), _)| a == b)
            .map(|(_, v)| *v)
            .sum()
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix { entries: self.entries.iter().map(|(&(a, b), &v)| ((b, a), v)).collect() }
    }

    /// `Some(c)` when `self == c * other` (with `other` nonzero).
    pub fn ratio_to(&self, other: &Self) -> Option<Rational64> {
        let (&key, &w) = other.entries.iter().next()?;
        let c = self.entry(key.0, key.1) / w;
        (other.scale(c) == *self).then_some(c)
    }
}

impl Serialize for SparseMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|(&(a, b), v)| (a.to_string(), b.to_string(), v.to_string())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_order_matches_the_displayed_chain() {
        let chain = [
            Idx::Bar(2),
            Idx::Bar(1),
            Idx::Bar(-1),
            Idx::Bar(-2),
            Idx::ZeroBar,
            Idx::Plain(-2),
            Idx::Plain(-1),
            Idx::Plain(1),
            Idx::Plain(2),
        ];
        for w in chain.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
    }

    #[test]
    fn unit_products() {
        let a = SparseMatrix::unit(Idx::Plain(-1), Idx::Plain(1));
        let b = SparseMatrix::unit(Idx::Plain(1), Idx::Plain(-1));
        assert_eq!(a.mul(&b), SparseMatrix::unit(Idx::Plain(-1), Idx::Plain(-1)));
        let h = a.bracket(&b);
        assert_eq!(h.trace(), Rational64::zero());
        assert_eq!(h.entry(Idx::Plain(1), Idx::Plain(1)), -Rational64::one());
        assert_eq!(a.scale(Rational64::from_integer(3)).ratio_to(&a), Some(Rational64::from_integer(3)));
        assert_eq!(a.ratio_to(&b), None);
    }
}
