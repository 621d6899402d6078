//! Dense square matrices of Laurent polynomials.

use rayon::prelude::*;
use serde::Serialize;

use crate::poly::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PolyMatrix {
    rows: Vec<Vec<LaurentPoly>>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix { rows: vec![vec![LaurentPoly::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == rows.len()), "matrix must be square");
        PolyMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.rows[i][j] = p;
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        PolyMatrix { rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect()).collect() }
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly + Sync) -> Self {
        PolyMatrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    /// `q -> -q` entrywise.
    pub fn neg_var(&self) -> Self {
        self.map(LaurentPoly::neg_var)
    }

    /// Restriction to the listed indices, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        PolyMatrix { rows: idx.iter().map(|&i| idx.iter().map(|&j| self.rows[i][j].clone()).collect()).collect() }
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        let n = self.dim();
        assert_eq!(n, o.dim());
        let rows = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![LaurentPoly::zero(); n];
                for (k, a) in self.rows[i].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in o.rows[k].iter().enumerate() {
                        if !b.is_zero() {
                            row[j] += &(a * b);
                        }
                    }
                }
                row
            })
            .collect();
        PolyMatrix { rows }
    }

    pub fn eval_one(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.iter().map(LaurentPoly::eval_one).collect()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    /// First `(i, j)` where the matrix differs from the identity.
    pub fn identity_defect(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| if i == j { !self.rows[i][j].is_one() } else { !self.rows[i][j].is_zero() })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| self.rows[i][i].is_one() && (0..i).all(|j| self.rows[i][j].is_zero()))
    }

    /// Inverse of an upper unitriangular matrix by back substitution.
    pub fn inverse_upper_unitriangular(&self) -> Option<PolyMatrix> {
        if !self.is_upper_unitriangular() {
            return None;
        }
        let n = self.dim();
        let mut inv = PolyMatrix::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut acc = LaurentPoly::zero();
                for k in i + 1..=j {
                    if !self.rows[i][k].is_zero() && !inv.rows[k][j].is_zero() {
                        acc += &(&self.rows[i][k] * &inv.rows[k][j]);
                    }
                }
                inv.rows[i][j] = -&acc;
            }
        }
        Some(inv)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    }
}
