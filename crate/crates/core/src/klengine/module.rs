use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::poly::LaurentPoly;
use crate::weylgroup::{left_coset_reps, simple_reflection_dense, RootSystem, WeylElt};

/// Which induced module of the Hecke algebra: `u = -1` (antispherical) or `u = v^{-1}` (spherical).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Antispherical,
    Spherical,
}

/// Canonical basis of a parabolic Hecke module on `{}^J W`, in Soergel's normalization:
/// `N_x C_s = N_{xs} + v N_x` (`xs > x`), `N_{xs} + v^{-1} N_x` (`xs < x`),
/// and `0` resp. `(v + v^{-1}) N_x` when `xs` leaves `{}^J W`.
#[derive(Clone, Debug)]
pub struct ParabolicModule {
    pub kind: ModuleKind,
    pub j: Vec<usize>,
    pub elems: Vec<WeylElt>,
    pub lengths: Vec<usize>,
    index: HashMap<WeylElt, usize>,
    act: Vec<Vec<Option<usize>>>,
    canon: Vec<Vec<(usize, LaurentPoly)>>,
}

impl ParabolicModule {
    pub fn new(rs: &RootSystem, j: &[usize], kind: ModuleKind) -> Self {
        let mut keyed: Vec<(usize, WeylElt)> = left_coset_reps(rs, j).into_iter().map(|w| (w.length(rs), w)).collect();
        keyed.sort();
        let lengths: Vec<usize> = keyed.iter().map(|(l, _)| *l).collect();
        let elems: Vec<WeylElt> = keyed.into_iter().map(|(_, w)| w).collect();
        let index: HashMap<WeylElt, usize> = elems.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let act = rs
            .simple
            .iter()
            .map(|a| {
                let s = simple_reflection_dense(a);
                elems.iter().map(|w| index.get(&w.compose(&s)).copied()).collect()
            })
            .collect();
        let mut m = ParabolicModule { kind, j: j.to_vec(), elems, lengths, index, act, canon: Vec::new() };
        m.fill();
        m
    }

    fn fill(&mut self) {
        let n = self.elems.len();
        let mut start = 0;
        while start < n {
            let l = self.lengths[start];
            let end = (start..n).find(|&i| self.lengths[i] != l).unwrap_or(n);
            let layer: Vec<Vec<(usize, LaurentPoly)>> = (start..end).into_par_iter().map(|w| self.column(w)).collect();
            self.canon.extend(layer);
            start = end;
        }
    }

    fn column(&self, w: usize) -> Vec<(usize, LaurentPoly)> {
        if self.lengths[w] == 0 {
            return vec![(w, LaurentPoly::one())];
        }
        let (s, u) = (0..self.act.len())
            .find_map(|s| self.act[s][w].filter(|&u| self.lengths[u] < self.lengths[w]).map(|u| (s, u)))
            .expect("nonidentity element has a right descent");
        let v = LaurentPoly::monomial(1, 1);
        let vinv = LaurentPoly::monomial(1, -1);
        let mut elt: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (x, c) in &self.canon[u] {
            match self.act[s][*x] {
                Some(y) => {
                    *elt.entry(y).or_default() += c;
                    let f = if self.lengths[y] > self.lengths[*x] { &v } else { &vinv };
                    *elt.entry(*x).or_default() += &(f * c);
                }
                None if self.kind == ModuleKind::Spherical => {
                    *elt.entry(*x).or_default() += &(&(&v + &vinv) * c);
                }
                None => {}
            }
        }
        let corrections: Vec<(usize, i64)> =
            elt.iter().filter(|(z, p)| **z != w && p.coeff(0) != 0).map(|(z, p)| (*z, p.coeff(0))).collect();
        for (z, mu) in corrections {
            for (x, c) in &self.canon[z] {
                elt.entry(*x).or_default().add_mul_monomial(c, -mu, 0);
            }
        }
        debug_assert!(elt[&w].is_one());
        elt.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, w: &WeylElt) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Coefficient of `N_x` in the canonical basis element indexed by `w`.
    pub fn poly(&self, x: usize, w: usize) -> LaurentPoly {
        let col = &self.canon[w];
        col.binary_search_by_key(&x, |(i, _)| *i).map(|k| col[k].1.clone()).unwrap_or_default()
    }

    pub fn column_of(&self, w: usize) -> &[(usize, LaurentPoly)] {
        &self.canon[w]
    }
}

/// Classic normalization: the coefficient of `q^k` is that of `v^(dl - 2k)` in `n`.
pub fn to_classic(n: &LaurentPoly, dl: usize) -> LaurentPoly {
    let mut coeffs = vec![0i64; dl / 2 + 1];
    for (e, c) in n.terms() {
        let k = (dl as i32 - e) / 2;
        if (dl as i32 - e) % 2 == 0 && k >= 0 && (k as usize) < coeffs.len() {
            coeffs[k as usize] += c;
        } else {
            panic!("exponent {e} incompatible with length difference {dl}");
        }
    }
    LaurentPoly::from_coeffs(0, coeffs)
}
