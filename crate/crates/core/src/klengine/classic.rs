use std::collections::HashMap;

use parking_lot::RwLock;

use super::group::CoxeterGroup;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::weylgroup::{generated_subgroup, WeylElt};

/// Memoized R-polynomials, KL polynomials and Deodhar `u = -1` parabolic polynomials of one group.
pub struct KlTable {
    pub group: CoxeterGroup,
    p_memo: RwLock<HashMap<(usize, usize), LaurentPoly>>,
    r_memo: RwLock<HashMap<(usize, usize), LaurentPoly>>,
    par_memo: RwLock<HashMap<(Vec<usize>, usize, usize), LaurentPoly>>,
}

fn q_minus_one() -> LaurentPoly {
    LaurentPoly::from_coeffs(0, vec![-1, 1])
}

impl KlTable {
    pub fn new(group: CoxeterGroup) -> Self {
        KlTable {
            group,
            p_memo: RwLock::default(),
            r_memo: RwLock::default(),
            par_memo: RwLock::default(),
        }
    }

    fn idx(&self, w: &WeylElt) -> Result<usize> {
        self.group.index_of(w).ok_or_else(|| Error::GroupMismatch(format!("{w} is not in this group")))
    }

    pub fn r_poly(&self, x: &WeylElt, w: &WeylElt) -> Result<LaurentPoly> {
        Ok(self.r_idx(self.idx(x)?, self.idx(w)?))
    }

    pub fn kl_poly(&self, x: &WeylElt, w: &WeylElt) -> Result<LaurentPoly> {
        Ok(self.p_idx(self.idx(x)?, self.idx(w)?))
    }

    pub fn r_idx(&self, x: usize, w: usize) -> LaurentPoly {
        let g = &self.group;
        if !g.leq(x, w) {
            return LaurentPoly::zero();
        }
        if x == w {
            return LaurentPoly::one();
        }
        if let Some(p) = self.r_memo.read().get(&(x, w)) {
            return p.clone();
        }
        let s = g.first_left_descent(w).expect("w > x has a descent");
        let (sx, sw) = (g.left_mul(s, x), g.left_mul(s, w));
        let r = if g.lengths[sx] < g.lengths[x] {
            self.r_idx(sx, sw)
        } else {
            let mut r = &q_minus_one() * &self.r_idx(x, sw);
            r.add_mul_monomial(&self.r_idx(sx, sw), 1, 1);
            r
        };
        self.r_memo.write().insert((x, w), r.clone());
        r
    }

    /// `mu(z, v)`: the coefficient of `q^((l(v)-l(z)-1)/2)` in `P_{z,v}`.
    pub fn mu_idx(&self, z: usize, v: usize) -> i64 {
        let d = self.group.lengths[v] as i64 - self.group.lengths[z] as i64 - 1;
        if d < 0 || d % 2 != 0 {
            return 0;
        }
        self.p_idx(z, v).coeff((d / 2) as i32)
    }

    pub fn p_idx(&self, x: usize, w: usize) -> LaurentPoly {
        let g = &self.group;
        if !g.leq(x, w) {
            return LaurentPoly::zero();
        }
        if x == w {
            return LaurentPoly::one();
        }
        if let Some(p) = self.p_memo.read().get(&(x, w)) {
            return p.clone();
        }
        let s = g.first_left_descent(w).expect("w > x has a descent");
        let v = g.left_mul(s, w);
        let sx = g.left_mul(s, x);
        let c = i32::from(g.lengths[sx] < g.lengths[x]);
        let mut p = self.p_idx(sx, v).shift(1 - c);
        p += &self.p_idx(x, v).shift(c);
        let lw = g.lengths[w];
        for z in 0..g.len() {
            if z == v || !g.leq(x, z) || !g.leq(z, v) || !g.is_left_descent(s, z) {
                continue;
            }
            let mu = self.mu_idx(z, v);
            if mu != 0 {
                let e = ((lw - g.lengths[z]) / 2) as i32;
                p.add_mul_monomial(&self.p_idx(x, z), -mu, e);
            }
        }
        self.p_memo.write().insert((x, w), p.clone());
        p
    }

    /// Elements of the standard parabolic subgroup on `j`, with their lengths.
    pub fn parabolic_subgroup(&self, j: &[usize]) -> Vec<(usize, usize)> {
        generated_subgroup(&self.group.rs, j)
            .iter()
            .map(|z| {
                let i = self.group.index_of(z).expect("subgroup element");
                (i, self.group.lengths[i])
            })
            .collect()
    }

    /// Whether `w` is the shortest element of `W_J w`.
    pub fn is_left_min(&self, j: &[usize], w: usize) -> bool {
        j.iter().all(|&s| !self.group.is_left_descent(s, w))
    }

    /// `sum_{z in W_J} (-1)^{l(z)} P_{zx,w}` for `x, w` shortest in `W_J x`, `W_J w`.
    pub fn parabolic_kl(&self, x: &WeylElt, w: &WeylElt, j: &[usize]) -> Result<LaurentPoly> {
        let (xi, wi) = (self.idx(x)?, self.idx(w)?);
        for (e, i) in [(x, xi), (w, wi)] {
            if !self.is_left_min(j, i) {
                return Err(Error::NotMinimalRepresentative(e.to_string()));
            }
        }
        let mut key_j = j.to_vec();
        key_j.sort_unstable();
        key_j.dedup();
        let key = (key_j, xi, wi);
        if let Some(p) = self.par_memo.read().get(&key) {
            return Ok(p.clone());
        }
        let mut acc = LaurentPoly::zero();
        for (z, lz) in self.parabolic_subgroup(&key.0) {
            let zx = self.compose_idx(z, xi);
            acc.add_mul_monomial(&self.p_idx(zx, wi), if lz % 2 == 0 { 1 } else { -1 }, 0);
        }
        self.par_memo.write().insert(key, acc.clone());
        Ok(acc)
    }

    fn compose_idx(&self, a: usize, b: usize) -> usize {
        let g = &self.group;
        g.index_of(&g.elems[a].compose(&g.elems[b])).expect("closed under products")
    }
}
