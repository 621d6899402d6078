use std::collections::HashMap;

use crate::weylgroup::{all_elements, simple_reflection_dense, RootSystem, WeylElt};

/// A finite Weyl group with multiplication tables by simple reflections and the Bruhat order.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    pub rs: RootSystem,
    pub elems: Vec<WeylElt>,
    pub lengths: Vec<usize>,
    index: HashMap<WeylElt, usize>,
    /// `left[s][i]` is the index of `s * elems[i]`.
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    bruhat: Vec<bool>,
}

impl CoxeterGroup {
    pub fn new(rs: RootSystem) -> Self {
        let mut elems = all_elements(&rs);
        let mut keyed: Vec<(usize, WeylElt)> = elems.drain(..).map(|w| (w.length(&rs), w)).collect();
        keyed.sort();
        let lengths: Vec<usize> = keyed.iter().map(|(l, _)| *l).collect();
        let elems: Vec<WeylElt> = keyed.into_iter().map(|(_, w)| w).collect();
        let index: HashMap<WeylElt, usize> = elems.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let refl: Vec<WeylElt> = rs.simple.iter().map(|a| simple_reflection_dense(a)).collect();
        let left = refl.iter().map(|s| elems.iter().map(|w| index[&s.compose(w)]).collect()).collect();
        let right = refl.iter().map(|s| elems.iter().map(|w| index[&w.compose(s)]).collect()).collect();
        let n = elems.len();
        let mut g = CoxeterGroup { rs, elems, lengths, index, left, right, bruhat: vec![false; n * n] };
        g.fill_bruhat();
        g
    }

    fn fill_bruhat(&mut self) {
        let n = self.len();
        for w in 0..n {
            match self.first_left_descent(w) {
                None => self.bruhat[w] = true,
                Some(s) => {
                    let sw = self.left[s][w];
                    for x in 0..n {
                        let sx = self.left[s][x];
                        let v = if self.lengths[sx] < self.lengths[x] { self.leq(sx, sw) } else { self.leq(x, sw) };
                        self.bruhat[x * n + w] = v;
                    }
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rs.simple.len()
    }

    pub fn index_of(&self, w: &WeylElt) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[s][w]
    }

    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[s][w]
    }

    pub fn first_left_descent(&self, w: usize) -> Option<usize> {
        (0..self.rank()).find(|&s| self.lengths[self.left[s][w]] < self.lengths[w])
    }

    pub fn is_left_descent(&self, s: usize, w: usize) -> bool {
        self.lengths[self.left[s][w]] < self.lengths[w]
    }

    /// Bruhat order `x <= w`.
    pub fn leq(&self, x: usize, w: usize) -> bool {
        self.bruhat[x * self.len() + w]
    }

    pub fn identity(&self) -> usize {
        0
    }
}
