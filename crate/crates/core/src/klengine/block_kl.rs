use super::module::{ModuleKind, ParabolicModule};
use crate::error::{Error, Result};
use crate::polymatrix::PolyMatrix;
use crate::weylgroup::{longest_element, BlockPoset, RootSystem, WeylElt};

/// Hecke-module data of a regular block: graded decomposition numbers and `Ext(Delta, L)`.
pub struct BlockKl {
    pub antispherical: ParabolicModule,
    pub spherical: ParabolicModule,
    /// Module index of each block element, in block order.
    pub positions: Vec<usize>,
    twist: Vec<usize>,
}

impl BlockKl {
    pub fn new(block: &BlockPoset) -> Result<Self> {
        if !block.is_regular() {
            return Err(Error::SingularAnchor(block.anchor.to_string()));
        }
        let rs = block.root_system();
        let j = block.y.roots(&block.datum);
        let antispherical = ParabolicModule::new(&rs, &j, ModuleKind::Antispherical);
        let spherical = ParabolicModule::new(&rs, &j, ModuleKind::Spherical);
        let positions = block
            .elements
            .iter()
            .map(|e| {
                antispherical.index_of(&e.w).ok_or_else(|| Error::NotMinimalRepresentative(e.w.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let twist = twist_map(&rs, &antispherical, &spherical, &j);
        Ok(BlockKl { antispherical, spherical, positions, twist })
    }

    /// `sum_i [Delta(mu) : L(gamma)<i>] q^i` for block elements `a = mu`, `b = gamma`.
    pub fn decomposition(&self, a: usize, b: usize) -> crate::poly::LaurentPoly {
        self.antispherical.poly(self.positions[a], self.positions[b])
    }

    /// `sum_i dim Ext^i(Delta(mu), L(gamma)) q^i`.
    pub fn ext_delta_simple(&self, a: usize, b: usize) -> crate::poly::LaurentPoly {
        let (x, w) = (self.positions[a], self.positions[b]);
        self.spherical.poly(self.twist[x], self.twist[w])
    }

    pub fn decomposition_matrix(&self, idx: &[usize]) -> PolyMatrix {
        PolyMatrix::from_rows(idx.iter().map(|&a| idx.iter().map(|&b| self.decomposition(a, b)).collect()).collect())
    }

    pub fn ext_matrix(&self, idx: &[usize]) -> PolyMatrix {
        PolyMatrix::from_rows(idx.iter().map(|&a| idx.iter().map(|&b| self.ext_delta_simple(a, b)).collect()).collect())
    }
}

/// `x -> w_J x w_0`, an order-reversing involution of `{}^J W`.
fn twist_map(rs: &RootSystem, a: &ParabolicModule, s: &ParabolicModule, j: &[usize]) -> Vec<usize> {
    let all: Vec<usize> = (0..rs.simple.len()).collect();
    let w0 = longest_element(rs, &all);
    let wj = longest_element(rs, j);
    a.elems
        .iter()
        .map(|x: &WeylElt| s.index_of(&wj.compose(x).compose(&w0)).expect("twist stays in the quotient"))
        .collect()
}

/// Graded decomposition matrix of a regular block over `Lambda^lambda_n`, rows and columns in block order.
pub fn graded_decomposition_matrix(block: &BlockPoset) -> Result<PolyMatrix> {
    let kl = BlockKl::new(block)?;
    Ok(kl.decomposition_matrix(&block.p_indices()))
}
