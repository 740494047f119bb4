use crate::cosheaf::CellularCosheaf;
use crate::error::{Error, Result};
use crate::group::{direct_sum, AbHom};
use crate::linalg::IntMatrix;
use crate::poset::SimplicialComplex;

use super::chain::{ChainComplex, HomologyReport, Pipeline};

/// `C_n = ⊕_{dim σ = n} F(σ)` with `∂ = Σ [σ:τ] F(σ > τ)`.
pub fn bm_complex(k: &SimplicialComplex, f: &CellularCosheaf) -> Result<ChainComplex> {
    if f.base().as_ref() != &k.face_poset() {
        return Err(Error::AmbientMismatch);
    }
    if k.is_empty() {
        return Ok(ChainComplex::zero());
    }
    let by_dim: Vec<Vec<usize>> = (0..=k.dim()).map(|d| k.simplices_of_dim(d)).collect();
    let sums: Vec<_> = by_dim
        .iter()
        .map(|cells| direct_sum(&cells.iter().map(|&s| f.group(s).clone()).collect::<Vec<_>>()))
        .collect();
    let mut boundaries = Vec::with_capacity(by_dim.len().saturating_sub(1));
    for n in 1..by_dim.len() {
        let (src, tgt) = (&sums[n], &sums[n - 1]);
        let row_of: std::collections::HashMap<usize, usize> =
            by_dim[n - 1].iter().enumerate().map(|(i, &t)| (t, tgt.offsets[i])).collect();
        let mut m = IntMatrix::zeros(tgt.group.gens(), src.group.gens());
        for (j, &s) in by_dim[n].iter().enumerate() {
            for (t, sign) in k.boundary_faces(s) {
                m.add_block(row_of[&t], src.offsets[j], f.map(s, t)?.matrix(), sign);
            }
        }
        boundaries.push(AbHom::new(src.group.clone(), tgt.group.clone(), m)?);
    }
    ChainComplex::new(sums.into_iter().map(|s| s.group).collect(), boundaries)
}

pub fn bm_homology(k: &SimplicialComplex, f: &CellularCosheaf) -> Result<HomologyReport> {
    HomologyReport::from_complex(Pipeline::Bm, &bm_complex(k, f)?)
}
