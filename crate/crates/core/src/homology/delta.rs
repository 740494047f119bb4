use std::sync::Arc;

use crate::cosheaf::CellularCosheaf;
use crate::error::{Error, Result};
use crate::group::AbHom;
use crate::poset::{order_complex, SimplicialComplex};

use super::bm::bm_complex;
use super::chain::{HomologyReport, Pipeline};

/// The cosheaf on the face poset of the order complex that assigns to a chain
/// `x_0 < ... < x_n` the value at its top. Dropping a non-top element is the
/// identity; dropping the top is `F(x_n >= x_{n-1})`.
pub fn delta_cosheaf(f: &CellularCosheaf) -> Result<(SimplicialComplex, CellularCosheaf)> {
    let p = f.base();
    let oc = order_complex(p);
    let fp = Arc::new(oc.face_poset());
    let top_of = |chain: &[usize]| -> usize {
        *chain
            .iter()
            .find(|&&x| chain.iter().all(|&y| p.leq(y, x)))
            .expect("a chain has a maximum")
    };
    let tops: Vec<usize> = oc.simplices().iter().map(|s| top_of(s)).collect();
    let groups = tops.iter().map(|&x| f.group(x).clone()).collect();
    let maps = fp
        .hasse()
        .iter()
        .map(|&(s, t)| {
            if tops[s] == tops[t] {
                Ok(AbHom::identity(f.group(tops[s])))
            } else {
                f.composite(tops[s], tops[t]).cloned()
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let d = CellularCosheaf::new(&fp, groups, maps)
        .map_err(|e| Error::Internal(format!("subdivided cosheaf failed validation: {e}")))?;
    Ok((oc, d))
}

/// Borel-Moore homology of `Δ(F)` on the order complex of `F`'s base.
pub fn subdivision_homology(f: &CellularCosheaf) -> Result<HomologyReport> {
    let (oc, d) = delta_cosheaf(f)?;
    HomologyReport::from_complex(Pipeline::Subdivision, &bm_complex(&oc, &d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{hom_equal, AbGroup};
    use crate::linalg::IntMatrix;
    use crate::poset::validate_poset;

    #[test]
    fn single_point() {
        let p = Arc::new(validate_poset(&["x"], &[]).unwrap());
        let f = CellularCosheaf::constant(&p, &AbGroup::cyclic(5));
        let (oc, d) = delta_cosheaf(&f).unwrap();
        assert_eq!(oc.len(), 1);
        assert_eq!(d.group(0), f.group(0));
    }

    #[test]
    fn two_chain_with_reduction() {
        // x < y, F(y) = Z, F(x) = Z/2, reduction mod 2
        let p = Arc::new(validate_poset(&["x", "y"], &[("y", "x")]).unwrap());
        let f = CellularCosheaf::from_matrices(&p, vec![AbGroup::cyclic(2), AbGroup::free(1)], vec![
            IntMatrix::from_rows(&[[1]]),
        ])
        .unwrap();
        let (oc, d) = delta_cosheaf(&f).unwrap();
        let edge = oc.simplex_index(&[0, 1]).unwrap();
        assert_eq!(d.group(edge).iso_class(), AbGroup::free(1).iso_class());
        assert_eq!(d.group(0), f.group(0));
        assert_eq!(d.group(1), f.group(1));
        // dropping the top y leaves x: the reduction
        assert!(hom_equal(d.map(edge, 0).unwrap(), f.map(1, 0).unwrap()).unwrap());
        // dropping x leaves y: identity
        assert!(hom_equal(d.map(edge, 1).unwrap(), &AbHom::identity(f.group(1))).unwrap());
    }

    #[test]
    fn constant_stays_constant() {
        let p = Arc::new(validate_poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap());
        let f = CellularCosheaf::constant(&p, &AbGroup::free(2));
        let (_, d) = delta_cosheaf(&f).unwrap();
        assert!(d.groups().iter().all(|g| g == f.group(0)));
        assert!(d.maps().iter().all(|m| m.matrix() == &IntMatrix::identity(2)));
    }
}
