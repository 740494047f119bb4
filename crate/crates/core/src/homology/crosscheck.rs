use crate::cosheaf::CellularCosheaf;
use crate::error::{Error, Result};
use crate::group::IsoClass;
use crate::poset::SimplicialComplex;

use super::bm::bm_homology;
use super::cech::vertex_cover_cech;
use super::chain::{HomologyReport, Pipeline};
use super::delta::subdivision_homology;
use super::resolution::derived_homology;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub degree: usize,
    pub expected: (Pipeline, IsoClass),
    pub found: (Pipeline, IsoClass),
}

/// Reports from all four pipelines, Borel-Moore first.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub reports: Vec<HomologyReport>,
    pub mismatch: Option<Mismatch>,
}

impl Verdict {
    pub fn agree(&self) -> bool {
        self.mismatch.is_none()
    }

    pub fn report(&self, pipeline: Pipeline) -> Option<&HomologyReport> {
        self.reports.iter().find(|r| r.pipeline == pipeline)
    }
}

/// Runs Borel-Moore, vertex-cover Čech, derived colimits (to depth
/// `dim K + 2`) and Borel-Moore of the subdivision, concurrently, and compares
/// them degree by degree against Borel-Moore.
pub fn crosscheck(k: &SimplicialComplex, f: &CellularCosheaf) -> Result<Verdict> {
    if f.base().as_ref() != &k.face_poset() {
        return Err(Error::AmbientMismatch);
    }
    let depth = k.dim() + 2;
    let ((bm, cech), (derived, sub)) = rayon::join(
        || rayon::join(|| bm_homology(k, f), || vertex_cover_cech(k, f)),
        || rayon::join(|| derived_homology(f, depth), || subdivision_homology(f)),
    );
    let reports = vec![bm?, cech?, derived?, sub?];
    let top = reports.iter().map(|r| r.groups.len()).max().unwrap_or(0);
    let mismatch = (0..top).find_map(|n| {
        let expected = reports[0].degree(n);
        reports[1..].iter().find_map(|r| {
            let found = r.degree(n);
            (found != expected).then(|| Mismatch {
                degree: n,
                expected: (reports[0].pipeline, expected.clone()),
                found: (r.pipeline, found),
            })
        })
    });
    Ok(Verdict { reports, mismatch })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::AbGroup;

    #[test]
    fn triangle_boundary_agrees() {
        let edges = vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]];
        let k = SimplicialComplex::new(&["a", "b", "c"], &edges).unwrap();
        let f = CellularCosheaf::constant(&Arc::new(k.face_poset()), &AbGroup::free(1));
        let v = crosscheck(&k, &f).unwrap();
        assert!(v.agree(), "{:?}", v.mismatch);
        for r in &v.reports {
            assert_eq!(r.trimmed(), vec![IsoClass::free(1), IsoClass::free(1)]);
        }
    }

    #[test]
    fn full_simplex_is_acyclic() {
        let k = SimplicialComplex::new(&["a", "b", "c", "d"], &[vec!["a", "b", "c", "d"]]).unwrap();
        let g = AbGroup::from_invariants(1, &[num_bigint::BigInt::from(3)]);
        let f = CellularCosheaf::constant(&Arc::new(k.face_poset()), &g);
        let v = crosscheck(&k, &f).unwrap();
        assert!(v.agree(), "{:?}", v.mismatch);
        for r in &v.reports {
            assert_eq!(r.trimmed(), vec![g.iso_class()]);
        }
    }

    #[test]
    fn single_vertex() {
        let k = SimplicialComplex::new(&["v"], &[]).unwrap();
        let a = AbGroup::cyclic(8);
        let f = CellularCosheaf::constant(&Arc::new(k.face_poset()), &a);
        let v = crosscheck(&k, &f).unwrap();
        assert!(v.agree());
        assert_eq!(v.report(Pipeline::Derived).unwrap().trimmed(), vec![a.iso_class()]);
    }
}
