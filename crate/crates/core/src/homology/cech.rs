use std::collections::HashMap;

use crate::cosheaf::{CellularCosheaf, HatEvaluator, OpenEvaluator};
use crate::error::{Error, Result};
use crate::group::{direct_sum, AbGroup, AbHom, Simplification};
use crate::linalg::IntMatrix;
use crate::poset::{nerve_intersections, Cover, OpenSet, SimplicialComplex};

use super::chain::{ChainComplex, HomologyReport, Pipeline};
use super::resolution::derived_homology;

/// Čech complex of a cover: degree `n` sums the values on intersections
/// indexed by strictly increasing `(n+1)`-tuples, and the boundary is the
/// alternating sum of the extensions along deleting one index.
///
/// Values are rewritten in Smith coordinates first, which keeps the complex
/// small when the evaluator returns large colimit presentations.
pub fn cech_complex(cover: &Cover, t: &dyn OpenEvaluator) -> Result<ChainComplex> {
    let nerve = nerve_intersections(cover);
    if nerve.is_empty() {
        return Ok(ChainComplex::zero());
    }
    let mut simplified: HashMap<OpenSet, Simplification> = HashMap::new();
    for (_, o) in &nerve {
        if !simplified.contains_key(o) {
            simplified.insert(o.clone(), t.value(o)?.simplified());
        }
    }
    let top = nerve.iter().map(|(tuple, _)| tuple.len()).max().unwrap_or(1) - 1;
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    let mut position: HashMap<&[usize], (usize, usize)> = HashMap::new();
    for (i, (tuple, _)) in nerve.iter().enumerate() {
        let n = tuple.len() - 1;
        position.insert(tuple.as_slice(), (n, by_degree[n].len()));
        by_degree[n].push(i);
    }
    let sums: Vec<_> = by_degree
        .iter()
        .map(|ids| direct_sum(&ids.iter().map(|&i| simplified[&nerve[i].1].group.clone()).collect::<Vec<AbGroup>>()))
        .collect();
    let mut ext_cache: HashMap<(OpenSet, OpenSet), AbHom> = HashMap::new();
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let (src, tgt) = (&sums[n], &sums[n - 1]);
        let mut m = IntMatrix::zeros(tgt.group.gens(), src.group.gens());
        for (j, &i) in by_degree[n].iter().enumerate() {
            let (tuple, u) = &nerve[i];
            for k in 0..tuple.len() {
                let mut face = tuple.clone();
                face.remove(k);
                let (_, row) = position[face.as_slice()];
                let v = &nerve[by_degree[n - 1][row]].1;
                let key = (u.clone(), v.clone());
                let ext = match ext_cache.get(&key) {
                    Some(e) => e.clone(),
                    None => {
                        let raw = t.extension(u, v)?;
                        let e = simplified[v].to.compose(&raw)?.compose(&simplified[u].from)?;
                        ext_cache.insert(key, e.clone());
                        e
                    }
                };
                let sign = if k % 2 == 0 { 1 } else { -1 };
                m.add_block(tgt.offsets[row], src.offsets[j], ext.matrix(), sign);
            }
        }
        boundaries.push(AbHom::new(src.group.clone(), tgt.group.clone(), m)?);
    }
    ChainComplex::new(sums.into_iter().map(|s| s.group).collect(), boundaries)
}

/// Čech homology of `F̂` for the cover of `K`'s face poset by the open stars
/// of its vertices, in vertex order.
pub fn vertex_cover_cech(k: &SimplicialComplex, f: &CellularCosheaf) -> Result<HomologyReport> {
    if f.base().as_ref() != &k.face_poset() {
        return Err(Error::AmbientMismatch);
    }
    let cover = Cover::minimal_stars(f.base());
    HomologyReport::from_complex(Pipeline::Cech, &cech_complex(&cover, &HatEvaluator(f))?)
}

/// Čech homology for an arbitrary cover together with a numerical check of
/// the acyclicity hypothesis under which it computes cosheaf homology: every
/// nonempty intersection must have vanishing higher homology.
#[derive(Clone, Debug)]
pub struct CechOutcome {
    pub report: HomologyReport,
    /// Index tuples of intersections with nonzero higher homology.
    pub failing: Vec<Vec<usize>>,
}

impl CechOutcome {
    pub fn hypothesis_holds(&self) -> bool {
        self.failing.is_empty()
    }
}

pub fn cech_homology_checked(cover: &Cover, f: &CellularCosheaf) -> Result<CechOutcome> {
    f.base().check_ambient(cover.universe())?;
    let report = HomologyReport::from_complex(Pipeline::Cech, &cech_complex(cover, &HatEvaluator(f))?)?;
    let mut failing = Vec::new();
    for (tuple, u) in nerve_intersections(cover) {
        let (sub, _) = f.restrict(&u)?;
        let depth = sub.base().height() + 2;
        let h = derived_homology(&sub, depth)?;
        if h.groups.iter().skip(1).any(|g| !g.is_trivial()) {
            failing.push(tuple);
        }
    }
    Ok(CechOutcome { report, failing })
}
