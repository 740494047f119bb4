use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cosheaf::{kernel_functor, skyscraper, CellularCosheaf, NatTrans};
use crate::error::{Error, Result};
use crate::group::{cokernel, lift_through, AbGroup, AbHom};
use crate::linalg::IntMatrix;

use super::chain::{ChainComplex, HomologyReport, Pipeline};

#[derive(Clone, Copy, Debug, Default)]
pub struct ResolutionOptions {
    /// Shuffle the generator order inside each stage-0 summand with this seed.
    pub stage0_shuffle: Option<u64>,
}

/// One stage `P_n = ⊕_x c_x(Z^{m_x})` with its map to the previous stage
/// (to `F` itself for stage 0).
#[derive(Clone, Debug)]
pub struct Stage {
    /// `m_x` per element.
    pub ranks: Vec<usize>,
    /// Images of the summand generators at their own element, as columns in
    /// the coordinates of the previous stage's group there.
    pub images: Vec<IntMatrix>,
    pub cosheaf: CellularCosheaf,
    pub map: NatTrans,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub stages: Vec<Stage>,
    pub depth: usize,
    /// The last stage maps injectively, so the resolution is finite and exact.
    pub complete: bool,
}

/// Generators of `K(x)` modulo the images from its upper covers, read off
/// the Smith form of the quotient: one generator per non-unit invariant factor.
fn generators_mod_upper(k: &CellularCosheaf, x: usize) -> Result<IntMatrix> {
    let p = k.base();
    let gx = k.group(x);
    let uppers = p.upper_covers(x);
    let mut img = IntMatrix::zeros(gx.gens(), 0);
    for &y in uppers {
        img = img.hstack(k.map(y, x)?.matrix())?;
    }
    let sources: Vec<AbGroup> = uppers.iter().map(|&y| k.group(y).clone()).collect();
    let src = crate::group::direct_sum(&sources).group;
    let (q, _) = cokernel(&AbHom::new(src, gx.clone(), img)?)?;
    let s = q.lattice();
    let keep: Vec<usize> = (0..gx.gens())
        .filter(|&i| !(i < s.rank() && s.diagonal[i].is_one()))
        .collect();
    Ok(s.u_inv.select_columns(&keep))
}

fn representable_sum(f: &CellularCosheaf, ranks: &[usize]) -> Result<CellularCosheaf> {
    let base = f.base();
    if ranks.iter().all(|&m| m == 0) {
        return Ok(CellularCosheaf::zero(base));
    }
    let parts = ranks
        .iter()
        .enumerate()
        .map(|(x, &m)| skyscraper(base, x, &AbGroup::free(m)))
        .collect::<Result<Vec<_>>>()?;
    CellularCosheaf::direct_sum(&parts)
}

/// Projective resolution with stages `0..=depth`, stopping early once a
/// stage maps injectively. Stage 0 takes one summand `c_x(Z^{g_x})` per
/// element sending its basis to the generators of `F(x)`; later stages cover
/// the pointwise kernel of the previous map. Surjectivity onto each kernel is
/// certified at every element.
pub fn projective_resolution(f: &CellularCosheaf, depth: usize, opts: ResolutionOptions) -> Result<Resolution> {
    let p = f.base().clone();
    let n = p.len();
    let mut target = f.clone();
    let mut sub_incl = NatTrans::identity(f);
    let mut stages = Vec::new();
    let mut complete = false;
    let mut rng = opts.stage0_shuffle.map(ChaCha8Rng::seed_from_u64);
    for level in 0..=depth {
        let sub = sub_incl.source().clone();
        let mut gens = Vec::with_capacity(n);
        for x in 0..n {
            if level == 0 {
                let mut order: Vec<usize> = (0..sub.group(x).gens()).collect();
                if let Some(r) = rng.as_mut() {
                    order.shuffle(r);
                }
                gens.push(IntMatrix::identity(sub.group(x).gens()).select_columns(&order));
            } else {
                gens.push(generators_mod_upper(&sub, x)?);
            }
        }
        let images: Vec<IntMatrix> = (0..n)
            .map(|x| sub_incl.component(x).matrix().mul(&gens[x]))
            .collect::<Result<_>>()?;
        let ranks: Vec<usize> = gens.iter().map(IntMatrix::cols).collect();
        let pc = representable_sum(f, &ranks)?;
        let mut comps = Vec::with_capacity(n);
        for z in 0..n {
            let mut m = IntMatrix::zeros(target.group(z).gens(), pc.group(z).gens());
            let mut col = 0;
            for x in p.up_set(z).ones() {
                let block = target.composite(x, z)?.matrix().mul(&images[x])?;
                m.put_block(0, col, &block);
                col += ranks[x];
            }
            comps.push(AbHom::new(pc.group(z).clone(), target.group(z).clone(), m)?);
        }
        let map = NatTrans::new(&pc, &target, comps)?;
        for z in 0..n {
            let lifted = lift_through(sub_incl.component(z), map.component(z).matrix())?;
            let onto = AbHom::new(pc.group(z).clone(), sub.group(z).clone(), lifted)?;
            if !cokernel(&onto)?.0.is_trivial() {
                return Err(Error::Internal(format!(
                    "resolution stage {level} does not cover the kernel at '{}'",
                    p.name(z)
                )));
            }
        }
        let (k, incl) = kernel_functor(&map)?;
        stages.push(Stage {
            ranks,
            images,
            cosheaf: pc.clone(),
            map,
        });
        if k.is_zero() {
            complete = true;
            break;
        }
        target = pc;
        sub_incl = incl;
    }
    Ok(Resolution {
        stages,
        depth,
        complete,
    })
}

/// Colimit of the resolution: each `c_x(Z^m)` contributes `Z^m`, and a
/// generator's boundary is its image read blockwise in the summands above it.
pub fn derived_complex(res: &Resolution) -> Result<ChainComplex> {
    let Some(first) = res.stages.first() else {
        return Ok(ChainComplex::zero());
    };
    let p = first.cosheaf.base().clone();
    let offsets: Vec<Vec<usize>> = res
        .stages
        .iter()
        .map(|s| {
            s.ranks
                .iter()
                .scan(0, |acc, &m| {
                    let o = *acc;
                    *acc += m;
                    Some(o)
                })
                .collect()
        })
        .collect();
    let groups: Vec<AbGroup> = res.stages.iter().map(|s| AbGroup::free(s.ranks.iter().sum())).collect();
    let mut boundaries = Vec::new();
    for level in 1..res.stages.len() {
        let (stage, prev) = (&res.stages[level], &res.stages[level - 1]);
        let mut m = IntMatrix::zeros(groups[level - 1].gens(), groups[level].gens());
        for x in 0..p.len() {
            let img = &stage.images[x];
            let mut local = 0;
            for y in p.up_set(x).ones() {
                for r in 0..prev.ranks[y] {
                    for c in 0..img.cols() {
                        let v = img.get(local + r, c);
                        m.set(offsets[level - 1][y] + r, offsets[level][x] + c, v.clone());
                    }
                }
                local += prev.ranks[y];
            }
        }
        boundaries.push(AbHom::new(groups[level].clone(), groups[level - 1].clone(), m)?);
    }
    ChainComplex::new(groups, boundaries)
}

/// Derived colimits `L_n colim F` for `n < depth`.
pub fn derived_homology(f: &CellularCosheaf, depth: usize) -> Result<HomologyReport> {
    derived_homology_with(f, depth, ResolutionOptions::default())
}

pub fn derived_homology_with(f: &CellularCosheaf, depth: usize, opts: ResolutionOptions) -> Result<HomologyReport> {
    let res = projective_resolution(f, depth, opts)?;
    let mut groups = super::chain::homology(&derived_complex(&res)?)?;
    groups.resize(depth, crate::group::IsoClass::trivial());
    Ok(HomologyReport::new(Pipeline::Derived, groups))
}
