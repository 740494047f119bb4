//! Seeded generators for groups, homomorphisms, posets, simplicial complexes
//! and cellular cosheaves.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cosheaf::{colim_over, CellularCosheaf};
use crate::error::Result;
use crate::group::{AbGroup, AbHom};
use crate::linalg::IntMatrix;
use crate::poset::{FinPoset, SimplicialComplex};

pub const TORSION_CHOICES: [i64; 5] = [2, 3, 4, 6, 8];

#[derive(Clone, Copy, Debug)]
pub struct CorpusConfig {
    pub max_vertices: usize,
    pub max_dim: usize,
    pub max_facets: usize,
    pub max_gens: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_vertices: 6,
            max_dim: 3,
            max_facets: 4,
            max_gens: 3,
        }
    }
}

/// Group with at most `max_gens` cyclic summands whose invariant factors are
/// drawn from [`TORSION_CHOICES`] as a divisibility chain, sometimes in a
/// scrambled presentation.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_gens: usize) -> AbGroup {
    let n = rng.gen_range(0..=max_gens);
    let mut torsion: Vec<i64> = Vec::new();
    for _ in 0..rng.gen_range(0..=n) {
        let options: Vec<i64> = TORSION_CHOICES
            .iter()
            .copied()
            .filter(|d| torsion.last().is_none_or(|prev| d % prev == 0))
            .collect();
        match options.choose(rng) {
            Some(&d) => torsion.push(d),
            None => break,
        }
    }
    let free = n - torsion.len();
    let mut rel = IntMatrix::zeros(n, torsion.len());
    for (c, &d) in torsion.iter().enumerate() {
        rel.set(free + c, c, BigInt::from(d));
    }
    if n >= 2 && rng.gen_bool(0.5) {
        rel = random_unimodular(rng, n).mul(&rel).expect("square times n-row matrix");
    }
    AbGroup::new(n, rel).expect("shape is consistent")
}

/// Whether a group stays within the generator's bounds: at most `max_gens`
/// cyclic summands, each torsion coefficient at most the largest choice.
pub fn within_bounds(g: &AbGroup, max_gens: usize) -> bool {
    let c = g.iso_class();
    let largest = BigInt::from(TORSION_CHOICES[TORSION_CHOICES.len() - 1]);
    c.free_rank + c.torsion.len() <= max_gens && c.torsion.iter().all(|d| *d <= largest)
}

/// Product of a few elementary row operations.
fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> IntMatrix {
    let mut w = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        for c in 0..n {
            let v = w.get(i, c) + w.get(j, c) * k;
            w.set(i, c, v);
        }
    }
    w
}

/// Order of each generator of a group in Smith coordinates (0 for free).
fn smith_orders(g: &AbGroup) -> Vec<BigInt> {
    let rel = g.relations();
    (0..g.gens())
        .map(|i| {
            (0..rel.cols())
                .map(|c| rel.get(i, c).clone())
                .find(|x| !x.is_zero())
                .unwrap_or_else(BigInt::zero)
        })
        .collect()
}

/// A random well-defined homomorphism, built in Smith coordinates of both
/// groups: each source generator of order `d` goes to an element killed by `d`.
pub fn random_hom<R: Rng + ?Sized>(rng: &mut R, source: &AbGroup, target: &AbGroup) -> AbHom {
    if rng.gen_ratio(1, 6) {
        return AbHom::zero(source, target);
    }
    let s = source.simplified();
    let t = target.simplified();
    let src_orders = smith_orders(&s.group);
    let tgt_orders = smith_orders(&t.group);
    let mut m = IntMatrix::zeros(t.group.gens(), s.group.gens());
    for (j, d) in src_orders.iter().enumerate() {
        for (i, e) in tgt_orders.iter().enumerate() {
            let v: i64 = if e.is_zero() {
                if d.is_zero() {
                    rng.gen_range(-2..=2)
                } else {
                    0
                }
            } else if d.is_zero() {
                rng.gen_range(0..e.to_i64().expect("small torsion"))
            } else {
                let step = (e / e.gcd(d)).to_i64().expect("small torsion");
                step * rng.gen_range(0..=2)
            };
            m.set(i, j, BigInt::from(v));
        }
    }
    let m = t.from.matrix().mul(&m).and_then(|x| x.mul(s.to.matrix())).expect("shapes agree");
    AbHom::new(source.clone(), target.clone(), m).expect("constructed to be well defined")
}

/// Random cellular cosheaf on `base`. Built from the top down: each element
/// gets a random group `T` and a random map `h` out of the colimit over the
/// elements strictly above it; the structure maps into it are `h` composed
/// with the cocone injections, which makes every diagram commute.
pub fn random_cosheaf<R: Rng + ?Sized>(rng: &mut R, base: &Arc<FinPoset>, max_gens: usize) -> Result<CellularCosheaf> {
    let n = base.len();
    let mut groups: Vec<Option<AbGroup>> = vec![None; n];
    let mut maps: Vec<Option<AbHom>> = vec![None; base.hasse().len()];
    for &x in base.linear_extension().iter().rev() {
        if base.upper_covers(x).is_empty() {
            groups[x] = Some(random_group(rng, max_gens));
            continue;
        }
        let mut bits = base.up_set(x).clone();
        bits.set(x, false);
        let above = base.open_set(bits)?;
        let (sub, members) = base.restrict(&above)?;
        let sub_groups = members.iter().map(|&y| groups[y].clone().expect("built top-down")).collect();
        let sub_maps = sub
            .hasse()
            .iter()
            .map(|&(u, l)| {
                let k = base.cover_position(members[u], members[l]).expect("induced cover");
                maps[k].clone().expect("built top-down")
            })
            .collect();
        let partial = CellularCosheaf::new(&Arc::new(sub), sub_groups, sub_maps)?;
        let all: Vec<usize> = (0..members.len()).collect();
        let colim = colim_over(&partial, &all)?;
        let (t, h) = if rng.gen_ratio(1, 4) && within_bounds(&colim.group, max_gens) {
            let s = colim.group.simplified();
            (s.group.clone(), s.to)
        } else {
            let t = random_group(rng, max_gens);
            let h = random_hom(rng, &colim.group, &t);
            (t, h)
        };
        for &y in base.upper_covers(x) {
            let local = members.iter().position(|&m| m == y).expect("upper cover is above");
            let k = base.cover_position(y, x).expect("cover");
            maps[k] = Some(h.compose(&colim.injection(&partial, local)?)?);
        }
        groups[x] = Some(t);
    }
    CellularCosheaf::new(
        base,
        groups.into_iter().map(|g| g.expect("every element visited")).collect(),
        maps.into_iter().map(|m| m.expect("every cover visited")).collect(),
    )
}

/// Union of a few random simplices on at most `max_vertices` vertices.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, cfg: &CorpusConfig) -> SimplicialComplex {
    let n = rng.gen_range(1..=cfg.max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let facets = rng.gen_range(1..=cfg.max_facets);
    let mut simplices = Vec::with_capacity(facets);
    let mut verts: Vec<usize> = (0..n).collect();
    for _ in 0..facets {
        let size = rng.gen_range(1..=(cfg.max_dim + 1).min(n));
        verts.shuffle(rng);
        simplices.push(verts[..size].to_vec());
    }
    SimplicialComplex::from_indices(names, &simplices).expect("valid vertex indices")
}

/// Random poset on `1..=max_elements` elements: a random relation compatible
/// with the index order, closed transitively, given by its covering pairs.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, max_elements: usize) -> FinPoset {
    let n = rng.gen_range(1..=max_elements);
    let mut below = vec![vec![false; n]; n];
    for hi in 0..n {
        for lo in 0..hi {
            if rng.gen_bool(0.4) {
                below[hi][lo] = true;
            }
        }
    }
    for mid in 0..n {
        for hi in 0..n {
            for lo in 0..n {
                if below[hi][mid] && below[mid][lo] {
                    below[hi][lo] = true;
                }
            }
        }
    }
    let mut hasse = Vec::new();
    for hi in 0..n {
        for lo in 0..n {
            if below[hi][lo] && !(0..n).any(|m| below[hi][m] && below[m][lo]) {
                hasse.push((hi, lo));
            }
        }
    }
    let names = (0..n).map(|i| format!("p{i}")).collect();
    FinPoset::from_indices(names, hasse).expect("transitive reduction of an order")
}

/// A complex together with a cosheaf on its face poset.
#[derive(Clone, Debug)]
pub struct Instance {
    pub complex: SimplicialComplex,
    pub cosheaf: CellularCosheaf,
}

/// Instance number `index` of the corpus for `seed`; each instance has its
/// own stream so instances can be generated independently.
pub fn corpus_instance(seed: u64, index: u64, cfg: &CorpusConfig) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let complex = random_complex(&mut rng, cfg);
    let base = Arc::new(complex.face_poset());
    let cosheaf = random_cosheaf(&mut rng, &base, cfg.max_gens)?;
    Ok(Instance { complex, cosheaf })
}
