//! Cellular cosheaves (functors on a finite poset with maps running downward),
//! the associated cosheaf `F̂(U) = colim_{x ∈ U} F(x)` on open sets,
//! precosheaf tables, the cosheaf axiom check, cosheafification, pointwise
//! kernels, skyscrapers and flasqueness.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{cokernel, direct_sum, hom_equal, kernel, lift_through, AbGroup, AbHom, IsoClass};
use crate::linalg::IntMatrix;
use crate::poset::{nerve_intersections, Cover, FinPoset, OpenSet};

struct CosheafInner {
    base: Arc<FinPoset>,
    groups: Vec<AbGroup>,
    /// Aligned with `base.hasse()`.
    maps: Vec<AbHom>,
    /// `(upper, lower) -> F(upper >= lower)` for every comparable pair.
    composites: HashMap<(usize, usize), AbHom>,
}

/// A validated functor from a finite poset to abelian groups, with a map
/// `F(y) -> F(x)` for every covering pair `y ⋗ x`.
#[derive(Clone)]
pub struct CellularCosheaf(Arc<CosheafInner>);

impl std::fmt::Debug for CellularCosheaf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CellularCosheaf")
            .field("elements", &self.0.base.names())
            .field("groups", &self.0.groups.iter().map(AbGroup::iso_class).collect::<Vec<_>>())
            .finish()
    }
}

/// Validates endpoints and path independence, and records every composite.
///
/// Path independence is checked by dynamic programming from each upper
/// element downward: the composite to `x` via each upper cover of `x` must
/// agree. By induction this covers every pair of maximal chains.
pub fn validate_cosheaf(base: &Arc<FinPoset>, groups: Vec<AbGroup>, maps: Vec<AbHom>) -> Result<CellularCosheaf> {
    let p = base.as_ref();
    if groups.len() != p.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} groups for {} elements",
            groups.len(),
            p.len()
        )));
    }
    if maps.len() != p.hasse().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} maps for {} covering pairs",
            maps.len(),
            p.hasse().len()
        )));
    }
    for (&(u, l), m) in p.hasse().iter().zip(&maps) {
        if m.source() != &groups[u] || m.target() != &groups[l] {
            return Err(Error::EndpointMismatch(format!(
                "map '{}>{}' does not run from F({}) to F({})",
                p.name(u),
                p.name(l),
                p.name(u),
                p.name(l)
            )));
        }
    }

    let mut composites: HashMap<(usize, usize), AbHom> = HashMap::new();
    let mut via: HashMap<(usize, usize), usize> = HashMap::new();
    let top_down: Vec<usize> = p.linear_extension().iter().rev().copied().collect();
    for z in 0..p.len() {
        composites.insert((z, z), AbHom::identity(&groups[z]));
        let below = p.down_set(z);
        for &x in &top_down {
            if x == z || !below.contains(x) {
                continue;
            }
            let mut first: Option<(usize, AbHom)> = None;
            for &y in p.upper_covers(x) {
                if !below.contains(y) {
                    continue;
                }
                let step = &maps[p.cover_position(y, x).expect("cover")];
                let candidate = step.compose(&composites[&(z, y)])?;
                match &first {
                    None => first = Some((y, candidate)),
                    Some((y0, reference)) => {
                        if !hom_equal(reference, &candidate)? {
                            let chain = |mid: usize| {
                                let mut c = chain_down(&via, z, mid);
                                c.push(x);
                                c.into_iter().map(|e| p.name(e).to_string()).collect()
                            };
                            return Err(Error::NonCommutingDiamond {
                                upper: p.name(z).to_string(),
                                lower: p.name(x).to_string(),
                                first: chain(*y0),
                                second: chain(y),
                            });
                        }
                    }
                }
            }
            let (y, hom) = first.expect("an element strictly below z has an upper cover below z");
            via.insert((z, x), y);
            composites.insert((z, x), hom);
        }
    }
    Ok(CellularCosheaf(Arc::new(CosheafInner {
        base: base.clone(),
        groups,
        maps,
        composites,
    })))
}

fn chain_down(via: &HashMap<(usize, usize), usize>, z: usize, x: usize) -> Vec<usize> {
    let mut rev = vec![x];
    let mut cur = x;
    while cur != z {
        cur = via[&(z, cur)];
        rev.push(cur);
    }
    rev.reverse();
    rev
}

impl CellularCosheaf {
    pub fn new(base: &Arc<FinPoset>, groups: Vec<AbGroup>, maps: Vec<AbHom>) -> Result<Self> {
        validate_cosheaf(base, groups, maps)
    }

    /// Builds from per-element groups and per-cover matrices.
    pub fn from_matrices(base: &Arc<FinPoset>, groups: Vec<AbGroup>, matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.len() != base.hasse().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} covering pairs",
                matrices.len(),
                base.hasse().len()
            )));
        }
        let maps = base
            .hasse()
            .iter()
            .zip(matrices)
            .map(|(&(u, l), m)| {
                if groups.len() != base.len() {
                    return Err(Error::DimensionMismatch("group count".into()));
                }
                AbHom::new(groups[u].clone(), groups[l].clone(), m)
            })
            .collect::<Result<Vec<_>>>()?;
        validate_cosheaf(base, groups, maps)
    }

    /// Same group everywhere with identity maps.
    pub fn constant(base: &Arc<FinPoset>, group: &AbGroup) -> Self {
        let groups = vec![group.clone(); base.len()];
        let maps = base.hasse().iter().map(|_| AbHom::identity(group)).collect();
        validate_cosheaf(base, groups, maps).expect("constant functor is valid")
    }

    pub fn zero(base: &Arc<FinPoset>) -> Self {
        Self::constant(base, &AbGroup::trivial())
    }

    pub fn base(&self) -> &Arc<FinPoset> {
        &self.0.base
    }

    pub fn group(&self, x: usize) -> &AbGroup {
        &self.0.groups[x]
    }

    pub fn groups(&self) -> &[AbGroup] {
        &self.0.groups
    }

    /// Structure map of the covering pair `upper ⋗ lower`.
    pub fn map(&self, upper: usize, lower: usize) -> Result<&AbHom> {
        let p = &self.0.base;
        let k = p.cover_position(upper, lower).ok_or_else(|| Error::NotCovering {
            upper: p.name(upper).to_string(),
            lower: p.name(lower).to_string(),
        })?;
        Ok(&self.0.maps[k])
    }

    pub fn maps(&self) -> &[AbHom] {
        &self.0.maps
    }

    /// `F(upper >= lower)`, the (path-independent) composite.
    pub fn composite(&self, upper: usize, lower: usize) -> Result<&AbHom> {
        self.0.composites.get(&(upper, lower)).ok_or_else(|| {
            let p = &self.0.base;
            Error::Contract(format!("'{}' is not above '{}'", p.name(upper), p.name(lower)))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.0.groups.iter().all(AbGroup::is_trivial)
    }

    /// Pointwise direct sum over a common base.
    pub fn direct_sum(parts: &[CellularCosheaf]) -> Result<CellularCosheaf> {
        let base = parts
            .first()
            .map(|f| f.base().clone())
            .ok_or_else(|| Error::Contract("direct sum of no cosheaves has no base".into()))?;
        if parts.iter().any(|f| f.base().as_ref() != base.as_ref()) {
            return Err(Error::AmbientMismatch);
        }
        let sums: Vec<_> = (0..base.len())
            .map(|x| direct_sum(&parts.iter().map(|f| f.group(x).clone()).collect::<Vec<_>>()))
            .collect();
        let mut maps = Vec::with_capacity(base.hasse().len());
        for (k, &(u, l)) in base.hasse().iter().enumerate() {
            let mut m = IntMatrix::zeros(sums[l].group.gens(), sums[u].group.gens());
            for (i, f) in parts.iter().enumerate() {
                m.put_block(sums[l].offsets[i], sums[u].offsets[i], f.maps()[k].matrix());
            }
            maps.push(AbHom::new(sums[u].group.clone(), sums[l].group.clone(), m)?);
        }
        validate_cosheaf(&base, sums.into_iter().map(|s| s.group).collect(), maps)
    }

    /// Restriction to an open set, on the induced sub-poset.
    pub fn restrict(&self, u: &OpenSet) -> Result<(CellularCosheaf, Vec<usize>)> {
        let (sub, members) = self.base().restrict(u)?;
        let groups = members.iter().map(|&x| self.group(x).clone()).collect();
        let maps = sub
            .hasse()
            .iter()
            .map(|&(a, b)| self.map(members[a], members[b]).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok((validate_cosheaf(&Arc::new(sub), groups, maps)?, members))
    }
}

/// Colimit presentation over a subset of the base, with generator offsets.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub group: AbGroup,
    pub members: Vec<usize>,
    offsets: HashMap<usize, usize>,
}

impl Colimit {
    pub fn offset(&self, x: usize) -> Option<usize> {
        self.offsets.get(&x).copied()
    }

    /// Cocone map `F(x) -> colim`.
    pub fn injection(&self, f: &CellularCosheaf, x: usize) -> Result<AbHom> {
        let off = self
            .offset(x)
            .ok_or_else(|| Error::UnknownElement(f.base().name(x).to_string()))?;
        let gx = f.group(x);
        let mut m = IntMatrix::zeros(self.group.gens(), gx.gens());
        for k in 0..gx.gens() {
            m.set(off + k, k, BigInt::one());
        }
        AbHom::new(gx.clone(), self.group.clone(), m)
    }
}

/// Covering pairs of the sub-poset induced on `members`.
fn induced_covers(p: &FinPoset, members: &[usize]) -> Vec<(usize, usize)> {
    let set: HashSet<usize> = members.iter().copied().collect();
    let up_closed = members.iter().all(|&x| p.up_set(x).ones().all(|y| set.contains(&y)));
    if up_closed {
        return p
            .hasse()
            .iter()
            .copied()
            .filter(|(a, b)| set.contains(a) && set.contains(b))
            .collect();
    }
    let mut out = Vec::new();
    for &y in members {
        for &x in members {
            if p.lt(x, y) && !members.iter().any(|&z| p.lt(x, z) && p.lt(z, y)) {
                out.push((y, x));
            }
        }
    }
    out
}

/// Presentation of `colim_{x ∈ S} F(x)`: the direct sum of the `F(x)` with,
/// for each covering pair `y ⋗ x` inside `S` and each generator `g` of
/// `F(y)`, the relation `ι_x(F(y⋗x) g) - ι_y(g)`.
pub fn colim_over(f: &CellularCosheaf, subset: &[usize]) -> Result<Colimit> {
    let p = f.base();
    let mut members: Vec<usize> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&x| x >= p.len()) {
        return Err(Error::UnknownElement(format!("index {bad}")));
    }
    let mut offsets = HashMap::new();
    let mut gens = 0;
    for &x in &members {
        offsets.insert(x, gens);
        gens += f.group(x).gens();
    }
    let covers = induced_covers(p, &members);
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for &x in &members {
        let rel = f.group(x).relations();
        for j in 0..rel.cols() {
            let mut col = vec![BigInt::from(0); gens];
            for i in 0..rel.rows() {
                col[offsets[&x] + i] = rel.get(i, j).clone();
            }
            columns.push(col);
        }
    }
    for &(y, x) in &covers {
        let m = f.composite(y, x)?.matrix();
        for j in 0..m.cols() {
            let mut col = vec![BigInt::from(0); gens];
            for i in 0..m.rows() {
                col[offsets[&x] + i] = m.get(i, j).clone();
            }
            col[offsets[&y] + j] -= 1;
            columns.push(col);
        }
    }
    let group = AbGroup::new(gens, IntMatrix::from_columns(gens, &columns))?;
    Ok(Colimit {
        group,
        members,
        offsets,
    })
}

/// `F̂(U)`.
pub fn hat_eval(f: &CellularCosheaf, u: &OpenSet) -> Result<AbGroup> {
    f.base().check_ambient(u)?;
    Ok(colim_over(f, &u.elements())?.group)
}

/// `F̂(V ⊆ U)`: generator blocks of `V` land on the same blocks in `U`.
pub fn hat_extension(f: &CellularCosheaf, v: &OpenSet, u: &OpenSet) -> Result<AbHom> {
    f.base().check_ambient(v)?;
    f.base().check_ambient(u)?;
    if !v.is_subset(u) {
        return Err(Error::Contract("extension requested for V not contained in U".into()));
    }
    let cv = colim_over(f, &v.elements())?;
    let cu = colim_over(f, &u.elements())?;
    let mut m = IntMatrix::zeros(cu.group.gens(), cv.group.gens());
    for &x in &cv.members {
        let (a, b) = (cv.offset(x).expect("member"), cu.offset(x).expect("member"));
        for k in 0..f.group(x).gens() {
            m.set(b + k, a + k, BigInt::one());
        }
    }
    AbHom::new(cv.group, cu.group, m)
}

/// A natural transformation stored by its components on elements.
#[derive(Clone, Debug)]
pub struct NatTrans {
    source: CellularCosheaf,
    target: CellularCosheaf,
    components: Vec<AbHom>,
}

impl NatTrans {
    /// Validates component endpoints and every naturality square on covering pairs.
    pub fn new(source: &CellularCosheaf, target: &CellularCosheaf, components: Vec<AbHom>) -> Result<Self> {
        let p = source.base();
        if p.as_ref() != target.base().as_ref() {
            return Err(Error::AmbientMismatch);
        }
        if components.len() != p.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for {} elements",
                components.len(),
                p.len()
            )));
        }
        for (x, c) in components.iter().enumerate() {
            if c.source() != source.group(x) || c.target() != target.group(x) {
                return Err(Error::EndpointMismatch(format!("component at '{}'", p.name(x))));
            }
        }
        for (k, &(u, l)) in p.hasse().iter().enumerate() {
            let left = target.maps()[k].compose(&components[u])?;
            let right = components[l].compose(&source.maps()[k])?;
            if !hom_equal(&left, &right)? {
                return Err(Error::NotNatural {
                    upper: p.name(u).to_string(),
                    lower: p.name(l).to_string(),
                });
            }
        }
        Ok(NatTrans {
            source: source.clone(),
            target: target.clone(),
            components,
        })
    }

    pub fn from_matrices(source: &CellularCosheaf, target: &CellularCosheaf, matrices: Vec<IntMatrix>) -> Result<Self> {
        let comps = matrices
            .into_iter()
            .enumerate()
            .map(|(x, m)| AbHom::new(source.group(x).clone(), target.group(x).clone(), m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, comps)
    }

    pub fn identity(f: &CellularCosheaf) -> Self {
        let comps = f.groups().iter().map(AbHom::identity).collect();
        Self::new(f, f, comps).expect("identity is natural")
    }

    pub fn source(&self) -> &CellularCosheaf {
        &self.source
    }

    pub fn target(&self) -> &CellularCosheaf {
        &self.target
    }

    pub fn component(&self, x: usize) -> &AbHom {
        &self.components[x]
    }

    pub fn components(&self) -> &[AbHom] {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &NatTrans) -> Result<NatTrans> {
        let comps = self
            .components
            .iter()
            .zip(&inner.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<Vec<_>>>()?;
        NatTrans::new(&inner.source, &self.target, comps)
    }
}

/// `α(U): F̂(U) -> Ĝ(U)`, block diagonal in the components.
pub fn hat_hom(alpha: &NatTrans, u: &OpenSet) -> Result<AbHom> {
    let elems = u.elements();
    let cs = colim_over(&alpha.source, &elems)?;
    let ct = colim_over(&alpha.target, &elems)?;
    let mut m = IntMatrix::zeros(ct.group.gens(), cs.group.gens());
    for &x in &elems {
        m.put_block(ct.offset(x).expect("member"), cs.offset(x).expect("member"), alpha.components[x].matrix());
    }
    AbHom::new(cs.group, ct.group, m)
}

/// Pointwise kernel of `α` with the inclusion into its source. Structure maps
/// are the source maps restricted to the kernels.
pub fn kernel_functor(alpha: &NatTrans) -> Result<(CellularCosheaf, NatTrans)> {
    let src = &alpha.source;
    let p = src.base();
    let kernels: Vec<(AbGroup, AbHom)> = alpha.components.iter().map(kernel).collect::<Result<_>>()?;
    let mut maps = Vec::with_capacity(p.hasse().len());
    for (k, &(u, l)) in p.hasse().iter().enumerate() {
        let pushed = src.maps()[k].matrix().mul(kernels[u].1.matrix())?;
        let lifted = lift_through(&kernels[l].1, &pushed)?;
        maps.push(AbHom::new(kernels[u].0.clone(), kernels[l].0.clone(), lifted).map_err(|e| {
            Error::Internal(format!("induced kernel map '{}>{}' is not well defined: {e}", p.name(u), p.name(l)))
        })?);
    }
    let (groups, incls): (Vec<AbGroup>, Vec<AbHom>) = kernels.into_iter().unzip();
    let kf = validate_cosheaf(p, groups, maps)?;
    let incl = NatTrans::new(&kf, src, incls)?;
    Ok((kf, incl))
}

/// `sky(x, A)`: `A` on every `y` with `x ∈ U_y` (that is `y <= x`), zero
/// elsewhere, identities inside the support.
pub fn skyscraper(base: &Arc<FinPoset>, x: usize, a: &AbGroup) -> Result<CellularCosheaf> {
    if x >= base.len() {
        return Err(Error::UnknownElement(format!("index {x}")));
    }
    let support = base.down_set(x);
    let zero = AbGroup::trivial();
    let groups: Vec<AbGroup> = (0..base.len())
        .map(|y| if support.contains(y) { a.clone() } else { zero.clone() })
        .collect();
    let maps = base
        .hasse()
        .iter()
        .map(|&(u, l)| {
            if support.contains(u) {
                AbHom::identity(a)
            } else {
                AbHom::zero(&groups[u], &groups[l])
            }
        })
        .collect();
    validate_cosheaf(base, groups, maps)
}

/// Whether every extension map between open sets is injective.
///
/// Any inclusion `V ⊆ U` of opens factors through opens that differ by one
/// element (remove a minimal element of `U \ V` at a time), so it suffices to
/// check those elementary inclusions.
pub fn is_flasque(f: &CellularCosheaf, cap: usize) -> Result<bool> {
    let p = f.base();
    for u in p.enumerate_opens(cap)? {
        for x in u.elements() {
            if p.lower_covers(x).iter().any(|&l| u.contains(l)) {
                continue;
            }
            let mut bits = u.members().clone();
            bits.set(x, false);
            let v = p.open_set(bits)?;
            let ext = hat_extension(f, &v, &u)?;
            if !kernel(&ext)?.0.is_trivial() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A (possibly partial) precosheaf given by values on open sets and
/// extension maps for inclusions.
#[derive(Clone, Debug)]
pub struct PrecosheafTable {
    base: Arc<FinPoset>,
    values: HashMap<OpenSet, AbGroup>,
    extensions: HashMap<(OpenSet, OpenSet), AbHom>,
}

impl PrecosheafTable {
    pub fn new(base: &Arc<FinPoset>) -> Self {
        PrecosheafTable {
            base: base.clone(),
            values: HashMap::new(),
            extensions: HashMap::new(),
        }
    }

    pub fn base(&self) -> &Arc<FinPoset> {
        &self.base
    }

    pub fn insert_value(&mut self, u: OpenSet, g: AbGroup) -> Result<()> {
        self.base.check_ambient(&u)?;
        self.values.insert(u, g);
        Ok(())
    }

    pub fn insert_extension(&mut self, v: OpenSet, u: OpenSet, hom: AbHom) -> Result<()> {
        if !v.is_subset(&u) {
            return Err(Error::Contract("extension for V not contained in U".into()));
        }
        if hom.source() != self.value(&v)? || hom.target() != self.value(&u)? {
            return Err(Error::EndpointMismatch("extension endpoints differ from table values".into()));
        }
        self.extensions.insert((v, u), hom);
        Ok(())
    }

    pub fn opens(&self) -> impl Iterator<Item = &OpenSet> {
        self.values.keys()
    }

    pub fn value(&self, u: &OpenSet) -> Result<&AbGroup> {
        self.values
            .get(u)
            .ok_or_else(|| Error::MissingTableEntry(format!("value on {{{}}}", u.names(&self.base).join(","))))
    }

    /// Stored extension, or the identity when `V = U`.
    pub fn extension(&self, v: &OpenSet, u: &OpenSet) -> Result<AbHom> {
        if let Some(h) = self.extensions.get(&(v.clone(), u.clone())) {
            return Ok(h.clone());
        }
        if v == u {
            return Ok(AbHom::identity(self.value(u)?));
        }
        Err(Error::MissingTableEntry(format!(
            "extension {{{}}} ⊆ {{{}}}",
            v.names(&self.base).join(","),
            u.names(&self.base).join(",")
        )))
    }

    /// Identity and composition laws on every stored triple.
    pub fn validate(&self) -> Result<()> {
        for ((v, u), h) in &self.extensions {
            if v == u && !hom_equal(h, &AbHom::identity(self.value(u)?))? {
                return Err(Error::Contract("extension U ⊆ U is not the identity".into()));
            }
        }
        for ((w, v), inner) in &self.extensions {
            for ((v2, u), outer) in &self.extensions {
                if v2 != v {
                    continue;
                }
                if let Some(direct) = self.extensions.get(&(w.clone(), u.clone())) {
                    if !hom_equal(direct, &outer.compose(inner)?)? {
                        return Err(Error::Contract("extensions do not compose".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Evaluation of a precosheaf on opens, as needed by Čech complexes and the
/// cosheaf axiom check.
pub trait OpenEvaluator {
    fn value(&self, u: &OpenSet) -> Result<AbGroup>;
    fn extension(&self, v: &OpenSet, u: &OpenSet) -> Result<AbHom>;
}

impl OpenEvaluator for PrecosheafTable {
    fn value(&self, u: &OpenSet) -> Result<AbGroup> {
        PrecosheafTable::value(self, u).cloned()
    }

    fn extension(&self, v: &OpenSet, u: &OpenSet) -> Result<AbHom> {
        PrecosheafTable::extension(self, v, u)
    }
}

/// `F̂` as an evaluator.
pub struct HatEvaluator<'a>(pub &'a CellularCosheaf);

impl OpenEvaluator for HatEvaluator<'_> {
    fn value(&self, u: &OpenSet) -> Result<AbGroup> {
        hat_eval(self.0, u)
    }

    fn extension(&self, v: &OpenSet, u: &OpenSet) -> Result<AbHom> {
        hat_extension(self.0, v, u)
    }
}

/// Table of `F̂` on the given opens, with extensions for every contained pair.
pub fn hat_table(f: &CellularCosheaf, opens: &[OpenSet]) -> Result<PrecosheafTable> {
    let mut t = PrecosheafTable::new(f.base());
    for u in opens {
        t.insert_value(u.clone(), hat_eval(f, u)?)?;
    }
    for v in opens {
        for u in opens {
            if v.is_subset(u) {
                t.insert_extension(v.clone(), u.clone(), hat_extension(f, v, u)?)?;
            }
        }
    }
    Ok(t)
}

/// The open-set-level kernel `U ↦ ker(α(U))` as a precosheaf table. This is in
/// general not a cosheaf.
pub fn open_kernel_table(alpha: &NatTrans, opens: &[OpenSet]) -> Result<PrecosheafTable> {
    let mut t = PrecosheafTable::new(alpha.source.base());
    let mut incl = HashMap::new();
    for u in opens {
        let (k, i) = kernel(&hat_hom(alpha, u)?)?;
        t.insert_value(u.clone(), k)?;
        incl.insert(u.clone(), i);
    }
    for v in opens {
        for u in opens {
            if !v.is_subset(u) {
                continue;
            }
            let ext = hat_extension(&alpha.source, v, u)?;
            let pushed = ext.matrix().mul(incl[v].matrix())?;
            let lifted = lift_through(&incl[u], &pushed)?;
            let h = AbHom::new(t.value(v)?.clone(), t.value(u)?.clone(), lifted)?;
            t.insert_extension(v.clone(), u.clone(), h)?;
        }
    }
    Ok(t)
}

/// Outcome of comparing the nerve colimit of a cover with the value on the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub nerve_colimit: IsoClass,
    pub value: IsoClass,
    /// The canonical map from the nerve colimit to `T(U)` is an isomorphism.
    pub canonical_is_iso: bool,
}

impl AxiomCheck {
    pub fn holds(&self) -> bool {
        self.canonical_is_iso && self.nerve_colimit == self.value
    }
}

/// Distinct opens ordered by inclusion, with the covering pairs `(smaller, larger)`.
fn inclusion_hasse(opens: &[OpenSet]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, v) in opens.iter().enumerate() {
        for (j, w) in opens.iter().enumerate() {
            if i == j || !v.is_subset(w) {
                continue;
            }
            let between = opens
                .iter()
                .enumerate()
                .any(|(k, z)| k != i && k != j && v.is_subset(z) && z.is_subset(w));
            if !between {
                out.push((i, j));
            }
        }
    }
    out
}

fn is_isomorphism(h: &AbHom) -> Result<bool> {
    Ok(kernel(h)?.0.is_trivial() && cokernel(h)?.0.is_trivial())
}

/// Colimit of the table over `opens` ordered by inclusion, and the canonical
/// map to `T(universe)`.
fn diagram_colimit(t: &dyn OpenEvaluator, opens: &[OpenSet], universe: &OpenSet) -> Result<(AbGroup, AbHom)> {
    let values: Vec<AbGroup> = opens.iter().map(|o| t.value(o)).collect::<Result<_>>()?;
    let sum = direct_sum(&values);
    let gens = sum.group.gens();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        let rel = v.relations();
        for j in 0..rel.cols() {
            let mut col = vec![BigInt::from(0); gens];
            for r in 0..rel.rows() {
                col[sum.offsets[i] + r] = rel.get(r, j).clone();
            }
            columns.push(col);
        }
    }
    for (i, j) in inclusion_hasse(opens) {
        let m = t.extension(&opens[i], &opens[j])?;
        for c in 0..values[i].gens() {
            let mut col = vec![BigInt::from(0); gens];
            for r in 0..values[j].gens() {
                col[sum.offsets[j] + r] = m.matrix().get(r, c).clone();
            }
            col[sum.offsets[i] + c] -= 1;
            columns.push(col);
        }
    }
    let colim = AbGroup::new(gens, IntMatrix::from_columns(gens, &columns))?;
    let target = t.value(universe)?;
    let mut phi = IntMatrix::zeros(target.gens(), gens);
    for (i, o) in opens.iter().enumerate() {
        phi.put_block(0, sum.offsets[i], t.extension(o, universe)?.matrix());
    }
    let phi = AbHom::new(colim.clone(), target, phi)?;
    Ok((colim, phi))
}

/// Checks the cosheaf condition for one cover: the colimit over the nerve
/// (all nonempty intersections of members, ordered by inclusion) must map
/// isomorphically onto `T(U)`.
pub fn cosheaf_axiom_check(t: &dyn OpenEvaluator, u: &OpenSet, cover: &Cover) -> Result<AxiomCheck> {
    if cover.universe() != u {
        return Err(Error::Contract("cover does not cover the given open set".into()));
    }
    let mut opens: Vec<OpenSet> = Vec::new();
    for (_, o) in nerve_intersections(cover) {
        if !opens.contains(&o) {
            opens.push(o);
        }
    }
    let (colim, phi) = diagram_colimit(t, &opens, u)?;
    Ok(AxiomCheck {
        nerve_colimit: colim.iso_class(),
        value: phi.target().iso_class(),
        canonical_is_iso: is_isomorphism(&phi)?,
    })
}

/// The cellular cosheaf `x ↦ T(U_x)` with maps `T(U_y ⊆ U_x)` for `y ⋗ x`.
/// Its associated cosheaf is the cosheafification `T⁺`.
pub fn cosheafify(t: &PrecosheafTable) -> Result<CellularCosheaf> {
    let p = t.base();
    let groups = (0..p.len())
        .map(|x| t.value(&p.principal_open(x)).cloned())
        .collect::<Result<Vec<_>>>()?;
    let maps = p
        .hasse()
        .iter()
        .map(|&(u, l)| t.extension(&p.principal_open(u), &p.principal_open(l)))
        .collect::<Result<Vec<_>>>()?;
    validate_cosheaf(p, groups, maps)
}

/// `colim_{x ∈ U} T(U_x) -> T(U)` induced by the inclusions `U_x ⊆ U`.
pub fn canonical_comparison(t: &PrecosheafTable, u: &OpenSet) -> Result<AbHom> {
    let plus = cosheafify(t)?;
    let c = colim_over(&plus, &u.elements())?;
    let target = t.value(u)?.clone();
    let mut m = IntMatrix::zeros(target.gens(), c.group.gens());
    for &x in &c.members {
        let ext = t.extension(&t.base().principal_open(x), u)?;
        m.put_block(0, c.offset(x).expect("member"), ext.matrix());
    }
    AbHom::new(c.group, target, m)
}

pub fn is_iso(h: &AbHom) -> Result<bool> {
    is_isomorphism(h)
}
