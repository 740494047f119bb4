//! Finitely generated abelian groups carried as relation presentations, and
//! homomorphisms between them.
//!
//! A group with `g` generators and relation matrix `R` (`g` rows, one column
//! per relation) denotes `Z^g / colspan(R)`. Homomorphism matrices act on the
//! left of column vectors: column `j` is the image of source generator `j`
//! written in target generators. Groups stay in presentation form everywhere;
//! [`IsoClass`] is computed only when two groups need to be compared.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{snf, smith_diagonal, IntMatrix, Snf};

/// Isomorphism invariants: free rank and invariant factors `d_1 | d_2 | ...`, all `>= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IsoClass {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl IsoClass {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        IsoClass {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariants of a presentation from its Smith diagonal.
    fn from_diagonal(gens: usize, diagonal: &[BigInt]) -> Self {
        let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
        IsoClass {
            free_rank: gens - nonzero,
            torsion: diagonal
                .iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

struct GroupInner {
    gens: usize,
    relations: IntMatrix,
    lattice: OnceLock<Snf>,
}

/// `Z^gens / colspan(relations)`. Cheap to clone; the Smith form of the
/// relation matrix is computed once on demand and shared.
#[derive(Clone)]
pub struct AbGroup(Arc<GroupInner>);

impl AbGroup {
    pub fn new(gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != gens {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                gens
            )));
        }
        Ok(AbGroup(Arc::new(GroupInner {
            gens,
            relations,
            lattice: OnceLock::new(),
        })))
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("shape is consistent")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: i64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            Self::new(1, IntMatrix::from_rows(&[[n]])).expect("shape is consistent")
        }
    }

    /// `Z^free_rank + Z/t_1 + ...` with the free generators first.
    pub fn from_invariants(free_rank: usize, torsion: &[BigInt]) -> Self {
        let gens = free_rank + torsion.len();
        let mut rel = IntMatrix::zeros(gens, torsion.len());
        for (k, t) in torsion.iter().enumerate() {
            rel.set(free_rank + k, k, t.clone());
        }
        Self::new(gens, rel).expect("shape is consistent")
    }

    pub fn gens(&self) -> usize {
        self.0.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    /// Smith form of the relation matrix.
    pub fn lattice(&self) -> &Snf {
        self.0.lattice.get_or_init(|| snf(&self.0.relations))
    }

    /// Whether `v` (a coordinate vector in the generators) is zero in the group.
    pub fn is_zero_element(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.gens() {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in a group with {} generators",
                v.len(),
                self.gens()
            )));
        }
        if v.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        if self.relations().cols() == 0 {
            return Ok(false);
        }
        self.lattice().contains(v)
    }

    pub fn iso_class(&self) -> IsoClass {
        let diagonal = match self.0.lattice.get() {
            Some(s) => s.diagonal.clone(),
            None => smith_diagonal(&self.0.relations),
        };
        IsoClass::from_diagonal(self.gens(), &diagonal)
    }

    pub fn is_trivial(&self) -> bool {
        self.iso_class().is_trivial()
    }

    pub fn same_presentation(&self, other: &AbGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.gens() == other.gens() && self.relations() == other.relations())
    }

    /// Isomorphic group in Smith coordinates (generators killed by a unit
    /// relation dropped), with the isomorphisms in both directions.
    pub fn simplified(&self) -> Simplification {
        let s = self.lattice();
        let rank = s.rank();
        let kept: Vec<usize> = (0..self.gens())
            .filter(|&i| !(i < rank && s.diagonal[i].is_one()))
            .collect();
        let torsion_slots: Vec<usize> = kept.iter().copied().filter(|&i| i < rank).collect();
        let mut rel = IntMatrix::zeros(kept.len(), torsion_slots.len());
        for (col, &i) in torsion_slots.iter().enumerate() {
            let row = kept.iter().position(|&k| k == i).expect("kept index");
            rel.set(row, col, s.diagonal[i].clone());
        }
        let group = AbGroup::new(kept.len(), rel).expect("shape is consistent");
        let to = AbHom::from_parts_unchecked(self.clone(), group.clone(), s.u.select_rows(&kept));
        let from = AbHom::from_parts_unchecked(group.clone(), self.clone(), s.u_inv.select_columns(&kept));
        Simplification { group, to, from }
    }
}

impl PartialEq for AbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other)
    }
}

impl Eq for AbGroup {}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbGroup(gens={}, relations={:?})", self.gens(), self.relations())
    }
}

/// A group rewritten in Smith coordinates together with the isomorphisms.
#[derive(Clone, Debug)]
pub struct Simplification {
    pub group: AbGroup,
    /// original → simplified
    pub to: AbHom,
    /// simplified → original
    pub from: AbHom,
}

/// Validated homomorphism between presented groups.
#[derive(Clone, Debug)]
pub struct AbHom {
    source: AbGroup,
    target: AbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    /// Validates dimensions and well-definedness: every source relation must
    /// map into the target relation lattice.
    pub fn new(source: AbGroup, target: AbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.gens(), source.gens()) {
            return Err(Error::DimensionMismatch(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        let rel = source.relations();
        if rel.cols() > 0 {
            let images = matrix.mul(rel)?;
            for j in 0..images.cols() {
                if !target.is_zero_element(&images.column(j))? {
                    return Err(Error::IllDefinedHom { column: j });
                }
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    /// For maps that are well defined by construction (composites, Smith
    /// transforms). Dimensions are still asserted.
    pub(crate) fn from_parts_unchecked(source: AbGroup, target: AbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (target.gens(), source.gens()));
        AbHom {
            source,
            target,
            matrix,
        }
    }

    pub fn zero(source: &AbGroup, target: &AbGroup) -> Self {
        Self::from_parts_unchecked(
            source.clone(),
            target.clone(),
            IntMatrix::zeros(target.gens(), source.gens()),
        )
    }

    pub fn identity(group: &AbGroup) -> Self {
        Self::from_parts_unchecked(group.clone(), group.clone(), IntMatrix::identity(group.gens()))
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AbHom) -> Result<AbHom> {
        if inner.target != self.source {
            return Err(Error::EndpointMismatch(
                "composite: inner target differs from outer source".into(),
            ));
        }
        Ok(Self::from_parts_unchecked(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix)?,
        ))
    }

    pub fn is_zero(&self) -> Result<bool> {
        for j in 0..self.matrix.cols() {
            if !self.target.is_zero_element(&self.matrix.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn scale(&self, k: i64) -> AbHom {
        Self::from_parts_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.scale(&BigInt::from(k)),
        )
    }
}

/// Equality of homomorphisms as maps of groups: the matrices may differ by
/// anything landing in the target relation lattice.
pub fn hom_equal(f: &AbHom, g: &AbHom) -> Result<bool> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::EndpointMismatch(
            "hom_equal on homomorphisms with different endpoints".into(),
        ));
    }
    let diff = f.matrix.sub(&g.matrix)?;
    for j in 0..diff.cols() {
        if !f.target.is_zero_element(&diff.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn make_hom(source: &AbGroup, target: &AbGroup, matrix: IntMatrix) -> Result<AbHom> {
    AbHom::new(source.clone(), target.clone(), matrix)
}

pub fn iso_class(g: &AbGroup) -> IsoClass {
    g.iso_class()
}

/// Block-diagonal direct sum with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: AbGroup,
    pub injections: Vec<AbHom>,
    pub projections: Vec<AbHom>,
    pub offsets: Vec<usize>,
}

pub fn direct_sum(groups: &[AbGroup]) -> DirectSum {
    let gens: usize = groups.iter().map(AbGroup::gens).sum();
    let rels: usize = groups.iter().map(|g| g.relations().cols()).sum();
    let mut relations = IntMatrix::zeros(gens, rels);
    let mut offsets = Vec::with_capacity(groups.len());
    let (mut r, mut c) = (0, 0);
    for g in groups {
        offsets.push(r);
        relations.put_block(r, c, g.relations());
        r += g.gens();
        c += g.relations().cols();
    }
    let group = AbGroup::new(gens, relations).expect("shape is consistent");
    let mut injections = Vec::with_capacity(groups.len());
    let mut projections = Vec::with_capacity(groups.len());
    for (g, &off) in groups.iter().zip(&offsets) {
        let mut inj = IntMatrix::zeros(gens, g.gens());
        let mut proj = IntMatrix::zeros(g.gens(), gens);
        for k in 0..g.gens() {
            inj.set(off + k, k, BigInt::one());
            proj.set(k, off + k, BigInt::one());
        }
        injections.push(AbHom::from_parts_unchecked(g.clone(), group.clone(), inj));
        projections.push(AbHom::from_parts_unchecked(group.clone(), g.clone(), proj));
    }
    DirectSum {
        group,
        injections,
        projections,
        offsets,
    }
}

/// Kernel of `f` with its inclusion into the source.
///
/// The preimage lattice `{v : f v ∈ target relations}` is the projection of
/// the integer kernel of `[M | R_target]`; a basis of it becomes the kernel's
/// generators, and the source relations (which lie in that lattice) are
/// rewritten in the basis.
pub fn kernel(f: &AbHom) -> Result<(AbGroup, AbHom)> {
    let g = f.source.gens();
    let combined = f.matrix.hstack(f.target.relations())?;
    let pre = snf(&combined).kernel_basis().row_range(0, g);
    let basis = snf(&pre).lattice_basis();
    let r = basis.cols();
    let src_rel = f.source.relations();
    let mut rel = IntMatrix::zeros(r, src_rel.cols());
    if src_rel.cols() > 0 {
        let bs = snf(&basis);
        for j in 0..src_rel.cols() {
            let c = bs.solve(&src_rel.column(j))?.map_err(|_| {
                Error::Internal("source relation outside the preimage lattice".into())
            })?;
            for (i, x) in c.into_iter().enumerate() {
                rel.set(i, j, x);
            }
        }
    }
    let k = AbGroup::new(r, rel)?;
    let incl = AbHom::new(k.clone(), f.source.clone(), basis)?;
    Ok((k, incl))
}

/// Cokernel of `f`: the target with the columns of `f` adjoined as relations.
pub fn cokernel(f: &AbHom) -> Result<(AbGroup, AbHom)> {
    let rel = f.target.relations().hstack(&f.matrix)?;
    let c = AbGroup::new(f.target.gens(), rel)?;
    let proj = AbHom::from_parts_unchecked(f.target.clone(), c.clone(), IntMatrix::identity(f.target.gens()));
    Ok((c, proj))
}

/// Image of `f`, computed as the kernel of the cokernel projection.
pub fn image(f: &AbHom) -> Result<(AbGroup, AbHom)> {
    let (_, proj) = cokernel(f)?;
    kernel(&proj)
}

/// Expresses each column of `m` (elements of `ambient`) in the generators of
/// the subgroup embedded by `incl`. Fails if some column is not in the image.
pub fn lift_through(incl: &AbHom, m: &IntMatrix) -> Result<IntMatrix> {
    let k = incl.source.gens();
    let combined = incl.matrix.hstack(incl.target.relations())?;
    let s = snf(&combined);
    let mut out = IntMatrix::zeros(k, m.cols());
    for j in 0..m.cols() {
        let x = s
            .solve(&m.column(j))?
            .map_err(|_| Error::Internal(format!("column {j} does not lift through the inclusion")))?;
        for (i, v) in x.into_iter().take(k).enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// `ker g / im f` for composable `A -f-> B -g-> C` with `g ∘ f = 0`.
pub fn homology_group(f: &AbHom, g: &AbHom) -> Result<AbGroup> {
    if f.target != g.source {
        return Err(Error::EndpointMismatch(
            "homology_at: maps are not composable".into(),
        ));
    }
    if !g.compose(f)?.is_zero()? {
        return Err(Error::Contract("g ∘ f is not zero".into()));
    }
    let (k, incl) = kernel(g)?;
    let lifted = lift_through(&incl, &f.matrix)?;
    let rel = k.relations().hstack(&lifted)?;
    AbGroup::new(k.gens(), rel)
}

pub fn homology_at(f: &AbHom, g: &AbHom) -> Result<IsoClass> {
    Ok(homology_group(f, g)?.iso_class())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> AbGroup {
        AbGroup::free(1)
    }

    fn scalar(src: &AbGroup, tgt: &AbGroup, k: i64) -> Result<AbHom> {
        make_hom(src, tgt, IntMatrix::from_rows(&[[k]]))
    }

    fn tors(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn iso_class_examples() {
        let g = AbGroup::new(2, IntMatrix::from_rows(&[[2], [0]])).unwrap();
        assert_eq!(g.iso_class(), IsoClass { free_rank: 1, torsion: tors(&[2]) });
        assert_eq!(AbGroup::free(3).iso_class(), IsoClass::free(3));
        assert!(AbGroup::cyclic(1).iso_class().is_trivial());
    }

    #[test]
    fn make_hom_examples() {
        let z2 = AbGroup::cyclic(2);
        let z4 = AbGroup::cyclic(4);
        assert!(scalar(&z(), &z2, 1).is_ok());
        assert!(matches!(scalar(&z2, &z(), 1), Err(Error::IllDefinedHom { column: 0 })));
        assert!(scalar(&z2, &z4, 2).is_ok());
        assert!(scalar(&z2, &z4, 1).is_err());
        assert!(matches!(
            make_hom(&z(), &z(), IntMatrix::zeros(2, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn hom_equal_examples() {
        let z2 = AbGroup::cyclic(2);
        assert!(hom_equal(&scalar(&z(), &z2, 1).unwrap(), &scalar(&z(), &z2, 3).unwrap()).unwrap());
        assert!(!hom_equal(&scalar(&z(), &z(), 1).unwrap(), &scalar(&z(), &z(), 2).unwrap()).unwrap());
        let t = AbGroup::trivial();
        let a = AbHom::zero(&t, &z());
        assert!(hom_equal(&a, &a.clone()).unwrap());
        assert!(hom_equal(&scalar(&z(), &z(), 1).unwrap(), &scalar(&z(), &z2, 1).unwrap()).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&[z(), AbGroup::cyclic(2)]);
        assert_eq!(s.group.iso_class(), IsoClass { free_rank: 1, torsion: tors(&[2]) });
        assert!(direct_sum(&[]).group.iso_class().is_trivial());
        let s = direct_sum(&[AbGroup::cyclic(2), AbGroup::cyclic(4)]);
        assert_eq!(s.group.iso_class(), IsoClass { free_rank: 0, torsion: tors(&[2, 4]) });
        for (inj, proj) in s.injections.iter().zip(&s.projections) {
            assert!(hom_equal(&proj.compose(inj).unwrap(), &AbHom::identity(inj.source())).unwrap());
        }
    }

    #[test]
    fn kernel_examples() {
        let (k, _) = kernel(&scalar(&z(), &z(), 2).unwrap()).unwrap();
        assert!(k.iso_class().is_trivial());

        let (k, incl) = kernel(&scalar(&z(), &AbGroup::cyclic(2), 1).unwrap()).unwrap();
        assert_eq!(k.iso_class(), IsoClass::free(1));
        assert_eq!(num_traits::Signed::abs(incl.matrix().get(0, 0)), BigInt::from(2));

        let (k, _) = kernel(&scalar(&AbGroup::cyclic(4), &AbGroup::cyclic(2), 1).unwrap()).unwrap();
        assert_eq!(k.iso_class(), IsoClass { free_rank: 0, torsion: tors(&[2]) });
    }

    #[test]
    fn cokernel_examples() {
        let (c, _) = cokernel(&scalar(&z(), &z(), 3).unwrap()).unwrap();
        assert_eq!(c.iso_class(), IsoClass { free_rank: 0, torsion: tors(&[3]) });

        let g = AbGroup::from_invariants(1, &tors(&[6]));
        let (c, _) = cokernel(&AbHom::zero(&AbGroup::trivial(), &g)).unwrap();
        assert_eq!(c.iso_class(), g.iso_class());

        let z2 = AbGroup::free(2);
        let f = make_hom(&z2, &z2, IntMatrix::from_rows(&[[2, 0], [0, 4]])).unwrap();
        let (c, _) = cokernel(&f).unwrap();
        assert_eq!(c.iso_class(), IsoClass { free_rank: 0, torsion: tors(&[2, 4]) });
    }

    #[test]
    fn homology_at_examples() {
        let t = AbGroup::trivial();
        let h = homology_at(&AbHom::zero(&t, &z()), &AbHom::zero(&z(), &t)).unwrap();
        assert_eq!(h, IsoClass::free(1));

        let h = homology_at(&scalar(&z(), &z(), 2).unwrap(), &AbHom::zero(&z(), &t)).unwrap();
        assert_eq!(h, IsoClass { free_rank: 0, torsion: tors(&[2]) });

        let h = homology_at(&scalar(&z(), &z(), 1).unwrap(), &scalar(&z(), &z(), 0).unwrap()).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn homology_rejects_nonzero_composite() {
        let f = scalar(&z(), &z(), 1).unwrap();
        assert!(matches!(homology_at(&f, &f), Err(Error::Contract(_))));
    }

    #[test]
    fn simplification_is_an_isomorphism() {
        let g = AbGroup::new(3, IntMatrix::from_rows(&[[2, 0], [4, 6], [0, 0]])).unwrap();
        let s = g.simplified();
        assert_eq!(s.group.iso_class(), g.iso_class());
        assert!(hom_equal(&s.from.compose(&s.to).unwrap(), &AbHom::identity(&g)).unwrap());
        assert!(hom_equal(&s.to.compose(&s.from).unwrap(), &AbHom::identity(&s.group)).unwrap());
        // well-definedness of both directions
        AbHom::new(g.clone(), s.group.clone(), s.to.matrix().clone()).unwrap();
        AbHom::new(s.group.clone(), g.clone(), s.from.matrix().clone()).unwrap();
    }

    #[test]
    fn display() {
        assert_eq!(AbGroup::from_invariants(2, &tors(&[2, 4])).iso_class().to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(IsoClass::trivial().to_string(), "0");
    }
}
