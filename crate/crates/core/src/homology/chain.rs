use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{homology_at, AbGroup, AbHom, IsoClass};
use crate::linalg::smith_diagonal;

static BUILT: AtomicUsize = AtomicUsize::new(0);
static VERIFIED: AtomicUsize = AtomicUsize::new(0);

/// Process-wide tallies of chain complexes whose construction was attempted
/// and of those whose `∂∘∂ = 0` check passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexCounters {
    pub built: usize,
    pub verified: usize,
}

pub fn complex_counters() -> ComplexCounters {
    ComplexCounters {
        built: BUILT.load(Ordering::SeqCst),
        verified: VERIFIED.load(Ordering::SeqCst),
    }
}

/// Nonnegatively graded chain complex, `groups[n]` in degree `n`, with
/// `boundaries[n - 1]: C_n -> C_{n-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    groups: Vec<AbGroup>,
    boundaries: Vec<AbHom>,
}

impl ChainComplex {
    /// Checks endpoints and that every composite of consecutive boundaries is
    /// zero as a homomorphism.
    pub fn new(groups: Vec<AbGroup>, boundaries: Vec<AbHom>) -> Result<Self> {
        BUILT.fetch_add(1, Ordering::SeqCst);
        if boundaries.len() != groups.len().saturating_sub(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} boundaries for {} degrees",
                boundaries.len(),
                groups.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.source() != &groups[k + 1] || d.target() != &groups[k] {
                return Err(Error::EndpointMismatch(format!("boundary out of degree {}", k + 1)));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].compose(&boundaries[k])?.is_zero()? {
                return Err(Error::Contract(format!("boundary squares to a nonzero map in degree {}", k + 1)));
            }
        }
        VERIFIED.fetch_add(1, Ordering::SeqCst);
        Ok(ChainComplex { groups, boundaries })
    }

    pub fn zero() -> Self {
        ChainComplex::new(Vec::new(), Vec::new()).expect("empty complex")
    }

    /// Highest degree carrying a group (possibly trivial), or `None` when empty.
    pub fn top(&self) -> Option<usize> {
        self.groups.len().checked_sub(1)
    }

    pub fn group(&self, n: usize) -> Option<&AbGroup> {
        self.groups.get(n)
    }

    pub fn groups(&self) -> &[AbGroup] {
        &self.groups
    }

    /// `∂_n: C_n -> C_{n-1}` for `n >= 1`.
    pub fn boundary(&self, n: usize) -> Option<&AbHom> {
        n.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    pub fn boundaries(&self) -> &[AbHom] {
        &self.boundaries
    }

    fn is_free(&self) -> bool {
        self.groups.iter().all(|g| g.relations().cols() == 0)
    }
}

/// Per-degree homology. For complexes of free groups the ranks and Smith
/// diagonals of the boundary matrices are used directly; otherwise each
/// degree goes through `ker / im` of presented groups.
pub fn homology(c: &ChainComplex) -> Result<Vec<IsoClass>> {
    let n = c.groups.len();
    if c.is_free() {
        let diags: Vec<Vec<BigInt>> = c.boundaries.iter().map(|d| smith_diagonal(d.matrix())).collect();
        let ranks: Vec<usize> = diags.iter().map(|d| d.iter().filter(|x| !x.is_zero()).count()).collect();
        return Ok((0..n)
            .map(|k| {
                let out_rank = if k == 0 { 0 } else { ranks[k - 1] };
                let in_rank = if k + 1 < n { ranks[k] } else { 0 };
                let torsion = if k + 1 < n {
                    diags[k]
                        .iter()
                        .filter(|x| !x.is_zero() && !x.is_one())
                        .cloned()
                        .collect()
                } else {
                    Vec::new()
                };
                IsoClass {
                    free_rank: c.groups[k].gens() - out_rank - in_rank,
                    torsion,
                }
            })
            .collect());
    }
    let trivial = AbGroup::trivial();
    (0..n)
        .map(|k| {
            let incoming = match c.boundaries.get(k) {
                Some(d) => d.clone(),
                None => AbHom::zero(&trivial, &c.groups[k]),
            };
            let outgoing = match k.checked_sub(1) {
                Some(j) => c.boundaries[j].clone(),
                None => AbHom::zero(&c.groups[0], &trivial),
            };
            homology_at(&incoming, &outgoing)
        })
        .collect()
}

/// Which computation produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pipeline {
    Bm,
    Cech,
    Derived,
    Subdivision,
}

impl Pipeline {
    pub fn tag(self) -> &'static str {
        match self {
            Pipeline::Bm => "bm",
            Pipeline::Cech => "cech",
            Pipeline::Derived => "derived",
            Pipeline::Subdivision => "subdivision",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Pipeline> {
        match tag {
            "bm" => Some(Pipeline::Bm),
            "cech" => Some(Pipeline::Cech),
            "derived" => Some(Pipeline::Derived),
            "subdivision" => Some(Pipeline::Subdivision),
            _ => None,
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Homology per degree `0..groups.len()`; degrees past the end are trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub pipeline: Pipeline,
    pub groups: Vec<IsoClass>,
}

impl HomologyReport {
    pub fn new(pipeline: Pipeline, groups: Vec<IsoClass>) -> Self {
        HomologyReport { pipeline, groups }
    }

    pub fn from_complex(pipeline: Pipeline, c: &ChainComplex) -> Result<Self> {
        Ok(HomologyReport::new(pipeline, homology(c)?))
    }

    pub fn degree(&self, n: usize) -> IsoClass {
        self.groups.get(n).cloned().unwrap_or_else(IsoClass::trivial)
    }

    /// Degrees up to and including the last nontrivial one.
    pub fn trimmed(&self) -> Vec<IsoClass> {
        let end = self.groups.iter().rposition(|g| !g.is_trivial()).map_or(0, |i| i + 1);
        self.groups[..end].to_vec()
    }

    /// First degree where the two reports differ, treating missing degrees as trivial.
    pub fn first_difference(&self, other: &HomologyReport) -> Option<usize> {
        let n = self.groups.len().max(other.groups.len());
        (0..n).find(|&k| self.degree(k) != other.degree(k))
    }

    pub fn agrees_with(&self, other: &HomologyReport) -> bool {
        self.first_difference(other).is_none()
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.pipeline)?;
        for (k, g) in self.groups.iter().enumerate() {
            write!(f, " H{k}={g}")?;
        }
        Ok(())
    }
}
