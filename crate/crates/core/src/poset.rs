//! Finite posets and their Alexandroff topology, simplicial complexes, face
//! posets, order complexes, covers and nerves.
//!
//! Orientation: open sets are up-sets, and the smallest open set containing
//! `x` is `U_x = {y : y >= x}`. In a face poset faces sit below their cofaces,
//! so `U_σ` is the open star of `σ`. Cosheaf structure maps run from an
//! element to the elements below it, which makes `x` the terminal object of
//! the diagram over `U_x`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default cap on the number of open sets [`FinPoset::enumerate_opens`] may produce.
pub const DEFAULT_OPEN_CAP: usize = 4096;

/// A validated finite poset given by its Hasse diagram.
#[derive(Clone, Debug)]
pub struct FinPoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// Covering pairs `(upper, lower)` in input order.
    hasse: Vec<(usize, usize)>,
    cover_index: HashMap<(usize, usize), usize>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    /// `up[x] = {y : y >= x}`
    up: Vec<FixedBitSet>,
    /// `down[x] = {y : y <= x}`
    down: Vec<FixedBitSet>,
    /// Elements from bottom to top (a linear extension).
    linear: Vec<usize>,
    fingerprint: u64,
}

impl PartialEq for FinPoset {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint && self.names == other.names && self.hasse == other.hasse
    }
}

impl Eq for FinPoset {}

/// Builds a poset from identifiers and covering pairs `(upper, lower)`.
///
/// Rejects duplicate identifiers, unknown references, cycles (including
/// self-loops), repeated pairs and pairs that are implied by transitivity.
pub fn validate_poset<S: AsRef<str>>(elements: &[S], hasse: &[(S, S)]) -> Result<FinPoset> {
    let mut index = HashMap::new();
    let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::Duplicate(n.clone()));
        }
    }
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_string()));
    let mut pairs = Vec::with_capacity(hasse.len());
    for (u, l) in hasse {
        pairs.push((lookup(u.as_ref())?, lookup(l.as_ref())?));
    }
    FinPoset::from_indices(names, pairs)
}

impl FinPoset {
    pub fn from_indices(names: Vec<String>, hasse: Vec<(usize, usize)>) -> Result<Self> {
        let n = names.len();
        let index: HashMap<String, usize> = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        if index.len() != n {
            let mut seen = HashSet::new();
            let dup = names.iter().find(|s| !seen.insert(*s)).expect("duplicate exists");
            return Err(Error::Duplicate(dup.clone()));
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        let mut cover_index = HashMap::new();
        for (k, &(u, l)) in hasse.iter().enumerate() {
            if u >= n || l >= n {
                return Err(Error::UnknownElement(format!("index {}", u.max(l))));
            }
            if u == l {
                return Err(Error::Cycle(names[u].clone()));
            }
            if cover_index.insert((u, l), k).is_some() {
                return Err(Error::Duplicate(format!("{}>{}", names[u], names[l])));
            }
            upper_covers[l].push(u);
            lower_covers[u].push(l);
        }

        // Kahn's algorithm from the bottom: an element is ready once all of its
        // lower covers are placed.
        let mut pending: Vec<usize> = lower_covers.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&x| pending[x] == 0).collect();
        ready.reverse();
        let mut linear = Vec::with_capacity(n);
        while let Some(x) = ready.pop() {
            linear.push(x);
            for &u in &upper_covers[x] {
                pending[u] -= 1;
                if pending[u] == 0 {
                    ready.push(u);
                }
            }
        }
        if linear.len() != n {
            let stuck = (0..n).find(|&x| pending[x] > 0).expect("cycle member");
            return Err(Error::Cycle(names[stuck].clone()));
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in linear.iter().rev() {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(x);
            for &u in &upper_covers[x] {
                s.union_with(&up[u]);
            }
            up[x] = s;
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in up[x].ones() {
                down[y].insert(x);
            }
        }

        // Transitive reduction: (u, l) is redundant when u lies above another
        // upper cover of l.
        for &(u, l) in &hasse {
            if upper_covers[l].iter().any(|&w| w != u && up[w].contains(u)) {
                return Err(Error::NotCovering {
                    upper: names[u].clone(),
                    lower: names[l].clone(),
                });
            }
        }

        let mut h = DefaultHasher::new();
        names.hash(&mut h);
        hasse.hash(&mut h);
        Ok(FinPoset {
            names,
            index,
            hasse,
            cover_index,
            upper_covers,
            lower_covers,
            up,
            down,
            linear,
            fingerprint: h.finish(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Covering pairs `(upper, lower)`.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn cover_position(&self, upper: usize, lower: usize) -> Option<usize> {
        self.cover_index.get(&(upper, lower)).copied()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Bottom-to-top linear extension.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower_covers[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper_covers[x].is_empty()).collect()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// The smallest open set containing `x`.
    pub fn principal_open(&self, x: usize) -> OpenSet {
        OpenSet {
            members: self.up[x].clone(),
            ambient: self.fingerprint,
        }
    }

    pub fn principal_open_named(&self, name: &str) -> Result<OpenSet> {
        Ok(self.principal_open(self.index_of(name)?))
    }

    pub fn empty_open(&self) -> OpenSet {
        OpenSet {
            members: FixedBitSet::with_capacity(self.len()),
            ambient: self.fingerprint,
        }
    }

    pub fn full_open(&self) -> OpenSet {
        let mut members = FixedBitSet::with_capacity(self.len());
        members.insert_range(..);
        OpenSet {
            members,
            ambient: self.fingerprint,
        }
    }

    /// Validates that `members` is up-closed.
    pub fn open_set(&self, members: FixedBitSet) -> Result<OpenSet> {
        let mut members = members;
        members.grow(self.len());
        if members.len() != self.len() {
            return Err(Error::DimensionMismatch("bitset wider than the poset".into()));
        }
        for x in members.ones() {
            if !self.up[x].is_subset(&members) {
                let missing = self.up[x].difference(&members).next().expect("missing element");
                return Err(Error::NotOpen(format!(
                    "'{}' is a member but '{}' above it is not",
                    self.names[x], self.names[missing]
                )));
            }
        }
        Ok(OpenSet {
            members,
            ambient: self.fingerprint,
        })
    }

    pub fn open_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<OpenSet> {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for n in names {
            bits.insert(self.index_of(n.as_ref())?);
        }
        self.open_set(bits)
    }

    /// Smallest open set containing the given elements.
    pub fn up_closure(&self, elems: impl IntoIterator<Item = usize>) -> OpenSet {
        let mut members = FixedBitSet::with_capacity(self.len());
        for x in elems {
            members.union_with(&self.up[x]);
        }
        OpenSet {
            members,
            ambient: self.fingerprint,
        }
    }

    /// All open sets (up-sets), in a deterministic order, or an error once
    /// more than `cap` have been produced.
    pub fn enumerate_opens(&self, cap: usize) -> Result<Vec<OpenSet>> {
        // Decide elements top-down; x may join only if its upper covers did.
        let order: Vec<usize> = self.linear.iter().rev().copied().collect();
        let mut out = Vec::new();
        let mut current = FixedBitSet::with_capacity(self.len());
        self.enumerate_rec(&order, 0, &mut current, &mut out, cap)?;
        Ok(out)
    }

    fn enumerate_rec(
        &self,
        order: &[usize],
        k: usize,
        current: &mut FixedBitSet,
        out: &mut Vec<OpenSet>,
        cap: usize,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() >= cap {
                return Err(Error::OpenLatticeTooLarge { cap });
            }
            out.push(OpenSet {
                members: current.clone(),
                ambient: self.fingerprint,
            });
            return Ok(());
        }
        let x = order[k];
        self.enumerate_rec(order, k + 1, current, out, cap)?;
        if self.upper_covers[x].iter().all(|&u| current.contains(u)) {
            current.insert(x);
            self.enumerate_rec(order, k + 1, current, out, cap)?;
            current.set(x, false);
        }
        Ok(())
    }

    /// Sub-poset induced on an open set, with the index map back into `self`.
    pub fn restrict(&self, u: &OpenSet) -> Result<(FinPoset, Vec<usize>)> {
        self.check_ambient(u)?;
        let members: Vec<usize> = u.members.ones().collect();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        // Covers between members of an up-set are covers of the ambient poset.
        let hasse = self
            .hasse
            .iter()
            .filter(|(a, b)| pos.contains_key(a) && pos.contains_key(b))
            .map(|(a, b)| (pos[a], pos[b]))
            .collect();
        Ok((FinPoset::from_indices(names, hasse)?, members))
    }

    pub fn check_ambient(&self, u: &OpenSet) -> Result<()> {
        if u.ambient != self.fingerprint {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Length of the longest chain minus one (`-1` as 0 for an empty poset).
    pub fn height(&self) -> usize {
        let mut h = vec![0usize; self.len()];
        for &x in &self.linear {
            for &l in &self.lower_covers[x] {
                h[x] = h[x].max(h[l] + 1);
            }
        }
        h.into_iter().max().unwrap_or(0)
    }
}

/// An up-closed subset of a poset's elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenSet {
    members: FixedBitSet,
    ambient: u64,
}

impl OpenSet {
    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_subset(&self, other: &OpenSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersect(&self, other: &OpenSet) -> Result<OpenSet> {
        self.same_ambient(other)?;
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Ok(OpenSet {
            members,
            ambient: self.ambient,
        })
    }

    pub fn union(&self, other: &OpenSet) -> Result<OpenSet> {
        self.same_ambient(other)?;
        let mut members = self.members.clone();
        members.union_with(&other.members);
        Ok(OpenSet {
            members,
            ambient: self.ambient,
        })
    }

    fn same_ambient(&self, other: &OpenSet) -> Result<()> {
        if self.ambient != other.ambient || self.members.len() != other.members.len() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn names(&self, poset: &FinPoset) -> Vec<String> {
        self.members.ones().map(|x| poset.name(x).to_string()).collect()
    }
}

/// Abstract simplicial complex on an ordered vertex set.
///
/// Simplices are sorted vertex-index lists, stored by dimension and then
/// lexicographically. The vertex order fixes all orientation signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SimplicialComplex {
    /// Closes the given simplices (by vertex name) under taking faces.
    /// Vertices not mentioned in any simplex become isolated 0-simplices.
    pub fn new<S: AsRef<str>>(vertices: &[S], simplices: &[Vec<S>]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.contains(',') || v.contains('>') || v.is_empty() {
                return Err(Error::Parse {
                    context: format!("vertex '{v}'"),
                    message: "vertex names must be nonempty and may not contain ',' or '>'".into(),
                });
            }
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::Duplicate(v.clone()));
            }
        }
        let mut idx_simplices = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut idx = Vec::with_capacity(s.len());
            for v in s {
                idx.push(
                    *vindex
                        .get(v.as_ref())
                        .ok_or_else(|| Error::UnknownElement(v.as_ref().to_string()))?,
                );
            }
            idx_simplices.push(idx);
        }
        Self::from_indices(vertices, &idx_simplices)
    }

    pub fn from_indices(vertices: Vec<String>, simplices: &[Vec<usize>]) -> Result<Self> {
        let n = vertices.len();
        let mut all: BTreeSet<(usize, Vec<usize>)> = (0..n).map(|v| (0, vec![v])).collect();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::Parse {
                    context: "simplex list".into(),
                    message: "empty simplex".into(),
                });
            }
            if let Some(&bad) = s.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownElement(format!("vertex index {bad}")));
            }
            if s.len() > 24 {
                return Err(Error::Parse {
                    context: "simplex list".into(),
                    message: "simplex dimension too large".into(),
                });
            }
            let k = s.len();
            for mask in 1u32..(1u32 << k) {
                let face: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                all.insert((face.len() - 1, face));
            }
        }
        let simplices: Vec<Vec<usize>> = all.into_iter().map(|(_, s)| s).collect();
        let index = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(SimplicialComplex {
            vertices,
            simplices,
            index,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &[usize] {
        &self.simplices[i]
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    pub fn simplices_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.simplices[i].len() == d + 1).collect()
    }

    /// Identifier of a simplex: its vertex names joined with ','.
    pub fn simplex_name(&self, i: usize) -> String {
        self.simplices[i]
            .iter()
            .map(|&v| self.vertices[v].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Codimension-one faces of simplex `i` with incidence signs: deleting the
    /// vertex at position `k` contributes `(-1)^k`.
    pub fn boundary_faces(&self, i: usize) -> Vec<(usize, i64)> {
        let s = &self.simplices[i];
        if s.len() < 2 {
            return Vec::new();
        }
        (0..s.len())
            .map(|k| {
                let mut face = s.clone();
                face.remove(k);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                (self.index[&face], sign)
            })
            .collect()
    }

    /// Face poset: faces below cofaces, so principal opens are open stars.
    pub fn face_poset(&self) -> FinPoset {
        let names = (0..self.len()).map(|i| self.simplex_name(i)).collect();
        let mut hasse = Vec::new();
        for i in 0..self.len() {
            for (f, _) in self.boundary_faces(i) {
                hasse.push((i, f));
            }
        }
        FinPoset::from_indices(names, hasse).expect("face relation is a valid poset")
    }
}

pub fn face_poset(k: &SimplicialComplex) -> FinPoset {
    k.face_poset()
}

/// Order complex: vertices are the poset's elements (same order), simplices
/// are its nonempty chains.
pub fn order_complex(p: &FinPoset) -> SimplicialComplex {
    let mut chains = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn extend(p: &FinPoset, stack: &mut Vec<usize>, chains: &mut Vec<Vec<usize>>) {
        let top = *stack.last().expect("nonempty chain");
        let mut sorted = stack.clone();
        sorted.sort_unstable();
        chains.push(sorted);
        for y in p.up_set(top).ones() {
            if y != top {
                stack.push(y);
                extend(p, stack, chains);
                stack.pop();
            }
        }
    }
    for x in 0..p.len() {
        stack.push(x);
        extend(p, &mut stack, &mut chains);
        stack.pop();
    }
    SimplicialComplex::from_indices(p.names().to_vec(), &chains).expect("chains form a complex")
}

/// A finite cover of an open set by open sets, in a fixed index order.
#[derive(Clone, Debug)]
pub struct Cover {
    opens: Vec<OpenSet>,
    universe: OpenSet,
}

impl Cover {
    pub fn new(opens: Vec<OpenSet>, universe: OpenSet) -> Result<Self> {
        let mut union = FixedBitSet::with_capacity(universe.members.len());
        for o in &opens {
            o.same_ambient(&universe)?;
            if !o.is_subset(&universe) {
                return Err(Error::Contract("cover member is not contained in the covered set".into()));
            }
            union.union_with(&o.members);
        }
        if union != universe.members {
            return Err(Error::Contract("cover members do not exhaust the covered set".into()));
        }
        Ok(Cover { opens, universe })
    }

    /// Cover of `U` by the principal opens of its elements.
    pub fn principal(p: &FinPoset, u: &OpenSet) -> Result<Self> {
        p.check_ambient(u)?;
        Self::new(u.members.ones().map(|x| p.principal_open(x)).collect(), u.clone())
    }

    /// Cover of the whole space by principal opens of the minimal elements.
    pub fn minimal_stars(p: &FinPoset) -> Self {
        let opens = p.minimal_elements().into_iter().map(|x| p.principal_open(x)).collect();
        Self::new(opens, p.full_open()).expect("minimal stars cover a finite poset")
    }

    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn universe(&self) -> &OpenSet {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }
}

/// Strictly increasing index tuples with nonempty intersection, ordered by
/// length and then lexicographically, paired with the intersection.
pub fn nerve_intersections(c: &Cover) -> Vec<(Vec<usize>, OpenSet)> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(c: &Cover, start: usize, stack: &mut Vec<usize>, cur: &OpenSet, out: &mut Vec<(Vec<usize>, OpenSet)>) {
        for i in start..c.opens.len() {
            let next = cur.intersect(&c.opens[i]).expect("same ambient");
            if next.is_empty() {
                continue;
            }
            stack.push(i);
            out.push((stack.clone(), next.clone()));
            rec(c, i + 1, stack, &next, out);
            stack.pop();
        }
    }
    rec(c, 0, &mut stack, &c.universe, &mut out);
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}
