//! Finite abstract simplicial complexes with explicit facet/cofacet incidence.
//!
//! Simplices are sorted vertex sequences. A complex stores every simplex once, in canonical
//! order (dimension first, then lexicographic), and refers to them by [`SimplexId`], which is
//! simply the position in that order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Vertex identifier. Letter names used elsewhere are mapped to integers at the I/O boundary.
pub type VertexId = u32;

/// A nonempty, strictly increasing set of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from vertices in any order. Fails on empty input or repeated vertices.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptySimplex);
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(v));
        }
        Ok(Simplex(v))
    }

    /// Caller guarantees `v` is sorted, nonempty, and duplicate free.
    pub(crate) fn from_sorted(v: Vec<VertexId>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True if every vertex of `self` is a vertex of `other` (improper faces included).
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn is_facet_of(&self, other: &Simplex) -> bool {
        self.0.len() + 1 == other.0.len() && self.is_face_of(other)
    }

    /// Codimension-1 faces, obtained by deleting each vertex in turn (first vertex first).
    pub fn boundary(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, v)| *v)
                        .collect(),
                )
            })
            .collect()
    }

    /// Vertices of `self` missing from `face`.
    pub fn difference(&self, face: &Simplex) -> Vec<VertexId> {
        self.0.iter().copied().filter(|v| !face.contains(*v)).collect()
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Index of a simplex inside one particular [`SimplicialComplex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId(pub usize);

impl SimplexId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A complex closed under taking faces. Immutable once built.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, SimplexId>,
    facets: Vec<Vec<SimplexId>>,
    cofacets: Vec<Vec<SimplexId>>,
    /// `by_dim[k]` is the id range of the k-simplices.
    by_dim: Vec<std::ops::Range<usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given vertex sets. Duplicates and dominated inputs are absorbed.
    pub fn from_maximal<I, S>(maximal: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = VertexId>,
    {
        let mut all = BTreeSet::new();
        for raw in maximal {
            let s = Simplex::new(raw)?;
            close_downward(&s, &mut all);
        }
        Ok(Self::from_closed(all.into_iter().collect()))
    }

    /// `simplices` must be sorted canonically and closed under faces.
    pub(crate) fn from_closed(simplices: Vec<Simplex>) -> Self {
        let index: HashMap<Simplex, SimplexId> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), SimplexId(i)))
            .collect();
        let mut facets = Vec::with_capacity(simplices.len());
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            let mut fs: Vec<SimplexId> = s.boundary().iter().map(|b| index[b]).collect();
            fs.sort_unstable();
            for f in &fs {
                cofacets[f.0].push(SimplexId(i));
            }
            facets.push(fs);
        }
        let mut by_dim: Vec<std::ops::Range<usize>> = Vec::new();
        for (i, s) in simplices.iter().enumerate() {
            let d = s.dim();
            while by_dim.len() <= d {
                by_dim.push(i..i);
            }
            by_dim[d].end = i + 1;
        }
        SimplicialComplex {
            simplices,
            index,
            facets,
            cofacets,
            by_dim,
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplex(&self, id: SimplexId) -> &Simplex {
        &self.simplices[id.0]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.simplices.len()).map(SimplexId)
    }

    pub fn id_of(&self, s: &Simplex) -> Option<SimplexId> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &Simplex) -> Result<SimplexId> {
        self.id_of(s).ok_or_else(|| Error::NotInComplex(s.clone()))
    }

    pub fn facet_ids(&self, id: SimplexId) -> &[SimplexId] {
        &self.facets[id.0]
    }

    pub fn cofacet_ids(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofacets[id.0]
    }

    /// Facets of a member simplex, in canonical order.
    pub fn facets(&self, s: &Simplex) -> Result<Vec<Simplex>> {
        let id = self.require(s)?;
        Ok(self.facets[id.0]
            .iter()
            .map(|f| self.simplices[f.0].clone())
            .collect())
    }

    pub fn simplices_of_dim(&self, k: usize) -> &[Simplex] {
        match self.by_dim.get(k) {
            Some(r) => &self.simplices[r.clone()],
            None => &[],
        }
    }

    pub fn ids_of_dim(&self, k: usize) -> impl Iterator<Item = SimplexId> {
        self.by_dim.get(k).cloned().unwrap_or(0..0).map(SimplexId)
    }

    /// Number of simplices in each dimension 0..=dim.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(|r| r.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    /// Simplices that are not a proper face of anything.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.ids()
            .filter(|id| self.cofacets[id.0].is_empty())
            .map(|id| self.simplices[id.0].clone())
            .collect()
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.simplices_of_dim(0).iter().map(|s| s.0[0]).collect()
    }
}

fn close_downward(s: &Simplex, out: &mut BTreeSet<Simplex>) {
    if !out.insert(s.clone()) {
        return;
    }
    for f in s.boundary() {
        close_downward(&f, out);
    }
}

/// `Σ (−1)^k counts[k]`.
pub fn alternating_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}
