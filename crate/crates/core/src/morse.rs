//! Discrete vector fields, the closed-path check, critical cells and gradient paths.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplexId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// A matching of simplices with cofacets, over a borrowed complex.
///
/// Each simplex takes part in at most one pair, and every pair is (facet, cofacet). Both
/// conditions are checked at construction; acyclicity is a separate question, see
/// [`DiscreteVectorField::is_morse`].
#[derive(Clone, Debug)]
pub struct DiscreteVectorField<'c> {
    complex: &'c SimplicialComplex,
    partner: Vec<Option<SimplexId>>,
}

impl<'c> DiscreteVectorField<'c> {
    pub fn empty(complex: &'c SimplicialComplex) -> Self {
        DiscreteVectorField {
            complex,
            partner: vec![None; complex.len()],
        }
    }

    /// Validates `(face, coface)` pairs given as simplices.
    pub fn from_pairs<'a, I>(complex: &'c SimplicialComplex, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a Simplex, &'a Simplex)>,
    {
        let mut ids = Vec::new();
        for (a, b) in pairs {
            let ia = complex.require(a)?;
            let ib = complex.require(b)?;
            ids.push((ia, ib));
        }
        Self::from_id_pairs(complex, ids)
    }

    pub fn from_id_pairs<I>(complex: &'c SimplicialComplex, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SimplexId, SimplexId)>,
    {
        let mut field = Self::empty(complex);
        for (a, b) in pairs {
            field.insert(a, b)?;
        }
        Ok(field)
    }

    fn insert(&mut self, a: SimplexId, b: SimplexId) -> Result<()> {
        let (sa, sb) = (self.complex.simplex(a), self.complex.simplex(b));
        if !sa.is_facet_of(sb) {
            return Err(Error::NotAFacet(sa.clone(), sb.clone()));
        }
        for x in [a, b] {
            if self.partner[x.0].is_some() {
                return Err(Error::MatchedTwice(self.complex.simplex(x).clone()));
            }
        }
        self.partner[a.0] = Some(b);
        self.partner[b.0] = Some(a);
        Ok(())
    }

    pub fn complex(&self) -> &'c SimplicialComplex {
        self.complex
    }

    pub fn partner(&self, id: SimplexId) -> Option<SimplexId> {
        self.partner[id.0]
    }

    /// The cofacet `id` is matched with, if it is matched upward.
    pub fn up(&self, id: SimplexId) -> Option<SimplexId> {
        self.partner[id.0].filter(|p| p.0 > id.0)
    }

    pub fn is_critical(&self, id: SimplexId) -> bool {
        self.partner[id.0].is_none()
    }

    /// All pairs as `(face, coface)` ids, sorted by face.
    pub fn pairs(&self) -> Vec<(SimplexId, SimplexId)> {
        self.complex
            .ids()
            .filter_map(|a| self.up(a).map(|b| (a, b)))
            .collect()
    }

    pub fn num_pairs(&self) -> usize {
        self.partner.iter().filter(|p| p.is_some()).count() / 2
    }

    pub fn critical_cells(&self) -> CriticalSet {
        let mut by_dim = vec![Vec::new(); self.complex.dim().map_or(0, |d| d + 1)];
        for id in self.complex.ids() {
            if self.is_critical(id) {
                by_dim[self.complex.simplex(id).dim()].push(id);
            }
        }
        CriticalSet { by_dim }
    }

    pub fn is_morse(&self) -> bool {
        self.find_closed_path().is_none()
    }

    /// Returns `Err(ClosedPath)` naming the cycle when the field is not Morse.
    pub fn ensure_morse(&self) -> Result<()> {
        match self.find_closed_path() {
            None => Ok(()),
            Some(cells) => Err(Error::ClosedPath(
                cells
                    .into_iter()
                    .map(|c| self.complex.simplex(c).clone())
                    .collect(),
            )),
        }
    }

    /// Searches every dimension for a closed path and returns one as
    /// `α₀, β₀, α₁, β₁, …, α₀` if it exists.
    ///
    /// Nodes are upward-matched simplices; `α → α′` whenever `α′ ≠ α` is a facet of the partner
    /// of `α` and is itself matched upward.
    pub fn find_closed_path(&self) -> Option<Vec<SimplexId>> {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let mut color = vec![WHITE; self.complex.len()];
        for root in self.complex.ids() {
            if color[root.0] != WHITE || self.up(root).is_none() {
                continue;
            }
            // (node, next facet index)
            let mut stack: Vec<(SimplexId, usize)> = vec![(root, 0)];
            color[root.0] = GREY;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                let beta = self.up(node).expect("stack holds upward-matched cells");
                let facets = self.complex.facet_ids(beta);
                if *next == facets.len() {
                    color[node.0] = BLACK;
                    stack.pop();
                    continue;
                }
                let succ = facets[*next];
                *next += 1;
                if succ == node || self.up(succ).is_none() {
                    continue;
                }
                match color[succ.0] {
                    WHITE => {
                        color[succ.0] = GREY;
                        stack.push((succ, 0));
                    }
                    GREY => {
                        let start = stack.iter().position(|(n, _)| *n == succ).unwrap();
                        let mut cycle = Vec::new();
                        for (n, _) in &stack[start..] {
                            cycle.push(*n);
                            cycle.push(self.up(*n).unwrap());
                        }
                        cycle.push(succ);
                        return Some(cycle);
                    }
                    _ => {}
                }
            }
        }
        None
    }

    /// Whether matching `a` with `b` would close a path. Both must currently be unmatched.
    fn would_close_path(&self, a: SimplexId, b: SimplexId) -> bool {
        let mut seen = HashSet::new();
        let mut stack: Vec<SimplexId> = self
            .complex
            .facet_ids(b)
            .iter()
            .copied()
            .filter(|&f| f != a)
            .collect();
        while let Some(x) = stack.pop() {
            if x == a {
                return true;
            }
            if !seen.insert(x) {
                continue;
            }
            if let Some(beta) = self.up(x) {
                stack.extend(self.complex.facet_ids(beta).iter().filter(|&&f| f != x));
            }
        }
        false
    }

    /// Every gradient path of the field, sources in canonical order, branches in canonical
    /// facet order. Fails on a non-Morse field.
    pub fn gradient_paths(&self, exec: Execution) -> Result<Vec<GradientPath>> {
        self.ensure_morse()?;
        let sources: Vec<SimplexId> = self
            .complex
            .ids()
            .filter(|&id| self.is_critical(id) && self.complex.simplex(id).dim() > 0)
            .collect();
        let per_source = exec.map(&sources, |&s| self.gradient_paths_from(s));
        let mut out = Vec::new();
        for r in per_source {
            out.extend(r?);
        }
        Ok(out)
    }

    /// Gradient paths starting at the critical simplex `source`.
    pub fn gradient_paths_from(&self, source: SimplexId) -> Result<Vec<GradientPath>> {
        let cap = self.complex.len();
        let mut out = Vec::new();
        let mut cells = vec![source];
        // (current top cell, the facet we entered from, next facet index)
        let mut stack: Vec<(SimplexId, Option<SimplexId>, usize)> = vec![(source, None, 0)];
        while let Some(&mut (beta, entered, ref mut next)) = stack.last_mut() {
            let facets = self.complex.facet_ids(beta);
            if *next == facets.len() {
                stack.pop();
                if !stack.is_empty() {
                    cells.truncate(cells.len() - 2);
                }
                continue;
            }
            let a = facets[*next];
            *next += 1;
            if Some(a) == entered {
                continue;
            }
            match self.partner(a) {
                None => {
                    let mut p = cells.clone();
                    p.push(a);
                    out.push(GradientPath { cells: p });
                }
                Some(b) if b.0 > a.0 => {
                    if cells.len() + 2 > cap {
                        return Err(Error::PathTooLong(cap));
                    }
                    cells.push(a);
                    cells.push(b);
                    stack.push((b, Some(a), 0));
                }
                Some(_) => {}
            }
        }
        Ok(out)
    }

    /// Checks the gradient-path conditions for an arbitrary cell sequence.
    pub fn check_gradient_path(&self, cells: &[SimplexId]) -> Result<()> {
        let c = self.complex;
        let bad = |msg: String| Err(Error::InvalidPath(msg));
        if cells.len() < 2 || !cells.len().is_multiple_of(2) {
            return bad(format!("path has {} cells", cells.len()));
        }
        let (first, last) = (cells[0], cells[cells.len() - 1]);
        if !self.is_critical(first) {
            return bad(format!("source {} is not critical", c.simplex(first)));
        }
        if !self.is_critical(last) {
            return bad(format!("target {} is not critical", c.simplex(last)));
        }
        for (i, w) in cells.windows(2).enumerate() {
            let (x, y) = (c.simplex(w[0]), c.simplex(w[1]));
            if i % 2 == 0 {
                if !y.is_facet_of(x) {
                    return bad(format!("face step {x} -> {y} is not a facet"));
                }
            } else if self.up(w[0]) != Some(w[1]) {
                return bad(format!("step {x} -> {y} is not a pair"));
            }
        }
        for i in (1..cells.len() - 2).step_by(2) {
            if cells[i] == cells[i + 2] {
                return bad(format!("path re-enters {}", c.simplex(cells[i])));
            }
        }
        Ok(())
    }

    /// Greedy randomized acyclic matching, reproducible from `seed`.
    pub fn random_morse(complex: &'c SimplicialComplex, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates: Vec<(SimplexId, SimplexId)> = complex
            .ids()
            .flat_map(|b| complex.facet_ids(b).iter().map(move |&a| (a, b)))
            .collect();
        candidates.shuffle(&mut rng);
        let mut field = Self::empty(complex);
        for (a, b) in candidates {
            if field.partner[a.0].is_some() || field.partner[b.0].is_some() {
                continue;
            }
            if field.would_close_path(a, b) {
                continue;
            }
            field.partner[a.0] = Some(b);
            field.partner[b.0] = Some(a);
        }
        field
    }
}

/// Unpaired simplices grouped by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSet {
    pub by_dim: Vec<Vec<SimplexId>>,
}

impl CriticalSet {
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.by_dim.iter().flatten().copied()
    }
}

/// `β₀, α₁, β₁, …, α_m, β_m, α` between two critical cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradientPath {
    pub cells: Vec<SimplexId>,
}

impl GradientPath {
    pub fn new(cells: Vec<SimplexId>) -> Self {
        GradientPath { cells }
    }

    pub fn source(&self) -> SimplexId {
        self.cells[0]
    }

    pub fn target(&self) -> SimplexId {
        *self.cells.last().unwrap()
    }

    /// Dimension of the source cell.
    pub fn dimension(&self, complex: &SimplicialComplex) -> usize {
        complex.simplex(self.source()).dim()
    }

    pub fn simplices<'a>(&'a self, complex: &'a SimplicialComplex) -> impl Iterator<Item = &'a Simplex> {
        self.cells.iter().map(move |&c| complex.simplex(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sx(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn hollow() -> SimplicialComplex {
        SimplicialComplex::from_maximal([vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap()
    }

    fn full() -> SimplicialComplex {
        SimplicialComplex::from_maximal([vec![1, 2, 3]]).unwrap()
    }

    fn field<'c>(c: &'c SimplicialComplex, pairs: &[(&[u32], &[u32])]) -> Result<DiscreteVectorField<'c>> {
        let owned: Vec<(Simplex, Simplex)> = pairs.iter().map(|(a, b)| (sx(a), sx(b))).collect();
        DiscreteVectorField::from_pairs(c, owned.iter().map(|(a, b)| (a, b)))
    }

    fn names(c: &SimplicialComplex, p: &GradientPath) -> Vec<String> {
        p.simplices(c).map(|s| s.to_string()).collect()
    }

    #[test]
    fn validation() {
        let c = full();
        assert!(field(&c, &[(&[1], &[1, 2])]).is_ok());
        assert_eq!(
            field(&c, &[(&[1], &[2, 3])]).unwrap_err(),
            Error::NotAFacet(sx(&[1]), sx(&[2, 3]))
        );
        assert_eq!(
            field(&c, &[(&[1], &[1, 2]), (&[1], &[1, 3])]).unwrap_err(),
            Error::MatchedTwice(sx(&[1]))
        );
        assert_eq!(
            field(&c, &[(&[1], &[1, 4])]).unwrap_err(),
            Error::NotInComplex(sx(&[1, 4]))
        );
    }

    #[test]
    fn morse_check() {
        let c = hollow();
        assert!(DiscreteVectorField::empty(&c).is_morse());
        let cyc = field(&c, &[(&[1], &[1, 2]), (&[2], &[2, 3]), (&[3], &[1, 3])]).unwrap();
        assert!(!cyc.is_morse());
        let cycle = cyc.find_closed_path().unwrap();
        assert_eq!(cycle.first(), cycle.last());
        assert_eq!(cycle.len(), 7);
        assert!(matches!(cyc.ensure_morse(), Err(Error::ClosedPath(_))));
        assert!(matches!(cyc.gradient_paths(Execution::Sequential), Err(Error::ClosedPath(_))));
        let ok = field(&c, &[(&[1], &[1, 2]), (&[2], &[2, 3])]).unwrap();
        assert!(ok.is_morse());
    }

    #[test]
    fn critical_cells() {
        let c = full();
        assert_eq!(DiscreteVectorField::empty(&c).critical_cells().total(), 7);

        let h = hollow();
        let f = field(&h, &[(&[1], &[1, 2]), (&[2], &[2, 3])]).unwrap();
        let crit: Vec<Simplex> = f.critical_cells().iter().map(|i| h.simplex(i).clone()).collect();
        assert_eq!(crit, vec![sx(&[3]), sx(&[1, 3])]);

        let g = field(&c, &[(&[1], &[1, 2]), (&[2], &[2, 3]), (&[1, 3], &[1, 2, 3])]).unwrap();
        let crit: Vec<Simplex> = g.critical_cells().iter().map(|i| c.simplex(i).clone()).collect();
        assert_eq!(crit, vec![sx(&[3])]);
    }

    #[test]
    fn hollow_triangle_paths() {
        let h = hollow();
        let f = field(&h, &[(&[1], &[1, 2]), (&[2], &[2, 3])]).unwrap();
        let paths = f.gradient_paths(Execution::Sequential).unwrap();
        let got: Vec<Vec<String>> = paths.iter().map(|p| names(&h, p)).collect();
        assert_eq!(
            got,
            vec![
                vec!["{1,3}", "{1}", "{1,2}", "{2}", "{2,3}", "{3}"],
                vec!["{1,3}", "{3}"],
            ]
        );
        for p in &paths {
            f.check_gradient_path(&p.cells).unwrap();
        }
    }

    #[test]
    fn empty_field_paths_are_single_face_steps() {
        let c = full();
        let f = DiscreteVectorField::empty(&c);
        let paths = f.gradient_paths(Execution::Sequential).unwrap();
        // 3 edges × 2 vertices + 1 triangle × 3 edges
        assert_eq!(paths.len(), 9);
        assert!(paths.iter().all(|p| p.cells.len() == 2));
    }

    #[test]
    fn single_pair_on_triangle() {
        let c = full();
        let f = field(&c, &[(&[1], &[1, 2])]).unwrap();
        let paths = f.gradient_paths(Execution::Sequential).unwrap();
        let two_dim: Vec<Vec<String>> = paths
            .iter()
            .filter(|p| p.dimension(&c) == 2)
            .map(|p| names(&c, p))
            .collect();
        assert_eq!(two_dim, vec![vec!["{1,2,3}", "{1,3}"], vec!["{1,2,3}", "{2,3}"]]);
    }

    #[test]
    fn check_rejects_bad_paths() {
        let h = hollow();
        let f = field(&h, &[(&[1], &[1, 2]), (&[2], &[2, 3])]).unwrap();
        let id = |v: &[u32]| h.id_of(&sx(v)).unwrap();
        assert!(f.check_gradient_path(&[id(&[1, 3]), id(&[1])]).is_err());
        assert!(f
            .check_gradient_path(&[id(&[1, 3]), id(&[1]), id(&[1, 3]), id(&[3])])
            .is_err());
    }

    #[test]
    fn random_morse_reproducible() {
        let h = hollow();
        let a = DiscreteVectorField::random_morse(&h, 7);
        let b = DiscreteVectorField::random_morse(&h, 7);
        assert_eq!(a.pairs(), b.pairs());
        assert!(a.is_morse());
        let v = SimplicialComplex::from_maximal([vec![0]]).unwrap();
        assert_eq!(DiscreteVectorField::random_morse(&v, 3).num_pairs(), 0);
    }
}
