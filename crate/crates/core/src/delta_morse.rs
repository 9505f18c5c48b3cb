//! The matching `Δ(F)` on the barycentric subdivision.
//!
//! Cells of `Δ(L)` are matched inside their carrier. If the carrier belongs to a pair
//! `(α, β)` of `F`, the free vertex `v = β∖α` moves as follows:
//!
//! | case | shape of the label            | partner                                   |
//! |------|-------------------------------|-------------------------------------------|
//! | 1    | `v` absent (carrier `α`)      | append `{v}`                              |
//! | 2    | `{v}` is the last block       | drop it                                   |
//! | 3    | `{v}` is a block, not last    | merge it with the next block              |
//! | 4    | `v` in a larger block         | split `{v}` off, just before the rest     |
//!
//! If the carrier is critical with ordering `o₁ … o_m`, the cell labelled `({o₁} … {o_m})` stays
//! critical. Any other cell is matched by moving the vertex `o_{m−i}`, where `i` is the length of
//! the common block suffix with that label: merge `{o_{m−i}}` forward if it is a singleton, split
//! it off to the left otherwise.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplexId, VertexId};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::morse::DiscreteVectorField;
use crate::subdivision::{Label, SubdividedComplex};

/// Chosen vertex order of a critical simplex; the label of its designated critical cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CriticalOrdering {
    simplex: Simplex,
    order: Vec<VertexId>,
}

impl CriticalOrdering {
    pub fn new(simplex: Simplex, order: Vec<VertexId>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != simplex.vertices() {
            return Err(Error::BadOrdering { simplex, order });
        }
        Ok(CriticalOrdering { simplex, order })
    }

    /// Descending vertex order.
    pub fn descending(simplex: Simplex) -> Self {
        let order = simplex.vertices().iter().rev().copied().collect();
        CriticalOrdering { simplex, order }
    }

    pub fn simplex(&self) -> &Simplex {
        &self.simplex
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn designated_label(&self) -> Label {
        Label::singletons(&self.order).expect("permutation of a simplex")
    }
}

/// A pair `(α, β)` of `F` together with its free vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncriticalPair {
    lower: Simplex,
    upper: Simplex,
    free_vertex: VertexId,
}

impl NoncriticalPair {
    pub fn new(lower: Simplex, upper: Simplex) -> Result<Self> {
        if !lower.is_facet_of(&upper) {
            return Err(Error::NotAFacet(lower, upper));
        }
        let free_vertex = upper.difference(&lower)[0];
        Ok(NoncriticalPair {
            lower,
            upper,
            free_vertex,
        })
    }

    pub fn lower(&self) -> &Simplex {
        &self.lower
    }

    pub fn upper(&self) -> &Simplex {
        &self.upper
    }

    pub fn free_vertex(&self) -> VertexId {
        self.free_vertex
    }
}

/// How the cells inside one carrier are matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingContext {
    Noncritical(NoncriticalPair),
    Critical(CriticalOrdering),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoncriticalCase {
    AppendFree = 1,
    DropFree = 2,
    MergeFree = 3,
    SplitFree = 4,
}

impl NoncriticalCase {
    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Partner of `label` inside a non-critical pair, and which of the four cases applied.
pub fn pair_noncritical(label: &Label, pair: &NoncriticalPair) -> Result<(Label, NoncriticalCase)> {
    let v = pair.free_vertex;
    let support = label.support();
    let mut blocks = label.blocks().to_vec();
    if support == pair.lower {
        blocks.push(vec![v]);
        return Ok((Label::from_blocks_unchecked(blocks), NoncriticalCase::AppendFree));
    }
    if support != pair.upper {
        return Err(Error::LabelOutOfScope {
            label: label.clone(),
            expected: pair.upper.clone(),
        });
    }
    let pos = label.block_of(v).expect("v is in the upper simplex");
    let case = if blocks[pos].len() == 1 {
        if pos + 1 == blocks.len() {
            blocks.pop();
            NoncriticalCase::DropFree
        } else {
            merge_with_next(&mut blocks, pos);
            NoncriticalCase::MergeFree
        }
    } else {
        split_left(&mut blocks, pos, v);
        NoncriticalCase::SplitFree
    };
    Ok((Label::from_blocks_unchecked(blocks), case))
}

/// Result of the critical-carrier rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalPairing {
    Critical,
    Partner { label: Label, suffix_len: usize },
}

/// Number of trailing blocks of `label` equal to the trailing singletons of the ordering.
pub fn common_suffix_len(label: &Label, ord: &CriticalOrdering) -> usize {
    label
        .blocks()
        .iter()
        .rev()
        .zip(ord.order.iter().rev())
        .take_while(|(b, &o)| b.len() == 1 && b[0] == o)
        .count()
}

pub fn pair_critical(label: &Label, ord: &CriticalOrdering) -> Result<CriticalPairing> {
    if label.support() != ord.simplex {
        return Err(Error::LabelOutOfScope {
            label: label.clone(),
            expected: ord.simplex.clone(),
        });
    }
    let m = ord.order.len();
    let i = common_suffix_len(label, ord);
    if i + 1 >= m {
        // The last m-1 blocks are the ordering's tail, so the first block is {o₁}.
        return Ok(CriticalPairing::Critical);
    }
    let w = ord.order[m - 1 - i];
    let mut blocks = label.blocks().to_vec();
    let pos = label.block_of(w).expect("w is a vertex of the simplex");
    if blocks[pos].len() == 1 {
        debug_assert!(pos + 1 < blocks.len() - i);
        merge_with_next(&mut blocks, pos);
    } else {
        split_left(&mut blocks, pos, w);
    }
    Ok(CriticalPairing::Partner {
        label: Label::from_blocks_unchecked(blocks),
        suffix_len: i,
    })
}

/// Partner of `label` under `ctx`; `None` if the cell is the designated critical one.
pub fn partner_in(label: &Label, ctx: &PairingContext) -> Result<Option<Label>> {
    match ctx {
        PairingContext::Noncritical(p) => pair_noncritical(label, p).map(|(l, _)| Some(l)),
        PairingContext::Critical(o) => Ok(match pair_critical(label, o)? {
            CriticalPairing::Critical => None,
            CriticalPairing::Partner { label, .. } => Some(label),
        }),
    }
}

fn merge_with_next(blocks: &mut Vec<Vec<VertexId>>, pos: usize) {
    let next = blocks.remove(pos + 1);
    blocks[pos].extend(next);
    blocks[pos].sort_unstable();
}

fn split_left(blocks: &mut Vec<Vec<VertexId>>, pos: usize, v: VertexId) {
    blocks[pos].retain(|&x| x != v);
    blocks.insert(pos, vec![v]);
}

/// One ordering per critical simplex of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orderings {
    by_simplex: BTreeMap<Simplex, CriticalOrdering>,
}

impl Orderings {
    /// Checks that `entries` name every critical simplex of `f` exactly once and nothing else.
    pub fn for_field(
        f: &DiscreteVectorField<'_>,
        entries: impl IntoIterator<Item = CriticalOrdering>,
    ) -> Result<Self> {
        let c = f.complex();
        let mut by_simplex = BTreeMap::new();
        for e in entries {
            let id = c.require(&e.simplex)?;
            if !f.is_critical(id) {
                return Err(Error::OrderingNotCritical(e.simplex));
            }
            if by_simplex.contains_key(&e.simplex) {
                return Err(Error::DuplicateOrdering(e.simplex));
            }
            by_simplex.insert(e.simplex.clone(), e);
        }
        for id in f.critical_cells().iter() {
            if !by_simplex.contains_key(c.simplex(id)) {
                return Err(Error::MissingOrdering(c.simplex(id).clone()));
            }
        }
        Ok(Orderings { by_simplex })
    }

    /// Like [`Orderings::for_field`], filling gaps with descending orders.
    pub fn fill_defaults(
        f: &DiscreteVectorField<'_>,
        entries: impl IntoIterator<Item = CriticalOrdering>,
    ) -> Result<Self> {
        let mut given: Vec<CriticalOrdering> = entries.into_iter().collect();
        let named: std::collections::HashSet<Simplex> =
            given.iter().map(|o| o.simplex.clone()).collect();
        for id in f.critical_cells().iter() {
            let s = f.complex().simplex(id);
            if !named.contains(s) {
                given.push(CriticalOrdering::descending(s.clone()));
            }
        }
        Self::for_field(f, given)
    }

    pub fn get(&self, s: &Simplex) -> Option<&CriticalOrdering> {
        self.by_simplex.get(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CriticalOrdering> {
        self.by_simplex.values()
    }

    pub fn len(&self) -> usize {
        self.by_simplex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_simplex.is_empty()
    }
}

/// Descending vertex order for every critical simplex.
pub fn default_orderings(f: &DiscreteVectorField<'_>) -> Orderings {
    let c = f.complex();
    Orderings {
        by_simplex: f
            .critical_cells()
            .iter()
            .map(|id| {
                let s = c.simplex(id).clone();
                (s.clone(), CriticalOrdering::descending(s))
            })
            .collect(),
    }
}

/// A uniformly random permutation per critical simplex, reproducible from `seed`.
pub fn random_orderings(f: &DiscreteVectorField<'_>, seed: u64) -> Orderings {
    let c = f.complex();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Orderings {
        by_simplex: f
            .critical_cells()
            .iter()
            .map(|id| {
                let s = c.simplex(id).clone();
                let mut order = s.vertices().to_vec();
                order.shuffle(&mut rng);
                (s.clone(), CriticalOrdering { simplex: s, order })
            })
            .collect(),
    }
}

/// Pairing context of an `L`-simplex under `f`.
pub fn context_of(
    f: &DiscreteVectorField<'_>,
    orderings: &Orderings,
    carrier: SimplexId,
) -> Result<PairingContext> {
    let c = f.complex();
    let s = c.simplex(carrier);
    match f.partner(carrier) {
        None => orderings
            .get(s)
            .cloned()
            .map(PairingContext::Critical)
            .ok_or_else(|| Error::MissingOrdering(s.clone())),
        Some(p) => {
            let (lo, hi) = if p > carrier { (carrier, p) } else { (p, carrier) };
            Ok(PairingContext::Noncritical(NoncriticalPair::new(
                c.simplex(lo).clone(),
                c.simplex(hi).clone(),
            )?))
        }
    }
}

/// Builds `Δ(F)` on `sd`, then re-checks that it is a valid acyclic matching whose critical
/// cells are exactly the designated labels.
pub fn build_delta_morse<'s>(
    f: &DiscreteVectorField<'_>,
    sd: &'s SubdividedComplex<'_>,
    orderings: &Orderings,
    exec: Execution,
) -> Result<DiscreteVectorField<'s>> {
    f.ensure_morse()?;
    let base = sd.base();
    let orderings = Orderings::for_field(f, orderings.iter().cloned())?;
    let contexts: Vec<PairingContext> = base
        .ids()
        .map(|id| context_of(f, &orderings, id))
        .collect::<Result<_>>()?;
    let delta = sd.complex();
    let partners: Vec<Result<Option<SimplexId>>> = exec.map_range(delta.len(), |i| {
        let cell = SimplexId(i);
        let label = sd.label_of(cell);
        match partner_in(&label, &contexts[sd.carrier(cell).0])? {
            None => Ok(None),
            Some(l) => sd.cell_of(&l).map(Some),
        }
    });
    let partners: Vec<Option<SimplexId>> = partners.into_iter().collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for (i, p) in partners.iter().enumerate() {
        if let Some(q) = *p {
            if partners[q.0] != Some(SimplexId(i)) {
                return Err(Error::NotAnInvolution(sd.label_of(SimplexId(i))));
            }
            if q.0 > i {
                pairs.push((SimplexId(i), q));
            }
        }
    }
    let field = DiscreteVectorField::from_id_pairs(delta, pairs)?;
    field.ensure_morse()?;
    Ok(field)
}

/// Designated critical cell of every critical simplex of `f`, keyed by the `L`-id.
pub fn designated_cells(
    sd: &SubdividedComplex<'_>,
    orderings: &Orderings,
) -> Result<BTreeMap<SimplexId, SimplexId>> {
    orderings
        .iter()
        .map(|o| {
            let base_id = sd.base().require(o.simplex())?;
            Ok((base_id, sd.cell_of(&o.designated_label())?))
        })
        .collect()
}
