//! The barycentric subdivision `Δ(L)` and the label view of its simplices.
//!
//! A simplex of `Δ(L)` is a chain `s₁ ⊂ s₂ ⊂ … ⊂ s_{k+1}` of simplices of `L`. Its label is the
//! ordered partition `(s₁, s₂∖s₁, …, s_{k+1}∖s_k)` of the top element. The top element is the
//! carrier: the simplex of `L` whose interior contains the cell.
//!
//! Vertex `i` of `Δ(L)` is the simplex with id `i` in `L`. Because ids in `L` increase with
//! dimension, the sorted vertex list of a `Δ(L)` simplex is its chain in increasing order.

use std::fmt;
use std::str::FromStr;

use crate::complex::{Simplex, SimplexId, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// An ordered partition into nonempty, pairwise disjoint blocks. Each block is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    blocks: Vec<Vec<VertexId>>,
}

impl Label {
    pub fn new<B>(blocks: impl IntoIterator<Item = B>) -> Result<Self>
    where
        B: IntoIterator<Item = VertexId>,
    {
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for b in blocks {
            let mut b: Vec<VertexId> = b.into_iter().collect();
            if b.is_empty() {
                return Err(Error::InvalidLabel("empty block".into()));
            }
            b.sort_unstable();
            out.push(b);
        }
        if out.is_empty() {
            return Err(Error::InvalidLabel("no blocks".into()));
        }
        let mut all: Vec<VertexId> = out.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidLabel(format!("blocks overlap in {out:?}")));
        }
        Ok(Label { blocks: out })
    }

    /// All-singleton label `({o₁} {o₂} …)`.
    pub fn singletons(order: &[VertexId]) -> Result<Self> {
        Label::new(order.iter().map(|&v| [v]))
    }

    /// Blocks must already be sorted, nonempty and disjoint.
    pub(crate) fn from_blocks_unchecked(blocks: Vec<Vec<VertexId>>) -> Self {
        Label { blocks }
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Dimension of the cell in `Δ(L)`.
    pub fn dim(&self) -> usize {
        self.blocks.len() - 1
    }

    /// The union of the blocks, i.e. the carrier.
    pub fn support(&self) -> Simplex {
        let mut v: Vec<VertexId> = self.blocks.iter().flatten().copied().collect();
        v.sort_unstable();
        Simplex::from_sorted(v)
    }

    /// Position of the block containing `v`.
    pub fn block_of(&self, v: VertexId) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }

    /// Position of `{v}` if `v` forms a singleton block.
    pub fn singleton_position(&self, v: VertexId) -> Option<usize> {
        self.block_of(v).filter(|&i| self.blocks[i].len() == 1)
    }

    /// Prefix unions `s₁ ⊂ s₂ ⊂ …`.
    pub fn chain(&self) -> Vec<Simplex> {
        let mut acc: Vec<VertexId> = Vec::new();
        self.blocks
            .iter()
            .map(|b| {
                acc.extend_from_slice(b);
                acc.sort_unstable();
                Simplex::from_sorted(acc.clone())
            })
            .collect()
    }

    /// Inverse of [`Label::chain`]. Each element must be a proper face of the next.
    pub fn from_chain(chain: &[Simplex]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(chain.len());
        let mut prev: Option<&Simplex> = None;
        for s in chain {
            match prev {
                None => blocks.push(s.vertices().to_vec()),
                Some(p) => {
                    if !p.is_face_of(s) || p.dim() >= s.dim() {
                        return Err(Error::InvalidLabel(format!("{p} is not a proper face of {s}")));
                    }
                    blocks.push(s.difference(p));
                }
            }
            prev = Some(s);
        }
        if blocks.is_empty() {
            return Err(Error::InvalidLabel("empty chain".into()));
        }
        Ok(Label { blocks })
    }

    /// All faces of the cell (itself included), as the nonempty subchains of its chain.
    ///
    /// Ordered by dimension descending, then by the bitmask of kept chain positions.
    pub fn faces(&self) -> Vec<Label> {
        let chain = self.chain();
        let n = chain.len();
        let mut masks: Vec<u64> = (1u64..(1u64 << n)).collect();
        masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        masks
            .into_iter()
            .map(|m| {
                let sub: Vec<Simplex> = (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| chain[i].clone())
                    .collect();
                Label::from_chain(&sub).expect("subchain of a chain")
            })
            .collect()
    }

    /// Face test via subchains.
    pub fn is_face_of(&self, other: &Label) -> bool {
        let theirs = other.chain();
        self.chain().iter().all(|s| theirs.contains(s))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Label {
    type Err = Error;

    /// Parses `({1} {3,4} {2,5})`; the outer parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('{')
                .ok_or_else(|| Error::InvalidLabel(format!("expected '{{' in {s:?}")))?;
            let end = body_start
                .find('}')
                .ok_or_else(|| Error::InvalidLabel(format!("unclosed block in {s:?}")))?;
            let block = body_start[..end]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<VertexId>()
                        .map_err(|e| Error::InvalidLabel(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = body_start[end + 1..].trim_start();
        }
        Label::new(blocks)
    }
}

/// All ordered partitions of `vertices` (Fubini-many).
pub fn ordered_partitions(vertices: &[VertexId]) -> Vec<Label> {
    fn rec(rest: &[VertexId], prefix: &mut Vec<Vec<VertexId>>, out: &mut Vec<Label>) {
        if rest.is_empty() {
            out.push(Label::from_blocks_unchecked(prefix.clone()));
            return;
        }
        let n = rest.len();
        for mask in 1u64..(1u64 << n) {
            let (block, remaining): (Vec<_>, Vec<_>) =
                (0..n).partition(|i| mask >> i & 1 == 1);
            prefix.push(block.iter().map(|&i| rest[i]).collect());
            let remaining: Vec<VertexId> = remaining.iter().map(|&i| rest[i]).collect();
            rec(&remaining, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vertices, &mut Vec::new(), &mut out);
    out
}

/// `Δ(L)` together with its dictionary back to `L`.
#[derive(Clone, Debug)]
pub struct SubdividedComplex<'a> {
    base: &'a SimplicialComplex,
    complex: SimplicialComplex,
}

impl<'a> SubdividedComplex<'a> {
    pub fn new(base: &'a SimplicialComplex, exec: Execution) -> Self {
        let per_carrier: Vec<Vec<Simplex>> = exec.map_range(base.len(), |i| {
            ordered_partitions(base.simplex(SimplexId(i)).vertices())
                .iter()
                .map(|l| chain_vertex_set(base, l))
                .collect()
        });
        let mut all: Vec<Simplex> = per_carrier.into_iter().flatten().collect();
        all.sort_unstable();
        SubdividedComplex {
            base,
            complex: SimplicialComplex::from_closed(all),
        }
    }

    pub fn base(&self) -> &'a SimplicialComplex {
        self.base
    }

    /// `Δ(L)` itself.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Chain of a cell of `Δ(L)`, as ids of `L`, increasing.
    pub fn chain_of(&self, cell: SimplexId) -> Vec<SimplexId> {
        self.complex
            .simplex(cell)
            .vertices()
            .iter()
            .map(|&v| SimplexId(v as usize))
            .collect()
    }

    pub fn label_of(&self, cell: SimplexId) -> Label {
        let chain: Vec<Simplex> = self
            .chain_of(cell)
            .into_iter()
            .map(|s| self.base.simplex(s).clone())
            .collect();
        Label::from_chain(&chain).expect("cells of Δ(L) are chains")
    }

    /// Label of an arbitrary vertex set of `Δ(L)`; fails if it is not a cell.
    pub fn label_of_simplex(&self, cell: &Simplex) -> Result<Label> {
        let id = self.complex.require(cell)?;
        Ok(self.label_of(id))
    }

    pub fn carrier(&self, cell: SimplexId) -> SimplexId {
        let top = *self.complex.simplex(cell).vertices().last().unwrap();
        SimplexId(top as usize)
    }

    /// The cell with the given label.
    pub fn cell_of(&self, label: &Label) -> Result<SimplexId> {
        for s in label.chain() {
            self.base.require(&s)?;
        }
        let vs = chain_vertex_set(self.base, label);
        self.complex.require(&vs)
    }

    /// The vertex of `Δ(L)` at the barycenter of `s`.
    pub fn barycenter(&self, s: SimplexId) -> SimplexId {
        self.complex
            .id_of(&Simplex::from_sorted(vec![s.0 as VertexId]))
            .expect("every simplex of L is a vertex of Δ(L)")
    }

    /// Cells of `Δ(L)` grouped by carrier, indexed by ids of `L`.
    pub fn cells_by_carrier(&self) -> Vec<Vec<SimplexId>> {
        let mut out = vec![Vec::new(); self.base.len()];
        for cell in self.complex.ids() {
            out[self.carrier(cell).0].push(cell);
        }
        out
    }
}

fn chain_vertex_set(base: &SimplicialComplex, label: &Label) -> Simplex {
    let ids: Vec<VertexId> = label
        .chain()
        .iter()
        .map(|s| base.id_of(s).expect("chain inside the base complex").0 as VertexId)
        .collect();
    Simplex::from_sorted(ids)
}
