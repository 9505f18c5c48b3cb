//! Gradient paths of `Δ(F)` versus gradient paths of `F`.
//!
//! A gradient path of `Δ(F)` crosses each host simplex of `L` along a forced segment. Inside a
//! non-critical host `β` (paired with `α`, free vertex `v`) the segment enters through a
//! top cell of `Δ(α)`, appends `{v}`, and then walks `v` leftwards one block at a time
//! (merge with the left neighbour, split back off to its left) until it leaves through the
//! boundary face obtained by dropping the last block. Inside a critical host the segment starts
//! at the designated cell and places the ordering's vertices one after another.
//!
//! [`project_path`] and [`lift_path`] are the two directions of the path bijection;
//! [`verify_bijection`] enumerates both sides and checks them against each other.

use std::collections::{BTreeMap, HashSet};

use crate::complex::{Simplex, SimplexId, VertexId};
use crate::delta_morse::{designated_cells, CriticalOrdering, NoncriticalPair, Orderings};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::morse::{DiscreteVectorField, GradientPath};
use crate::subdivision::{Label, SubdividedComplex};

/// The stretch of a `Δ(F)` path inside one host simplex, from its entrance to its exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSegment {
    pub host: Simplex,
    pub cells: Vec<Label>,
}

impl PathSegment {
    pub fn entrance(&self) -> &Label {
        &self.cells[0]
    }

    pub fn exit(&self) -> &Label {
        self.cells.last().unwrap()
    }
}

/// First cell inside `Δ(upper)` of a path that leaves through `exit`.
///
/// With `exit = (I₁ … I_n)` and `I_j = {v}`, this is `(I₁ … I_{j−1} I_{j+1} … I_n  upper∖⋃I)`.
pub fn entrance_from_exit(exit: &Label, upper: &Simplex, v: VertexId) -> Result<Label> {
    let j = exit.singleton_position(v).ok_or_else(|| Error::NotASingleton {
        vertex: v,
        label: exit.clone(),
    })?;
    let support = exit.support();
    if !support.is_facet_of(upper) {
        return Err(Error::LabelOutOfScope {
            label: exit.clone(),
            expected: upper.clone(),
        });
    }
    let mut blocks = exit.blocks().to_vec();
    blocks.remove(j);
    blocks.push(upper.difference(&support));
    Label::new(blocks)
}

/// The longest forced walk through `Δ(pair.upper)` from `entrance`: the entrance, then
/// alternately top cells and the interior faces between them, ending with `{v}` in front.
pub fn noncritical_flow(entrance: &Label, pair: &NoncriticalPair) -> Result<Vec<Label>> {
    if entrance.support() != *pair.lower() || entrance.len() != pair.lower().dim() + 1 {
        return Err(Error::LabelOutOfScope {
            label: entrance.clone(),
            expected: pair.lower().clone(),
        });
    }
    let v = pair.free_vertex();
    let mut order: Vec<VertexId> = entrance.blocks().iter().map(|b| b[0]).collect();
    order.push(v);
    let mut cells = vec![entrance.clone(), singletons(&order)];
    for pos in (1..order.len()).rev() {
        cells.push(merged(&order, pos - 1));
        order.swap(pos - 1, pos);
        cells.push(singletons(&order));
    }
    Ok(cells)
}

/// Forced segment through a non-critical host from `entrance` to `exit`.
pub fn segment_through_noncritical(
    entrance: &Label,
    exit: &Label,
    pair: &NoncriticalPair,
) -> Result<PathSegment> {
    let flow = noncritical_flow(entrance, pair)?;
    // Top cells sit at odd positions; the first one exits back through the entrance.
    for t in (3..flow.len()).step_by(2) {
        if drop_last(&flow[t]) == *exit {
            let mut cells = flow[..=t].to_vec();
            cells.push(exit.clone());
            return Ok(PathSegment {
                host: pair.upper().clone(),
                cells,
            });
        }
    }
    Err(Error::InvalidPath(format!(
        "no forced segment in {} from {entrance} leaves through {exit}",
        pair.upper()
    )))
}

/// The unique segment from the designated cell of a critical simplex to a boundary `exit`.
pub fn segment_from_critical(ord: &CriticalOrdering, exit: &Label) -> Result<PathSegment> {
    let host = ord.simplex().clone();
    let support = exit.support();
    if !support.is_facet_of(&host) || exit.len() != support.dim() + 1 {
        return Err(Error::LabelOutOfScope {
            label: exit.clone(),
            expected: host,
        });
    }
    let mut target: Vec<VertexId> = exit.blocks().iter().map(|b| b[0]).collect();
    target.extend(host.difference(&support));

    let mut order = ord.order().to_vec();
    let mut cells = vec![singletons(&order)];
    // Place o₂, o₃, … in turn, each moving left past the already placed vertices that the
    // target puts after it.
    for j in 1..order.len() {
        let w = order[j];
        let placed: Vec<VertexId> = target
            .iter()
            .copied()
            .filter(|x| order[..=j].contains(x))
            .collect();
        let want = placed.iter().position(|&x| x == w).unwrap();
        for pos in (want + 1..=j).rev() {
            cells.push(merged(&order, pos - 1));
            order.swap(pos - 1, pos);
            cells.push(singletons(&order));
        }
    }
    debug_assert_eq!(order, target);
    cells.push(exit.clone());
    Ok(PathSegment { host, cells })
}

fn singletons(order: &[VertexId]) -> Label {
    Label::from_blocks_unchecked(order.iter().map(|&v| vec![v]).collect())
}

/// All-singleton order with positions `i` and `i+1` merged.
fn merged(order: &[VertexId], i: usize) -> Label {
    let mut blocks: Vec<Vec<VertexId>> = order.iter().map(|&v| vec![v]).collect();
    let next = blocks.remove(i + 1);
    blocks[i].extend(next);
    blocks[i].sort_unstable();
    Label::from_blocks_unchecked(blocks)
}

fn drop_last(l: &Label) -> Label {
    let mut b = l.blocks().to_vec();
    b.pop();
    Label::from_blocks_unchecked(b)
}

/// Replaces each cell by its carrier and collapses repeats; the result must be a gradient
/// path of `f`.
pub fn project_path(
    path: &GradientPath,
    sd: &SubdividedComplex<'_>,
    f: &DiscreteVectorField<'_>,
) -> Result<GradientPath> {
    let mut cells: Vec<SimplexId> = Vec::new();
    for &c in &path.cells {
        let carrier = sd.carrier(c);
        if cells.last() != Some(&carrier) {
            cells.push(carrier);
        }
    }
    f.check_gradient_path(&cells)?;
    Ok(GradientPath::new(cells))
}

/// Lift of a gradient path of `f` to `Δ(F)`, built backwards from the target's designated
/// cell. Every step is checked against `df`.
pub fn lift_path(
    path: &GradientPath,
    sd: &SubdividedComplex<'_>,
    f: &DiscreteVectorField<'_>,
    df: &DiscreteVectorField<'_>,
    orderings: &Orderings,
) -> Result<GradientPath> {
    let segments = lift_segments(path, sd, f, orderings)?;
    let mut labels: Vec<&Label> = Vec::new();
    for (i, s) in segments.iter().enumerate() {
        let skip = usize::from(i > 0);
        labels.extend(s.cells.iter().skip(skip));
    }
    let cells = labels
        .into_iter()
        .map(|l| sd.cell_of(l))
        .collect::<Result<Vec<_>>>()?;
    df.check_gradient_path(&cells)?;
    Ok(GradientPath::new(cells))
}

/// Per-host segments of the lift, in path order.
pub fn lift_segments(
    path: &GradientPath,
    sd: &SubdividedComplex<'_>,
    f: &DiscreteVectorField<'_>,
    orderings: &Orderings,
) -> Result<Vec<PathSegment>> {
    f.check_gradient_path(&path.cells)?;
    let base = sd.base();
    let simplex = |id: SimplexId| base.simplex(id).clone();
    let ordering_of = |s: &Simplex| {
        orderings
            .get(s)
            .ok_or_else(|| Error::MissingOrdering(s.clone()))
    };
    let cells = &path.cells;
    let target = simplex(*cells.last().unwrap());
    let mut exit = ordering_of(&target)?.designated_label();
    let mut segments = Vec::new();
    // cells = β₀ α₁ β₁ … α_k β_k α
    let k = (cells.len() - 2) / 2;
    for i in (1..=k).rev() {
        let pair = NoncriticalPair::new(simplex(cells[2 * i - 1]), simplex(cells[2 * i]))?;
        let entrance = entrance_from_exit(&exit, pair.upper(), pair.free_vertex())?;
        segments.push(segment_through_noncritical(&entrance, &exit, &pair)?);
        exit = entrance;
    }
    segments.push(segment_from_critical(ordering_of(&simplex(cells[0]))?, &exit)?);
    segments.reverse();
    Ok(segments)
}

/// Path counts for one (source, target) pair of critical simplices of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointCounts {
    pub source: Simplex,
    pub target: Simplex,
    pub dimension: usize,
    pub f_paths: usize,
    pub delta_paths: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub message: String,
    /// The offending path spelled out cell by cell, when there is one.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BijectionReport {
    pub endpoints: Vec<EndpointCounts>,
    pub f_path_count: usize,
    pub delta_path_count: usize,
    /// Paths of `F` with `project(lift(Γ)) = Γ`.
    pub lift_round_trips: usize,
    /// Paths of `Δ(F)` with `lift(project(Γ)) = Γ`.
    pub project_round_trips: usize,
    pub failures: Vec<Failure>,
}

impl BijectionReport {
    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, check: &str, message: impl Into<String>, path: Vec<String>) {
        self.failures.push(Failure {
            check: check.into(),
            message: message.into(),
            path,
        });
    }
}

fn spell_base(path: &GradientPath, sd: &SubdividedComplex<'_>) -> Vec<String> {
    path.simplices(sd.base()).map(|s| s.to_string()).collect()
}

fn spell_delta(path: &GradientPath, sd: &SubdividedComplex<'_>) -> Vec<String> {
    path.cells.iter().map(|&c| sd.label_of(c).to_string()).collect()
}

/// Enumerates the gradient paths of `f` and of `df` and checks that lifting and projecting
/// are mutually inverse, respect the designated critical cells, and stay in carriers of the
/// path's own dimension.
pub fn verify_bijection(
    f: &DiscreteVectorField<'_>,
    sd: &SubdividedComplex<'_>,
    df: &DiscreteVectorField<'_>,
    orderings: &Orderings,
    exec: Execution,
) -> BijectionReport {
    let mut report = BijectionReport::default();
    let base = sd.base();
    let delta = sd.complex();

    let designated = match designated_cells(sd, orderings) {
        Ok(d) => d,
        Err(e) => {
            report.fail("critical-bijection", e.to_string(), Vec::new());
            return report;
        }
    };
    let expected: HashSet<SimplexId> = designated.values().copied().collect();
    let actual: HashSet<SimplexId> = df.critical_cells().iter().collect();
    let mut missing: Vec<&SimplexId> = expected.difference(&actual).collect();
    missing.sort();
    let mut extra: Vec<&SimplexId> = actual.difference(&expected).collect();
    extra.sort();
    if let Some(&&c) = missing.first() {
        report.fail(
            "critical-bijection",
            format!("designated cell {} is not critical in Δ(F)", sd.label_of(c)),
            Vec::new(),
        );
    }
    if let Some(&&c) = extra.first() {
        report.fail(
            "critical-bijection",
            format!("cell {} is critical in Δ(F) but not designated", sd.label_of(c)),
            Vec::new(),
        );
    }

    let gr_f = match f.gradient_paths(exec) {
        Ok(p) => p,
        Err(e) => {
            report.fail("enumerate-F", e.to_string(), Vec::new());
            return report;
        }
    };
    let gr_d = match df.gradient_paths(exec) {
        Ok(p) => p,
        Err(e) => {
            report.fail("enumerate-ΔF", e.to_string(), Vec::new());
            return report;
        }
    };
    report.f_path_count = gr_f.len();
    report.delta_path_count = gr_d.len();
    let gr_d_set: HashSet<&GradientPath> = gr_d.iter().collect();

    let mut counts: BTreeMap<(SimplexId, SimplexId), (usize, usize)> = BTreeMap::new();
    for p in &gr_f {
        counts.entry((p.source(), p.target())).or_default().0 += 1;
    }
    for p in &gr_d {
        let key = (sd.carrier(p.source()), sd.carrier(p.target()));
        counts.entry(key).or_default().1 += 1;
    }
    for (&(s, t), &(nf, nd)) in &counts {
        let (ss, ts) = (base.simplex(s).clone(), base.simplex(t).clone());
        if nf != nd {
            report.fail(
                "endpoint-counts",
                format!("{ss} -> {ts}: {nf} paths in F, {nd} in Δ(F)"),
                Vec::new(),
            );
        }
        report.endpoints.push(EndpointCounts {
            dimension: ss.dim(),
            source: ss,
            target: ts,
            f_paths: nf,
            delta_paths: nd,
        });
    }

    let lifted = exec.map(&gr_f, |p| lift_path(p, sd, f, df, orderings));
    for (p, l) in gr_f.iter().zip(lifted) {
        let l = match l {
            Ok(l) => l,
            Err(e) => {
                report.fail("lift", e.to_string(), spell_base(p, sd));
                continue;
            }
        };
        if !gr_d_set.contains(&l) {
            report.fail(
                "lift",
                "lifted path is not a gradient path of Δ(F)",
                spell_delta(&l, sd),
            );
            continue;
        }
        if l.source() != designated[&p.source()] || l.target() != designated[&p.target()] {
            report.fail("lift-endpoints", "lift misses the designated cells", spell_delta(&l, sd));
            continue;
        }
        match project_path(&l, sd, f) {
            Ok(back) if back == *p => report.lift_round_trips += 1,
            Ok(back) => report.fail(
                "project∘lift",
                format!("projects back to {}", spell_base(&back, sd).join(" ")),
                spell_base(p, sd),
            ),
            Err(e) => report.fail("project∘lift", e.to_string(), spell_base(p, sd)),
        }
    }

    let projected = exec.map(&gr_d, |p| {
        project_path(p, sd, f).and_then(|q| lift_path(&q, sd, f, df, orderings))
    });
    for (p, back) in gr_d.iter().zip(projected) {
        let n = p.dimension(delta);
        if let Some(&c) = p
            .cells
            .iter()
            .find(|&&c| delta.simplex(c).dim() == n && base.simplex(sd.carrier(c)).dim() != n)
        {
            report.fail(
                "carrier-confinement",
                format!("{}-cell {} has carrier of another dimension", n, sd.label_of(c)),
                spell_delta(p, sd),
            );
        }
        match back {
            Ok(b) if b == *p => report.project_round_trips += 1,
            Ok(_) => report.fail("lift∘project", "lift of the projection differs", spell_delta(p, sd)),
            Err(e) => report.fail("lift∘project", e.to_string(), spell_delta(p, sd)),
        }
    }
    report
}
