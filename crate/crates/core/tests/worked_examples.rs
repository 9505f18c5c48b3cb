//! Worked examples with hand-checked labels, plus exhaustive-search oracles for the forced
//! segments.

use std::collections::BTreeSet;

use barymorse_core::delta_morse::{common_suffix_len, partner_in};
use barymorse_core::prelude::*;
use barymorse_core::paths::noncritical_flow;

fn l(s: &str) -> Label {
    s.parse().unwrap()
}

fn sx(v: &[u32]) -> Simplex {
    Simplex::new(v.iter().copied()).unwrap()
}

/// Letter vertices a, f, d, t become 1, 2, 3, 4.
fn lettered(s: &str) -> Label {
    let mapped: String = s
        .chars()
        .map(|c| match c {
            'a' => '1',
            'f' => '2',
            'd' => '3',
            't' => '4',
            other => other,
        })
        .collect();
    l(&mapped)
}

fn seq(labels: &[&str]) -> Vec<Label> {
    labels.iter().map(|s| l(s)).collect()
}

#[test]
fn faces_of_lettered_triangle() {
    let tri = lettered("({a,f} {d} {t})");
    let got: BTreeSet<Label> = tri.faces().into_iter().collect();
    let want: BTreeSet<Label> = [
        "({a,f} {d} {t})",
        "({a,f} {d,t})",
        "({a,f,d} {t})",
        "({a,f} {d})",
        "({a,f,d,t})",
        "({a,f,d})",
        "({a,f})",
    ]
    .iter()
    .map(|s| lettered(s))
    .collect();
    assert_eq!(got, want);
    assert_eq!(tri.support(), sx(&[1, 2, 3, 4]));
}

#[test]
fn noncritical_pairs_with_free_vertex_five() {
    let p = NoncriticalPair::new(sx(&[1, 2, 3, 4]), sx(&[1, 2, 3, 4, 5])).unwrap();
    let (x, case) = pair_noncritical(&l("({1} {3,4} {2,5})"), &p).unwrap();
    assert_eq!(x, l("({1} {3,4} {5} {2})"));
    assert_eq!(case, NoncriticalCase::SplitFree);
    let (x, case) = pair_noncritical(&l("({1} {3,4} {2})"), &p).unwrap();
    assert_eq!(x, l("({1} {3,4} {2} {5})"));
    assert_eq!(case, NoncriticalCase::AppendFree);
}

#[test]
fn seven_cell_noncritical_segment() {
    let p = NoncriticalPair::new(sx(&[1, 2, 3, 4]), sx(&[1, 2, 3, 4, 5])).unwrap();
    let seg = segment_through_noncritical(&l("({1} {3} {4} {2})"), &l("({1} {3} {5} {4})"), &p)
        .unwrap();
    assert_eq!(
        seg.cells,
        seq(&[
            "({1} {3} {4} {2})",
            "({1} {3} {4} {2} {5})",
            "({1} {3} {4} {2,5})",
            "({1} {3} {4} {5} {2})",
            "({1} {3} {4,5} {2})",
            "({1} {3} {5} {4} {2})",
            "({1} {3} {5} {4})",
        ])
    );
    assert_eq!(seg.host, sx(&[1, 2, 3, 4, 5]));
}

#[test]
fn critical_pairs_and_suffix_lengths() {
    let ord = CriticalOrdering::new(sx(&[1, 2, 3, 4, 5]), vec![5, 4, 3, 2, 1]).unwrap();
    assert_eq!(ord.designated_label(), l("({5} {4} {3} {2} {1})"));
    assert_eq!(
        pair_critical(&l("({1,2} {3} {4,5})"), &ord).unwrap(),
        CriticalPairing::Partner {
            label: l("({1} {2} {3} {4,5})"),
            suffix_len: 0
        }
    );
    assert_eq!(
        pair_critical(&l("({4,5} {3} {2} {1})"), &ord).unwrap(),
        CriticalPairing::Partner {
            label: l("({4} {5} {3} {2} {1})"),
            suffix_len: 3
        }
    );
    // The partner keeps the suffix.
    assert_eq!(common_suffix_len(&l("({1} {2} {3} {4,5})"), &ord), 0);
    assert_eq!(common_suffix_len(&l("({4} {5} {3} {2} {1})"), &ord), 3);
}

#[test]
fn twelve_cell_critical_segment() {
    let ord = CriticalOrdering::new(sx(&[1, 2, 3, 4, 5]), vec![5, 4, 3, 2, 1]).unwrap();
    let seg = segment_from_critical(&ord, &l("({2} {4} {5} {1})")).unwrap();
    assert_eq!(
        seg.cells,
        seq(&[
            "({5} {4} {3} {2} {1})",
            "({4,5} {3} {2} {1})",
            "({4} {5} {3} {2} {1})",
            "({4} {5} {2,3} {1})",
            "({4} {5} {2} {3} {1})",
            "({4} {2,5} {3} {1})",
            "({4} {2} {5} {3} {1})",
            "({2,4} {5} {3} {1})",
            "({2} {4} {5} {3} {1})",
            "({2} {4} {5} {1,3})",
            "({2} {4} {5} {1} {3})",
            "({2} {4} {5} {1})",
        ])
    );
}

#[test]
fn entrance_of_worked_exit() {
    assert_eq!(
        entrance_from_exit(&l("({1} {3} {5} {4})"), &sx(&[1, 2, 3, 4, 5]), 5).unwrap(),
        l("({1} {3} {4} {2})")
    );
}

/// Exhaustive DFS over paths that stay inside one host, using only the pairing rule:
/// from a top cell, step to any facet other than the one just left; stop (recording) on a
/// boundary facet, continue if the facet is interior and matched upward.
fn all_segments(start_top: &Label, entered: Option<&Label>, ctx: &PairingContext) -> Vec<Vec<Label>> {
    let host = start_top.support();
    let mut out = Vec::new();
    let mut stack = vec![(vec![start_top.clone()], entered.cloned())];
    while let Some((path, came_from)) = stack.pop() {
        let top = path.last().unwrap().clone();
        for face in top.faces() {
            if face.dim() + 1 != top.dim() || Some(&face) == came_from.as_ref() {
                continue;
            }
            let mut p = path.clone();
            p.push(face.clone());
            if face.support() != host {
                out.push(p);
                continue;
            }
            if let Some(up) = partner_in(&face, ctx).unwrap() {
                if up.dim() == top.dim() {
                    p.push(up);
                    stack.push((p, Some(face)));
                }
            }
        }
    }
    out
}

#[test]
fn critical_segments_are_unique_and_match_search() {
    for n in 1..=4u32 {
        let simplex = sx(&(1..=n + 1).collect::<Vec<_>>());
        for seed in 0..3 {
            let c = SimplicialComplex::from_maximal([simplex.vertices().to_vec()]).unwrap();
            let f = DiscreteVectorField::empty(&c);
            let ords = random_orderings(&f, seed);
            let ord = ords.get(&simplex).unwrap().clone();
            let ctx = PairingContext::Critical(ord.clone());
            let found = all_segments(&ord.designated_label(), None, &ctx);
            let exits: BTreeSet<Label> = found.iter().map(|p| p.last().unwrap().clone()).collect();
            // every boundary top cell of every facet is reachable exactly once
            assert_eq!(exits.len(), found.len());
            let facets = c.facets(&simplex).unwrap();
            let fubini: usize = (1..=n as usize).product();
            assert_eq!(found.len(), facets.len() * fubini);
            for p in &found {
                let seg = segment_from_critical(&ord, p.last().unwrap()).unwrap();
                assert_eq!(&seg.cells, p);
            }
        }
    }
}

#[test]
fn noncritical_segments_match_search() {
    for n in 1..=4u32 {
        let upper = sx(&(1..=n + 1).collect::<Vec<_>>());
        let lower = sx(&(1..=n).collect::<Vec<_>>());
        let pair = NoncriticalPair::new(lower.clone(), upper.clone()).unwrap();
        let ctx = PairingContext::Noncritical(pair.clone());
        for entrance in barymorse_core::subdivision::ordered_partitions(lower.vertices())
            .into_iter()
            .filter(|x| x.len() == lower.vertices().len())
        {
            let first_top = partner_in(&entrance, &ctx).unwrap().unwrap();
            let found: Vec<Vec<Label>> = all_segments(&first_top, Some(&entrance), &ctx)
                .into_iter()
                .map(|mut p| {
                    p.insert(0, entrance.clone());
                    p
                })
                .collect();
            // the free vertex can stop at any of its n later positions
            assert_eq!(found.len(), n as usize);
            let flow = noncritical_flow(&entrance, &pair).unwrap();
            assert_eq!(flow.len(), 2 * n as usize + 2);
            for p in found {
                let exit = p.last().unwrap();
                assert_eq!(entrance_from_exit(exit, &upper, n + 1).unwrap(), entrance);
                let seg = segment_through_noncritical(&entrance, exit, &pair).unwrap();
                assert_eq!(seg.cells, p);
            }
        }
    }
}

#[test]
fn edge_pair_covers_its_cells() {
    let c = SimplicialComplex::from_maximal([vec![1, 2]]).unwrap();
    let sd = SubdividedComplex::new(&c, Execution::Sequential);
    let pair = NoncriticalPair::new(sx(&[1]), sx(&[1, 2])).unwrap();
    let mut pairs = BTreeSet::new();
    for cell in sd.complex().ids() {
        let lab = sd.label_of(cell);
        if lab.support() == sx(&[2]) {
            continue;
        }
        let (partner, _) = pair_noncritical(&lab, &pair).unwrap();
        let key = if lab < partner { (lab, partner) } else { (partner, lab) };
        pairs.insert(key);
    }
    assert_eq!(
        pairs.into_iter().collect::<Vec<_>>(),
        vec![(l("({1})"), l("({1} {2})")), (l("({1,2})"), l("({2} {1})"))]
    );
}
