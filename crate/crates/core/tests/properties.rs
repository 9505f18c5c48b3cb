use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use barymorse_core::complex::alternating_sum;
use barymorse_core::delta_morse::{context_of, partner_in};
use barymorse_core::oracle::{betti_gf2, chain_counts};
use barymorse_core::prelude::*;

/// Up to seven vertex sets of size 1..=4 over vertices 0..6.
fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..6, 1..=4), 1..7).prop_map(|sets| {
        SimplicialComplex::from_maximal(sets.into_iter().map(|s| s.into_iter().collect::<Vec<_>>()))
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn incidence_is_consistent(c in complex_strategy()) {
        for id in c.ids() {
            let s = c.simplex(id);
            prop_assert_eq!(c.facet_ids(id).len(), if s.dim() == 0 { 0 } else { s.dim() + 1 });
            for &f in c.facet_ids(id) {
                prop_assert!(c.simplex(f).is_facet_of(s));
                prop_assert!(c.cofacet_ids(f).contains(&id));
            }
            for &g in c.cofacet_ids(id) {
                prop_assert!(c.facet_ids(g).contains(&id));
            }
        }
        let again = SimplicialComplex::from_maximal(
            c.maximal_simplices().iter().map(|s| s.vertices().to_vec()),
        ).unwrap();
        prop_assert_eq!(again.simplices(), c.simplices());
    }

    #[test]
    fn random_morse_invariants(c in complex_strategy(), seed in any::<u64>()) {
        let f = DiscreteVectorField::random_morse(&c, seed);
        prop_assert!(f.is_morse());
        let crit = f.critical_cells();
        prop_assert_eq!(2 * f.num_pairs() + crit.total(), c.len());
        prop_assert_eq!(alternating_sum(&crit.counts()), c.euler_characteristic());
        let betti = betti_gf2(&c);
        for (k, b) in betti.iter().enumerate() {
            prop_assert!(crit.counts()[k] >= *b);
        }
        let paths = f.gradient_paths(Execution::Sequential).unwrap();
        let distinct: BTreeSet<&GradientPath> = paths.iter().collect();
        prop_assert_eq!(distinct.len(), paths.len());
        for p in &paths {
            prop_assert!(f.check_gradient_path(&p.cells).is_ok());
        }
        prop_assert_eq!(&paths, &f.gradient_paths(Execution::Parallel).unwrap());
    }

    #[test]
    fn subdivision_invariants(c in complex_strategy()) {
        let sd = SubdividedComplex::new(&c, Execution::Parallel);
        let delta = sd.complex();
        prop_assert_eq!(delta.f_vector(), chain_counts(&c));
        prop_assert_eq!(delta.euler_characteristic(), c.euler_characteristic());
        let by_carrier = sd.cells_by_carrier();
        prop_assert_eq!(by_carrier.iter().map(Vec::len).sum::<usize>(), delta.len());
        for cell in delta.ids() {
            let lab = sd.label_of(cell);
            prop_assert_eq!(Label::from_chain(&lab.chain()).unwrap(), lab.clone());
            prop_assert_eq!(sd.cell_of(&lab).unwrap(), cell);
            prop_assert_eq!(c.simplex(sd.carrier(cell)), &lab.support());
            let faces: BTreeSet<Label> = lab.faces().into_iter().collect();
            for &f in delta.facet_ids(cell) {
                let fl = sd.label_of(f);
                prop_assert!(faces.contains(&fl));
                prop_assert!(fl.is_face_of(&lab));
            }
            // every label face is a cell of Δ(L) that is a face of this one
            for fl in &faces {
                let fc = sd.cell_of(fl).unwrap();
                prop_assert!(delta.simplex(fc).is_face_of(delta.simplex(cell)));
            }
        }
    }

    #[test]
    fn delta_morse_invariants(c in complex_strategy(), seed in any::<u64>(), oseed in any::<u64>()) {
        let f = DiscreteVectorField::random_morse(&c, seed);
        let ord = random_orderings(&f, oseed);
        let sd = SubdividedComplex::new(&c, Execution::Sequential);
        let df = build_delta_morse(&f, &sd, &ord, Execution::Parallel).unwrap();
        prop_assert!(df.is_morse());
        prop_assert_eq!(df.critical_cells().counts(), f.critical_cells().counts());

        let designated: BTreeSet<Label> = ord.iter().map(|o| o.designated_label()).collect();
        let crit: BTreeSet<Label> = df.critical_cells().iter().map(|i| sd.label_of(i)).collect();
        prop_assert_eq!(crit, designated);

        // involution, case parity and carrier locality
        for cell in sd.complex().ids() {
            let lab = sd.label_of(cell);
            let ctx = context_of(&f, &ord, sd.carrier(cell)).unwrap();
            match ctx {
                PairingContext::Noncritical(ref p) => {
                    let (x, case) = pair_noncritical(&lab, p).unwrap();
                    let (back, back_case) = pair_noncritical(&x, p).unwrap();
                    prop_assert_eq!(&back, &lab);
                    prop_assert_eq!(case.number() + back_case.number(), if case.number() <= 2 { 3 } else { 7 });
                    let s = x.support();
                    prop_assert!(s == *p.lower() || s == *p.upper());
                }
                PairingContext::Critical(ref o) => {
                    if let Some(x) = partner_in(&lab, &ctx).unwrap() {
                        prop_assert_eq!(partner_in(&x, &ctx).unwrap(), Some(lab.clone()));
                        prop_assert_eq!(x.support(), o.simplex().clone());
                    } else {
                        prop_assert_eq!(lab, o.designated_label());
                    }
                }
            }
        }
    }

    #[test]
    fn local_acyclicity(c in complex_strategy(), seed in any::<u64>()) {
        let f = DiscreteVectorField::random_morse(&c, seed);
        let ord = default_orderings(&f);
        let sd = SubdividedComplex::new(&c, Execution::Sequential);
        let df = build_delta_morse(&f, &sd, &ord, Execution::Sequential).unwrap();
        // restrict Δ(F) to the cells of one F-pair or one critical simplex
        let mut groups: HashMap<SimplexId, Vec<(SimplexId, SimplexId)>> = HashMap::new();
        for (a, b) in df.pairs() {
            let host = sd.carrier(b);
            let key = f.partner(host).map_or(host, |p| p.max(host));
            groups.entry(key).or_default().push((a, b));
        }
        for pairs in groups.into_values() {
            let restricted = DiscreteVectorField::from_id_pairs(sd.complex(), pairs).unwrap();
            prop_assert!(restricted.is_morse());
        }
    }

    #[test]
    fn bijection_holds(c in complex_strategy(), seed in any::<u64>(), oseed in any::<u64>()) {
        let f = DiscreteVectorField::random_morse(&c, seed);
        let ord = random_orderings(&f, oseed);
        let sd = SubdividedComplex::new(&c, Execution::Sequential);
        let df = build_delta_morse(&f, &sd, &ord, Execution::Sequential).unwrap();
        let report = verify_bijection(&f, &sd, &df, &ord, Execution::Parallel);
        prop_assert!(report.success(), "{:?}", report.failures);
        prop_assert_eq!(report.f_path_count, report.delta_path_count);
        prop_assert_eq!(report.lift_round_trips, report.f_path_count);
        prop_assert_eq!(report.project_round_trips, report.delta_path_count);
    }
}

/// Unique continuation and boundary exit for top cells interior to the upper simplex of a pair.
#[test]
fn top_cells_of_a_pair() {
    for n in 1..=4u32 {
        let upper: Vec<u32> = (1..=n + 1).collect();
        let c = SimplicialComplex::from_maximal([upper.clone()]).unwrap();
        let lower = Simplex::new(1..=n).unwrap();
        let upper_s = Simplex::new(upper.clone()).unwrap();
        let v = n + 1;
        let f = DiscreteVectorField::from_pairs(&c, [(&lower, &upper_s)]).unwrap();
        let ord = default_orderings(&f);
        let sd = SubdividedComplex::new(&c, Execution::Sequential);
        let df = build_delta_morse(&f, &sd, &ord, Execution::Sequential).unwrap();
        let top = n as usize;
        for cell in sd.complex().ids_of_dim(top) {
            let lab = sd.label_of(cell);
            let blocks = lab.blocks();
            let mut boundary = blocks.to_vec();
            boundary.pop();
            let boundary = Label::new(boundary).unwrap();
            let facets = sd.complex().facet_ids(cell);
            let on_boundary: Vec<Label> = facets
                .iter()
                .map(|&x| sd.label_of(x))
                .filter(|x| x.support() != upper_s)
                .collect();
            assert_eq!(on_boundary, vec![boundary.clone()]);
            let bcell = sd.cell_of(&boundary).unwrap();
            assert_eq!(df.partner(bcell) == Some(cell), blocks[top] == vec![v]);

            let continuing: Vec<(SimplexId, SimplexId)> = facets
                .iter()
                .filter(|&&x| sd.carrier(x) == sd.carrier(cell))
                .filter_map(|&x| df.up(x).filter(|&y| y != cell).map(|y| (x, y)))
                .collect();
            let first = blocks[0] == vec![v];
            if first {
                assert!(continuing.is_empty(), "{lab}");
            } else {
                assert_eq!(continuing.len(), 1, "{lab}");
                let j = lab.singleton_position(v).unwrap();
                let mut swapped = blocks.to_vec();
                swapped.swap(j - 1, j);
                assert_eq!(sd.label_of(continuing[0].1), Label::new(swapped).unwrap());
            }
        }
    }
}
