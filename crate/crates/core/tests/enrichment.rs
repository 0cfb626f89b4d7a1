use latfac::enrichment::{
    dm_completion, enrich, enrich_iteratively, enrich_specs, factor_map_all,
    factor_map_on_concepts, factor_via_enrichment, factor_via_enrichment_multi,
    theta_irreducible_context, theta_irreducible_sets, ConceptInterval, ContextChoice, Verdict,
};
use latfac::fixtures::*;
use latfac::interval::{classify_interval, IntervalRelation};
use latfac::oracle::{oracle_all_intervals, oracle_cut_count, OracleBudget};
use latfac::search::isomorphic;
use latfac::{ConceptLattice, Error, FormalContext, Interval, Poset};

fn leq_matrix(p: &Poset) -> Vec<Vec<bool>> {
    (0..p.len()).map(|i| (0..p.len()).map(|j| p.leq(i, j)).collect()).collect()
}

fn running_s1_factor() -> Poset {
    let lat = ConceptLattice::new(running_context());
    let s1 = running_s1().resolve_in(&lat).unwrap();
    IntervalRelation::new(lat.order(), &[s1]).unwrap().factorize().to_poset().unwrap()
}

#[test]
fn generic_fixture_is_a_context_of_the_running_lattice() {
    let g = ConceptLattice::new(running_generic_context());
    assert_eq!(g.len(), 15);
    assert!(isomorphic(g.order(), ConceptLattice::new(running_context()).order()));
}

#[test]
fn generic_context_enriched_gives_the_factor() {
    let ctx = running_generic_context();
    let e = enrich_specs(&ctx, &[running_generic_s1()]).unwrap();
    assert_eq!(e.context, running_generic_enriched());
    let lat = ConceptLattice::new(e.context);
    assert_eq!(lat.len(), 8);
    assert!(isomorphic(lat.order(), &running_s1_factor()));
}

#[test]
fn reduced_context_enriched_is_too_small() {
    let red = running_context().reduce().context;
    let e = enrich_specs(&red, &[running_s1()]).unwrap();
    assert_eq!(ConceptLattice::new(e.context).len(), 4);
}

#[test]
fn element_outside_both_irreducible_sets() {
    let lat = ConceptLattice::new(running_generic_context());
    let s = running_generic_s1().resolve_in(&lat).unwrap();
    let (v, u) = theta_irreducible_sets(lat.order(), s).unwrap();
    // the concept generated by object 15 (and by attribute m)
    let x = lat.object_concept(lat.context().object_index("15").unwrap());
    assert_eq!(x, lat.attribute_concept(lat.context().attribute_index("m").unwrap()));
    assert!(!v.contains(&x));
    assert!(!u.contains(&x));
}

#[test]
fn theta_irreducible_context_suffices_for_pure_intervals() {
    let b = OracleBudget::default();
    for (name, p) in all_orders() {
        if !p.is_lattice() {
            continue;
        }
        for (lo, hi) in oracle_all_intervals(&leq_matrix(&p), &b).unwrap() {
            let s = Interval::new(lo, hi);
            let generic = factor_via_enrichment(&p, s, ContextChoice::Generic).unwrap();
            if !classify_interval(&p, s).unwrap().is_pure() {
                assert_eq!(generic.verdict, Verdict::DmCompletionOfFactor, "{name} [{lo},{hi}]");
                continue;
            }
            let minimal = factor_via_enrichment(&p, s, ContextChoice::Minimal).unwrap();
            assert!(
                isomorphic(minimal.lattice.order(), generic.lattice.order()),
                "{name} [{lo},{hi}]"
            );
            assert_eq!(minimal.verdict, Verdict::IsomorphicToFactor, "{name} [{lo},{hi}]");
            assert_eq!(generic.verdict, Verdict::IsomorphicToFactor, "{name} [{lo},{hi}]");
        }
    }
}

// For a nested interval the minimal context loses elements that become
// meet-irreducible only in the completion: in the cube, atom 4 is below
// two coatoms outside the interval, so it is dropped as an attribute, and
// objects 1 and 3 then get equal rows.
#[test]
fn minimal_context_is_too_small_for_nested_intervals() {
    let p = cube();
    let s = cube_nested_interval(&p);
    let t = theta_irreducible_context(&p, s, ContextChoice::Minimal).unwrap();
    assert!(!t.attributes.contains(&element(&p, "4")));
    let f = factor_via_enrichment(&p, s, ContextChoice::Minimal).unwrap();
    assert_eq!(f.lattice.len(), 4);
    assert!(matches!(f.verdict, Verdict::Inconsistent(_)));
}

#[test]
fn singleton_interval_keeps_the_lattice() {
    let p = grid();
    for x in 0..p.len() {
        let t = theta_irreducible_context(&p, Interval::singleton(x), ContextChoice::Minimal).unwrap();
        let lat = ConceptLattice::new(t.context.clone());
        assert!(isomorphic(lat.order(), &p));
        let joins = (0..p.len()).filter(|&y| p.lower_covers(y).len() == 1);
        assert!(joins.into_iter().all(|y| t.objects.contains(&y)));
    }
}

#[test]
fn nested_cube_interval_enriches_to_the_completion() {
    let p = cube();
    let s = cube_nested_interval(&p);
    let f = factor_via_enrichment(&p, s, ContextChoice::Generic).unwrap();
    assert_eq!(f.verdict, Verdict::DmCompletionOfFactor);
    let factor = cube_nested_factor_diagram();
    let dm = dm_completion(&factor).unwrap();
    assert!(isomorphic(f.lattice.order(), dm.order()));
    assert_eq!(dm.len(), 8);
    assert_eq!(oracle_cut_count(&leq_matrix(&factor), &OracleBudget::default()).unwrap(), 8);
}

#[test]
fn completion_of_a_lattice_is_itself() {
    for (_, p) in all_orders().into_iter().filter(|(_, p)| p.is_lattice()) {
        assert!(isomorphic(dm_completion(&p).unwrap().order(), &p));
    }
}

#[test]
fn completion_counts_match_cut_enumeration() {
    let b = OracleBudget::default();
    for (name, p) in all_orders() {
        let dm = dm_completion(&p).unwrap();
        assert_eq!(dm.len(), oracle_cut_count(&leq_matrix(&p), &b).unwrap(), "{name}");
        for x in 0..p.len() {
            let c = dm.object_concept(x);
            assert_eq!(dm.order().label(c), p.label(x));
        }
    }
}

#[test]
fn simultaneous_and_iterated_enrichment_differ() {
    let ctx = five_cycle_context();
    let both = [five_cycle_s1(), five_cycle_s2()];
    let simultaneous = enrich_specs(&ctx, &both).unwrap();
    let forward = enrich_iteratively(&ctx, &both).unwrap();
    let backward = enrich_iteratively(&ctx, &[five_cycle_s2(), five_cycle_s1()]).unwrap();
    assert_eq!(forward.context, backward.context);
    let mut extra = Vec::new();
    for g in 0..ctx.n_objects() {
        let s = simultaneous.context.row(g);
        let f = forward.context.row(g);
        assert!(s.is_subset(f));
        for m in f.difference(s) {
            extra.push((ctx.objects()[g].as_str(), ctx.attributes()[m].as_str()));
        }
    }
    extra.sort();
    assert_eq!(extra, FIVE_CYCLE_ITERATION_DELTA);
}

#[test]
fn enrichment_is_monotone() {
    let ctx = five_cycle_context();
    let one = enrich_specs(&ctx, &[five_cycle_s1()]).unwrap();
    let two = enrich_specs(&ctx, &[five_cycle_s1(), five_cycle_s2()]).unwrap();
    assert!(one.delta().iter().all(|d| two.delta().contains(d)));
    assert!(two.overlapping.is_empty());
    let lat = factor_via_enrichment_multi(&five_cycle_lattice(), &[]).unwrap();
    assert_eq!(lat.len(), 12);
}

#[test]
fn overlapping_intervals_are_flagged() {
    let ctx = five_cycle_context();
    let e = enrich_specs(&ctx, &[five_cycle_s1(), "ext={8}:ext={4}".parse().unwrap()]).unwrap();
    assert_eq!(e.overlapping, vec![(0, 1)]);
}

#[test]
fn non_concept_endpoints_are_refused() {
    let ctx = running_context();
    let lat = ConceptLattice::new(ctx.clone());
    let mut bad = ConceptInterval::from_lattice(&lat, lat.interval(0, lat.top()).unwrap());
    bad.bottom.extent.insert(0);
    assert!(matches!(enrich(&ctx, &[bad]), Err(Error::NotAConcept(_))));
}

#[test]
fn factor_map_on_the_generic_context() {
    let lat = ConceptLattice::new(running_generic_context());
    let s = running_generic_s1().resolve_in(&lat).unwrap();
    let enriched = enrich(&lat.context().clone(), &[ConceptInterval::from_lattice(&lat, s)]).unwrap();
    let images = factor_map_all(&lat, s).unwrap();
    let target = ConceptLattice::new(enriched.context.clone());
    for c in &images {
        assert!(c.is_concept_of(&enriched.context), "image is not a concept");
    }
    // surjective and order preserving
    for t in 0..target.len() {
        assert!(images.iter().any(|c| target.index_of(c) == Some(t)));
    }
    for a in 0..lat.len() {
        for b in 0..lat.len() {
            if lat.leq(a, b) {
                assert!(images[a].extent.is_subset(&images[b].extent));
            }
        }
    }
    assert_eq!(
        factor_map_on_concepts(&lat, s, s.bottom).unwrap(),
        latfac::Concept {
            extent: lat.concept(s.top).extent.clone(),
            intent: lat.concept(s.bottom).intent.clone(),
        }
    );
    // bottom concept: generated by object 9
    let bottom = lat.object_concept(lat.context().object_index("9").unwrap());
    assert_eq!(bottom, lat.bottom());
    let mut expected = lat.concept(bottom).intent.clone();
    expected.union_with(&lat.concept(s.bottom).intent);
    assert_eq!(factor_map_on_concepts(&lat, s, bottom).unwrap().intent, expected);
}

#[test]
fn factor_map_refuses_nested_intervals() {
    let p = cube();
    let lat = ConceptLattice::new(p.order_context());
    let s = Interval::new(
        lat.object_concept(element(&p, "2")),
        lat.object_concept(element(&p, "5")),
    );
    assert!(matches!(factor_map_all(&lat, s), Err(Error::NotPure)));
}

#[test]
fn two_chain_theta_sets() {
    let p = Poset::from_covers_unlabeled(2, &[(0, 1)]).unwrap();
    let t = theta_irreducible_context(&p, Interval::new(0, 1), ContextChoice::Minimal).unwrap();
    assert_eq!(t.objects, vec![1]);
    assert_eq!(t.attributes, vec![0]);
    assert_eq!(ConceptLattice::new(t.enriched(&p).unwrap().context).len(), 1);
}

#[test]
fn not_a_lattice_refused() {
    let p = cube_nested_factor_diagram();
    assert!(matches!(
        theta_irreducible_context(&p, Interval::singleton(0), ContextChoice::Minimal),
        Err(Error::NotALattice { .. })
    ));
    let _ = FormalContext::empty();
}
