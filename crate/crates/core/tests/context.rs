use latfac::cxt;
use latfac::export::{context_from_json, lattice_to_dot, lattice_to_json_string};
use latfac::fixtures::*;
use latfac::oracle::{oracle_all_intervals, oracle_concepts, OracleBudget};
use latfac::search::{find_boolean_subcontext, isomorphic};
use latfac::{ConceptLattice, Error, FormalContext, Subcontext};

const RUNNING_CXT: &str = include_str!("../fixtures/running.cxt");
const RUNNING_GENERIC_CXT: &str = include_str!("../fixtures/running_generic.cxt");
const CUBE_JSON: &str = include_str!("../fixtures/cube.json");

#[test]
fn fixture_files_match_the_fixtures() {
    assert_eq!(cxt::parse(RUNNING_CXT).unwrap(), running_context());
    assert_eq!(cxt::parse(RUNNING_GENERIC_CXT).unwrap(), running_generic_context());
    let cube_ctx = context_from_json(CUBE_JSON).unwrap();
    assert!(isomorphic(ConceptLattice::new(cube_ctx).order(), &cube()));
}

#[test]
fn generic_context_reduces_to_the_running_context() {
    let red = running_generic_context().reduce();
    assert_eq!((red.context.n_objects(), red.context.n_attributes()), (8, 5));
    assert!(isomorphic(
        ConceptLattice::new(red.context).order(),
        ConceptLattice::new(running_context()).order()
    ));
}

#[test]
fn oracle_concept_counts() {
    let b = OracleBudget::default();
    assert_eq!(oracle_concepts(&running_context(), &b).unwrap().len(), 15);
    assert_eq!(oracle_concepts(&FormalContext::empty(), &b).unwrap().len(), 1);
    let lat = ConceptLattice::new(running_context());
    let m: Vec<Vec<bool>> = (0..15).map(|i| (0..15).map(|j| lat.leq(i, j)).collect()).collect();
    let count = m.iter().flatten().filter(|&&x| x).count();
    assert_eq!(oracle_all_intervals(&m, &b).unwrap().len(), count);
    assert_eq!(count, lat.order().comparable_pairs());
}

#[test]
fn derivations() {
    let ctx = running_context();
    let a = ctx.object_set(&["3", "5"]).unwrap();
    assert_eq!(ctx.attribute_names(&ctx.derive_objects(&a)), ["b", "d", "e"]);
    let b = ctx.attribute_set(&["d", "e"]).unwrap();
    assert_eq!(ctx.object_names(&ctx.derive_attributes(&b)), ["3", "5", "6"]);
    assert!(ctx.is_extent(&ctx.closure_objects(&a)));
    assert!(matches!(ctx.object_set(&["9"]), Err(Error::UnknownObject(_))));
    assert!(matches!(ctx.attribute_set(&["z"]), Err(Error::UnknownAttribute(_))));
}

#[test]
fn generic_context_of_a_lattice() {
    let lat = ConceptLattice::new(running_context());
    let g = lat.generic_context();
    assert_eq!((g.n_objects(), g.n_attributes()), (15, 15));
    assert!(isomorphic(ConceptLattice::new(g).order(), lat.order()));
}

#[test]
fn parse_errors_carry_positions() {
    let e = cxt::parse("X\n").unwrap_err();
    assert!(e.to_string().contains("expected 'B'"));
    let e = cxt::parse("B\n\n1\n1\n\ng\nm\nQ\n").unwrap_err();
    assert!(matches!(e, Error::Parse { line: 8, column: 1, .. }));
    assert!(cxt::parse("B\n\n1\n1\n\ng\nm\nX\nextra\n").is_err());
    assert_eq!(cxt::parse("B\r\n\r\n0\r\n0\r\n\r\n").unwrap(), FormalContext::empty());
}

#[test]
fn duplicate_names_rejected() {
    assert!(matches!(
        FormalContext::from_table(&["1", "1"], &["a"], &["X", "."]),
        Err(Error::DuplicateName(_))
    ));
}

#[test]
fn clarify_and_transpose() {
    let ctx = FormalContext::from_table(&["1", "2", "3"], &["a", "b"], &["X.", "X.", ".X"]).unwrap();
    let c = ctx.clarify();
    assert_eq!(c.object_classes, vec![vec![0, 1], vec![2]]);
    assert_eq!(c.context.n_objects(), 2);
    let t = ctx.transpose();
    assert_eq!(t.n_objects(), 2);
    assert!(t.incident(1, 2));
    assert_eq!(ConceptLattice::new(t).len(), ConceptLattice::new(ctx).len());
}

#[test]
fn boolean_subcontexts() {
    let cube_ctx = cube().order_context();
    let found = find_boolean_subcontext(&cube_ctx, 3).unwrap();
    assert!(found.is_valid_in(&cube_ctx));
    assert!(find_boolean_subcontext(&cube_ctx, 4).is_none());
    let sub: Subcontext = found.subcontext(&cube_ctx);
    assert_eq!(ConceptLattice::new(sub.induced(&cube_ctx)).len(), 8);
}

#[test]
fn json_and_dot_exports() {
    let lat = ConceptLattice::new(running_context());
    let json = lattice_to_json_string(&lat);
    assert_eq!(context_from_json(&json).unwrap(), running_context());
    let dot = lattice_to_dot(&lat);
    assert_eq!(dot.matches(" -> ").count(), lat.order().covers().len());
    assert_eq!(lattice_to_dot(&lat), dot);
    assert!(matches!(context_from_json("{"), Err(Error::Json(_))));
}
