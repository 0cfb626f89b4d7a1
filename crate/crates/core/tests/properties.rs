use fixedbitset::FixedBitSet;
use latfac::cxt;
use latfac::fixtures::all_orders;
use latfac::interval::{region_partition, FactorStructure, IntervalRelation};
use latfac::oracle::{oracle_leq_theta, oracle_leq_theta_upsets, OracleBudget};
use latfac::search::{find_crown, isomorphic};
use latfac::{ConceptLattice, FormalContext, Interval, Poset};
use proptest::prelude::*;

const BUDGET: OracleBudget = OracleBudget {
    max_objects: 6,
    max_attributes: 6,
    max_elements: 64,
    rng_seed: 0,
};

fn context() -> impl Strategy<Value = FormalContext> {
    (0usize..=6, 0usize..=6).prop_flat_map(|(n, m)| {
        proptest::collection::vec(any::<bool>(), n * m).prop_map(move |bits| {
            let names = |k: usize, p: &str| (0..k).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
            FormalContext::from_fn(names(n, "g"), names(m, "m"), |g, a| bits[g * m + a]).unwrap()
        })
    })
}

fn leq_matrix(p: &Poset) -> Vec<Vec<bool>> {
    (0..p.len()).map(|i| (0..p.len()).map(|j| p.leq(i, j)).collect()).collect()
}

/// Greedy disjoint intervals from raw picks.
fn intervals(p: &Poset, picks: &[(usize, usize)], limit: usize) -> Vec<Interval> {
    let mut used = FixedBitSet::with_capacity(p.len());
    let mut out = Vec::new();
    for &(a, b) in picks {
        let lo = a % p.len();
        let above: Vec<usize> = p.up_set(lo).ones().collect();
        let s = Interval::new(lo, above[b % above.len()]);
        let members = p.interval_members(s).unwrap();
        if out.len() < limit && members.is_disjoint(&used) {
            used.union_with(&members);
            out.push(s);
        }
    }
    out
}

fn element_relation(f: &FactorStructure, n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|x| (0..n).map(|y| f.leq(f.class_of[x], f.class_of[y])).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn both_chain_presentations_agree(ctx in context(), picks in proptest::collection::vec((0usize..64, 0usize..64), 1..4)) {
        let lat = ConceptLattice::new(ctx);
        let ivs = intervals(lat.order(), &picks, 3);
        let pairs: Vec<(usize, usize)> = ivs.iter().map(|s| (s.bottom, s.top)).collect();
        let m = leq_matrix(lat.order());
        let down = oracle_leq_theta(&m, &pairs, &BUDGET).unwrap();
        let up = oracle_leq_theta_upsets(&m, &pairs, &BUDGET).unwrap();
        prop_assert_eq!(&down, &up);
        let f = IntervalRelation::new(lat.order(), &ivs).unwrap().leq_theta();
        prop_assert_eq!(element_relation(&f, lat.len()), down);
    }

    #[test]
    fn at_most_two_fat_intervals_preserve_order(ctx in context(), picks in proptest::collection::vec((0usize..64, 0usize..64), 1..6)) {
        let lat = ConceptLattice::new(ctx);
        let ivs = intervals(lat.order(), &picks, 2);
        let rel = IntervalRelation::new(lat.order(), &ivs).unwrap();
        prop_assert!(rel.is_order_preserving());
        prop_assert!(rel.leq_theta().is_antisymmetric());
    }

    #[test]
    fn crown_free_lattices_are_safe(ctx in context(), picks in proptest::collection::vec((0usize..64, 0usize..64), 1..6)) {
        let lat = ConceptLattice::new(ctx);
        let p = lat.order();
        let crown_free = (3..=p.len() / 2).all(|k| find_crown(p, k).is_none());
        prop_assume!(crown_free);
        let ivs = intervals(p, &picks, 4);
        let rel = IntervalRelation::new(p, &ivs).unwrap();
        prop_assert!(rel.is_order_preserving());
        for &s in &ivs {
            let f = IntervalRelation::new(p, &[s]).unwrap().factorize();
            prop_assert!(f.to_poset().unwrap().is_lattice());
        }
    }

    #[test]
    fn incomparable_region_keeps_its_order(ctx in context(), a in 0usize..64, b in 0usize..64) {
        let lat = ConceptLattice::new(ctx);
        let p = lat.order();
        let s = intervals(p, &[(a, b)], 1)[0];
        let r = region_partition(p, s).unwrap();
        let f = IntervalRelation::new(p, &[s]).unwrap().leq_theta();
        for x in r.incomparable.ones() {
            for y in r.incomparable.ones() {
                prop_assert_eq!(f.leq(f.class_of[x], f.class_of[y]), p.leq(x, y));
            }
        }
    }

    #[test]
    fn cxt_round_trip(ctx in context()) {
        prop_assert_eq!(cxt::parse(&cxt::to_string(&ctx)).unwrap(), ctx);
    }

    #[test]
    fn reduction_keeps_the_lattice(ctx in context()) {
        let red = ctx.reduce();
        prop_assert!(red.context.is_reduced());
        let a = ConceptLattice::new(ctx);
        let b = ConceptLattice::new(red.context);
        prop_assert!(isomorphic(a.order(), b.order()));
    }
}

fn transitive(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    (0..n).all(|a| (0..n).all(|b| !rel[a][b] || (0..n).all(|c| !rel[b][c] || rel[a][c])))
}

// Removing any strict pair from ≤θ breaks transitivity or the monotonicity
// of x ↦ [x].
#[test]
fn leq_theta_is_the_smallest_order() {
    for (name, p) in all_orders() {
        if p.len() > 10 || !p.is_lattice() {
            continue;
        }
        for lo in 0..p.len() {
            for hi in p.up_set(lo).ones() {
                let s = Interval::new(lo, hi);
                let f = IntervalRelation::new(&p, &[s]).unwrap().leq_theta();
                let k = f.len();
                let base: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| f.leq(i, j)).collect()).collect();
                for (i, j) in f.strict_pairs() {
                    let mut smaller = base.clone();
                    smaller[i][j] = false;
                    let monotone = (0..p.len()).all(|x| {
                        p.up_set(x).ones().all(|y| smaller[f.class_of[x]][f.class_of[y]])
                    });
                    assert!(!(transitive(&smaller) && monotone), "{name} [{lo},{hi}] pair ({i},{j})");
                }
            }
        }
    }
}
