//! `latfac verify`: cross-checks against the brute-force oracles.

use std::path::Path;

use fixedbitset::FixedBitSet;
use latfac::interval::{classify_interval, IntervalRelation};
use latfac::oracle::{
    oracle_concepts, oracle_leq_theta, oracle_leq_theta_upsets, oracle_minimal_block_relations, OracleBudget,
    RawRelation,
};
use latfac::tolerance::{finest_imploding_block_relation, seed_relation};
use latfac::{ConceptLattice, Interval, Poset};

use crate::{parse_specs, read_context, Failure};

const BLOCK_CELL_LIMIT: usize = 30;

fn budget() -> Result<OracleBudget, Failure> {
    match std::env::var("ORACLE_BUDGET") {
        Ok(s) => OracleBudget::parse(&s).map_err(|e| Failure::input(format!("ORACLE_BUDGET: {e}"))),
        Err(_) => Ok(OracleBudget::default()),
    }
}

fn leq_matrix(p: &Poset) -> Vec<Vec<bool>> {
    (0..p.len()).map(|x| (0..p.len()).map(|y| p.leq(x, y)).collect()).collect()
}

fn raw(rows: &[FixedBitSet], m: usize) -> RawRelation {
    rows.iter().map(|r| (0..m).map(|a| r.contains(a)).collect()).collect()
}

/// Every pair of a preorder has a least upper and a greatest lower bound,
/// up to equivalence.
fn preorder_is_lattice(r: &[Vec<bool>]) -> bool {
    let n = r.len();
    let least = |set: &[usize], up: bool| {
        set.iter()
            .any(|&u| set.iter().all(|&v| if up { r[u][v] } else { r[v][u] }))
    };
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ub: Vec<usize> = (0..n).filter(|&z| r[a][z] && r[b][z]).collect();
            let lb: Vec<usize> = (0..n).filter(|&z| r[z][a] && r[z][b]).collect();
            least(&ub, true) && least(&lb, false)
        })
    })
}

struct Report {
    mismatches: usize,
}

impl Report {
    fn line(&mut self, what: &str, ok: bool, detail: &str) {
        if !ok {
            self.mismatches += 1;
        }
        let status = if ok { "ok" } else { "MISMATCH" };
        if detail.is_empty() {
            println!("{what}: {status}");
        } else {
            println!("{what}: {status} {detail}");
        }
    }
}

pub fn run(input: &Path, specs: &[String]) -> Result<(), Failure> {
    let budget = budget()?;
    let specs = parse_specs(specs)?;
    let ctx = read_context(input)?;
    budget.check_context(&ctx)?;
    let lat = ConceptLattice::new(ctx.clone());
    budget.check_elements(lat.len())?;
    let ivs: Vec<Interval> = specs.iter().map(|s| s.resolve_in(&lat)).collect::<Result<_, _>>()?;
    let mut report = Report { mismatches: 0 };

    let mut ours: Vec<(Vec<usize>, Vec<usize>)> = lat
        .concepts()
        .iter()
        .map(|c| (c.extent.ones().collect(), c.intent.ones().collect()))
        .collect();
    ours.sort();
    let theirs = oracle_concepts(&ctx, &budget)?;
    report.line("concepts", ours == theirs, &format!("({} concepts)", theirs.len()));

    let order = lat.order();
    let leq = leq_matrix(order);
    for (spec, &s) in specs.iter().zip(&ivs) {
        let pairs = [(s.bottom, s.top)];
        let f = IntervalRelation::new(order, &[s])?.leq_theta();
        let down = oracle_leq_theta(&leq, &pairs, &budget)?;
        let up = oracle_leq_theta_upsets(&leq, &pairs, &budget)?;
        let agrees = |o: &[Vec<bool>]| {
            (0..lat.len()).all(|x| (0..lat.len()).all(|y| f.leq(f.class_of[x], f.class_of[y]) == o[x][y]))
        };
        report.line(&format!("{spec} order"), agrees(&down) && agrees(&up), "");

        let pure = classify_interval(order, s)?.is_pure();
        report.line(
            &format!("{spec} classification"),
            pure == preorder_is_lattice(&down),
            if pure { "(pure)" } else { "(nested)" },
        );

        let cells = ctx.n_objects() * ctx.n_attributes();
        if cells > BLOCK_CELL_LIMIT {
            println!("{spec} block relation: skipped ({cells} cells > {BLOCK_CELL_LIMIT})");
            continue;
        }
        let m = ctx.n_attributes();
        let seed = raw(&seed_relation(&lat, s)?, m);
        let all = oracle_minimal_block_relations(&ctx, &seed, &budget)?;
        let got = raw(finest_imploding_block_relation(&lat, s)?.block.relation.rows(), m);
        let below = |k: &RawRelation| got.iter().zip(k).all(|(a, b)| a.iter().zip(b).all(|(&x, &y)| !x || y));
        report.line(
            &format!("{spec} block relation"),
            all.contains(&got) && all.iter().all(below),
            &format!("({} candidates)", all.len()),
        );
    }

    if report.mismatches > 0 {
        return Err(Failure::input(format!("{} mismatches", report.mismatches)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_lattice_check() {
        let chain = vec![vec![true, true], vec![false, true]];
        assert!(preorder_is_lattice(&chain));
        let antichain = vec![vec![true, false], vec![false, true]];
        assert!(!preorder_is_lattice(&antichain));
        // two equivalent elements over a bottom
        let r = vec![vec![true, true, true], vec![false, true, true], vec![false, true, true]];
        assert!(preorder_is_lattice(&r));
    }
}
