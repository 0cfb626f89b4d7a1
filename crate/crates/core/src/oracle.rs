//! Brute-force reference implementations.
//!
//! These work from raw incidence lookups and plain boolean matrices only, so
//! they share no derivation or closure code with the modules they check.
//! Every function refuses inputs beyond its budget instead of sampling.

use crate::context::FormalContext;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_objects: usize,
    pub max_attributes: usize,
    pub max_elements: usize,
    pub rng_seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_objects: 8,
            max_attributes: 8,
            max_elements: 16,
            rng_seed: 0,
        }
    }
}

impl OracleBudget {
    /// Parses `objects=8,attributes=8,elements=16,seed=0`; missing keys keep
    /// their defaults.
    pub fn parse(s: &str) -> Result<Self> {
        let mut b = Self::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::BudgetSpec(format!("bad budget entry `{part}`"));
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: u64 = v.trim().parse().map_err(|_| bad())?;
            match k.trim() {
                "objects" => b.max_objects = v as usize,
                "attributes" => b.max_attributes = v as usize,
                "elements" => b.max_elements = v as usize,
                "seed" => b.rng_seed = v,
                _ => return Err(bad()),
            }
        }
        if b.max_objects == 0 || b.max_attributes == 0 || b.max_elements == 0 {
            return Err(Error::BudgetSpec("budget bounds must be positive".into()));
        }
        Ok(b)
    }

    pub fn check_context(&self, ctx: &FormalContext) -> Result<()> {
        check("objects", ctx.n_objects(), self.max_objects)?;
        check("attributes", ctx.n_attributes(), self.max_attributes)
    }

    pub fn check_elements(&self, n: usize) -> Result<()> {
        check("elements", n, self.max_elements)
    }
}

fn check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::Budget {
            what,
            actual,
            limit,
        })
    } else {
        Ok(())
    }
}

/// A concept as sorted index lists `(extent, intent)`.
pub type RawConcept = (Vec<usize>, Vec<usize>);

/// Every `(A'', A')` over all object subsets `A`, deduplicated and sorted.
pub fn oracle_concepts(ctx: &FormalContext, budget: &OracleBudget) -> Result<Vec<RawConcept>> {
    check("objects", ctx.n_objects(), budget.max_objects.min(20))?;
    let (n, m) = (ctx.n_objects(), ctx.n_attributes());
    let mut out: Vec<RawConcept> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let intent: Vec<usize> = (0..m)
            .filter(|&a| (0..n).all(|g| mask >> g & 1 == 0 || ctx.incident(g, a)))
            .collect();
        let extent: Vec<usize> = (0..n)
            .filter(|&g| intent.iter().all(|&a| ctx.incident(g, a)))
            .collect();
        out.push((extent, intent));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All comparable pairs `(u, v)` with `u ≤ v`.
pub fn oracle_all_intervals(leq: &[Vec<bool>], budget: &OracleBudget) -> Result<Vec<(usize, usize)>> {
    check("elements", leq.len(), budget.max_elements)?;
    let n = leq.len();
    Ok((0..n)
        .flat_map(|u| (0..n).filter(move |&v| leq[u][v]).map(move |v| (u, v)))
        .collect())
}

struct Classes {
    member: Vec<Vec<bool>>,
    inf: Vec<usize>,
    sup: Vec<usize>,
    bottoms: Vec<usize>,
    tops: Vec<usize>,
}

fn classes(leq: &[Vec<bool>], intervals: &[(usize, usize)]) -> Classes {
    let n = leq.len();
    let member: Vec<Vec<bool>> = intervals
        .iter()
        .map(|&(b, t)| (0..n).map(|z| leq[b][z] && leq[z][t]).collect())
        .collect();
    let mut inf: Vec<usize> = (0..n).collect();
    let mut sup: Vec<usize> = (0..n).collect();
    for (k, &(b, t)) in intervals.iter().enumerate() {
        for z in 0..n {
            if member[k][z] {
                inf[z] = b;
                sup[z] = t;
            }
        }
    }
    Classes {
        member,
        inf,
        sup,
        bottoms: intervals.iter().map(|p| p.0).collect(),
        tops: intervals.iter().map(|p| p.1).collect(),
    }
}

fn strictly_below_interval(leq: &[Vec<bool>], member: &[bool], z: usize) -> bool {
    !member[z] && (0..leq.len()).any(|s| member[s] && s != z && leq[z][s])
}

fn strictly_above_interval(leq: &[Vec<bool>], member: &[bool], z: usize) -> bool {
    !member[z] && (0..leq.len()).any(|s| member[s] && s != z && leq[s][z])
}

/// `[x] ≤θ [y]` per element pair by explicit chains through the intervals:
/// `x_θ ≤ y^θ`, or `x_θ` lies below `S_{i1}`, the infimum of each `S_{ij}`
/// lies below `S_{ij+1}`, and `y^θ` lies above `S_{il}`.
pub fn oracle_leq_theta(
    leq: &[Vec<bool>],
    intervals: &[(usize, usize)],
    budget: &OracleBudget,
) -> Result<Vec<Vec<bool>>> {
    check("elements", leq.len(), budget.max_elements)?;
    let n = leq.len();
    let c = classes(leq, intervals);
    let k = intervals.len();
    let mut out = vec![vec![false; n]; n];
    for x in 0..n {
        // intervals reachable by a chain starting below x_θ
        let mut reached = vec![false; k];
        let mut stack: Vec<usize> = (0..k)
            .filter(|&i| strictly_below_interval(leq, &c.member[i], c.inf[x]))
            .collect();
        while let Some(i) = stack.pop() {
            if reached[i] {
                continue;
            }
            reached[i] = true;
            for j in 0..k {
                if !reached[j] && strictly_below_interval(leq, &c.member[j], c.bottoms[i]) {
                    stack.push(j);
                }
            }
        }
        for y in 0..n {
            out[x][y] = leq[c.inf[x]][c.sup[y]]
                || (0..k).any(|i| reached[i] && strictly_above_interval(leq, &c.member[i], c.sup[y]));
        }
    }
    Ok(out)
}

/// The same relation through the up-set presentation: the supremum of each
/// next interval lies above the previous one.
pub fn oracle_leq_theta_upsets(
    leq: &[Vec<bool>],
    intervals: &[(usize, usize)],
    budget: &OracleBudget,
) -> Result<Vec<Vec<bool>>> {
    check("elements", leq.len(), budget.max_elements)?;
    let n = leq.len();
    let c = classes(leq, intervals);
    let k = intervals.len();
    let mut out = vec![vec![false; n]; n];
    for x in 0..n {
        let mut reached = vec![false; k];
        let mut queue: std::collections::VecDeque<usize> = (0..k)
            .filter(|&i| strictly_below_interval(leq, &c.member[i], c.inf[x]))
            .collect();
        while let Some(i) = queue.pop_front() {
            if reached[i] {
                continue;
            }
            reached[i] = true;
            for j in 0..k {
                if !reached[j] && strictly_above_interval(leq, &c.member[i], c.tops[j]) {
                    queue.push_back(j);
                }
            }
        }
        for y in 0..n {
            out[x][y] = leq[c.inf[x]][c.sup[y]]
                || (0..k).any(|i| reached[i] && strictly_above_interval(leq, &c.member[i], c.sup[y]));
        }
    }
    Ok(out)
}

/// Number of cuts `A = A^ul` of an ordered set given by its order matrix.
pub fn oracle_cut_count(leq: &[Vec<bool>], budget: &OracleBudget) -> Result<usize> {
    check("elements", leq.len(), budget.max_elements.min(20))?;
    let n = leq.len();
    let mut count = 0;
    for mask in 0u32..(1u32 << n) {
        let inside = |x: usize| mask >> x & 1 == 1;
        let upper: Vec<usize> = (0..n).filter(|&u| (0..n).all(|a| !inside(a) || leq[a][u])).collect();
        let closed = (0..n).all(|l| upper.iter().all(|&u| leq[l][u]) == inside(l));
        if closed {
            count += 1;
        }
    }
    Ok(count)
}

/// A relation on `G × M` as per-object boolean rows.
pub type RawRelation = Vec<Vec<bool>>;

fn raw_intents(ctx: &FormalContext) -> Vec<Vec<bool>> {
    let (n, m) = (ctx.n_objects(), ctx.n_attributes());
    let mut out: Vec<Vec<bool>> = (0u32..(1u32 << n))
        .map(|mask| {
            (0..m)
                .map(|a| (0..n).all(|g| mask >> g & 1 == 0 || ctx.incident(g, a)))
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn raw_extents(ctx: &FormalContext) -> Vec<Vec<bool>> {
    let (n, m) = (ctx.n_objects(), ctx.n_attributes());
    let mut out: Vec<Vec<bool>> = (0u32..(1u32 << m))
        .map(|mask| {
            (0..n)
                .map(|g| (0..m).all(|a| mask >> a & 1 == 0 || ctx.incident(g, a)))
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every block relation containing `seed`. Rows range over the intents that
/// contain the seed row; columns are then tested against the extents.
pub fn oracle_minimal_block_relations(
    ctx: &FormalContext,
    seed: &RawRelation,
    budget: &OracleBudget,
) -> Result<Vec<RawRelation>> {
    let (n, m) = (ctx.n_objects(), ctx.n_attributes());
    check("incidence cells", n * m, 30)?;
    let _ = budget;
    let intents = raw_intents(ctx);
    let extents = raw_extents(ctx);
    let choices: Vec<Vec<&Vec<bool>>> = (0..n)
        .map(|g| {
            intents
                .iter()
                .filter(|b| (0..m).all(|a| !seed[g][a] || b[a]))
                .collect()
        })
        .collect();
    let combos = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    match combos {
        Some(c) if c <= 1 << 22 => {}
        _ => {
            return Err(Error::Budget {
                what: "block relation candidates",
                actual: combos.unwrap_or(usize::MAX),
                limit: 1 << 22,
            })
        }
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let rel: RawRelation = (0..n).map(|g| choices[g][pick[g]].clone()).collect();
        let columns_ok = (0..m).all(|a| {
            let col: Vec<bool> = (0..n).map(|g| rel[g][a]).collect();
            extents.contains(&col)
        });
        if columns_ok {
            out.push(rel);
        }
        // odometer increment
        let mut g = 0;
        loop {
            if g == n {
                return Ok(out);
            }
            pick[g] += 1;
            if pick[g] < choices[g].len() {
                break;
            }
            pick[g] = 0;
            g += 1;
        }
    }
}

/// All compatible subcontexts `[H, N]` with `H ⊆ objects`, `N ⊆ attributes`.
pub fn oracle_compatible_subcontexts(
    ctx: &FormalContext,
    objects: &[usize],
    attributes: &[usize],
    budget: &OracleBudget,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    budget.check_context(ctx)?;
    check("subcontext bits", objects.len() + attributes.len(), 16)?;
    let concepts = oracle_concepts(ctx, budget)?;
    let bits = objects.len() + attributes.len();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << bits) {
        let h: Vec<usize> = (0..objects.len()).filter(|i| mask >> i & 1 == 1).map(|i| objects[i]).collect();
        let nn: Vec<usize> = (0..attributes.len())
            .filter(|i| mask >> (objects.len() + i) & 1 == 1)
            .map(|i| attributes[i])
            .collect();
        let ok = concepts.iter().all(|(a, b)| {
            let a: Vec<usize> = a.iter().copied().filter(|g| h.contains(g)).collect();
            let b: Vec<usize> = b.iter().copied().filter(|m| nn.contains(m)).collect();
            let a_up: Vec<usize> = nn
                .iter()
                .copied()
                .filter(|&m| a.iter().all(|&g| ctx.incident(g, m)))
                .collect();
            let b_down: Vec<usize> = h
                .iter()
                .copied()
                .filter(|&g| b.iter().all(|&m| ctx.incident(g, m)))
                .collect();
            a_up == b && b_down == a
        });
        if ok {
            out.push((h, nn));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| i.to_string()).collect()
    }

    #[test]
    fn concepts_of_small_contexts() {
        let b = OracleBudget::default();
        assert_eq!(oracle_concepts(&FormalContext::empty(), &b).unwrap().len(), 1);
        let contra = FormalContext::from_fn(names(3), names(3), |g, m| g != m).unwrap();
        assert_eq!(oracle_concepts(&contra, &b).unwrap().len(), 8);
    }

    #[test]
    fn interval_counts() {
        let b = OracleBudget::default();
        let chain = vec![vec![true, true], vec![false, true]];
        assert_eq!(oracle_all_intervals(&chain, &b).unwrap().len(), 3);
        let diamond: Vec<Vec<bool>> = (0..4)
            .map(|i| (0..4).map(|j| i == j || i == 0 || j == 3).collect())
            .collect();
        assert_eq!(oracle_all_intervals(&diamond, &b).unwrap().len(), 9);
    }

    #[test]
    fn cuts_of_crosswise_order() {
        let leq: Vec<Vec<bool>> = (0..4)
            .map(|i| (0..4).map(|j| i == j || (i < 2 && j >= 2)).collect())
            .collect();
        assert_eq!(oracle_cut_count(&leq, &OracleBudget::default()).unwrap(), 7);
    }

    #[test]
    fn identity_block_relations() {
        let b = OracleBudget::default();
        let id = FormalContext::from_fn(names(2), names(2), |g, m| g == m).unwrap();
        let seed: RawRelation = (0..2).map(|g| (0..2).map(|m| g == m).collect()).collect();
        let all = oracle_minimal_block_relations(&id, &seed, &b).unwrap();
        assert!(all.contains(&seed));
        assert!(all.contains(&vec![vec![true; 2]; 2]));
        let full = vec![vec![true; 2]; 2];
        assert_eq!(oracle_minimal_block_relations(&id, &full, &b).unwrap(), vec![full]);
    }

    #[test]
    fn budget_refusal() {
        let b = OracleBudget::default();
        let big = FormalContext::from_fn(names(20), names(20), |g, m| (g + m) % 3 == 0).unwrap();
        assert!(matches!(
            oracle_compatible_subcontexts(&big, &[], &[], &b),
            Err(Error::Budget { .. })
        ));
        let chain: Vec<Vec<bool>> = (0..20).map(|i| (0..20).map(|j| i <= j).collect()).collect();
        assert!(oracle_all_intervals(&chain, &b).is_err());
    }

    #[test]
    fn budget_parsing() {
        let b = OracleBudget::parse("objects=4, elements=9").unwrap();
        assert_eq!((b.max_objects, b.max_attributes, b.max_elements), (4, 8, 9));
        assert!(OracleBudget::parse("objects=0").is_err());
        assert!(OracleBudget::parse("colour=3").is_err());
    }
}
