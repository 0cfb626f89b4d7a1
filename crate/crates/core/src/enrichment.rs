//! Context-side factorization: enriching the incidence by intervals.

use fixedbitset::FixedBitSet;

use crate::context::{bitset, FormalContext};
use crate::error::{Error, Result};
use crate::interval::{classify_interval, region_partition, FactorStructure, IntervalRelation};
use crate::lattice::{Concept, ConceptLattice};
use crate::poset::{Interval, Poset};
use crate::search::isomorphic;
use crate::spec::IntervalSpec;

/// An interval given by its endpoint concepts `(A, B) ≤ (C, D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptInterval {
    pub bottom: Concept,
    pub top: Concept,
}

impl ConceptInterval {
    pub fn from_lattice(lat: &ConceptLattice, s: Interval) -> Self {
        Self {
            bottom: lat.concept(s.bottom).clone(),
            top: lat.concept(s.top).clone(),
        }
    }
}

/// `(G, M, I ∪ ⋃ C_i × B_i)`.
#[derive(Debug, Clone)]
pub struct EnrichedContext {
    pub base: FormalContext,
    pub intervals: Vec<ConceptInterval>,
    pub context: FormalContext,
    /// Index pairs of intervals that share an element.
    pub overlapping: Vec<(usize, usize)>,
}

impl EnrichedContext {
    /// Incidences added to the base, sorted.
    pub fn delta(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in 0..self.base.n_objects() {
            for m in self.context.row(g).difference(self.base.row(g)) {
                out.push((g, m));
            }
        }
        out
    }
}

fn intervals_meet(ctx: &FormalContext, a: &ConceptInterval, b: &ConceptInterval) -> bool {
    // [a1, c1] and [a2, c2] share an element iff a1 ∨ a2 ≤ c1 ∧ c2.
    let mut lo = a.bottom.extent.clone();
    lo.union_with(&b.bottom.extent);
    let join = ctx.closure_objects(&lo);
    let mut hi = a.top.extent.clone();
    hi.intersect_with(&b.top.extent);
    join.is_subset(&hi)
}

/// Enriches `ctx` by all intervals at once.
pub fn enrich(ctx: &FormalContext, intervals: &[ConceptInterval]) -> Result<EnrichedContext> {
    for (k, iv) in intervals.iter().enumerate() {
        for c in [&iv.bottom, &iv.top] {
            if !c.is_concept_of(ctx) {
                return Err(Error::NotAConcept(format!("endpoint of interval {k}")));
            }
        }
        if !iv.bottom.extent.is_subset(&iv.top.extent) {
            return Err(Error::NotAConcept(format!(
                "interval {k} has its bottom above its top"
            )));
        }
    }
    let mut rows: Vec<FixedBitSet> = ctx.rows().to_vec();
    for iv in intervals {
        for g in iv.top.extent.ones() {
            rows[g].union_with(&iv.bottom.intent);
        }
    }
    let mut overlapping = Vec::new();
    for i in 0..intervals.len() {
        for j in i + 1..intervals.len() {
            if intervals_meet(ctx, &intervals[i], &intervals[j]) {
                overlapping.push((i, j));
            }
        }
    }
    Ok(EnrichedContext {
        base: ctx.clone(),
        intervals: intervals.to_vec(),
        context: ctx.with_rows(rows)?,
        overlapping,
    })
}

/// Resolves every spec against `ctx` and enriches simultaneously.
pub fn enrich_specs(ctx: &FormalContext, specs: &[IntervalSpec]) -> Result<EnrichedContext> {
    let intervals = specs
        .iter()
        .map(|s| {
            let (bottom, top) = s.resolve(ctx)?;
            Ok(ConceptInterval { bottom, top })
        })
        .collect::<Result<Vec<_>>>()?;
    enrich(ctx, &intervals)
}

/// Enriches one spec at a time, resolving each against the context produced
/// so far. `base` and `intervals` of the result refer to the original context
/// and the endpoints as resolved at each step.
pub fn enrich_iteratively(ctx: &FormalContext, specs: &[IntervalSpec]) -> Result<EnrichedContext> {
    let mut current = ctx.clone();
    let mut resolved = Vec::new();
    for s in specs {
        let step = enrich_specs(&current, std::slice::from_ref(s))?;
        resolved.extend(step.intervals);
        current = step.context;
    }
    Ok(EnrichedContext {
        base: ctx.clone(),
        intervals: resolved,
        context: current,
        overlapping: Vec::new(),
    })
}

/// Which objects and attributes the context of a lattice keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContextChoice {
    /// `V` and `U` only.
    #[default]
    Minimal,
    /// Every element as object and attribute.
    Generic,
}

/// `(H, N, ≤)` for an interval `S` of a lattice.
#[derive(Debug, Clone)]
pub struct ThetaIrreducibleContext {
    pub interval: Interval,
    /// Element indices used as objects.
    pub objects: Vec<usize>,
    /// Element indices used as attributes.
    pub attributes: Vec<usize>,
    pub context: FormalContext,
}

impl ThetaIrreducibleContext {
    /// The concept `(↓x ∩ H, ↑x ∩ N)` standing for element `x`.
    pub fn element_concept(&self, order: &Poset, x: usize) -> Concept {
        Concept {
            extent: bitset(
                self.objects.len(),
                self.objects
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| order.leq(v, x))
                    .map(|(i, _)| i),
            ),
            intent: bitset(
                self.attributes.len(),
                self.attributes
                    .iter()
                    .enumerate()
                    .filter(|(_, &u)| order.leq(x, u))
                    .map(|(i, _)| i),
            ),
        }
    }

    /// `K_S` for the interval this context was built for.
    pub fn enriched(&self, order: &Poset) -> Result<EnrichedContext> {
        let iv = ConceptInterval {
            bottom: self.element_concept(order, self.interval.bottom),
            top: self.element_concept(order, self.interval.top),
        };
        enrich(&self.context, &[iv])
    }
}

fn theta_irreducible(members: &FixedBitSet, x: usize, neighbours: &[usize]) -> bool {
    neighbours.len() == 1
        || (!members.contains(x) && neighbours.iter().filter(|&&y| !members.contains(y)).count() <= 1)
}

/// `V`: join-irreducibles and elements outside `S` with at most one lower
/// neighbour outside `S`. `U` dually.
pub fn theta_irreducible_sets(order: &Poset, s: Interval) -> Result<(Vec<usize>, Vec<usize>)> {
    let members = order.interval_members(s)?;
    let v = (0..order.len())
        .filter(|&x| theta_irreducible(&members, x, order.lower_covers(x)))
        .collect();
    let u = (0..order.len())
        .filter(|&x| theta_irreducible(&members, x, order.upper_covers(x)))
        .collect();
    Ok((v, u))
}

pub fn theta_irreducible_context(
    order: &Poset,
    s: Interval,
    choice: ContextChoice,
) -> Result<ThetaIrreducibleContext> {
    order.lattice_ops()?;
    let (objects, attributes) = match choice {
        ContextChoice::Minimal => theta_irreducible_sets(order, s)?,
        ContextChoice::Generic => {
            order.validate_interval(s)?;
            ((0..order.len()).collect(), (0..order.len()).collect())
        }
    };
    let names = |xs: &[usize]| xs.iter().map(|&x| order.label(x).to_string()).collect::<Vec<_>>();
    let context = FormalContext::from_fn(names(&objects), names(&attributes), |g, m| {
        order.leq(objects[g], attributes[m])
    })
    .or_else(|_| {
        let idx = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        FormalContext::from_fn(idx(&objects), idx(&attributes), |g, m| {
            order.leq(objects[g], attributes[m])
        })
    })?;
    Ok(ThetaIrreducibleContext {
        interval: s,
        objects,
        attributes,
        context,
    })
}

/// `B(P, P, ≤)`. Principal cuts keep the element's label; added elements are
/// labelled by their cut.
pub fn dm_completion(p: &Poset) -> Result<ConceptLattice> {
    let ctx = p.order_context();
    let lat = ConceptLattice::new(ctx.clone());
    let mut labels: Vec<String> = lat
        .concepts()
        .iter()
        .map(|c| {
            format!(
                "({{{}}},{{{}}})",
                ctx.object_names(&c.extent).join(","),
                ctx.attribute_names(&c.intent).join(",")
            )
        })
        .collect();
    for x in 0..p.len() {
        labels[lat.object_concept(x)] = p.label(x).to_string();
    }
    lat.with_labels(labels)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `S` is pure and `B(K_S) ≅ L/θ_S`.
    IsomorphicToFactor,
    /// `S` is nested and `B(K_S)` is the completion of `L/θ_S`.
    DmCompletionOfFactor,
    /// The cross-check failed; the message says which.
    Inconsistent(String),
}

impl Verdict {
    pub fn as_str(&self) -> &str {
        match self {
            Verdict::IsomorphicToFactor => "isomorphic-to-factor",
            Verdict::DmCompletionOfFactor => "dm-completion-of-factor",
            Verdict::Inconsistent(m) => m,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnrichmentFactor {
    pub context: ThetaIrreducibleContext,
    pub enriched: EnrichedContext,
    /// `B(K_S)`.
    pub lattice: ConceptLattice,
    /// `L/θ_S` from the order side.
    pub factor: FactorStructure,
    pub verdict: Verdict,
}

/// Builds `B(K_S)` and compares it with `L/θ_S`.
pub fn factor_via_enrichment(order: &Poset, s: Interval, choice: ContextChoice) -> Result<EnrichmentFactor> {
    let context = theta_irreducible_context(order, s, choice)?;
    let enriched = context.enriched(order)?;
    let lattice = ConceptLattice::new(enriched.context.clone());
    let rel = IntervalRelation::new(order, &[s])?;
    let factor = rel.factorize();
    let fposet = factor.to_poset()?;
    let verdict = if classify_interval(order, s)?.is_pure() {
        if isomorphic(lattice.order(), &fposet) {
            Verdict::IsomorphicToFactor
        } else {
            Verdict::Inconsistent("pure interval but B(K_S) differs from the factor".into())
        }
    } else {
        let dm = dm_completion(&fposet)?;
        if isomorphic(lattice.order(), dm.order()) {
            Verdict::DmCompletionOfFactor
        } else {
            let hint = match choice {
                ContextChoice::Minimal => "; the minimal context can be too small here, try the generic one",
                ContextChoice::Generic => "",
            };
            Verdict::Inconsistent(format!(
                "nested interval but B(K_S) differs from the completion of the factor{hint}"
            ))
        }
    };
    Ok(EnrichmentFactor {
        context,
        enriched,
        lattice,
        factor,
        verdict,
    })
}

/// Experimental: `B` of the generic context enriched by several intervals.
/// No verdict is attached.
pub fn factor_via_enrichment_multi(order: &Poset, intervals: &[Interval]) -> Result<ConceptLattice> {
    let ctx = order.generic_context()?;
    let ivs: Vec<ConceptInterval> = intervals
        .iter()
        .map(|&s| {
            order.validate_interval(s)?;
            let c = |x: usize| Concept {
                extent: order.down_set(x).clone(),
                intent: order.up_set(x).clone(),
            };
            Ok(ConceptInterval {
                bottom: c(s.bottom),
                top: c(s.top),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ConceptLattice::new(enrich(&ctx, &ivs)?.context))
}

/// The map `φ` from concepts of a θ-irreducible context to concepts of its
/// enrichment, for a pure interval `S = [(A_S, B_S), (C_S, D_S)]` of `lat`.
pub fn factor_map_on_concepts(lat: &ConceptLattice, s: Interval, c: usize) -> Result<Concept> {
    if !classify_interval(lat.order(), s)?.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(phi(lat, s, c, &region_partition(lat.order(), s)?))
}

/// `φ` applied to every concept of `lat`.
pub fn factor_map_all(lat: &ConceptLattice, s: Interval) -> Result<Vec<Concept>> {
    if !classify_interval(lat.order(), s)?.is_pure() {
        return Err(Error::NotPure);
    }
    let r = region_partition(lat.order(), s)?;
    Ok((0..lat.len()).map(|c| phi(lat, s, c, &r)).collect())
}

fn phi(lat: &ConceptLattice, s: Interval, c: usize, r: &crate::interval::RegionPartition) -> Concept {
    let b_s = &lat.concept(s.bottom).intent;
    let c_s = &lat.concept(s.top).extent;
    let Concept { extent, intent } = lat.concept(c).clone();
    if r.members.contains(c) {
        Concept {
            extent: c_s.clone(),
            intent: b_s.clone(),
        }
    } else if r.below.contains(c) {
        let mut b = intent;
        b.union_with(b_s);
        Concept { extent, intent: b }
    } else if r.above.contains(c) {
        let mut a = extent;
        a.union_with(c_s);
        Concept { extent: a, intent }
    } else {
        Concept { extent, intent }
    }
}
