//! Finest complete congruence imploding an interval, via the largest
//! compatible subcontext.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::context::{AttributeSet, FormalContext, ObjectSet, Reduction, Subcontext};
use crate::error::{Error, Result};
use crate::lattice::{Concept, ConceptLattice};
use crate::poset::Interval;

/// What to do with a context that is not reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReducedInput {
    /// Refuse non-reduced contexts.
    #[default]
    Strict,
    /// Reduce first and work on the reduced context.
    ReduceInternally,
}

#[derive(Debug, Clone)]
pub struct CongruenceResult {
    /// The context the computation ran on (the reduced one if reduction happened).
    pub context: FormalContext,
    /// Present when the input was reduced internally.
    pub reduction: Option<Reduction>,
    pub bound_objects: ObjectSet,
    pub bound_attributes: AttributeSet,
    pub compatible_subcontext: Subcontext,
    /// `B([O, P])`.
    pub factor: ConceptLattice,
    /// Original concept index to factor index.
    pub class_map: Vec<usize>,
}

impl CongruenceResult {
    pub fn is_trivial(&self) -> bool {
        self.factor.len() == 1
    }

    /// The congruence classes as lists of original concept indices,
    /// ordered by factor index.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.factor.len()];
        for (c, &f) in self.class_map.iter().enumerate() {
            out[f].push(c);
        }
        out
    }
}

/// `H = A ∪ (G \ C)` and `N = D ∪ (M \ B)` for `S = [(A, B), (C, D)]`.
pub fn congruence_bounds(lat: &ConceptLattice, s: Interval) -> Result<(ObjectSet, AttributeSet)> {
    if !lat.context().is_reduced() {
        return Err(Error::NotReduced(
            "the bounds are defined for reduced contexts".into(),
        ));
    }
    Ok(raw_bounds(lat, s))
}

fn raw_bounds(lat: &ConceptLattice, s: Interval) -> (ObjectSet, AttributeSet) {
    let lo = lat.concept(s.bottom);
    let hi = lat.concept(s.top);
    let mut h = lat.context().all_objects();
    h.difference_with(&hi.extent);
    h.union_with(&lo.extent);
    let mut n = lat.context().all_attributes();
    n.difference_with(&lo.intent);
    n.union_with(&hi.intent);
    (h, n)
}

/// Whether `(A ∩ H, B ∩ N)` is a concept of `[H, N]` for every concept `(A, B)`.
pub fn is_compatible(ctx: &FormalContext, sub: &Subcontext) -> bool {
    let lat = ConceptLattice::new(ctx.clone());
    is_compatible_in(&lat, sub)
}

pub(crate) fn is_compatible_in(lat: &ConceptLattice, sub: &Subcontext) -> bool {
    let ctx = lat.context();
    lat.concepts().iter().all(|c| trace_is_concept(ctx, sub, c))
}

fn trace_is_concept(ctx: &FormalContext, sub: &Subcontext, c: &Concept) -> bool {
    let mut a = c.extent.clone();
    a.intersect_with(&sub.objects);
    let mut b = c.intent.clone();
    b.intersect_with(&sub.attributes);
    // derivations inside [H, N]
    let mut a_up = ctx.derive_objects(&a);
    a_up.intersect_with(&sub.attributes);
    let mut b_down = ctx.derive_attributes(&b);
    b_down.intersect_with(&sub.objects);
    a_up == b && b_down == a
}

/// Down arrows `g ↙ m` and up arrows `g ↗ m` as per-object attribute rows.
pub(crate) fn arrows(ctx: &FormalContext) -> (Vec<FixedBitSet>, Vec<FixedBitSet>) {
    let (n, m) = (ctx.n_objects(), ctx.n_attributes());
    let mut down = vec![FixedBitSet::with_capacity(m); n];
    let mut up = vec![FixedBitSet::with_capacity(m); n];
    let proper = |a: &FixedBitSet, b: &FixedBitSet| a.is_subset(b) && a != b;
    for g in 0..n {
        for a in 0..m {
            if ctx.incident(g, a) {
                continue;
            }
            if (0..n)
                .filter(|&h| proper(ctx.row(g), ctx.row(h)))
                .all(|h| ctx.incident(h, a))
            {
                down[g].insert(a);
            }
            if (0..m)
                .filter(|&b| proper(ctx.column(a), ctx.column(b)))
                .all(|b| ctx.incident(g, b))
            {
                up[g].insert(a);
            }
        }
    }
    (down, up)
}

/// The largest arrow-closed subcontext inside `[h, n]`.
fn arrow_closed_within(ctx: &FormalContext, h: &ObjectSet, n: &AttributeSet) -> Subcontext {
    let (down, up) = arrows(ctx);
    let mut objs = h.clone();
    let mut attrs = n.clone();
    loop {
        let mut changed = false;
        for g in objs.clone().ones() {
            // g ↗ m with m outside forces g out
            if up[g].ones().any(|a| !attrs.contains(a)) {
                objs.remove(g);
                changed = true;
            }
        }
        for a in attrs.clone().ones() {
            // g ↙ m with g outside forces m out
            if (0..ctx.n_objects()).any(|g| down[g].contains(a) && !objs.contains(g)) {
                attrs.remove(a);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Subcontext::new(objs, attrs)
}

/// Union of all compatible subcontexts inside `[h, n]`, by enumeration.
fn largest_compatible_brute(lat: &ConceptLattice, h: &ObjectSet, n: &AttributeSet) -> Result<Subcontext> {
    let ctx = lat.context();
    let hs: Vec<usize> = h.ones().collect();
    let ns: Vec<usize> = n.ones().collect();
    let bits = hs.len() + ns.len();
    if bits > 24 {
        return Err(Error::Budget {
            what: "compatible subcontext search",
            actual: bits,
            limit: 24,
        });
    }
    let mut best = Subcontext::empty(ctx);
    for mask in 0u64..(1 << bits) {
        let objs = crate::context::bitset(
            ctx.n_objects(),
            hs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &g)| g),
        );
        let attrs = crate::context::bitset(
            ctx.n_attributes(),
            ns.iter()
                .enumerate()
                .filter(|(i, _)| mask >> (hs.len() + i) & 1 == 1)
                .map(|(_, &m)| m),
        );
        let sub = Subcontext::new(objs, attrs);
        if is_compatible_in(lat, &sub) {
            best.objects.union_with(&sub.objects);
            best.attributes.union_with(&sub.attributes);
        }
    }
    Ok(best)
}

/// The finest complete congruence whose class of `S`'s bottom contains `S`'s top.
pub fn finest_imploding_congruence(
    lat: &ConceptLattice,
    s: Interval,
    mode: ReducedInput,
) -> Result<CongruenceResult> {
    lat.order().validate_interval(s)?;
    if lat.context().is_reduced() {
        return congruence_on_reduced(lat, s, None);
    }
    match mode {
        ReducedInput::Strict => Err(Error::NotReduced(
            "congruences are computed on reduced contexts".into(),
        )),
        ReducedInput::ReduceInternally => {
            let red = lat.context().reduce();
            let rlat = ConceptLattice::new(red.context.clone());
            let map = reduction_map(lat, &rlat, &red);
            let inner = Interval::new(map[s.bottom], map[s.top]);
            let mut res = congruence_on_reduced(&rlat, inner, Some(red))?;
            res.class_map = map.iter().map(|&r| res.class_map[r]).collect();
            Ok(res)
        }
    }
}

/// Concept index in the original lattice to concept index in the reduced one,
/// via `(A, B) ↦ (A ∩ G_r, B ∩ M_r)`.
fn reduction_map(lat: &ConceptLattice, rlat: &ConceptLattice, red: &Reduction) -> Vec<usize> {
    let pos: HashMap<usize, usize> = red.objects.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    lat.concepts()
        .iter()
        .map(|c| {
            let ext = crate::context::bitset(
                red.objects.len(),
                c.extent.ones().filter_map(|g| pos.get(&g).copied()),
            );
            rlat.index_of_extent(&ext).expect("reduction preserves concepts")
        })
        .collect()
}

fn congruence_on_reduced(
    lat: &ConceptLattice,
    s: Interval,
    reduction: Option<Reduction>,
) -> Result<CongruenceResult> {
    let ctx = lat.context();
    let (h, n) = raw_bounds(lat, s);
    let mut sub = arrow_closed_within(ctx, &h, &n);
    if !is_compatible_in(lat, &sub) {
        sub = largest_compatible_brute(lat, &h, &n)?;
    }
    let factor = ConceptLattice::new(sub.induced(ctx));
    let obj_pos: Vec<usize> = sub.objects.ones().collect();
    let class_map = lat
        .concepts()
        .iter()
        .map(|c| {
            let ext = crate::context::bitset(
                obj_pos.len(),
                obj_pos.iter().enumerate().filter(|(_, &g)| c.extent.contains(g)).map(|(i, _)| i),
            );
            factor.index_of_extent(&ext).expect("trace of a compatible subcontext")
        })
        .collect();
    Ok(CongruenceResult {
        context: ctx.clone(),
        reduction,
        bound_objects: h,
        bound_attributes: n,
        compatible_subcontext: sub,
        factor,
        class_map,
    })
}
