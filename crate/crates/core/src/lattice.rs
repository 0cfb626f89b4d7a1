//! Concept lattices.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::context::{bitset, AttributeSet, FormalContext, ObjectSet};
use crate::error::{Error, Result};
use crate::poset::{Interval, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

impl Concept {
    pub fn from_extent(ctx: &FormalContext, extent: &ObjectSet) -> Self {
        let intent = ctx.derive_objects(extent);
        Self {
            extent: ctx.derive_attributes(&intent),
            intent,
        }
    }

    pub fn from_intent(ctx: &FormalContext, intent: &AttributeSet) -> Self {
        let extent = ctx.derive_attributes(intent);
        Self {
            intent: ctx.derive_objects(&extent),
            extent,
        }
    }

    pub fn is_concept_of(&self, ctx: &FormalContext) -> bool {
        self.extent.len() == ctx.n_objects()
            && self.intent.len() == ctx.n_attributes()
            && ctx.derive_objects(&self.extent) == self.intent
            && ctx.derive_attributes(&self.intent) == self.extent
    }
}

/// All concepts of a context, bottom first.
///
/// Concepts are generated in lectic order of their intents and then stably
/// sorted by extent size, so indices form a linear extension of the order.
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<Concept>,
    order: Poset,
    by_extent: HashMap<ObjectSet, usize>,
}

/// Intents of `ctx` in lectic order (NextClosure).
pub fn lectic_intents(ctx: &FormalContext) -> Vec<AttributeSet> {
    let m = ctx.n_attributes();
    let mut current = ctx.closure_attributes(&FixedBitSet::with_capacity(m));
    let mut out = vec![current.clone()];
    'next: loop {
        for i in (0..m).rev() {
            if current.contains(i) {
                continue;
            }
            let mut seed = bitset(m, current.ones().filter(|&j| j < i));
            seed.insert(i);
            let closed = ctx.closure_attributes(&seed);
            if closed.ones().take_while(|&j| j < i).eq(current.ones().take_while(|&j| j < i)) {
                current = closed;
                out.push(current.clone());
                continue 'next;
            }
        }
        break;
    }
    out
}

impl ConceptLattice {
    pub fn new(context: FormalContext) -> Self {
        let mut concepts: Vec<Concept> = lectic_intents(&context)
            .into_iter()
            .map(|intent| Concept {
                extent: context.derive_attributes(&intent),
                intent,
            })
            .collect();
        concepts.sort_by_key(|c| c.extent.count_ones(..));
        let n = concepts.len();
        let up: Vec<FixedBitSet> = concepts
            .iter()
            .map(|c| {
                bitset(
                    n,
                    (0..n).filter(|&j| c.extent.is_subset(&concepts[j].extent)),
                )
            })
            .collect();
        let by_extent = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.clone(), i))
            .collect();
        let labels = concept_labels(&context, &concepts);
        let order = Poset::from_up_sets(labels, up);
        Self {
            context,
            concepts,
            order,
            by_extent,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &Concept {
        &self.concepts[i]
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.leq(i, j)
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn index_of_extent(&self, extent: &ObjectSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    pub fn index_of(&self, c: &Concept) -> Option<usize> {
        self.index_of_extent(&c.extent)
            .filter(|&i| self.concepts[i].intent == c.intent)
    }

    /// Index of the concept generated by an object set, `(A'', A')`.
    pub fn generated_by_objects(&self, a: &ObjectSet) -> usize {
        self.by_extent[&self.context.closure_objects(a)]
    }

    /// Index of the concept generated by an attribute set, `(B', B'')`.
    pub fn generated_by_attributes(&self, b: &AttributeSet) -> usize {
        self.by_extent[&self.context.derive_attributes(b)]
    }

    pub fn object_concept(&self, g: usize) -> usize {
        self.generated_by_objects(&bitset(self.context.n_objects(), [g]))
    }

    pub fn attribute_concept(&self, m: usize) -> usize {
        self.generated_by_attributes(&bitset(self.context.n_attributes(), [m]))
    }

    /// The interval between two concept indices.
    pub fn interval(&self, bottom: usize, top: usize) -> Result<Interval> {
        self.order.validate_interval(Interval::new(bottom, top))
    }

    /// The interval between two concepts given by their extents.
    pub fn interval_by_extents(&self, bottom: &ObjectSet, top: &ObjectSet) -> Result<Interval> {
        let find = |e: &ObjectSet| {
            self.index_of_extent(e).ok_or_else(|| {
                Error::NotAConcept(format!("{:?}", self.context.object_names(e)))
            })
        };
        self.interval(find(bottom)?, find(top)?)
    }

    pub fn interval_members(&self, iv: Interval) -> Result<FixedBitSet> {
        self.order.interval_members(iv)
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.order.lower_covers(i).len() == 1)
            .collect()
    }

    /// Elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.order.upper_covers(i).len() == 1)
            .collect()
    }

    /// Objects whose object concept is `i` (reduced labelling).
    pub fn object_labels(&self, i: usize) -> Vec<usize> {
        (0..self.context.n_objects())
            .filter(|&g| self.object_concept(g) == i)
            .collect()
    }

    /// Attributes whose attribute concept is `i` (reduced labelling).
    pub fn attribute_labels(&self, i: usize) -> Vec<usize> {
        (0..self.context.n_attributes())
            .filter(|&m| self.attribute_concept(m) == i)
            .collect()
    }

    pub fn generic_context(&self) -> FormalContext {
        self.order.order_context()
    }

    /// Replaces the element labels used in diagnostics and exports.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        self.order = self.order.with_labels(labels)?;
        Ok(self)
    }
}

fn concept_labels(ctx: &FormalContext, concepts: &[Concept]) -> Vec<String> {
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); concepts.len()];
    let find = |e: &ObjectSet| concepts.iter().position(|c| &c.extent == e).expect("concept");
    for g in 0..ctx.n_objects() {
        let e = ctx.closure_objects(&bitset(ctx.n_objects(), [g]));
        labels[find(&e)].push(ctx.objects()[g].clone());
    }
    let mut attr_labels: Vec<Vec<String>> = vec![Vec::new(); concepts.len()];
    for m in 0..ctx.n_attributes() {
        let e = ctx.derive_attributes(&bitset(ctx.n_attributes(), [m]));
        attr_labels[find(&e)].push(ctx.attributes()[m].clone());
    }
    labels
        .into_iter()
        .zip(attr_labels)
        .enumerate()
        .map(|(i, (o, a))| {
            if !o.is_empty() {
                o.join(",")
            } else if !a.is_empty() {
                a.join(",")
            } else {
                format!("c{i}")
            }
        })
        .collect()
}

/// Shorthand for [`ConceptLattice::new`] on a borrowed context.
pub fn enumerate_concepts(ctx: &FormalContext) -> ConceptLattice {
    ConceptLattice::new(ctx.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contranominal(k: usize) -> FormalContext {
        let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        FormalContext::from_fn(names.clone(), names, |g, m| g != m).unwrap()
    }

    #[test]
    fn empty_context_has_one_concept() {
        let l = enumerate_concepts(&FormalContext::empty());
        assert_eq!(l.len(), 1);
        assert_eq!(l.top(), l.bottom());
    }

    #[test]
    fn boolean_lattice() {
        let l = enumerate_concepts(&contranominal(3));
        assert_eq!(l.len(), 8);
        assert_eq!(l.join_irreducibles().len(), 3);
        assert_eq!(l.meet_irreducibles().len(), 3);
        assert!(l.order().is_lattice());
    }

    #[test]
    fn lectic_order_is_increasing() {
        let ctx = contranominal(3);
        let intents = lectic_intents(&ctx);
        assert_eq!(intents.len(), 8);
        // first is the smallest intent, last is M
        assert_eq!(intents[0].count_ones(..), 0);
        assert_eq!(intents[7].count_ones(..), 3);
    }

    #[test]
    fn chain_irreducibles() {
        let ctx = FormalContext::from_table(&["g"], &["m"], &["."]).unwrap();
        let l = enumerate_concepts(&ctx);
        assert_eq!(l.len(), 2);
        assert_eq!(l.join_irreducibles(), vec![1]);
        assert_eq!(l.meet_irreducibles(), vec![0]);
    }

    #[test]
    fn labels_follow_reduced_labelling() {
        let ctx = contranominal(2);
        let l = enumerate_concepts(&ctx);
        assert_eq!(l.object_labels(l.bottom()), Vec::<usize>::new());
        assert_eq!(l.attribute_labels(l.top()), Vec::<usize>::new());
    }
}
