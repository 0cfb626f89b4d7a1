//! Finest complete tolerance imploding an interval, via block relations.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::lattice::{Concept, ConceptLattice};
use crate::poset::Interval;

/// A row (object) or column (attribute) of the relation being closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    Object(usize),
    Attribute(usize),
}

/// `J ⊇ I` whose rows are intents and columns extents of the base context.
#[derive(Debug, Clone)]
pub struct BlockRelation {
    pub base: FormalContext,
    /// The context `(G, M, J)`.
    pub relation: FormalContext,
    /// Pairs of `J \ I` in the order they were added.
    pub added: Vec<(usize, usize)>,
}

impl BlockRelation {
    /// `J \ I` sorted by object, then attribute.
    pub fn delta(&self) -> Vec<(usize, usize)> {
        let mut d = self.added.clone();
        d.sort_unstable();
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockViolation {
    /// This object's row is not an intent.
    Object(usize),
    /// This attribute's column is not an extent.
    Attribute(usize),
}

#[derive(Debug, Clone)]
pub struct ToleranceResult {
    pub block: BlockRelation,
    /// `B(G, M, J)`.
    pub factor: ConceptLattice,
    /// Original concept index to the factor concept generated by its extent.
    pub lower_map: Vec<usize>,
    /// Original concept index to the factor concept generated by its intent.
    pub upper_map: Vec<usize>,
}

impl ToleranceResult {
    /// Each factor concept `(E, F)` as the block `[(F', F''), (E'', E')]`
    /// of the original lattice, in factor order.
    pub fn blocks(&self, lat: &ConceptLattice) -> Vec<Interval> {
        self.factor
            .concepts()
            .iter()
            .map(|c| {
                let bottom = lat.generated_by_attributes(&c.intent);
                let top = lat.generated_by_objects(&c.extent);
                Interval::new(bottom, top)
            })
            .collect()
    }
}

/// `I ∪ (C × B)` for `S = [(A, B), (C, D)]`, as rows.
pub fn seed_relation(lat: &ConceptLattice, s: Interval) -> Result<Vec<FixedBitSet>> {
    lat.order().validate_interval(s)?;
    let ctx = lat.context();
    let b = &lat.concept(s.bottom).intent;
    let c = &lat.concept(s.top).extent;
    Ok((0..ctx.n_objects())
        .map(|g| {
            let mut row = ctx.row(g).clone();
            if c.contains(g) {
                row.union_with(b);
            }
            row
        })
        .collect())
}

/// Checks the block-relation law for `j` (given as rows) over `ctx`.
pub fn is_block_relation(ctx: &FormalContext, j: &[FixedBitSet]) -> Result<Option<BlockViolation>> {
    if j.len() != ctx.n_objects() || j.iter().any(|r| r.len() != ctx.n_attributes()) {
        return Err(Error::Dimension("relation shape differs from the context".into()));
    }
    for (g, row) in j.iter().enumerate() {
        if let Some(m) = ctx.row(g).ones().find(|&m| !row.contains(m)) {
            return Err(Error::NotASuperset {
                object: g,
                attribute: m,
            });
        }
    }
    for (g, row) in j.iter().enumerate() {
        if !ctx.is_intent(row) {
            return Ok(Some(BlockViolation::Object(g)));
        }
    }
    for m in 0..ctx.n_attributes() {
        let col = crate::context::bitset(ctx.n_objects(), (0..ctx.n_objects()).filter(|&g| j[g].contains(m)));
        if !ctx.is_extent(&col) {
            return Ok(Some(BlockViolation::Attribute(m)));
        }
    }
    Ok(None)
}

/// The smallest block relation containing `seed`.
///
/// Rows that are not intents grow to their closure under the original
/// incidence, columns that are not extents likewise; every growth re-queues
/// the touched elements of the other kind. `pick` chooses which pending
/// element to process next given the queue length; FIFO is `|_| 0`.
pub fn block_closure(
    ctx: &FormalContext,
    seed: Vec<FixedBitSet>,
    initial: &[Element],
    pick: &mut dyn FnMut(usize) -> usize,
) -> (Vec<FixedBitSet>, Vec<(usize, usize)>) {
    let (n, m) = (ctx.n_objects(), ctx.n_attributes());
    let mut rows = seed;
    let mut cols: Vec<FixedBitSet> = (0..m)
        .map(|a| crate::context::bitset(n, (0..n).filter(|&g| rows[g].contains(a))))
        .collect();
    let mut added = Vec::new();
    let mut queue: VecDeque<Element> = VecDeque::new();
    let mut queued_obj = vec![false; n];
    let mut queued_att = vec![false; m];
    let push = |e: Element, q: &mut VecDeque<Element>, qo: &mut [bool], qa: &mut [bool]| {
        let flag = match e {
            Element::Object(g) => &mut qo[g],
            Element::Attribute(a) => &mut qa[a],
        };
        if !*flag {
            *flag = true;
            q.push_back(e);
        }
    };
    for &e in initial {
        push(e, &mut queue, &mut queued_obj, &mut queued_att);
    }
    while !queue.is_empty() {
        let idx = pick(queue.len()).min(queue.len() - 1);
        let e = queue.remove(idx).expect("index in range");
        match e {
            Element::Object(g) => {
                queued_obj[g] = false;
                let closed = ctx.closure_attributes(&rows[g]);
                for a in closed.difference(&rows[g]).collect::<Vec<_>>() {
                    rows[g].insert(a);
                    cols[a].insert(g);
                    added.push((g, a));
                    push(Element::Attribute(a), &mut queue, &mut queued_obj, &mut queued_att);
                }
            }
            Element::Attribute(a) => {
                queued_att[a] = false;
                let closed = ctx.closure_objects(&cols[a]);
                for g in closed.difference(&cols[a]).collect::<Vec<_>>() {
                    cols[a].insert(g);
                    rows[g].insert(a);
                    added.push((g, a));
                    push(Element::Object(g), &mut queue, &mut queued_obj, &mut queued_att);
                }
            }
        }
    }
    (rows, added)
}

/// Elements whose row or column in `seed` differs from the base incidence.
pub fn touched_elements(ctx: &FormalContext, seed: &[FixedBitSet]) -> Vec<Element> {
    let mut objs = Vec::new();
    let mut atts = FixedBitSet::with_capacity(ctx.n_attributes());
    for (g, row) in seed.iter().enumerate() {
        let mut diff = row.clone();
        diff.difference_with(ctx.row(g));
        if !diff.is_clear() {
            objs.push(Element::Object(g));
            atts.union_with(&diff);
        }
    }
    objs.extend(atts.ones().map(Element::Attribute));
    objs
}

/// The finest block relation containing `I ∪ (C × B)`, with the worklist
/// started from `C ∪ B`.
pub fn finest_imploding_block_relation(lat: &ConceptLattice, s: Interval) -> Result<ToleranceResult> {
    finest_imploding_block_relation_with(lat, s, &mut |_| 0)
}

/// As [`finest_imploding_block_relation`] with a custom worklist policy.
pub fn finest_imploding_block_relation_with(
    lat: &ConceptLattice,
    s: Interval,
    pick: &mut dyn FnMut(usize) -> usize,
) -> Result<ToleranceResult> {
    let seed = seed_relation(lat, s)?;
    let ctx = lat.context();
    let mut initial: Vec<Element> = lat.concept(s.top).extent.ones().map(Element::Object).collect();
    initial.extend(lat.concept(s.bottom).intent.ones().map(Element::Attribute));
    let (rows, added) = block_closure(ctx, seed, &initial, pick);
    let relation = ctx.with_rows(rows)?;
    let factor = ConceptLattice::new(relation.clone());
    let block = BlockRelation {
        base: ctx.clone(),
        relation,
        added,
    };
    let mut res = ToleranceResult {
        block,
        factor,
        lower_map: Vec::new(),
        upper_map: Vec::new(),
    };
    let maps: Vec<(usize, usize)> = lat
        .concepts()
        .iter()
        .map(|c| concept_to_block_maps(&res, c))
        .collect();
    res.lower_map = maps.iter().map(|p| p.0).collect();
    res.upper_map = maps.iter().map(|p| p.1).collect();
    Ok(res)
}

/// Factor concepts generated by a concept's extent and by its intent in `J`.
pub fn concept_to_block_maps(res: &ToleranceResult, c: &Concept) -> (usize, usize) {
    let j = &res.block.relation;
    let lower = res.factor.index_of_extent(&j.closure_objects(&c.extent)).expect("J-extent");
    let upper = res.factor.index_of_extent(&j.derive_attributes(&c.intent)).expect("J-extent");
    (lower, upper)
}
