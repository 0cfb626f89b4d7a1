//! Interval relations: imploding pairwise disjoint intervals of an ordered set.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::context::bitset;
use crate::error::{Error, Result};
use crate::poset::{Interval, LatticeCheck, Poset};
use crate::search::{find_crown_through, Crown};

/// The four regions of an interval `S = [u, v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionPartition {
    /// `S` itself.
    pub members: FixedBitSet,
    /// Strictly above some element of `S`, outside `S`: `[u) \ S`.
    pub above: FixedBitSet,
    /// Strictly below some element of `S`, outside `S`: `(v] \ S`.
    pub below: FixedBitSet,
    /// Everything else.
    pub incomparable: FixedBitSet,
}

pub fn region_partition(order: &Poset, s: Interval) -> Result<RegionPartition> {
    let members = order.interval_members(s)?;
    let mut above = order.up_set(s.bottom).clone();
    above.difference_with(&members);
    let mut below = order.down_set(s.top).clone();
    below.difference_with(&members);
    let mut incomparable = FixedBitSet::with_capacity(order.len());
    incomparable.insert_range(..);
    incomparable.difference_with(&members);
    incomparable.difference_with(&above);
    incomparable.difference_with(&below);
    Ok(RegionPartition {
        members,
        above,
        below,
        incomparable,
    })
}

/// Pairwise disjoint intervals and the equivalence they generate.
///
/// Classes are numbered by their infimum.
#[derive(Debug, Clone)]
pub struct IntervalRelation<'a> {
    order: &'a Poset,
    intervals: Vec<Interval>,
    members: Vec<FixedBitSet>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_inf: Vec<usize>,
    class_sup: Vec<usize>,
    class_interval: Vec<Option<usize>>,
}

impl<'a> IntervalRelation<'a> {
    pub fn new(order: &'a Poset, intervals: &[Interval]) -> Result<Self> {
        let members: Vec<FixedBitSet> = intervals
            .iter()
            .map(|&iv| order.interval_members(iv))
            .collect::<Result<_>>()?;
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if !members[i].is_disjoint(&members[j]) {
                    return Err(Error::OverlappingIntervals {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let n = order.len();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (k, set) in members.iter().enumerate() {
            for x in set.ones() {
                owner[x] = Some(k);
            }
        }
        // A class is represented by its infimum; numbering follows the infima.
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let mut class_inf = Vec::new();
        let mut class_sup = Vec::new();
        let mut class_interval = Vec::new();
        for x in 0..n {
            let (inf, sup, k) = match owner[x] {
                Some(k) => (intervals[k].bottom, intervals[k].top, Some(k)),
                None => (x, x, None),
            };
            if inf != x {
                continue;
            }
            let id = classes.len();
            let elems: Vec<usize> = match k {
                Some(k) => members[k].ones().collect(),
                None => vec![x],
            };
            for &e in &elems {
                class_of[e] = id;
            }
            classes.push(elems);
            class_inf.push(inf);
            class_sup.push(sup);
            class_interval.push(k);
        }
        Ok(Self {
            order,
            intervals: intervals.to_vec(),
            members,
            class_of,
            classes,
            class_inf,
            class_sup,
            class_interval,
        })
    }

    pub fn identity(order: &'a Poset) -> Self {
        Self::new(order, &[]).expect("no intervals")
    }

    /// Reads a partition into convex classes with bounds as an interval relation.
    pub fn from_classes(order: &'a Poset, classes: &[Vec<usize>]) -> Result<Self> {
        let mut intervals = Vec::new();
        for class in classes.iter().filter(|c| c.len() > 1) {
            let set = bitset(order.len(), class.iter().copied());
            let lo = order.minimal_of(&set);
            let hi = order.maximal_of(&set);
            let (&[lo], &[hi]) = (lo.as_slice(), hi.as_slice()) else {
                return Err(Error::NotAnEquivalence(format!(
                    "class {class:?} has no least or greatest element"
                )));
            };
            if order.interval_members(Interval::new(lo, hi))? != set {
                return Err(Error::NotAnEquivalence(format!("class {class:?} is not convex")));
            }
            intervals.push(Interval::new(lo, hi));
        }
        Self::new(order, &intervals)
    }

    pub fn order(&self) -> &'a Poset {
        self.order
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval_members(&self, k: usize) -> &FixedBitSet {
        &self.members[k]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// `x ↦ [x]θ`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// `x_θ` of a class.
    pub fn class_inf(&self, c: usize) -> usize {
        self.class_inf[c]
    }

    /// `x^θ` of a class.
    pub fn class_sup(&self, c: usize) -> usize {
        self.class_sup[c]
    }

    /// The interval generating a class, if it is not a singleton of the identity.
    pub fn class_interval(&self, c: usize) -> Option<usize> {
        self.class_interval[c]
    }

    /// Number of intervals with at least two elements.
    pub fn fat_intervals(&self) -> Vec<usize> {
        (0..self.intervals.len())
            .filter(|&k| self.members[k].count_ones(..) > 1)
            .collect()
    }

    /// Edges `S_i → S_j` of the Penrose digraph over the multi-element
    /// intervals: the infimum of `S_i` lies strictly below `S_j`.
    pub fn penrose_edges(&self) -> Vec<(usize, usize)> {
        let fat = self.fat_intervals();
        let mut edges = Vec::new();
        for &i in &fat {
            for &j in &fat {
                if i != j && self.order.leq(self.intervals[i].bottom, self.intervals[j].top) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// The shortest cycle of the Penrose digraph, smallest start first.
    /// A cycle lists interval indices `S_1, ..., S_k` with `S_i → S_{i+1}`.
    pub fn penrose_witness(&self) -> Option<Vec<usize>> {
        let k = self.intervals.len();
        let mut adj = vec![Vec::new(); k];
        for (i, j) in self.penrose_edges() {
            adj[i].push(j);
        }
        let mut best: Option<Vec<usize>> = None;
        for start in 0..k {
            // BFS restricted to nodes >= start, so each cycle is found from its minimum.
            let mut prev = vec![usize::MAX; k];
            let mut queue = VecDeque::from([start]);
            let mut seen = vec![false; k];
            seen[start] = true;
            let mut found = None;
            'bfs: while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if v == start {
                        found = Some(u);
                        break 'bfs;
                    }
                    if v > start && !seen[v] {
                        seen[v] = true;
                        prev[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if let Some(mut u) = found {
                let mut cycle = vec![u];
                while u != start {
                    u = prev[u];
                    cycle.push(u);
                }
                cycle.reverse();
                if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                    best = Some(cycle);
                }
            }
        }
        best
    }

    /// True iff `≤θ` is antisymmetric, decided by acyclicity of the Penrose digraph.
    pub fn is_order_preserving(&self) -> bool {
        self.penrose_witness().is_none()
    }

    /// `[x] ≤* [y]` iff `x_θ ≤ y^θ`.
    pub fn base_relation(&self) -> Vec<FixedBitSet> {
        let c = self.class_count();
        (0..c)
            .map(|i| {
                bitset(
                    c,
                    (0..c).filter(|&j| self.order.leq(self.class_inf[i], self.class_sup[j])),
                )
            })
            .collect()
    }

    /// `≤θ` as the transitive closure of `≤*`, classified.
    pub fn leq_theta(&self) -> FactorStructure {
        let mut rel = self.base_relation();
        let c = rel.len();
        for k in 0..c {
            for i in 0..c {
                if rel[i].contains(k) {
                    let row = rel[k].clone();
                    rel[i].union_with(&row);
                }
            }
        }
        let antisymmetric = (0..c).all(|i| rel[i].ones().all(|j| j == i || !rel[j].contains(i)));
        let labels = self
            .classes
            .iter()
            .map(|members| {
                let names: Vec<&str> = members.iter().map(|&x| self.order.label(x)).collect();
                if names.len() == 1 {
                    names[0].to_string()
                } else {
                    format!("[{}]", names.join(" "))
                }
            })
            .collect();
        let mut fs = FactorStructure {
            classes: self.classes.clone(),
            class_of: self.class_of.clone(),
            representatives: self.class_inf.clone(),
            relation: rel,
            labels,
            kind: FactorKind::Preorder,
            witness: None,
        };
        if !antisymmetric {
            fs.witness = self.penrose_witness().map(FactorWitness::PenroseCrown);
            return fs;
        }
        fs.kind = FactorKind::PartialOrder;
        let poset = fs.to_poset().expect("antisymmetric");
        match poset.lattice_check() {
            LatticeCheck::Lattice => fs.kind = FactorKind::Lattice,
            failure => fs.witness = Some(FactorWitness::NotALattice(failure)),
        }
        fs
    }

    /// The full pipeline: classes, `≤θ`, kind, and the implosion map.
    pub fn factorize(&self) -> FactorStructure {
        self.leq_theta()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Preorder,
    PartialOrder,
    Lattice,
}

impl FactorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FactorKind::Preorder => "preorder",
            FactorKind::PartialOrder => "partial-order",
            FactorKind::Lattice => "lattice",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorWitness {
    /// Interval indices forming a Penrose crown, in cyclic order.
    PenroseCrown(Vec<usize>),
    /// A pair of classes without join or meet.
    NotALattice(LatticeCheck),
}

/// The factor set `L/θ` with `≤θ`.
#[derive(Debug, Clone)]
pub struct FactorStructure {
    pub classes: Vec<Vec<usize>>,
    /// Implosion map `x ↦ [x]θ`.
    pub class_of: Vec<usize>,
    /// Class infima.
    pub representatives: Vec<usize>,
    /// `relation[i]` holds `j` iff class `i ≤θ` class `j`.
    pub relation: Vec<FixedBitSet>,
    pub labels: Vec<String>,
    pub kind: FactorKind,
    pub witness: Option<FactorWitness>,
}

impl FactorStructure {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.relation[i].contains(j)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.len()).all(|i| self.relation[i].ones().all(|j| j == i || !self.leq(j, i)))
    }

    pub fn to_poset(&self) -> Result<Poset> {
        if !self.is_antisymmetric() {
            return Err(Error::NotAnOrder("factor relation is not antisymmetric".into()));
        }
        Ok(Poset::from_up_sets(self.labels.clone(), self.relation.clone()))
    }

    pub fn lattice_check(&self) -> Result<LatticeCheck> {
        Ok(self.to_poset()?.lattice_check())
    }

    /// Non-reflexive pairs `(i, j)` with `i ≤θ j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.relation[i].ones().filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }
}

/// Whether a single interval keeps the factor a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Pure,
    /// `y = x ∨ v`, `x = y ∧ a` with `x, y ∈ S∥`, `a ∈ S↑`, `v ∈ S↓`,
    /// `y ≰ a` and `v ≰ x`.
    Nested { x: usize, y: usize, a: usize, v: usize },
}

impl Classification {
    pub fn is_pure(&self) -> bool {
        matches!(self, Classification::Pure)
    }
}

/// Classifies a single interval of a lattice. The witness is the least
/// `(x, y, a, v)` in index order.
pub fn classify_interval(order: &Poset, s: Interval) -> Result<Classification> {
    let ops = order.lattice_ops()?;
    let r = region_partition(order, s)?;
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for x in r.incomparable.ones() {
        for v in r.below.ones() {
            if order.leq(v, x) {
                continue;
            }
            let y = ops.join(x, v);
            if !r.incomparable.contains(y) {
                continue;
            }
            if let Some(a) = r
                .above
                .ones()
                .find(|&a| ops.meet(y, a) == x && !order.leq(y, a))
            {
                let cand = (x, y, a, v);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
    }
    Ok(match best {
        None => Classification::Pure,
        Some((x, y, a, v)) => Classification::Nested { x, y, a, v },
    })
}

/// Whether the intervals, in the given cyclic order, form a Penrose crown:
/// pairwise disjoint, and the infimum of each lies strictly below the next
/// one without belonging to it.
pub fn is_penrose_crown(order: &Poset, intervals: &[Interval]) -> Result<bool> {
    let k = intervals.len();
    if k < 2 {
        return Ok(false);
    }
    let members: Vec<FixedBitSet> = intervals
        .iter()
        .map(|&iv| order.interval_members(iv))
        .collect::<Result<_>>()?;
    for i in 0..k {
        for j in i + 1..k {
            if !members[i].is_disjoint(&members[j]) {
                return Ok(false);
            }
        }
    }
    Ok((0..k).all(|i| {
        let next = (i + 1) % k;
        let inf = intervals[i].bottom;
        !members[next].contains(inf) && members[next].ones().any(|s| order.lt(inf, s))
    }))
}

/// The crown criterion: an order-3 crown through the endpoints of `S`.
pub fn nested_by_crown(order: &Poset, s: Interval) -> Result<Option<Crown>> {
    order.validate_interval(s)?;
    Ok(find_crown_through(order, s.bottom, s.top, 3))
}

/// Checks the two conditions characterising interval relations among
/// equivalences of a lattice: related pairs keep their joins and meets in
/// the class, and no two classes cross in both directions.
pub fn check_interval_relation_axioms(order: &Poset, relation: &[FixedBitSet]) -> Result<bool> {
    let n = order.len();
    if relation.len() != n || relation.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("relation is not {n}x{n}")));
    }
    for i in 0..n {
        if !relation[i].contains(i) {
            return Err(Error::NotAnEquivalence(format!("{i} is not related to itself")));
        }
        for j in relation[i].ones() {
            if !relation[j].contains(i) {
                return Err(Error::NotAnEquivalence(format!("{i}~{j} is not symmetric")));
            }
            if !relation[j].is_subset(&relation[i]) {
                return Err(Error::NotAnEquivalence(format!("not transitive through {i}~{j}")));
            }
        }
    }
    let ops = order.lattice_ops()?;
    for x1 in 0..n {
        for x2 in relation[x1].ones() {
            if !relation[x1].contains(ops.join(x1, x2)) || !relation[x1].contains(ops.meet(x1, x2)) {
                return Ok(false);
            }
        }
    }
    // Class representatives are the least index in each class.
    let rep: Vec<usize> = (0..n).map(|i| relation[i].minimum().expect("reflexive")).collect();
    let mut reps: Vec<usize> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    for &p in &reps {
        for &q in &reps {
            if p == q {
                continue;
            }
            let mut p_above_q = false;
            let mut p_below_q = false;
            for x in relation[p].ones() {
                for y in relation[q].ones() {
                    p_above_q |= order.lt(y, x);
                    p_below_q |= order.lt(x, y);
                }
            }
            if p_above_q && p_below_q {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every class of an equivalence is an interval of the order.
pub fn classes_are_intervals(order: &Poset, relation: &[FixedBitSet]) -> bool {
    (0..order.len()).all(|x| {
        let class = &relation[x];
        match (
            order.minimal_of(class).as_slice(),
            order.maximal_of(class).as_slice(),
        ) {
            (&[lo], &[hi]) => order.interval_members(Interval::new(lo, hi)).ok().as_ref() == Some(class),
            _ => false,
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationEntry {
    pub a: usize,
    pub b: usize,
    pub operation: Operation,
    pub preserved: bool,
}

/// For a single pure interval: whether `[a∧b] = [a]∧[b]` and
/// `[a∨b] = [a]∨[b]` for every pair `a ≤ b` in index order.
pub fn meet_join_preservation_report(rel: &IntervalRelation<'_>) -> Result<Vec<PreservationEntry>> {
    if rel.intervals().len() != 1 {
        return Err(Error::NotSingleInterval(rel.intervals().len()));
    }
    let order = rel.order();
    let ops = order.lattice_ops()?;
    let factor = rel.factorize();
    if factor.kind != FactorKind::Lattice {
        return Err(Error::NotPure);
    }
    let fp = factor.to_poset()?;
    let fops = fp.lattice_ops()?;
    let mut out = Vec::new();
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            let (ca, cb) = (rel.class_of(a), rel.class_of(b));
            out.push(PreservationEntry {
                a,
                b,
                operation: Operation::Meet,
                preserved: rel.class_of(ops.meet(a, b)) == fops.meet(ca, cb),
            });
            out.push(PreservationEntry {
                a,
                b,
                operation: Operation::Join,
                preserved: rel.class_of(ops.join(a, b)) == fops.join(ca, cb),
            });
        }
    }
    Ok(out)
}
