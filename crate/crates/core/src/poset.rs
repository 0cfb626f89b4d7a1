//! Finite partial orders with cached up-sets, down-sets and covers.

use fixedbitset::FixedBitSet;

use crate::context::{bitset, FormalContext};
use crate::error::{Error, Result};

/// An interval `[bottom, top]` of element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub bottom: usize,
    pub top: usize,
}

impl Interval {
    pub fn new(bottom: usize, top: usize) -> Self {
        Self { bottom, top }
    }

    pub fn singleton(x: usize) -> Self {
        Self { bottom: x, top: x }
    }
}

/// Outcome of a lattice test. A failing pair carries the minimal upper bounds
/// (or maximal lower bounds) that stand in place of the missing join (meet).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeCheck {
    Lattice,
    NoJoin { a: usize, b: usize, bounds: Vec<usize> },
    NoMeet { a: usize, b: usize, bounds: Vec<usize> },
}

impl LatticeCheck {
    pub fn is_lattice(&self) -> bool {
        matches!(self, LatticeCheck::Lattice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl Poset {
    /// Builds a poset from a predicate `leq(i, j)`, which must be a partial order.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let up: Vec<FixedBitSet> = (0..n)
            .map(|i| bitset(n, (0..n).filter(|&j| leq(i, j))))
            .collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::NotAnOrder(format!("{i} is not below itself")));
            }
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAnOrder(format!("{i} and {j} are mutually below")));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::NotAnOrder(format!("not transitive through {i} <= {j}")));
                }
            }
        }
        Ok(Self::from_up_sets(labels, up))
    }

    /// Builds a poset as the reflexive-transitive closure of the given
    /// `(lower, upper)` pairs.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut up: Vec<FixedBitSet> = (0..n).map(|i| bitset(n, [i])).collect();
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::OutOfRange(a.max(b)));
            }
            up[a].insert(b);
        }
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    let row = up[k].clone();
                    up[i].union_with(&row);
                }
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAnOrder(format!("cycle through {i} and {j}")));
                }
            }
        }
        Ok(Self::from_up_sets(labels, up))
    }

    /// Labels default to the element indices.
    pub fn from_covers_unlabeled(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_covers((0..n).map(|i| i.to_string()).collect(), covers)
    }

    pub(crate) fn from_up_sets(labels: Vec<String>, up: Vec<FixedBitSet>) -> Self {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for i in 0..n {
            for j in up[i].ones() {
                if j == i {
                    continue;
                }
                // i < j is a cover iff nothing lies strictly between.
                let mut between = up[i].clone();
                between.intersect_with(&down[j]);
                if between.count_ones(..) == 2 {
                    upper[i].push(j);
                    lower[j].push(i);
                }
            }
        }
        Self {
            up,
            down,
            upper,
            lower,
            labels,
        }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// `[i)`: all elements above or equal to `i`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// `(i]`: all elements below or equal to `i`.
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// All cover pairs `(lower, upper)` in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.upper[i].iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn comparable_pairs(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].count_ones(..) == self.len())
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].count_ones(..) == self.len())
    }

    pub fn upper_bounds(&self, a: usize, b: usize) -> FixedBitSet {
        let mut s = self.up[a].clone();
        s.intersect_with(&self.up[b]);
        s
    }

    pub fn lower_bounds(&self, a: usize, b: usize) -> FixedBitSet {
        let mut s = self.down[a].clone();
        s.intersect_with(&self.down[b]);
        s
    }

    /// Minimal elements of a set.
    pub fn minimal_of(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&i| set.ones().all(|j| j == i || !self.leq(j, i)))
            .collect()
    }

    /// Maximal elements of a set.
    pub fn maximal_of(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&i| set.ones().all(|j| j == i || !self.leq(i, j)))
            .collect()
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        match self.minimal_of(&self.upper_bounds(a, b)).as_slice() {
            [j] => Some(*j),
            _ => None,
        }
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        match self.maximal_of(&self.lower_bounds(a, b)).as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// Checks every pair in index order, joins before meets.
    pub fn lattice_check(&self) -> LatticeCheck {
        if self.is_empty() {
            return LatticeCheck::Lattice;
        }
        for a in 0..self.len() {
            for b in a..self.len() {
                let ub = self.minimal_of(&self.upper_bounds(a, b));
                if ub.len() != 1 {
                    return LatticeCheck::NoJoin { a, b, bounds: ub };
                }
                let lb = self.maximal_of(&self.lower_bounds(a, b));
                if lb.len() != 1 {
                    return LatticeCheck::NoMeet { a, b, bounds: lb };
                }
            }
        }
        LatticeCheck::Lattice
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_check().is_lattice()
    }

    fn require_lattice(&self) -> Result<()> {
        match self.lattice_check() {
            LatticeCheck::Lattice => Ok(()),
            LatticeCheck::NoJoin { a, b, .. } => Err(Error::NotALattice {
                a,
                b,
                missing: "join",
            }),
            LatticeCheck::NoMeet { a, b, .. } => Err(Error::NotALattice {
                a,
                b,
                missing: "meet",
            }),
        }
    }

    /// Join and meet that must exist; errors when the poset is not a lattice.
    pub fn lattice_ops(&self) -> Result<LatticeOps<'_>> {
        self.require_lattice()?;
        let n = self.len();
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = self.join(a, b).expect("checked lattice");
                meet[a * n + b] = self.meet(a, b).expect("checked lattice");
            }
        }
        Ok(LatticeOps {
            poset: self,
            join,
            meet,
        })
    }

    /// Length of the longest chain from a minimal element up to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for i in self.linear_extension() {
            for &j in &self.upper[i] {
                h[j] = h[j].max(h[i] + 1);
            }
        }
        h
    }

    /// Elements sorted so that `i < j` in the order implies `i` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count_ones(..), i));
        order
    }

    pub fn validate_interval(&self, iv: Interval) -> Result<Interval> {
        let n = self.len();
        if iv.bottom >= n {
            return Err(Error::OutOfRange(iv.bottom));
        }
        if iv.top >= n {
            return Err(Error::OutOfRange(iv.top));
        }
        if !self.leq(iv.bottom, iv.top) {
            return Err(Error::InvalidInterval {
                bottom: iv.bottom,
                top: iv.top,
            });
        }
        Ok(iv)
    }

    /// `{x | bottom <= x <= top}`.
    pub fn interval_members(&self, iv: Interval) -> Result<FixedBitSet> {
        self.validate_interval(iv)?;
        let mut s = self.up[iv.bottom].clone();
        s.intersect_with(&self.down[iv.top]);
        Ok(s)
    }

    /// The context `(P, P, <=)`, named by the labels.
    pub fn order_context(&self) -> FormalContext {
        FormalContext::from_rows(self.labels.clone(), self.labels.clone(), self.up.clone())
            .unwrap_or_else(|_| {
                let names: Vec<String> = (0..self.len()).map(|i| i.to_string()).collect();
                FormalContext::from_rows(names.clone(), names, self.up.clone())
                    .expect("index names are unique")
            })
    }

    /// The generic context `(L, L, <=)` of a lattice.
    pub fn generic_context(&self) -> Result<FormalContext> {
        self.require_lattice()?;
        Ok(self.order_context())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Dimension(format!(
                "{} labels for {} elements",
                labels.len(),
                self.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// The suborder induced on `keep`, in index order.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        Poset::from_relation(labels, |a, b| self.leq(keep[a], keep[b])).expect("suborder")
    }
}

/// Precomputed join and meet tables of a lattice.
#[derive(Debug, Clone)]
pub struct LatticeOps<'a> {
    poset: &'a Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl LatticeOps<'_> {
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.poset.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.poset.len() + b]
    }
}
