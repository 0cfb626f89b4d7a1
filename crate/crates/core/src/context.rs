//! Formal contexts `(G, M, I)` with dual bit-row storage.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Set of object indices.
pub type ObjectSet = FixedBitSet;
/// Set of attribute indices.
pub type AttributeSet = FixedBitSet;

pub(crate) fn bitset(len: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    for i in items {
        set.insert(i);
    }
    set
}

pub(crate) fn full(len: usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    set.insert_range(..);
    set
}

/// A finite formal context. Immutable once built.
///
/// The incidence is kept twice: one bit row per object over the attributes,
/// and one per attribute over the objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttributeSet>,
    columns: Vec<ObjectSet>,
}

fn check_unique(names: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

impl FormalContext {
    /// Builds a context from names and the incident `(object, attribute)` index pairs.
    pub fn new<I>(objects: Vec<String>, attributes: Vec<String>, incidence: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let (n, m) = (objects.len(), attributes.len());
        let mut rows = vec![FixedBitSet::with_capacity(m); n];
        for (g, a) in incidence {
            if g >= n || a >= m {
                return Err(Error::Dimension(format!(
                    "pair ({g}, {a}) outside {n}x{m}"
                )));
            }
            rows[g].insert(a);
        }
        Self::from_rows(objects, attributes, rows)
    }

    /// Builds a context from one attribute bit row per object.
    pub fn from_rows(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<AttributeSet>,
    ) -> Result<Self> {
        check_unique(&objects)?;
        check_unique(&attributes)?;
        let (n, m) = (objects.len(), attributes.len());
        if rows.len() != n {
            return Err(Error::Dimension(format!("{} rows for {n} objects", rows.len())));
        }
        let mut columns = vec![FixedBitSet::with_capacity(n); m];
        for (g, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Dimension(format!(
                    "row {g} has width {}, expected {m}",
                    row.len()
                )));
            }
            for a in row.ones() {
                columns[a].insert(g);
            }
        }
        Ok(Self {
            objects,
            attributes,
            rows,
            columns,
        })
    }

    pub fn from_fn(
        objects: Vec<String>,
        attributes: Vec<String>,
        incident: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let m = attributes.len();
        let rows = (0..objects.len())
            .map(|g| bitset(m, (0..m).filter(|&a| incident(g, a))))
            .collect();
        Self::from_rows(objects, attributes, rows)
    }

    /// Builds a context from a cross table: one string per object, `X`/`x` for
    /// an incidence and `.` otherwise.
    pub fn from_table(objects: &[&str], attributes: &[&str], table: &[&str]) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let attributes: Vec<String> = attributes.iter().map(|s| s.to_string()).collect();
        if table.len() != objects.len() {
            return Err(Error::Dimension(format!(
                "{} table rows for {} objects",
                table.len(),
                objects.len()
            )));
        }
        let mut rows = Vec::with_capacity(table.len());
        for (g, line) in table.iter().enumerate() {
            let chars: Vec<char> = line.chars().collect();
            if chars.len() != attributes.len() {
                return Err(Error::Dimension(format!(
                    "table row {g} has width {}, expected {}",
                    chars.len(),
                    attributes.len()
                )));
            }
            rows.push(bitset(
                attributes.len(),
                chars
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| matches!(c, 'X' | 'x'))
                    .map(|(a, _)| a),
            ));
        }
        Self::from_rows(objects, attributes, rows)
    }

    pub fn empty() -> Self {
        Self {
            objects: Vec::new(),
            attributes: Vec::new(),
            rows: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// The attribute row `g'` of a single object.
    pub fn row(&self, g: usize) -> &AttributeSet {
        &self.rows[g]
    }

    /// The object column `m'` of a single attribute.
    pub fn column(&self, m: usize) -> &ObjectSet {
        &self.columns[m]
    }

    pub fn rows(&self) -> &[AttributeSet] {
        &self.rows
    }

    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        let mut set = FixedBitSet::with_capacity(self.n_objects());
        for n in names {
            set.insert(self.object_index(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let mut set = FixedBitSet::with_capacity(self.n_attributes());
        for n in names {
            set.insert(self.attribute_index(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &ObjectSet) -> Vec<String> {
        set.ones().map(|g| self.objects[g].clone()).collect()
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<String> {
        set.ones().map(|m| self.attributes[m].clone()).collect()
    }

    pub fn all_objects(&self) -> ObjectSet {
        full(self.n_objects())
    }

    pub fn all_attributes(&self) -> AttributeSet {
        full(self.n_attributes())
    }

    /// `A'`: the attributes shared by every object of `a`.
    pub fn derive_objects(&self, a: &ObjectSet) -> AttributeSet {
        let mut out = self.all_attributes();
        for g in a.ones() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B'`: the objects having every attribute of `b`.
    pub fn derive_attributes(&self, b: &AttributeSet) -> ObjectSet {
        let mut out = self.all_objects();
        for m in b.ones() {
            out.intersect_with(&self.columns[m]);
        }
        out
    }

    pub fn closure_objects(&self, a: &ObjectSet) -> ObjectSet {
        self.derive_attributes(&self.derive_objects(a))
    }

    pub fn closure_attributes(&self, b: &AttributeSet) -> AttributeSet {
        self.derive_objects(&self.derive_attributes(b))
    }

    pub fn is_extent(&self, a: &ObjectSet) -> bool {
        &self.closure_objects(a) == a
    }

    pub fn is_intent(&self, b: &AttributeSet) -> bool {
        &self.closure_attributes(b) == b
    }

    /// Same objects and attributes, different incidence.
    pub fn with_rows(&self, rows: Vec<AttributeSet>) -> Result<Self> {
        Self::from_rows(self.objects.clone(), self.attributes.clone(), rows)
    }

    /// The context induced on the given objects and attributes, re-indexed.
    pub fn restrict(&self, objects: &ObjectSet, attributes: &AttributeSet) -> Self {
        let attrs: Vec<usize> = attributes.ones().collect();
        let rows = objects
            .ones()
            .map(|g| {
                bitset(
                    attrs.len(),
                    attrs
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| self.incident(g, m))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Self::from_rows(
            self.object_names(objects),
            self.attribute_names(attributes),
            rows,
        )
        .expect("restriction of a valid context")
    }

    pub fn transpose(&self) -> Self {
        Self {
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.columns.clone(),
            columns: self.rows.clone(),
        }
    }

    /// Merges objects with equal rows and attributes with equal columns.
    /// The first occurrence is kept as representative.
    pub fn clarify(&self) -> Clarification {
        let object_classes = group_equal(&self.rows);
        let attribute_classes = group_equal(&self.columns);
        let objs = bitset(self.n_objects(), object_classes.iter().map(|c| c[0]));
        let attrs = bitset(self.n_attributes(), attribute_classes.iter().map(|c| c[0]));
        Clarification {
            context: self.restrict(&objs, &attrs),
            object_classes,
            attribute_classes,
        }
    }

    /// Removes reducible objects and attributes until none is left.
    ///
    /// An object is reducible when its row is the intersection of the rows
    /// strictly containing it (an empty intersection being all attributes).
    pub fn reduce(&self) -> Reduction {
        let mut objs = self.all_objects();
        let mut attrs = self.all_attributes();
        loop {
            let before = (objs.count_ones(..), attrs.count_ones(..));
            let rows: Vec<(usize, FixedBitSet)> = objs
                .ones()
                .map(|g| (g, masked(&self.rows[g], &attrs)))
                .collect();
            remove_reducible(&mut objs, &rows, &attrs);
            let cols: Vec<(usize, FixedBitSet)> = attrs
                .ones()
                .map(|m| (m, masked(&self.columns[m], &objs)))
                .collect();
            remove_reducible(&mut attrs, &cols, &objs);
            if before == (objs.count_ones(..), attrs.count_ones(..)) {
                break;
            }
        }
        Reduction {
            context: self.restrict(&objs, &attrs),
            objects: objs.ones().collect(),
            attributes: attrs.ones().collect(),
        }
    }

    pub fn is_reduced(&self) -> bool {
        let r = self.reduce();
        r.objects.len() == self.n_objects() && r.attributes.len() == self.n_attributes()
    }
}

fn masked(set: &FixedBitSet, mask: &FixedBitSet) -> FixedBitSet {
    let mut s = set.clone();
    s.intersect_with(mask);
    s
}

fn group_equal(sets: &[FixedBitSet]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<&FixedBitSet, usize> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        match index.get(s) {
            Some(&c) => classes[c].push(i),
            None => {
                index.insert(s, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    classes
}

/// Drops duplicate rows (keeping the first) and then every row that is the
/// intersection of the strictly larger ones.
fn remove_reducible(alive: &mut FixedBitSet, rows: &[(usize, FixedBitSet)], universe: &FixedBitSet) {
    let mut seen: HashSet<&FixedBitSet> = HashSet::new();
    let mut kept: Vec<&(usize, FixedBitSet)> = Vec::new();
    for r in rows {
        if seen.insert(&r.1) {
            kept.push(r);
        } else {
            alive.remove(r.0);
        }
    }
    for (i, row) in kept.iter().map(|r| (r.0, &r.1)) {
        let mut meet = universe.clone();
        for (_, other) in kept.iter().map(|r| (r.0, &r.1)) {
            if row.is_subset(other) && row != other {
                meet.intersect_with(other);
            }
        }
        if &meet == row {
            alive.remove(i);
        }
    }
}

/// Result of [`FormalContext::clarify`]; classes list original indices,
/// representative first.
#[derive(Debug, Clone)]
pub struct Clarification {
    pub context: FormalContext,
    pub object_classes: Vec<Vec<usize>>,
    pub attribute_classes: Vec<Vec<usize>>,
}

/// Result of [`FormalContext::reduce`]; `objects` and `attributes` are the
/// surviving original indices in order.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub context: FormalContext,
    pub objects: Vec<usize>,
    pub attributes: Vec<usize>,
}

/// A subcontext `[H, N]` of some parent context, given by its two index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcontext {
    pub objects: ObjectSet,
    pub attributes: AttributeSet,
}

impl Subcontext {
    pub fn new(objects: ObjectSet, attributes: AttributeSet) -> Self {
        Self {
            objects,
            attributes,
        }
    }

    pub fn empty(parent: &FormalContext) -> Self {
        Self::new(
            FixedBitSet::with_capacity(parent.n_objects()),
            FixedBitSet::with_capacity(parent.n_attributes()),
        )
    }

    pub fn whole(parent: &FormalContext) -> Self {
        Self::new(parent.all_objects(), parent.all_attributes())
    }

    /// The induced context `(H, N, I ∩ H×N)`.
    pub fn induced(&self, parent: &FormalContext) -> FormalContext {
        parent.restrict(&self.objects, &self.attributes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> FormalContext {
        FormalContext::from_table(
            &["1", "2", "3"],
            &["a", "b", "c"],
            &["XX.", "X.X", "XX."],
        )
        .unwrap()
    }

    #[test]
    fn derivations_and_conventions() {
        let ctx = sample();
        let empty = FixedBitSet::with_capacity(3);
        assert_eq!(ctx.derive_objects(&empty), ctx.all_attributes());
        assert_eq!(ctx.derive_attributes(&empty), ctx.all_objects());
        let a = ctx.object_set(&["1", "2"]).unwrap();
        assert_eq!(ctx.attribute_names(&ctx.derive_objects(&a)), vec!["a"]);
    }

    #[test]
    fn unknown_names_are_errors() {
        let ctx = sample();
        assert_eq!(
            ctx.object_set(&["9"]),
            Err(Error::UnknownObject("9".into()))
        );
        assert!(matches!(
            ctx.attribute_set(&["z"]),
            Err(Error::UnknownAttribute(_))
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = FormalContext::from_table(&["1", "1"], &["a"], &["X", "."]);
        assert_eq!(r, Err(Error::DuplicateName("1".into())));
    }

    #[test]
    fn clarify_merges_equal_rows() {
        let c = sample().clarify();
        assert_eq!(c.context.n_objects(), 2);
        assert_eq!(c.object_classes[0], vec![0, 2]);
        assert_eq!(c.attribute_classes.len(), 3);
    }

    #[test]
    fn clarify_empty() {
        let c = FormalContext::empty().clarify();
        assert_eq!(c.context, FormalContext::empty());
    }

    #[test]
    fn one_by_one_full_reduces_away() {
        let ctx = FormalContext::from_table(&["g"], &["m"], &["X"]).unwrap();
        let r = ctx.reduce();
        assert_eq!(r.context.n_objects(), 0);
        assert_eq!(r.context.n_attributes(), 0);
    }

    #[test]
    fn transpose_swaps_roles() {
        let ctx = sample();
        let t = ctx.transpose();
        assert_eq!(t.objects(), ctx.attributes());
        assert!(t.incident(2, 1));
        assert_eq!(t.row(0), ctx.column(0));
    }
}
