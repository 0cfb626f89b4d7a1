//! Exhaustive searches: order isomorphisms, crowns and Boolean subcontexts.

use crate::context::{bitset, FormalContext, Subcontext};
use crate::poset::Poset;

fn signatures(p: &Poset) -> Vec<(usize, usize, usize)> {
    let h = p.heights();
    (0..p.len())
        .map(|i| (h[i], p.upper_covers(i).len(), p.lower_covers(i).len()))
        .collect()
}

/// An order isomorphism `a -> b` as an index map, if one exists.
pub fn isomorphism(a: &Poset, b: &Poset) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.comparable_pairs() != b.comparable_pairs() {
        return None;
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let (mut xa, mut xb) = (sa.clone(), sb.clone());
    xa.sort_unstable();
    xb.sort_unstable();
    if xa != xb {
        return None;
    }
    let order = a.linear_extension();
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[usize],
        a: &Poset,
        b: &Poset,
        sa: &[(usize, usize, usize)],
        sb: &[(usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(k) else {
            return true;
        };
        for y in 0..b.len() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            let consistent = order[..k].iter().all(|&p| {
                let q = map[p];
                a.leq(p, x) == b.leq(q, y) && a.leq(x, p) == b.leq(y, q)
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(k + 1, order, a, b, sa, sb, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }
    go(0, &order, a, b, &sa, &sb, &mut map, &mut used).then_some(map)
}

pub fn isomorphic(a: &Poset, b: &Poset) -> bool {
    isomorphism(a, b).is_some()
}

/// A crown of order `k`: `lower[i] < upper[i]`, `lower[i] < upper[i+1]`
/// (indices mod `k`), and no further comparabilities among the `2k` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crown {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl Crown {
    pub fn order(&self) -> usize {
        self.lower.len()
    }

    /// Checks distinctness and the exact comparability pattern in `p`.
    pub fn is_valid_in(&self, p: &Poset) -> bool {
        let k = self.order();
        if k < 2 || self.upper.len() != k {
            return false;
        }
        let all: Vec<usize> = self.lower.iter().chain(&self.upper).copied().collect();
        for (i, &x) in all.iter().enumerate() {
            if x >= p.len() || all[..i].contains(&x) {
                return false;
            }
        }
        for i in 0..k {
            for j in 0..k {
                if i != j
                    && (p.comparable(self.lower[i], self.lower[j])
                        || p.comparable(self.upper[i], self.upper[j]))
                {
                    return false;
                }
                let (x, y) = (self.lower[i], self.upper[j]);
                let required = j == i || j == (i + 1) % k;
                if p.leq(y, x) || p.leq(x, y) != required {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Lower(usize),
    Upper(usize),
}

fn slot_ok(p: &Poset, k: usize, slots: &[Slot], assigned: &[usize], s: Slot, e: usize) -> bool {
    slots[..assigned.len()]
        .iter()
        .zip(assigned)
        .all(|(&t, &f)| {
            if f == e {
                return false;
            }
            match (s, t) {
                (Slot::Lower(_), Slot::Lower(_)) | (Slot::Upper(_), Slot::Upper(_)) => {
                    !p.comparable(e, f)
                }
                (Slot::Lower(i), Slot::Upper(j)) => {
                    !p.leq(f, e) && p.leq(e, f) == (j == i || j == (i + 1) % k)
                }
                (Slot::Upper(j), Slot::Lower(i)) => {
                    !p.leq(e, f) && p.leq(f, e) == (j == i || j == (i + 1) % k)
                }
            }
        })
}

fn crown_search(p: &Poset, k: usize, pinned: Option<(usize, usize)>) -> Option<Crown> {
    if k < 2 || 2 * k > p.len() {
        return None;
    }
    // Walk around the crown: x0, y0, x_{k-1}, y_{k-1}, ..., x1, y1.
    let mut slots = vec![Slot::Lower(0), Slot::Upper(0)];
    for i in (1..k).rev() {
        slots.push(Slot::Lower(i));
        slots.push(Slot::Upper(i));
    }
    let mut assigned: Vec<usize> = Vec::with_capacity(2 * k);
    fn go(
        p: &Poset,
        k: usize,
        slots: &[Slot],
        assigned: &mut Vec<usize>,
        pinned: Option<(usize, usize)>,
    ) -> bool {
        let depth = assigned.len();
        let Some(&s) = slots.get(depth) else {
            return true;
        };
        let candidates: Vec<usize> = match (depth, pinned) {
            (0, Some((x, _))) => vec![x],
            (1, Some((_, y))) => vec![y],
            _ => (0..p.len()).collect(),
        };
        for e in candidates {
            // Symmetry breaking: x0 carries the smallest lower index.
            if pinned.is_none() && matches!(s, Slot::Lower(i) if i > 0) && e < assigned[0] {
                continue;
            }
            if !slot_ok(p, k, slots, assigned, s, e) {
                continue;
            }
            assigned.push(e);
            if go(p, k, slots, assigned, pinned) {
                return true;
            }
            assigned.pop();
        }
        false
    }
    if !go(p, k, &slots, &mut assigned, pinned) {
        return None;
    }
    let mut lower = vec![0; k];
    let mut upper = vec![0; k];
    for (s, e) in slots.iter().zip(&assigned) {
        match *s {
            Slot::Lower(i) => lower[i] = e.to_owned(),
            Slot::Upper(i) => upper[i] = e.to_owned(),
        }
    }
    Some(Crown { lower, upper })
}

/// First crown of order `k` in the deterministic search order, if any.
pub fn find_crown(p: &Poset, k: usize) -> Option<Crown> {
    if k < 3 {
        return None;
    }
    crown_search(p, k, None)
}

/// A crown of order `k` whose `lower[0]` is `x` and `upper[0]` is `y`.
pub fn find_crown_through(p: &Poset, x: usize, y: usize, k: usize) -> Option<Crown> {
    if x >= p.len() || y >= p.len() || !p.lt(x, y) {
        return None;
    }
    crown_search(p, k, Some((x, y)))
}

/// `k` objects and `k` attributes with `(objects[i], attributes[j])` incident
/// iff `i != j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanSubcontext {
    pub objects: Vec<usize>,
    pub attributes: Vec<usize>,
}

impl BooleanSubcontext {
    pub fn subcontext(&self, ctx: &FormalContext) -> Subcontext {
        Subcontext::new(
            bitset(ctx.n_objects(), self.objects.iter().copied()),
            bitset(ctx.n_attributes(), self.attributes.iter().copied()),
        )
    }

    pub fn is_valid_in(&self, ctx: &FormalContext) -> bool {
        let k = self.objects.len();
        self.attributes.len() == k
            && (0..k).all(|i| {
                (0..k).all(|j| ctx.incident(self.objects[i], self.attributes[j]) == (i != j))
            })
    }
}

pub fn find_boolean_subcontext(ctx: &FormalContext, k: usize) -> Option<BooleanSubcontext> {
    find_boolean_subcontext_with(ctx, k, None, None)
}

/// As [`find_boolean_subcontext`], requiring the given object and/or
/// attribute to take part.
pub fn find_boolean_subcontext_with(
    ctx: &FormalContext,
    k: usize,
    object: Option<usize>,
    attribute: Option<usize>,
) -> Option<BooleanSubcontext> {
    if k == 0 || k > ctx.n_objects() || k > ctx.n_attributes() {
        return None;
    }
    let mut objs = Vec::with_capacity(k);
    let mut attrs = Vec::with_capacity(k);
    fn go(
        ctx: &FormalContext,
        k: usize,
        object: Option<usize>,
        attribute: Option<usize>,
        objs: &mut Vec<usize>,
        attrs: &mut Vec<usize>,
    ) -> bool {
        if objs.len() == k {
            return object.is_none_or(|g| objs.contains(&g))
                && attribute.is_none_or(|m| attrs.contains(&m));
        }
        let start = objs.last().map_or(0, |&g| g + 1);
        for g in start..ctx.n_objects() {
            if let Some(p) = object {
                if !objs.contains(&p) && g > p {
                    break;
                }
            }
            if !attrs.iter().all(|&m| ctx.incident(g, m)) {
                continue;
            }
            for m in 0..ctx.n_attributes() {
                if ctx.incident(g, m) || !objs.iter().all(|&h| ctx.incident(h, m)) {
                    continue;
                }
                objs.push(g);
                attrs.push(m);
                if go(ctx, k, object, attribute, objs, attrs) {
                    return true;
                }
                objs.pop();
                attrs.pop();
            }
        }
        false
    }
    let found = go(ctx, k, object, attribute, &mut objs, &mut attrs);
    found.then_some(BooleanSubcontext {
        objects: objs,
        attributes: attrs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers_unlabeled(n, &covers).unwrap()
    }

    fn cube() -> Poset {
        Poset::from_relation((0..8).map(|i| i.to_string()).collect(), |a, b| a & b == a)
            .unwrap()
    }

    #[test]
    fn iso_permuted_labels() {
        let a = Poset::from_covers_unlabeled(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let b = Poset::from_covers_unlabeled(4, &[(3, 2), (3, 0), (2, 1), (0, 1)]).unwrap();
        let f = isomorphism(&a, &b).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.leq(i, j), b.leq(f[i], f[j]));
            }
        }
        assert!(!isomorphic(&chain(2), &a));
        assert!(!isomorphic(&chain(4), &a));
    }

    #[test]
    fn chains_have_no_crowns() {
        for k in 3..6 {
            assert!(find_crown(&chain(12), k).is_none());
        }
    }

    #[test]
    fn cube_has_three_crown() {
        let p = cube();
        let c = find_crown(&p, 3).unwrap();
        assert!(c.is_valid_in(&p));
        assert!(find_crown(&p, 4).is_none());
        assert!(find_crown_through(&p, 1, 3, 3).is_some());
        assert!(find_crown_through(&p, 0, 7, 3).is_none());
    }

    #[test]
    fn contranominal_is_found() {
        let names: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        let ctx = FormalContext::from_fn(names.clone(), names.clone(), |g, m| g != m).unwrap();
        let b = find_boolean_subcontext(&ctx, 3).unwrap();
        assert!(b.is_valid_in(&ctx));
        let full = FormalContext::from_fn(names.clone(), names, |_, _| true).unwrap();
        assert!(find_boolean_subcontext(&full, 3).is_none());
        assert!(find_boolean_subcontext(&full, 1).is_none());
    }
}
