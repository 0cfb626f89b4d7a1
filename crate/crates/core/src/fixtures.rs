//! Small worked examples used by tests, the acceptance target and the CLI.
//!
//! Diagram orders use labels `"1"..="n"`; covers are given as 1-based
//! `(lower, upper)` pairs.

use crate::context::FormalContext;
use crate::poset::{Interval, Poset};
use crate::spec::IntervalSpec;

fn diagram(n: usize, covers: &[(usize, usize)]) -> Poset {
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Poset::from_covers(labels, &covers).expect("fixture diagram is a partial order")
}

/// Index of the element carrying `label`.
pub fn element(p: &Poset, label: &str) -> usize {
    p.labels()
        .iter()
        .position(|l| l == label)
        .unwrap_or_else(|| panic!("no element labelled {label}"))
}

/// The interval between two labelled elements.
pub fn labelled_interval(p: &Poset, bottom: &str, top: &str) -> Interval {
    p.validate_interval(Interval::new(element(p, bottom), element(p, top)))
        .expect("fixture interval")
}

/// The 8×5 running context with 15 concepts.
pub fn running_context() -> FormalContext {
    FormalContext::from_table(
        &["1", "2", "3", "4", "5", "6", "7", "8"],
        &["a", "b", "c", "d", "e"],
        &[
            "XX...", //
            "X.X..", //
            ".XXXX", //
            "XXX..", //
            ".X.XX", //
            "..XXX", //
            "...X.", //
            "....X",
        ],
    )
    .expect("fixture")
}

/// Hand-drawn diagram of the running lattice.
pub fn running_diagram() -> Poset {
    diagram(
        15,
        &[
            (1, 2),
            (1, 3),
            (2, 4),
            (3, 4),
            (2, 8),
            (2, 12),
            (3, 9),
            (3, 13),
            (4, 5),
            (4, 6),
            (8, 5),
            (8, 10),
            (9, 6),
            (9, 11),
            (12, 6),
            (12, 10),
            (13, 5),
            (13, 11),
            (10, 7),
            (5, 7),
            (6, 7),
            (11, 14),
            (11, 15),
            (14, 7),
            (15, 7),
        ],
    )
}

/// From the object concept of 4 up to the top concept.
pub fn running_s1() -> IntervalSpec {
    "ext={4}:ext={1,2,3,4,5,6,7,8}".parse().expect("fixture")
}

/// From the object concept of 3 up to the attribute concept of e.
pub fn running_s2() -> IntervalSpec {
    "ext={3}:int={e}".parse().expect("fixture")
}

/// Hand-drawn diagram of the running lattice with `running_s1` imploded.
pub fn running_s1_factor_diagram() -> Poset {
    diagram(
        8,
        &[
            (1, 2),
            (2, 4),
            (2, 6),
            (4, 5),
            (6, 5),
            (5, 7),
            (5, 8),
            (7, 3),
            (8, 3),
        ],
    )
}

/// Block relation produced by `running_s2`: rows 1, 2 and 4 become full and
/// every other row becomes `{b,c,d,e}`.
pub fn running_s2_block_relation() -> FormalContext {
    FormalContext::from_table(
        &["1", "2", "3", "4", "5", "6", "7", "8"],
        &["a", "b", "c", "d", "e"],
        &[
            "XXXXX", //
            "XXXXX", //
            ".XXXX", //
            "XXXXX", //
            ".XXXX", //
            ".XXXX", //
            ".XXXX", //
            ".XXXX",
        ],
    )
    .expect("fixture")
}

const GENERIC_OBJECTS: [&str; 15] = [
    "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15",
];
const GENERIC_ATTRIBUTES: [&str; 15] = [
    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o",
];

// `x` is an incidence of the generic context, `B` one added by enrichment.
const GENERIC_TABLE: [&str; 15] = [
    "xxB...B.BxB..x.",
    "xBx...B.Bxx..B.",
    "Bxxxx.BxxxBxxBx",
    "xxx...x.xxx..x.",
    "BxBxx.B.BxBxxB.",
    "BBxxx.B.BxB.xBx",
    "BBBx..B.BxB..B.",
    "BBB.x.B.BxB..B.",
    "xxxxxxxxxxxxxxx",
    "Bxx...B.xxB..B.",
    "BBx...B.BxB..B.",
    "BxB...B.BxB..B.",
    "BBB...B.BxB..B.",
    "xBB...B.BxB..B.",
    "BBBxx.B.BxB.xB.",
];

fn generic_table(keep_enriched: bool) -> FormalContext {
    let rows: Vec<String> = GENERIC_TABLE
        .iter()
        .map(|r| {
            r.chars()
                .map(|c| match c {
                    'x' => 'X',
                    'B' if keep_enriched => 'X',
                    _ => '.',
                })
                .collect()
        })
        .collect();
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    FormalContext::from_table(&GENERIC_OBJECTS, &GENERIC_ATTRIBUTES, &rows).expect("fixture")
}

/// A 15×15 generic context of the running lattice with its own labelling.
pub fn running_generic_context() -> FormalContext {
    generic_table(false)
}

/// `running_generic_context` enriched by `running_generic_s1`.
pub fn running_generic_enriched() -> FormalContext {
    generic_table(true)
}

/// The interval `running_s1` named in the generic labelling:
/// from the object concept of 4 to the object concept of 13.
pub fn running_generic_s1() -> IntervalSpec {
    "ext={4}:ext={13}".parse().expect("fixture")
}

/// The eight-element Boolean lattice: bottom 1, atoms 2-4, coatoms 5-7,
/// top 8.
pub fn cube() -> Poset {
    diagram(
        8,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 5),
            (2, 6),
            (3, 5),
            (3, 7),
            (4, 6),
            (4, 7),
            (5, 8),
            (6, 8),
            (7, 8),
        ],
    )
}

/// A two-element interval of the cube lying on a crown of order 3.
pub fn cube_nested_interval(p: &Poset) -> Interval {
    labelled_interval(p, "2", "5")
}

/// A four-element interval of the cube whose implosion keeps a lattice.
pub fn cube_pure_interval(p: &Poset) -> Interval {
    labelled_interval(p, "1", "5")
}

/// Three two-element intervals of the cube forming a cycle of order 3.
pub fn cube_penrose_triple(p: &Poset) -> Vec<Interval> {
    vec![
        labelled_interval(p, "2", "5"),
        labelled_interval(p, "4", "6"),
        labelled_interval(p, "3", "7"),
    ]
}

/// The seven-element ordered set obtained by imploding the nested interval.
pub fn cube_nested_factor_diagram() -> Poset {
    diagram(
        7,
        &[
            (1, 2),
            (1, 3),
            (2, 5),
            (3, 5),
            (3, 4),
            (4, 6),
            (5, 6),
            (2, 7),
            (7, 4),
        ],
    )
}

/// The product of a 3-chain and a 5-chain, bottom 3 and top 13.
pub fn grid() -> Poset {
    diagram(
        15,
        &[
            (3, 2),
            (2, 1),
            (3, 6),
            (1, 4),
            (2, 5),
            (6, 5),
            (6, 9),
            (4, 7),
            (5, 4),
            (5, 8),
            (9, 8),
            (9, 12),
            (7, 10),
            (8, 7),
            (8, 11),
            (12, 11),
            (12, 15),
            (10, 13),
            (11, 10),
            (11, 14),
            (15, 14),
            (14, 13),
        ],
    )
}

/// Two disjoint two-element intervals of the grid.
pub fn grid_intervals(p: &Poset) -> Vec<Interval> {
    vec![labelled_interval(p, "5", "4"), labelled_interval(p, "12", "11")]
}

/// Hand-drawn diagram of the grid with both intervals imploded.
pub fn grid_factor_diagram() -> Poset {
    diagram(
        13,
        &[
            (3, 2),
            (2, 1),
            (3, 5),
            (1, 4),
            (5, 4),
            (4, 7),
            (5, 8),
            (8, 7),
            (7, 6),
            (6, 9),
            (7, 10),
            (10, 9),
            (9, 11),
            (10, 13),
            (13, 12),
            (12, 11),
        ],
    )
}

/// Twelve elements in six two-element chains, each chain's bottom below the
/// next chain's top.
pub fn six_cycle_poset() -> Poset {
    diagram(
        12,
        &[
            (1, 4),
            (2, 5),
            (3, 6),
            (7, 8),
            (9, 10),
            (11, 12),
            (1, 5),
            (2, 6),
            (3, 8),
            (7, 10),
            (9, 12),
            (11, 4),
        ],
    )
}

pub fn six_cycle_intervals(p: &Poset) -> Vec<Interval> {
    [("1", "4"), ("2", "5"), ("3", "6"), ("7", "8"), ("9", "10"), ("11", "12")]
        .iter()
        .map(|&(a, b)| labelled_interval(p, a, b))
        .collect()
}

/// Bottom 1, four atoms, four coatoms arranged in a cycle, top 10.
pub fn four_cycle_lattice() -> Poset {
    let mut covers = vec![
        (2, 6),
        (2, 7),
        (3, 7),
        (3, 8),
        (4, 8),
        (4, 9),
        (5, 9),
        (5, 6),
    ];
    covers.extend((2..=5).map(|a| (1, a)));
    covers.extend((6..=9).map(|c| (c, 10)));
    diagram(10, &covers)
}

/// Two pure intervals of `four_cycle_lattice` that do not compose.
pub fn four_cycle_intervals(p: &Poset) -> Vec<Interval> {
    vec![labelled_interval(p, "4", "8"), labelled_interval(p, "3", "7")]
}

/// Bottom 12, atoms 6-10, coatoms 1-5 in a cycle, top 11.
pub fn five_cycle_lattice() -> Poset {
    let mut covers = vec![
        (6, 1),
        (6, 2),
        (7, 2),
        (7, 3),
        (8, 3),
        (8, 4),
        (9, 4),
        (9, 5),
        (10, 5),
        (10, 1),
    ];
    covers.extend((6..=10).map(|a| (12, a)));
    covers.extend((1..=5).map(|c| (c, 11)));
    diagram(12, &covers)
}

/// The generic context of `five_cycle_lattice`, labelled like the elements.
pub fn five_cycle_context() -> FormalContext {
    five_cycle_lattice().order_context()
}

pub fn five_cycle_s1() -> IntervalSpec {
    "ext={8}:ext={3}".parse().expect("fixture")
}

pub fn five_cycle_s2() -> IntervalSpec {
    "ext={7}:ext={2}".parse().expect("fixture")
}

/// Incidences that iterated enrichment adds beyond simultaneous enrichment,
/// as `(object, attribute)` labels.
pub const FIVE_CYCLE_ITERATION_DELTA: [(&str, &str); 4] =
    [("2", "4"), ("2", "8"), ("6", "4"), ("6", "8")];

/// Every order fixture with its name.
pub fn all_orders() -> Vec<(&'static str, Poset)> {
    vec![
        ("running", crate::lattice::ConceptLattice::new(running_context()).order().clone()),
        ("running-diagram", running_diagram()),
        ("running-s1-factor", running_s1_factor_diagram()),
        ("cube", cube()),
        ("cube-nested-factor", cube_nested_factor_diagram()),
        ("grid", grid()),
        ("grid-factor", grid_factor_diagram()),
        ("six-cycle", six_cycle_poset()),
        ("four-cycle", four_cycle_lattice()),
        ("five-cycle", five_cycle_lattice()),
    ]
}

/// Every lattice fixture as a context.
pub fn all_contexts() -> Vec<(&'static str, FormalContext)> {
    vec![
        ("running", running_context()),
        ("running-generic", running_generic_context()),
        ("cube", cube().order_context()),
        ("grid", grid().order_context()),
        ("four-cycle", four_cycle_lattice().order_context()),
        ("five-cycle", five_cycle_context()),
    ]
}
