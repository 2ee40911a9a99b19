//! Exhaustive enumeration of deck-equivalence classes of subtrees with a
//! prescribed number of sources and sinks.
//!
//! Every class with at least one sink has a representative containing the
//! base vertex (deck transformations act transitively on sinks), so it
//! suffices to grow connected vertex sets from the base. The growth uses
//! ordered extension: candidates are consumed left to right, and skipping a
//! candidate bans it for the rest of that branch, so each vertex set is
//! produced exactly once. Classes are then deduplicated by canonical code.

use super::{check_cover_arrows, CanonicalCode, Color, LabeledSubtree, Word};
use crate::error::{Error, Result};
use crate::root_system::ArrowCount;
use std::collections::BTreeMap;

/// Default cap on x + y; enumeration cost grows quickly past it.
pub const DEFAULT_BUDGET: i64 = 12;

/// One representative per deck-equivalence class of connected subtrees with
/// exactly x sources and y sinks, sorted by canonical code. Dimensions with
/// no subtree give an empty list; totals beyond the budget are an error.
pub fn enumerate_subtrees(
    n: ArrowCount,
    x: i64,
    y: i64,
    budget: i64,
) -> Result<Vec<LabeledSubtree>> {
    check_cover_arrows(n)?;
    if x < 0 || y < 0 || (x == 0 && y == 0) {
        return Ok(Vec::new());
    }
    let total = x as i128 + y as i128;
    if total > budget as i128 {
        return Err(Error::BudgetExceeded {
            requested: total as i64,
            budget,
        });
    }
    if y == 0 {
        // No sink at all: the only connected possibility is a lone source.
        return Ok(if x == 1 {
            vec![LabeledSubtree::from_vertices(n, [Word::base().step(1)])?]
        } else {
            Vec::new()
        });
    }

    let mut found: BTreeMap<CanonicalCode, LabeledSubtree> = BTreeMap::new();
    let base = Word::base();
    let ext: Vec<Word> = base.neighbors(n);
    let mut cur = vec![base];
    grow(n, x, y, &mut cur, 0, 1, &ext, &mut found);
    Ok(found.into_values().collect())
}

fn grow(
    n: ArrowCount,
    x: i64,
    y: i64,
    cur: &mut Vec<Word>,
    sources: i64,
    sinks: i64,
    ext: &[Word],
    found: &mut BTreeMap<CanonicalCode, LabeledSubtree>,
) {
    if sources == x && sinks == y {
        let t = LabeledSubtree::from_vertices(n, cur.iter().cloned())
            .expect("grown sets are connected");
        found.entry(t.canonical_code()).or_insert(t);
        return;
    }
    for i in 0..ext.len() {
        let v = &ext[i];
        let is_source = v.color() == Color::Source;
        if (is_source && sources >= x) || (!is_source && sinks >= y) {
            continue;
        }
        // A new neighbor can never equal an existing candidate: that would
        // close a cycle in the cover, which is a tree.
        let mut next_ext: Vec<Word> = ext[i + 1..].to_vec();
        for nb in v.neighbors(n) {
            if !cur.contains(&nb) {
                next_ext.push(nb);
            }
        }
        cur.push(v.clone());
        grow(
            n,
            x,
            y,
            cur,
            sources + i64::from(is_source),
            sinks + i64::from(!is_source),
            &next_ext,
            found,
        );
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::construct_for_root;
    use crate::root_system::{cover_thin_exists, ArrowCount, DimVector};

    fn a(n: u32) -> ArrowCount {
        ArrowCount::new(n).unwrap()
    }

    fn count(n: u32, x: i64, y: i64) -> usize {
        enumerate_subtrees(a(n), x, y, DEFAULT_BUDGET).unwrap().len()
    }

    #[test]
    fn single_edge_classes_count_the_labels() {
        assert_eq!(count(3, 1, 1), 3);
        assert_eq!(count(2, 1, 1), 2);
        assert_eq!(count(5, 1, 1), 5);
    }

    #[test]
    fn star_classes_count_label_subsets() {
        // A source with y sinks carries an unordered y-subset of the labels.
        assert_eq!(count(3, 1, 2), 3);
        assert_eq!(count(3, 1, 3), 1);
        assert_eq!(count(4, 1, 2), 6);
        assert_eq!(count(4, 1, 3), 4);
        assert_eq!(count(2, 1, 2), 1);
    }

    #[test]
    fn two_arrow_zigzags_come_in_exactly_two_classes() {
        // With two labels a path's labeling is forced once its first edge
        // label is chosen.
        for m in 1..=5 {
            assert_eq!(count(2, m, m), 2);
        }
    }

    #[test]
    fn lone_vertices() {
        assert_eq!(count(3, 0, 1), 1);
        assert_eq!(count(3, 1, 0), 1);
        assert_eq!(count(3, 0, 2), 0);
        assert_eq!(count(3, 2, 0), 0);
        assert_eq!(count(3, 0, 0), 0);
        assert_eq!(count(3, -1, 2), 0);
    }

    #[test]
    fn derived_counts_for_small_dimensions() {
        // (2, 2) at n = 3: the only shape is the 4-path k-s-k-s with labels
        // (a, b, c), a != b != c; no color-preserving symmetry, so
        // 3 * 2 * 2 = 12 classes.
        assert_eq!(count(3, 2, 2), 12);
        // (2, 3) at n = 3: 5-paths give label sequences (a, b, c, d) with
        // adjacent entries distinct, 24 of them, identified in pairs by the
        // end-to-end flip (no fixed points since b = c is forbidden): 12.
        // The T shape (one source with all three labels, a second source on
        // one of its sinks) gives 3 * 2 = 6 more.
        assert_eq!(count(3, 2, 3), 18);
        // Same analysis at n = 2: paths only, alternation forced, one class
        // up to the flip.
        assert_eq!(count(2, 2, 3), 1);
    }

    #[test]
    fn results_are_valid_deduplicated_and_sorted() {
        for arrows in [2u32, 3] {
            for x in 0..=4i64 {
                for y in 0..=4i64 {
                    let list = enumerate_subtrees(a(arrows), x, y, DEFAULT_BUDGET).unwrap();
                    let mut prev = None;
                    for t in &list {
                        assert!(t.validate().is_ok());
                        assert_eq!(t.dim(), DimVector::new(x, y));
                        let code = t.canonical_code();
                        if let Some(p) = prev {
                            assert!(p < code, "codes out of order");
                        }
                        prev = Some(code);
                    }
                }
            }
        }
    }

    #[test]
    fn nonempty_exactly_on_the_cover_thin_region() {
        for arrows in [2u32, 3] {
            for x in 0..=5i64 {
                for y in 0..=(7 - x) {
                    let some = count(arrows, x, y) > 0;
                    let v = DimVector::new(x, y);
                    assert_eq!(
                        some,
                        cover_thin_exists(a(arrows), v),
                        "n={arrows} ({x},{y})"
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_constructions_appear_among_the_classes() {
        for arrows in [2u32, 3] {
            for x in 0..=4i64 {
                for y in 0..=(7 - x) {
                    let v = DimVector::new(x, y);
                    if !cover_thin_exists(a(arrows), v) {
                        continue;
                    }
                    let t = construct_for_root(a(arrows), v, None).unwrap();
                    let list = enumerate_subtrees(a(arrows), x, y, DEFAULT_BUDGET).unwrap();
                    assert!(
                        list.iter().any(|u| u.canonical_code() == t.canonical_code()),
                        "n={arrows} ({x},{y})"
                    );
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_subtrees(a(3), 3, 4, 6),
            Err(Error::BudgetExceeded { requested: 7, budget: 6 })
        ));
        assert!(enumerate_subtrees(a(3), 3, 4, 7).is_ok());
    }
}
