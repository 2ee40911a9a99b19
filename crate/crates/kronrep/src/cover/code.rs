//! Canonical form for labeled subtrees up to deck transformation.
//!
//! Deck transformations preserve colors and edge labels and are free on
//! vertices, so two subtrees are deck-equivalent exactly when they are
//! isomorphic as colored trees with edge labels. Such an isomorphism must
//! map centers to centers, and around any vertex the edge labels are
//! pairwise distinct; rooting at the center and listing children by label
//! therefore yields a complete invariant.

use super::{Color, LabeledSubtree, Word};
use std::collections::HashMap;
use std::fmt;

const OPEN: u8 = b'(';
const CLOSE: u8 = b')';

/// Complete invariant of the deck-equivalence class of a subtree, as a byte
/// string; compares and sorts byte-lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "code:{}", self.to_hex())
    }
}

struct Indexed {
    colors: Vec<Color>,
    // Neighbors with connecting labels, sorted by label.
    adj: Vec<Vec<(u8, usize)>>,
}

fn index_tree(t: &LabeledSubtree) -> Indexed {
    let words: Vec<&Word> = t.vertices().collect();
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let colors = words.iter().map(|w| w.color()).collect();
    let mut adj = vec![Vec::new(); words.len()];
    for (i, w) in words.iter().enumerate() {
        if let Some((p, l)) = w.parent() {
            if let Some(&j) = index.get(&p) {
                adj[i].push((l, j));
                adj[j].push((l, i));
            }
        }
    }
    for list in &mut adj {
        list.sort();
    }
    Indexed { colors, adj }
}

/// The one or two middle vertices of the tree, found by peeling leaf layers
/// until at most two vertices remain.
fn centers(adj: &[Vec<(u8, usize)>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            removed[leaf] = true;
            for &(_, u) in &adj[leaf] {
                if !removed[u] {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

fn rooted_code(ix: &Indexed, v: usize, parent: Option<usize>, out: &mut Vec<u8>) {
    out.push(OPEN);
    out.push(match ix.colors[v] {
        Color::Sink => 0x00,
        Color::Source => 0x01,
    });
    for &(label, child) in &ix.adj[v] {
        if Some(child) != parent {
            // Labels sit in 0x81..=0xFF, clear of the structural bytes.
            out.push(0x80 | label);
            rooted_code(ix, child, Some(v), out);
        }
    }
    out.push(CLOSE);
}

pub(super) fn canonical_code(t: &LabeledSubtree) -> CanonicalCode {
    let ix = index_tree(t);
    let mut best: Option<Vec<u8>> = None;
    for c in centers(&ix.adj) {
        let mut buf = Vec::new();
        rooted_code(&ix, c, None, &mut buf);
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf);
        }
    }
    CanonicalCode(best.expect("subtree is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::super::{
        enumerate_subtrees, overlap_alignments, DeckAlignment, LabelPermutation, LabeledSubtree,
        Word,
    };
    use crate::root_system::ArrowCount;

    fn a3() -> ArrowCount {
        ArrowCount::new(3).unwrap()
    }

    /// Path sink-source-sink-source from the base with edge labels a, b, c.
    fn path4(labels: [u8; 3]) -> LabeledSubtree {
        let mut vertices = vec![Word::base()];
        for l in labels {
            vertices.push(vertices.last().unwrap().step(l));
        }
        LabeledSubtree::from_vertices(a3(), vertices).unwrap()
    }

    /// Independent equivalence check: try every deck transformation that
    /// matches a fixed vertex of one tree to a vertex of the other and
    /// compare vertex sets directly.
    fn deck_equivalent(s: &LabeledSubtree, t: &LabeledSubtree) -> bool {
        let probe = t.vertices().next().unwrap();
        s.vertices().any(|v| {
            DeckAlignment::mapping(probe, v)
                .map(|g| &t.translate(&g) == s)
                .unwrap_or(false)
        })
    }

    #[test]
    fn single_vertices_have_distinct_codes() {
        let sink = LabeledSubtree::from_vertices(a3(), [Word::base()]).unwrap();
        let source = LabeledSubtree::from_vertices(a3(), [Word::base().step(1)]).unwrap();
        assert_ne!(sink.canonical_code(), source.canonical_code());
        let source2 = LabeledSubtree::from_vertices(a3(), [Word::base().step(2)]).unwrap();
        assert_eq!(source.canonical_code(), source2.canonical_code());
    }

    #[test]
    fn paths_are_separated_by_their_label_pattern() {
        let p121 = path4([1, 2, 1]);
        let p123 = path4([1, 2, 3]);
        let p323 = path4([3, 2, 3]);
        assert_ne!(p121.canonical_code(), p123.canonical_code());
        assert_ne!(p121.canonical_code(), p323.canonical_code());
        assert_ne!(p123.canonical_code(), p323.canonical_code());
    }

    #[test]
    fn dual_path_reads_the_labels_backwards() {
        // Dualizing the sink-source-sink-source path flips every color, and
        // reading the flipped path from its other end restores the color
        // pattern with the labels reversed: dual of (a, b, c) is (c, b, a).
        let p = path4([1, 2, 3]);
        assert_eq!(p.dualize().canonical_code(), path4([3, 2, 1]).canonical_code());
        assert_ne!(p.dualize().canonical_code(), p.canonical_code());
        // Palindromic labels give a self-dual class.
        let z = path4([1, 2, 1]);
        assert_eq!(z.dualize().canonical_code(), z.canonical_code());
    }

    #[test]
    fn code_equality_matches_deck_equivalence() {
        // Pool representatives of several dimensions, then add permuted and
        // translated copies so that equivalent pairs actually occur.
        let mut pool: Vec<LabeledSubtree> = Vec::new();
        for (x, y) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            pool.extend(enumerate_subtrees(a3(), x, y, 12).unwrap());
        }
        let shift = DeckAlignment::from_base_image(
            Word::from_letters(&[2, 1], a3()).unwrap(),
        )
        .unwrap();
        let perm = LabelPermutation::new(vec![3, 1, 2], a3()).unwrap();
        let mut moved: Vec<LabeledSubtree> = Vec::new();
        for t in &pool {
            moved.push(t.translate(&shift));
            moved.push(t.permute_labels(&perm).unwrap());
        }
        pool.extend(moved);
        for s in &pool {
            for t in &pool {
                assert_eq!(
                    s.canonical_code() == t.canonical_code(),
                    deck_equivalent(s, t),
                    "code/equivalence mismatch"
                );
            }
        }
    }

    #[test]
    fn alignment_search_finds_equivalent_translates() {
        // The overlap alignments of a tree with its own translate include
        // the translation itself.
        let p = path4([1, 2, 1]);
        let g = DeckAlignment::from_base_image(Word::from_letters(&[3, 2], a3()).unwrap()).unwrap();
        let moved = p.translate(&g);
        assert!(overlap_alignments(&moved, &p).contains(&g));
        assert_eq!(moved.canonical_code(), p.canonical_code());
    }
}
