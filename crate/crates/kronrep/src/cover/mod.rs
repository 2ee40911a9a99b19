//! The universal cover of the n-Kronecker quiver: an n-regular tree,
//! bipartite into source and sink vertices, with the n edge labels meeting
//! each vertex exactly once. Finite connected labeled subtrees of it are the
//! combinatorial data behind tree modules; deck transformations tell us when
//! two subtrees present the same module.
//!
//! Vertices are addressed by the reduced word of edge labels along the
//! unique path from a fixed base sink; "reduced" means adjacent letters
//! differ. Words of even length are sinks, odd length sources. Since each
//! label is an involution (walking the same edge twice returns), words with
//! cancellative concatenation form a group, and deck transformations are
//! exactly the left translations by even-length words.

use crate::error::{Error, Result};
use crate::root_system::{ArrowCount, DimVector};
use serde::Serialize;
use smallvec::SmallVec;
use std::collections::BTreeSet;
use std::fmt;

/// Inline storage covering every word that appears at desk scale; longer
/// words spill to the heap transparently.
type Letters = SmallVec<[u8; 22]>;

mod code;
mod construct;
mod enumerate;

pub use code::CanonicalCode;
pub use construct::{
    canonical_construction, construct_for_root, default_composition, small_case_construction,
    Composition,
};
pub use enumerate::{enumerate_subtrees, DEFAULT_BUDGET};

/// Largest arrow count accepted by cover operations. Keeps edge labels one
/// byte and the canonical byte code unambiguous.
pub const MAX_COVER_ARROWS: u32 = 127;

pub(crate) fn check_cover_arrows(n: ArrowCount) -> Result<()> {
    if n.get() > MAX_COVER_ARROWS {
        return Err(Error::UnsupportedArrowCount {
            n: n.get(),
            reason: "cover operations support at most 127 arrows",
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Source,
    Sink,
}

/// A vertex of the universal cover: the reduced label word of the path from
/// the base sink. Ordering is lexicographic with shorter prefixes first;
/// this is the order used for matrix row/column bases.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Letters);

impl Word {
    /// The base sink: the empty word.
    pub fn base() -> Self {
        Word(Letters::new())
    }

    pub fn from_letters(letters: &[u8], n: ArrowCount) -> Result<Self> {
        check_cover_arrows(n)?;
        for (i, &l) in letters.iter().enumerate() {
            if l < 1 || l as u32 > n.get() {
                return Err(Error::MalformedSubtree(format!(
                    "letter {l} out of range 1..={}",
                    n.get()
                )));
            }
            if i > 0 && letters[i - 1] == l {
                return Err(Error::MalformedSubtree(format!(
                    "word {:?} is not reduced: repeated letter {l}",
                    letters
                )));
            }
        }
        Ok(Word(Letters::from_slice(letters)))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn color(&self) -> Color {
        if self.0.len() % 2 == 0 {
            Color::Sink
        } else {
            Color::Source
        }
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// The neighbor one step closer to the base, with the connecting label.
    pub fn parent(&self) -> Option<(Word, u8)> {
        let mut v = self.0.clone();
        let l = v.pop()?;
        Some((Word(v), l))
    }

    /// One step along the edge with the given label: append, cancelling if
    /// the last letter is the same. Total and always reduced.
    pub fn step(&self, letter: u8) -> Word {
        let mut v = self.0.clone();
        if v.last() == Some(&letter) {
            v.pop();
        } else {
            v.push(letter);
        }
        Word(v)
    }

    /// Group multiplication: self followed by other, with cancellation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        for &l in &other.0 {
            if v.last() == Some(&l) {
                v.pop();
            } else {
                v.push(l);
            }
        }
        Word(v)
    }

    /// Group inverse: the reversed word.
    pub fn inverse(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// All cover neighbors: the parent (if any) first, then children by
    /// ascending label.
    pub fn neighbors(&self, n: ArrowCount) -> Vec<Word> {
        let mut out = Vec::with_capacity(n.get() as usize);
        if let Some((p, _)) = self.parent() {
            out.push(p);
        }
        for l in 1..=n.get() as u8 {
            if self.last() != Some(l) {
                let mut v = self.0.clone();
                v.push(l);
                out.push(Word(v));
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[{}]", self)
    }
}

/// Returns the connecting label if the two words are adjacent in the cover.
pub fn cover_adjacent(a: &Word, b: &Word) -> Option<u8> {
    let (short, long) = if a.len() + 1 == b.len() {
        (a, b)
    } else if b.len() + 1 == a.len() {
        (b, a)
    } else {
        return None;
    };
    let (p, l) = long.parent().expect("longer word is nonempty");
    (&p == short).then_some(l)
}

/// A deck transformation of the cover: left translation w -> u ⋄ w by an
/// even-length word u. It preserves colors and edge labels, and is
/// determined by u, the image of the base vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DeckAlignment {
    base_image: Word,
}

impl DeckAlignment {
    pub fn identity() -> Self {
        DeckAlignment { base_image: Word::base() }
    }

    pub fn from_base_image(w: Word) -> Result<Self> {
        if w.len() % 2 != 0 {
            return Err(Error::Incompatible(format!(
                "deck transformation needs an even-length word, got {w}"
            )));
        }
        Ok(DeckAlignment { base_image: w })
    }

    /// The unique deck transformation taking `from` to `to`, if the colors
    /// match (otherwise none exists).
    pub fn mapping(from: &Word, to: &Word) -> Option<Self> {
        if from.color() != to.color() {
            return None;
        }
        Some(DeckAlignment {
            base_image: to.concat(&from.inverse()),
        })
    }

    pub fn base_image(&self) -> &Word {
        &self.base_image
    }

    pub fn is_identity(&self) -> bool {
        self.base_image.is_empty()
    }

    pub fn apply(&self, w: &Word) -> Word {
        self.base_image.concat(w)
    }

    pub fn inverse(&self) -> Self {
        DeckAlignment { base_image: self.base_image.inverse() }
    }
}

/// A relabeling of the n arrows by a permutation of 1..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelPermutation {
    image: Vec<u8>,
}

impl LabelPermutation {
    pub fn new(image: Vec<u8>, n: ArrowCount) -> Result<Self> {
        check_cover_arrows(n)?;
        let nn = n.get() as usize;
        if image.len() != nn {
            return Err(Error::InvalidPermutation(format!(
                "expected {nn} images, got {}",
                image.len()
            )));
        }
        let mut seen = vec![false; nn];
        for &l in &image {
            if l < 1 || l as usize > nn || seen[l as usize - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "images must be a permutation of 1..={nn}, got {:?}",
                    image
                )));
            }
            seen[l as usize - 1] = true;
        }
        Ok(LabelPermutation { image })
    }

    pub fn identity(n: ArrowCount) -> Self {
        LabelPermutation {
            image: (1..=n.get() as u8).collect(),
        }
    }

    /// All n! permutations, in lexicographic order of their image vectors.
    pub fn all(n: ArrowCount) -> Result<Vec<LabelPermutation>> {
        use itertools::Itertools;
        check_cover_arrows(n)?;
        Ok((1..=n.get() as u8)
            .permutations(n.get() as usize)
            .map(|image| LabelPermutation { image })
            .collect())
    }

    pub fn apply_letter(&self, l: u8) -> u8 {
        self.image[l as usize - 1]
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }
}

/// An arrow of a subtree, oriented from its source vertex to its sink
/// vertex, carrying one of the n labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub source: Word,
    pub sink: Word,
    pub label: u8,
}

/// A finite connected induced subtree of the universal cover. The module it
/// presents has one basis vector per vertex; two subtrees present the same
/// module exactly when a deck transformation carries one onto the other.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledSubtree {
    n: ArrowCount,
    vertices: BTreeSet<Word>,
}

impl LabeledSubtree {
    pub fn from_vertices<I>(n: ArrowCount, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        check_cover_arrows(n)?;
        let t = LabeledSubtree {
            n,
            vertices: vertices.into_iter().collect(),
        };
        t.validate()?;
        Ok(t)
    }

    /// Checks every representation invariant: nonempty, labels in range,
    /// words reduced, and connectivity (a vertex subset of a tree is
    /// connected iff all but one vertex have their parent in the subset).
    pub fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::MalformedSubtree("no vertices".into()));
        }
        let mut rooted = 0usize;
        for w in &self.vertices {
            Word::from_letters(w.letters(), self.n)?;
            match w.parent() {
                Some((p, _)) if self.vertices.contains(&p) => rooted += 1,
                _ => {}
            }
        }
        if rooted + 1 != self.vertices.len() {
            return Err(Error::MalformedSubtree(format!(
                "{} vertices but only {} tree edges",
                self.vertices.len(),
                rooted
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> ArrowCount {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.vertices.contains(w)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Word> {
        self.vertices.iter()
    }

    /// Source vertices in word order (the column basis of the pushdown).
    pub fn source_words(&self) -> Vec<Word> {
        self.vertices
            .iter()
            .filter(|w| w.color() == Color::Source)
            .cloned()
            .collect()
    }

    /// Sink vertices in word order (the row basis of the pushdown).
    pub fn sink_words(&self) -> Vec<Word> {
        self.vertices
            .iter()
            .filter(|w| w.color() == Color::Sink)
            .cloned()
            .collect()
    }

    /// Dimension vector of the presented module: (#sources, #sinks).
    pub fn dim(&self) -> DimVector {
        let sources = self
            .vertices
            .iter()
            .filter(|w| w.color() == Color::Source)
            .count();
        DimVector::new(sources as i64, (self.vertices.len() - sources) as i64)
    }

    /// The edges, oriented source -> sink, sorted by (source, sink, label).
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.vertices.len().saturating_sub(1));
        for w in &self.vertices {
            if let Some((p, l)) = w.parent() {
                if self.vertices.contains(&p) {
                    let e = match w.color() {
                        Color::Source => Edge { source: w.clone(), sink: p, label: l },
                        Color::Sink => Edge { source: p, sink: w.clone(), label: l },
                    };
                    out.push(e);
                }
            }
        }
        out.sort();
        out
    }

    /// Whether the given arrow is present. Since subtrees are induced, this
    /// holds exactly when both endpoints are vertices and they are adjacent
    /// in the cover with the stated label.
    pub fn has_edge(&self, e: &Edge) -> bool {
        self.vertices.contains(&e.source)
            && self.vertices.contains(&e.sink)
            && cover_adjacent(&e.source, &e.sink) == Some(e.label)
    }

    /// Image under a deck transformation: the same module, re-addressed.
    pub fn translate(&self, g: &DeckAlignment) -> LabeledSubtree {
        let t = LabeledSubtree {
            n: self.n,
            vertices: self.vertices.iter().map(|w| g.apply(w)).collect(),
        };
        debug_assert!(t.validate().is_ok());
        t
    }

    /// Relabels every edge through the permutation.
    pub fn permute_labels(&self, p: &LabelPermutation) -> Result<LabeledSubtree> {
        if p.image().len() != self.n.get() as usize {
            return Err(Error::InvalidPermutation(format!(
                "permutation of {} labels applied to a subtree with n = {}",
                p.image().len(),
                self.n
            )));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|w| Word(w.letters().iter().map(|&l| p.apply_letter(l)).collect()))
            .collect();
        let t = LabeledSubtree { n: self.n, vertices };
        debug_assert!(t.validate().is_ok());
        Ok(t)
    }

    /// The dual subtree: shift every vertex one step along edge 1 from the
    /// base side, exchanging sources and sinks. An involution on the nose.
    pub fn dualize(&self) -> LabeledSubtree {
        let one = Word(Letters::from_slice(&[1]));
        let t = LabeledSubtree {
            n: self.n,
            vertices: self.vertices.iter().map(|w| one.concat(w)).collect(),
        };
        debug_assert!(t.validate().is_ok());
        t
    }

    /// Canonical byte code: equal for two subtrees exactly when a deck
    /// transformation carries one onto the other.
    pub fn canonical_code(&self) -> CanonicalCode {
        code::canonical_code(self)
    }
}

/// All deck transformations g with g(second) meeting first, i.e. one per
/// same-colored vertex pair, deduplicated; sorted by base image.
pub fn overlap_alignments(first: &LabeledSubtree, second: &LabeledSubtree) -> Vec<DeckAlignment> {
    let mut out = Vec::new();
    for v2 in second.vertices() {
        for v1 in first.vertices() {
            if let Some(g) = DeckAlignment::mapping(v2, v1) {
                out.push(g);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n3() -> ArrowCount {
        ArrowCount::new(3).unwrap()
    }

    fn w(letters: &[u8]) -> Word {
        Word::from_letters(letters, ArrowCount::new(127).unwrap()).unwrap()
    }

    /// Fold an arbitrary letter sequence into a (reduced) group element.
    fn fold(letters: &[u8]) -> Word {
        letters.iter().fold(Word::base(), |acc, &l| acc.step(l))
    }

    fn star(n: u32) -> LabeledSubtree {
        small_case_construction(
            ArrowCount::new(n).unwrap(),
            DimVector::new(1, n as i64),
        )
        .unwrap()
    }

    #[test]
    fn words_reduce_and_color() {
        assert_eq!(w(&[1, 2]).step(2), w(&[1]));
        assert_eq!(w(&[1]).step(1), Word::base());
        assert_eq!(Word::base().step(3), w(&[3]));
        assert_eq!(Word::base().color(), Color::Sink);
        assert_eq!(w(&[2]).color(), Color::Source);
        assert_eq!(w(&[2, 1]).color(), Color::Sink);
    }

    #[test]
    fn malformed_words_are_rejected() {
        assert!(Word::from_letters(&[1, 1], n3()).is_err());
        assert!(Word::from_letters(&[0], n3()).is_err());
        assert!(Word::from_letters(&[4], n3()).is_err());
        assert!(Word::from_letters(&[3, 1, 3], n3()).is_ok());
    }

    #[test]
    fn word_order_is_lexicographic_with_prefixes_first() {
        let mut v = vec![w(&[2]), w(&[1, 2]), Word::base(), w(&[1]), w(&[1, 3])];
        v.sort();
        assert_eq!(v, vec![Word::base(), w(&[1]), w(&[1, 2]), w(&[1, 3]), w(&[2])]);
    }

    #[test]
    fn adjacency_detection() {
        assert_eq!(cover_adjacent(&Word::base(), &w(&[2])), Some(2));
        assert_eq!(cover_adjacent(&w(&[1, 2]), &w(&[1])), Some(2));
        assert_eq!(cover_adjacent(&Word::base(), &w(&[1, 2])), None);
        assert_eq!(cover_adjacent(&w(&[1]), &w(&[2])), None);
    }

    #[test]
    fn neighbors_of_a_vertex() {
        let nb = w(&[2]).neighbors(n3());
        assert_eq!(nb, vec![Word::base(), w(&[2, 1]), w(&[2, 3])]);
        assert_eq!(Word::base().neighbors(n3()), vec![w(&[1]), w(&[2]), w(&[3])]);
    }

    #[test]
    fn deck_mapping_moves_points_as_stated() {
        let a = w(&[1, 2]);
        let b = w(&[3, 1]);
        let g = DeckAlignment::mapping(&a, &b).unwrap();
        assert_eq!(g.apply(&a), b);
        assert_eq!(g.inverse().apply(&b), a);
        assert!(DeckAlignment::mapping(&a, &w(&[1])).is_none());
        assert!(DeckAlignment::from_base_image(w(&[1])).is_err());
    }

    #[test]
    fn subtree_validation_catches_defects() {
        assert!(LabeledSubtree::from_vertices(n3(), []).is_err());
        assert!(LabeledSubtree::from_vertices(n3(), [Word::base(), w(&[1, 2])]).is_err());
        assert!(LabeledSubtree::from_vertices(n3(), [Word::base(), w(&[7])]).is_err());
        assert!(LabeledSubtree::from_vertices(n3(), [Word::base(), w(&[1]), w(&[1, 2])]).is_ok());
    }

    #[test]
    fn star_shape() {
        let s = star(3);
        assert_eq!(s.dim(), DimVector::new(1, 3));
        let edges = s.edges();
        assert_eq!(edges.len(), 3);
        for e in &edges {
            assert_eq!(e.source, w(&[1]));
            assert!(s.has_edge(e));
        }
        let labels: Vec<u8> = edges.iter().map(|e| e.label).collect();
        assert_eq!(labels, vec![1, 2, 3]);
        assert!(!s.has_edge(&Edge { source: w(&[1]), sink: w(&[1, 2]), label: 3 }));
    }

    #[test]
    fn dualize_swaps_dimensions_and_is_an_involution() {
        let s = star(3);
        let d = s.dualize();
        assert_eq!(d.dim(), DimVector::new(3, 1));
        assert_eq!(d.dualize(), s);
    }

    #[test]
    fn permutation_validation() {
        assert!(LabelPermutation::new(vec![2, 1, 3], n3()).is_ok());
        assert!(LabelPermutation::new(vec![2, 1], n3()).is_err());
        assert!(LabelPermutation::new(vec![2, 2, 3], n3()).is_err());
        assert!(LabelPermutation::new(vec![0, 1, 2], n3()).is_err());
        assert_eq!(LabelPermutation::all(n3()).unwrap().len(), 6);
    }

    #[test]
    fn permuting_labels_relabels_edges() {
        let s = star(3);
        let p = LabelPermutation::new(vec![3, 1, 2], n3()).unwrap();
        let t = s.permute_labels(&p).unwrap();
        assert_eq!(t.dim(), s.dim());
        // The full star uses all labels, so it is fixed as a class but the
        // vertex set moves: the center is now reached by edge 3.
        assert!(t.contains(&w(&[3])));
        assert_eq!(t.canonical_code(), s.canonical_code());
    }

    #[test]
    fn star_self_alignment_count() {
        // Cross-matching two of the star's sinks gives one alignment per
        // ordered pair of distinct sinks; every diagonal pair and the
        // center-to-center pair collapse to the identity. n(n-1) + 1 total.
        for arrows in [2u32, 3, 4] {
            let s = star(arrows);
            let align = overlap_alignments(&s, &s);
            assert_eq!(align.len(), (arrows * arrows - arrows + 1) as usize);
            assert!(align.iter().any(|g| g.is_identity()));
        }
    }

    proptest! {
        #[test]
        fn concatenation_is_a_group_operation(
            a in proptest::collection::vec(1u8..=3, 0..8),
            b in proptest::collection::vec(1u8..=3, 0..8),
            c in proptest::collection::vec(1u8..=3, 0..8),
        ) {
            let (u, v, t) = (fold(&a), fold(&b), fold(&c));
            prop_assert_eq!(u.concat(&v).concat(&t), u.concat(&v.concat(&t)));
            prop_assert_eq!(u.concat(&u.inverse()), Word::base());
            prop_assert_eq!(u.inverse().concat(&u), Word::base());
        }

        #[test]
        fn deck_translation_preserves_class(
            raw in proptest::collection::vec(1u8..=3, 0..8),
        ) {
            let mut u = fold(&raw);
            if u.len() % 2 == 1 {
                u = u.step(if u.last() == Some(1) { 2 } else { 1 });
            }
            let g = DeckAlignment::from_base_image(u).unwrap();
            let s = star(3);
            let t = s.translate(&g);
            prop_assert!(t.validate().is_ok());
            prop_assert_eq!(t.dim(), s.dim());
            prop_assert_eq!(t.canonical_code(), s.canonical_code());
        }
    }
}
