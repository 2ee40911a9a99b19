//! Hom spaces between Kronecker modules by exact linear algebra, the
//! endomorphism-based indecomposability decision, isomorphism testing, and
//! an independent combinatorial Hom count coming from the covering theory
//! of tree modules.

use crate::cover::{overlap_alignments, LabeledSubtree, Word};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{zeros, Mat};
use crate::module::KroneckerModule;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Seed used by every randomized step unless the caller chooses one.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Random linear combinations tried per splitting probe.
const RANDOM_PROBES: usize = 32;

/// Exhaustive searches run only while |field|^(dim Hom) stays below this.
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// A morphism is a pair (A, B): A acts on the source side, B on the sink
/// side, subject to B * M_l = N_l * A for every arrow l.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    basis: Vec<(Mat<F::Elem>, Mat<F::Elem>)>,
}

impl<F: Field> HomSpace<F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(Mat<F::Elem>, Mat<F::Elem>)] {
        &self.basis
    }
}

fn check_compatible<F: Field>(m: &KroneckerModule<F>, n: &KroneckerModule<F>) -> Result<()> {
    if !m.field().same(n.field()) {
        return Err(Error::Incompatible(format!(
            "modules over different fields {} and {}",
            m.field().name(),
            n.field().name()
        )));
    }
    if m.n() != n.n() {
        return Err(Error::Incompatible(format!(
            "modules over different arrow counts {} and {}",
            m.n(),
            n.n()
        )));
    }
    Ok(())
}

/// Builds the intertwining system. Unknowns are the entries of A
/// (row-major) followed by the entries of B; equations are indexed by
/// (arrow, target sink row, source column).
fn intertwining_system<F: Field>(
    src: &KroneckerModule<F>,
    dst: &KroneckerModule<F>,
) -> Result<Mat<F::Elem>> {
    check_compatible(src, dst)?;
    let f = src.field();
    let d = src.dim();
    let (x, y) = (d.x as usize, d.y as usize);
    let d = dst.dim();
    let (x2, y2) = (d.x as usize, d.y as usize);
    let a_unknowns = x2 * x;
    let rows_per_arrow = y2 * x;
    let mut sys = zeros(f, src.n().get() as usize * rows_per_arrow, a_unknowns + y2 * y);
    for (l, (mm, nn)) in src.matrices().iter().zip(dst.matrices()).enumerate() {
        for i in 0..y2 {
            for j in 0..x {
                let row = l * rows_per_arrow + i * x + j;
                for c in 0..x2 {
                    sys.set(row, c * x + j, nn.get(i, c).clone());
                }
                for c in 0..y {
                    sys.set(row, a_unknowns + i * y + c, f.neg(mm.get(c, j)));
                }
            }
        }
    }
    Ok(sys)
}

/// Solves the intertwining system by exact elimination; deterministic.
pub fn hom_space<F: Field>(
    src: &KroneckerModule<F>,
    dst: &KroneckerModule<F>,
) -> Result<HomSpace<F>> {
    let f = src.field();
    let (x, x2) = (src.dim().x as usize, dst.dim().x as usize);
    let (y, y2) = (src.dim().y as usize, dst.dim().y as usize);
    let a_unknowns = x2 * x;
    let basis = intertwining_system(src, dst)?
        .nullspace(f)
        .into_iter()
        .map(|v| {
            let a = Mat::from_fn(x2, x, |r, c| v[r * x + c].clone());
            let b = Mat::from_fn(y2, y, |r, c| v[a_unknowns + r * y + c].clone());
            (a, b)
        })
        .collect();
    Ok(HomSpace { basis })
}

/// Only the dimension: unknowns minus the rank, skipping basis extraction.
pub fn hom_dim<F: Field>(src: &KroneckerModule<F>, dst: &KroneckerModule<F>) -> Result<usize> {
    let sys = intertwining_system(src, dst)?;
    Ok(sys.cols() - sys.rank(src.field()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Indecomposability {
    Indecomposable,
    Decomposable,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EndAnalysis {
    pub dim_end: usize,
    pub verdict: Indecomposability,
}

fn combine<F: Field>(
    f: &F,
    basis: &[(Mat<F::Elem>, Mat<F::Elem>)],
    coeffs: &[F::Elem],
) -> (Mat<F::Elem>, Mat<F::Elem>) {
    let (a0, b0) = &basis[0];
    let mut a = zeros(f, a0.rows(), a0.cols());
    let mut b = zeros(f, b0.rows(), b0.cols());
    for ((ba, bb), c) in basis.iter().zip(coeffs) {
        a = a.add(f, &ba.scale(f, c));
        b = b.add(f, &bb.scale(f, c));
    }
    (a, b)
}

/// Visits every tuple in {0..base}^k until the visitor declines more.
fn each_tuple(k: usize, base: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut digits = vec![0usize; k];
    loop {
        if !visit(&digits) {
            return;
        }
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn power_stays_below(base: u64, exp: usize, limit: u64) -> bool {
    let mut t: u64 = 1;
    for _ in 0..exp {
        t = t.saturating_mul(base);
        if t > limit {
            return false;
        }
    }
    true
}

/// Decides whether the endomorphism ring is local, i.e. the module is
/// indecomposable, through a ladder of certificates:
///
/// (a) one-dimensional End is local;
/// (b) a splitting probe: if some endomorphism phi (basis element or seeded
///     random combination) has 0 < rank(phi^d) < d for d the total
///     dimension, the stable kernel/image split the module;
/// (c) over a prime field, when p^(dim End) is small enough, exhaustive
///     idempotent search — decisive either way;
/// (d) otherwise Undecided.
///
/// Over the rationals only (a) applies. The zero module reports
/// Decomposable (it is the empty direct sum).
pub fn end_is_local<F: Field>(m: &KroneckerModule<F>, seed: u64) -> Result<EndAnalysis> {
    let f = m.field();
    let end = hom_space(m, m)?;
    let k = end.dimension();
    let d = m.total_dim();
    if d == 0 {
        return Ok(EndAnalysis { dim_end: k, verdict: Indecomposability::Decomposable });
    }
    debug_assert!(k >= 1, "a nonzero module has its identity endomorphism");
    if k == 1 {
        return Ok(EndAnalysis { dim_end: k, verdict: Indecomposability::Indecomposable });
    }
    let Some(p) = f.order() else {
        return Ok(EndAnalysis { dim_end: k, verdict: Indecomposability::Undecided });
    };

    let mut probes: Vec<(Mat<F::Elem>, Mat<F::Elem>)> = end.basis().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_PROBES {
        let coeffs: Vec<F::Elem> = (0..k).map(|_| f.sample(&mut rng)).collect();
        probes.push(combine(f, end.basis(), &coeffs));
    }
    for (a, b) in &probes {
        let stable_rank =
            a.pow(f, d as u64).rank(f) + b.pow(f, d as u64).rank(f);
        if stable_rank > 0 && stable_rank < d {
            return Ok(EndAnalysis { dim_end: k, verdict: Indecomposability::Decomposable });
        }
    }

    if power_stays_below(p, k, EXHAUSTIVE_LIMIT) {
        let elems = f.elements().expect("finite field lists its elements");
        let mut found = false;
        each_tuple(k, elems.len(), |digits| {
            let coeffs: Vec<F::Elem> = digits.iter().map(|&i| elems[i].clone()).collect();
            let (a, b) = combine(f, end.basis(), &coeffs);
            let trivial = (a.is_zero_matrix(f) && b.is_zero_matrix(f))
                || (a.is_identity_matrix(f) && b.is_identity_matrix(f));
            if !trivial && a.mul(f, &a) == a && b.mul(f, &b) == b {
                found = true;
                return false;
            }
            true
        });
        let verdict = if found {
            Indecomposability::Decomposable
        } else {
            Indecomposability::Indecomposable
        };
        return Ok(EndAnalysis { dim_end: k, verdict });
    }
    Ok(EndAnalysis { dim_end: k, verdict: Indecomposability::Undecided })
}

/// Searches Hom(src, dst) for a pair of invertible matrices. Over a prime
/// field with p^(dim Hom) below the exhaustive limit the search is
/// complete, so `None` certifies the modules are not isomorphic; otherwise
/// basis elements and seeded random combinations are probed and `None`
/// merely reports that nothing was found.
pub fn find_isomorphism<F: Field>(
    src: &KroneckerModule<F>,
    dst: &KroneckerModule<F>,
    seed: u64,
) -> Result<Option<(Mat<F::Elem>, Mat<F::Elem>)>> {
    check_compatible(src, dst)?;
    if src.dim() != dst.dim() {
        return Ok(None);
    }
    let f = src.field();
    let hom = hom_space(src, dst)?;
    let k = hom.dimension();
    if k == 0 {
        // A zero module is isomorphic to itself by the empty pair.
        return Ok(if src.total_dim() == 0 {
            Some((zeros(f, 0, 0), zeros(f, 0, 0)))
        } else {
            None
        });
    }
    let invertible =
        |a: &Mat<F::Elem>, b: &Mat<F::Elem>| a.is_invertible(f) && b.is_invertible(f);
    match f.order() {
        Some(p) if power_stays_below(p, k, EXHAUSTIVE_LIMIT) => {
            let elems = f.elements().expect("finite field lists its elements");
            let mut hit = None;
            each_tuple(k, elems.len(), |digits| {
                let coeffs: Vec<F::Elem> = digits.iter().map(|&i| elems[i].clone()).collect();
                let (a, b) = combine(f, hom.basis(), &coeffs);
                if invertible(&a, &b) {
                    hit = Some((a, b));
                    return false;
                }
                true
            });
            Ok(hit)
        }
        _ => {
            for (a, b) in hom.basis() {
                if invertible(a, b) {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..2 * RANDOM_PROBES {
                let coeffs: Vec<F::Elem> = (0..k).map(|_| f.sample(&mut rng)).collect();
                let (a, b) = combine(f, hom.basis(), &coeffs);
                if invertible(&a, &b) {
                    return Ok(Some((a, b)));
                }
            }
            Ok(None)
        }
    }
}

/// Do two subtrees present isomorphic modules? Complete and exact: deck
/// classes are separated by the canonical code.
pub fn iso_cover_thin(a: &LabeledSubtree, b: &LabeledSubtree) -> bool {
    a.canonical_code() == b.canonical_code()
}

/// A subtree with its vertices sorted and edge endpoints resolved to
/// positions, so repeated overlap counts against it skip the setup.
pub struct PreparedSubtree<'a> {
    tree: &'a LabeledSubtree,
    sorted: Vec<&'a Word>,
    edge_pos: Vec<(usize, usize)>,
}

impl<'a> PreparedSubtree<'a> {
    pub fn new(tree: &'a LabeledSubtree) -> Self {
        let sorted: Vec<&Word> = tree.vertices().collect();
        let edge_pos = tree
            .edges()
            .iter()
            .map(|e| {
                let s = find_word(&sorted, &e.source).expect("edge endpoint is a vertex");
                let k = find_word(&sorted, &e.sink).expect("edge endpoint is a vertex");
                (s, k)
            })
            .collect();
        PreparedSubtree { tree, sorted, edge_pos }
    }
}

/// Reusable buffers for `overlap_hom_dim`; one instance serves any number
/// of calls without further allocation.
#[derive(Default)]
pub struct OverlapScratch {
    translated: Vec<Word>,
    order: Vec<u32>,
    inter: Vec<u32>,
    uf: Vec<u32>,
    admissible: Vec<bool>,
}

fn find_word(sorted: &[&Word], w: &Word) -> Option<usize> {
    sorted.binary_search_by(|v| (**v).cmp(w)).ok()
}

/// Counts dim Hom(module of `t`, module of `u`) combinatorially: one
/// dimension for every admissible component of every aligned overlap. A
/// component C of the intersection of t with a translate g(u) is admissible
/// when (i) every edge of t pointing into a sink of C also lies in g(u) and
/// (ii) every edge of g(u) leaving a source of C also lies in t.
pub fn hom_dim_via_overlaps(t: &LabeledSubtree, u: &LabeledSubtree) -> usize {
    overlap_hom_dim(
        &PreparedSubtree::new(t),
        &PreparedSubtree::new(u),
        &mut OverlapScratch::default(),
    )
}

/// The overlap count on prepared trees. Membership is all that is needed:
/// a cover edge lies in a subtree exactly when both endpoints do, and two
/// intersection vertices are adjacent exactly when one is the word-parent
/// of the other. So each alignment costs one batch of translations plus
/// binary searches — no subtree is materialized.
pub fn overlap_hom_dim(
    t: &PreparedSubtree,
    u: &PreparedSubtree,
    scratch: &mut OverlapScratch,
) -> usize {
    let mut total = 0usize;
    for g in overlap_alignments(t.tree, u.tree) {
        let translated = &mut scratch.translated;
        translated.clear();
        translated.extend(u.sorted.iter().map(|w| g.apply(w)));
        // Positions into `translated`, sorted by word value.
        let order = &mut scratch.order;
        order.clear();
        order.extend(0..translated.len() as u32);
        order.sort_unstable_by(|&a, &b| translated[a as usize].cmp(&translated[b as usize]));
        let in_moved = |w: &Word| {
            order
                .binary_search_by(|&i| translated[i as usize].cmp(w))
                .is_ok()
        };
        // Intersection, as ascending positions in t.sorted.
        let inter = &mut scratch.inter;
        inter.clear();
        inter.extend((0..t.sorted.len() as u32).filter(|&i| in_moved(t.sorted[i as usize])));
        // Components via union-find on word-parent links inside the
        // intersection.
        let uf = &mut scratch.uf;
        uf.clear();
        uf.extend(0..inter.len() as u32);
        for k in 0..inter.len() {
            if let Some((p, _)) = t.sorted[inter[k] as usize].parent() {
                if let Some(pos) = find_word(&t.sorted, &p) {
                    if let Ok(kp) = inter.binary_search(&(pos as u32)) {
                        let (a, b) = (uf_find(uf, k), uf_find(uf, kp));
                        uf[a] = b as u32;
                    }
                }
            }
        }
        let admissible = &mut scratch.admissible;
        admissible.clear();
        admissible.resize(inter.len(), true);
        for &(src_pos, sink_pos) in &t.edge_pos {
            if let Ok(k) = inter.binary_search(&(sink_pos as u32)) {
                if !in_moved(t.sorted[src_pos]) {
                    let r = uf_find(uf, k);
                    admissible[r] = false;
                }
            }
        }
        for &(src_pos, sink_pos) in &u.edge_pos {
            if let Some(pos) = find_word(&t.sorted, &translated[src_pos]) {
                if let Ok(k) = inter.binary_search(&(pos as u32)) {
                    if find_word(&t.sorted, &translated[sink_pos]).is_none() {
                        let r = uf_find(uf, k);
                        admissible[r] = false;
                    }
                }
            }
        }
        for k in 0..inter.len() {
            if uf_find(uf, k) == k && admissible[k] {
                total += 1;
            }
        }
    }
    total
}

fn uf_find(uf: &mut [u32], mut i: usize) -> usize {
    while uf[i] as usize != i {
        uf[i] = uf[uf[i] as usize];
        i = uf[i] as usize;
    }
    i
}
