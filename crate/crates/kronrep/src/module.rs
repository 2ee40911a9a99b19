//! Matrix presentations of Kronecker modules: a module is a pair of vector
//! spaces (source side of dimension x, sink side of dimension y) with one
//! y-by-x matrix per arrow. Pushing a labeled subtree down yields the
//! presentation whose basis vectors are the tree's vertices; its nonzero
//! pattern is then exactly one 1 per tree edge.

use crate::cover::{LabeledSubtree, Word};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{zeros, Mat};
use crate::root_system::{ArrowCount, DimVector};
use serde::Serialize;

/// Which cover vertex each basis vector came from: column c of every matrix
/// belongs to `source_words[c]`, row r to `sink_words[r]`, both in word
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTags {
    pub source_words: Vec<Word>,
    pub sink_words: Vec<Word>,
}

#[derive(Clone, Debug)]
pub struct KroneckerModule<F: Field> {
    field: F,
    n: ArrowCount,
    matrices: Vec<Mat<F::Elem>>,
    tags: Option<BasisTags>,
}

impl<F: Field> KroneckerModule<F> {
    pub fn new(field: F, n: ArrowCount, matrices: Vec<Mat<F::Elem>>) -> Result<Self> {
        if matrices.len() != n.get() as usize {
            return Err(Error::Incompatible(format!(
                "{} matrices for n = {} arrows",
                matrices.len(),
                n.get()
            )));
        }
        let (rows, cols) = matrices
            .first()
            .map(|m| (m.rows(), m.cols()))
            .unwrap_or((0, 0));
        if matrices.iter().any(|m| (m.rows(), m.cols()) != (rows, cols)) {
            return Err(Error::Incompatible(
                "arrow matrices must share one shape".into(),
            ));
        }
        Ok(KroneckerModule { field, n, matrices, tags: None })
    }

    /// The presentation of a subtree: basis vectors are its vertices, and
    /// the matrix of arrow l has a 1 in (row of sink s, column of source t)
    /// for every tree edge (t, s, l).
    pub fn pushdown(tree: &LabeledSubtree, field: F) -> Result<Self> {
        let source_words = tree.source_words();
        let sink_words = tree.sink_words();
        let col_of = |w: &Word| source_words.binary_search(w).expect("source is a basis word");
        let row_of = |w: &Word| sink_words.binary_search(w).expect("sink is a basis word");
        let mut matrices =
            vec![zeros(&field, sink_words.len(), source_words.len()); tree.n().get() as usize];
        for e in tree.edges() {
            matrices[e.label as usize - 1].set(row_of(&e.sink), col_of(&e.source), field.one());
        }
        Ok(KroneckerModule {
            field,
            n: tree.n(),
            matrices,
            tags: Some(BasisTags { source_words, sink_words }),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> ArrowCount {
        self.n
    }

    pub fn matrices(&self) -> &[Mat<F::Elem>] {
        &self.matrices
    }

    pub fn tags(&self) -> Option<&BasisTags> {
        self.tags.as_ref()
    }

    pub fn dim(&self) -> DimVector {
        let (rows, cols) = self
            .matrices
            .first()
            .map(|m| (m.rows(), m.cols()))
            .unwrap_or((0, 0));
        DimVector::new(cols as i64, rows as i64)
    }

    pub fn total_dim(&self) -> usize {
        let d = self.dim();
        (d.x + d.y) as usize
    }

    pub fn nonzero_count(&self) -> usize {
        self.matrices
            .iter()
            .map(|m| m.nonzero_count(&self.field))
            .sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !self.field.same(&other.field) {
            return Err(Error::Incompatible(format!(
                "direct sum over different fields {} and {}",
                self.field.name(),
                other.field.name()
            )));
        }
        if self.n != other.n {
            return Err(Error::Incompatible(format!(
                "direct sum with n = {} against n = {}",
                self.n, other.n
            )));
        }
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| Mat::block_diag(&self.field, a, b))
            .collect();
        Ok(KroneckerModule {
            field: self.field.clone(),
            n: self.n,
            matrices,
            tags: None,
        })
    }

    /// Structure of the coefficient quiver: the graph on the x + y basis
    /// vectors with one edge per nonzero matrix entry (parallel labels give
    /// parallel edges, which count as cycles).
    pub fn coefficient_quiver_report(&self) -> CoefficientQuiverReport {
        let d = self.total_dim();
        let dim = self.dim();
        let x = dim.x as usize;
        // Union-find over source nodes 0..x and sink nodes x..x+y.
        let mut parent: Vec<usize> = (0..d).collect();
        fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut nonzeros = 0usize;
        for m in &self.matrices {
            for (r, c, v) in m.entries() {
                if !self.field.is_zero(v) {
                    nonzeros += 1;
                    let a = find(&mut parent, c);
                    let b = find(&mut parent, x + r);
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut components = 0usize;
        for v in 0..d {
            if find(&mut parent, v) == v {
                components += 1;
            }
        }
        let connected = components <= 1;
        // A multigraph is a forest exactly when every edge merged two
        // components: edges = nodes - components.
        let acyclic = nonzeros + components == d;
        CoefficientQuiverReport {
            total_nonzeros: nonzeros,
            components,
            connected,
            acyclic,
            is_tree_presentation: connected && acyclic && d > 0 && nonzeros == d - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientQuiverReport {
    pub total_nonzeros: usize,
    pub components: usize,
    pub connected: bool,
    pub acyclic: bool,
    pub is_tree_presentation: bool,
}
