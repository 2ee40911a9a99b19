//! Batch verification: for every positive imaginary root in a window,
//! produce a family of pairwise distinct cover-thin classes and certify
//! that each one is a tree presentation and indecomposable over small
//! prime fields. The outcome is a structured report rather than a bare
//! boolean so a failure names the offending root.

use crate::cover::{
    construct_for_root, enumerate_subtrees, CanonicalCode, LabeledSubtree, LabelPermutation,
};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hom::{
    end_is_local, hom_dim, overlap_hom_dim, Indecomposability, OverlapScratch, PreparedSubtree,
};
use crate::module::KroneckerModule;
use crate::root_system::{is_positive_imaginary_root, ArrowCount, DimVector};
use serde::Serialize;
use std::collections::BTreeMap;

/// All deck-inequivalent subtrees obtained from the canonical construction
/// for a root by permuting edge labels. Sorted by canonical code, so the
/// family is deterministic. Duality is already inside `construct_for_root`,
/// which builds the mirrored tree when x > y.
pub fn construction_family(n: ArrowCount, v: DimVector) -> Result<Vec<LabeledSubtree>> {
    let base = construct_for_root(n, v, None)?;
    let mut seen: BTreeMap<CanonicalCode, LabeledSubtree> = BTreeMap::new();
    for p in LabelPermutation::all(n)? {
        let t = base.permute_labels(&p)?;
        seen.entry(t.canonical_code()).or_insert(t);
    }
    Ok(seen.into_values().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub root: DimVector,
    pub classes_found: usize,
    pub codes: Vec<String>,
    pub all_tree_presentations: bool,
    pub all_indecomposable: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowReport {
    pub n: u32,
    pub max_total_dim: i64,
    pub roots: Vec<RootReport>,
    pub all_pass: bool,
}

/// Checks the existence claim on a window of roots: every positive
/// imaginary root (x, y) with x + y <= max_total_dim must admit at least
/// n pairwise distinct cover-thin classes, all of them tree presentations
/// and indecomposable over F2 and F3. Roots are visited in (total, x)
/// order; a failing root is reported, not swallowed.
pub fn verify_theorem_window(
    n: ArrowCount,
    max_total_dim: i64,
    seed: u64,
    budget: i64,
) -> Result<WindowReport> {
    if max_total_dim > budget {
        return Err(Error::BudgetExceeded { requested: max_total_dim, budget });
    }
    let f2 = PrimeField::new(2)?;
    let f3 = PrimeField::new(3)?;
    let mut roots = Vec::new();
    for total in 1..=max_total_dim {
        for x in 0..=total {
            let v = DimVector::new(x, total - x);
            if !is_positive_imaginary_root(n, v)? {
                continue;
            }
            let family = construction_family(n, v)?;
            let mut all_tree = true;
            let mut all_indec = true;
            for t in &family {
                let m2 = KroneckerModule::pushdown(t, f2.clone())?;
                if !m2.coefficient_quiver_report().is_tree_presentation {
                    all_tree = false;
                }
                let m3 = KroneckerModule::pushdown(t, f3.clone())?;
                for m in [&m2, &m3] {
                    if end_is_local(m, seed)?.verdict != Indecomposability::Indecomposable {
                        all_indec = false;
                    }
                }
            }
            let classes_found = family.len();
            let pass = classes_found >= n.get() as usize && all_tree && all_indec;
            roots.push(RootReport {
                root: v,
                classes_found,
                codes: family.iter().map(|t| t.canonical_code().to_hex()).collect(),
                all_tree_presentations: all_tree,
                all_indecomposable: all_indec,
                pass,
            });
        }
    }
    let all_pass = roots.iter().all(|r| r.pass);
    Ok(WindowReport { n: n.get(), max_total_dim, roots, all_pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleDisagreement {
    pub first: String,
    pub second: String,
    pub overlap_count: usize,
    pub matrix_dim_f2: usize,
    pub matrix_dim_f3: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub n: u32,
    pub classes: usize,
    pub pairs_checked: usize,
    pub disagreement_count: usize,
    /// The first few disagreements, for diagnosis.
    pub disagreements: Vec<OracleDisagreement>,
    pub all_agree: bool,
}

/// Cross-validates the combinatorial Hom count against the matrix
/// computation over F2 and F3, on every ordered pair of enumerated
/// classes whose total dimensions stay within the window. Disagreements
/// (expected never) are reported with the canonical codes, capped at ten.
pub fn verify_hom_oracle(
    n: ArrowCount,
    max_each_total_dim: i64,
    budget: i64,
) -> Result<OracleCheck> {
    if max_each_total_dim > budget {
        return Err(Error::BudgetExceeded { requested: max_each_total_dim, budget });
    }
    let f2 = PrimeField::new(2)?;
    let f3 = PrimeField::new(3)?;
    let mut trees = Vec::new();
    for total in 1..=max_each_total_dim {
        for x in 0..=total {
            trees.extend(enumerate_subtrees(n, x, total - x, budget)?);
        }
    }
    let m2: Vec<_> = trees
        .iter()
        .map(|t| KroneckerModule::pushdown(t, f2.clone()))
        .collect::<Result<_>>()?;
    let m3: Vec<_> = trees
        .iter()
        .map(|t| KroneckerModule::pushdown(t, f3.clone()))
        .collect::<Result<_>>()?;
    let prepared: Vec<PreparedSubtree> = trees.iter().map(PreparedSubtree::new).collect();
    let mut scratch = OverlapScratch::default();
    let mut disagreements = Vec::new();
    let mut disagreement_count = 0usize;
    let mut pairs_checked = 0usize;
    for i in 0..trees.len() {
        for j in 0..trees.len() {
            let counted = overlap_hom_dim(&prepared[i], &prepared[j], &mut scratch);
            let h2 = hom_dim(&m2[i], &m2[j])?;
            let h3 = hom_dim(&m3[i], &m3[j])?;
            pairs_checked += 1;
            if counted != h2 || counted != h3 {
                disagreement_count += 1;
                if disagreements.len() < 10 {
                    disagreements.push(OracleDisagreement {
                        first: trees[i].canonical_code().to_hex(),
                        second: trees[j].canonical_code().to_hex(),
                        overlap_count: counted,
                        matrix_dim_f2: h2,
                        matrix_dim_f3: h3,
                    });
                }
            }
        }
    }
    Ok(OracleCheck {
        n: n.get(),
        classes: trees.len(),
        pairs_checked,
        disagreement_count,
        disagreements,
        all_agree: disagreement_count == 0,
    })
}
