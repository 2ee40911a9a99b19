//! Root geometry of the n-Kronecker quiver: the Tits form, simple
//! reflections, the Coxeter transformation, the fundamental domain for
//! imaginary roots, and the preprojective/preinjective dimension series.
//!
//! All arithmetic is exact and checked; inputs that would overflow report
//! `Error::Overflow` instead of wrapping.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Number of parallel arrows in the quiver. Always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrowCount(u32);

impl ArrowCount {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedArrowCount {
                n,
                reason: "need at least one arrow",
            });
        }
        Ok(ArrowCount(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for ArrowCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dimension vector (x, y): x at the source vertex, y at the sink vertex.
/// Signed so that arbitrary integer vectors can be classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DimVector {
    pub x: i64,
    pub y: i64,
}

impl DimVector {
    pub fn new(x: i64, y: i64) -> Self {
        DimVector { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn is_nonnegative(self) -> bool {
        self.x >= 0 && self.y >= 0
    }

    /// Total dimension x + y, computed widely so it cannot overflow.
    pub fn total(self) -> i128 {
        self.x as i128 + self.y as i128
    }

    pub fn swap(self) -> Self {
        DimVector { x: self.y, y: self.x }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Real,
    Imaginary,
    NotARoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootClass {
    pub kind: RootKind,
    pub tits_value: i128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxeterDirection {
    Forward,
    Inverse,
}

fn wide(v: i64) -> i128 {
    v as i128
}

fn narrow(v: i128, op: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow { op })
}

/// Tits form q(x, y) = x^2 + y^2 - n*x*y.
pub fn tits_form(n: ArrowCount, v: DimVector) -> Result<i128> {
    let (x, y) = (wide(v.x), wide(v.y));
    let op = "tits form";
    let xx = x.checked_mul(x).ok_or(Error::Overflow { op })?;
    let yy = y.checked_mul(y).ok_or(Error::Overflow { op })?;
    let xy = x.checked_mul(y).ok_or(Error::Overflow { op })?;
    let nxy = xy.checked_mul(n.get() as i128).ok_or(Error::Overflow { op })?;
    xx.checked_add(yy)
        .and_then(|s| s.checked_sub(nxy))
        .ok_or(Error::Overflow { op })
}

/// A vector is a real root iff q = 1, an imaginary root iff it is nonzero
/// with q <= 0, and otherwise not a root at all. This is exact for the
/// rank-two forms handled here.
pub fn classify(n: ArrowCount, v: DimVector) -> Result<RootClass> {
    let q = tits_form(n, v)?;
    let kind = if q == 1 {
        RootKind::Real
    } else if q <= 0 && !v.is_zero() {
        RootKind::Imaginary
    } else {
        RootKind::NotARoot
    };
    Ok(RootClass { kind, tits_value: q })
}

pub fn is_positive_imaginary_root(n: ArrowCount, v: DimVector) -> Result<bool> {
    Ok(classify(n, v)?.kind == RootKind::Imaginary && v.x > 0 && v.y > 0)
}

/// Reflection at the source vertex: (x, y) -> (n*y - x, y).
pub fn reflect_source(n: ArrowCount, v: DimVector) -> Result<DimVector> {
    let op = "source reflection";
    let ny = wide(v.y)
        .checked_mul(n.get() as i128)
        .ok_or(Error::Overflow { op })?;
    let x2 = ny.checked_sub(wide(v.x)).ok_or(Error::Overflow { op })?;
    Ok(DimVector::new(narrow(x2, op)?, v.y))
}

/// Reflection at the sink vertex: (x, y) -> (x, n*x - y).
pub fn reflect_sink(n: ArrowCount, v: DimVector) -> Result<DimVector> {
    let op = "sink reflection";
    let nx = wide(v.x)
        .checked_mul(n.get() as i128)
        .ok_or(Error::Overflow { op })?;
    let y2 = nx.checked_sub(wide(v.y)).ok_or(Error::Overflow { op })?;
    Ok(DimVector::new(v.x, narrow(y2, op)?))
}

/// Coxeter transformation. Forward is the sink reflection after the source
/// reflection, so Forward(x, y) = (n*y - x, n^2*y - n*x - y); Inverse is the
/// composition the other way round. The two are mutually inverse.
pub fn coxeter(n: ArrowCount, v: DimVector, dir: CoxeterDirection) -> Result<DimVector> {
    match dir {
        CoxeterDirection::Forward => reflect_sink(n, reflect_source(n, v)?),
        CoxeterDirection::Inverse => reflect_source(n, reflect_sink(n, v)?),
    }
}

/// Fundamental domain for the Coxeter action on positive imaginary roots.
///
/// For n >= 3 it is the sector x < (n-1)*y and y <= (n-1)*x (one wall open,
/// the other closed, so each orbit meets it exactly once); membership forces
/// x, y >= 1. For n = 2 every positive imaginary root is (m, m) and is fixed
/// by the Coxeter transformation, so the domain is all of them. n = 1 has no
/// imaginary roots and is rejected.
pub fn in_fundamental_domain(n: ArrowCount, v: DimVector) -> Result<bool> {
    match n.get() {
        1 => Err(Error::UnsupportedArrowCount {
            n: 1,
            reason: "no imaginary roots, so no fundamental domain",
        }),
        2 => Ok(v.x == v.y && v.x >= 1),
        n_ => {
            let m = (n_ - 1) as i128;
            let (x, y) = (wide(v.x), wide(v.y));
            Ok(x < m * y && y <= m * x)
        }
    }
}

/// Carries a positive imaginary root into the fundamental domain and reports
/// the Coxeter power applied: the result is (w, k) with Forward^k(v) = w.
/// k is the unique such power, and the one of smallest absolute value.
pub fn reduce_to_fundamental_domain(n: ArrowCount, v: DimVector) -> Result<(DimVector, i64)> {
    if !is_positive_imaginary_root(n, v)? {
        return Err(Error::NotPositiveImaginaryRoot {
            n: n.get(),
            x: v.x,
            y: v.y,
        });
    }
    if n.get() == 2 {
        return Ok((v, 0));
    }
    let m = (n.get() - 1) as i128;
    let mut cur = v;
    let mut k: i64 = 0;
    loop {
        let (x, y) = (wide(cur.x), wide(cur.y));
        if x < m * y && y <= m * x {
            return Ok((cur, k));
        }
        if y > m * x {
            // Too steep: pull back with the inverse transformation.
            cur = coxeter(n, cur, CoxeterDirection::Inverse)?;
            k -= 1;
        } else {
            // Too shallow (x >= (n-1)*y): push forward.
            cur = coxeter(n, cur, CoxeterDirection::Forward)?;
            k += 1;
        }
        // Each step strictly decreases x + y until the domain is reached,
        // so this loop terminates for every positive imaginary root.
    }
}

fn orbit_series(
    n: ArrowCount,
    count: usize,
    seeds: (DimVector, DimVector),
    dir: CoxeterDirection,
    series: &'static str,
) -> Result<Vec<DimVector>> {
    let mut out = Vec::with_capacity(count);
    let (mut even, mut odd) = seeds;
    for m in 0..count {
        let d = if m % 2 == 0 {
            let d = even;
            even = coxeter(n, even, dir)?;
            d
        } else {
            let d = odd;
            odd = coxeter(n, odd, dir)?;
            d
        };
        if !d.is_nonnegative() {
            // Only reachable for n = 1, where the series stops after three
            // terms: the quiver has finite representation type.
            return Err(Error::UnsupportedArrowCount {
                n: n.get(),
                reason: series,
            });
        }
        out.push(d);
    }
    Ok(out)
}

/// First `count` preprojective dimension vectors, in order: the two Coxeter
/// forward orbits of (0, 1) and (1, n), interleaved. Consecutive entries
/// satisfy d[m+1] = n*d[m] - d[m-1].
pub fn preprojective_dims(n: ArrowCount, count: usize) -> Result<Vec<DimVector>> {
    orbit_series(
        n,
        count,
        (DimVector::new(0, 1), DimVector::new(1, n.get() as i64)),
        CoxeterDirection::Forward,
        "preprojective series is finite (three terms)",
    )
}

/// First `count` preinjective dimension vectors: the Coxeter inverse orbits
/// of (1, 0) and (n, 1), interleaved. Mirror images of the preprojectives.
pub fn preinjective_dims(n: ArrowCount, count: usize) -> Result<Vec<DimVector>> {
    orbit_series(
        n,
        count,
        (DimVector::new(1, 0), DimVector::new(n.get() as i64, 1)),
        CoxeterDirection::Inverse,
        "preinjective series is finite (three terms)",
    )
}

/// Whether a tree module whose pushdown has one-dimensional weight spaces
/// exists in dimension (x, y): true exactly when, with the smaller
/// coordinate first, 0 < max <= (n-1)*min + 1.
pub fn cover_thin_exists(n: ArrowCount, v: DimVector) -> bool {
    let m = (n.get() - 1) as i128;
    let (x, y) = (wide(v.x), wide(v.y));
    let bound = |small: i128, large: i128| large > 0 && large <= m * small + 1;
    (x <= y && bound(x, y)) || (y <= x && bound(y, x))
}
