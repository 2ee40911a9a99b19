//! The canonical tree construction for a dimension pair (x, y) with
//! 2 <= x <= y <= (n-1)x + 1: a zigzag spine of x sources alternating along
//! edges 1 and n, with extra sink leaves distributed by a composition of y
//! into x parts. Small cases (x <= 1) are stars built directly. Dimension
//! pairs with x > y are handled by constructing the transpose and dualizing.

use super::{check_cover_arrows, LabeledSubtree, Word};
use crate::error::{Error, Result};
use crate::root_system::{cover_thin_exists, ArrowCount, DimVector};

/// How many sink neighbors each spine source gets: parts[i] >= 1, the first
/// x-1 parts at most n-1 (edge n is reserved for the spine), the last at
/// most n, summing to y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    fn validate_for(&self, n: ArrowCount, x: i64, y: i64) -> Result<()> {
        let parts = &self.0;
        if parts.len() as i64 != x {
            return Err(Error::InvalidComposition(format!(
                "{} parts for x = {x} sources",
                parts.len()
            )));
        }
        let last = parts.len() - 1;
        for (i, &p) in parts.iter().enumerate() {
            let cap = if i < last { n.get() as u64 - 1 } else { n.get() as u64 };
            if (p as u64) < 1 || p as u64 > cap {
                return Err(Error::InvalidComposition(format!(
                    "part {} = {p} violates 1 <= part <= {cap}",
                    i + 1
                )));
            }
        }
        let sum: i64 = parts.iter().map(|&p| p as i64).sum();
        if sum != y {
            return Err(Error::InvalidComposition(format!(
                "parts sum to {sum}, need y = {y}"
            )));
        }
        Ok(())
    }
}

fn check_zigzag_range(n: ArrowCount, x: i64, y: i64, x_min: i64) -> Result<()> {
    check_cover_arrows(n)?;
    if x < x_min {
        return Err(Error::InvalidDimensions(format!(
            "x = {x} violates {x_min} <= x"
        )));
    }
    if x > y {
        return Err(Error::InvalidDimensions(format!(
            "x = {x}, y = {y} violates x <= y"
        )));
    }
    let cap = (n.get() as i64 - 1) * x + 1;
    if y > cap {
        return Err(Error::InvalidDimensions(format!(
            "y = {y} violates y <= (n-1)x + 1 = {cap}"
        )));
    }
    Ok(())
}

/// The front-loaded composition: give each source as many sinks as its cap
/// allows while leaving at least one for every later source.
pub fn default_composition(n: ArrowCount, x: i64, y: i64) -> Result<Composition> {
    check_zigzag_range(n, x, y, 1)?;
    if x > u32::MAX as i64 {
        return Err(Error::InvalidDimensions(format!("x = {x} is out of range")));
    }
    let mut parts = Vec::with_capacity(x as usize);
    let mut rem = y;
    for i in 0..x {
        let slots_after = x - 1 - i;
        let cap = if slots_after > 0 { n.get() as i64 - 1 } else { n.get() as i64 };
        let p = cap.min(rem - slots_after);
        parts.push(p as u32);
        rem -= p;
    }
    Ok(Composition(parts))
}

/// Builds the zigzag tree for 2 <= x <= y <= (n-1)x + 1 with the given sink
/// distribution. Spine sinks are the even alternating words in letters 1
/// and n; source i hangs off spine sink i by edge 1 and reaches spine sink
/// i+1 by edge n; its remaining sinks use edges 2, 3, ....
pub fn canonical_construction(
    n: ArrowCount,
    x: i64,
    y: i64,
    composition: &Composition,
) -> Result<LabeledSubtree> {
    check_zigzag_range(n, x, y, 2)?;
    composition.validate_for(n, x, y)?;
    let last_letter = n.get() as u8;
    let mut vertices = Vec::new();
    let mut spine_sink = Word::base();
    for (i, &part) in composition.parts().iter().enumerate() {
        vertices.push(spine_sink.clone());
        let source = spine_sink.step(1);
        vertices.push(source.clone());
        for extra in 2..=part as u8 {
            vertices.push(source.step(extra));
        }
        if i + 1 < composition.parts().len() {
            spine_sink = source.step(last_letter);
        }
    }
    LabeledSubtree::from_vertices(n, vertices)
}

/// Stars for the small dimension pairs x <= 1: a single sink for (0, 1), a
/// single source for (1, 0), and for (1, y) a source joined to y sinks by
/// edges 1..=y.
pub fn small_case_construction(n: ArrowCount, v: DimVector) -> Result<LabeledSubtree> {
    check_cover_arrows(n)?;
    let bad = || {
        Error::InvalidDimensions(format!(
            "no small-case tree for ({}, {}) at n = {}",
            v.x,
            v.y,
            n.get()
        ))
    };
    match (v.x, v.y) {
        (0, 1) => LabeledSubtree::from_vertices(n, [Word::base()]),
        (1, 0) => LabeledSubtree::from_vertices(n, [Word::base().step(1)]),
        (1, y) if y >= 1 && y <= n.get() as i64 => {
            let source = Word::base().step(1);
            let mut vertices = vec![Word::base(), source.clone()];
            for l in 2..=y as u8 {
                vertices.push(source.step(l));
            }
            LabeledSubtree::from_vertices(n, vertices)
        }
        _ => Err(bad()),
    }
}

/// One canonical representative in dimension v, for any v where a cover-thin
/// tree exists: small cases and zigzags directly, transposed pairs through
/// the duality. A composition, when given, applies to the construction that
/// is actually built (the transposed one when x > y).
pub fn construct_for_root(
    n: ArrowCount,
    v: DimVector,
    composition: Option<&Composition>,
) -> Result<LabeledSubtree> {
    check_cover_arrows(n)?;
    if !cover_thin_exists(n, v) {
        return Err(Error::InvalidDimensions(format!(
            "no cover-thin module in dimension ({}, {}) at n = {}",
            v.x,
            v.y,
            n.get()
        )));
    }
    if v.x > v.y {
        return Ok(construct_for_root(n, v.swap(), composition)?.dualize());
    }
    if v.x <= 1 {
        if composition.is_some() {
            return Err(Error::InvalidComposition(
                "small-case constructions take no composition".into(),
            ));
        }
        small_case_construction(n, v)
    } else {
        let default;
        let comp = match composition {
            Some(c) => c,
            None => {
                default = default_composition(n, v.x, v.y)?;
                &default
            }
        };
        canonical_construction(n, v.x, v.y, comp)
    }
}
