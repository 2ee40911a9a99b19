//! Exact coefficient fields: prime fields F_p for p up to 2^16 and the
//! rationals. Everything downstream (matrices, Hom spaces, endomorphism
//! analysis) is generic over the `Field` trait and dispatched through
//! `FieldSpec` at the edges.

use crate::error::{Error, Result};
use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use rand::Rng;
use std::fmt;

/// All operations assume and preserve canonical representatives (for F_p:
/// values in 0..p); construct elements through `from_i64` or the field
/// ops, never from raw integers.
pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// Every element, `None` when infinite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn sample(&self, rng: &mut impl Rng) -> Self::Elem;
    fn name(&self) -> String;
    /// Whether two instances are literally the same field.
    fn same(&self, other: &Self) -> bool;
}

/// F_p, elements stored as canonical representatives 0..p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub const MAX_PRIME: u64 = 1 << 16;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    // Representatives are kept canonical (< p), so additive ops reduce with
    // a compare instead of a division; this is hot inside elimination.
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.p - a }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2); exponents are tiny with p < 2^16.
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.p)
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }

    fn sample(&self, rng: &mut impl Rng) -> u64 {
        rng.random_range(0..self.p)
    }

    fn name(&self) -> String {
        format!("F{}", self.p)
    }

    fn same(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

/// The rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn sample(&self, rng: &mut impl Rng) -> BigRational {
        // Small rationals are plenty for randomized probes.
        let num = rng.random_range(-9i64..=9);
        let den = rng.random_range(1i64..=4);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn name(&self) -> String {
        "Q".into()
    }

    fn same(&self, _other: &Self) -> bool {
        true
    }
}

/// Renders a rational without superfluous denominator.
pub fn rational_string(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else if a.denom().is_negative() {
        // BigRational keeps denominators positive, but be safe.
        format!("{}/{}", -a.numer(), -a.denom())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// A field choice as plain data, for CLI flags, JSON, and bindings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// Accepts "q" for the rationals and "f<p>" or a bare prime for F_p,
    /// case-insensitively.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let spec = match t.as_str() {
            "q" | "rational" | "rationals" => FieldSpec::Rationals,
            rest => {
                let digits = rest.strip_prefix('f').unwrap_or(rest);
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::UnrecognizedField(s.to_string()))?;
                PrimeField::new(p)?;
                FieldSpec::Prime(p)
            }
        };
        Ok(spec)
    }

    pub fn name(&self) -> String {
        match self {
            FieldSpec::Prime(p) => format!("F{p}"),
            FieldSpec::Rationals => "Q".into(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_construction() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(65521).is_ok());
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(PrimeField::new(4), Err(Error::NotPrime(4))));
        assert!(matches!(PrimeField::new(65537), Err(Error::PrimeTooLarge(_))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.inv(&3), Some(2));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-3), 2);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.order(), Some(5));
        assert_eq!(f.elements().unwrap().len(), 5);
    }

    #[test]
    fn every_nonzero_element_inverts() {
        for p in [2u64, 3, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                let b = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &b), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn rational_arithmetic() {
        let f = Rationals;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let sum = f.add(&half, &third);
        assert_eq!(sum, BigRational::new(BigInt::from(5), BigInt::from(6)));
        assert_eq!(f.inv(&sum).unwrap(), BigRational::new(BigInt::from(6), BigInt::from(5)));
        assert!(f.inv(&f.zero()).is_none());
        assert_eq!(rational_string(&sum), "5/6");
        assert_eq!(rational_string(&f.from_i64(-7)), "-7");
    }

    #[test]
    fn sampling_is_deterministic_under_a_seed() {
        let f = PrimeField::new(3).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let a: Vec<u64> = (0..16).map(|_| f.sample(&mut r1)).collect();
        let b: Vec<u64> = (0..16).map(|_| f.sample(&mut r2)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("f2").unwrap(), FieldSpec::Prime(2));
        assert_eq!(FieldSpec::parse("F3").unwrap(), FieldSpec::Prime(3));
        assert_eq!(FieldSpec::parse("5").unwrap(), FieldSpec::Prime(5));
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert!(FieldSpec::parse("f4").is_err());
        assert!(FieldSpec::parse("gf2").is_err());
        assert_eq!(FieldSpec::Prime(2).name(), "F2");
    }
}
