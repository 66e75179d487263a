//! Exact scalars: arbitrary-precision rationals plus the real quadratic
//! extensions needed by subset states.
//!
//! Subset-state amplitudes are of the form q·√d for rational q and
//! squarefree integer d, so chains over them live in ℚ(√d₁, √d₂, …).
//! [`Radical`] represents such numbers exactly as a map from squarefree
//! radicands to rational coefficients. Since {√d : d squarefree} is linearly
//! independent over ℚ, a [`Radical`] is zero iff every coefficient is zero,
//! which keeps exact-zero tests symbolic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| Error::InvalidParameter(format!("cannot parse rational {s:?}: {e}")))
}

/// Renders a rational as "p/q" ("p" when the denominator is one).
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Splits n = s²·d with d squarefree; returns (s, d).
fn squarefree_split(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    d *= m; // leftover prime
    (s, d)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// An exact real of the form Σᵢ qᵢ·√dᵢ with qᵢ ∈ ℚ and dᵢ squarefree.
#[derive(Clone, PartialEq, Eq)]
pub struct Radical {
    // radicand (squarefree, >= 1) -> rational coefficient; no zero coefficients stored
    terms: BTreeMap<u64, Rat>,
}

impl Radical {
    pub fn zero() -> Self {
        Radical {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Radical::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Radical { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Radical::from_rat(rat_int(n))
    }

    /// q·√d for arbitrary (not necessarily squarefree) d ≥ 1.
    pub fn sqrt_term(q: Rat, d: u64) -> Self {
        assert!(d >= 1, "radicand must be positive");
        let (s, d) = squarefree_split(d);
        let coeff = q * Rat::from(BigInt::from(s));
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(d, coeff);
        }
        Radical { terms }
    }

    /// √(p/q) for a nonnegative rational: √(p/q) = √(pq)/q.
    pub fn sqrt_of_rat(r: &Rat) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "square root of negative rational {r}"
            )));
        }
        if r.is_zero() {
            return Ok(Radical::zero());
        }
        let p = r.numer().to_u64().ok_or_else(|| {
            Error::InvalidParameter(format!("radicand numerator too large: {r}"))
        })?;
        let q = r.denom().to_u64().ok_or_else(|| {
            Error::InvalidParameter(format!("radicand denominator too large: {r}"))
        })?;
        let pq = p
            .checked_mul(q)
            .ok_or_else(|| Error::InvalidParameter(format!("radicand overflow: {r}")))?;
        Ok(Radical::sqrt_term(
            Rat::new(BigInt::one(), BigInt::from(q)),
            pq,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if this number lies in ℚ.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(q) = self.terms.get(&1) {
                return Some(q.clone());
            }
        }
        None
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Radical::zero();
        }
        Radical {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (*d, c * q))
                .collect(),
        }
    }

    fn add_term(&mut self, d: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| rat_to_f64(c) * (*d as f64).sqrt())
            .sum()
    }

    /// Exact sign. Zero is symbolic (all coefficients zero); otherwise the
    /// sign is resolved by interval arithmetic at increasing precision.
    pub fn sign(&self) -> Ordering {
        if self.terms.is_empty() {
            return Ordering::Equal;
        }
        if self.terms.len() == 1 {
            let (_, c) = self.terms.iter().next().unwrap();
            return if c.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        // Σ q·√d with at least two distinct radicands is irrational, hence
        // nonzero; intervals shrink until 0 is excluded.
        let mut digits = 20u32;
        loop {
            let (lo, hi) = self.bounds(digits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            digits *= 2;
            assert!(digits <= 20_000, "sign refinement failed to converge");
        }
    }

    /// Rational interval [lo, hi] containing the value, at roughly `digits`
    /// decimal digits of precision.
    fn bounds(&self, digits: u32) -> (Rat, Rat) {
        let scale = BigUint::from(10u32).pow(digits);
        let scale_sq = &scale * &scale;
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (d, c) in &self.terms {
            // isqrt(d·10^{2k}) = floor(√d·10^k)
            let root = (BigUint::from(*d) * &scale_sq).sqrt();
            let r_lo = Rat::new(BigInt::from(root.clone()), BigInt::from(scale.clone()));
            let r_hi = Rat::new(
                BigInt::from(root + BigUint::one()),
                BigInt::from(scale.clone()),
            );
            if c.is_positive() {
                lo += c * &r_lo;
                hi += c * &r_hi;
            } else {
                lo += c * &r_hi;
                hi += c * &r_lo;
            }
        }
        (lo, hi)
    }

    pub fn cmp_rat(&self, q: &Rat) -> Ordering {
        (self.clone() - Radical::from_rat(q.clone())).sign()
    }

    /// The (squarefree radicand, rational coefficient) terms.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rat)> {
        self.terms.iter().map(|(d, q)| (*d, q))
    }

    pub fn eq_rat(&self, q: &Rat) -> bool {
        self.as_rat().map(|v| &v == q).unwrap_or(false)
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *d == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*sqrt({d})")?;
            }
        }
        Ok(())
    }
}

impl Add for Radical {
    type Output = Radical;
    fn add(mut self, rhs: Radical) -> Radical {
        for (d, c) in rhs.terms {
            self.add_term(d, c);
        }
        self
    }
}

impl AddAssign for Radical {
    fn add_assign(&mut self, rhs: Radical) {
        for (d, c) in rhs.terms {
            self.add_term(d, c);
        }
    }
}

impl Sub for Radical {
    type Output = Radical;
    fn sub(mut self, rhs: Radical) -> Radical {
        for (d, c) in rhs.terms {
            self.add_term(d, -c);
        }
        self
    }
}

impl SubAssign for Radical {
    fn sub_assign(&mut self, rhs: Radical) {
        for (d, c) in rhs.terms {
            self.add_term(d, -c);
        }
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical {
            terms: self.terms.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl Mul for &Radical {
    type Output = Radical;
    fn mul(self, rhs: &Radical) -> Radical {
        let mut out = Radical::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                // √d1·√d2 = g·√(d1d2/g²) with g = gcd; the product of coprime
                // squarefree numbers is squarefree.
                let g = gcd_u64(*d1, *d2);
                let d = (*d1 / g) * (*d2 / g);
                let coeff = c1 * c2 * Rat::from(BigInt::from(g));
                out.add_term(d, coeff);
            }
        }
        out
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, rhs: Radical) -> Radical {
        &self * &rhs
    }
}

/// True iff the rational is the square of a rational (so its square root is
/// representable exactly as "p/q").
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rat::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_split_examples() {
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(4), (2, 1));
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(50), (5, 2));
        assert_eq!(squarefree_split(97), (1, 97));
    }

    #[test]
    fn radical_arithmetic() {
        // (1 + √2)(1 − √2) = −1
        let a = Radical::from_int(1) + Radical::sqrt_term(Rat::one(), 2);
        let b = Radical::from_int(1) - Radical::sqrt_term(Rat::one(), 2);
        let prod = &a * &b;
        assert!(prod.eq_rat(&rat_int(-1)));

        // √8 = 2√2, so √8·√2 = 4
        let c = Radical::sqrt_term(Rat::one(), 8);
        let d = Radical::sqrt_term(Rat::one(), 2);
        assert!((&c * &d).eq_rat(&rat_int(4)));
    }

    #[test]
    fn sqrt_of_rat_normalizes() {
        // √(9/4) = 3/2
        let r = Radical::sqrt_of_rat(&rat(9, 4)).unwrap();
        assert!(r.eq_rat(&rat(3, 2)));
        // √(1/50)² = 1/50
        let s = Radical::sqrt_of_rat(&rat(1, 50)).unwrap();
        assert!((&s * &s).eq_rat(&rat(1, 50)));
    }

    #[test]
    fn sign_of_close_values() {
        // √2 + √3 − √(5 + 2√6) = 0 symbolically is not representable here,
        // but nearby differences must still resolve: 7/5 < √2 < 3/2.
        let x = Radical::sqrt_term(Rat::one(), 2) - Radical::from_rat(rat(7, 5));
        assert_eq!(x.sign(), Ordering::Greater);
        let y = Radical::sqrt_term(Rat::one(), 2) - Radical::from_rat(rat(3, 2));
        assert_eq!(y.sign(), Ordering::Less);
        // multi-term: √2 − √3 + 1/10 < 0
        let z = Radical::sqrt_term(Rat::one(), 2) - Radical::sqrt_term(Rat::one(), 3)
            + Radical::from_rat(rat(1, 10));
        assert_eq!(z.sign(), Ordering::Less);
    }

    #[test]
    fn exact_rational_square_roots() {
        assert_eq!(rat_sqrt_exact(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(rat_sqrt_exact(&rat(1, 2)), None);
        assert_eq!(rat_sqrt_exact(&rat_int(0)), Some(rat_int(0)));
    }
}
