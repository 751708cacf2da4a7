//! Exact arithmetic in the ring of integers of a real quadratic field
//! `Q(sqrt(d))`, fundamental units via the continued fraction of
//! `sqrt(d)`, and decomposition of units as powers of the fundamental
//! unit.
//!
//! Elements are stored uniformly as `(a + b*sqrt(d))/2` with the parity
//! invariant: `a ≡ b (mod 2)` when `d ≡ 1 (mod 4)`, both even otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

use crate::arith;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadFieldError {
    #[error("d must be a squarefree integer >= 2")]
    BadDiscriminant,
    #[error("coordinates violate the parity invariant for d = {0}")]
    BadParity(BigInt),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("element is not a unit")]
    NotAUnit,
}

/// A real quadratic field `Q(sqrt(d))`, `d` squarefree and at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    d: BigInt,
}

impl QuadraticField {
    pub fn new(d: BigInt) -> Result<Self, QuadFieldError> {
        if d < BigInt::from(2) {
            return Err(QuadFieldError::BadDiscriminant);
        }
        let (sf, _) = arith::squarefree_part(&d).map_err(|_| QuadFieldError::BadDiscriminant)?;
        if sf != d {
            return Err(QuadFieldError::BadDiscriminant);
        }
        Ok(QuadraticField { d })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    fn half_integral(&self) -> bool {
        (&self.d % 4u32) == BigInt::one()
    }

    pub fn zero(&self) -> QuadInt {
        QuadInt {
            d: self.d.clone(),
            a: BigInt::zero(),
            b: BigInt::zero(),
        }
    }

    pub fn one(&self) -> QuadInt {
        QuadInt {
            d: self.d.clone(),
            a: BigInt::from(2),
            b: BigInt::zero(),
        }
    }
}

/// The quadratic integer `(a + b*sqrt(d))/2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    d: BigInt,
    a: BigInt,
    b: BigInt,
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/2", self.a, self.b, self.d)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_even() && self.b.is_even() {
            write!(f, "{} + {}*sqrt({})", &self.a / 2, &self.b / 2, self.d)
        } else {
            write!(f, "({} + {}*sqrt({}))/2", self.a, self.b, self.d)
        }
    }
}

impl QuadInt {
    /// `(a + b*sqrt(d))/2`; rejects coordinates outside the ring of
    /// integers.
    pub fn new(field: &QuadraticField, a: BigInt, b: BigInt) -> Result<Self, QuadFieldError> {
        let ok = if field.half_integral() {
            (&a - &b).is_even()
        } else {
            a.is_even() && b.is_even()
        };
        if !ok {
            return Err(QuadFieldError::BadParity(field.d.clone()));
        }
        Ok(QuadInt {
            d: field.d.clone(),
            a,
            b,
        })
    }

    /// The integer `a + b*sqrt(d)` (no shared denominator).
    pub fn from_pair(field: &QuadraticField, a: BigInt, b: BigInt) -> Self {
        QuadInt {
            d: field.d.clone(),
            a: a * 2,
            b: b * 2,
        }
    }

    pub fn from_int(field: &QuadraticField, v: BigInt) -> Self {
        QuadInt {
            d: field.d.clone(),
            a: v * 2,
            b: BigInt::zero(),
        }
    }

    pub fn field(&self) -> QuadraticField {
        QuadraticField { d: self.d.clone() }
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// Numerator coordinates over the shared denominator 2.
    pub fn coords(&self) -> (&BigInt, &BigInt) {
        (&self.a, &self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a == BigInt::from(2) && self.b.is_zero()
    }

    fn check_field(&self, other: &QuadInt) -> Result<(), QuadFieldError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(QuadFieldError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &QuadInt) -> Result<QuadInt, QuadFieldError> {
        self.check_field(other)?;
        Ok(QuadInt {
            d: self.d.clone(),
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        })
    }

    pub fn sub(&self, other: &QuadInt) -> Result<QuadInt, QuadFieldError> {
        self.check_field(other)?;
        Ok(QuadInt {
            d: self.d.clone(),
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        })
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt {
            d: self.d.clone(),
            a: -&self.a,
            b: -&self.b,
        }
    }

    /// Galois conjugate `(a - b*sqrt(d))/2`.
    pub fn conj(&self) -> QuadInt {
        QuadInt {
            d: self.d.clone(),
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub fn mul(&self, other: &QuadInt) -> Result<QuadInt, QuadFieldError> {
        self.check_field(other)?;
        // ((a1 + b1 s)/2)((a2 + b2 s)/2) = ((a1a2 + b1b2 d) + (a1b2 + a2b1) s)/4
        // both numerators are even by the parity invariant
        let na = &self.a * &other.a + &self.b * &other.b * &self.d;
        let nb = &self.a * &other.b + &other.a * &self.b;
        debug_assert!(na.is_even() && nb.is_even());
        Ok(QuadInt {
            d: self.d.clone(),
            a: na / 2,
            b: nb / 2,
        })
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        QuadInt {
            d: self.d.clone(),
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Norm to `Q`: `x * conj(x) = (a^2 - d b^2)/4`. Integral elements
    /// have integral norm.
    pub fn norm(&self) -> BigInt {
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        debug_assert!((&n % 4u32).is_zero());
        n / 4
    }

    /// Trace to `Q`: `x + conj(x) = a`.
    pub fn trace(&self) -> BigInt {
        self.a.clone()
    }

    pub fn pow(&self, mut e: u64) -> QuadInt {
        let field = self.field();
        let mut acc = field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Sign under the embedding with `sqrt(d) > 0`.
    pub fn sign(&self) -> Ordering {
        sign_of_pair(&self.a, &self.b, &self.d)
    }

    /// Exact comparison under the embedding with `sqrt(d) > 0`.
    pub fn cmp_embedding(&self, other: &QuadInt) -> Ordering {
        sign_of_pair(&(&self.a - &other.a), &(&self.b - &other.b), &self.d)
    }

    /// `x^{-1}` for a unit: the conjugate, up to the sign of the norm.
    pub fn inv_unit(&self) -> Result<QuadInt, QuadFieldError> {
        let n = self.norm();
        if n == BigInt::one() {
            Ok(self.conj())
        } else if n == BigInt::from(-1) {
            Ok(self.conj().neg())
        } else {
            Err(QuadFieldError::NotAUnit)
        }
    }
}

/// Sign of `a + b*sqrt(d)` as a real number, `sqrt(d) > 0`.
fn sign_of_pair(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    match (a.sign(), b.sign()) {
        (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => Ordering::Equal,
        (num_bigint::Sign::Minus, num_bigint::Sign::Minus) => Ordering::Less,
        (num_bigint::Sign::Minus, num_bigint::Sign::NoSign) => Ordering::Less,
        (num_bigint::Sign::NoSign, num_bigint::Sign::Minus) => Ordering::Less,
        (num_bigint::Sign::Plus, num_bigint::Sign::Plus) => Ordering::Greater,
        (num_bigint::Sign::Plus, num_bigint::Sign::NoSign) => Ordering::Greater,
        (num_bigint::Sign::NoSign, num_bigint::Sign::Plus) => Ordering::Greater,
        (num_bigint::Sign::Plus, num_bigint::Sign::Minus) => {
            // a > 0, b < 0: positive iff a^2 > d b^2
            (a * a).cmp(&(b * b * d))
        }
        (num_bigint::Sign::Minus, num_bigint::Sign::Plus) => {
            // a < 0, b > 0: positive iff d b^2 > a^2
            (b * b * d).cmp(&(a * a))
        }
    }
}

/// The fundamental unit of the ring of integers: the least unit greater
/// than 1 under the embedding `sqrt(d) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub elem: QuadInt,
    /// Trace to `Q`.
    pub t: BigInt,
    /// Norm, `+1` or `-1`.
    pub nrm: i8,
}

/// Minimal solution of `x^2 - d y^2 = ±1` with `y > 0`, via the continued
/// fraction of `sqrt(d)`. The sign is `(-1)^r` for period length `r`.
fn pell_fundamental(d: &BigInt) -> (BigInt, BigInt, i8) {
    let a0 = d.sqrt();
    debug_assert!(&a0 * &a0 != *d, "d must not be a square");
    let mut m = BigInt::zero();
    let mut q = BigInt::one();
    let mut a = a0.clone();
    // convergents h/k, starting at h_0/k_0 = a0/1
    let mut h_prev = BigInt::one();
    let mut h = a0.clone();
    let mut k_prev = BigInt::zero();
    let mut k = BigInt::one();
    let mut i: u64 = 0;
    loop {
        i += 1;
        m = &a * &q - &m;
        q = (d - &m * &m) / &q;
        if q.is_one() {
            // period length i; the convergent through a_{i-1} solves
            // h^2 - d k^2 = (-1)^i
            let sign = if i % 2 == 0 { 1 } else { -1 };
            return (h, k, sign);
        }
        a = (&a0 + &m) / &q;
        let h_new = &a * &h + &h_prev;
        let k_new = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_new);
        k_prev = std::mem::replace(&mut k, k_new);
    }
}

/// Fundamental unit of `Q(sqrt(d))`, found from the minimal solution of
/// the ±1 Pell equation. For `d ≡ 1 (mod 4)` the unit of `Z[sqrt(d)]`
/// may be the cube of a half-integral unit; that cube root is recovered
/// exactly from the trace.
pub fn fundamental_unit(field: &QuadraticField) -> FundamentalUnit {
    let d = &field.d;
    let (x, y, sign) = pell_fundamental(d);
    if field.half_integral() {
        // Look for eps = (a + b sqrt(d))/2 with eps^3 = x + y sqrt(d).
        // Traces give a^3 - 3*N*a = 2x with N = sign (a real cube root
        // keeps the norm's sign).
        let target = BigInt::from(2) * &x;
        let approx = target.cbrt();
        for delta in -2i64..=2 {
            let cand = &approx + BigInt::from(delta);
            if !cand.is_positive() {
                continue;
            }
            if &cand * &cand * &cand - BigInt::from(3 * sign as i64) * &cand == target {
                let b2_num = &cand * &cand - BigInt::from(4 * sign as i64);
                if (&b2_num % d).is_zero() {
                    if let Some(b) = arith::is_perfect_square(&(&b2_num / d)) {
                        if cand.is_odd() && b.is_odd() {
                            let elem = QuadInt::new(field, cand.clone(), b).unwrap();
                            debug_assert_eq!(elem.pow(3).coords().0, &(&x * 2));
                            return FundamentalUnit {
                                t: elem.trace(),
                                nrm: sign,
                                elem,
                            };
                        }
                    }
                }
            }
        }
    }
    let elem = QuadInt::from_pair(field, x, y);
    FundamentalUnit {
        t: elem.trace(),
        nrm: sign,
        elem,
    }
}

/// Writes a unit as `sign * eps^exponent`, verified by exact
/// multiplication. Returns `None` when the element is not of that form
/// (cannot happen for a true fundamental unit, but the check is explicit).
pub fn express_as_unit_power(
    x: &QuadInt,
    eps: &FundamentalUnit,
) -> Result<Option<(i8, i64)>, QuadFieldError> {
    let n = x.norm();
    if !(n.clone().abs().is_one()) {
        return Err(QuadFieldError::NotAUnit);
    }
    x.check_field(&eps.elem)?;
    let field = x.field();
    let one = field.one();

    let mut sign: i8 = 1;
    let mut cur = x.clone();
    if cur.sign() == Ordering::Less {
        sign = -1;
        cur = cur.neg();
    }
    let mut exp_sign: i64 = 1;
    if cur.cmp_embedding(&one) == Ordering::Less {
        exp_sign = -1;
        cur = cur.inv_unit()?;
    }
    let eps_inv = eps.elem.inv_unit()?;
    let mut k: i64 = 0;
    loop {
        match cur.cmp_embedding(&one) {
            Ordering::Equal => return Ok(Some((sign, exp_sign * k))),
            Ordering::Less => return Ok(None),
            Ordering::Greater => {
                cur = cur.mul(&eps_inv)?;
                k += 1;
            }
        }
    }
}

/// Exact square root in the field, when one exists. The input must be
/// totally positive (or zero); a square in a real field always is.
/// The root of an integral element is integral, so the result is a
/// `QuadInt`.
pub fn sqrt_in_field(x: &QuadInt) -> Option<QuadInt> {
    if x.is_zero() {
        return Some(x.clone());
    }
    if x.sign() != Ordering::Greater || x.conj().sign() != Ordering::Greater {
        return None;
    }
    let field = x.field();
    let d = &x.d;
    // gamma = 2*beta = p + q*sqrt(d) integral with gamma^2 = 4x = U + V*sqrt(d)
    let u_c = BigInt::from(2) * &x.a;
    let v_c = BigInt::from(2) * &x.b;
    // norm of gamma^2 is a square: U^2 - d V^2 = (p^2 - d q^2)^2
    let n = &u_c * &u_c - d * &v_c * &v_c;
    let s = arith::is_perfect_square(&n)?;

    let check = |p: BigInt, q: BigInt| -> Option<QuadInt> {
        let cand = QuadInt::new(&field, p, q).ok()?;
        if cand.mul(&cand).unwrap() == *x {
            Some(cand)
        } else {
            None
        }
    };

    if v_c.is_zero() {
        // rational or pure sqrt(d) multiple
        if let Some(p) = arith::is_perfect_square(&u_c) {
            if let Some(r) = check(p, BigInt::zero()) {
                return Some(r);
            }
        }
        if (&u_c % d).is_zero() {
            if let Some(q) = arith::is_perfect_square(&(&u_c / d)) {
                if let Some(r) = check(BigInt::zero(), q) {
                    return Some(r);
                }
            }
        }
        return None;
    }

    // p^2 = (U + s)/2 or (U - s)/2, then q = V / (2p)
    for branch in [&u_c + &s, &u_c - &s] {
        if branch.is_negative() || branch.is_odd() {
            continue;
        }
        let half = branch / 2;
        if let Some(p) = arith::is_perfect_square(&half) {
            if p.is_zero() {
                continue;
            }
            let two_p = BigInt::from(2) * &p;
            if (&v_c % &two_p).is_zero() {
                let q = &v_c / &two_p;
                if let Some(r) = check(p, q) {
                    return Some(r);
                }
            }
        }
    }
    None
}

#[derive(Serialize, Deserialize)]
struct QuadIntRepr {
    a: String,
    b: String,
    d: String,
}

impl Serialize for QuadInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadIntRepr {
            a: self.a.to_string(),
            b: self.b.to_string(),
            d: self.d.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = QuadIntRepr::deserialize(deserializer)?;
        let parse = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        let d = parse(&repr.d)?;
        let field = QuadraticField::new(d).map_err(D::Error::custom)?;
        QuadInt::new(&field, parse(&repr.a)?, parse(&repr.b)?).map_err(D::Error::custom)
    }
}
