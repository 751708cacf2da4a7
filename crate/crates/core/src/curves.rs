//! Quartic curves `y^2 = A x^4 - 4`, their Weierstrass targets
//! `Y^2 = X^3 + a4 X`, the degree-2 maps between them, the exact rational
//! group law, root-number case formulas, and the correspondence between
//! square sequence terms and integral points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::quadfield::{self, QuadraticField};
use crate::sequences::{LucasParams, SquareClass};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("point does not satisfy the curve equation")]
    OffCurve,
    #[error("t^2 + 4 is not d times a square")]
    BadTwist,
    #[error("parameter out of range: {0}")]
    BadParameter(&'static str),
}

/// Which member of the quartic family a spec came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "curve", rename_all = "kebab-case")]
pub enum QuarticProvenance {
    C1 {
        #[serde(with = "crate::serde_bigint")]
        t: BigInt,
    },
    C2 {
        #[serde(with = "crate::serde_bigint")]
        t: BigInt,
        #[serde(with = "crate::serde_bigint")]
        d: BigInt,
    },
}

/// The curve `y^2 = A x^4 - 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuarticCurveSpec {
    #[serde(with = "crate::serde_bigint")]
    pub a: BigInt,
    pub provenance: QuarticProvenance,
}

impl QuarticCurveSpec {
    /// `C1: y^2 = (t^2+4) x^4 - 4`.
    pub fn c1(t: BigInt) -> Result<Self, CurveError> {
        if !t.is_positive() {
            return Err(CurveError::BadParameter("t must be positive"));
        }
        let a = &t * &t + 4;
        Ok(QuarticCurveSpec {
            a,
            provenance: QuarticProvenance::C1 { t },
        })
    }

    /// `C2: y^2 = d^2 (t^2+4) x^4 - 4`, requiring `t^2+4 = d z^2`.
    pub fn c2(t: BigInt, d: BigInt) -> Result<Self, CurveError> {
        if !t.is_positive() {
            return Err(CurveError::BadParameter("t must be positive"));
        }
        let disc: BigInt = &t * &t + 4;
        if (&disc % &d).is_zero() {
            if arith::is_perfect_square(&(&disc / &d)).is_some() {
                let a = &d * &d * &disc;
                return Ok(QuarticCurveSpec {
                    a,
                    provenance: QuarticProvenance::C2 { t, d },
                });
            }
        }
        Err(CurveError::BadTwist)
    }

    /// Exact equation check; the point at infinity is not on the affine
    /// quartic model.
    pub fn contains(&self, pt: &RationalPoint) -> bool {
        match pt {
            RationalPoint::Infinity => false,
            RationalPoint::Affine(x, y) => {
                let a = BigRational::from(self.a.clone());
                let four = BigRational::from(BigInt::from(4));
                y * y == a * x * x * x * x - four
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "curve", rename_all = "kebab-case")]
pub enum WeierstrassProvenance {
    E1 {
        #[serde(with = "crate::serde_bigint")]
        t: BigInt,
    },
    E2 {
        #[serde(with = "crate::serde_bigint")]
        t: BigInt,
        #[serde(with = "crate::serde_bigint")]
        d: BigInt,
    },
    E3 {
        #[serde(with = "crate::serde_bigint")]
        t: BigInt,
    },
}

/// The curve `Y^2 = X^3 + a4 X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeierstrassCurveSpec {
    #[serde(with = "crate::serde_bigint")]
    pub a4: BigInt,
    pub provenance: WeierstrassProvenance,
}

impl WeierstrassCurveSpec {
    /// `E1: Y^2 = X^3 - 4(t^2+4) X`.
    pub fn e1(t: BigInt) -> Self {
        let a4 = BigInt::from(-4) * (&t * &t + 4);
        WeierstrassCurveSpec {
            a4,
            provenance: WeierstrassProvenance::E1 { t },
        }
    }

    /// `E2: Y^2 = X^3 - 4 d^2 (t^2+4) X`.
    pub fn e2(t: BigInt, d: BigInt) -> Self {
        let a4 = BigInt::from(-4) * &d * &d * (&t * &t + 4);
        WeierstrassCurveSpec {
            a4,
            provenance: WeierstrassProvenance::E2 { t, d },
        }
    }

    /// `E3: Y^2 = X^3 - 4(t^2+4)^3 X`.
    pub fn e3(t: BigInt) -> Self {
        let disc = &t * &t + 4;
        let a4 = BigInt::from(-4) * &disc * &disc * &disc;
        WeierstrassCurveSpec {
            a4,
            provenance: WeierstrassProvenance::E3 { t },
        }
    }

    pub fn contains(&self, pt: &RationalPoint) -> bool {
        match pt {
            RationalPoint::Infinity => true,
            RationalPoint::Affine(x, y) => {
                let a4 = BigRational::from(self.a4.clone());
                y * y == x * x * x + a4 * x
            }
        }
    }
}

/// A point with exact rational coordinates, or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalPoint {
    Infinity,
    Affine(BigRational, BigRational),
}

impl Serialize for RationalPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        match self {
            RationalPoint::Infinity => map.serialize_entry("point", "infinity")?,
            RationalPoint::Affine(x, y) => {
                map.serialize_entry("x", &x.to_string())?;
                map.serialize_entry("y", &y.to_string())?;
            }
        }
        map.end()
    }
}

impl RationalPoint {
    pub fn affine_int(x: i64, y: i64) -> Self {
        RationalPoint::Affine(
            BigRational::from(BigInt::from(x)),
            BigRational::from(BigInt::from(y)),
        )
    }

    pub fn affine_big(x: BigInt, y: BigInt) -> Self {
        RationalPoint::Affine(BigRational::from(x), BigRational::from(y))
    }
}

/// Which of the two degree-2 maps to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiIndex {
    One,
    Two,
}

/// `phi_1(x,y) = ((t^2+4) x^2, (t^2+4) x y)` from `C1` to `E1`;
/// `phi_2` is the same with `d^2 (t^2+4)`. The image is checked against
/// the target equation.
pub fn phi_map(
    which: PhiIndex,
    t: &BigInt,
    d: &BigInt,
    pt: &RationalPoint,
) -> Result<RationalPoint, CurveError> {
    let (source, target, scale) = match which {
        PhiIndex::One => {
            let c = QuarticCurveSpec::c1(t.clone())?;
            let e = WeierstrassCurveSpec::e1(t.clone());
            let s = t * t + 4;
            (c, e, s)
        }
        PhiIndex::Two => {
            let c = QuarticCurveSpec::c2(t.clone(), d.clone())?;
            let e = WeierstrassCurveSpec::e2(t.clone(), d.clone());
            let s = d * d * (t * t + 4);
            (c, e, s)
        }
    };
    if !source.contains(pt) {
        return Err(CurveError::OffCurve);
    }
    let (x, y) = match pt {
        RationalPoint::Affine(x, y) => (x, y),
        RationalPoint::Infinity => unreachable!("infinity is never on the quartic model"),
    };
    let s = BigRational::from(scale);
    let image = RationalPoint::Affine(&s * x * x, &s * x * y);
    debug_assert!(target.contains(&image));
    if !target.contains(&image) {
        return Err(CurveError::OffCurve);
    }
    Ok(image)
}

/// The isomorphism `E2 -> E3`, `(X, Y) -> (x0^2 X, x0^3 Y)` where
/// `t^2 + 4 = x0^2 d`.
pub fn psi_map(t: &BigInt, d: &BigInt, pt: &RationalPoint) -> Result<RationalPoint, CurveError> {
    let disc: BigInt = t * t + 4;
    if !(&disc % d).is_zero() {
        return Err(CurveError::BadTwist);
    }
    let x0 = arith::is_perfect_square(&(&disc / d)).ok_or(CurveError::BadTwist)?;
    let e2 = WeierstrassCurveSpec::e2(t.clone(), d.clone());
    let e3 = WeierstrassCurveSpec::e3(t.clone());
    if !e2.contains(pt) {
        return Err(CurveError::OffCurve);
    }
    let image = match pt {
        RationalPoint::Infinity => RationalPoint::Infinity,
        RationalPoint::Affine(x, y) => {
            let x0sq = BigRational::from(&x0 * &x0);
            let x0cu = BigRational::from(&x0 * &x0 * &x0);
            RationalPoint::Affine(x0sq * x, x0cu * y)
        }
    };
    debug_assert!(e3.contains(&image));
    Ok(image)
}

/// Chord-tangent addition on `Y^2 = X^3 + a4 X` over the exact
/// rationals. Inputs must lie on the curve.
pub fn ec_add(
    spec: &WeierstrassCurveSpec,
    p: &RationalPoint,
    q: &RationalPoint,
) -> Result<RationalPoint, CurveError> {
    if !spec.contains(p) || !spec.contains(q) {
        return Err(CurveError::OffCurve);
    }
    let (x1, y1) = match p {
        RationalPoint::Infinity => return Ok(q.clone()),
        RationalPoint::Affine(x, y) => (x, y),
    };
    let (x2, y2) = match q {
        RationalPoint::Infinity => return Ok(p.clone()),
        RationalPoint::Affine(x, y) => (x, y),
    };
    let lambda = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return Ok(RationalPoint::Infinity);
        }
        // tangent: (3 x^2 + a4) / (2 y)
        let three = BigRational::from(BigInt::from(3));
        let a4 = BigRational::from(spec.a4.clone());
        (three * x1 * x1 + a4) / (BigRational::from(BigInt::from(2)) * y1)
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = &lambda * &lambda - x1 - x2;
    let y3 = lambda * (x1 - &x3) - y1;
    Ok(RationalPoint::Affine(x3, y3))
}

pub fn ec_neg(pt: &RationalPoint) -> RationalPoint {
    match pt {
        RationalPoint::Infinity => RationalPoint::Infinity,
        RationalPoint::Affine(x, y) => RationalPoint::Affine(x.clone(), -y),
    }
}

/// The precondition of the torsion statement: `4 d^2 (t^2+4)` must not
/// be a perfect square (equivalent to `t^2+4` non-square).
pub fn torsion_preconditions(t: &BigInt, d: &BigInt) -> bool {
    let v = BigInt::from(4) * d * d * (t * t + 4);
    arith::is_perfect_square(&v).is_none()
}

/// Root number of `E1`: `-1` unless `t ≡ 0 (mod 8)`.
pub fn root_number_e1(t: u64) -> i8 {
    if t % 8 == 0 {
        1
    } else {
        -1
    }
}

/// Root number of `E3`: `(-1)^t`.
pub fn root_number_e3(t: u64) -> i8 {
    if t % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Consistency report for the `t ≡ 0 (mod 8)` root-number derivation:
/// `(t/2)^2 + 1 = r s^4` with `r ≡ 1 (mod 16)` and no prime factor
/// `≡ 3 (mod 4)`; local bookkeeping `w_inf = w_2 = -1`, all odd local
/// factors `+1`, global `+1`.
#[derive(Debug, Clone, Serialize)]
pub struct BsReport {
    pub t: u64,
    #[serde(with = "crate::serde_bigint")]
    pub r: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub s: BigInt,
    pub r_congruent_1_mod_16: bool,
    pub no_prime_3_mod_4: bool,
    pub w_infinity: i8,
    pub w_two: i8,
    pub global: i8,
}

impl BsReport {
    pub fn consistent(&self) -> bool {
        self.r_congruent_1_mod_16 && self.no_prime_3_mod_4
    }
}

pub fn bs_derivation_check(t: u64) -> Result<BsReport, CurveError> {
    if t == 0 || t % 8 != 0 {
        return Err(CurveError::BadParameter("t must be a positive multiple of 8"));
    }
    let half = BigInt::from(t / 2);
    let v = &half * &half + 1;
    let (r, s) = arith::fourth_power_free_part(&v).expect("positive");
    let r_congruent_1_mod_16 = (&r % 16u32) == BigInt::one();
    let f = arith::factorize_complete(&r).expect("positive");
    let no_prime_3_mod_4 = f.factors.iter().all(|(p, _)| (p % 4u32) != BigInt::from(3));
    Ok(BsReport {
        t,
        r,
        s,
        r_congruent_1_mod_16,
        no_prime_3_mod_4,
        w_infinity: -1,
        w_two: -1,
        global: 1,
    })
}

/// All integer points `(x, y)` with `0 <= x <= x_bound`, `y >= 0`, by
/// testing `A x^4 - 4` for squareness. Brute force on purpose.
pub fn integer_points_search(spec: &QuarticCurveSpec, x_bound: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    for x in 0..=x_bound {
        let xb = BigInt::from(x);
        let v: BigInt = &spec.a * &xb * &xb * &xb * &xb - 4;
        if v.is_negative() {
            continue;
        }
        if let Some(y) = arith::is_perfect_square(&v) {
            out.push((xb, y));
        }
    }
    out
}

/// One matched pair of the sequence-to-curve correspondence.
#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceEntry {
    pub j: u64,
    pub class: SquareClass,
    /// Which curve the point lies on: 1 for `C1`, 2 for `C2`.
    pub curve: u8,
    #[serde(with = "crate::serde_bigint")]
    pub x: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub y: BigInt,
}

/// Result of matching square sequence terms against brute-force integral
/// points. When `omega` is the fundamental unit the two sides must agree
/// exactly; otherwise only the injection direction is claimed.
#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    #[serde(with = "crate::serde_bigint")]
    pub t: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub d: BigInt,
    pub omega_fundamental: bool,
    pub entries: Vec<CorrespondenceEntry>,
    #[serde(serialize_with = "ser_point_list")]
    pub c1_points: Vec<(BigInt, BigInt)>,
    #[serde(serialize_with = "ser_point_list")]
    pub c2_points: Vec<(BigInt, BigInt)>,
    /// `Some(true/false)` when the fundamental-unit hypothesis held and
    /// the bijection was checked; `None` when only injectivity applies.
    pub bijection_verified: Option<bool>,
}

fn ser_point_list<S: serde::Serializer>(
    pts: &[(BigInt, BigInt)],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let as_strings: Vec<[String; 2]> = pts
        .iter()
        .map(|(x, y)| [x.to_string(), y.to_string()])
        .collect();
    serde::Serialize::serialize(&as_strings, serializer)
}

/// Pairs each odd-index square (or `d`-square) term with its curve point
/// `u_j = x^2` (resp. `d x^2`), `y = v_j`, and compares against the
/// brute-force point lists.
pub fn square_point_bijection(
    t: &BigInt,
    d: &BigInt,
    max_index: u64,
    x_bound: u64,
) -> Result<CorrespondenceReport, CurveError> {
    let params = LucasParams::new(t.clone()).map_err(|_| CurveError::BadParameter("t"))?;
    let disc: BigInt = t * t + 4;
    if !(&disc % d).is_zero() || arith::is_perfect_square(&(&disc / d)).is_none() {
        return Err(CurveError::BadTwist);
    }
    let c1 = QuarticCurveSpec::c1(t.clone())?;
    let c2 = QuarticCurveSpec::c2(t.clone(), d.clone())?;

    let field = QuadraticField::new(d.clone()).map_err(|_| CurveError::BadTwist)?;
    let omega = params.omega();
    let omega_fundamental = quadfield::fundamental_unit(&field).elem == omega;

    let mut entries = Vec::new();
    if max_index >= 1 {
        for (j, class) in crate::sequences::find_square_terms(&params, max_index, d) {
            let v_j = params.v_term(j);
            let (curve, x) = match &class {
                SquareClass::Square { root } => (1u8, root.clone()),
                SquareClass::DSquare { root } => (2u8, root.clone()),
                SquareClass::Neither => unreachable!(),
            };
            let pt = RationalPoint::affine_big(x.clone(), v_j.clone());
            let on = match curve {
                1 => c1.contains(&pt),
                _ => c2.contains(&pt),
            };
            debug_assert!(on, "correspondence image must lie on the curve");
            if !on {
                return Err(CurveError::OffCurve);
            }
            entries.push(CorrespondenceEntry {
                j,
                class,
                curve,
                x,
                y: v_j,
            });
        }
    }

    let c1_points = integer_points_search(&c1, x_bound);
    let c2_points = integer_points_search(&c2, x_bound);

    let bijection_verified = if omega_fundamental && max_index >= 1 {
        let u_max = params.u_term(max_index);
        // brute-force points restricted to the range the index cap covers
        let c1_in_range: Vec<_> = c1_points
            .iter()
            .filter(|(x, _)| x * x <= u_max)
            .cloned()
            .collect();
        let c2_in_range: Vec<_> = c2_points
            .iter()
            .filter(|(x, _)| d * x * x <= u_max)
            .cloned()
            .collect();
        let mut image_c1: Vec<_> = entries
            .iter()
            .filter(|e| e.curve == 1 && e.x <= BigInt::from(x_bound))
            .map(|e| (e.x.clone(), e.y.clone()))
            .collect();
        let mut image_c2: Vec<_> = entries
            .iter()
            .filter(|e| e.curve == 2 && e.x <= BigInt::from(x_bound))
            .map(|e| (e.x.clone(), e.y.clone()))
            .collect();
        image_c1.sort();
        image_c2.sort();
        Some(image_c1 == c1_in_range && image_c2 == c2_in_range)
    } else {
        None
    };

    Ok(CorrespondenceReport {
        t: t.clone(),
        d: d.clone(),
        omega_fundamental,
        entries,
        c1_points,
        c2_points,
        bijection_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn on_curve_examples() {
        for t in [1i64, 2, 5] {
            let c1 = QuarticCurveSpec::c1(b(t)).unwrap();
            assert!(c1.contains(&RationalPoint::affine_int(1, t)));
        }
        let c1 = QuarticCurveSpec::c1(b(2)).unwrap();
        assert!(c1.contains(&RationalPoint::affine_int(13, 478)));
        assert!(!c1.contains(&RationalPoint::affine_int(2, 5)));
        assert!(!c1.contains(&RationalPoint::Infinity));
    }

    #[test]
    fn phi_map_examples() {
        // (1, t) -> (t^2+4, t(t^2+4))
        for t in [1i64, 2, 3] {
            let img = phi_map(
                PhiIndex::One,
                &b(t),
                &b(1),
                &RationalPoint::affine_int(1, t),
            )
            .unwrap();
            assert_eq!(
                img,
                RationalPoint::affine_int(t * t + 4, t * (t * t + 4))
            );
        }
        // t = 2 on (13, 478) -> (1352, 49712) on a4 = -32
        let img = phi_map(
            PhiIndex::One,
            &b(2),
            &b(1),
            &RationalPoint::affine_int(13, 478),
        )
        .unwrap();
        assert_eq!(img, RationalPoint::affine_int(1352, 49712));
        let e1 = WeierstrassCurveSpec::e1(b(2));
        assert_eq!(e1.a4, b(-32));
        assert!(e1.contains(&img));
        // degree-2 symmetry: (-1, t) maps to the mirror image
        let img = phi_map(
            PhiIndex::One,
            &b(2),
            &b(1),
            &RationalPoint::affine_int(-1, 2),
        )
        .unwrap();
        assert_eq!(img, RationalPoint::affine_int(8, -16));
        // off-curve input rejected
        assert_eq!(
            phi_map(PhiIndex::One, &b(2), &b(1), &RationalPoint::affine_int(2, 5)),
            Err(CurveError::OffCurve)
        );
    }

    #[test]
    fn psi_map_examples() {
        // t = 2, d = 2: x0 = 2, (X, Y) -> (4X, 8Y)
        let origin = RationalPoint::affine_int(0, 0);
        assert_eq!(psi_map(&b(2), &b(2), &origin).unwrap(), origin);
        // push a phi_2 image through psi onto E3: (1, v_5) on C2 for t=1, d=5
        let params = LucasParams::new(b(1)).unwrap();
        let v5 = params.v_term(5);
        let pt = RationalPoint::affine_big(b(1), v5);
        let on_e2 = phi_map(PhiIndex::Two, &b(1), &b(5), &pt).unwrap();
        assert_eq!(on_e2, RationalPoint::affine_int(125, 1375));
        let on_e3 = psi_map(&b(1), &b(5), &on_e2).unwrap();
        assert!(WeierstrassCurveSpec::e3(b(1)).contains(&on_e3));
        assert_eq!(psi_map(&b(2), &b(2), &RationalPoint::Infinity).unwrap(), RationalPoint::Infinity);
        // bad twist rejected
        assert_eq!(
            psi_map(&b(2), &b(3), &origin),
            Err(CurveError::BadTwist)
        );
    }

    #[test]
    fn ec_add_examples() {
        for t in [1i64, 2, 3, 5, 8] {
            let e1 = WeierstrassCurveSpec::e1(b(t));
            let p = RationalPoint::affine_int(t * t + 4, t * (t * t + 4));
            let origin = RationalPoint::affine_int(0, 0);
            assert_eq!(
                ec_add(&e1, &p, &origin).unwrap(),
                RationalPoint::affine_int(-4, 4 * t),
                "t = {t}"
            );
            // identity and 2-torsion
            assert_eq!(ec_add(&e1, &p, &RationalPoint::Infinity).unwrap(), p);
            assert_eq!(
                ec_add(&e1, &origin, &origin).unwrap(),
                RationalPoint::Infinity
            );
        }
    }

    #[test]
    fn ec_add_group_identities() {
        let e = WeierstrassCurveSpec::e1(b(2));
        let p = RationalPoint::affine_int(8, 16);
        let q = RationalPoint::affine_int(-4, 8);
        let r = RationalPoint::affine_int(0, 0);
        // commutativity
        assert_eq!(ec_add(&e, &p, &q).unwrap(), ec_add(&e, &q, &p).unwrap());
        // associativity
        let pq_r = ec_add(&e, &ec_add(&e, &p, &q).unwrap(), &r).unwrap();
        let p_qr = ec_add(&e, &p, &ec_add(&e, &q, &r).unwrap()).unwrap();
        assert_eq!(pq_r, p_qr);
        // inverse
        assert_eq!(
            ec_add(&e, &p, &ec_neg(&p)).unwrap(),
            RationalPoint::Infinity
        );
    }

    #[test]
    fn torsion_precondition_examples() {
        assert!(torsion_preconditions(&b(1), &b(5)));
        assert!(torsion_preconditions(&b(2), &b(2)));
        assert!(torsion_preconditions(&b(6), &b(10)));
    }

    #[test]
    fn root_number_examples() {
        assert_eq!(root_number_e1(1), -1);
        assert_eq!(root_number_e1(8), 1);
        assert_eq!(root_number_e1(12), -1);
        assert_eq!(root_number_e3(3), -1);
        assert_eq!(root_number_e3(2), 1);
        assert_eq!(root_number_e3(7), -1);
    }

    #[test]
    fn bs_derivation_examples() {
        let r = bs_derivation_check(8).unwrap();
        assert_eq!((r.r, r.s), (b(17), b(1)));
        let r = bs_derivation_check(16).unwrap();
        assert_eq!((r.r.clone(), r.s.clone()), (b(65), b(1)));
        assert!(r.consistent());
        let r = bs_derivation_check(24).unwrap();
        assert_eq!((r.r, r.s), (b(145), b(1)));
        assert!(bs_derivation_check(12).is_err());
    }

    #[test]
    fn integer_points_examples() {
        let c1 = QuarticCurveSpec::c1(b(2)).unwrap();
        assert_eq!(
            integer_points_search(&c1, 20),
            vec![(b(1), b(2)), (b(13), b(478))]
        );
        let c1 = QuarticCurveSpec::c1(b(1)).unwrap();
        assert_eq!(integer_points_search(&c1, 1), vec![(b(1), b(1))]);
        let c2 = QuarticCurveSpec::c2(b(2), b(2)).unwrap();
        for (x, y) in integer_points_search(&c2, 10) {
            assert_eq!(&y * &y, b(32) * &x * &x * &x * &x - 4);
        }
    }

    #[test]
    fn bijection_t2_d2() {
        let report = square_point_bijection(&b(2), &b(2), 25, 20).unwrap();
        assert!(report.omega_fundamental);
        assert_eq!(report.bijection_verified, Some(true));
        let pairs: Vec<(u64, BigInt, BigInt)> = report
            .entries
            .iter()
            .map(|e| (e.j, e.x.clone(), e.y.clone()))
            .collect();
        assert_eq!(
            pairs,
            vec![(1, b(1), b(2)), (7, b(13), b(478))]
        );
    }

    #[test]
    fn bijection_t1_d5() {
        // u_5 = 5 = d * 1^2 corresponds to (1, 11) on C2
        let report = square_point_bijection(&b(1), &b(5), 13, 10).unwrap();
        assert!(report
            .entries
            .iter()
            .any(|e| e.j == 5 && e.curve == 2 && e.x == b(1) && e.y == b(11)));
        assert_eq!(report.bijection_verified, Some(true));
    }

    #[test]
    fn bijection_empty_range() {
        let report = square_point_bijection(&b(2), &b(2), 0, 10).unwrap();
        assert!(report.entries.is_empty());
        assert_eq!(report.bijection_verified, None);
    }
}
