//! Exact arithmetic for the field isomorphism problem in the family of
//! simplest quartic fields `K_n`, the splitting fields of
//! `x^4 - n x^3 - 6 x^2 + n x + 1`.
//!
//! The crate decides when two members of the family coincide, issues and
//! verifies uniqueness certificates built from squares in Lucas-type
//! recurrent sequences, and exercises the correspondence between square
//! sequence terms and integral points on quartic and Weierstrass curves.
//!
//! All arithmetic is exact: arbitrary-precision integers, quadratic
//! integers `(a + b*sqrt(d))/2`, and exact rationals on curves. No
//! floating point anywhere.

pub mod arith;

/// Big integers serialize as base-10 strings so no consumer is exposed
/// to 64-bit truncation.
pub(crate) mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&v.to_string())
    }

    #[allow(dead_code)]
    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}
pub mod certify;
pub mod curves;
pub mod isotest;
pub mod quadfield;
pub mod sequences;

pub use arith::{ArithError, FactorEffort, Factorization};
pub use certify::{CertKind, IssueFailure, Transcript, UniquenessCertificate};
pub use curves::{QuarticCurveSpec, RationalPoint, WeierstrassCurveSpec};
pub use isotest::{FieldsDecision, HypothesisReport, QuadInvariant, TheoremCase};
pub use quadfield::{FundamentalUnit, QuadInt, QuadraticField};
pub use sequences::{LucasParams, SequencePair, SquareClass};
