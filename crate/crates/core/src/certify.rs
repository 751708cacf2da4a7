//! Uniqueness certificates: data `(n, d, t, r0, p)` that, once verified,
//! proves no `m != n` has `K_m = K_n`. Issuance is best-effort (bounded
//! prime search on `v_{r0}`); verification is cheap, exact, and never
//! materializes the full-size `v_{r0}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::arith;
use crate::isotest;
use crate::quadfield::{self, QuadInt, QuadraticField};
use crate::sequences::{self, LucasParams};

pub const CERT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    /// The recurrent-sequence criterion: prime `p ≡ 1 (mod 4)` dividing
    /// `v_{r0}` with `d u_{r0}` a quadratic nonresidue mod `p`.
    CohnNonresidue,
    /// The parity argument special to `n = 4` (`t = 2`, `d = 2`), with
    /// the square classification of the `t = 2` sequence taken as an
    /// external oracle.
    PethoParity,
}

impl CertKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertKind::CohnNonresidue => "cohn-nonresidue",
            CertKind::PethoParity => "petho-parity",
        }
    }

    pub fn from_str(s: &str) -> Option<CertKind> {
        match s {
            "cohn-nonresidue" => Some(CertKind::CohnNonresidue),
            "petho-parity" => Some(CertKind::PethoParity),
            _ => None,
        }
    }
}

/// A uniqueness certificate for index `n`. For the `petho-parity` kind
/// the `r0` and `p` slots are unused and hold zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessCertificate {
    pub version: u32,
    pub kind: CertKind,
    pub n: u64,
    pub d: BigInt,
    pub t: BigInt,
    pub r0: u64,
    pub p: BigInt,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertFormatError {
    #[error("malformed certificate JSON: {0}")]
    Json(String),
    #[error("unsupported certificate version {0}")]
    Version(u32),
    #[error("unknown certificate kind {0:?}")]
    Kind(String),
    #[error("field {0} is not a base-10 integer")]
    Field(&'static str),
}

#[derive(Deserialize)]
struct CertRepr {
    version: u32,
    kind: String,
    n: String,
    d: String,
    t: String,
    r0: String,
    p: String,
}

impl UniquenessCertificate {
    /// Canonical serialization: one JSON object, fixed key order, all
    /// big integers as base-10 strings, newline-terminated.
    pub fn to_canonical_json(&self) -> String {
        format!(
            "{{\"version\":{},\"kind\":\"{}\",\"n\":\"{}\",\"d\":\"{}\",\"t\":\"{}\",\"r0\":\"{}\",\"p\":\"{}\"}}\n",
            self.version,
            self.kind.as_str(),
            self.n,
            self.d,
            self.t,
            self.r0,
            self.p
        )
    }

    pub fn from_json(s: &str) -> Result<Self, CertFormatError> {
        let repr: CertRepr =
            serde_json::from_str(s).map_err(|e| CertFormatError::Json(e.to_string()))?;
        if repr.version != CERT_VERSION {
            return Err(CertFormatError::Version(repr.version));
        }
        let kind =
            CertKind::from_str(&repr.kind).ok_or_else(|| CertFormatError::Kind(repr.kind.clone()))?;
        let n: u64 = repr.n.parse().map_err(|_| CertFormatError::Field("n"))?;
        let d: BigInt = repr.d.parse().map_err(|_| CertFormatError::Field("d"))?;
        let t: BigInt = repr.t.parse().map_err(|_| CertFormatError::Field("t"))?;
        let r0: u64 = repr.r0.parse().map_err(|_| CertFormatError::Field("r0"))?;
        let p: BigInt = repr.p.parse().map_err(|_| CertFormatError::Field("p"))?;
        Ok(UniquenessCertificate {
            version: repr.version,
            kind,
            n,
            d,
            t,
            r0,
            p,
        })
    }
}

/// Least odd `j <= index_cap` with `d | u_j`, by modular iteration only.
pub fn find_r0(params: &LucasParams, d: &BigInt, index_cap: u64) -> Option<u64> {
    let t = params.trace().mod_floor(d);
    let mut u_prev = BigInt::zero();
    let mut u = BigInt::one();
    let mut j = 1u64;
    while j <= index_cap {
        if j % 2 == 1 && u.is_zero() {
            return Some(j);
        }
        let next = (&t * &u + &u_prev) % d;
        u_prev = std::mem::replace(&mut u, next);
        j += 1;
    }
    None
}

/// Why issuance declined; structured, not an exception.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum IssueFailure {
    #[error("index {0} is outside the family")]
    InvalidIndex(u64),
    #[error("theorem requires n ≡ 2 (mod 4), got n = {0}")]
    WrongCongruence(u64),
    #[error("(n + y*sqrt(d))/4 is not the fundamental unit of Q(sqrt({d}))")]
    UnitNotFundamental { d: BigInt },
    #[error("no odd index <= {cap} with d | u_j")]
    NoApparitionIndex { cap: u64 },
    #[error("no suitable prime <= {bound} divides v_{r0}")]
    NoSuitablePrime { r0: u64, bound: u64 },
}

/// Issues a certificate for `n ≡ 2 (mod 4)`: checks the fundamental-unit
/// hypothesis, finds the rank of apparition `r0`, then trial-divides
/// `v_{r0}` looking for the smallest prime `p ≡ 1 (mod 4)` with
/// `d u_{r0}` a nonresidue mod `p`.
pub fn issue_certificate(
    n: u64,
    prime_bound: u64,
    index_cap: u64,
) -> Result<UniquenessCertificate, IssueFailure> {
    if n == 0 || n == 3 {
        return Err(IssueFailure::InvalidIndex(n));
    }
    if n % 4 != 2 {
        return Err(IssueFailure::WrongCongruence(n));
    }
    let inv = isotest::quad_invariant(n).expect("validated above");
    let field = QuadraticField::new(inv.d.clone()).expect("squarefree");
    // eps = (n + y*sqrt(d))/4 = (n/2 + (y/2)*sqrt(d))/2
    let eps = QuadInt::new(
        &field,
        BigInt::from(n / 2),
        &inv.y / 2,
    )
    .expect("n ≡ 2 (mod 4) forces y even and matching parity");
    let fu = quadfield::fundamental_unit(&field);
    if fu.elem != eps {
        return Err(IssueFailure::UnitNotFundamental { d: inv.d });
    }
    let t = fu.t.clone();
    let params = LucasParams::new(t.clone()).expect("trace positive");
    let r0 = find_r0(&params, &inv.d, index_cap)
        .ok_or(IssueFailure::NoApparitionIndex { cap: index_cap })?;
    let v_r0 = params.v_term(r0);
    let p = smallest_passing_prime(&params, &inv.d, r0, &v_r0, prime_bound)
        .ok_or(IssueFailure::NoSuitablePrime {
            r0,
            bound: prime_bound,
        })?;
    Ok(UniquenessCertificate {
        version: CERT_VERSION,
        kind: CertKind::CohnNonresidue,
        n,
        d: inv.d,
        t,
        r0,
        p,
    })
}

fn condition_holds(params: &LucasParams, d: &BigInt, r0: u64, p: &BigInt) -> bool {
    if (p % 4u32) != BigInt::one() {
        return false;
    }
    let (u_mod, _) = params.uv_mod(r0, p);
    arith::jacobi_symbol(&(d * u_mod), p) == Ok(-1)
}

/// Smallest prime factor of `v` that is `≡ 1 (mod 4)`, at most `bound`,
/// and passes the nonresidue condition. Factors are removed smallest
/// first, so every divisor met is prime.
fn smallest_passing_prime(
    params: &LucasParams,
    d: &BigInt,
    r0: u64,
    v: &BigInt,
    bound: u64,
) -> Option<BigInt> {
    let mut rem = v.clone();
    while rem.is_even() {
        rem /= 2;
    }
    // u128 fast path; v_{r0} fits for every issuable instance at desk scale
    if let Some(mut m) = rem.to_u128() {
        let mut q: u128 = 3;
        while q <= bound as u128 && q * q <= m {
            if m % q == 0 {
                while m % q == 0 {
                    m /= q;
                }
                if q % 4 == 1 && condition_holds(params, d, r0, &BigInt::from(q)) {
                    return Some(BigInt::from(q));
                }
            }
            q += 2;
        }
        if m > 1 && m <= bound as u128 {
            let p = BigInt::from(m);
            if m % 4 == 1 && condition_holds(params, d, r0, &p) {
                return Some(p);
            }
        }
        return None;
    }
    let mut q = BigInt::from(3);
    let bound = BigInt::from(bound);
    while q <= bound && &q * &q <= rem {
        if (&rem % &q).is_zero() {
            while (&rem % &q).is_zero() {
                rem /= &q;
            }
            if (&q % 4u32) == BigInt::one() && condition_holds(params, d, r0, &q) {
                return Some(q);
            }
        }
        q += 2;
    }
    if rem > BigInt::one() && rem <= bound && (&rem % 4u32) == BigInt::one() {
        if condition_holds(params, d, r0, &rem) {
            return Some(rem);
        }
    }
    None
}

/// The `n = 4` certificate: parity plus the external square
/// classification of the `t = 2` sequence.
pub fn petho_certificate() -> UniquenessCertificate {
    UniquenessCertificate {
        version: CERT_VERSION,
        kind: CertKind::PethoParity,
        n: 4,
        d: BigInt::from(2),
        t: BigInt::from(2),
        r0: 0,
        p: BigInt::zero(),
    }
}

/// One verification step and its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Full verification transcript; `accepted` iff every check passed.
#[derive(Debug, Clone, Serialize)]
pub struct Transcript {
    pub checks: Vec<Check>,
    pub accepted: bool,
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.passed { "ok " } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(f, "{}", if self.accepted { "ACCEPT" } else { "REJECT" })
    }
}

struct TranscriptBuilder {
    checks: Vec<Check>,
}

impl TranscriptBuilder {
    fn new() -> Self {
        TranscriptBuilder { checks: Vec::new() }
    }

    fn check(&mut self, name: &'static str, passed: bool, detail: String) -> bool {
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
        passed
    }

    fn finish(self) -> Transcript {
        let accepted = self.checks.iter().all(|c| c.passed);
        Transcript {
            checks: self.checks,
            accepted,
        }
    }
}

/// Re-checks every certificate invariant with cheap arithmetic only:
/// modular sequence scans, `uv_mod`, Jacobi symbols, and one
/// fundamental-unit recomputation. Never needs the full-size `v_{r0}`.
pub fn verify_certificate(cert: &UniquenessCertificate) -> Transcript {
    let mut t = TranscriptBuilder::new();
    if !t.check(
        "version",
        cert.version == CERT_VERSION,
        format!("version {}", cert.version),
    ) {
        return t.finish();
    }
    match cert.kind {
        CertKind::CohnNonresidue => verify_cohn(cert, t),
        CertKind::PethoParity => verify_petho(cert, t),
    }
}

fn verify_cohn(cert: &UniquenessCertificate, mut t: TranscriptBuilder) -> Transcript {
    let structural = cert.n % 4 == 2
        && cert.r0 % 2 == 1
        && cert.t.is_positive()
        && cert.t.is_odd()
        && cert.p.is_positive();
    if !t.check(
        "structural",
        structural,
        format!(
            "n ≡ 2 (mod 4), r0 odd, t odd positive, p positive: n={}, r0={}, t={}",
            cert.n, cert.r0, cert.t
        ),
    ) {
        return t.finish();
    }

    let inv = match isotest::quad_invariant(cert.n) {
        Ok(inv) => inv,
        Err(e) => {
            t.check("invariant", false, e.to_string());
            return t.finish();
        }
    };
    if !t.check(
        "invariant",
        inv.d == cert.d,
        format!("n^2 + 16 = d y^2 with d = {} (certificate says {})", inv.d, cert.d),
    ) {
        return t.finish();
    }

    let field = QuadraticField::new(inv.d.clone()).expect("squarefree");
    let eps = QuadInt::new(&field, BigInt::from(cert.n / 2), &inv.y / 2)
        .expect("parity from n ≡ 2 (mod 4)");
    let fu = quadfield::fundamental_unit(&field);
    if !t.check(
        "fundamental-unit",
        fu.elem == eps && fu.t == cert.t,
        format!("(n + y*sqrt(d))/4 = {} fundamental with trace {}", eps, fu.t),
    ) {
        return t.finish();
    }

    let params = LucasParams::new(cert.t.clone()).expect("t positive");
    let r0_found = find_r0(&params, &cert.d, cert.r0);
    t.check(
        "rank-of-apparition",
        r0_found == Some(cert.r0),
        format!("least odd j with d | u_j within {} is {:?}", cert.r0, r0_found),
    );

    t.check(
        "prime",
        arith::is_probable_prime(&cert.p),
        format!("p = {} primality", cert.p),
    );
    t.check(
        "prime-congruence",
        (&cert.p % 4u32) == BigInt::one(),
        format!("p ≡ 1 (mod 4)"),
    );

    let (u_mod, v_mod) = params.uv_mod(cert.r0, &cert.p);
    t.check(
        "divides-v",
        v_mod.is_zero(),
        format!("v_r0 mod p = {}", v_mod),
    );
    let jac = arith::jacobi_symbol(&(&cert.d * &u_mod), &cert.p);
    t.check(
        "nonresidue",
        jac == Ok(-1),
        format!("jacobi(d * u_r0, p) = {:?}", jac),
    );
    t.finish()
}

fn verify_petho(cert: &UniquenessCertificate, mut t: TranscriptBuilder) -> Transcript {
    let two = BigInt::from(2);
    if !t.check(
        "structural",
        cert.n == 4 && cert.d == two && cert.t == two && cert.r0 == 0 && cert.p.is_zero(),
        format!("petho-parity only covers n = 4, d = 2, t = 2 (got n = {})", cert.n),
    ) {
        return t.finish();
    }
    let inv = isotest::quad_invariant(4).expect("valid index");
    t.check(
        "invariant",
        inv.d == two && inv.y == BigInt::from(4),
        format!("4^2 + 16 = 32 = 2 * 4^2, d = {}", inv.d),
    );
    let field = QuadraticField::new(two.clone()).expect("squarefree");
    let fu = quadfield::fundamental_unit(&field);
    t.check(
        "fundamental-unit",
        fu.t == two && fu.nrm == -1,
        format!("1 + sqrt(2) has trace {} and norm {}", fu.t, fu.nrm),
    );
    let params = LucasParams::new(two.clone()).expect("positive");
    // squares at odd indices up to the scanned cap: exactly j = 1 and
    // j = 7 (the classification beyond the cap is the external oracle)
    let hits = sequences::find_square_terms(&params, 201, &two);
    let square_indices: Vec<u64> = hits
        .iter()
        .filter(|(_, c)| c.is_square())
        .map(|(j, _)| *j)
        .collect();
    t.check(
        "square-terms",
        square_indices == vec![1, 7] && hits.len() == 2,
        format!("odd-index squares up to 201: {:?}", square_indices),
    );
    // all odd-index terms are odd, so d * square (d = 2) is impossible
    let mut u_prev = BigInt::zero();
    let mut u = BigInt::one();
    let mut all_odd = true;
    for j in 1u64..=201 {
        if j % 2 == 1 && u.is_even() {
            all_odd = false;
        }
        let next = &two * &u + &u_prev;
        u_prev = std::mem::replace(&mut u, next);
    }
    t.check(
        "parity",
        all_odd,
        "every odd-index term is odd, ruling out 2 * square".to_string(),
    );
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn find_r0_known_values() {
        for (t, d, r0) in [(3i64, 13i64, 13u64), (5, 29, 29), (7, 53, 53), (1, 5, 5)] {
            let params = LucasParams::new(b(t)).unwrap();
            assert_eq!(find_r0(&params, &b(d), 10_000), Some(r0), "t = {t}");
        }
        let params = LucasParams::new(b(3)).unwrap();
        assert_eq!(find_r0(&params, &b(13), 12), None);
    }

    #[test]
    fn issue_n6() {
        let cert = issue_certificate(6, 10_000, 10_000).unwrap();
        assert_eq!(cert.d, b(13));
        assert_eq!(cert.t, b(3));
        assert_eq!(cert.r0, 13);
        assert_eq!(cert.p, b(53));
        assert!(verify_certificate(&cert).accepted);
    }

    #[test]
    fn issue_n2_has_no_suitable_prime() {
        // r0 = 5, v_5 = 11 ≡ 3 (mod 4): consistent with K_2 = K_22
        let err = issue_certificate(2, 1_000_000, 10_000).unwrap_err();
        assert_eq!(
            err,
            IssueFailure::NoSuitablePrime {
                r0: 5,
                bound: 1_000_000
            }
        );
    }

    #[test]
    fn issue_rejects_wrong_congruence() {
        assert_eq!(
            issue_certificate(4, 100, 100),
            Err(IssueFailure::WrongCongruence(4))
        );
        assert_eq!(issue_certificate(3, 100, 100), Err(IssueFailure::InvalidIndex(3)));
    }

    #[test]
    fn verify_rejects_wrong_prime() {
        let mut cert = issue_certificate(6, 10_000, 10_000).unwrap();
        cert.p = b(59);
        let tr = verify_certificate(&cert);
        assert!(!tr.accepted);
        // 5564523 mod 59 = 56
        let failed: Vec<_> = tr.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.iter().any(|c| c.name == "divides-v"));
    }

    #[test]
    fn verify_rejects_even_r0() {
        let mut cert = issue_certificate(6, 10_000, 10_000).unwrap();
        cert.r0 = 12;
        let tr = verify_certificate(&cert);
        assert!(!tr.accepted);
        assert!(!tr.checks[1].passed); // structural
    }

    #[test]
    fn petho_certificate_verifies() {
        let cert = petho_certificate();
        let tr = verify_certificate(&cert);
        assert!(tr.accepted, "{tr}");
        let mut bad = cert.clone();
        bad.n = 8;
        assert!(!verify_certificate(&bad).accepted);
    }

    #[test]
    fn canonical_json_roundtrip() {
        let cert = issue_certificate(6, 10_000, 10_000).unwrap();
        let s = cert.to_canonical_json();
        assert_eq!(
            s,
            "{\"version\":1,\"kind\":\"cohn-nonresidue\",\"n\":\"6\",\"d\":\"13\",\"t\":\"3\",\"r0\":\"13\",\"p\":\"53\"}\n"
        );
        assert_eq!(UniquenessCertificate::from_json(&s).unwrap(), cert);
        assert!(matches!(
            UniquenessCertificate::from_json("{\"version\":2}"),
            Err(CertFormatError::Json(_)) | Err(CertFormatError::Version(2))
        ));
    }
}
