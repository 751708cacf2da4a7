//! The field-isomorphism decision for the family `K_n`: quadratic
//! invariants, the square criterion deciding `K_m = K_n`, the hypothesis
//! classifier for the uniqueness theorem, and the duplicate search.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::arith;
use crate::quadfield::{self, QuadInt, QuadraticField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error("index {0} is outside the family (n must be positive, n != 3)")]
    InvalidIndex(u64),
}

/// The quadratic subfield data of `K_n`: squarefree `d` and cofactor `y`
/// with `n^2 + 16 = d y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadInvariant {
    pub n: u64,
    #[serde(with = "crate::serde_bigint")]
    pub d: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub y: BigInt,
}

fn check_index(n: u64) -> Result<(), IsoError> {
    if n == 0 || n == 3 {
        Err(IsoError::InvalidIndex(n))
    } else {
        Ok(())
    }
}

/// `n^2 + 16 = d y^2` with `d` squarefree.
pub fn quad_invariant(n: u64) -> Result<QuadInvariant, IsoError> {
    check_index(n)?;
    let v = BigInt::from(n) * BigInt::from(n) + 16;
    let (d, y) = arith::squarefree_part(&v).expect("positive by construction");
    Ok(QuadInvariant { n, d, y })
}

/// Outcome of the `K_m = K_n` decision, with the stage that settled it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", rename_all = "kebab-case")]
pub enum FieldsDecision {
    /// Same quadratic subfield and the Lemma 1 product is a square;
    /// `witness^2 = alpha` exactly.
    Equal { alpha: QuadInt, witness: QuadInt },
    /// Different quadratic subfields, so the quartic fields differ.
    DistinctSubfields {
        #[serde(with = "crate::serde_bigint")]
        d_m: BigInt,
        #[serde(with = "crate::serde_bigint")]
        d_n: BigInt,
    },
    /// Same quadratic subfield but the Lemma 1 product is not a square.
    AlphaNotSquare { alpha: QuadInt },
}

impl FieldsDecision {
    pub fn is_equal(&self) -> bool {
        matches!(self, FieldsDecision::Equal { .. })
    }
}

/// Decides `K_m = K_n`: the quadratic invariants must share `d`, and
/// `alpha = x y d (x sqrt(d) + m)(y sqrt(d) + n)` must be a square in
/// `Q(sqrt(d))`.
pub fn fields_equal(m: u64, n: u64) -> Result<FieldsDecision, IsoError> {
    let im = quad_invariant(m)?;
    let in_ = quad_invariant(n)?;
    if im.d != in_.d {
        return Ok(FieldsDecision::DistinctSubfields {
            d_m: im.d,
            d_n: in_.d,
        });
    }
    Ok(fields_equal_from_invariants(&im, &in_))
}

/// The Lemma 1 test given matching invariants (`im.d == in_.d`).
pub fn fields_equal_from_invariants(im: &QuadInvariant, in_: &QuadInvariant) -> FieldsDecision {
    debug_assert_eq!(im.d, in_.d);
    let field = QuadraticField::new(im.d.clone()).expect("squarefree by construction");
    let fm = QuadInt::from_pair(&field, BigInt::from(im.n), im.y.clone());
    let fn_ = QuadInt::from_pair(&field, BigInt::from(in_.n), in_.y.clone());
    let scalar = &im.y * &in_.y * &im.d;
    let alpha = fm.mul(&fn_).expect("same field").scale(&scalar);
    match quadfield::sqrt_in_field(&alpha) {
        Some(witness) => FieldsDecision::Equal { alpha, witness },
        None => FieldsDecision::AlphaNotSquare { alpha },
    }
}

/// Checks the order-4 Galois structure symbolically: in `Z[x]/(f_n)`,
/// the numerator of `f_n((rho-1)/(rho+1))` cleared of denominators
/// reduces to zero, and the printed maps compose with order 4 as Möbius
/// transformations.
pub fn galois_orbit_check(n: u64) -> Result<bool, IsoError> {
    check_index(n)?;
    let nn = BigInt::from(n);
    // f_n = x^4 - n x^3 - 6 x^2 + n x + 1, ascending coefficients
    let f = [
        BigInt::one(),
        nn.clone(),
        BigInt::from(-6),
        -nn.clone(),
        BigInt::one(),
    ];

    // (rho+1)^4 f_n((rho-1)/(rho+1)) =
    //   (r-1)^4 - n (r-1)^3 (r+1) - 6 (r-1)^2 (r+1)^2 + n (r-1)(r+1)^3 + (r+1)^4
    let minus = [BigInt::from(-1), BigInt::one()]; // r - 1
    let plus = [BigInt::one(), BigInt::one()]; // r + 1
    let mut acc = vec![BigInt::zero()];
    let coeffs = [
        BigInt::one(),
        -nn.clone(),
        BigInt::from(-6),
        nn.clone(),
        BigInt::one(),
    ];
    for (k, c) in coeffs.iter().enumerate() {
        // c * (r-1)^(4-k) * (r+1)^k
        let mut term = vec![c.clone()];
        for _ in 0..(4 - k) {
            term = poly_mul(&term, &minus);
        }
        for _ in 0..k {
            term = poly_mul(&term, &plus);
        }
        acc = poly_add(&acc, &term);
    }
    let rem = poly_rem_monic(&acc, &f);
    if !rem.iter().all(|c| c.is_zero()) {
        return Ok(false);
    }

    // Möbius matrices of the printed maps
    let sigma = [[1i64, -1], [1, 1]]; // (rho - 1)/(rho + 1)
    let sigma2 = [[0i64, -1], [1, 0]]; // -1/rho
    let sigma3 = [[1i64, 1], [-1, 1]]; // (1 + rho)/(1 - rho)
    let m2 = mat_mul(&sigma, &sigma);
    let m3 = mat_mul(&m2, &sigma);
    let m4 = mat_mul(&m3, &sigma);
    Ok(mat_proportional(&m2, &sigma2) && mat_proportional(&m3, &sigma3) && mat_is_scalar(&m4))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] += bi;
    }
    out
}

/// Remainder modulo a monic polynomial (ascending coefficients).
fn poly_rem_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let deg_m = m.len() - 1;
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > deg_m {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - deg_m;
        for (i, mi) in m.iter().take(deg_m).enumerate() {
            r[shift + i] -= &lead * mi;
        }
    }
    r
}

fn mat_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn mat_proportional(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> bool {
    // a = lambda * b for some nonzero rational lambda
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    if a[i][j] * b[k][l] != a[k][l] * b[i][j] {
                        return false;
                    }
                }
            }
        }
    }
    a.iter().flatten().any(|v| *v != 0)
}

fn mat_is_scalar(a: &[[i64; 2]; 2]) -> bool {
    a[0][1] == 0 && a[1][0] == 0 && a[0][0] == a[1][1] && a[0][0] != 0
}

/// Which hypothesis of the uniqueness theorem an index satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremCase {
    /// `n ≡ 2 (mod 4)`.
    A,
    /// `n ≡ 8 (mod 16)` with odd fundamental-unit trace.
    B,
    /// Neither hypothesis holds.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub n: u64,
    pub case: TheoremCase,
    #[serde(with = "crate::serde_bigint")]
    pub d: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub trace_t: BigInt,
    pub trace_odd: bool,
    pub unit_norm: i8,
}

/// Classifies `n` against the theorem's hypotheses and reports the
/// fundamental-unit data of the quadratic subfield.
pub fn theorem_hypotheses(n: u64) -> Result<HypothesisReport, IsoError> {
    let inv = quad_invariant(n)?;
    let field = QuadraticField::new(inv.d.clone()).expect("squarefree");
    let fu = quadfield::fundamental_unit(&field);
    let trace_odd = (&fu.t % 2u32) != BigInt::zero();
    let case = if n % 4 == 2 {
        TheoremCase::A
    } else if n % 16 == 8 && trace_odd {
        TheoremCase::B
    } else {
        TheoremCase::None
    };
    Ok(HypothesisReport {
        n,
        case,
        d: inv.d,
        trace_t: fu.t,
        trace_odd,
        unit_norm: fu.nrm,
    })
}

/// All pairs `m < n <= limit` with `K_m = K_n`. Indices are grouped by
/// the squarefree part `d` first; the Lemma 1 test only runs inside a
/// group. The index range may be partitioned across `workers` threads;
/// the merged output is deterministic.
pub fn duplicate_search(limit: u64, workers: usize) -> Vec<(u64, u64)> {
    let workers = workers.max(1);
    let invariants = if workers == 1 || limit < 64 {
        (1..=limit)
            .filter(|&n| n != 3)
            .map(|n| quad_invariant(n).unwrap())
            .collect::<Vec<_>>()
    } else {
        let chunk = limit.div_ceil(workers as u64);
        let mut out: Vec<Vec<QuadInvariant>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let lo = w * chunk + 1;
                    let hi = ((w + 1) * chunk).min(limit);
                    scope.spawn(move || {
                        (lo..=hi)
                            .filter(|&n| n != 3)
                            .map(|n| quad_invariant(n).unwrap())
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                out.push(h.join().expect("worker panicked"));
            }
        });
        out.into_iter().flatten().collect()
    };

    let mut buckets: BTreeMap<BigInt, Vec<QuadInvariant>> = BTreeMap::new();
    for inv in invariants {
        buckets.entry(inv.d.clone()).or_default().push(inv);
    }
    let mut pairs = Vec::new();
    for group in buckets.values() {
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                if fields_equal_from_invariants(&group[i], &group[j]).is_equal() {
                    pairs.push((group[i].n, group[j].n));
                }
            }
        }
    }
    pairs.sort();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn quad_invariant_examples() {
        let i = quad_invariant(2).unwrap();
        assert_eq!((i.d, i.y), (b(5), b(2)));
        let i = quad_invariant(58).unwrap();
        assert_eq!((i.d, i.y), (b(5), b(26)));
        let i = quad_invariant(6).unwrap();
        assert_eq!((i.d, i.y), (b(13), b(2)));
        assert_eq!(quad_invariant(0), Err(IsoError::InvalidIndex(0)));
        assert_eq!(quad_invariant(3), Err(IsoError::InvalidIndex(3)));
    }

    #[test]
    fn fields_equal_positive_cases() {
        match fields_equal(2, 22).unwrap() {
            FieldsDecision::Equal { alpha, witness } => {
                let field = QuadraticField::new(b(5)).unwrap();
                assert_eq!(alpha, QuadInt::from_pair(&field, b(14400), b(6400)));
                assert_eq!(
                    witness.mul(&witness).unwrap(),
                    alpha,
                    "witness squares to alpha"
                );
                assert_eq!(witness, QuadInt::from_pair(&field, b(80), b(40)));
            }
            other => panic!("expected equal, got {other:?}"),
        }
        assert!(fields_equal(1, 103).unwrap().is_equal());
        assert!(fields_equal(4, 956).unwrap().is_equal());
        assert!(fields_equal(7, 7).unwrap().is_equal());
    }

    #[test]
    fn fields_equal_negative_cases() {
        match fields_equal(2, 58).unwrap() {
            FieldsDecision::AlphaNotSquare { alpha } => {
                let field = QuadraticField::new(b(5)).unwrap();
                assert_eq!(alpha, QuadInt::from_pair(&field, b(97760), b(43680)));
            }
            other => panic!("expected non-square alpha, got {other:?}"),
        }
        // different quadratic subfields short-circuit
        match fields_equal(1, 2).unwrap() {
            FieldsDecision::DistinctSubfields { d_m, d_n } => {
                assert_eq!((d_m, d_n), (b(17), b(5)));
            }
            other => panic!("expected distinct subfields, got {other:?}"),
        }
    }

    #[test]
    fn fields_equal_symmetric() {
        for (m, n) in [(2, 22), (2, 58), (1, 103), (5, 7)] {
            assert_eq!(
                fields_equal(m, n).unwrap().is_equal(),
                fields_equal(n, m).unwrap().is_equal()
            );
        }
    }

    #[test]
    fn galois_orbit_examples() {
        for n in [1, 2, 6, 10, 22, 103] {
            assert!(galois_orbit_check(n).unwrap(), "n = {n}");
        }
        assert_eq!(galois_orbit_check(3), Err(IsoError::InvalidIndex(3)));
    }

    #[test]
    fn theorem_hypotheses_examples() {
        assert_eq!(theorem_hypotheses(2).unwrap().case, TheoremCase::A);
        let r = theorem_hypotheses(4).unwrap();
        assert_eq!(r.case, TheoremCase::None);
        assert!(!r.trace_odd);
        assert_eq!(r.unit_norm, -1);
        let r = theorem_hypotheses(8).unwrap();
        assert_eq!(r.case, TheoremCase::B);
        assert_eq!(r.d, b(5));
        assert_eq!(r.trace_t, b(1));
    }

    #[test]
    fn duplicate_search_examples() {
        assert_eq!(duplicate_search(10, 1), vec![]);
        assert_eq!(duplicate_search(200, 1), vec![(1, 103), (2, 22)]);
        assert_eq!(
            duplicate_search(1000, 1),
            vec![(1, 103), (2, 22), (4, 956)]
        );
    }

    #[test]
    fn duplicate_search_worker_independent() {
        let base = duplicate_search(1000, 1);
        for workers in [2, 3, 8] {
            assert_eq!(duplicate_search(1000, workers), base);
        }
    }

    #[test]
    fn congruence_restriction_mod8() {
        // if d ≡ 5 (mod 8) and m^2 + 16 = d x^2 then m ≡ 2 (mod 4) or
        // m ≡ 8 (mod 16)
        for m in 1u64..=10_000 {
            if m == 3 {
                continue;
            }
            let inv = quad_invariant(m).unwrap();
            if (&inv.d % 8u32) == b(5) {
                assert!(
                    m % 4 == 2 || m % 16 == 8,
                    "m = {m} violates the congruence restriction"
                );
            }
        }
    }
}
