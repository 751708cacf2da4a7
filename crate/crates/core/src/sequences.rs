//! The recurrent sequences `u_j`, `v_j` attached to a fundamental unit of
//! trace `t` and norm -1 (characteristic polynomial `x^2 - t x - 1`),
//! fast modular evaluation, Cohn's exceptional table, and the
//! square / d-times-square classification.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::quadfield::{QuadInt, QuadraticField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("trace must be a positive integer")]
    BadTrace,
}

/// Parameters of the recurrence `u_{j+2} = t u_{j+1} + u_j` with seeds
/// `u_0 = 0, u_1 = 1` and companion `v_0 = 2, v_1 = t`. These realize
/// `(w^j - wbar^j)/(w - wbar)` and `w^j + wbar^j` for the quadratic unit
/// `w = (t + sqrt(t^2+4))/2` of norm -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasParams {
    t: BigInt,
}

impl LucasParams {
    pub fn new(t: BigInt) -> Result<Self, SequenceError> {
        if !t.is_positive() {
            return Err(SequenceError::BadTrace);
        }
        Ok(LucasParams { t })
    }

    pub fn trace(&self) -> &BigInt {
        &self.t
    }

    /// The associated unit `w = (t + z*sqrt(d))/2` where `t^2+4 = d z^2`
    /// with `d` squarefree.
    pub fn omega(&self) -> QuadInt {
        let disc = &self.t * &self.t + 4;
        let (d, z) = arith::squarefree_part(&disc).expect("positive");
        let field = QuadraticField::new(d).expect("squarefree >= 2 since t >= 1");
        QuadInt::new(&field, self.t.clone(), z).expect("parity holds for t^2+4 = d z^2")
    }

    /// `u_j` by exact iteration.
    pub fn u_term(&self, j: u64) -> BigInt {
        self.iterate(j).0
    }

    /// `v_j` by exact iteration.
    pub fn v_term(&self, j: u64) -> BigInt {
        self.iterate(j).1
    }

    fn iterate(&self, j: u64) -> (BigInt, BigInt) {
        let mut u = (BigInt::zero(), BigInt::one());
        let mut v = (BigInt::from(2), self.t.clone());
        if j == 0 {
            return (u.0, v.0);
        }
        for _ in 1..j {
            u = (u.1.clone(), &self.t * &u.1 + u.0);
            v = (v.1.clone(), &self.t * &v.1 + v.0);
        }
        (u.1, v.1)
    }

    /// Both terms with the index attached.
    pub fn pair(&self, j: u64) -> SequencePair {
        let (u, v) = self.iterate(j);
        SequencePair { j, u, v }
    }

    /// `(u_j, v_j) mod m` in `O(log j)` squarings of the companion matrix
    /// `[[t,1],[1,0]]`.
    pub fn uv_mod(&self, j: u64, modulus: &BigInt) -> (BigInt, BigInt) {
        assert!(modulus.is_positive(), "modulus must be positive");
        if j == 0 {
            return (BigInt::zero(), BigInt::from(2) % modulus);
        }
        // M^j = [[u_{j+1}, u_j], [u_j, u_{j-1}]]
        let t = &self.t % modulus;
        let mut acc = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
        let mut base = [[t.clone(), BigInt::one()], [BigInt::one(), BigInt::zero()]];
        let mut e = j;
        while e > 0 {
            if e & 1 == 1 {
                acc = mat_mul_mod(&acc, &base, modulus);
            }
            base = mat_mul_mod(&base, &base, modulus);
            e >>= 1;
        }
        let u_next = acc[0][0].clone();
        let u = acc[0][1].clone();
        // v_j = 2 u_{j+1} - t u_j
        let v = (BigInt::from(2) * u_next - &t * &u) % modulus;
        (u.clone(), ((v % modulus) + modulus) % modulus)
    }
}

fn mat_mul_mod(a: &[[BigInt; 2]; 2], b: &[[BigInt; 2]; 2], m: &BigInt) -> [[BigInt; 2]; 2] {
    let entry = |i: usize, j: usize| (&a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]) % m;
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// One term of the pair sequence; satisfies
/// `v^2 - (t^2+4) u^2 = 4 (-1)^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequencePair {
    pub j: u64,
    #[serde(with = "crate::serde_bigint")]
    pub u: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub v: BigInt,
}

/// Trichotomy driving the Cohn reduction: a perfect square, `d` times a
/// perfect square, or neither. The classes are disjoint for squarefree
/// `d > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum SquareClass {
    Square {
        #[serde(with = "crate::serde_bigint")]
        root: BigInt,
    },
    DSquare {
        #[serde(with = "crate::serde_bigint")]
        root: BigInt,
    },
    Neither,
}

impl SquareClass {
    pub fn is_square(&self) -> bool {
        matches!(self, SquareClass::Square { .. })
    }

    pub fn is_d_square(&self) -> bool {
        matches!(self, SquareClass::DSquare { .. })
    }
}

/// Classifies `value >= 1` against squarefree `d >= 2`.
pub fn classify_square(value: &BigInt, d: &BigInt) -> SquareClass {
    debug_assert!(value.is_positive());
    if let Some(root) = arith::is_perfect_square(value) {
        return SquareClass::Square { root };
    }
    if (value % d).is_zero() {
        if let Some(root) = arith::is_perfect_square(&(value / d)) {
            return SquareClass::DSquare { root };
        }
    }
    SquareClass::Neither
}

/// Pattern of the `a` slot in Cohn's table: a fixed odd value, or the
/// family of odd squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CohnPattern {
    Value(u64),
    OddSquare,
}

/// An exceptional triple `(r, s, a)` for which `P_r(a) P_s(a)` is a
/// square, `0 < r < s`, `a` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohnException {
    pub r: u64,
    pub s: u64,
    pub a: CohnPattern,
}

/// The five exceptional families of Cohn's theorem, a trusted table.
pub fn cohn_exceptions() -> Vec<CohnException> {
    vec![
        CohnException { r: 1, s: 2, a: CohnPattern::OddSquare },
        CohnException { r: 1, s: 12, a: CohnPattern::Value(1) },
        CohnException { r: 2, s: 12, a: CohnPattern::Value(1) },
        CohnException { r: 3, s: 6, a: CohnPattern::Value(1) },
        CohnException { r: 3, s: 6, a: CohnPattern::Value(3) },
    ]
}

/// Membership in Cohn's table for `0 < r < s` and odd `a`.
pub fn is_cohn_exception(r: u64, s: u64, a: u64) -> bool {
    debug_assert!(a % 2 == 1);
    cohn_exceptions().iter().any(|e| {
        e.r == r
            && e.s == s
            && match e.a {
                CohnPattern::Value(v) => v == a,
                CohnPattern::OddSquare => {
                    arith::is_perfect_square(&BigInt::from(a)).is_some()
                }
            }
    })
}

/// All odd `j <= max_index` whose `u_j` is a square or `d` times a
/// square, with the witness root.
pub fn find_square_terms(
    params: &LucasParams,
    max_index: u64,
    d: &BigInt,
) -> Vec<(u64, SquareClass)> {
    let mut out = Vec::new();
    let mut u_prev = BigInt::zero();
    let mut u = BigInt::one();
    let mut j = 1u64;
    while j <= max_index {
        if j % 2 == 1 {
            let class = classify_square(&u, d);
            if !matches!(class, SquareClass::Neither) {
                out.push((j, class));
            }
        }
        let next = params.trace() * &u + &u_prev;
        u_prev = std::mem::replace(&mut u, next);
        j += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn params(t: i64) -> LucasParams {
        LucasParams::new(b(t)).unwrap()
    }

    #[test]
    fn term_examples() {
        let p3 = params(3);
        assert_eq!(p3.u_term(13), b(1543321));
        assert_eq!(b(1543321), b(13) * b(118717));
        assert_eq!(p3.v_term(13), b(5564523));
        let p2 = params(2);
        assert_eq!(p2.u_term(7), b(169));
        for t in [1, 2, 3, 7] {
            let p = params(t);
            assert_eq!(p.u_term(0), b(0));
            assert_eq!(p.v_term(0), b(2));
            assert_eq!(p.u_term(1), b(1));
            assert_eq!(p.v_term(1), b(t));
        }
        assert_eq!(LucasParams::new(b(0)), Err(SequenceError::BadTrace));
    }

    #[test]
    fn uv_mod_examples() {
        let p3 = params(3);
        assert_eq!(p3.uv_mod(13, &b(53)).1, b(0));
        let p7 = params(7);
        let big_p: BigInt = "408359633417260832077".parse().unwrap();
        assert_eq!(p7.uv_mod(53, &big_p).1, b(0));
        let p5 = params(5);
        assert_eq!(p5.uv_mod(29, &b(64233493)).1, b(0));
        for t in [1i64, 4, 9] {
            let m = b(1000);
            assert_eq!(params(t).uv_mod(1, &m), (b(1), b(t)));
        }
    }

    #[test]
    fn uv_mod_matches_exact() {
        for t in [1i64, 2, 3, 5, 8] {
            let p = params(t);
            for j in [0u64, 1, 2, 7, 25, 64, 131] {
                for m in [2i64, 53, 97, 1_000_003] {
                    let m = b(m);
                    let (um, vm) = p.uv_mod(j, &m);
                    assert_eq!(um, p.u_term(j) % &m);
                    assert_eq!(vm, p.v_term(j) % &m);
                }
            }
        }
    }

    #[test]
    fn classify_square_examples() {
        assert!(classify_square(&b(5), &b(5)).is_d_square());
        assert_eq!(
            classify_square(&b(169), &b(2)),
            SquareClass::Square { root: b(13) }
        );
        assert_eq!(classify_square(&b(29), &b(2)), SquareClass::Neither);
    }

    #[test]
    fn cohn_table_examples() {
        // P_3(3) * P_6(3) = 10 * 360 = 3600 = 60^2
        let p3 = params(3);
        assert_eq!(p3.u_term(3) * p3.u_term(6), b(3600));
        assert!(is_cohn_exception(3, 6, 3));
        // P_12(1) = 144 = 12^2
        let p1 = params(1);
        assert_eq!(p1.u_term(12), b(144));
        assert!(is_cohn_exception(1, 12, 1));
        // (1, 2, b^2): P_2(9) = 9 = 3^2
        let p9 = params(9);
        assert_eq!(p9.u_term(2), b(9));
        assert!(is_cohn_exception(1, 2, 9));
        assert!(!is_cohn_exception(1, 2, 3));
        assert!(!is_cohn_exception(5, 7, 1));
        assert_eq!(cohn_exceptions().len(), 5);
    }

    #[test]
    fn find_square_terms_examples() {
        // t = 2, d = 2: squares exactly at j = 1, 7; no d-squares
        let hits = find_square_terms(&params(2), 25, &b(2));
        let indices: Vec<u64> = hits.iter().map(|(j, _)| *j).collect();
        assert_eq!(indices, vec![1, 7]);
        assert!(hits.iter().all(|(_, c)| c.is_square()));
        // t = 1, d = 5: u_5 = 5 is d times a square
        let hits = find_square_terms(&params(1), 13, &b(5));
        assert!(hits
            .iter()
            .any(|(j, c)| *j == 5 && c.is_d_square()));
        // trivial seed
        let hits = find_square_terms(&params(3), 1, &b(13));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].0, 1);
        assert!(hits[0].1.is_square());
    }

    #[test]
    fn omega_realizes_sequence() {
        // u_j = (w^j - wbar^j)/(w - wbar) for j <= 50
        for t in [1i64, 2, 3, 7] {
            let p = params(t);
            let w = p.omega();
            let wbar = w.conj();
            let diff = w.sub(&wbar).unwrap();
            for j in [0u64, 1, 2, 5, 17, 50] {
                let num = w.pow(j).sub(&wbar.pow(j)).unwrap();
                // u_j * (w - wbar) == w^j - wbar^j
                let lhs = diff.scale(&p.u_term(j));
                assert_eq!(lhs, num, "t = {t}, j = {j}");
                // v_j = w^j + wbar^j
                let v = w.pow(j).add(&wbar.pow(j)).unwrap();
                assert_eq!(v, QuadInt::from_int(&w.field(), p.v_term(j)));
            }
        }
    }
}
