//! Exact integer kernels: integer square roots, squarefree and
//! fourth-power-free decomposition, Jacobi symbols, primality testing and
//! bounded factorization. Everything here is a pure function on
//! arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("input must be nonnegative")]
    NegativeInput,
    #[error("input must be positive")]
    NonPositive,
    #[error("modulus must be odd and positive")]
    BadModulus,
}

/// Largest input for which the fixed Miller-Rabin witness set below is
/// known to be deterministic: 3,317,044,064,679,887,385,961,981.
pub const DETERMINISTIC_PRIMALITY_BOUND: &str = "3317044064679887385961981";

const MR_WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Floor of the square root, Newton iteration on big integers.
pub fn isqrt(v: &BigInt) -> Result<BigInt, ArithError> {
    if v.is_negative() {
        return Err(ArithError::NegativeInput);
    }
    Ok(v.sqrt())
}

/// Returns `Some(k)` with `k >= 0` and `k*k == v`, or `None`.
/// Negative inputs are simply not squares.
pub fn is_perfect_square(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    // cheap residue filter before the root
    if let Some(w) = v.to_u64() {
        if !SQUARES_MOD_256[(w & 0xff) as usize] {
            return None;
        }
    } else {
        let low = (v & BigInt::from(0xffu32)).to_usize().unwrap();
        if !SQUARES_MOD_256[low] {
            return None;
        }
    }
    let r = v.sqrt();
    if &r * &r == *v {
        Some(r)
    } else {
        None
    }
}

static SQUARES_MOD_256: [bool; 256] = {
    let mut t = [false; 256];
    let mut i = 0;
    while i < 256 {
        t[(i * i) % 256] = true;
        i += 1;
    }
    t
};

/// Writes `v = d * c^2` with `d` squarefree. Requires `v >= 1`.
pub fn squarefree_part(v: &BigInt) -> Result<(BigInt, BigInt), ArithError> {
    let f = factorize_complete(v)?;
    let mut d = BigInt::one();
    let mut c = BigInt::one();
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            d *= p;
        }
        c *= p.pow(e / 2);
    }
    Ok((d, c))
}

/// Writes `v = r * s^4` with `r` fourth-power free. Requires `v >= 1`.
pub fn fourth_power_free_part(v: &BigInt) -> Result<(BigInt, BigInt), ArithError> {
    let f = factorize_complete(v)?;
    let mut r = BigInt::one();
    let mut s = BigInt::one();
    for (p, e) in &f.factors {
        r *= p.pow(e % 4);
        s *= p.pow(e / 4);
    }
    Ok((r, s))
}

/// Jacobi symbol `(a/n)` for odd positive `n`. Equals the Legendre symbol
/// when `n` is prime.
pub fn jacobi_symbol(a: &BigInt, n: &BigInt) -> Result<i8, ArithError> {
    if !n.is_positive() || n.is_even() {
        return Err(ArithError::BadModulus);
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result: i8 = 1;
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r = (&n % 8u32).to_u8().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u8().unwrap() == 3 && (&n % 4u32).to_u8().unwrap() == 3 {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        Ok(result)
    } else {
        Ok(0)
    }
}

/// Strong probable-prime test with the fixed witness set 2..=41.
/// Deterministic for all `v` below [`DETERMINISTIC_PRIMALITY_BOUND`];
/// above that it is a strong-probable-prime claim for the same witnesses.
pub fn is_probable_prime(v: &BigInt) -> bool {
    if v <= &BigInt::one() {
        return false;
    }
    if let Some(w) = v.to_u64() {
        return is_prime_u64(w);
    }
    for p in MR_WITNESSES {
        if (v % p).is_zero() {
            // v > 41^2 here, so divisibility means composite
            return false;
        }
    }
    let one = BigInt::one();
    let vm1 = v - &one;
    let s = vm1.trailing_zeros().unwrap();
    let d = &vm1 >> s;
    'witness: for w in MR_WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, v);
        if x.is_one() || x == vm1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (&x * &x) % v;
            if x == vm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_u64(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if v == p {
            return true;
        }
        if v % p == 0 {
            return false;
        }
    }
    let s = (v - 1).trailing_zeros();
    let d = (v - 1) >> s;
    'witness: for w in MR_WITNESSES {
        let mut x = pow_mod_u64(w as u64, d, v);
        if x == 1 || x == v - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, v);
            if x == v - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Effort bounds for [`factorize`]: trial division up to `trial_bound`,
/// then Pollard rho with at most `rho_rounds` restarts of
/// `rho_iterations` steps each on every remaining composite.
#[derive(Debug, Clone)]
pub struct FactorEffort {
    pub trial_bound: u64,
    pub rho_rounds: u32,
    pub rho_iterations: u64,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort {
            trial_bound: 1_000_000,
            rho_rounds: 24,
            rho_iterations: 1 << 20,
        }
    }
}

impl FactorEffort {
    pub fn with_trial_bound(trial_bound: u64) -> Self {
        FactorEffort {
            trial_bound,
            ..Default::default()
        }
    }
}

/// Result of a (possibly partial) factorization. The recomposition
/// `value == product(p^e) * product(unfactored)` always holds exactly;
/// every entry of `factors` is prime and the list is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: BigInt,
    pub factors: Vec<(BigInt, u32)>,
    /// Composite cofactors the effort bound could not split.
    pub unfactored: Vec<BigInt>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    pub fn recompose(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        for c in &self.unfactored {
            acc *= c;
        }
        acc
    }
}

/// Factors `v >= 1` by trial division up to the effort's bound, then
/// Pollard rho (Brent variant) on what remains. Cofactors that survive the
/// effort bound are returned unfactored rather than reported as prime.
pub fn factorize(v: &BigInt, effort: &FactorEffort) -> Result<Factorization, ArithError> {
    if !v.is_positive() {
        return Err(ArithError::NonPositive);
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut composites: Vec<BigInt> = Vec::new();

    let mut rem = v.clone();
    trial_divide(&mut rem, effort.trial_bound, &mut primes);

    if !rem.is_one() {
        // everything below trial_bound^2 that survived trial division is prime
        let bound_sq = BigInt::from(effort.trial_bound) * BigInt::from(effort.trial_bound);
        let mut stack = vec![rem];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if m < bound_sq || is_probable_prime(&m) {
                push_prime(&mut primes, m, 1);
                continue;
            }
            if let Some(k) = is_perfect_square(&m) {
                stack.push(k.clone());
                stack.push(k);
                continue;
            }
            match rho_split(&m, effort) {
                Some(f) => {
                    stack.push(&m / &f);
                    stack.push(f);
                }
                None => composites.push(m),
            }
        }
    }

    primes.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in primes {
        match merged.last_mut() {
            Some(last) if last.0 == p => last.1 += e,
            _ => merged.push((p, e)),
        }
    }
    composites.sort();
    Ok(Factorization {
        value: v.clone(),
        factors: merged,
        unfactored: composites,
    })
}

/// Complete factorization with escalating effort. Used where a squarefree
/// or fourth-power-free decomposition must be exact.
pub fn factorize_complete(v: &BigInt) -> Result<Factorization, ArithError> {
    let mut effort = FactorEffort::default();
    loop {
        let f = factorize(v, &effort)?;
        if f.is_complete() {
            return Ok(f);
        }
        effort.rho_rounds *= 2;
        effort.rho_iterations *= 4;
    }
}

fn push_prime(primes: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32) {
    primes.push((p, e));
}

fn trial_divide(rem: &mut BigInt, bound: u64, primes: &mut Vec<(BigInt, u32)>) {
    // u64 fast path covers every value met by the duplicate search
    if let Some(mut m) = rem.to_u64() {
        let mut q: u64 = 2;
        while q <= bound && (q as u128) * (q as u128) <= m as u128 {
            if m % q == 0 {
                let mut e = 0u32;
                while m % q == 0 {
                    m /= q;
                    e += 1;
                }
                push_prime(primes, BigInt::from(q), e);
            }
            q = if q == 2 { 3 } else { q + 2 };
        }
        if m > 1 && (q as u128) * (q as u128) > m as u128 {
            push_prime(primes, BigInt::from(m), 1);
            m = 1;
        }
        *rem = BigInt::from(m);
        return;
    }
    let mut q: u64 = 2;
    while q <= bound {
        let qb = BigInt::from(q);
        if &qb * &qb > *rem {
            break;
        }
        if (&*rem % &qb).is_zero() {
            let mut e = 0u32;
            while (&*rem % &qb).is_zero() {
                *rem /= &qb;
                e += 1;
            }
            push_prime(primes, qb, e);
        }
        q = if q == 2 { 3 } else { q + 2 };
    }
}

/// One nontrivial factor of composite `m`, or `None` within the effort.
fn rho_split(m: &BigInt, effort: &FactorEffort) -> Option<BigInt> {
    if let Some(w) = m.to_u64() {
        return rho_u64(w).map(BigInt::from);
    }
    for round in 0..effort.rho_rounds {
        let c = BigInt::from(2 * round + 1);
        if let Some(f) = rho_brent(m, &c, effort.rho_iterations) {
            return Some(f);
        }
    }
    None
}

fn rho_brent(m: &BigInt, c: &BigInt, max_iter: u64) -> Option<BigInt> {
    let mut y = BigInt::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut iter: u64 = 0;
    while g.is_one() && iter < max_iter {
        x = y.clone();
        for _ in 0..r {
            y = (&y * &y + c) % m;
        }
        let mut k: u64 = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let batch = 128.min(r - k);
            for _ in 0..batch {
                y = (&y * &y + c) % m;
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % m;
            }
            g = q.gcd(m);
            k += batch;
            iter += batch;
        }
        r *= 2;
    }
    if g == *m {
        // backtrack
        loop {
            ys = (&ys * &ys + c) % m;
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(m);
            if !g.is_one() {
                break;
            }
        }
    }
    if g.is_one() || g == *m {
        None
    } else {
        Some(g)
    }
}

fn rho_step_u64(x: u64, c: u64, m: u64) -> u64 {
    ((x as u128 * x as u128 + c as u128) % m as u128) as u64
}

fn rho_u64(m: u64) -> Option<u64> {
    for c in (1u64..=41).step_by(2) {
        let mut x: u64 = 2;
        let mut y: u64 = 2;
        let mut d: u64 = 1;
        let mut steps = 0u64;
        while d == 1 && steps < 1 << 24 {
            x = rho_step_u64(x, c, m);
            y = rho_step_u64(rho_step_u64(y, c, m), c, m);
            d = x.abs_diff(y).gcd(&m);
            steps += 1;
        }
        if d != m && d != 1 {
            return Some(d);
        }
    }
    None
}
