//! Integer number theory on arbitrary-precision values.
//!
//! Primality is deterministic below 2^64 (Miller-Rabin with the first twelve
//! prime bases) and Baillie-PSW above. Everything else here is built on top
//! of that: modular square roots, multiplicative orders, square-free tests and
//! a generalized Pell solver.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Default trial-division bound for square-free tests.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Default |y| bound for the brute-force part of the Pell solver.
pub const DEFAULT_PELL_BOUND: u64 = 1_000_000;

/// Position of the highest set bit of |n| (bitlen(97) = 7, bitlen(0) = 0).
pub fn bitlen(n: &BigInt) -> u64 {
    n.magnitude().bits()
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64, a: u64) -> bool {
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for machine-sized integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    SMALL_PRIMES.iter().all(|&a| miller_rabin_u64(n, a))
}

fn miller_rabin_big(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    assert!(n.is_odd(), "jacobi needs an odd modulus");
    let mut n = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n);
    let mut res = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            res = -res;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        res
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    if x.is_odd() {
        (x + n) >> 1
    } else {
        x >> 1
    }
}

// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let nn = BigInt::from(n.clone());
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == -1 {
            break;
        }
        if j == 0 && d.magnitude() != n {
            return false;
        }
        d = if d.is_positive() { -(d + 2i32) } else { -(d - 2i32) };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4i32;
    let np1: BigInt = &nn + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(&nn);
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&nn);
        v = (&v * &v - &qk * 2i32).mod_floor(&nn);
        qk = (&qk * &qk).mod_floor(&nn);
        if k.bit(i) {
            let nu = half_mod((&p * &u + &v).mod_floor(&nn), &nn);
            let nv = half_mod((&d * &u + &p * &v).mod_floor(&nn), &nn);
            u = nu.mod_floor(&nn);
            v = nv.mod_floor(&nn);
            qk = (&qk * &q).mod_floor(&nn);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2i32).mod_floor(&nn);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(&nn);
    }
    false
}

/// Primality: exact below 2^64, Baillie-PSW above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for p in (3u32..2000).step_by(2) {
        if (n % p).is_zero() {
            return false;
        }
    }
    if n.is_even() {
        return false;
    }
    if !miller_rabin_big(n, &BigUint::from(2u32)) {
        return false;
    }
    if is_perfect_square(n) {
        return false;
    }
    strong_lucas(n)
}

/// Baillie-PSW plus `rounds` Miller-Rabin rounds with bases drawn from
/// ChaCha8 seeded by `seed`, for callers that want extra assurance.
pub fn is_prime_rounds(n: &BigUint, rounds: u32, seed: u64) -> bool {
    use num_bigint::RandBigInt;
    use rand::SeedableRng;
    if !is_prime(n) {
        return false;
    }
    if n.to_u64().is_some() {
        return true;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let hi = n - 2u32;
    (0..rounds).all(|_| miller_rabin_big(n, &rng.gen_biguint_range(&BigUint::from(2u32), &hi)))
}

/// Signed convenience wrapper: negative numbers are never prime.
pub fn is_prime_int(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Minus | Sign::NoSign => false,
        Sign::Plus => is_prime(n.magnitude()),
    }
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Exact integer square root of a perfect square, else `None`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Modular inverse of a modulo m (m ≥ 2).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Square roots of a modulo an odd prime p: {s, p−s}, {0}, or empty.
pub fn sqrt_mod(a: &BigUint, p: &BigUint) -> Result<Vec<BigUint>> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("sqrt_mod: modulus {p} is not prime")));
    }
    let a = a % p;
    if a.is_zero() {
        return Ok(vec![BigUint::zero()]);
    }
    if *p == BigUint::from(2u32) {
        return Ok(vec![a]);
    }
    let one = BigUint::one();
    let pm1 = p - &one;
    let half = &pm1 >> 1;
    if a.modpow(&half, p) != one {
        return Ok(vec![]);
    }
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigUint::from(2u32);
    while z.modpow(&half, p) == one {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while t != one {
        let mut i = 0;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    let other = p - &r;
    let mut out = vec![r.clone(), other];
    out.sort();
    Ok(out)
}

fn pollard_brent(n: &BigUint, c: u64, max_iter: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 64u64;
    let mut spent = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        spent += r;
        if spent > max_iter {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Prime factorization as sorted (prime, exponent) pairs, or `None` when a
/// composite cofactor resists the bounded rho search.
pub fn factorize(n: &BigUint) -> Option<Vec<(BigUint, u32)>> {
    factorize_bounded(n, 4_000_000)
}

pub fn factorize_bounded(n: &BigUint, rho_budget: u64) -> Option<Vec<(BigUint, u32)>> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return None;
    }
    let mut m = n.clone();
    for p in std::iter::once(2u32).chain((3u32..10_000).step_by(2)) {
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(p), e));
        }
        if m.is_one() {
            break;
        }
    }
    let mut stack = vec![m];
    let mut primes: Vec<BigUint> = Vec::new();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            primes.push(c);
            continue;
        }
        if is_perfect_square(&c) {
            let r = c.sqrt();
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let mut split = None;
        for seed in 1..8u64 {
            if let Some(d) = pollard_brent(&c, seed, rho_budget) {
                split = Some(d);
                break;
            }
        }
        let d = split?;
        stack.push(&c / &d);
        stack.push(d);
    }
    primes.sort();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Some(out)
}

/// Least e ≥ 1 with aᵉ ≡ 1 (mod n).
pub fn mult_order(a: &BigUint, n: &BigUint) -> Result<BigUint> {
    if *n < BigUint::from(2u32) {
        return Err(Error::Precondition("mult_order: modulus must be at least 2".into()));
    }
    let a = a % n;
    if !a.gcd(n).is_one() {
        return Err(Error::Precondition(format!("mult_order: gcd({a}, {n}) != 1")));
    }
    let one = BigUint::one();
    let group_order = factorize(n).map(|fs| {
        let mut phi = BigUint::one();
        for (p, e) in fs {
            phi *= p.pow(e - 1) * (&p - 1u32);
        }
        phi
    });
    if let Some(phi) = group_order {
        if let Some(fs) = factorize(&phi) {
            let mut ord = phi;
            for (p, _) in fs {
                while (&ord % &p).is_zero() && a.modpow(&(&ord / &p), n) == one {
                    ord /= &p;
                }
            }
            return Ok(ord);
        }
    }
    // Sequential scan as a last resort on small moduli.
    if n.bits() > 32 {
        return Err(Error::Unresolved(format!("mult_order: cannot factor group order of {n}")));
    }
    let nn = n.to_u64().unwrap();
    let aa = a.to_u64().unwrap();
    let mut x = aa;
    let mut e = 1u64;
    while x != 1 {
        x = mul_mod_u64(x, aa, nn);
        e += 1;
    }
    Ok(BigUint::from(e))
}

fn prime_divisors_u64(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            out.push(p);
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        p += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

/// True when the order of q modulo the prime r is exactly k.
///
/// Uses r | qᵏ − 1 and r ∤ q^(k/ℓ) − 1 for every prime ℓ | k, so r − 1 never
/// needs factoring.
pub fn has_embedding_degree(q: &BigUint, r: &BigUint, k: u64) -> bool {
    if k == 0 || r.is_zero() {
        return false;
    }
    let qm = q % r;
    if qm.is_zero() {
        return false;
    }
    let one = BigUint::one() % r;
    if qm.modpow(&BigUint::from(k), r) != one {
        return false;
    }
    prime_divisors_u64(k)
        .into_iter()
        .all(|l| qm.modpow(&BigUint::from(k / l), r) != one)
}

/// Tri-state answer for square-freeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareFree {
    Yes,
    No,
    Unknown,
}

/// Square-free part of n (n / largest square divisor) with a certainty flag.
///
/// The part is exact when the status is `Yes` or `No` with the cofactor left
/// after trial division being 1, prime, or a perfect square of a prime.
pub fn square_free_part(n: &BigUint, trial_bound: u64) -> (BigUint, SquareFree) {
    assert!(!n.is_zero(), "square_free_part of zero");
    let mut m = n.clone();
    let mut part = BigUint::one();
    let mut found_square = false;
    let mut p: u64 = 2;
    while p <= trial_bound {
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            if e >= 2 {
                found_square = true;
            }
            if e % 2 == 1 {
                part *= p;
            }
        }
        if m.is_one() {
            break;
        }
        if BigUint::from(p) * p > m {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        let st = if found_square { SquareFree::No } else { SquareFree::Yes };
        return (part, st);
    }
    // m has no factor ≤ p, so m < p² means m is prime.
    if BigUint::from(p) * p > m || is_prime(&m) {
        part *= &m;
        let st = if found_square { SquareFree::No } else { SquareFree::Yes };
        return (part, st);
    }
    if is_perfect_square(&m) {
        return (part, SquareFree::No);
    }
    if found_square {
        return (part * m, SquareFree::No);
    }
    (part * m, SquareFree::Unknown)
}

pub fn is_square_free(n: &BigUint, trial_bound: u64) -> SquareFree {
    if n.is_zero() {
        return SquareFree::No;
    }
    square_free_part(n, trial_bound).1
}

/// Solution of x² − N·y² = M.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub n: BigInt,
    pub m: BigInt,
}

impl PellSolution {
    pub fn holds(&self) -> bool {
        &self.x * &self.x - &self.n * &self.y * &self.y == self.m
    }

    /// Multiply by the unit (a + b√N), giving another solution of the same M.
    pub fn compose(&self, unit: &(BigInt, BigInt)) -> PellSolution {
        let (a, b) = unit;
        PellSolution {
            x: &self.x * a + &self.n * &self.y * b,
            y: &self.x * b + &self.y * a,
            n: self.n.clone(),
            m: self.m.clone(),
        }
    }
}

/// Fundamental solution of x² − N·y² = 1 via the continued fraction of √N.
pub fn fundamental_unit(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if !n.is_positive() || exact_sqrt(n).is_some() {
        return Err(Error::Precondition(format!("fundamental_unit: {n} is not a positive non-square")));
    }
    let a0 = n.sqrt();
    let (mut m, mut d, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    loop {
        if &p * &p - n * &q * &q == BigInt::one() {
            return Ok((p, q));
        }
        m = &d * &a - &m;
        d = (n - &m * &m) / &d;
        a = (&a0 + &m) / &d;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Solutions of x² − N·y² = M with 0 ≤ y ≤ bound and x ≥ 0, sorted by (y, x).
///
/// Every other solution class member is reachable by `compose` with powers of
/// `fundamental_unit(N)` and sign changes.
pub fn solve_pell(n: &BigInt, m: &BigInt, search_bound: u64) -> Result<Vec<PellSolution>> {
    if !n.is_positive() || exact_sqrt(n).is_some() {
        return Err(Error::Precondition(format!("solve_pell: N = {n} must be a positive non-square")));
    }
    if m.is_zero() {
        return Err(Error::Precondition("solve_pell: M must be nonzero".into()));
    }
    let mut out = Vec::new();
    let small = n.to_i128().zip(m.to_i128());
    for y in 0..=search_bound {
        let x = match small {
            Some((nn, mm)) if (y as i128) < (1i128 << 40) / nn.max(1) => {
                let rhs = mm + nn * (y as i128) * (y as i128);
                if rhs < 0 {
                    continue;
                }
                let r = (rhs as u128).sqrt();
                if r * r != rhs as u128 {
                    continue;
                }
                BigInt::from(r)
            }
            _ => {
                let yy = BigInt::from(y);
                let rhs = m + n * &yy * &yy;
                match exact_sqrt(&rhs) {
                    Some(r) => r,
                    None => continue,
                }
            }
        };
        out.push(PellSolution { x, y: BigInt::from(y), n: n.clone(), m: m.clone() });
    }
    Ok(out)
}

/// Chinese remainder for pairwise coprime moduli.
pub fn crt(residues: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt)> {
    let mut acc = (BigInt::zero(), BigInt::one());
    for (r, m) in residues {
        let (a, n) = &acc;
        let inv = mod_inverse(n, m)?;
        let t = ((r - a) * inv).mod_floor(m);
        let x = a + n * t;
        let nm = n * m;
        acc = (x.mod_floor(&nm), nm);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn extra_rounds() {
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime_rounds(&m127, 8, 1));
        assert!(!is_prime_rounds(&(&m127 * &m127), 8, 1));
        assert!(is_prime_rounds(&b(97), 8, 1));
    }

    #[test]
    fn small_primes_agree_with_trial_division() {
        let naive = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..20_000u64 {
            assert_eq!(is_prime(&b(n)), naive(n), "n = {n}");
        }
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&b(97)));
        assert!(!is_prime(&b(1)));
        // Carmichael and strong pseudoprimes to several bases
        assert!(!is_prime(&b(561)));
        assert!(!is_prime(&b(3_215_031_751)));
        assert!(!is_prime(&b(3_825_123_056_546_413_051)));
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime(&m127));
        assert!(!is_prime(&((BigUint::one() << 128) + 1u32)));
        assert!(!is_prime(&(&m127 * &m127)));
    }

    #[test]
    fn sqrt_mod_examples() {
        assert_eq!(sqrt_mod(&b(10), &b(13)).unwrap(), vec![b(6), b(7)]);
        assert_eq!(sqrt_mod(&b(0), &b(13)).unwrap(), vec![b(0)]);
        assert!(sqrt_mod(&b(5), &b(13)).unwrap().is_empty());
        assert!(sqrt_mod(&b(5), &b(15)).is_err());
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(&b(5), &b(7)).unwrap(), b(6));
        assert_eq!(mult_order(&b(1), &b(97)).unwrap(), b(1));
        assert_eq!(mult_order(&b(103 % 97), &b(97)).unwrap(), b(12));
        assert!(mult_order(&b(6), &b(9)).is_err());
        assert_eq!(mult_order(&b(2), &b(15)).unwrap(), b(4));
    }

    #[test]
    fn embedding_degree_shortcut() {
        assert!(has_embedding_degree(&b(103), &b(97), 12));
        assert!(!has_embedding_degree(&b(103), &b(97), 6));
        assert!(has_embedding_degree(&b(43), &b(13), 6));
        assert!(has_embedding_degree(&b(5), &b(7), 6));
    }

    #[test]
    fn square_free_examples() {
        assert_eq!(is_square_free(&b(19), DEFAULT_TRIAL_BOUND), SquareFree::Yes);
        assert_eq!(is_square_free(&b(12), DEFAULT_TRIAL_BOUND), SquareFree::No);
        assert_eq!(is_square_free(&b(363), DEFAULT_TRIAL_BOUND), SquareFree::No);
        assert_eq!(square_free_part(&b(363), 100), (b(3), SquareFree::No));
        // two large primes beyond the bound: undecidable
        let p = b(1_000_003);
        let q = b(1_000_033);
        assert_eq!(is_square_free(&(&p * &q), 1000), SquareFree::Unknown);
        assert_eq!(is_square_free(&(&p * &p), 1000), SquareFree::No);
    }

    #[test]
    fn pell_examples() {
        let sols = solve_pell(&BigInt::from(3), &BigInt::from(1), 10).unwrap();
        assert!(sols.iter().any(|s| s.x == BigInt::from(2) && s.y == BigInt::from(1)));
        let sols = solve_pell(&BigInt::from(57), &BigInt::from(-8), 10).unwrap();
        assert!(sols.iter().any(|s| s.x == BigInt::from(7) && s.y == BigInt::from(1)));
        assert!(solve_pell(&BigInt::from(2), &BigInt::from(3), 1000).unwrap().is_empty());
        assert!(solve_pell(&BigInt::from(4), &BigInt::from(3), 10).is_err());
        assert_eq!(fundamental_unit(&BigInt::from(61)).unwrap().0, BigInt::from(1_766_319_049u64));
    }

    #[test]
    fn factorize_roundtrip() {
        let n = b(600_851_475_143);
        let fs = factorize(&n).unwrap();
        let prod = fs.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        assert_eq!(prod, n);
        assert_eq!(fs.last().unwrap().0, b(6857));
    }

    #[test]
    fn crt_combines() {
        let (x, m) = crt(&[(BigInt::from(2), BigInt::from(3)), (BigInt::from(3), BigInt::from(5))]).unwrap();
        assert_eq!((x, m), (BigInt::from(8), BigInt::from(15)));
    }
}
