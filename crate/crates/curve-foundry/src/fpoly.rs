//! Dense polynomials over small prime fields and the Zassenhaus pieces built
//! on them (distinct/equal-degree factorization, Hensel lifting).
//!
//! Internal plumbing for `polyring::is_irreducible_q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) type Fp = Vec<u64>;

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

pub(crate) fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &Fp) -> isize {
    a.len() as isize - 1
}

pub(crate) fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(out)
}

fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| mulm(x, c, p)).collect())
}

pub(crate) fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut r = a.clone();
    if deg(&r) < deg(b) {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let li = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - db];
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let c = mulm(*r.last().unwrap(), li, p);
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mulm(c, bc, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        Some(&l) => scale(a, inv(l, p), p),
        None => vec![],
    }
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
pub(crate) fn ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let li = inv(*r0.last().unwrap(), p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % p, p)).collect())
}

pub(crate) fn powmod(base: &Fp, mut e: u128, m: &Fp, p: u64) -> Fp {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn is_squarefree(a: &Fp, p: u64) -> bool {
    let d = derivative(a, p);
    !d.is_empty() && gcd(a, &d, p).len() == 1
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut i = 1;
    while deg(&f) >= 2 * i as isize {
        h = powmod(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            out.push((g.clone(), i));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
        i += 1;
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

/// Equal-degree split (Cantor-Zassenhaus) of a product of degree-d factors.
fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let g = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = powmod(&t, 2, f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            sub(&powmod(&a, e, f, p), &vec![1], p)
        };
        let h = gcd(f, &g, p);
        if h.len() > 1 && h.len() < f.len() {
            let other = divrem(f, &h, p).0;
            let mut out = edf(&h, d, p, rng);
            out.extend(edf(&monic(&other, p), d, p, rng));
            return out;
        }
    }
}

/// Full factorization of a monic square-free polynomial into monic irreducibles.
pub(crate) fn factor_squarefree(f: &Fp, p: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        out.extend(edf(&g, d, p, &mut rng));
    }
    out.sort();
    out
}

/// Degrees of the irreducible factors, via DDF only.
pub(crate) fn degree_pattern(f: &Fp, p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        let count = (g.len() - 1) / d;
        out.extend(std::iter::repeat_n(d, count));
    }
    out
}

/// Reduce an integer polynomial modulo p.
pub(crate) fn reduce(a: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

// Integer polynomial helpers for Hensel lifting, coefficients kept in [0, m).
type Zp = Vec<BigInt>;

fn ztrim(mut a: Zp) -> Zp {
    while a.last().map(|c| c.is_zero()) == Some(true) {
        a.pop();
    }
    a
}

fn zmod(a: &Zp, m: &BigInt) -> Zp {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zmul(a: &Zp, b: &Zp, m: &BigInt) -> Zp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zmod(&out, m)
}

fn zsub(a: &Zp, b: &Zp, m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zmod(&(0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect(), m)
}

fn to_z(a: &Fp) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

// Lift a factorization f ≡ g·h (mod p), g and h monic and coprime, to modulus p^a.
fn hensel_pair(f: &Zp, g: &Fp, h: &Fp, p: u64, a: u32) -> (Zp, Zp) {
    let (_, s, t) = ext_gcd(g, h, p);
    let pb = BigInt::from(p);
    let mut gz = to_z(g);
    let mut hz = to_z(h);
    let mut pk = pb.clone();
    for _ in 1..a {
        let next = &pk * &pb;
        let diff = zsub(&zmod(f, &next), &zmul(&gz, &hz, &next), &next);
        let e: Fp = trim(diff.iter().map(|c| (c / &pk).mod_floor(&pb).to_u64().unwrap()).collect());
        // G·h + H·g ≡ e (mod p), deg G < deg g
        let et = mul(&e, &t, p);
        let (qq, big_g) = divrem(&et, g, p);
        let big_h = add(&mul(&e, &s, p), &mul(&qq, h, p), p);
        let lift = |base: &Zp, delta: &Fp| {
            let n = base.len().max(delta.len());
            let z = BigInt::zero();
            zmod(
                &(0..n)
                    .map(|i| base.get(i).unwrap_or(&z) + &pk * BigInt::from(delta.get(i).copied().unwrap_or(0)))
                    .collect(),
                &next,
            )
        };
        gz = lift(&gz, &big_g);
        hz = lift(&hz, &big_h);
        pk = next;
    }
    (gz, hz)
}

/// Lift monic factors of the monic f (mod p) to monic factors mod p^a.
pub(crate) fn hensel_lift(f: &Zp, factors: &[Fp], p: u64, a: u32) -> Vec<Zp> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(a);
        return vec![zmod(f, &m)];
    }
    let mid = factors.len() / 2;
    let g = factors[..mid].iter().fold(vec![1u64], |acc, x| mul(&acc, x, p));
    let h = factors[mid..].iter().fold(vec![1u64], |acc, x| mul(&acc, x, p));
    let (gz, hz) = hensel_pair(f, &g, &h, p, a);
    let mut out = hensel_lift(&gz, &factors[..mid], p, a);
    out.extend(hensel_lift(&hz, &factors[mid..], p, a));
    out
}

/// Product of integer polynomials mod m, then mapped to the symmetric range.
pub(crate) fn symmetric_product(parts: &[&Zp], lc: &BigInt, m: &BigInt) -> Zp {
    let mut acc: Zp = vec![lc.mod_floor(m)];
    for p in parts {
        acc = zmul(&acc, p, m);
    }
    let half: BigInt = m >> 1;
    ztrim(acc.into_iter().map(|c| if c > half { c - m } else { c }).collect())
}

/// Exact integer division test: does d divide f over Z?
pub(crate) fn divides_z(d: &Zp, f: &Zp) -> bool {
    if d.is_empty() {
        return false;
    }
    let mut r = f.clone();
    let dl = d.last().unwrap();
    let dd = d.len() - 1;
    while r.len() > dd && !r.is_empty() {
        let lead = r.last().unwrap().clone();
        if !(&lead % dl).is_zero() {
            return false;
        }
        let c = lead / dl;
        let shift = r.len() - 1 - dd;
        for (i, x) in d.iter().enumerate() {
            r[shift + i] -= &c * x;
        }
        r = ztrim(r);
    }
    r.is_empty()
}

pub(crate) fn content_primitive(a: &Zp) -> Zp {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return a.clone();
    }
    let mut out: Zp = a.iter().map(|c| c / &g).collect();
    if out.last().map(|c| c.is_negative()) == Some(true) {
        out = out.into_iter().map(|c| -c).collect();
    }
    out
}

pub(crate) fn is_one_z(a: &Zp) -> bool {
    a.len() == 1 && a[0].abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_mod_p() {
        // x^4 - x^2 + 1 splits into two quadratics mod 7
        let f = reduce(&[1, 0, -1, 0, 1].map(BigInt::from), 7);
        let fs = factor_squarefree(&f, 7);
        assert_eq!(fs.iter().map(|g| g.len() - 1).collect::<Vec<_>>(), vec![2, 2]);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, 7));
        assert_eq!(prod, f);
        // mod 13 it splits completely
        let f13 = reduce(&[1, 0, -1, 0, 1].map(BigInt::from), 13);
        assert_eq!(degree_pattern(&f13, 13), vec![1, 1, 1, 1]);
    }

    #[test]
    fn lifting_reproduces_product() {
        let f: Zp = [1, 0, -1, 0, 1].map(BigInt::from).to_vec();
        let fs = factor_squarefree(&reduce(&f, 13), 13);
        let lifted = hensel_lift(&f, &fs, 13, 6);
        let m = BigInt::from(13).pow(6);
        let refs: Vec<&Zp> = lifted.iter().collect();
        let prod = symmetric_product(&refs, &BigInt::one(), &m);
        assert_eq!(prod, f);
    }
}
