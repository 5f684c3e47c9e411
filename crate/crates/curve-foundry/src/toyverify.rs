//! Desk-scale ground truth: brute-force curve orders over small prime fields,
//! a Miller-loop Tate pairing into F_{q^k}, and generic DLP solvers used to
//! run the MOV transfer end to end.

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpoly::{self, mulm, powm};
use crate::instantiate::CurveInstance;
use crate::mathcore::is_prime_u64;

/// Element of F_{q^k}: coefficients in ascending degree, trimmed; empty is zero.
pub type Fqk = Vec<u64>;

/// Largest base field accepted by the brute-force order count.
pub const MAX_ENUM_Q: u64 = 10_000_000;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test for a monic f of degree k over F_q.
fn irreducible_mod(f: &[u64], q: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let f = f.to_vec();
    let x = vec![0, 1];
    // frob[i] = x^(q^i) mod f
    let mut frob = vec![x.clone()];
    for i in 0..k {
        let next = fpoly::powmod(&frob[i], q as u128, &f, q);
        frob.push(next);
    }
    if frob[k] != x {
        return false;
    }
    prime_divisors(k as u64).into_iter().all(|p| {
        let h = fpoly::sub(&frob[k / p as usize], &x, q);
        fpoly::gcd(&h, &f, q) == vec![1]
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtField {
    pub q: u64,
    pub k: u32,
    /// Monic, irreducible over F_q, ascending coefficients.
    pub modulus: Vec<u64>,
}

impl ExtField {
    /// F_{q^k} reduced by the first monic irreducible of degree k, with the
    /// constant term varying fastest.
    pub fn new(q: u64, k: u32) -> Result<ExtField> {
        Self::check_size(q, k)?;
        let k = k as usize;
        let mut idx: u128 = 0;
        let total = (q as u128).pow(k as u32);
        while idx < total {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut rest = idx;
            for _ in 0..k {
                coeffs.push((rest % q as u128) as u64);
                rest /= q as u128;
            }
            coeffs.push(1);
            if (k == 1 || coeffs[0] != 0) && irreducible_mod(&coeffs, q) {
                return Ok(ExtField { q, k: k as u32, modulus: coeffs });
            }
            idx += 1;
        }
        Err(Error::NotFound(format!("no irreducible of degree {k} over F_{q}")))
    }

    pub fn with_modulus(q: u64, modulus: Vec<u64>) -> Result<ExtField> {
        let k = modulus.len().saturating_sub(1) as u32;
        Self::check_size(q, k)?;
        if modulus.last() != Some(&1) || !irreducible_mod(&modulus, q) {
            return Err(Error::Precondition("reduction polynomial must be monic irreducible".into()));
        }
        Ok(ExtField { q, k, modulus })
    }

    fn check_size(q: u64, k: u32) -> Result<()> {
        if !is_prime_u64(q) || q >= 1 << 32 {
            return Err(Error::Precondition(format!("q = {q} must be a prime below 2^32")));
        }
        if k == 0 || (q as u128).checked_pow(k).is_none_or(|n| n >= 1 << 120) {
            return Err(Error::Precondition(format!("F_{q}^{k} is outside toy range")));
        }
        Ok(())
    }

    /// q^k.
    pub fn order(&self) -> u128 {
        (self.q as u128).pow(self.k)
    }

    fn reduce(&self, a: Fqk) -> Fqk {
        if a.len() < self.modulus.len() {
            a
        } else {
            fpoly::divrem(&a, &self.modulus, self.q).1
        }
    }

    pub fn zero(&self) -> Fqk {
        vec![]
    }

    pub fn one(&self) -> Fqk {
        vec![1]
    }

    pub fn base(&self, c: u64) -> Fqk {
        fpoly::trim(vec![c % self.q])
    }

    pub fn add(&self, a: &Fqk, b: &Fqk) -> Fqk {
        fpoly::add(a, b, self.q)
    }

    pub fn sub(&self, a: &Fqk, b: &Fqk) -> Fqk {
        fpoly::sub(a, b, self.q)
    }

    pub fn neg(&self, a: &Fqk) -> Fqk {
        fpoly::sub(&vec![], a, self.q)
    }

    pub fn mul(&self, a: &Fqk, b: &Fqk) -> Fqk {
        self.reduce(fpoly::mul(a, b, self.q))
    }

    pub fn scale(&self, a: &Fqk, c: u64) -> Fqk {
        fpoly::trim(a.iter().map(|&x| mulm(x, c % self.q, self.q)).collect())
    }

    pub fn inv(&self, a: &Fqk) -> Option<Fqk> {
        if a.is_empty() {
            return None;
        }
        let (g, s, _) = fpoly::ext_gcd(a, &self.modulus, self.q);
        (g == vec![1]).then(|| self.reduce(s))
    }

    pub fn pow(&self, a: &Fqk, mut e: u128) -> Fqk {
        let mut acc = self.one();
        let mut b = self.reduce(a.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn is_one(&self, a: &Fqk) -> bool {
        a == &self.one()
    }

    /// Quadratic character: 0, 1 or −1.
    pub fn legendre(&self, a: &Fqk) -> i32 {
        if a.is_empty() {
            return 0;
        }
        if self.is_one(&self.pow(a, (self.order() - 1) / 2)) {
            1
        } else {
            -1
        }
    }

    /// Deterministic pseudo-random element for counter `c`.
    pub fn element_from_counter(&self, c: u64) -> Fqk {
        let mut s = splitmix64(c ^ 0x7461_7465);
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            s = splitmix64(s);
            out.push(s % self.q);
        }
        fpoly::trim(out)
    }

    /// Tonelli-Shanks over the cyclic group of order q^k − 1.
    pub fn sqrt(&self, a: &Fqk) -> Option<Fqk> {
        match self.legendre(a) {
            0 => return Some(self.zero()),
            -1 => return None,
            _ => {}
        }
        let n = self.order() - 1;
        let (mut m, mut s) = (n, 0u32);
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        let z = (1u64..).map(|c| self.element_from_counter(c)).find(|z| self.legendre(z) == -1)?;
        let mut c = self.pow(&z, m);
        let mut t = self.pow(a, m);
        let mut r = self.pow(a, m.div_ceil(2));
        let mut mm = s;
        while !self.is_one(&t) {
            let mut i = 0;
            let mut t2 = t.clone();
            while !self.is_one(&t2) {
                t2 = self.mul(&t2, &t2);
                i += 1;
                if i == mm {
                    return None;
                }
            }
            let mut b = c.clone();
            for _ in 0..(mm - i - 1) {
                b = self.mul(&b, &b);
            }
            mm = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Point {
    Inf,
    Aff(Fqk, Fqk),
}

/// y² = x³ + a·x + b over F_q with n points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToyCurve {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub n: u64,
}

fn discriminant_zero(q: u64, a: u64, b: u64) -> bool {
    let a3 = mulm(mulm(a, a, q), a, q);
    let b2 = mulm(b, b, q);
    (mulm(4, a3, q) + mulm(27, b2, q)).is_multiple_of(q)
}

/// #E(F_q) including the point at infinity, by summing the quadratic character.
pub fn curve_order_bruteforce(q: u64, a: u64, b: u64) -> Result<u64> {
    if !(5..=MAX_ENUM_Q).contains(&q) || !is_prime_u64(q) {
        return Err(Error::Precondition(format!("q = {q} must be a prime in [5, {MAX_ENUM_Q}]")));
    }
    let (a, b) = (a % q, b % q);
    if discriminant_zero(q, a, b) {
        return Err(Error::Precondition(format!("y^2 = x^3 + {a}x + {b} is singular mod {q}")));
    }
    let half = (q - 1) / 2;
    let mut n: i64 = q as i64 + 1;
    for x in 0..q {
        let rhs = (mulm(mulm(x, x, q), x, q) + mulm(a, x, q) + b) % q;
        if rhs != 0 {
            n += if powm(rhs, half, q) == 1 { 1 } else { -1 };
        }
    }
    Ok(n as u64)
}

fn within_hasse(q: u64, n: u64) -> bool {
    let t = q as i128 + 1 - n as i128;
    t * t <= 4 * q as i128
}

/// First curve of order exactly `target_n`: y² = x³ + b for D = 3, y² = x³ + ax
/// for D = 1, otherwise every nonsingular (a, b).
pub fn find_curve_coeff(q: u64, target_n: u64, d: Option<u64>) -> Result<ToyCurve> {
    if !within_hasse(q, target_n) {
        return Err(Error::NotFound(format!("order {target_n} violates the Hasse bound for q = {q}")));
    }
    let hit = |a, b| -> Option<ToyCurve> {
        if discriminant_zero(q, a, b) {
            return None;
        }
        (curve_order_bruteforce(q, a, b).ok()? == target_n).then_some(ToyCurve { q, a, b, n: target_n })
    };
    let found = match d {
        Some(3) => (1..q).find_map(|b| hit(0, b)),
        Some(1) => (1..q).find_map(|a| hit(a, 0)),
        _ => (0..q).find_map(|a| (0..q).find_map(|b| hit(a, b))),
    };
    // the shortcut scans can miss when the family discriminant is not the curve's
    found
        .or_else(|| if matches!(d, Some(1 | 3)) { (0..q).find_map(|a| (0..q).find_map(|b| hit(a, b))) } else { None })
        .ok_or_else(|| Error::NotFound(format!("no curve over F_{q} with {target_n} points")))
}

/// A curve over F_q whose order is divisible by `r`, same scan order.
pub fn find_curve_with_subgroup(q: u64, r: u64) -> Result<ToyCurve> {
    let hit = |a, b| -> Option<ToyCurve> {
        if discriminant_zero(q, a, b) {
            return None;
        }
        let n = curve_order_bruteforce(q, a, b).ok()?;
        (n % r == 0).then_some(ToyCurve { q, a, b, n })
    };
    (1..q)
        .find_map(|b| hit(0, b))
        .or_else(|| (1..q).find_map(|a| hit(a, 0)))
        .or_else(|| (0..q).find_map(|a| (0..q).find_map(|b| hit(a, b))))
        .ok_or_else(|| Error::NotFound(format!("no curve over F_{q} has a subgroup of order {r}")))
}

/// The curve behind a small verified instance.
pub fn toy_curve_for(inst: &CurveInstance) -> Result<ToyCurve> {
    use num_traits::ToPrimitive;
    let small = |v: &num_bigint::BigInt, what: &str| {
        v.to_u64().ok_or_else(|| Error::Precondition(format!("{what} = {v} is too large for a toy curve")))
    };
    let q = small(&inst.q, "q")?;
    let n = small(&(&inst.q + 1u32 - &inst.t), "#E")?;
    let d = small(&inst.d, "D")?;
    find_curve_coeff(q, n, Some(d))
}

/// Smallest i ≥ 1 with r | q^i − 1.
pub fn embedding_degree(q: u64, r: u64) -> Option<u64> {
    if q.is_multiple_of(r) {
        return None;
    }
    let mut acc = q % r;
    for i in 1..=r {
        if acc == 1 % r {
            return Some(i);
        }
        acc = mulm(acc, q, r);
    }
    None
}

impl ToyCurve {
    fn coeffs(&self, f: &ExtField) -> (Fqk, Fqk) {
        (f.base(self.a), f.base(self.b))
    }

    pub fn rhs(&self, f: &ExtField, x: &Fqk) -> Fqk {
        let (a, b) = self.coeffs(f);
        let x3 = f.mul(&f.mul(x, x), x);
        f.add(&f.add(&x3, &f.mul(&a, x)), &b)
    }

    pub fn on_curve(&self, f: &ExtField, p: &Point) -> bool {
        match p {
            Point::Inf => true,
            Point::Aff(x, y) => f.mul(y, y) == self.rhs(f, x),
        }
    }

    pub fn neg(&self, f: &ExtField, p: &Point) -> Point {
        match p {
            Point::Inf => Point::Inf,
            Point::Aff(x, y) => Point::Aff(x.clone(), f.neg(y)),
        }
    }

    /// Chord-and-tangent addition with the slope it used (None when vertical).
    fn add_with_slope(&self, f: &ExtField, p: &Point, r: &Point) -> (Point, Option<Fqk>) {
        match (p, r) {
            (Point::Inf, _) => (r.clone(), None),
            (_, Point::Inf) => (p.clone(), None),
            (Point::Aff(x1, y1), Point::Aff(x2, y2)) => {
                if x1 == x2 && f.add(y1, y2).is_empty() {
                    return (Point::Inf, None);
                }
                let lambda = if x1 == x2 {
                    let (a, _) = self.coeffs(f);
                    let num = f.add(&f.scale(&f.mul(x1, x1), 3), &a);
                    f.mul(&num, &f.inv(&f.scale(y1, 2)).expect("y != 0"))
                } else {
                    f.mul(&f.sub(y2, y1), &f.inv(&f.sub(x2, x1)).expect("x1 != x2"))
                };
                let x3 = f.sub(&f.sub(&f.mul(&lambda, &lambda), x1), x2);
                let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
                (Point::Aff(x3, y3), Some(lambda))
            }
        }
    }

    pub fn add(&self, f: &ExtField, p: &Point, r: &Point) -> Point {
        self.add_with_slope(f, p, r).0
    }

    pub fn mul(&self, f: &ExtField, p: &Point, mut e: u128) -> Point {
        let mut acc = Point::Inf;
        let mut base = p.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(f, &acc, &base);
            }
            base = self.add(f, &base, &base);
            e >>= 1;
        }
        acc
    }

    /// Point from hashing counters to x-coordinates; returns the counter used.
    pub fn sample_point(&self, f: &ExtField, start: u64) -> (Point, u64) {
        let mut c = start;
        loop {
            let x = f.element_from_counter(c);
            if let Some(y) = f.sqrt(&self.rhs(f, &x)) {
                return (Point::Aff(x, y), c);
            }
            c += 1;
        }
    }

    /// A point of prime order r on E(F_q), by cofactor clearing sampled points.
    pub fn point_of_order(&self, r: u64) -> Result<Point> {
        if r < 2 || !self.n.is_multiple_of(r) || !is_prime_u64(r) {
            return Err(Error::Precondition(format!("r = {r} must be a prime dividing {}", self.n)));
        }
        let f = ExtField::new(self.q, 1)?;
        let mut c = 0;
        for _ in 0..1000 {
            let (p, used) = self.sample_point(&f, c);
            c = used + 1;
            let g = self.mul(&f, &p, (self.n / r) as u128);
            if g != Point::Inf {
                return Ok(g);
            }
        }
        Err(Error::NotFound(format!("no point of order {r} found")))
    }
}

/// Line through t and s (tangent when equal) evaluated at (qx, qy), divided by
/// the vertical through t + s. `None` when either value vanishes.
fn line_eval(curve: &ToyCurve, f: &ExtField, t: &Point, s: &Point, qx: &Fqk, qy: &Fqk) -> Option<(Fqk, Fqk, Point)> {
    let (sum, slope) = curve.add_with_slope(f, t, s);
    let (num, den) = match (t, slope) {
        (Point::Inf, _) => (f.one(), f.one()),
        (_, _) if matches!(s, Point::Inf) => (f.one(), f.one()),
        (Point::Aff(x1, _), None) => (f.sub(qx, x1), f.one()),
        (Point::Aff(x1, y1), Some(lambda)) => {
            let num = f.sub(&f.sub(qy, y1), &f.mul(&lambda, &f.sub(qx, x1)));
            let Point::Aff(x3, _) = &sum else { unreachable!("sloped sum is affine") };
            (num, f.sub(qx, x3))
        }
    };
    (!num.is_empty() && !den.is_empty()).then_some((num, den, sum))
}

/// f_{r,P}(Q) by Miller's loop, keeping denominators.
pub fn miller(curve: &ToyCurve, f: &ExtField, p: &Point, q: &Point, r: u64) -> Option<Fqk> {
    let Point::Aff(qx, qy) = q else { return Some(f.one()) };
    let (mut fnum, mut fden) = (f.one(), f.one());
    let mut t = p.clone();
    let bits = 64 - r.leading_zeros();
    for i in (0..bits.saturating_sub(1)).rev() {
        let (n, d, t2) = line_eval(curve, f, &t, &t, qx, qy)?;
        fnum = f.mul(&f.mul(&fnum, &fnum), &n);
        fden = f.mul(&f.mul(&fden, &fden), &d);
        t = t2;
        if (r >> i) & 1 == 1 {
            let (n, d, t2) = line_eval(curve, f, &t, p, qx, qy)?;
            fnum = f.mul(&fnum, &n);
            fden = f.mul(&fden, &d);
            t = t2;
        }
    }
    Some(f.mul(&fnum, &f.inv(&fden)?))
}

/// Reduced Tate pairing f_{r,P}(Q)^((q^k − 1)/r).
///
/// A divisor hitting a zero or pole is moved to (Q + S) − (S) for sampled S.
pub fn tate_pairing(curve: &ToyCurve, f: &ExtField, p: &Point, q: &Point, r: u64) -> Result<Fqk> {
    let n = f.order() - 1;
    if !n.is_multiple_of(r as u128) {
        return Err(Error::Precondition(format!("r = {r} does not divide q^k - 1")));
    }
    if *p == Point::Inf || *q == Point::Inf {
        return Ok(f.one());
    }
    let e = n / r as u128;
    if let Some(v) = miller(curve, f, p, q, r) {
        return Ok(f.pow(&v, e));
    }
    let mut c = 1 << 32;
    for _ in 0..64 {
        let (s, used) = curve.sample_point(f, c);
        c = used + 1;
        let qs = curve.add(f, q, &s);
        if let (Some(a), Some(b)) = (miller(curve, f, p, &qs, r), miller(curve, f, p, &s, r)) {
            if let Some(bi) = f.inv(&b) {
                return Ok(f.pow(&f.mul(&a, &bi), e));
            }
        }
    }
    Err(Error::Unresolved("Tate pairing: every shifted divisor was degenerate".into()))
}

/// A cyclic group for the generic DLP solvers.
pub trait DlogGroup {
    type Elem: Clone + Eq + Hash + std::fmt::Debug;
    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Well-mixed 64-bit digest, used to partition rho walks.
    fn key(&self, a: &Self::Elem) -> u64;

    fn pow(&self, g: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.identity();
        let mut b = g.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.op(&acc, &b);
            }
            b = self.op(&b, &b);
            e >>= 1;
        }
        acc
    }
}

/// (Z/pZ)^*.
pub struct MulModP {
    pub p: u64,
}

impl DlogGroup for MulModP {
    type Elem = u64;
    fn identity(&self) -> u64 {
        1
    }
    fn op(&self, a: &u64, b: &u64) -> u64 {
        mulm(*a, *b, self.p)
    }
    fn key(&self, a: &u64) -> u64 {
        splitmix64(*a)
    }
}

fn key_of(v: &[u64]) -> u64 {
    v.iter().fold(0x5eed, |h, &c| splitmix64(h ^ c))
}

/// E(F_{q^k}) under point addition.
pub struct CurveGroup<'a> {
    pub curve: &'a ToyCurve,
    pub field: &'a ExtField,
}

impl DlogGroup for CurveGroup<'_> {
    type Elem = Point;
    fn identity(&self) -> Point {
        Point::Inf
    }
    fn op(&self, a: &Point, b: &Point) -> Point {
        self.curve.add(self.field, a, b)
    }
    fn key(&self, a: &Point) -> u64 {
        match a {
            Point::Inf => splitmix64(u64::MAX),
            Point::Aff(x, y) => splitmix64(key_of(x) ^ key_of(y).rotate_left(17)),
        }
    }
}

/// F_{q^k}^*.
pub struct ExtMul<'a> {
    pub field: &'a ExtField,
}

impl DlogGroup for ExtMul<'_> {
    type Elem = Fqk;
    fn identity(&self) -> Fqk {
        self.field.one()
    }
    fn op(&self, a: &Fqk, b: &Fqk) -> Fqk {
        self.field.mul(a, b)
    }
    fn key(&self, a: &Fqk) -> u64 {
        key_of(a)
    }
}

/// Largest group order the solvers accept.
pub const MAX_DLOG_ORDER: u64 = 1 << 40;

fn check_order(order: u64) -> Result<()> {
    if order == 0 || order > MAX_DLOG_ORDER {
        return Err(Error::Precondition(format!("group order {order} outside [1, 2^40]")));
    }
    Ok(())
}

/// Baby-step giant-step; the smallest x in [0, order) with g^x = h.
pub fn dlog_bsgs<G: DlogGroup>(group: &G, g: &G::Elem, h: &G::Elem, order: u64) -> Result<u64> {
    check_order(order)?;
    let m = (order as f64).sqrt().ceil() as u64;
    let mut table: HashMap<G::Elem, u64> = HashMap::with_capacity(m as usize);
    let mut cur = group.identity();
    for j in 0..m {
        table.entry(cur.clone()).or_insert(j);
        cur = group.op(&cur, g);
    }
    let giant = group.pow(g, (order - m % order) % order);
    let mut gamma = h.clone();
    for i in 0..=m {
        if let Some(&j) = table.get(&gamma) {
            let x = i * m + j;
            if x < order {
                return Ok(x);
            }
        }
        gamma = group.op(&gamma, &giant);
    }
    Err(Error::NoSolution("h is not in the subgroup generated by g".into()))
}

fn inv_mod_u128(a: u128, m: u128) -> Option<u128> {
    let (mut r0, mut r1) = (a as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u128)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Restarts allowed before the rho solver gives up.
pub const RHO_RESTARTS: u32 = 32;

/// Pollard rho with the 3-way partition walk and Floyd cycle finding.
///
/// Start exponents come from ChaCha8 seeded with `seed`. Orders below 64 are
/// searched exhaustively.
pub fn dlog_pollard_rho<G: DlogGroup>(group: &G, g: &G::Elem, h: &G::Elem, order: u64, seed: u64) -> Result<u64> {
    check_order(order)?;
    if order < 64 {
        let mut cur = group.identity();
        for x in 0..order {
            if &cur == h {
                return Ok(x);
            }
            cur = group.op(&cur, g);
        }
        return Err(Error::NoSolution("h is not in the subgroup generated by g".into()));
    }
    let n = order as u128;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = |(e, a, b): &(G::Elem, u128, u128)| -> (G::Elem, u128, u128) {
        match group.key(e) % 3 {
            0 => (group.op(e, g), (a + 1) % n, *b),
            1 => (group.op(e, e), (2 * a) % n, (2 * b) % n),
            _ => (group.op(e, h), *a, (b + 1) % n),
        }
    };
    let max_steps = 16 * (order as f64).sqrt() as u64 + 1000;
    for _ in 0..RHO_RESTARTS {
        let a0 = rng.gen_range(0..order) as u128;
        let b0 = rng.gen_range(0..order) as u128;
        let start = (group.op(&group.pow(g, a0 as u64), &group.pow(h, b0 as u64)), a0, b0);
        let (mut tort, mut hare) = (step(&start), step(&step(&start)));
        let mut steps = 0;
        while tort.0 != hare.0 && steps < max_steps {
            tort = step(&tort);
            hare = step(&step(&hare));
            steps += 1;
        }
        if tort.0 != hare.0 {
            continue;
        }
        // a1 + x b1 = a2 + x b2  =>  x (b1 − b2) = a2 − a1 (mod n)
        let db = (tort.2 + n - hare.2) % n;
        let da = (hare.1 + n - tort.1) % n;
        let d = gcd_u128(db, n);
        if db == 0 || !da.is_multiple_of(d) || d > 1 << 16 {
            continue;
        }
        let nd = n / d;
        let x0 = (da / d) % nd * inv_mod_u128((db / d) % nd, nd).unwrap_or(0) % nd;
        for i in 0..d {
            let x = (x0 + i * nd) as u64;
            if &group.pow(g, x) == h {
                return Ok(x);
            }
        }
    }
    Err(Error::BudgetExhausted(format!("Pollard rho: {RHO_RESTARTS} restarts without a usable collision")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovChallenge {
    pub x: u64,
    /// Rho on the curve subgroup.
    pub direct: u64,
    /// BSGS on pairing values in F_{q^k}.
    pub transferred: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovReport {
    pub curve: ToyCurve,
    pub r: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
    pub p: Point,
    pub q_point: Point,
    /// Counter that produced `q_point`.
    pub q_counter: u64,
    /// e(P, Q)
    pub pairing: Fqk,
    pub seed: u64,
    pub challenges: Vec<MovChallenge>,
    pub all_agree: bool,
}

/// Solve [x]P = H directly and through the pairing, for x = 0 and then
/// `challenges` random values.
pub fn mov_transfer_demo(curve: &ToyCurve, r: u64, k: u32, challenges: usize, seed: u64) -> Result<MovReport> {
    match embedding_degree(curve.q, r) {
        Some(e) if e == k as u64 => {}
        other => {
            return Err(Error::Precondition(format!("embedding degree of q = {} w.r.t. r = {r} is {other:?}, not {k}", curve.q)))
        }
    }
    if (curve.q as f64).log2() * k as f64 > 90.0 {
        return Err(Error::Precondition("q^k exceeds 2^90".into()));
    }
    let base = ExtField::new(curve.q, 1)?;
    let ext = ExtField::new(curve.q, k)?;
    let p = curve.point_of_order(r)?;
    let mut counter = 0;
    let (q_point, q_counter, pairing) = loop {
        let (qp, used) = curve.sample_point(&ext, counter);
        counter = used + 1;
        let e = tate_pairing(curve, &ext, &p, &qp, r)?;
        if !ext.is_one(&e) {
            break (qp, used, e);
        }
        if counter > 10_000 {
            return Err(Error::NotFound("no Q with a non-degenerate pairing".into()));
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cg = CurveGroup { curve, field: &base };
    let em = ExtMul { field: &ext };
    let mut out = Vec::with_capacity(challenges + 1);
    for i in 0..=challenges {
        let x = if i == 0 { 0 } else { rng.gen_range(0..r) };
        let h = curve.mul(&base, &p, x as u128);
        let direct = dlog_pollard_rho(&cg, &p, &h, r, seed.wrapping_add(i as u64))?;
        let eh = tate_pairing(curve, &ext, &h, &q_point, r)?;
        let transferred = dlog_bsgs(&em, &pairing, &eh, r)?;
        out.push(MovChallenge { x, direct, transferred });
    }
    let all_agree = out.iter().all(|c| c.direct == c.x && c.transferred == c.x);
    Ok(MovReport {
        curve: curve.clone(),
        r,
        k,
        modulus: ext.modulus.clone(),
        p,
        q_point,
        q_counter,
        pairing,
        seed,
        challenges: out,
        all_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(curve_order_bruteforce(5, 0, 1).unwrap(), 6);
        assert_eq!(curve_order_bruteforce(7, 1, 0).unwrap(), 8);
        assert!(curve_order_bruteforce(5, 0, 0).is_err());
    }

    #[test]
    fn curve_search() {
        let c = find_curve_coeff(103, 97, Some(3)).unwrap();
        assert_eq!((c.a, c.n), (0, 97));
        let m = find_curve_coeff(5, 7, Some(19)).unwrap();
        assert_eq!(curve_order_bruteforce(5, m.a, m.b).unwrap(), 7);
        assert!(matches!(find_curve_coeff(5, 20, None), Err(Error::NotFound(_))));
    }

    #[test]
    fn ext_field_basics() {
        let f = ExtField::new(103, 12).unwrap();
        assert_eq!(f.modulus.len(), 13);
        let a = f.element_from_counter(5);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        let sq = f.mul(&a, &a);
        let s = f.sqrt(&sq).unwrap();
        assert_eq!(f.mul(&s, &s), sq);
        assert_eq!(f.pow(&a, f.order() - 1), f.one());
        assert_eq!(ExtField::new(7, 1).unwrap().modulus, vec![0, 1]);
    }

    #[test]
    fn small_dlogs() {
        let g = MulModP { p: 43 };
        assert_eq!(dlog_bsgs(&g, &3, &41, 42).unwrap(), 6);
        assert_eq!(dlog_bsgs(&g, &3, &1, 42).unwrap(), 0);
        assert_eq!(dlog_bsgs(&g, &3, &42, 42).unwrap(), 21);
        let two = MulModP { p: 3 };
        assert_eq!(dlog_pollard_rho(&two, &2, &2, 2, 1).unwrap(), 1);
        let big = MulModP { p: 1_000_003 };
        let h = big.pow(&2, 123_456);
        let ord = crate::mathcore::mult_order(&2u32.into(), &1_000_003u32.into()).unwrap();
        let ord: u64 = ord.try_into().unwrap();
        assert_eq!(dlog_pollard_rho(&big, &2, &h, ord, 9).unwrap(), 123_456 % ord);
    }

    #[test]
    fn pairing_bilinear_small() {
        let c = find_curve_coeff(43, 39, Some(3)).unwrap();
        let f = ExtField::new(43, 6).unwrap();
        let p = c.point_of_order(13).unwrap();
        let (q, _) = c.sample_point(&f, 0);
        let e = tate_pairing(&c, &f, &p, &q, 13).unwrap();
        assert_eq!(f.pow(&e, 13), f.one());
        assert_eq!(tate_pairing(&c, &f, &p, &Point::Inf, 13).unwrap(), f.one());
        let p2 = c.mul(&f, &p, 2);
        assert_eq!(tate_pairing(&c, &f, &p2, &q, 13).unwrap(), f.mul(&e, &e));
        let q3 = c.mul(&f, &q, 3);
        assert_eq!(tate_pairing(&c, &f, &p2, &q3, 13).unwrap(), f.pow(&e, 6));
    }

    #[test]
    fn mov_small() {
        let c = find_curve_coeff(43, 39, Some(3)).unwrap();
        let rep = mov_transfer_demo(&c, 13, 6, 5, 7).unwrap();
        assert!(rep.all_agree, "{rep:?}");
        assert_eq!(rep.challenges[0].x, 0);
    }

    #[test]
    fn degree_scan() {
        assert_eq!(embedding_degree(103, 97), Some(12));
        assert_eq!(embedding_degree(43, 13), Some(6));
        assert_eq!(embedding_degree(5, 7), Some(6));
    }
}
