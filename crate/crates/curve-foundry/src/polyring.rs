//! Exact univariate polynomials over Q.
//!
//! `RatPoly` carries every family polynomial. Besides ring arithmetic this
//! module has cyclotomic polynomials, integrality residues, irreducibility over
//! Q (Zassenhaus) and the CM-polynomial classifier.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fpoly;
use crate::mathcore::{self, SquareFree};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial with exact rational coefficients, ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        RatPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn monomial(c: Rat, e: usize) -> Self {
        let mut v = vec![Rat::zero(); e + 1];
        v[e] = c;
        RatPoly::new(v)
    }

    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        RatPoly::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        RatPoly::new(c.iter().map(|v| Rat::from_integer(v.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg 0 = −∞ collapsed to 0, for ρ-style ratios.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RatPoly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Division with remainder: self = q·b + r, deg r < deg b.
    pub fn div_rem(&self, b: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let lb = b.lead();
        let mut q = vec![Rat::zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] / &lb;
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i - db + j] -= &c * bc;
            }
            q[i - db] = c;
        }
        r.truncate(db);
        Ok((RatPoly::new(q), RatPoly::new(r)))
    }

    pub fn rem(&self, b: &RatPoly) -> Result<RatPoly> {
        Ok(self.div_rem(b)?.1)
    }

    /// Exact quotient, or `None` if b does not divide self.
    pub fn exact_div(&self, b: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(b).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (gcd(0, 0) = 0).
    pub fn gcd(&self, b: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.to_primitive_rat();
        }
        a.monic()
    }

    // Same polynomial up to a rational unit, with small coefficients; keeps
    // Euclid from blowing up.
    fn to_primitive_rat(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (_, prim) = self.primitive_part();
        RatPoly::from_ints(&prim)
    }

    /// Extended gcd: (g, s, t) with s·self + t·b = g, g monic.
    pub fn ext_gcd(&self, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.lead().recip();
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    /// Inverse of self modulo m, if gcd(self, m) = 1.
    pub fn inv_mod(&self, m: &RatPoly) -> Option<RatPoly> {
        let (g, s, _) = self.rem(m).ok()?.ext_gcd(m);
        (g == RatPoly::one()).then(|| s.rem(m).expect("nonzero modulus"))
    }

    pub fn mul_mod(&self, b: &RatPoly, m: &RatPoly) -> RatPoly {
        (self * b).rem(m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, e: u64, m: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::one().rem(m).expect("nonzero modulus");
        let mut b = self.rem(m).expect("nonzero modulus");
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&b, m);
            }
            b = b.mul_mod(&b, m);
            e >>= 1;
        }
        acc
    }

    /// self(inner(x)).
    pub fn compose(&self, inner: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &RatPoly::constant(c.clone());
        }
        acc
    }

    /// Composition reduced modulo m at every Horner step.
    pub fn compose_mod(&self, inner: &RatPoly, m: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        let inner = inner.rem(m).expect("nonzero modulus");
        for c in self.coeffs.iter().rev() {
            acc = &acc.mul_mod(&inner, m) + &RatPoly::constant(c.clone());
        }
        acc
    }

    pub fn eval_rat(&self, u: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// Exact evaluation at an integer via a common denominator (Horner on
    /// integers, one division at the end).
    pub fn eval(&self, u: &BigInt) -> Rat {
        let (den, nums) = self.integer_numerator();
        let mut acc = BigInt::zero();
        for c in nums.iter().rev() {
            acc = acc * u + c;
        }
        Rat::new(acc, den)
    }

    /// Evaluation that must land in Z.
    pub fn eval_int(&self, u: &BigInt) -> Option<BigInt> {
        let v = self.eval(u);
        v.is_integer().then(|| v.to_integer())
    }

    /// lcm of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// (L, N) with self = N / L, N integer coefficients, L = lcm of denominators.
    pub fn integer_numerator(&self) -> (BigInt, Vec<BigInt>) {
        let l = self.denominator_lcm();
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        (l, nums)
    }

    /// (c, P) with self = c·P, P primitive integer with positive leading coefficient.
    pub fn primitive_part(&self) -> (Rat, Vec<BigInt>) {
        let (l, nums) = self.integer_numerator();
        let mut g = nums.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return (Rat::zero(), vec![]);
        }
        if nums.last().map(|c| c.is_negative()) == Some(true) {
            g = -g;
        }
        let prim = nums.iter().map(|c| c / &g).collect();
        (Rat::new(g, l), prim)
    }

    /// Render with a given variable name in common-denominator form.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (l, nums) = self.integer_numerator();
        let mut s = String::new();
        for (i, c) in nums.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mag = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            s.push_str(&mag);
            match i {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{var}^{i}")),
            }
        }
        if l.is_one() {
            s
        } else {
            format!("({s})/{l}")
        }
    }

    /// Parse expressions like `(u^10 + u^9 - 2u + 1)/3` or `(x-1)^2*(x^4-x^2+1)/3 + x`.
    ///
    /// Any single ASCII letter is the variable; implicit multiplication is
    /// allowed; division is only by constants.
    pub fn parse(src: &str) -> Result<RatPoly> {
        let mut p = Parser { toks: tokenize(src)?, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {src:?}")));
        }
        Ok(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({})", self.display_with("x"))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, b: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(b.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + b.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, b: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(b.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - b.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, b: &RatPoly) -> RatPoly {
        if self.is_zero() || b.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, b: RatPoly) -> RatPoly {
                (&self).$m(&b)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .coeffs
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[String; 2]> = Vec::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(pairs.len());
        for [n, m] in pairs {
            let n: BigInt = n.parse().map_err(D::Error::custom)?;
            let m: BigInt = m.parse().map_err(D::Error::custom)?;
            if !m.is_positive() {
                return Err(D::Error::custom("denominator must be positive"));
            }
            let c = Rat::new(n.clone(), m.clone());
            if c.numer() != &n || c.denom() != &m {
                return Err(D::Error::custom("coefficient not in lowest terms"));
            }
            coeffs.push(c);
        }
        if coeffs.last().map(|c| c.is_zero()) == Some(true) {
            return Err(D::Error::custom("leading coefficient is zero"));
        }
        Ok(RatPoly { coeffs })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().unwrap()));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '−' => {
                out.push(Tok::Op('-'));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                out.push(Tok::Var);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Parse("division by a non-constant".into()));
                }
                acc = acc.scale(&d.coeff(0).recip());
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var) | Some(Tok::Op('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatPoly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatPoly> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("exponent must be a literal integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<RatPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatPoly::constant(Rat::from_integer(n)))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(RatPoly::x())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

fn mobius(mut n: u64) -> i32 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let big: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&d| d * d != n).collect();
    out.extend(big);
    out
}

/// The k-th cyclotomic polynomial, via Φ_k = ∏_{d|k} (x^d − 1)^μ(k/d).
pub fn cyclotomic(k: u64) -> RatPoly {
    assert!(k >= 1, "cyclotomic index must be positive");
    let mut num = RatPoly::one();
    let mut den = RatPoly::one();
    for d in divisors(k) {
        let xd = &RatPoly::monomial(Rat::one(), d as usize) - &RatPoly::one();
        match mobius(k / d) {
            1 => num = &num * &xd,
            -1 => den = &den * &xd,
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic division is exact")
}

pub fn euler_phi(k: u64) -> u64 {
    let mut n = k;
    let mut out = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Residue classes u mod `modulus` on which a polynomial is integer-valued.
///
/// Stored per prime-power part of the modulus; `residues()` expands by CRT.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Integrality {
    #[serde(with = "crate::serde_big::biguint")]
    pub modulus: BigUint,
    /// (prime power, allowed residues mod it)
    pub parts: Vec<(u64, Vec<u64>)>,
}

impl Integrality {
    pub fn contains(&self, u: &BigInt) -> bool {
        self.parts.iter().all(|(m, allowed)| {
            let r = u.mod_floor(&BigInt::from(*m)).to_u64().unwrap();
            allowed.binary_search(&r).is_ok()
        })
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().any(|(_, a)| a.is_empty())
    }

    /// Number of allowed classes mod `modulus`.
    pub fn count(&self) -> BigUint {
        self.parts.iter().fold(BigUint::one(), |acc, (_, a)| acc * a.len())
    }

    /// Explicit residue set (sorted). Intended for small moduli.
    pub fn residues(&self) -> Vec<BigUint> {
        let mut acc: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::one())];
        for (m, allowed) in &self.parts {
            let mut next = Vec::with_capacity(acc.len() * allowed.len());
            for (r0, m0) in &acc {
                for a in allowed {
                    let pair = [(r0.clone(), m0.clone()), (BigInt::from(*a), BigInt::from(*m))];
                    next.push(mathcore::crt(&pair).expect("coprime parts"));
                }
            }
            acc = next;
        }
        let mut out: Vec<BigUint> = acc.into_iter().map(|(r, _)| r.to_biguint().unwrap()).collect();
        out.sort();
        out
    }

    /// Intersection of two integrality conditions on the lcm modulus.
    pub fn intersect(&self, other: &Integrality) -> Integrality {
        let m = BigInt::from(self.modulus.clone()).lcm(&BigInt::from(other.modulus.clone()));
        let m = m.to_biguint().unwrap();
        let mut parts = Vec::new();
        for (pe, _) in prime_power_parts(&m) {
            let allowed = (0..pe)
                .filter(|&r| {
                    let check = |ig: &Integrality| {
                        ig.parts.iter().all(|(q, a)| {
                            if gcd_u64(*q, pe) == 1 {
                                true
                            } else {
                                a.binary_search(&(r % q)).is_ok()
                            }
                        })
                    };
                    check(self) && check(other)
                })
                .collect();
            parts.push((pe, allowed));
        }
        Integrality { modulus: m, parts }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn prime_power_parts(m: &BigUint) -> Vec<(u64, u64)> {
    mathcore::factorize(m)
        .expect("small modulus factors")
        .into_iter()
        .map(|(p, e)| {
            let p = p.to_u64().expect("prime part fits u64");
            (p.pow(e), p)
        })
        .collect()
}

fn valuation(n: &BigInt, p: u64) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// {u mod modulus : p(u) ∈ Z}. A class is kept when every integer in it
/// gives an integral value.
pub fn integrality_residues(p: &RatPoly, modulus: &BigUint) -> Integrality {
    assert!(!modulus.is_zero(), "modulus must be positive");
    let (l, nums) = p.integer_numerator();
    let mut parts = Vec::new();
    if !modulus.is_one() {
        for (pe, prime) in prime_power_parts(modulus) {
            let a = valuation(&l, prime);
            parts.push((pe, allowed_mod_prime_power(&nums, prime, a, pe)));
        }
    }
    // Denominator primes absent from the modulus must be harmless everywhere.
    if let Some(fs) = mathcore::factorize(&l.to_biguint().unwrap()) {
        for (prime, _) in fs {
            let prime = prime.to_u64().unwrap();
            if (modulus % prime).is_zero() {
                continue;
            }
            let a = valuation(&l, prime);
            let full = allowed_mod_prime_power(&nums, prime, a, 1);
            if full.is_empty() {
                parts.push((1, vec![]));
            }
        }
    }
    Integrality { modulus: modulus.clone(), parts }
}

// Residues r mod `pe` (a power of `prime`, or 1) such that every lift of r
// makes the numerator divisible by prime^a.
fn allowed_mod_prime_power(nums: &[BigInt], prime: u64, a: u32, pe: u64) -> Vec<u64> {
    if a == 0 {
        return (0..pe).collect();
    }
    let pa = prime.pow(a);
    let period = pa.max(pe);
    let red: Vec<u64> = nums
        .iter()
        .map(|c| c.mod_floor(&BigInt::from(pa)).to_u64().unwrap())
        .collect();
    let good: Vec<bool> = (0..period)
        .map(|u| {
            let um = u % pa;
            let mut acc: u128 = 0;
            for &c in red.iter().rev() {
                acc = (acc * um as u128 + c as u128) % pa as u128;
            }
            acc == 0
        })
        .collect();
    (0..pe)
        .filter(|&r| (r..period).step_by(pe as usize).all(|v| good[v as usize]))
        .collect()
}

/// Natural modulus for integrality: lcm of denominators.
pub fn natural_integrality(p: &RatPoly) -> Integrality {
    let l = p.denominator_lcm().to_biguint().unwrap();
    integrality_residues(p, &l)
}

fn small_primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| mathcore::is_prime_u64(n))
}

/// Irreducibility over Q.
///
/// Content is removed, then the polynomial is factored modulo a few good
/// primes. If the possible factor degrees never line up the answer is
/// immediate; otherwise the factorization with the fewest modular factors is
/// Hensel-lifted and every subset product is tried as a true divisor.
pub fn is_irreducible_q(p: &RatPoly) -> bool {
    let n = match p.degree() {
        Some(0) | None => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let (_, f) = p.primitive_part();
    if f[0].is_zero() {
        return false;
    }
    let df = RatPoly::from_ints(&f).derivative();
    if !RatPoly::from_ints(&f).gcd(&df).is_constant() {
        return false;
    }
    let lc = f.last().unwrap().clone();

    let mut best: Option<(u64, Vec<fpoly::Fp>)> = None;
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut tried = 0;
    for prime in small_primes_from(3) {
        if (&lc % prime).is_zero() {
            continue;
        }
        let fp = fpoly::monic(&fpoly::reduce(&f, prime), prime);
        if !fpoly::is_squarefree(&fp, prime) {
            continue;
        }
        let pattern = fpoly::degree_pattern(&fp, prime);
        let mut sums = BTreeSet::from([0usize]);
        for d in &pattern {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() <= 2 {
            return true;
        }
        if best.as_ref().map(|(_, fs)| pattern.len() < fs.len()).unwrap_or(true) {
            best = Some((prime, fpoly::factor_squarefree(&fp, prime)));
        }
        tried += 1;
        if tried >= 8 {
            break;
        }
    }
    let (prime, factors) = best.expect("some good prime exists");
    !has_true_factor(&f, prime, &factors, &possible)
}

fn has_true_factor(f: &[BigInt], prime: u64, factors: &[fpoly::Fp], possible: &BTreeSet<usize>) -> bool {
    let lc = f.last().unwrap().clone();
    // Mignotte-style bound: |coeffs of any factor| ≤ 2^n·||f||₂, times |lc| for scaling.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound: BigInt = (BigInt::one() << f.len()) * norm2 * lc.abs() * 2;
    let pb = BigInt::from(prime);
    let mut a = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        a += 1;
    }
    let lc_inv = mathcore::mod_inverse(&lc, &m).expect("lc coprime to p");
    let f_monic: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&m)).collect();
    let lifted = fpoly::hensel_lift(&f_monic, factors, prime, a);
    let r = lifted.len();
    let degs: Vec<usize> = factors.iter().map(|g| g.len() - 1).collect();
    let n = f.len() - 1;
    let fz: Vec<BigInt> = f.to_vec();
    // Subsets up to half the factors (the complement covers the rest).
    for size in 1..=r / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let d: usize = idx.iter().map(|&i| degs[i]).sum();
            if d > 0 && d < n && possible.contains(&d) {
                let parts: Vec<&Vec<BigInt>> = idx.iter().map(|&i| &lifted[i]).collect();
                let cand = fpoly::symmetric_product(&parts, &lc, &m);
                let prim = fpoly::content_primitive(&cand);
                if !fpoly::is_one_z(&prim) && fpoly::divides_z(&prim, &fz) {
                    return true;
                }
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < r - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    idx.clear();
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    false
}

/// f = 4q − t².
pub fn cm_polynomial(q: &RatPoly, t: &RatPoly) -> RatPoly {
    &q.scale(&rat(4)) - &(t * t)
}

/// Yun's square-free decomposition of a monic polynomial: [a₁, a₂, …] with
/// f = ∏ aᵢ^i.
pub fn squarefree_decomposition(f: &RatPoly) -> Vec<RatPoly> {
    let a = f.monic();
    if a.is_constant() {
        return vec![];
    }
    let b = a.derivative();
    let mut c = a.gcd(&b);
    let mut w = a.exact_div(&c).expect("gcd divides");
    let mut out = Vec::new();
    while !c.is_constant() {
        let y = w.gcd(&c);
        out.push(w.exact_div(&y).expect("gcd divides").monic());
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
    }
    out.push(w.monic());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CmKind {
    #[serde(rename = "CFD")]
    Cfd,
    #[serde(rename = "CVD")]
    Cvd,
    Sparse,
    Irregular,
}

impl fmt::Display for CmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmKind::Cfd => "CFD",
            CmKind::Cvd => "CVD",
            CmKind::Sparse => "Sparse",
            CmKind::Irregular => "Irregular",
        })
    }
}

/// f = g·y² with g square-free; D set for CFD.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmClass {
    pub kind: CmKind,
    #[serde(with = "crate::serde_big::opt_bigint")]
    pub d: Option<BigInt>,
    pub g: RatPoly,
    pub y: RatPoly,
}

/// Split the largest square off f and classify the residual.
pub fn classify_cm(f: &RatPoly) -> CmClass {
    assert!(!f.is_zero(), "classify_cm of the zero polynomial");
    let parts = squarefree_decomposition(f);
    let mut y0 = RatPoly::one();
    let mut g0 = RatPoly::one();
    for (i, a) in parts.iter().enumerate() {
        let mult = (i + 1) as u32;
        y0 = &y0 * &a.pow(mult / 2);
        if mult % 2 == 1 {
            g0 = &g0 * a;
        }
    }
    // lc = n/d = D·(k/d)² with D the square-free part of n·d
    let lc = f.lead();
    let nd = lc.numer() * lc.denom();
    let (sf, _) = mathcore::square_free_part(nd.magnitude(), mathcore::DEFAULT_TRIAL_BOUND);
    let sign = if nd.is_negative() { -1 } else { 1 };
    let d_int: BigInt = BigInt::from(sf.clone()) * sign;
    let k = (nd.magnitude() / &sf).sqrt();
    let y = y0.scale(&Rat::new(BigInt::from(k), lc.denom().clone()));
    let g = g0.scale(&Rat::from_integer(d_int.clone()));
    debug_assert_eq!(&g * &(&y * &y), *f);
    let kind = match g0.deg() {
        0 if d_int.is_positive() => CmKind::Cfd,
        1 => CmKind::Cvd,
        2 => CmKind::Sparse,
        _ => CmKind::Irregular,
    };
    CmClass { d: (kind == CmKind::Cfd).then_some(d_int), kind, g, y }
}

/// Square-free status of an integer D, exposed for catalog checks.
pub fn square_free_status(d: &BigInt) -> SquareFree {
    if d.is_zero() {
        return SquareFree::No;
    }
    mathcore::is_square_free(d.magnitude(), mathcore::DEFAULT_TRIAL_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    #[test]
    fn ring_examples() {
        let (q, r) = p("x^2-1").div_rem(&p("x-1")).unwrap();
        assert_eq!((q, r), (p("x+1"), RatPoly::zero()));
        assert_eq!(p("x^4-1").gcd(&p("x^2-1")), p("x^2-1"));
        let c = cyclotomic(12).compose(&p("6u^2"));
        assert_eq!(c, p("1296u^8 - 36u^4 + 1"));
        let rbn = p("36u^4+36u^3+18u^2+6u+1");
        assert_eq!(c, &rbn * &rbn.compose(&p("-u")));
        assert!(p("x").div_rem(&RatPoly::zero()).is_err());
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), p("x-1"));
        assert_eq!(cyclotomic(12), p("x^4-x^2+1"));
        assert_eq!(cyclotomic(54), p("x^18-x^9+1"));
        for k in 1..=60u64 {
            let prod = divisors(k).into_iter().fold(RatPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, &RatPoly::monomial(Rat::one(), k as usize) - &RatPoly::one(), "k = {k}");
            assert_eq!(cyclotomic(k).deg() as u64, euler_phi(k));
        }
    }

    #[test]
    fn eval_examples() {
        let one = BigInt::one();
        assert_eq!(p("36u^4+36u^3+18u^2+6u+1").eval(&one), rat(97));
        assert_eq!(p("36u^4+36u^3+24u^2+6u+1").eval(&one), rat(103));
        assert_eq!(p("(x^3 + 7)/5").eval(&BigInt::zero()), rat_frac(7, 5));
    }

    #[test]
    fn integrality_examples() {
        let bw = p("(x^10 + 2x^8 + x^6 + x^4 - 2x^2 + 1)/4");
        let ig = integrality_residues(&bw, &BigUint::from(2u32));
        assert_eq!(ig.residues(), vec![BigUint::one()]);
        let ig = integrality_residues(&p("x^2+3"), &BigUint::from(2u32));
        assert_eq!(ig.residues().len(), 2);
        let kss16 = p("(u^10 + 2u^9 + 5u^8 + 48u^6 + 152u^5 + 240u^4 + 625u^2 + 2398u + 3125)/980");
        let ig = integrality_residues(&kss16, &BigUint::from(980u32 * 3));
        let n = ig.residues().len();
        assert!(n > 0 && n < 2940);
        for r in ig.residues() {
            let u = BigInt::from(r);
            assert!(kss16.eval(&u).is_integer());
            assert!(kss16.eval(&(u + 2940)).is_integer());
        }
        // a denominator prime missing from the modulus kills everything
        let ig = integrality_residues(&p("x/3"), &BigUint::from(2u32));
        assert!(ig.is_empty());
        let ig = integrality_residues(&p("(x^3-x)/3"), &BigUint::from(2u32));
        assert!(!ig.is_empty());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible_q(&p("x^4-x^2+1")));
        assert!(!is_irreducible_q(&p("x^2-1")));
        assert!(is_irreducible_q(&p("36u^4+36u^3+18u^2+6u+1")));
        assert!(!is_irreducible_q(&p("1296u^8 - 36u^4 + 1")));
        assert!(is_irreducible_q(&cyclotomic(48)));
        assert!(is_irreducible_q(&cyclotomic(105)));
        assert!(!is_irreducible_q(&(&cyclotomic(12) * &cyclotomic(8))));
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2) has no rational root
        assert!(!is_irreducible_q(&p("x^4+4")));
        assert!(!is_irreducible_q(&p("(3x^2+1)(5x^3-x+7)/7")));
        assert!(is_irreducible_q(&p("u^8+48u^4+625")));
    }

    #[test]
    fn cm_examples() {
        let q = p("36u^4+36u^3+24u^2+6u+1");
        let t = p("6u^2+1");
        let f = cm_polynomial(&q, &t);
        assert_eq!(f, p("108u^4+144u^3+84u^2+24u+3"));
        let c = classify_cm(&f);
        assert_eq!(c.kind, CmKind::Cfd);
        assert_eq!(c.d, Some(BigInt::from(3)));
        assert_eq!(&c.y * &c.y, p("(6u^2+4u+1)^2"));
        let fr = classify_cm(&p("15u^2+10u+3"));
        assert_eq!(fr.kind, CmKind::Sparse);
        assert_eq!(fr.g, p("15u^2+10u+3"));
        assert_eq!(fr.y, RatPoly::one());
        let cvd = classify_cm(&p("u*(81u^4+54u^3+6u+1)^2"));
        assert_eq!(cvd.kind, CmKind::Cvd);
        assert_eq!(cvd.g, p("u"));
    }

    #[test]
    fn parse_and_display() {
        let bls = p("(u-1)^2(u^4-u^2+1)/3 + u");
        assert_eq!(bls.display_with("u"), "(u^6 - 2u^5 + 2u^3 + u + 1)/3");
        assert_eq!(p("-x^2+1"), p("1 - x^2"));
        assert_eq!(p("3^5u^10"), RatPoly::monomial(rat(243), 10));
        assert!(RatPoly::parse("x/(x+1)").is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let q = p("(u^10 - 2u + 1)/3");
        let js = serde_json::to_string(&q).unwrap();
        assert_eq!(js, r#"[["1","3"],["-2","3"],["0","1"],["0","1"],["0","1"],["0","1"],["0","1"],["0","1"],["0","1"],["0","1"],["1","3"]]"#);
        let back: RatPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<RatPoly>(r#"[["2","4"]]"#).is_err());
    }
}
