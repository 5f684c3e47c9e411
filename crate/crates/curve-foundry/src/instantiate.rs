//! Sparse seed enumeration, family instantiation and instance verification.
//!
//! Seeds are ordered by absolute value (positive first on ties). A seed
//! qualifies when its non-adjacent form has at most `max_terms` terms, all
//! with exponents inside the requested range.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{FamilyRecord, Status, ValidationReport};
use crate::error::{Error, Result};
use crate::mathcore::{self, bitlen, SquareFree};
use crate::polyring::{CmKind, Integrality, Rat};

/// One signed power of two: (sign, exponent).
pub type SparseTerm = (i8, u32);

/// Non-adjacent form of `u`, highest exponent first.
pub fn naf(u: &BigInt) -> Vec<SparseTerm> {
    let mut out = Vec::new();
    let mut n = u.abs();
    let neg = u.is_negative();
    let mut e = 0u32;
    let four = BigInt::from(4);
    while !n.is_zero() {
        if n.is_odd() {
            let z: i8 = if n.mod_floor(&four) == BigInt::one() { 1 } else { -1 };
            n -= z;
            out.push((if neg { -z } else { z }, e));
        }
        n >>= 1;
        e += 1;
    }
    out.reverse();
    out
}

pub fn from_terms(terms: &[SparseTerm]) -> BigInt {
    terms.iter().fold(BigInt::zero(), |acc, &(s, e)| acc + (BigInt::one() << e) * s)
}

/// Inverse of `format_sparse`; plain integer terms such as "- 4" are accepted too.
pub fn parse_sparse(src: &str) -> Result<BigInt> {
    let cleaned = src.replace('\u{2212}', "-").replace(' ', "");
    if cleaned.is_empty() {
        return Err(Error::Parse("empty seed".into()));
    }
    let mut total = BigInt::zero();
    let mut rest = cleaned.as_str();
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ => (false, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        let bad = || Error::Parse(format!("bad seed term {term:?} in {src:?}"));
        let value = match term.split_once('^') {
            Some((base, e)) => {
                let base: BigInt = base.parse().map_err(|_| bad())?;
                let e: usize = e.parse().map_err(|_| bad())?;
                num_traits::pow(base, e)
            }
            None => term.parse::<BigInt>().map_err(|_| bad())?,
        };
        total += if neg { -value } else { value };
        rest = &body[end..];
    }
    Ok(total)
}

/// "−2^192 + 2^188 − 1" style rendering.
pub fn format_sparse(terms: &[SparseTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, &(sign, e)) in terms.iter().enumerate() {
        let mag = if e == 0 { "1".to_string() } else { format!("2^{e}") };
        match (i, sign < 0) {
            (0, true) => s.push_str(&format!("-{mag}")),
            (0, false) => s.push_str(&mag),
            (_, true) => s.push_str(&format!(" - {mag}")),
            (_, false) => s.push_str(&format!(" + {mag}")),
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInstance {
    pub family: String,
    #[serde(with = "crate::serde_big::opt_bigint")]
    pub seed: Option<BigInt>,
    pub seed_sparse: Option<Vec<SparseTerm>>,
    #[serde(with = "crate::serde_big::bigint")]
    pub q: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub r_full: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub r_prime: BigInt,
    /// q + 1 − t = h·r_prime
    #[serde(with = "crate::serde_big::bigint")]
    pub h: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub t: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub c: BigInt,
    #[serde(rename = "D", with = "crate::serde_big::bigint")]
    pub d: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub y: BigInt,
    pub k: u32,
    #[serde(with = "crate::serde_big::rat")]
    pub rho_bits: Rat,
    pub report: ValidationReport,
}

impl CurveInstance {
    /// Fill in h, ρ and the verification report from the raw values.
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        family: &str,
        seed: Option<BigInt>,
        q: BigInt,
        r_full: BigInt,
        c: BigInt,
        t: BigInt,
        d: BigInt,
        y: BigInt,
        k: u32,
    ) -> CurveInstance {
        let r_prime = if c.is_zero() { BigInt::zero() } else { &r_full / &c };
        let n: BigInt = &q + 1u32 - &t;
        let h = if r_prime.is_zero() { BigInt::zero() } else { n.div_floor(&r_prime) };
        let rb = bitlen(&r_prime).max(1);
        let mut inst = CurveInstance {
            family: family.into(),
            seed_sparse: seed.as_ref().map(naf),
            seed,
            rho_bits: Rat::new(BigInt::from(bitlen(&q)), BigInt::from(rb)),
            q,
            r_full,
            r_prime,
            h,
            t,
            c,
            d,
            y: y.abs(),
            k,
            report: ValidationReport::default(),
        };
        inst.report = verify_instance(&inst);
        inst
    }

    pub fn q_bits(&self) -> u64 {
        bitlen(&self.q)
    }

    pub fn r_bits(&self) -> u64 {
        bitlen(&self.r_prime)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(s: &str) -> Result<CurveInstance> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

/// Check every instance invariant. Advisory findings are reported as unknown.
pub fn verify_instance(c: &CurveInstance) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let mark = |ok: bool| if ok { Status::Pass } else { Status::Fail };

    let q_ok = c.q.is_positive() && mathcore::is_prime_int(&c.q);
    rep.push("q-prime", mark(q_ok), format!("q has {} bits", c.q_bits()));
    let r_ok = c.r_prime.is_positive() && mathcore::is_prime_int(&c.r_prime);
    rep.push("r-prime", mark(r_ok), format!("r' has {} bits", c.r_bits()));
    rep.push(
        "cofactor",
        mark(c.c.is_positive() && c.r_full == &c.c * &c.r_prime),
        format!("r = {} * r'", c.c),
    );

    let n: BigInt = &c.q + 1u32 - &c.t;
    rep.push(
        "hasse-count",
        mark(n == &c.h * &c.r_prime),
        format!("q + 1 - t = {} * r'", c.h),
    );
    let bound = ceil_sqrt(&c.q.abs()) * 2;
    rep.push("hasse-bound", mark(c.t.abs() <= bound), "|t| <= 2*ceil(sqrt(q))");

    let f: BigInt = &c.q * 4u32 - &c.t * &c.t;
    let cm_ok = c.d.is_positive() && f == &c.d * &c.y * &c.y;
    rep.push("cm", mark(cm_ok), format!("4q - t^2 = {} * y^2", c.d));
    if c.d.is_positive() {
        let (status, detail) = match mathcore::is_square_free(c.d.magnitude(), mathcore::DEFAULT_TRIAL_BOUND) {
            SquareFree::Yes => (Status::Pass, "D is square-free".to_string()),
            SquareFree::No => (Status::Fail, "D has a square factor".to_string()),
            SquareFree::Unknown => (Status::Unknown, "advisory: square-freeness of D not settled by trial division".to_string()),
        };
        rep.push("D-squarefree", status, detail);
    } else {
        rep.push("D-squarefree", Status::Fail, "D must be positive");
    }

    let emb = if !q_ok || !r_ok || c.k == 0 {
        (Status::Fail, "needs prime q and r'".to_string())
    } else if c.r_bits() <= 128 {
        let qm = c.q.mod_floor(&c.r_prime).to_biguint().unwrap();
        match mathcore::mult_order(&qm, c.r_prime.magnitude()) {
            Ok(o) if o == BigUint::from(c.k) => (Status::Pass, format!("ord(q mod r') = {}", c.k)),
            Ok(o) => (Status::Fail, format!("ord(q mod r') = {o}, expected {}", c.k)),
            Err(e) => (Status::Unknown, format!("order not computed: {e}")),
        }
    } else {
        let ok = mathcore::has_embedding_degree(c.q.magnitude(), c.r_prime.magnitude(), c.k as u64);
        (mark(ok), format!("r' | q^{} - 1 and r' does not divide q^(k/l) - 1 for primes l | k", c.k))
    };
    rep.push("embedding-degree", emb.0, emb.1);

    let rho = c.rho_bits.to_f64().unwrap_or(f64::INFINITY);
    if rho <= 2.0 {
        rep.push("rho", Status::Pass, format!("rho = {rho:.3}"));
    } else {
        rep.push("rho", Status::Unknown, format!("advisory: rho = {rho:.3} > 2"));
    }
    if &c.r_prime * &c.r_prime >= c.q {
        rep.push("r-size", Status::Pass, "r' >= sqrt(q)");
    } else {
        rep.push("r-size", Status::Unknown, "advisory: r' < sqrt(q)");
    }
    rep
}

fn int_value(p: &crate::polyring::RatPoly, u: &BigInt, what: &str, fam: &str) -> Result<BigInt> {
    p.eval_int(u)
        .ok_or_else(|| Error::NonIntegral(format!("{fam}: {what}({u}) is not an integer")))
}

/// D and y for a family instance, from the family's CM class.
fn cm_values(f: &FamilyRecord, u: &BigInt, q: &BigInt, t: &BigInt) -> (BigInt, BigInt) {
    let fv: BigInt = q * 4u32 - t * t;
    if !fv.is_positive() {
        return (BigInt::zero(), BigInt::zero());
    }
    let d = match &f.cm {
        Some(cm) if cm.kind == CmKind::Cfd => cm.d.clone().unwrap_or_default(),
        Some(cm) if matches!(cm.kind, CmKind::Cvd | CmKind::Sparse) => {
            // D·y² = g(u)·y(u)²; D is the square-free part of g(u) = a/b, i.e. of a·b
            let g = cm.g.eval(u);
            let ab = (g.numer() * g.denom()).abs();
            let (part, _) = mathcore::square_free_part(ab.magnitude(), mathcore::DEFAULT_TRIAL_BOUND);
            BigInt::from(part)
        }
        _ => {
            let (part, _) = mathcore::square_free_part(fv.magnitude(), mathcore::DEFAULT_TRIAL_BOUND);
            BigInt::from(part)
        }
    };
    if d.is_zero() || !(&fv % &d).is_zero() {
        return (d, BigInt::zero());
    }
    let y = mathcore::exact_sqrt(&(&fv / &d)).unwrap_or_default();
    (d, y)
}

/// Evaluate a family at `u` and verify the result.
pub fn instantiate_family(f: &FamilyRecord, u: &BigInt) -> Result<CurveInstance> {
    if f.is_individual() {
        return Err(Error::Precondition(format!("{} is an individual-curve stub", f.name)));
    }
    if !f.integrality.contains(u) {
        return Err(Error::NonIntegral(format!("{}: u = {u} is outside the integral residues", f.name)));
    }
    let q = int_value(&f.q, u, "q", &f.name)?;
    let r_full = int_value(&f.r, u, "r", &f.name)?;
    let t = int_value(&f.t, u, "t", &f.name)?;
    let c = BigInt::from(f.r_cofactor.clone());
    if !(&r_full % &c).is_zero() {
        return Err(Error::NonIntegral(format!("{}: r({u}) is not divisible by {c}", f.name)));
    }
    if !q.is_positive() || !mathcore::is_prime_int(&q) {
        return Err(Error::NotPrime(format!("{}: q({u}) is not prime", f.name)));
    }
    let r_prime = &r_full / &c;
    if !r_prime.is_positive() || !mathcore::is_prime_int(&r_prime) {
        return Err(Error::NotPrime(format!("{}: r'({u}) is not prime", f.name)));
    }
    let (d, y) = cm_values(f, u, &q, &t);
    Ok(CurveInstance::assemble(&f.name, Some(u.clone()), q, r_full, c, t, d, y, f.k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedSign {
    Positive,
    Negative,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub target_r_bits: Option<u32>,
    pub max_terms: u32,
    pub min_exp: u32,
    pub max_exp: u32,
    pub sign: SeedSign,
    /// Only seeds in these classes are emitted.
    pub residues: Option<Integrality>,
    /// Maximum number of seeds emitted.
    pub budget: u64,
    #[serde(with = "crate::serde_big::biguint")]
    pub min_abs: BigUint,
    #[serde(with = "crate::serde_big::opt_biguint")]
    pub max_abs: Option<BigUint>,
    /// Maximum number of signed values inspected before the filter.
    pub scan_limit: u64,
}

impl SeedSpec {
    pub fn new(max_terms: u32, min_exp: u32, max_exp: u32, sign: SeedSign, budget: u64) -> Result<SeedSpec> {
        let spec = SeedSpec {
            target_r_bits: None,
            max_terms,
            min_exp,
            max_exp,
            sign,
            residues: None,
            budget,
            min_abs: BigUint::one(),
            max_abs: None,
            scan_limit: budget.saturating_mul(1000),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Bounds |u| so that r'(u) has about `r_bits` bits, and filters by the
    /// family's integral residues.
    pub fn for_family(f: &FamilyRecord, r_bits: u32, max_terms: u32, budget: u64) -> Result<SeedSpec> {
        let rp = f.r_prime();
        if rp.deg() < 1 || r_bits < 2 {
            return Err(Error::Precondition(format!("{}: cannot size seeds", f.name)));
        }
        let d = rp.deg() as u32;
        let lc = rp.lead().abs();
        // |u| with lc·|u|^d in [2^(b−1), 2^b)
        let root = |bits: u32, up: bool| -> BigUint {
            let x = (Rat::from_integer(BigInt::one() << bits) / &lc).to_integer();
            let x = x.to_biguint().unwrap_or_default();
            let r = x.nth_root(d);
            if up {
                r + 1u32
            } else {
                r
            }
        };
        let min_abs = root(r_bits - 1, false).max(BigUint::one());
        let max_abs = root(r_bits, true);
        let mut spec = SeedSpec::new(max_terms, 0, max_abs.bits() as u32 + 1, SeedSign::Both, budget)?;
        spec.target_r_bits = Some(r_bits);
        spec.min_abs = min_abs;
        spec.max_abs = Some(max_abs);
        spec.residues = Some(f.integrality.clone());
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::Precondition("max_terms must be at least 1".into()));
        }
        if self.budget < 1 {
            return Err(Error::Precondition("budget must be at least 1".into()));
        }
        if self.min_exp > self.max_exp {
            return Err(Error::Precondition("empty exponent range".into()));
        }
        Ok(())
    }
}

/// Largest value with NAF weight ≤ w and exponents in [lo, top].
fn naf_max(w: u32, lo: u32, top: i64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut e = top;
    for _ in 0..w {
        if e < lo as i64 {
            break;
        }
        acc += BigInt::one() << (e as u32);
        e -= 2;
    }
    acc
}

/// Smallest v ≥ x whose NAF has weight ≤ w and exponents in [lo, hi].
fn naf_next_ge(x: &BigInt, w: u32, lo: u32, hi: i64) -> Option<BigInt> {
    if !x.is_positive() {
        return Some(-naf_prev_le(&-x, w, lo, hi));
    }
    if w == 0 || hi < lo as i64 {
        return None;
    }
    let start = (bitlen(x) as i64 - 2).max(lo as i64);
    for e in start..=hi {
        let p = BigInt::one() << (e as u32);
        if &p + naf_max(w - 1, lo, e - 2) < *x {
            continue;
        }
        if let Some(rest) = naf_next_ge(&(x - &p), w - 1, lo, e - 2) {
            return Some(p + rest);
        }
    }
    None
}

/// Largest v ≤ y (y ≥ 0) with the same constraints; 0 always qualifies.
fn naf_prev_le(y: &BigInt, w: u32, lo: u32, hi: i64) -> BigInt {
    if y.is_zero() || w == 0 || hi < lo as i64 {
        return BigInt::zero();
    }
    let start = (bitlen(y) as i64 + 1).min(hi);
    let mut e = start;
    while e >= lo as i64 {
        let p = BigInt::one() << (e as u32);
        if &p - naf_max(w - 1, lo, e - 2) <= *y {
            let z = y - &p;
            let rest = if z.is_negative() {
                naf_next_ge(&-z, w - 1, lo, e - 2).map(|v| -v)
            } else {
                Some(naf_prev_le(&z, w - 1, lo, e - 2))
            };
            if let Some(rest) = rest {
                return p + rest;
            }
        }
        e -= 1;
    }
    BigInt::zero()
}

/// Deterministic seed stream for a spec.
pub struct SeedStream {
    spec: SeedSpec,
    max_abs: Option<BigInt>,
    residues: Option<Integrality>,
    cur: Option<BigInt>,
    pending_negative: Option<BigInt>,
    emitted: u64,
    inspected: u64,
}

impl SeedStream {
    /// Signed values looked at so far, including those the filter rejected.
    pub fn inspected(&self) -> u64 {
        self.inspected
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// True when the stream stopped because the budget or scan limit ran out.
    pub fn exhausted_budget(&self) -> bool {
        self.emitted >= self.spec.budget || self.inspected >= self.spec.scan_limit
    }

    fn accept(&mut self, v: &BigInt) -> bool {
        self.inspected += 1;
        self.residues.as_ref().is_none_or(|r| r.contains(v))
    }

    fn advance(&mut self) {
        let lo = self.spec.min_exp;
        let hi = self.spec.max_exp as i64;
        self.cur = self
            .cur
            .as_ref()
            .and_then(|c| naf_next_ge(&(c + 1), self.spec.max_terms, lo, hi))
            .filter(|v| self.max_abs.as_ref().is_none_or(|m| v <= m));
    }
}

impl Iterator for SeedStream {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        loop {
            if self.emitted >= self.spec.budget || self.inspected >= self.spec.scan_limit {
                return None;
            }
            if let Some(neg) = self.pending_negative.take() {
                if self.accept(&neg) {
                    self.emitted += 1;
                    return Some(neg);
                }
                continue;
            }
            let v = self.cur.clone()?;
            self.advance();
            if self.spec.sign != SeedSign::Positive {
                self.pending_negative = Some(-&v);
            }
            if self.spec.sign != SeedSign::Negative && self.accept(&v) {
                self.emitted += 1;
                return Some(v);
            }
        }
    }
}

/// Seeds in ascending |u|, positive before negative, filtered by residues.
pub fn seed_candidates(spec: &SeedSpec) -> SeedStream {
    let lo = spec.min_exp;
    let hi = spec.max_exp as i64;
    let max_abs = spec.max_abs.clone().map(BigInt::from);
    let empty_filter = spec.residues.as_ref().is_some_and(|r| r.is_empty());
    let start = BigInt::from(spec.min_abs.clone()).max(BigInt::one());
    let cur = if empty_filter || spec.validate().is_err() {
        None
    } else {
        naf_next_ge(&start, spec.max_terms, lo, hi).filter(|v| max_abs.as_ref().is_none_or(|m| v <= m))
    };
    SeedStream {
        spec: spec.clone(),
        max_abs,
        residues: spec.residues.clone(),
        cur,
        pending_negative: None,
        emitted: 0,
        inspected: 0,
    }
}

/// Seed order: |u| ascending, then positive first.
pub fn seed_order(a: &BigInt, b: &BigInt) -> Ordering {
    a.magnitude()
        .cmp(b.magnitude())
        .then_with(|| (a.sign() == Sign::Minus).cmp(&(b.sign() == Sign::Minus)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub instances: Vec<CurveInstance>,
    /// Seeds passed to instantiate_family.
    pub tried: u64,
    pub budget_exhausted: bool,
}

/// Instantiate every seed of the stream, keeping verified instances.
/// With `jobs > 1` the seeds are split into strides across threads; the
/// merged result is sorted by seed order, so output does not depend on `jobs`.
pub fn search(f: &FamilyRecord, spec: &SeedSpec, jobs: usize) -> SearchOutcome {
    let mut stream = seed_candidates(spec);
    let seeds: Vec<BigInt> = stream.by_ref().collect();
    let budget_exhausted = stream.exhausted_budget();
    let jobs = jobs.max(1).min(seeds.len().max(1));
    let run = |part: usize| -> Vec<CurveInstance> {
        seeds
            .iter()
            .skip(part)
            .step_by(jobs)
            .filter_map(|u| instantiate_family(f, u).ok())
            .filter(|inst| inst.report.no_failures())
            .collect()
    };
    let mut instances: Vec<CurveInstance> = if jobs == 1 {
        run(0)
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs).map(|p| s.spawn(move || run(p))).collect();
            handles.into_iter().flat_map(|h| h.join().expect("search worker")).collect()
        })
    };
    instances.sort_by(|a, b| seed_order(a.seed.as_ref().unwrap(), b.seed.as_ref().unwrap()));
    SearchOutcome { instances, tried: seeds.len() as u64, budget_exhausted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn sparse_strings() {
        assert_eq!(parse_sparse("2^110 + 2^36 + 1").unwrap(), from_terms(&[(1, 110), (1, 36), (1, 0)]));
        assert_eq!(parse_sparse("2^64 - 2^54 + 2^37 + 2^32 - 4").unwrap(), from_terms(&[(1, 64), (-1, 54), (1, 37), (1, 32), (-1, 2)]));
        assert_eq!(parse_sparse("-17").unwrap(), BigInt::from(-17));
        let u = from_terms(&[(-1, 192), (1, 188), (-1, 0)]);
        assert_eq!(parse_sparse(&format_sparse(&naf(&u))).unwrap(), u);
        assert!(parse_sparse("2^x").is_err());
        assert!(parse_sparse("").is_err());
    }

    #[test]
    fn naf_roundtrip() {
        for v in [-1000i64, -7, -1, 0, 1, 3, 7, 97, 1 << 40] {
            let u = BigInt::from(v);
            let t = naf(&u);
            assert_eq!(from_terms(&t), u);
            assert!(t.windows(2).all(|w| w[0].1 >= w[1].1 + 2));
        }
        assert_eq!(naf(&BigInt::from(7)), vec![(1, 3), (-1, 0)]);
        assert_eq!(format_sparse(&naf(&BigInt::from(-7))), "-2^3 + 1");
    }

    #[test]
    fn powers_of_two() {
        let spec = SeedSpec::new(1, 0, 3, SeedSign::Positive, 100).unwrap();
        let got: Vec<i64> = seed_candidates(&spec).map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(got, vec![1, 2, 4, 8]);
    }

    #[test]
    fn bn_u1() {
        let inst = instantiate_family(lookup("BN").unwrap(), &BigInt::one()).unwrap();
        assert_eq!(inst.q, big("103"));
        assert_eq!(inst.r_prime, big("97"));
        assert_eq!(inst.t, big("7"));
        assert_eq!(inst.d, big("3"));
        assert_eq!(inst.y, big("11"));
        assert!(inst.report.all_pass(), "{:#?}", inst.report);
    }

    #[test]
    fn tampered_trace_fails() {
        let mut inst = instantiate_family(lookup("BN").unwrap(), &BigInt::one()).unwrap();
        inst.t += 2;
        assert_eq!(verify_instance(&inst).status("hasse-count"), Some(Status::Fail));
    }

    #[test]
    fn small_search_finds_u1() {
        let bn = lookup("BN").unwrap();
        for bits in [7, 8] {
            let spec = SeedSpec::for_family(bn, bits, 8, 100).unwrap();
            let out = search(bn, &spec, 1);
            assert!(out.instances.iter().any(|i| i.seed == Some(BigInt::one())), "bits {bits}");
        }
    }
}
