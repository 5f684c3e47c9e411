//! Classic constructions: Cocks-Pinch, Brezing-Weng, Drylo's variable
//! discriminant families, MNT/GMV/Scott-Barreto through Pell equations, and
//! the Freeman k = 10 norm-equation search.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, Discriminant, FamilyRecord, Taxonomy};
use crate::error::{Error, Result};
use crate::instantiate::{instantiate_family, seed_order, CurveInstance};
use crate::mathcore::{self, SquareFree};
use crate::polyring::{cyclotomic, is_irreducible_q, rat, rat_frac, Rat, RatPoly};

fn prime_factors(mut k: u64) -> Vec<u64> {
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

fn square_free_u64(d: u64) -> bool {
    d > 0 && mathcore::is_square_free(&BigUint::from(d), mathcore::DEFAULT_TRIAL_BOUND) == SquareFree::Yes
}

/// First a^((r−1)/k), a = 2, 3, …, of exact order k modulo r.
fn primitive_root_of_unity(k: u64, r: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    let e = (r - 1u32) / k;
    let ls = prime_factors(k);
    let mut a = BigUint::from(2u32);
    while &a < r {
        let z = a.modpow(&e, r);
        if z != one && ls.iter().all(|l| z.modpow(&BigUint::from(k / l), r) != one) {
            return Some(z);
        }
        a += 1u32;
    }
    None
}

/// Cocks-Pinch for a given prime r.
///
/// Tries the root z and its inverse, both square roots of −D, and lifts
/// t + i·r, y + j·r for i, j < `retries`, in that order.
pub fn cocks_pinch(k: u32, d: u64, r: &BigUint, retries: u32) -> Result<CurveInstance> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    if !mathcore::is_prime(r) {
        return Err(Error::Precondition(format!("r = {r} is not prime")));
    }
    if !((r - 1u32) % k).is_zero() {
        return Err(Error::Precondition(format!("k = {k} does not divide r - 1")));
    }
    if !square_free_u64(d) {
        return Err(Error::Precondition(format!("D = {d} is not square-free")));
    }
    let rr = BigInt::from(r.clone());
    let minus_d = (r - (BigUint::from(d) % r)) % r;
    let roots = mathcore::sqrt_mod(&minus_d, r)?;
    if roots.is_empty() || roots[0].is_zero() {
        return Err(Error::Precondition(format!("-{d} is not a nonzero square mod {r}")));
    }
    let z = primitive_root_of_unity(k as u64, r)
        .ok_or_else(|| Error::NoSolution(format!("no primitive {k}-th root of unity mod {r}")))?;
    let z_inv = z.modpow(&BigUint::from(k - 1), r);
    let dd = BigInt::from(d);
    for zz in [&z, &z_inv] {
        let t0 = BigInt::from(zz + 1u32).mod_floor(&rr);
        for s in &roots {
            let s = BigInt::from(s.clone());
            let s_inv = mathcore::mod_inverse(&s, &rr).expect("nonzero root");
            let y0 = ((&t0 - 2u32) * s_inv).mod_floor(&rr);
            for i in 0..retries.max(1) {
                for j in 0..retries.max(1) {
                    let t = &t0 + &rr * i;
                    let y = &y0 + &rr * j;
                    let num: BigInt = &t * &t + &dd * &y * &y;
                    if !(&num % 4u32).is_zero() {
                        continue;
                    }
                    let q = num / 4u32;
                    if !mathcore::is_prime_int(&q) {
                        continue;
                    }
                    if !mathcore::has_embedding_degree(q.magnitude(), r, k as u64) {
                        continue;
                    }
                    return Ok(CurveInstance::assemble(
                        "Cocks-Pinch",
                        None,
                        q,
                        rr.clone(),
                        BigInt::one(),
                        t,
                        dd.clone(),
                        y,
                        k,
                    ));
                }
            }
        }
    }
    Err(Error::NoSolution(format!("Cocks-Pinch: no integral prime q for k={k}, D={d}, r={r}")))
}

/// Cocks-Pinch with r the first suitable prime of `r_bits` bits: r ≡ 1 mod k
/// and −D a square mod r, scanning upward from 2^(r_bits−1).
pub fn cocks_pinch_bits(k: u32, d: u64, r_bits: u32, retries: u32, max_primes: u32) -> Result<CurveInstance> {
    if r_bits < 3 {
        return Err(Error::Precondition("r_bits must be at least 3".into()));
    }
    let kk = BigUint::from(k);
    let start = BigUint::one() << (r_bits - 1);
    // smallest r ≥ start with r ≡ 1 mod k
    let mut r = &start + ((&kk + 1u32 - (&start % &kk)) % &kk);
    let limit = BigUint::one() << r_bits;
    let mut tried = 0;
    while r < limit && tried < max_primes {
        if mathcore::is_prime(&r) {
            let md = BigInt::from(-(d as i64));
            if mathcore::jacobi(&md, &r) == 1 {
                tried += 1;
                match cocks_pinch(k, d, &r, retries) {
                    Ok(inst) => return Ok(inst),
                    Err(Error::NoSolution(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        r += &kk;
    }
    Err(Error::NoSolution(format!("Cocks-Pinch: no {r_bits}-bit r worked for k={k}, D={d}")))
}

fn small_coeffs() -> Vec<Rat> {
    let mut v = Vec::new();
    for n in 1..=4 {
        v.push(rat(n));
        v.push(rat(-n));
    }
    for n in [1, 3] {
        v.push(rat_frac(n, 2));
        v.push(rat_frac(-n, 2));
    }
    v
}

/// A square root of −D in Q[x]/(r), or `None`.
///
/// Single terms c·b and pairs c1·b1 + c2·b2 over the basis {x^j mod r} ∪
/// {ζ^j mod r}, with c from a small fixed set. This covers √−1 = ζ₄ and
/// √−3 = 2ζ₃ + 1 whenever those roots of unity live in the field.
pub fn sqrt_minus_d(d: u64, r: &RatPoly, zeta: &RatPoly, k: u32) -> Option<RatPoly> {
    let target = RatPoly::constant(rat(-(d as i64)));
    let n = r.deg();
    let mut basis: Vec<RatPoly> = Vec::new();
    let x = RatPoly::x();
    let mut p = RatPoly::one();
    for _ in 0..(4 * k as usize).max(2 * n) {
        if !basis.contains(&p) {
            basis.push(p.clone());
        }
        p = p.mul_mod(&x, r);
    }
    let mut p = RatPoly::one();
    for _ in 0..k {
        if !basis.contains(&p) {
            basis.push(p.clone());
        }
        p = p.mul_mod(zeta, r);
    }
    let cs = small_coeffs();
    let is_root = |w: &RatPoly| w.mul_mod(w, r) == target;
    for b in &basis {
        for c in &cs {
            let w = b.scale(c);
            if is_root(&w) {
                return Some(w);
            }
        }
    }
    for (i, b1) in basis.iter().enumerate() {
        for b2 in basis.iter().skip(i + 1) {
            for c1 in &cs {
                for c2 in &cs {
                    let w = &b1.scale(c1) + &b2.scale(c2);
                    if is_root(&w) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn reduce(p: &RatPoly, r: &RatPoly) -> RatPoly {
    p.rem(r).expect("nonzero modulus")
}

/// Brezing-Weng: t = ζ + 1, y = (ζ − 1)/√−D, q = (t² + D·y²)/4, all reduced mod r.
pub fn brezing_weng(k: u32, d: u64, r: &RatPoly, zeta: &RatPoly) -> Result<FamilyRecord> {
    if r.deg() < 1 || !is_irreducible_q(r) {
        return Err(Error::Precondition("r must be irreducible over Q".into()));
    }
    if !square_free_u64(d) {
        return Err(Error::Precondition(format!("D = {d} is not square-free")));
    }
    if !cyclotomic(k as u64).compose_mod(zeta, r).is_zero() {
        return Err(Error::Precondition(format!("zeta is not a primitive {k}-th root of unity mod r")));
    }
    let s = sqrt_minus_d(d, r, zeta, k)
        .ok_or_else(|| Error::NoSolution(format!("no representable square root of -{d} in Q[x]/(r)")))?;
    let zeta = reduce(zeta, r);
    let t = &zeta + &RatPoly::one();
    let s_inv = s.inv_mod(r).expect("unit");
    let y = (&zeta - &RatPoly::one()).mul_mod(&s_inv, r);
    let q = (&(&t * &t) + &(&y * &y).scale(&rat(d as i64))).scale(&rat_frac(1, 4));
    let rec = FamilyRecord::build(
        &format!("BW-k{k}-D{d}"),
        k,
        Taxonomy::Cfd,
        q,
        r.clone(),
        t,
        Discriminant::Fixed(d as i64),
        &format!("constructed: Brezing-Weng k={k}, D={d}, zeta = {}", zeta.display_with("x")),
    );
    if rec.integrality.is_empty() {
        return Err(Error::NonIntegral(format!("{}: q is never integral", rec.name)));
    }
    Ok(rec)
}

/// Drylo's construction: z with z² ≡ −x (mod r) and a primitive k-th root ζ.
/// Then t = ζ + 1, y = (ζ − 1)/z and q = (t² + x·y²)/4, so 4q − t² = x·y².
///
/// Without `zeta`, the first ±(c·x)^j (c = 1..9, j ascending) that is a
/// primitive k-th root mod r is used.
pub fn drylo_cvd(k: u32, r: &RatPoly, z: &RatPoly, zeta: Option<&RatPoly>) -> Result<FamilyRecord> {
    if r.deg() < 1 || !is_irreducible_q(r) {
        return Err(Error::Precondition("r must be irreducible over Q".into()));
    }
    let minus_x = RatPoly::monomial(rat(-1), 1);
    if reduce(&minus_x, r).is_zero() || z.mul_mod(z, r) != reduce(&minus_x, r) {
        return Err(Error::Precondition("z_rep does not satisfy z^2 = -x mod r".into()));
    }
    let phi = cyclotomic(k as u64);
    let zeta = match zeta {
        Some(zt) => {
            if !phi.compose_mod(zt, r).is_zero() {
                return Err(Error::Precondition(format!("zeta is not a primitive {k}-th root mod r")));
            }
            reduce(zt, r)
        }
        None => find_power_root(&phi, r, 4 * r.deg() as u32)
            .ok_or_else(|| Error::NoSolution(format!("no primitive {k}-th root of unity found in Q[x]/(r)")))?,
    };
    let t = &zeta + &RatPoly::one();
    let z_inv = z.inv_mod(r).ok_or_else(|| Error::Precondition("z_rep is not invertible mod r".into()))?;
    let y = (&zeta - &RatPoly::one()).mul_mod(&z_inv, r);
    let q = (&(&t * &t) + &(&RatPoly::x() * &(&y * &y))).scale(&rat_frac(1, 4));
    let rec = FamilyRecord::build(
        &format!("Drylo-k{k}"),
        k,
        Taxonomy::Cvd,
        q,
        r.clone(),
        t,
        Discriminant::Variable,
        &format!("constructed: Drylo CVD k={k}, zeta = {}", zeta.display_with("x")),
    );
    if rec.integrality.is_empty() {
        return Err(Error::NonIntegral(format!("{}: q is never integral", rec.name)));
    }
    Ok(rec)
}

fn find_power_root(phi: &RatPoly, r: &RatPoly, max_j: u32) -> Option<RatPoly> {
    for j in 1..=max_j {
        for c in 1..=9 {
            let base = RatPoly::monomial(rat(c), 1).pow(j);
            for cand in [base.clone(), -&base] {
                if phi.compose_mod(&cand, r).is_zero() {
                    return Some(reduce(&cand, r));
                }
            }
        }
    }
    None
}

/// Substitute x ← D·x² into a CVD family; the result has 4q − t² = D·(x·y(Dx²))².
pub fn cvd_specialize(f: &FamilyRecord, d: u64) -> Result<FamilyRecord> {
    if f.taxonomy != Taxonomy::Cvd {
        return Err(Error::Precondition(format!("{} is not a CVD family", f.name)));
    }
    if !square_free_u64(d) {
        return Err(Error::Precondition(format!("D = {d} is not square-free")));
    }
    let sub = RatPoly::monomial(rat(d as i64), 2);
    Ok(FamilyRecord::build(
        &format!("{}-D{d}", f.name),
        f.k,
        Taxonomy::Cfd,
        f.q.compose(&sub),
        f.r.compose(&sub),
        f.t.compose(&sub),
        Discriminant::Fixed(d as i64),
        &format!("constructed: {} with x <- {d}x^2", f.name),
    ))
}

/// Inputs that rebuild the tabled Drylo CVD rows: (k, r, z, ζ).
pub fn drylo_table_inputs() -> Vec<(u32, RatPoly, RatPoly, RatPoly)> {
    let p = |s: &str| RatPoly::parse(s).expect("builtin polynomial");
    vec![
        (8, p("u^4 - 4u^3 + 8u^2 + 8u + 4"), p("-1/2 + u/2 - u^2/4"), p("1/6 - 4u/3 + 5u^2/12 - u^3/12")),
        (9, p("729u^6 + 27u^3 + 1"), p("6u^2 + 81u^5"), p("243u^5")),
        (
            15,
            p("6561u^8 - 2187u^7 + 243u^5 - 81u^4 + 27u^3 - 3u + 1"),
            p("-1/3 + u + 9u^3 + 27u^4 - 81u^5 + 729u^7"),
            p("9u^2"),
        ),
        (28, p("4096u^12 - 1024u^10 + 256u^8 - 64u^6 + 16u^4 - 4u^2 + 1"), p("8u^4 + 1024u^11"), p("512u^9")),
        (
            30,
            p("390625u^8 + 78125u^7 - 3125u^5 - 625u^4 - 125u^3 + 5u + 1"),
            p("1/5 - u - 25u^3 - 125u^4 + 625u^5 + 6250u^6 + 15625u^7"),
            p("-25u^2"),
        ),
    ]
}

/// X² − N·Y² = M with X = (2a·u + b)/s and N = n_coeff·D.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellForm {
    /// The quadratic a·u² + b·u + c equated to mult·D·y².
    pub quad: RatPoly,
    #[serde(with = "crate::serde_big::bigint")]
    pub a: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub b: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub c: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub mult: BigInt,
    /// Common factor divided out of X.
    #[serde(with = "crate::serde_big::bigint")]
    pub s: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub n_coeff: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub m: BigInt,
}

impl PellForm {
    /// a·u² + b·u + c = mult·D·y²; completing the square gives
    /// (2au + b)² − 4a·mult·D·y² = b² − 4ac, then a common s is divided out.
    pub fn normalize(quad: &RatPoly, mult: &BigInt) -> Result<PellForm> {
        if quad.deg() != 2 || !quad.denominator_lcm().is_one() {
            return Err(Error::Precondition(format!(
                "Pell reduction needs an integral quadratic, got {}",
                quad.display_with("u")
            )));
        }
        let co = |i| -> BigInt { quad.coeff(i).to_integer() };
        let (c, b, a) = (co(0), co(1), co(2));
        let n4: BigInt = &a * mult * 4u32;
        let m: BigInt = &b * &b - &a * &c * 4u32;
        let g = (&a * 2u32).gcd(&b);
        let mut s = BigInt::one();
        let mut cand = g.abs();
        while cand > BigInt::one() {
            let sq = &cand * &cand;
            if (&g % &cand).is_zero() && (&n4 % &sq).is_zero() && (&m % &sq).is_zero() {
                s = cand;
                break;
            }
            cand -= 1;
        }
        let sq = &s * &s;
        Ok(PellForm { quad: quad.clone(), a, b, c, mult: mult.clone(), n_coeff: &n4 / &sq, m: &m / &sq, s })
    }

    pub fn x_of(&self, u: &BigInt) -> BigInt {
        (&self.a * 2 * u + &self.b) / &self.s
    }

    /// Inverse of `x_of` when it lands on an integer.
    pub fn u_of(&self, x: &BigInt) -> Option<BigInt> {
        let num: BigInt = &self.s * x - &self.b;
        let den: BigInt = &self.a * 2;
        (&num % &den).is_zero().then(|| num / den)
    }

    pub fn n_for(&self, d: u64) -> BigInt {
        &self.n_coeff * d
    }

    /// Seeds u with quad(u) = mult·D·y², with y.
    ///
    /// Brute-force representatives with y ≤ `y_bound`, each pushed along its
    /// orbit under the fundamental unit `lifts` times.
    pub fn seeds(&self, d: u64, y_bound: u64, lifts: u32) -> Vec<(BigInt, BigInt)> {
        let n = self.n_for(d);
        let Ok(sols) = mathcore::solve_pell(&n, &self.m, y_bound) else {
            return vec![];
        };
        let unit = mathcore::fundamental_unit(&n).ok();
        let mut out: Vec<(BigInt, BigInt)> = Vec::new();
        let mut push = |x: &BigInt, y: &BigInt| {
            for x in [x.clone(), -x] {
                if let Some(u) = self.u_of(&x) {
                    if !out.iter().any(|(v, _)| v == &u) {
                        out.push((u, y.abs()));
                    }
                }
            }
        };
        for sol in sols {
            for sy in [sol.y.clone(), -&sol.y] {
                let mut cur = mathcore::PellSolution { y: sy, ..sol.clone() };
                push(&cur.x, &cur.y);
                if let Some(unit) = &unit {
                    for _ in 0..lifts {
                        cur = cur.compose(unit);
                        push(&cur.x, &cur.y);
                    }
                }
            }
        }
        out
    }
}

/// Unit steps applied to each small Pell solution in the searches below.
pub const PELL_LIFTS: u32 = 6;

/// The Scott-Barreto quadratic 4h·Φk(x) − d(x − 1)² = d·D·y² with its Pell form.
pub fn scott_barreto_reduce(k: u32, h: u32, d: u32) -> Result<PellForm> {
    if !matches!(k, 3 | 4 | 6) {
        return Err(Error::Precondition(format!("k = {k}: Phi_k is not quadratic")));
    }
    if h == 0 || d == 0 {
        return Err(Error::Precondition("h and d must be at least 1".into()));
    }
    let xm1 = RatPoly::from_i64(&[-1, 1]);
    let quad = &cyclotomic(k as u64).scale(&rat(4 * h as i64)) - &(&xm1 * &xm1).scale(&rat(d as i64));
    PellForm::normalize(&quad, &BigInt::from(d))
}

fn sort_dedupe(mut found: Vec<CurveInstance>) -> Vec<CurveInstance> {
    let key = |c: &CurveInstance| c.seed.clone().unwrap_or_default();
    found.sort_by(|a, b| seed_order(&key(a), &key(b)).then_with(|| a.d.cmp(&b.d)).then_with(|| a.family.cmp(&b.family)));
    found.dedup_by(|a, b| a.seed == b.seed && a.q == b.q && a.t == b.t);
    found
}

fn pell_search(f: &FamilyRecord, form: &PellForm, ds: &[u64], y_bound: u64) -> Vec<CurveInstance> {
    let mut out = Vec::new();
    for &d in ds {
        if !square_free_u64(d) {
            continue;
        }
        for (u, _) in form.seeds(d, y_bound, PELL_LIFTS) {
            if let Ok(inst) = instantiate_family(f, &u) {
                if inst.report.no_failures() {
                    out.push(inst);
                }
            }
        }
    }
    out
}

/// Pell form of a sparse family's CM polynomial.
pub fn family_form(f: &FamilyRecord) -> Result<PellForm> {
    let g = crate::polyring::cm_polynomial(&f.q, &f.t);
    let den = g.denominator_lcm();
    PellForm::normalize(&g.scale(&Rat::from_integer(den.clone())), &den)
}

/// MNT curves for k ∈ {3, 4, 6}: both trace branches, square-free D ≤ `d_max`.
pub fn mnt_search(k: u32, d_max: u64, y_bound: u64) -> Result<Vec<CurveInstance>> {
    let names: &[&str] = match k {
        3 => &["MNT3+", "MNT3-"],
        4 => &["MNT4a", "MNT4b"],
        6 => &["MNT6+", "MNT6-"],
        _ => return Err(Error::Precondition(format!("MNT curves need k in {{3, 4, 6}}, got {k}"))),
    };
    let ds: Vec<u64> = (1..=d_max).collect();
    let mut found = Vec::new();
    for name in names {
        let f = lookup(name).expect("builtin MNT family");
        found.extend(pell_search(f, &family_form(f)?, &ds, y_bound));
    }
    Ok(sort_dedupe(found))
}

/// The cofactor family q = h·Φk(x)/d + x, r = Φk(x)/d, t = x + 1.
pub fn gmv_family(k: u32, h: u32) -> Result<FamilyRecord> {
    if !matches!(k, 3 | 4 | 6) {
        return Err(Error::Precondition(format!("k = {k}: Phi_k is not quadratic")));
    }
    let d = if k == 3 { 3 } else { 1 };
    let r = cyclotomic(k as u64).scale(&rat_frac(1, d));
    let q = &r.scale(&rat(h as i64)) + &RatPoly::x();
    let t = RatPoly::from_i64(&[1, 1]);
    let mut rec = FamilyRecord::build(
        &format!("GMV-k{k}-h{h}"),
        k,
        Taxonomy::Sparse,
        q,
        r,
        t,
        Discriminant::Variable,
        &format!("constructed: cofactor MNT variant k={k}, h={h}"),
    );
    rec.h = RatPoly::constant(rat(h as i64));
    Ok(rec)
}

/// MNT with cofactors: #E = h·r for each h in `cofactors`.
pub fn gmv_search(k: u32, cofactors: &[u32], d_max: u64, y_bound: u64) -> Result<Vec<CurveInstance>> {
    let ds: Vec<u64> = (1..=d_max).collect();
    let mut found = Vec::new();
    for &h in cofactors {
        let d = if k == 3 { 3 } else { 1 };
        let form = scott_barreto_reduce(k, h, d)?;
        let f = gmv_family(k, h)?;
        found.extend(pell_search(&f, &form, &ds, y_bound));
    }
    Ok(sort_dedupe(found))
}

/// Freeman k = 10: 15u² + 10u + 3 = D·y², i.e. X² − 15D·y² = −20 with X = 15u + 5.
pub fn freeman10_search(d_list: &[u64], y_bound: u64) -> Result<Vec<CurveInstance>> {
    if let Some(d) = d_list.iter().find(|&&d| !square_free_u64(d)) {
        return Err(Error::Precondition(format!("D = {d} is not square-free")));
    }
    let f = lookup("Freeman10").expect("builtin Freeman family");
    let form = family_form(f)?;
    Ok(sort_dedupe(pell_search(f, &form, d_list, y_bound)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::brezing_weng_odd;
    use crate::instantiate::verify_instance;

    fn n(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    #[test]
    fn cocks_pinch_tiny() {
        let c = cocks_pinch(6, 3, &BigUint::from(13u32), 4).unwrap();
        assert_eq!((c.q.clone(), c.t.clone(), c.y.clone()), (n(43), n(5), n(7)));
        assert!(verify_instance(&c).no_failures());
        assert!(cocks_pinch(6, 3, &BigUint::from(12u32), 4).is_err());
        assert!(cocks_pinch(5, 3, &BigUint::from(13u32), 4).is_err());
    }

    #[test]
    fn cocks_pinch_scan_small_r() {
        for (k, d, r) in [(6u32, 3u64, 7u32), (4, 1, 5)] {
            match cocks_pinch(k, d, &BigUint::from(r), 8) {
                Ok(c) => {
                    assert_eq!(&c.q * 4, &c.t * &c.t + BigInt::from(d) * &c.y * &c.y);
                    assert!(verify_instance(&c).no_failures());
                }
                Err(e) => assert!(matches!(e, Error::NoSolution(_))),
            }
        }
    }

    #[test]
    fn cocks_pinch_bits_rho_two() {
        let c = cocks_pinch_bits(12, 3, 64, 8, 50).unwrap();
        assert_eq!(c.r_bits(), 64);
        assert!(c.q_bits() >= 120);
        assert!(verify_instance(&c).no_failures());
    }

    #[test]
    fn brezing_weng_gives_bls12() {
        let f = brezing_weng(12, 3, &cyclotomic(12), &RatPoly::x()).unwrap();
        assert_eq!(f.q, lookup("BLS12").unwrap().q);
        assert!(f.validation.all_pass(), "{:?}", f.validation);
        let g = brezing_weng(12, 3, &cyclotomic(12), &RatPoly::monomial(rat(1), 5)).unwrap();
        assert_ne!(g.q, f.q);
        assert_eq!(g.validation.status("c4"), Some(crate::catalog::Status::Pass));
        assert!(brezing_weng(12, 3, &cyclotomic(12), &RatPoly::monomial(rat(1), 2)).is_err());
    }

    #[test]
    fn brezing_weng_odd_k() {
        for k in [5u32, 7, 9] {
            let zeta = RatPoly::monomial(rat(-1), 2);
            let f = brezing_weng(k, 1, &cyclotomic(4 * k as u64), &zeta).unwrap();
            let g = brezing_weng_odd(k).unwrap();
            assert_eq!(f.q, g.q, "k={k}");
            assert_eq!(f.t, p("1 - x^2"));
        }
    }

    #[test]
    fn drylo_rows_rebuild() {
        for (k, r, z, zeta) in drylo_table_inputs() {
            let f = drylo_cvd(k, &r, &z, Some(&zeta)).unwrap();
            let name = format!("Drylo-CVD-{k}");
            let tabled = lookup(&name).unwrap();
            assert_eq!(f.q, tabled.q, "{name}");
            assert_eq!(f.t, tabled.t, "{name}");
            assert!(f.validation.all_pass(), "{name}: {:?}", f.validation);
            let cfd = cvd_specialize(&f, 2).unwrap();
            assert_eq!(cfd.cm.as_ref().unwrap().kind, crate::polyring::CmKind::Cfd, "{name}");
        }
    }

    #[test]
    fn drylo_rejects_bad_z() {
        let (k, r, _, zeta) = drylo_table_inputs().remove(1);
        assert!(drylo_cvd(k, &r, &RatPoly::x(), Some(&zeta)).is_err());
    }

    #[test]
    fn scott_barreto_quadratics() {
        assert_eq!(scott_barreto_reduce(6, 1, 1).unwrap().quad, p("3x^2 - 2x + 3"));
        assert_eq!(scott_barreto_reduce(4, 1, 1).unwrap().quad, p("3x^2 + 2x + 3"));
        assert_eq!(scott_barreto_reduce(6, 2, 1).unwrap().quad, p("7x^2 - 6x + 7"));
        assert!(scott_barreto_reduce(5, 1, 1).is_err());
    }

    #[test]
    fn pell_form_roundtrip() {
        let f = lookup("MNT6-").unwrap();
        let form = family_form(f).unwrap();
        assert_eq!((form.n_for(19), form.m.clone()), (BigInt::from(57), BigInt::from(-8)));
        for u in -20..20 {
            let u = BigInt::from(u);
            assert_eq!(form.u_of(&form.x_of(&u)), Some(u));
        }
        let fr = family_form(lookup("Freeman10").unwrap()).unwrap();
        assert_eq!((fr.n_coeff.clone(), fr.m.clone()), (BigInt::from(15), BigInt::from(-20)));
        assert_eq!(fr.x_of(&BigInt::from(0)), BigInt::from(5));
    }

    #[test]
    fn mnt6_finds_q5() {
        let found = mnt_search(6, 20, 10).unwrap();
        assert!(found.iter().any(|c| c.q == n(5) && c.r_prime == n(7) && c.t == n(-1) && c.d == n(19)));
        for c in &found {
            assert!(verify_instance(c).no_failures());
        }
        assert!(mnt_search(5, 20, 10).is_err());
    }

    #[test]
    fn gmv_h1_matches_mnt() {
        let set = |v: Vec<CurveInstance>| {
            let mut s: Vec<(BigInt, BigInt)> = v.into_iter().map(|c| (c.q, c.t)).collect();
            s.sort();
            s.dedup();
            s
        };
        for k in [3u32, 4, 6] {
            let a = set(mnt_search(k, 30, 1000).unwrap());
            let b = set(gmv_search(k, &[1], 30, 1000).unwrap());
            assert_eq!(a, b, "k={k}");
            assert!(!a.is_empty());
        }
        assert!(gmv_search(6, &[], 30, 1000).unwrap().is_empty());
    }

    #[test]
    fn gmv_cofactor_two() {
        let found = gmv_search(6, &[2], 50, 1000).unwrap();
        assert!(!found.is_empty());
        for c in &found {
            assert_eq!(&c.q + 1 - &c.t, &c.r_prime * 2);
        }
    }

    #[test]
    fn freeman_search() {
        let f = lookup("Freeman10").unwrap();
        assert_eq!(f.q.eval(&BigInt::from(1)), rat(88));
        assert_eq!(f.r.eval(&BigInt::from(1)), rat(71));
        let found = freeman10_search(&[43, 67, 187, 195, 235, 403, 483, 723], 10_000).unwrap();
        assert!(found.iter().any(|c| c.seed == Some(n(-2)) && c.q == n(283) && c.r_prime == n(251)));
        for c in &found {
            assert_eq!(c.h, n(1));
            assert_eq!(c.k, 10);
            assert!(verify_instance(c).no_failures());
        }
        assert!(freeman10_search(&[4], 10).is_err());
    }
}
