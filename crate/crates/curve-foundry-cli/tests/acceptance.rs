//! Acceptance gate. Prints one PASS/FAIL line per criterion and fails if any
//! criterion that is meant to be computed is red. Runs without the libtest
//! harness so the lines are never captured.

use std::panic::{catch_unwind, AssertUnwindSafe};

use curve_foundry::catalog::{brezing_weng_odd, builtin_families, lookup, mutate, validate_family, Discriminant, Status};
use curve_foundry::constructors::{cocks_pinch, family_form, mnt_search};
use curve_foundry::instantiate::{from_terms, instantiate_family, verify_instance};
use curve_foundry::polyring::{classify_cm, cm_polynomial, rat, rat_frac, CmKind, RatPoly};
use curve_foundry::security::{self, l_complexity_bits, round1};
use curve_foundry::toyverify::*;
use curve_foundry_cli::{GRID_MODELS, GRID_PUBLISHED, GRID_Q_BITS};
use num_bigint::{BigInt, BigUint};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

/// family, seed terms, r bits (if printed correctly), q bits, r cofactor
type SizeCase = (&'static str, &'static [(i8, u32)], Option<u64>, u64, Option<i64>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn p(s: &str) -> RatPoly {
    RatPoly::parse(s).unwrap()
}

fn n(v: i64) -> BigInt {
    BigInt::from(v)
}

fn grid() -> Outcome {
    let mut worst = 0.0f64;
    for (i, &q_bits) in GRID_Q_BITS.iter().enumerate() {
        for (j, &(model, c)) in GRID_MODELS.iter().enumerate() {
            let got = round1(l_complexity_bits(q_bits * 12, 1.0 / 3.0, c));
            let diff = (got - GRID_PUBLISHED[i][j] as f64).abs();
            ensure(diff <= 1.0, format!("{q_bits}-bit q, {model}: {got} vs {}", GRID_PUBLISHED[i][j]))?;
            worst = worst.max(diff);
        }
    }
    Ok(format!("16 cells within 1 bit (largest gap {worst:.1})"))
}

fn sizes() -> Outcome {
    let cases: [SizeCase; 6] = [
        ("BN", &[(1, 110), (1, 36), (1, 0)], Some(446), 446, None),
        ("BN", &[(-1, 254), (1, 33), (1, 6)], None, 1022, None),
        ("BLS12", &[(-1, 192), (1, 188), (-1, 115), (-1, 110), (-1, 44), (-1, 0)], Some(768), 1150, None),
        ("KSS16", &[(1, 78), (-1, 76), (-1, 28), (1, 14), (1, 7), (1, 0)], Some(605), 766, Some(61250)),
        ("KSS18", &[(1, 80), (1, 77), (1, 76), (-1, 61), (-1, 53), (-1, 14)], Some(474), 638, Some(343)),
        ("BLS24", &[(-1, 51), (-1, 28), (1, 11), (-1, 0)], Some(409), 509, None),
    ];
    for (fam, terms, r_bits, q_bits, c) in cases {
        let inst = instantiate_family(lookup(fam).unwrap(), &from_terms(terms)).map_err(|e| format!("{fam}: {e}"))?;
        ensure(inst.report.no_failures(), format!("{fam}: instance checks failed"))?;
        ensure(inst.q_bits() == q_bits, format!("{fam}: q has {} bits, want {q_bits}", inst.q_bits()))?;
        if let Some(rb) = r_bits {
            ensure(inst.r_bits() == rb, format!("{fam}: r has {} bits, want {rb}", inst.r_bits()))?;
        }
        if let Some(c) = c {
            ensure(inst.c == n(c), format!("{fam}: cofactor {} want {c}", inst.c))?;
        }
    }
    Ok("6 published seeds give exact bit lengths".into())
}

fn identities() -> Outcome {
    let four = RatPoly::constant(rat(4));
    let disc = |name: &str| {
        let f = lookup(name).unwrap();
        (f, &(&four * &f.q) - &(&f.t * &f.t))
    };

    let (_, bn) = disc("BN");
    let s = p("6x^2 + 4x + 1");
    ensure(bn == &RatPoly::constant(rat(3)) * &(&s * &s), "BN: 4q - t^2")?;

    let (_, bls) = disc("BLS12");
    let s = &p("x - 1") * &p("2x^2 - 1");
    ensure(&RatPoly::constant(rat(3)) * &bls == &s * &s, "BLS12: 3(4q - t^2)")?;

    for k in [5u32, 7, 11, 13] {
        let f = brezing_weng_odd(k).map_err(|e| e.to_string())?;
        let s = &RatPoly::monomial(rat(1), k as usize) * &p("x^2 + 1");
        ensure(&(&four * &f.q) - &(&f.t * &f.t) == &s * &s, format!("BW odd k = {k}"))?;
    }

    let fr = lookup("Freeman10").unwrap();
    let one = RatPoly::one();
    ensure(&(&fr.q + &one) - &fr.t == fr.r, "Freeman: q + 1 - t = r")?;
    ensure(&(&fr.t * &fr.t) - &(&four * &fr.q) == -&p("15x^2 + 10x + 3"), "Freeman: t^2 - 4q")?;

    let sg = lookup("SG54").unwrap();
    ensure(&(&sg.q + &one) - &sg.t == &p("3x^2 + 3x + 1") * &sg.r, "SG54: q + 1 - t")?;
    let cm = classify_cm(&cm_polynomial(&sg.q, &sg.t));
    ensure(cm.kind == CmKind::Cfd && cm.d == Some(n(3)), "SG54: CM discriminant 3")?;
    ensure(sg.d == Discriminant::Fixed(3), "SG54: record discriminant")?;
    Ok("BN, BLS12, BW odd k in {5,7,11,13}, Freeman, SG54 hold exactly".into())
}

fn validator() -> Outcome {
    let good: Vec<_> = builtin_families().iter().filter(|f| !f.is_flagged() && !f.is_individual()).collect();
    for f in &good {
        ensure(f.validation.passes(&["c2", "c3", "c4"]), format!("{} fails c2-c4", f.name))?;
    }
    let small: Vec<_> = good.iter().filter(|f| f.q_degree() <= 12).collect();
    let mut state = 0x5eed_u64;
    let mut caught = 0;
    const MUTATIONS: usize = 60;
    for _ in 0..MUTATIONS {
        let mut next = || {
            state = splitmix64(state);
            state
        };
        let f = small[(next() % small.len() as u64) as usize];
        let which = (next() % 3) as usize;
        let index = (next() % 40) as usize;
        let num = (next() % 6) as i64 + 1;
        let num = if next() % 2 == 0 { num } else { -num };
        let den = (next() % 2) as i64 + 1;
        let rep = validate_family(&mutate(f, which, index, &rat_frac(num, den)));
        let fails = ["c1", "c2", "c3", "c4", "c5", "sample"].iter().any(|id| rep.status(id) == Some(Status::Fail));
        ensure(fails, format!("{} survived mutation ({which}, {index}, {num}/{den})", f.name))?;
        caught += 1;
    }
    Ok(format!("{} records pass c2-c4; {caught} of {MUTATIONS} mutations rejected", good.len()))
}

fn worked() -> Outcome {
    let bn = instantiate_family(lookup("BN").unwrap(), &n(1)).map_err(|e| e.to_string())?;
    ensure(
        (bn.q.clone(), bn.r_prime.clone(), bn.t.clone(), bn.d.clone(), bn.y.clone(), bn.k) == (n(103), n(97), n(7), n(3), n(11), 12),
        "BN u = 1",
    )?;
    ensure(verify_instance(&bn).no_failures(), "BN u = 1 does not verify")?;

    let cp = cocks_pinch(6, 3, &BigUint::from(13u32), 4).map_err(|e| e.to_string())?;
    ensure((cp.q.clone(), cp.t.clone()) == (n(43), n(5)), format!("Cocks-Pinch gave q = {}, t = {}", cp.q, cp.t))?;

    let form = family_form(lookup("MNT6-").unwrap()).map_err(|e| e.to_string())?;
    ensure((form.n_for(19), form.m.clone()) == (n(57), n(-8)), "MNT6 Pell form")?;
    let found = mnt_search(6, 20, 10).map_err(|e| e.to_string())?;
    ensure(
        found.iter().any(|c| c.q == n(5) && c.r_prime == n(7) && c.t == n(-1) && c.d == n(19)),
        "MNT k = 6 did not produce (5, 7, -1, 19)",
    )?;
    Ok("BN (103, 97, 7, 3, 11), Cocks-Pinch (43, 5), MNT (5, 7, -1, D = 19)".into())
}

fn toy_pairing() -> Outcome {
    let bn = instantiate_family(lookup("BN").unwrap(), &n(1)).map_err(|e| e.to_string())?;
    let cp = cocks_pinch(6, 3, &BigUint::from(13u32), 4).map_err(|e| e.to_string())?;
    for (inst, r, k) in [(bn, 97u64, 12u32), (cp, 13, 6)] {
        let curve = toy_curve_for(&inst).map_err(|e| e.to_string())?;
        let f = ExtField::new(curve.q, k).map_err(|e| e.to_string())?;
        let pt = curve.point_of_order(r).map_err(|e| e.to_string())?;
        let mut counter = 0;
        let (qp, e) = loop {
            let (qp, used) = curve.sample_point(&f, counter);
            counter = used + 1;
            let e = tate_pairing(&curve, &f, &pt, &qp, r).map_err(|e| e.to_string())?;
            if !f.is_one(&e) {
                break (qp, e);
            }
            ensure(counter < 10_000, "no non-degenerate Q")?;
        };
        ensure(f.is_one(&f.pow(&e, r as u128)), format!("q = {}: pairing order does not divide r", curve.q))?;
        for (a, b) in [(2u64, 3u64), (5, 11), (r - 1, 7)] {
            let lhs = tate_pairing(&curve, &f, &curve.mul(&f, &pt, a as u128), &curve.mul(&f, &qp, b as u128), r)
                .map_err(|e| e.to_string())?;
            ensure(lhs == f.pow(&e, (a * b) as u128), format!("q = {}: bilinearity at ({a}, {b})", curve.q))?;
        }
        let rep = mov_transfer_demo(&curve, r, k, 20, 11).map_err(|e| e.to_string())?;
        ensure(rep.all_agree && rep.challenges.len() > 20, format!("q = {}: MOV paths disagree", curve.q))?;
    }
    Ok("(103, 97, 12) and (43, 13, 6): bilinear, non-degenerate, MOV agrees on 20 challenges".into())
}

fn dlp() -> Outcome {
    let mut state = 2024u64;
    let mut next = || {
        state = splitmix64(state);
        state
    };
    let mut done = 0u64;
    while done < 200 {
        let p = next() % (1 << 20);
        if p < 3 || !curve_foundry::mathcore::is_prime_u64(p) {
            continue;
        }
        let grp = MulModP { p };
        let g = 2 + next() % (p - 2);
        let ord: u64 = curve_foundry::mathcore::mult_order(&BigUint::from(g), &BigUint::from(p))
            .unwrap()
            .try_into()
            .unwrap();
        let x = next() % ord;
        let h = grp.pow(&g, x);
        let mut cur = 1u64;
        let mut brute = 0;
        while cur != h {
            cur = grp.op(&cur, &g);
            brute += 1;
        }
        ensure(brute == x, format!("brute force p = {p}"))?;
        ensure(dlog_bsgs(&grp, &g, &h, ord).map_err(|e| e.to_string())? == x, format!("BSGS p = {p}"))?;
        ensure(dlog_pollard_rho(&grp, &g, &h, ord, done).map_err(|e| e.to_string())? == x, format!("rho p = {p}"))?;
        done += 1;
    }
    Ok("brute force, BSGS and Pollard rho agree on 200 instances".into())
}

fn excluded() -> Outcome {
    // Nothing to compute: check that the refined figures are carried as
    // labelled constants rather than recomputed.
    let rows = security::reference_rows_128();
    for want in [132, 140, 148] {
        let row = rows.iter().find(|r| r.security == want).ok_or(format!("no reference row at {want}"))?;
        ensure(row.provenance.starts_with("published reference"), format!("{} lacks provenance", row.label))?;
    }
    Ok("not run at desk scale: real (S)TNFS attacks and the refined key-size curve; \
        refined 132/140/148-bit entries are labelled reference constants"
        .into())
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("L-notation grid", grid),
        ("published seed sizes", sizes),
        ("symbolic identities", identities),
        ("family validator and mutations", validator),
        ("worked instances", worked),
        ("toy pairing and MOV", toy_pairing),
        ("DLP oracle equivalence", dlp),
        ("desk-scale exclusions", excluded),
    ];
    let mut red = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match res {
            // the last criterion is a statement of scope, not a computation
            Ok(msg) if i == criteria.len() - 1 => println!("criterion {}: STATED  {name}: {msg}", i + 1),
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
                red.push(i + 1);
            }
        }
    }
    if !red.is_empty() {
        eprintln!("red criteria: {red:?}");
        std::process::exit(1);
    }
    println!("acceptance: all computed criteria pass");
}
