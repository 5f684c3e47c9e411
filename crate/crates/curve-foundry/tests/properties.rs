use curve_foundry::catalog::{builtin_families, mutate, validate_family, Status};
use curve_foundry::instantiate::{naf, seed_candidates, seed_order, SeedSign, SeedSpec};
use curve_foundry::polyring::{rat_frac, Rat, RatPoly};
use curve_foundry::security::{l_complexity_bits, required_extension_bits, attack_models};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((-20i64..20, 1i64..5), 0..6)
        .prop_map(|cs| RatPoly::new(cs.into_iter().map(|(n, d)| rat_frac(n, d)).collect()))
}

fn brute_seeds(w: u32, lo: u32, hi: u32, sign: SeedSign) -> Vec<BigInt> {
    let mut pos = Vec::new();
    for v in 1i64..(1 << (hi + 2)) {
        let terms = naf(&BigInt::from(v));
        if terms.len() as u32 <= w && terms.iter().all(|&(_, e)| e >= lo && e <= hi) {
            pos.push(BigInt::from(v));
        }
    }
    let mut out = Vec::new();
    for v in pos {
        if sign != SeedSign::Negative {
            out.push(v.clone());
        }
        if sign != SeedSign::Positive {
            out.push(-v);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b), &(&b * &a));
        prop_assert_eq!(&(&a - &a), &RatPoly::zero());
    }

    #[test]
    fn division_reconstructs(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&(&q * &b) + &r), &a);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
    }

    #[test]
    fn display_parse_roundtrip(a in poly()) {
        prop_assert_eq!(RatPoly::parse(&a.display_with("x")).unwrap(), a);
    }

    #[test]
    fn seed_stream_matches_brute_force(w in 1u32..4, lo in 0u32..3, span in 0u32..6, s in 0u8..3) {
        let hi = lo + span;
        let sign = [SeedSign::Positive, SeedSign::Negative, SeedSign::Both][s as usize];
        let spec = SeedSpec::new(w, lo, hi, sign, 1_000_000).unwrap();
        let got: Vec<BigInt> = seed_candidates(&spec).collect();
        prop_assert_eq!(&got, &brute_seeds(w, lo, hi, sign));
        for pair in got.windows(2) {
            prop_assert_eq!(seed_order(&pair[0], &pair[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn l_complexity_monotone(n in 64u64..20_000, dn in 1u64..500, c in 1.0f64..3.0, dc in 0.001f64..0.5) {
        let l = 1.0 / 3.0;
        prop_assert!(l_complexity_bits(n + dn, l, c) > l_complexity_bits(n, l, c));
        prop_assert!(l_complexity_bits(n, l, c + dc) > l_complexity_bits(n, l, c));
    }

    #[test]
    fn inversion_round_trip(n in 256u64..16_000, m in 0usize..8) {
        let model = &attack_models()[m];
        let bits = model.bits(n);
        let back = required_extension_bits(bits, model);
        prop_assert!(back <= n && model.bits(back) >= bits);
        prop_assert!(back == 2 || model.bits(back - 1) < bits);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Single-coefficient perturbations of healthy rows never validate.
    #[test]
    fn mutations_break_validation(fam in 0usize..1000, which in 0usize..3, index in 0usize..40, num in 1i64..7, neg in any::<bool>(), den in 1i64..3) {
        let good: Vec<_> = builtin_families().iter()
            .filter(|f| !f.is_flagged() && !f.is_individual() && f.q_degree() <= 12)
            .collect();
        let f = good[fam % good.len()];
        let delta: Rat = rat_frac(if neg { -num } else { num }, den);
        let m = mutate(f, which, index, &delta);
        let rep = validate_family(&m);
        prop_assert!(
            ["c1", "c2", "c3", "c4", "c5", "sample"].iter().any(|id| rep.status(id) == Some(Status::Fail)),
            "{} survived mutation ({which}, {index}, {delta}): {:?}", f.name, rep
        );
    }
}
