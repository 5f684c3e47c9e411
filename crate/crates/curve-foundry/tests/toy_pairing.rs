use curve_foundry::catalog::lookup;
use curve_foundry::constructors::cocks_pinch;
use curve_foundry::instantiate::{instantiate_family, CurveInstance};
use curve_foundry::mathcore::mult_order;
use curve_foundry::toyverify::*;
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bn_u1() -> CurveInstance {
    instantiate_family(lookup("BN").unwrap(), &BigInt::from(1)).unwrap()
}

fn cp_13() -> CurveInstance {
    cocks_pinch(6, 3, &BigUint::from(13u32), 4).unwrap()
}

fn check_bilinear(inst: &CurveInstance, r: u64, k: u32, seed: u64) {
    let curve = toy_curve_for(inst).unwrap();
    let f = ExtField::new(curve.q, k).unwrap();
    let p = curve.point_of_order(r).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counter = 0;
    let (q, e) = loop {
        let (q, used) = curve.sample_point(&f, counter);
        counter = used + 1;
        let e = tate_pairing(&curve, &f, &p, &q, r).unwrap();
        if !f.is_one(&e) {
            break (q, e);
        }
    };
    assert_eq!(f.pow(&e, r as u128), f.one(), "order divides r");
    for _ in 0..6 {
        let a = rng.gen_range(1..r);
        let b = rng.gen_range(1..r);
        let pa = curve.mul(&f, &p, a as u128);
        let qb = curve.mul(&f, &q, b as u128);
        let lhs = tate_pairing(&curve, &f, &pa, &qb, r).unwrap();
        assert_eq!(lhs, f.pow(&e, (a * b) as u128), "a={a} b={b}");
    }
}

#[test]
fn bn_toy_curve_exists() {
    let c = toy_curve_for(&bn_u1()).unwrap();
    assert_eq!((c.q, c.n), (103, 97));
    assert_eq!(curve_order_bruteforce(103, c.a, c.b).unwrap(), 97);
}

#[test]
fn bilinear_bn_toy() {
    check_bilinear(&bn_u1(), 97, 12, 1);
}

#[test]
fn bilinear_cocks_pinch_toy() {
    check_bilinear(&cp_13(), 13, 6, 2);
}

#[test]
fn mov_agrees_on_both_toys() {
    for (inst, r, k) in [(bn_u1(), 97, 12), (cp_13(), 13, 6)] {
        let curve = toy_curve_for(&inst).unwrap();
        let rep = mov_transfer_demo(&curve, r, k, 20, 11).unwrap();
        assert_eq!(rep.challenges.len(), 21);
        assert!(rep.all_agree, "{rep:?}");
    }
}

#[test]
fn mov_mnt_toy() {
    let curve = find_curve_coeff(5, 7, Some(19)).unwrap();
    assert!(mov_transfer_demo(&curve, 7, 6, 10, 3).unwrap().all_agree);
}

#[test]
fn embedding_degree_matches_mult_order() {
    for (q, r) in [(103u64, 97u64), (43, 13), (5, 7), (11, 7)] {
        let ord = mult_order(&BigUint::from(q % r), &BigUint::from(r)).unwrap();
        assert_eq!(BigUint::from(embedding_degree(q, r).unwrap()), ord);
    }
}

#[test]
fn dlog_oracles_agree_200() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 200 {
        let p: u64 = rng.gen_range(3..(1 << 20));
        if !curve_foundry::mathcore::is_prime_u64(p) {
            continue;
        }
        let grp = MulModP { p };
        let g = rng.gen_range(2..p);
        let ord: u64 = mult_order(&BigUint::from(g), &BigUint::from(p)).unwrap().try_into().unwrap();
        let x = rng.gen_range(0..ord);
        let h = grp.pow(&g, x);
        // brute force
        let mut cur = 1u64;
        let mut brute = 0;
        while cur != h {
            cur = grp.op(&cur, &g);
            brute += 1;
        }
        assert_eq!(brute, x);
        assert_eq!(dlog_bsgs(&grp, &g, &h, ord).unwrap(), x, "bsgs p={p} g={g}");
        assert_eq!(dlog_pollard_rho(&grp, &g, &h, ord, done).unwrap(), x, "rho p={p} g={g}");
        done += 1;
    }
}

#[test]
fn curve_subgroup_rho_matches_bsgs() {
    let curve = toy_curve_for(&bn_u1()).unwrap();
    let f = ExtField::new(103, 1).unwrap();
    let grp = CurveGroup { curve: &curve, field: &f };
    let p = curve.point_of_order(97).unwrap();
    for x in [0u64, 1, 5, 50, 96] {
        let h = curve.mul(&f, &p, x as u128);
        assert_eq!(dlog_bsgs(&grp, &p, &h, 97).unwrap(), x);
        assert_eq!(dlog_pollard_rho(&grp, &p, &h, 97, x).unwrap(), x);
    }
}
