use curve_foundry::catalog::lookup;
use curve_foundry::instantiate::{from_terms, instantiate_family, seed_candidates, SeedSpec};

fn seed(terms: &[(i8, u32)]) -> num_bigint::BigInt {
    from_terms(terms)
}

fn sizes(family: &str, terms: &[(i8, u32)]) -> (u64, u64) {
    let f = lookup(family).unwrap();
    let inst = instantiate_family(f, &seed(terms)).unwrap_or_else(|e| panic!("{family}: {e}"));
    assert!(inst.report.no_failures(), "{family}: {:#?}", inst.report);
    (inst.r_bits(), inst.q_bits())
}

#[test]
fn bn_446() {
    assert_eq!(sizes("BN", &[(1, 110), (1, 36), (1, 0)]), (446, 446));
}

#[test]
fn bn_1022() {
    assert_eq!(sizes("BN", &[(-1, 254), (1, 33), (1, 6)]).1, 1022);
}

#[test]
fn bls12_768() {
    let u = [(-1, 192), (1, 188), (-1, 115), (-1, 110), (-1, 44), (-1, 0)];
    assert_eq!(sizes("BLS12", &u), (768, 1150));
}

#[test]
fn kss16_605() {
    let u = [(1, 78), (-1, 76), (-1, 28), (1, 14), (1, 7), (1, 0)];
    assert_eq!(sizes("KSS16", &u), (605, 766));
}

#[test]
fn kss18_474() {
    let u = [(1, 80), (1, 77), (1, 76), (-1, 61), (-1, 53), (-1, 14)];
    assert_eq!(sizes("KSS18", &u), (474, 638));
}

#[test]
fn bls24_409() {
    let u = [(-1, 51), (-1, 28), (1, 11), (-1, 0)];
    assert_eq!(sizes("BLS24", &u), (409, 509));
}

#[test]
fn kss16_256_bit_seeds() {
    for u in [
        vec![(-1, 34), (1, 27), (-1, 23), (1, 20), (-1, 11), (1, 0)],
        vec![(1, 34), (-1, 30), (1, 26), (1, 23), (1, 14), (-1, 5), (1, 0)],
    ] {
        let (r, q) = sizes("KSS16", &u);
        assert!(r == 256 || r == 257, "r bits {r}");
        assert_eq!(q, 330);
    }
}

#[test]
fn bn_seed_stream_reaches_published_seed() {
    let bn = lookup("BN").unwrap();
    let spec = SeedSpec::for_family(bn, 446, 3, 100_000).unwrap();
    let target = seed(&[(1, 110), (1, 36), (1, 0)]);
    let pos = seed_candidates(&spec).position(|u| u == target);
    assert!(pos.is_some(), "published BN seed not emitted");
}
