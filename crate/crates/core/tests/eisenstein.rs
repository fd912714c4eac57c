use proptest::prelude::*;

use galois_census::eisenstein::{
    eis_cubefree_decompose, eis_factor, eis_gcd, eis_mul, eis_norm, is_cubefree, param_xy, parametrize_cubic_witness,
    EisInt,
};
use galois_census::{classify_cubic, CubicClass, MonicCubic};

fn eis() -> impl Strategy<Value = EisInt> {
    (-400i128..=400, -400i128..=400).prop_map(|(m, n)| EisInt::new(m, n))
}

proptest! {
    #[test]
    fn half_coordinates_round_trip(z in eis()) {
        let (q, r) = z.half().unwrap();
        prop_assert_eq!(EisInt::from_half(q, r).unwrap(), z);
    }

    #[test]
    fn norm_is_multiplicative(x in eis(), y in eis()) {
        prop_assert_eq!(eis_norm(eis_mul(x, y).unwrap()).unwrap(), eis_norm(x).unwrap() * eis_norm(y).unwrap());
    }

    #[test]
    fn factorization_reassembles(z in eis()) {
        prop_assume!(!z.is_zero());
        let f = eis_factor(z).unwrap();
        prop_assert_eq!(f.product().unwrap(), z);
        prop_assert!(f.unit.is_unit());
    }

    #[test]
    fn cubefree_split_reassembles(z in eis()) {
        prop_assume!(!z.is_zero());
        let (d, alpha) = eis_cubefree_decompose(z).unwrap();
        prop_assert_eq!(eis_mul(d, alpha.pow(3).unwrap()).unwrap(), z);
        prop_assert!(is_cubefree(d).unwrap());
        prop_assert_eq!(alpha.canonical().unwrap(), alpha);
    }

    #[test]
    fn gcd_divides_both(x in eis(), y in eis()) {
        prop_assume!(!(x.is_zero() && y.is_zero()));
        let g = eis_gcd(x, y).unwrap();
        prop_assert!(x.exact_div(g).unwrap().is_some());
        prop_assert!(y.exact_div(g).unwrap().is_some());
    }

    #[test]
    fn param_xy_norm_relation(q in -12i128..=12, r in -12i128..=12, s in -12i128..=12, t in -12i128..=12) {
        prop_assume!((q - r) % 2 == 0 && (s - t) % 2 == 0);
        let (x16, y16) = param_xy(q, r, s, t).unwrap();
        // N(d alpha^3) = N(d) N(alpha)^3, with the 16 and both halves cleared
        let lhs = x16 * x16 + 3 * y16 * y16;
        let rhs = (q * q + 3 * r * r) * (s * s + 3 * t * t).pow(3);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn canonical_associate_is_unique_in_sector() {
    for m in -20i128..=20 {
        for n in -20i128..=20 {
            let z = EisInt::new(m, n);
            if z.is_zero() {
                continue;
            }
            let c = z.canonical().unwrap();
            assert!(c.m > 0 && 0 <= c.n && c.n < c.m, "{z} -> {c}");
            let mut unit = EisInt::ONE;
            for _ in 0..6 {
                assert_eq!(eis_mul(z, unit).unwrap().canonical().unwrap(), c);
                unit = eis_mul(unit, EisInt::new(1, 1)).unwrap();
            }
        }
    }
}

#[test]
fn witnesses_for_all_small_cyclic_cubics() {
    let h = 15i128;
    let mut seen = 0;
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                let f = MonicCubic::new(a, b, c);
                if classify_cubic(&f).unwrap() != CubicClass::A3 {
                    assert!(parametrize_cubic_witness(&f).is_err());
                    continue;
                }
                let w = parametrize_cubic_witness(&f).unwrap();
                w.check().unwrap();
                assert_eq!(2 * (w.x * w.x + 3 * w.y * w.y), w.u * w.z.pow(3), "{f}");
                seen += 1;
            }
        }
    }
    assert!(seen > 100);
}

#[test]
fn simplest_cubic_witness() {
    let w = parametrize_cubic_witness(&MonicCubic::new(0, -3, -1)).unwrap();
    assert_eq!((w.i, w.j), (9, -27));
    assert_eq!(w.disc, 81);
}
