//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;

fn big(x: i128) -> BigInt {
    BigInt::from(x)
}

/// Discriminant of `X^4 + aX^3 + bX^2 + cX + d` from the expanded formula.
pub fn quartic_disc_big(a: i128, b: i128, c: i128, d: i128) -> BigInt {
    let (a, b, c, d) = (big(a), big(b), big(c), big(d));
    let p = |x: &BigInt, e: u32| x.pow(e);
    256 * p(&d, 3) - 192 * &a * &c * p(&d, 2) - 128 * p(&b, 2) * p(&d, 2) + 144 * &b * p(&c, 2) * &d
        - 27 * p(&c, 4)
        + 144 * p(&a, 2) * &b * p(&d, 2)
        - 6 * p(&a, 2) * p(&c, 2) * &d
        - 80 * &a * p(&b, 2) * &c * &d
        + 18 * &a * &b * p(&c, 3)
        + 16 * p(&b, 4) * &d
        - 4 * p(&b, 3) * p(&c, 2)
        - 27 * p(&a, 4) * p(&d, 2)
        + 18 * p(&a, 3) * &b * &c * &d
        - 4 * p(&a, 3) * p(&c, 3)
        - 4 * p(&a, 2) * p(&b, 3) * &d
        + p(&a, 2) * p(&b, 2) * p(&c, 2)
}

/// Discriminant of `X^3 + aX^2 + bX + c`.
pub fn cubic_disc_big(a: i128, b: i128, c: i128) -> BigInt {
    let (a, b, c) = (big(a), big(b), big(c));
    &a * &a * &b * &b - 4 * b.pow(3) - 4 * a.pow(3) * &c - 27 * &c * &c + 18 * &a * &b * &c
}

/// Discriminant of `e3 X^3 + e2 X^2 + e1 X + e0`.
pub fn general_cubic_disc_big(e3: i128, e2: i128, e1: i128, e0: i128) -> BigInt {
    let (a, b, c, d) = (big(e3), big(e2), big(e1), big(e0));
    &b * &b * &c * &c - 4 * &a * c.pow(3) - 4 * b.pow(3) * &d - 27 * &a * &a * &d * &d + 18 * &a * &b * &c * &d
}

pub fn is_square_big(n: &BigInt) -> bool {
    if n.sign() == num_bigint::Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Class of a monic cubic by integer-root search over divisors of `c`.
/// Returns "Reducible", "S3" or "A3".
pub fn cubic_class_oracle(a: i128, b: i128, c: i128) -> &'static str {
    let eval = |x: i128| ((x + a) * x + b) * x + c;
    let has_root = if c == 0 {
        true
    } else {
        (1..=c.abs()).filter(|k| c % k == 0).any(|k| eval(k) == 0 || eval(-k) == 0)
    };
    if has_root {
        "Reducible"
    } else if is_square_big(&cubic_disc_big(a, b, c)) {
        "A3"
    } else {
        "S3"
    }
}
