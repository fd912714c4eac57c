//! Overflow-checked integer primitives: square tests, divisors, factorization
//! and squarefree / cubefree splitting.
//!
//! Everything here works on `i128` (aliased as [`WideInt`]). User-supplied
//! coefficients are bounded by [`INPUT_BOUND`], which keeps every formula in
//! this crate comfortably below `2^126`; any intermediate that would escape
//! that range surfaces as [`Error::Overflow`] instead of wrapping.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Carrier for every exact integer in the crate.
pub type WideInt = i128;

/// Largest coefficient magnitude accepted from callers.
pub const INPUT_BOUND: i128 = 1_000_000;

/// An `i128` that remembers whether any step of its computation overflowed.
///
/// Lets long polynomial formulas be written with ordinary operators and
/// checked once at the end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checked(Option<i128>);

impl Checked {
    pub const fn new(v: i128) -> Self {
        Checked(Some(v))
    }

    pub fn get(self) -> Result<i128> {
        self.0.ok_or(Error::Overflow)
    }

    pub fn pow(self, e: u32) -> Self {
        Checked(self.0.and_then(|v| v.checked_pow(e)))
    }
}

impl From<i128> for Checked {
    fn from(v: i128) -> Self {
        Checked(Some(v))
    }
}

impl From<i64> for Checked {
    fn from(v: i64) -> Self {
        Checked(Some(v as i128))
    }
}

macro_rules! checked_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for Checked {
            type Output = Checked;
            fn $method(self, rhs: Checked) -> Checked {
                Checked(match (self.0, rhs.0) {
                    (Some(a), Some(b)) => a.$checked(b),
                    _ => None,
                })
            }
        }
        impl $tr<i128> for Checked {
            type Output = Checked;
            fn $method(self, rhs: i128) -> Checked {
                Checked(self.0.and_then(|a| a.$checked(rhs)))
            }
        }
        impl $tr<Checked> for i128 {
            type Output = Checked;
            fn $method(self, rhs: Checked) -> Checked {
                Checked(rhs.0.and_then(|b| self.$checked(b)))
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl Neg for Checked {
    type Output = Checked;
    fn neg(self) -> Checked {
        Checked(self.0.and_then(i128::checked_neg))
    }
}

/// Shorthand for lifting a value into [`Checked`].
#[inline]
pub fn ck(v: i128) -> Checked {
    Checked::new(v)
}

pub(crate) fn check_input(name: &'static str, v: i128) -> Result<()> {
    if v.abs() > INPUT_BOUND {
        return Err(Error::InvalidInput(format!(
            "{name} = {v} exceeds the input bound {INPUT_BOUND}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Square roots
// ---------------------------------------------------------------------------

/// Floor of the square root, by Newton iteration from above.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Floor of the square root of a `u64`.
pub fn isqrt_u64(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let bits = 64 - n.leading_zeros();
    let mut x = 1u64 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

const fn square_residues<const M: usize>() -> [bool; M] {
    let mut t = [false; M];
    let mut i = 0;
    while i < M {
        t[(i * i) % M] = true;
        i += 1;
    }
    t
}

const SQ64: [bool; 64] = square_residues::<64>();
const SQ63: [bool; 63] = square_residues::<63>();
const SQ65: [bool; 65] = square_residues::<65>();
const SQ11: [bool; 11] = square_residues::<11>();

#[inline]
fn passes_residue_filters(n: u128) -> bool {
    SQ64[(n & 63) as usize] && {
        let r = (n % 45045) as usize; // 63 * 65 * 11
        SQ63[r % 63] && SQ65[r % 65] && SQ11[r % 11]
    }
}

/// Non-negative square root of `n` when `n` is a perfect square.
pub fn perfect_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let n = n as u128;
    if !passes_residue_filters(n) {
        return None;
    }
    let r = isqrt(n);
    (r * r == n).then_some(r as i128)
}

/// Square test tuned for the census inner loops.
#[inline]
pub fn is_square_i64(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let n = n as u64;
    if !SQ64[(n & 63) as usize] {
        return false;
    }
    let r = (n % 45045) as usize;
    if !(SQ63[r % 63] && SQ65[r % 65] && SQ11[r % 11]) {
        return false;
    }
    let s = isqrt_u64(n);
    s * s == n
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

/// Canonical prime factorization: `sign * prod(p^e)` with primes increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(u128, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn value(&self) -> Result<i128> {
        let mut acc = ck(self.sign as i128);
        for &(p, e) in &self.factors {
            let p = i128::try_from(p).map_err(|_| Error::Overflow)?;
            acc = acc * ck(p).pow(e);
        }
        acc.get()
    }
}

const TRIAL_LIMIT: u128 = 1 << 12;

pub fn factorize(n: i128) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput("factorize"));
    }
    let sign = if n < 0 { -1 } else { 1 };
    let mut primes = Vec::new();
    factor_unsigned(n.unsigned_abs(), &mut primes);
    primes.sort_unstable();
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { sign, factors })
}

/// Pushes every prime factor of `m` (with multiplicity) onto `out`.
fn factor_unsigned(mut m: u128, out: &mut Vec<u128>) {
    for p in [2u128, 3, 5] {
        while m.is_multiple_of(p) {
            out.push(p);
            m /= p;
        }
    }
    // 2-3-5 wheel
    const STEPS: [u128; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u128;
    let mut i = 0;
    while p <= TRIAL_LIMIT && p * p <= m {
        while m.is_multiple_of(p) {
            out.push(p);
            m /= p;
        }
        p += STEPS[i];
        i = (i + 1) % 8;
    }
    if m == 1 {
        return;
    }
    if p * p > m || is_probable_prime(m) {
        out.push(m);
        return;
    }
    split_composite(m, out);
}

fn split_composite(m: u128, out: &mut Vec<u128>) {
    if is_probable_prime(m) {
        out.push(m);
        return;
    }
    if let Some(r) = perfect_square(m as i128).filter(|_| m <= i128::MAX as u128) {
        let r = r as u128;
        split_composite(r, out);
        split_composite(r, out);
        return;
    }
    let d = pollard_brent(m);
    split_composite(d, out);
    split_composite(m / d, out);
}

#[inline]
fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    // Double-and-add keeps everything below 2m < 2^128 only when m < 2^127.
    debug_assert!(m < 1 << 127);
    let (mut a, mut b, mut acc) = (a % m, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

pub(crate) fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller-Rabin with fixed bases; deterministic below 3.3 * 10^24 and
/// probabilistic (error < 4^-20) above.
pub fn is_probable_prime(n: u128) -> bool {
    const BASES: [u128; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho. The polynomial constants run through a
/// fixed sequence so repeated runs split numbers identically.
fn pollard_brent(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    const BATCH: u32 = 128;
    for c in 1..u128::MAX {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (0u128, 2u128, 0u128);
        let (mut q, mut g, mut r) = (1u128, 1u128, 1u32);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += BATCH;
            }
            r <<= 1;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho exhausted its constants")
}

/// Positive divisors of `|n|`, ascending.
pub fn divisors(n: i128) -> Result<Vec<i128>> {
    if n == 0 {
        return Err(Error::ZeroInput("divisors"));
    }
    let f = factorize(n)?;
    Ok(divisors_from(&f))
}

pub(crate) fn divisors_from(f: &Factorization) -> Vec<i128> {
    let mut out = vec![1i128];
    for &(p, e) in &f.factors {
        let p = p as i128;
        let len = out.len();
        let mut pk = 1i128;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Splits `n = u * v^2` with `u` squarefree carrying the sign of `n`.
pub fn squarefree_decompose(n: i128) -> Result<(i128, i128)> {
    let f = factorize(n)?;
    let (mut u, mut v) = (f.sign as i128, 1i128);
    for &(p, e) in &f.factors {
        let p = p as i128;
        if e % 2 == 1 {
            u *= p;
        }
        v *= p.pow(e / 2);
    }
    Ok((u, v))
}

/// Splits `n = u * v^3` with `u` cubefree, for `n >= 1`.
pub fn cubefree_decompose(n: i128) -> Result<(i128, i128)> {
    if n <= 0 {
        return Err(Error::InvalidInput(format!(
            "cubefree_decompose needs a positive input, got {n}"
        )));
    }
    let f = factorize(n)?;
    let (mut u, mut v) = (1i128, 1i128);
    for &(p, e) in &f.factors {
        let p = p as i128;
        u *= p.pow(e % 3);
        v *= p.pow(e / 3);
    }
    Ok((u, v))
}

pub fn gcd(a: i128, b: i128) -> i128 {
    gcd_u128(a.unsigned_abs(), b.unsigned_abs()) as i128
}

/// Deterministic primality for small moduli used by the mod-p code.
pub fn is_prime_u64(p: u64) -> bool {
    is_probable_prime(p as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_square_examples() {
        assert_eq!(perfect_square(49), Some(7));
        assert_eq!(perfect_square(-4), None);
        assert_eq!(perfect_square(331776), Some(576));
        assert_eq!(perfect_square(0), Some(0));
        assert_eq!(perfect_square(1), Some(1));
        assert_eq!(perfect_square(2), None);
    }

    #[test]
    fn perfect_square_near_limits() {
        let r: i128 = (1 << 62) + 12345;
        assert_eq!(perfect_square(r * r), Some(r));
        assert_eq!(perfect_square(r * r - 1), None);
        assert_eq!(perfect_square(r * r + 1), None);
        assert_eq!(isqrt(u128::MAX), u64::MAX as u128);
        assert_eq!(isqrt_u64(u64::MAX), u32::MAX as u64);
    }

    #[test]
    fn perfect_square_matches_naive_loop() {
        let mut next = 0i128;
        let mut root = 0i128;
        for n in -1000i128..=1_000_000 {
            let expected = if n == next {
                let r = root;
                root += 1;
                next = root * root;
                Some(r)
            } else {
                None
            };
            assert_eq!(perfect_square(n), expected, "n = {n}");
            assert_eq!(is_square_i64(n as i64), expected.is_some(), "n = {n}");
        }
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(49).unwrap(), vec![1, 7, 49]);
        assert_eq!(divisors(-12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert!(matches!(divisors(0), Err(Error::ZeroInput(_))));
    }

    #[test]
    fn divisors_match_trial_division() {
        for n in 1..=100_000i128 {
            let mut small = Vec::new();
            let mut large = Vec::new();
            let mut d = 1;
            while d * d <= n {
                if n % d == 0 {
                    small.push(d);
                    if d * d != n {
                        large.push(n / d);
                    }
                }
                d += 1;
            }
            small.extend(large.into_iter().rev());
            assert_eq!(divisors(n).unwrap(), small, "n = {n}");
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(
            factorize(360).unwrap(),
            Factorization { sign: 1, factors: vec![(2, 3), (3, 2), (5, 1)] }
        );
        assert_eq!(
            factorize(-97).unwrap(),
            Factorization { sign: -1, factors: vec![(97, 1)] }
        );
        assert_eq!(factorize(1).unwrap(), Factorization { sign: 1, factors: vec![] });
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_needs_rho() {
        // products of primes beyond the trial-division limit
        let p: i128 = 1_000_000_007;
        let q: i128 = 998_244_353;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors, vec![(q as u128, 1), (p as u128, 1)]);
        let f = factorize(p * p * q).unwrap();
        assert_eq!(f.factors, vec![(q as u128, 1), (p as u128, 2)]);
        let big: i128 = 4_611_686_018_427_387_847; // prime just below 2^62
        let f = factorize(big * 3).unwrap();
        assert_eq!(f.factors, vec![(3, 1), (big as u128, 1)]);
        // beyond 64 bits: exercises the slow modular multiply
        let f = factorize(p * q * 1_000_000_009 * 5).unwrap();
        assert_eq!(f.value().unwrap(), p * q * 1_000_000_009 * 5);
        assert_eq!(f.factors.len(), 4);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decompose(48).unwrap(), (3, 4));
        assert_eq!(squarefree_decompose(-50).unwrap(), (-2, 5));
        assert_eq!(squarefree_decompose(7).unwrap(), (7, 1));
        assert!(squarefree_decompose(0).is_err());
    }

    #[test]
    fn cubefree_examples() {
        assert_eq!(cubefree_decompose(54).unwrap(), (2, 3));
        assert_eq!(cubefree_decompose(1).unwrap(), (1, 1));
        assert_eq!(cubefree_decompose(216).unwrap(), (1, 6));
        assert!(cubefree_decompose(0).is_err());
        assert!(cubefree_decompose(-8).is_err());
    }

    #[test]
    fn checked_reports_overflow() {
        let big = ck(i128::MAX);
        assert!((big + 1).get().is_err());
        assert!((big * 2).get().is_err());
        assert_eq!((ck(3) * 4 - 5).get().unwrap(), 7);
        assert!((-ck(i128::MIN)).get().is_err());
    }

    #[test]
    fn primality() {
        let primes: Vec<u128> = (0..200).filter(|&n| is_probable_prime(n)).collect();
        let naive: Vec<u128> =
            (2..200).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect();
        assert_eq!(primes, naive);
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_probable_prime(3_215_031_751));
    }
}
