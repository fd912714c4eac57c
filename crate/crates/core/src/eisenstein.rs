//! Arithmetic in the Eisenstein integers `Z[ζ]`, `ζ = (-1 + √-3)/2`, and the
//! parametrization of cyclic cubics through `J^2 + 3Y^2 = 4I^3`.
//!
//! `m + nζ` has half-coordinates `q = 2m - n`, `r = n`, so that
//! `m + nζ = (q + r√-3)/2` with `q ≡ r (mod 2)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, ck, cubefree_decompose, factorize, gcd, perfect_square};
use crate::error::{Error, Result};
use crate::galois::{classify_cubic, disc_cubic, invariants_cubic, CubicClass, MonicCubic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EisInt {
    pub m: i128,
    pub n: i128,
}

/// The six units, closed under multiplication by `1 + ζ` (a primitive sixth root of unity).
const UNITS: [EisInt; 6] = [
    EisInt::new(1, 0),
    EisInt::new(1, 1),
    EisInt::new(0, 1),
    EisInt::new(-1, 0),
    EisInt::new(-1, -1),
    EisInt::new(0, -1),
];

impl EisInt {
    pub const ZERO: EisInt = EisInt::new(0, 0);
    pub const ONE: EisInt = EisInt::new(1, 0);
    pub const ZETA: EisInt = EisInt::new(0, 1);

    pub const fn new(m: i128, n: i128) -> Self {
        EisInt { m, n }
    }

    pub const fn from_int(k: i128) -> Self {
        EisInt { m: k, n: 0 }
    }

    /// `(q + r√-3)/2`; fails unless `q ≡ r (mod 2)`.
    pub fn from_half(q: i128, r: i128) -> Result<Self> {
        if (q - r).rem_euclid(2) != 0 {
            return Err(Error::InvalidInput(format!("half-coordinates ({q}, {r}) differ in parity")));
        }
        // m = (q + r)/2, n = r
        Ok(EisInt { m: (ck(q) + r).get()? / 2, n: r })
    }

    /// `x + y√-3 = (x + y) + 2yζ`.
    pub fn from_sqrt3(x: i128, y: i128) -> Result<Self> {
        Ok(EisInt { m: (ck(x) + y).get()?, n: (ck(y) * 2).get()? })
    }

    /// `(q, r)` with `self = (q + r√-3)/2`.
    pub fn half(self) -> Result<(i128, i128)> {
        Ok(((ck(self.m) * 2 - self.n).get()?, self.n))
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_unit(self) -> bool {
        UNITS.contains(&self)
    }

    /// Complex conjugate: `ζ̄ = -1 - ζ`.
    pub fn conj(self) -> Result<Self> {
        Ok(EisInt { m: (ck(self.m) - self.n).get()?, n: (-ck(self.n)).get()? })
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(EisInt { m: (-ck(self.m)).get()?, n: (-ck(self.n)).get()? })
    }

    pub fn pow(self, e: u32) -> Result<Self> {
        let mut acc = Self::ONE;
        for _ in 0..e {
            acc = eis_mul(acc, self)?;
        }
        Ok(acc)
    }

    /// The associate with `m > 0` and `0 <= n < m`: the half-open sector of
    /// arguments `[0°, 60°)` holds exactly one associate of every nonzero element.
    pub fn canonical(self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self);
        }
        for u in UNITS {
            let z = eis_mul(self, u)?;
            if z.m > 0 && 0 <= z.n && z.n < z.m {
                return Ok(z);
            }
        }
        unreachable!("every nonzero element has an associate in the sector")
    }

    /// `self / other` when the division is exact in `Z[ζ]`.
    pub fn exact_div(self, other: EisInt) -> Result<Option<Self>> {
        let nb = eis_norm(other)?;
        if nb == 0 {
            return Err(Error::ZeroInput("Eisenstein divisor"));
        }
        let num = eis_mul(self, other.conj()?)?;
        if num.m % nb != 0 || num.n % nb != 0 {
            return Ok(None);
        }
        Ok(Some(EisInt { m: num.m / nb, n: num.n / nb }))
    }

    /// Euclidean remainder: `self - k * other` with `k` the coordinate-wise
    /// rounding of `self / other`, so `N(rem) <= 3/4 N(other)`.
    fn rem_euclid(self, other: EisInt) -> Result<Self> {
        let nb = eis_norm(other)?;
        let num = eis_mul(self, other.conj()?)?;
        let round = |x: i128| -> Result<i128> { Ok((ck(x) * 2 + nb).get()?.div_euclid(2 * nb)) };
        let k = EisInt { m: round(num.m)?, n: round(num.n)? };
        let prod = eis_mul(k, other)?;
        Ok(EisInt { m: (ck(self.m) - prod.m).get()?, n: (ck(self.n) - prod.n).get()? })
    }
}

impl fmt::Display for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.n) {
            (m, 0) => write!(f, "{m}"),
            (0, n) => write!(f, "{n}ζ"),
            (m, n) if n < 0 => write!(f, "{m} - {}ζ", -n),
            (m, n) => write!(f, "{m} + {n}ζ"),
        }
    }
}

/// Product, with `ζ^2 = -1 - ζ`.
pub fn eis_mul(x: EisInt, y: EisInt) -> Result<EisInt> {
    let (a, b, c, d) = (ck(x.m), ck(x.n), ck(y.m), ck(y.n));
    let bd = b * d;
    Ok(EisInt { m: (a * c - bd).get()?, n: (a * d + b * c - bd).get()? })
}

/// `m^2 - mn + n^2`.
pub fn eis_norm(z: EisInt) -> Result<i128> {
    let (m, n) = (ck(z.m), ck(z.n));
    (m * m - m * n + n * n).get()
}

/// Greatest common divisor, as its canonical associate.
pub fn eis_gcd(a: EisInt, b: EisInt) -> Result<EisInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("eis_gcd"));
    }
    let (mut x, mut y) = (a, b);
    while !y.is_zero() {
        let r = x.rem_euclid(y)?;
        x = y;
        y = r;
    }
    x.canonical()
}

/// `unit * Π prime^exponent`, primes canonical and sorted by `(norm, m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisFactorization {
    pub unit: EisInt,
    pub factors: Vec<(EisInt, u32)>,
}

impl EisFactorization {
    pub fn product(&self) -> Result<EisInt> {
        let mut acc = self.unit;
        for &(p, e) in &self.factors {
            acc = eis_mul(acc, p.pow(e)?)?;
        }
        Ok(acc)
    }
}

/// A prime of norm `p` for a rational prime `p ≡ 1 (mod 3)`: the kernel of
/// `ζ ↦ ω` for a primitive cube root of unity `ω` mod `p` is the ideal
/// `(p, ζ - ω)`.
fn split_prime(p: u128) -> Result<EisInt> {
    let e = (p - 1) / 3;
    let omega = (2u128..)
        .map(|x| arith::pow_mod(x, e, p))
        .find(|&w| w != 1)
        .expect("a non-cube exists mod p");
    let omega = i128::try_from(omega).map_err(|_| Error::Overflow)?;
    let pi = eis_gcd(EisInt::from_int(p as i128), EisInt::new(-omega, 1))?;
    debug_assert_eq!(eis_norm(pi)?, p as i128);
    Ok(pi)
}

pub fn eis_factor(z: EisInt) -> Result<EisFactorization> {
    if z.is_zero() {
        return Err(Error::ZeroInput("eis_factor"));
    }
    let mut rest = z;
    let mut factors = Vec::new();
    let mut strip = |pi: EisInt, rest: &mut EisInt| -> Result<()> {
        let mut e = 0;
        while let Some(q) = rest.exact_div(pi)? {
            *rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((pi, e));
        }
        Ok(())
    };
    for (p, _) in factorize(eis_norm(z)?)?.factors {
        match p % 3 {
            0 => strip(EisInt::new(1, -1).canonical()?, &mut rest)?,
            2 => strip(EisInt::from_int(p as i128), &mut rest)?,
            _ => {
                let pi = split_prime(p)?;
                let pi_bar = pi.conj()?.canonical()?;
                strip(pi, &mut rest)?;
                strip(pi_bar, &mut rest)?;
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by_key(|&(p, _)| (eis_norm(p).unwrap_or(i128::MAX), p.m, p.n));
    Ok(EisFactorization { unit: rest, factors })
}

/// Splits `z = d * α^3` with `d` cubefree. `α` is the canonical associate of
/// `Π π^{⌊e/3⌋}`; any unit lands in `d`.
pub fn eis_cubefree_decompose(z: EisInt) -> Result<(EisInt, EisInt)> {
    let f = eis_factor(z)?;
    let mut alpha = EisInt::ONE;
    for &(p, e) in &f.factors {
        alpha = eis_mul(alpha, p.pow(e / 3)?)?;
    }
    let alpha = alpha.canonical()?;
    let d = z.exact_div(alpha.pow(3)?)?.expect("α^3 divides z by construction");
    Ok((d, alpha))
}

pub fn is_cubefree(z: EisInt) -> Result<bool> {
    Ok(eis_factor(z)?.factors.iter().all(|&(_, e)| e < 3))
}

/// `(16x, 16y)` where `x + y√-3 = d α^3`, `d = (q + r√-3)/2`, `α = (s + t√-3)/2`.
pub fn param_xy(q: i128, r: i128, s: i128, t: i128) -> Result<(i128, i128)> {
    if (q - r).rem_euclid(2) != 0 || (s - t).rem_euclid(2) != 0 {
        return Err(Error::InvalidInput(format!(
            "parity: need q ≡ r and s ≡ t (mod 2), got ({q}, {r}, {s}, {t})"
        )));
    }
    let (q, r, s, t) = (ck(q), ck(r), ck(s), ck(t));
    let cubic_re = s.pow(3) - 9 * s * t * t;
    let x16 = q * cubic_re + 9 * r * (t.pow(3) - s * s * t);
    let y16 = 3 * q * (s * s * t - t.pow(3)) + r * cubic_re;
    Ok((x16.get()?, y16.get()?))
}

/// Which of `x ± y√-3` was split as `d α^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Conjugate {
    Plus,
    Minus,
}

/// The full parametrization chain for one cyclic cubic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamWitness {
    pub cubic: MonicCubic,
    #[serde(rename = "I")]
    pub i: i128,
    #[serde(rename = "J")]
    pub j: i128,
    /// `3 * sqrt(disc)`.
    #[serde(rename = "Y")]
    pub big_y: i128,
    pub disc: i128,
    pub g: i128,
    pub u: i128,
    pub v: i128,
    pub x: i128,
    pub y: i128,
    pub z: i128,
    pub d: EisInt,
    pub alpha: EisInt,
    pub q: i128,
    pub r: i128,
    pub s: i128,
    pub t: i128,
    pub conjugate: Conjugate,
}

impl ParamWitness {
    /// Re-derives every relation of the chain; returns the first that fails.
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Precondition(format!("witness for {}: {what}", self.cubic)));
        let inv = invariants_cubic(&self.cubic)?;
        if (inv.i, inv.j) != (self.i, self.j) || disc_cubic(&self.cubic)? != self.disc {
            return fail("invariants");
        }
        if self.big_y <= 0 || (ck(self.big_y) * self.big_y).get()? != (ck(self.disc) * 9).get()? {
            return fail("Y^2 = 9 disc");
        }
        if (ck(self.j) * self.j + 3 * ck(self.big_y) * self.big_y).get()? != (4 * ck(self.i).pow(3)).get()? {
            return fail("J^2 + 3Y^2 = 4I^3");
        }
        if self.g != gcd(self.j, self.big_y) || self.u <= 0 || self.v <= 0 {
            return fail("g = gcd(J, Y)");
        }
        if (ck(self.u) * ck(self.v).pow(3)).get()? != self.g || cubefree_decompose(self.u)?.1 != 1 {
            return fail("g = u v^3, u cubefree");
        }
        let g_tilde = (ck(self.u) * self.v * self.v).get()?;
        if (ck(self.g) * self.x).get()? != self.j
            || (ck(self.g) * self.y).get()? != self.big_y
            || (ck(g_tilde) * self.z).get()? != (ck(self.i) * 2).get()?
        {
            return fail("J = g x, Y = g y, 2I = u v^2 z");
        }
        if gcd(self.x, self.y) != 1 {
            return fail("gcd(x, y) = 1");
        }
        let norm = (ck(self.x) * self.x + 3 * ck(self.y) * self.y).get()?;
        if (ck(norm) * 2).get()? != (ck(self.u) * ck(self.z).pow(3)).get()? {
            return fail("2(x^2 + 3y^2) = u z^3");
        }
        let sign = if self.conjugate == Conjugate::Plus { 1 } else { -1 };
        let target = EisInt::from_sqrt3(self.x, sign * self.y)?;
        if eis_mul(self.d, self.alpha.pow(3)?)? != target || !is_cubefree(self.d)? {
            return fail("x + y√-3 = d α^3, d cubefree");
        }
        if self.d.half()? != (self.q, self.r) || self.alpha.half()? != (self.s, self.t) {
            return fail("half-coordinates");
        }
        let (x16, y16) = param_xy(self.q, self.r, self.s, self.t)?;
        if (x16, sign * y16) != ((ck(self.x) * 16).get()?, (ck(self.y) * 16).get()?) {
            return fail("16x, 16y from (q, r, s, t)");
        }
        let lhs = ck(self.u) * (ck(self.z) * 8).pow(3);
        let rhs = 4 * (ck(self.q) * self.q + 3 * ck(self.r) * self.r)
            * (ck(self.s) * self.s + 3 * ck(self.t) * self.t).pow(3);
        if lhs.get()? != rhs.get()? {
            return fail("u (8z)^3 = 4(q^2 + 3r^2)(s^2 + 3t^2)^3");
        }
        Ok(())
    }
}

/// Runs the parametrization chain for a cyclic cubic and checks the result.
///
/// `x + y√-3` and `x - y√-3` have cubefree parts of equal norm, so the
/// smaller-norm rule always ties and the `+` conjugate is taken.
pub fn parametrize_cubic_witness(f: &MonicCubic) -> Result<ParamWitness> {
    if classify_cubic(f)? != CubicClass::A3 {
        return Err(Error::Precondition(format!("{f} is not cyclic")));
    }
    let inv = invariants_cubic(f)?;
    let disc = disc_cubic(f)?;
    let root = perfect_square(disc).expect("cyclic cubics have square discriminant");
    let big_y = (ck(root) * 3).get()?;
    let g = gcd(inv.j, big_y);
    let (u, v) = cubefree_decompose(g)?;
    let g_tilde = (ck(u) * v * v).get()?;
    let two_i = (ck(inv.i) * 2).get()?;
    if two_i % g_tilde != 0 {
        return Err(Error::Precondition(format!("{f}: u v^2 does not divide 2I")));
    }
    let (x, y, z) = (inv.j / g, big_y / g, two_i / g_tilde);
    let (d, alpha) = eis_cubefree_decompose(EisInt::from_sqrt3(x, y)?)?;
    let (q, r) = d.half()?;
    let (s, t) = alpha.half()?;
    let w = ParamWitness {
        cubic: *f,
        i: inv.i,
        j: inv.j,
        big_y,
        disc,
        g,
        u,
        v,
        x,
        y,
        z,
        d,
        alpha,
        q,
        r,
        s,
        t,
        conjugate: Conjugate::Plus,
    };
    w.check()?;
    Ok(w)
}

/// `(J, Y, I) = (2s^3 - 18st^2, 6t(s - t)(s + t), s^2 + 3t^2)`.
pub fn surface_family_point(s: i128, t: i128) -> Result<(i128, i128, i128)> {
    let (s, t) = (ck(s), ck(t));
    Ok((
        (2 * s.pow(3) - 18 * s * t * t).get()?,
        (6 * t * (s - t) * (s + t)).get()?,
        (s * s + 3 * t * t).get()?,
    ))
}
