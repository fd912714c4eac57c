//! Exact checks of the polynomial identities behind the counting arguments,
//! and brute-force integer point searches on the associated curves and
//! surfaces.

use std::ops::{Add, Mul, Sub};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ck, perfect_square, Checked};
use crate::error::{Error, Result};
use crate::galois::{
    disc_cubic, disc_quartic, invariants_cubic, invariants_quartic, resolvent, MonicCubic,
    MonicQuartic,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i128 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// `(x^2 - 4d)(a^2 - 4e) = (xa - 2c)^2`.
pub fn check_symmetry_identity(x: i128, a: i128, c: i128, d: i128, e: i128) -> Result<bool> {
    let (x, a) = (ck(x), ck(a));
    let lhs = (x * x - 4 * ck(d)) * (a * a - 4 * ck(e));
    let rhs = (x * a - 2 * ck(c)).pow(2);
    Ok(lhs.get()? == rhs.get()?)
}

/// Overflow-tracking rational.
#[derive(Clone, Copy, Debug)]
struct Q(Option<Ratio<i128>>);

impl Q {
    fn int(n: i128) -> Self {
        Q(Some(Ratio::from_integer(n)))
    }

    fn frac(n: Checked, d: i128) -> Result<Self> {
        Ok(Q(Some(Ratio::new(n.get()?, d))))
    }

    fn get(self) -> Result<Ratio<i128>> {
        self.0.ok_or(Error::Overflow)
    }
}

macro_rules! q_op {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl $tr for Q {
            type Output = Q;
            fn $f(self, rhs: Q) -> Q {
                Q(self.0.zip(rhs.0).and_then(|(x, y)| x.$checked(&y)))
            }
        }
        impl $tr<i128> for Q {
            type Output = Q;
            fn $f(self, rhs: i128) -> Q {
                self.$f(Q::int(rhs))
            }
        }
        impl $tr<Q> for i128 {
            type Output = Q;
            fn $f(self, rhs: Q) -> Q {
                Q::int(self).$f(rhs)
            }
        }
    };
}
q_op!(Add, add, checked_add);
q_op!(Sub, sub, checked_sub);
q_op!(Mul, mul, checked_mul);

fn disc_quartic_q(a: Q, b: Q, c: Q, d: Q) -> Q {
    256 * d * d * d - 192 * a * c * d * d - 128 * b * b * d * d + 144 * b * c * c * d
        - 27 * c * c * c * c
        + 144 * a * a * b * d * d
        - 6 * a * a * c * c * d
        - 80 * a * b * b * c * d
        + 18 * a * b * c * c * c
        + 16 * b * b * b * b * d
        - 4 * b * b * b * c * c
        - 27 * a * a * a * a * d * d
        + 18 * a * a * a * b * c * d
        - 4 * a * a * a * c * c * c
        - 4 * a * a * b * b * b * d
        + a * a * b * b * c * c
}

/// Both sides of the star identity after the substitution
/// `d = (x^2 - uv^2)/4`, `b = x + (a^2 - uw^2)/4`, `c = (xa ± uvw)/2`:
/// `64 disc = u^2 (2v^2 ± avw + w^2 x)^2 (a^4 - 64uv^2 ∓ 32auvw - 2a^2uw^2 + u^2w^4 - 16a^2x - 16uw^2x + 64x^2)`.
/// Both are scaled by `4^4`, which makes them integers.
pub fn star_identity_sides(u: i128, v: i128, w: i128, x: i128, a: i128, sign: Sign) -> Result<(i128, i128)> {
    let s = sign.value();
    let (cu, cv, cw, cx, ca) = (ck(u), ck(v), ck(w), ck(x), ck(a));
    let d = Q::frac(cx * cx - cu * cv * cv, 4)?;
    let b = Q::int(x) + Q::frac(ca * ca - cu * cw * cw, 4)?;
    let c = Q::frac(cx * ca + s * cu * cv * cw, 2)?;
    let lhs = (256 * 64 * disc_quartic_q(Q::int(a), b, c, d)).get()?;
    let factor = (2 * cv * cv + s * ca * cv * cw + cw * cw * cx).pow(2);
    let rest = ca.pow(4) - 64 * cu * cv * cv - s * 32 * ca * cu * cv * cw - 2 * ca * ca * cu * cw * cw
        + cu * cu * cw.pow(4)
        - 16 * ca * ca * cx
        - 16 * cu * cw * cw * cx
        + 64 * cx * cx;
    let rhs = (256 * cu * cu * factor * rest).get()?;
    if !lhs.is_integer() {
        return Err(Error::Precondition("scaled discriminant is not integral".into()));
    }
    Ok((lhs.to_integer(), rhs))
}

pub fn check_star_identity(u: i128, v: i128, w: i128, x: i128, a: i128, sign: Sign) -> Result<bool> {
    let (lhs, rhs) = star_identity_sides(u, v, w, x, a, sign)?;
    Ok(lhs == rhs)
}

/// `(8x - (a^2 + uw^2))^2 - (4a^2uw^2 + 64uv^2 ± 32auvw) = y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub u: i128,
    pub v: i128,
    pub w: i128,
    pub a: i128,
    pub sign: Sign,
}

impl CurveSpec {
    pub fn new(u: i128, v: i128, w: i128, a: i128, sign: Sign) -> Self {
        CurveSpec { u, v, w, a, sign }
    }

    fn shift(&self) -> Checked {
        ck(self.a) * self.a + ck(self.u) * self.w * self.w
    }

    /// `4a^2uw^2 + 64uv^2 ± 32auvw`, which equals `4u(aw ± 4v)^2`.
    fn constant(&self) -> Checked {
        let (u, v, w, a) = (ck(self.u), ck(self.v), ck(self.w), ck(self.a));
        4 * a * a * u * w * w + 64 * u * v * v + self.sign.value() * 32 * a * u * v * w
    }

    /// The left-hand side at `x`; `(x, y)` is on the curve iff it equals `y^2`.
    pub fn lhs(&self, x: i128) -> Result<i128> {
        ((8 * ck(x) - self.shift()).pow(2) - self.constant()).get()
    }
}

/// Largest box half-width accepted by the point scans.
pub const MAX_SCAN: i128 = 10_000_000;

/// Integer points with `|x| <= xmax`, `|y| <= ymax`, sorted by `(x, y)`.
pub fn curve_points(spec: &CurveSpec, xmax: i128, ymax: i128) -> Result<Vec<(i128, i128)>> {
    if !(0..=MAX_SCAN).contains(&xmax) || !(0..=MAX_SCAN).contains(&ymax) {
        return Err(Error::InvalidInput(format!("box {xmax}/{ymax} outside [0, {MAX_SCAN}]")));
    }
    let rows: Vec<Result<Vec<(i128, i128)>>> = (-xmax..=xmax)
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            if let Some(y) = perfect_square(spec.lhs(x)?) {
                if y <= ymax {
                    out.push((x, -y));
                    if y != 0 {
                        out.push((x, y));
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut points = Vec::new();
    for r in rows {
        points.extend(r?);
    }
    Ok(points)
}

/// The curve splits into two lines exactly when `4u(aw ± 4v)^2 = 0`.
pub fn curve_is_reducible(spec: &CurveSpec) -> bool {
    match spec.constant().get() {
        Ok(k) => k == 0,
        Err(_) => false,
    }
}

/// `u((8x - (a^2 + uw^2))^2 - 4u(aw ± 4v)^2) = y^2`.
pub fn c4_curve_check(spec: &CurveSpec, x: i128, y: i128) -> Result<bool> {
    let (u, v, w, a) = (ck(spec.u), ck(spec.v), ck(spec.w), ck(spec.a));
    let inner = (8 * ck(x) - spec.shift()).pow(2) - 4 * u * (a * w + spec.sign.value() * 4 * v).pow(2);
    Ok((u * inner).get()? == (ck(y) * y).get()?)
}

/// The level set of quartics with fixed invariants `(I, J)`, after
/// eliminating `b`: `g(a, c, d) = c3 d^3 + c2 d^2 + c1 d + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    #[serde(rename = "I")]
    pub i: i128,
    #[serde(rename = "J")]
    pub j: i128,
}

impl SurfaceSpec {
    pub fn new(i: i128, j: i128) -> Result<Self> {
        if (4 * ck(i).pow(3)).get()? == (ck(j) * j).get()? {
            return Err(Error::DegenerateInvariants { i, j });
        }
        Ok(SurfaceSpec { i, j })
    }

    /// `[c0, c1, c2, c3]` at `(a, c)`.
    pub fn coefficients(&self, a: i128, c: i128) -> Result<[i128; 4]> {
        let (i, j, a, c) = (ck(self.i), ck(self.j), ck(a), ck(c));
        let c3 = ck(-110_592);
        let c2 = -729 * a.pow(4) + 20736 * a * c + 13824 * i;
        let c1 = 162 * a * a * c * c - 54 * a * a * j - 432 * a * c * i - 432 * i * i;
        let c0 = 27 * a.pow(3) * c.pow(3) - 729 * c.pow(4) - 54 * c * c * j - j * j
            - 27 * a * a * c * c * i
            + 4 * i.pow(3);
        Ok([c0.get()?, c1.get()?, c2.get()?, c3.get()?])
    }
}

pub fn surface_eval(spec: &SurfaceSpec, a: i128, c: i128, d: i128) -> Result<i128> {
    let [c0, c1, c2, c3] = spec.coefficients(a, c)?;
    (((ck(c3) * d + c2) * d + c1) * d + c0).get()
}

/// `g` in the product form `(I - 12d + 3ac)(96d + 3ac - 2I)^2 - (J + 27c^2 + 27a^2 d)^2`.
/// Equal to [`surface_eval`] as a polynomial.
pub fn surface_eval_factored(spec: &SurfaceSpec, a: i128, c: i128, d: i128) -> Result<i128> {
    let (i, j, a, c, d) = (ck(spec.i), ck(spec.j), ck(a), ck(c), ck(d));
    let first = i - 12 * d + 3 * a * c;
    let second = 96 * d + 3 * a * c - 2 * i;
    let third = j + 27 * c * c + 27 * a * a * d;
    (first * second.pow(2) - third.pow(2)).get()
}

/// Zeros of `g` in `[-B, B]^3`, sorted. Each `(a, c)` has at most three.
pub fn surface_points(spec: &SurfaceSpec, bound: i128) -> Result<Vec<(i128, i128, i128)>> {
    if !(0..=100_000).contains(&bound) {
        return Err(Error::InvalidInput(format!("bound {bound} outside [0, 100000]")));
    }
    let rows: Vec<Result<Vec<(i128, i128, i128)>>> = (-bound..=bound)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for c in -bound..=bound {
                let [c0, c1, c2, c3] = spec.coefficients(a, c)?;
                let mut found = 0;
                for d in -bound..=bound {
                    if (((ck(c3) * d + c2) * d + c1) * d + c0).get()? == 0 {
                        out.push((a, c, d));
                        found += 1;
                        if found == 3 {
                            break;
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut points = Vec::new();
    for r in rows {
        points.extend(r?);
    }
    Ok(points)
}

/// General cubic discriminant `B^2C^2 - 4AC^3 - 4B^3D - 27A^2D^2 + 18ABCD`.
fn disc_general_cubic(a: i128, b: i128, c: i128, d: i128) -> Result<i128> {
    let (a, b, c, d) = (ck(a), ck(b), ck(c), ck(d));
    (b * b * c * c - 4 * a * c.pow(3) - 4 * b.pow(3) * d - 27 * a * a * d * d + 18 * a * b * c * d).get()
}

/// `disc(rX^3 + 3qX^2 - 9rX - 3q) = (18(q^2 + 3r^2))^2`.
pub fn disc_f_sides(q: i128, r: i128) -> Result<(i128, i128)> {
    if r == 0 {
        return Err(Error::InvalidInput("r = 0: the form is not cubic".into()));
    }
    let lhs = disc_general_cubic(r, (ck(q) * 3).get()?, (ck(r) * -9).get()?, (ck(q) * -3).get()?)?;
    let rhs = (18 * (ck(q) * q + 3 * ck(r) * r)).pow(2).get()?;
    Ok((lhs, rhs))
}

#[allow(non_snake_case)]
pub fn disc_F_identity(q: i128, r: i128) -> Result<bool> {
    let (lhs, rhs) = disc_f_sides(q, r)?;
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_name: String,
    pub window: String,
    pub cases_checked: u64,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn collect(name: &str, window: String, cases: Vec<(u64, Vec<String>)>) -> VerificationReport {
    let mut report = VerificationReport {
        identity_name: name.into(),
        window,
        cases_checked: 0,
        failures: Vec::new(),
    };
    for (n, f) in cases {
        report.cases_checked += n;
        report.failures.extend(f);
    }
    report
}

fn record(fails: &mut Vec<String>, ok: Result<bool>, case: impl FnOnce() -> String) {
    match ok {
        Ok(true) => {}
        Ok(false) => fails.push(case()),
        Err(e) => fails.push(format!("{}: {e}", case())),
    }
}

/// `27 disc = 4I^3 - J^2` for every cubic of height `<= cubic_h` and every
/// quartic of height `<= quartic_h`.
pub fn verify_invariants(cubic_h: i128, quartic_h: i128) -> VerificationReport {
    let cubic = (-cubic_h..=cubic_h).into_par_iter().map(|a| {
        let mut fails = Vec::new();
        let mut n = 0;
        for b in -cubic_h..=cubic_h {
            for c in -cubic_h..=cubic_h {
                let f = MonicCubic::new(a, b, c);
                n += 1;
                let ok = (|| Ok(invariants_cubic(&f)?.discriminant()? == Some(disc_cubic(&f)?)))();
                record(&mut fails, ok, || format!("{f}"));
            }
        }
        (n, fails)
    });
    let quartic = (-quartic_h..=quartic_h).into_par_iter().map(|a| {
        let mut fails = Vec::new();
        let mut n = 0;
        for b in -quartic_h..=quartic_h {
            for c in -quartic_h..=quartic_h {
                for d in -quartic_h..=quartic_h {
                    let f = MonicQuartic::new(a, b, c, d);
                    n += 1;
                    let ok = (|| Ok(invariants_quartic(&f)?.discriminant()? == Some(disc_quartic(&f)?)))();
                    record(&mut fails, ok, || format!("{f}"));
                }
            }
        }
        (n, fails)
    });
    let mut cases: Vec<_> = cubic.collect();
    cases.extend(quartic.collect::<Vec<_>>());
    collect("invariants", format!("cubic height <= {cubic_h}, quartic height <= {quartic_h}"), cases)
}

/// The symmetry identity at every integer root `x` of the resolvent of every
/// quartic of height `<= h`, with `e = b - x`.
pub fn verify_symmetry(h: i128) -> VerificationReport {
    let cases = (-h..=h)
        .into_par_iter()
        .map(|a| {
            let mut fails = Vec::new();
            let mut n = 0;
            for b in -h..=h {
                for c in -h..=h {
                    for d in -h..=h {
                        let f = MonicQuartic::new(a, b, c, d);
                        let roots = match resolvent(&f).and_then(|r| integer_roots(&r)) {
                            Ok(r) => r,
                            Err(e) => {
                                fails.push(format!("{f}: {e}"));
                                continue;
                            }
                        };
                        for x in roots {
                            n += 1;
                            record(&mut fails, check_symmetry_identity(x, a, c, d, b - x), || {
                                format!("{f} at x = {x}")
                            });
                        }
                    }
                }
            }
            (n, fails)
        })
        .collect();
    collect("symmetry", format!("quartic height <= {h}"), cases)
}

/// All integer roots of a monic cubic, with multiplicity ignored.
fn integer_roots(f: &MonicCubic) -> Result<Vec<i128>> {
    let mut out = Vec::new();
    if f.c == 0 {
        out.push(0);
    } else {
        for t in crate::arith::divisors(f.c)? {
            for x in [t, -t] {
                if f.eval(x)? == 0 {
                    out.push(x);
                }
            }
        }
        return Ok(out);
    }
    // c = 0: the remaining roots solve X^2 + aX + b
    let disc = (ck(f.a) * f.a - 4 * ck(f.b)).get()?;
    if let Some(s) = perfect_square(disc) {
        for num in [-f.a - s, -f.a + s] {
            if num % 2 == 0 && !out.contains(&(num / 2)) {
                out.push(num / 2);
            }
        }
    }
    Ok(out)
}

/// The star identity on the full window `[-w, w]^5`, both signs, plus `extra`
/// random cases with entries up to 60 drawn from `seed`.
pub fn verify_star(w: i128, extra: usize, seed: u64) -> VerificationReport {
    let mut cases: Vec<(u64, Vec<String>)> = (-w..=w)
        .into_par_iter()
        .map(|u| {
            let mut fails = Vec::new();
            let mut n = 0;
            for v in -w..=w {
                for ww in -w..=w {
                    for x in -w..=w {
                        for a in -w..=w {
                            for sign in Sign::BOTH {
                                n += 1;
                                record(&mut fails, check_star_identity(u, v, ww, x, a, sign), || {
                                    format!("(u,v,w,x,a) = ({u},{v},{ww},{x},{a}) sign {sign:?}")
                                });
                            }
                        }
                    }
                }
            }
            (n, fails)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = Vec::new();
    for _ in 0..extra {
        let mut draw = || rng.gen_range(-60i128..=60);
        let (u, v, ww, x, a) = (draw(), draw(), draw(), draw(), draw());
        let u = if u == 0 { 1 } else { u };
        let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
        record(&mut fails, check_star_identity(u, v, ww, x, a, sign), || {
            format!("(u,v,w,x,a) = ({u},{v},{ww},{x},{a}) sign {sign:?}")
        });
    }
    cases.push((extra as u64, fails));
    let window = format!("[-{w},{w}]^5, both signs; {extra} random cases (seed {seed})");
    collect("star", window, cases)
}

/// The `disc F` identity on `[-w, w]^2` with `r != 0`.
pub fn verify_disc_f(w: i128) -> VerificationReport {
    let cases = (-w..=w)
        .into_par_iter()
        .map(|q| {
            let mut fails = Vec::new();
            let mut n = 0;
            for r in (-w..=w).filter(|&r| r != 0) {
                n += 1;
                record(&mut fails, disc_F_identity(q, r), || format!("(q,r) = ({q},{r})"));
            }
            (n, fails)
        })
        .collect();
    collect("discF", format!("[-{w},{w}]^2, r != 0"), cases)
}

/// `g(a, c, d) = 0` with `(I, J)` taken from the quartic itself, for every
/// quartic of height `<= h` with `4I^3 != J^2`; both forms of `g` are checked.
pub fn verify_surface(h: i128) -> VerificationReport {
    let cases = (-h..=h)
        .into_par_iter()
        .map(|a| {
            let mut fails = Vec::new();
            let mut n = 0;
            for b in -h..=h {
                for c in -h..=h {
                    for d in -h..=h {
                        let f = MonicQuartic::new(a, b, c, d);
                        let ok = (|| {
                            let inv = invariants_quartic(&f)?;
                            let spec = match SurfaceSpec::new(inv.i, inv.j) {
                                Ok(s) => s,
                                Err(Error::DegenerateInvariants { .. }) => return Ok(None),
                                Err(e) => return Err(e),
                            };
                            Ok(Some(
                                surface_eval(&spec, a, c, d)? == 0
                                    && surface_eval_factored(&spec, a, c, d)? == 0,
                            ))
                        })();
                        match ok {
                            Ok(None) => {}
                            Ok(Some(v)) => {
                                n += 1;
                                record(&mut fails, Ok(v), || format!("{f}"));
                            }
                            Err(e) => fails.push(format!("{f}: {e}")),
                        }
                    }
                }
            }
            (n, fails)
        })
        .collect();
    collect("surface", format!("quartic height <= {h}, 4I^3 != J^2"), cases)
}
