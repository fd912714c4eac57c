//! The direct census kernels.
//!
//! For a fixed leading pair `(a, b)` every reducible polynomial and every
//! resolvent root is found by solving for the remaining coefficients rather
//! than by testing each polynomial, so the per-polynomial work left is one
//! discriminant evaluation and a square test. All arithmetic is `i64`; the
//! height limits below keep every intermediate in range.

use super::StripeCounts;
use crate::arith::{is_square_i64, isqrt_u64};
use crate::error::Result;
use crate::galois::{
    classify_cubic, classify_quartic, product_is_square, GaloisClass, MonicCubic, MonicQuartic,
};

/// Largest height the `i64` cubic kernel handles (`|disc| < 30 H^4`).
pub const CUBIC_KERNEL_MAX_HEIGHT: u32 = 20_000;
/// Largest height the `i64` quartic kernel handles (`|disc| <= 1069 H^6`).
pub const QUARTIC_KERNEL_MAX_HEIGHT: u32 = 400;

pub(super) fn stripe(degree: u32, a: i64, h: i64) -> Result<StripeCounts> {
    match degree {
        3 if h <= CUBIC_KERNEL_MAX_HEIGHT as i64 => Ok(cubic_stripe(a, h)),
        4 if h <= QUARTIC_KERNEL_MAX_HEIGHT as i64 => Ok(quartic_stripe(a, h)),
        _ => generic_stripe(degree, a, h),
    }
}

/// Per-polynomial classification in `i128`, for heights beyond the kernels.
fn generic_stripe(degree: u32, a: i64, h: i64) -> Result<StripeCounts> {
    let classes = GaloisClass::for_degree(degree)?;
    let slot = |c: GaloisClass| classes.iter().position(|&k| k == c).expect("class for degree");
    let mut counts = [0u64; 6];
    let a = a as i128;
    let h = h as i128;
    for b in -h..=h {
        for c in -h..=h {
            if degree == 3 {
                counts[slot(classify_cubic(&MonicCubic::new(a, b, c))?.into())] += 1;
            } else {
                for d in -h..=h {
                    counts[slot(classify_quartic(&MonicQuartic::new(a, b, c, d))?.into())] += 1;
                }
            }
        }
    }
    Ok(counts)
}

fn ceil_sqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let r = isqrt_u64(n as u64) as i64;
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Visits every integer `r != 0` with `|r^2 + a r + b| <= bound`.
fn for_each_near_root(a: i64, b: i64, bound: i64, mut f: impl FnMut(i64)) {
    // r^2 + a r + b = ((2r + a)^2 - (a^2 - 4b)) / 4, so the condition is
    // a^2 - 4b - 4 bound <= (2r + a)^2 <= a^2 - 4b + 4 bound.
    let upper = a * a - 4 * b + 4 * bound;
    if upper < 0 {
        return;
    }
    let hi = isqrt_u64(upper as u64) as i64;
    let lo = ceil_sqrt(a * a - 4 * b - 4 * bound);
    for t in lo..=hi {
        for t in [t, -t] {
            if (t - a) % 2 == 0 {
                let r = (t - a) / 2;
                if r != 0 {
                    f(r);
                }
            }
            if t == 0 {
                break;
            }
        }
    }
}

/// Counts `[Reducible, S3, A3]` over all `X^3 + aX^2 + bX + c` with
/// `|b|, |c| <= h`.
fn cubic_stripe(a: i64, h: i64) -> StripeCounts {
    let width = (2 * h + 1) as u64;
    let (mut reducible, mut a3) = (0u64, 0u64);
    let mut roots_c: Vec<i64> = Vec::with_capacity(64);
    for b in -h..=h {
        // c = -r (r^2 + a r + b) for each integer root r; r = 0 gives c = 0.
        roots_c.clear();
        roots_c.push(0);
        for_each_near_root(a, b, h, |r| {
            let c = -r * (r * r + a * r + b);
            if c.abs() <= h {
                roots_c.push(c);
            }
        });
        roots_c.sort_unstable();
        roots_c.dedup();
        reducible += roots_c.len() as u64;

        // disc(c) = -27 c^2 + lin c + con is positive only between the roots
        // of 27 c^2 - lin c - con.
        let con = a * a * b * b - 4 * b * b * b;
        let lin = 18 * a * b - 4 * a * a * a;
        let q = (lin as i128) * (lin as i128) + 108 * (con as i128);
        if q <= 0 {
            continue;
        }
        let s = crate::arith::isqrt(q as u128) as i128;
        let lo = (((lin as i128 - s).div_euclid(54)) as i64 - 1).max(-h);
        let hi = (((lin as i128 + s).div_euclid(54)) as i64 + 1).min(h);
        for c in lo..=hi {
            let disc = con + c * (lin - 27 * c);
            if disc > 0 && is_square_i64(disc) && roots_c.binary_search(&c).is_err() {
                a3 += 1;
            }
        }
    }
    let s3 = width * width - reducible - a3;
    [reducible, s3, a3, 0, 0, 0]
}

/// Exact bound on integer roots of the cubic resolvent of any quartic of
/// height at most `h`: every root `x` satisfies `|x| <= bound`.
///
/// With `|b| <= h`, `|ac - 4d| <= h^2 + 4h` and `|a^2 d - 4bd + c^2| <= h^3 + 5h^2`,
/// `x^3` dominates the other terms once `t^3 > h t^2 + (h^2 + 4h) t + h^3 + 5h^2`;
/// that cubic in `t` has a single positive root.
pub fn resolvent_root_bound(h: i64) -> i64 {
    let (h, mut t) = (h as i128, 1i128);
    while t * t * t <= h * t * t + (h * h + 4 * h) * t + h * h * h + 5 * h * h {
        t += 1;
    }
    (t - 1) as i64
}

const NO_ROOT: i16 = i16::MIN;

struct Plane {
    h: i64,
    width: usize,
    reducible: Vec<bool>,
    root: Vec<i16>,
}

impl Plane {
    fn new(h: i64) -> Self {
        let width = (2 * h + 1) as usize;
        Plane { h, width, reducible: vec![false; width * width], root: vec![NO_ROOT; width * width] }
    }

    #[inline]
    fn idx(&self, c: i64, d: i64) -> usize {
        (c + self.h) as usize * self.width + (d + self.h) as usize
    }

    fn reset(&mut self) {
        self.reducible.fill(false);
        self.root.fill(NO_ROOT);
    }

    /// Marks every `(c, d)` for which `X^4 + aX^3 + bX^2 + cX + d` factors.
    fn mark_reducible(&mut self, a: i64, b: i64) {
        let h = self.h;
        // root 0
        for c in -h..=h {
            let i = self.idx(c, 0);
            self.reducible[i] = true;
        }
        // nonzero root r divides d, so 1 <= |r| <= h, and
        // d = -r (r^3 + a r^2 + b r + c) needs |r^3 + a r^2 + b r + c| <= h / |r|.
        for r in (-h..=h).filter(|&r| r != 0) {
            let p = r * r * r + a * r * r + b * r;
            let m = h / r.abs();
            let lo = (-p - m).max(-h);
            let hi = (-p + m).min(h);
            for c in lo..=hi {
                let d = -r * (p + c);
                let i = self.idx(c, d);
                self.reducible[i] = true;
            }
        }
        // (X^2 + pX + q)(X^2 + (a - p)X + s) with q s = d != 0. Order the
        // factors so |q| <= |s|, hence |q| <= sqrt(h); |p| <= 2h + 2 because
        // roots have absolute value below h + 1.
        let sq = isqrt_u64(h as u64) as i64;
        for p in -(2 * h + 2)..=(2 * h + 2) {
            let sum = b - p * (a - p); // q + s
            if sum.abs() > h + sq {
                continue;
            }
            for q in (-sq..=sq).filter(|&q| q != 0) {
                let s = sum - q;
                let d = q * s;
                if s == 0 || d.abs() > h {
                    continue;
                }
                let c = p * s + q * (a - p);
                if c.abs() <= h {
                    let i = self.idx(c, d);
                    self.reducible[i] = true;
                }
            }
        }
    }

    /// Records, for each `(c, d)`, one integer root of the cubic resolvent.
    ///
    /// `4 r(x) = (x^2 - 4d)(a^2 - 4(b - x)) - (xa - 2c)^2`, so for fixed
    /// `(x, d)` the admissible `c` are `(xa -/+ sqrt(N)) / 2` with
    /// `N = (x^2 - 4d)(a^2 - 4b + 4x)`.
    fn mark_resolvent_roots(&mut self, a: i64, b: i64, bound: i64) {
        let h = self.h;
        for x in -bound..=bound {
            let k = a * a - 4 * b + 4 * x;
            let xa = x * a;
            if k == 0 {
                if xa % 2 == 0 && (xa / 2).abs() <= h {
                    for d in -h..=h {
                        let i = self.idx(xa / 2, d);
                        if self.root[i] == NO_ROOT {
                            self.root[i] = x as i16;
                        }
                    }
                }
                continue;
            }
            // N >= 0 needs x^2 - 4d to share the sign of k.
            let quarter = x * x / 4; // floor, x^2 >= 0
            let (dlo, dhi) = if k > 0 {
                (-h, quarter.min(h))
            } else {
                let ceil = if x * x % 4 == 0 { quarter } else { quarter + 1 };
                (ceil.max(-h), h)
            };
            for d in dlo..=dhi {
                let n = (x * x - 4 * d) * k;
                if !is_square_i64(n) {
                    continue;
                }
                let m = isqrt_u64(n as u64) as i64;
                for m in [m, -m] {
                    let twice_c = xa - m;
                    if twice_c % 2 == 0 && (twice_c / 2).abs() <= h {
                        let i = self.idx(twice_c / 2, d);
                        if self.root[i] == NO_ROOT {
                            self.root[i] = x as i16;
                        }
                    }
                    if m == 0 {
                        break;
                    }
                }
            }
        }
    }
}

/// Counts `[Reducible, S4, A4, D4, V4, C4]` over all quartics with leading
/// sub-coefficient `a` and `|b|, |c|, |d| <= h`.
fn quartic_stripe(a: i64, h: i64) -> StripeCounts {
    let mut plane = Plane::new(h);
    let bound = resolvent_root_bound(h);
    let mut counts = [0u64; 6];
    let [reducible, s4, a4, d4, v4, c4] = [0usize, 1, 2, 3, 4, 5];
    let (a2, a3) = (a * a, a * a * a);
    for b in -h..=h {
        plane.reset();
        plane.mark_reducible(a, b);
        plane.mark_resolvent_roots(a, b, bound);
        let (b2, b3) = (b * b, b * b * b);
        let k2_base = -27 * a2 * a2 + 144 * a2 * b - 128 * b2;
        for c in -h..=h {
            let c2 = c * c;
            // disc = 256 d^3 + k2 d^2 + k1 d + k0
            let k2 = k2_base - 192 * a * c;
            let k1 = -4 * a2 * b3 + 16 * b2 * b2 + 18 * a3 * b * c - 80 * a * b2 * c
                - 6 * a2 * c2
                + 144 * b * c2;
            let k0 = a2 * b2 * c2 - 4 * b3 * c2 - 4 * a3 * c2 * c + 18 * a * b * c2 * c
                - 27 * c2 * c2;
            let row = plane.idx(c, -h);
            for (j, d) in (-h..=h).enumerate() {
                if plane.reducible[row + j] {
                    counts[reducible] += 1;
                    continue;
                }
                let disc = ((256 * d + k2) * d + k1) * d + k0;
                debug_assert_ne!(disc, 0, "irreducible quartic with zero discriminant");
                let root = plane.root[row + j];
                let slot = if is_square_i64(disc) {
                    if root == NO_ROOT {
                        a4
                    } else {
                        v4
                    }
                } else if root == NO_ROOT {
                    s4
                } else {
                    let x = root as i64;
                    let first = (x * x - 4 * d) as i128;
                    let second = (a2 - 4 * (b - x)) as i128;
                    if product_is_square(first, disc as i128) && product_is_square(second, disc as i128) {
                        c4
                    } else {
                        d4
                    }
                };
                counts[slot] += 1;
            }
        }
    }
    counts
}
