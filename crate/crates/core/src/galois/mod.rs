//! Discriminants, invariants, resolvents and Galois group classification for
//! monic integer cubics and quartics.
//!
//! Reducibility is decided per polynomial: monic integer polynomials have
//! only integer rational roots, so a divisor scan of the constant term finds
//! every linear factor, and a quartic without one can only split into two
//! monic integer quadratics whose constant terms multiply to `d`.
//!
//! Irreducible quartics are sorted with the Kappe-Warren criterion:
//!
//! | disc square | resolvent has integer root | group |
//! |-------------|----------------------------|-------|
//! | yes         | no                         | A4    |
//! | yes         | yes                        | V4    |
//! | no          | no                         | S4    |
//! | no          | yes (root x)               | C4 if `(x^2-4d)D` and `(a^2-4(b-x))D` are both squares, else D4 |

mod modp;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, ck, perfect_square, Checked};
use crate::error::{Error, Result};

pub use modp::frobenius_cycle_type;

/// `X^3 + aX^2 + bX + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonicCubic {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// `X^4 + aX^3 + bX^2 + cX + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonicQuartic {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl MonicCubic {
    pub const fn new(a: i128, b: i128, c: i128) -> Self {
        MonicCubic { a, b, c }
    }

    /// Builds a cubic after checking every coefficient against the input bound.
    pub fn checked(a: i128, b: i128, c: i128) -> Result<Self> {
        arith::check_input("a", a)?;
        arith::check_input("b", b)?;
        arith::check_input("c", c)?;
        Ok(Self::new(a, b, c))
    }

    pub fn eval(&self, x: i128) -> Result<i128> {
        (((ck(x) + self.a) * x + self.b) * x + self.c).get()
    }

    pub fn height(&self) -> i128 {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }

    /// The image under `X -> -X` (up to the sign that keeps it monic).
    pub fn reflected(&self) -> Self {
        MonicCubic::new(-self.a, self.b, -self.c)
    }
}

impl MonicQuartic {
    pub const fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        MonicQuartic { a, b, c, d }
    }

    pub fn checked(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        arith::check_input("a", a)?;
        arith::check_input("b", b)?;
        arith::check_input("c", c)?;
        arith::check_input("d", d)?;
        Ok(Self::new(a, b, c, d))
    }

    pub fn eval(&self, x: i128) -> Result<i128> {
        ((((ck(x) + self.a) * x + self.b) * x + self.c) * x + self.d).get()
    }

    pub fn height(&self) -> i128 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn reflected(&self) -> Self {
        MonicQuartic::new(-self.a, self.b, -self.c, self.d)
    }
}

impl fmt::Display for MonicCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^3")?;
        write_terms(f, &[(self.a, "X^2"), (self.b, "X"), (self.c, "")])
    }
}

impl fmt::Display for MonicQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^4")?;
        write_terms(f, &[(self.a, "X^3"), (self.b, "X^2"), (self.c, "X"), (self.d, "")])
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(i128, &str)]) -> fmt::Result {
    for &(coef, mono) in terms {
        if coef == 0 {
            continue;
        }
        let sign = if coef < 0 { '-' } else { '+' };
        let mag = coef.unsigned_abs();
        if mag == 1 && !mono.is_empty() {
            write!(f, " {sign} {mono}")?;
        } else {
            write!(f, " {sign} {mag}{mono}")?;
        }
    }
    Ok(())
}

/// Common view of the two polynomial shapes, used by the mod-p code.
pub trait MonicPolynomial {
    fn degree(&self) -> usize;
    /// Non-leading coefficients from the top down.
    fn lower_coeffs(&self) -> Vec<i128>;
    fn discriminant(&self) -> Result<i128>;
}

impl MonicPolynomial for MonicCubic {
    fn degree(&self) -> usize {
        3
    }
    fn lower_coeffs(&self) -> Vec<i128> {
        vec![self.a, self.b, self.c]
    }
    fn discriminant(&self) -> Result<i128> {
        disc_cubic(self)
    }
}

impl MonicPolynomial for MonicQuartic {
    fn degree(&self) -> usize {
        4
    }
    fn lower_coeffs(&self) -> Vec<i128> {
        vec![self.a, self.b, self.c, self.d]
    }
    fn discriminant(&self) -> Result<i128> {
        disc_quartic(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicClass {
    Reducible,
    S3,
    A3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuarticClass {
    Reducible,
    S4,
    A4,
    D4 { root: i128 },
    V4,
    C4 { root: i128 },
}

/// Flat label covering both degrees; the census counts by this.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GaloisClass {
    Reducible,
    S3,
    A3,
    S4,
    A4,
    D4,
    V4,
    C4,
}

impl GaloisClass {
    pub const CUBIC: [GaloisClass; 3] = [GaloisClass::Reducible, GaloisClass::S3, GaloisClass::A3];
    pub const QUARTIC: [GaloisClass; 6] = [
        GaloisClass::Reducible,
        GaloisClass::S4,
        GaloisClass::A4,
        GaloisClass::D4,
        GaloisClass::V4,
        GaloisClass::C4,
    ];

    pub fn for_degree(degree: u32) -> Result<&'static [GaloisClass]> {
        match degree {
            3 => Ok(&Self::CUBIC),
            4 => Ok(&Self::QUARTIC),
            d => Err(Error::UnsupportedDegree(d)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GaloisClass::Reducible => "Reducible",
            GaloisClass::S3 => "S3",
            GaloisClass::A3 => "A3",
            GaloisClass::S4 => "S4",
            GaloisClass::A4 => "A4",
            GaloisClass::D4 => "D4",
            GaloisClass::V4 => "V4",
            GaloisClass::C4 => "C4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            GaloisClass::Reducible,
            GaloisClass::S3,
            GaloisClass::A3,
            GaloisClass::S4,
            GaloisClass::A4,
            GaloisClass::D4,
            GaloisClass::V4,
            GaloisClass::C4,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }

    /// Cycle types (ascending partitions of the degree) of the elements of
    /// the group, as it acts on the roots.
    pub fn cycle_types(self) -> &'static [&'static [u32]] {
        match self {
            GaloisClass::Reducible => &[],
            GaloisClass::A3 => &[&[1, 1, 1], &[3]],
            GaloisClass::S3 => &[&[1, 1, 1], &[1, 2], &[3]],
            GaloisClass::V4 => &[&[1, 1, 1, 1], &[2, 2]],
            GaloisClass::C4 => &[&[1, 1, 1, 1], &[2, 2], &[4]],
            GaloisClass::A4 => &[&[1, 1, 1, 1], &[2, 2], &[1, 3]],
            GaloisClass::D4 => &[&[1, 1, 1, 1], &[2, 2], &[1, 1, 2], &[4]],
            GaloisClass::S4 => &[&[1, 1, 1, 1], &[2, 2], &[1, 1, 2], &[4], &[1, 3]],
        }
    }
}

impl fmt::Display for GaloisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<CubicClass> for GaloisClass {
    fn from(c: CubicClass) -> Self {
        match c {
            CubicClass::Reducible => GaloisClass::Reducible,
            CubicClass::S3 => GaloisClass::S3,
            CubicClass::A3 => GaloisClass::A3,
        }
    }
}

impl From<QuarticClass> for GaloisClass {
    fn from(c: QuarticClass) -> Self {
        match c {
            QuarticClass::Reducible => GaloisClass::Reducible,
            QuarticClass::S4 => GaloisClass::S4,
            QuarticClass::A4 => GaloisClass::A4,
            QuarticClass::D4 { .. } => GaloisClass::D4,
            QuarticClass::V4 => GaloisClass::V4,
            QuarticClass::C4 { .. } => GaloisClass::C4,
        }
    }
}

/// The invariants `I`, `J` with `27 * disc = 4I^3 - J^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPair {
    pub i: i128,
    pub j: i128,
}

impl InvariantPair {
    /// `(4I^3 - J^2) / 27`, or `None` when 27 does not divide it.
    pub fn discriminant(&self) -> Result<Option<i128>> {
        let n = (4 * ck(self.i).pow(3) - ck(self.j) * self.j).get()?;
        Ok((n % 27 == 0).then_some(n / 27))
    }
}

// ---------------------------------------------------------------------------
// Cubics
// ---------------------------------------------------------------------------

pub fn disc_cubic(f: &MonicCubic) -> Result<i128> {
    let (a, b, c) = (ck(f.a), ck(f.b), ck(f.c));
    (a * a * b * b - 4 * b.pow(3) - 4 * a.pow(3) * c + 18 * a * b * c - 27 * c * c).get()
}

pub fn invariants_cubic(f: &MonicCubic) -> Result<InvariantPair> {
    let (a, b, c) = (ck(f.a), ck(f.b), ck(f.c));
    Ok(InvariantPair {
        i: (a * a - 3 * b).get()?,
        j: (27 * c - 9 * a * b + 2 * a.pow(3)).get()?,
    })
}

/// Every root `x` of `f` has `|x| <= 3 max(|a|, |b|^(1/2), |c|^(1/3))`.
fn cubic_root_bound(f: &MonicCubic) -> i128 {
    let b = f.b.unsigned_abs();
    let mut s = arith::isqrt(b);
    if s * s < b {
        s += 1;
    }
    let c = f.c.unsigned_abs();
    let mut r = ((c as f64).cbrt() as u128).saturating_sub(1);
    while r.saturating_mul(r).saturating_mul(r) < c {
        r += 1;
    }
    let m = f.a.unsigned_abs().max(s).max(r);
    i128::try_from(m.saturating_mul(3)).unwrap_or(i128::MAX)
}

/// Candidates for a nonzero integer root: divisors of `c` within the root bound.
fn candidate_roots(f: &MonicCubic) -> Result<impl Iterator<Item = i128>> {
    let bound = cubic_root_bound(f);
    Ok(arith::divisors(f.c)?.into_iter().take_while(move |&t| t <= bound).flat_map(|t| [t, -t]))
}

/// An integer root of the cubic, if it has one.
pub fn cubic_integer_root(f: &MonicCubic) -> Result<Option<i128>> {
    if f.c == 0 {
        return Ok(Some(0));
    }
    for x in candidate_roots(f)? {
        if f.eval(x)? == 0 {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn classify_cubic(f: &MonicCubic) -> Result<CubicClass> {
    let disc = disc_cubic(f)?;
    if disc == 0 || cubic_integer_root(f)?.is_some() {
        return Ok(CubicClass::Reducible);
    }
    Ok(if perfect_square(disc).is_some() {
        CubicClass::A3
    } else {
        CubicClass::S3
    })
}

// ---------------------------------------------------------------------------
// Quartics
// ---------------------------------------------------------------------------

/// `X^3 - bX^2 + (ac - 4d)X - (a^2 d - 4bd + c^2)`.
pub fn resolvent(f: &MonicQuartic) -> Result<MonicCubic> {
    let (a, b, c, d) = (ck(f.a), ck(f.b), ck(f.c), ck(f.d));
    Ok(MonicCubic {
        a: -f.b,
        b: (a * c - 4 * d).get()?,
        c: (-(a * a * d - 4 * b * d + c * c)).get()?,
    })
}

pub fn disc_quartic(f: &MonicQuartic) -> Result<i128> {
    disc_quartic_checked(ck(f.a), ck(f.b), ck(f.c), ck(f.d)).get()
}

fn disc_quartic_checked(a: Checked, b: Checked, c: Checked, d: Checked) -> Checked {
    let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
    let (a3, b3, c3) = (a2 * a, b2 * b, c2 * c);
    a2 * b2 * c2 - 4 * b3 * c2 - 4 * a3 * c3 + 18 * a * b * c3 - 27 * c2 * c2
        - 4 * a2 * b3 * d
        + 16 * b2 * b2 * d
        + 18 * a3 * b * c * d
        - 80 * a * b2 * c * d
        - 6 * a2 * c2 * d
        + 144 * b * c2 * d
        - 27 * a2 * a2 * d2
        + 144 * a2 * b * d2
        - 128 * b2 * d2
        - 192 * a * c * d2
        + 256 * d2 * d
}

pub fn invariants_quartic(f: &MonicQuartic) -> Result<InvariantPair> {
    let (a, b, c, d) = (ck(f.a), ck(f.b), ck(f.c), ck(f.d));
    Ok(InvariantPair {
        i: (12 * d - 3 * a * c + b * b).get()?,
        j: (72 * b * d + 9 * a * b * c - 27 * c * c - 27 * a * a * d - 2 * b.pow(3)).get()?,
    })
}

/// A certificate that a quartic factors over the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuarticFactor {
    /// `f(root) = 0`.
    Linear { root: i128 },
    /// `f = (X^2 + pX + q)(X^2 + rX + s)`.
    Quadratic { p: i128, q: i128, r: i128, s: i128 },
}

/// Finds a factorization witness, or `None` when the quartic is irreducible.
pub fn quartic_factor_witness(f: &MonicQuartic) -> Result<Option<QuarticFactor>> {
    if f.d == 0 {
        return Ok(Some(QuarticFactor::Linear { root: 0 }));
    }
    let divs = arith::divisors(f.d)?;
    for &t in &divs {
        for x in [t, -t] {
            if f.eval(x)? == 0 {
                return Ok(Some(QuarticFactor::Linear { root: x }));
            }
        }
    }
    // (X^2 + pX + q)(X^2 + rX + s): q s = d, p + r = a, p r = b - q - s,
    // p s + q r = c.
    for &t in &divs {
        for q in [t, -t] {
            let s = f.d / q;
            let pr = (ck(f.b) - q - s).get()?;
            let disc = (ck(f.a) * f.a - 4 * ck(pr)).get()?;
            let Some(k) = perfect_square(disc) else {
                continue;
            };
            if (f.a + k) % 2 != 0 {
                continue;
            }
            for (p, r) in [((f.a + k) / 2, (f.a - k) / 2), ((f.a - k) / 2, (f.a + k) / 2)] {
                if (ck(p) * s + ck(q) * r).get()? == f.c {
                    return Ok(Some(QuarticFactor::Quadratic { p, q, r, s }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_reducible_quartic(f: &MonicQuartic) -> Result<bool> {
    Ok(quartic_factor_witness(f)?.is_some())
}

/// Integer roots of the cubic resolvent, found among the divisors of its
/// constant term. Returns the first root in scan order (divisors ascending,
/// positive before negative), or 0 when the constant term vanishes.
pub fn resolvent_integer_root(f: &MonicQuartic) -> Result<Option<i128>> {
    cubic_integer_root(&resolvent(f)?)
}

fn resolvent_integer_roots(f: &MonicQuartic) -> Result<Vec<i128>> {
    let r = resolvent(f)?;
    let mut roots = Vec::new();
    if r.c == 0 {
        roots.push(0);
        // remaining roots solve X^2 + aX + b = 0
        let disc = (ck(r.a) * r.a - 4 * ck(r.b)).get()?;
        if let Some(k) = perfect_square(disc) {
            if (k - r.a) % 2 == 0 {
                roots.extend([(-r.a + k) / 2, (-r.a - k) / 2]);
            }
        }
    } else {
        for x in candidate_roots(&r)? {
            if r.eval(x)? == 0 {
                roots.push(x);
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// True when `p * q` is a perfect square, decided without forming the product.
pub(crate) fn product_is_square(p: i128, q: i128) -> bool {
    if p == 0 || q == 0 {
        return true;
    }
    if (p < 0) != (q < 0) {
        return false;
    }
    let g = arith::gcd(p, q);
    perfect_square(p.abs() / g).is_some() && perfect_square(q.abs() / g).is_some()
}

/// Kappe-Warren split of the D4/C4 branch given a resolvent root `x`.
pub fn is_cyclic_quartic(f: &MonicQuartic, x: i128, disc: i128) -> Result<bool> {
    let first = (ck(x) * x - 4 * ck(f.d)).get()?;
    let second = (ck(f.a) * f.a - 4 * (ck(f.b) - x)).get()?;
    Ok(product_is_square(first, disc) && product_is_square(second, disc))
}

pub fn classify_quartic(f: &MonicQuartic) -> Result<QuarticClass> {
    let disc = disc_quartic(f)?;
    if disc == 0 || is_reducible_quartic(f)? {
        return Ok(QuarticClass::Reducible);
    }
    classify_irreducible_quartic(f, disc)
}

/// Classification for a quartic already known to be irreducible with
/// discriminant `disc`.
pub(crate) fn classify_irreducible_quartic(f: &MonicQuartic, disc: i128) -> Result<QuarticClass> {
    let root = resolvent_integer_root(f)?;
    let square = perfect_square(disc).is_some();
    Ok(match (square, root) {
        (true, None) => QuarticClass::A4,
        (true, Some(_)) => QuarticClass::V4,
        (false, None) => QuarticClass::S4,
        (false, Some(x)) => {
            debug_assert_eq!(
                resolvent_integer_roots(f)?,
                vec![x],
                "resolvent root should be unique for D4/C4: {f}"
            );
            if is_cyclic_quartic(f, x, disc)? {
                QuarticClass::C4 { root: x }
            } else {
                QuarticClass::D4 { root: x }
            }
        }
    })
}
