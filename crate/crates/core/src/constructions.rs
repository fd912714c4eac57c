//! Explicit polynomial families with known Galois groups, and their
//! cross-validation against the classifier.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ck, isqrt};
use crate::error::{Error, Result};
use crate::galois::{classify_cubic, classify_quartic, disc_quartic, GaloisClass, MonicCubic, MonicQuartic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `4d = x^2 - uv^2`, `4(b - x) = a^2 - uw^2`, `2c = xa - uvw` over the
    /// congruence-restricted parameter ranges; groups D4, V4 or C4.
    #[serde(rename = "d4vc")]
    D4vc,
    /// `X^4 + bX^2 + t^2`, `b ≡ 0`, `t ≡ 1 (mod 4)`.
    #[serde(rename = "v4-biquadratic")]
    V4Biquadratic,
    /// `X^4 + 18v^2X^2 + 8uvX + u^2`, discriminant `(16(27uv^4 + u^3))^2`.
    #[serde(rename = "a4")]
    A4,
    /// `X^3 + tX^2 + (t - 3)X - 1`.
    #[serde(rename = "a3")]
    A3,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::D4vc => "d4vc",
            Family::V4Biquadratic => "v4-biquadratic",
            Family::A4 => "a4",
            Family::A3 => "a3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Family::D4vc, Family::V4Biquadratic, Family::A4, Family::A3].into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyPoly {
    Cubic(MonicCubic),
    Quartic(MonicQuartic),
}

impl FamilyPoly {
    pub fn coeffs(&self) -> Vec<i128> {
        match self {
            FamilyPoly::Cubic(f) => vec![f.a, f.b, f.c],
            FamilyPoly::Quartic(f) => vec![f.a, f.b, f.c, f.d],
        }
    }

    pub fn classify(&self) -> Result<GaloisClass> {
        Ok(match self {
            FamilyPoly::Cubic(f) => classify_cubic(f)?.into(),
            FamilyPoly::Quartic(f) => classify_quartic(f)?.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub family: Family,
    pub polynomial: FamilyPoly,
    pub params: BTreeMap<String, i128>,
    pub expected_classes: BTreeSet<GaloisClass>,
    /// Classes that mark a degenerate specialization rather than a failure.
    pub exempt_classes: BTreeSet<GaloisClass>,
}

fn member(
    family: Family,
    polynomial: FamilyPoly,
    params: &[(&str, i128)],
    expected: &[GaloisClass],
    exempt: &[GaloisClass],
) -> FamilyMember {
    FamilyMember {
        family,
        polynomial,
        params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        expected_classes: expected.iter().copied().collect(),
        exempt_classes: exempt.iter().copied().collect(),
    }
}

/// Default for the small constant controlling the `d4vc` ranges.
pub fn default_delta() -> Ratio<i64> {
    Ratio::new(1, 5)
}

/// Smallest `k >= lo` with `k ≡ r (mod m)`.
fn first_in_class(lo: i128, r: i128, m: i128) -> i128 {
    lo + (r - lo).rem_euclid(m)
}

/// Smallest `n >= 0` with `n^2 * coef >= rhs`.
fn ceil_sqrt_ratio(rhs: i128, coef: i128) -> i128 {
    if rhs <= 0 {
        return 0;
    }
    let mut n = isqrt((rhs / coef) as u128) as i128;
    while n * n * coef < rhs {
        n += 1;
    }
    while n > 0 && (n - 1) * (n - 1) * coef >= rhs {
        n -= 1;
    }
    n
}

/// Largest `n >= 0` with `n^2 * coef <= rhs`.
fn floor_sqrt_ratio(rhs: i128, coef: i128) -> i128 {
    if rhs < 0 {
        return -1;
    }
    let mut n = isqrt((rhs / coef) as u128) as i128;
    while n * n * coef > rhs {
        n -= 1;
    }
    while (n + 1) * (n + 1) * coef <= rhs {
        n += 1;
    }
    n
}

/// Parameters `(u, v, w, x, a)` of the `d4vc` family, in lexicographic order.
///
/// `x, a, u, w ≡ 12 (mod 18)`, `v ≡ 4 (mod 6)`, `u` squarefree, with
/// `u <= H^(2-2δ)`, `δ^-1 √H <= v√u/2 <= w√u <= v√u <= δ^2 H`,
/// `v√u < x <= v√u + δH/(v√u)` and `w√u < a <= w√u + δH/(v√u)`.
/// Every irrational bound is decided by squaring.
pub fn d4vc_tuples(height: u64, delta: Ratio<i64>) -> Result<Vec<[i128; 5]>> {
    let (p, q) = (*delta.numer() as i128, *delta.denom() as i128);
    if p <= 0 || p >= q {
        return Err(Error::InvalidInput(format!("delta {delta} is not in (0, 1)")));
    }
    if height == 0 || height as i128 > crate::arith::INPUT_BOUND {
        return Err(Error::InvalidInput(format!("height {height} outside [1, 10^6]")));
    }
    let h = height as i128;
    // v√u <= δ^2 H with v >= 4 gives 16 u Q^4 <= P^4 H^2
    let u_cap = (ck(p).pow(4) * h * h).get()? / (16 * q.pow(4));
    // u squarefree and ≡ 12 (mod 18) forces u/6 odd, so u ≡ 30 (mod 36)
    let count = if u_cap < 30 { 0 } else { ((u_cap - 30) / 36 + 1) as usize };
    let squarefree = squarefree_in_progression(30, 36, count);
    let power_bound = BigUint::from(height).pow((2 * (q - p)) as u32);

    let mut out = Vec::new();
    for (k, &sf) in squarefree.iter().enumerate() {
        let u = 30 + 36 * k as i128;
        if BigUint::from(u as u128).pow(q as u32) > power_bound {
            break;
        }
        if !sf {
            continue;
        }
        // 4 H Q^2 <= v^2 u P^2 and v^2 u Q^4 <= P^4 H^2
        let v_lo = ceil_sqrt_ratio(4 * h * q * q, u * p * p);
        let v_hi = floor_sqrt_ratio(p.pow(4) * h * h, u * q.pow(4));
        let mut v = first_in_class(v_lo.max(1), 4, 6);
        while v <= v_hi {
            let vu = v * v * u; // (v√u)^2
            let x_lo = isqrt(vu as u128) as i128 + 1;
            // Q^2 x^2 v^2 u <= (P H + Q v^2 u)^2
            let x_top = p * h + q * vu;
            let xs: Vec<i128> = {
                let mut xs = Vec::new();
                let mut x = first_in_class(x_lo, 12, 18);
                while q * q * x * x * vu <= x_top * x_top {
                    xs.push(x);
                    x += 18;
                }
                xs
            };
            if !xs.is_empty() {
                // v/2 <= w <= v
                let mut w = first_in_class((v + 1) / 2, 12, 18);
                while w <= v {
                    let a_lo = isqrt((w * w * u) as u128) as i128 + 1;
                    let a_top = p * h + q * u * v * w;
                    let mut a = first_in_class(a_lo, 12, 18);
                    while q * q * a * a * vu <= a_top * a_top {
                        for &x in &xs {
                            out.push([u, v, w, x, a]);
                        }
                        a += 18;
                    }
                    w += 18;
                }
            }
            v += 6;
        }
    }
    out.sort_unstable_by_key(|t| (t[0], t[1], t[2], t[3], t[4]));
    Ok(out)
}

/// Squarefreeness of `start + step * k` for `k < count`, by sieving with
/// every `p^2` up to the largest term.
fn squarefree_in_progression(start: i128, step: i128, count: usize) -> Vec<bool> {
    let mut ok = vec![true; count];
    if count == 0 {
        return ok;
    }
    let last = start + step * (count as i128 - 1);
    let limit = isqrt(last as u128) as usize;
    let mut composite = vec![false; limit + 1];
    for pr in 2..=limit {
        if composite[pr] {
            continue;
        }
        for m in (pr * pr..=limit).step_by(pr) {
            composite[m] = true;
        }
        let sq = (pr * pr) as i128;
        // start + step k ≡ 0 (mod p^2) is solvable iff gcd(step, p^2) divides start
        let g = crate::arith::gcd(step, sq);
        if start % g != 0 {
            continue;
        }
        let (m, s, t) = (sq / g, step / g, start / g);
        // k ≡ -t s^-1 (mod m)
        let k0 = if m == 1 { 0 } else { (-t).rem_euclid(m) * mod_inverse(s.rem_euclid(m), m) % m };
        let mut k = k0 as usize;
        while k < count {
            ok[k] = false;
            k += m as usize;
        }
    }
    ok
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quo = old_r / r;
        (old_r, r) = (r, old_r - quo * r);
        (old_s, s) = (s, old_s - quo * s);
    }
    old_s.rem_euclid(m)
}

fn d4vc_coeffs([u, v, w, x, a]: [i128; 5]) -> MonicQuartic {
    let d = (x * x - u * v * v) / 4;
    let b = x + (a * a - u * w * w) / 4;
    let c = (x * a - u * v * w) / 2;
    MonicQuartic::new(a, b, c, d)
}

pub fn gen_d4vc_family(height: u64, delta: Ratio<i64>) -> Result<Vec<FamilyMember>> {
    use GaloisClass::*;
    Ok(d4vc_tuples(height, delta)?
        .into_iter()
        .map(|t| {
            let [u, v, w, x, a] = t;
            member(
                Family::D4vc,
                FamilyPoly::Quartic(d4vc_coeffs(t)),
                &[("H", height as i128), ("u", u), ("v", v), ("w", w), ("x", x), ("a", a)],
                &[D4, V4, C4],
                &[],
            )
        })
        .collect())
}

/// `H/2 <= b <= H`, `t >= 1`, `t^2 <= H`; empty below `H = 8`.
pub fn gen_v4_biquadratic(height: u64) -> Vec<FamilyMember> {
    if height < 8 {
        return Vec::new();
    }
    let h = height as i128;
    let mut out = Vec::new();
    let mut b = first_in_class((h + 1) / 2, 0, 4).max(4);
    while b <= h {
        let mut t = 1;
        while t * t <= h {
            out.push(member(
                Family::V4Biquadratic,
                FamilyPoly::Quartic(MonicQuartic::new(0, b, 0, t * t)),
                &[("b", b), ("t", t)],
                &[GaloisClass::V4],
                &[],
            ));
            t += 4;
        }
        b += 4;
    }
    out
}

/// `1 <= u, v <= bound`. Specializations that are reducible or have a
/// reducible resolvent are exempt.
pub fn gen_a4_family(bound: u64) -> Vec<FamilyMember> {
    let n = bound as i128;
    let mut out = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            out.push(member(
                Family::A4,
                FamilyPoly::Quartic(MonicQuartic::new(0, 18 * v * v, 8 * u * v, u * u)),
                &[("u", u), ("v", v)],
                &[GaloisClass::A4],
                &[GaloisClass::Reducible, GaloisClass::V4],
            ));
        }
    }
    out
}

pub fn gen_a3_family(t_lo: i128, t_hi: i128) -> Vec<FamilyMember> {
    (t_lo..=t_hi)
        .map(|t| {
            member(
                Family::A3,
                FamilyPoly::Cubic(MonicCubic::new(t, t - 3, -1)),
                &[("t", t)],
                &[GaloisClass::A3],
                &[],
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberIssue {
    pub family: Family,
    pub params: BTreeMap<String, i128>,
    pub coeffs: Vec<i128>,
    pub class: GaloisClass,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub members: u64,
    pub mismatch_count: u64,
    pub class_counts: BTreeMap<GaloisClass, u64>,
    pub mismatches: Vec<MemberIssue>,
    /// Degenerate specializations landing in an exempt class.
    pub exceptional: Vec<MemberIssue>,
}

pub fn classify_members(members: &[FamilyMember]) -> Result<Vec<GaloisClass>> {
    members.par_iter().map(|m| m.polynomial.classify()).collect()
}

/// Family-specific predicates beyond the class; returns the first failure.
fn side_checks(m: &FamilyMember) -> Result<Option<String>> {
    let FamilyPoly::Quartic(f) = m.polynomial else {
        return Ok(None);
    };
    match m.family {
        Family::D4vc => {
            let (h, x) = (m.params["H"], m.params["x"]);
            if [f.a, f.b, f.c, f.d].iter().any(|c| c.abs() > h) {
                return Ok(Some("height exceeds H".into()));
            }
            let bounds = [("4d", 4 * f.d), ("4(b - x)", 4 * (f.b - x)), ("2c", 2 * f.c)];
            if let Some((name, _)) = bounds.iter().find(|(_, v)| !(0 < *v && *v < h)) {
                return Ok(Some(format!("{name} outside (0, H)")));
            }
            if [f.a, f.b, f.c, f.d].iter().any(|c| c % 3 != 0) || f.d % 9 == 0 {
                return Ok(Some("not Eisenstein at 3".into()));
            }
            Ok(None)
        }
        Family::A4 => {
            let (u, v) = (m.params["u"], m.params["v"]);
            let want = (16 * (27 * ck(u) * v.pow(4) + ck(u).pow(3))).pow(2).get()?;
            Ok((disc_quartic(&f)? != want).then(|| "discriminant identity fails".into()))
        }
        _ => Ok(None),
    }
}

pub fn cross_validate(members: &[FamilyMember]) -> Result<CrossValidationReport> {
    let classes = classify_members(members)?;
    cross_validate_with(members, &classes)
}

pub fn cross_validate_with(members: &[FamilyMember], classes: &[GaloisClass]) -> Result<CrossValidationReport> {
    let mut report = CrossValidationReport {
        members: members.len() as u64,
        mismatch_count: 0,
        class_counts: BTreeMap::new(),
        mismatches: Vec::new(),
        exceptional: Vec::new(),
    };
    for (m, &class) in members.iter().zip(classes) {
        *report.class_counts.entry(class).or_default() += 1;
        let issue = |reason: String| MemberIssue {
            family: m.family,
            params: m.params.clone(),
            coeffs: m.polynomial.coeffs(),
            class,
            reason,
        };
        if let Some(reason) = side_checks(m)? {
            report.mismatches.push(issue(reason));
        } else if m.exempt_classes.contains(&class) {
            report.exceptional.push(issue("degenerate specialization".into()));
        } else if !m.expected_classes.contains(&class) {
            report.mismatches.push(issue(format!("class {class} not expected")));
        }
    }
    report.mismatch_count = report.mismatches.len() as u64;
    Ok(report)
}

#[derive(Serialize)]
struct DumpLine<'a> {
    family: Family,
    params: &'a BTreeMap<String, i128>,
    coeffs: Vec<i128>,
    class: GaloisClass,
}

/// One JSON object per line: `{family, params, coeffs, class}`.
pub fn family_dump(members: &[FamilyMember], classes: &[GaloisClass]) -> Result<String> {
    let mut out = String::new();
    for (m, &class) in members.iter().zip(classes) {
        let line = DumpLine { family: m.family, params: &m.params, coeffs: m.polynomial.coeffs(), class };
        out.push_str(&serde_json::to_string(&line)?);
        out.push('\n');
    }
    Ok(out)
}
