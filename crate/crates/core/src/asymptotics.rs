//! Leading-order asymptotics of the number of reducible monic polynomials:
//! `R_n(H) ~ c_n H^(n-1)` with `c_n = 2^n (ζ(n-1) - 1) + 2^(n-1) + 2 k_n`,
//! where `k_n` is the volume of `{x ∈ [-1, 1]^(n-1) : |Σ x_i| <= 1}`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::census::CensusReport;
use crate::error::{Error, Result};
use crate::galois::GaloisClass;

/// Number of `(a_1, ..., a_n) ∈ Z^n` with `max |a_i| <= big_n` and `Σ a_i = h`.
pub fn lattice_count_l(n: u32, big_n: u64, h: i64) -> Result<u128> {
    if n == 0 || n > 16 || big_n > 1_000_000 {
        return Err(Error::InvalidInput(format!("lattice count needs 1 <= n <= 16 and N <= 10^6, got n={n}, N={big_n}")));
    }
    let width = 2 * big_n as usize + 1;
    // dist[s] counts vectors so far with sum s - k N for k coordinates
    let mut dist: Vec<u128> = vec![1; width];
    for _ in 1..n {
        let mut prefix = vec![0u128; dist.len() + 1];
        for (i, &c) in dist.iter().enumerate() {
            prefix[i + 1] = prefix[i] + c;
        }
        let len = dist.len() + width - 1;
        let next: Vec<u128> = (0..len)
            .map(|s| {
                // Σ dist[s - j] for 0 <= j < width
                let hi = s.min(dist.len() - 1);
                let lo = s.saturating_sub(width - 1);
                prefix[hi + 1] - prefix[lo]
            })
            .collect();
        dist = next;
    }
    let offset = n as i128 * big_n as i128;
    let idx = h as i128 + offset;
    Ok(if idx < 0 || idx >= dist.len() as i128 { 0 } else { dist[idx as usize] })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalVolume {
    pub numer: i128,
    pub denom: i128,
}

impl RationalVolume {
    fn from_ratio(r: Ratio<i128>) -> Self {
        RationalVolume { numer: *r.numer(), denom: *r.denom() }
    }

    pub fn ratio(&self) -> Ratio<i128> {
        Ratio::new(self.numer, self.denom)
    }

    pub fn to_f64(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl fmt::Display for RationalVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

fn binomial(m: i128, k: i128) -> i128 {
    (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

/// Irwin-Hall distribution function of a sum of `m` uniforms on `[0, 1]`:
/// `F(t) = (1/m!) Σ_{k <= t} (-1)^k C(m, k) (t - k)^m`.
fn irwin_hall_cdf(m: u32, t: Ratio<i128>) -> Ratio<i128> {
    let mi = m as i128;
    let fact: i128 = (1..=mi).product();
    let mut acc = Ratio::from_integer(0);
    let mut k = 0i128;
    while Ratio::from_integer(k) <= t && k <= mi {
        let term = (t - Ratio::from_integer(k)).pow(m as i32) * binomial(mi, k);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
        k += 1;
    }
    acc / fact
}

/// Exact `k_n`. With `x_i = 2y_i - 1`, `|Σ x_i| <= 1` becomes
/// `Σ y_i ∈ [(m-1)/2, (m+1)/2]` for `m = n - 1` uniforms `y_i`.
pub fn region_volume_k(n: u32) -> Result<RationalVolume> {
    if !(2..=12).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    let m = n - 1;
    let mi = m as i128;
    let lo = Ratio::new(mi - 1, 2);
    let hi = Ratio::new(mi + 1, 2);
    let prob = irwin_hall_cdf(m, hi) - irwin_hall_cdf(m, lo);
    Ok(RationalVolume::from_ratio(prob * (1i128 << m)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub s: u32,
    pub value: f64,
    /// Bound on the truncation error (rounding excluded).
    pub error_bound: f64,
    pub terms: u64,
}

/// `ζ(s)` for integer `s >= 2`: `N` terms plus the Euler-Maclaurin tail
/// `N^(1-s)/(s-1) - N^-s/2 + s N^(-s-1)/12 - s(s+1)(s+2) N^(-s-3)/720`.
/// For `x^-s` the remainder is bounded by the next (`B_6`) term,
/// `s(s+1)(s+2)(s+3)(s+4) N^(-s-5)/30240`.
pub fn zeta(s: u32, tol: f64) -> Result<ZetaValue> {
    if s < 2 || tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("zeta needs s >= 2 and tol > 0, got s={s}, tol={tol}")));
    }
    let sf = s as f64;
    let poly: f64 = (0..5).map(|i| sf + i as f64).product();
    let bound = |n: f64| poly * n.powf(-sf - 5.0) / 30240.0;
    let mut n = 8u64;
    while bound(n as f64) > tol && n < 1 << 40 {
        n *= 2;
    }
    let nf = n as f64;
    // smallest terms first
    let head: f64 = (1..=n).rev().map(|k| (k as f64).powf(-sf)).sum::<f64>() - nf.powf(-sf);
    let tail = nf.powf(1.0 - sf) / (sf - 1.0) + nf.powf(-sf) / 2.0 + sf * nf.powf(-sf - 1.0) / 12.0
        - sf * (sf + 1.0) * (sf + 2.0) * nf.powf(-sf - 3.0) / 720.0;
    Ok(ZetaValue { s, value: head + tail, error_bound: bound(nf), terms: n })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChelaConstant {
    pub n: u32,
    pub k_n: RationalVolume,
    pub zeta: ZetaValue,
    /// `2^n (ζ(n-1) - 1) + 2^(n-1) + 2 k_n`.
    pub series_form: f64,
    /// `8(π^2/6 + 1/4)` for `n = 3`, `16(ζ(3) + 1/6)` for `n = 4`.
    pub closed_form: f64,
    pub agree: bool,
}

impl ChelaConstant {
    pub fn value(&self) -> f64 {
        self.closed_form
    }
}

pub fn chela_constant_c(n: u32, tol: f64) -> Result<ChelaConstant> {
    let k_n = region_volume_k(n)?;
    let z = zeta(n - 1, tol / 64.0)?;
    let two_n = (1u64 << n) as f64;
    let series_form = two_n * (z.value - 1.0) + two_n / 2.0 + 2.0 * k_n.to_f64();
    let closed_form = match n {
        3 => 8.0 * (std::f64::consts::PI.powi(2) / 6.0 + 0.25),
        4 => 16.0 * (z.value + 1.0 / 6.0),
        _ => return Err(Error::UnsupportedDegree(n)),
    };
    Ok(ChelaConstant { n, k_n, zeta: z, series_form, closed_form, agree: (series_form - closed_form).abs() < tol })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitEntry {
    #[serde(rename = "H")]
    pub height: u32,
    pub reducible: u64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub degree: u32,
    pub entries: Vec<FitEntry>,
    pub c_n: f64,
    pub k_n: RationalVolume,
    /// Change in ratio from the smallest to the largest height.
    pub trend: Option<f64>,
}

/// Ratios `R_n(H) / (c_n H^(n-1))` for the given `(H, R_n(H))` pairs.
pub fn fit_reducible_counts(degree: u32, counts: &[(u32, u64)]) -> Result<FitReport> {
    let c = chela_constant_c(degree, 1e-13)?;
    let mut entries: Vec<FitEntry> = counts
        .iter()
        .map(|&(h, r)| FitEntry { height: h, reducible: r, ratio: r as f64 / (c.value() * (h as f64).powi(degree as i32 - 1)) })
        .collect();
    entries.sort_by_key(|e| e.height);
    if entries.windows(2).any(|w| w[0].height == w[1].height) {
        return Err(Error::InvalidInput("heights must be distinct".into()));
    }
    if entries.iter().any(|e| e.height == 0) {
        return Err(Error::InvalidInput("height 0 has no ratio".into()));
    }
    let trend = match (entries.first(), entries.last()) {
        (Some(f), Some(l)) if entries.len() > 1 => Some(l.ratio - f.ratio),
        _ => None,
    };
    Ok(FitReport { degree, entries, c_n: c.value(), k_n: c.k_n, trend })
}

pub fn fit_reducible(reports: &[CensusReport]) -> Result<FitReport> {
    let Some(first) = reports.first() else {
        return Err(Error::InvalidInput("no census reports".into()));
    };
    if let Some(other) = reports.iter().find(|r| r.degree != first.degree) {
        return Err(Error::MixedDegrees(first.degree, other.degree));
    }
    let counts: Vec<(u32, u64)> =
        reports.iter().map(|r| (r.height, r.count(GaloisClass::Reducible))).collect();
    fit_reducible_counts(first.degree, &counts)
}
