//! One-bit-per-polynomial irreducibility table.
//!
//! Bits start set exactly where the constant term is nonzero, then every
//! product of a linear or quadratic factor with a complementary monic
//! factor is cleared. Only the `a >= 0` half of the box is stored.

use super::StripeCounts;
use crate::arith::perfect_square;
use crate::error::{Error, Result};
use crate::galois::{classify_irreducible_quartic, disc_cubic, disc_quartic, GaloisClass};
use crate::galois::{MonicCubic, MonicQuartic};

pub struct IrreducibleTable {
    degree: u32,
    height: i64,
    bits: Vec<u64>,
}

impl IrreducibleTable {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn height(&self) -> u32 {
        self.height as u32
    }

    fn side(&self) -> i64 {
        2 * self.height + 1
    }

    /// Bit index of `(a, rest...)` with `a >= 0`; `None` outside the stored half.
    fn index(&self, coeffs: &[i64]) -> Option<usize> {
        let h = self.height;
        let (&a, rest) = coeffs.split_first()?;
        if !(0..=h).contains(&a) || rest.iter().any(|c| c.abs() > h) {
            return None;
        }
        let mut i = a;
        for &c in rest {
            i = i * self.side() + c + h;
        }
        Some(i as usize)
    }

    /// Whether the polynomial with lower coefficients `coeffs` is irreducible.
    /// Negative `a` is answered through the reflection `X -> -X`.
    pub fn is_irreducible(&self, coeffs: &[i64]) -> bool {
        let mut c = coeffs.to_vec();
        if c.first().is_some_and(|&a| a < 0) {
            for (k, v) in c.iter_mut().enumerate() {
                if k % 2 == 0 {
                    *v = -*v;
                }
            }
        }
        self.index(&c).is_some_and(|i| self.get(i))
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % 64);
        if v {
            self.bits[i / 64] |= mask;
        } else {
            self.bits[i / 64] &= !mask;
        }
    }

    fn clear(&mut self, coeffs: &[i64]) {
        if let Some(i) = self.index(coeffs) {
            self.set(i, false);
        }
    }

    /// Number of irreducible polynomials in the whole box.
    pub fn count_irreducible(&self) -> u64 {
        // the a = 0 plane occupies the first side^(n-1) bits and is its own mirror
        let plane = self.side().pow(self.degree - 1) as usize;
        let zero_plane = (0..plane).filter(|&i| self.get(i)).count() as u64;
        let stored: u64 = self.bits.iter().map(|w| w.count_ones() as u64).sum();
        2 * stored - zero_plane
    }
}

pub fn build_irreducible_table(degree: u32, height: u32, cap_bytes: u64) -> Result<IrreducibleTable> {
    GaloisClass::for_degree(degree)?;
    let h = height as i64;
    let side = 2 * h + 1;
    let nbits = (h + 1) as u64 * (side as u64).pow(degree - 1);
    let required = nbits.div_ceil(64) * 8;
    if required > cap_bytes {
        return Err(Error::MemoryCap { height, required, cap: cap_bytes });
    }
    let mut t = IrreducibleTable { degree, height: h, bits: vec![0; nbits.div_ceil(64) as usize] };
    // constant term is the last (fastest) coordinate
    for i in 0..nbits as usize {
        let constant = (i as i64) % side - h;
        t.set(i, constant != 0);
    }
    if degree == 3 {
        mark_cubic(&mut t);
    } else {
        mark_quartic(&mut t);
    }
    Ok(t)
}

fn clamp_range(center: i64, radius: i64, outer: i64) -> std::ops::RangeInclusive<i64> {
    (center - radius).max(-outer)..=(center + radius).min(outer)
}

/// `(X + α)(X^2 + βX + γ)` with `|α| <= H`, `|β| <= 2H`, `|γ| <= H`.
fn mark_cubic(t: &mut IrreducibleTable) {
    let h = t.height;
    for alpha in -h..=h {
        // a = α + β
        for beta in clamp_range(-alpha, h, 2 * h) {
            for gamma in -h..=h {
                t.clear(&[alpha + beta, alpha * beta + gamma, alpha * gamma]);
            }
        }
    }
}

fn mark_quartic(t: &mut IrreducibleTable) {
    let h = t.height;
    // (X + α)(X^3 + βX^2 + γX + δ), |α|, |δ| <= H, |β|, |γ| <= 2H
    for alpha in -h..=h {
        for beta in clamp_range(-alpha, h, 2 * h) {
            let b0 = alpha * beta;
            for gamma in clamp_range(-b0, h, 2 * h) {
                for delta in clamp_range(-alpha * gamma, h, h) {
                    if (alpha * delta).abs() <= h {
                        t.clear(&[alpha + beta, b0 + gamma, alpha * gamma + delta, alpha * delta]);
                    }
                }
            }
        }
    }
    // (X^2 + αX + β)(X^2 + γX + δ), |α|, |γ| <= 2H, |β|, |δ| <= H
    for alpha in -2 * h..=2 * h {
        for gamma in clamp_range(-alpha, h, 2 * h) {
            let ag = alpha * gamma;
            for beta in -h..=h {
                for delta in clamp_range(-beta - ag, h, h) {
                    if (beta * delta).abs() <= h {
                        t.clear(&[alpha + gamma, beta + delta + ag, alpha * delta + beta * gamma, beta * delta]);
                    }
                }
            }
        }
    }
}

pub(super) fn stripe(t: &IrreducibleTable, a: i64) -> Result<StripeCounts> {
    let h = t.height;
    let mut counts = [0u64; 6];
    let classes = GaloisClass::for_degree(t.degree)?;
    let slot = |c: GaloisClass| classes.iter().position(|&k| k == c).expect("class for degree");
    for b in -h..=h {
        for c in -h..=h {
            if t.degree == 3 {
                let irreducible = t.get(t.index(&[a, b, c]).expect("in range"));
                let class = if !irreducible {
                    GaloisClass::Reducible
                } else if perfect_square(disc_cubic(&MonicCubic::new(a as i128, b as i128, c as i128))?).is_some() {
                    GaloisClass::A3
                } else {
                    GaloisClass::S3
                };
                counts[slot(class)] += 1;
                continue;
            }
            for d in -h..=h {
                let class = if t.get(t.index(&[a, b, c, d]).expect("in range")) {
                    let f = MonicQuartic::new(a as i128, b as i128, c as i128, d as i128);
                    classify_irreducible_quartic(&f, disc_quartic(&f)?)?.into()
                } else {
                    GaloisClass::Reducible
                };
                counts[slot(class)] += 1;
            }
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{classify_cubic, is_reducible_quartic, CubicClass};

    #[test]
    fn cubic_height_one_popcount() {
        // 12 irreducible cubics in [-1, 1]^3; the a >= 0 half holds those with
        // a = 0 plus half of the rest
        let t = build_irreducible_table(3, 1, u64::MAX).unwrap();
        let mut full = 0;
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    full += t.is_irreducible(&[a, b, c]) as u64;
                }
            }
        }
        assert_eq!(full, 12);
    }

    #[test]
    fn bits_match_factor_search() {
        let h = 4;
        let t = build_irreducible_table(4, h as u32, u64::MAX).unwrap();
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    for d in -h..=h {
                        let f = MonicQuartic::new(a as i128, b as i128, c as i128, d as i128);
                        assert_eq!(t.is_irreducible(&[a, b, c, d]), !is_reducible_quartic(&f).unwrap(), "{f}");
                    }
                }
            }
        }
        let t3 = build_irreducible_table(3, 9, u64::MAX).unwrap();
        for a in -9..=9i64 {
            for b in -9..=9i64 {
                for c in -9..=9i64 {
                    let f = MonicCubic::new(a as i128, b as i128, c as i128);
                    let red = classify_cubic(&f).unwrap() == CubicClass::Reducible;
                    assert_eq!(t3.is_irreducible(&[a, b, c]), !red, "{f}");
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(build_irreducible_table(4, 50, 1000), Err(Error::MemoryCap { height: 50, .. })));
    }
}
