//! Distinct-degree factorization over small prime fields, used to read off
//! Frobenius cycle types as an independent check on the classifier.

use super::MonicPolynomial;
use crate::arith;
use crate::error::{Error, Result};

/// Dense polynomial over F_p, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PolyFp {
    coeffs: Vec<u64>,
}

impl PolyFp {
    fn trimmed(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { coeffs }
    }

    fn x() -> Self {
        PolyFp { coeffs: vec![0, 1] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn sub(&self, other: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Self::trimmed(out)
    }

    fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyFp { coeffs: vec![] };
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::trimmed(out)
    }

    /// Quotient and remainder by a nonzero divisor.
    fn div_rem(&self, divisor: &Self, p: u64) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = inv_mod(divisor.coeffs[dd], p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyFp { coeffs: vec![] }, self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let coef = rem[k + dd] * lead_inv % p;
            quot[k] = coef;
            if coef != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = (rem[k + j] + p - coef * dc % p) % p;
                }
            }
        }
        rem.truncate(dd);
        (Self::trimmed(quot), Self::trimmed(rem))
    }

    fn rem(&self, divisor: &Self, p: u64) -> Self {
        self.div_rem(divisor, p).1
    }

    fn monic(&self, p: u64) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = inv_mod(lead, p);
                PolyFp { coeffs: self.coeffs.iter().map(|&c| c * inv % p).collect() }
            }
        }
    }

    fn gcd(&self, other: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    /// `self^e mod modulus`.
    fn pow_mod(&self, mut e: u64, modulus: &Self, p: u64) -> Self {
        let mut base = self.rem(modulus, p);
        let mut acc = PolyFp { coeffs: vec![1] }.rem(modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(modulus, p);
            }
            base = base.mul(&base, p).rem(modulus, p);
            e >>= 1;
        }
        acc
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is nonzero mod p.
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Largest prime accepted; keeps products of residues inside `u64`.
const MAX_PRIME: u64 = 1 << 31;

/// Degrees of the irreducible factors of `f` modulo `p`, ascending.
///
/// Requires `p` prime and `p` not dividing the discriminant, so `f` stays
/// squarefree mod `p` and the degrees form the cycle type of a Frobenius
/// element of the Galois group.
pub fn frobenius_cycle_type<P: MonicPolynomial>(f: &P, p: u64) -> Result<Vec<u32>> {
    if !(2..=MAX_PRIME).contains(&p) || !arith::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let disc = f.discriminant()?;
    if disc.rem_euclid(p as i128) == 0 {
        return Err(Error::PrimeDividesDiscriminant { p, disc });
    }
    let n = f.degree();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    for (k, c) in f.lower_coeffs().into_iter().enumerate() {
        coeffs[n - 1 - k] = c.rem_euclid(p as i128) as u64;
    }
    let mut rest = PolyFp::trimmed(coeffs);
    let x = PolyFp::x();
    let mut h = x.clone();
    let mut degrees = Vec::new();
    let mut k = 1usize;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        if 2 * k > deg {
            // what remains is irreducible
            degrees.push(deg as u32);
            break;
        }
        h = h.pow_mod(p, &rest, p);
        let g = h.sub(&x, p).gcd(&rest, p);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            degrees.extend(std::iter::repeat_n(k as u32, gd / k));
            rest = rest.div_rem(&g, p).0;
            h = h.rem(&rest, p);
        }
        k += 1;
    }
    degrees.sort_unstable();
    Ok(degrees)
}
