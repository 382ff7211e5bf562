//! Arithmetic in the quotient ring `F2[x]/(x^s - 1)`.
//!
//! Elements are stored as a fixed-width bit mask over the exponents
//! `0..s`, so addition is XOR and multiplication by a monomial is a cyclic
//! rotation of the mask. The ring is isomorphic to the ring of `s x s`
//! binary circulants.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported circulant size.
pub const MAX_S: usize = 512;

const WORDS: usize = MAX_S / 64;

/// An element of `F2[x]/(x^s - 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicPoly {
    s: u16,
    bits: [u64; WORDS],
}

fn check_modulus(s: usize) -> Result<()> {
    if s == 0 || s > MAX_S {
        return Err(Error::ModulusOutOfRange { s, max: MAX_S });
    }
    Ok(())
}

impl CyclicPoly {
    pub fn zero(s: usize) -> Result<Self> {
        check_modulus(s)?;
        Ok(Self {
            s: s as u16,
            bits: [0; WORDS],
        })
    }

    /// `x^exponent`.
    pub fn monomial(s: usize, exponent: usize) -> Result<Self> {
        let mut p = Self::zero(s)?;
        if exponent >= s {
            return Err(Error::ExponentOutOfRange { exponent, s });
        }
        p.bits[exponent / 64] |= 1 << (exponent % 64);
        Ok(p)
    }

    /// `1 + x + ... + x^(s-1)`, the element fixed by every monomial.
    pub fn all_ones(s: usize) -> Result<Self> {
        let mut p = Self::zero(s)?;
        for e in 0..s {
            p.bits[e / 64] |= 1 << (e % 64);
        }
        Ok(p)
    }

    /// Builds a polynomial from a list of exponents. Repeated exponents
    /// cancel in pairs, as they would in a sum over F2.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(s: usize, exponents: I) -> Result<Self> {
        let mut p = Self::zero(s)?;
        for e in exponents {
            if e >= s {
                return Err(Error::ExponentOutOfRange { exponent: e, s });
            }
            p.bits[e / 64] ^= 1 << (e % 64);
        }
        Ok(p)
    }

    pub fn modulus(&self) -> usize {
        self.s as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn coefficient(&self, exponent: usize) -> bool {
        exponent < self.modulus() && self.bits[exponent / 64] >> (exponent % 64) & 1 == 1
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + tz)
            })
        })
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.s != other.s {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: other.modulus(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = *self;
        for (o, w) in out.bits.iter_mut().zip(other.bits.iter()) {
            *o ^= w;
        }
        out
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (o, w) in self.bits.iter_mut().zip(other.bits.iter()) {
            *o ^= w;
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        // Iterate over the sparser operand; each term is a rotation.
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = CyclicPoly {
            s: self.s,
            bits: [0; WORDS],
        };
        for e in sparse.support() {
            acc.add_assign_unchecked(&dense.shift(e));
        }
        acc
    }

    /// Multiplication by `x^k`: a cyclic rotation of the coefficients.
    pub fn shift(&self, k: usize) -> Self {
        let s = self.modulus();
        let k = k % s;
        if k == 0 {
            return *self;
        }
        let mut out = shl(&self.bits, k);
        let wrapped = shr(&self.bits, s - k);
        for (o, w) in out.iter_mut().zip(wrapped.iter()) {
            *o |= w;
        }
        mask(&mut out, s);
        CyclicPoly {
            s: self.s,
            bits: out,
        }
    }
}

fn shl(bits: &[u64; WORDS], k: usize) -> [u64; WORDS] {
    let (q, r) = (k / 64, k % 64);
    let mut out = [0u64; WORDS];
    for i in (q..WORDS).rev() {
        let src = i - q;
        out[i] = bits[src] << r;
        if r != 0 && src > 0 {
            out[i] |= bits[src - 1] >> (64 - r);
        }
    }
    out
}

fn shr(bits: &[u64; WORDS], k: usize) -> [u64; WORDS] {
    let (q, r) = (k / 64, k % 64);
    let mut out = [0u64; WORDS];
    for (i, word) in out.iter_mut().enumerate().take(WORDS - q) {
        let src = i + q;
        *word = bits[src] >> r;
        if r != 0 && src + 1 < WORDS {
            *word |= bits[src + 1] << (64 - r);
        }
    }
    out
}

fn mask(bits: &mut [u64; WORDS], s: usize) {
    let full = s / 64;
    let rem = s % 64;
    if full < WORDS {
        bits[full] &= (1u64 << rem).wrapping_sub(1);
        for w in bits.iter_mut().skip(full + 1) {
            *w = 0;
        }
    }
}

/// `"0"` for zero, otherwise terms in ascending order joined with `+`:
/// `1`, `x`, `x^k`.
impl fmt::Display for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, e) in self.support().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicPoly(s={}, {})", self.s, self)
    }
}
