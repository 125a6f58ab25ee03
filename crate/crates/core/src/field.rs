//! Arithmetic in Z_p for a prime p < 2^62.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 2^61 - 1.
pub const MERSENNE_61: u64 = (1u64 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^62)")]
    TooLarge(u64),
}

/// A residue in `[0, p)`. Carries no modulus; arithmetic goes through
/// [`PrimeField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    mersenne: bool,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::mersenne61()
    }
}

impl PrimeField {
    pub const fn mersenne61() -> Self {
        Self { p: MERSENNE_61, mersenne: true }
    }

    /// Any prime below 2^62. Primality is checked with deterministic
    /// Miller-Rabin.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 62 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p, mersenne: p == MERSENNE_61 })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary `u64`.
    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe(v % self.p)
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        let r = v.rem_euclid(self.p as i64);
        Fe(r as u64)
    }

    #[inline]
    pub fn reduce(&self, x: u128) -> Fe {
        if self.mersenne {
            let p = MERSENNE_61 as u128;
            let folded = (x & p) + (x >> 61);
            let mut r = ((folded & p) + (folded >> 61)) as u64;
            if r >= MERSENNE_61 {
                r -= MERSENNE_61;
            }
            Fe(r)
        } else {
            Fe((x % self.p as u128) as u64)
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = a.0 + b.0;
        Fe(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        Fe(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.reduce(a.0 as u128 * b.0 as u128)
    }

    pub fn pow(&self, mut a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// `a^(p-2)`.
    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Inverts every element with one exponentiation. All inputs must be
    /// nonzero.
    pub fn batch_inv(&self, xs: &[Fe]) -> Result<Vec<Fe>, FieldError> {
        let mut prefix = Vec::with_capacity(xs.len());
        let mut acc = Fe::ONE;
        for &x in xs {
            if x.is_zero() {
                return Err(FieldError::ZeroInverse);
            }
            prefix.push(acc);
            acc = self.mul(acc, x);
        }
        let mut inv_acc = self.inv(acc)?;
        let mut out = vec![Fe::ZERO; xs.len()];
        for i in (0..xs.len()).rev() {
            out[i] = self.mul(inv_acc, prefix[i]);
            inv_acc = self.mul(inv_acc, xs[i]);
        }
        Ok(out)
    }

    /// Sum of pairwise products, reducing lazily.
    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        let mut acc = Accumulator::new(*self);
        for (x, y) in a.iter().zip(b) {
            acc.add_mul(*x, *y);
        }
        acc.finish()
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn to_i64(&self, a: Fe) -> i64 {
        if a.0 > self.p / 2 {
            a.0 as i64 - self.p as i64
        } else {
            a.0 as i64
        }
    }
}

/// Multiply-accumulate with deferred reduction. Products of residues below
/// 2^62 fit in 124 bits, so 15 of them can be summed into a `u128` before a
/// reduction is needed.
#[derive(Debug, Clone, Copy)]
pub struct Accumulator {
    field: PrimeField,
    acc: u128,
    pending: u32,
}

impl Accumulator {
    const LIMIT: u32 = 15;

    #[inline]
    pub fn new(field: PrimeField) -> Self {
        Self { field, acc: 0, pending: 0 }
    }

    #[inline]
    pub fn add_mul(&mut self, a: Fe, b: Fe) {
        self.acc += a.0 as u128 * b.0 as u128;
        self.pending += 1;
        if self.pending == Self::LIMIT {
            self.acc = self.field.reduce(self.acc).0 as u128;
            self.pending = 1;
        }
    }

    #[inline]
    pub fn finish(self) -> Fe {
        self.field.reduce(self.acc)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}
