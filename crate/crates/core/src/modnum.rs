//! Exact modular integer arithmetic, primality and factorials.
//!
//! Moduli are capped at 2^30 so that every product of two residues fits in
//! a `u64` without widening. That covers `p^2` for every prime below 2^15.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModError {
    /// The modulus is below 2 or above [`MAX_MODULUS`].
    InvalidModulus(u64),
    ModulusMismatch {
        left: u64,
        right: u64,
    },
    NotInvertible {
        value: u64,
        modulus: u64,
    },
}

impl fmt::Display for ModError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModError::InvalidModulus(m) => {
                write!(f, "modulus {} outside supported range [2, 2^30]", m)
            }
            ModError::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {} vs {}", left, right)
            }
            ModError::NotInvertible { value, modulus } => {
                write!(f, "{} is not invertible modulo {}", value, modulus)
            }
        }
    }
}

impl std::error::Error for ModError {}

/// A validated modulus `2 <= m <= 2^30`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self, ModError> {
        if (2..=MAX_MODULUS).contains(&m) {
            Ok(Modulus(m))
        } else {
            Err(ModError::InvalidModulus(m))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical residue of an arbitrary unsigned integer.
    #[inline]
    pub fn residue(self, value: u64) -> Residue {
        Residue {
            value: value % self.0,
            modulus: self,
        }
    }

    /// Canonical residue of a signed integer (e.g. `-1 -> m - 1`).
    pub fn residue_signed(self, value: i64) -> Residue {
        let m = self.0 as i64;
        Residue {
            value: value.rem_euclid(m) as u64,
            modulus: self,
        }
    }

    #[inline]
    pub fn zero(self) -> Residue {
        self.residue(0)
    }

    #[inline]
    pub fn one(self) -> Residue {
        self.residue(1)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z/mZ` in canonical form `0 <= value < m`.
///
/// The operator impls panic on mismatched moduli; the free functions
/// [`mod_add`], [`mod_mul`] and friends report it as an error instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Residue) -> Result<u64, ModError> {
        if self.modulus == other.modulus {
            Ok(self.modulus.0)
        } else {
            Err(ModError::ModulusMismatch {
                left: self.modulus.0,
                right: other.modulus.0,
            })
        }
    }

    pub fn checked_add(self, rhs: Residue) -> Result<Residue, ModError> {
        let m = self.check(rhs)?;
        let s = self.value + rhs.value;
        Ok(Residue {
            value: if s >= m { s - m } else { s },
            modulus: self.modulus,
        })
    }

    pub fn checked_sub(self, rhs: Residue) -> Result<Residue, ModError> {
        let m = self.check(rhs)?;
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + m - rhs.value
        };
        Ok(Residue {
            value,
            modulus: self.modulus,
        })
    }

    pub fn checked_mul(self, rhs: Residue) -> Result<Residue, ModError> {
        let m = self.check(rhs)?;
        Ok(Residue {
            value: self.value * rhs.value % m,
            modulus: self.modulus,
        })
    }

    /// Multiplicative inverse by the extended Euclidean algorithm, so it
    /// also works for composite moduli such as `p^2`.
    pub fn inv(self) -> Result<Residue, ModError> {
        let m = self.modulus.0 as i64;
        let (mut old_r, mut r) = (self.value as i64, m);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let quot = old_r / r;
            (old_r, r) = (r, old_r - quot * r);
            (old_s, s) = (s, old_s - quot * s);
        }
        if old_r != 1 {
            return Err(ModError::NotInvertible {
                value: self.value,
                modulus: self.modulus.0,
            });
        }
        Ok(self.modulus.residue_signed(old_s))
    }

    pub fn pow(self, mut e: u64) -> Residue {
        let m = self.modulus.0;
        let mut base = self.value;
        let mut acc = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Residue {
            value: acc,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.checked_add(rhs).expect("residue addition")
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.checked_sub(rhs).expect("residue subtraction")
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.checked_mul(rhs).expect("residue multiplication")
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        self.modulus.zero() - self
    }
}

pub fn mod_add(a: Residue, b: Residue) -> Result<Residue, ModError> {
    a.checked_add(b)
}

pub fn mod_mul(a: Residue, b: Residue) -> Result<Residue, ModError> {
    a.checked_mul(b)
}

pub fn mod_inv(a: Residue) -> Result<Residue, ModError> {
    a.inv()
}

pub fn mod_pow(a: Residue, e: u64) -> Residue {
    a.pow(e)
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality test.
///
/// Strong probable-prime test to the first twelve prime bases, which has no
/// pseudoprimes below 3.3 * 10^24 and therefore none in `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes `<= limit` in ascending order (sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = usize::try_from(limit).expect("sieve limit fits in memory");
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// `n!` reduced modulo `m`, by running product.
pub fn factorial_mod(n: u64, m: Modulus) -> Residue {
    let mut acc = m.one();
    for i in 2..=n {
        acc = acc * m.residue(i);
        if acc.is_zero() {
            break;
        }
    }
    acc
}
