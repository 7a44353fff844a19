//! Elementary symmetric values `s_1 .. s_{q-1}` of the nonzero elements of a
//! finite field, and the power sums tied to them by Newton's identities.
//!
//! The expansion engine at the top of this module is written against
//! [`Ring`], so the same code runs over field elements, residues mod `p`
//! and exact integers.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::field::{FieldElement, FieldParams};

/// Commutative ring values the engine can work with.
///
/// Zero and one are passed explicitly because field elements and residues
/// carry their modulus at runtime.
pub trait Ring:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Little-endian coefficients of `prod (x - r)` over `roots`, multiplying
/// in one linear factor at a time.
pub fn expand_linear_factors<T: Ring>(roots: &[T], zero: T, one: T) -> Vec<T> {
    let mut coeffs = Vec::with_capacity(roots.len() + 1);
    coeffs.push(one);
    for r in roots {
        // (c_0 + c_1 x + ... + c_d x^d)(x - r)
        // top-down so coeffs[i - 1] still holds the old value
        coeffs.push(zero.clone());
        for i in (1..coeffs.len()).rev() {
            coeffs[i] = coeffs[i - 1].clone() - r.clone() * coeffs[i].clone();
        }
        coeffs[0] = zero.clone() - r.clone() * coeffs[0].clone();
    }
    coeffs
}

/// `[s_1, .., s_m]` for `m` roots, read off the expanded product by Vieta:
/// the coefficient of `x^(m-k)` is `(-1)^k s_k`.
pub fn elementary_symmetric<T: Ring>(roots: &[T], zero: T, one: T) -> Vec<T> {
    let coeffs = expand_linear_factors(roots, zero, one);
    let m = roots.len();
    (1..=m)
        .map(|k| {
            let c = coeffs[m - k].clone();
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Same as [`elementary_symmetric`] for types with context-free identities.
pub fn elementary_symmetric_of<T: Ring + Zero + One>(roots: &[T]) -> Vec<T> {
    elementary_symmetric(roots, T::zero(), T::one())
}

/// Sum over all `k`-subsets of `roots` of the product of the subset,
/// visiting index combinations in lexicographic order.
pub fn subset_product_sum<T: Ring>(roots: &[T], k: usize, zero: T, one: T) -> T {
    let m = roots.len();
    if k > m {
        return zero;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut total = zero;
    loop {
        let term = idx
            .iter()
            .fold(one.clone(), |acc, &i| acc * roots[i].clone());
        total = total + term;
        // advance to the next combination
        let Some(pos) = (0..k).rev().find(|&j| idx[j] < m - k + j) else {
            return total;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `k`-fold sum `x + x + ... + x` by doubling.
pub fn times<T: Ring>(x: T, mut k: u64, zero: T) -> T {
    let mut acc = zero;
    let mut base = x;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + base.clone();
        }
        k >>= 1;
        if k > 0 {
            base = base.clone() + base;
        }
    }
    acc
}

/// Power sums `[p_1, .., p_m]` from elementary symmetric values
/// `[e_1, .., e_m]` via
/// `p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^(k-1) k e_k`.
///
/// Only additions and multiplications occur, so this holds in every
/// characteristic.
pub fn newton_power_sums<T: Ring>(esp: &[T], zero: T) -> Vec<T> {
    let mut power: Vec<T> = Vec::with_capacity(esp.len());
    for k in 1..=esp.len() {
        let mut acc = zero.clone();
        for i in 1..k {
            let term = esp[i - 1].clone() * power[k - i - 1].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        let last = times(esp[k - 1].clone(), k as u64, zero.clone());
        acc = if k % 2 == 1 { acc + last } else { acc - last };
        power.push(acc);
    }
    power
}

/// Upper bound on the number of subsets [`esp_naive`] will visit.
pub const NAIVE_SUBSET_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricError {
    KOutOfRange {
        k: u64,
        max: u64,
    },
    BudgetExceeded {
        q: u64,
        k: u64,
    },
    /// The closed form is only claimed for `q >= 3`.
    QTooSmall(u64),
}

impl fmt::Display for SymmetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricError::KOutOfRange { k, max } => {
                write!(f, "k = {} outside [1, {}]", k, max)
            }
            SymmetricError::BudgetExceeded { q, k } => write!(
                f,
                "C({}, {}) subsets exceeds the naive budget of {}",
                q - 1,
                k,
                NAIVE_SUBSET_BUDGET
            ),
            SymmetricError::QTooSmall(q) => write!(f, "q = {} is below 3", q),
        }
    }
}

impl std::error::Error for SymmetricError {}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_k(f: &FieldParams, k: u64) -> Result<(), SymmetricError> {
    let max = f.q() - 1;
    if k == 0 || k > max {
        Err(SymmetricError::KOutOfRange { k, max })
    } else {
        Ok(())
    }
}

/// `s_k` of the nonzero elements of `f`, summed literally over all
/// `k`-subsets. Brute-force oracle, guarded by [`NAIVE_SUBSET_BUDGET`].
pub fn esp_naive(f: &FieldParams, k: u64) -> Result<FieldElement<'_>, SymmetricError> {
    check_k(f, k)?;
    if binomial(f.q() - 1, k) > NAIVE_SUBSET_BUDGET {
        return Err(SymmetricError::BudgetExceeded { q: f.q(), k });
    }
    let units = f.enumerate_nonzero();
    Ok(subset_product_sum(&units, k as usize, f.zero(), f.one()))
}

/// `s_1 .. s_{q-1}` of the nonzero elements of one field.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricProfile<'f> {
    field: &'f FieldParams,
    values: Vec<FieldElement<'f>>,
}

impl<'f> SymmetricProfile<'f> {
    /// Wraps precomputed values; `values[k-1]` must hold `s_k`.
    pub fn from_values(
        field: &'f FieldParams,
        values: Vec<FieldElement<'f>>,
    ) -> Result<Self, SymmetricError> {
        if values.len() as u64 != field.q() - 1 {
            return Err(SymmetricError::KOutOfRange {
                k: values.len() as u64,
                max: field.q() - 1,
            });
        }
        Ok(SymmetricProfile { field, values })
    }

    /// Profile built entirely from [`esp_naive`]; fails if any `k` is over
    /// budget.
    pub fn naive(field: &'f FieldParams) -> Result<Self, SymmetricError> {
        let values = (1..field.q())
            .map(|k| esp_naive(field, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymmetricProfile { field, values })
    }

    pub fn field(&self) -> &'f FieldParams {
        self.field
    }

    pub fn values(&self) -> &[FieldElement<'f>] {
        &self.values
    }

    /// `s_k` for `1 <= k <= q - 1`.
    pub fn s(&self, k: u64) -> Option<FieldElement<'f>> {
        k.checked_sub(1)
            .and_then(|i| self.values.get(i as usize))
            .copied()
    }

    pub fn encodings(&self) -> Vec<u64> {
        self.values.iter().map(|e| e.encoding()).collect()
    }
}

impl Serialize for SymmetricProfile<'_> {
    /// List of element encodings in ascending `k`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for e in &self.values {
            seq.serialize_element(&e.encoding())?;
        }
        seq.end()
    }
}

/// Expands `prod (x - a)` over all nonzero `a` and reads off every `s_k`.
/// `O(q^2)` field multiplications.
pub fn esp_all_product(f: &FieldParams) -> SymmetricProfile<'_> {
    let units = f.enumerate_nonzero();
    let values = elementary_symmetric(&units, f.zero(), f.one());
    SymmetricProfile { field: f, values }
}

/// `p_1 .. p_{q-1}`, entry `k-1` holding the sum of `k`-th powers.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumProfile<'f> {
    field: &'f FieldParams,
    values: Vec<FieldElement<'f>>,
}

impl<'f> PowerSumProfile<'f> {
    pub fn field(&self) -> &'f FieldParams {
        self.field
    }

    pub fn values(&self) -> &[FieldElement<'f>] {
        &self.values
    }

    /// Every `p_k` computed directly from powers of the units.
    pub fn direct(field: &'f FieldParams) -> Self {
        let units = field.enumerate_nonzero();
        let mut running = units.clone();
        let mut values = Vec::with_capacity(units.len());
        for _ in 1..field.q() {
            values.push(running.iter().fold(field.zero(), |acc, &x| acc + x));
            for (r, &u) in running.iter_mut().zip(&units) {
                *r = *r * u;
            }
        }
        PowerSumProfile { field, values }
    }
}

/// `sum a^k` over nonzero `a`, each power by square-and-multiply.
pub fn power_sum_direct(f: &FieldParams, k: u64) -> Result<FieldElement<'_>, SymmetricError> {
    check_k(f, k)?;
    Ok(f.elements().skip(1).fold(f.zero(), |acc, a| acc + a.pow(k)))
}

/// Power sums from a symmetric profile by Newton's identities.
pub fn power_sums_from_esp<'f>(profile: &SymmetricProfile<'f>) -> PowerSumProfile<'f> {
    let field = profile.field;
    PowerSumProfile {
        field,
        values: newton_power_sums(&profile.values, field.zero()),
    }
}

/// The closed form `floor(k / (q-1)) * (-1)^q` embedded in the field.
pub fn predicted_sk(f: &FieldParams, k: u64) -> Result<FieldElement<'_>, SymmetricError> {
    if f.q() < 3 {
        return Err(SymmetricError::QTooSmall(f.q()));
    }
    check_k(f, k)?;
    let floor = (k / (f.q() - 1)) as i64;
    let sign = if f.q().is_multiple_of(2) { 1 } else { -1 };
    Ok(f.embed_signed_int(floor * sign))
}
