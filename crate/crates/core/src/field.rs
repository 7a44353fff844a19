//! Finite fields `GF(p^n) = Z_p[x] / (f)` for the canonical irreducible `f`.
//!
//! Elements are fixed-length coefficient arrays borrowed against the
//! [`FieldParams`] that produced them, so arithmetic needs no allocation.
//! Two elements belong to the same field iff their `(p, n)` agree, because
//! the modulus is a function of `(p, n)`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::modnum::{is_prime, Modulus};
use crate::poly::{find_canonical_irreducible, PolyZp};

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Largest extension degree representable; `2^20` bounds `n` by 20.
pub const MAX_DEGREE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    InvalidDegree,
    SizeBudgetExceeded {
        p: u64,
        n: usize,
    },
    FieldMismatch,
    ZeroInverse,
    /// Encoding or coefficient vector does not describe an element.
    InvalidElement,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{} is not prime", p),
            FieldError::InvalidDegree => write!(f, "extension degree must be at least 1"),
            FieldError::SizeBudgetExceeded { p, n } => {
                write!(
                    f,
                    "field order {}^{} exceeds the supported maximum 2^20",
                    p, n
                )
            }
            FieldError::FieldMismatch => write!(f, "elements belong to different fields"),
            FieldError::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            FieldError::InvalidElement => write!(f, "invalid field element"),
        }
    }
}

impl std::error::Error for FieldError {}

/// Parameters of one concrete model of `GF(p^n)`.
#[derive(Debug, Clone)]
pub struct FieldParams {
    p: Modulus,
    n: usize,
    q: u64,
    modulus: PolyZp,
    // lower n coefficients of the monic modulus
    reduction: [u64; MAX_DEGREE],
}

/// Builds `GF(p^n)` with the canonical irreducible modulus.
pub fn make_field(p: u64, n: usize) -> Result<FieldParams, FieldError> {
    FieldParams::new(p, n)
}

impl FieldParams {
    pub fn new(p: u64, n: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::InvalidDegree);
        }
        let q = u32::try_from(n)
            .ok()
            .and_then(|e| p.checked_pow(e))
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::SizeBudgetExceeded { p, n })?;
        let pm = Modulus::new(p).expect("prime below 2^20 is a valid modulus");
        let modulus = find_canonical_irreducible(pm, n);
        let mut reduction = [0u64; MAX_DEGREE];
        reduction[..n].copy_from_slice(&modulus.coeffs()[..n]);
        Ok(FieldParams {
            p: pm,
            n,
            q,
            modulus,
            reduction,
        })
    }

    pub fn p(&self) -> u64 {
        self.p.get()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &PolyZp {
        &self.modulus
    }

    /// Human-readable name, `GF(p^n)`.
    pub fn name(&self) -> String {
        format!("GF({}^{})", self.p, self.n)
    }

    pub fn same_field(&self, other: &FieldParams) -> bool {
        core::ptr::eq(self, other) || (self.p == other.p && self.n == other.n)
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement {
            field: self,
            coeffs: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FieldElement<'_> {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// The residue class of `x`; a generator of the field over `Z_p`.
    pub fn generator(&self) -> FieldElement<'_> {
        let poly = PolyZp::x(self.p);
        self.from_poly(&poly)
    }

    /// Element with little-endian coefficients `coeffs` (at most `n` of
    /// them, each below `p`).
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement<'_>, FieldError> {
        if coeffs.len() > self.n || coeffs.iter().any(|&c| c >= self.p.get()) {
            return Err(FieldError::InvalidElement);
        }
        let mut e = self.zero();
        for (dst, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *dst = c as u32;
        }
        Ok(e)
    }

    /// Element whose base-`p` digits are its coefficients.
    pub fn from_encoding(&self, enc: u64) -> Result<FieldElement<'_>, FieldError> {
        if enc >= self.q {
            return Err(FieldError::InvalidElement);
        }
        let p = self.p.get();
        let mut e = self.zero();
        let mut rest = enc;
        for c in e.coeffs[..self.n].iter_mut() {
            *c = (rest % p) as u32;
            rest /= p;
        }
        Ok(e)
    }

    /// Reduces an arbitrary polynomial into the field.
    pub fn from_poly(&self, f: &PolyZp) -> FieldElement<'_> {
        let mut f = f.clone();
        if f.modulus() != self.p {
            f = PolyZp::new(f.coeffs().to_vec(), self.p);
        }
        let r = f.rem(&self.modulus).expect("field modulus is nonzero");
        let mut e = self.zero();
        for (dst, &c) in e.coeffs.iter_mut().zip(r.coeffs()) {
            *dst = c as u32;
        }
        e
    }

    /// All `q` elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        (0..self.q).map(move |enc| self.from_encoding(enc).expect("enc < q"))
    }

    /// The `q - 1` nonzero elements in ascending encoding order.
    pub fn enumerate_nonzero(&self) -> Vec<FieldElement<'_>> {
        self.elements().skip(1).collect()
    }

    /// Image of `z` under the ring map `Z -> GF(p^n)`.
    pub fn embed_signed_int(&self, z: i64) -> FieldElement<'_> {
        let mut e = self.zero();
        e.coeffs[0] = self.p.residue_signed(z).value() as u32;
        e
    }
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FieldParams {}

/// An element of `GF(p^n)`: exactly `n` coefficients in `[0, p)`, the rest
/// of the backing array zero.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldParams,
    coeffs: [u32; MAX_DEGREE],
}

impl<'f> FieldElement<'f> {
    pub fn field(&self) -> &'f FieldParams {
        self.field
    }

    /// The `n` little-endian coefficients.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.field.n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `sum coeffs[i] * p^i`, in `[0, q)`.
    pub fn encoding(&self) -> u64 {
        let p = self.field.p.get();
        self.coeffs()
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * p + c as u64)
    }

    pub fn to_poly(&self) -> PolyZp {
        PolyZp::new(
            self.coeffs().iter().map(|&c| c as u64).collect(),
            self.field.p,
        )
    }

    fn check(&self, other: &FieldElement<'_>) -> Result<(), FieldError> {
        if self.field.same_field(other.field) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn checked_add(self, rhs: FieldElement<'_>) -> Result<Self, FieldError> {
        self.check(&rhs)?;
        let p = self.field.p.get() as u32;
        let mut out = self;
        for (a, &b) in out.coeffs[..self.field.n].iter_mut().zip(&rhs.coeffs) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
        Ok(out)
    }

    pub fn checked_sub(self, rhs: FieldElement<'_>) -> Result<Self, FieldError> {
        self.check(&rhs)?;
        let p = self.field.p.get() as u32;
        let mut out = self;
        for (a, &b) in out.coeffs[..self.field.n].iter_mut().zip(&rhs.coeffs) {
            *a = if *a >= b { *a - b } else { *a + p - b };
        }
        Ok(out)
    }

    pub fn checked_mul(self, rhs: FieldElement<'_>) -> Result<Self, FieldError> {
        self.check(&rhs)?;
        let field = self.field;
        let n = field.n;
        let p = field.p.get();
        if n == 1 {
            let mut out = self;
            out.coeffs[0] = (self.coeffs[0] as u64 * rhs.coeffs[0] as u64 % p) as u32;
            return Ok(out);
        }
        // Products are < 2^40 and there are at most 2n <= 40 of them per
        // slot before each top coefficient is reduced, so u64 never wraps.
        let mut wide = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            let a = self.coeffs[i] as u64;
            if a == 0 {
                continue;
            }
            for j in 0..n {
                wide[i + j] += a * rhs.coeffs[j] as u64;
            }
        }
        // x^n = -(reduction[0] + reduction[1] x + ... ) modulo f
        for top in (n..2 * n - 1).rev() {
            let c = wide[top] % p;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for j in 0..n {
                wide[top - n + j] += neg * field.reduction[j];
            }
        }
        let mut out = self;
        for (dst, &w) in out.coeffs[..n].iter_mut().zip(&wide) {
            *dst = (w % p) as u32;
        }
        Ok(out)
    }

    /// Multiplies by the integer `k`, i.e. `k`-fold addition.
    pub fn scale(self, k: u64) -> Self {
        let p = self.field.p.get();
        let k = k % p;
        let mut out = self;
        for c in out.coeffs[..self.field.n].iter_mut() {
            *c = (*c as u64 * k % p) as u32;
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// element polynomial and the field modulus.
    pub fn inv(self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let field = self.field;
        let p = field.p;
        // invariant: s_i * a = r_i (mod f)
        let (mut r0, mut r1) = (field.modulus.clone(), self.to_poly());
        let (mut s0, mut s1) = (PolyZp::zero(p), PolyZp::one(p));
        while !r1.is_zero() {
            let (quot, rem) = r0.divmod(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&quot.mul(&s1).expect("same p")).expect("same p");
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant because f is irreducible
        let lc = r0.leading().expect("gcd is nonzero");
        let lc_inv = p.residue(lc).inv().expect("nonzero mod prime").value();
        Ok(field.from_poly(&s0.scale(lc_inv)))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement<'_> {}

impl core::hash::Hash for FieldElement<'_> {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.field.p.get().hash(state);
        self.field.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field.name(), self.to_poly())
    }
}

impl fmt::Display for FieldElement<'_> {
    /// Coefficient form in the generator `x`, e.g. `2x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl Serialize for FieldElement<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.field.n))?;
        for c in self.coeffs() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'f> Add for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("field addition")
    }
}

impl<'f> Sub for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("field subtraction")
    }
}

impl<'f> Mul for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("field multiplication")
    }
}

impl<'f> Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> Self {
        let p = self.field.p.get() as u32;
        let mut out = self;
        for c in out.coeffs[..self.field.n].iter_mut() {
            if *c != 0 {
                *c = p - *c;
            }
        }
        out
    }
}
