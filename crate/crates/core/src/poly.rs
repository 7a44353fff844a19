//! Dense univariate polynomials over `Z_p`.
//!
//! Coefficients are little-endian (`coeffs[i]` multiplies `x^i`) and always
//! trimmed, so the zero polynomial is the empty vector and equality is
//! structural.

use core::fmt;

use crate::modnum::{is_prime, Modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    ModulusMismatch {
        left: u64,
        right: u64,
    },
    DivisionByZeroPoly,
    BothZero,
    NotMonic,
    /// Degree or modulus outside what the brute-force trial test accepts.
    BudgetExceeded,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ModulusMismatch { left, right } => {
                write!(
                    f,
                    "polynomials over different moduli: {} vs {}",
                    left, right
                )
            }
            PolyError::DivisionByZeroPoly => write!(f, "division by the zero polynomial"),
            PolyError::BothZero => write!(f, "gcd of two zero polynomials"),
            PolyError::NotMonic => write!(f, "polynomial is not monic"),
            PolyError::BudgetExceeded => {
                write!(
                    f,
                    "trial irreducibility test limited to degree <= 6 and p <= 7"
                )
            }
        }
    }
}

impl std::error::Error for PolyError {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyZp {
    coeffs: Vec<u64>,
    p: Modulus,
}

impl PolyZp {
    /// Builds a polynomial from little-endian coefficients, reducing each
    /// one mod `p` and trimming trailing zeros.
    pub fn new(coeffs: Vec<u64>, p: Modulus) -> Self {
        let m = p.get();
        let mut coeffs = coeffs;
        for c in coeffs.iter_mut() {
            *c %= m;
        }
        let mut f = PolyZp { coeffs, p };
        f.trim();
        f
    }

    pub fn zero(p: Modulus) -> Self {
        PolyZp {
            coeffs: Vec::new(),
            p,
        }
    }

    pub fn one(p: Modulus) -> Self {
        PolyZp { coeffs: vec![1], p }
    }

    /// The monomial `x`.
    pub fn x(p: Modulus) -> Self {
        PolyZp {
            coeffs: vec![0, 1],
            p,
        }
    }

    pub fn constant(c: u64, p: Modulus) -> Self {
        PolyZp::new(vec![c], p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> Modulus {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn same_modulus(&self, other: &PolyZp) -> Result<u64, PolyError> {
        if self.p == other.p {
            Ok(self.p.get())
        } else {
            Err(PolyError::ModulusMismatch {
                left: self.p.get(),
                right: other.p.get(),
            })
        }
    }

    fn inv_coeff(&self, c: u64) -> u64 {
        // The modulus is prime, so every nonzero coefficient is a unit.
        self.p
            .residue(c)
            .inv()
            .expect("nonzero coefficient invertible mod prime")
            .value()
    }

    pub fn add(&self, g: &PolyZp) -> Result<PolyZp, PolyError> {
        let m = self.same_modulus(g)?;
        let len = self.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..len).map(|i| (self.coeff(i) + g.coeff(i)) % m).collect();
        Ok(PolyZp::new(coeffs, self.p))
    }

    pub fn sub(&self, g: &PolyZp) -> Result<PolyZp, PolyError> {
        let m = self.same_modulus(g)?;
        let len = self.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.coeff(i) + m - g.coeff(i)) % m)
            .collect();
        Ok(PolyZp::new(coeffs, self.p))
    }

    /// Schoolbook product.
    pub fn mul(&self, g: &PolyZp) -> Result<PolyZp, PolyError> {
        let m = self.same_modulus(g)?;
        if self.is_zero() || g.is_zero() {
            return Ok(PolyZp::zero(self.p));
        }
        let mut out = vec![0u64; self.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b % m) % m;
            }
        }
        Ok(PolyZp::new(out, self.p))
    }

    pub fn scale(&self, c: u64) -> PolyZp {
        let m = self.p.get();
        let c = c % m;
        PolyZp::new(self.coeffs.iter().map(|&a| a * c % m).collect(), self.p)
    }

    /// Rescales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> PolyZp {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.inv_coeff(lc)),
        }
    }

    /// Long division: returns `(quotient, remainder)` with `deg r < deg g`.
    pub fn divmod(&self, g: &PolyZp) -> Result<(PolyZp, PolyZp), PolyError> {
        let m = self.same_modulus(g)?;
        let dg = g.degree().ok_or(PolyError::DivisionByZeroPoly)?;
        let Some(df) = self.degree() else {
            return Ok((PolyZp::zero(self.p), PolyZp::zero(self.p)));
        };
        if df < dg {
            return Ok((PolyZp::zero(self.p), self.clone()));
        }
        let lc_inv = self.inv_coeff(g.coeffs[dg]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; df - dg + 1];
        for shift in (0..=df - dg).rev() {
            let top = rem[shift + dg];
            if top == 0 {
                continue;
            }
            let factor = top * lc_inv % m;
            quot[shift] = factor;
            for (j, &gc) in g.coeffs.iter().enumerate() {
                let sub = factor * gc % m;
                rem[shift + j] = (rem[shift + j] + m - sub) % m;
            }
        }
        rem.truncate(dg);
        Ok((PolyZp::new(quot, self.p), PolyZp::new(rem, self.p)))
    }

    pub fn rem(&self, g: &PolyZp) -> Result<PolyZp, PolyError> {
        self.divmod(g).map(|(_, r)| r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, g: &PolyZp) -> Result<PolyZp, PolyError> {
        self.same_modulus(g)?;
        if self.is_zero() && g.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `base^e mod modpoly` by square-and-multiply, reducing at every step.
    pub fn powmod(&self, mut e: u64, modpoly: &PolyZp) -> Result<PolyZp, PolyError> {
        self.same_modulus(modpoly)?;
        match modpoly.degree() {
            None => return Err(PolyError::DivisionByZeroPoly),
            Some(0) => return Ok(PolyZp::zero(self.p)),
            Some(_) => {}
        }
        let mut base = self.rem(modpoly)?;
        let mut acc = PolyZp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modpoly)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?.rem(modpoly)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates at `x` (Horner).
    pub fn eval(&self, x: u64) -> u64 {
        let m = self.p.get();
        let x = x % m;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * x + c) % m)
    }

    /// Integer encoding `sum coeffs[i] * p^i` over all coefficients.
    pub fn encoding(&self) -> u128 {
        let m = self.p.get() as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * m + c as u128)
    }
}

impl fmt::Display for PolyZp {
    /// Descending-degree form such as `x^2+2x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{}", c)?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{}x", c)?,
                (i, 1) => write!(f, "x^{}", i)?,
                (i, c) => write!(f, "{}x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

pub fn poly_add(f: &PolyZp, g: &PolyZp) -> Result<PolyZp, PolyError> {
    f.add(g)
}

pub fn poly_sub(f: &PolyZp, g: &PolyZp) -> Result<PolyZp, PolyError> {
    f.sub(g)
}

pub fn poly_mul(f: &PolyZp, g: &PolyZp) -> Result<PolyZp, PolyError> {
    f.mul(g)
}

pub fn poly_divmod(f: &PolyZp, g: &PolyZp) -> Result<(PolyZp, PolyZp), PolyError> {
    f.divmod(g)
}

pub fn poly_gcd(f: &PolyZp, g: &PolyZp) -> Result<PolyZp, PolyError> {
    f.gcd(g)
}

pub fn poly_powmod(base: &PolyZp, e: u64, modpoly: &PolyZp) -> Result<PolyZp, PolyError> {
    base.powmod(e, modpoly)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree `n >= 1`:
/// `x^(p^n) = x (mod f)` and `gcd(x^(p^(n/t)) - x, f) = 1` for each prime
/// `t | n`.
pub fn is_irreducible(f: &PolyZp) -> Result<bool, PolyError> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let n = f.degree().expect("monic polynomial is nonzero");
    if n == 0 {
        // units are not irreducible
        return Ok(false);
    }
    let p = f.modulus();
    let x = PolyZp::x(p).rem(f)?;

    // frobenius[k] = x^(p^k) mod f, built by repeated p-th powers
    let mut frobenius = Vec::with_capacity(n + 1);
    frobenius.push(x.clone());
    for k in 1..=n {
        let next = frobenius[k - 1].powmod(p.get(), f)?;
        frobenius.push(next);
    }
    if frobenius[n] != x {
        return Ok(false);
    }
    for t in prime_divisors(n) {
        let h = frobenius[n / t].sub(&x)?;
        if h.gcd(f)?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Iterator over all monic polynomials of exact degree `d`, in ascending
/// encoding order.
pub fn monic_polys(p: Modulus, d: usize) -> impl Iterator<Item = PolyZp> {
    let m = p.get();
    let count = m.pow(d as u32);
    (0..count).map(move |mut enc| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(enc % m);
            enc /= m;
        }
        coeffs.push(1);
        PolyZp { coeffs, p }
    })
}

/// Exhaustive trial division by every monic polynomial of degree
/// `1..=deg/2`. Independent of [`is_irreducible`].
pub fn is_irreducible_trial(f: &PolyZp) -> Result<bool, PolyError> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let n = f.degree().expect("monic polynomial is nonzero");
    if n > 6 || f.modulus().get() > 7 {
        return Err(PolyError::BudgetExceeded);
    }
    if n == 0 {
        return Ok(false);
    }
    for d in 1..=n / 2 {
        for g in monic_polys(f.modulus(), d) {
            if f.rem(&g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The monic irreducible of degree `n` over `Z_p` whose lower coefficients
/// have the smallest base-`p` encoding.
///
/// # Panics
/// If `p` is not prime or `n == 0`.
pub fn find_canonical_irreducible(p: Modulus, n: usize) -> PolyZp {
    assert!(is_prime(p.get()), "{} is not prime", p);
    assert!(n >= 1, "degree must be at least 1");
    monic_polys(p, n)
        .find(|f| is_irreducible(f).expect("candidates are monic"))
        .expect("an irreducible of every degree exists")
}
