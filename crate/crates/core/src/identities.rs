//! Executable checks of the Wilson and Wolstenholme identities.
//!
//! Every check compares two canonical value strings for exact equality;
//! field elements are rendered as their integer encoding and residues as
//! their least nonnegative representative.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::field::{FieldElement, FieldError, FieldParams};
use crate::modnum::{factorial_mod, is_prime, ModError, Modulus, Residue};
use crate::symmetric::{elementary_symmetric, esp_all_product, predicted_sk, SymmetricProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityError {
    /// The generalized Wilson identity is stated for `q >= 3`.
    QTooSmall(u64),
    /// The field Wolstenholme analogue is stated for `q >= 5`.
    QTooSmallForWolstenholme(u64),
    NotPrime(u64),
    PTooSmall {
        p: u64,
        min: u64,
    },
    KOutOfRange {
        k: u64,
        max: u64,
    },
    Modulus(ModError),
    Field(FieldError),
}

impl fmt::Display for IdentityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityError::QTooSmall(q) => {
                write!(f, "q = {} unsupported: identities require q >= 3", q)
            }
            IdentityError::QTooSmallForWolstenholme(q) => write!(
                f,
                "q = {} unsupported: the Wolstenholme analogue requires q >= 5",
                q
            ),
            IdentityError::NotPrime(p) => write!(f, "{} is not prime", p),
            IdentityError::PTooSmall { p, min } => {
                write!(f, "p = {} unsupported: requires p >= {}", p, min)
            }
            IdentityError::KOutOfRange { k, max } => write!(f, "k = {} outside [1, {}]", k, max),
            IdentityError::Modulus(e) => write!(f, "{}", e),
            IdentityError::Field(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for IdentityError {}

impl From<ModError> for IdentityError {
    fn from(e: ModError) -> Self {
        IdentityError::Modulus(e)
    }
}

impl From<FieldError> for IdentityError {
    fn from(e: FieldError) -> Self {
        IdentityError::Field(e)
    }
}

/// One exact comparison with enough parameters to rerun it alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: BTreeMap<String, u64>,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

impl CheckResult {
    pub fn new(
        name: &str,
        params: &[(&str, u64)],
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        CheckResult {
            name: name.to_owned(),
            params: params.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub params: BTreeMap<String, u64>,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn new(
        subject: impl Into<String>,
        params: &[(&str, u64)],
        checks: Vec<CheckResult>,
    ) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            subject: subject.into(),
            params: params.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            checks,
            all_pass,
        }
    }

    fn for_field(name: &str, f: &FieldParams, checks: Vec<CheckResult>) -> Self {
        VerificationReport::new(format!("{} {}", name, f.name()), &field_params(f), checks)
    }
}

fn field_params(f: &FieldParams) -> [(&'static str, u64); 3] {
    [("p", f.p()), ("n", f.n() as u64), ("q", f.q())]
}

fn enc(e: FieldElement<'_>) -> u64 {
    e.encoding()
}

fn require_q_at_least_3(f: &FieldParams) -> Result<(), IdentityError> {
    if f.q() < 3 {
        Err(IdentityError::QTooSmall(f.q()))
    } else {
        Ok(())
    }
}

fn require_prime(p: u64, min: u64) -> Result<(), IdentityError> {
    if !is_prime(p) {
        return Err(IdentityError::NotPrime(p));
    }
    if p < min {
        return Err(IdentityError::PTooSmall { p, min });
    }
    Ok(())
}

/// `s_k = floor(k/(q-1)) (-1)^q` for every `k` in `[1, q-1]`, using the
/// product-expansion profile.
pub fn verify_generalized_wilson(f: &FieldParams) -> Result<VerificationReport, IdentityError> {
    require_q_at_least_3(f)?;
    generalized_wilson_checks(&esp_all_product(f))
}

/// The generalized Wilson comparison against an already computed profile.
pub fn generalized_wilson_checks(
    profile: &SymmetricProfile<'_>,
) -> Result<VerificationReport, IdentityError> {
    let f = profile.field();
    require_q_at_least_3(f)?;
    let [p, n, q] = field_params(f);
    let checks = profile
        .values()
        .iter()
        .zip(1u64..)
        .map(|(&actual, k)| {
            let expected = predicted_sk(f, k).expect("k and q validated");
            CheckResult::new(
                "generalized_wilson",
                &[p, n, q, ("k", k)],
                enc(expected),
                enc(actual),
            )
        })
        .collect();
    Ok(VerificationReport::for_field(
        "generalized_wilson",
        f,
        checks,
    ))
}

/// Evaluates `sum_{k=1}^{q-1} (-1)^k s_k x^(q-1-k) + 1` by Horner's rule.
pub fn vieta_residual<'f>(profile: &SymmetricProfile<'f>, x: FieldElement<'f>) -> FieldElement<'f> {
    let f = profile.field();
    let acc = profile
        .values()
        .iter()
        .enumerate()
        .fold(f.zero(), |acc, (i, &s)| {
            let signed = if i % 2 == 0 { -s } else { s };
            acc * x + signed
        });
    acc + f.one()
}

/// The evaluated Vieta identity at every nonzero `x`.
pub fn verify_vieta_evaluation(f: &FieldParams) -> Result<VerificationReport, IdentityError> {
    require_q_at_least_3(f)?;
    vieta_checks(&esp_all_product(f))
}

pub fn vieta_checks(profile: &SymmetricProfile<'_>) -> Result<VerificationReport, IdentityError> {
    let f = profile.field();
    require_q_at_least_3(f)?;
    let [p, n, q] = field_params(f);
    let checks = f
        .enumerate_nonzero()
        .into_iter()
        .map(|x| {
            let r = vieta_residual(profile, x);
            CheckResult::new("vieta_evaluation", &[p, n, q, ("x", enc(x))], 0, enc(r))
        })
        .collect();
    Ok(VerificationReport::for_field("vieta_evaluation", f, checks))
}

/// `(p-1)! = -1 (mod p)`.
pub fn verify_wilson_prime(p: u64) -> Result<CheckResult, IdentityError> {
    require_prime(p, 3)?;
    let m = Modulus::new(p)?;
    let actual = factorial_mod(p - 1, m);
    Ok(CheckResult::new("wilson", &[("p", p)], p - 1, actual))
}

/// `s_1 .. s_{p-1}` of `{1, .., p-1}` in `Z_p` by product expansion.
pub fn wilson_type_profile(p: u64) -> Result<Vec<Residue>, IdentityError> {
    require_prime(p, 3)?;
    let m = Modulus::new(p)?;
    let units: Vec<_> = (1..p).map(|v| m.residue(v)).collect();
    Ok(elementary_symmetric(&units, m.zero(), m.one()))
}

fn wilson_type_check(p: u64, k: u64, actual: Residue) -> CheckResult {
    let expected = actual.modulus().residue_signed(-((k / (p - 1)) as i64));
    CheckResult::new("wilson_type", &[("k", k), ("p", p)], expected, actual)
}

/// `sum of k-fold products over {1..p-1} = -floor(k/(p-1)) (mod p)`.
pub fn verify_wilson_type(p: u64, k: u64) -> Result<CheckResult, IdentityError> {
    require_prime(p, 3)?;
    if k == 0 || k > p - 1 {
        return Err(IdentityError::KOutOfRange { k, max: p - 1 });
    }
    let profile = wilson_type_profile(p)?;
    Ok(wilson_type_check(p, k, profile[k as usize - 1]))
}

/// [`verify_wilson_type`] for every `k`, sharing one expansion.
pub fn verify_wilson_type_all(p: u64) -> Result<Vec<CheckResult>, IdentityError> {
    let profile = wilson_type_profile(p)?;
    Ok(profile
        .into_iter()
        .zip(1u64..)
        .map(|(s, k)| wilson_type_check(p, k, s))
        .collect())
}

/// `sum_k (prod_i a_i) / a_k` computed directly with field inverses.
pub fn wolstenholme_field_direct(f: &FieldParams) -> FieldElement<'_> {
    let units = f.enumerate_nonzero();
    let total = units.iter().fold(f.one(), |acc, &a| acc * a);
    units.iter().fold(f.zero(), |acc, &a| {
        acc + total * a.inv().expect("units are invertible")
    })
}

/// The field Wolstenholme analogue: the direct sum and `s_{q-2}` both
/// vanish. `actual` is the common value, or `direct|profile` if they
/// disagree.
pub fn verify_wolstenholme_field(f: &FieldParams) -> Result<CheckResult, IdentityError> {
    if f.q() < 5 {
        return Err(IdentityError::QTooSmallForWolstenholme(f.q()));
    }
    wolstenholme_field_check(&esp_all_product(f))
}

pub fn wolstenholme_field_check(
    profile: &SymmetricProfile<'_>,
) -> Result<CheckResult, IdentityError> {
    let f = profile.field();
    if f.q() < 5 {
        return Err(IdentityError::QTooSmallForWolstenholme(f.q()));
    }
    let direct = wolstenholme_field_direct(f);
    let via_profile = profile.s(f.q() - 2).expect("q >= 5");
    let actual = if direct == via_profile {
        enc(direct).to_string()
    } else {
        format!("{}|{}", enc(direct), enc(via_profile))
    };
    Ok(CheckResult::new(
        "wolstenholme_field",
        &field_params(f),
        0,
        actual,
    ))
}

/// `sum_{k=1}^{p-1} (p-1)!/k mod p^2`, each term `prod_{j != k} j` taken
/// from prefix and suffix products. No division and no big integers.
pub fn wolstenholme_sum_mod_p2(p: u64) -> Result<Residue, IdentityError> {
    let m = Modulus::new(p.checked_mul(p).ok_or(ModError::InvalidModulus(u64::MAX))?)?;
    let len = (p - 1) as usize;
    // prefix[i] = 1 * 2 * ... * i, suffix[i] = (i+1) * ... * (p-1)
    let mut prefix = vec![m.one(); len + 1];
    for i in 1..=len {
        prefix[i] = prefix[i - 1] * m.residue(i as u64);
    }
    let mut suffix = vec![m.one(); len + 1];
    for i in (0..len).rev() {
        suffix[i] = suffix[i + 1] * m.residue(i as u64 + 1);
    }
    Ok((1..=len).fold(m.zero(), |acc, k| acc + prefix[k - 1] * suffix[k]))
}

/// `sum (p-1)!/k = 0 (mod p^2)` for primes `p >= 5`. With
/// `allow_negative_control`, `p = 3` is accepted and is expected to fail.
pub fn verify_wolstenholme_classical(
    p: u64,
    allow_negative_control: bool,
) -> Result<CheckResult, IdentityError> {
    let min = if allow_negative_control { 3 } else { 5 };
    require_prime(p, min)?;
    let actual = wolstenholme_sum_mod_p2(p)?;
    Ok(CheckResult::new(
        "wolstenholme_classical",
        &[("p", p)],
        0,
        actual,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn generalized_wilson_small_fields() {
        let f9 = make_field(3, 2).unwrap();
        let r = verify_generalized_wilson(&f9).unwrap();
        assert_eq!(r.checks.len(), 8);
        assert!(r.all_pass);
        assert_eq!(r.checks[7].expected, "2");

        let f3 = make_field(3, 1).unwrap();
        let r = verify_generalized_wilson(&f3).unwrap();
        assert_eq!(r.checks.len(), 2);
        assert!(r.all_pass);
        assert_eq!(r.checks[1].actual, "2");

        let f2 = make_field(2, 1).unwrap();
        assert_eq!(
            verify_generalized_wilson(&f2),
            Err(IdentityError::QTooSmall(2))
        );
    }

    #[test]
    fn broken_profile_fails() {
        let f5 = make_field(5, 1).unwrap();
        let mut vals = esp_all_product(&f5).values().to_vec();
        vals[1] = f5.one();
        let bad = SymmetricProfile::from_values(&f5, vals).unwrap();
        let r = generalized_wilson_checks(&bad).unwrap();
        assert!(!r.all_pass);
        assert_eq!(r.checks.iter().filter(|c| !c.pass).count(), 1);
        assert!(!vieta_checks(&bad).unwrap().all_pass);
        let w = wolstenholme_field_check(
            &SymmetricProfile::from_values(&f5, vec![f5.one(); 4]).unwrap(),
        )
        .unwrap();
        assert!(!w.pass);
        assert_eq!(w.actual, "0|1");
    }

    #[test]
    fn vieta() {
        let f4 = make_field(2, 2).unwrap();
        let profile = esp_all_product(&f4);
        assert!(vieta_residual(&profile, f4.generator()).is_zero());
        let r = verify_vieta_evaluation(&f4).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.checks.len(), 3);
        let f5 = make_field(5, 1).unwrap();
        let r = verify_vieta_evaluation(&f5).unwrap();
        assert_eq!(r.checks.len(), 4);
        assert!(r.all_pass);
        assert_eq!(r.checks[0].params["x"], 1);
    }

    #[test]
    fn wilson() {
        for p in [3, 7, 13] {
            assert!(verify_wilson_prime(p).unwrap().pass);
        }
        assert_eq!(verify_wilson_prime(7).unwrap().actual, "6");
        assert_eq!(verify_wilson_prime(9), Err(IdentityError::NotPrime(9)));
        assert_eq!(
            verify_wilson_prime(2),
            Err(IdentityError::PTooSmall { p: 2, min: 3 })
        );
    }

    #[test]
    fn wilson_type() {
        let c = verify_wilson_type(5, 2).unwrap();
        assert!(c.pass);
        assert_eq!(c.actual, "0");
        let c = verify_wilson_type(5, 4).unwrap();
        assert_eq!((c.expected.as_str(), c.actual.as_str()), ("4", "4"));
        let c = verify_wilson_type(7, 6).unwrap();
        assert_eq!(c.actual, "6");
        assert!(c.pass);
        assert_eq!(
            verify_wilson_type(7, 7),
            Err(IdentityError::KOutOfRange { k: 7, max: 6 })
        );
        assert_eq!(
            verify_wilson_type(7, 0),
            Err(IdentityError::KOutOfRange { k: 0, max: 6 })
        );
        assert_eq!(verify_wilson_type(8, 1), Err(IdentityError::NotPrime(8)));
        let all = verify_wilson_type_all(11).unwrap();
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(|c| c.pass));
    }

    #[test]
    fn wolstenholme_field() {
        let c = verify_wolstenholme_field(&make_field(5, 1).unwrap()).unwrap();
        assert!(c.pass);
        assert_eq!(c.actual, "0");
        assert!(
            verify_wolstenholme_field(&make_field(7, 1).unwrap())
                .unwrap()
                .pass
        );
        assert!(
            verify_wolstenholme_field(&make_field(2, 3).unwrap())
                .unwrap()
                .pass
        );
        assert_eq!(
            verify_wolstenholme_field(&make_field(2, 2).unwrap()),
            Err(IdentityError::QTooSmallForWolstenholme(4))
        );
        assert_eq!(
            verify_wolstenholme_field(&make_field(3, 1).unwrap()),
            Err(IdentityError::QTooSmallForWolstenholme(3))
        );
        // direct sum over GF(5): 24 + 12 + 8 + 6 = 50 = 0
        assert!(wolstenholme_field_direct(&make_field(5, 1).unwrap()).is_zero());
    }

    #[test]
    fn wolstenholme_classical() {
        let c = verify_wolstenholme_classical(5, false).unwrap();
        assert!(c.pass);
        assert!(verify_wolstenholme_classical(7, false).unwrap().pass);
        assert_eq!(
            verify_wolstenholme_classical(3, false),
            Err(IdentityError::PTooSmall { p: 3, min: 5 })
        );
        let neg = verify_wolstenholme_classical(3, true).unwrap();
        assert!(!neg.pass);
        assert_eq!(neg.actual, "3");
        assert_eq!(
            verify_wolstenholme_classical(9, true),
            Err(IdentityError::NotPrime(9))
        );
        // p^2 beyond the modulus cap
        assert!(matches!(
            verify_wolstenholme_classical(40_009, false),
            Err(IdentityError::Modulus(_))
        ));
    }

    #[test]
    fn prefix_suffix_matches_double_loop() {
        for p in crate::modnum::primes_up_to(100) {
            let m = Modulus::new(p * p).unwrap();
            let direct = (1..p).fold(m.zero(), |acc, k| {
                acc + (1..p)
                    .filter(|&j| j != k)
                    .fold(m.one(), |t, j| t * m.residue(j))
            });
            assert_eq!(wolstenholme_sum_mod_p2(p).unwrap(), direct, "p={p}");
        }
    }

    #[test]
    fn check_json_shape() {
        let c = verify_wilson_prime(5).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"name":"wilson","params":{"p":5},"pass":true,"expected":"4","actual":"4"}"#
        );
        let r = VerificationReport::new("demo", &[("p", 5)], vec![c]);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["subject"], "demo");
        assert_eq!(v["all_pass"], true);
        assert_eq!(v["params"]["p"], 5);
    }
}
