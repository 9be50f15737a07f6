//! The mixed-radix number system on `Z_{n!}` whose place values are the
//! falling factorials `n`, `n(n-1)`, `n(n-1)(n-2)`, ...
//!
//! A rank `a` in `0..n!` is written with `n - 1` digits `α_0 .. α_{n-2}`
//! where digit `α_i` lies in `Z_{n-i}` and carries the place value
//!
//! ```text
//! w(n, i) = n (n-1) ... (n-i+1)        (w(n, 0) = 1)
//! ```
//!
//! so that `a = Σ α_i w(n, i)`. Digits are stored little-endian (`α_0`
//! first) and printed big-endian, matching the conventional
//! `α_{n-2} ... α_0` notation.
//!
//! ```
//! use num_bigint::BigUint;
//! use shiftrank::radix::PiNumber;
//!
//! let x = PiNumber::encode(5, &BigUint::from(84u32)).unwrap();
//! assert_eq!(x.digits(), &[4, 0, 1, 1]);
//! assert_eq!(x.to_string(), "1104");
//! assert_eq!(x.decode(), BigUint::from(84u32));
//! ```

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order whose ranks all fit in a `u64` (20! < 2^63).
pub const FAST_PATH_MAX_ORDER: usize = 20;

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n!` when it fits in a `u64`.
pub fn factorial_u64(n: usize) -> Option<u64> {
    (2..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// The place value `w(n, i) = n (n-1) ... (n-i+1)`; `w(n, 0) = 1` and
/// `w(n, n-1) = w(n, n) = n!`.
pub fn falling_factorial(n: usize, i: usize) -> BigUint {
    assert!(i <= n, "falling factorial needs i <= n (got n = {n}, i = {i})");
    ((n - i + 1) as u64..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Order { n, min: 2 });
    }
    Ok(())
}

/// The base elements `w(n, 0), ..., w(n, n-2)` of the system of order `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiBase {
    n: usize,
    elements: Vec<BigUint>,
}

impl PiBase {
    pub fn new(n: usize) -> Result<Self> {
        check_order(n)?;
        let mut elements = Vec::with_capacity(n - 1);
        let mut current = BigUint::one();
        for i in 0..n - 1 {
            elements.push(current.clone());
            current *= (n - i) as u64;
        }
        Ok(PiBase { n, elements })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[BigUint] {
        &self.elements
    }

    /// The modulus `n!` of the ring the digits represent.
    pub fn modulus(&self) -> BigUint {
        factorial(self.n)
    }
}

/// An element of `Z_{n!}` written in the falling-factorial system.
///
/// Invariant: `digits.len() == n - 1` and `digits[i] < n - i`. The one
/// exception is the trivial code of order 1 (no digits, value 0), which is
/// only constructed by the permutation codec.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PiNumberRepr", into = "PiNumberRepr")]
pub struct PiNumber {
    n: usize,
    digits: Vec<u32>,
}

impl PiNumber {
    /// Builds a number from little-endian digits, validating each one.
    pub fn from_digits(n: usize, digits: Vec<u32>) -> Result<Self> {
        check_order(n)?;
        if digits.len() != n - 1 {
            return Err(Error::DigitCount {
                n,
                expected: n - 1,
                actual: digits.len(),
            });
        }
        for (index, &value) in digits.iter().enumerate() {
            let radix = n - index;
            if value as usize >= radix {
                return Err(Error::InvalidDigit {
                    index,
                    value,
                    radix,
                });
            }
        }
        Ok(PiNumber { n, digits })
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(PiNumber {
            n,
            digits: vec![0; n - 1],
        })
    }

    /// The largest value `n! - 1`, with digits `[n-1, n-2, ..., 1]`.
    pub fn max_value(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(PiNumber {
            n,
            digits: (0..n - 1).map(|i| (n - i - 1) as u32).collect(),
        })
    }

    /// The empty code of the single permutation of one symbol.
    pub(crate) fn trivial() -> Self {
        PiNumber {
            n: 1,
            digits: Vec::new(),
        }
    }

    /// Writes `a` in the system of order `n` by repeated division by
    /// `n, n-1, ..., 2`.
    pub fn encode(n: usize, a: &BigUint) -> Result<Self> {
        check_order(n)?;
        if n <= FAST_PATH_MAX_ORDER {
            return match a.to_u64() {
                Some(small) => Self::encode_u64(n, small),
                None => Err(Error::RankOutOfRange { n, rank: a.clone() }),
            };
        }
        if *a >= factorial(n) {
            return Err(Error::RankOutOfRange { n, rank: a.clone() });
        }
        let mut rest = a.clone();
        let mut digits = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let (quotient, digit) = rest.div_rem(&BigUint::from(n - i));
            digits.push(digit.to_u32().expect("digit below radix"));
            rest = quotient;
        }
        Ok(PiNumber { n, digits })
    }

    /// Same as [`PiNumber::encode`] for ranks held in a `u64`.
    pub fn encode_u64(n: usize, a: u64) -> Result<Self> {
        check_order(n)?;
        if let Some(modulus) = factorial_u64(n) {
            if a >= modulus {
                return Err(Error::RankOutOfRange {
                    n,
                    rank: BigUint::from(a),
                });
            }
        }
        let mut rest = a;
        let mut digits = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let radix = (n - i) as u64;
            digits.push((rest % radix) as u32);
            rest /= radix;
        }
        Ok(PiNumber { n, digits })
    }

    /// The natural integer `Σ α_i w(n, i)` in `0..n!`.
    pub fn decode(&self) -> BigUint {
        if let Some(small) = self.to_u64() {
            return BigUint::from(small);
        }
        let mut value = BigUint::zero();
        for i in (0..self.digits.len()).rev() {
            value = value * (self.n - i) as u64 + self.digits[i];
        }
        value
    }

    /// The value as a `u64`, or `None` on overflow (never for `n <= 20`).
    pub fn to_u64(&self) -> Option<u64> {
        let mut value = 0u64;
        for i in (0..self.digits.len()).rev() {
            value = value
                .checked_mul((self.n - i) as u64)?
                .checked_add(self.digits[i] as u64)?;
        }
        Some(value)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Little-endian digits, `α_0` first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u32 {
        self.digits[i]
    }

    /// The radix `n - i` of digit `i`.
    pub fn radix(&self, i: usize) -> usize {
        self.n - i
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// `true` when this is `n! - 1`, the last rank.
    pub fn is_max(&self) -> bool {
        self.digits
            .iter()
            .enumerate()
            .all(|(i, &d)| d as usize == self.n - i - 1)
    }

    fn check_same_order(&self, other: &PiNumber) -> Result<()> {
        if self.n != other.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Digitwise addition modulo `n!`; the carry out of the last digit is
    /// dropped.
    pub fn add(&self, other: &PiNumber) -> Result<PiNumber> {
        self.check_same_order(other)?;
        let mut carry = 0u32;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .enumerate()
            .map(|(i, (&x, &y))| {
                let radix = (self.n - i) as u32;
                let sum = x + y + carry;
                carry = sum / radix;
                sum % radix
            })
            .collect();
        Ok(PiNumber {
            n: self.n,
            digits,
        })
    }

    /// `self + 1` modulo `n!`.
    pub fn increment(&self) -> PiNumber {
        let mut next = self.clone();
        next.increment_in_place();
        next
    }

    /// Adds one in place and returns how many low digits rolled over to
    /// zero. A return value of `n - 1` means the number wrapped to zero;
    /// otherwise digit number `rolled` was the one that absorbed the carry.
    pub fn increment_in_place(&mut self) -> usize {
        for i in 0..self.digits.len() {
            let radix = (self.n - i) as u32;
            if self.digits[i] + 1 < radix {
                self.digits[i] += 1;
                return i;
            }
            self.digits[i] = 0;
        }
        self.digits.len()
    }

    /// The number `y` with `y_i = (n - i - 1) - x_i`, so that
    /// `x + y = n! - 1`.
    pub fn complement(&self) -> PiNumber {
        let digits = self
            .digits
            .iter()
            .enumerate()
            .map(|(i, &d)| (self.n - i - 1) as u32 - d)
            .collect();
        PiNumber {
            n: self.n,
            digits,
        }
    }

    /// Product modulo `n!`, computed through the integer values.
    pub fn multiply(&self, other: &PiNumber) -> Result<PiNumber> {
        self.check_same_order(other)?;
        let product = (self.decode() * other.decode()) % factorial(self.n);
        PiNumber::encode(self.n, &product)
    }

    /// Machine-readable form: the display form followed by `_w`.
    pub fn to_machine_string(&self) -> String {
        format!("{self}_w")
    }

    /// Parses the big-endian display form (with or without the `_w`
    /// suffix, dotted or concatenated).
    pub fn parse(n: usize, text: &str) -> Result<PiNumber> {
        let body = text.trim().trim_end_matches("_w");
        let mut digits: Vec<u32> = if body.contains('.') {
            body.split('.')
                .map(|part| {
                    part.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad digit `{part}` in `{text}`")))
                })
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit `{c}` in `{text}`")))
                })
                .collect::<Result<_>>()?
        };
        digits.reverse();
        PiNumber::from_digits(n, digits)
    }
}

impl fmt::Display for PiNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Radix of α_0 is n, the largest of all digits.
        let dotted = self.n > 10;
        for (pos, d) in self.digits.iter().rev().enumerate() {
            if dotted && pos > 0 {
                f.write_str(".")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PiNumberRepr {
    n: usize,
    digits: Vec<u32>,
    value: String,
}

impl From<PiNumber> for PiNumberRepr {
    fn from(x: PiNumber) -> Self {
        PiNumberRepr {
            value: x.decode().to_string(),
            n: x.n,
            digits: x.digits,
        }
    }
}

impl TryFrom<PiNumberRepr> for PiNumber {
    type Error = Error;

    fn try_from(repr: PiNumberRepr) -> Result<Self> {
        let x = PiNumber::from_digits(repr.n, repr.digits)?;
        if x.decode().to_string() != repr.value {
            return Err(Error::Parse(format!(
                "value {} does not match digits {}",
                repr.value, x
            )));
        }
        Ok(x)
    }
}

/// One identity evaluated over the natural integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub cases: usize,
    pub passed: bool,
    /// The first failing case, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn run_identity(
    name: &'static str,
    cases: impl IntoIterator<Item = (String, BigUint, BigUint)>,
) -> IdentityCheck {
    let mut count = 0;
    let mut failure = None;
    for (label, lhs, rhs) in cases {
        count += 1;
        if failure.is_none() && lhs != rhs {
            failure = Some(format!("{label}: {lhs} != {rhs}"));
        }
    }
    IdentityCheck {
        name,
        cases: count,
        passed: failure.is_none(),
        failure,
    }
}

/// Checks the base-element identities of order `n` as exact integer
/// equalities:
///
/// * `base recurrence`: `w(n, 0) = 1` and `w(n, i+1) = (n-i) w(n, i)`;
/// * `product rule`: `w(n, i+k) = w(n-k, i) w(n, k)` for `i + k <= n - 1`;
/// * `partial sums`: `Σ_{i<k} (n-i-1) w(n, i) = w(n, k) - 1` for `k = 1..n-2`;
/// * `full sum`: `Σ_{i<=n-2} (n-i-1) w(n, i) = n! - 1`;
/// * `factorial sum`: `Σ_{i=1}^{n-1} i * i! = n! - 1`.
pub fn check_identities(n: usize) -> Result<IdentityReport> {
    check_order(n)?;
    let base = PiBase::new(n)?;
    let w = base.elements();
    let n_fact = factorial(n);
    let one = BigUint::one();

    let mut recurrence = vec![("w(n,0)".to_string(), w[0].clone(), one.clone())];
    for i in 0..n.saturating_sub(2) {
        recurrence.push((
            format!("w({n},{})", i + 1),
            w[i + 1].clone(),
            &w[i] * (n - i) as u64,
        ));
    }

    let mut product = Vec::new();
    for k in 0..n {
        for i in 0..n - k {
            product.push((
                format!("i={i}, k={k}"),
                falling_factorial(n, i + k),
                falling_factorial(n - k, i) * falling_factorial(n, k),
            ));
        }
    }

    let weighted = |upto: usize| -> BigUint {
        (0..upto)
            .map(|i| falling_factorial(n, i) * (n - i - 1) as u64)
            .sum()
    };
    let partial: Vec<_> = (1..n - 1)
        .map(|k| {
            (
                format!("k={k}"),
                weighted(k),
                falling_factorial(n, k) - &one,
            )
        })
        .collect();

    let full = vec![(format!("n={n}"), weighted(n - 1), &n_fact - &one)];

    let factorial_sum: BigUint = (1..n).map(|i| factorial(i) * i as u64).sum();
    let fact = vec![(format!("n={n}"), factorial_sum, &n_fact - &one)];

    Ok(IdentityReport {
        n,
        checks: vec![
            run_identity("base recurrence", recurrence),
            run_identity("product rule", product),
            run_identity("partial sums", partial),
            run_identity("full sum", full),
            run_identity("factorial sum", fact),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn num(n: usize, a: u64) -> PiNumber {
        PiNumber::encode_u64(n, a).unwrap()
    }

    #[test]
    fn encode_worked_examples() {
        assert_eq!(num(5, 84).digits(), &[4, 0, 1, 1]);
        assert_eq!(num(5, 84).to_string(), "1104");
        assert_eq!(num(5, 35).digits(), &[0, 3, 1, 0]);
        assert_eq!(num(5, 35).to_string(), "0130");
        assert_eq!(num(4, 23).digits(), &[3, 2, 1]);
        for n in 2..12 {
            assert!(num(n, 0).is_zero());
        }
    }

    #[test]
    fn decode_worked_examples() {
        let x = PiNumber::from_digits(5, vec![4, 0, 1, 1]).unwrap();
        assert_eq!(x.decode(), BigUint::from(84u32));
        let y = PiNumber::from_digits(4, vec![3, 2, 1]).unwrap();
        assert_eq!(y.decode(), BigUint::from(23u32));
        assert_eq!(PiNumber::zero(7).unwrap().decode(), BigUint::zero());
    }

    #[test]
    fn encode_rejects_bad_input() {
        assert_eq!(
            PiNumber::encode_u64(4, 24),
            Err(Error::RankOutOfRange {
                n: 4,
                rank: BigUint::from(24u32)
            })
        );
        assert!(matches!(
            PiNumber::encode_u64(1, 0),
            Err(Error::Order { n: 1, .. })
        ));
        assert!(PiNumber::encode(25, &factorial(25)).is_err());
        assert!(PiNumber::encode(25, &(factorial(25) - 1u32)).is_ok());
    }

    #[test]
    fn from_digits_validates() {
        assert!(matches!(
            PiNumber::from_digits(4, vec![4, 0, 0]),
            Err(Error::InvalidDigit { index: 0, .. })
        ));
        assert!(matches!(
            PiNumber::from_digits(4, vec![0, 0, 2]),
            Err(Error::InvalidDigit { index: 2, .. })
        ));
        assert!(matches!(
            PiNumber::from_digits(4, vec![0, 0]),
            Err(Error::DigitCount { .. })
        ));
    }

    #[test]
    fn add_examples() {
        let sum = num(5, 84).add(&num(5, 35)).unwrap();
        assert_eq!(sum.digits(), &[4, 3, 2, 1]);
        assert_eq!(sum.decode(), BigUint::from(119u32));
        assert_eq!(num(6, 321).add(&num(6, 0)).unwrap(), num(6, 321));
        let wrap = num(4, 23).add(&num(4, 1)).unwrap();
        assert_eq!(wrap.digits(), &[0, 0, 0]);
        assert!(num(4, 1).add(&num(5, 1)).is_err());
    }

    #[test]
    fn increment_examples() {
        let top = PiNumber::from_digits(5, vec![4, 3, 2, 1]).unwrap();
        assert!(top.increment().is_zero());
        let three = PiNumber::from_digits(4, vec![3, 0, 0]).unwrap();
        assert_eq!(three.increment().digits(), &[0, 1, 0]);
        assert_eq!(PiNumber::zero(6).unwrap().increment().digits(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn increment_reports_rollover_depth() {
        let mut x = num(4, 11); // digits [3, 2, 0]
        assert_eq!(x.increment_in_place(), 2);
        assert_eq!(x, num(4, 12));
        let mut top = PiNumber::max_value(4).unwrap();
        assert_eq!(top.increment_in_place(), 3);
        assert!(top.is_zero());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(num(5, 84).complement(), num(5, 35));
        let x = num(7, 1234);
        assert_eq!(x.complement().complement(), x);
        let c = PiNumber::zero(6).unwrap().complement();
        assert_eq!(c.digits(), &[5, 4, 3, 2, 1]);
        assert_eq!(c.decode(), BigUint::from(719u32));
    }

    #[test]
    fn multiply_examples() {
        let p = num(5, 84).multiply(&num(5, 35)).unwrap();
        assert_eq!(p.digits(), &[0, 0, 0, 1]);
        assert_eq!(p.decode(), BigUint::from(60u32));
        let x = num(6, 517);
        assert_eq!(x.multiply(&num(6, 1)).unwrap(), x);
        assert!(x.multiply(&num(6, 0)).unwrap().is_zero());
    }

    #[test]
    fn exhaustive_small_orders() {
        for n in 2..=7usize {
            let modulus = factorial_u64(n).unwrap();
            let mut seen = HashSet::new();
            let mut running = PiNumber::zero(n).unwrap();
            for a in 0..modulus {
                let x = num(n, a);
                assert_eq!(x.to_u64(), Some(a));
                assert_eq!(running, x, "increment chain diverged at n={n}, a={a}");
                assert!(seen.insert(x.digits().to_vec()));
                let c = x.complement();
                assert_eq!(a + c.to_u64().unwrap(), modulus - 1);
                running.increment_in_place();
            }
            assert!(running.is_zero());
            assert_eq!(seen.len() as u64, modulus);
        }
    }

    #[test]
    fn ring_laws_exhaustive_to_five() {
        for n in 2..=5usize {
            let modulus = factorial_u64(n).unwrap();
            for a in 0..modulus {
                for b in 0..modulus {
                    let (x, y) = (num(n, a), num(n, b));
                    assert_eq!(x.add(&y).unwrap().to_u64(), Some((a + b) % modulus));
                    assert_eq!(x.multiply(&y).unwrap().to_u64(), Some(a * b % modulus));
                }
            }
        }
    }

    #[test]
    fn display_switches_to_dots_above_ten() {
        let x = PiNumber::encode(11, &BigUint::from(39_916_799u64)).unwrap();
        assert_eq!(x.to_string(), "1.2.3.4.5.6.7.8.9.10");
        assert_eq!(num(5, 84).to_machine_string(), "1104_w");
        assert_eq!(PiNumber::parse(5, "1104_w").unwrap(), num(5, 84));
        assert_eq!(PiNumber::parse(11, "1.2.3.4.5.6.7.8.9.10").unwrap(), x);
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(num(5, 84)).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"n": 5, "digits": [4, 0, 1, 1], "value": "84"})
        );
        let back: PiNumber = serde_json::from_value(json).unwrap();
        assert_eq!(back, num(5, 84));
        let bad = serde_json::json!({"n": 5, "digits": [4, 0, 1, 1], "value": "85"});
        assert!(serde_json::from_value::<PiNumber>(bad).is_err());
    }

    #[test]
    fn base_elements() {
        let base = PiBase::new(5).unwrap();
        let expected: Vec<BigUint> = [1u32, 5, 20, 60].iter().map(|&v| v.into()).collect();
        assert_eq!(base.elements(), expected.as_slice());
        assert_eq!(base.modulus(), BigUint::from(120u32));
        assert!(PiBase::new(1).is_err());
    }

    #[test]
    fn identity_examples() {
        // Partial sum at n = 5, k = 2: 4*1 + 3*5 = 19 = w(5,2) - 1.
        let w = PiBase::new(5).unwrap();
        let lhs = &w.elements()[0] * 4u32 + &w.elements()[1] * 3u32;
        assert_eq!(lhs, BigUint::from(19u32));
        assert_eq!(falling_factorial(5, 2) - 1u32, BigUint::from(19u32));
        // n = 4: 1*1! + 2*2! + 3*3! = 23.
        assert_eq!(1 + 2 * 2 + 3 * 6, 23);

        for n in 2..=16 {
            let report = check_identities(n).unwrap();
            assert!(report.all_passed(), "{report:?}");
        }
        let two = check_identities(2).unwrap();
        assert!(two.checks.iter().find(|c| c.name == "partial sums").unwrap().cases == 0);
    }
}
