//! Exact coefficients: rationals and Laurent polynomials in ħ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn binomial(n: i64, k: i64) -> Rational {
    Rational::from_integer(binom_int(n, k))
}

pub fn binom_int(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// `p`, `-p/q`, ... as used by every text format in the crate.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(num: &str, den: &str) -> Option<Rational> {
    let n: BigInt = num.trim().parse().ok()?;
    let d: BigInt = den.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Ring operations shared by the coefficient types used in polynomials.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + fmt::Display + SignedParts + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, o: &Self);
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// True when the printed form needs parentheses before a monomial.
    fn is_compound(&self) -> bool {
        false
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

/// Rational Laurent polynomial in ħ; exponents of either sign.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, Rational>,
}

impl Laurent {
    pub fn monomial(c: Rational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    pub fn hpow(e: i32) -> Self {
        Self::monomial(One::one(), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Zero::zero)
    }

    /// Lowest exponent present; `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn shift(&self, e: i32) -> Self {
        Laurent { terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    /// Constant value if no ħ-content.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Zero::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn eval_one(&self) -> Rational {
        self.terms.values().fold(Zero::zero(), |a: Rational, c| a + c)
    }

    pub fn insert_add(&mut self, e: i32, c: &Rational) {
        let slot = self.terms.entry(e).or_insert_with(Zero::zero);
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&e);
        }
    }
}

impl Coeff for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn one() -> Self {
        Laurent::hpow(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        for (e, c) in &o.terms {
            self.insert_add(*e, c);
        }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Laurent::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.insert_add(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn from_rational(r: Rational) -> Self {
        Laurent::monomial(r, 0)
    }
    fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return Laurent::default();
        }
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }
    fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let hp = match *e {
                0 => String::new(),
                1 => "h".to_string(),
                e => format!("h^{e}"),
            };
            match (One::is_one(&abs), hp.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{hp}")?,
                (false, true) => write!(f, "{}", fmt_rational(&abs))?,
                (false, false) => write!(f, "{} {hp}", fmt_rational(&abs))?,
            }
        }
        Ok(())
    }
}

/// Small integer view, for indices carried in rationals.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn lcm_denominators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |l, r| l.lcm(r.denom()))
}

impl Laurent {
    pub fn add(mut self, o: &Self) -> Self {
        self.add_assign_ref(o);
        self
    }
}

/// Sign and magnitude of a coefficient as printed in front of a monomial;
/// the magnitude string is empty when it is exactly one.
pub trait SignedParts {
    fn signed_parts(&self) -> (bool, String);
}

impl SignedParts for Rational {
    fn signed_parts(&self) -> (bool, String) {
        let a = self.abs();
        (self.is_negative(), if One::is_one(&a) { String::new() } else { fmt_rational(&a) })
    }
}

impl SignedParts for Laurent {
    fn signed_parts(&self) -> (bool, String) {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            let mag = Laurent::monomial(c.abs(), *e);
            let s = if Coeff::is_one(&mag) { String::new() } else { mag.to_string() };
            (c.is_negative(), s)
        } else {
            (false, format!("({self})"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arith() {
        let a = Laurent::monomial(rat(2), -1).add(&Laurent::hpow(1));
        let b = Laurent::hpow(1);
        let p = a.mul_ref(&b);
        assert_eq!(p.coeff(0), rat(2));
        assert_eq!(p.coeff(2), rat(1));
        assert_eq!(p.valuation(), Some(0));
        let z = a.clone().add(&a.neg_ref());
        assert!(Coeff::is_zero(&z));
        assert_eq!(format!("{}", a), "h + 2 h^-1");
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_int(10, 3), BigInt::from(120));
        assert_eq!(binom_int(3, 5), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn rational_reduced() {
        let r = ratio(4, -6);
        assert_eq!(fmt_rational(&r), "-2/3");
    }
}
