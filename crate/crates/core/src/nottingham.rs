//! Truncated tangent-to-identity series x + Σ c_n x^{n+1} under composition.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{fmt_rational, parse_rational, Rational};
use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::hopfdiff::{abelianize, Hopf};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffSeries {
    coeffs: Vec<Rational>,
}

impl DiffSeries {
    pub fn identity(bound: usize) -> Self {
        DiffSeries { coeffs: vec![Rational::zero(); bound] }
    }

    /// `coeffs[n-1]` is the coefficient of x^{n+1}.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        DiffSeries { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// a_n(f), with a_0 = 1 by convention.
    pub fn coeff(&self, n: usize) -> Rational {
        match n {
            0 => Rational::one(),
            _ => self.coeffs.get(n - 1).cloned().unwrap_or_else(Rational::zero),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Only odd powers of x occur.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| i % 2 == 1 || c.is_zero())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.bound() != o.bound() {
            return Err(Error::Invalid(format!("series bounds differ: {} vs {}", self.bound(), o.bound())));
        }
        Ok(())
    }

    /// Power series 1 + Σ c_n x^n = f(x)/x, truncated at x^M.
    fn quotient(&self) -> Vec<Rational> {
        let mut v = vec![Rational::one()];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    /// f∘g by substituting g into f and expanding.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check(g)?;
        let m = self.bound();
        // f(g)/x = Σ_r a_r x^r (g/x)^{r+1}, with a_0 = 1
        let q = g.quotient();
        let mut pw = q.clone();
        let mut acc = vec![Rational::zero(); m + 1];
        for r in 0..=m {
            let a = self.coeff(r);
            if !a.is_zero() {
                for (i, c) in pw.iter().enumerate().take(m + 1 - r) {
                    acc[i + r] += &a * c;
                }
            }
            pw = mul_trunc(&pw, &q, m);
        }
        Ok(DiffSeries { coeffs: acc[1..].to_vec() })
    }

    /// f∘g via c_k = b_k + Σ_{r=1}^k a_r Q^r_{k−r}(b).
    pub fn compose_closed_form(&self, g: &Self, hopf: &Hopf) -> Result<Self> {
        self.check(g)?;
        let m = self.bound();
        if hopf.trunc() < m as u32 {
            return Err(Error::WeightExceeded { weight: m as u32, trunc: hopf.trunc() });
        }
        let b = g.coeffs();
        let coeffs = (1..=m)
            .map(|k| {
                let mut c = g.coeff(k);
                for r in 1..=k {
                    let q = abelianize(&hopf.q_poly(r as u32, (k - r) as u32));
                    c += self.coeff(r) * q.eval(b);
                }
                c
            })
            .collect();
        Ok(DiffSeries { coeffs })
    }

    /// Compositional inverse, solving f∘g = x one coefficient at a time.
    pub fn invert(&self) -> Self {
        let m = self.bound();
        let mut g = DiffSeries::identity(m);
        for k in 1..=m {
            // coefficient k of f∘g is b_k + (terms in b_1..b_{k−1})
            let c = self.compose(&g).expect("same bound").coeff(k);
            g.coeffs[k - 1] -= c;
        }
        g
    }

    /// Class in G_ν = G/G^ν: keep a_1..a_ν.
    pub fn quotient_project(&self, nu: usize) -> Result<Self> {
        if nu > self.bound() {
            return Err(Error::Invalid(format!("ν = {nu} exceeds bound {}", self.bound())));
        }
        let mut c = self.coeffs.clone();
        for x in c.iter_mut().skip(nu) {
            *x = Rational::zero();
        }
        Ok(DiffSeries { coeffs: c })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        if j.coeffs.len() > j.bound {
            return Err(Error::Invalid("more coefficients than the bound".into()));
        }
        let mut coeffs = Vec::with_capacity(j.bound);
        for (i, [n, d]) in j.coeffs.iter().enumerate() {
            coeffs.push(parse_rational(n, d).ok_or_else(|| Error::Parse { pos: i, msg: format!("bad rational {n}/{d}") })?);
        }
        coeffs.resize(j.bound, Rational::zero());
        Ok(DiffSeries { coeffs })
    }

    pub fn to_json(&self) -> String {
        let j = SeriesJson {
            bound: self.bound(),
            coeffs: self.coeffs.iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    /// Parses text such as `x + 1/2 x^2 - 3 x^4`; higher powers than
    /// x^{bound+1} are an error.
    pub fn parse(s: &str, bound: usize) -> Result<Self> {
        let mut coeffs = vec![Rational::zero(); bound];
        let mut lin = Rational::zero();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into() };
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        let number = |i: &mut usize| -> Option<String> {
            let st = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            (*i > st).then(|| chars[st..*i].iter().collect())
        };
        let mut first = true;
        loop {
            skip_ws(&mut i);
            if i >= chars.len() {
                if first {
                    return Err(err(i, "empty series"));
                }
                break;
            }
            let mut neg = false;
            if chars[i] == '+' || chars[i] == '-' {
                neg = chars[i] == '-';
                i += 1;
                skip_ws(&mut i);
            } else if !first {
                return Err(err(i, "expected '+' or '-'"));
            }
            first = false;
            let start = i;
            let mut c = Rational::one();
            if let Some(n) = number(&mut i) {
                let mut d = "1".to_string();
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    d = number(&mut i).ok_or_else(|| err(i, "expected denominator"))?;
                }
                c = parse_rational(&n, &d).ok_or_else(|| err(start, "zero denominator"))?;
                skip_ws(&mut i);
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                    skip_ws(&mut i);
                }
            }
            if i >= chars.len() || chars[i] != 'x' {
                return Err(err(i, "expected 'x' (series must be tangent to the identity)"));
            }
            i += 1;
            let mut e = 1usize;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let p = i;
                e = number(&mut i).ok_or_else(|| err(i, "expected exponent"))?.parse().map_err(|_| err(p, "exponent too large"))?;
            }
            if neg {
                c = -c;
            }
            match e {
                0 => return Err(err(start, "constant term not allowed")),
                1 => lin += c,
                _ if e - 1 > bound => return Err(err(start, "power exceeds the bound")),
                _ => coeffs[e - 2] += c,
            }
        }
        if !lin.is_one() {
            return Err(err(0, "linear coefficient must be 1"));
        }
        Ok(DiffSeries { coeffs })
    }
}

impl fmt::Display for DiffSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let m = if mag.is_one() { String::new() } else { format!("{} ", fmt_rational(&mag)) };
            write!(f, " {sign} {m}x^{}", i + 2)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    bound: usize,
    coeffs: Vec<[String; 2]>,
}

fn mul_trunc(a: &[Rational], b: &[Rational], m: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); m + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(m + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Evaluates a polynomial in a_1, a_2, … at f's coefficients.
pub fn pair(p: &CommPoly, f: &DiffSeries) -> Result<Rational> {
    if let Some(&v) = p.variables().iter().max() {
        if v >= f.bound() {
            return Err(Error::WeightExceeded { weight: v as u32 + 1, trunc: f.bound() as u32 });
        }
    }
    Ok(p.eval(f.coeffs()))
}

/// ⟨Σ p_i ⊗ q_i, f ⊗ g⟩ for a commutative rank-2 tensor.
pub fn pair_tensor(t: &crate::commpoly::CommTensor, f: &DiffSeries, g: &DiffSeries) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (k, c) in t.terms() {
        let mut v = c.clone();
        for (m, s) in k.iter().zip([f, g]) {
            let mut p = CommPoly::zero();
            p.add_term(m.clone(), &Rational::one());
            v *= pair(&p, s)?;
        }
        acc += v;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, ratio};

    fn s(v: &[i64], m: usize) -> DiffSeries {
        let mut c: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
        c.resize(m, rat(0));
        DiffSeries::new(c)
    }

    #[test]
    fn square_and_inverse() {
        let f = s(&[1], 4);
        assert_eq!(f.compose(&f).unwrap(), s(&[2, 2, 1], 4));
        assert_eq!(f.invert(), s(&[-1, 2, -5, 14], 4));
        let h = Hopf::full(4);
        assert_eq!(f.compose_closed_form(&f, &h).unwrap(), f.compose(&f).unwrap());
    }

    #[test]
    fn text_roundtrip() {
        let f = DiffSeries::parse("x + 1/2 x^2 - 3 x^4", 4).unwrap();
        assert_eq!(f.coeffs(), &[ratio(1, 2), rat(0), rat(-3), rat(0)]);
        assert_eq!(f.to_string(), "x + 1/2 x^2 - 3 x^4");
        assert_eq!(DiffSeries::from_json(&f.to_json()).unwrap(), f);
        assert!(matches!(DiffSeries::parse("x + x^9", 4), Err(Error::Parse { .. })));
        assert!(matches!(DiffSeries::parse("2x", 4), Err(Error::Parse { .. })));
    }
}
