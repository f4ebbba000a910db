//! Commutative polynomials in exponent-vector form, used for the
//! abelianization F[G] and for the commutative ħ = 0 limits.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Coeff, Rational};

/// Exponent vector; trailing zeros are trimmed so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        Mono(v)
    }

    pub fn from_exponents(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + o.0.get(i).copied().unwrap_or(0))
            .collect();
        Mono(v)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Single variable of a degree-one monomial.
    pub fn as_var(&self) -> Option<usize> {
        if self.degree() == 1 {
            self.0.iter().position(|&e| e == 1)
        } else {
            None
        }
    }

    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(name(i)),
                e => parts.push(format!("{}^{e}", name(i))),
            }
        }
        parts.join("*")
    }
}

#[derive(Clone, PartialEq, Default)]
pub struct CommPoly<C: Coeff = Rational> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> CommPoly<C> {
    pub fn zero() -> Self {
        CommPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::one(), &c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::var(i), &C::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                slot.add_assign_ref(c);
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&C::one().neg_ref()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), &d.mul_ref(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &c1.mul_ref(c2));
            }
        }
        out
    }

    /// ∂/∂(var i).
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut v = m.0.clone();
            v[i] -= 1;
            out.add_term(Mono::from_exponents(v), &c.scale(&Rational::from_integer(e.into())));
        }
        out
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.signed_parts();
            s.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            match (mag.is_empty(), m.is_one()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&m.fmt_with(name)),
                (false, true) => s.push_str(&mag),
                (false, false) => {
                    s.push_str(&mag);
                    s.push(' ');
                    s.push_str(&m.fmt_with(name));
                }
            }
        }
        s
    }
}

impl CommPoly<Rational> {
    /// Evaluates at `values[i]` for variable `i` (missing values count as 0).
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let v = values.get(i).cloned().unwrap_or_else(|| Rational::from_integer(0.into()));
                    for _ in 0..e {
                        t *= &v;
                    }
                }
            }
            acc += t;
        }
        acc
    }
}

impl<C: Coeff> fmt::Debug for CommPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|i| format!("v{i}")))
    }
}

/// Element of a tensor power of a commutative polynomial algebra.
#[derive(Clone, PartialEq, Default)]
pub struct CommTensor<C: Coeff = Rational> {
    terms: BTreeMap<Vec<Mono>, C>,
}

impl<C: Coeff> CommTensor<C> {
    pub fn zero() -> Self {
        CommTensor { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Mono>, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &[Mono]) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, k: Vec<Mono>, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(slot) => {
                slot.add_assign_ref(c);
                if slot.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), &c.neg_ref());
        }
        out
    }

    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.signed_parts();
            s.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if !mag.is_empty() {
                s.push_str(&mag);
                s.push(' ');
            }
            let parts: Vec<String> = k.iter().map(|m| m.fmt_with(name)).collect();
            s.push('(');
            s.push_str(&parts.join(" ⊗ "));
            s.push(')');
        }
        s
    }
}

impl<C: Coeff> fmt::Debug for CommTensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|i| format!("v{i}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn arithmetic_and_eval() {
        let x = CommPoly::<Rational>::var(0);
        let y = CommPoly::<Rational>::var(2);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, x.mul(&x).sub(&y.mul(&y)));
        assert_eq!(p.eval(&[rat(3), rat(0), rat(2)]), rat(5));
        assert_eq!(p.derivative(0), x.scale(&rat(2)));
    }

    #[test]
    fn mono_trimmed() {
        assert_eq!(Mono::from_exponents(vec![1, 0, 0]), Mono::var(0));
        assert_eq!(Mono::var(1).as_var(), Some(1));
    }
}
