//! The free associative algebra on weighted generators, truncated by
//! total weight, and its tensor powers.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Coeff, Laurent, Rational};
use crate::error::{Error, Result};

/// A monomial: sequence of generator indices. Ordered by weight, then
/// lexicographically on the index sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    weight: u32,
    letters: Vec<u8>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(letters: Vec<u8>) -> Self {
        let weight = letters.iter().map(|&l| l as u32).sum();
        Word { weight, letters }
    }

    pub fn letter(n: u8) -> Self {
        Word::new(vec![n])
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + o.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&o.letters);
        Word { weight: self.weight + o.weight, letters }
    }

    pub fn reversed(&self) -> Word {
        Word { weight: self.weight, letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn max_letter(&self) -> u8 {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    pub fn fmt_with(&self, prefix: &str) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters.iter().map(|l| format!("{prefix}{l}")).collect::<Vec<_>>().join("*")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("a"))
    }
}

/// All words of weight exactly `w` over letters `1..=nu` (compositions of w).
pub fn words_of_weight(w: u32, nu: u32) -> Vec<Word> {
    words_of_weight_in(w, &(1..=nu.min(w.max(1)) as u8).collect::<Vec<_>>())
}

/// All words of weight exactly `w` over the given alphabet.
pub fn words_of_weight_in(w: u32, alphabet: &[u8]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, alphabet: &[u8], cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if rem == 0 {
            out.push(Word::new(cur.clone()));
            return;
        }
        for &l in alphabet {
            if (l as u32) <= rem {
                cur.push(l);
                rec(rem - l as u32, alphabet, cur, out);
                cur.pop();
            }
        }
    }
    rec(w, alphabet, &mut cur, &mut out);
    out.sort();
    out
}

fn check_ambient(a: (Option<u32>, u32), b: (Option<u32>, u32)) -> Result<()> {
    if a.0 != b.0 {
        return Err(Error::NuMismatch(a.0, b.0));
    }
    if a.1 != b.1 {
        return Err(Error::TruncMismatch(a.1, b.1));
    }
    Ok(())
}

/// Sparse element of k⟨a_1,…,a_ν⟩ truncated at total weight `trunc`.
#[derive(Clone, PartialEq)]
pub struct NcPoly<C: Coeff = Rational> {
    nu: Option<u32>,
    trunc: u32,
    terms: BTreeMap<Word, C>,
}

pub type LPoly = NcPoly<Laurent>;

impl<C: Coeff> NcPoly<C> {
    pub fn zero(nu: Option<u32>, trunc: u32) -> Self {
        NcPoly { nu, trunc, terms: BTreeMap::new() }
    }

    pub fn one(nu: Option<u32>, trunc: u32) -> Self {
        Self::monomial(nu, trunc, Word::empty(), C::one())
    }

    pub fn monomial(nu: Option<u32>, trunc: u32, w: Word, c: C) -> Self {
        let mut p = Self::zero(nu, trunc);
        p.add_term(w, &c);
        p
    }

    pub fn gen(nu: Option<u32>, trunc: u32, n: u8) -> Self {
        Self::monomial(nu, trunc, Word::letter(n), C::one())
    }

    pub fn nu(&self) -> Option<u32> {
        self.nu
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn ambient(&self) -> (Option<u32>, u32) {
        (self.nu, self.trunc)
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.nu, self.trunc)
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.nu, self.trunc)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c·w`, discarding it when the weight exceeds the truncation.
    pub fn add_term(&mut self, w: Word, c: &C) {
        if w.weight() > self.trunc || c.is_zero() {
            return;
        }
        debug_assert!(
            self.nu.map_or(true, |nu| w.max_letter() as u32 <= nu),
            "letter beyond nu in {w:?}"
        );
        match self.terms.get_mut(&w) {
            Some(slot) => {
                slot.add_assign_ref(c);
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Word::weight).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ws = self.terms.keys().map(Word::weight);
        match ws.next() {
            None => true,
            Some(w) => ws.all(|v| v == w),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        check_ambient(self.ambient(), o.ambient())?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        check_ambient(self.ambient(), o.ambient())?;
        let mut out = self.zero_like();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                if w1.weight() + w2.weight() <= self.trunc {
                    out.add_term(w1.concat(w2), &c1.mul_ref(c2));
                }
            }
        }
        Ok(out)
    }

    /// Sum; panics on mismatched ambients (use `checked_add` to handle it).
    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("NcPoly::add")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("NcPoly::mul")
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.zero_like();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), &d.mul_ref(c));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&C::from_rational(r.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(self.one_like(), |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn graded_component(&self, w: u32) -> Self {
        self.filter(|word| word.weight() == w)
    }

    pub fn truncate_to(&self, m: u32) -> Self {
        let mut out = Self::zero(self.nu, m.min(self.trunc));
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    /// Same terms re-homed in a different truncation/ambient.
    pub fn rehome(&self, nu: Option<u32>, trunc: u32) -> Self {
        let mut out = Self::zero(nu, trunc);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        NcPoly {
            nu: self.nu,
            trunc: self.trunc,
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NcPoly<D> {
        let mut out = NcPoly::zero(self.nu, self.trunc);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    /// Substitutes each letter by a polynomial (an algebra morphism).
    pub fn substitute(&self, image: impl Fn(u8) -> Self) -> Self {
        let mut cache: BTreeMap<u8, Self> = BTreeMap::new();
        let mut out = self.zero_like();
        for (w, c) in &self.terms {
            let mut acc = self.one_like();
            for &l in w.letters() {
                let img = cache.entry(l).or_insert_with(|| image(l));
                acc = acc.mul(img);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    pub fn counit(&self) -> C {
        self.coeff(&Word::empty())
    }

    pub fn fmt_with(&self, prefix: &str) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.signed_parts();
            let sign = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            s.push_str(sign);
            let mono = w.fmt_with(prefix);
            match (mag.is_empty(), w.is_empty()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&mono),
                (false, true) => s.push_str(&mag),
                (false, false) => {
                    s.push_str(&mag);
                    s.push(' ');
                    s.push_str(&mono);
                }
            }
        }
        s
    }
}

impl NcPoly<Rational> {
    pub fn to_laurent(&self) -> LPoly {
        self.map_coeffs(|c| Laurent::from_rational(c.clone()))
    }
}

impl LPoly {
    /// The ħ-free part, or an error if ħ-content is present.
    pub fn to_rational(&self) -> Result<NcPoly<Rational>> {
        let mut out = NcPoly::zero(self.nu, self.trunc);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.as_rational().ok_or(Error::HContent)?);
        }
        Ok(out)
    }
}

impl<C: Coeff> fmt::Display for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("a"))
    }
}

impl<C: Coeff> fmt::Debug for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("a"))
    }
}

/// Sparse element of H^{⊗r}, truncated on the total weight of each tuple.
#[derive(Clone, PartialEq)]
pub struct Tensor<C: Coeff = Rational> {
    rank: usize,
    trunc: u32,
    terms: BTreeMap<Vec<Word>, C>,
}

pub type LTensor = Tensor<Laurent>;

fn tuple_weight(t: &[Word]) -> u32 {
    t.iter().map(Word::weight).sum()
}

impl<C: Coeff> Tensor<C> {
    pub fn zero(rank: usize, trunc: u32) -> Self {
        Tensor { rank, trunc, terms: BTreeMap::new() }
    }

    pub fn unit(rank: usize, trunc: u32) -> Self {
        let mut t = Self::zero(rank, trunc);
        t.add_term(vec![Word::empty(); rank], &C::one());
        t
    }

    pub fn pure(factors: Vec<Word>, c: C, trunc: u32) -> Self {
        let mut t = Self::zero(factors.len(), trunc);
        t.add_term(factors, &c);
        t
    }

    /// p_1 ⊗ … ⊗ p_r.
    pub fn product_of(polys: &[&NcPoly<C>], trunc: u32) -> Self {
        let mut t = Tensor::unit(0, trunc);
        for p in polys {
            t = t.outer(&Tensor::from_poly(p));
        }
        t.trunc = trunc;
        t
    }

    pub fn from_poly(p: &NcPoly<C>) -> Self {
        let mut t = Self::zero(1, p.trunc());
        for (w, c) in p.terms() {
            t.add_term(vec![w.clone()], c);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &[Word]) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, k: Vec<Word>, c: &C) {
        debug_assert_eq!(k.len(), self.rank);
        if c.is_zero() || tuple_weight(&k) > self.trunc {
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

    pub fn add_assign(&mut self, o: &Self) {
        assert_eq!(self.rank, o.rank, "tensor rank mismatch");
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.rank, self.trunc);
        for (k, d) in &self.terms {
            out.add_term(k.clone(), &d.mul_ref(c));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&C::from_rational(r.clone()))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Tensor<D> {
        let mut out = Tensor::zero(self.rank, self.trunc);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// Componentwise product in the algebra H^{⊗r}.
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.rank != o.rank {
            return Err(Error::RankMismatch(self.rank, o.rank));
        }
        let mut out = Self::zero(self.rank, self.trunc.min(o.trunc));
        for (k1, c1) in &self.terms {
            let w1 = tuple_weight(k1);
            for (k2, c2) in &o.terms {
                if w1 + tuple_weight(k2) > out.trunc {
                    continue;
                }
                let k: Vec<Word> = k1.iter().zip(k2).map(|(a, b)| a.concat(b)).collect();
                out.add_term(k, &c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("Tensor::mul")
    }

    /// self ⊗ o, of rank r + s.
    pub fn outer(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.rank + o.rank, self.trunc.min(o.trunc));
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                out.add_term(k, &c1.mul_ref(c2));
            }
        }
        out
    }

    /// Swaps factor positions `i` and `j`.
    pub fn flip(&self, i: usize, j: usize) -> Result<Self> {
        if i >= self.rank || j >= self.rank {
            return Err(Error::Invalid(format!("flip({i},{j}) on rank {}", self.rank)));
        }
        Ok(self.permute(|k| {
            let mut k = k.to_vec();
            k.swap(i, j);
            k
        }))
    }

    pub fn permute(&self, f: impl Fn(&[Word]) -> Vec<Word>) -> Self {
        let mut out = Self::zero(self.rank, self.trunc);
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    /// Replaces factor `pos` of every term by the rank-ℓ tensor `f(word)`.
    pub fn apply_at(&self, pos: usize, f: impl Fn(&Word) -> Tensor<C>) -> Self {
        let mut cache: BTreeMap<Word, Tensor<C>> = BTreeMap::new();
        let mut out: Option<Self> = None;
        for (k, c) in &self.terms {
            let img = cache.entry(k[pos].clone()).or_insert_with(|| f(&k[pos]));
            let o = out.get_or_insert_with(|| Self::zero(self.rank - 1 + img.rank, self.trunc));
            for (ki, ci) in &img.terms {
                let mut nk = Vec::with_capacity(o.rank);
                nk.extend_from_slice(&k[..pos]);
                nk.extend(ki.iter().cloned());
                nk.extend_from_slice(&k[pos + 1..]);
                o.add_term(nk, &c.mul_ref(ci));
            }
        }
        out.unwrap_or_else(|| Self::zero(self.rank, self.trunc))
    }

    /// Multiplies all factors together (the iterated product m).
    pub fn multiply_out(&self, nu: Option<u32>) -> NcPoly<C> {
        let mut out = NcPoly::zero(nu, self.trunc);
        for (k, c) in &self.terms {
            let w = k.iter().fold(Word::empty(), |a, b| a.concat(b));
            out.add_term(w, c);
        }
        out
    }

    pub fn graded_component(&self, w: u32) -> Self {
        self.filter(|k| tuple_weight(k) == w)
    }

    pub fn filter(&self, keep: impl Fn(&[Word]) -> bool) -> Self {
        Tensor {
            rank: self.rank,
            trunc: self.trunc,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    pub fn fmt_with(&self, prefix: &str) -> String {
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
            let parts: Vec<String> = k.iter().map(|w| w.fmt_with(prefix)).collect();
            s.push('(');
            s.push_str(&parts.join(" ⊗ "));
            s.push(')');
        }
        s
    }
}

impl Tensor<Rational> {
    pub fn to_laurent(&self) -> LTensor {
        self.map_coeffs(|c| Laurent::from_rational(c.clone()))
    }
}

impl LTensor {
    pub fn to_rational(&self) -> Result<Tensor<Rational>> {
        let mut out = Tensor::zero(self.rank, self.trunc);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.as_rational().ok_or(Error::HContent)?);
        }
        Ok(out)
    }
}

impl<C: Coeff> fmt::Display for Tensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("a"))
    }
}

impl<C: Coeff> fmt::Debug for Tensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("a"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    type P = NcPoly<Rational>;

    fn g(n: u8) -> P {
        P::gen(None, 4, n)
    }

    #[test]
    fn truncation_drops_heavy_terms() {
        let p = P::gen(None, 2, 1).add(&P::gen(None, 2, 2));
        let q = p.mul(&P::gen(None, 2, 1));
        assert_eq!(q.len(), 1);
        assert_eq!(q.coeff(&Word::new(vec![1, 1])), rat(1));
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let p = P::gen(None, 3, 1);
        let q = P::gen(Some(3), 3, 1);
        assert!(matches!(p.checked_mul(&q), Err(Error::NuMismatch(..))));
        let r = P::gen(None, 4, 1);
        assert!(matches!(p.checked_add(&r), Err(Error::TruncMismatch(3, 4))));
    }

    #[test]
    fn graded_components() {
        let p = g(1).add(&g(2));
        assert_eq!(p.graded_component(2), g(2));
        let one = P::one(None, 4);
        assert_eq!(one.graded_component(0), one);
    }

    #[test]
    fn words_enumerated_by_weight() {
        assert_eq!(words_of_weight(4, 10).len(), 8);
        assert_eq!(words_of_weight(4, 2).len(), 5);
        let w = words_of_weight(2, 5);
        assert_eq!(w, vec![Word::new(vec![1, 1]), Word::new(vec![2])]);
    }

    #[test]
    fn tensor_ops() {
        let a = Tensor::pure(vec![Word::letter(1), Word::empty()], rat(1), 4);
        let b = Tensor::pure(vec![Word::empty(), Word::letter(1)], rat(1), 4);
        let ab = a.mul(&b);
        assert_eq!(ab, Tensor::pure(vec![Word::letter(1), Word::letter(1)], rat(1), 4));
        let t = Tensor::pure(vec![Word::letter(1), Word::letter(2)], rat(1), 4);
        let f = t.flip(0, 1).unwrap();
        assert_eq!(f, Tensor::pure(vec![Word::letter(2), Word::letter(1)], rat(1), 4));
        assert_eq!(f.flip(0, 1).unwrap(), t);
        let c = Tensor::pure(vec![Word::letter(1)], rat(1), 4);
        assert!(matches!(a.checked_mul(&c), Err(Error::RankMismatch(2, 1))));
    }

    #[test]
    fn printing() {
        let p = g(2).neg().add(&g(1).mul(&g(1)).scale(&rat(2)));
        assert_eq!(p.to_string(), "-a2 + 2 a1*a1");
        let t = Tensor::pure(vec![Word::letter(1), Word::letter(1)], rat(2), 4);
        assert_eq!(t.to_string(), "2 (a1 ⊗ a1)");
    }
}
