//! The Hopf algebras H_ν and K_ν: the P, Q, Z polynomial families, the
//! coproduct, counit and antipode, the α change of variables, the
//! abelianization onto F[G_ν] and the projection H ↠ K.

use std::collections::HashMap;
use std::sync::Mutex;


use crate::coeff::{binomial, rat, Coeff, Rational};
use crate::commpoly::{CommPoly, CommTensor, Mono};
use crate::error::{Error, Result};
use crate::ncpoly::{NcPoly, Tensor, Word};

type P = NcPoly<Rational>;
type T = Tensor<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// H_ν, generators a_1, a_2, …
    Full,
    /// K_ν, generators a_2, a_4, …
    Odd,
}

impl Family {
    /// Index stride: generator a_{s·n} plays the role of the n-th generator.
    pub fn stride(self) -> u32 {
        match self {
            Family::Full => 1,
            Family::Odd => 2,
        }
    }

    /// Upper binomial argument in Q^ℓ: ℓ+1 for H, 2ℓ+1 for K.
    fn binom_top(self, l: u32) -> i64 {
        match self {
            Family::Full => l as i64 + 1,
            Family::Odd => 2 * l as i64 + 1,
        }
    }
}

/// H_ν or K_ν at truncation weight N, with memo tables.
pub struct Hopf {
    family: Family,
    nu: Option<u32>,
    trunc: u32,
    delta_words: Mutex<HashMap<Word, T>>,
    antipode_gens: Mutex<HashMap<u8, P>>,
}

impl std::fmt::Debug for Hopf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hopf({:?}, nu={:?}, N={})", self.family, self.nu, self.trunc)
    }
}

impl Clone for Hopf {
    fn clone(&self) -> Self {
        Hopf::new(self.family, self.nu, self.trunc)
    }
}

impl Hopf {
    pub fn new(family: Family, nu: Option<u32>, trunc: u32) -> Self {
        assert!(trunc <= 200, "truncation weight beyond letter range");
        Hopf {
            family,
            nu,
            trunc,
            delta_words: Mutex::new(HashMap::new()),
            antipode_gens: Mutex::new(HashMap::new()),
        }
    }

    pub fn full(trunc: u32) -> Self {
        Self::new(Family::Full, None, trunc)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nu(&self) -> Option<u32> {
        self.nu
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Generator indices of weight ≤ N.
    pub fn generators(&self) -> Vec<u8> {
        let top = self.nu.unwrap_or(self.trunc).min(self.trunc);
        (1..=top).filter(|n| n % self.family.stride() == 0).map(|n| n as u8).collect()
    }

    pub fn is_generator(&self, n: u8) -> bool {
        n > 0 && self.generators().contains(&n)
    }

    pub fn zero(&self) -> P {
        P::zero(self.nu, self.trunc)
    }

    pub fn one(&self) -> P {
        P::one(self.nu, self.trunc)
    }

    pub fn gen(&self, n: u8) -> P {
        P::gen(self.nu, self.trunc, n)
    }

    pub fn word(&self, letters: &[u8]) -> P {
        P::monomial(self.nu, self.trunc, Word::new(letters.to_vec()), rat(1))
    }

    /// Basis of the weight-w component: all words over the generators.
    pub fn basis(&self, w: u32) -> Vec<Word> {
        crate::ncpoly::words_of_weight_in(w, &self.generators())
    }

    /// Checks that every letter is a generator of this presentation.
    pub fn validate<C: Coeff>(&self, p: &NcPoly<C>) -> Result<()> {
        for (w, _) in p.terms() {
            if let Some(&l) = w.letters().iter().find(|&&l| !self.is_generator(l)) {
                return Err(Error::Invalid(format!("a{l} is not a generator of {self:?}")));
            }
        }
        Ok(())
    }

    /// P^(k)_t: sum over compositions of t into k positive parts (letters
    /// scaled by the family stride).
    pub fn p_poly(&self, t: u32, k: u32) -> Result<P> {
        if k == 0 || k > t {
            return Err(Error::Invalid(format!("P^({k})_{t} needs 1 ≤ k ≤ t")));
        }
        let s = self.family.stride();
        let mut out = self.zero();
        let mut cur = Vec::new();
        fn rec(rem: u32, parts: u32, s: u32, cur: &mut Vec<u8>, out: &mut P) {
            if parts == 0 {
                if rem == 0 {
                    out.add_term(Word::new(cur.clone()), &rat(1));
                }
                return;
            }
            for j in 1..=rem.saturating_sub(parts - 1) {
                cur.push((j * s) as u8);
                rec(rem - j, parts - 1, s, cur, out);
                cur.pop();
            }
        }
        rec(t, k, s, &mut cur, &mut out);
        Ok(out)
    }

    /// Q^ℓ_t = Σ_k C(ℓ+1, k) P^(k)_t (binomial C(2ℓ+1, k) for K); Q^ℓ_0 = 1.
    pub fn q_poly(&self, l: u32, t: u32) -> P {
        if t == 0 {
            return self.one();
        }
        let top = self.family.binom_top(l);
        let mut out = self.zero();
        for k in 1..=t {
            let b = binomial(top, k as i64);
            if b != Rational::from_integer(0.into()) {
                out = out.add(&self.p_poly(t, k).expect("1 ≤ k ≤ t").scale(&b));
            }
        }
        out
    }

    /// Z^ℓ_t = Q^ℓ_t − C(ℓ+t, t) a_1^t, in the a-generators (H only).
    pub fn z_poly(&self, l: u32, t: u32) -> Result<P> {
        if t == 0 {
            return Err(Error::Invalid("Z^ℓ_t needs t ≥ 1".into()));
        }
        let a1t = self.gen(1).pow(t);
        Ok(self.q_poly(l, t).sub(&a1t.scale(&binomial((l + t) as i64, t as i64))))
    }

    /// Δ(a_n) from the defining formula.
    pub fn coproduct_gen(&self, n: u8) -> T {
        let (tr, s) = (self.trunc, self.family.stride() as u8);
        let a = self.gen(n);
        let one = self.one();
        let mut t = T::product_of(&[&a, &one], tr).add(&T::product_of(&[&one, &a], tr));
        let m_top = n / s;
        for m in 1..m_top {
            let q = self.q_poly(m as u32, (m_top - m) as u32);
            t.add_assign(&T::product_of(&[&self.gen(m * s), &q], tr));
        }
        t
    }

    fn coproduct_word(&self, w: &Word) -> T {
        if let Some(t) = self.delta_words.lock().unwrap().get(w) {
            return t.clone();
        }
        let t = match w.len() {
            0 => T::unit(2, self.trunc),
            1 => self.coproduct_gen(w.letters()[0]),
            n => {
                let (l, r) = w.letters().split_at(n / 2);
                self.coproduct_word(&Word::new(l.to_vec())).mul(&self.coproduct_word(&Word::new(r.to_vec())))
            }
        };
        self.delta_words.lock().unwrap().insert(w.clone(), t.clone());
        t
    }

    /// Δ, extended multiplicatively from generators.
    pub fn coproduct<C: Coeff>(&self, p: &NcPoly<C>) -> Tensor<C> {
        let mut out = Tensor::zero(2, self.trunc);
        for (w, c) in p.terms() {
            let d = self.coproduct_word(w);
            for (k, e) in d.terms() {
                out.add_term(k.clone(), &c.scale(e));
            }
        }
        out
    }

    pub fn counit<C: Coeff>(&self, p: &NcPoly<C>) -> C {
        p.counit()
    }

    /// S(a_n) = −a_n − Σ_m a_m S(Q^m_{n−m}), memoized.
    pub fn antipode_gen(&self, n: u8) -> P {
        if let Some(p) = self.antipode_gens.lock().unwrap().get(&n) {
            return p.clone();
        }
        let s = self.family.stride() as u8;
        let mut out = self.gen(n).neg();
        for m in 1..n / s {
            let q = self.q_poly(m as u32, (n / s - m) as u32);
            out = out.sub(&self.gen(m * s).mul(&self.antipode(&q)));
        }
        self.antipode_gens.lock().unwrap().insert(n, out.clone());
        out
    }

    /// The second recursion S(a_n) = −a_n − Σ_m S(a_m) Q^m_{n−m}; kept only
    /// as an independent cross-check of `antipode_gen`.
    pub fn antipode_gen_right(&self, n: u8) -> P {
        let s = self.family.stride() as u8;
        let mut out = self.gen(n).neg();
        for m in 1..n / s {
            let q = self.q_poly(m as u32, (n / s - m) as u32);
            out = out.sub(&self.antipode_gen_right(m * s).mul(&q));
        }
        out
    }

    /// S, extended as an algebra anti-morphism.
    pub fn antipode<C: Coeff>(&self, p: &NcPoly<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero(self.nu, self.trunc);
        for (w, c) in p.terms() {
            let mut acc = self.one();
            for &l in w.letters().iter().rev() {
                acc = acc.mul(&self.antipode_gen(l));
            }
            for (v, e) in acc.terms() {
                out.add_term(v.clone(), &c.scale(e));
            }
        }
        out
    }

    /// Δ^op = flip ∘ Δ.
    pub fn coproduct_op<C: Coeff>(&self, p: &NcPoly<C>) -> Tensor<C> {
        self.coproduct(p).flip(0, 1).expect("rank 2")
    }

    /// Applies Δ at factor `pos` of a tensor (raising the rank by one).
    pub fn coproduct_at<C: Coeff>(&self, t: &Tensor<C>, pos: usize) -> Tensor<C> {
        t.apply_at(pos, |w| {
            let d = self.coproduct_word(w);
            d.map_coeffs(|c| C::from_rational(c.clone()))
        })
    }

    /// Multiplication m: H⊗H → H.
    pub fn multiply<C: Coeff>(&self, t: &Tensor<C>) -> NcPoly<C> {
        t.multiply_out(self.nu)
    }

    /// Projection H ↠ K: odd generators go to zero.
    pub fn odd_projection<C: Coeff>(p: &NcPoly<C>) -> NcPoly<C> {
        p.filter(|w| w.letters().iter().all(|l| l % 2 == 0))
    }

    pub fn odd_projection_tensor<C: Coeff>(t: &Tensor<C>) -> Tensor<C> {
        t.filter(|k| k.iter().all(|w| w.letters().iter().all(|l| l % 2 == 0)))
    }
}

/// Rewrites between the a- and α-generators (α_1 = a_1, α_n = a_n − a_1^n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaDirection {
    AToAlpha,
    AlphaToA,
}

pub fn alpha_convert<C: Coeff>(p: &NcPoly<C>, dir: AlphaDirection) -> NcPoly<C> {
    let (nu, tr) = p.ambient();
    let sign = match dir {
        AlphaDirection::AToAlpha => C::one(),
        AlphaDirection::AlphaToA => C::one().neg_ref(),
    };
    p.substitute(|l| {
        let g = NcPoly::gen(nu, tr, l);
        if l == 1 {
            g
        } else {
            g.add(&NcPoly::gen(nu, tr, 1).pow(l as u32).scale(&sign))
        }
    })
}

/// Abelianization: words become exponent vectors (variable n−1 ↔ a_n).
pub fn abelianize<C: Coeff>(p: &NcPoly<C>) -> CommPoly<C> {
    let mut out = CommPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(word_mono(w), c);
    }
    out
}

pub fn word_mono(w: &Word) -> Mono {
    let mut v = vec![0u32; w.max_letter() as usize];
    for &l in w.letters() {
        v[l as usize - 1] += 1;
    }
    Mono::from_exponents(v)
}

pub fn abelianize_tensor<C: Coeff>(t: &Tensor<C>) -> CommTensor<C> {
    let mut out = CommTensor::zero();
    for (k, c) in t.terms() {
        out.add_term(k.iter().map(word_mono).collect(), c);
    }
    out
}

/// Name of the commutative variable n−1 ↔ a_n.
pub fn a_name(i: usize) -> String {
    format!("a{}", i + 1)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn h() -> Hopf {
        Hopf::full(6)
    }

    #[test]
    fn p_examples() {
        let h = h();
        assert_eq!(h.p_poly(4, 1).unwrap(), h.gen(4));
        assert_eq!(h.p_poly(3, 3).unwrap(), h.gen(1).pow(3));
        assert_eq!(h.p_poly(3, 2).unwrap(), h.word(&[1, 2]).add(&h.word(&[2, 1])));
        assert!(h.p_poly(2, 3).is_err());
    }

    #[test]
    fn q_examples() {
        let h = h();
        for l in 0..5 {
            assert_eq!(h.q_poly(l, 1), h.gen(1).scale(&rat(l as i64 + 1)));
        }
        for t in 1..6 {
            assert_eq!(h.q_poly(0, t), h.gen(t as u8));
        }
        assert_eq!(h.q_poly(3, 0), h.one());
    }

    #[test]
    fn coproduct_examples() {
        let h = h();
        let d2 = h.coproduct(&h.gen(2));
        let exp = T::product_of(&[&h.gen(2), &h.one()], 6)
            .add(&T::product_of(&[&h.one(), &h.gen(2)], 6))
            .add(&T::product_of(&[&h.gen(1), &h.gen(1)], 6).scale(&rat(2)));
        assert_eq!(d2, exp);
        let d1 = h.coproduct(&h.gen(1));
        assert_eq!(d1.len(), 2);
    }

    #[test]
    fn antipode_examples() {
        let h = h();
        assert_eq!(h.antipode(&h.gen(1)), h.gen(1).neg());
        assert_eq!(h.antipode(&h.gen(2)), h.gen(2).neg().add(&h.word(&[1, 1]).scale(&rat(2))));
        assert_eq!(h.antipode(&h.one()), h.one());
    }

    #[test]
    fn counit_examples() {
        let h = h();
        let p = h.one().scale(&rat(3)).add(&h.word(&[1, 2]).scale(&rat(2)));
        assert_eq!(h.counit(&p), rat(3));
        assert_eq!(h.counit(&h.gen(4)), rat(0));
    }

    #[test]
    fn alpha_examples() {
        let h = h();
        let a2 = h.gen(2);
        assert_eq!(alpha_convert(&a2, AlphaDirection::AToAlpha), h.gen(2).add(&h.word(&[1, 1])));
        assert_eq!(alpha_convert(&a2, AlphaDirection::AlphaToA), h.gen(2).sub(&h.word(&[1, 1])));
    }

    #[test]
    fn abelianization() {
        let h = h();
        let c = h.word(&[1, 2]).sub(&h.word(&[2, 1]));
        assert!(abelianize(&c).is_zero());
        let p = h.gen(2).add(&h.word(&[1, 1]));
        assert_eq!(
            abelianize(&p),
            CommPoly::var(1).add(&CommPoly::var(0).mul(&CommPoly::var(0)))
        );
    }

    #[test]
    fn odd_family() {
        let k = Hopf::new(Family::Odd, None, 8);
        assert_eq!(k.generators(), vec![2, 4, 6, 8]);
        assert_eq!(k.q_poly(1, 1), k.gen(2).scale(&rat(3)));
        let h = Hopf::full(8);
        assert!(Hopf::odd_projection(&h.gen(3)).is_zero());
        let lhs = k.coproduct(&k.gen(4));
        let rhs = Hopf::odd_projection_tensor(&h.coproduct(&h.gen(4)));
        assert_eq!(lhs, rhs);
    }
}
