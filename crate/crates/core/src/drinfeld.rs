//! Drinfeld's maps δ_Φ and δ_n, the filtration D_n = Ker δ_{n+1}, the
//! invariant κ and the δ-divisibility membership criteria.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::coeff::{rat, Coeff, Laurent, Rational};
use crate::error::{Error, Result};
use crate::freelie::FreeLie;
use crate::hopfdiff::{alpha_convert, AlphaDirection, Hopf};
use crate::linalg;
use crate::ncpoly::{LPoly, NcPoly, Tensor, Word};

type P = NcPoly<Rational>;
type T = Tensor<Rational>;

/// δ-maps over a fixed presentation, with memoized iterated coproducts.
pub struct Drinfeld<'h> {
    hopf: &'h Hopf,
    letters: Mutex<HashMap<(usize, u8), T>>,
    words: Mutex<HashMap<(usize, Word), T>>,
}

impl<'h> Drinfeld<'h> {
    pub fn new(hopf: &'h Hopf) -> Self {
        Drinfeld { hopf, letters: Mutex::new(HashMap::new()), words: Mutex::new(HashMap::new()) }
    }

    pub fn hopf(&self) -> &Hopf {
        self.hopf
    }

    fn trunc(&self) -> u32 {
        self.hopf.trunc()
    }

    fn iterated_letter(&self, n: usize, l: u8) -> T {
        if let Some(t) = self.letters.lock().unwrap().get(&(n, l)) {
            return t.clone();
        }
        let t = if n == 1 {
            T::pure(vec![Word::letter(l)], rat(1), self.trunc())
        } else {
            self.hopf.coproduct_at(&self.iterated_letter(n - 1, l), 0)
        };
        self.letters.lock().unwrap().insert((n, l), t.clone());
        t
    }

    fn iterated_word(&self, n: usize, w: &Word) -> T {
        if let Some(t) = self.words.lock().unwrap().get(&(n, w.clone())) {
            return t.clone();
        }
        let t = match w.len() {
            0 => T::unit(n, self.trunc()),
            1 => self.iterated_letter(n, w.letters()[0]),
            k => {
                let (a, b) = w.letters().split_at(k / 2);
                self.iterated_word(n, &Word::new(a.to_vec())).mul(&self.iterated_word(n, &Word::new(b.to_vec())))
            }
        };
        self.words.lock().unwrap().insert((n, w.clone()), t.clone());
        t
    }

    /// Δ^n, with Δ^0 = ε and Δ^1 = id.
    pub fn iterated_coproduct<C: Coeff>(&self, n: usize, p: &NcPoly<C>) -> Tensor<C> {
        let mut out = Tensor::zero(n, self.trunc());
        if n == 0 {
            out.add_term(Vec::new(), &p.counit());
            return out;
        }
        for (w, c) in p.terms() {
            for (k, d) in self.iterated_word(n, w).terms() {
                out.add_term(k.clone(), &c.scale(d));
            }
        }
        out
    }

    /// δ_n = (id − u∘ε)^{⊗n} ∘ Δ^n.
    pub fn delta_n<C: Coeff>(&self, n: usize, p: &NcPoly<C>) -> Tensor<C> {
        let d = self.iterated_coproduct(n, p);
        d.filter(|k| k.iter().all(|w| !w.is_empty()))
    }

    /// j_Φ: spreads a rank-|Φ| tensor into rank n with 1's outside Φ.
    pub fn j_phi<C: Coeff>(n: usize, phi: &[usize], t: &Tensor<C>) -> Tensor<C> {
        let mut out = Tensor::zero(n, t.trunc());
        for (k, c) in t.terms() {
            let mut nk = vec![Word::empty(); n];
            for (pos, w) in phi.iter().zip(k) {
                nk[*pos - 1] = w.clone();
            }
            out.add_term(nk, c);
        }
        out
    }

    fn check_phi(n: usize, phi: &[usize]) -> Result<()> {
        if phi.iter().any(|&i| i == 0 || i > n) || phi.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("Φ = {phi:?} is not an ordered subset of 1..{n}")));
        }
        Ok(())
    }

    /// δ_Φ = j_Φ ∘ δ_{|Φ|}.
    pub fn delta_phi<C: Coeff>(&self, n: usize, phi: &[usize], p: &NcPoly<C>) -> Result<Tensor<C>> {
        Self::check_phi(n, phi)?;
        Ok(Self::j_phi(n, phi, &self.delta_n(phi.len(), p)))
    }

    /// δ_Φ by inclusion–exclusion, Σ_{Ψ⊆Φ} (−1)^{|Φ|−|Ψ|} Δ_Ψ (cross-check).
    pub fn delta_phi_inclusion_exclusion<C: Coeff>(&self, n: usize, phi: &[usize], p: &NcPoly<C>) -> Result<Tensor<C>> {
        Self::check_phi(n, phi)?;
        let mut out = Tensor::zero(n, self.trunc());
        for mask in 0u32..(1 << phi.len()) {
            let psi: Vec<usize> = phi.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
            let sign = if (phi.len() - psi.len()) % 2 == 0 { rat(1) } else { rat(-1) };
            let d = Self::j_phi(n, &psi, &self.iterated_coproduct(psi.len(), p));
            out.add_assign(&d.scale_rat(&sign));
        }
        Ok(out)
    }

    /// Least k with δ_{k+1}(p) = 0; bounded by the weight.
    pub fn kappa<C: Coeff>(&self, p: &NcPoly<C>) -> Result<usize> {
        let top = p.max_weight().ok_or(Error::ZeroElement)? as usize;
        for k in 0..=top {
            if self.delta_n(k + 1, p).is_zero() {
                return Ok(k);
            }
        }
        Err(Error::Invalid(format!("δ_{} does not vanish on an element of weight {top}", top + 1)))
    }

    /// D_k ∩ H_(w) for k = 0..=w against Θ_k ∩ H_(w).
    pub fn filtration_component(&self, w: u32, fl: &FreeLie) -> FiltrationReport {
        let basis = self.hopf.basis(w);
        let (nu, tr) = (self.hopf.nu(), self.trunc());
        // Θ_k: α-PBW monomials with τ ≤ k, rewritten in the a-generators
        let theta: Vec<(i64, P)> = fl
            .pbw_monomials(w)
            .into_iter()
            .map(|m| {
                let alpha = fl.mono_expansion(&m, tr).rehome(nu, tr);
                (fl.mono_tau(&m), alpha_convert(&alpha, AlphaDirection::AlphaToA))
            })
            .collect();
        let mut levels = Vec::new();
        for k in 0..=w as usize {
            let images: Vec<Tensor<Laurent>> =
                basis.iter().map(|b| self.delta_n(k + 1, &P::monomial(nu, tr, b.clone(), rat(1))).to_laurent()).collect();
            let d = linalg::kernel_basis(&basis, &images, nu, tr).expect("rational images");
            let th: Vec<P> = theta.iter().filter(|(t, _)| *t <= k as i64).map(|(_, p)| p.clone()).collect();
            let dv = linalg::coords(&d, &basis);
            let tv = linalg::coords(&th, &basis);
            let dim_theta = linalg::rank(&tv);
            levels.push(FiltrationLevel {
                k,
                dim_d: d.len(),
                dim_theta,
                equal: linalg::same_span(&dv, &tv),
                basis: d,
            });
        }
        FiltrationReport { weight: w, levels }
    }

    /// δ-divisibility test: is δ_n(η) ∈ ħ^n A^{⊗n} for all n, with A the
    /// ambient integral form? Exhaustive for n up to the weight of η, since
    /// δ_n vanishes beyond it.
    pub fn vee_membership(&self, eta: &LPoly, ambient: Ambient) -> Result<Membership> {
        let own = ambient.valuation_poly(eta);
        if let Some(v) = own {
            if v < 0 {
                return Err(Error::NotIntegral { kind: ambient.name().into(), valuation: v, at: "η".into() });
            }
        }
        let top = eta.max_weight().unwrap_or(0) as usize;
        let mut valuations = Vec::new();
        let mut member = true;
        for n in 1..=top.max(1) {
            let d = self.delta_n(n, eta);
            let v = ambient.valuation_tensor(&d);
            if let Some(v) = v {
                if v < n as i32 {
                    member = false;
                }
            }
            valuations.push((n, v));
        }
        Ok(Membership { member, valuations })
    }
}

/// Integral form in which δ-divisibility is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// H_ħ^∨ = k[ħ]⟨x_n⟩, x_n = ħ^{−1} a_n: an a-word of length ℓ has
    /// valuation ℓ in the x-word basis.
    ReesVee,
    /// H_ħ = H[ħ] with the a-word basis.
    Trivial,
}

impl Ambient {
    pub fn name(self) -> &'static str {
        match self {
            Ambient::ReesVee => "rees-vee",
            Ambient::Trivial => "trivial",
        }
    }

    fn shift(self, k: &[Word]) -> i32 {
        match self {
            Ambient::ReesVee => k.iter().map(|w| w.len() as i32).sum(),
            Ambient::Trivial => 0,
        }
    }

    pub fn valuation_poly(self, p: &LPoly) -> Option<i32> {
        p.terms().filter_map(|(w, c)| c.valuation().map(|v| v + self.shift(std::slice::from_ref(w)))).min()
    }

    pub fn valuation_tensor(self, t: &Tensor<Laurent>) -> Option<i32> {
        t.terms().filter_map(|(k, c)| c.valuation().map(|v| v + self.shift(k))).min()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// (n, minimal ħ-valuation of δ_n(η)); `None` when δ_n(η) = 0.
    pub valuations: Vec<(usize, Option<i32>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationLevel {
    pub k: usize,
    #[serde(rename = "dimD")]
    pub dim_d: usize,
    #[serde(rename = "dimTheta")]
    pub dim_theta: usize,
    pub equal: bool,
    #[serde(skip)]
    pub basis: Vec<P>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub weight: u32,
    pub levels: Vec<FiltrationLevel>,
}

/// Coordinates of a tensor as a sparse map (for linear algebra).
pub fn tensor_map(t: &T) -> BTreeMap<Vec<Word>, Rational> {
    t.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::factorial;

    #[test]
    fn small_deltas() {
        let h = Hopf::full(6);
        let d = Drinfeld::new(&h);
        assert_eq!(d.iterated_coproduct(1, &h.gen(2)), T::from_poly(&h.gen(2)));
        assert_eq!(d.iterated_coproduct(2, &h.gen(3)), h.coproduct(&h.gen(3)));
        let e = d.delta_n(2, &h.gen(2));
        assert_eq!(e, T::pure(vec![Word::letter(1), Word::letter(1)], rat(2), 6));
        for n in 1..=5u8 {
            let dn = d.delta_n(n as usize, &h.gen(n));
            let ones = vec![Word::letter(1); n as usize];
            assert_eq!(dn, T::pure(ones, Rational::from_integer(factorial(n as u32)), 6));
        }
        let eps = d.delta_phi(2, &[], &h.gen(2).add(&h.one())).unwrap();
        assert_eq!(eps, T::unit(2, 6));
    }

    #[test]
    fn kernel_of_delta2_weight2() {
        let h = Hopf::full(4);
        let d = Drinfeld::new(&h);
        let basis = h.basis(2);
        let imgs: Vec<_> = basis.iter().map(|w| d.delta_n(2, &P::monomial(None, 4, w.clone(), rat(1))).to_laurent()).collect();
        let k = linalg::kernel_basis(&basis, &imgs, None, 4).unwrap();
        assert_eq!(k, vec![h.gen(2).sub(&h.word(&[1, 1]))]);
    }

    #[test]
    fn kappa_values() {
        let h = Hopf::full(6);
        let d = Drinfeld::new(&h);
        assert_eq!(d.kappa(&h.gen(1)).unwrap(), 1);
        assert_eq!(d.kappa(&h.one()).unwrap(), 0);
        assert!(matches!(d.kappa(&h.zero()), Err(Error::ZeroElement)));
    }
}
