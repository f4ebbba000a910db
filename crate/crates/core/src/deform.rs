//! The four ħ-deformations of H as generator-rescaled presentations inside
//! H(ħ), with their ħ = 0 and ħ = 1 specializations.
//!
//! Each kind is a base generator system (a or α) plus an ħ-exponent e(b)
//! per Hall element; the kind's k[ħ]-basis consists of ⪯-ordered products
//! of ħ^{e(b)}·b(base), so a base-PBW coefficient c of a monomial b_1⋯b_m
//! becomes c·ħ^{−Σe(b_i)} in the kind basis.

use std::collections::BTreeMap;

use crate::coeff::{binomial, rat, Coeff, Laurent, Rational};
use crate::commpoly::{CommPoly, CommTensor, Mono};
use crate::error::{Error, Result};
use crate::freelie::{add_into, fmt_terms, FreeLie, HallId, LieElt, LieTensor, PbwMono};
use crate::hopfdiff::{alpha_convert, AlphaDirection, Family, Hopf};
use crate::ncpoly::{LPoly, LTensor, NcPoly, Tensor, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeformKind {
    /// H_ħ^∨, basis x_b = ħ^{−k(b)} b(a)
    ReesVee,
    /// (H_ħ^∨)′, basis b̃_b = ħ^{1−k(b)} b(a)
    VeePrime,
    /// H_ħ′, basis α̂_b = ħ^{τ(b)} α_b
    ReesPrime,
    /// (H_ħ′)^∨, basis α̌_b = ħ^{τ(b)−1} α_b
    PrimeVee,
}

impl DeformKind {
    pub const ALL: [DeformKind; 4] =
        [DeformKind::ReesVee, DeformKind::VeePrime, DeformKind::ReesPrime, DeformKind::PrimeVee];

    pub fn cli_name(self) -> &'static str {
        match self {
            DeformKind::ReesVee => "rees-vee",
            DeformKind::VeePrime => "vee-prime",
            DeformKind::ReesPrime => "rees-prime",
            DeformKind::PrimeVee => "prime-vee",
        }
    }

    pub fn from_cli(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.cli_name() == s)
    }

    /// Whether the generators are built from the α's.
    pub fn alpha_based(self) -> bool {
        matches!(self, DeformKind::ReesPrime | DeformKind::PrimeVee)
    }

    /// Whether the ħ = 0 fiber is commutative (a function algebra).
    pub fn commutative_limit(self) -> bool {
        matches!(self, DeformKind::VeePrime | DeformKind::ReesPrime)
    }

    pub fn exponent(self, fl: &FreeLie, b: HallId) -> i32 {
        let h = fl.element(b);
        let k = h.lie_degree() as i32;
        let tau = h.tau() as i32;
        match self {
            DeformKind::ReesVee => -k,
            DeformKind::VeePrime => 1 - k,
            DeformKind::ReesPrime => tau,
            DeformKind::PrimeVee => tau - 1,
        }
    }

    fn var_prefix(self) -> &'static str {
        match self {
            DeformKind::ReesVee => "x",
            DeformKind::VeePrime => "β",
            DeformKind::ReesPrime => "η",
            DeformKind::PrimeVee => "α̌",
        }
    }
}

/// Coordinates in a kind's k[ħ]-basis.
pub type KindElt = BTreeMap<PbwMono, Laurent>;
pub type KindTensor = BTreeMap<Vec<PbwMono>, Laurent>;

/// Element of H(ħ) given in the a-generators.
fn lift(p: &NcPoly<Rational>) -> LPoly {
    p.to_laurent()
}

/// Rewrites every tensor factor between generator systems.
pub fn convert_tensor<C: Coeff>(t: &Tensor<C>, dir: AlphaDirection) -> Tensor<C> {
    let mut out = t.clone();
    for pos in 0..t.rank() {
        out = out.apply_at(pos, |w| {
            let p: NcPoly<C> = NcPoly::monomial(None, t.trunc(), w.clone(), C::one());
            Tensor::from_poly(&alpha_convert(&p, dir))
        });
    }
    out
}

/// A deformation kind over H_ν (full family) at truncation N.
pub struct Deformed<'a> {
    pub kind: DeformKind,
    pub hopf: &'a Hopf,
    pub fl: &'a FreeLie,
}

impl<'a> Deformed<'a> {
    pub fn new(kind: DeformKind, hopf: &'a Hopf, fl: &'a FreeLie) -> Result<Self> {
        if hopf.family() != Family::Full {
            return Err(Error::Invalid("deformations are built over the full family H".into()));
        }
        Ok(Deformed { kind, hopf, fl })
    }

    fn trunc(&self) -> u32 {
        self.hopf.trunc()
    }

    /// Σ e(b_i) over a PBW monomial.
    pub fn mono_exponent(&self, m: &[HallId]) -> i32 {
        m.iter().map(|&b| self.kind.exponent(self.fl, b)).sum()
    }

    /// The basis element for a PBW monomial, in the a-generators of H(ħ).
    pub fn basis_element(&self, m: &[HallId]) -> LPoly {
        let base = self.fl.mono_expansion(m, self.trunc()).rehome(self.hopf.nu(), self.trunc());
        let base = if self.kind.alpha_based() { alpha_convert(&base, AlphaDirection::AlphaToA) } else { base };
        lift(&base).scale(&Laurent::hpow(self.mono_exponent(m)))
    }

    pub fn generator(&self, b: HallId) -> LPoly {
        self.basis_element(&[b])
    }

    /// Generator for the letter x_n.
    pub fn gen_n(&self, n: u8) -> LPoly {
        self.generator(self.fl.letter(n))
    }

    /// Coordinates of an element of H(ħ) in the kind's basis.
    pub fn decompose(&self, p: &LPoly) -> KindElt {
        let base = if self.kind.alpha_based() { alpha_convert(p, AlphaDirection::AToAlpha) } else { p.clone() };
        let coords = self.fl.pbw_decompose(&base).expect("element within the weight bound");
        coords.into_iter().map(|(m, c)| {
            let e = self.mono_exponent(&m);
            (m, c.shift(-e))
        }).collect()
    }

    pub fn decompose_tensor(&self, t: &LTensor) -> KindTensor {
        let base = if self.kind.alpha_based() { convert_tensor(t, AlphaDirection::AToAlpha) } else { t.clone() };
        self.fl
            .pbw_decompose_tensor(&base)
            .into_iter()
            .map(|(k, c)| {
                let e: i32 = k.iter().map(|m| self.mono_exponent(m)).sum();
                (k, c.shift(-e))
            })
            .collect()
    }

    pub fn coproduct(&self, p: &LPoly) -> KindTensor {
        self.decompose_tensor(&self.hopf.coproduct(p))
    }

    pub fn antipode(&self, p: &LPoly) -> KindElt {
        self.decompose(&self.hopf.antipode(p))
    }

    /// Lowest ħ-exponent among coordinates; `None` for zero.
    pub fn min_valuation<K>(coords: &BTreeMap<K, Laurent>) -> Option<i32> {
        coords.values().filter_map(Laurent::valuation).min()
    }

    /// Errors unless all coordinates lie in k[ħ].
    pub fn check_integral<K>(&self, coords: &BTreeMap<K, Laurent>, at: &str) -> Result<()> {
        match Self::min_valuation(coords) {
            Some(v) if v < 0 => Err(Error::NotIntegral { kind: self.kind.cli_name().into(), valuation: v, at: at.into() }),
            _ => Ok(()),
        }
    }

    /// Coefficient of ħ^e in every coordinate.
    pub fn hcoeff<K: Ord + Clone>(coords: &BTreeMap<K, Laurent>, e: i32) -> BTreeMap<K, Rational> {
        coords
            .iter()
            .filter_map(|(k, c)| {
                let v = c.coeff(e);
                (!Coeff::is_zero(&v)).then(|| (k.clone(), v))
            })
            .collect()
    }

    /// ħ = 0 fiber of an integral coordinate vector.
    pub fn at_zero<K: Ord + Clone>(&self, coords: &BTreeMap<K, Laurent>, at: &str) -> Result<BTreeMap<K, Rational>> {
        self.check_integral(coords, at)?;
        Ok(Self::hcoeff(coords, 0))
    }

    /// ħ = 1 evaluation.
    pub fn at_one<K: Ord + Clone>(coords: &BTreeMap<K, Laurent>) -> BTreeMap<K, Rational> {
        coords
            .iter()
            .filter_map(|(k, c)| {
                let v = c.eval_one();
                (!Coeff::is_zero(&v)).then(|| (k.clone(), v))
            })
            .collect()
    }

    /// PBW monomial as a commutative monomial in Hall-indexed variables.
    pub fn commutative_mono(m: &[HallId]) -> Mono {
        let mut v = vec![0u32; m.iter().max().map_or(0, |&x| x + 1)];
        for &b in m {
            v[b] += 1;
        }
        Mono::from_exponents(v)
    }

    pub fn to_comm(coords: &BTreeMap<PbwMono, Rational>) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m, c) in coords {
            out.add_term(Self::commutative_mono(m), c);
        }
        out
    }

    pub fn to_comm_tensor(coords: &BTreeMap<Vec<PbwMono>, Rational>) -> CommTensor {
        let mut out = CommTensor::zero();
        for (k, c) in coords {
            out.add_term(k.iter().map(|m| Self::commutative_mono(m)).collect(), c);
        }
        out
    }

    pub fn var_name(&self, b: HallId) -> String {
        let p = self.kind.var_prefix();
        let n = self.fl.name(b);
        match n.strip_prefix('x') {
            Some(idx) if !n.starts_with('[') && self.kind != DeformKind::ReesVee => format!("{p}{idx}"),
            _ if self.kind == DeformKind::ReesVee => n,
            _ => format!("{p}{n}"),
        }
    }

    pub fn mono_name(&self, m: &[HallId]) -> String {
        if m.is_empty() {
            "1".into()
        } else {
            m.iter().map(|&b| self.var_name(b)).collect::<Vec<_>>().join("*")
        }
    }

    pub fn fmt_elt(&self, coords: &KindElt) -> String {
        fmt_terms(coords.iter().rev().map(|(m, c)| (self.mono_name(m), c)))
    }

    pub fn fmt_tensor<C: Coeff>(&self, coords: &BTreeMap<Vec<PbwMono>, C>) -> String {
        fmt_terms(coords.iter().rev().map(|(k, c)| {
            let parts: Vec<String> = k.iter().map(|m| self.mono_name(m)).collect();
            (format!("({})", parts.join(" ⊗ ")), c)
        }))
    }

    /// Hopf axioms on one basis element, verified inside H(ħ) with the
    /// structure maps' values required to be integral in the kind basis.
    pub fn hopf_check(&self, b: HallId) -> std::result::Result<(), String> {
        let g = self.generator(b);
        let name = self.var_name(b);
        let d = self.hopf.coproduct(&g);
        self.check_integral(&self.decompose_tensor(&d), &format!("Δ({name})")).map_err(|e| e.to_string())?;
        self.check_integral(&self.antipode(&g), &format!("S({name})")).map_err(|e| e.to_string())?;
        if !Coeff::is_zero(&g.counit()) {
            return Err(format!("ε({name}) ≠ 0"));
        }
        let left = self.hopf.coproduct_at(&d, 0);
        let right = self.hopf.coproduct_at(&d, 1);
        if left != right {
            return Err(format!("coassociativity fails on {name}"));
        }
        let conv = |s_first: bool| {
            let mut t = d.clone();
            let pos = if s_first { 0 } else { 1 };
            t = t.apply_at(pos, |w| {
                let p = NcPoly::<Laurent>::monomial(self.hopf.nu(), self.trunc(), w.clone(), Laurent::one());
                Tensor::from_poly(&self.hopf.antipode(&p))
            });
            self.hopf.multiply(&t)
        };
        let unit = NcPoly::<Laurent>::zero(self.hopf.nu(), self.trunc());
        if conv(true) != unit || conv(false) != unit {
            return Err(format!("antipode convolution fails on {name}"));
        }
        Ok(())
    }

    /// ħ^{−1}(Δ − Δ^op)(g) mod ħ, for the cocommutative kinds, as a Lie
    /// tensor (errors if a non-Lie PBW term survives).
    pub fn induced_cobracket(&self, g: &LPoly) -> Result<LieTensor> {
        let d = self.hopf.coproduct(g);
        let diff = d.sub(&d.flip(0, 1).expect("rank 2"));
        let coords = self.decompose_tensor(&diff);
        self.check_integral(&coords, "Δ − Δ^op")?;
        if !Self::hcoeff(&coords, 0).is_empty() {
            return Err(Error::Invalid("ħ=0 fiber is not cocommutative".into()));
        }
        let mut out = BTreeMap::new();
        for (k, c) in Self::hcoeff(&coords, 1) {
            if k.iter().any(|m| m.len() != 1) {
                return Err(Error::Invalid(format!("non-Lie term {}", self.fmt_tensor(&[(k, c)].into_iter().collect()))));
            }
            add_into(&mut out, (k[0][0], k[1][0]), &c);
        }
        Ok(out)
    }

    /// Poisson bracket {g_b1, g_b2} = (ħ^{−1}[g_b1, g_b2])|_{ħ=0}.
    pub fn poisson_bracket(&self, b1: HallId, b2: HallId) -> Result<CommPoly> {
        let c = self.generator(b1).commutator(&self.generator(b2));
        let coords = self.decompose(&c);
        match Self::min_valuation(&coords) {
            Some(v) if v < 1 => {
                return Err(Error::NotIntegral { kind: self.kind.cli_name().into(), valuation: v - 1, at: "ħ^{-1}[·,·]".into() })
            }
            _ => {}
        }
        Ok(Self::to_comm(&Self::hcoeff(&coords, 1)))
    }

    /// {p|₀, q|₀} = (ħ^{−1}[p, q])|₀ for integral p, q, as a polynomial in
    /// the Hall-indexed generators of the commutative fiber.
    pub fn poisson_of(&self, p: &LPoly, q: &LPoly) -> Result<CommPoly> {
        let coords = self.decompose(&p.commutator(q));
        if let Some(v) = Self::min_valuation(&coords) {
            if v < 1 {
                return Err(Error::NotIntegral { kind: self.kind.cli_name().into(), valuation: v - 1, at: "ħ^{-1}[·,·]".into() });
            }
        }
        Ok(Self::to_comm(&Self::hcoeff(&coords, 1)))
    }

    /// The ħ = 0 class of an integral element, as a commutative polynomial.
    pub fn limit_of(&self, p: &LPoly) -> Result<CommPoly> {
        Ok(Self::to_comm(&self.at_zero(&self.decompose(p), "element")?))
    }

    /// Whether g|₀ is primitive in the ħ = 0 fiber.
    pub fn primitive_at_zero(&self, b: HallId) -> Result<bool> {
        let z = self.at_zero(&self.coproduct(&self.generator(b)), "Δ")?;
        let want: BTreeMap<Vec<PbwMono>, Rational> =
            [(vec![vec![b], vec![]], rat(1)), (vec![vec![], vec![b]], rat(1))].into_iter().collect();
        Ok(z == want)
    }

    /// ħ = 1: rebuilding Δ(g) from its kind coordinates with every basis
    /// element specialized at ħ = 1 gives Δ_H(g|_{ħ=1}); same for S.
    pub fn recovers_at_one(&self, b: HallId) -> bool {
        let g = self.generator(b);
        let one = |p: &LPoly| p.map_coeffs(|c| c.eval_one());
        let h1 = one(&g);
        let mut rebuilt = Tensor::<Rational>::zero(2, self.trunc());
        for (k, c) in Self::at_one(&self.coproduct(&g)) {
            let f0 = one(&self.basis_element(&k[0]));
            let f1 = one(&self.basis_element(&k[1]));
            rebuilt.add_assign(&Tensor::product_of(&[&f0, &f1], self.trunc()).scale_rat(&c));
        }
        let mut s = NcPoly::<Rational>::zero(self.hopf.nu(), self.trunc());
        for (m, c) in Self::at_one(&self.antipode(&g)) {
            s = s.add(&one(&self.basis_element(&m)).scale_rat(&c));
        }
        rebuilt == self.hopf.coproduct(&h1) && s == self.hopf.antipode(&h1)
    }

    /// Coproduct of a generator in the commutative ħ = 0 fiber.
    pub fn limit_coproduct(&self, b: HallId) -> Result<CommTensor> {
        let d = self.coproduct(&self.generator(b));
        Ok(Self::to_comm_tensor(&self.at_zero(&d, &format!("Δ({})", self.var_name(b)))?))
    }

    /// (Δ − Δ^op) at ħ = 0 modulo m² on both sides: the cotangent cobracket
    /// on the generator's class, as a Lie tensor in Hall ids.
    pub fn cotangent_cobracket(&self, b: HallId) -> Result<LieTensor> {
        let g = self.generator(b);
        let d = self.hopf.coproduct(&g);
        let diff = self.decompose_tensor(&d.sub(&d.flip(0, 1).expect("rank 2")));
        let z = self.at_zero(&diff, "Δ − Δ^op")?;
        let mut out = BTreeMap::new();
        for (k, c) in z {
            if k[0].len() == 1 && k[1].len() == 1 {
                add_into(&mut out, (k[0][0], k[1][0]), &c);
            }
        }
        Ok(out)
    }

    /// [g_b1, g_b2] − (relation right-hand side) in H(ħ):
    /// VeePrime: ħ·b̃_{[b1,b2]}; ReesPrime: ħ·α̂_{[b1,b2]}; PrimeVee:
    /// α̌_{[b1,b2]}; ReesVee: x_{[b1,b2]}. Zero iff the relation holds.
    pub fn presentation_defect(&self, b1: HallId, b2: HallId) -> LPoly {
        let lhs = self.generator(b1).commutator(&self.generator(b2));
        let br = self.fl.hall_bracket(b1, b2);
        let factor = match self.kind {
            DeformKind::VeePrime | DeformKind::ReesPrime => Laurent::hpow(1),
            DeformKind::PrimeVee | DeformKind::ReesVee => Laurent::one(),
        };
        let mut rhs = lhs.zero_like();
        for (b, c) in br {
            rhs = rhs.add(&self.generator(b).scale(&factor.scale(&c)));
        }
        lhs.sub(&rhs)
    }
}

/// Closed form of Δ(x_n) in H_ħ^∨, written in x-words:
/// x_n⊗1 + 1⊗x_n + Σ_m Σ_{k≤m} ħ^k C(n−m+1, k) x_{n−m} ⊗ P^(k)_m(x).
pub fn rees_vee_coproduct(n: u8, trunc: u32) -> LTensor {
    let xw = |l: Vec<u8>| Word::new(l);
    let mut t = LTensor::zero(2, trunc);
    t.add_term(vec![xw(vec![n]), Word::empty()], &Laurent::one());
    t.add_term(vec![Word::empty(), xw(vec![n])], &Laurent::one());
    let h = Hopf::full(trunc);
    for m in 1..n {
        for k in 1..=m {
            let c = binomial((n - m + 1) as i64, k as i64);
            let p = h.p_poly(m as u32, k as u32).expect("k ≤ m");
            for (w, d) in p.terms() {
                t.add_term(vec![xw(vec![n - m]), w.clone()], &Laurent::monomial(&c * d, k as i32));
            }
        }
    }
    t
}

/// Rewrites an x-word tensor into a-words (x_n = ħ^{−1} a_n).
pub fn x_to_a_tensor(t: &LTensor) -> LTensor {
    let mut out = LTensor::zero(t.rank(), t.trunc());
    for (k, c) in t.terms() {
        let len: usize = k.iter().map(Word::len).sum();
        out.add_term(k.clone(), &c.shift(-(len as i32)));
    }
    out
}

/// The closed form proposed for the ħ = 0 coproduct of ᾱ_n in H_ħ′:
/// ᾱ_n⊗1 + 1⊗ᾱ_n + Σ_{k=2}^{n−1} C(n,k) ᾱ_k⊗ᾱ_1^{n−k} + Σ_{k=1}^{n−1} (k+1) ᾱ_1^k⊗ᾱ_{n−k}.
pub fn rees_prime_limit_formula(fl: &FreeLie, n: u8) -> CommTensor {
    let v = |i: u8| Mono::var(fl.letter(i));
    let pow1 = |e: u32| Mono::from_exponents({
        let mut x = vec![0; fl.letter(1) + 1];
        x[fl.letter(1)] = e;
        x
    });
    let mut t = CommTensor::zero();
    t.add_term(vec![v(n), Mono::one()], &rat(1));
    t.add_term(vec![Mono::one(), v(n)], &rat(1));
    for k in 2..n {
        t.add_term(vec![v(k), pow1((n - k) as u32)], &binomial(n as i64, k as i64));
    }
    for k in 1..n {
        t.add_term(vec![pow1(k as u32), v(n - k)], &rat(k as i64 + 1));
    }
    t
}

/// Section μ: F[G_ν] → (H_ħ^∨)′|_{ħ=0}, a_n ↦ β_{x_n}, on a commutative
/// polynomial in the a-variables (variable n−1 ↔ a_n).
pub fn mu(fl: &FreeLie, p: &CommPoly) -> CommPoly {
    let mut out = CommPoly::zero();
    for (m, c) in p.terms() {
        let mut acc = CommPoly::constant(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&CommPoly::var(fl.letter(i as u8 + 1)));
            }
        }
        out = out.add(&acc);
    }
    out
}

/// Retraction π: β_{x_n} ↦ a_n, β_b ↦ 0 for Lie degree ≥ 2.
pub fn pi(fl: &FreeLie, p: &CommPoly) -> CommPoly {
    let mut out = CommPoly::zero();
    'terms: for (m, c) in p.terms() {
        let mut acc = CommPoly::constant(c.clone());
        for (b, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let h = fl.element(b);
            if !h.is_letter() {
                continue 'terms;
            }
            for _ in 0..e {
                acc = acc.mul(&CommPoly::var(h.word[0] as usize - 1));
            }
        }
        out = out.add(&acc);
    }
    out
}

pub fn mu_tensor(fl: &FreeLie, t: &CommTensor) -> CommTensor {
    let mut out = CommTensor::zero();
    for (k, c) in t.terms() {
        let parts: Vec<CommPoly> = k
            .iter()
            .map(|m| {
                let mut p = CommPoly::zero();
                p.add_term(m.clone(), &rat(1));
                mu(fl, &p)
            })
            .collect();
        for (m0, c0) in parts[0].terms() {
            for (m1, c1) in parts[1].terms() {
                out.add_term(vec![m0.clone(), m1.clone()], &(c * c0 * c1));
            }
        }
    }
    out
}

pub fn pi_tensor(fl: &FreeLie, t: &CommTensor) -> CommTensor {
    let mut out = CommTensor::zero();
    for (k, c) in t.terms() {
        let mut parts: Vec<CommPoly> = Vec::new();
        for m in k {
            let mut p = CommPoly::zero();
            p.add_term(m.clone(), &rat(1));
            parts.push(pi(fl, &p));
        }
        for (m0, c0) in parts[0].terms() {
            for (m1, c1) in parts[1].terms() {
                out.add_term(vec![m0.clone(), m1.clone()], &(c * c0 * c1));
            }
        }
    }
    out
}

pub fn lie_elt_to_comm(x: &LieElt) -> CommPoly {
    let mut out = CommPoly::zero();
    for (&b, c) in x {
        out.add_term(Mono::var(b), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::Cobracket;

    fn setup(n: u32) -> (Hopf, FreeLie) {
        (Hopf::full(n), FreeLie::new(None, n))
    }

    #[test]
    fn rees_vee_small() {
        let t = rees_vee_coproduct(2, 4);
        assert_eq!(t.coeff(&[Word::letter(1), Word::letter(1)]), Laurent::monomial(rat(2), 1));
        let (h, _) = setup(4);
        let a = x_to_a_tensor(&t);
        assert_eq!(a.map_coeffs(|c| c.eval_one()), h.coproduct(&h.gen(2)));
    }

    #[test]
    fn vee_prime_relation_and_bracket() {
        let (h, fl) = setup(5);
        let d = Deformed::new(DeformKind::VeePrime, &h, &fl).unwrap();
        let (x1, x2) = (fl.letter(1), fl.letter(2));
        assert!(d.presentation_defect(x1, x2).is_zero());
        assert!(d.presentation_defect(x2, x2).is_zero());
        let br = d.poisson_bracket(x1, x2).unwrap();
        assert_eq!(br, CommPoly::var(fl.id_of(&[1, 2]).unwrap()));
    }

    #[test]
    fn prime_vee_cobracket_small() {
        let (h, fl) = setup(6);
        let d = Deformed::new(DeformKind::PrimeVee, &h, &fl).unwrap();
        for n in 1..=6u8 {
            let got = d.induced_cobracket(&d.gen_n(n)).unwrap();
            assert_eq!(got, fl.cobracket_gen(Cobracket::Star, n), "n = {n}");
        }
    }

    #[test]
    fn rees_prime_cotangent() {
        let (h, fl) = setup(5);
        let d = Deformed::new(DeformKind::ReesPrime, &h, &fl).unwrap();
        assert!(d.cotangent_cobracket(fl.letter(2)).unwrap().is_empty());
        assert_eq!(d.cotangent_cobracket(fl.letter(4)).unwrap(), fl.cobracket_gen(Cobracket::Star, 4));
    }
}
