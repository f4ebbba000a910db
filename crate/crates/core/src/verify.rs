//! Verification suites: each runs a family of exact checks and reports
//! pass/fail with a complete counterexample on failure.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coeff::{binom_int, binomial, factorial, rat, ratio, Coeff, Rational};
use crate::commpoly::{CommPoly, CommTensor};
use crate::deform::{self, DeformKind, Deformed};
use crate::drinfeld::{Ambient, Drinfeld};
use crate::error::{Error, Result};
use crate::freelie::{Cobracket, FreeLie, HallId, LieElt, LieTensor};
use crate::hopfdiff::{abelianize, abelianize_tensor, alpha_convert, AlphaDirection, Family, Hopf};
use crate::linalg;
use crate::ncpoly::{NcPoly, Tensor, Word};
use crate::nottingham::{pair, pair_tensor, DiffSeries};

pub const SUITES: [&str; 14] = [
    "hopf-axioms",
    "q-identities",
    "lemma41",
    "lemma42",
    "prop42",
    "thm21",
    "thm31",
    "thm41",
    "thm51",
    "specializations",
    "nottingham-duality",
    "cobracket-laws",
    "thm61-fingerprints",
    "odd-morphism",
];

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub id: String,
    #[serde(rename = "ref")]
    pub reference: String,
    pub pass: bool,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} ({} ms)\n", self.suite, self.ms);
        for c in &self.checks {
            s += &format!("  [{}] {} — {}\n", if c.pass { "pass" } else { "FAIL" }, c.id, c.reference);
            if let Some(w) = &c.witness {
                s += &format!("      witness: {w}\n");
            }
        }
        s
    }
}

/// Optional bounds; each suite falls back to its own defaults.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub wmax: Option<u32>,
    pub nmax: Option<u32>,
    pub lmax: Option<u32>,
    pub tmax: Option<u32>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub family: Family,
    pub nu: Option<u32>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { wmax: None, nmax: None, lmax: None, tmax: None, samples: None, seed: 0, family: Family::Full, nu: None }
    }
}

struct Ctx {
    checks: Vec<Check>,
}

impl Ctx {
    fn new() -> Self {
        Ctx { checks: Vec::new() }
    }

    fn push(&mut self, id: &str, reference: &str, pass: bool, witness: Option<Value>) {
        self.checks.push(Check { id: id.into(), reference: reference.into(), pass, witness });
    }

    /// Runs `f` over cases and records the first failure's witness.
    fn all<T>(&mut self, id: &str, reference: &str, cases: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Option<Value>) {
        let mut witness = None;
        for c in cases {
            if let Some(w) = f(c) {
                witness = Some(w);
                break;
            }
        }
        self.push(id, reference, witness.is_none(), witness);
    }
}

pub fn run_suite(name: &str, b: &Bounds) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut cx = Ctx::new();
    match name {
        "hopf-axioms" => hopf_axioms(&mut cx, b),
        "q-identities" => q_identities(&mut cx, b),
        "lemma41" => lemma41(&mut cx, b),
        "lemma42" => lemma42(&mut cx, b),
        "prop42" => prop42(&mut cx, b),
        "thm21" => thm21(&mut cx, b),
        "thm31" => thm31(&mut cx, b),
        "thm41" => thm41(&mut cx, b),
        "thm51" => thm51(&mut cx, b),
        "specializations" => specializations(&mut cx, b),
        "nottingham-duality" => nottingham_duality(&mut cx, b),
        "cobracket-laws" => cobracket_laws(&mut cx, b),
        "thm61-fingerprints" => fingerprints(&mut cx, b),
        "odd-morphism" => odd_morphism(&mut cx, b),
        _ => return Err(Error::Invalid(format!("unknown suite '{name}'; expected one of {}", SUITES.join(", ")))),
    }
    Ok(SuiteReport { suite: name.into(), checks: cx.checks, ms: start.elapsed().as_millis() })
}

type P = NcPoly<Rational>;

fn apoly(p: &P) -> String {
    p.fmt_with("a")
}

fn atensor<C: Coeff>(t: &Tensor<C>) -> String {
    t.fmt_with("a")
}

/// Random word of weight ≤ w in the family's generators.
fn random_word(rng: &mut ChaCha8Rng, h: &Hopf, w: u32) -> Word {
    let gens: Vec<u8> = h.generators().into_iter().filter(|&g| g as u32 <= w).collect();
    let target = rng.gen_range(0..=w);
    let mut letters = Vec::new();
    let mut left = target;
    loop {
        let opts: Vec<u8> = gens.iter().copied().filter(|&g| g as u32 <= left).collect();
        if opts.is_empty() {
            break;
        }
        let g = opts[rng.gen_range(0..opts.len())];
        letters.push(g);
        left -= g as u32;
    }
    Word::new(letters)
}

/// Random element: a few random words with small rational coefficients.
fn random_element(rng: &mut ChaCha8Rng, h: &Hopf, w: u32) -> P {
    let mut p = h.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = ratio(rng.gen_range(-4..=4i64), rng.gen_range(1..=3i64));
        p = p.add(&P::monomial(h.nu(), h.trunc(), random_word(rng, h, w), c));
    }
    p
}

fn counit_at<C: Coeff>(t: &Tensor<C>, pos: usize) -> Tensor<C> {
    if t.is_zero() {
        return Tensor::zero(t.rank() - 1, t.trunc());
    }
    t.apply_at(pos, |w| {
        let mut s = Tensor::zero(0, t.trunc());
        if w.is_empty() {
            s.add_term(Vec::new(), &C::one());
        }
        s
    })
}

fn convolution(h: &Hopf, p: &P, s_left: bool) -> P {
    let d = h.coproduct(p);
    let t = d.apply_at(if s_left { 0 } else { 1 }, |w| Tensor::from_poly(&h.antipode(&h.word(w.letters()))));
    h.multiply(&t)
}

/// Hopf-axiom failures on one element, if any.
fn hopf_axiom_witness(h: &Hopf, p: &P) -> Option<Value> {
    let d = h.coproduct(p);
    let l = h.coproduct_at(&d, 0);
    let r = h.coproduct_at(&d, 1);
    if l != r {
        return Some(json!({"element": apoly(p), "axiom": "coassociativity", "lhs": atensor(&l), "rhs": atensor(&r)}));
    }
    let tp = Tensor::from_poly(p);
    for pos in 0..2 {
        let c = counit_at(&d, pos);
        if c != tp {
            return Some(json!({"element": apoly(p), "axiom": format!("counit on factor {}", pos + 1), "lhs": atensor(&c), "rhs": apoly(p)}));
        }
    }
    let unit = h.one().scale_rat(&h.counit(p));
    for s_left in [true, false] {
        let c = convolution(h, p, s_left);
        if c != unit {
            let ax = if s_left { "m(S⊗id)Δ = uε" } else { "m(id⊗S)Δ = uε" };
            return Some(json!({"element": apoly(p), "axiom": ax, "lhs": apoly(&c), "rhs": apoly(&unit)}));
        }
    }
    None
}

fn hopf_axioms(cx: &mut Ctx, b: &Bounds) {
    let w = b.wmax.unwrap_or(8);
    let samples = b.samples.unwrap_or(50);
    let h = Hopf::new(b.family, b.nu, w.max(1));
    cx.all("unit", "Hopf axioms on 1", [h.one()], |p| hopf_axiom_witness(&h, &p));
    let gens: Vec<u8> = h.generators().into_iter().filter(|&g| g as u32 <= w).collect();
    cx.all("generators", "coassociativity, counit and both antipode convolutions on every generator", gens.clone(), |g| {
        hopf_axiom_witness(&h, &h.gen(g))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let elems: Vec<P> = if w == 0 { Vec::new() } else { (0..samples).map(|_| random_element(&mut rng, &h, w)).collect() };
    cx.all("random-products", "Hopf axioms on seeded random products", elems, |p| hopf_axiom_witness(&h, &p));
    cx.all("antipode-recursions", "left and right antipode recursions agree", gens.clone(), |g| {
        let (l, r) = (h.antipode_gen(g), h.antipode_gen_right(g));
        (l != r).then(|| json!({"generator": g, "left": apoly(&l), "right": apoly(&r)}))
    });
    cx.all("counit-multiplicative", "ε is an algebra map", gens, |g| {
        let c = h.counit(&h.gen(g));
        (!Coeff::is_zero(&c)).then(|| json!({"generator": g, "counit": c.to_string()}))
    });
}

/// Sum of all coefficients (evaluation at a_n = 1).
fn eval_ones(p: &P) -> Rational {
    p.terms().fold(rat(0), |acc, (_, c)| acc + c)
}

fn q_identities(cx: &mut Ctx, b: &Bounds) {
    let (lmax, tmax) = (b.lmax.unwrap_or(10), b.tmax.unwrap_or(10));
    let stride = b.family.stride();
    let h = Hopf::new(b.family, b.nu, (tmax * stride).max(1));
    let pairs: Vec<(u32, u32)> = (0..=lmax).flat_map(|l| (0..=tmax).map(move |t| (l, t))).collect();
    match b.family {
        Family::Full => {
            cx.all("q-at-ones", "Q^ℓ_t(1,1,…) = C(ℓ+t, ℓ)", pairs, |(l, t)| {
                let (got, want) = (eval_ones(&h.q_poly(l, t)), binomial((l + t) as i64, l as i64));
                (got != want).then(|| json!({"l": l, "t": t, "got": got.to_string(), "want": want.to_string()}))
            });
            let rec: Vec<(u32, u32)> =
                (1..=lmax.min(6)).flat_map(|l| (2..=tmax.min(8)).map(move |t| (l, t))).collect();
            cx.all("q-recurrence", "Q^ℓ_t = Q^{ℓ−1}_t + Σ_{s=1}^{t−1} Q^{ℓ−1}_{t−s} a_s + a_t", rec, |(l, t)| {
                let mut rhs = h.q_poly(l - 1, t).add(&h.gen(t as u8));
                for s in 1..t {
                    rhs = rhs.add(&h.q_poly(l - 1, t - s).mul(&h.gen(s as u8)));
                }
                let lhs = h.q_poly(l, t);
                (lhs != rhs).then(|| json!({"l": l, "t": t, "lhs": apoly(&lhs), "rhs": apoly(&rhs)}))
            });
            cx.all("q-t1", "Q^ℓ_1 = (ℓ+1) a_1", 0..=lmax, |l| {
                let (got, want) = (h.q_poly(l, 1), h.gen(1).scale_rat(&rat(l as i64 + 1)));
                (got != want).then(|| json!({"l": l, "got": apoly(&got), "want": apoly(&want)}))
            });
            cx.all("q-l0", "Q^0_t = a_t", 1..=tmax, |t| {
                let got = h.q_poly(0, t);
                (got != h.gen(t as u8)).then(|| json!({"t": t, "got": apoly(&got)}))
            });
            cx.all("z-t1", "Z^ℓ_1 = 0", 0..=lmax, |l| {
                let z = h.z_poly(l, 1).expect("t ≥ 1");
                (!z.is_zero()).then(|| json!({"l": l, "got": apoly(&z)}))
            });
            cx.all("z-l0", "Z^0_t = α_t", 1..=tmax, |t| {
                let z = h.z_poly(0, t).expect("t ≥ 1");
                let alpha = h.gen(t as u8).sub(&h.gen(1).pow(t));
                (z != alpha).then(|| json!({"t": t, "got": apoly(&z), "want": apoly(&alpha)}))
            });
        }
        Family::Odd => {
            cx.all("q-at-ones", "Q̄^ℓ_t(1,1,…) = C(2ℓ+t, t)", pairs, |(l, t)| {
                let (got, want) = (eval_ones(&h.q_poly(l, t)), binomial((2 * l + t) as i64, t as i64));
                (got != want).then(|| json!({"l": l, "t": t, "got": got.to_string(), "want": want.to_string()}))
            });
            let (lm, tm) = (lmax.min(6), tmax.min(8));
            let full = Hopf::new(Family::Full, None, 2 * tm);
            let rec: Vec<(u32, u32)> = (0..=lm).flat_map(|l| (0..=tm).map(move |t| (l, t))).collect();
            cx.all("q-projection", "Q̄^ℓ_t = π(Q^{2ℓ}_{2t}) under H ↠ K", rec, |(l, t)| {
                let got = h.q_poly(l, t).rehome(None, 2 * tm);
                let want = Hopf::odd_projection(&full.q_poly(2 * l, 2 * t));
                (got != want).then(|| json!({"l": l, "t": t, "got": apoly(&got), "want": apoly(&want)}))
            });
            cx.all("q-t1", "Q̄^ℓ_1 = (2ℓ+1) a_2", 0..=lmax, |l| {
                let (got, want) = (h.q_poly(l, 1), h.gen(2).scale_rat(&rat(2 * l as i64 + 1)));
                (got != want).then(|| json!({"l": l, "got": apoly(&got), "want": apoly(&want)}))
            });
        }
    }
}

fn lemma41(cx: &mut Ctx, b: &Bounds) {
    let w = b.wmax.unwrap_or(8);
    let h = Hopf::full(w);
    let fl = FreeLie::new(None, w);
    let cases: Vec<(u32, u32)> = (0..w).flat_map(|l| (1..=w - l).map(move |t| (l, t))).collect();
    cx.all("tau-q", "τ(Q^ℓ_t) = t", cases.clone(), |(l, t)| {
        let got = fl.tau_degree(&h.q_poly(l, t)).ok();
        (got != Some(t as i64)).then(|| json!({"l": l, "t": t, "tau": got}))
    });
    cx.all("tau-z", "τ(Z^ℓ_t) ≤ t−1 (Z^ℓ_t ∈ Θ_{t−1})", cases, |(l, t)| {
        let z = h.z_poly(l, t).expect("t ≥ 1");
        match fl.tau_degree(&z) {
            Err(Error::ZeroElement) => None,
            Ok(v) if v <= t as i64 - 1 => None,
            other => Some(json!({"l": l, "t": t, "tau": other.ok(), "z": apoly(&z)})),
        }
    });
}

fn double_factorial_odd(n: u32) -> Rational {
    (1..=n).fold(rat(1), |acc, i| acc * rat(2 * i as i64 - 1))
}

/// α_n in the a-generators.
fn alpha(h: &Hopf, n: u8) -> P {
    alpha_convert(&h.gen(n), AlphaDirection::AlphaToA)
}

fn delta_checks(cx: &mut Ctx, b: &Bounds) {
    let nmax = b.nmax.unwrap_or(6);
    match b.family {
        Family::Full => {
            let h = Hopf::full(nmax);
            let dr = Drinfeld::new(&h);
            cx.all("delta-n-a-n", "δ_n(a_n) = n!·a_1^{⊗n}", 1..=nmax, |n| {
                let got = dr.delta_n(n as usize, &h.gen(n as u8));
                let a1: Vec<Word> = vec![Word::letter(1); n as usize];
                let mut want = Tensor::zero(n as usize, h.trunc());
                want.add_term(a1, &Rational::from_integer(factorial(n)));
                (got != want).then(|| json!({"n": n, "got": atensor(&got), "want": atensor(&want)}))
            });
            cx.all("delta-n-1-alpha-n", "δ_{n−1}(α_n) = Σ_m (n!/(m+1)) α_1^{⊗(m−1)} ⊗ α_2 ⊗ α_1^{⊗(n−1−m)}", 2..=nmax, |n| {
                let got = deform::convert_tensor(&dr.delta_n(n as usize - 1, &alpha(&h, n as u8)), AlphaDirection::AToAlpha);
                let mut want = Tensor::zero(n as usize - 1, h.trunc());
                for m in 1..n {
                    let mut k = vec![Word::letter(1); n as usize - 1];
                    k[m as usize - 1] = Word::letter(2);
                    want.add_term(k, &(Rational::from_integer(factorial(n)) / rat(m as i64 + 1)));
                }
                (got != want).then(|| json!({"n": n, "got (α-letters)": atensor(&got), "want": atensor(&want)}))
            });
        }
        Family::Odd => {
            let h = Hopf::new(Family::Odd, None, 2 * nmax);
            let dr = Drinfeld::new(&h);
            cx.all("delta-n-a-n", "δ_n(a_{2n}) = (2n−1)!!·a_2^{⊗n}", 1..=nmax, |n| {
                let got = dr.delta_n(n as usize, &h.gen(2 * n as u8));
                let mut want = Tensor::zero(n as usize, h.trunc());
                want.add_term(vec![Word::letter(2); n as usize], &double_factorial_odd(n));
                (got != want).then(|| json!({"n": n, "got": atensor(&got), "want": atensor(&want)}))
            });
        }
    }
}

fn lemma42(cx: &mut Ctx, b: &Bounds) {
    delta_checks(cx, b);
    if b.family == Family::Odd {
        return;
    }
    let w = b.wmax.unwrap_or(8);
    let h = Hopf::full(w);
    let dr = Drinfeld::new(&h);
    let fl = FreeLie::new(None, w);
    let elems = [h.gen(3), h.word(&[1, 2]), h.word(&[2, 1]).add(&h.gen(3))];
    let phis: Vec<Vec<usize>> = (0u32..8).map(|m| (1..=3).filter(|i| m >> (i - 1) & 1 == 1).collect()).collect();
    cx.all(
        "delta-phi-inclusion-exclusion",
        "δ_Φ = j_Φ∘δ_{|Φ|} equals Σ_{Ψ⊆Φ} (−1)^{|Φ|−|Ψ|} Δ_Ψ",
        elems.iter().flat_map(|e| phis.iter().map(move |p| (e, p))),
        |(e, phi)| {
            let a = dr.delta_phi(3, phi, e).expect("valid Φ");
            let c = dr.delta_phi_inclusion_exclusion(3, phi, e).expect("valid Φ");
            (a != c).then(|| json!({"element": apoly(e), "phi": phi, "direct": atensor(&a), "incl_excl": atensor(&c)}))
        },
    );
    let kappa = |p: &P| dr.kappa(p).ok();
    let k1 = kappa(&alpha(&h, 1));
    cx.push("kappa-alpha-1", "κ(α_1) = 1", k1 == Some(1), (k1 != Some(1)).then(|| json!({"kappa": k1})));
    cx.all("kappa-alpha-n", "κ(α_n) = n−1 for 2 ≤ n ≤ 7", 2..=7u8.min(w as u8), |n| {
        let k = kappa(&alpha(&h, n));
        (k != Some(n as usize - 1)).then(|| json!({"n": n, "kappa": k, "expected": n - 1}))
    });
    let rs: Vec<(u8, u8)> =
        (1..=w as u8).flat_map(|r| (r + 1..=w as u8).filter(move |s| r + s <= 8.min(w as u8)).map(move |s| (r, s))).collect();
    let bracket = |r: u8, s: u8| alpha(&h, r).commutator(&alpha(&h, s));
    cx.all("kappa-bracket-r-s", "κ([α_r, α_s]) = r+s−3 for 1 ≤ r < s, r+s ≤ 8", rs.clone(), |(r, s)| {
        let k = kappa(&bracket(r, s));
        let want = r as i64 + s as i64 - 3;
        (k.map(|k| k as i64) != Some(want)).then(|| json!({"r": r, "s": s, "kappa": k, "expected": want}))
    });
    cx.all("kappa-bracket-tau", "κ([α_r, α_s]) = τ([x_r, x_s]) (= s−1 for r = 1, r+s−3 otherwise)", rs, |(r, s)| {
        let k = kappa(&bracket(r, s));
        let want = if r == 1 { s as i64 - 1 } else { r as i64 + s as i64 - 3 };
        (k.map(|k| k as i64) != Some(want)).then(|| json!({"r": r, "s": s, "kappa": k, "expected": want}))
    });
    let wk = w.min(b.wmax.map_or(6, |x| x.min(6)));
    let hall = fl.hall_basis(wk, None);
    let alpha_b = |m: &[HallId]| alpha_convert(&fl.mono_expansion(m, w).rehome(None, w), AlphaDirection::AlphaToA);
    cx.all("kappa-hall-tau", "κ(α_b) = τ(b) for Hall b", hall.clone(), |id| {
        let k = kappa(&alpha_b(&[id]));
        let t = fl.element(id).tau();
        (k.map(|k| k as i64) != Some(t)).then(|| json!({"b": fl.name(id), "kappa": k, "tau": t}))
    });
    let pairs: Vec<(HallId, HallId)> = hall
        .iter()
        .flat_map(|&x| hall.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| x <= y && fl.element(x).weight + fl.element(y).weight <= wk)
        .collect();
    cx.all("kappa-product-tau", "κ(α_{b1} α_{b2}) = τ(b1) + τ(b2) for ordered Hall pairs", pairs, |(x, y)| {
        let k = kappa(&alpha_b(&[x, y]));
        let t = fl.mono_tau(&[x, y]);
        (k.map(|k| k as i64) != Some(t)).then(|| json!({"b1": fl.name(x), "b2": fl.name(y), "kappa": k, "tau": t}))
    });
}

fn prop42(cx: &mut Ctx, b: &Bounds) {
    let w = b.wmax.unwrap_or(6);
    let h = Hopf::full(w.max(1));
    let fl = FreeLie::new(None, w.max(1));
    let dr = Drinfeld::new(&h);
    cx.all("d-equals-theta", "D_k ∩ H_(w) = Θ_k ∩ H_(w) for every level k", 1..=w, |wt| {
        let r = dr.filtration_component(wt, &fl);
        r.levels.iter().find(|l| !l.equal).map(|l| json!({"weight": wt, "k": l.k, "dimD": l.dim_d, "dimTheta": l.dim_theta}))
    });
    cx.all("filtration-exhausts", "D_w ∩ H_(w) is the whole component", 1..=w, |wt| {
        let r = dr.filtration_component(wt, &fl);
        let top = r.levels.last().expect("levels");
        let dim = h.basis(wt).len();
        (top.dim_d != dim).then(|| json!({"weight": wt, "dimD": top.dim_d, "dim": dim}))
    });
}

fn wedge(fl: &FreeLie, t: &LieTensor) -> String {
    fl.wedge_name(t)
}

fn kind_setup(b: &Bounds, default_n: u32) -> (Hopf, FreeLie, u32, u32) {
    let nmax = b.nmax.unwrap_or(default_n);
    let wmax = b.wmax.unwrap_or(6);
    let top = nmax.max(wmax).max(1);
    (Hopf::full(top), FreeLie::new(None, top), nmax, wmax)
}

fn hall_pairs(fl: &FreeLie, w: u32) -> Vec<(HallId, HallId)> {
    let hall = fl.hall_basis(w, None);
    hall.iter()
        .flat_map(|&x| hall.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| fl.element(x).weight + fl.element(y).weight <= w)
        .collect()
}

fn recovers_check(cx: &mut Ctx, d: &Deformed, ids: Vec<HallId>) {
    cx.all("h1-recovers-h", "at ħ = 1 the structure constants on generators are those of H", ids, |b| {
        (!d.recovers_at_one(b)).then(|| json!({"kind": d.kind.cli_name(), "generator": d.var_name(b)}))
    });
}

fn thm21(cx: &mut Ctx, b: &Bounds) {
    let (h, fl, nmax, wmax) = kind_setup(b, 8);
    let d = Deformed::new(DeformKind::ReesVee, &h, &fl).expect("full family");
    cx.all("closed-form-coproduct", "Δ(x_n) = x_n⊗1 + 1⊗x_n + Σ_m Σ_k ħ^k C(n−m+1,k) x_{n−m} ⊗ P^(k)_m(x)", 1..=nmax as u8, |n| {
        let closed = deform::rees_vee_coproduct(n, h.trunc());
        let got = deform::x_to_a_tensor(&closed);
        let want = h.coproduct(&h.gen(n)).to_laurent().scale(&crate::coeff::Laurent::hpow(-1));
        (got != want).then(|| json!({"n": n, "closed (x-words)": closed.fmt_with("x"), "computed (a-words)": want.fmt_with("a")}))
    });
    cx.all("h0-primitive", "x_n|₀ is primitive", 1..=nmax as u8, |n| match d.primitive_at_zero(fl.letter(n)) {
        Ok(true) => None,
        Ok(false) => Some(json!({"n": n, "coproduct": d.fmt_tensor(&d.coproduct(&d.gen_n(n)))})),
        Err(e) => Some(json!({"n": n, "error": e.to_string()})),
    });
    cx.all("induced-cobracket", "ħ^{−1}(Δ − Δ^op)(x_n) mod ħ = Σ_ℓ (ℓ+1) x_ℓ ∧ x_{n−ℓ}", 1..=nmax as u8, |n| {
        let want = fl.cobracket_gen(Cobracket::Bullet, n);
        match d.induced_cobracket(&d.gen_n(n)) {
            Ok(got) if got == want => None,
            Ok(got) => Some(json!({"n": n, "got": wedge(&fl, &got), "want": wedge(&fl, &want)})),
            Err(e) => Some(json!({"n": n, "error": e.to_string()})),
        }
    });
    recovers_check(cx, &d, (1..=wmax as u8).map(|n| fl.letter(n)).collect());
}

/// Poisson bracket of a generator with a linear combination of generators.
fn poisson_lin(d: &Deformed, x: HallId, y: &CommPoly) -> Result<CommPoly> {
    let mut out = CommPoly::zero();
    for (m, c) in y.terms() {
        let v = m.as_var().ok_or_else(|| Error::Invalid("nonlinear argument".into()))?;
        out = out.add(&d.poisson_bracket(x, v)?.scale(c));
    }
    Ok(out)
}

fn poisson_suite(cx: &mut Ctx, d: &Deformed, w: u32) {
    let fl = d.fl;
    let name = |p: &CommPoly| p.fmt_with(&|i| d.var_name(i));
    cx.all("h0-commutative", "commutators of basis elements vanish at ħ = 0", hall_pairs(fl, w), |(x, y)| {
        let c = d.decompose(&d.generator(x).commutator(&d.generator(y)));
        match Deformed::min_valuation(&c) {
            Some(v) if v < 1 => Some(json!({"b1": fl.name(x), "b2": fl.name(y), "valuation": v})),
            _ => None,
        }
    });
    cx.all("poisson-bracket", "{g_{b1}, g_{b2}} = g_{[b1,b2]}", hall_pairs(fl, w), |(x, y)| {
        let want = deform::lie_elt_to_comm(&fl.hall_bracket(x, y));
        match d.poisson_bracket(x, y) {
            Ok(got) if got == want => None,
            Ok(got) => Some(json!({"b1": fl.name(x), "b2": fl.name(y), "got": name(&got), "want": name(&want)})),
            Err(e) => Some(json!({"b1": fl.name(x), "b2": fl.name(y), "error": e.to_string()})),
        }
    });
    let hall = fl.hall_basis(w, None);
    let mut triples: Vec<(HallId, HallId, HallId)> = Vec::new();
    for &x in &hall {
        for &y in &hall {
            for &z in &hall {
                if x <= y && y <= z && fl.mono_weight(&[x, y, z]) <= w {
                    triples.push((x, y, z));
                }
            }
        }
    }
    cx.all("jacobi", "{g_a,{g_b,g_c}} + cyclic = 0", triples.clone(), |(x, y, z)| {
        let term = |a, b, c| poisson_lin(d, a, &d.poisson_bracket(b, c)?);
        let s = (|| Ok::<_, Error>(term(x, y, z)?.add(&term(y, z, x)?).add(&term(z, x, y)?)))();
        match s {
            Ok(s) if s.is_zero() => None,
            Ok(s) => Some(json!({"a": fl.name(x), "b": fl.name(y), "c": fl.name(z), "sum": name(&s)})),
            Err(e) => Some(json!({"error": e.to_string()})),
        }
    });
    cx.all("leibniz", "{g_a, g_b g_c} = g_b{g_a,g_c} + {g_a,g_b}g_c, computed from ħ^{−1}[·,·]", triples, |(x, y, z)| {
        let r = (|| {
            let lhs = d.poisson_of(&d.generator(x), &d.generator(y).mul(&d.generator(z)))?;
            let (gy, gz) = (d.limit_of(&d.generator(y))?, d.limit_of(&d.generator(z))?);
            let rhs = gy.mul(&d.poisson_bracket(x, z)?).add(&d.poisson_bracket(x, y)?.mul(&gz));
            Ok::<_, Error>((lhs, rhs))
        })();
        match r {
            Ok((l, r)) if l == r => None,
            Ok((l, r)) => Some(json!({"a": fl.name(x), "b": fl.name(y), "c": fl.name(z), "lhs": name(&l), "rhs": name(&r)})),
            Err(e) => Some(json!({"error": e.to_string()})),
        }
    });
}

fn presentation_check(cx: &mut Ctx, d: &Deformed, w: u32, reference: &str) {
    let fl = d.fl;
    cx.all("presentation", reference, hall_pairs(fl, w), |(x, y)| {
        let def = d.presentation_defect(x, y);
        (!def.is_zero()).then(|| json!({"b1": fl.name(x), "b2": fl.name(y), "defect": def.fmt_with("a")}))
    });
}

fn integrality_check(cx: &mut Ctx, d: &Deformed, w: u32) {
    cx.all("hopf-integral", "Δ, S, ε of each basis generator are integral and satisfy the Hopf axioms", d.fl.hall_basis(w, None), |b| {
        d.hopf_check(b).err().map(|e| json!({"kind": d.kind.cli_name(), "generator": d.var_name(b), "error": e}))
    });
}

fn cotangent_check(cx: &mut Ctx, d: &Deformed, nmax: u32, which: Cobracket, reference: &str) {
    let fl = d.fl;
    cx.all("cotangent-cobracket", reference, 1..=nmax as u8, |n| {
        let want = fl.cobracket_gen(which, n);
        match d.cotangent_cobracket(fl.letter(n)) {
            Ok(got) if got == want => None,
            Ok(got) => Some(json!({"n": n, "got": wedge(fl, &got), "want": wedge(fl, &want)})),
            Err(e) => Some(json!({"n": n, "error": e.to_string()})),
        }
    });
}

fn thm31(cx: &mut Ctx, b: &Bounds) {
    let (h, fl, nmax, wmax) = kind_setup(b, 8);
    let d = Deformed::new(DeformKind::VeePrime, &h, &fl).expect("full family");
    let dr = Drinfeld::new(&h);
    cx.all("membership", "δ_n(b̃_b) ∈ ħ^n (H_ħ^∨)^{⊗n} for all n", fl.hall_basis(wmax, None), |x| {
        match dr.vee_membership(&d.generator(x), Ambient::ReesVee) {
            Ok(m) if m.member => None,
            Ok(m) => Some(json!({"b": fl.name(x), "valuations": m.valuations})),
            Err(e) => Some(json!({"b": fl.name(x), "error": e.to_string()})),
        }
    });
    let rv = Deformed::new(DeformKind::ReesVee, &h, &fl).expect("full family");
    let x1 = rv.gen_n(1);
    let ctrl = dr.vee_membership(&x1, Ambient::ReesVee).map(|m| m.member);
    cx.push("membership-control", "x_1 ∉ (H_ħ^∨)′ (δ_1(x_1) is not divisible by ħ)", ctrl == Ok(false), (ctrl != Ok(false)).then(|| json!({"result": format!("{ctrl:?}")})));
    presentation_check(cx, &d, wmax, "[b̃_{b1}, b̃_{b2}] = ħ·b̃_{[b1,b2]}");
    poisson_suite(cx, &d, wmax);
    cotangent_check(cx, &d, nmax, Cobracket::Bullet, "δ(β̄_{x_n}) = Σ_ℓ (ℓ+1) β̄_{x_ℓ} ∧ β̄_{x_{n−ℓ}}");
    let name = |i: usize| d.var_name(i);
    cx.all("mu-hopf", "μ: a_n ↦ β_{x_n} intertwines the coproducts", 1..=wmax as u8, |n| {
        let want = deform::mu_tensor(&fl, &abelianize_tensor(&h.coproduct(&h.gen(n))));
        match d.limit_coproduct(fl.letter(n)) {
            Ok(got) if got == want => None,
            Ok(got) => Some(json!({"n": n, "got": got.fmt_with(&name), "want": want.fmt_with(&name)})),
            Err(e) => Some(json!({"n": n, "error": e.to_string()})),
        }
    });
    cx.all("pi-mu-identity", "π∘μ = id on a_n and on a_1 a_2", (1..=wmax as usize).map(|n| CommPoly::var(n - 1)).chain([CommPoly::var(0).mul(&CommPoly::var(1))]), |p| {
        let got = deform::pi(&fl, &deform::mu(&fl, &p));
        (got != p).then(|| json!({"input": p.fmt_with(&crate::hopfdiff::a_name), "got": got.fmt_with(&crate::hopfdiff::a_name)}))
    });
    cx.all("mu-multiplicative", "μ(a_1 a_2) = μ(a_1) μ(a_2)", [()], |_| {
        let p = CommPoly::var(0).mul(&CommPoly::var(1));
        let lhs = deform::mu(&fl, &p);
        let rhs = deform::mu(&fl, &CommPoly::var(0)).mul(&deform::mu(&fl, &CommPoly::var(1)));
        (lhs != rhs).then(|| json!({"lhs": lhs.fmt_with(&name), "rhs": rhs.fmt_with(&name)}))
    });
    cx.all("pi-hopf", "π intertwines the coproducts and kills β_b for Lie degree ≥ 2", fl.hall_basis(wmax, None), |x| {
        let e = fl.element(x);
        let want: CommTensor = if e.is_letter() { abelianize_tensor(&h.coproduct(&h.gen(e.word[0]))) } else { CommTensor::zero() };
        let img = deform::pi(&fl, &CommPoly::var(x));
        if !e.is_letter() && !img.is_zero() {
            return Some(json!({"b": fl.name(x), "pi": img.fmt_with(&crate::hopfdiff::a_name)}));
        }
        match d.limit_coproduct(x) {
            Ok(t) => {
                let got = deform::pi_tensor(&fl, &t);
                (got != want).then(|| json!({"b": fl.name(x), "got": got.fmt_with(&crate::hopfdiff::a_name), "want": want.fmt_with(&crate::hopfdiff::a_name)}))
            }
            Err(e) => Some(json!({"b": fl.name(x), "error": e.to_string()})),
        }
    });
    recovers_check(cx, &d, fl.hall_basis(wmax, None));
}

fn thm41(cx: &mut Ctx, b: &Bounds) {
    let (h, fl, nmax, wmax) = kind_setup(b, 8);
    let d = Deformed::new(DeformKind::ReesPrime, &h, &fl).expect("full family");
    let name = |i: usize| d.var_name(i);
    cx.all(
        "h0-coproduct-formula",
        "Δ(ᾱ_n) = ᾱ_n⊗1 + 1⊗ᾱ_n + Σ_{k=2}^{n−1} C(n,k) ᾱ_k⊗ᾱ_1^{n−k} + Σ_{k=1}^{n−1} (k+1) ᾱ_1^k⊗ᾱ_{n−k}",
        1..=nmax as u8,
        |n| {
            let want = deform::rees_prime_limit_formula(&fl, n);
            match d.limit_coproduct(fl.letter(n)) {
                Ok(got) if got == want => None,
                Ok(got) => Some(json!({
                    "n": n,
                    "computed": got.fmt_with(&name),
                    "formula": want.fmt_with(&name),
                    "computed − formula": got.sub(&want).fmt_with(&name),
                })),
                Err(e) => Some(json!({"n": n, "error": e.to_string()})),
            }
        },
    );
    cotangent_check(cx, &d, nmax, Cobracket::Star, "δ(d_n) = (n−2) d_{n−1} ∧ d_1");
    presentation_check(cx, &d, wmax, "[α̂_{b1}, α̂_{b2}] = ħ·α̂_{[b1,b2]}");
    poisson_suite(cx, &d, wmax);
    integrality_check(cx, &d, wmax);
    recovers_check(cx, &d, fl.hall_basis(wmax, None));
}

fn thm51(cx: &mut Ctx, b: &Bounds) {
    let (h, fl, nmax, wmax) = kind_setup(b, 8);
    let d = Deformed::new(DeformKind::PrimeVee, &h, &fl).expect("full family");
    presentation_check(cx, &d, wmax, "[α̌_{b1}, α̌_{b2}] = α̌_{[b1,b2]}");
    cx.all("h0-primitive", "α̌_b|₀ is primitive (ħ = 0 fiber is U(L))", fl.hall_basis(wmax, None), |x| match d.primitive_at_zero(x) {
        Ok(true) => None,
        Ok(false) => Some(json!({"b": fl.name(x), "coproduct": d.fmt_tensor(&d.coproduct(&d.generator(x)))})),
        Err(e) => Some(json!({"b": fl.name(x), "error": e.to_string()})),
    });
    cx.all("induced-cobracket", "ħ^{−1}(Δ − Δ^op)(α̌_n) mod ħ = (n−2) x_{n−1} ∧ x_1", 1..=nmax as u8, |n| {
        let want = fl.cobracket_gen(Cobracket::Star, n);
        match d.induced_cobracket(&d.gen_n(n)) {
            Ok(got) if got == want => None,
            Ok(got) => Some(json!({"n": n, "got": wedge(&fl, &got), "want": wedge(&fl, &want)})),
            Err(e) => Some(json!({"n": n, "error": e.to_string()})),
        }
    });
    integrality_check(cx, &d, wmax);
    recovers_check(cx, &d, fl.hall_basis(wmax, None));
}

fn specializations(cx: &mut Ctx, b: &Bounds) {
    let w = b.wmax.unwrap_or(6).max(1);
    let h = Hopf::full(w);
    let fl = FreeLie::new(None, w);
    let hall = fl.hall_basis(w, None);
    let cases: Vec<(DeformKind, HallId)> = DeformKind::ALL.iter().flat_map(|&k| hall.iter().map(move |&x| (k, x))).collect();
    let ds: BTreeMap<&str, Deformed> =
        DeformKind::ALL.iter().map(|&k| (k.cli_name(), Deformed::new(k, &h, &fl).expect("full family"))).collect();
    let get = |k: DeformKind| &ds[k.cli_name()];
    cx.all("hopf-integral", "each kind is a Hopf k[ħ]-algebra on its generators", cases.clone(), |(k, x)| {
        get(k).hopf_check(x).err().map(|e| json!({"kind": k.cli_name(), "generator": fl.name(x), "error": e}))
    });
    cx.all("h1-recovers-h", "ħ = 1 reproduces the structure constants of H", cases.clone(), |(k, x)| {
        (!get(k).recovers_at_one(x)).then(|| json!({"kind": k.cli_name(), "generator": fl.name(x)}))
    });
    let coc: Vec<(DeformKind, HallId)> = cases.iter().copied().filter(|(k, _)| !k.commutative_limit()).collect();
    cx.all("h0-cocommutative", "ħ = 0 fibers of rees-vee and prime-vee are U(L): generators primitive", coc, |(k, x)| {
        match get(k).primitive_at_zero(x) {
            Ok(true) => None,
            other => Some(json!({"kind": k.cli_name(), "generator": fl.name(x), "result": format!("{other:?}")})),
        }
    });
    let com: Vec<(DeformKind, (HallId, HallId))> = [DeformKind::VeePrime, DeformKind::ReesPrime]
        .iter()
        .flat_map(|&k| hall_pairs(&fl, w).into_iter().map(move |p| (k, p)))
        .collect();
    cx.all("h0-commutative", "ħ = 0 fibers of vee-prime and rees-prime are commutative", com, |(k, (x, y))| {
        let d = get(k);
        let c = d.decompose(&d.generator(x).commutator(&d.generator(y)));
        match Deformed::min_valuation(&c) {
            Some(v) if v < 1 => Some(json!({"kind": k.cli_name(), "b1": fl.name(x), "b2": fl.name(y), "valuation": v})),
            _ => None,
        }
    });
}

fn random_series(rng: &mut ChaCha8Rng, m: usize, odd: bool) -> DiffSeries {
    DiffSeries::new(
        (1..=m)
            .map(|n| if odd && n % 2 == 1 { rat(0) } else { ratio(rng.gen_range(-5..=5i64), rng.gen_range(1..=4i64)) })
            .collect(),
    )
}

fn nottingham_duality(cx: &mut Ctx, b: &Bounds) {
    let m = b.nmax.unwrap_or(8).max(1) as usize;
    let samples = b.samples.unwrap_or(20);
    let h = Hopf::full(m as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let pairs: Vec<(DiffSeries, DiffSeries)> = (0..samples).map(|_| (random_series(&mut rng, m, false), random_series(&mut rng, m, false))).collect();
    let id = DiffSeries::identity(m);
    let s = |f: &DiffSeries| f.to_string();
    let cop: Vec<CommTensor> = (1..=m as u8).map(|n| abelianize_tensor(&h.coproduct(&h.gen(n)))).collect();
    let anti: Vec<CommPoly> = (1..=m as u8).map(|n| abelianize(&h.antipode(&h.gen(n)))).collect();
    cx.all("coproduct-dual-to-composition", "⟨Δa_n, f⊗g⟩ = a_n(f∘g)", pairs.iter(), |(f, g)| {
        let fg = f.compose(g).expect("same bound");
        (1..=m).find_map(|n| {
            let lhs = pair_tensor(&cop[n - 1], f, g).expect("within bound");
            (lhs != fg.coeff(n)).then(|| json!({"n": n, "f": s(f), "g": s(g), "pairing": lhs.to_string(), "a_n(f∘g)": fg.coeff(n).to_string()}))
        })
    });
    cx.all("antipode-dual-to-inverse", "a_n(f^{−1}) = (S a_n)(f)", pairs.iter(), |(f, _)| {
        let inv = f.invert();
        (1..=m).find_map(|n| {
            let lhs = pair(&anti[n - 1], f).expect("within bound");
            (lhs != inv.coeff(n)).then(|| json!({"n": n, "f": s(f), "(S a_n)(f)": lhs.to_string(), "a_n(f^-1)": inv.coeff(n).to_string()}))
        })
    });
    cx.all("counit-dual-to-identity", "⟨1, f⟩ = 1 and ε(a_n) = a_n(id) = 0", pairs.iter(), |(f, _)| {
        let one = pair(&CommPoly::constant(rat(1)), f).expect("constant");
        (one != rat(1) || !id.is_identity()).then(|| json!({"f": s(f), "pairing": one.to_string()}))
    });
    cx.all("closed-form-composition", "c_k = b_k + Σ_r a_r Q^r_{k−r}(b) matches substitution", pairs.iter(), |(f, g)| {
        let (a, c) = (f.compose(g).expect("bound"), f.compose_closed_form(g, &h).expect("bound"));
        (a != c).then(|| json!({"f": s(f), "g": s(g), "substitution": s(&a), "closed_form": s(&c)}))
    });
    let worked: Vec<(usize, usize)> = (1..=5).flat_map(|l| (1..=m).map(move |s| (l, s))).filter(|&(l, _)| l <= m).collect();
    cx.all("worked-composition", "(x + x^{ℓ+1})∘(x/(1−x)) has x^{s+1}-coefficient 1 + C(s, ℓ)", worked, |(l, sx)| {
        let mut fc = vec![rat(0); m];
        fc[l - 1] = rat(1);
        let f = DiffSeries::new(fc);
        let g = DiffSeries::new(vec![rat(1); m]);
        let got = f.compose(&g).expect("bound").coeff(sx);
        let want = rat(1) + Rational::from_integer(binom_int(sx as i64, l as i64));
        (got != want).then(|| json!({"l": l, "s": sx, "got": got.to_string(), "want": want.to_string()}))
    });
    let triples: Vec<(DiffSeries, DiffSeries, DiffSeries)> =
        (0..samples).map(|_| (random_series(&mut rng, m, false), random_series(&mut rng, m, false), random_series(&mut rng, m, false))).collect();
    cx.all("associativity", "(f∘g)∘k = f∘(g∘k)", triples.iter(), |(f, g, k)| {
        let l = f.compose(g).and_then(|x| x.compose(k)).expect("bound");
        let r = g.compose(k).and_then(|x| f.compose(&x)).expect("bound");
        (l != r).then(|| json!({"f": s(f), "g": s(g), "k": s(k), "lhs": s(&l), "rhs": s(&r)}))
    });
    cx.all("identity-and-inverse", "f∘id = id∘f = f and f∘f^{−1} = f^{−1}∘f = id", pairs.iter(), |(f, _)| {
        let inv = f.invert();
        let ok = f.compose(&id).ok().as_ref() == Some(f)
            && id.compose(f).ok().as_ref() == Some(f)
            && f.compose(&inv).map(|x| x.is_identity()).unwrap_or(false)
            && inv.compose(f).map(|x| x.is_identity()).unwrap_or(false);
        (!ok).then(|| json!({"f": s(f), "inverse": s(&inv)}))
    });
    let x2 = DiffSeries::new((1..=m).map(|n| rat((n == 1) as i64)).collect());
    let catalan: Vec<Rational> = (1..=m as i64)
        .map(|n| {
            let c = Rational::from_integer(binom_int(2 * n, n)) / rat(n + 1);
            if n % 2 == 1 { -c } else { c }
        })
        .collect();
    cx.all("examples", "(x+x²)∘(x+x²) = x+2x²+2x³+x⁴; (x+x²)^{−1} has signed Catalan coefficients", [()], |_| {
        let sq = x2.compose(&x2).expect("bound");
        let want: Vec<Rational> = (1..=m).map(|n| rat([2, 2, 1].get(n - 1).copied().unwrap_or(0))).collect();
        let inv = x2.invert();
        (sq.coeffs() != want.as_slice() || inv.coeffs() != catalan.as_slice()).then(|| json!({"square": s(&sq), "inverse": s(&inv)}))
    });
    let odd: Vec<(DiffSeries, DiffSeries)> = (0..samples).map(|_| (random_series(&mut rng, m, true), random_series(&mut rng, m, true))).collect();
    cx.all("odd-closure", "odd series are closed under composition and inversion", odd.iter(), |(f, g)| {
        let fg = f.compose(g).expect("bound");
        let fi = f.invert();
        (!fg.is_odd() || !fi.is_odd()).then(|| json!({"f": s(f), "g": s(g), "f∘g": s(&fg), "f^-1": s(&fi)}))
    });
    let nu = 4.min(m);
    cx.all("quotient-morphism", "projection to G_ν commutes with composition (ν = 4)", pairs.iter(), |(f, g)| {
        let lhs = f.compose(g).and_then(|x| x.quotient_project(nu)).expect("bound");
        let pf = f.quotient_project(nu).expect("ν ≤ bound");
        let pg = g.quotient_project(nu).expect("ν ≤ bound");
        let rhs = pf.compose(&pg).and_then(|x| x.quotient_project(nu)).expect("bound");
        (lhs != rhs).then(|| json!({"f": s(f), "g": s(g), "lhs": s(&lhs), "rhs": s(&rhs)}))
    });
}

fn tau_of_tensor(fl: &FreeLie, t: &LieTensor) -> Option<i64> {
    t.keys().map(|&(i, j)| fl.element(i).tau() + fl.element(j).tau()).max()
}

fn cobracket_laws(cx: &mut Ctx, b: &Bounds) {
    let w = b.wmax.unwrap_or(6).max(1);
    let fl = FreeLie::new(None, w);
    let hall = fl.hall_basis(w, None);
    for which in [Cobracket::Bullet, Cobracket::Star] {
        let tag = match which {
            Cobracket::Bullet => "bullet",
            Cobracket::Star => "star",
        };
        cx.all(&format!("{tag}-antisymmetry"), "δ(x) ∈ L ∧ L", hall.clone(), |x| {
            let t = fl.cobracket_hall(which, x);
            t.iter()
                .find(|(&(i, j), c)| t.get(&(j, i)).map(|d| -d) != Some((*c).clone()))
                .map(|_| json!({"x": fl.name(x), "delta": wedge(&fl, &t)}))
        });
        cx.all(&format!("{tag}-co-jacobi"), "(1 + σ + σ²)(δ ⊗ id)δ = 0", hall.clone(), |x| {
            let t3 = fl.cobracket_left(which, &fl.cobracket_hall(which, x));
            let mut sum: BTreeMap<(HallId, HallId, HallId), Rational> = BTreeMap::new();
            for (&(a, bb, c), v) in &t3 {
                for k in [(a, bb, c), (c, a, bb), (bb, c, a)] {
                    *sum.entry(k).or_insert_with(|| rat(0)) += v;
                }
            }
            sum.iter().find(|(_, v)| !Coeff::is_zero(*v)).map(|(k, v)| {
                json!({"x": fl.name(x), "term": format!("{} ⊗ {} ⊗ {}", fl.name(k.0), fl.name(k.1), fl.name(k.2)), "coefficient": v.to_string()})
            })
        });
        cx.all(&format!("{tag}-cocycle"), "δ([x,y]) = x.δ(y) − y.δ(x)", hall_pairs(&fl, w), |(x, y)| {
            let lhs = fl.cobracket(which, &fl.hall_bracket(x, y));
            let mut rhs = fl.ad_tensor(&fl.unit(x), &fl.cobracket_hall(which, y));
            for (k, v) in fl.ad_tensor(&fl.unit(y), &fl.cobracket_hall(which, x)) {
                *rhs.entry(k).or_insert_with(|| rat(0)) -= v;
            }
            rhs.retain(|_, v| !Coeff::is_zero(v));
            (lhs != rhs).then(|| json!({"x": fl.name(x), "y": fl.name(y), "lhs": wedge(&fl, &lhs), "rhs": wedge(&fl, &rhs)}))
        });
    }
    // τ-homogeneous inputs: single Hall elements and, per (weight, τ), the
    // sum of all Hall elements with coefficients 1, 2, 3, …
    let mut homog: Vec<LieElt> = hall.iter().map(|&x| fl.unit(x)).collect();
    for wt in 1..=w {
        let mut by_tau: BTreeMap<i64, Vec<HallId>> = BTreeMap::new();
        for x in fl.of_weight(wt) {
            by_tau.entry(fl.element(x).tau()).or_default().push(x);
        }
        for ids in by_tau.values().filter(|v| v.len() > 1) {
            homog.push(ids.iter().enumerate().map(|(i, &x)| (x, rat(i as i64 + 1))).collect());
        }
    }
    cx.all("bullet-tau-preserving", "max τ over δ_•(z) equals τ(z) for τ-homogeneous z with δ_•(z) ≠ 0", homog, |z| {
        let t = fl.cobracket(Cobracket::Bullet, &z);
        let tz = z.keys().map(|&x| fl.element(x).tau()).max();
        match tau_of_tensor(&fl, &t) {
            None => None,
            Some(v) if Some(v) == tz => None,
            Some(v) => Some(json!({"z": fl.lie_name(&z), "tau(z)": tz, "tau(delta z)": v, "delta": wedge(&fl, &t)})),
        }
    });
    let small = FreeLie::with_alphabet(vec![1, 2], w);
    cx.all("bullet-kernel-free-on-x1-x2", "Ker δ_• ∩ L_(w) = L(x_1, x_2)_(w)", 1..=w, |wt| {
        let ids = fl.of_weight(wt);
        let row = |x: &LieElt| ids.iter().map(|i| x.get(i).cloned().unwrap_or_else(|| rat(0))).collect::<Vec<_>>();
        let ker: Vec<Vec<Rational>> = fl.cobracket_kernel(wt, Cobracket::Bullet).iter().map(row).collect();
        let sub: Vec<Vec<Rational>> = small
            .of_weight(wt)
            .iter()
            .map(|&x| row(&fl.lie_from_poly(small.expansion(x)).expect("Lie element")))
            .collect();
        let equal = ker.len() == sub.len() && linalg::same_span(&ker, &sub);
        (!equal).then(|| json!({"weight": wt, "dim kernel": ker.len(), "dim L(x1,x2)": sub.len()}))
    });
}

fn fingerprints(cx: &mut Ctx, b: &Bounds) {
    let w = b.wmax.unwrap_or(6).max(1);
    let h = Hopf::full(w);
    let fl = FreeLie::new(None, w);
    let dims = |which| (1..=w).map(|wt| fl.cobracket_kernel(wt, which).len()).collect::<Vec<_>>();
    let (db, ds) = (dims(Cobracket::Bullet), dims(Cobracket::Star));
    let differ = db != ds;
    cx.push(
        "kernel-dims-differ",
        "per-weight dim Ker δ_• and dim Ker δ_* differ in some weight",
        differ,
        Some(json!({"weights": (1..=w).collect::<Vec<_>>(), "dim Ker bullet": db, "dim Ker star": ds})),
    );
    let vp = Deformed::new(DeformKind::VeePrime, &h, &fl).expect("full family");
    let rp = Deformed::new(DeformKind::ReesPrime, &h, &fl).expect("full family");
    cx.all("poisson-tables-agree", "{β_{b1}, β_{b2}} and {η_{b1}, η_{b2}} agree under β_b ↔ η_b", hall_pairs(&fl, w), |(x, y)| {
        let (a, c) = (vp.poisson_bracket(x, y), rp.poisson_bracket(x, y));
        (a != c).then(|| json!({"b1": fl.name(x), "b2": fl.name(y), "vee-prime": format!("{a:?}"), "rees-prime": format!("{c:?}")}))
    });
    let first = (1..=w as u8).find(|&n| vp.limit_coproduct(fl.letter(n)).ok() != rp.limit_coproduct(fl.letter(n)).ok());
    cx.push(
        "coproduct-tables-differ",
        "the ħ = 0 coproducts of β_{x_n} and η_{x_n} differ under the same correspondence",
        first.is_some(),
        first.map(|n| {
            json!({
                "first n": n,
                "vee-prime": vp.limit_coproduct(fl.letter(n)).map(|t| t.fmt_with(&|i| vp.var_name(i))).ok(),
                "rees-prime": rp.limit_coproduct(fl.letter(n)).map(|t| t.fmt_with(&|i| rp.var_name(i))).ok(),
            })
        }),
    );
}

fn odd_morphism(cx: &mut Ctx, b: &Bounds) {
    let w = b.wmax.unwrap_or(8).max(1);
    let samples = b.samples.unwrap_or(50);
    let hh = Hopf::full(w);
    let hk = Hopf::new(Family::Odd, None, w);
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut elems: Vec<P> = (1..=w as u8).map(|n| hh.gen(n)).collect();
    elems.extend((0..samples).map(|_| random_element(&mut rng, &hh, w)));
    let pi = |p: &P| Hopf::odd_projection(p);
    cx.all("coproduct", "(π⊗π)∘Δ_H = Δ_K∘π", elems.iter(), |p| {
        let l = Hopf::odd_projection_tensor(&hh.coproduct(p));
        let r = hk.coproduct(&pi(p));
        (l != r).then(|| json!({"element": apoly(p), "lhs": atensor(&l), "rhs": atensor(&r)}))
    });
    cx.all("antipode", "π∘S_H = S_K∘π", elems.iter(), |p| {
        let (l, r) = (pi(&hh.antipode(p)), hk.antipode(&pi(p)));
        (l != r).then(|| json!({"element": apoly(p), "lhs": apoly(&l), "rhs": apoly(&r)}))
    });
    cx.all("counit", "ε_K∘π = ε_H", elems.iter(), |p| {
        let (l, r) = (hk.counit(&pi(p)), hh.counit(p));
        (l != r).then(|| json!({"element": apoly(p), "lhs": l.to_string(), "rhs": r.to_string()}))
    });
    let prods: Vec<(P, P)> = (0..samples).map(|_| (random_element(&mut rng, &hh, w / 2), random_element(&mut rng, &hh, w / 2))).collect();
    cx.all("multiplicative", "π(pq) = π(p)π(q)", prods.iter(), |(p, q)| {
        let (l, r) = (pi(&p.mul(q)), pi(p).mul(&pi(q)));
        (l != r).then(|| json!({"p": apoly(p), "q": apoly(q), "lhs": apoly(&l), "rhs": apoly(&r)}))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", &Bounds::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let b = Bounds { wmax: Some(4), nmax: Some(4), lmax: Some(4), tmax: Some(4), samples: Some(5), ..Bounds::default() };
        for s in ["hopf-axioms", "q-identities", "lemma41", "prop42", "thm21", "thm31", "thm51", "specializations", "nottingham-duality", "cobracket-laws", "odd-morphism"] {
            let r = run_suite(s, &b).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn trivial_unit_run() {
        let b = Bounds { wmax: Some(0), ..Bounds::default() };
        assert!(run_suite("hopf-axioms", &b).unwrap().passed());
    }
}
