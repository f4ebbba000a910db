//! Acceptance criteria 1–15. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hopfdiff_core::coeff::{binomial, rat, ratio, Rational};
use hopfdiff_core::hopfdiff::{Family, Hopf};
use hopfdiff_core::nottingham::DiffSeries;
use hopfdiff_core::verify::{run_suite, Bounds, Check, SuiteReport};

struct Outcome {
    pass: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, detail: Vec::new() }
    }

    fn require(&mut self, r: &SuiteReport, ids: &[&str]) {
        for id in ids {
            match r.check(id) {
                Some(c) => self.note(c, &r.suite),
                None => {
                    self.pass = false;
                    self.detail.push(format!("{}: missing check {id}", r.suite));
                }
            }
        }
    }

    fn require_all(&mut self, r: &SuiteReport, except: &[&str]) {
        for c in r.checks.iter().filter(|c| !except.contains(&c.id.as_str())) {
            self.note(c, &r.suite);
        }
    }

    fn note(&mut self, c: &Check, suite: &str) {
        if !c.pass {
            self.pass = false;
            let w = c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
            self.detail.push(format!("{suite}/{} failed: {w}", c.id));
        }
    }

    fn assert(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.pass = false;
            self.detail.push(msg());
        }
    }

    fn within(&mut self, t: Duration, limit: Duration, what: &str) {
        self.assert(t <= limit, || format!("{what} took {t:?}, target {limit:?}"));
    }
}

fn suite(name: &str, b: Bounds) -> (SuiteReport, Duration) {
    let t = Instant::now();
    let r = run_suite(name, &b).expect("known suite");
    (r, t.elapsed())
}

fn bounds() -> Bounds {
    Bounds::default()
}

fn c1() -> Outcome {
    let mut o = Outcome::new();
    let (r, t) = suite("hopf-axioms", Bounds { wmax: Some(8), samples: Some(50), nu: Some(8), seed: 1, ..bounds() });
    o.require_all(&r, &[]);
    o.within(t, Duration::from_secs(60), "hopf-axioms");
    o
}

/// Σ_k C(ℓ+1, k)·#{compositions of t into k parts} — counted here directly.
fn q_at_ones_oracle(l: i64, t: i64) -> Rational {
    if t == 0 {
        return rat(1);
    }
    (1..=t).map(|k| binomial(l + 1, k) * binomial(t - 1, k - 1)).fold(rat(0), |a, b| a + b)
}

fn c2() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("q-identities", Bounds { lmax: Some(10), tmax: Some(10), ..bounds() });
    o.require(&r, &["q-at-ones", "q-recurrence"]);
    for l in 0..=10 {
        for t in 0..=10 {
            let v = q_at_ones_oracle(l, t);
            o.assert(v == binomial(l + t, l), || format!("composition count oracle disagrees at ℓ={l}, t={t}"));
        }
    }
    o
}

fn c3(r: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.require(r, &["delta-n-a-n", "delta-n-1-alpha-n"]);
    o
}

fn c4() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("lemma41", Bounds { wmax: Some(8), ..bounds() });
    o.require(&r, &["tau-q", "tau-z"]);
    o
}

fn c5(r: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.require(r, &["kappa-alpha-1", "kappa-alpha-n", "kappa-bracket-r-s", "kappa-hall-tau", "kappa-product-tau"]);
    o
}

fn c6() -> Outcome {
    let mut o = Outcome::new();
    let (r, t) = suite("prop42", Bounds { wmax: Some(6), ..bounds() });
    o.require(&r, &["d-equals-theta"]);
    o.within(t, Duration::from_secs(300), "prop42");
    o
}

fn c7() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("thm21", Bounds { nmax: Some(8), wmax: Some(6), ..bounds() });
    o.require(&r, &["induced-cobracket", "h1-recovers-h", "closed-form-coproduct", "h0-primitive"]);
    o
}

fn c8() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("thm31", Bounds { nmax: Some(8), wmax: Some(6), ..bounds() });
    o.require(
        &r,
        &["membership", "presentation", "h0-commutative", "poisson-bracket", "cotangent-cobracket", "pi-mu-identity", "mu-hopf", "pi-hopf"],
    );
    o
}

fn c9() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("thm41", Bounds { nmax: Some(8), wmax: Some(6), ..bounds() });
    o.require(&r, &["h0-coproduct-formula", "cotangent-cobracket", "h1-recovers-h"]);
    o
}

fn c10() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("thm51", Bounds { nmax: Some(8), wmax: Some(6), ..bounds() });
    o.require(&r, &["presentation", "h0-primitive", "induced-cobracket", "h1-recovers-h"]);
    o
}

fn c11(r: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.require_all(r, &["bullet-kernel-free-on-x1-x2"]);
    o
}

fn c12(r: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.require(r, &["bullet-kernel-free-on-x1-x2"]);
    o
}

fn c13() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("thm61-fingerprints", Bounds { wmax: Some(6), ..bounds() });
    o.require(&r, &["kernel-dims-differ", "poisson-tables-agree"]);
    o
}

/// f∘g by Horner's rule on truncated power series, independent of the
/// library's composition.
fn horner_compose(f: &[Rational], g: &[Rational], m: usize) -> Vec<Rational> {
    // series as coefficient vectors of x^0..x^{m+1}
    let mut fs = vec![rat(0); m + 2];
    let mut gs = vec![rat(0); m + 2];
    fs[1] = rat(1);
    gs[1] = rat(1);
    for n in 1..=m {
        fs[n + 1] = f[n - 1].clone();
        gs[n + 1] = g[n - 1].clone();
    }
    let mut acc = vec![rat(0); m + 2];
    for c in fs.iter().rev() {
        let mut next = vec![rat(0); m + 2];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in gs.iter().enumerate() {
                if i + j <= m + 1 {
                    next[i + j] += a * b;
                }
            }
        }
        next[0] += c;
        acc = next;
    }
    acc[2..].to_vec()
}

fn c14() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("nottingham-duality", Bounds { nmax: Some(8), samples: Some(20), seed: 14, ..bounds() });
    o.require(
        &r,
        &["coproduct-dual-to-composition", "antipode-dual-to-inverse", "closed-form-composition", "worked-composition"],
    );
    let m = 8;
    let mut x = 1i64;
    let mut next = || {
        x = (x * 48271) % 2147483647;
        ratio(x % 11 - 5, x % 4 + 1)
    };
    for _ in 0..20 {
        let f: Vec<Rational> = (0..m).map(|_| next()).collect();
        let g: Vec<Rational> = (0..m).map(|_| next()).collect();
        let lib = DiffSeries::new(f.clone()).compose(&DiffSeries::new(g.clone())).expect("same bound");
        o.assert(lib.coeffs() == horner_compose(&f, &g, m).as_slice(), || format!("Horner oracle disagrees on f={f:?}"));
    }
    o
}

fn c15() -> Outcome {
    let mut o = Outcome::new();
    let (r, _) = suite("odd-morphism", Bounds { wmax: Some(8), samples: Some(50), seed: 15, ..bounds() });
    o.require_all(&r, &[]);
    let k = Bounds { family: Family::Odd, ..bounds() };
    let (r, t) = suite("hopf-axioms", Bounds { wmax: Some(8), samples: Some(50), seed: 1, ..k.clone() });
    o.require_all(&r, &[]);
    o.within(t, Duration::from_secs(60), "hopf-axioms (K)");
    let (r, _) = suite("q-identities", Bounds { lmax: Some(10), tmax: Some(10), ..k.clone() });
    o.require(&r, &["q-at-ones", "q-projection"]);
    let (r, _) = suite("lemma42", Bounds { nmax: Some(6), ..k });
    o.require(&r, &["delta-n-a-n"]);
    // Q̄^ℓ_t(1,1,…) = C(2ℓ+t, t) from the composition count
    let h = Hopf::new(Family::Odd, None, 20);
    for l in 0..=10u32 {
        for t in 0..=10u32 {
            let ones = h.q_poly(l, t).terms().fold(rat(0), |a, (_, c)| a + c);
            let want = q_at_ones_oracle(2 * l as i64, t as i64);
            o.assert(ones == want, || format!("odd composition count oracle disagrees at ℓ={l}, t={t}"));
        }
    }
    o
}

fn main() -> ExitCode {
    let start = Instant::now();
    let (lemma42, _) = suite("lemma42", Bounds { nmax: Some(6), wmax: Some(8), ..bounds() });
    let (laws, _) = suite("cobracket-laws", Bounds { wmax: Some(6), ..bounds() });
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Hopf axioms on generators and random products through weight 8", Box::new(c1)),
        ("Q^ℓ_t(1,…) = C(ℓ+t, ℓ) and the Q-recurrence", Box::new(c2)),
        ("δ_n(a_n) = n!·a_1^{⊗n} and the δ_{n−1}(α_n) formula", Box::new(|| c3(&lemma42))),
        ("τ(Z^ℓ_t) ≤ t−1 and τ(Q^ℓ_t) = t", Box::new(c4)),
        ("κ values on α_n, [α_r, α_s], Hall elements and products", Box::new(|| c5(&lemma42))),
        ("D_k = Θ_k on every weight ≤ 6", Box::new(c6)),
        ("rees-vee: induced cobracket δ_• and ħ = 1 recovery", Box::new(c7)),
        ("vee-prime: membership, presentation, Poisson limit, cotangent cobracket, section/retraction", Box::new(c8)),
        ("rees-prime: ħ = 0 coproduct formula, cotangent cobracket, ħ = 1 recovery", Box::new(c9)),
        ("prime-vee: presentation, ħ = 0 limit U(L) with δ_*, ħ = 1 recovery", Box::new(c10)),
        ("cobracket laws and τ-preservation", Box::new(|| c11(&laws))),
        ("Ker δ_• = free Lie algebra on x_1, x_2", Box::new(|| c12(&laws))),
        ("kernel-dimension fingerprints differ; Poisson tables agree", Box::new(c13)),
        ("Nottingham duality and composition identities", Box::new(c14)),
        ("odd family: Hopf morphism H ↠ K and criteria 1–3 for K", Box::new(c15)),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2}: {} — {} ({:.1} s)", i + 1, if o.pass { "PASS" } else { "FAIL" }, title, t.elapsed().as_secs_f64());
        for d in &o.detail {
            println!("    {d}");
        }
    }
    println!("acceptance: {} of {} criteria pass ({:.1} s)", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
