use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hopfdiff_core::deform::{DeformKind, Deformed};
use hopfdiff_core::drinfeld::Drinfeld;
use hopfdiff_core::freelie::{Cobracket, FreeLie, HallId};
use hopfdiff_core::hopfdiff::{abelianize, Family, Hopf};
use hopfdiff_core::nottingham::{pair, DiffSeries};
use hopfdiff_core::parse::{parse_poly, poly_to_json, tensor_to_json, Prefix};
use hopfdiff_core::verify::{run_suite, Bounds, SUITES};
use hopfdiff_core::{Error, LPoly, LTensor};

#[derive(Parser)]
#[command(name = "hopfdiff", version, about = "Exact computations in the Hopf algebra of formal diffeomorphisms")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation weight N.
    #[arg(long, global = true, env = "HOPFDIFF_DEFAULT_TRUNC", default_value_t = 8)]
    trunc: u32,
    /// Number of generators ν (unbounded if omitted).
    #[arg(long, global = true)]
    nu: Option<u32>,
    #[arg(long, global = true, value_enum, ignore_case = true, default_value_t = Fam::H)]
    family: Fam,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fam {
    H,
    K,
}

impl From<Fam> for Family {
    fn from(f: Fam) -> Family {
        match f {
            Fam::H => Family::Full,
            Fam::K => Family::Odd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ReesVee,
    VeePrime,
    ReesPrime,
    PrimeVee,
}

impl From<Kind> for DeformKind {
    fn from(k: Kind) -> DeformKind {
        match k {
            Kind::ReesVee => DeformKind::ReesVee,
            Kind::VeePrime => DeformKind::VeePrime,
            Kind::ReesPrime => DeformKind::ReesPrime,
            Kind::PrimeVee => DeformKind::PrimeVee,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Bullet,
    Star,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a single value.
    Compute {
        #[command(subcommand)]
        what: Compute,
    },
    /// Run a verification suite; exit code 0 iff every check passes.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: hopf-axioms, q-identities, lemma41, lemma42, prop42, thm21,
    /// thm31, thm41, thm51, specializations, nottingham-duality,
    /// cobracket-laws, thm61-fingerprints, odd-morphism.
    suite: String,
    /// Largest weight checked.
    #[arg(long)]
    wmax: Option<u32>,
    /// Largest generator index checked.
    #[arg(long)]
    nmax: Option<u32>,
    /// Largest ℓ for the Q/Z families.
    #[arg(long)]
    lmax: Option<u32>,
    /// Largest t for the Q/Z families.
    #[arg(long)]
    tmax: Option<u32>,
    /// Number of random samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for the random samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Compute {
    /// Δ(p); with --kind, in that deformation's basis (x-letters mean ħ^{-1}a).
    Coproduct {
        expr: String,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// S(p).
    Antipode { expr: String },
    /// Q^ℓ_t (Q̄ for --family K).
    Qpoly {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        t: u32,
    },
    /// Z^ℓ_t = Q^ℓ_t − C(ℓ+t, t) a_1^t.
    Zpoly {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        t: u32,
    },
    /// δ_n(p).
    Delta {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    /// κ(p): least k with δ_{k+1}(p) = 0.
    Kappa { expr: String },
    /// τ-degree (a-letters are read through α; x-letters as U(L)).
    Tau { expr: String },
    /// D_k versus Θ_k on the weight-w component.
    Filtration {
        #[arg(long)]
        w: u32,
    },
    /// δ_• or δ_* of a Lie element written in x-letters.
    Cobracket {
        #[arg(long, value_enum, default_value_t = Which::Bullet)]
        which: Which,
        expr: String,
    },
    /// Coproduct of a generator (Hall name such as x3 or [x1,x2]) at ħ = 0 or 1.
    Specialize {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        at: u8,
        generator: String,
    },
    /// Semiclassical Poisson bracket of two generators.
    Poisson {
        #[arg(long, value_enum, default_value_t = Kind::VeePrime)]
        kind: Kind,
        b1: String,
        b2: String,
    },
    /// f∘g for series such as "x + 1/2 x^2".
    Compose {
        f: String,
        g: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Compositional inverse.
    Invert {
        f: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Evaluate a polynomial in the a_n at a series' coefficients.
    Pair {
        poly: String,
        f: String,
        #[arg(long)]
        bound: Option<usize>,
    },
}

enum Fail {
    Usage(String),
    Domain(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Fail::Usage(e.to_string()),
            _ => Fail::Domain(e.to_string()),
        }
    }
}

struct Out {
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, ok)) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<(Out, bool), Fail> {
    match &cli.cmd {
        Cmd::Verify(v) => {
            if !SUITES.contains(&v.suite.as_str()) {
                return Err(Fail::Usage(format!("unknown suite '{}'; expected one of {}", v.suite, SUITES.join(", "))));
            }
            let b = Bounds {
                wmax: v.wmax,
                nmax: v.nmax,
                lmax: v.lmax,
                tmax: v.tmax,
                samples: v.samples,
                seed: v.seed,
                family: cli.family.into(),
                nu: cli.nu,
            };
            let r = run_suite(&v.suite, &b)?;
            let ok = r.passed();
            Ok((Out { text: r.to_text(), json: serde_json::to_value(&r).expect("serializable") }, ok))
        }
        Cmd::Compute { what } => compute(cli, what).map(|o| (o, true)),
    }
}

/// Input in the a-generators of H(ħ), with the prefix it was written in.
fn read(cli: &Cli, expr: &str) -> Result<(LPoly, Prefix), Fail> {
    let p = parse_poly(expr, cli.nu, cli.trunc)?;
    Ok((p.poly, p.prefix.unwrap_or(Prefix::A)))
}

fn hopf(cli: &Cli) -> Hopf {
    Hopf::new(cli.family.into(), cli.nu, cli.trunc)
}

fn check_family(h: &Hopf, p: &LPoly) -> Result<(), Fail> {
    h.validate(p).map_err(|e| Fail::Domain(e.to_string()))
}

fn poly_out(p: &LPoly, pre: Prefix) -> Out {
    Out { text: p.fmt_with(pre.as_str()), json: poly_to_json(p) }
}

fn tensor_out(t: &LTensor, pre: Prefix) -> Out {
    Out { text: t.fmt_with(pre.as_str()), json: tensor_to_json(t) }
}

/// x-words stand for ħ^{-len} times the a-word.
fn x_to_a(p: &LPoly) -> LPoly {
    let mut out = p.zero_like();
    for (w, c) in p.terms() {
        out = out.add(&LPoly::monomial(p.nu(), p.trunc(), w.clone(), c.shift(-(w.len() as i32))));
    }
    out
}

fn find_hall(fl: &FreeLie, name: &str) -> Result<HallId, Fail> {
    let n = name.replace(' ', "");
    (0..fl.hall().len())
        .find(|&i| fl.name(i) == n)
        .ok_or_else(|| Fail::Usage(format!("'{name}' is not a Hall element of weight ≤ {}", fl.bound())))
}

fn full_only(cli: &Cli, what: &str) -> Result<(), Fail> {
    match cli.family {
        Fam::H => Ok(()),
        Fam::K => Err(Fail::Domain(format!("{what} is available for the full family H only"))),
    }
}

fn series(s: &str, bound: Option<usize>, cli: &Cli) -> Result<DiffSeries, Fail> {
    let m = bound.unwrap_or(cli.trunc as usize);
    let t = s.trim_start();
    if t.starts_with('{') {
        let f = DiffSeries::from_json(t)?;
        if bound.is_some_and(|b| b != f.bound()) {
            return Err(Fail::Domain(format!("series bound {} differs from --bound {m}", f.bound())));
        }
        return Ok(f);
    }
    Ok(DiffSeries::parse(s, m)?)
}

fn series_out(f: &DiffSeries) -> Out {
    Out { text: f.to_string(), json: serde_json::from_str(&f.to_json()).expect("valid json") }
}

fn compute(cli: &Cli, what: &Compute) -> Result<Out, Fail> {
    let h = hopf(cli);
    match what {
        Compute::Coproduct { expr, kind } => {
            let (p, pre) = read(cli, expr)?;
            match kind {
                None => {
                    check_family(&h, &p)?;
                    Ok(tensor_out(&h.coproduct(&p), pre))
                }
                Some(k) => {
                    full_only(cli, "--kind")?;
                    let fl = FreeLie::new(cli.nu, cli.trunc);
                    let d = Deformed::new((*k).into(), &h, &fl)?;
                    let p = if pre == Prefix::X { x_to_a(&p) } else { p };
                    let t = d.coproduct(&p);
                    let terms: Vec<Value> = t
                        .iter()
                        .map(|(k, c)| json!({"factors": k.iter().map(|m| d.mono_name(m)).collect::<Vec<_>>(), "coef": c.to_string()}))
                        .collect();
                    Ok(Out { text: d.fmt_tensor(&t), json: json!({"kind": d.kind.cli_name(), "terms": terms}) })
                }
            }
        }
        Compute::Antipode { expr } => {
            let (p, pre) = read(cli, expr)?;
            check_family(&h, &p)?;
            Ok(poly_out(&h.antipode(&p), pre))
        }
        Compute::Qpoly { l, t } => {
            need_weight(cli, &h, *t)?;
            Ok(poly_out(&h.q_poly(*l, *t).to_laurent(), Prefix::A))
        }
        Compute::Zpoly { l, t } => {
            full_only(cli, "zpoly")?;
            need_weight(cli, &h, *t)?;
            Ok(poly_out(&h.z_poly(*l, *t)?.to_laurent(), Prefix::A))
        }
        Compute::Delta { n, expr } => {
            let (p, pre) = read(cli, expr)?;
            check_family(&h, &p)?;
            Ok(tensor_out(&Drinfeld::new(&h).delta_n(*n, &p), pre))
        }
        Compute::Kappa { expr } => {
            let (p, _) = read(cli, expr)?;
            check_family(&h, &p)?;
            let k = Drinfeld::new(&h).kappa(&p)?;
            Ok(Out { text: k.to_string(), json: json!(k) })
        }
        Compute::Tau { expr } => {
            full_only(cli, "tau")?;
            let (p, pre) = read(cli, expr)?;
            let fl = FreeLie::new(cli.nu, cli.trunc);
            let t = match pre {
                Prefix::A => fl.tau_degree(&p)?,
                Prefix::X => fl.tau_degree_u(&p)?,
            };
            Ok(Out { text: t.to_string(), json: json!(t) })
        }
        Compute::Filtration { w } => {
            full_only(cli, "filtration")?;
            if *w > cli.trunc {
                return Err(Fail::Domain(Error::WeightExceeded { weight: *w, trunc: cli.trunc }.to_string()));
            }
            let fl = FreeLie::new(cli.nu, cli.trunc);
            let r = Drinfeld::new(&h).filtration_component(*w, &fl);
            let mut text = format!("weight {}\n", r.weight);
            for l in &r.levels {
                text += &format!("  k={}  dim D={}  dim Θ={}  {}\n", l.k, l.dim_d, l.dim_theta, if l.equal { "equal" } else { "DIFFERENT" });
            }
            Ok(Out { text, json: serde_json::to_value(&r).expect("serializable") })
        }
        Compute::Cobracket { which, expr } => {
            let (p, _) = read(cli, expr)?;
            let p = p.to_rational().map_err(|_| Fail::Domain("cobracket input must be ħ-free".into()))?;
            let fl = FreeLie::new(cli.nu, cli.trunc);
            let x = fl.lie_from_poly(&p)?;
            let w = match which {
                Which::Bullet => Cobracket::Bullet,
                Which::Star => Cobracket::Star,
            };
            let t = fl.cobracket(w, &x);
            let terms: Vec<Value> =
                t.iter().map(|((i, j), c)| json!({"left": fl.name(*i), "right": fl.name(*j), "coef": c.to_string()})).collect();
            Ok(Out { text: fl.wedge_name(&t), json: json!({"terms": terms}) })
        }
        Compute::Specialize { kind, at, generator } => {
            full_only(cli, "specialize")?;
            let fl = FreeLie::new(cli.nu, cli.trunc);
            let d = Deformed::new((*kind).into(), &h, &fl)?;
            let b = find_hall(&fl, generator)?;
            let t = d.coproduct(&d.generator(b));
            let vals = match at {
                0 => d.at_zero(&t, &format!("Δ({})", d.var_name(b)))?,
                1 => Deformed::at_one(&t),
                _ => return Err(Fail::Usage("--at must be 0 or 1".into())),
            };
            let text = if *at == 0 && d.kind.commutative_limit() {
                Deformed::to_comm_tensor(&vals).fmt_with(&|i| d.var_name(i))
            } else {
                d.fmt_tensor(&vals)
            };
            let terms: Vec<Value> = vals
                .iter()
                .map(|(k, c)| json!({"factors": k.iter().map(|m| d.mono_name(m)).collect::<Vec<_>>(), "coef": c.to_string()}))
                .collect();
            Ok(Out { text, json: json!({"kind": d.kind.cli_name(), "at": at, "generator": fl.name(b), "terms": terms}) })
        }
        Compute::Poisson { kind, b1, b2 } => {
            full_only(cli, "poisson")?;
            let fl = FreeLie::new(cli.nu, cli.trunc);
            let d = Deformed::new((*kind).into(), &h, &fl)?;
            if !d.kind.commutative_limit() {
                return Err(Fail::Domain(format!("the ħ = 0 fiber of {} is not commutative", d.kind.cli_name())));
            }
            let (x, y) = (find_hall(&fl, b1)?, find_hall(&fl, b2)?);
            if fl.element(x).weight + fl.element(y).weight > cli.trunc {
                return Err(Fail::Domain(
                    Error::WeightExceeded { weight: fl.element(x).weight + fl.element(y).weight, trunc: cli.trunc }.to_string(),
                ));
            }
            let r = d.poisson_bracket(x, y)?;
            let text = r.fmt_with(&|i| d.var_name(i));
            let text = if text.is_empty() { "0".into() } else { text };
            Ok(Out { json: json!({"bracket": text}), text })
        }
        Compute::Compose { f, g, bound } => {
            let (f, g) = (series(f, *bound, cli)?, series(g, *bound, cli)?);
            Ok(series_out(&f.compose(&g)?))
        }
        Compute::Invert { f, bound } => Ok(series_out(&series(f, *bound, cli)?.invert())),
        Compute::Pair { poly, f, bound } => {
            let f = series(f, *bound, cli)?;
            let p = parse_poly(poly, None, u32::MAX / 2)?.poly;
            let p = p.to_rational().map_err(|_| Fail::Domain("pairing input must be ħ-free".into()))?;
            let ab = abelianize(&p);
            let v = pair(&ab, &f)?;
            Ok(Out { text: hopfdiff_core::coeff::fmt_rational(&v), json: json!({"num": v.numer().to_string(), "den": v.denom().to_string()}) })
        }
    }
}

fn need_weight(cli: &Cli, h: &Hopf, t: u32) -> Result<(), Fail> {
    let w = t * h.family().stride();
    if w > cli.trunc {
        return Err(Fail::Domain(Error::WeightExceeded { weight: w, trunc: cli.trunc }.to_string()));
    }
    Ok(())
}
