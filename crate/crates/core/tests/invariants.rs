use proptest::prelude::*;

use hopfdiff_core::coeff::{rat, ratio, Rational};
use hopfdiff_core::commpoly::{CommPoly, CommTensor};
use hopfdiff_core::hopfdiff::{abelianize, abelianize_tensor, Family, Hopf};
use hopfdiff_core::nottingham::{pair, pair_tensor, DiffSeries};
use hopfdiff_core::parse::parse_poly;
use hopfdiff_core::{NcPoly, Tensor, Word};

const N: u32 = 6;

fn word(max_w: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u8..=4, 0..=4).prop_map(move |mut v| {
        while v.iter().map(|&l| l as u32).sum::<u32>() > max_w {
            v.pop();
        }
        Word::new(v)
    })
}

fn coef() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn poly(max_w: u32) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((word(max_w), coef()), 0..5).prop_map(|ts| {
        let mut p = NcPoly::zero(None, N);
        for (w, c) in ts {
            p.add_term(w, &c);
        }
        p
    })
}

fn series(m: usize) -> impl Strategy<Value = DiffSeries> {
    prop::collection::vec(coef(), m).prop_map(DiffSeries::new)
}

/// m ∘ (S ⊗ id) applied to a rank-2 tensor.
fn s_id(h: &Hopf, t: &Tensor) -> NcPoly {
    let mut out = h.zero();
    for (k, c) in t.terms() {
        let l = h.antipode(&NcPoly::monomial(None, N, k[0].clone(), rat(1)));
        let r = NcPoly::monomial(None, N, k[1].clone(), c.clone());
        out = out.add(&l.mul(&r));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(p in poly(N), q in poly(N), r in poly(N)) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
        prop_assert_eq!(p.mul(&p.one_like()), p.clone());
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn truncation_is_a_ring_map(p in poly(N), q in poly(N), m in 0u32..N) {
        let t = |x: &NcPoly| x.rehome(None, m);
        prop_assert_eq!(t(&p.mul(&q)), t(&p).mul(&t(&q)));
        prop_assert_eq!(t(&p.add(&q)), t(&p).add(&t(&q)));
    }

    #[test]
    fn coproduct_is_multiplicative(p in poly(3), q in poly(3)) {
        let h = Hopf::full(N);
        prop_assert_eq!(h.coproduct(&p.mul(&q)), h.coproduct(&p).mul(&h.coproduct(&q)));
    }

    #[test]
    fn coassociativity_and_counit(p in poly(N)) {
        let h = Hopf::full(N);
        let d = h.coproduct(&p);
        prop_assert_eq!(h.coproduct_at(&d, 0), h.coproduct_at(&d, 1));
        // (ε ⊗ id)Δ = id
        let mut left = h.zero();
        for (k, c) in d.terms() {
            if k[0].is_empty() {
                left.add_term(k[1].clone(), c);
            }
        }
        prop_assert_eq!(left, p);
    }

    #[test]
    fn antipode_axiom(p in poly(N)) {
        let h = Hopf::full(N);
        let lhs = s_id(&h, &h.coproduct(&p));
        prop_assert_eq!(lhs, h.one().scale(&h.counit(&p)));
    }

    #[test]
    fn odd_projection_is_multiplicative(p in poly(N), q in poly(N)) {
        let pr = |x: &NcPoly| Hopf::odd_projection(x);
        prop_assert_eq!(pr(&p.mul(&q)), pr(&pr(&p).mul(&pr(&q))));
    }

    #[test]
    fn series_group_laws(f in series(6), g in series(6), k in series(6)) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.compose(&k).unwrap(), f.compose(&g.compose(&k).unwrap()).unwrap());
        let id = DiffSeries::identity(6);
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(id.compose(&f).unwrap(), f.clone());
        prop_assert!(f.compose(&f.invert()).unwrap().is_identity());
        prop_assert!(f.invert().compose(&f).unwrap().is_identity());
    }

    #[test]
    fn coproduct_pairs_with_composition(f in series(6), g in series(6), n in 1u8..=6) {
        let h = Hopf::full(N);
        let t: CommTensor = abelianize_tensor(&h.coproduct_gen(n));
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(pair_tensor(&t, &f, &g).unwrap(), fg.coeff(n as usize));
        let s: CommPoly = abelianize(&h.antipode_gen(n));
        prop_assert_eq!(pair(&s, &f).unwrap(), f.invert().coeff(n as usize));
    }

    #[test]
    fn closed_form_composition(f in series(6), g in series(6)) {
        let h = Hopf::full(N);
        prop_assert_eq!(f.compose_closed_form(&g, &h).unwrap(), f.compose(&g).unwrap());
    }

    #[test]
    fn text_roundtrip(p in poly(N)) {
        let text = p.fmt_with("a");
        let back = parse_poly(&text, None, N).unwrap().poly;
        prop_assert_eq!(back, p.to_laurent(), "text was {}", text);
    }

    #[test]
    fn series_text_and_json_roundtrip(f in series(5)) {
        prop_assert_eq!(DiffSeries::parse(&f.to_string(), 5).unwrap(), f.clone());
        prop_assert_eq!(DiffSeries::from_json(&f.to_json()).unwrap(), f);
    }
}

#[test]
fn odd_family_antipode_recursions_agree() {
    let h = Hopf::new(Family::Odd, None, 10);
    for n in (2..=10).step_by(2) {
        assert_eq!(h.antipode_gen(n), h.antipode_gen_right(n), "n = {n}");
    }
}
