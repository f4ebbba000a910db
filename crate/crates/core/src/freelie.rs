//! The free Lie algebra L_ν with its Lyndon–Hall basis, PBW coordinates in
//! U(L_ν) = T(V_ν), the gradings ∂₋, d, τ, and the two Lie cobrackets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::coeff::{rat, Coeff, Rational};
use crate::error::{Error, Result};
use crate::hopfdiff::{alpha_convert, AlphaDirection};
use crate::linalg;
use crate::ncpoly::{words_of_weight_in, NcPoly, Tensor, Word};

/// Index of a Hall element in the basis list (which is ⪯-sorted).
pub type HallId = usize;
/// ⪯-non-decreasing sequence of Hall ids.
pub type PbwMono = Vec<HallId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    pub word: Vec<u8>,
    pub weight: u32,
    /// Standard factorization (left, right); `None` for letters.
    pub factors: Option<(HallId, HallId)>,
}

impl HallElement {
    pub fn lie_degree(&self) -> u32 {
        self.word.len() as u32
    }

    pub fn d(&self) -> i64 {
        self.word.len() as i64 - 1
    }

    /// ∂₋ = Σ (n_i − 1 + [n_i = 1]).
    pub fn dminus(&self) -> i64 {
        self.word.iter().map(|&n| n as i64 - 1 + i64::from(n == 1)).sum()
    }

    pub fn tau(&self) -> i64 {
        self.dminus() - self.d()
    }

    pub fn is_letter(&self) -> bool {
        self.factors.is_none()
    }
}

/// Which Lie cobracket on L_ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cobracket {
    /// δ_•(x_n) = Σ_ℓ (ℓ+1) x_ℓ ∧ x_{n−ℓ}
    Bullet,
    /// δ_*(x_n) = (n−2) x_{n−1} ∧ x_1, δ_*(x_1) = 0
    Star,
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// w = uv with v the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| w.split_at(i))
}

/// Straightening data for one weight component.
struct WeightData {
    monos: Vec<PbwMono>,
    /// PBW coordinates of each word (indexed like `words`).
    word_coords: HashMap<Word, Vec<(usize, Rational)>>,
}

/// Sparse element of L_ν in the Hall basis.
pub type LieElt<C = Rational> = BTreeMap<HallId, C>;
/// Element of L_ν ⊗ L_ν in Hall coordinates.
pub type LieTensor<C = Rational> = BTreeMap<(HallId, HallId), C>;
pub type LieTensor3<C = Rational> = BTreeMap<(HallId, HallId, HallId), C>;

pub(crate) fn add_into<K: Ord + Clone, C: Coeff>(m: &mut BTreeMap<K, C>, k: K, c: &C) {
    if c.is_zero() {
        return;
    }
    match m.get_mut(&k) {
        Some(slot) => {
            slot.add_assign_ref(c);
            if slot.is_zero() {
                m.remove(&k);
            }
        }
        None => {
            m.insert(k, c.clone());
        }
    }
}

/// Free Lie algebra on letters of the given alphabet, up to weight W.
pub struct FreeLie {
    alphabet: Vec<u8>,
    bound: u32,
    hall: Vec<HallElement>,
    index: HashMap<Vec<u8>, HallId>,
    expansions: Vec<NcPoly<Rational>>,
    weights: Mutex<HashMap<u32, Arc<WeightData>>>,
    brackets: Mutex<HashMap<(HallId, HallId), LieElt>>,
    cobrackets: Mutex<HashMap<(Cobracket, HallId), LieTensor>>,
}

impl fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeLie(alphabet={:?}, W={})", self.alphabet, self.bound)
    }
}

impl FreeLie {
    /// Free Lie algebra on x_1..x_ν (ν = None: all letters up to the bound).
    pub fn new(nu: Option<u32>, bound: u32) -> Self {
        let top = nu.unwrap_or(bound).min(bound);
        Self::with_alphabet((1..=top as u8).collect(), bound)
    }

    pub fn with_alphabet(mut alphabet: Vec<u8>, bound: u32) -> Self {
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut hall = Vec::new();
        let mut index = HashMap::new();
        for w in 1..=bound {
            let mut ws: Vec<Vec<u8>> = words_of_weight_in(w, &alphabet)
                .into_iter()
                .map(|x| x.letters().to_vec())
                .filter(|x| is_lyndon(x))
                .collect();
            ws.sort();
            for word in ws {
                let factors = standard_factorization(&word).map(|(u, v)| (index[u], index[v]));
                index.insert(word.clone(), hall.len());
                hall.push(HallElement { word, weight: w, factors });
            }
        }
        let mut expansions: Vec<NcPoly<Rational>> = Vec::with_capacity(hall.len());
        for h in &hall {
            let e = match h.factors {
                None => NcPoly::gen(None, bound, h.word[0]),
                Some((l, r)) => expansions[l].commutator(&expansions[r]),
            };
            expansions.push(e);
        }
        FreeLie {
            alphabet,
            bound,
            hall,
            index,
            expansions,
            weights: Mutex::new(HashMap::new()),
            brackets: Mutex::new(HashMap::new()),
            cobrackets: Mutex::new(HashMap::new()),
        }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn hall(&self) -> &[HallElement] {
        &self.hall
    }

    pub fn element(&self, id: HallId) -> &HallElement {
        &self.hall[id]
    }

    /// Hall elements of weight ≤ W (and Lie degree ≤ the optional bound).
    pub fn hall_basis(&self, weight_bound: u32, lie_degree_bound: Option<u32>) -> Vec<HallId> {
        (0..self.hall.len())
            .filter(|&i| {
                self.hall[i].weight <= weight_bound
                    && lie_degree_bound.map_or(true, |k| self.hall[i].lie_degree() <= k)
            })
            .collect()
    }

    pub fn of_weight(&self, w: u32) -> Vec<HallId> {
        (0..self.hall.len()).filter(|&i| self.hall[i].weight == w).collect()
    }

    pub fn id_of(&self, word: &[u8]) -> Option<HallId> {
        self.index.get(word).copied()
    }

    pub fn letter(&self, n: u8) -> HallId {
        self.index[&vec![n]]
    }

    /// The bracketed expansion of a Hall element in T(V).
    pub fn expansion(&self, id: HallId) -> &NcPoly<Rational> {
        &self.expansions[id]
    }

    pub fn name(&self, id: HallId) -> String {
        let h = &self.hall[id];
        match h.factors {
            None => format!("x{}", h.word[0]),
            Some((l, r)) => format!("[{},{}]", self.name(l), self.name(r)),
        }
    }

    pub fn mono_name(&self, m: &[HallId]) -> String {
        if m.is_empty() {
            "1".into()
        } else {
            m.iter().map(|&i| self.name(i)).collect::<Vec<_>>().join("*")
        }
    }

    pub fn mono_tau(&self, m: &[HallId]) -> i64 {
        m.iter().map(|&i| self.hall[i].tau()).sum()
    }

    pub fn mono_weight(&self, m: &[HallId]) -> u32 {
        m.iter().map(|&i| self.hall[i].weight).sum()
    }

    /// PBW monomials of weight exactly w.
    pub fn pbw_monomials(&self, w: u32) -> Vec<PbwMono> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(fl: &FreeLie, rem: u32, start: usize, cur: &mut Vec<usize>, out: &mut Vec<PbwMono>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..fl.hall.len() {
                let wi = fl.hall[i].weight;
                if wi > rem {
                    break;
                }
                cur.push(i);
                rec(fl, rem - wi, i, cur, out);
                cur.pop();
            }
        }
        rec(self, w, 0, &mut cur, &mut out);
        out
    }

    /// Ordered product of the Hall expansions.
    pub fn mono_expansion(&self, m: &[HallId], trunc: u32) -> NcPoly<Rational> {
        let mut acc = NcPoly::one(None, trunc);
        for &i in m {
            acc = acc.mul(&self.expansions[i].rehome(None, trunc));
        }
        acc
    }

    fn weight_data(&self, w: u32) -> Arc<WeightData> {
        if let Some(d) = self.weights.lock().unwrap().get(&w) {
            return d.clone();
        }
        let words = words_of_weight_in(w, &self.alphabet);
        let monos = self.pbw_monomials(w);
        assert_eq!(words.len(), monos.len(), "PBW count mismatch at weight {w}");
        let pos: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, x)| (x, i)).collect();
        // rows = words, columns = monomials
        let n = words.len();
        let mut m = vec![vec![rat(0); n]; n];
        for (j, mono) in monos.iter().enumerate() {
            for (word, c) in self.mono_expansion(mono, w).terms() {
                m[pos[word]][j] = c.clone();
            }
        }
        let inv = linalg::inverse(&m).expect("PBW monomials form a basis");
        let mut word_coords = HashMap::new();
        for (j, word) in words.iter().enumerate() {
            let col: Vec<(usize, Rational)> =
                (0..n).filter(|&i| !Coeff::is_zero(&inv[i][j])).map(|i| (i, inv[i][j].clone())).collect();
            word_coords.insert(word.clone(), col);
        }
        let d = Arc::new(WeightData { monos, word_coords });
        self.weights.lock().unwrap().insert(w, d.clone());
        d
    }

    /// PBW coordinates of a single word.
    pub fn word_coords(&self, word: &Word) -> Vec<(PbwMono, Rational)> {
        if word.is_empty() {
            return vec![(Vec::new(), rat(1))];
        }
        let d = self.weight_data(word.weight());
        d.word_coords[word].iter().map(|(i, c)| (d.monos[*i].clone(), c.clone())).collect()
    }

    fn check_letters<C: Coeff>(&self, p: &NcPoly<C>) -> Result<()> {
        for (w, _) in p.terms() {
            if w.weight() > self.bound {
                return Err(Error::WeightExceeded { weight: w.weight(), trunc: self.bound });
            }
            if let Some(l) = w.letters().iter().find(|l| !self.alphabet.contains(l)) {
                return Err(Error::Invalid(format!("letter {l} outside the alphabet")));
            }
        }
        Ok(())
    }

    /// Exact PBW coordinates of an element of T(V) = U(L).
    pub fn pbw_decompose<C: Coeff>(&self, p: &NcPoly<C>) -> Result<BTreeMap<PbwMono, C>> {
        self.check_letters(p)?;
        let mut out = BTreeMap::new();
        for (w, c) in p.terms() {
            for (m, d) in self.word_coords(w) {
                add_into(&mut out, m, &c.scale(&d));
            }
        }
        Ok(out)
    }

    /// PBW ⊗ … ⊗ PBW coordinates of a tensor in T(V)^{⊗r}.
    pub fn pbw_decompose_tensor<C: Coeff>(&self, t: &Tensor<C>) -> BTreeMap<Vec<PbwMono>, C> {
        let mut cache: HashMap<Word, Vec<(PbwMono, Rational)>> = HashMap::new();
        let mut out = BTreeMap::new();
        for (k, c) in t.terms() {
            let mut partial: Vec<(Vec<PbwMono>, Rational)> = vec![(Vec::new(), rat(1))];
            for w in k {
                let coords = cache.entry(w.clone()).or_insert_with(|| self.word_coords(w)).clone();
                let mut next = Vec::with_capacity(partial.len() * coords.len());
                for (pm, pc) in &partial {
                    for (m, d) in &coords {
                        let mut nm = pm.clone();
                        nm.push(m.clone());
                        next.push((nm, pc * d));
                    }
                }
                partial = next;
            }
            for (m, d) in partial {
                add_into(&mut out, m, &c.scale(&d));
            }
        }
        out
    }

    /// Inverse of `pbw_decompose`.
    pub fn reassemble<C: Coeff>(&self, coords: &BTreeMap<PbwMono, C>, trunc: u32) -> NcPoly<C> {
        let mut out = NcPoly::zero(None, trunc);
        for (m, c) in coords {
            for (w, d) in self.mono_expansion(m, trunc).terms() {
                out.add_term(w.clone(), &c.scale(d));
            }
        }
        out
    }

    /// max τ over the PBW support of an element of U(L) (x-letters).
    pub fn tau_degree_u<C: Coeff>(&self, p: &NcPoly<C>) -> Result<i64> {
        let coords = self.pbw_decompose(p)?;
        coords.keys().map(|m| self.mono_tau(m)).max().ok_or(Error::ZeroElement)
    }

    /// τ-degree of an element of H given in the a-generators: rewrite in α,
    /// identify α_n with x_n and take the PBW maximum.
    pub fn tau_degree<C: Coeff>(&self, p: &NcPoly<C>) -> Result<i64> {
        self.tau_degree_u(&alpha_convert(p, AlphaDirection::AToAlpha))
    }

    /// Element of L in Hall coordinates from an element of T(V) that is
    /// known to be Lie.
    pub fn lie_from_poly<C: Coeff>(&self, p: &NcPoly<C>) -> Result<LieElt<C>> {
        let mut out = BTreeMap::new();
        for (m, c) in self.pbw_decompose(p)? {
            if m.len() != 1 {
                return Err(Error::Invalid(format!("not a Lie element: PBW support {}", self.mono_name(&m))));
            }
            out.insert(m[0], c);
        }
        Ok(out)
    }

    pub fn lie_to_poly<C: Coeff>(&self, x: &LieElt<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero(None, self.bound);
        for (&i, c) in x {
            for (w, d) in self.expansions[i].terms() {
                out.add_term(w.clone(), &c.scale(d));
            }
        }
        out
    }

    pub fn hall_bracket(&self, i: HallId, j: HallId) -> LieElt {
        if let Some(r) = self.brackets.lock().unwrap().get(&(i, j)) {
            return r.clone();
        }
        let r = if self.hall[i].weight + self.hall[j].weight > self.bound {
            BTreeMap::new()
        } else {
            let e = self.expansions[i].commutator(&self.expansions[j]);
            self.lie_from_poly(&e).expect("bracket of Lie elements is Lie")
        };
        self.brackets.lock().unwrap().insert((i, j), r.clone());
        r
    }

    /// Bilinear bracket; terms beyond the weight bound are dropped.
    pub fn bracket<C: Coeff>(&self, u: &LieElt<C>, v: &LieElt<C>) -> LieElt<C> {
        let mut out = BTreeMap::new();
        for (&i, ci) in u {
            for (&j, cj) in v {
                let cij = ci.mul_ref(cj);
                for (k, ck) in self.hall_bracket(i, j) {
                    add_into(&mut out, k, &cij.scale(&ck));
                }
            }
        }
        out
    }

    pub fn unit(&self, i: HallId) -> LieElt {
        [(i, rat(1))].into_iter().collect()
    }

    fn wedge(t: &mut LieTensor, i: HallId, j: HallId, c: &Rational) {
        add_into(t, (i, j), c);
        add_into(t, (j, i), &-c);
    }

    /// Cobracket on a generator x_n.
    pub fn cobracket_gen(&self, which: Cobracket, n: u8) -> LieTensor {
        let mut t = BTreeMap::new();
        match which {
            Cobracket::Bullet => {
                for l in 1..n {
                    let (a, b) = (l, n - l);
                    if self.alphabet.contains(&a) && self.alphabet.contains(&b) {
                        Self::wedge(&mut t, self.letter(a), self.letter(b), &rat(l as i64 + 1));
                    }
                }
            }
            Cobracket::Star => {
                if n >= 3 && self.alphabet.contains(&(n - 1)) && self.alphabet.contains(&1) {
                    Self::wedge(&mut t, self.letter(n - 1), self.letter(1), &rat(n as i64 - 2));
                }
            }
        }
        t
    }

    /// Adjoint action x.(u⊗v) = [x,u]⊗v + u⊗[x,v].
    pub fn ad_tensor(&self, x: &LieElt, t: &LieTensor) -> LieTensor {
        let mut out = BTreeMap::new();
        for ((u, v), c) in t {
            for (&xi, xc) in x {
                let cc = c * xc;
                for (k, d) in self.hall_bracket(xi, *u) {
                    add_into(&mut out, (k, *v), &(&cc * &d));
                }
                for (k, d) in self.hall_bracket(xi, *v) {
                    add_into(&mut out, (*u, k), &(&cc * &d));
                }
            }
        }
        out
    }

    /// Cobracket of a Hall element, extended from generators by the
    /// cocycle rule δ([x,y]) = x.δ(y) − y.δ(x).
    pub fn cobracket_hall(&self, which: Cobracket, id: HallId) -> LieTensor {
        if let Some(r) = self.cobrackets.lock().unwrap().get(&(which, id)) {
            return r.clone();
        }
        let r = match self.hall[id].factors {
            None => self.cobracket_gen(which, self.hall[id].word[0]),
            Some((l, r)) => {
                let a = self.ad_tensor(&self.unit(l), &self.cobracket_hall(which, r));
                let b = self.ad_tensor(&self.unit(r), &self.cobracket_hall(which, l));
                let mut out = a;
                for (k, c) in b {
                    add_into(&mut out, k, &-c);
                }
                out
            }
        };
        self.cobrackets.lock().unwrap().insert((which, id), r.clone());
        r
    }

    pub fn cobracket(&self, which: Cobracket, x: &LieElt) -> LieTensor {
        let mut out = BTreeMap::new();
        for (&i, c) in x {
            for (k, d) in self.cobracket_hall(which, i) {
                add_into(&mut out, k, &(c * &d));
            }
        }
        out
    }

    /// (δ ⊗ id) on L ⊗ L.
    pub fn cobracket_left(&self, which: Cobracket, t: &LieTensor) -> LieTensor3 {
        let mut out = BTreeMap::new();
        for ((u, v), c) in t {
            for ((a, b), d) in self.cobracket_hall(which, *u) {
                add_into(&mut out, (a, b, *v), &(c * &d));
            }
        }
        out
    }

    /// Basis of Ker δ on the weight-w slice of L, in reduced echelon form
    /// with respect to the Hall order.
    pub fn cobracket_kernel(&self, w: u32, which: Cobracket) -> Vec<LieElt> {
        let ids = self.of_weight(w);
        let images: Vec<LieTensor> = ids.iter().map(|&i| self.cobracket_hall(which, i)).collect();
        linalg::kernel(&images)
            .into_iter()
            .map(|v| ids.iter().zip(v).filter(|(_, c)| !Coeff::is_zero(c)).map(|(&i, c)| (i, c)).collect())
            .collect()
    }

    pub fn lie_name<C: Coeff>(&self, x: &LieElt<C>) -> String {
        fmt_terms(x.iter().rev().map(|(&i, c)| (self.name(i), c)))
    }

    /// Antisymmetric tensors print as wedges `c (u ∧ v)` with u after v in ⪯.
    pub fn wedge_name<C: Coeff>(&self, t: &LieTensor<C>) -> String {
        let mut halves: Vec<(String, &C)> = Vec::new();
        let antisym = t.iter().all(|((i, j), c)| {
            let o = t.get(&(*j, *i)).map(|d| d.neg_ref());
            i != j && o.as_ref() == Some(c)
        });
        if antisym {
            for ((i, j), c) in t.iter().rev() {
                if i > j {
                    halves.push((format!("({} ∧ {})", self.name(*i), self.name(*j)), c));
                }
            }
            fmt_terms(halves.into_iter())
        } else {
            fmt_terms(t.iter().rev().map(|((i, j), c)| (format!("({} ⊗ {})", self.name(*i), self.name(*j)), c)))
        }
    }
}

pub(crate) fn fmt_terms<'a, C: Coeff>(it: impl Iterator<Item = (String, &'a C)>) -> String {
    let mut s = String::new();
    for (i, (name, c)) in it.enumerate() {
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
        s.push_str(&name);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_basics() {
        assert!(is_lyndon(&[1, 2]));
        assert!(!is_lyndon(&[1, 1]));
        assert!(!is_lyndon(&[2, 1]));
        assert!(is_lyndon(&[1, 1, 2]));
        assert_eq!(standard_factorization(&[1, 1, 2]), Some((&[1u8][..], &[1u8, 2][..])));
    }

    #[test]
    fn low_weight_hall_lists() {
        let fl = FreeLie::new(None, 3);
        let names: Vec<String> = fl.hall_basis(3, None).into_iter().map(|i| fl.name(i)).collect();
        assert_eq!(names, vec!["x1", "x2", "[x1,x2]", "x3"]);
        assert_eq!(fl.of_weight(2).len(), 1);
    }

    #[test]
    fn straightening_x2x1() {
        let fl = FreeLie::new(None, 3);
        let p = NcPoly::<Rational>::monomial(None, 3, Word::new(vec![2, 1]), rat(1));
        let c = fl.pbw_decompose(&p).unwrap();
        let (x1, x2, b) = (fl.letter(1), fl.letter(2), fl.id_of(&[1, 2]).unwrap());
        let expect: BTreeMap<PbwMono, Rational> = [(vec![x1, x2], rat(1)), (vec![b], rat(-1))].into_iter().collect();
        assert_eq!(c, expect);
        assert_eq!(fl.reassemble(&c, 3), p);
    }

    #[test]
    fn brackets() {
        let fl = FreeLie::new(None, 6);
        let x1 = fl.unit(fl.letter(1));
        assert!(fl.bracket(&x1, &x1).is_empty());
        let x2 = fl.unit(fl.letter(2));
        let b = fl.bracket(&x1, &x2);
        assert_eq!(b, fl.unit(fl.id_of(&[1, 2]).unwrap()));
        assert_eq!(fl.bracket(&x2, &x1), b.iter().map(|(k, c)| (*k, -c)).collect());
    }

    #[test]
    fn cobracket_values() {
        let fl = FreeLie::new(None, 6);
        let x = |n| fl.letter(n);
        assert!(fl.cobracket_hall(Cobracket::Bullet, x(1)).is_empty());
        assert!(fl.cobracket_hall(Cobracket::Bullet, x(2)).is_empty());
        let mut e3 = BTreeMap::new();
        FreeLie::wedge(&mut e3, x(2), x(1), &rat(1));
        assert_eq!(fl.cobracket_hall(Cobracket::Bullet, x(3)), e3);
        assert_eq!(fl.cobracket_hall(Cobracket::Star, x(3)), e3);
        let mut e4 = BTreeMap::new();
        FreeLie::wedge(&mut e4, x(3), x(1), &rat(2));
        assert_eq!(fl.cobracket_hall(Cobracket::Bullet, x(4)), e4);
        assert!(fl.cobracket_hall(Cobracket::Star, x(2)).is_empty());
        let d5 = fl.cobracket_hall(Cobracket::Star, x(5));
        assert_eq!(fl.wedge_name(&d5), "3 (x4 ∧ x1)");
    }

    #[test]
    fn gradings() {
        let fl = FreeLie::new(None, 6);
        assert_eq!(fl.element(fl.letter(1)).tau(), 1);
        for n in 2..=6 {
            assert_eq!(fl.element(fl.letter(n)).tau(), n as i64 - 1);
        }
        assert_eq!(fl.element(fl.id_of(&[1, 2]).unwrap()).tau(), 1);
    }
}
