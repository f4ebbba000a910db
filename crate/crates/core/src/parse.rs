//! Text and JSON forms of polynomials.
//!
//! Text: generators `a3` / `x3`, products by juxtaposition or `*`,
//! `h` for ħ with optional integer power `h^-2`, rationals `p/q`,
//! parentheses, `+`/`-`.

use serde::{Deserialize, Serialize};

use crate::coeff::{parse_rational, Coeff, Laurent};
use crate::error::{Error, Result};
use crate::ncpoly::{LPoly, Word};

/// Letter prefix used in the input (`a` or `x`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prefix {
    A,
    X,
}

impl Prefix {
    pub fn as_str(self) -> &'static str {
        match self {
            Prefix::A => "a",
            Prefix::X => "x",
        }
    }
}

pub struct Parsed {
    pub poly: LPoly,
    /// Prefix of the generators seen; `None` if the input had none.
    pub prefix: Option<Prefix>,
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    nu: Option<u32>,
    prefix: Option<Prefix>,
}

/// Working bound while parsing; the caller's truncation is applied after.
const WIDE: u32 = 4096;

pub fn parse_poly(s: &str, nu: Option<u32>, trunc: u32) -> Result<Parsed> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, nu, prefix: None };
    p.ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    p.ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected input"));
    }
    if let Some(w) = e.max_weight() {
        if w > trunc {
            return Err(Error::WeightExceeded { weight: w, trunc });
        }
    }
    Ok(Parsed { poly: e.rehome(nu, trunc), prefix: p.prefix })
}

impl<'s> Parser<'s> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn int(&mut self) -> Option<String> {
        let st = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > st).then(|| String::from_utf8_lossy(&self.src[st..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<LPoly> {
        let mut acc = LPoly::zero(self.nu, WIDE);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(c) if c.is_ascii_digit() || c == b'(' || c == b'a' || c == b'x' || c == b'h' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LPoly> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.int().expect("digit present");
                let mut d = "1".to_string();
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    d = self.int().ok_or_else(|| self.err("expected denominator"))?;
                }
                let r = parse_rational(&n, &d).ok_or(Error::Parse { pos: start, msg: "zero denominator".into() })?;
                Ok(LPoly::one(self.nu, WIDE).scale(&Laurent::from_rational(r)))
            }
            Some(b'h') => {
                self.pos += 1;
                let mut e = 1i32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = self.peek() == Some(b'-');
                    if neg {
                        self.pos += 1;
                    }
                    let at = self.pos;
                    let v: i32 = self
                        .int()
                        .ok_or_else(|| self.err("expected integer exponent"))?
                        .parse()
                        .map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
                    e = if neg { -v } else { v };
                }
                Ok(LPoly::one(self.nu, WIDE).scale(&Laurent::hpow(e)))
            }
            Some(c @ (b'a' | b'x')) => {
                let pre = if c == b'a' { Prefix::A } else { Prefix::X };
                if self.prefix.is_some_and(|p| p != pre) {
                    return Err(self.err("cannot mix a- and x-generators"));
                }
                self.prefix = Some(pre);
                self.pos += 1;
                let at = self.pos;
                let n: u32 = self
                    .int()
                    .ok_or_else(|| self.err("expected generator index"))?
                    .parse()
                    .map_err(|_| Error::Parse { pos: at, msg: "index too large".into() })?;
                if n == 0 || n > 255 || self.nu.is_some_and(|nu| n > nu) {
                    return Err(Error::Parse { pos: at, msg: format!("generator index {n} out of range") });
                }
                if self.src.get(self.pos) == Some(&b'^') {
                    return Err(self.err("powers are allowed only on h"));
                }
                Ok(LPoly::monomial(self.nu, WIDE, Word::letter(n as u8), Laurent::one()))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JCoef {
    hpow: i32,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct JTerm {
    coef: Vec<JCoef>,
    word: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct JPoly {
    nu: Option<u32>,
    trunc: u32,
    terms: Vec<JTerm>,
}

pub fn poly_to_json(p: &LPoly) -> serde_json::Value {
    let terms = p
        .terms()
        .map(|(w, c)| JTerm {
            coef: c
                .terms()
                .map(|(e, r)| JCoef { hpow: e, num: r.numer().to_string(), den: r.denom().to_string() })
                .collect(),
            word: w.letters().to_vec(),
        })
        .collect();
    serde_json::to_value(JPoly { nu: p.nu(), trunc: p.trunc(), terms }).expect("serializable")
}

/// `{"rank":r,"trunc":N,"terms":[{"coef":[..],"words":[[..],..]}]}`
pub fn tensor_to_json(t: &crate::ncpoly::LTensor) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = t
        .terms()
        .map(|(k, c)| {
            let coef: Vec<JCoef> =
                c.terms().map(|(e, r)| JCoef { hpow: e, num: r.numer().to_string(), den: r.denom().to_string() }).collect();
            serde_json::json!({"coef": coef, "words": k.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>()})
        })
        .collect();
    serde_json::json!({"rank": t.rank(), "trunc": t.trunc(), "terms": terms})
}

pub fn poly_from_json(s: &str) -> Result<LPoly> {
    let j: JPoly = serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    let mut p = LPoly::zero(j.nu, j.trunc);
    for t in j.terms {
        if t.word.iter().any(|&l| l == 0 || j.nu.is_some_and(|nu| l as u32 > nu)) {
            return Err(Error::Invalid(format!("word {:?} outside the alphabet", t.word)));
        }
        let w = Word::new(t.word);
        if w.weight() > j.trunc {
            return Err(Error::WeightExceeded { weight: w.weight(), trunc: j.trunc });
        }
        let mut c = Laurent::zero();
        for jc in t.coef {
            let r = parse_rational(&jc.num, &jc.den).ok_or_else(|| Error::Invalid(format!("bad rational {}/{}", jc.num, jc.den)))?;
            c.insert_add(jc.hpow, &r);
        }
        p = p.add(&LPoly::monomial(j.nu, j.trunc, w, c));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, ratio};

    #[test]
    fn parses_mixed() {
        let p = parse_poly("2 a1 a1 - a2 + 1/2 h^-1 (a1*a2 - a2 a1)", None, 4).unwrap();
        assert_eq!(p.prefix, Some(Prefix::A));
        let q = p.poly;
        assert_eq!(q.coeff(&Word::new(vec![1, 1])), Laurent::from_rational(rat(2)));
        assert_eq!(q.coeff(&Word::new(vec![2, 1])), Laurent::monomial(ratio(-1, 2), -1));
        assert_eq!(poly_from_json(&poly_to_json(&q).to_string()).unwrap(), q);
    }

    #[test]
    fn errors_have_positions() {
        assert_eq!(parse_poly("a1 + ", None, 4).err(), Some(Error::Parse { pos: 5, msg: "unexpected end of input".into() }));
        assert!(matches!(parse_poly("a1 a9", Some(4), 20), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("a1 x2", None, 4), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("a3 a3", None, 4), Err(Error::WeightExceeded { .. })));
        assert!(matches!(parse_poly("a1^2", None, 4), Err(Error::Parse { .. })));
    }
}
