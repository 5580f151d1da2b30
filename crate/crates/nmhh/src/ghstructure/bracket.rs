use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::exactla::CoeffRing;
use crate::qma::Word;

use super::basis::basis_of_degree;
use super::n2::{n2_bracket_symbols, n2_class_cochain, identify_n2};
use super::cochain::cochain_bracket;
use super::{sgn, CohClass, GhContext, GhError, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketMethod {
    ClosedForm,
    Cochain,
}

impl fmt::Display for BracketMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketMethod::ClosedForm => write!(f, "closed_form"),
            BracketMethod::Cochain => write!(f, "cochain"),
        }
    }
}

impl FromStr for BracketMethod {
    type Err = GhError;

    fn from_str(s: &str) -> Result<Self, GhError> {
        match s {
            "closed_form" | "closed" => Ok(BracketMethod::ClosedForm),
            "cochain" => Ok(BracketMethod::Cochain),
            _ => Err(GhError::Parse(format!("unknown bracket method {s}"))),
        }
    }
}

/// J with the letter at 1-based position k replaced by `insert`.
fn splice(j: &[u8], k: usize, insert: &[u8]) -> Word {
    let mut v = Vec::with_capacity(j.len() + insert.len());
    v.extend_from_slice(&j[..k - 1]);
    v.extend_from_slice(insert);
    v.extend_from_slice(&j[k..]);
    Word(v)
}

/// 1-based positions of the letter r.
fn positions(j: &[u8], r: u8) -> impl Iterator<Item = usize> + '_ {
    j.iter().enumerate().filter(move |(_, &c)| c == r).map(|(k, _)| k + 1)
}

fn cat(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// [d(J), a(i, I)] as a formal sum of d-symbols.
fn bracket_da(m: usize, j: &[u8], i: u8, word: &[u8]) -> CohClass {
    let q = word.len() as i64;
    let mut out = CohClass::zero(m);
    let mm = m as u8;
    let mut add = |w: Word, c: i64| out.add_term(Symbol::D(w), c);
    if i == 1 {
        add(Word(cat(word, j)), sgn(q));
        for k in positions(j, 1) {
            add(splice(j, k, &cat(word, &[1])), -sgn(k as i64 * q));
        }
    } else if i < mm {
        for k in positions(j, i - 1) {
            add(splice(j, k, &cat(&[i - 1], word)), sgn((k as i64 - 1) * q));
        }
        for k in positions(j, i) {
            add(splice(j, k, &cat(word, &[i])), -sgn(k as i64 * q));
        }
    } else {
        for k in positions(j, mm - 1) {
            add(splice(j, k, &cat(&[mm - 1], word)), sgn((k as i64 - 1) * q));
        }
        add(Word(cat(j, word)), -sgn(q * (j.len() as i64 - 1)));
    }
    out
}

/// The four splice sums A(i, I; i′, I′) entering [a(i, I), a(i′, I′)].
pub fn a_splice_sum(m: usize, i: u8, word: &[u8], i2: u8, word2: &[u8]) -> CohClass {
    let (q, q2) = (word.len() as i64, word2.len() as i64);
    let mut out = CohClass::zero(m);
    let half = |out: &mut CohClass, i: u8, w: &[u8], i2: u8, w2: &[u8], q2: i64, outer: i64| {
        for k in positions(w, i2.wrapping_sub(1)) {
            out.add_term(Symbol::A(i, splice(w, k, &cat(&[i2 - 1], w2))), outer * sgn(k as i64 * q2));
        }
        for k in positions(w, i2) {
            out.add_term(Symbol::A(i, splice(w, k, &cat(w2, &[i2]))), -outer * sgn((k as i64 + 1) * q2));
        }
    };
    half(&mut out, i, word, i2, word2, q2, 1);
    half(&mut out, i2, word2, i, word, q, -sgn(q * q2));
    out
}

fn bracket_aa(m: usize, i: u8, word: &[u8], i2: u8, word2: &[u8]) -> CohClass {
    let mut out = a_splice_sum(m, i, word, i2, word2);
    if i == i2 {
        let (q, q2) = (word.len() as i64, word2.len() as i64);
        out.add_term(Symbol::A(i, Word(cat(word2, word))), 1);
        out.add_term(Symbol::A(i, Word(cat(word, word2))), -sgn(q * q2));
    }
    out
}

/// Closed-form bracket of two symbols, before reduction to the basis.
pub fn closed_bracket(m: usize, x: &Symbol, y: &Symbol) -> Result<CohClass, GhError> {
    if !x.fits(m) || !y.fits(m) {
        return Err(GhError::UnsupportedPair(format!("[{x}, {y}] for m = {m}")));
    }
    Ok(match (x, y) {
        (Symbol::One, _) | (_, Symbol::One) => CohClass::zero(m),
        (Symbol::D(_), Symbol::D(_)) => CohClass::zero(m),
        (Symbol::D(j), Symbol::A(i, w)) => bracket_da(m, j.letters(), *i, w.letters()),
        (Symbol::A(i, w), Symbol::D(j)) => {
            let e = w.len() as i64 * (j.len() as i64 - 1);
            bracket_da(m, j.letters(), *i, w.letters()).scale(-sgn(e))
        }
        (Symbol::A(i, w), Symbol::A(i2, w2)) => bracket_aa(m, *i, w.letters(), *i2, w2.letters()),
        _ => n2_bracket_symbols(x, y),
    })
}

/// Gerstenhaber bracket of two classes by either method, in canonical
/// coordinates over `ring`.
pub fn gerstenhaber_bracket(
    m: usize,
    x: &CohClass,
    y: &CohClass,
    method: BracketMethod,
    ring: CoeffRing,
) -> Result<CohClass, GhError> {
    let all_fit = x.terms.keys().chain(y.terms.keys()).all(|s| s.fits(m));
    if !all_fit {
        return Err(GhError::UnsupportedPair(format!("[{x}, {y}] for m = {m}")));
    }
    if m == 2 {
        return match method {
            BracketMethod::ClosedForm => {
                let mut raw = CohClass::zero(2);
                for (s, &c) in &x.terms {
                    for (t, &d) in &y.terms {
                        raw = raw.add(&n2_bracket_symbols(s, t).scale(c * d));
                    }
                }
                identify_n2(&raw, ring)
            }
            BracketMethod::Cochain => {
                let mut out = CohClass::zero(2);
                for xp in x.homogeneous_parts().values() {
                    for yp in y.homogeneous_parts().values() {
                        let z = cochain_bracket(&n2_class_cochain(xp)?, &n2_class_cochain(yp)?);
                        out = out.add(&super::n2::read_n2_cochain(&z, ring)?);
                    }
                }
                Ok(out)
            }
        };
    }
    let deg = |c: &CohClass| c.terms.keys().map(|s| s.degree()).max().unwrap_or(0);
    let ctx = GhContext::new(m, ring, (deg(x) + deg(y)).max(1))?;
    match method {
        BracketMethod::ClosedForm => ctx.bracket_closed(x, y),
        BracketMethod::Cochain => ctx.bracket_cochain(x, y),
    }
}

/// Brackets of basis symbols, keyed by ordered pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketTable {
    pub m: usize,
    pub ring: Option<CoeffRing>,
    pub entries: BTreeMap<(Symbol, Symbol), CohClass>,
}

impl BracketTable {
    pub fn get(&self, x: &Symbol, y: &Symbol) -> Option<&CohClass> {
        self.entries.get(&(x.clone(), y.clone()))
    }

    /// [x, y] = −(−1)^{(|x|−1)(|y|−1)} [y, x] wherever both orders are stored.
    pub fn antisymmetry_holds(&self) -> bool {
        let ring = self.ring.unwrap_or(CoeffRing::Integers);
        self.entries.iter().all(|((x, y), v)| match self.get(y, x) {
            Some(w) => {
                let e = (x.degree() as i64 - 1) * (y.degree() as i64 - 1);
                v.equals_in(&w.scale(-sgn(e)), ring)
            }
            None => true,
        })
    }
}

/// All brackets of basis symbols of degree ≥ 1 whose word lengths add up
/// to at most `max_words`, in both orders.
pub fn bracket_table(ctx: &GhContext, max_words: usize, method: BracketMethod) -> Result<BracketTable, GhError> {
    let m = ctx.m;
    let mut symbols = Vec::new();
    for n in 0..=max_words + 1 {
        symbols.extend(basis_of_degree(m, n).into_iter().filter(|s| *s != Symbol::One));
    }
    let words = |s: &Symbol| match s {
        Symbol::A(_, w) | Symbol::D(w) => w.len(),
        _ => 0,
    };
    let mut entries = BTreeMap::new();
    for x in &symbols {
        for y in &symbols {
            if words(x) + words(y) > max_words {
                continue;
            }
            let (cx, cy) = (CohClass::symbol(m, x.clone()), CohClass::symbol(m, y.clone()));
            let v = match method {
                BracketMethod::ClosedForm => ctx.bracket_closed(&cx, &cy)?,
                BracketMethod::Cochain => ctx.bracket_cochain(&cx, &cy)?,
            };
            entries.insert((x.clone(), y.clone()), v);
        }
    }
    Ok(BracketTable { m, ring: Some(ctx.ring), entries })
}
