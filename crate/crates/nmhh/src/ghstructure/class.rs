use std::collections::BTreeMap;
use std::fmt;

use crate::exactla::CoeffRing;
use crate::qma::Word;

use super::GhError;

/// Named cohomology classes: the unit, a(i, I), d(J), and the m = 2
/// classes f_p, g_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    One,
    A(u8, Word),
    D(Word),
    F(usize),
    G(usize),
}

impl Symbol {
    /// Hochschild degree.
    pub fn degree(&self) -> usize {
        match self {
            Symbol::One => 0,
            Symbol::A(_, w) => w.len() + 1,
            Symbol::D(w) => w.len(),
            Symbol::F(p) | Symbol::G(p) => *p,
        }
    }

    pub fn internal_degree(&self, m: usize) -> i32 {
        match self {
            Symbol::One => 0,
            Symbol::A(_, w) => w.len() as i32,
            Symbol::D(w) => w.len() as i32 - (m as i32 - 1),
            Symbol::F(p) => *p as i32,
            Symbol::G(p) => *p as i32 - 1,
        }
    }

    pub fn is_n2(&self) -> bool {
        matches!(self, Symbol::F(_) | Symbol::G(_))
    }

    pub fn fits(&self, m: usize) -> bool {
        match self {
            Symbol::One => true,
            Symbol::F(_) | Symbol::G(_) => m == 2,
            Symbol::A(..) | Symbol::D(_) => m >= 3,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::One => write!(f, "1"),
            Symbol::A(i, w) => write!(f, "a({i},{w})"),
            Symbol::D(w) => write!(f, "d({w})"),
            Symbol::F(p) => write!(f, "f({p})"),
            Symbol::G(p) => write!(f, "g({p})"),
        }
    }
}

/// A finite linear combination of symbols with integer coefficients,
/// read in whatever ring the producing computation used.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohClass {
    pub m: usize,
    pub terms: BTreeMap<Symbol, i64>,
}

impl CohClass {
    pub fn zero(m: usize) -> Self {
        CohClass { m, terms: BTreeMap::new() }
    }

    pub fn symbol(m: usize, s: Symbol) -> Self {
        let mut c = Self::zero(m);
        c.add_term(s, 1);
        c
    }

    pub fn one(m: usize) -> Self {
        Self::symbol(m, Symbol::One)
    }

    pub fn a(m: usize, i: u8, w: &[u8]) -> Self {
        Self::symbol(m, Symbol::A(i, Word::from(w)))
    }

    pub fn d(m: usize, w: &[u8]) -> Self {
        Self::symbol(m, Symbol::D(Word::from(w)))
    }

    pub fn add_term(&mut self, s: Symbol, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(s.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, other: &CohClass) -> CohClass {
        let mut out = self.clone();
        for (s, &c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &CohClass) -> CohClass {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> CohClass {
        let mut out = CohClass::zero(self.m);
        for (s, &c) in &self.terms {
            out.add_term(s.clone(), c * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &Symbol) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    /// Coefficients reduced into `ring`, zeros dropped.
    pub fn reduced(&self, ring: CoeffRing) -> CohClass {
        let mut out = CohClass::zero(self.m);
        for (s, &c) in &self.terms {
            out.add_term(s.clone(), ring.reduce(c));
        }
        out
    }

    /// Equality after reduction into `ring`.
    pub fn equals_in(&self, other: &CohClass, ring: CoeffRing) -> bool {
        self.sub(other).reduced(ring).is_zero()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|s| s.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Splits into homogeneous components by Hochschild degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, CohClass> {
        let mut out: BTreeMap<usize, CohClass> = BTreeMap::new();
        for (s, &c) in &self.terms {
            out.entry(s.degree()).or_insert_with(|| CohClass::zero(self.m)).add_term(s.clone(), c);
        }
        out
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, &c)) in self.terms.iter().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if abs == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{abs}*{s}")?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> GhError {
        GhError::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expect(&mut self, c: u8) -> Result<(), GhError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<i64, GhError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected a number"))
    }

    fn word(&mut self) -> Result<Vec<u8>, GhError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            let k = self.number()?;
            out.push(u8::try_from(k).map_err(|_| self.err("letter out of range"))?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected ',' or ']'")),
            }
        }
    }

    fn atom(&mut self) -> Result<Symbol, GhError> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match c {
            b'a' => {
                self.expect(b'(')?;
                let i = self.number()?;
                self.expect(b',')?;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(Symbol::A(u8::try_from(i).map_err(|_| self.err("index out of range"))?, Word(w)))
            }
            b'd' => {
                self.expect(b'(')?;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(Symbol::D(Word(w)))
            }
            b'f' | b'g' => {
                self.expect(b'(')?;
                let p = self.number()? as usize;
                self.expect(b')')?;
                Ok(if c == b'f' { Symbol::F(p) } else { Symbol::G(p) })
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a class symbol"))
            }
        }
    }

    fn term(&mut self) -> Result<(Symbol, i64), GhError> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let k = self.number()?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                Ok((self.atom()?, k))
            } else {
                Ok((Symbol::One, k))
            }
        } else {
            Ok((self.atom()?, 1))
        }
    }
}

fn check_symbol(m: usize, s: &Symbol) -> Result<(), GhError> {
    if !s.fits(m) {
        return Err(GhError::UnsupportedPair(format!("{s} is not a class symbol for m = {m}")));
    }
    let letters_ok = |w: &Word| w.letters().iter().all(|&k| k >= 1 && (k as usize) < m);
    match s {
        Symbol::A(i, w) if *i == 0 || *i as usize > m || !letters_ok(w) => Err(GhError::InvalidIndex(s.to_string())),
        Symbol::D(w) if !letters_ok(w) => Err(GhError::InvalidIndex(s.to_string())),
        _ => Ok(()),
    }
}

/// Parses `1`, `a(i,[..])`, `d([..])`, `f(p)`, `g(p)` and integer
/// combinations of them with `+`, `-`, `*`.
pub fn parse_class(m: usize, text: &str) -> Result<CohClass, GhError> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut out = CohClass::zero(m);
    let mut sign = 1;
    if lx.peek() == Some(b'-') {
        lx.pos += 1;
        sign = -1;
    } else if lx.peek() == Some(b'+') {
        lx.pos += 1;
    }
    loop {
        let (s, c) = lx.term()?;
        check_symbol(m, &s)?;
        out.add_term(s, sign * c);
        match lx.peek() {
            None => return Ok(out),
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(_) => return Err(lx.err("expected '+' or '-'")),
        }
        lx.pos += 1;
    }
}
