use std::fmt;

use crate::bimod::{standard_bimodule, BimoduleKind, Label};
use crate::exactla::{cohomology_of_pair, CoeffRing, FinAbGroup, IntMatrix};
use crate::homology::hochschild_bigraded;

use super::cochain::{cochain_bracket, SparseCochain};
use super::{sgn, CohClass, GhError, Symbol};

const X: (u8, u8) = (1, 2);

/// f_p: x^{⊗p} ↦ I.
pub fn f_cochain(p: usize) -> SparseCochain {
    let mut c = SparseCochain::zero(2, p);
    c.add_term(vec![X; p], Label::Identity, 1);
    c
}

/// g_p: x^{⊗p} ↦ x.
pub fn g_cochain(p: usize) -> SparseCochain {
    let mut c = SparseCochain::zero(2, p);
    c.add_term(vec![X; p], Label::Unit(1, 2), 1);
    c
}

fn as_fg(s: &Symbol) -> Result<Symbol, GhError> {
    match s {
        Symbol::One => Ok(Symbol::F(0)),
        Symbol::F(_) | Symbol::G(_) => Ok(s.clone()),
        _ => Err(GhError::UnsupportedPair(format!("{s} for m = 2"))),
    }
}

/// Bar cochain of a homogeneous combination of f/g symbols.
pub(crate) fn n2_class_cochain(cls: &CohClass) -> Result<SparseCochain, GhError> {
    let deg = cls.degree().unwrap_or(0);
    let mut out = SparseCochain::zero(2, deg);
    for (s, &c) in &cls.terms {
        let z = match as_fg(s)? {
            Symbol::F(p) => f_cochain(p),
            Symbol::G(p) => g_cochain(p),
            _ => unreachable!(),
        };
        if z.degree != deg {
            return Err(GhError::UnsupportedPair(format!("{cls} is not homogeneous")));
        }
        out = out.add(&z.scale(c));
    }
    Ok(out)
}

/// Names the class of an m = 2 bar cocycle supported on powers of x.
pub(crate) fn read_n2_cochain(z: &SparseCochain, ring: CoeffRing) -> Result<CohClass, GhError> {
    if !z.is_cocycle(ring) {
        return Err(GhError::NotACocycle);
    }
    let mut raw = CohClass::zero(2);
    for ((t, l), &c) in &z.terms {
        if t.iter().any(|&u| u != X) {
            return Err(GhError::OutsideBasis(format!("term on {t:?}")));
        }
        let s = match l {
            Label::Identity => Symbol::F(t.len()),
            Label::Unit(..) => Symbol::G(t.len()),
        };
        raw.add_term(s, c);
    }
    identify_n2(&raw, ring)
}

/// Normal form of an f/g combination in HH^*(N_2; R): g_p (p even > 0)
/// lives in R/2R and f_p (p odd) in Ann(2).
pub fn identify_n2(raw: &CohClass, ring: CoeffRing) -> Result<CohClass, GhError> {
    let ch = ring.characteristic() as i64;
    let mut out = CohClass::zero(2);
    for (s, &c) in &raw.terms {
        let s = as_fg(s)?;
        let c = ring.reduce(c);
        let c = match s {
            Symbol::G(p) if p > 0 && p % 2 == 0 => {
                let g = match ring {
                    CoeffRing::Rationals => 1,
                    _ if ch == 0 => 2,
                    _ => num_integer::gcd(2, ch),
                };
                c.rem_euclid(g)
            }
            Symbol::F(p) if p % 2 == 1 => {
                if ring.reduce(2 * c) != 0 {
                    return Err(GhError::NotACocycle);
                }
                c
            }
            _ => c,
        };
        out.add_term(s, c);
    }
    Ok(out)
}

/// Closed-form bracket of two f/g symbols.
pub(crate) fn n2_bracket_symbols(x: &Symbol, y: &Symbol) -> CohClass {
    let mut out = CohClass::zero(2);
    let (Ok(x), Ok(y)) = (as_fg(x), as_fg(y)) else { return out };
    let mut put = |f: bool, i: usize, j: usize, c: i64| {
        if c != 0 {
            let k = i + j - 1;
            out.add_term(if f { Symbol::F(k) } else { Symbol::G(k) }, c);
        }
    };
    let fg = |i: usize, j: usize| -> i64 {
        if j % 2 == 1 {
            i as i64
        } else if i % 2 == 1 {
            1
        } else {
            0
        }
    };
    match (x, y) {
        (Symbol::F(i), Symbol::G(j)) => put(true, i, j, fg(i, j)),
        (Symbol::G(j), Symbol::F(i)) => {
            let e = (i as i64 - 1) * (j as i64 - 1);
            put(true, i, j, -sgn(e) * fg(i, j))
        }
        (Symbol::G(i), Symbol::G(j)) => {
            let c = match (i % 2, j % 2) {
                (0, 0) => 0,
                (1, 0) => -(j as i64 - 1),
                (0, 1) => i as i64 - 1,
                _ => i as i64 - j as i64,
            };
            put(false, i, j, c)
        }
        _ => {}
    }
    out
}

/// Closed-form bracket of two m = 2 classes, in normal form.
pub fn n2_bracket(x: &CohClass, y: &CohClass, ring: CoeffRing) -> Result<CohClass, GhError> {
    let mut raw = CohClass::zero(2);
    for (s, &c) in &x.terms {
        for (t, &d) in &y.terms {
            raw = raw.add(&n2_bracket_symbols(s, t).scale(c * d));
        }
    }
    identify_n2(&raw, ring)
}

/// HH^n(N_2) from the periodic complex N → N → ⋯ whose n-th map is 2x·
/// for even n and 0 for odd n.
pub fn periodic_groups(ring: CoeffRing, max_n: usize) -> Vec<FinAbGroup> {
    // basis (I, x); the nonzero map sends I to 2x
    let map = |i: usize| {
        if i % 2 == 0 {
            IntMatrix::from_rows(&[vec![0, 0], vec![2, 0]])
        } else {
            IntMatrix::zeros(2, 2)
        }
    };
    (0..=max_n)
        .map(|n| {
            let d_in = if n == 0 { IntMatrix::zeros(2, 0) } else { map(n) };
            cohomology_of_pair(&d_in, &map(n + 1), ring).expect("periodic complex")
        })
        .collect()
}

/// HH^n(N_2) from the Koszul engine.
pub fn koszul_groups_n2(ring: CoeffRing, max_n: usize) -> Vec<FinAbGroup> {
    let n2 = standard_bimodule(2, BimoduleKind::N).expect("m = 2");
    let table = hochschild_bigraded(2, &n2, ring, max_n);
    (0..=max_n).map(|n| table.total(n)).collect()
}

/// A candidate BV operator on HH^*(N_2) over a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BvFamily {
    /// Characteristic ≠ 2: Δ(g_1) = f_0 + c g_0, Δ(g_{2n+1}) = (2n+1) f_{2n}.
    OddChar { c: i64 },
    /// Characteristic 2: Δ(f_{2n+1}) = c f_{2n} + c′ g_{2n}, Δ(g_{2n+1}) = −f_{2n} + c g_{2n}.
    Char2 { c: i64, c2: i64 },
}

impl fmt::Display for BvFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BvFamily::OddChar { c } => write!(f, "delta_c(c={c})"),
            BvFamily::Char2 { c, c2 } => write!(f, "delta_cc(c={c},c'={c2})"),
        }
    }
}

/// HH^*(N_2; k) over a field k, on its f/g basis.
#[derive(Clone, Copy, Debug)]
pub struct N2Algebra {
    pub ring: CoeffRing,
}

impl N2Algebra {
    pub fn new(ring: CoeffRing) -> Result<Self, GhError> {
        if !ring.is_field() {
            return Err(GhError::UnsupportedRing(ring));
        }
        Ok(N2Algebra { ring })
    }

    fn char2(&self) -> bool {
        self.ring.characteristic() == 2
    }

    pub fn in_basis(&self, s: &Symbol) -> bool {
        match *s {
            Symbol::F(p) => self.char2() || p % 2 == 0,
            Symbol::G(p) => self.char2() || p == 0 || p % 2 == 1,
            _ => false,
        }
    }

    pub fn basis(&self, max_degree: usize) -> Vec<Symbol> {
        (0..=max_degree).flat_map(|p| [Symbol::F(p), Symbol::G(p)]).filter(|s| self.in_basis(s)).collect()
    }

    pub fn normalize(&self, c: &CohClass) -> CohClass {
        let mut out = CohClass::zero(2);
        for (s, &v) in &c.terms {
            let s = as_fg(s).expect("f/g symbol");
            if self.in_basis(&s) {
                out.add_term(s, self.ring.reduce(v));
            }
        }
        out
    }

    pub fn mul(&self, a: &CohClass, b: &CohClass) -> CohClass {
        let mut out = CohClass::zero(2);
        for (s, &c) in &a.terms {
            for (t, &d) in &b.terms {
                let prod = match (as_fg(s).expect("f/g"), as_fg(t).expect("f/g")) {
                    (Symbol::F(i), Symbol::F(j)) => Some(Symbol::F(i + j)),
                    (Symbol::F(i), Symbol::G(j)) | (Symbol::G(j), Symbol::F(i)) => Some(Symbol::G(i + j)),
                    _ => None,
                };
                if let Some(p) = prod {
                    out.add_term(p, c * d);
                }
            }
        }
        self.normalize(&out)
    }

    pub fn bracket(&self, a: &CohClass, b: &CohClass) -> CohClass {
        let mut out = CohClass::zero(2);
        for (s, &c) in &a.terms {
            for (t, &d) in &b.terms {
                out = out.add(&n2_bracket_symbols(s, t).scale(c * d));
            }
        }
        self.normalize(&out)
    }

    pub fn delta(&self, family: BvFamily, a: &CohClass) -> CohClass {
        let mut out = CohClass::zero(2);
        for (s, &v) in &a.terms {
            let s = as_fg(s).expect("f/g");
            match (family, s) {
                (BvFamily::OddChar { c }, Symbol::G(1)) => {
                    out.add_term(Symbol::F(0), v);
                    out.add_term(Symbol::G(0), c * v);
                }
                (BvFamily::OddChar { .. }, Symbol::G(p)) if p % 2 == 1 => out.add_term(Symbol::F(p - 1), p as i64 * v),
                (BvFamily::Char2 { c, c2 }, Symbol::F(p)) if p % 2 == 1 => {
                    out.add_term(Symbol::F(p - 1), c * v);
                    out.add_term(Symbol::G(p - 1), c2 * v);
                }
                (BvFamily::Char2 { c, .. }, Symbol::G(p)) if p % 2 == 1 => {
                    out.add_term(Symbol::F(p - 1), -v);
                    out.add_term(Symbol::G(p - 1), c * v);
                }
                _ => {}
            }
        }
        self.normalize(&out)
    }

    /// Pairs (a, b) violating [a,b] = (−1)^{|a|}(Δ(ab) − Δ(a)b − (−1)^{|a|} aΔ(b)).
    pub fn bv_violations(&self, family: BvFamily, max_degree: usize) -> Vec<(Symbol, Symbol)> {
        let basis = self.basis(max_degree);
        let mut bad = Vec::new();
        for a in &basis {
            for b in &basis {
                let (ca, cb) = (CohClass::symbol(2, a.clone()), CohClass::symbol(2, b.clone()));
                let lhs = self.bracket(&ca, &cb);
                let sa = sgn(a.degree() as i64);
                let inner = self
                    .delta(family, &self.mul(&ca, &cb))
                    .sub(&self.mul(&self.delta(family, &ca), &cb))
                    .sub(&self.mul(&ca, &self.delta(family, &cb)).scale(sa));
                if !lhs.equals_in(&inner.scale(sa), self.ring) {
                    bad.push((a.clone(), b.clone()));
                }
            }
        }
        bad
    }

    pub fn delta_squares_to_zero(&self, family: BvFamily, max_degree: usize) -> bool {
        self.basis(max_degree).into_iter().all(|s| {
            let c = CohClass::symbol(2, s);
            self.delta(family, &self.delta(family, &c)).is_zero()
        })
    }

    /// The BV families to test: all parameters when the field is small,
    /// a window of them otherwise.
    pub fn families(&self) -> Vec<BvFamily> {
        let ch = self.ring.characteristic() as i64;
        if ch == 2 {
            return (0..2).flat_map(|c| (0..2).map(move |c2| BvFamily::Char2 { c, c2 })).collect();
        }
        let cs: Vec<i64> = if ch == 0 { (-2..=2).collect() } else { (0..ch.min(101)).collect() };
        cs.into_iter().map(|c| BvFamily::OddChar { c }).collect()
    }
}

/// Results of the m = 2 checks.
#[derive(Clone, Debug)]
pub struct N2Report {
    pub ring: CoeffRing,
    pub max_degree: usize,
    pub periodic: Vec<FinAbGroup>,
    pub koszul: Vec<FinAbGroup>,
    pub groups_agree: bool,
    pub products_ok: bool,
    pub brackets_ok: bool,
    /// Per BV family: whether the identity held on every basis pair; empty
    /// when the ring is not a field.
    pub bv: Vec<(BvFamily, bool)>,
    pub delta_squared_zero: Option<bool>,
}

impl N2Report {
    pub fn pass(&self) -> bool {
        self.groups_agree
            && self.products_ok
            && self.brackets_ok
            && self.bv.iter().all(|e| e.1)
            && self.delta_squared_zero != Some(false)
    }
}

fn products_hold(max_degree: usize) -> bool {
    (0..=max_degree).all(|i| {
        (0..=max_degree - i).all(|j| {
            let fi = f_cochain(i);
            let gi = g_cochain(i);
            fi.cup(&f_cochain(j)) == f_cochain(i + j)
                && fi.cup(&g_cochain(j)) == g_cochain(i + j)
                && gi.cup(&f_cochain(j)) == g_cochain(i + j)
                && gi.cup(&g_cochain(j)).is_zero()
        })
    })
}

fn brackets_hold(max_degree: usize) -> bool {
    let cochain = |s: &Symbol| match *s {
        Symbol::F(p) => f_cochain(p),
        Symbol::G(p) => g_cochain(p),
        _ => unreachable!(),
    };
    let symbols: Vec<Symbol> = (0..=max_degree).flat_map(|p| [Symbol::F(p), Symbol::G(p)]).collect();
    symbols.iter().all(|x| {
        symbols.iter().filter(|y| x.degree() + y.degree() <= max_degree + 1).all(|y| {
            let direct = cochain_bracket(&cochain(x), &cochain(y));
            let table = n2_bracket_symbols(x, y);
            let mut expect = SparseCochain::zero(2, direct.degree);
            for (s, &c) in &table.terms {
                expect = expect.add(&cochain(s).scale(c));
            }
            direct == expect
        })
    })
}

/// The m = 2 theory over `ring`: groups by two methods, the product and
/// bracket tables at cochain level, and the BV families over fields.
pub fn n2_theory(ring: CoeffRing, max_degree: usize) -> Result<N2Report, GhError> {
    let periodic = periodic_groups(ring, max_degree);
    let koszul = koszul_groups_n2(ring, max_degree);
    let groups_agree = periodic == koszul;
    let products_ok = products_hold(max_degree);
    let brackets_ok = brackets_hold(max_degree);
    let (bv, delta_squared_zero) = match N2Algebra::new(ring) {
        Ok(alg) => {
            let fams = alg.families();
            let bv = fams.iter().map(|&f| (f, alg.bv_violations(f, max_degree).is_empty())).collect();
            let dd = fams.iter().all(|&f| alg.delta_squares_to_zero(f, max_degree));
            (bv, Some(dd))
        }
        Err(_) => (Vec::new(), None),
    };
    Ok(N2Report { ring, max_degree, periodic, koszul, groups_agree, products_ok, brackets_ok, bv, delta_squared_zero })
}
