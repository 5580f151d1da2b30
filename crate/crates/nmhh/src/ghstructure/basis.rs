use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};

use crate::exactla::{solve_sparse, Rationals, SparseMat};
use crate::qma::{is_dual_word, QuadMonomialAlgebra, Word};

use super::{sgn, CohClass, GhError, Symbol};

/// Dual basis words of length q.
pub fn dual_words(m: usize, q: usize) -> Vec<Word> {
    QuadMonomialAlgebra::nm_dual(m).basis_of_degree(q)
}

/// All pairs (i, I) with 1 ≤ i ≤ m and I a dual word of length q.
pub fn splice_set(m: usize, q: usize) -> Vec<(u8, Word)> {
    let words = dual_words(m, q);
    (1..=m as u8).flat_map(|i| words.iter().map(move |w| (i, w.clone()))).collect()
}

/// The pairs eliminated by the linear relations among the a(i, I).
pub fn splice_minus(m: usize, q: usize) -> BTreeSet<(u8, Word)> {
    let mut out = BTreeSet::new();
    let mm = m as u8;
    if q == 0 {
        out.insert((mm, Word::empty()));
        return out;
    }
    for i in 1..mm {
        for j in dual_words(m, q - 1) {
            let ij = j.prepend(i);
            if !is_dual_word(m, ij.letters()) {
                continue;
            }
            // (i, (i, J)) and whether y_J y_i ≠ 0
            let live = is_dual_word(m, j.append(i).letters());
            if !live {
                out.insert((i, ij.clone()));
            }
            if live && i < mm - 1 {
                out.insert((i + 1, j.append(i)));
            }
            if live && i == mm - 1 {
                out.insert((i, ij.clone()));
                out.insert((1, ij.clone()));
            }
            if i < mm - 1 || !live {
                out.insert((mm, ij.clone()));
            }
        }
    }
    out
}

/// Basis pairs: the complement of [`splice_minus`] in [`splice_set`].
pub fn splice_plus(m: usize, q: usize) -> Vec<(u8, Word)> {
    let minus = splice_minus(m, q);
    splice_set(m, q).into_iter().filter(|p| !minus.contains(p)).collect()
}

/// Canonical basis of HH^{q+1,q}.
pub fn a_basis(m: usize, q: usize) -> Vec<Symbol> {
    splice_plus(m, q).into_iter().map(|(i, w)| Symbol::A(i, w)).collect()
}

/// Words J of length n with first letter ≠ 1 and last letter ≠ m − 1.
pub fn d_basis(m: usize, n: usize) -> Vec<Word> {
    let top = m as u8 - 1;
    dual_words(m, n).into_iter().filter(|w| w.first() != Some(1) && w.last() != Some(top)).collect()
}

/// Canonical basis symbols of HH^n(N_m), m ≥ 3.
pub fn basis_of_degree(m: usize, n: usize) -> Vec<Symbol> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Symbol::One);
    } else {
        out.extend(a_basis(m, n - 1));
    }
    out.extend(d_basis(m, n).into_iter().map(Symbol::D));
    out
}

/// Expansions of the eliminated a(i, I) in the basis pairs, per word length.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    m: usize,
    tables: BTreeMap<usize, BTreeMap<(u8, Word), Vec<((u8, Word), i64)>>>,
}

impl Reducer {
    /// Prepares expansions for words of length ≤ `max_q`.
    pub fn new(m: usize, max_q: usize) -> Self {
        let tables = (0..=max_q).map(|q| (q, Self::build(m, q))).collect();
        Reducer { m, tables }
    }

    pub fn max_q(&self) -> usize {
        self.tables.keys().next_back().copied().unwrap_or(0)
    }

    /// Relations: Σ_i a(i, I) = 0, and a(i, (i, J)) + (−1)^q a(i+1, (J, i)) = 0
    /// with the second term absent when (J, i) is not a dual word.
    pub fn relations(m: usize, q: usize) -> Vec<Vec<((u8, Word), i64)>> {
        let mut rels = Vec::new();
        for w in dual_words(m, q) {
            rels.push((1..=m as u8).map(|i| ((i, w.clone()), 1)).collect());
        }
        if q > 0 {
            for i in 1..m as u8 {
                for j in dual_words(m, q - 1) {
                    let ij = j.prepend(i);
                    if !is_dual_word(m, ij.letters()) {
                        continue;
                    }
                    let mut r = vec![((i, ij), 1)];
                    let ji = j.append(i);
                    if is_dual_word(m, ji.letters()) {
                        r.push(((i + 1, ji), sgn(q as i64)));
                    }
                    rels.push(r);
                }
            }
        }
        rels
    }

    fn build(m: usize, q: usize) -> BTreeMap<(u8, Word), Vec<((u8, Word), i64)>> {
        let minus: Vec<(u8, Word)> = splice_minus(m, q).into_iter().collect();
        let row: BTreeMap<&(u8, Word), usize> = minus.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let rels = Self::relations(m, q);
        // Rel^T restricted to eliminated rows; solve for relation weights
        let mut a = SparseMat::new(minus.len(), rels.len());
        for (r, rel) in rels.iter().enumerate() {
            for (p, c) in rel {
                if let Some(&k) = row.get(p) {
                    a.push(k, r, *c);
                }
            }
        }
        let rhs: Vec<Vec<(usize, i64)>> = (0..minus.len()).map(|k| vec![(k, 1)]).collect();
        let sols = solve_sparse(&Rationals, &a, &rhs);
        let mut out = BTreeMap::new();
        for (k, sol) in sols.into_iter().enumerate() {
            let y = sol.expect("relations determine every eliminated pair");
            let mut combo: BTreeMap<(u8, Word), i64> = BTreeMap::new();
            for (r, yr) in y.iter().enumerate() {
                if yr.is_zero() {
                    continue;
                }
                assert!(yr.is_integer(), "relation weights are integral");
                let yr = yr.to_integer().to_i64().expect("small weight");
                for (p, c) in &rels[r] {
                    if !row.contains_key(p) {
                        *combo.entry(p.clone()).or_insert(0) -= yr * c;
                    }
                }
            }
            combo.retain(|_, c| *c != 0);
            out.insert(minus[k].clone(), combo.into_iter().collect());
        }
        out
    }

    /// Canonical coordinates: eliminated a-symbols expanded, d-symbols with
    /// first letter 1 or last letter m − 1 dropped, invalid words dropped.
    pub fn reduce(&self, raw: &CohClass) -> Result<CohClass, GhError> {
        let m = self.m;
        let mut out = CohClass::zero(m);
        for (s, &c) in &raw.terms {
            if !s.fits(m) {
                return Err(GhError::UnsupportedPair(format!("{s} for m = {m}")));
            }
            match s {
                Symbol::One => out.add_term(Symbol::One, c),
                Symbol::D(w) => {
                    let top = m as u8 - 1;
                    if is_dual_word(m, w.letters()) && w.first() != Some(1) && w.last() != Some(top) {
                        out.add_term(s.clone(), c);
                    }
                }
                Symbol::A(i, w) => {
                    if *i == 0 || *i as usize > m {
                        return Err(GhError::InvalidIndex(s.to_string()));
                    }
                    if !is_dual_word(m, w.letters()) {
                        continue;
                    }
                    let table = self.tables.get(&w.len()).ok_or(GhError::DegreeOutOfRange { needed: w.len(), built: self.max_q() })?;
                    match table.get(&(*i, w.clone())) {
                        Some(exp) => {
                            for ((i2, w2), c2) in exp {
                                out.add_term(Symbol::A(*i2, w2.clone()), c * c2);
                            }
                        }
                        None => out.add_term(s.clone(), c),
                    }
                }
                Symbol::F(_) | Symbol::G(_) => unreachable!("checked by fits"),
            }
        }
        Ok(out)
    }
}

/// Rewrites a formal A/D combination in the canonical basis (m ≥ 3).
pub fn reduce_to_basis(m: usize, raw: &CohClass) -> Result<CohClass, GhError> {
    if m < 3 {
        return Err(GhError::UnsupportedPair(format!("canonical basis needs m ≥ 3, got {m}")));
    }
    let max_q = raw.terms.keys().map(|s| s.degree()).max().unwrap_or(0);
    Reducer::new(m, max_q).reduce(raw)
}
