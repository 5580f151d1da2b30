//! Quadratic monomial algebras, their monomial bases and quadratic duals,
//! and the counting combinatorics of the dual of N_m.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QmaError {
    #[error("letter {0} out of range 1..={1}")]
    LetterOutOfRange(u8, usize),
    #[error("size must be at least {0}")]
    SizeTooSmall(usize),
}

/// A monomial: a finite sequence of 1-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, k: u8) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(k);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn append(&self, k: u8) -> Word {
        let mut v = self.0.clone();
        v.push(k);
        Word(v)
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Tensor algebra on `gen_count` generators modulo the forbidden
/// adjacent pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMonomialAlgebra {
    gen_count: usize,
    forbidden: BTreeSet<(u8, u8)>,
}

impl QuadMonomialAlgebra {
    pub fn new(gen_count: usize, forbidden: impl IntoIterator<Item = (u8, u8)>) -> Result<Self, QmaError> {
        if gen_count < 1 {
            return Err(QmaError::SizeTooSmall(1));
        }
        let forbidden: BTreeSet<(u8, u8)> = forbidden.into_iter().collect();
        for &(i, j) in &forbidden {
            for k in [i, j] {
                if k < 1 || k as usize > gen_count {
                    return Err(QmaError::LetterOutOfRange(k, gen_count));
                }
            }
        }
        Ok(QuadMonomialAlgebra { gen_count, forbidden })
    }

    /// N_m: generators x_k = E_{k,k+1}, relations x_i x_j = 0 for j ≠ i+1.
    pub fn nm_presentation(m: usize) -> Self {
        assert!(m >= 2, "m must be at least 2");
        let n = (m - 1) as u8;
        let forbidden = (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i + 1).map(move |j| (i, j)));
        QuadMonomialAlgebra::new(m - 1, forbidden).unwrap()
    }

    /// The quadratic dual of N_m: relations y_i y_{i+1} = 0.
    pub fn nm_dual(m: usize) -> Self {
        Self::nm_presentation(m).quadratic_dual()
    }

    pub fn gen_count(&self) -> usize {
        self.gen_count
    }

    pub fn forbidden(&self) -> &BTreeSet<(u8, u8)> {
        &self.forbidden
    }

    pub fn is_forbidden(&self, i: u8, j: u8) -> bool {
        self.forbidden.contains(&(i, j))
    }

    pub fn quadratic_dual(&self) -> Self {
        let n = self.gen_count as u8;
        let forbidden = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|p| !self.forbidden.contains(p))
            .collect();
        QuadMonomialAlgebra { gen_count: self.gen_count, forbidden }
    }

    pub fn letters_in_range(&self, w: &Word) -> bool {
        w.0.iter().all(|&k| k >= 1 && k as usize <= self.gen_count)
    }

    /// True when `w` is a nonzero monomial.
    pub fn is_basis_word(&self, w: &Word) -> bool {
        self.letters_in_range(w) && w.0.windows(2).all(|p| !self.is_forbidden(p[0], p[1]))
    }

    /// Monomial basis in degree `d`, lexicographic.
    pub fn basis_of_degree(&self, d: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        self.extend_words(d, &mut cur, &mut out);
        out
    }

    fn extend_words(&self, d: usize, cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if cur.len() == d {
            out.push(Word(cur.clone()));
            return;
        }
        for k in 1..=self.gen_count as u8 {
            if let Some(&l) = cur.last() {
                if self.is_forbidden(l, k) {
                    continue;
                }
            }
            cur.push(k);
            self.extend_words(d, cur, out);
            cur.pop();
        }
    }

    /// Product of monomials; `None` when it vanishes.
    pub fn multiply_words(&self, u: &Word, v: &Word) -> Option<Word> {
        let w = u.concat(v);
        self.is_basis_word(&w).then_some(w)
    }
}

/// True when `w` is a basis word of the dual of N_m.
pub fn is_dual_word(m: usize, w: &[u8]) -> bool {
    w.iter().all(|&k| k >= 1 && (k as usize) < m) && w.windows(2).all(|p| p[1] != p[0] + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiMethod {
    /// Word count by a first-letter transfer automaton.
    Enumerate,
    Recursion,
    Series,
    Combinatorial,
}

impl PhiMethod {
    pub const ALL: [PhiMethod; 4] = [PhiMethod::Enumerate, PhiMethod::Recursion, PhiMethod::Series, PhiMethod::Combinatorial];
}

/// Rank of the degree-`q` part of the dual of N_m; 0 for negative `q`.
pub fn phi(m: usize, q: i64, method: PhiMethod) -> i64 {
    assert!(m >= 2, "m must be at least 2");
    if q < 0 {
        return 0;
    }
    let q = q as usize;
    match method {
        PhiMethod::Enumerate => phi_automaton(m, q),
        PhiMethod::Recursion => phi_recursion(m, q),
        PhiMethod::Series => {
            let s = dual_hilbert_series(m, q);
            s.coeff(q)
        }
        PhiMethod::Combinatorial => phi_combinatorial(m, q),
    }
}

/// φ by the default method.
pub fn phi_of(m: usize, q: i64) -> i64 {
    phi(m, q, PhiMethod::Recursion)
}

fn phi_automaton(m: usize, q: usize) -> i64 {
    if q == 0 {
        return 1;
    }
    psi_vector(m, q).iter().sum()
}

fn phi_recursion(m: usize, q: usize) -> i64 {
    let mut v = vec![0i64; q + 1];
    v[0] = 1;
    for n in 1..=q {
        let mut s = 0i64;
        for r in 1..m.min(n + 1) {
            let term = (m - r) as i64 * v[n - r];
            s += if r % 2 == 1 { term } else { -term };
        }
        v[n] = s;
    }
    v[q]
}

fn phi_combinatorial(m: usize, q: usize) -> i64 {
    // sum over (i_1..i_{m-1}) with Σ k·i_k = q of multinomial · Π (k−m)^{i_k}
    fn go(k: usize, m: usize, rest: usize, counts: &mut Vec<usize>, acc: &mut i128) {
        if k == m {
            if rest == 0 {
                let total: usize = counts.iter().sum();
                let mut term = factorial(total);
                for (idx, &c) in counts.iter().enumerate() {
                    term /= factorial(c);
                    term *= (idx as i128 + 1 - m as i128).pow(c as u32);
                }
                *acc += term;
            }
            return;
        }
        for c in 0..=rest / k {
            counts.push(c);
            go(k + 1, m, rest - c * k, counts, acc);
            counts.pop();
        }
    }
    let mut acc = 0i128;
    go(1, m, q, &mut Vec::new(), &mut acc);
    let v = if q % 2 == 0 { acc } else { -acc };
    v as i64
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// (ψ_1(q), …, ψ_{m−1}(q)): basis words of degree `q` counted by first letter.
pub fn psi_vector(m: usize, q: usize) -> Vec<i64> {
    assert!(m >= 2 && q >= 1);
    let n = m - 1;
    let mut v = vec![1i64; n];
    for _ in 1..q {
        let total: i64 = v.iter().sum();
        v = (0..n).map(|i| if i + 1 < n { total - v[i + 1] } else { total }).collect();
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterConstraint {
    FirstEq(u8),
    FirstNe(u8),
    LastEq(u8),
    LastNe(u8),
}

impl LetterConstraint {
    /// Constraints on absent letters hold vacuously for the empty word.
    pub fn holds(&self, w: &Word) -> bool {
        match *self {
            LetterConstraint::FirstEq(a) => w.first().map_or(true, |x| x == a),
            LetterConstraint::FirstNe(a) => w.first().map_or(true, |x| x != a),
            LetterConstraint::LastEq(a) => w.last().map_or(true, |x| x == a),
            LetterConstraint::LastNe(a) => w.last().map_or(true, |x| x != a),
        }
    }
}

/// Number of degree-`q` dual basis words satisfying all constraints, by enumeration.
pub fn phi_constrained(m: usize, q: usize, constraints: &[LetterConstraint]) -> i64 {
    QuadMonomialAlgebra::nm_dual(m)
        .basis_of_degree(q)
        .iter()
        .filter(|w| constraints.iter().all(|c| c.holds(w)))
        .count() as i64
}

/// Truncated integer power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    coeffs: Vec<i64>,
    trunc: usize,
}

impl PolySeries {
    pub fn new(mut coeffs: Vec<i64>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, 0);
        PolySeries { coeffs, trunc }
    }

    pub fn one(trunc: usize) -> Self {
        Self::new(vec![1], trunc)
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> i64 {
        assert!(n <= self.trunc, "coefficient beyond truncation");
        self.coeffs[n]
    }

    pub fn add(&self, other: &PolySeries) -> PolySeries {
        let t = self.trunc.min(other.trunc);
        PolySeries::new((0..=t).map(|i| self.coeffs[i] + other.coeffs[i]).collect(), t)
    }

    pub fn scale(&self, c: i64) -> PolySeries {
        PolySeries::new(self.coeffs.iter().map(|v| v * c).collect(), self.trunc)
    }

    pub fn mul(&self, other: &PolySeries) -> PolySeries {
        let t = self.trunc.min(other.trunc);
        let mut out = vec![0i64; t + 1];
        for i in 0..=t {
            for j in 0..=t - i {
                out[i + j] += self.coeffs[i] * other.coeffs[j];
            }
        }
        PolySeries::new(out, t)
    }

    /// f(−t).
    pub fn negate_variable(&self) -> PolySeries {
        let c = self.coeffs.iter().enumerate().map(|(i, v)| if i % 2 == 0 { *v } else { -v }).collect();
        PolySeries::new(c, self.trunc)
    }

    /// Multiplicative inverse; requires constant term ±1.
    pub fn inverse(&self) -> Option<PolySeries> {
        let c0 = self.coeffs[0];
        if c0.abs() != 1 {
            return None;
        }
        let mut g = vec![0i64; self.trunc + 1];
        g[0] = c0;
        for n in 1..=self.trunc {
            let s: i64 = (1..=n).map(|k| self.coeffs[k] * g[n - k]).sum();
            g[n] = -s * c0;
        }
        Some(PolySeries::new(g, self.trunc))
    }
}

/// Hilbert series f(t) = 1 + Σ (m−k) t^k of N_m.
pub fn hilbert_series(m: usize, trunc: usize) -> PolySeries {
    let mut c = vec![1i64];
    c.extend((1..m).map(|k| (m - k) as i64));
    c.truncate(trunc + 1);
    PolySeries::new(c, trunc)
}

/// f!(t) = 1 / f(−t).
pub fn dual_hilbert_series(m: usize, trunc: usize) -> PolySeries {
    hilbert_series(m, trunc).negate_variable().inverse().expect("constant term is 1")
}

/// h(t) = 1 + (m−2) f!(t), the Poincaré series of HH(N_m, M_m/N_m).
pub fn generating_function_h(m: usize, trunc: usize) -> PolySeries {
    PolySeries::one(trunc).add(&dual_hilbert_series(m, trunc).scale(m as i64 - 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_basis_degree_two() {
        let b = QuadMonomialAlgebra::nm_dual(3).basis_of_degree(2);
        assert_eq!(b, vec![Word(vec![1, 1]), Word(vec![2, 1]), Word(vec![2, 2])]);
        assert_eq!(QuadMonomialAlgebra::nm_dual(4).basis_of_degree(2).len(), 7);
        assert_eq!(QuadMonomialAlgebra::nm_dual(5).basis_of_degree(0), vec![Word::empty()]);
    }

    #[test]
    fn dual_relations() {
        let d = QuadMonomialAlgebra::nm_dual(4);
        assert_eq!(d.forbidden().iter().copied().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
        assert_eq!(d.quadratic_dual(), QuadMonomialAlgebra::nm_presentation(4));
        let free = QuadMonomialAlgebra::new(2, []).unwrap();
        assert_eq!(free.quadratic_dual().forbidden().len(), 4);
    }

    #[test]
    fn word_products() {
        let d = QuadMonomialAlgebra::nm_dual(3);
        assert_eq!(d.multiply_words(&Word(vec![2]), &Word(vec![1])), Some(Word(vec![2, 1])));
        assert_eq!(d.multiply_words(&Word(vec![1]), &Word(vec![2])), None);
        assert_eq!(d.multiply_words(&Word::empty(), &Word(vec![2, 2])), Some(Word(vec![2, 2])));
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(3, 4, PhiMethod::Combinatorial), 5);
        assert_eq!(phi(4, 4, PhiMethod::Series), 37);
        assert_eq!(phi(4, -1, PhiMethod::Enumerate), 0);
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi_vector(5, 1), vec![1; 4]);
        assert_eq!(psi_vector(3, 2), vec![1, 2]);
        assert_eq!(psi_vector(2, 7), vec![1]);
    }

    #[test]
    fn constrained_counts() {
        use LetterConstraint::*;
        assert_eq!(phi_constrained(3, 2, &[FirstNe(1), LastNe(2)]), 1);
        assert_eq!(phi_constrained(4, 0, &[FirstNe(1)]), 1);
    }

    #[test]
    fn h_series() {
        assert_eq!(generating_function_h(3, 5).coeffs(), &[2, 2, 3, 4, 5, 6]);
        let h4 = generating_function_h(4, 2);
        assert_eq!((h4.coeff(0), h4.coeff(2)), (3, 14));
    }
}
