use std::collections::BTreeMap;

use crate::bimod::{standard_bimodule, BimoduleKind, Label};
use crate::exactla::CoeffRing;
use crate::homology::{BarModel, CochainModel};
use crate::qma::{is_dual_word, Word};

use super::{sgn, GhError};

/// A tuple of strictly upper matrix units, the input of a reduced bar cochain.
pub type Tuple = Vec<(u8, u8)>;

/// Finitely supported normalized bar cochain in C̄^p(N_m, N_m), written in
/// the dual basis: each term (u_1…u_p, b) is the functional u_1*⊗…⊗u_p* ⊗ b.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseCochain {
    pub m: usize,
    pub degree: usize,
    pub terms: BTreeMap<(Tuple, Label), i64>,
}

/// Product of two basis labels of N_m.
pub fn label_mul(a: Label, b: Label) -> Option<Label> {
    match (a, b) {
        (Label::Identity, x) | (x, Label::Identity) => Some(x),
        (Label::Unit(i, j), Label::Unit(k, l)) => (j == k).then_some(Label::Unit(i, l)),
    }
}

/// (E_{i1,i1+1}, …, E_{iq,iq+1}) for a word i1…iq.
pub fn generator_tuple(w: &[u8]) -> Tuple {
    w.iter().map(|&k| (k, k + 1)).collect()
}

impl SparseCochain {
    pub fn zero(m: usize, degree: usize) -> Self {
        SparseCochain { m, degree, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, t: Tuple, l: Label, c: i64) {
        debug_assert_eq!(t.len(), self.degree);
        if c == 0 {
            return;
        }
        let key = (t, l);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &SparseCochain) -> SparseCochain {
        let mut out = self.clone();
        for ((t, l), &c) in &other.terms {
            out.add_term(t.clone(), *l, c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> SparseCochain {
        let mut out = SparseCochain::zero(self.m, self.degree);
        for ((t, l), &c) in &self.terms {
            out.add_term(t.clone(), *l, c * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reduced(&self, ring: CoeffRing) -> SparseCochain {
        let mut out = SparseCochain::zero(self.m, self.degree);
        for ((t, l), &c) in &self.terms {
            out.add_term(t.clone(), *l, ring.reduce(c));
        }
        out
    }

    /// Value on a tuple of units, as a combination of labels.
    pub fn evaluate(&self, t: &[(u8, u8)]) -> BTreeMap<Label, i64> {
        let mut out = BTreeMap::new();
        for ((u, l), &c) in self.terms.range((t.to_vec(), Label::Identity)..) {
            if u.as_slice() != t {
                break;
            }
            out.insert(*l, c);
        }
        out
    }

    /// Reduced bar coboundary.
    pub fn coboundary(&self) -> SparseCochain {
        let n = standard_bimodule(self.m, BimoduleKind::N).expect("m ≥ 2");
        let bar = BarModel::new(&n);
        let mut out = SparseCochain::zero(self.m, self.degree + 1);
        for ((t, l), &c) in &self.terms {
            let b = n.index_of(*l).expect("label of N");
            for ((t2, b2), v) in bar.coboundary(self.degree, &(t.clone(), b)) {
                out.add_term(t2, n.labels[b2], c * v);
            }
        }
        out
    }

    pub fn is_cocycle(&self, ring: CoeffRing) -> bool {
        self.coboundary().reduced(ring).is_zero()
    }

    /// (f ∪ g)(a_1, …, a_{p+q}) = f(a_1, …, a_p) g(a_{p+1}, …, a_{p+q}).
    pub fn cup(&self, other: &SparseCochain) -> SparseCochain {
        let mut out = SparseCochain::zero(self.m, self.degree + other.degree);
        for ((t, l), &c) in &self.terms {
            for ((t2, l2), &c2) in &other.terms {
                if let Some(prod) = label_mul(*l, *l2) {
                    let mut t3 = t.clone();
                    t3.extend_from_slice(t2);
                    out.add_term(t3, prod, c * c2);
                }
            }
        }
        out
    }

    /// Restriction to generator tuples forming dual words: the comparison
    /// map to the Koszul cochain model.
    pub fn koszul_restriction(&self) -> BTreeMap<(Word, Label), i64> {
        let mut out = BTreeMap::new();
        for ((t, l), &c) in &self.terms {
            if t.iter().all(|&(i, j)| j == i + 1) {
                let w: Vec<u8> = t.iter().map(|&(i, _)| i).collect();
                if is_dual_word(self.m, &w) {
                    out.insert((Word(w), *l), c);
                }
            }
        }
        out
    }
}

/// x ∘ y = Σ_k (−1)^{(k−1)(|y|−1)} x(…, y(…), …), with y inserted at slot k.
/// Identity components of y's values pair to zero with the unit slots of x.
pub fn circle_product(x: &SparseCochain, y: &SparseCochain) -> SparseCochain {
    let q = y.degree as i64;
    let deg = (x.degree + y.degree).saturating_sub(1);
    let mut out = SparseCochain::zero(x.m, deg);
    if x.degree == 0 {
        return out;
    }
    for ((t, l), &c) in &x.terms {
        for (k, &u) in t.iter().enumerate() {
            let sign = sgn(k as i64 * (q - 1));
            for ((t2, l2), &c2) in &y.terms {
                if *l2 != Label::Unit(u.0, u.1) {
                    continue;
                }
                let mut t3 = Vec::with_capacity(deg);
                t3.extend_from_slice(&t[..k]);
                t3.extend_from_slice(t2);
                t3.extend_from_slice(&t[k + 1..]);
                out.add_term(t3, *l, sign * c * c2);
            }
        }
    }
    out
}

/// [x, y] = x ∘ y − (−1)^{(|x|−1)(|y|−1)} y ∘ x.
pub fn cochain_bracket(x: &SparseCochain, y: &SparseCochain) -> SparseCochain {
    let e = (x.degree as i64 - 1) * (y.degree as i64 - 1);
    let xy = circle_product(x, y);
    let yx = circle_product(y, x);
    let mut out = SparseCochain::zero(x.m, (x.degree + y.degree).saturating_sub(1));
    for ((t, l), &c) in xy.terms.iter() {
        out.add_term(t.clone(), *l, c);
    }
    for ((t, l), &c) in yx.terms.iter() {
        out.add_term(t.clone(), *l, -sgn(e) * c);
    }
    out
}

/// The unit class: the degree-0 cochain with value the identity.
pub fn unit_cochain(m: usize) -> SparseCochain {
    let mut c = SparseCochain::zero(m, 0);
    c.add_term(Vec::new(), Label::Identity, 1);
    c
}

fn check_word(m: usize, w: &Word) -> Result<(), GhError> {
    if !is_dual_word(m, w.letters()) {
        return Err(GhError::InvalidIndex(format!("{w} is not a dual word for m = {m}")));
    }
    Ok(())
}

/// Σ_{k<i} E*_{k,i} E*_I ⊗ E_{k,i} − (−1)^{|I|} Σ_{k>i} E*_I E*_{i,k} ⊗ E_{i,k}.
pub fn cocycle_a(m: usize, i: u8, word: &Word) -> Result<SparseCochain, GhError> {
    if m < 2 || i == 0 || i as usize > m {
        return Err(GhError::InvalidIndex(format!("a({i},{word}) for m = {m}")));
    }
    check_word(m, word)?;
    let q = word.len();
    let gens = generator_tuple(word.letters());
    let mut out = SparseCochain::zero(m, q + 1);
    for k in 1..i {
        let mut t = vec![(k, i)];
        t.extend_from_slice(&gens);
        out.add_term(t, Label::Unit(k, i), 1);
    }
    for k in i + 1..=m as u8 {
        let mut t = gens.clone();
        t.push((i, k));
        out.add_term(t, Label::Unit(i, k), -sgn(q as i64));
    }
    Ok(out)
}

/// E*_J ⊗ E_{1,m}.
pub fn cocycle_d(m: usize, word: &Word) -> Result<SparseCochain, GhError> {
    if m < 2 {
        return Err(GhError::InvalidIndex(format!("m = {m}")));
    }
    check_word(m, word)?;
    let mut out = SparseCochain::zero(m, word.len());
    out.add_term(generator_tuple(word.letters()), Label::Unit(1, m as u8), 1);
    Ok(out)
}
