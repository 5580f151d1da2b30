//! Spectral sequences of the J-adic filtration on the coefficient bimodule:
//! E1 pages with their d1, E2 by exact linear algebra, explicit contracting
//! homotopies, cocycle generators and the collapse check against HH.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::bimod::{graded_piece, j_adic_filtration, standard_bimodule, subquotient, BimodError, Bimodule, BimoduleKind, FilteredBimodule, Label};
use crate::exactla::{cochain_data_sparse, rank_sparse, CochainData, CoeffRing, FinAbGroup, Rationals, SparseMat};
use crate::homology::{hochschild_bigraded, internal_degree, CochainModel, KoszulModel};
use crate::qma::{is_dual_word, phi_of, QuadMonomialAlgebra, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecSeqError {
    #[error("unsupported target {0}")]
    UnsupportedTarget(BimoduleKind),
    #[error(transparent)]
    Bimod(#[from] BimodError),
}

fn sgn(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Position i in [1, m] together with a dual word I.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpliceIndex {
    pub i: u8,
    pub word: Word,
}

impl fmt::Display for SpliceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.word)
    }
}

/// Dual basis words by degree, with lookup.
#[derive(Clone, Debug, Default)]
pub struct WordTable {
    m: usize,
    words: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
}

impl WordTable {
    pub fn new(m: usize, max_degree: usize) -> Self {
        let dual = QuadMonomialAlgebra::nm_dual(m);
        let words: Vec<Vec<Word>> = (0..=max_degree).map(|d| dual.basis_of_degree(d)).collect();
        let index = words.iter().map(|ws| ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()).collect();
        WordTable { m, words, index }
    }

    /// Words of degree `d`; empty for negative or out-of-range degrees.
    pub fn of_degree(&self, d: i64) -> &[Word] {
        if d < 0 {
            return &[];
        }
        self.words.get(d as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w.len())?.get(w).copied()
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// E1 of the J-adic spectral sequence of HH^*(N_m, target):
/// E1^{p,q} = N^!_{p+q} ⊗ Gr^p, concentrated in internal degree s = q.
#[derive(Clone, Debug)]
pub struct E1Page {
    pub m: usize,
    pub target: BimoduleKind,
    pub max_total: usize,
    pub filtration: FilteredBimodule,
    pub graded: BTreeMap<i32, Bimodule>,
    /// Basis of E1^{p,q}: word-major, then Gr^p label order.
    pub bases: BTreeMap<(i32, i32), Vec<(Word, Label)>>,
    /// d1: E1^{p,q} → E1^{p+1,q}, for p + q ≤ max_total.
    pub d1: BTreeMap<(i32, i32), SparseMat>,
    /// The same map from the connecting homomorphism of F^p/F^{p+2}.
    pub d1_connecting: BTreeMap<(i32, i32), SparseMat>,
}

impl E1Page {
    pub fn p_range(&self) -> std::ops::RangeInclusive<i32> {
        self.filtration.offset..=self.filtration.end() - 1
    }

    pub fn basis(&self, p: i32, q: i32) -> &[(Word, Label)] {
        self.bases.get(&(p, q)).map_or(&[], |v| v.as_slice())
    }

    /// Basis of E1^{p,q,s}; empty off the line s = q.
    pub fn basis_trigraded(&self, p: i32, q: i32, s: i32) -> &[(Word, Label)] {
        if s == q {
            self.basis(p, q)
        } else {
            &[]
        }
    }

    pub fn rank(&self, p: i32, q: i32) -> usize {
        self.basis(p, q).len()
    }

    /// Internal degree of each basis element, computed from multidegrees.
    pub fn internal_degrees(&self, p: i32, q: i32) -> Vec<i32> {
        self.basis(p, q)
            .iter()
            .map(|(w, l)| {
                let mut c = l.content(self.m);
                for &k in w.letters() {
                    c[k as usize - 1] -= 1;
                }
                internal_degree(&c)
            })
            .collect()
    }

    /// (p, q) positions with p + q = n that carry a basis.
    pub fn diagonal(&self, n: i32) -> Vec<(i32, i32)> {
        self.p_range().map(|p| (p, n - p)).filter(|k| self.bases.contains_key(k)).collect()
    }

    pub fn d1_agrees(&self) -> bool {
        self.d1 == self.d1_connecting
    }

    pub fn d1_vanishes(&self) -> bool {
        self.d1.values().all(|a| a.entries.is_empty())
    }

    /// Whether d1 ∘ d1 = 0 everywhere it is defined.
    pub fn is_complex(&self) -> bool {
        self.d1.iter().all(|(&(p, q), a)| match self.d1.get(&(p + 1, q)) {
            Some(b) => b.mul(a).entries.is_empty(),
            None => true,
        })
    }

    fn incoming(&self, p: i32, q: i32) -> SparseMat {
        self.d1.get(&(p - 1, q)).cloned().unwrap_or_else(|| SparseMat::new(self.rank(p, q), self.rank(p - 1, q)))
    }

    fn outgoing(&self, p: i32, q: i32) -> SparseMat {
        self.d1.get(&(p, q)).cloned().unwrap_or_else(|| SparseMat::new(self.rank(p + 1, q), self.rank(p, q)))
    }
}

pub const E1_TARGETS: [BimoduleKind; 5] =
    [BimoduleKind::N, BimoduleKind::B, BimoduleKind::BOverN, BimoduleKind::MOverN, BimoduleKind::MOverJ];

/// Expresses an ambient matrix unit in the basis of `g`. Units missing from
/// the basis are zero, except E_{1,1} in the quotients by N.
fn express(g: &Bimodule, l: Label) -> Vec<(usize, i64)> {
    if let Some(i) = g.index_of(l) {
        return vec![(i, 1)];
    }
    if l == Label::Unit(1, 1) && g.index_of(Label::Unit(2, 2)).is_some() {
        let mut v: Vec<(usize, i64)> =
            (2..=g.m as u8).filter_map(|i| g.index_of(Label::Unit(i, i)).map(|b| (b, -1))).collect();
        v.sort_unstable();
        return v;
    }
    Vec::new()
}

/// d1 on one basis element by the matrix-unit rule
/// f ⊗ E_{a,b} ↦ y_{a−1} f ⊗ E_{a−1,b} + (−1)^{|f|+1} f y_b ⊗ E_{a,b+1},
/// with I ↦ Σ_k E_{k,k+1} on both sides.
fn unit_rule(m: usize, w: &Word, l: Label) -> Vec<(Word, Label, i64)> {
    let mut out = Vec::new();
    let right_sign = sgn(w.len() as i64 + 1);
    let left = |k: u8, t: Label, out: &mut Vec<(Word, Label, i64)>| {
        let kw = w.prepend(k);
        if is_dual_word(m, kw.letters()) {
            out.push((kw, t, 1));
        }
    };
    match l {
        Label::Identity => {
            for k in 1..m as u8 {
                left(k, Label::Unit(k, k + 1), &mut out);
            }
        }
        Label::Unit(a, b) => {
            if a >= 2 {
                left(a - 1, Label::Unit(a - 1, b), &mut out);
            }
        }
    }
    let right = |k: u8, t: Label, out: &mut Vec<(Word, Label, i64)>| {
        let wk = w.append(k);
        if is_dual_word(m, wk.letters()) {
            out.push((wk, t, right_sign));
        }
    };
    match l {
        Label::Identity => {
            for k in 1..m as u8 {
                right(k, Label::Unit(k, k + 1), &mut out);
            }
        }
        Label::Unit(a, b) => {
            if (b as usize) < m {
                right(b, Label::Unit(a, b + 1), &mut out);
            }
        }
    }
    out
}

fn e1_basis(words: &WordTable, g: &Bimodule, deg: i64) -> Vec<(Word, Label)> {
    words.of_degree(deg).iter().flat_map(|w| g.labels.iter().map(move |&l| (w.clone(), l))).collect()
}

fn e1_index(words: &WordTable, g: &Bimodule, w: &Word) -> Option<usize> {
    words.position(w).map(|i| i * g.dim())
}

/// Builds E1 and d1 in total degrees `≤ max_total + 1`, with d1 from both
/// the closed rule and the connecting homomorphism.
pub fn e1_page(m: usize, target: BimoduleKind, max_total: usize) -> Result<E1Page, SpecSeqError> {
    if !E1_TARGETS.contains(&target) {
        return Err(SpecSeqError::UnsupportedTarget(target));
    }
    let module = standard_bimodule(m, target)?;
    let filtration = j_adic_filtration(&module)?;
    let words = WordTable::new(m, max_total + 1);
    let mut graded = BTreeMap::new();
    for p in filtration.offset..filtration.end() {
        graded.insert(p, graded_piece(&filtration, p)?);
    }
    let mut bases = BTreeMap::new();
    for (&p, g) in &graded {
        for n in 0..=max_total as i32 + 1 {
            let b = e1_basis(&words, g, n as i64);
            if !b.is_empty() {
                bases.insert((p, n - p), b);
            }
        }
    }
    let mut d1 = BTreeMap::new();
    let mut d1_connecting = BTreeMap::new();
    for (&p, g) in &graded {
        let Some(g_next) = graded.get(&(p + 1)) else { continue };
        let sub = subquotient(&filtration, p, p + 2)?;
        let model = KoszulModel::for_nm(&sub);
        let lift: Vec<usize> = g.labels.iter().map(|&l| sub.index_of(l).expect("label of Gr^p")).collect();
        let mut project = vec![None; sub.dim()];
        for (i, &l) in g_next.labels.iter().enumerate() {
            project[sub.index_of(l).expect("label of Gr^{p+1}")] = Some(i);
        }
        for n in 0..=max_total as i32 {
            let q = n - p;
            let src = bases.get(&(p, q)).map_or(0, |v: &Vec<(Word, Label)>| v.len());
            let tgt = bases.get(&(p + 1, q)).map_or(0, |v: &Vec<(Word, Label)>| v.len());
            if src == 0 && tgt == 0 {
                continue;
            }
            let mut closed = SparseMat::new(tgt, src);
            let mut conn = SparseMat::new(tgt, src);
            for (j, (w, l)) in bases.get(&(p, q)).into_iter().flatten().enumerate() {
                for (w2, l2, v) in unit_rule(m, w, *l) {
                    let base = e1_index(&words, g_next, &w2).expect("dual word");
                    for (b, c) in express(g_next, l2) {
                        closed.entries.push((base + b, j, v * c));
                    }
                }
                let b = lift[j % g.dim()];
                for ((w2, t), v) in model.coboundary(w.len(), &(w.clone(), b)) {
                    if let Some(i) = project[t] {
                        let base = e1_index(&words, g_next, &w2).expect("dual word");
                        conn.entries.push((base + i, j, v));
                    }
                }
            }
            d1.insert((p, q), closed.normalized());
            d1_connecting.insert((p, q), conn.normalized());
        }
    }
    Ok(E1Page { m, target, max_total, filtration, graded, bases, d1, d1_connecting })
}

/// E2 = ker d1 / im d1 per (p, q), with the integral data kept so the page
/// can be read over any ring.
#[derive(Clone, Debug)]
pub struct E2Page {
    pub m: usize,
    pub target: BimoduleKind,
    pub ring: CoeffRing,
    pub data: BTreeMap<(i32, i32), CochainData>,
    pub groups: BTreeMap<(i32, i32), FinAbGroup>,
    /// Chosen cocycle representatives, as E1 coordinate vectors.
    pub representatives: BTreeMap<(i32, i32), Vec<Vec<(usize, i64)>>>,
}

impl E2Page {
    pub fn get(&self, p: i32, q: i32) -> FinAbGroup {
        self.groups.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn rank(&self, p: i32, q: i32) -> usize {
        self.get(p, q).free_rank
    }

    /// Whether every entry is free over ℤ.
    pub fn integrally_free(&self) -> bool {
        self.data.values().all(|d| d.big_in.is_empty())
    }

    /// Nonzero (p, q) positions.
    pub fn support(&self) -> Vec<(i32, i32)> {
        self.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(&k, _)| k).collect()
    }
}

/// E2 over `ring` in total degrees `≤ page.max_total`.
pub fn e2_page(page: &E1Page, ring: CoeffRing) -> E2Page {
    let mut data = BTreeMap::new();
    let mut groups = BTreeMap::new();
    for &(p, q) in page.bases.keys() {
        if p + q > page.max_total as i32 {
            continue;
        }
        let d = cochain_data_sparse(&page.incoming(p, q), &page.outgoing(p, q));
        groups.insert((p, q), d.group(ring));
        data.insert((p, q), d);
    }
    let mut representatives = BTreeMap::new();
    if page.target == BimoduleKind::B {
        let m = page.m;
        let words = WordTable::new(m, page.max_total + 1);
        let g0 = &page.graded[&0];
        for n in 1..=page.max_total {
            let zs = z_vectors(&words, g0, n - 1);
            representatives.insert((0, n as i32), zs.into_iter().map(|(_, v)| v).collect());
        }
        let top = m as i32 - 1;
        for n in 0..=page.max_total {
            let reps: Vec<Vec<(usize, i64)>> = top_corner_basis(m, n)
                .iter()
                .filter_map(|w| words.position(w).map(|i| vec![(i, 1)]))
                .collect();
            if !reps.is_empty() {
                representatives.insert((top, n as i32 - top), reps);
            }
        }
    }
    E2Page { m: page.m, target: page.target, ring, data, groups, representatives }
}

fn identity_check(a: &SparseMat) -> bool {
    if a.rows != a.cols {
        return false;
    }
    let mut id = SparseMat::new(a.rows, a.cols);
    for i in 0..a.rows {
        id.entries.push((i, i, 1));
    }
    a.clone().normalized() == id
}

fn add(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut c = a.clone();
    c.entries.extend_from_slice(&b.entries);
    c.normalized()
}

/// A chain of free modules N^!_{p+q} ⊗ (label set) with maps built from
/// per-element rules.
struct LabelledChain<'a> {
    words: &'a WordTable,
    labels: BTreeMap<i32, Vec<Label>>,
    q: i32,
}

impl LabelledChain<'_> {
    fn dim(&self, p: i32) -> usize {
        self.labels.get(&p).map_or(0, |l| self.words.of_degree((p + self.q) as i64).len() * l.len())
    }

    fn index(&self, p: i32, w: &Word, l: Label) -> usize {
        let ls = &self.labels[&p];
        self.words.position(w).expect("dual word") * ls.len() + ls.iter().position(|&x| x == l).expect("label")
    }

    /// Matrix of `rule` from layer `from` to layer `to`.
    fn matrix(&self, from: i32, to: i32, rule: impl Fn(&Word, Label) -> Vec<(Word, Label, i64)>) -> SparseMat {
        let mut a = SparseMat::new(self.dim(to), self.dim(from));
        let Some(ls) = self.labels.get(&from) else { return a };
        for (wi, w) in self.words.of_degree((from + self.q) as i64).iter().enumerate() {
            for (li, &l) in ls.iter().enumerate() {
                for (w2, l2, v) in rule(w, l) {
                    if is_dual_word(self.words.m(), w2.letters()) {
                        a.entries.push((self.index(to, &w2, l2), wi * ls.len() + li, v));
                    }
                }
            }
        }
        a.normalized()
    }
}

fn strip_first(w: &Word, k: u8) -> Option<Word> {
    (w.first() == Some(k)).then(|| Word(w.letters()[1..].to_vec()))
}

fn strip_last(w: &Word, k: u8) -> Option<Word> {
    (w.last() == Some(k)).then(|| Word(w.letters()[..w.len() - 1].to_vec()))
}

fn mn_labels(m: usize, p: i32) -> Vec<Label> {
    // E_{i−p, i} for 1 ≤ i ≤ m + p; all E_{k,k} when p = 0
    (1..=m as i32 + p).map(|i| Label::Unit((i - p) as u8, i as u8)).collect()
}

fn mn_chain(words: &WordTable, q: i32) -> LabelledChain<'_> {
    let m = words.m();
    let labels = (-(m as i32 - 1)..=0).map(|p| (p, mn_labels(m, p))).collect();
    LabelledChain { words, labels, q }
}

/// δ^{p,q} of the M/N chain.
fn mn_delta(m: usize, p: i32, q: i32) -> impl Fn(&Word, Label) -> Vec<(Word, Label, i64)> {
    move |f, l| {
        let Label::Unit(a, i) = l else { return Vec::new() };
        let mut out = Vec::new();
        if a >= 2 {
            out.push((f.prepend(a - 1), Label::Unit(a - 1, i), 1));
        }
        if (i as usize) < m {
            out.push((f.append(i), Label::Unit(a, i + 1), sgn((p + q + 1) as i64)));
        }
        out
    }
}

/// s^{p+1,q} of the M/N chain, on C^{p+1,q}.
fn mn_homotopy(m: usize) -> impl Fn(&Word, Label) -> Vec<(Word, Label, i64)> {
    move |f, l| {
        let Label::Unit(i, j) = l else { return Vec::new() };
        if i as usize == m {
            return Vec::new();
        }
        match strip_first(f, i) {
            Some(rest) => vec![(rest, Label::Unit(i + 1, j), 1)],
            None => Vec::new(),
        }
    }
}

/// The identities δ s + s δ = id on C^{p,q} for −(m−2) ≤ p ≤ −1.
pub fn mn_homotopy_check(m: usize, q: i32) -> bool {
    let words = WordTable::new(m, (q.max(0) + 1) as usize);
    let ch = mn_chain(&words, q);
    let lo = -(m as i32 - 1);
    (lo + 1..=-1).all(|p| {
        let d_p = ch.matrix(p, p + 1, mn_delta(m, p, q));
        let s_next = ch.matrix(p + 1, p, mn_homotopy(m));
        let s_p = ch.matrix(p, p - 1, mn_homotopy(m));
        let d_prev = ch.matrix(p - 1, p, mn_delta(m, p - 1, q));
        identity_check(&add(&d_prev.mul(&s_p), &s_next.mul(&d_p)))
    })
}

/// s^{−(m−2),q} ∘ δ^{−(m−1),q} = id.
pub fn mn_edge_identity(m: usize, q: i32) -> bool {
    let words = WordTable::new(m, (q.max(0) + 1) as usize);
    let ch = mn_chain(&words, q);
    let lo = -(m as i32 - 1);
    let d = ch.matrix(lo, lo + 1, mn_delta(m, lo, q));
    let s = ch.matrix(lo + 1, lo, mn_homotopy(m));
    identity_check(&s.mul(&d))
}

/// δ^{−1,q}(C^{−1,q}) ∩ N^!_q ⊗ R·I = 0, by rank additivity over ℚ.
/// Fails for m = 2 and even q ≥ 2, where δ(y_1^{q−1} ⊗ E_{2,1}) = y_1^q ⊗ I.
pub fn kernel_avoidance_check(m: usize, q: i32) -> bool {
    let words = WordTable::new(m, (q.max(0) + 1) as usize);
    let ch = mn_chain(&words, q);
    let d = ch.matrix(-1, 0, mn_delta(m, -1, q));
    let dim = ch.dim(0);
    let scalars = words.of_degree(q as i64);
    let mut both = d.clone();
    both.cols += scalars.len();
    for (c, w) in scalars.iter().enumerate() {
        for k in 1..=m as u8 {
            both.entries.push((ch.index(0, w, Label::Unit(k, k)), d.cols + c, 1));
        }
    }
    debug_assert_eq!(both.rows, dim);
    rank_sparse(&Rationals, &both) == rank_sparse(&Rationals, &d) + scalars.len()
}

fn b_chain(words: &WordTable, q: i32) -> LabelledChain<'_> {
    let m = words.m() as i32;
    let labels = (0..m).map(|p| (p, (1..=m - p).map(|i| Label::Unit(i as u8, (i + p) as u8)).collect())).collect();
    LabelledChain { words, labels, q }
}

/// d1^{p,q} for B by its case list.
fn b_d1(m: usize, p: i32, q: i32) -> impl Fn(&Word, Label) -> Vec<(Word, Label, i64)> {
    move |f, l| {
        let Label::Unit(i, _) = l else { return Vec::new() };
        let (i, mp) = (i as i32, m as i32 - p);
        let u = |a: i32, b: i32| Label::Unit(a as u8, b as u8);
        let sign = sgn((p + q + 1) as i64);
        if i == 1 {
            vec![(f.append((p + 1) as u8), u(1, p + 2), sign)]
        } else if i < mp {
            vec![
                (f.prepend((i - 1) as u8), u(i - 1, i + p), 1),
                (f.append((i + p) as u8), u(i, i + p + 1), sign),
            ]
        } else {
            vec![(f.prepend((mp - 1) as u8), u(mp - 1, m as i32), 1)]
        }
    }
}

/// s^{p,q} for B: E1^{p,q} → E1^{p−1,q}.
fn b_homotopy(p: i32, q: i32) -> impl Fn(&Word, Label) -> Vec<(Word, Label, i64)> {
    move |f, l| {
        let Label::Unit(i, j) = l else { return Vec::new() };
        if let Some(rest) = strip_first(f, i) {
            return vec![(rest, Label::Unit(i + 1, j), 1)];
        }
        if i == 1 {
            if let Some(init) = strip_last(f, p as u8) {
                return vec![(init, Label::Unit(1, p as u8), sgn((p + q) as i64))];
            }
        }
        Vec::new()
    }
}

/// s d + d s = id on E1^{p,q}(B) for 1 ≤ p ≤ m−2.
pub fn b_homotopy_check(m: usize, q: i32) -> bool {
    b_homotopy_defects(m, q).is_empty()
}

/// The p in [1, m−2] where s d + d s ≠ id on E1^{p,q}(B). Nonempty only at
/// (p, q) = (1, 0): there f = y_i has f_R = 1, and y_i y_{i+1} = 0 while
/// y_{i+1} ≠ 0, so one correction term survives.
pub fn b_homotopy_defects(m: usize, q: i32) -> Vec<i32> {
    let words = WordTable::new(m, (q + m as i32).max(0) as usize);
    let ch = b_chain(&words, q);
    (1..=m as i32 - 2).filter(|&p| {
        let d_p = ch.matrix(p, p + 1, b_d1(m, p, q));
        let d_prev = ch.matrix(p - 1, p, b_d1(m, p - 1, q));
        let s_p = ch.matrix(p, p - 1, b_homotopy(p, q));
        let s_next = ch.matrix(p + 1, p, b_homotopy(p + 1, q));
        !identity_check(&add(&s_next.mul(&d_p), &d_prev.mul(&s_p)))
    })
    .collect()
}

/// Whether the case-list d1 for B equals the d1 of the computed page.
pub fn b_case_list_matches(page: &E1Page, q: i32) -> bool {
    if page.target != BimoduleKind::B {
        return false;
    }
    let m = page.m;
    let words = WordTable::new(m, page.max_total + 1);
    let ch = b_chain(&words, q);
    (0..=m as i32 - 2).filter(|p| p + q >= 0 && (p + q) as usize <= page.max_total).all(|p| {
        let a = ch.matrix(p, p + 1, b_d1(m, p, q));
        // both use word-major, then E_{i,i+p} by increasing i
        page.d1.get(&(p, q)).map_or(a.entries.is_empty(), |b| *b == a)
    })
}

/// All the homotopy identities for M/N and for B at this q.
pub fn contracting_homotopy_check(m: usize, q: i32) -> bool {
    mn_homotopy_check(m, q) && mn_edge_identity(m, q) && b_homotopy_check(m, q)
}

/// z(i, I) = y_i y_I ⊗ E_{i,i} + (−1)^{q+1} y_I y_i ⊗ E_{i+1,i+1} in
/// E1^{0,q+1}(B), over all i and all dual words I of length q; the zero
/// vectors are dropped.
fn z_vectors(words: &WordTable, g0: &Bimodule, q: usize) -> Vec<(SpliceIndex, Vec<(usize, i64)>)> {
    let m = words.m();
    let mut out = Vec::new();
    for w in words.of_degree(q as i64) {
        for i in 1..m as u8 {
            let mut v = Vec::new();
            let left = w.prepend(i);
            if let (Some(x), Some(b)) = (words.position(&left), g0.index_of(Label::Unit(i, i))) {
                v.push((x * g0.dim() + b, 1));
            }
            let right = w.append(i);
            if let (Some(x), Some(b)) = (words.position(&right), g0.index_of(Label::Unit(i + 1, i + 1))) {
                v.push((x * g0.dim() + b, sgn(q as i64 + 1)));
            }
            let v = crate::bimod::merge(v);
            if !v.is_empty() {
                out.push((SpliceIndex { i, word: w.clone() }, v));
            }
        }
    }
    out
}

/// The set 𝒵(q) as E1^{0,q+1}(B) coordinate vectors.
pub fn z_generators(m: usize, q: usize) -> Vec<(SpliceIndex, Vec<(usize, i64)>)> {
    let words = WordTable::new(m, q + 1);
    let g0 = standard_bimodule(m, BimoduleKind::B).expect("m ≥ 2");
    let f = j_adic_filtration(&g0).expect("B is filtered by degree");
    let g0 = graded_piece(&f, 0).expect("Gr^0");
    z_vectors(&words, &g0, q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZReport {
    pub count: usize,
    pub all_cocycles: bool,
    pub span_rank: usize,
    pub kernel_rank: usize,
}

impl ZReport {
    pub fn spans_kernel(&self) -> bool {
        self.all_cocycles && self.span_rank == self.kernel_rank
    }
}

/// Checks 𝒵(q) against ker d1^{0,q+1}(B) over ℚ.
pub fn z_generators_check(m: usize, q: usize) -> Result<ZReport, SpecSeqError> {
    let page = e1_page(m, BimoduleKind::B, q + 1)?;
    let zs = z_generators(m, q);
    let n = page.rank(0, q as i32 + 1);
    let d = page.outgoing(0, q as i32 + 1);
    let mut span = SparseMat::new(n, zs.len());
    for (c, (_, v)) in zs.iter().enumerate() {
        for &(r, x) in v {
            span.entries.push((r, c, x));
        }
    }
    let all_cocycles = d.mul(&span).entries.is_empty();
    let kernel_rank = n - rank_sparse(&Rationals, &d);
    Ok(ZReport { count: zs.len(), all_cocycles, span_rank: rank_sparse(&Rationals, &span), kernel_rank })
}

/// Words of length q with first letter ≠ 1 and last letter ≠ m−1.
pub fn top_corner_basis(m: usize, q: usize) -> Vec<Word> {
    let dual = QuadMonomialAlgebra::nm_dual(m);
    dual.basis_of_degree(q)
        .into_iter()
        .filter(|w| w.first() != Some(1) && w.last() != Some(m as u8 - 1))
        .collect()
}

/// Σ_{k=0}^{m−1} (−1)^k (k+1) φ(q−k) + (−1)^m φ(q−m+1).
pub fn top_corner_count_formula(m: usize, q: usize) -> i64 {
    let (mi, qi) = (m as i64, q as i64);
    (0..mi).map(|k| sgn(k) * (k + 1) * phi_of(m, qi - k)).sum::<i64>() + sgn(mi) * phi_of(m, qi - mi + 1)
}

/// One (n, s) line of a collapse check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseRow {
    pub n: usize,
    pub s: i32,
    pub e2: FinAbGroup,
    pub hh: FinAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseReport {
    pub m: usize,
    pub target: BimoduleKind,
    pub ring: CoeffRing,
    pub rows: Vec<CollapseRow>,
    /// Σ_p rank E2^{p,n−p} against rank HH^n.
    pub totals: Vec<(usize, usize, usize)>,
    pub d1_vanishes: bool,
    pub pass: bool,
}

/// Compares E2^{n−s,s} with HH^{n,s} for all n ≤ max_n.
pub fn collapse_and_extension_check(
    m: usize,
    target: BimoduleKind,
    max_n: usize,
    ring: CoeffRing,
) -> Result<CollapseReport, SpecSeqError> {
    let page = e1_page(m, target, max_n)?;
    let e2 = e2_page(&page, ring);
    let module = standard_bimodule(m, target)?;
    let hh = hochschild_bigraded(m, &module, ring, max_n);
    let mut rows = Vec::new();
    let mut totals = Vec::new();
    let mut pass = true;
    for n in 0..=max_n {
        let mut e2_total = 0;
        for (p, q) in page.diagonal(n as i32) {
            let row = CollapseRow { n, s: q, e2: e2.get(p, q), hh: hh.get(n, q) };
            pass &= row.e2 == row.hh;
            e2_total += row.e2.free_rank;
            rows.push(row);
        }
        // HH entries at internal degrees E1 never reaches
        for (&(n2, s), g) in &hh.entries {
            if n2 == n && !page.bases.contains_key(&(n as i32 - s, s)) && !g.is_zero() {
                pass = false;
            }
        }
        let hh_total = hh.total(n).free_rank;
        pass &= e2_total == hh_total;
        totals.push((n, e2_total, hh_total));
    }
    Ok(CollapseReport { m, target, ring, rows, totals, d1_vanishes: page.d1_vanishes(), pass })
}

/// Σ_p (−1)^p (dim E2^{p,q}(N) − dim E2^{p,q}(B) + dim E2^{p,q}(B/N)) over
/// a field; zero when the E2 long exact sequence is exact.
pub fn les_alternating_sum(m: usize, q: i32, ring: CoeffRing) -> Result<i64, SpecSeqError> {
    let top = (q + m as i32).max(0) as usize;
    let pages: Vec<E2Page> = [BimoduleKind::N, BimoduleKind::B, BimoduleKind::BOverN]
        .into_iter()
        .map(|t| e1_page(m, t, top).map(|p| e2_page(&p, ring)))
        .collect::<Result<_, _>>()?;
    let signs = [1, -1, 1];
    let mut total = 0;
    for p in 0..=m as i32 {
        for (e2, s) in pages.iter().zip(signs) {
            total += sgn(p as i64) * s * e2.rank(p, q) as i64;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_over_n_bottom_rank() {
        for m in 3..=4 {
            let page = e1_page(m, BimoduleKind::MOverN, 6).unwrap();
            let lo = -(m as i32 - 1);
            for q in 0..=6 {
                assert_eq!(page.rank(lo, q) as i64, phi_of(m, q as i64 - m as i64 + 1));
            }
        }
    }

    #[test]
    fn b_ranks() {
        let m = 4;
        let page = e1_page(m, BimoduleKind::B, 5).unwrap();
        for p in 0..m as i32 {
            for q in -p..=5 - p {
                assert_eq!(page.rank(p, q) as i64, phi_of(m, (p + q) as i64) * (m as i64 - p as i64));
            }
        }
    }

    #[test]
    fn d1_methods_agree_small() {
        for t in E1_TARGETS {
            let page = e1_page(3, t, 4).unwrap();
            assert!(page.d1_agrees(), "{t}");
            assert!(page.is_complex(), "{t}");
        }
    }

    #[test]
    fn homotopies() {
        assert!(mn_homotopy_check(3, 2));
        assert!(b_homotopy_check(4, 3));
        assert_eq!(b_homotopy_defects(3, 0), vec![1]);
        assert!(mn_edge_identity(4, 5));
    }

    #[test]
    fn top_corner_examples() {
        assert_eq!(top_corner_basis(3, 0), vec![Word::empty()]);
        assert_eq!(top_corner_basis(3, 2), vec![Word(vec![2, 1])]);
        assert_eq!(top_corner_basis(4, 1), vec![Word(vec![2])]);
        assert_eq!(top_corner_count_formula(3, 2), 1);
    }

    #[test]
    fn z_degree_zero() {
        let zs = z_generators(4, 0);
        assert_eq!(zs.len(), 3);
        let r = z_generators_check(4, 0).unwrap();
        assert!(r.spans_kernel());
        assert_eq!(r.span_rank, 3);
    }
}
