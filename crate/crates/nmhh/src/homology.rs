//! Koszul and reduced bar cochain complexes computing HH^*(N_m, L), with the
//! internal grading kept throughout: every differential is assembled and
//! reduced per multidegree block.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use thiserror::Error;

use crate::bimod::{standard_bimodule, Bimodule, BimoduleKind};
use crate::exactla::{cochain_data_sparse, CochainData, CoeffRing, FinAbGroup, SparseMat};
use crate::qma::{phi_of, QuadMonomialAlgebra, Word};

/// Upper bound on the number of basis elements the bar model may allocate.
pub const BAR_BUDGET: usize = 3_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("bar complex needs {needed} basis elements, budget is {budget}")]
    DimensionBudgetExceeded { needed: usize, budget: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Koszul,
    Bar,
}

/// A cochain complex with a multigrading preserved by its differential.
pub trait CochainModel {
    type Elem: Clone + Eq + Hash + Ord;
    fn basis(&self, p: usize) -> Vec<Self::Elem>;
    /// Multidegree; the internal degree s is minus its coordinate sum.
    fn content(&self, e: &Self::Elem) -> Vec<i16>;
    fn coboundary(&self, p: usize, e: &Self::Elem) -> Vec<(Self::Elem, i64)>;
}

/// Internal degree of a multidegree.
pub fn internal_degree(content: &[i16]) -> i32 {
    -content.iter().map(|&c| c as i32).sum::<i32>()
}

/// Basis of one cochain degree, split into multidegree blocks.
#[derive(Clone, Debug)]
pub struct Terms<E> {
    pub blocks: BTreeMap<Vec<i16>, Vec<E>>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash + Ord> Terms<E> {
    pub fn new(elems: Vec<E>, content: impl Fn(&E) -> Vec<i16>) -> Self {
        let mut blocks: BTreeMap<Vec<i16>, Vec<E>> = BTreeMap::new();
        for e in elems {
            blocks.entry(content(&e)).or_default().push(e);
        }
        let mut index = HashMap::new();
        for v in blocks.values() {
            for (i, e) in v.iter().enumerate() {
                index.insert(e.clone(), i);
            }
        }
        Terms { blocks, index }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn block_len(&self, c: &[i16]) -> usize {
        self.blocks.get(c).map_or(0, |v| v.len())
    }

    pub fn local_index(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// Blockwise matrices of a multidegree-preserving map `src → tgt`.
pub fn block_maps<E: Clone + Eq + Hash + Ord>(
    src: &Terms<E>,
    tgt: &Terms<E>,
    f: impl Fn(&E) -> Vec<(E, i64)>,
) -> BTreeMap<Vec<i16>, SparseMat> {
    let mut out = BTreeMap::new();
    for (c, elems) in &src.blocks {
        let rows = tgt.block_len(c);
        let mut mat = SparseMat::new(rows, elems.len());
        for (j, e) in elems.iter().enumerate() {
            for (t, v) in f(e) {
                let i = tgt.local_index(&t).expect("image outside the target basis");
                mat.entries.push((i, j, v));
            }
        }
        out.insert(c.clone(), mat.normalized());
    }
    out
}

/// Integer data of the cohomology at `mid`, per multidegree.
pub fn block_cohomology<E: Clone + Eq + Hash + Ord>(
    prev: &Terms<E>,
    mid: &Terms<E>,
    next: &Terms<E>,
    d_in: &BTreeMap<Vec<i16>, SparseMat>,
    d_out: &BTreeMap<Vec<i16>, SparseMat>,
) -> BTreeMap<Vec<i16>, CochainData> {
    let mut out = BTreeMap::new();
    for (c, elems) in &mid.blocks {
        let a = d_in.get(c).cloned().unwrap_or_else(|| SparseMat::new(elems.len(), prev.block_len(c)));
        let b = d_out.get(c).cloned().unwrap_or_else(|| SparseMat::new(next.block_len(c), elems.len()));
        out.insert(c.clone(), cochain_data_sparse(&a, &b));
    }
    out
}

/// Koszul cochain model Hom(K̂_p(A), L) ≅ (A!_p)^* ⊗ L for a quadratic
/// monomial algebra A: basis pairs (w, b) with w a dual basis word.
pub struct KoszulModel<'a> {
    pub dual: QuadMonomialAlgebra,
    pub coeff: &'a Bimodule,
}

impl<'a> KoszulModel<'a> {
    pub fn new(alg: &QuadMonomialAlgebra, coeff: &'a Bimodule) -> Self {
        KoszulModel { dual: alg.quadratic_dual(), coeff }
    }

    pub fn for_nm(coeff: &'a Bimodule) -> Self {
        Self::new(&QuadMonomialAlgebra::nm_presentation(coeff.m), coeff)
    }
}

impl CochainModel for KoszulModel<'_> {
    type Elem = (Word, usize);

    fn basis(&self, p: usize) -> Vec<(Word, usize)> {
        let words = self.dual.basis_of_degree(p);
        words.into_iter().flat_map(|w| (0..self.coeff.dim()).map(move |b| (w.clone(), b))).collect()
    }

    fn content(&self, (w, b): &(Word, usize)) -> Vec<i16> {
        let mut c = self.coeff.content(*b);
        for &k in w.letters() {
            c[k as usize - 1] -= 1;
        }
        c
    }

    /// d(w ↦ b) = Σ_k (k·w ↦ x_k b) + (−1)^{p+1} Σ_k (w·k ↦ b x_k).
    fn coboundary(&self, p: usize, (w, b): &(Word, usize)) -> Vec<((Word, usize), i64)> {
        let dual = &self.dual;
        let mut out = Vec::new();
        let sign = if p % 2 == 1 { 1 } else { -1 };
        for k in 1..=dual.gen_count() as u8 {
            if w.first().map_or(true, |f| !dual.is_forbidden(k, f)) {
                let kw = w.prepend(k);
                for &(t, v) in self.coeff.act_left(k, *b) {
                    out.push(((kw.clone(), t), v));
                }
            }
            if w.last().map_or(true, |l| !dual.is_forbidden(l, k)) {
                let wk = w.append(k);
                for &(t, v) in self.coeff.act_right(k, *b) {
                    out.push(((wk.clone(), t), sign * v));
                }
            }
        }
        out
    }
}

/// Reduced bar cochain model Hom(N̄^{⊗p}, L): basis pairs (tuple of strictly
/// upper matrix units, label).
pub struct BarModel<'a> {
    pub coeff: &'a Bimodule,
    pub units: Vec<(u8, u8)>,
}

impl<'a> BarModel<'a> {
    pub fn new(coeff: &'a Bimodule) -> Self {
        let m = coeff.m as u8;
        let mut units: Vec<(u8, u8)> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
        units.sort_by_key(|&(i, j)| (j - i, i));
        BarModel { coeff, units }
    }

    pub fn term_dim(&self, p: usize) -> usize {
        self.units.len().pow(p as u32) * self.coeff.dim()
    }

    /// E_{i,j} · v, as the composite of generator actions.
    pub fn unit_left(&self, (i, j): (u8, u8), v: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut cur = v.to_vec();
        for k in (i..j).rev() {
            cur = self.coeff.left_combo(k, &cur);
        }
        cur
    }

    /// v · E_{i,j}.
    pub fn unit_right(&self, v: &[(usize, i64)], (i, j): (u8, u8)) -> Vec<(usize, i64)> {
        let mut cur = v.to_vec();
        for k in i..j {
            cur = self.coeff.right_combo(k, &cur);
        }
        cur
    }
}

pub type BarElem = (Vec<(u8, u8)>, usize);

impl CochainModel for BarModel<'_> {
    type Elem = BarElem;

    fn basis(&self, p: usize) -> Vec<BarElem> {
        let mut tuples: Vec<Vec<(u8, u8)>> = vec![Vec::new()];
        for _ in 0..p {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    self.units.iter().map(move |&u| {
                        let mut t2 = t.clone();
                        t2.push(u);
                        t2
                    })
                })
                .collect();
        }
        tuples.into_iter().flat_map(|t| (0..self.coeff.dim()).map(move |b| (t.clone(), b))).collect()
    }

    fn content(&self, (t, b): &BarElem) -> Vec<i16> {
        let mut c = self.coeff.content(*b);
        for &(i, j) in t {
            for k in i..j {
                c[k as usize - 1] -= 1;
            }
        }
        c
    }

    fn coboundary(&self, p: usize, (t, b): &BarElem) -> Vec<(BarElem, i64)> {
        let mut out = Vec::new();
        let unit = vec![(*b, 1)];
        for &a in &self.units {
            let mut t2 = Vec::with_capacity(p + 1);
            t2.push(a);
            t2.extend_from_slice(t);
            for (l, v) in self.unit_left(a, &unit) {
                out.push(((t2.clone(), l), v));
            }
        }
        for i in 0..p {
            let (x, y) = t[i];
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            for z in x + 1..y {
                let mut t2 = Vec::with_capacity(p + 1);
                t2.extend_from_slice(&t[..i]);
                t2.push((x, z));
                t2.push((z, y));
                t2.extend_from_slice(&t[i + 1..]);
                out.push(((t2, *b), sign));
            }
        }
        let sign = if p % 2 == 1 { 1 } else { -1 };
        for &a in &self.units {
            let mut t2 = t.clone();
            t2.push(a);
            for (l, v) in self.unit_right(&unit, a) {
                out.push(((t2.clone(), l), sign * v));
            }
        }
        out
    }
}

/// A cochain complex materialized in degrees `0..=max_degree + 1`, with
/// blockwise differentials `d[p]: C^p → C^{p+1}` for `p ≤ max_degree`.
pub struct BlockedComplex<E> {
    pub terms: Vec<Terms<E>>,
    pub d: Vec<BTreeMap<Vec<i16>, SparseMat>>,
}

impl<E: Clone + Eq + Hash + Ord> BlockedComplex<E> {
    pub fn build<M: CochainModel<Elem = E>>(model: &M, max_degree: usize) -> Self {
        let terms: Vec<Terms<E>> =
            (0..=max_degree + 1).map(|p| Terms::new(model.basis(p), |e| model.content(e))).collect();
        let d = (0..=max_degree)
            .map(|p| block_maps(&terms[p], &terms[p + 1], |e| model.coboundary(p, e)))
            .collect();
        BlockedComplex { terms, d }
    }

    pub fn max_degree(&self) -> usize {
        self.d.len() - 1
    }

    /// Integer data of H^n per multidegree, for `n ≤ max_degree`.
    pub fn cohomology_data(&self, n: usize) -> BTreeMap<Vec<i16>, CochainData> {
        let empty_terms = Terms::new(Vec::new(), |_: &E| Vec::new());
        let empty = BTreeMap::new();
        let (prev, d_in) = if n == 0 { (&empty_terms, &empty) } else { (&self.terms[n - 1], &self.d[n - 1]) };
        block_cohomology(prev, &self.terms[n], &self.terms[n + 1], d_in, &self.d[n])
    }

    /// Checks d_{p+1} d_p = 0 blockwise.
    pub fn is_complex(&self) -> bool {
        (1..self.d.len()).all(|p| {
            self.d[p - 1].iter().all(|(c, a)| match self.d[p].get(c) {
                Some(b) => b.mul(a).entries.is_empty(),
                None => true,
            })
        })
    }
}

/// The Koszul cochain complex of N_m with coefficients in `coeff`.
pub type KoszulCochainComplex = BlockedComplex<(Word, usize)>;
pub type BarCochainComplex = BlockedComplex<BarElem>;

pub fn koszul_complex(coeff: &Bimodule, max_degree: usize) -> KoszulCochainComplex {
    BlockedComplex::build(&KoszulModel::for_nm(coeff), max_degree)
}

pub fn bar_complex(coeff: &Bimodule, max_degree: usize) -> Result<BarCochainComplex, HomologyError> {
    let model = BarModel::new(coeff);
    let needed: usize = (0..=max_degree + 1).map(|p| model.term_dim(p)).sum();
    if needed > BAR_BUDGET {
        return Err(HomologyError::DimensionBudgetExceeded { needed, budget: BAR_BUDGET });
    }
    Ok(BlockedComplex::build(&model, max_degree))
}

/// Integer cohomology data per (n, s), from which the table over any ring follows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedData {
    pub entries: BTreeMap<(usize, i32), CochainData>,
    pub max_n: usize,
}

impl BigradedData {
    pub fn from_complex<E: Clone + Eq + Hash + Ord>(cx: &BlockedComplex<E>) -> Self {
        let mut entries: BTreeMap<(usize, i32), CochainData> = BTreeMap::new();
        for n in 0..=cx.max_degree() {
            for (c, data) in cx.cohomology_data(n) {
                entries.entry((n, internal_degree(&c))).or_default().absorb(data);
            }
        }
        BigradedData { entries, max_n: cx.max_degree() }
    }

    pub fn table(&self, ring: CoeffRing) -> BigradedTable {
        let mut entries = BTreeMap::new();
        let mut totals: BTreeMap<usize, FinAbGroup> = (0..=self.max_n).map(|n| (n, FinAbGroup::zero())).collect();
        for (&(n, s), data) in &self.entries {
            let g = data.group(ring);
            if !g.is_zero() {
                totals.insert(n, totals[&n].direct_sum(&g));
                entries.insert((n, s), g);
            }
        }
        BigradedTable { entries, totals }
    }
}

/// HH^{n,s} and the totals HH^n; only nonzero (n, s) entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedTable {
    pub entries: BTreeMap<(usize, i32), FinAbGroup>,
    pub totals: BTreeMap<usize, FinAbGroup>,
}

impl BigradedTable {
    pub fn get(&self, n: usize, s: i32) -> FinAbGroup {
        self.entries.get(&(n, s)).cloned().unwrap_or_default()
    }

    pub fn total(&self, n: usize) -> FinAbGroup {
        self.totals.get(&n).cloned().unwrap_or_default()
    }

    pub fn rank(&self, n: usize, s: i32) -> usize {
        self.get(n, s).free_rank
    }

    /// Nonzero (n, s) positions.
    pub fn support(&self) -> Vec<(usize, i32)> {
        self.entries.keys().copied().collect()
    }
}

/// Integer bigraded data of HH^*(N_m, coeff) in degrees `0..=max_n`.
pub fn hochschild_data(coeff: &Bimodule, max_n: usize, model: Model) -> Result<BigradedData, HomologyError> {
    Ok(match model {
        Model::Koszul => BigradedData::from_complex(&koszul_complex(coeff, max_n)),
        Model::Bar => BigradedData::from_complex(&bar_complex(coeff, max_n)?),
    })
}

/// HH^n(N_m, coeff) over `ring`.
pub fn hochschild(m: usize, coeff: &Bimodule, ring: CoeffRing, n: usize, model: Model) -> Result<FinAbGroup, HomologyError> {
    assert_eq!(m, coeff.m, "bimodule size differs from m");
    Ok(hochschild_data(coeff, n, model)?.table(ring).total(n))
}

/// The full (n, s) table of HH^*(N_m, coeff) for `n ≤ max_n`, Koszul model.
pub fn hochschild_bigraded(m: usize, coeff: &Bimodule, ring: CoeffRing, max_n: usize) -> BigradedTable {
    assert_eq!(m, coeff.m, "bimodule size differs from m");
    BigradedData::from_complex(&koszul_complex(coeff, max_n)).table(ring)
}

/// Homology of the two-sided Koszul complex K̂(A) in degrees `1..=max_degree`
/// over ℤ, restricted to total word length at most `max_len`; every
/// multidegree block is complete, so the answer is exact on that range.
pub fn koszul_resolution_homology(alg: &QuadMonomialAlgebra, max_degree: usize, max_len: usize) -> Vec<FinAbGroup> {
    let dual = alg.quadratic_dual();
    let n = alg.gen_count();
    let alg_words: Vec<Vec<Word>> = (0..=max_len).map(|d| alg.basis_of_degree(d)).collect();
    type Elem = (Word, Word, Word);
    let content = |(u, w, v): &Elem| -> Vec<i16> {
        let mut c = vec![0i16; n];
        for &k in u.letters().iter().chain(w.letters()).chain(v.letters()) {
            c[k as usize - 1] += 1;
        }
        c
    };
    let terms: Vec<Terms<Elem>> = (0..=max_degree + 1)
        .map(|p| {
            let mut elems = Vec::new();
            if p <= max_len {
                for w in dual.basis_of_degree(p) {
                    for a in 0..=max_len - p {
                        for b in 0..=max_len - p - a {
                            for u in &alg_words[a] {
                                for v in &alg_words[b] {
                                    elems.push((u.clone(), w.clone(), v.clone()));
                                }
                            }
                        }
                    }
                }
            }
            Terms::new(elems, content)
        })
        .collect();
    // ∂(u⊗w⊗v) = u·x_{w_1} ⊗ w' ⊗ v + (−1)^p u ⊗ w'' ⊗ x_{w_p}·v
    let boundary = |p: usize, (u, w, v): &Elem| -> Vec<(Elem, i64)> {
        let mut out = Vec::new();
        let l = w.letters();
        if let Some(u2) = alg.multiply_words(u, &Word(vec![l[0]])) {
            out.push(((u2, Word(l[1..].to_vec()), v.clone()), 1));
        }
        if let Some(v2) = alg.multiply_words(&Word(vec![l[p - 1]]), v) {
            out.push(((u.clone(), Word(l[..p - 1].to_vec()), v2), if p % 2 == 0 { 1 } else { -1 }));
        }
        out
    };
    let d: Vec<BTreeMap<Vec<i16>, SparseMat>> =
        (1..=max_degree + 1).map(|p| block_maps(&terms[p], &terms[p - 1], |e| boundary(p, e))).collect();
    (1..=max_degree)
        .map(|i| {
            // homology at K_i: incoming ∂_{i+1} = d[i], outgoing ∂_i = d[i−1]
            let data = block_cohomology(&terms[i + 1], &terms[i], &terms[i - 1], &d[i], &d[i - 1]);
            let mut total = CochainData::default();
            for (c, x) in data {
                // blocks at the length boundary are truncated
                if c.iter().map(|&v| v as usize).sum::<usize>() < max_len {
                    total.absorb(x);
                }
            }
            total.group(CoeffRing::Integers)
        })
        .collect()
}

/// Σ_r (−1)^r rank of the bar term C̄^{r,d}(N_m, R); equals (−1)^d φ(d).
pub fn bar_euler_characteristic(m: usize, d: usize) -> i64 {
    let r = standard_bimodule(m, BimoduleKind::R).expect("m ≥ 2");
    let model = BarModel::new(&r);
    // count tuples of unit degrees a_1 + … + a_r = d, weighted by Π (m − a_i)
    let mut total = 0i64;
    let mut ways = vec![vec![0i64; d + 1]; d + 1];
    ways[0][0] = 1;
    for k in 1..=d {
        for s in 0..=d {
            for a in 1..m.min(s + 1) {
                ways[k][s] += ways[k - 1][s - a] * (m - a) as i64;
            }
        }
    }
    for (k, row) in ways.iter().enumerate() {
        total += if k % 2 == 0 { row[d] } else { -row[d] };
    }
    debug_assert_eq!(model.units.len(), m * (m - 1) / 2);
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankTarget {
    MOverN,
    B,
    N,
    MOverJ,
    BOverN,
    R,
}

impl RankTarget {
    pub fn kind(&self) -> BimoduleKind {
        match self {
            RankTarget::MOverN => BimoduleKind::MOverN,
            RankTarget::B => BimoduleKind::B,
            RankTarget::N => BimoduleKind::N,
            RankTarget::MOverJ => BimoduleKind::MOverJ,
            RankTarget::BOverN => BimoduleKind::BOverN,
            RankTarget::R => BimoduleKind::R,
        }
    }
}

fn sgn(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Closed-form rank of HH^n(N_m, target), from φ alone.
pub fn hh_rank_formula(m: usize, target: RankTarget, n: usize) -> i64 {
    let mi = m as i64;
    let ni = n as i64;
    let phi = |q: i64| phi_of(m, q);
    match target {
        RankTarget::MOverN => (mi - 1) * phi(ni) + (1..mi).map(|k| sgn(mi + k) * k * phi(ni - mi + k)).sum::<i64>(),
        RankTarget::B => {
            2 * phi(ni)
                + sgn(mi - 1) * (mi - 1) * phi(ni - mi + 1)
                + (1..=mi - 2).map(|k| sgn(k) * (k + 1) * phi(ni - k)).sum::<i64>()
        }
        RankTarget::N => match n {
            0 => 2,
            1 => 2 * mi - 4,
            _ => {
                phi(ni) + (mi - 4) * phi(ni - 1)
                    + sgn(mi) * phi(ni - mi + 1)
                    + (2..mi).map(|k| sgn(k) * (k + 1) * phi(ni - k)).sum::<i64>()
            }
        },
        RankTarget::MOverJ => {
            if n == 0 {
                mi
            } else {
                (mi - 1) * phi(ni)
            }
        }
        RankTarget::BOverN => (mi - 1) * phi(ni),
        RankTarget::R => phi(ni),
    }
}

/// Closed-form rank of HH^{n,s}(N_m, target).
pub fn hh_bigraded_formula(m: usize, target: RankTarget, n: usize, s: i32) -> i64 {
    let mi = m as i64;
    let ni = n as i64;
    let si = s as i64;
    let phi = |q: i64| phi_of(m, q);
    let top = |s: i64| sgn(mi) * phi(s) + (0..mi).map(|k| sgn(k) * (k + 1) * phi(s + mi - k - 1)).sum::<i64>();
    match target {
        RankTarget::MOverN | RankTarget::MOverJ | RankTarget::BOverN | RankTarget::R => {
            if ni == si {
                hh_rank_formula(m, target, n)
            } else {
                0
            }
        }
        RankTarget::B => {
            if ni == si {
                phi(si)
            } else if ni == si + mi - 1 {
                top(si)
            } else {
                0
            }
        }
        RankTarget::N => {
            if n == 0 && s == 0 {
                1
            } else if n == 1 && s == 0 {
                mi - 1
            } else if ni == si + 1 && s != 0 {
                (mi - 2) * phi(si)
            } else if ni == si + mi - 1 {
                top(si)
            } else {
                0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(m: usize, k: BimoduleKind) -> Bimodule {
        standard_bimodule(m, k).unwrap()
    }

    #[test]
    fn koszul_term_sizes() {
        let n3 = module(3, BimoduleKind::N);
        let cx = koszul_complex(&n3, 2);
        assert_eq!(cx.terms[1].len(), 8);
        assert!(cx.is_complex());
    }

    #[test]
    fn trivial_coefficients_have_zero_differential() {
        let r = module(4, BimoduleKind::R);
        let cx = koszul_complex(&r, 3);
        assert!(cx.d.iter().all(|b| b.values().all(|m| m.entries.is_empty())));
        let g = module(4, BimoduleKind::Gr(-2));
        let cx = koszul_complex(&g, 3);
        assert!(cx.d.iter().all(|b| b.values().all(|m| m.entries.is_empty())));
    }

    #[test]
    fn bar_term_sizes() {
        let n3 = module(3, BimoduleKind::N);
        let cx = bar_complex(&n3, 2).unwrap();
        assert_eq!(cx.terms[0].len(), 4);
        assert_eq!(cx.terms[2].len(), 36);
        assert!(cx.is_complex());
        let h0 = hochschild(3, &n3, CoeffRing::Integers, 0, Model::Bar).unwrap();
        assert_eq!(h0, FinAbGroup::free(2));
    }

    #[test]
    fn examples_of_groups() {
        let q = module(3, BimoduleKind::MOverN);
        assert_eq!(hochschild(3, &q, CoeffRing::Rationals, 2, Model::Koszul).unwrap().free_rank, 3);
        let n4 = module(4, BimoduleKind::N);
        assert_eq!(hochschild(4, &n4, CoeffRing::Rationals, 1, Model::Koszul).unwrap().free_rank, 4);
        let n2 = module(2, BimoduleKind::N);
        let t = hochschild_bigraded(2, &n2, CoeffRing::Integers, 2);
        assert_eq!(t.get(0, -1), FinAbGroup::free(1));
        assert_eq!(t.total(2), FinAbGroup::from_parts(1, vec![2.into()]));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(hh_rank_formula(3, RankTarget::N, 5), 9);
        assert_eq!(hh_rank_formula(4, RankTarget::MOverN, 0), 3);
        assert_eq!(hh_rank_formula(3, RankTarget::MOverJ, 2), 6);
    }

    #[test]
    fn euler_characteristic() {
        for m in 2..=5 {
            for d in 0..=6 {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                assert_eq!(bar_euler_characteristic(m, d), sign * phi_of(m, d as i64));
            }
        }
    }
}
