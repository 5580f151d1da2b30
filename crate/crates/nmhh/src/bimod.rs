//! Catalog of N_m-bimodules with matrix-unit bases, internal degrees,
//! generator actions and the two-sided J-adic filtration.

use std::fmt;

use thiserror::Error;

use crate::exactla::{rank_sparse, CoeffRing, Fp, IntMatrix, Rationals, SparseMat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimodError {
    #[error("layer {0} out of range")]
    InvalidLayer(i32),
    #[error("m must be at least 2, got {0}")]
    InvalidSize(usize),
    #[error("filtration layer {0} is not spanned by basis labels")]
    NotCoordinate(i32),
    #[error("unsupported ring {0}")]
    UnsupportedRing(CoeffRing),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Identity,
    Unit(u8, u8),
}

impl Label {
    /// j − i for units, 0 for the identity.
    pub fn degree(&self) -> i32 {
        match *self {
            Label::Identity => 0,
            Label::Unit(i, j) => j as i32 - i as i32,
        }
    }

    /// Multidegree in ℤ^{m−1}: E_{i,j} has c_j − c_i where c_i = e_1 + … + e_{i−1}.
    pub fn content(&self, m: usize) -> Vec<i16> {
        let mut c = vec![0i16; m - 1];
        if let Label::Unit(i, j) = *self {
            let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
            for k in lo..hi {
                c[k as usize - 1] += s;
            }
        }
        c
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Identity => write!(f, "I"),
            Label::Unit(i, j) => write!(f, "E({i},{j})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BimoduleKind {
    N,
    B,
    M,
    MOverN,
    BOverN,
    MOverJ,
    R,
    Gr(i32),
    JPow(i32),
}

impl fmt::Display for BimoduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimoduleKind::N => write!(f, "N"),
            BimoduleKind::B => write!(f, "B"),
            BimoduleKind::M => write!(f, "M"),
            BimoduleKind::MOverN => write!(f, "M/N"),
            BimoduleKind::BOverN => write!(f, "B/N"),
            BimoduleKind::MOverJ => write!(f, "M/J"),
            BimoduleKind::R => write!(f, "R"),
            BimoduleKind::Gr(p) => write!(f, "Gr{p}"),
            BimoduleKind::JPow(p) => write!(f, "J^{p}"),
        }
    }
}

impl std::str::FromStr for BimoduleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse_p = |t: &str| t.parse::<i32>().map_err(|_| format!("bad layer in `{s}`"));
        match s {
            "N" => Ok(BimoduleKind::N),
            "B" => Ok(BimoduleKind::B),
            "M" => Ok(BimoduleKind::M),
            "M/N" | "M_over_N" | "MoverN" => Ok(BimoduleKind::MOverN),
            "B/N" | "B_over_N" | "BoverN" => Ok(BimoduleKind::BOverN),
            "M/J" | "M_over_J" | "MoverJ" => Ok(BimoduleKind::MOverJ),
            "R" => Ok(BimoduleKind::R),
            _ => {
                if let Some(t) = s.strip_prefix("Gr") {
                    Ok(BimoduleKind::Gr(parse_p(t.trim_start_matches(':'))?))
                } else if let Some(t) = s.strip_prefix("J^").or_else(|| s.strip_prefix("Jpow")) {
                    Ok(BimoduleKind::JPow(parse_p(t.trim_start_matches(':'))?))
                } else {
                    Err(format!("unknown bimodule `{s}`"))
                }
            }
        }
    }
}

/// Integer combination of label indices.
pub type Combo = Vec<(usize, i64)>;

/// A finite free ℤ-module with a basis of matrix-unit labels and
/// left/right actions of the generators x_1, …, x_{m−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub m: usize,
    pub kind: BimoduleKind,
    pub labels: Vec<Label>,
    /// `left[k-1][b]` is x_k · b.
    pub left: Vec<Vec<Combo>>,
    /// `right[k-1][b]` is b · x_k.
    pub right: Vec<Vec<Combo>>,
}

impl Bimodule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self, b: usize) -> i32 {
        self.labels[b].degree()
    }

    pub fn content(&self, b: usize) -> Vec<i16> {
        self.labels[b].content(self.m)
    }

    pub fn index_of(&self, l: Label) -> Option<usize> {
        self.labels.iter().position(|&x| x == l)
    }

    pub fn act_left(&self, k: u8, b: usize) -> &Combo {
        &self.left[k as usize - 1][b]
    }

    pub fn act_right(&self, k: u8, b: usize) -> &Combo {
        &self.right[k as usize - 1][b]
    }

    pub fn has_zero_actions(&self) -> bool {
        self.left.iter().chain(self.right.iter()).all(|t| t.iter().all(|c| c.is_empty()))
    }

    /// Applies x_k on the left to a combination.
    pub fn left_combo(&self, k: u8, v: &Combo) -> Combo {
        apply(v, |b| self.act_left(k, b))
    }

    pub fn right_combo(&self, k: u8, v: &Combo) -> Combo {
        apply(v, |b| self.act_right(k, b))
    }

    /// Restriction to the labels `keep` of an action-stable quotient:
    /// coordinates outside `keep` are dropped.
    fn restrict(&self, keep: &[usize], kind: BimoduleKind) -> Bimodule {
        let mut pos = vec![usize::MAX; self.dim()];
        for (n, &b) in keep.iter().enumerate() {
            pos[b] = n;
        }
        let project = |c: &Combo| -> Combo {
            c.iter().filter(|&&(b, _)| pos[b] != usize::MAX).map(|&(b, v)| (pos[b], v)).collect()
        };
        let table = |t: &Vec<Vec<Combo>>| -> Vec<Vec<Combo>> {
            t.iter().map(|row| keep.iter().map(|&b| project(&row[b])).collect()).collect()
        };
        Bimodule {
            m: self.m,
            kind,
            labels: keep.iter().map(|&b| self.labels[b]).collect(),
            left: table(&self.left),
            right: table(&self.right),
        }
    }
}

fn apply<'a>(v: &Combo, f: impl Fn(usize) -> &'a Combo) -> Combo {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for &(b, c) in v {
        for &(t, w) in f(b) {
            out.push((t, c * w));
        }
    }
    merge(out)
}

/// Sorts by index, adds repeated entries and drops zeros.
pub fn merge(mut v: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(v.len());
    for (b, c) in v {
        match out.last_mut() {
            Some(l) if l.0 == b => l.1 += c,
            _ => out.push((b, c)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

fn units_by_degree(m: usize, keep: impl Fn(u8, u8) -> bool) -> Vec<Label> {
    let m8 = m as u8;
    let mut v: Vec<Label> = (1..=m8)
        .flat_map(|i| (1..=m8).map(move |j| Label::Unit(i, j)))
        .filter(|l| matches!(*l, Label::Unit(i, j) if keep(i, j)))
        .collect();
    v.sort_by_key(|l| match *l {
        Label::Unit(i, j) => (j as i32 - i as i32, i),
        Label::Identity => (0, 0),
    });
    v
}

/// Builds a bimodule from a label set and a rule expressing each ambient
/// matrix unit in the label basis (zero when it lies in the killed part).
fn from_ambient(m: usize, kind: BimoduleKind, labels: Vec<Label>, express: impl Fn(u8, u8) -> Combo) -> Bimodule {
    let n = m as u8 - 1;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for k in 1..=n {
        let mut lrow = Vec::new();
        let mut rrow = Vec::new();
        for &l in &labels {
            let (lv, rv) = match l {
                Label::Identity => {
                    let e = express(k, k + 1);
                    (e.clone(), e)
                }
                Label::Unit(a, b) => {
                    let lv = if a == k + 1 { express(k, b) } else { Vec::new() };
                    let rv = if b == k { express(a, k + 1) } else { Vec::new() };
                    (lv, rv)
                }
            };
            lrow.push(lv);
            rrow.push(rv);
        }
        left.push(lrow);
        right.push(rrow);
    }
    Bimodule { m, kind, labels, left, right }
}

/// A named bimodule from the catalog.
pub fn standard_bimodule(m: usize, which: BimoduleKind) -> Result<Bimodule, BimodError> {
    if m < 2 {
        return Err(BimodError::InvalidSize(m));
    }
    let m8 = m as u8;
    let simple = |labels: Vec<Label>, kind| {
        let ls = labels.clone();
        from_ambient(m, kind, labels, move |a, b| {
            ls.iter().position(|&x| x == Label::Unit(a, b)).map(|p| vec![(p, 1)]).unwrap_or_default()
        })
    };
    let quotient_by_n = |labels: Vec<Label>, kind| {
        // E_{1,1} ≡ −Σ_{i≥2} E_{i,i} modulo the identity
        let ls = labels.clone();
        from_ambient(m, kind, labels, move |a, b| {
            let pos = |l| ls.iter().position(|&x| x == l);
            if a == 1 && b == 1 {
                let mut v: Vec<(usize, i64)> = (2..=m8).filter_map(|i| pos(Label::Unit(i, i)).map(|p| (p, -1))).collect();
                v.sort_unstable();
                v
            } else {
                pos(Label::Unit(a, b)).map(|p| vec![(p, 1)]).unwrap_or_default()
            }
        })
    };
    let b = match which {
        BimoduleKind::N => {
            let mut labels = vec![Label::Identity];
            labels.extend(units_by_degree(m, |i, j| i < j));
            simple(labels, which)
        }
        BimoduleKind::B => simple(units_by_degree(m, |i, j| i <= j), which),
        BimoduleKind::M => simple(units_by_degree(m, |_, _| true), which),
        BimoduleKind::MOverJ => simple(units_by_degree(m, |i, j| i >= j), which),
        BimoduleKind::JPow(p) => {
            if p < 1 || p > m as i32 - 1 {
                return Err(BimodError::InvalidLayer(p));
            }
            simple(units_by_degree(m, |i, j| j as i32 - i as i32 >= p), which)
        }
        BimoduleKind::MOverN => quotient_by_n(units_by_degree(m, |i, j| i > j || (i == j && i >= 2)), which),
        BimoduleKind::BOverN => quotient_by_n(units_by_degree(m, |i, j| i == j && i >= 2), which),
        BimoduleKind::R => from_ambient(m, which, vec![Label::Identity], |_, _| Vec::new()),
        BimoduleKind::Gr(p) => {
            if p.abs() > m as i32 - 1 {
                return Err(BimodError::InvalidLayer(p));
            }
            let f = j_adic_filtration(&standard_bimodule(m, BimoduleKind::M)?)?;
            let mut g = graded_piece(&f, p)?;
            g.kind = which;
            g
        }
    };
    Ok(b)
}

/// Descending filtration by label subsets; `layer(p)` for `p ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredBimodule {
    pub underlying: Bimodule,
    /// Index of the first (full) layer.
    pub offset: i32,
    /// `layers[t]` is the label set of layer `offset + t`; the last is empty.
    pub layers: Vec<Vec<usize>>,
}

impl FilteredBimodule {
    pub fn layer(&self, p: i32) -> Vec<usize> {
        if p < self.offset {
            return (0..self.underlying.dim()).collect();
        }
        self.layers.get((p - self.offset) as usize).cloned().unwrap_or_default()
    }

    /// First index whose layer is zero.
    pub fn end(&self) -> i32 {
        self.offset + self.layers.len() as i32 - 1
    }
}

/// J-adic filtration Σ_{a+b=p} J^a M J^b, computed by iterated action
/// closure and reindexed so that the first layer sits at the lowest degree
/// (when that is negative).
pub fn j_adic_filtration(module: &Bimodule) -> Result<FilteredBimodule, BimodError> {
    let offset = module.labels.iter().map(|l| l.degree()).min().unwrap_or(0).min(0);
    let n = module.dim();
    let mut layers = vec![(0..n).collect::<Vec<usize>>()];
    let mut span: Vec<Combo> = (0..n).map(|b| vec![(b, 1)]).collect();
    loop {
        let mut next: Vec<Combo> = Vec::new();
        for v in &span {
            for k in 1..module.m as u8 {
                for w in [module.left_combo(k, v), module.right_combo(k, v)] {
                    if !w.is_empty() {
                        next.push(w);
                    }
                }
            }
        }
        let mut support: Vec<usize> = next.iter().flat_map(|v| v.iter().map(|e| e.0)).collect();
        support.sort_unstable();
        support.dedup();
        let mut mat = SparseMat::new(next.len(), n);
        for (r, v) in next.iter().enumerate() {
            for &(c, x) in v {
                mat.push(r, c, x);
            }
        }
        let p = offset + layers.len() as i32;
        if rank_sparse(&Rationals, &mat) != support.len() {
            return Err(BimodError::NotCoordinate(p));
        }
        let done = support.is_empty();
        layers.push(support.clone());
        if done {
            break;
        }
        span = support.iter().map(|&b| vec![(b, 1)]).collect();
    }
    Ok(FilteredBimodule { underlying: module.clone(), offset, layers })
}

/// Subquotient F^p / F^{p2} with induced actions.
pub fn subquotient(f: &FilteredBimodule, p: i32, p2: i32) -> Result<Bimodule, BimodError> {
    if p < f.offset || p > f.end() {
        return Err(BimodError::InvalidLayer(p));
    }
    let upper = f.layer(p2);
    let keep: Vec<usize> = f.layer(p).into_iter().filter(|b| !upper.contains(b)).collect();
    Ok(f.underlying.restrict(&keep, f.underlying.kind))
}

/// Gr^p = F^p / F^{p+1}.
pub fn graded_piece(f: &FilteredBimodule, p: i32) -> Result<Bimodule, BimodError> {
    subquotient(f, p, p + 1)
}

/// Dimension of {A ∈ M_m : [A, N_m] ⊆ N_m} over a field (ℤ is treated as ℚ).
pub fn normalizer_dimension(m: usize, ring: CoeffRing) -> Result<usize, BimodError> {
    if m < 2 {
        return Err(BimodError::InvalidSize(m));
    }
    // unknowns a_{r,c} at index (r−1)·m + (c−1); N_m is generated by the x_k
    let var = |r: usize, c: usize| (r - 1) * m + (c - 1);
    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
    for k in 1..m {
        // [A, E_{k,k+1}] = Σ_r a_{r,k} E_{r,k+1} − Σ_c a_{k+1,c} E_{k,c}
        let mut entry = vec![vec![Vec::<(usize, i64)>::new(); m + 1]; m + 1];
        for r in 1..=m {
            entry[r][k + 1].push((var(r, k), 1));
        }
        for c in 1..=m {
            entry[k][c].push((var(k + 1, c), -1));
        }
        for r in 1..=m {
            for c in 1..r {
                if !entry[r][c].is_empty() {
                    rows.push(entry[r][c].clone());
                }
            }
        }
        for r in 2..=m {
            let mut diff = entry[r][r].clone();
            diff.extend(entry[1][1].iter().map(|&(v, x)| (v, -x)));
            rows.push(diff);
        }
    }
    let mut mat = SparseMat::new(rows.len(), m * m);
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            mat.entries.push((r, c, v));
        }
    }
    let mat = mat.normalized();
    let rank = match ring {
        CoeffRing::Integers | CoeffRing::Rationals => rank_sparse(&Rationals, &mat),
        CoeffRing::PrimeField(p) => rank_sparse(&Fp(p), &mat),
        CoeffRing::IntegersMod(_) => return Err(BimodError::UnsupportedRing(ring)),
    };
    Ok(m * m - rank)
}

/// Zariski tangent dimension at N_m of the moduli of rank-d subalgebras:
/// dim HH¹(N_m, M_m/N_m) + m² − dim of the normalizer, all over ℚ.
pub fn tangent_dimension(m: usize) -> Result<usize, BimodError> {
    let q = standard_bimodule(m, BimoduleKind::MOverN)?;
    let hh1 = crate::homology::hochschild(m, &q, CoeffRing::Rationals, 1, crate::homology::Model::Koszul)
        .expect("Koszul model has no budget")
        .free_rank;
    Ok(hh1 + m * m - normalizer_dimension(m, CoeffRing::Rationals)?)
}

/// Dense matrix of the left (or right) action of x_k, one column per label.
pub fn action_matrix(b: &Bimodule, k: u8, left: bool) -> IntMatrix {
    let mut t = Vec::new();
    for s in 0..b.dim() {
        let img = if left { b.act_left(k, s) } else { b.act_right(k, s) };
        for &(r, v) in img {
            t.push((r, s, v));
        }
    }
    IntMatrix::from_triplets(b.dim(), b.dim(), &t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        let n3 = standard_bimodule(3, BimoduleKind::N).unwrap();
        assert_eq!(
            n3.labels,
            vec![Label::Identity, Label::Unit(1, 2), Label::Unit(2, 3), Label::Unit(1, 3)]
        );
        let r = standard_bimodule(5, BimoduleKind::R).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.has_zero_actions());
        assert_eq!(standard_bimodule(3, BimoduleKind::BOverN).unwrap().dim(), 2);
        assert!(standard_bimodule(3, BimoduleKind::Gr(3)).is_err());
    }

    #[test]
    fn quotient_rewrites_first_diagonal() {
        let q = standard_bimodule(3, BimoduleKind::MOverN).unwrap();
        let e21 = q.index_of(Label::Unit(2, 1)).unwrap();
        let e22 = q.index_of(Label::Unit(2, 2)).unwrap();
        let e33 = q.index_of(Label::Unit(3, 3)).unwrap();
        let mut expect = vec![(e22, -1), (e33, -1)];
        expect.sort_unstable();
        assert_eq!(q.act_left(1, e21), &expect);
        assert_eq!(q.act_right(1, e21), &vec![(e22, 1)]);
    }

    #[test]
    fn matrix_filtration_layers() {
        let m = 4;
        let f = j_adic_filtration(&standard_bimodule(m, BimoduleKind::M).unwrap()).unwrap();
        assert_eq!(f.offset, -(m as i32 - 1));
        for p in f.offset..=f.end() {
            let expect: Vec<usize> =
                (0..f.underlying.dim()).filter(|&b| f.underlying.degree(b) >= p).collect();
            let mut got = f.layer(p);
            got.sort_unstable();
            assert_eq!(got, expect, "layer {p}");
        }
    }

    #[test]
    fn graded_pieces_of_n() {
        let f = j_adic_filtration(&standard_bimodule(4, BimoduleKind::N).unwrap()).unwrap();
        assert_eq!(graded_piece(&f, 0).unwrap().labels, vec![Label::Identity]);
        assert_eq!(graded_piece(&f, 1).unwrap().dim(), 3);
        let fr = j_adic_filtration(&standard_bimodule(4, BimoduleKind::R).unwrap()).unwrap();
        assert_eq!(fr.end(), 1);
        assert_eq!(graded_piece(&fr, 1).unwrap().dim(), 0);
    }

    #[test]
    fn normalizer_examples() {
        assert_eq!(normalizer_dimension(3, CoeffRing::Rationals).unwrap(), 6);
        assert_eq!(normalizer_dimension(4, CoeffRing::PrimeField(5)).unwrap(), 10);
        assert_eq!(normalizer_dimension(2, CoeffRing::PrimeField(2)).unwrap(), 4);
        assert_eq!(normalizer_dimension(2, CoeffRing::Rationals).unwrap(), 3);
    }
}
