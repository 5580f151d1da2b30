use std::collections::HashMap;

use num_bigint::BigInt;

use super::matrix::rank_mod_dense;
use super::snf::invariant_factors_i64;
use num_traits::One;

use super::{group_from_factors, CoeffRing, FinAbGroup, IntMatrix, LaError};

/// Sparse integer matrix as a list of `(row, col, value)` triplets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMat {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, r: usize, c: usize, v: i64) {
        debug_assert!(r < self.rows && c < self.cols);
        if v != 0 {
            self.entries.push((r, c, v));
        }
    }

    /// Merges repeated positions, drops zeros, sorts row-major.
    pub fn normalize(&mut self) {
        let mut acc: HashMap<(usize, usize), i64> = HashMap::with_capacity(self.entries.len());
        for &(r, c, v) in &self.entries {
            *acc.entry((r, c)).or_insert(0) += v;
        }
        let mut e: Vec<_> = acc.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect();
        e.sort_unstable();
        self.entries = e;
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn is_zero(&self) -> bool {
        let mut s = self.clone();
        s.normalize();
        s.entries.is_empty()
    }

    pub fn to_dense(&self) -> IntMatrix {
        IntMatrix::from_triplets(self.rows, self.cols, &self.entries)
    }

    pub fn transpose(&self) -> SparseMat {
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect(),
        }
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut out = SparseMat::new(self.rows, other.cols);
        for &(r, k, v) in &self.entries {
            for &(c, w) in &by_row[k] {
                out.entries.push((r, c, v * w));
            }
        }
        out.normalized()
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, x: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut by_col: HashMap<usize, i64> = HashMap::new();
        for &(c, v) in x {
            *by_col.entry(c).or_insert(0) += v;
        }
        let mut out: HashMap<usize, i64> = HashMap::new();
        for &(r, c, v) in &self.entries {
            if let Some(&w) = by_col.get(&c) {
                *out.entry(r).or_insert(0) += v * w;
            }
        }
        let mut o: Vec<_> = out.into_iter().filter(|&(_, v)| v != 0).collect();
        o.sort_unstable();
        o
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Cohomology at the middle of `prev --d_in--> mid --d_out--> next` for sparse
/// differentials. The complex is split into connected components of its
/// nonzero pattern and each component is solved densely.
pub fn cohomology_sparse(d_in: &SparseMat, d_out: &SparseMat, ring: CoeffRing) -> Result<FinAbGroup, LaError> {
    let mid = d_in.rows;
    if d_out.cols != mid {
        return Err(LaError::DimensionMismatch(format!(
            "d_out has {} columns but the middle term has rank {mid}",
            d_out.cols
        )));
    }
    if !d_out.mul(d_in).entries.is_empty() {
        return Err(LaError::NotAComplex);
    }
    Ok(cohomology_sparse_unchecked(d_in, d_out, ring))
}

pub(crate) fn cohomology_sparse_unchecked(d_in: &SparseMat, d_out: &SparseMat, ring: CoeffRing) -> FinAbGroup {
    match ring {
        CoeffRing::PrimeField(p) => {
            let mut total = 0;
            for_each_component(d_in, d_out, |din, prev, dout, mid| {
                let to_mod = |a: Vec<Vec<i64>>| -> Vec<Vec<u64>> {
                    a.into_iter().map(|r| r.into_iter().map(|v| v.rem_euclid(p as i64) as u64).collect()).collect()
                };
                let r_in = rank_mod_dense(&mut to_mod(din), prev, p);
                let r_out = rank_mod_dense(&mut to_mod(dout), mid, p);
                total += mid - r_in - r_out;
            });
            FinAbGroup::free(total)
        }
        _ => cochain_data_sparse(d_in, d_out).group(ring),
    }
}

/// Integer invariant-factor data of a complex at its middle term, enough
/// to recover the cohomology over every coefficient ring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CochainData {
    pub mid: usize,
    /// Number of unit invariant factors of `d_in` and `d_out`.
    pub ones_in: usize,
    pub ones_out: usize,
    /// Invariant factors greater than one.
    pub big_in: Vec<BigInt>,
    pub big_out: Vec<BigInt>,
}

impl CochainData {
    pub fn absorb(&mut self, other: CochainData) {
        self.mid += other.mid;
        self.ones_in += other.ones_in;
        self.ones_out += other.ones_out;
        self.big_in.extend(other.big_in);
        self.big_out.extend(other.big_out);
    }

    pub fn group(&self, ring: CoeffRing) -> FinAbGroup {
        let mid = self.mid - self.ones_in - self.ones_out;
        group_from_factors(mid, &self.big_in, &self.big_out, ring)
    }
}

fn split_ones(f: Vec<BigInt>) -> (usize, Vec<BigInt>) {
    let ones = f.iter().filter(|d| d.is_one()).count();
    (ones, f.into_iter().filter(|d| !d.is_one()).collect())
}

/// Componentwise integer data of a sparse complex; assumes `d_out · d_in = 0`.
pub fn cochain_data_sparse(d_in: &SparseMat, d_out: &SparseMat) -> CochainData {
    let mut data = CochainData::default();
    let isolated = for_each_component(d_in, d_out, |din, prev, dout, mid| {
        let (oi, bi) = split_ones(invariant_factors_i64(din, prev));
        let (oo, bo) = split_ones(invariant_factors_i64(dout, mid));
        data.absorb(CochainData { mid, ones_in: oi, ones_out: oo, big_in: bi, big_out: bo });
    });
    data.mid += isolated;
    data
}

/// Splits the complex into connected components of its nonzero pattern and
/// calls `f(d_in, prev, d_out, mid)` on each dense component. Returns the
/// number of middle basis elements touched by neither differential.
fn for_each_component(
    d_in: &SparseMat,
    d_out: &SparseMat,
    mut f: impl FnMut(Vec<Vec<i64>>, usize, Vec<Vec<i64>>, usize),
) -> usize {
    let (prev, mid, next) = (d_in.cols, d_in.rows, d_out.rows);
    let mut uf = UnionFind::new(prev + mid + next);
    let mut touched = vec![false; mid];
    for &(r, c, v) in &d_in.entries {
        if v != 0 {
            uf.union(prev + r, c);
            touched[r] = true;
        }
    }
    for &(r, c, v) in &d_out.entries {
        if v != 0 {
            uf.union(prev + mid + r, prev + c);
            touched[c] = true;
        }
    }
    // component root -> (prev ids, mid ids, next ids)
    let mut comps: HashMap<usize, [Vec<usize>; 3]> = HashMap::new();
    let mut isolated_mid = 0usize;
    let mut local = vec![0usize; prev + mid + next];
    for x in 0..prev + mid + next {
        let part = if x < prev { 0 } else if x < prev + mid { 1 } else { 2 };
        if part == 1 && !touched[x - prev] {
            isolated_mid += 1;
            continue;
        }
        let root = uf.find(x);
        let e = comps.entry(root).or_default();
        local[x] = e[part].len();
        e[part].push(x);
    }
    let mut in_by_comp: HashMap<usize, Vec<(usize, usize, i64)>> = HashMap::new();
    for &(r, c, v) in d_in.entries.iter().filter(|e| e.2 != 0) {
        let root = uf.find(c);
        in_by_comp.entry(root).or_default().push((local[prev + r], local[c], v));
    }
    let mut out_by_comp: HashMap<usize, Vec<(usize, usize, i64)>> = HashMap::new();
    for &(r, c, v) in d_out.entries.iter().filter(|e| e.2 != 0) {
        let root = uf.find(prev + c);
        out_by_comp.entry(root).or_default().push((local[prev + mid + r], local[prev + c], v));
    }
    let mut roots: Vec<usize> = comps.keys().copied().collect();
    roots.sort_unstable();
    for root in roots {
        let [p, m, n] = &comps[&root];
        if m.is_empty() {
            continue;
        }
        let din = dense_rows(m.len(), p.len(), in_by_comp.get(&root).map_or(&[][..], |v| v));
        let dout = dense_rows(n.len(), m.len(), out_by_comp.get(&root).map_or(&[][..], |v| v));
        f(din, p.len(), dout, m.len());
    }
    isolated_mid
}

fn dense_rows(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; cols]; rows];
    for &(r, c, v) in entries {
        a[r][c] += v;
    }
    a
}
