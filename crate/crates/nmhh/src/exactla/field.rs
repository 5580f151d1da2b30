use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::pow_mod;
use super::SparseMat;

/// Minimal field interface for sparse elimination.
pub trait Field {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

/// The prime field 𝔽_p with p < 2³¹.
#[derive(Clone, Copy, Debug)]
pub struct Fp(pub u64);

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        pow_mod(*a, self.0 - 2, self.0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a.clone()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

type Row<E> = BTreeMap<usize, E>;

fn axpy<F: Field>(f: &F, row: &mut Row<F::E>, c: &F::E, other: &Row<F::E>) {
    for (k, v) in other {
        let add = f.mul(c, v);
        let e = row.entry(*k).or_insert_with(|| f.zero());
        *e = f.add(e, &add);
        if f.is_zero(e) {
            row.remove(k);
        }
    }
}

/// Row echelon form of the augmented system `[a | rhs_1 … rhs_k]`.
/// Columns `0..a.cols` are unknowns; the right-hand sides follow.
struct Echelon<F: Field> {
    pivots: BTreeMap<usize, Row<F::E>>,
    unknowns: usize,
    inconsistent: Vec<bool>,
}

fn eliminate<F: Field>(f: &F, a: &SparseMat, rhs: &[Vec<(usize, i64)>]) -> Echelon<F> {
    let n = a.cols;
    let mut rows: Vec<Row<F::E>> = vec![Row::new(); a.rows];
    for &(r, c, v) in &a.entries {
        let e = rows[r].entry(c).or_insert_with(|| f.zero());
        *e = f.add(e, &f.from_i64(v));
    }
    for (j, b) in rhs.iter().enumerate() {
        for &(r, v) in b {
            let e = rows[r].entry(n + j).or_insert_with(|| f.zero());
            *e = f.add(e, &f.from_i64(v));
        }
    }
    for row in rows.iter_mut() {
        row.retain(|_, v| !f.is_zero(v));
    }
    rows.sort_by_key(|r| r.len());
    let mut pivots: BTreeMap<usize, Row<F::E>> = BTreeMap::new();
    let mut inconsistent = vec![false; rhs.len()];
    for mut row in rows {
        loop {
            let (lead, lv) = match row.iter().next() {
                Some((&k, v)) => (k, v.clone()),
                None => break,
            };
            if lead >= n {
                for &k in row.keys() {
                    inconsistent[k - n] = true;
                }
                break;
            }
            match pivots.get(&lead) {
                Some(p) => {
                    let c = f.neg(&f.mul(&lv, &f.inv(&p[&lead])));
                    axpy(f, &mut row, &c, p);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Echelon { pivots, unknowns: n, inconsistent }
}

/// Rank over a field of a sparse integer matrix.
pub fn rank_sparse<F: Field>(f: &F, a: &SparseMat) -> usize {
    eliminate(f, a, &[]).pivots.len()
}

/// Solves `a x = b` for each right-hand side, returning `None` for the
/// inconsistent ones. Free variables are set to zero.
pub fn solve_sparse<F: Field>(f: &F, a: &SparseMat, rhs: &[Vec<(usize, i64)>]) -> Vec<Option<Vec<F::E>>> {
    let ech = eliminate(f, a, rhs);
    let n = ech.unknowns;
    (0..rhs.len())
        .map(|j| {
            if ech.inconsistent[j] {
                return None;
            }
            let mut x = vec![f.zero(); n];
            for (&lead, row) in ech.pivots.iter().rev() {
                let mut acc = row.get(&(n + j)).cloned().unwrap_or_else(|| f.zero());
                for (&k, v) in row.range(lead + 1..n) {
                    if !f.is_zero(&x[k]) {
                        acc = f.sub(&acc, &f.mul(v, &x[k]));
                    }
                }
                x[lead] = f.mul(&acc, &f.inv(&row[&lead]));
            }
            Some(x)
        })
        .collect()
}
