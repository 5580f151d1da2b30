use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `left · m · right = diag(invariant_factors)` padded with zeros.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
    pub left_transform: IntMatrix,
    pub right_transform: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn diagonal(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }
}

type Rows = Vec<Vec<BigInt>>;

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Position of the nonzero entry of least absolute value in the lower-right
/// block starting at `(t, t)`, scanning row-major.
fn min_abs_entry(a: &Rows, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => v.abs() < a[bi][bj].abs(),
            };
            if better {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn sub_row(a: &mut Rows, target: usize, src: usize, q: &BigInt) {
    let (s, t) = if src < target {
        let (lo, hi) = a.split_at_mut(target);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(src);
        (&hi[0], &mut lo[target])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn sub_col(a: &mut Rows, target: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        if !row[src].is_zero() {
            let v = q * &row[src];
            row[target] -= v;
        }
    }
}

fn swap_cols(a: &mut Rows, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// Full Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut a: Rows = (0..r).map(|i| m.row(i).to_vec()).collect();
    let mut u = identity_rows(r);
    let mut vt = identity_rows(c); // rows of V^T, so column operations become row operations
    let mut factors = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        vt.swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                sub_row(&mut a, i, t, &q);
                sub_row(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                sub_col(&mut a, j, t, &q);
                sub_row(&mut vt, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let mut best = (t, t);
                for i in t + 1..r {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    vt.swap(t, best.1);
                }
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    sub_row(&mut a, t, i, &minus_one);
                    sub_row(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for v in a[t].iter_mut() {
                *v = -v.clone();
            }
            for v in u[t].iter_mut() {
                *v = -v.clone();
            }
        }
        factors.push(a[t][t].clone());
        t += 1;
    }
    let right_transform = IntMatrix::from_big_rows(vt, c).transpose();
    SnfResult {
        invariant_factors: factors,
        left_transform: IntMatrix::from_big_rows(u, r),
        right_transform,
    }
}

/// Invariant factors only: a machine-integer elimination with overflow
/// detection, falling back to the arbitrary-precision algorithm.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    if let Some(rows) = m.to_i64_rows() {
        if let Some(diag) = diagonalize_i64(rows, m.cols()) {
            return normalize_chain(diag.into_iter().map(BigInt::from).collect());
        }
    }
    smith_normal_form(m).invariant_factors
}

pub(crate) fn invariant_factors_i64(rows: Vec<Vec<i64>>, cols: usize) -> Vec<BigInt> {
    match diagonalize_i64(rows.clone(), cols) {
        Some(diag) => normalize_chain(diag.into_iter().map(BigInt::from).collect()),
        None => smith_normal_form(&IntMatrix::from_rows(&rows)).invariant_factors,
    }
}

/// Reduces to a diagonal (not necessarily divisibility-chained); `None` on overflow.
fn diagonalize_i64(mut a: Vec<Vec<i64>>, c: usize) -> Option<Vec<i64>> {
    let r = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        // pivot: least absolute value, row-major
        let mut best: Option<(usize, usize, i64)> = None;
        'scan: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.map_or(true, |(_, _, b)| v.unsigned_abs() < b.unsigned_abs()) {
                    best = Some((i, j, v));
                    if v.unsigned_abs() == 1 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let v = a[i][t];
                if v == 0 {
                    continue;
                }
                let q = v / p;
                let (lo, hi) = a.split_at_mut(i);
                let src = &lo[t];
                let dst = &mut hi[0];
                for j in t..c {
                    if src[j] != 0 {
                        dst[j] = dst[j].checked_sub(q.checked_mul(src[j])?)?;
                    }
                }
                if dst[t] != 0 {
                    clean = false;
                }
            }
            // column t is now zero below the pivot when clean, so column
            // operations only touch row t
            if clean {
                for j in t + 1..c {
                    a[t][j] %= p;
                    if a[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
            let mut best = (t, t);
            for i in t + 1..r {
                if a[i][t] != 0 && a[i][t].unsigned_abs() < a[best.0][best.1].unsigned_abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..c {
                if a[t][j] != 0 && a[t][j].unsigned_abs() < a[best.0][best.1].unsigned_abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].checked_abs()?);
        t += 1;
    }
    Some(diag)
}

/// Turns a list of cyclic orders into the invariant-factor chain of their
/// direct sum (zero entries are dropped).
pub fn normalize_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.retain(|x| !x.is_zero());
    for x in d.iter_mut() {
        *x = x.abs();
    }
    let n = d.len();
    for i in 0..n {
        if d[i].is_one() {
            continue;
        }
        for j in i + 1..n {
            if d[j].is_multiple_of(&d[i]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
            if d[i].is_one() {
                break;
            }
        }
    }
    d.sort();
    d
}
