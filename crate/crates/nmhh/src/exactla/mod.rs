//! Exact linear algebra over the integers and over the coefficient rings
//! ℚ, 𝔽_p and ℤ/N.

mod field;
mod group;
mod matrix;
mod snf;
mod sparse;

pub use field::{rank_sparse, solve_sparse, Field, Fp, Rationals};
pub use group::{CoeffRing, FinAbGroup};
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, normalize_chain, smith_normal_form, SnfResult};
pub use sparse::{cochain_data_sparse, cohomology_sparse, CochainData, SparseMat};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaError {
    #[error("not a complex: d_out * d_in is nonzero")]
    NotAComplex,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring specification `{0}`")]
    InvalidRing(String),
    #[error("operation not supported over {0}")]
    UnsupportedRing(String),
}

/// Cohomology `ker(d_out) / im(d_in)` at the middle term of a complex of
/// free modules, after extending coefficients to `ring`.
///
/// `d_in` has one row per middle basis element, `d_out` one column per
/// middle basis element.
pub fn cohomology_of_pair(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
    ring: CoeffRing,
) -> Result<FinAbGroup, LaError> {
    let mid = d_in.rows();
    if d_out.cols() != mid {
        return Err(LaError::DimensionMismatch(format!(
            "d_out has {} columns but the middle term has rank {}",
            d_out.cols(),
            mid
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(LaError::NotAComplex);
    }
    Ok(group_from_pair(d_in, d_out, ring))
}

pub(crate) fn group_from_pair(d_in: &IntMatrix, d_out: &IntMatrix, ring: CoeffRing) -> FinAbGroup {
    let mid = d_in.rows();
    match ring {
        CoeffRing::PrimeField(p) => {
            let r_in = d_in.rank_mod(p);
            let r_out = d_out.rank_mod(p);
            FinAbGroup::free(mid - r_in - r_out)
        }
        _ => {
            let f_in = invariant_factors(d_in);
            let f_out = invariant_factors(d_out);
            group_from_factors(mid, &f_in, &f_out, ring)
        }
    }
}

/// Cohomology group assembled from the invariant factors of the incoming
/// and outgoing differentials.
pub(crate) fn group_from_factors(
    mid: usize,
    f_in: &[BigInt],
    f_out: &[BigInt],
    ring: CoeffRing,
) -> FinAbGroup {
    let free = mid - f_in.len() - f_out.len();
    match ring {
        CoeffRing::Integers => {
            let torsion = f_in.iter().filter(|d| !d.is_one()).cloned().collect();
            FinAbGroup::from_parts(free, torsion)
        }
        CoeffRing::Rationals => FinAbGroup::free(free),
        CoeffRing::PrimeField(p) => {
            let p = BigInt::from(p);
            let lost_in = f_in.iter().filter(|d| !(*d % &p).is_zero()).count();
            let lost_out = f_out.iter().filter(|d| !(*d % &p).is_zero()).count();
            FinAbGroup::free(mid - lost_in - lost_out)
        }
        CoeffRing::IntegersMod(n) => {
            // H ⊗ ℤ/N ⊕ Tor(H^{next}, ℤ/N), split.
            let n = BigInt::from(n);
            let mut free_rank = free;
            let mut torsion = Vec::new();
            for d in f_in.iter().chain(f_out.iter()) {
                let g = d.gcd(&n);
                if g == n {
                    free_rank += 1;
                } else if !g.is_one() {
                    torsion.push(g);
                }
            }
            FinAbGroup::from_parts(free_rank, torsion)
        }
    }
}

/// Solves `a · x = b` over `ring`.
///
/// Over ℤ the solution is integral; over 𝔽_p and ℤ/N the entries are
/// canonical residues. `None` when no solution exists.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt], ring: CoeffRing) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must match the row count");
    let snf = smith_normal_form(a);
    let (r, c) = (a.rows(), a.cols());
    // U a V = D, so a x = b iff D y = U b with x = V y.
    let ub: Vec<BigInt> = (0..r)
        .map(|i| (0..r).map(|k| snf.left_transform.get(i, k) * &b[k]).sum())
        .collect();
    let k = snf.invariant_factors.len();
    let mut y: Vec<BigRational> = vec![BigRational::zero(); c];
    match ring {
        CoeffRing::Integers | CoeffRing::Rationals => {
            if ub[k..].iter().any(|v| !v.is_zero()) {
                return None;
            }
            for i in 0..k {
                let d = &snf.invariant_factors[i];
                if ring == CoeffRing::Integers && !(&ub[i] % d).is_zero() {
                    return None;
                }
                y[i] = BigRational::new(ub[i].clone(), d.clone());
            }
        }
        CoeffRing::PrimeField(n) | CoeffRing::IntegersMod(n) => {
            let n = BigInt::from(n);
            if ub[k..].iter().any(|v| !(v % &n).is_zero()) {
                return None;
            }
            for i in 0..k {
                let d = snf.invariant_factors[i].mod_floor(&n);
                let rhs = ub[i].mod_floor(&n);
                let g = d.gcd(&n);
                if !(&rhs % &g).is_zero() {
                    return None;
                }
                let modulus = &n / &g;
                let yi = if modulus.is_one() {
                    BigInt::zero()
                } else {
                    let inv = mod_inverse(&(&d / &g), &modulus).expect("coprime after dividing by the gcd");
                    ((&rhs / &g) * inv).mod_floor(&modulus)
                };
                y[i] = BigRational::from_integer(yi);
            }
        }
    }
    let x = (0..c)
        .map(|i| {
            let s: BigRational = (0..c)
                .map(|j| BigRational::from_integer(snf.right_transform.get(i, j).clone()) * &y[j])
                .sum();
            match ring {
                CoeffRing::PrimeField(n) | CoeffRing::IntegersMod(n) => {
                    BigRational::from_integer(s.to_integer().mod_floor(&BigInt::from(n)))
                }
                _ => s,
            }
        })
        .collect();
    Some(x)
}

pub(crate) fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(n);
    if e.gcd.abs().is_one() {
        Some((e.x * e.gcd.signum()).mod_floor(n))
    } else {
        None
    }
}

pub(crate) fn to_u64(v: &BigInt) -> u64 {
    v.to_u64().expect("value fits in 64 bits")
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
