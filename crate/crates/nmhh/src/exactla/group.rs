use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{is_prime, LaError};

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    Integers,
    Rationals,
    PrimeField(u64),
    IntegersMod(u64),
}

impl CoeffRing {
    pub fn prime_field(p: u64) -> Result<Self, LaError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(LaError::NotPrime(p));
        }
        Ok(CoeffRing::PrimeField(p))
    }

    pub fn integers_mod(n: u64) -> Result<Self, LaError> {
        if n < 2 {
            return Err(LaError::InvalidRing(format!("Zmod:{n}")));
        }
        Ok(CoeffRing::IntegersMod(n))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoeffRing::Rationals | CoeffRing::PrimeField(_))
    }

    /// Characteristic; 0 for ℤ and ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffRing::Integers | CoeffRing::Rationals => 0,
            CoeffRing::PrimeField(p) | CoeffRing::IntegersMod(p) => *p,
        }
    }

    /// Reduces an integer coefficient into the ring (identity over ℤ and ℚ).
    pub fn reduce(&self, v: i64) -> i64 {
        match self {
            CoeffRing::Integers | CoeffRing::Rationals => v,
            CoeffRing::PrimeField(p) | CoeffRing::IntegersMod(p) => v.rem_euclid(*p as i64),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::PrimeField(p) => write!(f, "Fp:{p}"),
            CoeffRing::IntegersMod(n) => write!(f, "Zmod:{n}"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = LaError;

    fn from_str(s: &str) -> Result<Self, LaError> {
        let bad = || LaError::InvalidRing(s.to_string());
        match s {
            "Z" => Ok(CoeffRing::Integers),
            "Q" => Ok(CoeffRing::Rationals),
            _ => {
                let (tag, n) = s.split_once(':').ok_or_else(bad)?;
                let n: u64 = n.parse().map_err(|_| bad())?;
                match tag {
                    "Fp" => CoeffRing::prime_field(n),
                    "Zmod" => CoeffRing::integers_mod(n),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// A finitely generated module over the coefficient ring, recorded as a
/// free part plus cyclic torsion summands in divisibility order.
///
/// Over ℤ/N the free part counts summands isomorphic to ℤ/N and the
/// torsion lists the remaining cyclic summands ℤ/d with d | N, d < N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders into a divisibility chain.
    pub fn from_parts(free_rank: usize, cyclic: Vec<BigInt>) -> Self {
        let torsion = super::normalize_chain(cyclic).into_iter().filter(|d| !d.is_one()).collect();
        FinAbGroup { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        FinAbGroup::from_parts(self.free_rank + other.free_rank, t)
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(super::to_u64).collect()
    }

    /// Number of cyclic summands of order divisible by `p`, plus the free rank:
    /// the dimension after tensoring with 𝔽_p.
    pub fn dim_mod(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.free_rank + self.torsion.iter().filter(|t| t.is_multiple_of(&p)).count()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("R".to_string()),
            r => parts.push(format!("R^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("R/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl std::iter::Sum for FinAbGroup {
    fn sum<I: Iterator<Item = FinAbGroup>>(iter: I) -> Self {
        let mut free = 0;
        let mut t = Vec::new();
        for g in iter {
            free += g.free_rank;
            t.extend(g.torsion);
        }
        if t.is_empty() {
            return FinAbGroup::free(free);
        }
        FinAbGroup::from_parts(free, t)
    }
}
