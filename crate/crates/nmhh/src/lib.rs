//! Hochschild cohomology of quadratic monomial algebras, specialized to the
//! algebra N_m of upper-triangular m×m matrices with constant diagonal.

pub mod bimod;
pub mod exactla;
pub mod ghstructure;
pub mod homology;
pub mod qma;
pub mod specseq;
