//! Cup products and Gerstenhaber brackets on HH^*(N_m): explicit cocycles,
//! the canonical basis, class identification, BV checks and the m = 2 theory.

mod basis;
mod bracket;
mod class;
mod cochain;
mod context;
mod n2;
mod products;

use thiserror::Error;

use crate::bimod::BimodError;
use crate::exactla::CoeffRing;
use crate::specseq::SpecSeqError;

pub use basis::{a_basis, basis_of_degree, d_basis, dual_words, reduce_to_basis, splice_minus, splice_plus, splice_set, Reducer};
pub use bracket::{a_splice_sum, bracket_table, closed_bracket, gerstenhaber_bracket, BracketMethod, BracketTable};
pub use class::{parse_class, CohClass, Symbol};
pub use cochain::{
    circle_product, cochain_bracket, cocycle_a, cocycle_d, generator_tuple, label_mul, unit_cochain, SparseCochain, Tuple,
};
pub use context::GhContext;
pub use n2::{
    f_cochain, g_cochain, identify_n2, koszul_groups_n2, n2_bracket, n2_theory, periodic_groups, BvFamily, N2Algebra, N2Report,
};
pub use products::{
    bv_obstruction, cup, cup_vanishing_check, infinite_generation_check, BvReport, CupVanishingReport, InfiniteGenerationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GhError {
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("unsupported pair: {0}")]
    UnsupportedPair(String),
    #[error("unsupported ring {0}")]
    UnsupportedRing(CoeffRing),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree {needed} exceeds the prepared bound {built}")]
    DegreeOutOfRange { needed: usize, built: usize },
    #[error("class not in the span of the basis: {0}")]
    OutsideBasis(String),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error(transparent)]
    Bimod(#[from] BimodError),
}

pub(crate) fn sgn(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
