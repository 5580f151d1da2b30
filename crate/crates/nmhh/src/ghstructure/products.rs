use crate::exactla::CoeffRing;
use crate::homology::{hh_bigraded_formula, hochschild_bigraded, RankTarget};
use crate::bimod::{standard_bimodule, BimoduleKind};
use crate::qma::phi_of;

use super::basis::basis_of_degree;
use super::n2::{identify_n2, n2_class_cochain, read_n2_cochain};
use super::{CohClass, GhContext, GhError, Symbol};

/// Cup product of two classes, in canonical coordinates over `ring`.
pub fn cup(m: usize, x: &CohClass, y: &CohClass, ring: CoeffRing) -> Result<CohClass, GhError> {
    if !x.terms.keys().chain(y.terms.keys()).all(|s| s.fits(m)) {
        return Err(GhError::UnsupportedPair(format!("{x} ∪ {y} for m = {m}")));
    }
    if m == 2 {
        let mut out = CohClass::zero(2);
        for xp in x.homogeneous_parts().values() {
            for yp in y.homogeneous_parts().values() {
                let z = n2_class_cochain(xp)?.cup(&n2_class_cochain(yp)?);
                out = out.add(&read_n2_cochain(&z, ring)?);
            }
        }
        return identify_n2(&out, ring);
    }
    let deg = |c: &CohClass| c.terms.keys().map(|s| s.degree()).max().unwrap_or(0);
    let ctx = GhContext::new(m, ring, (deg(x) + deg(y)).max(1))?;
    ctx.cup(x, y)
}

/// Outcome of checking that products of augmentation-ideal basis classes
/// are coboundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupVanishingReport {
    pub m: usize,
    pub ring: CoeffRing,
    pub max_total: usize,
    pub pairs_checked: usize,
    pub failures: Vec<(Symbol, Symbol)>,
}

impl CupVanishingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.pairs_checked > 0
    }
}

/// Checks x ∪ y is a coboundary for all ordered pairs of basis classes other
/// than 1 with |x| + |y| ≤ `max_total`; degree-0 classes only when
/// `include_degree_zero`.
pub fn cup_vanishing_check(ctx: &GhContext, max_total: usize, include_degree_zero: bool) -> Result<CupVanishingReport, GhError> {
    let m = ctx.m;
    let lo = if include_degree_zero { 0 } else { 1 };
    let mut symbols = Vec::new();
    for n in lo..=max_total {
        symbols.extend(basis_of_degree(m, n).into_iter().filter(|s| *s != Symbol::One));
    }
    let mut pairs_checked = 0;
    let mut failures = Vec::new();
    for x in &symbols {
        for y in &symbols {
            if x.degree() + y.degree() > max_total {
                continue;
            }
            pairs_checked += 1;
            let z = ctx.cup_cochain(&CohClass::symbol(m, x.clone()), &CohClass::symbol(m, y.clone()))?;
            if !ctx.is_coboundary(&z)? {
                failures.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(CupVanishingReport { m, ring: ctx.ring, max_total, pairs_checked, failures })
}

/// Evidence that HH^*(N_m) carries no BV operator inducing its bracket.
#[derive(Clone, Debug)]
pub struct BvReport {
    pub m: usize,
    pub ring: CoeffRing,
    pub witness: (Symbol, Symbol),
    pub witness_cup_vanishes: bool,
    pub sample: CupVanishingReport,
    pub witness_bracket: CohClass,
    pub witness_target: Symbol,
    pub witness_target_in_basis: bool,
    pub obstruction_holds: bool,
}

/// If Δ existed, [a, b] = ±Δ(a ∪ b) ∓ … would vanish whenever all cup
/// products of positive-degree classes vanish. Exhibits a nonzero bracket
/// of two classes of degree 3 together with the vanishing cups.
pub fn bv_obstruction(m: usize, ring: CoeffRing) -> Result<BvReport, GhError> {
    if m < 3 {
        return Err(GhError::UnsupportedPair(format!("the obstruction concerns m ≥ 3, got {m}")));
    }
    let sample_total = if m <= 4 { 5 } else { 4 };
    let ctx = GhContext::new(m, ring, sample_total.max(6))?;
    let x = Symbol::A(1, vec![1, 1].into());
    let y = Symbol::A(1, vec![2, 1].into());
    let target = Symbol::A(1, vec![2, 1, 1, 1].into());
    let (cx, cy) = (CohClass::symbol(m, x.clone()), CohClass::symbol(m, y.clone()));
    let witness_cup_vanishes = ctx.is_coboundary(&ctx.cup_cochain(&cx, &cy)?)? && ctx.is_coboundary(&ctx.cup_cochain(&cy, &cx)?)?;
    let sample = cup_vanishing_check(&ctx, sample_total, false)?;
    let witness_bracket = ctx.bracket_cochain(&cx, &cy)?;
    let witness_target_in_basis = basis_of_degree(m, target.degree()).contains(&target);
    let obstruction_holds = witness_cup_vanishes
        && sample.pass()
        && witness_target_in_basis
        && ring.reduce(witness_bracket.coefficient(&target)) != 0;
    Ok(BvReport {
        m,
        ring,
        witness: (x, y),
        witness_cup_vanishes,
        sample,
        witness_bracket,
        witness_target: target,
        witness_target_in_basis,
        obstruction_holds,
    })
}

/// Ranks of HH^{q+1,q} against (m − 2)φ(q), and the vanishing of products.
#[derive(Clone, Debug)]
pub struct InfiniteGenerationReport {
    pub m: usize,
    pub rows: Vec<(usize, usize, i64)>,
    pub products_vanish: bool,
}

impl InfiniteGenerationReport {
    pub fn pass(&self) -> bool {
        self.products_vanish && self.rows.iter().all(|&(_, r, e)| r as i64 == e && e > 0)
    }
}

/// For 1 ≤ q ≤ `max_q`: rank HH^{q+1,q} (computed) = (m − 2)φ(q) > 0, and all
/// products of positive-degree basis classes of total degree ≤ `product_total`
/// vanish; together no finite set generates.
pub fn infinite_generation_check(m: usize, max_q: usize, product_total: usize) -> Result<InfiniteGenerationReport, GhError> {
    let n = standard_bimodule(m, BimoduleKind::N)?;
    let table = hochschild_bigraded(m, &n, CoeffRing::Rationals, max_q + 1);
    let rows = (1..=max_q)
        .map(|q| {
            let r = table.rank(q + 1, q as i32);
            let e = (m as i64 - 2) * phi_of(m, q as i64);
            debug_assert_eq!(e, hh_bigraded_formula(m, RankTarget::N, q + 1, q as i32));
            (q, r, e)
        })
        .collect();
    let ctx = GhContext::new(m, CoeffRing::Rationals, product_total)?;
    let products_vanish = cup_vanishing_check(&ctx, product_total, false)?.pass();
    Ok(InfiniteGenerationReport { m, rows, products_vanish })
}
