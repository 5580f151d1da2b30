use nmhh::bimod::{standard_bimodule, BimoduleKind};
use nmhh::exactla::{CoeffRing, FinAbGroup};
use nmhh::homology::*;
use nmhh::qma::{phi_of, QuadMonomialAlgebra};

const TARGETS: [RankTarget; 4] = [RankTarget::MOverN, RankTarget::B, RankTarget::N, RankTarget::MOverJ];

#[test]
fn closed_forms_match_koszul_ranks() {
    for m in 3..=5 {
        let max_n = if m == 5 { 6 } else { 8 };
        for t in TARGETS {
            let coeff = standard_bimodule(m, t.kind()).unwrap();
            let table = hochschild_bigraded(m, &coeff, CoeffRing::Rationals, max_n);
            for n in 0..=max_n {
                assert_eq!(table.total(n).free_rank as i64, hh_rank_formula(m, t, n), "m={m} {t:?} n={n}");
                for s in -(m as i32)..=n as i32 {
                    assert_eq!(table.rank(n, s) as i64, hh_bigraded_formula(m, t, n, s), "m={m} {t:?} n={n} s={s}");
                }
            }
        }
    }
}

#[test]
fn trivial_coefficients_concentrated_on_diagonal() {
    for m in 2..=4 {
        let r = standard_bimodule(m, BimoduleKind::R).unwrap();
        let t = hochschild_bigraded(m, &r, CoeffRing::Integers, 6);
        for (&(n, s), g) in &t.entries {
            assert_eq!(n as i32, s);
            assert_eq!(*g, FinAbGroup::free(phi_of(m, n as i64) as usize));
        }
    }
}

#[test]
fn integral_groups_are_free_for_m_at_least_three() {
    for m in 3..=4 {
        for k in [BimoduleKind::N, BimoduleKind::MOverN, BimoduleKind::B, BimoduleKind::BOverN] {
            let c = standard_bimodule(m, k).unwrap();
            let t = hochschild_bigraded(m, &c, CoeffRing::Integers, 5);
            assert!(t.totals.values().all(|g| g.torsion.is_empty()), "m={m} {k}");
        }
    }
}

#[test]
fn m_two_even_degrees_carry_one_two_torsion() {
    let n2 = standard_bimodule(2, BimoduleKind::N).unwrap();
    let t = hochschild_bigraded(2, &n2, CoeffRing::Integers, 7);
    for n in 1..=7 {
        let expect = if n % 2 == 0 { vec![2.into()] } else { vec![] };
        assert_eq!(t.total(n).torsion, expect, "n={n}");
    }
}

#[test]
fn koszul_and_bar_models_agree() {
    let rings = [CoeffRing::Rationals, CoeffRing::PrimeField(2), CoeffRing::PrimeField(3), CoeffRing::Integers];
    for m in 2..=4 {
        for k in [BimoduleKind::N, BimoduleKind::MOverN, BimoduleKind::BOverN, BimoduleKind::R] {
            let c = standard_bimodule(m, k).unwrap();
            let kz = hochschild_data(&c, 4, Model::Koszul).unwrap();
            let bar = hochschild_data(&c, 4, Model::Bar).unwrap();
            for ring in rings {
                assert_eq!(kz.table(ring).totals, bar.table(ring).totals, "m={m} {k} {ring}");
            }
        }
    }
}

#[test]
fn resolution_is_acyclic() {
    for m in 2..=3 {
        let a = QuadMonomialAlgebra::nm_presentation(m);
        let h = koszul_resolution_homology(&a, 4, 7);
        assert!(h.iter().all(|g| g.is_zero()), "m={m}: {h:?}");
    }
}

#[test]
fn bar_budget_is_enforced() {
    let c = standard_bimodule(5, BimoduleKind::N).unwrap();
    assert!(matches!(bar_complex(&c, 8), Err(HomologyError::DimensionBudgetExceeded { .. })));
}
