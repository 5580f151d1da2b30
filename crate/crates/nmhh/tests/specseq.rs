use nmhh::bimod::BimoduleKind;
use nmhh::exactla::CoeffRing;
use nmhh::homology::{hh_bigraded_formula, RankTarget};
use nmhh::qma::phi_of;
use nmhh::specseq::*;

#[test]
fn d1_closed_rule_matches_connecting_map() {
    for m in 2..=4 {
        for t in E1_TARGETS {
            let page = e1_page(m, t, 6).unwrap();
            assert!(page.d1_agrees(), "m={m} {t}");
            assert!(page.is_complex(), "m={m} {t}");
        }
    }
}

#[test]
fn e1_lives_on_the_line_s_equals_q() {
    for t in E1_TARGETS {
        let page = e1_page(4, t, 5).unwrap();
        for &(p, q) in page.bases.keys() {
            assert!(page.internal_degrees(p, q).iter().all(|&s| s == q), "{t} ({p},{q})");
            assert!(page.basis_trigraded(p, q, q + 1).is_empty());
        }
        assert!(page.graded.values().all(|g| g.has_zero_actions()), "{t}");
    }
}

#[test]
fn b_case_list_is_the_page_differential() {
    for m in 3..=5 {
        let page = e1_page(m, BimoduleKind::B, 6).unwrap();
        for q in -(m as i32)..=6 {
            assert!(b_case_list_matches(&page, q), "m={m} q={q}");
        }
    }
}

#[test]
fn homotopy_identities() {
    for m in 3..=5 {
        for q in 0..=6 {
            assert!(mn_homotopy_check(m, q), "M/N m={m} q={q}");
            assert!(mn_edge_identity(m, q), "edge m={m} q={q}");
            let expected: Vec<i32> = if q == 0 { vec![1] } else { vec![] };
            assert_eq!(b_homotopy_defects(m, q), expected, "B m={m} q={q}");
        }
    }
}

#[test]
fn b_corner_defect_does_not_reach_e2() {
    for m in 3..=5 {
        let e2 = e2_page(&e1_page(m, BimoduleKind::B, 2).unwrap(), CoeffRing::Integers);
        assert!(e2.get(1, 0).is_zero());
        assert!(b_homotopy_defects(m, -1).is_empty());
    }
}

#[test]
fn kernel_avoidance() {
    for m in 3..=4 {
        for q in 0..=6 {
            assert!(kernel_avoidance_check(m, q), "m={m} q={q}");
        }
    }
    for q in 0..=6 {
        assert_eq!(kernel_avoidance_check(2, q), q % 2 == 1 || q == 0, "m=2 q={q}");
    }
}

#[test]
fn b_page_shape() {
    for m in 3..=5 {
        let max = 7;
        let e2 = e2_page(&e1_page(m, BimoduleKind::B, max).unwrap(), CoeffRing::Integers);
        assert!(e2.integrally_free());
        let top = m as i32 - 1;
        for n in 0..=max as i32 {
            for p in 1..top {
                assert!(e2.get(p, n - p).is_zero(), "m={m} p={p} n={n}");
            }
            assert_eq!(e2.rank(0, n) as i64, phi_of(m, n as i64));
            assert_eq!(e2.rank(top, n - top) as i64, top_corner_count_formula(m, n as usize));
            assert_eq!(top_corner_basis(m, n as usize).len() as i64, top_corner_count_formula(m, n as usize));
        }
    }
}

#[test]
fn n_page_support_and_ranks() {
    for m in 3..=5 {
        let max = 7;
        let e2 = e2_page(&e1_page(m, BimoduleKind::N, max).unwrap(), CoeffRing::Integers);
        assert!(e2.integrally_free());
        for (p, q) in e2.support() {
            assert!(p == 0 || p == 1 || p == m as i32 - 1, "m={m} ({p},{q})");
        }
        assert_eq!(e2.rank(1, 0), m - 1);
        for q in 1..=max as i32 - 1 {
            assert_eq!(e2.rank(1, q) as i64, (m as i64 - 2) * phi_of(m, q as i64));
            assert!(e2.get(0, q).is_zero());
        }
        for (p, q) in e2.support() {
            let n = (p + q) as usize;
            assert_eq!(e2.rank(p, q) as i64, hh_bigraded_formula(m, RankTarget::N, n, q));
        }
    }
}

#[test]
fn z_generators_span_the_kernel() {
    let r = z_generators_check(3, 1).unwrap();
    assert!(r.spans_kernel());
    assert_eq!(r.span_rank, 3);
    for m in 3..=4 {
        for q in 0..=4 {
            let r = z_generators_check(m, q).unwrap();
            assert!(r.spans_kernel(), "m={m} q={q}: {r:?}");
            assert_eq!(r.kernel_rank as i64, phi_of(m, q as i64 + 1));
        }
    }
}

#[test]
fn collapse_examples() {
    let r = collapse_and_extension_check(3, BimoduleKind::N, 6, CoeffRing::Rationals).unwrap();
    assert!(r.pass, "{r:?}");
    let f2 = CoeffRing::prime_field(2).unwrap();
    assert!(collapse_and_extension_check(4, BimoduleKind::MOverN, 5, f2).unwrap().pass);
    let r = collapse_and_extension_check(3, BimoduleKind::BOverN, 6, CoeffRing::Rationals).unwrap();
    assert!(r.pass && r.d1_vanishes);
}

#[test]
fn long_exact_sequence_balances() {
    for m in 3..=4 {
        for q in -(m as i32)..=4 {
            assert_eq!(les_alternating_sum(m, q, CoeffRing::Rationals).unwrap(), 0, "m={m} q={q}");
        }
    }
}

#[test]
fn unsupported_target() {
    assert!(e1_page(3, BimoduleKind::R, 2).is_err());
}
