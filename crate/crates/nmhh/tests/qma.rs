use proptest::prelude::*;

use nmhh::qma::*;

/// φ by the recursion φ(q) = Σ_{r=1}^{m−1} (−1)^{r−1} (m−r) φ(q−r), φ(0) = 1.
fn phi_oracle(m: usize, q: usize) -> i64 {
    let mut v = vec![1i64];
    for n in 1..=q {
        let s = (1..m.min(n + 1)).map(|r| if r % 2 == 1 { 1 } else { -1 } * (m - r) as i64 * v[n - r]).sum();
        v.push(s);
    }
    v[q]
}

#[test]
fn phi_methods_agree() {
    for m in 2..=6 {
        for q in 0..=12 {
            let vals: Vec<i64> = PhiMethod::ALL.iter().map(|&k| phi(m, q, k)).collect();
            assert!(vals.iter().all(|&v| v == phi_oracle(m, q as usize)), "m={m} q={q} {vals:?}");
        }
        let mi = m as i64;
        assert_eq!(phi_of(m, 2), mi * mi - 3 * mi + 3);
        assert_eq!(phi_of(m, 1), mi - 1);
        assert_eq!(phi_of(m, -1), 0);
    }
    for n in 0..=12 {
        assert_eq!(phi_of(3, n), n + 1);
    }
    assert_eq!(phi_of(4, 4), 37);
}

#[test]
fn basis_counts_are_phi() {
    for m in 2..=6 {
        let dual = QuadMonomialAlgebra::nm_dual(m);
        for q in 0..=6 {
            let basis = dual.basis_of_degree(q);
            assert_eq!(basis.len() as i64, phi_of(m, q as i64), "m={m} q={q}");
            assert!(basis.iter().all(|w| is_dual_word(m, w.letters())));
        }
    }
}

#[test]
fn dual_series_inverts_hilbert_series() {
    for m in 2..=6 {
        // coefficients of f! from word counts, not from the series code
        let counts: Vec<i64> = (0..=12).map(|q| QuadMonomialAlgebra::nm_dual(m).basis_of_degree(q.min(7)).len() as i64).collect();
        let fshriek = PolySeries::new(counts[..=7].to_vec(), 7);
        let prod = fshriek.mul(&hilbert_series(m, 7).negate_variable());
        assert_eq!(prod, PolySeries::one(7), "m={m}");
        let full = dual_hilbert_series(m, 12).mul(&hilbert_series(m, 12).negate_variable());
        assert_eq!(full, PolySeries::one(12));
    }
}

#[test]
fn h_series_examples() {
    assert_eq!(&generating_function_h(3, 5).coeffs()[..5], &[2, 2, 3, 4, 5]);
    let h4 = generating_function_h(4, 4);
    assert_eq!(h4.coeff(0), 3);
    assert_eq!(h4.coeff(2), 2 * 7);
}

#[test]
fn psi_sums_and_constraints() {
    for m in 2..=6 {
        for q in 1..=10 {
            assert_eq!(psi_vector(m, q).iter().sum::<i64>(), phi_of(m, q as i64));
            assert_eq!(phi_constrained(m, q, &[]), phi_of(m, q as i64));
        }
        assert_eq!(psi_vector(m, 1), vec![1; m - 1]);
    }
    assert_eq!(psi_vector(3, 2), vec![1, 2]);
    use LetterConstraint::*;
    assert_eq!(phi_constrained(3, 2, &[FirstNe(1), LastNe(2)]), 1);
    assert_eq!(phi_constrained(4, 0, &[FirstNe(1)]), 1);
    let alt: i64 = (0..=3).map(|r| if r % 2 == 0 { 1 } else { -1 } * phi_of(4, 3 - r)).sum();
    assert_eq!(phi_constrained(4, 3, &[FirstNe(1)]), alt);
}

#[test]
fn presentation_and_dual() {
    let d = QuadMonomialAlgebra::nm_dual(3);
    assert_eq!(d.forbidden().iter().copied().collect::<Vec<_>>(), vec![(1, 2)]);
    assert_eq!(d.basis_of_degree(2), vec![Word(vec![1, 1]), Word(vec![2, 1]), Word(vec![2, 2])]);
    assert_eq!(d.basis_of_degree(0), vec![Word::empty()]);
    assert_eq!(d.multiply_words(&Word(vec![2]), &Word(vec![1])), Some(Word(vec![2, 1])));
    assert_eq!(d.multiply_words(&Word(vec![1]), &Word(vec![2])), None);
    let free = QuadMonomialAlgebra::new(3, []).unwrap();
    assert_eq!(free.quadratic_dual().forbidden().len(), 9);
    assert!(QuadMonomialAlgebra::new(2, [(1, 3)]).is_err());
}

fn arb_algebra() -> impl Strategy<Value = QuadMonomialAlgebra> {
    (1usize..=4).prop_flat_map(|g| {
        let pairs: Vec<(u8, u8)> = (1..=g as u8).flat_map(|i| (1..=g as u8).map(move |j| (i, j))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |f| QuadMonomialAlgebra::new(g, f).unwrap())
    })
}

fn arb_word(g: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(1..=g as u8, 0..4).prop_map(Word)
}

proptest! {
    #[test]
    fn multiplication_laws((a, u, v, w) in arb_algebra().prop_flat_map(|a| {
        let g = a.gen_count();
        (Just(a), arb_word(g), arb_word(g), arb_word(g))
    })) {
        prop_assert_eq!(a.quadratic_dual().quadratic_dual(), a.clone());
        if a.is_basis_word(&u) && a.is_basis_word(&v) {
            let uv = a.multiply_words(&u, &v);
            let junction_forbidden = matches!((u.last(), v.first()), (Some(x), Some(y)) if a.is_forbidden(x, y));
            prop_assert_eq!(uv.is_none(), junction_forbidden);
            if let Some(p) = &uv {
                prop_assert_eq!(p, &u.concat(&v));
            }
            if a.is_basis_word(&w) {
                let left = uv.and_then(|p| a.multiply_words(&p, &w));
                let right = a.multiply_words(&v, &w).and_then(|p| a.multiply_words(&u, &p));
                prop_assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn basis_words_avoid_forbidden_pairs(a in arb_algebra(), d in 0usize..4) {
        let basis = a.basis_of_degree(d);
        let g = a.gen_count() as u64;
        prop_assert!(basis.iter().all(|w| w.len() == d && a.is_basis_word(w)));
        prop_assert!(basis.windows(2).all(|p| p[0] < p[1]));
        let mut all = 0;
        for code in 0..g.pow(d as u32) {
            let mut c = code;
            let letters: Vec<u8> = (0..d).map(|_| { let l = (c % g) as u8 + 1; c /= g; l }).collect();
            if letters.windows(2).all(|p| !a.is_forbidden(p[0], p[1])) {
                all += 1;
            }
        }
        prop_assert_eq!(basis.len(), all);
    }
}
