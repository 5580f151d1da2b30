use std::collections::BTreeMap;

use nmhh::bimod::{standard_bimodule, BimoduleKind, Label};
use nmhh::exactla::CoeffRing;
use nmhh::ghstructure::*;
use nmhh::homology::{hh_bigraded_formula, CochainModel, KoszulModel, RankTarget};
use nmhh::qma::{phi_of, Word};
use proptest::prelude::*;

const Q: CoeffRing = CoeffRing::Rationals;
const F2: CoeffRing = CoeffRing::PrimeField(2);

fn units(m: usize) -> Vec<(u8, u8)> {
    let m = m as u8;
    (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect()
}

fn all_tuples(m: usize, p: usize) -> Vec<Tuple> {
    let mut out: Vec<Tuple> = vec![Vec::new()];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|t| {
                units(m).into_iter().map(move |u| {
                    let mut t2 = t.clone();
                    t2.push(u);
                    t2
                })
            })
            .collect();
    }
    out
}

fn combo_mul(a: &BTreeMap<Label, i64>, b: &BTreeMap<Label, i64>) -> BTreeMap<Label, i64> {
    let mut out = BTreeMap::new();
    for (&x, &c) in a {
        for (&y, &d) in b {
            if let Some(z) = label_mul(x, y) {
                *out.entry(z).or_insert(0) += c * d;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn add_into(acc: &mut BTreeMap<Label, i64>, v: &BTreeMap<Label, i64>, s: i64) {
    for (&l, &c) in v {
        *acc.entry(l).or_insert(0) += s * c;
    }
    acc.retain(|_, v| *v != 0);
}

/// (df)(a_0, …, a_p) by the textbook formula.
fn coboundary_at(f: &SparseCochain, t: &[(u8, u8)]) -> BTreeMap<Label, i64> {
    let p = f.degree;
    let unit = |u: (u8, u8)| BTreeMap::from([(Label::Unit(u.0, u.1), 1)]);
    let mut acc = BTreeMap::new();
    add_into(&mut acc, &combo_mul(&unit(t[0]), &f.evaluate(&t[1..])), 1);
    for i in 0..p {
        let (a, b) = (t[i], t[i + 1]);
        if a.1 == b.0 {
            let mut t2 = t[..i].to_vec();
            t2.push((a.0, b.1));
            t2.extend_from_slice(&t[i + 2..]);
            add_into(&mut acc, &f.evaluate(&t2), if i % 2 == 0 { -1 } else { 1 });
        }
    }
    let s = if p % 2 == 0 { -1 } else { 1 };
    add_into(&mut acc, &combo_mul(&f.evaluate(&t[..p]), &unit(t[p])), s);
    acc
}

fn vanishes_everywhere(f: &SparseCochain) -> bool {
    all_tuples(f.m, f.degree + 1).iter().all(|t| coboundary_at(f, t).is_empty())
}

#[test]
fn cocycles_vanish_on_every_tuple() {
    for m in 3..=4 {
        for q in 0..=3 {
            for w in dual_words(m, q) {
                for i in 1..=m as u8 {
                    let a = cocycle_a(m, i, &w).unwrap();
                    assert!(vanishes_everywhere(&a), "a({i},{w}) m={m}");
                }
                let d = cocycle_d(m, &w).unwrap();
                assert!(vanishes_everywhere(&d), "d({w}) m={m}");
            }
        }
    }
}

#[test]
fn cocycle_examples() {
    let a = cocycle_a(4, 1, &Word::empty()).unwrap();
    let expect: BTreeMap<_, _> = (2..=4).map(|k| ((vec![(1, k)], Label::Unit(1, k)), -1)).collect();
    assert_eq!(a.terms, expect);
    assert!(cocycle_a(3, 2, &Word(vec![1])).unwrap().coboundary().is_zero());
    let d = cocycle_d(3, &Word(vec![2])).unwrap();
    assert!(d.coboundary().is_zero());
    let d0 = cocycle_d(3, &Word::empty()).unwrap();
    assert_eq!(d0.degree, 0);
    assert!(d0.coboundary().is_zero());
    assert!(matches!(cocycle_a(3, 4, &Word::empty()), Err(GhError::InvalidIndex(_))));
    assert!(matches!(cocycle_a(3, 1, &Word(vec![1, 2])), Err(GhError::InvalidIndex(_))));
}

#[test]
fn e1_projection_of_a() {
    for m in 3..=4 {
        for q in 0..=3 {
            for w in dual_words(m, q) {
                for i in 1..=m as u8 {
                    let r = cocycle_a(m, i, &w).unwrap().koszul_restriction();
                    let mut expect = BTreeMap::new();
                    if i > 1 && nmhh::qma::is_dual_word(m, w.prepend(i - 1).letters()) {
                        expect.insert((w.prepend(i - 1), Label::Unit(i - 1, i)), 1);
                    }
                    if (i as usize) < m && nmhh::qma::is_dual_word(m, w.append(i).letters()) {
                        expect.insert((w.append(i), Label::Unit(i, i + 1)), if q % 2 == 0 { -1 } else { 1 });
                    }
                    assert_eq!(r, expect, "a({i},{w})");
                }
            }
        }
    }
}

#[test]
fn basis_sizes() {
    for m in 3..=5 {
        for q in 0..=5 {
            let phi = phi_of(m, q as i64);
            assert_eq!(splice_set(m, q).len() as i64, m as i64 * phi);
            if q > 0 {
                assert_eq!(splice_minus(m, q).len() as i64, 2 * phi, "m={m} q={q}");
                assert_eq!(a_basis(m, q).len() as i64, (m as i64 - 2) * phi, "m={m} q={q}");
            } else {
                assert_eq!(a_basis(m, 0).len(), m - 1);
            }
        }
        for n in 0..=6usize {
            let s = n as i32 - (m as i32 - 1);
            let d = d_basis(m, n).len() as i64;
            let expect = hh_bigraded_formula(m, RankTarget::N, n, s);
            assert_eq!(d, expect, "d-line m={m} n={n}");
        }
    }
}

#[test]
fn reduction_rules() {
    let m = 4;
    let r = reduce_to_basis(m, &CohClass::a(m, 4, &[])).unwrap();
    let expect = CohClass::a(m, 1, &[]).add(&CohClass::a(m, 2, &[])).add(&CohClass::a(m, 3, &[])).scale(-1);
    assert_eq!(r, expect);
    // a(i,(i,J)) + (−1)^q a(i+1,(J,i)) = 0 with q = |J| + 1
    for q in 1..=4usize {
        for j in dual_words(m, q - 1) {
            for i in 1..m as u8 {
                let ij = j.prepend(i);
                if !nmhh::qma::is_dual_word(m, ij.letters()) {
                    continue;
                }
                let lhs = reduce_to_basis(m, &CohClass::symbol(m, Symbol::A(i, ij.clone()))).unwrap();
                let ji = j.append(i);
                if nmhh::qma::is_dual_word(m, ji.letters()) {
                    let sign = if q % 2 == 0 { -1 } else { 1 };
                    let rhs = reduce_to_basis(m, &CohClass::symbol(m, Symbol::A(i + 1, ji)).scale(sign)).unwrap();
                    assert_eq!(lhs, rhs, "i={i} J={j}");
                } else {
                    assert!(lhs.is_zero(), "a({i},{ij}) should vanish");
                }
            }
        }
    }
    for q in 0..=4 {
        for s in a_basis(m, q) {
            let c = CohClass::symbol(m, s);
            assert_eq!(reduce_to_basis(m, &c).unwrap(), c);
        }
    }
    assert!(reduce_to_basis(3, &CohClass::d(3, &[1])).unwrap().is_zero());
    assert!(reduce_to_basis(3, &CohClass::d(3, &[2])).unwrap().is_zero());
    assert_eq!(reduce_to_basis(3, &CohClass::d(3, &[2, 1])).unwrap(), CohClass::d(3, &[2, 1]));
}

#[test]
fn relations_agree_with_cocycle_identification() {
    for m in 3..=4 {
        let ctx = GhContext::new(m, Q, 5).unwrap();
        for q in 0..=4 {
            for (i, w) in splice_set(m, q) {
                let c = CohClass::symbol(m, Symbol::A(i, w));
                let by_cochain = ctx.identify(&ctx.representative(&c).unwrap()).unwrap();
                assert_eq!(by_cochain, ctx.reduce(&c).unwrap(), "{c}");
            }
        }
        for n in 0..=5 {
            for w in dual_words(m, n) {
                let c = CohClass::symbol(m, Symbol::D(w));
                let by_cochain = ctx.identify(&ctx.representative(&c).unwrap()).unwrap();
                assert_eq!(by_cochain, ctx.reduce(&c).unwrap(), "{c}");
            }
        }
    }
}

#[test]
fn basis_classes_are_independent() {
    let ctx = GhContext::new(3, Q, 5).unwrap();
    for n in 0..=5 {
        for s in basis_of_degree(3, n) {
            let c = CohClass::symbol(3, s);
            assert_eq!(ctx.identify(&ctx.representative(&c).unwrap()).unwrap(), c);
        }
    }
}

#[test]
fn non_cocycles_are_rejected() {
    let ctx = GhContext::new(3, Q, 3).unwrap();
    let mut z = SparseCochain::zero(3, 1);
    z.add_term(vec![(1, 2)], Label::Identity, 1);
    assert_eq!(ctx.identify(&z), Err(GhError::NotACocycle));
}

#[test]
fn circle_product_examples() {
    let mut x = SparseCochain::zero(3, 1);
    x.add_term(vec![(1, 2)], Label::Unit(1, 2), 1);
    assert_eq!(circle_product(&x, &x), x);
    let mut y = SparseCochain::zero(3, 1);
    y.add_term(vec![(2, 3)], Label::Unit(1, 3), 1);
    assert!(circle_product(&x, &y).is_zero());
    // identity values pair to zero
    assert!(circle_product(&x, &unit_cochain(3)).is_zero());
}

#[test]
fn bracket_witness_is_plus_one() {
    for m in 3..=5 {
        let x = CohClass::a(m, 1, &[1, 1]);
        let y = CohClass::a(m, 1, &[2, 1]);
        let target = CohClass::a(m, 1, &[2, 1, 1, 1]);
        for method in [BracketMethod::ClosedForm, BracketMethod::Cochain] {
            assert_eq!(gerstenhaber_bracket(m, &x, &y, method, Q).unwrap(), target, "m={m} {method}");
        }
        assert!(a_basis(m, 4).contains(&Symbol::A(1, Word(vec![2, 1, 1, 1]))));
    }
}

#[test]
fn brackets_with_unit_and_d_vanish() {
    let ctx = GhContext::new(4, Q, 5).unwrap();
    let one = CohClass::one(4);
    for n in 0..=3 {
        for s in basis_of_degree(4, n) {
            let c = CohClass::symbol(4, s);
            assert!(ctx.bracket_cochain(&one, &c).unwrap().is_zero());
            assert!(ctx.bracket_closed(&c, &one).unwrap().is_zero());
        }
    }
    for j in d_basis(4, 2) {
        for j2 in d_basis(4, 3) {
            let (a, b) = (CohClass::symbol(4, Symbol::D(j.clone())), CohClass::symbol(4, Symbol::D(j2)));
            assert!(ctx.bracket_cochain(&a, &b).unwrap().is_zero());
        }
    }
}

#[test]
fn splice_sum_terms() {
    // A(1,(1,1);1,(2,1)): the two halves cancel
    let a = a_splice_sum(3, 1, &[1, 1], 1, &[2, 1]);
    assert!(reduce_to_basis(3, &a).unwrap().is_zero());
    // with i′ = 2 only the I(i′−1) and I(i′) sums of the first half fire
    let b = a_splice_sum(4, 1, &[1, 3], 2, &[]);
    let mut expect = CohClass::zero(4);
    expect.add_term(Symbol::A(1, Word(vec![1, 3])), 1);
    assert_eq!(b, expect);
}

#[test]
fn closed_and_cochain_brackets_agree_m3() {
    for ring in [Q, F2, CoeffRing::PrimeField(3)] {
        let ctx = GhContext::new(3, ring, 6).unwrap();
        let a = bracket_table(&ctx, 4, BracketMethod::ClosedForm).unwrap();
        let b = bracket_table(&ctx, 4, BracketMethod::Cochain).unwrap();
        assert_eq!(a.entries.len(), b.entries.len());
        for (k, v) in &a.entries {
            assert!(v.equals_in(&b.entries[k], ring), "[{}, {}] {ring}", k.0, k.1);
        }
        assert!(a.antisymmetry_holds() && b.antisymmetry_holds());
    }
}

fn jacobi_sign(a: usize, b: usize) -> i64 {
    if (a as i64 - 1) * (b as i64 - 1) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn jacobi_on_classes() {
    let ctx = GhContext::new(3, Q, 8).unwrap();
    let mut symbols = Vec::new();
    for n in 0..=3 {
        symbols.extend(basis_of_degree(3, n));
    }
    let mut triples = 0;
    for x in &symbols {
        for y in &symbols {
            for z in &symbols {
                let (cx, cy, cz) = (CohClass::symbol(3, x.clone()), CohClass::symbol(3, y.clone()), CohClass::symbol(3, z.clone()));
                let br = |a: &CohClass, b: &CohClass| ctx.bracket_cochain(a, b).unwrap();
                let (dx, dy, dz) = (x.degree(), y.degree(), z.degree());
                let t1 = br(&cx, &br(&cy, &cz)).scale(jacobi_sign(dx, dz));
                let t2 = br(&cy, &br(&cz, &cx)).scale(jacobi_sign(dy, dx));
                let t3 = br(&cz, &br(&cx, &cy)).scale(jacobi_sign(dz, dy));
                assert!(t1.add(&t2).add(&t3).is_zero(), "{x} {y} {z}");
                let anti = br(&cx, &cy).add(&br(&cy, &cx).scale(jacobi_sign(dx, dy)));
                assert!(anti.is_zero());
                triples += 1;
            }
        }
    }
    assert!(triples >= 50, "{triples}");
}

#[test]
fn cup_examples() {
    let m = 3;
    let x = CohClass::a(m, 1, &[1]);
    assert_eq!(cup(m, &CohClass::one(m), &x, Q).unwrap(), x);
    assert_eq!(cup(m, &x, &CohClass::one(m), Q).unwrap(), x);
    assert!(cup(m, &CohClass::a(m, 1, &[]), &CohClass::a(m, 2, &[]), Q).unwrap().is_zero());
    let d0 = CohClass::d(m, &[]);
    assert!(cup(m, &d0, &d0, Q).unwrap().is_zero());
    let ctx = GhContext::new(m, Q, 4).unwrap();
    let z = ctx.cup_cochain(&CohClass::a(m, 1, &[]), &CohClass::a(m, 2, &[])).unwrap();
    assert!(ctx.is_coboundary(&z).unwrap());
    // the unit squared is not a coboundary
    let u = ctx.cup_cochain(&CohClass::one(m), &CohClass::one(m)).unwrap();
    assert!(!ctx.is_coboundary(&u).unwrap());
}

#[test]
fn products_vanish_small() {
    for ring in [Q, F2] {
        let ctx = GhContext::new(3, ring, 5).unwrap();
        let r = cup_vanishing_check(&ctx, 5, true).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
    }
}

#[test]
fn infinite_generation_m3() {
    let r = infinite_generation_check(3, 6, 4).unwrap();
    assert!(r.pass(), "{r:?}");
}

#[test]
fn bv_obstruction_m3() {
    let r = bv_obstruction(3, Q).unwrap();
    assert!(r.obstruction_holds);
    assert_eq!(r.witness_bracket, CohClass::a(3, 1, &[2, 1, 1, 1]));
    assert!(bv_obstruction(2, Q).is_err());
}

#[test]
fn class_grammar() {
    let c = parse_class(3, "2*a(1,[1,1]) - d([2,1]) + 1").unwrap();
    assert_eq!(c.coefficient(&Symbol::A(1, Word(vec![1, 1]))), 2);
    assert_eq!(c.coefficient(&Symbol::D(Word(vec![2, 1]))), -1);
    assert_eq!(c.coefficient(&Symbol::One), 1);
    assert_eq!(parse_class(3, &c.to_string()).unwrap(), c);
    assert_eq!(parse_class(3, "a(2, [])").unwrap(), CohClass::a(3, 2, &[]));
    assert_eq!(parse_class(2, "3*f(2) - g(1)").unwrap().terms.len(), 2);
    assert!(matches!(parse_class(3, "f(2)"), Err(GhError::UnsupportedPair(_))));
    assert!(matches!(parse_class(2, "a(1,[])"), Err(GhError::UnsupportedPair(_))));
    assert!(matches!(parse_class(3, "a(5,[])"), Err(GhError::InvalidIndex(_))));
    assert!(matches!(parse_class(3, "a(1,[3])"), Err(GhError::InvalidIndex(_))));
    assert!(matches!(parse_class(3, "a(1,[1"), Err(GhError::Parse(_))));
    assert!(matches!(parse_class(3, "x"), Err(GhError::Parse(_))));
}

#[test]
fn n2_examples() {
    let f = |p| CohClass::symbol(2, Symbol::F(p));
    let g = |p| CohClass::symbol(2, Symbol::G(p));
    for method in [BracketMethod::ClosedForm, BracketMethod::Cochain] {
        assert_eq!(gerstenhaber_bracket(2, &f(4), &g(3), method, Q).unwrap(), f(6).scale(4));
        assert_eq!(gerstenhaber_bracket(2, &g(3), &g(5), method, Q).unwrap(), g(7).scale(-2));
        assert!(gerstenhaber_bracket(2, &f(2), &f(4), method, Q).unwrap().is_zero());
    }
    assert_eq!(cup(2, &f(2), &g(3), Q).unwrap(), g(5));
    assert!(cup(2, &g(1), &g(1), Q).unwrap().is_zero());
    // g_2 is 2-torsion over ℤ
    assert_eq!(cup(2, &g(1), &f(1), F2).unwrap(), g(2));
    assert_eq!(identify_n2(&g(2).scale(3), CoeffRing::Integers).unwrap(), g(2));
    assert!(identify_n2(&g(2), Q).unwrap().is_zero());
    assert!(matches!(
        gerstenhaber_bracket(2, &f(1), &CohClass::a(2, 1, &[]), BracketMethod::Cochain, Q),
        Err(GhError::UnsupportedPair(_))
    ));
    let z = periodic_groups(CoeffRing::Integers, 4);
    assert_eq!(z[0].to_string(), nmhh::exactla::FinAbGroup::free(2).to_string());
    assert_eq!((z[2].free_rank, z[2].torsion_u64()), (1, vec![2]));
    assert_eq!((z[3].free_rank, z[3].torsion_u64()), (1, vec![]));
    let z4 = periodic_groups(CoeffRing::IntegersMod(4), 3);
    assert_eq!((z4[3].free_rank, z4[3].torsion_u64()), (1, vec![2]));
    assert_eq!(periodic_groups(F2, 5).iter().map(|g| g.free_rank).collect::<Vec<_>>(), vec![2; 6]);
}

#[test]
fn n2_theory_reports() {
    for ring in [CoeffRing::Integers, CoeffRing::IntegersMod(4), CoeffRing::PrimeField(3), F2, Q] {
        let r = n2_theory(ring, 6).unwrap();
        assert!(r.pass(), "{ring}");
    }
    let r = n2_theory(CoeffRing::PrimeField(3), 6).unwrap();
    assert_eq!(r.bv.len(), 3);
    assert_eq!(n2_theory(F2, 6).unwrap().bv.len(), 4);
}

#[test]
fn n2_bv_fails_for_a_wrong_operator() {
    // Δ(g_{2n+1}) = (2n+1) f_{2n} is forced; dropping the g_1 term breaks it
    let alg = N2Algebra::new(CoeffRing::PrimeField(3)).unwrap();
    let wrong = BvFamily::Char2 { c: 0, c2: 0 };
    assert!(!alg.bv_violations(wrong, 4).is_empty());
}

fn koszul_cochain(m: usize, v: &BTreeMap<(Word, Label), i64>, p: usize) -> BTreeMap<(Word, Label), i64> {
    let n = standard_bimodule(m, BimoduleKind::N).unwrap();
    let model = KoszulModel::for_nm(&n);
    let mut out = BTreeMap::new();
    for ((w, l), &c) in v {
        for ((w2, b2), x) in model.coboundary(p, &(w.clone(), n.index_of(*l).unwrap())) {
            *out.entry((w2, n.labels[b2])).or_insert(0) += c * x;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn arb_label(m: u8) -> impl Strategy<Value = Label> {
    prop_oneof![
        Just(Label::Identity),
        (1..m).prop_flat_map(move |i| (i + 1..=m).prop_map(move |j| Label::Unit(i, j)))
    ]
}

fn arb_unit(m: u8) -> impl Strategy<Value = (u8, u8)> {
    (1..m).prop_flat_map(move |i| (i + 1..=m).prop_map(move |j| (i, j)))
}

fn arb_cochain(m: usize, p: usize) -> impl Strategy<Value = SparseCochain> {
    let term = (proptest::collection::vec(arb_unit(m as u8), p), arb_label(m as u8), -2i64..=2);
    proptest::collection::vec(term, 0..5).prop_map(move |ts| {
        let mut c = SparseCochain::zero(m, p);
        for (t, l, v) in ts {
            c.add_term(t, l, v);
        }
        c
    })
}

fn arb_triple() -> impl Strategy<Value = (SparseCochain, SparseCochain, SparseCochain)> {
    (0usize..3, 0usize..3, 0usize..3).prop_flat_map(|(a, b, c)| (arb_cochain(3, a), arb_cochain(3, b), arb_cochain(3, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundary_matches_textbook_formula(f in (0usize..3).prop_flat_map(|p| arb_cochain(3, p))) {
        let d = f.coboundary();
        for t in all_tuples(3, f.degree + 1) {
            prop_assert_eq!(d.evaluate(&t), coboundary_at(&f, &t));
        }
        prop_assert!(d.coboundary().is_zero());
    }

    #[test]
    fn restriction_is_a_cochain_map(f in (0usize..4).prop_flat_map(|p| arb_cochain(4, p))) {
        let lhs = f.coboundary().koszul_restriction();
        let rhs = koszul_cochain(4, &f.koszul_restriction(), f.degree);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cup_is_associative_and_leibniz(
        (x, y, z) in arb_triple()
    ) {
        prop_assert_eq!(x.cup(&y).cup(&z), x.cup(&y.cup(&z)));
        let s = if x.degree % 2 == 0 { 1 } else { -1 };
        let lhs = x.cup(&y).coboundary();
        let rhs = x.coboundary().cup(&y).add(&x.cup(&y.coboundary()).scale(s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cochain_bracket_is_graded_lie((x, y, z) in arb_triple()) {
        let (dx, dy, dz) = (x.degree, y.degree, z.degree);
        let anti = cochain_bracket(&x, &y).add(&cochain_bracket(&y, &x).scale(jacobi_sign(dx, dy)));
        prop_assert!(anti.is_zero() || dx + dy == 0);
        if dx > 0 && dy > 0 && dz > 0 {
            let t1 = cochain_bracket(&x, &cochain_bracket(&y, &z)).scale(jacobi_sign(dx, dz));
            let t2 = cochain_bracket(&y, &cochain_bracket(&z, &x)).scale(jacobi_sign(dy, dx));
            let t3 = cochain_bracket(&z, &cochain_bracket(&x, &y)).scale(jacobi_sign(dz, dy));
            prop_assert!(t1.add(&t2).add(&t3).is_zero());
        }
    }

    #[test]
    fn reduction_is_idempotent(i in 1u8..=4, w in proptest::collection::vec(1u8..4, 0..5), k in -3i64..=3) {
        let raw = CohClass::symbol(4, Symbol::A(i, Word(w))).scale(k);
        let once = reduce_to_basis(4, &raw).unwrap();
        prop_assert_eq!(reduce_to_basis(4, &once).unwrap(), once);
    }
}
