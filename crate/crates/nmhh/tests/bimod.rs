use nmhh::bimod::*;
use nmhh::exactla::CoeffRing;

const KINDS: [BimoduleKind; 7] = [
    BimoduleKind::N,
    BimoduleKind::B,
    BimoduleKind::M,
    BimoduleKind::MOverN,
    BimoduleKind::BOverN,
    BimoduleKind::MOverJ,
    BimoduleKind::R,
];

fn catalog() -> Vec<Bimodule> {
    (2..=5).flat_map(|m| KINDS.into_iter().map(move |k| standard_bimodule(m, k).unwrap())).collect()
}

#[test]
fn actions_commute_and_respect_relations() {
    for b in catalog() {
        let m = b.m as u8;
        for x in 0..b.dim() {
            let v = vec![(x, 1)];
            for k in 1..m {
                let l = b.left_combo(k, &v);
                let r = b.right_combo(k, &v);
                for &(y, _) in l.iter().chain(&r) {
                    assert_eq!(b.degree(y), b.degree(x) + 1, "{} m={m}", b.kind);
                }
                for j in 1..m {
                    assert_eq!(b.right_combo(j, &l), b.left_combo(k, &b.right_combo(j, &v)), "{} m={m}", b.kind);
                    if j != k + 1 {
                        // x_k x_j = 0 in N_m
                        assert!(b.left_combo(k, &b.left_combo(j, &v)).is_empty(), "{} left k={k} j={j}", b.kind);
                        assert!(b.right_combo(j, &r).is_empty(), "{} right k={k} j={j}", b.kind);
                    }
                }
            }
        }
    }
}

#[test]
fn filtrations_are_nested_and_stable() {
    for b in catalog() {
        let f = j_adic_filtration(&b).unwrap();
        assert!(f.layers.len() <= 2 * b.m, "{} m={}: {} layers", b.kind, b.m, f.layers.len());
        assert!(f.layers.last().unwrap().is_empty());
        for p in f.offset..f.end() {
            let (lo, hi) = (f.layer(p), f.layer(p + 1));
            assert!(hi.iter().all(|x| lo.contains(x)));
            for &x in &lo {
                for k in 1..b.m as u8 {
                    let img = b.left_combo(k, &vec![(x, 1)]).into_iter().chain(b.right_combo(k, &vec![(x, 1)]));
                    for (y, _) in img {
                        assert!(hi.contains(&y), "{} m={} p={p}", b.kind, b.m);
                    }
                }
            }
            let gr = graded_piece(&f, p).unwrap();
            assert!(gr.has_zero_actions(), "{} m={} Gr{p}", b.kind, b.m);
            assert_eq!(gr.dim(), lo.len() - hi.len());
        }
    }
}

#[test]
fn catalog_examples() {
    let n3 = standard_bimodule(3, BimoduleKind::N).unwrap();
    let mut labels = n3.labels.clone();
    labels.sort();
    assert_eq!(labels, vec![Label::Identity, Label::Unit(1, 2), Label::Unit(1, 3), Label::Unit(2, 3)]);
    for m in 2..=6 {
        let n = standard_bimodule(m, BimoduleKind::N).unwrap();
        assert_eq!(n.dim(), (m * m - m + 2) / 2);
        let r = standard_bimodule(m, BimoduleKind::R).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.has_zero_actions());
        assert_eq!(standard_bimodule(m, BimoduleKind::BOverN).unwrap().dim(), m - 1);
    }
    let f = j_adic_filtration(&n3).unwrap();
    assert_eq!(graded_piece(&f, 0).unwrap().labels, vec![Label::Identity]);
    assert_eq!(f.end(), 3);
    let m3 = j_adic_filtration(&standard_bimodule(3, BimoduleKind::M).unwrap()).unwrap();
    assert_eq!(m3.offset, -2);
    let rf = j_adic_filtration(&standard_bimodule(3, BimoduleKind::R).unwrap()).unwrap();
    assert_eq!(rf.layers, vec![vec![0], vec![]]);
    assert!(standard_bimodule(1, BimoduleKind::N).is_err());
    assert_eq!("M/N".parse::<BimoduleKind>().unwrap(), BimoduleKind::MOverN);
    assert!("Q".parse::<BimoduleKind>().is_err());
}

#[test]
fn tangent_dimensions() {
    for m in 3..=5 {
        let t = tangent_dimension(m).unwrap();
        assert_eq!(t, (3 * m * m - 7 * m + 4) / 2);
        assert_eq!(normalizer_dimension(m, CoeffRing::Rationals).unwrap(), normalizer_dimension(m, CoeffRing::PrimeField(5)).unwrap());
    }
    assert_eq!(tangent_dimension(3).unwrap(), 5);
    assert!(normalizer_dimension(3, CoeffRing::IntegersMod(4)).is_err());
}
