//! Invariants under random input, plus the structural facts the McKay
//! families are expected to satisfy.

mod common;

use num_traits::Zero;
use proptest::prelude::*;
use qlab::dual::{pairing, quadratic_dual, relation_ranks, same_quadratic_span};
use qlab::graded::{graded_dims, is_n_properly_graded, is_nicely_graded, stable_translation_check, GradedDims, NiceGrading, ProperGrading};
use qlab::io::{parse_bound_quiver, to_json};
use qlab::iso::{find_isomorphism, is_isomorphic};
use qlab::linalg::{rat, ratio};
use qlab::loewy::{classify, complexity_probe, default_h_max, gk_estimate, loewy_matrix, simple_level_vector, GkEstimate, Verdict};
use qlab::mckay::{
    ade_diagram, mckay_abelian, mckay_ade, mckay_from_characters, relations_sr, relations_sr_dual, relations_xi,
    relations_xi_dual, slice_relations_xi, AbelianSpec, AdeFamily, CharacterTable, SrParams, Which, XiSpec,
};
use qlab::quiver::{BoundQuiver, Quiver, RelationElement};
use qlab::trivext::trivial_extension;
use qlab::Error;
use rand::seq::SliceRandom;

use common::{a3_zero, kronecker, random_quadratic, sr, xi};

/// Same bound quiver with vertices listed in the order `perm` and arrows
/// renamed, so ids carry no information.
fn relabel(bq: &BoundQuiver, perm: &[usize]) -> BoundQuiver {
    let q = bq.quiver();
    let mut out = Quiver::with_vertices(perm.iter().map(|&v| format!("v{}", q.vertex_id(v)))).unwrap();
    let position: Vec<usize> = (0..perm.len()).map(|v| perm.iter().position(|&w| w == v).unwrap()).collect();
    for (k, a) in q.arrows().iter().enumerate().rev() {
        out.add_arrow(format!("z{k}"), position[a.source], position[a.target]).unwrap();
    }
    let arrow_of = |k: usize| q.arrow_count() - 1 - k;
    let relations = bq
        .relations()
        .iter()
        .map(|r| {
            let terms = r
                .terms()
                .iter()
                .map(|(p, c)| (c.clone(), out.path(p.arrows().iter().map(|&a| arrow_of(a)).collect()).unwrap()))
                .collect();
            RelationElement::new(terms).unwrap().unwrap()
        })
        .collect();
    BoundQuiver::new(out, relations, bq.n()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution_with_complementary_ranks(seed in any::<u64>()) {
        let bq = random_quadratic(&mut common::rng(seed), 5, 8);
        let dual = quadratic_dual(&bq).unwrap();
        prop_assert!(same_quadratic_span(&bq, &quadratic_dual(&dual).unwrap()));
        for (a, b) in relation_ranks(&bq).iter().zip(relation_ranks(&dual)) {
            prop_assert_eq!(a.2 + b.2, a.3);
        }
        for r in bq.relations() {
            for s in dual.relations() {
                prop_assert!(pairing(r, s).is_zero());
            }
        }
    }

    #[test]
    fn dual_output_is_canonical(seed in any::<u64>()) {
        let bq = random_quadratic(&mut common::rng(seed), 5, 8);
        let once = quadratic_dual(&bq).unwrap();
        let thrice = quadratic_dual(&quadratic_dual(&once).unwrap()).unwrap();
        prop_assert_eq!(to_json(&once), to_json(&thrice));
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let bq = random_quadratic(&mut common::rng(seed), 5, 8);
        prop_assert_eq!(parse_bound_quiver(&to_json(&bq)).unwrap(), bq);
    }

    #[test]
    fn relabelled_quivers_are_isomorphic(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let bq = random_quadratic(&mut rng, 5, 7);
        let mut perm: Vec<usize> = (0..bq.quiver().vertex_count()).collect();
        perm.shuffle(&mut rng);
        let other = relabel(&bq, &perm);
        let iso = find_isomorphism(&bq, &other);
        prop_assert!(iso.is_some());
        prop_assert_eq!(graded_dims(&bq, 3).0.total(), graded_dims(&other, 3).0.total());
    }

    #[test]
    fn cancelling_terms_vanish(c in -5i64..=5) {
        let q = a3_zero().quiver().clone();
        let p = q.path_from_ids(&["b", "a"]).unwrap();
        let r = RelationElement::new(vec![(rat(c), p.clone()), (rat(-c), p)]).unwrap();
        prop_assert!(r.is_none());
    }

    #[test]
    fn classification_ignores_vertex_order(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for bq in [trivial_extension(&a3_zero(), None).unwrap().bound, trivial_extension(&kronecker(3), None).unwrap().bound] {
            let (gd, _) = graded_dims(&bq, 3);
            let mut perm: Vec<usize> = (0..gd.vertices).collect();
            perm.shuffle(&mut rng);
            let blocks = gd.blocks.iter().map(|b| perm.iter().map(|&j| perm.iter().map(|&i| b[j][i]).collect()).collect()).collect();
            let permuted = GradedDims { vertices: gd.vertices, blocks };
            let a = classify(&loewy_matrix(&gd, 1).unwrap(), 32).unwrap();
            let b = classify(&loewy_matrix(&permuted, 1).unwrap(), 32).unwrap();
            prop_assert_eq!(a.verdict, b.verdict);
            prop_assert_eq!(a.char_poly, b.char_poly);
        }
    }
}

#[test]
fn sr_dual_family_is_the_quadratic_dual() {
    for (s, r) in [(4, 4), (4, 5), (5, 6)] {
        for x in [rat(1), rat(2), ratio(-1, 3)] {
            let params = SrParams::constant(s, r, x);
            let primal = relations_sr(s, r, &params).unwrap();
            let dual = relations_sr_dual(s, r, &params).unwrap();
            assert!(same_quadratic_span(&quadratic_dual(&primal).unwrap(), &dual), "({s},{r})");
        }
    }
    assert_eq!(sr(4, 4).relations().len(), 96);
    assert_eq!(relations_sr(3, 4, &SrParams::ones(3, 4)), Err(Error::SizeTooSmall(vec![3, 4])));
}

#[test]
fn xi_dual_family_is_the_quadratic_dual() {
    let cases: Vec<(AdeFamily, usize, Vec<usize>)> = vec![
        (AdeFamily::A, 5, vec![]),
        (AdeFamily::A, 4, vec![1]),
        (AdeFamily::D, 5, vec![]),
        (AdeFamily::D, 5, vec![2]),
        (AdeFamily::E6, 6, vec![1, 3]),
        (AdeFamily::E7, 7, vec![]),
    ];
    for (family, l, j) in cases {
        let spec = XiSpec::new(family, l).with_j(j.clone());
        let primal = relations_xi(&spec).unwrap();
        let dual = relations_xi_dual(&spec).unwrap();
        assert!(same_quadratic_span(&quadratic_dual(&primal).unwrap(), &dual), "{family}{l} J={j:?}");
        let (gd, _) = graded_dims(&primal, 4);
        assert!(stable_translation_check(&gd, 2).is_trivial(), "{family}{l} J={j:?}");
    }
}

#[test]
fn xi_hilbert_series_follow_the_diagram_degree() {
    for (family, l) in [(AdeFamily::A, 4), (AdeFamily::D, 5), (AdeFamily::E6, 6)] {
        let (labels, edges) = ade_diagram(family, l).unwrap();
        let bq = xi(family, l, vec![]);
        let (gd, _) = graded_dims(&bq, 4);
        for (k, v) in labels.iter().enumerate() {
            let degree = edges.iter().filter(|&&(a, b)| a == *v || b == *v).count();
            assert_eq!(gd.hilbert(k), vec![1, degree + 1, degree + 1, 1, 0], "{family}{l} vertex {v}");
        }
    }
}

#[test]
fn xi_slices_are_two_properly_graded() {
    let e6 = slice_relations_xi(AdeFamily::E6, 6, &Default::default(), Which::Primal).unwrap();
    assert_eq!(e6.quiver().vertex_count(), 21);
    assert_eq!(is_n_properly_graded(&e6, 10), Ok(ProperGrading::Yes { n: 2 }));
    let all = (0..6).collect();
    let d5 = slice_relations_xi(AdeFamily::D, 5, &all, Which::Primal).unwrap();
    assert_eq!(is_n_properly_graded(&d5, 10), Ok(ProperGrading::Yes { n: 2 }));
    let a5 = slice_relations_xi(AdeFamily::A, 5, &Default::default(), Which::Primal).unwrap();
    let a5_dual = slice_relations_xi(AdeFamily::A, 5, &Default::default(), Which::Dual).unwrap();
    assert!(same_quadratic_span(&quadratic_dual(&a5).unwrap(), &a5_dual));
}

#[test]
fn mckay_quiver_shapes() {
    let cyclic = mckay_abelian(&AbelianSpec::new(vec![5]).unwrap());
    assert_eq!((cyclic.vertex_count(), cyclic.arrow_count()), (5, 10));
    let q44 = mckay_abelian(&AbelianSpec::new(vec![4, 4]).unwrap());
    assert_eq!((q44.vertex_count(), q44.arrow_count()), (16, 48));
    assert!((0..16).all(|v| q44.out_arrows(v).len() == 3));
    let trivial = mckay_abelian(&AbelianSpec::new(vec![1, 1]).unwrap());
    assert_eq!((trivial.vertex_count(), trivial.arrow_count()), (1, 3));

    let a5 = mckay_ade(AdeFamily::A, 5).unwrap();
    assert_eq!(a5.vertex_count(), 6);
    assert!((0..6).all(|v| a5.out_arrows(v).len() == 3 && a5.in_arrows(v).len() == 3));
    let non_loop_out = |q: &Quiver, v: usize| q.out_arrows(v).iter().filter(|&&a| q.arrow(a).target != v).count();
    let d5 = mckay_ade(AdeFamily::D, 5).unwrap();
    assert_eq!(d5.vertex_count(), 6);
    assert_eq!((0..6).filter(|&v| non_loop_out(&d5, v) == 1).count(), 4);
    let e6 = mckay_ade(AdeFamily::E6, 6).unwrap();
    assert_eq!(e6.vertex_count(), 7);
    assert_eq!(non_loop_out(&e6, e6.vertex("3").unwrap()), 3);
}

#[test]
fn character_tables_of_small_groups() {
    // ℤ/5 with the faithful character k ↦ ζ^k
    let zeta = |k: usize| {
        let z = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 5.0);
        (z.re, z.im)
    };
    let table = CharacterTable {
        class_sizes: vec![1.0; 5],
        characters: (0..5).map(|i| (0..5).map(|g| zeta(i * g)).collect()).collect(),
        labels: None,
    };
    let q = mckay_from_characters(&table, &table.row(1)).unwrap();
    assert_eq!(q.arrow_count(), 5);
    assert!((0..5).all(|v| q.out_arrows(v).len() == 1 && q.in_arrows(v).len() == 1));
    assert_eq!(q.component_vertex_sets().len(), 1);

    let trivial = CharacterTable { class_sizes: vec![1.0], characters: vec![vec![(1.0, 0.0)]], labels: None };
    let three = vec![num_complex::Complex64::new(3.0, 0.0)];
    let q = mckay_from_characters(&trivial, &three).unwrap();
    assert_eq!((q.vertex_count(), q.arrow_count()), (1, 3));
}

#[test]
fn three_step_path_through_the_diagonal() {
    let q = mckay_abelian(&AbelianSpec::new(vec![4, 4]).unwrap());
    let paths = q.paths_between_ids("0,0", "0,0", 3).unwrap();
    let ids: Vec<Vec<&str>> = paths.iter().map(|p| p.ids(&q)).collect();
    assert!(ids.contains(&vec!["c:1,1", "b:1,0", "a:0,0"]), "{ids:?}");
}

#[test]
fn gradings_of_small_quivers() {
    assert_eq!(is_n_properly_graded(&a3_zero(), 6), Ok(ProperGrading::Yes { n: 1 }));
    let free = BoundQuiver::free(a3_zero().quiver().clone());
    assert_eq!(is_n_properly_graded(&free, 6), Ok(ProperGrading::Yes { n: 2 }));
    let looped = parse_bound_quiver(r#"{"vertices":["x"],"arrows":[{"id":"c","from":"x","to":"x"}]}"#).unwrap();
    assert!(matches!(is_nicely_graded(looped.quiver()), NiceGrading::No { .. }));
    let cycle = parse_bound_quiver(
        r#"{"vertices":["1","2"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"1"}]}"#,
    )
    .unwrap();
    assert!(matches!(is_nicely_graded(cycle.quiver()), NiceGrading::No { .. }));
}

#[test]
fn loewy_matrix_of_the_mckay_algebra() {
    let (gd, _) = graded_dims(&sr(4, 4), 4);
    let l = loewy_matrix(&gd, 2).unwrap();
    assert_eq!(l.size(), 48);
    for j in 0..16 {
        for i in 0..16 {
            assert_eq!(l.entries[j][i], gd.blocks[1][j][i] as i64);
            assert_eq!(l.entries[16 + j][i], gd.blocks[1][i][j] as i64);
            assert_eq!(l.entries[32 + j][i], i64::from(i == j));
        }
    }
}

#[test]
fn kronecker_loewy_constant_term_is_a_unit() {
    let (gd, _) = graded_dims(&trivial_extension(&kronecker(2), None).unwrap().bound, 3);
    let l = loewy_matrix(&gd, 1).unwrap();
    let r = classify(&l, 16).unwrap();
    assert!(r.constant_term == "1" || r.constant_term == "-1");
}

#[test]
fn gk_estimates_per_verdict() {
    let (gd, _) = graded_dims(&trivial_extension(&a3_zero(), None).unwrap().bound, 3);
    let r = classify(&loewy_matrix(&gd, 1).unwrap(), 16).unwrap();
    assert!(matches!(r.verdict, Verdict::Finite { h } if h <= 6));
    assert_eq!(gk_estimate(&r), GkEstimate::Finite(0));
}

#[test]
fn growth_probes() {
    let (gd, _) = graded_dims(&sr(4, 4), 4);
    let l = loewy_matrix(&gd, 2).unwrap();
    let tame = complexity_probe(&l, &simple_level_vector(&l, 0), 100);
    let degree = tame.polynomial_degree.unwrap();
    assert!((1.7..=2.3).contains(&degree), "{degree}");

    let (gd, _) = graded_dims(&trivial_extension(&kronecker(3), None).unwrap().bound, 3);
    let l = loewy_matrix(&gd, 1).unwrap();
    let Verdict::Wild { rho } = classify(&l, default_h_max(&l)).unwrap().verdict else { panic!("wild") };
    let wild = complexity_probe(&l, &simple_level_vector(&l, 0), 60);
    let rate = wild.exponential_rate.unwrap();
    assert!((rate / rho.ln() - 1.0).abs() < 0.05, "{rate} vs {}", rho.ln());

    let (gd, _) = graded_dims(&trivial_extension(&a3_zero(), None).unwrap().bound, 3);
    let l = loewy_matrix(&gd, 1).unwrap();
    let finite = complexity_probe(&l, &simple_level_vector(&l, 0), 60);
    assert!(finite.periodic_at.is_some());
    assert!(finite.polynomial_degree.is_none());
}

#[test]
fn trivial_extension_of_a3() {
    let te = trivial_extension(&a3_zero(), None).unwrap();
    assert_eq!(te.bound.quiver().arrow_count(), 4);
    assert_eq!(te.bound.relations().len(), 3);
    let (gd, _) = graded_dims(&te.bound, 3);
    assert_eq!(gd.total(), 10);
    assert!(stable_translation_check(&gd, 1).is_trivial());
    let point = BoundQuiver::free(Quiver::with_vertices(["x"]).unwrap());
    let te = trivial_extension(&point, None).unwrap();
    assert_eq!((te.bound.quiver().arrow_count(), te.bound.relations().len()), (1, 1));
}

#[test]
fn relabelled_mckay_algebra_is_isomorphic() {
    let bq = sr(4, 4);
    let mut perm: Vec<usize> = (0..16).collect();
    perm.reverse();
    assert!(is_isomorphic(&bq, &relabel(&bq, &perm)));
    assert!(!is_isomorphic(&bq, &BoundQuiver::free(bq.quiver().clone())));
}
