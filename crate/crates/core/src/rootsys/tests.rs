use proptest::prelude::*;

use super::*;
use crate::rational::qf;

fn a(rank: usize) -> RootSystem {
    build_root_system(Family::A, rank).unwrap()
}

fn all_types() -> Vec<(Family, usize)> {
    use Family::*;
    let mut v = Vec::new();
    for r in 1..=4 {
        v.push((A, r));
    }
    for r in 2..=4 {
        v.push((B, r));
        v.push((C, r));
    }
    v.extend([(D, 4), (E, 6), (E, 7), (E, 8), (F, 4), (G, 2)]);
    v
}

// dimensions of the simple Lie algebras, tabulated
fn dim_oracle(f: Family, n: usize) -> usize {
    match f {
        Family::A => n * (n + 2),
        Family::B | Family::C => n * (2 * n + 1),
        Family::D => n * (2 * n - 1),
        Family::E => [78, 133, 248][n - 6],
        Family::F => 52,
        Family::G => 14,
    }
}

// dual Coxeter numbers, tabulated
fn hv_oracle(f: Family, n: usize) -> i64 {
    let n = n as i64;
    match f {
        Family::A => n + 1,
        Family::B => 2 * n - 1,
        Family::C => n + 1,
        Family::D => 2 * n - 2,
        Family::E => [12, 18, 30][(n - 6) as usize],
        Family::F => 9,
        Family::G => 4,
    }
}

#[test]
fn a1_data() {
    let rs = a(1);
    assert_eq!(rs.positive_roots, vec![Weight::from_ints(&[2])]);
    assert_eq!(rs.rho, Weight::from_ints(&[1]));
    assert_eq!(rs.positive_roots[0].scale(qf(1, 2)), rs.rho);
    let w1 = Weight::fundamental(1, 0);
    assert_eq!(rs.inner_product(&w1, &w1).unwrap(), qf(1, 2));
    assert_eq!(rs.dual_coxeter, 2);
}

#[test]
fn a2_data() {
    let rs = a(2);
    assert_eq!(rs.num_positive_roots(), 3);
    assert_eq!(rs.dual_coxeter, 3);
    assert_eq!(rs.ip(&rs.rho, &rs.highest_root), q(2));
    assert_eq!(rs.highest_root, Weight::from_ints(&[1, 1]));
}

#[test]
fn highest_root_has_norm_two_and_rho_is_half_sum() {
    for (f, n) in all_types() {
        let rs = build_root_system(f, n).unwrap();
        assert_eq!(rs.norm2(&rs.highest_root), q(2), "{f}{n}");
        let mut s = Weight::zero(n);
        for r in &rs.positive_roots {
            s += r;
        }
        assert_eq!(s.scale(qf(1, 2)), rs.rho, "{f}{n}");
    }
}

#[test]
fn root_count_matches_dimension_table() {
    for (f, n) in all_types() {
        let rs = build_root_system(f, n).unwrap();
        assert_eq!(rs.dim(), dim_oracle(f, n), "{f}{n}");
    }
}

#[test]
fn dual_coxeter_agrees_with_marks_and_table() {
    for (f, n) in all_types() {
        let rs = build_root_system(f, n).unwrap();
        let from_marks = q(1) + rs.comarks().iter().sum::<Q>();
        assert_eq!(from_marks, q(rs.dual_coxeter), "{f}{n}");
        assert_eq!(rs.dual_coxeter, hv_oracle(f, n), "{f}{n}");
    }
}

#[test]
fn inner_product_checks_rank() {
    let rs = a(2);
    let bad = Weight::zero(3);
    assert!(matches!(
        rs.inner_product(&rs.rho, &bad),
        Err(Error::DimensionMismatch { .. })
    ));
    assert_eq!(rs.inner_product(&Weight::zero(2), &rs.rho).unwrap(), q(0));
}

#[test]
fn orbits() {
    let rs1 = a(1);
    assert_eq!(rs1.weyl_orbit(&Weight::zero(1)).len(), 1);
    let o: Vec<_> = rs1.weyl_orbit(&Weight::from_ints(&[1])).into_iter().collect();
    assert_eq!(o, vec![Weight::from_ints(&[-1]), Weight::from_ints(&[1])]);
    let rs2 = a(2);
    let orbit = rs2.weyl_orbit(&rs2.rho);
    assert_eq!(orbit.len(), 6);
    assert_eq!(orbit.iter().filter(|w| w.is_dominant()).count(), 1);
    assert_eq!(rs2.weyl_group().len(), 6);
}

#[test]
fn dominant_representatives() {
    let rs1 = a(1);
    let (d, g) = rs1.dominant_representative(&Weight::from_ints(&[3]));
    assert_eq!(d, Weight::from_ints(&[3]));
    assert!(g.word.is_empty());
    let (d, g) = rs1.dominant_representative(&Weight::from_ints(&[-1]));
    assert_eq!(d, Weight::from_ints(&[1]));
    assert_eq!(g, WeylElement::simple(0));

    let rs2 = a(2);
    let s1s2 = WeylElement::from_word(vec![0, 1]);
    let x = rs2.weyl_apply(&s1s2, &rs2.rho);
    let (d, g) = rs2.dominant_representative(&x);
    assert_eq!(d, rs2.rho);
    assert_eq!(rs2.weyl_apply(&g, &x), d);
    assert_eq!(g.parity(), 0);
    // rho is regular, so the element is (s1 s2)^{-1}
    let back = rs2.weyl_apply(&g.compose(&s1s2), &rs2.rho);
    assert_eq!(back, rs2.rho);
}

#[test]
fn alcove_positions() {
    let rs = a(1);
    assert_eq!(
        rs.alcove_membership(&Weight::zero(1)),
        AlcovePosition::Face(vec![Wall::Simple(0)])
    );
    assert_eq!(
        rs.alcove_membership(&Weight::new(vec![qf(1, 2)])),
        AlcovePosition::Interior
    );
    assert_eq!(
        rs.alcove_membership(&Weight::from_ints(&[1])),
        AlcovePosition::Face(vec![Wall::Affine])
    );
    assert!(!rs.alcove_membership(&Weight::from_ints(&[2])).in_closed_alcove());
    let rs2 = a(2);
    assert_eq!(
        rs2.alcove_membership(&Weight::zero(2)),
        AlcovePosition::Face(vec![Wall::Simple(0), Wall::Simple(1)])
    );
}

#[test]
fn centralizers() {
    let rs = a(1);
    let c0 = centralizer_root_data(&rs, &Weight::zero(1)).unwrap();
    assert_eq!(c0.roots.len(), 2);
    assert!(c0.finite && c0.is_full(&rs));
    assert_eq!(c0.rho_sigma, rs.rho);

    let ct = centralizer_root_data(&rs, &Weight::new(vec![qf(1, 2)])).unwrap();
    assert!(ct.is_torus());
    assert!(ct.rho_sigma.is_zero());

    let cv = centralizer_root_data(&rs, &Weight::from_ints(&[1])).unwrap();
    let pairs: Vec<(i64, Weight)> = cv.roots.iter().map(|r| (r.n, r.alpha.clone())).collect();
    assert_eq!(
        pairs,
        vec![(-1, Weight::from_ints(&[2])), (1, Weight::from_ints(&[-2]))]
    );
    assert_eq!(cv.positive.len(), 1);
    assert_eq!(cv.simple.len(), 1);
    assert!(!cv.finite);
    assert_eq!(cv.rho_sigma, Weight::from_ints(&[-1]));

    assert!(matches!(
        centralizer_root_data(&rs, &Weight::from_ints(&[2])),
        Err(Error::OutsideAlcove(_))
    ));

    let rs2 = a(2);
    let wall = centralizer_root_data(&rs2, &Weight::new(vec![q(0), qf(1, 2)])).unwrap();
    assert_eq!(wall.positive.len(), 1);
    assert_eq!(wall.positive[0].alpha, rs2.simple_roots[0]);
    assert!(wall.finite);
}

#[test]
fn root_lattice_membership() {
    let rs = a(2);
    assert!(rs.is_in_root_lattice(&rs.highest_root));
    assert!(!rs.is_in_root_lattice(&Weight::from_ints(&[1, 0])));
    assert!(rs.is_in_root_lattice(&Weight::from_ints(&[1, 1])));
}

#[test]
fn parse_names() {
    assert_eq!(RootSystem::from_name("G2").unwrap().dual_coxeter, 4);
    assert!(RootSystem::from_name("Z9").is_err());
    assert!(RootSystem::from_name("A0").is_err());
}

const TYPES: [(Family, usize); 6] = [
    (Family::A, 2),
    (Family::B, 2),
    (Family::G, 2),
    (Family::C, 3),
    (Family::A, 3),
    (Family::D, 4),
];

fn weyl_words(rank: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec(0..rank, 0..8).prop_map(WeylElement::from_word)
}

fn weights(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec((-6i64..=6, 1i64..=3), rank).prop_map(|v| {
        Weight::new(v.into_iter().map(|(n, d)| qf(n, d)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inner_product_is_weyl_invariant(
        (idx, g, l, m) in (0usize..TYPES.len()).prop_flat_map(|i| {
            let n = TYPES[i].1;
            (Just(i), weyl_words(n), weights(n), weights(n))
        })
    ) {
        let (f, n) = TYPES[idx];
        let rs = build_root_system(f, n).unwrap();
        prop_assert_eq!(rs.ip(&rs.weyl_apply(&g, &l), &rs.weyl_apply(&g, &m)), rs.ip(&l, &m));
        prop_assert_eq!(rs.weyl_apply(&g.inverse(), &rs.weyl_apply(&g, &l)), l.clone());
        let (d, h) = rs.dominant_representative(&l);
        prop_assert!(d.is_dominant());
        prop_assert_eq!(&rs.weyl_apply(&h, &l), &d);
        prop_assert_eq!(rs.dominant_representative(&d).0, d.clone());
        if rs.rank <= 3 {
            prop_assert!(rs.weyl_orbit(&l).contains(&d));
        }
    }

    #[test]
    fn generic_interior_points_have_trivial_centralizer(
        a1 in 1i64..50, a2 in 1i64..50,
    ) {
        // xi = (a1/p, a2/p) with a large prime p keeps every <alpha, xi> non-integral
        let rs = build_root_system(Family::A, 2).unwrap();
        let p = 101;
        prop_assume!(a1 + a2 < p);
        let xi = Weight::new(vec![qf(a1, p), qf(a2, p)]);
        prop_assert_eq!(rs.alcove_membership(&xi), AlcovePosition::Interior);
        prop_assert!(centralizer_root_data(&rs, &xi).unwrap().is_torus());
    }
}
