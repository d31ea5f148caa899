use super::*;
use crate::rootsys::centralizer_root_data;
use crate::rational::q;
use num_traits::Signed;

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

#[test]
fn full_square_is_scalar() {
    let rs = RootSystem::from_name("A1").unwrap();
    let la = LieAlgebra::new(&rs).unwrap();
    for l in 0..3 {
        let r = verify_kostant_square(&rs, &la, None, &w(&[l]), &DiracConfig::default()).unwrap();
        assert!(r.max_deviation < 1e-8, "{l}: {r:?}");
    }
}

#[test]
fn relative_square_a2() {
    let rs = RootSystem::from_name("A2").unwrap();
    let la = LieAlgebra::new(&rs).unwrap();
    let torus = centralizer_root_data(&rs, &Weight::new(vec![q(1) / q(6), q(1) / q(6)])).unwrap();
    let wall = centralizer_root_data(&rs, &Weight::new(vec![q(0), q(1) / q(3)])).unwrap();
    for cz in [&torus, &wall] {
        for lam in [w(&[0, 0]), w(&[1, 0]), w(&[1, 1])] {
            let r = verify_kostant_square(&rs, &la, Some(cz), &lam, &DiracConfig::default()).unwrap();
            assert!(r.max_deviation < 1e-8, "{lam}: {}", r.max_deviation);
            assert!(r.self_adjoint_deviation < 1e-10);
        }
    }
}

#[test]
fn operator_is_odd() {
    let rs = RootSystem::from_name("A2").unwrap();
    let la = LieAlgebra::new(&rs).unwrap();
    let cz = centralizer_root_data(&rs, &Weight::new(vec![q(1) / q(6), q(1) / q(6)])).unwrap();
    let d = relative_cubic_dirac_matrix(&rs, &la, &cz, &w(&[1, 0]), &DiracConfig::default()).unwrap();
    assert!(d.even_part() < 1e-12);
}

#[test]
fn kernel_matches_alternating_branching() {
    let rs = RootSystem::from_name("A1").unwrap();
    let la = LieAlgebra::new(&rs).unwrap();
    let cz = centralizer_root_data(&rs, &Weight::new(vec![q(1) / q(2)])).unwrap();
    for l in 0..4 {
        let k = dirac_kernel_finite(&rs, &la, &cz, &w(&[l]), &DiracConfig::default()).unwrap();
        assert_eq!(k.signed, alternating_branching(&rs, &cz, &w(&[l])).unwrap());
        assert!(k.flagged.is_empty());
    }
}

#[test]
fn geo_alg_difference_is_constant() {
    let rs = RootSystem::from_name("A1").unwrap();
    let la = LieAlgebra::new(&rs).unwrap();
    let cz = centralizer_root_data(&rs, &Weight::new(vec![q(1) / q(2)])).unwrap();
    let r = geo_alg_gap(&rs, &la, &cz, &[w(&[0]), w(&[1]), w(&[2])], &DiracConfig::default()).unwrap();
    assert!(r.max_spread < 1e-9, "{r:?}");
    // [p, p] lies in t for sl2, so the cubic term vanishes
    assert!(r.constant_norm < 1e-12);
    let rs = RootSystem::from_name("A2").unwrap();
    let la = LieAlgebra::new(&rs).unwrap();
    let cz = centralizer_root_data(&rs, &Weight::new(vec![q(1) / q(6), q(1) / q(6)])).unwrap();
    let r = geo_alg_gap(&rs, &la, &cz, &[w(&[0, 0]), w(&[1, 0]), w(&[1, 1])], &DiracConfig::default()).unwrap();
    assert!(r.max_spread < 1e-9, "{r:?}");
    assert!(r.constant_norm > 0.1);
    assert!(r.self_adjoint_deviation < 1e-10);
}

#[test]
fn cap_is_enforced() {
    let rs = RootSystem::from_name("A1").unwrap();
    let la = LieAlgebra::new(&rs).unwrap();
    let cfg = DiracConfig { cap: 4, ..DiracConfig::default() };
    let e = cubic_dirac_matrix(&rs, &la, &w(&[3]), &cfg).unwrap_err();
    assert!(matches!(e, Error::CapExceeded { .. }));
}

#[test]
fn quantize_hand_cases() {
    let rs = RootSystem::from_name("A1").unwrap();
    let r = quantize_conjugacy_class(&rs, &w(&[1]), 1, 4).unwrap();
    assert_eq!(r.index.entries, vec![0, 1]);
    let r = quantize_conjugacy_class(&rs, &w(&[0]), 1, 4).unwrap();
    assert_eq!(r.index.entries, vec![1, 0]);
    let r = quantize_conjugacy_class(&rs, &w(&[1]), 2, 4).unwrap();
    assert_eq!(r.index.entries, vec![0, 1, 0]);
}

#[test]
fn quantize_errors() {
    let rs = RootSystem::from_name("A1").unwrap();
    assert!(matches!(
        quantize_conjugacy_class(&rs, &w(&[3]), 2, 4),
        Err(Error::NonIntegralClass { .. })
    ));
    assert!(matches!(
        quantize_conjugacy_class(&rs, &Weight::new(vec![q(1) / q(2)]), 2, 4),
        Err(Error::NonIntegralClass { .. })
    ));
}

#[test]
fn spectrum_energy_spacing() {
    let rs = RootSystem::from_name("A1").unwrap();
    let cz = centralizer_root_data(&rs, &Weight::new(vec![q(1) / q(2)])).unwrap();
    let spectrum = affine_isotypic_spectrum(&rs, &cz, &w(&[1]), 2, 4).unwrap();
    assert!(!spectrum.is_empty());
    assert!(spectrum.iter().all(|c| !c.d2.is_negative()));
}
