//! Affine weights `(m, lambda, k)` and the affine Weyl group `W ⋉ Λ`,
//! where `Λ` is the coroot lattice viewed inside the weight space through the
//! basic inner product. For simply laced types it is the root lattice.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, q, Q};
use crate::rootsys::{RootSystem, Weight, WeylElement};

/// Energy `m`, finite weight `lam`, level `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    #[serde(with = "rational")]
    pub m: Q,
    pub lam: Weight,
    #[serde(with = "rational")]
    pub k: Q,
}

impl AffineWeight {
    pub fn new(m: Q, lam: Weight, k: Q) -> Self {
        AffineWeight { m, lam, k }
    }

    pub fn from_ints(m: i64, lam: &[i64], k: i64) -> Self {
        AffineWeight::new(q(m), Weight::from_ints(lam), q(k))
    }

    pub fn add(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight::new(self.m + o.m, &self.lam + &o.lam, self.k + o.k)
    }

    pub fn sub(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight::new(self.m - o.m, &self.lam - &o.lam, self.k - o.k)
    }

    pub fn scale(&self, s: Q) -> AffineWeight {
        AffineWeight::new(self.m * s, self.lam.scale(s), self.k * s)
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.m, self.lam, self.k)
    }
}

/// `(0, rho_G, h^vee)`, the highest weight of the loop spin module.
pub fn rho_hat(rs: &RootSystem) -> AffineWeight {
    AffineWeight::new(q(0), rs.rho.clone(), q(rs.dual_coxeter))
}

/// `<l1, l2> - m1 k2 - m2 k1`.
pub fn affine_inner_product(rs: &RootSystem, a: &AffineWeight, b: &AffineWeight) -> Result<Q> {
    let finite = rs.inner_product(&a.lam, &b.lam)?;
    Ok(finite - a.m * b.k - b.m * a.k)
}

pub(crate) fn aip(rs: &RootSystem, a: &AffineWeight, b: &AffineWeight) -> Q {
    rs.ip(&a.lam, &b.lam) - a.m * b.k - b.m * a.k
}

/// Action of the translation by `z`; `z` must lie in the coroot lattice.
pub fn translate(rs: &RootSystem, z: &Weight, a: &AffineWeight) -> Result<AffineWeight> {
    rs.check_weight(z)?;
    rs.check_weight(&a.lam)?;
    if !rs.is_in_coroot_lattice(z) {
        return Err(Error::NotInRootLattice(z.to_string()));
    }
    Ok(translate_unchecked(rs, z, a))
}

fn translate_unchecked(rs: &RootSystem, z: &Weight, a: &AffineWeight) -> AffineWeight {
    if z.is_zero() {
        return a.clone();
    }
    let m = a.m + rs.ip(&a.lam, z) + a.k * rs.norm2(z) / q(2);
    AffineWeight::new(m, &a.lam + &z.scale(a.k), a.k)
}

/// `translate(z) ∘ w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeylElement {
    pub w: WeylElement,
    pub z: Weight,
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        AffineWeylElement {
            w: WeylElement::identity(),
            z: Weight::zero(rank),
        }
    }

    pub fn translation(z: Weight) -> Self {
        AffineWeylElement {
            w: WeylElement::identity(),
            z,
        }
    }

    /// The affine simple reflection `s_0 = t_{alpha_0} s_{alpha_0}`.
    pub fn s0(rs: &RootSystem) -> Self {
        AffineWeylElement {
            w: rs.reflection_word(rs.num_positive_roots() - 1),
            z: rs.highest_root.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, rs: &RootSystem, other: &AffineWeylElement) -> Self {
        AffineWeylElement {
            w: self.w.compose(&other.w),
            z: &self.z + &rs.weyl_apply(&self.w, &other.z),
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let winv = self.w.inverse();
        let z = -&rs.weyl_apply(&winv, &self.z);
        AffineWeylElement { w: winv, z }
    }
}

pub fn affine_weyl_apply(
    rs: &RootSystem,
    g: &AffineWeylElement,
    a: &AffineWeight,
) -> Result<AffineWeight> {
    rs.check_weight(&a.lam)?;
    let lam = rs.weyl_apply(&g.w, &a.lam);
    translate(rs, &g.z, &AffineWeight::new(a.m, lam, a.k))
}

pub(crate) fn affine_weyl_apply_unchecked(
    rs: &RootSystem,
    g: &AffineWeylElement,
    a: &AffineWeight,
) -> AffineWeight {
    let lam = rs.weyl_apply(&g.w, &a.lam);
    translate_unchecked(rs, &g.z, &AffineWeight::new(a.m, lam, a.k))
}

/// `<lambda, alpha_0> <= k` and `lambda` dominant integral.
pub fn in_level_alcove(rs: &RootSystem, lam: &Weight, k: i64) -> bool {
    rs.is_dominant_integral(lam) && rs.level_of(lam) <= q(k)
}

pub fn require_level_alcove(rs: &RootSystem, lam: &Weight, k: i64) -> Result<()> {
    rs.check_weight(lam)?;
    if in_level_alcove(rs, lam, k) {
        Ok(())
    } else {
        Err(Error::NotInLevelAlcove {
            weight: lam.to_string(),
            level: k,
        })
    }
}

/// Dominant integral weights of level at most `k`, in lexicographic order.
pub fn level_k_alcove(rs: &RootSystem, k: i64) -> Vec<Weight> {
    if k < 0 {
        return Vec::new();
    }
    let comarks = rs.comarks();
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank];
    fn rec(i: usize, budget: Q, comarks: &[Q], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == cur.len() {
            out.push(Weight::from_ints(cur));
            return;
        }
        let mut c = 0i64;
        while q(c) * comarks[i] <= budget {
            cur[i] = c;
            rec(i + 1, budget - q(c) * comarks[i], comarks, cur, out);
            c += 1;
        }
        cur[i] = 0;
    }
    rec(0, q(k), &comarks, &mut cur, &mut out);
    out.sort();
    out
}

const SWEEP_CAP: usize = 10_000;

/// Reduces `a` into the closed level-`k` alcove by alternating dominance
/// sweeps with the affine reflection `s_0`.
pub fn affine_dominant_representative(
    rs: &RootSystem,
    a: &AffineWeight,
) -> Result<(AffineWeight, AffineWeylElement)> {
    rs.check_weight(&a.lam)?;
    if !a.k.is_positive() {
        return Err(Error::NonPositiveLevel(a.k.to_string()));
    }
    if !a.lam.is_integral() {
        return Err(Error::NotDominantIntegral(a.lam.to_string()));
    }
    let s0 = AffineWeylElement::s0(rs);
    let mut g = AffineWeylElement::identity(rs.rank);
    let mut cur = a.clone();
    for _ in 0..SWEEP_CAP {
        let (lam, w) = rs.dominant_representative(&cur.lam);
        if !w.word.is_empty() {
            let step = AffineWeylElement {
                w,
                z: Weight::zero(rs.rank),
            };
            g = step.compose(rs, &g);
            cur = AffineWeight::new(cur.m, lam, cur.k);
        }
        if rs.level_of(&cur.lam) <= cur.k {
            return Ok((cur, g));
        }
        cur = affine_weyl_apply_unchecked(rs, &s0, &cur);
        g = s0.compose(rs, &g);
    }
    Err(Error::NoConvergence(SWEEP_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::rootsys::{build_root_system, Family};
    use proptest::prelude::*;

    fn a1() -> RootSystem {
        build_root_system(Family::A, 1).unwrap()
    }

    #[test]
    fn inner_products() {
        let rs = a1();
        let alpha = rs.simple_roots[0].clone();
        let w1 = Weight::fundamental(1, 0);
        let x = AffineWeight::new(q(1), alpha.clone(), q(1));
        let y = AffineWeight::new(q(0), w1.clone(), q(1));
        assert_eq!(affine_inner_product(&rs, &x, &y).unwrap(), q(0));
        let r = rho_hat(&rs);
        assert_eq!(aip(&rs, &r, &r), rs.norm2(&rs.rho));
        let z = AffineWeight::new(q(0), w1, q(3));
        assert_eq!(aip(&rs, &z, &z), qf(1, 2));
    }

    #[test]
    fn translations() {
        let rs = a1();
        let alpha = rs.simple_roots[0].clone();
        let v = AffineWeight::from_ints(0, &[0], 1);
        assert_eq!(translate(&rs, &Weight::zero(1), &v).unwrap(), v);
        assert_eq!(
            translate(&rs, &alpha, &v).unwrap(),
            AffineWeight::new(q(1), alpha.clone(), q(1))
        );
        assert!(matches!(
            translate(&rs, &Weight::from_ints(&[1]), &v),
            Err(Error::NotInRootLattice(_))
        ));
    }

    #[test]
    fn weyl_action() {
        let rs = a1();
        let g = AffineWeylElement {
            w: WeylElement::simple(0),
            z: Weight::zero(1),
        };
        let v = AffineWeight::from_ints(0, &[1], 1);
        assert_eq!(affine_weyl_apply(&rs, &g, &v).unwrap(), AffineWeight::from_ints(0, &[-1], 1));
        let id = AffineWeylElement::identity(1);
        assert_eq!(affine_weyl_apply(&rs, &id, &v).unwrap(), v);
    }

    #[test]
    fn s0_acts_as_affine_reflection() {
        for rank in 1..=3 {
            let rs = build_root_system(Family::A, rank).unwrap();
            let s0 = AffineWeylElement::s0(&rs);
            let v = AffineWeight::new(q(2), Weight::from_ints(&vec![1; rank]), q(3));
            let c = v.k - rs.level_of(&v.lam);
            let expect = AffineWeight::new(v.m + c, &v.lam + &rs.highest_root.scale(c), v.k);
            assert_eq!(affine_weyl_apply(&rs, &s0, &v).unwrap(), expect);
        }
        let g2 = build_root_system(Family::G, 2).unwrap();
        let s0 = AffineWeylElement::s0(&g2);
        let v = AffineWeight::from_ints(0, &[1, 1], 2);
        let c = v.k - g2.level_of(&v.lam);
        let out = affine_weyl_apply(&g2, &s0, &v).unwrap();
        assert_eq!(out.lam, &v.lam + &g2.highest_root.scale(c));
    }

    #[test]
    fn alcoves() {
        let rs = a1();
        assert_eq!(level_k_alcove(&rs, 0), vec![Weight::zero(1)]);
        assert_eq!(
            level_k_alcove(&rs, 2),
            vec![Weight::from_ints(&[0]), Weight::from_ints(&[1]), Weight::from_ints(&[2])]
        );
        for k in 0..=10 {
            assert_eq!(level_k_alcove(&rs, k).len() as i64, k + 1);
        }
        let rs2 = build_root_system(Family::A, 2).unwrap();
        assert_eq!(
            level_k_alcove(&rs2, 1),
            vec![Weight::from_ints(&[0, 0]), Weight::from_ints(&[0, 1]), Weight::from_ints(&[1, 0])]
        );
        let g2 = build_root_system(Family::G, 2).unwrap();
        let mut prev = 0;
        for k in 0..6 {
            let n = level_k_alcove(&g2, k).len();
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn reduction_example() {
        let rs = a1();
        let v = AffineWeight::from_ints(0, &[3], 2);
        let (out, g) = affine_dominant_representative(&rs, &v).unwrap();
        assert_eq!(out, AffineWeight::from_ints(-1, &[1], 2));
        assert_eq!(affine_weyl_apply(&rs, &g, &v).unwrap(), out);
        let (again, h) = affine_dominant_representative(&rs, &out).unwrap();
        assert_eq!(again, out);
        assert_eq!(h, AffineWeylElement::identity(1));
        assert!(matches!(
            affine_dominant_representative(&rs, &AffineWeight::from_ints(0, &[1], 0)),
            Err(Error::NonPositiveLevel(_))
        ));
    }

    const TYPES: [(Family, usize); 4] = [
        (Family::A, 1),
        (Family::A, 2),
        (Family::B, 2),
        (Family::G, 2),
    ];

    fn aw(rank: usize) -> impl Strategy<Value = AffineWeight> {
        (
            -8i64..8,
            1i64..3,
            prop::collection::vec(-6i64..6, rank),
            -4i64..5,
        )
            .prop_map(|(m, d, lam, k)| AffineWeight::new(qf(m, d), Weight::from_ints(&lam), q(k)))
    }

    fn element(rs: &RootSystem) -> impl Strategy<Value = AffineWeylElement> {
        let rank = rs.rank;
        let simple = rs.simple_coroots();
        (
            prop::collection::vec(0..rank, 0..6),
            prop::collection::vec(-3i64..4, rank),
        )
            .prop_map(move |(word, c)| {
                let mut z = Weight::zero(rank);
                for (ci, a) in c.iter().zip(&simple) {
                    z += &(*ci * a);
                }
                AffineWeylElement {
                    w: WeylElement::from_word(word),
                    z,
                }
            })
    }

    fn case() -> impl Strategy<Value = (usize, AffineWeylElement, AffineWeylElement, AffineWeight, AffineWeight)> {
        (0..TYPES.len()).prop_flat_map(|i| {
            let rs = build_root_system(TYPES[i].0, TYPES[i].1).unwrap();
            let n = rs.rank;
            (Just(i), element(&rs), element(&rs), aw(n), aw(n))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn action_is_isometric_and_a_group_action((i, g1, g2, a, b) in case()) {
            let rs = build_root_system(TYPES[i].0, TYPES[i].1).unwrap();
            let ga = affine_weyl_apply(&rs, &g1, &a).unwrap();
            let gb = affine_weyl_apply(&rs, &g1, &b).unwrap();
            prop_assert_eq!(aip(&rs, &ga, &gb), aip(&rs, &a, &b));
            let lhs = affine_weyl_apply(&rs, &g1, &affine_weyl_apply(&rs, &g2, &a).unwrap()).unwrap();
            let rhs = affine_weyl_apply(&rs, &g1.compose(&rs, &g2), &a).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            let back = affine_weyl_apply(&rs, &g1.inverse(&rs), &ga).unwrap();
            prop_assert_eq!(&back, &a);
            // translations compose additively
            let t = translate(&rs, &g1.z, &translate(&rs, &g2.z, &a).unwrap()).unwrap();
            prop_assert_eq!(t, translate(&rs, &(&g1.z + &g2.z), &a).unwrap());
        }

        #[test]
        fn reduction_is_a_fixed_point((i, g, _h, a, _b) in case()) {
            let rs = build_root_system(TYPES[i].0, TYPES[i].1).unwrap();
            prop_assume!(a.k.is_positive());
            let (out, e) = affine_dominant_representative(&rs, &a).unwrap();
            prop_assert!(in_level_alcove(&rs, &out.lam, a.k.to_integer()));
            prop_assert_eq!(&affine_weyl_apply(&rs, &e, &a).unwrap(), &out);
            prop_assert_eq!(aip(&rs, &out, &out), aip(&rs, &a, &a));
            let moved = affine_weyl_apply(&rs, &g, &a).unwrap();
            prop_assert_eq!(affine_dominant_representative(&rs, &moved).unwrap().0, out.clone());
            prop_assert_eq!(affine_dominant_representative(&rs, &out).unwrap().0, out);
        }
    }
}
