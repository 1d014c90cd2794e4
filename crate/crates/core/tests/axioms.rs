//! Functorial properties of Z on random presentations, beyond the acceptance suites.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetatqft::cobordism::{interface_operator, tensor, FramedCobordism};
use thetatqft::mcg::ExtendedMappingClass;
use thetatqft::verify::{check_gluing_axiom, random_class, random_cobordism};
use thetatqft::{ExactOperator, Scalar};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn side_by_side_presentation_is_a_connected_sum() {
    let mut r = rng(11);
    for level in [2u32, 4] {
        for _ in 0..6 {
            let m = random_cobordism(&mut r, &[1], &[1], 2, 1, true).unwrap();
            let m2 = random_cobordism(&mut r, &[], &[1], 1, 0, true).unwrap();
            let both = m.juxtapose(&m2).unwrap();
            let expect: ExactOperator = tensor(&[m.z_matrix(level).unwrap(), m2.z_matrix(level).unwrap()]).scale(&Scalar::level_pow_half(level, 1));
            assert_eq!(both.z_matrix(level).unwrap(), expect);
        }
    }
}

#[test]
fn gluing_is_associative() {
    let mut r = rng(12);
    for level in [2u32, 4] {
        for _ in 0..5 {
            let a = random_cobordism(&mut r, &[1], &[1], 1, 0, true).unwrap();
            let b = random_cobordism(&mut r, &[1], &[2], 1, 1, true).unwrap();
            let c = random_cobordism(&mut r, &[2], &[1], 2, 0, true).unwrap();
            let left = a.glue(&b, None).unwrap().glue(&c, None).unwrap();
            let right = a.glue(&b.glue(&c, None).unwrap(), None).unwrap();
            assert_eq!(left.z_matrix(level).unwrap(), right.z_matrix(level).unwrap());
            // markings on the two sides of an interface differ, so V(id) is a change of Lagrangian
            let v = |lo: &FramedCobordism, up: &FramedCobordism| {
                let ids: Vec<_> = lo.top().genera().iter().map(|&g| ExtendedMappingClass::identity(g, 0)).collect();
                interface_operator(&ids, lo.top(), up.bottom(), level).unwrap()
            };
            let product = [v(&a, &b), b.z_matrix(level).unwrap(), v(&b, &c), c.z_matrix(level).unwrap()]
                .iter()
                .fold(a.z_matrix(level).unwrap(), |acc, m| m.mul(&acc).unwrap());
            assert_eq!(left.z_matrix(level).unwrap(), product);
        }
    }
}

#[test]
fn blowing_up_a_cobordism_presentation_leaves_z_unchanged() {
    let mut r = rng(13);
    for level in [2u32, 4, 6] {
        let m = random_cobordism(&mut r, &[1], &[1], 2, 1, true).unwrap();
        let z = m.z_matrix(level).unwrap();
        for sign in [1, -1] {
            let mut blown = m.clone();
            blown.set_link(m.link().kirby_k1(sign).unwrap()).unwrap();
            assert_eq!(blown.z_matrix(level).unwrap(), z);
        }
    }
}

#[test]
fn mapping_cylinder_glued_on_top_acts_by_its_representation() {
    let mut r = rng(14);
    for level in [2u32, 4] {
        for _ in 0..4 {
            let m = random_cobordism(&mut r, &[1], &[1], 2, 0, false).unwrap();
            let h = random_class(&mut r, 1, 3, 0).unwrap();
            let cyl = FramedCobordism::identity_cylinder(&[1], 0);
            // gluing a plain cylinder along h is the mapping cylinder
            assert!(check_gluing_axiom(&m, &cyl, std::slice::from_ref(&h), level).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gluing_axiom_on_random_pairs(seed in 0u64..1_000_000, level in prop::sample::select(vec![2u32, 4])) {
        let mut r = rng(seed);
        let m = random_cobordism(&mut r, &[1], &[1, 1], 2, 1, true).unwrap();
        let u = random_cobordism(&mut r, &[1, 1], &[], 2, 0, true).unwrap();
        let h = vec![random_class(&mut r, 1, 3, 1).unwrap(), random_class(&mut r, 1, 3, -1).unwrap()];
        prop_assert!(check_gluing_axiom(&m, &u, &h, level).unwrap());
    }

    #[test]
    fn representation_is_unitary(seed in 0u64..1_000_000, level in prop::sample::select(vec![2u32, 4, 6])) {
        let mut r = rng(seed);
        let f = random_class(&mut r, 2, 4, 2).unwrap().rep_f(level).unwrap();
        let id = f.adjoint().mul(&f).unwrap();
        for i in 0..id.rows() {
            for j in 0..id.cols() {
                let e = if i == j { Scalar::one_at(level) } else { Scalar::zero_at(level) };
                prop_assert_eq!(&id[(i, j)], &e);
            }
        }
    }
}
