mod common;

use nielsen_core::abelian::{FgAbelianGroup, GroupHom};
use nielsen_core::orientation::{
    class_coefficients, coefficient_group_abelian, coefficient_group_class, AbelianOrientationData, Coefficients,
    FiniteOrientationData,
};
use nielsen_core::reidemeister::{reidemeister_orbits, FiniteGroupTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn class_criterion_agrees_with_abelian_criterion() {
    let groups = common::abelian_groups_up_to(24);
    let z2 = FgAbelianGroup::cyclic(2);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for target in &groups {
        for _ in 0..4 {
            let source = &groups[rng.random_range(0..groups.len())];
            let data = AbelianOrientationData::new(
                common::random_hom(&mut rng, source, &z2, 1),
                common::random_hom(&mut rng, source, &z2, 1),
                common::random_hom(&mut rng, source, target, 3),
                common::random_hom(&mut rng, source, target, 3),
            )
            .unwrap();
            let expected = coefficient_group_abelian(&data);
            let finite = FiniteOrientationData::from_abelian(&data).unwrap();
            for theta in 0..finite.pi1_n.order() {
                assert_eq!(coefficient_group_class(&finite, theta).unwrap(), expected, "{target}, theta {theta}");
            }
        }
    }
}

#[test]
fn symmetric_group_example() {
    let (s3, perms) = FiniteGroupTable::symmetric(3);
    let z2 = FiniteGroupTable::from_abelian(&FgAbelianGroup::cyclic(2)).unwrap();
    let t = perms.iter().position(|p| p == &vec![1, 0, 2]).unwrap();
    let d = FiniteOrientationData::from_generators(z2, s3, Some(vec![1]), &[t], &[t], &[1], &[0]).unwrap();
    let classes = class_coefficients(&d);
    assert_eq!(classes.len(), 4);
    for c in &classes {
        // ℤ/2 exactly where θ commutes with the transposition.
        let commutes = d.pi1_n.mul(t, c.representative) == d.pi1_n.mul(c.representative, t);
        assert_eq!(c.coefficients == Coefficients::Z2, commutes);
    }
}

#[test]
fn coefficients_are_constant_on_reidemeister_classes() {
    let (s4, perms) = FiniteGroupTable::symmetric(4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sign = |p: &Vec<usize>| (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count() % 2;
    let signs: Vec<u8> = perms.iter().map(|p| sign(p) as u8).collect();
    for _ in 0..30 {
        // π₁(M) = S₄ with f₁ = conjugation by c₁, f₂ = conjugation by c₂, and w₁ either the sign or trivial.
        let (c1, c2) = (rng.random_range(0..24), rng.random_range(0..24));
        let conj = |c: usize, x: usize| s4.mul(s4.mul(c, x), s4.inv(c));
        let gens = s4.generating_set();
        let f1: Vec<usize> = gens.iter().map(|&g| conj(c1, g)).collect();
        let f2: Vec<usize> = gens.iter().map(|&g| conj(c2, g)).collect();
        let w_m: Vec<u8> = gens.iter().map(|&g| if rng.random_bool(0.5) { signs[g] } else { 0 }).collect();
        let w_m_ok = {
            // Keep w_M a homomorphism: either the sign or zero on all generators.
            if w_m.iter().zip(&gens).all(|(&w, &g)| w == signs[g]) { w_m.clone() } else { vec![0; gens.len()] }
        };
        let w_n: Vec<u8> = gens.iter().map(|&g| signs[g]).collect();
        let d = FiniteOrientationData::from_generators(
            s4.clone(),
            s4.clone(),
            Some(gens.clone()),
            &f1,
            &f2,
            &w_m_ok,
            &w_n,
        )
        .unwrap();
        for orbit in reidemeister_orbits(&d.twisted_data()) {
            let first = coefficient_group_class(&d, orbit[0]).unwrap();
            for &theta in &orbit {
                assert_eq!(coefficient_group_class(&d, theta).unwrap(), first);
            }
        }
    }
}

#[test]
fn rejects_non_homomorphic_generator_images() {
    let z4 = FiniteGroupTable::from_abelian(&FgAbelianGroup::cyclic(4)).unwrap();
    let z2 = FiniteGroupTable::from_abelian(&FgAbelianGroup::cyclic(2)).unwrap();
    // The generator of ℤ/2 has order 2 but 1 ∈ ℤ/4 has order 4.
    assert!(FiniteOrientationData::from_generators(z2, z4, Some(vec![1]), &[1], &[0], &[0], &[0]).is_err());
    let z = FgAbelianGroup::integers();
    let w = GroupHom::from_rows(z.clone(), FgAbelianGroup::cyclic(2), &[vec![1]]).unwrap();
    let id = GroupHom::identity(&z);
    let d = AbelianOrientationData::new(w.clone(), w, id.clone(), id).unwrap();
    // ℤ is infinite; the table form is unavailable.
    assert!(FiniteOrientationData::from_abelian(&d).is_err());
}
