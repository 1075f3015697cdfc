use std::path::PathBuf;

use nielsen_core::immersion::{
    double_points, gamma_of_curve, h1_class, h2_class, rotation_number, FramedImmersedCurve, FramedImmersion,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shipped(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/curves").join(name);
    std::fs::read_to_string(path).unwrap()
}

/// Random polygons until one passes the genericity checks.
fn random_generic_curve(rng: &mut ChaCha8Rng, max_vertices: usize) -> FramedImmersedCurve {
    loop {
        let n = rng.random_range(3..=max_vertices);
        let vertices: Vec<[i64; 2]> = (0..n).map(|_| [rng.random_range(-1000..=1000), rng.random_range(-1000..=1000)]).collect();
        let heights: Vec<i64> = (0..n).map(|_| rng.random_range(-100_000..=100_000)).collect();
        let Ok(c) = FramedImmersedCurve::new(vertices, heights, 0) else { continue };
        if double_points(&c).is_ok() {
            return c;
        }
    }
}

/// Brute-force crossing count with floating point, independent of the exact code.
fn crossing_count_oracle(c: &FramedImmersedCurve) -> usize {
    let n = c.vertices.len();
    let p = |i: usize| [c.vertices[i % n][0] as f64, c.vertices[i % n][1] as f64];
    let mut count = 0;
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b, x, y) = (p(i), p(i + 1), p(j), p(j + 1));
            let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
            if orient(a, b, x) * orient(a, b, y) < 0.0 && orient(x, y, a) * orient(x, y, b) < 0.0 {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn shipped_curves() {
    let fig8 = FramedImmersedCurve::from_json(&shipped("fig8.json")).unwrap();
    let (h1, h2) = gamma_of_curve(&fig8).unwrap();
    assert_eq!((h1, h2.abs()), (1, 1));
    assert_eq!(rotation_number(&fig8).unwrap(), 0);

    let circle = FramedImmersedCurve::from_json(&shipped("circle.json")).unwrap();
    assert_eq!(gamma_of_curve(&circle).unwrap(), (0, 0));

    let double = FramedImmersedCurve::from_json(&shipped("double_fig8.json")).unwrap();
    assert_eq!(double_points(&double).unwrap().len(), 2);

    let two = FramedImmersion::from_json(&shipped("two_fig8.json")).unwrap();
    let (h1, h2) = two.gamma();
    assert_eq!(h1, 0);
    assert!(h2 == 0 || h2.abs() == 2);

    let star = FramedImmersedCurve::from_json(&shipped("pentagram.json")).unwrap();
    assert_eq!(rotation_number(&star).unwrap().abs(), 2);
    assert_eq!(double_points(&star).unwrap().len(), 5);
}

#[test]
fn whitney_parity_on_random_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let c = random_generic_curve(&mut rng, 24);
        let dp = double_points(&c).unwrap().len() as i64;
        assert_eq!((rotation_number(&c).unwrap() - 1 - dp).rem_euclid(2), 0);
        assert_eq!(dp as usize, crossing_count_oracle(&c));
        // With no twist, h₁ and h₂ agree mod 2.
        assert_eq!(i64::from(h1_class(&c).unwrap()), h2_class(&c).unwrap().rem_euclid(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_points_are_invariant_under_relabelling_and_motions(seed in any::<u64>(), shift in 0usize..24, dx in -500i64..500, dy in -500i64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_generic_curve(&mut rng, 16);
        let base = double_points(&c).unwrap();
        let count = base.len();
        let h2 = h2_class(&c).unwrap();
        let rot = rotation_number(&c).unwrap();
        for moved in [c.rotate_labels(shift), c.translated([dx, dy]), c.quarter_turn()] {
            prop_assert_eq!(double_points(&moved).unwrap().len(), count);
            prop_assert_eq!(h2_class(&moved).unwrap(), h2);
            prop_assert_eq!(rotation_number(&moved).unwrap(), rot);
        }
        let mut shifted: Vec<[f64; 2]> = double_points(&c.translated([dx, dy])).unwrap().iter().map(|d| d.point).collect();
        let mut expected: Vec<[f64; 2]> = base.iter().map(|d| [d.point[0] + dx as f64, d.point[1] + dy as f64]).collect();
        shifted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (p, q) in shifted.iter().zip(&expected) {
            prop_assert!((p[0] - q[0]).abs() < 1e-6 && (p[1] - q[1]).abs() < 1e-6);
        }
    }

    #[test]
    fn mirrored_heights_reverse_every_crossing(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_generic_curve(&mut rng, 16);
        let up = double_points(&c).unwrap();
        let down = double_points(&c.height_mirror()).unwrap();
        prop_assert_eq!(up.len(), down.len());
        for (u, d) in up.iter().zip(&down) {
            prop_assert_eq!(u.lower, 1 - d.lower);
            prop_assert_eq!(u.sign, -d.sign);
        }
        prop_assert_eq!(h2_class(&c).unwrap().abs(), h2_class(&c.height_mirror()).unwrap().abs());
    }

    #[test]
    fn embedded_curves_have_zero_h2(twist in -3i64..3, w in 1i64..50, h in 1i64..50) {
        let c = FramedImmersedCurve::new(vec![[0, 0], [w, 0], [w, h], [0, h]], vec![0, 1, 2, 3], twist).unwrap();
        let (h1, h2) = gamma_of_curve(&c).unwrap();
        prop_assert_eq!(h2, 0);
        prop_assert_eq!(i64::from(h1), (1 + twist + 1).rem_euclid(2));
    }
}
