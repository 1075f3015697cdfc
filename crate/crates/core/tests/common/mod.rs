#![allow(dead_code)]

use nielsen_core::abelian::{gcd, FgAbelianGroup, GroupHom};
use nielsen_core::IntMatrix;
use rand::Rng;

/// Every finite abelian group of order at most `bound`, in invariant-factor form.
pub fn abelian_groups_up_to(bound: i64) -> Vec<FgAbelianGroup> {
    fn extend(chain: &mut Vec<i64>, product: i64, bound: i64, out: &mut Vec<Vec<i64>>) {
        out.push(chain.clone());
        let step = chain.last().copied();
        let mut d = step.unwrap_or(2);
        while product * d <= bound {
            if step.is_none_or(|s| d % s == 0) {
                chain.push(d);
                extend(chain, product * d, bound, out);
                chain.pop();
            }
            d += 1;
        }
    }
    let mut lists = Vec::new();
    extend(&mut Vec::new(), 1, bound, &mut lists);
    lists.into_iter().map(|l| FgAbelianGroup::new(l).unwrap()).collect()
}

/// A random valid homomorphism: each generator goes to an element whose
/// order divides the generator's order.
pub fn random_hom<R: Rng>(rng: &mut R, domain: &FgAbelianGroup, codomain: &FgAbelianGroup, spread: i64) -> GroupHom {
    let cols: Vec<Vec<i64>> = domain
        .invariant_factors()
        .iter()
        .map(|&d| {
            let mut y: Vec<i64> = codomain
                .invariant_factors()
                .iter()
                .map(|&e| if e == 0 { rng.random_range(-spread..=spread) } else { rng.random_range(0..e) })
                .collect();
            if d != 0 {
                for (c, &e) in y.iter_mut().zip(codomain.invariant_factors()) {
                    // Torsion generators cannot reach free factors; within ℤ/e the
                    // order of c·k divides d once k carries the factor e/gcd(e, d).
                    if e == 0 {
                        *c = 0;
                    } else {
                        *c *= e / gcd(e, d);
                    }
                }
            }
            y
        })
        .collect();
    let m = IntMatrix::from_columns(&cols, codomain.num_generators()).unwrap();
    GroupHom::new(domain.clone(), codomain.clone(), m).unwrap()
}

/// A random matrix in `GL_k(ℤ)` built from elementary operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, k: usize, steps: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    if k < 2 {
        if k == 1 && rng.random_bool(0.5) {
            rows[0][0] = -1;
        }
        return IntMatrix::from_rows_with_cols(&rows, k).unwrap();
    }
    for _ in 0..steps {
        let i = rng.random_range(0..k);
        let mut j = rng.random_range(0..k);
        while j == i {
            j = rng.random_range(0..k);
        }
        match rng.random_range(0..3) {
            0 => rows.swap(i, j),
            1 => {
                let f = rng.random_range(-2..=2);
                let src = rows[j].clone();
                for (a, b) in rows[i].iter_mut().zip(src) {
                    *a += f * b;
                }
            }
            _ => rows[i].iter_mut().for_each(|a| *a = -*a),
        }
    }
    IntMatrix::from_rows_with_cols(&rows, k).unwrap()
}
