//! Seeded random instances for law checking.
//!
//! Every function takes the generator explicitly, so a fixed seed gives a
//! fixed sequence of instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::contexts::FormalContext;
use crate::error::Result;
use crate::galois::{all_adjunctions, product_adjunction, right_adjoint, Adjunction};
use crate::order::enumerate::monotone_maps_bounded;
use crate::order::{MonotoneMap, Preorder};
use crate::polar::{polar_factorization, CommutingSquare};

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// A poset on `n` elements: random edges along a random linear order, closed
/// transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> Preorder {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let density = rng.gen_range(0.2..0.8);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i].to_string(), perm[j].to_string()));
            }
        }
    }
    Preorder::new(numbered(n), &pairs).expect("labels are distinct")
}

/// A preorder on `n` elements: random edges in any direction, closed.
pub fn random_preorder(rng: &mut impl Rng, n: usize) -> Preorder {
    let density = rng.gen_range(0.05..0.4);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(density) {
                pairs.push((i.to_string(), j.to_string()));
            }
        }
    }
    Preorder::new(numbered(n), &pairs).expect("labels are distinct")
}

/// A monotone map, built element by element in order of down-set size.
/// Falls back to a constant map if the greedy choice gets stuck.
pub fn random_monotone(rng: &mut impl Rng, src: &Preorder, tgt: &Preorder) -> MonotoneMap {
    assert!(!tgt.is_empty() || src.is_empty(), "no maps into the empty order");
    let mut order: Vec<usize> = (0..src.len()).collect();
    order.sort_by_key(|&x| (0..src.len()).filter(|&y| src.leq(y, x)).count());
    'attempt: for _ in 0..20 {
        let mut image: Vec<Option<usize>> = vec![None; src.len()];
        for &x in &order {
            let candidates: Vec<usize> = (0..tgt.len())
                .filter(|&y| {
                    (0..src.len()).all(|p| match image[p] {
                        Some(fp) => (!src.leq(p, x) || tgt.leq(fp, y)) && (!src.leq(x, p) || tgt.leq(y, fp)),
                        None => true,
                    })
                })
                .collect();
            match candidates.choose(rng) {
                Some(&y) => image[x] = Some(y),
                None => continue 'attempt,
            }
        }
        let image = image
            .into_iter()
            .map(|y| y.expect("every element assigned"))
            .collect();
        return MonotoneMap::new(src.clone(), tgt.clone(), image).expect("greedy choice is monotone");
    }
    MonotoneMap::constant(src, tgt, rng.gen_range(0..tgt.len())).expect("index in range")
}

/// A random poset with a least and a greatest element added.
pub fn random_bounded_poset(rng: &mut impl Rng, n: usize) -> Preorder {
    if n < 2 {
        return random_poset(rng, n);
    }
    let inner = random_poset(rng, n - 2);
    let (bottom, top) = (n - 2, n - 1);
    Preorder::from_matrix(
        numbered(n),
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        i == j || i == bottom || j == top || (i < bottom && j < bottom && inner.leq(i, j))
                    })
                    .collect()
            })
            .collect(),
    )
    .expect("bounded extension of a poset")
}

/// Maps enumerated per pair of carriers before falling back to sampling.
const ADJUNCTION_ENUMERATION_CAP: usize = 50_000;

/// An adjunction between random posets of size `1..=max_size`, sizes biased
/// toward the upper half. Half of the posets get a top and bottom added. The
/// left adjoint is drawn from the monotone maps that have a right adjoint,
/// weighted by the square of the number of closed elements so that large
/// axes are not swamped by near-constant maps.
pub fn random_adjunction(rng: &mut impl Rng, max_size: usize) -> Adjunction {
    fn size(rng: &mut impl Rng, max_size: usize) -> usize {
        let low = if rng.gen_bool(0.5) {
            max_size.div_ceil(2)
        } else {
            1
        };
        rng.gen_range(low..=max_size)
    }
    loop {
        let (n0, n1) = (size(rng, max_size), size(rng, max_size));
        let mut poset = |n| {
            if rng.gen_bool(0.5) {
                random_bounded_poset(rng, n)
            } else {
                random_poset(rng, n)
            }
        };
        let (a0, a1) = (poset(n0), poset(n1));
        match monotone_maps_bounded(&a0, &a1, ADJUNCTION_ENUMERATION_CAP) {
            Some(maps) => {
                let adjunctions: Vec<Adjunction> = maps.iter().filter_map(right_adjoint).collect();
                let weight = |g: &Adjunction| g.closed_elements().sub().len().pow(2);
                if let Ok(g) = adjunctions.choose_weighted(rng, weight) {
                    return g.clone();
                }
            }
            None => {
                for _ in 0..8 {
                    if let Some(g) = right_adjoint(&random_monotone(rng, &a0, &a1)) {
                        return g;
                    }
                }
            }
        }
    }
}

/// A `g × m` context with roughly `density` crosses.
pub fn random_context(rng: &mut impl Rng, g: usize, m: usize, density: f64) -> FormalContext {
    let incidence = (0..g)
        .map(|_| (0..m).map(|_| rng.gen_bool(density)).collect())
        .collect();
    FormalContext::new(
        (1..=g).map(|i| format!("g{i}")).collect(),
        (1..=m).map(|i| format!("m{i}")).collect(),
        incidence,
    )
    .expect("labels are distinct")
}

/// A strict square with a reflection on top and a coreflection below,
/// assembled around a random diagonal so that a fill exists.
pub fn random_fill_square(rng: &mut impl Rng, max_size: usize) -> CommutingSquare {
    loop {
        let e = polar_factorization(&random_adjunction(rng, max_size))
            .expect("posetal")
            .reflection;
        let m = polar_factorization(&random_adjunction(rng, max_size))
            .expect("posetal")
            .coreflection;
        let diagonals = all_adjunctions(e.target(), m.source());
        let Some(d) = diagonals.choose(rng) else { continue };
        let left = e.then(d).expect("composable");
        let right = d.then(&m).expect("composable");
        return CommutingSquare::new(e, m, left, right).expect("commutes by construction");
    }
}

/// The product of every edge of `sq` with the identity on `pad`.
pub fn pad_square(sq: &CommutingSquare, pad: &Preorder) -> Result<CommutingSquare> {
    let id = Adjunction::identity(pad);
    let times = |g: &Adjunction| product_adjunction(g, &id);
    CommutingSquare::new(
        times(sq.top()),
        times(sq.bottom()),
        times(sq.left()),
        times(sq.right()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..6 {
            assert!(random_poset(&mut rng, n).is_poset());
            let bounded = random_bounded_poset(&mut rng, n);
            assert!(bounded.is_poset());
            if n >= 2 {
                assert!((0..n).all(|x| bounded.leq(n - 2, x) && bounded.leq(x, n - 1)));
            }
            assert_eq!(random_preorder(&mut rng, n).len(), n);
        }
        for _ in 0..50 {
            let a = random_preorder(&mut rng, 4);
            let b = random_preorder(&mut rng, 3);
            let f = random_monotone(&mut rng, &a, &b);
            assert!(MonotoneMap::new(a, b, f.image().to_vec()).is_ok());
            let g = random_adjunction(&mut rng, 4);
            assert!(g.is_posetal());
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..10)
                .map(|_| random_adjunction(&mut rng, 5))
                .collect::<Vec<_>>()
        };
        assert_eq!(run(3), run(3));
    }

    #[test]
    fn fill_squares_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let sq = random_fill_square(&mut rng, 4);
            assert!(sq.top().classify().is_reflection);
            assert!(sq.bottom().classify().is_coreflection);
            assert!(pad_square(&sq, &Preorder::chain(2)).is_ok());
        }
    }
}
