//! Seeded random inputs for the validation sweeps.  The bound checks and
//! the corpus runner draw reproducible polynomials from a fixed-seed
//! ChaCha stream, so a reported violation can be replayed from its seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{PrimeField, Rationals};
use crate::poly::{BiPoly, UniPoly};

/// A reproducible generator: equal seeds give equal draws on every
/// platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform_coeffs(rng: &mut ChaCha8Rng, p: u64, width: usize) -> Vec<u64> {
    (0..width).map(|_| rng.random_range(0..p)).collect()
}

/// Uniform polynomial over `F_p` of exact degree `deg`.
pub fn random_unipoly_fp(
    rng: &mut ChaCha8Rng,
    field: &PrimeField,
    deg: usize,
) -> UniPoly<PrimeField> {
    let p = field.modulus();
    let mut coeffs = uniform_coeffs(rng, p, deg);
    coeffs.push(rng.random_range(1..p));
    UniPoly::new(field.clone(), coeffs)
}

/// Integer-coefficient polynomial over `Q` of exact degree `deg`, with
/// coefficients drawn from `[-bound, bound]`.
pub fn random_unipoly_q(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> UniPoly<Rationals> {
    assert!(bound >= 1);
    let mut coeffs: Vec<BigRational> = (0..deg)
        .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-bound..=bound))))
        .collect();
    let magnitude = rng.random_range(1..=bound);
    let lead = if rng.random_bool(0.5) { magnitude } else { -magnitude };
    coeffs.push(BigRational::from_integer(BigInt::from(lead)));
    UniPoly::new(Rationals, coeffs)
}

/// Content-free bivariate polynomial over `F_p` with `y`-degree in
/// `[2, max_deg_y]`, coefficient `x`-degrees at most `max_deg_x`, and
/// nonzero outer `y`-coefficients: the shape the criteria and the oracle
/// both expect.
pub fn random_content_free_bipoly(
    rng: &mut ChaCha8Rng,
    field: &PrimeField,
    max_deg_y: usize,
    max_deg_x: usize,
) -> BiPoly<PrimeField> {
    assert!(max_deg_y >= 2);
    let p = field.modulus();
    let width = max_deg_x + 1;
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let c = UniPoly::new(field.clone(), uniform_coeffs(rng, p, width));
        if !c.is_zero() {
            return c;
        }
    };
    let n = rng.random_range(2..=max_deg_y);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(nonzero(rng));
    for _ in 1..n {
        coeffs.push(UniPoly::new(field.clone(), uniform_coeffs(rng, p, width)));
    }
    coeffs.push(nonzero(rng));
    let f = BiPoly::new(field.clone(), coeffs);
    // dividing out the content keeps the outer coefficients nonzero
    f.primitive_part_y().expect("nonzero by construction").1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_seeds_replay_the_same_draws() {
        let field = PrimeField::new(3).unwrap();
        let mut a = seeded_rng(42);
        let mut b = seeded_rng(42);
        for _ in 0..50 {
            assert_eq!(
                random_content_free_bipoly(&mut a, &field, 4, 3),
                random_content_free_bipoly(&mut b, &field, 4, 3)
            );
        }
        let mut c = seeded_rng(43);
        let run_a: Vec<_> =
            (0..10).map(|_| random_content_free_bipoly(&mut a, &field, 4, 3)).collect();
        let run_c: Vec<_> =
            (0..10).map(|_| random_content_free_bipoly(&mut c, &field, 4, 3)).collect();
        assert_ne!(run_a, run_c);
    }

    #[test]
    fn bipoly_draws_satisfy_the_advertised_shape() {
        for p in [2, 5] {
            let field = PrimeField::new(p).unwrap();
            let mut rng = seeded_rng(7);
            for _ in 0..200 {
                let f = random_content_free_bipoly(&mut rng, &field, 4, 3);
                let n = f.deg_y_usize().unwrap();
                assert!((2..=4).contains(&n));
                assert!(f.deg_x().finite().unwrap() <= 3);
                assert!(!f.y_coeff(0).is_zero());
                assert!(f.is_content_free().unwrap());
            }
        }
    }

    #[test]
    fn unipoly_draws_have_exact_degree() {
        let field = PrimeField::new(5).unwrap();
        let mut rng = seeded_rng(11);
        for deg in 0..12 {
            let f = random_unipoly_fp(&mut rng, &field, deg);
            assert_eq!(f.degree_usize(), Some(deg));
            let g = random_unipoly_q(&mut rng, deg, 9);
            assert_eq!(g.degree_usize(), Some(deg));
            for c in g.coeffs() {
                assert!(c.denom() == &BigInt::from(1));
                assert!(c.numer().magnitude() <= &9u32.into());
            }
        }
    }
}
