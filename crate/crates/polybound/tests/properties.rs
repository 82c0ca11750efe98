//! Randomized algebraic laws, plus a brute-force cross-check of the
//! search-based factor oracle that shares none of its machinery: candidate
//! pairs are enumerated wholesale and compared by multiplication alone.

use proptest::prelude::*;
use rand::Rng;

use polybound::factor::{factor_uni, FactorMultiset, Factorable};
use polybound::field::{Field, PrimeField, Rationals};
use polybound::newton::{build_polygon, merge_slopes, root_location};
use polybound::oracle::{oracle_count, oracle_factor_fp, OracleBudget};
use polybound::parse::{format_bi, format_uni, parse_bi, parse_uni};
use polybound::poly::{BiPoly, UniPoly};
use polybound::sweep::seeded_rng;

fn small_field() -> impl Strategy<Value = PrimeField> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
        .prop_map(|p| PrimeField::new(p).unwrap())
}

fn rational() -> impl Strategy<Value = <Rationals as Field>::Elem> {
    (-9i64..=9, 1i64..=9).prop_map(|(num, den)| {
        let inv = Rationals.inv(&Rationals.from_int(den)).unwrap();
        Rationals.mul(&Rationals.from_int(num), &inv)
    })
}

fn fp_unipoly_in(field: PrimeField, max_deg: usize) -> impl Strategy<Value = UniPoly<PrimeField>> {
    let p = field.modulus() as i64;
    proptest::collection::vec(0..p, 1..=max_deg + 1)
        .prop_map(move |ints| UniPoly::from_ints(field.clone(), &ints))
}

fn fp_unipoly_pair(max_deg: usize) -> impl Strategy<Value = (UniPoly<PrimeField>, UniPoly<PrimeField>)> {
    small_field().prop_flat_map(move |field| {
        (fp_unipoly_in(field.clone(), max_deg), fp_unipoly_in(field, max_deg))
    })
}

fn fp_bipoly_in(
    field: PrimeField,
    max_n: usize,
    max_dx: usize,
) -> impl Strategy<Value = BiPoly<PrimeField>> {
    let coeff = {
        let field = field.clone();
        let p = field.modulus() as i64;
        proptest::collection::vec(0..p, 1..=max_dx + 1)
            .prop_map(move |ints| UniPoly::from_ints(field.clone(), &ints))
    };
    proptest::collection::vec(coeff, 1..=max_n + 1)
        .prop_map(move |coeffs| BiPoly::new(field.clone(), coeffs))
}

fn fp_bipoly_pair(
    max_n: usize,
    max_dx: usize,
) -> impl Strategy<Value = (BiPoly<PrimeField>, BiPoly<PrimeField>)> {
    small_field().prop_flat_map(move |field| {
        (fp_bipoly_in(field.clone(), max_n, max_dx), fp_bipoly_in(field, max_n, max_dx))
    })
}

fn reconstruct<F: Factorable>(field: F, parts: &FactorMultiset<F>) -> UniPoly<F> {
    let mut acc = UniPoly::constant(field, parts.unit().clone());
    for (q, e) in parts.factors() {
        acc = acc.mul(&q.pow(*e));
    }
    acc
}

proptest! {
    #[test]
    fn field_axioms_hold_mod_p(p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)],
                               a in 0u64..7, b in 0u64..7, c in 0u64..7) {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c) = (f.from_int(a as i64), f.from_int(b as i64), f.from_int(c as i64));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.sub(&a, &a), f.zero());
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn field_axioms_hold_over_q(a in rational(), b in rational(), c in rational()) {
        let f = Rationals;
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn degree_adds_under_multiplication((f, g) in fp_unipoly_pair(5)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!(f.mul(&g).degree(), f.degree() + g.degree());
    }

    #[test]
    fn division_leaves_a_small_remainder((f, d) in fp_unipoly_pair(5)) {
        prop_assume!(!d.is_zero());
        let (q, r) = f.divrem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), f);
        prop_assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both_and_is_monic((f, g) in fp_unipoly_pair(5)) {
        prop_assume!(!f.is_zero() || !g.is_zero());
        let d = UniPoly::gcd(&f, &g).unwrap();
        prop_assert!(d.leading().map_or(false, |c| d.field().is_one(c)));
        prop_assert!(f.exact_div(&d).is_some() || f.is_zero());
        prop_assert!(g.exact_div(&d).is_some() || g.is_zero());
    }

    #[test]
    fn content_multiplies((f, g) in fp_bipoly_pair(3, 2)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lhs = f.mul(&g).content_y().unwrap();
        let rhs = f.content_y().unwrap().mul(&g.content_y().unwrap()).monic().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mirror_is_an_involution((f, _) in fp_bipoly_pair(4, 2)) {
        prop_assume!(!f.y_coeff(0).is_zero());
        prop_assert_eq!(f.reciprocal_y().unwrap().reciprocal_y().unwrap(), f);
    }

    #[test]
    fn mirror_distributes_over_products((f, g) in fp_bipoly_pair(3, 2)) {
        prop_assume!(!f.y_coeff(0).is_zero() && !g.y_coeff(0).is_zero());
        let lhs = f.mul(&g).reciprocal_y().unwrap();
        prop_assert_eq!(lhs, f.reciprocal_y().unwrap().mul(&g.reciprocal_y().unwrap()));
    }

    #[test]
    fn monicization_fixes_the_leading_coefficient((f, _) in fp_bipoly_pair(4, 2)) {
        prop_assume!(f.deg_y_usize().map_or(false, |n| n >= 1));
        let m = f.monicize().unwrap();
        prop_assert_eq!(m.deg_y(), f.deg_y());
        prop_assert!(m.leading_y().unwrap().is_one());
    }

    #[test]
    fn factor_counts_add_over_products((f, g) in fp_unipoly_pair(5)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let total = factor_uni(&f.mul(&g)).unwrap().nu();
        let parts = factor_uni(&f).unwrap().nu() + factor_uni(&g).unwrap().nu();
        prop_assert_eq!(total, parts);
    }

    #[test]
    fn fp_factorization_reconstructs((f, _) in fp_unipoly_pair(6)) {
        prop_assume!(!f.is_zero());
        let parts = factor_uni(&f).unwrap();
        prop_assert_eq!(reconstruct(f.field().clone(), &parts), f);
    }

    #[test]
    fn q_factorization_reconstructs(ints in proptest::collection::vec(-3i64..=3, 1..=6)) {
        let f = UniPoly::from_ints(Rationals, &ints);
        prop_assume!(!f.is_zero());
        let parts = factor_uni(&f).unwrap();
        prop_assert_eq!(reconstruct(Rationals, &parts), f);
        for (q, _) in parts.factors() {
            prop_assert_eq!(factor_uni(q).unwrap().nu(), 1);
        }
    }

    #[test]
    fn printing_then_parsing_is_the_identity_fp((f, _) in fp_bipoly_pair(3, 2)) {
        let text = format_bi(&f, ("x", "y"));
        let back = parse_bi(&text, f.field().clone(), ("x", "y")).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn printing_then_parsing_is_the_identity_q(ints in proptest::collection::vec(-9i64..=9, 1..=7)) {
        let f = UniPoly::from_ints(Rationals, &ints);
        let text = format_uni(&f, "x");
        prop_assert_eq!(parse_uni(&text, Rationals, "x").unwrap(), f);
    }

    #[test]
    fn parsing_never_panics(s in ".{0,40}") {
        let _ = parse_uni(&s, Rationals, "x");
        let _ = parse_bi(&s, PrimeField::new(5).unwrap(), ("x", "y"));
    }

    #[test]
    fn product_polygons_merge_slopes((f, g) in fp_bipoly_pair(3, 2)) {
        prop_assume!(!f.y_coeff(0).is_zero() && !g.y_coeff(0).is_zero());
        prop_assume!(f.deg_y_usize().unwrap() >= 1 && g.deg_y_usize().unwrap() >= 1);
        let merged = merge_slopes(
            &build_polygon(&f).unwrap().slope_multiset(),
            &build_polygon(&g).unwrap().slope_multiset(),
        );
        prop_assert_eq!(build_polygon(&f.mul(&g)).unwrap().slope_multiset(), merged);
    }

    #[test]
    fn a_strict_interior_peak_pins_the_root_split(
        n in 2usize..=5,
        j_seed in 1usize..=4,
        d in 1usize..=3,
        mids in proptest::collection::vec(proptest::option::of(0usize..3), 6),
    ) {
        let j = 1 + j_seed % (n - 1).max(1);
        let j = j.min(n - 1);
        let x_power = |e: usize| {
            let mut ints = vec![0i64; e];
            ints.push(1);
            UniPoly::from_ints(Rationals, &ints)
        };
        let coeffs: Vec<_> = (0..=n)
            .map(|i| {
                if i == 0 || i == n {
                    UniPoly::one(Rationals)
                } else if i == j {
                    x_power(d)
                } else {
                    match mids[i] {
                        Some(e) if e < d => x_power(e),
                        _ => UniPoly::zero(Rationals),
                    }
                }
            })
            .collect();
        let f = BiPoly::new(Rationals, coeffs);
        let loc = root_location(&f).unwrap();
        prop_assert_eq!((loc.inside, loc.boundary, loc.outside), (j as u32, 0, (n - j) as u32));
    }

    #[test]
    fn oracle_output_reconstructs_and_is_fully_split((f, _) in fp_bipoly_pair(3, 2)) {
        prop_assume!(f.field().modulus() <= 3);
        prop_assume!(f.deg_y_usize().map_or(false, |n| n >= 1));
        let budget = OracleBudget::default();
        let split = oracle_factor_fp(&f, &budget).unwrap();
        prop_assert_eq!(split.reconstruct(), f);
        for (q, _) in split.factors() {
            prop_assert_eq!(oracle_count(q, &budget).unwrap(), 1);
        }
    }
}

/// Every polynomial over F_2 with unit coefficients up to the given x-degree
/// cap, indexed by bitmask; index 0 is the zero polynomial.
fn f2_pool(max_dx: usize) -> Vec<UniPoly<PrimeField>> {
    let field = PrimeField::new(2).unwrap();
    (0u64..1 << (max_dx + 1))
        .map(|mask| {
            let ints: Vec<i64> = (0..=max_dx).map(|i| ((mask >> i) & 1) as i64).collect();
            UniPoly::from_ints(field.clone(), &ints)
        })
        .collect()
}

/// All bivariate polynomials of exact main degree `dy` whose coefficients
/// come from `pool`; the leading coefficient is kept nonzero.
fn f2_bipolys(dy: usize, pool: &[UniPoly<PrimeField>]) -> Vec<BiPoly<PrimeField>> {
    let field = pool[0].field().clone();
    let nonzero: Vec<_> = pool.iter().filter(|u| !u.is_zero()).cloned().collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; dy];
    'all: loop {
        for lead in &nonzero {
            let mut coeffs: Vec<_> = idx.iter().map(|&i| pool[i].clone()).collect();
            coeffs.push(lead.clone());
            out.push(BiPoly::new(field.clone(), coeffs));
        }
        let mut pos = 0;
        loop {
            if pos == dy {
                break 'all;
            }
            idx[pos] += 1;
            if idx[pos] < pool.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
    out
}

/// True iff some pair of factors, both of positive main degree, multiplies
/// back to `f`.  Plain enumeration; deliberately shares nothing with the
/// oracle's divisor pruning or its solved quartic path.
fn naive_y_split_exists(f: &BiPoly<PrimeField>, pool: &[UniPoly<PrimeField>]) -> bool {
    let n = f.deg_y_usize().expect("positive main degree");
    for dg in 1..=n / 2 {
        let gs = f2_bipolys(dg, pool);
        let hs = f2_bipolys(n - dg, pool);
        for g in &gs {
            for h in &hs {
                if g.mul(h) == *f {
                    return true;
                }
            }
        }
    }
    false
}

fn oracle_piece_count(f: &BiPoly<PrimeField>) -> u32 {
    let split = oracle_factor_fp(f, &OracleBudget::default()).unwrap();
    split.factors().iter().map(|(_, e)| *e).sum()
}

#[test]
fn oracle_agrees_with_exhaustive_search_on_all_small_quadratics() {
    let pool = f2_pool(1);
    for f in f2_bipolys(2, &pool) {
        if f.y_coeff(0).is_zero() {
            continue;
        }
        let naive = naive_y_split_exists(&f, &pool);
        let oracle = oracle_piece_count(&f) >= 2;
        assert_eq!(oracle, naive, "split detection disagrees on {f:?}");
    }
}

#[test]
fn oracle_agrees_with_exhaustive_search_on_random_cubics() {
    let field = PrimeField::new(2).unwrap();
    let pool = f2_pool(2);
    let mut rng = seeded_rng(0xFACADE);
    let mut draw_coeff = |nonzero: bool| loop {
        let ints: Vec<i64> = (0..3).map(|_| rng.random_range(0..2)).collect();
        let u = UniPoly::from_ints(field.clone(), &ints);
        if !nonzero || !u.is_zero() {
            return u;
        }
    };
    for _ in 0..20 {
        let coeffs = vec![draw_coeff(true), draw_coeff(false), draw_coeff(false), draw_coeff(true)];
        let f = BiPoly::new(field.clone(), coeffs);
        let naive = naive_y_split_exists(&f, &pool);
        let oracle = oracle_piece_count(&f) >= 2;
        assert_eq!(oracle, naive, "split detection disagrees on {f:?}");
    }
}
