use std::collections::BTreeMap;

use hitchin_core::correspondence::SpectralAlgebra;
use hitchin_core::divisors::{fiber_divisor, fiber_points, norm, sigma_divisor, BaseDivisor, Divisor, SpectralPoint};
use hitchin_exact::rational::int;
use hitchin_exact::{BiPoly, Rational, SpectralPolynomial, UniPoly};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A cover that splits into sections `eta = r_i(w)`.
struct Fixture {
    algebra: SpectralAlgebra,
    roots: Vec<UniPoly>,
}

fn split_cover(roots: Vec<UniPoly>) -> Fixture {
    let product = roots.iter().fold(BiPoly::from_uni(UniPoly::one()), |acc, r| {
        &acc * &(&BiPoly::eta() - &BiPoly::from_uni(r.clone()))
    });
    let p = SpectralPolynomial::from_bipoly(&product).unwrap();
    Fixture {
        algebra: SpectralAlgebra::new(p),
        roots,
    }
}

fn linear<R: Rng>(rng: &mut R) -> UniPoly {
    UniPoly::from_ints(&[rng.gen_range(-4..=4), rng.gen_range(-3..=3)])
}

/// Fifty covers of degree 2 to 4; every fourth one is symmetric under
/// `eta -> -eta`.
fn fixtures() -> Vec<Fixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    (0..50)
        .map(|k| {
            let degree: usize = 2 + k % 3;
            if k % 4 == 0 {
                let half: Vec<UniPoly> = (0..degree.div_ceil(2)).map(|_| linear(&mut rng)).collect();
                let roots = half.iter().flat_map(|r| [r.clone(), -r]).collect();
                split_cover(roots)
            } else {
                split_cover((0..degree).map(|_| linear(&mut rng)).collect())
            }
        })
        .collect()
}

fn sorted_values(roots: &[UniPoly], w0: &Rational) -> Vec<Rational> {
    let mut v: Vec<Rational> = roots.iter().map(|r| r.eval(w0)).collect();
    v.sort();
    v
}

#[test]
fn norm_of_a_fibre_is_degree_times_the_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for f in fixtures() {
        let n = f.roots.len() as i64;
        for _ in 0..3 {
            let w0 = int(rng.gen_range(-6..=6));
            let report = fiber_points(&f.algebra, &w0);
            let mut found: Vec<Rational> = report
                .points
                .iter()
                .flat_map(|(p, m)| std::iter::repeat_n(p.eta.clone(), *m))
                .collect();
            found.sort();
            assert_eq!(found, sorted_values(&f.roots, &w0));
            let fibre = fiber_divisor(&f.algebra, &w0).unwrap();
            assert_eq!(fibre.degree(), n);
            assert_eq!(norm(&fibre), BaseDivisor::single(w0, n));
        }
    }
}

fn random_divisor<R: Rng>(rng: &mut R, f: &Fixture) -> Divisor {
    let terms = (0..rng.gen_range(1..=5)).map(|_| {
        let w0 = int(rng.gen_range(-5..=5));
        let r = &f.roots[rng.gen_range(0..f.roots.len())];
        (SpectralPoint::new(w0.clone(), r.eval(&w0)), rng.gen_range(-3..=3))
    });
    Divisor::new(f.algebra.clone(), terms.collect::<Vec<_>>()).unwrap()
}

#[test]
fn norm_preserves_degree_and_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for f in fixtures() {
        for _ in 0..4 {
            let a = random_divisor(&mut rng, &f);
            let b = random_divisor(&mut rng, &f);
            assert_eq!(norm(&a).degree(), a.degree());
            let mut merged: BTreeMap<Rational, i64> = norm(&a).support().clone();
            for (w, m) in norm(&b).support() {
                *merged.entry(w.clone()).or_insert(0) += m;
            }
            merged.retain(|_, m| *m != 0);
            assert_eq!(norm(&a.add(&b).unwrap()).support(), &merged);
        }
    }
}

#[test]
fn norm_is_sigma_invariant_on_symmetric_covers() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let symmetric: Vec<Fixture> = fixtures().into_iter().filter(|f| f.algebra.has_sigma()).collect();
    assert!(symmetric.len() >= 13);
    for f in &symmetric {
        for _ in 0..4 {
            let d = random_divisor(&mut rng, f);
            let mirrored = sigma_divisor(&d).unwrap();
            assert_eq!(norm(&mirrored), norm(&d));
            assert_eq!(mirrored.degree(), d.degree());
            assert_eq!(sigma_divisor(&mirrored).unwrap(), d);
        }
    }
}
