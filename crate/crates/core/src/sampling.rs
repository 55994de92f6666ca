//! Seeded random inputs for the property batteries.

use hitchin_exact::rational::int;
use hitchin_exact::{discriminant, squarefree, PolyMat, UniPoly};
use rand::Rng;

use crate::correspondence::HiggsMatrix;
use crate::lie::{standard_basis, AlgebraDescriptor};

/// Polynomial of degree at most `max_degree` with integer coefficients in
/// `-bound..=bound`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, max_degree: usize, bound: i64) -> UniPoly {
    let deg = rng.gen_range(0..=max_degree);
    UniPoly::new((0..=deg).map(|_| int(rng.gen_range(-bound..=bound))).collect())
}

/// `sum_k f_k(w) B_k` over the standard basis, with random coefficients of
/// degree at most `max_degree`.
pub fn random_algebra_element<R: Rng + ?Sized>(rng: &mut R, d: AlgebraDescriptor, max_degree: usize) -> PolyMat {
    let basis = standard_basis(d);
    let size = d.matrix_size();
    basis.elements.iter().fold(PolyMat::zeros(size, size), |acc, b| {
        let f = random_poly(rng, max_degree, 3);
        acc.add(&b.to_poly().scale(&f))
    })
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: usize) -> PolyMat {
    PolyMat::from_fn(n, n, |_, _| random_poly(rng, max_degree, 3))
}

/// Rejection-samples a matrix whose spectral curve is affinely smooth
/// (nonzero squarefree discriminant). Returns the matrix and the number of
/// draws it took.
pub fn smooth_higgs<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_degree: usize,
    max_tries: usize,
) -> Option<(HiggsMatrix, usize)> {
    (1..=max_tries).find_map(|tries| {
        let h = HiggsMatrix::new(random_matrix(rng, n, max_degree)).ok()?;
        let disc = discriminant(h.char_poly());
        (!disc.is_zero() && squarefree(&disc).unwrap_or(false)).then_some((h, tries))
    })
}
