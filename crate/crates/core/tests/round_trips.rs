use hitchin_core::correspondence::{
    eigenline, ideal_sigma_test, pushforward_line, pushforward_rank2, FractionalIdeal, Rank2Module, SigmaClass,
    SpectralAlgebra,
};
use hitchin_core::sampling::{random_poly, smooth_higgs};
use hitchin_exact::{char_poly, PolyMat, SpectralPolynomial, UniPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn eigenline_then_pushforward_preserves_spectrum_and_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=4 {
        for _ in 0..100 {
            let (higgs, _) = smooth_higgs(&mut rng, n, 3, 50).expect("smooth sample");
            let once = pushforward_line(&eigenline(&higgs).unwrap()).unwrap().higgs;
            assert_eq!(&char_poly(once.phi()).unwrap(), higgs.char_poly());
            let twice = pushforward_line(&eigenline(&once).unwrap()).unwrap().higgs;
            assert_eq!(twice, once, "n = {n}");
        }
    }
}

#[test]
fn free_module_pushes_to_companion_up_to_degree_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=6 {
        for _ in 0..4 {
            let p = SpectralPolynomial::from_ascending((0..n).map(|_| random_poly(&mut rng, 3, 4)).collect()).unwrap();
            let model = pushforward_line(&FractionalIdeal::unit(SpectralAlgebra::new(p.clone()))).unwrap();
            assert_eq!(model.higgs.phi(), &p.companion());
        }
    }
}

#[test]
fn rank_two_pushforward_squares_the_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for m in 1..=3 {
        for _ in 0..5 {
            let p = SpectralPolynomial::from_ascending((0..m).map(|_| random_poly(&mut rng, 2, 3)).collect()).unwrap();
            let a = SpectralAlgebra::new(p.clone());
            let g: Vec<UniPoly> = (0..m).map(|_| random_poly(&mut rng, 1, 2)).collect();
            let second = FractionalIdeal::new(a.clone(), vec![g, a.eta_power(0)]).unwrap();
            let h = pushforward_rank2(&Rank2Module::new(FractionalIdeal::unit(a), second).unwrap()).unwrap();
            let b = p.to_bipoly();
            assert_eq!(h.char_poly(), &SpectralPolynomial::from_bipoly(&(&b * &b)).unwrap());
        }
    }
}

/// Coordinates of the sigma-images of one basis in another.
fn change_of_basis(from: &PolyMat, to: &PolyMat) -> PolyMat {
    let n = to.rows();
    let mut out = PolyMat::zeros(n, n);
    for k in 0..n {
        let mut rest: Vec<UniPoly> = from.row(k).to_vec();
        for j in 0..n {
            let c = rest[j].exact_div(to.get(j, j)).expect("basis of the same module");
            for (i, r) in rest.iter_mut().enumerate() {
                *r = &*r - &(&c * to.get(j, i));
            }
            out.set(j, k, c);
        }
    }
    out
}

#[test]
fn sigma_is_natural_on_even_curves() {
    // eta^4 + w eta^2 + w^3 and eta^2 - w
    let w = UniPoly::var();
    let quartic = SpectralAlgebra::new(
        SpectralPolynomial::from_ascending(vec![w.pow(3), UniPoly::zero(), w.clone(), UniPoly::zero()]).unwrap(),
    );
    let quadratic = SpectralAlgebra::new(SpectralPolynomial::from_ascending(vec![-&w, UniPoly::zero()]).unwrap());
    let cases = vec![
        FractionalIdeal::new(
            quartic.clone(),
            vec![vec![-&w, UniPoly::one()], vec![w.pow(2), UniPoly::zero()]],
        )
        .unwrap(),
        FractionalIdeal::new(
            quartic.clone(),
            vec![vec![UniPoly::one(), UniPoly::one(), UniPoly::one()]],
        )
        .unwrap(),
        FractionalIdeal::new(quadratic.clone(), vec![vec![w.clone(), UniPoly::from_ints(&[1, 1])]]).unwrap(),
    ];
    for ideal in cases {
        let a = ideal.algebra();
        let model = pushforward_line(&ideal).unwrap();
        let mirrored = ideal.sigma().unwrap();
        let mirrored_model = pushforward_line(&mirrored).unwrap();
        // sigma(b_k) expressed in the Hermite basis of sigma(I)
        let images =
            PolyMat::from_rows((0..a.degree()).map(|k| a.sigma(model.basis.row(k)).unwrap()).collect()).unwrap();
        let p = change_of_basis(&images, &mirrored_model.basis);
        // eta acts on the sigma-images by -phi
        assert_eq!(
            mirrored_model.higgs.phi().mul(&p),
            p.mul(model.higgs.phi()).neg(),
            "{}",
            ideal.algebra().polynomial()
        );
    }
}

#[test]
fn sigma_classification_fixture() {
    let w = UniPoly::var();
    let quartic = SpectralAlgebra::new(
        SpectralPolynomial::from_ascending(vec![w.pow(3), UniPoly::zero(), w.clone(), UniPoly::zero()]).unwrap(),
    );
    // Supported at the node of the curve: I * sigma(I) = (eta^2 - w^2, w^3, w^2 eta)
    // has colength 5, so no pairing exists.
    let ideal = FractionalIdeal::new(
        quartic,
        vec![vec![-&w, UniPoly::one()], vec![w.pow(2), UniPoly::zero()]],
    )
    .unwrap();
    let report = ideal_sigma_test(&ideal).unwrap();
    assert_eq!(report.class, SigmaClass::Neither);
    assert!(!report.invariant);

    // On eta^2 = w the point (1, 1) and its mirror multiply to (w - 1).
    let conic = SpectralAlgebra::new(SpectralPolynomial::from_ascending(vec![-&w, UniPoly::zero()]).unwrap());
    let one = UniPoly::one();
    let ideal = FractionalIdeal::new(
        conic,
        vec![
            vec![-&one, one.clone()],
            vec![UniPoly::from_ints(&[-1, 1]), UniPoly::zero()],
        ],
    )
    .unwrap();
    let report = ideal_sigma_test(&ideal).unwrap();
    assert_eq!(report.class, SigmaClass::AntiInvariantPairing);
    assert!(report.pairing_generator.is_some());
}

#[test]
fn eigenline_of_sampled_matrix_is_rank_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (higgs, _) = smooth_higgs(&mut rng, 3, 2, 50).unwrap();
    let ideal = eigenline(&higgs).unwrap();
    assert_eq!(ideal.hermite().unwrap().rows(), 3);
}
