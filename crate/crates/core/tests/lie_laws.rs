use hitchin_core::lie::{ad_matrix, cached_killing, standard_basis, AlgebraBasis, AlgebraDescriptor, Family};
use hitchin_core::real_forms::{apply_involution, ComplexMat, InvolutionKind, RealForm};
use hitchin_exact::rational::int;
use hitchin_exact::{RatMat, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn algebras() -> Vec<AlgebraDescriptor> {
    [
        (Family::Gl, 2),
        (Family::Gl, 3),
        (Family::Sl, 2),
        (Family::Sl, 3),
        (Family::SoOdd, 1),
        (Family::SoOdd, 2),
        (Family::SoEven, 2),
        (Family::Sp, 1),
        (Family::Sp, 2),
    ]
    .into_iter()
    .map(|(f, n)| AlgebraDescriptor::new(f, n).unwrap())
    .collect()
}

fn element(basis: &AlgebraBasis, coords: &[i64]) -> RatMat {
    let c: Vec<Rational> = coords.iter().take(basis.dimension()).map(|&x| int(x)).collect();
    basis.combine(&c)
}

fn trace_product(a: &RatMat, b: &RatMat) -> Rational {
    a.mul(b).trace()
}

/// Killing form through the trace form of the defining representation.
fn killing_oracle(d: AlgebraDescriptor, x: &RatMat, y: &RatMat) -> Rational {
    let size = d.matrix_size() as i64;
    let txy = trace_product(x, y);
    match d.family {
        Family::Gl => int(2 * size) * txy - int(2) * x.trace() * y.trace(),
        Family::Sl => int(2 * size) * txy,
        Family::SoOdd | Family::SoEven => int(size - 2) * txy,
        Family::Sp => int(size + 2) * txy,
    }
}

fn coords() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_identity(idx in 0usize..9, a in coords(), b in coords(), c in coords()) {
        let basis = standard_basis(algebras()[idx]);
        let (x, y, z) = (element(&basis, &a), element(&basis, &b), element(&basis, &c));
        let sum = x.commutator(&y.commutator(&z))
            .add(&y.commutator(&z.commutator(&x)))
            .add(&z.commutator(&x.commutator(&y)));
        prop_assert!(sum.entries().iter().all(Zero::is_zero));
        prop_assert!(basis.coordinates(&x.commutator(&y)).is_ok());
    }

    #[test]
    fn killing_form_is_ad_invariant_and_matches_trace_form(
        idx in 0usize..9, a in coords(), b in coords(), c in coords()
    ) {
        let d = algebras()[idx];
        let form = cached_killing(d);
        let basis = &form.basis;
        let (x, y, z) = (element(basis, &a), element(basis, &b), element(basis, &c));
        let lhs = form.eval_matrices(&x.commutator(&y), &z).unwrap();
        let rhs = form.eval_matrices(&y, &x.commutator(&z)).unwrap();
        prop_assert_eq!(lhs, -rhs);
        prop_assert_eq!(form.eval_matrices(&x, &y).unwrap(), killing_oracle(d, &x, &y));
    }

    #[test]
    fn adjoint_action_is_traceless(idx in 0usize..9, a in coords()) {
        let basis = standard_basis(algebras()[idx]);
        let x = element(&basis, &a);
        prop_assert!(ad_matrix(&x, &basis).unwrap().trace().is_zero());
    }
}

fn forms() -> Vec<RealForm> {
    RealForm::all_up_to(4)
}

fn complex_element(form: RealForm, re: &[i64], im: &[i64]) -> ComplexMat {
    let basis = standard_basis(form.parent());
    ComplexMat {
        re: element(&basis, re),
        im: element(&basis, im),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involutions_square_to_identity_and_respect_brackets(
        idx in 0usize..64, a in coords(), b in coords(), c in coords(), e in coords()
    ) {
        let all = forms();
        let form = all[idx % all.len()];
        let x = complex_element(form, &a, &b);
        let y = complex_element(form, &c, &e);
        for which in InvolutionKind::ALL {
            let f = |m: &ComplexMat| apply_involution(form, which, m).unwrap();
            prop_assert_eq!(&f(&f(&x)), &x, "{} {}", form, which);
            prop_assert_eq!(f(&x.bracket(&y)), f(&x).bracket(&f(&y)), "{} {}", form, which);
            let expected = if form.formula(which).is_antilinear() { f(&x).times_i().neg() } else { f(&x).times_i() };
            prop_assert_eq!(f(&x.times_i()), expected, "{} {}", form, which);
        }
        let rho = apply_involution(form, InvolutionKind::Rho, &x).unwrap();
        let rho_tau = apply_involution(form, InvolutionKind::Tau, &rho).unwrap();
        prop_assert_eq!(apply_involution(form, InvolutionKind::Sigma, &x).unwrap(), rho_tau);
    }
}
