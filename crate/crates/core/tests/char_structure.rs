use hitchin_core::invariants::{validate_matrix, Group, GroupKind};
use hitchin_core::sampling::random_algebra_element;
use hitchin_exact::pfaffian::pfaffian_sign_mutant;
use hitchin_exact::{char_poly, pfaffian, PolyMat, UniPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 100;

fn groups() -> Vec<Group> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(Group::new(GroupKind::Gl, n).unwrap());
        out.push(Group::new(GroupKind::Sp, n).unwrap());
        out.push(Group::new(GroupKind::SoOdd, n).unwrap());
        if n >= 2 {
            out.push(Group::new(GroupKind::Sl, n).unwrap());
            out.push(Group::new(GroupKind::SoEven, n).unwrap());
        }
    }
    out
}

#[test]
fn sampled_elements_have_the_expected_coefficient_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for group in groups() {
        for _ in 0..SAMPLES {
            let x = random_algebra_element(&mut rng, group.algebra(), 2);
            let report = validate_matrix(group, &x).unwrap();
            assert!(report.pass, "{group}: {:?}", report.checks);
        }
    }
}

#[test]
fn so_even_constant_term_is_the_pfaffian_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=3 {
        let group = Group::new(GroupKind::SoEven, n).unwrap();
        for _ in 0..SAMPLES {
            let x = random_algebra_element(&mut rng, group.algebra(), 2);
            let pf = pfaffian(&x).unwrap();
            let square = &pf * &pf;
            assert_eq!(char_poly(&x).unwrap().coeff(0), square);
            assert_eq!(x.determinant().unwrap(), square);
        }
    }
}

#[test]
fn sign_mutant_pfaffian_is_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let group = Group::new(GroupKind::SoEven, 2).unwrap();
    let mut caught = 0;
    for _ in 0..SAMPLES {
        let x = random_algebra_element(&mut rng, group.algebra(), 2);
        let pf = pfaffian(&x).unwrap();
        let mutant = pfaffian_sign_mutant(&x).unwrap();
        let detected = &mutant * &mutant != char_poly(&x).unwrap().coeff(0);
        // The flipped term can vanish on a sample, leaving the mutant correct.
        assert_eq!(detected, mutant != pf && mutant != -&pf);
        caught += usize::from(detected);
    }
    assert!(caught > 0);
}

#[test]
fn leaving_the_algebra_breaks_the_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for group in groups().into_iter().filter(|g| g.kind != GroupKind::Gl) {
        let size = group.matrix_size();
        // A nonzero trace violates every semisimple pattern.
        let mut kick = PolyMat::zeros(size, size);
        kick.set(0, 0, UniPoly::var());
        for _ in 0..10 {
            let x = random_algebra_element(&mut rng, group.algebra(), 2).add(&kick);
            assert!(!validate_matrix(group, &x).unwrap().pass, "{group}");
        }
    }
}
