use crate::error::{ExactError, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// Pfaffian of an even-order skew-symmetric matrix by recursive expansion
/// along the first row. Exponential in the order, exact over any ring.
pub fn pfaffian<R: Ring>(m: &Matrix<R>) -> Result<R> {
    check_skew_even(m)?;
    let idx: Vec<usize> = (0..m.rows()).collect();
    Ok(expand(m, &idx, false))
}

/// Expansion with the sign of the second term flipped. Exists only so the
/// verification battery can confirm that its Pfaffian checks detect a
/// broken implementation.
#[doc(hidden)]
pub fn pfaffian_sign_mutant<R: Ring>(m: &Matrix<R>) -> Result<R> {
    check_skew_even(m)?;
    let idx: Vec<usize> = (0..m.rows()).collect();
    Ok(expand(m, &idx, true))
}

fn check_skew_even<R: Ring>(m: &Matrix<R>) -> Result<()> {
    if !m.is_square() || m.rows() % 2 == 1 || !m.is_skew() {
        return Err(ExactError::NotSkewEven);
    }
    Ok(())
}

fn expand<R: Ring>(m: &Matrix<R>, idx: &[usize], mutate: bool) -> R {
    if idx.is_empty() {
        return R::one();
    }
    let first = idx[0];
    let mut total = R::zero();
    for k in 1..idx.len() {
        let a = m.get(first, idx[k]);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&i| i != idx[k]).collect();
        let term = a.mul(&expand(m, &rest, mutate));
        let negative = (k % 2 == 0) != (mutate && k == 2);
        total = if negative { total.sub(&term) } else { total.add(&term) };
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RatMat;
    use crate::rational::int;

    #[test]
    fn two_by_two() {
        let m = RatMat::from_ints(2, 2, &[0, 5, -5, 0]).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), int(5));
    }

    #[test]
    fn symplectic_j2() {
        // J_2 = [[0, I], [-I, 0]]
        let j = RatMat::from_ints(4, 4, &[0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0]).unwrap();
        assert_eq!(pfaffian(&j).unwrap(), int(-1));
        assert_eq!(j.determinant().unwrap(), int(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(pfaffian(&RatMat::zeros(3, 3)), Err(ExactError::NotSkewEven));
        let m = RatMat::from_ints(2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(pfaffian(&m), Err(ExactError::NotSkewEven));
        let m = RatMat::from_ints(2, 2, &[1, 1, -1, 0]).unwrap();
        assert_eq!(pfaffian(&m), Err(ExactError::NotSkewEven));
    }
}
