//! Factorization over `Q` for the small-degree polynomials that occur as
//! fibers of spectral covers: squarefree splitting, rational roots, then a
//! bounded Kronecker search for higher-degree factors.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::UniPoly;
use crate::rational::Rational;

/// Largest absolute value whose divisors we are willing to enumerate.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
/// Cap on interpolation candidates per Kronecker degree.
const KRONECKER_BUDGET: usize = 200_000;

/// `f = leading * prod factor^multiplicity`, factors monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: Rational,
    pub factors: Vec<(UniPoly, usize)>,
    /// `false` when some factor could not be certified irreducible
    /// because the search budget ran out.
    pub complete: bool,
}

/// Distinct rational roots of a nonzero polynomial, ascending.
pub fn rational_roots(f: &UniPoly) -> Vec<Rational> {
    if f.is_constant() {
        return Vec::new();
    }
    let (_, prim) = f.content_and_primitive();
    let mut roots = Vec::new();
    let shift = prim.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(Rational::zero());
    }
    let trimmed = &prim[shift..];
    if trimmed.len() > 1 {
        let (Some(ps), Some(qs)) = (divisors(&trimmed[0]), divisors(trimmed.last().unwrap())) else {
            return roots;
        };
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let cand = Rational::new(p * BigInt::from(sign), q.clone());
                    if !roots.contains(&cand) && f.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Positive divisors of `|n|`, or `None` when `n` is zero or too large.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let m = n.abs().to_u64()?;
    if m == 0 || m > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

pub fn factor(f: &UniPoly) -> Factorization {
    let leading = f.leading().cloned().unwrap_or_else(Rational::zero);
    let mut factors = Vec::new();
    let mut complete = true;
    for (part, mult) in f.squarefree_decomposition() {
        let mut rest = part.clone();
        for r in rational_roots(&part) {
            let lin = UniPoly::new(vec![-r, Rational::one()]);
            rest = rest.exact_div(&lin).expect("root divides");
            factors.push((lin, mult));
        }
        let (pieces, ok) = split_irrational(rest);
        complete &= ok;
        factors.extend(pieces.into_iter().map(|p| (p, mult)));
    }
    factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.1.cmp(&b.1)));
    Factorization {
        leading,
        factors,
        complete,
    }
}

/// Splits a squarefree polynomial with no rational roots into irreducible
/// monic factors.
fn split_irrational(f: UniPoly) -> (Vec<UniPoly>, bool) {
    let Some(d) = f.degree() else { return (Vec::new(), true) };
    if d == 0 {
        return (Vec::new(), true);
    }
    if d <= 3 {
        return (vec![f.monic()], true);
    }
    for k in 2..=d / 2 {
        match kronecker_factor(&f, k) {
            Search::Found(g) => {
                let h = f.exact_div(&g).expect("kronecker factor divides");
                let (mut a, ok_a) = split_irrational(g);
                let (b, ok_b) = split_irrational(h);
                a.extend(b);
                return (a, ok_a && ok_b);
            }
            Search::None => {}
            Search::GaveUp => return (vec![f.monic()], false),
        }
    }
    (vec![f.monic()], true)
}

enum Search {
    Found(UniPoly),
    None,
    GaveUp,
}

/// Looks for a factor of degree exactly `k` with integer coefficients.
fn kronecker_factor(f: &UniPoly, k: usize) -> Search {
    let (_, prim) = f.content_and_primitive();
    let fi = UniPoly::new(prim.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let mut points: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let mut x: i64 = 0;
    while points.len() < k + 1 {
        if x.abs() > 64 {
            return Search::GaveUp;
        }
        let xv = BigInt::from(x);
        let val = fi.eval(&Rational::from_integer(xv.clone())).to_integer();
        if !val.is_zero() {
            match divisors(&val) {
                Some(ds) => points.push((xv, ds)),
                None => return Search::GaveUp,
            }
        }
        x = if x <= 0 { -x + 1 } else { -x };
    }
    let total: usize = points
        .iter()
        .map(|(_, ds)| 2 * ds.len())
        .try_fold(1usize, |acc, n| acc.checked_mul(n))
        .unwrap_or(usize::MAX);
    if total > KRONECKER_BUDGET {
        return Search::GaveUp;
    }
    let mut choice = vec![0usize; points.len()];
    loop {
        let ys: Vec<BigInt> = choice
            .iter()
            .zip(&points)
            .map(|(&c, (_, ds))| {
                let v = ds[c / 2].clone();
                if c % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let xs: Vec<BigInt> = points.iter().map(|(x, _)| x.clone()).collect();
        let g = interpolate(&xs, &ys);
        if g.degree() == Some(k)
            && g.leading().is_some_and(|l| l.is_positive())
            && g.coeffs().iter().all(|c| c.is_integer())
            && g.divides(&fi)
        {
            return Search::Found(g.monic());
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Search::None;
            }
            choice[i] += 1;
            if choice[i] < 2 * points[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> UniPoly {
    let mut out = UniPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = UniPoly::one();
        let mut denom = BigInt::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &UniPoly::new(vec![Rational::from_integer(-xj), Rational::one()]);
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&Rational::new(yi.clone(), denom));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn roots_of_quadratics() {
        assert_eq!(rational_roots(&p(&[-4, 0, 1])), vec![int(-2), int(2)]);
        assert!(rational_roots(&p(&[-2, 0, 1])).is_empty());
        assert_eq!(rational_roots(&p(&[-1, 0, 4])), vec![ratio(-1, 2), ratio(1, 2)]);
        assert_eq!(rational_roots(&p(&[0, 0, 1])), vec![int(0)]);
    }

    #[test]
    fn factor_with_multiplicity() {
        // eta^2 at w = 0 -> eta with multiplicity 2
        let f = factor(&p(&[0, 0, 1]));
        assert_eq!(f.factors, vec![(p(&[0, 1]), 2)]);
        // (x^2 - 2)(x - 3)
        let f = factor(&(&p(&[-2, 0, 1]) * &p(&[-3, 1])));
        assert_eq!(f.factors, vec![(p(&[-3, 1]), 1), (p(&[-2, 0, 1]), 1)]);
        assert!(f.complete);
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        // (x^2 - 2)(x^2 + 1)
        let f = factor(&(&p(&[-2, 0, 1]) * &p(&[1, 0, 1])));
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|(g, m)| g.degree() == Some(2) && *m == 1));
        // x^4 + 1 is irreducible over Q
        let f = factor(&p(&[1, 0, 0, 0, 1]));
        assert_eq!(f.factors, vec![(p(&[1, 0, 0, 0, 1]), 1)]);
    }
}
