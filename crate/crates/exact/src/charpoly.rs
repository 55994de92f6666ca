//! Characteristic polynomials, resultants and discriminants over `Q[w]`.

use crate::bipoly::{BiPoly, SpectralPolynomial};
use crate::error::{ExactError, Result};
use crate::matrix::{BiMat, PolyMat};
use crate::poly::UniPoly;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `det(eta I - m)` by the Faddeev-LeVerrier recurrence. The only
/// divisions are by the integers `1..=n`, which are units in `Q[w]`.
pub fn char_poly(m: &PolyMat) -> Result<SpectralPolynomial> {
    let (coeffs, _) = leverrier(m)?;
    SpectralPolynomial::from_ascending(coeffs)
}

/// `adj(eta I - m)` as a matrix over `Q[w][eta]`, from the same
/// recurrence: `adj(eta I - m) = sum_k N_k eta^(n-k)`.
pub fn eta_adjugate(m: &PolyMat) -> Result<BiMat> {
    let n = m.rows();
    let (_, ns) = leverrier(m)?;
    Ok(BiMat::from_fn(n, n, |i, j| {
        BiPoly::new((0..n).map(|e| ns[n - 1 - e].get(i, j).clone()).collect())
    }))
}

type IntPoly = Vec<BigInt>;

/// Returns the lower coefficients `c_0..c_{n-1}` and the matrices
/// `N_1 = I, N_k = m N_{k-1} + c_{n-k+1} I`.
///
/// Runs on `d m` with integer coefficients, where `d` clears every
/// denominator; `c_i` then picks up `d^(n-i)` and `N_k` picks up `d^(k-1)`.
fn leverrier(m: &PolyMat) -> Result<(Vec<UniPoly>, Vec<PolyMat>)> {
    if !m.is_square() {
        return Err(ExactError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Err(ExactError::DimensionMismatch("empty matrix".into()));
    }
    let d = m
        .entries()
        .iter()
        .flat_map(|p| p.coeffs())
        .fold(
            BigInt::one(),
            |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) },
        );
    let scaled: Vec<IntPoly> = m
        .entries()
        .iter()
        .map(|p| p.coeffs().iter().map(|c| c.numer() * (&d / c.denom())).collect())
        .collect();

    let mut c: Vec<IntPoly> = vec![Vec::new(); n];
    let mut ns: Vec<Vec<IntPoly>> = Vec::with_capacity(n);
    let mut current: Vec<IntPoly> = (0..n * n)
        .map(|i| {
            if i % (n + 1) == 0 {
                vec![BigInt::one()]
            } else {
                Vec::new()
            }
        })
        .collect();
    for k in 1..=n {
        let product = int_mat_mul(&scaled, &current, n);
        let mut trace: IntPoly = Vec::new();
        for i in 0..n {
            add_into(&mut trace, &product[i * (n + 1)]);
        }
        let divisor = BigInt::from(k);
        let coeff: IntPoly = trace.iter().map(|t| -(t / &divisor)).collect();
        ns.push(std::mem::replace(&mut current, product));
        for i in 0..n {
            add_into(&mut current[i * (n + 1)], &coeff);
        }
        c[n - k] = coeff;
    }

    let lower = c
        .iter()
        .enumerate()
        .map(|(i, p)| to_uni(p, &num_traits::pow(d.clone(), n - i)))
        .collect();
    let mats = ns
        .iter()
        .enumerate()
        .map(|(k, entries)| {
            let den = num_traits::pow(d.clone(), k);
            PolyMat::from_fn(n, n, |i, j| to_uni(&entries[i * n + j], &den))
        })
        .collect();
    Ok((lower, mats))
}

fn add_into(acc: &mut IntPoly, p: &[BigInt]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b;
    }
}

fn int_mat_mul(a: &[IntPoly], b: &[IntPoly], n: usize) -> Vec<IntPoly> {
    let mut out = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let acc: &mut IntPoly = &mut out[i * n + j];
            for l in 0..n {
                let (x, y) = (&a[i * n + l], &b[l * n + j]);
                if x.is_empty() || y.is_empty() {
                    continue;
                }
                if acc.len() < x.len() + y.len() - 1 {
                    acc.resize(x.len() + y.len() - 1, BigInt::zero());
                }
                for (s, u) in x.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (t, v) in y.iter().enumerate() {
                        acc[s + t] += u * v;
                    }
                }
            }
        }
    }
    out
}

fn to_uni(p: &[BigInt], den: &BigInt) -> UniPoly {
    UniPoly::new(p.iter().map(|x| Rational::new(x.clone(), den.clone())).collect())
}

/// Sylvester resultant in `eta` of two polynomials over `Q[w]`.
pub fn resultant(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let (Some(df), Some(dg)) = (f.eta_degree(), g.eta_degree()) else {
        return UniPoly::zero();
    };
    if df == 0 && dg == 0 {
        return UniPoly::one();
    }
    let size = df + dg;
    let mut s = PolyMat::zeros(size, size);
    for r in 0..dg {
        for k in 0..=df {
            s.set(r, r + k, f.coeff(df - k));
        }
    }
    for r in 0..df {
        for k in 0..=dg {
            s.set(dg + r, r + k, g.coeff(dg - k));
        }
    }
    s.determinant().expect("sylvester matrix is square")
}

/// Discriminant of a monic spectral polynomial in `eta`:
/// `(-1)^(n(n-1)/2) Res(p, dp/deta)`. Degree one gives `1`.
pub fn discriminant(p: &SpectralPolynomial) -> UniPoly {
    let n = p.degree();
    if n <= 1 {
        return UniPoly::one();
    }
    let bp = p.to_bipoly();
    let res = resultant(&bp, &bp.derivative_eta());
    if (n * (n - 1) / 2) % 2 == 1 {
        -&res
    } else {
        res
    }
}

/// `true` iff `gcd(q, q')` is a nonzero constant.
pub fn squarefree(q: &UniPoly) -> Result<bool> {
    q.is_squarefree()
}
