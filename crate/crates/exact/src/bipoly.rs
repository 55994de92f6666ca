//! Polynomials in `eta` with coefficients in `Q[w]`, and the monic
//! spectral polynomials built from them.

use std::fmt;

use crate::error::{ExactError, Result};
use crate::poly::UniPoly;
use crate::rational::Rational;
use crate::ring::Ring;

/// Element of `Q[w][eta]`, coefficients ascending in `eta`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn from_uni(c: UniPoly) -> Self {
        Self::new(vec![c])
    }

    pub fn eta() -> Self {
        Self::new(vec![UniPoly::zero(), UniPoly::one()])
    }

    /// `c(w) * eta^k`
    pub fn monomial(c: UniPoly, k: usize) -> Self {
        let mut coeffs = vec![UniPoly::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn eta_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Specializes `w = w0`, leaving a polynomial in `eta` over `Q`.
    pub fn eval_w(&self, w0: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(w0)).collect())
    }

    pub fn derivative_eta(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&crate::rational::int(k as i64)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &UniPoly) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitutes `eta -> -eta`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "eta".to_string(),
                _ => format!("eta^{k}"),
            };
            let cs = c.to_string();
            let term = if mono.is_empty() {
                cs
            } else if *c == UniPoly::one() {
                mono
            } else if c.coeffs().iter().filter(|x| !num_traits::Zero::is_zero(*x)).count() == 1 {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            terms.push(term);
        }
        let mut out = String::new();
        for (i, t) in terms.into_iter().enumerate() {
            if i == 0 {
                out.push_str(&t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl<'a> std::ops::Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> std::ops::Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> std::ops::Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        BiPoly::new(out)
    }
}

impl std::ops::Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Ring for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::from_uni(UniPoly::one())
    }
    fn from_i64(n: i64) -> Self {
        BiPoly::from_uni(UniPoly::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Monic polynomial `eta^n + c_{n-1}(w) eta^{n-1} + ... + c_0(w)`: the
/// affine equation of a spectral curve.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpectralPolynomial {
    /// `c_0, ..., c_{n-1}`, ascending in `eta`.
    lower: Vec<UniPoly>,
}

impl SpectralPolynomial {
    /// From the lower coefficients `c_0, ..., c_{n-1}` in ascending order.
    pub fn from_ascending(lower: Vec<UniPoly>) -> Result<Self> {
        if lower.is_empty() {
            return Err(ExactError::DimensionMismatch(
                "spectral polynomial needs eta-degree >= 1".into(),
            ));
        }
        Ok(SpectralPolynomial { lower })
    }

    /// From `[c_{n-1}, ..., c_0]`, the order used on the wire.
    pub fn from_descending(n: usize, coeffs: Vec<UniPoly>) -> Result<Self> {
        if coeffs.len() != n {
            return Err(ExactError::DimensionMismatch(format!(
                "eta-degree {n} needs {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        let mut lower = coeffs;
        lower.reverse();
        Self::from_ascending(lower)
    }

    pub fn from_bipoly(p: &BiPoly) -> Result<Self> {
        let n = p.eta_degree().ok_or(ExactError::NotMonic)?;
        if p.coeff(n) != UniPoly::one() {
            return Err(ExactError::NotMonic);
        }
        Self::from_ascending((0..n).map(|k| p.coeff(k)).collect())
    }

    /// `eta^n`
    pub fn pure_power(n: usize) -> Result<Self> {
        Self::from_ascending(vec![UniPoly::zero(); n])
    }

    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    /// Coefficient of `eta^k`; `1` for `k = n`, zero above.
    pub fn coeff(&self, k: usize) -> UniPoly {
        match k.cmp(&self.degree()) {
            std::cmp::Ordering::Less => self.lower[k].clone(),
            std::cmp::Ordering::Equal => UniPoly::one(),
            std::cmp::Ordering::Greater => UniPoly::zero(),
        }
    }

    pub fn lower(&self) -> &[UniPoly] {
        &self.lower
    }

    /// `[c_{n-1}, ..., c_0]`
    pub fn descending(&self) -> Vec<UniPoly> {
        self.lower.iter().rev().cloned().collect()
    }

    pub fn to_bipoly(&self) -> BiPoly {
        let mut c = self.lower.clone();
        c.push(UniPoly::one());
        BiPoly::new(c)
    }

    pub fn eval_w(&self, w0: &Rational) -> UniPoly {
        self.to_bipoly().eval_w(w0)
    }

    pub fn eval(&self, eta0: &Rational, w0: &Rational) -> Rational {
        self.eval_w(w0).eval(eta0)
    }

    /// All odd-power coefficients vanish.
    pub fn is_even(&self) -> bool {
        (0..=self.degree()).all(|k| k % 2 == 0 || self.coeff(k).is_zero())
    }

    /// All even-power coefficients vanish.
    pub fn is_odd(&self) -> bool {
        (0..=self.degree()).all(|k| k % 2 == 1 || self.coeff(k).is_zero())
    }

    /// The companion matrix in the column convention used throughout:
    /// column `k` holds the coordinates of `eta * eta^k` in the power basis.
    pub fn companion(&self) -> crate::matrix::PolyMat {
        let n = self.degree();
        let mut m = crate::matrix::PolyMat::zeros(n, n);
        for k in 0..n.saturating_sub(1) {
            m.set(k + 1, k, UniPoly::one());
        }
        for j in 0..n {
            m.set(j, n - 1, -&self.lower[j]);
        }
        m
    }
}

impl fmt::Display for SpectralPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bipoly().display())
    }
}

impl fmt::Debug for SpectralPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpectralPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parity() {
        // eta^2 - w
        let p = SpectralPolynomial::from_descending(2, vec![UniPoly::zero(), UniPoly::from_ints(&[0, -1])]).unwrap();
        assert_eq!(p.to_string(), "eta^2 - w");
        assert!(p.is_even());
        assert!(!p.is_odd());
        let q = SpectralPolynomial::from_ascending(vec![UniPoly::zero(), UniPoly::from_ints(&[0, 1]), UniPoly::zero()])
            .unwrap();
        assert!(q.is_odd());
    }

    #[test]
    fn monic_check() {
        let b = BiPoly::new(vec![UniPoly::one(), UniPoly::from_ints(&[2])]);
        assert_eq!(SpectralPolynomial::from_bipoly(&b), Err(ExactError::NotMonic));
    }
}
