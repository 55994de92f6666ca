//! Divisors supported on rational points of the affine spectral curve,
//! their norms down to the base line, and the degree-level tests built on
//! them.

use std::collections::BTreeMap;

use hitchin_exact::factor::factor;
use hitchin_exact::{Rational, Ring, UniPoly};
use serde::{Deserialize, Serialize, Serializer};

use crate::correspondence::SpectralAlgebra;
use crate::error::{CoreError, Result};
use crate::invariants::toledo;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpectralPoint {
    #[serde(with = "hitchin_exact::json::rational")]
    pub w: Rational,
    #[serde(with = "hitchin_exact::json::rational")]
    pub eta: Rational,
}

impl SpectralPoint {
    pub fn new(w: Rational, eta: Rational) -> Self {
        SpectralPoint { w, eta }
    }
}

/// One term of a divisor on the wire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEntry {
    #[serde(with = "hitchin_exact::json::rational")]
    pub w: Rational,
    #[serde(with = "hitchin_exact::json::rational")]
    pub eta: Rational,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    algebra: SpectralAlgebra,
    support: BTreeMap<SpectralPoint, i64>,
}

impl Divisor {
    pub fn zero(algebra: SpectralAlgebra) -> Self {
        Divisor {
            algebra,
            support: BTreeMap::new(),
        }
    }

    /// Merges repeated points and drops zero multiplicities; every point
    /// must lie on the curve.
    pub fn new(algebra: SpectralAlgebra, terms: impl IntoIterator<Item = (SpectralPoint, i64)>) -> Result<Self> {
        let mut d = Divisor::zero(algebra);
        for (point, mult) in terms {
            if !d.algebra.polynomial().eval(&point.eta, &point.w).is_zero() {
                return Err(CoreError::PointOffCurve(format!(
                    "(w, eta) = ({}, {})",
                    point.w, point.eta
                )));
            }
            d.insert(point, mult);
        }
        Ok(d)
    }

    pub fn from_entries(algebra: SpectralAlgebra, entries: Vec<DivisorEntry>) -> Result<Self> {
        Divisor::new(
            algebra,
            entries.into_iter().map(|e| (SpectralPoint::new(e.w, e.eta), e.mult)),
        )
    }

    fn insert(&mut self, point: SpectralPoint, mult: i64) {
        let entry = self.support.entry(point).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.support.retain(|_, m| *m != 0);
        }
    }

    pub fn algebra(&self) -> &SpectralAlgebra {
        &self.algebra
    }

    pub fn support(&self) -> &BTreeMap<SpectralPoint, i64> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn entries(&self) -> Vec<DivisorEntry> {
        self.support
            .iter()
            .map(|(p, &mult)| DivisorEntry {
                w: p.w.clone(),
                eta: p.eta.clone(),
                mult,
            })
            .collect()
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if self.algebra.polynomial() != other.algebra.polynomial() {
            return Err(CoreError::DegreeMismatch("divisors on different curves".into()));
        }
        let mut out = self.clone();
        for (p, &m) in &other.support {
            out.insert(p.clone(), m);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor {
            algebra: self.algebra.clone(),
            support: if k == 0 {
                BTreeMap::new()
            } else {
                self.support.iter().map(|(p, m)| (p.clone(), m * k)).collect()
            },
        }
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

/// A divisor on the base line, keyed by `w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseDivisor(BTreeMap<Rational, i64>);

#[derive(Serialize)]
struct BaseEntry {
    #[serde(with = "hitchin_exact::json::rational")]
    w: Rational,
    mult: i64,
}

impl Serialize for BaseDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0
            .iter()
            .map(|(w, &mult)| BaseEntry { w: w.clone(), mult })
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl BaseDivisor {
    pub fn support(&self) -> &BTreeMap<Rational, i64> {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn single(w: Rational, mult: i64) -> Self {
        let mut m = BTreeMap::new();
        if mult != 0 {
            m.insert(w, mult);
        }
        BaseDivisor(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    #[serde(with = "hitchin_exact::json::rational")]
    pub w: Rational,
    /// Rational points with their multiplicity as roots of `p(eta, w)`.
    pub points: Vec<(SpectralPoint, usize)>,
    /// Irreducible factors in `eta` of degree at least two.
    pub unresolved: Vec<(UniPoly, usize)>,
}

impl FiberReport {
    pub fn total_degree(&self) -> usize {
        let rational: usize = self.points.iter().map(|(_, m)| m).sum();
        let rest: usize = self.unresolved.iter().map(|(f, m)| f.degree().unwrap_or(0) * m).sum();
        rational + rest
    }

    pub fn is_rational(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// The fibre over `w0`: rational roots of `p(eta, w0)` as points, the
/// remaining irreducible factors as they are.
pub fn fiber_points(algebra: &SpectralAlgebra, w0: &Rational) -> FiberReport {
    let f = factor(&algebra.polynomial().eval_w(w0));
    let mut points = Vec::new();
    let mut unresolved = Vec::new();
    for (g, m) in f.factors {
        if g.degree() == Some(1) {
            let root = -(g.coeff(0) / g.coeff(1));
            points.push((SpectralPoint::new(w0.clone(), root), m));
        } else {
            unresolved.push((g, m));
        }
    }
    points.sort();
    FiberReport {
        w: w0.clone(),
        points,
        unresolved,
    }
}

/// The full fibre as a divisor, when every point of it is rational.
pub fn fiber_divisor(algebra: &SpectralAlgebra, w0: &Rational) -> Option<Divisor> {
    let report = fiber_points(algebra, w0);
    if !report.is_rational() {
        return None;
    }
    Divisor::new(algebra.clone(), report.points.into_iter().map(|(p, m)| (p, m as i64))).ok()
}

pub fn norm(d: &Divisor) -> BaseDivisor {
    let mut out = BTreeMap::new();
    for (p, &m) in d.support() {
        *out.entry(p.w.clone()).or_insert(0) += m;
    }
    out.retain(|_, m| *m != 0);
    BaseDivisor(out)
}

pub fn sigma_divisor(d: &Divisor) -> Result<Divisor> {
    if !d.algebra().has_sigma() {
        return Err(CoreError::SigmaUndefined);
    }
    Divisor::new(
        d.algebra().clone(),
        d.support()
            .iter()
            .map(|(p, &m)| (SpectralPoint::new(p.w.clone(), -p.eta.clone()), m)),
    )
}

pub const PRYM_SCOPE: &str =
    "degree-level necessary conditions only: linear equivalence on the spectral curve is not tested";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrymReport {
    pub norm: BaseDivisor,
    pub norm_degree: i64,
    /// Degree-zero norm; over the affine line this means the norm is
    /// principal.
    pub in_norm_kernel: bool,
    /// `2D` and `D + sigma(D)` both of degree zero; `None` without `sigma`.
    pub order_two_necessary: Option<bool>,
    pub scope: String,
}

pub fn prym_membership_degreewise(d: &Divisor) -> PrymReport {
    let n = norm(d);
    let norm_degree = n.degree();
    let order_two_necessary = sigma_divisor(d)
        .ok()
        .and_then(|s| d.add(&s).ok())
        .map(|sum| d.scale(2).degree() == 0 && sum.degree() == 0);
    PrymReport {
        norm_degree,
        in_norm_kernel: norm_degree == 0,
        norm: n,
        order_two_necessary,
        scope: PRYM_SCOPE.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub deg_l: i64,
    pub minus_one_points: i64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub toledo: Option<i64>,
}

/// The degree of `L` and the number of fixed points where `sigma` acts by
/// `-1` must have the same parity.
pub fn parity_invariant(deg_l: i64, minus_one_points: i64, w_degrees: Option<(i64, i64)>) -> Result<ParityReport> {
    if minus_one_points < 0 {
        return Err(CoreError::NegativeDegree(minus_one_points));
    }
    Ok(ParityReport {
        deg_l,
        minus_one_points,
        pass: (deg_l - minus_one_points).rem_euclid(2) == 0,
        toledo: w_degrees.map(|(a, b)| toledo(a, b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hitchin_exact::rational::int;
    use hitchin_exact::SpectralPolynomial;

    fn eta2_minus_w() -> SpectralAlgebra {
        SpectralAlgebra::new(SpectralPolynomial::from_ascending(vec![-&UniPoly::var(), UniPoly::zero()]).unwrap())
    }

    fn pt(w: i64, eta: i64) -> SpectralPoint {
        SpectralPoint::new(int(w), int(eta))
    }

    #[test]
    fn fibres() {
        let a = eta2_minus_w();
        let f = fiber_points(&a, &int(4));
        assert_eq!(f.points, vec![(pt(4, -2), 1), (pt(4, 2), 1)]);
        let f = fiber_points(&a, &int(2));
        assert!(f.points.is_empty());
        assert_eq!(f.unresolved.len(), 1);
        assert_eq!(f.total_degree(), 2);
        let f = fiber_points(&a, &int(0));
        assert_eq!(f.points, vec![(pt(0, 0), 2)]);
    }

    #[test]
    fn norms() {
        let a = eta2_minus_w();
        let d = Divisor::new(a.clone(), [(pt(4, 2), 1), (pt(4, -2), 1)]).unwrap();
        assert_eq!(norm(&d), BaseDivisor::single(int(4), 2));
        assert!(norm(&Divisor::zero(a.clone())).is_zero());
        let c = Divisor::new(a, [(pt(4, 2), 3), (pt(4, 2), -3)]).unwrap();
        assert!(c.is_zero());
        assert!(norm(&c).is_zero());
    }

    #[test]
    fn off_curve_rejected() {
        assert!(matches!(
            Divisor::new(eta2_minus_w(), [(pt(4, 3), 1)]),
            Err(CoreError::PointOffCurve(_))
        ));
    }

    #[test]
    fn sigma_on_points() {
        let a = eta2_minus_w();
        let d = Divisor::new(a.clone(), [(pt(4, 2), 1), (pt(0, 0), 5)]).unwrap();
        let s = sigma_divisor(&d).unwrap();
        assert_eq!(s.support().get(&pt(4, -2)), Some(&1));
        assert_eq!(s.support().get(&pt(0, 0)), Some(&5));
        assert_eq!(sigma_divisor(&s).unwrap(), d);
    }

    #[test]
    fn prym_examples() {
        let a = eta2_minus_w();
        let d = Divisor::new(a.clone(), [(pt(4, 2), 1), (pt(4, -2), -1)]).unwrap();
        let r = prym_membership_degreewise(&d);
        assert!(r.in_norm_kernel);
        assert!(r.norm.is_zero());
        let r = prym_membership_degreewise(&Divisor::new(a.clone(), [(pt(4, 2), 1)]).unwrap());
        assert_eq!(r.norm_degree, 1);
        assert!(!r.in_norm_kernel);
        let r = prym_membership_degreewise(&Divisor::zero(a));
        assert_eq!(r.order_two_necessary, Some(true));
    }

    #[test]
    fn parity_examples() {
        assert!(parity_invariant(0, 0, None).unwrap().pass);
        assert!(parity_invariant(3, 1, None).unwrap().pass);
        assert!(!parity_invariant(2, 1, None).unwrap().pass);
        assert!(parity_invariant(-3, 1, None).unwrap().pass);
        assert_eq!(parity_invariant(1, 1, Some((3, 1))).unwrap().toledo, Some(2));
        assert!(parity_invariant(1, -1, None).is_err());
    }

    #[test]
    fn divisor_json_is_a_list() {
        let d = Divisor::new(eta2_minus_w(), [(pt(4, 2), 2)]).unwrap();
        assert_eq!(
            serde_json::to_value(&d).unwrap(),
            serde_json::json!([{"w": "4", "eta": "2", "mult": 2}])
        );
    }
}
