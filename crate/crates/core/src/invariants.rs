//! Degrees of the basic invariant polynomials, Hitchin base and moduli
//! dimensions, the shape of characteristic polynomials per group, and a
//! few degree identities.

use std::fmt;

use hitchin_exact::{char_poly, pfaffian, PolyMat, Rational, SpectralPolynomial, UniPoly};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::lie::{AlgebraDescriptor, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Gl,
    Sl,
    Sp,
    SoOdd,
    SoEven,
}

/// `GL(n,C)`, `SL(n,C)`, `Sp(2n,C)`, `SO(2n+1,C)` or `SO(2n,C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct Group {
    pub kind: GroupKind,
    pub n: usize,
}

#[derive(Deserialize)]
struct RawGroup {
    kind: GroupKind,
    n: usize,
}

impl TryFrom<RawGroup> for Group {
    type Error = CoreError;
    fn try_from(raw: RawGroup) -> Result<Self> {
        Group::new(raw.kind, raw.n)
    }
}

impl Group {
    pub fn new(kind: GroupKind, n: usize) -> Result<Self> {
        let min = match kind {
            GroupKind::Sl | GroupKind::SoEven => 2,
            _ => 1,
        };
        if n < min {
            return Err(CoreError::InvalidDescriptor(format!("{kind:?} needs n >= {min}")));
        }
        Ok(Group { kind, n })
    }

    /// Degree of the spectral cover, i.e. the size of the Higgs matrices.
    pub fn matrix_size(&self) -> usize {
        self.algebra().matrix_size()
    }

    /// Degree of the spectral curve over the base: the odd orthogonal
    /// case drops the factor `eta`.
    pub fn cover_degree(&self) -> usize {
        match self.kind {
            GroupKind::Gl | GroupKind::Sl => self.n,
            _ => 2 * self.n,
        }
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        let family = match self.kind {
            GroupKind::Gl => Family::Gl,
            GroupKind::Sl => Family::Sl,
            GroupKind::Sp => Family::Sp,
            GroupKind::SoOdd => Family::SoOdd,
            GroupKind::SoEven => Family::SoEven,
        };
        AlgebraDescriptor { family, n: self.n }
    }

    pub fn is_semisimple(&self) -> bool {
        self.kind != GroupKind::Gl
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.kind {
            GroupKind::Gl => write!(f, "GL({n},C)"),
            GroupKind::Sl => write!(f, "SL({n},C)"),
            GroupKind::Sp => write!(f, "Sp({},C)", 2 * n),
            GroupKind::SoOdd => write!(f, "SO({},C)", 2 * n + 1),
            GroupKind::SoEven => write!(f, "SO({},C)", 2 * n),
        }
    }
}

pub fn invariant_degrees(group: Group) -> Vec<usize> {
    let n = group.n;
    match group.kind {
        GroupKind::Gl => (1..=n).collect(),
        GroupKind::Sl => (2..=n).collect(),
        GroupKind::Sp | GroupKind::SoOdd => (1..=n).map(|i| 2 * i).collect(),
        GroupKind::SoEven => (1..n).map(|i| 2 * i).chain([n]).collect(),
    }
}

fn check_genus(g: i64) -> Result<()> {
    if g < 2 {
        return Err(CoreError::InvalidDescriptor(format!("genus must be >= 2, got {g}")));
    }
    Ok(())
}

/// `h^0(K^d)` on a curve of genus `g` by Riemann-Roch.
pub fn section_space_dim(d: i64, g: i64) -> Result<i64> {
    check_genus(g)?;
    match d {
        d if d < 0 => Err(CoreError::NegativeDegree(d)),
        0 => Ok(1),
        1 => Ok(g),
        d => Ok((2 * d - 1) * (g - 1)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub group: Group,
    pub genus: i64,
    pub degrees: Vec<usize>,
    pub algebra_dim: usize,
    pub base_dim: i64,
    pub moduli_dim: i64,
    /// `2 * base_dim == moduli_dim`
    pub half_dim_check: bool,
    /// `sum (2 d_i - 1) == dim g`, semisimple groups only.
    pub exponent_check: Option<bool>,
}

pub fn dimensions(group: Group, g: i64) -> Result<DimensionReport> {
    check_genus(g)?;
    let degrees = invariant_degrees(group);
    let base_dim = degrees
        .iter()
        .map(|&d| section_space_dim(d as i64, g))
        .sum::<Result<i64>>()?;
    let algebra_dim = group.algebra().dimension();
    let moduli_dim = match group.kind {
        GroupKind::Gl => {
            let n = group.n as i64;
            2 * n * n * (g - 1) + 2
        }
        _ => 2 * algebra_dim as i64 * (g - 1),
    };
    let exponent_check = group
        .is_semisimple()
        .then(|| degrees.iter().map(|&d| 2 * d - 1).sum::<usize>() == algebra_dim);
    Ok(DimensionReport {
        group,
        genus: g,
        degrees,
        algebra_dim,
        base_dim,
        moduli_dim,
        half_dim_check: 2 * base_dim == moduli_dim,
        exponent_check,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharStructureReport {
    pub group: Group,
    pub char_poly: SpectralPolynomial,
    pub checks: Vec<StructureCheck>,
    /// Square root of the constant term for `SO(2n)`, determined up to sign.
    pub constant_term_root: Option<UniPoly>,
    /// The Pfaffian itself, when a matrix was supplied.
    pub pfaffian: Option<UniPoly>,
    pub pass: bool,
}

fn structure_checks(group: Group, p: &SpectralPolynomial) -> (Vec<StructureCheck>, Option<UniPoly>) {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool| {
        checks.push(StructureCheck {
            name: name.into(),
            pass,
        })
    };
    let n = p.degree();
    let mut root = None;
    match group.kind {
        GroupKind::Gl => {}
        GroupKind::Sl => push("trace_coefficient_vanishes", p.coeff(n - 1).is_zero()),
        GroupKind::Sp => push("odd_coefficients_vanish", p.is_even()),
        GroupKind::SoOdd => {
            push("constant_term_vanishes", p.coeff(0).is_zero());
            // p = eta * q with q even is the same as p odd.
            push("quotient_by_eta_is_even", p.is_odd());
        }
        GroupKind::SoEven => {
            push("odd_coefficients_vanish", p.is_even());
            root = p.coeff(0).sqrt();
            push("constant_term_is_square", root.is_some());
        }
    }
    (checks, root)
}

/// Checks the coefficient pattern forced on characteristic polynomials of
/// elements of the group's Lie algebra.
pub fn validate_char_structure(group: Group, p: &SpectralPolynomial) -> Result<CharStructureReport> {
    let expected = group.matrix_size();
    if p.degree() != expected {
        return Err(CoreError::DegreeMismatch(format!(
            "{group} needs eta-degree {expected}, got {}",
            p.degree()
        )));
    }
    let (checks, constant_term_root) = structure_checks(group, p);
    let pass = checks.iter().all(|c| c.pass);
    Ok(CharStructureReport {
        group,
        char_poly: p.clone(),
        checks,
        constant_term_root,
        pfaffian: None,
        pass,
    })
}

/// As [`validate_char_structure`] on `char_poly(x)`; for `SO(2n)` the
/// constant term is also compared with the square of the Pfaffian of `x`.
pub fn validate_matrix(group: Group, x: &PolyMat) -> Result<CharStructureReport> {
    let p = char_poly(x)?;
    let mut report = validate_char_structure(group, &p)?;
    if group.kind == GroupKind::SoEven {
        let pf = pfaffian(x).ok();
        let agrees = pf.as_ref().is_some_and(|pf| &(pf * pf) == p.lower().first().unwrap());
        report.checks.push(StructureCheck {
            name: "constant_term_equals_pfaffian_squared".into(),
            pass: agrees,
        });
        report.pfaffian = pf;
        report.pass = report.checks.iter().all(|c| c.pass);
    }
    Ok(report)
}

pub fn slope(degree: i64, rank: i64) -> Result<Rational> {
    if rank < 1 {
        return Err(CoreError::ZeroRank);
    }
    Ok(Rational::new(degree.into(), rank.into()))
}

/// Degree of the direct image of a degree-`deg_l` line bundle on a
/// degree-`n` spectral cover of a genus-`g` curve.
pub fn pushforward_degree(deg_l: i64, n: i64, g: i64) -> i64 {
    deg_l + (n * n - n) * (1 - g)
}

pub fn toledo(deg_w1: i64, deg_w2: i64) -> i64 {
    deg_w1 - deg_w2
}

#[cfg(test)]
mod tests {
    use super::*;
    use hitchin_exact::rational::{int, ratio};

    fn grp(kind: GroupKind, n: usize) -> Group {
        Group::new(kind, n).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(invariant_degrees(grp(GroupKind::Sl, 3)), vec![2, 3]);
        assert_eq!(invariant_degrees(grp(GroupKind::Sp, 2)), vec![2, 4]);
        assert_eq!(invariant_degrees(grp(GroupKind::SoEven, 2)), vec![2, 2]);
        assert!(Group::new(GroupKind::SoEven, 1).is_err());
    }

    #[test]
    fn riemann_roch() {
        assert_eq!(section_space_dim(1, 2).unwrap(), 2);
        assert_eq!(section_space_dim(2, 2).unwrap(), 3);
        assert_eq!(section_space_dim(0, 7).unwrap(), 1);
        assert_eq!(section_space_dim(-1, 2), Err(CoreError::NegativeDegree(-1)));
    }

    #[test]
    fn dimension_examples() {
        let r = dimensions(grp(GroupKind::Gl, 2), 2).unwrap();
        assert_eq!((r.base_dim, r.moduli_dim), (5, 10));
        assert!(r.half_dim_check);
        let r = dimensions(grp(GroupKind::Sp, 2), 2).unwrap();
        assert_eq!((r.degrees.clone(), r.base_dim, r.moduli_dim), (vec![2, 4], 10, 20));
        assert_eq!(r.exponent_check, Some(true));
        assert_eq!(dimensions(grp(GroupKind::Sl, 2), 3).unwrap().base_dim, 6);
    }

    #[test]
    fn degree_bookkeeping() {
        assert_eq!(slope(0, 2).unwrap(), int(0));
        assert_eq!(slope(-2, 2).unwrap(), int(-1));
        assert_eq!(slope(3, 2).unwrap(), ratio(3, 2));
        assert_eq!(slope(1, 0), Err(CoreError::ZeroRank));
        assert_eq!(pushforward_degree(0, 2, 2), -2);
        assert_eq!(pushforward_degree(5, 1, 4), 5);
        assert_eq!(pushforward_degree(2 * 3 * 2, 3, 3), 0);
        assert_eq!(toledo(3, 3), 0);
        assert_eq!(toledo(2, -1), 3);
    }

    #[test]
    fn classic_template_is_traceless() {
        // [[0, w], [1, 0]]
        let w = UniPoly::var();
        let phi = PolyMat::from_rows(vec![
            vec![UniPoly::zero(), w.clone()],
            vec![UniPoly::one(), UniPoly::zero()],
        ])
        .unwrap();
        let r = validate_matrix(grp(GroupKind::Sl, 2), &phi).unwrap();
        assert!(r.pass);
        assert_eq!(r.char_poly.to_string(), "eta^2 - w");
        assert_eq!(phi.trace(), UniPoly::zero());
        assert_eq!(phi.determinant().unwrap(), -&w);
    }

    #[test]
    fn degree_mismatch() {
        let p = SpectralPolynomial::pure_power(3).unwrap();
        assert!(matches!(
            validate_char_structure(grp(GroupKind::Sp, 1), &p),
            Err(CoreError::DegreeMismatch(_))
        ));
    }
}
