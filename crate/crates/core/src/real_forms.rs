//! Real forms of the classical algebras as explicit matrix involutions on
//! the complexification, and the Cartan decompositions they induce.
//!
//! A complex matrix is stored as a pair of rational matrices
//! `X = re + i im`. Every involution is of the shape
//! `X -> ± C op(X) C^-1` with `op` some combination of conjugation and
//! transposition and `C` one of `I_pq`, `J_n`, `K_pq`.

use std::fmt;
use std::str::FromStr;

use hitchin_exact::rational::int;
use hitchin_exact::{RatMat, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::lie::{
    cached_killing, inertia, AlgebraBasis, AlgebraDescriptor, BilinearForm, Definiteness, Family, Inertia,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexMat {
    pub re: RatMat,
    pub im: RatMat,
}

impl ComplexMat {
    pub fn real(re: RatMat) -> Self {
        let im = RatMat::zeros(re.rows(), re.cols());
        ComplexMat { re, im }
    }

    pub fn imaginary(im: RatMat) -> Self {
        let re = RatMat::zeros(im.rows(), im.cols());
        ComplexMat { re, im }
    }

    pub fn zeros(n: usize) -> Self {
        Self::real(RatMat::zeros(n, n))
    }

    pub fn size(&self) -> usize {
        self.re.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexMat {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn transpose(&self) -> Self {
        ComplexMat {
            re: self.re.transpose(),
            im: self.im.transpose(),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexMat {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexMat {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexMat {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ComplexMat {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        ComplexMat {
            re: self.im.neg(),
            im: self.re.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ComplexMat {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `c X c_inv` for real `c`.
    pub fn conjugate_by(&self, c: &RatMat, c_inv: &RatMat) -> Self {
        ComplexMat {
            re: c.mul(&self.re).mul(c_inv),
            im: c.mul(&self.im).mul(c_inv),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StandardMatrixKind {
    /// `diag(-I_p, I_q)`
    Ipq { p: usize, q: usize },
    /// `[[0, I_n], [-I_n, 0]]`
    J { n: usize },
    /// `diag(-I_p, I_q, -I_p, I_q)`
    Kpq { p: usize, q: usize },
}

impl fmt::Display for StandardMatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardMatrixKind::Ipq { p, q } => write!(f, "I_{{{p},{q}}}"),
            StandardMatrixKind::J { n } => write!(f, "J_{n}"),
            StandardMatrixKind::Kpq { p, q } => write!(f, "K_{{{p},{q}}}"),
        }
    }
}

fn signs(p: usize, q: usize) -> Vec<Rational> {
    std::iter::repeat_n(int(-1), p)
        .chain(std::iter::repeat_n(int(1), q))
        .collect()
}

pub fn standard_matrix(kind: StandardMatrixKind) -> RatMat {
    match kind {
        StandardMatrixKind::Ipq { p, q } => RatMat::diagonal(&signs(p, q)),
        StandardMatrixKind::J { n } => crate::lie::symplectic_unit(n),
        StandardMatrixKind::Kpq { p, q } => {
            let mut d = signs(p, q);
            d.extend(signs(p, q));
            RatMat::diagonal(&d)
        }
    }
}

/// `X -> sign * C * op(X) * C^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixFormula {
    pub negate: bool,
    pub conjugate: bool,
    pub transpose: bool,
    pub conjugator: Option<StandardMatrixKind>,
}

impl MatrixFormula {
    const fn new(negate: bool, conjugate: bool, transpose: bool, conjugator: Option<StandardMatrixKind>) -> Self {
        MatrixFormula {
            negate,
            conjugate,
            transpose,
            conjugator,
        }
    }

    pub fn is_antilinear(&self) -> bool {
        self.conjugate
    }

    pub fn apply(&self, x: &ComplexMat) -> ComplexMat {
        let mut y = x.clone();
        if self.conjugate {
            y = y.conj();
        }
        if self.transpose {
            y = y.transpose();
        }
        if let Some(kind) = self.conjugator {
            let c = standard_matrix(kind);
            let c_inv = match kind {
                StandardMatrixKind::J { .. } => c.neg(),
                _ => c.clone(),
            };
            y = y.conjugate_by(&c, &c_inv);
        }
        if self.negate {
            y = y.neg();
        }
        y
    }
}

impl fmt::Display for MatrixFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut core = if self.conjugate {
            "conj(X)".to_string()
        } else {
            "X".to_string()
        };
        if self.transpose {
            core.push_str("^t");
        }
        let body = match self.conjugator {
            None => core,
            Some(k @ StandardMatrixKind::J { .. }) => format!("{k} {core} {k}^-1"),
            Some(k) => format!("{k} {core} {k}"),
        };
        write!(f, "X -> {}{body}", if self.negate { "-" } else { "" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionKind {
    Rho,
    Tau,
    Theta,
    Sigma,
}

impl InvolutionKind {
    pub const ALL: [InvolutionKind; 4] = [Self::Rho, Self::Tau, Self::Theta, Self::Sigma];

    /// Whether the involution is antilinear on the complexification.
    /// `theta` lives on the compact form, a real algebra, so it is listed
    /// as linear.
    pub fn antilinear(&self) -> bool {
        matches!(self, Self::Rho | Self::Tau)
    }
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rho => "rho",
            Self::Tau => "tau",
            Self::Theta => "theta",
            Self::Sigma => "sigma",
        })
    }
}

/// The non-compact real forms, one per table row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealForm {
    SlR { n: usize },
    SuStar { m: usize },
    Su { p: usize, q: usize },
    SoOdd { p: usize, q: usize },
    SpR { n: usize },
    SpPQ { p: usize, q: usize },
    SoEven { p: usize, q: usize },
    SoStar { m: usize },
}

impl RealForm {
    pub fn validated(self) -> Result<Self> {
        let bad = |msg: &str| Err(CoreError::InvalidDescriptor(format!("{}: {msg}", self.row_name())));
        match self {
            RealForm::SlR { n } if n < 2 => bad("n >= 2"),
            RealForm::SuStar { m } | RealForm::SoStar { m } if m < 1 => bad("m >= 1"),
            RealForm::SpR { n } if n < 1 => bad("n >= 1"),
            RealForm::Su { p, q } | RealForm::SpPQ { p, q } if p < 1 || q < 1 => bad("p, q >= 1"),
            RealForm::SoOdd { p, q } if p < 1 || q < 1 || (p + q) % 2 == 0 || p + q < 3 => {
                bad("p, q >= 1 with p + q odd and >= 3")
            }
            RealForm::SoEven { p, q } if p < 1 || q < 1 || (p + q) % 2 == 1 => bad("p, q >= 1 with p + q even"),
            _ => Ok(self),
        }
    }

    /// Generic row name.
    pub fn row_name(&self) -> &'static str {
        match self {
            RealForm::SlR { .. } => "SL(n,R)",
            RealForm::SuStar { .. } => "SU*(2m)",
            RealForm::Su { .. } => "SU(p,q)",
            RealForm::SoOdd { .. } => "SO(p,q)_odd",
            RealForm::SpR { .. } => "Sp(2n,R)",
            RealForm::SpPQ { .. } => "Sp(2p,2q)",
            RealForm::SoEven { .. } => "SO(p,q)_even",
            RealForm::SoStar { .. } => "SO*(2m)",
        }
    }

    pub fn parent(&self) -> AlgebraDescriptor {
        let (family, n) = match *self {
            RealForm::SlR { n } => (Family::Sl, n),
            RealForm::SuStar { m } => (Family::Sl, 2 * m),
            RealForm::Su { p, q } => (Family::Sl, p + q),
            RealForm::SoOdd { p, q } => (Family::SoOdd, (p + q) / 2),
            RealForm::SpR { n } => (Family::Sp, n),
            RealForm::SpPQ { p, q } => (Family::Sp, p + q),
            RealForm::SoEven { p, q } => (Family::SoEven, (p + q) / 2),
            RealForm::SoStar { m } => (Family::SoEven, m),
        };
        AlgebraDescriptor { family, n }
    }

    pub fn formula(&self, which: InvolutionKind) -> MatrixFormula {
        use InvolutionKind::*;
        use StandardMatrixKind as K;
        let parent = self.parent();
        match which {
            Rho => match parent.family {
                Family::Gl | Family::Sl => MatrixFormula::new(true, true, true, None),
                Family::SoOdd | Family::SoEven => MatrixFormula::new(false, true, false, None),
                Family::Sp => MatrixFormula::new(false, true, false, Some(K::J { n: parent.n })),
            },
            _ => {
                let (tau, theta, sigma) = match *self {
                    RealForm::SlR { .. } => (
                        MatrixFormula::new(false, true, false, None),
                        MatrixFormula::new(false, true, false, None),
                        MatrixFormula::new(true, false, true, None),
                    ),
                    RealForm::SuStar { m } => {
                        let j = Some(K::J { n: m });
                        (
                            MatrixFormula::new(false, true, false, j),
                            MatrixFormula::new(false, true, false, j),
                            MatrixFormula::new(true, false, true, j),
                        )
                    }
                    RealForm::Su { p, q } => {
                        let i = Some(K::Ipq { p, q });
                        (
                            MatrixFormula::new(true, true, true, i),
                            MatrixFormula::new(false, false, false, i),
                            MatrixFormula::new(false, false, false, i),
                        )
                    }
                    RealForm::SoOdd { p, q } | RealForm::SoEven { p, q } => {
                        let i = Some(K::Ipq { p, q });
                        (
                            MatrixFormula::new(false, true, false, i),
                            MatrixFormula::new(false, false, false, i),
                            MatrixFormula::new(false, false, false, i),
                        )
                    }
                    RealForm::SpR { n } => (
                        MatrixFormula::new(false, true, false, None),
                        MatrixFormula::new(false, true, false, None),
                        MatrixFormula::new(false, false, false, Some(K::J { n })),
                    ),
                    RealForm::SpPQ { p, q } => {
                        let k = Some(K::Kpq { p, q });
                        (
                            MatrixFormula::new(true, true, true, k),
                            MatrixFormula::new(false, false, false, k),
                            MatrixFormula::new(false, false, false, k),
                        )
                    }
                    RealForm::SoStar { m } => {
                        let j = Some(K::J { n: m });
                        (
                            MatrixFormula::new(false, true, false, j),
                            MatrixFormula::new(false, true, false, j),
                            MatrixFormula::new(false, false, false, j),
                        )
                    }
                };
                match which {
                    Tau => tau,
                    Theta => theta,
                    _ => sigma,
                }
            }
        }
    }

    /// Dimension of the maximal compact subalgebra from the classical
    /// identification of `h`.
    pub fn compact_dim_closed_form(&self) -> usize {
        let so = |k: usize| k * k.saturating_sub(1) / 2;
        let sp = |k: usize| k * (2 * k + 1);
        match *self {
            RealForm::SlR { n } => so(n),
            RealForm::SuStar { m } => sp(m),
            RealForm::Su { p, q } => p * p + q * q - 1,
            RealForm::SoOdd { p, q } | RealForm::SoEven { p, q } => so(p) + so(q),
            RealForm::SpR { n } => n * n,
            RealForm::SpPQ { p, q } => sp(p) + sp(q),
            RealForm::SoStar { m } => m * m,
        }
    }

    /// The split rows, for which a real Cartan of full rank exists.
    pub fn is_split(&self) -> bool {
        match *self {
            RealForm::SlR { .. } | RealForm::SpR { .. } => true,
            RealForm::SoOdd { p, q } | RealForm::SoEven { p, q } => p.abs_diff(q) <= 1,
            _ => false,
        }
    }

    /// Every valid form whose parent matrices are at most `max_size` square.
    pub fn all_up_to(max_size: usize) -> Vec<RealForm> {
        let mut out = Vec::new();
        for n in 2..=max_size {
            out.push(RealForm::SlR { n });
        }
        for m in 1..=max_size / 2 {
            out.push(RealForm::SuStar { m });
        }
        for p in 1..max_size {
            for q in 1..=max_size - p {
                out.push(RealForm::Su { p, q });
                if (p + q) % 2 == 1 && p + q >= 3 {
                    out.push(RealForm::SoOdd { p, q });
                }
                if (p + q) % 2 == 0 {
                    out.push(RealForm::SoEven { p, q });
                }
                if 2 * (p + q) <= max_size {
                    out.push(RealForm::SpPQ { p, q });
                }
            }
        }
        for n in 1..=max_size / 2 {
            out.push(RealForm::SpR { n });
        }
        for m in 1..=max_size / 2 {
            out.push(RealForm::SoStar { m });
        }
        out
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RealForm::SlR { n } => write!(f, "SL({n},R)"),
            RealForm::SuStar { m } => write!(f, "SU*({})", 2 * m),
            RealForm::Su { p, q } => write!(f, "SU({p},{q})"),
            RealForm::SoOdd { p, q } | RealForm::SoEven { p, q } => write!(f, "SO({p},{q})"),
            RealForm::SpR { n } => write!(f, "Sp({},R)", 2 * n),
            RealForm::SpPQ { p, q } => write!(f, "Sp({},{})", 2 * p, 2 * q),
            RealForm::SoStar { m } => write!(f, "SO*({})", 2 * m),
        }
    }
}

impl FromStr for RealForm {
    type Err = CoreError;

    /// Concrete names such as `SL(3,R)`, `SU*(4)`, `SU(1,2)`, `SO(2,3)`,
    /// `Sp(4,R)`, `Sp(2,4)` and `SO*(6)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CoreError::InvalidDescriptor(format!("unknown real form {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = t.find('(').ok_or_else(bad)?;
        let head = &t[..open];
        let args = t[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let parts: Vec<&str> = args.split(',').collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let even_half = |x: &str| -> Result<usize> {
            let v = num(x)?;
            if v % 2 == 1 {
                return Err(bad());
            }
            Ok(v / 2)
        };
        let form = match (head.to_ascii_lowercase().as_str(), parts.as_slice()) {
            ("sl", [n, "R" | "r"]) => RealForm::SlR { n: num(n)? },
            ("su*", [n]) => RealForm::SuStar { m: even_half(n)? },
            ("su", [p, q]) => RealForm::Su { p: num(p)?, q: num(q)? },
            ("so", [p, q]) => {
                let (p, q) = (num(p)?, num(q)?);
                if (p + q) % 2 == 1 {
                    RealForm::SoOdd { p, q }
                } else {
                    RealForm::SoEven { p, q }
                }
            }
            ("sp", [n, "R" | "r"]) => RealForm::SpR { n: even_half(n)? },
            ("sp", [p, q]) => RealForm::SpPQ {
                p: even_half(p)?,
                q: even_half(q)?,
            },
            ("so*", [n]) => RealForm::SoStar { m: even_half(n)? },
            _ => return Err(bad()),
        };
        form.validated()
    }
}

#[derive(Serialize, Deserialize)]
struct WireForm {
    name: String,
    params: std::collections::BTreeMap<String, usize>,
}

impl Serialize for RealForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let params: std::collections::BTreeMap<String, usize> = match *self {
            RealForm::SlR { n } | RealForm::SpR { n } => [("n".to_string(), n)].into(),
            RealForm::SuStar { m } | RealForm::SoStar { m } => [("m".to_string(), m)].into(),
            RealForm::Su { p, q } | RealForm::SoOdd { p, q } | RealForm::SoEven { p, q } | RealForm::SpPQ { p, q } => {
                [("p".to_string(), p), ("q".to_string(), q)].into()
            }
        };
        WireForm {
            name: self.row_name().to_string(),
            params,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let w = WireForm::deserialize(d)?;
        let get = |k: &str| {
            w.params
                .get(k)
                .copied()
                .ok_or_else(|| D::Error::custom(format!("{} needs parameter {k}", w.name)))
        };
        let form = match w.name.as_str() {
            "SL(n,R)" => RealForm::SlR { n: get("n")? },
            "SU*(2m)" => RealForm::SuStar { m: get("m")? },
            "SU(p,q)" => RealForm::Su {
                p: get("p")?,
                q: get("q")?,
            },
            "SO(p,q)_odd" => RealForm::SoOdd {
                p: get("p")?,
                q: get("q")?,
            },
            "SO(p,q)_even" => RealForm::SoEven {
                p: get("p")?,
                q: get("q")?,
            },
            "SO(p,q)" => {
                let (p, q) = (get("p")?, get("q")?);
                if (p + q) % 2 == 1 {
                    RealForm::SoOdd { p, q }
                } else {
                    RealForm::SoEven { p, q }
                }
            }
            "Sp(2n,R)" => RealForm::SpR { n: get("n")? },
            "Sp(2p,2q)" => RealForm::SpPQ {
                p: get("p")?,
                q: get("q")?,
            },
            "SO*(2m)" => RealForm::SoStar { m: get("m")? },
            other => return Err(D::Error::custom(format!("unknown real form {other:?}"))),
        };
        form.validated().map_err(D::Error::custom)
    }
}

/// Applies one of the four involutions of `form` to `x`.
pub fn apply_involution(form: RealForm, which: InvolutionKind, x: &ComplexMat) -> Result<ComplexMat> {
    let parent = form.parent();
    if !parent.contains(&x.re) || !parent.contains(&x.im) {
        return Err(CoreError::OutsideAlgebra);
    }
    Ok(form.formula(which).apply(x))
}

/// Everything about a form expressed in real coordinates on the
/// complexified parent: `(a, b)` stands for `sum (a_k + i b_k) e_k`.
struct FormData {
    form: RealForm,
    killing: std::sync::Arc<BilinearForm>,
    rho: RatMat,
    tau: RatMat,
    sigma: RatMat,
}

impl FormData {
    fn new(form: RealForm) -> Result<Self> {
        let killing = cached_killing(form.parent());
        let matrix_of = |which| involution_matrix(&killing.basis, form.formula(which));
        Ok(FormData {
            form,
            rho: matrix_of(InvolutionKind::Rho)?,
            tau: matrix_of(InvolutionKind::Tau)?,
            sigma: matrix_of(InvolutionKind::Sigma)?,
            killing,
        })
    }

    fn basis(&self) -> &AlgebraBasis {
        &self.killing.basis
    }

    fn dim(&self) -> usize {
        self.basis().dimension()
    }

    fn to_matrix(&self, v: &[Rational]) -> ComplexMat {
        let d = self.dim();
        ComplexMat {
            re: self.basis().combine(&v[..d]),
            im: self.basis().combine(&v[d..]),
        }
    }

    fn to_coords(&self, x: &ComplexMat) -> Result<Vec<Rational>> {
        let mut v = self.basis().coordinates(&x.re)?;
        v.extend(self.basis().coordinates(&x.im)?);
        Ok(v)
    }

    /// `Re B(x, y)` for real coordinate vectors.
    fn re_killing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let d = self.dim();
        self.killing.eval(&x[..d], &y[..d]) - self.killing.eval(&x[d..], &y[d..])
    }

    fn im_killing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let d = self.dim();
        self.killing.eval(&x[..d], &y[d..]) + self.killing.eval(&x[d..], &y[..d])
    }

    /// Gram matrix of `(x, y) -> Re B(x, twist y)` on `vectors`.
    fn gram(&self, vectors: &[Vec<Rational>], twist: Option<&RatMat>, negate: bool) -> RatMat {
        let images: Vec<Vec<Rational>> = match twist {
            Some(t) => vectors.iter().map(|v| t.mul_vec(v)).collect(),
            None => vectors.to_vec(),
        };
        let k = vectors.len();
        RatMat::from_fn(k, k, |i, j| {
            let v = self.re_killing(&vectors[i], &images[j]);
            if negate {
                -v
            } else {
                v
            }
        })
    }

    fn eigenspace(&self, rho_sign: i64, tau_sign: i64) -> Vec<Vec<Rational>> {
        let n = 2 * self.dim();
        let shift = |m: &RatMat, s: i64| m.sub(&RatMat::identity(n).scale(&int(s)));
        let r = shift(&self.rho, rho_sign);
        let t = shift(&self.tau, tau_sign);
        stack(&r, &t).nullspace()
    }

    fn in_eigenspace(&self, v: &[Rational], rho_sign: i64, tau_sign: i64) -> bool {
        let scaled = |s: i64| v.iter().map(|x| x * int(s)).collect::<Vec<_>>();
        self.rho.mul_vec(v) == scaled(rho_sign) && self.tau.mul_vec(v) == scaled(tau_sign)
    }
}

fn stack(a: &RatMat, b: &RatMat) -> RatMat {
    RatMat::from_fn(a.rows() + b.rows(), a.cols(), |i, j| {
        if i < a.rows() {
            a.get(i, j).clone()
        } else {
            b.get(i - a.rows(), j).clone()
        }
    })
}

fn real_basis(basis: &AlgebraBasis) -> Vec<ComplexMat> {
    let reals = basis.elements.iter().cloned().map(ComplexMat::real);
    let imags = basis.elements.iter().cloned().map(ComplexMat::imaginary);
    reals.chain(imags).collect()
}

/// The `2d x 2d` real matrix of a formula on the complexified algebra.
fn involution_matrix(basis: &AlgebraBasis, formula: MatrixFormula) -> Result<RatMat> {
    let d = basis.dimension();
    let mut out = RatMat::zeros(2 * d, 2 * d);
    for (k, x) in real_basis(basis).iter().enumerate() {
        let y = formula.apply(x);
        let mut v = basis.coordinates(&y.re)?;
        v.extend(basis.coordinates(&y.im)?);
        for (i, c) in v.into_iter().enumerate() {
            out.set(i, k, c);
        }
    }
    Ok(out)
}

/// Real coordinates of multiplication by `i`.
fn times_i_matrix(d: usize) -> RatMat {
    RatMat::from_fn(2 * d, 2 * d, |i, j| {
        if i >= d && j + d == i {
            int(1)
        } else if i < d && j == i + d {
            int(-1)
        } else {
            Rational::zero()
        }
    })
}

fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMat::from_fn(vectors.len(), vectors[0].len(), |i, j| vectors[i][j].clone()).rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowVerification {
    pub form: RealForm,
    pub display: String,
    pub parent: AlgebraDescriptor,
    pub formulas: std::collections::BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl RowVerification {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }
}

/// Verifies the identities among `rho`, `tau`, `theta`, `sigma` for one
/// row, exactly, on a full real basis of the complexified parent.
pub fn verify_row(form: RealForm) -> Result<RowVerification> {
    let data = FormData::new(form.validated()?)?;
    let d = data.dim();
    let n2 = RatMat::identity(2 * d);
    let i_mat = times_i_matrix(d);
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool| {
        checks.push(Check {
            name: name.to_string(),
            pass,
        })
    };

    push("rho_squared_identity", data.rho.mul(&data.rho) == n2);
    push("tau_squared_identity", data.tau.mul(&data.tau) == n2);
    push("sigma_squared_identity", data.sigma.mul(&data.sigma) == n2);
    push("sigma_equals_rho_tau", data.sigma == data.rho.mul(&data.tau));
    push("rho_tau_commute", data.rho.mul(&data.tau) == data.tau.mul(&data.rho));
    push("rho_antilinear", data.rho.mul(&i_mat) == i_mat.mul(&data.rho).neg());
    push("tau_antilinear", data.tau.mul(&i_mat) == i_mat.mul(&data.tau).neg());
    push("sigma_linear", data.sigma.mul(&i_mat) == i_mat.mul(&data.sigma));

    let basis = data.basis();
    let elems: Vec<ComplexMat> = basis.elements.iter().cloned().map(ComplexMat::real).collect();
    let automorphism = |which: InvolutionKind| {
        let f = form.formula(which);
        elems.iter().enumerate().all(|(i, x)| {
            elems[i..]
                .iter()
                .all(|y| f.apply(&x.bracket(y)) == f.apply(x).bracket(&f.apply(y)))
        })
    };
    push("rho_automorphism", automorphism(InvolutionKind::Rho));
    push("tau_automorphism", automorphism(InvolutionKind::Tau));
    push("sigma_automorphism", automorphism(InvolutionKind::Sigma));

    // Compact form and theta.
    let compact = data.rho.sub(&n2).nullspace();
    push("compact_form_dimension", compact.len() == d);
    let theta = form.formula(InvolutionKind::Theta);
    let mut theta_preserves = true;
    let mut theta_matches_sigma = true;
    let mut theta_involutive = true;
    for v in &compact {
        let x = data.to_matrix(v);
        let tx = theta.apply(&x);
        match data.to_coords(&tx) {
            Ok(tv) => theta_preserves &= data.rho.mul_vec(&tv) == tv,
            Err(_) => theta_preserves = false,
        }
        theta_matches_sigma &= tx == form.formula(InvolutionKind::Sigma).apply(&x);
        theta_involutive &= theta.apply(&tx) == x;
    }
    push("theta_preserves_compact_form", theta_preserves);
    push("theta_equals_sigma_on_compact_form", theta_matches_sigma);
    push("theta_squared_identity", theta_involutive);

    let compact_killing = inertia(&data.gram(&compact, None, false));
    push(
        "compact_killing_negative_definite",
        compact_killing.definiteness() == Definiteness::Negative,
    );
    let real_valued = compact
        .iter()
        .all(|x| compact.iter().all(|y| data.im_killing(x, y).is_zero()));
    push("killing_real_on_compact_form", real_valued);

    // Cartan involution of the real form g: B_theta(X, Y) = -B(X, sigma Y).
    let real_form = data.tau.sub(&n2).nullspace();
    push("real_form_dimension", real_form.len() == d);
    let b_theta = inertia(&data.gram(&real_form, Some(&data.sigma), true));
    push(
        "b_theta_positive_definite_on_real_form",
        b_theta.definiteness() == Definiteness::Positive,
    );
    // rho is a Cartan involution of the complexification viewed as real.
    let all: Vec<Vec<Rational>> = (0..2 * d)
        .map(|k| {
            (0..2 * d)
                .map(|i| if i == k { int(1) } else { Rational::zero() })
                .collect()
        })
        .collect();
    let b_rho = inertia(&data.gram(&all, Some(&data.rho), true));
    push(
        "b_rho_positive_definite_on_complexification",
        b_rho.definiteness() == Definiteness::Positive,
    );

    let formulas = InvolutionKind::ALL
        .iter()
        .map(|k| (k.to_string(), form.formula(*k).to_string()))
        .collect();
    Ok(RowVerification {
        form,
        display: form.to_string(),
        parent: form.parent(),
        formulas,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub form: RealForm,
    /// Real dimensions of `h`, `m`, `i m`, `i h`.
    pub dims: [usize; 4],
    pub total_real_dim: usize,
    pub brackets_hold: bool,
    pub sigma_fixed_is_h_plus_ih: bool,
    pub compact_killing_negative_on_h: bool,
    #[serde(skip)]
    pub bases: [Vec<ComplexMat>; 4],
}

impl DecompositionReport {
    pub fn consistent(&self) -> bool {
        self.dims.iter().sum::<usize>() == self.total_real_dim
            && self.brackets_hold
            && self.sigma_fixed_is_h_plus_ih
            && self.compact_killing_negative_on_h
    }
}

/// Simultaneous eigenspaces of `(rho, tau)`, labelled `(+,+) = h`,
/// `(-,+) = m`, `(+,-) = i m`, `(-,-) = i h`.
pub fn cartan_decomposition(form: RealForm) -> Result<DecompositionReport> {
    let data = FormData::new(form.validated()?)?;
    let d = data.dim();
    let labels = [(1, 1), (-1, 1), (1, -1), (-1, -1)];
    let spaces: Vec<Vec<Vec<Rational>>> = labels.iter().map(|&(r, t)| data.eigenspace(r, t)).collect();
    let dims = [spaces[0].len(), spaces[1].len(), spaces[2].len(), spaces[3].len()];

    let bracket_lands = |a: &[Vec<Rational>], b: &[Vec<Rational>], target: (i64, i64)| -> Result<bool> {
        for x in a {
            let xm = data.to_matrix(x);
            for y in b {
                let z = data.to_coords(&xm.bracket(&data.to_matrix(y)))?;
                if !data.in_eigenspace(&z, target.0, target.1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let (h, m) = (&spaces[0], &spaces[1]);
    let brackets_hold = bracket_lands(h, h, (1, 1))? && bracket_lands(h, m, (-1, 1))? && bracket_lands(m, m, (1, 1))?;

    let fixed = data.sigma.sub(&RatMat::identity(2 * d)).nullspace();
    let h_ih: Vec<Vec<Rational>> = spaces[0].iter().chain(&spaces[3]).cloned().collect();
    let mut union = fixed.clone();
    union.extend(h_ih.iter().cloned());
    let sigma_fixed_is_h_plus_ih = fixed.len() == h_ih.len() && span_rank(&union) == fixed.len();

    let compact_killing_negative_on_h =
        h.is_empty() || inertia(&data.gram(h, None, false)).definiteness() == Definiteness::Negative;

    let bases = [0, 1, 2, 3].map(|k| spaces[k].iter().map(|v| data.to_matrix(v)).collect());
    Ok(DecompositionReport {
        form: data.form,
        dims,
        total_real_dim: 2 * d,
        brackets_hold,
        sigma_fixed_is_h_plus_ih,
        compact_killing_negative_on_h,
        bases,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactDimReport {
    pub dim: usize,
    pub closed_form: usize,
    pub agree: bool,
}

pub fn maximal_compact_dim(form: RealForm) -> Result<CompactDimReport> {
    let form = form.validated()?;
    let data = FormData::new(form)?;
    let dim = data.eigenspace(1, 1).len();
    let closed_form = form.compact_dim_closed_form();
    Ok(CompactDimReport {
        dim,
        closed_form,
        agree: dim == closed_form,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRankReport {
    pub rank: usize,
    pub cartan_size: usize,
    pub tau_invariant: bool,
    pub commuting: bool,
    pub independent: bool,
    pub killing: Inertia,
    pub pass: bool,
}

/// For split rows, exhibits a `tau`-fixed Cartan subalgebra of full rank
/// on which the Killing form is positive definite. `None` otherwise.
pub fn split_rank_check(form: RealForm) -> Result<Option<SplitRankReport>> {
    let form = form.validated()?;
    if !form.is_split() {
        return Ok(None);
    }
    let parent = form.parent();
    let cartan: Vec<ComplexMat> = match form {
        RealForm::SoOdd { p, q } | RealForm::SoEven { p, q } => {
            // i (E_{k,p+k} - E_{p+k,k}) pairs a negative with a positive
            // direction of I_pq.
            let size = p + q;
            (0..p.min(q))
                .map(|k| {
                    let mut x = RatMat::zeros(size, size);
                    x.set(k, p + k, int(1));
                    x.set(p + k, k, int(-1));
                    ComplexMat::imaginary(x)
                })
                .collect()
        }
        _ => crate::lie::standard_cartan(parent)
            .into_iter()
            .map(ComplexMat::real)
            .collect(),
    };
    let data = FormData::new(form)?;
    let tau = form.formula(InvolutionKind::Tau);
    let tau_invariant = cartan.iter().all(|x| &tau.apply(x) == x);
    let commuting = cartan.iter().all(|x| cartan.iter().all(|y| x.bracket(y).is_zero()));
    let coords = cartan.iter().map(|x| data.to_coords(x)).collect::<Result<Vec<_>>>()?;
    let independent = span_rank(&coords) == cartan.len();
    let killing = inertia(&data.gram(&coords, None, false));
    let pass = tau_invariant
        && commuting
        && independent
        && cartan.len() == parent.rank()
        && killing.definiteness() == Definiteness::Positive;
    Ok(Some(SplitRankReport {
        rank: parent.rank(),
        cartan_size: cartan.len(),
        tau_invariant,
        commuting,
        independent,
        killing,
        pass,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_matrices() {
        assert_eq!(
            standard_matrix(StandardMatrixKind::Ipq { p: 1, q: 1 }),
            RatMat::from_ints(2, 2, &[-1, 0, 0, 1]).unwrap()
        );
        let j1 = standard_matrix(StandardMatrixKind::J { n: 1 });
        assert_eq!(j1, RatMat::from_ints(2, 2, &[0, 1, -1, 0]).unwrap());
        assert_eq!(j1.mul(&j1), RatMat::identity(2).neg());
        let k = standard_matrix(StandardMatrixKind::Kpq { p: 1, q: 1 });
        assert_eq!(k, RatMat::diagonal(&[int(-1), int(1), int(-1), int(1)]));
    }

    #[test]
    fn sl2r_row_and_decomposition() {
        let form = RealForm::SlR { n: 2 };
        let report = verify_row(form).unwrap();
        assert!(report.all_pass(), "{:?}", report.checks);
        let dec = cartan_decomposition(form).unwrap();
        assert_eq!(dec.dims, [1, 2, 2, 1]);
        assert!(dec.consistent());
    }

    #[test]
    fn su11_decomposition() {
        let dec = cartan_decomposition(RealForm::Su { p: 1, q: 1 }).unwrap();
        assert_eq!(dec.dims[0], 1);
        assert_eq!(dec.dims[1], 2);
    }

    #[test]
    fn compact_dims() {
        assert_eq!(maximal_compact_dim(RealForm::SuStar { m: 1 }).unwrap().dim, 3);
        assert_eq!(maximal_compact_dim(RealForm::SpR { n: 1 }).unwrap().dim, 1);
        assert_eq!(maximal_compact_dim(RealForm::SoEven { p: 1, q: 1 }).unwrap().dim, 0);
    }

    #[test]
    fn sigma_of_sl_is_minus_transpose() {
        let x = ComplexMat {
            re: RatMat::from_ints(2, 2, &[1, 2, 3, -1]).unwrap(),
            im: RatMat::from_ints(2, 2, &[0, 5, -2, 0]).unwrap(),
        };
        let y = apply_involution(RealForm::SlR { n: 2 }, InvolutionKind::Sigma, &x).unwrap();
        assert_eq!(y, x.transpose().neg());
        let outside = ComplexMat::real(RatMat::identity(2));
        assert!(apply_involution(RealForm::SlR { n: 2 }, InvolutionKind::Rho, &outside).is_err());
    }

    #[test]
    fn names_round_trip() {
        for f in RealForm::all_up_to(6) {
            let parsed: RealForm = f.to_string().parse().unwrap();
            assert_eq!(parsed, f);
            let json = serde_json::to_string(&f).unwrap();
            assert_eq!(serde_json::from_str::<RealForm>(&json).unwrap(), f);
        }
        assert!("SU*(3)".parse::<RealForm>().is_err());
        assert!(RealForm::SoOdd { p: 1, q: 1 }.validated().is_err());
    }
}
