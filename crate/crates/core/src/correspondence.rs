//! Rank-one modules over the spectral algebra `Q[w][eta]/(p)` and the
//! Higgs matrices they push forward to, together with the inverse
//! eigenline construction and the involution `eta -> -eta`.
//!
//! Conventions: an algebra element is its coordinate vector in the power
//! basis `1, eta, .., eta^(n-1)`; a Higgs matrix has in column `k` the
//! coordinates of `eta * b_k` in the module basis `b`, so a basis, read as
//! a row vector, satisfies `eta * b = b * phi`.

use std::fmt;

use hitchin_exact::rational::{format_rational, int, parse_rational};
use hitchin_exact::{
    char_poly, discriminant, eta_adjugate, hermite_basis, BiPoly, Field, Matrix, PolyMat, RatFunc, RatMat, Rational,
    Ring, SpectralPolynomial, UniPoly,
};
use serde::{Deserialize, Serialize};

use crate::curves::affine_smoothness;
use crate::error::{CoreError, Result};
use crate::real_forms::{standard_matrix, RealForm, StandardMatrixKind};

/// Coordinates in the power basis of the spectral algebra.
pub type Element = Vec<UniPoly>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralAlgebra {
    p: SpectralPolynomial,
}

impl SpectralAlgebra {
    pub fn new(p: SpectralPolynomial) -> Self {
        SpectralAlgebra { p }
    }

    pub fn polynomial(&self) -> &SpectralPolynomial {
        &self.p
    }

    /// Affine smoothness of `p = 0`.
    pub fn is_smooth(&self) -> bool {
        affine_smoothness(&self.p).smooth
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    pub fn zero(&self) -> Element {
        vec![UniPoly::zero(); self.degree()]
    }

    pub fn one(&self) -> Element {
        self.eta_power(0)
    }

    pub fn eta_power(&self, k: usize) -> Element {
        let mut c = vec![UniPoly::zero(); k + 1];
        c[k] = UniPoly::one();
        self.reduce(c)
    }

    /// Reduces a polynomial in `eta` (ascending coefficients, any length)
    /// modulo `p`.
    pub fn reduce(&self, mut coeffs: Vec<UniPoly>) -> Element {
        let n = self.degree();
        for k in (n..coeffs.len()).rev() {
            let top = std::mem::replace(&mut coeffs[k], UniPoly::zero());
            if top.is_zero() {
                continue;
            }
            for (j, c) in self.p.lower().iter().enumerate() {
                coeffs[k - n + j] = &coeffs[k - n + j] - &(&top * c);
            }
        }
        coeffs.resize(n, UniPoly::zero());
        coeffs
    }

    pub fn from_bipoly(&self, b: &BiPoly) -> Element {
        self.reduce(b.coeffs().to_vec())
    }

    pub fn mul(&self, a: &[UniPoly], b: &[UniPoly]) -> Element {
        if a.is_empty() || b.is_empty() {
            return self.zero();
        }
        let mut prod = vec![UniPoly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = &prod[i + j] + &(x * y);
            }
        }
        self.reduce(prod)
    }

    pub fn eta_times(&self, a: &[UniPoly]) -> Element {
        let mut shifted = Vec::with_capacity(a.len() + 1);
        shifted.push(UniPoly::zero());
        shifted.extend_from_slice(a);
        self.reduce(shifted)
    }

    /// `p(-eta) = +-p(eta)`, so that `eta -> -eta` descends to the algebra.
    pub fn has_sigma(&self) -> bool {
        self.p.is_even() || self.p.is_odd()
    }

    pub fn sigma(&self, a: &[UniPoly]) -> Result<Element> {
        if !self.has_sigma() {
            return Err(CoreError::SigmaUndefined);
        }
        Ok(a.iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect())
    }

    /// Hermite basis of the submodule generated by `generators`: the
    /// `Q[w]`-span is enlarged by `eta`-images until it is closed.
    pub fn module_basis(&self, generators: &[Element]) -> Result<PolyMat> {
        Ok(self.closed_basis(generators)?.0)
    }

    /// Echelon basis of the generated module together with the matrix of
    /// `eta` in that basis (column `k` holds the coordinates of
    /// `eta * b_k`).
    fn closed_basis(&self, generators: &[Element]) -> Result<(PolyMat, PolyMat)> {
        let n = self.degree();
        let mut basis = hermite_basis(generators, n)?;
        loop {
            let rank = basis.rows();
            let mut action = PolyMat::zeros(rank, rank);
            let mut missing = Vec::new();
            for k in 0..rank {
                let v = self.eta_times(basis.row(k));
                match echelon_coordinates(&basis, &v) {
                    Some(coords) => coords.into_iter().enumerate().for_each(|(j, c)| action.set(j, k, c)),
                    None => missing.push(v),
                }
            }
            if missing.is_empty() {
                return Ok((basis, action));
            }
            let mut rows = basis.row_vecs();
            rows.extend(missing);
            basis = hermite_basis(&rows, n)?;
        }
    }
}

/// Coordinates of `v` in an echelon basis, or `None` when `v` is not in
/// its `Q[w]`-span.
fn echelon_coordinates(basis: &PolyMat, v: &[UniPoly]) -> Option<Vec<UniPoly>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let row = basis.row(i);
        let pivot = row.iter().position(|x| !x.is_zero())?;
        let c = rest[pivot].exact_div(&row[pivot])?;
        if !c.is_zero() {
            for (r, b) in rest.iter_mut().zip(row).skip(pivot) {
                *r = &*r - &(&c * b);
            }
        }
        coords.push(c);
    }
    rest.iter().all(UniPoly::is_zero).then_some(coords)
}

/// A rank-one module over the spectral algebra, given by generators.
///
/// `twist` is the exponent of `K` the module is meant to be tensored with
/// globally. It is bookkeeping only: `K` is trivial on the affine chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IdealWire", into = "IdealWire")]
pub struct FractionalIdeal {
    algebra: SpectralAlgebra,
    generators: Vec<Element>,
    twist: Rational,
}

#[derive(Serialize, Deserialize)]
struct IdealWire {
    p: SpectralPolynomial,
    generators: Vec<Vec<UniPoly>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    twist: Option<String>,
}

impl TryFrom<IdealWire> for FractionalIdeal {
    type Error = CoreError;

    fn try_from(w: IdealWire) -> Result<Self> {
        let ideal = FractionalIdeal::new(SpectralAlgebra::new(w.p), w.generators)?;
        match w.twist {
            None => Ok(ideal),
            Some(t) => ideal.with_twist(parse_rational(&t)?),
        }
    }
}

impl From<FractionalIdeal> for IdealWire {
    fn from(i: FractionalIdeal) -> Self {
        IdealWire {
            twist: (!i.twist.is_zero()).then(|| format_rational(&i.twist)),
            p: i.algebra.p,
            generators: i.generators,
        }
    }
}

impl FractionalIdeal {
    /// Generators may be longer than the algebra degree; they are reduced.
    pub fn new(algebra: SpectralAlgebra, generators: Vec<Vec<UniPoly>>) -> Result<Self> {
        let generators: Vec<Element> = generators.into_iter().map(|g| algebra.reduce(g)).collect();
        if generators.iter().all(|g| g.iter().all(UniPoly::is_zero)) {
            return Err(CoreError::InvalidDescriptor("ideal needs a nonzero generator".into()));
        }
        Ok(FractionalIdeal {
            algebra,
            generators,
            twist: int(0),
        })
    }

    /// The whole algebra.
    pub fn unit(algebra: SpectralAlgebra) -> Self {
        let one = algebra.one();
        FractionalIdeal {
            algebra,
            generators: vec![one],
            twist: int(0),
        }
    }

    /// Twists are integers or half-integers (a chosen square root of `K`).
    pub fn with_twist(mut self, twist: Rational) -> Result<Self> {
        if !(&twist * int(2)).is_integer() {
            return Err(CoreError::InvalidDescriptor(format!(
                "twist must be a half-integer, got {}",
                format_rational(&twist)
            )));
        }
        self.twist = twist;
        Ok(self)
    }

    pub fn algebra(&self) -> &SpectralAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn twist(&self) -> &Rational {
        &self.twist
    }

    pub fn hermite(&self) -> Result<PolyMat> {
        self.algebra.module_basis(&self.generators)
    }

    pub fn sigma(&self) -> Result<FractionalIdeal> {
        let generators = self
            .generators
            .iter()
            .map(|g| self.algebra.sigma(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(FractionalIdeal {
            algebra: self.algebra.clone(),
            generators,
            twist: self.twist.clone(),
        })
    }

    /// Same submodule, compared through Hermite bases.
    pub fn same_module(&self, other: &FractionalIdeal) -> Result<bool> {
        Ok(self.algebra.p == other.algebra.p && self.hermite()? == other.hermite()?)
    }
}

/// A square matrix over `Q[w]` with its characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HiggsWire")]
pub struct HiggsMatrix {
    phi: PolyMat,
    #[serde(rename = "char")]
    char_poly: SpectralPolynomial,
}

#[derive(Deserialize)]
struct HiggsWire {
    phi: PolyMat,
    #[serde(default, rename = "char")]
    char_poly: Option<SpectralPolynomial>,
}

impl TryFrom<HiggsWire> for HiggsMatrix {
    type Error = CoreError;

    fn try_from(w: HiggsWire) -> Result<Self> {
        let h = HiggsMatrix::new(w.phi)?;
        match w.char_poly {
            Some(c) if c != h.char_poly => Err(CoreError::DegreeMismatch(format!(
                "stated characteristic polynomial {c} differs from the computed {}",
                h.char_poly
            ))),
            _ => Ok(h),
        }
    }
}

impl HiggsMatrix {
    pub fn new(phi: PolyMat) -> Result<Self> {
        let char_poly = char_poly(&phi)?;
        Ok(HiggsMatrix { phi, char_poly })
    }

    pub fn phi(&self) -> &PolyMat {
        &self.phi
    }

    pub fn char_poly(&self) -> &SpectralPolynomial {
        &self.char_poly
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }
}

impl fmt::Display for HiggsMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hitchin_exact::matrix::render_rows(&self.phi, |c| c.to_string()))
    }
}

/// A pushed-forward line: the Higgs matrix and the canonical basis it is
/// written in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineModel {
    pub basis: PolyMat,
    pub higgs: HiggsMatrix,
}

pub fn pushforward_line(ideal: &FractionalIdeal) -> Result<LineModel> {
    let algebra = ideal.algebra();
    let n = algebra.degree();
    let (basis, phi) = algebra.closed_basis(ideal.generators())?;
    if basis.rows() != n {
        return Err(CoreError::NotLineBundle);
    }
    // A rank-n submodule of A spans A over Q(w), where eta acts with
    // characteristic polynomial p.
    let higgs = HiggsMatrix {
        phi,
        char_poly: algebra.polynomial().clone(),
    };
    Ok(LineModel { basis, higgs })
}

/// A rank-two module on the spectral curve, modelled as a direct sum of two
/// rank-one modules over the same algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Rank2Wire")]
pub struct Rank2Module {
    ideals: [FractionalIdeal; 2],
}

#[derive(Deserialize)]
struct Rank2Wire {
    ideals: [FractionalIdeal; 2],
}

impl TryFrom<Rank2Wire> for Rank2Module {
    type Error = CoreError;

    fn try_from(w: Rank2Wire) -> Result<Self> {
        let [a, b] = w.ideals;
        Rank2Module::new(a, b)
    }
}

impl Rank2Module {
    pub fn new(first: FractionalIdeal, second: FractionalIdeal) -> Result<Self> {
        if first.algebra.p != second.algebra.p {
            return Err(CoreError::DegreeMismatch(
                "summands live over different algebras".into(),
            ));
        }
        Ok(Rank2Module {
            ideals: [first, second],
        })
    }

    pub fn algebra(&self) -> &SpectralAlgebra {
        self.ideals[0].algebra()
    }

    pub fn ideals(&self) -> &[FractionalIdeal; 2] {
        &self.ideals
    }
}

/// Multiplication by `eta` on the direct image; the characteristic
/// polynomial is `p^2`.
pub fn pushforward_rank2(module: &Rank2Module) -> Result<HiggsMatrix> {
    let [a, b] = &module.ideals;
    let phi = pushforward_line(a)?
        .higgs
        .phi
        .direct_sum(&pushforward_line(b)?.higgs.phi);
    let higgs = HiggsMatrix::new(phi)?;
    let p = module.algebra().polynomial().to_bipoly();
    let expected = SpectralPolynomial::from_bipoly(&(&p * &p))?;
    if higgs.char_poly != expected {
        return Err(CoreError::Internal("rank-two pushforward is not p^2".into()));
    }
    Ok(higgs)
}

/// The rank-one module `coker(eta - phi)`, as an ideal of the spectral
/// algebra.
///
/// The ideal is the image of an `A`-linear embedding `theta` of `Q[w]^n`
/// (with `eta` acting by `phi`) into `A`, normalized so that
/// `theta(e_{n-1})` is a multiple of `eta^(n-1)`. When `e_{n-1}` is a
/// cyclic vector, `theta(e_k) = eta^(n-1) * adj(K) e_k` with `K` the Krylov
/// matrix of `e_{n-1}`. If `phi` came from [`pushforward_line`], the images
/// are then proportional to the canonical basis and pushing forward again
/// returns `phi` exactly.
///
/// When `eta` is a zero divisor the entries of a row of `adj(eta - phi)`
/// are used instead, rescaled towards triangular shape.
pub fn eigenline(higgs: &HiggsMatrix) -> Result<FractionalIdeal> {
    let p = higgs.char_poly();
    if discriminant(p).is_zero() {
        return Err(CoreError::NonReducedSpectrum);
    }
    let algebra = SpectralAlgebra::new(p.clone());
    if !p.coeff(0).is_zero() {
        if let Some(images) = krylov_images(&algebra, higgs.phi())? {
            return FractionalIdeal::new(algebra, normalize(images));
        }
    }
    adjugate_eigenline(algebra, higgs)
}

fn krylov_images(algebra: &SpectralAlgebra, phi: &PolyMat) -> Result<Option<Vec<Element>>> {
    let n = algebra.degree();
    let mut columns = Vec::with_capacity(n);
    let mut v: Vec<UniPoly> = (0..n)
        .map(|i| if i == n - 1 { UniPoly::one() } else { UniPoly::zero() })
        .collect();
    for _ in 0..n {
        let next = phi.mul_vec(&v);
        columns.push(std::mem::replace(&mut v, next));
    }
    let krylov = PolyMat::from_fn(n, n, |i, j| columns[j][i].clone());
    let adj = krylov.adjugate()?;
    let det = (0..n).fold(UniPoly::zero(), |acc, j| &acc + &(krylov.get(0, j) * adj.get(j, 0)));
    if det.is_zero() {
        return Ok(None);
    }
    let top = algebra.eta_power(n - 1);
    Ok(Some((0..n).map(|k| algebra.mul(&top, &adj.column(k))).collect()))
}

/// Entries of a row `u` of `adj(eta - phi)`, which satisfies
/// `u * phi = eta * u`.
fn adjugate_eigenline(algebra: SpectralAlgebra, higgs: &HiggsMatrix) -> Result<FractionalIdeal> {
    let n = algebra.degree();
    let adj = eta_adjugate(higgs.phi())?;
    let rows: Vec<Vec<Element>> = (0..n)
        .map(|i| (0..n).map(|j| algebra.from_bipoly(adj.get(i, j))).collect())
        .collect();

    let weighted = |weight: &dyn Fn(usize) -> i64| -> Vec<Element> {
        (0..n)
            .map(|j| {
                (0..n).fold(algebra.zero(), |acc, i| {
                    let w = UniPoly::from_ints(&[weight(i)]);
                    acc.iter().zip(&rows[i][j]).map(|(a, b)| a + &(&w * b)).collect()
                })
            })
            .collect()
    };
    let candidates = rows
        .iter()
        .cloned()
        .chain([weighted(&|_| 1), weighted(&|i| i as i64 + 1)]);
    let mut row = None;
    // The span of the entries is already closed under eta, so only its
    // rank needs checking.
    for u in candidates {
        let coords = PolyMat::from_rows(u.clone())?;
        if !coords.determinant()?.is_zero() {
            row = Some(u);
            break;
        }
    }
    let row = row.ok_or(CoreError::NotLineBundle)?;

    let scalings = triangular_scalings(&algebra, &row);
    let mut fallback = None;
    for h in &scalings {
        let gens: Vec<Element> = row.iter().map(|u| algebra.mul(h, u)).collect();
        let Ok(ideal) = FractionalIdeal::new(algebra.clone(), normalize(gens)) else {
            continue;
        };
        if scalings.len() == 1 {
            return Ok(ideal);
        }
        let Ok(model) = pushforward_line(&ideal) else { continue };
        if model.higgs == *higgs {
            return Ok(ideal);
        }
        fallback.get_or_insert(ideal);
    }
    match fallback {
        Some(ideal) => Ok(ideal),
        None => FractionalIdeal::new(algebra, row),
    }
}

/// Polynomial multipliers `h` making every `h * u_k` vanish in the
/// coordinates below `k`. Unique up to scale unless `eta` is a zero divisor;
/// then a few combinations of the solution basis are offered.
fn triangular_scalings(algebra: &SpectralAlgebra, row: &[Element]) -> Vec<Element> {
    let n = algebra.degree();
    let mut conditions: Vec<Vec<RatFunc>> = Vec::new();
    for (k, u) in row.iter().enumerate() {
        let mut shifts = Vec::with_capacity(n);
        let mut cur = u.clone();
        for _ in 0..n {
            let next = algebra.eta_times(&cur);
            shifts.push(std::mem::replace(&mut cur, next));
        }
        for j in 0..k {
            conditions.push(shifts.iter().map(|s| RatFunc::from_poly(s[j].clone())).collect());
        }
    }
    let basis = if conditions.is_empty() {
        vec![vec![<RatFunc as Ring>::one()]]
    } else {
        let rows = conditions.len();
        Matrix::new(rows, n, conditions.into_iter().flatten().collect())
            .expect("rectangular by construction")
            .nullspace()
    };
    let mut out: Vec<Vec<RatFunc>> = basis.clone();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            out.push(a.iter().zip(b).map(|(x, y)| x.add(y)).collect());
            out.push(a.iter().zip(b).map(|(x, y)| x.sub(y)).collect());
        }
    }
    out.into_iter().map(|v| clear_denominators(&v)).collect()
}

fn clear_denominators(v: &[RatFunc]) -> Element {
    let lcm = v.iter().fold(UniPoly::one(), |acc, x| {
        let g = acc.gcd(x.denom());
        &acc * &x.denom().exact_div(&g).expect("gcd divides")
    });
    v.iter()
        .map(|x| x.numer() * &lcm.exact_div(x.denom()).expect("lcm is a multiple"))
        .collect()
}

/// Divides out the common polynomial content and fixes the rational scale.
fn normalize(gens: Vec<Element>) -> Vec<Element> {
    let content = gens.iter().flatten().fold(UniPoly::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return gens;
    }
    let lead = gens
        .iter()
        .flatten()
        .find(|c| !c.is_zero())
        .and_then(|c| c.exact_div(&content))
        .and_then(|c| c.leading().cloned())
        .unwrap_or_else(|| int(1));
    let scale = UniPoly::constant(lead.inv().expect("nonzero"));
    gens.into_iter()
        .map(|g| {
            g.into_iter()
                .map(|c| &c.exact_div(&content).expect("content divides") * &scale)
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaClass {
    Invariant,
    AntiInvariantPairing,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaReport {
    pub class: SigmaClass,
    pub invariant: bool,
    /// A generator of `I * sigma(I)` when one was found among the candidates.
    pub pairing_generator: Option<Element>,
    pub note: String,
}

pub const PAIRING_SEARCH_NOTE: &str =
    "principality of I*sigma(I) is searched among 1 and products of generators with their sigma-images; a miss is not a proof of non-principality";

/// Decides `sigma(I) = I` exactly and searches for a principal generator
/// of `I * sigma(I)`.
pub fn ideal_sigma_test(ideal: &FractionalIdeal) -> Result<SigmaReport> {
    let algebra = ideal.algebra();
    let mirrored = ideal.sigma()?;
    let basis = ideal.hermite()?;
    let invariant = basis == mirrored.hermite()?;

    let products: Vec<Element> = ideal
        .generators()
        .iter()
        .flat_map(|g| mirrored.generators().iter().map(move |s| algebra.mul(g, s)))
        .collect();
    let product_basis = algebra.module_basis(&products)?;
    let mut pairing_generator = None;
    for c in std::iter::once(algebra.one()).chain(products.iter().cloned()) {
        if c.iter().all(UniPoly::is_zero) {
            continue;
        }
        if algebra.module_basis(std::slice::from_ref(&c))? == product_basis {
            pairing_generator = Some(c);
            break;
        }
    }
    let class = if invariant {
        SigmaClass::Invariant
    } else if pairing_generator.is_some() {
        SigmaClass::AntiInvariantPairing
    } else {
        SigmaClass::Neither
    };
    Ok(SigmaReport {
        class,
        invariant,
        pairing_generator,
        note: PAIRING_SEARCH_NOTE.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedPointStatus {
    Pass,
    Fail,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub form: String,
    pub identity: String,
    pub status: FixedPointStatus,
    pub f: Option<RatMat>,
    pub checks: Vec<FixedPointCheck>,
    pub searched: usize,
}

/// The identity `f` must satisfy against `phi` for the given real form.
pub fn fixed_point_identity(form: RealForm) -> &'static str {
    match form {
        RealForm::SlR { .. } => "f symmetric invertible, f phi = phi^t f",
        RealForm::SuStar { .. } => "f skew invertible, f phi = phi^t f",
        RealForm::Su { .. } | RealForm::SoOdd { .. } | RealForm::SoEven { .. } => {
            "f^2 = 1 with p eigenvalues -1, f phi f^-1 = -phi"
        }
        RealForm::SpR { .. } => "f^2 = 1, f^t f = 1, f^t J f = -J, f phi f^-1 = -phi",
        RealForm::SpPQ { .. } => "f^2 = 1, f^t J f = J with 2p eigenvalues -1, f phi f^-1 = -phi",
        RealForm::SoStar { .. } => "f^2 = -1, f^t f = 1, f phi f^-1 = -phi",
    }
}

fn minus_one_multiplicity(f: &RatMat) -> Option<usize> {
    let n = f.rows();
    let excess = int(n as i64) - f.trace();
    let half = excess / int(2);
    half.is_integer().then(|| half.to_integer().try_into().ok()).flatten()
}

fn evaluate(form: RealForm, phi: &PolyMat, f: &RatMat) -> Vec<FixedPointCheck> {
    let n = f.rows();
    let id = RatMat::identity(n);
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool| {
        checks.push(FixedPointCheck {
            name: name.into(),
            pass,
        });
        pass
    };
    let square = f.mul(f);
    let structural = match form {
        RealForm::SlR { .. } => push("symmetric", f.is_symmetric()) && push("invertible", f.inverse().is_some()),
        RealForm::SuStar { .. } => push("skew", f.is_skew()) && push("invertible", f.inverse().is_some()),
        RealForm::Su { p, .. } | RealForm::SoOdd { p, .. } | RealForm::SoEven { p, .. } => {
            push("square_identity", square == id)
                && push("minus_one_multiplicity", minus_one_multiplicity(f) == Some(p))
        }
        RealForm::SpR { .. } => {
            let j = standard_matrix(StandardMatrixKind::J { n: n / 2 });
            push("square_identity", square == id)
                && push("orthogonal", f.transpose().mul(f) == id)
                && push("anti_symplectic", f.transpose().mul(&j).mul(f) == j.neg())
        }
        RealForm::SpPQ { p, .. } => {
            let j = standard_matrix(StandardMatrixKind::J { n: n / 2 });
            push("square_identity", square == id)
                && push("symplectic", f.transpose().mul(&j).mul(f) == j)
                && push("minus_one_multiplicity", minus_one_multiplicity(f) == Some(2 * p))
        }
        RealForm::SoStar { .. } => {
            push("square_minus_identity", square == id.neg()) && push("orthogonal", f.transpose().mul(f) == id)
        }
    };
    if structural {
        let fp = f.to_poly();
        let intertwines = match form {
            RealForm::SlR { .. } | RealForm::SuStar { .. } => fp.mul(phi) == phi.transpose().mul(&fp),
            _ => fp.mul(phi) == phi.mul(&fp).neg(),
        };
        push("intertwining", intertwines);
    }
    checks
}

fn signed_permutations(n: usize) -> Vec<RatMat> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    perms.sort();
    let mut out = Vec::with_capacity(perms.len() << n);
    for signs in 0u32..(1 << n) {
        for perm in &perms {
            out.push(RatMat::from_fn(n, n, |i, j| {
                if perm[i] != j {
                    int(0)
                } else if signs & (1 << i) != 0 {
                    int(-1)
                } else {
                    int(1)
                }
            }));
        }
    }
    out
}

const SIGNED_PERMUTATION_LIMIT: usize = 5;

fn search_space(form: RealForm, n: usize) -> Vec<RatMat> {
    let mut out = vec![RatMat::identity(n)];
    let mut kinds = Vec::new();
    match form {
        RealForm::Su { p, q } | RealForm::SoOdd { p, q } | RealForm::SoEven { p, q } => {
            kinds.push(StandardMatrixKind::Ipq { p, q })
        }
        RealForm::SpPQ { p, q } => kinds.push(StandardMatrixKind::Kpq { p, q }),
        _ => {}
    }
    if n.is_multiple_of(2) {
        kinds.push(StandardMatrixKind::J { n: n / 2 });
    }
    for k in kinds {
        let m = standard_matrix(k);
        out.push(m.neg());
        out.push(m);
    }
    if n <= SIGNED_PERMUTATION_LIMIT {
        out.extend(signed_permutations(n));
    }
    out
}

/// Checks whether `phi` is fixed by the involution attached to `form`,
/// using `candidate` as the intertwiner or searching signed permutations
/// and the standard matrices.
pub fn fixed_point_check(form: RealForm, higgs: &HiggsMatrix, candidate: Option<&RatMat>) -> Result<FixedPointReport> {
    let form = form.validated()?;
    let n = form.parent().matrix_size();
    if higgs.size() != n {
        return Err(CoreError::SizeMismatch(format!(
            "{form} acts on {n}x{n} matrices, got {}x{}",
            higgs.size(),
            higgs.size()
        )));
    }
    let report = |status, f: Option<RatMat>, checks, searched| FixedPointReport {
        form: form.to_string(),
        identity: fixed_point_identity(form).into(),
        status,
        f,
        checks,
        searched,
    };
    if let Some(f) = candidate {
        if f.rows() != n || f.cols() != n {
            return Err(CoreError::SizeMismatch(format!(
                "candidate f is {}x{}, expected {n}x{n}",
                f.rows(),
                f.cols()
            )));
        }
        let checks = evaluate(form, higgs.phi(), f);
        let pass = checks.len() > 1 && checks.iter().all(|c| c.pass) && checks.iter().any(|c| c.name == "intertwining");
        let status = if pass {
            FixedPointStatus::Pass
        } else {
            FixedPointStatus::Fail
        };
        return Ok(report(status, Some(f.clone()), checks, 1));
    }
    let space = search_space(form, n);
    for (i, f) in space.iter().enumerate() {
        let checks = evaluate(form, higgs.phi(), f);
        if checks.iter().all(|c| c.pass) && checks.iter().any(|c| c.name == "intertwining") {
            return Ok(report(FixedPointStatus::Pass, Some(f.clone()), checks, i + 1));
        }
    }
    Ok(report(FixedPointStatus::Undetermined, None, Vec::new(), space.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> UniPoly {
        UniPoly::var()
    }

    fn poly(lower: Vec<UniPoly>) -> SpectralPolynomial {
        SpectralPolynomial::from_ascending(lower).unwrap()
    }

    fn eta2_minus_w() -> SpectralAlgebra {
        SpectralAlgebra::new(poly(vec![-&w(), UniPoly::zero()]))
    }

    fn pm(rows: Vec<Vec<UniPoly>>) -> PolyMat {
        PolyMat::from_rows(rows).unwrap()
    }

    fn local_model() -> PolyMat {
        pm(vec![vec![UniPoly::zero(), w()], vec![UniPoly::one(), UniPoly::zero()]])
    }

    #[test]
    fn free_module_gives_local_model() {
        let a = eta2_minus_w();
        assert!(a.is_smooth());
        let model = pushforward_line(&FractionalIdeal::unit(a)).unwrap();
        assert_eq!(model.higgs.phi(), &local_model());
    }

    #[test]
    fn free_module_gives_companion() {
        let p = poly(vec![UniPoly::one(), w(), UniPoly::zero()]);
        let model = pushforward_line(&FractionalIdeal::unit(SpectralAlgebra::new(p.clone()))).unwrap();
        assert_eq!(model.higgs.phi(), &p.companion());
    }

    #[test]
    fn eta_ideal() {
        let a = eta2_minus_w();
        let i = FractionalIdeal::new(a.clone(), vec![a.eta_power(1)]).unwrap();
        let model = pushforward_line(&i).unwrap();
        assert_eq!(
            model.basis,
            pm(vec![vec![w(), UniPoly::zero()], vec![UniPoly::zero(), UniPoly::one()]])
        );
        assert_eq!(
            model.higgs.phi(),
            &pm(vec![vec![UniPoly::zero(), UniPoly::one()], vec![w(), UniPoly::zero()]])
        );
    }

    #[test]
    fn torsion_is_not_a_line() {
        // eta^2 - 1 = (eta - 1)(eta + 1): the ideal (eta - 1) has rank one.
        let a = SpectralAlgebra::new(poly(vec![UniPoly::from_ints(&[-1]), UniPoly::zero()]));
        let i = FractionalIdeal::new(a, vec![vec![UniPoly::from_ints(&[-1]), UniPoly::one()]]).unwrap();
        assert_eq!(pushforward_line(&i), Err(CoreError::NotLineBundle));
    }

    #[test]
    fn eigenline_of_local_model_is_free() {
        let higgs = HiggsMatrix::new(local_model()).unwrap();
        let ideal = eigenline(&higgs).unwrap();
        assert!(ideal.same_module(&FractionalIdeal::unit(eta2_minus_w())).unwrap());
        assert_eq!(pushforward_line(&ideal).unwrap().higgs, higgs);
    }

    #[test]
    fn eigenline_rejects_repeated_spectrum() {
        let higgs = HiggsMatrix::new(PolyMat::zeros(2, 2)).unwrap();
        assert_eq!(eigenline(&higgs), Err(CoreError::NonReducedSpectrum));
    }

    #[test]
    fn eigenline_round_trip_on_companion() {
        let p = poly(vec![UniPoly::one(), w(), UniPoly::zero()]);
        let higgs = HiggsMatrix::new(p.companion()).unwrap();
        let back = pushforward_line(&eigenline(&higgs).unwrap()).unwrap();
        assert_eq!(back.higgs, higgs);
    }

    #[test]
    fn eigenline_round_trip_when_eta_divides_p() {
        // p = eta^3 - w eta, so eta is a zero divisor.
        let a = SpectralAlgebra::new(poly(vec![UniPoly::zero(), -&w(), UniPoly::zero()]));
        let i = FractionalIdeal::new(
            a.clone(),
            vec![a.eta_power(1), vec![w(), UniPoly::one(), UniPoly::zero()]],
        )
        .unwrap();
        let model = pushforward_line(&i).unwrap();
        let back = pushforward_line(&eigenline(&model.higgs).unwrap()).unwrap();
        assert_eq!(back.higgs, model.higgs);
    }

    #[test]
    fn rank_two_examples() {
        let a = eta2_minus_w();
        let free = FractionalIdeal::unit(a.clone());
        let eta = FractionalIdeal::new(a.clone(), vec![a.eta_power(1)]).unwrap();
        let h = pushforward_rank2(&Rank2Module::new(free.clone(), eta).unwrap()).unwrap();
        let expected = local_model().direct_sum(&pm(vec![
            vec![UniPoly::zero(), UniPoly::one()],
            vec![w(), UniPoly::zero()],
        ]));
        assert_eq!(h.phi(), &expected);

        let c = UniPoly::from_ints(&[2, 1]);
        let linear = SpectralAlgebra::new(poly(vec![-&c]));
        let h = pushforward_rank2(
            &Rank2Module::new(FractionalIdeal::unit(linear.clone()), FractionalIdeal::unit(linear)).unwrap(),
        )
        .unwrap();
        assert_eq!(h.phi(), &PolyMat::diagonal(&[c.clone(), c]));
    }

    #[test]
    fn sigma_examples() {
        let a = eta2_minus_w();
        assert_eq!(
            a.sigma(&a.eta_power(1)).unwrap(),
            vec![UniPoly::zero(), UniPoly::from_ints(&[-1])]
        );
        let eta_sq = a.eta_power(2);
        assert_eq!(eta_sq, vec![w(), UniPoly::zero()]);
        assert_eq!(a.sigma(&eta_sq).unwrap(), eta_sq);
        let bad = SpectralAlgebra::new(poly(vec![UniPoly::one(), w(), UniPoly::zero()]));
        assert_eq!(bad.sigma(&bad.one()), Err(CoreError::SigmaUndefined));
    }

    #[test]
    fn sigma_classes() {
        let a = eta2_minus_w();
        let r = ideal_sigma_test(&FractionalIdeal::unit(a.clone())).unwrap();
        assert_eq!(r.class, SigmaClass::Invariant);
        assert_eq!(r.pairing_generator, Some(a.one()));
        let r = ideal_sigma_test(&FractionalIdeal::new(a.clone(), vec![a.eta_power(1)]).unwrap()).unwrap();
        assert!(r.invariant);
    }

    #[test]
    fn twist_must_be_half_integral() {
        let i = FractionalIdeal::unit(eta2_minus_w());
        assert!(i.clone().with_twist(hitchin_exact::rational::ratio(3, 2)).is_ok());
        assert!(i.with_twist(hitchin_exact::rational::ratio(1, 3)).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        let higgs = HiggsMatrix::new(local_model()).unwrap();
        let swap = RatMat::from_ints(2, 2, &[0, 1, 1, 0]).unwrap();
        let r = fixed_point_check(RealForm::SlR { n: 2 }, &higgs, Some(&swap)).unwrap();
        assert_eq!(r.status, FixedPointStatus::Pass);

        let beta = UniPoly::from_ints(&[1, 2]);
        let gamma = UniPoly::from_ints(&[0, 0, 3]);
        let off = HiggsMatrix::new(pm(vec![vec![UniPoly::zero(), beta], vec![gamma, UniPoly::zero()]])).unwrap();
        let ipq = standard_matrix(StandardMatrixKind::Ipq { p: 1, q: 1 });
        let r = fixed_point_check(RealForm::Su { p: 1, q: 1 }, &off, Some(&ipq)).unwrap();
        assert_eq!(r.status, FixedPointStatus::Pass);

        let scalar = HiggsMatrix::new(PolyMat::identity(2)).unwrap();
        let r = fixed_point_check(RealForm::Su { p: 1, q: 1 }, &scalar, Some(&ipq)).unwrap();
        assert_eq!(r.status, FixedPointStatus::Fail);
        let r = fixed_point_check(RealForm::Su { p: 1, q: 1 }, &scalar, None).unwrap();
        assert_eq!(r.status, FixedPointStatus::Undetermined);
    }

    #[test]
    fn fixed_point_search_finds_identity_for_symmetric() {
        let s = pm(vec![vec![w(), UniPoly::one()], vec![UniPoly::one(), UniPoly::zero()]]);
        let r = fixed_point_check(RealForm::SlR { n: 2 }, &HiggsMatrix::new(s).unwrap(), None).unwrap();
        assert_eq!(r.status, FixedPointStatus::Pass);
        assert_eq!(r.f, Some(RatMat::identity(2)));
    }

    #[test]
    fn fixed_point_size_mismatch() {
        let higgs = HiggsMatrix::new(local_model()).unwrap();
        assert!(matches!(
            fixed_point_check(RealForm::SlR { n: 3 }, &higgs, None),
            Err(CoreError::SizeMismatch(_))
        ));
    }

    #[test]
    fn json_round_trips() {
        let a = eta2_minus_w();
        let i = FractionalIdeal::new(a.clone(), vec![a.eta_power(1)])
            .unwrap()
            .with_twist(hitchin_exact::rational::ratio(1, 2))
            .unwrap();
        let v = serde_json::to_value(&i).unwrap();
        assert_eq!(v["twist"], "1/2");
        let back: FractionalIdeal = serde_json::from_value(v).unwrap();
        assert_eq!(back, i);

        let h = HiggsMatrix::new(local_model()).unwrap();
        let v = serde_json::to_value(&h).unwrap();
        let back: HiggsMatrix = serde_json::from_value(v).unwrap();
        assert_eq!(back, h);
    }
}
