//! The classical complex matrix Lie algebras with explicit rational bases,
//! their adjoint representations and Killing forms.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use hitchin_exact::rational::int;
use hitchin_exact::{RatMat, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gl,
    Sl,
    SoOdd,
    SoEven,
    Sp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::SoOdd => "so_odd",
            Family::SoEven => "so_even",
            Family::Sp => "sp",
        })
    }
}

/// A classical algebra. `n` is the matrix size for `gl`/`sl` and the rank
/// parameter otherwise: `so_odd` is `(2n+1)`-square, `so_even` and `sp`
/// are `2n`-square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor")]
pub struct AlgebraDescriptor {
    pub family: Family,
    pub n: usize,
}

#[derive(Deserialize)]
struct RawDescriptor {
    family: Family,
    n: usize,
}

impl TryFrom<RawDescriptor> for AlgebraDescriptor {
    type Error = CoreError;
    fn try_from(raw: RawDescriptor) -> Result<Self> {
        AlgebraDescriptor::new(raw.family, raw.n)
    }
}

impl AlgebraDescriptor {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::InvalidDescriptor(format!(
                "{family}: parameter must be >= 1"
            )));
        }
        if family == Family::Sl && n < 2 {
            return Err(CoreError::InvalidDescriptor("sl needs n >= 2".into()));
        }
        Ok(AlgebraDescriptor { family, n })
    }

    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::Gl | Family::Sl => self.n,
            Family::SoOdd => 2 * self.n + 1,
            Family::SoEven | Family::Sp => 2 * self.n,
        }
    }

    /// Complex dimension.
    pub fn dimension(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::Gl => n * n,
            Family::Sl => n * n - 1,
            Family::SoOdd | Family::Sp => n * (2 * n + 1),
            Family::SoEven => n * (2 * n - 1),
        }
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::Sl => self.n - 1,
            _ => self.n,
        }
    }

    /// `so(2)` is abelian and `gl` has a center; everything else in scope
    /// is semisimple.
    pub fn is_semisimple(&self) -> bool {
        !matches!(self.family, Family::Gl) && !(self.family == Family::SoEven && self.n == 1)
    }

    /// The defining linear conditions of the family.
    pub fn contains(&self, x: &RatMat) -> bool {
        let size = self.matrix_size();
        if x.rows() != size || x.cols() != size {
            return false;
        }
        match self.family {
            Family::Gl => true,
            Family::Sl => x.trace().is_zero(),
            Family::SoOdd | Family::SoEven => x.is_skew(),
            Family::Sp => {
                let j = symplectic_unit(self.n);
                j.mul(x).add(&x.transpose().mul(&j)).is_zero()
            }
        }
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Gl | Family::Sl => write!(f, "{}({})", self.family, self.n),
            Family::SoOdd | Family::SoEven => write!(f, "so({})", self.matrix_size()),
            Family::Sp => write!(f, "sp({})", self.matrix_size()),
        }
    }
}

/// `[[0, I_n], [-I_n, 0]]`
pub fn symplectic_unit(n: usize) -> RatMat {
    RatMat::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j == i + n {
            int(1)
        } else if i >= n && j + n == i {
            int(-1)
        } else {
            Rational::zero()
        }
    })
}

fn unit(size: usize, i: usize, j: usize) -> RatMat {
    let mut m = RatMat::zeros(size, size);
    m.set(i, j, int(1));
    m
}

fn unit_combo(size: usize, terms: &[(usize, usize, i64)]) -> RatMat {
    let mut m = RatMat::zeros(size, size);
    for &(i, j, c) in terms {
        let v = m.get(i, j) + int(c);
        m.set(i, j, v);
    }
    m
}

/// An explicit basis together with the data needed to read off
/// coordinates of arbitrary elements.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub descriptor: AlgebraDescriptor,
    pub elements: Vec<RatMat>,
    /// Matrix positions whose entries determine the coordinates.
    pivots: Vec<(usize, usize)>,
    /// Inverse of the pivot-entry matrix of the basis.
    readout: RatMat,
}

impl AlgebraBasis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates of `x`, or an error when `x` is not in the span.
    pub fn coordinates(&self, x: &RatMat) -> Result<Vec<Rational>> {
        let size = self.descriptor.matrix_size();
        if x.rows() != size || x.cols() != size {
            return Err(CoreError::OutsideAlgebra);
        }
        let picked: Vec<Rational> = self.pivots.iter().map(|&(i, j)| x.get(i, j).clone()).collect();
        let d = self.dimension();
        let coords: Vec<Rational> = (0..d)
            .map(|k| {
                picked
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .fold(Rational::zero(), |acc, (l, v)| acc + v * self.readout.get(l, k))
            })
            .collect();
        if &self.combine(&coords) != x {
            return Err(CoreError::OutsideAlgebra);
        }
        Ok(coords)
    }

    pub fn combine(&self, coords: &[Rational]) -> RatMat {
        let size = self.descriptor.matrix_size();
        let mut out = RatMat::zeros(size, size);
        for (c, e) in coords.iter().zip(&self.elements) {
            if !c.is_zero() {
                out = out.add(&e.scale(c));
            }
        }
        out
    }
}

/// Elementary-matrix basis of the algebra, in a fixed order.
pub fn standard_basis(d: AlgebraDescriptor) -> AlgebraBasis {
    let size = d.matrix_size();
    let n = d.n;
    let mut elements = Vec::with_capacity(d.dimension());
    match d.family {
        Family::Gl => {
            for i in 0..n {
                for j in 0..n {
                    elements.push(unit(n, i, j));
                }
            }
        }
        Family::Sl => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        elements.push(unit(n, i, j));
                    }
                }
            }
            for k in 0..n - 1 {
                elements.push(unit_combo(n, &[(k, k, 1), (k + 1, k + 1, -1)]));
            }
        }
        Family::SoOdd | Family::SoEven => {
            for i in 0..size {
                for j in i + 1..size {
                    elements.push(unit_combo(size, &[(i, j, 1), (j, i, -1)]));
                }
            }
        }
        Family::Sp => {
            // [[A, B], [C, -A^t]] with B, C symmetric.
            for i in 0..n {
                for j in 0..n {
                    elements.push(unit_combo(size, &[(i, j, 1), (n + j, n + i, -1)]));
                }
            }
            for i in 0..n {
                for j in i..n {
                    if i == j {
                        elements.push(unit(size, i, n + i));
                    } else {
                        elements.push(unit_combo(size, &[(i, n + j, 1), (j, n + i, 1)]));
                    }
                }
            }
            for i in 0..n {
                for j in i..n {
                    if i == j {
                        elements.push(unit(size, n + i, i));
                    } else {
                        elements.push(unit_combo(size, &[(n + i, j, 1), (n + j, i, 1)]));
                    }
                }
            }
        }
    }
    let flat = RatMat::from_fn(elements.len(), size * size, |k, p| {
        elements[k].get(p / size, p % size).clone()
    });
    // Independent entry positions: the pivot columns of the flattened basis.
    let (_, pivot_cols) = flat.rref();
    let pivots: Vec<(usize, usize)> = pivot_cols.iter().map(|&p| (p / size, p % size)).collect();
    let all_rows: Vec<usize> = (0..elements.len()).collect();
    // Coordinates c satisfy c^t * square = picked^t.
    let readout = flat
        .select(&all_rows, &pivot_cols)
        .inverse()
        .expect("basis elements are independent");
    AlgebraBasis {
        descriptor: d,
        elements,
        pivots,
        readout,
    }
}

/// The matrix of `ad x` in the basis: column `j` holds the coordinates of
/// `[x, e_j]`.
pub fn ad_matrix(x: &RatMat, basis: &AlgebraBasis) -> Result<RatMat> {
    basis.coordinates(x)?;
    let d = basis.dimension();
    let mut out = RatMat::zeros(d, d);
    for (j, e) in basis.elements.iter().enumerate() {
        let c = basis.coordinates(&x.commutator(e))?;
        for (i, v) in c.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// A symmetric bilinear form on an algebra, as a Gram matrix in its basis.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub basis: AlgebraBasis,
    pub gram: RatMat,
}

impl BilinearForm {
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(&gy)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn eval_matrices(&self, x: &RatMat, y: &RatMat) -> Result<Rational> {
        Ok(self.eval(&self.basis.coordinates(x)?, &self.basis.coordinates(y)?))
    }
}

fn trace_of_product(a: &RatMat, b: &RatMat) -> Rational {
    let n = a.rows();
    let mut acc = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            let y = b.get(k, i);
            if !y.is_zero() {
                acc += x * y;
            }
        }
    }
    acc
}

/// `B(e_i, e_j) = Tr(ad e_i ad e_j)`.
pub fn killing_gram(basis: &AlgebraBasis) -> BilinearForm {
    let ads: Vec<RatMat> = basis
        .elements
        .iter()
        .map(|e| ad_matrix(e, basis).expect("basis element lies in its algebra"))
        .collect();
    let d = basis.dimension();
    let mut gram = RatMat::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = trace_of_product(&ads[i], &ads[j]);
            gram.set(i, j, v.clone());
            gram.set(j, i, v);
        }
    }
    BilinearForm {
        basis: basis.clone(),
        gram,
    }
}

/// Basis and Killing form of an algebra, computed once per process.
pub fn cached_killing(d: AlgebraDescriptor) -> Arc<BilinearForm> {
    static CACHE: OnceLock<Mutex<HashMap<AlgebraDescriptor, Arc<BilinearForm>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&d) {
        return f.clone();
    }
    let form = Arc::new(killing_gram(&standard_basis(d)));
    cache.lock().unwrap().entry(d).or_insert(form).clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

impl Inertia {
    pub fn definiteness(&self) -> Definiteness {
        match (self.positive, self.negative, self.zero) {
            (p, n, _) if p > 0 && n > 0 => Definiteness::Indefinite,
            (_, _, z) if z > 0 => Definiteness::Degenerate,
            (_, 0, _) => Definiteness::Positive,
            _ => Definiteness::Negative,
        }
    }
}

/// Sylvester inertia of a symmetric rational matrix by symmetric
/// elimination. When every remaining diagonal entry vanishes, a nonzero
/// off-diagonal entry is moved onto the diagonal by a congruence.
pub fn inertia(s: &RatMat) -> Inertia {
    assert!(s.is_symmetric(), "inertia needs a symmetric matrix");
    let mut m = s.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&k| !m.get(k, k).is_zero());
        let k = match pivot {
            Some(k) => k,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i < j && !m.get(i, j).is_zero());
                let Some((i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                // row/col i += row/col j
                for &c in &active {
                    let v = m.get(i, c) + m.get(j, c);
                    m.set(i, c, v);
                }
                for &r in &active {
                    let v = m.get(r, i) + m.get(r, j);
                    m.set(r, i, v);
                }
                i
            }
        };
        let d = m.get(k, k).clone();
        if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        active.retain(|&x| x != k);
        for &i in &active {
            let f = m.get(i, k) / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = m.get(i, j) - &f * m.get(k, j);
                m.set(i, j, v);
            }
        }
    }
    out
}

/// `S_ij = B(v_i, v_j)` for coordinate vectors `v`.
pub fn restricted_gram(gram: &RatMat, vectors: &[Vec<Rational>]) -> RatMat {
    let images: Vec<Vec<Rational>> = vectors.iter().map(|v| gram.mul_vec(v)).collect();
    let k = vectors.len();
    RatMat::from_fn(k, k, |i, j| {
        vectors[i]
            .iter()
            .zip(&images[j])
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    })
}

/// Signature class of the form restricted to the span of `subspace`.
pub fn definiteness(form: &BilinearForm, subspace: &[RatMat]) -> Result<Definiteness> {
    if subspace.is_empty() {
        return Err(CoreError::EmptySubspace);
    }
    let coords = subspace
        .iter()
        .map(|x| form.basis.coordinates(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(inertia(&restricted_gram(&form.gram, &coords)).definiteness())
}

/// Diagonal Cartan for `gl`, `sl`, `sp`; commuting rotation blocks for
/// the orthogonal algebras.
pub fn standard_cartan(d: AlgebraDescriptor) -> Vec<RatMat> {
    let size = d.matrix_size();
    let n = d.n;
    match d.family {
        Family::Gl => (0..n).map(|k| unit(n, k, k)).collect(),
        Family::Sl => (0..n - 1)
            .map(|k| unit_combo(n, &[(k, k, 1), (k + 1, k + 1, -1)]))
            .collect(),
        Family::Sp => (0..n)
            .map(|k| unit_combo(size, &[(k, k, 1), (n + k, n + k, -1)]))
            .collect(),
        Family::SoOdd | Family::SoEven => (0..n)
            .map(|k| unit_combo(size, &[(2 * k, 2 * k + 1, 1), (2 * k + 1, 2 * k, -1)]))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hitchin_exact::Matrix;

    fn desc(f: Family, n: usize) -> AlgebraDescriptor {
        AlgebraDescriptor::new(f, n).unwrap()
    }

    #[test]
    fn dimensions_match_closed_forms() {
        assert_eq!(standard_basis(desc(Family::Sl, 2)).dimension(), 3);
        assert_eq!(standard_basis(desc(Family::Sp, 2)).dimension(), 10);
        assert_eq!(standard_basis(desc(Family::SoEven, 2)).dimension(), 6);
        for n in 1..=6 {
            for f in [Family::Gl, Family::Sl, Family::SoOdd, Family::SoEven, Family::Sp] {
                let Ok(d) = AlgebraDescriptor::new(f, n) else { continue };
                let b = standard_basis(d);
                assert_eq!(b.dimension(), d.dimension(), "{d}");
                assert!(b.elements.iter().all(|e| d.contains(e)), "{d}");
            }
        }
    }

    #[test]
    fn sl2_cartan_eigenvalues_and_killing() {
        let d = desc(Family::Sl, 2);
        let b = standard_basis(d);
        let h = RatMat::from_ints(2, 2, &[1, 0, 0, -1]).unwrap();
        let ad = ad_matrix(&h, &b).unwrap();
        // the basis is E12, E21, H so ad H is diagonal
        assert_eq!(ad, RatMat::diagonal(&[int(2), int(-2), int(0)]));
        let k = killing_gram(&b);
        assert_eq!(k.eval_matrices(&h, &h).unwrap(), int(8));
        assert!(k.gram.is_symmetric());
        assert_eq!(ad_matrix(&RatMat::zeros(2, 2), &b).unwrap(), RatMat::zeros(3, 3));
    }

    #[test]
    fn outside_algebra_is_rejected() {
        let b = standard_basis(desc(Family::Sl, 2));
        assert_eq!(ad_matrix(&RatMat::identity(2), &b), Err(CoreError::OutsideAlgebra));
        let so = standard_basis(desc(Family::SoOdd, 1));
        assert_eq!(so.coordinates(&RatMat::identity(3)), Err(CoreError::OutsideAlgebra));
    }

    #[test]
    fn definiteness_examples() {
        let d = desc(Family::Sl, 2);
        let k = killing_gram(&standard_basis(d));
        let h = RatMat::from_ints(2, 2, &[1, 0, 0, -1]).unwrap();
        assert_eq!(definiteness(&k, &[h]).unwrap(), Definiteness::Positive);
        // so(3) is compact: negative definite Killing form on real skew matrices
        let so3 = desc(Family::SoOdd, 1);
        let k = killing_gram(&standard_basis(so3));
        assert_eq!(
            definiteness(&k, &standard_basis(so3).elements).unwrap(),
            Definiteness::Negative
        );
        assert_eq!(definiteness(&k, &[]), Err(CoreError::EmptySubspace));
        assert_eq!(inertia(&RatMat::zeros(1, 1)).definiteness(), Definiteness::Degenerate);
        // [[0,1],[1,0]] needs the off-diagonal congruence
        let hyperbolic = Matrix::from_ints(2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(
            inertia(&hyperbolic),
            Inertia {
                positive: 1,
                negative: 1,
                zero: 0
            }
        );
    }

    #[test]
    fn cartan_ranks() {
        for n in 1..=5 {
            for f in [Family::Sl, Family::SoOdd, Family::SoEven, Family::Sp] {
                let Ok(d) = AlgebraDescriptor::new(f, n) else { continue };
                let h = standard_cartan(d);
                assert_eq!(h.len(), d.rank());
                let b = standard_basis(d);
                let coords: Vec<Vec<Rational>> = h.iter().map(|x| b.coordinates(x).unwrap()).collect();
                let m = RatMat::from_fn(coords.len(), d.dimension(), |i, j| coords[i][j].clone());
                assert_eq!(m.rank(), d.rank());
                for x in &h {
                    for y in &h {
                        assert!(x.commutator(y).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn descriptor_validation() {
        assert!(AlgebraDescriptor::new(Family::Sl, 1).is_err());
        assert!(AlgebraDescriptor::new(Family::Sp, 0).is_err());
        let d: AlgebraDescriptor = serde_json::from_str(r#"{"family":"so_even","n":2}"#).unwrap();
        assert_eq!(d.matrix_size(), 4);
        assert!(serde_json::from_str::<AlgebraDescriptor>(r#"{"family":"sl","n":1}"#).is_err());
    }
}
