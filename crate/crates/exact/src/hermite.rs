//! Canonical row bases of submodules of `Q[w]^r`.

use crate::error::{ExactError, Result};
use crate::matrix::PolyMat;
use crate::poly::UniPoly;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Row-reduced Hermite basis of the `Q[w]`-module spanned by `generators`.
///
/// The result is in row echelon form with strictly increasing pivot
/// columns, every pivot monic, and every entry above a pivot of lower
/// degree than that pivot. This form is unique for a given module, so two
/// generating sets span the same module iff their Hermite bases agree.
pub fn hermite_basis(generators: &[Vec<UniPoly>], ambient_rank: usize) -> Result<PolyMat> {
    if let Some(bad) = generators.iter().find(|g| g.len() != ambient_rank) {
        return Err(ExactError::DimensionMismatch(format!(
            "generator of length {} in ambient rank {ambient_rank}",
            bad.len()
        )));
    }
    // Rows are kept as primitive integer vectors: scaling a row by a
    // nonzero rational is a unimodular operation, and fraction-free
    // elimination avoids the coefficient swell of rational remainders.
    let mut rows: Vec<IntRow> = generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .map(|g| integer_row(g))
        .collect();
    if rows.is_empty() {
        return Err(ExactError::ZeroModule);
    }

    let mut pivots: Vec<usize> = Vec::new();
    let mut top = 0;
    for col in 0..ambient_rank {
        if top == rows.len() {
            break;
        }
        // Euclid down the column until a single nonzero entry survives.
        loop {
            let best = (top..rows.len())
                .filter(|&i| !rows[i][col].is_empty())
                .min_by_key(|&i| rows[i][col].len());
            let Some(best) = best else { break };
            rows.swap(top, best);
            let (head, tail) = rows.split_at_mut(top + 1);
            let pivot_row = &head[top];
            let mut done = true;
            for row in tail.iter_mut().filter(|r| !r[col].is_empty()) {
                reduce(row, pivot_row, col);
                if !row[col].is_empty() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col].is_empty() {
            continue;
        }
        pivots.push(col);
        top += 1;
        rows.retain(|r| r.iter().any(|x| !x.is_empty()));
    }
    rows.truncate(top);

    for (i, &col) in pivots.iter().enumerate() {
        let (head, tail) = rows.split_at_mut(i);
        let pivot_row = &tail[0];
        for row in head.iter_mut().filter(|r| !r[col].is_empty()) {
            reduce(row, pivot_row, col);
        }
    }

    let n = rows.len();
    let entries = rows
        .into_iter()
        .zip(&pivots)
        .flat_map(|(row, &col)| {
            let lc = row[col].last().expect("pivot entry is nonzero").clone();
            row.into_iter()
                .map(move |e| UniPoly::new(e.into_iter().map(|c| Rational::new(c, lc.clone())).collect()))
        })
        .collect();
    PolyMat::new(n, ambient_rank, entries)
}

/// Ascending integer coefficients per entry, without trailing zeros.
type IntRow = Vec<Vec<BigInt>>;

fn integer_row(row: &[UniPoly]) -> IntRow {
    let lcm = row
        .iter()
        .flat_map(|x| x.coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|x| x.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect())
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let g = row.iter().flatten().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut().flatten() {
            *c /= &g;
        }
    }
}

/// Lowers the degree of `row[col]` below that of `pivot[col]` by
/// subtracting multiples of `pivot`, rescaling `row` as needed.
fn reduce(row: &mut IntRow, pivot: &IntRow, col: usize) {
    let target = pivot[col].len();
    while row[col].len() >= target {
        let a = pivot[col].last().expect("pivot entry is nonzero");
        let b = row[col].last().expect("checked nonempty");
        let g = a.gcd(b);
        let (a, b) = (a / &g, b / &g);
        let shift = row[col].len() - target;
        for (x, y) in row.iter_mut().zip(pivot) {
            combine(x, &a, y, &b, shift);
        }
    }
    make_primitive(row);
}

/// `x <- a x - b w^shift y`
fn combine(x: &mut Vec<BigInt>, a: &BigInt, y: &[BigInt], b: &BigInt, shift: usize) {
    if y.is_empty() {
        if !a.is_one() {
            x.iter_mut().for_each(|c| *c *= a);
        }
        return;
    }
    if x.len() < y.len() + shift {
        x.resize(y.len() + shift, BigInt::zero());
    }
    if !a.is_one() {
        x.iter_mut().for_each(|c| *c *= a);
    }
    for (c, d) in x[shift..].iter_mut().zip(y) {
        *c -= b * d;
    }
    while x.last().is_some_and(Zero::is_zero) {
        x.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn free_module_gives_identity() {
        let b = hermite_basis(&[vec![p(&[1]), p(&[])], vec![p(&[]), p(&[1])]], 2).unwrap();
        assert_eq!(b, PolyMat::identity(2));
        let b = hermite_basis(
            &[vec![p(&[0, 1]), p(&[])], vec![p(&[1]), p(&[])], vec![p(&[]), p(&[1])]],
            2,
        )
        .unwrap();
        assert_eq!(b, PolyMat::identity(2));
    }

    #[test]
    fn diagonal_w_module() {
        let w = p(&[0, 1]);
        let b = hermite_basis(
            &[
                vec![w.clone(), p(&[])],
                vec![p(&[]), w.clone()],
                vec![w.clone(), w.clone()],
            ],
            2,
        )
        .unwrap();
        assert_eq!(b, PolyMat::diagonal(&[w.clone(), w]));
    }

    #[test]
    fn above_pivot_reduction() {
        // rows (1, w^2 + 1), (0, w) -> (1, 1), (0, w)
        let b = hermite_basis(&[vec![p(&[1]), p(&[1, 0, 1])], vec![p(&[]), p(&[0, 2])]], 2).unwrap();
        let expect = PolyMat::from_rows(vec![vec![p(&[1]), p(&[1])], vec![p(&[]), p(&[0, 1])]]).unwrap();
        assert_eq!(b, expect);
    }

    #[test]
    fn rank_deficient_and_errors() {
        let b = hermite_basis(&[vec![p(&[0, 1]), p(&[0, 0, 1])], vec![p(&[1]), p(&[0, 1])]], 2).unwrap();
        assert_eq!(b.rows(), 1);
        assert_eq!(b.row(0), &[p(&[1]), p(&[0, 1])]);
        assert_eq!(hermite_basis(&[vec![p(&[]), p(&[])]], 2), Err(ExactError::ZeroModule));
        assert!(hermite_basis(&[vec![p(&[1])]], 2).is_err());
    }
}
