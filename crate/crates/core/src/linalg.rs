//! Exact linear algebra over ℚ: fraction-free (Bareiss) elimination,
//! reduced echelon forms, kernels and subspace comparison.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::{lcm_denominators, Laurent, Rational};
use crate::error::{Error, Result};
use crate::ncpoly::{NcPoly, Tensor, Word};

/// Fraction-free row echelon form of an integer matrix, in place.
/// Returns the pivot columns.
fn bareiss(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    for row in m.iter_mut().skip(r) {
        for v in row.iter_mut() {
            *v = BigInt::zero();
        }
    }
    pivots
}

/// Reduced row echelon form (nonzero rows only) and pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    if rows.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = lcm_denominators(row.iter());
            row.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let pivots = bareiss(&mut m);
    let mut out: Vec<Vec<Rational>> = m
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    // back-substitution to reduced form
    for (i, &c) in pivots.iter().enumerate().rev() {
        let p = out[i][c].clone();
        for v in out[i].iter_mut() {
            *v /= &p;
        }
        for k in 0..i {
            let f = out[k][c].clone();
            if !f.is_zero() {
                for j in c..cols {
                    let d = &f * &out[i][j];
                    out[k][j] -= d;
                }
            }
        }
    }
    (out, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Kernel of the linear map with the given column images (column `j` is the
/// image of domain basis vector `j`). Vectors are returned in reduced
/// echelon form with respect to the domain order.
pub fn kernel<K: Ord + Clone>(images: &[BTreeMap<K, Rational>]) -> Vec<Vec<Rational>> {
    let n = images.len();
    let mut keys: BTreeMap<K, usize> = BTreeMap::new();
    for im in images {
        for k in im.keys() {
            let len = keys.len();
            keys.entry(k.clone()).or_insert(len);
        }
    }
    let mut mat = vec![vec![Rational::zero(); n]; keys.len()];
    for (j, im) in images.iter().enumerate() {
        for (k, v) in im {
            mat[keys[k]][j] = v.clone();
        }
    }
    let (r, pivots) = if mat.is_empty() { (Vec::new(), Vec::new()) } else { rref(&mat) };
    let mut basis = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[i][f].clone();
        }
        basis.push(v);
    }
    rref(&basis).0
}

/// Do the two families of vectors span the same subspace?
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    rref(a).0 == rref(b).0
}

/// Coordinates of polynomials with respect to a word list (dense rows).
pub fn coords(polys: &[NcPoly<Rational>], basis: &[Word]) -> Vec<Vec<Rational>> {
    polys.iter().map(|p| basis.iter().map(|w| p.coeff(w)).collect()).collect()
}

/// Exact ℚ-basis of the kernel of a map given by its images on `domain`.
/// The domain is taken in descending monomial order so that each returned
/// vector is monic in its leading word.
pub fn kernel_basis(
    domain: &[Word],
    images: &[Tensor<Laurent>],
    nu: Option<u32>,
    trunc: u32,
) -> Result<Vec<NcPoly<Rational>>> {
    if domain.len() != images.len() {
        return Err(Error::Invalid("domain/image length mismatch".into()));
    }
    let mut order: Vec<usize> = (0..domain.len()).collect();
    order.sort_by(|&i, &j| domain[j].cmp(&domain[i]));
    let mut cols = Vec::with_capacity(domain.len());
    for &i in &order {
        let t = images[i].to_rational()?;
        cols.push(t.terms().map(|(k, c)| (k.clone(), c.clone())).collect::<BTreeMap<_, _>>());
    }
    Ok(kernel(&cols)
        .into_iter()
        .map(|v| {
            let mut p = NcPoly::zero(nu, trunc);
            for (pos, c) in v.iter().enumerate() {
                p.add_term(domain[order[pos]].clone(), c);
            }
            p
        })
        .collect())
}

/// Exact solve of a square nonsingular system given as dense columns;
/// returns the inverse matrix (rows indexed like the columns).
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, p);
        let pv = aug[c][c].clone();
        for v in aug[c].iter_mut() {
            *v /= &pv;
        }
        let pivot_row = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for j in c..2 * n {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &f * &pivot_row[j];
                    }
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_small() {
        let (r, p) = rref(&[v(&[2, 4, 6]), v(&[1, 2, 4]), v(&[3, 6, 10])]);
        assert_eq!(p, vec![0, 2]);
        assert_eq!(r, vec![v(&[1, 2, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_identity_and_zero() {
        let id: Vec<BTreeMap<usize, Rational>> =
            (0..3).map(|i| [(i, rat(1))].into_iter().collect()).collect();
        assert!(kernel(&id).is_empty());
        let zero: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); 3];
        assert_eq!(kernel(&zero).len(), 3);
    }

    #[test]
    fn kernel_rank_nullity() {
        // columns (1,2), (2,4), (0,1)
        let cols: Vec<BTreeMap<usize, Rational>> = vec![
            [(0, rat(1)), (1, rat(2))].into_iter().collect(),
            [(0, rat(2)), (1, rat(4))].into_iter().collect(),
            [(1, rat(1))].into_iter().collect(),
        ];
        let k = kernel(&cols);
        assert_eq!(k, vec![vec![rat(1), ratio(-1, 2), rat(0)]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![v(&[1, -1]), v(&[-1, 2])]);
        assert!(inverse(&[v(&[1, 2]), v(&[2, 4])]).is_none());
    }
}
