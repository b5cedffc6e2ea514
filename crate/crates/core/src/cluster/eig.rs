//! Dense symmetric eigendecomposition by cyclic Jacobi rotations.

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm (relative to `max(1, ||A||_F)`) at which iteration stops.
pub const OFF_DIAGONAL_TOL: f64 = 1e-11;
pub const MAX_SWEEPS: usize = 100;
/// Allowed asymmetry, relative to `max(1, max |a_ij|)`.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    size: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            data: vec![0.0; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::DimMismatch {
                left: size,
                right: r.len(),
            });
        }
        Ok(Self {
            size,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn off_diagonal(&self) -> f64 {
        let n = self.size;
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.data[i * n + j];
                s += 2.0 * v * v;
            }
        }
        s.sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for SquareMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.size + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.size + j]
    }
}

/// Eigenvalues in ascending order; column `i` of `vectors` pairs with `values[i]`.
#[derive(Debug, Clone)]
pub struct SymEig {
    pub values: Vec<f64>,
    pub vectors: SquareMatrix,
    pub sweeps: usize,
}

impl SymEig {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        (0..self.vectors.size()).map(|r| self.vectors[(r, i)]).collect()
    }
}

pub fn sym_eig(matrix: &SquareMatrix) -> Result<SymEig> {
    let n = matrix.size();
    let scale = matrix.data.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = (matrix[(i, j)] - matrix[(j, i)]).abs();
            if diff > SYMMETRY_TOL * scale {
                return Err(Error::NotSymmetric { i, j, diff });
            }
        }
    }
    let mut a = matrix.clone();
    // symmetrize so the rotations act on an exactly symmetric matrix
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let mut v = SquareMatrix::identity(n);
    let tol = OFF_DIAGONAL_TOL * a.frobenius().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal();
        if off < tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigFailed { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = SquareMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = v[(r, src)];
        }
    }
    Ok(SymEig {
        values,
        vectors,
        sweeps,
    })
}

/// Applies `A <- J^T A J`, `V <- V J` for the plane rotation on `(p, q)`.
fn rotate(a: &mut SquareMatrix, v: &mut SquareMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.size();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> SquareMatrix {
        SquareMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity() {
        let e = sym_eig(&SquareMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_sorted() {
        let e = sym_eig(&m(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(e.vector(0), vec![0.0, 1.0, 0.0]);
        assert_eq!(e.vector(1), vec![0.0, 0.0, 1.0]);
        assert_eq!(e.vector(2), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let (a, b, c) = (2.0, 1.0, 3.0);
        let e = sym_eig(&m(&[&[a, b], &[b, c]])).unwrap();
        let mid = 0.5 * (a + c);
        let r = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        assert!((e.values[0] - (mid - r)).abs() < 1e-10);
        assert!((e.values[1] - (mid + r)).abs() < 1e-10);
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(matches!(
            sym_eig(&m(&[&[1.0, 2.0], &[0.0, 1.0]])),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn empty_and_scalar() {
        assert!(sym_eig(&SquareMatrix::zeros(0)).unwrap().values.is_empty());
        assert_eq!(sym_eig(&m(&[&[-4.0]])).unwrap().values, vec![-4.0]);
    }
}
