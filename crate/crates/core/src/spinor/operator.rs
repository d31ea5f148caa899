//! Sparse complex matrices over an enumerated basis.

use std::collections::BTreeMap;
use std::io::{self, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;

/// Row-major sparse matrix; each row holds `(column, value)` sorted by column.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub dim: usize,
    pub rows: Vec<Vec<(usize, C64)>>,
}

const DROP: f64 = 1e-15;

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            rows: (0..dim).map(|i| vec![(i, C64::new(1.0, 0.0))]).collect(),
        }
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = OperatorMatrix::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            if v.norm() > DROP {
                m.rows[i].push((i, *v));
            }
        }
        m
    }

    /// Sums duplicate entries and drops negligible ones.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, C64)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, C64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            *acc[r].entry(c).or_insert(C64::new(0.0, 0.0)) += v;
        }
        OperatorMatrix {
            dim,
            rows: acc
                .into_iter()
                .map(|row| row.into_iter().filter(|(_, v)| v.norm() > DROP).collect())
                .collect(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.rows[r]
            .binary_search_by_key(&c, |e| e.0)
            .map(|i| self.rows[r][i].1)
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn scale(&self, s: C64) -> Self {
        OperatorMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|&(c, v)| (c, v * s)).collect())
                .collect(),
        }
    }

    pub fn add(&self, o: &OperatorMatrix) -> Self {
        self.lin(o, C64::new(1.0, 0.0))
    }

    pub fn sub(&self, o: &OperatorMatrix) -> Self {
        self.lin(o, C64::new(-1.0, 0.0))
    }

    /// `self + s * o`.
    pub fn lin(&self, o: &OperatorMatrix, s: C64) -> Self {
        assert_eq!(self.dim, o.dim);
        OperatorMatrix::from_triplets(
            self.dim,
            self.triplets().chain(o.triplets().map(|(r, c, v)| (r, c, v * s))),
        )
    }

    pub fn mul(&self, o: &OperatorMatrix) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            let mut acc: BTreeMap<usize, C64> = BTreeMap::new();
            for &(k, a) in row {
                for &(c, b) in &o.rows[k] {
                    *acc.entry(c).or_insert(C64::new(0.0, 0.0)) += a * b;
                }
            }
            rows.push(acc.into_iter().filter(|(_, v)| v.norm() > DROP).collect());
        }
        OperatorMatrix { dim: self.dim, rows }
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn commutator(&self, o: &OperatorMatrix) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &OperatorMatrix) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.triplets().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entry in rows and columns both accepted by `keep`.
    pub fn max_abs_on(&self, keep: impl Fn(usize) -> bool) -> f64 {
        self.triplets()
            .filter(|(r, c, _)| keep(*r) && keep(*c))
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `self - s * Id` on the accepted block.
    pub fn deviation_from_scalar(&self, s: C64, keep: impl Fn(usize) -> bool) -> f64 {
        let mut worst: f64 = 0.0;
        for r in (0..self.dim).filter(|&r| keep(r)) {
            let mut diag = C64::new(0.0, 0.0);
            for &(c, v) in &self.rows[r] {
                if c == r {
                    diag = v;
                } else if keep(c) {
                    worst = worst.max(v.norm());
                }
            }
            worst = worst.max((diag - s).norm());
        }
        worst
    }

    /// Dense submatrix on the given (ordered) index set.
    pub fn block(&self, idx: &[usize]) -> DMatrix<C64> {
        let mut pos = vec![usize::MAX; self.dim];
        for (i, &k) in idx.iter().enumerate() {
            pos[k] = i;
        }
        let mut m = DMatrix::<C64>::zeros(idx.len(), idx.len());
        for (i, &r) in idx.iter().enumerate() {
            for &(c, v) in &self.rows[r] {
                if pos[c] != usize::MAX {
                    m[(i, pos[c])] = v;
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let idx: Vec<usize> = (0..self.dim).collect();
        self.block(&idx)
    }

    /// `A ⊗ B` for a dense real `A` (outer index) and sparse `B`.
    pub fn kron_dense(a: &DMatrix<f64>, b: &OperatorMatrix) -> Self {
        let (n, m) = (a.nrows(), b.dim);
        let mut trip = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x = a[(i, j)];
                if x.abs() <= DROP {
                    continue;
                }
                for (r, c, v) in b.triplets() {
                    trip.push((i * m + r, j * m + c, v * x));
                }
            }
        }
        OperatorMatrix::from_triplets(n * m, trip)
    }

    /// `A ⊗ Id` for a dense real `A`.
    pub fn kron_identity(a: &DMatrix<f64>, m: usize) -> Self {
        OperatorMatrix::kron_dense(a, &OperatorMatrix::identity(m))
    }

    /// `Id ⊗ B`.
    pub fn identity_kron(n: usize, b: &OperatorMatrix) -> Self {
        OperatorMatrix::kron_dense(&DMatrix::identity(n, n), b)
    }

    /// Coordinate text format, one `row col real imag` line per entry.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "% {} {} {}", self.dim, self.dim, self.nnz())?;
        for (r, c, v) in self.triplets() {
            writeln!(w, "{r} {c} {:.11e} {:.11e}", v.re, v.im)?;
        }
        Ok(())
    }

    /// Operator norm via the largest eigenvalue of `A^* A`.
    pub fn operator_norm(&self) -> f64 {
        let d = self.to_dense();
        let g = d.adjoint() * &d;
        let ev = g.symmetric_eigenvalues();
        ev.iter().cloned().fold(0.0, f64::max).max(0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn products_and_adjoints() {
        let a = OperatorMatrix::from_triplets(2, [(0, 1, c(1.0))]);
        let b = a.adjoint();
        assert_eq!(a.anticommutator(&b), OperatorMatrix::identity(2));
        assert_eq!(a.mul(&a).nnz(), 0);
        let k = OperatorMatrix::kron_identity(&DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]), 3);
        assert_eq!(k.mul(&k), OperatorMatrix::identity(6));
        assert!((a.operator_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triplet_export() {
        let a = OperatorMatrix::from_triplets(2, [(0, 1, C64::new(1.5, -2.0))]);
        let mut out = Vec::new();
        a.write_triplets(&mut out).unwrap();
        let s = String::from_utf8(out).unwrap();
        assert!(s.lines().nth(1).unwrap().starts_with("0 1 1.5"));
    }
}
