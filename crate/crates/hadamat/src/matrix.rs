//! Square matrices over a cyclotomic field.
//!
//! Matrices are stored unnormalized: a complex Hadamard matrix has unimodular
//! entries and Gram matrix `n·I`. The `scale_exp` field records an implicit
//! global factor `n^(-s/2)` and is only consulted where a predicate says so
//! (currently [`CycloMatrix::is_unitary`]).

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::cyclotomic::{check_order, CycloNum};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloMatrix {
    dim: usize,
    order: u32,
    entries: Vec<CycloNum>,
    scale_exp: u32,
}

/// Why a matrix failed the Hadamard test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// The entry at the cell is not unimodular.
    NonUnimodularEntry,
    /// The Gram matrix differs from `n·I` at the cell.
    GramEntry,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingCell {
    pub row: usize,
    pub col: usize,
    /// The offending matrix entry or Gram entry, depending on `kind`.
    pub value: CycloNum,
    pub kind: FailureKind,
}

/// Outcome of [`CycloMatrix::is_hadamard`]. `failing_cell` is present exactly
/// when `is_hadamard` is false and names the lexicographically first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardVerdict {
    pub is_hadamard: bool,
    pub failing_cell: Option<FailingCell>,
}

/// A dephased matrix together with the diagonals that produced it:
/// `matrix = diag(row_factors) · H · diag(col_factors)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dephased {
    pub matrix: CycloMatrix,
    pub row_factors: Vec<CycloNum>,
    pub col_factors: Vec<CycloNum>,
}

pub(crate) fn check_permutation(p: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if p.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "permutation of length {} for dimension {n}",
            p.len()
        )));
    }
    for &i in p {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter(format!(
                "{p:?} is not a permutation of 0..{n}"
            )));
        }
    }
    Ok(())
}

impl CycloMatrix {
    /// Builds a matrix from row-major entries, all of which must have root
    /// order `order`.
    pub fn new(dim: usize, order: u32, entries: Vec<CycloNum>) -> Result<Self> {
        let order = check_order(order as u64)?;
        if dim == 0 {
            return Err(Error::DimensionMismatch("dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: e.order(),
            });
        }
        Ok(CycloMatrix {
            dim,
            order,
            entries,
            scale_exp: 0,
        })
    }

    pub fn from_rows(order: u32, rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix rows must be square".into()));
        }
        Self::new(dim, order, rows.into_iter().flatten().collect())
    }

    /// Matrix whose entry `(i, j)` is `ζ_M^{exponents[i*dim + j]}`.
    pub fn from_exponents(order: u32, dim: usize, exponents: &[i64]) -> Result<Self> {
        let entries = exponents
            .iter()
            .map(|&k| CycloNum::root_of_unity(order, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, order, entries)
    }

    pub fn from_fn(dim: usize, order: u32, f: impl Fn(usize, usize) -> CycloNum) -> Result<Self> {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self::new(dim, order, entries)
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        Self::diagonal(order, vec![CycloNum::one(order); dim]).expect("valid identity")
    }

    /// The all-ones matrix `J`.
    pub fn ones(dim: usize, order: u32) -> Self {
        Self::new(dim, order, vec![CycloNum::one(order); dim * dim]).expect("valid ones")
    }

    pub fn diagonal(order: u32, diag: Vec<CycloNum>) -> Result<Self> {
        let dim = diag.len();
        let mut entries = vec![CycloNum::zero(order); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        Self::new(dim, order, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn scale_exp(&self) -> u32 {
        self.scale_exp
    }

    pub fn with_scale_exp(mut self, scale_exp: u32) -> Self {
        self.scale_exp = scale_exp;
        self
    }

    pub fn get(&self, row: usize, col: usize) -> &CycloNum {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[CycloNum] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycloNum]> {
        self.entries.chunks(self.dim)
    }

    fn map(&self, f: impl Fn(&CycloNum) -> CycloNum) -> Self {
        CycloMatrix {
            entries: self.entries.iter().map(f).collect(),
            ..self.clone()
        }
    }

    pub fn embed(&self, target: u32) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloMatrix {
            dim: self.dim,
            order: target,
            entries,
            scale_exp: self.scale_exp,
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{0}x{0} vs {1}x{1}",
                self.dim, other.dim
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.dim;
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(CycloNum::zero(self.order), |acc, l| {
                    acc + &(self.get(i, l) * other.get(l, j))
                })
            })
            .collect();
        Ok(CycloMatrix {
            dim: n,
            order: self.order,
            entries,
            scale_exp: 0,
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        CycloMatrix {
            entries: (0..n * n)
                .map(|k| self.get(k % n, k / n).clone())
                .collect(),
            ..self.clone()
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(CycloNum::conj)
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.dim)?;
        let n = self.dim;
        Ok(CycloMatrix {
            entries: (0..n * n)
                .map(|k| self.get(perm[k / n], k % n).clone())
                .collect(),
            ..self.clone()
        })
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.dim)?;
        let n = self.dim;
        Ok(CycloMatrix {
            entries: (0..n * n)
                .map(|k| self.get(k / n, perm[k % n]).clone())
                .collect(),
            ..self.clone()
        })
    }

    fn check_diag(&self, diag: &[CycloNum]) -> Result<()> {
        if diag.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of length {} for dimension {}",
                diag.len(),
                self.dim
            )));
        }
        if let Some(d) = diag.iter().find(|d| d.order() != self.order) {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: d.order(),
            });
        }
        Ok(())
    }

    /// `diag(d) · self`.
    pub fn scale_diag(&self, diag: &[CycloNum]) -> Result<Self> {
        self.check_diag(diag)?;
        let n = self.dim;
        Ok(CycloMatrix {
            entries: (0..n * n)
                .map(|k| &diag[k / n] * &self.entries[k])
                .collect(),
            ..self.clone()
        })
    }

    /// `self · diag(d)`.
    pub fn scale_cols(&self, diag: &[CycloNum]) -> Result<Self> {
        self.check_diag(diag)?;
        let n = self.dim;
        Ok(CycloMatrix {
            entries: (0..n * n)
                .map(|k| &self.entries[k] * &diag[k % n])
                .collect(),
            ..self.clone()
        })
    }

    /// Multiplies every entry by a field element.
    pub fn scale_by(&self, s: &CycloNum) -> Result<Self> {
        if s.order() != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: s.order(),
            });
        }
        Ok(self.map(|e| e * s))
    }

    /// `H · H*`.
    pub fn gram(&self) -> Self {
        let n = self.dim;
        let conj: Vec<CycloNum> = self.entries.iter().map(CycloNum::conj).collect();
        let mut entries = vec![CycloNum::zero(self.order); n * n];
        for i in 0..n {
            for j in i..n {
                let v = (0..n).fold(CycloNum::zero(self.order), |acc, l| {
                    acc + &(self.get(i, l) * &conj[j * n + l])
                });
                if i != j {
                    entries[j * n + i] = v.conj();
                }
                entries[i * n + j] = v;
            }
        }
        CycloMatrix {
            dim: n,
            order: self.order,
            entries,
            scale_exp: 0,
        }
    }

    fn first_non_unimodular(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !e.is_unimodular())
            .map(|k| (k / self.dim, k % self.dim))
    }

    pub fn is_unimodular(&self) -> bool {
        self.first_non_unimodular().is_none()
    }

    /// Exact complex Hadamard test: unimodular entries and `H·H* = n·I`.
    pub fn is_hadamard(&self) -> HadamardVerdict {
        if let Some((row, col)) = self.first_non_unimodular() {
            return HadamardVerdict {
                is_hadamard: false,
                failing_cell: Some(FailingCell {
                    row,
                    col,
                    value: self.get(row, col).clone(),
                    kind: FailureKind::NonUnimodularEntry,
                }),
            };
        }
        let n = CycloNum::from_integer(self.order, self.dim as i64);
        let gram = self.gram();
        let failing_cell = gram.entries.iter().enumerate().find_map(|(k, v)| {
            let (row, col) = (k / self.dim, k % self.dim);
            let ok = if row == col { *v == n } else { v.is_zero() };
            (!ok).then(|| FailingCell {
                row,
                col,
                value: v.clone(),
                kind: FailureKind::GramEntry,
            })
        });
        HadamardVerdict {
            is_hadamard: failing_cell.is_none(),
            failing_cell,
        }
    }

    /// `O · (1/o_ji) = n·I`, for matrices without zero entries.
    pub fn is_inverse_orthogonal(&self) -> Result<bool> {
        let n = self.dim;
        let mut recip = Vec::with_capacity(n * n);
        for (k, e) in self.entries.iter().enumerate() {
            recip.push(e.inverse().map_err(|_| Error::ZeroEntry {
                row: k / n,
                col: k % n,
            })?);
        }
        let target = CycloNum::from_integer(self.order, n as i64);
        for i in 0..n {
            for k in 0..n {
                // (O · O^{-1})_{ik} = Σ_j o_ij / o_kj
                let v = (0..n).fold(CycloNum::zero(self.order), |acc, j| {
                    acc + &(self.get(i, j) * &recip[k * n + j])
                });
                let ok = if i == k { v == target } else { v.is_zero() };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `H·H* = n^s·I` where `s` is the matrix's `scale_exp`, i.e. the matrix
    /// times its implicit factor `n^(-s/2)` is unitary.
    pub fn is_unitary(&self) -> bool {
        let target = CycloNum::from_integer(self.order, (self.dim as i64).pow(self.scale_exp));
        let gram = self.gram();
        gram.entries.iter().enumerate().all(|(k, v)| {
            if k / self.dim == k % self.dim {
                *v == target
            } else {
                v.is_zero()
            }
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, e)| k / self.dim == k % self.dim || e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && (0..self.dim).all(|i| self.get(i, i).is_one())
    }

    /// Diagonal with unimodular diagonal entries.
    pub fn is_unitary_diagonal(&self) -> bool {
        self.is_diagonal() && (0..self.dim).all(|i| self.get(i, i).is_unimodular())
    }

    /// The dephased form: first row and first column all ones.
    pub fn dephase(&self) -> Result<Self> {
        Ok(self.dephase_with_factors()?.matrix)
    }

    /// Dephases by the first column, then by the first row, returning the
    /// diagonal factors used.
    pub fn dephase_with_factors(&self) -> Result<Dephased> {
        if let Some((row, col)) = self.first_non_unimodular() {
            return Err(Error::NotUnimodular { row, col });
        }
        let n = self.dim;
        let row_factors: Vec<CycloNum> = (0..n).map(|i| self.get(i, 0).conj()).collect();
        // After row scaling the first row is h_0j · conj(h_00).
        let col_factors: Vec<CycloNum> = (0..n)
            .map(|j| (self.get(0, j) * &row_factors[0]).conj())
            .collect();
        let matrix = self.scale_diag(&row_factors)?.scale_cols(&col_factors)?;
        Ok(Dephased {
            matrix,
            row_factors,
            col_factors,
        })
    }

    pub fn is_dephased(&self) -> bool {
        (0..self.dim).all(|k| self.get(0, k).is_one() && self.get(k, 0).is_one())
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        self.rows()
            .map(|r| r.iter().map(CycloNum::to_complex).collect())
            .collect()
    }

    /// `max |(H·H* - n·I)_{ij}|` evaluated in floating point.
    pub fn hadamard_residual(&self) -> f64 {
        let h = self.to_complex();
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let g: Complex64 = (0..n).map(|l| h[i][l] * h[j][l].conj()).sum();
                let want = if i == j { n as f64 } else { 0.0 };
                worst = worst.max((g - want).norm());
            }
        }
        for v in h.iter().flatten() {
            worst = worst.max((v.norm() - 1.0).abs());
        }
        worst
    }

    /// `n^(-s/2)` as a float, for reporting normalized values.
    pub fn scale_factor(&self) -> f64 {
        (self.dim as f64).powf(-(self.scale_exp as f64) / 2.0)
    }

    /// Multiplies by a rational scalar.
    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.map(|e| e.scale(r))
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "CycloMatrix(dim {}, order {}, scale {})",
            self.dim, self.order, self.scale_exp
        )?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}
