//! Mutually unbiased bases.
//!
//! A basis is stored as a matrix whose columns are the basis vectors. Complex
//! Hadamard matrices carry an implicit `1/√n` (scale exponent 1), identities
//! and unitary diagonals carry none. Two bases are unbiased when every inner
//! product between their normalized columns has squared modulus `1/n`,
//! checked exactly as `n·|raw|² = n^(s1+s2)` on the unnormalized columns.

use num_integer::Integer;
use rayon::prelude::*;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::matrix::CycloMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub name: String,
    matrix: CycloMatrix,
}

impl Basis {
    /// Accepts a complex Hadamard matrix (normalized by `1/√n`), the identity
    /// or a unitary diagonal; anything else is rejected.
    pub fn new(name: impl Into<String>, matrix: &CycloMatrix) -> Result<Self> {
        let name = name.into();
        let matrix = if matrix.is_unitary_diagonal() {
            matrix.clone().with_scale_exp(0)
        } else if matrix.is_hadamard().is_hadamard {
            matrix.clone().with_scale_exp(1)
        } else {
            return Err(Error::NotABasis(format!(
                "{name} is neither complex Hadamard nor a unitary diagonal"
            )));
        };
        Ok(Basis { name, matrix })
    }

    pub fn matrix(&self) -> &CycloMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// True for the scale exponent 1 (columns carry `1/√n`).
    pub fn normalized(&self) -> bool {
        self.matrix.scale_exp() == 1
    }
}

/// First inner product that violates unbiasedness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasWitness {
    /// Column of the first basis.
    pub i: usize,
    /// Column of the second basis.
    pub j: usize,
    /// `n·|⟨u_i, v_j⟩|² − 1` for the normalized columns; zero when unbiased.
    pub value: CycloNum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unbiasedness {
    pub unbiased: bool,
    pub witness: Option<BiasWitness>,
}

fn common_order(a: u32, b: u32) -> Result<u32> {
    crate::cyclotomic::check_order(a.lcm(&b) as u64)
}

/// Exact unbiasedness of two bases of equal dimension.
pub fn unbiased(b1: &Basis, b2: &Basis) -> Result<Unbiasedness> {
    let n = b1.dim();
    if n != b2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} is {n}x{n}, {} is {m}x{m}",
            b1.name,
            b2.name,
            m = b2.dim()
        )));
    }
    let order = common_order(b1.matrix.order(), b2.matrix.order())?;
    let m1 = b1.matrix.embed(order)?;
    let m2 = b2.matrix.embed(order)?;
    // Raw inner products of columns: (B1* B2)_ij.
    let raw = m1.conj_transpose().matmul(&m2)?;
    let s = b1.matrix.scale_exp() + b2.matrix.scale_exp();
    let norm = (n as i64).pow(s);
    let target = CycloNum::from_integer(order, norm);
    let nn = CycloNum::from_integer(order, n as i64);
    for i in 0..n {
        for j in 0..n {
            let v = &nn * &raw.get(i, j).norm_sq();
            if v != target {
                let value = v.scale(&num_rational::BigRational::new(1.into(), norm.into()))
                    - &CycloNum::one(order);
                return Ok(Unbiasedness {
                    unbiased: false,
                    witness: Some(BiasWitness { i, j, value }),
                });
            }
        }
    }
    Ok(Unbiasedness {
        unbiased: true,
        witness: None,
    })
}

/// `max |n·|⟨u_i, v_j⟩|² − 1|` in floating point, the numeric counterpart of
/// [`unbiased`].
pub fn unbiased_residual(b1: &Basis, b2: &Basis) -> f64 {
    let n = b1.dim();
    let a = b1.matrix.to_complex();
    let b = b2.matrix.to_complex();
    let (f1, f2) = (b1.matrix.scale_factor(), b2.matrix.scale_factor());
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let ip: num_complex::Complex64 =
                (0..n).map(|k| a[k][i].conj() * b[k][j]).sum::<num_complex::Complex64>() * f1 * f2;
            worst = worst.max((n as f64 * ip.norm_sqr() - 1.0).abs());
        }
    }
    worst
}

/// One cell of the pairwise table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCell {
    /// The diagonal of the table.
    Vacuous,
    Unbiased,
    Biased(BiasWitness),
    /// One of the two members is not a basis.
    Error(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubReport {
    pub names: Vec<String>,
    /// Per-member construction errors, aligned with `names`.
    pub member_errors: Vec<Option<String>>,
    /// Symmetric `k × k` table.
    pub pairwise: Vec<Vec<PairCell>>,
    pub verdict: bool,
    /// First biased pair in row-major order of the table.
    pub witness: Option<(usize, usize, BiasWitness)>,
}

/// Checks every pair of a proposed MUB set.
///
/// Members that are not bases are recorded in `member_errors` and make the
/// verdict false; dimension mismatches and sets larger than `n + 1` are
/// errors.
pub fn check_mub_set(members: &[(&str, &CycloMatrix)]) -> Result<MubReport> {
    let Some(n) = members.first().map(|(_, m)| m.dim()) else {
        return Err(Error::InvalidParameter("empty MUB set".into()));
    };
    if let Some((name, m)) = members.iter().find(|(_, m)| m.dim() != n) {
        return Err(Error::DimensionMismatch(format!(
            "{name} is {d}x{d}, expected {n}x{n}",
            d = m.dim()
        )));
    }
    if members.len() > n + 1 {
        return Err(Error::ExceedsMaximum {
            count: members.len(),
            max: n + 1,
            dim: n,
        });
    }
    let bases: Vec<Result<Basis>> = members.iter().map(|(name, m)| Basis::new(*name, m)).collect();
    let k = bases.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let cells: Vec<PairCell> = pairs
        .par_iter()
        .map(|&(i, j)| match (&bases[i], &bases[j]) {
            (Ok(a), Ok(b)) => match unbiased(a, b) {
                Ok(Unbiasedness { unbiased: true, .. }) => PairCell::Unbiased,
                Ok(Unbiasedness { witness, .. }) => {
                    PairCell::Biased(witness.expect("biased pairs carry a witness"))
                }
                Err(e) => PairCell::Error(e.to_string()),
            },
            (Err(e), _) | (_, Err(e)) => PairCell::Error(e.to_string()),
        })
        .collect();

    let mut pairwise = vec![vec![PairCell::Vacuous; k]; k];
    let mut witness = None;
    for (&(i, j), cell) in pairs.iter().zip(cells) {
        if let (PairCell::Biased(w), None) = (&cell, &witness) {
            witness = Some((i, j, w.clone()));
        }
        pairwise[j][i] = match &cell {
            PairCell::Biased(w) => PairCell::Biased(BiasWitness {
                i: w.j,
                j: w.i,
                value: w.value.clone(),
            }),
            other => other.clone(),
        };
        pairwise[i][j] = cell;
    }
    let member_errors: Vec<Option<String>> =
        bases.iter().map(|b| b.as_ref().err().map(|e| e.to_string())).collect();
    let verdict = member_errors.iter().all(Option::is_none)
        && pairwise
            .iter()
            .flatten()
            .all(|c| matches!(c, PairCell::Vacuous | PairCell::Unbiased));
    Ok(MubReport {
        names: members.iter().map(|(n, _)| n.to_string()).collect(),
        member_errors,
        pairwise,
        verdict,
        witness,
    })
}

/// Extends a valid MUB set with candidates, in order, keeping each one that is
/// unbiased with everything accepted so far. Stops at `n + 1` members.
pub fn mub_extend_greedy(seed: &[Basis], candidates: &[Basis]) -> Result<Vec<Basis>> {
    let Some(n) = seed.first().map(Basis::dim) else {
        return Err(Error::InvalidSeed);
    };
    if seed.iter().chain(candidates).any(|b| b.dim() != n) || seed.len() > n + 1 {
        return Err(Error::InvalidSeed);
    }
    for (i, a) in seed.iter().enumerate() {
        for b in &seed[i + 1..] {
            if !unbiased(a, b)?.unbiased {
                return Err(Error::InvalidSeed);
            }
        }
    }
    let mut set = seed.to_vec();
    for c in candidates {
        if set.len() == n + 1 {
            break;
        }
        let mut ok = true;
        for b in &set {
            if !unbiased(b, c)?.unbiased {
                ok = false;
                break;
            }
        }
        if ok {
            set.push(c.clone());
        }
    }
    Ok(set)
}
