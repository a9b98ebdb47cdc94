//! Hadamard equivalence: `H₂ = D₁ P₁ H₁ P₂ D₂` with permutation matrices `P`
//! and unimodular diagonals `D`.
//!
//! Permutations are stored as index arrays. A witness `(p1, p2, d1, d2)`
//! asserts
//!
//! ```text
//! H₂[i][j] = d1[i] · H₁[p1[i]][p2[j]] · d2[j]   for all i, j.
//! ```
//!
//! The decision procedure compares dephased forms: two matrices are
//! equivalent iff some row and column permutation of `H₁` has the same
//! dephased form as `H₂`. All `n!²` permutation pairs are tried in
//! lexicographic order, so the search is complete for `n <= 5`.

use std::collections::HashMap;

use itertools::Itertools;
use num_integer::Integer;
use rayon::prelude::*;

use crate::cyclotomic::{check_order, CycloNum};
use crate::error::{Error, Result};
use crate::matrix::CycloMatrix;

/// Largest dimension [`equiv`] accepts.
pub const MAX_EQUIV_DIM: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
    pub d1: Vec<CycloNum>,
    pub d2: Vec<CycloNum>,
}

impl EquivalenceWitness {
    /// The identity transformation in `Q(ζ_order)`.
    pub fn identity(n: usize, order: u32) -> Self {
        EquivalenceWitness {
            p1: (0..n).collect(),
            p2: (0..n).collect(),
            d1: vec![CycloNum::one(order); n],
            d2: vec![CycloNum::one(order); n],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivVerdict {
    pub equivalent: bool,
    pub witness: Option<EquivalenceWitness>,
    /// Permutation pairs examined in lexicographic order: `n!²` for the
    /// exhaustive mode and for every `false` verdict of the search, the
    /// position of the witness plus one under [`EquivMode::FirstMatch`],
    /// `0` when the fingerprint prefilter decided.
    pub pairs_examined: u64,
    /// Number of permutation pairs `(P1, P2)` whose dephased `P1·H1·P2`
    /// equals the dephased `H2`. Only counted by the exhaustive mode.
    pub matching_pairs: Option<u64>,
    pub fingerprints_match: bool,
    pub prefiltered: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EquivMode {
    /// Scan all `n!²` permutation pairs and count the matching ones.
    #[default]
    Exhaustive,
    /// Stop at the first matching pair.
    FirstMatch,
    /// Return `false` immediately when fingerprints differ, otherwise as
    /// [`EquivMode::FirstMatch`].
    Prefilter,
}

/// Sorted multiset of the numeric values `h_ij·conj(h_il)·conj(h_kj)·h_kl`
/// over all `i, k, j, l`, each rounded to `1e-9` and stored as a pair of
/// integers. The values are unchanged by row and column permutations and by
/// unimodular diagonal scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub Vec<(i64, i64)>);

pub fn canonical_fingerprint(h: &CycloMatrix) -> Fingerprint {
    let n = h.dim();
    let c = h.to_complex();
    let q = |x: f64| (x * 1e9).round() as i64;
    let mut out = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let v = c[i][j] * c[i][l].conj() * c[k][j].conj() * c[k][l];
                    out.push((q(v.re), q(v.im)));
                }
            }
        }
    }
    out.sort_unstable();
    Fingerprint(out)
}

fn validate(h1: &CycloMatrix, h2: &CycloMatrix) -> Result<(CycloMatrix, CycloMatrix)> {
    if h1.dim() != h2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{0}x{0} vs {1}x{1}",
            h1.dim(),
            h2.dim()
        )));
    }
    if h1.dim() > MAX_EQUIV_DIM {
        return Err(Error::EquivalenceTooLarge(h1.dim()));
    }
    for (name, h) in [("first", h1), ("second", h2)] {
        if let Some(cell) = h.is_hadamard().failing_cell {
            return Err(Error::NotHadamard(format!(
                "{name} matrix fails at ({}, {})",
                cell.row, cell.col
            )));
        }
    }
    let order = check_order(h1.order().lcm(&h2.order()) as u64)?;
    Ok((h1.embed(order)?, h2.embed(order)?))
}

pub fn equiv(h1: &CycloMatrix, h2: &CycloMatrix) -> Result<EquivVerdict> {
    equiv_with(EquivMode::Exhaustive, h1, h2)
}

pub fn equiv_with(mode: EquivMode, h1: &CycloMatrix, h2: &CycloMatrix) -> Result<EquivVerdict> {
    let (h1, h2) = validate(h1, h2)?;
    let n = h1.dim();
    let fingerprints_match = canonical_fingerprint(&h1) == canonical_fingerprint(&h2);
    if mode == EquivMode::Prefilter && !fingerprints_match {
        return Ok(EquivVerdict {
            equivalent: false,
            witness: None,
            pairs_examined: 0,
            matching_pairs: None,
            fingerprints_match,
            prefiltered: true,
        });
    }

    // Dephased form of P1·H1·P2 depends on (p1[0], p2[0]) = (r, c) only
    // through the table N_rc[a][b] = h_ab·conj(h_ac)·conj(h_rb)·h_rc.
    // Values are interned so the inner loop compares integers.
    let mut ids: HashMap<CycloNum, u32> = HashMap::new();
    let mut intern = |v: CycloNum| {
        let next = ids.len() as u32;
        *ids.entry(v).or_insert(next)
    };
    let target = h2.dephase_with_factors()?;
    let g: Vec<u32> = target.matrix.entries().iter().cloned().map(&mut intern).collect();
    let mut tables: Vec<Vec<u32>> = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let corner = h1.get(r, c);
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                let left = h1.get(a, c).conj();
                for b in 0..n {
                    let v = &(&(h1.get(a, b) * &left) * &h1.get(r, b).conj()) * corner;
                    t.push(intern(v));
                }
            }
            tables.push(t);
        }
    }

    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let total = perms.len() as u64;
    let matches = |p1: &[usize], p2: &[usize]| {
        let t = &tables[p1[0] * n + p2[0]];
        (0..n).all(|i| (0..n).all(|j| t[p1[i] * n + p2[j]] == g[i * n + j]))
    };
    let (found, matching_pairs) = if mode == EquivMode::Exhaustive {
        // Per first permutation: number of matches and the first match.
        let rows: Vec<(u64, Option<usize>)> = perms
            .par_iter()
            .map(|p1| {
                let mut hits = perms.iter().enumerate().filter(|(_, p2)| matches(p1, p2));
                let first = hits.next().map(|(b, _)| b);
                (first.is_some() as u64 + hits.count() as u64, first)
            })
            .collect();
        let found = rows.iter().enumerate().find_map(|(a, r)| r.1.map(|b| (a, b)));
        (found, Some(rows.iter().map(|r| r.0).sum()))
    } else {
        let found = (0..perms.len()).into_par_iter().find_map_first(|a| {
            let p1 = &perms[a];
            perms
                .iter()
                .position(|p2| matches(p1, p2))
                .map(|b| (a, b))
        });
        (found, None)
    };

    let Some((a, b)) = found else {
        return Ok(EquivVerdict {
            equivalent: false,
            witness: None,
            pairs_examined: total * total,
            matching_pairs,
            fingerprints_match,
            prefiltered: false,
        });
    };
    let (p1, p2) = (perms[a].clone(), perms[b].clone());
    // M = P1·H1·P2, dephased by f1 = conj(M_i0), f2 = conj(M_0j)·M_00.
    let m = |i: usize, j: usize| h1.get(p1[i], p2[j]);
    let d1 = (0..n)
        .map(|i| &target.row_factors[i].conj() * &m(i, 0).conj())
        .collect();
    let d2 = (0..n)
        .map(|j| &(&m(0, j).conj() * m(0, 0)) * &target.col_factors[j].conj())
        .collect();
    let witness = EquivalenceWitness { p1, p2, d1, d2 };
    debug_assert!(replay(&witness, &h1, &h2));
    Ok(EquivVerdict {
        equivalent: true,
        witness: Some(witness),
        pairs_examined: if mode == EquivMode::Exhaustive {
            total * total
        } else {
            a as u64 * total + b as u64 + 1
        },
        matching_pairs,
        fingerprints_match,
        prefiltered: false,
    })
}

/// Checks `H₂[i][j] = d1[i]·H₁[p1[i]][p2[j]]·d2[j]` exactly. Malformed
/// witnesses and non-unimodular diagonals replay as `false`.
pub fn replay(w: &EquivalenceWitness, h1: &CycloMatrix, h2: &CycloMatrix) -> bool {
    let n = h1.dim();
    if h2.dim() != n
        || crate::matrix::check_permutation(&w.p1, n).is_err()
        || crate::matrix::check_permutation(&w.p2, n).is_err()
        || w.d1.len() != n
        || w.d2.len() != n
        || !w.d1.iter().chain(&w.d2).all(CycloNum::is_unimodular)
    {
        return false;
    }
    let orders = [h1.order(), h2.order()]
        .into_iter()
        .chain(w.d1.iter().chain(&w.d2).map(CycloNum::order));
    let Ok(order) = check_order(orders.fold(1u32, |acc, o| acc.lcm(&o)) as u64) else {
        return false;
    };
    let up = |x: &CycloNum| x.embed(order).expect("divisor order");
    let (Ok(h1), Ok(h2)) = (h1.embed(order), h2.embed(order)) else {
        return false;
    };
    let d1: Vec<CycloNum> = w.d1.iter().map(up).collect();
    let d2: Vec<CycloNum> = w.d2.iter().map(up).collect();
    (0..n).all(|i| {
        (0..n).all(|j| &(&d1[i] * h1.get(w.p1[i], w.p2[j])) * &d2[j] == *h2.get(i, j))
    })
}

/// Applies a witness to `H₁`, producing `D₁ P₁ H₁ P₂ D₂`.
pub fn apply(w: &EquivalenceWitness, h1: &CycloMatrix) -> Result<CycloMatrix> {
    h1.permute_rows(&w.p1)?
        .permute_cols(&w.p2)?
        .scale_diag(&w.d1)?
        .scale_cols(&w.d2)
}
