//! Exhaustive search for circulant Butson-type Hadamard matrices.
//!
//! A candidate is a first row of exponents `e_j ∈ Z_N`; its circulant is
//! complex Hadamard iff every periodic autocorrelation
//! `A(s) = Σ_j ζ_N^(e_j - e_{j+s})`, `0 < s <= n/2`, vanishes. The inner
//! loop works on exponents only. A sum of `N`-th roots of unity with counts
//! `c_t` vanishes iff `Σ c_t x^t` is divisible by `Φ_N`, which is how each
//! surviving candidate is confirmed exactly before the final `is_hadamard`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::constructions::{c5_factor, circulant, CirculantSpec};
use crate::cyclotomic::{cyclotomic_poly, CycloNum};
use crate::equivalence::{canonical_fingerprint, equiv_with, EquivMode, MAX_EQUIV_DIM};
use crate::error::{Error, Result};
use crate::matrix::CycloMatrix;

pub const MAX_SEARCH_DIM: usize = 7;
pub const MAX_SEARCH_ORDER: u32 = 20;
pub const DEFAULT_BUDGET: u128 = 100_000_000;
pub const BUDGET_ENV: &str = "HADAMAT_BUDGET";

/// The budget from `HADAMAT_BUDGET`, or [`DEFAULT_BUDGET`] when unset.
pub fn budget_from_env() -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSearch(format!("{BUDGET_ENV}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTask {
    pub n: usize,
    pub order: u32,
    pub fix_first: bool,
    pub budget: u128,
    /// Partial-row pruning on the first autocorrelation. Disabling it is
    /// only useful to test that pruning never loses a solution.
    pub prune: bool,
}

impl SearchTask {
    pub fn new(n: usize, order: u32, fix_first: bool) -> Result<Self> {
        if !(1..=MAX_SEARCH_DIM).contains(&n) {
            return Err(Error::InvalidSearch(format!(
                "dimension {n} outside 1..={MAX_SEARCH_DIM}"
            )));
        }
        if !(1..=MAX_SEARCH_ORDER).contains(&order) {
            return Err(Error::InvalidSearch(format!(
                "root order {order} outside 1..={MAX_SEARCH_ORDER}"
            )));
        }
        Ok(SearchTask {
            n,
            order,
            fix_first,
            budget: DEFAULT_BUDGET,
            prune: true,
        })
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_prune(mut self, prune: bool) -> Self {
        self.prune = prune;
        self
    }

    /// `N^(n-1)` with a fixed first entry, `N^n` otherwise.
    pub fn space_size(&self) -> u128 {
        let free = if self.fix_first { self.n - 1 } else { self.n };
        (self.order as u128).pow(free as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub task: SearchTask,
    /// Exponent vectors, sorted lexicographically.
    pub rows: Vec<Vec<u32>>,
    /// Number of Hadamard-equivalence classes among the solutions.
    pub class_count: usize,
    /// Whether `class_count` was confirmed by exact equivalence (`n <= 5`)
    /// or counts distinct fingerprints only.
    pub class_count_exact: bool,
}

struct Kernel {
    n: usize,
    order: u32,
    phi: Vec<i64>,
    roots: Vec<Complex64>,
    prune: bool,
}

impl Kernel {
    fn autocorrelation(&self, e: &[u32], s: usize) -> Complex64 {
        let n = self.n;
        let m = self.order;
        (0..n)
            .map(|j| self.roots[((e[j] + m - e[(j + s) % n]) % m) as usize])
            .sum()
    }

    /// Exact: does `Σ_j ζ^(e_j - e_{j+s})` vanish?
    fn vanishes(&self, e: &[u32], s: usize) -> bool {
        let n = self.n;
        let m = self.order as usize;
        let mut c = vec![0i64; m];
        for j in 0..n {
            c[(e[j] as usize + m - e[(j + s) % n] as usize) % m] += 1;
        }
        // Reduce modulo the monic Φ_m, highest degree first.
        let d = self.phi.len() - 1;
        for k in (d..m).rev() {
            let lead = c[k];
            if lead != 0 {
                for (i, p) in self.phi.iter().enumerate() {
                    c[k - d + i] -= lead * p;
                }
            }
        }
        c.iter().all(|&x| x == 0)
    }

    fn is_solution(&self, e: &[u32]) -> bool {
        (1..=self.n / 2).all(|s| self.autocorrelation(e, s).norm() < 1e-6 && self.vanishes(e, s))
    }

    /// Places entries `k..n` of `e`.
    fn dfs(&self, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let k = e.len();
        if k == self.n {
            if self.is_solution(e) {
                out.push(e.clone());
            }
            return;
        }
        for v in 0..self.order {
            e.push(v);
            if !self.prune || self.feasible(e) {
                self.dfs(e, out);
            }
            e.pop();
        }
    }

    /// With `k` entries placed, the first `k - 1` terms of `A(1)` are known
    /// and the other `n - k + 1` are unimodular, so `|partial|` cannot exceed
    /// their count.
    fn feasible(&self, e: &[u32]) -> bool {
        let k = e.len();
        if k < 2 || self.n < 2 {
            return true;
        }
        let m = self.order;
        let partial: Complex64 = (0..k - 1)
            .map(|j| self.roots[((e[j] + m - e[j + 1]) % m) as usize])
            .sum();
        partial.norm() <= (self.n - k + 1) as f64 + 1e-9
    }
}

/// The circulant matrix of an exponent row over `Q(ζ_order)`.
pub fn row_matrix(order: u32, row: &[u32]) -> Result<CycloMatrix> {
    let entries = row
        .iter()
        .map(|&k| CycloNum::root_of_unity(order, k as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(circulant(&CirculantSpec::new(entries)?))
}

pub fn search(task: &SearchTask) -> Result<SearchResult> {
    let required = task.space_size();
    if required > task.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: task.budget,
        });
    }
    let kernel = Kernel {
        n: task.n,
        order: task.order,
        phi: cyclotomic_poly(task.order).to_vec(),
        roots: (0..task.order)
            .map(|k| {
                Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / task.order as f64)
            })
            .collect(),
        prune: task.prune,
    };

    let prefix: Vec<u32> = if task.fix_first { vec![0] } else { vec![] };
    let mut rows: Vec<Vec<u32>> = if prefix.len() == task.n {
        let mut out = Vec::new();
        let mut e = prefix;
        kernel.dfs(&mut e, &mut out);
        out
    } else {
        // One partition per value of the first free entry.
        (0..task.order)
            .into_par_iter()
            .flat_map_iter(|v| {
                let mut e = prefix.clone();
                e.push(v);
                let mut out = Vec::new();
                if !kernel.prune || kernel.feasible(&e) {
                    kernel.dfs(&mut e, &mut out);
                }
                out
            })
            .collect()
    };
    rows.sort();

    let matrices = rows
        .iter()
        .map(|r| row_matrix(task.order, r))
        .collect::<Result<Vec<_>>>()?;
    for (row, m) in rows.iter().zip(&matrices) {
        if !m.is_hadamard().is_hadamard {
            // The exact filter and the matrix check disagree: a bug, never a
            // result to report.
            panic!("row {row:?} passed the autocorrelation filter but is not Hadamard");
        }
    }
    let (class_count, class_count_exact) = count_classes(&matrices)?;
    Ok(SearchResult {
        task: task.clone(),
        rows,
        class_count,
        class_count_exact,
    })
}

fn count_classes(matrices: &[CycloMatrix]) -> Result<(usize, bool)> {
    let Some(n) = matrices.first().map(CycloMatrix::dim) else {
        return Ok((0, true));
    };
    let mut buckets: BTreeMap<_, Vec<&CycloMatrix>> = BTreeMap::new();
    for m in matrices {
        buckets.entry(canonical_fingerprint(m)).or_default().push(m);
    }
    if n > MAX_EQUIV_DIM {
        return Ok((buckets.len(), false));
    }
    let mut count = 0;
    for members in buckets.values() {
        let mut reps: Vec<&CycloMatrix> = Vec::new();
        for m in members {
            let mut known = false;
            for r in &reps {
                if equiv_with(EquivMode::FirstMatch, r, m)?.equivalent {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(m);
            }
        }
        count += reps.len();
    }
    Ok((count, true))
}

/// Text rendering: one exponent row per line, then a summary block.
pub fn render_rows(result: &SearchResult) -> String {
    let mut out = String::new();
    for row in &result.rows {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    let t = &result.task;
    writeln!(out).unwrap();
    writeln!(out, "# n {}", t.n).unwrap();
    writeln!(out, "# order {}", t.order).unwrap();
    writeln!(out, "# fix_first {}", t.fix_first).unwrap();
    writeln!(out, "# solutions {}", result.rows.len()).unwrap();
    writeln!(
        out,
        "# classes {}{}",
        result.class_count,
        if result.class_count_exact { "" } else { " (fingerprints)" }
    )
    .unwrap();
    out
}

/// The unimodular roots of `1 + a + a² + a³ + a⁴` among the tenth roots of
/// unity `±ζ_10^k`, in increasing exponent order, as elements of `Q(ζ_10)`.
pub fn pattern_solutions_c5() -> Vec<CycloNum> {
    (0..10)
        .map(|k| CycloNum::root_of_unity(10, k).expect("order 10"))
        .filter(|a| c5_factor(a).is_zero())
        .collect()
}
