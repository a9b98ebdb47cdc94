//! Circulant search against a brute-force floating-point enumeration.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use hadamat::search::{row_matrix, search, SearchTask};
use num_complex::Complex64;

/// All exponent vectors whose circulant has `H·H* = n·I` within `1e-8`.
fn brute_force(n: usize, order: u32, fix_first: bool) -> BTreeSet<Vec<u32>> {
    let free = if fix_first { n - 1 } else { n };
    let mut out = BTreeSet::new();
    for code in 0..(order as usize).pow(free as u32) {
        let mut row = vec![0u32; n];
        let mut c = code;
        for k in (n - free..n).rev() {
            row[k] = (c % order as usize) as u32;
            c /= order as usize;
        }
        let z: Vec<Complex64> = row
            .iter()
            .map(|&e| Complex64::from_polar(1.0, TAU * e as f64 / order as f64))
            .collect();
        let h = |i: usize, j: usize| z[(j + n - i) % n];
        let ok = (0..n).all(|i| {
            (0..n).all(|k| {
                let g: Complex64 = (0..n).map(|j| h(i, j) * h(k, j).conj()).sum();
                let want = if i == k { n as f64 } else { 0.0 };
                (g - want).norm() < 1e-8
            })
        });
        if ok {
            out.insert(row);
        }
    }
    out
}

fn exact(n: usize, order: u32, fix_first: bool) -> BTreeSet<Vec<u32>> {
    let r = search(&SearchTask::new(n, order, fix_first).unwrap()).unwrap();
    for row in &r.rows {
        assert!(row_matrix(order, row).unwrap().is_hadamard().is_hadamard);
    }
    r.rows.into_iter().collect()
}

#[test]
fn matches_brute_force_on_small_cases() {
    for (n, order) in [(3, 3), (2, 4), (3, 6), (4, 4), (2, 2)] {
        for fix_first in [true, false] {
            let want = brute_force(n, order, fix_first);
            assert_eq!(exact(n, order, fix_first), want, "n={n} N={order} fix={fix_first}");
        }
    }
}

#[test]
fn known_counts() {
    assert_eq!(exact(3, 3, true).len(), 6);
    assert_eq!(exact(3, 3, false).len(), 18);
    assert_eq!(exact(2, 4, false).len(), 8);
    assert!(exact(5, 5, true).contains(&vec![0, 1, 4, 4, 1]));
}
