//! Cyclotomic polynomials and reduction modulo them.
//!
//! `Φ_M` is obtained by dividing `x^M - 1` by `Φ_d` for every proper divisor
//! `d` of `M`. Every polynomial is computed once and cached for the lifetime
//! of the process.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 360;

pub(crate) fn check_order(order: u64) -> Result<u32> {
    if order == 0 || order > MAX_ORDER as u64 {
        return Err(Error::UnsupportedOrder(order));
    }
    Ok(order as u32)
}

/// Euler's totient, the degree of `Φ_m`.
pub fn totient(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Φ_m`, lowest degree first. The result is monic with
/// length `totient(m) + 1`.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&m) {
        return Arc::clone(p);
    }

    // x^m - 1
    let mut quotient = vec![0i64; m as usize + 1];
    quotient[0] = -1;
    quotient[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        quotient = divide_exact(&quotient, &cyclotomic_poly(d));
    }
    debug_assert_eq!(quotient.len(), totient(m) + 1);

    let poly = Arc::new(quotient);
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(m)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

/// Exact division by a monic integer polynomial.
fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] = rem[k + i]
                    .checked_sub(c.checked_mul(d).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    assert!(
        rem.iter().all(|&r| r == 0),
        "non-exact cyclotomic division"
    );
    q
}

/// Reduces `poly` modulo `Φ_m` in place; the result has length `totient(m)`.
pub(crate) fn reduce(poly: &mut Vec<BigInt>, m: u32) {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for k in (deg..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            let base = k - deg;
            for (i, &p) in phi[..deg].iter().enumerate() {
                if p != 0 {
                    poly[base + i] -= &c * p;
                }
            }
        }
    }
    poly.resize(deg, BigInt::zero());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn degrees_match_totient() {
        for m in 1..=MAX_ORDER {
            assert_eq!(cyclotomic_poly(m).len(), totient(m) + 1, "order {m}");
        }
        assert_eq!(totient(60), 16);
        assert_eq!(totient(360), 96);
    }

    #[test]
    fn order_bounds() {
        assert!(check_order(0).is_err());
        assert!(check_order(361).is_err());
        assert_eq!(check_order(360).unwrap(), 360);
    }
}
