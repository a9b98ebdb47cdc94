//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! A [`CycloNum`] is stored in the power basis `1, ζ_M, …, ζ_M^{φ(M)-1}` with
//! a common positive denominator, fully reduced modulo `Φ_M`. Because the
//! representation is canonical, value equality is structural equality.
//!
//! ```
//! use hadamat::CycloNum;
//!
//! let w = CycloNum::root_of_unity(3, 1).unwrap();
//! let sum = CycloNum::one(3) + &w + &(&w * &w);
//! assert!(sum.is_zero());
//! ```

mod poly;
mod sqrt;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use poly::{cyclotomic_poly, totient, MAX_ORDER};
pub use sqrt::{sqrt, sqrt_int, SQRT_SIGN_BITS_LIMIT};

pub(crate) use poly::check_order;

/// An exact element of `Q(ζ_M)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn from_parts(order: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), totient(order));
        if num.iter().all(Zero::is_zero) {
            return CycloNum {
                order,
                num,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                num.iter_mut().for_each(|c| *c /= &g);
                den /= &g;
            }
        }
        CycloNum { order, num, den }
    }

    /// Builds a value from an integer polynomial in `ζ_M` of any degree.
    fn from_poly(order: u32, mut poly: Vec<BigInt>, den: BigInt) -> Self {
        poly::reduce(&mut poly, order);
        Self::from_parts(order, poly, den)
    }

    pub fn zero(order: u32) -> Self {
        let order = check_order(order as u64).expect("invalid root order");
        CycloNum {
            order,
            num: vec![BigInt::zero(); totient(order)],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, value: i64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_rational(order: u32, value: BigRational) -> Self {
        let mut z = Self::zero(order);
        let (n, d) = value.into_raw();
        z.num[0] = n;
        Self::from_parts(z.order, z.num, d)
    }

    /// `Σ coeffs[k] ζ_M^k`; `coeffs` may be longer than `φ(M)` and is reduced.
    pub fn from_coeffs(order: u32, coeffs: &[BigRational]) -> Result<Self> {
        let order = check_order(order as u64)?;
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_poly(order, poly, den))
    }

    /// `ζ_M^(k mod M)` in reduced form.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self> {
        let order = check_order(order as u64)?;
        let table = root_table(order);
        Ok(table.roots[k.rem_euclid(order as i64) as usize].clone())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of basis coefficients, `φ(M)`.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k].clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// The exponent `k` with `self == ζ_M^k`, if the value is a root of unity
    /// of order dividing `M`.
    pub fn root_exponent(&self) -> Option<u32> {
        if !self.den.is_one() {
            return None;
        }
        root_table(self.order).index.get(&self.num).copied()
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let combine = |a: BigInt, b: BigInt| if subtract { a - b } else { a + b };
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| combine(a.clone(), b.clone()))
                .collect();
            return Self::from_parts(self.order, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| combine(a * &other.den, b * &self.den))
            .collect();
        Self::from_parts(self.order, num, &self.den * &other.den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let d = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.order, prod, &self.den * &other.den)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.order, num, &self.den * r.denom())
    }

    /// Complex conjugation, `ζ_M^k ↦ ζ_M^{M-k}`.
    pub fn conj(&self) -> Self {
        self.galois(self.order as i64 - 1)
    }

    /// The automorphism `ζ_M ↦ ζ_M^k` applied to the power-basis expansion.
    fn galois(&self, k: i64) -> Self {
        let m = self.order as i64;
        let mut poly = vec![BigInt::zero(); self.order as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[(j as i64 * k).rem_euclid(m) as usize] += c;
            }
        }
        Self::from_poly(self.order, poly, self.den.clone())
    }

    /// Re-expresses the value in `Q(ζ_{target})`; requires `order | target`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        let target = check_order(target as u64)?;
        if target % self.order != 0 {
            return Err(Error::NotADivisor {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigInt::zero(); target as usize];
        for (j, c) in self.num.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Ok(Self::from_poly(target, poly, self.den.clone()))
    }

    /// `x · conj(x) == 1`.
    pub fn is_unimodular(&self) -> bool {
        (self * &self.conj()).is_one()
    }

    /// `x · conj(x)`, a real element of the field.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Multiplicative inverse. Unimodular values are inverted by conjugation;
    /// anything else by solving `x · y = 1` over `Q`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        let c = self.conj();
        let nsq = self * &c;
        if let Some(r) = nsq.as_rational() {
            // 1/x = conj(x) / |x|^2 whenever |x|^2 is rational.
            return Ok(c.scale(&r.recip()));
        }
        Ok(self.inverse_by_linear_solve())
    }

    fn inverse_by_linear_solve(&self) -> Self {
        let d = self.degree();
        // Column j holds the coefficients of self · ζ^j.
        let mut basis = Self::one(self.order);
        let zeta = Self::root_of_unity(self.order, 1).expect("valid order");
        let mut cols = Vec::with_capacity(d);
        for _ in 0..d {
            cols.push((self * &basis).coeffs());
            basis = &basis * &zeta;
        }
        // Augmented system A y = e_0.
        let mut a: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !a[r][col].is_zero())
                .expect("multiplication by a nonzero field element is invertible");
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..d {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                        *v = &*v - &(&f * p);
                    }
                }
            }
        }
        let y: Vec<BigRational> = a.into_iter().map(|row| row[d].clone()).collect();
        Self::from_coeffs(self.order, &y).expect("valid order")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numeric value `Σ c_k e^{2πik/M}`.
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let m = self.order as f64;
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let ratio = BigRational::new(c.clone(), self.den.clone())
                    .to_f64()
                    .unwrap_or_else(|| c.to_f64().unwrap_or(f64::NAN) / den);
                Complex64::from_polar(ratio, std::f64::consts::TAU * k as f64 / m)
            })
            .sum()
    }

    /// Numeric value under the embedding `ζ_M ↦ e^{2πik/M}`.
    pub(crate) fn to_complex_at(&self, k: u32) -> Complex64 {
        let m = self.order as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN) / den;
                Complex64::from_polar(v, std::f64::consts::TAU * (j as f64) * (k as f64) / m)
            })
            .sum()
    }

    pub(crate) fn integer_numerators(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }
}

struct RootTable {
    roots: Vec<CycloNum>,
    index: HashMap<Vec<BigInt>, u32>,
}

fn root_table(order: u32) -> Arc<RootTable> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<RootTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = tables.read().expect("root table poisoned").get(&order) {
        return Arc::clone(t);
    }
    let roots: Vec<CycloNum> = (0..order as usize)
        .map(|k| {
            let mut poly = vec![BigInt::zero(); k + 1];
            poly[k] = BigInt::one();
            CycloNum::from_poly(order, poly, BigInt::one())
        })
        .collect();
    let index = roots
        .iter()
        .enumerate()
        .map(|(k, r)| (r.num.clone(), k as u32))
        .collect();
    let table = Arc::new(RootTable { roots, index });
    tables
        .write()
        .expect("root table poisoned")
        .entry(order)
        .or_insert_with(|| Arc::clone(&table));
    table
}

fn assert_same_order(a: &CycloNum, b: &CycloNum) {
    assert_eq!(
        a.order, b.order,
        "cyclotomic order mismatch; use try_* or embed explicitly"
    );
}

// Operator impls panic on an order mismatch; the `try_*` methods report it.
impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        assert_same_order(self, rhs);
        self.add_unchecked(rhs, false)
    }
}

impl Add<&CycloNum> for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        &self + rhs
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        assert_same_order(self, rhs);
        self.add_unchecked(rhs, true)
    }
}

impl Sub<&CycloNum> for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        &self - rhs
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        assert_same_order(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Mul<&CycloNum> for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        &self * rhs
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::format_entry(self))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({}; order {})", self, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycloNum {
        CycloNum::root_of_unity(m, k).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn root_of_unity_basis() {
        assert_eq!(z(3, 1).coeffs(), vec![q(0, 1), q(1, 1)]);
        assert_eq!(z(3, 2).coeffs(), vec![q(-1, 1), q(-1, 1)]);
        assert!(z(7, 0).is_one());
        assert_eq!(z(5, -1), z(5, 4));
        assert!(matches!(
            CycloNum::root_of_unity(0, 1),
            Err(Error::UnsupportedOrder(0))
        ));
        assert!(matches!(
            CycloNum::root_of_unity(361, 1),
            Err(Error::UnsupportedOrder(361))
        ));
    }

    #[test]
    fn tenth_root_is_principal_fifth_root_of_minus_one() {
        let c = z(10, 1).to_complex();
        let want = Complex64::from_polar(1.0, std::f64::consts::PI / 5.0);
        assert!((c - want).norm() < 1e-14);
        assert_eq!(&z(10, 1).pow(5), &CycloNum::from_integer(10, -1));
    }

    #[test]
    fn field_operations() {
        assert_eq!(z(5, 1).conj(), z(5, 4));
        let w = z(3, 1);
        let sum = CycloNum::one(3) + &w + &(&w * &w);
        assert!(sum.is_zero());
        assert_eq!(&z(10, 1) * &z(10, 1), z(5, 1).embed(10).unwrap());
        assert!(matches!(
            z(3, 1).try_add(&z(4, 1)),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    #[should_panic(expected = "order mismatch")]
    fn operators_refuse_mixed_orders() {
        let _ = &z(3, 1) * &z(5, 1);
    }

    #[test]
    fn embedding() {
        assert_eq!(z(3, 1).embed(6).unwrap(), z(6, 2));
        assert!(CycloNum::one(1).embed(17).unwrap().is_one());
        assert_eq!(z(4, 1).embed(12).unwrap(), z(12, 3));
        assert!(matches!(
            z(4, 1).embed(6),
            Err(Error::NotADivisor { from: 4, to: 6 })
        ));
    }

    #[test]
    fn unimodularity() {
        assert!(z(5, 3).is_unimodular());
        assert!(!CycloNum::from_integer(5, 2).is_unimodular());
        let one_plus_w = CycloNum::one(3) + &z(3, 1);
        assert!(one_plus_w.is_unimodular());
        // (1 + ζ3) = -ζ3^2 = ζ6
        assert_eq!(one_plus_w.embed(6).unwrap(), z(6, 1));
    }

    #[test]
    fn to_complex_values() {
        let i = z(4, 1).to_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let w = z(3, 1);
        let s = CycloNum::one(3) + &w + &(&w * &w);
        assert!(s.to_complex().norm() < 1e-14);
        // "-(-1)^{1/5}" under the principal branch.
        let a1 = -z(10, 1);
        let t = 6.0 * std::f64::consts::PI / 5.0;
        assert!((a1.to_complex() - Complex64::new(t.cos(), t.sin())).norm() < 1e-14);
        assert_eq!(a1, z(5, 3).embed(10).unwrap());
    }

    #[test]
    fn inverses() {
        let x = CycloNum::from_integer(12, 2) + &z(12, 1);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        let r = CycloNum::from_rational(7, q(3, 4));
        assert_eq!(r.inverse().unwrap(), CycloNum::from_rational(7, q(4, 3)));
        assert!(matches!(
            CycloNum::zero(5).inverse(),
            Err(Error::DivisionByZero)
        ));
        // A value whose squared modulus is irrational exercises the linear solve.
        let w = CycloNum::from_integer(60, 3) + &z(60, 7) + &z(60, 11).scale(&q(-2, 5));
        assert!(w.norm_sq().as_rational().is_none());
        assert!((&w * &w.inverse().unwrap()).is_one());
    }

    #[test]
    fn root_exponent_lookup() {
        assert_eq!(z(60, 17).root_exponent(), Some(17));
        assert_eq!(CycloNum::from_integer(60, -1).root_exponent(), Some(30));
        assert_eq!(CycloNum::from_integer(60, 2).root_exponent(), None);
        // -1 is not a cube root of unity
        assert_eq!(CycloNum::from_integer(3, -1).root_exponent(), None);
    }

    #[test]
    fn cyclotomic_relation_for_every_order() {
        for m in 1..=MAX_ORDER {
            let phi = cyclotomic_poly(m);
            let zeta = z(m, 1);
            let mut acc = CycloNum::zero(m);
            let mut p = CycloNum::one(m);
            for &c in phi.iter() {
                acc = acc + &p.scale(&q(c, 1));
                p = &p * &zeta;
            }
            assert!(acc.is_zero(), "Phi_{m}(zeta_{m}) != 0");
        }
    }

    #[test]
    fn rational_normalisation() {
        let x = CycloNum::from_coeffs(5, &[q(2, 4), q(-6, 8)]).unwrap();
        assert_eq!(x.coeffs()[..2], [q(1, 2), q(-3, 4)]);
        assert_eq!(
            CycloNum::from_coeffs(3, &[q(1, 1), q(1, 1), q(1, 1)]).unwrap(),
            CycloNum::zero(3)
        );
    }
}
