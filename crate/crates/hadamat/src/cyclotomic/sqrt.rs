//! Square roots inside a fixed cyclotomic field.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::{check_order, totient, CycloNum};
use crate::error::{Error, Result};

/// Largest number of free sign bits the numeric reconstruction in [`sqrt`]
/// will enumerate.
pub const SQRT_SIGN_BITS_LIMIT: usize = 20;

/// The positive square root of `n ∈ {2, 3, 5}` as an element of `Q(ζ_M)`.
///
/// `√2 = ζ_8 + ζ_8^7`, `√3 = ζ_12 + ζ_12^11` and `√5 = 1 + 2ζ_5 + 2ζ_5^4`, so
/// the order must be divisible by 8, 12 or 5 respectively.
pub fn sqrt_int(n: u32, order: u32) -> Result<CycloNum> {
    let order = check_order(order as u64)?;
    let required = match n {
        2 => 8,
        3 => 12,
        5 => 5,
        _ => return Err(Error::UnsupportedSqrt(n)),
    };
    if order % required != 0 {
        return Err(Error::SqrtNotRepresentable {
            n,
            order,
            required_divisor: required,
            suggested: order.lcm(&required),
        });
    }
    let root = |m: u32, k: i64| {
        CycloNum::root_of_unity(m, k)
            .and_then(|r| r.embed(order))
            .expect("divisor order embeds")
    };
    Ok(match n {
        2 => root(8, 1) + &root(8, 7),
        3 => root(12, 1) + &root(12, 11),
        _ => {
            let two = BigRational::from_integer(2.into());
            CycloNum::one(order) + &root(5, 1).scale(&two) + &root(5, 4).scale(&two)
        }
    })
}

/// A square root of `x` inside `Q(ζ_M)`, or `None` when none exists there.
///
/// When a root exists the one returned has positive real part, or positive
/// imaginary part if it is purely imaginary.
///
/// The search scales `x` by its denominator `d` so that `d²x` is an algebraic
/// integer; its square root then has integer coordinates in the power basis.
/// Those coordinates are recovered numerically from the values of the root
/// under every embedding (one sign choice per conjugate pair) and each
/// candidate is verified exactly, so a `Some` answer is never wrong.
pub fn sqrt(x: &CycloNum) -> Result<Option<CycloNum>> {
    let order = x.order();
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    if let Some(r) = x.as_rational() {
        if let Some(s) = rational_sqrt(&r) {
            return Ok(Some(CycloNum::from_rational(order, s)));
        }
    }
    if totient(order) == 1 {
        // Q itself; the rational case above was exhaustive.
        return Ok(None);
    }

    let (_, den) = x.integer_numerators();
    let den = den.clone();
    let target = x.scale(&BigRational::from_integer(&den * &den));

    let units: Vec<u32> = (1..order).filter(|k| k.gcd(&order) == 1).collect();
    let phi = units.len();
    let half: Vec<u32> = units.iter().copied().filter(|&k| 2 * k < order).collect();
    let sign_bits = half.len() - 1;
    if sign_bits > SQRT_SIGN_BITS_LIMIT {
        return Err(Error::FieldTooLarge {
            order,
            sign_bits,
            limit: SQRT_SIGN_BITS_LIMIT,
        });
    }

    // Vandermonde system V c = values, rows indexed by `units`.
    let vandermonde: Vec<Vec<Complex64>> = units
        .iter()
        .map(|&k| {
            (0..phi)
                .map(|j| {
                    Complex64::from_polar(
                        1.0,
                        std::f64::consts::TAU * (j as f64 * k as f64) / order as f64,
                    )
                })
                .collect()
        })
        .collect();
    let inv = match invert(vandermonde) {
        Some(inv) => inv,
        None => return Ok(None),
    };
    let roots: Vec<Complex64> = half.iter().map(|&k| target.to_complex_at(k).sqrt()).collect();
    let position = |k: u32| units.iter().position(|&u| u == k).expect("unit");

    let mut values = vec![Complex64::zero(); phi];
    for mask in 0u64..(1u64 << sign_bits) {
        for (bit, (&k, r)) in half.iter().zip(&roots).enumerate() {
            let s = if bit > 0 && (mask >> (bit - 1)) & 1 == 1 {
                -*r
            } else {
                *r
            };
            values[position(k)] = s;
            values[position(order - k)] = s.conj();
        }
        let Some(candidate) = round_coordinates(&inv, &values) else {
            continue;
        };
        let z = CycloNum::from_coeffs(
            order,
            &candidate
                .into_iter()
                .map(BigRational::from_integer)
                .collect::<Vec<_>>(),
        )?;
        if &z * &z == target {
            let y = z.scale(&BigRational::new(BigInt::one(), den));
            return Ok(Some(canonical_sign(y)));
        }
    }
    Ok(None)
}

fn canonical_sign(y: CycloNum) -> CycloNum {
    let c = y.to_complex();
    let tol = 1e-9 * c.norm().max(1.0);
    if c.re < -tol || (c.re.abs() <= tol && c.im < 0.0) {
        -y
    } else {
        y
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

fn round_coordinates(inv: &[Vec<Complex64>], values: &[Complex64]) -> Option<Vec<BigInt>> {
    inv.iter()
        .map(|row| {
            let c: Complex64 = row.iter().zip(values).map(|(a, b)| a * b).sum();
            let scale = c.re.abs().max(1.0);
            let rounded = c.re.round();
            if c.im.abs() > 1e-6 * scale || (c.re - rounded).abs() > 1e-6 * scale {
                return None;
            }
            <BigInt as FromPrimitive>::from_f64(rounded)
        })
        .collect()
}

/// Gauss-Jordan inversion with partial pivoting.
fn invert(mut a: Vec<Vec<Complex64>>) -> Option<Vec<Vec<Complex64>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Complex64::one() } else { Complex64::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| {
            a[x][col]
                .norm()
                .partial_cmp(&a[y][col].norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].norm() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f.norm() != 0.0 {
                    for j in 0..n {
                        let (ac, ic) = (a[col][j], inv[col][j]);
                        a[r][j] -= f * ac;
                        inv[r][j] -= f * ic;
                    }
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycloNum {
        CycloNum::root_of_unity(m, k).unwrap()
    }

    #[test]
    fn sqrt_int_expressions() {
        let two = BigRational::from_integer(2.into());
        let s5 = sqrt_int(5, 5).unwrap();
        assert_eq!(s5, CycloNum::one(5) + &z(5, 1).scale(&two) + &z(5, 4).scale(&two));
        assert_eq!(&s5 * &s5, CycloNum::from_integer(5, 5));

        let s3 = sqrt_int(3, 12).unwrap();
        assert_eq!(s3, z(12, 1) + &z(12, 11));
        assert_eq!(&s3 * &s3, CycloNum::from_integer(12, 3));

        let s2 = sqrt_int(2, 8).unwrap();
        assert_eq!(s2, z(8, 1) + &z(8, 7));
        assert_eq!(&s2 * &s2, CycloNum::from_integer(8, 2));

        for (n, m) in [(2, 120), (3, 60), (5, 60)] {
            let s = sqrt_int(n, m).unwrap();
            let c = s.to_complex();
            assert!((c.re - (n as f64).sqrt()).abs() < 1e-12 && c.im.abs() < 1e-12);
        }
    }

    #[test]
    fn sqrt_int_reports_minimal_order() {
        assert_eq!(
            sqrt_int(2, 60),
            Err(Error::SqrtNotRepresentable {
                n: 2,
                order: 60,
                required_divisor: 8,
                suggested: 120
            })
        );
        assert!(matches!(
            sqrt_int(3, 6),
            Err(Error::SqrtNotRepresentable {
                required_divisor: 12,
                ..
            })
        ));
        assert_eq!(sqrt_int(7, 28), Err(Error::UnsupportedSqrt(7)));
    }

    #[test]
    fn sqrt_of_minus_three_in_q_zeta3() {
        let m3 = CycloNum::from_integer(3, -3);
        let s = sqrt(&m3).unwrap().unwrap();
        assert_eq!(s, z(3, 1) - &z(3, 2));
        let at60 = sqrt(&m3.embed(60).unwrap()).unwrap().unwrap();
        assert_eq!(at60, s.embed(60).unwrap());
    }

    #[test]
    fn sqrt_absent_and_rational() {
        assert_eq!(sqrt(&CycloNum::from_integer(3, 2)).unwrap(), None);
        assert_eq!(sqrt(&CycloNum::from_integer(1, -1)).unwrap(), None);
        assert_eq!(sqrt(&CycloNum::from_integer(4, -1)).unwrap(), Some(z(4, 1)));
        let quarter = CycloNum::from_rational(5, BigRational::new(9.into(), 4.into()));
        assert_eq!(
            sqrt(&quarter).unwrap(),
            Some(CycloNum::from_rational(5, BigRational::new(3.into(), 2.into())))
        );
    }

    #[test]
    fn sqrt_recovers_squares() {
        let x = CycloNum::from_integer(60, 2) - &z(60, 7)
            + &z(60, 22).scale(&BigRational::new(3.into(), 5.into()));
        let sq = &x * &x;
        let r = sqrt(&sq).unwrap().unwrap();
        assert_eq!(&r * &r, sq);
        assert!(r == x || r == -x.clone());
    }
}
