//! Generators for Fourier, circulant and parametrised matrices, plus the named
//! catalog.

mod catalog;

use num_rational::BigRational;

use crate::cyclotomic::{sqrt, sqrt_int, CycloNum};
use crate::error::{Error, Result};
use crate::matrix::CycloMatrix;

pub use catalog::{
    catalog, catalog_names, display_value, errata, lookup, Erratum, ErratumKind, NamedMatrix,
};

/// The Fourier matrix `F_n`, entry `(j, k) = ζ_n^{jk}`, over `Q(ζ_n)`.
pub fn fourier(n: usize) -> Result<CycloMatrix> {
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be positive".into()));
    }
    let order = n as u32;
    let exps: Vec<i64> = (0..n * n).map(|k| ((k / n) * (k % n)) as i64).collect();
    CycloMatrix::from_exponents(order, n, &exps)
}

/// First row of a circulant matrix; row `i` is the first row shifted right
/// by `i`, so entry `(i, j) = first_row[(j - i) mod n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantSpec {
    first_row: Vec<CycloNum>,
}

impl CirculantSpec {
    pub fn new(first_row: Vec<CycloNum>) -> Result<Self> {
        let order = first_row
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty circulant row".into()))?
            .order();
        if let Some(e) = first_row.iter().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: e.order(),
            });
        }
        Ok(CirculantSpec { first_row })
    }

    pub fn dim(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[CycloNum] {
        &self.first_row
    }
}

pub fn circulant(spec: &CirculantSpec) -> CycloMatrix {
    let n = spec.dim();
    let order = spec.first_row[0].order();
    CycloMatrix::from_fn(n, order, |i, j| spec.first_row[(j + n - i) % n].clone())
        .expect("circulant entries share one order")
}

fn same_order(values: &[&CycloNum]) -> Result<u32> {
    let order = values[0].order();
    for v in values {
        if v.order() != order {
            return Err(Error::OrderMismatch {
                left: order,
                right: v.order(),
            });
        }
    }
    Ok(order)
}

/// The 2×2 matrix `[[a, b], [c, d]]` with one entry replaced by the value
/// forced by `bc + ad = 0`:
///
/// | `which` | solved entry | value      |
/// |---------|--------------|------------|
/// | 1       | `a`          | `-bc/d`    |
/// | 2       | `b`          | `-ad/c`    |
/// | 3       | `c`          | `-ad/b`    |
/// | 4       | `d`          | `-bc/a`    |
///
/// The argument for the solved entry is ignored.
pub fn c2_solutions(
    a: &CycloNum,
    b: &CycloNum,
    c: &CycloNum,
    d: &CycloNum,
    which: u8,
) -> Result<CycloMatrix> {
    let order = same_order(&[a, b, c, d])?;
    let solve = |x: &CycloNum, y: &CycloNum, den: &CycloNum| -> Result<CycloNum> {
        Ok(-(x * y).try_div(den)?)
    };
    let (a, b, c, d) = match which {
        1 => (solve(b, c, d)?, b.clone(), c.clone(), d.clone()),
        2 => (a.clone(), solve(a, d, c)?, c.clone(), d.clone()),
        3 => (a.clone(), b.clone(), solve(a, d, b)?, d.clone()),
        4 => (a.clone(), b.clone(), c.clone(), solve(b, c, a)?),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "c2 solution index must be 1..=4, got {which}"
            )))
        }
    };
    CycloMatrix::new(2, order, vec![a, b, c, d])
}

/// The four 2×2 matrices exactly as they are commonly displayed, including
/// the corner `+bc/d` for the first and the self-referential `-bc/a` in the
/// `c` position of the third. Used to test the displayed formulas against
/// the constraint.
pub fn c2_displayed(
    a: &CycloNum,
    b: &CycloNum,
    c: &CycloNum,
    d: &CycloNum,
    which: u8,
) -> Result<CycloMatrix> {
    let order = same_order(&[a, b, c, d])?;
    let (a, b, c, d) = match which {
        1 => ((b * c).try_div(d)?, b.clone(), c.clone(), d.clone()),
        2 => (a.clone(), -(a * d).try_div(c)?, c.clone(), d.clone()),
        3 => (a.clone(), b.clone(), -(b * c).try_div(a)?, d.clone()),
        4 => (a.clone(), b.clone(), c.clone(), -(b * c).try_div(a)?),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "c2 solution index must be 1..=4, got {which}"
            )))
        }
    };
    CycloMatrix::new(2, order, vec![a, b, c, d])
}

/// Residuals `(a²b + b²c + ac², ab² + a²c + bc²)` of the circulant
/// `[[a,b,c],[c,a,b],[b,c,a]]`. Up to the factor `abc` they are the
/// off-diagonal entries of `C · C^{-1}` in the inverse-orthogonal relation.
pub fn c3_constraints(a: &CycloNum, b: &CycloNum, c: &CycloNum) -> Result<(CycloNum, CycloNum)> {
    same_order(&[a, b, c])?;
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let first = &(&a2 * b) + &(&b2 * c);
    let first = first + &(a * &c2);
    let second = &(a * &b2) + &(&a2 * c);
    let second = second + &(b * &c2);
    Ok((first, second))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticRoots {
    /// `(plus, minus)` roots, using the canonical square root of the
    /// discriminant (positive real part, else positive imaginary part).
    Roots(CycloNum, CycloNum),
    /// The discriminant has no square root in the working field.
    NotRepresentable { discriminant: CycloNum },
}

/// Roots in `a` of the first C₃ constraint `b·a² + c²·a + b²·c = 0`:
/// `a = (-c² ± √(c⁴ - 4b³c)) / (2b)`.
pub fn c3_quadratic_roots(b: &CycloNum, c: &CycloNum) -> Result<QuadraticRoots> {
    let order = same_order(&[b, c])?;
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let c2 = c * c;
    let four = BigRational::from_integer(4.into());
    let disc = &(&c2 * &c2) - (&(&b.pow(3) * c).scale(&four));
    let Some(root) = sqrt(&disc)? else {
        return Ok(QuadraticRoots::NotRepresentable { discriminant: disc });
    };
    let inv_2b = b.scale(&BigRational::from_integer(2.into())).inverse()?;
    let plus = &(&root - &c2) * &inv_2b;
    let minus = &(&(-&root) - &c2) * &inv_2b;
    debug_assert_eq!(plus.order(), order);
    Ok(QuadraticRoots::Roots(plus, minus))
}

/// `1 + a + a² + a³ + a⁴`.
pub fn c5_factor(a: &CycloNum) -> CycloNum {
    let mut acc = CycloNum::one(a.order());
    let mut p = CycloNum::one(a.order());
    for _ in 0..4 {
        p = &p * a;
        acc = acc + &p;
    }
    acc
}

/// The symmetric circulant with first row `(1, a, a⁴, a⁴, a)`.
pub fn c5_circulant(a: &CycloNum) -> CycloMatrix {
    let a4 = a.pow(4);
    let row = vec![CycloNum::one(a.order()), a.clone(), a4.clone(), a4, a.clone()];
    circulant(&CirculantSpec::new(row).expect("one order"))
}

/// How a pair of matrices is combined into a third.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransferConvention {
    /// `H1* · H2`
    AdjointFirst,
    /// `H2* · H1`
    AdjointSecond,
    /// `H1 · H2*`
    FirstTimesAdjointSecond,
    /// `H2 · H1*`
    SecondTimesAdjointFirst,
}

impl TransferConvention {
    pub const ALL: [TransferConvention; 4] = [
        TransferConvention::AdjointFirst,
        TransferConvention::AdjointSecond,
        TransferConvention::FirstTimesAdjointSecond,
        TransferConvention::SecondTimesAdjointFirst,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TransferConvention::AdjointFirst => "H1*H2",
            TransferConvention::AdjointSecond => "H2*H1",
            TransferConvention::FirstTimesAdjointSecond => "H1H2*",
            TransferConvention::SecondTimesAdjointFirst => "H2H1*",
        }
    }
}

/// `(1/√n) · H1* · H2` over `Q(ζ_order)`.
pub fn transfer(h1: &CycloMatrix, h2: &CycloMatrix, order: u32) -> Result<CycloMatrix> {
    transfer_with(TransferConvention::AdjointFirst, h1, h2, order)
}

pub fn transfer_with(
    convention: TransferConvention,
    h1: &CycloMatrix,
    h2: &CycloMatrix,
    order: u32,
) -> Result<CycloMatrix> {
    if h1.dim() != h2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{0}x{0} vs {1}x{1}",
            h1.dim(),
            h2.dim()
        )));
    }
    for h in [h1, h2] {
        if let Some(k) = h.entries().iter().position(|e| !e.is_unimodular()) {
            return Err(Error::NotUnimodular {
                row: k / h.dim(),
                col: k % h.dim(),
            });
        }
    }
    let n = h1.dim();
    let root = sqrt_int(n as u32, order)?;
    let (h1, h2) = (h1.embed(order)?, h2.embed(order)?);
    let product = match convention {
        TransferConvention::AdjointFirst => h1.conj_transpose().matmul(&h2)?,
        TransferConvention::AdjointSecond => h2.conj_transpose().matmul(&h1)?,
        TransferConvention::FirstTimesAdjointSecond => h1.matmul(&h2.conj_transpose())?,
        TransferConvention::SecondTimesAdjointFirst => h2.matmul(&h1.conj_transpose())?,
    };
    // 1/√n = √n / n
    let factor = root.scale(&BigRational::new(1.into(), (n as i64).into()));
    product.scale_by(&factor)
}
