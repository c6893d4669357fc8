use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Poly;
use crate::error::{Error, Result};
use crate::rational::{factorial_rat, rpow, Rational};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 16;

/// Truncated power series in `t` with [`Poly`] coefficients.
///
/// Holds `order + 1` plain Taylor coefficients: `coeffs[n]` multiplies `t^n`
/// with no factorial normalization. Binary operations truncate to the smaller
/// order. A series whose coefficients are all constants is a scalar series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySeries {
    coeffs: Vec<Poly>,
}

impl PolySeries {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_polys(coeffs: Vec<Poly>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        PolySeries { coeffs }
    }

    pub fn from_scalars(coeffs: Vec<Rational>) -> Self {
        PolySeries::from_polys(coeffs.into_iter().map(Poly::constant).collect())
    }

    pub fn zero(order: usize) -> Self {
        PolySeries {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        PolySeries::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = PolySeries::zero(order);
        s.coeffs[0] = Poly::constant(c);
        s
    }

    /// `c * t^k` truncated at `order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = PolySeries::zero(order);
        if k <= order {
            s.coeffs[k] = Poly::constant(c);
        }
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        PolySeries::monomial(Rational::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    /// Scalar coefficient of `t^n`; `None` if it is a non-constant polynomial.
    pub fn scalar(&self, n: usize) -> Option<Rational> {
        self.coeffs[n].as_scalar()
    }

    pub fn is_scalar(&self) -> bool {
        self.coeffs.iter().all(|p| p.degree().unwrap_or(0) == 0)
    }

    /// Index of the lowest nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    pub fn truncate(&self, order: usize) -> PolySeries {
        let keep = (order + 1).min(self.coeffs.len());
        PolySeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolySeries {
        PolySeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> PolySeries {
        PolySeries {
            coeffs: self.coeffs.iter().map(|q| q * p).collect(),
        }
    }

    /// Applies `f` to every coefficient polynomial.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> PolySeries {
        PolySeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Quotient `self / den` with valuation cancellation.
    ///
    /// Common leading zeros are cancelled first, so the result has order
    /// `min(order) - valuation(den)`. The divisor's lowest nonzero coefficient
    /// must be a nonzero constant.
    pub fn try_div(&self, den: &PolySeries) -> Result<PolySeries> {
        let v = den
            .valuation()
            .ok_or_else(|| Error::DivisionByNonUnit("0 (zero series)".into()))?;
        let lead = den.coeffs[v]
            .as_scalar()
            .ok_or_else(|| Error::DivisionByNonUnit(den.coeffs[v].to_string()))?;
        let order = self.order().min(den.order());
        if let Some(vn) = self.valuation() {
            if vn < v {
                return Err(Error::ValuationError { num: vn, den: v });
            }
        }
        if order < v {
            return Err(Error::RangeError(format!(
                "order {order} too small to cancel valuation {v}"
            )));
        }
        let out_order = order - v;
        let inv = lead.recip();
        let mut q: Vec<Poly> = Vec::with_capacity(out_order + 1);
        for i in 0..=out_order {
            let mut acc = self.coeffs[i + v].clone();
            for j in 1..=i {
                let d = &den.coeffs[j + v];
                if d.is_zero() || q[i - j].is_zero() {
                    continue;
                }
                acc = &acc - &(d * &q[i - j]);
            }
            q.push(acc.scale(&inv));
        }
        Ok(PolySeries { coeffs: q })
    }

    /// `self ∘ inner`; `inner` must have zero constant term.
    ///
    /// Sums `c_m inner^m` over successive powers; `inner^m` has valuation at
    /// least `m`, so the products shrink as `m` grows.
    pub fn compose(&self, inner: &PolySeries) -> Result<PolySeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionError);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = PolySeries::zero(order);
        acc.coeffs[0] = self.coeffs[0].clone();
        let mut power = inner.clone();
        for (m, c) in self.coeffs[..=order].iter().enumerate().skip(1) {
            if !c.is_zero() {
                for (slot, term) in acc.coeffs.iter_mut().zip(&power.coeffs).skip(m) {
                    if !term.is_zero() {
                        *slot += &(c * term);
                    }
                }
            }
            if m < order {
                power = &power * &inner;
            }
        }
        Ok(acc)
    }

    /// `self^e` by repeated squaring; `e = 0` gives the constant 1.
    pub fn pow(&self, mut e: usize) -> PolySeries {
        let mut base = self.clone();
        let mut acc = PolySeries::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `e^{r t}`: coefficients `r^n / n!`.
    pub fn exp_linear(r: &Rational, order: usize) -> PolySeries {
        PolySeries::from_scalars((0..=order).map(|n| rpow(r, n) / factorial_rat(n)).collect())
    }

    /// `e^{x r t}`: coefficients `(x r)^n / n!` as polynomials in `x`.
    pub fn exp_x_linear(r: &Rational, order: usize) -> PolySeries {
        PolySeries::from_polys(
            (0..=order)
                .map(|n| Poly::monomial(rpow(r, n) / factorial_rat(n), n))
                .collect(),
        )
    }

    /// `log(1 + t)`.
    pub fn log1p(order: usize) -> PolySeries {
        PolySeries::from_scalars(
            (0..=order)
                .map(|m| match m {
                    0 => Rational::zero(),
                    _ if m % 2 == 1 => Rational::new(1.into(), (m as i64).into()),
                    _ => Rational::new((-1).into(), (m as i64).into()),
                })
                .collect(),
        )
    }

    /// `n! * coeffs[n]`, the `t^n/n!` normalization.
    pub fn egf_coeffs(&self) -> Vec<Poly> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, p)| p.scale(&factorial_rat(n)))
            .collect()
    }

    /// Inverse of [`egf_coeffs`](Self::egf_coeffs).
    pub fn from_egf_coeffs(polys: &[Poly]) -> PolySeries {
        PolySeries::from_polys(
            polys
                .iter()
                .enumerate()
                .map(|(n, p)| p.scale(&factorial_rat(n).recip()))
                .collect(),
        )
    }

    /// Formal derivative in `x` of every coefficient.
    pub fn d_dx(&self) -> PolySeries {
        self.map_coeffs(Poly::derivative)
    }

    /// Multiplies by `t^k`, dropping terms past the current order.
    pub fn shift_up(&self, k: usize) -> PolySeries {
        let order = self.order();
        let mut s = PolySeries::zero(order);
        for n in k..=order {
            s.coeffs[n] = self.coeffs[n - k].clone();
        }
        s
    }
}

impl Add for &PolySeries {
    type Output = PolySeries;

    fn add(self, rhs: &PolySeries) -> PolySeries {
        let order = self.order().min(rhs.order());
        PolySeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl Sub for &PolySeries {
    type Output = PolySeries;

    fn sub(self, rhs: &PolySeries) -> PolySeries {
        let order = self.order().min(rhs.order());
        PolySeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl Neg for &PolySeries {
    type Output = PolySeries;

    fn neg(self) -> PolySeries {
        self.map_coeffs(|p| -p)
    }
}

impl Mul for &PolySeries {
    type Output = PolySeries;

    fn mul(self, rhs: &PolySeries) -> PolySeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Poly::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        PolySeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PolySeries {
            type Output = PolySeries;
            fn $m(self, rhs: PolySeries) -> PolySeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// `Σ_{m=1..order} weight(m) w^m`, used for polylogarithm-like outer series.
pub(crate) fn weighted_outer(order: usize, weight: impl Fn(usize) -> Rational) -> PolySeries {
    PolySeries::from_scalars(
        (0..=order)
            .map(|m| if m == 0 { Rational::zero() } else { weight(m) })
            .collect(),
    )
}

/// `e^t - 1`, a frequent building block.
pub fn expm1(r: &Rational, order: usize) -> PolySeries {
    &PolySeries::exp_linear(r, order) - &PolySeries::one(order)
}
