//! Polylogarithm and polyexponential series, and the generating-function
//! kernels of the Genocchi and Bernoulli type families.
//!
//! The parameters `a`, `b`, `c` only ever appear through their logarithms, so
//! a [`ParamPoint`] carries rational stand-ins for `ln a`, `ln b`, `ln c`.
//! Every kernel here is a scalar series in `t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{factorial_rat, format_rational, int, parse_rational, Rational};
use crate::series::{expm1, weighted_outer, PolySeries};

/// Largest `|k|` accepted for polylogarithm and polyexponential orders.
pub const MAX_POLY_ORDER: i64 = 16;

/// A rational evaluation point `(λ, ln a, ln b, ln c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoint {
    pub lambda: Rational,
    pub ln_a: Rational,
    pub ln_b: Rational,
    pub ln_c: Rational,
}

impl ParamPoint {
    pub fn new(lambda: Rational, ln_a: Rational, ln_b: Rational, ln_c: Rational) -> Self {
        ParamPoint {
            lambda,
            ln_a,
            ln_b,
            ln_c,
        }
    }

    /// `λ = 1`, `a = 1`, `b = c = e`.
    pub fn classical() -> Self {
        ParamPoint::new(int(1), int(0), int(1), int(1))
    }

    /// `a = 1`, `b = c = e` with the given `λ`.
    pub fn base(lambda: Rational) -> Self {
        ParamPoint::new(lambda, int(0), int(1), int(1))
    }

    /// `ln a + ln b`.
    pub fn ln_ab(&self) -> Rational {
        &self.ln_a + &self.ln_b
    }

    pub fn with_ln_c(&self, ln_c: Rational) -> Self {
        ParamPoint {
            ln_c,
            ..self.clone()
        }
    }

    pub fn with_lambda(&self, lambda: Rational) -> Self {
        ParamPoint {
            lambda,
            ..self.clone()
        }
    }

    pub(crate) fn require_genocchi_denominator(&self) -> Result<()> {
        if (&self.lambda + Rational::one()).is_zero() {
            return Err(Error::SingularDenominator("1 + λ = 0".into()));
        }
        Ok(())
    }

    pub(crate) fn require_ln_ab(&self) -> Result<Rational> {
        let l = self.ln_ab();
        if l.is_zero() {
            return Err(Error::SingularDenominator("ln a + ln b = 0".into()));
        }
        Ok(l)
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(λ={}, ln a={}, ln b={}, ln c={})",
            self.lambda, self.ln_a, self.ln_b, self.ln_c
        )
    }
}

impl Serialize for ParamPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.lambda, &self.ln_a, &self.ln_b, &self.ln_c]
            .map(format_rational)
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = <[String; 4]>::deserialize(d)?;
        let parse = |s: &String| parse_rational(s).map_err(serde::de::Error::custom);
        Ok(ParamPoint::new(
            parse(&raw[0])?,
            parse(&raw[1])?,
            parse(&raw[2])?,
            parse(&raw[3])?,
        ))
    }
}

/// Where the polylogarithm sum starts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolylogStart {
    /// `Σ_{m>=1}`, so that `Li_1(z) = -ln(1 - z)`.
    #[default]
    FromOne,
    /// `Σ_{m>=0}` with `0^0 = 1`: only `Li_0` changes, gaining a constant 1.
    FromZero,
}

fn check_order(k: i64) -> Result<()> {
    if k.abs() > MAX_POLY_ORDER {
        return Err(Error::RangeError(format!(
            "order k = {k} outside [-{MAX_POLY_ORDER}, {MAX_POLY_ORDER}]"
        )));
    }
    Ok(())
}

/// `m^{-k}` for `m >= 1`.
fn inverse_power(m: usize, k: i64) -> Rational {
    let p = BigInt::from(m).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::new(BigInt::one(), p)
    } else {
        Rational::from_integer(p)
    }
}

/// `Li_k(inner) = Σ_{m>=1} inner^m / m^k`, truncated at the order of `inner`.
pub fn polylog_series(k: i64, inner: &PolySeries) -> Result<PolySeries> {
    polylog_series_with(k, inner, PolylogStart::FromOne)
}

pub fn polylog_series_with(k: i64, inner: &PolySeries, start: PolylogStart) -> Result<PolySeries> {
    check_order(k)?;
    let outer = weighted_outer(inner.order(), |m| inverse_power(m, k));
    let mut out = outer.compose(inner)?;
    if start == PolylogStart::FromZero {
        match k {
            0 => out = &out + &PolySeries::one(out.order()),
            k if k > 0 => {
                return Err(Error::RangeError(format!(
                    "the m = 0 term 0^0/0^{k} is undefined for positive order"
                )))
            }
            _ => {}
        }
    }
    Ok(out)
}

/// `e_k(inner) = Σ_{m>=1} inner^m / ((m-1)! m^k)`.
pub fn polyexp_series(k: i64, inner: &PolySeries) -> Result<PolySeries> {
    check_order(k)?;
    let outer = weighted_outer(inner.order(), |m| {
        inverse_power(m, k) / factorial_rat(m - 1)
    });
    outer.compose(inner)
}

/// `1 - e^{-2t(ln a + ln b)}`, the polylogarithm argument of type 1.
fn type1_argument(p: &ParamPoint, order: usize) -> PolySeries {
    -&expm1(&(int(-2) * p.ln_ab()), order)
}

/// `log(1 + 2t(ln a + ln b))`, the polyexponential argument of type 2.
fn type2_argument(p: &ParamPoint, order: usize) -> Result<PolySeries> {
    let lin = PolySeries::monomial(int(2) * p.ln_ab(), 1, order);
    PolySeries::log1p(order).compose(&lin)
}

/// `e^{-t ln a} + λ e^{t ln b}`.
fn genocchi_denominator(p: &ParamPoint, order: usize) -> PolySeries {
    let a = PolySeries::exp_linear(&-&p.ln_a, order);
    let b = PolySeries::exp_linear(&p.ln_b, order).scale(&p.lambda);
    &a + &b
}

/// `(Li_k(1 - (ab)^{-2t}) / (a^{-t} + λ b^t))^α`.
pub fn kernel_type1(p: &ParamPoint, k: i64, alpha: usize, order: usize) -> Result<PolySeries> {
    kernel_type1_with(p, k, alpha, order, PolylogStart::FromOne)
}

pub fn kernel_type1_with(
    p: &ParamPoint,
    k: i64,
    alpha: usize,
    order: usize,
    start: PolylogStart,
) -> Result<PolySeries> {
    check_order(k)?;
    p.require_genocchi_denominator()?;
    if alpha == 0 {
        return Ok(PolySeries::one(order));
    }
    let num = polylog_series_with(k, &type1_argument(p, order), start)?;
    Ok(num.try_div(&genocchi_denominator(p, order))?.pow(alpha))
}

/// `(e_k(log(1 + 2t ln ab)) / (a^{-t} + λ b^t))^α`.
pub fn kernel_type2(p: &ParamPoint, k: i64, alpha: usize, order: usize) -> Result<PolySeries> {
    check_order(k)?;
    p.require_genocchi_denominator()?;
    if alpha == 0 {
        return Ok(PolySeries::one(order));
    }
    let num = polyexp_series(k, &type2_argument(p, order)?)?;
    Ok(num.try_div(&genocchi_denominator(p, order))?.pow(alpha))
}

/// `(2t / (λ e^t + 1))^α`, the Apostol-Genocchi kernel without polylogarithms.
pub fn kernel_apostol_genocchi(
    lambda: &Rational,
    alpha: usize,
    order: usize,
) -> Result<PolySeries> {
    if (lambda + Rational::one()).is_zero() {
        return Err(Error::SingularDenominator("1 + λ = 0".into()));
    }
    let den = &PolySeries::exp_linear(&int(1), order).scale(lambda) + &PolySeries::one(order);
    let num = PolySeries::monomial(int(2), 1, order);
    Ok(num.try_div(&den)?.pow(alpha))
}

/// Numerator of a Bernoulli-type kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BernoulliNumerator {
    /// `t`
    Plain,
    /// `Li_k(1 - e^{-t})`
    Polylog(i64),
    /// `e_k(log(1 + t))`
    Polyexp(i64),
}

/// `(numerator / (λ e^t - 1))^α`.
///
/// At `λ = 1` the denominator vanishes at `t = 0` and the leading zero is
/// cancelled against the numerator's.
pub fn kernel_bernoulli(
    numerator: BernoulliNumerator,
    lambda: &Rational,
    alpha: usize,
    order: usize,
) -> Result<PolySeries> {
    if let BernoulliNumerator::Polylog(k) | BernoulliNumerator::Polyexp(k) = numerator {
        check_order(k)?;
    }
    if alpha == 0 {
        return Ok(PolySeries::one(order));
    }
    let work = order + 1;
    let num = match numerator {
        BernoulliNumerator::Plain => PolySeries::t(work),
        BernoulliNumerator::Polylog(k) => polylog_series(k, &-&expm1(&int(-1), work))?,
        BernoulliNumerator::Polyexp(k) => polyexp_series(k, &PolySeries::log1p(work))?,
    };
    let den = &PolySeries::exp_linear(&int(1), work).scale(lambda) - &PolySeries::one(work);
    let q = num.try_div(&den).map_err(|e| match e {
        Error::ValuationError { .. } | Error::DivisionByNonUnit(_) => Error::SingularDenominator(
            format!("λ e^t - 1 with λ = {lambda} has no cancellable zero"),
        ),
        other => other,
    })?;
    Ok(q.truncate(order).pow(alpha))
}

/// `((1 - μ) / (e^t - μ))^s`.
pub fn kernel_frobenius(mu: &Rational, s: usize, order: usize) -> Result<PolySeries> {
    if mu.is_one() {
        return Err(Error::SingularDenominator(
            "Frobenius parameter μ = 1".into(),
        ));
    }
    let one_minus = Rational::one() - mu;
    let den = &PolySeries::exp_linear(&int(1), order) - &PolySeries::constant(mu.clone(), order);
    let num = PolySeries::constant(one_minus, order);
    Ok(num.try_div(&den)?.pow(s))
}
