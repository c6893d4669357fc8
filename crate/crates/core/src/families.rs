//! Named polynomial families, number extraction, the Appell operator
//! expansion and the symmetrized double generating function.
//!
//! Every family is `kernel(t) · e^{x r t}` with a scalar kernel and a rate
//! `r` (`ln c` for the Genocchi types with parameters, 1 otherwise). The
//! `n`-th polynomial is `n!` times the `t^n` coefficient.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial_rat;
use crate::error::{Error, Result};
use crate::kernels::{
    kernel_apostol_genocchi, kernel_bernoulli, kernel_frobenius, kernel_type1_with, kernel_type2,
    BernoulliNumerator, ParamPoint, PolylogStart,
};
use crate::rational::{factorial_rat, int, rpow, serde_str, Rational};
use crate::series::{BiSeries, Poly, PolySeries};

/// Which generating function a [`FamilySpec`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    /// `(Li_k(1-(ab)^{-2t}) / (a^{-t}+λb^t))^α c^{xt}`
    #[serde(rename = "type1")]
    Type1PolyGenocchi,
    /// `(e_k(log(1+2t ln ab)) / (a^{-t}+λb^t))^α c^{xt}`
    #[serde(rename = "type2")]
    Type2PolyGenocchi,
    /// `(Li_k(1-e^{-t}) / (λe^t-1))^α e^{xt}`
    #[serde(rename = "apostol-poly-bernoulli")]
    ApostolPolyBernoulliT1,
    /// `(e_k(log(1+t)) / (λe^t-1))^α e^{xt}`
    #[serde(rename = "apostol-poly-bernoulli-2")]
    ApostolPolyBernoulliT2,
    /// `(t / (λe^t-1))^α e^{xt}`
    #[serde(rename = "apostol-bernoulli")]
    ApostolBernoulliHigher,
    /// `((1-μ) / (e^t-μ))^s e^{xt}`
    #[serde(rename = "frobenius")]
    FrobeniusHigher,
    /// `2t / (e^t+1) e^{xt}`
    #[serde(rename = "classical-genocchi")]
    ClassicalGenocchi,
    /// `(2t / (e^t+1))^α e^{xt}`
    #[serde(rename = "classical-genocchi-higher")]
    ClassicalGenocchiHigher,
    /// `2t / (λe^t+1) e^{xt}`
    #[serde(rename = "apostol-genocchi")]
    ApostolGenocchi,
    /// `(2t / (λe^t+1))^α e^{xt}`
    #[serde(rename = "apostol-genocchi-higher")]
    ApostolGenocchiHigher,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 10] = [
        FamilyTag::Type1PolyGenocchi,
        FamilyTag::Type2PolyGenocchi,
        FamilyTag::ApostolPolyBernoulliT1,
        FamilyTag::ApostolPolyBernoulliT2,
        FamilyTag::ApostolBernoulliHigher,
        FamilyTag::FrobeniusHigher,
        FamilyTag::ClassicalGenocchi,
        FamilyTag::ClassicalGenocchiHigher,
        FamilyTag::ApostolGenocchi,
        FamilyTag::ApostolGenocchiHigher,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Type1PolyGenocchi => "type1",
            FamilyTag::Type2PolyGenocchi => "type2",
            FamilyTag::ApostolPolyBernoulliT1 => "apostol-poly-bernoulli",
            FamilyTag::ApostolPolyBernoulliT2 => "apostol-poly-bernoulli-2",
            FamilyTag::ApostolBernoulliHigher => "apostol-bernoulli",
            FamilyTag::FrobeniusHigher => "frobenius",
            FamilyTag::ClassicalGenocchi => "classical-genocchi",
            FamilyTag::ClassicalGenocchiHigher => "classical-genocchi-higher",
            FamilyTag::ApostolGenocchi => "apostol-genocchi",
            FamilyTag::ApostolGenocchiHigher => "apostol-genocchi-higher",
        }
    }

    /// Whether the family carries a polylogarithm/polyexponential order `k`.
    pub fn has_k(self) -> bool {
        matches!(
            self,
            FamilyTag::Type1PolyGenocchi
                | FamilyTag::Type2PolyGenocchi
                | FamilyTag::ApostolPolyBernoulliT1
                | FamilyTag::ApostolPolyBernoulliT2
        )
    }

    /// Genocchi-type kernels have `1 + λ` in the denominator.
    pub fn is_genocchi(self) -> bool {
        matches!(
            self,
            FamilyTag::Type1PolyGenocchi
                | FamilyTag::Type2PolyGenocchi
                | FamilyTag::ClassicalGenocchi
                | FamilyTag::ClassicalGenocchiHigher
                | FamilyTag::ApostolGenocchi
                | FamilyTag::ApostolGenocchiHigher
        )
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::RangeError(format!("unknown family {s:?}")))
    }
}

/// A family together with its discrete parameters.
///
/// `alpha` is the order (`s` for Frobenius); `k` is ignored by families
/// without a polylogarithm; `mu` is only read by Frobenius.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    pub k: i64,
    pub alpha: usize,
    #[serde(with = "serde_str")]
    pub mu: Rational,
}

impl FamilySpec {
    pub fn new(tag: FamilyTag, k: i64, alpha: usize) -> Self {
        FamilySpec {
            tag,
            k,
            alpha,
            mu: int(-1),
        }
    }

    pub fn type1(k: i64, alpha: usize) -> Self {
        FamilySpec::new(FamilyTag::Type1PolyGenocchi, k, alpha)
    }

    pub fn type2(k: i64, alpha: usize) -> Self {
        FamilySpec::new(FamilyTag::Type2PolyGenocchi, k, alpha)
    }

    pub fn of_type(ty: GenocchiType, k: i64, alpha: usize) -> Self {
        match ty {
            GenocchiType::Type1 => FamilySpec::type1(k, alpha),
            GenocchiType::Type2 => FamilySpec::type2(k, alpha),
        }
    }

    /// The Bernoulli family paired with a Genocchi type.
    pub fn bernoulli_of_type(ty: GenocchiType, k: i64, alpha: usize) -> Self {
        let tag = match ty {
            GenocchiType::Type1 => FamilyTag::ApostolPolyBernoulliT1,
            GenocchiType::Type2 => FamilyTag::ApostolPolyBernoulliT2,
        };
        FamilySpec::new(tag, k, alpha)
    }

    pub fn frobenius(s: usize, mu: Rational) -> Self {
        FamilySpec {
            tag: FamilyTag::FrobeniusHigher,
            k: 0,
            alpha: s,
            mu,
        }
    }
}

/// The two poly-Genocchi constructions: polylogarithm (1) and
/// polyexponential (2) numerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenocchiType {
    Type1,
    Type2,
}

impl GenocchiType {
    pub fn prefix(self) -> &'static str {
        match self {
            GenocchiType::Type1 => "t1",
            GenocchiType::Type2 => "t2",
        }
    }
}

/// The polynomials `P_0 .. P_N` of one family at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyExpansion {
    pub spec: FamilySpec,
    pub params: ParamPoint,
    pub order: usize,
    pub polys: Vec<Poly>,
}

impl FamilyExpansion {
    /// `Σ P_n(x) t^n / n!` as a series.
    pub fn to_series(&self) -> PolySeries {
        PolySeries::from_egf_coeffs(&self.polys)
    }

    /// `P_n(0)` for every `n`.
    pub fn numbers(&self) -> Vec<Rational> {
        self.polys.iter().map(|p| p.coeff(0)).collect()
    }
}

/// Scalar kernel of a family, without the `e^{x r t}` factor.
pub fn family_kernel(
    spec: &FamilySpec,
    params: &ParamPoint,
    order: usize,
    start: PolylogStart,
) -> Result<PolySeries> {
    let lambda = &params.lambda;
    match spec.tag {
        FamilyTag::Type1PolyGenocchi => kernel_type1_with(params, spec.k, spec.alpha, order, start),
        FamilyTag::Type2PolyGenocchi => kernel_type2(params, spec.k, spec.alpha, order),
        FamilyTag::ApostolPolyBernoulliT1 => kernel_bernoulli(
            BernoulliNumerator::Polylog(spec.k),
            lambda,
            spec.alpha,
            order,
        ),
        FamilyTag::ApostolPolyBernoulliT2 => kernel_bernoulli(
            BernoulliNumerator::Polyexp(spec.k),
            lambda,
            spec.alpha,
            order,
        ),
        FamilyTag::ApostolBernoulliHigher => {
            kernel_bernoulli(BernoulliNumerator::Plain, lambda, spec.alpha, order)
        }
        FamilyTag::FrobeniusHigher => kernel_frobenius(&spec.mu, spec.alpha, order),
        FamilyTag::ClassicalGenocchi => kernel_apostol_genocchi(&int(1), 1, order),
        FamilyTag::ClassicalGenocchiHigher => kernel_apostol_genocchi(&int(1), spec.alpha, order),
        FamilyTag::ApostolGenocchi => kernel_apostol_genocchi(lambda, 1, order),
        FamilyTag::ApostolGenocchiHigher => kernel_apostol_genocchi(lambda, spec.alpha, order),
    }
}

/// Rate `r` of the exponential factor `e^{x r t}`.
pub fn x_rate(spec: &FamilySpec, params: &ParamPoint) -> Rational {
    match spec.tag {
        FamilyTag::Type1PolyGenocchi | FamilyTag::Type2PolyGenocchi => params.ln_c.clone(),
        _ => Rational::one(),
    }
}

pub fn family_series(
    spec: &FamilySpec,
    params: &ParamPoint,
    order: usize,
) -> Result<FamilyExpansion> {
    family_series_with(spec, params, order, PolylogStart::FromOne)
}

pub fn family_series_with(
    spec: &FamilySpec,
    params: &ParamPoint,
    order: usize,
    start: PolylogStart,
) -> Result<FamilyExpansion> {
    let kernel = family_kernel(spec, params, order, start)?;
    let gf = &kernel * &PolySeries::exp_x_linear(&x_rate(spec, params), order);
    Ok(FamilyExpansion {
        spec: spec.clone(),
        params: params.clone(),
        order,
        polys: gf.egf_coeffs(),
    })
}

/// `P_n(x)`.
pub fn polynomial_at(spec: &FamilySpec, params: &ParamPoint, n: usize) -> Result<Poly> {
    Ok(family_series(spec, params, n)?.polys.swap_remove(n))
}

/// `P_n(0)`, read straight off the kernel.
pub fn numbers_at(spec: &FamilySpec, params: &ParamPoint, n: usize) -> Result<Rational> {
    let kernel = family_kernel(spec, params, n, PolylogStart::FromOne)?;
    Ok(kernel.coeff(n).coeff(0) * factorial_rat(n))
}

/// `(Σ_i numbers_i / i! · D^i) x^n` with `D = d/dx`.
///
/// This is the `c = e` member of the family: the numbers do not depend on
/// `ln c`, and the operator produces the `ln c = 1` polynomial.
pub fn appell_expand(spec: &FamilySpec, params: &ParamPoint, n: usize) -> Result<Poly> {
    let kernel = family_kernel(spec, params, n, PolylogStart::FromOne)?;
    // kernel.coeff(i) = numbers_i / i!
    let weights: Vec<Rational> = (0..=n).map(|i| kernel.coeff(i).coeff(0)).collect();
    Ok(appell_operator(&weights, n))
}

/// `(Σ_i w_i D^i) x^n`; missing weights count as zero.
pub fn appell_operator(weights: &[Rational], n: usize) -> Poly {
    // D^i x^n = n!/(n-i)! x^(n-i)
    let mut falling = Rational::one();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (i, w) in weights.iter().enumerate().take(n + 1) {
        coeffs[n - i] = w * &falling;
        falling *= int((n - i) as i64);
    }
    Poly::from_coeffs(coeffs)
}

/// `(y ln c + α ln a) / (ln a + ln b)`, the shifted argument used throughout
/// the base-point reductions.
pub fn shifted_argument(params: &ParamPoint, alpha: usize, y: &Rational) -> Result<Rational> {
    let l = params.require_ln_ab()?;
    Ok((y * &params.ln_c + int(alpha as i64) * &params.ln_a) / l)
}

/// `S_n^{(m, α)}(x, y)` for one `(m, n)`; `x` stays symbolic.
pub fn symmetrized_s(
    m: usize,
    n: usize,
    alpha: usize,
    params: &ParamPoint,
    y: &Rational,
    start: PolylogStart,
) -> Result<Poly> {
    let grid = symmetrized_grid(n, m, alpha, params, y, start)?;
    Ok(grid[n][m].clone())
}

/// `grid[n][m] = S_n^{(m, α)}(x, y)` for `n <= nt`, `m <= nu`.
///
/// Uses the type 1 families of polylogarithm orders `0, -1, .., -nu`.
pub fn symmetrized_grid(
    nt: usize,
    nu: usize,
    alpha: usize,
    params: &ParamPoint,
    y: &Rational,
    start: PolylogStart,
) -> Result<Vec<Vec<Poly>>> {
    let l = params.require_ln_ab()?;
    let shift = shifted_argument(params, alpha, y)?;
    let families = (0..=nu)
        .map(|k| {
            let spec = FamilySpec::type1(-(k as i64), alpha);
            family_series_with(&spec, params, nt, start).map(|f| f.polys)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut grid = vec![vec![Poly::zero(); nu + 1]; nt + 1];
    for (n, row) in grid.iter_mut().enumerate() {
        let inv_ln = rpow(&l, n).recip();
        for (m, cell) in row.iter_mut().enumerate() {
            let mut acc = Poly::zero();
            for (k, fam) in families.iter().enumerate().take(m + 1) {
                let w = binomial_rat(m, k) * rpow(&shift, m - k) * &inv_ln;
                acc = &acc + &fam[n].scale(&w);
            }
            *cell = acc;
        }
    }
    Ok(grid)
}

/// Closed-form double generating function
/// `e^{Y u} e^{X t} e^{2t} / ((1 + λe^t)(e^{2t} - e^{2t+u} + e^u))`
/// with `X`, `Y` the shifted arguments of the rational points `x`, `y`.
pub fn double_gf_rhs(
    alpha: usize,
    params: &ParamPoint,
    x: &Rational,
    y: &Rational,
    orders: (usize, usize),
) -> Result<BiSeries> {
    params.require_genocchi_denominator()?;
    let (nt, nu) = orders;
    let big_x = shifted_argument(params, alpha, x)?;
    let big_y = shifted_argument(params, alpha, y)?;

    let e_t = PolySeries::exp_linear(&int(1), nt);
    let apostol = &PolySeries::one(nt) + &e_t.scale(&params.lambda);
    let t_part = PolySeries::exp_linear(&(big_x + int(2)), nt).try_div(&apostol)?;
    let numerator = BiSeries::from_t(&t_part, nt, nu)?.mul(&BiSeries::from_u(
        &PolySeries::exp_linear(&big_y, nu),
        nt,
        nu,
    )?);

    let e2t = BiSeries::from_t(&PolySeries::exp_linear(&int(2), nt), nt, nu)?;
    let eu = BiSeries::from_u(&PolySeries::exp_linear(&int(1), nu), nt, nu)?;
    let denom = e2t.sub(&e2t.mul(&eu)).add(&eu);
    let inv = BiSeries::geom(&BiSeries::one(nt, nu).sub(&denom))?;
    Ok(numerator.mul(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn classical_expansion(n: usize) -> Vec<Poly> {
        family_series(
            &FamilySpec::new(FamilyTag::ClassicalGenocchi, 1, 1),
            &ParamPoint::classical(),
            n,
        )
        .unwrap()
        .polys
    }

    #[test]
    fn classical_genocchi_polynomials() {
        let p = classical_expansion(4);
        assert_eq!(p[0], Poly::zero());
        assert_eq!(p[1], Poly::one());
        assert_eq!(p[2], Poly::from_coeffs(vec![int(-1), int(2)]));
    }

    #[test]
    fn euler_from_frobenius() {
        let f = family_series(
            &FamilySpec::frobenius(1, int(-1)),
            &ParamPoint::classical(),
            3,
        )
        .unwrap();
        assert_eq!(f.polys[0], Poly::one());
        assert_eq!(f.polys[1], Poly::from_coeffs(vec![rat(-1, 2), int(1)]));
    }

    #[test]
    fn type1_k2_numbers() {
        let spec = FamilySpec::type1(2, 1);
        let p = ParamPoint::classical();
        assert_eq!(numbers_at(&spec, &p, 1).unwrap(), int(1));
        assert_eq!(numbers_at(&spec, &p, 2).unwrap(), int(-2));
        let f = family_series(&spec, &p, 2).unwrap();
        assert_eq!(f.polys[1].eval(&int(0)), int(1));
        assert_eq!(f.polys[2].eval(&int(0)), int(-2));
    }

    #[test]
    fn classical_numbers() {
        let spec = FamilySpec::new(FamilyTag::ClassicalGenocchi, 1, 1);
        let p = ParamPoint::classical();
        let want = [0, 1, -1, 0, 1, 0, -3];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(numbers_at(&spec, &p, n).unwrap(), int(*w), "n = {n}");
        }
        for k in 1..=3 {
            assert_eq!(numbers_at(&FamilySpec::type1(k, 2), &p, 0).unwrap(), int(0));
        }
    }

    #[test]
    fn appell_expand_examples() {
        let spec = FamilySpec::type1(3, 2);
        let p = ParamPoint::new(rat(1, 3), rat(1, 2), int(1), int(1));
        let g: Vec<Rational> = (0..=3).map(|i| numbers_at(&spec, &p, i).unwrap()).collect();
        let want = Poly::from_coeffs(vec![
            g[3].clone(),
            int(3) * &g[2],
            int(3) * &g[1],
            g[0].clone(),
        ]);
        assert_eq!(appell_expand(&spec, &p, 3).unwrap(), want);
        assert_eq!(
            appell_expand(&spec, &p, 0).unwrap(),
            Poly::constant(g[0].clone())
        );
        assert_eq!(
            appell_expand(&spec, &p, 7).unwrap(),
            polynomial_at(&spec, &p, 7).unwrap()
        );
    }

    #[test]
    fn alpha_zero_is_pure_exponential() {
        let p = ParamPoint::new(int(2), int(1), int(1), rat(3, 2));
        let f = family_series(&FamilySpec::type1(2, 0), &p, 5).unwrap();
        for (n, poly) in f.polys.iter().enumerate() {
            assert_eq!(poly, &Poly::monomial(rpow(&rat(3, 2), n), n));
        }
    }

    #[test]
    fn expansion_round_trips_through_series() {
        let p = ParamPoint::new(rat(-1, 3), rat(2, 3), int(1), int(2));
        let spec = FamilySpec::type2(2, 2);
        let f = family_series(&spec, &p, 8).unwrap();
        let kernel = family_kernel(&spec, &p, 8, PolylogStart::FromOne).unwrap();
        let gf = &kernel * &PolySeries::exp_x_linear(&p.ln_c, 8);
        assert_eq!(f.to_series(), gf);
    }

    #[test]
    fn symmetrized_m0_is_scaled_family() {
        let p = ParamPoint::new(int(2), rat(1, 2), rat(1, 3), int(2));
        let y = rat(1, 4);
        let l = p.ln_ab();
        for n in 0..4 {
            let s = symmetrized_s(0, n, 2, &p, &y, PolylogStart::FromOne).unwrap();
            let g = polynomial_at(&FamilySpec::type1(0, 2), &p, n).unwrap();
            assert_eq!(s, g.scale(&rpow(&l, n).recip()));
        }
    }

    #[test]
    fn double_gf_constant_term() {
        let p = ParamPoint::new(rat(2, 3), int(1), int(1), int(1));
        let g = double_gf_rhs(1, &p, &int(0), &int(0), (3, 3)).unwrap();
        assert_eq!(g.get(0, 0), &rat(3, 5));
        assert!(double_gf_rhs(1, &p.with_lambda(int(-1)), &int(0), &int(0), (2, 2)).is_err());
    }

    #[test]
    fn double_gf_u_row_zero() {
        // At u = 0 the closed form collapses to e^{(X+2)t} / (1 + λe^t).
        let p = ParamPoint::new(rat(1, 2), rat(1, 3), rat(2, 3), int(3));
        let x = rat(2, 5);
        let g = double_gf_rhs(1, &p, &x, &int(1), (6, 4)).unwrap();
        let big_x = shifted_argument(&p, 1, &x).unwrap();
        let den = &PolySeries::one(6) + &PolySeries::exp_linear(&int(1), 6).scale(&p.lambda);
        let want = PolySeries::exp_linear(&(big_x + int(2)), 6)
            .try_div(&den)
            .unwrap();
        for n in 0..=6 {
            assert_eq!(g.get(n, 0), &want.scalar(n).unwrap());
        }
    }

    #[test]
    fn double_gf_first_u_entry_by_hand() {
        // λ = 1, ln a = ln b = ln c = 1, x = y = 0: X = Y = 1/2.
        // (0,1) entry: d/du at t = 0 of e^{u/2} / (2 (1 - e^u + e^u)) = 1/4.
        let p = ParamPoint::new(int(1), int(1), int(1), int(1));
        let g = double_gf_rhs(1, &p, &int(0), &int(0), (2, 2)).unwrap();
        assert_eq!(g.get(0, 1), &rat(1, 4));
    }

    #[test]
    fn tags_round_trip_through_names() {
        for t in FamilyTag::ALL {
            assert_eq!(t.name().parse::<FamilyTag>().unwrap(), t);
        }
        assert!("nope".parse::<FamilyTag>().is_err());
    }
}
