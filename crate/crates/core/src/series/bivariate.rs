use num_traits::{One, Zero};

use super::PolySeries;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Truncated power series in two variables `(t, u)` over the rationals.
///
/// `get(n, m)` is the coefficient of `t^n u^m`, for `n <= nt`, `m <= nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    nt: usize,
    nu: usize,
    grid: Vec<Vec<Rational>>,
}

impl BiSeries {
    pub fn zero(nt: usize, nu: usize) -> Self {
        BiSeries {
            nt,
            nu,
            grid: vec![vec![Rational::zero(); nu + 1]; nt + 1],
        }
    }

    pub fn one(nt: usize, nu: usize) -> Self {
        let mut s = BiSeries::zero(nt, nu);
        s.grid[0][0] = Rational::one();
        s
    }

    /// `f(t) ⊗ 1` for a scalar series `f`; non-constant coefficients are rejected.
    pub fn from_t(f: &PolySeries, nt: usize, nu: usize) -> Result<Self> {
        let mut s = BiSeries::zero(nt, nu);
        for n in 0..=nt.min(f.order()) {
            s.grid[n][0] = scalar_of(f, n)?;
        }
        Ok(s)
    }

    /// `1 ⊗ g(u)` for a scalar series `g`.
    pub fn from_u(g: &PolySeries, nt: usize, nu: usize) -> Result<Self> {
        let mut s = BiSeries::zero(nt, nu);
        for m in 0..=nu.min(g.order()) {
            s.grid[0][m] = scalar_of(g, m)?;
        }
        Ok(s)
    }

    pub fn from_fn(nt: usize, nu: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        BiSeries {
            nt,
            nu,
            grid: (0..=nt)
                .map(|n| (0..=nu).map(|m| f(n, m)).collect())
                .collect(),
        }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.nt, self.nu)
    }

    pub fn get(&self, n: usize, m: usize) -> &Rational {
        &self.grid[n][m]
    }

    pub fn set(&mut self, n: usize, m: usize, v: Rational) {
        self.grid[n][m] = v;
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let (nt, nu) = (self.nt.min(other.nt), self.nu.min(other.nu));
        BiSeries::from_fn(nt, nu, |n, m| &self.grid[n][m] + &other.grid[n][m])
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        let (nt, nu) = (self.nt.min(other.nt), self.nu.min(other.nu));
        BiSeries::from_fn(nt, nu, |n, m| &self.grid[n][m] - &other.grid[n][m])
    }

    pub fn scale(&self, c: &Rational) -> BiSeries {
        BiSeries::from_fn(self.nt, self.nu, |n, m| &self.grid[n][m] * c)
    }

    /// Product truncated to the smaller grid in each variable.
    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let (nt, nu) = (self.nt.min(other.nt), self.nu.min(other.nu));
        let mut out = BiSeries::zero(nt, nu);
        for n1 in 0..=nt {
            for m1 in 0..=nu {
                let a = &self.grid[n1][m1];
                if a.is_zero() {
                    continue;
                }
                for n2 in 0..=nt - n1 {
                    for m2 in 0..=nu - m1 {
                        let b = &other.grid[n2][m2];
                        if !b.is_zero() {
                            out.grid[n1 + n2][m1 + m2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// `1 / (1 - z)` as the geometric sum; `z(0,0)` must vanish.
    pub fn geom(z: &BiSeries) -> Result<BiSeries> {
        if !z.grid[0][0].is_zero() {
            return Err(Error::GeomError);
        }
        // z^j has total degree >= j, so nt + nu + 1 Horner steps are exact.
        let one = BiSeries::one(z.nt, z.nu);
        let mut acc = one.clone();
        for _ in 0..(z.nt + z.nu) {
            acc = one.add(&z.mul(&acc));
        }
        Ok(acc)
    }
}

fn scalar_of(f: &PolySeries, n: usize) -> Result<Rational> {
    f.scalar(n)
        .ok_or_else(|| Error::RangeError(format!("coefficient {n} is not a scalar")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn geom_of_zero_is_one() {
        assert_eq!(
            BiSeries::geom(&BiSeries::zero(4, 4)).unwrap(),
            BiSeries::one(4, 4)
        );
    }

    #[test]
    fn geom_of_tu_has_unit_diagonal() {
        let mut z = BiSeries::zero(5, 5);
        z.set(1, 1, int(1));
        let g = BiSeries::geom(&z).unwrap();
        for n in 0..=5 {
            for m in 0..=5 {
                let want = if n == m { int(1) } else { int(0) };
                assert_eq!(g.get(n, m), &want);
            }
        }
    }

    #[test]
    fn geom_rejects_constant_term() {
        assert_eq!(BiSeries::geom(&BiSeries::one(2, 2)), Err(Error::GeomError));
    }

    #[test]
    fn tensor_product_of_exponentials() {
        let et = BiSeries::from_t(&PolySeries::exp_linear(&int(1), 4), 4, 4).unwrap();
        let eu = BiSeries::from_u(&PolySeries::exp_linear(&int(1), 4), 4, 4).unwrap();
        let p = et.mul(&eu);
        assert_eq!(p.get(1, 1), &int(1));
        assert_eq!(p.get(2, 3), &rat(1, 12));
    }

    #[test]
    fn geom_inverts_one_minus_z() {
        let z = BiSeries::from_fn(4, 3, |n, m| {
            if n + m == 0 {
                int(0)
            } else {
                rat(1, (n + 2 * m + 1) as i64)
            }
        });
        let g = BiSeries::geom(&z).unwrap();
        let back = BiSeries::one(4, 3).sub(&z).mul(&g);
        assert_eq!(back, BiSeries::one(4, 3));
    }
}
