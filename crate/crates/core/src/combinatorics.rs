//! Stirling numbers, binomial and multinomial coefficients, and factorial
//! polynomials.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, int, Rational};
use crate::series::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StirlingKind {
    /// Signed first kind: coefficients of `log(1+t)^m / m!`.
    FirstSigned,
    /// Second kind: coefficients of `(e^t - 1)^m / m!`.
    Second,
}

/// Triangle of Stirling numbers for `0 <= m <= n <= nmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(kind: StirlingKind, nmax: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=nmax {
            let prev = &rows[n - 1];
            let at = |m: usize| prev.get(m).cloned().unwrap_or_else(BigInt::zero);
            let row = (0..=n)
                .map(|m| {
                    let left = if m == 0 { BigInt::zero() } else { at(m - 1) };
                    match kind {
                        StirlingKind::Second => BigInt::from(m) * at(m) + left,
                        StirlingKind::FirstSigned => left - BigInt::from(n - 1) * at(m),
                    }
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { kind, rows }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// Zero outside the triangle.
    pub fn get(&self, n: usize, m: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(m))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

const CACHED_ROWS: usize = 64;

fn cached(kind: StirlingKind) -> &'static StirlingTable {
    static FIRST: OnceLock<StirlingTable> = OnceLock::new();
    static SECOND: OnceLock<StirlingTable> = OnceLock::new();
    let cell = match kind {
        StirlingKind::FirstSigned => &FIRST,
        StirlingKind::Second => &SECOND,
    };
    cell.get_or_init(|| StirlingTable::new(kind, CACHED_ROWS))
}

fn lookup(kind: StirlingKind, n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    if n <= CACHED_ROWS {
        cached(kind).get(n, m)
    } else {
        StirlingTable::new(kind, n).get(n, m)
    }
}

/// Stirling number of the second kind; 0 when `m > n`.
pub fn stirling2(n: usize, m: usize) -> BigInt {
    lookup(StirlingKind::Second, n, m)
}

/// Signed Stirling number of the first kind; 0 when `m > n`.
pub fn stirling1_signed(n: usize, m: usize) -> BigInt {
    lookup(StirlingKind::FirstSigned, n, m)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_rat(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// `n! / (p_1! p_2! ...)`; the parts must sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigInt> {
    if parts.iter().sum::<usize>() != n {
        return Err(Error::PartitionError {
            n,
            parts: parts.to_vec(),
        });
    }
    let den = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    Ok(factorial(n) / den)
}

/// `x (x+1) ... (x+m-1)`.
pub fn rising_poly(m: usize) -> Poly {
    (0..m).fold(Poly::one(), |acc, i| {
        &acc * &Poly::linear(int(1), int(i as i64))
    })
}

/// `x (x-1) ... (x-m+1)`.
pub fn falling_poly(m: usize) -> Poly {
    (0..m).fold(Poly::one(), |acc, i| {
        &acc * &Poly::linear(int(1), int(-(i as i64)))
    })
}

/// Every weak composition of `total` into `parts` nonnegative summands,
/// in lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=rest {
            cur.push(first);
            go(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::factorial_rat;
    use crate::series::{expm1, PolySeries};

    /// Counts set partitions of {0..n} into exactly m blocks by brute force.
    fn count_partitions(n: usize, m: usize) -> usize {
        fn go(i: usize, n: usize, blocks: usize, m: usize) -> usize {
            if i == n {
                return usize::from(blocks == m);
            }
            // element i joins an existing block or opens a new one
            let mut total = blocks * go(i + 1, n, blocks, m);
            if blocks < m {
                total += go(i + 1, n, blocks + 1, m);
            }
            total
        }
        go(0, n, 0, m)
    }

    #[test]
    fn stirling2_examples() {
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(4, 2), BigInt::from(count_partitions(4, 2)));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(3, 5), BigInt::zero());
        for n in 0..=7 {
            for m in 0..=n {
                assert_eq!(
                    stirling2(n, m),
                    BigInt::from(count_partitions(n, m)),
                    "({n},{m})"
                );
            }
        }
    }

    #[test]
    fn stirling1_examples() {
        assert_eq!(stirling1_signed(1, 1), BigInt::one());
        assert_eq!(stirling1_signed(4, 2), BigInt::from(11));
        assert_eq!(stirling1_signed(3, 1), BigInt::from(2));
        assert_eq!(stirling1_signed(5, 2), BigInt::from(-50));
        assert_eq!(stirling1_signed(2, 7), BigInt::zero());
    }

    #[test]
    fn stirling2_matches_series_definition() {
        let n = 12;
        for m in 0..=n {
            let s = expm1(&int(1), n).pow(m).scale(&factorial_rat(m).recip());
            for k in 0..=n {
                let got = s.scalar(k).unwrap() * factorial_rat(k);
                assert_eq!(got, Rational::from_integer(stirling2(k, m)), "({k},{m})");
            }
        }
    }

    #[test]
    fn stirling1_matches_series_definition() {
        let n = 10;
        for m in 0..=n {
            let s = PolySeries::log1p(n).pow(m).scale(&factorial_rat(m).recip());
            for k in 0..=n {
                let got = s.scalar(k).unwrap() * factorial_rat(k);
                assert_eq!(
                    got,
                    Rational::from_integer(stirling1_signed(k, m)),
                    "({k},{m})"
                );
            }
        }
    }

    #[test]
    fn falling_factorial_expansions() {
        for n in 0..=10 {
            let from_s2 = (0..=n).fold(Poly::zero(), |acc, m| {
                &acc + &falling_poly(m).scale(&Rational::from_integer(stirling2(n, m)))
            });
            assert_eq!(from_s2, Poly::x_pow(n));
            let from_s1 = (0..=n).fold(Poly::zero(), |acc, m| {
                &acc + &Poly::monomial(Rational::from_integer(stirling1_signed(n, m)), m)
            });
            assert_eq!(from_s1, falling_poly(n));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), BigInt::from(12));
        assert_eq!(multinomial(6, &[6]).unwrap(), BigInt::one());
        assert!(matches!(
            multinomial(4, &[1, 1]),
            Err(Error::PartitionError { .. })
        ));
    }

    #[test]
    fn factorial_polys() {
        assert_eq!(rising_poly(0), Poly::one());
        assert_eq!(
            falling_poly(2),
            Poly::from_coeffs(vec![int(0), int(-1), int(1)])
        );
        assert_eq!(
            rising_poly(3),
            Poly::from_coeffs(vec![int(0), int(2), int(3), int(1)])
        );
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(compositions(2, 0).is_empty());
        assert!(compositions(5, 2)
            .iter()
            .all(|c| c.iter().sum::<usize>() == 5));
    }
}
