use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::families::{family_kernel, family_series_with, FamilySpec};
use crate::kernels::{ParamPoint, PolylogStart};
use crate::rational::{factorial_rat, serde_str, Rational};
use crate::series::Poly;

use super::CheckConfig;

/// The smallest `(n, x-degree)` at which two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub case: String,
    pub n: usize,
    pub x_degree: usize,
    #[serde(with = "serde_str")]
    pub lhs: Rational,
    #[serde(with = "serde_str")]
    pub rhs: Rational,
}

/// Counts comparisons and keeps the first failure.
#[derive(Debug, Default)]
pub(crate) struct Harness {
    inject_fault: bool,
    pub cases: usize,
    pub mismatch: Option<Mismatch>,
}

impl Harness {
    pub fn new(inject_fault: bool) -> Self {
        Harness {
            inject_fault,
            cases: 0,
            mismatch: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.mismatch.is_some()
    }

    /// Compares `lhs[n]` with `rhs[n]` for every `n`. Returns `false` (and
    /// records the witness) on the first difference, or if a failure was
    /// already recorded.
    pub fn compare(&mut self, case: impl FnOnce() -> String, lhs: &[Poly], rhs: &[Poly]) -> bool {
        if self.failed() {
            return false;
        }
        self.cases += 1;
        let mut perturbed;
        let rhs = if self.inject_fault && !rhs.is_empty() {
            perturbed = rhs.to_vec();
            perturbed[0] = &perturbed[0] + &Poly::one();
            &perturbed[..]
        } else {
            rhs
        };
        let len = lhs.len().max(rhs.len());
        let zero = Poly::zero();
        for n in 0..len {
            let l = lhs.get(n).unwrap_or(&zero);
            let r = rhs.get(n).unwrap_or(&zero);
            if l != r {
                let top = l.coeffs().len().max(r.coeffs().len());
                let d = (0..top).find(|&i| l.coeff(i) != r.coeff(i)).unwrap_or(0);
                self.mismatch = Some(Mismatch {
                    case: case(),
                    n,
                    x_degree: d,
                    lhs: l.coeff(d),
                    rhs: r.coeff(d),
                });
                return false;
            }
        }
        true
    }

    /// Scalar version of [`Harness::compare`].
    pub fn compare_scalars(
        &mut self,
        case: impl FnOnce() -> String,
        lhs: &[Rational],
        rhs: &[Rational],
    ) -> bool {
        let wrap = |v: &[Rational]| v.iter().cloned().map(Poly::constant).collect::<Vec<_>>();
        self.compare(case, &wrap(lhs), &wrap(rhs))
    }
}

type FamilyKey = (FamilySpec, ParamPoint, PolylogStart, usize);
type NumbersKey = (FamilySpec, ParamPoint);

/// Shared state for one suite run: the config and a cache of expansions.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a CheckConfig,
    polys: Mutex<HashMap<FamilyKey, Arc<Vec<Poly>>>>,
    numbers: Mutex<HashMap<NumbersKey, Arc<Vec<Rational>>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a CheckConfig) -> Self {
        Ctx {
            cfg,
            polys: Mutex::default(),
            numbers: Mutex::default(),
        }
    }

    pub fn order(&self) -> usize {
        self.cfg.order
    }

    /// `P_0 .. P_N` at the configured order.
    pub fn family(&self, spec: &FamilySpec, p: &ParamPoint) -> Result<Arc<Vec<Poly>>> {
        self.family_at(spec, p, PolylogStart::FromOne, self.order())
    }

    pub fn family_at(
        &self,
        spec: &FamilySpec,
        p: &ParamPoint,
        start: PolylogStart,
        order: usize,
    ) -> Result<Arc<Vec<Poly>>> {
        let key = (spec.clone(), p.clone(), start, order);
        if let Some(hit) = self.polys.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let value = Arc::new(family_series_with(spec, p, order, start)?.polys);
        self.polys.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// The numbers `P_n(0)`, read off the kernel rather than the polynomials.
    pub fn numbers(&self, spec: &FamilySpec, p: &ParamPoint) -> Result<Arc<Vec<Rational>>> {
        // Numbers never depend on ln c; share one entry across all ln c.
        let p = p.with_ln_c(Rational::one());
        let key = (spec.clone(), p.clone());
        if let Some(hit) = self.numbers.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let kernel = family_kernel(spec, &p, self.order(), PolylogStart::FromOne)?;
        let value: Arc<Vec<Rational>> = Arc::new(
            (0..=self.order())
                .map(|n| kernel.coeff(n).coeff(0) * factorial_rat(n))
                .collect(),
        );
        self.numbers.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// Every `(point, k, α)` of the configured grid.
    pub fn grid(&self) -> Vec<(ParamPoint, i64, usize)> {
        let mut out = Vec::new();
        for p in &self.cfg.samples {
            for &k in &self.cfg.k_range {
                for &alpha in &self.cfg.alpha_range {
                    out.push((p.clone(), k, alpha));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn compare_reports_smallest_witness() {
        let mut h = Harness::new(false);
        let a = vec![Poly::one(), Poly::from_coeffs(vec![int(1), int(2), int(3)])];
        let b = vec![Poly::one(), Poly::from_coeffs(vec![int(1), int(5), int(4)])];
        assert!(h.compare(|| "same".into(), &a, &a));
        assert!(!h.compare(|| "differs".into(), &a, &b));
        let m = h.mismatch.clone().unwrap();
        assert_eq!((m.n, m.x_degree), (1, 1));
        assert_eq!((m.lhs, m.rhs), (int(2), int(5)));
        assert_eq!(h.cases, 2);
        // later comparisons are skipped once failed
        assert!(!h.compare(|| unreachable!(), &a, &a));
    }

    #[test]
    fn fault_injection_breaks_equal_sides() {
        let mut h = Harness::new(true);
        let a = vec![Poly::x_pow(2)];
        assert!(!h.compare(|| "injected".into(), &a, &a));
        assert_eq!(h.mismatch.unwrap().x_degree, 0);
    }
}
