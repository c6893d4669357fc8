use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{ParamPoint, MAX_POLY_ORDER};
use crate::rational::{int, rat, serde_str_vec, Rational};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ORDER: usize = 16;
/// Largest accepted `(t, u)` order for the double generating function.
pub const MAX_BIVARIATE_ORDER: usize = 8;

/// Everything a suite run depends on. Equal configs give equal reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub order: usize,
    pub samples: Vec<ParamPoint>,
    pub k_range: Vec<i64>,
    pub alpha_range: Vec<usize>,
    pub s_range: Vec<usize>,
    #[serde(with = "serde_str_vec")]
    pub mu_samples: Vec<Rational>,
    #[serde(with = "serde_str_vec")]
    pub y_samples: Vec<Rational>,
    #[serde(with = "serde_str_vec")]
    pub x_samples: Vec<Rational>,
    pub seed: u64,
    pub bivariate_order: (usize, usize),
    /// Perturbs the right-hand side of every comparison; for self-tests.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inject_fault: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig::with_seed(DEFAULT_SEED)
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn random_point(rng: &mut ChaCha8Rng) -> ParamPoint {
    loop {
        let p = ParamPoint::new(
            random_rational(rng),
            random_rational(rng),
            random_rational(rng),
            random_rational(rng),
        );
        let lambda_ok = p.lambda.abs() != Rational::one();
        let ln_c_ok = !p.ln_c.is_zero() && !p.ln_c.is_one();
        if lambda_ok && ln_c_ok && !p.ln_ab().is_zero() {
            return p;
        }
    }
}

impl CheckConfig {
    /// Default grid with random sample points drawn from `seed`.
    ///
    /// Samples: the classical point, a degenerate point with `λ = 0` and
    /// `ln c = 0`, and three random points with `λ ≠ ±1`, `ln c ∉ {0, 1}`.
    pub fn with_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut samples = vec![
            ParamPoint::classical(),
            ParamPoint::new(int(0), rat(1, 3), rat(1, 2), int(0)),
        ];
        while samples.len() < 5 {
            let p = random_point(&mut rng);
            if !samples.contains(&p) {
                samples.push(p);
            }
        }
        let y = random_rational(&mut rng);
        let x_samples = vec![random_rational(&mut rng), random_rational(&mut rng)];
        CheckConfig {
            order: DEFAULT_ORDER,
            samples,
            k_range: (-2..=3).collect(),
            alpha_range: (0..=3).collect(),
            s_range: vec![1, 2],
            mu_samples: vec![int(-1), rat(1, 2)],
            y_samples: vec![int(0), y],
            x_samples,
            seed,
            bivariate_order: (MAX_BIVARIATE_ORDER, MAX_BIVARIATE_ORDER),
            inject_fault: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ConfigError(msg));
        if self.order == 0 {
            return bad("order must be at least 1".into());
        }
        let lists = [
            ("samples", self.samples.is_empty()),
            ("k_range", self.k_range.is_empty()),
            ("alpha_range", self.alpha_range.is_empty()),
            ("s_range", self.s_range.is_empty()),
            ("mu_samples", self.mu_samples.is_empty()),
            ("y_samples", self.y_samples.is_empty()),
            ("x_samples", self.x_samples.is_empty()),
        ];
        if let Some((name, _)) = lists.iter().find(|(_, empty)| *empty) {
            return bad(format!("{name} must not be empty"));
        }
        for p in &self.samples {
            if (&p.lambda + Rational::one()).is_zero() {
                return bad(format!("sample {p} has 1 + λ = 0"));
            }
            if p.ln_ab().is_zero() {
                return bad(format!("sample {p} has ln a + ln b = 0"));
            }
        }
        if let Some(k) = self.k_range.iter().find(|k| k.abs() > MAX_POLY_ORDER) {
            return bad(format!(
                "k = {k} outside [-{MAX_POLY_ORDER}, {MAX_POLY_ORDER}]"
            ));
        }
        if self.mu_samples.iter().any(|m| m.is_one()) {
            return bad("μ = 1 is not allowed".into());
        }
        let (bt, bu) = self.bivariate_order;
        if bt > MAX_BIVARIATE_ORDER || bu > MAX_BIVARIATE_ORDER {
            return bad(format!(
                "bivariate order ({bt}, {bu}) exceeds ({MAX_BIVARIATE_ORDER}, {MAX_BIVARIATE_ORDER})"
            ));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let overrides: ConfigOverrides =
            serde_json::from_str(text).map_err(|e| Error::ConfigError(e.to_string()))?;
        Ok(overrides.apply(None))
    }
}

/// A partial config, as read from a JSON file. Missing keys fall back to
/// the defaults for the given (or default) seed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub order: Option<usize>,
    pub samples: Option<Vec<ParamPoint>>,
    pub k_range: Option<Vec<i64>>,
    pub alpha_range: Option<Vec<usize>>,
    pub s_range: Option<Vec<usize>>,
    #[serde(default, with = "opt_rationals")]
    pub mu_samples: Option<Vec<Rational>>,
    #[serde(default, with = "opt_rationals")]
    pub y_samples: Option<Vec<Rational>>,
    #[serde(default, with = "opt_rationals")]
    pub x_samples: Option<Vec<Rational>>,
    pub seed: Option<u64>,
    pub bivariate_order: Option<(usize, usize)>,
}

mod opt_rationals {
    use serde::{Deserialize, Deserializer};

    use crate::rational::{parse_rational, Rational};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        Option::<Vec<String>>::deserialize(d)?
            .map(|v| {
                v.iter()
                    .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .transpose()
    }
}

impl ConfigOverrides {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ConfigError(e.to_string()))
    }

    /// Builds a config; `seed` wins over the file's seed when given.
    pub fn apply(self, seed: Option<u64>) -> CheckConfig {
        let mut cfg = CheckConfig::with_seed(seed.or(self.seed).unwrap_or(DEFAULT_SEED));
        if let Some(v) = self.order {
            cfg.order = v;
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = self.k_range {
            cfg.k_range = v;
        }
        if let Some(v) = self.alpha_range {
            cfg.alpha_range = v;
        }
        if let Some(v) = self.s_range {
            cfg.s_range = v;
        }
        if let Some(v) = self.mu_samples {
            cfg.mu_samples = v;
        }
        if let Some(v) = self.y_samples {
            cfg.y_samples = v;
        }
        if let Some(v) = self.x_samples {
            cfg.x_samples = v;
        }
        if let Some(v) = self.bivariate_order {
            cfg.bivariate_order = v;
        }
        cfg
    }
}
