use std::sync::RwLock;

use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Real};

/// Squared weights of the Hardy space: `beta_0^2 = 1` and
/// `beta_{m+1}^2 = beta_m^2 (m + 1) / (m + sigma)`.
///
/// Values are memoised; the cache is shared safely between threads.
#[derive(Debug)]
pub struct WeightSequence<R: Real> {
    sigma: R,
    cache: RwLock<Vec<R>>,
}

impl<R: Real> Clone for WeightSequence<R> {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("weight cache poisoned").clone();
        Self {
            sigma: self.sigma.clone(),
            cache: RwLock::new(cache),
        }
    }
}

impl<R: Real> WeightSequence<R> {
    pub fn new(sigma: R) -> Result<Self> {
        if sigma <= R::zero() {
            return Err(Error::Invalid(format!(
                "weight parameter must be positive, got {}",
                sigma.to_text()
            )));
        }
        Ok(Self {
            sigma,
            cache: RwLock::new(vec![R::one()]),
        })
    }

    pub fn sigma(&self) -> &R {
        &self.sigma
    }

    pub fn is_exact(&self) -> bool {
        R::EXACT
    }

    /// `beta_{j+1}^2 / beta_j^2 = (j + 1) / (j + sigma)`.
    pub fn step(&self, j: usize) -> R {
        R::from_int(j as i64 + 1) / (R::from_int(j as i64) + self.sigma.clone())
    }

    pub fn beta_squared(&self, n: usize) -> R {
        {
            let cache = self.cache.read().expect("weight cache poisoned");
            if let Some(v) = cache.get(n) {
                return v.clone();
            }
        }
        let mut cache = self.cache.write().expect("weight cache poisoned");
        while cache.len() <= n {
            let j = cache.len() - 1;
            let next = cache[j].mul_small(&self.step(j));
            cache.push(next);
        }
        cache[n].clone()
    }

    /// `beta_n^2 / beta_m^2`, computed from the `|n - m|` intermediate steps only.
    pub fn ratio(&self, n: usize, m: usize) -> R {
        let (lo, hi) = (n.min(m), n.max(m));
        let mut acc = R::one();
        for j in lo..hi {
            acc = acc.mul_small(&self.step(j));
        }
        if n >= m {
            acc
        } else {
            R::one() / acc
        }
    }

    /// `beta_n / beta_m` in floating point.
    pub fn norm_ratio(&self, n: usize, m: usize) -> f64 {
        let (lo, hi) = (n.min(m), n.max(m));
        let s = self.sigma.to_f64();
        let log: f64 = (lo..hi)
            .map(|j| ((j as f64 + 1.0) / (j as f64 + s)).ln())
            .sum();
        let r = (0.5 * log).exp();
        if n >= m {
            r
        } else {
            1.0 / r
        }
    }

    /// Bound on the norm of multiplication by `z`: `max(1, sigma^(-1/2))`.
    pub fn multiplier_norm_bound(&self) -> f64 {
        1f64.max(self.sigma.to_f64().powf(-0.5))
    }

    pub fn to_floating(&self) -> WeightSequence<f64> {
        WeightSequence {
            sigma: self.sigma.to_f64(),
            cache: RwLock::new(vec![1.0]),
        }
    }
}

impl WeightSequence<BigRational> {
    /// Exact weights from a rational literal such as `"2"` or `"1/3"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_rational(text)?)
    }
}
