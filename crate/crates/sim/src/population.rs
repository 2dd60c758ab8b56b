//! Synthetic truth populations.
//!
//! A member carries the true opening state `x` and the true raw outcome
//! `y_raw` on [0, support_max], with the logical restriction that a negative
//! opening state forces a zero outcome. Generation is deterministic given
//! (config, seed); the generator is ChaCha8, which is stable across
//! platforms and rand releases within the pinned major version.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use skipseq_ingest::GFunction;

use crate::error::SimError;

/// Distribution of the raw outcome among members with a positive opening
/// state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum YDistribution {
    /// y is support_max with probability `p_positive`, else 0. With
    /// support_max = 1 this is the binary outcome the response-error models
    /// require.
    Bernoulli { p_positive: f64 },
    /// y uniform on [0, support_max].
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationConfig {
    pub n: usize,
    /// P(x = 1): share of the population on the positive opening branch.
    pub p_x: f64,
    pub y_given_x: YDistribution,
    pub support_max: f64,
    #[serde(default)]
    pub g: GFunction,
}

impl PopulationConfig {
    fn validate(&self) -> Result<(), SimError> {
        if self.n == 0 {
            return Err(SimError::InvalidConfig("population size must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p_x) {
            return Err(SimError::InvalidConfig(format!("p_x = {} not in [0, 1]", self.p_x)));
        }
        if let YDistribution::Bernoulli { p_positive } = self.y_given_x {
            if !(0.0..=1.0).contains(&p_positive) {
                return Err(SimError::InvalidConfig(format!(
                    "p_positive = {p_positive} not in [0, 1]"
                )));
            }
        }
        self.g
            .validate(self.support_max)
            .map_err(|e| SimError::InvalidConfig(e.to_string()))?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Member {
    pub x: bool,
    pub y_raw: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    members: Vec<Member>,
    support_max: f64,
    g: GFunction,
}

/// Draw a population of `config.n` members.
pub fn gen_population(config: &PopulationConfig, seed: u64) -> Result<Population, SimError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..config.n)
        .map(|_| {
            let x = rng.random_bool(config.p_x);
            let y_raw = if !x {
                0.0
            } else {
                match config.y_given_x {
                    YDistribution::Bernoulli { p_positive } => {
                        if rng.random_bool(p_positive) {
                            config.support_max
                        } else {
                            0.0
                        }
                    }
                    YDistribution::Uniform => rng.random_range(0.0..=config.support_max),
                }
            };
            Member { x, y_raw }
        })
        .collect();
    Ok(Population { members, support_max: config.support_max, g: config.g.clone() })
}

impl Population {
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn support_max(&self) -> f64 {
        self.support_max
    }

    pub fn g(&self) -> &GFunction {
        &self.g
    }

    /// Normalized outcome of one member.
    pub fn g_of(&self, member: &Member) -> f64 {
        self.g.apply(member.y_raw, self.support_max)
    }

    /// Population mean of the normalized outcome — the estimand the
    /// nonresponse bounds must cover.
    pub fn true_mean_g(&self) -> f64 {
        self.members.iter().map(|m| self.g_of(m)).sum::<f64>() / self.members.len() as f64
    }

    /// Whether every outcome is 0 or support_max.
    pub fn is_binary(&self) -> bool {
        self.members.iter().all(|m| m.y_raw == 0.0 || m.y_raw == self.support_max)
    }

    /// Population rate of the positive outcome, defined for binary
    /// populations — the estimand the response-error bounds must cover.
    pub fn true_p_positive(&self) -> Option<f64> {
        if !self.is_binary() {
            return None;
        }
        let count = self.members.iter().filter(|m| m.y_raw == self.support_max).count();
        Some(count as f64 / self.members.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary_config(n: usize, p_x: f64, p_positive: f64) -> PopulationConfig {
        PopulationConfig {
            n,
            p_x,
            y_given_x: YDistribution::Bernoulli { p_positive },
            support_max: 1.0,
            g: GFunction::LinearScaled,
        }
    }

    #[test]
    fn same_seed_same_population() {
        let config = binary_config(5000, 0.3, 0.6);
        let a = gen_population(&config, 99).unwrap();
        let b = gen_population(&config, 99).unwrap();
        assert_eq!(a, b);
        let c = gen_population(&config, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn negative_branch_forces_zero_outcome() {
        let config = PopulationConfig {
            n: 10_000,
            p_x: 0.4,
            y_given_x: YDistribution::Uniform,
            support_max: 100.0,
            g: GFunction::LinearScaled,
        };
        let pop = gen_population(&config, 5).unwrap();
        assert!(pop.members().iter().all(|m| m.x || m.y_raw == 0.0));
    }

    #[test]
    fn single_member_negative_branch() {
        let pop = gen_population(&binary_config(1, 0.0, 0.5), 1).unwrap();
        assert_eq!(pop.members(), &[Member { x: false, y_raw: 0.0 }]);
        assert_eq!(pop.true_p_positive(), Some(0.0));
    }

    #[test]
    fn million_member_rate_lands_in_binomial_band() {
        // targets: P(x=1) = 0.092, P(y=1 | x=1) = 0.79, so P(y=1) near 0.073
        let pop = gen_population(&binary_config(1_000_000, 0.092, 0.79), 7).unwrap();
        let rate = pop.true_p_positive().unwrap();
        let sigma = (0.073_f64 * (1.0 - 0.073) / 1_000_000.0).sqrt();
        assert!(
            (rate - 0.073).abs() <= 3.0 * sigma,
            "rate {rate} outside 3-sigma band around 0.073"
        );
    }

    #[test]
    fn invalid_config_is_rejected() {
        assert!(gen_population(&binary_config(0, 0.5, 0.5), 1).is_err());
        assert!(gen_population(&binary_config(10, 1.5, 0.5), 1).is_err());
    }
}
