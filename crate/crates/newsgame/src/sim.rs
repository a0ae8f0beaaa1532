//! Monte Carlo simulation of the reporting game.
//!
//! States are drawn from the uniform prior, the communication subgame is
//! played out draw by draw, and election and welfare statistics are
//! accumulated. Draw `j` always consumes the two 32-bit words at positions
//! `2j` and `2j + 1` of the ChaCha8 stream for its seed, so results are a
//! pure function of `(params, config)`: shards of fixed size are summed
//! with compensated accumulators and merged in index order, which makes the
//! output bit-identical across thread counts.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::communication::{classify_outcome, classify_outcome_generic, lambda_range};
use crate::error::{Error, Result};
use crate::model::{voter_utility, Candidate, ModelParams, PolicyPair};
use crate::numeric::KahanSum;
use crate::policy::{equilibrium_policies, existence_condition};

/// Draws per work unit; fixed so the accumulation tree never depends on the
/// thread count.
const SHARD: u64 = 1 << 16;

/// What to simulate and how many times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub n_draws: u64,
    pub seed: u64,
    /// Proposals to hold fixed instead of the equilibrium pair.
    pub policy_override: Option<PolicyPair>,
    /// Pooled-report belief selecting a generic communication equilibrium;
    /// requires proposals with `tau_m < tau_v`.
    pub lambda_override: Option<f64>,
}

impl SimulationConfig {
    pub fn new(n_draws: u64, seed: u64) -> Self {
        SimulationConfig {
            n_draws,
            seed,
            policy_override: None,
            lambda_override: None,
        }
    }
}

/// Monte Carlo standard errors of the matching summary fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardErrors {
    pub mean_voter_payoff: f64,
    pub incumbent_win_share: f64,
    pub persuasion_frequency: f64,
    pub misreport_frequency: f64,
    pub mean_outlet_cost: f64,
}

/// Simulation output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub n_draws: u64,
    pub seed: u64,
    pub q: PolicyPair,
    pub lambda: Option<f64>,
    pub mean_voter_payoff: f64,
    pub incumbent_win_share: f64,
    pub persuasion_frequency: f64,
    pub misreport_frequency: f64,
    pub mean_outlet_cost: f64,
    pub se: StandardErrors,
}

#[derive(Default)]
struct ShardStats {
    payoff: KahanSum,
    payoff_sq: KahanSum,
    cost: KahanSum,
    cost_sq: KahanSum,
    wins: u64,
    persuaded: u64,
    misreported: u64,
}

impl ShardStats {
    fn merge(&mut self, other: &ShardStats) {
        self.payoff.merge(other.payoff);
        self.payoff_sq.merge(other.payoff_sq);
        self.cost.merge(other.cost);
        self.cost_sq.merge(other.cost_sq);
        self.wins += other.wins;
        self.persuaded += other.persuaded;
        self.misreported += other.misreported;
    }
}

/// Run the simulation described by `cfg` at parameters `p`.
pub fn simulate(p: &ModelParams, cfg: &SimulationConfig) -> Result<SimulationSummary> {
    p.validate()?;
    if !existence_condition(p) {
        return Err(Error::domain(format!(
            "no sequential equilibrium: state half-width phi={} too small",
            p.phi
        )));
    }
    if cfg.n_draws == 0 {
        return Err(Error::domain("n_draws must be positive"));
    }
    let q = cfg
        .policy_override
        .unwrap_or_else(|| equilibrium_policies(p).q);
    if let Some(lambda) = cfg.lambda_override {
        let (lo, hi) = lambda_range(p, q)?;
        if !(lambda >= lo && lambda <= hi) {
            return Err(Error::domain(format!(
                "lambda={lambda} outside admissible range [{lo}, {hi}]"
            )));
        }
    }
    let n = cfg.n_draws;
    let n_shards = n.div_ceil(SHARD);
    let shards: Vec<ShardStats> = (0..n_shards)
        .into_par_iter()
        .map(|shard| {
            let start = shard * SHARD;
            let len = SHARD.min(n - start);
            run_shard(p, q, cfg, start, len)
        })
        .collect();
    let mut total = ShardStats::default();
    for s in &shards {
        total.merge(s);
    }
    let nf = n as f64;
    let mean_payoff = total.payoff.value() / nf;
    let mean_cost = total.cost.value() / nf;
    let win_share = total.wins as f64 / nf;
    let persuasion = total.persuaded as f64 / nf;
    let misreport = total.misreported as f64 / nf;
    Ok(SimulationSummary {
        n_draws: n,
        seed: cfg.seed,
        q,
        lambda: cfg.lambda_override,
        mean_voter_payoff: mean_payoff,
        incumbent_win_share: win_share,
        persuasion_frequency: persuasion,
        misreport_frequency: misreport,
        mean_outlet_cost: mean_cost,
        se: StandardErrors {
            mean_voter_payoff: mean_se(total.payoff.value(), total.payoff_sq.value(), n),
            incumbent_win_share: proportion_se(win_share, n),
            persuasion_frequency: proportion_se(persuasion, n),
            misreport_frequency: proportion_se(misreport, n),
            mean_outlet_cost: mean_se(total.cost.value(), total.cost_sq.value(), n),
        },
    })
}

fn run_shard(p: &ModelParams, q: PolicyPair, cfg: &SimulationConfig, start: u64, len: u64) -> ShardStats {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // next_u64 consumes two 32-bit words, so draw j sits at word 2j.
    rng.set_word_pos(2 * start as u128);
    let mut stats = ShardStats::default();
    for _ in 0..len {
        let u = rng.next_u64();
        let unit = (u >> 11) as f64 * 2f64.powi(-53);
        let theta = -p.phi + 2.0 * p.phi * unit;
        let out = match cfg.lambda_override {
            Some(lambda) => {
                classify_outcome_generic(p, theta, q, lambda).expect("validated lambda")
            }
            None => classify_outcome(p, theta, q).expect("theta in support"),
        };
        let u_v = voter_utility(p, out.ballot, theta, q);
        stats.payoff.add(u_v);
        stats.payoff_sq.add(u_v * u_v);
        stats.cost.add(out.outlet_cost);
        stats.cost_sq.add(out.outlet_cost * out.outlet_cost);
        stats.wins += (out.ballot == Candidate::Incumbent) as u64;
        stats.persuaded += out.persuaded as u64;
        stats.misreported += out.misreported as u64;
    }
    stats
}

fn proportion_se(share: f64, n: u64) -> f64 {
    (share * (1.0 - share) / n as f64).sqrt()
}

fn mean_se(sum: f64, sum_sq: f64, n: u64) -> f64 {
    if n < 2 {
        return f64::NAN;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    (var / nf).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: f64) -> ModelParams {
        ModelParams::new(1.0, 0.0, 1.0, 1.0, 4.0, k).unwrap()
    }

    #[test]
    fn draws_follow_the_word_position_contract() {
        // Replay the stream by hand at an offset that crosses shards.
        let p = params(4.0);
        let cfg = SimulationConfig::new(SHARD + 17, 42);
        let got = simulate(&p, &cfg).unwrap();
        let q = equilibrium_policies(&p).q;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut acc = KahanSum::default();
        let mut acc_tail = KahanSum::default();
        for j in 0..cfg.n_draws {
            let u = rng.next_u64();
            let theta = -p.phi + 2.0 * p.phi * ((u >> 11) as f64 * 2f64.powi(-53));
            let out = classify_outcome(&p, theta, q).unwrap();
            let target = if j < SHARD { &mut acc } else { &mut acc_tail };
            target.add(voter_utility(&p, out.ballot, theta, q));
        }
        let mut total = KahanSum::default();
        total.merge(acc);
        total.merge(acc_tail);
        assert_eq!(got.mean_voter_payoff, total.value() / cfg.n_draws as f64);
    }

    #[test]
    fn identical_across_thread_counts() {
        let p = params(4.0);
        let cfg = SimulationConfig::new(300_000, 7);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| simulate(&p, &cfg).unwrap());
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| simulate(&p, &cfg).unwrap());
        assert_eq!(single, quad);
        // And across repeated runs in the ambient pool.
        assert_eq!(simulate(&p, &cfg).unwrap(), simulate(&p, &cfg).unwrap());
    }

    #[test]
    fn low_cost_run_is_truthful() {
        let p = params(0.1);
        let out = simulate(&p, &SimulationConfig::new(200_000, 1)).unwrap();
        assert_eq!(out.misreport_frequency, 0.0);
        assert_eq!(out.persuasion_frequency, 0.0);
        assert!((out.incumbent_win_share - 0.5).abs() <= 4.0 * out.se.incumbent_win_share);
        assert!((out.mean_voter_payoff - 0.0).abs() <= 4.0 * out.se.mean_voter_payoff);
    }

    #[test]
    fn high_cost_run_matches_closed_forms() {
        let p = params(4.0);
        let out = simulate(&p, &SimulationConfig::new(500_000, 2)).unwrap();
        let w = crate::welfare::welfare(&p);
        assert!(
            (out.persuasion_frequency - w.persuasion_rate).abs()
                <= 4.0 * out.se.persuasion_frequency
        );
        assert!(
            (out.incumbent_win_share - w.incumbent_win_prob).abs()
                <= 4.0 * out.se.incumbent_win_share
        );
        assert!((out.mean_voter_payoff - w.welfare).abs() <= 4.0 * out.se.mean_voter_payoff);
        // Expected misreporting cost: k integrated over the pooled interval.
        let expect_cost = p.k * (0.5f64).powi(3) / 3.0 / (2.0 * p.phi);
        assert!(
            (out.mean_outlet_cost - expect_cost).abs() <= 4.0 * out.se.mean_outlet_cost + 1e-12,
            "cost {} vs {}",
            out.mean_outlet_cost,
            expect_cost
        );
    }

    #[test]
    fn policy_override_aligned() {
        let p = params(1.0);
        let mut cfg = SimulationConfig::new(100_000, 3);
        cfg.policy_override = Some(PolicyPair::new(0.3, 0.3));
        let out = simulate(&p, &cfg).unwrap();
        assert_eq!(out.q, PolicyPair::new(0.3, 0.3));
        assert_eq!(out.misreport_frequency, 0.0);
        assert_eq!(out.mean_outlet_cost, 0.0);
        assert!((out.incumbent_win_share - 0.5).abs() <= 4.0 * out.se.incumbent_win_share);

        // Forcing both candidates to the voter bliss point recovers the
        // complete-information payoff, the upper endpoint of the payoff set.
        cfg.policy_override = Some(PolicyPair::new(1.0, 1.0));
        let out = simulate(&p, &cfg).unwrap();
        let top = crate::welfare::complete_info_welfare(&p);
        assert!((out.mean_voter_payoff - top).abs() <= 4.0 * out.se.mean_voter_payoff);
    }

    #[test]
    fn persuasion_requires_misreporting() {
        for k in [0.3, 1.0, 4.0] {
            let p = params(k);
            let out = simulate(&p, &SimulationConfig::new(100_000, 5)).unwrap();
            assert!(out.persuasion_frequency <= out.misreport_frequency);
            assert!((0.0..=1.0).contains(&out.persuasion_frequency));
            assert!((0.0..=1.0).contains(&out.misreport_frequency));
        }
    }

    #[test]
    fn lambda_override_spans_the_family() {
        let p = params(1.0);
        let q = PolicyPair::new(0.0, 1.0);
        let mut cfg = SimulationConfig::new(200_000, 4);
        cfg.policy_override = Some(q);
        // Outlet-preferred belief: persuasion near its closed-form rate.
        cfg.lambda_override = Some(1.0);
        let out = simulate(&p, &cfg).unwrap();
        assert!(
            (out.persuasion_frequency - 0.0625).abs() <= 4.0 * out.se.persuasion_frequency,
            "persuasion {}",
            out.persuasion_frequency
        );
        // Most skeptical belief: the pool sits past tau_v, nobody is swung.
        cfg.lambda_override = Some(1.5);
        let out = simulate(&p, &cfg).unwrap();
        assert_eq!(out.persuasion_frequency, 0.0);
        assert!(out.misreport_frequency > 0.0);
    }

    #[test]
    fn rejects_bad_configs() {
        let p = params(1.0);
        assert!(simulate(&p, &SimulationConfig::new(0, 1)).is_err());

        let mut cfg = SimulationConfig::new(10, 1);
        cfg.lambda_override = Some(1.0);
        // Equilibrium proposals at k=1 have tau_v < tau_m: no generic family.
        assert!(simulate(&p, &cfg).is_err());

        cfg.policy_override = Some(PolicyPair::new(0.0, 1.0));
        cfg.lambda_override = Some(2.0);
        // Out of the admissible belief range.
        assert!(simulate(&p, &cfg).is_err());

        let bad = ModelParams {
            phi: 1.0,
            ..params(1.0)
        };
        assert!(simulate(&bad, &SimulationConfig::new(10, 1)).is_err());
    }
}
