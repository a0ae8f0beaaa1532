//! Sequential policy-making on top of the communication subgame.
//!
//! The incumbent commits to `q_i`, the challenger responds with `q_c`, and
//! the election is then decided by the reporting equilibrium. The
//! challenger's payoff is summarized by a single winning threshold: it wins
//! at states below `challenger_threshold(q)`, so candidates effectively play
//! a zero-sum game in that threshold. Equilibrium proposals fall into three
//! cost regimes separated by `k_bar = xi / (gamma^2 (phi_v - phi_m)^4)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::communication::{pooling_structure, PoolingStructure};
use crate::error::{Error, Result};
use crate::model::{thresholds, ModelParams, PolicyPair};

/// Misreporting-cost regime of the equilibrium proposals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `k <= k_bar / 4`: both candidates sit at the outlet's bliss point.
    Low,
    /// `k_bar / 4 < k <= k_bar`: the incumbent advances, the challenger stays.
    Mid,
    /// `k > k_bar`: both advance toward the voter, incumbent in the lead.
    High,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Low => "low",
            Regime::Mid => "mid",
            Regime::High => "high",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(Regime::Low),
            "mid" => Ok(Regime::Mid),
            "high" => Ok(Regime::High),
            other => Err(Error::config(format!("unknown regime {other:?}"))),
        }
    }
}

/// Equilibrium proposals plus the quantities that locate them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumProfile {
    pub q: PolicyPair,
    pub regime: Regime,
    pub k_bar: f64,
    pub eta: f64,
    pub pooling: PoolingStructure,
}

/// Cost threshold `k_bar = xi / (gamma^2 (phi_v - phi_m)^4)` separating the
/// mid and high regimes; `k_bar / 4` separates low from mid.
pub fn k_bar(p: &ModelParams) -> f64 {
    let d = p.bliss_gap();
    p.xi / (p.gamma * p.gamma * d * d * d * d)
}

/// Undercutting margin `eta(k) = sqrt(xi/k) / (4 gamma (phi_v - phi_m))`:
/// the distance by which a trailing challenger shades its proposal below the
/// incumbent's while keeping full persuasion.
pub fn eta(p: &ModelParams) -> f64 {
    p.misreport_radius() / (4.0 * p.gamma * p.bliss_gap())
}

/// Winning threshold of the challenger at proposals `q`: it wins exactly at
/// states below this value. Zero for aligned proposals; otherwise the near
/// edge of the pooling interval, in closed form
/// `min(tau_v + sqrt(xi/k)/2, tau_m)` when the challenger undercuts and
/// `max(tau_v - sqrt(xi/k)/2, tau_m)` when it overbids.
pub fn challenger_threshold(p: &ModelParams, q: PolicyPair) -> f64 {
    let t = thresholds(p, q);
    let half = 0.5 * p.misreport_radius();
    if q.q_c < q.q_i {
        (t.tau_v + half).min(t.tau_m)
    } else if q.q_c > q.q_i {
        (t.tau_v - half).max(t.tau_m)
    } else {
        0.0
    }
}

/// Probability that the challenger wins at proposals `q` under the uniform
/// state distribution.
pub fn challenger_win_prob(p: &ModelParams, q: PolicyPair) -> f64 {
    ((challenger_threshold(p, q) + p.phi) / (2.0 * p.phi)).clamp(0.0, 1.0)
}

/// Incumbent's value of proposing `q_i` against a best-responding
/// challenger: minus the resulting winning threshold.
pub fn incumbent_value(p: &ModelParams, q_i: f64) -> Result<f64> {
    let q_c = best_response(p, q_i)?;
    Ok(-challenger_threshold(p, PolicyPair::new(q_i, q_c)))
}

/// Challenger's best response restricted to proposals weakly below `q_i`.
pub fn br_left(p: &ModelParams, q_i: f64) -> f64 {
    let e = eta(p);
    if q_i <= p.phi_m {
        q_i
    } else if q_i <= p.phi_m + e {
        p.phi_m
    } else if q_i <= p.phi_v + e {
        q_i - e
    } else {
        p.phi_v
    }
}

/// Challenger's best response restricted to proposals weakly above `q_i`:
/// leapfrog to `phi_v` when the incumbent lags far enough, otherwise mimic.
pub fn br_right(p: &ModelParams, q_i: f64) -> f64 {
    let cutoff = p.phi_v - (p.misreport_radius() / (2.0 * p.gamma)).sqrt();
    if q_i < cutoff {
        p.phi_v
    } else {
        q_i
    }
}

/// Challenger's best response to `q_i` in `[phi_m, phi_v]`.
///
/// For `k > k_bar` the challenger leapfrogs to `phi_v` against laggards and
/// undercuts by `eta` otherwise; for cheaper misreporting a middle band
/// parks at `phi_m` instead. Branch boundaries resolve toward the proposal
/// closer to `phi_m`.
pub fn best_response(p: &ModelParams, q_i: f64) -> Result<f64> {
    if !(q_i >= p.phi_m && q_i <= p.phi_v) {
        return Err(Error::domain(format!(
            "best_response requires q_i in [{}, {}], got {q_i}",
            p.phi_m, p.phi_v
        )));
    }
    let e = eta(p);
    let kb = k_bar(p);
    if p.k > kb {
        let q_prime = p.phi_v + e - (p.xi / (p.gamma * p.gamma * p.k)).powf(0.25);
        Ok(if q_i < q_prime { p.phi_v } else { q_i - e })
    } else {
        let q_mid = 0.5 * (p.phi_v + p.phi_m) - e;
        let q_high = p.phi_m + e;
        Ok(if q_i < q_mid {
            p.phi_v
        } else if q_i <= q_high {
            p.phi_m
        } else {
            q_i - e
        })
    }
}

/// Subgame-perfect equilibrium proposals and their regime.
pub fn equilibrium_policies(p: &ModelParams) -> EquilibriumProfile {
    let kb = k_bar(p);
    let e = eta(p);
    let (q, regime) = if p.k > kb {
        let root = (p.xi / (p.gamma * p.gamma * p.k)).powf(0.25);
        (
            PolicyPair::new(p.phi_v + e - root, p.phi_v - root),
            Regime::High,
        )
    } else if p.k > 0.25 * kb {
        (
            PolicyPair::new(0.5 * (p.phi_v + p.phi_m) - e, p.phi_m),
            Regime::Mid,
        )
    } else {
        (PolicyPair::new(p.phi_m, p.phi_m), Regime::Low)
    };
    EquilibriumProfile {
        q,
        regime,
        k_bar: kb,
        eta: e,
        pooling: pooling_structure(p, q),
    }
}

/// Whether the state space is wide enough for the sequential equilibrium:
/// `phi >= min(gamma (phi_v-phi_m)^2 + sqrt(xi/k)/2, 3 gamma (phi_v-phi_m)^2)`.
///
/// Runs on raw parameters so the boundary can be explored below the
/// influential-news bound.
pub fn existence_condition(p: &ModelParams) -> bool {
    let d2 = p.gamma * p.bliss_gap() * p.bliss_gap();
    p.phi >= (d2 + 0.5 * p.misreport_radius()).min(3.0 * d2)
}

/// Grid over `[phi_m, phi_v]` with resolution `step` given as a fraction of
/// the span; includes both endpoints.
pub(crate) fn policy_grid(p: &ModelParams, step: f64) -> Vec<f64> {
    let n = (1.0 / step).round().max(1.0) as usize + 1;
    let span = p.bliss_gap();
    (0..n)
        .map(|j| p.phi_m + span * j as f64 / (n - 1) as f64)
        .collect()
}

/// Check that `(phi_m, phi_m)` survives simultaneous play: no grid proposal
/// strictly improves either candidate's winning threshold against an
/// opponent at `phi_m`. Holds exactly for `k <= k_bar / 4`.
pub fn simultaneous_convergence_check(p: &ModelParams, step: f64) -> bool {
    let slack = 1e-9;
    let grid = policy_grid(p, step);
    let challenger_ok = grid
        .iter()
        .all(|&q_c| challenger_threshold(p, PolicyPair::new(p.phi_m, q_c)) <= slack);
    let incumbent_ok = grid
        .iter()
        .all(|&q_i| challenger_threshold(p, PolicyPair::new(q_i, p.phi_m)) >= -slack);
    challenger_ok && incumbent_ok
}

/// Scan the policy grid for a simultaneous-play pure equilibrium; returns
/// `true` when none exists. Requires `k >= k_bar` (the regime where pure
/// equilibria provably fail).
pub fn no_pure_equilibrium_check(p: &ModelParams, step: f64) -> Result<bool> {
    let kb = k_bar(p);
    if p.k < kb {
        return Err(Error::domain(format!(
            "no_pure_equilibrium_check requires k >= k_bar = {kb}, got k={}",
            p.k
        )));
    }
    let grid = policy_grid(p, step);
    let n = grid.len();
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&q_i| {
            grid.iter()
                .map(|&q_c| challenger_threshold(p, PolicyPair::new(q_i, q_c)))
                .collect()
        })
        .collect();
    let row_max: Vec<f64> = rows
        .iter()
        .map(|row| row.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let mut col_min = vec![f64::INFINITY; n];
    for row in &rows {
        for (b, &t) in row.iter().enumerate() {
            if t < col_min[b] {
                col_min[b] = t;
            }
        }
    }
    let tol = 1e-9;
    for a in 0..n {
        for b in 0..n {
            let t = rows[a][b];
            if t >= row_max[a] - tol && t <= col_min[b] + tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
