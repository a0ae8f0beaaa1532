//! Model primitives: players, payoffs, and the threshold states that drive
//! everything downstream.
//!
//! A state `theta` is uniform on `[-phi, phi]`. Candidates have fixed policy
//! proposals `q = (q_i, q_c)`; the voter's and outlet's policy bliss points
//! are `phi_v` and `phi_m`. A media outlet observes `theta`, publishes a
//! report `r` at quadratic cost `k (r - theta)^2`, and collects `xi` whenever
//! the elected candidate matches its endorsement. The voter breaks the
//! election in favor of the incumbent exactly when her posterior state
//! estimate exceeds `tau_v(q)`; the outlet's endorsement switches at
//! `tau_m(q)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two contestants of the election stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Candidate {
    Incumbent,
    Challenger,
}

/// Policy proposals `(q_i, q_c)` for incumbent and challenger.
///
/// Equilibrium-path proposals live in `[phi_m, phi_v]`; arbitrary pairs are
/// accepted so deviation scans can explore off-path play.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolicyPair {
    pub q_i: f64,
    pub q_c: f64,
}

impl PolicyPair {
    pub fn new(q_i: f64, q_c: f64) -> Self {
        PolicyPair { q_i, q_c }
    }

    /// True when both candidates propose the same policy.
    pub fn aligned(&self) -> bool {
        self.q_i == self.q_c
    }
}

/// Indifference thresholds of the voter (`tau_v`) and the outlet (`tau_m`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub tau_v: f64,
    pub tau_m: f64,
}

/// A real interval; `lo > hi` encodes the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn empty() -> Self {
        Interval { lo: 0.0, hi: -1.0 }
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn len(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.hi - self.lo
        }
    }

    /// Strict interior membership; endpoints are excluded.
    pub fn contains_strict(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

/// Full parameterization of the game.
///
/// `phi_v`, `phi_m`: voter and outlet policy bliss points (`phi_m < phi_v`);
/// `gamma`: weight of policy utility relative to the state; `xi`: endorsement
/// payoff of the outlet; `phi`: half-width of the uniform state support;
/// `k`: misreporting cost weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub phi_v: f64,
    pub phi_m: f64,
    pub gamma: f64,
    pub xi: f64,
    pub phi: f64,
    pub k: f64,
}

/// `ModelParams` without the misreporting cost, for analyses that treat `k`
/// as the object of choice (regulation of the media cost environment).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Primitives {
    pub phi_v: f64,
    pub phi_m: f64,
    pub gamma: f64,
    pub xi: f64,
    pub phi: f64,
}

impl Primitives {
    /// Attach a misreporting cost, yielding validated `ModelParams`.
    pub fn with_cost(&self, k: f64) -> Result<ModelParams> {
        let p = ModelParams {
            phi_v: self.phi_v,
            phi_m: self.phi_m,
            gamma: self.gamma,
            xi: self.xi,
            phi: self.phi,
            k,
        };
        p.validate()?;
        Ok(p)
    }
}

impl ModelParams {
    pub fn new(phi_v: f64, phi_m: f64, gamma: f64, xi: f64, phi: f64, k: f64) -> Result<Self> {
        let p = ModelParams {
            phi_v,
            phi_m,
            gamma,
            xi,
            phi,
            k,
        };
        p.validate()?;
        Ok(p)
    }

    /// Check every model invariant; the error names the first violated one.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("phi_v", self.phi_v),
            ("phi_m", self.phi_m),
            ("gamma", self.gamma),
            ("xi", self.xi),
            ("phi", self.phi),
            ("k", self.k),
        ] {
            if !v.is_finite() {
                return Err(Error::domain(format!("{name} must be finite, got {v}")));
            }
        }
        if self.phi_m >= self.phi_v {
            return Err(Error::domain(format!(
                "bliss ordering requires phi_m < phi_v, got phi_m={} phi_v={}",
                self.phi_m, self.phi_v
            )));
        }
        if self.gamma <= 0.0 {
            return Err(Error::domain(format!("gamma must be positive, got {}", self.gamma)));
        }
        if self.xi <= 0.0 {
            return Err(Error::domain(format!("xi must be positive, got {}", self.xi)));
        }
        if self.phi <= 0.0 {
            return Err(Error::domain(format!("phi must be positive, got {}", self.phi)));
        }
        if self.k <= 0.0 {
            return Err(Error::domain(format!("k must be positive, got {}", self.k)));
        }
        let bound = self.influential_bound();
        if self.phi < bound {
            return Err(Error::domain(format!(
                "influential-news bound requires phi >= 3*gamma*(phi_v-phi_m)^2 = {bound}, got phi={}",
                self.phi
            )));
        }
        Ok(())
    }

    /// Least state half-width that keeps the outlet influential:
    /// `3 gamma (phi_v - phi_m)^2`.
    pub fn influential_bound(&self) -> f64 {
        3.0 * self.gamma * self.bliss_gap() * self.bliss_gap()
    }

    /// Distance `phi_v - phi_m` between voter and outlet bliss points.
    pub fn bliss_gap(&self) -> f64 {
        self.phi_v - self.phi_m
    }

    /// Break-even misreport distance `sqrt(xi / k)`: lies larger than this
    /// cost more than the endorsement payoff they can buy.
    pub fn misreport_radius(&self) -> f64 {
        (self.xi / self.k).sqrt()
    }

    /// Drop the misreporting cost, keeping the other five primitives.
    pub fn primitives(&self) -> Primitives {
        Primitives {
            phi_v: self.phi_v,
            phi_m: self.phi_m,
            gamma: self.gamma,
            xi: self.xi,
            phi: self.phi,
        }
    }
}

/// Indifference thresholds at proposals `q`.
///
/// `tau_v = gamma (2 phi_v - q_c - q_i)(q_c - q_i)` and likewise for the
/// outlet with `phi_m`. The voter strictly prefers the incumbent at states
/// above `tau_v`; the outlet endorses the incumbent at states above `tau_m`.
pub fn thresholds(p: &ModelParams, q: PolicyPair) -> Thresholds {
    let diff = q.q_c - q.q_i;
    Thresholds {
        tau_v: p.gamma * (2.0 * p.phi_v - q.q_c - q.q_i) * diff,
        tau_m: p.gamma * (2.0 * p.phi_m - q.q_c - q.q_i) * diff,
    }
}

/// Voter payoff from electing `b` at state `theta` under proposals `q`:
/// `-gamma (phi_v - q_b)^2 + theta` if the incumbent wins, else
/// `-gamma (phi_v - q_c)^2`.
pub fn voter_utility(p: &ModelParams, b: Candidate, theta: f64, q: PolicyPair) -> f64 {
    match b {
        Candidate::Incumbent => {
            let d = p.phi_v - q.q_i;
            -p.gamma * d * d + theta
        }
        Candidate::Challenger => {
            let d = p.phi_v - q.q_c;
            -p.gamma * d * d
        }
    }
}

/// Outlet payoff from publishing `r` at state `theta` when `b` wins:
/// the endorsement payoff `xi` if `b` matches the outlet's endorsement,
/// minus the misreporting cost `k (r - theta)^2`.
pub fn outlet_utility(p: &ModelParams, r: f64, b: Candidate, theta: f64, q: PolicyPair) -> f64 {
    let gain = if b == endorsed_candidate(p, theta, q) {
        p.xi
    } else {
        0.0
    };
    gain - p.k * (r - theta) * (r - theta)
}

/// The candidate the outlet endorses at state `theta`: the incumbent for
/// `theta > tau_m(q)`, the challenger otherwise (ties go to the challenger).
pub fn endorsed_candidate(p: &ModelParams, theta: f64, q: PolicyPair) -> Candidate {
    if theta > thresholds(p, q).tau_m {
        Candidate::Incumbent
    } else {
        Candidate::Challenger
    }
}

/// Open interval of states where voter and outlet disagree about the winner:
/// the states strictly between `tau_v(q)` and `tau_m(q)`. Empty when the
/// proposals coincide.
pub fn conflict_set(p: &ModelParams, q: PolicyPair) -> Interval {
    let t = thresholds(p, q);
    if t.tau_v == t.tau_m {
        Interval::empty()
    } else {
        Interval::new(t.tau_v.min(t.tau_m), t.tau_v.max(t.tau_m))
    }
}

/// Largest misreporting cost at which the outlet can still swing every
/// conflict state: `xi / (4 (tau_v - tau_m)^2)`, or `+inf` when the
/// proposals are aligned and there is no conflict to begin with.
pub fn full_persuasion_threshold(p: &ModelParams, q: PolicyPair) -> f64 {
    let t = thresholds(p, q);
    let d = t.tau_v - t.tau_m;
    if d == 0.0 {
        f64::INFINITY
    } else {
        p.xi / (4.0 * d * d)
    }
}

/// Whether the proposal gap is small enough for full persuasion at cost `k`:
/// `(q_c - q_i)^2 <= xi / (16 gamma^2 (phi_m - phi_v)^2 k)`.
pub fn full_persuasion_condition(p: &ModelParams, q: PolicyPair) -> bool {
    let gap = q.q_c - q.q_i;
    let d = p.phi_m - p.phi_v;
    gap * gap <= p.xi / (16.0 * p.gamma * p.gamma * d * d * p.k)
}
