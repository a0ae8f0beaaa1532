//! The communication subgame: what the outlet reports at each state, what
//! the voter believes, and who wins.
//!
//! For any proposals `q` the outlet-preferred equilibrium has a single
//! pooled report `r_star` sent by an interval of states around the voter's
//! threshold `tau_v`, truthful reporting everywhere else, and skeptical
//! beliefs off the path. States in the pool buy the election of the
//! candidate the outlet endorses there; states strictly between `tau_v` and
//! the far pool edge are persuaded, i.e. the winner is not the one the voter
//! would pick under the true state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    conflict_set, endorsed_candidate, thresholds, Candidate, Interval, ModelParams, PolicyPair,
};

/// Which side of the outlet's threshold the voter's threshold falls on.
///
/// `VoterBelow` (`tau_v < tau_m`) arises when the challenger undercuts the
/// incumbent (`q_c < q_i`): the outlet belittles the state to drag conflict
/// states below the voter's bar. `VoterAbove` is the mirror image with
/// exaggerated reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoolCase {
    VoterBelow,
    VoterAbove,
    Aligned,
}

/// Pooled report and the open interval of states that send it.
///
/// In the `VoterBelow` case `pool_lo == r_star` and the pool reaches up to
/// `h(r_star)`; in `VoterAbove` the pool hangs below `r_star == pool_hi`.
/// When proposals are aligned the pool is empty and reporting is truthful;
/// `r_star` then carries the neutral value `tau_v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoolingStructure {
    pub case_tag: PoolCase,
    pub r_star: f64,
    pub pool_lo: f64,
    pub pool_hi: f64,
}

impl PoolingStructure {
    /// The open pooling interval (empty when aligned).
    pub fn interval(&self) -> Interval {
        if self.case_tag == PoolCase::Aligned {
            Interval::empty()
        } else {
            Interval::new(self.pool_lo, self.pool_hi)
        }
    }

    /// True when state `theta` sends the pooled report.
    pub fn pools(&self, theta: f64) -> bool {
        self.interval().contains_strict(theta)
    }
}

/// Outcome of one play of the communication subgame at state `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportingOutcome {
    pub theta: f64,
    pub report: f64,
    pub ballot: Candidate,
    pub misreported: bool,
    pub persuaded: bool,
    pub outlet_cost: f64,
}

/// Profitable-misreport bounds around a report `r`: the lowest and highest
/// states that could gain by sending `r`, each clamped at the outlet's own
/// indifference threshold.
///
/// Returns `(l, h)` with `l = max(r - sqrt(xi/k), tau_m)` and
/// `h = min(r + sqrt(xi/k), tau_m)`; the relevant bound depends on which
/// side of `tau_m` the pool sits.
pub fn misreporting_bounds(p: &ModelParams, q: PolicyPair, r: f64) -> (f64, f64) {
    let s = p.misreport_radius();
    let tau_m = thresholds(p, q).tau_m;
    ((r - s).max(tau_m), (r + s).min(tau_m))
}

/// Pooled report and pooling interval of the outlet-preferred equilibrium
/// at proposals `q`.
pub fn pooling_structure(p: &ModelParams, q: PolicyPair) -> PoolingStructure {
    let t = thresholds(p, q);
    let s = p.misreport_radius();
    if t.tau_v < t.tau_m {
        // Belittling case: pool just below tau_v, reaching up toward tau_m.
        let r_star = (t.tau_v - 0.5 * s).max(2.0 * t.tau_v - t.tau_m);
        let (_, h) = misreporting_bounds(p, q, r_star);
        PoolingStructure {
            case_tag: PoolCase::VoterBelow,
            r_star,
            pool_lo: r_star,
            pool_hi: h,
        }
    } else if t.tau_v > t.tau_m {
        // Exaggerating case, the mirror image.
        let r_star = (t.tau_v + 0.5 * s).min(2.0 * t.tau_v - t.tau_m);
        let (l, _) = misreporting_bounds(p, q, r_star);
        PoolingStructure {
            case_tag: PoolCase::VoterAbove,
            r_star,
            pool_lo: l,
            pool_hi: r_star,
        }
    } else {
        PoolingStructure {
            case_tag: PoolCase::Aligned,
            r_star: t.tau_v,
            pool_lo: t.tau_v,
            pool_hi: t.tau_v,
        }
    }
}

/// Equilibrium report of the outlet at state `theta`: the pooled report for
/// states strictly inside the pooling interval, the truth otherwise.
///
/// Errors if `theta` lies outside the state support `[-phi, phi]`.
pub fn reporting_rule(p: &ModelParams, theta: f64, q: PolicyPair) -> Result<f64> {
    check_state(p, theta)?;
    let ps = pooling_structure(p, q);
    Ok(if ps.pools(theta) { ps.r_star } else { theta })
}

/// The winner the voter elects after reading report `r`.
///
/// At the pooled report the voter's estimate sits exactly on `tau_v`, and
/// her indifference is resolved in the outlet's favor. Reports strictly
/// inside the pooling gap are off the equilibrium path and are read with
/// maximal skepticism: they elect the opponent of the candidate the pool is
/// built to help, which is what makes paying the pooled report's cost worth
/// it. Every other report is taken at face value (`Incumbent` iff
/// `r > tau_v`).
pub fn ballot(p: &ModelParams, r: f64, q: PolicyPair) -> Candidate {
    let ps = pooling_structure(p, q);
    let tau_v = thresholds(p, q).tau_v;
    match ps.case_tag {
        PoolCase::Aligned => face_value(r, tau_v),
        PoolCase::VoterBelow => {
            if r == ps.r_star {
                Candidate::Challenger
            } else if ps.interval().contains_strict(r) {
                Candidate::Incumbent
            } else {
                face_value(r, tau_v)
            }
        }
        PoolCase::VoterAbove => {
            if r == ps.r_star {
                Candidate::Incumbent
            } else if ps.interval().contains_strict(r) {
                Candidate::Challenger
            } else {
                face_value(r, tau_v)
            }
        }
    }
}

fn face_value(r: f64, tau_v: f64) -> Candidate {
    if r > tau_v {
        Candidate::Incumbent
    } else {
        Candidate::Challenger
    }
}

/// States the pooled report flips relative to complete-information voting:
/// the sliver between `tau_v` and the far edge of the pool.
pub fn persuasion_region(p: &ModelParams, q: PolicyPair) -> Interval {
    let ps = pooling_structure(p, q);
    let tau_v = thresholds(p, q).tau_v;
    match ps.case_tag {
        PoolCase::Aligned => Interval::empty(),
        PoolCase::VoterBelow => Interval::new(tau_v, ps.pool_hi),
        PoolCase::VoterAbove => Interval::new(ps.pool_lo, tau_v),
    }
}

/// Play the communication subgame at state `theta` and record everything
/// the simulator and welfare accounting need.
pub fn classify_outcome(p: &ModelParams, theta: f64, q: PolicyPair) -> Result<ReportingOutcome> {
    let report = reporting_rule(p, theta, q)?;
    Ok(outcome_from_report(p, theta, report, ballot(p, report, q), q))
}

fn outcome_from_report(
    p: &ModelParams,
    theta: f64,
    report: f64,
    b: Candidate,
    q: PolicyPair,
) -> ReportingOutcome {
    let endorsed = endorsed_candidate(p, theta, q);
    let persuaded = conflict_set(p, q).contains_strict(theta) && b == endorsed;
    ReportingOutcome {
        theta,
        report,
        ballot: b,
        misreported: report != theta,
        persuaded,
        outlet_cost: p.k * (report - theta) * (report - theta),
    }
}

/// Admissible range of the pooled-report belief `lambda` for the generic
/// equilibrium family: `[tau_v, tau_v + sqrt(xi/k)/2]`.
///
/// Only the exaggerating orientation (`tau_m < tau_v`) admits this family
/// as stated; mirror inputs (negate states and reports, swap candidates)
/// to reach the other one.
pub fn lambda_range(p: &ModelParams, q: PolicyPair) -> Result<(f64, f64)> {
    let t = thresholds(p, q);
    if t.tau_m >= t.tau_v {
        return Err(Error::domain(format!(
            "generic equilibria require tau_m < tau_v, got tau_m={} tau_v={}",
            t.tau_m, t.tau_v
        )));
    }
    Ok((t.tau_v, t.tau_v + 0.5 * p.misreport_radius()))
}

/// Pooling structure of the generic equilibrium indexed by belief `lambda`.
///
/// The pooled report is `r_hat = min(lambda + sqrt(xi/k)/2, 2 lambda -
/// tau_m)` and the pool is the open interval `(l(r_hat), r_hat)`, whose
/// mean is exactly `lambda`. At `lambda = tau_v` this collapses to the
/// outlet-preferred structure.
pub fn generic_pooling(p: &ModelParams, q: PolicyPair, lambda: f64) -> Result<PoolingStructure> {
    let (lo, hi) = lambda_range(p, q)?;
    if !(lambda >= lo && lambda <= hi) {
        return Err(Error::domain(format!(
            "lambda={lambda} outside admissible range [{lo}, {hi}]"
        )));
    }
    let t = thresholds(p, q);
    let s = p.misreport_radius();
    let r_hat = (lambda + 0.5 * s).min(2.0 * lambda - t.tau_m);
    let (l, _) = misreporting_bounds(p, q, r_hat);
    Ok(PoolingStructure {
        case_tag: PoolCase::VoterAbove,
        r_star: r_hat,
        pool_lo: l,
        pool_hi: r_hat,
    })
}

/// Report of state `theta` under the generic equilibrium with belief
/// `lambda`.
pub fn generic_rule(p: &ModelParams, theta: f64, q: PolicyPair, lambda: f64) -> Result<f64> {
    check_state(p, theta)?;
    let ps = generic_pooling(p, q, lambda)?;
    Ok(if ps.pools(theta) { ps.r_star } else { theta })
}

/// Ballot under the generic equilibrium with belief `lambda`: the pooled
/// report elects the incumbent (the voter's estimate there is `lambda >=
/// tau_v`), gap reports elect the challenger, everything else is taken at
/// face value.
pub fn generic_ballot(
    p: &ModelParams,
    r: f64,
    q: PolicyPair,
    lambda: f64,
) -> Result<Candidate> {
    let ps = generic_pooling(p, q, lambda)?;
    let tau_v = thresholds(p, q).tau_v;
    Ok(if r == ps.r_star {
        Candidate::Incumbent
    } else if ps.interval().contains_strict(r) {
        Candidate::Challenger
    } else {
        face_value(r, tau_v)
    })
}

/// `classify_outcome` under the generic equilibrium with belief `lambda`.
pub fn classify_outcome_generic(
    p: &ModelParams,
    theta: f64,
    q: PolicyPair,
    lambda: f64,
) -> Result<ReportingOutcome> {
    let report = generic_rule(p, theta, q, lambda)?;
    let b = generic_ballot(p, report, q, lambda)?;
    Ok(outcome_from_report(p, theta, report, b, q))
}

fn check_state(p: &ModelParams, theta: f64) -> Result<()> {
    if !(theta >= -p.phi && theta <= p.phi) {
        return Err(Error::domain(format!(
            "state theta={theta} outside support [{}, {}]",
            -p.phi, p.phi
        )));
    }
    Ok(())
}
