//! Voter welfare on the equilibrium path and the comparative statics of the
//! misreporting cost, read as a regulation instrument.
//!
//! All quantities are evaluated at the equilibrium proposals `q*(k)`. Welfare
//! is flat at `-gamma (phi_v - phi_m)^2 + phi/4` throughout the low regime
//! and then strictly increasing in `k` toward the complete-information level
//! `phi/4`; the persuasion rate `chi` peaks at `k_bar`; the incumbency
//! advantage `1 - iota` vanishes only at the regime edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{thresholds, Interval, ModelParams, Primitives};
use crate::numeric::{bisect_root, golden_section_max, golden_section_min, log_grid};
use crate::policy::{equilibrium_policies, k_bar};

/// Upper bound of the cost searches and limit checks.
pub const K_MAX: f64 = 1e8;

/// Width tolerance of the one-dimensional refinement searches over `k`.
const SEARCH_TOL: f64 = 1e-6;

/// Equilibrium-path welfare statistics at one misreporting cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelfareReport {
    pub k: f64,
    /// Expected voter payoff on the equilibrium path.
    pub welfare: f64,
    /// Probability `chi` that the outlet swings the election.
    pub persuasion_rate: f64,
    /// Probability `iota` that the incumbent retains office.
    pub incumbent_win_prob: f64,
    /// Range of voter payoffs across the equilibrium family: the
    /// outlet-preferred equilibrium gives the lower endpoint, the most
    /// skeptical one restores the complete-information payoff `phi/4`.
    pub payoff_set: Interval,
}

/// Welfare report at the equilibrium proposals for `p`.
pub fn welfare(p: &ModelParams) -> WelfareReport {
    welfare_with(p, false)
}

/// Welfare report with an optional accounting flag that subtracts the
/// outlet's endorsement payoff `xi` from `welfare` (treating it as a
/// transfer burnt rather than enjoyed). The payoff-set endpoints always
/// refer to the gross voter payoff.
pub fn welfare_with(p: &ModelParams, subtract_gain: bool) -> WelfareReport {
    let prof = equilibrium_policies(p);
    let t = thresholds(p, prof.q);
    let two_phi = 2.0 * p.phi;
    let d_c = p.phi_v - prof.q.q_c;
    let d_i = p.phi_v - prof.q.q_i;
    let gross = (t.tau_m + p.phi) / two_phi * (-p.gamma * d_c * d_c)
        + (p.phi - t.tau_m) / two_phi * (-p.gamma * d_i * d_i + 0.5 * (p.phi + t.tau_m));
    WelfareReport {
        k: p.k,
        welfare: if subtract_gain { gross - p.xi } else { gross },
        persuasion_rate: (t.tau_m - t.tau_v) / two_phi,
        incumbent_win_prob: (p.phi - t.tau_m) / two_phi,
        payoff_set: Interval::new(gross, complete_info_welfare(p)),
    }
}

/// Voter welfare under complete information (or no media): the better
/// candidate always wins and both propose `phi_v`, leaving `phi/4`.
pub fn complete_info_welfare(p: &ModelParams) -> f64 {
    0.25 * p.phi
}

/// Persuasion rate `chi(k)` on the equilibrium path.
pub fn persuasion_rate(p: &ModelParams) -> f64 {
    welfare(p).persuasion_rate
}

/// Incumbent win probability `iota(k)` on the equilibrium path.
pub fn incumbent_win_prob(p: &ModelParams) -> f64 {
    welfare(p).incumbent_win_prob
}

fn attach(prim: &Primitives, k: f64) -> ModelParams {
    // Callers pre-validate the primitives; only k varies inside searches.
    ModelParams {
        phi_v: prim.phi_v,
        phi_m: prim.phi_m,
        gamma: prim.gamma,
        xi: prim.xi,
        phi: prim.phi,
        k,
    }
}

/// `iota(k)` as a function of the cost alone, for fixed primitives.
pub fn iota_at(prim: &Primitives, k: f64) -> Result<f64> {
    prim.with_cost(k)?;
    Ok(incumbent_win_prob(&attach(prim, k)))
}

/// Compare the media equilibrium against a no-media world (welfare 0 after
/// normalization). Returns the baseline and, when low-cost welfare is
/// negative, the unique cost `k'` where welfare crosses zero; the voter
/// would rather have no media at all for any `k` below it.
pub fn no_media_comparison(p: &ModelParams) -> Result<(f64, Option<f64>)> {
    p.validate()?;
    let baseline = 0.0;
    let prim = p.primitives();
    let d = p.bliss_gap();
    let low = -p.gamma * d * d + 0.25 * p.phi;
    if low >= 0.0 {
        return Ok((baseline, None));
    }
    let kb = k_bar(p);
    let f = |k: f64| welfare(&attach(&prim, k)).welfare;
    let lo = 0.25 * kb;
    let mut hi = kb;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        if hi > K_MAX {
            return Err(Error::search(format!(
                "welfare never crosses zero below K_MAX={K_MAX}"
            )));
        }
    }
    let root = bisect_root(f, lo, hi)?;
    Ok((baseline, Some(root)))
}

/// Cost an incumbent-captured regulator would pick: the largest `k` at
/// which the incumbent still wins with probability exactly one half,
/// `k_bar / 4`. Also spot-checks on a log grid that every larger finite
/// cost leaves `iota` strictly below one half.
pub fn incumbent_regulation(prim: &Primitives) -> Result<(f64, f64)> {
    let p = prim.with_cost(1.0)?;
    let kb4 = 0.25 * k_bar(&p);
    for k in log_grid(kb4 * (1.0 + 1e-6), K_MAX, 200) {
        let iota = incumbent_win_prob(&attach(prim, k));
        if iota >= 0.5 {
            return Err(Error::search(format!(
                "iota(k)={iota} not below 1/2 at k={k}"
            )));
        }
    }
    Ok((kb4, 0.5))
}

/// Cost a challenger-captured regulator would pick: the interior minimizer
/// of `iota(k)`, which always lies strictly above `k_bar`.
pub fn challenger_regulation(prim: &Primitives) -> Result<(f64, f64)> {
    let p = prim.with_cost(1.0)?;
    let kb = k_bar(&p);
    let iota = |k: f64| incumbent_win_prob(&attach(prim, k));
    let mut grid = log_grid(0.25 * kb, K_MAX, 600);
    grid.push(kb);
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best = 0usize;
    for (j, &k) in grid.iter().enumerate() {
        if iota(k) < iota(grid[best]) {
            best = j;
        }
    }
    if best + 1 >= grid.len() {
        return Err(Error::search(format!(
            "iota minimizer pinned at the K_MAX={K_MAX} scan boundary"
        )));
    }
    let a = grid[best.saturating_sub(1)];
    let b = grid[best + 1];
    let (k_star, iota_star) = golden_section_min(iota, a, b, SEARCH_TOL);
    let (k_star, iota_star) = if iota_star < iota(grid[best]) {
        (k_star, iota_star)
    } else {
        (grid[best], iota(grid[best]))
    };
    if k_star <= kb {
        return Err(Error::search(format!(
            "iota minimizer k={k_star} unexpectedly at or below k_bar={kb}"
        )));
    }
    Ok((k_star, iota_star))
}

/// Parameters of the reduced-form institutional adjustment `nu(k) = y + x *
/// normal_pdf(k; k_v, sigma)` added to `iota` when ranking costs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuExtensionParams {
    pub y: f64,
    pub x: f64,
    pub k_v: f64,
    pub sigma: f64,
}

impl NuExtensionParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("y", self.y), ("x", self.x), ("k_v", self.k_v), ("sigma", self.sigma)] {
            if !v.is_finite() {
                return Err(Error::domain(format!("nu parameter {name} must be finite, got {v}")));
            }
        }
        if self.sigma <= 0.0 {
            return Err(Error::domain(format!(
                "nu parameter sigma must be positive, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

/// The adjustment `nu(k)` itself.
pub fn nu_value(nu: &NuExtensionParams, k: f64) -> f64 {
    let z = (k - nu.k_v) / nu.sigma;
    nu.y + nu.x * (-0.5 * z * z).exp() / (nu.sigma * (2.0 * std::f64::consts::PI).sqrt())
}

/// Adjusted incumbent win probability `iota_hat(k) = iota(k) + nu(k)`.
pub fn iota_hat_at(prim: &Primitives, nu: &NuExtensionParams, k: f64) -> Result<f64> {
    Ok(iota_at(prim, k)? + nu_value(nu, k))
}

/// Maximizer of `iota_hat` over costs: where an incumbent-captured
/// regulator lands once institutional adjustments tilt the ranking. Scans a
/// log-dense grid (errors if any scanned `iota_hat` leaves `[0, 1]`) and
/// refines the best bracket.
pub fn nu_extension_optimum(prim: &Primitives, nu: &NuExtensionParams) -> Result<(f64, f64)> {
    let p = prim.with_cost(1.0)?;
    nu.validate()?;
    let kb = k_bar(&p);
    let mut lo = kb / 400.0;
    if nu.k_v > 0.0 {
        lo = lo.min(nu.k_v / 100.0);
    }
    let hi = (100.0 * kb).max(nu.k_v + 10.0 * nu.sigma).max(1000.0 * lo);
    let f = |k: f64| incumbent_win_prob(&attach(prim, k)) + nu_value(nu, k);
    let mut grid = log_grid(lo, hi, 2000);
    for special in [0.25 * kb, kb, nu.k_v] {
        if special > lo && special < hi {
            grid.push(special);
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (j, &k) in grid.iter().enumerate() {
        let v = f(k);
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::domain(format!(
                "iota_hat({k})={v} outside [0, 1]; nu parameters implausible"
            )));
        }
        // `>=` prefers the largest cost among exact ties (flat stretches).
        if v >= best_val {
            best_val = v;
            best = j;
        }
    }
    if best + 1 >= grid.len() {
        return Err(Error::search(format!(
            "iota_hat maximizer pinned at the scan boundary {hi}"
        )));
    }
    let a = grid[best.saturating_sub(1)];
    let b = grid[best + 1];
    let (k_ref, v_ref) = golden_section_max(f, a, b, SEARCH_TOL);
    Ok(if v_ref > best_val {
        (k_ref, v_ref)
    } else {
        (grid[best], best_val)
    })
}
