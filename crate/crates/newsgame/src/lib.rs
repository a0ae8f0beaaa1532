//! An election game with a news outlet that can misreport at a cost.
//!
//! A state `theta` is drawn uniformly from `[-phi, phi]`. An incumbent and a
//! challenger commit to policies `q_i` and `q_c` in `[phi_m, phi_v]`, an
//! outlet with bliss point `phi_m` observes the state and publishes a report,
//! paying `k (r - theta)^2` to distort, and a voter with bliss point `phi_v`
//! reads the report and elects one candidate. The winner's payoff to the
//! voter is `-gamma (phi_v - q)^2 + theta` for the incumbent's policy and
//! `-gamma (phi_v - q)^2` for the challenger's, so high states favor the
//! incumbent.
//!
//! The crate solves the game layer by layer:
//!
//! - [`model`]: primitives, utilities and the endorsement thresholds
//!   `tau_v`, `tau_m` where the voter's and the outlet's preferred winner
//!   flips.
//! - [`communication`]: the reporting subgame for fixed policies. When the
//!   thresholds disagree the outlet pools a state interval of width up to
//!   `s = sqrt(xi / k)` onto a single report; the voter's sceptical reading
//!   of that report pins its posterior mean at `tau_v`.
//! - [`policy`]: sequential policy choice. Closed-form best responses and
//!   the equilibrium path in the misreporting cost `k`, which switches
//!   regime at `k_bar / 4` and `k_bar` with `k_bar = xi / (gamma^2
//!   (phi_v - phi_m)^4)`.
//! - [`welfare`]: voter welfare, persuasion and incumbency rates along the
//!   path, and the cost levels different regulators would pick.
//! - [`oracle`]: brute-force verification of the closed forms by grid
//!   search and quadrature; no closed-form shortcuts on the checking side.
//! - [`sim`]: a deterministic parallel Monte Carlo of the full game.
//! - [`config`] and [`cli`]: TOML-driven runs and table output for the
//!   `newsgame` binary.
//!
//! Reports, policies and states all live on the same axis, so most
//! quantities here are plain `f64`s; the typed structs mark the few places
//! where mixing them up would be easy.

pub mod cli;
pub mod communication;
pub mod config;
pub mod error;
pub mod model;
mod numeric;
pub mod oracle;
pub mod policy;
pub mod sim;
pub mod welfare;

pub use communication::{
    classify_outcome, pooling_structure, reporting_rule, PoolCase, PoolingStructure,
    ReportingOutcome,
};
pub use error::{Error, Result};
pub use model::{
    thresholds, Candidate, Interval, ModelParams, PolicyPair, Primitives, Thresholds,
};
pub use oracle::{verify_equilibrium, verify_profile, VerificationReport};
pub use policy::{
    best_response, equilibrium_policies, k_bar, EquilibriumProfile, Regime,
};
pub use sim::{simulate, SimulationConfig, SimulationSummary};
pub use welfare::{welfare, WelfareReport};
