//! Command implementations behind the `newsgame` binary: sweep, verify,
//! simulate, regulate and equilibrium, each a pure function of the parsed
//! configuration, plus text serialization. Floats are written with 17
//! significant digits so emitted tables re-parse to identical values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::communication::PoolingStructure;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::model::{thresholds, Primitives};
use crate::oracle::{verify_profile, VerificationReport};
use crate::policy::equilibrium_policies;
use crate::sim::{simulate, SimulationSummary};
use crate::welfare::{
    challenger_regulation, incumbent_regulation, iota_at, nu_extension_optimum, nu_value, welfare,
};

/// One row of a cost sweep; the data behind the comparative-statics plots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub k: f64,
    pub q_i_star: f64,
    pub q_c_star: f64,
    pub tau_v: f64,
    pub tau_m: f64,
    pub r_star: f64,
    pub chi: f64,
    pub iota: f64,
    pub welfare: f64,
    pub regime: String,
    /// Per-row failure, kept only when `sweep.keep_errors` is set.
    pub error: Option<String>,
}

/// Everything about the equilibrium at a single cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumRow {
    pub k: f64,
    pub regime: String,
    pub k_bar: f64,
    pub eta: f64,
    pub q_i_star: f64,
    pub q_c_star: f64,
    pub tau_v: f64,
    pub tau_m: f64,
    pub r_star: f64,
    pub pool_lo: f64,
    pub pool_hi: f64,
    pub chi: f64,
    pub iota: f64,
    pub welfare: f64,
}

/// Verification outcome for one configured cost.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub k: f64,
    #[serde(flatten)]
    pub report: VerificationReport,
}

/// A sample of the regulator's objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegulatePoint {
    pub k: f64,
    pub iota: f64,
    pub nu: Option<f64>,
    pub iota_hat: Option<f64>,
}

/// Regulator optima plus the sampled objective curve.
#[derive(Debug, Clone, Serialize)]
pub struct RegulateOutput {
    pub incumbent_k: f64,
    pub incumbent_iota: f64,
    pub challenger_k: f64,
    pub challenger_iota: f64,
    pub nu_k: Option<f64>,
    pub nu_iota_hat: Option<f64>,
    pub curve: Vec<RegulatePoint>,
}

fn sweep_row(prim: &Primitives, k: f64) -> Result<SweepRecord> {
    let p = prim.with_cost(k)?;
    let prof = equilibrium_policies(&p);
    let t = thresholds(&p, prof.q);
    let w = welfare(&p);
    Ok(SweepRecord {
        k,
        q_i_star: prof.q.q_i,
        q_c_star: prof.q.q_c,
        tau_v: t.tau_v,
        tau_m: t.tau_m,
        r_star: prof.pooling.r_star,
        chi: w.persuasion_rate,
        iota: w.incumbent_win_prob,
        welfare: w.welfare,
        regime: prof.regime.to_string(),
        error: None,
    })
}

fn error_row(k: f64, e: &Error) -> SweepRecord {
    SweepRecord {
        k,
        q_i_star: f64::NAN,
        q_c_star: f64::NAN,
        tau_v: f64::NAN,
        tau_m: f64::NAN,
        r_star: f64::NAN,
        chi: f64::NAN,
        iota: f64::NAN,
        welfare: f64::NAN,
        regime: String::new(),
        error: Some(e.to_string()),
    }
}

/// Evaluate the equilibrium path over the configured cost grid; rows come
/// back sorted by k.
pub fn run_sweep(cfg: &Config) -> Result<Vec<SweepRecord>> {
    let prim = cfg.primitives()?;
    let section = cfg.sweep()?;
    let grid = section.grid()?;
    let rows: Vec<Result<SweepRecord>> =
        grid.par_iter().map(|&k| sweep_row(&prim, k)).collect();
    let mut out = Vec::with_capacity(rows.len());
    for (k, row) in grid.iter().zip(rows) {
        match row {
            Ok(r) => out.push(r),
            Err(e) if section.keep_errors => out.push(error_row(*k, &e)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Run the oracle on each configured cost. The second return value is true
/// only if every check of every report passed.
pub fn run_verify(cfg: &Config) -> Result<(Vec<VerifyRecord>, bool)> {
    let prim = cfg.primitives()?;
    let section = cfg.verify()?;
    section.validate()?;
    let mut records = Vec::with_capacity(section.ks.len());
    for &k in &section.ks {
        let p = prim.with_cost(k)?;
        let mut q = equilibrium_policies(&p).q;
        if let Some(offset) = section.perturb_q_i {
            q.q_i += offset;
        }
        let report = verify_profile(&p, q, section.step, section.tol)?;
        records.push(VerifyRecord { k, report });
    }
    let all = records.iter().all(|r| r.report.passed());
    Ok((records, all))
}

/// Simulate under the configured model; `seed_override` is the `--seed`
/// flag.
pub fn run_simulate(cfg: &Config, seed_override: Option<u64>) -> Result<SimulationSummary> {
    let p = cfg.model_params()?;
    let sim_cfg = cfg.simulate()?.to_sim_config(seed_override)?;
    simulate(&p, &sim_cfg)
}

/// Regulator optima and objective curve.
pub fn run_regulate(cfg: &Config) -> Result<RegulateOutput> {
    let prim = cfg.primitives()?;
    let section = cfg.regulate()?;
    let nu = section.nu_params()?;
    let (ik, iiota) = incumbent_regulation(&prim)?;
    let (ck, ciota) = challenger_regulation(&prim)?;
    let nu_opt = match &nu {
        Some(nu) => Some(nu_extension_optimum(&prim, nu)?),
        None => None,
    };
    let kb = crate::policy::k_bar(&prim.with_cost(1.0)?);
    let lo = section.curve_k_min.unwrap_or(kb / 100.0);
    let hi = section.curve_k_max.unwrap_or(kb * 100.0);
    let n = section.curve_points.unwrap_or(200);
    if !(lo > 0.0 && hi > lo) || n < 2 {
        return Err(Error::config(format!(
            "regulate curve needs 0 < curve_k_min < curve_k_max and at least 2 points, \
             got [{lo}, {hi}] with {n}"
        )));
    }
    let ratio = hi / lo;
    let mut curve = Vec::with_capacity(n);
    for j in 0..n {
        let k = lo * ratio.powf(j as f64 / (n - 1) as f64);
        let iota = iota_at(&prim, k)?;
        let nu_v = nu.as_ref().map(|nu| nu_value(nu, k));
        curve.push(RegulatePoint {
            k,
            iota,
            nu: nu_v,
            iota_hat: nu_v.map(|v| iota + v),
        });
    }
    Ok(RegulateOutput {
        incumbent_k: ik,
        incumbent_iota: iiota,
        challenger_k: ck,
        challenger_iota: ciota,
        nu_k: nu_opt.map(|o| o.0),
        nu_iota_hat: nu_opt.map(|o| o.1),
        curve,
    })
}

/// Equilibrium snapshot at the single configured cost.
pub fn run_equilibrium(cfg: &Config) -> Result<EquilibriumRow> {
    let p = cfg.model_params()?;
    let prof = equilibrium_policies(&p);
    let t = thresholds(&p, prof.q);
    let w = welfare(&p);
    let PoolingStructure {
        r_star,
        pool_lo,
        pool_hi,
        ..
    } = prof.pooling;
    Ok(EquilibriumRow {
        k: p.k,
        regime: prof.regime.to_string(),
        k_bar: prof.k_bar,
        eta: prof.eta,
        q_i_star: prof.q.q_i,
        q_c_star: prof.q.q_c,
        tau_v: t.tau_v,
        tau_m: t.tau_m,
        r_star,
        pool_lo,
        pool_hi,
        chi: w.persuasion_rate,
        iota: w.incumbent_win_prob,
        welfare: w.welfare,
    })
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

fn csv_safe(s: &str) -> String {
    s.replace(['\n', '\r'], " ").replace(',', ";")
}

pub const SWEEP_HEADER: &str =
    "k,q_i_star,q_c_star,tau_v,tau_m,r_star,chi,iota,welfare,regime,error";

pub fn render_sweep_csv(rows: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt(r.k),
            fmt(r.q_i_star),
            fmt(r.q_c_star),
            fmt(r.tau_v),
            fmt(r.tau_m),
            fmt(r.r_star),
            fmt(r.chi),
            fmt(r.iota),
            fmt(r.welfare),
            r.regime,
            r.error.as_deref().map(csv_safe).unwrap_or_default(),
        ));
    }
    out
}

fn parse_f64(field: &str, s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::config(format!("unparseable {field} value: {s:?}")))
}

/// Parse a table written by `render_sweep_csv`.
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line != SWEEP_HEADER {
                return Err(Error::config(format!("unexpected sweep header: {line:?}")));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 11 {
            return Err(Error::config(format!(
                "sweep row {i} has {} fields, expected 11",
                parts.len()
            )));
        }
        rows.push(SweepRecord {
            k: parse_f64("k", parts[0])?,
            q_i_star: parse_f64("q_i_star", parts[1])?,
            q_c_star: parse_f64("q_c_star", parts[2])?,
            tau_v: parse_f64("tau_v", parts[3])?,
            tau_m: parse_f64("tau_m", parts[4])?,
            r_star: parse_f64("r_star", parts[5])?,
            chi: parse_f64("chi", parts[6])?,
            iota: parse_f64("iota", parts[7])?,
            welfare: parse_f64("welfare", parts[8])?,
            regime: parts[9].to_string(),
            error: if parts[10].is_empty() {
                None
            } else {
                Some(parts[10].to_string())
            },
        });
    }
    Ok(rows)
}

pub fn render_sweep_jsonl(rows: &[SweepRecord]) -> String {
    rows.iter()
        .map(|r| serde_json::to_string(r).expect("serializable record"))
        .fold(String::new(), |mut acc, line| {
            acc.push_str(&line);
            acc.push('\n');
            acc
        })
}

pub fn parse_sweep_jsonl(text: &str) -> Result<Vec<SweepRecord>> {
    text.lines()
        .filter(|l| !l.is_empty())
        .map(|l| {
            serde_json::from_str(l).map_err(|e| Error::config(format!("bad sweep jsonl: {e}")))
        })
        .collect()
}

pub fn render_equilibrium_csv(row: &EquilibriumRow) -> String {
    format!(
        "k,regime,k_bar,eta,q_i_star,q_c_star,tau_v,tau_m,r_star,pool_lo,pool_hi,chi,iota,welfare\n\
         {},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        fmt(row.k),
        row.regime,
        fmt(row.k_bar),
        fmt(row.eta),
        fmt(row.q_i_star),
        fmt(row.q_c_star),
        fmt(row.tau_v),
        fmt(row.tau_m),
        fmt(row.r_star),
        fmt(row.pool_lo),
        fmt(row.pool_hi),
        fmt(row.chi),
        fmt(row.iota),
        fmt(row.welfare),
    )
}

pub fn render_equilibrium_jsonl(row: &EquilibriumRow) -> String {
    let mut s = serde_json::to_string(row).expect("serializable row");
    s.push('\n');
    s
}

pub fn render_verify_csv(records: &[VerifyRecord]) -> String {
    let mut out = String::from("k,check,passed,violation,detail\n");
    for rec in records {
        for c in &rec.report.checks {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt(rec.k),
                c.name,
                c.passed,
                fmt(c.violation),
                csv_safe(&c.detail),
            ));
        }
    }
    out
}

pub fn render_verify_jsonl(records: &[VerifyRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("serializable record"))
        .fold(String::new(), |mut acc, line| {
            acc.push_str(&line);
            acc.push('\n');
            acc
        })
}

pub fn render_regulate_csv(out: &RegulateOutput) -> String {
    let mut s = format!(
        "# incumbent_optimum k={} iota={}\n# challenger_optimum k={} iota={}\n",
        fmt(out.incumbent_k),
        fmt(out.incumbent_iota),
        fmt(out.challenger_k),
        fmt(out.challenger_iota),
    );
    if let (Some(k), Some(v)) = (out.nu_k, out.nu_iota_hat) {
        s.push_str(&format!("# nu_optimum k={} iota_hat={}\n", fmt(k), fmt(v)));
    }
    s.push_str("k,iota,nu,iota_hat\n");
    for p in &out.curve {
        s.push_str(&format!(
            "{},{},{},{}\n",
            fmt(p.k),
            fmt(p.iota),
            fmt_opt(p.nu),
            fmt_opt(p.iota_hat),
        ));
    }
    s
}

pub fn render_regulate_jsonl(out: &RegulateOutput) -> String {
    #[derive(Serialize)]
    struct Optima<'a> {
        incumbent_k: f64,
        incumbent_iota: f64,
        challenger_k: f64,
        challenger_iota: f64,
        nu_k: &'a Option<f64>,
        nu_iota_hat: &'a Option<f64>,
    }
    let mut s = serde_json::to_string(&Optima {
        incumbent_k: out.incumbent_k,
        incumbent_iota: out.incumbent_iota,
        challenger_k: out.challenger_k,
        challenger_iota: out.challenger_iota,
        nu_k: &out.nu_k,
        nu_iota_hat: &out.nu_iota_hat,
    })
    .expect("serializable optima");
    s.push('\n');
    for p in &out.curve {
        s.push_str(&serde_json::to_string(p).expect("serializable point"));
        s.push('\n');
    }
    s
}

pub fn render_simulate_csv(sum: &SimulationSummary) -> String {
    format!(
        "n_draws,seed,q_i,q_c,lambda,mean_voter_payoff,incumbent_win_share,\
         persuasion_frequency,misreport_frequency,mean_outlet_cost,\
         se_mean_voter_payoff,se_incumbent_win_share,se_persuasion_frequency,\
         se_misreport_frequency,se_mean_outlet_cost\n\
         {},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        sum.n_draws,
        sum.seed,
        fmt(sum.q.q_i),
        fmt(sum.q.q_c),
        fmt_opt(sum.lambda),
        fmt(sum.mean_voter_payoff),
        fmt(sum.incumbent_win_share),
        fmt(sum.persuasion_frequency),
        fmt(sum.misreport_frequency),
        fmt(sum.mean_outlet_cost),
        fmt(sum.se.mean_voter_payoff),
        fmt(sum.se.incumbent_win_share),
        fmt(sum.se.persuasion_frequency),
        fmt(sum.se.misreport_frequency),
        fmt(sum.se.mean_outlet_cost),
    )
}

pub fn render_simulate_jsonl(sum: &SimulationSummary) -> String {
    let mut s = serde_json::to_string(sum).expect("serializable summary");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config(extra: &str) -> Config {
        format!(
            "[model]\nphi_v = 1.0\nphi_m = 0.0\ngamma = 1.0\nxi = 1.0\nphi = 4.0\nk = 4.0\n{extra}"
        )
        .parse()
        .unwrap()
    }

    #[test]
    fn sweep_matches_single_point_equilibrium() {
        let cfg = base_config("[sweep]\nk_min = 4.0\nk_max = 4.0\npoints = 1\n");
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert!((r.q_i_star - 0.41789).abs() < 1e-5);
        assert!((r.q_c_star - 0.29289).abs() < 1e-5);
        assert!((r.chi - 0.03125).abs() < 1e-12);
        assert_eq!(r.regime, "high");
        assert!(r.error.is_none());
    }

    #[test]
    fn sweep_welfare_nondecreasing_on_log_grid() {
        let cfg = base_config("[sweep]\nk_min = 0.01\nk_max = 100.0\npoints = 200\n");
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 200);
        for w in rows.windows(2) {
            assert!(w[0].k < w[1].k);
            assert!(w[1].welfare >= w[0].welfare, "at k={}", w[1].k);
        }
        assert!(rows.iter().all(|r| r.k.is_finite()
            && r.welfare.is_finite()
            && r.chi.is_finite()
            && r.iota.is_finite()));
    }

    #[test]
    fn sweep_csv_round_trips_exactly() {
        let cfg = base_config("[sweep]\nk_min = 0.01\nk_max = 100.0\npoints = 50\n");
        let rows = run_sweep(&cfg).unwrap();
        let text = render_sweep_csv(&rows);
        let back = parse_sweep_csv(&text).unwrap();
        assert_eq!(rows, back);
        let jsonl = render_sweep_jsonl(&rows);
        let back = parse_sweep_jsonl(&jsonl).unwrap();
        assert_eq!(rows, back);
    }

    #[test]
    fn sweep_error_rows_survive_serialization() {
        let row = error_row(1.0, &Error::domain("bad, with commas\nand lines"));
        let text = render_sweep_csv(std::slice::from_ref(&row));
        let back = parse_sweep_csv(&text).unwrap();
        assert_eq!(back[0].k, 1.0);
        assert!(back[0].q_i_star.is_nan());
        let msg = back[0].error.as_deref().unwrap();
        assert!(!msg.contains(',') && !msg.contains('\n'));
    }

    #[test]
    fn verify_passes_on_path_and_fails_perturbed() {
        let cfg = base_config("[verify]\nks = [0.125, 0.25, 1.0, 4.0]\n");
        let (records, all) = run_verify(&cfg).unwrap();
        assert_eq!(records.len(), 4);
        assert!(all, "{:#?}", records.iter().find(|r| !r.report.passed()));

        let cfg = base_config("[verify]\nks = [4.0]\nperturb_q_i = 0.05\n");
        let (records, all) = run_verify(&cfg).unwrap();
        assert!(!all);
        assert!(records[0].report.max_violation() > 0.01);
    }

    #[test]
    fn regulate_reproduces_known_optima() {
        let cfg = base_config(
            "[regulate]\ny = -0.006\nx = 0.2\nk_v = 10.0\nsigma = 6.0\ncurve_points = 50\n",
        );
        let out = run_regulate(&cfg).unwrap();
        assert_eq!(out.incumbent_k, 0.25);
        assert_eq!(out.incumbent_iota, 0.5);
        assert!((out.challenger_k - 3.0).abs() < 0.1, "{}", out.challenger_k);
        assert!((out.challenger_iota - 0.4887).abs() < 2e-4);
        let nu_k = out.nu_k.unwrap();
        assert!((nu_k - 10.5).abs() <= 0.2, "{nu_k}");
        assert_eq!(out.curve.len(), 50);
        assert!(out.curve.iter().all(|p| p.iota_hat.is_some()));

        let text = render_regulate_csv(&out);
        assert!(text.starts_with("# incumbent_optimum"));
        assert!(text.contains("# nu_optimum"));
    }

    #[test]
    fn equilibrium_row_is_complete() {
        let cfg = base_config("");
        let row = run_equilibrium(&cfg).unwrap();
        assert_eq!(row.regime, "high");
        assert_eq!(row.k_bar, 1.0);
        assert!((row.pool_hi - row.tau_m).abs() < 1e-12);
        let text = render_equilibrium_csv(&row);
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn simulate_respects_seed_override() {
        let cfg = base_config("[simulate]\nn_draws = 20000\nseed = 1\n");
        let a = run_simulate(&cfg, None).unwrap();
        let b = run_simulate(&cfg, Some(2)).unwrap();
        assert_eq!(a.seed, 1);
        assert_eq!(b.seed, 2);
        assert_ne!(a.mean_voter_payoff, b.mean_voter_payoff);
        let text = render_simulate_csv(&a);
        assert_eq!(text.lines().count(), 2);
    }
}
