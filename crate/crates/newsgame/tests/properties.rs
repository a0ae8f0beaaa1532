//! Random-instance invariants: identities that must hold at every admissible
//! parameterization and proposal pair, not just the worked examples.

use proptest::prelude::*;

use newsgame::cli::{parse_sweep_csv, parse_sweep_jsonl, render_sweep_csv, render_sweep_jsonl};
use newsgame::cli::SweepRecord;
use newsgame::communication::ballot;
use newsgame::model::outlet_utility;
use newsgame::policy::challenger_threshold;
use newsgame::welfare::complete_info_welfare;
use newsgame::{
    best_response, classify_outcome, equilibrium_policies, pooling_structure, reporting_rule,
    simulate, thresholds, welfare, ModelParams, PolicyPair, SimulationConfig,
};

/// Admissible parameterizations: the state space is kept a strict multiple
/// of the influential-media bound `3 gamma (phi_v - phi_m)^2`.
fn arb_params() -> impl Strategy<Value = ModelParams> {
    (
        0.3f64..1.5,
        -0.5f64..0.5,
        0.5f64..2.0,
        0.5f64..2.0,
        0.02f64..50.0,
        1.05f64..4.0,
    )
        .prop_map(|(gap, shift, gamma, xi, k, slack)| {
            let phi = 3.0 * gamma * gap * gap * slack;
            ModelParams::new(shift + gap, shift, gamma, xi, phi, k).unwrap()
        })
}

fn lerp(lo: f64, hi: f64, t: f64) -> f64 {
    lo + (hi - lo) * t
}

fn proposals(p: &ModelParams, a: f64, b: f64) -> PolicyPair {
    PolicyPair {
        q_i: lerp(p.phi_m, p.phi_v, a),
        q_c: lerp(p.phi_m, p.phi_v, b),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // tau_v - tau_m = 2 gamma (phi_v - phi_m)(q_c - q_i), the engine behind
    // every case split in the reporting subgame.
    #[test]
    fn threshold_identity(p in arb_params(), a in 0f64..1.0, b in 0f64..1.0) {
        let q = proposals(&p, a, b);
        let t = thresholds(&p, q);
        let rhs = 2.0 * p.gamma * (p.phi_v - p.phi_m) * (q.q_c - q.q_i);
        let scale = 1.0 + t.tau_v.abs() + t.tau_m.abs();
        prop_assert!((t.tau_v - t.tau_m - rhs).abs() <= 1e-12 * scale);
    }

    // The states pooled onto r* average to tau_v, so the sceptical voter
    // is exactly indifferent after the pooled report.
    #[test]
    fn pool_midpoint_is_tau_v(p in arb_params(), a in 0f64..1.0, b in 0f64..1.0) {
        let q = proposals(&p, a, b);
        let t = thresholds(&p, q);
        if q.q_i != q.q_c {
            let ps = pooling_structure(&p, q);
            let mid = 0.5 * (ps.pool_lo + ps.pool_hi);
            prop_assert!((mid - t.tau_v).abs() <= 1e-12 * (1.0 + t.tau_v.abs()));
        }
    }

    // No report strays further from the truth than the misreport radius
    // s = sqrt(xi / k); past that the lie cannot pay for itself.
    #[test]
    fn reports_stay_within_radius(
        p in arb_params(),
        a in 0f64..1.0,
        b in 0f64..1.0,
        t01 in 0f64..1.0,
    ) {
        let q = proposals(&p, a, b);
        let theta = lerp(-p.phi, p.phi, t01);
        let r = reporting_rule(&p, theta, q).unwrap();
        let s = p.misreport_radius();
        prop_assert!((r - theta).abs() <= s * (1.0 + 1e-12) + 1e-12);
    }

    // Sequential rationality of the outlet: against the voter's reading,
    // no deviation report beats the prescribed one at any state.
    #[test]
    fn outlet_prefers_its_own_report(
        p in arb_params(),
        a in 0f64..1.0,
        b in 0f64..1.0,
        t01 in 0f64..1.0,
    ) {
        let q = proposals(&p, a, b);
        let theta = lerp(-p.phi, p.phi, t01);
        let out = classify_outcome(&p, theta, q).unwrap();
        let u_eq = outlet_utility(&p, out.report, out.ballot, theta, q);
        let s = p.misreport_radius();
        let tol = 1e-9 * (1.0 + p.xi + p.gamma * p.phi * p.phi);
        for j in 0..=60 {
            let r = theta + s * lerp(-1.2, 1.2, j as f64 / 60.0);
            let b_dev = ballot(&p, r, q);
            let u = outlet_utility(&p, r, b_dev, theta, q);
            prop_assert!(
                u <= u_eq + tol,
                "profitable outlet deviation to r={r} at theta={theta}: {u} > {u_eq}"
            );
        }
    }

    // The closed-form challenger response dominates a fresh grid scan of
    // the election threshold it maximizes.
    #[test]
    fn best_response_dominates_grid(p in arb_params(), a in 0f64..1.0) {
        let q_i = lerp(p.phi_m, p.phi_v, a);
        let bc = best_response(&p, q_i).unwrap();
        let t_closed = challenger_threshold(&p, PolicyPair { q_i, q_c: bc });
        let tol = 1e-9 * (1.0 + t_closed.abs());
        for j in 0..=200 {
            let q_c = lerp(p.phi_m, p.phi_v, j as f64 / 200.0);
            let t = challenger_threshold(&p, PolicyPair { q_i, q_c });
            prop_assert!(t <= t_closed + tol, "grid q_c={q_c} beats closed form");
        }
    }

    // Rates are probabilities, welfare never beats complete information,
    // and the payoff interval spans from the equilibrium up to that cap.
    #[test]
    fn welfare_report_is_coherent(p in arb_params()) {
        let w = welfare(&p);
        prop_assert!((0.0..=1.0).contains(&w.persuasion_rate));
        prop_assert!((0.0..=1.0).contains(&w.incumbent_win_prob));
        let cap = complete_info_welfare(&p);
        prop_assert!(w.welfare <= cap + 1e-12 * (1.0 + cap.abs()));
        prop_assert_eq!(w.payoff_set.lo, w.welfare);
        prop_assert_eq!(w.payoff_set.hi, cap);
        prop_assert_eq!(w.k, p.k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Midpoint quadrature against the closed form. The integrand is
    // piecewise linear in theta, so all the error lives in the cells
    // containing a ballot switch.
    #[test]
    fn quadrature_matches_welfare(p in arb_params()) {
        use newsgame::oracle::quadrature_welfare;
        let n = 40_000;
        let q = equilibrium_policies(&p).q;
        let numeric = quadrature_welfare(&p, q, n);
        let closed = welfare(&p).welfare;
        let jump = p.phi + p.gamma * (p.phi_v - p.phi_m).powi(2);
        prop_assert!(
            (numeric - closed).abs() <= 10.0 * jump / n as f64,
            "quadrature {numeric} vs closed {closed}"
        );
    }

    // Persuasion implies misreporting draw by draw, so the frequencies
    // are ordered in every sample.
    #[test]
    fn simulated_persuasion_implies_misreporting(p in arb_params(), seed in 0u64..1000) {
        let s = simulate(&p, &SimulationConfig::new(20_000, seed)).unwrap();
        prop_assert!(s.persuasion_frequency <= s.misreport_frequency + 1e-15);
        prop_assert!((0.0..=1.0).contains(&s.persuasion_frequency));
        prop_assert!((0.0..=1.0).contains(&s.misreport_frequency));
        prop_assert!((0.0..=1.0).contains(&s.incumbent_win_share));
        prop_assert!(s.mean_outlet_cost >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // Table serialization is lossless for any finite record.
    #[test]
    fn sweep_tables_round_trip(
        k in prop::num::f64::POSITIVE | prop::num::f64::NEGATIVE | prop::num::f64::ZERO,
        vals in prop::collection::vec(-1e30f64..1e30, 8),
        regime in "(low|mid|high)",
    ) {
        prop_assume!(k.is_finite());
        let row = SweepRecord {
            k,
            q_i_star: vals[0],
            q_c_star: vals[1],
            tau_v: vals[2],
            tau_m: vals[3],
            r_star: vals[4],
            chi: vals[5],
            iota: vals[6],
            welfare: vals[7],
            regime,
            error: None,
        };
        let rows = vec![row];
        prop_assert_eq!(&parse_sweep_csv(&render_sweep_csv(&rows)).unwrap(), &rows);
        prop_assert_eq!(&parse_sweep_jsonl(&render_sweep_jsonl(&rows)).unwrap(), &rows);
    }
}
