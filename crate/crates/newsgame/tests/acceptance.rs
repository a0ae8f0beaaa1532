//! Ten end-to-end checks, one per headline claim the library makes. Each
//! prints a single PASS/FAIL line with its tolerance and then asserts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use newsgame::oracle::grid_best_response;
use newsgame::policy::{no_pure_equilibrium_check, simultaneous_convergence_check};
use newsgame::welfare::{no_media_comparison, nu_extension_optimum, NuExtensionParams};
use newsgame::{
    best_response, equilibrium_policies, k_bar, pooling_structure, simulate, thresholds,
    verify_equilibrium, welfare, ModelParams, PolicyPair, Primitives, SimulationConfig,
};

const P0: Primitives = Primitives {
    phi_v: 1.0,
    phi_m: 0.0,
    gamma: 1.0,
    xi: 1.0,
    phi: 4.0,
};

fn report(n: u32, ok: bool, detail: &str) {
    println!("ACCEPTANCE {n:02} {}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance criterion {n} failed: {detail}");
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = hi / lo;
    (0..n)
        .map(|j| lo * ratio.powf(j as f64 / (n - 1) as f64))
        .collect()
}

#[test]
fn criterion_01_closed_form_regimes() {
    let p = P0.with_cost(1.0).unwrap();
    let mut ok = k_bar(&p) == 1.0;
    let q = equilibrium_policies(&P0.with_cost(0.1).unwrap()).q;
    ok &= q.q_i == 0.0 && q.q_c == 0.0;
    let q = equilibrium_policies(&P0.with_cost(0.5).unwrap()).q;
    ok &= (q.q_i - 0.14645).abs() <= 1e-5 && q.q_c == 0.0;
    let q = equilibrium_policies(&P0.with_cost(4.0).unwrap()).q;
    ok &= (q.q_i - 0.41789).abs() <= 1e-5 && (q.q_c - 0.29289).abs() <= 1e-5;
    report(
        1,
        ok,
        "closed-form regimes at P0: k_bar = 1, q*(0.1) = (0,0) exact, q*(0.5) and q*(4) within 1e-5",
    );
}

#[test]
fn criterion_02_oracle_equivalence() {
    // Grid search against the closed-form response, 100 uniform proposals
    // in each regime.
    let step = 1e-3;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ok = true;
    for k in [0.1, 0.5, 4.0] {
        let p = P0.with_cost(k).unwrap();
        for _ in 0..100 {
            let q_i = p.phi_m + (p.phi_v - p.phi_m) * rng.gen::<f64>();
            let closed = best_response(&p, q_i).unwrap();
            let (grid, _) = grid_best_response(&p, q_i, step);
            if (grid - closed).abs() > step * (p.phi_v - p.phi_m) + 1e-12 {
                ok = false;
            }
        }
    }

    // Full verification across the cost multiples at P0 and two other
    // admissible parameterizations.
    let others = [
        Primitives {
            phi_v: 1.3,
            phi_m: 0.2,
            gamma: 0.8,
            xi: 1.7,
            phi: 4.5,
        },
        Primitives {
            phi_v: 0.9,
            phi_m: -0.3,
            gamma: 1.5,
            xi: 0.6,
            phi: 8.0,
        },
    ];
    for prim in [P0, others[0], others[1]] {
        let kb = k_bar(&prim.with_cost(1.0).unwrap());
        for mult in [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 100.0] {
            let p = prim.with_cost(mult * kb).unwrap();
            let rep = verify_equilibrium(&p, step, 1e-2).unwrap();
            if !rep.passed() {
                ok = false;
            }
        }
    }
    report(
        2,
        ok,
        "grid and closed-form responses agree within one step (1e-3) on 100 draws per regime; \
         verification passes at 7 cost multiples for 3 parameterizations (tol 1e-2)",
    );
}

#[test]
fn criterion_03_welfare_law() {
    let grid = log_grid(1e-3, 1e6, 400);
    let ws: Vec<f64> = grid
        .iter()
        .map(|&k| welfare(&P0.with_cost(k).unwrap()).welfare)
        .collect();
    let kb4 = 0.25;
    let mut ok = true;
    for (k, w) in grid.iter().zip(&ws) {
        if *k <= kb4 && (w - ws[0]).abs() > 1e-12 {
            ok = false;
        }
    }
    for j in 1..grid.len() {
        if grid[j - 1] >= kb4 && ws[j] <= ws[j - 1] {
            ok = false;
        }
    }
    ok &= (ws[ws.len() - 1] - 1.0).abs() <= 1e-2;
    report(
        3,
        ok,
        "welfare constant to 1e-12 on (0, k_bar/4], strictly increasing past k_bar/4, \
         and within 1e-2 of phi/4 at k = 1e6 (400-point log grid)",
    );
}

#[test]
fn criterion_04_persuasion_shape() {
    let grid = log_grid(1e-3, 1e6, 400);
    let chis: Vec<f64> = grid
        .iter()
        .map(|&k| welfare(&P0.with_cost(k).unwrap()).persuasion_rate)
        .collect();
    let mut ok = grid
        .iter()
        .zip(&chis)
        .all(|(k, chi)| *k > 0.25 || *chi == 0.0);
    let argmax = (0..grid.len())
        .max_by(|&a, &b| chis[a].total_cmp(&chis[b]))
        .unwrap();
    let nearest = (0..grid.len())
        .min_by(|&a, &b| {
            (grid[a].ln().abs()).total_cmp(&grid[b].ln().abs())
        })
        .unwrap();
    ok &= argmax.abs_diff(nearest) <= 1;
    ok &= argmax > 0 && argmax < grid.len() - 1;
    ok &= chis[chis.len() - 1] < 1e-3;
    report(
        4,
        ok,
        "persuasion rate zero on (0, k_bar/4], grid maximum at k_bar within 1 point, \
         and below 1e-3 at k = 1e6",
    );
}

#[test]
fn criterion_05_nonmonotonicity() {
    let (k1, k2) = (0.3, 0.9);
    let a = welfare(&P0.with_cost(k1).unwrap());
    let b = welfare(&P0.with_cost(k2).unwrap());
    let ok = b.persuasion_rate > a.persuasion_rate && b.welfare > a.welfare;
    report(
        5,
        ok,
        "k1 = 0.3 < k2 = 0.9 inside (k_bar/4, k_bar) with chi and welfare both strictly larger at k2",
    );
}

#[test]
fn criterion_06_regulation() {
    let grid = log_grid(1e-3, 1e6, 400);
    let mut ok = true;
    for &k in &grid {
        let iota = welfare(&P0.with_cost(k).unwrap()).incumbent_win_prob;
        if k <= 0.25 {
            ok &= iota == 0.5;
        } else {
            ok &= iota < 0.5;
        }
    }
    let tail = welfare(&P0.with_cost(1e6).unwrap()).incumbent_win_prob;
    ok &= (tail - 0.5).abs() <= 1e-3;

    let nu = |sigma| NuExtensionParams {
        y: -0.006,
        x: 0.2,
        k_v: 10.0,
        sigma,
    };
    let (k6, _) = nu_extension_optimum(&P0, &nu(6.0)).unwrap();
    let (k8, _) = nu_extension_optimum(&P0, &nu(8.0)).unwrap();
    ok &= (k6 - 10.5).abs() <= 0.2;
    ok &= (k8 - 0.25).abs() <= 0.05;
    report(
        6,
        ok,
        "iota exactly 1/2 for k <= k_bar/4, strictly below 1/2 past it, within 1e-3 of 1/2 \
         at 1e6; turnout argmax 10.5 +- 0.2 (sigma 6) and 0.25 +- 0.05 (sigma 8)",
    );
}

#[test]
fn criterion_07_monte_carlo() {
    let mut ok = true;
    let mut run = |k: f64, n: u64| {
        let p = P0.with_cost(k).unwrap();
        let s = simulate(&p, &SimulationConfig::new(n, 20_240_817)).unwrap();
        let w = welfare(&p);
        ok &= (s.mean_voter_payoff - w.welfare).abs() <= 4.0 * s.se.mean_voter_payoff;
        ok &= (s.incumbent_win_share - w.incumbent_win_prob).abs()
            <= 4.0 * s.se.incumbent_win_share;
        if w.persuasion_rate == 0.0 {
            ok &= s.persuasion_frequency == 0.0 && s.misreport_frequency == 0.0;
        } else {
            ok &= (s.persuasion_frequency - w.persuasion_rate).abs()
                <= 4.0 * s.se.persuasion_frequency;
        }
    };
    for k in [0.1, 1.0, 4.0] {
        run(k, 1_000_000);
    }
    run(4.0, 10_000_000);
    report(
        7,
        ok,
        "simulated payoff, persuasion and win share within 4 standard errors at k in {0.1, 1, 4} \
         with 1e6 draws and k = 4 with 1e7; zero misreports at k = 0.1",
    );
}

#[test]
fn criterion_08_belief_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let gap = 0.3 + 1.2 * rng.gen::<f64>();
        let shift = -0.5 + rng.gen::<f64>();
        let gamma = 0.5 + 1.5 * rng.gen::<f64>();
        let xi = 0.5 + 1.5 * rng.gen::<f64>();
        let k = 0.02 + 49.98 * rng.gen::<f64>();
        let slack = 1.05 + 2.95 * rng.gen::<f64>();
        let phi = 3.0 * gamma * gap * gap * slack;
        let p = ModelParams::new(shift + gap, shift, gamma, xi, phi, k).unwrap();
        let q = PolicyPair {
            q_i: p.phi_m + gap * rng.gen::<f64>(),
            q_c: p.phi_m + gap * rng.gen::<f64>(),
        };
        if q.q_i == q.q_c {
            continue;
        }
        let ps = pooling_structure(&p, q);
        let t = thresholds(&p, q);
        worst = worst.max((0.5 * (ps.pool_lo + ps.pool_hi) - t.tau_v).abs());
    }
    report(
        8,
        worst <= 1e-12,
        "pooling-interval midpoint equals tau_v within 1e-12 over 1e5 random parameter-proposal draws",
    );
}

#[test]
fn criterion_09_simultaneous_play() {
    let mut ok = true;
    for k in [0.1, 0.25] {
        ok &= simultaneous_convergence_check(&P0.with_cost(k).unwrap(), 1e-3);
    }
    for k in [1.0, 2.0, 10.0] {
        ok &= no_pure_equilibrium_check(&P0.with_cost(k).unwrap(), 1e-3).unwrap();
    }
    report(
        9,
        ok,
        "simultaneous best responses converge at k in {0.1, 0.25} and no pure profile survives \
         at k in {1, 2, 10} (grid step 1e-3)",
    );
}

#[test]
fn criterion_10_media_break_even() {
    let narrow = Primitives { phi: 3.0, ..P0 };
    let p = narrow.with_cost(1.0).unwrap();
    let (_, root) = no_media_comparison(&p).unwrap();
    let mut ok = root.is_some();
    if let Some(k_prime) = root {
        ok &= welfare(&narrow.with_cost(k_prime).unwrap()).welfare.abs() <= 1e-10;
        for k in log_grid(1e-3, k_prime * (1.0 - 1e-6), 50) {
            ok &= welfare(&narrow.with_cost(k).unwrap()).welfare < 0.0;
        }
    }
    let (_, boundary) = no_media_comparison(&P0.with_cost(1.0).unwrap()).unwrap();
    ok &= boundary.is_none();
    report(
        10,
        ok,
        "phi = 3 break-even cost found by bisection with |welfare| <= 1e-10 and welfare < 0 \
         below it; boundary case phi = 4 reports none",
    );
}
