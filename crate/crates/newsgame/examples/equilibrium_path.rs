//! Solve the sequential policy game across the three cost regimes.
//!
//! Run with `cargo run --example equilibrium_path`.

use newsgame::policy::eta;
use newsgame::{equilibrium_policies, k_bar, thresholds, Primitives};

fn main() {
    let prim = Primitives {
        phi_v: 1.0,
        phi_m: 0.0,
        gamma: 1.0,
        xi: 1.0,
        phi: 4.0,
    };

    let p = prim.with_cost(1.0).unwrap();
    println!(
        "baseline: phi_v={} phi_m={} gamma={} xi={} phi={}",
        p.phi_v, p.phi_m, p.gamma, p.xi, p.phi
    );
    println!(
        "regime cutoffs: k_bar/4 = {} and k_bar = {}\n",
        k_bar(&p) / 4.0,
        k_bar(&p)
    );

    println!(
        "{:>10}  {:>7}  {:>9}  {:>9}  {:>10}  {:>10}  {:>8}",
        "k", "regime", "q_i*", "q_c*", "tau_v", "tau_m", "eta"
    );
    for k in [0.05, 0.1, 0.25, 0.3, 0.5, 0.8, 1.0, 1.5, 4.0, 20.0, 1e3] {
        let p = prim.with_cost(k).unwrap();
        let e = equilibrium_policies(&p);
        let t = thresholds(&p, e.q);
        println!(
            "{k:>10}  {:>7}  {:>9.6}  {:>9.6}  {:>10.6}  {:>10.6}  {:>8.5}",
            e.regime.to_string(),
            e.q.q_i,
            e.q.q_c,
            t.tau_v,
            t.tau_m,
            eta(&p),
        );
    }

    // Below k_bar/4 lying is cheap enough that both candidates match the
    // outlet; past k_bar both proposals start drifting toward the voter.
    let e = equilibrium_policies(&prim.with_cost(0.1).unwrap());
    assert_eq!((e.q.q_i, e.q.q_c), (0.0, 0.0));
    let e = equilibrium_policies(&prim.with_cost(4.0).unwrap());
    assert!((e.q.q_i - 0.41789).abs() < 1e-5 && (e.q.q_c - 0.29289).abs() < 1e-5);
    println!("\nfrozen anchors at k = 0.1 and k = 4 check out");
}
