//! Brute-force the equilibrium conditions: grid search over deviations and
//! sceptical-belief consistency, no closed forms on the checking side.
//!
//! Run with `cargo run --release --example verify_oracle`.

use newsgame::{equilibrium_policies, verify_equilibrium, verify_profile, Primitives};

fn main() {
    let prim = Primitives {
        phi_v: 1.0,
        phi_m: 0.0,
        gamma: 1.0,
        xi: 1.0,
        phi: 4.0,
    };
    let (step, tol) = (1e-3, 1e-2);

    for k in [0.1, 0.25, 1.0, 4.0] {
        let p = prim.with_cost(k).unwrap();
        let report = verify_equilibrium(&p, step, tol).unwrap();
        println!("k = {k}: equilibrium profile");
        for c in &report.checks {
            println!(
                "  {:<26} {}  (violation {:.2e})",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.violation
            );
        }
        assert!(report.passed());
    }

    // Nudging the incumbent off the path leaves money on the table for
    // both candidates, and the oracle notices.
    let p = prim.with_cost(4.0).unwrap();
    let mut q = equilibrium_policies(&p).q;
    q.q_i += 0.05;
    let report = verify_profile(&p, q, step, tol).unwrap();
    println!("\nperturbed profile (q_i + 0.05, q_c*):");
    for c in &report.checks {
        println!(
            "  {:<26} {}  (violation {:.2e})",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.violation
        );
    }
    assert!(!report.passed());
    println!("\nmax violation {:.4} exceeds tolerance {tol}", report.max_violation());
}
