//! The communication subgame at fixed proposals: where the outlet pools,
//! what it reports, and how the voter reads reports on and off the path.
//!
//! Run with `cargo run --example reporting_subgame`.

use newsgame::communication::{lambda_range, persuasion_region};
use newsgame::{
    classify_outcome, pooling_structure, reporting_rule, thresholds, PolicyPair, Primitives,
};

fn main() {
    let prim = Primitives {
        phi_v: 1.0,
        phi_m: 0.0,
        gamma: 1.0,
        xi: 1.0,
        phi: 4.0,
    };
    // Proposals with the challenger below the incumbent, so the voter's
    // flip threshold sits below the outlet's and reports near the gap get
    // shaded upward.
    let p = prim.with_cost(1.0).unwrap();
    let q = PolicyPair { q_i: 0.8, q_c: 0.2 };

    let t = thresholds(&p, q);
    let ps = pooling_structure(&p, q);
    let conflict = persuasion_region(&p, q);
    println!("proposals q_i={} q_c={}", q.q_i, q.q_c);
    println!("thresholds tau_v={:.4} tau_m={:.4}", t.tau_v, t.tau_m);
    println!(
        "pooled report r*={:.4}, pooled states ({:.4}, {:.4}], case {:?}",
        ps.r_star, ps.pool_lo, ps.pool_hi, ps.case_tag
    );
    println!(
        "persuaded states ({:.4}, {:.4})\n",
        conflict.lo, conflict.hi
    );

    println!("{:>8}  {:>8}  {:>10}  {:>9}", "theta", "report", "misreport", "winner");
    for theta in [-2.0, t.tau_v, -0.7, -0.5, -0.3, t.tau_m, 0.2, 1.0] {
        let out = classify_outcome(&p, theta, q).unwrap();
        println!(
            "{theta:>8.4}  {:>8.4}  {:>10}  {:>9?}",
            out.report,
            if out.misreported { "yes" } else { "no" },
            out.ballot,
        );
    }

    // Pooled states all map to the same report, and the report the voter
    // distrusts averages back to the voter threshold.
    let mid = 0.5 * (ps.pool_lo + ps.pool_hi);
    assert!((mid - t.tau_v).abs() < 1e-12);
    let r = reporting_rule(&p, 0.5 * (ps.pool_lo + ps.pool_hi), q).unwrap();
    assert_eq!(r, ps.r_star);
    println!("\npool midpoint equals tau_v: sceptical beliefs are consistent");

    // A one-parameter family of turning-point rules shares those
    // properties; lambda = 1 is the canonical member. The family is indexed
    // for proposals with the voter threshold above the outlet's, so flip
    // the candidates around to ask for its range.
    let mirrored = PolicyPair { q_i: q.q_c, q_c: q.q_i };
    let (lo, hi) = lambda_range(&p, mirrored).unwrap();
    println!("admissible lambda range at the mirrored proposals: [{lo:.4}, {hi:.4}]");
}
