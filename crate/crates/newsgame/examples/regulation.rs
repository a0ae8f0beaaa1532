//! What misreporting cost would each side of the aisle legislate, when is
//! a press worth having at all, and how a voter-turnout motive shifts the
//! incumbent's answer.
//!
//! Run with `cargo run --example regulation`.

use newsgame::welfare::{
    challenger_regulation, incumbent_regulation, iota_hat_at, no_media_comparison,
    nu_extension_optimum, NuExtensionParams,
};
use newsgame::Primitives;

fn main() {
    let prim = Primitives {
        phi_v: 1.0,
        phi_m: 0.0,
        gamma: 1.0,
        xi: 1.0,
        phi: 4.0,
    };

    // The incumbent wins most often when lying is cheap, the challenger
    // when it is dear but not prohibitive.
    let (k_i, iota_i) = incumbent_regulation(&prim).unwrap();
    let (k_c, iota_c) = challenger_regulation(&prim).unwrap();
    println!("incumbent's preferred cost  k = {k_i}  (iota = {iota_i})");
    println!("challenger's preferred cost k = {k_c:.5}  (iota = {iota_c:.6})");

    // With a wide state space the media always helps the voter; narrow it
    // and cheap-talk media are worse than none.
    let p = prim.with_cost(1.0).unwrap();
    let (baseline, root) = no_media_comparison(&p).unwrap();
    println!("\nphi = 4: no-media welfare {baseline}, media helps at every k: {:?}", root);

    let narrow = Primitives { phi: 3.0, ..prim };
    let p = narrow.with_cost(1.0).unwrap();
    let (baseline, root) = no_media_comparison(&p).unwrap();
    let k_prime = root.expect("narrow state space has a break-even cost");
    println!("phi = 3: no-media welfare {baseline}, media breaks even at k' = {k_prime:.6}");

    // Turnout extension: an office-motivated incumbent trades win
    // probability against a turnout bonus peaked at the voters' favorite
    // cost level k_v.
    println!("\nturnout-adjusted incumbent objective:");
    for sigma in [6.0, 8.0] {
        let nu = NuExtensionParams {
            y: -0.006,
            x: 0.2,
            k_v: 10.0,
            sigma,
        };
        let (k_star, value) = nu_extension_optimum(&prim, &nu).unwrap();
        println!(
            "  sigma = {sigma}: k* = {k_star:.4} with iota_hat = {value:.6} \
             (iota_hat at k_v = {:.6})",
            iota_hat_at(&prim, &nu, nu.k_v).unwrap()
        );
    }
    println!("\na sharp turnout peak pulls the incumbent to the voters' k_v; a flat one does not");
}
