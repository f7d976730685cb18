//! Iterated regret minimization on the Traveler's Dilemma.
//!
//! Usage: cargo run --example travelers_dilemma [p]

use regretlab::generators::travelers_dilemma;
use regretlab::regret_pure::rm_iterate;
use regretlab::space::PureSpace;

fn main() {
    let p: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let g = travelers_dilemma(p, 2, 100).expect("valid parameters");
    let trace = rm_iterate(&g, &PureSpace::full(&g));
    println!("Traveler's Dilemma, claims 2..=100, p = {}", p);
    for (k, round) in trace.rounds.iter().enumerate() {
        let minregret = &round.meta[0].minregret;
        println!(
            "round {}: minimum regret {} -> {}{}",
            k + 1,
            minregret,
            round.space.describe(&g),
            if round.changed { "" } else { "  (fixed point)" }
        );
    }
    println!("survivors: {}", trace.fixed_point.describe(&g));
}
