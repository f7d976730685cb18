//! Loading games from JSON files and running every concept on them.
//!
//! Usage: cargo run --example game_file [path]

use regretlab::bayes::{load_bayesian, rm_bayes_iterate, TypedSpace};
use regretlab::concepts::compare;
use regretlab::gamefile::{load_game, save_game};
use regretlab::regret_mixed::{min_mixed_regret, MixedSpace};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let path = std::env::args().nth(1).unwrap_or_else(|| format!("{}/chicken.json", dir));
    let text = std::fs::read_to_string(&path).expect("readable game file");
    let g = load_game(&text).expect("valid game file");
    println!("{}", path);
    print!("{}", compare(&g).to_text(&g, 8));
    for i in 0..g.players() {
        let (v, s) = min_mixed_regret(&g, &MixedSpace::full(&g), i).unwrap();
        println!("player {} minimax regret {} at {}", i + 1, v, s.describe(&g));
    }
    println!("round trip: {}", load_game(&save_game(&g)).unwrap() == g);

    let text = std::fs::read_to_string(format!("{}/private_values.json", dir)).unwrap();
    let bg = load_bayesian(&text).unwrap();
    let t = rm_bayes_iterate(&bg, &TypedSpace::full(&bg));
    println!("private_values.json fixed point: {}", t.fixed_point.to_json(&bg));
}
