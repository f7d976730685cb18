//! Minimax regret over mixed strategies, solved exactly by linear
//! programming and compared with a brute-force grid search.

use regretlab::generators::*;
use regretlab::rational::{int, to_text_with_decimal};
use regretlab::regret_mixed::{argmin_polytope, grid_oracle_min_regret, min_mixed_regret, MixedSpace, DEFAULT_CAP};

fn main() {
    let games = [
        ("matching pennies", matching_pennies().unwrap()),
        ("asymmetric matching pennies", asym_matching_pennies().unwrap()),
        ("coordination k=3", coordination(&int(3)).unwrap()),
        ("rock-scissors-paper", rps().unwrap()),
        ("hawk-dove (2,3,4)", hawk_dove(&int(2), &int(3), &int(4)).unwrap()),
    ];
    for (name, g) in games {
        let full = MixedSpace::full(&g);
        let (value, sigma) = min_mixed_regret(&g, &full, 0).unwrap();
        let argmin = argmin_polytope(&g, &full, 0, DEFAULT_CAP).unwrap();
        let (grid, _) = grid_oracle_min_regret(&g, 0, 60).unwrap();
        println!("{}", name);
        println!("  minimax regret  {}", to_text_with_decimal(&value));
        println!("  a minimizer     {}", sigma.describe(&g));
        println!("  all minimizers  {}", argmin.describe(&g));
        println!("  grid (1/60)     {}", to_text_with_decimal(&grid));
    }

    let td = travelers_dilemma(2, 2, 100).unwrap();
    let (value, sigma) = min_mixed_regret(&td, &MixedSpace::full(&td), 0).unwrap();
    let top: Vec<String> = (94..99).map(|a| format!("{}:{:.4}", td.label(0, a), regretlab::auctions::rational_to_f64(&sigma.weights[a]))).collect();
    println!("Traveler's Dilemma p=2 over all 99 claims");
    println!("  minimax regret  3 - {}", int(3) - &value);
    println!("  top weights     {}", top.join("  "));
}
