//! Regret minimization next to weak and strong dominance, rationalizability
//! and pure Nash equilibrium on a few small games.

use regretlab::concepts::{compare, risk_dominance};
use regretlab::generators::*;

fn main() {
    let games = [
        ("Traveler's Dilemma p=2, claims 2..=20", travelers_dilemma(2, 2, 20).unwrap()),
        ("strong dominance versus regret", sd_vs_rm().unwrap()),
        ("staircase n=5", staircase(5).unwrap()),
        ("generalized coordination", gencoord().unwrap()),
    ];
    for (name, g) in &games {
        println!("== {}", name);
        print!("{}", compare(g).to_text(g, 6));
        println!();
    }
    let g = gencoord().unwrap();
    let rd = risk_dominance(&g).unwrap();
    println!(
        "generalized coordination: deviation-loss products {} (a,a) vs {} (b,b), risk dominant {:?}",
        rd.products.0, rd.products.1, rd.winner
    );
}
