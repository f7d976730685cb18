//! Centipede in both payoff modes. Actions are stopping rounds; the class
//! `[never]` groups the strategies of the player who never has to stop.

use regretlab::generators::{centipede, CentipedePayoffs};
use regretlab::rational::int;
use regretlab::regret_pure::{regret_report, rm_iterate};
use regretlab::space::PureSpace;

fn main() {
    let cases = [
        ("exponential, 10 rounds", 10, CentipedePayoffs::Exponential),
        ("linear p=2, 10 rounds", 10, CentipedePayoffs::Linear(int(2))),
        ("linear p=3, 9 rounds", 9, CentipedePayoffs::Linear(int(3))),
    ];
    for (name, k, payoffs) in cases {
        let g = centipede(k, &payoffs).unwrap();
        let full = PureSpace::full(&g);
        println!("== {}", name);
        for i in 0..2 {
            let r = regret_report(&g, &full, i);
            let row: Vec<String> = r.regrets.iter().map(|(a, x)| format!("{}:{}", g.label(i, *a), x)).collect();
            println!("player {} regrets  {}", i + 1, row.join("  "));
        }
        let t = rm_iterate(&g, &full);
        println!("fixed point after {} round(s): {}\n", t.rounds_of_change(), t.fixed_point.describe(&g));
    }
}
