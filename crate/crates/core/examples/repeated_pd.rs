//! Finitely repeated prisoner's dilemma: the tit-for-tat-until-k family and
//! the exact regret of always defecting.

use regretlab::rational::int;
use regretlab::repeated_pd::{always_defect_regret, tft_analysis};

fn main() {
    let (u1, u2, u3) = (int(1), int(3), int(4));
    let n = 20;
    let a = tft_analysis(n, &u1, &u2, &u3).unwrap();
    println!("plans s0..s{}: s_k plays tit for tat and defects from round k on", n);
    let regrets: Vec<String> = a.max_regret.iter().enumerate().map(|(k, r)| format!("s{}:{}", k, r)).collect();
    println!("max regret  {}", regrets.join(" "));
    println!("minimizers  {:?} with regret {}", a.argmin.iter().map(|k| format!("s{}", k)).collect::<Vec<_>>(), a.minregret);
    println!("mixtures    {} at {}", a.mixed_minregret, a.mixed_witness.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","));
    println!("closed-form disagreements: {} pairwise, {} maxima", a.pair_discrepancies.len(), a.max_discrepancies.len());
    for rounds in 1..=3 {
        let r = always_defect_regret(rounds, &u1, &u2, &u3).unwrap();
        println!(
            "always defect over {} round(s): regret {} (witness {}), formulas {} / {}",
            rounds, r.regret, r.witness_label, r.statement_formula, r.proof_formula
        );
    }
}
