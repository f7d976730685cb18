//! Rationality with respect to lexicographic beliefs, and the identity
//! between justifiable beliefs and rounds of RM.

use regretlab::beliefs::{justifiable_belief, justifiable_identity_holds, rational_wrt, LexBelief};
use regretlab::generators::{bertrand, travelers_dilemma};

fn main() {
    let g = travelers_dilemma(2, 2, 100).unwrap();
    let belief = justifiable_belief(&g, 2);
    for (k, level) in belief.levels.iter().enumerate() {
        println!("level {}: {}", k, if level.size() > 30 { format!("{} profiles", level.size()) } else { level.describe(&g) });
    }
    let first_two = LexBelief { levels: belief.levels[..2].to_vec() };
    for claim in ["97", "98", "100"] {
        let a = g.action_index(0, claim).unwrap();
        let (ok, trace) = rational_wrt(&g, 0, a, &first_two);
        match trace.first_failure {
            None => println!("claim {}: rational ({})", claim, ok),
            Some(k) => println!("claim {}: excluded at level {}", claim, k),
        }
    }
    for (name, g) in [("Traveler's Dilemma", g.clone()), ("Bertrand", bertrand().unwrap())] {
        let ok = (0..=3).all(|k| justifiable_identity_holds(&g, k));
        println!("{}: rational under the k-level justifiable belief = RM^k for k <= 3: {}", name, ok);
    }
}
