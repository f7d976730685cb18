//! Desk-scale probes of the revenue/regret tradeoff for truthful mechanisms
//! and of half-bidding in combinatorial first-price auctions.

use regretlab::auctions::{
    combinatorial_first_price_revenue, exhaustive_half_bid_check, mechanism_bound_probe, threshold_decimal,
    threshold_sweep, CombinatorialInstance,
};
use regretlab::rational::{int, ratio, zero};

fn main() {
    let rep = mechanism_bound_probe(&ratio(1, 2), 100).unwrap();
    println!("r = 1/2, alpha = {}", rep.alpha);
    for v in [2, 10, 50, 100] {
        let row = rep.row(v).unwrap();
        println!(
            "  v={:>3}: forced regret {}, regret when paying r*bid {}, alpha bound {}",
            v, row.forced_regret, row.minimal_rule_regret, row.alpha_bound
        );
    }
    println!("threshold (sqrt 5 - 1)/2 = {:.4}", threshold_decimal());
    for (r, first, below) in threshold_sweep(58..=66, 100) {
        println!("  r={:<7} below threshold: {:<5} first violation: {:?}", r.to_string(), below, first);
    }
    let inst = CombinatorialInstance {
        items: 1,
        values: vec![vec![zero(), int(10)], vec![zero(), int(6)]],
    };
    let out = combinatorial_first_price_revenue(&inst).unwrap();
    println!("one item, values 10 and 6: revenue {} and welfare {}", out.revenue, out.msw);
    let (count, counterexample) = exhaustive_half_bid_check(4);
    println!("2 bidders x 2 items, values 0..=4: {} instances, counterexample {:?}", count, counterexample);
}
