//! First- and second-price sealed-bid auctions as Bayesian games.

use regretlab::auctions::{first_price_regret_formula, make_auction, AuctionKind, Prior};
use regretlab::bayes::{rm_bayes_iterate, TypedSpace};

fn main() {
    let values = vec![2, 4, 6, 8, 10];
    for kind in [AuctionKind::FirstPrice, AuctionKind::SecondPrice] {
        let bg = make_auction(kind, &[values.clone(), values.clone()], Prior::Uniform, 10).unwrap();
        let trace = rm_bayes_iterate(&bg, &TypedSpace::full(&bg));
        println!("== {:?}, valuations {:?}, bids 0..=10", kind, values);
        for rep in trace.rounds[0].meta.iter().filter(|r| r.player == 0) {
            let v: i64 = bg.types(0)[rep.type_index].parse().unwrap();
            let bids: Vec<usize> = rep.argmin.clone();
            let formula = if kind == AuctionKind::FirstPrice {
                format!(" (closed form at v/2: {})", first_price_regret_formula(v, v / 2))
            } else {
                String::new()
            };
            println!("  value {:>2}: regret-minimizing bids {:?}, expected regret {}{}", v, bids, rep.minregret, formula);
        }
        println!("  fixed point after {} round(s) of change", trace.rounds_of_change());
    }
}
