//! Sealed-bid auctions as Bayesian games, and desk-scale probes of the
//! revenue/regret tradeoff for truthful mechanisms.

use crate::bayes::BayesianGame;
use crate::game::GameError;
use crate::rational::{int, ratio, zero, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuctionKind {
    FirstPrice,
    SecondPrice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prior {
    /// Uniform over all valuation profiles.
    Uniform,
    /// Probabilities over valuation profiles, last player fastest.
    Explicit(Vec<Rational>),
}

/// Winner and price for integer bids. Ties go to the lower index; nothing is
/// sold when every bid is zero.
pub fn auction_outcome(kind: AuctionKind, bids: &[i64]) -> Option<(usize, i64)> {
    let top = *bids.iter().max()?;
    if top <= 0 {
        return None;
    }
    let winner = bids.iter().position(|&b| b == top).unwrap();
    let price = match kind {
        AuctionKind::FirstPrice => top,
        AuctionKind::SecondPrice => bids
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != winner)
            .map(|(_, &b)| b)
            .max()
            .unwrap_or(0),
    };
    Some((winner, price))
}

/// Bids `0..=max_bid`; types are the listed valuations. The winner gets
/// valuation minus price, everyone else 0.
pub fn make_auction(kind: AuctionKind, valuations: &[Vec<i64>], prior: Prior, max_bid: i64) -> Result<BayesianGame, GameError> {
    if valuations.len() < 2 {
        return Err(GameError::InvalidParameter("an auction needs at least two bidders".into()));
    }
    for (i, vs) in valuations.iter().enumerate() {
        if let Some(v) = vs.iter().find(|&&v| v <= 0 || v % 2 != 0 || v > max_bid) {
            return Err(GameError::InvalidParameter(format!(
                "bidder {} valuation {} must be a positive even integer at most {}",
                i, v, max_bid
            )));
        }
    }
    let types: Vec<Vec<String>> = valuations.iter().map(|vs| vs.iter().map(|v| v.to_string()).collect()).collect();
    let count: usize = valuations.iter().map(|v| v.len()).product();
    let prior = match prior {
        Prior::Uniform => vec![ratio(1, count as i64); count],
        Prior::Explicit(p) => p,
    };
    let bids: Vec<String> = (0..=max_bid).map(|b| b.to_string()).collect();
    let n = valuations.len();
    BayesianGame::from_fn(types, prior, vec![bids; n], |t, a| {
        let b: Vec<i64> = a.iter().map(|&x| x as i64).collect();
        let mut u = vec![zero(); n];
        if let Some((w, price)) = auction_outcome(kind, &b) {
            u[w] = int(valuations[w][t[w]] - price);
        }
        u
    })
}

/// `max(v' - 1, v - v' - 1)`: first-price regret of bid `v'` at valuation `v`.
pub fn first_price_regret_formula(v: i64, bid: i64) -> i64 {
    (bid - 1).max(v - bid - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub v: i64,
    /// `r v - 1`, the regret any qualifying mechanism forces on a truthful bid.
    pub forced_regret: Rational,
    /// Brute-force regret of bidding `v` when the winner pays `r` times their bid.
    pub minimal_rule_regret: Rational,
    /// `max(α v, v - r α v)` with `α = 1/(r+1)`.
    pub alpha_bound: Rational,
    /// Whether `v/(r+1) >= r v - 1`.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub r: Rational,
    pub alpha: Rational,
    pub v_max: i64,
    pub rows: Vec<ProbeRow>,
    /// Smallest enumerated `v` where the consistency inequality fails.
    pub first_violation: Option<i64>,
    /// Whether `r^2 + r < 1`, i.e. the inequality holds for every `v`.
    pub below_threshold: bool,
}

/// Regret of bidder 0 bidding `bid` at valuation `v` when the winner pays
/// `r` times their own bid, against opponent bids `0..=v_max`.
fn proportional_rule_regret(r: &Rational, v: i64, bid: i64, v_max: i64) -> Rational {
    let utility = |mine: i64, other: i64| -> Rational {
        match auction_outcome(AuctionKind::FirstPrice, &[mine, other]) {
            Some((0, _)) => int(v) - r * int(mine),
            _ => zero(),
        }
    };
    (0..=v_max)
        .map(|other| {
            let best = (0..=v_max).map(|b| utility(b, other)).max().unwrap();
            best - utility(bid, other)
        })
        .max()
        .unwrap()
}

pub fn mechanism_bound_probe(r: &Rational, v_max: i64) -> Result<ProbeReport, GameError> {
    probe(r, v_max, true)
}

fn probe(r: &Rational, v_max: i64, brute_force: bool) -> Result<ProbeReport, GameError> {
    if *r <= zero() || *r >= int(1) {
        return Err(GameError::InvalidParameter("r must lie strictly between 0 and 1".into()));
    }
    if v_max < 1 {
        return Err(GameError::InvalidParameter("v_max must be positive".into()));
    }
    let alpha = int(1) / (r + int(1));
    let rows: Vec<ProbeRow> = (1..=v_max)
        .map(|v| {
            let vr = int(v);
            let forced_regret = r * &vr - int(1);
            let alpha_bound = (&alpha * &vr).max(&vr - r * &alpha * &vr);
            ProbeRow {
                v,
                consistent: &vr / (r + int(1)) >= forced_regret,
                minimal_rule_regret: if brute_force {
                    proportional_rule_regret(r, v, v, v_max)
                } else {
                    zero()
                },
                forced_regret,
                alpha_bound,
            }
        })
        .collect();
    let first_violation = rows.iter().find(|x| !x.consistent).map(|x| x.v);
    Ok(ProbeReport {
        below_threshold: r * r + r < int(1),
        r: r.clone(),
        alpha,
        v_max,
        rows,
        first_violation,
    })
}

/// Sweeps `r = k/100` for `k` in `range`, returning each `r` with its first
/// violation and whether it lies below the threshold.
pub fn threshold_sweep(range: std::ops::RangeInclusive<i64>, v_max: i64) -> Vec<(Rational, Option<i64>, bool)> {
    range
        .map(|k| {
            let r = ratio(k, 100);
            let rep = probe(&r, v_max, false).expect("k/100 lies in (0,1)");
            (r, rep.first_violation, rep.below_threshold)
        })
        .collect()
}

impl ProbeReport {
    pub fn row(&self, v: i64) -> Option<&ProbeRow> {
        self.rows.iter().find(|x| x.v == v)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r.to_string(),
            "alpha": self.alpha.to_string(),
            "v_max": self.v_max,
            "below_threshold": self.below_threshold,
            "first_violation": self.first_violation,
            "rows": self.rows.iter().map(|x| json!({
                "v": x.v,
                "forced_regret": x.forced_regret.to_string(),
                "minimal_rule_regret": x.minimal_rule_regret.to_string(),
                "alpha_bound": x.alpha_bound.to_string(),
                "consistent": x.consistent,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Bundle valuations: `values[i][mask]` for every nonempty subset `mask` of
/// the items (index 0, the empty bundle, is ignored and treated as 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialInstance {
    pub items: usize,
    pub values: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialOutcome {
    pub revenue: Rational,
    pub msw: Rational,
    /// Bundle mask per bidder in the revenue-maximizing allocation.
    pub allocation: Vec<usize>,
}

/// Best total of `value(i, bundle_i)` over all assignments of items to
/// bidders or to nobody; ties keep the first allocation found.
fn best_allocation(bidders: usize, items: usize, value: impl Fn(usize, usize) -> Rational) -> (Rational, Vec<usize>) {
    let choices = bidders + 1;
    let total = choices.pow(items as u32);
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for code in 0..total {
        let mut bundles = vec![0usize; bidders];
        let mut c = code;
        for item in 0..items {
            let owner = c % choices;
            c /= choices;
            if owner < bidders {
                bundles[owner] |= 1 << item;
            }
        }
        let sum: Rational = bundles
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| value(i, m))
            .sum();
        if best.as_ref().map_or(true, |(b, _)| sum > *b) {
            best = Some((sum, bundles));
        }
    }
    best.unwrap()
}

/// Every bidder bids half their value on each bundle; the seller picks the
/// revenue-maximizing allocation and winners pay their bids.
pub fn combinatorial_first_price_revenue(inst: &CombinatorialInstance) -> Result<CombinatorialOutcome, GameError> {
    let n = inst.values.len();
    if n == 0 || n > 3 || inst.items == 0 || inst.items > 3 {
        return Err(GameError::TooLarge("at most 3 bidders and 3 items".into()));
    }
    let bundles = 1usize << inst.items;
    if inst.values.iter().any(|v| v.len() != bundles) {
        return Err(GameError::InvalidParameter(format!("each bidder needs {} bundle values", bundles)));
    }
    let half = ratio(1, 2);
    let (revenue, allocation) = best_allocation(n, inst.items, |i, m| &inst.values[i][m] * &half);
    let (msw, _) = best_allocation(n, inst.items, |i, m| inst.values[i][m].clone());
    Ok(CombinatorialOutcome { revenue, msw, allocation })
}

/// Checks revenue >= MSW/2 on every 2-bidder, 2-item instance with integer
/// bundle values in `0..=max_value`. Returns the number of instances and the
/// first counterexample, if any.
pub fn exhaustive_half_bid_check(max_value: i64) -> (usize, Option<CombinatorialInstance>) {
    let per = (max_value + 1) as usize;
    let slots = 6u32;
    let total = per.pow(slots);
    for code in 0..total {
        let mut c = code;
        let mut digits = [0i64; 6];
        for d in digits.iter_mut() {
            *d = (c % per) as i64;
            c /= per;
        }
        let values = vec![
            vec![zero(), int(digits[0]), int(digits[1]), int(digits[2])],
            vec![zero(), int(digits[3]), int(digits[4]), int(digits[5])],
        ];
        let inst = CombinatorialInstance { items: 2, values };
        let out = combinatorial_first_price_revenue(&inst).expect("2x2 instance");
        if out.revenue * int(2) < out.msw {
            return (code + 1, Some(inst));
        }
    }
    (total, None)
}

/// Decimal approximation of the golden-ratio threshold, for reports only.
pub fn threshold_decimal() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayes::*;

    fn even(up_to: i64) -> Vec<i64> {
        (1..=up_to / 2).map(|k| 2 * k).collect()
    }

    #[test]
    fn outcomes_and_payments() {
        assert_eq!(auction_outcome(AuctionKind::SecondPrice, &[5, 3]), Some((0, 3)));
        assert_eq!(auction_outcome(AuctionKind::FirstPrice, &[4, 4]), Some((0, 4)));
        assert_eq!(auction_outcome(AuctionKind::FirstPrice, &[0, 0]), None);
        let bg = make_auction(AuctionKind::SecondPrice, &[vec![8], vec![2]], Prior::Uniform, 10).unwrap();
        assert_eq!(bg.utility(&[0, 0], &[5, 3], 0), &int(5));
        assert!(make_auction(AuctionKind::FirstPrice, &[vec![3], vec![2]], Prior::Uniform, 10).is_err());
    }

    #[test]
    fn first_price_regret_formula_holds() {
        let vals = even(12);
        let bg = make_auction(AuctionKind::FirstPrice, &[vals.clone(), vals.clone()], Prior::Uniform, 12).unwrap();
        let full = TypedSpace::full(&bg);
        for (t, &v) in vals.iter().enumerate() {
            for bid in 0..=12 {
                for i in 0..2 {
                    let r = expected_regret(&bg, &full, i, t, bid as usize).unwrap();
                    assert_eq!(r, int(first_price_regret_formula(v, bid)), "player {} v {} bid {}", i, v, bid);
                }
            }
        }
    }

    #[test]
    fn second_price_truthful_has_zero_regret() {
        let vals = even(8);
        let bg = make_auction(AuctionKind::SecondPrice, &[vals.clone(), vals.clone()], Prior::Uniform, 8).unwrap();
        let full = TypedSpace::full(&bg);
        for (t, &v) in vals.iter().enumerate() {
            assert_eq!(expected_regret(&bg, &full, 1, t, v as usize).unwrap(), zero());
        }
        let fixed = rm_bayes_iterate(&bg, &full).fixed_point;
        for (t, &v) in vals.iter().enumerate() {
            assert!(fixed.contains(0, t, v as usize));
        }
    }

    #[test]
    fn conditional_and_unconditional_agree() {
        let vals = even(6);
        let p = Prior::Explicit(vec![ratio(1, 12), ratio(1, 6), ratio(1, 12), ratio(1, 6), ratio(1, 12), ratio(1, 12), ratio(1, 12), ratio(1, 6), ratio(1, 12)]);
        let bg = make_auction(AuctionKind::FirstPrice, &[vals.clone(), vals.clone()], p, 6).unwrap();
        let full = TypedSpace::full(&bg);
        let sigma = TypedStrategy::new(&bg, 0, vec![1, 2, 3]).unwrap();
        let direct = unconditional_regret(&bg, &full, &sigma);
        let weighted: Rational = (0..3)
            .map(|t| bg.marginal(0, t) * expected_regret(&bg, &full, 0, t, sigma.actions[t]).unwrap())
            .sum();
        assert_eq!(direct, weighted);
    }

    #[test]
    fn probe_examples() {
        let rep = mechanism_bound_probe(&ratio(1, 2), 100).unwrap();
        assert_eq!(rep.row(100).unwrap().forced_regret, int(49));
        assert!(rep.row(100).unwrap().minimal_rule_regret >= int(49));
        assert_eq!(rep.row(90).unwrap().alpha_bound, int(60));
        assert!(rep.below_threshold && rep.first_violation.is_none());
        let high = mechanism_bound_probe(&ratio(63, 100), 100).unwrap();
        assert_eq!(high.first_violation, Some(61));
        let sweep = threshold_sweep(50..=70, 100);
        let first = sweep.iter().find(|(_, v, _)| v.is_some()).unwrap();
        assert_eq!(first.0, ratio(63, 100));
        let flip = sweep.iter().find(|(_, _, below)| !below).unwrap();
        assert_eq!(flip.0, ratio(62, 100));
    }

    #[test]
    fn combinatorial_half_bids() {
        let one_item = CombinatorialInstance { items: 1, values: vec![vec![zero(), int(10)], vec![zero(), int(6)]] };
        let out = combinatorial_first_price_revenue(&one_item).unwrap();
        assert_eq!((out.revenue, out.msw), (int(5), int(10)));
        assert_eq!(exhaustive_half_bid_check(2), (729, None));
    }
}
