//! Pure-strategy regret and the iterated regret-minimization operator RM.

use crate::game::{Game, GameError};
use crate::rational::{zero, Rational};
use crate::space::{DeletionTrace, PureSpace};
use serde_json::{json, Value};

/// Maximum regrets of player `player`'s strategies in `S_i` relative to `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegretReport {
    pub player: usize,
    /// `(action, max regret)` for each member of `S_i`, in action order.
    pub regrets: Vec<(usize, Rational)>,
    pub minregret: Rational,
    pub argmin: Vec<usize>,
}

impl RegretReport {
    pub fn regret_of(&self, action: usize) -> Option<&Rational> {
        self.regrets.iter().find(|(a, _)| *a == action).map(|(_, r)| r)
    }

    pub fn to_json(&self, g: &Game) -> Value {
        let p = self.player;
        json!({
            "player": p,
            "regrets": self.regrets.iter()
                .map(|(a, r)| json!([g.label(p, *a), r.to_string()]))
                .collect::<Vec<_>>(),
            "minregret": self.minregret.to_string(),
            "argmin": self.argmin.iter().map(|&a| g.label(p, a)).collect::<Vec<_>>(),
        })
    }
}

pub type RmTrace = DeletionTrace<PureSpace, Vec<RegretReport>>;

fn check_member(space: &PureSpace, player: usize, action: usize) -> Result<(), GameError> {
    if player >= space.players() || !space.contains(player, action) {
        return Err(GameError::InvalidParameter(format!(
            "action {} is not in player {}'s set",
            action, player
        )));
    }
    Ok(())
}

/// `u_i^{S_i}(opp) - u_i(a, opp)`, where `opp` is a full profile whose
/// entry `player` is ignored.
pub fn conditional_regret(
    g: &Game,
    space: &PureSpace,
    player: usize,
    action: usize,
    opp: &[usize],
) -> Result<Rational, GameError> {
    check_member(space, player, action)?;
    g.check_profile(opp)?;
    for (j, &b) in opp.iter().enumerate() {
        if j != player {
            check_member(space, j, b)?;
        }
    }
    let mut profile = opp.to_vec();
    let mut best: Option<Rational> = None;
    for &a in space.set(player) {
        profile[player] = a;
        let u = g.payoff(&profile, player);
        if best.as_ref().map_or(true, |b| u > b) {
            best = Some(u.clone());
        }
    }
    profile[player] = action;
    Ok(best.unwrap() - g.payoff(&profile, player))
}

/// `regret_i^S(a)`: worst conditional regret over `S_{-i}`.
pub fn max_regret(g: &Game, space: &PureSpace, player: usize, action: usize) -> Result<Rational, GameError> {
    check_member(space, player, action)?;
    Ok(regrets(g, space, player)
        .into_iter()
        .find(|(a, _)| *a == action)
        .unwrap()
        .1)
}

/// Maximum regret of every member of `S_i`.
///
/// One pass over `S_{-i}`: for each opponent profile compute the best payoff in
/// `S_i` once, then update every action's running maximum.
fn regrets(g: &Game, space: &PureSpace, player: usize) -> Vec<(usize, Rational)> {
    let own = space.set(player);
    let mut worst = vec![zero(); own.len()];
    let mut payoffs: Vec<&Rational> = Vec::with_capacity(own.len());
    space.for_each_opponent_profile(player, |p| {
        let mut profile = p.to_vec();
        payoffs.clear();
        for &a in own {
            profile[player] = a;
            payoffs.push(g.payoff(&profile, player));
        }
        let best = *payoffs.iter().max().unwrap();
        for (w, u) in worst.iter_mut().zip(&payoffs) {
            if best > *u {
                let r = best - *u;
                if r > *w {
                    *w = r;
                }
            }
        }
    });
    own.iter().copied().zip(worst).collect()
}

pub fn regret_report(g: &Game, space: &PureSpace, player: usize) -> RegretReport {
    let regrets = regrets(g, space, player);
    let minregret = regrets.iter().map(|(_, r)| r).min().unwrap().clone();
    let argmin = regrets
        .iter()
        .filter(|(_, r)| *r == minregret)
        .map(|(a, _)| *a)
        .collect();
    RegretReport {
        player,
        regrets,
        minregret,
        argmin,
    }
}

/// One application of RM: every player keeps exactly their regret minimizers.
pub fn rm_step(g: &Game, space: &PureSpace) -> (PureSpace, Vec<RegretReport>) {
    let reports: Vec<RegretReport> = (0..g.players()).map(|i| regret_report(g, space, i)).collect();
    let sets = reports.iter().map(|r| r.argmin.clone()).collect();
    let next = PureSpace::new(g, sets).expect("argmin sets are nonempty subsets");
    (next, reports)
}

/// Iterates RM from `space0` to its fixed point.
pub fn rm_iterate(g: &Game, space0: &PureSpace) -> RmTrace {
    match DeletionTrace::iterate("RM", space0.clone(), None, |s| {
        Ok::<_, std::convert::Infallible>(rm_step(g, s))
    }) {
        Ok(t) => t,
        Err(_) => unreachable!("RM on finite sets always reaches a fixed point"),
    }
}

/// `RM^k(space0)`, computed by `k` applications.
pub fn rm_power(g: &Game, space0: &PureSpace, k: usize) -> PureSpace {
    let mut s = space0.clone();
    for _ in 0..k {
        s = rm_step(g, &s).0;
    }
    s
}

/// Actions that are weakly best against every opponent profile in `A_{-i}`.
pub fn dominant_actions(g: &Game, player: usize) -> Vec<usize> {
    let full = PureSpace::full(g);
    regrets(g, &full, player)
        .into_iter()
        .filter(|(_, r)| *r == zero())
        .map(|(a, _)| a)
        .collect()
}

pub fn trace_to_json(g: &Game, t: &RmTrace) -> Value {
    t.to_json(
        "regrets",
        |s| s.to_json(g),
        |m| Value::Array(m.iter().map(|r| r.to_json(g)).collect()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::int;

    fn idx(g: &Game, i: usize, l: &str) -> usize {
        g.action_index(i, l).unwrap()
    }

    #[test]
    fn conditional_regrets_in_travelers_dilemma() {
        let g = travelers_dilemma(2, 2, 100).unwrap();
        let s = PureSpace::full(&g);
        let opp = vec![0, idx(&g, 1, "100")];
        assert_eq!(conditional_regret(&g, &s, 0, idx(&g, 0, "100"), &opp).unwrap(), int(1));
        assert_eq!(conditional_regret(&g, &s, 0, idx(&g, 0, "2"), &opp).unwrap(), int(97));
        assert_eq!(conditional_regret(&g, &s, 0, idx(&g, 0, "99"), &opp).unwrap(), int(0));
    }

    #[test]
    fn max_regrets_from_the_examples() {
        let td = travelers_dilemma(2, 2, 100).unwrap();
        let s = PureSpace::full(&td);
        for m in 96..=100 {
            assert_eq!(max_regret(&td, &s, 0, idx(&td, 0, &m.to_string())).unwrap(), int(3));
        }
        let b = bertrand().unwrap();
        assert_eq!(max_regret(&b, &PureSpace::full(&b), 0, 100).unwrap(), int(9900));
        let n = bargaining().unwrap();
        assert_eq!(max_regret(&n, &PureSpace::full(&n), 0, 50).unwrap(), int(50));
    }

    #[test]
    fn membership_is_checked() {
        let g = travelers_dilemma(2, 2, 100).unwrap();
        let s = rm_step(&g, &PureSpace::full(&g)).0;
        assert!(max_regret(&g, &s, 0, 0).is_err());
        assert!(conditional_regret(&g, &s, 0, 98, &[0, 0]).is_err());
    }

    #[test]
    fn travelers_dilemma_rounds() {
        let g = travelers_dilemma(2, 2, 100).unwrap();
        let t = rm_iterate(&g, &PureSpace::full(&g));
        let top: &[&str] = &["96", "97", "98", "99", "100"];
        let r1 = PureSpace::from_labels(&g, &[top, top]).unwrap();
        assert_eq!(t.space(1), &r1);
        assert_eq!(t.fixed_point, PureSpace::from_labels(&g, &[&["97"], &["97"]]).unwrap());
        assert_eq!(t.rounds_of_change(), 2);
    }

    #[test]
    fn hawk_dove_and_pd() {
        let hd = hawk_dove(&int(2), &int(3), &int(4)).unwrap();
        let (s, reports) = rm_step(&hd, &PureSpace::full(&hd));
        assert_eq!(s, PureSpace::from_labels(&hd, &[&["d"], &["d"]]).unwrap());
        assert_eq!(reports[0].minregret, int(1));
        // regret(h) = a, so d is the unique minimizer only when c - b < a.
        let tie = hawk_dove(&int(1), &int(2), &int(3)).unwrap();
        assert_eq!(rm_step(&tie, &PureSpace::full(&tie)).0, PureSpace::full(&tie));
        let pd = pd(&int(1), &int(3), &int(4)).unwrap();
        assert_eq!(dominant_actions(&pd, 0), vec![1]);
        assert_eq!(dominant_actions(&travelers_dilemma(2, 2, 100).unwrap(), 0), Vec::<usize>::new());
    }

    #[test]
    fn iterated_examples() {
        let b = bertrand().unwrap();
        assert_eq!(rm_iterate(&b, &PureSpace::full(&b)).fixed_point.set(0), &[100]);
        let n = bargaining().unwrap();
        assert_eq!(rm_iterate(&n, &PureSpace::full(&n)).fixed_point.set(1), &[50]);
        let mp = asym_matching_pennies().unwrap();
        let t = rm_iterate(&mp, &PureSpace::full(&mp));
        assert_eq!(t.fixed_point, PureSpace::from_labels(&mp, &[&["a"], &["b"]]).unwrap());
        assert_eq!(t.rounds_of_change(), 2);
        let st = staircase(4).unwrap();
        let t = rm_iterate(&st, &PureSpace::full(&st));
        assert_eq!(t.rounds_of_change(), 3);
        assert_eq!(t.fixed_point.set(0), &[0]);
    }

    #[test]
    fn centipede_round_one_payoff_of_the_second_player_is_irrelevant() {
        let g = centipede(10, &CentipedePayoffs::Exponential).unwrap();
        let bumped = Game::from_fn(vec![g.labels(0).to_vec(), g.labels(1).to_vec()], |p| {
            let mut u = g.utility(p).unwrap();
            if p[0] == 0 {
                u[1] = int(2);
            }
            u
        })
        .unwrap();
        let full = PureSpace::full(&g);
        assert_eq!(rm_step(&g, &full).1, rm_step(&bumped, &full).1);
        assert_eq!(rm_iterate(&g, &full).fixed_point, rm_iterate(&bumped, &full).fixed_point);
    }

    #[test]
    fn single_action_game_is_already_fixed() {
        let g = Game::new(vec![vec!["x".into()], vec!["y".into()]], vec![vec![int(1), int(2)]]).unwrap();
        let t = rm_iterate(&g, &PureSpace::full(&g));
        assert_eq!(t.rounds_of_change(), 0);
        assert_eq!(dominant_actions(&g, 0), vec![0]);
    }

    #[test]
    fn trace_json_shape() {
        let g = sd_vs_rm().unwrap();
        let v = trace_to_json(&g, &rm_iterate(&g, &PureSpace::full(&g)));
        assert_eq!(v["operator"], "RM");
        assert_eq!(v["fixed_point"], json!([["b"], ["x"]]));
        assert_eq!(v["rounds"][0]["regrets"][0]["minregret"], "0");
    }
}
