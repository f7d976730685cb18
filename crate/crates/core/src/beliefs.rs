//! Lexicographic beliefs, rationality with respect to them, and the
//! prior-belief variant of regret minimization.
//!
//! A belief is a sequence of profile spaces `S^0, S^1, ...`. A strategy is
//! rational for player `i` when it survives the nested filtering
//! `T^0 ⊇ T^1 ⊇ ...`, where `T^0_i` minimizes regret against `S^0_{-i}` over
//! all of player `i`'s strategies and `T^k_i` keeps the members of
//! `T^{k-1}_i` with least regret against `S^k_{-i}`. Regret against `S^k`
//! measures the best reply inside `S^k_i`, as in the RM operator.

use crate::game::{Game, MixedStrategy};
use crate::polytope::Polytope;
use crate::rational::{zero, Rational};
use crate::regret_mixed::{argmin_over, regret_rows, rm_mixed_step, MixedError, MixedSpace};
use crate::regret_pure::{rm_power, rm_step};
use crate::space::PureSpace;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexBelief<S> {
    pub levels: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalityTrace<S> {
    /// `T^0, T^1, ...`, one per belief level.
    pub t_sets: Vec<S>,
    /// Index of the first `T^k` that excludes the strategy, if any.
    pub first_failure: Option<usize>,
}

/// Regret of each listed action against `space`, best reply within `S_i`.
/// The actions need not lie in `S_i`.
fn pure_regrets(g: &Game, space: &PureSpace, i: usize, candidates: &[usize]) -> Vec<Rational> {
    let mut worst: Vec<Option<Rational>> = vec![None; candidates.len()];
    space.for_each_opponent_profile(i, |p| {
        let mut q = p.to_vec();
        let best = space
            .set(i)
            .iter()
            .map(|&b| {
                q[i] = b;
                g.payoff(&q, i).clone()
            })
            .max()
            .unwrap();
        for (w, &a) in worst.iter_mut().zip(candidates) {
            q[i] = a;
            let r = &best - g.payoff(&q, i);
            if w.as_ref().map_or(true, |x| r > *x) {
                *w = Some(r);
            }
        }
    });
    worst.into_iter().map(|w| w.unwrap_or_else(zero)).collect()
}

fn least(candidates: &[usize], regrets: &[Rational]) -> Vec<usize> {
    let m = regrets.iter().min().unwrap();
    candidates
        .iter()
        .zip(regrets)
        .filter(|(_, r)| *r == m)
        .map(|(&a, _)| a)
        .collect()
}

/// The `T`-sets of a pure belief; `T^k` is empty-free by construction.
pub fn rationality_sets(g: &Game, belief: &LexBelief<PureSpace>) -> Vec<PureSpace> {
    let mut out: Vec<PureSpace> = Vec::with_capacity(belief.levels.len());
    for (k, level) in belief.levels.iter().enumerate() {
        let sets = (0..g.players())
            .map(|i| {
                let candidates: Vec<usize> = match out.last() {
                    Some(prev) => prev.set(i).to_vec(),
                    None => (0..g.num_actions(i)).collect(),
                };
                let regrets = pure_regrets(g, level, i, &candidates);
                least(&candidates, &regrets)
            })
            .collect();
        out.push(PureSpace::new(g, sets).unwrap_or_else(|e| panic!("level {}: {}", k, e)));
    }
    out
}

/// The strategies rational with respect to `belief`; everything when it is empty.
pub fn rational_set(g: &Game, belief: &LexBelief<PureSpace>) -> PureSpace {
    rationality_sets(g, belief).pop().unwrap_or_else(|| PureSpace::full(g))
}

pub fn rational_wrt(g: &Game, i: usize, action: usize, belief: &LexBelief<PureSpace>) -> (bool, RationalityTrace<PureSpace>) {
    let t_sets = rationality_sets(g, belief);
    let first_failure = t_sets.iter().position(|t| !t.contains(i, action));
    (first_failure.is_none(), RationalityTrace { t_sets, first_failure })
}

/// Mixed-mode `T`-sets, each player's set a polytope.
pub fn rationality_sets_mixed(g: &Game, belief: &LexBelief<MixedSpace>, cap: usize) -> Result<Vec<MixedSpace>, MixedError> {
    let mut out: Vec<MixedSpace> = Vec::with_capacity(belief.levels.len());
    for level in &belief.levels {
        let mut polytopes = Vec::with_capacity(g.players());
        for i in 0..g.players() {
            let candidates = match out.last() {
                Some(prev) => prev.polytope(i).clone(),
                None => Polytope::simplex(i, g.num_actions(i)),
            };
            let rows = regret_rows(g, level, i);
            polytopes.push(argmin_over(&candidates, &rows, cap)?.0);
        }
        out.push(MixedSpace::new(g, polytopes)?);
    }
    Ok(out)
}

pub fn rational_wrt_mixed(
    g: &Game,
    sigma: &MixedStrategy,
    belief: &LexBelief<MixedSpace>,
    cap: usize,
) -> Result<(bool, RationalityTrace<MixedSpace>), MixedError> {
    sigma.check_for(g, sigma.owner)?;
    let t_sets = rationality_sets_mixed(g, belief, cap)?;
    let first_failure = t_sets.iter().position(|t| !t.polytope(sigma.owner).contains(&sigma.weights));
    Ok((first_failure.is_none(), RationalityTrace { t_sets, first_failure }))
}

/// Levels `S, RM(S), ..., RM^k(S)` from the full pure space.
pub fn justifiable_belief(g: &Game, k: usize) -> LexBelief<PureSpace> {
    let mut levels = vec![PureSpace::full(g)];
    for _ in 0..k {
        let next = rm_step(g, levels.last().unwrap()).0;
        levels.push(next);
    }
    LexBelief { levels }
}

/// Mixed-mode counterpart of [`justifiable_belief`].
pub fn justifiable_belief_mixed(g: &Game, k: usize, cap: usize) -> Result<LexBelief<MixedSpace>, MixedError> {
    let mut levels = vec![MixedSpace::full(g)];
    for _ in 0..k {
        let next = rm_mixed_step(g, levels.last().unwrap(), cap)?.0;
        levels.push(next);
    }
    Ok(LexBelief { levels })
}

/// Checks that the strategies rational with respect to the first `k` levels
/// of the justifiable belief are exactly `RM^k` of the full space.
pub fn justifiable_identity_holds(g: &Game, k: usize) -> bool {
    let belief = justifiable_belief(g, k);
    let prefix = LexBelief { levels: belief.levels[..k].to_vec() };
    rational_set(g, &prefix) == rm_power(g, &PureSpace::full(g), k)
}

/// Per-player belief spaces: player `i` reasons inside `per_player[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefProfile<S> {
    pub per_player: Vec<S>,
}

impl BeliefProfile<PureSpace> {
    /// RM applied independently inside each player's belief space.
    pub fn rm_prime_step(&self, g: &Game) -> BeliefProfile<PureSpace> {
        BeliefProfile {
            per_player: self.per_player.iter().map(|s| rm_step(g, s).0).collect(),
        }
    }

    /// Player `i`'s surviving strategies: their own component of their own space.
    pub fn surviving(&self, i: usize) -> &[usize] {
        self.per_player[i].set(i)
    }

    pub fn to_json(&self, g: &Game) -> Value {
        json!(self.per_player.iter().map(|s| s.to_json(g)).collect::<Vec<_>>())
    }
}

impl BeliefProfile<MixedSpace> {
    pub fn rm_prime_step(&self, g: &Game, cap: usize) -> Result<BeliefProfile<MixedSpace>, MixedError> {
        let per_player = self
            .per_player
            .iter()
            .map(|s| rm_mixed_step(g, s, cap).map(|(t, _)| t))
            .collect::<Result<_, _>>()?;
        Ok(BeliefProfile { per_player })
    }

    pub fn surviving(&self, i: usize) -> &Polytope {
        self.per_player[i].polytope(i)
    }

    /// Beliefs where each player knows the others play `profile` exactly.
    pub fn point_beliefs(g: &Game, profile: &[MixedStrategy]) -> BeliefProfile<MixedSpace> {
        let per_player = (0..g.players())
            .map(|i| {
                let mut s = MixedSpace::full(g);
                for (j, sigma) in profile.iter().enumerate() {
                    if j != i {
                        s = s.with(j, Polytope::singleton(sigma));
                    }
                }
                s
            })
            .collect();
        BeliefProfile { per_player }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::int;
    use crate::regret_mixed::DEFAULT_CAP;

    #[test]
    fn travelers_dilemma_belief_levels() {
        let g = travelers_dilemma(2, 2, 100).unwrap();
        let b = justifiable_belief(&g, 2);
        assert_eq!(b.levels.len(), 3);
        assert_eq!(b.levels[2], PureSpace::from_labels(&g, &[&["97"], &["97"]]).unwrap());
        let two = LexBelief { levels: b.levels[..2].to_vec() };
        let a97 = g.action_index(0, "97").unwrap();
        let a100 = g.action_index(0, "100").unwrap();
        assert!(rational_wrt(&g, 0, a97, &two).0);
        let (ok, trace) = rational_wrt(&g, 0, a100, &two);
        assert!(!ok);
        assert_eq!(trace.first_failure, Some(1));
        assert!(trace.t_sets[1].is_subset_of(&trace.t_sets[0]));
    }

    #[test]
    fn single_level_is_one_rm_round() {
        let g = bertrand().unwrap();
        let one = justifiable_belief(&g, 0);
        assert_eq!(one.levels, vec![PureSpace::full(&g)]);
        assert_eq!(rational_set(&g, &one), rm_step(&g, &PureSpace::full(&g)).0);
        assert_eq!(justifiable_belief(&g, 2).levels[1].labels(&g, 0), vec!["100", "101"]);
    }

    #[test]
    fn identity_on_small_games() {
        for g in [staircase(5).unwrap(), sd_vs_rm().unwrap(), pd(&int(1), &int(3), &int(4)).unwrap()] {
            for k in 0..=3 {
                assert!(justifiable_identity_holds(&g, k));
            }
        }
    }

    #[test]
    fn mixed_levels_follow_rm() {
        let g = mixed_multiround(2, &int(3)).unwrap();
        let b = justifiable_belief_mixed(&g, 1, DEFAULT_CAP).unwrap();
        let t = rationality_sets_mixed(&g, &LexBelief { levels: b.levels[..1].to_vec() }, DEFAULT_CAP).unwrap();
        assert_eq!(t[0], b.levels[1]);
    }

    #[test]
    fn prime_step_with_common_beliefs_is_rm() {
        let g = sd_vs_rm().unwrap();
        let full = PureSpace::full(&g);
        let profile = BeliefProfile { per_player: vec![full.clone(), full.clone()] };
        let next = profile.rm_prime_step(&g);
        let rm = rm_step(&g, &full).0;
        assert!(next.per_player.iter().all(|s| *s == rm));
    }

    #[test]
    fn point_beliefs_select_best_responses() {
        let g = matching_pennies().unwrap();
        let half = MixedStrategy::uniform(0, 2);
        let nash = [half.clone(), MixedStrategy { owner: 1, weights: half.weights.clone() }];
        let beliefs = BeliefProfile::point_beliefs(&g, &nash);
        let next = beliefs.rm_prime_step(&g, DEFAULT_CAP).unwrap();
        for (i, sigma) in nash.iter().enumerate() {
            assert!(next.surviving(i).contains(&sigma.weights));
            assert!(next.surviving(i).is_full_simplex());
        }
        let pure = [MixedStrategy::pure(0, 2, 0), MixedStrategy::pure(1, 2, 0)];
        let next = BeliefProfile::point_beliefs(&g, &pure).rm_prime_step(&g, DEFAULT_CAP).unwrap();
        assert_eq!(next.surviving(0).vertices(), &[vec![int(1), int(0)]]);
        assert_eq!(next.surviving(1).vertices(), &[vec![int(0), int(1)]]);
    }
}
