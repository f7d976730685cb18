//! Finite normal-form games with exact payoffs.

use crate::rational::{one, zero, Rational};
use num_traits::{Signed, Zero};
use std::collections::HashSet;

/// One payoff per player.
pub type PayoffVector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("player {player} has no actions")]
    NoActions { player: usize },
    #[error("player {player} has duplicate action label {label:?}")]
    DuplicateLabel { player: usize, label: String },
    #[error("no utilities given for profile ({})", .profile.join(","))]
    MissingProfile { profile: Vec<String> },
    #[error("{found} utility entries for {expected} profiles")]
    ExtraProfiles { expected: usize, found: usize },
    #[error("payoff vector for profile ({}) has {found} entries, expected {expected}", .profile.join(","))]
    PayoffLength {
        profile: Vec<String>,
        expected: usize,
        found: usize,
    },
    #[error("player {player} has no action labelled {label:?}")]
    UnknownAction { player: usize, label: String },
    #[error("action index {action} out of range for player {player}")]
    ActionOutOfRange { player: usize, action: usize },
    #[error("profile has {found} entries for a {expected}-player game")]
    ProfileLength { expected: usize, found: usize },
    #[error("mixed strategy for player {player}: {reason}")]
    BadMixedStrategy { player: usize, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("game too large: {0}")]
    TooLarge(String),
}

/// A finite game `([n], A, u)`.
///
/// Utilities are stored as a flat table indexed by profile (row-major, last
/// player fastest) and then by player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    actions: Vec<Vec<String>>,
    strides: Vec<usize>,
    table: Vec<Rational>,
}

impl Game {
    /// Builds a game from labels and one payoff vector per profile in row-major order.
    pub fn new(actions: Vec<Vec<String>>, utilities: Vec<PayoffVector>) -> Result<Game, GameError> {
        let strides = validate_actions(&actions)?;
        let n = actions.len();
        let count = profile_count(&actions);
        if utilities.len() < count {
            let missing = unflatten(utilities.len(), &actions);
            return Err(GameError::MissingProfile {
                profile: labels_of(&actions, &missing),
            });
        }
        if utilities.len() > count {
            return Err(GameError::ExtraProfiles {
                expected: count,
                found: utilities.len(),
            });
        }
        let mut table = Vec::with_capacity(count * n);
        for (idx, payoff) in utilities.into_iter().enumerate() {
            if payoff.len() != n {
                return Err(GameError::PayoffLength {
                    profile: labels_of(&actions, &unflatten(idx, &actions)),
                    expected: n,
                    found: payoff.len(),
                });
            }
            table.extend(payoff);
        }
        Ok(Game {
            actions,
            strides,
            table,
        })
    }

    /// Builds a game by evaluating `payoff` on every profile.
    pub fn from_fn(
        actions: Vec<Vec<String>>,
        mut payoff: impl FnMut(&[usize]) -> PayoffVector,
    ) -> Result<Game, GameError> {
        let sizes: Vec<usize> = actions.iter().map(|a| a.len()).collect();
        validate_actions(&actions)?;
        let mut utilities = Vec::with_capacity(profile_count(&actions));
        for_each_profile(&sizes.iter().map(|&s| (0..s).collect()).collect::<Vec<_>>(), |p| {
            utilities.push(payoff(p));
        });
        Game::new(actions, utilities)
    }

    pub fn players(&self) -> usize {
        self.actions.len()
    }

    pub fn num_actions(&self, player: usize) -> usize {
        self.actions[player].len()
    }

    pub fn action_counts(&self) -> Vec<usize> {
        self.actions.iter().map(|a| a.len()).collect()
    }

    pub fn labels(&self, player: usize) -> &[String] {
        &self.actions[player]
    }

    pub fn label(&self, player: usize, action: usize) -> &str {
        &self.actions[player][action]
    }

    pub fn action_index(&self, player: usize, label: &str) -> Result<usize, GameError> {
        self.actions[player]
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GameError::UnknownAction {
                player,
                label: label.to_string(),
            })
    }

    pub fn num_profiles(&self) -> usize {
        self.table.len() / self.players()
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        profile.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn profile_at(&self, index: usize) -> Vec<usize> {
        unflatten(index, &self.actions)
    }

    /// `u_i(profile)` without bounds checks beyond slice indexing.
    pub fn payoff(&self, profile: &[usize], player: usize) -> &Rational {
        &self.table[self.profile_index(profile) * self.players() + player]
    }

    pub fn check_profile(&self, profile: &[usize]) -> Result<(), GameError> {
        if profile.len() != self.players() {
            return Err(GameError::ProfileLength {
                expected: self.players(),
                found: profile.len(),
            });
        }
        for (player, &a) in profile.iter().enumerate() {
            if a >= self.num_actions(player) {
                return Err(GameError::ActionOutOfRange { player, action: a });
            }
        }
        Ok(())
    }

    /// The payoff vector of a pure profile given by action indices.
    pub fn utility(&self, profile: &[usize]) -> Result<PayoffVector, GameError> {
        self.check_profile(profile)?;
        let base = self.profile_index(profile) * self.players();
        Ok(self.table[base..base + self.players()].to_vec())
    }

    /// The payoff vector of a pure profile given by labels.
    pub fn utility_by_label(&self, labels: &[&str]) -> Result<PayoffVector, GameError> {
        if labels.len() != self.players() {
            return Err(GameError::ProfileLength {
                expected: self.players(),
                found: labels.len(),
            });
        }
        let profile = labels
            .iter()
            .enumerate()
            .map(|(i, l)| self.action_index(i, l))
            .collect::<Result<Vec<_>, _>>()?;
        self.utility(&profile)
    }

    /// Exact expected payoffs under independent randomization.
    pub fn expected_utility(&self, profile: &[MixedStrategy]) -> Result<PayoffVector, GameError> {
        if profile.len() != self.players() {
            return Err(GameError::ProfileLength {
                expected: self.players(),
                found: profile.len(),
            });
        }
        for (i, s) in profile.iter().enumerate() {
            if s.owner != i || s.weights.len() != self.num_actions(i) {
                return Err(GameError::BadMixedStrategy {
                    player: i,
                    reason: format!("strategy of player {} with {} weights", s.owner, s.weights.len()),
                });
            }
        }
        let n = self.players();
        let supports: Vec<Vec<usize>> = profile.iter().map(|s| s.support()).collect();
        let mut total = vec![zero(); n];
        for_each_profile(&supports, |p| {
            let mut prob = one();
            for (i, &a) in p.iter().enumerate() {
                prob *= &profile[i].weights[a];
            }
            let base = self.profile_index(p) * n;
            for (i, t) in total.iter_mut().enumerate() {
                *t += &prob * &self.table[base + i];
            }
        });
        Ok(total)
    }

    /// `U_i(a, σ_{-i})` for every pure action `a` of player `i`, where `opp[j]`
    /// holds a weight vector for each player `j != i` (entry `i` is ignored).
    pub fn payoffs_against(&self, player: usize, opp: &[&[Rational]]) -> Vec<Rational> {
        let n = self.players();
        let mut supports: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                if j == player {
                    vec![0]
                } else {
                    (0..opp[j].len()).filter(|&a| !opp[j][a].is_zero()).collect()
                }
            })
            .collect();
        supports[player] = vec![0];
        let mut out = vec![zero(); self.num_actions(player)];
        let mut full = vec![0usize; n];
        for_each_profile(&supports, |p| {
            let mut prob = one();
            for j in 0..n {
                if j != player {
                    prob *= &opp[j][p[j]];
                }
            }
            full.copy_from_slice(p);
            for (a, slot) in out.iter_mut().enumerate() {
                full[player] = a;
                *slot += &prob * self.payoff(&full, player);
            }
        });
        out
    }

    /// Iterates over every pure profile in row-major order.
    pub fn profiles(&self) -> Vec<Vec<usize>> {
        (0..self.num_profiles()).map(|i| self.profile_at(i)).collect()
    }

    /// Label tuple of a profile.
    pub fn profile_labels(&self, profile: &[usize]) -> Vec<String> {
        labels_of(&self.actions, profile)
    }

    /// Returns the game with player `player`'s utilities replaced by `scale * u + shift`.
    pub fn affine_transform(&self, player: usize, scale: &Rational, shift: &Rational) -> Game {
        let mut g = self.clone();
        let n = self.players();
        for idx in 0..self.num_profiles() {
            let v = &mut g.table[idx * n + player];
            *v = &*v * scale + shift;
        }
        g
    }
}

fn validate_actions(actions: &[Vec<String>]) -> Result<Vec<usize>, GameError> {
    if actions.is_empty() {
        return Err(GameError::NoPlayers);
    }
    for (player, labels) in actions.iter().enumerate() {
        if labels.is_empty() {
            return Err(GameError::NoActions { player });
        }
        let mut seen = HashSet::new();
        for l in labels {
            if !seen.insert(l) {
                return Err(GameError::DuplicateLabel {
                    player,
                    label: l.clone(),
                });
            }
        }
    }
    let mut strides = vec![1usize; actions.len()];
    for i in (0..actions.len() - 1).rev() {
        strides[i] = strides[i + 1] * actions[i + 1].len();
    }
    Ok(strides)
}

fn profile_count(actions: &[Vec<String>]) -> usize {
    actions.iter().map(|a| a.len()).product()
}

fn unflatten(mut index: usize, actions: &[Vec<String>]) -> Vec<usize> {
    let mut out = vec![0; actions.len()];
    for i in (0..actions.len()).rev() {
        out[i] = index % actions[i].len();
        index /= actions[i].len();
    }
    out
}

fn labels_of(actions: &[Vec<String>], profile: &[usize]) -> Vec<String> {
    profile
        .iter()
        .enumerate()
        .map(|(i, &a)| actions[i][a].clone())
        .collect()
}

/// Calls `f` on every element of the cross product of `sets`, last coordinate fastest.
pub fn for_each_profile(sets: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    if sets.iter().any(|s| s.is_empty()) {
        return;
    }
    let n = sets.len();
    let mut pos = vec![0usize; n];
    let mut cur: Vec<usize> = sets.iter().map(|s| s[0]).collect();
    loop {
        f(&cur);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < sets[i].len() {
                cur[i] = sets[i][pos[i]];
                break;
            }
            pos[i] = 0;
            cur[i] = sets[i][0];
        }
    }
}

/// A mixed strategy `σ_i ∈ Δ(A_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedStrategy {
    pub owner: usize,
    pub weights: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(owner: usize, weights: Vec<Rational>) -> Result<MixedStrategy, GameError> {
        if weights.is_empty() {
            return Err(GameError::BadMixedStrategy {
                player: owner,
                reason: "no weights".into(),
            });
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(GameError::BadMixedStrategy {
                player: owner,
                reason: "negative weight".into(),
            });
        }
        let sum: Rational = weights.iter().sum();
        if sum != one() {
            return Err(GameError::BadMixedStrategy {
                player: owner,
                reason: format!("weights sum to {}", sum),
            });
        }
        Ok(MixedStrategy { owner, weights })
    }

    pub fn pure(owner: usize, num_actions: usize, action: usize) -> MixedStrategy {
        let mut weights = vec![zero(); num_actions];
        weights[action] = one();
        MixedStrategy { owner, weights }
    }

    pub fn uniform(owner: usize, num_actions: usize) -> MixedStrategy {
        let w = Rational::new(1.into(), (num_actions as i64).into());
        MixedStrategy {
            owner,
            weights: vec![w; num_actions],
        }
    }

    /// Checks that the strategy fits player `player` of `g`.
    pub fn check_for(&self, g: &Game, player: usize) -> Result<(), GameError> {
        if self.owner != player || self.weights.len() != g.num_actions(player) {
            return Err(GameError::BadMixedStrategy {
                player,
                reason: format!(
                    "strategy belongs to player {} with {} weights",
                    self.owner,
                    self.weights.len()
                ),
            });
        }
        Ok(())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&a| !self.weights[a].is_zero())
            .collect()
    }

    pub fn as_pure(&self) -> Option<usize> {
        let s = self.support();
        (s.len() == 1).then(|| s[0])
    }

    pub fn dot(&self, values: &[Rational]) -> Rational {
        self.weights
            .iter()
            .zip(values)
            .filter(|(w, _)| !w.is_zero())
            .map(|(w, v)| w * v)
            .sum()
    }

    /// Human-readable form such as `1/2 a11 + 1/2 a12`.
    pub fn describe(&self, g: &Game) -> String {
        if let Some(a) = self.as_pure() {
            return g.label(self.owner, a).to_string();
        }
        self.support()
            .iter()
            .map(|&a| format!("{} {}", self.weights[a], g.label(self.owner, a)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn pd() -> Game {
        Game::new(
            vec![labels(&["c", "d"]), labels(&["c", "d"])],
            vec![
                vec![int(3), int(3)],
                vec![int(0), int(4)],
                vec![int(4), int(0)],
                vec![int(1), int(1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn row_major_with_last_player_fastest() {
        let g = pd();
        assert_eq!(g.utility_by_label(&["c", "d"]).unwrap(), vec![int(0), int(4)]);
        assert_eq!(g.profile_at(2), vec![1, 0]);
        assert_eq!(g.profile_index(&[1, 1]), 3);
    }

    #[test]
    fn rejects_duplicates_and_missing_profiles() {
        let dup = Game::new(vec![labels(&["a", "a"])], vec![vec![int(1)], vec![int(2)]]);
        assert!(matches!(dup, Err(GameError::DuplicateLabel { .. })));
        let missing = Game::new(
            vec![labels(&["c", "d"]), labels(&["c", "d"])],
            vec![vec![int(3), int(3)]; 3],
        );
        match missing {
            Err(GameError::MissingProfile { profile }) => assert_eq!(profile, labels(&["d", "d"])),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn expected_utility_mixes_independently() {
        let g = pd();
        let half = MixedStrategy::new(0, vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let c = MixedStrategy::pure(1, 2, 0);
        assert_eq!(g.expected_utility(&[half, c]).unwrap(), vec![ratio(7, 2), ratio(3, 2)]);
    }

    #[test]
    fn payoffs_against_matches_expected_utility() {
        let g = pd();
        let opp = vec![ratio(1, 3), ratio(2, 3)];
        let u = g.payoffs_against(0, &[&[], &opp]);
        assert_eq!(u, vec![int(1), ratio(2, 1)]);
    }

    #[test]
    fn mixed_strategy_validation() {
        assert!(MixedStrategy::new(0, vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(MixedStrategy::new(0, vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert_eq!(MixedStrategy::uniform(1, 4).weights[3], ratio(1, 4));
    }
}
