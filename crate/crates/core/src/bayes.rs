//! Bayesian games and expected-regret deletion.

use crate::game::{for_each_profile, Game, GameError, PayoffVector};
use crate::gamefile::{rational_to_file, FileRational, GameFileError};
use crate::rational::{one, zero, Rational};
use crate::space::DeletionTrace;
use num_traits::Signed;
use serde::Deserialize;
use serde_json::{json, Value};

/// `([n], A, u, T, π)` with one payoff table per type profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BayesianGame {
    types: Vec<Vec<String>>,
    prior: Vec<Rational>,
    /// Indexed like `prior`: row-major over type profiles, last player fastest.
    stages: Vec<Game>,
}

fn profile_count(sizes: &[usize]) -> usize {
    sizes.iter().product()
}

fn index_of(sizes: &[usize], profile: &[usize]) -> usize {
    profile.iter().zip(sizes).fold(0, |acc, (&x, &s)| acc * s + x)
}

fn all_profiles(sizes: &[usize]) -> Vec<Vec<usize>> {
    let sets: Vec<Vec<usize>> = sizes.iter().map(|&s| (0..s).collect()).collect();
    let mut out = Vec::with_capacity(profile_count(sizes));
    for_each_profile(&sets, |p| out.push(p.to_vec()));
    out
}

impl BayesianGame {
    /// `utility(types, actions)` gives every player's payoff.
    pub fn from_fn(
        types: Vec<Vec<String>>,
        prior: Vec<Rational>,
        actions: Vec<Vec<String>>,
        mut utility: impl FnMut(&[usize], &[usize]) -> PayoffVector,
    ) -> Result<BayesianGame, GameError> {
        let sizes: Vec<usize> = types.iter().map(|t| t.len()).collect();
        let stages = all_profiles(&sizes)
            .into_iter()
            .map(|t| Game::from_fn(actions.clone(), |a| utility(&t, a)))
            .collect::<Result<Vec<_>, _>>()?;
        BayesianGame::new(types, prior, stages)
    }

    pub fn new(types: Vec<Vec<String>>, prior: Vec<Rational>, stages: Vec<Game>) -> Result<BayesianGame, GameError> {
        if types.is_empty() {
            return Err(GameError::NoPlayers);
        }
        for (i, t) in types.iter().enumerate() {
            if t.is_empty() {
                return Err(GameError::InvalidParameter(format!("player {} has no types", i)));
            }
            let mut seen = std::collections::HashSet::new();
            if let Some(l) = t.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(GameError::InvalidParameter(format!("player {} has duplicate type {:?}", i, l)));
            }
        }
        let sizes: Vec<usize> = types.iter().map(|t| t.len()).collect();
        let count = profile_count(&sizes);
        if prior.len() != count {
            return Err(GameError::InvalidParameter(format!(
                "prior has {} entries for {} type profiles",
                prior.len(),
                count
            )));
        }
        if stages.len() != count {
            return Err(GameError::InvalidParameter(format!(
                "{} payoff tables for {} type profiles",
                stages.len(),
                count
            )));
        }
        if prior.iter().any(|p| p.is_negative()) {
            return Err(GameError::InvalidParameter("prior has a negative entry".into()));
        }
        if prior.iter().sum::<Rational>() != one() {
            return Err(GameError::InvalidParameter("prior does not sum to 1".into()));
        }
        let g = BayesianGame { types, prior, stages };
        for i in 0..g.players() {
            if stages_disagree(&g.stages, i) {
                return Err(GameError::InvalidParameter("payoff tables disagree on action sets".into()));
            }
            for t in 0..g.types[i].len() {
                if g.marginal(i, t) == zero() {
                    return Err(GameError::InvalidParameter(format!(
                        "type {:?} of player {} has prior probability 0",
                        g.types[i][t], i
                    )));
                }
            }
        }
        Ok(g)
    }

    /// The strategic game with one type per player and a point prior.
    pub fn from_game(g: &Game) -> BayesianGame {
        BayesianGame {
            types: vec![vec!["*".to_string()]; g.players()],
            prior: vec![one()],
            stages: vec![g.clone()],
        }
    }

    pub fn players(&self) -> usize {
        self.types.len()
    }

    pub fn types(&self, player: usize) -> &[String] {
        &self.types[player]
    }

    pub fn type_index(&self, player: usize, label: &str) -> Result<usize, GameError> {
        self.types[player]
            .iter()
            .position(|t| t == label)
            .ok_or_else(|| GameError::InvalidParameter(format!("player {} has no type {:?}", player, label)))
    }

    pub fn actions(&self) -> &Game {
        &self.stages[0]
    }

    pub fn num_actions(&self, player: usize) -> usize {
        self.stages[0].num_actions(player)
    }

    fn type_sizes(&self) -> Vec<usize> {
        self.types.iter().map(|t| t.len()).collect()
    }

    pub fn type_profiles(&self) -> Vec<Vec<usize>> {
        all_profiles(&self.type_sizes())
    }

    pub fn prior(&self, types: &[usize]) -> &Rational {
        &self.prior[index_of(&self.type_sizes(), types)]
    }

    /// The payoff table at a type profile.
    pub fn stage(&self, types: &[usize]) -> &Game {
        &self.stages[index_of(&self.type_sizes(), types)]
    }

    pub fn marginal(&self, player: usize, t: usize) -> Rational {
        self.type_profiles()
            .iter()
            .filter(|p| p[player] == t)
            .map(|p| self.prior(p).clone())
            .sum()
    }

    pub fn utility(&self, types: &[usize], actions: &[usize], player: usize) -> &Rational {
        self.stage(types).payoff(actions, player)
    }
}

fn stages_disagree(stages: &[Game], i: usize) -> bool {
    stages.iter().any(|s| s.labels(i) != stages[0].labels(i))
}

/// Per player, per type, the allowed actions `A(t)`, each sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypedSpace {
    sets: Vec<Vec<Vec<usize>>>,
}

impl TypedSpace {
    pub fn full(bg: &BayesianGame) -> TypedSpace {
        TypedSpace {
            sets: (0..bg.players())
                .map(|i| vec![(0..bg.num_actions(i)).collect(); bg.types[i].len()])
                .collect(),
        }
    }

    pub fn new(bg: &BayesianGame, mut sets: Vec<Vec<Vec<usize>>>) -> Result<TypedSpace, GameError> {
        if sets.len() != bg.players() {
            return Err(GameError::ProfileLength {
                expected: bg.players(),
                found: sets.len(),
            });
        }
        for (i, per_type) in sets.iter_mut().enumerate() {
            if per_type.len() != bg.types[i].len() {
                return Err(GameError::InvalidParameter(format!("player {} needs one set per type", i)));
            }
            for s in per_type.iter_mut() {
                s.sort_unstable();
                s.dedup();
                if s.is_empty() {
                    return Err(GameError::NoActions { player: i });
                }
                if let Some(&a) = s.iter().find(|&&a| a >= bg.num_actions(i)) {
                    return Err(GameError::ActionOutOfRange { player: i, action: a });
                }
            }
        }
        Ok(TypedSpace { sets })
    }

    pub fn set(&self, player: usize, t: usize) -> &[usize] {
        &self.sets[player][t]
    }

    pub fn contains(&self, player: usize, t: usize, a: usize) -> bool {
        self.sets[player][t].binary_search(&a).is_ok()
    }

    /// Per player, a list of `{"type", "actions"}` in type order.
    pub fn to_json(&self, bg: &BayesianGame) -> Value {
        let g = bg.actions();
        json!((0..bg.players())
            .map(|i| {
                self.sets[i]
                    .iter()
                    .enumerate()
                    .map(|(t, s)| {
                        json!({
                            "type": bg.types[i][t],
                            "actions": s.iter().map(|&a| g.label(i, a)).collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>())
    }
}

/// A map from each of the owner's types to an action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedStrategy {
    pub owner: usize,
    pub actions: Vec<usize>,
}

impl TypedStrategy {
    pub fn new(bg: &BayesianGame, owner: usize, actions: Vec<usize>) -> Result<TypedStrategy, GameError> {
        if actions.len() != bg.types[owner].len() {
            return Err(GameError::InvalidParameter(format!(
                "strategy for player {} needs {} actions, got {}",
                owner,
                bg.types[owner].len(),
                actions.len()
            )));
        }
        if let Some(&a) = actions.iter().find(|&&a| a >= bg.num_actions(owner)) {
            return Err(GameError::ActionOutOfRange { player: owner, action: a });
        }
        Ok(TypedStrategy { owner, actions })
    }
}

/// Max regret of each candidate action for player `i` at the type profile
/// `types`, over opponent actions allowed for their types; the best reply
/// ranges over `A(t_i)`.
fn profile_regrets(bg: &BayesianGame, space: &TypedSpace, i: usize, types: &[usize], candidates: &[usize]) -> Vec<Rational> {
    let stage = bg.stage(types);
    let own = space.set(i, types[i]);
    let allowed: Vec<Vec<usize>> = (0..bg.players())
        .map(|j| if j == i { vec![own[0]] } else { space.set(j, types[j]).to_vec() })
        .collect();
    let mut worst = vec![zero(); candidates.len()];
    let mut first = true;
    for_each_profile(&allowed, |p| {
        let mut q = p.to_vec();
        let best = own
            .iter()
            .map(|&b| {
                q[i] = b;
                stage.payoff(&q, i).clone()
            })
            .max()
            .unwrap();
        for (w, &a) in worst.iter_mut().zip(candidates) {
            q[i] = a;
            let r = &best - stage.payoff(&q, i);
            if first || r > *w {
                *w = r;
            }
        }
        first = false;
    });
    worst
}

/// Expected regrets of every action in `A(t_i)`, conditional on `t_i`.
fn expected_regrets(bg: &BayesianGame, space: &TypedSpace, i: usize, t: usize) -> Vec<(usize, Rational)> {
    let own = space.set(i, t).to_vec();
    let marginal = bg.marginal(i, t);
    let mut total = vec![zero(); own.len()];
    for types in bg.type_profiles().iter().filter(|p| p[i] == t) {
        let w = bg.prior(types);
        if *w == zero() {
            continue;
        }
        let cond = w / &marginal;
        for (acc, r) in total.iter_mut().zip(profile_regrets(bg, space, i, types, &own)) {
            *acc += &cond * r;
        }
    }
    own.into_iter().zip(total).collect()
}

pub fn expected_regret(bg: &BayesianGame, space: &TypedSpace, i: usize, t: usize, a: usize) -> Result<Rational, GameError> {
    if i >= bg.players() || t >= bg.types[i].len() || !space.contains(i, t, a) {
        return Err(GameError::InvalidParameter(format!(
            "action {} is not allowed for player {} at type {}",
            a, i, t
        )));
    }
    Ok(expected_regrets(bg, space, i, t)
        .into_iter()
        .find(|(b, _)| *b == a)
        .unwrap()
        .1)
}

/// `Σ_t π(t) regret(σ(t_i) | t)`, computed directly over type profiles.
pub fn unconditional_regret(bg: &BayesianGame, space: &TypedSpace, sigma: &TypedStrategy) -> Rational {
    let i = sigma.owner;
    bg.type_profiles()
        .iter()
        .map(|types| {
            let a = sigma.actions[types[i]];
            bg.prior(types) * &profile_regrets(bg, space, i, types, &[a])[0]
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeReport {
    pub player: usize,
    pub type_index: usize,
    pub regrets: Vec<(usize, Rational)>,
    pub minregret: Rational,
    pub argmin: Vec<usize>,
}

impl TypeReport {
    pub fn to_json(&self, bg: &BayesianGame) -> Value {
        let g = bg.actions();
        let i = self.player;
        json!({
            "player": i,
            "type": bg.types[i][self.type_index],
            "minregret": self.minregret.to_string(),
            "argmin": self.argmin.iter().map(|&a| g.label(i, a)).collect::<Vec<_>>(),
        })
    }
}

pub fn type_report(bg: &BayesianGame, space: &TypedSpace, i: usize, t: usize) -> TypeReport {
    let regrets = expected_regrets(bg, space, i, t);
    let minregret = regrets.iter().map(|(_, r)| r).min().unwrap().clone();
    let argmin = regrets.iter().filter(|(_, r)| *r == minregret).map(|(a, _)| *a).collect();
    TypeReport {
        player: i,
        type_index: t,
        regrets,
        minregret,
        argmin,
    }
}

pub type BayesTrace = DeletionTrace<TypedSpace, Vec<TypeReport>>;

/// Each (player, type) cell keeps its expected-regret minimizers.
pub fn rm_bayes_step(bg: &BayesianGame, space: &TypedSpace) -> (TypedSpace, Vec<TypeReport>) {
    let mut reports = Vec::new();
    let mut sets = Vec::with_capacity(bg.players());
    for i in 0..bg.players() {
        let mut per_type = Vec::with_capacity(bg.types[i].len());
        for t in 0..bg.types[i].len() {
            let r = type_report(bg, space, i, t);
            per_type.push(r.argmin.clone());
            reports.push(r);
        }
        sets.push(per_type);
    }
    (TypedSpace { sets }, reports)
}

pub fn rm_bayes_iterate(bg: &BayesianGame, space0: &TypedSpace) -> BayesTrace {
    DeletionTrace::iterate("RM-bayes", space0.clone(), None, |s| {
        Ok::<_, std::convert::Infallible>(rm_bayes_step(bg, s))
    })
    .unwrap_or_else(|_| unreachable!("finite deletion terminates"))
}

pub fn trace_to_json(bg: &BayesianGame, t: &BayesTrace) -> Value {
    t.to_json(
        "reports",
        |s| s.to_json(bg),
        |m| Value::Array(m.iter().map(|r| r.to_json(bg)).collect()),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBayesian {
    players: usize,
    types: Vec<Vec<String>>,
    prior: Vec<FileRational>,
    actions: Vec<Vec<String>>,
    /// One payoff vector per (type profile, action profile), types outermost.
    utilities: Vec<Vec<FileRational>>,
}

/// Reads the Bayesian extension of the game file format.
pub fn load_bayesian(text: &str) -> Result<BayesianGame, GameFileError> {
    let raw: RawBayesian = serde_json::from_str(text)?;
    if raw.players != raw.actions.len() || raw.players != raw.types.len() {
        return Err(GameFileError::PlayerCount {
            declared: raw.players,
            found: raw.actions.len().max(raw.types.len()),
        });
    }
    let sizes: Vec<usize> = raw.actions.iter().map(|a| a.len()).collect();
    let per_stage = profile_count(&sizes);
    let type_count = profile_count(&raw.types.iter().map(|t| t.len()).collect::<Vec<_>>());
    if raw.utilities.len() != per_stage * type_count {
        return Err(GameError::InvalidParameter(format!(
            "{} utility rows for {} type profiles x {} action profiles",
            raw.utilities.len(),
            type_count,
            per_stage
        ))
        .into());
    }
    let mut rows = raw.utilities.into_iter().map(|r| r.into_iter().map(|x| x.0).collect::<Vec<_>>());
    let mut stages = Vec::with_capacity(type_count);
    for _ in 0..type_count {
        let chunk: Vec<PayoffVector> = rows.by_ref().take(per_stage).collect();
        stages.push(Game::new(raw.actions.clone(), chunk)?);
    }
    let prior = raw.prior.into_iter().map(|r| r.0).collect();
    Ok(BayesianGame::new(raw.types, prior, stages)?)
}

pub fn bayesian_to_json(bg: &BayesianGame) -> Value {
    let g = bg.actions();
    let actions: Vec<&[String]> = (0..bg.players()).map(|i| g.labels(i)).collect();
    let utilities: Vec<Value> = bg
        .stages
        .iter()
        .flat_map(|s| {
            s.profiles()
                .into_iter()
                .map(|p| Value::Array((0..bg.players()).map(|i| rational_to_file(s.payoff(&p, i))).collect()))
                .collect::<Vec<_>>()
        })
        .collect();
    json!({
        "players": bg.players(),
        "types": bg.types,
        "prior": bg.prior.iter().map(rational_to_file).collect::<Vec<_>>(),
        "actions": actions,
        "utilities": utilities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::{int, ratio};
    use crate::regret_pure::rm_iterate;
    use crate::space::PureSpace;

    #[test]
    fn single_type_game_matches_strategic_rm() {
        for g in [sd_vs_rm().unwrap(), staircase(4).unwrap(), travelers_dilemma(3, 2, 20).unwrap()] {
            let bg = BayesianGame::from_game(&g);
            let bt = rm_bayes_iterate(&bg, &TypedSpace::full(&bg));
            let pt = rm_iterate(&g, &PureSpace::full(&g));
            assert_eq!(bt.rounds.len(), pt.rounds.len());
            for (b, p) in bt.rounds.iter().zip(&pt.rounds) {
                for i in 0..g.players() {
                    assert_eq!(b.space.set(i, 0), p.space.set(i));
                }
            }
            let r = expected_regret(&bg, &TypedSpace::full(&bg), 0, 0, 0).unwrap();
            assert_eq!(&r, pt.rounds[0].meta[0].regret_of(0).unwrap());
        }
    }

    #[test]
    fn prior_validation() {
        let g = pd(&int(1), &int(3), &int(4)).unwrap();
        let types = vec![vec!["x".to_string(), "y".to_string()], vec!["z".to_string()]];
        let ok = BayesianGame::new(types.clone(), vec![ratio(1, 3), ratio(2, 3)], vec![g.clone(), g.clone()]);
        assert!(ok.is_ok());
        assert_eq!(ok.unwrap().marginal(0, 1), ratio(2, 3));
        assert!(BayesianGame::new(types.clone(), vec![int(1), int(0)], vec![g.clone(), g.clone()]).is_err());
        assert!(BayesianGame::new(types, vec![ratio(1, 2), ratio(1, 3)], vec![g.clone(), g]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let g = matching_pennies().unwrap();
        let types = vec![vec!["lo".to_string(), "hi".to_string()], vec!["only".to_string()]];
        let bg = BayesianGame::new(types, vec![ratio(1, 4), ratio(3, 4)], vec![g.clone(), g.affine_transform(0, &int(2), &int(1))]).unwrap();
        let text = bayesian_to_json(&bg).to_string();
        assert_eq!(load_bayesian(&text).unwrap(), bg);
        assert!(load_bayesian(&text.replace("\"prior\"", "\"priors\"")).is_err());
    }
}
