//! Minimax regret over mixed strategies.
//!
//! The regret of `σ_i` against a product of polytopes is attained at a
//! profile of opponent vertices, because `max_τ U_i(τ, ·) - U_i(σ_i, ·)` is
//! convex in each opponent's strategy separately. Everything below therefore
//! works with the finite list of opponent vertex profiles.

use crate::game::{for_each_profile, Game, GameError, MixedStrategy};
use crate::lp::{LinearProgram, Relation};
use crate::polytope::{cone_rays, Polytope, PolytopeError};
use crate::rational::{int, one, zero, Rational};
use crate::space::{DeletionTrace, IterateError, PureSpace};
use serde_json::{json, Value};

/// Default bound on the dimension handed to vertex enumeration.
pub const DEFAULT_CAP: usize = 12;
/// Default bound on rounds of change in mixed iteration.
pub const DEFAULT_ROUND_LIMIT: usize = 64;

/// `REGRETLAB_CAP` if set to a positive integer, else [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    std::env::var("REGRETLAB_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MixedError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("player {player}: vertex enumeration in dimension {dim} exceeds the cap of {cap}; use min_mixed_regret for the value alone")]
    CapExceeded { player: usize, dim: usize, cap: usize },
    #[error("strategy is not in player {player}'s set")]
    NotMember { player: usize },
    #[error("player {player} has {actions} actions; the grid oracle handles at most 4")]
    GridTooLarge { player: usize, actions: usize },
    #[error("linear program failed: {0}")]
    Lp(String),
}

/// A product of per-player polytopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSpace {
    polytopes: Vec<Polytope>,
}

impl MixedSpace {
    pub fn full(g: &Game) -> MixedSpace {
        MixedSpace {
            polytopes: (0..g.players()).map(|i| Polytope::simplex(i, g.num_actions(i))).collect(),
        }
    }

    /// Each player's set becomes the face of the simplex on their pure set.
    pub fn from_pure(g: &Game, s: &PureSpace) -> MixedSpace {
        MixedSpace {
            polytopes: (0..g.players())
                .map(|i| Polytope::face(i, g.num_actions(i), s.set(i)))
                .collect(),
        }
    }

    pub fn new(g: &Game, polytopes: Vec<Polytope>) -> Result<MixedSpace, GameError> {
        if polytopes.len() != g.players() {
            return Err(GameError::ProfileLength {
                expected: g.players(),
                found: polytopes.len(),
            });
        }
        for (i, p) in polytopes.iter().enumerate() {
            if p.owner() != i || p.dim() != g.num_actions(i) {
                return Err(GameError::BadMixedStrategy {
                    player: i,
                    reason: "polytope belongs to another player".into(),
                });
            }
        }
        Ok(MixedSpace { polytopes })
    }

    pub fn polytope(&self, player: usize) -> &Polytope {
        &self.polytopes[player]
    }

    pub fn with(&self, player: usize, p: Polytope) -> MixedSpace {
        let mut polytopes = self.polytopes.clone();
        polytopes[player] = p;
        MixedSpace { polytopes }
    }

    pub fn players(&self) -> usize {
        self.polytopes.len()
    }

    pub fn is_subset_of(&self, other: &MixedSpace) -> bool {
        self.polytopes
            .iter()
            .zip(&other.polytopes)
            .all(|(a, b)| a.vertices().iter().all(|v| b.contains(v)))
    }

    pub fn to_json(&self, g: &Game) -> Value {
        Value::Array(self.polytopes.iter().map(|p| p.to_json(g)).collect())
    }

    pub fn describe(&self, g: &Game) -> String {
        self.polytopes
            .iter()
            .map(|p| format!("{{{}}}", p.describe(g)))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// For every opponent vertex profile: player `player`'s payoff vector over
/// pure actions, and the best payoff attainable inside their own polytope.
pub struct RegretRows {
    pub payoffs: Vec<Vec<Rational>>,
    pub best: Vec<Rational>,
}

pub fn regret_rows(g: &Game, space: &MixedSpace, player: usize) -> RegretRows {
    let n = g.players();
    let counts: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            if j == player {
                vec![0]
            } else {
                (0..space.polytope(j).vertices().len()).collect()
            }
        })
        .collect();
    let own = space.polytope(player).vertices();
    let mut payoffs = Vec::new();
    let mut best = Vec::new();
    for_each_profile(&counts, |p| {
        let opp: Vec<&[Rational]> = (0..n)
            .map(|j| {
                if j == player {
                    &[][..]
                } else {
                    &space.polytope(j).vertices()[p[j]][..]
                }
            })
            .collect();
        let u = g.payoffs_against(player, &opp);
        let b = own.iter().map(|w| dot(w, &u)).max().unwrap();
        payoffs.push(u);
        best.push(b);
    });
    RegretRows { payoffs, best }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `regret_i^S(σ)`: worst regret over opponent vertex profiles, with the best
/// reply taken inside player `player`'s polytope.
pub fn mixed_regret(g: &Game, space: &MixedSpace, player: usize, sigma: &MixedStrategy) -> Result<Rational, MixedError> {
    sigma.check_for(g, player)?;
    if !space.polytope(player).contains(&sigma.weights) {
        return Err(MixedError::NotMember { player });
    }
    let rows = regret_rows(g, space, player);
    Ok(regret_of(&rows, &sigma.weights))
}

fn regret_of(rows: &RegretRows, weights: &[Rational]) -> Rational {
    rows.payoffs
        .iter()
        .zip(&rows.best)
        .map(|(u, b)| b - dot(weights, u))
        .max()
        .unwrap()
}

/// Minimax regret for player `player` and an optimal strategy.
///
/// Solves `min t` subject to `Σ_j λ_j U(w_j, v) + t >= best_v` for every
/// opponent vertex profile `v`, over convex weights `λ` on the vertices `w_j`
/// of the player's polytope.
pub fn min_mixed_regret(g: &Game, space: &MixedSpace, player: usize) -> Result<(Rational, MixedStrategy), MixedError> {
    let rows = regret_rows(g, space, player);
    let (t, weights) = solve_minimax(&rows, space.polytope(player).vertices())?;
    Ok((t, MixedStrategy { owner: player, weights }))
}

/// The minimax LP; also used by callers that build their own regret rows.
pub fn solve_minimax(rows: &RegretRows, vertices: &[Vec<Rational>]) -> Result<(Rational, Vec<Rational>), MixedError> {
    let m = vertices.len();
    if m == 1 {
        return Ok((regret_of(rows, &vertices[0]), vertices[0].clone()));
    }
    let mut lp = LinearProgram::new(m + 1);
    let mut objective = vec![zero(); m + 1];
    objective[m] = one();
    lp.minimize(objective);
    for (u, b) in rows.payoffs.iter().zip(&rows.best) {
        let mut coeffs: Vec<Rational> = vertices.iter().map(|w| dot(w, u)).collect();
        coeffs.push(one());
        lp.add(coeffs, Relation::Ge, b.clone());
    }
    let mut simplex = vec![one(); m];
    simplex.push(zero());
    lp.add(simplex, Relation::Eq, one());
    if std::env::var_os("REGRETLAB_LP_DUMP").is_some() {
        eprintln!("{}", lp.dump());
    }
    let (t, x) = lp
        .solve()
        .optimal()
        .ok_or_else(|| MixedError::Lp("minimax program has no optimum".into()))?;
    let dim = vertices[0].len();
    let mut weights = vec![zero(); dim];
    for (lambda, w) in x[..m].iter().zip(vertices) {
        for (acc, wi) in weights.iter_mut().zip(w) {
            *acc += lambda * wi;
        }
    }
    Ok((t, weights))
}

/// The set of regret-minimizing strategies in player `player`'s polytope.
pub fn argmin_polytope(g: &Game, space: &MixedSpace, player: usize, cap: usize) -> Result<Polytope, MixedError> {
    let rows = regret_rows(g, space, player);
    argmin_over(space.polytope(player), &rows, cap).map(|(p, _)| p)
}

/// Minimizers of the regret described by `rows` inside `own`, with the
/// minimum. `rows` may take best replies from a different set than `own`.
pub fn argmin_over(own: &Polytope, rows: &RegretRows, cap: usize) -> Result<(Polytope, Rational), MixedError> {
    let player = own.owner();
    let (t, _) = solve_minimax(rows, own.vertices())?;
    let polytope = match own.hrep() {
        Some(existing) => {
            let dim = own.dim();
            if dim > cap {
                return Err(MixedError::CapExceeded { player, dim, cap });
            }
            let mut constraints = existing.to_vec();
            for (u, b) in rows.payoffs.iter().zip(&rows.best) {
                let level = b - &t;
                constraints.push(u.iter().map(|x| x - &level).collect());
            }
            Polytope::from_hrep(player, dim, constraints)?
        }
        None => {
            let verts = own.vertices();
            let m = verts.len();
            if m > cap {
                return Err(MixedError::CapExceeded { player, dim: m, cap });
            }
            let constraints: Vec<Vec<Rational>> = rows
                .payoffs
                .iter()
                .zip(&rows.best)
                .map(|(u, b)| {
                    let level = b - &t;
                    verts.iter().map(|w| dot(w, u) - &level).collect()
                })
                .collect();
            let points = cone_rays(m, &constraints)
                .into_iter()
                .map(|lambda| {
                    let mut x = vec![zero(); own.dim()];
                    for (l, w) in lambda.iter().zip(verts) {
                        for (acc, wi) in x.iter_mut().zip(w) {
                            *acc += l * wi;
                        }
                    }
                    x
                })
                .collect();
            Polytope::from_vertices(player, own.dim(), points)?
        }
    };
    Ok((polytope, t))
}

/// Per-player minimax regret values of one mixed RM round.
pub type MixedRoundMeta = Vec<Rational>;
pub type MixedTrace = DeletionTrace<MixedSpace, MixedRoundMeta>;

pub fn rm_mixed_step(g: &Game, space: &MixedSpace, cap: usize) -> Result<(MixedSpace, MixedRoundMeta), MixedError> {
    let mut next = Vec::with_capacity(g.players());
    let mut values = Vec::with_capacity(g.players());
    for i in 0..g.players() {
        let rows = regret_rows(g, space, i);
        let (p, t) = argmin_over(space.polytope(i), &rows, cap)?;
        next.push(p);
        values.push(t);
    }
    Ok((MixedSpace { polytopes: next }, values))
}

/// Iterated regret minimization over mixed strategies from `space0`.
pub fn rm_mixed_iterate(
    g: &Game,
    space0: &MixedSpace,
    cap: usize,
    round_limit: usize,
) -> Result<MixedTrace, IterateError<MixedSpace, MixedRoundMeta, MixedError>> {
    DeletionTrace::iterate("RM-mixed", space0.clone(), Some(round_limit), |s| rm_mixed_step(g, s, cap))
}

pub fn trace_to_json(g: &Game, t: &MixedTrace) -> Value {
    t.to_json(
        "minregret",
        |s| s.to_json(g),
        |m| json!(m.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
    )
}

fn full_profile(g: &Game, player: usize, sigma: &MixedStrategy, opp: &[MixedStrategy]) -> Result<Vec<MixedStrategy>, GameError> {
    if opp.len() + 1 != g.players() {
        return Err(GameError::ProfileLength {
            expected: g.players() - 1,
            found: opp.len(),
        });
    }
    let mut profile = opp.to_vec();
    profile.insert(player, sigma.clone());
    for (j, s) in profile.iter().enumerate() {
        s.check_for(g, j)?;
    }
    Ok(profile)
}

/// Expected pure regret relative to `A_i`: the average of
/// `max_{a'} u_i(a', b) - u_i(a, b)` over `a ~ σ_i` and `b ~ σ_{-i}`.
/// `opp` lists the other players' strategies in player order.
pub fn regret_prime(g: &Game, player: usize, sigma: &MixedStrategy, opp: &[MixedStrategy]) -> Result<Rational, GameError> {
    let profile = full_profile(g, player, sigma, opp)?;
    let n = g.players();
    let supports: Vec<Vec<usize>> = (0..n)
        .map(|j| if j == player { vec![0] } else { profile[j].support() })
        .collect();
    let mut expected_best = zero();
    for_each_profile(&supports, |p| {
        let mut prob = one();
        for j in (0..n).filter(|&j| j != player) {
            prob *= &profile[j].weights[p[j]];
        }
        let mut q = p.to_vec();
        let best = (0..g.num_actions(player))
            .map(|a| {
                q[player] = a;
                g.payoff(&q, player).clone()
            })
            .max()
            .unwrap();
        expected_best += prob * best;
    });
    Ok(expected_best - &g.expected_utility(&profile)?[player])
}

/// Regret of `σ_i` against a fixed opponent profile, best reply over all of `Δ(A_i)`.
pub fn regret_against(g: &Game, player: usize, sigma: &MixedStrategy, opp: &[MixedStrategy]) -> Result<Rational, GameError> {
    let profile = full_profile(g, player, sigma, opp)?;
    let weights: Vec<&[Rational]> = profile.iter().map(|s| &s.weights[..]).collect();
    let u = g.payoffs_against(player, &weights);
    Ok(u.iter().max().unwrap() - sigma.dot(&u))
}

/// Brute-force minimax regret over the grid of strategies with denominator
/// `resolution`, against the full space. An upper bound on the LP value.
pub fn grid_oracle_min_regret(g: &Game, player: usize, resolution: u32) -> Result<(Rational, MixedStrategy), MixedError> {
    let k = g.num_actions(player);
    if k > 4 {
        return Err(MixedError::GridTooLarge { player, actions: k });
    }
    let rows = regret_rows(g, &MixedSpace::full(g), player);
    let res = int(resolution as i64);
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let mut parts = vec![0u32; k];
    fn walk(
        idx: usize,
        left: u32,
        parts: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if idx + 1 == parts.len() {
            parts[idx] = left;
            visit(parts);
            return;
        }
        for x in 0..=left {
            parts[idx] = x;
            walk(idx + 1, left - x, parts, visit);
        }
    }
    walk(0, resolution, &mut parts, &mut |p| {
        let w: Vec<Rational> = p.iter().map(|&x| int(x as i64) / &res).collect();
        let r = regret_of(&rows, &w);
        if best.as_ref().map_or(true, |(b, _)| r < *b) {
            best = Some((r, w));
        }
    });
    let (value, weights) = best.unwrap();
    Ok((value, MixedStrategy { owner: player, weights }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::ratio;

    fn strat(owner: usize, w: &[(i64, i64)]) -> MixedStrategy {
        MixedStrategy::new(owner, w.iter().map(|&(n, d)| ratio(n, d)).collect()).unwrap()
    }

    #[test]
    fn matching_pennies_half_half() {
        let g = matching_pennies().unwrap();
        let full = MixedSpace::full(&g);
        assert_eq!(mixed_regret(&g, &full, 0, &strat(0, &[(1, 2), (1, 2)])).unwrap(), int(20));
        let p = argmin_polytope(&g, &full, 0, DEFAULT_CAP).unwrap();
        assert_eq!(p.vertices(), &[vec![ratio(1, 2), ratio(1, 2)]]);
    }

    #[test]
    fn asymmetric_matching_pennies_value() {
        let g = asym_matching_pennies().unwrap();
        let (t, s) = min_mixed_regret(&g, &MixedSpace::full(&g), 0).unwrap();
        assert_eq!(t, int(35));
        assert_eq!(s.weights, vec![ratio(7, 8), ratio(1, 8)]);
    }

    #[test]
    fn coordination_value() {
        let g = coordination(&int(3)).unwrap();
        let (t, s) = min_mixed_regret(&g, &MixedSpace::full(&g), 0).unwrap();
        assert_eq!(t, ratio(3, 4));
        assert_eq!(s.weights[1], ratio(1, 4));
    }

    #[test]
    fn dominant_action_has_zero_regret() {
        let g = pd(&int(1), &int(3), &int(4)).unwrap();
        let full = MixedSpace::full(&g);
        assert_eq!(mixed_regret(&g, &full, 0, &MixedStrategy::pure(0, 2, 1)).unwrap(), zero());
        let p = argmin_polytope(&g, &full, 0, DEFAULT_CAP).unwrap();
        assert_eq!(p.vertices(), &[vec![zero(), one()]]);
        let t = rm_mixed_iterate(&g, &full, DEFAULT_CAP, DEFAULT_ROUND_LIMIT).unwrap();
        assert_eq!(t.rounds_of_change(), 1);
    }

    #[test]
    fn membership_is_enforced() {
        let g = pd(&int(1), &int(3), &int(4)).unwrap();
        let s = MixedSpace::from_pure(&g, &PureSpace::new(&g, vec![vec![1], vec![0, 1]]).unwrap());
        assert!(matches!(
            mixed_regret(&g, &s, 0, &MixedStrategy::uniform(0, 2)),
            Err(MixedError::NotMember { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let g = rps().unwrap();
        assert!(matches!(
            argmin_polytope(&g, &MixedSpace::full(&g), 0, 2),
            Err(MixedError::CapExceeded { dim: 3, cap: 2, .. })
        ));
    }

    #[test]
    fn vertex_only_polytopes_use_weight_space() {
        let g = matching_pennies().unwrap();
        let hull = Polytope::from_vertices(0, 2, vec![vec![one(), zero()], vec![zero(), one()]]).unwrap();
        assert!(hull.hrep().is_none());
        let space = MixedSpace::full(&g).with(0, hull);
        let p = argmin_polytope(&g, &space, 0, DEFAULT_CAP).unwrap();
        assert_eq!(p.vertices(), &[vec![ratio(1, 2), ratio(1, 2)]]);
    }

    #[test]
    fn regret_prime_and_regret_at_pure_best_reply() {
        let g = pd(&int(1), &int(3), &int(4)).unwrap();
        let d = MixedStrategy::pure(0, 2, 1);
        let opp = [MixedStrategy::pure(1, 2, 0)];
        assert_eq!(regret_prime(&g, 0, &d, &opp).unwrap(), zero());
        assert_eq!(regret_against(&g, 0, &d, &opp).unwrap(), zero());
    }

    #[test]
    fn grid_oracle_is_an_upper_bound() {
        let g = coordination(&int(3)).unwrap();
        let (v, _) = grid_oracle_min_regret(&g, 0, 100).unwrap();
        assert!(v >= ratio(3, 4) && v - ratio(3, 4) <= ratio(1, 100));
        let one_action = Game::new(vec![vec!["x".into()], vec!["y".into(), "z".into()]], vec![vec![int(1), int(0)], vec![int(2), int(1)]]).unwrap();
        assert_eq!(grid_oracle_min_regret(&one_action, 0, 7).unwrap().0, zero());
    }
}
