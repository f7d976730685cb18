//! Finitely repeated prisoner's dilemma.
//!
//! A full deterministic plan for `n` rounds is a bit mask over the
//! `2^n - 1` opponent histories a player can observe: bit `(2^t - 1) + h`
//! says what to do in round `t` (0-based) after seeing opponent moves `h`
//! (bit `j` of `h` is round `j`, set means defect). A set bit means defect.
//!
//! `s_k` plays tit-for-tat for `k` rounds and defects afterwards, so `s_0`
//! always defects and `s_n` is tit-for-tat.

use crate::game::{GameError, MixedStrategy};
use crate::generators::check_pd_payoffs;
use crate::rational::{int, zero, Rational};
use crate::regret_mixed;
use serde_json::{json, Value};

/// Largest round count for which the full payoff table is materialized.
pub const MAX_MATRIX_ROUNDS: u32 = 3;
/// Largest round count handled by the always-defect brute force.
pub const MAX_BRUTE_FORCE_ROUNDS: u32 = 4;

pub fn plan_count(rounds: u32) -> usize {
    1usize << ((1u32 << rounds) - 1)
}

fn info_set(round: u32, history: u32) -> u32 {
    (1 << round) - 1 + history
}

fn defects(plan: u32, round: u32, history: u32) -> bool {
    plan >> info_set(round, history) & 1 == 1
}

/// `c/cd/cdcd`-style label: one group per round, one letter per observed history.
pub fn plan_label(plan: usize, rounds: u32) -> String {
    (0..rounds)
        .map(|t| {
            (0..1u32 << t)
                .map(|h| if defects(plan as u32, t, h) { 'd' } else { 'c' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("/")
}

/// Stage payoffs for the row player.
#[derive(Debug, Clone)]
pub struct Stage {
    pub u1: Rational,
    pub u2: Rational,
    pub u3: Rational,
}

impl Stage {
    pub fn new(u1: &Rational, u2: &Rational, u3: &Rational) -> Stage {
        Stage {
            u1: u1.clone(),
            u2: u2.clone(),
            u3: u3.clone(),
        }
    }

    /// Row player's payoff; `true` means defect.
    pub fn payoff(&self, me: bool, other: bool) -> Rational {
        match (me, other) {
            (false, false) => self.u2.clone(),
            (false, true) => zero(),
            (true, false) => self.u3.clone(),
            (true, true) => self.u1.clone(),
        }
    }
}

/// Plays two plans against each other and returns both totals.
pub fn play(plan1: u32, plan2: u32, rounds: u32, stage: &Stage) -> (Rational, Rational) {
    let (mut h1, mut h2) = (0u32, 0u32);
    let (mut p1, mut p2) = (zero(), zero());
    for t in 0..rounds {
        let a = defects(plan1, t, h1);
        let b = defects(plan2, t, h2);
        p1 += stage.payoff(a, b);
        p2 += stage.payoff(b, a);
        h1 |= (b as u32) << t;
        h2 |= (a as u32) << t;
    }
    (p1, p2)
}

/// Row player's total when following the fixed action sequence `seq` (bit `t` set = defect).
fn play_sequence(seq: u32, plan2: u32, rounds: u32, stage: &Stage) -> Rational {
    let mut h2 = 0u32;
    let mut total = zero();
    for t in 0..rounds {
        let a = seq >> t & 1 == 1;
        let b = defects(plan2, t, h2);
        total += stage.payoff(a, b);
        h2 |= (a as u32) << t;
    }
    total
}

/// The plan mask of `s_k` for `rounds` rounds.
pub fn tft_plan(k: u32, rounds: u32) -> u32 {
    let mut mask = 0u32;
    for t in 0..rounds {
        for h in 0..1u32 << t {
            let d = if t >= k {
                true
            } else if t == 0 {
                false
            } else {
                h >> (t - 1) & 1 == 1
            };
            if d {
                mask |= 1 << info_set(t, h);
            }
        }
    }
    mask
}

/// Whether `s_k` defects in round `t` (0-based) given the opponent's previous move.
fn tft_defects(k: u32, t: u32, opp_prev_defect: bool) -> bool {
    if t >= k {
        true
    } else if t == 0 {
        false
    } else {
        opp_prev_defect
    }
}

/// Totals of `s_k` against `s_l` over `n` rounds, by direct play.
pub fn simulate_tft(k: u32, l: u32, n: u32, stage: &Stage) -> (Rational, Rational) {
    let (mut prev_a, mut prev_b) = (false, false);
    let (mut p1, mut p2) = (zero(), zero());
    for t in 0..n {
        let a = tft_defects(k, t, prev_b);
        let b = tft_defects(l, t, prev_a);
        p1 += stage.payoff(a, b);
        p2 += stage.payoff(b, a);
        prev_a = a;
        prev_b = b;
    }
    (p1, p2)
}

/// Best total achievable by any plan against `s_l`, by dynamic programming over
/// (round, own previous move), which is all `s_l` reacts to.
pub fn best_response_value_to_tft(l: u32, n: u32, stage: &Stage) -> Rational {
    // value[prev] for the remaining rounds.
    let mut next = [zero(), zero()];
    for t in (0..n).rev() {
        let mut cur = [zero(), zero()];
        for prev in 0..2 {
            let b = tft_defects(l, t, prev == 1);
            cur[prev] = [false, true]
                .iter()
                .map(|&a| stage.payoff(a, b) + &next[a as usize])
                .max()
                .unwrap();
        }
        next = cur;
    }
    next[0].clone()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub k: usize,
    pub l: Option<usize>,
    pub simulated: Rational,
    pub formula: Rational,
}

#[derive(Debug, Clone)]
pub struct TftAnalysis {
    pub n: u32,
    /// `payoff[k][l]`: total of `s_k` against `s_l`.
    pub payoff: Vec<Vec<Rational>>,
    /// `regret[k][l]`: regret of `s_k` given `s_l`, own choices in `{s_0..s_n}`.
    pub regret: Vec<Vec<Rational>>,
    pub max_regret: Vec<Rational>,
    pub minregret: Rational,
    pub argmin: Vec<usize>,
    /// Best replies to each `s_l` within `{s_0..s_n}`.
    pub best_responses: Vec<Vec<usize>>,
    /// Whether the best reply within `{s_k}` is as good as any plan, per `l`.
    pub restricted_best_is_global: Vec<bool>,
    pub pair_discrepancies: Vec<Discrepancy>,
    pub max_discrepancies: Vec<Discrepancy>,
    /// Minimax regret over mixtures of `{s_0..s_n}` and a witness.
    pub mixed_minregret: Rational,
    pub mixed_witness: MixedStrategy,
}

/// Closed-form pairwise regret table for `s_k` against `s_l`.
pub fn formula_pair_regret(k: usize, l: usize, s: &Stage) -> Rational {
    if k < l {
        int((l - k - 1) as i64) * (&s.u2 - &s.u1)
    } else if k == l && k > 0 {
        &s.u3 + &s.u1 - int(2) * &s.u2
    } else if k > l && l > 0 {
        &s.u3 + &s.u1 - &s.u2
    } else if k > l {
        s.u1.clone()
    } else {
        zero()
    }
}

/// Closed-form maximum regret of `s_k`.
pub fn formula_max_regret(k: usize, n: u32, s: &Stage) -> Rational {
    let n = n as i64;
    let d = &s.u2 - &s.u1;
    match k {
        0 => int(n) * d,
        1 => [
            int(n - 1) * &d,
            &s.u3 + &s.u1 - int(2) * &s.u2,
            s.u1.clone(),
        ]
        .into_iter()
        .max()
        .unwrap(),
        _ => std::cmp::max(int(n - k as i64 - 1) * d, &s.u3 + &s.u1 - &s.u2),
    }
}

/// Regret analysis of the `s_k` family against itself, by exact play-outs.
pub fn tft_analysis(n: u32, u1: &Rational, u2: &Rational, u3: &Rational) -> Result<TftAnalysis, GameError> {
    check_pd_payoffs(u1, u2, u3)?;
    if n == 0 {
        return Err(GameError::InvalidParameter("need at least one round".into()));
    }
    let stage = Stage::new(u1, u2, u3);
    let m = n as usize + 1;
    let payoff: Vec<Vec<Rational>> = (0..m)
        .map(|k| (0..m).map(|l| simulate_tft(k as u32, l as u32, n, &stage).0).collect())
        .collect();
    let best: Vec<Rational> = (0..m)
        .map(|l| (0..m).map(|k| payoff[k][l].clone()).max().unwrap())
        .collect();
    let best_responses = (0..m)
        .map(|l| (0..m).filter(|&k| payoff[k][l] == best[l]).collect())
        .collect();
    let restricted_best_is_global = (0..m)
        .map(|l| best_response_value_to_tft(l as u32, n, &stage) == best[l])
        .collect();
    let regret: Vec<Vec<Rational>> = (0..m)
        .map(|k| (0..m).map(|l| &best[l] - &payoff[k][l]).collect())
        .collect();
    let max_regret: Vec<Rational> = regret.iter().map(|r| r.iter().max().unwrap().clone()).collect();
    let minregret = max_regret.iter().min().unwrap().clone();
    let argmin = (0..m).filter(|&k| max_regret[k] == minregret).collect();

    let mut pair_discrepancies = Vec::new();
    for k in 0..m {
        for l in 0..m {
            let f = formula_pair_regret(k, l, &stage);
            if f != regret[k][l] {
                pair_discrepancies.push(Discrepancy {
                    k,
                    l: Some(l),
                    simulated: regret[k][l].clone(),
                    formula: f,
                });
            }
        }
    }
    let max_discrepancies = (0..m)
        .filter_map(|k| {
            let f = formula_max_regret(k, n, &stage);
            (f != max_regret[k]).then(|| Discrepancy {
                k,
                l: None,
                simulated: max_regret[k].clone(),
                formula: f,
            })
        })
        .collect();

    let restricted = crate::game::Game::from_fn(
        vec![
            (0..m).map(|k| format!("s{}", k)).collect(),
            (0..m).map(|k| format!("s{}", k)).collect(),
        ],
        |p| vec![payoff[p[0]][p[1]].clone(), payoff[p[1]][p[0]].clone()],
    )?;
    let space = regret_mixed::MixedSpace::full(&restricted);
    let (mixed_minregret, mixed_witness) = regret_mixed::min_mixed_regret(&restricted, &space, 0)
        .map_err(|e| GameError::InvalidParameter(e.to_string()))?;

    Ok(TftAnalysis {
        n,
        payoff,
        regret,
        max_regret,
        minregret,
        argmin,
        best_responses,
        restricted_best_is_global,
        pair_discrepancies,
        max_discrepancies,
        mixed_minregret,
        mixed_witness,
    })
}

fn discrepancy_json(d: &Discrepancy) -> Value {
    json!({
        "k": d.k,
        "l": d.l,
        "simulated": d.simulated.to_string(),
        "formula": d.formula.to_string(),
    })
}

impl TftAnalysis {
    pub fn to_json(&self) -> Value {
        let table = |t: &Vec<Vec<Rational>>| -> Value {
            t.iter()
                .map(|row| row.iter().map(|r| r.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into()
        };
        json!({
            "rounds": self.n,
            "regret": table(&self.regret),
            "max_regret": self.max_regret.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "formula_max_regret": self.max_discrepancies.iter().map(discrepancy_json).collect::<Vec<_>>(),
            "minregret": self.minregret.to_string(),
            "argmin": self.argmin.iter().map(|k| format!("s{}", k)).collect::<Vec<_>>(),
            "pair_discrepancies": self.pair_discrepancies.iter().map(discrepancy_json).collect::<Vec<_>>(),
            "mixed_minregret": self.mixed_minregret.to_string(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaMatch {
    Statement,
    Proof,
    Both,
    Neither,
}

#[derive(Debug, Clone)]
pub struct AlwaysDefectReport {
    pub rounds: u32,
    pub regret: Rational,
    /// Lowest-index opponent plan attaining the maximum regret.
    pub witness: u32,
    pub witness_label: String,
    /// `(n-1)(u3-u2) + max(-u1, u2-u3)`.
    pub statement_formula: Rational,
    /// `max((n-1)(u3-u1) - u1, (n-1)(u3-u1) + u2 - u3)`.
    pub proof_formula: Rational,
    pub matches: FormulaMatch,
    /// Smallest maximum regret among plans that cooperate at some point while
    /// having seen only defection, with its lowest-index attaining plan.
    /// Computed when the full payoff table is available.
    pub cooperate_first_min: Option<(Rational, u32)>,
}

/// Plans that cooperate at some node whose observed history is all defection.
pub fn cooperates_before_seeing_cooperation(plan: u32, rounds: u32) -> bool {
    (0..rounds).any(|t| !defects(plan, t, (1 << t) - 1))
}

/// Best reply value to every opponent plan, by trying each own action sequence.
fn best_values_by_sequences(rounds: u32, stage: &Stage) -> Vec<Rational> {
    let count = plan_count(rounds) as u32;
    (0..count)
        .map(|q| {
            (0..1u32 << rounds)
                .map(|seq| play_sequence(seq, q, rounds, stage))
                .max()
                .unwrap()
        })
        .collect()
}

/// Exact maximum regret of always-defect over every deterministic opponent plan.
pub fn always_defect_regret(
    rounds: u32,
    u1: &Rational,
    u2: &Rational,
    u3: &Rational,
) -> Result<AlwaysDefectReport, GameError> {
    check_pd_payoffs(u1, u2, u3)?;
    if rounds == 0 || rounds > MAX_BRUTE_FORCE_ROUNDS {
        return Err(GameError::TooLarge(format!(
            "always-defect brute force supports 1..={} rounds, got {}",
            MAX_BRUTE_FORCE_ROUNDS, rounds
        )));
    }
    let stage = Stage::new(u1, u2, u3);
    let count = plan_count(rounds) as u32;
    let ad = count - 1;
    let best = best_values_by_sequences(rounds, &stage);

    let (mut regret, mut witness) = (zero(), 0);
    for q in 0..count {
        let r = &best[q as usize] - play(ad, q, rounds, &stage).0;
        if r > regret {
            regret = r;
            witness = q;
        }
    }

    let cooperate_first_min = (rounds <= MAX_MATRIX_ROUNDS).then(|| {
        let mut bestmin: Option<(Rational, u32)> = None;
        for p in (0..count).filter(|&p| cooperates_before_seeing_cooperation(p, rounds)) {
            let worst = (0..count)
                .map(|q| &best[q as usize] - play(p, q, rounds, &stage).0)
                .max()
                .unwrap();
            if bestmin.as_ref().map_or(true, |(v, _)| worst < *v) {
                bestmin = Some((worst, p));
            }
        }
        bestmin.expect("some plan cooperates first")
    });

    let n1 = int(rounds as i64 - 1);
    let statement_formula = &n1 * (u3 - u2) + std::cmp::max(-u1.clone(), u2 - u3);
    let proof_formula = std::cmp::max(&n1 * (u3 - u1) - u1, &n1 * (u3 - u1) + u2 - u3);
    let matches = match (statement_formula == regret, proof_formula == regret) {
        (true, true) => FormulaMatch::Both,
        (true, false) => FormulaMatch::Statement,
        (false, true) => FormulaMatch::Proof,
        (false, false) => FormulaMatch::Neither,
    };
    Ok(AlwaysDefectReport {
        rounds,
        regret,
        witness,
        witness_label: plan_label(witness as usize, rounds),
        statement_formula,
        proof_formula,
        matches,
        cooperate_first_min,
    })
}

impl AlwaysDefectReport {
    pub fn to_json(&self) -> Value {
        json!({
            "rounds": self.rounds,
            "regret": self.regret.to_string(),
            "witness": self.witness_label,
            "statement_formula": self.statement_formula.to_string(),
            "proof_formula": self.proof_formula.to_string(),
            "matches": format!("{:?}", self.matches).to_lowercase(),
            "cooperate_first_min": self.cooperate_first_min.as_ref().map(|(v, _)| v.to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stage() -> Stage {
        Stage::new(&int(1), &int(3), &int(4))
    }

    #[test]
    fn plan_counts() {
        assert_eq!(plan_count(1), 2);
        assert_eq!(plan_count(2), 8);
        assert_eq!(plan_count(3), 128);
        assert_eq!(plan_count(4), 32768);
    }

    #[test]
    fn tft_plans_agree_with_direct_simulation() {
        let s = stage();
        for n in 1..=4 {
            for k in 0..=n {
                for l in 0..=n {
                    assert_eq!(
                        play(tft_plan(k, n), tft_plan(l, n), n, &s),
                        simulate_tft(k, l, n, &s),
                        "n={} k={} l={}",
                        n,
                        k,
                        l
                    );
                }
            }
        }
        assert_eq!(plan_label(tft_plan(2, 2) as usize, 2), "c/cd");
        assert_eq!(plan_label(tft_plan(0, 2) as usize, 2), "d/dd");
    }

    #[test]
    fn dynamic_programming_matches_sequence_search() {
        let s = stage();
        for n in 1..=4 {
            let best = best_values_by_sequences(n, &s);
            for l in 0..=n {
                assert_eq!(best[tft_plan(l, n) as usize], best_response_value_to_tft(l, n, &s));
            }
        }
    }

    #[test]
    fn sequence_search_matches_plan_search() {
        let s = stage();
        for n in 1..=3 {
            let count = plan_count(n) as u32;
            let best = best_values_by_sequences(n, &s);
            for q in 0..count {
                let direct = (0..count).map(|p| play(p, q, n, &s).0).max().unwrap();
                assert_eq!(best[q as usize], direct);
            }
        }
    }

    #[test]
    fn single_shot_defection_has_no_regret() {
        let r = always_defect_regret(1, &int(1), &int(3), &int(4)).unwrap();
        assert_eq!(r.regret, zero());
    }

    #[test]
    fn rejects_too_many_rounds() {
        assert!(always_defect_regret(5, &int(1), &int(3), &int(4)).is_err());
    }
}
