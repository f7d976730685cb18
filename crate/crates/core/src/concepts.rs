//! Rival deletion operators and equilibria: dominance, justifiability and pure Nash.

use crate::game::{for_each_profile, Game};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{one, zero, Rational};
use crate::regret_pure::{rm_step, RegretReport};
use crate::space::{DeletionTrace, PureSpace};
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceKind {
    Weak,
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationWitness {
    pub player: usize,
    pub dominated: usize,
    pub dominator: usize,
    pub kind: DominanceKind,
    /// For weak dominance, an opponent profile (full length, own entry
    /// ignored) where the dominator does strictly better.
    pub strict_at: Option<Vec<usize>>,
}

impl DominationWitness {
    /// Replays the inequalities against `space` from the stored utilities.
    pub fn verify(&self, g: &Game, space: &PureSpace) -> bool {
        let i = self.player;
        if !space.contains(i, self.dominated) || !space.contains(i, self.dominator) {
            return false;
        }
        let mut ok = true;
        space.for_each_opponent_profile(i, |p| {
            let (better, worse) = pair_payoffs(g, i, p, self.dominator, self.dominated);
            ok &= match self.kind {
                DominanceKind::Weak => better >= worse,
                DominanceKind::Strong => better > worse,
            };
        });
        if self.kind == DominanceKind::Weak {
            ok &= match &self.strict_at {
                Some(p) => {
                    let (better, worse) = pair_payoffs(g, i, p, self.dominator, self.dominated);
                    (0..space.players()).all(|j| j == i || space.contains(j, p[j])) && better > worse
                }
                None => false,
            };
        }
        ok
    }

    pub fn to_json(&self, g: &Game) -> Value {
        let i = self.player;
        json!({
            "player": i,
            "dominated": g.label(i, self.dominated),
            "dominator": g.label(i, self.dominator),
            "kind": match self.kind { DominanceKind::Weak => "weak", DominanceKind::Strong => "strong" },
            "strict_at": self.strict_at.as_ref().map(|p| {
                p.iter().enumerate().map(|(j, &a)| if j == i { "*".to_string() } else { g.label(j, a).to_string() }).collect::<Vec<_>>()
            }),
        })
    }
}

fn pair_payoffs(g: &Game, i: usize, opp: &[usize], a: usize, b: usize) -> (Rational, Rational) {
    let mut p = opp.to_vec();
    p[i] = a;
    let ua = g.payoff(&p, i).clone();
    p[i] = b;
    (ua, g.payoff(&p, i).clone())
}

/// Tests whether `tau` dominates `sigma` for player `i` over `S_{-i}`.
fn dominates(g: &Game, space: &PureSpace, i: usize, tau: usize, sigma: usize, kind: DominanceKind) -> Option<Option<Vec<usize>>> {
    let mut never_worse = true;
    let mut always_better = true;
    let mut strict_at = None;
    space.for_each_opponent_profile(i, |p| {
        if !never_worse {
            return;
        }
        let (ut, us) = pair_payoffs(g, i, p, tau, sigma);
        if ut < us {
            never_worse = false;
        } else if ut > us {
            if strict_at.is_none() {
                let mut q = p.to_vec();
                q[i] = sigma;
                strict_at = Some(q);
            }
        } else {
            always_better = false;
        }
    });
    match kind {
        DominanceKind::Strong if never_worse && always_better => Some(None),
        DominanceKind::Weak if never_worse && strict_at.is_some() => Some(strict_at),
        _ => None,
    }
}

/// One round of deleting strategies dominated by a pure strategy in `S_i`.
///
/// Witnesses name the dominator closest in index to the removed action,
/// preferring the lower index on ties.
pub fn dominance_step(g: &Game, space: &PureSpace, kind: DominanceKind) -> (PureSpace, Vec<DominationWitness>) {
    let mut witnesses = Vec::new();
    let mut sets = Vec::with_capacity(g.players());
    for i in 0..g.players() {
        let own = space.set(i);
        let mut kept = Vec::new();
        for &sigma in own {
            let mut candidates: Vec<usize> = own.iter().copied().filter(|&t| t != sigma).collect();
            candidates.sort_by_key(|&t| (t.abs_diff(sigma), t));
            let found = candidates
                .into_iter()
                .find_map(|tau| dominates(g, space, i, tau, sigma, kind).map(|s| (tau, s)));
            match found {
                Some((dominator, strict_at)) => witnesses.push(DominationWitness {
                    player: i,
                    dominated: sigma,
                    dominator,
                    kind,
                    strict_at,
                }),
                None => kept.push(sigma),
            }
        }
        sets.push(kept);
    }
    let next = PureSpace::new(g, sets).expect("an undominated strategy always remains");
    (next, witnesses)
}

/// Evidence that an action is a best response to some belief over `S_{-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub player: usize,
    pub action: usize,
    /// Probabilities on opponent profiles (own entry ignored); `None` when
    /// the action was removed.
    pub belief: Option<Vec<(Vec<usize>, Rational)>>,
}

impl Justification {
    /// Checks by direct expected-utility comparison that the action is a
    /// weak best response within `S_i` to the stored belief.
    pub fn verify(&self, g: &Game, space: &PureSpace) -> bool {
        let Some(belief) = &self.belief else { return false };
        let total: Rational = belief.iter().map(|(_, w)| w.clone()).sum();
        if total != one() || belief.iter().any(|(_, w)| *w < zero()) {
            return false;
        }
        let value = |a: usize| -> Rational {
            belief
                .iter()
                .map(|(p, w)| {
                    let mut q = p.clone();
                    q[self.player] = a;
                    w * g.payoff(&q, self.player)
                })
                .sum()
        };
        let mine = value(self.action);
        space.set(self.player).iter().all(|&b| value(b) <= mine)
    }

    pub fn to_json(&self, g: &Game) -> Value {
        let i = self.player;
        json!({
            "player": i,
            "action": g.label(i, self.action),
            "belief": self.belief.as_ref().map(|b| b.iter().map(|(p, w)| json!({
                "profile": p.iter().enumerate().map(|(j, &a)| if j == i { "*".to_string() } else { g.label(j, a).to_string() }).collect::<Vec<_>>(),
                "probability": w.to_string(),
            })).collect::<Vec<_>>()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JustifiabilityRound {
    pub certificates: Vec<Justification>,
    /// Set when beliefs were joint distributions over two or more opponents.
    pub correlated: bool,
}

/// Keeps each action that is a weak best response within `S_i` to some
/// distribution over opponent profiles in `S_{-i}`.
pub fn justifiable_step(g: &Game, space: &PureSpace) -> (PureSpace, JustifiabilityRound) {
    let mut certificates = Vec::new();
    let mut sets = Vec::with_capacity(g.players());
    // Symmetric games hand every player the same table; solve it once.
    let mut solved: Vec<(Vec<Vec<Rational>>, Vec<Option<Vec<(usize, Rational)>>>)> = Vec::new();
    for i in 0..g.players() {
        let mut opp = Vec::new();
        space.for_each_opponent_profile(i, |p| opp.push(p.to_vec()));
        let own = space.set(i);
        let table: Vec<Vec<Rational>> = own
            .iter()
            .map(|&a| {
                opp.iter()
                    .map(|p| {
                        let mut q = p.clone();
                        q[i] = a;
                        g.payoff(&q, i).clone()
                    })
                    .collect()
            })
            .collect();
        let beliefs = match solved.iter().find(|(t, _)| *t == table) {
            Some((_, b)) => b.clone(),
            None => {
                let b: Vec<_> = (0..own.len())
                    .map(|row| pure_belief(&table, row).or_else(|| lp_belief(&table, row)))
                    .collect();
                solved.push((table, b.clone()));
                b
            }
        };
        let mut kept = Vec::new();
        for (&a, belief) in own.iter().zip(beliefs) {
            if belief.is_some() {
                kept.push(a);
            }
            let belief = belief.map(|b| b.into_iter().map(|(c, w)| (opp[c].clone(), w)).collect());
            certificates.push(Justification { player: i, action: a, belief });
        }
        sets.push(kept);
    }
    let next = PureSpace::new(g, sets).expect("some action is a best response to every belief");
    (
        next,
        JustifiabilityRound {
            certificates,
            correlated: g.players() > 2,
        },
    )
}

fn pure_belief(table: &[Vec<Rational>], row: usize) -> Option<Vec<(usize, Rational)>> {
    (0..table[row].len())
        .find(|&c| table.iter().all(|r| r[c] <= table[row][c]))
        .map(|c| vec![(c, one())])
}

fn lp_belief(table: &[Vec<Rational>], row: usize) -> Option<Vec<(usize, Rational)>> {
    let m = table[row].len();
    let mut lp = LinearProgram::new(m);
    for (other, r) in table.iter().enumerate() {
        if other != row {
            let diff = (0..m).map(|c| &table[row][c] - &r[c]).collect();
            lp.add(diff, Relation::Ge, zero());
        }
    }
    lp.add(vec![one(); m], Relation::Eq, one());
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => Some(
            x.into_iter()
                .enumerate()
                .filter(|(_, w)| *w != zero())
                .collect(),
        ),
        _ => None,
    }
}

/// Pure profiles where no player gains by a unilateral deviation.
pub fn pure_nash(g: &Game) -> Vec<Vec<usize>> {
    let n = g.players();
    let full = PureSpace::full(g);
    let mut best: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut values = vec![zero(); g.num_profiles()];
        full.for_each_opponent_profile(i, |p| {
            let mut q = p.to_vec();
            let b = (0..g.num_actions(i))
                .map(|a| {
                    q[i] = a;
                    g.payoff(&q, i).clone()
                })
                .max()
                .unwrap();
            for a in 0..g.num_actions(i) {
                q[i] = a;
                values[g.profile_index(&q)] = b.clone();
            }
        });
        best.push(values);
    }
    let mut out = Vec::new();
    let sets: Vec<Vec<usize>> = (0..n).map(|i| (0..g.num_actions(i)).collect()).collect();
    for_each_profile(&sets, |p| {
        let idx = g.profile_index(p);
        if (0..n).all(|i| *g.payoff(p, i) == best[i][idx]) {
            out.push(p.to_vec());
        }
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiskDominant {
    /// The profile on the first diagonal cell.
    First,
    Second,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiskDominance {
    /// Products of deviation losses at the first and second diagonal cells.
    pub products: (Rational, Rational),
    pub winner: RiskDominant,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a 2x2 generalized coordination game: {0}")]
pub struct ShapeError(pub String);

pub fn risk_dominance(g: &Game) -> Result<RiskDominance, ShapeError> {
    if g.players() != 2 || g.num_actions(0) != 2 || g.num_actions(1) != 2 {
        return Err(ShapeError("expected two players with two actions each".into()));
    }
    let u = |a: usize, b: usize, i: usize| g.payoff(&[a, b], i).clone();
    let losses = [
        (u(0, 0, 0) - u(1, 0, 0), u(0, 0, 1) - u(0, 1, 1)),
        (u(1, 1, 0) - u(0, 1, 0), u(1, 1, 1) - u(1, 0, 1)),
    ];
    if losses.iter().any(|(x, y)| *x <= zero() || *y <= zero()) {
        return Err(ShapeError("both diagonal cells must be strict equilibria".into()));
    }
    let first = &losses[0].0 * &losses[0].1;
    let second = &losses[1].0 * &losses[1].1;
    let winner = match first.cmp(&second) {
        std::cmp::Ordering::Greater => RiskDominant::First,
        std::cmp::Ordering::Less => RiskDominant::Second,
        std::cmp::Ordering::Equal => RiskDominant::Tie,
    };
    Ok(RiskDominance {
        products: (first, second),
        winner,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Rm,
    Wd,
    Sd,
    Just,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::Rm => "RM",
            Operator::Wd => "WD",
            Operator::Sd => "SD",
            Operator::Just => "JUST",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepMeta {
    Regrets(Vec<RegretReport>),
    Dominance(Vec<DominationWitness>),
    Justifiability(JustifiabilityRound),
}

impl StepMeta {
    pub fn to_json(&self, g: &Game) -> Value {
        match self {
            StepMeta::Regrets(r) => Value::Array(r.iter().map(|x| x.to_json(g)).collect()),
            StepMeta::Dominance(w) => Value::Array(w.iter().map(|x| x.to_json(g)).collect()),
            StepMeta::Justifiability(j) => json!({
                "correlated_beliefs": j.correlated,
                "certificates": j.certificates.iter().map(|c| c.to_json(g)).collect::<Vec<_>>(),
            }),
        }
    }
}

pub type OperatorTrace = DeletionTrace<PureSpace, StepMeta>;

pub fn apply_operator(g: &Game, space: &PureSpace, op: Operator) -> (PureSpace, StepMeta) {
    match op {
        Operator::Rm => {
            let (s, r) = rm_step(g, space);
            (s, StepMeta::Regrets(r))
        }
        Operator::Wd => {
            let (s, w) = dominance_step(g, space, DominanceKind::Weak);
            (s, StepMeta::Dominance(w))
        }
        Operator::Sd => {
            let (s, w) = dominance_step(g, space, DominanceKind::Strong);
            (s, StepMeta::Dominance(w))
        }
        Operator::Just => {
            let (s, j) = justifiable_step(g, space);
            (s, StepMeta::Justifiability(j))
        }
    }
}

pub fn iterate_operator(g: &Game, space0: &PureSpace, op: Operator) -> OperatorTrace {
    DeletionTrace::iterate(op.name(), space0.clone(), None, |s| {
        Ok::<_, std::convert::Infallible>(apply_operator(g, s, op))
    })
    .unwrap_or_else(|_| unreachable!("deletion on finite sets terminates"))
}

pub fn operator_trace_to_json(g: &Game, t: &OperatorTrace) -> Value {
    t.to_json("meta", |s| s.to_json(g), |m| m.to_json(g))
}

/// One row of a comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Surviving { space: PureSpace, rounds: usize },
    Equilibria(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub rows: Vec<(String, Outcome)>,
}

/// Fixed points of RM, WD, SD and JUST from the full space, plus pure Nash.
pub fn compare(g: &Game) -> Comparison {
    let full = PureSpace::full(g);
    let mut rows: Vec<(String, Outcome)> = [Operator::Rm, Operator::Wd, Operator::Sd, Operator::Just]
        .into_iter()
        .map(|op| {
            let t = iterate_operator(g, &full, op);
            (
                op.name().to_string(),
                Outcome::Surviving {
                    rounds: t.rounds_of_change(),
                    space: t.fixed_point,
                },
            )
        })
        .collect();
    rows.push(("Nash".into(), Outcome::Equilibria(pure_nash(g))));
    Comparison { rows }
}

fn profile_text(g: &Game, p: &[usize]) -> String {
    format!("({})", g.profile_labels(p).join(","))
}

impl Comparison {
    pub fn to_json(&self, g: &Game) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|(name, o)| match o {
                    Outcome::Surviving { space, rounds } => json!({
                        "concept": name,
                        "surviving": space.to_json(g),
                        "rounds_of_change": rounds,
                    }),
                    Outcome::Equilibria(ps) => json!({
                        "concept": name,
                        "profiles": ps.iter().map(|p| g.profile_labels(p)).collect::<Vec<_>>(),
                    }),
                })
                .collect(),
        )
    }

    /// Aligned text table. Equilibrium lists longer than `max_profiles` are truncated.
    pub fn to_text(&self, g: &Game, max_profiles: usize) -> String {
        let mut out = String::new();
        for (name, o) in &self.rows {
            let cell = match o {
                Outcome::Surviving { space, rounds } => {
                    let all = *space == PureSpace::full(g);
                    format!(
                        "{}{}  [{} round{} of change]",
                        space.describe(g),
                        if all { " (everything)" } else { "" },
                        rounds,
                        if *rounds == 1 { "" } else { "s" }
                    )
                }
                Outcome::Equilibria(ps) => {
                    let shown: Vec<String> = ps.iter().take(max_profiles).map(|p| profile_text(g, p)).collect();
                    let more = ps.len().saturating_sub(max_profiles);
                    let mut s = format!("{} profile{}: {}", ps.len(), if ps.len() == 1 { "" } else { "s" }, shown.join(" "));
                    if more > 0 {
                        s.push_str(&format!(" ... (+{})", more));
                    }
                    s
                }
            };
            out.push_str(&format!("{:<6}{}\n", name, cell));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::int;

    #[test]
    fn td_weak_dominance_witness() {
        let g = travelers_dilemma(2, 2, 100).unwrap();
        let full = PureSpace::full(&g);
        let (s, w) = dominance_step(&g, &full, DominanceKind::Weak);
        assert_eq!(s.labels(&g, 0).last().unwrap(), "99");
        let hundred = w.iter().find(|x| x.player == 0).unwrap();
        assert_eq!(g.label(0, hundred.dominated), "100");
        assert_eq!(g.label(0, hundred.dominator), "99");
        assert!(hundred.verify(&g, &full));
        assert!(dominance_step(&g, &full, DominanceKind::Strong).1.is_empty());
    }

    #[test]
    fn sd_vs_rm_example() {
        let g = sd_vs_rm().unwrap();
        let full = PureSpace::full(&g);
        let (_, w) = dominance_step(&g, &full, DominanceKind::Strong);
        assert_eq!((w[0].dominated, w[0].dominator), (0, 1));
        assert!(w[0].verify(&g, &full));
        let sd = iterate_operator(&g, &full, Operator::Sd).fixed_point;
        assert_eq!(sd, PureSpace::from_labels(&g, &[&["b"], &["y"]]).unwrap());
        let rm = iterate_operator(&g, &full, Operator::Rm).fixed_point;
        assert_eq!(rm, PureSpace::from_labels(&g, &[&["b"], &["x"]]).unwrap());
    }

    #[test]
    fn constant_game_keeps_everything() {
        let g = random_game(&[3, 2], 4, 4, |lo, _| lo);
        let full = PureSpace::full(&g);
        for op in [Operator::Wd, Operator::Sd, Operator::Just, Operator::Rm] {
            assert_eq!(apply_operator(&g, &full, op).0, full);
        }
        assert_eq!(pure_nash(&g).len(), 6);
    }

    #[test]
    fn justifiability_examples() {
        let pd = pd(&int(1), &int(3), &int(4)).unwrap();
        let (s, _) = justifiable_step(&pd, &PureSpace::full(&pd));
        assert_eq!(s, PureSpace::from_labels(&pd, &[&["d"], &["d"]]).unwrap());
        // Middle action: best only against a mixture.
        let g = Game::new(
            vec![vec!["t".into(), "m".into(), "b".into()], vec!["l".into(), "r".into()]],
            [[3, 0], [2, 2], [0, 3]]
                .iter()
                .flat_map(|r| r.iter().map(|&x| vec![int(x), int(0)]))
                .collect(),
        )
        .unwrap();
        let full = PureSpace::full(&g);
        let (s, j) = justifiable_step(&g, &full);
        assert_eq!(s.set(0), &[0, 1, 2]);
        let m = j.certificates.iter().find(|c| c.player == 0 && c.action == 1).unwrap();
        assert_eq!(m.belief.as_ref().unwrap().len(), 2);
        assert!(j.certificates.iter().all(|c| c.verify(&g, &full)));
        assert!(!j.correlated);
    }

    #[test]
    fn td_justifiable_and_nash() {
        let g = travelers_dilemma(2, 2, 100).unwrap();
        let full = PureSpace::full(&g);
        let (s, j) = justifiable_step(&g, &full);
        assert_eq!(s.labels(&g, 0).last().unwrap(), "99");
        assert!(j.certificates.iter().filter(|c| c.belief.is_some()).all(|c| c.verify(&g, &full)));
        assert_eq!(pure_nash(&g), vec![vec![0, 0]]);
        let t = iterate_operator(&g, &full, Operator::Just);
        assert_eq!(t.fixed_point, PureSpace::from_labels(&g, &[&["2"], &["2"]]).unwrap());
    }

    #[test]
    fn nash_examples() {
        let hd = hawk_dove(&int(1), &int(2), &int(3)).unwrap();
        let mut ne: Vec<Vec<String>> = pure_nash(&hd).iter().map(|p| hd.profile_labels(p)).collect();
        ne.sort();
        assert_eq!(ne, vec![vec!["d", "h"], vec!["h", "d"]]);
        let b = bargaining().unwrap();
        let ne = pure_nash(&b);
        assert!((0..=100).all(|x| ne.contains(&vec![x, 100 - x])));
    }

    #[test]
    fn risk_dominance_of_gencoord() {
        let r = risk_dominance(&gencoord().unwrap()).unwrap();
        assert_eq!(r.products, (int(121), int(100)));
        assert_eq!(r.winner, RiskDominant::First);
        let sym = coordination(&int(1)).unwrap();
        assert_eq!(risk_dominance(&sym).unwrap().winner, RiskDominant::Tie);
        assert!(risk_dominance(&rps().unwrap()).is_err());
        assert!(risk_dominance(&matching_pennies().unwrap()).is_err());
    }

    #[test]
    fn compare_table_for_td() {
        let g = travelers_dilemma(2, 2, 20).unwrap();
        let c = compare(&g);
        let text = c.to_text(&g, 5);
        assert!(text.contains("RM    {17} x {17}"));
        assert!(text.contains("WD    {2} x {2}"));
        assert!(text.contains("(everything)"));
        assert_eq!(c.to_json(&g)[4]["profiles"], json!([["2", "2"]]));
    }
}
