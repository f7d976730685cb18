//! The reproduction manifest: every headline computation with its expected
//! value, grouped by topic.
//!
//! Each claim carries the computed value, the expected value and a verdict.
//! Brute-force cross-checks live here too: they recompute the same sets by
//! the most direct loops available and never call the library operator they
//! are checking.

use crate::auctions::{
    exhaustive_half_bid_check, make_auction, mechanism_bound_probe, threshold_decimal, threshold_sweep, AuctionKind,
    Prior,
};
use crate::bayes::{expected_regret, rm_bayes_step, TypedSpace};
use crate::beliefs::justifiable_identity_holds;
use crate::concepts::{iterate_operator, pure_nash, Operator};
use crate::game::{for_each_profile, Game, MixedStrategy};
use crate::generators::*;
use crate::rational::{int, one, pow, ratio, zero, Rational};
use crate::regret_mixed::{
    argmin_polytope, grid_oracle_min_regret, min_mixed_regret, mixed_regret, regret_against, regret_prime, regret_rows,
    rm_mixed_iterate, MixedSpace, DEFAULT_CAP, DEFAULT_ROUND_LIMIT,
};
use crate::regret_pure::{rm_iterate, rm_step};
use crate::repeated_pd::{always_defect_regret, tft_analysis, FormulaMatch};
use crate::space::PureSpace;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The computed value adjudicates a disagreement in the source material;
    /// there is no single expected value to pass or fail against.
    Reported,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Reported => "REPORTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub topic: String,
    pub computed: String,
    pub expected: String,
    pub verdict: Verdict,
    /// `Some(agrees)` when an independent oracle recomputed the value.
    pub oracle: Option<bool>,
}

impl Claim {
    fn new(id: &str, topic: &str, computed: impl Into<String>, expected: impl Into<String>, ok: bool) -> Claim {
        Claim {
            id: id.into(),
            topic: topic.into(),
            computed: computed.into(),
            expected: expected.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            oracle: None,
        }
    }

    fn reported(id: &str, topic: &str, computed: impl Into<String>, expected: impl Into<String>) -> Claim {
        Claim {
            verdict: Verdict::Reported,
            ..Claim::new(id, topic, computed, expected, true)
        }
    }

    fn with_oracle(mut self, agrees: bool) -> Claim {
        self.oracle = Some(agrees);
        self
    }

    /// Passed or reported, and no oracle disagreement.
    pub fn ok(&self) -> bool {
        self.verdict != Verdict::Fail && self.oracle != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "topic": self.topic,
            "computed": self.computed,
            "expected": self.expected,
            "verdict": self.verdict.to_string(),
            "oracle": self.oracle,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Run the brute-force and grid cross-checks.
    pub oracle: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { oracle: true }
    }
}

/// A named group of related claims.
pub struct Group {
    pub name: &'static str,
    pub run: fn(&Options) -> Vec<Claim>,
}

pub fn groups() -> Vec<Group> {
    vec![
        Group { name: "travelers-dilemma-p2", run: travelers_dilemma_p2 },
        Group { name: "travelers-dilemma-p50", run: travelers_dilemma_p50 },
        Group { name: "travelers-dilemma-sweep", run: travelers_dilemma_sweep },
        Group { name: "travelers-dilemma-rival-concepts", run: travelers_dilemma_rivals },
        Group { name: "bertrand", run: bertrand_claims },
        Group { name: "bargaining", run: bargaining_claims },
        Group { name: "centipede-exponential", run: centipede_exponential },
        Group { name: "centipede-linear", run: centipede_linear },
        Group { name: "hawk-dove-and-pd", run: hawk_dove_and_pd },
        Group { name: "staircase", run: staircase_claims },
        Group { name: "mixed-minimax", run: mixed_minimax },
        Group { name: "travelers-dilemma-mixed", run: travelers_dilemma_mixed },
        Group { name: "mixed-multiround", run: mixed_multiround_claims },
        Group { name: "justifiable-beliefs", run: justifiable_beliefs },
        Group { name: "regret-prime", run: regret_prime_claims },
        Group { name: "always-defect", run: always_defect },
        Group { name: "repeated-pd-beliefs", run: repeated_pd_beliefs },
        Group { name: "bayesian-auctions", run: bayesian_auctions },
        Group { name: "mechanism-probes", run: mechanism_probes },
        Group { name: "properties", run: properties },
    ]
}

/// Every claim, in group order.
pub fn manifest(opts: &Options) -> Vec<Claim> {
    groups().iter().flat_map(|g| (g.run)(opts)).collect()
}

pub fn manifest_to_json(claims: &[Claim]) -> Value {
    Value::Array(claims.iter().map(Claim::to_json).collect())
}

/// Compares computed values with a recorded manifest. Returns one message
/// per claim whose value changed or that is missing from either side.
pub fn check_against(claims: &[Claim], recorded: &Value) -> Result<Vec<String>, String> {
    let arr = recorded.as_array().ok_or("recorded manifest is not a JSON array")?;
    let mut old = std::collections::BTreeMap::new();
    for item in arr {
        let id = item["id"].as_str().ok_or("recorded claim without an id")?;
        let computed = item["computed"].as_str().ok_or("recorded claim without a computed value")?;
        old.insert(id.to_string(), computed.to_string());
    }
    let mut problems = Vec::new();
    for c in claims {
        match old.remove(&c.id) {
            None => problems.push(format!("{}: not in the recorded manifest", c.id)),
            Some(v) if v != c.computed => {
                problems.push(format!("{}: recorded {:?}, computed {:?}", c.id, v, c.computed))
            }
            Some(_) => {}
        }
    }
    for id in old.keys() {
        problems.push(format!("{}: recorded but no longer computed", id));
    }
    Ok(problems)
}

pub fn manifest_to_text(claims: &[Claim]) -> String {
    let mut out = String::new();
    for c in claims {
        let oracle = match c.oracle {
            Some(true) => " [oracle agrees]",
            Some(false) => " [ORACLE DISAGREES]",
            None => "",
        };
        out.push_str(&format!("{:<9} {:<28} {}{}\n", c.verdict.to_string(), c.id, c.topic, oracle));
        out.push_str(&format!("          computed: {}\n", c.computed));
        out.push_str(&format!("          expected: {}\n", c.expected));
    }
    let fails = claims.iter().filter(|c| c.verdict == Verdict::Fail).count();
    let reported = claims.iter().filter(|c| c.verdict == Verdict::Reported).count();
    out.push_str(&format!(
        "{} claims: {} pass, {} fail, {} reported\n",
        claims.len(),
        claims.len() - fails - reported,
        fails,
        reported
    ));
    out
}

// ---------------------------------------------------------------------------
// Brute-force oracles

/// Maximum regret of each action in `sets[i]` against `sets`, by looping
/// over every opponent profile and every alternative action.
pub fn brute_regrets(g: &Game, sets: &[Vec<usize>], i: usize) -> Vec<Rational> {
    let mut opp = sets.to_vec();
    opp[i] = vec![0];
    sets[i]
        .iter()
        .map(|&a| {
            let mut worst = zero();
            for_each_profile(&opp, |p| {
                let mut q = p.to_vec();
                for &b in &sets[i] {
                    q[i] = b;
                    let alt = g.payoff(&q, i).clone();
                    q[i] = a;
                    let r = alt - g.payoff(&q, i);
                    if r > worst {
                        worst = r;
                    }
                }
            });
            worst
        })
        .collect()
}

/// One RM round computed with [`brute_regrets`].
pub fn brute_rm_step(g: &Game, sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..g.players())
        .map(|i| {
            let r = brute_regrets(g, sets, i);
            let m = r.iter().min().unwrap();
            sets[i].iter().zip(&r).filter(|(_, x)| *x == m).map(|(&a, _)| a).collect()
        })
        .collect()
}

/// Rounds of brute-force RM from the full space, ending with the fixed point.
pub fn brute_rm_rounds(g: &Game) -> Vec<Vec<Vec<usize>>> {
    let mut sets: Vec<Vec<usize>> = (0..g.players()).map(|i| (0..g.num_actions(i)).collect()).collect();
    let mut out = Vec::new();
    loop {
        let next = brute_rm_step(g, &sets);
        out.push(next.clone());
        if next == sets {
            return out;
        }
        sets = next;
    }
}

/// Integer payoff table of a two-player game, player `i` by `[a0][a1]`.
fn integer_tables(g: &Game) -> [Vec<Vec<i64>>; 2] {
    let t = |i: usize| -> Vec<Vec<i64>> {
        (0..g.num_actions(0))
            .map(|a| {
                (0..g.num_actions(1))
                    .map(|b| {
                        let x = g.payoff(&[a, b], i);
                        assert!(x.is_integer(), "integer payoffs expected");
                        x.to_integer().try_into().expect("payoff fits in i64")
                    })
                    .collect()
            })
            .collect()
    };
    [t(0), t(1)]
}

/// Fixed point of RM on a two-player integer game by a plain triple loop.
fn triple_loop_fixed_point(g: &Game) -> Vec<Vec<usize>> {
    let u = integer_tables(g);
    let mut sets: Vec<Vec<usize>> = vec![(0..g.num_actions(0)).collect(), (0..g.num_actions(1)).collect()];
    loop {
        let mut next = Vec::new();
        for i in 0..2 {
            let pay = |mine: usize, other: usize| if i == 0 { u[0][mine][other] } else { u[1][other][mine] };
            let regrets: Vec<i64> = sets[i]
                .iter()
                .map(|&a| {
                    sets[1 - i]
                        .iter()
                        .map(|&b| sets[i].iter().map(|&c| pay(c, b) - pay(a, b)).max().unwrap())
                        .max()
                        .unwrap()
                })
                .collect();
            let m = *regrets.iter().min().unwrap();
            next.push(sets[i].iter().zip(&regrets).filter(|(_, &r)| r == m).map(|(&a, _)| a).collect());
        }
        if next == sets {
            return sets;
        }
        sets = next;
    }
}

/// Upper bound on `grid value - LP value` at `resolution`: moving along the
/// grid changes each regret row by at most half its spread per unit of L1.
pub fn grid_gap_bound(g: &Game, player: usize, resolution: u32) -> Rational {
    let rows = regret_rows(g, &MixedSpace::full(g), player);
    let spread = rows
        .payoffs
        .iter()
        .map(|u| u.iter().max().unwrap() - u.iter().min().unwrap())
        .max()
        .unwrap();
    let k = g.num_actions(player) as i64;
    spread * int(k - 1) / int(resolution as i64)
}

/// Whether `lp_value` lies below the grid value and within [`grid_gap_bound`] of it.
pub fn grid_sandwich(g: &Game, player: usize, lp_value: &Rational, resolution: u32) -> bool {
    let (grid, _) = grid_oracle_min_regret(g, player, resolution).expect("small game");
    grid >= *lp_value && &grid - lp_value <= grid_gap_bound(g, player, resolution)
}

// ---------------------------------------------------------------------------
// Formatting helpers

fn labels(g: &Game, i: usize, acts: &[usize]) -> String {
    format!("{{{}}}", acts.iter().map(|&a| g.label(i, a)).collect::<Vec<_>>().join(","))
}

fn both(g: &Game, label: &str) -> PureSpace {
    PureSpace::from_labels(g, &[&[label], &[label]]).expect("label exists")
}

fn range_space(g: &Game, lo: i64, hi: i64) -> PureSpace {
    let ls: Vec<String> = (lo..=hi).map(|x| x.to_string()).collect();
    let refs: Vec<&str> = ls.iter().map(String::as_str).collect();
    PureSpace::from_labels(g, &[&refs, &refs]).expect("labels exist")
}

fn weights_text(w: &[Rational]) -> String {
    format!("({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn strategy(owner: usize, w: &[(i64, i64)]) -> MixedStrategy {
    MixedStrategy::new(owner, w.iter().map(|&(n, d)| ratio(n, d)).collect()).expect("valid weights")
}

// ---------------------------------------------------------------------------
// Claim groups

fn travelers_dilemma_p2(opts: &Options) -> Vec<Claim> {
    let g = travelers_dilemma(2, 2, 100).unwrap();
    let t = rm_iterate(&g, &PureSpace::full(&g));
    let round1 = t.space(1);
    let mut out = vec![Claim::new(
        "td-p2-round1",
        "traveler's dilemma p=2, first-round regret minimizers",
        round1.describe(&g),
        range_space(&g, 96, 100).describe(&g),
        *round1 == range_space(&g, 96, 100),
    )];
    let mut c = Claim::new(
        "td-p2-pure",
        "traveler's dilemma p=2, pure RM fixed point",
        t.fixed_point.describe(&g),
        "{97} x {97}",
        t.fixed_point == both(&g, "97"),
    );
    if opts.oracle {
        c = c.with_oracle(triple_loop_fixed_point(&g) == t.fixed_point.sets());
    }
    out.push(c);
    out
}

fn travelers_dilemma_p50(opts: &Options) -> Vec<Claim> {
    let g = travelers_dilemma(50, 2, 100).unwrap();
    let round1 = rm_step(&g, &PureSpace::full(&g)).0;
    let mut c = Claim::new(
        "td-p50-first-round",
        "traveler's dilemma p=50, first-round regret minimizers",
        round1.describe(&g),
        "{2} x {2}",
        round1 == both(&g, "2"),
    );
    if opts.oracle {
        let full: Vec<Vec<usize>> = vec![(0..99).collect(), (0..99).collect()];
        c = c.with_oracle(brute_rm_step(&g, &full) == round1.sets());
    }
    vec![c]
}

fn travelers_dilemma_sweep(opts: &Options) -> Vec<Claim> {
    let mut mismatched = Vec::new();
    let mut oracle_ok = true;
    for p in 2..=49 {
        let g = travelers_dilemma(p, 2, 100).unwrap();
        let fp = rm_iterate(&g, &PureSpace::full(&g)).fixed_point;
        let expected = (100 - 2 * p + 1).to_string();
        if fp != both(&g, &expected) {
            mismatched.push(format!("p={}: {}", p, fp.describe(&g)));
        }
        if opts.oracle && triple_loop_fixed_point(&g) != fp.sets() {
            oracle_ok = false;
        }
    }
    let computed = if mismatched.is_empty() {
        "every p in 2..=49 gives {101-2p} x {101-2p}".to_string()
    } else {
        mismatched.join("; ")
    };
    let c = Claim::new(
        "td-sweep",
        "traveler's dilemma p in 2..=49, pure RM fixed point",
        computed,
        "{101-2p} x {101-2p}",
        mismatched.is_empty(),
    );
    vec![if opts.oracle { c.with_oracle(oracle_ok) } else { c }]
}

fn travelers_dilemma_rivals(_: &Options) -> Vec<Claim> {
    let g = travelers_dilemma(2, 2, 100).unwrap();
    let full = PureSpace::full(&g);
    let wd = iterate_operator(&g, &full, Operator::Wd).fixed_point;
    let sd = iterate_operator(&g, &full, Operator::Sd).fixed_point;
    let nash = pure_nash(&g);
    let two = g.action_index(0, "2").unwrap();
    vec![
        Claim::new(
            "td-p2-wd",
            "traveler's dilemma p=2, weak-dominance fixed point",
            wd.describe(&g),
            "{2} x {2}",
            wd == both(&g, "2"),
        ),
        Claim::new(
            "td-p2-nash",
            "traveler's dilemma p=2, pure Nash equilibria",
            format!("{:?}", nash.iter().map(|p| g.profile_labels(p)).collect::<Vec<_>>()),
            "[[\"2\", \"2\"]]",
            nash == vec![vec![two, two]],
        ),
        Claim::new(
            "td-p2-sd",
            "traveler's dilemma p=2, strong dominance removes nothing",
            format!("{} of {} profiles survive", sd.size(), full.size()),
            format!("{} of {} profiles survive", full.size(), full.size()),
            sd == full,
        ),
    ]
}

fn bertrand_claims(opts: &Options) -> Vec<Claim> {
    let g = bertrand().unwrap();
    let full = PureSpace::full(&g);
    let t = rm_iterate(&g, &full);
    let a100 = g.action_index(0, "100").unwrap();
    let regret100 = t.rounds[0].meta[0].regret_of(a100).unwrap().clone();
    let mut pure = Claim::new(
        "bertrand-pure",
        "Bertrand duopoly, pure RM fixed point",
        t.fixed_point.describe(&g),
        "{100} x {100}",
        t.fixed_point == both(&g, "100"),
    );
    if opts.oracle {
        pure = pure.with_oracle(triple_loop_fixed_point(&g) == t.fixed_point.sets());
    }
    vec![
        Claim::new(
            "bertrand-round1",
            "Bertrand duopoly, first-round regret minimizers",
            t.space(1).describe(&g),
            "{100,101} x {100,101}",
            *t.space(1) == range_space(&g, 100, 101),
        ),
        pure,
        Claim::new(
            "bertrand-regret-100",
            "Bertrand duopoly, maximum regret of price 100",
            regret100.to_string(),
            "9900",
            regret100 == int(9900),
        ),
    ]
}

fn bargaining_claims(opts: &Options) -> Vec<Claim> {
    let g = bargaining().unwrap();
    let t = rm_iterate(&g, &PureSpace::full(&g));
    let nash = pure_nash(&g);
    let missing: Vec<i64> = (0..=100)
        .filter(|&x| {
            let p = vec![
                g.action_index(0, &x.to_string()).unwrap(),
                g.action_index(1, &(100 - x).to_string()).unwrap(),
            ];
            !nash.contains(&p)
        })
        .collect();
    let mut pure = Claim::new(
        "bargaining-pure",
        "Nash bargaining, pure RM fixed point",
        t.fixed_point.describe(&g),
        "{50} x {50}",
        t.fixed_point == both(&g, "50"),
    );
    if opts.oracle {
        pure = pure.with_oracle(triple_loop_fixed_point(&g) == t.fixed_point.sets());
    }
    vec![
        Claim::new(
            "bargaining-round1",
            "Nash bargaining, first-round regret minimizers",
            t.space(1).describe(&g),
            "{50,51} x {50,51}",
            *t.space(1) == range_space(&g, 50, 51),
        ),
        pure,
        Claim::new(
            "bargaining-nash",
            "Nash bargaining, every split (x, 100-x) is a pure equilibrium",
            format!("{} equilibria, {} splits missing", nash.len(), missing.len()),
            "all 101 splits present",
            missing.is_empty(),
        ),
    ]
}

fn centipede_exponential(opts: &Options) -> Vec<Claim> {
    let g = centipede(10, &CentipedePayoffs::Exponential).unwrap();
    let round1 = rm_step(&g, &PureSpace::full(&g)).0;
    let expected = PureSpace::from_labels(&g, &[&["[9]"], &["[10]"]]).unwrap();
    let mut c = Claim::new(
        "centipede-exp-10",
        "exponential centipede k=10, unique regret minimizer is the latest stop",
        round1.describe(&g),
        expected.describe(&g),
        round1 == expected,
    );
    if opts.oracle {
        let full: Vec<Vec<usize>> = (0..2).map(|i| (0..g.num_actions(i)).collect()).collect();
        c = c.with_oracle(brute_rm_step(&g, &full) == round1.sets());
    }
    vec![c]
}

fn centipede_linear(opts: &Options) -> Vec<Claim> {
    let even = centipede(10, &CentipedePayoffs::Linear(int(2))).unwrap();
    let t = rm_iterate(&even, &PureSpace::full(&even));
    let expected = PureSpace::from_labels(&even, &[&["[9]"], &["[10]"]]).unwrap();
    let mut c1 = Claim::new(
        "centipede-lin-10-2",
        "linear centipede k=10 p=2, pure RM fixed point",
        t.fixed_point.describe(&even),
        expected.describe(&even),
        t.fixed_point == expected,
    );
    let odd = centipede(9, &CentipedePayoffs::Linear(int(3))).unwrap();
    let t2 = rm_iterate(&odd, &PureSpace::full(&odd));
    let mut c2 = Claim::new(
        "centipede-lin-9-3",
        "linear centipede k=9 p=3, nothing removed after the first round",
        format!(
            "{} changing round(s), fixed point {}",
            t2.rounds_of_change(),
            t2.fixed_point.describe(&odd)
        ),
        "at most 1 changing round",
        t2.rounds_of_change() <= 1,
    );
    if opts.oracle {
        c1 = c1.with_oracle(brute_rm_rounds(&even).last().unwrap() == t.fixed_point.sets());
        let rounds = brute_rm_rounds(&odd);
        c2 = c2.with_oracle(rounds.last().unwrap() == t2.fixed_point.sets() && rounds.len() == t2.rounds.len());
    }
    vec![c1, c2]
}

fn hawk_dove_and_pd(_: &Options) -> Vec<Claim> {
    let (a, b, c) = (int(2), int(3), int(4));
    let g = hawk_dove(&a, &b, &c).unwrap();
    let t = rm_iterate(&g, &PureSpace::full(&g));
    let d = g.action_index(0, "d").unwrap();
    let regret_d = t.rounds[0].meta[0].regret_of(d).unwrap().clone();
    let pd_game = pd(&int(1), &int(3), &int(4)).unwrap();
    let tp = rm_iterate(&pd_game, &PureSpace::full(&pd_game));
    let dominant = crate::regret_pure::dominant_actions(&pd_game, 0);
    vec![
        Claim::new(
            "hawk-dove",
            "hawk-dove (a,b,c)=(2,3,4), pure RM fixed point and regret of d",
            format!("{}, regret(d) = {}", t.fixed_point.describe(&g), regret_d),
            format!("{{d}} x {{d}}, regret(d) = {}", &c - &b),
            t.fixed_point == both(&g, "d") && regret_d == &c - &b,
        ),
        Claim::new(
            "pd-dominant",
            "prisoner's dilemma (1,3,4), dominant action survives",
            format!("{}, dominant {}", tp.fixed_point.describe(&pd_game), labels(&pd_game, 0, &dominant)),
            "{d} x {d}, dominant {d}",
            tp.fixed_point == both(&pd_game, "d") && dominant == vec![pd_game.action_index(0, "d").unwrap()],
        ),
    ]
}

fn staircase_claims(_: &Options) -> Vec<Claim> {
    [3usize, 5, 8]
        .into_iter()
        .map(|n| {
            let g = staircase(n).unwrap();
            let t = rm_iterate(&g, &PureSpace::full(&g));
            let one_per_round = (1..=t.rounds_of_change())
                .all(|k| (0..2).all(|i| t.space(k).set(i).len() + 1 == t.space(k - 1).set(i).len()));
            Claim::new(
                &format!("staircase-{}", n),
                &format!("staircase n={}, one action removed per round", n),
                format!(
                    "{} after {} rounds{}",
                    t.fixed_point.describe(&g),
                    t.rounds_of_change(),
                    if one_per_round { "" } else { ", uneven removal" }
                ),
                format!("{{a1}} x {{a1}} after {} rounds", n - 1),
                t.fixed_point == both(&g, "a1") && t.rounds_of_change() == n - 1 && one_per_round,
            )
        })
        .collect()
}

fn mixed_minimax(opts: &Options) -> Vec<Claim> {
    let mut out = Vec::new();
    let mut check = |id: &str, topic: &str, g: Game, value: Rational, weights: Vec<Rational>, unique: bool, res: u32| {
        let full = MixedSpace::full(&g);
        let (t, sigma) = min_mixed_regret(&g, &full, 0).unwrap();
        let argmin = argmin_polytope(&g, &full, 0, DEFAULT_CAP).unwrap();
        let unique_ok = !unique || argmin.vertices() == [weights.clone()];
        let ok = t == value && sigma.weights == weights && unique_ok;
        let mut c = Claim::new(
            id,
            topic,
            format!("value {} at {}", t, weights_text(&sigma.weights)),
            format!("value {} at {}", value, weights_text(&weights)),
            ok,
        );
        if opts.oracle {
            c = c.with_oracle(grid_sandwich(&g, 0, &t, res));
        }
        out.push(c);
    };
    check(
        "mixed-matching-pennies",
        "matching pennies, minimax regret",
        matching_pennies().unwrap(),
        int(20),
        vec![ratio(1, 2), ratio(1, 2)],
        true,
        200,
    );
    check(
        "mixed-asym-pennies",
        "asymmetric matching pennies, minimax regret of the first player",
        asym_matching_pennies().unwrap(),
        int(35),
        vec![ratio(7, 8), ratio(1, 8)],
        true,
        1000,
    );
    for k in [2i64, 3, 5] {
        check(
            &format!("mixed-coordination-{}", k),
            &format!("coordination k={}, minimax regret", k),
            coordination(&int(k)).unwrap(),
            ratio(k, k + 1),
            vec![ratio(k, k + 1), ratio(1, k + 1)],
            true,
            100,
        );
    }
    check(
        "mixed-rps",
        "rock-scissors-paper, minimax regret",
        rps().unwrap(),
        int(1),
        vec![ratio(1, 3); 3],
        true,
        60,
    );
    out
}

/// The exponential strategy on claims 2..=100: weight `2^-(101-k)` on each
/// `k >= 3` and `2^-98` on 2.
pub fn exponential_td_strategy(g: &Game) -> MixedStrategy {
    let half = ratio(1, 2);
    let weights = (0..g.num_actions(0))
        .map(|a| {
            let k: u32 = g.label(0, a).parse().expect("numeric claim labels");
            pow(&half, (101 - k.max(3)) as u32)
        })
        .collect();
    MixedStrategy::new(0, weights).expect("weights sum to one")
}

fn travelers_dilemma_mixed(_: &Options) -> Vec<Claim> {
    let g = travelers_dilemma(2, 2, 100).unwrap();
    let full = MixedSpace::full(&g);
    let sigma = exponential_td_strategy(&g);
    let r = mixed_regret(&g, &full, 0, &sigma).unwrap();
    let (t, best) = min_mixed_regret(&g, &full, 0).unwrap();
    let mut mass = zero();
    let mut violations = Vec::new();
    for a in 0..g.num_actions(0) {
        mass += &best.weights[a];
        let k: i64 = g.label(0, a).parse().unwrap();
        if k < 99 && mass > ratio(3, 99 - k) {
            violations.push(k);
        }
    }
    vec![
        Claim::new(
            "td-mixed-exponential",
            "traveler's dilemma p=2, exponential strategy has mixed regret below 3",
            format!("3 - {}", int(3) - &r),
            "< 3",
            r < int(3),
        ),
        Claim::new(
            "td-mixed-optimum",
            "traveler's dilemma p=2, minimax regret over mixed strategies",
            format!("3 - {} ({:.12})", int(3) - &t, crate::auctions::rational_to_f64(&t)),
            "strictly between 29/10 and 3",
            t > ratio(29, 10) && t < int(3),
        ),
        Claim::new(
            "td-mixed-mass",
            "traveler's dilemma p=2, optimal strategy's mass on claims <= k is at most 3/(99-k)",
            if violations.is_empty() {
                "bound holds for every k".to_string()
            } else {
                format!("bound fails at k in {:?}", violations)
            },
            "bound holds for every k",
            violations.is_empty(),
        ),
    ]
}

fn mixed_multiround_claims(_: &Options) -> Vec<Claim> {
    let g = mixed_multiround(3, &int(3)).unwrap();
    let expected = vec![ratio(1, 2), ratio(1, 2), zero(), zero(), zero(), zero()];
    match rm_mixed_iterate(&g, &MixedSpace::full(&g), DEFAULT_CAP, DEFAULT_ROUND_LIMIT) {
        Ok(t) => {
            let ok = t.rounds_of_change() == 3
                && (0..2).all(|i| t.fixed_point.polytope(i).vertices() == [expected.clone()]);
            vec![Claim::new(
                "mixed-multiround",
                "three-level elimination game, mixed RM",
                format!("{} after {} rounds", t.fixed_point.describe(&g), t.rounds_of_change()),
                "{1/2 a11 + 1/2 a12} x {1/2 a11 + 1/2 a12} after 3 rounds",
                ok,
            )]
        }
        Err(e) => vec![Claim::new(
            "mixed-multiround",
            "three-level elimination game, mixed RM",
            format!("error: {}", e),
            "{1/2 a11 + 1/2 a12} x {1/2 a11 + 1/2 a12} after 3 rounds",
            false,
        )],
    }
}

fn justifiable_beliefs(_: &Options) -> Vec<Claim> {
    let games: Vec<(&str, Game)> = vec![
        ("traveler's dilemma p=2", travelers_dilemma(2, 2, 100).unwrap()),
        ("Bertrand", bertrand().unwrap()),
        ("bargaining", bargaining().unwrap()),
        ("staircase n=5", staircase(5).unwrap()),
    ];
    let mut bad = Vec::new();
    for (name, g) in &games {
        for k in 0..=3 {
            if !justifiable_identity_holds(g, k) {
                bad.push(format!("{} k={}", name, k));
            }
        }
    }
    vec![Claim::new(
        "belief-identity",
        "rational strategies under the k-level justifiable belief equal k rounds of RM",
        if bad.is_empty() { "holds for all four games, k=0..=3".into() } else { bad.join("; ") },
        "holds for all four games, k=0..=3",
        bad.is_empty(),
    )]
}

fn regret_prime_claims(_: &Options) -> Vec<Claim> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0015);
    let mut disagreements = 0;
    for _ in 0..50 {
        let sizes = [rng.gen_range(2..=4), rng.gen_range(2..=4)];
        let g = random_game(&sizes, -10, 10, |lo, hi| rng.gen_range(lo..=hi));
        let raw: Vec<i64> = (0..sizes[0]).map(|_| rng.gen_range(0..=6)).collect();
        let total: i64 = raw.iter().sum::<i64>().max(1);
        let weights: Vec<Rational> = if raw.iter().all(|&x| x == 0) {
            (0..sizes[0]).map(|a| if a == 0 { one() } else { zero() }).collect()
        } else {
            raw.iter().map(|&x| ratio(x, total)).collect()
        };
        let sigma = MixedStrategy::new(0, weights).unwrap();
        let prime = (0..sizes[1])
            .map(|b| regret_prime(&g, 0, &sigma, &[MixedStrategy::pure(1, sizes[1], b)]).unwrap())
            .max()
            .unwrap();
        let ours = mixed_regret(&g, &MixedSpace::full(&g), 0, &sigma).unwrap();
        if prime != ours {
            disagreements += 1;
        }
    }

    let g = differ().unwrap();
    let opp = strategy(1, &[(1, 6), (1, 2), (1, 3)]);
    let pure = |a: usize| MixedStrategy::pure(0, 3, a);
    let primes: Vec<Rational> = (0..3).map(|a| regret_prime(&g, 0, &pure(a), &[opp.clone()]).unwrap()).collect();
    let regrets: Vec<Rational> = (0..3).map(|a| regret_against(&g, 0, &pure(a), &[opp.clone()]).unwrap()).collect();
    let expected_primes = vec![ratio(5, 3), ratio(7, 6), ratio(4, 3)];
    let expected_regrets = vec![ratio(1, 6), ratio(5, 6), zero()];
    let c_minimizes = regrets[2] < regrets[0] && regrets[2] < regrets[1];
    let prime_order = primes[1] < primes[2] && primes[2] < primes[0];
    vec![
        Claim::new(
            "regret-prime-agreement",
            "worst-case regret' over pure opponents equals mixed regret, 50 random games",
            format!("{} disagreements", disagreements),
            "0 disagreements",
            disagreements == 0,
        ),
        Claim::new(
            "differ-regret-prime",
            "regret' of a, b, c against (1/6, 1/2, 1/3)",
            weights_text(&primes),
            weights_text(&expected_primes),
            primes == expected_primes,
        ),
        Claim::new(
            "differ-regret",
            "regret of a, b, c against (1/6, 1/2, 1/3)",
            weights_text(&regrets),
            weights_text(&expected_regrets),
            regrets == expected_regrets,
        ),
        Claim::new(
            "differ-regret-prime-order",
            "regret' ranks b below c below a",
            format!("b {} c {} a", cmp_text(&primes[1], &primes[2]), cmp_text(&primes[2], &primes[0])),
            "b < c < a",
            prime_order,
        ),
        Claim::new(
            "differ-c-minimizes-regret",
            "c is the unique regret minimizer against (1/6, 1/2, 1/3)",
            format!("argmin regret is {}", if c_minimizes { "{c}" } else { "not {c}" }),
            "{c}",
            c_minimizes,
        ),
    ]
}

fn cmp_text(a: &Rational, b: &Rational) -> &'static str {
    match a.cmp(b) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    }
}

fn always_defect(_: &Options) -> Vec<Claim> {
    let (u1, u2, u3) = (int(1), int(3), int(4));
    let mut parts = Vec::new();
    let mut cooperate_first_worse = true;
    let mut cooperate_text = Vec::new();
    for n in [2u32, 3] {
        let r = always_defect_regret(n, &u1, &u2, &u3).unwrap();
        let which = match r.matches {
            FormulaMatch::Statement => "matches the stated formula",
            FormulaMatch::Proof => "matches the formula derived in the proof",
            FormulaMatch::Both => "matches both formulas",
            FormulaMatch::Neither => "matches neither formula",
        };
        parts.push(format!(
            "n={}: regret {} (stated {}, proof {}), {}",
            n, r.regret, r.statement_formula, r.proof_formula, which
        ));
        if let Some((v, _)) = &r.cooperate_first_min {
            cooperate_first_worse &= *v > r.regret;
            cooperate_text.push(format!("n={}: {} vs {}", n, v, r.regret));
        }
    }
    vec![
        Claim::reported(
            "appendix-lemma-pd",
            "repeated PD (1,3,4), exact regret of always-defect",
            parts.join("; "),
            "brute force adjudicates between the stated and proof formulas",
        ),
        Claim::new(
            "appendix-cooperate-first",
            "repeated PD (1,3,4), plans that cooperate first have larger regret",
            cooperate_text.join("; "),
            "strictly larger at n=2 and n=3",
            cooperate_first_worse,
        ),
    ]
}

fn repeated_pd_beliefs(_: &Options) -> Vec<Claim> {
    let a = tft_analysis(20, &int(1), &int(3), &int(4)).unwrap();
    let argmin = format!("{{{}}}", a.argmin.iter().map(|k| format!("s{}", k)).collect::<Vec<_>>().join(","));
    vec![
        Claim::new(
            "repeated-pd-tft",
            "repeated PD n=20 over tit-for-tat-until-k plans, regret minimizers",
            format!("{} with regret {}", argmin, a.minregret),
            "{s19}",
            a.argmin == vec![19],
        ),
        Claim::new(
            "repeated-pd-mixture",
            "repeated PD n=20, mixtures over the plans do not lower regret",
            format!("mixed {} vs pure {}", a.mixed_minregret, a.minregret),
            "mixed value equals pure value",
            a.mixed_minregret == a.minregret,
        ),
    ]
}

fn bayesian_auctions(_: &Options) -> Vec<Claim> {
    let vals: Vec<i64> = (1..=10).map(|x| 2 * x).collect();
    let second = make_auction(AuctionKind::SecondPrice, &[vals.clone(), vals.clone()], Prior::Uniform, 20).unwrap();
    let full = TypedSpace::full(&second);
    let mut nonzero = Vec::new();
    for i in 0..2 {
        for (t, &v) in vals.iter().enumerate() {
            let r = expected_regret(&second, &full, i, t, v as usize).unwrap();
            if r != zero() {
                nonzero.push(format!("bidder {} value {}: {}", i, v, r));
            }
        }
    }
    let first = make_auction(AuctionKind::FirstPrice, &[vals.clone(), vals.clone()], Prior::Uniform, 20).unwrap();
    let (_, reports) = rm_bayes_step(&first, &TypedSpace::full(&first));
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| {
            let v = vals[r.type_index];
            r.argmin != vec![(v / 2) as usize] || r.minregret != int(v / 2 - 1)
        })
        .map(|r| format!("bidder {} value {}: {:?} regret {}", r.player, vals[r.type_index], r.argmin, r.minregret))
        .collect();
    vec![
        Claim::new(
            "auction-second-price",
            "second-price auction, truthful bidding has expected regret 0 at every type",
            if nonzero.is_empty() { "0 at all 20 types".into() } else { nonzero.join("; ") },
            "0 at all 20 types",
            nonzero.is_empty(),
        ),
        Claim::new(
            "auction-first-price",
            "first-price auction, values 2..=20, unique minimizer v/2 with regret v/2-1",
            if bad.is_empty() { "holds at all 20 types".into() } else { bad.join("; ") },
            "holds at all 20 types",
            bad.is_empty(),
        ),
    ]
}

fn mechanism_probes(_: &Options) -> Vec<Claim> {
    let r = ratio(1, 2);
    let rep = mechanism_bound_probe(&r, 100).unwrap();
    let forced_ok = rep.rows.iter().all(|x| x.minimal_rule_regret >= x.forced_regret);
    let alpha_ok = rep.rows.iter().all(|x| x.alpha_bound == int(x.v) / (&r + one()));
    let sweep = threshold_sweep(50..=70, 100);
    let first_bad = sweep.iter().find(|(_, v, _)| v.is_some());
    let consistent = sweep.iter().all(|(_, v, below)| !below || v.is_none());
    let flip_text = match first_bad {
        Some((r, v, _)) => format!(
            "first violation at r={} (v={}), threshold {:.4}",
            r,
            v.unwrap(),
            threshold_decimal()
        ),
        None => "no violation for r in 0.50..=0.70".into(),
    };
    let near = first_bad
        .map(|(r, _, _)| (crate::auctions::rational_to_f64(r) - threshold_decimal()).abs() < 0.02)
        .unwrap_or(false);
    let (count, counterexample) = exhaustive_half_bid_check(6);
    vec![
        Claim::new(
            "mechanism-forced-regret",
            "winner pays half the bid, regret of truthful bidding is at least rv-1 for v<=100",
            format!("{} of {} values satisfy it", rep.rows.iter().filter(|x| x.minimal_rule_regret >= x.forced_regret).count(), rep.rows.len()),
            format!("{} of {} values satisfy it", rep.rows.len(), rep.rows.len()),
            forced_ok,
        ),
        Claim::new(
            "mechanism-alpha-tradeoff",
            "with alpha=1/(r+1) both sides of the tradeoff equal v/(r+1)",
            if alpha_ok { "equal at every v".into() } else { "differs at some v".to_string() },
            "equal at every v",
            alpha_ok,
        ),
        Claim::new(
            "mechanism-threshold",
            "the consistency inequality flips near r=(sqrt 5 - 1)/2 for v<=100",
            flip_text,
            format!("first violation within 0.02 of {:.4}", threshold_decimal()),
            near && consistent,
        ),
        Claim::new(
            "combinatorial-half-bids",
            "2 bidders, 2 items, bundle values 0..=6: half-bid revenue is at least half the welfare",
            match &counterexample {
                None => format!("holds on all {} instances", count),
                Some(inst) => format!("fails on {:?}", inst.values),
            },
            format!("holds on all {} instances", 7usize.pow(6)),
            counterexample.is_none(),
        ),
    ]
}

fn properties(opts: &Options) -> Vec<Claim> {
    let mut bad = Vec::new();
    for (name, ex) in Example::suite() {
        let g = ex.build().unwrap();
        let t = rm_iterate(&g, &PureSpace::full(&g));
        let nested = (1..=t.rounds.len()).all(|k| t.space(k).is_subset_of(t.space(k - 1)));
        let nonempty = (0..=t.rounds.len()).all(|k| (0..g.players()).all(|i| !t.space(k).set(i).is_empty()));
        let fixed = rm_step(&g, &t.fixed_point).0 == t.fixed_point;
        if !(nested && nonempty && fixed) {
            bad.push(name);
        }
    }
    let mut out = vec![Claim::new(
        "rm-nesting",
        "RM rounds are nested and nonempty and end at a fixed point on every example game",
        if bad.is_empty() { "holds on the whole suite".into() } else { format!("fails on {:?}", bad) },
        "holds on the whole suite",
        bad.is_empty(),
    )];
    if !opts.oracle {
        return out;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0020);
    let mut mismatches = 0;
    let mut scale_failures = 0;
    for _ in 0..200 {
        let players = rng.gen_range(2..=3);
        let sizes: Vec<usize> = (0..players).map(|_| rng.gen_range(1..=4)).collect();
        let g = random_game(&sizes, -5, 5, |lo, hi| rng.gen_range(lo..=hi));
        let full = PureSpace::full(&g);
        let (next, _) = rm_step(&g, &full);
        if brute_rm_step(&g, full.sets()) != next.sets() {
            mismatches += 1;
        }
        let i = rng.gen_range(0..players);
        let scaled = g.affine_transform(i, &ratio(rng.gen_range(1..=9), rng.gen_range(1..=9)), &int(rng.gen_range(-9..=9)));
        if rm_step(&scaled, &full).0 != next {
            scale_failures += 1;
        }
    }
    out.push(
        Claim::new(
            "rm-step-brute-force",
            "one RM round matches brute force on 200 random games",
            format!("{} mismatches", mismatches),
            "0 mismatches",
            mismatches == 0,
        )
        .with_oracle(mismatches == 0),
    );
    out.push(Claim::new(
        "rm-scale-invariance",
        "RM is unchanged by positive affine payoff transforms, 200 random games",
        format!("{} failures", scale_failures),
        "0 failures",
        scale_failures == 0,
    ));
    let mut sandwich_failures = 0;
    for _ in 0..20 {
        let sizes = [rng.gen_range(2..=3), rng.gen_range(2..=3)];
        let g = random_game(&sizes, -5, 5, |lo, hi| rng.gen_range(lo..=hi));
        let (t, _) = min_mixed_regret(&g, &MixedSpace::full(&g), 0).unwrap();
        if !grid_sandwich(&g, 0, &t, 24) {
            sandwich_failures += 1;
        }
    }
    out.push(
        Claim::new(
            "lp-grid-sandwich",
            "LP minimax regret lies below the grid value within the resolution bound, 20 random games",
            format!("{} failures", sandwich_failures),
            "0 failures",
            sandwich_failures == 0,
        )
        .with_oracle(sandwich_failures == 0),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_strategy_is_a_distribution() {
        let g = travelers_dilemma(2, 2, 100).unwrap();
        let s = exponential_td_strategy(&g);
        assert_eq!(s.weights.iter().sum::<Rational>(), one());
        assert_eq!(s.weights[0], s.weights[1]);
        assert_eq!(*s.weights.last().unwrap(), ratio(1, 2));
    }

    #[test]
    fn check_against_reports_changes() {
        let c = Claim::new("x", "t", "1", "1", true);
        let recorded = json!([{"id": "x", "computed": "2"}, {"id": "y", "computed": "3"}]);
        let problems = check_against(&[c.clone()], &recorded).unwrap();
        assert_eq!(problems.len(), 2);
        assert!(check_against(&[c], &json!([{"id": "x", "computed": "1"}])).unwrap().is_empty());
    }

    #[test]
    fn brute_force_agrees_on_staircase() {
        let g = staircase(4).unwrap();
        let rounds = brute_rm_rounds(&g);
        assert_eq!(rounds.last().unwrap(), &vec![vec![0], vec![0]]);
        assert_eq!(rounds.len(), 4);
    }

    #[test]
    fn grid_bound_covers_pennies() {
        let g = asym_matching_pennies().unwrap();
        assert!(grid_sandwich(&g, 0, &int(35), 10));
        let (grid, _) = grid_oracle_min_regret(&g, 0, 10).unwrap();
        assert!(!grid_sandwich(&g, 0, &(grid.clone() + int(1)), 10));
        assert!(!grid_sandwich(&g, 0, &(grid - grid_gap_bound(&g, 0, 10) - int(1)), 10));
    }
}
