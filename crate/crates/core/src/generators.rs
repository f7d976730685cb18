//! Generators for the example games.

use crate::game::{Game, GameError, PayoffVector};
use crate::rational::{int, pow, ratio, zero, Rational};
use crate::repeated_pd;

fn labels<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn invalid(msg: impl Into<String>) -> GameError {
    GameError::InvalidParameter(msg.into())
}

/// Symmetric two-player game from player 1's payoff function.
fn symmetric(acts: Vec<String>, u1: impl Fn(usize, usize) -> Rational) -> Result<Game, GameError> {
    Game::from_fn(vec![acts.clone(), acts], |p| vec![u1(p[0], p[1]), u1(p[1], p[0])])
}

/// Two-player game from a table of payoff pairs, rows for player 1.
fn bimatrix(rows: &[&str], cols: &[&str], table: &[&[(i64, i64)]]) -> Result<Game, GameError> {
    Game::from_fn(vec![labels(rows), labels(cols)], |p| {
        let (a, b) = table[p[0]][p[1]];
        vec![int(a), int(b)]
    })
}

/// Traveler's Dilemma with claims `low..=high` and reward/punishment `p`.
pub fn travelers_dilemma(p: i64, low: i64, high: i64) -> Result<Game, GameError> {
    if low >= high {
        return Err(invalid(format!("low ({}) must be below high ({})", low, high)));
    }
    if p < 2 {
        return Err(invalid(format!("p must be at least 2, got {}", p)));
    }
    let claims: Vec<i64> = (low..=high).collect();
    symmetric(labels(&claims), |a, b| {
        let (m, m2) = (claims[a], claims[b]);
        int(match m.cmp(&m2) {
            std::cmp::Ordering::Equal => m,
            std::cmp::Ordering::Less => m + p,
            std::cmp::Ordering::Greater => m2 - p,
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentipedePayoffs {
    Linear(Rational),
    Exponential,
}

/// Label of the class of strategies that never stop.
pub const NEVER: &str = "[never]";

/// Centipede in reduced normal form.
///
/// Player 1 owns the odd rounds and player 2 the even ones. An action `[t]`
/// stands for every strategy that first stops at round `t`. The player who
/// does not move last also has `[never]`, the class of strategies that
/// continue at each of their nodes; the last mover has to stop at round `k`.
pub fn centipede(k: u32, payoffs: &CentipedePayoffs) -> Result<Game, GameError> {
    if k < 2 {
        return Err(invalid(format!("centipede needs at least 2 rounds, got {}", k)));
    }
    if let CentipedePayoffs::Linear(p) = payoffs {
        if *p <= int(1) {
            return Err(invalid(format!("linear centipede needs p > 1, got {}", p)));
        }
    }
    if matches!(payoffs, CentipedePayoffs::Exponential) && k > 200 {
        return Err(invalid("exponential centipede limited to 200 rounds"));
    }
    let outcome = |t: u32| -> PayoffVector {
        match payoffs {
            CentipedePayoffs::Linear(p) => {
                let t = int(t as i64);
                if t.to_integer() % 2 == 1.into() {
                    vec![t.clone(), t - p]
                } else {
                    vec![&t - p, t]
                }
            }
            CentipedePayoffs::Exponential => {
                let two_t = pow(&int(2), t);
                if t % 2 == 1 {
                    vec![&two_t + int(1), two_t - int(1)]
                } else {
                    vec![pow(&int(2), t - 1), two_t]
                }
            }
        }
    };
    let mut stops: [Vec<Option<u32>>; 2] = [Vec::new(), Vec::new()];
    for t in 1..=k {
        stops[((t + 1) % 2) as usize].push(Some(t));
    }
    let last_mover = ((k + 1) % 2) as usize;
    stops[1 - last_mover].push(None);
    let names = |p: usize| -> Vec<String> {
        stops[p]
            .iter()
            .map(|s| match s {
                Some(t) => format!("[{}]", t),
                None => NEVER.to_string(),
            })
            .collect()
    };
    Game::from_fn(vec![names(0), names(1)], |p| {
        let a = stops[0][p[0]].unwrap_or(u32::MAX);
        let b = stops[1][p[1]].unwrap_or(u32::MAX);
        outcome(a.min(b))
    })
}

/// Bertrand duopoly: prices 0..=200, demand 100, equal prices split the market.
pub fn bertrand() -> Result<Game, GameError> {
    symmetric(labels(0..=200), |a, b| {
        let (x, y) = (a as i64, b as i64);
        int(match x.cmp(&y) {
            std::cmp::Ordering::Equal => 50 * x,
            std::cmp::Ordering::Less => 100 * x,
            std::cmp::Ordering::Greater => 0,
        })
    })
}

/// Nash bargaining over 100: compatible demands are met, otherwise both get 0.
pub fn bargaining() -> Result<Game, GameError> {
    Game::from_fn(vec![labels(0..=100), labels(0..=100)], |p| {
        if p[0] + p[1] <= 100 {
            vec![int(p[0] as i64), int(p[1] as i64)]
        } else {
            vec![zero(), zero()]
        }
    })
}

pub fn matching_pennies() -> Result<Game, GameError> {
    bimatrix(
        &["a", "b"],
        &["a", "b"],
        &[&[(80, 40), (40, 80)], &[(40, 80), (80, 40)]],
    )
}

pub fn asym_matching_pennies() -> Result<Game, GameError> {
    bimatrix(
        &["a", "b"],
        &["a", "b"],
        &[&[(320, 40), (40, 80)], &[(40, 80), (80, 40)]],
    )
}

pub fn coordination(k: &Rational) -> Result<Game, GameError> {
    if *k <= zero() {
        return Err(invalid("coordination needs k > 0"));
    }
    symmetric(labels(["a", "b"]), |x, y| match (x, y) {
        (0, 0) => k.clone(),
        (1, 1) => int(1),
        _ => zero(),
    })
}

pub fn hawk_dove(a: &Rational, b: &Rational, c: &Rational) -> Result<Game, GameError> {
    if !(zero() < *a && a < b && b < c) {
        return Err(invalid("hawk-dove needs 0 < a < b < c"));
    }
    symmetric(labels(["d", "h"]), |x, y| match (x, y) {
        (0, 0) => b.clone(),
        (0, 1) => a.clone(),
        (1, 0) => c.clone(),
        _ => zero(),
    })
}

/// Rock-scissors-paper with actions ordered r, s, p.
pub fn rps() -> Result<Game, GameError> {
    symmetric(labels(["r", "s", "p"]), |x, y| {
        int(if x == y {
            1
        } else if (x + 1) % 3 == y {
            2
        } else {
            0
        })
    })
}

pub fn check_pd_payoffs(u1: &Rational, u2: &Rational, u3: &Rational) -> Result<(), GameError> {
    if !(zero() < *u1 && u1 < u2 && u2 < u3) {
        return Err(invalid("prisoner's dilemma needs 0 < u1 < u2 < u3"));
    }
    if u2 * int(2) <= *u3 {
        return Err(invalid("prisoner's dilemma needs u2 > u3/2"));
    }
    Ok(())
}

pub fn pd(u1: &Rational, u2: &Rational, u3: &Rational) -> Result<Game, GameError> {
    check_pd_payoffs(u1, u2, u3)?;
    symmetric(labels(["c", "d"]), |x, y| match (x, y) {
        (0, 0) => u2.clone(),
        (0, 1) => zero(),
        (1, 0) => u3.clone(),
        _ => u1.clone(),
    })
}

/// A 2x2 game where strong dominance and regret minimization part ways.
pub fn sd_vs_rm() -> Result<Game, GameError> {
    bimatrix(&["a", "b"], &["x", "y"], &[&[(0, 100), (0, 0)], &[(1, 0), (1, 1)]])
}

/// `n` actions; `k` on diagonal cell `k`, `-2` one step below the diagonal.
pub fn staircase(n: usize) -> Result<Game, GameError> {
    if n < 1 {
        return Err(invalid("staircase needs n >= 1"));
    }
    symmetric(labels((1..=n).map(|k| format!("a{}", k))), |x, y| {
        if x == y {
            int(x as i64 + 1)
        } else if y + 1 == x {
            int(-2)
        } else {
            zero()
        }
    })
}

pub fn gencoord() -> Result<Game, GameError> {
    bimatrix(
        &["a", "b"],
        &["a", "b"],
        &[&[(1, 1), (0, -10)], &[(-10, 0), (10, 10)]],
    )
}

pub fn differ() -> Result<Game, GameError> {
    let t = [[5, 2, 1], [0, 3, 1], [3, 1, 4]];
    symmetric(labels(["a", "b", "c"]), |x, y| int(t[x][y]))
}

/// Actions `a{i}{j}` for `i` in `1..=n`, `j` in `{1,2}`.
pub fn mixed_multiround(n: usize, base: &Rational) -> Result<Game, GameError> {
    if n < 1 {
        return Err(invalid("mixed_multiround needs n >= 1"));
    }
    if *base <= int(1) {
        return Err(invalid("mixed_multiround needs base > 1"));
    }
    let acts: Vec<(u32, u32)> = (1..=n as u32).flat_map(|i| [(i, 1), (i, 2)]).collect();
    symmetric(
        labels(acts.iter().map(|(i, j)| format!("a{}{}", i, j))),
        |x, y| {
            let ((i, j), (k, l)) = (acts[x], acts[y]);
            if i != k {
                -pow(base, i.max(k))
            } else if j == l {
                zero()
            } else {
                -pow(base, i + 1)
            }
        },
    )
}

/// Finitely repeated prisoner's dilemma over full deterministic plans.
pub fn repeated_pd(rounds: u32, u1: &Rational, u2: &Rational, u3: &Rational) -> Result<Game, GameError> {
    check_pd_payoffs(u1, u2, u3)?;
    if rounds == 0 {
        return Err(invalid("repeated_pd needs at least one round"));
    }
    if rounds > repeated_pd::MAX_MATRIX_ROUNDS {
        return Err(GameError::TooLarge(format!(
            "repeated_pd with {} rounds has {} plans per player; the payoff table is built for at most {} rounds",
            rounds,
            repeated_pd::plan_count(rounds.min(5)),
            repeated_pd::MAX_MATRIX_ROUNDS
        )));
    }
    let stage = repeated_pd::Stage::new(u1, u2, u3);
    let count = repeated_pd::plan_count(rounds);
    let names = labels((0..count).map(|m| repeated_pd::plan_label(m, rounds)));
    Game::from_fn(vec![names.clone(), names], |p| {
        let (a, b) = repeated_pd::play(p[0] as u32, p[1] as u32, rounds, &stage);
        vec![a, b]
    })
}

/// Uniformly random integer payoffs in `[lo, hi]`, for property tests and demos.
pub fn random_game(sizes: &[usize], lo: i64, hi: i64, mut next: impl FnMut(i64, i64) -> i64) -> Game {
    let actions = sizes
        .iter()
        .map(|&s| labels((1..=s).map(|k| format!("x{}", k))))
        .collect();
    let n = sizes.len();
    Game::from_fn(actions, |_| (0..n).map(|_| int(next(lo, hi))).collect()).expect("valid sizes")
}

/// Named example games with their parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Example {
    TravelersDilemma { p: i64, low: i64, high: i64 },
    Centipede { k: u32, payoffs: CentipedePayoffs },
    Bertrand,
    Bargaining,
    MatchingPennies,
    AsymMatchingPennies,
    Coordination { k: Rational },
    HawkDove { a: Rational, b: Rational, c: Rational },
    Rps,
    Pd { u1: Rational, u2: Rational, u3: Rational },
    SdVsRm,
    Staircase { n: usize },
    Gencoord,
    Differ,
    MixedMultiround { n: usize, base: Rational },
    RepeatedPd { rounds: u32, u1: Rational, u2: Rational, u3: Rational },
}

impl Example {
    pub const NAMES: [&'static str; 16] = [
        "travelers-dilemma",
        "centipede",
        "bertrand",
        "bargaining",
        "matching-pennies",
        "asym-matching-pennies",
        "coordination",
        "hawk-dove",
        "rps",
        "pd",
        "sd-vs-rm",
        "staircase",
        "gencoord",
        "differ",
        "mixed-multiround",
        "repeated-pd",
    ];

    pub fn build(&self) -> Result<Game, GameError> {
        match self {
            Example::TravelersDilemma { p, low, high } => travelers_dilemma(*p, *low, *high),
            Example::Centipede { k, payoffs } => centipede(*k, payoffs),
            Example::Bertrand => bertrand(),
            Example::Bargaining => bargaining(),
            Example::MatchingPennies => matching_pennies(),
            Example::AsymMatchingPennies => asym_matching_pennies(),
            Example::Coordination { k } => coordination(k),
            Example::HawkDove { a, b, c } => hawk_dove(a, b, c),
            Example::Rps => rps(),
            Example::Pd { u1, u2, u3 } => pd(u1, u2, u3),
            Example::SdVsRm => sd_vs_rm(),
            Example::Staircase { n } => staircase(*n),
            Example::Gencoord => gencoord(),
            Example::Differ => differ(),
            Example::MixedMultiround { n, base } => mixed_multiround(*n, base),
            Example::RepeatedPd { rounds, u1, u2, u3 } => repeated_pd(*rounds, u1, u2, u3),
        }
    }

    /// The example suite used by property checks: every generator at small parameters.
    pub fn suite() -> Vec<(String, Example)> {
        let r = |n, d| ratio(n, d);
        vec![
            ("td-p2".into(), Example::TravelersDilemma { p: 2, low: 2, high: 100 }),
            ("td-p5-small".into(), Example::TravelersDilemma { p: 5, low: 2, high: 30 }),
            ("centipede-exp-10".into(), Example::Centipede { k: 10, payoffs: CentipedePayoffs::Exponential }),
            ("centipede-lin-10-2".into(), Example::Centipede { k: 10, payoffs: CentipedePayoffs::Linear(int(2)) }),
            ("centipede-lin-9-3".into(), Example::Centipede { k: 9, payoffs: CentipedePayoffs::Linear(int(3)) }),
            ("bertrand".into(), Example::Bertrand),
            ("bargaining".into(), Example::Bargaining),
            ("matching-pennies".into(), Example::MatchingPennies),
            ("asym-matching-pennies".into(), Example::AsymMatchingPennies),
            ("coordination-3".into(), Example::Coordination { k: int(3) }),
            ("hawk-dove".into(), Example::HawkDove { a: int(1), b: int(2), c: int(3) }),
            ("rps".into(), Example::Rps),
            ("pd".into(), Example::Pd { u1: int(1), u2: int(3), u3: int(4) }),
            ("sd-vs-rm".into(), Example::SdVsRm),
            ("staircase-5".into(), Example::Staircase { n: 5 }),
            ("gencoord".into(), Example::Gencoord),
            ("differ".into(), Example::Differ),
            ("mixed-multiround-3".into(), Example::MixedMultiround { n: 3, base: int(3) }),
            ("repeated-pd-2".into(), Example::RepeatedPd { rounds: 2, u1: int(1), u2: int(3), u3: r(4, 1) }),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(g: &Game, l: &[&str]) -> Vec<Rational> {
        g.utility_by_label(l).unwrap()
    }

    fn pair(a: i64, b: i64) -> Vec<Rational> {
        vec![int(a), int(b)]
    }

    #[test]
    fn travelers_dilemma_payoffs() {
        let g = travelers_dilemma(2, 2, 100).unwrap();
        assert_eq!(g.num_actions(0), 99);
        assert_eq!(u(&g, &["97", "97"]), pair(97, 97));
        assert_eq!(u(&g, &["99", "100"]), pair(101, 97));
        assert_eq!(u(&g, &["98", "97"]), pair(95, 99));
        assert_eq!(u(&g, &["100", "100"]), pair(100, 100));
        assert!(travelers_dilemma(2, 5, 5).is_err());
    }

    #[test]
    fn centipede_payoffs_and_classes() {
        let g = centipede(10, &CentipedePayoffs::Exponential).unwrap();
        assert_eq!(g.labels(0).last().unwrap(), NEVER);
        assert_eq!(g.labels(1).last().unwrap(), "[10]");
        assert_eq!(u(&g, &["[1]", "[2]"]), pair(3, 1));
        assert_eq!(u(&g, &["[5]", "[4]"]), pair(8, 16));
        assert_eq!(u(&g, &[NEVER, "[10]"]), pair(512, 1024));
        let lin = centipede(10, &CentipedePayoffs::Linear(int(2))).unwrap();
        assert_eq!(u(&lin, &["[3]", "[4]"]), pair(3, 1));
        assert_eq!(u(&lin, &["[5]", "[4]"]), pair(2, 4));
        let odd = centipede(9, &CentipedePayoffs::Linear(int(3))).unwrap();
        assert_eq!(odd.labels(1).last().unwrap(), NEVER);
        assert_eq!(odd.labels(0).last().unwrap(), "[9]");
        assert!(centipede(10, &CentipedePayoffs::Linear(int(1))).is_err());
    }

    #[test]
    fn small_tables() {
        let b = bertrand().unwrap();
        assert_eq!(u(&b, &["100", "100"]), pair(5000, 5000));
        assert_eq!(u(&b, &["99", "100"]), pair(9900, 0));
        let n = bargaining().unwrap();
        assert_eq!(u(&n, &["40", "60"]), pair(40, 60));
        assert_eq!(u(&n, &["41", "60"]), pair(0, 0));
        let mp = asym_matching_pennies().unwrap();
        assert_eq!(u(&mp, &["a", "a"]), pair(320, 40));
        assert_eq!(u(&mp, &["b", "a"]), pair(40, 80));
        let hd = hawk_dove(&int(1), &int(2), &int(3)).unwrap();
        assert_eq!(u(&hd, &["d", "h"]), pair(1, 3));
        assert_eq!(u(&hd, &["h", "h"]), pair(0, 0));
        let r = rps().unwrap();
        assert_eq!(u(&r, &["r", "s"]), pair(2, 0));
        assert_eq!(u(&r, &["r", "p"]), pair(0, 2));
        let p = pd(&int(1), &int(3), &int(4)).unwrap();
        assert_eq!(u(&p, &["d", "c"]), pair(4, 0));
        assert!(pd(&int(1), &int(2), &int(4)).is_err());
        let g = gencoord().unwrap();
        assert_eq!(u(&g, &["b", "b"]), pair(10, 10));
        assert_eq!(u(&g, &["a", "b"]), pair(0, -10));
        let d = differ().unwrap();
        assert_eq!(u(&d, &["a", "a"])[0], int(5));
        assert_eq!(u(&d, &["c", "c"])[0], int(4));
        assert_eq!(u(&d, &["b", "c"]), pair(1, 1));
        let s = sd_vs_rm().unwrap();
        assert_eq!(u(&s, &["a", "x"]), pair(0, 100));
        assert_eq!(u(&s, &["b", "y"]), pair(1, 1));
    }

    #[test]
    fn staircase_and_multiround() {
        let s = staircase(4).unwrap();
        assert_eq!(u(&s, &["a3", "a3"]), pair(3, 3));
        assert_eq!(u(&s, &["a3", "a2"]), pair(-2, 0));
        assert_eq!(u(&s, &["a2", "a3"]), pair(0, -2));
        let m = mixed_multiround(3, &int(3)).unwrap();
        assert_eq!(u(&m, &["a11", "a31"]), pair(-27, -27));
        assert_eq!(u(&m, &["a21", "a21"]), pair(0, 0));
        assert_eq!(u(&m, &["a21", "a22"]), pair(-27, -27));
        assert_eq!(u(&m, &["a11", "a12"]), pair(-9, -9));
    }

    #[test]
    fn repeated_pd_sizes_and_cap() {
        let g = repeated_pd(2, &int(1), &int(3), &int(4)).unwrap();
        assert_eq!(g.num_actions(0), 8);
        assert!(matches!(
            repeated_pd(4, &int(1), &int(3), &int(4)),
            Err(GameError::TooLarge(_))
        ));
    }
}
