use proptest::prelude::*;
use regretlab::bayes::{expected_regret, rm_bayes_iterate, unconditional_regret, BayesianGame, TypedSpace, TypedStrategy};
use regretlab::concepts::{dominance_step, iterate_operator, justifiable_step, pure_nash, DominanceKind, Operator};
use regretlab::game::{Game, MixedStrategy};
use regretlab::generators::Example;
use regretlab::rational::{int, ratio, Rational};
use regretlab::regret_mixed::{min_mixed_regret, mixed_regret, regret_against, regret_prime, MixedSpace};
use regretlab::regret_pure::{rm_iterate, rm_step};
use regretlab::reproduce::{brute_rm_step, grid_sandwich};
use regretlab::space::PureSpace;

fn game_from(sizes: &[usize], payoffs: &[i64]) -> Game {
    let actions: Vec<Vec<String>> = sizes
        .iter()
        .map(|&s| (1..=s).map(|k| format!("x{}", k)).collect())
        .collect();
    let n = sizes.len();
    let mut it = payoffs.iter().cycle();
    Game::from_fn(actions, |_| (0..n).map(|_| int(*it.next().unwrap())).collect()).unwrap()
}

/// Random games with 2 or 3 players, 1 to 4 actions each, payoffs in -6..=6.
fn small_game() -> impl Strategy<Value = Game> {
    (prop::collection::vec(1usize..=4, 2..=3), prop::collection::vec(-6i64..=6, 192))
        .prop_map(|(sizes, payoffs)| game_from(&sizes, &payoffs))
}

fn two_player_game(max_actions: usize) -> impl Strategy<Value = Game> {
    (2usize..=max_actions, 2usize..=max_actions, prop::collection::vec(-6i64..=6, 32))
        .prop_map(|(a, b, payoffs)| game_from(&[a, b], &payoffs))
}

fn mixed_for(owner: usize, raw: &[u32], k: usize) -> MixedStrategy {
    let raw: Vec<u32> = raw.iter().take(k).copied().collect();
    let total: u32 = raw.iter().sum();
    if total == 0 {
        return MixedStrategy::uniform(owner, k);
    }
    MixedStrategy::new(owner, raw.iter().map(|&x| ratio(x as i64, total as i64)).collect()).unwrap()
}

#[test]
fn rm_is_nested_nonempty_and_reaches_a_fixed_point_on_every_example() {
    for (name, ex) in Example::suite() {
        let g = ex.build().unwrap();
        let t = rm_iterate(&g, &PureSpace::full(&g));
        for k in 1..=t.rounds.len() {
            assert!(t.space(k).is_subset_of(t.space(k - 1)), "{} round {}", name, k);
            assert!((0..g.players()).all(|i| !t.space(k).set(i).is_empty()), "{} round {}", name, k);
        }
        assert_eq!(rm_step(&g, &t.fixed_point).0, t.fixed_point, "{}", name);
        assert!(!t.rounds.last().unwrap().changed, "{}", name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rm_step_matches_brute_force(g in small_game()) {
        let full = PureSpace::full(&g);
        let (next, reports) = rm_step(&g, &full);
        prop_assert_eq!(brute_rm_step(&g, full.sets()), next.sets().to_vec());
        for r in &reports {
            prop_assert!(r.regrets.iter().all(|(_, x)| *x >= int(0)));
        }
    }

    #[test]
    fn rm_is_invariant_under_positive_affine_maps(
        g in small_game(),
        player in 0usize..3,
        num in 1i64..=9,
        den in 1i64..=9,
        shift in -9i64..=9,
    ) {
        let i = player % g.players();
        let h = g.affine_transform(i, &ratio(num, den), &int(shift));
        let full = PureSpace::full(&g);
        prop_assert_eq!(rm_iterate(&h, &full).fixed_point, rm_iterate(&g, &full).fixed_point);
    }

    #[test]
    fn dominance_witnesses_verify_and_strong_removals_are_weak_removals(g in small_game()) {
        let full = PureSpace::full(&g);
        let (weak, ww) = dominance_step(&g, &full, DominanceKind::Weak);
        let (strong, sw) = dominance_step(&g, &full, DominanceKind::Strong);
        prop_assert!(ww.iter().all(|w| w.verify(&g, &full)));
        prop_assert!(sw.iter().all(|w| w.verify(&g, &full)));
        prop_assert!(weak.is_subset_of(&strong));
        let sd = iterate_operator(&g, &full, Operator::Sd).fixed_point;
        for p in pure_nash(&g) {
            prop_assert!((0..g.players()).all(|i| sd.contains(i, p[i])));
        }
    }

    #[test]
    fn justifiability_certificates_verify(g in small_game()) {
        let full = PureSpace::full(&g);
        let (next, round) = justifiable_step(&g, &full);
        for c in &round.certificates {
            prop_assert_eq!(c.belief.is_some(), next.contains(c.player, c.action));
            prop_assert!(c.belief.is_none() || c.verify(&g, &full));
        }
        prop_assert!(next.is_subset_of(&full));
        // Dominant actions are best replies to every belief.
        let rm_zero: Vec<usize> = regretlab::regret_pure::dominant_actions(&g, 0);
        prop_assert!(rm_zero.iter().all(|&a| next.contains(0, a)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn worst_regret_prime_over_pure_opponents_equals_mixed_regret(
        g in two_player_game(4),
        raw in prop::collection::vec(0u32..=5, 4),
    ) {
        let sigma = mixed_for(0, &raw, g.num_actions(0));
        let k = g.num_actions(1);
        let prime = (0..k)
            .map(|b| regret_prime(&g, 0, &sigma, &[MixedStrategy::pure(1, k, b)]).unwrap())
            .max()
            .unwrap();
        prop_assert_eq!(prime, mixed_regret(&g, &MixedSpace::full(&g), 0, &sigma).unwrap());
    }

    #[test]
    fn mixed_opponents_never_exceed_pure_worst_case(
        g in two_player_game(4),
        raw in prop::collection::vec(0u32..=5, 4),
        opp in prop::collection::vec(0u32..=5, 4),
    ) {
        let sigma = mixed_for(0, &raw, g.num_actions(0));
        let tau = mixed_for(1, &opp, g.num_actions(1));
        let worst = mixed_regret(&g, &MixedSpace::full(&g), 0, &sigma).unwrap();
        prop_assert!(regret_against(&g, 0, &sigma, &[tau]).unwrap() <= worst);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn lp_value_is_sandwiched_by_the_grid(g in two_player_game(3)) {
        for i in 0..2 {
            let (t, sigma) = min_mixed_regret(&g, &MixedSpace::full(&g), i).unwrap();
            prop_assert_eq!(mixed_regret(&g, &MixedSpace::full(&g), i, &sigma).unwrap(), t.clone());
            prop_assert!(grid_sandwich(&g, i, &t, 24));
        }
    }
}

fn bayesian_from(types: [usize; 2], actions: [usize; 2], prior: &[u32], payoffs: &[i64]) -> BayesianGame {
    let tl: Vec<Vec<String>> = types.iter().map(|&n| (0..n).map(|t| format!("t{}", t)).collect()).collect();
    let al: Vec<Vec<String>> = actions.iter().map(|&n| (0..n).map(|a| format!("a{}", a)).collect()).collect();
    let count = types[0] * types[1];
    let w: Vec<u32> = prior.iter().take(count).copied().collect();
    let total: u32 = w.iter().sum();
    let prior: Vec<Rational> = w.iter().map(|&x| ratio(x as i64, total as i64)).collect();
    let mut it = payoffs.iter().cycle();
    BayesianGame::from_fn(tl, prior, al, |_, _| vec![int(*it.next().unwrap()), int(*it.next().unwrap())]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn conditional_and_unconditional_regret_agree(
        types in [1usize..=3, 1usize..=3],
        actions in [1usize..=3, 1usize..=3],
        prior in prop::collection::vec(1u32..=5, 9),
        payoffs in prop::collection::vec(-5i64..=5, 97),
        choice in prop::collection::vec(0usize..3, 3),
        player in 0usize..2,
    ) {
        let bg = bayesian_from(types, actions, &prior, &payoffs);
        let space = TypedSpace::full(&bg);
        let acts: Vec<usize> = (0..types[player]).map(|t| choice[t] % actions[player]).collect();
        let sigma = TypedStrategy::new(&bg, player, acts.clone()).unwrap();
        let via_types: Rational = (0..types[player])
            .map(|t| bg.marginal(player, t) * expected_regret(&bg, &space, player, t, acts[t]).unwrap())
            .sum();
        prop_assert_eq!(unconditional_regret(&bg, &space, &sigma), via_types);
    }

    #[test]
    fn singleton_types_reduce_to_the_strategic_game(g in two_player_game(4)) {
        let bg = BayesianGame::from_game(&g);
        let bt = rm_bayes_iterate(&bg, &TypedSpace::full(&bg));
        let t = rm_iterate(&g, &PureSpace::full(&g));
        prop_assert_eq!(bt.rounds.len(), t.rounds.len());
        for (b, p) in bt.rounds.iter().zip(&t.rounds) {
            for i in 0..2 {
                prop_assert_eq!(b.space.set(i, 0), p.space.set(i));
            }
        }
    }
}
