mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use seqnash::corpus::{self, random_acyclic_relation, random_game, random_winlose, Shape};
use seqnash::equilibrium::{solve_game, verify_nash};
use seqnash::game_model::parse::{parse_game, write_game};
use seqnash::game_model::{bounded_plays, induced_play, possible_outcomes, AgentId, ChoiceId, OutcomeId, StateId};
use seqnash::guarantees::{guarantee, GuaranteeTable};
use seqnash::oracle::{brute_force_nash_with, OracleOptions};
use seqnash::par::Execution;
use seqnash::preferences::{linear_extension, rank, LinearPreference, PreferenceProfile};
use seqnash::winlose::parse::{parse_winlose, write_winlose};
use seqnash::winlose::{attractor, solve, Side};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn linear_extension_is_a_total_order_containing_the_relation(seed in any::<u64>(), k in 1usize..=6) {
        let mut rng = corpus::rng(seed);
        let relation = random_acyclic_relation(&mut rng, k);
        let prefs = PreferenceProfile::new((0..k).map(|i| format!("o{i}")).collect(), vec![relation.clone()]);
        let linear = linear_extension(&prefs, AgentId(0)).unwrap();
        for &(x, y) in &relation {
            prop_assert!(linear.less(x, y));
        }
        let outcomes: Vec<OutcomeId> = (0..k).map(OutcomeId).collect();
        for &x in &outcomes {
            prop_assert!(!linear.less(x, x));
            for &y in &outcomes {
                prop_assert!(x == y || linear.less(x, y) || linear.less(y, x));
                for &z in &outcomes {
                    prop_assert!(!(linear.less(x, y) && linear.less(y, z)) || linear.less(x, z));
                }
            }
        }
        let intervals = linear.terminal_intervals();
        for a in &intervals {
            for b in &intervals {
                prop_assert!(a.is_subset(b) || b.is_subset(a));
            }
        }
    }

    #[test]
    fn rank_is_least(seed in any::<u64>(), k in 1usize..=6) {
        let mut rng = corpus::rng(seed);
        let relation = random_acyclic_relation(&mut rng, k);
        let prefs = PreferenceProfile::new((0..k).map(|i| format!("o{i}")).collect(), vec![relation.clone()]);
        let r = rank(&prefs, AgentId(0)).unwrap();
        // rank is taken over the inverse relation: y ≺ x gives rank(x) < rank(y)
        let holds = |r: &[usize]| relation.iter().all(|&(y, x)| r[x.0] < r[y.0]);
        prop_assert!(holds(&r));
        for i in 0..k {
            if r[i] > 0 {
                let mut lowered = r.clone();
                lowered[i] -= 1;
                prop_assert!(!holds(&lowered));
            }
        }
    }

    #[test]
    fn game_files_round_trip(seed in any::<u64>()) {
        let game = random_game(&mut corpus::rng(seed), &Shape::lasso());
        let text = write_game(&game);
        prop_assert_eq!(parse_game(&text).unwrap(), game);
    }

    #[test]
    fn winlose_files_round_trip(seed in any::<u64>()) {
        let game = random_winlose(&mut corpus::rng(seed), 10);
        let text = write_winlose(&game);
        let back = parse_winlose(&text).unwrap();
        prop_assert_eq!(write_winlose(&back), text);
        prop_assert_eq!(solve(&back).unwrap().winner_at, solve(&game).unwrap().winner_at);
    }

    #[test]
    fn induced_play_respects_each_agents_restriction(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let game = random_game(&mut rng, &Shape::lasso());
        let arena = &game.arena;
        let s = common::random_constraint(&mut rng, arena, 1.0);
        let play = induced_play(arena, &s);
        for k in 0..=5 {
            let prefix = play.choices(k, ChoiceId(0));
            for a in arena.agent_ids() {
                let plays = bounded_plays(arena, &s.restricted_to_agent(arena, a), k);
                prop_assert!(plays.contains(&prefix));
            }
        }
        prop_assert!(possible_outcomes(arena, arena.initial, &s).outcomes.contains(&play.outcome));
    }

    #[test]
    fn attractor_is_monotone(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let game = random_winlose(&mut rng, 10);
        let all: Vec<StateId> = game.arena.state_ids().collect();
        let small: BTreeSet<StateId> = all.iter().copied().filter(|_| rand::Rng::random_bool(&mut rng, 0.3)).collect();
        let mut large = small.clone();
        large.extend(all.iter().copied().filter(|_| rand::Rng::random_bool(&mut rng, 0.3)));
        for side in [Side::A, Side::B] {
            let a = attractor(&game, side, &small);
            let b = attractor(&game, side, &large);
            prop_assert!(a.region.is_subset(&b.region));
        }
    }

    #[test]
    fn small_winlose_games_match_enumeration(seed in any::<u64>()) {
        let game = random_winlose(&mut corpus::rng(seed), 6);
        let verdict = solve(&game).unwrap();
        for q in game.arena.state_ids() {
            prop_assert_eq!(verdict.winner(q), common::exhaustive_winner(&game, q));
        }
    }

    #[test]
    fn best_guarantee_is_below_every_guarantee(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let game = random_game(&mut rng, &Shape::lasso());
        let arena = &game.arena;
        for a in arena.agent_ids() {
            let linear: LinearPreference = linear_extension(&game.prefs, a).unwrap();
            let table = GuaranteeTable::new(arena, &linear, a);
            let s = common::random_constraint(&mut rng, arena, 1.0);
            for q in arena.decision_states() {
                let best = table.get(q);
                prop_assert!(best.interval.is_subset(&guarantee(arena, &linear, a, q, &s)));
                let witness = best.witness.clone().unwrap();
                prop_assert_eq!(&guarantee(arena, &linear, a, q, &witness), &best.interval);
            }
        }
    }

    #[test]
    fn solver_succeeds_from_any_seed(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let game = random_game(&mut rng, &Shape::lasso());
        let start = common::random_constraint(&mut rng, &game.arena, 1.0);
        let solution = solve_game(&game, Some(start)).unwrap();
        prop_assert!(verify_nash(&game.arena, &game.prefs, &solution.machine).is_ok());
    }

    #[test]
    fn oracle_modes_agree(seed in any::<u64>()) {
        let game = random_game(&mut corpus::rng(seed), &Shape::lasso());
        let seq = OracleOptions { execution: Execution::Sequential, ..OracleOptions::default() };
        let par = OracleOptions { execution: Execution::Parallel, ..OracleOptions::default() };
        prop_assert_eq!(
            brute_force_nash_with(&game.arena, &game.prefs, &seq).unwrap(),
            brute_force_nash_with(&game.arena, &game.prefs, &par).unwrap()
        );
    }
}
