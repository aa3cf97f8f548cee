//! Brute-force reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::hash::{DefaultHasher, Hash, Hasher};

use rand::Rng;
use seqnash::game_model::{AgentId, Arena, ChoiceId, Game, OutcomeId, PositionalProfile, StateId};
use seqnash::preferences::{LinearPreference, PreferenceProfile};
use seqnash::winlose::{Objective, Side, WinLoseGame};

/// Outcomes of all plays from `from` where constrained states obey
/// `constraint`: plain DFS for the absorbing outcomes, and a search for a
/// state that can reach itself for the default outcome.
pub fn outcomes_from(arena: &Arena, from: StateId, constraint: &PositionalProfile) -> BTreeSet<OutcomeId> {
    let succ = |q: StateId| -> Vec<StateId> {
        if arena.is_absorbing(q) {
            return vec![];
        }
        match constraint.get(q) {
            Some(c) => vec![arena.successor(q, c)],
            None => arena.choice_ids().map(|c| arena.successor(q, c)).collect(),
        }
    };
    let reach = |start: StateId| -> HashSet<StateId> {
        let mut seen = HashSet::new();
        let mut stack = succ(start);
        while let Some(q) = stack.pop() {
            if seen.insert(q) {
                stack.extend(succ(q));
            }
        }
        seen
    };
    let mut reachable = reach(from);
    reachable.insert(from);
    let mut out = BTreeSet::new();
    for &q in &reachable {
        if let Some(o) = arena.absorbing_outcome(q) {
            out.insert(o);
        } else if reach(q).contains(&q) {
            out.insert(arena.default_outcome);
        }
    }
    out
}

/// Every total assignment of choices to `states`, in lexicographic order.
pub fn assignments(arena: &Arena, states: &[StateId]) -> Vec<PositionalProfile> {
    let mut out = vec![PositionalProfile::empty(arena.num_states())];
    for &q in states {
        out = out
            .into_iter()
            .flat_map(|p| {
                arena.choice_ids().map(move |c| {
                    let mut p = p.clone();
                    p.set(q, c);
                    p
                })
            })
            .collect();
    }
    out
}

/// Best worst-case outcome position of `agent` from `q` over its positional strategies.
pub fn maximin(arena: &Arena, linear: &LinearPreference, agent: AgentId, q: StateId) -> OutcomeId {
    let own: Vec<StateId> = arena.decision_states().filter(|&s| arena.is_owned_by(s, agent)).collect();
    assignments(arena, &own)
        .iter()
        .map(|mu| {
            outcomes_from(arena, q, mu)
                .into_iter()
                .min_by_key(|&o| linear.position(o))
                .expect("some outcome")
        })
        .max_by_key(|&o| linear.position(o))
        .expect("some strategy")
}

/// Whether the play from `from` under the total pair `(a, b)` satisfies A's objective.
pub fn a_wins_pair(game: &WinLoseGame, a: &PositionalProfile, b: &PositionalProfile, from: StateId) -> bool {
    let arena = &game.arena;
    let mut visited = Vec::new();
    let mut q = from;
    let absorbed = loop {
        visited.push(q);
        if arena.is_absorbing(q) {
            break true;
        }
        if visited[..visited.len() - 1].contains(&q) {
            break false;
        }
        let c = a.get(q).or(b.get(q)).expect("total pair");
        q = arena.successor(q, c);
    };
    match &game.objective {
        Objective::Reach(t) => absorbed && t.contains(&q),
        Objective::Safe(bad) => !visited.iter().any(|s| bad.contains(s)),
        Objective::ReachOrNonAbsorbing(t) => !absorbed || t.contains(&q),
    }
}

/// Winner at `from` by enumerating all positional strategy pairs.
pub fn exhaustive_winner(game: &WinLoseGame, from: StateId) -> Side {
    let arena = &game.arena;
    let side_states = |s: Side| -> Vec<StateId> {
        arena.decision_states().filter(|&q| game.side(q) == Some(s)).collect()
    };
    let bs = assignments(arena, &side_states(Side::B));
    let a_wins = assignments(arena, &side_states(Side::A))
        .iter()
        .any(|a| bs.iter().all(|b| a_wins_pair(game, a, b, from)));
    if a_wins {
        Side::A
    } else {
        Side::B
    }
}

/// A complete binary tree of the given depth with random owners among two
/// agents, random leaf outcomes among three, and random acyclic preferences.
/// Node `i` has children `2i+1` and `2i+2`.
pub fn random_tree(rng: &mut impl Rng, depth: u32) -> Game {
    let inner = (1usize << depth) - 1;
    let leaves = 1usize << depth;
    let mut arena = Arena::new(vec!["l".into(), "r".into()], vec!["a".into(), "b".into()], OutcomeId(0));
    for i in 0..inner {
        arena.add_state(format!("n{i}"), AgentId(rng.random_range(0..2)));
    }
    for i in 0..leaves {
        arena.add_absorbing(format!("L{i}"), OutcomeId(rng.random_range(0..3)));
    }
    for i in 0..inner {
        arena.set_transition(StateId(i), ChoiceId(0), StateId(2 * i + 1));
        arena.set_transition(StateId(i), ChoiceId(1), StateId(2 * i + 2));
    }
    let relations = (0..2)
        .map(|_| seqnash::corpus::random_acyclic_relation(rng, 3))
        .collect();
    let prefs = PreferenceProfile::new(vec!["o0".into(), "o1".into(), "o2".into()], relations);
    Game { arena, prefs }
}

/// Nodes of the subtree rooted at `i` in a [`random_tree`] arena.
pub fn subtree(arena: &Arena, i: usize) -> Vec<StateId> {
    let mut out = vec![];
    let mut stack = vec![i];
    while let Some(n) = stack.pop() {
        if n < arena.num_states() {
            out.push(StateId(n));
            stack.extend([2 * n + 1, 2 * n + 2]);
        }
    }
    out
}

/// Proper ancestors of node `i` in a [`random_tree`] arena.
pub fn ancestors(mut i: usize) -> Vec<StateId> {
    let mut out = vec![];
    while i > 0 {
        i = (i - 1) / 2;
        out.push(StateId(i));
    }
    out
}

/// A hash-based stage predicate containing the empty history.
pub fn stage_predicate(seed: u64) -> impl Fn(&[u8]) -> bool {
    move |h: &[u8]| {
        if h.is_empty() {
            return true;
        }
        let mut hasher = DefaultHasher::new();
        (seed, h).hash(&mut hasher);
        hasher.finish().is_multiple_of(2)
    }
}

/// All sequences over `0..base` of length `len`.
pub fn words(base: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..base).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// A random constraint: each decision state is left free or fixed to a random choice.
pub fn random_constraint(rng: &mut impl Rng, arena: &Arena, keep: f64) -> PositionalProfile {
    let mut p = PositionalProfile::empty(arena.num_states());
    for q in arena.decision_states() {
        if rng.random_bool(keep) {
            p.set(q, ChoiceId(rng.random_range(0..arena.num_choices())));
        }
    }
    p
}
