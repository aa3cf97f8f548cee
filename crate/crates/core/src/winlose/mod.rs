//! Two-sided win-lose games on arenas, solved by attractor computation.
//!
//! Side A's objective is one of three shapes; side B wins exactly the plays
//! A loses. Every shape reduces to reachability or safety for one of the
//! sides, so both sides have positional winning strategies and every state
//! is won by exactly one side.

pub mod parse;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::game_model::{graph_has_cycle, Arena, ChoiceId, PositionalProfile, StateId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Side A's winning condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Absorb in a target state.
    Reach(BTreeSet<StateId>),
    /// Never visit an avoided state.
    Safe(BTreeSet<StateId>),
    /// Absorb in a target state or never absorb.
    ReachOrNonAbsorbing(BTreeSet<StateId>),
}

impl Objective {
    pub fn states(&self) -> &BTreeSet<StateId> {
        match self {
            Objective::Reach(s) | Objective::Safe(s) | Objective::ReachOrNonAbsorbing(s) => s,
        }
    }
}

/// A side's objective rewritten as plain reachability or safety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    Reach(BTreeSet<StateId>),
    Safe(BTreeSet<StateId>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WinLoseError {
    #[error("malformed objective: {0}")]
    MalformedObjective(String),
    #[error("strategy is undefined at state {0}")]
    PartialStrategy(String),
    #[error("choice #{0} is not declared")]
    UnknownChoice(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinLoseGame {
    /// Owners and outcomes of the arena are ignored.
    pub arena: Arena,
    /// Side moving at each non-absorbing state.
    pub side_of: Vec<Option<Side>>,
    pub objective: Objective,
}

impl WinLoseGame {
    pub fn side(&self, state: StateId) -> Option<Side> {
        if self.arena.is_absorbing(state) {
            None
        } else {
            self.side_of[state.0]
        }
    }

    fn absorbing_states(&self) -> BTreeSet<StateId> {
        self.arena
            .state_ids()
            .filter(|&q| self.arena.is_absorbing(q))
            .collect()
    }

    /// Checks the objective and side assignment.
    pub fn validate(&self) -> Result<(), WinLoseError> {
        let arena = &self.arena;
        for q in arena.decision_states() {
            if self.side_of.get(q.0).copied().flatten().is_none() {
                return Err(WinLoseError::MalformedObjective(format!(
                    "state {} has no side",
                    arena.state_name(q)
                )));
            }
        }
        for &q in self.objective.states() {
            if q.0 >= arena.num_states() {
                return Err(WinLoseError::MalformedObjective(format!("unknown state #{}", q.0)));
            }
            if !arena.is_absorbing(q) {
                return Err(WinLoseError::MalformedObjective(format!(
                    "objective state {} is not absorbing",
                    arena.state_name(q)
                )));
            }
        }
        Ok(())
    }

    /// `side`'s objective as reachability or safety.
    pub(crate) fn goal(&self, side: Side) -> Goal {
        let rest = |t: &BTreeSet<StateId>| -> BTreeSet<StateId> {
            self.absorbing_states().difference(t).copied().collect()
        };
        match (side, &self.objective) {
            (Side::A, Objective::Reach(t)) => Goal::Reach(t.clone()),
            (Side::A, Objective::Safe(bad)) => Goal::Safe(bad.clone()),
            (Side::A, Objective::ReachOrNonAbsorbing(t)) => Goal::Safe(rest(t)),
            (Side::B, Objective::Reach(t)) => Goal::Safe(t.clone()),
            (Side::B, Objective::Safe(bad)) => Goal::Reach(bad.clone()),
            (Side::B, Objective::ReachOrNonAbsorbing(t)) => Goal::Reach(rest(t)),
        }
    }

    /// Whether a finished play satisfies side A's objective: `visited` are
    /// the states it passes through, `absorbed` whether it ends absorbing.
    pub fn a_wins_play(&self, visited: &[StateId], absorbed: Option<StateId>) -> bool {
        match &self.objective {
            Objective::Reach(t) => absorbed.is_some_and(|q| t.contains(&q)),
            Objective::Safe(bad) => !visited.iter().any(|q| bad.contains(q)),
            Objective::ReachOrNonAbsorbing(t) => absorbed.is_none_or(|q| t.contains(&q)),
        }
    }
}

/// Attractor region with its layer indices and a positional strategy
/// moving into earlier layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attractor {
    pub region: BTreeSet<StateId>,
    /// Round in which each state joined; 0 for targets.
    pub layer: Vec<Option<usize>>,
    /// Defined at the attracting side's states that joined after round 0.
    pub strategy: PositionalProfile,
}

impl Attractor {
    pub fn contains(&self, state: StateId) -> bool {
        self.layer[state.0].is_some()
    }
}

/// Least fixpoint of: the target, plus `side` states with some successor
/// inside, plus opponent states with all successors inside. A joining
/// `side` state moves to its successor of least layer, ties broken by
/// declared choice order.
pub fn attractor(game: &WinLoseGame, side: Side, target: &BTreeSet<StateId>) -> Attractor {
    let arena = &game.arena;
    let mut layer: Vec<Option<usize>> = vec![None; arena.num_states()];
    for q in target {
        layer[q.0] = Some(0);
    }
    let mut strategy = PositionalProfile::empty(arena.num_states());
    let mut round = 0;
    loop {
        round += 1;
        let mut joined = Vec::new();
        for q in arena.decision_states() {
            if layer[q.0].is_some() {
                continue;
            }
            if game.side(q) == Some(side) {
                let best = arena
                    .choice_ids()
                    .filter_map(|c| layer[arena.successor(q, c).0].map(|l| (l, c)))
                    .min();
                if let Some((_, c)) = best {
                    joined.push((q, Some(c)));
                }
            } else if arena
                .choice_ids()
                .all(|c| layer[arena.successor(q, c).0].is_some())
            {
                joined.push((q, None));
            }
        }
        if joined.is_empty() {
            break;
        }
        for (q, choice) in joined {
            layer[q.0] = Some(round);
            if let Some(c) = choice {
                strategy.set(q, c);
            }
        }
    }
    let region = arena.state_ids().filter(|q| layer[q.0].is_some()).collect();
    Attractor {
        region,
        layer,
        strategy,
    }
}

/// Winner of every state and a positional winning strategy for each side.
/// Each strategy is total on its side's states; at states its side loses it
/// plays the first declared choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub winner_at: Vec<Side>,
    pub strategy_a: PositionalProfile,
    pub strategy_b: PositionalProfile,
}

impl Verdict {
    pub fn winner(&self, state: StateId) -> Side {
        self.winner_at[state.0]
    }

    pub fn strategy(&self, side: Side) -> &PositionalProfile {
        match side {
            Side::A => &self.strategy_a,
            Side::B => &self.strategy_b,
        }
    }
}

pub fn solve(game: &WinLoseGame) -> Result<Verdict, WinLoseError> {
    game.validate()?;
    let arena = &game.arena;
    let (reacher, target) = match game.goal(Side::A) {
        Goal::Reach(t) => (Side::A, t),
        Goal::Safe(bad) => (Side::B, bad),
    };
    let attr = attractor(game, reacher, &target);
    let keeper = reacher.opponent();

    let mut winner_at = vec![keeper; arena.num_states()];
    for &q in &attr.region {
        winner_at[q.0] = reacher;
    }

    let mut reach_strategy = PositionalProfile::empty(arena.num_states());
    let mut keep_strategy = PositionalProfile::empty(arena.num_states());
    for q in arena.decision_states() {
        if game.side(q) == Some(reacher) {
            let c = attr.strategy.get(q).unwrap_or(ChoiceId(0));
            reach_strategy.set(q, c);
        } else {
            // Outside the attractor some successor stays outside, by the fixpoint.
            let c = if attr.contains(q) {
                ChoiceId(0)
            } else {
                arena
                    .choice_ids()
                    .find(|&c| !attr.contains(arena.successor(q, c)))
                    .expect("keeper state outside the attractor has an escape")
            };
            keep_strategy.set(q, c);
        }
    }
    let (strategy_a, strategy_b) = match reacher {
        Side::A => (reach_strategy, keep_strategy),
        Side::B => (keep_strategy, reach_strategy),
    };
    Ok(Verdict {
        winner_at,
        strategy_a,
        strategy_b,
    })
}

/// Whether every play from `from` in which `side` follows `strategy`
/// satisfies `side`'s objective.
pub fn verify_winning(
    game: &WinLoseGame,
    side: Side,
    strategy: &PositionalProfile,
    from: StateId,
) -> Result<bool, WinLoseError> {
    let arena = &game.arena;
    for q in arena.decision_states() {
        if game.side(q) == Some(side) && strategy.get(q).is_none() {
            return Err(WinLoseError::PartialStrategy(arena.state_name(q).to_string()));
        }
    }
    let successors = |q: StateId| -> Vec<StateId> {
        if game.side(q) == Some(side) {
            vec![arena.successor(q, strategy.get(q).expect("checked total"))]
        } else {
            arena.choice_ids().map(|c| arena.successor(q, c)).collect()
        }
    };
    let stop = |q: StateId| arena.is_absorbing(q);
    let mut seen = vec![false; arena.num_states()];
    let mut stack = vec![from];
    seen[from.0] = true;
    let mut visited = Vec::new();
    while let Some(q) = stack.pop() {
        visited.push(q);
        if stop(q) {
            continue;
        }
        for next in successors(q) {
            if !seen[next.0] {
                seen[next.0] = true;
                stack.push(next);
            }
        }
    }
    Ok(match game.goal(side) {
        Goal::Safe(bad) => !visited.iter().any(|q| bad.contains(q)),
        Goal::Reach(target) => {
            if visited.iter().any(|q| arena.is_absorbing(*q) && !target.contains(q)) {
                return Ok(false);
            }
            let live: Vec<StateId> = visited.iter().copied().filter(|&q| !stop(q)).collect();
            !graph_has_cycle(&live, arena.num_states(), |q| {
                successors(q).into_iter().filter(|&n| !stop(n)).collect()
            })
        }
    })
}
