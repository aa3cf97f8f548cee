//! Agent guarantees and best guarantees.
//!
//! The guarantee of an agent at a state, given a profile, is the smallest
//! terminal interval of its linear preference containing every outcome
//! still possible when only the agent's own choices are fixed. The best
//! guarantee is the smallest guarantee over all of the agent's strategies;
//! its minimum is the agent's maximin outcome.
//!
//! Best guarantees are found by a descending threshold scan: for each
//! outcome `o`, from the greatest down, the agent plays the win-lose game
//! "the outcome is at least `o`" against everyone else. The first threshold
//! the agent wins at a state is the minimum of its best guarantee there.

use std::collections::BTreeSet;

use crate::game_model::{
    constrained_outcomes, possible_outcomes, AgentId, Arena, PositionalProfile, StateId,
    StrategyMachine,
};
use crate::preferences::{upward_closure, LinearPreference, TerminalInterval};
use crate::winlose::{solve, Objective, Side, WinLoseGame};

/// Guarantee of `agent` at `state` when its states follow `profile`.
pub fn guarantee(
    arena: &Arena,
    linear: &LinearPreference,
    agent: AgentId,
    state: StateId,
    profile: &PositionalProfile,
) -> TerminalInterval {
    let constraint = profile.restricted_to_agent(arena, agent);
    let reachable = possible_outcomes(arena, state, &constraint);
    let interval = upward_closure(linear, reachable.outcomes);
    assert!(!interval.is_empty(), "guarantee of an empty outcome set");
    interval
}

/// Guarantee of `agent` at the history reaching `state` with `memory`, when
/// the agent follows a finite-memory profile.
pub fn guarantee_under<M: StrategyMachine>(
    arena: &Arena,
    linear: &LinearPreference,
    agent: AgentId,
    state: StateId,
    machine: &M,
    memory: M::Memory,
) -> TerminalInterval {
    let reachable = constrained_outcomes(
        arena,
        machine,
        |q| arena.is_owned_by(q, agent),
        state,
        memory,
    );
    let interval = upward_closure(linear, reachable.outcomes);
    assert!(!interval.is_empty(), "guarantee of an empty outcome set");
    interval
}

/// A best guarantee and a strategy of the agent attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuaranteeResult {
    pub agent: AgentId,
    pub state: StateId,
    pub interval: TerminalInterval,
    /// Positional strategy over the agent's states.
    pub witness: Option<PositionalProfile>,
}

/// The threshold game "outcome at least `threshold`" for `agent`.
pub fn threshold_game(
    arena: &Arena,
    linear: &LinearPreference,
    agent: AgentId,
    threshold: crate::game_model::OutcomeId,
    strict: bool,
) -> WinLoseGame {
    let good = |o| {
        if strict {
            linear.less(threshold, o)
        } else {
            linear.less_eq(threshold, o)
        }
    };
    let target: BTreeSet<StateId> = arena
        .state_ids()
        .filter(|&q| arena.absorbing_outcome(q).is_some_and(good))
        .collect();
    let objective = if good(arena.default_outcome) {
        Objective::ReachOrNonAbsorbing(target)
    } else {
        Objective::Reach(target)
    };
    let side_of = arena
        .state_ids()
        .map(|q| {
            (!arena.is_absorbing(q)).then(|| {
                if arena.is_owned_by(q, agent) {
                    Side::A
                } else {
                    Side::B
                }
            })
        })
        .collect();
    WinLoseGame {
        arena: arena.clone(),
        side_of,
        objective,
    }
}

/// Best guarantees of one agent at every state.
#[derive(Clone, Debug)]
pub struct GuaranteeTable {
    agent: AgentId,
    results: Vec<GuaranteeResult>,
}

impl GuaranteeTable {
    pub fn new(arena: &Arena, linear: &LinearPreference, agent: AgentId) -> Self {
        let mut found: Vec<Option<GuaranteeResult>> = vec![None; arena.num_states()];
        let mut missing = arena.num_states();
        for &threshold in linear.order().iter().rev() {
            if missing == 0 {
                break;
            }
            let game = threshold_game(arena, linear, agent, threshold, false);
            let verdict = solve(&game).expect("threshold games are well-formed");
            let witness = verdict.strategy_a.restricted_to_agent(arena, agent);
            for q in arena.state_ids() {
                if found[q.0].is_none() && verdict.winner(q) == Side::A {
                    found[q.0] = Some(GuaranteeResult {
                        agent,
                        state: q,
                        interval: linear.interval_from(threshold),
                        witness: Some(witness.clone()),
                    });
                    missing -= 1;
                }
            }
        }
        let results = found
            .into_iter()
            .map(|r| r.expect("the least outcome is always guaranteed"))
            .collect();
        GuaranteeTable { agent, results }
    }

    pub fn agent(&self) -> AgentId {
        self.agent
    }

    pub fn get(&self, state: StateId) -> &GuaranteeResult {
        &self.results[state.0]
    }
}

/// Best guarantee of `agent` at `state`, with a witness strategy.
pub fn best_guarantee(
    arena: &Arena,
    linear: &LinearPreference,
    agent: AgentId,
    state: StateId,
) -> GuaranteeResult {
    GuaranteeTable::new(arena, linear, agent).get(state).clone()
}
