//! Deepening, threat construction, equilibrium assembly and Nash
//! verification.

pub mod certificate;
mod deepen;
mod journal;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::game_model::{
    constrained_outcomes, machine_play, AgentId, Arena, ChoiceId, Game, Lasso, OutcomeId,
    PositionalProfile, StateId, StrategyMachine,
};
use crate::guarantees::threshold_game;
use crate::preferences::{linear_extensions, LinearPreference, PreferenceError, PreferenceProfile};
use crate::winlose::{solve, Side};

pub use deepen::{deepen, refinement_budget, Deepening, Refinement};
pub use journal::{JournalEntry, JournalMemory, JournaledProfile};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EquilibriumError {
    #[error("preference of agent `{agent}` is not well-founded: cycle {}", cycle.join(" < "))]
    PreferenceNotWellFounded { agent: String, cycle: Vec<String> },
    #[error("deepening exceeded its refinement budget of {budget}")]
    RefinementBudgetExceeded { budget: usize },
    #[error("threat against `{agent}` fails at deviation state `{state}`")]
    ThreatFailure { agent: String, state: String },
}

impl EquilibriumError {
    pub(crate) fn from_preference(game: &Game, err: PreferenceError) -> Self {
        match err {
            PreferenceError::NotWellFounded { agent, cycle } => {
                let mut cycle: Vec<String> =
                    cycle.iter().map(|&o| game.outcome_name(o).to_string()).collect();
                if let Some(first) = cycle.first().cloned() {
                    cycle.push(first);
                }
                EquilibriumError::PreferenceNotWellFounded {
                    agent: game.arena.agent_name(agent).to_string(),
                    cycle,
                }
            }
            PreferenceError::UnknownAgent(i) => {
                panic!("preference profile has no relation for agent #{i}")
            }
        }
    }
}

/// States one move off the play at positions owned by `agent`.
pub fn deviation_states(arena: &Arena, play: &Lasso, agent: AgentId) -> Vec<StateId> {
    let mut out = Vec::new();
    for n in 0..play.period_end() {
        let Some((q, taken)) = play.move_at(n) else { break };
        if !arena.is_owned_by(q, agent) {
            continue;
        }
        for c in arena.choice_ids().filter(|&c| c != taken) {
            let next = arena.successor(q, c);
            if !out.contains(&next) {
                out.push(next);
            }
        }
    }
    out
}

/// Coalition strategy keeping `agent` from any outcome it strictly prefers
/// to `threshold`; fails if the agent could escape from one of `required`.
pub fn threat(
    arena: &Arena,
    linears: &[LinearPreference],
    agent: AgentId,
    threshold: OutcomeId,
    required: &[StateId],
) -> Result<PositionalProfile, EquilibriumError> {
    let game = threshold_game(arena, &linears[agent.0], agent, threshold, true);
    let verdict = solve(&game).expect("threshold games are well-formed");
    if let Some(&q) = required.iter().find(|&&q| verdict.winner(q) == Side::A) {
        return Err(EquilibriumError::ThreatFailure {
            agent: arena.agent_name(agent).to_string(),
            state: arena.state_name(q).to_string(),
        });
    }
    Ok(verdict.strategy_b.restricted(|q| !arena.is_owned_by(q, agent)))
}

/// A finite-memory profile following a lasso play and punishing the first
/// agent to leave it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumMachine {
    pub play: Lasso,
    /// Coalition strategy used against each deviating agent.
    pub threats: BTreeMap<AgentId, PositionalProfile>,
    /// Choices of a punished agent at its own states.
    pub fillers: PositionalProfile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Follow(usize),
    Punish(AgentId),
}

impl StrategyMachine for EquilibriumMachine {
    type Memory = Mode;

    fn initial_memory(&self) -> Mode {
        Mode::Follow(0)
    }

    fn choose(&self, arena: &Arena, mode: Mode, state: StateId) -> ChoiceId {
        let planned = match mode {
            Mode::Follow(i) => self.play.move_at(i).filter(|&(q, _)| q == state).map(|(_, c)| c),
            Mode::Punish(a) if !arena.is_owned_by(state, a) => {
                self.threats.get(&a).and_then(|t| t.get(state))
            }
            Mode::Punish(_) => None,
        };
        planned.or_else(|| self.fillers.get(state)).unwrap_or(ChoiceId(0))
    }

    fn advance(&self, arena: &Arena, mode: Mode, state: StateId, choice: ChoiceId) -> Mode {
        match mode {
            Mode::Follow(i) if self.play.move_at(i) == Some((state, choice)) => {
                Mode::Follow(self.play.next_position(i))
            }
            Mode::Follow(_) => Mode::Punish(arena.owner(state).expect("decision state has an owner")),
            punish => punish,
        }
    }
}

/// Attaches threats to the deepened play.
pub fn assemble(
    arena: &Arena,
    linears: &[LinearPreference],
    sigma: &JournaledProfile,
    play: &Lasso,
) -> Result<EquilibriumMachine, EquilibriumError> {
    let mut threats = BTreeMap::new();
    for agent in arena.agent_ids() {
        let owns_position =
            (0..play.period_end()).any(|n| play.move_at(n).is_some_and(|(q, _)| arena.is_owned_by(q, agent)));
        if owns_position {
            let required = deviation_states(arena, play, agent);
            threats.insert(agent, threat(arena, linears, agent, play.outcome, &required)?);
        }
    }
    Ok(EquilibriumMachine {
        play: play.clone(),
        threats,
        fillers: sigma.settled(arena),
    })
}

/// An agent able to reach an outcome it strictly prefers to the play's.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub agent: AgentId,
    pub outcome: OutcomeId,
}

impl fmt::Display for Deviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "agent #{} can reach outcome #{}", self.agent.0, self.outcome.0)
    }
}

/// Checks every agent's best response against `machine` under the given
/// preferences. The witness is the first agent, then the first outcome in
/// declared order.
pub fn verify_nash<M: StrategyMachine>(
    arena: &Arena,
    prefs: &PreferenceProfile,
    machine: &M,
) -> Result<(), Deviation> {
    let value = machine_play(arena, machine).outcome;
    for agent in arena.agent_ids() {
        let reachable = constrained_outcomes(
            arena,
            machine,
            |q| !arena.is_owned_by(q, agent),
            arena.initial,
            machine.initial_memory(),
        );
        if let Some(&outcome) = reachable.outcomes.iter().find(|&&o| prefs.prefers(agent, value, o)) {
            return Err(Deviation { agent, outcome });
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub deepening: Deepening,
    pub machine: EquilibriumMachine,
}

/// Full pipeline: linear extensions, deepening from `seed` (first choice
/// everywhere by default), then assembly.
pub fn solve_game(game: &Game, seed: Option<PositionalProfile>) -> Result<Solution, EquilibriumError> {
    let arena = &game.arena;
    let linears =
        linear_extensions(&game.prefs).map_err(|e| EquilibriumError::from_preference(game, e))?;
    let seed = seed.unwrap_or_else(|| PositionalProfile::constant(arena, ChoiceId(0)));
    let deepening = deepen(arena, &linears, seed)?;
    let machine = assemble(arena, &linears, &deepening.sigma, &deepening.play)?;
    Ok(Solution { deepening, machine })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g_one, g_threat};
    use crate::game_model::parse::parse_game;

    fn state(game: &Game, name: &str) -> StateId {
        game.arena.state_by_name(name).unwrap()
    }

    fn choice(game: &Game, name: &str) -> ChoiceId {
        game.arena.choice_by_name(name).unwrap()
    }

    #[test]
    fn g_threat_threat_against_a() {
        let game = g_threat();
        let linears = linear_extensions(&game.prefs).unwrap();
        let a = game.arena.agent_by_name("a").unwrap();
        let o1 = game.prefs.outcome_by_name("o1").unwrap();
        let t = state(&game, "t");
        let profile = threat(&game.arena, &linears, a, o1, &[t]).unwrap();
        assert_eq!(profile.entries().collect::<Vec<_>>(), vec![(t, choice(&game, "L"))]);
    }

    #[test]
    fn g_one_threat_is_empty() {
        let game = g_one();
        let linears = linear_extensions(&game.prefs).unwrap();
        let w = game.prefs.outcome_by_name("w").unwrap();
        let profile = threat(&game.arena, &linears, AgentId(0), w, &[]).unwrap();
        assert!(profile.is_empty());
    }

    #[test]
    fn maximum_threshold_is_vacuous() {
        let game = g_threat();
        let linears = linear_extensions(&game.prefs).unwrap();
        let a = game.arena.agent_by_name("a").unwrap();
        let top = linears[a.0].greatest();
        let all: Vec<StateId> = game.arena.state_ids().collect();
        assert!(threat(&game.arena, &linears, a, top, &all).is_ok());
    }

    #[test]
    fn threat_failure_is_reported() {
        let game = g_threat();
        let linears = linear_extensions(&game.prefs).unwrap();
        let a = game.arena.agent_by_name("a").unwrap();
        let o0 = game.prefs.outcome_by_name("o0").unwrap();
        // Above o0, a wins at r by playing L.
        let err = threat(&game.arena, &linears, a, o0, &[state(&game, "r")]).unwrap_err();
        assert!(matches!(err, EquilibriumError::ThreatFailure { .. }));
    }

    #[test]
    fn g_threat_assembles_and_verifies() {
        let game = g_threat();
        let solution = solve_game(&game, Some(PositionalProfile::constant(&game.arena, choice(&game, "R")))).unwrap();
        let machine = &solution.machine;
        assert_eq!(game.outcome_name(machine.play.outcome), "o1");
        assert_eq!(machine.play.prefix, vec![(state(&game, "r"), choice(&game, "L"))]);
        let a = game.arena.agent_by_name("a").unwrap();
        assert_eq!(machine.threats.keys().copied().collect::<Vec<_>>(), vec![a]);
        assert_eq!(machine.threats[&a].get(state(&game, "t")), Some(choice(&game, "L")));
        assert_eq!(machine_play(&game.arena, machine), solution.deepening.play);
        assert_eq!(verify_nash(&game.arena, &game.prefs, machine), Ok(()));
    }

    #[test]
    fn g_one_assembles_without_threats() {
        let game = g_one();
        let solution = solve_game(&game, None).unwrap();
        assert!(solution.machine.threats.values().all(|t| t.is_empty()));
        assert_eq!(solution.machine.play.choices(1, ChoiceId(0)), [ChoiceId(1)]);
        assert_eq!(verify_nash(&game.arena, &game.prefs, &solution.machine), Ok(()));
    }

    #[test]
    fn positional_profile_deviation_witness() {
        let game = g_threat();
        let profile = PositionalProfile::constant(&game.arena, choice(&game, "R"));
        let err = verify_nash(&game.arena, &game.prefs, &profile).unwrap_err();
        assert_eq!(game.arena.agent_name(err.agent), "b");
        assert_eq!(game.outcome_name(err.outcome), "o0");
    }

    #[test]
    fn single_outcome_arena_is_stable() {
        let game = parse_game(
            "choices: x y\nagents: a\noutcomes: o\ndefault-outcome: o\nstate s owner=a\n\
             on s x -> s\non s y -> E\nabsorbing E outcome=o\ninitial: s\n",
        )
        .unwrap();
        for c in [ChoiceId(0), ChoiceId(1)] {
            let profile = PositionalProfile::constant(&game.arena, c);
            assert_eq!(verify_nash(&game.arena, &game.prefs, &profile), Ok(()));
        }
        let solution = solve_game(&game, None).unwrap();
        assert_eq!(verify_nash(&game.arena, &game.prefs, &solution.machine), Ok(()));
    }

    #[test]
    fn cyclic_preference_is_rejected() {
        let game = parse_game(
            "choices: x y\nagents: a\noutcomes: o0 o1\ndefault-outcome: o0\nprefer a: o0 < o1\n\
             prefer a: o1 < o0\nstate s owner=a\non s x -> A\non s y -> B\n\
             absorbing A outcome=o0\nabsorbing B outcome=o1\ninitial: s\n",
        )
        .unwrap();
        let err = solve_game(&game, None).unwrap_err();
        assert_eq!(
            err,
            EquilibriumError::PreferenceNotWellFounded {
                agent: "a".into(),
                cycle: vec!["o0".into(), "o1".into(), "o0".into()],
            }
        );
    }
}
