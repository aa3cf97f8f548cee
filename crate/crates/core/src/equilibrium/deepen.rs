use crate::game_model::{machine_play, memory_after, AgentId, Arena, Lasso, PositionalProfile, StateId};
use crate::guarantees::{guarantee_under, GuaranteeTable};
use crate::preferences::{LinearPreference, TerminalInterval};

use super::journal::{JournalEntry, JournaledProfile};
use super::EquilibriumError;

/// One strategy change made while deepening.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub position: usize,
    pub agent: AgentId,
    pub state: StateId,
    /// Guarantee before the change.
    pub before: TerminalInterval,
    /// Best guarantee installed by the change.
    pub after: TerminalInterval,
}

#[derive(Clone, Debug)]
pub struct Deepening {
    pub sigma: JournaledProfile,
    pub play: Lasso,
    pub trace: Vec<Refinement>,
    /// Play positions examined before stabilisation.
    pub positions_checked: usize,
}

impl Deepening {
    /// The profile in force when position `n` was examined.
    pub fn profile_at(&self, n: usize) -> JournaledProfile {
        self.sigma.truncated(n)
    }
}

/// Largest number of refinements the procedure can make.
pub fn refinement_budget(num_agents: usize, num_outcomes: usize) -> usize {
    num_agents * (num_outcomes + 1)
}

pub(crate) fn play_prefix(play: &Lasso, n: usize) -> Vec<(StateId, crate::game_model::ChoiceId)> {
    (0..n)
        .map(|i| play.move_at(i).expect("position before absorption"))
        .collect()
}

/// Walks the induced play position by position; whenever the owner's
/// guarantee at the current position is not its best guarantee, the owner
/// switches to a witness strategy below that position. Stops once the play
/// absorbs or a full pass over its cycle makes no change.
pub fn deepen(
    arena: &Arena,
    linears: &[LinearPreference],
    seed: PositionalProfile,
) -> Result<Deepening, EquilibriumError> {
    let num_outcomes = linears.first().map_or(0, |l| l.order().len());
    let budget = refinement_budget(arena.agents.len(), num_outcomes);
    let mut tables: Vec<Option<GuaranteeTable>> = vec![None; arena.agents.len()];
    let mut sigma = JournaledProfile::new(seed);
    let mut play = machine_play(arena, &sigma);
    let mut trace = Vec::new();
    let mut n = 0;
    while let Some((state, _)) = play.move_at(n) {
        if play.absorbed_at().is_none() && n >= play.period_end() {
            break;
        }
        let agent = arena.owner(state).expect("decision state has an owner");
        let linear = &linears[agent.0];
        let history = play_prefix(&play, n);
        let memory = memory_after(arena, &sigma, &history);
        let current = guarantee_under(arena, linear, agent, state, &sigma, memory);
        let best = tables[agent.0]
            .get_or_insert_with(|| GuaranteeTable::new(arena, linear, agent))
            .get(state);
        if current != best.interval {
            if trace.len() == budget {
                return Err(EquilibriumError::RefinementBudgetExceeded { budget });
            }
            trace.push(Refinement {
                position: n,
                agent,
                state,
                before: current,
                after: best.interval.clone(),
            });
            let replacement = best.witness.clone().expect("best guarantees carry a witness");
            sigma.push(
                JournalEntry {
                    position: n,
                    agent,
                    replacement,
                },
                history,
            );
            play = machine_play(arena, &sigma);
        }
        n += 1;
    }
    Ok(Deepening {
        sigma,
        play,
        trace,
        positions_checked: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g_one, g_threat};
    use crate::game_model::{ChoiceId, Game};
    use crate::preferences::linear_extensions;

    fn run(game: &Game, seed: ChoiceId) -> Deepening {
        let linears = linear_extensions(&game.prefs).unwrap();
        deepen(&game.arena, &linears, PositionalProfile::constant(&game.arena, seed)).unwrap()
    }

    #[test]
    fn g_one_refines_the_looping_seed() {
        let game = g_one();
        let d = run(&game, ChoiceId(0));
        assert_eq!(d.trace.len(), 1);
        assert_eq!(d.trace[0].position, 0);
        assert_eq!(d.trace[0].before.members().len(), 2);
        assert_eq!(game.outcome_name(d.trace[0].after.min().unwrap()), "w");
        assert_eq!(d.play.choices(1, ChoiceId(0)), [ChoiceId(1)]);
        assert_eq!(game.outcome_name(d.play.outcome), "w");
    }

    #[test]
    fn g_one_optimal_seed_is_kept() {
        let game = g_one();
        let d = run(&game, ChoiceId(1));
        assert!(d.trace.is_empty());
        assert_eq!(game.outcome_name(d.play.outcome), "w");
    }

    #[test]
    fn g_threat_one_refinement_by_a() {
        let game = g_threat();
        let right = game.arena.choice_by_name("R").unwrap();
        let d = run(&game, right);
        assert_eq!(d.trace.len(), 1);
        let step = &d.trace[0];
        assert_eq!(step.position, 0);
        assert_eq!(game.arena.agent_name(step.agent), "a");
        assert_eq!(game.outcome_name(step.before.min().unwrap()), "o0");
        assert_eq!(game.outcome_name(step.after.min().unwrap()), "o1");
        assert_eq!(d.play.prefix, vec![(game.arena.initial, game.arena.choice_by_name("L").unwrap())]);
        assert_eq!(game.outcome_name(d.play.outcome), "o1");
    }

    #[test]
    fn profile_snapshots() {
        let game = g_threat();
        let d = run(&game, game.arena.choice_by_name("R").unwrap());
        assert!(d.profile_at(0).journal().is_empty());
        assert_eq!(d.profile_at(1).journal().len(), 1);
    }
}
