//! Exhaustive enumeration of positional Nash equilibria, and the family of
//! one-agent games with cyclic preferences that have none.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::equilibrium::verify_nash;
use crate::game_model::{AgentId, Arena, ChoiceId, Game, OutcomeId, PositionalProfile, StateId};
use crate::par::{map_indexed, Execution};
use crate::preferences::PreferenceProfile;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{states} decision states exceed the bound of {max_states}")]
    TooManyStates { states: usize, max_states: usize },
    #[error("{choices}^{states} profiles exceed the budget of {max_profiles}")]
    BudgetExceeded {
        choices: usize,
        states: usize,
        max_profiles: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub max_states: usize,
    pub max_profiles: u64,
    pub execution: Execution,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_states: 8,
            max_profiles: 1 << 20,
            execution: Execution::default(),
        }
    }
}

/// Every positional profile of the arena, in declared order: the first
/// decision state varies slowest, choices in declared order.
pub struct ProfileSpace {
    states: Vec<StateId>,
    choices: usize,
    num_states: usize,
    size: u64,
}

impl ProfileSpace {
    pub fn new(arena: &Arena, options: &OracleOptions) -> Result<Self, OracleError> {
        let states: Vec<StateId> = arena.decision_states().collect();
        let choices = arena.num_choices();
        if states.len() > options.max_states {
            return Err(OracleError::TooManyStates {
                states: states.len(),
                max_states: options.max_states,
            });
        }
        let exceeded = OracleError::BudgetExceeded {
            choices,
            states: states.len(),
            max_profiles: options.max_profiles,
        };
        let size = u32::try_from(states.len())
            .ok()
            .and_then(|n| (choices as u64).checked_pow(n))
            .ok_or(exceeded.clone())?;
        if size > options.max_profiles {
            return Err(exceeded);
        }
        Ok(ProfileSpace {
            states,
            choices,
            num_states: arena.num_states(),
            size,
        })
    }

    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn get(&self, mut index: u64) -> PositionalProfile {
        let mut profile = PositionalProfile::empty(self.num_states);
        for &q in self.states.iter().rev() {
            profile.set(q, ChoiceId((index % self.choices as u64) as usize));
            index /= self.choices as u64;
        }
        profile
    }
}

/// All positional profiles passing [`verify_nash`] under `prefs`.
pub fn brute_force_nash(arena: &Arena, prefs: &PreferenceProfile) -> Result<Vec<PositionalProfile>, OracleError> {
    brute_force_nash_with(arena, prefs, &OracleOptions::default())
}

pub fn brute_force_nash_with(
    arena: &Arena,
    prefs: &PreferenceProfile,
    options: &OracleOptions,
) -> Result<Vec<PositionalProfile>, OracleError> {
    let space = ProfileSpace::new(arena, options)?;
    let found = map_indexed(options.execution, space.len() as usize, |i| {
        let profile = space.get(i as u64);
        verify_nash(arena, prefs, &profile).is_ok().then_some(profile)
    });
    Ok(found.into_iter().flatten().collect())
}

/// One agent picks among `k` absorbing outcomes `o0 < o1 < ... < o(k-1) < o0`.
pub fn counterexample_game(k: usize) -> Game {
    assert!(k >= 2, "the cycle needs at least two outcomes");
    let choices = (0..k).map(|i| format!("c{i}")).collect();
    let mut arena = Arena::new(choices, vec!["a".into()], OutcomeId(0));
    let s = arena.add_state("s", AgentId(0));
    for i in 0..k {
        let end = arena.add_absorbing(format!("O{i}"), OutcomeId(i));
        arena.set_transition(s, ChoiceId(i), end);
    }
    arena.initial = s;
    let cycle: BTreeSet<(OutcomeId, OutcomeId)> =
        (0..k).map(|i| (OutcomeId(i), OutcomeId((i + 1) % k))).collect();
    let prefs = PreferenceProfile::new((0..k).map(|i| format!("o{i}")).collect(), vec![cycle]);
    Game { arena, prefs }
}
