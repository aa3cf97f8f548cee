//! Dummy-move insertion: turns a win-lose game with arbitrary move order
//! into one where the two sides strictly alternate.
//!
//! Whenever the same side would move twice in a row, the opponent is handed
//! a dummy node where it must play the designated choice `c0`. Refusing
//! leads to a fatal absorbing state that makes the refusing side lose.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::game_model::{AgentId, Arena, ChoiceId, OutcomeId, PositionalProfile, StateId};
use crate::winlose::{verify_winning, Goal, Objective, Side, WinLoseError, WinLoseGame};

/// Reserved name of the fatal state reached when side B refuses a dummy move.
pub const FATAL_WIN: &str = "__fatal_win";
/// Reserved name of the fatal state reached when side A refuses a dummy move.
pub const FATAL_LOSE: &str = "__fatal_lose";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlternationError {
    #[error(transparent)]
    WinLose(#[from] WinLoseError),
    #[error("pulled-back strategy does not win the original game")]
    NotWinning,
}

/// The insertion map on finite choice sequences. `in_d` decides whether a
/// history is a node of side A; it must hold on the empty history.
pub fn iota_prefix<C: Clone>(in_d: impl Fn(&[C]) -> bool, gamma: &[C], c0: &C) -> Vec<C> {
    let mut out = Vec::with_capacity(2 * gamma.len());
    for k in 0..gamma.len() {
        out.push(gamma[k].clone());
        if in_d(&gamma[..k]) == in_d(&gamma[..=k]) {
            out.push(c0.clone());
        }
    }
    out
}

/// Side moving at each position of `iota_prefix(in_d, gamma, c0)`.
pub fn iota_owners<C>(in_d: impl Fn(&[C]) -> bool, gamma: &[C]) -> Vec<Side> {
    let side = |h: &[C]| if in_d(h) { Side::A } else { Side::B };
    let mut out = Vec::with_capacity(2 * gamma.len());
    for k in 0..gamma.len() {
        let mover = side(&gamma[..k]);
        out.push(mover);
        let next = side(&gamma[..=k]);
        if mover == next {
            out.push(next.opponent());
        }
    }
    out
}

/// A win-lose game together with its strictly alternating stretch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alternated {
    pub original: WinLoseGame,
    pub c0: ChoiceId,
    /// Sides were relabelled (and the objective complemented) because the
    /// original initial state belongs to side B.
    pub swapped: bool,
    pub stretched: WinLoseGame,
    /// Real-phase stretched state of each original state.
    pub real: Vec<StateId>,
    /// Dummy state preceding each original state, when one is needed.
    pub dummy: Vec<Option<StateId>>,
    /// Reached when B refuses a dummy move; A wins.
    pub fatal_a: BTreeSet<StateId>,
    /// Reached when A refuses a dummy move; A loses.
    pub fatal_b: BTreeSet<StateId>,
}

impl Alternated {
    /// Stretched-game side corresponding to an original side.
    pub fn stretched_side(&self, original: Side) -> Side {
        if self.swapped {
            original.opponent()
        } else {
            original
        }
    }

    fn normalized_side(&self, q: StateId) -> Option<Side> {
        self.original.side(q).map(|s| self.stretched_side(s))
    }
}

fn fresh_name(taken: &BTreeSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Inserts dummy nodes so that sides alternate along every play, adds the
/// fatal states, and rewrites the objective so that B refusing a dummy
/// move counts as a win for A and A refusing as a loss.
pub fn stretch(game: &WinLoseGame, c0: ChoiceId) -> Result<Alternated, AlternationError> {
    game.validate()?;
    let arena = &game.arena;
    if c0.0 >= arena.num_choices() {
        return Err(WinLoseError::UnknownChoice(c0.0).into());
    }
    let swapped = game.side(arena.initial) == Some(Side::B);
    let side = |q: StateId| game.side(q).map(|s| if swapped { s.opponent() } else { s });
    let objective = if swapped {
        match game.goal(Side::B) {
            Goal::Reach(t) => Objective::Reach(t),
            Goal::Safe(bad) => Objective::Safe(bad),
        }
    } else {
        game.objective.clone()
    };

    let needs_dummy: Vec<bool> = {
        let mut needs = vec![false; arena.num_states()];
        for q in arena.decision_states() {
            for c in arena.choice_ids() {
                let next = arena.successor(q, c);
                if !arena.is_absorbing(next) && side(next) == side(q) {
                    needs[next.0] = true;
                }
            }
        }
        needs
    };

    let mut taken: BTreeSet<String> = arena.states.iter().cloned().collect();
    let mut out = Arena::new(
        arena.choices.clone(),
        vec!["A".into(), "B".into()],
        OutcomeId(0),
    );
    let agent_of = |s: Side| match s {
        Side::A => AgentId(0),
        Side::B => AgentId(1),
    };
    let mut side_of = Vec::new();
    let mut real = Vec::new();
    for q in arena.state_ids() {
        let id = match side(q) {
            Some(s) => out.add_state(arena.state_name(q), agent_of(s)),
            None => out.add_absorbing(arena.state_name(q), OutcomeId(0)),
        };
        side_of.push(side(q));
        real.push(id);
    }
    let mut dummy = vec![None; arena.num_states()];
    for q in arena.state_ids().filter(|q| needs_dummy[q.0]) {
        let owner = side(q).expect("dummy precedes a decision state").opponent();
        let name = fresh_name(&taken, format!("{}@dummy", arena.state_name(q)));
        taken.insert(name.clone());
        dummy[q.0] = Some(out.add_state(name, agent_of(owner)));
        side_of.push(Some(owner));
    }

    let refusal_possible = arena.num_choices() > 1;
    let dummy_owners: BTreeSet<Side> = arena
        .state_ids()
        .filter(|q| needs_dummy[q.0])
        .map(|q| side(q).expect("decision state").opponent())
        .collect();
    let mut fatal_for = |owner: Side, out: &mut Arena, side_of: &mut Vec<Option<Side>>| {
        if !refusal_possible || !dummy_owners.contains(&owner) {
            return None;
        }
        let base = if owner == Side::B { FATAL_WIN } else { FATAL_LOSE };
        let name = fresh_name(&taken, base.to_string());
        taken.insert(name.clone());
        side_of.push(None);
        Some(out.add_absorbing(name, OutcomeId(0)))
    };
    let fatal_win = fatal_for(Side::B, &mut out, &mut side_of);
    let fatal_lose = fatal_for(Side::A, &mut out, &mut side_of);

    for q in arena.decision_states() {
        for c in arena.choice_ids() {
            let next = arena.successor(q, c);
            let target = match dummy[next.0] {
                Some(d) if !arena.is_absorbing(next) && side(next) == side(q) => d,
                _ => real[next.0],
            };
            out.set_transition(real[q.0], c, target);
        }
    }
    for q in arena.state_ids() {
        if let Some(d) = dummy[q.0] {
            let refusal = if side_of[d.0] == Some(Side::B) {
                fatal_win
            } else {
                fatal_lose
            };
            for c in arena.choice_ids() {
                let target = if c == c0 {
                    real[q.0]
                } else {
                    refusal.expect("fatal state exists when refusal is possible")
                };
                out.set_transition(d, c, target);
            }
        }
    }
    out.initial = real[arena.initial.0];

    let lift = |s: &BTreeSet<StateId>| -> BTreeSet<StateId> { s.iter().map(|q| real[q.0]).collect() };
    let stretched_objective = match &objective {
        Objective::Reach(t) => Objective::Reach(lift(t).into_iter().chain(fatal_win).collect()),
        Objective::Safe(bad) => Objective::Safe(lift(bad).into_iter().chain(fatal_lose).collect()),
        Objective::ReachOrNonAbsorbing(t) => {
            Objective::ReachOrNonAbsorbing(lift(t).into_iter().chain(fatal_win).collect())
        }
    };
    let stretched = WinLoseGame {
        arena: out,
        side_of,
        objective: stretched_objective,
    };
    Ok(Alternated {
        original: game.clone(),
        c0,
        swapped,
        stretched,
        real,
        dummy,
        fatal_a: fatal_win.into_iter().collect(),
        fatal_b: fatal_lose.into_iter().collect(),
    })
}

/// Translates a winning strategy of `side` (named as in the original game)
/// in the stretched game back to the original game by reading its choices
/// at the real-phase states.
pub fn pull_back(
    alternated: &Alternated,
    stretched_strategy: &PositionalProfile,
    side: Side,
) -> Result<PositionalProfile, AlternationError> {
    let original = &alternated.original;
    let arena = &original.arena;
    let stretched_side = alternated.stretched_side(side);
    let mut profile = PositionalProfile::empty(arena.num_states());
    for q in arena.decision_states() {
        if alternated.normalized_side(q) == Some(stretched_side) {
            let choice = stretched_strategy
                .get(alternated.real[q.0])
                .ok_or_else(|| WinLoseError::PartialStrategy(arena.state_name(q).to_string()))?;
            profile.set(q, choice);
        }
    }
    if !verify_winning(original, side, &profile, arena.initial)? {
        return Err(AlternationError::NotWinning);
    }
    Ok(profile)
}
