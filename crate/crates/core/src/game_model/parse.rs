//! Reader and writer for the game description format:
//!
//! ```text
//! choices: <c1> <c2> ...
//! agents: <a1> <a2> ...
//! outcomes: <o1> <o2> ...          # declared order is the tie-break order
//! default-outcome: <o>
//! prefer <agent>: <o> < <o'>
//! state <q> owner=<agent>
//! on <q> <choice> -> <q'>
//! absorbing <q> outcome=<o>
//! initial: <q>
//! ```
//!
//! Unknown directives and duplicate definitions are rejected. Missing
//! transitions are left for [`validate_arena`](super::validate_arena).

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use super::{AgentId, Arena, ChoiceId, Game, OutcomeId, PositionalProfile, StateId};
use crate::preferences::PreferenceProfile;
use crate::text::{self, keyed, Line, ParseError};

enum StateDecl {
    Owned(String),
    Absorbing(String),
}

pub fn parse_game(input: &str) -> Result<Game, ParseError> {
    let mut choices: Option<Vec<String>> = None;
    let mut agents: Option<Vec<String>> = None;
    let mut outcomes: Option<Vec<String>> = None;
    let mut default_outcome: Option<(usize, String)> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut prefers: Vec<(Line<'_>, String, String, String)> = Vec::new();
    let mut states: Vec<(Line<'_>, String, StateDecl)> = Vec::new();
    let mut edges: Vec<(Line<'_>, String, String, String)> = Vec::new();

    fn once<T>(slot: &mut Option<T>, line: &Line<'_>, value: T) -> Result<(), ParseError> {
        if slot.is_some() {
            return Err(line.error(format!("duplicate `{}` directive", line.head())));
        }
        *slot = Some(value);
        Ok(())
    }

    for line in text::lines(input) {
        match line.head() {
            "choices:" => {
                let v = text::distinct(&line, line.rest(), "choice")?;
                once(&mut choices, &line, v)?
            }
            "agents:" => {
                let v = text::distinct(&line, line.rest(), "agent")?;
                once(&mut agents, &line, v)?
            }
            "outcomes:" => {
                let v = text::distinct(&line, line.rest(), "outcome")?;
                once(&mut outcomes, &line, v)?
            }
            "default-outcome:" => {
                let v = (line.number, line.single()?.to_string());
                once(&mut default_outcome, &line, v)?
            }
            "initial:" => {
                let v = (line.number, line.single()?.to_string());
                once(&mut initial, &line, v)?
            }
            "prefer" => match line.rest() {
                [agent, lo, "<", hi] if agent.ends_with(':') && agent.len() > 1 => {
                    let agent = agent.trim_end_matches(':').to_string();
                    prefers.push((line.clone(), agent, lo.to_string(), hi.to_string()));
                }
                _ => return Err(line.error("expected `prefer <agent>: <o> < <o'>`")),
            },
            "state" => match line.rest() {
                [name, owner] => {
                    let owner = keyed(&line, owner, "owner")?.to_string();
                    states.push((line.clone(), name.to_string(), StateDecl::Owned(owner)));
                }
                _ => return Err(line.error("expected `state <q> owner=<agent>`")),
            },
            "absorbing" => match line.rest() {
                [name, outcome] => {
                    let outcome = keyed(&line, outcome, "outcome")?.to_string();
                    states.push((line.clone(), name.to_string(), StateDecl::Absorbing(outcome)));
                }
                _ => return Err(line.error("expected `absorbing <q> outcome=<o>`")),
            },
            "on" => match line.rest() {
                [from, choice, "->", to] => {
                    edges.push((line.clone(), from.to_string(), choice.to_string(), to.to_string()))
                }
                _ => return Err(line.error("expected `on <q> <choice> -> <q'>`")),
            },
            other => return Err(line.error(format!("unknown directive `{other}`"))),
        }
    }

    let missing = |what: &str| ParseError::new(0, format!("missing `{what}` directive"));
    let choices = choices.ok_or_else(|| missing("choices:"))?;
    let agents = agents.ok_or_else(|| missing("agents:"))?;
    let outcomes = outcomes.ok_or_else(|| missing("outcomes:"))?;
    let (default_line, default_name) = default_outcome.ok_or_else(|| missing("default-outcome:"))?;
    let (initial_line, initial_name) = initial.ok_or_else(|| missing("initial:"))?;

    let outcome_id = |line: usize, name: &str| {
        outcomes
            .iter()
            .position(|o| o == name)
            .map(OutcomeId)
            .ok_or_else(|| ParseError::new(line, format!("unknown outcome `{name}`")))
    };
    let agent_id = |line: usize, name: &str| {
        agents
            .iter()
            .position(|a| a == name)
            .map(AgentId)
            .ok_or_else(|| ParseError::new(line, format!("unknown agent `{name}`")))
    };

    let default_outcome = outcome_id(default_line, &default_name)?;
    let mut arena = Arena::new(choices, agents.clone(), default_outcome);
    let mut by_name: HashMap<String, StateId> = HashMap::new();
    for (line, name, decl) in &states {
        if by_name.contains_key(name) {
            return Err(line.error(format!("duplicate state `{name}`")));
        }
        let id = match decl {
            StateDecl::Owned(owner) => arena.add_state(name.clone(), agent_id(line.number, owner)?),
            StateDecl::Absorbing(outcome) => {
                arena.add_absorbing(name.clone(), outcome_id(line.number, outcome)?)
            }
        };
        by_name.insert(name.clone(), id);
    }
    let state_id = |line: usize, name: &str| {
        by_name
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::new(line, format!("undeclared state `{name}`")))
    };

    for (line, from, choice, to) in &edges {
        let from_id = state_id(line.number, from)?;
        let to_id = state_id(line.number, to)?;
        let c = arena
            .choice_by_name(choice)
            .ok_or_else(|| line.error(format!("unknown choice `{choice}`")))?;
        if arena.transition[from_id.0][c.0].is_some() {
            return Err(line.error(format!("duplicate transition `{from} {choice}`")));
        }
        arena.set_transition(from_id, c, to_id);
    }
    arena.initial = state_id(initial_line, &initial_name)?;

    let mut relations = vec![BTreeSet::new(); agents.len()];
    for (line, agent, lo, hi) in &prefers {
        let a = agent_id(line.number, agent)?;
        let pair = (outcome_id(line.number, lo)?, outcome_id(line.number, hi)?);
        if !relations[a.0].insert(pair) {
            return Err(line.error(format!("duplicate preference `{lo} < {hi}` for `{agent}`")));
        }
    }
    let prefs = PreferenceProfile::new(outcomes, relations);
    Ok(Game { arena, prefs })
}

/// Renders a game in the description format, in declared orders.
pub fn write_game(game: &Game) -> String {
    let arena = &game.arena;
    let prefs = &game.prefs;
    let mut out = String::new();
    let _ = writeln!(out, "choices: {}", arena.choices.join(" "));
    let _ = writeln!(out, "agents: {}", arena.agents.join(" "));
    let _ = writeln!(out, "outcomes: {}", prefs.outcomes.join(" "));
    let _ = writeln!(out, "default-outcome: {}", game.outcome_name(arena.default_outcome));
    for a in arena.agent_ids() {
        for &(lo, hi) in prefs.relation(a) {
            let _ = writeln!(
                out,
                "prefer {}: {} < {}",
                arena.agent_name(a),
                game.outcome_name(lo),
                game.outcome_name(hi)
            );
        }
    }
    for q in arena.state_ids() {
        match (arena.absorbing_outcome(q), arena.owner(q)) {
            (Some(o), _) => {
                let _ = writeln!(out, "absorbing {} outcome={}", arena.state_name(q), game.outcome_name(o));
            }
            (None, Some(a)) => {
                let _ = writeln!(out, "state {} owner={}", arena.state_name(q), arena.agent_name(a));
            }
            (None, None) => {}
        }
    }
    for q in arena.state_ids() {
        for c in arena.choice_ids() {
            if let Some(t) = arena.transition[q.0][c.0] {
                let _ = writeln!(
                    out,
                    "on {} {} -> {}",
                    arena.state_name(q),
                    arena.choice_name(c),
                    arena.state_name(t)
                );
            }
        }
    }
    let _ = writeln!(out, "initial: {}", arena.state_name(arena.initial));
    out
}

/// Formats `(state choice)` pairs in state order.
pub fn format_pairs(arena: &Arena, pairs: impl IntoIterator<Item = (StateId, ChoiceId)>) -> String {
    pairs
        .into_iter()
        .map(|(q, c)| format!("{} {}", arena.state_name(q), arena.choice_name(c)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Formats a profile as `(state choice)` pairs in state order.
pub fn format_profile(arena: &Arena, profile: &PositionalProfile) -> String {
    format_pairs(arena, profile.entries())
}

/// Resolves `(state, choice)` name pairs against an arena.
pub fn resolve_pairs(
    arena: &Arena,
    line: &Line<'_>,
    tokens: &[&str],
) -> Result<Vec<(StateId, ChoiceId)>, ParseError> {
    text::pairs(line, tokens)?
        .into_iter()
        .map(|(q, c)| {
            let state = arena
                .state_by_name(q)
                .ok_or_else(|| line.error(format!("unknown state `{q}`")))?;
            let choice = arena
                .choice_by_name(c)
                .ok_or_else(|| line.error(format!("unknown choice `{c}`")))?;
            Ok((state, choice))
        })
        .collect()
}

/// Reads a seed profile: lines of `<state> <choice>` pairs. States that are
/// not mentioned play the first declared choice.
pub fn parse_seed_profile(arena: &Arena, input: &str) -> Result<PositionalProfile, ParseError> {
    let mut profile = PositionalProfile::empty(arena.num_states());
    for line in text::lines(input) {
        for (q, c) in resolve_pairs(arena, &line, &line.tokens)? {
            if arena.is_absorbing(q) {
                return Err(line.error(format!("state `{}` is absorbing", arena.state_name(q))));
            }
            if profile.get(q).is_some() {
                return Err(line.error(format!("duplicate entry for state `{}`", arena.state_name(q))));
            }
            profile.set(q, c);
        }
    }
    Ok(profile.overlay(&PositionalProfile::constant(arena, ChoiceId(0))))
}
