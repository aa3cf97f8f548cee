//! Win-lose game files: the game format with `side <q> A|B` in place of
//! owners, bare `absorbing <q>` states, and one objective line
//! `objective: reach|safe|reach-or-nonabsorbing <q>...`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use super::{Objective, Side, WinLoseGame};
use crate::game_model::{AgentId, Arena, OutcomeId, StateId};
use crate::text::{self, Line, ParseError};

pub fn parse_winlose(input: &str) -> Result<WinLoseGame, ParseError> {
    let mut choices: Option<Vec<String>> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut objective: Option<(Line<'_>, String, Vec<String>)> = None;
    let mut states: Vec<(Line<'_>, String, Option<Side>)> = Vec::new();
    let mut edges: Vec<(Line<'_>, String, String, String)> = Vec::new();

    for line in text::lines(input) {
        match line.head() {
            "choices:" => {
                if choices.is_some() {
                    return Err(line.error("duplicate `choices:` directive"));
                }
                choices = Some(text::distinct(&line, line.rest(), "choice")?);
            }
            "initial:" => {
                if initial.is_some() {
                    return Err(line.error("duplicate `initial:` directive"));
                }
                initial = Some((line.number, line.single()?.to_string()));
            }
            "side" => match line.rest() {
                [name, "A"] => states.push((line.clone(), name.to_string(), Some(Side::A))),
                [name, "B"] => states.push((line.clone(), name.to_string(), Some(Side::B))),
                _ => return Err(line.error("expected `side <q> A|B`")),
            },
            "absorbing" => match line.rest() {
                [name] => states.push((line.clone(), name.to_string(), None)),
                _ => return Err(line.error("expected `absorbing <q>`")),
            },
            "on" => match line.rest() {
                [from, choice, "->", to] => {
                    edges.push((line.clone(), from.to_string(), choice.to_string(), to.to_string()))
                }
                _ => return Err(line.error("expected `on <q> <choice> -> <q'>`")),
            },
            "objective:" => {
                if objective.is_some() {
                    return Err(line.error("duplicate `objective:` directive"));
                }
                let Some((kind, targets)) = line.rest().split_first() else {
                    return Err(line.error("expected `objective: <kind> <q>...`"));
                };
                let targets = targets.iter().map(|s| s.to_string()).collect();
                objective = Some((line.clone(), kind.to_string(), targets));
            }
            other => return Err(line.error(format!("unknown directive `{other}`"))),
        }
    }

    let missing = |what: &str| ParseError::new(0, format!("missing `{what}` directive"));
    let choices = choices.ok_or_else(|| missing("choices:"))?;
    let (initial_line, initial_name) = initial.ok_or_else(|| missing("initial:"))?;
    let (objective_line, kind, targets) = objective.ok_or_else(|| missing("objective:"))?;

    let mut arena = Arena::new(choices, vec!["A".into(), "B".into()], OutcomeId(0));
    let mut side_of = Vec::new();
    let mut by_name: HashMap<String, StateId> = HashMap::new();
    for (line, name, side) in &states {
        if by_name.contains_key(name) {
            return Err(line.error(format!("duplicate state `{name}`")));
        }
        let id = match side {
            Some(Side::A) => arena.add_state(name.clone(), AgentId(0)),
            Some(Side::B) => arena.add_state(name.clone(), AgentId(1)),
            None => arena.add_absorbing(name.clone(), OutcomeId(0)),
        };
        side_of.push(*side);
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
        if arena.is_absorbing(from_id) {
            return Err(line.error(format!("absorbing state `{from}` cannot move")));
        }
        let c = arena
            .choice_by_name(choice)
            .ok_or_else(|| line.error(format!("unknown choice `{choice}`")))?;
        if arena.transition[from_id.0][c.0].is_some() {
            return Err(line.error(format!("duplicate transition `{from} {choice}`")));
        }
        arena.set_transition(from_id, c, to_id);
    }
    for q in arena.decision_states() {
        if let Some(c) = arena.choice_ids().find(|c| arena.transition[q.0][c.0].is_none()) {
            return Err(ParseError::new(
                0,
                format!(
                    "transition not total: state `{}` has no move on `{}`",
                    arena.state_name(q),
                    arena.choice_name(c)
                ),
            ));
        }
    }
    arena.initial = state_id(initial_line, &initial_name)?;

    let mut target = BTreeSet::new();
    for name in &targets {
        if !target.insert(state_id(objective_line.number, name)?) {
            return Err(objective_line.error(format!("duplicate objective state `{name}`")));
        }
    }
    let objective = match kind.as_str() {
        "reach" => Objective::Reach(target),
        "safe" => Objective::Safe(target),
        "reach-or-nonabsorbing" => Objective::ReachOrNonAbsorbing(target),
        other => return Err(objective_line.error(format!("unknown objective kind `{other}`"))),
    };
    let game = WinLoseGame {
        arena,
        side_of,
        objective,
    };
    game.validate()
        .map_err(|e| objective_line.error(e.to_string()))?;
    Ok(game)
}

/// Renders a win-lose game in the file format, in declared orders.
pub fn write_winlose(game: &WinLoseGame) -> String {
    let arena = &game.arena;
    let mut out = String::new();
    let _ = writeln!(out, "choices: {}", arena.choices.join(" "));
    for q in arena.state_ids() {
        match game.side(q) {
            Some(side) => {
                let _ = writeln!(out, "side {} {side}", arena.state_name(q));
            }
            None => {
                let _ = writeln!(out, "absorbing {}", arena.state_name(q));
            }
        }
    }
    for q in arena.decision_states() {
        for c in arena.choice_ids() {
            let _ = writeln!(
                out,
                "on {} {} -> {}",
                arena.state_name(q),
                arena.choice_name(c),
                arena.state_name(arena.successor(q, c))
            );
        }
    }
    let _ = writeln!(out, "initial: {}", arena.state_name(arena.initial));
    let (kind, states) = match &game.objective {
        Objective::Reach(s) => ("reach", s),
        Objective::Safe(s) => ("safe", s),
        Objective::ReachOrNonAbsorbing(s) => ("reach-or-nonabsorbing", s),
    };
    let mut line = format!("objective: {kind}");
    for &q in states {
        line.push(' ');
        line.push_str(arena.state_name(q));
    }
    let _ = writeln!(out, "{line}");
    out
}
