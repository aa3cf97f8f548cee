//! Text form of an [`EquilibriumMachine`]:
//!
//! ```text
//! play-prefix: r L absorb O1
//! play-cycle:
//! outcome: o1
//! threat a: t L
//! filler: r L t L
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::game_model::parse::{format_pairs, format_profile, resolve_pairs};
use crate::game_model::{Arena, ChoiceId, Game, Lasso, LassoEnd, PositionalProfile, StateId};
use crate::text::{self, Line, ParseError};

use super::EquilibriumMachine;

type Moves = Vec<(StateId, ChoiceId)>;

pub fn write_certificate(game: &Game, machine: &EquilibriumMachine) -> String {
    let arena = &game.arena;
    let play = &machine.play;
    let mut out = String::new();
    let mut prefix = format_pairs(arena, play.prefix.iter().copied());
    if let Some(q) = play.absorbed_at() {
        if !prefix.is_empty() {
            prefix.push(' ');
        }
        let _ = write!(prefix, "absorb {}", arena.state_name(q));
    }
    let cycle = match &play.end {
        LassoEnd::Cycle(cycle) => format_pairs(arena, cycle.iter().copied()),
        LassoEnd::Absorbed(_) => String::new(),
    };
    line(&mut out, "play-prefix:", &prefix);
    line(&mut out, "play-cycle:", &cycle);
    line(&mut out, "outcome:", game.outcome_name(play.outcome));
    for (&agent, threat) in &machine.threats {
        let head = format!("threat {}:", arena.agent_name(agent));
        line(&mut out, &head, &format_profile(arena, threat));
    }
    line(&mut out, "filler:", &format_profile(arena, &machine.fillers));
    out
}

fn line(out: &mut String, head: &str, body: &str) {
    if body.is_empty() {
        let _ = writeln!(out, "{head}");
    } else {
        let _ = writeln!(out, "{head} {body}");
    }
}

fn profile_from(
    arena: &Arena,
    line: &Line<'_>,
    tokens: &[&str],
    allowed: impl Fn(StateId) -> bool,
) -> Result<PositionalProfile, ParseError> {
    let mut profile = PositionalProfile::empty(arena.num_states());
    for (q, c) in resolve_pairs(arena, line, tokens)? {
        if arena.is_absorbing(q) || !allowed(q) {
            return Err(line.error(format!("unexpected entry for state `{}`", arena.state_name(q))));
        }
        if profile.get(q).is_some() {
            return Err(line.error(format!("duplicate entry for state `{}`", arena.state_name(q))));
        }
        profile.set(q, c);
    }
    Ok(profile)
}

/// Checks that `moves` follow the arena from `start`; returns the state reached.
fn walk(
    arena: &Arena,
    line: &Line<'_>,
    start: StateId,
    moves: &[(StateId, ChoiceId)],
) -> Result<StateId, ParseError> {
    let mut at = start;
    for &(q, c) in moves {
        if q != at {
            return Err(line.error(format!(
                "play visits `{}` where `{}` was expected",
                arena.state_name(q),
                arena.state_name(at)
            )));
        }
        if arena.is_absorbing(q) {
            return Err(line.error(format!("play moves at absorbing state `{}`", arena.state_name(q))));
        }
        at = arena.successor(q, c);
    }
    Ok(at)
}

pub fn parse_certificate(game: &Game, input: &str) -> Result<EquilibriumMachine, ParseError> {
    let arena = &game.arena;
    let mut prefix: Option<(Line<'_>, Moves, Option<StateId>)> = None;
    let mut cycle: Option<(Line<'_>, Moves)> = None;
    let mut outcome: Option<(Line<'_>, crate::game_model::OutcomeId)> = None;
    let mut threats = BTreeMap::new();
    let mut fillers: Option<(Line<'_>, PositionalProfile)> = None;

    for line in text::lines(input) {
        let head = line.head();
        let duplicate = |l: &Line<'_>| Err(l.error(format!("duplicate `{head}`")));
        match head {
            "play-prefix:" => {
                if prefix.is_some() {
                    return duplicate(&line);
                }
                let rest = line.rest();
                let (pairs, absorb) = match rest {
                    [init @ .., "absorb", q] => {
                        let q = arena
                            .state_by_name(q)
                            .ok_or_else(|| line.error(format!("unknown state `{q}`")))?;
                        (init, Some(q))
                    }
                    _ => (rest, None),
                };
                let moves = resolve_pairs(arena, &line, pairs)?;
                prefix = Some((line, moves, absorb));
            }
            "play-cycle:" => {
                if cycle.is_some() {
                    return duplicate(&line);
                }
                let moves = resolve_pairs(arena, &line, line.rest())?;
                cycle = Some((line, moves));
            }
            "outcome:" => {
                if outcome.is_some() {
                    return duplicate(&line);
                }
                let name = line.single()?;
                let o = game
                    .prefs
                    .outcome_by_name(name)
                    .ok_or_else(|| line.error(format!("unknown outcome `{name}`")))?;
                outcome = Some((line, o));
            }
            "threat" => {
                let name = line
                    .rest()
                    .first()
                    .and_then(|t| t.strip_suffix(':'))
                    .ok_or_else(|| line.error("expected `threat <agent>:`"))?;
                let agent = arena
                    .agent_by_name(name)
                    .ok_or_else(|| line.error(format!("unknown agent `{name}`")))?;
                if threats.contains_key(&agent) {
                    return Err(line.error(format!("duplicate threat for agent `{name}`")));
                }
                let profile = profile_from(arena, &line, &line.rest()[1..], |q| !arena.is_owned_by(q, agent))?;
                threats.insert(agent, profile);
            }
            "filler:" => {
                if fillers.is_some() {
                    return duplicate(&line);
                }
                let profile = profile_from(arena, &line, line.rest(), |_| true)?;
                fillers = Some((line, profile));
            }
            other => return Err(line.error(format!("unknown directive `{other}`"))),
        }
    }

    let missing = |what: &str| ParseError::new(0, format!("missing `{what}`"));
    let (prefix_line, prefix, absorb) = prefix.ok_or_else(|| missing("play-prefix:"))?;
    let (cycle_line, cycle) = cycle.ok_or_else(|| missing("play-cycle:"))?;
    let (outcome_line, outcome) = outcome.ok_or_else(|| missing("outcome:"))?;
    let (filler_line, fillers) = fillers.ok_or_else(|| missing("filler:"))?;

    let after_prefix = walk(arena, &prefix_line, arena.initial, &prefix)?;
    let end = match (absorb, cycle.is_empty()) {
        (Some(q), true) => {
            if q != after_prefix || !arena.is_absorbing(q) {
                return Err(prefix_line.error(format!("play does not absorb at `{}`", arena.state_name(q))));
            }
            LassoEnd::Absorbed(q)
        }
        (None, false) => {
            let back = walk(arena, &cycle_line, after_prefix, &cycle)?;
            if back != after_prefix {
                return Err(cycle_line.error("cycle does not close"));
            }
            LassoEnd::Cycle(cycle)
        }
        (Some(_), false) => return Err(cycle_line.error("an absorbed play has no cycle")),
        (None, true) => return Err(prefix_line.error("play neither absorbs nor cycles")),
    };
    let actual = arena.outcome_of_end(&end);
    if actual != outcome {
        return Err(outcome_line.error(format!(
            "play yields `{}`, not `{}`",
            game.outcome_name(actual),
            game.outcome_name(outcome)
        )));
    }
    if let Some(q) = arena.decision_states().find(|&q| fillers.get(q).is_none()) {
        return Err(filler_line.error(format!("no filler choice for state `{}`", arena.state_name(q))));
    }
    Ok(EquilibriumMachine {
        play: Lasso {
            prefix,
            end,
            outcome,
        },
        threats,
        fillers,
    })
}
