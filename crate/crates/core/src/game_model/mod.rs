//! Arenas, positional strategy profiles, induced plays and the
//! constrained-play semantics every other module is built on.
//!
//! An [`Arena`] is a finite deterministic game graph. Its unfolding from the
//! initial state is the game tree: every history is a finite choice sequence,
//! the owner of a history is the owner of the state it leads to, and a play
//! is valued by the outcome of the first absorbing state it reaches, or by
//! the default outcome when it never absorbs.

mod machine;
pub mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use machine::{constrained_outcomes, machine_play, memory_after, StrategyMachine};

use crate::preferences::PreferenceProfile;

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub usize);

        impl $name {
            pub fn index(self) -> usize {
                self.0
            }
        }
    };
}

id_type!(
    /// Index into [`Arena::states`].
    StateId
);
id_type!(
    /// Index into the declared choice list; the declared order is canonical.
    ChoiceId
);
id_type!(
    /// Index into [`Arena::agents`].
    AgentId
);
id_type!(
    /// Index into the outcome list of a [`PreferenceProfile`].
    OutcomeId
);

/// A finite deterministic game graph.
///
/// Fields are public so that malformed arenas can be assembled and fed to
/// [`validate_arena`]; every other operation assumes a valid arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    pub choices: Vec<String>,
    pub agents: Vec<String>,
    pub states: Vec<String>,
    pub initial: StateId,
    /// Owner of each non-absorbing state.
    pub owner: Vec<Option<AgentId>>,
    /// `transition[state][choice]`.
    pub transition: Vec<Vec<Option<StateId>>>,
    /// Outcome of each absorbing state; `None` for non-absorbing states.
    pub absorbing: Vec<Option<OutcomeId>>,
    pub default_outcome: OutcomeId,
}

impl Arena {
    /// An arena with the given labels and no states yet.
    pub fn new(choices: Vec<String>, agents: Vec<String>, default_outcome: OutcomeId) -> Self {
        Arena {
            choices,
            agents,
            states: Vec::new(),
            initial: StateId(0),
            owner: Vec::new(),
            transition: Vec::new(),
            absorbing: Vec::new(),
            default_outcome,
        }
    }

    /// Adds a non-absorbing state owned by `owner`; transitions are left undefined.
    pub fn add_state(&mut self, name: impl Into<String>, owner: AgentId) -> StateId {
        self.push_state(name.into(), Some(owner), None)
    }

    pub fn add_absorbing(&mut self, name: impl Into<String>, outcome: OutcomeId) -> StateId {
        self.push_state(name.into(), None, Some(outcome))
    }

    fn push_state(
        &mut self,
        name: String,
        owner: Option<AgentId>,
        outcome: Option<OutcomeId>,
    ) -> StateId {
        let id = StateId(self.states.len());
        self.states.push(name);
        self.owner.push(owner);
        self.absorbing.push(outcome);
        self.transition.push(vec![None; self.choices.len()]);
        id
    }

    pub fn set_transition(&mut self, from: StateId, choice: ChoiceId, to: StateId) {
        self.transition[from.0][choice.0] = Some(to);
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_choices(&self) -> usize {
        self.choices.len()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states.len()).map(StateId)
    }

    pub fn choice_ids(&self) -> impl Iterator<Item = ChoiceId> + '_ {
        (0..self.choices.len()).map(ChoiceId)
    }

    pub fn agent_ids(&self) -> impl Iterator<Item = AgentId> + '_ {
        (0..self.agents.len()).map(AgentId)
    }

    /// Non-absorbing states in declared order.
    pub fn decision_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.state_ids().filter(|&q| !self.is_absorbing(q))
    }

    pub fn is_absorbing(&self, state: StateId) -> bool {
        self.absorbing[state.0].is_some()
    }

    pub fn absorbing_outcome(&self, state: StateId) -> Option<OutcomeId> {
        self.absorbing[state.0]
    }

    pub fn owner(&self, state: StateId) -> Option<AgentId> {
        self.owner[state.0]
    }

    pub fn is_owned_by(&self, state: StateId, agent: AgentId) -> bool {
        !self.is_absorbing(state) && self.owner[state.0] == Some(agent)
    }

    /// Successor of `state` under `choice`. Panics on a missing transition.
    pub fn successor(&self, state: StateId, choice: ChoiceId) -> StateId {
        self.transition[state.0][choice.0].unwrap_or_else(|| {
            panic!(
                "no transition from {} on {}",
                self.states[state.0], self.choices[choice.0]
            )
        })
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.states[state.0]
    }

    pub fn choice_name(&self, choice: ChoiceId) -> &str {
        &self.choices[choice.0]
    }

    pub fn agent_name(&self, agent: AgentId) -> &str {
        &self.agents[agent.0]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(StateId)
    }

    pub fn choice_by_name(&self, name: &str) -> Option<ChoiceId> {
        self.choices.iter().position(|s| s == name).map(ChoiceId)
    }

    pub fn agent_by_name(&self, name: &str) -> Option<AgentId> {
        self.agents.iter().position(|s| s == name).map(AgentId)
    }

    /// States reachable from `from` by any choices.
    pub fn reachable_from(&self, from: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![from];
        seen[from.0] = true;
        while let Some(q) = stack.pop() {
            for next in self.transition[q.0].iter().flatten() {
                if !seen[next.0] {
                    seen[next.0] = true;
                    stack.push(*next);
                }
            }
        }
        seen
    }

    /// Outcome of a finished play description.
    pub fn outcome_of_end(&self, end: &LassoEnd) -> OutcomeId {
        match end {
            LassoEnd::Absorbed(q) => self.absorbing[q.0].expect("absorbing state"),
            LassoEnd::Cycle(_) => self.default_outcome,
        }
    }
}

/// An arena together with the agents' preferences over its outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    pub arena: Arena,
    pub prefs: PreferenceProfile,
}

impl Game {
    pub fn outcome_name(&self, outcome: OutcomeId) -> &str {
        &self.prefs.outcomes[outcome.0]
    }
}

/// A state-determined choice assignment. Total profiles assign a choice to
/// every non-absorbing state; partial ones are used as constraints.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionalProfile {
    choice_at: Vec<Option<ChoiceId>>,
}

impl PositionalProfile {
    pub fn empty(num_states: usize) -> Self {
        PositionalProfile {
            choice_at: vec![None; num_states],
        }
    }

    /// Plays `choice` at every non-absorbing state.
    pub fn constant(arena: &Arena, choice: ChoiceId) -> Self {
        let mut profile = Self::empty(arena.num_states());
        for q in arena.decision_states() {
            profile.set(q, choice);
        }
        profile
    }

    pub fn get(&self, state: StateId) -> Option<ChoiceId> {
        self.choice_at.get(state.0).copied().flatten()
    }

    pub fn set(&mut self, state: StateId, choice: ChoiceId) {
        self.choice_at[state.0] = Some(choice);
    }

    pub fn unset(&mut self, state: StateId) {
        self.choice_at[state.0] = None;
    }

    pub fn len(&self) -> usize {
        self.choice_at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice_at.iter().all(Option::is_none)
    }

    /// Assigned `(state, choice)` pairs in state order.
    pub fn entries(&self) -> impl Iterator<Item = (StateId, ChoiceId)> + '_ {
        self.choice_at
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (StateId(i), c)))
    }

    /// Keeps only the assignments at states satisfying `keep`.
    pub fn restricted(&self, mut keep: impl FnMut(StateId) -> bool) -> Self {
        let choice_at = self
            .choice_at
            .iter()
            .enumerate()
            .map(|(i, c)| if keep(StateId(i)) { *c } else { None })
            .collect();
        PositionalProfile { choice_at }
    }

    /// Keeps only the assignments at states owned by `agent`.
    pub fn restricted_to_agent(&self, arena: &Arena, agent: AgentId) -> Self {
        self.restricted(|q| arena.is_owned_by(q, agent))
    }

    /// `self` where defined, `fallback` elsewhere.
    pub fn overlay(&self, fallback: &PositionalProfile) -> Self {
        let choice_at = self
            .choice_at
            .iter()
            .zip(&fallback.choice_at)
            .map(|(a, b)| a.or(*b))
            .collect();
        PositionalProfile { choice_at }
    }

    pub fn is_total(&self, arena: &Arena) -> bool {
        arena.decision_states().all(|q| self.get(q).is_some())
    }
}

/// How an induced play continues after its prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LassoEnd {
    /// The prefix ends in this absorbing state.
    Absorbed(StateId),
    /// The play repeats these `(state, choice)` pairs forever.
    Cycle(Vec<(StateId, ChoiceId)>),
}

/// An induced play on a finite arena: a finite prefix followed either by
/// absorption or by a repeated cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lasso {
    pub prefix: Vec<(StateId, ChoiceId)>,
    pub end: LassoEnd,
    pub outcome: OutcomeId,
}

impl Lasso {
    pub fn cycle_len(&self) -> usize {
        match &self.end {
            LassoEnd::Absorbed(_) => 0,
            LassoEnd::Cycle(cycle) => cycle.len(),
        }
    }

    /// Number of distinct positions before the play starts repeating, or
    /// the number of moves before absorption.
    pub fn period_end(&self) -> usize {
        self.prefix.len() + self.cycle_len()
    }

    pub fn absorbed_at(&self) -> Option<StateId> {
        match self.end {
            LassoEnd::Absorbed(q) => Some(q),
            LassoEnd::Cycle(_) => None,
        }
    }

    /// The move at position `n`, or `None` once the play has absorbed.
    pub fn move_at(&self, n: usize) -> Option<(StateId, ChoiceId)> {
        if n < self.prefix.len() {
            return Some(self.prefix[n]);
        }
        match &self.end {
            LassoEnd::Absorbed(_) => None,
            LassoEnd::Cycle(cycle) => Some(cycle[(n - self.prefix.len()) % cycle.len()]),
        }
    }

    /// The state reached after `n` moves.
    pub fn state_at(&self, n: usize) -> StateId {
        match self.move_at(n) {
            Some((q, _)) => q,
            None => self.absorbed_at().expect("absorbed play"),
        }
    }

    /// Index of the position following `n` when positions are folded onto
    /// `0..period_end()`.
    pub fn next_position(&self, n: usize) -> usize {
        match &self.end {
            LassoEnd::Cycle(_) if n + 1 == self.period_end() => self.prefix.len(),
            _ => n + 1,
        }
    }

    /// The first `k` choices of the play. Choices after absorption are
    /// unconstrained and reported as `filler`.
    pub fn choices(&self, k: usize, filler: ChoiceId) -> Vec<ChoiceId> {
        (0..k)
            .map(|n| self.move_at(n).map_or(filler, |(_, c)| c))
            .collect()
    }
}

/// Severity of a validation finding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

/// One violated arena invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationIssue {
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.severity {
            Severity::Warning => write!(f, "warning: {}", self.message),
            Severity::Error => write!(f, "error: {}", self.message),
        }
    }
}

/// Lists every violated arena invariant; empty iff the arena is valid.
/// Unreachable states are reported as warnings.
pub fn validate_arena(arena: &Arena, prefs: &PreferenceProfile) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    let mut error = |message: String| {
        issues.push(ValidationIssue {
            severity: Severity::Error,
            message,
        })
    };
    let n = arena.num_states();
    if arena.choices.is_empty() {
        error("no choices declared".into());
    }
    if arena.agents.is_empty() {
        error("no agents declared".into());
    }
    if n == 0 {
        error("no states declared".into());
        return issues;
    }
    if arena.owner.len() != n || arena.transition.len() != n || arena.absorbing.len() != n {
        error("state tables have inconsistent lengths".into());
        return issues;
    }
    if arena.initial.0 >= n {
        error(format!("initial state index {} out of range", arena.initial.0));
        return issues;
    }
    let num_outcomes = prefs.outcomes.len();
    for q in arena.state_ids() {
        let name = arena.state_name(q);
        match arena.absorbing[q.0] {
            Some(o) => {
                if o.0 >= num_outcomes {
                    error(format!("unknown outcome #{} at absorbing state {name}", o.0));
                }
                if arena.owner[q.0].is_some() {
                    error(format!("absorbing state {name} has an owner"));
                }
                if arena.transition[q.0].iter().any(Option::is_some) {
                    error(format!("absorbing state {name} has outgoing transitions"));
                }
            }
            None => {
                match arena.owner[q.0] {
                    None => error(format!("state {name} has no owner")),
                    Some(a) if a.0 >= arena.agents.len() => {
                        error(format!("state {name} has unknown owner #{}", a.0))
                    }
                    Some(_) => {}
                }
                let row = &arena.transition[q.0];
                if row.len() != arena.num_choices() {
                    error(format!("transition row of state {name} has wrong width"));
                    continue;
                }
                for (c, target) in row.iter().enumerate() {
                    match target {
                        None => error(format!(
                            "transition not total: state {name} has no move on {}",
                            arena.choices[c]
                        )),
                        Some(t) if t.0 >= n => {
                            error(format!("transition from {name} leads to unknown state #{}", t.0))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    if arena.default_outcome.0 >= num_outcomes {
        error(format!("unknown outcome #{} as default outcome", arena.default_outcome.0));
    }
    let has_errors = !issues.is_empty();
    if !has_errors {
        let reachable = arena.reachable_from(arena.initial);
        for q in arena.state_ids().filter(|q| !reachable[q.0]) {
            issues.push(ValidationIssue {
                severity: Severity::Warning,
                message: format!("state {} is unreachable from the initial state", arena.state_name(q)),
            });
        }
    }
    issues
}

/// The play induced by a total profile from the initial state.
pub fn induced_play(arena: &Arena, profile: &PositionalProfile) -> Lasso {
    machine_play(arena, profile)
}

/// All length-`depth` choice sequences from the initial state that respect
/// `constraint` at every constrained state they pass through. After
/// absorption the remaining choices are free.
pub fn bounded_plays(
    arena: &Arena,
    constraint: &PositionalProfile,
    depth: usize,
) -> BTreeSet<Vec<ChoiceId>> {
    fn extend(
        arena: &Arena,
        constraint: &PositionalProfile,
        state: Option<StateId>,
        remaining: usize,
        current: &mut Vec<ChoiceId>,
        out: &mut BTreeSet<Vec<ChoiceId>>,
    ) {
        if remaining == 0 {
            out.insert(current.clone());
            return;
        }
        let live = state.filter(|&q| !arena.is_absorbing(q));
        for c in arena.choice_ids() {
            if let Some(q) = live {
                if constraint.get(q).is_some_and(|forced| forced != c) {
                    continue;
                }
            }
            current.push(c);
            let next = live.map(|q| arena.successor(q, c));
            extend(arena, constraint, next, remaining - 1, current, out);
            current.pop();
        }
    }
    let mut out = BTreeSet::new();
    extend(
        arena,
        constraint,
        Some(arena.initial),
        depth,
        &mut Vec::with_capacity(depth),
        &mut out,
    );
    out
}

/// Outcomes that some play can still produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachable {
    /// Includes the default outcome when `non_absorbing` holds.
    pub outcomes: BTreeSet<OutcomeId>,
    /// Some play never absorbs.
    pub non_absorbing: bool,
}

/// Outcomes of plays from `from` in which every constrained state follows
/// `constraint` and every other state may take any choice.
pub fn possible_outcomes(
    arena: &Arena,
    from: StateId,
    constraint: &PositionalProfile,
) -> Reachable {
    let successors = |q: StateId| -> Vec<StateId> {
        match constraint.get(q) {
            Some(c) => vec![arena.successor(q, c)],
            None => arena.choice_ids().map(|c| arena.successor(q, c)).collect(),
        }
    };
    let mut seen = vec![false; arena.num_states()];
    let mut order = Vec::new();
    let mut stack = vec![from];
    seen[from.0] = true;
    let mut outcomes = BTreeSet::new();
    while let Some(q) = stack.pop() {
        if let Some(o) = arena.absorbing_outcome(q) {
            outcomes.insert(o);
            continue;
        }
        order.push(q);
        for next in successors(q) {
            if !seen[next.0] {
                seen[next.0] = true;
                stack.push(next);
            }
        }
    }
    let non_absorbing = graph_has_cycle(&order, arena.num_states(), |q| {
        successors(q)
            .into_iter()
            .filter(|&n| !arena.is_absorbing(n))
            .collect()
    });
    if non_absorbing {
        outcomes.insert(arena.default_outcome);
    }
    Reachable {
        outcomes,
        non_absorbing,
    }
}

/// Whether the subgraph induced on `nodes` (with edges from `succ`, which
/// must stay inside `nodes`) contains a directed cycle.
pub(crate) fn graph_has_cycle(
    nodes: &[StateId],
    universe: usize,
    succ: impl Fn(StateId) -> Vec<StateId>,
) -> bool {
    // Kahn's algorithm: a cycle exists iff some node never reaches in-degree 0.
    let mut in_set = vec![false; universe];
    for q in nodes {
        in_set[q.0] = true;
    }
    let mut indegree = vec![0usize; universe];
    let edges: Vec<(StateId, Vec<StateId>)> = nodes.iter().map(|&q| (q, succ(q))).collect();
    for (_, targets) in &edges {
        for t in targets {
            if in_set[t.0] {
                indegree[t.0] += 1;
            }
        }
    }
    let mut adjacency = vec![Vec::new(); universe];
    for (q, targets) in edges {
        adjacency[q.0] = targets;
    }
    let mut queue: Vec<StateId> = nodes.iter().copied().filter(|q| indegree[q.0] == 0).collect();
    let mut removed = 0;
    while let Some(q) = queue.pop() {
        removed += 1;
        for t in &adjacency[q.0] {
            if in_set[t.0] {
                indegree[t.0] -= 1;
                if indegree[t.0] == 0 {
                    queue.push(*t);
                }
            }
        }
    }
    removed < nodes.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g_one, g_threat};

    fn ids(v: &[usize]) -> Vec<ChoiceId> {
        v.iter().map(|&c| ChoiceId(c)).collect()
    }

    #[test]
    fn g_one_is_valid() {
        let game = g_one();
        assert!(validate_arena(&game.arena, &game.prefs).is_empty());
    }

    #[test]
    fn missing_transition_is_reported() {
        let mut game = g_one();
        let q0 = game.arena.state_by_name("q0").unwrap();
        game.arena.transition[q0.0][1] = None;
        let report = validate_arena(&game.arena, &game.prefs);
        assert!(report.iter().any(|i| i.message.contains("transition not total")));
    }

    #[test]
    fn undeclared_outcome_is_reported() {
        let mut game = g_one();
        let win = game.arena.state_by_name("WIN").unwrap();
        game.arena.absorbing[win.0] = Some(OutcomeId(7));
        let report = validate_arena(&game.arena, &game.prefs);
        assert!(report.iter().any(|i| i.message.contains("unknown outcome")));
    }

    #[test]
    fn unreachable_state_is_a_warning() {
        let mut game = g_one();
        let w = game.prefs.outcome_by_name("w").unwrap();
        game.arena.add_absorbing("LOST", w);
        let report = validate_arena(&game.arena, &game.prefs);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].severity, Severity::Warning);
    }

    #[test]
    fn induced_play_examples() {
        let game = g_one();
        let arena = &game.arena;
        let q0 = arena.state_by_name("q0").unwrap();
        let l = game.prefs.outcome_by_name("l").unwrap();
        let w = game.prefs.outcome_by_name("w").unwrap();

        let play = induced_play(arena, &PositionalProfile::constant(arena, ChoiceId(0)));
        assert!(play.prefix.is_empty());
        assert_eq!(play.end, LassoEnd::Cycle(vec![(q0, ChoiceId(0))]));
        assert_eq!(play.outcome, l);

        let play = induced_play(arena, &PositionalProfile::constant(arena, ChoiceId(1)));
        assert_eq!(play.prefix, vec![(q0, ChoiceId(1))]);
        assert_eq!(play.end, LassoEnd::Absorbed(arena.state_by_name("WIN").unwrap()));
        assert_eq!(play.outcome, w);

        let game = g_threat();
        let arena = &game.arena;
        let [r, t, o0] = ["r", "t", "O0"].map(|s| arena.state_by_name(s).unwrap());
        let [left, right] = ["L", "R"].map(|c| arena.choice_by_name(c).unwrap());
        let mut profile = PositionalProfile::empty(arena.num_states());
        profile.set(r, right);
        profile.set(t, left);
        let play = induced_play(arena, &profile);
        assert_eq!(play.prefix, vec![(r, right), (t, left)]);
        assert_eq!(play.end, LassoEnd::Absorbed(o0));
        assert_eq!(game.outcome_name(play.outcome), "o0");
    }

    #[test]
    fn bounded_plays_examples() {
        let game = g_one();
        let arena = &game.arena;
        let free = PositionalProfile::empty(arena.num_states());
        assert_eq!(
            bounded_plays(arena, &free, 1),
            BTreeSet::from([ids(&[0]), ids(&[1])])
        );
        let forced = PositionalProfile::constant(arena, ChoiceId(0));
        assert_eq!(bounded_plays(arena, &forced, 2), BTreeSet::from([ids(&[0, 0])]));

        let game = g_threat();
        let arena = &game.arena;
        let r = arena.state_by_name("r").unwrap();
        let mut constraint = PositionalProfile::empty(arena.num_states());
        constraint.set(r, arena.choice_by_name("R").unwrap());
        let (l, rr) = (
            arena.choice_by_name("L").unwrap().0,
            arena.choice_by_name("R").unwrap().0,
        );
        assert_eq!(
            bounded_plays(arena, &constraint, 2),
            BTreeSet::from([ids(&[rr, l]), ids(&[rr, rr])])
        );
        assert_eq!(bounded_plays(arena, &constraint, 0), BTreeSet::from([vec![]]));
    }

    #[test]
    fn possible_outcomes_examples() {
        let game = g_one();
        let arena = &game.arena;
        let q0 = arena.state_by_name("q0").unwrap();
        let names = |r: &Reachable| -> Vec<String> {
            r.outcomes.iter().map(|&o| game.outcome_name(o).to_string()).collect()
        };
        let free = possible_outcomes(arena, q0, &PositionalProfile::empty(arena.num_states()));
        assert_eq!(names(&free), ["l", "w"]);
        assert!(free.non_absorbing);
        let looped = possible_outcomes(arena, q0, &PositionalProfile::constant(arena, ChoiceId(0)));
        assert_eq!(names(&looped), ["l"]);
        assert!(looped.non_absorbing);

        let game = g_threat();
        let arena = &game.arena;
        let r = arena.state_by_name("r").unwrap();
        let mut constraint = PositionalProfile::empty(arena.num_states());
        constraint.set(r, arena.choice_by_name("R").unwrap());
        let reach = possible_outcomes(arena, r, &constraint);
        let got: Vec<&str> = reach.outcomes.iter().map(|&o| game.outcome_name(o)).collect();
        assert_eq!(got, ["o0", "o2"]);
        assert!(!reach.non_absorbing);
    }

    #[test]
    fn lasso_positions_fold_onto_the_cycle() {
        let game = g_one();
        let play = induced_play(&game.arena, &PositionalProfile::constant(&game.arena, ChoiceId(0)));
        assert_eq!(play.period_end(), 1);
        assert_eq!(play.next_position(0), 0);
        assert_eq!(play.choices(3, ChoiceId(1)), ids(&[0, 0, 0]));
        let play = induced_play(&game.arena, &PositionalProfile::constant(&game.arena, ChoiceId(1)));
        assert_eq!(play.choices(3, ChoiceId(0)), ids(&[1, 0, 0]));
        assert_eq!(play.state_at(5), game.arena.state_by_name("WIN").unwrap());
    }
}
