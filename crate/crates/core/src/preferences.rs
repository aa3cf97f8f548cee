//! Preference relations over outcomes, their well-ordered linear
//! extensions, and terminal intervals.
//!
//! Each agent's relation `≺` is a set of pairs `(o, o′)` read as "`o′` is
//! strictly preferred to `o`". On a finite outcome set the inverse relation
//! is strictly well-founded exactly when `≺` has no directed cycle. The
//! linear extension ranks the inverse relation, orders by rank then by
//! declared outcome order, and reverses the result.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::game_model::{AgentId, OutcomeId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PreferenceError {
    #[error("unknown agent #{0}")]
    UnknownAgent(usize),
    #[error("preference of agent #{} is not strictly well-founded: cycle {cycle:?}", agent.0)]
    NotWellFounded {
        agent: AgentId,
        cycle: Vec<OutcomeId>,
    },
}

/// Declared outcomes plus one strict preference relation per agent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceProfile {
    /// Declared order; also the tie-break well-order of the linear extension.
    pub outcomes: Vec<String>,
    relations: Vec<BTreeSet<(OutcomeId, OutcomeId)>>,
}

impl PreferenceProfile {
    pub fn new(outcomes: Vec<String>, relations: Vec<BTreeSet<(OutcomeId, OutcomeId)>>) -> Self {
        PreferenceProfile {
            outcomes,
            relations,
        }
    }

    pub fn num_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn num_agents(&self) -> usize {
        self.relations.len()
    }

    pub fn outcome_ids(&self) -> impl Iterator<Item = OutcomeId> {
        (0..self.outcomes.len()).map(OutcomeId)
    }

    pub fn outcome_by_name(&self, name: &str) -> Option<OutcomeId> {
        self.outcomes.iter().position(|o| o == name).map(OutcomeId)
    }

    /// Pairs `(o, o′)` with `o′` strictly preferred by `agent`.
    pub fn relation(&self, agent: AgentId) -> &BTreeSet<(OutcomeId, OutcomeId)> {
        &self.relations[agent.0]
    }

    /// `agent` strictly prefers `better` to `worse` (the relation as given,
    /// without closure).
    pub fn prefers(&self, agent: AgentId, worse: OutcomeId, better: OutcomeId) -> bool {
        self.relations[agent.0].contains(&(worse, better))
    }

    fn relation_checked(&self, agent: AgentId) -> Result<&BTreeSet<(OutcomeId, OutcomeId)>, PreferenceError> {
        self.relations
            .get(agent.0)
            .ok_or(PreferenceError::UnknownAgent(agent.0))
    }
}

/// Finds a directed cycle (self-loops included) in a relation over `0..n`.
/// Search starts from the smallest node and follows edges in sorted order.
pub fn find_cycle(n: usize, pairs: &BTreeSet<(OutcomeId, OutcomeId)>) -> Option<Vec<OutcomeId>> {
    let mut adjacency = vec![Vec::new(); n];
    for &(x, y) in pairs {
        adjacency[x.0].push(y.0);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut color = vec![0u8; n];
    let mut path: Vec<usize> = Vec::new();

    fn visit(
        v: usize,
        adjacency: &[Vec<usize>],
        color: &mut [u8],
        path: &mut Vec<usize>,
    ) -> Option<Vec<OutcomeId>> {
        color[v] = 1;
        path.push(v);
        for &w in &adjacency[v] {
            match color[w] {
                1 => {
                    let start = path.iter().position(|&p| p == w).expect("on stack");
                    return Some(path[start..].iter().map(|&p| OutcomeId(p)).collect());
                }
                0 => {
                    if let Some(cycle) = visit(w, adjacency, color, path) {
                        return Some(cycle);
                    }
                }
                _ => {}
            }
        }
        path.pop();
        color[v] = 2;
        None
    }

    (0..n).find_map(|v| {
        if color[v] == 0 {
            visit(v, &adjacency, &mut color, &mut path)
        } else {
            None
        }
    })
}

/// Ok iff the agent's relation has no directed cycle.
pub fn check_strictly_well_founded(
    prefs: &PreferenceProfile,
    agent: AgentId,
) -> Result<(), PreferenceError> {
    let relation = prefs.relation_checked(agent)?;
    match find_cycle(prefs.num_outcomes(), relation) {
        None => Ok(()),
        Some(cycle) => Err(PreferenceError::NotWellFounded { agent, cycle }),
    }
}

/// Rank function of a well-founded relation `R` over `0..n`: rank 0 for
/// elements without `R`-predecessor, otherwise one more than the largest
/// predecessor rank. Returns the offending cycle if `R` is not well-founded.
pub fn rank_of_relation(
    n: usize,
    relation: &BTreeSet<(OutcomeId, OutcomeId)>,
) -> Result<Vec<usize>, Vec<OutcomeId>> {
    if let Some(cycle) = find_cycle(n, relation) {
        return Err(cycle);
    }
    let mut predecessors = vec![Vec::new(); n];
    for &(y, x) in relation {
        predecessors[x.0].push(y.0);
    }
    let mut rank: Vec<Option<usize>> = vec![None; n];
    fn compute(x: usize, predecessors: &[Vec<usize>], rank: &mut [Option<usize>]) -> usize {
        if let Some(r) = rank[x] {
            return r;
        }
        let r = predecessors[x]
            .iter()
            .map(|&y| compute(y, predecessors, rank) + 1)
            .max()
            .unwrap_or(0);
        rank[x] = Some(r);
        r
    }
    Ok((0..n).map(|x| compute(x, &predecessors, &mut rank)).collect())
}

fn inverse(relation: &BTreeSet<(OutcomeId, OutcomeId)>) -> BTreeSet<(OutcomeId, OutcomeId)> {
    relation.iter().map(|&(x, y)| (y, x)).collect()
}

/// Ranks of the agent's inverse relation, indexed by outcome.
pub fn rank(prefs: &PreferenceProfile, agent: AgentId) -> Result<Vec<usize>, PreferenceError> {
    let relation = prefs.relation_checked(agent)?;
    rank_of_relation(prefs.num_outcomes(), &inverse(relation)).map_err(|_| {
        let cycle = find_cycle(prefs.num_outcomes(), relation).expect("cycle in inverse");
        PreferenceError::NotWellFounded { agent, cycle }
    })
}

/// A strict total order over all outcomes, least first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPreference {
    pub agent: AgentId,
    order: Vec<OutcomeId>,
    position: Vec<usize>,
}

impl LinearPreference {
    /// Builds the order from a least-to-greatest permutation of `0..n`.
    pub fn from_order(agent: AgentId, order: Vec<OutcomeId>) -> Self {
        let mut position = vec![usize::MAX; order.len()];
        for (i, o) in order.iter().enumerate() {
            assert_eq!(position[o.0], usize::MAX, "outcome listed twice");
            position[o.0] = i;
        }
        LinearPreference {
            agent,
            order,
            position,
        }
    }

    /// Outcomes from least to greatest.
    pub fn order(&self) -> &[OutcomeId] {
        &self.order
    }

    pub fn position(&self, outcome: OutcomeId) -> usize {
        self.position[outcome.0]
    }

    pub fn less(&self, x: OutcomeId, y: OutcomeId) -> bool {
        self.position[x.0] < self.position[y.0]
    }

    pub fn less_eq(&self, x: OutcomeId, y: OutcomeId) -> bool {
        self.position[x.0] <= self.position[y.0]
    }

    pub fn greatest(&self) -> OutcomeId {
        *self.order.last().expect("nonempty outcome set")
    }

    /// Terminal interval whose minimum is `min`.
    pub fn interval_from(&self, min: OutcomeId) -> TerminalInterval {
        TerminalInterval {
            agent: self.agent,
            min: Some(min),
            members: self.order[self.position(min)..].iter().copied().collect(),
        }
    }

    /// All terminal intervals, from the full set down to the empty one.
    pub fn terminal_intervals(&self) -> Vec<TerminalInterval> {
        let mut out: Vec<_> = self.order.iter().map(|&o| self.interval_from(o)).collect();
        out.push(TerminalInterval::empty(self.agent));
        out
    }
}

/// The linear extension of the agent's preference: ranks of the inverse
/// relation, ties broken by declared order, then reversed.
pub fn linear_extension(
    prefs: &PreferenceProfile,
    agent: AgentId,
) -> Result<LinearPreference, PreferenceError> {
    let ranks = rank(prefs, agent)?;
    let mut well_order: Vec<OutcomeId> = prefs.outcome_ids().collect();
    well_order.sort_by_key(|o| (ranks[o.0], o.0));
    well_order.reverse();
    Ok(LinearPreference::from_order(agent, well_order))
}

/// Linear extensions of every agent, failing on the first cyclic preference.
pub fn linear_extensions(prefs: &PreferenceProfile) -> Result<Vec<LinearPreference>, PreferenceError> {
    (0..prefs.num_agents())
        .map(|a| linear_extension(prefs, AgentId(a)))
        .collect()
}

/// An upward-closed set of outcomes under an agent's linear preference,
/// summarised by its minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalInterval {
    pub agent: AgentId,
    min: Option<OutcomeId>,
    members: BTreeSet<OutcomeId>,
}

impl TerminalInterval {
    pub fn empty(agent: AgentId) -> Self {
        TerminalInterval {
            agent,
            min: None,
            members: BTreeSet::new(),
        }
    }

    /// Canonical representative; `None` for the empty interval.
    pub fn min(&self) -> Option<OutcomeId> {
        self.min
    }

    pub fn members(&self) -> &BTreeSet<OutcomeId> {
        &self.members
    }

    pub fn contains(&self, outcome: OutcomeId) -> bool {
        self.members.contains(&outcome)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &TerminalInterval) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// The smallest terminal interval containing `outcomes`.
pub fn upward_closure(
    linear: &LinearPreference,
    outcomes: impl IntoIterator<Item = OutcomeId>,
) -> TerminalInterval {
    match outcomes.into_iter().min_by_key(|&o| linear.position(o)) {
        Some(min) => linear.interval_from(min),
        None => TerminalInterval::empty(linear.agent),
    }
}
