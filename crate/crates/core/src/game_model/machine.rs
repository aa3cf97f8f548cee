use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use super::{Arena, ChoiceId, Lasso, LassoEnd, PositionalProfile, Reachable, StateId};

/// A finite-memory strategy profile on an arena.
///
/// The memory is updated after every move; at a history ending in state `q`
/// with memory `m`, the profile plays `choose(m, q)`. A positional profile
/// is the one-memory case.
pub trait StrategyMachine {
    type Memory: Copy + Eq + Ord + Hash + Debug;

    fn initial_memory(&self) -> Self::Memory;

    /// The choice at a non-absorbing state.
    fn choose(&self, arena: &Arena, memory: Self::Memory, state: StateId) -> ChoiceId;

    /// Memory after `choice` has been played at `state`.
    fn advance(
        &self,
        arena: &Arena,
        memory: Self::Memory,
        state: StateId,
        choice: ChoiceId,
    ) -> Self::Memory;
}

impl StrategyMachine for PositionalProfile {
    type Memory = ();

    fn initial_memory(&self) {}

    fn choose(&self, arena: &Arena, _: (), state: StateId) -> ChoiceId {
        self.get(state)
            .unwrap_or_else(|| panic!("profile undefined at {}", arena.state_name(state)))
    }

    fn advance(&self, _: &Arena, _: (), _: StateId, _: ChoiceId) {}
}

/// The play induced by `machine` from the initial state. The cycle starts
/// at the first repeated (state, memory) pair.
pub fn machine_play<M: StrategyMachine>(arena: &Arena, machine: &M) -> Lasso {
    let mut seen: HashMap<(StateId, M::Memory), usize> = HashMap::new();
    let mut moves = Vec::new();
    let mut state = arena.initial;
    let mut memory = machine.initial_memory();
    loop {
        if arena.is_absorbing(state) {
            let end = LassoEnd::Absorbed(state);
            let outcome = arena.outcome_of_end(&end);
            return Lasso {
                prefix: moves,
                end,
                outcome,
            };
        }
        if let Some(&start) = seen.get(&(state, memory)) {
            let cycle = moves.split_off(start);
            let end = LassoEnd::Cycle(cycle);
            let outcome = arena.outcome_of_end(&end);
            return Lasso {
                prefix: moves,
                end,
                outcome,
            };
        }
        seen.insert((state, memory), moves.len());
        let choice = machine.choose(arena, memory, state);
        moves.push((state, choice));
        memory = machine.advance(arena, memory, state, choice);
        state = arena.successor(state, choice);
    }
}

/// Memory of `machine` after replaying `history` (a sequence of moves from
/// the initial state).
pub fn memory_after<M: StrategyMachine>(
    arena: &Arena,
    machine: &M,
    history: &[(StateId, ChoiceId)],
) -> M::Memory {
    history
        .iter()
        .fold(machine.initial_memory(), |m, &(q, c)| machine.advance(arena, m, q, c))
}

/// Outcomes reachable in the product of the arena with the machine's memory,
/// starting at `(from, memory)`, when states with `follows(q)` play the
/// machine's choice and all other states may take any choice.
///
/// Against a finite-memory environment the free states face a one-player
/// finite graph, so this is exactly the set of outcomes of all plays they
/// can produce, including the default outcome when a cycle is reachable.
pub fn constrained_outcomes<M: StrategyMachine>(
    arena: &Arena,
    machine: &M,
    follows: impl Fn(StateId) -> bool,
    from: StateId,
    memory: M::Memory,
) -> Reachable {
    type Node<Mem> = (StateId, Mem);
    let successors = |(q, m): Node<M::Memory>| -> Vec<Node<M::Memory>> {
        if follows(q) {
            let c = machine.choose(arena, m, q);
            vec![(arena.successor(q, c), machine.advance(arena, m, q, c))]
        } else {
            arena
                .choice_ids()
                .map(|c| (arena.successor(q, c), machine.advance(arena, m, q, c)))
                .collect()
        }
    };

    let mut index: HashMap<Node<M::Memory>, usize> = HashMap::new();
    let mut adjacency: Vec<Vec<usize>> = Vec::new();
    let mut outcomes = BTreeSet::new();
    let mut stack = vec![(from, memory)];
    index.insert((from, memory), 0);
    adjacency.push(Vec::new());
    let mut live = vec![false];
    while let Some(node) = stack.pop() {
        let id = index[&node];
        if let Some(o) = arena.absorbing_outcome(node.0) {
            outcomes.insert(o);
            continue;
        }
        live[id] = true;
        for next in successors(node) {
            let next_id = *index.entry(next).or_insert_with(|| {
                adjacency.push(Vec::new());
                live.push(false);
                stack.push(next);
                adjacency.len() - 1
            });
            adjacency[id].push(next_id);
        }
    }

    let non_absorbing = has_cycle(&adjacency, &live);
    if non_absorbing {
        outcomes.insert(arena.default_outcome);
    }
    Reachable {
        outcomes,
        non_absorbing,
    }
}

fn has_cycle(adjacency: &[Vec<usize>], live: &[bool]) -> bool {
    let n = adjacency.len();
    let mut indegree = vec![0usize; n];
    for (v, targets) in adjacency.iter().enumerate() {
        if live[v] {
            for &t in targets {
                if live[t] {
                    indegree[t] += 1;
                }
            }
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| live[v] && indegree[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop() {
        removed += 1;
        for &t in &adjacency[v] {
            if live[t] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    queue.push(t);
                }
            }
        }
    }
    removed < live.iter().filter(|&&l| l).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game_model::possible_outcomes;
    use crate::fixtures::g_threat;

    #[test]
    fn product_search_matches_positional_search_for_positional_machines() {
        let game = g_threat();
        let arena = &game.arena;
        for bits in 0..4usize {
            let mut profile = PositionalProfile::empty(arena.num_states());
            for (i, q) in arena.decision_states().enumerate() {
                profile.set(q, ChoiceId((bits >> i) & 1));
            }
            for agent in arena.agent_ids() {
                let constraint = profile.restricted_to_agent(arena, agent);
                for q in arena.state_ids() {
                    let direct = possible_outcomes(arena, q, &constraint);
                    let product = constrained_outcomes(
                        arena,
                        &profile,
                        |s| arena.is_owned_by(s, agent),
                        q,
                        (),
                    );
                    assert_eq!(direct, product);
                }
            }
        }
    }
}
