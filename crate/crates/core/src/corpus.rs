//! Game generators: the exhaustive depth-2 tree family and seeded random
//! arenas and win-lose games.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game_model::{AgentId, Arena, ChoiceId, Game, OutcomeId, StateId};
use crate::preferences::{find_cycle, PreferenceProfile};
use crate::winlose::{Objective, Side, WinLoseGame};

/// A named corpus member.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub game: Game,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every irreflexive acyclic relation over `0..k`, in a fixed order.
pub fn acyclic_relations(k: usize) -> Vec<BTreeSet<(OutcomeId, OutcomeId)>> {
    let pairs: Vec<(OutcomeId, OutcomeId)> = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (OutcomeId(i), OutcomeId(j))))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &p)| p)
                .collect::<BTreeSet<_>>()
        })
        .filter(|rel| find_cycle(k, rel).is_none())
        .collect()
}

/// Leaf labellings `x` with `x[0] = 0` and each value at most one more than
/// every earlier value: outcome assignments up to renaming outcomes.
fn restricted_growth(len: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 1..len {
        out = out
            .into_iter()
            .flat_map(|word| {
                let top = word.iter().max().copied().unwrap_or(0);
                (0..=(top + 1).min(max_blocks - 1)).map(move |v| {
                    let mut w = word.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    out
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Complete binary tree of depth 2: root `n0`, children `n1` (choice 0) and
/// `n2` (choice 1), leaves `L0..L3` labelled by `leaves`.
pub fn tree_game(owners: [usize; 3], leaves: &[usize], relations: Vec<BTreeSet<(OutcomeId, OutcomeId)>>) -> Game {
    let k = leaves.iter().max().map_or(1, |m| m + 1);
    let agents = names("a", relations.len());
    let mut arena = Arena::new(names("c", 2), agents, OutcomeId(0));
    let inner: Vec<StateId> = (0..3)
        .map(|i| arena.add_state(format!("n{i}"), AgentId(owners[i])))
        .collect();
    let leaf: Vec<StateId> = leaves
        .iter()
        .enumerate()
        .map(|(i, &o)| arena.add_absorbing(format!("L{i}"), OutcomeId(o)))
        .collect();
    arena.set_transition(inner[0], ChoiceId(0), inner[1]);
    arena.set_transition(inner[0], ChoiceId(1), inner[2]);
    for (child, &node) in inner[1..].iter().enumerate() {
        for c in 0..2 {
            arena.set_transition(node, ChoiceId(c), leaf[2 * child + c]);
        }
    }
    arena.initial = inner[0];
    let prefs = PreferenceProfile::new(names("o", k), relations);
    Game { arena, prefs }
}

/// All depth-2 complete binary trees with at most two agents (the root
/// belongs to the first, and every agent owns a state), at most three
/// outcomes, and every combination of acyclic preferences.
pub fn tree_corpus() -> Vec<Instance> {
    let owner_patterns: [(usize, [usize; 3]); 4] = [(1, [0, 0, 0]), (2, [0, 0, 1]), (2, [0, 1, 0]), (2, [0, 1, 1])];
    let relations: Vec<Vec<BTreeSet<(OutcomeId, OutcomeId)>>> = (0..=3).map(acyclic_relations).collect();
    let mut out = Vec::new();
    for (num_agents, owners) in owner_patterns {
        for leaves in restricted_growth(4, 3) {
            let rels = &relations[leaves.iter().max().unwrap() + 1];
            let mut combos: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..num_agents {
                combos = combos
                    .into_iter()
                    .flat_map(|c| {
                        (0..rels.len()).map(move |i| {
                            let mut c = c.clone();
                            c.push(i);
                            c
                        })
                    })
                    .collect();
            }
            for combo in combos {
                let name = format!(
                    "tree/{}/{}/{}",
                    owners.map(|o| o.to_string()).concat(),
                    leaves.iter().map(|o| o.to_string()).collect::<String>(),
                    combo.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("-"),
                );
                let rel_list = combo.iter().map(|&i| rels[i].clone()).collect();
                out.push(Instance {
                    name,
                    game: tree_game(owners, &leaves, rel_list),
                });
            }
        }
    }
    out
}

/// Size ranges for [`random_game`].
#[derive(Clone, Debug)]
pub struct Shape {
    pub decision: RangeInclusive<usize>,
    pub absorbing: RangeInclusive<usize>,
    pub agents: RangeInclusive<usize>,
    pub choices: RangeInclusive<usize>,
    pub outcomes: RangeInclusive<usize>,
}

impl Shape {
    /// At most six states, possibly with cycles.
    pub fn lasso() -> Self {
        Shape {
            decision: 1..=4,
            absorbing: 0..=2,
            agents: 1..=3,
            choices: 2..=3,
            outcomes: 2..=4,
        }
    }
}

/// A random acyclic relation: a hidden ranking with each compatible pair
/// kept with probability one half.
pub fn random_acyclic_relation(rng: &mut impl Rng, k: usize) -> BTreeSet<(OutcomeId, OutcomeId)> {
    let mut ranking: Vec<usize> = (0..k).collect();
    ranking.shuffle(rng);
    let mut out = BTreeSet::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.random_bool(0.5) {
                out.insert((OutcomeId(ranking[i]), OutcomeId(ranking[j])));
            }
        }
    }
    out
}

/// A random total arena with acyclic preferences. The initial state is the
/// first decision state.
pub fn random_game(rng: &mut impl Rng, shape: &Shape) -> Game {
    let decision = rng.random_range(shape.decision.clone());
    let absorbing = rng.random_range(shape.absorbing.clone());
    let num_agents = rng.random_range(shape.agents.clone());
    let num_choices = rng.random_range(shape.choices.clone());
    let k = rng.random_range(shape.outcomes.clone());
    let mut arena = Arena::new(names("c", num_choices), names("a", num_agents), OutcomeId(rng.random_range(0..k)));
    for i in 0..decision {
        arena.add_state(format!("q{i}"), AgentId(rng.random_range(0..num_agents)));
    }
    for i in 0..absorbing {
        arena.add_absorbing(format!("E{i}"), OutcomeId(rng.random_range(0..k)));
    }
    let total = decision + absorbing;
    for q in 0..decision {
        for c in 0..num_choices {
            arena.set_transition(StateId(q), ChoiceId(c), StateId(rng.random_range(0..total)));
        }
    }
    let relations = (0..num_agents).map(|_| random_acyclic_relation(rng, k)).collect();
    let prefs = PreferenceProfile::new(names("o", k), relations);
    Game { arena, prefs }
}

/// The seeded random lasso arenas of the existence corpus.
pub fn lasso_corpus(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| Instance {
            name: format!("lasso/{i}"),
            game: random_game(&mut rng, &Shape::lasso()),
        })
        .collect()
}

/// Tree corpus followed by `lasso_count` random lasso arenas.
pub fn full_corpus(lasso_count: usize, seed: u64) -> Vec<Instance> {
    let mut out = tree_corpus();
    out.extend(lasso_corpus(lasso_count, seed));
    out
}

/// A random win-lose game with between 1 and `max_states` states, at least
/// one of them a decision state; the objective shape is drawn uniformly.
pub fn random_winlose(rng: &mut impl Rng, max_states: usize) -> WinLoseGame {
    let total = rng.random_range(1..=max_states.max(1));
    let decision = rng.random_range(1..=total);
    let num_choices = rng.random_range(2..=3);
    let mut arena = Arena::new(names("c", num_choices), vec!["A".into(), "B".into()], OutcomeId(0));
    let mut side_of = Vec::with_capacity(total);
    for i in 0..decision {
        let side = if rng.random_bool(0.5) { Side::A } else { Side::B };
        let owner = if side == Side::A { 0 } else { 1 };
        arena.add_state(format!("q{i}"), AgentId(owner));
        side_of.push(Some(side));
    }
    for i in decision..total {
        arena.add_absorbing(format!("E{i}"), OutcomeId(0));
        side_of.push(None);
    }
    for q in 0..decision {
        for c in 0..num_choices {
            arena.set_transition(StateId(q), ChoiceId(c), StateId(rng.random_range(0..total)));
        }
    }
    let absorbing: Vec<StateId> = (decision..total).map(StateId).collect();
    let objective = match rng.random_range(0..3) {
        0 => Objective::Reach(absorbing.iter().copied().filter(|_| rng.random_bool(0.5)).collect()),
        1 => Objective::Safe(absorbing.iter().copied().filter(|_| rng.random_bool(0.5)).collect()),
        _ => Objective::ReachOrNonAbsorbing(absorbing.iter().copied().filter(|_| rng.random_bool(0.5)).collect()),
    };
    WinLoseGame {
        arena,
        side_of,
        objective,
    }
}
