use crate::game_model::{AgentId, Arena, ChoiceId, PositionalProfile, StateId, StrategyMachine};

/// "From play position `position` onward, `agent` follows `replacement`
/// inside the subtree of the play prefix of that length."
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JournalEntry {
    pub position: usize,
    pub agent: AgentId,
    /// Positional strategy over the agent's states.
    pub replacement: PositionalProfile,
}

/// A base profile refined by journal entries along a play.
///
/// At a history, an agent follows its latest entry whose play prefix is a
/// prefix of the history, and the base profile when there is none. The
/// `spine` records the play prefix up to the last entry position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JournaledProfile {
    pub base: PositionalProfile,
    journal: Vec<JournalEntry>,
    spine: Vec<(StateId, ChoiceId)>,
}

/// Memory of a [`JournaledProfile`]: how much of the spine the history
/// still follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JournalMemory {
    /// The history is the spine prefix of this length.
    OnSpine(usize),
    /// The history agrees with the spine on exactly this many moves, or
    /// extends the whole spine.
    Off(usize),
}

impl JournaledProfile {
    pub fn new(base: PositionalProfile) -> Self {
        JournaledProfile {
            base,
            journal: Vec::new(),
            spine: Vec::new(),
        }
    }

    pub fn journal(&self) -> &[JournalEntry] {
        &self.journal
    }

    pub fn spine(&self) -> &[(StateId, ChoiceId)] {
        &self.spine
    }

    /// Appends an entry. `prefix` must be the current play's first
    /// `entry.position` moves.
    pub fn push(&mut self, entry: JournalEntry, prefix: Vec<(StateId, ChoiceId)>) {
        assert_eq!(prefix.len(), entry.position, "spine must match the entry position");
        if let Some(last) = self.journal.last() {
            assert!(entry.position > last.position, "journal positions must increase");
        }
        debug_assert!(prefix.starts_with(&self.spine), "refinement changed the play prefix");
        self.spine = prefix;
        self.journal.push(entry);
    }

    /// The profile as it stood before any entry at position `n` or later.
    pub fn truncated(&self, n: usize) -> Self {
        let journal: Vec<JournalEntry> = self
            .journal
            .iter()
            .filter(|e| e.position < n)
            .cloned()
            .collect();
        let len = journal.last().map_or(0, |e| e.position);
        JournaledProfile {
            base: self.base.clone(),
            journal,
            spine: self.spine[..len].to_vec(),
        }
    }

    fn bound(memory: JournalMemory) -> usize {
        match memory {
            JournalMemory::OnSpine(i) | JournalMemory::Off(i) => i,
        }
    }

    /// Choice at `state` when entries up to position `bound` apply.
    fn rule(&self, arena: &Arena, bound: usize, state: StateId) -> Option<ChoiceId> {
        let owner = arena.owner(state);
        self.journal
            .iter()
            .rev()
            .filter(|e| e.position <= bound && Some(e.agent) == owner)
            .find_map(|e| e.replacement.get(state))
            .or_else(|| self.base.get(state))
    }

    /// The positional profile followed once every entry applies.
    pub fn settled(&self, arena: &Arena) -> PositionalProfile {
        let mut out = PositionalProfile::empty(arena.num_states());
        for q in arena.decision_states() {
            if let Some(c) = self.rule(arena, self.spine.len(), q) {
                out.set(q, c);
            }
        }
        out
    }
}

impl StrategyMachine for JournaledProfile {
    type Memory = JournalMemory;

    fn initial_memory(&self) -> JournalMemory {
        if self.spine.is_empty() {
            JournalMemory::Off(0)
        } else {
            JournalMemory::OnSpine(0)
        }
    }

    fn choose(&self, arena: &Arena, memory: JournalMemory, state: StateId) -> ChoiceId {
        self.rule(arena, Self::bound(memory), state)
            .unwrap_or_else(|| panic!("profile undefined at {}", arena.state_name(state)))
    }

    fn advance(
        &self,
        _: &Arena,
        memory: JournalMemory,
        state: StateId,
        choice: ChoiceId,
    ) -> JournalMemory {
        match memory {
            JournalMemory::OnSpine(i) if self.spine[i] == (state, choice) => {
                if i + 1 < self.spine.len() {
                    JournalMemory::OnSpine(i + 1)
                } else {
                    JournalMemory::Off(self.spine.len())
                }
            }
            JournalMemory::OnSpine(i) => JournalMemory::Off(i),
            off @ JournalMemory::Off(_) => off,
        }
    }
}
