//! Small named games used throughout the tests, benches and README.

use crate::game_model::{parse::parse_game, Game};

/// One agent at `q0` either loops on `0` forever (outcome `l`) or plays `1`
/// and wins (`w`).
pub const G_ONE: &str = "\
choices: 0 1
agents: a
outcomes: l w
default-outcome: l
prefer a: l < w
state q0 owner=a
on q0 0 -> q0
on q0 1 -> WIN
absorbing WIN outcome=w
initial: q0
";

/// Agent `a` at `r` takes `o1` or passes to `b` at `t`, who picks `o0` or `o2`.
pub const G_THREAT: &str = "\
choices: L R
agents: a b
outcomes: bot o0 o1 o2
default-outcome: bot
prefer a: bot < o0
prefer a: o0 < o1
prefer a: o1 < o2
prefer b: o2 < o0
state r owner=a
state t owner=b
absorbing O0 outcome=o0
absorbing O1 outcome=o1
absorbing O2 outcome=o2
on r L -> O1
on r R -> t
on t L -> O0
on t R -> O2
initial: r
";

/// [`G_ONE`] as a win-lose game: side A must reach `WIN`.
pub const G_ONE_WINLOSE: &str = "\
choices: 0 1
side q0 A
absorbing WIN
on q0 0 -> q0
on q0 1 -> WIN
initial: q0
objective: reach WIN
";

/// The [`G_THREAT`] graph with `a` as side A and `b` as side B; A must reach `O2`.
pub const G_THREAT_WINLOSE: &str = "\
choices: L R
side r A
side t B
absorbing O0
absorbing O1
absorbing O2
on r L -> O1
on r R -> t
on t L -> O0
on t R -> O2
initial: r
objective: reach O2
";

pub fn g_one() -> Game {
    parse_game(G_ONE).expect("G_ONE parses")
}

pub fn g_threat() -> Game {
    parse_game(G_THREAT).expect("G_THREAT parses")
}
