//! Command-line front end. Exit codes: 0 success, 1 parse or validation
//! error, 2 cyclic preference, 3 internal invariant violation, 4 the
//! verified profile is not an equilibrium.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::alternation::stretch;
use crate::equilibrium::certificate::{parse_certificate, write_certificate};
use crate::equilibrium::{solve_game, verify_nash, EquilibriumError};
use crate::game_model::parse::{format_profile, parse_game, parse_seed_profile};
use crate::game_model::{validate_arena, ChoiceId, Game, Severity};
use crate::guarantees::GuaranteeTable;
use crate::oracle::brute_force_nash;
use crate::preferences::{check_strictly_well_founded, linear_extensions, PreferenceError};
use crate::winlose::parse::{parse_winlose, write_winlose};
use crate::winlose::{solve, Side, WinLoseGame};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_WELL_FOUNDED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_NOT_NASH: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "seqnash", version, about = "Nash equilibria of sequential games on finite arenas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that every agent's preference is acyclic
    CheckPrefs { game: PathBuf },
    /// Construct an equilibrium and print its certificate
    Solve {
        game: PathBuf,
        /// Starting profile: lines of `<state> <choice>` pairs
        #[arg(long)]
        seed_profile: Option<PathBuf>,
        /// Print refinement steps as comments
        #[arg(long)]
        trace: bool,
    },
    /// Check a certificate against the game's preferences
    Verify { game: PathBuf, certificate: PathBuf },
    /// Print best guarantees and witness strategies
    BestGuarantee {
        game: PathBuf,
        #[arg(long)]
        agent: Option<String>,
        #[arg(long)]
        state: Option<String>,
    },
    /// Solve a win-lose game
    Winlose { game: PathBuf },
    /// Print the strictly alternating stretch of a win-lose game
    Alternate {
        game: PathBuf,
        /// Designated dummy choice (default: first declared choice)
        #[arg(long)]
        c0: Option<String>,
    },
    /// List every positional Nash equilibrium
    Oracle { game: PathBuf },
}

/// A failed command: exit code plus message for stderr.
struct Failure(i32, String);

type Outcome = Result<(), Failure>;

fn input(message: impl Into<String>) -> Failure {
    Failure(EXIT_INPUT, message.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path, err: &mut dyn Write) -> Result<Game, Failure> {
    let game = parse_game(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let issues = validate_arena(&game.arena, &game.prefs);
    for issue in issues.iter().filter(|i| i.severity == Severity::Warning) {
        let _ = writeln!(err, "{}: {issue}", path.display());
    }
    let errors: Vec<String> = issues
        .iter()
        .filter(|i| i.severity == Severity::Error)
        .map(|i| format!("{}: {i}", path.display()))
        .collect();
    if errors.is_empty() {
        Ok(game)
    } else {
        Err(input(errors.join("\n")))
    }
}

fn load_winlose(path: &Path) -> Result<WinLoseGame, Failure> {
    parse_winlose(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn equilibrium_failure(e: EquilibriumError) -> Failure {
    let code = match e {
        EquilibriumError::PreferenceNotWellFounded { .. } => EXIT_NOT_WELL_FOUNDED,
        _ => EXIT_INTERNAL,
    };
    Failure(code, e.to_string())
}

fn check_prefs(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let game = load_game(path, err)?;
    let mut all_ok = true;
    for agent in game.arena.agent_ids() {
        let name = game.arena.agent_name(agent);
        match check_strictly_well_founded(&game.prefs, agent) {
            Ok(()) => {
                let _ = writeln!(out, "{name}: ok");
            }
            Err(PreferenceError::NotWellFounded { cycle, .. }) => {
                all_ok = false;
                let names: Vec<&str> = cycle.iter().map(|&o| game.outcome_name(o)).collect();
                let _ = writeln!(out, "{name}: cycle {}", names.join(" "));
            }
            Err(e) => return Err(Failure(EXIT_INTERNAL, e.to_string())),
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure(EXIT_NOT_WELL_FOUNDED, String::new()))
    }
}

fn solve_cmd(path: &Path, seed: Option<&Path>, trace: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let game = load_game(path, err)?;
    let seed = match seed {
        Some(p) => Some(
            parse_seed_profile(&game.arena, &read(p)?).map_err(|e| input(format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    let solution = solve_game(&game, seed).map_err(equilibrium_failure)?;
    if trace {
        let arena = &game.arena;
        for step in &solution.deepening.trace {
            let min = |i: &crate::preferences::TerminalInterval| i.min().map_or("-", |o| game.outcome_name(o));
            let _ = writeln!(
                out,
                "# refine position={} agent={} state={} guarantee={} best={}",
                step.position,
                arena.agent_name(step.agent),
                arena.state_name(step.state),
                min(&step.before),
                min(&step.after),
            );
        }
        let _ = writeln!(
            out,
            "# refinements={} positions={}",
            solution.deepening.trace.len(),
            solution.deepening.positions_checked
        );
    }
    let _ = write!(out, "{}", write_certificate(&game, &solution.machine));
    Ok(())
}

fn verify_cmd(path: &Path, certificate: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let game = load_game(path, err)?;
    let machine = parse_certificate(&game, &read(certificate)?)
        .map_err(|e| input(format!("{}: {e}", certificate.display())))?;
    match verify_nash(&game.arena, &game.prefs, &machine) {
        Ok(()) => {
            let _ = writeln!(out, "ok");
            Ok(())
        }
        Err(d) => {
            let _ = writeln!(
                out,
                "deviation: agent {} reaches {} over {}",
                game.arena.agent_name(d.agent),
                game.outcome_name(d.outcome),
                game.outcome_name(machine.play.outcome)
            );
            Err(Failure(EXIT_NOT_NASH, String::new()))
        }
    }
}

fn best_guarantee_cmd(
    path: &Path,
    agent: Option<&str>,
    state: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let game = load_game(path, err)?;
    let arena = &game.arena;
    let linears = linear_extensions(&game.prefs)
        .map_err(|e| equilibrium_failure(EquilibriumError::from_preference(&game, e)))?;
    let agents: Vec<_> = match agent {
        Some(name) => vec![arena.agent_by_name(name).ok_or_else(|| input(format!("unknown agent `{name}`")))?],
        None => arena.agent_ids().collect(),
    };
    let states: Vec<_> = match state {
        Some(name) => vec![arena.state_by_name(name).ok_or_else(|| input(format!("unknown state `{name}`")))?],
        None => arena.decision_states().collect(),
    };
    for a in agents {
        let table = GuaranteeTable::new(arena, &linears[a.0], a);
        for &q in &states {
            let best = table.get(q);
            let min = best.interval.min().map_or("-", |o| game.outcome_name(o));
            let witness = best.witness.as_ref().map(|w| format_profile(arena, w)).unwrap_or_default();
            let line = format!("{} {} min={min} witness: {witness}", arena.agent_name(a), arena.state_name(q));
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }
    Ok(())
}

fn winlose_cmd(path: &Path, out: &mut dyn Write) -> Outcome {
    let game = load_winlose(path)?;
    let verdict = solve(&game).map_err(|e| input(e.to_string()))?;
    let arena = &game.arena;
    for q in arena.state_ids() {
        let _ = writeln!(out, "winner {} {}", arena.state_name(q), verdict.winner(q));
    }
    for side in [Side::A, Side::B] {
        let pairs = format_profile(arena, verdict.strategy(side));
        let line = format!("strategy {side}: {pairs}");
        let _ = writeln!(out, "{}", line.trim_end());
    }
    Ok(())
}

fn alternate_cmd(path: &Path, c0: Option<&str>, out: &mut dyn Write) -> Outcome {
    let game = load_winlose(path)?;
    let c0 = match c0 {
        Some(name) => game
            .arena
            .choice_by_name(name)
            .ok_or_else(|| input(format!("unknown choice `{name}`")))?,
        None => ChoiceId(0),
    };
    let alt = stretch(&game, c0).map_err(|e| input(e.to_string()))?;
    let _ = write!(out, "{}", write_winlose(&alt.stretched));
    Ok(())
}

fn oracle_cmd(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let game = load_game(path, err)?;
    let found = brute_force_nash(&game.arena, &game.prefs).map_err(|e| input(e.to_string()))?;
    let _ = writeln!(out, "# {} positional equilibria", found.len());
    for profile in &found {
        let _ = writeln!(out, "{}", format_profile(&game.arena, profile));
    }
    Ok(())
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::CheckPrefs { game } => check_prefs(game, out, err),
        Command::Solve {
            game,
            seed_profile,
            trace,
        } => solve_cmd(game, seed_profile.as_deref(), *trace, out, err),
        Command::Verify { game, certificate } => verify_cmd(game, certificate, out, err),
        Command::BestGuarantee { game, agent, state } => {
            best_guarantee_cmd(game, agent.as_deref(), state.as_deref(), out, err)
        }
        Command::Winlose { game } => winlose_cmd(game, out),
        Command::Alternate { game, c0 } => alternate_cmd(game, c0.as_deref(), out),
        Command::Oracle { game } => oracle_cmd(game, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure(code, message)) => {
            if !message.is_empty() {
                let _ = writeln!(err, "error: {message}");
            }
            code
        }
    }
}
