//! Nash equilibrium synthesis for multi-agent sequential games on finite
//! arenas.
//!
//! The pipeline: extend each agent's preference to a linear order
//! ([`preferences`]), deepen an initial profile until every agent on the
//! play holds its best guarantee ([`guarantees`], [`equilibrium::deepen`]),
//! then attach coalition threats solved as win-lose games ([`winlose`]).

pub mod alternation;
pub mod cli;
pub mod corpus;
pub mod equilibrium;
pub mod fixtures;
pub mod game_model;
pub mod guarantees;
pub mod oracle;
pub mod par;
pub mod preferences;
pub mod text;
pub mod winlose;
