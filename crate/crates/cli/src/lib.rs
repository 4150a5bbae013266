//! Text formats, Graphviz export and the `costgames` command line.

pub mod app;
pub mod dot;
pub mod game_file;
pub mod strategy_file;

pub use app::run;
pub use game_file::{parse_game, serialize_game, GameFile, ParseError};
