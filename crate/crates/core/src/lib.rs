//! Attacker-defender resilience games on second-order networked systems.
//!
//! A defender places self-feedback at `f` nodes, an attacker injects signals
//! at `f` nodes, and the payoff is the squared H₂ norm from the attack to the
//! velocity output. The crate computes those norms, builds the game over all
//! node subsets, finds pure equilibria and defender-led Stackelberg
//! solutions, and relates them to degree, center and effective-center
//! centralities.
//!
//! ```
//! use resgame::{dynamics::ControlLaw, game, generators};
//!
//! let g = generators::path(3);
//! let report = game::solve(&g, 0.4, 1, ControlLaw::AbsVelocity, game::DEFAULT_ENUM_CAP).unwrap();
//! assert_eq!(report.defender_set, vec![1]);
//! assert!((report.value.unwrap() - 3.0 / 2.8).abs() < 1e-12);
//! ```

pub mod dynamics;
pub mod error;
pub mod game;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod resistance;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
