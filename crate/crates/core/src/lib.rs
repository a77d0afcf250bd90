//! Selection games on finite topological spaces.
//!
//! A finite space is stored as its specialization preorder: `i <= j` when
//! `i` lies in the closure of `{j}`. Open sets are the up-sets of that
//! preorder, and every point `x` has a smallest open neighbourhood `U_x`.
//! On top of that kernel the crate provides exact cardinal invariants, the
//! selection, open-open and point-open games with a bounded-horizon solver
//! and referee, and strategy transducers that turn a winning strategy in one
//! game into a winning strategy in another.

pub mod checks;
pub mod dualities;
pub mod error;
pub mod families;
pub mod format;
pub mod game;
pub mod invariants;
pub mod oracle;
pub mod points;
pub mod space;
pub mod spacegen;

pub use error::{Error, Result};
pub use families::{maximal_disjoint_refinement, OpenLattice, Refinement, DEFAULT_FAMILY_CAP};
pub use format::{space_from_json, space_to_json, SpaceDocument};
pub use game::{GameKind, Mode, Move, Player, Position, Strategy, Transcript, Verdict};
pub use invariants::InvariantReport;
pub use points::{OpenFamily, PointSet, MAX_POINTS};
pub use space::FiniteSpace;
