pub mod complements;
pub mod config;
pub mod construct;
pub mod error;
pub mod group;
pub mod iso;
pub mod series;
pub mod set;
pub mod subgroups;
pub mod verify;

pub use config::Guards;
pub use construct::{build, build_with, BuildOptions, GroupExpr};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Homomorphism};
pub use set::{ElemSet, Subgroup};
