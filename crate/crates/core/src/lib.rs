pub mod atlas;
pub mod classical;
pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod steiner;
pub mod suite;

mod flow;
mod par;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Edit, Edited, Graph};
