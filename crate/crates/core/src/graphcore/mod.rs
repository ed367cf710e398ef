//! Words, alternation, simple graphs and the graph a word represents.

pub mod generators;
pub mod graph;
pub mod io;
pub mod represent;
pub mod token;
pub mod word;

pub use graph::Graph;
pub use represent::{certify_perm_sequence, derive_graph, perm_sequence_graph, represents};
pub use token::{tok, VertexToken};
pub use word::{alternates, as_perm_sequence, restrict, reverse_perm, uniformity, PermSequence, Word};
