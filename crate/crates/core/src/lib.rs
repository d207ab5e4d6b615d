//! Combinatorics of quasi-median graphs.
//!
//! * [`graph`]: finite simple graphs, BFS, intervals, products, small searches.
//! * [`recognition`]: weakly modular / quasi-median / median recognition with
//!   replayable witnesses.
//! * [`hyperplanes`] and [`gates`]: hyperplanes, sectors, carriers, fibers,
//!   crossing graphs, gates.
//! * [`generators`]: prisms, gated amalgams and seeded random quasi-median
//!   graphs.
//! * [`groups`] and [`graph_product`]: graph products of finite groups, their
//!   normal forms and Cayley graphs.
//! * [`relhyp`]: the peripheral collection of a labelled graph and the
//!   relative hyperbolicity verdict for graph products.
//! * [`cubulation`]: the wallspace of sectors and its median graph.
//! * [`wreath`]: graphs of wreaths over finite median hosts.

pub mod cubulation;
pub mod error;
pub mod gates;
pub mod generators;
pub mod graph;
pub mod graph_product;
pub mod groups;
pub mod hyperplanes;
pub mod recognition;
pub mod relhyp;
mod union_find;
pub mod wreath;

pub use error::{Error, Result};
pub use gates::{gate, is_gated, GateResult};
pub use graph::{Distances, Graph, VertexSet};
pub use graph_product::{GraphProduct, Syllable, SyllableWord};
pub use groups::{FiniteGroup, GroupSpec};
pub use hyperplanes::HyperplaneDecomposition;
pub use recognition::{is_median, is_quasi_median, RecognitionVerdict, Status};
