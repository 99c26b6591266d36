//! Exact evaluation of two graph invariants and a harness for checking that
//! they coincide.
//!
//! φ is defined through proper 3-colorings of spanning subgraphs and can also
//! be written as a signed sum over Eulerian induced subgraphs; ψ is a signed
//! sum of `2^corank` over the adjacency matrices (over F₂) of induced
//! subgraphs. [`invariants`] evaluates all three sums exactly as
//! [`DyadicRational`]s, and [`verify`] runs them side by side over exhaustive
//! or random corpora.
//!
//! ```
//! use graphweight::{evaluate, Budgets, Execution, Formula, Graph};
//!
//! let k3 = Graph::complete(3).unwrap();
//! for f in Formula::ALL {
//!     let v = evaluate(f, &k3, &Budgets::default(), Execution::default()).unwrap();
//!     assert_eq!(v.value.to_string(), "15/2^9");
//! }
//! ```

pub mod coloring;
pub mod dyadic;
pub mod exec;
pub mod gf2;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod output;
pub mod verify;

pub use coloring::chi3;
pub use dyadic::DyadicRational;
pub use exec::Execution;
pub use gf2::{Gf2Matrix, Gf2Vector};
pub use graph::{EdgeSubset, Graph, GraphError, VertexSubset};
pub use invariants::{
    evaluate, phi_definition, phi_eulerian, psi_corank, Budgets, Formula, InvariantError,
    InvariantValue,
};
pub use io::{encode_graph6, parse_edge_list, parse_graph6, ParseError};
pub use verify::{RunConfig, VerificationReport};
