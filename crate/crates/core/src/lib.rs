//! Best half-duplex routing over relay networks.
//!
//! A relay network is a directed graph with rational link capacities. The
//! half-duplex (HD) capacity of a simple route is the minimum over
//! consecutive link pairs of `ab / (a + b)`. [`best_hd_simple_path`] finds
//! the simple S-D route maximising it; [`oracle`] enumerates routes for
//! ground truth and [`sat`] builds hard instances from 3-CNF formulas.

pub mod capacity;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod gen;
pub mod graph;
pub mod line;
pub mod metrics;
pub mod oracle;
pub mod router;
pub mod sat;
pub mod widest;

pub use capacity::Capacity;
pub use cycles::{count_elementary_cycles, CycleCount};
pub use error::{Error, Result};
pub use graph::{validate, Digraph, GraphDoc, Path};
pub use metrics::{fd_path_capacity, hd_path_capacity};
pub use router::{best_hd_simple_path, hd_path_decide, RouteOptions, RouteResult};
