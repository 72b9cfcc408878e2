//! Reading and writing graphs: graph6, plain edge lists and generator spec
//! strings such as `kneser:5,2`.

mod edges;
mod genspec;
mod graph6;

pub use edges::{parse_edge_list, write_edge_list};
pub use genspec::parse_generator_spec;
pub use graph6::{graph6_len, parse_graph6, write_graph6, MAX_GRAPH6_N};
