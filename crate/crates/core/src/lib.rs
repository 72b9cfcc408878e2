//! Spectral lower bounds for the chromatic and vector chromatic numbers of a
//! graph, together with an exact SDP computation of the vector chromatic
//! number and a few verification harnesses built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: the [`Graph`] type, named generators and brute-force
//!   clique/colouring oracles for small graphs.
//! * [`io`]: graph6, edge lists and generator spec strings.
//! * [`spectra`]: a cyclic Jacobi eigensolver and the spectral quantities
//!   built on it (energies, Schur products, majorization).
//! * [`bounds`]: Hoffman, Lima, Kolotilina and Ando–Lin bounds and their
//!   weighted forms.
//! * [`sdp`]: an operator-splitting solver for the theta-type programs,
//!   vector colouring feasibility and witness extraction.
//! * [`harness`]: per-graph verification records and the resumable
//!   circulant search.
//!
//! ```
//! use vchrom::{bounds, graph::generators, sdp};
//!
//! let petersen = generators::kneser(5, 2).unwrap();
//! let report = bounds::all_bounds(&petersen).unwrap();
//! assert!((report.hoffman - 2.5).abs() < 1e-9);
//!
//! let chi_v = sdp::chi_v_galtman(&petersen, 1e-7).unwrap();
//! assert!((chi_v.objective - 2.5).abs() < 1e-4);
//! ```

pub mod bounds;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod sdp;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::Graph;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/vector-coloring.md")]
    mod vector_coloring {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
}
