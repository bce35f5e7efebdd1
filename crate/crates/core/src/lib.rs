//! Spectra of generalized graph joins: `(k, tau)`-regular sets, the
//! `H`-join quotient, and bounds on the spread of joined graphs.

pub mod eig;
pub mod error;
pub mod generate;
pub mod graph;
pub mod join;
pub mod quotient;
pub mod regular_sets;
pub mod search;
pub mod spread;
pub mod verify;

pub use eig::{eig_sym, eigenvalues_sym, EigenDecomposition, Spectrum, SymMatrix};
pub use error::{Error, Result};
pub use graph::{Family, Graph, VertexSet};
pub use join::{generalized_join, h_join, join2, JoinPart, JoinSpec};
pub use quotient::{build_quotient, RegularFamily};
pub use regular_sets::{check_ktau, certify_either, enumerate_ktau, KTauCertificate};
pub use spread::{spread, SpreadReport};
