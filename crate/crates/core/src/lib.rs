//! Deciding homomorphism-homogeneity of finite reflexive digraphs.
//!
//! A digraph is homomorphism-homogeneous (HH) when every homomorphism
//! between finite induced subdigraphs extends to an endomorphism. The crate
//! provides:
//!
//! * an exhaustive one-point-extension oracle and an independent cone-based
//!   decider ([`oracle`]),
//! * a polynomial structural classifier for bidirectionally disconnected
//!   reflexive digraphs ([`classifier`]),
//! * recognisers for posets, quasiorders and digraphs with involution,
//! * the independent-set hardness gadget ([`gadget`]) and small exhaustive
//!   censuses ([`census`]).

pub mod census;
pub mod classifier;
pub mod digraph;
pub mod error;
pub mod format;
pub mod gadget;
pub mod gen;
pub mod involution;
pub mod oracle;
pub mod partition;
pub mod posets;
pub mod structure;
pub mod vertex_set;

pub use digraph::{is_homomorphism, is_isomorphism, CanonicalForm, Digraph, EdgeClass, EdgeKind};
pub use error::{HhError, Result};
pub use partition::Partition;
pub use vertex_set::VertexSet;
