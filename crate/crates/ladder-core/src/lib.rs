//! Exact arithmetic, quiver data, and decomposition algorithms for
//! persistence modules on commutative ladders.
//!
//! The crate is organized around five subsystems:
//!
//! * [`exactla`] — dense matrices over prime fields with invertible-witness
//!   echelon reductions,
//! * [`ladder`] — the representation data model for commutative ladders,
//! * [`arq`] — Auslander-Reiten quiver data, graph metrics, and the
//!   bottleneck distance,
//! * [`decomp`] — the echelon-reduction decomposition pipeline plus an
//!   independent hom-count oracle,
//! * [`homtda`] — simplicial complexes, GF(2) homology, Vietoris-Rips
//!   construction, and module assembly from pairs of growing spaces.
//!
//! File formats shared with the command-line tool live in [`files`].

pub mod arq;
pub mod decomp;
pub mod exactla;
pub mod files;
pub mod homtda;
pub mod ladder;

pub use arq::{ArQuiver, PersistenceDiagram, VertexDescriptor};
pub use exactla::{FieldElem, Matrix};
pub use ladder::{DimVector, LadderRep, Orientation};
