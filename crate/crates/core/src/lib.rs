//! Model checking for epistemic logic on chromatic simplicial complexes,
//! pure and impure.
//!
//! Faces are partial global states and facets are global states; an agent
//! missing from a facet is dead there. Formulas are interpreted in a
//! three-valued semantics, where statements about dead agents may be
//! undefined, and in a two-valued facet semantics. The two are linked by
//! translations and compared by a bounded theorem harness.

pub mod checker;
pub mod cli;
pub mod complex;
pub mod formula;
pub mod labeling;
pub mod modelgen;
pub mod purity;
pub mod resolve;
pub mod semantics2;
pub mod semantics3;
pub mod translate;

pub use complex::{validate_model, AgentId, Face, ModelError, RawModel, SimplicialModel};
pub use formula::{parse, print, print_sugared, Formula, Signature, TopPolicy};
pub use modelgen::{FamilySpec, ModelFamily, ModelSpec};
pub use resolve::EvalError;
pub use semantics2::{eval2_face, eval2_facet};
pub use semantics3::{eval3, SemanticsMode, Truth3};
