//! Exact-arithmetic engine for PBW deformations of skew group algebras.
//!
//! Given a finite group `G` acting linearly on `V` over a cyclotomic field,
//! and a parameter `kappa` mapping `V wedge V` into `(k + V) (x) kG`, the
//! engine decides whether the filtered quotient of `T(V)#G` by the relations
//! `vw - wv - kappa(v,w)` has the Poincare-Birkhoff-Witt property, computes
//! normal forms and products in the quotient, evaluates Koszul-complex
//! cochain differentials and brackets, and solves for the spaces of
//! admissible parameters.

pub mod cohomology;
pub mod group;
pub mod kappa;
pub mod linalg;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod solver;

pub use cohomology::{Cochain, RepresentativeSpace};
pub use group::{Group, GroupElement};
pub use kappa::{ConditionReport, GaugeMap, KappaParameter, LieOrbifoldReport};
pub use linalg::{Matrix, Subspace};
pub use poly::Poly;
pub use rewrite::{FreeElement, PbwElement, TPoly};
pub use scalar::{parse_scalar, CyclotomicContext, Scalar};
pub use solver::ParameterSpace;
