//! Graded equivariant cohomology computations on the GKM graph and on the
//! circuit-ideal presentation.

pub mod certificate;
pub mod classes;
pub mod graph_cohomology;
pub mod ideal;
pub mod poly;

pub use certificate::{check_isomorphism, Certificate, Counterexample, DegreeRow, RHO_SIGN};
pub use classes::{eta, evaluate_at_rho, is_gkm_class, mod2_classes, restrict_to_td, rho_generators, GkmClass};
pub use graph_cohomology::{graph_cohomology_dim, Coefficients};
pub use ideal::{presentation_ideal, quotient_hilbert, IdealPresentation};
pub use poly::{Monomial, MultiPoly};
