//! Molien series of compact matrix groups presented as a connected core —
//! a shared rotation angle on disjoint coordinate planes times a finite
//! factor — extended by commuting involutions.
//!
//! The main entry point is [`molien::molien_fubini`], which splits the Haar
//! average of `1/det(I - t*g)` into `2^n` coset contributions, expands each
//! integrand as a power series with trigonometric-polynomial coefficients,
//! and integrates the circle variable exactly. Independent cross-checks
//! live in [`oracle`]: Reynolds-projector invariant counts, trapezoid
//! quadrature, and sampled invariance tests of explicit polynomials. The
//! semidirect-structure checks behind the coset decomposition are in
//! [`group::verify_semidirect`].

pub mod algebra;
pub mod error;
pub mod group;
pub mod molien;
pub mod oracle;
pub mod specfile;

pub use algebra::{series_inv_det, Mat, Polynomial, PowerSeries, Scalar, TrigPoly};
pub use error::{Error, Result};
pub use group::{
    build_element, check_preserves_form, close_group, coset_reps, verify_semidirect, CosetSystem,
    DecompositionReport, FiniteGroup, GroupSpec,
};
pub use molien::{molien_finite, molien_fubini, molien_fubini_finite, molien_fubini_n1};
pub use oracle::{
    check_invariant, check_invariant_spec, quad_molien, reynolds_dim, reynolds_projector,
    sample_finite_invariant_dims,
};
pub use specfile::{parse_poly_file, parse_spec, NamedPolynomial, SpecFile};
