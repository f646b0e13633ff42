//! Exact computation of Postnikov–Stanley polynomials `D_u^w` for finite Weyl
//! groups, together with the tooling needed to check that they are Lorentzian.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsystem`] builds crystallographic root systems (Bourbaki numbering)
//!   and the Chevalley coefficients of their coroots.
//! * [`weylgroup`] generates the Weyl group as integer matrices on the root
//!   lattice and exposes Bruhat covers, intervals and saturated chains.
//! * [`polynomial`] is a sparse multivariate polynomial type over `Q`.
//! * [`pscalc`] computes `D_u^w` by chain enumeration and, independently, by
//!   iterating the Chevalley formula in the Schubert basis.
//! * [`lorentzcheck`] decides the Lorentzian property exactly (M-convex support
//!   plus inertia of every derivative quadratic form).

pub mod error;
pub mod lattice;
pub mod lorentzcheck;
pub mod polynomial;
pub mod pscalc;
pub mod rootsystem;
pub mod weylgroup;

pub use error::{Error, Result};
pub use lorentzcheck::{
    check_mconvex, is_lorentzian, log_concavity_spot_check, quadratic_inertia, Inertia,
    LorentzianCertificate, LorentzianReport, MConvexReport, MConvexViolation, Reason,
};
pub use polynomial::{LinearForm, Monomial, SparsePoly};
pub use pscalc::{
    interval_distribution, ps_by_chains, ps_by_chevalley, richardson_degree, CohomClass, Method,
    PsResult, RichardsonDegree,
};
pub use rootsystem::{CartanDatum, CartanType, Root, RootSystem};
pub use weylgroup::{BruhatInterval, CoverEdge, ElementId, WeylElement, WeylGroup};
