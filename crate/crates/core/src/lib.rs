//! Exact polynomial form of the trigonometric Olshanetsky–Perelomov
//! Hamiltonian in orbit variables, built from Weyl orbits of weights.

pub mod error;
pub mod hamiltonian;
pub mod nucoef;
pub mod numcheck;
pub mod orbitalgebra;
pub mod poly;
pub mod records;
pub mod rootdata;
pub mod spectral;
pub mod weight;
pub mod weylorbit;

pub use error::{Error, Result};
pub use hamiltonian::{AlgebraicOperator, FlagOptions, FlagReport};
pub use nucoef::{NuCoefficient, UniPoly};
pub use orbitalgebra::{grading, Engine, MExpansion};
pub use poly::{Coefficient, Exponent, IntTauPoly, NuTauPoly, RatTauPoly, TauPolynomial};
pub use records::{Record, RecordKind};
pub use rootdata::{Family, PositiveRoot, RootSystem};
pub use spectral::{flag_angle_cos, flag_angle_cos_squared, Degeneracy, Eigenstate, SpectrumRow};
pub use weight::Weight;
pub use weylorbit::{dominant_conjugate, orbit_size, WeylOrbit};
