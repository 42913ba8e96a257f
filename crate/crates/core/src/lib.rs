//! Exact computations with frozen Jacobian algebras of ice quivers with
//! potential: Gröbner bases, finite-dimensional algebra and module theory,
//! the four-term bimodule complex and its verification, and the structural
//! checks on the boundary algebra.
//!
//! All algorithms are generic over an exact [`Field`]. The aliases at the
//! bottom of this file fix the two supported scalar types.

pub mod complexcheck;
pub mod cyverify;
pub mod fdalg;
pub mod field;
pub mod jacobian;
pub mod linalg;
pub mod ncgb;
pub mod parse;
pub mod pipeline;
pub mod potential;
pub mod quiver;

pub use field::{Field, Fp, Q};
pub use ncgb::{buchberger, Certification, Finiteness, GbOptions, GbStatus, GroebnerBasis, MonomialOrder, NormalWordBasis};
pub use parse::{parse_ice_qp, print_ice_qp, FieldSpec, ParseError, QpFile};
pub use potential::Potential;
pub use quiver::{compose, Arrow, Element, IceQuiver, Path, Violation};

pub type RationalElement = Element<Q>;
pub type ModpElement = Element<Fp>;
pub type RationalPotential = Potential<Q>;
pub type ModpPotential = Potential<Fp>;
pub type RationalGroebnerBasis = GroebnerBasis<Q>;
pub type ModpGroebnerBasis = GroebnerBasis<Fp>;
pub type RationalAlgebra = fdalg::FDAlgebra<Q>;
pub type ModpAlgebra = fdalg::FDAlgebra<Fp>;
