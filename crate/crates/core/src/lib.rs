//! Exact computations in the equitable presentation of `U_q(sl2)` and in its
//! positive even subalgebra.
//!
//! The crate is organised bottom-up:
//!
//! - [`coeff`]: Laurent polynomials in `q` over the rationals, the scalar ring.
//! - [`ncpoly`]: words over a generator alphabet and their linear combinations.
//! - [`oracle`]: PBW normal forms `x^r y^s z^t` in `U_q(sl2)`.
//! - [`present`]: the presented algebra on `nu_x, nu_y, nu_z` with its
//!   forbidden-pair table and reduction rules.
//! - [`linalg`], [`module`], [`classify`]: matrix representations, the
//!   modules `L(d, eps)` and `L(d)`, highest-weight extraction and
//!   intertwiners.
//! - [`verify`]: bundled verification suites.
//! - [`expr`], [`io`]: the text syntax and JSON schemas used by the CLI.

macro_rules! forward_binop {
    ($ty:ty, $Trait:ident, $method:ident) => {
        impl std::ops::$Trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                std::ops::$Trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$Trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                std::ops::$Trait::$method(&self, rhs)
            }
        }
        impl std::ops::$Trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                std::ops::$Trait::$method(self, &rhs)
            }
        }
    };
}

pub mod catalog;
pub mod classify;
pub mod coeff;
pub mod error;
pub mod expr;
pub mod io;
pub mod linalg;
pub mod module;
pub mod ncpoly;
pub mod oracle;
pub mod present;
pub mod verify;

pub use classify::{extract_highest_weight, gamma_iso, solve_alpha, GammaIso, HwData, X2Table};
pub use coeff::{LaurentPoly, QValue, Rational};
pub use error::{Error, Result};
pub use expr::{parse_expr, parse_translated, ExprAst, TermAst};
pub use linalg::Matrix;
pub use module::{
    act, build_l, build_l_eps, check_irreducible, check_module_relations, hom_space_dim, Eps, Mode, ModuleRep,
};
pub use ncpoly::{Alphabet, Gen, NCPoly, Word};
pub use oracle::{check_identity, expand, expand_all, normalize, Monomial, PbwForm};
pub use present::{
    classify_pair, enumerate_allowed, is_allowed, phi_image, reduce, NormalForm, PairClass, ReductionRule, Strategy,
};
pub use verify::{run_suite, Bounds, CheckResult, Status, SuiteName, SuiteReport};
