//! Catalogue of identities between `x, y, z` and `nx, ny, nz, x2, y2, z2`.
//!
//! Each side is a sum of products of text fragments, so that factors such as
//! `nx * (q*ny*nz - q^-1*nz*ny)` can be written without nested generator
//! parentheses. Identities that carry a denominator are stored multiplied
//! through by it.

use crate::error::Result;
use crate::expr::{parse_expr, parse_translated};
use crate::ncpoly::{Alphabet, NCPoly};

/// A sum of products of fragments.
pub type Side = &'static [&'static [&'static str]];

#[derive(Clone, Copy, Debug)]
pub struct Identity {
    pub id: &'static str,
    pub lhs: Side,
    pub rhs: Side,
}

fn render(side: Side) -> String {
    side.iter()
        .map(|prod| {
            if prod.len() == 1 {
                prod[0].to_string()
            } else {
                prod.iter().map(|f| format!("({f})")).collect::<String>()
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn build(side: Side, alphabet: Alphabet, parse: impl Fn(&str) -> Result<NCPoly>) -> Result<NCPoly> {
    let mut out = NCPoly::zero(alphabet);
    for prod in side {
        let mut p = NCPoly::one(alphabet);
        for f in *prod {
            p = p.checked_mul(&parse(f)?)?;
        }
        out = out.checked_add(&p)?;
    }
    Ok(out)
}

impl Identity {
    /// `lhs = rhs` as text.
    pub fn statement(&self) -> String {
        format!("{} = {}", render(self.lhs), render(self.rhs))
    }

    /// Both sides mapped into `U` (letters of `A` are substituted).
    pub fn in_u(&self) -> Result<(NCPoly, NCPoly)> {
        Ok((build(self.lhs, Alphabet::U, parse_translated)?, build(self.rhs, Alphabet::U, parse_translated)?))
    }

    /// Both sides as polynomials over `A`; fails if a `U` letter occurs.
    pub fn in_a(&self) -> Result<(NCPoly, NCPoly)> {
        let p = |s: &str| parse_expr(s, Alphabet::A);
        Ok((build(self.lhs, Alphabet::A, p)?, build(self.rhs, Alphabet::A, p)?))
    }

    /// `lhs - rhs` over `A`.
    pub fn difference_in_a(&self) -> Result<NCPoly> {
        let (l, r) = self.in_a()?;
        l.checked_sub(&r)
    }

    /// `lhs - rhs` over `U`.
    pub fn difference_in_u(&self) -> Result<NCPoly> {
        let (l, r) = self.in_u()?;
        l.checked_sub(&r)
    }
}

macro_rules! identity {
    ($id:expr, $lhs:expr => $rhs:expr) => {
        Identity { id: $id, lhs: $lhs, rhs: $rhs }
    };
}

/// The equitable relations, multiplied by `q - q^-1`.
pub const EQUITABLE: [Identity; 3] = [
    identity!("equitable/xy", &[&["q*x*y - q^-1*y*x"]] => &[&["q - q^-1"]]),
    identity!("equitable/yz", &[&["q*y*z - q^-1*z*y"]] => &[&["q - q^-1"]]),
    identity!("equitable/zx", &[&["q*z*x - q^-1*x*z"]] => &[&["q - q^-1"]]),
];

/// Single-letter commutations between `x, y, z` and the `nu` elements.
pub const SINGLE_COMMUTATIONS: [Identity; 6] = [
    identity!("single-commutation/x-ny", &[&["x*ny"]] => &[&["q^2*ny*x"]]),
    identity!("single-commutation/x-nz", &[&["x*nz"]] => &[&["q^-2*nz*x"]]),
    identity!("single-commutation/y-nz", &[&["y*nz"]] => &[&["q^2*nz*y"]]),
    identity!("single-commutation/y-nx", &[&["y*nx"]] => &[&["q^-2*nx*y"]]),
    identity!("single-commutation/z-nx", &[&["z*nx"]] => &[&["q^2*nx*z"]]),
    identity!("single-commutation/z-ny", &[&["z*ny"]] => &[&["q^-2*ny*z"]]),
];

/// Variants of three of [`SINGLE_COMMUTATIONS`] with the letter on the left
/// squared and the one on the right not. These do not hold.
pub const SQUARED_LEFT_COMMUTATIONS: [Identity; 3] = [
    identity!("squared-left/x2-nz", &[&["x2*nz"]] => &[&["q^-2*nz*x"]]),
    identity!("squared-left/y2-nx", &[&["y2*nx"]] => &[&["q^-2*nx*y"]]),
    identity!("squared-left/z2-ny", &[&["z2*ny"]] => &[&["q^-2*ny*z"]]),
];

/// The corrected readings of [`SQUARED_LEFT_COMMUTATIONS`], in the same order.
pub const SQUARED_LEFT_CORRECTED: [Identity; 3] =
    [SINGLE_COMMUTATIONS[1], SINGLE_COMMUTATIONS[3], SINGLE_COMMUTATIONS[5]];

/// Identities verified in `U_q(sl2)` by the relations suite.
pub static RELATIONS: &[Identity] = &[
    identity!("flip/xy", &[&["x*y"]] => &[&["q^-2*y*x - q^-2 + 1"]]),
    identity!("flip/yx", &[&["y*x"]] => &[&["q^2*x*y - q^2 + 1"]]),
    identity!("flip/yz", &[&["y*z"]] => &[&["q^-2*z*y - q^-2 + 1"]]),
    identity!("flip/zy", &[&["z*y"]] => &[&["q^2*y*z - q^2 + 1"]]),
    identity!("flip/zx", &[&["z*x"]] => &[&["q^-2*x*z - q^-2 + 1"]]),
    identity!("flip/xz", &[&["x*z"]] => &[&["q^2*z*x - q^2 + 1"]]),
    identity!("nu/x-second-form", &[&["nx"]] => &[&["q^-1 - q^-1*z*y"]]),
    identity!("nu/y-second-form", &[&["ny"]] => &[&["q^-1 - q^-1*x*z"]]),
    identity!("nu/z-second-form", &[&["nz"]] => &[&["q^-1 - q^-1*y*x"]]),
    identity!("pair/xy", &[&["x*y"]] => &[&["1 - q^-1*nz"]]),
    identity!("pair/yx", &[&["y*x"]] => &[&["1 - q*nz"]]),
    identity!("pair/yz", &[&["y*z"]] => &[&["1 - q^-1*nx"]]),
    identity!("pair/zy", &[&["z*y"]] => &[&["1 - q*nx"]]),
    identity!("pair/zx", &[&["z*x"]] => &[&["1 - q^-1*ny"]]),
    identity!("pair/xz", &[&["x*z"]] => &[&["1 - q*ny"]]),
    SINGLE_COMMUTATIONS[0],
    SINGLE_COMMUTATIONS[1],
    SINGLE_COMMUTATIONS[2],
    SINGLE_COMMUTATIONS[3],
    SINGLE_COMMUTATIONS[4],
    SINGLE_COMMUTATIONS[5],
    identity!("square-commutation/x2-ny", &[&["x2*ny"]] => &[&["q^4*ny*x2"]]),
    identity!("square-commutation/x2-nz", &[&["x2*nz"]] => &[&["q^-4*nz*x2"]]),
    identity!("square-commutation/y2-nz", &[&["y2*nz"]] => &[&["q^4*nz*y2"]]),
    identity!("square-commutation/y2-nx", &[&["y2*nx"]] => &[&["q^-4*nx*y2"]]),
    identity!("square-commutation/z2-nx", &[&["z2*nx"]] => &[&["q^4*nx*z2"]]),
    identity!("square-commutation/z2-ny", &[&["z2*ny"]] => &[&["q^-4*ny*z2"]]),
    identity!("square-product/x2y2", &[&["x2*y2"]] => &[&["1 - q^-2*(q + q^-1)*nz + q^-4*nz^2"]]),
    identity!("square-product/y2z2", &[&["y2*z2"]] => &[&["1 - q^-2*(q + q^-1)*nx + q^-4*nx^2"]]),
    identity!("square-product/z2x2", &[&["z2*x2"]] => &[&["1 - q^-2*(q + q^-1)*ny + q^-4*ny^2"]]),
    identity!("square-product/y2x2", &[&["y2*x2"]] => &[&["1 - q^2*(q + q^-1)*nz + q^4*nz^2"]]),
    identity!("square-product/z2y2", &[&["z2*y2"]] => &[&["1 - q^2*(q + q^-1)*nx + q^4*nx^2"]]),
    identity!("square-product/x2z2", &[&["x2*z2"]] => &[&["1 - q^2*(q + q^-1)*ny + q^4*ny^2"]]),
    identity!("square-product/xyxy-via-pairs", &[&["x*y*x*y"]] => &[&["1 - 2*q^-1*nz + q^-2*nz^2"]]),
    identity!(
        "square-product/xyxy-via-flips",
        &[&["x*y*x*y"]] => &[&["q^2*x2*y2"], &["1 - q^2", "1 - q^-1*nz"]]
    ),
    identity!("square-nu/x2-nx", &[&["x2*nx"]] => &[&["q^-1*x2 - q^-1 + q^2*ny + q^-2*nz - q*ny*nz"]]),
    identity!("square-nu/y2-ny", &[&["y2*ny"]] => &[&["q^-1*y2 - q^-1 + q^2*nz + q^-2*nx - q*nz*nx"]]),
    identity!("square-nu/z2-nz", &[&["z2*nz"]] => &[&["q^-1*z2 - q^-1 + q^2*nx + q^-2*ny - q*nx*ny"]]),
    identity!("square-nu/nx-x2", &[&["nx*x2"]] => &[&["q^-1*x2 - q^-1 + q^-2*ny + q^2*nz - q*ny*nz"]]),
    identity!("square-nu/ny-y2", &[&["ny*y2"]] => &[&["q^-1*y2 - q^-1 + q^-2*nz + q^2*nx - q*nz*nx"]]),
    identity!("square-nu/nz-z2", &[&["nz*z2"]] => &[&["q^-1*z2 - q^-1 + q^-2*nx + q^2*ny - q*nx*ny"]]),
    identity!("square-nu/x2-z-y", &[&["x2*z*y"]] => &[&["1 - q^3*ny - q^-1*nz + q^2*ny*nz"]]),
    identity!(
        "square-in-nu/x2",
        &[&["q - q^-1", "x2"]] => &[&["q - q^-1"], &["-q*ny*nz + q^-1*nz*ny"]]
    ),
    identity!(
        "square-in-nu/y2",
        &[&["q - q^-1", "y2"]] => &[&["q - q^-1"], &["-q*nz*nx + q^-1*nx*nz"]]
    ),
    identity!(
        "square-in-nu/z2",
        &[&["q - q^-1", "z2"]] => &[&["q - q^-1"], &["-q*nx*ny + q^-1*ny*nx"]]
    ),
    identity!(
        "nu-in-squares/nx",
        &[&["q^2 - q^-2", "q + q^-1", "nx"]]
            => &[&["q^2 - q^-2", "q^2 + q^-2"], &["-q^4*y2*z2 + q^-4*z2*y2"]]
    ),
    identity!(
        "nu-in-squares/ny",
        &[&["q^2 - q^-2", "q + q^-1", "ny"]]
            => &[&["q^2 - q^-2", "q^2 + q^-2"], &["-q^4*z2*x2 + q^-4*x2*z2"]]
    ),
    identity!(
        "nu-in-squares/nz",
        &[&["q^2 - q^-2", "q + q^-1", "nz"]]
            => &[&["q^2 - q^-2", "q^2 + q^-2"], &["-q^4*x2*y2 + q^-4*y2*x2"]]
    ),
    DEFINING[0],
    DEFINING[1],
    DEFINING[2],
    DEFINING[3],
    DEFINING[4],
    DEFINING[5],
    DEFINING[6],
    DEFINING[7],
    DEFINING[8],
    DEFINING[9],
    DEFINING[10],
    DEFINING[11],
];

/// The twelve defining relations of the presented algebra, in the letters
/// `nx, ny, nz` only; the bracket relations are multiplied by `q - q^-1`.
pub const DEFINING: [Identity; 12] = [
    identity!(
        "defining/cubic-x-y",
        &[&["q^3*nx*nx*ny - (q + q^-1)*nx*ny*nx + q^-3*ny*nx*nx"]]
            => &[&["(q^2 - q^-2)*(q - q^-1)*nx"]]
    ),
    identity!(
        "defining/cubic-y-z",
        &[&["q^3*ny*ny*nz - (q + q^-1)*ny*nz*ny + q^-3*nz*ny*ny"]]
            => &[&["(q^2 - q^-2)*(q - q^-1)*ny"]]
    ),
    identity!(
        "defining/cubic-z-x",
        &[&["q^3*nz*nz*nx - (q + q^-1)*nz*nx*nz + q^-3*nx*nz*nz"]]
            => &[&["(q^2 - q^-2)*(q - q^-1)*nz"]]
    ),
    identity!(
        "defining/cubic-y-x",
        &[&["q^-3*ny*ny*nx - (q + q^-1)*ny*nx*ny + q^3*nx*ny*ny"]]
            => &[&["(q^2 - q^-2)*(q - q^-1)*ny"]]
    ),
    identity!(
        "defining/cubic-z-y",
        &[&["q^-3*nz*nz*ny - (q + q^-1)*nz*ny*nz + q^3*ny*nz*nz"]]
            => &[&["(q^2 - q^-2)*(q - q^-1)*nz"]]
    ),
    identity!(
        "defining/cubic-x-z",
        &[&["q^-3*nx*nx*nz - (q + q^-1)*nx*nz*nx + q^3*nz*nx*nx"]]
            => &[&["(q^2 - q^-2)*(q - q^-1)*nx"]]
    ),
    identity!(
        "defining/bracket-x-left",
        &[&["nx", "q*ny*nz - q^-1*nz*ny"]]
            => &[&["q - q^-1", "nx - q^-2*ny - q^2*nz"], &["q^2*ny*nz - q^-2*nz*ny"]]
    ),
    identity!(
        "defining/bracket-y-left",
        &[&["ny", "q*nz*nx - q^-1*nx*nz"]]
            => &[&["q - q^-1", "ny - q^-2*nz - q^2*nx"], &["q^2*nz*nx - q^-2*nx*nz"]]
    ),
    identity!(
        "defining/bracket-z-left",
        &[&["nz", "q*nx*ny - q^-1*ny*nx"]]
            => &[&["q - q^-1", "nz - q^-2*nx - q^2*ny"], &["q^2*nx*ny - q^-2*ny*nx"]]
    ),
    identity!(
        "defining/bracket-x-right",
        &[&["q*ny*nz - q^-1*nz*ny", "nx"]]
            => &[&["q - q^-1", "nx - q^2*ny - q^-2*nz"], &["q^2*ny*nz - q^-2*nz*ny"]]
    ),
    identity!(
        "defining/bracket-y-right",
        &[&["q*nz*nx - q^-1*nx*nz", "ny"]]
            => &[&["q - q^-1", "ny - q^2*nz - q^-2*nx"], &["q^2*nz*nx - q^-2*nx*nz"]]
    ),
    identity!(
        "defining/bracket-z-right",
        &[&["q*nx*ny - q^-1*ny*nx", "nz"]]
            => &[&["q - q^-1", "nz - q^2*nx - q^-2*ny"], &["q^2*nx*ny - q^-2*ny*nx"]]
    ),
];

/// `x2, y2, z2` expressed through `nx, ny, nz`, multiplied by `q - q^-1`.
pub const SQUARE_DEFINITIONS: [Identity; 3] = [
    identity!(
        "square-definition/x2",
        &[&["q - q^-1", "x2"]] => &[&["q - q^-1"], &["-q*ny*nz + q^-1*nz*ny"]]
    ),
    identity!(
        "square-definition/y2",
        &[&["q - q^-1", "y2"]] => &[&["q - q^-1"], &["-q*nz*nx + q^-1*nx*nz"]]
    ),
    identity!(
        "square-definition/z2",
        &[&["q - q^-1", "z2"]] => &[&["q - q^-1"], &["-q*nx*ny + q^-1*ny*nx"]]
    ),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::check_identity;

    #[test]
    fn every_catalogued_identity_holds() {
        for id in RELATIONS.iter().chain(&EQUITABLE).chain(&SQUARE_DEFINITIONS) {
            let (l, r) = id.in_u().unwrap();
            assert!(check_identity(&l, &r), "{}: {}", id.id, id.statement());
        }
    }

    #[test]
    fn squared_left_variants_fail() {
        for id in &SQUARED_LEFT_COMMUTATIONS {
            let (l, r) = id.in_u().unwrap();
            assert!(!check_identity(&l, &r), "{}", id.id);
        }
    }

    #[test]
    fn defining_relations_parse_over_a() {
        for id in DEFINING.iter().chain(&SQUARE_DEFINITIONS) {
            assert!(id.in_a().is_ok());
        }
        assert!(EQUITABLE[0].in_a().is_err());
    }

    #[test]
    fn statements_render() {
        assert_eq!(SINGLE_COMMUTATIONS[0].statement(), "x*ny = q^2*ny*x");
        assert_eq!(
            DEFINING[6].statement(),
            "(nx)(q*ny*nz - q^-1*nz*ny) = (q - q^-1)(nx - q^-2*ny - q^2*nz) + q^2*ny*nz - q^-2*nz*ny"
        );
    }
}
