//! Exact-arithmetic toolkit for the trigonometric (spin-)Calogero-Sutherland
//! model and the Haldane-Shastry spin chain.
//!
//! The pipeline goes: Dunkl operators acting on Laurent polynomials
//! ([`dunkl`]) produce nonsymmetric and (anti)symmetric Jack polynomials;
//! the fermionic wedge basis ([`wedge`]) diagonalises the effective spin
//! Hamiltonian combinatorially; evaluating everything at roots of unity
//! ([`freezing`]) produces motifs, energies, degeneracies and explicit
//! eigenvectors of the Haldane-Shastry chain ([`spinchain`]); the
//! lattice-derivative identities live in [`lagrange`].
//!
//! All symbolic computations use `BigRational` coefficients; floating point
//! only enters when evaluating at complex roots of unity.

pub mod combinatorics;
pub mod dunkl;
pub mod freezing;
pub mod lagrange;
pub mod polyring;
pub mod spinchain;
pub mod wedge;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout the symbolic layer.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational from `"p/q"` or `"p"` form.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("invalid rational: {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den == BigInt::from(0) {
                return Err(Error::InvalidInput(format!("zero denominator: {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid motif: {0}")]
    InvalidMotif(String),
    #[error("inexact polynomial division (nonzero remainder with {remainder_terms} terms)")]
    InexactDivision { remainder_terms: usize },
    #[error("singular linear system while building Jack polynomial: {0}")]
    SingularSystem(String),
    #[error("input lies in the wrong symmetry sector: {0}")]
    WrongSector(String),
    #[error("problem size exceeds limit: {0}")]
    SizeLimit(String),
    #[error("coupling parameter is non-generic: {0}")]
    NonGenericCoupling(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("2/3").unwrap(), ratio(2, 3));
        assert_eq!(parse_rat("-5").unwrap(), rat(-5));
        assert_eq!(parse_rat(" 7 / 2 ").unwrap(), ratio(7, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
