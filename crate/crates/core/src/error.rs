// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Every failure the library reports. Messages name the violated precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular substitution: determinant is zero")]
    SingularSubstitution,
    #[error("zero form: all coefficients vanish")]
    ZeroForm,
    #[error("non-integral form: normalize first")]
    NotIntegral,
    #[error("constant polynomial has no resultant with its derivative")]
    ConstantPolynomial,
    #[error("not genus 2: J10 = 0")]
    NotGenus2,
    #[error("J2 = 0: use t-invariants")]
    UseTInvariants,
    #[error("{0}")]
    BranchInvariant(String),
    #[error("point lies on J30 = 0: use dihedral model")]
    UseDihedralModel,
    #[error("key not on the involution locus")]
    NotOnInvolutionLocus,
    #[error("degenerate dihedral invariants: {0}")]
    DegenerateDihedral(String),
    #[error("obstruction undecided: {0}")]
    Undecided(String),
    #[error("point search exhausted within bound {0}")]
    SearchExhausted(u64),
    #[error("reconstruction failed self-verification")]
    VerificationFailed,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed key: {0}")]
    MalformedKey(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
