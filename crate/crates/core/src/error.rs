use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lorentz::CausalCharacter;

/// Failure to parse an expression, pointing at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: expected ", self.offset)?;
        for (i, tok) in self.expected.iter().enumerate() {
            if i > 0 {
                f.write_str(if i + 1 == self.expected.len() { " or " } else { ", " })?;
            }
            f.write_str(tok)?;
        }
        Ok(())
    }
}

impl core::error::Error for ParseError {}

/// Which frame quantity lost (or changed) its causal character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameVector {
    Ruling,
    CentralNormal,
    StrictionVelocity,
    CentralTangent,
}

impl fmt::Display for FrameVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameVector::Ruling => "ruling",
            FrameVector::CentralNormal => "central normal",
            FrameVector::StrictionVelocity => "striction velocity",
            FrameVector::CentralTangent => "central tangent",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A component was NaN or infinite.
    NonFinite,
    /// Normalization of a null or zero vector.
    NullVector,
    Parse(ParseError),
    /// Division by zero, square root of a negative number or overflow while evaluating.
    Domain { at: f64, reason: &'static str },
    InvalidInput(String),
    /// Supplied derivatives disagree with finite differences of the position.
    InconsistentDerivatives { order: usize, at: f64 },
    NullTangent { at: f64 },
    DegenerateIndicatrix { at: f64 },
    SingularPoint { u: f64, v: f64 },
    CylindricalRuling { at: f64 },
    NullSphericalImage { at: f64 },
    NullTransition { vector: FrameVector, at: f64 },
    /// The frame has a degenerate sub-interval (k1 below threshold); use
    /// `surfaces::frame_segments` to analyse the regular pieces.
    DegenerateRegion { at: f64 },
    CharacterMismatch { striction: CausalCharacter, ruling: CausalCharacter },
    DegenerateK1 { at: f64 },
    KindMismatch(String),
    NotDevelopable { which: &'static str, deviation: f64 },
    FrameDegeneration { at: f64 },
    DegenerateF { at: f64 },
    CharacterViolation { at: f64 },
}

impl Error {
    /// Stable identifier of the error kind, used in reports and CLI messages.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite => "NonFinite",
            Error::NullVector => "NullVector",
            Error::Parse(_) => "ParseError",
            Error::Domain { .. } => "DomainError",
            Error::InvalidInput(_) => "InvalidInput",
            Error::InconsistentDerivatives { .. } => "InconsistentDerivatives",
            Error::NullTangent { .. } => "NullTangent",
            Error::DegenerateIndicatrix { .. } => "DegenerateIndicatrix",
            Error::SingularPoint { .. } => "SingularPoint",
            Error::CylindricalRuling { .. } => "CylindricalRuling",
            Error::NullSphericalImage { .. } => "NullSphericalImage",
            Error::NullTransition { .. } => "NullTransition",
            Error::DegenerateRegion { .. } => "DegenerateRegion",
            Error::CharacterMismatch { .. } => "CharacterMismatch",
            Error::DegenerateK1 { .. } => "DegenerateK1",
            Error::KindMismatch(_) => "KindMismatch",
            Error::NotDevelopable { .. } => "NotDevelopable",
            Error::FrameDegeneration { .. } => "FrameDegeneration",
            Error::DegenerateF { .. } => "DegenerateF",
            Error::CharacterViolation { .. } => "CharacterViolation",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => f.write_str("non-finite vector component"),
            Error::NullVector => f.write_str("cannot normalize a null or zero vector"),
            Error::Parse(e) => e.fmt(f),
            Error::Domain { at, reason } => write!(f, "domain error at u = {at}: {reason}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::InconsistentDerivatives { order, at } => {
                write!(f, "derivative of order {order} inconsistent with position at u = {at}")
            }
            Error::NullTangent { at } => write!(f, "curve velocity is null or zero at u = {at}"),
            Error::DegenerateIndicatrix { at } => {
                write!(f, "tangent indicatrix is stationary near u = {at}")
            }
            Error::SingularPoint { u, v } => write!(f, "singular surface point at (u, v) = ({u}, {v})"),
            Error::CylindricalRuling { at } => write!(f, "ruling derivative vanishes at u = {at}"),
            Error::NullSphericalImage { at } => {
                write!(f, "spherical image of the ruling is null at u = {at}")
            }
            Error::NullTransition { vector, at } => {
                write!(f, "{vector} becomes null or changes causal character at u = {at}")
            }
            Error::DegenerateRegion { at } => {
                write!(f, "k1 vanishes near u = {at}; analyse the regular segments separately")
            }
            Error::CharacterMismatch { striction, ruling } => write!(
                f,
                "striction tangent is {striction:?} but the ruling is {ruling:?}"
            ),
            Error::DegenerateK1 { at } => write!(f, "k1 vanishes at s = {at}"),
            Error::KindMismatch(msg) => write!(f, "surface kinds differ: {msg}"),
            Error::NotDevelopable { which, deviation } => {
                write!(f, "surface {which} is not developable (max |T - q| = {deviation:e})")
            }
            Error::FrameDegeneration { at } => {
                write!(f, "frame became degenerate during integration at phi = {at}")
            }
            Error::DegenerateF { at } => write!(f, "curvature ratio f vanishes at phi = {at}"),
            Error::CharacterViolation { at } => {
                write!(f, "reconstructed striction tangent is (nearly) null at s = {at}")
            }
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
