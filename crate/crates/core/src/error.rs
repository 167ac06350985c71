use std::fmt;

use num_complex::Complex64;

/// Named singular locations of the identity's argument maps and closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Singularity {
    /// Pole of the prefactor and of the closed form at x = 0.
    PoleAtZero,
    /// Branch point of the closed form and pole of both maps at x = 1.
    BranchPointOne,
    /// Branch point of the closed form and pole of both maps at x = -1/3.
    BranchPointMinusThird,
}

impl Singularity {
    pub const ALL: [Singularity; 3] = [
        Singularity::PoleAtZero,
        Singularity::BranchPointOne,
        Singularity::BranchPointMinusThird,
    ];

    pub fn location(self) -> f64 {
        match self {
            Singularity::PoleAtZero => 0.0,
            Singularity::BranchPointOne => 1.0,
            Singularity::BranchPointMinusThird => -1.0 / 3.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Singularity::PoleAtZero => "pole x=0",
            Singularity::BranchPointOne => "branch point x=1",
            Singularity::BranchPointMinusThird => "branch point x=-1/3",
        }
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument hit a singular or excluded value.
    #[error("domain error: {name} = {re}{im:+}i ({condition})", re = .value.re, im = .value.im)]
    Domain {
        name: &'static str,
        value: Complex64,
        condition: &'static str,
    },

    #[error("singular point: z = {re}{im:+}i is within the exclusion radius of the {which}", re = .z.re, im = .z.im)]
    SingularPoint { z: Complex64, which: Singularity },

    #[error("{routine} did not converge within {iterations} iterations")]
    NonConvergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("quadrature tolerance not reached: error estimate {estimate:e} exceeds {requested:e}")]
    ToleranceNotReached { estimate: f64, requested: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: Complex64, condition: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            condition,
        }
    }

    /// True for errors caused by the arguments rather than by the numerics.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. } | Error::SingularPoint { .. } | Error::InvalidConfig(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
