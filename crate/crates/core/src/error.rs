// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::fraction::Fraction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parabola is not invariant under the chain's period map")]
    NotInvariant,

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("peel step could not certify the fundamental domain: {0}")]
    PeelFailure(String),

    #[error("no cycle within {max_steps} steps")]
    NoCycle { max_steps: usize },

    #[error("step budget exceeded: {steps} steps requested, budget is {budget}")]
    StepBudget { steps: u64, budget: u64 },

    #[error("invariant violated at step {step}, slope {slope}: {detail}")]
    Invariant { step: usize, slope: Fraction, detail: String },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
