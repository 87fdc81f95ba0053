//! Finite-trace LTL, translations from TTL and the randomised equivalence
//! check between the two.

mod equivalence;
mod eval;
mod formula;
mod translate;

use thiserror::Error;

use crate::ttl::AtomName;

pub use equivalence::{
    check_prop1, verdicts, Counterexample, EquivalenceConfig, EquivalenceReport,
};
pub use eval::ltlf_satisfies;
pub use formula::LtlFormula;
pub use translate::{translate_strict, translate_tau1, translate_tau2};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LtlError {
    #[error("position {position} out of range for trace of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("formula contains a concurrent node; expand it first")]
    ConcurrentNotExpanded,
    #[error("atom {0} is not in the alphabet")]
    AtomOutsideAlphabet(AtomName),
    #[error("no proposition other than {0} in the alphabet to witness its negation")]
    EmptyWitnessAlphabet(AtomName),
}
