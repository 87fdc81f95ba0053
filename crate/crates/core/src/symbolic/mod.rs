//! Sub-task extraction, progression, selection and the episode driver.

mod driver;
mod matrix;
mod subtask;

use thiserror::Error;

use crate::gridworld::GridError;
use crate::ttl::AtomName;

pub use driver::{
    run_sm, run_sm_shown, EpisodeConfig, EpisodeResult, SmSession, SmState, StepOutcome, StepRecord,
};
pub use matrix::{extract, progress, select_subtask, TaskMatrix};
pub use subtask::{fulfills, internal_reward, RewardValue, SubTask};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("choice between {0} and itself")]
    DegenerateChoice(AtomName),
    #[error("{0} labels in one step; at most one is allowed")]
    TooManyLabels(usize),
    #[error("choices cannot be stored in a task matrix")]
    ChoiceInMatrix,
    #[error("formula contains a concurrent node; expand it first")]
    ConcurrentNotExpanded,
    #[error("formula has nothing to do")]
    NothingToDo,
    #[error(transparent)]
    Grid(#[from] GridError),
}
