//! Policies: a uniform random walker, a shortest-path oracle and a linear
//! actor-critic learner.

mod a2c;
mod checkpoint;
mod features;
mod oracle;
mod train;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::gridworld::{Action, GridError, Observation};
use crate::symbolic::SymbolicError;

pub use a2c::{
    discounted_returns, gradient, loss, samples, softmax, A2CHyper, A2CParams, Gradient, LinearA2C,
    RmsProp, Sample, Transition, ACTIONS,
};
pub use checkpoint::{load_checkpoint, save_checkpoint, CHECKPOINT_HEADER};
pub use features::{dense, feature_index, features, Features, CELLS, FEATURE_DIM};
pub use oracle::GreedyOracle;
pub use train::{train, training_episode, CurvePoint, TaskMix, TrainConfig, TrainReport};

/// Maps an observation to an action.
pub trait Policy {
    fn act(&mut self, obs: &Observation, rng: &mut dyn RngCore) -> Action;

    /// Called before the first observation of every episode.
    fn reset(&mut self) {}
}

/// Picks one of the four actions uniformly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RandomWalker;

impl Policy for RandomWalker {
    fn act(&mut self, _: &Observation, rng: &mut dyn RngCore) -> Action {
        Action::ALL[rng.random_range(0..Action::ALL.len())]
    }
}

/// Agents selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AgentKind {
    Random,
    Oracle,
    A2C,
}

impl FromStr for AgentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(AgentKind::Random),
            "oracle" => Ok(AgentKind::Oracle),
            "a2c" => Ok(AgentKind::A2C),
            other => Err(format!(
                "unknown agent {other:?} (expected random, oracle or a2c)"
            )),
        }
    }
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AgentKind::Random => "random",
            AgentKind::Oracle => "oracle",
            AgentKind::A2C => "a2c",
        })
    }
}

#[derive(Debug, Error)]
pub enum AgentError {
    #[error("non-finite value after update: {0}")]
    NonFinite(&'static str),
    #[error("empty trajectory")]
    EmptyTrajectory,
    #[error("trajectory of {len} steps is longer than the horizon {horizon}")]
    TrajectoryTooLong { len: usize, horizon: usize },
    #[error("checkpoint line {line}: {message}")]
    Checkpoint { line: usize, message: String },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}
