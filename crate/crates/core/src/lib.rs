//! Task Temporal Logic instructions for a crafting gridworld: the logic and
//! its LTLf translations, a symbolic module that turns formulas into
//! sub-tasks and rewards, the environment, agents and an experiment harness.

pub mod agents;
pub mod gridworld;
pub mod harness;
pub mod ltl;
pub mod seed;
pub mod symbolic;
pub mod ttl;
