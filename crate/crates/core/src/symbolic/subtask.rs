use std::fmt;

use super::SymbolicError;
use crate::ttl::{AtomName, LabelSet};

/// A sub-task the agent is asked to solve in one go.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubTask {
    /// Touch this object.
    Pos(AtomName),
    /// Touch any object other than this one.
    Neg(AtomName),
    /// Touch either object. Only produced by selection, never stored in a
    /// [`TaskMatrix`].
    PosChoice(AtomName, AtomName),
}

impl SubTask {
    pub fn choice(first: AtomName, second: AtomName) -> Result<Self, SymbolicError> {
        if first == second {
            return Err(SymbolicError::DegenerateChoice(first));
        }
        Ok(SubTask::PosChoice(first, second))
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, SubTask::Pos(_))
    }

    /// Whether proposition `p` fulfils this sub-task.
    pub fn fulfilled_by(&self, p: &AtomName) -> bool {
        match self {
            SubTask::Pos(a) => p == a,
            SubTask::Neg(a) => p != a,
            SubTask::PosChoice(a, b) => p == a || p == b,
        }
    }

    pub fn atoms(&self) -> Vec<&AtomName> {
        match self {
            SubTask::Pos(a) | SubTask::Neg(a) => vec![a],
            SubTask::PosChoice(a, b) => vec![a, b],
        }
    }
}

/// Free-function form of [`SubTask::fulfilled_by`].
pub fn fulfills(p: &AtomName, st: &SubTask) -> bool {
    st.fulfilled_by(p)
}

impl fmt::Display for SubTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubTask::Pos(a) => write!(f, "{a}"),
            SubTask::Neg(a) => write!(f, "{a}~"),
            SubTask::PosChoice(a, b) => write!(f, "{a}|{b}"),
        }
    }
}

/// Shaped reward for one environment step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RewardValue {
    /// Nothing was touched: -0.1.
    Idle,
    /// The current sub-task was fulfilled: +1.
    Fulfil,
    /// An object not asked for was touched: -1.
    Wrong,
}

impl RewardValue {
    pub fn value(self) -> f64 {
        match self {
            RewardValue::Idle => -0.1,
            RewardValue::Fulfil => 1.0,
            RewardValue::Wrong => -1.0,
        }
    }
}

/// Internal reward of the labels produced by one step against the current
/// sub-task. The environment emits at most one label per step.
pub fn internal_reward(labels: &LabelSet, current: &SubTask) -> Result<RewardValue, SymbolicError> {
    if labels.len() > 1 {
        return Err(SymbolicError::TooManyLabels(labels.len()));
    }
    Ok(match labels.single() {
        None => RewardValue::Idle,
        Some(p) if current.fulfilled_by(p) => RewardValue::Fulfil,
        Some(_) => RewardValue::Wrong,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(n: &str) -> AtomName {
        AtomName::new(n).unwrap()
    }

    #[test]
    fn fulfilment() {
        assert!(fulfills(&at("wood"), &SubTask::Pos(at("wood"))));
        assert!(!fulfills(&at("iron"), &SubTask::Pos(at("wood"))));
        assert!(fulfills(&at("grass"), &SubTask::Neg(at("wood"))));
        assert!(!fulfills(&at("wood"), &SubTask::Neg(at("wood"))));
        let choice = SubTask::choice(at("wood"), at("iron")).unwrap();
        assert!(fulfills(&at("iron"), &choice));
        assert!(fulfills(&at("wood"), &choice));
        assert!(!fulfills(&at("grass"), &choice));
    }

    #[test]
    fn choice_members_distinct() {
        assert!(SubTask::choice(at("a"), at("a")).is_err());
    }

    #[test]
    fn reward_cases() {
        let wood = SubTask::Pos(at("wood"));
        assert_eq!(
            internal_reward(&LabelSet::empty(), &wood).unwrap().value(),
            -0.1
        );
        assert_eq!(
            internal_reward(&LabelSet::singleton(at("wood")), &wood)
                .unwrap()
                .value(),
            1.0
        );
        assert_eq!(
            internal_reward(&LabelSet::singleton(at("iron")), &wood)
                .unwrap()
                .value(),
            -1.0
        );
        let not_wood = SubTask::Neg(at("wood"));
        assert_eq!(
            internal_reward(&LabelSet::singleton(at("grass")), &not_wood).unwrap(),
            RewardValue::Fulfil
        );
        assert_eq!(
            internal_reward(&LabelSet::singleton(at("wood")), &not_wood).unwrap(),
            RewardValue::Wrong
        );
        assert_eq!(
            internal_reward(&LabelSet::empty(), &not_wood).unwrap(),
            RewardValue::Idle
        );
        let choice = SubTask::choice(at("wood"), at("iron")).unwrap();
        assert_eq!(
            internal_reward(&LabelSet::singleton(at("iron")), &choice).unwrap(),
            RewardValue::Fulfil
        );
        assert_eq!(
            internal_reward(&LabelSet::singleton(at("axe")), &choice).unwrap(),
            RewardValue::Wrong
        );
    }

    #[test]
    fn reward_rejects_multiple_labels() {
        let two: LabelSet = [at("a"), at("b")].into_iter().collect();
        assert_eq!(
            internal_reward(&two, &SubTask::Pos(at("a"))),
            Err(SymbolicError::TooManyLabels(2))
        );
    }

    #[test]
    fn display() {
        assert_eq!(SubTask::Neg(at("toolshed")).to_string(), "toolshed~");
        assert_eq!(
            SubTask::choice(at("wood"), at("iron")).unwrap().to_string(),
            "wood|iron"
        );
    }
}
