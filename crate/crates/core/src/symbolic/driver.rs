use rand::RngCore;

use super::{
    extract, internal_reward, progress, select_subtask, RewardValue, SubTask, SymbolicError,
    TaskMatrix,
};
use crate::agents::Policy;
use crate::gridworld::{observe, Action, GridMap, Observation};
use crate::ttl::{AtomName, LabelSet, Trace, TtlFormula};

/// Progress through a formula's task matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmState {
    matrix: TaskMatrix,
    current: Option<SubTask>,
    steps_on_current: usize,
}

impl SmState {
    /// Expands concurrency, extracts the matrix and selects the first
    /// sub-task.
    pub fn new(formula: &TtlFormula) -> Result<Self, SymbolicError> {
        let matrix = extract(&formula.expand_concurrent())?;
        Ok(SmState::from_matrix(matrix))
    }

    pub fn from_matrix(matrix: TaskMatrix) -> Self {
        let current = select_subtask(&matrix);
        SmState {
            matrix,
            current,
            steps_on_current: 0,
        }
    }

    pub fn matrix(&self) -> &TaskMatrix {
        &self.matrix
    }

    pub fn current(&self) -> Option<&SubTask> {
        self.current.as_ref()
    }

    pub fn steps_on_current(&self) -> usize {
        self.steps_on_current
    }

    pub fn is_done(&self) -> bool {
        self.matrix.is_empty()
    }

    /// Rewards the labels of one step and moves on when they fulfil the
    /// current sub-task.
    pub fn react(&mut self, labels: &LabelSet) -> Result<RewardValue, SymbolicError> {
        let current = self.current.as_ref().ok_or(SymbolicError::NothingToDo)?;
        let reward = internal_reward(labels, current)?;
        self.steps_on_current += 1;
        if reward == RewardValue::Fulfil {
            let p = labels.single().expect("fulfilment carries a label");
            self.matrix = progress(&self.matrix, p);
            self.current = select_subtask(&self.matrix);
            self.steps_on_current = 0;
        }
        Ok(reward)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EpisodeConfig {
    pub step_cap: usize,
    /// Whether touching an object that does not fulfil the current sub-task
    /// consumes it. When false the agent bumps into it and stays put.
    pub consume_wrong: bool,
}

impl EpisodeConfig {
    pub const SUBTASK_CAP: usize = 40;
    pub const COMPLEX_CAP: usize = 120;

    pub fn with_cap(step_cap: usize) -> Self {
        EpisodeConfig {
            step_cap,
            consume_wrong: true,
        }
    }
}

impl Default for EpisodeConfig {
    fn default() -> Self {
        EpisodeConfig::with_cap(EpisodeConfig::COMPLEX_CAP)
    }
}

/// One line of the episode log.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub action: Action,
    pub label: Option<AtomName>,
    pub reward: f64,
    /// Sub-task in force when the action was taken.
    pub subtask: Option<SubTask>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome {
    pub labels: LabelSet,
    pub reward: RewardValue,
    /// The formula is fulfilled.
    pub done: bool,
    /// The step cap was reached without fulfilling the formula.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpisodeResult {
    pub reward: f64,
    pub steps: usize,
    pub success: bool,
    pub trace: Trace,
    pub log: Vec<StepRecord>,
    pub fulfilments: usize,
    pub wrong: usize,
    pub idle: usize,
}

impl EpisodeResult {
    /// `fulfilments - wrong - 0.1 * idle`, computed from the counts.
    pub fn closed_form_reward(&self) -> f64 {
        self.fulfilments as f64 - self.wrong as f64 - 0.1 * self.idle as f64
    }

    /// Episode log as CSV: `step,action,label,reward,current_subtask`.
    /// Empty labels are written as `-`.
    pub fn log_csv(&self) -> String {
        let mut out = String::from("step,action,label,reward,current_subtask\n");
        for s in &self.log {
            let label = s.label.as_ref().map_or("-".to_string(), |l| l.to_string());
            let task = s
                .subtask
                .as_ref()
                .map_or("-".to_string(), |t| t.to_string());
            out += &format!("{},{},{},{},{}\n", s.step, s.action, label, s.reward, task);
        }
        out
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        format!(
            "success={} steps={} reward={:.1}",
            self.success, self.steps, self.reward
        )
    }
}

/// One episode of a formula on a map, advanced a step at a time.
#[derive(Clone, Debug)]
pub struct SmSession {
    map: GridMap,
    state: SmState,
    config: EpisodeConfig,
    shown: Option<SubTask>,
    trace: Trace,
    log: Vec<StepRecord>,
    reward: f64,
    fulfilments: usize,
    wrong: usize,
    idle: usize,
}

impl SmSession {
    pub fn new(
        formula: &TtlFormula,
        map: GridMap,
        config: EpisodeConfig,
    ) -> Result<Self, SymbolicError> {
        Ok(SmSession::from_state(SmState::new(formula)?, map, config))
    }

    pub fn from_state(state: SmState, map: GridMap, config: EpisodeConfig) -> Self {
        SmSession {
            map,
            state,
            config,
            shown: None,
            trace: Trace::default(),
            log: Vec::new(),
            reward: 0.0,
            fulfilments: 0,
            wrong: 0,
            idle: 0,
        }
    }

    /// Shows `task` in every observation instead of the selected sub-task.
    /// Rewards are still computed against the formula.
    pub fn with_shown_task(mut self, task: SubTask) -> Self {
        self.shown = Some(task);
        self
    }

    pub fn map(&self) -> &GridMap {
        &self.map
    }

    pub fn state(&self) -> &SmState {
        &self.state
    }

    pub fn steps(&self) -> usize {
        self.log.len()
    }

    pub fn is_finished(&self) -> bool {
        self.state.is_done() || self.steps() >= self.config.step_cap
    }

    pub fn shown_task(&self) -> Option<&SubTask> {
        self.shown.as_ref().or(self.state.current())
    }

    pub fn observation(&self) -> Result<Observation, SymbolicError> {
        Ok(observe(&self.map, self.shown_task())?)
    }

    pub fn step(&mut self, action: Action) -> Result<StepOutcome, SymbolicError> {
        let current = self
            .state
            .current()
            .cloned()
            .ok_or(SymbolicError::NothingToDo)?;
        let consume_wrong = self.config.consume_wrong;
        let labels = self
            .map
            .step_with(action, |p| consume_wrong || current.fulfilled_by(p));
        let reward = self.state.react(&labels)?;
        match reward {
            RewardValue::Idle => self.idle += 1,
            RewardValue::Fulfil => self.fulfilments += 1,
            RewardValue::Wrong => self.wrong += 1,
        }
        self.reward += reward.value();
        self.log.push(StepRecord {
            step: self.log.len() + 1,
            action,
            label: labels.single().cloned(),
            reward: reward.value(),
            subtask: Some(current),
        });
        self.trace.push(labels.clone());
        let done = self.state.is_done();
        Ok(StepOutcome {
            labels,
            reward,
            done,
            truncated: !done && self.steps() >= self.config.step_cap,
        })
    }

    pub fn finish(self) -> EpisodeResult {
        EpisodeResult {
            reward: self.reward,
            steps: self.log.len(),
            success: self.state.is_done(),
            trace: self.trace,
            log: self.log,
            fulfilments: self.fulfilments,
            wrong: self.wrong,
            idle: self.idle,
        }
    }

    /// Lets `policy` act until the formula is fulfilled or the cap is hit.
    pub fn run(
        mut self,
        policy: &mut dyn Policy,
        rng: &mut dyn RngCore,
    ) -> Result<EpisodeResult, SymbolicError> {
        policy.reset();
        while !self.is_finished() {
            let obs = self.observation()?;
            let action = policy.act(&obs, rng);
            self.step(action)?;
        }
        Ok(self.finish())
    }
}

/// Runs one episode of `formula` on `map`.
pub fn run_sm(
    formula: &TtlFormula,
    map: GridMap,
    policy: &mut dyn Policy,
    config: &EpisodeConfig,
    rng: &mut dyn RngCore,
) -> Result<EpisodeResult, SymbolicError> {
    SmSession::new(formula, map, *config)?.run(policy, rng)
}

/// Like [`run_sm`], but the agent is shown `shown` instead of the selected
/// sub-task when given.
pub fn run_sm_shown(
    formula: &TtlFormula,
    shown: Option<SubTask>,
    map: GridMap,
    policy: &mut dyn Policy,
    config: &EpisodeConfig,
    rng: &mut dyn RngCore,
) -> Result<EpisodeResult, SymbolicError> {
    let mut session = SmSession::new(formula, map, *config)?;
    if let Some(task) = shown {
        session = session.with_shown_task(task);
    }
    session.run(policy, rng)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::agents::{GreedyOracle, RandomWalker};
    use crate::gridworld::{generate_map, Cell, ObjectCatalog, ObjectId, SplitPreset};
    use crate::ttl::{parse_ttl, ttl_satisfies};

    fn id(n: &str) -> ObjectId {
        ObjectId::from_name(n).unwrap()
    }

    // Replays a fixed action list.
    struct Script(Vec<Action>);

    impl Policy for Script {
        fn act(&mut self, _: &Observation, _: &mut dyn RngCore) -> Action {
            self.0.remove(0)
        }
    }

    #[test]
    fn adjacent_object_one_step() {
        let mut map = GridMap::empty(Cell::new(3, 3)).unwrap();
        map.place(Cell::new(3, 4), id("wood")).unwrap();
        let f = parse_ttl("wood").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = run_sm(
            &f,
            map,
            &mut GreedyOracle::new(),
            &EpisodeConfig::with_cap(40),
            &mut rng,
        )
        .unwrap();
        assert!(r.success);
        assert_eq!(r.steps, 1);
        assert_eq!(r.reward, 1.0);
    }

    #[test]
    fn running_example_scripted() {
        let mut map = GridMap::empty(Cell::new(1, 1)).unwrap();
        map.place(Cell::new(1, 2), id("wood")).unwrap();
        map.place(Cell::new(1, 3), id("grass")).unwrap();
        map.place(Cell::new(1, 4), id("workbench")).unwrap();
        map.place(Cell::new(1, 5), id("iron")).unwrap();
        map.place(Cell::new(2, 5), id("toolshed")).unwrap();
        let f = parse_ttl("((wood ; grass) | (iron ; axe)) ; workbench ; toolshed~").unwrap();
        let script = vec![Action::Right, Action::Right, Action::Right, Action::Right];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let session = SmSession::new(&f, map, EpisodeConfig::with_cap(10)).unwrap();
        assert_eq!(
            session.state().current(),
            Some(&SubTask::PosChoice(
                AtomName::new("wood").unwrap(),
                AtomName::new("iron").unwrap()
            ))
        );
        let r = session.run(&mut Script(script), &mut rng).unwrap();
        assert!(r.success);
        assert_eq!(r.fulfilments, 4);
        assert!(ttl_satisfies(&r.trace, &f).unwrap());
        assert_eq!(
            r.log_csv(),
            "step,action,label,reward,current_subtask\n1,right,wood,1,wood|iron\n2,right,grass,1,grass\n\
             3,right,workbench,1,workbench\n4,right,iron,1,toolshed~\n"
        );
        assert_eq!(r.summary(), "success=true steps=4 reward=4.0");
        let shown: Vec<String> = r
            .log
            .iter()
            .map(|s| s.subtask.as_ref().unwrap().to_string())
            .collect();
        assert_eq!(shown, ["wood|iron", "grass", "workbench", "toolshed~"]);
    }

    #[test]
    fn wrong_touch_without_consuming() {
        let mut map = GridMap::empty(Cell::new(3, 3)).unwrap();
        map.place(Cell::new(3, 4), id("iron")).unwrap();
        let f = parse_ttl("wood").unwrap();
        let config = EpisodeConfig {
            step_cap: 3,
            consume_wrong: false,
        };
        let mut session = SmSession::new(&f, map, config).unwrap();
        let out = session.step(Action::Right).unwrap();
        assert_eq!(out.reward, RewardValue::Wrong);
        assert_eq!(session.map().agent(), Cell::new(3, 3));
        assert_eq!(session.map().object_count(), 1);
        session.step(Action::Right).unwrap();
        let out = session.step(Action::Right).unwrap();
        assert!(out.truncated);
        let r = session.finish();
        assert_eq!(r.reward, -3.0);
        assert!(!r.success);
    }

    #[test]
    fn success_matches_evaluator_for_random_walks() {
        let split = ObjectCatalog::preset(SplitPreset::Medium).test;
        let formulas = [
            "wood ; grass",
            "wood~ ; iron",
            "(wood | iron) ; axe",
            "grass~",
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..400u64 {
            let f = parse_ttl(formulas[seed as usize % formulas.len()]).unwrap();
            let matrix = extract(&f).unwrap();
            let map = generate_map(&split, &matrix, 5, seed).unwrap();
            let r = run_sm(
                &f,
                map,
                &mut RandomWalker,
                &EpisodeConfig::with_cap(50),
                &mut rng,
            )
            .unwrap();
            assert_eq!(
                r.success,
                ttl_satisfies(&r.trace, &f).unwrap(),
                "seed {seed}"
            );
            if r.steps < 50 {
                assert!(r.success);
            }
            assert!((r.reward - r.closed_form_reward()).abs() < 1e-9);
        }
    }
}
