//! Experiment orchestration: binary choice map sweeps, the complex
//! instruction suite, sub-task evaluations and report emission.

mod corpus;
mod report;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::agents::{training_episode, GreedyOracle, LinearA2C, Policy, RandomWalker, TaskMix};
use crate::gridworld::{
    generate_bcm, generate_map, GridError, GridMap, ObjectCatalog, ObjectId, SplitPreset,
};
use crate::seed::{sub_seed, STREAM_BCM_PAIR, STREAM_EVAL_AGENT, STREAM_EVAL_MAP};
use crate::symbolic::{
    extract, run_sm_shown, EpisodeConfig, EpisodeResult, SubTask, SymbolicError,
};
use crate::ttl::TtlFormula;

pub use corpus::{complex_corpus, COMPLEX_CORPUS};
pub use report::{read_csv, render_table, to_csv, CSV_HEADER};

/// Environment variable that overrides the master seed.
pub const SEED_ENV: &str = "TTL_SEED";

/// `TTL_SEED` when set and numeric, `default` otherwise.
pub fn master_seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("the test split needs at least {needed} objects, it has {have}")]
    InsufficientObjects { needed: usize, have: usize },
    #[error("run count must be at least 1")]
    NoRuns,
    #[error("offset {0} is not one of 0, 10, 30")]
    BadOffset(u32),
    #[error("no rows to report")]
    NoRows,
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    Bcm,
    Complex,
    Train,
    SubtaskEval,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::Bcm => "bcm",
            ExperimentKind::Complex => "complex",
            ExperimentKind::Train => "train",
            ExperimentKind::SubtaskEval => "subtask-eval",
        })
    }
}

/// Agent used by an experiment; every episode starts from a fresh copy.
#[derive(Clone, Debug, PartialEq)]
pub enum AgentSpec {
    Random,
    Oracle,
    A2C(Box<LinearA2C>),
}

impl AgentSpec {
    pub fn name(&self) -> &'static str {
        match self {
            AgentSpec::Random => "random",
            AgentSpec::Oracle => "oracle",
            AgentSpec::A2C(_) => "a2c",
        }
    }

    pub fn instantiate(&self) -> Box<dyn Policy> {
        match self {
            AgentSpec::Random => Box::new(RandomWalker),
            AgentSpec::Oracle => Box::new(GreedyOracle::new()),
            AgentSpec::A2C(agent) => agent.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub split: SplitPreset,
    pub agent: AgentSpec,
    pub maps: usize,
    pub step_cap: usize,
    pub offset: u32,
    pub master_seed: u64,
    pub runs: usize,
    pub consume_wrong: bool,
}

impl ExperimentConfig {
    pub fn new(agent: AgentSpec, maps: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            split: SplitPreset::Medium,
            agent,
            maps,
            step_cap: EpisodeConfig::SUBTASK_CAP,
            offset: 10,
            master_seed,
            runs: 3,
            consume_wrong: true,
        }
    }

    /// Defaults for the complex suite: cap 120, offset +30.
    pub fn complex(agent: AgentSpec, maps: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            step_cap: EpisodeConfig::COMPLEX_CAP,
            offset: 30,
            ..ExperimentConfig::new(agent, maps, master_seed)
        }
    }

    fn validate(&self) -> Result<(), HarnessError> {
        if self.runs == 0 {
            return Err(HarnessError::NoRuns);
        }
        if ![0, 10, 30].contains(&self.offset) {
            return Err(HarnessError::BadOffset(self.offset));
        }
        Ok(())
    }

    fn episode(&self) -> EpisodeConfig {
        EpisodeConfig {
            step_cap: self.step_cap,
            consume_wrong: self.consume_wrong,
        }
    }
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ResultRow {
    pub experiment: String,
    pub agent: String,
    pub instruction: String,
    pub maps: usize,
    /// Mean episode reward plus the offset.
    pub mean_reward: f64,
    /// Standard deviation of the per-run mean rewards.
    pub std: f64,
    pub mean_steps: f64,
    pub success_rate: f64,
    pub raw_mean_reward: f64,
    pub offset: u32,
}

/// A row together with the episodes behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub row: ResultRow,
    /// Episodes grouped by run, in map order.
    pub runs: Vec<Vec<EpisodeSummary>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpisodeSummary {
    pub reward: f64,
    pub steps: usize,
    pub success: bool,
}

impl From<&EpisodeResult> for EpisodeSummary {
    fn from(r: &EpisodeResult) -> Self {
        EpisodeSummary {
            reward: r.reward,
            steps: r.steps,
            success: r.success,
        }
    }
}

impl Evaluation {
    pub fn rewards(&self) -> Vec<f64> {
        self.runs.iter().flatten().map(|e| e.reward).collect()
    }

    pub fn steps(&self) -> Vec<f64> {
        self.runs.iter().flatten().map(|e| e.steps as f64).collect()
    }

    fn build(
        experiment: ExperimentKind,
        agent: &str,
        instruction: String,
        offset: u32,
        runs: Vec<Vec<EpisodeSummary>>,
    ) -> Self {
        let all: Vec<&EpisodeSummary> = runs.iter().flatten().collect();
        let n = all.len().max(1) as f64;
        let raw = all.iter().map(|e| e.reward).sum::<f64>() / n;
        let run_means: Vec<f64> = runs
            .iter()
            .map(|r| r.iter().map(|e| e.reward).sum::<f64>() / r.len().max(1) as f64)
            .collect();
        let row = ResultRow {
            experiment: experiment.to_string(),
            agent: agent.to_string(),
            instruction,
            maps: runs.first().map_or(0, Vec::len),
            mean_reward: raw + offset as f64,
            std: sample_std(&run_means),
            mean_steps: all.iter().map(|e| e.steps as f64).sum::<f64>() / n,
            success_rate: all.iter().filter(|e| e.success).count() as f64 / n,
            raw_mean_reward: raw,
            offset,
        };
        Evaluation { row, runs }
    }
}

/// Sample standard deviation; zero for fewer than two values.
pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Standard error of `mean(a) - mean(b)` for independent samples.
pub fn pooled_se(a: &[f64], b: &[f64]) -> f64 {
    let var = |xs: &[f64]| sample_std(xs).powi(2) / xs.len().max(1) as f64;
    (var(a) + var(b)).sqrt()
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len().max(1) as f64
}

/// Per-episode stream index: run `run`, group `group`, map `map`.
fn episode_index(run: usize, group: usize, map: usize) -> u64 {
    ((run as u64) << 40) | ((group as u64) << 24) | map as u64
}

fn run_one(
    cfg: &ExperimentConfig,
    formula: &TtlFormula,
    shown: Option<SubTask>,
    map: GridMap,
    index: u64,
) -> Result<EpisodeResult, HarnessError> {
    let mut policy = cfg.agent.instantiate();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.master_seed, STREAM_EVAL_AGENT, index));
    Ok(run_sm_shown(
        formula,
        shown,
        map,
        policy.as_mut(),
        &cfg.episode(),
        &mut rng,
    )?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BcmMode {
    Reliable,
    Deceptive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BcmPolarity {
    Positive,
    Negative,
    /// The instructed object is the first disjunct.
    ChoiceFirst,
    /// The instructed object is the second disjunct.
    ChoiceSecond,
}

impl fmt::Display for BcmMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BcmMode::Reliable => "reliable",
            BcmMode::Deceptive => "deceptive",
        })
    }
}

impl FromStr for BcmMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reliable" => Ok(BcmMode::Reliable),
            "deceptive" => Ok(BcmMode::Deceptive),
            other => Err(format!(
                "unknown mode {other:?} (expected reliable or deceptive)"
            )),
        }
    }
}

impl fmt::Display for BcmPolarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BcmPolarity::Positive => "positive",
            BcmPolarity::Negative => "negative",
            BcmPolarity::ChoiceFirst => "choice-first",
            BcmPolarity::ChoiceSecond => "choice-second",
        })
    }
}

impl FromStr for BcmPolarity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(BcmPolarity::Positive),
            "negative" => Ok(BcmPolarity::Negative),
            "choice-first" => Ok(BcmPolarity::ChoiceFirst),
            "choice-second" => Ok(BcmPolarity::ChoiceSecond),
            other => Err(format!(
                "unknown polarity {other:?} (expected positive, negative, choice-first or choice-second)"
            )),
        }
    }
}

/// Instruction shown on a binary choice map. `other` is a third object that
/// is not on the map, used as the second disjunct of choices.
pub fn bcm_instruction(
    valid: ObjectId,
    decoy: ObjectId,
    other: ObjectId,
    mode: BcmMode,
    polarity: BcmPolarity,
) -> SubTask {
    let (pointed, avoided) = match mode {
        BcmMode::Reliable => (valid, decoy),
        BcmMode::Deceptive => (decoy, valid),
    };
    match polarity {
        BcmPolarity::Positive => SubTask::Pos(pointed.atom()),
        BcmPolarity::Negative => SubTask::Neg(avoided.atom()),
        BcmPolarity::ChoiceFirst => SubTask::PosChoice(pointed.atom(), other.atom()),
        BcmPolarity::ChoiceSecond => SubTask::PosChoice(other.atom(), pointed.atom()),
    }
}

/// The objects of binary choice map `index`: valid, decoy and an absent
/// third object, all distinct and from the test split.
pub fn bcm_objects(
    test: &[ObjectId],
    master_seed: u64,
    index: u64,
) -> Result<(ObjectId, ObjectId, ObjectId), HarnessError> {
    if test.len() < 3 {
        return Err(HarnessError::InsufficientObjects {
            needed: 3,
            have: test.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(master_seed, STREAM_BCM_PAIR, index));
    let mut picked = test.choose_multiple(&mut rng, 3);
    let mut next = || *picked.next().expect("three objects");
    Ok((next(), next(), next()))
}

/// Runs binary choice maps. The reward always scores the valid object; the
/// agent only sees the instruction, which points at the valid object when
/// reliable and at the decoy when deceptive.
pub fn eval_bcm(
    cfg: &ExperimentConfig,
    mode: BcmMode,
    polarity: BcmPolarity,
) -> Result<Evaluation, HarnessError> {
    cfg.validate()?;
    let test = ObjectCatalog::preset(cfg.split).test;
    let mut runs = Vec::with_capacity(cfg.runs);
    for run in 0..cfg.runs {
        let mut episodes = Vec::with_capacity(cfg.maps);
        for i in 0..cfg.maps {
            let index = episode_index(run, 0, i);
            let (valid, decoy, other) = bcm_objects(&test, cfg.master_seed, index)?;
            let map = generate_bcm(
                valid,
                decoy,
                sub_seed(cfg.master_seed, STREAM_EVAL_MAP, index),
            )?;
            let shown = bcm_instruction(valid, decoy, other, mode, polarity);
            let r = run_one(
                cfg,
                &TtlFormula::atom(valid.atom()),
                Some(shown),
                map,
                index,
            )?;
            episodes.push(EpisodeSummary::from(&r));
        }
        runs.push(episodes);
    }
    let instruction = format!("{mode} {polarity}");
    Ok(Evaluation::build(
        ExperimentKind::Bcm,
        cfg.agent.name(),
        instruction,
        cfg.offset,
        runs,
    ))
}

/// Objects per complex-suite map.
pub const COMPLEX_OBJECTS: usize = 8;

/// Runs every corpus instruction on `cfg.maps` generated maps. Returns one
/// evaluation per instruction followed by the pooled one.
pub fn eval_complex(cfg: &ExperimentConfig) -> Result<Vec<Evaluation>, HarnessError> {
    eval_formulas(cfg, &complex_corpus(), COMPLEX_OBJECTS)
}

/// Like [`eval_complex`] for arbitrary instructions.
pub fn eval_formulas(
    cfg: &ExperimentConfig,
    formulas: &[(String, TtlFormula)],
    n_objects: usize,
) -> Result<Vec<Evaluation>, HarnessError> {
    cfg.validate()?;
    let test = ObjectCatalog::preset(cfg.split).test;
    let mut per_formula: Vec<Vec<Vec<EpisodeSummary>>> = vec![Vec::new(); formulas.len()];
    for run in 0..cfg.runs {
        for (j, (_, formula)) in formulas.iter().enumerate() {
            let matrix = extract(&formula.expand_concurrent())?;
            let mut episodes = Vec::with_capacity(cfg.maps);
            for i in 0..cfg.maps {
                let index = episode_index(run, j + 1, i);
                let map = generate_map(
                    &test,
                    &matrix,
                    n_objects,
                    sub_seed(cfg.master_seed, STREAM_EVAL_MAP, index),
                )?;
                episodes.push(EpisodeSummary::from(&run_one(
                    cfg, formula, None, map, index,
                )?));
            }
            per_formula[j].push(episodes);
        }
    }
    let mut out: Vec<Evaluation> = Vec::with_capacity(formulas.len() + 1);
    let mut pooled: Vec<Vec<EpisodeSummary>> = vec![Vec::new(); cfg.runs];
    for ((text, _), runs) in formulas.iter().zip(per_formula) {
        for (p, r) in pooled.iter_mut().zip(&runs) {
            p.extend(r.iter().cloned());
        }
        out.push(Evaluation::build(
            ExperimentKind::Complex,
            cfg.agent.name(),
            text.clone(),
            cfg.offset,
            runs,
        ));
    }
    out.push(Evaluation::build(
        ExperimentKind::Complex,
        cfg.agent.name(),
        "all".into(),
        cfg.offset,
        pooled,
    ));
    Ok(out)
}

/// Which objects sub-task evaluations draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectSet {
    Train,
    Test,
}

/// Single sub-task episodes of the given mix on generated maps, as in
/// training.
pub fn eval_subtasks(
    cfg: &ExperimentConfig,
    mix: TaskMix,
    objects: ObjectSet,
    n_objects: RangeInclusive<usize>,
) -> Result<Evaluation, HarnessError> {
    cfg.validate()?;
    let catalog = ObjectCatalog::preset(cfg.split);
    let split = match objects {
        ObjectSet::Train => catalog.train,
        ObjectSet::Test => catalog.test,
    };
    let mut runs = Vec::with_capacity(cfg.runs);
    for run in 0..cfg.runs {
        let mut choice_round = 0;
        let mut episodes = Vec::with_capacity(cfg.maps);
        for i in 0..cfg.maps {
            let index = episode_index(run, 0, i);
            let seed = sub_seed(cfg.master_seed, STREAM_EVAL_MAP, index);
            let (formula, _, map) =
                training_episode(&split, mix, n_objects.clone(), seed, &mut choice_round)?;
            episodes.push(EpisodeSummary::from(&run_one(
                cfg, &formula, None, map, index,
            )?));
        }
        runs.push(episodes);
    }
    Ok(Evaluation::build(
        ExperimentKind::SubtaskEval,
        cfg.agent.name(),
        mix.name().into(),
        cfg.offset,
        runs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wood() -> ObjectId {
        ObjectId::from_name("wood").unwrap()
    }

    fn iron() -> ObjectId {
        ObjectId::from_name("iron").unwrap()
    }

    fn axe() -> ObjectId {
        ObjectId::from_name("axe").unwrap()
    }

    #[test]
    fn bcm_instructions() {
        let t = |m, p| bcm_instruction(wood(), iron(), axe(), m, p).to_string();
        assert_eq!(t(BcmMode::Reliable, BcmPolarity::Positive), "wood");
        assert_eq!(t(BcmMode::Reliable, BcmPolarity::Negative), "iron~");
        assert_eq!(t(BcmMode::Deceptive, BcmPolarity::Positive), "iron");
        assert_eq!(t(BcmMode::Deceptive, BcmPolarity::Negative), "wood~");
        assert_eq!(t(BcmMode::Reliable, BcmPolarity::ChoiceFirst), "wood|axe");
        assert_eq!(t(BcmMode::Deceptive, BcmPolarity::ChoiceSecond), "axe|iron");
    }

    #[test]
    fn oracle_solves_reliable_bcms() {
        let mut cfg = ExperimentConfig::new(AgentSpec::Oracle, 100, 3);
        cfg.runs = 1;
        for polarity in [
            BcmPolarity::Positive,
            BcmPolarity::Negative,
            BcmPolarity::ChoiceFirst,
            BcmPolarity::ChoiceSecond,
        ] {
            let e = eval_bcm(&cfg, BcmMode::Reliable, polarity).unwrap();
            assert_eq!(e.row.success_rate, 1.0, "{polarity}");
        }
    }

    #[test]
    fn offsets_and_statistics() {
        let runs = vec![
            vec![EpisodeSummary {
                reward: 1.0,
                steps: 2,
                success: true,
            }],
            vec![EpisodeSummary {
                reward: -1.0,
                steps: 4,
                success: false,
            }],
        ];
        let e = Evaluation::build(ExperimentKind::Bcm, "oracle", "x".into(), 10, runs);
        assert_eq!(e.row.raw_mean_reward, 0.0);
        assert_eq!(e.row.mean_reward, 10.0);
        assert_eq!(e.row.mean_steps, 3.0);
        assert_eq!(e.row.success_rate, 0.5);
        assert!((e.row.std - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(e.row.maps, 1);
    }

    #[test]
    fn rejects_bad_config() {
        let mut cfg = ExperimentConfig::new(AgentSpec::Random, 1, 0);
        cfg.offset = 5;
        assert!(matches!(
            eval_bcm(&cfg, BcmMode::Reliable, BcmPolarity::Positive),
            Err(HarnessError::BadOffset(5))
        ));
        cfg.offset = 0;
        cfg.runs = 0;
        assert!(matches!(eval_complex(&cfg), Err(HarnessError::NoRuns)));
    }

    #[test]
    fn paired_maps_across_agents() {
        let mut a = ExperimentConfig::new(AgentSpec::Oracle, 5, 9);
        a.runs = 1;
        let b = ExperimentConfig {
            agent: AgentSpec::Random,
            ..a.clone()
        };
        // Same seeds give the same objects and maps regardless of the agent.
        let test = ObjectCatalog::preset(a.split).test;
        for i in 0..5 {
            assert_eq!(
                bcm_objects(&test, a.master_seed, i).unwrap(),
                bcm_objects(&test, b.master_seed, i).unwrap()
            );
        }
        let ea = eval_bcm(&a, BcmMode::Reliable, BcmPolarity::Positive).unwrap();
        let eb = eval_bcm(&a, BcmMode::Reliable, BcmPolarity::Positive).unwrap();
        assert_eq!(ea, eb);
    }
}
