use std::ops::RangeInclusive;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{features, AgentError, LinearA2C, Transition};
use crate::gridworld::{
    generate_choice_map, generate_map, ChoiceVariant, GridError, GridMap, ObjectId,
};
use crate::seed::{sub_seed, STREAM_TRAIN_AGENT, STREAM_TRAIN_MAP};
use crate::symbolic::{EpisodeConfig, SmSession, SubTask, TaskMatrix};
use crate::ttl::TtlFormula;

/// Which sub-tasks training episodes ask for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaskMix {
    PosOnly,
    NegOnly,
    ChoiceOnly,
    /// Positive, negated and choice sub-tasks in equal proportion.
    All,
}

impl TaskMix {
    pub fn name(self) -> &'static str {
        match self {
            TaskMix::PosOnly => "positive",
            TaskMix::NegOnly => "negative",
            TaskMix::ChoiceOnly => "choice",
            TaskMix::All => "mixed",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub total_steps: u64,
    pub split: Vec<ObjectId>,
    pub n_objects: RangeInclusive<usize>,
    pub mix: TaskMix,
    pub episode: EpisodeConfig,
    /// Completed episodes averaged into one curve point.
    pub window_episodes: usize,
    pub master_seed: u64,
}

impl TrainConfig {
    pub fn new(split: Vec<ObjectId>, total_steps: u64, master_seed: u64) -> Self {
        TrainConfig {
            total_steps,
            split,
            n_objects: 3..=3,
            mix: TaskMix::PosOnly,
            episode: EpisodeConfig::with_cap(EpisodeConfig::SUBTASK_CAP),
            window_episodes: 1000,
            master_seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub episodes: usize,
    pub steps: u64,
    pub mean_reward: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainReport {
    pub curve: Vec<CurvePoint>,
    pub episodes: usize,
    pub steps: u64,
}

impl TrainReport {
    /// `episodes,steps,mean_reward`, one line per curve point.
    pub fn curve_csv(&self) -> String {
        let mut out = String::from("episodes,steps,mean_reward\n");
        for p in &self.curve {
            out += &format!("{},{},{}\n", p.episodes, p.steps, p.mean_reward);
        }
        out
    }
}

/// A single-sub-task episode: the formula and a map for it.
///
/// Choice episodes cycle through maps holding the first disjunct only, the
/// second only, and both; `choice_round` counts the choice episodes so far.
pub fn training_episode(
    split: &[ObjectId],
    mix: TaskMix,
    n_objects: RangeInclusive<usize>,
    seed: u64,
    choice_round: &mut usize,
) -> Result<(TtlFormula, SubTask, GridMap), GridError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| *split.choose(rng).expect("non-empty split");
    let kind = match mix {
        TaskMix::PosOnly => 0,
        TaskMix::NegOnly => 1,
        TaskMix::ChoiceOnly => 2,
        TaskMix::All => rng.random_range(0..3),
    };
    let n_objects = rng.random_range(n_objects);
    let a = pick(&mut rng);
    let map_seed = rng.random();
    match kind {
        0 | 1 => {
            let task = if kind == 0 {
                SubTask::Pos(a.atom())
            } else {
                SubTask::Neg(a.atom())
            };
            let formula = if kind == 0 {
                TtlFormula::atom(a.atom())
            } else {
                TtlFormula::neg(a.atom())
            };
            let matrix = TaskMatrix::new(vec![vec![task.clone()]]).expect("no choice");
            let map = generate_map(split, &matrix, n_objects, map_seed)?;
            Ok((formula, task, map))
        }
        _ => {
            let others: Vec<ObjectId> = split.iter().copied().filter(|o| *o != a).collect();
            let b = *others
                .choose(&mut rng)
                .ok_or_else(|| GridError::Infeasible("split too small".into()))?;
            let variant = ChoiceVariant::rotation(*choice_round);
            *choice_round += 1;
            let formula =
                TtlFormula::choice(TtlFormula::atom(a.atom()), TtlFormula::atom(b.atom()));
            let map = generate_choice_map(split, a, b, variant, n_objects, map_seed)?;
            Ok((formula, SubTask::PosChoice(a.atom(), b.atom()), map))
        }
    }
}

/// Trains `agent` for `cfg.total_steps` environment steps with n-step
/// updates. The curve averages the reward of completed episodes over
/// consecutive windows.
pub fn train(agent: &mut LinearA2C, cfg: &TrainConfig) -> Result<TrainReport, AgentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.master_seed, STREAM_TRAIN_AGENT, 0));
    let horizon = agent.hyper.n_steps.max(1);
    let mut steps = 0u64;
    let mut episode = 0u64;
    let mut choice_round = 0;
    let mut rewards = Vec::new();
    let mut trajectory = Vec::with_capacity(horizon);
    while steps < cfg.total_steps {
        let seed = sub_seed(cfg.master_seed, STREAM_TRAIN_MAP, episode);
        let (formula, _, map) = training_episode(
            &cfg.split,
            cfg.mix,
            cfg.n_objects.clone(),
            seed,
            &mut choice_round,
        )?;
        let mut session = SmSession::new(&formula, map, cfg.episode)?;
        let mut obs = features(&session.observation()?);
        while !session.is_finished() && steps < cfg.total_steps {
            let action = agent.sample_action(&obs, &mut rng);
            let out = session.step(action)?;
            let next = features(&session.observation()?);
            trajectory.push(Transition {
                obs,
                action,
                reward: out.reward.value(),
                next_obs: next,
                terminal: out.done,
            });
            steps += 1;
            if trajectory.len() == horizon || session.is_finished() || steps == cfg.total_steps {
                agent.update(&trajectory)?;
                trajectory.clear();
            }
            obs = next;
        }
        if session.is_finished() {
            rewards.push(session.finish().reward);
        }
        episode += 1;
    }
    let window = cfg.window_episodes.max(1);
    let mut curve = Vec::new();
    let mut done = 0;
    for chunk in rewards.chunks(window) {
        done += chunk.len();
        curve.push(CurvePoint {
            episodes: done,
            steps,
            mean_reward: chunk.iter().sum::<f64>() / chunk.len() as f64,
        });
    }
    Ok(TrainReport {
        curve,
        episodes: rewards.len(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agents::A2CHyper;
    use crate::gridworld::{ObjectCatalog, SplitPreset};

    fn config(steps: u64) -> TrainConfig {
        let mut cfg = TrainConfig::new(ObjectCatalog::preset(SplitPreset::Medium).train, steps, 5);
        cfg.window_episodes = 10;
        cfg
    }

    #[test]
    fn zero_steps_empty_curve() {
        let mut agent = LinearA2C::new(A2CHyper::default(), 5);
        let report = train(&mut agent, &config(0)).unwrap();
        assert!(report.curve.is_empty());
        assert_eq!(agent, LinearA2C::new(A2CHyper::default(), 5));
    }

    #[test]
    fn deterministic_under_master_seed() {
        let mut cfg = config(3000);
        cfg.mix = TaskMix::All;
        let mut a = LinearA2C::new(A2CHyper::default(), 5);
        let mut b = LinearA2C::new(A2CHyper::default(), 5);
        let ra = train(&mut a, &cfg).unwrap();
        let rb = train(&mut b, &cfg).unwrap();
        assert_eq!(ra, rb);
        assert_eq!(a, b);
        assert!(!ra.curve.is_empty());
        assert_eq!(ra.steps, 3000);
    }

    #[test]
    fn choice_maps_rotate() {
        let split = ObjectCatalog::preset(SplitPreset::Medium).train;
        let mut round = 0;
        let mut seen = Vec::new();
        for seed in 0..300 {
            let (_, task, map) =
                training_episode(&split, TaskMix::All, 4..=4, seed, &mut round).unwrap();
            if let SubTask::PosChoice(a, b) = task {
                let a = ObjectId::from_atom(&a).unwrap();
                let b = ObjectId::from_atom(&b).unwrap();
                seen.push((map.count_of(a) > 0, map.count_of(b) > 0));
            }
        }
        assert_eq!(seen.len(), round);
        for (i, s) in seen.iter().enumerate() {
            let expected = [(true, false), (false, true), (true, true)][i % 3];
            assert_eq!(*s, expected);
        }
    }
}
