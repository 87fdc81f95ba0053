use rand::{Rng, RngCore};

use super::{features, AgentError, Features, Policy, FEATURE_DIM};
use crate::gridworld::{Action, Observation};

pub const ACTIONS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct A2CHyper {
    pub gamma: f64,
    pub learning_rate: f64,
    pub entropy_coef: f64,
    pub value_coef: f64,
    pub n_steps: usize,
    pub rms_alpha: f64,
    pub rms_eps: f64,
}

impl Default for A2CHyper {
    fn default() -> Self {
        A2CHyper {
            gamma: 0.99,
            learning_rate: 8e-5,
            entropy_coef: 1e-2,
            value_coef: 0.5,
            n_steps: 5,
            rms_alpha: 0.99,
            rms_eps: 1e-5,
        }
    }
}

/// Linear policy and value heads over one-hot features, without biases.
#[derive(Clone, Debug, PartialEq)]
pub struct A2CParams {
    pub policy: Vec<[f64; ACTIONS]>,
    pub value: Vec<f64>,
}

impl A2CParams {
    pub fn zeros() -> Self {
        A2CParams {
            policy: vec![[0.0; ACTIONS]; FEATURE_DIM],
            value: vec![0.0; FEATURE_DIM],
        }
    }

    /// Weights drawn uniformly from `[-scale, scale]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        let mut p = A2CParams::zeros();
        for row in &mut p.policy {
            for w in row.iter_mut() {
                *w = rng.random_range(-scale..=scale);
            }
        }
        for w in &mut p.value {
            *w = rng.random_range(-scale..=scale);
        }
        p
    }

    pub fn logits(&self, f: &Features) -> [f64; ACTIONS] {
        let mut z = [0.0; ACTIONS];
        for &i in f {
            for (zk, w) in z.iter_mut().zip(&self.policy[i]) {
                *zk += w;
            }
        }
        z
    }

    pub fn probs(&self, f: &Features) -> [f64; ACTIONS] {
        softmax(&self.logits(f))
    }

    pub fn value_of(&self, f: &Features) -> f64 {
        f.iter().map(|&i| self.value[i]).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.policy
            .iter()
            .flatten()
            .chain(&self.value)
            .all(|w| w.is_finite())
    }
}

pub fn softmax(z: &[f64; ACTIONS]) -> [f64; ACTIONS] {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut p = z.map(|v| (v - max).exp());
    let sum: f64 = p.iter().sum();
    for v in &mut p {
        *v /= sum;
    }
    p
}

fn log_softmax(z: &[f64; ACTIONS]) -> [f64; ACTIONS] {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + z.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
    z.map(|v| v - lse)
}

/// One environment step as seen by the learner.
#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    pub obs: Features,
    pub action: Action,
    pub reward: f64,
    pub next_obs: Features,
    /// The task was completed; no value is bootstrapped past this step.
    pub terminal: bool,
}

/// A loss term with its return and advantage held fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub features: Features,
    pub action: Action,
    pub ret: f64,
    pub advantage: f64,
}

/// `R_t = r_t + γ R_{t+1}`, starting from `bootstrap` after the last reward.
pub fn discounted_returns(rewards: &[f64], bootstrap: f64, gamma: f64) -> Vec<f64> {
    let mut out = vec![0.0; rewards.len()];
    let mut acc = bootstrap;
    for (o, r) in out.iter_mut().zip(rewards).rev() {
        acc = r + gamma * acc;
        *o = acc;
    }
    out
}

/// Returns and advantages of a trajectory under `params`. The tail is
/// bootstrapped from the value head unless its last step is terminal.
pub fn samples(params: &A2CParams, trajectory: &[Transition], gamma: f64) -> Vec<Sample> {
    let Some(last) = trajectory.last() else {
        return Vec::new();
    };
    let bootstrap = if last.terminal {
        0.0
    } else {
        params.value_of(&last.next_obs)
    };
    let rewards: Vec<f64> = trajectory.iter().map(|t| t.reward).collect();
    let returns = discounted_returns(&rewards, bootstrap, gamma);
    trajectory
        .iter()
        .zip(returns)
        .map(|(t, ret)| Sample {
            features: t.obs,
            action: t.action,
            ret,
            advantage: ret - params.value_of(&t.obs),
        })
        .collect()
}

/// Mean over samples of `-A log π(a) - β H(π) + c (R - V)²`.
pub fn loss(params: &A2CParams, batch: &[Sample], hyper: &A2CHyper) -> f64 {
    let mut total = 0.0;
    for s in batch {
        let z = params.logits(&s.features);
        let logp = log_softmax(&z);
        let p = softmax(&z);
        let entropy: f64 = -p.iter().zip(&logp).map(|(pk, lk)| pk * lk).sum::<f64>();
        let v = params.value_of(&s.features);
        total += -s.advantage * logp[s.action.index()] - hyper.entropy_coef * entropy
            + hyper.value_coef * (s.ret - v).powi(2);
    }
    total / batch.len() as f64
}

/// Dense gradient with the shape of [`A2CParams`].
#[derive(Clone, Debug, PartialEq)]
pub struct Gradient {
    pub policy: Vec<[f64; ACTIONS]>,
    pub value: Vec<f64>,
}

/// Analytic gradient of [`loss`].
pub fn gradient(params: &A2CParams, batch: &[Sample], hyper: &A2CHyper) -> Gradient {
    let mut g = Gradient {
        policy: vec![[0.0; ACTIONS]; FEATURE_DIM],
        value: vec![0.0; FEATURE_DIM],
    };
    let n = batch.len() as f64;
    for s in batch {
        let z = params.logits(&s.features);
        let logp = log_softmax(&z);
        let p = softmax(&z);
        let entropy: f64 = -p.iter().zip(&logp).map(|(pk, lk)| pk * lk).sum::<f64>();
        let mut dz = [0.0; ACTIONS];
        for k in 0..ACTIONS {
            let taken = if k == s.action.index() { 1.0 } else { 0.0 };
            dz[k] = -s.advantage * (taken - p[k]) + hyper.entropy_coef * p[k] * (logp[k] + entropy);
        }
        let dv = -2.0 * hyper.value_coef * (s.ret - params.value_of(&s.features));
        for &i in &s.features {
            for (gk, d) in g.policy[i].iter_mut().zip(&dz) {
                *gk += d / n;
            }
            g.value[i] += dv / n;
        }
    }
    g
}

/// RMSprop with the mean square kept per weight.
#[derive(Clone, Debug, PartialEq)]
pub struct RmsProp {
    sq_policy: Vec<[f64; ACTIONS]>,
    sq_value: Vec<f64>,
    alpha: f64,
    eps: f64,
}

impl RmsProp {
    pub fn new(alpha: f64, eps: f64) -> Self {
        RmsProp {
            sq_policy: vec![[0.0; ACTIONS]; FEATURE_DIM],
            sq_value: vec![0.0; FEATURE_DIM],
            alpha,
            eps,
        }
    }

    /// Parameters after one descent step; `params` is left untouched.
    pub fn step(&mut self, params: &A2CParams, grad: &Gradient, lr: f64) -> A2CParams {
        let mut next = params.clone();
        let (alpha, eps) = (self.alpha, self.eps);
        let update = |w: &mut f64, sq: &mut f64, g: f64| {
            *sq = alpha * *sq + (1.0 - alpha) * g * g;
            *w -= lr * g / (sq.sqrt() + eps);
        };
        for ((row, sq), g) in next
            .policy
            .iter_mut()
            .zip(&mut self.sq_policy)
            .zip(&grad.policy)
        {
            for k in 0..ACTIONS {
                update(&mut row[k], &mut sq[k], g[k]);
            }
        }
        for ((w, sq), g) in next
            .value
            .iter_mut()
            .zip(&mut self.sq_value)
            .zip(&grad.value)
        {
            update(w, sq, *g);
        }
        next
    }
}

/// Linear advantage actor-critic agent.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearA2C {
    pub params: A2CParams,
    pub hyper: A2CHyper,
    pub master_seed: u64,
    optimizer: RmsProp,
}

impl LinearA2C {
    pub fn new(hyper: A2CHyper, master_seed: u64) -> Self {
        LinearA2C::with_params(A2CParams::zeros(), hyper, master_seed)
    }

    pub fn with_params(params: A2CParams, hyper: A2CHyper, master_seed: u64) -> Self {
        let optimizer = RmsProp::new(hyper.rms_alpha, hyper.rms_eps);
        LinearA2C {
            params,
            hyper,
            master_seed,
            optimizer,
        }
    }

    /// One gradient step on an n-step trajectory. Returns the loss before
    /// the step. Non-finite results are rejected and leave the agent as it
    /// was.
    pub fn update(&mut self, trajectory: &[Transition]) -> Result<f64, AgentError> {
        if trajectory.is_empty() {
            return Err(AgentError::EmptyTrajectory);
        }
        if trajectory.len() > self.hyper.n_steps {
            return Err(AgentError::TrajectoryTooLong {
                len: trajectory.len(),
                horizon: self.hyper.n_steps,
            });
        }
        let batch = samples(&self.params, trajectory, self.hyper.gamma);
        let value = loss(&self.params, &batch, &self.hyper);
        if !value.is_finite() {
            return Err(AgentError::NonFinite("loss"));
        }
        let grad = gradient(&self.params, &batch, &self.hyper);
        let mut optimizer = self.optimizer.clone();
        let next = optimizer.step(&self.params, &grad, self.hyper.learning_rate);
        if !next.is_finite() {
            return Err(AgentError::NonFinite("weights"));
        }
        self.params = next;
        self.optimizer = optimizer;
        Ok(value)
    }

    pub fn sample_action(&self, f: &Features, rng: &mut dyn RngCore) -> Action {
        let p = self.params.probs(f);
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (k, pk) in p.iter().enumerate() {
            acc += pk;
            if u < acc {
                return Action::ALL[k];
            }
        }
        Action::ALL[ACTIONS - 1]
    }
}

impl Policy for LinearA2C {
    fn act(&mut self, obs: &Observation, rng: &mut dyn RngCore) -> Action {
        self.sample_action(&features(obs), rng)
    }
}
