//! Flat text checkpoints.
//!
//! ```text
//! ttl-a2c v1
//! feature_dim 930
//! actions 4
//! gamma 0.99
//! ...                 (one `key value` line per hyperparameter, then master_seed)
//! policy
//! w0 w1 w2 w3         (feature_dim rows)
//! value
//! w                   (feature_dim rows)
//! ```

use super::{A2CHyper, A2CParams, AgentError, LinearA2C, ACTIONS, FEATURE_DIM};

pub const CHECKPOINT_HEADER: &str = "ttl-a2c v1";

pub fn save_checkpoint(agent: &LinearA2C) -> String {
    let h = &agent.hyper;
    let mut out = format!("{CHECKPOINT_HEADER}\n");
    out += &format!("feature_dim {FEATURE_DIM}\nactions {ACTIONS}\n");
    out += &format!(
        "gamma {}\nlearning_rate {}\nentropy_coef {}\nvalue_coef {}\n",
        h.gamma, h.learning_rate, h.entropy_coef, h.value_coef
    );
    out += &format!(
        "n_steps {}\nrms_alpha {}\nrms_eps {}\n",
        h.n_steps, h.rms_alpha, h.rms_eps
    );
    out += &format!("master_seed {}\npolicy\n", agent.master_seed);
    for row in &agent.params.policy {
        let cells: Vec<String> = row.iter().map(|w| w.to_string()).collect();
        out += &cells.join(" ");
        out.push('\n');
    }
    out += "value\n";
    for w in &agent.params.value {
        out += &format!("{w}\n");
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> AgentError {
    AgentError::Checkpoint {
        line,
        message: message.into(),
    }
}

pub fn load_checkpoint(text: &str) -> Result<LinearA2C, AgentError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| err(0, format!("file ends before {what}")))
    };

    let (n, header) = next("the header")?;
    if header != CHECKPOINT_HEADER {
        return Err(err(n, format!("expected `{CHECKPOINT_HEADER}`")));
    }
    let mut field = |key: &str| -> Result<(usize, String), AgentError> {
        let (n, line) = next(key)?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok((n, v.to_string())),
            _ => Err(err(n, format!("expected `{key} <value>`"))),
        }
    };
    fn num<T: std::str::FromStr>((n, v): (usize, String)) -> Result<T, AgentError> {
        v.parse().map_err(|_| err(n, format!("bad number {v:?}")))
    }
    let dim: usize = num(field("feature_dim")?)?;
    let (an, actions) = field("actions")?;
    if dim != FEATURE_DIM || actions != ACTIONS.to_string() {
        return Err(err(
            an,
            format!("shape {dim}×{actions} does not match {FEATURE_DIM}×{ACTIONS}"),
        ));
    }
    let hyper = A2CHyper {
        gamma: num(field("gamma")?)?,
        learning_rate: num(field("learning_rate")?)?,
        entropy_coef: num(field("entropy_coef")?)?,
        value_coef: num(field("value_coef")?)?,
        n_steps: num(field("n_steps")?)?,
        rms_alpha: num(field("rms_alpha")?)?,
        rms_eps: num(field("rms_eps")?)?,
    };
    let master_seed: u64 = num(field("master_seed")?)?;

    let (n, line) = next("policy")?;
    if line != "policy" {
        return Err(err(n, "expected `policy`"));
    }
    let mut params = A2CParams::zeros();
    for row in params.policy.iter_mut() {
        let (n, line) = next("a policy row")?;
        let values: Vec<&str> = line.split(' ').collect();
        if values.len() != ACTIONS {
            return Err(err(n, format!("expected {ACTIONS} weights")));
        }
        for (w, v) in row.iter_mut().zip(values) {
            *w = num((n, v.to_string()))?;
        }
    }
    let (n, line) = next("value")?;
    if line != "value" {
        return Err(err(n, "expected `value`"));
    }
    for w in params.value.iter_mut() {
        let (n, line) = next("a value row")?;
        *w = num((n, line.to_string()))?;
    }
    if let Some((n, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(err(n, "unexpected content after the value rows"));
    }
    if !params.is_finite() {
        return Err(AgentError::NonFinite("checkpoint weights"));
    }
    Ok(LinearA2C::with_params(params, hyper, master_seed))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let agent =
            LinearA2C::with_params(A2CParams::random(&mut rng, 3.0), A2CHyper::default(), 42);
        let text = save_checkpoint(&agent);
        assert!(text.starts_with(
            "ttl-a2c v1\nfeature_dim 930\nactions 4\ngamma 0.99\nlearning_rate 0.00008\n"
        ));
        let back = load_checkpoint(&text).unwrap();
        assert_eq!(back.params, agent.params);
        assert_eq!(back.hyper, agent.hyper);
        assert_eq!(back.master_seed, 42);
        assert_eq!(save_checkpoint(&back), text);
    }

    #[test]
    fn truncated_checkpoint() {
        let text = save_checkpoint(&LinearA2C::new(A2CHyper::default(), 1));
        let cut: String = text.lines().take(100).map(|l| format!("{l}\n")).collect();
        assert!(load_checkpoint(&cut).is_err());
        assert!(load_checkpoint("ttl-a2c v0\n").is_err());
    }
}
