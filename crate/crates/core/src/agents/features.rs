use crate::gridworld::{Observation, OBS_COLS, OBS_ROWS, VOCABULARY};

pub const CELLS: usize = OBS_ROWS * OBS_COLS;
/// One one-hot block of `VOCABULARY` entries per observation cell.
pub const FEATURE_DIM: usize = CELLS * VOCABULARY;

/// Sparse one-hot encoding: the index of the single active entry of every
/// cell block, in row-major cell order.
pub type Features = [usize; CELLS];

pub fn feature_index(cell: usize, vocab: usize) -> usize {
    cell * VOCABULARY + vocab
}

pub fn features(obs: &Observation) -> Features {
    let mut out = [0; CELLS];
    for (i, code) in obs.cells().iter().flatten().enumerate() {
        out[i] = feature_index(i, code.vocab_index());
    }
    out
}

/// Dense form, for inspection and tests.
pub fn dense(f: &Features) -> Vec<f64> {
    let mut v = vec![0.0; FEATURE_DIM];
    for &i in f {
        v[i] = 1.0;
    }
    v
}
