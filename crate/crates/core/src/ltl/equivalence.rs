//! Randomised check that TTL satisfaction agrees with its LTL translations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    ltlf_satisfies, translate_strict, translate_tau1, translate_tau2, LtlError, LtlFormula,
};
use crate::ttl::{random_trace, ttl_satisfies, Alphabet, FormulaGenerator, Trace, TtlFormula};

#[derive(Clone, Debug)]
pub struct EquivalenceConfig {
    pub seed: u64,
    pub trials: usize,
    pub formula_depth: usize,
    /// Traces have length `0..=trace_len`.
    pub trace_len: usize,
    pub alphabet_size: usize,
    /// Per-instant probability that each proposition holds.
    pub density: f64,
}

impl Default for EquivalenceConfig {
    fn default() -> Self {
        EquivalenceConfig {
            seed: 1,
            trials: 10_000,
            formula_depth: 3,
            trace_len: 8,
            alphabet_size: 5,
            density: 0.3,
        }
    }
}

/// One disagreeing instance, with every verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub formula: TtlFormula,
    pub trace: Trace,
    pub ttl: bool,
    pub tau1: bool,
    pub eventually_tau2: bool,
    pub strict: bool,
}

#[derive(Clone, Debug, Default)]
pub struct EquivalenceReport {
    pub trials: usize,
    /// TTL agrees with `τ1`.
    pub tau1_agreements: usize,
    /// TTL agrees with `F τ2`.
    pub tau2_agreements: usize,
    /// TTL agrees with the strict translation.
    pub strict_agreements: usize,
    /// TTL, `τ1` and `F τ2` all agree.
    pub three_way_agreements: usize,
    /// First instance where the three verdicts differ.
    pub first_counterexample: Option<Counterexample>,
    /// First instance where the strict translation disagrees with TTL.
    pub first_strict_counterexample: Option<Counterexample>,
}

impl EquivalenceReport {
    pub fn three_way_disagreements(&self) -> usize {
        self.trials - self.three_way_agreements
    }

    pub fn strict_disagreements(&self) -> usize {
        self.trials - self.strict_agreements
    }

    pub fn passed(&self) -> bool {
        self.three_way_disagreements() == 0
    }
}

/// Verdicts of all four semantics on one instance.
pub fn verdicts(
    formula: &TtlFormula,
    trace: &Trace,
    alphabet: &Alphabet,
) -> Result<(bool, bool, bool, bool), LtlError> {
    let ttl = ttl_satisfies(trace, formula).map_err(|_| LtlError::ConcurrentNotExpanded)?;
    let tau1 = ltlf_satisfies(trace, 0, &translate_tau1(formula, alphabet)?)?;
    let tau2 = ltlf_satisfies(
        trace,
        0,
        &LtlFormula::eventually(translate_tau2(formula, alphabet)?),
    )?;
    let strict = ltlf_satisfies(trace, 0, &translate_strict(formula, alphabet)?)?;
    Ok((ttl, tau1, tau2, strict))
}

/// Draws `trials` Concurrent-free formulas and traces and compares TTL
/// satisfaction with `τ1`, `F τ2` and the strict translation.
pub fn check_prop1(cfg: &EquivalenceConfig) -> EquivalenceReport {
    assert!(
        cfg.alphabet_size >= 2,
        "negation needs a witness proposition"
    );
    assert!(cfg.trials >= 1);
    let alphabet = Alphabet::letters(cfg.alphabet_size);
    let generator = FormulaGenerator::new(cfg.formula_depth).without_concurrent();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = EquivalenceReport {
        trials: cfg.trials,
        ..Default::default()
    };

    for trial in 0..cfg.trials {
        let formula = generator.sample(&mut rng, &alphabet);
        let trace = random_trace(&mut rng, &alphabet, cfg.trace_len, cfg.density);
        let (ttl, tau1, tau2, strict) =
            verdicts(&formula, &trace, &alphabet).expect("generated instances meet preconditions");
        report.tau1_agreements += usize::from(ttl == tau1);
        report.tau2_agreements += usize::from(ttl == tau2);
        report.strict_agreements += usize::from(ttl == strict);
        let example = || Counterexample {
            trial,
            formula: formula.clone(),
            trace: trace.clone(),
            ttl,
            tau1,
            eventually_tau2: tau2,
            strict,
        };
        if ttl == tau1 && ttl == tau2 {
            report.three_way_agreements += 1;
        } else if report.first_counterexample.is_none() {
            report.first_counterexample = Some(example());
        }
        if ttl != strict && report.first_strict_counterexample.is_none() {
            report.first_strict_counterexample = Some(example());
        }
    }
    report
}
