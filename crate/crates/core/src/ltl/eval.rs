use super::{LtlError, LtlFormula};
use crate::ttl::{LabelSet, Trace};

/// Finite-trace LTL satisfaction at `position`.
///
/// `position == trace.len()` is the point past the end, where no proposition
/// holds and every eventuality fails. `Next` is strong: it fails at the last
/// instant.
pub fn ltlf_satisfies(trace: &Trace, position: usize, f: &LtlFormula) -> Result<bool, LtlError> {
    if position > trace.len() {
        return Err(LtlError::PositionOutOfRange {
            position,
            len: trace.len(),
        });
    }
    Ok(eval(trace.steps(), position, f))
}

fn eval(steps: &[LabelSet], pos: usize, f: &LtlFormula) -> bool {
    let len = steps.len();
    match f {
        LtlFormula::Prop(a) => pos < len && steps[pos].contains(a),
        LtlFormula::Not(g) => !eval(steps, pos, g),
        LtlFormula::And(l, r) => eval(steps, pos, l) && eval(steps, pos, r),
        LtlFormula::Or(l, r) => eval(steps, pos, l) || eval(steps, pos, r),
        LtlFormula::Next(g) => pos + 1 < len && eval(steps, pos + 1, g),
        LtlFormula::Until(l, r) => {
            for k in pos..len {
                if eval(steps, k, r) {
                    return true;
                }
                if !eval(steps, k, l) {
                    return false;
                }
            }
            false
        }
        LtlFormula::Eventually(g) => (pos..len).any(|k| eval(steps, k, g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ttl::AtomName;

    fn trace(steps: &[&[&str]]) -> Trace {
        steps
            .iter()
            .map(|s| {
                s.iter()
                    .map(|n| AtomName::new(*n).unwrap())
                    .collect::<LabelSet>()
            })
            .collect()
    }

    fn p(n: &str) -> LtlFormula {
        LtlFormula::Prop(AtomName::new(n).unwrap())
    }

    #[test]
    fn proposition() {
        assert!(ltlf_satisfies(&trace(&[&["a"]]), 0, &p("a")).unwrap());
        assert!(!ltlf_satisfies(&trace(&[&["a"]]), 1, &p("a")).unwrap());
    }

    #[test]
    fn eventually() {
        let t = trace(&[&["a"], &["b"]]);
        let f = LtlFormula::eventually(p("b"));
        assert!(ltlf_satisfies(&t, 0, &f).unwrap());
        assert!(ltlf_satisfies(&t, 1, &f).unwrap());
        assert!(!ltlf_satisfies(&t, 2, &f).unwrap());
    }

    #[test]
    fn strong_next() {
        let t = trace(&[&["a"], &["b"]]);
        assert!(ltlf_satisfies(&t, 0, &LtlFormula::next(p("b"))).unwrap());
        assert!(!ltlf_satisfies(
            &t,
            1,
            &LtlFormula::next(LtlFormula::truth(AtomName::new("a").unwrap()))
        )
        .unwrap());
    }

    #[test]
    fn until() {
        let t = trace(&[&["a"], &["a"], &["b"]]);
        assert!(ltlf_satisfies(&t, 0, &LtlFormula::until(p("a"), p("b"))).unwrap());
        let t = trace(&[&["a"], &[], &["b"]]);
        assert!(!ltlf_satisfies(&t, 0, &LtlFormula::until(p("a"), p("b"))).unwrap());
        assert!(!ltlf_satisfies(&trace(&[&["a"]]), 0, &LtlFormula::until(p("a"), p("b"))).unwrap());
    }

    #[test]
    fn position_out_of_range() {
        let t = trace(&[&["a"]]);
        assert_eq!(
            ltlf_satisfies(&t, 2, &p("a")),
            Err(LtlError::PositionOutOfRange {
                position: 2,
                len: 1
            })
        );
    }
}
