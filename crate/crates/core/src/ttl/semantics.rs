use super::{LabelSet, Trace, TtlError, TtlFormula};

/// Finite-trace satisfaction of a Concurrent-free TTL formula.
///
/// * `α`: some instant contains `α`.
/// * `α~`: some instant holds a proposition other than `α` and not `α`.
/// * `T ; T'`: for some split `j ≤ |λ|-2`, `λ[0,j] ⊨ T` and `λ[j+1,|λ|-1] ⊨ T'`.
/// * `T | T'`: either disjunct holds on the whole trace.
///
/// The empty trace satisfies nothing.
pub fn ttl_satisfies(trace: &Trace, f: &TtlFormula) -> Result<bool, TtlError> {
    if f.has_concurrent() {
        return Err(TtlError::ConcurrentNotExpanded);
    }
    Ok(holds(trace.steps(), f))
}

fn holds(path: &[LabelSet], f: &TtlFormula) -> bool {
    match f {
        TtlFormula::Atom(a) => path.iter().any(|l| l.contains(a)),
        TtlFormula::NegAtom(a) => path.iter().any(|l| l.witnesses_negation_of(a)),
        TtlFormula::Seq(lhs, rhs) => {
            // j ranges over 0..=len-2 so that the suffix is never empty.
            (1..path.len()).any(|split| holds(&path[..split], lhs) && holds(&path[split..], rhs))
        }
        TtlFormula::Choice(lhs, rhs) => holds(path, lhs) || holds(path, rhs),
        TtlFormula::Concurrent(..) => unreachable!("checked by ttl_satisfies"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ttl::{parse_ttl, AtomName};

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

    fn sat(t: &Trace, f: &str) -> bool {
        ttl_satisfies(t, &parse_ttl(f).unwrap().expand_concurrent()).unwrap()
    }

    #[test]
    fn atom() {
        assert!(sat(&trace(&[&["wood"]]), "wood"));
        assert!(!sat(&trace(&[&["iron"]]), "wood"));
    }

    #[test]
    fn negated_atom() {
        assert!(!sat(&trace(&[&["wood"]]), "wood~"));
        assert!(sat(&trace(&[&["grass"]]), "wood~"));
        assert!(!sat(&trace(&[&[]]), "wood~"));
        // another proposition does hold, but together with wood
        assert!(!sat(&trace(&[&["wood", "grass"]]), "wood~"));
    }

    #[test]
    fn shears() {
        let f = "(wood & iron) ; workbench";
        assert!(sat(
            &trace(&[&[], &["wood"], &["iron"], &[], &["workbench"]]),
            f
        ));
        assert!(sat(&trace(&[&["iron"], &["wood"], &["workbench"]]), f));
        assert!(!sat(&trace(&[&["workbench"], &["wood"], &["iron"]]), f));
    }

    #[test]
    fn sequence_needs_strictly_later_suffix() {
        assert!(!sat(&trace(&[&["a", "b"]]), "a ; b"));
        assert!(!sat(&trace(&[&["a"]]), "a ; a"));
        assert!(sat(&trace(&[&["a"], &["a"]]), "a ; a"));
    }

    #[test]
    fn empty_trace_satisfies_nothing() {
        let empty = Trace::default();
        for f in ["a", "a~", "a ; b", "a | b"] {
            assert!(!sat(&empty, f), "{f}");
        }
    }

    #[test]
    fn concurrent_is_rejected() {
        let f = parse_ttl("a & b").unwrap();
        assert_eq!(
            ttl_satisfies(&trace(&[&["a"]]), &f),
            Err(TtlError::ConcurrentNotExpanded)
        );
    }
}
