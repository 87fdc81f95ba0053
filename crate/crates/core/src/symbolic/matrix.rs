use std::fmt;

use super::{SubTask, SymbolicError};
use crate::ttl::{AtomName, TtlFormula};

/// Ordered alternatives of sequential sub-task lists.
///
/// Each inner list is one way of fulfilling the formula, one sub-task after
/// another. The matrix is empty exactly when the formula has been fulfilled.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TaskMatrix {
    lists: Vec<Vec<SubTask>>,
}

impl TaskMatrix {
    /// Builds a matrix, dropping empty lists. Lists may only hold `Pos` and
    /// `Neg` sub-tasks.
    pub fn new(lists: Vec<Vec<SubTask>>) -> Result<Self, SymbolicError> {
        if lists
            .iter()
            .flatten()
            .any(|st| matches!(st, SubTask::PosChoice(..)))
        {
            return Err(SymbolicError::ChoiceInMatrix);
        }
        Ok(TaskMatrix {
            lists: lists.into_iter().filter(|l| !l.is_empty()).collect(),
        })
    }

    pub fn empty() -> Self {
        TaskMatrix::default()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn lists(&self) -> &[Vec<SubTask>] {
        &self.lists
    }

    pub fn heads(&self) -> impl Iterator<Item = &SubTask> {
        self.lists.iter().filter_map(|l| l.first())
    }

    /// Atoms occurring positively anywhere in the matrix.
    pub fn positive_atoms(&self) -> Vec<AtomName> {
        let mut out: Vec<AtomName> = Vec::new();
        for st in self.lists.iter().flatten() {
            if let SubTask::Pos(a) = st {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        }
        out
    }

    /// Every atom in the matrix, negated or not.
    pub fn atoms(&self) -> Vec<AtomName> {
        let mut out: Vec<AtomName> = Vec::new();
        for st in self.lists.iter().flatten() {
            for a in st.atoms() {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for TaskMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for list in &self.lists {
            let items: Vec<String> = list.iter().map(|st| st.to_string()).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

/// Splits a formula into its sequential sub-task lists.
///
/// An atom gives one singleton list. `T ; T'` appends every list of `T'` to
/// every list of `T`; the lists for the first alternative of `T'` come first,
/// in the order of `T`'s lists, then the lists for its second alternative, and
/// so on. `T | T'` lists `T`'s alternatives before those of `T'`.
pub fn extract(f: &TtlFormula) -> Result<TaskMatrix, SymbolicError> {
    if f.has_concurrent() {
        return Err(SymbolicError::ConcurrentNotExpanded);
    }
    Ok(TaskMatrix {
        lists: extract_lists(f),
    })
}

fn extract_lists(f: &TtlFormula) -> Vec<Vec<SubTask>> {
    match f {
        TtlFormula::Atom(a) => vec![vec![SubTask::Pos(a.clone())]],
        TtlFormula::NegAtom(a) => vec![vec![SubTask::Neg(a.clone())]],
        TtlFormula::Seq(l, r) => {
            let prefixes = extract_lists(l);
            let suffixes = extract_lists(r);
            let mut out = Vec::with_capacity(prefixes.len() * suffixes.len());
            for suffix in &suffixes {
                for prefix in &prefixes {
                    out.push(prefix.iter().chain(suffix).cloned().collect());
                }
            }
            out
        }
        TtlFormula::Choice(l, r) => {
            let mut out = extract_lists(l);
            out.extend(extract_lists(r));
            out
        }
        TtlFormula::Concurrent(..) => unreachable!("checked by extract"),
    }
}

/// Updates the matrix after proposition `p` became true.
///
/// Lists whose head `p` fulfils lose their head; the others are dropped. A
/// list that runs out has been completed, which fulfils the formula, so the
/// result is then empty.
pub fn progress(matrix: &TaskMatrix, p: &AtomName) -> TaskMatrix {
    let mut lists = Vec::with_capacity(matrix.lists.len());
    for list in &matrix.lists {
        match list.split_first() {
            Some((head, rest)) if head.fulfilled_by(p) => {
                if rest.is_empty() {
                    return TaskMatrix::empty();
                }
                lists.push(rest.to_vec());
            }
            _ => {}
        }
    }
    TaskMatrix { lists }
}

/// Picks the sub-task to work on next.
///
/// All heads equal: that head. Otherwise the first pair of differing
/// positive heads (scanning pairs `i < j` in list order) becomes a choice.
/// Failing that, the head of the first list.
pub fn select_subtask(matrix: &TaskMatrix) -> Option<SubTask> {
    let heads: Vec<&SubTask> = matrix.heads().collect();
    let first = *heads.first()?;
    for (i, a) in heads.iter().enumerate() {
        for b in &heads[i + 1..] {
            if let (SubTask::Pos(x), SubTask::Pos(y)) = (a, b) {
                if x != y {
                    return Some(SubTask::PosChoice(x.clone(), y.clone()));
                }
            }
        }
    }
    Some(first.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ttl::parse_ttl;

    fn at(n: &str) -> AtomName {
        AtomName::new(n).unwrap()
    }

    fn pos(n: &str) -> SubTask {
        SubTask::Pos(at(n))
    }

    fn neg(n: &str) -> SubTask {
        SubTask::Neg(at(n))
    }

    fn running_example() -> TaskMatrix {
        extract(&parse_ttl("((wood ; grass) | (iron ; axe)) ; workbench ; toolshed~").unwrap())
            .unwrap()
    }

    #[test]
    fn extract_running_example() {
        assert_eq!(
            running_example().lists(),
            &[
                vec![pos("wood"), pos("grass"), pos("workbench"), neg("toolshed")],
                vec![pos("iron"), pos("axe"), pos("workbench"), neg("toolshed")],
            ]
        );
    }

    #[test]
    fn extract_atom() {
        assert_eq!(
            extract(&parse_ttl("wood").unwrap()).unwrap().lists(),
            &[vec![pos("wood")]]
        );
    }

    #[test]
    fn extract_clones_in_append_order() {
        let m = extract(&parse_ttl("(a | b) ; (c | d)").unwrap()).unwrap();
        assert_eq!(
            m.lists(),
            &[
                vec![pos("a"), pos("c")],
                vec![pos("b"), pos("c")],
                vec![pos("a"), pos("d")],
                vec![pos("b"), pos("d")],
            ]
        );
    }

    #[test]
    fn extract_rejects_concurrent() {
        assert_eq!(
            extract(&parse_ttl("a & b").unwrap()),
            Err(SymbolicError::ConcurrentNotExpanded)
        );
    }

    #[test]
    fn progress_running_example() {
        let m = running_example();
        assert_eq!(
            progress(&m, &at("wood")).lists(),
            &[vec![pos("grass"), pos("workbench"), neg("toolshed")]]
        );
        assert_eq!(
            progress(&m, &at("iron")).lists(),
            &[vec![pos("axe"), pos("workbench"), neg("toolshed")]]
        );
    }

    #[test]
    fn progress_to_completion() {
        let m = TaskMatrix::new(vec![vec![pos("a")]]).unwrap();
        assert!(progress(&m, &at("a")).is_empty());
        // a shorter alternative completing also fulfils the formula
        let m = extract(&parse_ttl("a | a ; b").unwrap()).unwrap();
        assert!(progress(&m, &at("a")).is_empty());
    }

    #[test]
    fn progress_drops_unfulfilled_lists() {
        let m = TaskMatrix::new(vec![vec![pos("a"), pos("b")], vec![neg("a"), pos("c")]]).unwrap();
        assert_eq!(progress(&m, &at("a")).lists(), &[vec![pos("b")]]);
        assert_eq!(progress(&m, &at("z")).lists(), &[vec![pos("c")]]);
    }

    #[test]
    fn selection_rules() {
        assert_eq!(
            select_subtask(&running_example()),
            Some(SubTask::PosChoice(at("wood"), at("iron")))
        );
        let same =
            TaskMatrix::new(vec![vec![pos("a"), pos("b")], vec![pos("a"), pos("c")]]).unwrap();
        assert_eq!(select_subtask(&same), Some(pos("a")));
        let mixed = TaskMatrix::new(vec![vec![neg("a")], vec![pos("b")]]).unwrap();
        assert_eq!(select_subtask(&mixed), Some(neg("a")));
        let later = TaskMatrix::new(vec![
            vec![neg("a")],
            vec![pos("b")],
            vec![pos("b")],
            vec![pos("c")],
        ])
        .unwrap();
        assert_eq!(
            select_subtask(&later),
            Some(SubTask::PosChoice(at("b"), at("c")))
        );
        assert_eq!(select_subtask(&TaskMatrix::empty()), None);
    }

    #[test]
    fn matrix_rejects_choices_and_drops_empty_lists() {
        assert_eq!(
            TaskMatrix::new(vec![vec![SubTask::PosChoice(at("a"), at("b"))]]),
            Err(SymbolicError::ChoiceInMatrix)
        );
        assert_eq!(
            TaskMatrix::new(vec![vec![], vec![pos("a")]]).unwrap().len(),
            1
        );
    }

    #[test]
    fn display_one_list_per_line() {
        assert_eq!(
            running_example().to_string(),
            "wood grass workbench toolshed~\niron axe workbench toolshed~\n"
        );
    }
}
