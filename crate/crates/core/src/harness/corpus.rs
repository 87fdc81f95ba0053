use crate::ttl::{parse_ttl, TtlFormula};

/// The five complex instructions of the zero-shot suite.
pub const COMPLEX_CORPUS: [&str; 5] = [
    "((iron ; workbench) & wood) ; toolshed ; axe",
    "(wood & iron) ; workbench",
    "grass~ ; grass ; (workbench | toolshed)",
    "(workbench~ & toolshed~) ; toolshed",
    "((wood ; grass) | (iron ; axe)) ; workbench ; toolshed~",
];

/// The corpus with each instruction parsed.
pub fn complex_corpus() -> Vec<(String, TtlFormula)> {
    COMPLEX_CORPUS
        .iter()
        .map(|text| {
            (
                text.to_string(),
                parse_ttl(text).expect("corpus instructions parse"),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::extract;

    #[test]
    fn corpus_extracts() {
        let sizes: Vec<usize> = complex_corpus()
            .iter()
            .map(|(_, f)| extract(&f.expand_concurrent()).unwrap().len())
            .collect();
        assert_eq!(sizes, [2, 2, 2, 2, 2]);
    }
}
