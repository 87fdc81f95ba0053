use std::fmt;

use crate::ttl::AtomName;

/// Linear temporal logic over finite traces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LtlFormula {
    Prop(AtomName),
    Not(Box<LtlFormula>),
    And(Box<LtlFormula>, Box<LtlFormula>),
    Or(Box<LtlFormula>, Box<LtlFormula>),
    Next(Box<LtlFormula>),
    Until(Box<LtlFormula>, Box<LtlFormula>),
    Eventually(Box<LtlFormula>),
}

impl LtlFormula {
    pub fn prop(name: AtomName) -> Self {
        LtlFormula::Prop(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: LtlFormula) -> Self {
        LtlFormula::Not(Box::new(f))
    }

    pub fn and(lhs: LtlFormula, rhs: LtlFormula) -> Self {
        LtlFormula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: LtlFormula, rhs: LtlFormula) -> Self {
        LtlFormula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn next(f: LtlFormula) -> Self {
        LtlFormula::Next(Box::new(f))
    }

    pub fn until(lhs: LtlFormula, rhs: LtlFormula) -> Self {
        LtlFormula::Until(Box::new(lhs), Box::new(rhs))
    }

    pub fn eventually(f: LtlFormula) -> Self {
        LtlFormula::Eventually(Box::new(f))
    }

    /// `x ∨ ¬x`, true at every instant of a non-empty suffix.
    pub fn truth(witness: AtomName) -> Self {
        let p = LtlFormula::Prop(witness);
        LtlFormula::or(p.clone(), LtlFormula::not(p))
    }

    /// Prefix notation: `F(..)`, `and(..,..)`, `or(..,..)`, `not(..)`,
    /// `X(..)`, `U(..,..)`, `p:<name>`.
    pub fn to_prefix(&self) -> String {
        let mut out = String::new();
        self.write_prefix(&mut out);
        out
    }

    fn write_prefix(&self, out: &mut String) {
        let binary = |out: &mut String, name: &str, l: &LtlFormula, r: &LtlFormula| {
            out.push_str(name);
            out.push('(');
            l.write_prefix(out);
            out.push(',');
            r.write_prefix(out);
            out.push(')');
        };
        let unary = |out: &mut String, name: &str, f: &LtlFormula| {
            out.push_str(name);
            out.push('(');
            f.write_prefix(out);
            out.push(')');
        };
        match self {
            LtlFormula::Prop(a) => {
                out.push_str("p:");
                out.push_str(a.as_str());
            }
            LtlFormula::Not(f) => unary(out, "not", f),
            LtlFormula::And(l, r) => binary(out, "and", l, r),
            LtlFormula::Or(l, r) => binary(out, "or", l, r),
            LtlFormula::Next(f) => unary(out, "X", f),
            LtlFormula::Until(l, r) => binary(out, "U", l, r),
            LtlFormula::Eventually(f) => unary(out, "F", f),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LtlFormula::Prop(_) => 1,
            LtlFormula::Not(f) | LtlFormula::Next(f) | LtlFormula::Eventually(f) => 1 + f.size(),
            LtlFormula::And(l, r) | LtlFormula::Or(l, r) | LtlFormula::Until(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn mentions_next(&self) -> bool {
        match self {
            LtlFormula::Prop(_) => false,
            LtlFormula::Next(_) => true,
            LtlFormula::Not(f) | LtlFormula::Eventually(f) => f.mentions_next(),
            LtlFormula::And(l, r) | LtlFormula::Or(l, r) | LtlFormula::Until(l, r) => {
                l.mentions_next() || r.mentions_next()
            }
        }
    }
}

impl fmt::Display for LtlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_prefix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> LtlFormula {
        LtlFormula::Prop(AtomName::new(n).unwrap())
    }

    #[test]
    fn prefix_notation() {
        let f = LtlFormula::eventually(LtlFormula::and(
            LtlFormula::or(p("iron"), p("grass")),
            LtlFormula::not(p("wood")),
        ));
        assert_eq!(f.to_prefix(), "F(and(or(p:iron,p:grass),not(p:wood)))");
        assert_eq!(
            LtlFormula::until(p("a"), LtlFormula::next(p("b"))).to_prefix(),
            "U(p:a,X(p:b))"
        );
    }
}
