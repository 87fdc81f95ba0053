use std::collections::BTreeSet;
use std::fmt;

use super::AtomName;

/// Abstract syntax of a TTL task.
///
/// Negation only exists on atoms (`NegAtom`), so a negated compound task is
/// unrepresentable. `Concurrent` is sugar and is removed by
/// [`TtlFormula::expand_concurrent`] before evaluation or extraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TtlFormula {
    Atom(AtomName),
    NegAtom(AtomName),
    Seq(Box<TtlFormula>, Box<TtlFormula>),
    Choice(Box<TtlFormula>, Box<TtlFormula>),
    Concurrent(Box<TtlFormula>, Box<TtlFormula>),
}

/// Constructor kind of a formula node, mostly useful for statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaKind {
    Atom,
    NegAtom,
    Seq,
    Choice,
    Concurrent,
}

impl TtlFormula {
    pub fn atom(name: AtomName) -> Self {
        TtlFormula::Atom(name)
    }

    pub fn neg(name: AtomName) -> Self {
        TtlFormula::NegAtom(name)
    }

    pub fn seq(lhs: TtlFormula, rhs: TtlFormula) -> Self {
        TtlFormula::Seq(Box::new(lhs), Box::new(rhs))
    }

    pub fn choice(lhs: TtlFormula, rhs: TtlFormula) -> Self {
        TtlFormula::Choice(Box::new(lhs), Box::new(rhs))
    }

    pub fn concurrent(lhs: TtlFormula, rhs: TtlFormula) -> Self {
        TtlFormula::Concurrent(Box::new(lhs), Box::new(rhs))
    }

    pub fn kind(&self) -> FormulaKind {
        match self {
            TtlFormula::Atom(_) => FormulaKind::Atom,
            TtlFormula::NegAtom(_) => FormulaKind::NegAtom,
            TtlFormula::Seq(..) => FormulaKind::Seq,
            TtlFormula::Choice(..) => FormulaKind::Choice,
            TtlFormula::Concurrent(..) => FormulaKind::Concurrent,
        }
    }

    /// Replaces every `T & T'` by `(T ; T') | (T' ; T)`, bottom-up.
    pub fn expand_concurrent(&self) -> TtlFormula {
        match self {
            TtlFormula::Atom(_) | TtlFormula::NegAtom(_) => self.clone(),
            TtlFormula::Seq(l, r) => TtlFormula::seq(l.expand_concurrent(), r.expand_concurrent()),
            TtlFormula::Choice(l, r) => {
                TtlFormula::choice(l.expand_concurrent(), r.expand_concurrent())
            }
            TtlFormula::Concurrent(l, r) => {
                let l = l.expand_concurrent();
                let r = r.expand_concurrent();
                TtlFormula::choice(TtlFormula::seq(l.clone(), r.clone()), TtlFormula::seq(r, l))
            }
        }
    }

    pub fn has_concurrent(&self) -> bool {
        match self {
            TtlFormula::Atom(_) | TtlFormula::NegAtom(_) => false,
            TtlFormula::Concurrent(..) => true,
            TtlFormula::Seq(l, r) | TtlFormula::Choice(l, r) => {
                l.has_concurrent() || r.has_concurrent()
            }
        }
    }

    /// Every atom name occurring in the formula, negated or not.
    pub fn atoms(&self) -> BTreeSet<AtomName> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<AtomName>) {
        match self {
            TtlFormula::Atom(a) | TtlFormula::NegAtom(a) => {
                out.insert(a.clone());
            }
            TtlFormula::Seq(l, r) | TtlFormula::Choice(l, r) | TtlFormula::Concurrent(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            TtlFormula::Atom(_) | TtlFormula::NegAtom(_) => 1,
            TtlFormula::Seq(l, r) | TtlFormula::Choice(l, r) | TtlFormula::Concurrent(l, r) => {
                1 + l.node_count() + r.node_count()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TtlFormula::Atom(_) | TtlFormula::NegAtom(_) => 1,
            TtlFormula::Seq(l, r) | TtlFormula::Choice(l, r) | TtlFormula::Concurrent(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn count_kind(&self, kind: FormulaKind) -> usize {
        let here = usize::from(self.kind() == kind);
        match self {
            TtlFormula::Atom(_) | TtlFormula::NegAtom(_) => here,
            TtlFormula::Seq(l, r) | TtlFormula::Choice(l, r) | TtlFormula::Concurrent(l, r) => {
                here + l.count_kind(kind) + r.count_kind(kind)
            }
        }
    }

    /// Canonical concrete syntax; `parse_ttl(&f.render())` gives back `f`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, Prec::Choice);
        out
    }

    fn render_into(&self, out: &mut String, ctx: Prec) {
        match self {
            TtlFormula::Atom(a) => out.push_str(a.as_str()),
            TtlFormula::NegAtom(a) => {
                out.push_str(a.as_str());
                out.push('~');
            }
            TtlFormula::Seq(l, r) => render_binary(out, ctx, Prec::Seq, " ; ", l, r),
            TtlFormula::Choice(l, r) => render_binary(out, ctx, Prec::Choice, " | ", l, r),
            TtlFormula::Concurrent(l, r) => render_binary(out, ctx, Prec::Conc, " & ", l, r),
        }
    }
}

/// Binding strength, weakest first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Choice,
    Seq,
    Conc,
    Unary,
}

impl Prec {
    fn tighter(self) -> Prec {
        match self {
            Prec::Choice => Prec::Seq,
            Prec::Seq => Prec::Conc,
            Prec::Conc | Prec::Unary => Prec::Unary,
        }
    }
}

// Operators are left-associative: a right operand at the same level needs
// parentheses, a left one does not.
fn render_binary(
    out: &mut String,
    ctx: Prec,
    own: Prec,
    op: &str,
    lhs: &TtlFormula,
    rhs: &TtlFormula,
) {
    let paren = ctx > own;
    if paren {
        out.push('(');
    }
    lhs.render_into(out, own);
    out.push_str(op);
    rhs.render_into(out, own.tighter());
    if paren {
        out.push(')');
    }
}

impl fmt::Display for TtlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
