//! Translations from TTL into LTL.
//!
//! [`translate_tau1`] and [`translate_tau2`] follow the two mutually recursive
//! translation schemes case by case, with the negation disjunction ranging
//! over an explicit alphabet.
//!
//! [`translate_strict`] is a continuation-passing variant that makes each
//! sequenced task start strictly after its predecessor finished. It exists
//! because the first two schemes let `T'` in `T ; T'` be fulfilled at the same
//! instant as the last step of `T`, and do not carry the continuation into
//! the disjuncts of a choice on the left of `;`.

use super::{LtlError, LtlFormula};
use crate::ttl::{Alphabet, AtomName, TtlFormula};

fn check(f: &TtlFormula, alphabet: &Alphabet) -> Result<(), LtlError> {
    if f.has_concurrent() {
        return Err(LtlError::ConcurrentNotExpanded);
    }
    for atom in f.atoms() {
        if !alphabet.contains(&atom) {
            return Err(LtlError::AtomOutsideAlphabet(atom));
        }
    }
    Ok(())
}

/// `(⋁_{β ≠ α} p_β) ∧ ¬p_α`, the disjunction left-nested in alphabet order.
fn negation_witness(atom: &AtomName, alphabet: &Alphabet) -> Result<LtlFormula, LtlError> {
    let disjunction = alphabet
        .iter()
        .filter(|b| *b != atom)
        .map(|b| LtlFormula::Prop(b.clone()))
        .reduce(LtlFormula::or)
        .ok_or_else(|| LtlError::EmptyWitnessAlphabet(atom.clone()))?;
    Ok(LtlFormula::and(
        disjunction,
        LtlFormula::not(LtlFormula::Prop(atom.clone())),
    ))
}

pub fn translate_tau1(f: &TtlFormula, alphabet: &Alphabet) -> Result<LtlFormula, LtlError> {
    check(f, alphabet)?;
    tau1(f, alphabet)
}

pub fn translate_tau2(f: &TtlFormula, alphabet: &Alphabet) -> Result<LtlFormula, LtlError> {
    check(f, alphabet)?;
    tau2(f, alphabet)
}

fn tau1(f: &TtlFormula, alphabet: &Alphabet) -> Result<LtlFormula, LtlError> {
    Ok(match f {
        TtlFormula::Atom(a) => LtlFormula::eventually(LtlFormula::Prop(a.clone())),
        TtlFormula::NegAtom(a) => LtlFormula::eventually(negation_witness(a, alphabet)?),
        TtlFormula::Seq(..) => LtlFormula::eventually(tau_seq(f, alphabet)?),
        TtlFormula::Choice(l, r) => LtlFormula::or(tau1(l, alphabet)?, tau1(r, alphabet)?),
        TtlFormula::Concurrent(..) => return Err(LtlError::ConcurrentNotExpanded),
    })
}

fn tau2(f: &TtlFormula, alphabet: &Alphabet) -> Result<LtlFormula, LtlError> {
    Ok(match f {
        TtlFormula::Atom(a) => LtlFormula::Prop(a.clone()),
        TtlFormula::NegAtom(a) => negation_witness(a, alphabet)?,
        TtlFormula::Seq(..) => tau_seq(f, alphabet)?,
        TtlFormula::Choice(l, r) => LtlFormula::or(tau2(l, alphabet)?, tau2(r, alphabet)?),
        TtlFormula::Concurrent(..) => return Err(LtlError::ConcurrentNotExpanded),
    })
}

// Body shared by both schemes for `T ; T'`:
//   T = T1;T2  ->  τ2(T1) ∧ τ1(T2 ; T')
//   otherwise  ->  τ2(T)  ∧ τ1(T')
fn tau_seq(f: &TtlFormula, alphabet: &Alphabet) -> Result<LtlFormula, LtlError> {
    let TtlFormula::Seq(head, tail) = f else {
        unreachable!("tau_seq called on a non-sequence");
    };
    match head.as_ref() {
        TtlFormula::Seq(first, second) => {
            let rest = TtlFormula::Seq(second.clone(), tail.clone());
            Ok(LtlFormula::and(
                tau2(first, alphabet)?,
                tau1(&rest, alphabet)?,
            ))
        }
        _ => Ok(LtlFormula::and(
            tau2(head, alphabet)?,
            tau1(tail, alphabet)?,
        )),
    }
}

/// Translation where `T ; T'` requires `T'` to start strictly after `T`.
///
/// `start(T, k)` holds at an instant where a run of `T` begins and, once it
/// ends, `k` holds at the following instant:
///
/// ```text
/// start(α,   k) = p_α ∧ X k
/// start(α~,  k) = w_α ∧ X k
/// start(T;T',k) = start(T, F start(T', k))
/// start(T|T',k) = start(T, k) ∨ start(T', k)
/// strict(T)     = F start(T, ⊤)
/// ```
///
/// Continuations are duplicated across choices, so the output grows with
/// the number of choice nodes.
pub fn translate_strict(f: &TtlFormula, alphabet: &Alphabet) -> Result<LtlFormula, LtlError> {
    check(f, alphabet)?;
    Ok(LtlFormula::eventually(strict_start(f, None, alphabet)?))
}

fn strict_start(
    f: &TtlFormula,
    then: Option<&LtlFormula>,
    alphabet: &Alphabet,
) -> Result<LtlFormula, LtlError> {
    let step = |now: LtlFormula| match then {
        Some(k) => LtlFormula::and(now, LtlFormula::next(k.clone())),
        None => now,
    };
    Ok(match f {
        TtlFormula::Atom(a) => step(LtlFormula::Prop(a.clone())),
        TtlFormula::NegAtom(a) => step(negation_witness(a, alphabet)?),
        TtlFormula::Seq(l, r) => {
            let rest = LtlFormula::eventually(strict_start(r, then, alphabet)?);
            strict_start(l, Some(&rest), alphabet)?
        }
        TtlFormula::Choice(l, r) => LtlFormula::or(
            strict_start(l, then, alphabet)?,
            strict_start(r, then, alphabet)?,
        ),
        TtlFormula::Concurrent(..) => return Err(LtlError::ConcurrentNotExpanded),
    })
}
