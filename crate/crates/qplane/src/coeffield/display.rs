//! Canonical text for scalars.
//!
//! The emitted strings parse back through the CLI expression grammar and
//! reprint identically, so text output is a stable interchange format.
//! Precedence assumed in the grammar: `^` binds tighter than `*` and `/`,
//! which associate left; unary minus only heads an expression (or a
//! parenthesized subexpression).

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::CycNum;
use super::ratfunc::QPoly;
use super::{FieldElem, FieldMode};

/// A scalar rendered for use as a leading `*`-factor.
///
/// `body` is precedence-safe in factor position; a minus sign, when the
/// scalar is a single negatable term, is factored out into `neg`.
pub(crate) struct ScalarText {
    pub neg: bool,
    pub body: String,
}

struct PolyText {
    neg: bool,
    body: String,
    multi: bool,
}

fn rational_text(v: &BigRational) -> (bool, String) {
    let neg = v.is_negative();
    let a = v.abs();
    if a.is_integer() {
        (neg, a.numer().to_string())
    } else {
        (neg, format!("{}/{}", a.numer(), a.denom()))
    }
}

/// Fallback notation for cyclotomic coefficients outside the printable field:
/// a polynomial in the formal token `z<s>`.  Not CLI-parsable; reachable only
/// from compositum-valued scalars that never cross the CLI boundary.
fn zeta_text(c: &CycNum) -> PolyText {
    let s = c.conductor();
    let terms: Vec<(usize, BigRational)> = c
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .rev()
        .collect();
    let var = |e: usize| match e {
        0 => String::new(),
        1 => format!("z{s}"),
        _ => format!("z{s}^{e}"),
    };
    assemble(terms.into_iter().map(|(e, v)| {
        let (neg, a) = rational_text(&v);
        (neg, join_factor(&a, &var(e), v.abs().is_one()))
    }))
}

fn join_factor(coeff_abs: &str, var: &str, coeff_is_one: bool) -> String {
    match (coeff_is_one, var.is_empty()) {
        (_, true) => coeff_abs.to_string(),
        (true, false) => var.to_string(),
        (false, false) => format!("{coeff_abs}*{var}"),
    }
}

fn assemble(terms: impl Iterator<Item = (bool, String)>) -> PolyText {
    let mut out = String::new();
    let mut first_neg = false;
    let mut n = 0usize;
    for (neg, body) in terms {
        if n == 0 {
            first_neg = neg;
            out.push_str(&body);
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
        n += 1;
    }
    if n == 0 {
        return PolyText { neg: false, body: "0".into(), multi: false };
    }
    if n == 1 {
        PolyText { neg: first_neg, body: out, multi: false }
    } else {
        // Multi-term: the leading sign stays inside the body.
        let body = if first_neg { format!("-{out}") } else { out };
        PolyText { neg: false, body, multi: true }
    }
}

/// One q-monomial `c * q^e`.
fn q_term_text(c: &CycNum, e: usize) -> (bool, String) {
    let var = match e {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    };
    if let Some(r) = c.as_rational() {
        let (neg, a) = rational_text(r);
        (neg, join_factor(&a, &var, r.abs().is_one()))
    } else {
        let z = zeta_text(c);
        let inner = if z.multi { format!("({})", z.body) } else { z.body };
        (z.neg, join_factor(&inner, &var, false))
    }
}

fn qpoly_text(p: &QPoly) -> PolyText {
    let terms: Vec<(usize, CycNum)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .rev()
        .collect();
    assemble(terms.into_iter().map(|(e, c)| q_term_text(&c, e)))
}

/// Denominator rendering: bare only when unambiguous after a `/`.
fn denominator_text(p: &QPoly) -> String {
    let t = qpoly_text(p);
    if t.multi || t.neg {
        return format!("({})", if t.neg { format!("-{}", t.body) } else { t.body });
    }
    // Single positive term: safe bare iff it is `q^k` or an integer.
    let bare = p.as_unit_power().is_some()
        || (p.deg() == Some(0) && p.coeff(0).as_rational().is_some_and(|r| r.is_integer()));
    if bare {
        t.body
    } else {
        format!("({})", t.body)
    }
}

fn ratfunc_parts(fe: &FieldElem) -> Option<(PolyText, Option<String>)> {
    let r = fe.repr_rat()?;
    let num = qpoly_text(r.num());
    if r.den().is_one() {
        Some((num, None))
    } else {
        Some((num, Some(denominator_text(r.den()))))
    }
}

fn cyc_parts(fe: &FieldElem, mode: FieldMode) -> Option<PolyText> {
    let c = fe.repr_cyc()?;
    let t = mode.t();
    if t >= 2 {
        if let Some(coeffs) = c.lift_coeffs(t) {
            let poly = QPoly::from_coeffs(coeffs.into_iter().map(CycNum::from_rational).collect());
            return Some(qpoly_text(&poly));
        }
    }
    Some(zeta_text(c))
}

/// Factor-position rendering (used before `*y^j*x^i`).
pub(crate) fn factor(fe: &FieldElem, mode: FieldMode) -> ScalarText {
    match ratfunc_parts(fe) {
        Some((num, None)) => {
            if num.multi {
                ScalarText { neg: false, body: format!("({})", num.body) }
            } else {
                ScalarText { neg: num.neg, body: num.body }
            }
        }
        Some((num, Some(den))) => {
            let np = if num.multi { format!("({})", num.body) } else { num.body.clone() };
            ScalarText { neg: num.neg && !num.multi, body: format!("{np}/{den}") }
        }
        None => {
            let t = cyc_parts(fe, mode).expect("cyc repr");
            if t.multi {
                ScalarText { neg: false, body: format!("({})", t.body) }
            } else {
                ScalarText { neg: t.neg, body: t.body }
            }
        }
    }
}

/// Standalone rendering (full expression position).
pub(crate) fn standalone(fe: &FieldElem, mode: FieldMode) -> String {
    match ratfunc_parts(fe) {
        Some((num, None)) => signed(num),
        Some((num, Some(den))) => {
            let np = if num.multi { format!("({})", num.body) } else { num.body.clone() };
            let s = format!("{np}/{den}");
            if num.neg && !num.multi {
                format!("-{s}")
            } else {
                s
            }
        }
        None => signed(cyc_parts(fe, mode).expect("cyc repr")),
    }
}

fn signed(t: PolyText) -> String {
    if t.neg {
        format!("-{}", t.body)
    } else {
        t.body
    }
}
