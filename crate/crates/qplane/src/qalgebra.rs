//! The quantum plane: elements in normal form, automorphisms, and the
//! (twisted) center.
//!
//! Elements are finite maps from exponent pairs to nonzero scalars,
//! representing sums of `c * y^j * x^i` with the y-power written first.
//! All products are normalized through the commutation rule `x*y = q*y*x`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffield::{display, FieldElem, FieldMode};
use crate::error::Error;
use crate::Result;

/// An element of the quantum plane in normal form.
///
/// Keys are `(x_exp, y_exp)`; the map never stores a zero coefficient, so
/// structural equality is element equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QElem {
    mode: FieldMode,
    terms: BTreeMap<(u32, u32), FieldElem>,
}

impl QElem {
    pub fn zero(mode: FieldMode) -> Self {
        QElem { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: FieldMode) -> Self {
        Self::monomial(mode, 0, 0)
    }

    pub fn var_x(mode: FieldMode) -> Self {
        Self::monomial(mode, 1, 0)
    }

    pub fn var_y(mode: FieldMode) -> Self {
        Self::monomial(mode, 0, 1)
    }

    /// `y^y_exp * x^x_exp` with coefficient 1.
    pub fn monomial(mode: FieldMode, x_exp: u32, y_exp: u32) -> Self {
        Self::term(mode, mode.one(), x_exp, y_exp)
    }

    /// `c * y^y_exp * x^x_exp`.
    pub fn term(mode: FieldMode, c: FieldElem, x_exp: u32, y_exp: u32) -> Self {
        let mut e = Self::zero(mode);
        e.add_term(x_exp, y_exp, c);
        e
    }

    pub fn scalar(mode: FieldMode, c: FieldElem) -> Self {
        Self::term(mode, c, 0, 0)
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `y^y_exp * x^x_exp` (zero if absent).
    pub fn coeff(&self, x_exp: u32, y_exp: u32) -> FieldElem {
        self.terms.get(&(x_exp, y_exp)).cloned().unwrap_or_else(|| self.mode.zero())
    }

    /// Terms as `(x_exp, y_exp, coefficient)`, ascending in `(x_exp, y_exp)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &FieldElem)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximum of `x_exp + y_exp` over the support; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// The sum of the terms with `x_exp + y_exp = degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&(i, j), _)| i + j == degree)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        QElem { mode: self.mode, terms }
    }

    /// Accumulates `c * y^y_exp * x^x_exp`, dropping the key if the sum
    /// cancels.
    pub(crate) fn add_term(&mut self, x_exp: u32, y_exp: u32, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let key = (x_exp, y_exp);
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    fn check_mode(&self, other: &Self) {
        assert_eq!(self.mode, other.mode, "mixed coefficient field modes");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_mode(other);
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, c.neg())).collect();
        QElem { mode: self.mode, terms }
    }

    pub fn scalar_mul(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.mode);
        }
        let terms = self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect();
        QElem { mode: self.mode, terms }
    }

    /// Product in normal form: crossing `x^{i1}` past `y^{j2}` costs
    /// `q^{i1*j2}`.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_mode(other);
        let mut out = Self::zero(self.mode);
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                let twist = self.mode.q_power(i64::from(i1) * i64::from(j2));
                out.add_term(i1 + i2, j1 + j2, c1.mul(c2).mul(&twist));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.mode);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// True iff the element commutes with everything: all exponents are
    /// multiples of the order of q (only the constant term when q is not a
    /// root of unity).
    pub fn is_central(&self) -> bool {
        let t = self.mode.t();
        self.terms.keys().all(|&(i, j)| exp_divisible(t, i) && exp_divisible(t, j))
    }
}

fn exp_divisible(t: u32, e: u32) -> bool {
    if t == 0 {
        e == 0
    } else {
        e % t == 0
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Display order: (y_exp, x_exp) descending.
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (std::cmp::Reverse(j), std::cmp::Reverse(i)));
        if keys == [(0, 0)] {
            return f.write_str(&self.mode.text(&self.terms[&(0, 0)]));
        }
        for (n, &(i, j)) in keys.iter().enumerate() {
            let c = display::factor(&self.terms[&(i, j)], self.mode);
            match (n, c.neg) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let vars = var_text(i, j);
            if vars.is_empty() {
                f.write_str(&c.body)?;
            } else if c.body == "1" {
                f.write_str(&vars)?;
            } else {
                write!(f, "{}*{}", c.body, vars)?;
            }
        }
        Ok(())
    }
}

fn var_text(x_exp: u32, y_exp: u32) -> String {
    let mut parts = Vec::new();
    match y_exp {
        0 => {}
        1 => parts.push("y".to_string()),
        j => parts.push(format!("y^{j}")),
    }
    match x_exp {
        0 => {}
        1 => parts.push("x".to_string()),
        i => parts.push(format!("x^{i}")),
    }
    parts.join("*")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutKind {
    /// `x -> mu1*x`, `y -> mu2*y`.
    Toric,
    /// `x -> mu1*y`, `y -> mu2*x`; exists only at q = -1.
    Flip,
}

/// A diagonal or variable-swapping algebra automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    mode: FieldMode,
    kind: AutKind,
    mu1: FieldElem,
    mu2: FieldElem,
}

impl Automorphism {
    pub fn toric(mode: FieldMode, mu1: FieldElem, mu2: FieldElem) -> Result<Self> {
        if mu1.is_zero() || mu2.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(Automorphism { mode, kind: AutKind::Toric, mu1, mu2 })
    }

    pub fn flip(mode: FieldMode, mu1: FieldElem, mu2: FieldElem) -> Result<Self> {
        if mode.t() != 2 {
            return Err(Error::WrongMode(mode.to_string()));
        }
        if mu1.is_zero() || mu2.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(Automorphism { mode, kind: AutKind::Flip, mu1, mu2 })
    }

    pub fn identity(mode: FieldMode) -> Self {
        Automorphism { mode, kind: AutKind::Toric, mu1: mode.one(), mu2: mode.one() }
    }

    pub fn is_identity(&self) -> bool {
        self.kind == AutKind::Toric && self.mu1.is_one() && self.mu2.is_one()
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn kind(&self) -> AutKind {
        self.kind
    }

    pub fn mu1(&self) -> &FieldElem {
        &self.mu1
    }

    pub fn mu2(&self) -> &FieldElem {
        &self.mu2
    }

    /// Image of x, as an element.
    pub fn image_x(&self) -> QElem {
        match self.kind {
            AutKind::Toric => QElem::term(self.mode, self.mu1.clone(), 1, 0),
            AutKind::Flip => QElem::term(self.mode, self.mu1.clone(), 0, 1),
        }
    }

    /// Image of y, as an element.
    pub fn image_y(&self) -> QElem {
        match self.kind {
            AutKind::Toric => QElem::term(self.mode, self.mu2.clone(), 0, 1),
            AutKind::Flip => QElem::term(self.mode, self.mu2.clone(), 1, 0),
        }
    }

    /// Algebra-map image of an element, computed per monomial:
    /// toric sends `y^j x^i` to `mu1^i mu2^j y^j x^i`; flip sends it to
    /// `mu1^i mu2^j (-1)^{ij} y^i x^j` (the sign from re-normalizing the
    /// swapped variables).
    pub fn apply(&self, a: &QElem) -> QElem {
        assert_eq!(self.mode, a.mode(), "mixed coefficient field modes");
        let mut out = QElem::zero(self.mode);
        for (i, j, c) in a.terms() {
            let scale = power(&self.mu1, i).mul(&power(&self.mu2, j));
            match self.kind {
                AutKind::Toric => out.add_term(i, j, c.mul(&scale)),
                AutKind::Flip => {
                    let sign = self.mode.sign(i64::from(i) * i64::from(j));
                    out.add_term(j, i, c.mul(&scale).mul(&sign));
                }
            }
        }
        out
    }

    /// `self.compose(g)` applies `g` first: `(f∘g)(a) = f(g(a))`.
    pub fn compose(&self, g: &Self) -> Self {
        assert_eq!(self.mode, g.mode, "mixed coefficient field modes");
        let (f1, f2, g1, g2) = (&self.mu1, &self.mu2, &g.mu1, &g.mu2);
        let (kind, mu1, mu2) = match (self.kind, g.kind) {
            (AutKind::Toric, AutKind::Toric) => (AutKind::Toric, f1.mul(g1), f2.mul(g2)),
            (AutKind::Toric, AutKind::Flip) => (AutKind::Flip, f2.mul(g1), f1.mul(g2)),
            (AutKind::Flip, AutKind::Toric) => (AutKind::Flip, f1.mul(g1), f2.mul(g2)),
            (AutKind::Flip, AutKind::Flip) => (AutKind::Toric, f2.mul(g1), f1.mul(g2)),
        };
        Automorphism { mode: self.mode, kind, mu1, mu2 }
    }

    pub fn inverse(&self) -> Self {
        let inv = |m: &FieldElem| m.inv().expect("automorphism scalars are nonzero");
        let (mu1, mu2) = match self.kind {
            AutKind::Toric => (inv(&self.mu1), inv(&self.mu2)),
            AutKind::Flip => (inv(&self.mu2), inv(&self.mu1)),
        };
        Automorphism { mode: self.mode, kind: self.kind, mu1, mu2 }
    }

    /// True iff the two automorphisms commute.
    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Shape of the set of elements `z` with `z*sigma(b) = b*z` for all `b`.
    pub fn twisted_center(&self) -> TwistedCenterDesc {
        let shape = match self.kind {
            AutKind::Flip => TwistedCenterShape::Zero,
            AutKind::Toric => {
                // A monomial y^j x^i lies in the set iff mu1 = q^j and
                // mu2 = q^{-i}; solve each congruence minimally.
                let ye = self.mode.is_q_power(&self.mu1).expect("nonzero scalar");
                let xe = self.mode.is_q_power(&self.mu2).expect("nonzero scalar");
                match (min_y_exp(self.mode, ye), min_x_exp(self.mode, xe)) {
                    (Some(0), Some(0)) => TwistedCenterShape::FullPolynomialCenter,
                    (Some(y_exp), Some(x_exp)) => {
                        TwistedCenterShape::CenterTimesMonomial { x_exp, y_exp }
                    }
                    _ => TwistedCenterShape::Zero,
                }
            }
        };
        TwistedCenterDesc { mode: self.mode, shape }
    }
}

/// Minimal j >= 0 with mu1 = q^j, given the exponent reading of mu1.
fn min_y_exp(mode: FieldMode, e: Option<i64>) -> Option<u32> {
    let e = e?;
    match mode {
        FieldMode::GenericQ => u32::try_from(e).ok(),
        FieldMode::RootOfUnity { t } => Some((e.rem_euclid(i64::from(t))) as u32),
    }
}

/// Minimal i >= 0 with mu2 = q^{-i}, given the exponent reading of mu2.
fn min_x_exp(mode: FieldMode, e: Option<i64>) -> Option<u32> {
    let e = e?;
    match mode {
        FieldMode::GenericQ => u32::try_from(-e).ok(),
        FieldMode::RootOfUnity { t } => Some(((-e).rem_euclid(i64::from(t))) as u32),
    }
}

fn power(base: &FieldElem, e: u32) -> FieldElem {
    base.pow(i64::from(e)).expect("nonnegative power")
}

/// The set of elements `z` with `z*sigma(b) = b*z` for all `b`, described by
/// shape: zero, the full center, or the center times a fixed monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCenterDesc {
    mode: FieldMode,
    shape: TwistedCenterShape,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistedCenterShape {
    Zero,
    /// The center `k[x^t, y^t]` (just `k` when q has infinite order).
    FullPolynomialCenter,
    /// `k[x^t, y^t] * y^y_exp x^x_exp`.
    CenterTimesMonomial { x_exp: u32, y_exp: u32 },
}

impl TwistedCenterDesc {
    pub fn shape(&self) -> TwistedCenterShape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.shape == TwistedCenterShape::Zero
    }

    pub fn contains_monomial(&self, x_exp: u32, y_exp: u32) -> bool {
        let t = self.mode.t();
        match self.shape {
            TwistedCenterShape::Zero => false,
            TwistedCenterShape::FullPolynomialCenter => {
                exp_divisible(t, x_exp) && exp_divisible(t, y_exp)
            }
            TwistedCenterShape::CenterTimesMonomial { x_exp: i0, y_exp: j0 } => {
                congruent(t, x_exp, i0) && congruent(t, y_exp, j0)
            }
        }
    }

    pub fn contains(&self, a: &QElem) -> bool {
        a.terms().all(|(i, j, _)| self.contains_monomial(i, j))
    }
}

fn congruent(t: u32, e: u32, r: u32) -> bool {
    if t == 0 {
        e == r
    } else {
        e % t == r % t
    }
}
