//! Field modes and exact scalars.
//!
//! [`FieldMode`] picks the coefficient field of the quantum plane:
//! `GenericQ` is the rational-function field Q(q) with q transcendental, and
//! `RootOfUnity { t }` is the cyclotomic field Q(zeta_t) with q = zeta_t,
//! t >= 2 (t = 2 gives q = -1 over plain Q).  [`FieldElem`] values are
//! canonical, so `==` decides mathematical equality; all operations are pure.
//!
//! Scalars of sampling automorphisms may involve roots of unity outside the
//! mode's own field (for example mu in mu_6 over q = zeta_3 or over Q(q)):
//! arithmetic silently works in the compositum cyclotomic field, while q
//! itself stays pinned by the mode.

mod cyclotomic;
pub(crate) mod display;
mod poly;
mod ratfunc;

use num_rational::BigRational;

use crate::{Error, Result};
use cyclotomic::CycNum;
use ratfunc::RatFunc;

/// Which exact coefficient field the algebra lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldMode {
    /// Q(q), q an indeterminate.
    GenericQ,
    /// Q(zeta_t), q = zeta_t a primitive t-th root of unity, t >= 2.
    RootOfUnity {
        /// Multiplicative order of q.
        t: u32,
    },
}

impl FieldMode {
    /// Root-of-unity mode with the given order; t must be at least 2.
    pub fn root_of_unity(t: u32) -> Result<Self> {
        if t < 2 {
            return Err(Error::InvalidOrder(t));
        }
        Ok(FieldMode::RootOfUnity { t })
    }

    /// The order of q: 0 in generic mode (we use "t = 0" as "no torsion").
    pub fn t(&self) -> u32 {
        match self {
            FieldMode::GenericQ => 0,
            FieldMode::RootOfUnity { t } => *t,
        }
    }

    /// Zero scalar of this mode.
    pub fn zero(&self) -> FieldElem {
        match self {
            FieldMode::GenericQ => FieldElem { repr: Repr::Rat(RatFunc::zero()) },
            FieldMode::RootOfUnity { .. } => FieldElem { repr: Repr::Cyc(CycNum::zero()) },
        }
    }

    /// One scalar of this mode.
    pub fn one(&self) -> FieldElem {
        self.integer(1)
    }

    /// Embed an integer.
    pub fn integer(&self, v: i64) -> FieldElem {
        self.rational(BigRational::from_integer(v.into()))
    }

    /// Embed a rational number.
    pub fn rational(&self, v: BigRational) -> FieldElem {
        match self {
            FieldMode::GenericQ => FieldElem {
                repr: Repr::Rat(RatFunc::constant(CycNum::from_rational(v))),
            },
            FieldMode::RootOfUnity { .. } => {
                FieldElem { repr: Repr::Cyc(CycNum::from_rational(v)) }
            }
        }
    }

    /// The fraction a/b; b must be nonzero.
    pub fn ratio(&self, a: i64, b: i64) -> Result<FieldElem> {
        if b == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.rational(BigRational::new(a.into(), b.into())))
    }

    /// The deformation parameter q itself.
    pub fn q(&self) -> FieldElem {
        self.q_power(1)
    }

    /// q^k for any integer k.
    pub fn q_power(&self, k: i64) -> FieldElem {
        match self {
            FieldMode::GenericQ => FieldElem { repr: Repr::Rat(RatFunc::q_power(k)) },
            FieldMode::RootOfUnity { t } => {
                FieldElem { repr: Repr::Cyc(CycNum::root_of_unity(*t, k)) }
            }
        }
    }

    /// (-1)^k, handy for flip twists.
    pub fn sign(&self, k: i64) -> FieldElem {
        self.integer(if k.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    /// zeta_n^k as a scalar of this mode (a compositum element when n does
    /// not divide t).  Used by sampling oracles and the member check.
    pub fn unity_root(&self, n: u32, k: i64) -> FieldElem {
        let z = CycNum::root_of_unity(n, k);
        match self {
            FieldMode::GenericQ => FieldElem {
                repr: Repr::Rat(RatFunc::constant(z)),
            },
            FieldMode::RootOfUnity { .. } => FieldElem { repr: Repr::Cyc(z) },
        }
    }

    /// The exponent j with a = q^j, if one exists.
    ///
    /// GenericQ: the unique signed exponent (monomials only).  RootOfUnity:
    /// the least j in 0..t, scanning the finite cyclic group.  Asking about
    /// zero is an error.
    pub fn is_q_power(&self, a: &FieldElem) -> Result<Option<i64>> {
        if a.is_zero() {
            return Err(Error::ZeroQPower);
        }
        match (&a.repr, self) {
            (Repr::Rat(r), FieldMode::GenericQ) => Ok(r.as_q_power()),
            (Repr::Cyc(_), FieldMode::RootOfUnity { t }) => {
                for j in 0..*t {
                    if self.q_power(j as i64) == *a {
                        return Ok(Some(j as i64));
                    }
                }
                Ok(None)
            }
            _ => panic!("scalar repr does not match mode"),
        }
    }

    /// Canonical text of a scalar in this mode.
    pub fn text(&self, a: &FieldElem) -> String {
        display::standalone(a, *self)
    }
}

impl std::fmt::Display for FieldMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldMode::GenericQ => write!(f, "generic"),
            FieldMode::RootOfUnity { t } => write!(f, "cyclotomic:{t}"),
        }
    }
}

// ---- Scalars ----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// Element of Q(zeta_.)(q).
    Rat(RatFunc),
    /// Element of Q(zeta_.).
    Cyc(CycNum),
}

/// An exact scalar; canonical, so equality is decidable and structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    repr: Repr,
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Cyc(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Cyc(c) => c.is_one(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (&self.repr, &o.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem { repr: Repr::Rat(a.add(b)) },
            (Repr::Cyc(a), Repr::Cyc(b)) => FieldElem { repr: Repr::Cyc(a.add(b)) },
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Rat(r) => FieldElem { repr: Repr::Rat(r.neg()) },
            Repr::Cyc(c) => FieldElem { repr: Repr::Cyc(c.neg()) },
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (&self.repr, &o.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem { repr: Repr::Rat(a.mul(b)) },
            (Repr::Cyc(a), Repr::Cyc(b)) => FieldElem { repr: Repr::Cyc(a.mul(b)) },
            _ => panic!("mixed scalar representations"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Rat(r) => r
                .inv()
                .map(|v| FieldElem { repr: Repr::Rat(v) })
                .ok_or(Error::DivisionByZero),
            Repr::Cyc(c) => c
                .inv()
                .map(|v| FieldElem { repr: Repr::Cyc(v) })
                .ok_or(Error::DivisionByZero),
        }
    }

    /// Errors when `o` is zero.
    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Integer power; negative exponents of zero error.
    pub fn pow(&self, e: i64) -> Result<Self> {
        match &self.repr {
            Repr::Rat(r) => r
                .pow(e)
                .map(|v| FieldElem { repr: Repr::Rat(v) })
                .ok_or(Error::DivisionByZero),
            Repr::Cyc(c) => c
                .pow(e)
                .map(|v| FieldElem { repr: Repr::Cyc(v) })
                .ok_or(Error::DivisionByZero),
        }
    }

    /// The rational value when the scalar is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rat(r) => r.as_rational(),
            Repr::Cyc(c) => c.as_rational().cloned(),
        }
    }

    pub(crate) fn repr_rat(&self) -> Option<&RatFunc> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Cyc(_) => None,
        }
    }

    pub(crate) fn repr_cyc(&self) -> Option<&CycNum> {
        match &self.repr {
            Repr::Cyc(c) => Some(c),
            Repr::Rat(_) => None,
        }
    }
}
