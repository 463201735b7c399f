//! Rational functions in q over cyclotomic coefficients.
//!
//! Canonical fraction form, so equality is structural: numerator and
//! denominator share no polynomial factor; when every coefficient is rational
//! the pair is scaled to coprime integer polynomials with a positive leading
//! denominator coefficient, otherwise the denominator is made monic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::CycNum;

// ---- Polynomials in q over CycNum ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly {
    c: Vec<CycNum>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(CycNum::one())
    }

    pub fn constant(v: CycNum) -> Self {
        Self::from_coeffs(vec![v])
    }

    pub fn from_coeffs(mut c: Vec<CycNum>) -> Self {
        while c.last().is_some_and(CycNum::is_zero) {
            c.pop();
        }
        QPoly { c }
    }

    /// coeff * q^k
    pub fn monomial(coeff: CycNum, k: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut c = vec![CycNum::zero(); k + 1];
        c[k] = coeff;
        QPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> CycNum {
        self.c.get(i).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.c
    }

    pub fn lead(&self) -> Option<&CycNum> {
        self.c.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly { c: self.c.iter().map(CycNum::neg).collect() }
    }

    pub fn scale(&self, f: &CycNum) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        QPoly { c: self.c.iter().map(|v| v.mul(f)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![CycNum::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(c)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg().unwrap();
        let lead_inv = d.c[dd].inv().expect("nonzero lead");
        let mut rem = self.c.clone();
        let mut quo = vec![CycNum::zero(); self.c.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap().mul(&lead_inv);
            if !f.is_zero() {
                quo[k] = f.clone();
                for (i, dc) in d.c.iter().enumerate() {
                    rem[k + i] = rem[k + i].sub(&f.mul(dc));
                }
            }
            rem.pop();
            while rem.last().is_some_and(CycNum::is_zero) {
                rem.pop();
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over the coefficient field.
    pub fn monic_gcd(a: &Self, b: &Self) -> Self {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let (_, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
        }
        if r0.is_zero() {
            return r0;
        }
        let li = r0.lead().unwrap().inv().expect("nonzero lead");
        r0.scale(&li)
    }

    /// All coefficients rational (conductor 1)?
    pub fn has_rational_coeffs(&self) -> bool {
        self.c.iter().all(|v| v.as_rational().is_some())
    }

    /// The polynomial is exactly q^k with unit coefficient.
    pub fn as_unit_power(&self) -> Option<usize> {
        let d = self.deg()?;
        if self.c[d].is_one() && self.c[..d].iter().all(CycNum::is_zero) {
            Some(d)
        } else {
            None
        }
    }
}

// ---- Canonical fractions ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn constant(v: CycNum) -> Self {
        Self::normalized(QPoly::constant(v), QPoly::one())
    }

    /// q^k for any integer k.
    pub fn q_power(k: i64) -> Self {
        if k >= 0 {
            RatFunc { num: QPoly::monomial(CycNum::one(), k as usize), den: QPoly::one() }
        } else {
            RatFunc {
                num: QPoly::one(),
                den: QPoly::monomial(CycNum::one(), (-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Reduce to canonical form.
    fn normalized(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = QPoly::monic_gcd(&num, &den);
        let (mut num, mut den) = if g.deg() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        if num.has_rational_coeffs() && den.has_rational_coeffs() {
            // Integer scaling: clear denominators, strip joint content, fix sign.
            let rat = |v: &CycNum| v.as_rational().unwrap().clone();
            let mut l = BigInt::one();
            for v in num.coeffs().iter().chain(den.coeffs()) {
                l = l.lcm(rat(v).denom());
            }
            let lr = CycNum::from_rational(BigRational::from_integer(l));
            num = num.scale(&lr);
            den = den.scale(&lr);
            let mut g = BigInt::zero();
            for v in num.coeffs().iter().chain(den.coeffs()) {
                g = g.gcd(rat(v).numer());
            }
            if rat(den.lead().unwrap()).is_negative() {
                g = -g;
            }
            let ginv = CycNum::from_rational(BigRational::new(BigInt::one(), g));
            num = num.scale(&ginv);
            den = den.scale(&ginv);
        } else {
            let li = den.lead().unwrap().inv().expect("nonzero lead");
            num = num.scale(&li);
            den = den.scale(&li);
        }
        RatFunc { num, den }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.add(&o.num), den: QPoly::one() };
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&o.den))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: QPoly::one() };
        }
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// None for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::constant(CycNum::one());
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(out)
    }

    /// Signed exponent j when the value is exactly q^j, else None.
    pub fn as_q_power(&self) -> Option<i64> {
        let a = self.num.as_unit_power()?;
        let b = self.den.as_unit_power()?;
        Some(a as i64 - b as i64)
    }

    /// The rational value, when constant and rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.deg() == Some(0) && self.num.deg().map_or(true, |d| d == 0) {
            let n = self.num.coeff(0).as_rational()?.clone();
            let d = self.den.coeff(0).as_rational()?.clone();
            Some(n / d)
        } else {
            None
        }
    }
}
