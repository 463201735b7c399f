//! Dense univariate polynomials over Q, plus the cyclotomic polynomial cache.
//!
//! These are internal building blocks for the cyclotomic scalars: reduction
//! modulo Phi_t, extended gcd for inverses, and exact division for computing
//! Phi_t itself.  Coefficients are ascending; the zero polynomial is the empty
//! vector and trailing zeros are always trimmed.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatPoly {
    c: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { c: Vec::new() }
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly { c }
    }

    pub fn constant(v: BigRational) -> Self {
        Self::from_coeffs(vec![v])
    }

    /// z^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        RatPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Self::from_coeffs(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Self::from_coeffs(c)
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        RatPoly {
            c: self.c.iter().map(|v| v.clone() * f).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a.clone() * b;
            }
        }
        Self::from_coeffs(c)
    }

    /// Euclidean division by a nonzero divisor: (quotient, remainder).
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg().unwrap();
        let lead = d.c[dd].clone();
        let mut rem = self.c.clone();
        let mut quo = vec![BigRational::zero(); self.c.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap().clone() / lead.clone();
            if !f.is_zero() {
                quo[k] = f.clone();
                for (i, dc) in d.c.iter().enumerate() {
                    let v = rem[k + i].clone() - f.clone() * dc;
                    rem[k + i] = v;
                }
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    /// Division known to be exact; panics if a remainder survives.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Extended gcd against `m`: returns (g, s) with s*self = g (mod m) and g
    /// a gcd of self and m.  Used for inverses modulo an irreducible modulus.
    pub fn half_egcd(&self, m: &Self) -> (Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = m.clone();
        let mut s0 = Self::constant(BigRational::one());
        let mut s1 = Self::zero();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        (r0, s0)
    }
}

// ---- Cyclotomic polynomials ----

/// Euler totient.
pub(crate) fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut phi = n;
    let mut p = 2u32;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Distinct prime factors, ascending.
pub(crate) fn prime_factors(n: u32) -> Vec<u32> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u32;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The t-th cyclotomic polynomial Phi_t, monic with integer coefficients.
pub(crate) fn cyclotomic(t: u32) -> Arc<RatPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RatPoly>>>> = OnceLock::new();
    assert!(t >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&t) {
        return p.clone();
    }
    // (z^t - 1) divided by Phi_d for every proper divisor d of t.
    let one = BigRational::one();
    let mut num = RatPoly::monomial(t as usize).sub(&RatPoly::constant(one));
    for d in 1..t {
        if t % d == 0 {
            num = num.exact_div(&cyclotomic(d));
        }
    }
    debug_assert_eq!(num.deg(), Some(euler_phi(t) as usize));
    let arc = Arc::new(num);
    cache.lock().unwrap().insert(t, arc.clone());
    arc
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
