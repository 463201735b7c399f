//! Exact cyclotomic numbers at minimal conductor.
//!
//! A value is an element of Q(zeta_s) stored as its residue modulo Phi_s in
//! the power basis zeta_s^0 .. zeta_s^(phi(s)-1).  Canonical form: s is the
//! conductor of the element (the smallest cyclotomic field containing it) and
//! s is never congruent to 2 mod 4, so structural equality is mathematical
//! equality.  Arithmetic between different conductors lifts both operands into
//! the compositum Q(zeta_lcm) and reduces back down; rationals are the s = 1
//! case and take fast paths throughout.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{big, cyclotomic, euler_phi, prime_factors, RatPoly};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CycNum {
    /// Conductor; 1 for rationals, otherwise >= 3 and never 2 mod 4.
    s: u32,
    /// Exactly phi(s) coordinates in the power basis of zeta_s.
    c: Vec<BigRational>,
}

fn pad(p: &RatPoly, len: usize) -> Vec<BigRational> {
    let mut v = p.coeffs().to_vec();
    debug_assert!(v.len() <= len);
    v.resize(len, BigRational::zero());
    v
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { s: 1, c: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        CycNum { s: 1, c: vec![BigRational::one()] }
    }

    pub fn from_rational(v: BigRational) -> Self {
        CycNum { s: 1, c: vec![v] }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(big(v))
    }

    /// zeta_n^k, canonicalized.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root order must be positive");
        let k = k.rem_euclid(n as i64) as u32;
        let g = k.gcd(&n);
        let (mut n, mut k) = (n / g, k / g); // primitive n-th root zeta_n^k
        let mut sign = false;
        if n % 4 == 2 {
            // zeta_(2m) = -zeta_m^((m+1)/2) for odd m.
            let m = n / 2;
            sign = k % 2 == 1;
            k = (k * m.div_ceil(2)) % m.max(1);
            n = m;
        }
        if n == 1 {
            return Self::from_i64(if sign { -1 } else { 1 });
        }
        let poly = RatPoly::monomial(k as usize);
        let (_, rem) = poly.divrem(&cyclotomic(n));
        let c = pad(&rem, euler_phi(n) as usize);
        let v = CycNum { s: n, c };
        if sign {
            v.neg()
        } else {
            v
        }
    }

    /// Build from an arbitrary polynomial in zeta_s; reduces and minimizes.
    fn from_poly(s: u32, p: &RatPoly) -> Self {
        debug_assert!(s == 1 || s % 4 != 2, "non-canonical conductor {s}");
        let (_, rem) = p.divrem(&cyclotomic(s));
        let v = CycNum { s, c: pad(&rem, euler_phi(s) as usize) };
        v.minimized()
    }

    pub fn conductor(&self) -> u32 {
        self.s
    }

    /// Power-basis coordinates at the element's own conductor.
    pub fn coords(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.s == 1 && self.c[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.s == 1 && self.c[0].is_one()
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.s == 1).then(|| &self.c[0])
    }

    /// Coordinates in the power basis of zeta_target, when s divides target.
    pub fn lift_coeffs(&self, target: u32) -> Option<Vec<BigRational>> {
        if target % self.s != 0 {
            return None;
        }
        if target == self.s {
            return Some(self.c.clone());
        }
        let step = (target / self.s) as usize;
        let mut poly = RatPoly::zero();
        for (i, v) in self.c.iter().enumerate() {
            if !v.is_zero() {
                poly = poly.add(&RatPoly::monomial(i * step).scale(v));
            }
        }
        let (_, rem) = poly.divrem(&cyclotomic(target));
        Some(pad(&rem, euler_phi(target) as usize))
    }

    /// Greedy conductor descent to canonical minimal form.
    fn minimized(self) -> Self {
        let mut cur = self;
        'outer: loop {
            if cur.s == 1 {
                return cur;
            }
            for p in prime_factors(cur.s) {
                let mut s2 = cur.s / p;
                if s2 % 4 == 2 {
                    s2 /= 2;
                }
                if let Some(c2) = cur.express_in(s2) {
                    cur = CycNum { s: s2, c: c2 };
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Coordinates of self inside Q(zeta_s2), or None if it does not lie there.
    fn express_in(&self, s2: u32) -> Option<Vec<BigRational>> {
        debug_assert!(self.s % s2 == 0);
        let dim2 = euler_phi(s2) as usize;
        let dim = euler_phi(self.s) as usize;
        // Columns: images of the basis of Q(zeta_s2) inside Q(zeta_self.s).
        let mut cols = Vec::with_capacity(dim2);
        for i in 0..dim2 {
            let basis = CycNum { s: s2, c: basis_vec(dim2, i) };
            cols.push(basis.lift_coeffs(self.s).expect("s2 divides s"));
        }
        let a: Vec<Vec<BigRational>> = (0..dim)
            .map(|row| (0..dim2).map(|col| cols[col][row].clone()).collect())
            .collect();
        linalg::solve(a, self.c.clone())
    }

    pub fn neg(&self) -> Self {
        CycNum { s: self.s, c: self.c.iter().map(|v| -v.clone()).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.s == o.s {
            let c: Vec<_> = self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect();
            return CycNum { s: self.s, c }.minimized();
        }
        // Rational + cyclotomic only shifts the constant coordinate and cannot
        // change the conductor.
        if let Some(r) = self.as_rational() {
            let mut c = o.c.clone();
            c[0] += r;
            return CycNum { s: o.s, c };
        }
        if let Some(r) = o.as_rational() {
            let mut c = self.c.clone();
            c[0] += r;
            return CycNum { s: self.s, c };
        }
        let s = self.s.lcm(&o.s);
        let a = self.lift_coeffs(s).unwrap();
        let b = o.lift_coeffs(s).unwrap();
        let c: Vec<_> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        CycNum { s, c }.minimized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(r) = self.as_rational() {
            return CycNum { s: o.s, c: o.c.iter().map(|v| v * r).collect() };
        }
        if let Some(r) = o.as_rational() {
            return CycNum { s: self.s, c: self.c.iter().map(|v| v * r).collect() };
        }
        let s = self.s.lcm(&o.s);
        let a = RatPoly::from_coeffs(self.lift_coeffs(s).unwrap());
        let b = RatPoly::from_coeffs(o.lift_coeffs(s).unwrap());
        Self::from_poly(s, &a.mul(&b))
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(BigRational::one() / r));
        }
        let a = RatPoly::from_coeffs(self.c.clone());
        let (g, s_coef) = a.half_egcd(&cyclotomic(self.s));
        debug_assert_eq!(g.deg(), Some(0), "Phi_s is irreducible");
        let inv = s_coef.scale(&(BigRational::one() / g.coeff(0)));
        Some(Self::from_poly(self.s, &inv))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
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

}

fn basis_vec(len: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); len];
    v[i] = BigRational::one();
    v
}
