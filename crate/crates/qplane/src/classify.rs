//! Canonical decomposition of a sigma-derivation into an inner part plus
//! explicit non-inner families.
//!
//! For a toric twist the non-inner families are: `a(y)` acting on x alone
//! (present only when `mu2 = q`), `b(x)` acting on y alone (only when
//! `mu1 = q^{-1}`), and two central multiples of the scaled Euler maps
//! attached to the minimal exponent pair `(m, n)` with `mu1 = q^n`,
//! `mu2 = q^{-m}`.  For a flip twist (q = -1) the obstruction lives in the
//! homogeneous slices of degree k with `mu1*mu2 = (-1)^k`; each such slice
//! leaves at most a one-dimensional residual, stored in a canonical form.

use std::collections::BTreeSet;

use crate::coeffield::{FieldElem, FieldMode};
use crate::error::Error;
use crate::qalgebra::{AutKind, Automorphism, QElem, TwistedCenterShape};
use crate::skewder::SigmaDerivation;
use crate::Result;

/// Decomposition of a derivation twisted by a toric automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDecomposition {
    sigma: Automorphism,
    w: QElem,
    a_poly: Vec<FieldElem>,
    b_poly: Vec<FieldElem>,
    mn: Option<(u32, u32)>,
    lambda1: QElem,
    lambda2: QElem,
}

impl ToricDecomposition {
    /// Assembles a decomposition from its components, canonicalizing
    /// coefficient lists and deriving the minimal exponent pair from sigma.
    ///
    /// Panics on structurally impossible inputs: a flip sigma, witness terms
    /// inside the twisted center, non-central lambda parts, or lambda parts
    /// without an exponent pair.
    pub fn from_parts(
        sigma: Automorphism,
        w: QElem,
        mut a_poly: Vec<FieldElem>,
        mut b_poly: Vec<FieldElem>,
        lambda1: QElem,
        lambda2: QElem,
    ) -> Self {
        assert_eq!(sigma.kind(), AutKind::Toric, "toric decomposition needs a toric twist");
        let tc = sigma.twisted_center();
        assert!(
            w.terms().all(|(i, j, _)| !tc.contains_monomial(i, j)),
            "witness must have zero twisted-center component"
        );
        while a_poly.last().is_some_and(FieldElem::is_zero) {
            a_poly.pop();
        }
        while b_poly.last().is_some_and(FieldElem::is_zero) {
            b_poly.pop();
        }
        let mn = minimal_exponents(&sigma);
        assert!(
            mn.is_some() || (lambda1.is_zero() && lambda2.is_zero()),
            "lambda parts need sigma = (q^n, q^-m)"
        );
        assert!(
            lambda1.is_central() && lambda2.is_central(),
            "lambda parts must be central"
        );
        ToricDecomposition { sigma, w, a_poly, b_poly, mn, lambda1, lambda2 }
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    /// Witness of the inner part, normalized against the twisted center.
    pub fn w(&self) -> &QElem {
        &self.w
    }

    /// Coefficients of `a(y)` with `d(x) = a(y)`, `d(y) = 0`; empty unless
    /// `mu2 = q`.
    pub fn a_poly(&self) -> &[FieldElem] {
        &self.a_poly
    }

    /// Coefficients of `b(x)` with `d(x) = 0`, `d(y) = b(x)`; empty unless
    /// `mu1 = q^{-1}`.
    pub fn b_poly(&self) -> &[FieldElem] {
        &self.b_poly
    }

    /// Minimal `(m, n)` with `mu1 = q^n` and `mu2 = q^{-m}`, when both exist.
    pub fn mn(&self) -> Option<(u32, u32)> {
        self.mn
    }

    /// Central multiplier of the map `x -> (y^n x^m) x`, `y -> 0`.
    pub fn lambda1(&self) -> &QElem {
        &self.lambda1
    }

    /// Central multiplier of the map `x -> 0`, `y -> (y^n x^m) y`.
    pub fn lambda2(&self) -> &QElem {
        &self.lambda2
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero()
            && self.a_poly.is_empty()
            && self.b_poly.is_empty()
            && self.lambda1.is_zero()
            && self.lambda2.is_zero()
    }

    /// Rebuilds the derivation as the sum of its components; inverse of
    /// [`decompose_toric`].
    pub fn recombine(&self) -> SigmaDerivation {
        let mode = self.sigma.mode();
        let mut d = SigmaDerivation::inner_from(&self.w, &self.sigma);
        if !self.a_poly.is_empty() {
            let part = SigmaDerivation::new(
                self.sigma.clone(),
                poly_in_var(mode, &self.a_poly, false),
                QElem::zero(mode),
            )
            .expect("a(y) on x is a valid derivation exactly when mu2 = q");
            d = d.add(&part);
        }
        if !self.b_poly.is_empty() {
            let part = SigmaDerivation::new(
                self.sigma.clone(),
                QElem::zero(mode),
                poly_in_var(mode, &self.b_poly, true),
            )
            .expect("b(x) on y is a valid derivation exactly when mu1 = q^-1");
            d = d.add(&part);
        }
        if let Some((m, n)) = self.mn {
            let anchor = QElem::monomial(mode, m, n);
            if !self.lambda1.is_zero() {
                let dx = self.lambda1.mul(&anchor).mul(&QElem::var_x(mode));
                let part = SigmaDerivation::new(self.sigma.clone(), dx, QElem::zero(mode))
                    .expect("central multiple of the scaled Euler map on x is valid");
                d = d.add(&part);
            }
            if !self.lambda2.is_zero() {
                let dy = self.lambda2.mul(&anchor).mul(&QElem::var_y(mode));
                let part = SigmaDerivation::new(self.sigma.clone(), QElem::zero(mode), dy)
                    .expect("central multiple of the scaled Euler map on y is valid");
                d = d.add(&part);
            }
        }
        d
    }
}

/// Decomposition of a derivation twisted by a flip automorphism (q = -1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipDecomposition {
    sigma: Automorphism,
    w: QElem,
    slices: Vec<ResidualSlice>,
}

/// Canonical non-inner residual in the degree-k slice: the derivation
/// `x -> -mu2^{-1} * b0 * x^k`, `y -> b0 * x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualSlice {
    /// Total degree k of the slice; satisfies `mu1*mu2 = (-1)^k`.
    pub degree: u32,
    /// The single surviving coefficient b0; never zero.
    pub leading: FieldElem,
}

impl FlipDecomposition {
    /// Assembles a decomposition; slices must be degree-sorted with nonzero
    /// leading coefficients at degrees k with `mu1*mu2 = (-1)^k`.
    pub fn from_parts(sigma: Automorphism, w: QElem, slices: Vec<ResidualSlice>) -> Self {
        assert_eq!(sigma.kind(), AutKind::Flip, "flip decomposition needs a flip twist");
        let product = sigma.mu1().mul(sigma.mu2());
        let mode = sigma.mode();
        for pair in slices.windows(2) {
            assert!(pair[0].degree < pair[1].degree, "slices must be sorted by degree");
        }
        for s in &slices {
            assert!(!s.leading.is_zero(), "residual slices carry nonzero coefficients");
            assert_eq!(
                product,
                mode.sign(i64::from(s.degree)),
                "residual slices only exist at degrees k with mu1*mu2 = (-1)^k"
            );
        }
        FlipDecomposition { sigma, w, slices }
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    /// Witness of the inner part (the flip twisted center is zero, so no
    /// further normalization applies).
    pub fn w(&self) -> &QElem {
        &self.w
    }

    pub fn slices(&self) -> &[ResidualSlice] {
        &self.slices
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.slices.is_empty()
    }

    /// Rebuilds the derivation; inverse of [`decompose_flip`].
    pub fn recombine(&self) -> SigmaDerivation {
        let mut d = SigmaDerivation::inner_from(&self.w, &self.sigma);
        for s in &self.slices {
            d = d.add(&residual_derivation(&self.sigma, s));
        }
        d
    }
}

/// The residual slice as a derivation.
fn residual_derivation(sigma: &Automorphism, slice: &ResidualSlice) -> SigmaDerivation {
    let mode = sigma.mode();
    let xk = QElem::monomial(mode, slice.degree, 0);
    let neg_inv_mu2 = sigma.mu2().inv().expect("nonzero scalar").neg();
    SigmaDerivation::new(
        sigma.clone(),
        xk.scalar_mul(&neg_inv_mu2.mul(&slice.leading)),
        xk.scalar_mul(&slice.leading),
    )
    .expect("the canonical residual is valid at its own degree")
}

/// Either decomposition, keyed by the twist kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Toric(ToricDecomposition),
    Flip(FlipDecomposition),
}

impl Decomposition {
    pub fn recombine(&self) -> SigmaDerivation {
        match self {
            Decomposition::Toric(t) => t.recombine(),
            Decomposition::Flip(f) => f.recombine(),
        }
    }
}

/// Decomposes any derivation, dispatching on its twist kind.
pub fn decompose(d: &SigmaDerivation) -> Decomposition {
    match d.sigma().kind() {
        AutKind::Toric => Decomposition::Toric(decompose_toric(d).expect("kind just checked")),
        AutKind::Flip => Decomposition::Flip(decompose_flip(d).expect("kind just checked")),
    }
}

/// Minimal `(m, n)` with `mu1 = q^n`, `mu2 = q^{-m}`: exactly the monomial
/// anchoring the twisted center.
fn minimal_exponents(sigma: &Automorphism) -> Option<(u32, u32)> {
    match sigma.twisted_center().shape() {
        TwistedCenterShape::Zero => None,
        TwistedCenterShape::FullPolynomialCenter => Some((0, 0)),
        TwistedCenterShape::CenterTimesMonomial { x_exp, y_exp } => Some((x_exp, y_exp)),
    }
}

/// Decomposes a derivation with toric twist `(mu1, mu2)`.
///
/// The split is coefficient-exact: x-degree-0 terms of `d(x)` form `a(y)`,
/// y-degree-0 terms of `d(y)` form `b(x)`; every remaining coefficient pair
/// sits over a monomial `y^j x^i` and routes to the central lambda parts when
/// `mu1 = q^j` and `mu2 = q^{-i}` both hold, otherwise to the witness by
/// dividing out the nonzero gap.
pub fn decompose_toric(d: &SigmaDerivation) -> Result<ToricDecomposition> {
    let sigma = d.sigma().clone();
    if sigma.kind() != AutKind::Toric {
        return Err(Error::WrongSigmaKind { expected: "toric" });
    }
    let mode = sigma.mode();
    let (mu1, mu2) = (sigma.mu1().clone(), sigma.mu2().clone());
    let mn = minimal_exponents(&sigma);

    let mut a_poly = Vec::new();
    let mut b_poly = Vec::new();
    let mut keys: BTreeSet<(u32, u32)> = BTreeSet::new();
    for (i, j, c) in d.dx().terms() {
        match i.checked_sub(1) {
            Some(i) => {
                keys.insert((i, j));
            }
            None => set_coeff(&mut a_poly, j as usize, c.clone(), mode),
        }
    }
    for (i, j, c) in d.dy().terms() {
        match j.checked_sub(1) {
            Some(j) => {
                keys.insert((i, j));
            }
            None => set_coeff(&mut b_poly, i as usize, c.clone(), mode),
        }
    }

    let mut w = QElem::zero(mode);
    let mut lambda1 = QElem::zero(mode);
    let mut lambda2 = QElem::zero(mode);
    for (i, j) in keys {
        let c = d.dx().coeff(i + 1, j);
        // Coefficient relative to the product y^j x^i * y, which normalizes
        // with a factor q^i.
        let d_ij = d.dy().coeff(i, j + 1).mul(&mode.q_power(-i64::from(i)));
        let x_gap = mu1.sub(&mode.q_power(i64::from(j)));
        let y_gap = mu2.sub(&mode.q_power(-i64::from(i)));
        // Validity of the input forces the two coefficients to be
        // proportional across the gaps.
        assert_eq!(
            c.mul(&y_gap),
            d_ij.mul(&x_gap),
            "cross-consistency must hold for validated derivations"
        );
        if x_gap.is_zero() && y_gap.is_zero() {
            let (m, n) = mn.expect("both gaps vanish only when the exponent pair exists");
            lambda1.add_term(i - m, j - n, c);
            lambda2.add_term(i - m, j - n, d_ij);
        } else if !x_gap.is_zero() {
            w.add_term(i, j, c.div(&x_gap).expect("nonzero gap"));
        } else {
            w.add_term(i, j, d_ij.div(&y_gap).expect("nonzero gap"));
        }
    }
    Ok(ToricDecomposition { sigma, w, a_poly, b_poly, mn, lambda1, lambda2 })
}

/// Decomposes a derivation with flip twist (q = -1), slice by slice.
///
/// Degrees k with `mu1*mu2 != (-1)^k` are fully inner with an explicit
/// witness read off `d(y)`; at the exceptional degrees the canonical residual
/// is split off first and the rest is absorbed through the innerness solver.
pub fn decompose_flip(d: &SigmaDerivation) -> Result<FlipDecomposition> {
    let sigma = d.sigma().clone();
    if sigma.kind() != AutKind::Flip {
        return Err(Error::WrongSigmaKind { expected: "flip" });
    }
    let mode = sigma.mode();
    let mu2 = sigma.mu2().clone();
    let product = sigma.mu1().mul(&mu2);

    let mut degrees: BTreeSet<u32> = BTreeSet::new();
    for (i, j, _) in d.dx().terms().chain(d.dy().terms()) {
        degrees.insert(i + j);
    }

    let mut w = QElem::zero(mode);
    let mut slices = Vec::new();
    for k in degrees {
        let slice = SigmaDerivation::new(
            sigma.clone(),
            d.dx().homogeneous_part(k),
            d.dy().homogeneous_part(k),
        )
        .expect("validity splits across homogeneous slices");
        // b_l = coefficient of y^l x^{k-l} in the slice of d(y).
        let b = |l: u32| slice.dy().coeff(k - l, l);
        if product == mode.sign(i64::from(k)) {
            let mut s = b(0);
            for r in 1..=k {
                s = s.add(&b(r).mul(&mu2.pow(i64::from(r)).expect("nonzero scalar")));
            }
            let rest = if s.is_zero() {
                slice
            } else {
                let residual = ResidualSlice { degree: k, leading: s };
                let sub = slice.add(&residual_derivation(&sigma, &residual).scale(&mode.integer(-1)));
                slices.push(residual);
                sub
            };
            let w_k = rest
                .is_inner()
                .expect("subtracting the canonical residual leaves an inner slice");
            w = w.add(&w_k);
        } else {
            // Closed-form witness: the coefficient of y^{l-1} x^{k-l} is
            // -(b_l + b_{l+1} mu2 + ... + b_k mu2^{k-l}).
            let mut w_k = QElem::zero(mode);
            for l in 1..=k {
                let mut acc = mode.zero();
                for r in (l..=k).rev() {
                    acc = acc.mul(&mu2).add(&b(r));
                }
                w_k.add_term(k - l, l - 1, acc.neg());
            }
            assert_eq!(
                SigmaDerivation::inner_from(&w_k, &sigma),
                slice,
                "off-obstruction slices are inner with the closed-form witness"
            );
            w = w.add(&w_k);
        }
    }
    Ok(FlipDecomposition { sigma, w, slices })
}

/// `sum coeffs[e] * v^e` for v = x (when `x_var`) or v = y.
fn poly_in_var(mode: FieldMode, coeffs: &[FieldElem], x_var: bool) -> QElem {
    let mut out = QElem::zero(mode);
    for (e, c) in coeffs.iter().enumerate() {
        let e = e as u32;
        let (i, j) = if x_var { (e, 0) } else { (0, e) };
        out.add_term(i, j, c.clone());
    }
    out
}

fn set_coeff(poly: &mut Vec<FieldElem>, idx: usize, c: FieldElem, mode: FieldMode) {
    if poly.len() <= idx {
        poly.resize(idx + 1, mode.zero());
    }
    poly[idx] = c;
}
