//! Shared randomized generators for the integration suites.
//!
//! Derivations are assembled from the component families their twist admits
//! and are therefore valid by construction; properties then exercise laws,
//! not construction plumbing.
#![allow(dead_code)]

use qplane::classify::{FlipDecomposition, ResidualSlice, ToricDecomposition};
use qplane::coeffield::{FieldElem, FieldMode};
use qplane::qalgebra::{Automorphism, QElem, TwistedCenterShape};
use qplane::skewder::SigmaDerivation;
use rand::rngs::StdRng;
use rand::Rng;

/// The three coefficient modes every suite runs over: generic q, a cube
/// root of unity, and q = -1.
pub fn modes() -> [FieldMode; 3] {
    [
        FieldMode::GenericQ,
        FieldMode::root_of_unity(3).unwrap(),
        FieldMode::root_of_unity(2).unwrap(),
    ]
}

pub fn scalar(rng: &mut StdRng, mode: FieldMode) -> FieldElem {
    match rng.gen_range(0..6u8) {
        0 => mode.integer(rng.gen_range(-4..=4)),
        1 => mode.q_power(rng.gen_range(-3..=3)),
        2 => mode.ratio(rng.gen_range(1..=5), rng.gen_range(1..=5)).unwrap(),
        3 => mode.q().add(&mode.integer(rng.gen_range(-2..=2))),
        4 => mode.integer(rng.gen_range(-3..=3)).mul(&mode.q_power(rng.gen_range(-2..=2))),
        _ => mode.integer(rng.gen_range(-9..=9)),
    }
}

pub fn nonzero_scalar(rng: &mut StdRng, mode: FieldMode) -> FieldElem {
    loop {
        let s = scalar(rng, mode);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random element of total degree at most `max_deg`.
pub fn elem(rng: &mut StdRng, mode: FieldMode, max_deg: u32, max_terms: usize) -> QElem {
    let mut e = QElem::zero(mode);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let i = rng.gen_range(0..=max_deg);
        let j = rng.gen_range(0..=max_deg - i);
        e = e.add(&QElem::term(mode, scalar(rng, mode), i, j));
    }
    e
}

pub fn nonzero_elem(rng: &mut StdRng, mode: FieldMode, max_deg: u32, max_terms: usize) -> QElem {
    loop {
        let e = elem(rng, mode, max_deg, max_terms);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random toric automorphism; half the scalar draws are powers of q so the
/// q-power-dependent derivation families occur often.
pub fn toric_sigma(rng: &mut StdRng, mode: FieldMode) -> Automorphism {
    let mu = |rng: &mut StdRng| {
        if rng.gen_bool(0.5) {
            mode.q_power(rng.gen_range(-3..=3))
        } else {
            nonzero_scalar(rng, mode)
        }
    };
    Automorphism::toric(mode, mu(rng), mu(rng)).unwrap()
}

/// Random flip automorphism (q = -1 modes only); half the draws make
/// mu1 * mu2 = +/-1 so residual slices are possible for derivations
/// twisted by the result.
pub fn flip_sigma(rng: &mut StdRng, mode: FieldMode) -> Automorphism {
    let mu1 = nonzero_scalar(rng, mode);
    let mu2 = if rng.gen_bool(0.5) {
        let sign = if rng.gen_bool(0.5) { mode.one() } else { mode.integer(-1) };
        sign.div(&mu1).unwrap()
    } else {
        nonzero_scalar(rng, mode)
    };
    Automorphism::flip(mode, mu1, mu2).unwrap()
}

/// Random element of the untwisted center: scalars in generic mode, a
/// polynomial in x^t, y^t at a root of unity.
pub fn central_elem(rng: &mut StdRng, mode: FieldMode) -> QElem {
    let t = mode.t();
    if t == 0 {
        return QElem::scalar(mode, scalar(rng, mode));
    }
    let mut e = QElem::zero(mode);
    for _ in 0..rng.gen_range(0..=2usize) {
        let i = rng.gen_range(0..=1u32) * t;
        let j = rng.gen_range(0..=1u32) * t;
        e = e.add(&QElem::term(mode, scalar(rng, mode), i, j));
    }
    e
}

/// Valid derivation with the given toric twist, assembled from the families
/// the twist admits (inner witness, the two single-variable families, the
/// central pair).
pub fn toric_derivation(rng: &mut StdRng, sigma: &Automorphism) -> SigmaDerivation {
    let mode = sigma.mode();
    let tc = sigma.twisted_center();
    let mut w = QElem::zero(mode);
    for (i, j, c) in elem(rng, mode, 4, 4).terms() {
        if !tc.contains_monomial(i, j) {
            w = w.add(&QElem::term(mode, c.clone(), i, j));
        }
    }
    let poly = |rng: &mut StdRng| {
        let mut p = vec![mode.zero(); rng.gen_range(0..4usize)];
        for c in &mut p {
            if rng.gen_bool(0.5) {
                *c = scalar(rng, mode);
            }
        }
        p
    };
    let a_poly = if *sigma.mu2() == mode.q() { poly(rng) } else { vec![] };
    let b_poly = if *sigma.mu1() == mode.q_power(-1) { poly(rng) } else { vec![] };
    let central_ok = !matches!(tc.shape(), TwistedCenterShape::Zero);
    let lambda = |rng: &mut StdRng| central_elem(rng, mode);
    let (lambda1, lambda2) = if central_ok {
        (lambda(rng), lambda(rng))
    } else {
        (QElem::zero(mode), QElem::zero(mode))
    };
    ToricDecomposition::from_parts(sigma.clone(), w, a_poly, b_poly, lambda1, lambda2).recombine()
}

/// Random valid derivation of either twist kind the mode supports.
pub fn any_derivation(rng: &mut StdRng, mode: FieldMode) -> SigmaDerivation {
    if mode.t() == 2 && rng.gen_bool(0.4) {
        let sigma = flip_sigma(rng, mode);
        flip_derivation(rng, &sigma)
    } else {
        let sigma = toric_sigma(rng, mode);
        toric_derivation(rng, &sigma)
    }
}

/// Valid derivation with the given flip twist: inner witness plus residual
/// slices whose parity matches mu1 * mu2 (when that product is +/-1).
pub fn flip_derivation(rng: &mut StdRng, sigma: &Automorphism) -> SigmaDerivation {
    let mode = sigma.mode();
    let w = elem(rng, mode, 4, 4);
    let prod = sigma.mu1().mul(sigma.mu2());
    let parity = if prod == mode.one() {
        Some(0)
    } else if prod == mode.integer(-1) {
        Some(1)
    } else {
        None
    };
    let mut slices = Vec::new();
    if let Some(p) = parity {
        for step in 0..3u32 {
            if rng.gen_bool(0.4) {
                slices.push(ResidualSlice {
                    degree: p + 2 * step,
                    leading: nonzero_scalar(rng, mode),
                });
            }
        }
    }
    FlipDecomposition::from_parts(sigma.clone(), w, slices).recombine()
}
