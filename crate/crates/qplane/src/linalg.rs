//! Tiny exact linear solver used for conductor descent and witness slices.

/// Field-like scalar for exact Gaussian elimination.
pub(crate) trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division by a nonzero scalar; callers guarantee the divisor.
    fn div(&self, o: &Self) -> Self;
}

/// Solve `a * x = b` exactly over a field.
///
/// Returns None when the system is inconsistent; free variables are set to
/// zero, which is what every caller wants (minimal representatives).
pub(crate) fn solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "matrix/rhs row mismatch");
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 {
        return Some(Vec::new());
    }
    let zero = b[0].sub(&b[0]);
    let mut pivot_of_col = vec![None; cols];
    let mut next = 0usize;
    for c in 0..cols {
        let Some(p) = (next..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(next, p);
        b.swap(next, p);
        let pv = a[next][c].clone();
        for v in a[next].iter_mut().skip(c) {
            *v = v.div(&pv);
        }
        b[next] = b[next].div(&pv);
        for i in 0..rows {
            if i == next || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let scaled: Vec<S> = a[next][c..].iter().map(|v| f.mul(v)).collect();
            for (v, d) in a[i][c..].iter_mut().zip(&scaled) {
                *v = v.sub(d);
            }
            let d = f.mul(&b[next]);
            b[i] = b[i].sub(&d);
        }
        pivot_of_col[c] = Some(next);
        next += 1;
        if next == rows {
            break;
        }
    }
    if b.iter().enumerate().any(|(i, v)| i >= next && !v.is_zero()) {
        return None;
    }
    let mut x = vec![zero; cols];
    for (c, piv) in pivot_of_col.into_iter().enumerate() {
        if let Some(p) = piv {
            x[c] = b[p].clone();
        }
    }
    Some(x)
}

mod impls {
    use super::Scalar;
    use crate::coeffield::FieldElem;
    use num_rational::BigRational;
    use num_traits::Zero;

    impl Scalar for BigRational {
        fn is_zero(&self) -> bool {
            Zero::is_zero(self)
        }
        fn sub(&self, o: &Self) -> Self {
            self - o
        }
        fn mul(&self, o: &Self) -> Self {
            self * o
        }
        fn div(&self, o: &Self) -> Self {
            self / o
        }
    }

    impl Scalar for FieldElem {
        fn is_zero(&self) -> bool {
            FieldElem::is_zero(self)
        }
        fn sub(&self, o: &Self) -> Self {
            FieldElem::sub(self, o)
        }
        fn mul(&self, o: &Self) -> Self {
            FieldElem::mul(self, o)
        }
        fn div(&self, o: &Self) -> Self {
            FieldElem::div(self, o).expect("pivot is nonzero")
        }
    }
}
