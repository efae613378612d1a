//! Fixed-size complex linear algebra: 2×2 single-qubit operators and
//! two-qubit state vectors.
//!
//! Basis order is always `OO, OT, TO, TT` with Alice's qubit as the first
//! letter, so amplitude index `2·i + j` belongs to Alice in `i` and Bob in `j`.

use std::ops::{Add, Mul};

use crate::error::{Error, Result};

pub use num_complex::Complex64 as Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// A 2×2 complex matrix, row-major, rows and columns indexed by `|O⟩ = 0`,
/// `|T⟩ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    entries: [[Complex; 2]; 2],
}

impl Mat2 {
    pub fn new(entries: [[Complex; 2]; 2]) -> Result<Self> {
        if entries.iter().flatten().all(|z| z.is_finite()) {
            Ok(Self { entries })
        } else {
            Err(Error::NonFinite("matrix entry"))
        }
    }

    pub(crate) const fn from_entries(entries: [[Complex; 2]; 2]) -> Self {
        Self { entries }
    }

    pub const fn identity() -> Self {
        Self::from_entries([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn diagonal(d0: Complex, d1: Complex) -> Self {
        Self::from_entries([[d0, ZERO], [ZERO, d1]])
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex; 2]; 2] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self::from_entries([[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]])
    }

    pub fn scale(&self, k: Complex) -> Self {
        let e = &self.entries;
        Self::from_entries([[k * e[0][0], k * e[0][1]], [k * e[1][0], k * e[1][1]]])
    }

    /// Applies the matrix to a single-qubit ket `(c_O, c_T)`.
    pub fn apply(&self, ket: [Complex; 2]) -> [Complex; 2] {
        let e = &self.entries;
        [e[0][0] * ket[0] + e[0][1] * ket[1], e[1][0] * ket[0] + e[1][1] * ket[1]]
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2::from_entries(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let a = &self.entries;
        let b = &rhs.entries;
        Mat2::from_entries([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

/// True iff the max-norm of `m·m† − I` is at most `tol`.
pub fn is_unitary(m: &Mat2, tol: f64) -> bool {
    (*m * m.adjoint()).max_abs_diff(&Mat2::identity()) <= tol
}

/// Amplitudes of a two-qubit state over `|OO⟩, |OT⟩, |TO⟩, |TT⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amp: [Complex; 4],
}

impl TwoQubitState {
    /// Builds a state from amplitudes, rejecting non-finite or
    /// non-normalized input (tolerance [`crate::DEFAULT_TOL`]).
    pub fn new(amp: [Complex; 4]) -> Result<Self> {
        if !amp.iter().all(|z| z.is_finite()) {
            return Err(Error::NonFinite("state amplitude"));
        }
        let state = Self { amp };
        let n = state.norm_sqr();
        if (n - 1.0).abs() > crate::DEFAULT_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(state)
    }

    pub(crate) const fn from_amplitudes(amp: [Complex; 4]) -> Self {
        Self { amp }
    }

    /// The computational basis ket with index `2·alice + bob`.
    pub fn basis(index: usize) -> Self {
        assert!(index < 4, "basis index {index} out of range");
        let mut amp = [ZERO; 4];
        amp[index] = ONE;
        Self { amp }
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex; 4] {
        &self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest amplitude modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &TwoQubitState) -> f64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `⟨x|y⟩ = Σ conj(x_k)·y_k`.
pub fn inner_product(x: &TwoQubitState, y: &TwoQubitState) -> Complex {
    x.amp.iter().zip(&y.amp).map(|(a, b)| a.conj() * b).sum()
}

/// `(a ⊗ b)|s⟩`, with `a` acting on Alice's qubit and `b` on Bob's.
pub fn apply_local(a: &Mat2, b: &Mat2, s: &TwoQubitState) -> TwoQubitState {
    let mut out = [ZERO; 4];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = ZERO;
            for k in 0..2 {
                for l in 0..2 {
                    acc += a.entry(i, k) * b.entry(j, l) * s.amp[2 * k + l];
                }
            }
            out[2 * i + j] = acc;
        }
    }
    TwoQubitState::from_amplitudes(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    // Flip operator written out by hand: C|O⟩ = −|T⟩, C|T⟩ = |O⟩.
    fn flip() -> Mat2 {
        Mat2::from_entries([[ZERO, ONE], [-ONE, ZERO]])
    }

    fn unitary(theta: f64, phi: f64) -> Mat2 {
        let r = Mat2::diagonal(Complex::from_polar(1.0, phi), Complex::from_polar(1.0, -phi));
        r.scale(c((theta / 2.0).cos(), 0.0)) + flip().scale(c((theta / 2.0).sin(), 0.0))
    }

    #[test]
    fn identity_leaves_basis_ket() {
        let oo = TwoQubitState::basis(0);
        let out = apply_local(&Mat2::identity(), &Mat2::identity(), &oo);
        assert_eq!(out, oo);
    }

    #[test]
    fn double_flip_maps_oo_to_tt() {
        let out = apply_local(&flip(), &flip(), &TwoQubitState::basis(0));
        assert_eq!(out, TwoQubitState::basis(3));
    }

    #[test]
    fn phase_on_alice_of_bell_state() {
        let bell = TwoQubitState::new([c(FRAC_1_SQRT_2, 0.0), ZERO, ZERO, c(0.0, FRAC_1_SQRT_2)]).unwrap();
        let r = Mat2::diagonal(
            Complex::from_polar(1.0, FRAC_PI_2),
            Complex::from_polar(1.0, -FRAC_PI_2),
        );
        let out = apply_local(&r, &Mat2::identity(), &bell);
        let expected = TwoQubitState::new([c(0.0, FRAC_1_SQRT_2), ZERO, ZERO, c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn basis_inner_products() {
        let oo = TwoQubitState::basis(0);
        let tt = TwoQubitState::basis(3);
        assert_eq!(inner_product(&oo, &oo), ONE);
        assert_eq!(inner_product(&oo, &tt), ZERO);
    }

    #[test]
    fn unitary_checks() {
        assert!(is_unitary(&Mat2::identity(), 1e-9));
        assert!(!is_unitary(&Mat2::identity().scale(c(2.0, 0.0)), 1e-9));
        assert!(is_unitary(&unitary(0.7, 1.1), 1e-9));
    }

    #[test]
    fn constructor_rejects_bad_states() {
        assert_eq!(
            TwoQubitState::new([ONE, ONE, ZERO, ZERO]),
            Err(Error::NotNormalized(2.0))
        );
        assert!(matches!(
            TwoQubitState::new([c(f64::NAN, 0.0), ZERO, ZERO, ZERO]),
            Err(Error::NonFinite(_))
        ));
        assert!(Mat2::new([[c(f64::INFINITY, 0.0), ZERO], [ZERO, ONE]]).is_err());
    }

    fn arb_state() -> impl Strategy<Value = TwoQubitState> {
        proptest::array::uniform8(-1.0f64..1.0)
            .prop_filter("non-degenerate", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
            .prop_map(|v| {
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                TwoQubitState::from_amplitudes([
                    c(v[0] / n, v[1] / n),
                    c(v[2] / n, v[3] / n),
                    c(v[4] / n, v[5] / n),
                    c(v[6] / n, v[7] / n),
                ])
            })
    }

    fn arb_unitary() -> impl Strategy<Value = Mat2> {
        (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(t, p)| unitary(t, p))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn local_unitaries_preserve_norm(a in arb_unitary(), b in arb_unitary(), s in arb_state()) {
            let out = apply_local(&a, &b, &s);
            prop_assert!((out.norm_sqr().sqrt() - 1.0).abs() <= 1e-9);
        }

        #[test]
        fn local_application_composes(
            a in arb_unitary(), b in arb_unitary(), c2 in arb_unitary(), d in arb_unitary(),
            s in arb_state(),
        ) {
            let nested = apply_local(&a, &b, &apply_local(&c2, &d, &s));
            let fused = apply_local(&(a * c2), &(b * d), &s);
            prop_assert!(nested.max_abs_diff(&fused) <= 1e-12);
        }

        #[test]
        fn inner_product_conjugate_symmetric_and_linear(
            x in arb_state(), y in arb_state(), z in arb_state(),
            kr in -2.0f64..2.0, ki in -2.0f64..2.0,
        ) {
            prop_assert!((inner_product(&x, &y) - inner_product(&y, &x).conj()).norm() <= 1e-12);
            prop_assert!((inner_product(&x, &x) - ONE).norm() <= 1e-12);

            let k = c(kr, ki);
            let mut combo = [ZERO; 4];
            for (i, slot) in combo.iter_mut().enumerate() {
                *slot = k * y.amp[i] + z.amp[i];
            }
            let lhs = inner_product(&x, &TwoQubitState::from_amplitudes(combo));
            let rhs = k * inner_product(&x, &y) + inner_product(&x, &z);
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }
    }
}
