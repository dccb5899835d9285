//! Vector algebra of Minkowski 3-space with signature (-, +, +).
//!
//! The metric is `<x, y> = -x1 y1 + x2 y2 + x3 y3`. The vector product and the
//! mixed product follow the conventions used by the frame identities in
//! [`crate::surfaces`]; the mixed product is defined as
//! `|a, b, c| = <a, b ^ c>`.

use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MVec3 {
    x1: f64,
    x2: f64,
    x3: f64,
}

impl MVec3 {
    pub const ZERO: MVec3 = MVec3 { x1: 0.0, x2: 0.0, x3: 0.0 };
    pub const E1: MVec3 = MVec3 { x1: 1.0, x2: 0.0, x3: 0.0 };
    pub const E2: MVec3 = MVec3 { x1: 0.0, x2: 1.0, x3: 0.0 };
    pub const E3: MVec3 = MVec3 { x1: 0.0, x2: 0.0, x3: 1.0 };

    /// Builds a vector from finite components.
    ///
    /// Panics if a component is NaN or infinite; use [`MVec3::try_new`] for
    /// untrusted input.
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        match Self::try_new(x1, x2, x3) {
            Ok(v) => v,
            Err(_) => panic!("MVec3 components must be finite: ({x1}, {x2}, {x3})"),
        }
    }

    pub fn try_new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        if x1.is_finite() && x2.is_finite() && x3.is_finite() {
            Ok(MVec3 { x1, x2, x3 })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_array(c: [f64; 3]) -> Result<Self> {
        Self::try_new(c[0], c[1], c[2])
    }

    #[inline]
    pub fn x1(&self) -> f64 {
        self.x1
    }

    #[inline]
    pub fn x2(&self) -> f64 {
        self.x2
    }

    #[inline]
    pub fn x3(&self) -> f64 {
        self.x3
    }

    #[inline]
    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// True when every component is finite. Arithmetic can overflow, so
    /// results of long computations are checked with this.
    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    #[inline]
    pub fn inner(self, other: MVec3) -> f64 {
        inner(self, other)
    }

    #[inline]
    pub fn cross(self, other: MVec3) -> MVec3 {
        lorentz_cross(self, other)
    }

    /// `<v, v>`.
    #[inline]
    pub fn norm_sq(self) -> f64 {
        inner(self, self)
    }

    /// `sqrt(|<v, v>|)`.
    pub fn lorentz_norm(self) -> f64 {
        libm::sqrt(libm::fabs(self.norm_sq()))
    }

    /// Norm in the underlying Euclidean coordinates, used for tolerances
    /// and deviations.
    pub fn euclid_norm(self) -> f64 {
        libm::sqrt(self.euclid_norm_sq())
    }

    pub fn euclid_norm_sq(self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn max_abs(self) -> f64 {
        libm::fmax(libm::fabs(self.x1), libm::fmax(libm::fabs(self.x2), libm::fabs(self.x3)))
    }
}

impl Add for MVec3 {
    type Output = MVec3;
    #[inline]
    fn add(self, o: MVec3) -> MVec3 {
        MVec3 { x1: self.x1 + o.x1, x2: self.x2 + o.x2, x3: self.x3 + o.x3 }
    }
}

impl AddAssign for MVec3 {
    #[inline]
    fn add_assign(&mut self, o: MVec3) {
        *self = *self + o;
    }
}

impl Sub for MVec3 {
    type Output = MVec3;
    #[inline]
    fn sub(self, o: MVec3) -> MVec3 {
        MVec3 { x1: self.x1 - o.x1, x2: self.x2 - o.x2, x3: self.x3 - o.x3 }
    }
}

impl SubAssign for MVec3 {
    #[inline]
    fn sub_assign(&mut self, o: MVec3) {
        *self = *self - o;
    }
}

impl Neg for MVec3 {
    type Output = MVec3;
    #[inline]
    fn neg(self) -> MVec3 {
        MVec3 { x1: -self.x1, x2: -self.x2, x3: -self.x3 }
    }
}

impl Mul<f64> for MVec3 {
    type Output = MVec3;
    #[inline]
    fn mul(self, k: f64) -> MVec3 {
        MVec3 { x1: self.x1 * k, x2: self.x2 * k, x3: self.x3 * k }
    }
}

impl Mul<MVec3> for f64 {
    type Output = MVec3;
    #[inline]
    fn mul(self, v: MVec3) -> MVec3 {
        v * self
    }
}

impl Div<f64> for MVec3 {
    type Output = MVec3;
    #[inline]
    fn div(self, k: f64) -> MVec3 {
        MVec3 { x1: self.x1 / k, x2: self.x2 / k, x3: self.x3 / k }
    }
}

impl core::iter::Sum for MVec3 {
    fn sum<I: Iterator<Item = MVec3>>(iter: I) -> MVec3 {
        iter.fold(MVec3::ZERO, Add::add)
    }
}

/// Lorentz inner product `-x1 y1 + x2 y2 + x3 y3`.
#[inline]
pub fn inner(x: MVec3, y: MVec3) -> f64 {
    -x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3
}

/// Lorentzian vector product
/// `x ^ y = (x2 y3 - x3 y2, x1 y3 - x3 y1, x2 y1 - x1 y2)`.
#[inline]
pub fn lorentz_cross(x: MVec3, y: MVec3) -> MVec3 {
    MVec3 {
        x1: x.x2 * y.x3 - x.x3 * y.x2,
        x2: x.x1 * y.x3 - x.x3 * y.x1,
        x3: x.x2 * y.x1 - x.x1 * y.x2,
    }
}

/// Mixed product `|a, b, c| := <a, b ^ c>`.
#[inline]
pub fn triple(a: MVec3, b: MVec3, c: MVec3) -> f64 {
    inner(a, lorentz_cross(b, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
}

impl CausalCharacter {
    /// Sign of `<v, v>` for a unit vector of this character; `None` for null.
    pub fn sign(self) -> Option<Sign> {
        match self {
            CausalCharacter::Spacelike => Some(Sign::Plus),
            CausalCharacter::Timelike => Some(Sign::Minus),
            CausalCharacter::Null => None,
        }
    }
}

/// A sign `+1` or `-1`, used for the values of `<q,q>`, `<h,h>` and `<a,a>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn character(self) -> CausalCharacter {
        match self {
            Sign::Plus => CausalCharacter::Spacelike,
            Sign::Minus => CausalCharacter::Timelike,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Classifies `v` with a relative null band:
/// null when `|<v,v>| <= tol_null * (1 + |v|^2)` (Euclidean norm) and `v != 0`.
pub fn causal_character(v: MVec3, tol_null: f64) -> CausalCharacter {
    debug_assert!(tol_null > 0.0);
    if v == MVec3::ZERO {
        return CausalCharacter::Spacelike;
    }
    let q = v.norm_sq();
    let band = tol_null * (1.0 + v.euclid_norm_sq());
    if libm::fabs(q) <= band {
        CausalCharacter::Null
    } else if q < 0.0 {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Spacelike
    }
}

/// Default relative null band.
pub const DEFAULT_TOL_NULL: f64 = 1e-9;

/// `v / sqrt(|<v,v>|)`; the sign of `<v,v>` is preserved.
pub fn normalize(v: MVec3) -> Result<MVec3> {
    normalize_with(v, DEFAULT_TOL_NULL)
}

pub fn normalize_with(v: MVec3, tol_null: f64) -> Result<MVec3> {
    match causal_character(v, tol_null) {
        CausalCharacter::Null => Err(Error::NullVector),
        _ if v == MVec3::ZERO => Err(Error::NullVector),
        _ => Ok(v / v.lorentz_norm()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudoSphere {
    /// Lorentzian sphere, `<x,x> = r^2`.
    OnS12,
    /// Hyperbolic sphere, `<x,x> = -r^2`.
    OnH02,
    Neither,
}

pub fn pseudo_sphere_membership(v: MVec3, r: f64, tol: f64) -> PseudoSphere {
    let q = v.norm_sq();
    let r2 = r * r;
    if libm::fabs(q - r2) <= tol {
        PseudoSphere::OnS12
    } else if libm::fabs(q + r2) <= tol {
        PseudoSphere::OnH02
    } else {
        PseudoSphere::Neither
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(a: f64, b: f64, c: f64) -> MVec3 {
        MVec3::new(a, b, c)
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(MVec3::E1, MVec3::E1), -1.0);
        assert_eq!(inner(MVec3::E2, MVec3::E2), 1.0);
        assert_eq!(inner(v(5., 3., 4.), v(5., 3., 4.)), 0.0);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(lorentz_cross(MVec3::E1, MVec3::E2), v(0., 0., -1.));
        let w = v(1.5, -2.0, 0.25);
        assert_eq!(lorentz_cross(w, w), MVec3::ZERO);
        for i in 0..50 {
            let u = i as f64 * 0.137;
            let c = lorentz_cross(v(0., libm::cos(u), libm::sin(u)), v(0., -libm::sin(u), libm::cos(u)));
            assert!((c - MVec3::E1).max_abs() < 1e-15, "{c:?}");
        }
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_character(v(2., 0., 0.), 1e-9), CausalCharacter::Timelike);
        assert_eq!(causal_character(v(0., 3., 4.), 1e-9), CausalCharacter::Spacelike);
        assert_eq!(causal_character(v(5., 3., 4.), 1e-9), CausalCharacter::Null);
        assert_eq!(causal_character(MVec3::ZERO, 1e-9), CausalCharacter::Spacelike);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(v(2., 0., 0.)).unwrap(), MVec3::E1);
        let n = normalize(v(0., 3., 4.)).unwrap();
        assert!((n - v(0., 0.6, 0.8)).max_abs() < 1e-15);
        assert_eq!(normalize(v(1., 1., 0.)), Err(Error::NullVector));
        assert_eq!(normalize(MVec3::ZERO), Err(Error::NullVector));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(pseudo_sphere_membership(MVec3::E2, 1.0, 1e-12), PseudoSphere::OnS12);
        assert_eq!(pseudo_sphere_membership(MVec3::E1, 1.0, 1e-12), PseudoSphere::OnH02);
        assert_eq!(pseudo_sphere_membership(v(1., 1., 0.), 1.0, 1e-12), PseudoSphere::Neither);
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(MVec3::try_new(f64::NAN, 0., 0.), Err(Error::NonFinite));
        assert_eq!(MVec3::try_new(0., f64::INFINITY, 0.), Err(Error::NonFinite));
    }

    #[test]
    fn cross_is_lorentz_orthogonal() {
        let x = v(0.3, -1.2, 2.0);
        let y = v(1.1, 0.4, -0.7);
        let c = lorentz_cross(x, y);
        assert!(inner(x, c).abs() < 1e-14);
        assert!(inner(y, c).abs() < 1e-14);
        assert!((triple(x, x, y)).abs() < 1e-14);
    }

    fn comp() -> impl Strategy<Value = f64> {
        -10.0f64..10.0
    }

    fn vec3() -> impl Strategy<Value = MVec3> {
        (comp(), comp(), comp()).prop_map(|(a, b, c)| MVec3::new(a, b, c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn cross_antisymmetric(x in vec3(), y in vec3()) {
            let d = lorentz_cross(x, y) + lorentz_cross(y, x);
            prop_assert!(d.max_abs() <= 1e-12);
        }

        #[test]
        fn inner_symmetric_and_cross_sign(x in vec3(), y in vec3()) {
            prop_assert_eq!(inner(x, y), inner(y, x));
            let a = inner(x, lorentz_cross(x, y));
            let b = inner(y, lorentz_cross(y, x));
            prop_assert!((a.abs() - b.abs()).abs() <= 1e-9);
        }

        #[test]
        fn normalize_idempotent(x in vec3()) {
            // well-conditioned vectors; near-null ones amplify rounding
            prop_assume!(x.norm_sq().abs() > 1e-2 * x.euclid_norm_sq());
            let n = normalize(x).unwrap();
            prop_assert!((n.norm_sq().abs() - 1.0).abs() < 1e-12);
            let nn = normalize(n).unwrap();
            prop_assert!((nn - n).max_abs() < 1e-12);
        }

        #[test]
        fn causal_scale_invariant(x in vec3(), e in -3.0f64..3.0) {
            let c = causal_character(x, 1e-9);
            prop_assume!(c != CausalCharacter::Null);
            // keep the vector well outside the null band at the smallest scale
            prop_assume!(x.euclid_norm() > 0.5);
            prop_assume!(x.norm_sq().abs() > 1e-3 * x.euclid_norm_sq());
            let k = libm::pow(10.0, e);
            prop_assert_eq!(causal_character(x * k, 1e-9), c);
        }
    }
}
