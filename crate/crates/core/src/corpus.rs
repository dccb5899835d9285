//! Analytic test surfaces and curves with closed-form jets.
//!
//! Every surface here has a known frame: the comments give `q`, `h`, `a`,
//! `k1`, `k2` in the striction arc length.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use libm::{cos, cosh, sin, sinh};

use crate::curves::{Jet, ParamCurve, DEFAULT_SAMPLES};
use crate::lorentz::MVec3;
use crate::numeric::gauss_legendre;
use crate::surfaces::RuledSurfaceSpec;

fn v(x1: f64, x2: f64, x3: f64) -> MVec3 {
    MVec3::new(x1, x2, x3)
}

fn curve<F>(f: F, a: f64, b: f64) -> ParamCurve
where
    F: Fn(f64) -> Jet + Send + Sync + 'static,
{
    ParamCurve::from_fn(f, a, b, DEFAULT_SAMPLES).expect("corpus interval is valid")
}

fn surface<K, Q>(name: &str, k: K, q: Q, a: f64, b: f64) -> RuledSurfaceSpec
where
    K: Fn(f64) -> Jet + Send + Sync + 'static,
    Q: Fn(f64) -> Jet + Send + Sync + 'static,
{
    RuledSurfaceSpec::new(name, curve(k, a, b), curve(q, a, b)).expect("corpus ruling is non-null")
}

fn axis(dir: MVec3, offset: f64) -> impl Fn(f64) -> Jet + Send + Sync + 'static {
    move |u| [dir * (u + offset), dir, MVec3::ZERO, MVec3::ZERO]
}

fn constant(p: MVec3) -> impl Fn(f64) -> Jet + Send + Sync + 'static {
    move |_| [p, MVec3::ZERO, MVec3::ZERO, MVec3::ZERO]
}

/// `(0, cos u, sin u)` and its derivatives.
fn circle_jet(u: f64) -> Jet {
    let (s, c) = (sin(u), cos(u));
    [v(0., c, s), v(0., -s, c), v(0., -c, -s), v(0., s, -c)]
}

/// `(cosh u, sinh u, 0)` and its derivatives.
fn hyperbola_t(u: f64) -> Jet {
    let (s, c) = (sinh(u), cosh(u));
    [v(c, s, 0.), v(s, c, 0.), v(c, s, 0.), v(s, c, 0.)]
}

/// `(sinh u, cosh u, 0)` and its derivatives.
fn hyperbola_s(u: f64) -> Jet {
    let (s, c) = (sinh(u), cosh(u));
    [v(s, c, 0.), v(c, s, 0.), v(s, c, 0.), v(c, s, 0.)]
}

/// Helicoid `k = (u,0,0)`, `q = (0, cos u, sin u)` on `[0, 2]`: NPlus,
/// `h = (0, -sin u, cos u)`, `a = (1,0,0)`, `k1 = 1`, `k2 = 0`.
pub fn helicoid() -> RuledSurfaceSpec {
    surface("H1", axis(MVec3::E1, 0.0), circle_jet, 0.0, 2.0)
}

/// The helicoid with its base moved along the axis.
pub fn shifted_helicoid(shift: f64) -> RuledSurfaceSpec {
    surface(&format!("H1+{shift}"), axis(MVec3::E1, shift), circle_jet, 0.0, 2.0)
}

/// The helicoid over the base `(u, cos u, sin u)`; its striction curve is
/// still the axis.
pub fn offset_helicoid() -> RuledSurfaceSpec {
    let k = |u: f64| {
        let c = circle_jet(u);
        [c[0] + v(u, 0., 0.), c[1] + MVec3::E1, c[2], c[3]]
    };
    surface("H1-offset", k, circle_jet, 0.0, 2.0)
}

/// `k = (0,0,u)`, `q = (cosh u, sinh u, 0)`: NMinus, `h = (sinh u, cosh u, 0)`,
/// `a = (0,0,1)`, `k1 = 1`, `k2 = 0`, distribution parameter `-1`.
pub fn nminus_conoid() -> RuledSurfaceSpec {
    surface("NMinus-conoid", axis(MVec3::E3, 0.0), hyperbola_t, -1.0, 1.0)
}

/// `k = (0,0,u)`, `q = (sinh u, cosh u, 0)`: NTimes, `h = (cosh u, sinh u, 0)`,
/// `a = (0,0,-1)`, `k1 = 1`, `k2 = 0`.
pub fn ntimes_conoid() -> RuledSurfaceSpec {
    surface("NTimes-conoid", axis(MVec3::E3, 0.0), hyperbola_s, -1.0, 1.0)
}

/// Circular cylinder with timelike rulings `(1,0,0)`.
pub fn cylinder() -> RuledSurfaceSpec {
    surface("cylinder", circle_jet, constant(MVec3::E1), 0.0, 2.0)
}

/// Hyperbolic cylinder with spacelike rulings `(0,0,1)`.
pub fn hyperbolic_cylinder() -> RuledSurfaceSpec {
    surface("hyperbolic-cylinder", hyperbola_s, constant(MVec3::E3), -1.0, 1.0)
}

/// `k = (u,0,0)`, `q = (sinh b, cosh b cos u, cosh b sin u)`: NPlus with
/// `k1 = cosh b`, `k2 = sinh b`, `a = (cosh b, sinh b cos u, sinh b sin u)`.
pub fn twisted_nplus(b: f64) -> RuledSurfaceSpec {
    let q = move |u: f64| {
        let c = circle_jet(u);
        let e = v(sinh(b), 0., 0.);
        [e + c[0] * cosh(b), c[1] * cosh(b), c[2] * cosh(b), c[3] * cosh(b)]
    };
    surface(&format!("NPlus-twisted({b})"), axis(MVec3::E1, 0.0), q, 0.0, 2.0)
}

/// `k = (0,0,u)`, `q = (cos b sinh u, cos b cosh u, sin b)`: NTimes with
/// `k1 = cos b`, `k2 = sin b`.
pub fn twisted_ntimes(b: f64) -> RuledSurfaceSpec {
    let q = move |u: f64| {
        let h = hyperbola_s(u);
        [h[0] * cos(b) + v(0., 0., sin(b)), h[1] * cos(b), h[2] * cos(b), h[3] * cos(b)]
    };
    surface(&format!("NTimes-twisted({b})"), axis(MVec3::E3, 0.0), q, -1.0, 1.0)
}

/// `k = (0,0,u)`, `q = (cosh b cosh u, cosh b sinh u, sinh b)`: NMinus with
/// `k1 = cosh b`, `k2 = -sinh b`.
pub fn twisted_nminus(b: f64) -> RuledSurfaceSpec {
    let q = move |u: f64| {
        let h = hyperbola_t(u);
        [h[0] * cosh(b) + v(0., 0., sinh(b)), h[1] * cosh(b), h[2] * cosh(b), h[3] * cosh(b)]
    };
    surface(&format!("NMinus-twisted({b})"), axis(MVec3::E3, 0.0), q, -1.0, 1.0)
}

/// NMinus surface whose striction tangent is `cosh(t) q + sinh(t) a`, with
/// `q = (cosh u, sinh u, 0)`; distribution parameter `-sinh t`.
pub fn theta_nminus(theta: f64) -> RuledSurfaceSpec {
    let (ct, st) = (cosh(theta), sinh(theta));
    let k = move |u: f64| {
        let h = hyperbola_s(u);
        [h[0] * ct + v(0., 0., st * u), h[1] * ct + v(0., 0., st), h[2] * ct, h[3] * ct]
    };
    surface(&format!("NMinus-theta({theta})"), k, hyperbola_t, -1.0, 1.0)
}

/// NTimes surface whose striction tangent is `cos(t) q + sin(t) a`, with
/// `q = (sinh u, cosh u, 0)`; distribution parameter `sin t`.
pub fn theta_ntimes(theta: f64) -> RuledSurfaceSpec {
    let (ct, st) = (cos(theta), sin(theta));
    let k = move |u: f64| {
        let h = hyperbola_t(u);
        [h[0] * ct - v(0., 0., st * u), h[1] * ct - v(0., 0., st), h[2] * ct, h[3] * ct]
    };
    surface(&format!("NTimes-theta({theta})"), k, hyperbola_s, -1.0, 1.0)
}

/// NPlus surface whose striction tangent is `cosh(t) q + sinh(t) a`, with
/// `q = (0, cos u, sin u)`; distribution parameter `-sinh t`.
pub fn theta_nplus(theta: f64) -> RuledSurfaceSpec {
    let (ct, st) = (cosh(theta), sinh(theta));
    let k = move |u: f64| {
        let (s, c) = (sin(u), cos(u));
        [
            v(st * u, ct * s, -ct * c),
            v(st, ct * c, ct * s),
            v(0., -ct * s, ct * c),
            v(0., -ct * c, -ct * s),
        ]
    };
    surface(&format!("NPlus-theta({theta})"), k, circle_jet, 0.0, 2.0)
}

/// `(sinh s, cosh s, 0)` on `[0.25, 2.25]`: unit speed, tangent angle `s`.
pub fn similar_curve_alpha() -> ParamCurve {
    curve(hyperbola_s, 0.25, 2.25)
}

/// Unit-speed curve on `[0.5, 1.5]` with tangent `(cosh t^2, sinh t^2, 0)`,
/// similar to [`similar_curve_alpha`] with `lambda = 2t` and
/// `s_alpha = t^2`. Positions come from quadrature of the tangent.
pub fn similar_curve_beta() -> ParamCurve {
    curve(similar_beta_jet, 0.5, 1.5)
}

fn similar_beta_tangent(t: f64) -> MVec3 {
    v(cosh(t * t), sinh(t * t), 0.)
}

fn similar_beta_jet(t: f64) -> Jet {
    let w = t * t;
    let (s, c) = (sinh(w), cosh(w));
    let panels = 1 + (libm::fabs(t - 0.5) * 40.0) as usize;
    let p = gauss_legendre(similar_beta_tangent, 0.5, t, panels);
    [
        p,
        v(c, s, 0.),
        v(s, c, 0.) * (2.0 * t),
        v(s, c, 0.) * 2.0 + v(c, s, 0.) * (4.0 * t * t),
    ]
}

/// `(sinh t, 0, cosh t)` on `[0.25, 2.25]`; its tangents never meet those of
/// [`similar_curve_alpha`].
pub fn disjoint_curve() -> ParamCurve {
    curve(
        |t| {
            let (s, c) = (sinh(t), cosh(t));
            [v(s, 0., c), v(c, 0., s), v(s, 0., c), v(c, 0., s)]
        },
        0.25,
        2.25,
    )
}

fn tangent_developable(name: &str, c: ParamCurve) -> RuledSurfaceSpec {
    let (a, b) = c.interval();
    let c2 = c.clone();
    let base = move |u: f64| c.jet(u).expect("corpus curve evaluates");
    let ruling = move |u: f64| {
        let j = c2.jet(u).expect("corpus curve evaluates");
        // fourth derivative is not needed by any frame quantity
        [j[1], j[2], j[3], MVec3::ZERO]
    };
    surface(name, base, ruling, a, b)
}

/// Tangent developable of [`similar_curve_alpha`].
pub fn tangent_developable_alpha() -> RuledSurfaceSpec {
    tangent_developable("tangent-developable-alpha", similar_curve_alpha())
}

/// Tangent developable of [`similar_curve_beta`].
pub fn tangent_developable_beta() -> RuledSurfaceSpec {
    tangent_developable("tangent-developable-beta", similar_curve_beta())
}

/// Tangent developable of [`disjoint_curve`].
pub fn tangent_developable_disjoint() -> RuledSurfaceSpec {
    tangent_developable("tangent-developable-disjoint", disjoint_curve())
}

/// Ten surfaces with their expected developability: the three `theta = 0`
/// surfaces are developable, the rest are not.
pub fn developability_corpus() -> Vec<(RuledSurfaceSpec, bool)> {
    vec![
        (theta_nminus(0.0), true),
        (theta_ntimes(0.0), true),
        (theta_nplus(0.0), true),
        (helicoid(), false),
        (nminus_conoid(), false),
        (ntimes_conoid(), false),
        (theta_nminus(0.3), false),
        (theta_ntimes(0.3), false),
        (theta_nplus(0.3), false),
        (twisted_nplus(0.5), false),
    ]
}

/// Non-cylindrical analytic surfaces used by the invariant suite.
pub fn analytic_corpus() -> Vec<RuledSurfaceSpec> {
    vec![
        helicoid(),
        offset_helicoid(),
        nminus_conoid(),
        ntimes_conoid(),
        twisted_nplus(0.5),
        twisted_ntimes(0.4),
        twisted_nminus(0.3),
        theta_nminus(0.3),
        theta_ntimes(0.3),
        theta_nplus(0.3),
        tangent_developable_alpha(),
    ]
}
