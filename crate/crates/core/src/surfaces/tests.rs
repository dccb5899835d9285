use super::*;
use crate::corpus;
use crate::lorentz::{pseudo_sphere_membership, PseudoSphere};
use libm::{cos, cosh, sin, sinh};

fn close(a: MVec3, b: MVec3, tol: f64) -> bool {
    (a - b).euclid_norm() <= tol
}

#[test]
fn helicoid_normal_is_orthogonal() {
    let s = corpus::helicoid();
    let m = surface_normal(&s, 0.0, 0.5).unwrap();
    let q = s.ruling().position(0.0).unwrap();
    let phi_u = MVec3::E1 + s.ruling().velocity(0.0).unwrap() * 0.5;
    assert!(m.inner(q).abs() < 1e-10);
    assert!(m.inner(phi_u).abs() < 1e-10);
    // at v = 1 the tangent plane is degenerate
    assert!(matches!(surface_normal(&s, 0.0, 1.0), Err(Error::SingularPoint { .. })));
}

#[test]
fn cylinder_normal_is_constant_along_rulings() {
    let s = corpus::cylinder();
    for u in [0.1, 0.7, 1.9] {
        let m0 = surface_normal(&s, u, 0.0).unwrap();
        for v in [-3.0, 0.5, 10.0] {
            assert!(close(surface_normal(&s, u, v).unwrap(), m0, 1e-12));
        }
    }
}

#[test]
fn normal_tends_to_central_tangent() {
    let s = corpus::helicoid();
    let a = MVec3::E1;
    for v in [1e3, 1e4] {
        let m = surface_normal(&s, 0.0, v).unwrap();
        let dev = (m - a).euclid_norm().min((m + a).euclid_norm());
        assert!(dev < 10.0 / v, "v = {v}: {dev}");
    }
}

#[test]
fn distribution_parameter_examples() {
    let td = corpus::tangent_developable_alpha();
    for u in td.base().grid().into_iter().step_by(37) {
        assert!(distribution_parameter(&td, u).unwrap().abs() < 1e-12);
        assert!(is_torsal_ruling(&td, u, 1e-10).unwrap());
    }
    let c = corpus::nminus_conoid();
    for u in [-0.9, 0.0, 0.4] {
        assert!((distribution_parameter(&c, u).unwrap() + 1.0).abs() < 1e-12);
        assert!(!is_torsal_ruling(&c, u, 1e-10).unwrap());
    }
    let cyl = corpus::cylinder();
    assert!(matches!(distribution_parameter(&cyl, 0.3), Err(Error::CylindricalRuling { .. })));
    assert!(is_torsal_ruling(&cyl, 0.3, 1e-10).unwrap());
}

#[test]
fn striction_curve_examples() {
    let c = striction_curve(&corpus::helicoid()).unwrap();
    let c2 = striction_curve(&corpus::offset_helicoid()).unwrap();
    for u in [0.0, 0.3, 1.7] {
        assert!(close(c.position(u).unwrap(), MVec3::new(u, 0., 0.), 1e-14));
        assert!(close(c2.position(u).unwrap(), MVec3::new(u, 0., 0.), 1e-14));
        assert!(close(c2.velocity(u).unwrap(), MVec3::E1, 1e-14));
    }
    assert!(matches!(striction_curve(&corpus::cylinder()), Err(Error::CylindricalRuling { .. })));
}

#[test]
fn striction_is_orthogonal_to_ruling_velocity() {
    for s in corpus::analytic_corpus() {
        let c = striction_curve(&s).unwrap();
        for u in s.base().grid().into_iter().step_by(17) {
            let dq = s.ruling().velocity(u).unwrap();
            let dc = c.velocity(u).unwrap();
            assert!(dq.inner(dc).abs() < 1e-8, "{}: {}", s.name, dq.inner(dc));
        }
    }
}

#[test]
fn worked_frames() {
    let f = frame_field(&corpus::helicoid(), 512).unwrap();
    assert_eq!(f.surface_type, SurfaceType::NPlus);
    assert_eq!(f.eps_q, Sign::Plus);
    assert_eq!(f.kind(), SurfaceKind::Timelike);
    for x in &f.samples {
        let u = x.t;
        assert!(close(x.h, MVec3::new(0., -sin(u), cos(u)), 1e-12));
        assert!(close(x.a, MVec3::E1, 1e-12));
        assert!((x.k1 - 1.0).abs() < 1e-12 && x.k2.abs() < 1e-12);
    }
    let f = frame_field(&corpus::nminus_conoid(), 512).unwrap();
    assert_eq!(f.surface_type, SurfaceType::NMinus);
    assert_eq!(f.eps_q, Sign::Minus);
    for x in &f.samples {
        let u = x.t;
        assert!(close(x.h, MVec3::new(sinh(u), cosh(u), 0.), 1e-12));
        assert!(close(x.a, MVec3::E3, 1e-12));
        assert!((x.k1 - 1.0).abs() < 1e-12 && x.k2.abs() < 1e-12);
    }
    let f = frame_field(&corpus::ntimes_conoid(), 512).unwrap();
    assert_eq!(f.surface_type, SurfaceType::NTimes);
    assert_eq!(f.eps_h, Sign::Minus);
    assert_eq!(f.kind(), SurfaceKind::Spacelike);
    for x in &f.samples {
        let u = x.t;
        assert!(close(x.h, MVec3::new(cosh(u), sinh(u), 0.), 1e-12));
        assert!(close(x.a, -MVec3::E3, 1e-12));
        assert!((x.k1 - 1.0).abs() < 1e-12 && x.k2.abs() < 1e-12);
    }
}

#[test]
fn twisted_curvatures() {
    let b: f64 = 0.5;
    let cases = [
        (corpus::twisted_nplus(b), SurfaceType::NPlus, cosh(b), sinh(b)),
        (corpus::twisted_ntimes(b), SurfaceType::NTimes, cos(b), sin(b)),
        (corpus::twisted_nminus(b), SurfaceType::NMinus, cosh(b), -sinh(b)),
    ];
    for (s, ty, k1, k2) in cases {
        let f = frame_field(&s, 256).unwrap();
        assert_eq!(f.surface_type, ty, "{}", s.name);
        for x in &f.samples {
            assert!((x.k1 - k1).abs() < 1e-10, "{} k1 {}", s.name, x.k1);
            assert!((x.k2 - k2).abs() < 1e-10, "{} k2 {}", s.name, x.k2);
        }
    }
    let f = frame_field(&corpus::twisted_nplus(b), 64).unwrap();
    let u = f.samples[10].t;
    assert!(close(f.samples[10].a, MVec3::new(cosh(b), sinh(b) * cos(u), sinh(b) * sin(u)), 1e-12));
}

#[test]
fn frenet_residuals() {
    for s in [corpus::helicoid(), corpus::nminus_conoid(), corpus::ntimes_conoid()] {
        let r = verify_frenet(&frame_field(&s, 512).unwrap());
        assert!(r.max() < 1e-6, "{}: {r:?}", s.name);
    }
    for s in corpus::analytic_corpus() {
        let r = verify_frenet(&frame_field(&s, 512).unwrap());
        assert!(r.max() < 1e-6, "{}: {r:?}", s.name);
    }
}

#[test]
fn corrupted_frame_is_detected() {
    let mut f = frame_field(&corpus::helicoid(), 128).unwrap();
    for x in &mut f.samples {
        core::mem::swap(&mut x.h, &mut x.a);
    }
    assert!(verify_frenet(&f).identity > 0.1);
}

#[test]
fn frames_are_orthonormal_and_on_pseudo_spheres() {
    for s in corpus::analytic_corpus() {
        let f = frame_field(&s, 256).unwrap();
        for x in &f.samples {
            assert!(f.orthonormality_residual(x) < 1e-8, "{}", s.name);
            assert!(x.k1 >= 0.0);
            let want = if f.eps_q == Sign::Plus { PseudoSphere::OnS12 } else { PseudoSphere::OnH02 };
            assert_eq!(pseudo_sphere_membership(x.q, 1.0, 1e-8), want);
        }
    }
}

#[test]
fn classification() {
    assert_eq!(classify(&corpus::cylinder()).unwrap(), SurfaceType::Cylindrical);
    assert_eq!(classify(&corpus::helicoid()).unwrap(), SurfaceType::NPlus);
    assert_eq!(classify(&corpus::ntimes_conoid()).unwrap(), SurfaceType::NTimes);
    assert_eq!(surface_kind(&corpus::helicoid()).unwrap(), Some(SurfaceKind::Timelike));
    assert_eq!(surface_kind(&corpus::cylinder()).unwrap(), Some(SurfaceKind::Timelike));
    assert_eq!(surface_kind(&corpus::ntimes_conoid()).unwrap(), Some(SurfaceKind::Spacelike));
}

#[test]
fn developability_examples() {
    let d = developability(&corpus::tangent_developable_alpha(), DEFAULT_DEVELOPABLE_TOL).unwrap();
    assert!(d.developable && !d.character_mismatch);
    assert!(d.theta.unwrap().iter().all(|(_, t)| t.abs() < 1e-10));
    assert!(d.d_profile.unwrap().iter().all(|(_, x)| x.abs() < 1e-10));

    let d = developability(&corpus::nminus_conoid(), DEFAULT_DEVELOPABLE_TOL).unwrap();
    assert!(!d.developable && d.character_mismatch && d.theta.is_none());
    assert!(d.delta_profile.iter().all(|(_, x)| (x + 1.0).abs() < 1e-12));

    let d = developability(&corpus::helicoid(), DEFAULT_DEVELOPABLE_TOL).unwrap();
    assert!(!d.developable && d.character_mismatch);
}

#[test]
fn developability_agrees_with_delta() {
    for (s, expected) in corpus::developability_corpus() {
        let d = developability(&s, DEFAULT_DEVELOPABLE_TOL).unwrap();
        assert_eq!(d.developable, expected, "{}", s.name);
        assert_eq!(d.developable_by_delta(1e-6), expected, "{}", s.name);
        if let Some(err) = d.theta_delta_agreement {
            assert!(err < 1e-6, "{}: {err}", s.name);
        }
    }
    for (theta, s) in [(0.3, corpus::theta_nminus(0.3)), (0.3, corpus::theta_nplus(0.3))] {
        let d = developability(&s, 1e-6).unwrap();
        assert!(d.delta_profile.iter().all(|(_, x)| (x + sinh(theta)).abs() < 1e-10));
        assert!(d.theta.unwrap().iter().all(|(_, t)| (t - theta).abs() < 1e-10));
    }
    let d = developability(&corpus::theta_ntimes(0.3), 1e-6).unwrap();
    assert!(d.delta_profile.iter().all(|(_, x)| (x - sin(0.3)).abs() < 1e-10));
}

#[test]
fn segments_split_at_flat_rulings() {
    // ruling angle g(u) is constant on [-0.2, 0.2]
    let g = |u: f64| -> [f64; 4] {
        let w = (u.abs() - 0.2).max(0.0);
        let sg = u.signum();
        [sg * w.powi(4), 4.0 * w.powi(3), sg * 12.0 * w * w, 24.0 * w]
    };
    let base = ParamCurve::from_fn(
        |u| [MVec3::new(u, 0., 0.), MVec3::E1, MVec3::ZERO, MVec3::ZERO],
        -1.0,
        1.0,
        201,
    )
    .unwrap();
    let ruling = ParamCurve::from_fn(
        move |u| {
            let [t, t1, t2, t3] = g(u);
            let (s, c) = (sin(t), cos(t));
            [
                MVec3::new(0., c, s),
                MVec3::new(0., -s, c) * t1,
                MVec3::new(0., -c, -s) * (t1 * t1) + MVec3::new(0., -s, c) * t2,
                MVec3::new(0., s, -c) * (t1 * t1 * t1)
                    + MVec3::new(0., -c, -s) * (3.0 * t1 * t2)
                    + MVec3::new(0., -s, c) * t3,
            ]
        },
        -1.0,
        1.0,
        201,
    )
    .unwrap();
    let s = RuledSurfaceSpec::new("flat-middle", base, ruling).unwrap();
    assert!(frame_field(&s, 201).is_err());
    let parts = frame_segments(&s, 201).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts[0].samples.last().unwrap().t < -0.2);
    assert!(parts[1].samples[0].t > 0.2);
}
