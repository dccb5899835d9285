use ruled_core::curves::{ExprCurve, ParamCurve, SampledCurve};
use ruled_core::numeric::linspace;
use ruled_core::reconstruct::{build_surface, integrate_frenet, BuildMode, InvariantProfile, ProfileKind};
use ruled_core::similarity::{are_similar_ruled, SimilarityMode};
use ruled_core::surfaces::{classify, developability, frame_field, verify_frenet, RuledSurfaceSpec, SurfaceType};
use ruled_core::{MVec3, Sign};

fn expr_surface(k: [&str; 3], q: [&str; 3], a: f64, b: f64) -> RuledSurfaceSpec {
    let base = ParamCurve::from_source(ExprCurve::parse(k[0], k[1], k[2]).unwrap(), a, b, 512).unwrap();
    let ruling = ParamCurve::from_source(ExprCurve::parse(q[0], q[1], q[2]).unwrap(), a, b, 512).unwrap();
    RuledSurfaceSpec::new("expr", base, ruling).unwrap()
}

#[test]
fn helicoid_from_expressions() {
    let s = expr_surface(["u", "0", "0"], ["0", "cos(u)", "sin(u)"], 0.0, 2.0);
    assert_eq!(classify(&s).unwrap(), SurfaceType::NPlus);
    let f = frame_field(&s, 512).unwrap();
    assert!(verify_frenet(&f).max() < 1e-6);
    assert!(f.samples.iter().all(|x| (x.k1 - 1.0).abs() < 1e-12 && x.k2.abs() < 1e-12));
    assert!(!developability(&s, 1e-6).unwrap().developable);
}

#[test]
fn unnormalized_ruling_is_normalized() {
    // 2 (cosh u, sinh u, 0) describes the same surface as the unit ruling
    let s = expr_surface(["0", "0", "u"], ["2*cosh(u)", "2*sinh(u)", "0"], -1.0, 1.0);
    let f = frame_field(&s, 256).unwrap();
    assert_eq!(f.surface_type, SurfaceType::NMinus);
    assert!(f.samples.iter().all(|x| (x.k1 - 1.0).abs() < 1e-10 && (x.a - MVec3::E3).max_abs() < 1e-10));
}

#[test]
fn sampled_helicoid() {
    let u = linspace(0.0, 2.0, 401);
    let k: Vec<MVec3> = u.iter().map(|&u| MVec3::new(u, 0.0, 0.0)).collect();
    let q: Vec<MVec3> = u.iter().map(|&u| MVec3::new(0.0, u.cos(), u.sin())).collect();
    let base = ParamCurve::from_source(SampledCurve::new(u.clone(), k).unwrap(), 0.0, 2.0, 401).unwrap();
    let ruling = ParamCurve::from_source(SampledCurve::new(u, q).unwrap(), 0.0, 2.0, 401).unwrap();
    let s = RuledSurfaceSpec::new("sampled", base, ruling).unwrap();
    let f = frame_field(&s, 401).unwrap();
    assert_eq!(f.surface_type, SurfaceType::NPlus);
    assert!(f.samples.iter().all(|x| (x.k1 - 1.0).abs() < 1e-6 && x.k2.abs() < 1e-6));
}

#[test]
fn reconstructed_surfaces_compare() {
    let kind = ProfileKind::Timelike(Sign::Minus);
    let p = InvariantProfile::standard(0.4.into(), kind, (0.0, 1.5)).unwrap();
    let a = build_surface(&integrate_frenet(&p, 600).unwrap(), &BuildMode::Developable, "a").unwrap();
    let b = build_surface(&integrate_frenet(&p.with_k1(3.0.into()), 600).unwrap(), &BuildMode::Developable, "b").unwrap();
    let r = are_similar_ruled(&frame_field(&a, 601).unwrap(), &frame_field(&b, 601).unwrap(), 1e-4, SimilarityMode::ByDefinition)
        .unwrap();
    assert!(r.is_similar);
    assert!(r.lambda_table.iter().all(|(_, l)| (l - 3.0).abs() < 1e-5));
}
