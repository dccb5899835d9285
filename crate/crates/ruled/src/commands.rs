//! The subcommands, writing to caller-supplied streams and returning the
//! process exit code.

use std::io::Write;
use std::path::{Path, PathBuf};

use ruled_core::reconstruct::{build_surface, integrate_frenet, BuildMode};
use ruled_core::scalar::ScalarFn;
use ruled_core::similarity::{
    are_similar_ruled_with, check_developable_similarity, total_curvature_param, SimilarityMode, SimilarityOptions,
};
use ruled_core::surfaces::{
    developability, distribution_parameter, frame_field, is_cylindrical, striction_curve, surface_kind,
    verify_frenet, RuledSurfaceSpec, DEFAULT_DEVELOPABLE_TOL,
};
use ruled_core::verify::{builtin_suite, verify_surface, CheckResult, Corruption, SuiteOptions};
use ruled_core::Error;

use crate::error::{exit, CliError, CliResult};
use crate::mesh::{Mesh, MeshGrid};
use crate::profile_file::ProfileFile;
use crate::report::{
    short, sign, AnalysisReport, CompareReport, DevelopabilitySummary, DevelopableSection, Envelope, FrenetSummary,
    VerifyReport,
};
use crate::surface_file::{SurfaceDefinition, SurfaceSource};
use crate::table::write_table;
use crate::tolerances::Tolerances;

fn out_err(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

fn min_max(v: impl IntoIterator<Item = f64>) -> Option<[f64; 2]> {
    v.into_iter().fold(None, |acc, x| match acc {
        None => Some([x, x]),
        Some([lo, hi]) => Some([lo.min(x), hi.max(x)]),
    })
}

fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Analysis results plus the plot-ready tables behind them.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: AnalysisReport,
    /// `u, s, k1, k2, phi, f`.
    pub frame_table: Vec<Vec<f64>>,
    /// `u, cx, cy, cz, delta`.
    pub striction_table: Vec<Vec<f64>>,
}

pub const FRAME_HEADER: [&str; 6] = ["u", "s", "k1", "k2", "phi", "f"];
pub const STRICTION_HEADER: [&str; 5] = ["u", "cx", "cy", "cz", "delta"];

pub fn analyze_surface(s: &RuledSurfaceSpec, sampled: bool, tol: &Tolerances) -> CliResult<Analysis> {
    let (u0, u1) = s.interval();
    let mut report = AnalysisReport {
        name: s.name.clone(),
        classification: String::new(),
        kind: surface_kind(s)?.map(|k| k.name().to_string()),
        eps_q: sign(s.eps_q()),
        eps_h: None,
        eps_a: None,
        interval: [u0, u1],
        samples: s.samples(),
        delta_range: None,
        k1_range: None,
        k2_range: None,
        f_range: None,
        striction_arc_length: None,
        total_phi: None,
        frenet: None,
        developability: None,
        warnings: Vec::new(),
    };
    if sampled {
        report.warnings.push("derivatives of sampled data come from local interpolation, not exact jets".into());
    }
    if is_cylindrical(s)? {
        report.classification = "Cylindrical".into();
        report
            .warnings
            .push("ruling direction is constant: striction, frame and developability sections omitted".into());
        return Ok(Analysis { report, frame_table: Vec::new(), striction_table: Vec::new() });
    }

    let grid = s.base().grid();
    let striction = striction_curve(s)?;
    let mut striction_table = Vec::with_capacity(grid.len());
    for &u in &grid {
        let c = striction.position(u)?;
        striction_table.push(vec![u, c.x1(), c.x2(), c.x3(), distribution_parameter(s, u)?]);
    }
    report.delta_range = min_max(striction_table.iter().map(|r| r[4]));

    let field = frame_field(s, s.samples())?;
    report.classification = field.surface_type.name().into();
    report.eps_h = Some(sign(field.eps_h));
    report.eps_a = Some(sign(field.eps_a()));
    // the base curve may be an edge of regression, so trust the frame
    report.kind = Some(field.kind().name().to_string());
    let phi = total_curvature_param(&field)?;
    let frame_table: Vec<Vec<f64>> = field
        .samples
        .iter()
        .zip(&phi.y)
        .map(|(x, &p)| vec![x.t, x.s, x.k1, x.k2, p, x.k2 / x.k1])
        .collect();
    report.k1_range = min_max(frame_table.iter().map(|r| r[2]));
    report.k2_range = min_max(frame_table.iter().map(|r| r[3]));
    report.f_range = min_max(frame_table.iter().map(|r| r[5]));
    report.striction_arc_length = Some(field.total_arc_length());
    report.total_phi = phi.y.last().copied();

    let frenet = FrenetSummary::new(&verify_frenet(&field), tol.frame);
    if !frenet.passed {
        report.warnings.push(format!(
            "Frenet residuals exceed the frame tolerance {} at {} samples",
            short(tol.frame),
            s.samples()
        ));
    }
    report.frenet = Some(frenet);
    let dev = developability(s, DEFAULT_DEVELOPABLE_TOL)?;
    if dev.character_mismatch {
        report.warnings.push("striction tangent and ruling differ in causal character; no angle decomposition".into());
    }
    report.developability = Some(DevelopabilitySummary::new(&dev, DEFAULT_DEVELOPABLE_TOL));

    let finite = frame_table.iter().chain(&striction_table).flatten().all(|x| x.is_finite());
    if !finite {
        return Err(CliError::Geometry(Error::NonFinite));
    }
    Ok(Analysis { report, frame_table, striction_table })
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let pair = |p: Option<[f64; 2]>| p.map_or("-".to_string(), |[a, b]| format!("[{}, {}]", short(a), short(b)));
    let sign_text = |s: Option<i8>| s.map_or("-".to_string(), |s| format!("{s:+}"));
    let mut lines = vec![
        format!("surface         {}", r.name),
        format!(
            "classification  {} (eps_q {}, eps_h {}, eps_a {})",
            r.classification,
            sign_text(Some(r.eps_q)),
            sign_text(r.eps_h),
            sign_text(r.eps_a)
        ),
        format!("kind            {}", r.kind.as_deref().unwrap_or("mixed")),
        format!("interval        [{}, {}], {} samples", short(r.interval[0]), short(r.interval[1]), r.samples),
    ];
    if r.frenet.is_some() {
        lines.push(format!("delta           {}", pair(r.delta_range)));
        lines.push(format!("k1              {}", pair(r.k1_range)));
        lines.push(format!("k2              {}", pair(r.k2_range)));
        lines.push(format!("f = k2/k1       {}", pair(r.f_range)));
        lines.push(format!("arc length      {}", r.striction_arc_length.map_or("-".into(), short)));
        lines.push(format!("total phi       {}", r.total_phi.map_or("-".into(), short)));
    }
    if let Some(f) = &r.frenet {
        lines.push(format!(
            "frenet          derivative {}, identity {}, orthonormality {} (limit {}): {}",
            short(f.derivative),
            short(f.identity),
            short(f.orthonormality),
            short(f.tolerance),
            if f.passed { "ok" } else { "FAIL" }
        ));
    }
    if let Some(d) = &r.developability {
        lines.push(format!(
            "developable     {} (max |T - q| {}, max |delta| {})",
            d.developable,
            short(d.max_tangent_deviation),
            short(d.max_abs_delta)
        ));
    }
    for w in &r.warnings {
        lines.push(format!("warning: {w}"));
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

fn load_surface(path: &Path, tol: &Tolerances) -> CliResult<(SurfaceDefinition, RuledSurfaceSpec)> {
    let def = SurfaceDefinition::load(path)?;
    let spec = def.to_spec(tol.null)?;
    Ok((def, spec))
}

pub fn analyze(input: &Path, out_dir: Option<&Path>, tol: &Tolerances, out: &mut dyn Write) -> CliResult<i32> {
    let (def, s) = load_surface(input, tol)?;
    let sampled = matches!(def.source, SurfaceSource::Sampled { .. });
    let a = analyze_surface(&s, sampled, tol)?;
    out.write_all(render_analysis(&a.report).as_bytes()).map_err(out_err)?;
    if let Some(dir) = out_dir {
        ensure_dir(dir)?;
        let summary = dir.join("summary.json");
        std::fs::write(&summary, Envelope::new(&a.report).to_json()).map_err(|e| CliError::io(&summary, e))?;
        if !a.frame_table.is_empty() {
            write_table(&dir.join("frame.csv"), &FRAME_HEADER, a.frame_table.iter().cloned())?;
            write_table(&dir.join("striction.csv"), &STRICTION_HEADER, a.striction_table.iter().cloned())?;
        }
    }
    Ok(exit::OK)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareArgs {
    pub mode: SimilarityMode,
    pub search_offset: bool,
}

pub fn compare(a: &Path, b: &Path, args: CompareArgs, tol: &Tolerances, out: &mut dyn Write) -> CliResult<i32> {
    let (_, sa) = load_surface(a, tol)?;
    let (_, sb) = load_surface(b, tol)?;
    let fa = frame_field(&sa, sa.samples())?;
    let fb = frame_field(&sb, sb.samples())?;
    let opts = SimilarityOptions { tol: tol.similar, mode: args.mode, search_offset: args.search_offset };
    let r = are_similar_ruled_with(&fa, &fb, &opts)?;
    let mut report = CompareReport::new(&sa.name, &sb.name, fa.kind().name(), tol.similar, &r);
    let developable = |s: &RuledSurfaceSpec| developability(s, DEFAULT_DEVELOPABLE_TOL).is_ok_and(|d| d.developable);
    if developable(&sa) && developable(&sb) {
        let d = check_developable_similarity(&sa, &sb, tol.similar)?;
        report.developable = Some(DevelopableSection::new(&d));
    }
    out.write_all(Envelope::new(&report).to_json().as_bytes()).map_err(out_err)?;
    Ok(if r.is_similar { exit::OK } else { exit::NEGATIVE })
}

#[derive(Debug, Clone, Default)]
pub struct ReconstructArgs {
    pub steps: Option<usize>,
    pub theta: Option<String>,
    pub developable: bool,
    pub v_range: Option<(f64, f64)>,
    pub v_steps: Option<usize>,
    pub out_dir: PathBuf,
}

/// Paths written by `reconstruct`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstructed {
    pub definition: PathBuf,
    pub samples: PathBuf,
    pub mesh: PathBuf,
}

pub fn reconstruct(profile: &Path, args: &ReconstructArgs, out: &mut dyn Write) -> CliResult<(i32, Reconstructed)> {
    if args.developable && args.theta.is_some() {
        return Err(CliError::Usage("--developable and --theta exclude each other".into()));
    }
    let p = ProfileFile::load(profile)?;
    let steps = args.steps.unwrap_or(p.steps);
    ProfileFile::check_steps(steps)?;
    let theta = match (&args.theta, args.developable) {
        (Some(text), _) => Some(ScalarFn::parse(text).map_err(|e| CliError::Usage(format!("--theta: {e}")))?),
        (None, true) => None,
        (None, false) => p.theta.clone(),
    };
    let mode = theta.map_or(BuildMode::Developable, BuildMode::Angle);
    let grid = MeshGrid::new(steps, args.v_range.unwrap_or(p.v_range), args.v_steps.unwrap_or(p.v_steps))?;

    let field = integrate_frenet(&p.profile, steps)?;
    let spec = build_surface(&field, &mode, p.name.clone())?;
    ensure_dir(&args.out_dir)?;
    let (definition, samples) = SurfaceDefinition::write_sampled(&spec, &args.out_dir, &p.name)?;
    let written = Reconstructed { definition, samples, mesh: args.out_dir.join(format!("{}.obj", p.name)) };
    Mesh::of_surface(&spec, &grid)?.write_obj(&written.mesh, &p.name)?;
    for path in [&written.definition, &written.samples, &written.mesh] {
        writeln!(out, "wrote {}", path.display()).map_err(out_err)?;
    }
    Ok((exit::OK, written))
}

#[derive(Debug, Clone, Default)]
pub struct VerifyArgs {
    pub input: Option<PathBuf>,
    pub builtin: bool,
    pub json: bool,
    pub corrupt: Option<Corruption>,
}

pub fn render_checks(checks: &[CheckResult]) -> String {
    let name_w = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let subj_w = checks.iter().map(|c| c.subject.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let measure = match &c.detail {
            Some(d) => d.clone(),
            None => format!("{} <= {}", short(c.value), short(c.limit)),
        };
        out.push_str(&format!("{status}  {:name_w$}  {:subj_w$}  {measure}\n", c.name, c.subject));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    out
}

pub fn verify(args: &VerifyArgs, tol: &Tolerances, out: &mut dyn Write) -> CliResult<i32> {
    if args.input.is_none() && !args.builtin {
        return Err(CliError::Usage("give a surface file or --suite builtin".into()));
    }
    let opts = SuiteOptions { tol_frame: tol.frame, corrupt: args.corrupt, ..SuiteOptions::default() };
    let mut checks = Vec::new();
    if let Some(path) = &args.input {
        let (_, s) = load_surface(path, tol)?;
        checks.extend(verify_surface(&s, &opts));
    }
    if args.builtin {
        checks.extend(builtin_suite(&opts));
    }
    let text = if args.json { Envelope::new(VerifyReport::new(&checks)).to_json() } else { render_checks(&checks) };
    out.write_all(text.as_bytes()).map_err(out_err)?;
    Ok(if checks.iter().all(|c| c.passed) { exit::OK } else { exit::NEGATIVE })
}

#[derive(Debug, Clone)]
pub struct ExportArgs {
    pub output: PathBuf,
    pub u_steps: Option<usize>,
    pub v_range: (f64, f64),
    pub v_steps: usize,
}

pub fn export(input: &Path, args: &ExportArgs, tol: &Tolerances, out: &mut dyn Write) -> CliResult<i32> {
    let (_, s) = load_surface(input, tol)?;
    let grid = MeshGrid::new(args.u_steps.unwrap_or(s.samples() - 1), args.v_range, args.v_steps)?;
    let mesh = Mesh::of_surface(&s, &grid)?;
    mesh.write_obj(&args.output, &s.name)?;
    writeln!(out, "wrote {} ({} vertices, {} triangles)", args.output.display(), mesh.vertices.len(), mesh.triangles.len())
        .map_err(out_err)?;
    Ok(exit::OK)
}
