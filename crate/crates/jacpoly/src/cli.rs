//! Command-line front end. One JSON report per request; `main` only forwards
//! the process arguments to [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::exactalg::{jacobian, parse, PuiseuxPoly, Rational};
use crate::genfactory::{certify_t_membership, f_generator, inner_vertex_report, pre_generator, QTuple, VertexChecks};
use crate::grading::Direction;
use crate::magnus::{frac_power_expand, magnus_extended, magnus_solve, MagnusContext, MagnusReport};
use crate::polygeom::{render_svg, SvgItem};
use crate::polygeom::{
    en_vertex, lattice_points_in_r, n0, n_prime_regions, ne_vertex, newton_polygon, pick_area, rect_membership, support,
    ConvexPolygon, RatPoint, RegionR,
};
use crate::walker::{degree_certificate, run_walk, trace_svg, DegreeCertificate, Orientation, WalkOutcome, WalkTrace};

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Polygon,
    Pregen,
    Generator,
    Magnus,
    Walk,
    Region,
    Certify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Polygon => "polygon",
            Command::Pregen => "pregen",
            Command::Generator => "generator",
            Command::Magnus => "magnus",
            Command::Walk => "walk",
            Command::Region => "region",
            Command::Certify => "certify",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jacpoly", version, about = "Newton polygons, generators and walks for plane Jacobian pairs")]
pub struct Cli {
    #[arg(value_enum, required_unless_present = "batch")]
    pub command: Option<Command>,
    /// Polynomial F, or @path to read it from a file.
    #[arg(short = 'F')]
    pub f: Option<String>,
    /// Polynomial G, or @path.
    #[arg(short = 'G')]
    pub g: Option<String>,
    #[arg(short = 'a')]
    pub a: Option<i64>,
    #[arg(short = 'b')]
    pub b: Option<i64>,
    #[arg(short = 'm')]
    pub m: Option<i64>,
    #[arg(short = 'n')]
    pub n: Option<i64>,
    /// Grading direction "u,v".
    #[arg(short = 'w', allow_hyphen_values = true, value_parser = parse_direction)]
    pub w: Option<Direction>,
    /// Truncation order for the t-expansion printed by `magnus`.
    #[arg(long)]
    pub trunc: Option<usize>,
    #[arg(long, default_value = "en")]
    pub orientation: Orientation,
    /// `region`: list the lattice points.
    #[arg(long)]
    pub list: bool,
    /// `magnus`: also run the extended formula under w = (0,1).
    #[arg(long)]
    pub extended: bool,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// JSON file holding an array of argument arrays, one per request.
    #[arg(long, conflicts_with = "command")]
    pub batch: Option<PathBuf>,
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    let (u, v) = s.split_once(',').ok_or_else(|| format!("expected \"u,v\", got {s:?}"))?;
    let u: i64 = u.trim().parse().map_err(|e| format!("{u:?}: {e}"))?;
    let v: i64 = v.trim().parse().map_err(|e| format!("{v:?}: {e}"))?;
    Direction::new(u, v).map_err(|e| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Precondition(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) => m,
        }
    }
}

fn pre<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Precondition(e.to_string())
}

/// What a command produced, before it is written anywhere.
pub struct Report {
    pub json: Value,
    pub summary: String,
    pub svg: Option<String>,
    pub code: i32,
}

fn r(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn rs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(r).collect())
}

fn pt(p: &RatPoint) -> Value {
    json!([r(&p.x), r(&p.y)])
}

fn polygon(p: &ConvexPolygon) -> Value {
    Value::Array(p.vertices().iter().map(pt).collect())
}

fn poly(p: &PuiseuxPoly) -> Value {
    Value::String(p.to_string())
}

fn dir(w: Direction) -> Value {
    json!([w.u(), w.v()])
}

fn opt<T, F: Fn(&T) -> Value>(x: Option<&T>, f: F) -> Value {
    x.map_or(Value::Null, f)
}

fn read_poly(arg: Option<&str>, flag: &str) -> Result<PuiseuxPoly, CliError> {
    let text = arg.ok_or_else(|| CliError::Precondition(format!("missing -{flag}")))?;
    let owned;
    let text = match text.strip_prefix('@') {
        Some(path) => {
            owned = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("-{flag} @{path}: {e}")))?;
            owned.trim()
        }
        None => text,
    };
    parse(text).map_err(|e| CliError::Parse(format!("-{flag}: {e}")))
}

fn need(x: Option<i64>, flag: &str) -> Result<i64, CliError> {
    x.ok_or_else(|| CliError::Precondition(format!("missing -{flag}")))
}

fn corner(f: &PuiseuxPoly, m: Option<i64>, n: Option<i64>) -> Result<(i64, i64), CliError> {
    let from = |e: Option<crate::exactalg::Exp>, flag| -> Result<i64, CliError> {
        e.filter(|e| e.is_integer())
            .map(|e| e.to_integer())
            .ok_or_else(|| CliError::Precondition(format!("cannot read -{flag} off F; pass it explicitly")))
    };
    Ok((m.map_or_else(|| from(f.max_x(), "m"), Ok)?, n.map_or_else(|| from(f.max_y(), "n"), Ok)?))
}

fn cmd_polygon(cli: &Cli) -> Result<Report, CliError> {
    let f = read_poly(cli.f.as_deref(), "F")?;
    let np = newton_polygon(&f, false).map_err(pre)?;
    let p0 = n0(&f);
    let pick = pick_area(&p0).ok();
    let mut out = json!({
        "schema": "jacpoly.polygon/1",
        "f": poly(&f),
        "support": Value::Array(support(&f).iter().map(pt).collect()),
        "newton_polygon": polygon(&np),
        "n0": polygon(&p0),
        "en_vertex": opt(en_vertex(&p0).as_ref(), pt),
        "ne_vertex": opt(ne_vertex(&p0).as_ref(), pt),
        "area": r(&(p0.area2() / crate::exactalg::int(2))),
        "pick": opt(pick.as_ref(), |p| json!({"interior": p.interior, "boundary": p.boundary})),
    });
    if let (Some(m), Some(n)) = (cli.m, cli.n) {
        out["rect_membership"] = Value::String(rect_membership(&f, m, n).to_string());
    }
    let svg = render_svg(&[
        SvgItem::Frame(format!("N(F), F = {f}")),
        SvgItem::Polygon { poly: p0.clone(), label: "N⁰(F)".into(), color: "#bbbbbb".into() },
        SvgItem::Polygon { poly: np.clone(), label: "N(F)".into(), color: "#1f77b4".into() },
    ]);
    Ok(Report { json: out, summary: format!("N⁰(F) = {p0}"), svg: Some(svg), code: 0 })
}

fn cmd_pregen(cli: &Cli) -> Result<Report, CliError> {
    let f = read_poly(cli.f.as_deref(), "F")?;
    let a = need(cli.a, "a")?;
    let (m, n) = corner(&f, cli.m, cli.n)?;
    let q = pre_generator(&f, a).map_err(pre)?;
    let rest = f.checked_sub(&q.pow(a as u32)).map_err(pre)?;
    let (_, npp) = n_prime_regions(a, m, n).map_err(pre)?;
    let clear = support(&rest).iter().all(|p| !npp.contains(p));
    let out = json!({
        "schema": "jacpoly.pregen/1",
        "a": a, "m": m, "n": n,
        "q": poly(&q),
        "remainder": poly(&rest),
        "remainder_clear_of_npp": clear,
    });
    Ok(Report { json: out, summary: format!("Q = {q}"), svg: None, code: 0 })
}

fn checks(v: Option<&VertexChecks>) -> Value {
    opt(v, |c| {
        json!({
            "en": pt(&c.en), "ne": pt(&c.ne),
            "en_equals_ne": c.en_equals_ne,
            "en_in_region": c.en_in_region,
            "ne_in_region": c.ne_in_region,
            "same_ratio": c.same_ratio,
            "inside_own_rect": c.inside_own_rect,
        })
    })
}

fn q_tuple(cli: &Cli, f: &PuiseuxPoly) -> Result<QTuple, CliError> {
    let (a, b) = (need(cli.a, "a")?, need(cli.b, "b")?);
    let (m, n) = corner(f, cli.m, cli.n)?;
    QTuple::new(a, b, m, n).map_err(pre)
}

fn cmd_generator(cli: &Cli) -> Result<Report, CliError> {
    let f = read_poly(cli.f.as_deref(), "F")?;
    let qt = q_tuple(cli, &f)?;
    let g = f_generator(&f, qt).map_err(pre)?;
    let iv = inner_vertex_report(&f, qt).map_err(pre)?;
    let out = json!({
        "schema": "jacpoly.generator/1",
        "a": qt.a, "b": qt.b, "m": qt.m, "n": qt.n,
        "in_r": g.in_r,
        "q": poly(&g.q),
        "delta": g.delta,
        "other_deltas": g.other_deltas,
        "beta": Value::String(g.beta.to_string()),
        "w_f": poly(&g.wf),
        "inner": poly(&g.inner),
        "e": rs(&g.e),
        "z": poly(&g.z),
        "region": {
            "swapped": iv.swapped,
            "z_is_zero": iv.z_is_zero,
            "z": checks(iv.z.as_ref()),
            "inner": checks(iv.inner.as_ref()),
            "summary": iv.summary(),
        },
    });
    let summary = format!("δ = {}, Z = {}: {}", g.delta, g.z, iv.summary());
    Ok(Report { json: out, summary, svg: None, code: 0 })
}

fn magnus_json(rep: &MagnusReport) -> Value {
    json!({
        "w": dir(rep.w),
        "d": rep.d, "e": rep.e, "r": rep.r,
        "lead": r(&rep.lead),
        "h": poly(&rep.h),
        "jacobian": r(&rep.jacobian),
        "c": rs(&rep.c),
        "residuals": Value::Array(rep.residuals.iter().map(|x| Value::String(x.display(&rep.h))).collect()),
        "verified": rep.verified(),
        "lambda": opt(rep.lambda.as_ref(), r),
        "extended_ok": rep.extended_ok,
        "extended_residual": opt(rep.extended_residual.as_ref(), poly),
    })
}

fn cmd_magnus(cli: &Cli) -> Result<Report, CliError> {
    let f = read_poly(cli.f.as_deref(), "F")?;
    let g = read_poly(cli.g.as_deref(), "G")?;
    let w = cli.w.unwrap_or(Direction::new(0, 1).expect("(0,1)"));
    let rep = magnus_solve(&f, &g, w).map_err(pre)?;
    let mut out = json!({ "schema": "jacpoly.magnus/1", "solve": magnus_json(&rep) });
    let mut summary = format!("c = [{}], verified = {}", join(&rep.c), rep.verified());
    if cli.extended {
        let ext = magnus_extended(&f, &g).map_err(pre)?;
        summary += &format!(", λ = {}", ext.lambda.as_ref().map_or("-".into(), |l| l.to_string()));
        out["extended"] = magnus_json(&ext);
    }
    if let Some(t) = cli.trunc {
        let ctx = MagnusContext::for_powers(&f, w).map_err(pre)?;
        let pw = frac_power_expand(&ctx, 1, t);
        out["expansion"] = json!({
            "power": format!("1/{}", ctx.r),
            "trunc": t,
            "coeffs": Value::Array(pw.iter().map(|x| Value::String(x.reduce(&ctx.h).display(&ctx.h))).collect()),
        });
    }
    Ok(Report { json: out, summary, svg: None, code: 0 })
}

fn join(xs: &[Rational]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn certificate_json(c: &DegreeCertificate) -> Value {
    json!({
        "w": dir(c.w),
        "deg_f": r(&c.deg_f), "deg_g": r(&c.deg_g), "deg_xy": r(&c.deg_xy),
        "value": r(&c.value),
        "leading_jacobian_nonzero": c.leading_jacobian_nonzero,
        "actual": opt(c.actual.as_ref(), r),
    })
}

fn outcome_json(o: &WalkOutcome) -> Value {
    match o {
        WalkOutcome::RootIrrational { f, remnant } => json!({
            "kind": "RootIrrational",
            "f": poly(f),
            "remnant": remnant.as_ref().map(|u| u.to_string()),
        }),
        WalkOutcome::InvariantBreach(m) => json!({ "kind": "InvariantBreach", "detail": m }),
        other => json!({ "kind": other.to_string() }),
    }
}

fn walk_summary(tr: &WalkTrace) -> String {
    let mut parts: Vec<String> = tr
        .states
        .iter()
        .map(|s| format!("(⋆_{}) {}", s.j, if s.star_holds { "holds" } else { "fails" }))
        .collect();
    parts.push(format!("outcome {}", tr.outcome));
    if let Some(c) = &tr.certificate {
        parts.push(format!("degree certificate {}", c.value));
    }
    parts.join("; ")
}

fn cmd_walk(cli: &Cli) -> Result<Report, CliError> {
    let f = read_poly(cli.f.as_deref(), "F")?;
    let g = read_poly(cli.g.as_deref(), "G")?;
    let qt = q_tuple(cli, &f)?;
    let tr = run_walk(&f, &g, qt, cli.orientation).map_err(pre)?;
    let states: Vec<Value> = tr
        .states
        .iter()
        .map(|s| {
            json!({
                "j": s.j,
                "f": poly(&s.f), "g": poly(&s.g), "z": poly(&s.z),
                "p": s.p,
                "v_f": pt(&s.v_f), "v_z": pt(&s.v_z), "v_g": pt(&s.v_g),
                "w": dir(s.w),
                "star_holds": s.star_holds,
                "f_form": s.f_form.as_ref().map(|x| x.to_string()),
                "z_form": s.z_form.as_ref().map(|x| x.to_string()),
                "choice": s.choice.as_ref().map(|c| json!({
                    "alpha": r(&c.alpha), "m": c.m, "n": c.n, "sum_m": c.sum_m, "sum_n": c.sum_n,
                })),
                "notes": s.notes,
            })
        })
        .collect();
    let summary = walk_summary(&tr);
    let out = json!({
        "schema": "jacpoly.walk/1",
        "a": qt.a, "b": qt.b, "m": qt.m, "n": qt.n,
        "orientation": tr.orientation.to_string(),
        "swapped": tr.swapped,
        "hypothesis_holds": tr.hypothesis_holds,
        "states": states,
        "outcome": outcome_json(&tr.outcome),
        "certificate": opt(tr.certificate.as_ref(), certificate_json),
        "summary": summary,
    });
    let code = if matches!(tr.outcome, WalkOutcome::InvariantBreach(_)) { EXIT_INVARIANT } else { 0 };
    Ok(Report { json: out, summary, svg: Some(trace_svg(&tr)), code })
}

fn cmd_region(cli: &Cli) -> Result<Report, CliError> {
    let (a, b, m, n) = (need(cli.a, "a")?, need(cli.b, "b")?, need(cli.m, "m")?, need(cli.n, "n")?);
    let reg = RegionR::new(a, b, m, n).map_err(pre)?;
    let pts = lattice_points_in_r(&reg);
    let mut out = json!({
        "schema": "jacpoly.region/1",
        "a": a, "b": b, "m": m, "n": n,
        "c": pt(&reg.c),
        "slope": r(&reg.slope),
        "top": r(&reg.top()),
        "count": pts.len(),
    });
    if cli.list {
        out["points"] = json!(pts);
    }
    let mut items = vec![
        SvgItem::Frame(format!("region for (a,b,m,n) = ({a},{b},{m},{n})")),
        SvgItem::Polygon { poly: ConvexPolygon::rect(m, n), label: format!("Rect {m}×{n}"), color: "#bbbbbb".into() },
        SvgItem::Point { p: reg.c.clone(), label: "C".into() },
        SvgItem::Line { from: reg.c.clone(), to: RatPoint::int(m, n), label: String::new() },
    ];
    items.extend(pts.iter().map(|&(x, y)| SvgItem::Point { p: RatPoint::int(x, y), label: String::new() }));
    let summary = format!("{} lattice points: {:?}", pts.len(), pts);
    Ok(Report { json: out, summary, svg: Some(render_svg(&items)), code: 0 })
}

fn cmd_certify(cli: &Cli) -> Result<Report, CliError> {
    let f = read_poly(cli.f.as_deref(), "F")?;
    let (a, b) = (need(cli.a, "a")?, need(cli.b, "b")?);
    let (m, n) = corner(&f, cli.m, cli.n)?;
    let t = certify_t_membership(&f, m, n, a, b);
    let mut out = json!({
        "schema": "jacpoly.certify/1",
        "a": a, "b": b, "m": m, "n": n,
        "member": t.member(),
        "corner_and_rect": t.corner_and_rect,
        "top_is_corner": t.top_is_corner,
        "next_vanishes": t.next_vanishes,
        "inner_top": format!("{:?}", t.inner_top),
        "inner": opt(t.inner.as_ref(), poly),
        "note": t.note,
    });
    let mut summary = format!("member of T: {}", t.member());
    if let Some(gs) = cli.g.as_deref() {
        let g = read_poly(Some(gs), "G")?;
        let w = cli.w.ok_or_else(|| CliError::Precondition("-G needs -w for the degree certificate".into()))?;
        let c = degree_certificate(&f, &g, w).map_err(pre)?;
        summary += &format!("; degree certificate {}", c.value);
        out["jacobian"] = poly(&jacobian(&f, &g));
        out["certificate"] = certificate_json(&c);
    }
    Ok(Report { json: out, summary, svg: None, code: 0 })
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let cmd = cli.command.ok_or_else(|| CliError::Parse("missing command".into()))?;
    let rep = match cmd {
        Command::Polygon => cmd_polygon(cli),
        Command::Pregen => cmd_pregen(cli),
        Command::Generator => cmd_generator(cli),
        Command::Magnus => cmd_magnus(cli),
        Command::Walk => cmd_walk(cli),
        Command::Region => cmd_region(cli),
        Command::Certify => cmd_certify(cli),
    }?;
    if cli.svg.is_some() && rep.svg.is_none() {
        return Err(CliError::Precondition(format!("{} has no SVG output", cmd.name())));
    }
    Ok(rep)
}

/// Write through a sibling temp file so readers never see a partial report.
pub fn write_atomic(path: &Path, data: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut fh = fs::File::create(&tmp)?;
        fh.write_all(data)?;
        fh.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs one parsed request; the report goes to --json or stdout.
fn run_one(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let rep = match execute(cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "jacpoly: {}", e.message());
            return e.code();
        }
    };
    if let (Some(path), Some(svg)) = (&cli.svg, &rep.svg) {
        if let Err(e) = write_atomic(path, svg.as_bytes()) {
            let _ = writeln!(err, "jacpoly: writing {}: {e}", path.display());
            return EXIT_PRECONDITION;
        }
    }
    let text = render_json(&rep.json);
    match &cli.json {
        Some(path) => {
            if let Err(e) = write_atomic(path, text.as_bytes()) {
                let _ = writeln!(err, "jacpoly: writing {}: {e}", path.display());
                return EXIT_PRECONDITION;
            }
            let _ = writeln!(out, "{}", rep.summary);
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    if rep.code == EXIT_INVARIANT {
        let _ = writeln!(err, "jacpoly: internal invariant breach");
    }
    rep.code
}

fn run_batch(manifest: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(manifest) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "jacpoly: --batch {}: {e}", manifest.display());
            return EXIT_PARSE;
        }
    };
    let reqs: Vec<Vec<String>> = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "jacpoly: --batch {}: {e}", manifest.display());
            return EXIT_PARSE;
        }
    };
    let base = manifest.with_extension("");
    let results: Vec<(i32, String)> = std::thread::scope(|s| {
        let handles: Vec<_> = reqs
            .iter()
            .enumerate()
            .map(|(i, args)| {
                let base = &base;
                s.spawn(move || {
                    let mut log = Vec::new();
                    let argv = std::iter::once("jacpoly".to_string()).chain(args.iter().cloned());
                    let code = match Cli::try_parse_from(argv) {
                        Err(e) => {
                            let _ = write!(log, "{e}");
                            EXIT_PARSE
                        }
                        Ok(cli) if cli.batch.is_some() => {
                            let _ = writeln!(log, "jacpoly: nested --batch");
                            EXIT_PARSE
                        }
                        Ok(mut cli) => {
                            if cli.json.is_none() {
                                cli.json = Some(PathBuf::from(format!("{}.{i}.json", base.display())));
                            }
                            let mut sink = Vec::new();
                            let c = run_one(&cli, &mut sink, &mut log);
                            log.extend(sink);
                            c
                        }
                    };
                    (code, String::from_utf8_lossy(&log).into_owned())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("batch worker panicked")).collect()
    });
    let mut worst = 0;
    for (i, (code, log)) in results.iter().enumerate() {
        let _ = writeln!(out, "[{i}] exit {code}: {}", log.trim_end());
        worst = worst.max(*code);
    }
    worst
}

/// Parses `args` (including the program name) and runs the request.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match &cli.batch {
        Some(m) => run_batch(m, out, err),
        None => run_one(&cli, out, err),
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("jacpoly").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn region_list() {
        let (code, out, _) = go(&["region", "-a", "2", "-b", "3", "-m", "2", "-n", "4", "--list"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["points"], json!([[0, 0]]));
        assert_eq!(v["schema"], "jacpoly.region/1");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["polygon", "-F", "x+*y"]).0, EXIT_PARSE);
        assert_eq!(go(&["frobnicate"]).0, EXIT_PARSE);
        assert_eq!(go(&["region", "-a", "2", "-b", "4", "-m", "2", "-n", "4"]).0, EXIT_PRECONDITION);
        assert_eq!(go(&["pregen", "-F", "x*y"]).0, EXIT_PRECONDITION);
        assert_eq!(go(&["--help"]).0, 0);
    }

    #[test]
    fn direction_flag() {
        assert_eq!(parse_direction("3,-1").unwrap(), Direction::new(3, -1).unwrap());
        assert!(parse_direction("2,2").is_err());
        assert!(parse_direction("2").is_err());
    }
}
