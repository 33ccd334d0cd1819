//! Command-line driver. [`run_with`] never panics on malformed input; it
//! returns 0 on success, 1 on a mathematical failure (with a counterexample
//! in the output) and 2 on an input or usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::{format_index_set, format_rational, Arrangement};
use crate::cohomology::certificate::{self, morse_check, mod2_comparison, IsomorphismCheck, MorseCheck, Mod2Comparison};
use crate::cohomology::classes::{point_ring_names, restrict_to_td, rho_generators};
use crate::cohomology::ideal::{presentation_ideal, IdealPresentation};
use crate::cohomology::{check_isomorphism, graph_cohomology_dim, quotient_hilbert, Coefficients, RHO_SIGN};
use crate::error::Error;
use crate::exactla::Int;
use crate::gkmgraph::{self, build_graph, check_gkm, check_mod2_gkm, GkmGraph};

pub const TORSION_NOTE: &str = "Q/GF(2) only: integral torsion is not computed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Check simplicity, smoothness, the polytope, and the GKM conditions.
    Validate,
    /// Emit the GKM graph.
    Graph,
    /// Emit the degree-one generator classes vertex by vertex.
    Gens,
    /// Emit the circuit ideal.
    Ideal,
    /// Tabulate graph cohomology and quotient dimensions by degree.
    Hilbert,
    /// Run every check and emit the isomorphism certificate.
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "hypertoric-gkm",
    version,
    about = "Equivariant cohomology of smooth hypertoric varieties from hyperplane arrangements"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Arrangement file (JSON).
    pub file: PathBuf,
    /// Largest polynomial degree k (topological degree 2k) to compute.
    #[arg(long, default_value_t = 4)]
    pub kmax: u32,
    /// Covector for Morse indices, d + 1 comma-separated integers.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the sign of the circle component of the generators.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    pub rho_sign: Option<i64>,
}

fn parse_sign(s: &str) -> Result<i64, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err("expected 1 or -1".into()),
    }
}

/// A failure that stops a command, mapped to an exit status.
enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

struct Output {
    body: String,
    ok: bool,
    /// Short summary of the failure for standard error.
    failure: Option<String>,
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let result = execute(&config);
    let (code, body, message) = match result {
        Ok(o) => (if o.ok { 0 } else { 1 }, Some(o.body), o.failure),
        Err(Failure::Input(m)) => (2, None, Some(format!("error: {m}"))),
        Err(Failure::Math(m)) => (1, Some(format!("FAIL: {m}\n")), Some(format!("error: {m}"))),
    };
    if let Some(body) = body {
        let written = match &config.out {
            Some(path) => std::fs::write(path, &body).map_err(|e| format!("{}: {e}", path.display())),
            None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
        };
        if let Err(m) = written {
            let _ = writeln!(err, "error: cannot write output: {m}");
            return 2;
        }
    }
    if let Some(m) = message {
        let _ = writeln!(err, "{m}");
    }
    code
}

fn execute(config: &RunConfig) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(&config.file)
        .map_err(|e| Failure::Input(format!("{}: {e}", config.file.display())))?;
    let a = Arrangement::parse(&text)?;
    if config.format == Format::Dot && config.command != Command::Graph {
        return Err(Failure::Input("--format dot is only available for the graph command".into()));
    }
    let xi = match &config.xi {
        Some(s) => Some(parse_xi(s, a.d())?),
        None => None,
    };
    let validation = validate(&a);
    if config.command == Command::Validate {
        return Ok(render_validation(&a, &validation, config.format));
    }
    if !validation.all_pass() {
        let mut o = render_validation(&a, &validation, config.format);
        o.failure = Some(format!(
            "{} requires a simple, smooth arrangement with a nonempty bounded polytope",
            command_name(config.command)
        ));
        return Ok(o);
    }
    let g = build_graph(&a)?;
    if let Some(xi) = &xi {
        gkmgraph::check_admissible(&g, xi).map_err(|e| Failure::Input(e.to_string()))?;
    }
    let sign = config.rho_sign.unwrap_or(RHO_SIGN);
    match config.command {
        Command::Validate => unreachable!("handled above"),
        Command::Graph => Ok(render_graph(&g, config.format)),
        Command::Gens => render_gens(&a, &g, sign, config.format),
        Command::Ideal => Ok(render_ideal(&presentation_ideal(&a)?, config.format)),
        Command::Hilbert => render_hilbert(&a, &g, config.kmax, xi, config.format),
        Command::Report => render_report(&a, &g, config.kmax, sign, xi, &validation, config.format),
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Graph => "graph",
        Command::Gens => "gens",
        Command::Ideal => "ideal",
        Command::Hilbert => "hilbert",
        Command::Report => "report",
    }
}

fn parse_xi(s: &str, d: usize) -> Result<Vec<Int>, Failure> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<Int>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Input(format!("--xi: expected comma-separated integers, found {s:?}")))?;
    if v.len() != d + 1 {
        return Err(Failure::Input(format!(
            "--xi: expected d + 1 = {} entries, found {}",
            d + 1,
            v.len()
        )));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// validation

#[derive(Clone, Debug, Serialize)]
struct CheckLine {
    name: &'static str,
    pass: bool,
    detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
struct Validation {
    checks: Vec<CheckLine>,
}

impl Validation {
    fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn validate(a: &Arrangement) -> Validation {
    let mut checks = Vec::new();
    let mut push = |name, pass, detail: Option<String>| checks.push(CheckLine { name, pass, detail });
    let simple = a.validate_simple();
    push("simple", simple.ok, simple.witness.as_deref().map(format_index_set));
    let smooth_ok = if simple.ok {
        match a.validate_smooth() {
            Ok(o) => {
                push("smooth", o.ok, o.witness.as_deref().map(format_index_set));
                o.ok
            }
            Err(e) => {
                push("smooth", false, Some(e.to_string()));
                false
            }
        }
    } else {
        push("smooth", false, Some("skipped: arrangement is not simple".into()));
        false
    };
    let status = a.delta_status();
    push("delta nonempty", status.nonempty, None);
    let bounded = status.bounded == Some(true);
    push(
        "delta bounded",
        bounded,
        (!status.nonempty).then(|| "skipped: polytope is empty".to_string()),
    );
    if smooth_ok && status.nonempty {
        match build_graph(a) {
            Ok(g) => {
                let r = check_gkm(&g);
                push(
                    "gkm",
                    r.ok(),
                    r.failures.first().map(|f| {
                        format!("vertex {}: {} and {}", g.vertex_label(f.vertex), f.first, f.second)
                    }),
                );
                let m = check_mod2_gkm(&g);
                push("mod2 gkm", m.ok(), m.failures.first().map(|f| format!("{f:?}")));
            }
            Err(e) => push("gkm", false, Some(e.to_string())),
        }
    } else {
        let why = Some("skipped: graph needs a smooth arrangement with a nonempty polytope".to_string());
        push("gkm", false, why.clone());
        push("mod2 gkm", false, why);
    }
    Validation { checks }
}

fn validation_text(v: &Validation) -> String {
    let mut s = String::new();
    for c in &v.checks {
        s.push_str(&format!("{}: {}", c.name, if c.pass { "PASS" } else { "FAIL" }));
        if let Some(d) = &c.detail {
            s.push(' ');
            s.push_str(d);
        }
        s.push('\n');
    }
    s
}

fn arrangement_json(a: &Arrangement) -> Value {
    json!({
        "d": a.d(),
        "n": a.n(),
        "warnings": a.warnings(),
    })
}

fn render_validation(a: &Arrangement, v: &Validation, format: Format) -> Output {
    let ok = v.all_pass();
    let body = match format {
        Format::Json => pretty(&json!({
            "arrangement": arrangement_json(a),
            "checks": v.checks,
            "pass": ok,
        })),
        _ => {
            let mut s = warnings_text(a);
            s.push_str(&validation_text(v));
            s
        }
    };
    let failure = v
        .checks
        .iter()
        .find(|c| !c.pass)
        .map(|c| format!("{} check failed", c.name));
    Output { body, ok, failure }
}

fn warnings_text(a: &Arrangement) -> String {
    a.warnings().iter().map(|w| format!("warning: {w}\n")).collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn success(body: String) -> Output {
    Output {
        body,
        ok: true,
        failure: None,
    }
}

// ---------------------------------------------------------------------------
// graph, generators, ideal

fn render_graph(g: &GkmGraph, format: Format) -> Output {
    success(match format {
        Format::Dot => g.to_dot(),
        Format::Json => {
            let mut s = g.to_json();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!(
                "vertices: {}, edges: {}, rays: {}\n",
                g.vertices.len(),
                g.edges.len(),
                g.rays.len()
            );
            for v in 0..g.vertices.len() {
                s.push_str(&format!(
                    "v{} {}  rays: {}\n",
                    v + 1,
                    g.vertex_label(v),
                    g.ray_count(v)
                ));
            }
            for e in &g.edges {
                s.push_str(&format!("v{} -- v{}  {}\n", e.p + 1, e.q + 1, e.weight_at_p));
            }
            for r in &g.rays {
                s.push_str(&format!("v{} ray  {}\n", r.vertex + 1, r.weight));
            }
            s
        }
    })
}

fn render_gens(a: &Arrangement, g: &GkmGraph, sign: i64, format: Format) -> Result<Output, Failure> {
    let names = point_ring_names(g.d);
    let rhos = rho_generators(a, g, sign)?;
    let mut rows = Vec::new();
    for (i, r) in rhos.iter().enumerate() {
        let restricted = restrict_to_td(r);
        for (v, (p, q)) in r.values.iter().zip(&restricted.values).enumerate() {
            rows.push((i, v, p.display_with(&names), q.display_with(&names)));
        }
    }
    let body = match format {
        Format::Json => pretty(&json!({
            "sign": sign,
            "generators": (0..rhos.len()).map(|i| json!({
                "index": i + 1,
                "values": rows.iter().filter(|r| r.0 == i).map(|r| json!({
                    "vertex": format_index_set(&g.vertices[r.1].index_set),
                    "value": r.2,
                    "restricted": r.3,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "x": "x at every vertex",
        })),
        _ => {
            let mut s = format!("generators (sign {sign}); columns: vertex, value, value with x = 0\n");
            let width = rows.iter().map(|r| r.2.len()).max().unwrap_or(0);
            for (i, v, p, q) in &rows {
                if *v == 0 {
                    s.push_str(&format!("rho_{}\n", i + 1));
                }
                s.push_str(&format!(
                    "  {:<10} {:<width$}  {}\n",
                    format_index_set(&g.vertices[*v].index_set),
                    p,
                    q
                ));
            }
            s.push_str("x: x at every vertex\n");
            s
        }
    };
    Ok(success(body))
}

fn ideal_json(ideal: &IdealPresentation) -> Value {
    json!(ideal
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| json!({
            "circuit": g.circuit.support.iter().map(|j| j + 1).collect::<Vec<_>>(),
            "factored": g.factored(),
            "expanded": ideal.expanded(i),
        }))
        .collect::<Vec<_>>())
}

fn ideal_text(ideal: &IdealPresentation) -> String {
    let width = ideal.generators.iter().map(|g| g.factored().len()).max().unwrap_or(0);
    let ewidth = (0..ideal.generators.len()).map(|i| ideal.expanded(i).len()).max().unwrap_or(0);
    let mut s = String::new();
    for (i, g) in ideal.generators.iter().enumerate() {
        s.push_str(&format!(
            "  {:<width$}  = {:<ewidth$}  circuit {}\n",
            g.factored(),
            ideal.expanded(i),
            format_index_set(&g.circuit.support)
        ));
    }
    if ideal.generators.is_empty() {
        s.push_str("  (no circuits: the ideal is zero)\n");
    }
    s
}

fn render_ideal(ideal: &IdealPresentation, format: Format) -> Output {
    success(match format {
        Format::Json => pretty(&json!({ "generators": ideal_json(ideal) })),
        _ => format!("ideal in Z[u1..u{}, x]:\n{}", ideal.n, ideal_text(ideal)),
    })
}

// ---------------------------------------------------------------------------
// tables

fn samples(g: &GkmGraph, xi: Option<Vec<Int>>) -> Result<Vec<Vec<Int>>, Failure> {
    match xi {
        Some(x) => Ok(vec![x]),
        None => {
            let s = gkmgraph::xi_samples(g, 5);
            if s.is_empty() {
                return Err(Failure::Math("no admissible xi found".into()));
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct HilbertRow {
    k: u32,
    degree: u32,
    graph_q: usize,
    graph_gf2: usize,
    quotient_q: usize,
    morse_series: usize,
}

fn render_hilbert(
    a: &Arrangement,
    g: &GkmGraph,
    kmax: u32,
    xi: Option<Vec<Int>>,
    format: Format,
) -> Result<Output, Failure> {
    let ideal = presentation_ideal(a)?;
    let morse = morse_check(g, &samples(g, xi)?, kmax)?;
    let rows: Vec<HilbertRow> = (0..=kmax)
        .map(|k| HilbertRow {
            k,
            degree: 2 * k,
            graph_q: graph_cohomology_dim(g, k, Coefficients::Rational),
            graph_gf2: graph_cohomology_dim(g, k, Coefficients::Mod2),
            quotient_q: quotient_hilbert(&ideal, k),
            morse_series: morse.series[k as usize],
        })
        .collect();
    let ok = rows
        .iter()
        .all(|r| r.graph_q == r.quotient_q && r.graph_q == r.graph_gf2 && r.graph_q == r.morse_series);
    let body = match format {
        Format::Json => pretty(&json!({ "rows": rows, "pass": ok, "note": TORSION_NOTE })),
        _ => {
            let mut s = format!(
                "{:>3} {:>4} {:>8} {:>10} {:>11} {:>6}\n",
                "k", "2k", "graph Q", "graph F2", "quotient Q", "Morse"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:>3} {:>4} {:>8} {:>10} {:>11} {:>6}\n",
                    r.k, r.degree, r.graph_q, r.graph_gf2, r.quotient_q, r.morse_series
                ));
            }
            s.push_str(&format!("({TORSION_NOTE}; graph F2 is in halved degree k)\n"));
            s
        }
    };
    Ok(Output {
        body,
        ok,
        failure: (!ok).then(|| "dimension columns disagree".to_string()),
    })
}

// ---------------------------------------------------------------------------
// report

fn certificate_text(c: &IsomorphismCheck) -> String {
    let mut s = format!(
        "{:>3} {:>4} {:>6} {:>9} {:>6}  {}\n",
        "k", "2k", "graph", "quotient", "image", "relations"
    );
    for r in &c.certificate.degrees {
        s.push_str(&format!(
            "{:>3} {:>4} {:>6} {:>9} {:>6}  {}\n",
            r.k,
            2 * r.k,
            r.dim_graph,
            r.dim_quotient,
            r.dim_image,
            if r.relations_ok { "ok" } else { "FAIL" }
        ));
    }
    s
}

fn mod2_text(m: &Mod2Comparison) -> String {
    let mut s = format!(
        "reduced weights distinct and nonzero: {}\nreduced generators are graph classes: {}\n",
        if m.gkm_ok { "yes" } else { "NO" },
        if m.classes_ok { "yes" } else { "NO" }
    );
    s.push_str(&format!(
        "{:>3} {:>8} {:>9} {:>12} {:>9}  {}\n",
        "k", "Q (2k)", "F2 graph", "F2 quotient", "F2 image", "relations"
    ));
    for r in &m.rows {
        s.push_str(&format!(
            "{:>3} {:>8} {:>9} {:>12} {:>9}  {}\n",
            r.k,
            r.dim_rational,
            r.dim_mod2,
            r.dim_mod2_quotient,
            r.dim_mod2_image,
            if r.relations_ok { "ok" } else { "FAIL" }
        ));
    }
    s
}

fn morse_text(g: &GkmGraph, m: &MorseCheck, first: &[usize]) -> String {
    let mut s = String::new();
    for (x, ms) in m.samples.iter().zip(&m.multisets) {
        s.push_str(&format!("xi = ({})  indices {:?}\n", x.join(","), ms));
    }
    s.push_str(&format!("index multiset constant: {}\n", if m.constant { "yes" } else { "NO" }));
    for (v, i) in first.iter().enumerate() {
        s.push_str(&format!("  {:<10} index {}\n", format_index_set(&g.vertices[v].index_set), i));
    }
    s.push_str(&format!(
        "series {:?}\ngraph  {:?}\n",
        m.series, m.graph_dims
    ));
    s
}

fn render_report(
    a: &Arrangement,
    g: &GkmGraph,
    kmax: u32,
    sign: i64,
    xi: Option<Vec<Int>>,
    validation: &Validation,
    format: Format,
) -> Result<Output, Failure> {
    let ideal = presentation_ideal(a)?;
    let iso = check_isomorphism(a, g, kmax, sign)?;
    let mod2 = mod2_comparison(a, g, kmax, sign)?;
    let xs = samples(g, xi)?;
    let morse = morse_check(g, &xs, kmax)?;
    let first = gkmgraph::morse_indices(g, &xs[0])?;
    let s1 = gkmgraph::s1_weight_well_defined(a, g);
    let consistent = certificate::consistent_signs(a, g)?;
    let ok = iso.certificate.pass && mod2.pass && morse.pass && s1.ok;

    let mut counterexamples: Vec<String> = iso.counterexamples.iter().map(ToString::to_string).collect();
    if !mod2.pass {
        counterexamples.push("mod-2 comparison failed".into());
    }
    if !morse.pass {
        counterexamples.push("Morse index series disagrees with graph cohomology".into());
    }
    for (e, seen) in &s1.failures {
        let edge = &g.edges[*e];
        counterexamples.push(format!(
            "edge v{}-v{}: S^1 weight depends on the region: {:?}",
            edge.p + 1,
            edge.q + 1,
            seen.iter().map(ToString::to_string).collect::<Vec<_>>()
        ));
    }

    let body = match format {
        Format::Json => pretty(&json!({
            "arrangement": arrangement_json(a),
            "validation": validation.checks,
            "graph": {
                "vertices": g.vertices.len(),
                "edges": g.edges.len(),
                "rays": g.rays.len(),
                "s1_weight_well_defined": s1.ok,
            },
            "ideal": ideal_json(&ideal),
            "consistent_signs": consistent,
            "certificate": iso.certificate,
            "mod2": mod2,
            "morse": morse,
            "note": TORSION_NOTE,
            "counterexamples": counterexamples,
            "pass": ok,
        })),
        _ => {
            let mut s = warnings_text(a);
            s.push_str(&format!("arrangement: d = {}, n = {}\n\n", a.d(), a.n()));
            s.push_str("== validation ==\n");
            s.push_str(&validation_text(validation));
            s.push_str(&format!(
                "\n== graph ==\nvertices: {}, edges: {}, rays: {}\nS^1 weights independent of region: {}\n",
                g.vertices.len(),
                g.edges.len(),
                g.rays.len(),
                if s1.ok { "yes" } else { "NO" }
            ));
            for v in &g.vertices {
                let pt: Vec<String> = v.point.iter().map(format_rational).collect();
                s.push_str(&format!("  {:<10} ({})\n", format_index_set(&v.index_set), pt.join(",")));
            }
            s.push_str("\n== ideal ==\n");
            s.push_str(&ideal_text(&ideal));
            s.push_str(&format!(
                "\n== isomorphism certificate (sign {sign}; consistent signs {consistent:?}) ==\n"
            ));
            s.push_str(&certificate_text(&iso));
            s.push_str(&format!("({TORSION_NOTE})\n"));
            s.push_str("\n== mod 2, halved grading ==\n");
            s.push_str(&mod2_text(&mod2));
            s.push_str("\n== Morse indices ==\n");
            s.push_str(&morse_text(g, &morse, &first));
            if !counterexamples.is_empty() {
                s.push_str("\n== counterexamples ==\n");
                for c in &counterexamples {
                    s.push_str(&format!("  {c}\n"));
                }
            }
            s.push_str(&format!("\nresult: {}\n", if ok { "PASS" } else { "FAIL" }));
            s
        }
    };
    Ok(Output {
        body,
        ok,
        failure: counterexamples.first().cloned(),
    })
}
