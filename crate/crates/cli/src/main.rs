//! `tilekit` command line: rule checking, patch verification, the Figure-1
//! style non-locally-finite demo, and SVG rendering.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use tilekit::exactnum::{Scalar, Vector};
use tilekit::indicator::{hemisphere_identity, monte_carlo_zero, ZeroVerdict};
use tilekit::patch::{
    self, build_graph, components_reach_boundary, edge_cover_check, fig1_patch, interior_points,
    lonely_vertex_scan, Patch,
};
use tilekit::substitution::{
    check_self_similar, enumerate_pair_constellations, parse_rule, supertile, FlcVerdict,
    SubstitutionRule,
};
use tilekit::vertexstar::VertexStar;

/// Env var naming a directory to search for rule/patch files not found at
/// the given path.
const CORPUS_DIR_VAR: &str = "TILEKIT_CORPUS_DIR";

#[derive(Parser)]
#[command(name = "tilekit", version, about = "exact tiling toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a substitution rule and audit self-similarity and FLC
    CheckRule {
        rule: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Expand supertiles and run verification suites on them
    Verify {
        rule: PathBuf,
        #[arg(short = 'k', long = "order", default_value_t = 3)]
        order: u32,
        /// Comma-separated subset of lonely,graph,cover,star,pairs
        #[arg(long, default_value = "lonely,graph,cover,star,pairs")]
        checks: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10000)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build the shrinking-tiles counterexample patch and report on (0,0)
    DemoFig1 {
        #[arg(short = 'k', long = "order", default_value_t = 3)]
        order: u32,
        #[arg(long)]
        json: bool,
    },
    /// Render a patch, a rule supertile, or `fig1` to SVG
    Render {
        /// Rule file (.json), patch file, or the literal `fig1`
        input: String,
        #[arg(short = 'k', long = "order", default_value_t = 3)]
        order: u32,
        #[arg(long)]
        out: PathBuf,
        /// Overlay the vertex-edge graph
        #[arg(long)]
        graph: bool,
        /// Overlay interior-point and lonely-vertex markers
        #[arg(long)]
        markers: bool,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::CheckRule { rule, json } => cmd_check_rule(&rule, json),
        Command::Verify {
            rule,
            order,
            checks,
            seed,
            samples,
            json,
        } => cmd_verify(&rule, order, &checks, seed, samples, json),
        Command::DemoFig1 { order, json } => cmd_demo_fig1(order, json),
        Command::Render {
            input,
            order,
            out,
            graph,
            markers,
        } => cmd_render(&input, order, &out, graph, markers),
    }
}

/// Falls back to $TILEKIT_CORPUS_DIR when the path does not exist as given.
fn resolve_path(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    if let Ok(dir) = std::env::var(CORPUS_DIR_VAR) {
        let alt = Path::new(&dir).join(path);
        if alt.exists() {
            return alt;
        }
    }
    path.to_path_buf()
}

fn load_rule(path: &Path) -> Result<SubstitutionRule> {
    let resolved = resolve_path(path);
    let text = std::fs::read_to_string(&resolved)
        .with_context(|| format!("reading {}", resolved.display()))?;
    // schema or geometry problems are verdicts, not I/O failures
    parse_rule(&text).map_err(|e| anyhow::Error::msg(e.to_string()))
}

fn vecs_str(vs: &[Vector]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_check_rule(path: &Path, as_json: bool) -> Result<bool> {
    let resolved = resolve_path(path);
    let text = std::fs::read_to_string(&resolved)
        .with_context(|| format!("reading {}", resolved.display()))?;
    let mut lines = vec![
        "command: check-rule".to_string(),
        format!("rule: {}", path.display()),
    ];
    let mut obj = json!({"command": "check-rule", "rule": path.display().to_string()});
    let pass = match parse_rule(&text) {
        Err(e) => {
            lines.push(format!("parse: {e}"));
            obj["parse"] = json!(e.to_string());
            false
        }
        Ok(rule) => {
            lines.push(format!("prototiles: {}", rule.prototiles.len()));
            lines.push(format!("factor: {}", rule.factor));
            obj["prototiles"] = json!(rule.prototiles.len());
            obj["factor"] = json!(rule.factor.to_string());
            match check_self_similar(&rule) {
                Ok(()) => {
                    lines.push("self-similar: ok".to_string());
                    obj["self_similar"] = json!("ok");
                    match flc_criterion_report(&rule) {
                        Ok((flc_line, flc_json, ok)) => {
                            lines.extend(flc_line);
                            obj["flc"] = flc_json;
                            ok
                        }
                        Err(e) => {
                            lines.push(format!("flc: {e}"));
                            obj["flc"] = json!(e.to_string());
                            false
                        }
                    }
                }
                Err(e) => {
                    lines.push(format!("self-similar: {e}"));
                    obj["self_similar"] = json!(e.to_string());
                    false
                }
            }
        }
    };
    finish(lines, obj, pass, as_json)
}

fn flc_criterion_report(
    rule: &SubstitutionRule,
) -> Result<(Vec<String>, serde_json::Value, bool), tilekit::substitution::RuleError> {
    let verdict = tilekit::substitution::flc_criterion(rule)?;
    Ok(match verdict {
        FlcVerdict::Certified { basis } => {
            let mut lines = vec!["flc: certified".to_string()];
            let basis_json = basis.as_ref().map(|b| {
                lines.push(format!("lattice-basis: {}", vecs_str(b)));
                b.iter().map(|v| v.to_string()).collect::<Vec<_>>()
            });
            (lines, json!({"verdict": "certified", "basis": basis_json}), true)
        }
        FlcVerdict::Inconclusive => {
            // the criterion is sufficient only; a warning, not a failure
            (
                vec!["flc: inconclusive (warning)".to_string()],
                json!({"verdict": "inconclusive"}),
                true,
            )
        }
    })
}

fn cmd_verify(
    path: &Path,
    order: u32,
    checks: &str,
    seed: u64,
    samples: usize,
    as_json: bool,
) -> Result<bool> {
    let requested: BTreeSet<&str> = checks.split(',').map(str::trim).collect();
    for c in &requested {
        if !["lonely", "graph", "cover", "star", "pairs"].contains(c) {
            bail!("unknown check {c:?}");
        }
    }
    let rule = load_rule(path)?;
    let mut lines = vec![
        "command: verify".to_string(),
        format!("rule: {}", path.display()),
        format!("order: {order}"),
        format!("seed: {seed}"),
        format!("samples: {samples}"),
    ];
    let mut obj = json!({
        "command": "verify",
        "rule": path.display().to_string(),
        "order": order,
        "seed": seed,
        "samples": samples,
        "checks": {},
    });
    let supertiles: Vec<(String, Patch)> = (0..rule.prototiles.len())
        .map(|i| (rule.names[i].clone(), supertile(&rule, i, order)))
        .collect();
    let mut pass = true;

    if requested.contains("lonely") {
        for (name, st) in &supertiles {
            let pts = interior_points(st);
            let violations = lonely_vertex_scan(st);
            let ok = violations.is_empty();
            pass &= ok;
            lines.push(format!(
                "lonely[{name}]: {} interior-points={} violations={}",
                verdict(ok),
                pts.len(),
                violations.len()
            ));
            obj["checks"]["lonely"][name] = json!({
                "pass": ok,
                "interior_points": pts.len(),
                "violations": violations.len(),
            });
        }
    }
    if requested.contains("graph") {
        for (name, st) in &supertiles {
            let g = build_graph(st);
            let reach = components_reach_boundary(st, &g);
            pass &= reach.passed;
            lines.push(format!(
                "graph[{name}]: {} nodes={} edges={} components={} trapped={}",
                verdict(reach.passed),
                g.nodes.len(),
                g.edges.len(),
                g.component_count,
                reach.trapped_components.len()
            ));
            obj["checks"]["graph"][name] = json!({
                "pass": reach.passed,
                "nodes": g.nodes.len(),
                "edges": g.edges.len(),
                "components": g.component_count,
                "trapped": reach.trapped_components.len(),
            });
        }
    }
    if requested.contains("cover") {
        for (name, st) in &supertiles {
            let uncovered = edge_cover_check(st);
            let ok = uncovered.is_empty();
            pass &= ok;
            lines.push(format!(
                "cover[{name}]: {} uncovered={}",
                verdict(ok),
                uncovered.len()
            ));
            obj["checks"]["cover"][name] = json!({"pass": ok, "uncovered": uncovered.len()});
        }
    }
    if requested.contains("star") {
        for (name, st) in &supertiles {
            let (total, unique, ok) = star_suite(st, samples, seed);
            pass &= ok;
            lines.push(format!(
                "star[{name}]: {} stars={total} unique={unique}",
                verdict(ok)
            ));
            obj["checks"]["star"][name] =
                json!({"pass": ok, "stars": total, "unique": unique});
        }
    }
    if requested.contains("pairs") {
        let counts = enumerate_pair_constellations(&rule, order);
        let monotone = counts.windows(2).all(|w| w[0] <= w[1]);
        pass &= monotone;
        lines.push(format!(
            "pairs: {} counts={counts:?} monotone={monotone}",
            verdict(monotone)
        ));
        obj["checks"]["pairs"] = json!({"pass": monotone, "counts": counts});
    }
    finish(lines, obj, pass, as_json)
}

/// Complete interior stars must have a_count != 1 and satisfy the hemisphere
/// indicator identity for the axis splitting normals. Stars with identical
/// cone configurations share one deterministic verdict, so each distinct
/// configuration is sampled once.
fn star_suite(patch: &Patch, samples: usize, seed: u64) -> (usize, usize, bool) {
    let normals = [Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])];
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut total = 0;
    let mut ok = true;
    for p in interior_points(patch) {
        let star = match patch.build_star(&p) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if !star.complete {
            ok = false;
            continue;
        }
        total += 1;
        if star.a_count() == 1 {
            ok = false;
        }
        if !seen.insert(star_key(&star)) {
            continue;
        }
        for n in &normals {
            let combo = match hemisphere_identity(&star, n) {
                Ok(c) => c,
                Err(_) => {
                    ok = false;
                    continue;
                }
            };
            if !matches!(monte_carlo_zero(&combo, samples, seed), ZeroVerdict::Zero) {
                ok = false;
            }
        }
    }
    (total, seen.len(), ok)
}

/// Translation-invariant signature of a star: its sorted cone normal lists.
fn star_key(star: &VertexStar) -> String {
    let mut cones: Vec<String> = star
        .cones
        .iter()
        .map(|sc| {
            let mut ns: Vec<String> = sc.cone.normals().iter().map(|n| n.to_string()).collect();
            ns.sort();
            ns.join("&")
        })
        .collect();
    cones.sort();
    cones.join("|")
}

fn cmd_demo_fig1(order: u32, as_json: bool) -> Result<bool> {
    let patch = fig1_patch(order);
    let origin = Vector::zero(2);
    let vertex_count = patch.vertex_count(&origin);
    let interior = patch
        .build_star(&origin)
        .map(|s| s.complete)
        .unwrap_or(false);
    // fixed probe disc: the count of tiles meeting it grows without bound
    // in the order, which is exactly the local-finiteness failure
    let radius = Scalar::rat(1, 8);
    let r2 = radius.clone() * radius.clone();
    let meeting = patch
        .tiles()
        .iter()
        .filter(|(_, t)| (t.dist2_to_point(&origin) - r2.clone()).sign() <= 0)
        .count();
    let pass = vertex_count == 1 && !interior;
    let lines = vec![
        "command: demo-fig1".to_string(),
        format!("order: {order}"),
        format!("tiles: {}", patch.tiles().len()),
        format!("origin-vertex-count: {vertex_count}"),
        format!("origin-interior: {interior}"),
        format!("disc-radius: {radius}"),
        format!("tiles-meeting-disc: {meeting}"),
    ];
    let obj = json!({
        "command": "demo-fig1",
        "order": order,
        "tiles": patch.tiles().len(),
        "origin_vertex_count": vertex_count,
        "origin_interior": interior,
        "disc_radius": radius.to_string(),
        "tiles_meeting_disc": meeting,
    });
    finish(lines, obj, pass, as_json)
}

fn cmd_render(input: &str, order: u32, out: &Path, graph: bool, markers: bool) -> Result<bool> {
    let patch = if input == "fig1" {
        fig1_patch(order)
    } else if input.ends_with(".json") {
        let rule = load_rule(Path::new(input))?;
        supertile(&rule, 0, order)
    } else {
        let resolved = resolve_path(Path::new(input));
        let text = std::fs::read_to_string(&resolved)
            .with_context(|| format!("reading {}", resolved.display()))?;
        patch::patch_from_text(&text).map_err(|e| anyhow::Error::msg(e.to_string()))?
    };
    if patch.dim() != 2 {
        bail!("render supports dimension 2 only");
    }
    let svg = render_svg(&patch, graph, markers);
    std::fs::write(out, svg).with_context(|| format!("writing {}", out.display()))?;
    println!("command: render");
    println!("input: {input}");
    println!("polygons: {}", patch.tiles().len());
    println!("out: {}", out.display());
    Ok(true)
}

/// Coordinates are exact until this point; rounding to 6 decimals here is
/// display-only.
fn render_svg(patch: &Patch, graph: bool, markers: bool) -> String {
    let pts: Vec<Vec<f64>> = patch
        .tiles()
        .iter()
        .flat_map(|(_, t)| t.vertices())
        .map(|v| v.to_f64())
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(first) = pts.first() {
        (x0, y0, x1, y1) = (first[0], first[1], first[0], first[1]);
        for p in &pts {
            x0 = x0.min(p[0]);
            y0 = y0.min(p[1]);
            x1 = x1.max(p[0]);
            y1 = y1.max(p[1]);
        }
    }
    let margin = 0.05 * ((x1 - x0).max(y1 - y0)).max(1e-9);
    let (x0, y0, x1, y1) = (x0 - margin, y0 - margin, x1 + margin, y1 + margin);
    let stroke = (x1 - x0).max(y1 - y0) / 200.0;
    // y axis flipped so +y points up on screen
    let fy = |y: f64| -y;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
        x0,
        fy(y1),
        x1 - x0,
        y1 - y0
    ));
    for (_, tile) in patch.tiles() {
        let coords: Vec<String> = tile
            .vertices()
            .iter()
            .map(|v| {
                let p = v.to_f64();
                format!("{:.6},{:.6}", p[0], fy(p[1]))
            })
            .collect();
        s.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"#dce6f2\" stroke=\"#334\" stroke-width=\"{:.6}\"/>\n",
            coords.join(" "),
            stroke
        ));
    }
    if graph {
        let g = build_graph(patch);
        for (a, b) in &g.edges {
            let pa = g.nodes[*a].to_f64();
            let pb = g.nodes[*b].to_f64();
            s.push_str(&format!(
                "  <line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"#c33\" stroke-width=\"{:.6}\"/>\n",
                pa[0], fy(pa[1]), pb[0], fy(pb[1]), stroke / 2.0
            ));
        }
    }
    if markers {
        let lonely: BTreeSet<String> = lonely_vertex_scan(patch)
            .into_iter()
            .map(|v| v.point.to_string())
            .collect();
        for p in interior_points(patch) {
            let color = if lonely.contains(&p.to_string()) {
                "#c33"
            } else {
                "#2a2"
            };
            let q = p.to_f64();
            s.push_str(&format!(
                "  <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"{}\"/>\n",
                q[0],
                fy(q[1]),
                stroke * 2.0,
                color
            ));
        }
    }
    s.push_str("</svg>\n");
    s
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn finish(
    mut lines: Vec<String>,
    mut obj: serde_json::Value,
    pass: bool,
    as_json: bool,
) -> Result<bool> {
    lines.push(format!("result: {}", verdict(pass)));
    obj["result"] = json!(verdict(pass));
    if as_json {
        println!("{}", serde_json::to_string_pretty(&obj)?);
    } else {
        println!("{}", lines.join("\n"));
    }
    Ok(pass)
}
