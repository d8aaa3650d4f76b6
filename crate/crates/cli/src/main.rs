use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use blf_core::blf::{build, fiber_evolution, validate, BLFDescriptor, RegionFiber};
use blf_core::cerf::{eliminate_definite_round0, validate_diagram, FoldDiagram, FoldKind};
use blf_core::document::{emit, load, Body, Document};
use blf_core::monodromy::verify_monodromy_identity;
use blf_core::orbits::{format_orbit, orbits, phi_action};
use blf_core::report::Report;
use blf_core::surface::build_seifert_surface;
use blf_core::svg::render_document;
use blf_core::TorusKnotParams;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "blf", version, about = "Broken Lefschetz fibrations of S^4 with torus-knot fibers")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the primary output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone, Copy)]
struct Knot {
    /// First torus-knot parameter, at least 2
    #[arg(long)]
    p: u32,
    /// Second torus-knot parameter, at least 2 and coprime to p
    #[arg(long)]
    q: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fiber surface invariants.
    Surface(Knot),
    /// Monodromy matrices and their verification.
    Monodromy(Knot),
    /// Orbits of the handle permutation.
    Orbits(Knot),
    /// Round-handle descriptor with fiber evolution and validation.
    Blf {
        #[command(flatten)]
        knot: Knot,
        /// Twist count; 0 is the spun knot.
        #[arg(long, default_value_t = 0)]
        twist: u32,
    },
    /// Fold-diagram rewriting.
    Cerf {
        #[command(subcommand)]
        action: CerfAction,
    },
    /// Draw a descriptor or fold-diagram document as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CerfAction {
    /// Remove the definite fold of a round 0-handle.
    Eliminate {
        /// Winding number of the definite round 0-handle
        #[arg(long)]
        winding: u32,
    },
}

/// Bad input (including unreadable or unwritable files) exits 2; a failed
/// validation exits 1 through [`Output::ok`].
enum Failure {
    BadInput(String),
}

struct Output {
    text: String,
    ok: bool,
}

fn params(k: Knot, twist: u32) -> Result<TorusKnotParams, Failure> {
    TorusKnotParams::twisted(k.p, k.q, twist).map_err(|e| Failure::BadInput(e.to_string()))
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn reports_table(out: &mut String, reports: &[Report]) {
    for r in reports {
        write!(out, "{r}").unwrap();
    }
}

fn surface(k: Knot, format: Format) -> Result<Output, Failure> {
    let params = params(k, 0)?;
    let s = build_seifert_surface(params).map_err(|e| Failure::BadInput(e.to_string()))?;
    let basis = s.cycle_basis();
    let gram_det = s.gram_matrix(&basis).determinant();
    let boundary = s.boundary_components().count;
    let rows = [
        ("0-handles", s.vertices().len().to_string()),
        ("1-handles", s.edges().len().to_string()),
        ("euler characteristic", s.euler_characteristic().to_string()),
        ("boundary components", boundary.to_string()),
        ("genus", s.genus().to_string()),
        ("first betti number", basis.rank().to_string()),
        ("intersection form det", gram_det.to_string()),
    ];
    let ok = boundary == 1 && basis.rank() == params.betti_one();
    let text = match format {
        Format::Json => to_json(&json!({
            "params": params,
            "vertices": s.vertices().len(),
            "edges": s.edges().len(),
            "euler_characteristic": s.euler_characteristic(),
            "boundary_components": boundary,
            "genus": s.genus(),
            "betti_one": basis.rank(),
            "basis_tag": basis.tag,
            "gram_determinant": gram_det.to_string(),
        })),
        Format::Table => {
            let mut t = format!("fiber surface of T({},{})\n", params.p, params.q);
            for (k, v) in rows {
                writeln!(t, "  {k:<24}{v}").unwrap();
            }
            t
        }
    };
    Ok(Output { text, ok })
}

fn monodromy(k: Knot, format: Format) -> Result<Output, Failure> {
    let r = verify_monodromy_identity(params(k, 0)?).map_err(|e| Failure::BadInput(e.to_string()))?;
    let text = match format {
        Format::Json => to_json(&r),
        Format::Table => {
            let mut t = String::new();
            writeln!(t, "basis: {}", r.monodromy.basis_tag).unwrap();
            writeln!(t, "row order: {:?}, chirality: {:?}", r.row_order, r.chirality).unwrap();
            writeln!(t, "twist product h_*:\n{}", r.monodromy.matrix).unwrap();
            writeln!(t, "permutation action (HV)_*:\n{}", r.hv.matrix).unwrap();
            writeln!(t, "characteristic polynomial: {}", r.characteristic_polynomial).unwrap();
            writeln!(t, "alexander polynomial:      {}", r.alexander_polynomial).unwrap();
            let order = r.hv_order.map_or("> pq".to_string(), |o| o.to_string());
            writeln!(t, "order of (HV)_*: {order}").unwrap();
            writeln!(t, "boundary rotation: {}", r.boundary_rotation).unwrap();
            reports_table(&mut t, std::slice::from_ref(&r.report));
            t
        }
    };
    Ok(Output { text, ok: r.passed() })
}

fn orbit_cmd(k: Knot, format: Format) -> Result<Output, Failure> {
    let params = params(k, 0)?;
    let action = phi_action(params).map_err(|e| Failure::BadInput(e.to_string()))?;
    let os = orbits(&action);
    let text = match format {
        Format::Json => {
            let list: Vec<_> = os
                .iter()
                .map(|o| json!({ "orbit": o, "display": format_orbit(params, o) }))
                .collect();
            to_json(&json!({ "params": params, "orbits": list }))
        }
        Format::Table => {
            let mut t = format!("{:<12}{:<7}{:<8}orbit\n", "class", "index", "length");
            for o in &os {
                let class = format!("{:?}", o.class).to_lowercase();
                writeln!(t, "{class:<12}{:<7}{:<8}{}", o.handle_index, o.length, format_orbit(params, o)).unwrap();
            }
            t
        }
    };
    Ok(Output { text, ok: true })
}

fn descriptor_table(d: &BLFDescriptor, reports: &[Report]) -> String {
    let mut t = format!("{}\n", d.params);
    writeln!(t, "{:<6}{:<7}{:<9}fiber outside", "round", "index", "winding").unwrap();
    let mut at = 0usize;
    for r in &d.rounds {
        at += r.winding as usize;
        let fiber = match d.regions.get(at) {
            Some(RegionFiber::Known(s)) => s.to_string(),
            _ => "unspecified".to_string(),
        };
        writeln!(t, "{:<6}{:<7}{:<9}{}", r.label.to_string(), r.index, r.winding, fiber).unwrap();
    }
    writeln!(t, "turns: {}, regions: {}", d.total_turns(), d.regions.len()).unwrap();
    writeln!(t, "binding: {}", d.binding.description).unwrap();
    if let Ok(ev) = fiber_evolution(d) {
        let chis: Vec<String> = ev.iter().map(|s| s.euler_characteristic().to_string()).collect();
        writeln!(t, "fiber χ by region: {}", chis.join(" ")).unwrap();
    }
    reports_table(&mut t, reports);
    t
}

fn blf(k: Knot, twist: u32, format: Format, echo: &str) -> Result<Output, Failure> {
    let d = build(params(k, twist)?).map_err(|e| Failure::BadInput(e.to_string()))?;
    let doc = Document::descriptor(d, echo);
    let ok = doc.reports().iter().all(Report::passed);
    let text = match (&doc.body, format) {
        (_, Format::Json) => emit(&doc),
        (Body::Descriptor { descriptor, reports }, Format::Table) => descriptor_table(descriptor, reports),
        _ => unreachable!(),
    };
    Ok(Output { text, ok })
}

fn diagram_table(d: &FoldDiagram) -> String {
    let mut t = String::new();
    for (i, c) in d.circles.iter().enumerate() {
        writeln!(t, "  region {i}: {}", d.regions[i]).unwrap();
        let kind = match c.kind {
            FoldKind::Definite => "definite",
            FoldKind::Indefinite => "indefinite",
        };
        writeln!(t, "  circle {i}: {kind} winding {} cusps {} swallowtails {}", c.winding, c.cusps, c.swallowtails).unwrap();
    }
    if let Some(last) = d.regions.last() {
        writeln!(t, "  region {}: {last}", d.circles.len()).unwrap();
    }
    t
}

fn cerf(action: CerfAction, format: Format, echo: &str) -> Result<Output, Failure> {
    let CerfAction::Eliminate { winding } = action;
    let e = eliminate_definite_round0(winding).map_err(|e| Failure::BadInput(e.to_string()))?;
    let mut t = String::new();
    if format == Format::Table {
        writeln!(t, "input:\n{}", diagram_table(&e.input)).unwrap();
        writeln!(t, "script ({} moves):", e.script.len()).unwrap();
        for (i, mv) in e.script.iter().enumerate() {
            let marker = if i == e.gay_start { "  <- winding-1 sequence" } else { "" };
            writeln!(t, "  {i:>3}. {mv}{marker}").unwrap();
        }
        writeln!(t, "\noutput:\n{}", diagram_table(&e.output)).unwrap();
    }
    let doc = Document::fold_diagram(e.output, e.script, echo);
    let ok = doc.reports().iter().all(Report::passed);
    if format == Format::Json {
        t = emit(&doc);
    } else {
        reports_table(&mut t, doc.reports());
    }
    Ok(Output { text: t, ok })
}

fn render(input: &PathBuf) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::BadInput(format!("cannot read {}: {e}", input.display())))?;
    let doc = load(&text).map_err(|e| Failure::BadInput(format!("{}: {e}", input.display())))?;
    // stored reports are not trusted; a tampered document still renders
    let report = match &doc.body {
        Body::Descriptor { descriptor, .. } => validate(descriptor),
        Body::FoldDiagram { diagram, .. } => validate_diagram(diagram),
    };
    let consistent = report.checks.iter().filter(|c| c.id != "blf-ready").all(|c| c.passed());
    if !consistent {
        eprint!("{report}");
    }
    Ok(Output {
        text: render_document(&doc),
        ok: consistent,
    })
}

fn run(args: Vec<OsString>) -> Result<Output, Failure> {
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Err(Failure::BadInput(e.render().to_string())),
        Err(e) => {
            // --help and --version
            return Ok(Output {
                text: e.render().to_string(),
                ok: true,
            });
        }
    };
    let out = match cli.command {
        Command::Surface(k) => surface(k, cli.format),
        Command::Monodromy(k) => monodromy(k, cli.format),
        Command::Orbits(k) => orbit_cmd(k, cli.format),
        Command::Blf { knot, twist } => blf(knot, twist, cli.format, &echo),
        Command::Cerf { action } => cerf(action, cli.format, &echo),
        Command::Render { input } => render(&input),
    }?;
    if let Some(path) = &cli.out {
        std::fs::write(path, &out.text).map_err(|e| Failure::BadInput(format!("cannot write {}: {e}", path.display())))?;
        return Ok(Output {
            text: String::new(),
            ok: out.ok,
        });
    }
    Ok(out)
}

fn main() -> ExitCode {
    match run(std::env::args_os().collect()) {
        Ok(out) => {
            print!("{}", out.text);
            let _ = std::io::stdout().flush();
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("blf: validation failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::BadInput(msg)) => {
            eprintln!("blf: {}", msg.trim_end());
            ExitCode::from(2)
        }
    }
}
