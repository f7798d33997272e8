//! Command-line front end: reads JSON descriptions of configurations,
//! triangulations, LVMB data and polytopes, runs the analyses, and emits
//! text, JSON or SVG reports. Exit status 0 = success, 2 = validation
//! failure (with the certificate embedded in the report), 1 = input error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use galefan::config::{
    gale_dual, gale_dual_inverse, leaf_type, rationality_invariants, VectorConfiguration,
};
use galefan::error::Error;
use galefan::fan::{betti_numbers, fvector, hvector, validate_fan, FanStatus, Triangulation};
use galefan::json as schema;
use galefan::lvmb::{complements, complements_inv, manifold_report, Kaehler, LVMBDatum};
use galefan::polytope::{delzant_check, polytopality_report, validate_presentation};
use galefan::scalar::Scalar;
use galefan::svg;

#[derive(Parser)]
#[command(name = "galefan", version, about = "Exact checks for fans, Gale duality and polytope presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized covering probe.
    #[arg(long, global = true, default_value_t = galefan::DEFAULT_SEED)]
    seed: u64,

    /// Backtracking budget (depth) for the shelling search.
    #[arg(long, global = true, default_value_t = 12)]
    shelling_cap: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Skip the simplicity/classification pass on polytope input.
    #[arg(long, global = true)]
    assume_simple: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Full manifold report: dimensions, rationality, leaf type, Betti.
    Analyze { input: PathBuf },
    /// Gale dual: vectors -> points, or points -> vectors.
    Gale { input: PathBuf },
    /// Validate that the triangulated configuration is a complete
    /// simplicial fan; reports f- and h-vectors.
    CheckFan { input: PathBuf },
    /// Run the three independent polytopality oracles.
    CheckPolytopal { input: PathBuf },
    /// Betti numbers of the leaf space with a shelling certificate.
    Betti { input: PathBuf },
    /// Variant Delzant condition of a polytope presentation.
    Delzant { input: PathBuf },
    /// Leaf topology (S^1)^(a-1) x R^(2m+1-a) of the foliation.
    LeafType { input: PathBuf },
    /// SVG picture of a planar configuration, fan or polytope.
    Render { input: PathBuf },
}

fn load(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), e)))
}

/// Configuration plus triangulation from one flat document.
fn fan_input(doc: &Value) -> Result<(VectorConfiguration, Triangulation), Error> {
    let v = schema::configuration_from_json(doc)?;
    let t = schema::triangulation_from_json(doc, v.len(), v.dim())?;
    Ok((v, t))
}

/// The LVMB datum Gale-dual to a triangulated configuration; the
/// configuration is balanced and oddified first, the appended ghost
/// indices joining every complement basis.
fn dual_datum(v: &VectorConfiguration, t: &Triangulation) -> Result<LVMBDatum, Error> {
    let vb = v.balance_and_oddify();
    let sets: Vec<Vec<usize>> = t
        .simplices()
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    let tb = Triangulation::from_slices(vb.len(), v.dim(), &sets)?;
    let points = gale_dual(&vb)?;
    LVMBDatum::new(points, complements(&tb)?)
}

fn scalar_text(s: &Scalar) -> String {
    format!("{} (approx {:.11e})", s, s.approx_f64())
}

fn seq(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

struct Report {
    text: String,
    json: Value,
    exit: u8,
}

fn cmd_check_fan(cli: &Cli, doc: &Value) -> Result<Report, Error> {
    let (v, t) = fan_input(doc)?;
    let cert = validate_fan(&v, &t, cli.seed)?;
    let mut text = String::new();
    let mut j = serde_json::Map::new();
    j.insert("certificate".into(), schema::fan_certificate_to_json(&cert));
    let exit = match &cert.status {
        FanStatus::CompleteSimplicialFan => {
            let f = fvector(&t);
            let h = hvector(&t);
            let _ = writeln!(text, "status: CompleteSimplicialFan");
            let _ = writeln!(text, "f = {}", seq(&f));
            let _ = writeln!(text, "h = {}", seq(&h));
            j.insert("f".into(), json!(f));
            j.insert("h".into(), json!(h));
            0
        }
        FanStatus::Failure(fail) => {
            let _ = writeln!(text, "status: Failure");
            let _ = writeln!(text, "failure: {:?}", fail);
            2
        }
    };
    Ok(Report {
        text,
        json: Value::Object(j),
        exit,
    })
}

fn cmd_analyze(cli: &Cli, doc: &Value) -> Result<Report, Error> {
    // Either a datum {"m","points","bases"} or a triangulated
    // configuration; both sides reach the same pair through Gale duality.
    let (datum, fan) = if doc.get("points").is_some() {
        let datum = schema::lvmb_from_json(doc)?;
        let fan = if datum.points.len() == 2 * datum.points.m() + 1 {
            None
        } else {
            let v = gale_dual_inverse(&datum.points)?;
            let t = complements_inv(&datum.chamber)?;
            Some((v, t))
        };
        (datum, fan)
    } else {
        let (v, t) = fan_input(doc)?;
        let cert = validate_fan(&v, &t, cli.seed)?;
        if !cert.is_valid() {
            return Ok(Report {
                text: format!("status: Failure\nfailure: {:?}\n", cert.status),
                json: json!({ "certificate": schema::fan_certificate_to_json(&cert) }),
                exit: 2,
            });
        }
        (dual_datum(&v, &t)?, Some((v, t)))
    };

    let report = manifold_report(&datum)?;
    let mut text = String::new();
    let _ = writeln!(text, "n = {}, m = {}", report.n, report.m);
    let _ = writeln!(text, "complex_dim {}", report.complex_dim);
    let _ = writeln!(
        text,
        "kaehler: {}",
        match report.kaehler {
            Kaehler::No => "no (n > 2m+1)",
            Kaehler::TorusCase => "compact complex torus (n = 2m+1)",
        }
    );
    if let Some((a, b)) = report.rationality {
        let rational = report.leaf_type.map(|lt| lt.all_leaves_closed) == Some(true);
        let _ = writeln!(
            text,
            "rationality: a = {}, b = {} ({})",
            a,
            b,
            if rational { "rational" } else { "not rational" }
        );
    }
    if let Some(lt) = report.leaf_type {
        let _ = writeln!(
            text,
            "generic leaf: (S^1)^{} x R^{}{}",
            lt.torus_rank,
            lt.euclidean_rank,
            if lt.all_leaves_closed {
                " — closed torus leaves"
            } else {
                " — non-closed leaves"
            }
        );
    }
    let mut j = serde_json::Map::new();
    j.insert("manifold".into(), schema::manifold_report_to_json(&report));

    if let Some((v, t)) = &fan {
        let cert = validate_fan(v, t, cli.seed)?;
        if cert.is_valid() {
            let betti = betti_numbers(t, &cert, cli.shelling_cap)?;
            let _ = writeln!(text, "Betti {}", seq(&betti.betti));
            j.insert("betti".into(), schema::betti_to_json(&betti));
        }
    }
    Ok(Report {
        text,
        json: Value::Object(j),
        exit: 0,
    })
}

fn cmd_gale(doc: &Value) -> Result<Report, Error> {
    if doc.get("vectors").is_some() {
        let v = schema::configuration_from_json(doc)?;
        let vb = v.balance_and_oddify();
        let points = gale_dual(&vb)?;
        let j = schema::points_to_json(&points);
        let mut text = String::new();
        let _ = writeln!(
            text,
            "gale dual: {} points in R^{} (m = {})",
            points.len(),
            2 * points.m(),
            points.m()
        );
        for p in points.points() {
            let parts: Vec<String> = p.iter().map(scalar_text).collect();
            let _ = writeln!(text, "  ({})", parts.join(", "));
        }
        Ok(Report { text, json: j, exit: 0 })
    } else if doc.get("points").is_some() {
        let points = schema::points_from_json(doc)?;
        let v = gale_dual_inverse(&points)?;
        let j = schema::configuration_to_json(&v);
        let mut text = String::new();
        let _ = writeln!(text, "gale dual: {} vectors in R^{}", v.len(), v.dim());
        for w in v.vectors() {
            let parts: Vec<String> = w.iter().map(scalar_text).collect();
            let _ = writeln!(text, "  ({})", parts.join(", "));
        }
        Ok(Report { text, json: j, exit: 0 })
    } else {
        Err(Error::InvalidInput(
            "gale needs \"vectors\" or \"points\"".into(),
        ))
    }
}

fn cmd_check_polytopal(cli: &Cli, doc: &Value) -> Result<Report, Error> {
    let (v, t) = fan_input(doc)?;
    let cert = validate_fan(&v, &t, cli.seed)?;
    if !cert.is_valid() {
        return Ok(Report {
            text: format!("status: Failure\nfailure: {:?}\n", cert.status),
            json: json!({ "certificate": schema::fan_certificate_to_json(&cert) }),
            exit: 2,
        });
    }
    let report = polytopality_report(&v, &t, &cert)?;
    let mut text = String::new();
    let _ = writeln!(text, "polytopal: {}", report.polytopal);
    let _ = writeln!(text, "transversely kaehler: {}", report.transversely_kaehler);
    let _ = writeln!(
        text,
        "class: {}",
        match report.class {
            galefan::polytope::ManifoldClass::Lvm => "LVM",
            galefan::polytope::ManifoldClass::LvmbNotLvm => "LVMB, not LVM",
        }
    );
    if let Some(h) = &report.heights {
        let parts: Vec<String> = h.iter().map(scalar_text).collect();
        let _ = writeln!(text, "heights: ({})", parts.join(", "));
    }
    if let Some(nu) = &report.nu {
        let parts: Vec<String> = nu.iter().map(scalar_text).collect();
        let _ = writeln!(text, "nu: ({})", parts.join(", "));
    }
    Ok(Report {
        text,
        json: schema::polytopality_to_json(&report),
        exit: 0,
    })
}

fn cmd_betti(cli: &Cli, doc: &Value) -> Result<Report, Error> {
    let (v, t) = fan_input(doc)?;
    let cert = validate_fan(&v, &t, cli.seed)?;
    if !cert.is_valid() {
        return Ok(Report {
            text: format!("status: Failure\nfailure: {:?}\n", cert.status),
            json: json!({ "certificate": schema::fan_certificate_to_json(&cert) }),
            exit: 2,
        });
    }
    let betti = betti_numbers(&t, &cert, cli.shelling_cap)?;
    let text = format!(
        "Betti {}\nh-vector validity: {:?}\n",
        seq(&betti.betti),
        betti.h_vector_valid
    );
    Ok(Report {
        text,
        json: schema::betti_to_json(&betti),
        exit: 0,
    })
}

fn cmd_delzant(cli: &Cli, doc: &Value) -> Result<Report, Error> {
    let p = schema::polytope_from_json(doc)?;
    let lattice = p
        .quasilattice()
        .ok_or_else(|| Error::InvalidInput("delzant needs a quasilattice".into()))?
        .clone();
    let mut j = serde_json::Map::new();
    let mut text = String::new();
    if !cli.assume_simple {
        let pres = validate_presentation(&p)?;
        let _ = writeln!(
            text,
            "presentation: {} vertices, clean = {}",
            pres.vertices.len(),
            pres.is_clean(p.facet_count())
        );
        j.insert(
            "presentation".into(),
            schema::presentation_report_to_json(&pres, p.facet_count()),
        );
    }
    let report = delzant_check(&p, &lattice)?;
    let _ = writeln!(text, "simple: {}", report.simple);
    let _ = writeln!(text, "rational: {}", report.rational);
    let _ = writeln!(text, "delzant: {}", report.delzant);
    if report.lerman_tolman_valid {
        let labels: Vec<String> = report.labels.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(text, "labels: ({})", labels.join(","));
    }
    j.insert("delzant".into(), schema::delzant_to_json(&report));
    Ok(Report {
        text,
        json: Value::Object(j),
        exit: 0,
    })
}

fn cmd_leaf_type(doc: &Value) -> Result<Report, Error> {
    let v = schema::configuration_from_json(doc)?;
    let vb = v.balance_and_oddify();
    let lt = leaf_type(&vb)?;
    let (a, b) = rationality_invariants(&vb)?;
    let text = format!(
        "generic leaf: (S^1)^{} x R^{}\nall leaves closed: {}\nrationality: a = {}, b = {}\n",
        lt.torus_rank, lt.euclidean_rank, lt.all_leaves_closed, a, b
    );
    let j = json!({
        "leaf_type": schema::leaf_type_to_json(&lt),
        "rationality": { "a": a, "b": b },
    });
    Ok(Report { text, json: j, exit: 0 })
}

fn cmd_render(doc: &Value) -> Result<Report, Error> {
    let picture = if doc.get("normals").is_some() {
        let p = schema::polytope_from_json(doc)?;
        svg::render_polytope(&p)?
    } else {
        let v = schema::configuration_from_json(doc)?;
        let t = if doc.get("simplices").is_some() {
            Some(schema::triangulation_from_json(doc, v.len(), v.dim())?)
        } else {
            None
        };
        svg::render_fan(&v, t.as_ref())?
    };
    Ok(Report {
        text: picture.clone(),
        json: Value::String(picture),
        exit: 0,
    })
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Analyze { input } => cmd_analyze(cli, &load(input)?),
        Command::Gale { input } => cmd_gale(&load(input)?),
        Command::CheckFan { input } => cmd_check_fan(cli, &load(input)?),
        Command::CheckPolytopal { input } => cmd_check_polytopal(cli, &load(input)?),
        Command::Betti { input } => cmd_betti(cli, &load(input)?),
        Command::Delzant { input } => cmd_delzant(cli, &load(input)?),
        Command::LeafType { input } => cmd_leaf_type(&load(input)?),
        Command::Render { input } => cmd_render(&load(input)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let payload = match cli.format {
                Format::Text | Format::Svg if matches!(cli.command, Command::Render { .. }) => {
                    report.text
                }
                Format::Svg => {
                    eprintln!("error: --format svg only applies to render");
                    return ExitCode::from(1);
                }
                Format::Text => report.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).unwrap();
                    s.push('\n');
                    s
                }
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, payload) {
                        eprintln!("error: {}: {}", path.display(), e);
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", payload),
            }
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
