mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bisector::census::{self, CensusMode};
use bisector::json::{self, AnalysisDocument, AnalysisInput};
use bisector::standard::{affinely_equivalent, equivalence_witness, standardize};
use bisector::{Equivalence, Error, Field, StandardFormField};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "bisector",
    version,
    about = "Exact computations with bisector fields of quadrilaterals"
)]
struct Cli {
    /// rational, prime:P or real. Overrides the document's field header.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a quadrilateral or standard-form triple.
    Analyze { input: String },
    /// Affine map to standard position and the resulting triple.
    Standardize { input: String },
    /// Class, pencil count and well-centeredness.
    Classify { input: String },
    /// Decide affine equivalence of two triples.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Boundary curve.
    Boundary { input: String },
    /// Enumerate standard-form triples over GF(p).
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "well-centered-only")]
        mode: String,
        /// Per-triple CSV output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Witness pairs to validate by set transport.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Soft bound on p; never above the hard cap.
        #[arg(long, default_value_t = census::DEFAULT_BOUND)]
        bound: u64,
        /// Report wall time on stderr.
        #[arg(long)]
        timing: bool,
    },
    /// Draw the field as SVG.
    Render {
        input: String,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, default_value_t = 24)]
        samples: usize,
        /// x0,y0,x1,y1
        #[arg(long, allow_hyphen_values = true, default_value = "-3,-3,3,3")]
        window: String,
    },
}

/// Failure with its process exit code.
struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn new(code: u8, msg: impl Into<String>) -> Fail {
        Fail {
            code,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::Parse(_) | Error::ZeroCoefficient | Error::FieldMismatch => 2,
            Error::InvalidQuadrilateral(_)
            | Error::DegenerateLine
            | Error::IdenticalLines
            | Error::VertexAtInfinity
            | Error::NoFiniteDiagonalPoint
            | Error::NoNonParallelPair => 3,
            Error::InvalidPrime(_) | Error::FieldTooLarge { .. } => 5,
            _ => 1,
        };
        Fail::new(code, e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Fail>;

enum Input {
    Doc(Value),
    Triple([String; 3]),
}

/// Inline JSON, a path to a JSON file, "-" for stdin, or "h,k,mu".
fn load(arg: &str) -> CliResult<Input> {
    let parse = |s: &str| {
        serde_json::from_str(s)
            .map(Input::Doc)
            .map_err(|e| Fail::new(2, format!("invalid JSON: {e}")))
    };
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return parse(trimmed);
    }
    if arg == "-" {
        let s =
            std::io::read_to_string(std::io::stdin()).map_err(|e| Fail::new(2, e.to_string()))?;
        return parse(&s);
    }
    if Path::new(arg).exists() {
        let s = fs::read_to_string(arg).map_err(|e| Fail::new(2, format!("{arg}: {e}")))?;
        return parse(&s);
    }
    let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [h, k, mu] => Ok(Input::Triple([
            h.to_string(),
            k.to_string(),
            mu.to_string(),
        ])),
        _ => Err(Fail::new(
            2,
            format!("{arg:?} is not JSON, a file, or a triple h,k,mu"),
        )),
    }
}

/// Explicit flag, then document header, then ℚ.
fn resolve_field(flag: Option<&str>, input: &Input) -> CliResult<Field> {
    let schema = |e: Error| Fail::new(2, format!("field descriptor: {e}"));
    if let Some(s) = flag {
        return s.parse().map_err(schema);
    }
    match input {
        Input::Doc(v) => Ok(json::document_field(v)
            .map_err(schema)?
            .unwrap_or(Field::Rational)),
        Input::Triple(_) => Ok(Field::Rational),
    }
}

#[allow(clippy::large_enum_variant)]
enum Subject {
    Quad(bisector::Quadrilateral),
    Triple(StandardFormField),
}

fn subject(flag: Option<&str>, arg: &str) -> CliResult<Subject> {
    let input = load(arg)?;
    let field = resolve_field(flag, &input)?;
    match &input {
        Input::Triple([h, k, mu]) => {
            Ok(Subject::Triple(StandardFormField::parse(field, h, k, mu)?))
        }
        Input::Doc(v) => {
            let v = v.get("input").unwrap_or(v);
            if let Some(t) = v.get("triple") {
                Ok(Subject::Triple(json::triple_from_json(field, t)?))
            } else if let Some(q) = v.get("quadrilateral") {
                Ok(Subject::Quad(json::quad_from_json(field, q)?))
            } else if v.get("mu").is_some() {
                Ok(Subject::Triple(json::triple_from_json(field, v)?))
            } else if v.get("A").is_some() {
                Ok(Subject::Quad(json::quad_from_json(field, v)?))
            } else {
                Err(Fail::new(
                    2,
                    "input is neither a quadrilateral nor a triple",
                ))
            }
        }
    }
}

fn analysis(s: &Subject) -> CliResult<AnalysisDocument> {
    Ok(match s {
        Subject::Quad(q) => AnalysisDocument::analyze_quadrilateral(q)?,
        Subject::Triple(f) => AnalysisDocument::analyze_triple(f)?,
    })
}

fn with_header(field: Field, body: Value) -> Value {
    let mut m = json::header(field);
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

struct Output<'a> {
    out: Option<&'a Path>,
    json: bool,
}

impl Output<'_> {
    fn emit(&self, doc: &Value, text: impl FnOnce() -> String) -> CliResult<()> {
        let rendered = serde_json::to_string_pretty(doc).expect("serializable") + "\n";
        match self.out {
            Some(p) => {
                fs::write(p, rendered).map_err(|e| Fail::new(1, format!("{}: {e}", p.display())))
            }
            None if self.json => {
                print!("{rendered}");
                Ok(())
            }
            None => {
                print!("{}", text());
                Ok(())
            }
        }
    }
}

fn analysis_text(d: &AnalysisDocument) -> String {
    let f = &d.standard_form;
    let mut s = String::new();
    s += &format!("field: {}\n", d.field);
    if let AnalysisInput::Quadrilateral(q) = &d.input {
        let sides = q.sides().map(|l| l.to_string());
        s += &format!(
            "sides: A {} | B {} | A1 {} | B1 {}\n",
            sides[0], sides[1], sides[2], sides[3]
        );
    }
    s += &format!("class: {}\n", f.class());
    s += &format!(
        "phi: {}\npsi: {}\n",
        d.polynomials.phi(),
        d.polynomials.psi()
    );
    s += &format!(
        "standard form: h = {}, k = {}, mu = {}\n",
        f.h(),
        f.k(),
        f.mu()
    );
    s += &format!("well centered: {}\n", d.well_centered);
    s += &format!("parallel pencils: {}\n", d.pencils);
    s += &format!("boundary: {}\n", d.boundary);
    match &d.singular_points {
        Some(pts) if !pts.is_empty() => {
            let list: Vec<String> = pts.iter().map(|(x, y)| format!("({x}, {y})")).collect();
            s += &format!("singular points: {}\n", list.join(", "));
        }
        Some(_) => s += "singular points: none\n",
        None => s += "singular points: not computed\n",
    }
    s
}

fn run(cli: Cli) -> CliResult<()> {
    let field_flag = cli.field.as_deref();
    let out = Output {
        out: cli.out.as_deref(),
        json: cli.json,
    };
    match cli.command {
        Command::Analyze { input } => {
            let d = analysis(&subject(field_flag, &input)?)?;
            out.emit(&d.to_json(), || analysis_text(&d))
        }
        Command::Standardize { input } => {
            let (m, f) = match subject(field_flag, &input)? {
                Subject::Quad(q) => standardize(&q)?,
                Subject::Triple(f) => (bisector::AffineMap::identity(f.field()), f),
            };
            let doc = with_header(
                f.field(),
                json!({ "map": json::affine_to_json(&m), "standard_form": json::triple_to_json(&f) }),
            );
            out.emit(&doc, || {
                let [[a, b], [c, d]] = m.matrix();
                let [e, g] = m.translation_part();
                format!(
                    "map: (x, y) -> ({a}x + {b}y + {e}, {c}x + {d}y + {g})\nstandard form: h = {}, k = {}, mu = {} ({})\n",
                    f.h(),
                    f.k(),
                    f.mu(),
                    f.class()
                )
            })
        }
        Command::Classify { input } => {
            let s = subject(field_flag, &input)?;
            let (fp, f) = match &s {
                Subject::Quad(q) => (
                    bisector::FieldPolynomials::from_quadrilateral(q)?,
                    standardize(q)?.1,
                ),
                Subject::Triple(f) => (f.polynomials(), f.clone()),
            };
            let class = fp.class();
            let pencils = fp.count_parallel_pencils();
            let wc = f.well_centered();
            let doc = with_header(
                f.field(),
                json!({ "class": class.name(), "degree": fp.f_degree(), "parallel_pencils": pencils, "well_centered": wc }),
            );
            out.emit(&doc, || {
                format!(
                    "{class} (degree {}), {pencils} parallel pencil(s), well centered: {wc}\n",
                    fp.f_degree()
                )
            })
        }
        Command::Equiv { first, second } => {
            let triple = |arg: &str| -> CliResult<StandardFormField> {
                match subject(field_flag, arg)? {
                    Subject::Triple(f) => Ok(f),
                    Subject::Quad(q) => Ok(standardize(&q)?.1),
                }
            };
            let (f1, f2) = (triple(&first)?, triple(&second)?);
            if f1.field() != f2.field() {
                return Err(Fail::new(2, "triples live in different fields"));
            }
            let verdict = affinely_equivalent(&f1, &f2);
            let witness = match verdict {
                Equivalence::Equivalent => equivalence_witness(&f1, &f2).ok(),
                _ => None,
            };
            let doc = with_header(
                f1.field(),
                json!({
                    "first": json::triple_to_json(&f1),
                    "second": json::triple_to_json(&f2),
                    "verdict": verdict.name(),
                    "witness": witness.as_ref().map_or(Value::Null, json::affine_to_json),
                }),
            );
            out.emit(&doc, || {
                let mut s = format!("{}\n", verdict.name());
                if let Some(m) = &witness {
                    let [[a, b], [c, d]] = m.matrix();
                    let [e, g] = m.translation_part();
                    s += &format!("witness: (x, y) -> ({a}x + {b}y + {e}, {c}x + {d}y + {g})\n");
                }
                s
            })
        }
        Command::Boundary { input } => {
            let d = analysis(&subject(field_flag, &input)?)?;
            let doc = with_header(
                d.field,
                json!({ "boundary": json::boundary_to_json(&d.boundary) }),
            );
            out.emit(&doc, || format!("{}\n", d.boundary))
        }
        Command::Census {
            p,
            mode,
            csv,
            samples,
            seed,
            bound,
            timing,
        } => {
            let mode: CensusMode = mode.parse()?;
            if let Some(f) = field_flag {
                let f: Field = f
                    .parse()
                    .map_err(|e: Error| Fail::new(2, format!("field descriptor: {e}")))?;
                if f != Field::Prime(p) {
                    return Err(Fail::new(2, "--field conflicts with --p"));
                }
            }
            let start = Instant::now();
            let report = census::run_census(p, mode, bound, samples, seed)?;
            if timing {
                eprintln!("census p = {p}: {:.3} s", start.elapsed().as_secs_f64());
            }
            if let Some(path) = csv {
                fs::write(&path, report.csv())
                    .map_err(|e| Fail::new(1, format!("{}: {e}", path.display())))?;
            }
            let doc = with_header(
                Field::Prime(p),
                serde_json::to_value(&report).expect("serializable"),
            );
            out.emit(&doc, || {
                let mut s = format!("p = {p}, {} triples scanned\n", report.triples_scanned);
                s += &format!("well-centered cubic classes: {}\n", report.well_centered_cubic_class_count);
                for c in &report.cubic_classes {
                    let [h, k, mu] = &c.representative;
                    s += &format!("  square mu: {}, {} members, e.g. ({h}, {k}, {mu})\n", c.square_mu, c.members);
                }
                s += &format!("undecided pairs: {}\n", report.undecided_pairs);
                let ok = report.witness_checks.iter().filter(|w| w.transported).count();
                s += &format!("witnesses validated: {ok}/{}\n", report.witness_checks.len());
                if let Some(o) = &report.oracle {
                    let agree = o.lines_checked - o.mismatches;
                    let pct = if o.lines_checked == 0 { 100.0 } else { 100.0 * agree as f64 / o.lines_checked as f64 };
                    s += &format!(
                        "oracle agreement: {agree}/{} lines ({pct:.1}%) over {} quadrilaterals, pencil mismatches {}\n",
                        o.lines_checked, o.quadrilaterals, o.pencil_mismatches
                    );
                }
                s
            })?;
            if !report.invariants_hold() {
                return Err(Fail::new(1, "census invariant failed"));
            }
            Ok(())
        }
        Command::Render {
            input,
            svg,
            samples,
            window,
        } => {
            let s = subject(field_flag, &input)?;
            let field = match &s {
                Subject::Quad(q) => q.field(),
                Subject::Triple(f) => f.field(),
            };
            if field.is_finite() {
                return Err(Fail::new(
                    4,
                    "rendering is only supported over the rationals or in real mode",
                ));
            }
            let window = render::Window::parse(&window).map_err(|m| Fail::new(2, m))?;
            let picture = match &s {
                Subject::Quad(q) => render::render_quadrilateral(q, samples, window)?,
                Subject::Triple(f) => render::render_triple(f, samples, window)?,
            };
            fs::write(&svg, picture).map_err(|e| Fail::new(1, format!("{}: {e}", svg.display())))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
