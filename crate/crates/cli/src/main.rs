use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropsing::arith::{format_rational, parse_rational};
use tropsing::disc_newton::{cache_dir_from_env, compare_newton, newton_polytope};
use tropsing::hpn::{adjacency_probe, classify, count_cones_closed_form, enumerate_cones, ConeCounts};
use tropsing::json::{
    adjacency_json, classification_json, comparison_json, deep_cell_json, descriptor_json, face_census_json,
    parse_polynomial, polynomial_json, singularity_json, universal_json,
};
use tropsing::singular::{singular_points_multivariate, singular_points_univariate};
use tropsing::universal::{construct_deep_cell, equality_rank, is_universally_singular};
use tropsing::{derivative_family_for, euler_derivative, is_singular_at, verify, Error, LinearForm, Point, TropicalPolynomial, ValuationRegime};

#[derive(Parser)]
#[command(name = "tropsing", version, about = "Singular tropical polynomials and discriminant cones")]
struct Cli {
    /// Worker threads; overrides TROPSING_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct PolyInput {
    /// Polynomial JSON file, or `-` for stdin.
    #[arg(long, conflicts_with = "coeffs")]
    poly: Option<PathBuf>,
    /// Dense univariate coefficients, e.g. `0,1,0` or `0,1/2,0`.
    #[arg(long)]
    coeffs: Option<String>,
}

impl PolyInput {
    fn load(&self) -> Result<TropicalPolynomial, Error> {
        match (&self.poly, &self.coeffs) {
            (Some(path), _) => {
                let text = if path.as_os_str() == "-" {
                    std::io::read_to_string(std::io::stdin())?
                } else {
                    std::fs::read_to_string(path)?
                };
                parse_polynomial(&text)
            }
            (None, Some(c)) => {
                let coeffs = c.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
                Ok(TropicalPolynomial::from_dense(&coeffs))
            }
            (None, None) => Err(Error::InvalidInput("give --poly or --coeffs".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tropical roots of a univariate polynomial.
    Roots(PolyInput),
    /// Euler derivative with respect to a linear form, or the full family.
    Euler {
        #[command(flatten)]
        input: PolyInput,
        /// Linear form such as `x-4` or `-3 + 2*x1 + x2`.
        #[arg(long, required_unless_present = "family")]
        form: Option<String>,
        /// `char:0`, `char:P` or `padic:P`.
        #[arg(long, default_value = "char:0")]
        regime: String,
        /// Print every derivative of the finite family instead.
        #[arg(long)]
        family: bool,
    },
    /// Singularity verdicts at a point or over the whole tropical hypersurface.
    Singular {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, default_value = "char:0")]
        regime: String,
        /// Comma-separated rational coordinates; omit to scan all candidates.
        #[arg(long)]
        point: Option<String>,
    },
    /// The fan of polynomials singular at 0 in characteristic p.
    Hpn {
        #[command(subcommand)]
        command: HpnCommand,
    },
    /// Polynomials singular at 0 in every characteristic.
    Universal {
        #[command(subcommand)]
        command: UniversalCommand,
    },
    /// Newton polytopes of the univariate discriminant.
    Disc {
        #[command(subcommand)]
        command: DiscCommand,
    },
    /// Run the acceptance criteria; exits 1 on any failing check.
    Verify {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Subcommand)]
enum HpnCommand {
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        count_only: bool,
        /// Also write the output to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    Check {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        p: u64,
    },
    Probe {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum UniversalCommand {
    Check {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        degree: u32,
    },
    Construct {
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum DiscCommand {
    Newton {
        #[arg(long)]
        degree: u32,
        #[arg(long = "char", default_value_t = 0)]
        p: u64,
        /// Count edges and 2-faces as well as vertices.
        #[arg(long)]
        faces: bool,
        #[arg(long)]
        json: bool,
    },
    Compare {
        #[arg(long)]
        degree: u32,
        /// Two characteristics, e.g. `0,3`.
        #[arg(long)]
        chars: String,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Error(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeLimit(_) => 3,
        Error::Parse(_)
        | Error::InvalidInput(_)
        | Error::InvalidForm(_)
        | Error::InvalidDescriptor(_)
        | Error::NotPrime(_)
        | Error::DimensionMismatch { .. }
        | Error::DuplicateExponent(_)
        | Error::EmptyPolynomial
        | Error::Json(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn regime(s: &str) -> Result<ValuationRegime, Error> {
    s.parse()
}

fn point(s: &str, dim: usize) -> Result<Point, Error> {
    let coords = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: coords.len() });
    }
    Ok(Point::new(coords))
}

fn text_or_json(format: Option<Format>, default: Format, v: &Value, text: impl FnOnce() -> String) -> Result<String, Error> {
    match format.unwrap_or(default) {
        Format::Json => Ok(serde_json::to_string_pretty(v)?),
        Format::Text => Ok(text()),
        Format::Csv => Err(Error::InvalidInput("csv output is not available for this command".into())),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    let out = match cli.command {
        Command::Roots(input) => {
            let f = input.load()?;
            let roots = f.univariate_roots()?;
            let v = Value::from(
                roots.iter().map(|r| json!({"root": format_rational(&r.root), "argmin": r.argmin})).collect::<Vec<_>>(),
            );
            match fmt.unwrap_or(Format::Json) {
                Format::Csv => {
                    let mut s = String::from("root,argmin\n");
                    for r in &roots {
                        let a: Vec<String> = r.argmin.iter().map(i64::to_string).collect();
                        s.push_str(&format!("{},{}\n", format_rational(&r.root), a.join(" ")));
                    }
                    s.trim_end().to_string()
                }
                other => text_or_json(Some(other), Format::Json, &v, || {
                    roots.iter().map(|r| format!("{} {:?}", format_rational(&r.root), r.argmin)).collect::<Vec<_>>().join("\n")
                })?,
            }
        }
        Command::Euler { input, form, regime: r, family } => {
            let f = input.load()?;
            let reg = regime(&r)?;
            let forms: Vec<(String, LinearForm)> = if family {
                derivative_family_for(&f, &reg)?.into_iter().map(|ff| (ff.label, ff.form)).collect()
            } else {
                let l = LinearForm::parse(form.as_deref().unwrap_or_default(), f.dim())?;
                vec![(l.to_string(), l)]
            };
            let mut rows = Vec::new();
            for (label, l) in &forms {
                let d = euler_derivative(&f, l, &reg)?;
                rows.push((label.clone(), l.to_string(), d));
            }
            let v = if family {
                Value::from(
                    rows.iter()
                        .map(|(label, l, d)| json!({"label": label, "form": l, "derivative": polynomial_json(d)}))
                        .collect::<Vec<_>>(),
                )
            } else {
                let (_, l, d) = &rows[0];
                json!({"form": l, "regime": r, "derivative": polynomial_json(d)})
            };
            text_or_json(fmt, Format::Json, &v, || {
                rows.iter().map(|(label, _, d)| format!("{label}: {d}")).collect::<Vec<_>>().join("\n")
            })?
        }
        Command::Singular { input, regime: r, point: pt } => {
            let f = input.load()?;
            let reg = regime(&r)?;
            let reports = match pt {
                Some(s) => vec![is_singular_at(&f, &point(&s, f.dim())?, &reg)?],
                None if f.dim() == 1 => singular_points_univariate(&f, &reg)?,
                None => singular_points_multivariate(&f, &reg)?,
            };
            let v = Value::from(reports.iter().map(singularity_json).collect::<Vec<_>>());
            text_or_json(fmt, Format::Json, &v, || {
                reports
                    .iter()
                    .map(|r| {
                        let coords: Vec<String> = r.point.coords().iter().map(format_rational).collect();
                        match &r.failing_form {
                            _ if r.is_singular => format!("({}) singular", coords.join(",")),
                            Some(l) => format!("({}) not singular, fails at {l}", coords.join(",")),
                            None => format!("({}) not singular", coords.join(",")),
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?
        }
        Command::Hpn { command } => match command {
            HpnCommand::Enumerate { p, degree, count_only, json: path } => {
                let cones = enumerate_cones(degree, p)?;
                let counts = ConeCounts::of(&cones);
                let v = if count_only {
                    serde_json::to_value(counts).map_err(Error::from)?
                } else {
                    json!({
                        "counts": counts,
                        "closed_form": count_cones_closed_form(degree, p).ok(),
                        "cones": cones.iter().map(descriptor_json).collect::<Vec<_>>(),
                    })
                };
                let s = match fmt.unwrap_or(Format::Json) {
                    Format::Json => {
                        if count_only {
                            serde_json::to_string(&v).map_err(Error::from)?
                        } else {
                            serde_json::to_string_pretty(&v).map_err(Error::from)?
                        }
                    }
                    Format::Text => {
                        if count_only {
                            counts.to_string()
                        } else {
                            cones.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
                        }
                    }
                    Format::Csv => {
                        let mut s = String::from("type,descriptor\n");
                        for c in &cones {
                            s.push_str(&format!("{},\"{c}\"\n", c.cone_type()));
                        }
                        s.trim_end().to_string()
                    }
                };
                if let Some(path) = path {
                    std::fs::write(path, serde_json::to_string_pretty(&v).map_err(Error::from)?).map_err(Error::from)?;
                }
                s
            }
            HpnCommand::Check { input, p } => {
                let f = input.load()?;
                let n = u32::try_from(f.degree()?).map_err(|_| Error::InvalidInput("negative degree".into()))?;
                let c = classify(&f, n, p)?;
                text_or_json(fmt, Format::Json, &classification_json(&c), || c.to_string())?
            }
            HpnCommand::Probe { input, p, samples } => {
                let f = input.load()?;
                let r = adjacency_probe(&f, p, samples)?;
                text_or_json(fmt, Format::Json, &adjacency_json(&r), || {
                    let mut s = format!("{} adjacent maximal cells (expected {})", r.count(), r.expected);
                    for sig in &r.signatures {
                        let d: Vec<String> = sig.descriptors().iter().map(ToString::to_string).collect();
                        s.push_str(&format!("\n  {}", d.join(" + ")));
                    }
                    s
                })?
            }
        },
        Command::Universal { command } => match command {
            UniversalCommand::Check { input, degree } => {
                let f = input.load()?;
                let r = is_universally_singular(&f, degree)?;
                let mut v = universal_json(&r);
                if r.is_universal() {
                    v["equality_rank"] = json!(equality_rank(&f, degree)?);
                }
                text_or_json(fmt, Format::Json, &v, || match r.failing {
                    None => "universally singular".to_string(),
                    Some(p) => format!("not singular at 0 in characteristic {p}"),
                })?
            }
            UniversalCommand::Construct { k } => {
                let c = construct_deep_cell(k)?;
                text_or_json(fmt, Format::Json, &deep_cell_json(&c), || {
                    format!("degree {}, d = {}, equality rank {}\n{}", c.n, c.d, c.rank, c.polynomial)
                })?
            }
        },
        Command::Disc { command } => {
            let cache = cache_dir_from_env();
            match command {
                DiscCommand::Newton { degree, p, faces, json } => {
                    let poly = newton_polytope(degree, p, Some(&cache))?;
                    let format = if json { Some(Format::Json) } else { fmt };
                    if faces {
                        let census = poly.faces();
                        let v = face_census_json(&census);
                        match format.unwrap_or(Format::Text) {
                            Format::Csv => vertex_csv(&census.vertices),
                            other => text_or_json(Some(other), Format::Text, &v, || {
                                let mut s = format!(
                                    "{} vertices / {} edges / {} quadrangles / {} triangles",
                                    census.vertex_count(),
                                    census.edge_count(),
                                    census.quadrangles(),
                                    census.triangles()
                                );
                                if census.larger_polygons() > 0 {
                                    s.push_str(&format!(" / {} larger polygons", census.larger_polygons()));
                                }
                                for vtx in &census.vertices {
                                    s.push_str(&format!("\n{vtx:?}"));
                                }
                                s
                            })?,
                        }
                    } else {
                        let vertices: Vec<Vec<i64>> = poly.vertex_indices().into_iter().map(|i| poly.points()[i].clone()).collect();
                        let v = json!({"dim": poly.dim(), "vertex_count": vertices.len(), "vertices": vertices});
                        match format.unwrap_or(Format::Text) {
                            Format::Csv => vertex_csv(&vertices),
                            other => text_or_json(Some(other), Format::Text, &v, || {
                                let mut s = format!("{} vertices", vertices.len());
                                for vtx in &vertices {
                                    s.push_str(&format!("\n{vtx:?}"));
                                }
                                s
                            })?,
                        }
                    }
                }
                DiscCommand::Compare { degree, chars, json } => {
                    let cs = chars
                        .split(',')
                        .map(|c| c.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad characteristic {c:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    let [p, q] = cs[..] else {
                        return Err(Error::Parse("--chars takes exactly two values".into()).into());
                    };
                    let cmp = compare_newton(degree, p, q, Some(&cache))?;
                    let format = if json { Some(Format::Json) } else { fmt };
                    text_or_json(format, Format::Text, &comparison_json(&cmp), || {
                        format!(
                            "only in char {p}: {:?}\nonly in char {q}: {:?}",
                            cmp.only_p, cmp.only_q
                        )
                    })?
                }
            }
        }
        Command::Verify { criterion } => {
            let ids: Vec<u8> = match criterion {
                Some(c) if (1..=9).contains(&c) => vec![c],
                Some(c) => return Err(Error::InvalidInput(format!("no criterion {c}")).into()),
                None => (1..=9).collect(),
            };
            let mut failed = Vec::new();
            for id in ids {
                let r = verify::run_criterion(id).expect("criterion id in range");
                println!("{r}");
                if !r.passed() {
                    print!("{}", r.details());
                    failed.push(id);
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Mismatch(format!("failing criteria: {failed:?}")));
            }
            String::new()
        }
    };
    Ok(out)
}

fn vertex_csv(vertices: &[Vec<i64>]) -> String {
    let width = vertices.first().map_or(0, Vec::len);
    let mut s = (0..width).map(|i| format!("a{i}")).collect::<Vec<_>>().join(",");
    for v in vertices {
        s.push('\n');
        s.push_str(&v.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    }
    s
}

fn configure_threads(flag: Option<usize>) -> Result<(), Error> {
    let threads = match flag {
        Some(t) => Some(t),
        None => match std::env::var("TROPSING_THREADS") {
            Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("TROPSING_THREADS={s:?}")))?),
            Err(_) => None,
        },
    };
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::InvalidInput("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e}");
        return ExitCode::from(exit_code(&e));
    }
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}
