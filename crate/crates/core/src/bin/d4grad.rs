use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use d4_gradings::exact::{init_conductor, CycloScalar, DEFAULT_CONDUCTOR};
use d4_gradings::gradings::{compute_grading, family_quasitorus, parse_spec_file, q_family, table1_row, Grading};
use d4_gradings::liealg::d4_model;
use d4_gradings::report::{all_passed, render_markdown, render_table, verify, Fault, Suite, VerifyOptions, DEFAULT_SEED};
use d4_gradings::triality::{triality_grading, TrialityGrading};
use d4_gradings::weyl::{closure, conjugacy_census, isometry_group, matrix_order, table2_rows, IsoMatrix, GENERATORS};
use d4_gradings::Error;

#[derive(Parser)]
#[command(name = "d4grad", version, about = "Fine gradings on the Lie algebra d4, computed exactly")]
struct Cli {
    /// Conductor N of the coefficient field Q(ζ_N).
    #[arg(long, global = true, default_value_t = DEFAULT_CONDUCTOR)]
    conductor: u32,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the isometry group, its conjugacy census, or the fixed-subtorus table.
    Weyl {
        #[arg(long, value_enum)]
        emit: Emit,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Close only these generators (1-based, s1..s6), e.g. 1,3.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<usize>,
    },
    /// Compute a grading: Q1..Q14, P1..P4, or a JSON spec file.
    Grading {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the acceptance checks and print one line per check.
    Verify {
        /// Comma-separated suites: isometry, census, table2, stabilizer, liealg,
        /// table1, witnesses, composition, triality, crossval, properties.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Perturb one d4 structure constant before the Lie checks.
        #[arg(long)]
        inject_fault: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Elements,
    Census,
    Table2,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Md,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Spec(_) | Error::Json(_) | Error::Io(_) | Error::IndexOutOfRange(..) | Error::ConductorInsufficient { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Verification(e.to_string()),
        }
    }
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn md_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

fn matrix_string(m: &IsoMatrix) -> String {
    let rows: Vec<String> = m.iter().map(|r| r.iter().map(i32::to_string).collect::<Vec<_>>().join(" ")).collect();
    rows.join("; ")
}

fn cmd_weyl(emit: Emit, format: Format, generators: &[usize]) -> Result<String, Failure> {
    match emit {
        Emit::Elements => {
            let elements: Vec<IsoMatrix> = if generators.is_empty() {
                isometry_group().elements().map(|e| e.matrix).collect()
            } else {
                let gens = generators
                    .iter()
                    .map(|&i| GENERATORS.get(i.wrapping_sub(1)).copied().ok_or_else(|| Failure::Usage(format!("generator {i} not in 1..=6"))))
                    .collect::<Result<Vec<_>, _>>()?;
                closure(&gens)
            };
            let order = |m: &IsoMatrix| matrix_order(m, 64).unwrap_or(0);
            Ok(match format {
                Format::Json => to_json_text(&Value::Array(
                    elements.iter().enumerate().map(|(i, m)| json!({"index": i + 1, "order": order(m), "matrix": m})).collect(),
                )),
                Format::Csv | Format::Md => {
                    let rows = elements.iter().enumerate().map(|(i, m)| vec![(i + 1).to_string(), order(m).to_string(), matrix_string(m)]).collect();
                    let header = ["index", "order", "matrix"];
                    if format == Format::Csv { csv_text(&header, rows) } else { md_text(&header, rows) }
                }
            })
        }
        Emit::Census => {
            let census = conjugacy_census(isometry_group());
            Ok(match format {
                Format::Json => to_json_text(&serde_json::to_value(census.values().collect::<Vec<_>>()).expect("serializable")),
                Format::Csv | Format::Md => {
                    let rows = census
                        .values()
                        .map(|e| {
                            let reps: Vec<String> = e.representatives.iter().map(usize::to_string).collect();
                            vec![e.order.to_string(), e.count.to_string(), e.orbits.to_string(), reps.join(" ")]
                        })
                        .collect();
                    let header = ["order", "elements", "orbits", "representatives"];
                    if format == Format::Csv { csv_text(&header, rows) } else { md_text(&header, rows) }
                }
            })
        }
        Emit::Table2 => {
            let rows = table2_rows();
            Ok(match format {
                Format::Json => to_json_text(&serde_json::to_value(&rows).expect("serializable")),
                Format::Csv | Format::Md => {
                    let body = rows
                        .iter()
                        .map(|r| vec![r.order.to_string(), r.index.to_string(), r.type_string.clone(), r.parametrization.clone()])
                        .collect();
                    let header = ["order", "j", "T(j)", "parametrization"];
                    if format == Format::Csv { csv_text(&header, body) } else { md_text(&header, body) }
                }
            })
        }
    }
}

fn grading_output(g: &Grading, extra: Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = g.to_json();
            if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
                m.extend(e);
            }
            to_json_text(&v)
        }
        Format::Csv | Format::Md => {
            let rows = g
                .components
                .iter()
                .map(|c| {
                    let label: Vec<String> = c.label.flat().iter().map(i64::to_string).collect();
                    vec![label.join(" "), c.basis.len().to_string()]
                })
                .collect();
            let header = ["label", "dim"];
            if format == Format::Csv {
                csv_text(&header, rows)
            } else {
                format!("{}: {}\n\n{}", g.name.as_deref().unwrap_or("grading"), g.invariants(), md_text(&header, rows))
            }
        }
    }
}

fn cmd_grading(spec: &str, format: Format) -> Result<String, Failure> {
    if let Some(row) = table1_row(spec) {
        let (q, twist) = q_family(row)?;
        let alg = &d4_model().algebra;
        let g = compute_grading(alg, &q)?;
        g.verify(alg)?;
        let extra = json!({"algebra": "d4", "twist": twist});
        return Ok(grading_output(&g, extra, format));
    }
    if let Some(p) = TrialityGrading::parse(spec) {
        // both composition routes need ω
        CycloScalar::root_of_unity(3)?;
        let g = triality_grading(p)?;
        let composition = if matches!(p, TrialityGrading::P1 | TrialityGrading::P2) { "para-Hurwitz" } else { "Okubo" };
        return Ok(grading_output(&g, json!({"algebra": "so(S,q)", "composition": composition}), format));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Failure::Usage(format!("'{spec}' is neither Q1..Q14, P1..P4 nor an existing file")));
    }
    let (name, family) = parse_spec_file(path)?;
    let (q, twist) = match family_quasitorus(name, &family) {
        Ok(x) => x,
        Err(e @ (Error::NonCommuting { .. } | Error::NoTwist { .. })) => {
            let pairs = match &e {
                Error::NonCommuting { pairs } | Error::NoTwist { pairs, .. } => pairs.clone(),
                _ => unreachable!(),
            };
            return Err(Failure::Verification(to_json_text(&json!({"obstruction": e.to_string(), "pairs": pairs}))));
        }
        Err(e) => return Err(e.into()),
    };
    let alg = &d4_model().algebra;
    let g = compute_grading(alg, &q)?;
    g.verify(alg)?;
    Ok(grading_output(&g, json!({"algebra": "d4", "twist": twist}), format))
}

fn cmd_verify(only: &[String], format: ReportFormat, inject_fault: bool, seed: u64, samples: usize) -> Result<(String, bool), Failure> {
    let only = only
        .iter()
        .map(|s| Suite::parse(s.trim()).ok_or_else(|| Failure::Usage(format!("unknown suite '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = VerifyOptions { only, fault: inject_fault.then_some(Fault::StructureConstant), seed, samples };
    let records = verify(&opts);
    let text = match format {
        ReportFormat::Text => render_table(&records),
        ReportFormat::Json => to_json_text(&serde_json::to_value(&records).expect("serializable")),
        ReportFormat::Md => render_markdown(&records),
    };
    Ok((text, all_passed(&records)))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Usage(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    init_conductor(cli.conductor).map_err(|e| Failure::Usage(e.to_string()))?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Weyl { emit: what, format, generators } => emit(out, &cmd_weyl(what, format, &generators)?).map(|_| true),
        Command::Grading { spec, format } => emit(out, &cmd_grading(&spec, format)?).map(|_| true),
        Command::Verify { only, format, inject_fault, seed, samples } => {
            let (text, ok) = cmd_verify(&only, format, inject_fault, seed, samples)?;
            emit(out, &text)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{}", msg.trim_end());
            ExitCode::from(1)
        }
    }
}
