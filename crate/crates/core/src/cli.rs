//! Command-line front end: `gen`, `check`, `recur`, `family-list`,
//! `family-build`, `classify`.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or validation error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::brenke::{build_polynomials, BrenkeSet};
use crate::classify::classify_case;
use crate::dorth::{
    dual_functional_check, dual_window, extract_recurrence, theorem_delta_test, DeltaRange,
    Verdict, VerdictReport,
};
use crate::error::{Error, Result};
use crate::families::{
    build_family_detailed, build_family_unvalidated, catalog, FamilySpec, ReadingCheck,
};
use crate::scalar::Scalar;
use crate::series::PowerSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "brenke",
    version,
    about = "Exact d-orthogonality checks for Brenke polynomial sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the polynomial table P_0..P_N.
    Gen {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        fmt: Format,
    },
    /// Run d-orthogonality oracles.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        window: Window,
        #[arg(long, value_enum, default_value_t = Oracle::All)]
        oracle: Oracle,
        /// Index range of the Delta-relation test.
        #[arg(long, value_enum, default_value_t = DeltaArg::Full)]
        delta: DeltaArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the recurrence coefficients gamma_k(n).
    Recur {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        window: Window,
        #[command(flatten)]
        fmt: Format,
    },
    /// List the built-in family samples.
    FamilyList {
        #[arg(long)]
        json: bool,
    },
    /// Build a family's (A, B) pair, checking both construction routes.
    FamilyBuild {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short = 'N', default_value_t = 20)]
        order: usize,
        #[command(flatten)]
        fmt: Format,
    },
    /// Recover the case label of a 2-orthogonal set.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct Format {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
struct Window {
    #[arg(short = 'd', default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    d: u8,
    /// Largest tested index (default N - 1).
    #[arg(long)]
    n_max: Option<usize>,
    /// Largest power x^m of the dual-functional test (default: largest fitting value up to 4).
    #[arg(long)]
    m_max: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Recurrence,
    Dual,
    Delta,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DeltaArg {
    Necessary,
    Full,
}

#[derive(Args, Debug)]
struct Input {
    #[command(flatten)]
    family: FamilyArgs,
    /// Truncation order [default: 20, or the smaller order of the two files].
    #[arg(short = 'N')]
    order: Option<usize>,
    /// JSON power series for A (`{"order": N, "coeffs": [...]}`).
    #[arg(long, requires = "b_file", conflicts_with_all = ["name", "sample"])]
    a_file: Option<PathBuf>,
    #[arg(long, requires = "a_file")]
    b_file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Hermite,
    QAppell,
    Chihara,
    B1312,
    LittleQLaguerre,
    Laguerre,
    G1,
    G2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SubArg {
    A2Zero,
    A2EqA1sq,
    I,
    Ii,
}

macro_rules! param_flags {
    ($($field:ident),*) => {
        /// Family selection. Parameters not given are taken from the family's first sample.
        #[derive(Args, Debug)]
        struct FamilyArgs {
            #[arg(long, value_enum)]
            name: Option<FamilyName>,
            /// A built-in sample by name (see `family-list`).
            #[arg(long, conflicts_with = "name")]
            sample: Option<String>,
            #[arg(long, value_enum)]
            sub: Option<SubArg>,
            $(
                #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
                $field: Option<Scalar>,
            )*
        }

        impl FamilyArgs {
            fn given(&self) -> Vec<(&'static str, &Scalar)> {
                let mut out = Vec::new();
                $(
                    if let Some(v) = &self.$field {
                        out.push((stringify!($field), v));
                    }
                )*
                out
            }
        }
    };
}

param_flags!(
    c1, c2, c3, alpha, rho, lambda, mu, beta, q, a1, gamma, a11, r0, r1, v0, v1, v2, s0, s1, s2,
    t0, t1
);

fn parse_scalar(s: &str) -> std::result::Result<Scalar, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("named").get_name().to_string()
}

impl FamilyArgs {
    fn is_set(&self) -> bool {
        self.name.is_some() || self.sample.is_some()
    }

    fn spec(&self) -> Result<FamilySpec> {
        let mut spec = match (&self.sample, self.name) {
            (Some(s), _) => {
                catalog()
                    .into_iter()
                    .find(|e| e.name == s)
                    .ok_or_else(|| Error::Usage(format!("unknown sample {s:?}")))?
                    .spec
            }
            (None, Some(n)) => {
                FamilySpec::default_for(&value_name(n)).expect("every family has a sample")
            }
            (None, None) => {
                return Err(Error::Usage(
                    "give --name, --sample or --a-file/--b-file".into(),
                ))
            }
        };
        // flags that do not belong to the family are ignored
        for (name, value) in self.given() {
            if let Some(slot) = spec.param_mut(name) {
                *slot = value.clone();
            }
        }
        if let Some(sub) = self.sub {
            spec.set_sub(&value_name(sub))?;
        }
        Ok(spec)
    }
}

fn read_series(path: &PathBuf) -> Result<PowerSeries> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

impl Input {
    fn load(&self) -> Result<BrenkeSet> {
        match (&self.a_file, &self.b_file) {
            (Some(a), Some(b)) => {
                let (a, b) = (read_series(a)?, read_series(b)?);
                let order = self.order.unwrap_or(a.order().min(b.order()));
                build_polynomials(&a, &b, order)
            }
            _ if self.family.is_set() => {
                build_family_unvalidated(&self.family.spec()?, self.order.unwrap_or(20))
                    .map(|b| b.set)
            }
            _ => Err(Error::Usage(
                "give --name, --sample or --a-file/--b-file".into(),
            )),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

struct SetJson<'a>(&'a BrenkeSet);

impl Serialize for SetJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("N", &self.0.order())?;
        m.serialize_entry("A", self.0.a())?;
        m.serialize_entry("B", self.0.b())?;
        m.serialize_entry("polynomials", self.0.table())?;
        m.end()
    }
}

fn text_table(set: &BrenkeSet) -> String {
    set.table()
        .iter()
        .enumerate()
        .map(|(n, row)| {
            let cs: Vec<String> = row.iter().map(ToString::to_string).collect();
            format!("P_{n}: {}\n", cs.join(" "))
        })
        .collect()
}

struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

fn verdict_line(report: &VerdictReport) -> String {
    match report.witness {
        None => format!(
            "{}: {} (d = {}, n <= {})\n",
            report.oracle, report.verdict, report.d, report.n_max
        ),
        Some(w) => format!(
            "{}: {} (d = {}, n <= {}; witness n = {}, {:?})\n",
            report.oracle, report.verdict, report.d, report.n_max, w.n, w.reason
        ),
    }
}

fn run_check(
    set: &BrenkeSet,
    window: &Window,
    oracle: Oracle,
    delta: DeltaArg,
    json: bool,
) -> Result<Outcome> {
    let d = window.d as usize;
    let n_max = window.n_max.unwrap_or(set.order().saturating_sub(1));
    let mut reports = Vec::new();
    let want = |o: Oracle| oracle == o || oracle == Oracle::All;
    if want(Oracle::Recurrence) {
        let (_, v) = extract_recurrence(set, d, n_max)?;
        reports.push(VerdictReport::new("recurrence", &v, None));
    }
    if want(Oracle::Dual) {
        let (m, n) = dual_window(set.order(), d, n_max, window.m_max);
        let v = dual_functional_check(set, d, m, n)?;
        reports.push(VerdictReport::new("dual", &v, None));
    }
    if want(Oracle::Delta) {
        let range = match delta {
            DeltaArg::Necessary => DeltaRange::NecessaryOnly,
            DeltaArg::Full => DeltaRange::Full,
        };
        let v: Verdict = theorem_delta_test(set, d, n_max, range)?;
        reports.push(VerdictReport::new("delta", &v, None));
    }
    let code = if reports.iter().all(|r| r.verdict == "positive") {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let stdout = if json {
        if reports.len() == 1 {
            to_json(&reports[0])
        } else {
            to_json(&reports)
        }
    } else {
        reports.iter().map(verdict_line).collect()
    };
    Ok(Outcome { stdout, code })
}

fn run_recur(set: &BrenkeSet, window: &Window, fmt: &Format) -> Result<Outcome> {
    let d = window.d as usize;
    let n_max = window.n_max.unwrap_or(set.order().saturating_sub(1));
    let (data, verdict) = extract_recurrence(set, d, n_max)?;
    let report = VerdictReport::new("recurrence", &verdict, Some(&data));
    let stdout = if fmt.json {
        to_json(&report)
    } else {
        let mut out = String::from("n");
        for k in -1..=d as i64 {
            out.push_str(&format!(",gamma_{k}"));
        }
        out.push('\n');
        for (n, row) in data.gamma.iter().enumerate() {
            let cs: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&format!("{n},{}\n", cs.join(",")));
        }
        if !fmt.csv {
            out.push_str(&verdict_line(&report));
        }
        out
    };
    let code = if verdict.is_d_orthogonal {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Outcome { stdout, code })
}

struct BuildJson<'a> {
    spec: &'a FamilySpec,
    set: &'a BrenkeSet,
    readings: &'a [ReadingCheck],
}

impl Serialize for BuildJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("family", &self.spec.descriptor())?;
        m.serialize_entry("N", &self.set.order())?;
        m.serialize_entry("A", self.set.a())?;
        m.serialize_entry("B", self.set.b())?;
        if !self.readings.is_empty() {
            m.serialize_entry("readings", self.readings)?;
        }
        m.end()
    }
}

struct ListEntry<'a> {
    name: &'a str,
    spec: &'a FamilySpec,
}

impl Serialize for ListEntry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("name", self.name)?;
        m.serialize_entry("family", self.spec.cli_name())?;
        m.serialize_entry("descriptor", &self.spec.descriptor())?;
        m.end()
    }
}

fn params_text(params: &[(&'static str, Scalar)]) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Gen { input, fmt } => {
            let set = input.load()?;
            Ok(Outcome::ok(if fmt.json {
                to_json(&SetJson(&set))
            } else if fmt.csv {
                set.to_csv()
            } else {
                text_table(&set)
            }))
        }
        Command::Check {
            input,
            window,
            oracle,
            delta,
            json,
        } => run_check(&input.load()?, &window, oracle, delta, json),
        Command::Recur { input, window, fmt } => run_recur(&input.load()?, &window, &fmt),
        Command::FamilyList { json } => {
            let cat = catalog();
            Ok(Outcome::ok(if json {
                let entries: Vec<ListEntry> = cat
                    .iter()
                    .map(|e| ListEntry {
                        name: e.name,
                        spec: &e.spec,
                    })
                    .collect();
                to_json(&entries)
            } else {
                cat.iter()
                    .map(|e| {
                        format!(
                            "{:<26} {:<18} {:<22} {}\n",
                            e.name,
                            e.spec.cli_name(),
                            e.label,
                            params_text(&e.spec.params())
                        )
                    })
                    .collect()
            }))
        }
        Command::FamilyBuild { family, order, fmt } => {
            let spec = family.spec()?;
            let built = build_family_detailed(&spec, order)?;
            Ok(Outcome::ok(if fmt.json {
                to_json(&BuildJson {
                    spec: &spec,
                    set: &built.set,
                    readings: &built.readings,
                })
            } else if fmt.csv {
                built.set.to_csv()
            } else {
                let mut out = format!("{} {}\n", spec.variant(), params_text(&spec.params()));
                out.push_str(&format!("case: {}\n", spec.case_label()));
                out.push_str(&format!("A: {}\n", built.set.a()));
                out.push_str(&format!("B: {}\n", built.set.b()));
                for r in &built.readings {
                    let status = match (r.matches, r.first_mismatch, &r.error) {
                        (true, _, _) => "matches".to_string(),
                        (false, Some(i), _) => format!("differs at index {i}"),
                        (false, None, Some(e)) => format!("not evaluable: {e}"),
                        (false, None, None) => "differs".to_string(),
                    };
                    out.push_str(&format!("reading {}: {status}\n", r.reading));
                }
                out
            }))
        }
        Command::Classify { input, n_max, json } => {
            let set = input.load()?;
            let n_max = n_max.unwrap_or(set.order().saturating_sub(1));
            match classify_case(&set, n_max) {
                Ok(c) => Ok(Outcome::ok(if json {
                    to_json(&c)
                } else {
                    let roots: Vec<String> = c
                        .roots
                        .iter()
                        .zip(&c.multiplicities)
                        .map(|(r, m)| format!("{r} (x{m})"))
                        .collect();
                    format!(
                        "label: {}\nroots: {}\nparams: {}\n",
                        c.label,
                        roots.join(", "),
                        params_text(&c.recovered_params)
                    )
                })),
                Err(Error::NotTwoOrthogonal) => Ok(Outcome {
                    stdout: if json {
                        to_json(&serde_json::json!({ "error": "NotTwoOrthogonal" }))
                    } else {
                        "not 2-orthogonal on the tested window\n".into()
                    },
                    code: EXIT_NEGATIVE,
                }),
                Err(e) => Err(e),
            }
        }
    }
}

/// Run the CLI on `argv` (including the program name), writing to the sinks.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli) {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            o.code
        }
        Err(Error::InvalidParams(vs)) => {
            for v in vs {
                let _ = writeln!(err, "invalid parameter {v}");
            }
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
