//! The `trunkkit` command line. Every subcommand produces one report that is
//! printed either as text or, with `--json`, as a JSON object carrying the
//! same fields.
//!
//! Exit codes: 0 success or consistent, 1 violation or contradiction found,
//! 2 usage or parse error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use trunkkit_core::arrangement::{
    absorb, canonical_form, deconstruct, extremal_formula, extremal_sequence, parity_check, random_build,
    Arrangement, ArrangementError, ConfigError, Threshold, DEFAULT_MAX_SET,
};
use trunkkit_core::bounds::{audit_all, audit_combined, audit_wrapping, audit_winding, summary_line, AuditReport, BoundsError};
use trunkkit_core::morse::{LevelProfile, MorsePresentation};
use trunkkit_core::pattern::{cable, satellite, PatternError};
use trunkkit_core::Rational;

use crate::io::{self, ReadError};
use crate::parallel::enumerate_parallel;
use crate::render::{render, render_marked, Format};

/// Environment variable capping the number of classes `arr-enumerate` keeps.
pub const MAX_SET_VAR: &str = "TRUNKKIT_MAX_SET";

#[derive(Debug, Parser)]
#[command(name = "trunkkit", version, about = "Trunk and width of Morse presentations, satellites and arrangements of pieces")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Width, trunk and level profile of a `.morse` word.
    Invariants { file: PathBuf },
    /// Connected sum of two knots: the second word stacked below the first.
    Connect {
        first: PathBuf,
        second: PathBuf,
        /// Write the resulting word here instead of printing it.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Blackboard cable of a knot.
    Cable {
        file: PathBuf,
        #[arg(long, short = 'n', default_value_t = 2)]
        strands: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Satellite of a companion word and a `.tangle` pattern.
    Satellite {
        companion: PathBuf,
        pattern: PathBuf,
        /// Companion regular level where the pattern is spliced in.
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Checks an `.arr` arrangement against the conditions for threshold a.
    ArrVerify {
        file: PathBuf,
        #[arg(long = "a", default_value_t = 1)]
        a: u32,
    },
    /// Compares x/y with a/(a+1) for a valid arrangement.
    ArrLambda {
        file: PathBuf,
        #[arg(long = "a", default_value_t = 1)]
        a: u32,
    },
    /// Lists every arrangement with at most `--max` pieces, up to sphere isomorphism.
    ArrEnumerate {
        #[arg(long)]
        max: usize,
        #[arg(long = "a", default_value_t = 1)]
        a: u32,
        /// Also check x/y > a/(a+1) on every arrangement.
        #[arg(long)]
        check_lambda: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Print only the summary.
        #[arg(long)]
        quiet: bool,
    },
    /// Reduces an arrangement to two disks and rebuilds it.
    ArrDeconstruct {
        /// Arrangement to reduce; omit with `--random`.
        file: Option<PathBuf>,
        #[arg(long = "a", default_value_t = 1)]
        a: u32,
        /// Round-trip this many random move-built arrangements instead.
        #[arg(long, conflicts_with = "file")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        max_pieces: usize,
    },
    /// x/y along the slowest-growing move sequence.
    ArrExtremal {
        #[arg(long = "a", default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Absorbs a `.cfg` piece configuration into an arrangement.
    ArrAbsorb { file: PathBuf },
    /// Checks the trunk lower bounds against certified class data.
    Audit {
        /// Companion word, or the satellite itself without `--pattern`.
        file: PathBuf,
        /// Build the satellite of `file` with this `.tangle` first.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// Certified-data file; the shipped records by default.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Record to audit against.
        #[arg(long)]
        name: String,
        /// Run the combined audit with this mu (integer or p/q) only.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Level diagram of a word with the regular levels annotated.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
        /// Render the n-cable, annotating companion levels.
        #[arg(long)]
        cable: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error("{path}: {source}", path = .path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// A finished report: text, its JSON mirror and the exit code.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }

    fn with_code(mut self, failed: bool) -> Self {
        if failed {
            self.code = 1;
        }
        self
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let max_set = std::env::var(MAX_SET_VAR).ok();
    match execute(&cli.command, max_set.as_deref()) {
        Ok(report) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("json");
                s.push('\n');
                s
            } else {
                report.text
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(err, "\n{}", Cli::command().render_usage());
            }
            2
        }
    }
}

fn threshold(a: u32) -> Result<Threshold, CliError> {
    Threshold::new(a).map_err(|_| CliError::Usage(format!("--a must be odd and positive, got {a}")))
}

fn profile_text(p: &LevelProfile) -> String {
    let parts: Vec<String> = p.widths().iter().map(|w| w.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `word` to `output` if given; otherwise appends it to the report.
fn emit_word(text: &mut String, fields: &mut Map<String, Value>, word: String, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => {
            write_file(path, &word)?;
            let _ = writeln!(text, "written={}", path.display());
            fields.insert("written".into(), json!(path.display().to_string()));
        }
        None => {
            text.push_str(&word);
            fields.insert("word".into(), json!(word));
        }
    }
    Ok(())
}

/// Runs one command. The environment value for the enumeration cap is
/// passed in so tests can set it without touching the process.
pub fn execute(command: &Command, max_set: Option<&str>) -> Result<Report, CliError> {
    match command {
        Command::Invariants { file } => {
            let k = io::read_presentation(file)?;
            Ok(invariants(&k))
        }
        Command::Connect { first, second, output } => {
            let a = io::read_presentation(first)?;
            let b = io::read_presentation(second)?;
            let sum = a.connected_sum(&b);
            let mut r = invariants(&sum);
            let fields = r.json.as_object_mut().expect("object");
            emit_word(&mut r.text, fields, sum.diagram().to_dsl(), output.as_deref())?;
            Ok(r)
        }
        Command::Cable { file, strands, output } => {
            let k = io::read_presentation(file)?;
            let c = cable(k.diagram(), *strands)?;
            let companion = c.companion_profile();
            let mut text = format!(
                "strands={} components={} trunk={} companion_profile={} companion_width={}\n",
                c.multiplicity(),
                c.diagram().component_count(),
                c.diagram().trunk(),
                profile_text(&companion),
                companion.width()
            );
            let mut fields = Map::new();
            fields.insert("strands".into(), json!(c.multiplicity()));
            fields.insert("components".into(), json!(c.diagram().component_count()));
            fields.insert("trunk".into(), json!(c.diagram().trunk()));
            fields.insert("companion_profile".into(), json!(companion.widths()));
            fields.insert("companion_width".into(), json!(companion.width()));
            emit_word(&mut text, &mut fields, c.diagram().to_dsl(), output.as_deref())?;
            Ok(Report::ok(text, Value::Object(fields)))
        }
        Command::Satellite {
            companion,
            pattern,
            level,
            output,
        } => {
            let j = io::read_presentation(companion)?;
            let t = io::read_tangle(pattern)?;
            let s = satellite(&j, &t, *level)?;
            let k = s.knot();
            let mut text = format!(
                "width={} trunk={} profile={} companion_profile={} window_profile={} winding={} wrapping={}\n",
                k.width(),
                k.trunk(),
                profile_text(&k.level_profile()),
                profile_text(&s.companion_profile()),
                profile_text(&s.window_profile()),
                t.winding_number(),
                t.presentation_wrapping()
            );
            let mut fields = Map::new();
            fields.insert("width".into(), json!(k.width()));
            fields.insert("trunk".into(), json!(k.trunk()));
            fields.insert("profile".into(), json!(k.level_profile().widths()));
            fields.insert("companion_profile".into(), json!(s.companion_profile().widths()));
            fields.insert("window_profile".into(), json!(s.window_profile().widths()));
            fields.insert("winding".into(), json!(t.winding_number()));
            fields.insert("wrapping".into(), json!(t.presentation_wrapping()));
            emit_word(&mut text, &mut fields, k.diagram().to_dsl(), output.as_deref())?;
            Ok(Report::ok(text, Value::Object(fields)))
        }
        Command::ArrVerify { file, a } => {
            let a = threshold(*a)?;
            let arr = io::read_arrangement(file)?;
            Ok(verify(&arr, a))
        }
        Command::ArrLambda { file, a } => {
            let a = threshold(*a)?;
            let arr = io::read_arrangement(file)?;
            if !arr.is_valid(a) {
                return Ok(verify(&arr, a));
            }
            let l = arr.check_lambda_bound(a);
            let text = format!(
                "x={} y={} ratio={} bound={} pass={}\n",
                l.x, l.y, l.ratio, l.bound, l.pass
            );
            let json = json!({
                "x": l.x,
                "y": l.y,
                "ratio": l.ratio.to_string(),
                "bound": l.bound.to_string(),
                "pass": l.pass,
            });
            Ok(Report::ok(text, json).with_code(!l.pass))
        }
        Command::ArrEnumerate {
            max,
            a,
            check_lambda,
            threads,
            quiet,
        } => {
            let a = threshold(*a)?;
            let cap = match max_set {
                Some(v) => v
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("{MAX_SET_VAR} must be a positive integer, got `{v}`")))?,
                None => DEFAULT_MAX_SET,
            };
            let e = enumerate_parallel(*max, a, cap, *threads)?;
            let mut text = String::new();
            if !quiet {
                for key in e.forms().keys() {
                    let _ = writeln!(text, "{key}");
                }
            }
            let by: Vec<String> = e.by_piece_count().iter().map(|(p, c)| format!("{p}:{c}")).collect();
            let _ = writeln!(
                text,
                "enumerated {} arrangements with at most {} pieces (a={}); by pieces {}",
                e.len(),
                max,
                a,
                by.join(" ")
            );
            let mut fields = Map::new();
            if !quiet {
                fields.insert("forms".into(), json!(e.forms().keys().collect::<Vec<_>>()));
            }
            fields.insert("count".into(), json!(e.len()));
            fields.insert("max".into(), json!(max));
            fields.insert("a".into(), json!(a.get()));
            let by_map: Map<String, Value> = e
                .by_piece_count()
                .iter()
                .map(|(p, c)| (p.to_string(), json!(c)))
                .collect();
            fields.insert("by_pieces".into(), Value::Object(by_map));
            let mut failed = false;
            if *check_lambda {
                let bad = e.lambda_violations();
                failed = !bad.is_empty();
                for (key, l) in &bad {
                    let _ = writeln!(text, "violation {key} x={} y={} ratio={}", l.x, l.y, l.ratio);
                }
                let verdict = if failed {
                    format!("{} violations", bad.len())
                } else {
                    "all 0 violations".to_string()
                };
                let _ = writeln!(text, "lambda x/y > {} on {} arrangements: {verdict}", a.bound(), e.len());
                let list: Vec<Value> = bad
                    .iter()
                    .map(|(key, l)| json!({"form": key, "x": l.x, "y": l.y, "ratio": l.ratio.to_string()}))
                    .collect();
                fields.insert(
                    "lambda".into(),
                    json!({"bound": a.bound().to_string(), "checked": e.len(), "violations": list}),
                );
            }
            Ok(Report::ok(text, Value::Object(fields)).with_code(failed))
        }
        Command::ArrDeconstruct {
            file,
            a,
            random,
            seed,
            max_pieces,
        } => {
            let a = threshold(*a)?;
            match (file, random) {
                (Some(file), None) => {
                    let arr = io::read_arrangement(file)?;
                    deconstruct_one(&arr, a)
                }
                (None, Some(count)) => Ok(deconstruct_random(*count, *seed, *max_pieces, a)),
                _ => Err(CliError::Usage("give an arrangement file or --random N".into())),
            }
        }
        Command::ArrExtremal { a, steps } => {
            let a = threshold(*a)?;
            let values = extremal_sequence(a, *steps);
            let exact = values
                .iter()
                .enumerate()
                .all(|(t, v)| *v == extremal_formula(a, t));
            let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            let text = format!("{} → inf {}\n", shown.join(", "), a.bound());
            let json = json!({
                "a": a.get(),
                "steps": steps,
                "values": shown,
                "infimum": a.bound().to_string(),
            });
            Ok(Report::ok(text, json).with_code(!exact))
        }
        Command::ArrAbsorb { file } => {
            let c = io::read_configuration(file)?;
            if let Err(vs) = parity_check(&c) {
                let mut text = String::from("parity=fail\n");
                for v in &vs {
                    let _ = writeln!(text, "violation {v}");
                }
                let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                return Ok(Report {
                    text,
                    json: json!({"parity": "fail", "violations": list}),
                    code: 1,
                });
            }
            match absorb(&c) {
                Ok(r) => {
                    let arr = &r.arrangement;
                    let mut text = format!(
                        "parity=ok arrangement={} pieces={} valid={}\n",
                        arr.to_bracket(),
                        arr.piece_count(),
                        arr.is_valid(Threshold::ONE)
                    );
                    for (from, to) in &r.map {
                        let _ = writeln!(text, "map {from} -> {to}");
                    }
                    for p in &r.excluded {
                        let _ = writeln!(text, "excluded {p}");
                    }
                    let map: Vec<Value> = r
                        .map
                        .iter()
                        .map(|(from, to)| json!({"from": from.to_string(), "to": to.to_string()}))
                        .collect();
                    let excluded: Vec<String> = r.excluded.iter().map(|p| p.to_string()).collect();
                    let json = json!({
                        "parity": "ok",
                        "arrangement": arr.to_bracket(),
                        "pieces": arr.piece_count(),
                        "valid": arr.is_valid(Threshold::ONE),
                        "map": map,
                        "excluded": excluded,
                    });
                    Ok(Report::ok(text, json).with_code(!arr.is_valid(Threshold::ONE)))
                }
                Err(e @ (ConfigError::EssentialWithoutRelevant(_) | ConfigError::NoRelevant | ConfigError::Invalid(_))) => {
                    Ok(Report {
                        text: format!("parity=ok absorb=fail\nreason {e}\n"),
                        json: json!({"parity": "ok", "absorb": "fail", "reason": e.to_string()}),
                        code: 1,
                    })
                }
                Err(e @ ConfigError::Parity(_)) => Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Audit {
            file,
            pattern,
            level,
            data,
            name,
            mu,
        } => {
            let base = io::read_presentation(file)?;
            let knot: MorsePresentation = match pattern {
                Some(p) => satellite(&base, &io::read_tangle(p)?, *level)?.into_knot(),
                None => base,
            };
            let records = io::read_certified(data.as_deref())?;
            let Some(d) = records.iter().find(|d| &d.name == name) else {
                let names: Vec<&str> = records.iter().map(|d| d.name.as_str()).collect();
                return Err(CliError::Usage(format!(
                    "no certified record `{name}`; available: {}",
                    names.join(", ")
                )));
            };
            let reports = match mu {
                Some(text) => {
                    let mu: Rational = text
                        .trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("--mu must be an integer or p/q, got `{text}`")))?;
                    vec![
                        audit_winding(knot.diagram(), d),
                        audit_wrapping(knot.diagram(), d),
                        audit_combined(knot.diagram(), d, mu)?,
                    ]
                }
                None => audit_all(knot.diagram(), d),
            };
            Ok(audit_report(&reports))
        }
        Command::Render {
            file,
            format,
            cable: strands,
            output,
        } => {
            let k = io::read_presentation(file)?;
            let format = match format {
                RenderFormat::Ascii => Format::Ascii,
                RenderFormat::Svg => Format::Svg,
            };
            let diagram = match strands {
                Some(n) => {
                    let c = cable(k.diagram(), *n)?;
                    render_marked(c.diagram(), c.marks(), format)
                }
                None => render(k.diagram(), format),
            };
            let format_key = match format {
                Format::Ascii => "ascii",
                Format::Svg => "svg",
            };
            match output {
                Some(path) => {
                    write_file(path, &diagram)?;
                    Ok(Report::ok(
                        format!("written={}\n", path.display()),
                        json!({"format": format_key, "written": path.display().to_string()}),
                    ))
                }
                None => Ok(Report::ok(diagram.clone(), json!({"format": format_key, "diagram": diagram}))),
            }
        }
    }
}

fn invariants(k: &MorsePresentation) -> Report {
    let p = k.level_profile();
    let text = format!("width={} trunk={} profile={}\n", k.width(), k.trunk(), profile_text(&p));
    let json = json!({"width": k.width(), "trunk": k.trunk(), "profile": p.widths()});
    Report::ok(text, json)
}

fn verify(arr: &Arrangement, a: Threshold) -> Report {
    let violations = match arr.validate(a) {
        Ok(()) => Vec::new(),
        Err(vs) => vs,
    };
    let valid = violations.is_empty();
    let mut text = format!(
        "valid={valid} a={a} pieces={} lambda={} violations={}\n",
        arr.piece_count(),
        arr.lambda_count(a),
        violations.len()
    );
    for v in &violations {
        let _ = writeln!(text, "violation {v}");
    }
    let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    let json = json!({
        "valid": valid,
        "a": a.get(),
        "pieces": arr.piece_count(),
        "lambda": arr.lambda_count(a),
        "violations": list,
    });
    Report::ok(text, json).with_code(!valid)
}

fn deconstruct_one(arr: &Arrangement, a: Threshold) -> Result<Report, CliError> {
    let trace = deconstruct(arr, a)?;
    let two = Arrangement::two_disks();
    let forward = trace.reversed(&two)?;
    let rebuilt = forward.replay(&two)?;
    let round_trip = canonical_form(&rebuilt) == canonical_form(arr);
    let deltas = trace.deltas_match() && forward.deltas_match();
    let (x0, y0) = trace.counters[0];
    let mut text = format!("start x={x0} y={y0}\n");
    let mut steps = Vec::new();
    for (t, (m, &(x, y))) in trace.steps.iter().zip(&trace.counters[1..]).enumerate() {
        let _ = writeln!(text, "step {} {m} x={x} y={y}", t + 1);
        steps.push(json!({"step": t + 1, "move": m.to_string(), "x": x, "y": y}));
    }
    let _ = writeln!(
        text,
        "steps={} round_trip={round_trip} deltas={deltas}",
        trace.len()
    );
    let json = json!({
        "start": {"x": x0, "y": y0},
        "steps": steps,
        "count": trace.len(),
        "round_trip": round_trip,
        "deltas": deltas,
    });
    Ok(Report::ok(text, json).with_code(!(round_trip && deltas)))
}

fn deconstruct_random(count: usize, seed: u64, max_pieces: usize, a: Threshold) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = Arrangement::two_disks();
    let (mut valid, mut rebuilt, mut mismatches) = (0usize, 0usize, 0usize);
    let mut largest = 0usize;
    for _ in 0..count {
        let (arr, build) = random_build(&mut rng, max_pieces, a);
        largest = largest.max(arr.piece_count());
        if arr.is_valid(a) {
            valid += 1;
        }
        let ok = deconstruct(&arr, a)
            .and_then(|trace| {
                if !trace.deltas_match() {
                    mismatches += 1;
                }
                let forward = trace.reversed(&two)?;
                forward.replay(&two)
            })
            .map(|back| canonical_form(&back) == canonical_form(&arr))
            .unwrap_or(false);
        if ok {
            rebuilt += 1;
        }
        if !build.deltas_match() {
            mismatches += 1;
        }
    }
    let text = format!(
        "seed={seed} built={count} valid={valid} rebuilt={rebuilt} delta_mismatches={mismatches} largest={largest}\n"
    );
    let json = json!({
        "seed": seed,
        "built": count,
        "valid": valid,
        "rebuilt": rebuilt,
        "delta_mismatches": mismatches,
        "largest": largest,
    });
    Report::ok(text, json).with_code(valid != count || rebuilt != count || mismatches != 0)
}

/// Integers and booleans keep their type; rationals stay strings.
fn kv_value(v: &str) -> Value {
    if let Ok(n) = v.parse::<i64>() {
        json!(n)
    } else if let Ok(b) = v.parse::<bool>() {
        json!(b)
    } else {
        json!(v)
    }
}

fn audit_report(reports: &[AuditReport]) -> Report {
    let mut text = String::new();
    for r in reports {
        let _ = write!(text, "{r}");
    }
    let summary = summary_line(reports);
    let _ = writeln!(text, "{summary}");
    let list: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut o = Map::new();
            for line in r.to_kv().lines() {
                let (k, v) = line.split_once('=').expect("key=value");
                if k == "warning" {
                    let entry = o.entry("warnings").or_insert_with(|| json!([]));
                    entry.as_array_mut().expect("array").push(json!(v));
                } else {
                    o.insert(k.to_string(), kv_value(v));
                }
            }
            Value::Object(o)
        })
        .collect();
    let contradictions = reports.iter().filter(|r| !r.is_consistent()).count();
    let json = json!({
        "audits": list,
        "summary": summary,
        "contradictions": contradictions,
    });
    Report::ok(text, json).with_code(contradictions > 0)
}
