//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 verification failure, 4 size cap
//! exceeded. All output is deterministic: JSON objects are emitted with a
//! fixed key order and polynomial coefficients as decimal strings.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::basilica::{apply, build_schreier_capped, Generator, Word};
use crate::covering::{cover_report, is_normal, true_monodromy_order, CoverSpec, DEFAULT_GROUP_CAP};
use crate::multigraph::{cycle_graph, export_dot, verify_isomorphism, PortMatching, RotationGraph, VertexMap, VertexOrder};
use crate::products::{c4, concatenation_label, double_rotation_check, generalized_replacement, zigzag, zigzag_rotation_table};
use crate::reproduce::{run_checks, Reference, BUNDLED_REFERENCE};
use crate::zeta::{
    artin_reciprocal, characters, divisibility_check, factorization_check, ihara_reciprocal,
    nonbacktracking_reciprocal_capped, Divisibility, GroupLabeling, IntPolynomial, NONBACKTRACKING_CAP,
};
use crate::{Error, CAP_ENV_VAR, DEFAULT_MAX_LEVEL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "zetagraph", version, about = "Basilica Schreier graphs, their products and covers, and exact zeta functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProductKind {
    Grp,
    Zigzag,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the Schreier graph Γ_n.
    Schreier {
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build Γ_n ⓖ Γ_r or Γ_n ⓩ C₄ together with a certificate.
    Product {
        #[arg(long, value_enum)]
        kind: ProductKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value = "c4")]
        partner: String,
        /// Graph goes here, the certificate to `<out>.cert.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ihara zeta reciprocal of a graph, or Artin L-function reciprocals of a cover.
    Zeta {
        #[arg(long, conflicts_with = "artin", required_unless_present = "artin")]
        graph: Option<String>,
        /// `<cover spec>/<base spec>`.
        #[arg(long)]
        artin: Option<String>,
        #[arg(long, requires = "artin")]
        check_factorization: bool,
        #[arg(long, requires = "artin")]
        check_divisibility: bool,
    },
    /// Covering validity, sheets, Frobenius permutations, monodromy, normality.
    Cover {
        #[arg(long)]
        cover: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        report: bool,
        /// Comma-separated sheet keys.
        #[arg(long)]
        sheet_order: Option<String>,
    },
    /// Recompute every stored reference value and print one line per check.
    VerifyPaper {
        /// Restrict to one check group.
        #[arg(long)]
        only: Option<String>,
        /// Reference file to use instead of the bundled one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn verify(message: impl Into<String>) -> Self {
        Self { code: EXIT_VERIFY, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LevelOutOfRange { .. } | Error::CapExceeded(_) | Error::GroupCapExceeded { .. } => EXIT_CAP,
            Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::UnknownVertex(_) | Error::IncompleteOrder { .. } => {
                EXIT_USAGE
            }
            _ => EXIT_VERIFY,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

type CliResult = Result<i32, Failure>;

/// Parsed `--graph` argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Gamma(usize),
    Zigzag(usize),
    Grp(usize, usize),
    Cycle(usize),
    File(PathBuf),
}

impl GraphSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let num = |s: &str| s.parse::<usize>().map_err(|_| format!("{s:?} is not a count in graph spec {text:?}"));
        let parts: Vec<&str> = text.splitn(2, ':').collect();
        let spec = match parts.as_slice() {
            ["gamma", n] => Self::Gamma(num(n)?),
            ["zigzag", n] => Self::Zigzag(num(n)?),
            ["grp", rest] => {
                let (n, r) = rest.split_once(':').ok_or_else(|| format!("grp spec needs n and r: {text:?}"))?;
                Self::Grp(num(n)?, num(r)?)
            }
            ["cycle", m] => Self::Cycle(num(m)?),
            ["file", path] if !path.is_empty() => Self::File(PathBuf::from(path)),
            _ => return Err(format!("unknown graph spec {text:?} (expected gamma:n, zigzag:n, grp:n:r, cycle:m or file:path)")),
        };
        match spec {
            Self::Gamma(0) | Self::Zigzag(0) | Self::Grp(0, _) | Self::Grp(_, 0) => {
                Err(format!("levels in {text:?} must be at least 1"))
            }
            Self::Cycle(m) if m < 3 => Err(format!("cycle length in {text:?} must be at least 3")),
            s => Ok(s),
        }
    }

    fn check_cap(&self, cap: usize) -> Result<(), Error> {
        let level = match *self {
            Self::Gamma(n) | Self::Zigzag(n) => n,
            Self::Grp(n, r) => n + r,
            Self::Cycle(m) => return if m > 1 << cap { Err(Error::CapExceeded(format!("cycle length {m}"))) } else { Ok(()) },
            Self::File(_) => return Ok(()),
        };
        if level > cap {
            return Err(Error::LevelOutOfRange { level, cap });
        }
        Ok(())
    }

    pub fn build(&self, cap: usize) -> Result<RotationGraph, Error> {
        self.check_cap(cap)?;
        match self {
            Self::Gamma(n) => build_schreier_capped(*n, cap),
            Self::Zigzag(n) => zigzag(&build_schreier_capped(*n, cap)?, &c4()),
            Self::Grp(n, r) => generalized_replacement(*n, *r),
            Self::Cycle(m) => cycle_graph(*m),
            Self::File(path) => RotationGraph::from_json(&fs::read_to_string(path)?),
        }
    }
}

fn parse_spec(text: &str) -> Result<GraphSpec, Failure> {
    GraphSpec::parse(text).map_err(Failure::usage)
}

/// The cover described by a `(cover, base)` spec pair.
pub fn cover_from_specs(cover: &GraphSpec, base: &GraphSpec, cap: usize) -> Result<CoverSpec, Error> {
    cover.check_cap(cap)?;
    base.check_cap(cap)?;
    match (cover, base) {
        (c, b) if c == b => Ok(CoverSpec::identity(&c.build(cap)?)),
        (GraphSpec::Gamma(n), GraphSpec::Gamma(r)) if n > r => CoverSpec::schreier_cover(n - r, *r),
        (GraphSpec::Zigzag(n), GraphSpec::Zigzag(r)) if n > r => CoverSpec::zigzag_cover(n - r, *r),
        (GraphSpec::Grp(n, r), GraphSpec::Gamma(r2)) if r == r2 => CoverSpec::replacement_cover(*n, *r),
        _ => Err(Error::Parse(format!(
            "no known projection from {cover:?} to {base:?}; supported: gamma:N over gamma:R, zigzag:N over zigzag:R, grp:n:r over gamma:r"
        ))),
    }
}

/// Split `<cover>/<base>` at the last `/` that starts a valid spec.
fn split_cover_pair(text: &str) -> Result<(GraphSpec, GraphSpec), Failure> {
    text.match_indices('/')
        .rev()
        .find_map(|(i, _)| Some((GraphSpec::parse(&text[..i]).ok()?, GraphSpec::parse(&text[i + 1..]).ok()?)))
        .ok_or_else(|| Failure::usage(format!("--artin expects <cover spec>/<base spec>, got {text:?}")))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_schreier(level: usize, format: Format, path: Option<&Path>, cap: usize, out: &mut dyn Write) -> CliResult {
    if level == 0 {
        return Err(Failure::usage("--level must be at least 1"));
    }
    let g = build_schreier_capped(level, cap)?;
    let text = match format {
        Format::Json => g.to_json() + "\n",
        Format::Dot => export_dot(&g),
    };
    emit(out, path, &text)?;
    Ok(EXIT_OK)
}

fn cmd_product(
    kind: ProductKind,
    n: usize,
    r: Option<usize>,
    partner: &str,
    path: Option<&Path>,
    cap: usize,
    out: &mut dyn Write,
) -> CliResult {
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let (graph, certificate, ok) = match kind {
        ProductKind::Grp => {
            let r = r.ok_or_else(|| Failure::usage("--kind grp needs --r"))?;
            if r == 0 {
                return Err(Failure::usage("--r must be at least 1"));
            }
            GraphSpec::Grp(n, r).check_cap(cap)?;
            let p = generalized_replacement(n, r)?;
            let target = build_schreier_capped(n + r, cap)?;
            let f = VertexMap::from_fn(&p, &target, concatenation_label)?;
            let verdict = verify_isomorphism(&p, &target, &f, PortMatching::SameLabel);
            let ok = verdict.is_isomorphic();
            let map: serde_json::Map<String, Value> = p
                .vertices()
                .iter()
                .enumerate()
                .map(|(v, label)| (label.clone(), Value::from(target.label(f.apply(v)))))
                .collect();
            let cert = json!({
                "kind": "grp",
                "n": n,
                "r": r,
                "target": format!("gamma:{}", n + r),
                "map": "f(v,u) = uv",
                "images": map,
                "port_respecting": true,
                "verdict": format!("{verdict:?}"),
                "isomorphic": ok,
                "summary": format!("isomorphic to Γ_{}: {ok}", n + r),
            });
            (p, cert, ok)
        }
        ProductKind::Zigzag => {
            if r.is_some() {
                return Err(Failure::usage("--kind zigzag takes --partner, not --r"));
            }
            if !partner.eq_ignore_ascii_case("c4") {
                return Err(Failure::usage(format!("unsupported zig-zag partner {partner:?}; only c4 is available")));
            }
            GraphSpec::Zigzag(n).check_cap(cap)?;
            let g1 = build_schreier_capped(n, cap)?;
            let involution = double_rotation_check(&zigzag_rotation_table(&g1, &c4())?);
            let z = zigzag(&g1, &c4())?;
            let degree = z.is_regular();
            let connected = z.is_connected();
            let ok = involution && degree == Some(4) && z.vertex_count() == 4 * g1.vertex_count();
            let cert = json!({
                "kind": "zigzag",
                "n": n,
                "partner": "c4",
                "vertices": z.vertex_count(),
                "edges": z.edge_count(),
                "rotation_is_involution": involution,
                "regular_degree": degree,
                "connected": connected,
                "valid": ok,
            });
            (z, cert, ok)
        }
    };
    let graph_value: Value = serde_json::from_str(&graph.to_json()).map_err(Error::from)?;
    match path {
        Some(p) => {
            fs::write(p, graph.to_json() + "\n")?;
            let mut cert_path = p.as_os_str().to_owned();
            cert_path.push(".cert.json");
            fs::write(PathBuf::from(cert_path), to_json(&certificate)?)?;
        }
        None => out.write_all(to_json(&json!({"graph": graph_value, "certificate": certificate}))?.as_bytes())?,
    }
    if ok {
        Ok(EXIT_OK)
    } else {
        Err(Failure::verify(format!("product certificate failed: {certificate}")))
    }
}

fn poly_json(p: &IntPolynomial) -> Value {
    json!({ "coefficients": p.to_decimal_strings(), "degree": p.degree(), "text": p.to_string() })
}

fn graph_zeta_report(spec_text: &str, cap: usize) -> Result<(Value, bool), Failure> {
    let spec = parse_spec(spec_text)?;
    let g = spec.build(cap)?;
    let recip = ihara_reciprocal(&g, &VertexOrder::identity(&g))?;
    let oracle = match nonbacktracking_reciprocal_capped(&g, NONBACKTRACKING_CAP) {
        Ok(nb) => Some(nb == recip),
        Err(Error::CapExceeded(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let report = json!({
        "graph": spec_text,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "reciprocal": poly_json(&recip),
        "oracle_agrees": oracle,
    });
    Ok((report, oracle != Some(false)))
}

fn artin_report(pair: &str, factorization: bool, divisibility: bool, cap: usize) -> Result<(Value, bool), Failure> {
    let (cover_spec, base_spec) = split_cover_pair(pair)?;
    let c = cover_from_specs(&cover_spec, &base_spec, cap)?;
    let lab = GroupLabeling::from_deck_group(&c)?;
    let group = lab.group();
    let mut l_functions = Vec::new();
    for chi in characters(group)? {
        let values: serde_json::Map<String, Value> =
            (0..group.order()).map(|g| (group.name(g).to_string(), Value::from(chi.value(g)))).collect();
        l_functions.push(json!({
            "character": values,
            "trivial": chi.is_trivial(),
            "reciprocal": poly_json(&artin_reciprocal(&c, &lab, &chi)?),
        }));
    }
    let cover_zeta = ihara_reciprocal(&c.cover, &VertexOrder::identity(&c.cover))?;
    let base_zeta = ihara_reciprocal(&c.base, &VertexOrder::identity(&c.base))?;
    let mut checks = serde_json::Map::new();
    let mut ok = true;
    if factorization {
        let pass = factorization_check(&c, &lab)?;
        ok &= pass;
        checks.insert("factorization".into(), Value::from(pass));
    }
    if divisibility {
        let pass = matches!(divisibility_check(&base_zeta, &cover_zeta)?, Divisibility::Quotient(_));
        ok &= pass;
        checks.insert("divisibility".into(), Value::from(pass));
    }
    let report = json!({
        "cover": pair,
        "sheets": c.sheet_keys(),
        "group": group.names(),
        "l_functions": l_functions,
        "cover_reciprocal": poly_json(&cover_zeta),
        "base_reciprocal": poly_json(&base_zeta),
        "checks": checks,
    });
    Ok((report, ok))
}

fn cmd_zeta(
    graph: Option<&str>,
    artin: Option<&str>,
    factorization: bool,
    divisibility: bool,
    cap: usize,
    out: &mut dyn Write,
) -> CliResult {
    let (report, ok) = match (graph, artin) {
        (Some(g), None) => graph_zeta_report(g, cap)?,
        (None, Some(pair)) => artin_report(pair, factorization, divisibility, cap)?,
        _ => return Err(Failure::usage("give exactly one of --graph or --artin")),
    };
    out.write_all(to_json(&report)?.as_bytes())?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn a_fixed(key: &str) -> Option<bool> {
    let w: Word = key.parse().ok()?;
    Some(apply(Generator::A, &w).ok()? == w)
}

fn cmd_cover(cover: &str, base: &str, report: bool, sheet_order: Option<&str>, cap: usize, out: &mut dyn Write) -> CliResult {
    let (cover_spec, base_spec) = (parse_spec(cover)?, parse_spec(base)?);
    let mut c = cover_from_specs(&cover_spec, &base_spec, cap)?;
    if let Some(order) = sheet_order {
        let keys: Vec<&str> = order.split(',').map(str::trim).collect();
        c = c.with_sheet_order(&keys).map_err(|e| Failure::usage(e.to_string()))?;
    }
    let value = if report {
        let mut v = serde_json::to_value(cover_report(&c, cover, base, DEFAULT_GROUP_CAP)?).map_err(Error::from)?;
        if let Some(rows) = v.get_mut("sheets").and_then(Value::as_array_mut) {
            for row in rows {
                let fixed = row.get("key").and_then(Value::as_str).and_then(a_fixed);
                if let (Some(obj), Some(fixed)) = (row.as_object_mut(), fixed) {
                    obj.insert("a_fixed".into(), Value::from(fixed));
                }
            }
        }
        v
    } else {
        json!({
            "cover": cover,
            "base": base,
            "covering": crate::covering::verify_covering(&c),
            "sheets": c.sheet_count(),
            "monodromy_order": true_monodromy_order(&c, DEFAULT_GROUP_CAP)?.to_string(),
            "normal": is_normal(&c)?,
        })
    };
    out.write_all(to_json(&value)?.as_bytes())?;
    if value.get("covering").and_then(Value::as_bool) == Some(false) {
        return Err(Failure::verify("projection is not a covering"));
    }
    Ok(EXIT_OK)
}

fn cmd_verify(only: Option<&str>, golden: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let text = match golden {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())))?,
        None => BUNDLED_REFERENCE.to_string(),
    };
    let reference = match Reference::parse(&text) {
        Ok(r) => r,
        Err(e) => {
            writeln!(out, "FAIL  reference file: {e}")?;
            return Ok(EXIT_VERIFY);
        }
    };
    let results = run_checks(&reference, only).map_err(|e| Failure::usage(e.to_string()))?;
    for r in &results {
        writeln!(out, "{r}")?;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} checks passed", results.len())?;
    Ok(if passed == results.len() { EXIT_OK } else { EXIT_VERIFY })
}

/// Level cap from [`CAP_ENV_VAR`], falling back to [`DEFAULT_MAX_LEVEL`].
pub fn cap_from_env() -> Result<usize, String> {
    match std::env::var(CAP_ENV_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c >= 1)
            .ok_or_else(|| format!("{CAP_ENV_VAR}={v:?} is not a positive integer")),
        Err(_) => Ok(DEFAULT_MAX_LEVEL),
    }
}

/// Run the CLI on `args` (including the program name) with the cap taken
/// from the environment. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match cap_from_env() {
        Ok(cap) => run_with_cap(args, cap, out, err),
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

pub fn run_with_cap<I, T>(args: I, cap: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Schreier { level, format, out: path } => cmd_schreier(level, format, path.as_deref(), cap, out),
        Command::Product { kind, n, r, partner, out: path } => {
            cmd_product(kind, n, r, &partner, path.as_deref(), cap, out)
        }
        Command::Zeta { graph, artin, check_factorization, check_divisibility } => cmd_zeta(
            graph.as_deref(),
            artin.as_deref(),
            check_factorization,
            check_divisibility,
            cap,
            out,
        ),
        Command::Cover { cover, base, report, sheet_order } => {
            cmd_cover(&cover, &base, report, sheet_order.as_deref(), cap, out)
        }
        Command::VerifyPaper { only, golden } => cmd_verify(only.as_deref(), golden.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_specs() {
        assert_eq!(GraphSpec::parse("gamma:3"), Ok(GraphSpec::Gamma(3)));
        assert_eq!(GraphSpec::parse("grp:1:2"), Ok(GraphSpec::Grp(1, 2)));
        assert_eq!(GraphSpec::parse("file:a/b.json"), Ok(GraphSpec::File("a/b.json".into())));
        assert!(GraphSpec::parse("gamma:0").is_err());
        assert!(GraphSpec::parse("cycle:2").is_err());
        assert!(GraphSpec::parse("torus:3").is_err());
    }

    #[test]
    fn cover_pair_split_prefers_a_valid_base() {
        let (c, b) = split_cover_pair("file:dir/x.json/gamma:2").unwrap();
        assert_eq!(c, GraphSpec::File("dir/x.json".into()));
        assert_eq!(b, GraphSpec::Gamma(2));
        assert!(split_cover_pair("gamma:3").is_err());
    }

    #[test]
    fn cap_errors_map_to_exit_four() {
        let f: Failure = Error::LevelOutOfRange { level: 20, cap: 12 }.into();
        assert_eq!(f.code, EXIT_CAP);
    }
}
