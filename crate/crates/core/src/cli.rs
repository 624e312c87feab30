//! Command-line surface. Exit codes: 0 success, 1 verification mismatch,
//! 2 invalid input.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{b_decomposition, comp_factors_h0, g_decomposition, BDecomposition};
use crate::curve::{action_matrix, degree, enumerate_basis, GroupElement};
use crate::error::{invalid, Error, Result};
use crate::ff::{make_field, FieldCtx, FqElem};
use crate::modrep::{decompose_b_oracle, h0_module, verify_full, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Group {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "G", alias = "g")]
    G,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Ordered basis of holomorphic m-polydifferentials with degrees.
    Basis {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        m: u32,
    },
    /// Matrix of a group element acting on the basis.
    Action {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        m: u32,
        /// α β γ δ: integers mod p, or comma-separated coefficients when r > 1.
        #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["ALPHA", "BETA", "GAMMA", "DELTA"])]
        element: Vec<String>,
    },
    /// Multiplicity table over B or G (q = p).
    Decompose {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "B")]
        group: Group,
        /// Also run the brute-force oracle and diff (B only).
        #[arg(long)]
        oracle: bool,
    },
    /// Composition-factor multiplicities d_t over G.
    Factors {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
    },
    /// Oracle-versus-closed-form report for one (p, m).
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
    },
    /// `verify` over a grid of (p, m).
    Sweep {
        #[arg(long, value_delimiter = ',', default_values_t = vec![3, 5, 7])]
        p: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3])]
        m: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "drinfeld",
    version,
    about = "Polydifferentials on the Drinfeld curve as SL2 modules"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: String,
    /// Short message for standard error; empty on success.
    pub diagnostic: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub i: u32,
    pub j: u32,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub q: u32,
    pub m: u32,
    pub dim: usize,
    pub basis: Vec<BasisEntry>,
}

/// Field element: a residue when r = 1, else coefficients low-degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Prime(u32),
    Poly(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub p: u32,
    pub r: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    pub m: u32,
    pub element: Vec<Entry>,
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub a: u32,
    pub b: u32,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BTableDoc {
    pub summands: Vec<Summand>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<Summand>>,
    /// First differing cell; empty when the tables agree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff: Option<Vec<CellDiff>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDiff {
    pub a: u32,
    pub b: u32,
    pub closed_form: u32,
    pub oracle: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjEntry {
    pub t: u32,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub t: u32,
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GTableDoc {
    pub p: u32,
    pub m: u32,
    pub nonprojective: Vec<Summand>,
    pub projective: Vec<ProjEntry>,
    pub factors: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorsDoc {
    pub p: u32,
    pub m: u32,
    pub d: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub passed: bool,
    pub points: Vec<VerifyReport>,
}

fn summands(d: &BDecomposition) -> Vec<Summand> {
    d.summands()
        .map(|(l, n)| Summand {
            a: l.a,
            b: l.b,
            mult: n,
        })
        .collect()
}

fn entry(f: &FieldCtx, e: FqElem) -> Entry {
    match f.as_prime(e) {
        Some(v) if f.r() == 1 => Entry::Prime(v),
        _ => Entry::Poly(f.coeffs(e)),
    }
}

fn parse_element(f: &FieldCtx, raw: &str) -> Result<FqElem> {
    let coeffs: Vec<i64> = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| invalid(format!("cannot parse field entry {raw:?}")))
        })
        .collect::<Result<_>>()?;
    if f.r() == 1 {
        if coeffs.len() != 1 {
            return Err(invalid(format!(
                "{raw:?}: expected one integer for a prime field"
            )));
        }
        return Ok(f.from_int(coeffs[0]));
    }
    f.from_coeffs(&coeffs)
}

/// A computed document in all three renderings.
trait Document: Serialize {
    fn csv(&self) -> String;
    fn text(&self) -> String;
}

impl Document for BasisDoc {
    fn csv(&self) -> String {
        let mut s = String::from("i,j,degree\n");
        for e in &self.basis {
            let _ = writeln!(s, "{},{},{}", e.i, e.j, e.degree);
        }
        s
    }
    fn text(&self) -> String {
        let mut s = format!("q = {}, m = {}, dim = {}\n", self.q, self.m, self.dim);
        for e in &self.basis {
            let _ = writeln!(s, "  ω({}, {})  degree {}", e.i, e.j, e.degree);
        }
        s
    }
}

fn entry_str(e: &Entry) -> String {
    match e {
        Entry::Prime(v) => v.to_string(),
        Entry::Poly(c) => c.iter().map(u32::to_string).collect::<Vec<_>>().join(":"),
    }
}

impl Document for ActionDoc {
    fn csv(&self) -> String {
        let mut s = String::from("row,col,value\n");
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let _ = writeln!(s, "{i},{j},{}", entry_str(e));
            }
        }
        s
    }
    fn text(&self) -> String {
        let mut s = format!(
            "q = {} (p = {}, r = {}), m = {}\n",
            self.q, self.p, self.r, self.m
        );
        for row in &self.matrix {
            let _ = writeln!(
                s,
                "  {}",
                row.iter().map(entry_str).collect::<Vec<_>>().join(" ")
            );
        }
        s
    }
}

impl Document for BTableDoc {
    fn csv(&self) -> String {
        let mut s = String::from("source,a,b,mult\n");
        for x in &self.summands {
            let _ = writeln!(s, "closed_form,{},{},{}", x.a, x.b, x.mult);
        }
        for x in self.oracle.iter().flatten() {
            let _ = writeln!(s, "oracle,{},{},{}", x.a, x.b, x.mult);
        }
        s
    }
    fn text(&self) -> String {
        let show = |v: &[Summand]| {
            v.iter()
                .map(|x| {
                    if x.mult == 1 {
                        format!("U({},{})", x.a, x.b)
                    } else {
                        format!("U({},{})^{}", x.a, x.b, x.mult)
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let mut s = format!("closed form: {}\n", show(&self.summands));
        if let Some(o) = &self.oracle {
            let _ = writeln!(s, "oracle:      {}", show(o));
        }
        for d in self.diff.iter().flatten() {
            let _ = writeln!(
                s,
                "mismatch at U({},{}): closed form {}, oracle {}",
                d.a, d.b, d.closed_form, d.oracle
            );
        }
        s
    }
}

impl Document for GTableDoc {
    fn csv(&self) -> String {
        let mut s = String::from("kind,a,b,t,mult\n");
        for x in &self.nonprojective {
            let _ = writeln!(s, "nonprojective,{},{},,{}", x.a, x.b, x.mult);
        }
        for x in &self.projective {
            let _ = writeln!(s, "projective,,,{},{}", x.t, x.n);
        }
        for x in &self.factors {
            let _ = writeln!(s, "factor,,,{},{}", x.t, x.d);
        }
        s
    }
    fn text(&self) -> String {
        let mut parts: Vec<String> = self
            .nonprojective
            .iter()
            .map(|x| format!("V({},{})^{}", x.a, x.b, x.mult))
            .collect();
        parts.extend(
            self.projective
                .iter()
                .map(|x| format!("P(V{})^{}", x.t, x.n)),
        );
        let d: Vec<String> = self.factors.iter().map(|x| x.d.to_string()).collect();
        format!(
            "p = {}, m = {}\n  {}\n  factors d = ({})\n",
            self.p,
            self.m,
            parts.join(" + "),
            d.join(", ")
        )
    }
}

impl Document for FactorsDoc {
    fn csv(&self) -> String {
        let mut s = String::from("t,d\n");
        for (k, d) in self.d.iter().enumerate() {
            let _ = writeln!(s, "{},{d}", k + 1);
        }
        s
    }
    fn text(&self) -> String {
        let d: Vec<String> = self.d.iter().map(u64::to_string).collect();
        format!("p = {}, m = {}: d = ({})\n", self.p, self.m, d.join(", "))
    }
}

fn report_rows(r: &VerifyReport, s: &mut String) {
    for c in &r.checks {
        let _ = writeln!(s, "{},{},{},{},{:?}", r.p, r.m, c.name, c.passed, c.detail);
    }
}

fn report_text(r: &VerifyReport, s: &mut String) {
    for c in &r.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "[{tag}] p = {}, m = {}: {} ({})",
            r.p, r.m, c.name, c.detail
        );
    }
}

impl Document for VerifyReport {
    fn csv(&self) -> String {
        let mut s = String::from("p,m,check,passed,detail\n");
        report_rows(self, &mut s);
        s
    }
    fn text(&self) -> String {
        let mut s = String::new();
        report_text(self, &mut s);
        s
    }
}

impl Document for SweepDoc {
    fn csv(&self) -> String {
        let mut s = String::from("p,m,check,passed,detail\n");
        self.points.iter().for_each(|r| report_rows(r, &mut s));
        s
    }
    fn text(&self) -> String {
        let mut s = String::new();
        self.points.iter().for_each(|r| report_text(r, &mut s));
        let _ = writeln!(
            s,
            "{}",
            if self.passed {
                "all points pass"
            } else {
                "some points FAIL"
            }
        );
        s
    }
}

fn render<D: Document>(doc: &D, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s =
                serde_json::to_string(doc).map_err(|e| Error::Inconsistency(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => doc.csv(),
        Format::Text => doc.text(),
    })
}

fn ok(document: String) -> Outcome {
    Outcome {
        exit_code: EXIT_OK,
        document,
        diagnostic: String::new(),
    }
}

fn verdict(passed: bool, document: String, diagnostic: impl FnOnce() -> String) -> Outcome {
    if passed {
        ok(document)
    } else {
        Outcome {
            exit_code: EXIT_MISMATCH,
            document,
            diagnostic: diagnostic(),
        }
    }
}

fn describe_failure(r: &VerifyReport) -> String {
    r.first_failure()
        .map(|c| format!("p = {}, m = {}: {} failed: {}", r.p, r.m, c.name, c.detail))
        .unwrap_or_default()
}

fn execute(config: &RunConfig) -> Result<Outcome> {
    let format = config.format;
    match &config.command {
        Command::Basis { p, r, m } => {
            let q = p.checked_pow(*r).ok_or_else(|| invalid("q overflows"))?;
            make_field(*p, *r)?;
            let basis = enumerate_basis(q, *m)?;
            let doc = BasisDoc {
                q,
                m: *m,
                dim: basis.len(),
                basis: basis
                    .indices()
                    .iter()
                    .map(|&x| BasisEntry {
                        i: x.i,
                        j: x.j,
                        degree: degree(x, q),
                    })
                    .collect(),
            };
            Ok(ok(render(&doc, format)?))
        }
        Command::Action { p, r, m, element } => {
            let field = Arc::new(make_field(*p, *r)?);
            if element.len() != 4 {
                return Err(invalid("--element needs four entries"));
            }
            let e: Vec<FqElem> = element
                .iter()
                .map(|s| parse_element(&field, s))
                .collect::<Result<_>>()?;
            let sigma = GroupElement::new(&field, e[0], e[1], e[2], e[3])?;
            let basis = enumerate_basis(field.q(), *m)?;
            let mat = action_matrix(&field, &sigma, &basis)?;
            let doc = ActionDoc {
                p: *p,
                r: *r,
                q: field.q(),
                modulus: field.modulus().to_vec(),
                m: *m,
                element: e.iter().map(|&x| entry(&field, x)).collect(),
                matrix: (0..mat.rows())
                    .map(|i| mat.row(i).iter().map(|&x| entry(&field, x)).collect())
                    .collect(),
            };
            Ok(ok(render(&doc, format)?))
        }
        Command::Decompose {
            p,
            m,
            group: Group::B,
            oracle,
        } => {
            let closed = b_decomposition(*m, *p)?;
            if !oracle {
                let doc = BTableDoc {
                    summands: summands(&closed),
                    oracle: None,
                    diff: None,
                };
                return Ok(ok(render(&doc, format)?));
            }
            let found = decompose_b_oracle(&h0_module(*p, *m)?.restrict_to_b())?;
            let diff: Vec<CellDiff> = closed
                .first_difference(&found)
                .map(|(l, c, o)| CellDiff {
                    a: l.a,
                    b: l.b,
                    closed_form: c,
                    oracle: o,
                })
                .into_iter()
                .collect();
            let passed = diff.is_empty();
            let msg = diff.first().map(|d| {
                format!(
                    "first divergent cell U_{{{},{}}}: closed form {}, oracle {}",
                    d.a, d.b, d.closed_form, d.oracle
                )
            });
            let doc = BTableDoc {
                summands: summands(&closed),
                oracle: Some(summands(&found)),
                diff: Some(diff),
            };
            Ok(verdict(passed, render(&doc, format)?, || {
                msg.unwrap_or_default()
            }))
        }
        Command::Decompose {
            p,
            m,
            group: Group::G,
            oracle,
        } => {
            if *oracle {
                return Err(invalid("--oracle applies to --group B; use `verify` for G"));
            }
            let g = g_decomposition(*m, *p)?;
            let doc = GTableDoc {
                p: *p,
                m: *m,
                nonprojective: g
                    .nonproj
                    .iter()
                    .map(|(l, &n)| Summand {
                        a: l.a,
                        b: l.b,
                        mult: n,
                    })
                    .collect(),
                projective: g
                    .proj
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(k, &n)| ProjEntry { t: k as u32 + 1, n })
                    .collect(),
                factors: g
                    .factors
                    .as_slice()
                    .iter()
                    .enumerate()
                    .map(|(k, &d)| FactorEntry { t: k as u32 + 1, d })
                    .collect(),
            };
            Ok(ok(render(&doc, format)?))
        }
        Command::Factors { p, m } => {
            let d = comp_factors_h0(*m, *p)?;
            Ok(ok(render(
                &FactorsDoc {
                    p: *p,
                    m: *m,
                    d: d.as_slice().to_vec(),
                },
                format,
            )?))
        }
        Command::Verify { p, m } => {
            let report = verify_full(*p, *m)?;
            let msg = describe_failure(&report);
            Ok(verdict(report.passed(), render(&report, format)?, || msg))
        }
        Command::Sweep { p, m } => {
            let grid: Vec<(u32, u32)> = p
                .iter()
                .flat_map(|&pp| m.iter().map(move |&mm| (pp, mm)))
                .collect();
            let points: Vec<VerifyReport> = grid
                .par_iter()
                .map(|&(pp, mm)| verify_full(pp, mm))
                .collect::<Result<_>>()?;
            let passed = points.iter().all(VerifyReport::passed);
            let msg = points
                .iter()
                .find(|r| !r.passed())
                .map(describe_failure)
                .unwrap_or_default();
            Ok(verdict(
                passed,
                render(&SweepDoc { passed, points }, format)?,
                || msg,
            ))
        }
    }
}

/// Runs one command. Library errors map to exit 2, except internal
/// inconsistencies, which are reported as mismatches.
pub fn run(config: &RunConfig) -> Outcome {
    if let Command::Basis { r, .. } | Command::Action { r, .. } = &config.command {
        if *r == 0 {
            return Outcome {
                exit_code: EXIT_INVALID,
                document: String::new(),
                diagnostic: "r must be at least 1".into(),
            };
        }
    }
    match execute(config) {
        Ok(outcome) => outcome,
        Err(e @ Error::Inconsistency(_)) => Outcome {
            exit_code: EXIT_MISMATCH,
            document: String::new(),
            diagnostic: e.to_string(),
        },
        Err(e) => Outcome {
            exit_code: EXIT_INVALID,
            document: String::new(),
            diagnostic: e.to_string(),
        },
    }
}

/// Parses `args`, runs, and writes the document to standard output or
/// `--out`. Returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.exit_code() == 0 {
                EXIT_OK
            } else {
                EXIT_INVALID
            };
        }
    };
    let outcome = run(&config);
    if !outcome.document.is_empty() {
        match &config.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &outcome.document) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return EXIT_INVALID;
                }
            }
            None => print!("{}", outcome.document),
        }
    }
    if !outcome.diagnostic.is_empty() {
        eprintln!("{}", outcome.diagnostic);
    }
    outcome.exit_code
}
