//! Instance files, run/sweep drivers and their reports.
//!
//! Instance file grammar, one `key = value` per entry:
//!
//! ```text
//! # comment to end of line
//! name = "axes"
//! n = 2
//! variables = ["x", "y"]          # optional, defaults to x1..xn
//! generators = ["x", "y"]         # lists may span several lines
//! expect = ["3:2:NONVANISHING"]   # optional, p:i:verdict
//! ```

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{default_var_names, parse_int_poly, IntPoly};
use crate::vanish::{
    build_instance_with, decide_vanishing_with, recheck_witness, BoundSpec, Counters, DecideOptions,
    InstanceOptions, Mode, Outcome, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub p: u64,
    pub degree: usize,
    pub verdict: Outcome,
}

#[derive(Clone, Debug)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub n: usize,
    pub variables: Vec<String>,
    pub generator_text: Vec<String>,
    pub generators: Vec<IntPoly>,
    pub expect: Vec<Expectation>,
}

/// A quoted string with the line and column of its first character.
type Spanned = (String, usize, usize);

#[derive(Clone, Debug)]
enum Value {
    Int(u64),
    Str(String),
    List(Vec<Spanned>),
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips blanks and comments; newlines too when `newlines` is set.
    fn skip(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n') {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            s.push(c);
            self.bump();
        }
        s
    }

    fn string(&mut self) -> Result<Spanned> {
        let (line, col) = (self.line, self.col);
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok((s, line, col + 1)),
                Some('\n') | None => {
                    return Err(Error::Parse {
                        line,
                        column: col,
                        message: "unterminated string".into(),
                    })
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn value(&mut self) -> Result<Value> {
        match self.peek() {
            Some('"') => {
                let (s, ..) = self.string()?;
                Ok(Value::Str(s))
            }
            Some('[') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip(true);
                    match self.peek() {
                        Some(']') => {
                            self.bump();
                            return Ok(Value::List(items));
                        }
                        Some('"') => items.push(self.string()?),
                        _ => return Err(self.err("expected a quoted string or `]`")),
                    }
                    self.skip(true);
                    match self.peek() {
                        Some(',') => {
                            self.bump();
                        }
                        Some(']') => {}
                        _ => return Err(self.err("expected `,` or `]`")),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let (line, col) = (self.line, self.col);
                let digits = self.ident();
                digits.parse().map(Value::Int).map_err(|_| Error::Parse {
                    line,
                    column: col,
                    message: format!("`{digits}` is not a nonnegative integer"),
                })
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

fn parse_expectation(s: &str, line: usize, column: usize) -> Result<Expectation> {
    let bad = || Error::Parse {
        line,
        column,
        message: format!("expectation `{s}` is not p:i:VERDICT"),
    };
    let mut it = s.split(':');
    let (p, i, v) = (it.next(), it.next(), it.next());
    if it.next().is_some() {
        return Err(bad());
    }
    let verdict = match v.ok_or_else(bad)?.trim() {
        "VANISHES" => Outcome::Vanishes,
        "NONVANISHING" => Outcome::Nonvanishing,
        "INCONCLUSIVE" => Outcome::Inconclusive,
        _ => return Err(bad()),
    };
    Ok(Expectation {
        p: p.and_then(|p| p.trim().parse().ok()).ok_or_else(bad)?,
        degree: i.and_then(|i| i.trim().parse().ok()).ok_or_else(bad)?,
        verdict,
    })
}

pub fn parse_instance_str(src: &str) -> Result<InstanceFile> {
    let mut lx = Lexer::new(src);
    let mut seen = HashSet::new();
    let mut name = None;
    let mut n = None;
    let mut variables: Option<(Vec<Spanned>, usize, usize)> = None;
    let mut generators = None;
    let mut expect = Vec::new();
    loop {
        lx.skip(true);
        if lx.peek().is_none() {
            break;
        }
        let (kl, kc) = (lx.line, lx.col);
        let key = lx.ident();
        if key.is_empty() {
            return Err(lx.err("expected a key"));
        }
        if !seen.insert(key.clone()) {
            return Err(Error::Parse {
                line: kl,
                column: kc,
                message: format!("duplicate key `{key}`"),
            });
        }
        lx.skip(false);
        if lx.bump() != Some('=') {
            return Err(lx.err("expected `=`"));
        }
        lx.skip(false);
        let (vl, vc) = (lx.line, lx.col);
        let value = lx.value()?;
        let wrong = |what: &str| Error::Parse {
            line: vl,
            column: vc,
            message: format!("`{key}` expects {what}"),
        };
        match key.as_str() {
            "name" => match value {
                Value::Str(s) => name = Some(s),
                _ => return Err(wrong("a string")),
            },
            "n" => match value {
                Value::Int(v) if v >= 1 => n = Some(v as usize),
                _ => return Err(wrong("a positive integer")),
            },
            "variables" => match value {
                Value::List(items) => variables = Some((items, vl, vc)),
                _ => return Err(wrong("a list of strings")),
            },
            "generators" => match value {
                Value::List(items) => generators = Some((items, vl, vc)),
                _ => return Err(wrong("a list of strings")),
            },
            "expect" => match value {
                Value::List(items) => {
                    for (s, l, c) in items {
                        expect.push(parse_expectation(&s, l, c)?);
                    }
                }
                _ => return Err(wrong("a list of strings")),
            },
            _ => {
                return Err(Error::Parse {
                    line: kl,
                    column: kc,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
        lx.skip(false);
        match lx.peek() {
            None | Some('\n') => {}
            _ => return Err(lx.err("trailing characters after value")),
        }
    }
    let end = |message: &str| Error::Parse {
        line: lx.line,
        column: lx.col,
        message: message.into(),
    };
    let n = n.ok_or_else(|| end("missing key `n`"))?;
    let variables = match variables {
        None => default_var_names(n),
        Some((items, l, c)) => {
            if items.len() != n {
                return Err(Error::Parse {
                    line: l,
                    column: c,
                    message: format!("{} variable names for n = {n}", items.len()),
                });
            }
            let mut uniq = HashSet::new();
            for (v, l, c) in &items {
                let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !ok || !uniq.insert(v.clone()) {
                    return Err(Error::Parse {
                        line: *l,
                        column: *c,
                        message: format!("invalid or repeated variable name `{v}`"),
                    });
                }
            }
            items.into_iter().map(|(v, ..)| v).collect()
        }
    };
    let (items, gl, gc) = generators.ok_or_else(|| end("missing key `generators`"))?;
    if items.is_empty() {
        return Err(Error::Parse {
            line: gl,
            column: gc,
            message: "at least one generator is required".into(),
        });
    }
    let mut polys = Vec::with_capacity(items.len());
    for (s, l, c) in &items {
        let f = parse_int_poly(s, &variables).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::Parse {
                line: *l,
                column: c + column - 1,
                message,
            },
            other => other,
        })?;
        polys.push(f);
    }
    Ok(InstanceFile {
        name,
        n,
        variables,
        generator_text: items.into_iter().map(|(s, ..)| s).collect(),
        generators: polys,
        expect,
    })
}

pub fn parse_instance(path: impl AsRef<Path>) -> Result<InstanceFile> {
    parse_instance_str(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub prime: u64,
    pub degree: usize,
    pub mode: Mode,
    pub bound: BoundSpec,
    pub max_steps: u32,
    pub prune: bool,
    /// Omit wall-clock timings so that reports are reproducible byte for byte.
    pub deterministic: bool,
}

impl RunOptions {
    pub fn new(prime: u64, degree: usize) -> Self {
        RunOptions {
            prime,
            degree,
            mode: Mode::Streaming,
            bound: BoundSpec::FiniteLength,
            max_steps: 4,
            prune: false,
            deterministic: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance: Option<String>,
    pub n: usize,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub p: u64,
    pub degree: usize,
    pub max_steps: u32,
    pub witness_confirmed: Option<bool>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build_ms: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.verdict.result)
    }

    pub fn summary(&self) -> String {
        let v = &self.verdict;
        let mut out = format!(
            "{}: H^{} over F_{} ({} mode, bound {}): {}\n",
            self.instance.as_deref().unwrap_or("instance"),
            self.degree,
            self.p,
            v.mode,
            v.bound,
            v.result
        );
        if let (Some(s), Some(b)) = (v.streaming_result, v.baseline_result) {
            out += &format!("  streaming {s}, baseline {b}\n");
        }
        if let Some(r) = v.r {
            out += &format!("  stabilization index r = {r}\n");
        }
        if let Some(u) = v.u {
            out += &format!("  bound u = {u}\n");
        }
        if let Some(w) = &v.witness {
            out += &format!(
                "  witness: j = {}, offset {:?}, generator {}{}\n",
                w.j,
                w.offset,
                w.generator,
                match self.witness_confirmed {
                    Some(true) => " (rechecked)",
                    Some(false) => " (RECHECK FAILED)",
                    None => "",
                }
            );
        }
        let c = &v.counters;
        out += &format!(
            "  tuples {}, compositions {}, peak live monomials {}, max degree {} (bound {})\n",
            c.tuples, c.compositions, c.peak_live_monomials, c.max_degree, c.degree_bound
        );
        for w in &v.warnings {
            out += &format!("  warning: {w}\n");
        }
        for n in &v.notes {
            out += &format!("  note: {n}\n");
        }
        out
    }
}

pub fn exit_code(result: Outcome) -> i32 {
    match result {
        Outcome::Vanishes => 0,
        Outcome::Nonvanishing => 1,
        Outcome::Inconclusive => 2,
    }
}

pub fn run_instance(file: &InstanceFile, opts: &RunOptions) -> Result<Report> {
    let t = Instant::now();
    let mut inst = build_instance_with(
        &file.generators,
        opts.prime,
        opts.degree,
        Some(file.variables.clone()),
        InstanceOptions { prune: opts.prune },
    )?;
    inst.name = file.name.clone();
    let build_ms = t.elapsed().as_secs_f64() * 1e3;
    let verdict = decide_vanishing_with(
        &inst,
        opts.bound,
        opts.mode,
        DecideOptions {
            max_steps: opts.max_steps,
            timings: !opts.deterministic,
        },
    )?;
    let witness_confirmed = match verdict.result {
        Outcome::Nonvanishing if verdict.witness.is_some() => Some(recheck_witness(&inst, &verdict)?),
        _ => None,
    };
    Ok(Report {
        instance: file.name.clone(),
        n: file.n,
        variables: file.variables.clone(),
        generators: file.generator_text.clone(),
        p: opts.prime,
        degree: opts.degree,
        max_steps: opts.max_steps,
        witness_confirmed,
        verdict,
        build_ms: (!opts.deterministic).then_some(build_ms),
    })
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub p: u64,
    pub outcome: std::result::Result<Report, String>,
    pub wall_ms: f64,
}

/// One run per prime; a failing prime is recorded in its row and the sweep
/// continues.
pub fn sweep(file: &InstanceFile, primes: &[u64], base: &RunOptions) -> Vec<SweepRow> {
    primes
        .iter()
        .map(|&p| {
            let t = Instant::now();
            let opts = RunOptions { prime: p, ..base.clone() };
            let outcome = run_instance(file, &opts).map_err(|e| e.to_string());
            SweepRow {
                p,
                outcome,
                wall_ms: t.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

#[derive(Serialize)]
struct CsvRow<'a> {
    p: u64,
    verdict: String,
    peak_live_monomials: u64,
    max_degree: u64,
    tuples: u64,
    compositions: u64,
    wall_time: f64,
    degree_bound: u64,
    bound_violations: u64,
    error: &'a str,
}

/// Columns: p, verdict, peak_live_monomials, max_degree, tuples,
/// compositions, wall_time (ms), degree_bound, bound_violations, error.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let zero = Counters::default();
    for row in rows {
        let (verdict, c, error) = match &row.outcome {
            Ok(r) => (r.verdict.result.to_string(), &r.verdict.counters, ""),
            Err(e) => ("ERROR".to_string(), &zero, e.as_str()),
        };
        w.serialize(CsvRow {
            p: row.p,
            verdict,
            peak_live_monomials: c.peak_live_monomials,
            max_degree: c.max_degree,
            tuples: c.tuples,
            compositions: c.compositions,
            wall_time: row.wall_ms,
            degree_bound: c.degree_bound,
            bound_violations: c.bound_violations,
            error,
        })?;
    }
    w.flush()?;
    Ok(())
}
