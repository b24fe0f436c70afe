//! Deciding whether `H^i_I(R)` vanishes over `R = F_p[x1..xn]`.
//!
//! `M` denotes the `i`-th cohomology of the Koszul complex on the reduced
//! generators. The Frobenius chain maps `beta_j` have kernels
//! `ker beta_1 ⊆ ker beta_2 ⊆ ...`; with `r` the first index where the chain
//! stops growing, the local cohomology vanishes iff `ker beta_r = M`, and for
//! any `u >= r` iff `beta_u = 0`.
//!
//! Two procedures are offered. The baseline computes the kernel chain with
//! Gröbner bases over the level-`p^j` complexes. The streaming test checks
//! `beta_u = 0` through the dual map, one `(offset, generator)` pair at a time.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fparith::{Fp, LucasTable};
use crate::freemod::{buchberger, contained_in, is_member, preimage_kernel, FreeElem, ModuleGB, PolyMatrix, QuotientDim};
use crate::frobstream::{alpha_on_generator, FrobLayout, GeneratorPlan, LiveTally, StreamStats};
use crate::koszul::{
    beta_chain_map, build_koszul, cohomology_presentation_with, KoszulComplex, PresentationOptions,
    PresentedModule,
};
use crate::poly::{default_var_names, IntPoly, Poly, PolyRing};

#[derive(Clone, Copy, Debug, Default)]
pub struct InstanceOptions {
    pub prune: bool,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: Option<String>,
    var_names: Vec<String>,
    int_gens: Vec<IntPoly>,
    ring: PolyRing,
    gens: Vec<Poly>,
    degree: usize,
    complex: KoszulComplex,
    module: PresentedModule,
    products: Vec<Poly>,
    trivially_vanishing: bool,
    warnings: Vec<String>,
}

pub fn build_instance(f: &[IntPoly], p: u64, i: usize) -> Result<Instance> {
    build_instance_with(f, p, i, None, InstanceOptions::default())
}

pub fn build_instance_with(
    f: &[IntPoly],
    p: u64,
    i: usize,
    var_names: Option<Vec<String>>,
    opts: InstanceOptions,
) -> Result<Instance> {
    let field = Fp::new(p)?;
    let first = f
        .first()
        .ok_or_else(|| Error::Contract("an instance needs at least one generator".into()))?;
    let n = first.nvars();
    if f.iter().any(|g| g.nvars() != n) {
        return Err(Error::Contract("generators live in different rings".into()));
    }
    if i > f.len() {
        return Err(Error::Contract(format!("degree {i} outside 0..={}", f.len())));
    }
    let var_names = var_names.unwrap_or_else(|| default_var_names(n));
    if var_names.len() != n {
        return Err(Error::Contract("variable name count differs from n".into()));
    }
    let ring = PolyRing::new(n, field);
    let gens: Vec<Poly> = f.iter().map(|g| g.reduce_mod_p(&ring)).collect();
    let warnings = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_zero())
        .map(|(k, _)| format!("degenerate generator mod p: f{} reduces to 0 mod {p}", k + 1))
        .collect();
    let complex = build_koszul(&ring, &gens, 1)?;
    let module = cohomology_presentation_with(&complex, i, PresentationOptions { prune: opts.prune })?;
    let products = complex
        .subsets(i)
        .iter()
        .map(|s| complex.subset_product(s))
        .collect();
    let trivially_vanishing = module.is_zero();
    Ok(Instance {
        name: None,
        var_names,
        int_gens: f.to_vec(),
        ring,
        gens,
        degree: i,
        complex,
        module,
        products,
        trivially_vanishing,
        warnings,
    })
}

impl Instance {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.ring.p() as u64
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn int_generators(&self) -> &[IntPoly] {
        &self.int_gens
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn complex(&self) -> &KoszulComplex {
        &self.complex
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn is_trivially_vanishing(&self) -> bool {
        self.trivially_vanishing
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn plan(&self, t: usize) -> GeneratorPlan {
        GeneratorPlan::new(&self.ring, &self.products, &self.module.generators()[t].element)
    }
}

/// A nonvanishing certificate: `alpha_j(x^offset * m_t)` is not a coboundary.
/// `generator` counts from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub j: u32,
    pub offset: Vec<u32>,
    pub generator: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StreamOutcome {
    pub is_zero: bool,
    pub witness: Option<Witness>,
    pub tuples: u64,
    pub stats: StreamStats,
    pub peak_live_monomials: u64,
}

/// Odometer over `[0, q)^n`, last coordinate fastest.
fn next_offset(off: &mut [u32], q: u64) -> bool {
    for k in (0..off.len()).rev() {
        if (off[k] as u64) + 1 < q {
            off[k] += 1;
            return true;
        }
        off[k] = 0;
    }
    false
}

/// Tests `beta_j = 0` through the dual map, visiting `(offset, generator)`
/// tuples in lexicographic order and stopping at the first witness.
pub fn beta_j_is_zero_streamed(inst: &Instance, j: u32) -> Result<StreamOutcome> {
    let layout = FrobLayout::new(inst.ring.field, j)?;
    let q = layout.box_size();
    let n = inst.nvars();
    q.checked_pow(n as u32)
        .and_then(|b| b.checked_mul(inst.module.generators().len() as u64))
        .ok_or_else(|| Error::Contract(format!("p^(jn) tuple count overflows for j = {j}")))?;
    let table = LucasTable::new(inst.ring.field)?;
    let tally = LiveTally::new();
    let plans: Vec<GeneratorPlan> = (0..inst.module.generators().len()).map(|t| inst.plan(t)).collect();
    let cob = inst.module.coboundary_gb();
    let mut out = StreamOutcome::default();
    if plans.is_empty() {
        out.is_zero = true;
        return Ok(out);
    }
    let mut offset = vec![0u32; n];
    loop {
        for (t, plan) in plans.iter().enumerate() {
            out.tuples += 1;
            let z = alpha_on_generator(&inst.ring, plan, &offset, &layout, &table, &tally, &mut out.stats)?;
            if z.is_zero() {
                continue;
            }
            tally.alloc(z.len());
            let member = is_member(&z, cob);
            tally.free(z.len());
            if !member {
                out.witness = Some(Witness {
                    j,
                    offset: offset.clone(),
                    generator: t + 1,
                });
                out.peak_live_monomials = tally.peak() as u64;
                return Ok(out);
            }
        }
        if !next_offset(&mut offset, q) {
            break;
        }
    }
    out.is_zero = true;
    out.peak_live_monomials = tally.peak() as u64;
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct KernelStep {
    pub j: u32,
    /// Cocycles generating `ker beta_j` together with the base coboundaries.
    pub kernel: Vec<FreeElem>,
    pub target_gb_len: usize,
}

#[derive(Clone, Debug)]
pub struct KernelChain {
    pub r: Option<u32>,
    pub steps: Vec<KernelStep>,
    pub stabilized: bool,
    /// `ker beta_j ⊆ ker beta_(j+1)` held at every computed step.
    pub monotone: bool,
    /// Whether `ker beta_r` is all of `M`; `None` unless stabilized.
    pub kernel_is_everything: Option<bool>,
}

fn kernel_step(inst: &Instance, j: u32) -> Result<KernelStep> {
    let ring = &inst.ring;
    let i = inst.degree;
    let cm = beta_chain_map(&inst.complex, j)?;
    let target_gb = cm.target().coboundary_gb(i);
    let gens = inst.module.generator_elems();
    let images: Vec<FreeElem> = gens.iter().map(|g| cm.apply(i, g)).collect();
    let m = PolyMatrix::from_columns(inst.complex.rank(i), images);
    let coeffs = preimage_kernel(ring, &m, &target_gb);
    let g = inst.module.generator_matrix();
    let mut kernel: Vec<FreeElem> = coeffs
        .iter()
        .map(|c| g.apply(ring, c))
        .filter(|z| !z.is_zero())
        .collect();
    kernel.extend(inst.module.coboundaries().iter().cloned());
    Ok(KernelStep {
        j,
        kernel,
        target_gb_len: target_gb.len(),
    })
}

fn span_gb(inst: &Instance, elems: &[FreeElem]) -> ModuleGB {
    buchberger(&inst.ring, inst.complex.rank(inst.degree), elems)
}

/// Computes `ker beta_1, ker beta_2, ...` until two consecutive kernels agree
/// (`r` is the smaller index) or `max_steps` comparisons have been made.
pub fn baseline_kernel_chain(inst: &Instance, max_steps: u32) -> Result<KernelChain> {
    if max_steps == 0 {
        return Err(Error::Contract("max_steps must be at least 1".into()));
    }
    if inst.module.generators().is_empty() {
        return Ok(KernelChain {
            r: Some(1),
            steps: Vec::new(),
            stabilized: true,
            monotone: true,
            kernel_is_everything: Some(true),
        });
    }
    let mut steps = vec![kernel_step(inst, 1)?];
    let mut prev_gb = span_gb(inst, &steps[0].kernel);
    let mut monotone = true;
    for j in 1..=max_steps {
        let next = kernel_step(inst, j + 1)?;
        let next_gb = span_gb(inst, &next.kernel);
        let grows_into = contained_in(&steps[j as usize - 1].kernel, &next_gb);
        monotone &= grows_into;
        let equal = grows_into && contained_in(&next.kernel, &prev_gb);
        steps.push(next);
        if equal {
            let everything = contained_in(&inst.module.generator_elems(), &prev_gb);
            return Ok(KernelChain {
                r: Some(j),
                steps,
                stabilized: true,
                monotone,
                kernel_is_everything: Some(everything),
            });
        }
        prev_gb = next_gb;
    }
    Ok(KernelChain {
        r: None,
        steps,
        stabilized: false,
        monotone,
        kernel_is_everything: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", content = "u", rename_all = "snake_case")]
pub enum BoundSpec {
    User(u32),
    FiniteLength,
    Empirical,
}

impl FromStr for BoundSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "finite-length" | "finite_length" => Ok(BoundSpec::FiniteLength),
            "empirical" => Ok(BoundSpec::Empirical),
            _ => {
                let u = s
                    .strip_prefix("user:")
                    .and_then(|u| u.parse::<u32>().ok())
                    .ok_or_else(|| {
                        Error::Contract(format!(
                            "bound `{s}` is not user:<u>, finite-length or empirical"
                        ))
                    })?;
                if u == 0 {
                    return Err(Error::Contract("user bound must be at least 1".into()));
                }
                Ok(BoundSpec::User(u))
            }
        }
    }
}

impl fmt::Display for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSpec::User(u) => write!(f, "user:{u}"),
            BoundSpec::FiniteLength => f.write_str("finite-length"),
            BoundSpec::Empirical => f.write_str("empirical"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResolvedBound {
    pub u: u32,
    /// The kernel chain, when the empirical source ran it.
    pub chain: Option<KernelChain>,
}

pub fn resolve_bound(inst: &Instance, bound: BoundSpec, max_steps: u32) -> Result<ResolvedBound> {
    match bound {
        BoundSpec::User(u) if u >= 1 => Ok(ResolvedBound { u, chain: None }),
        BoundSpec::User(_) => Err(Error::Bound("user bound must be at least 1".into())),
        BoundSpec::FiniteLength => match inst.module.length() {
            QuotientDim::Finite(len) => {
                let u = u32::try_from(len.max(1))
                    .map_err(|_| Error::Bound(format!("length {len} too large")))?;
                Ok(ResolvedBound { u, chain: None })
            }
            QuotientDim::Infinite => Err(Error::Bound(
                "finite-length bound requested but the cohomology module has infinite length".into(),
            )),
        },
        BoundSpec::Empirical => {
            let chain = baseline_kernel_chain(inst, max_steps)?;
            match chain.r {
                Some(u) => Ok(ResolvedBound { u, chain: Some(chain) }),
                None => Err(Error::Bound(format!(
                    "kernel chain did not stabilize within {max_steps} steps"
                ))),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Streaming,
    Baseline,
    Compare,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "streaming" => Ok(Mode::Streaming),
            "baseline" => Ok(Mode::Baseline),
            "compare" => Ok(Mode::Compare),
            _ => Err(Error::Contract(format!("unknown mode `{s}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Streaming => "streaming",
            Mode::Baseline => "baseline",
            Mode::Compare => "compare",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Vanishes,
    Nonvanishing,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Vanishes => "VANISHES",
            Outcome::Nonvanishing => "NONVANISHING",
            Outcome::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub peak_live_monomials: u64,
    pub max_degree: u64,
    pub degree_bound: u64,
    pub bound_violations: u64,
    pub tuples: u64,
    pub compositions: u64,
    pub terms: u64,
    pub generators: u64,
    pub coboundary_gb_size: u64,
    pub kernel_steps: u64,
    pub max_target_gb_size: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub bound_ms: f64,
    pub streaming_ms: f64,
    pub baseline_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub result: Outcome,
    pub mode: Mode,
    pub witness: Option<Witness>,
    pub r: Option<u32>,
    pub u: Option<u32>,
    pub bound: BoundSpec,
    pub trivially_vanishing: bool,
    /// Per-path results in compare mode.
    pub streaming_result: Option<Outcome>,
    pub baseline_result: Option<Outcome>,
    pub counters: Counters,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Verdict {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    pub max_steps: u32,
    pub timings: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            max_steps: 4,
            timings: true,
        }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn decide_vanishing(inst: &Instance, bound: BoundSpec, mode: Mode) -> Result<Verdict> {
    decide_vanishing_with(inst, bound, mode, DecideOptions::default())
}

pub fn decide_vanishing_with(inst: &Instance, bound: BoundSpec, mode: Mode, opts: DecideOptions) -> Result<Verdict> {
    let start = Instant::now();
    let mut timings = Timings::default();
    let mut v = Verdict {
        result: Outcome::Inconclusive,
        mode,
        witness: None,
        r: None,
        u: None,
        bound,
        trivially_vanishing: inst.trivially_vanishing,
        streaming_result: None,
        baseline_result: None,
        counters: Counters {
            generators: inst.module.generators().len() as u64,
            coboundary_gb_size: inst.module.coboundary_gb().len() as u64,
            ..Counters::default()
        },
        warnings: inst.warnings.clone(),
        notes: Vec::new(),
        timings: None,
    };
    if inst.trivially_vanishing {
        v.result = Outcome::Vanishes;
        v.r = Some(1);
        v.notes.push("cohomology module is zero".into());
        if opts.timings {
            timings.total_ms = ms(start);
            v.timings = Some(timings);
        }
        return Ok(v);
    }

    let mut chain: Option<KernelChain> = None;
    if matches!(mode, Mode::Baseline | Mode::Compare) {
        let t = Instant::now();
        let c = baseline_kernel_chain(inst, opts.max_steps)?;
        timings.baseline_ms = ms(t);
        v.counters.kernel_steps = c.steps.len() as u64;
        v.counters.max_target_gb_size = c.steps.iter().map(|s| s.target_gb_len as u64).max().unwrap_or(0);
        v.r = c.r;
        v.baseline_result = Some(match c.kernel_is_everything {
            Some(true) => Outcome::Vanishes,
            Some(false) => Outcome::Nonvanishing,
            None => {
                v.notes.push(format!(
                    "kernel chain did not stabilize within {} steps",
                    opts.max_steps
                ));
                Outcome::Inconclusive
            }
        });
        if !c.monotone {
            return Err(Error::Consistency("kernel chain is not increasing".into()));
        }
        chain = Some(c);
    }

    if matches!(mode, Mode::Streaming | Mode::Compare) {
        let t = Instant::now();
        let resolved = match (bound, &chain) {
            (BoundSpec::Empirical, Some(c)) => c.r.ok_or_else(|| {
                Error::Bound(format!("kernel chain did not stabilize within {} steps", opts.max_steps))
            }),
            _ => resolve_bound(inst, bound, opts.max_steps).map(|b| {
                if let Some(c) = &b.chain {
                    v.r = c.r;
                }
                b.u
            }),
        };
        timings.bound_ms = ms(t);
        match resolved {
            Ok(u) => {
                if bound == BoundSpec::Empirical {
                    v.notes.push("u taken from the kernel chain at this prime only".into());
                }
                v.u = Some(u);
                let t = Instant::now();
                let s = beta_j_is_zero_streamed(inst, u)?;
                timings.streaming_ms = ms(t);
                v.counters.peak_live_monomials = s.peak_live_monomials;
                v.counters.max_degree = s.stats.max_degree;
                v.counters.degree_bound = s.stats.degree_bound;
                v.counters.bound_violations = s.stats.bound_violations;
                v.counters.tuples = s.tuples;
                v.counters.compositions = s.stats.compositions;
                v.counters.terms = s.stats.terms;
                v.witness = s.witness;
                v.streaming_result = Some(if s.is_zero {
                    Outcome::Vanishes
                } else {
                    Outcome::Nonvanishing
                });
            }
            Err(Error::Bound(reason)) => {
                v.notes.push(reason);
                v.streaming_result = Some(Outcome::Inconclusive);
            }
            Err(e) => return Err(e),
        }
    }

    v.result = match (mode, v.streaming_result, v.baseline_result) {
        (Mode::Streaming, Some(s), _) => s,
        (Mode::Baseline, _, Some(b)) => b,
        (Mode::Compare, Some(s), Some(b)) => {
            if s == Outcome::Inconclusive || b == Outcome::Inconclusive {
                Outcome::Inconclusive
            } else if s != b {
                return Err(Error::Disagreement(format!("streaming says {s}, baseline says {b}")));
            } else {
                s
            }
        }
        _ => Outcome::Inconclusive,
    };
    if opts.timings {
        timings.total_ms = ms(start);
        v.timings = Some(timings);
    }
    Ok(v)
}

/// Recomputes the witnessed dual-map value and confirms it is not a coboundary.
pub fn recheck_witness(inst: &Instance, verdict: &Verdict) -> Result<bool> {
    let w = verdict
        .witness
        .as_ref()
        .ok_or_else(|| Error::Contract("verdict carries no witness".into()))?;
    let layout = FrobLayout::new(inst.ring.field, w.j)?;
    if w.offset.len() != inst.nvars() || !layout.in_box(&w.offset) {
        return Err(Error::Contract(format!(
            "witness offset {:?} outside the box [0, {}]^{}",
            w.offset,
            layout.top(),
            inst.nvars()
        )));
    }
    if w.generator == 0 || w.generator > inst.module.generators().len() {
        return Err(Error::Contract(format!("witness generator {} out of range", w.generator)));
    }
    let table = LucasTable::new(inst.ring.field)?;
    let tally = LiveTally::new();
    let mut stats = StreamStats::default();
    let plan = inst.plan(w.generator - 1);
    let z = alpha_on_generator(&inst.ring, &plan, &w.offset, &layout, &table, &tally, &mut stats)?;
    Ok(!z.is_zero() && !is_member(&z, inst.module.coboundary_gb()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_int_poly;

    fn inst(src: &[&str], n: usize, p: u64, i: usize) -> Instance {
        let names = default_var_names(n);
        let f: Vec<IntPoly> = src.iter().map(|s| parse_int_poly(s, &names).unwrap()).collect();
        build_instance(&f, p, i).unwrap()
    }

    #[test]
    fn build_examples() {
        assert!(inst(&["x1", "x2"], 2, 2, 1).is_trivially_vanishing());
        let top = inst(&["x1", "x2", "x3"], 3, 3, 3);
        assert_eq!(top.module().generators().len(), 1);
        assert_eq!(top.module().length(), QuotientDim::Finite(1));
        let degenerate = inst(&["3*x1"], 1, 3, 1);
        assert_eq!(degenerate.warnings().len(), 1);
        assert!(degenerate.warnings()[0].contains("degenerate generator mod p"));
        assert!(build_instance(&[], 2, 0).is_err());
        let f = [parse_int_poly("x1", &default_var_names(1)).unwrap()];
        assert!(matches!(build_instance(&f, 4, 1), Err(Error::NotPrime(4))));
        assert!(build_instance(&f, 2, 2).is_err());
    }

    #[test]
    fn streamed_examples() {
        let single = inst(&["x1"], 1, 2, 1);
        let s = beta_j_is_zero_streamed(&single, 1).unwrap();
        assert!(!s.is_zero);
        assert_eq!(s.witness, Some(Witness { j: 1, offset: vec![0], generator: 1 }));
        let doubled = inst(&["x1", "x1"], 1, 2, 2);
        let s = beta_j_is_zero_streamed(&doubled, 1).unwrap();
        assert!(s.is_zero);
        assert_eq!(s.tuples, 2);
    }

    #[test]
    fn baseline_examples() {
        let single = inst(&["x1"], 1, 2, 1);
        let c = baseline_kernel_chain(&single, 4).unwrap();
        assert_eq!(c.r, Some(1));
        assert_eq!(c.kernel_is_everything, Some(false));
        let doubled = inst(&["x1", "x1"], 1, 2, 2);
        let c = baseline_kernel_chain(&doubled, 4).unwrap();
        assert_eq!(c.r, Some(1));
        assert_eq!(c.kernel_is_everything, Some(true));
        assert!(c.monotone);
    }

    #[test]
    fn bound_examples() {
        let axes = inst(&["x1", "x2"], 2, 2, 2);
        assert_eq!(resolve_bound(&axes, BoundSpec::FiniteLength, 4).unwrap().u, 1);
        assert_eq!(resolve_bound(&axes, BoundSpec::User(3), 4).unwrap().u, 3);
        let line = inst(&["x1"], 2, 2, 1);
        assert!(matches!(resolve_bound(&line, BoundSpec::FiniteLength, 4), Err(Error::Bound(_))));
        assert_eq!("user:3".parse::<BoundSpec>().unwrap(), BoundSpec::User(3));
        assert!("user:0".parse::<BoundSpec>().is_err());
        assert!("foo".parse::<BoundSpec>().is_err());
    }

    #[test]
    fn decide_examples() {
        for p in [2, 3, 5] {
            for n in 1..=3 {
                let names = default_var_names(n);
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                let top = inst(&refs, n, p, n);
                let v = decide_vanishing(&top, BoundSpec::User(1), Mode::Streaming).unwrap();
                assert_eq!(v.result, Outcome::Nonvanishing);
                assert!(recheck_witness(&top, &v).unwrap());
            }
        }
        let doubled = inst(&["x1", "x1"], 1, 2, 2);
        let v = decide_vanishing(&doubled, BoundSpec::FiniteLength, Mode::Compare).unwrap();
        assert_eq!(v.result, Outcome::Vanishes);
        assert_eq!(v.baseline_result, Some(Outcome::Vanishes));
        assert!(recheck_witness(&doubled, &v).is_err());
        let line = inst(&["x1"], 2, 3, 1);
        let v = decide_vanishing(&line, BoundSpec::FiniteLength, Mode::Streaming).unwrap();
        assert_eq!(v.result, Outcome::Inconclusive);
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let single = inst(&["x1"], 1, 2, 1);
        let mut v = decide_vanishing(&single, BoundSpec::User(1), Mode::Streaming).unwrap();
        assert!(recheck_witness(&single, &v).unwrap());
        v.witness.as_mut().unwrap().offset = vec![2];
        assert!(matches!(recheck_witness(&single, &v), Err(Error::Contract(_))));
    }
}
