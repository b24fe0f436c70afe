//! Streamed evaluation of the dual map `alpha_j` on Koszul components.
//!
//! Over the prime field, `R` is free over its subring of `p^j`-th powers on the
//! box monomials `x^i`, `0 <= i_k < p^j`. For a subset `S` with product
//! `P = prod_{v in S} f_v` and `y` in `R`, write `y * P^(p^j - 1)` in that basis
//! as `sum_i x^i * g_i^(p^j)`. Then `alpha_{j,S}(y)` is the coefficient
//! `g_top` at the top index `(p^j - 1, .., p^j - 1)`.
//!
//! Instead of forming `P^(p^j - 1)`, whose degree grows with `p^j`, we expand
//! it over compositions `q` of `p^j - 1` into `t` parts (`t` = number of terms
//! of `P`), one composition at a time, and add the extracted monomial of each
//! term to a running sum. Only the composition cursor and the partial sum are
//! kept between steps, and every object stays below degree `max(D, d)` where
//! `D` bounds the cocycle component and `d = deg P`.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fparith::{Fp, FpScalar, LucasTable};
use crate::freemod::FreeElem;
use crate::poly::{Monomial, Poly, PolyRing};

/// Basis layout of `R` over `R^(p^j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobLayout {
    field: Fp,
    j: u32,
    q: u64,
}

impl FrobLayout {
    pub fn new(field: Fp, j: u32) -> Result<Self> {
        if j == 0 {
            return Err(Error::Contract("Frobenius layout needs j >= 1".into()));
        }
        let q = field
            .prime_power(j)
            .filter(|q| *q < 1 << 31)
            .ok_or_else(|| Error::Contract(format!("p^j = {}^{j} too large", field.p())))?;
        Ok(FrobLayout { field, j, q })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// `p^j`.
    pub fn box_size(&self) -> u64 {
        self.q
    }

    /// `p^j - 1`, the entry of the top index in every coordinate.
    pub fn top(&self) -> u64 {
        self.q - 1
    }

    pub fn in_box(&self, offset: &[u32]) -> bool {
        offset.iter().all(|&e| (e as u64) < self.q)
    }
}

/// `gamma(c x^l)`: zero unless every `l_k = p^j - 1 (mod p^j)`, otherwise
/// `c x^w` with `w_k = (l_k - (p^j - 1)) / p^j`.
pub fn gamma_extract(coeff: FpScalar, exps: &[u64], layout: &FrobLayout) -> Option<(Monomial, FpScalar)> {
    if coeff == 0 {
        return None;
    }
    let q = layout.q;
    let top = layout.top();
    let mut w = Monomial::one(exps.len());
    for (slot, &l) in w.exps_mut().iter_mut().zip(exps) {
        if l % q != top {
            return None;
        }
        *slot = u32::try_from((l - top) / q).ok()?;
    }
    Some((w, coeff))
}

/// Compositions of `total` into `parts` nonnegative parts, in colex order
/// from `(total, 0, .., 0)` to `(0, .., 0, total)`. Each state determines its
/// successor.
#[derive(Clone, Debug)]
pub struct Compositions {
    cur: Vec<u64>,
    started: bool,
    done: bool,
}

impl Compositions {
    pub fn new(parts: usize, total: u64) -> Self {
        assert!(parts >= 1, "at least one part");
        let mut cur = vec![0; parts];
        cur[0] = total;
        Compositions {
            cur,
            started: false,
            done: false,
        }
    }

    pub fn current(&self) -> &[u64] {
        &self.cur
    }

    /// Moves to the next composition in place; false once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let t = self.cur.len();
        let k = self.cur.iter().position(|&v| v > 0).unwrap_or(t - 1);
        if k + 1 >= t {
            self.done = true;
            return false;
        }
        let v = self.cur[k];
        self.cur[k] = 0;
        self.cur[0] = v - 1;
        self.cur[k + 1] += 1;
        true
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        self.advance().then(|| self.cur.clone())
    }
}

/// Terms of `prod_{v in S} f_v` and of one cocycle component.
#[derive(Clone, Debug)]
pub struct ProductForm {
    factors: Vec<(Monomial, FpScalar)>,
    mus: Vec<(Monomial, FpScalar)>,
    product_degree: u64,
    cocycle_degree: u64,
}

impl ProductForm {
    pub fn new(product: &Poly, component: &Poly) -> Self {
        ProductForm {
            factors: product.terms().to_vec(),
            mus: component.terms().to_vec(),
            product_degree: product.degree().unwrap_or(0),
            cocycle_degree: component.degree().unwrap_or(0),
        }
    }

    pub fn factors(&self) -> &[(Monomial, FpScalar)] {
        &self.factors
    }

    pub fn mus(&self) -> &[(Monomial, FpScalar)] {
        &self.mus
    }

    /// `d = deg P`.
    pub fn product_degree(&self) -> u64 {
        self.product_degree
    }

    /// `D = max deg mu`.
    pub fn cocycle_degree(&self) -> u64 {
        self.cocycle_degree
    }

    pub fn degree_bound(&self) -> u64 {
        self.product_degree.max(self.cocycle_degree)
    }
}

/// Count of simultaneously retained monomials on the streaming path.
#[derive(Debug, Default)]
pub struct LiveTally {
    current: AtomicUsize,
    peak: AtomicUsize,
}

impl LiveTally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alloc(&self, n: usize) {
        let now = self.current.fetch_add(n, AtomicOrdering::Relaxed) + n;
        self.peak.fetch_max(now, AtomicOrdering::Relaxed);
    }

    pub fn free(&self, n: usize) {
        self.current.fetch_sub(n, AtomicOrdering::Relaxed);
    }

    pub fn current(&self) -> usize {
        self.current.load(AtomicOrdering::Relaxed)
    }

    pub fn peak(&self) -> usize {
        self.peak.load(AtomicOrdering::Relaxed)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamStats {
    /// Compositions visited, including those pruned by a zero multinomial.
    pub compositions: u64,
    /// Monomials `m^q mu` actually evaluated.
    pub terms: u64,
    pub gamma_nonzero: u64,
    /// Largest total degree of any extracted monomial or partial sum.
    pub max_degree: u64,
    /// Largest `max(D, d)` among evaluated components.
    pub degree_bound: u64,
    pub bound_violations: u64,
}

impl StreamStats {
    pub fn merge(&mut self, other: &StreamStats) {
        self.compositions += other.compositions;
        self.terms += other.terms;
        self.gamma_nonzero += other.gamma_nonzero;
        self.max_degree = self.max_degree.max(other.max_degree);
        self.degree_bound = self.degree_bound.max(other.degree_bound);
        self.bound_violations += other.bound_violations;
    }
}

/// Cursor and partial sum of one streamed component evaluation.
struct StreamState<'a> {
    ring: &'a PolyRing,
    tally: &'a LiveTally,
    sum: Poly,
    bound: u64,
    stats: &'a mut StreamStats,
}

impl StreamState<'_> {
    fn record_degree(&mut self, deg: u64) {
        self.stats.max_degree = self.stats.max_degree.max(deg);
        if deg > self.bound {
            self.stats.bound_violations += 1;
        }
        debug_assert!(deg <= self.bound, "degree {deg} exceeds bound {}", self.bound);
    }

    fn accumulate(&mut self, mono: Monomial, coeff: FpScalar) {
        self.tally.alloc(1);
        self.stats.gamma_nonzero += 1;
        self.record_degree(mono.degree());
        let before = self.sum.len();
        self.ring.add_term_in_place(&mut self.sum, mono, coeff);
        if let Some(d) = self.sum.degree() {
            self.record_degree(d);
        }
        // the extracted term is either absorbed into the sum or cancels a term of it
        self.tally.free(1);
        if self.sum.len() > before {
            self.tally.alloc(self.sum.len() - before);
        } else {
            self.tally.free(before - self.sum.len());
        }
    }
}

/// `alpha_{j,S}(x^offset * m)` where `m` is the cocycle component in `pf`.
///
/// The returned polynomial stays counted in `tally` until the caller frees it.
pub fn alpha_component_streamed(
    ring: &PolyRing,
    pf: &ProductForm,
    offset: &[u32],
    layout: &FrobLayout,
    table: &LucasTable,
    tally: &LiveTally,
    stats: &mut StreamStats,
) -> Result<Poly> {
    if offset.len() != ring.nvars || !layout.in_box(offset) {
        return Err(Error::Contract(format!(
            "offset {offset:?} outside the box [0, {}]^{}",
            layout.top(),
            ring.nvars
        )));
    }
    let fld = ring.field;
    let n = ring.nvars;
    let total = layout.top();
    stats.degree_bound = stats.degree_bound.max(pf.degree_bound());
    let mut state = StreamState {
        ring,
        tally,
        sum: Poly::zero(),
        bound: pf.degree_bound(),
        stats,
    };
    if pf.factors.is_empty() || pf.mus.is_empty() {
        return Ok(Poly::zero());
    }
    let base: Vec<Vec<u64>> = pf
        .mus
        .iter()
        .map(|(m, _)| {
            m.exps()
                .iter()
                .zip(offset)
                .map(|(&e, &o)| e as u64 + o as u64)
                .collect()
        })
        .collect();
    let mut comps = Compositions::new(pf.factors.len(), total);
    let mut exps = vec![0u64; n];
    let mut ell = vec![0u64; n];
    while comps.advance() {
        state.stats.compositions += 1;
        let parts = comps.current();
        let mult = table.multinomial(total, parts);
        if mult == 0 {
            continue;
        }
        let mut coeff = mult;
        exps.iter_mut().for_each(|e| *e = 0);
        for ((m, c), &qs) in pf.factors.iter().zip(parts) {
            if qs == 0 {
                continue;
            }
            coeff = fld.mul(coeff, fld.pow(*c, qs));
            for (e, &me) in exps.iter_mut().zip(m.exps()) {
                *e += qs * me as u64;
            }
        }
        for ((_, mc), b) in pf.mus.iter().zip(&base) {
            state.stats.terms += 1;
            for k in 0..n {
                ell[k] = exps[k] + b[k];
            }
            if let Some((w, c)) = gamma_extract(fld.mul(coeff, *mc), &ell, layout) {
                state.accumulate(w, c);
            }
        }
    }
    Ok(state.sum)
}

/// Per-generator data for streaming: the product form of every nonzero
/// component of one cocycle.
#[derive(Clone, Debug)]
pub struct GeneratorPlan {
    rank: usize,
    components: Vec<(usize, ProductForm)>,
}

impl GeneratorPlan {
    /// `products[k]` is the product of the base generators over the `k`-th
    /// subset of the cocycle's degree.
    pub fn new(ring: &PolyRing, products: &[Poly], cocycle: &FreeElem) -> Self {
        let components = cocycle
            .components(ring)
            .into_iter()
            .map(|(c, f)| (c, ProductForm::new(&products[c], &f)))
            .collect();
        GeneratorPlan {
            rank: cocycle.rank(),
            components,
        }
    }

    pub fn components(&self) -> &[(usize, ProductForm)] {
        &self.components
    }
}

/// `alpha_j(x^offset * m)` assembled component by component; a cocycle of the
/// base complex whenever `m` is one.
pub fn alpha_on_generator(
    ring: &PolyRing,
    plan: &GeneratorPlan,
    offset: &[u32],
    layout: &FrobLayout,
    table: &LucasTable,
    tally: &LiveTally,
    stats: &mut StreamStats,
) -> Result<FreeElem> {
    let mut parts = Vec::with_capacity(plan.components.len());
    let mut held = 0;
    for (c, pf) in &plan.components {
        let a = alpha_component_streamed(ring, pf, offset, layout, table, tally, stats)?;
        held += a.len();
        if !a.is_zero() {
            parts.push((*c, a));
        }
    }
    let out = FreeElem::from_components(ring, plan.rank, parts);
    tally.free(held);
    Ok(out)
}
