//! Finite free modules over Z/pZ[x1..xn] and the Gröbner machinery on them:
//! Buchberger with the sugar strategy, normal forms, submodule membership,
//! kernels and preimages of matrix maps, and the dimension of finite-length
//! quotients.
//!
//! The module order is position-over-term: a lower component index is larger,
//! ties broken by the ring's monomial order. Elimination of the first `rows`
//! components in [`kernel_gens`] and [`preimage_kernel`] relies on this.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::fparith::FpScalar;
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModTerm {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: FpScalar,
}

#[inline]
fn pot_cmp(order: MonomialOrder, ac: usize, am: &Monomial, bc: usize, bm: &Monomial) -> Ordering {
    if ac != bc {
        bc.cmp(&ac)
    } else {
        order.cmp(am, bm)
    }
}

/// Element of `R^rank`, stored as a term list sorted decreasingly in the
/// position-over-term order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeElem {
    rank: usize,
    terms: Vec<ModTerm>,
}

impl FreeElem {
    pub fn zero(rank: usize) -> Self {
        FreeElem {
            rank,
            terms: Vec::new(),
        }
    }

    /// `c * e_k` with the constant monomial.
    pub fn basis(ring: &PolyRing, rank: usize, k: usize) -> Self {
        assert!(k < rank, "basis index {k} out of rank {rank}");
        FreeElem {
            rank,
            terms: vec![ModTerm {
                comp: k,
                mono: Monomial::one(ring.nvars),
                coeff: 1,
            }],
        }
    }

    pub fn from_components(ring: &PolyRing, rank: usize, comps: impl IntoIterator<Item = (usize, Poly)>) -> Self {
        let mut terms = Vec::new();
        for (c, f) in comps {
            assert!(c < rank, "component {c} out of rank {rank}");
            terms.extend(f.into_terms().into_iter().map(|(mono, coeff)| ModTerm {
                comp: c,
                mono,
                coeff,
            }));
        }
        Self::from_terms(ring, rank, terms)
    }

    /// Canonicalizes an arbitrary term list.
    pub fn from_terms(ring: &PolyRing, rank: usize, terms: impl IntoIterator<Item = ModTerm>) -> Self {
        let mut acc: HashMap<(usize, Monomial), FpScalar> = HashMap::new();
        for t in terms {
            debug_assert!(t.comp < rank);
            let slot = acc.entry((t.comp, t.mono)).or_insert(0);
            *slot = ring.field.add(*slot, t.coeff % ring.p());
        }
        let mut terms: Vec<ModTerm> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((comp, mono), coeff)| ModTerm { comp, mono, coeff })
            .collect();
        let order = ring.order;
        terms.sort_unstable_by(|a, b| pot_cmp(order, b.comp, &b.mono, a.comp, &a.mono));
        FreeElem { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn component(&self, ring: &PolyRing, c: usize) -> Poly {
        // terms of one component are contiguous and already sorted
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|t| t.comp == c)
            .map(|t| (t.mono.clone(), t.coeff))
            .collect();
        ring.wrap_sorted_unchecked(terms)
    }

    /// Nonzero components in increasing index order.
    pub fn components(&self, ring: &PolyRing) -> Vec<(usize, Poly)> {
        let mut out: Vec<(usize, Vec<(Monomial, FpScalar)>)> = Vec::new();
        for t in &self.terms {
            match out.last_mut() {
                Some((c, v)) if *c == t.comp => v.push((t.mono.clone(), t.coeff)),
                _ => out.push((t.comp, vec![(t.mono.clone(), t.coeff)])),
            }
        }
        out.into_iter()
            .map(|(c, v)| (c, ring.wrap_sorted_unchecked(v)))
            .collect()
    }

    /// Moves every component index by `delta`, changing the rank to `rank`.
    pub fn shifted(&self, rank: usize, delta: isize) -> FreeElem {
        FreeElem {
            rank,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let comp = (t.comp as isize + delta) as usize;
                    assert!(comp < rank);
                    ModTerm {
                        comp,
                        mono: t.mono.clone(),
                        coeff: t.coeff,
                    }
                })
                .collect(),
        }
    }

    pub fn format(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.components(ring)
            .into_iter()
            .map(|(c, f)| format!("({})*e{}", ring.format(&f), c))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Module arithmetic helpers bound to a ring.
pub trait ModuleOps {
    fn elem_add_scaled(&self, f: &FreeElem, g: &FreeElem, c: FpScalar, shift: Option<&Monomial>) -> FreeElem;
    fn elem_add(&self, f: &FreeElem, g: &FreeElem) -> FreeElem {
        self.elem_add_scaled(f, g, 1, None)
    }
    fn elem_sub(&self, f: &FreeElem, g: &FreeElem) -> FreeElem;
    fn elem_scale_poly(&self, f: &FreeElem, a: &Poly) -> FreeElem;
    fn elem_scale(&self, f: &FreeElem, c: FpScalar) -> FreeElem;
}

impl ModuleOps for PolyRing {
    fn elem_add_scaled(&self, f: &FreeElem, g: &FreeElem, c: FpScalar, shift: Option<&Monomial>) -> FreeElem {
        assert_eq!(f.rank, g.rank, "rank mismatch");
        let terms = merge_desc(self, &f.terms, g.terms.iter(), c % self.p(), shift);
        FreeElem { rank: f.rank, terms }
    }

    fn elem_sub(&self, f: &FreeElem, g: &FreeElem) -> FreeElem {
        self.elem_add_scaled(f, g, self.field.neg(1), None)
    }

    fn elem_scale_poly(&self, f: &FreeElem, a: &Poly) -> FreeElem {
        let mut acc = FreeElem::zero(f.rank);
        for (m, c) in a.terms() {
            acc = self.elem_add_scaled(&acc, f, *c, Some(m));
        }
        acc
    }

    fn elem_scale(&self, f: &FreeElem, c: FpScalar) -> FreeElem {
        let c = c % self.p();
        if c == 0 {
            return FreeElem::zero(f.rank);
        }
        FreeElem {
            rank: f.rank,
            terms: f
                .terms
                .iter()
                .map(|t| ModTerm {
                    comp: t.comp,
                    mono: t.mono.clone(),
                    coeff: self.field.mul(t.coeff, c),
                })
                .collect(),
        }
    }
}

/// Merges `a` with `c * shift * b`, both decreasing.
fn merge_desc<'a>(
    ring: &PolyRing,
    a: &[ModTerm],
    b: impl Iterator<Item = &'a ModTerm>,
    c: FpScalar,
    shift: Option<&Monomial>,
) -> Vec<ModTerm> {
    let fld = ring.field;
    let order = ring.order;
    let mut out = Vec::with_capacity(a.len());
    if c == 0 {
        out.extend_from_slice(a);
        return out;
    }
    let mut bi = b.map(|t| ModTerm {
        comp: t.comp,
        mono: match shift {
            Some(s) => t.mono.mul(s),
            None => t.mono.clone(),
        },
        coeff: fld.mul(t.coeff, c),
    });
    let mut ai = a.iter();
    let mut x = ai.next();
    let mut y = bi.next();
    loop {
        match (x, y.take()) {
            (None, None) => break,
            (Some(t), None) => {
                out.push(t.clone());
                out.extend(ai.by_ref().cloned());
                break;
            }
            (None, Some(u)) => {
                out.push(u);
                out.extend(bi.by_ref());
                break;
            }
            (Some(t), Some(u)) => match pot_cmp(order, t.comp, &t.mono, u.comp, &u.mono) {
                Ordering::Greater => {
                    out.push(t.clone());
                    x = ai.next();
                    y = Some(u);
                }
                Ordering::Less => {
                    out.push(u);
                    y = bi.next();
                }
                Ordering::Equal => {
                    let s = fld.add(t.coeff, u.coeff);
                    if s != 0 {
                        out.push(ModTerm {
                            comp: t.comp,
                            mono: u.mono,
                            coeff: s,
                        });
                    }
                    x = ai.next();
                    y = bi.next();
                }
            },
        }
    }
    out
}

/// Matrix of a map `R^cols -> R^rows`, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    columns: Vec<FreeElem>,
}

impl PolyMatrix {
    pub fn from_columns(rows: usize, columns: Vec<FreeElem>) -> Self {
        assert!(columns.iter().all(|c| c.rank() == rows), "column rank mismatch");
        PolyMatrix { rows, columns }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            columns: vec![FreeElem::zero(rows); cols],
        }
    }

    /// Builds from a dense row-major table of entries.
    pub fn from_rows(ring: &PolyRing, entries: &[Vec<Poly>]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let columns = (0..cols)
            .map(|c| {
                FreeElem::from_components(ring, rows, (0..rows).map(|r| (r, entries[r][c].clone())))
            })
            .collect();
        PolyMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &FreeElem {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[FreeElem] {
        &self.columns
    }

    pub fn entry(&self, ring: &PolyRing, r: usize, c: usize) -> Poly {
        self.columns[c].component(ring, r)
    }

    pub fn apply(&self, ring: &PolyRing, v: &FreeElem) -> FreeElem {
        assert_eq!(v.rank(), self.cols(), "vector rank does not match matrix columns");
        let mut terms = Vec::new();
        for t in v.terms() {
            for u in self.columns[t.comp].terms() {
                terms.push(ModTerm {
                    comp: u.comp,
                    mono: u.mono.mul(&t.mono),
                    coeff: ring.field.mul(u.coeff, t.coeff),
                });
            }
        }
        FreeElem::from_terms(ring, self.rows, terms)
    }

    /// `self * other`.
    pub fn compose(&self, ring: &PolyRing, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols(), other.rows());
        PolyMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(ring, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(FreeElem::is_zero)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_considered: usize,
    pub pairs_reduced_to_zero: usize,
    pub max_basis_len: usize,
}

/// Reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct ModuleGB {
    ring: PolyRing,
    rank: usize,
    basis: Vec<FreeElem>,
    by_comp: HashMap<usize, Vec<usize>>,
    pub stats: GbStats,
}

impl ModuleGB {
    fn index(ring: PolyRing, rank: usize, basis: Vec<FreeElem>, stats: GbStats) -> Self {
        let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, g) in basis.iter().enumerate() {
            by_comp.entry(g.leading().expect("nonzero").comp).or_default().push(k);
        }
        ModuleGB {
            ring,
            rank,
            basis,
            by_comp,
            stats,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[FreeElem] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    fn reducer(&self, comp: usize, mono: &Monomial) -> Option<&FreeElem> {
        let idx = self.by_comp.get(&comp)?;
        idx.iter()
            .map(|&k| &self.basis[k])
            .find(|g| g.leading().expect("nonzero").mono.divides(mono))
    }

    /// Checks the Buchberger criterion: every S-pair reduces to zero.
    pub fn verify_certificate(&self) -> bool {
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if let Some(s) = s_poly(&self.ring, a, b) {
                    if !normal_form(&s, self).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn s_poly(ring: &PolyRing, a: &FreeElem, b: &FreeElem) -> Option<FreeElem> {
    let la = a.leading()?;
    let lb = b.leading()?;
    if la.comp != lb.comp {
        return None;
    }
    let l = la.mono.lcm(&lb.mono);
    let sa = la.mono.quotient_of(&l);
    let sb = lb.mono.quotient_of(&l);
    let ia = ring.field.inv(la.coeff).expect("nonzero lead");
    let ib = ring.field.inv(lb.coeff).expect("nonzero lead");
    let left = ring.elem_add_scaled(&FreeElem::zero(a.rank()), a, ia, Some(&sa));
    Some(ring.elem_add_scaled(&left, b, ring.field.neg(ib), Some(&sb)))
}

/// Fully reduced remainder of `v` modulo the submodule presented by `gb`.
pub fn normal_form(v: &FreeElem, gb: &ModuleGB) -> FreeElem {
    assert_eq!(v.rank(), gb.rank, "rank mismatch in normal form");
    reduce_with(&gb.ring, v, |comp, mono| gb.reducer(comp, mono))
}

fn reduce_with<'g>(
    ring: &PolyRing,
    v: &FreeElem,
    mut find: impl FnMut(usize, &Monomial) -> Option<&'g FreeElem>,
) -> FreeElem {
    let fld = ring.field;
    let order = ring.order;
    // increasing order so the leading term is at the end
    let mut work: Vec<ModTerm> = v.terms.iter().rev().cloned().collect();
    let mut rem: Vec<ModTerm> = Vec::new();
    while let Some(t) = work.pop() {
        let Some(g) = find(t.comp, &t.mono) else {
            rem.push(t);
            continue;
        };
        let lead = g.leading().expect("nonzero reducer");
        let shift = lead.mono.quotient_of(&t.mono);
        let c = fld.neg(fld.mul(t.coeff, fld.inv(lead.coeff).expect("nonzero lead")));
        // merge -c' * shift * tail(g) into `work`, both kept increasing
        let tail: Vec<ModTerm> = g.terms[1..]
            .iter()
            .rev()
            .map(|u| ModTerm {
                comp: u.comp,
                mono: u.mono.mul(&shift),
                coeff: fld.mul(u.coeff, c),
            })
            .collect();
        work = merge_asc(order, fld, std::mem::take(&mut work), tail);
    }
    FreeElem {
        rank: v.rank,
        terms: rem,
    }
}

fn merge_asc(order: MonomialOrder, fld: crate::fparith::Fp, a: Vec<ModTerm>, b: Vec<ModTerm>) -> Vec<ModTerm> {
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ai = a.into_iter().peekable();
    let mut bi = b.into_iter().peekable();
    loop {
        let ord = match (ai.peek(), bi.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(x), Some(y)) => pot_cmp(order, x.comp, &x.mono, y.comp, &y.mono),
        };
        match ord {
            Ordering::Less => out.push(ai.next().unwrap()),
            Ordering::Greater => out.push(bi.next().unwrap()),
            Ordering::Equal => {
                let x = ai.next().unwrap();
                let y = bi.next().unwrap();
                let s = fld.add(x.coeff, y.coeff);
                if s != 0 {
                    out.push(ModTerm { coeff: s, ..x });
                }
            }
        }
    }
    out
}

pub fn is_member(v: &FreeElem, gb: &ModuleGB) -> bool {
    normal_form(v, gb).is_zero()
}

#[derive(Clone, Debug)]
enum Source {
    Gen(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
struct Pending {
    sugar: u64,
    comp: usize,
    lcm: Monomial,
    seq: usize,
    source: Source,
}

fn monic(ring: &PolyRing, v: FreeElem) -> FreeElem {
    match v.leading() {
        Some(l) if l.coeff != 1 => {
            let inv = ring.field.inv(l.coeff).expect("nonzero lead");
            ring.elem_scale(&v, inv)
        }
        _ => v,
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens` in `R^rank`.
///
/// Pairs and input generators are processed lowest sugar first, ties broken
/// by the POT order of the pair lcm and then by creation order, so the result
/// is reproducible. Pair pruning follows the Gebauer–Möller update without the
/// coprime-leading-term criterion, which does not hold for vectors.
pub fn buchberger(ring: &PolyRing, rank: usize, gens: &[FreeElem]) -> ModuleGB {
    let order = ring.order;
    let mut stats = GbStats::default();
    let mut basis: Vec<FreeElem> = Vec::new();
    let mut sugar: Vec<u64> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut queue: Vec<Pending> = Vec::new();
    let mut seq = 0usize;

    for (k, g) in gens.iter().enumerate() {
        assert_eq!(g.rank(), rank, "generator rank mismatch");
        if let Some(l) = g.leading() {
            queue.push(Pending {
                sugar: g.degree().unwrap_or(0),
                comp: l.comp,
                lcm: l.mono.clone(),
                seq,
                source: Source::Gen(k),
            });
            seq += 1;
        }
    }

    while !queue.is_empty() {
        let mut best = 0;
        for k in 1..queue.len() {
            let (a, b) = (&queue[k], &queue[best]);
            let ord = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| pot_cmp(order, a.comp, &a.lcm, b.comp, &b.lcm))
                .then_with(|| a.seq.cmp(&b.seq));
            if ord == Ordering::Less {
                best = k;
            }
        }
        let item = queue.swap_remove(best);
        stats.pairs_considered += 1;
        let (h, h_sugar) = match item.source {
            Source::Gen(k) => (gens[k].clone(), item.sugar),
            Source::Pair(i, j) => (
                s_poly(ring, &basis[i], &basis[j]).expect("pair shares a component"),
                item.sugar,
            ),
        };
        let h = {
            let basis_ref = &basis;
            let by_comp_ref = &by_comp;
            reduce_with(ring, &h, |comp, mono| {
                by_comp_ref.get(&comp).and_then(|idx| {
                    idx.iter()
                        .map(|&k| &basis_ref[k])
                        .find(|g| g.leading().expect("nonzero").mono.divides(mono))
                })
            })
        };
        if h.is_zero() {
            stats.pairs_reduced_to_zero += 1;
            continue;
        }
        let h = monic(ring, h);
        let hl = h.leading().expect("nonzero").clone();
        let k = basis.len();

        // Gebauer–Möller: prune old pairs through the new leading term
        queue.retain(|pd| match pd.source {
            Source::Pair(i, j) if pd.comp == hl.comp && hl.mono.divides(&pd.lcm) => {
                let lik = basis[i].leading().unwrap().mono.lcm(&hl.mono);
                let ljk = basis[j].leading().unwrap().mono.lcm(&hl.mono);
                lik == pd.lcm || ljk == pd.lcm
            }
            _ => true,
        });

        let mut cands: Vec<(usize, Monomial)> = by_comp
            .get(&hl.comp)
            .map(|idx| {
                idx.iter()
                    .filter(|&&i| active[i])
                    .map(|&i| (i, basis[i].leading().unwrap().mono.lcm(&hl.mono)))
                    .collect()
            })
            .unwrap_or_default();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((i, l)) = cands.pop() {
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l));
            if !dominated {
                kept.push((i, l));
            }
        }
        kept.sort_by_key(|(i, _)| *i);
        let h_deg = hl.mono.degree();
        for (i, l) in kept {
            let gi = basis[i].leading().unwrap().mono.degree();
            let s = (sugar[i] + l.degree() - gi).max(h_sugar + l.degree() - h_deg);
            queue.push(Pending {
                sugar: s,
                comp: hl.comp,
                lcm: l,
                seq,
                source: Source::Pair(i, k),
            });
            seq += 1;
        }

        if let Some(idx) = by_comp.get(&hl.comp) {
            for &i in idx {
                if active[i] && hl.mono.divides(&basis[i].leading().unwrap().mono) {
                    active[i] = false;
                }
            }
        }
        basis.push(h);
        sugar.push(h_sugar);
        active.push(true);
        by_comp.entry(hl.comp).or_default().push(k);
        stats.max_basis_len = stats.max_basis_len.max(active.iter().filter(|a| **a).count());
    }

    let minimal: Vec<FreeElem> = basis
        .into_iter()
        .zip(active)
        .filter_map(|(g, a)| a.then_some(g))
        .collect();
    interreduce(ring, rank, minimal, stats)
}

fn interreduce(ring: &PolyRing, rank: usize, minimal: Vec<FreeElem>, stats: GbStats) -> ModuleGB {
    let order = ring.order;
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let lead = g.terms[0].clone();
        let tail = FreeElem {
            rank,
            terms: g.terms[1..].to_vec(),
        };
        let others = |comp: usize, mono: &Monomial| {
            minimal.iter().enumerate().find_map(|(i, o)| {
                let l = o.leading().unwrap();
                (i != k && l.comp == comp && l.mono.divides(mono)).then_some(o)
            })
        };
        let tail = reduce_with(ring, &tail, others);
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(lead);
        terms.extend(tail.terms);
        reduced.push(monic(ring, FreeElem { rank, terms }));
    }
    reduced.sort_by(|a, b| {
        let (la, lb) = (a.leading().unwrap(), b.leading().unwrap());
        pot_cmp(order, lb.comp, &lb.mono, la.comp, &la.mono)
    });
    ModuleGB::index(*ring, rank, reduced, stats)
}

/// Generators of `{ v in R^ncols : sum_k v_k * cols[k] in <extra> }` via
/// elimination in `R^(rows + ncols)`; the returned set is itself a Gröbner
/// basis of that submodule.
fn eliminate(ring: &PolyRing, rows: usize, cols: &[FreeElem], extra: &[FreeElem]) -> Vec<FreeElem> {
    let ncols = cols.len();
    let rank = rows + ncols;
    let mut gens = Vec::with_capacity(ncols + extra.len());
    for (k, c) in cols.iter().enumerate() {
        assert_eq!(c.rank(), rows);
        let mut terms = c.shifted(rank, 0).terms;
        terms.push(ModTerm {
            comp: rows + k,
            mono: Monomial::one(ring.nvars),
            coeff: 1,
        });
        gens.push(FreeElem { rank, terms });
    }
    for e in extra {
        assert_eq!(e.rank(), rows);
        gens.push(e.shifted(rank, 0));
    }
    let gb = buchberger(ring, rank, &gens);
    gb.basis
        .iter()
        .filter(|g| g.leading().unwrap().comp >= rows)
        .map(|g| g.shifted(ncols, -(rows as isize)))
        .collect()
}

/// Generating set of `ker(m)`; empty iff the kernel is zero.
pub fn kernel_gens(ring: &PolyRing, m: &PolyMatrix) -> Vec<FreeElem> {
    eliminate(ring, m.rows(), m.columns(), &[])
}

/// Generating set of `{ v : m v in target }`.
pub fn preimage_kernel(ring: &PolyRing, m: &PolyMatrix, target: &ModuleGB) -> Vec<FreeElem> {
    assert_eq!(target.rank(), m.rows(), "target rank mismatch");
    eliminate(ring, m.rows(), m.columns(), target.basis())
}

pub fn submodule_equal(ring: &PolyRing, rank: usize, a: &[FreeElem], b: &[FreeElem]) -> bool {
    let ga = buchberger(ring, rank, a);
    let gb = buchberger(ring, rank, b);
    a.iter().all(|v| is_member(v, &gb)) && b.iter().all(|v| is_member(v, &ga))
}

/// Whether the submodule generated by `a` lies inside the one presented by `gb`.
pub fn contained_in(a: &[FreeElem], gb: &ModuleGB) -> bool {
    a.iter().all(|v| is_member(v, gb))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

/// Vector-space dimension of `R^rank / sub`, counted as standard monomials.
pub fn quotient_dim(rank: usize, sub: &ModuleGB) -> QuotientDim {
    let n = sub.ring.nvars;
    let mut total = 0u64;
    for c in 0..rank {
        let leads: Vec<&Monomial> = sub
            .by_comp
            .get(&c)
            .map(|idx| idx.iter().map(|&k| &sub.basis[k].leading().unwrap().mono).collect())
            .unwrap_or_default();
        if leads.iter().any(|m| m.is_one()) {
            continue;
        }
        let mut bounds = Vec::with_capacity(n);
        for v in 0..n {
            let pure = leads
                .iter()
                .filter(|m| m.exps().iter().enumerate().all(|(w, &e)| w == v || e == 0))
                .map(|m| m.exps()[v])
                .min();
            match pure {
                Some(e) => bounds.push(e),
                None => return QuotientDim::Infinite,
            }
        }
        total += count_standard(&leads, &bounds, &mut vec![0; n], 0);
    }
    QuotientDim::Finite(total)
}

fn count_standard(leads: &[&Monomial], bounds: &[u32], cur: &mut Vec<u32>, v: usize) -> u64 {
    if v == bounds.len() {
        let m = Monomial::from_exps(cur);
        return u64::from(!leads.iter().any(|l| l.divides(&m)));
    }
    let mut s = 0;
    for e in 0..bounds[v] {
        cur[v] = e;
        s += count_standard(leads, bounds, cur, v + 1);
    }
    cur[v] = 0;
    s
}
