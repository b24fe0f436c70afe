//! Koszul cocomplexes `K(R; g1^q, ..., gs^q)`, the Frobenius chain maps between
//! them, and presentations of their cohomology.
//!
//! `K^t` is free on the `t`-subsets of `{0, .., s-1}` listed in colex order.
//! The differential `d^t : K^t -> K^(t+1)` is
//!
//! ```text
//! d^t(k)_{v1..v(t+1)} = sum_l (-1)^l * g_{v_l} * k_{v1..^v_l..v(t+1)}      (l 1-based)
//! ```
//!
//! and the chain map to the level-`q p^j` complex multiplies the component of
//! a subset `S` by `(prod_{v in S} g_v^q)^(p^j - 1)`.

use crate::error::{Error, Result};
use crate::freemod::{
    buchberger, is_member, kernel_gens, preimage_kernel, quotient_dim, FreeElem, ModuleGB,
    ModuleOps, PolyMatrix, QuotientDim,
};
use crate::poly::{Poly, PolyRing};

/// Strictly increasing subset of `{0, .., s-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex(Vec<usize>);

impl SubsetIndex {
    pub fn new(mut v: Vec<usize>) -> Result<Self> {
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Contract(format!("repeated index in subset {v:?}")));
        }
        Ok(SubsetIndex(v))
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position in the colex listing of subsets of the same size.
    pub fn colex_rank(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &v)| binomial(v, k + 1))
            .sum()
    }

    /// The subset with its `l`-th element (0-based) removed.
    pub fn without(&self, l: usize) -> SubsetIndex {
        let mut v = self.0.clone();
        v.remove(l);
        SubsetIndex(v)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All `t`-subsets of `{0, .., s-1}` in colex order.
pub fn colex_subsets(s: usize, t: usize) -> Vec<SubsetIndex> {
    let mut out = Vec::with_capacity(binomial(s, t));
    if t > s {
        return out;
    }
    let mut cur: Vec<usize> = (0..t).collect();
    loop {
        out.push(SubsetIndex(cur.clone()));
        // colex successor: bump the first element that can move up
        let mut k = 0;
        while k < t && (k + 1 < t && cur[k] + 1 == cur[k + 1] || k + 1 == t && cur[k] + 1 == s) {
            k += 1;
        }
        if k == t {
            break;
        }
        cur[k] += 1;
        for (i, c) in cur.iter_mut().enumerate().take(k) {
            *c = i;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    ring: PolyRing,
    base_gens: Vec<Poly>,
    gens: Vec<Poly>,
    q: u64,
    subsets: Vec<Vec<SubsetIndex>>,
    diffs: Vec<PolyMatrix>,
}

/// Builds `K(R; g1^q, .., gs^q)` and checks `d o d = 0`.
pub fn build_koszul(ring: &PolyRing, gens: &[Poly], q: u64) -> Result<KoszulComplex> {
    if gens.is_empty() {
        return Err(Error::Contract("Koszul complex needs at least one generator".into()));
    }
    let s = gens.len();
    let powered: Vec<Poly> = gens
        .iter()
        .map(|g| ring.frobenius_power(g, q))
        .collect::<Result<_>>()?;
    let subsets: Vec<Vec<SubsetIndex>> = (0..=s).map(|t| colex_subsets(s, t)).collect();
    let neg = |f: &Poly| ring.neg(f);
    let mut diffs = Vec::with_capacity(s);
    for t in 0..s {
        let rows = subsets[t + 1].len();
        let mut columns: Vec<Vec<(usize, Poly)>> = vec![Vec::new(); subsets[t].len()];
        for (r, target) in subsets[t + 1].iter().enumerate() {
            for l in 0..=t {
                let src = target.without(l).colex_rank();
                let g = &powered[target.elems()[l]];
                // (-1)^l with l counted from 1
                let entry = if l % 2 == 0 { neg(g) } else { g.clone() };
                columns[src].push((r, entry));
            }
        }
        let columns = columns
            .into_iter()
            .map(|c| FreeElem::from_components(ring, rows, c))
            .collect();
        diffs.push(PolyMatrix::from_columns(rows, columns));
    }
    let k = KoszulComplex {
        ring: *ring,
        base_gens: gens.to_vec(),
        gens: powered,
        q,
        subsets,
        diffs,
    };
    for t in 0..s.saturating_sub(1) {
        if !k.diffs[t + 1].compose(ring, &k.diffs[t]).is_zero() {
            return Err(Error::Consistency(format!("d^{} o d^{} != 0", t + 1, t)));
        }
    }
    Ok(k)
}

impl KoszulComplex {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Number of generators `s`.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// The generators before raising to the level.
    pub fn base_gens(&self) -> &[Poly] {
        &self.base_gens
    }

    /// The generators `g_v^q` the differentials use.
    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn level(&self) -> u64 {
        self.q
    }

    pub fn rank(&self, t: usize) -> usize {
        self.subsets.get(t).map_or(0, Vec::len)
    }

    pub fn subsets(&self, t: usize) -> &[SubsetIndex] {
        &self.subsets[t]
    }

    /// `d^t : K^t -> K^(t+1)`; for `t = s` this is the zero map to `0`.
    pub fn differential(&self, t: usize) -> PolyMatrix {
        if t < self.diffs.len() {
            self.diffs[t].clone()
        } else {
            PolyMatrix::zero(0, self.rank(t))
        }
    }

    pub fn apply_differential(&self, t: usize, v: &FreeElem) -> FreeElem {
        if t < self.diffs.len() {
            self.diffs[t].apply(&self.ring, v)
        } else {
            FreeElem::zero(0)
        }
    }

    /// Product `prod_{v in S} g_v^q` for a subset.
    pub fn subset_product(&self, subset: &SubsetIndex) -> Poly {
        subset
            .elems()
            .iter()
            .fold(self.ring.one(), |acc, &v| self.ring.mul(&acc, &self.gens[v]))
    }

    /// Gröbner basis of `im d^(i-1)` inside `K^i` (zero for `i = 0`).
    pub fn coboundary_gb(&self, i: usize) -> ModuleGB {
        buchberger(&self.ring, self.rank(i), &self.coboundary_gens(i))
    }

    pub fn coboundary_gens(&self, i: usize) -> Vec<FreeElem> {
        if i == 0 {
            Vec::new()
        } else {
            self.diffs[i - 1]
                .columns()
                .iter()
                .filter(|c| !c.is_zero())
                .cloned()
                .collect()
        }
    }

    /// Generators of `ker d^i`.
    pub fn cocycle_gens(&self, i: usize) -> Vec<FreeElem> {
        if i >= self.diffs.len() {
            (0..self.rank(i))
                .map(|k| FreeElem::basis(&self.ring, self.rank(i), k))
                .collect()
        } else {
            kernel_gens(&self.ring, &self.diffs[i])
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleRep {
    pub degree: usize,
    pub element: FreeElem,
}

/// `H^i` of a Koszul complex, given by cocycle representatives and the
/// coboundary submodule they are taken modulo.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: PolyRing,
    degree: usize,
    ambient_rank: usize,
    generators: Vec<CocycleRep>,
    coboundaries: Vec<FreeElem>,
    coboundary_gb: ModuleGB,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PresentationOptions {
    /// Drop generators already generated by coboundaries and earlier kept
    /// generators.
    pub prune: bool,
}

pub fn cohomology_presentation(k: &KoszulComplex, i: usize) -> Result<PresentedModule> {
    cohomology_presentation_with(k, i, PresentationOptions::default())
}

pub fn cohomology_presentation_with(
    k: &KoszulComplex,
    i: usize,
    opts: PresentationOptions,
) -> Result<PresentedModule> {
    if i > k.len() {
        return Err(Error::Contract(format!(
            "degree {i} outside 0..={}",
            k.len()
        )));
    }
    let ring = *k.ring();
    let coboundaries = k.coboundary_gens(i);
    let coboundary_gb = buchberger(&ring, k.rank(i), &coboundaries);
    let mut cocycles = k.cocycle_gens(i);
    for z in &cocycles {
        if !k.apply_differential(i, z).is_zero() {
            return Err(Error::Consistency("kernel generator is not a cocycle".into()));
        }
    }
    if opts.prune {
        let mut kept: Vec<FreeElem> = Vec::new();
        let mut span = coboundaries.clone();
        for z in cocycles {
            let gb = buchberger(&ring, k.rank(i), &span);
            if !is_member(&z, &gb) {
                span.push(z.clone());
                kept.push(z);
            }
        }
        cocycles = kept;
    }
    let generators = cocycles
        .into_iter()
        .map(|element| CocycleRep { degree: i, element })
        .collect();
    Ok(PresentedModule {
        ring,
        degree: i,
        ambient_rank: k.rank(i),
        generators,
        coboundaries,
        coboundary_gb,
    })
}

impl PresentedModule {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[CocycleRep] {
        &self.generators
    }

    pub fn generator_elems(&self) -> Vec<FreeElem> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }

    pub fn coboundaries(&self) -> &[FreeElem] {
        &self.coboundaries
    }

    pub fn coboundary_gb(&self) -> &ModuleGB {
        &self.coboundary_gb
    }

    /// True when every generator is a coboundary.
    pub fn is_zero(&self) -> bool {
        self.generators
            .iter()
            .all(|g| is_member(&g.element, &self.coboundary_gb))
    }

    /// The map `R^v -> K^i` sending the `k`-th basis vector to the `k`-th
    /// generator.
    pub fn generator_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(self.ambient_rank, self.generator_elems())
    }

    /// Gröbner basis of the relations among the generators, so that the
    /// module is `R^v / relations`.
    pub fn relations_gb(&self) -> ModuleGB {
        let rels = preimage_kernel(&self.ring, &self.generator_matrix(), &self.coboundary_gb);
        buchberger(&self.ring, self.generators.len(), &rels)
    }

    /// Length over the field, i.e. vector-space dimension.
    pub fn length(&self) -> QuotientDim {
        quotient_dim(self.generators.len(), &self.relations_gb())
    }
}

/// `beta_j` from the level-`q` complex to the level-`q p^j` complex.
#[derive(Clone, Debug)]
pub struct ChainMapLevel {
    pub source_level: u64,
    pub target_level: u64,
    pub exponent: u64,
    multipliers: Vec<Vec<Poly>>,
    target: KoszulComplex,
}

pub fn beta_chain_map(source: &KoszulComplex, j: u32) -> Result<ChainMapLevel> {
    if j == 0 {
        return Err(Error::Contract("chain map needs j >= 1".into()));
    }
    let ring = *source.ring();
    let pj = ring
        .field
        .prime_power(j)
        .ok_or_else(|| Error::Contract("p^j overflows".into()))?;
    let target_level = source
        .level()
        .checked_mul(pj)
        .ok_or_else(|| Error::Contract("level overflows".into()))?;
    let target = build_koszul(&ring, source.base_gens(), target_level)?;
    let exponent = pj - 1;
    let multipliers: Vec<Vec<Poly>> = (0..=source.len())
        .map(|t| {
            source
                .subsets(t)
                .iter()
                .map(|s| ring.pow(&source.subset_product(s), exponent))
                .collect()
        })
        .collect();
    let cm = ChainMapLevel {
        source_level: source.level(),
        target_level,
        exponent,
        multipliers,
        target,
    };
    for t in 0..source.len() {
        for k in 0..source.rank(t) {
            let e = FreeElem::basis(&ring, source.rank(t), k);
            let lhs = cm.target.apply_differential(t, &cm.apply(t, &e));
            let rhs = cm.apply(t + 1, &source.apply_differential(t, &e));
            if lhs != rhs {
                return Err(Error::Consistency(format!(
                    "chain map does not commute with d^{t}"
                )));
            }
        }
    }
    Ok(cm)
}

impl ChainMapLevel {
    pub fn target(&self) -> &KoszulComplex {
        &self.target
    }

    pub fn multiplier(&self, t: usize, k: usize) -> &Poly {
        &self.multipliers[t][k]
    }

    /// Component-wise multiplication of a degree-`t` element.
    pub fn apply(&self, t: usize, v: &FreeElem) -> FreeElem {
        let ring = *self.target.ring();
        let mut acc = FreeElem::zero(v.rank());
        for (c, f) in v.components(&ring) {
            let piece = FreeElem::from_components(&ring, v.rank(), [(c, ring.mul(&f, &self.multipliers[t][c]))]);
            acc = ring.elem_add(&acc, &piece);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fparith::Fp;
    use crate::freemod::{submodule_equal, QuotientDim};
    use crate::poly::default_var_names;

    fn ring(n: usize, p: u64) -> PolyRing {
        PolyRing::new(n, Fp::new(p).unwrap())
    }

    fn polys(r: &PolyRing, src: &[&str]) -> Vec<Poly> {
        src.iter()
            .map(|s| r.parse(s, &default_var_names(r.nvars)).unwrap())
            .collect()
    }

    #[test]
    fn colex_order_and_rank() {
        let subs = colex_subsets(4, 2);
        let raw: Vec<Vec<usize>> = subs.iter().map(|s| s.elems().to_vec()).collect();
        assert_eq!(
            raw,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        for (k, s) in subs.iter().enumerate() {
            assert_eq!(s.colex_rank(), k);
        }
        assert_eq!(colex_subsets(3, 0).len(), 1);
        assert_eq!(colex_subsets(3, 3).len(), 1);
        assert!(colex_subsets(2, 3).is_empty());
        assert!(SubsetIndex::new(vec![1, 1]).is_err());
    }

    #[test]
    fn koszul_small_examples() {
        let r = ring(2, 5);
        let k = build_koszul(&r, &polys(&r, &["x1"]), 1).unwrap();
        assert_eq!(k.rank(0), 1);
        assert_eq!(k.rank(1), 1);
        assert_eq!(r.format(&k.differential(0).entry(&r, 0, 0)), "4*x1");

        let k = build_koszul(&r, &polys(&r, &["x1", "x2"]), 1).unwrap();
        let d0 = k.differential(0);
        assert_eq!(r.format(&d0.entry(&r, 0, 0)), "4*x1");
        assert_eq!(r.format(&d0.entry(&r, 1, 0)), "4*x2");
        let d1 = k.differential(1);
        assert_eq!(r.format(&d1.entry(&r, 0, 0)), "x2");
        assert_eq!(r.format(&d1.entry(&r, 0, 1)), "4*x1");
        assert!(d1.compose(&r, &d0).is_zero());

        let r2 = ring(1, 2);
        let k = build_koszul(&r2, &polys(&r2, &["x1", "x1"]), 2).unwrap();
        assert_eq!(k.gens(), &polys(&r2, &["x1^2", "x1^2"])[..]);
    }

    #[test]
    fn cohomology_of_regular_sequences() {
        for n in 1..=3 {
            let r = ring(n, 3);
            let names = default_var_names(n);
            let gens: Vec<Poly> = names.iter().map(|v| r.parse(v, &names).unwrap()).collect();
            let k = build_koszul(&r, &gens, 1).unwrap();
            for i in 0..n {
                let m = cohomology_presentation(&k, i).unwrap();
                assert!(m.is_zero(), "H^{i} of a regular sequence of length {n}");
            }
            let top = cohomology_presentation(&k, n).unwrap();
            assert_eq!(top.generators().len(), 1);
            assert!(!top.is_zero());
            assert_eq!(top.length(), QuotientDim::Finite(1));
        }
    }

    #[test]
    fn cohomology_of_doubled_generator() {
        let r = ring(1, 3);
        let k = build_koszul(&r, &polys(&r, &["x1", "x1"]), 1).unwrap();
        let h1 = cohomology_presentation(&k, 1).unwrap();
        assert!(!h1.is_zero());
        let expect = FreeElem::from_components(&r, 2, [(0, r.one()), (1, r.one())]);
        let mut gens = h1.generator_elems();
        gens.extend(h1.coboundaries().iter().cloned());
        let mut with_expect = h1.coboundaries().to_vec();
        with_expect.push(expect);
        assert!(submodule_equal(&r, 2, &gens, &with_expect));
        let rel = h1.relations_gb();
        assert_eq!(quotient_dim(h1.generators().len(), &rel), QuotientDim::Finite(1));
    }

    #[test]
    fn chain_map_examples() {
        let r = ring(1, 2);
        let k = build_koszul(&r, &polys(&r, &["x1"]), 1).unwrap();
        let cm = beta_chain_map(&k, 1).unwrap();
        assert_eq!(cm.multiplier(1, 0), &polys(&r, &["x1"])[0]);
        let e = FreeElem::basis(&r, 1, 0);
        assert_eq!(cm.apply(1, &e), FreeElem::from_components(&r, 1, [(0, r.var(0))]));
        assert!(cm.apply(1, &FreeElem::zero(1)).is_zero());

        for p in [2u64, 3, 5] {
            let r = ring(1, p);
            let k = build_koszul(&r, &polys(&r, &["x1", "x1"]), 1).unwrap();
            let cm = beta_chain_map(&k, 1).unwrap();
            let want = r.monomial(crate::poly::Monomial::from_exps(&[2 * p as u32 - 2]), 1);
            assert_eq!(cm.multiplier(2, 0), &want);
            if p == 3 {
                let e = FreeElem::basis(&r, 1, 0);
                assert_eq!(
                    cm.apply(2, &e),
                    FreeElem::from_components(&r, 1, [(0, r.monomial(crate::poly::Monomial::from_exps(&[4]), 1))])
                );
            }
        }

        let r = ring(2, 2);
        let k = build_koszul(&r, &polys(&r, &["x1", "x2"]), 1).unwrap();
        let cm = beta_chain_map(&k, 2).unwrap();
        assert_eq!(cm.multiplier(1, 1), &polys(&r, &["x2^3"])[0]);
    }

    #[test]
    fn chain_map_composition_at_p2() {
        let r = ring(2, 2);
        let gens = polys(&r, &["x1^2 + x2", "x1*x2 + 1", "x2^2"]);
        let base = build_koszul(&r, &gens, 1).unwrap();
        let b1 = beta_chain_map(&base, 1).unwrap();
        let b1_next = beta_chain_map(b1.target(), 1).unwrap();
        let b2 = beta_chain_map(&base, 2).unwrap();
        assert_eq!(b1_next.target_level, b2.target_level);
        for t in 0..=3 {
            for k in 0..base.rank(t) {
                let e = FreeElem::from_components(&r, base.rank(t), [(k, gens[0].clone())]);
                assert_eq!(b1_next.apply(t, &b1.apply(t, &e)), b2.apply(t, &e));
            }
        }
    }
}
