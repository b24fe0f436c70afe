#![allow(dead_code)]

use std::path::PathBuf;

use lcvanish::fparith::{Fp, FpScalar};
use lcvanish::poly::{default_var_names, parse_int_poly, IntPoly, Monomial, Poly, PolyRing};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn instances_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances")
}

pub fn int_polys(src: &[&str], n: usize) -> Vec<IntPoly> {
    let names = default_var_names(n);
    src.iter().map(|s| parse_int_poly(s, &names).unwrap()).collect()
}

pub fn ring(n: usize, p: u64) -> PolyRing {
    PolyRing::new(n, Fp::new(p).unwrap())
}

pub fn random_poly(rng: &mut ChaCha8Rng, r: &PolyRing, max_deg: u32, max_terms: usize) -> Poly {
    let p = r.p();
    let terms = rng.gen_range(1..=max_terms);
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; r.nvars];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 {
            e[rng.gen_range(0..r.nvars)] += 1;
            budget -= 1;
        }
        out.push((Monomial::from_exps(&e), rng.gen_range(1..p)));
    }
    r.from_terms(out)
}

pub fn random_nonzero_poly(rng: &mut ChaCha8Rng, r: &PolyRing, max_deg: u32, max_terms: usize) -> Poly {
    loop {
        let f = random_poly(rng, r, max_deg, max_terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random monomial of degree 1..=max_deg as an integer polynomial.
pub fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> IntPoly {
    let mut e = vec![0u32; n];
    for _ in 0..rng.gen_range(1..=max_deg) {
        e[rng.gen_range(0..n)] += 1;
    }
    IntPoly::from_terms(n, [(Monomial::from_exps(&e), 1.into())])
}

/// Top basis coordinate of `y` over the subring of `q`-th powers: write each
/// monomial `x^e` as `x^(e mod q) * (x^(e div q))^q` and keep the terms whose
/// remainder is `q - 1` in every variable.
pub fn dense_top_coordinate(r: &PolyRing, y: &Poly, q: u64) -> Poly {
    let mut keep: Vec<(Monomial, FpScalar)> = Vec::new();
    for (m, c) in y.terms() {
        let rem: Vec<u64> = m.exps().iter().map(|&e| e as u64 % q).collect();
        if rem.iter().all(|&x| x == q - 1) {
            let quo: Vec<u32> = m.exps().iter().map(|&e| (e as u64 / q) as u32).collect();
            keep.push((Monomial::from_exps(&quo), *c));
        }
    }
    r.from_terms(keep)
}

/// `alpha` on one component, computed densely from `x^offset * y * P^(q-1)`.
pub fn dense_alpha(r: &PolyRing, y: &Poly, product: &Poly, offset: &[u32], q: u64) -> Poly {
    let shifted = r.mul_term(y, &Monomial::from_exps(offset), 1);
    let full = r.mul(&shifted, &r.pow(product, q - 1));
    dense_top_coordinate(r, &full, q)
}

/// Koszul differential entry by the defining formula, independent of the
/// library's matrix: the coefficient of `k_T` in `(d k)_S`.
pub fn koszul_entry(r: &PolyRing, gens: &[Poly], s: &[usize], t: &[usize]) -> Poly {
    if s.len() != t.len() + 1 {
        return Poly::zero();
    }
    for (l, v) in s.iter().enumerate() {
        let rest: Vec<usize> = s.iter().copied().filter(|x| x != v).collect();
        if rest == t {
            return if l % 2 == 0 { r.neg(&gens[*v]) } else { gens[*v].clone() };
        }
    }
    Poly::zero()
}
