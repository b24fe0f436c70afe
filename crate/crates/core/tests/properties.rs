mod common;

use lcvanish::cli::{parse_instance, run_instance, Report, RunOptions};
use lcvanish::fparith::{multinomial_mod_p, Fp, LucasTable};
use lcvanish::frobstream::{
    alpha_component_streamed, alpha_on_generator, FrobLayout, GeneratorPlan, LiveTally, ProductForm, StreamStats,
};
use lcvanish::poly::{IntPoly, Poly, PolyRing};
use lcvanish::vanish::{
    baseline_kernel_chain, beta_j_is_zero_streamed, build_instance, decide_vanishing_with, resolve_bound, BoundSpec,
    DecideOptions, Instance, Mode, Outcome,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn alpha(r: &PolyRing, product: &Poly, y: &Poly, offset: &[u32], j: u32) -> Poly {
    let layout = FrobLayout::new(r.field, j).unwrap();
    let table = LucasTable::new(r.field).unwrap();
    let mut stats = StreamStats::default();
    let pf = ProductForm::new(product, y);
    alpha_component_streamed(r, &pf, offset, &layout, &table, &LiveTally::new(), &mut stats).unwrap()
}

fn random_monomial_instance(rng: &mut ChaCha8Rng, p: u64, max_n: usize) -> Option<Instance> {
    let n = rng.gen_range(1..=max_n);
    let s = rng.gen_range(1..=3);
    let f: Vec<IntPoly> = (0..s).map(|_| random_monomial(rng, n, 2)).collect();
    let i = rng.gen_range(1..=s);
    let inst = build_instance(&f, p, i).unwrap();
    (!inst.is_trivially_vanishing()).then_some(inst)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_is_additive(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3]), j in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let r = ring(n, p);
        let product = random_nonzero_poly(&mut rng, &r, 2, 3);
        let a = random_poly(&mut rng, &r, 3, 3);
        let b = random_poly(&mut rng, &r, 3, 3);
        let q = p.pow(j) as u32;
        let off: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        let lhs = alpha(&r, &product, &r.add(&a, &b), &off, j);
        let rhs = r.add(&alpha(&r, &product, &a, &off, j), &alpha(&r, &product, &b, &off, j));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn alpha_is_frobenius_semilinear(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let r = ring(n, p);
        let product = random_nonzero_poly(&mut rng, &r, 2, 2);
        let y = random_poly(&mut rng, &r, 2, 3);
        let g = random_poly(&mut rng, &r, 1, 2);
        let off: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p as u32)).collect();
        let gq = r.frobenius_power(&g, p).unwrap();
        let lhs = alpha(&r, &product, &r.mul(&gq, &y), &off, 1);
        let rhs = r.mul(&g, &alpha(&r, &product, &y, &off, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn streamed_alpha_matches_dense(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5]), j in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let r = ring(n, p);
        let product = random_nonzero_poly(&mut rng, &r, 2, 2);
        let y = random_poly(&mut rng, &r, 3, 3);
        let q = p.pow(j);
        let off: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q as u32)).collect();
        prop_assert_eq!(alpha(&r, &product, &y, &off, j), dense_alpha(&r, &y, &product, &off, q));
    }

    #[test]
    fn alpha_sends_cocycles_to_cocycles(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let s = rng.gen_range(1..=3);
        let r = ring(n, p);
        let f: Vec<IntPoly> = (0..s)
            .map(|_| {
                let g = random_nonzero_poly(&mut rng, &r, 2, 2);
                let mut ip = IntPoly::new(n);
                for (m, c) in g.terms() {
                    ip.add_term(m.clone(), (*c).into());
                }
                ip
            })
            .collect();
        let i = rng.gen_range(0..=s);
        let inst = build_instance(&f, p, i).unwrap();
        let k = inst.complex();
        let products: Vec<Poly> = k.subsets(i).iter().map(|sub| k.subset_product(sub)).collect();
        let layout = FrobLayout::new(Fp::new(p).unwrap(), 1).unwrap();
        let table = LucasTable::new(r.field).unwrap();
        let off: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p as u32)).collect();
        for g in inst.module().generators() {
            let plan = GeneratorPlan::new(&r, &products, &g.element);
            let mut stats = StreamStats::default();
            let z = alpha_on_generator(&r, &plan, &off, &layout, &table, &LiveTally::new(), &mut stats).unwrap();
            prop_assert!(k.apply_differential(i, &z).is_zero());
            prop_assert_eq!(stats.bound_violations, 0);
        }
    }

    #[test]
    fn multinomial_table_agrees_with_digits(total in 0u64..200, cut in 0u64..200, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let a = cut.min(total);
        let parts = [a, total - a];
        let fld = Fp::new(p).unwrap();
        prop_assert_eq!(LucasTable::new(fld).unwrap().multinomial(total, &parts), multinomial_mod_p(total, &parts, fld).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zero_beta_stays_zero(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(inst) = random_monomial_instance(&mut rng, p, 2) {
            let mut was_zero = false;
            for j in 1..=3 {
                let z = beta_j_is_zero_streamed(&inst, j).unwrap().is_zero;
                prop_assert!(!was_zero || z, "beta_{} = 0 but beta_{} != 0", j - 1, j);
                was_zero = z;
            }
        }
    }

    #[test]
    fn kernel_chain_increases_and_fits_the_length(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(inst) = random_monomial_instance(&mut rng, p, 3) {
            let chain = baseline_kernel_chain(&inst, 4).unwrap();
            prop_assert!(chain.monotone);
            if let Ok(b) = resolve_bound(&inst, BoundSpec::FiniteLength, 4) {
                prop_assert!(chain.r.is_some_and(|r| r <= b.u));
            }
        }
    }

    #[test]
    fn binomial_instances_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let s = rng.gen_range(1..=2);
        let r = ring(n, 2);
        let f: Vec<IntPoly> = (0..s)
            .map(|_| {
                let g = random_nonzero_poly(&mut rng, &r, 2, 2);
                let mut ip = IntPoly::new(n);
                for (m, c) in g.terms() {
                    ip.add_term(m.clone(), (*c).into());
                }
                ip
            })
            .collect();
        let i = rng.gen_range(1..=s);
        let inst = build_instance(&f, 2, i).unwrap();
        let opts = DecideOptions { max_steps: 3, timings: false };
        let v = decide_vanishing_with(&inst, BoundSpec::Empirical, Mode::Compare, opts);
        prop_assert!(v.is_ok(), "{:?}", v.err());
    }
}

#[test]
fn reports_round_trip_through_json() {
    for (file, p, degree, mode) in [
        ("axes.inst", 3, 2, Mode::Streaming),
        ("doubled.inst", 2, 2, Mode::Compare),
        ("line.inst", 3, 1, Mode::Streaming),
    ] {
        let f = parse_instance(instances_dir().join(file)).unwrap();
        let opts = RunOptions {
            mode,
            bound: BoundSpec::Empirical,
            ..RunOptions::new(p, degree)
        };
        let rep = run_instance(&f, &opts).unwrap();
        let once = rep.to_json().unwrap();
        let back = Report::from_json(&once).unwrap();
        assert_eq!(back.to_json().unwrap(), once);
        assert_ne!(rep.verdict.result, Outcome::Inconclusive);
    }
}
