use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use widerec::battery::random_spec;
use widerec::linalg::{FieldSpec, Mat};
use widerec::module::{QModule, SearchOrder};
use widerec::problem::ProblemSpec;
use widerec::recollement::RecollementCtx;
use widerec::wide::{ReductionChecker, WideEngine, WideSubcat};

type Instance = Option<Arc<(ProblemSpec, RecollementCtx)>>;

/// Catalogs are the expensive part, so instances are drawn from a fixed seed pool and shared.
const POOL: u64 = 48;

/// A random instance, or `None` when it does not fit the default bounds.
fn instance(seed: u64) -> Instance {
    static CACHE: OnceLock<Mutex<HashMap<u64, Instance>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&seed) {
        return hit.clone();
    }
    let mut spec = random_spec(&mut ChaCha8Rng::seed_from_u64(seed));
    spec.bounds.total_dim = Some(4);
    let built = match spec.context() {
        Ok(ctx) => Some(Arc::new((spec, ctx))),
        Err(e) if e.is_budget() => None,
        Err(e) => panic!("seed {seed}: {e}"),
    };
    cache.lock().unwrap().insert(seed, built.clone());
    built
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wide_subcategories_survive_doubled_bounds(seed in 0..POOL) {
        let Some(inst) = instance(seed) else { return Ok(()) };
        let (spec, ctx) = (&inst.0, &inst.1);
        let bounds = spec.wide_bounds().unwrap();
        let catalog = ctx.big_catalog();
        let Ok(found) = WideEngine::new(catalog, bounds).and_then(|e| e.enumerate_wide()) else { return Ok(()) };
        let Ok(doubled) = WideEngine::new(catalog, bounds.doubled()) else { return Ok(()) };
        for s in &found {
            prop_assert!(doubled.is_wide(s), "seed {seed}: {}", s.describe(catalog));
        }
    }

    #[test]
    fn sums_decompose_to_their_summands(seed in 0..POOL, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let Some(inst) = instance(seed) else { return Ok(()) };
        let ctx = &inst.1;
        let catalog = ctx.big_catalog();
        let mut ids: Vec<usize> = picks.iter().map(|i| i.index(catalog.len())).collect();
        let m = catalog.sum_of(&ids);
        ids.sort_unstable();
        let forward = catalog.decompose_with(&m, SearchOrder::Forward);
        let reverse = catalog.decompose_with(&m, SearchOrder::Reverse);
        if let (Ok(mut a), Ok(mut b)) = (forward, reverse) {
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(&a, &ids);
            prop_assert_eq!(&b, &ids);
            // membership is a support check: a subcategory holds the sum iff it holds every summand
            let s = WideSubcat::new(ids.clone());
            prop_assert!(s.contains(catalog, &m).unwrap());
            let smaller = WideSubcat::new(ids[1..].to_vec());
            prop_assert_eq!(smaller.contains(catalog, &m).unwrap(), smaller.has(ids[0]));
        }
    }

    #[test]
    fn restriction_round_trips(seed in 0..POOL) {
        let Some(inst) = instance(seed) else { return Ok(()) };
        let (spec, ctx) = (&inst.0, &inst.1);
        let Ok(checker) = ReductionChecker::new(ctx, spec.wide_bounds().unwrap()) else { return Ok(()) };
        let Ok(b) = checker.bijection() else { return Ok(()) };
        prop_assert!(b.passed(), "seed {seed}");
        for (s, w) in &b.rows {
            prop_assert_eq!(&checker.preimage(w).unwrap(), s);
            prop_assert!(checker.base().is_subset_of(s));
            // restriction is the image of j^* on the members
            prop_assert!(w.is_subset_of(&WideSubcat::whole(ctx.local_catalog())));
            prop_assert!(checker.lifts_stay_inside(s).unwrap());
        }
    }

    #[test]
    fn functor_composites_are_identities(seed in 0..POOL) {
        let Some(inst) = instance(seed) else { return Ok(()) };
        let ctx = &inst.1;
        let (small, local) = (ctx.small_catalog(), ctx.local_catalog());
        for e in small.entries() {
            let m = ctx.i_star(&e.module);
            prop_assert!(ctx.j_upper(&m).is_zero());
            prop_assert_eq!(small.identify(&ctx.i_upper(&m)), Some(e.id));
            prop_assert_eq!(small.identify(&ctx.i_shriek(&m)), Some(e.id));
        }
        for e in local.entries() {
            prop_assert_eq!(local.identify(&ctx.j_upper(&ctx.j_shriek(&e.module))), Some(e.id));
            prop_assert_eq!(local.identify(&ctx.j_upper(&ctx.j_lower(&e.module))), Some(e.id));
        }
    }

    #[test]
    fn recollement_axioms_hold(seed in 0..POOL) {
        let Some(inst) = instance(seed) else { return Ok(()) };
        let ctx = &inst.1;
        let report = ctx.check_recollement();
        let failures: Vec<_> = report.failures().collect();
        prop_assert!(failures.is_empty(), "seed {seed}: {failures:?}");
        let report = ctx.check_gluing();
        let failures: Vec<_> = report.failures().collect();
        prop_assert!(failures.is_empty(), "seed {seed}: {failures:?}");
    }
}

fn matrix(p: u32, max: usize) -> impl Strategy<Value = Mat> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(0..p, r * c)
            .prop_map(move |data| Mat::from_vec(FieldSpec::new(p).unwrap(), r, c, data).unwrap())
    })
}

fn field() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7, 97])
}

proptest! {
    #[test]
    fn rank_nullity_and_kernel(m in field().prop_flat_map(|p| matrix(p, 7))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rref_is_idempotent(m in field().prop_flat_map(|p| matrix(p, 7))) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(r.rref(), (r.clone(), pivots.clone()));
        prop_assert_eq!(pivots.len(), m.rank());
    }

    #[test]
    fn products_associate_and_inverses_invert(
        (a, b, c) in field().prop_flat_map(|p| (matrix_sq(p, 4), matrix_sq(p, 4), matrix_sq(p, 4)))
    ) {
        if a.rows() == b.rows() && b.rows() == c.rows() {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), Mat::identity(a.field(), a.rows()));
        } else {
            prop_assert!(a.rank() < a.rows());
        }
    }

    #[test]
    fn random_algebras_are_well_formed(seed in 0..POOL) {
        let spec = random_spec(&mut ChaCha8Rng::seed_from_u64(seed));
        let alg = spec.algebra().unwrap();
        prop_assert!(alg.is_associative());
        prop_assert!(alg.idempotents_are_complete());
        for v in 0..alg.quiver().vertex_count() {
            let p = QModule::projective(&alg, v);
            prop_assert!(p.satisfies_relations(&alg));
            prop_assert!(QModule::injective(&alg, v).satisfies_relations(&alg));
            prop_assert_eq!(p.total_dim(), (0..alg.quiver().vertex_count()).map(|t| alg.basis_between(v, t).len()).sum::<usize>());
        }
    }
}

fn matrix_sq(p: u32, max: usize) -> impl Strategy<Value = Mat> {
    (1..=max).prop_flat_map(move |n| {
        prop::collection::vec(0..p, n * n)
            .prop_map(move |data| Mat::from_vec(FieldSpec::new(p).unwrap(), n, n, data).unwrap())
    })
}
