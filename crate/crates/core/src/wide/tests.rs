use std::collections::BTreeSet;

use super::*;
use crate::algebra::{path_algebra, Idem, Quiver, Relation};
use crate::error::Budget;
use crate::linalg::FieldSpec;
use crate::module::{CatalogBounds, IsoCatalog};
use crate::recollement::RecollementCtx;

const SMALL: CatalogBounds = CatalogBounds {
    vertex_dim: 1,
    total_dim: 4,
};

fn example() -> RecollementCtx {
    let f = FieldSpec::new(2).unwrap();
    let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")]).unwrap();
    let e = Idem::new(&q, &["2", "3"]).unwrap();
    RecollementCtx::new(
        path_algebra(q, vec![], f).unwrap(),
        e,
        SMALL,
        Budget::default(),
    )
    .unwrap()
}

fn ids(catalog: &IsoCatalog, labels: &[&str]) -> WideSubcat {
    WideSubcat::new(
        labels
            .iter()
            .map(|l| catalog.entries().iter().find(|e| e.label == *l).unwrap().id)
            .collect(),
    )
}

fn labels(catalog: &IsoCatalog, s: &WideSubcat) -> BTreeSet<String> {
    s.ids()
        .iter()
        .map(|&i| catalog.label(i).to_string())
        .collect()
}

fn set(labels: &[&str]) -> BTreeSet<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

#[test]
fn closure_examples() {
    let ctx = example();
    let cat = ctx.big_catalog();
    let engine = WideEngine::new(cat, WideBounds::default()).unwrap();
    assert!(engine.is_wide(&WideSubcat::whole(cat)));
    assert!(engine.is_wide(&WideSubcat::zero()));
    assert!(engine.is_wide(&ids(cat, &["1"])));
    let bad = ids(cat, &["1", "2/13"]);
    assert!(engine.closed_under_kernels(&bad));
    // S1 -> 2/13 has cokernel 2/3
    assert!(!engine.closed_under_cokernels(&bad));
    assert!(!engine.is_wide(&bad));
    assert!(engine.closed_under_extensions(&ids(cat, &["1", "3"])));

    let local = ctx.local_catalog();
    let corner = WideEngine::new(local, WideBounds::default()).unwrap();
    assert!(!corner.closed_under_extensions(&ids(local, &["2", "3"])));
    assert!(corner.closed_under_kernels(&WideSubcat::whole(local)));
}

#[test]
fn contains_examples() {
    let ctx = example();
    let cat = ctx.big_catalog();
    let s1 = ids(cat, &["1"]);
    assert!(s1.contains(cat, &ctx.big_cat().zero()).unwrap());
    assert!(s1.contains(cat, &ctx.big_cat().simple(0)).unwrap());
    let sum = ctx
        .big_cat()
        .direct_sum(&[ctx.big_cat().simple(0), ctx.big_cat().simple(1)]);
    assert!(!s1.contains(cat, &sum).unwrap());
}

#[test]
fn enumeration_counts() {
    let ctx = example();
    let corner = WideEngine::new(ctx.local_catalog(), WideBounds::default()).unwrap();
    assert_eq!(corner.enumerate_wide().unwrap().len(), 5);

    let f = FieldSpec::new(2).unwrap();
    let one = Quiver::new(&["1"], &[] as &[(&str, &str, &str)]).unwrap();
    let cat = crate::module::ModCat::new(
        std::sync::Arc::new(path_algebra(one, vec![], f).unwrap()),
        Budget::default(),
    );
    let catalog = IsoCatalog::enumerate(&cat, SMALL).unwrap();
    let engine = WideEngine::new(&catalog, WideBounds::default()).unwrap();
    assert_eq!(engine.enumerate_wide().unwrap().len(), 2);
}

#[test]
fn table_rows() {
    let ctx = example();
    let checker = ReductionChecker::new(&ctx, WideBounds::default()).unwrap();
    let big = ctx.big_catalog();
    let local = ctx.local_catalog();
    assert_eq!(labels(big, checker.base()), set(&["1"]));

    let bij = checker.bijection().unwrap();
    assert!(bij.passed());
    let rows: BTreeSet<(BTreeSet<String>, BTreeSet<String>)> = bij
        .rows
        .iter()
        .map(|(s, w)| (labels(big, s), labels(local, w)))
        .collect();
    let expected: BTreeSet<_> = [
        (
            set(&["1", "2/3", "2/13", "2", "3", "2/1"]),
            set(&["2/3", "2", "3"]),
        ),
        (set(&["1", "2/3", "2/13"]), set(&["2/3"])),
        (set(&["1", "3"]), set(&["3"])),
        (set(&["1", "2", "2/1"]), set(&["2"])),
        (set(&["1"]), set(&[])),
    ]
    .into_iter()
    .collect();
    assert_eq!(rows, expected);

    for (s, _) in &bij.rows {
        assert!(checker.lifts_stay_inside(s).unwrap());
        let images = checker.quotient_images(s).unwrap();
        let everything = WideSubcat::whole(ctx.small_catalog());
        assert_eq!(images.upper.as_ref().unwrap().0, everything);
        assert_eq!(images.shriek.as_ref().unwrap().0, everything);
        assert!(images.passed());
        let report = checker.glued_recollement(s);
        for item in &report.items {
            assert!(item.passed, "{}: {:?}", item.name, item.detail);
        }
    }
}

#[test]
fn restriction_and_preimage() {
    let ctx = example();
    let checker = ReductionChecker::new(&ctx, WideBounds::default()).unwrap();
    let (big, local) = (ctx.big_catalog(), ctx.local_catalog());
    assert_eq!(
        checker.restrict(&WideSubcat::whole(big)).unwrap(),
        WideSubcat::whole(local)
    );
    assert!(checker.restrict(&ids(big, &["1"])).unwrap().is_empty());
    assert_eq!(
        checker.restrict(&ids(big, &["1", "3"])).unwrap(),
        ids(local, &["3"])
    );

    assert_eq!(
        checker.preimage(&WideSubcat::zero()).unwrap(),
        ids(big, &["1"])
    );
    assert_eq!(
        checker.preimage(&WideSubcat::whole(local)).unwrap(),
        WideSubcat::whole(big)
    );
    assert_eq!(
        checker.preimage(&ids(local, &["2/3"])).unwrap(),
        ids(big, &["1", "2/3", "2/13"])
    );
}

#[test]
fn quotient_image_examples() {
    let ctx = example();
    let checker = ReductionChecker::new(&ctx, WideBounds::default()).unwrap();
    let big = ctx.big_catalog();
    let zero = checker.quotient_images(&WideSubcat::zero()).unwrap();
    assert_eq!(zero.upper, Some((WideSubcat::zero(), true)));
    let s2 = checker.quotient_images(&ids(big, &["2"])).unwrap();
    assert_eq!(s2.upper, Some((WideSubcat::zero(), true)));
    assert!(s2.passed());
    // {2/13} is not closed under i_*i^! (it has socle S1), so no claim is made
    let p2 = checker.quotient_images(&ids(big, &["2/13"])).unwrap();
    assert!(p2.shriek.is_none());
}

#[test]
fn oracle_matches_filter() {
    let ctx = example();
    for catalog in [ctx.big_catalog(), ctx.small_catalog(), ctx.local_catalog()] {
        let filter = WideEngine::new(catalog, WideBounds::default()).unwrap();
        let oracle = FixpointOracle::new(catalog, WideBounds::default()).unwrap();
        assert_eq!(
            filter.enumerate_wide().unwrap(),
            oracle.enumerate_wide().unwrap()
        );
    }
    let f = FieldSpec::new(3).unwrap();
    let q = Quiver::new(&["1", "2", "3"], &[("x", "1", "2"), ("y", "2", "3")]).unwrap();
    let rel = Relation::from_names(&q, f, &[(1, vec!["x", "y"])]).unwrap();
    for rels in [vec![], vec![rel]] {
        let cat = crate::module::ModCat::new(
            std::sync::Arc::new(path_algebra(q.clone(), rels, f).unwrap()),
            Budget::default(),
        );
        let catalog = IsoCatalog::enumerate(&cat, CatalogBounds::default()).unwrap();
        let filter = WideEngine::new(&catalog, WideBounds::default()).unwrap();
        let oracle = FixpointOracle::new(&catalog, WideBounds::default()).unwrap();
        assert_eq!(
            filter.enumerate_wide().unwrap(),
            oracle.enumerate_wide().unwrap()
        );
    }
}

#[test]
fn stable_under_doubled_bounds() {
    let ctx = example();
    let catalog = ctx.big_catalog();
    let bounds = WideBounds::default();
    let base = WideEngine::new(catalog, bounds).unwrap();
    let doubled = WideEngine::new(catalog, bounds.doubled()).unwrap();
    for s in base.enumerate_wide().unwrap() {
        assert!(doubled.is_wide(&s), "{}", s.describe(catalog));
    }
}
