use std::sync::Arc;

use proptest::prelude::*;

use genset::charcalc::{dominates, kostka, partitions_of};
use genset::domain::{enumerate_flags, enumerate_projective_points, enumerate_subsets, enumerate_tuples, FlagSignature};
use genset::field::{FqContext, MatFq};
use genset::graph::build_graph;
use genset::group::{Element, SymmetricSet};
use genset::io::{parse, print, InputDocument};
use genset::certify::GroupSpec;
use genset::marking::{marking_sum, marking_sum_direct, CharacterSpec, FiniteGroup};
use genset::perm::Permutation;

const ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn field() -> impl Strategy<Value = Arc<FqContext>> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| FqContext::of_order(q).unwrap())
}

fn invertible(ctx: Arc<FqContext>, n: usize) -> impl Strategy<Value = MatFq> {
    let q = ctx.q();
    prop::collection::vec(0..q, n * n)
        .prop_map(move |d| MatFq::new(&ctx, n, d).unwrap())
        .prop_filter("invertible", |m| m.det() != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(ctx in field(), a in 0u32..1024, b in 0u32..1024, c in 0u32..1024) {
        let q = ctx.q();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.sub(ctx.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), 1);
            prop_assert_eq!(ctx.exp(ctx.discrete_log(a).unwrap() as u64), a);
        }
    }

    #[test]
    fn det_is_multiplicative(
        (a, b) in field().prop_flat_map(|ctx| (invertible(ctx.clone(), 3), invertible(ctx, 3)))
    ) {
        let ctx = a.ctx().clone();
        let ab = a.mat_mul(&b).unwrap();
        prop_assert_eq!(ab.det(), ctx.mul(a.det(), b.det()));
        prop_assert!(a.mat_mul(&a.mat_inv().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn permutation_group_laws(p in perm_strategy(9), q in perm_strategy(9), r in perm_strategy(9)) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert!(p.mul(&p.inverse()).is_identity());
        prop_assert_eq!(p.mul(&q).sign(), p.sign() * q.sign());
        for x in 0..9 {
            prop_assert_eq!(p.mul(&q).apply(x), p.apply(q.apply(x)));
        }
    }

    #[test]
    fn tuple_action_is_compatible(p in perm_strategy(7), q in perm_strategy(7), rank in 0u32..210) {
        let dom = enumerate_tuples(7, 3).unwrap();
        let (g, h): (Element, Element) = (p.into(), q.into());
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(dom.act_rank(&gh, rank), dom.act_rank(&g, dom.act_rank(&h, rank)));
        prop_assert_eq!(dom.rank(&dom.point(rank)), Some(rank));
    }

    #[test]
    fn flag_action_is_compatible(
        (a, b) in Just(FqContext::of_order(3).unwrap()).prop_flat_map(|c| (invertible(c.clone(), 3), invertible(c, 3))),
        rank in 0u32..52,
    ) {
        let ctx = a.ctx().clone();
        let dom = enumerate_flags(&ctx, 3, &FlagSignature::new(vec![1, 2], 3).unwrap()).unwrap();
        let (g, h): (Element, Element) = (a.into(), b.into());
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(dom.act_rank(&gh, rank), dom.act_rank(&g, dom.act_rank(&h, rank)));
    }

    #[test]
    fn schreier_graphs_are_symmetric_and_regular(gens in prop::collection::vec(perm_strategy(8), 1..4)) {
        let sigma = SymmetricSet::symmetrize(gens.into_iter().map(Into::into).collect()).unwrap();
        let dom = enumerate_subsets(8, 3).unwrap();
        let g = build_graph(&dom, &sigma).unwrap();
        prop_assert!(g.is_symmetric());
        prop_assert_eq!(g.degree(), sigma.len());
    }

    #[test]
    fn symmetrize_is_idempotent(gens in prop::collection::vec(perm_strategy(6), 1..5)) {
        let once = SymmetricSet::symmetrize(gens.into_iter().map(Into::into).collect()).unwrap();
        let twice = SymmetricSet::symmetrize(once.elements().to_vec()).unwrap();
        prop_assert_eq!(once.elements(), twice.elements());
        prop_assert!(SymmetricSet::new(once.elements().to_vec()).is_ok());
    }

    #[test]
    fn perm_documents_round_trip(gens in prop::collection::vec(perm_strategy(6), 0..4)) {
        let doc = InputDocument { spec: GroupSpec::sn(6), elements: gens.into_iter().map(Into::into).collect() };
        prop_assert_eq!(parse(&print(&doc)).unwrap(), doc);
    }

    #[test]
    fn matrix_documents_round_trip(
        mats in field().prop_flat_map(|ctx| prop::collection::vec(invertible(ctx, 2), 1..3))
    ) {
        let ctx = mats[0].ctx().clone();
        let spec = GroupSpec::matrix(genset::certify::GroupKind::Gl, 2, &ctx);
        let doc = InputDocument { spec, elements: mats.into_iter().map(Into::into).collect() };
        let text = print(&doc);
        prop_assert_eq!(print(&parse(&text).unwrap()), text.clone());
        prop_assert_eq!(parse(&text).unwrap(), doc);
    }

    #[test]
    fn burnside_shortcut_matches_average(gens in prop::collection::vec(perm_strategy(5), 1..3), k in 1usize..4) {
        let id = Element::Perm(Permutation::identity(5));
        let els: Vec<Element> = gens.into_iter().map(Into::into).collect();
        let group = FiniteGroup::generate(&els, &id, 1000).unwrap();
        let chi = CharacterSpec::PermChar { domain: Arc::new(enumerate_tuples(5, k).unwrap()), reduced: false };
        prop_assert_eq!(marking_sum(&chi, group.elements()).unwrap(), marking_sum_direct(&chi, group.elements()).unwrap());
    }

    #[test]
    fn projective_points_are_permuted(a in field().prop_flat_map(|c| invertible(c, 3))) {
        let ctx = a.ctx().clone();
        let dom = enumerate_projective_points(&ctx, 3).unwrap();
        let p = dom.induced_permutation(&a.into()).unwrap();
        prop_assert_eq!(p.degree(), dom.size());
    }
}

#[test]
fn kostka_is_unitriangular() {
    for n in 1..=8 {
        let parts = partitions_of(n);
        for lambda in &parts {
            for mu in &parts {
                let k = kostka(mu, lambda).unwrap();
                if mu == lambda {
                    assert_eq!(k, 1);
                } else if !dominates(mu, lambda).unwrap() {
                    assert_eq!(k, 0, "{mu} does not dominate {lambda}");
                }
            }
        }
    }
}
