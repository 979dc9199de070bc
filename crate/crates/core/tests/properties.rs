use proptest::prelude::*;

use dhdecomp::decomp26::{check_26, decompose26, swap_root};
use dhdecomp::decomp32::{check_32, choose_z, context32, decompose32};
use dhdecomp::decomp41::{decompose41, discharge_audit};
use dhdecomp::gen::{stacked_triangulation, stellate};
use dhdecomp::io::{emit_dh, emit_near, parse_dh, parse_rot};
use dhdecomp::oracle::{exact_decide, OracleOptions};
use dhdecomp::plane::BoundaryContext;
use dhdecomp::verify::{
    check_dh, degeneracy, degeneracy_ordering, ordering_to_orientation, orientation_to_ordering,
    residue, restrict,
};
use dhdecomp::{DecompPair, PlaneGraph};

/// A subgraph of a stacked triangulation keeping the edges whose bit is set.
fn thinned(n: usize, seed: u64, mask: u64) -> PlaneGraph {
    let t = stacked_triangulation(n, seed);
    let edges = t.graph().edges();
    t.graph().edge_subgraph(|u, v| {
        let i = edges.binary_search(&(u, v)).unwrap();
        mask.rotate_left(i as u32) & 1 == 1
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stacked_counts(n in 3usize..300, seed: u64) {
        let t = stacked_triangulation(n, seed);
        let g = t.graph();
        prop_assert!(g.validate().is_ok());
        prop_assert_eq!(g.num_edges(), 3 * n - 6);
        prop_assert_eq!(g.trace_faces().unwrap().len(), 2 * n - 4);
        prop_assert_eq!(stacked_triangulation(n, seed), t);
    }

    #[test]
    fn four_one_on_stacked_and_stellated(n in 4usize..200, seed: u64) {
        let t = stacked_triangulation(n, seed);
        for g in [t.graph().clone(), stellate(t.graph()).unwrap().graph] {
            let out = decompose41(&g).unwrap();
            prop_assert!(check_dh(&g, &out.pair, 4, 1).passed());
            prop_assert!(out.levels.iter().all(|l| l.earlier.iter().all(|&k| k <= 4)));
        }
    }

    #[test]
    fn four_one_on_subgraphs(n in 4usize..120, seed: u64, mask: u64) {
        let g = thinned(n, seed, mask);
        let out = decompose41(&g).unwrap();
        prop_assert!(check_dh(&g, &out.pair, 4, 1).passed());
    }

    #[test]
    fn two_six_every_rooting(n in 3usize..150, seed: u64) {
        let t = stacked_triangulation(n, seed);
        let b = t.boundary().to_vec();
        for i in 0..3 {
            let (x, y, z) = (b[i], b[(i + 1) % 3], b[(i + 2) % 3]);
            for (x, y) in [(x, y), (y, x)] {
                let p = decompose26(&t, x, y, z).unwrap();
                let ctx = BoundaryContext::new(&t, x, y, z).unwrap();
                prop_assert!(check_26(&t, &ctx, &p).passed());
                prop_assert!(check_dh(t.graph(), &p, 2, 6).passed());
                let q = swap_root(&t, &ctx, &p).unwrap();
                let swapped = BoundaryContext::new(&t, y, x, z).unwrap();
                prop_assert!(check_26(&t, &swapped, &q).passed());
            }
        }
    }

    #[test]
    fn three_two_every_rooting(n in 3usize..150, seed: u64) {
        let t = stacked_triangulation(n, seed);
        let b = t.boundary().to_vec();
        for i in 0..3 {
            for (x, y) in [(b[i], b[(i + 1) % 3]), (b[(i + 1) % 3], b[i])] {
                let z = choose_z(&t, x, y).unwrap();
                let p = decompose32(&t, x, y, z, None).unwrap();
                let ctx = context32(&t, x, y, z, None).unwrap();
                prop_assert!(check_32(&t, &ctx, &p).passed());
                prop_assert!(check_dh(t.graph(), &p, 3, 2).passed());
            }
        }
    }

    #[test]
    fn degeneracy_round_trips(n in 4usize..80, seed: u64, mask: u64) {
        let g = thinned(n, seed, mask);
        let k = degeneracy(&g);
        let sigma = degeneracy_ordering(&g, k).unwrap();
        prop_assert!(sigma.max_earlier(&g) <= k);
        let arcs = ordering_to_orientation(&g, &sigma).unwrap();
        let p = DecompPair::from_parts(arcs.iter().copied(), []);
        prop_assert!(p.max_out_degree() <= k);
        let back = orientation_to_ordering(&arcs).unwrap();
        for &(u, v) in &arcs {
            prop_assert!(back.position(u) > back.position(v));
        }
        if k > 0 {
            prop_assert!(degeneracy_ordering(&g, k - 1).is_none());
            let core = residue(&g, k - 1);
            let sub = g.induced(|v| core.binary_search(&v).is_ok());
            prop_assert!(sub.vertices().all(|v| sub.degree(v) >= k));
        }
    }

    #[test]
    fn restriction_keeps_the_contract(n in 4usize..100, seed: u64, mask: u64) {
        let t = stacked_triangulation(n, seed);
        let out = decompose41(t.graph()).unwrap();
        let sub = thinned(n, seed, mask);
        prop_assert!(check_dh(&sub, &restrict(&out.pair, &sub), 4, 1).passed());
    }

    #[test]
    fn formats_round_trip(n in 3usize..200, seed: u64) {
        let t = stacked_triangulation(n, seed);
        let text = emit_near(&t);
        let f = parse_rot(&text).unwrap();
        prop_assert_eq!(f.near_triangulation().unwrap(), t.clone());
        let p = decompose26(&t, t.boundary()[0], t.boundary()[1], t.boundary()[2]).unwrap();
        let dh = emit_dh(&p, 2, 6, Some(&t.boundary()[..3]));
        let back = parse_dh(&dh).unwrap();
        prop_assert_eq!(&back.pair, &p);
        prop_assert_eq!(emit_dh(&back.pair, back.d, back.h, back.root.as_deref()), dh);
    }

    #[test]
    fn charge_is_conserved(n in 4usize..300, seed: u64) {
        let t = stacked_triangulation(n, seed);
        let tab = discharge_audit(t.graph()).unwrap();
        prop_assert!(tab.conserved());
        prop_assert_eq!(tab.final_total, num_rational::Rational64::from_integer(-12));
        prop_assert!(tab.located.unwrap().validate(t.graph()).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_monotone_and_mode_independent(n in 4usize..8, seed: u64, mask: u64) {
        let g = thinned(n, seed, mask);
        let pruned = OracleOptions::default();
        let feasible = |d, h| exact_decide(&g, d, h, &pruned).unwrap().feasible();
        for d in 0..4 {
            for h in 0..3 {
                let f = feasible(d, h);
                if f {
                    prop_assert!(feasible(d + 1, h));
                    prop_assert!(feasible(d, h + 1));
                }
                if g.num_edges() <= 16 {
                    let e = exact_decide(&g, d, h, &OracleOptions::exhaustive()).unwrap();
                    prop_assert_eq!(e.feasible(), f);
                }
            }
        }
    }
}
