mod common;

use hyperrho::analytic::{f_r_derivative, p_r};
use hyperrho::hypergraph::k_subsets;
use hyperrho::search::canonical_form;
use hyperrho::spectral::{polynomial_form, PowerIteration};
use hyperrho::{fr_value, p_r_inverse, spectral_radius, Hypergraph, SolverOptions};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_hypergraph(max_n: usize, max_e: usize) -> impl Strategy<Value = Hypergraph> {
    (2usize..=4, 0usize..=max_n, any::<u64>()).prop_map(move |(r, extra, seed)| {
        let n = (r + extra).min(max_n.max(r));
        let slots = k_subsets(n, r).len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = 1 + (seed as usize % slots.min(max_e));
        common::random_hypergraph(&mut rng, r, n, e)
    })
}

fn arb_connected(max_n: usize, max_e: usize) -> impl Strategy<Value = Hypergraph> {
    (2usize..=4, any::<u64>()).prop_map(move |(r, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_connected_in(&mut rng, r..=r, max_n, max_e)
    })
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn link_size_is_degree(h in arb_hypergraph(8, 20), pick in any::<usize>()) {
        prop_assume!(h.rank() >= 3);
        let v = pick % h.vertex_count();
        prop_assert_eq!(h.link_graph(v).unwrap().edge_count(), h.degree(v).unwrap());
    }

    #[test]
    fn deletion_splits_edges(h in arb_hypergraph(8, 20), pick in any::<usize>()) {
        let v = pick % h.vertex_count();
        let rest = h.delete_vertex(v).unwrap();
        prop_assert_eq!(h.edge_count(), h.degree(v).unwrap() + rest.edge_count());
        prop_assert_eq!(rest.degree(v).unwrap(), 0);
    }

    #[test]
    fn moving_preserves_edge_count(h in arb_hypergraph(8, 20), pick in any::<(usize, usize)>()) {
        let to = pick.0 % h.vertex_count();
        let f = h.edges()[pick.1 % h.edge_count()].clone();
        prop_assume!(f.binary_search(&to).is_err());
        let from = f[0];
        if let Ok(moved) = h.move_edges(&[(f, from)], to) {
            prop_assert_eq!(moved.edge_count(), h.edge_count());
            prop_assert_eq!(moved.degree(to).unwrap(), h.degree(to).unwrap() + 1);
            prop_assert_eq!(moved.degree(from).unwrap() + 1, h.degree(from).unwrap());
        }
    }

    #[test]
    fn edge_list_round_trip(h in arb_hypergraph(9, 30)) {
        let (back, dups) = Hypergraph::parse_edge_list(&h.to_edge_list()).unwrap();
        prop_assert_eq!(dups, 0);
        prop_assert_eq!(back, h);
    }

    #[test]
    fn inverse_round_trip(r in 1usize..=6, m in 1e-6f64..1e9) {
        let x = p_r_inverse(r, m).unwrap();
        prop_assert!(x >= r as f64 - 1.0);
        let back = p_r(r, x);
        prop_assert!((back - m).abs() <= 1e-12 * m.max(1.0), "p_{}({}) = {} vs {}", r, x, back, m);
    }

    #[test]
    fn bound_function_increases(r in 2usize..=6, a in 0.5f64..1e5, b in 0.5f64..1e5) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-9 * hi);
        prop_assert!(fr_value(r, lo).unwrap() < fr_value(r, hi).unwrap());
        prop_assert!(f_r_derivative(r, lo).unwrap() > 0.0);
        // f_r(e) <= e, with equality only at e = 1
        prop_assert!(fr_value(r, hi).unwrap() <= hi + 1e-12);
    }

    #[test]
    fn rho_is_relabeling_invariant(h in arb_hypergraph(8, 20), seed in any::<u64>()) {
        let opts = SolverOptions::default();
        let g = h.relabel(&shuffled(h.vertex_count(), seed)).unwrap();
        let a = spectral_radius(&h, &opts).unwrap().rho;
        let b = spectral_radius(&g, &opts).unwrap().rho;
        prop_assert!((a - b).abs() <= 1e-8, "{} vs {}", a, b);
    }

    #[test]
    fn rho_grows_with_edges(h in arb_hypergraph(7, 15), pick in any::<usize>()) {
        let missing: Vec<_> = k_subsets(h.vertex_count(), h.rank())
            .into_iter()
            .filter(|e| !h.contains_edge(e))
            .collect();
        prop_assume!(!missing.is_empty());
        let mut edges = h.edges().to_vec();
        edges.push(missing[pick % missing.len()].clone());
        let bigger = Hypergraph::new(h.rank(), h.vertex_count(), edges).unwrap();
        let opts = SolverOptions::default();
        let a = spectral_radius(&h, &opts).unwrap().rho;
        let b = spectral_radius(&bigger, &opts).unwrap().rho;
        prop_assert!(b >= a - 1e-9, "{} then {}", a, b);
    }

    #[test]
    fn rho_never_exceeds_bound(h in arb_hypergraph(8, 25)) {
        let rho = spectral_radius(&h, &SolverOptions::default()).unwrap().rho;
        let bound = fr_value(h.rank(), h.edge_count() as f64).unwrap();
        prop_assert!(rho <= bound + 1e-7, "rho {} above f_r(e) = {}", rho, bound);
    }

    #[test]
    fn brackets_tighten(h in arb_connected(8, 20)) {
        let mut it = PowerIteration::new(&h, 1.0).unwrap();
        let mut prev = it.bracket();
        for _ in 0..200 {
            it.advance();
            let next = it.bracket();
            prop_assert!(next.lower >= prev.lower - 1e-12 && next.upper <= prev.upper + 1e-12);
            prev = next;
        }
    }

    #[test]
    fn perron_vector_attains_rho(h in arb_connected(8, 20)) {
        let sol = spectral_radius(&h, &SolverOptions::default()).unwrap();
        let p = polynomial_form(&h, &sol.perron).unwrap();
        prop_assert!((p - sol.rho).abs() <= 1e-8 * sol.rho, "P = {}, rho = {}", p, sol.rho);
    }

    #[test]
    fn canonical_form_ignores_labels(h in arb_hypergraph(7, 12), seed in any::<u64>()) {
        let g = h.relabel(&shuffled(h.vertex_count(), seed)).unwrap();
        prop_assert_eq!(canonical_form(&h).unwrap(), canonical_form(&g).unwrap());
    }
}
