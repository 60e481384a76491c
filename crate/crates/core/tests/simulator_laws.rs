//! Distributional checks of both samplers against exact laws.

use std::collections::BTreeMap;

use treecut::exact_engine::{distribution_oracle, float_moments, split_law};
use treecut::scalar::ratio_to_f64;
use treecut::simulator::stats::{chi_square_gof, chi_square_homogeneity, counts_on_support, total_variation};
use treecut::simulator::{
    cut_cost_chain, cut_cost_tree, cut_once, monte_carlo, replicate, replication_rng, sample_tree,
    LawCache, Method, SimConfig,
};

const ALPHA: f64 = 1e-3;

fn tree_shape_counts(n: usize, samples: u64, seed: u64) -> BTreeMap<Vec<(u32, u32)>, u64> {
    let mut rng = replication_rng(seed, 0);
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        *counts.entry(sample_tree(n, &mut rng).canonical_edges()).or_insert(0) += 1;
    }
    counts
}

#[test]
fn sampled_trees_are_uniform() {
    for (n, trees) in [(3, 3usize), (4, 16)] {
        let counts = tree_shape_counts(n, 32_000, n as u64);
        assert_eq!(counts.len(), trees, "every labelled tree on {n} vertices appears");
        let observed: Vec<u64> = counts.values().copied().collect();
        let test = chi_square_gof(&observed, &vec![1.0 / trees as f64; trees]);
        assert!(test.passes(ALPHA), "n = {n}: {test:?}");
    }
}

#[test]
fn tiny_costs_are_deterministic() {
    let mut rng = replication_rng(5, 0);
    let cache = LawCache::new(3).unwrap();
    for _ in 0..100 {
        assert_eq!(cut_cost_tree(&sample_tree(2, &mut rng), &mut rng), 4);
        assert_eq!(cut_cost_tree(&sample_tree(3, &mut rng), &mut rng), 13);
        assert_eq!(cut_cost_chain(2, &mut rng, &cache).unwrap(), 4);
        assert_eq!(cut_cost_chain(3, &mut rng, &cache).unwrap(), 13);
    }
}

#[test]
fn four_vertex_costs() {
    // A 1+3 split costs 16 + 9 + 4 = 29 and a 2+2 split costs 16 + 4 + 4 = 24.
    for method in [Method::Tree, Method::Chain] {
        let reps = replicate(&SimConfig::new(4, 40_000, 1, 17, method)).unwrap();
        let (counts, outside) = counts_on_support(reps.iter().map(|r| r.cost), &[24, 29]);
        assert_eq!(outside, 0);
        let test = chi_square_gof(&counts, &[0.25, 0.75]);
        assert!(test.passes(ALPHA), "{method}: {counts:?} {test:?}");
    }
}

#[test]
fn first_cut_follows_split_law() {
    for n in [4, 8, 16] {
        let probs = split_law(n).unwrap().to_f64();
        for method in [Method::Tree, Method::Chain] {
            let report = monte_carlo(&SimConfig::new(n, 50_000, 1, 100 + n as u64, method)).unwrap();
            let test = chi_square_gof(&report.first_cut_histogram, &probs);
            assert!(test.passes(ALPHA), "n = {n}, {method}: {test:?}");
        }
    }
}

#[test]
fn first_cut_total_variation_shrinks() {
    let probs = split_law(16).unwrap().to_f64();
    let tv = |reps| {
        let report = monte_carlo(&SimConfig::new(16, reps, 1, 3, Method::Tree)).unwrap();
        total_variation(&report.first_cut_histogram, &probs)
    };
    let (small, large) = (tv(500), tv(50_000));
    assert!(large < small, "{small} -> {large}");
    assert!(large < 0.02);
}

#[test]
fn three_vertex_part_is_uniform_after_one_cut() {
    // The three labelled trees on {1, 2, 3} are the paths centred at 1, 2 and 3.
    let mut rng = replication_rng(23, 0);
    let mut centres = [0u64; 3];
    let mut seen = 0;
    while seen < 30_000 {
        let tree = sample_tree(4, &mut rng);
        let (left, right) = cut_once(&tree, &mut rng).unwrap();
        for part in [left, right] {
            if part.n() == 3 {
                let edges = part.canonical_edges();
                let centre = (1..=3u32)
                    .find(|v| edges.iter().all(|&(a, b)| a == *v || b == *v))
                    .expect("a three-vertex tree is a path");
                centres[centre as usize - 1] += 1;
                seen += 1;
            }
        }
    }
    let test = chi_square_gof(&centres, &[1.0 / 3.0; 3]);
    assert!(test.passes(ALPHA), "{centres:?} {test:?}");
}

#[test]
fn samplers_agree_with_oracle_for_small_n() {
    for n in 2..=6 {
        let law = distribution_oracle(n).unwrap();
        let support: Vec<u64> = law.atoms.iter().map(|a| a.0).collect();
        let probs: Vec<f64> = law.atoms.iter().map(|a| ratio_to_f64(&a.1)).collect();
        let mut by_method = Vec::new();
        for method in [Method::Tree, Method::Chain] {
            let reps = replicate(&SimConfig::new(n, 20_000, 1, 7 * n as u64, method)).unwrap();
            let (counts, outside) = counts_on_support(reps.iter().map(|r| r.cost), &support);
            assert_eq!(outside, 0, "n = {n}, {method}: value outside the exact support");
            let test = chi_square_gof(&counts, &probs);
            assert!(test.passes(ALPHA), "n = {n}, {method}: {test:?}");
            by_method.push(counts);
        }
        let test = chi_square_homogeneity(&by_method[0], &by_method[1]);
        assert!(test.passes(ALPHA), "n = {n}, tree vs chain: {test:?}");
    }
}

#[test]
fn chain_second_moment_matches_engine() {
    let n = 1000;
    let table = float_moments::<f64>(n, 2).unwrap();
    let report = monte_carlo(&SimConfig::new(n, 100_000, 2, 11, Method::Chain)).unwrap();
    for k in 1..=2 {
        let est = &report.moments[k - 1];
        let z = (est.mean - table.scaled_moment(n, k)).abs() / est.stderr;
        assert!(z < 4.0, "k = {k}: {est:?} vs {}", table.scaled_moment(n, k));
    }
}

#[test]
fn reports_are_reproducible() {
    let config = SimConfig::new(64, 2_000, 3, 99, Method::Tree);
    let a = serde_json::to_string(&monte_carlo(&config).unwrap()).unwrap();
    let b = serde_json::to_string(&monte_carlo(&SimConfig { workers: Some(2), ..config }).unwrap()).unwrap();
    assert_eq!(a, b);
}
