mod common;

use common::planted;
use neurotopo::bon::*;
use neurotopo::centrality::MeasureId;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn recovered(centroids: &[Vec<f64>], truth: &[[f64; 2]], tol: f64) -> bool {
    truth.iter().all(|t| centroids.iter().any(|c| ((c[0] - t[0]).powi(2) + (c[1] - t[1]).powi(2)).sqrt() <= tol))
}

#[test]
fn two_separated_clouds() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let noise = Normal::new(0.0, 0.01).unwrap();
    let rows: Vec<Vec<f64>> = (0..100)
        .map(|i| vec![(i % 2) as f64 + noise.sample(&mut rng), noise.sample(&mut rng)])
        .collect();
    let fit = kmeans(&rows, &KMeansConfig::new(2, 9)).unwrap();
    assert!(recovered(&fit.best.centroids, &[[0.0, 0.0], [1.0, 0.0]], 0.05));
}

#[test]
fn planted_three_clusters_and_elbow() {
    let (mut hits, mut knees) = (0, 0);
    for seed in 0..50 {
        let (rows, truth) = planted(seed, 200);
        let cfg = KMeansConfig { restarts: 10, ..KMeansConfig::new(3, seed) };
        if recovered(&kmeans(&rows, &cfg).unwrap().best.centroids, &truth, 0.05 * 1.0) {
            hits += 1;
        }
        if elbow_scan(&rows, 2, 18, &cfg).unwrap().best_k == 3 {
            knees += 1;
        }
    }
    assert_eq!(hits, 50);
    assert!(knees >= 45, "{knees}/50");
}

#[test]
fn parallel_restarts_pick_the_sequential_best() {
    let (rows, _) = planted(77, 30);
    let cfg = KMeansConfig { restarts: 12, ..KMeansConfig::new(5, 4) };
    let fit = kmeans(&rows, &cfg).unwrap();
    let runs: Vec<_> = (0..12).map(|r| single_run(&rows, &cfg, r)).collect();
    let best = runs.iter().enumerate().fold(0, |b, (i, r)| if r.inertia < runs[b].inertia { i } else { b });
    assert_eq!(fit.best_restart, best);
    assert_eq!(fit.best, runs[best]);
    for r in &runs {
        assert!(fit.best.inertia <= r.inertia);
        assert!(r.inertia_trace.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }
}

fn mnist_table() -> Vocabulary {
    let s = [-0.40, -0.21, -0.05, 0.05, 0.12, 0.32];
    let bc = [0.57, 0.73, 0.82, 0.87, 0.86, 0.89];
    let sg = [0.11, 0.13, 0.13, 0.36, 0.13, 0.17];
    Vocabulary {
        measures: vec![MeasureId::S, MeasureId::Bc, MeasureId::Sg],
        normalizers: vec![1.0; 3],
        k: 6,
        centroids: (0..6).map(|i| vec![s[i], bc[i], sg[i]]).collect(),
        inertia: 0.0,
        seed: 0,
        generator: GENERATOR.into(),
        benchmark_id: "mnist".into(),
    }
}

#[test]
fn assignment_examples() {
    let v = mnist_table();
    v.validate().unwrap();
    let ids = [MeasureId::S, MeasureId::Bc, MeasureId::Sg];
    assert_eq!(v.assign(&ids, &[-0.40, 0.57, 0.11]).unwrap(), 0);
    assert_eq!(v.assign(&ids, &v.centroids[2].clone()).unwrap(), 2);
    let mid: Vec<f64> = v.centroids[0].iter().zip(&v.centroids[1]).map(|(a, b)| (a + b) / 2.0).collect();
    assert_eq!(v.assign_normalized(&mid), 0);
    assert!(v.assign(&[MeasureId::S, MeasureId::Sg, MeasureId::Bc], &[0.0; 3]).is_err());
}

#[test]
fn jsd_reference_values() {
    assert_eq!(jsd(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
    assert_eq!(jsd(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
    // Direct evaluation: m = [0.7, 0.3].
    let kl = |p: [f64; 2], m: [f64; 2]| p[0] * (p[0] / m[0]).log2() + p[1] * (p[1] / m[1]).log2();
    let want = 0.5 * (kl([0.5, 0.5], [0.7, 0.3]) + kl([0.9, 0.1], [0.7, 0.3]));
    let got = jsd(&[0.5, 0.5], &[0.9, 0.1]).unwrap();
    assert!((got - want).abs() < 1e-15);
    assert!((got - 0.146_793).abs() < 1e-6);
}

#[test]
fn accuracy_group_examples() {
    let acc: Vec<f64> = (0..1000).rev().map(|i| i as f64).collect();
    let g = accuracy_groups(&acc, 100).unwrap();
    assert_eq!(g.worst[0], 999);
    assert_eq!(g.top[99], 0);
    assert!(accuracy_groups(&acc[..6], 3).is_err());
}
