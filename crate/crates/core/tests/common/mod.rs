//! Brute-force reference implementations on dense matrices.
//!
//! Nothing here calls into the library's measure code; the oracles work
//! straight from definitions so they can catch errors in it.

#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub type Dense = Vec<Vec<f64>>;

/// Symmetric signed weights on `n` nodes, each pair joined with probability
/// `p`, weights uniform on [-1, 1]. Absent edges are 0.
pub fn random_graph(seed: u64, n: usize, p: f64) -> Dense {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                let mut x = 0.0;
                while x == 0.0 {
                    x = rng.random_range(-1.0..=1.0);
                }
                w[i][j] = x;
                w[j][i] = x;
            }
        }
    }
    w
}

pub fn to_ugraph(w: &Dense) -> neurotopo::UGraph {
    let n = w.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if w[i][j] != 0.0 {
                edges.push((i, j, w[i][j]));
            }
        }
    }
    neurotopo::UGraph::from_edges(n, &edges).unwrap()
}

pub fn positive(w: &Dense) -> Dense {
    w.iter().map(|r| r.iter().map(|&x| if x > 0.0 { x } else { 0.0 }).collect()).collect()
}

pub fn binary(w: &Dense) -> Dense {
    w.iter().map(|r| r.iter().map(|&x| if x > 0.0 { 1.0 } else { 0.0 }).collect()).collect()
}

pub fn strength(w: &Dense, i: usize) -> f64 {
    w[i].iter().sum()
}

pub fn avg_neighbor_strength(w: &Dense, i: usize) -> Option<f64> {
    let s = strength(w, i);
    if s == 0.0 {
        return None;
    }
    let mut acc = 0.0;
    for j in 0..w.len() {
        if w[i][j] != 0.0 {
            acc += w[i][j] * strength(w, j);
        }
    }
    Some(acc / s)
}

/// Connected components in order of smallest member.
pub fn components(w: &Dense) -> Vec<Vec<usize>> {
    let n = w.len();
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut comp = vec![s];
        label[s] = out.len();
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for u in 0..n {
                if w[v][u] != 0.0 && label[u] == usize::MAX {
                    label[u] = out.len();
                    comp.push(u);
                }
            }
            k += 1;
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Largest component; ties go to the one holding the smallest node id.
pub fn largest_component(w: &Dense) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for c in components(w) {
        if c.len() > best.len() {
            best = c;
        }
    }
    best
}

pub fn induced(w: &Dense, nodes: &[usize]) -> Dense {
    nodes.iter().map(|&i| nodes.iter().map(|&j| w[i][j]).collect()).collect()
}

fn degrees(a: &Dense) -> Vec<f64> {
    a.iter().map(|r| r.iter().filter(|&&x| x != 0.0).count() as f64).collect()
}

/// Walk that stays put with probability `1 - deg/dmax`.
pub fn balanced_walk(a: &Dense) -> Dense {
    let n = a.len();
    let d = degrees(a);
    let dmax = d.iter().cloned().fold(0.0, f64::max);
    let mut p = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if a[i][j] != 0.0 {
                p[i][j] = 1.0 / dmax;
            }
        }
        p[i][i] = (dmax - d[i]) / dmax;
    }
    p
}

/// Second-order centrality by one linear solve per target: with column `i`
/// of the walk zeroed, `(I - Q) m = 1` gives the mean passage times into
/// `i` (and the return time at `m_i`).
pub fn second_order_linear(a: &Dense) -> Vec<f64> {
    let n = a.len();
    let p = balanced_walk(a);
    (0..n)
        .map(|i| {
            let q = DMatrix::from_fn(n, n, |r, c| {
                let pr = if c == i { 0.0 } else { p[r][c] };
                if r == c { 1.0 - pr } else { -pr }
            });
            let m = q.lu().solve(&nalgebra::DVector::from_element(n, 1.0)).unwrap();
            (2.0 * m.sum() - (n * (n + 1)) as f64).max(0.0).sqrt()
        })
        .collect()
}

/// Standard deviation of return times along one long balanced walk.
pub fn second_order_monte_carlo(a: &Dense, steps: usize, seed: u64) -> Vec<f64> {
    let n = a.len();
    let p = balanced_walk(a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = vec![usize::MAX; n];
    let mut sum = vec![0.0; n];
    let mut sum2 = vec![0.0; n];
    let mut cnt = vec![0.0; n];
    let mut v = 0;
    for t in 0..steps {
        if last[v] != usize::MAX {
            let gap = (t - last[v]) as f64;
            sum[v] += gap;
            sum2[v] += gap * gap;
            cnt[v] += 1.0;
        }
        last[v] = t;
        let mut r: f64 = rng.random();
        let mut next = n - 1;
        for (j, &pj) in p[v].iter().enumerate() {
            if r < pj {
                next = j;
                break;
            }
            r -= pj;
        }
        v = next;
    }
    (0..n)
        .map(|i| {
            let m = sum[i] / cnt[i];
            (sum2[i] / cnt[i] - m * m).max(0.0).sqrt()
        })
        .collect()
}

/// Diagonal of `sum_{l <= terms} A^l / l!`.
pub fn subgraph_series(a: &Dense, terms: usize) -> Vec<f64> {
    let n = a.len();
    let am = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut acc = power.clone();
    let mut fact = 1.0;
    for l in 1..=terms {
        power = &power * &am;
        fact *= l as f64;
        acc += &power / fact;
    }
    (0..n).map(|i| acc[(i, i)]).collect()
}

/// Per node, the number of maximum-cardinality cliques containing it, by
/// checking every subset.
pub fn max_clique_exhaustive(a: &Dense) -> (usize, Vec<u64>) {
    let n = a.len();
    assert!(n <= 20);
    let is_clique = |mask: u32| {
        (0..n).all(|i| mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || a[i][j] != 0.0))
    };
    let mut omega = 0;
    let mut cliques = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < omega || !is_clique(mask) {
            continue;
        }
        if size > omega {
            omega = size;
            cliques.clear();
        }
        cliques.push(mask);
    }
    let counts = (0..n).map(|i| cliques.iter().filter(|&&m| m >> i & 1 == 1).count() as u64).collect();
    (omega, counts)
}

pub fn bipartite_clustering(a: &Dense) -> Vec<f64> {
    let n = a.len();
    let nb = |i: usize| -> Vec<usize> { (0..n).filter(|&j| a[i][j] != 0.0).collect() };
    (0..n)
        .map(|i| {
            let ni = nb(i);
            let mut second: Vec<usize> = ni.iter().flat_map(|&j| nb(j)).filter(|&u| u != i).collect();
            second.sort();
            second.dedup();
            if second.is_empty() {
                return 0.0;
            }
            let total: f64 = second
                .iter()
                .map(|&u| {
                    let nu = nb(u);
                    let shared = ni.iter().filter(|x| nu.contains(x)).count();
                    shared as f64 / ni.len().max(nu.len()) as f64
                })
                .sum();
            total / second.len() as f64
        })
        .collect()
}

/// Harmonic centrality from Floyd-Warshall distances (weights as lengths).
pub fn harmonic_floyd(w: &Dense) -> Vec<f64> {
    let n = w.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for i in 0..n {
        d[i][i] = 0.0;
        for j in 0..n {
            if w[i][j] != 0.0 {
                d[i][j] = w[i][j];
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    (0..n)
        .map(|i| (0..n).filter(|&j| j != i && d[i][j].is_finite()).map(|j| 1.0 / d[i][j]).sum())
        .collect()
}

/// Current-flow closeness through an SVD pseudoinverse of the Laplacian.
pub fn current_flow_pinv(w: &Dense) -> Vec<f64> {
    let n = w.len();
    let l = DMatrix::from_fn(n, n, |i, j| if i == j { strength(w, i) } else { -w[i][j] });
    let pinv = l.svd(true, true).pseudo_inverse(1e-12).unwrap();
    (0..n)
        .map(|i| {
            let total: f64 = (0..n).map(|j| pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)]).sum();
            (n - 1) as f64 / total
        })
        .collect()
}

/// Random tree with positive conductances, returned with the resistance of
/// every pair summed along the unique path.
pub fn random_tree(seed: u64, n: usize) -> (Dense, Vec<Vec<f64>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![vec![0.0; n]; n];
    let mut parent = vec![0; n];
    for v in 1..n {
        let p = rng.random_range(0..v);
        let c = rng.random_range(0.1..2.0);
        parent[v] = p;
        w[v][p] = c;
        w[p][v] = c;
    }
    // Resistance to the root, then through the lowest common ancestor.
    let mut root_r = vec![0.0; n];
    let mut depth = vec![0; n];
    for v in 1..n {
        root_r[v] = root_r[parent[v]] + 1.0 / w[v][parent[v]];
        depth[v] = depth[parent[v]] + 1;
    }
    let lca = |mut a: usize, mut b: usize| {
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
            } else {
                b = parent[b];
            }
        }
        a
    };
    let r = (0..n)
        .map(|i| (0..n).map(|j| root_r[i] + root_r[j] - 2.0 * root_r[lca(i, j)]).collect())
        .collect();
    (w, r)
}

/// One network whose hidden neurons carry all eight measures, with
/// `corr(s, so) ~ rho_so`, `corr(s, mc) ~ rho_mc` and every other column
/// independent.
pub fn correlated_population(seed: u64, n: usize, rho_so: f64, rho_mc: f64) -> neurotopo::descriptors::MeasuredNetwork {
    use neurotopo::centrality::{MeasureId, MeasureTable};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = move || {
        // Box-Muller.
        let (u, v): (f64, f64) = (rng.random_range(f64::EPSILON..1.0), rng.random());
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    };
    let mut cols = vec![Vec::new(); 8];
    for _ in 0..n {
        let s = gauss();
        let row = [
            s,
            gauss(),
            rho_so * s + (1.0 - rho_so * rho_so).sqrt() * gauss(),
            gauss(),
            rho_mc * s + (1.0 - rho_mc * rho_mc).sqrt() * gauss(),
            gauss(),
            gauss(),
            gauss(),
        ];
        for (c, v) in cols.iter_mut().zip(row) {
            c.push(Some(v));
        }
    }
    neurotopo::descriptors::MeasuredNetwork {
        table: MeasureTable {
            network_id: "synthetic".into(),
            layers: vec![1; n],
            neurons: (0..n).collect(),
            measures: MeasureId::ALL.to_vec(),
            columns: cols,
        },
        test_acc: 0.5,
    }
}

/// Three Gaussian clouds in the plane with pairwise centre distance
/// `10 * sigma`.
pub fn planted(seed: u64, per: usize) -> (Vec<Vec<f64>>, Vec<[f64; 2]>) {
    let sigma = 0.1;
    let sep = 10.0 * sigma;
    let centres = [[0.0, 0.0], [sep, 0.0], [sep / 2.0, sep * 3f64.sqrt() / 2.0]];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, sigma).unwrap();
    let mut rows = Vec::new();
    for c in &centres {
        for _ in 0..per {
            rows.push(vec![c[0] + noise.sample(&mut rng), c[1] + noise.sample(&mut rng)]);
        }
    }
    (rows, centres.to_vec())
}

/// IDX file bytes: magic, big-endian dimensions, body.
pub fn idx(magic: u32, dims: &[u32], body: &[u8]) -> Vec<u8> {
    let mut v = magic.to_be_bytes().to_vec();
    for d in dims {
        v.extend(d.to_be_bytes());
    }
    v.extend(body);
    v
}

/// Canonical malformed IDX pairs: (case, images, labels).
pub fn malformed() -> Vec<(&'static str, Vec<u8>, Vec<u8>)> {
    let good_labels = idx(neurotopo::trainer::LABEL_MAGIC, &[1], &[3]);
    let good_images = idx(neurotopo::trainer::IMAGE_MAGIC, &[1, 28, 28], &[0; 784]);
    vec![
        ("bad magic", idx(0x0000_0802, &[1, 28, 28], &[0; 784]), good_labels.clone()),
        ("truncated header", vec![0, 0, 8, 3, 0, 0], good_labels.clone()),
        ("truncated pixels", idx(neurotopo::trainer::IMAGE_MAGIC, &[1, 28, 28], &[0; 700]), good_labels.clone()),
        ("wrong image size", idx(neurotopo::trainer::IMAGE_MAGIC, &[1, 28, 27], &[0; 756]), good_labels),
        ("label out of range", good_images, idx(neurotopo::trainer::LABEL_MAGIC, &[1], &[12])),
    ]
}
