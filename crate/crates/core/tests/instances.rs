use ogp_core::instances::{
    ball, brute_force_max, energy, sample_coupled, sample_hypergraph, sample_signs,
    sample_with_rate, signed_energy, xor_value, Clauses, Hypergraph, SignedInstance, SpinConfig,
};
use ogp_core::rng::{below, uniform, Seed};
use proptest::prelude::*;

fn lgamma_pmf(j: u64, rate: f64) -> f64 {
    let jf = j as f64;
    libm::exp(jf * libm::log(rate) - rate - libm::lgamma(jf + 1.0))
}

fn inverse_cdf(u: f64, rate: f64) -> u64 {
    let mut cdf = 0.0;
    let mut j = 0;
    loop {
        cdf += lgamma_pmf(j, rate);
        if cdf >= u {
            return j;
        }
        j += 1;
    }
}

#[test]
fn edge_count_matches_inverse_cdf_oracle() {
    for s in 0..200 {
        let g = sample_hypergraph(8, 2.0, 3, &mut Seed::new(11, 12).stream(s)).unwrap();
        let u = uniform(&mut Seed::new(11, 12).stream(s));
        assert_eq!(
            g.edge_count() as u64,
            inverse_cdf(u, 16.0 / 3.0),
            "stream {s}"
        );
    }
}

fn chi2_critical_99(df: usize) -> f64 {
    // Wilson-Hilferty.
    let z = 2.326_347_874;
    let v = df as f64;
    let h = 2.0 / (9.0 * v);
    v * (1.0 - h + z * h.sqrt()).powi(3)
}

/// Bins `0..` merged so that each expected count is at least 5.
fn bins(rate: f64, total: f64) -> Vec<(u64, u64, f64)> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut mass = 0.0;
    let mut j = 0;
    let mut cdf = 0.0;
    while 1.0 - cdf > 1e-12 && j < 10_000 {
        let p = lgamma_pmf(j, rate);
        cdf += p;
        mass += p;
        if mass * total >= 5.0 && (1.0 - cdf) * total >= 5.0 {
            out.push((start, j, mass));
            start = j + 1;
            mass = 0.0;
        }
        j += 1;
    }
    out.push((start, u64::MAX, 1.0 - out.iter().map(|b| b.2).sum::<f64>()));
    out
}

#[test]
fn edge_counts_pass_chi_square() {
    for &(n, d, k) in &[(12usize, 4.0, 4usize), (30, 1.0, 3), (200, 3.0, 2)] {
        let rate = d * n as f64 / k as f64;
        let trials = 10_000;
        let counts: Vec<u64> = (0..trials)
            .map(|s| {
                sample_hypergraph(n, d, k, &mut Seed::new(3, n as u64).stream(s))
                    .unwrap()
                    .edge_count() as u64
            })
            .collect();
        let b = bins(rate, trials as f64);
        let mut stat = 0.0;
        for &(lo, hi, p) in &b {
            let obs = counts.iter().filter(|&&m| m >= lo && m <= hi).count() as f64;
            let exp = p * trials as f64;
            stat += (obs - exp).powi(2) / exp;
        }
        let crit = chi2_critical_99(b.len() - 1);
        assert!(stat < crit, "n={n}: chi2 {stat} >= {crit}");
    }
}

#[test]
fn coupled_marginal_matches_plain_sampler() {
    let trials = 10_000;
    let (n, d, k) = (10, 3.0, 4);
    let mut a = vec![0u64; 40];
    let mut b = vec![0u64; 40];
    let mut occ_a = vec![0u64; n];
    let mut occ_b = vec![0u64; n];
    for s in 0..trials {
        let pair = sample_coupled(n, d, k, 0.5, &mut Seed::new(1, 0).stream(s)).unwrap();
        let g = sample_hypergraph(n, d, k, &mut Seed::new(2, 0).stream(s)).unwrap();
        a[pair.graph1().edge_count().min(39)] += 1;
        b[g.edge_count().min(39)] += 1;
        pair.graph1().edges().flatten().for_each(|&v| occ_a[v] += 1);
        g.edges().flatten().for_each(|&v| occ_b[v] += 1);
    }
    let homogeneity = |a: &[u64], b: &[u64]| {
        let (ta, tb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
        let mut stat = 0.0;
        let mut cells = 0;
        let (mut pa, mut pb) = (0.0, 0.0);
        for (&x, &y) in a.iter().zip(b) {
            pa += x as f64;
            pb += y as f64;
            if pa + pb >= 10.0 {
                let tot = pa + pb;
                let ea = tot * ta / (ta + tb);
                let eb = tot * tb / (ta + tb);
                stat += (pa - ea).powi(2) / ea + (pb - eb).powi(2) / eb;
                cells += 1;
                pa = 0.0;
                pb = 0.0;
            }
        }
        (stat, cells - 1)
    };
    let (stat, df) = homogeneity(&a, &b);
    assert!(stat < chi2_critical_99(df), "edge counts: {stat} df {df}");
    let (stat, df) = homogeneity(&occ_a, &occ_b);
    assert!(
        stat < chi2_critical_99(df),
        "vertex occurrences: {stat} df {df}"
    );
}

#[test]
fn coupled_endpoints() {
    let pair = sample_coupled(20, 3.0, 3, 1.0, &mut Seed::new(0, 0).stream(0)).unwrap();
    assert_eq!(pair.graph1(), pair.graph2());
    assert_eq!(pair.shared_count(), pair.graph1().edge_count());
    let pair = sample_coupled(20, 3.0, 3, 0.0, &mut Seed::new(0, 0).stream(1)).unwrap();
    assert_eq!(pair.shared_count(), 0);
}

#[test]
fn sign_table_is_fair_and_replayable() {
    let g = Hypergraph::new(4, 4, vec![vec![0, 1, 2, 3]]).unwrap();
    let trials = 100_000;
    let mut sums = [0i64; 4];
    for s in 0..trials {
        let inst = sample_signs(&g, &mut Seed::new(4, 4).stream(s));
        for (j, &x) in inst.signs(0).iter().enumerate() {
            sums[j] += x as i64;
        }
    }
    let sigma = (trials as f64).sqrt();
    assert!(
        sums.iter().all(|&s| (s as f64).abs() <= 3.0 * sigma),
        "{sums:?}"
    );
    let a = sample_signs(&g, &mut Seed::new(4, 4).stream(9));
    let b = sample_signs(&g, &mut Seed::new(4, 4).stream(9));
    assert_eq!(a, b);
}

fn naive_energy(edges: &[Vec<usize>], signs: Option<&[Vec<i8>]>, sigma: &[i8]) -> i64 {
    let mut h = 0i64;
    for (i, e) in edges.iter().enumerate() {
        let mut prod = 1i64;
        for (j, &v) in e.iter().enumerate() {
            let s = signs.map_or(1, |t| t[i][j]) as i64;
            prod *= s * sigma[v] as i64;
        }
        h -= prod;
    }
    h
}

fn random_instances(count: u64, seed: Seed) -> Vec<SignedInstance> {
    (0..count)
        .map(|s| {
            let mut rng = seed.stream(s);
            let n = 1 + below(&mut rng, 10);
            let k = 2 + below(&mut rng, 3);
            let d = 1.0 + 3.0 * uniform(&mut rng);
            let g = sample_hypergraph(n, d, k, &mut rng).unwrap();
            sample_signs(&g, &mut rng)
        })
        .collect()
}

#[test]
fn energies_match_naive_oracle() {
    for inst in random_instances(40, Seed::new(7, 7)) {
        let edges = inst.graph().to_nested();
        let signs: Vec<Vec<i8>> = inst.sign_rows().map(|r| r.to_vec()).collect();
        let n = inst.vertex_count();
        for b in 0..1u64 << n {
            let sigma = SpinConfig::from_basis_index(n, b);
            assert_eq!(
                energy(inst.graph(), &sigma).unwrap(),
                naive_energy(&edges, None, sigma.values())
            );
            assert_eq!(
                signed_energy(&inst, &sigma).unwrap(),
                naive_energy(&edges, Some(&signs), sigma.values())
            );
        }
    }
}

#[test]
fn xor_identity_over_all_assignments() {
    for inst in random_instances(100, Seed::new(8, 8)) {
        let n = inst.vertex_count();
        let m = inst.clause_count() as i64;
        for b in 0..1u64 << n {
            let sigma = SpinConfig::from_basis_index(n, b);
            let x = sigma.to_bits();
            let unsigned = xor_value(inst.graph(), &x).unwrap() as i64;
            assert_eq!(2 * unsigned - m, energy(inst.graph(), &sigma).unwrap());
            let signed = xor_value(&inst, &x).unwrap() as i64;
            assert_eq!(2 * signed - m, signed_energy(&inst, &sigma).unwrap());
        }
    }
}

#[test]
fn brute_force_examples() {
    let g = Hypergraph::new(4, 4, vec![vec![0, 1, 2, 3]]).unwrap();
    let r = brute_force_max(&g).unwrap();
    assert_eq!((r.optimum, r.count), (1, 8));
    let g = Hypergraph::empty(5, 2).unwrap();
    assert_eq!(brute_force_max(&g).unwrap().count, 32);
    let g = Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
    let r = brute_force_max(&g).unwrap();
    assert_eq!((r.optimum, r.count), (2, 2));
    assert!(r.argmax.values() == [1, -1, 1] || r.argmax.values() == [-1, 1, -1]);
}

/// Vertex distances from `v` by repeated boolean products with the
/// co-membership matrix.
fn reachability_distances(g: &Hypergraph, v: usize, p: usize) -> Vec<Option<usize>> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        for &a in e {
            for &b in e {
                adj[a][b] = true;
            }
        }
    }
    let mut dist = vec![None; n];
    let mut frontier = vec![false; n];
    frontier[v] = true;
    dist[v] = Some(0);
    for step in 1..=p {
        let mut next = vec![false; n];
        for a in 0..n {
            if frontier[a] {
                for b in 0..n {
                    next[b] |= adj[a][b];
                }
            }
        }
        for b in 0..n {
            if next[b] && dist[b].is_none() {
                dist[b] = Some(step);
            }
        }
        frontier = next;
    }
    dist
}

#[test]
fn balls_match_reachability_oracle() {
    for s in 0..30 {
        let mut rng = Seed::new(9, 9).stream(s);
        let n = 5 + below(&mut rng, 46);
        let k = 2 + below(&mut rng, 3);
        let g = sample_hypergraph(n, 1.5, k, &mut rng).unwrap();
        for v in (0..n).step_by(3) {
            for p in 0..4 {
                let b = ball(&g, v, p).unwrap();
                let dist = reachability_distances(&g, v, p);
                let verts: Vec<usize> = (0..n).filter(|&w| dist[w].is_some()).collect();
                assert_eq!(b.vertices, verts);
                let edges: Vec<usize> = (0..g.edge_count())
                    .filter(|&e| p > 0 && g.edge(e).iter().any(|&w| dist[w].is_some_and(|d| d < p)))
                    .collect();
                assert_eq!(b.edges, edges);
                let bigger = ball(&g, v, p + 1).unwrap();
                assert!(b.vertices.iter().all(|w| bigger.vertices.contains(w)));
            }
        }
    }
}

#[test]
fn rate_zero_gives_no_edges() {
    for s in 0..20 {
        assert_eq!(
            sample_with_rate(5, 3, 0.0, &mut Seed::new(0, 0).stream(s))
                .unwrap()
                .edge_count(),
            0
        );
    }
}

proptest! {
    #[test]
    fn energy_bounds_and_parity(seed in any::<u64>(), bits in any::<u64>()) {
        let mut rng = Seed::new(seed, 1).stream(0);
        let g = sample_hypergraph(12, 3.0, 3, &mut rng).unwrap();
        let sigma = SpinConfig::from_basis_index(12, bits & 0xfff);
        let h = energy(&g, &sigma).unwrap();
        let m = g.edge_count() as i64;
        prop_assert!(h.abs() <= m);
        prop_assert_eq!((h - m).rem_euclid(2), 0);
    }
}
