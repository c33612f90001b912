use ogp_core::branching::{
    exact_mgf, mgf_check, neighborhood_stats, poisson_tail, simulate_branching, tail_check,
    BranchingMode, DEFAULT_POPULATION_CAP,
};
use ogp_core::instances::{ball, depth_budget, sample_hypergraph};
use ogp_core::rng::Seed;
use ogp_core::runner::Sequential;
use ogp_core::stats::{summarize, Z99};

fn mean_and_se(values: &[u64]) -> (f64, f64) {
    let v: Vec<f64> = values.iter().map(|&z| z as f64).collect();
    let s = summarize(&v);
    (s.mean, s.std_err)
}

#[test]
fn generation_means() {
    let run = simulate_branching(
        3.0,
        4,
        2,
        100_000,
        BranchingMode::Dominating,
        DEFAULT_POPULATION_CAP,
        Seed::new(1, 0),
        &Sequential,
    )
    .unwrap();
    let (m, se) = mean_and_se(&run.generation(1));
    assert!((m - 9.0).abs() <= 4.0 * se, "{m} {se}");
    let run = simulate_branching(
        3.0,
        4,
        2,
        100_000,
        BranchingMode::Scaled,
        DEFAULT_POPULATION_CAP,
        Seed::new(1, 1),
        &Sequential,
    )
    .unwrap();
    let (m, se) = mean_and_se(&run.generation(2));
    assert!((m - 81.0).abs() <= 4.0 * se, "{m} {se}");
    assert_eq!(run.truncated_count(), 0);
}

#[test]
fn tail_grid_holds() {
    for &d in &[2.0, 3.0, 5.0] {
        for &k in &[3, 4] {
            for x in 1..=3 {
                for &u in &[2.0, 4.0, 6.0] {
                    let seed = Seed::new(2, (d as u64) << 16 | (k as u64) << 8 | x as u64);
                    let r = tail_check(
                        d,
                        k,
                        x,
                        u,
                        20_000,
                        BranchingMode::Dominating,
                        seed,
                        &Sequential,
                    )
                    .unwrap();
                    assert!(r.pass, "d={d} k={k} x={x} u={u}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn tail_example_and_large_u() {
    let r = tail_check(
        3.0,
        4,
        2,
        4.0,
        100_000,
        BranchingMode::Dominating,
        Seed::new(3, 0),
        &Sequential,
    )
    .unwrap();
    assert!((r.threshold - 674.3).abs() < 0.1, "{}", r.threshold);
    assert!((r.bound - 0.0498).abs() < 1e-4);
    assert!(r.pass);
    let r = tail_check(
        3.0,
        4,
        2,
        20.0,
        100_000,
        BranchingMode::Dominating,
        Seed::new(3, 1),
        &Sequential,
    )
    .unwrap();
    assert_eq!(r.tail.hits, 0);
}

#[test]
fn one_generation_tail_matches_poisson_cdf() {
    for &(d, k, u) in &[(2.0, 3, 0.5), (3.0, 4, 0.6), (5.0, 3, 0.4)] {
        let trials = 100_000;
        let r = tail_check(
            d,
            k,
            1,
            u,
            trials,
            BranchingMode::Dominating,
            Seed::new(4, k as u64),
            &Sequential,
        )
        .unwrap();
        let m = d * (k - 1) as f64;
        let exact = poisson_tail(m, r.threshold);
        let se = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!(
            (r.tail.estimate - exact).abs() <= Z99 * se.max(1.0 / trials as f64),
            "{r:?} vs {exact}"
        );
    }
}

#[test]
fn mgf_values() {
    let t = std::f64::consts::LN_2 / 9.0;
    let exact = exact_mgf(3.0, 4, 1, t, BranchingMode::Dominating).unwrap();
    assert!((exact - (9.0 * (t.exp() - 1.0)).exp()).abs() < 1e-12);
    let r = mgf_check(
        3.0,
        4,
        1,
        100_000,
        BranchingMode::Dominating,
        Seed::new(5, 1),
        &Sequential,
    )
    .unwrap();
    assert!(r.pass);
    assert!((r.estimate.mean - r.exact).abs() <= 4.0 * r.estimate.std_err + 1e-12);
    let r = mgf_check(
        3.0,
        4,
        3,
        100_000,
        BranchingMode::Dominating,
        Seed::new(5, 3),
        &Sequential,
    )
    .unwrap();
    assert!(r.pass, "{r:?}");
    assert!(
        (r.estimate.mean - r.exact).abs() <= 4.0 * r.estimate.std_err,
        "{r:?}"
    );
    assert!(mgf_check(
        3.0,
        4,
        1,
        100,
        BranchingMode::Dominating,
        Seed::new(5, 4),
        &Sequential
    )
    .is_err());
    assert_eq!(
        exact_mgf(3.0, 4, 3, 0.0, BranchingMode::Dominating).unwrap(),
        1.0
    );
}

#[test]
fn dominating_law_bounds_scaled_law_one_level_down() {
    // Same mean at equal depth but heavier scaled tails, so the comparison
    // is between scaled generation x - 1 and dominating generation x.
    for &d in &[2.0, 3.0, 5.0] {
        for &k in &[3, 4] {
            let m = d * (k - 1) as f64;
            for x in 1..=3 {
                for j in 1..=20 {
                    let t = j as f64 * 0.05 * (std::f64::consts::LN_2 / m).powi(x as i32);
                    let f = exact_mgf(d, k, x - 1, t, BranchingMode::Scaled).unwrap();
                    let g = exact_mgf(d, k, x, t, BranchingMode::Dominating).unwrap();
                    assert!(f <= g, "d={d} k={k} x={x} t={t}: {f} > {g}");
                }
            }
        }
    }
    for &(d, k, x) in &[(2.0, 3, 2), (3.0, 4, 2), (5.0, 3, 3), (2.0, 4, 3)] {
        let trials = 50_000;
        let upper = simulate_branching(
            d,
            k,
            x,
            trials,
            BranchingMode::Dominating,
            DEFAULT_POPULATION_CAP,
            Seed::new(6, 0),
            &Sequential,
        )
        .unwrap()
        .final_sizes();
        let lower = simulate_branching(
            d,
            k,
            x,
            trials,
            BranchingMode::Scaled,
            DEFAULT_POPULATION_CAP,
            Seed::new(6, 1),
            &Sequential,
        )
        .unwrap()
        .generation(x - 1);
        let m = (d * (k - 1) as f64).powi(x as i32 - 1);
        for &level in &[1.0, 2.0, 4.0, 8.0] {
            let s = level * m;
            let pu = upper.iter().filter(|&&z| z as f64 >= s).count() as f64 / trials as f64;
            let pl = lower.iter().filter(|&&z| z as f64 >= s).count() as f64 / trials as f64;
            let se = ((pu * (1.0 - pu) + pl * (1.0 - pl)) / trials as f64).sqrt();
            assert!(
                pu >= pl - Z99 * se - 1.0 / trials as f64,
                "d={d} k={k} x={x} level={level}: {pu} < {pl}"
            );
        }
    }
}

#[test]
fn equal_depth_laws_share_the_mean() {
    let trials = 100_000;
    let a = simulate_branching(
        2.0,
        3,
        2,
        trials,
        BranchingMode::Dominating,
        DEFAULT_POPULATION_CAP,
        Seed::new(6, 2),
        &Sequential,
    )
    .unwrap()
    .final_sizes();
    let b = simulate_branching(
        2.0,
        3,
        2,
        trials,
        BranchingMode::Scaled,
        DEFAULT_POPULATION_CAP,
        Seed::new(6, 3),
        &Sequential,
    )
    .unwrap()
    .final_sizes();
    let ((ma, sa), (mb, sb)) = (mean_and_se(&a), mean_and_se(&b));
    assert!((ma - mb).abs() <= 4.0 * (sa * sa + sb * sb).sqrt());
}

#[test]
fn neighborhood_max_matches_ball() {
    for s in 0..5 {
        let g = sample_hypergraph(300, 2.0, 3, &mut Seed::new(7, 0).stream(s)).unwrap();
        for p in 0..3 {
            let stats = neighborhood_stats(&g, p, 0.5).unwrap();
            let want = (0..g.n())
                .map(|v| ball(&g, v, p).unwrap().vertices.len())
                .max()
                .unwrap();
            assert_eq!(stats.max, want);
            if p == 0 {
                assert!(stats.sizes.iter().all(|&z| z == 1));
            }
        }
    }
}

#[test]
fn relative_ball_size_shrinks_with_n() {
    let (d, k) = (3.0, 4);
    let mut ratios = Vec::new();
    for &n in &[500usize, 1000, 2000] {
        let p = depth_budget(2000, d, k, 0.1).unwrap().max(1);
        let mut worst = 0usize;
        for s in 0..100 {
            let g = sample_hypergraph(n, d, k, &mut Seed::new(8, n as u64).stream(s)).unwrap();
            worst = worst.max(neighborhood_stats(&g, p, 0.5).unwrap().max);
        }
        ratios.push(worst as f64 / n as f64);
    }
    assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
}
