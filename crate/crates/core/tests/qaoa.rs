use num_complex::Complex64;
use ogp_core::instances::{
    energy, sample_hypergraph, sample_signs, signed_energy, Clauses, Hypergraph, SpinConfig,
};
use ogp_core::qaoa::{
    bell_experiment, bell_state, build_cost_diagonal, energy_expectation, evolve, exact_chsh,
    exact_correlators, lightcone_edge_expectation, marginal_mass, optimal_angles,
    sample_conditional, sample_output, z_product_expectation, BellAngles, BellBaseline,
    InitialState, QaoaParams, Statevector, DEFAULT_DENSE_CAP,
};
use ogp_core::rng::{below, uniform, Seed};

type Mat = Vec<Vec<Complex64>>;

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// `exp(-i θ M)` by a long Taylor series.
fn expm_i(m: &Mat, theta: f64) -> Mat {
    let n = m.len();
    let a: Mat = m
        .iter()
        .map(|r| r.iter().map(|&x| x * Complex64::new(0.0, -theta)).collect())
        .collect();
    let mut out: Mat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let mut term = out.clone();
    for j in 1..60 {
        term = matmul(&term, &a);
        term.iter_mut().flatten().for_each(|x| *x /= j as f64);
        for (o, t) in out.iter_mut().flatten().zip(term.iter().flatten()) {
            *o += *t;
        }
    }
    out
}

#[test]
fn two_qubit_matrix_exponential_oracle() {
    let (beta, gamma) = (0.3, 0.7);
    let c = |x: f64| Complex64::new(x, 0.0);
    let hc: Mat = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    c(if i == j {
                        [-1.0, 1.0, 1.0, -1.0][i]
                    } else {
                        0.0
                    })
                })
                .collect()
        })
        .collect();
    // X on qubit 0 flips bit 0, X on qubit 1 flips bit 1.
    let mix: Mat = (0..4)
        .map(|i: usize| {
            (0..4)
                .map(|j: usize| {
                    c(if (i ^ j) == 1 || (i ^ j) == 2 {
                        1.0
                    } else {
                        0.0
                    })
                })
                .collect()
        })
        .collect();
    let u = matmul(&expm_i(&mix, beta), &expm_i(&hc, gamma));
    let psi0 = [c(0.5); 4];
    let psi: Vec<Complex64> = (0..4)
        .map(|i| (0..4).map(|j| u[i][j] * psi0[j]).sum())
        .collect();
    let want: f64 = (0..4).map(|i| psi[i].norm_sqr() * hc[i][i].re).sum();

    let g = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
    let diag = build_cost_diagonal(&g).unwrap();
    assert_eq!(diag.values(), &[-1.0, 1.0, 1.0, -1.0]);
    let state = evolve(
        &QaoaParams::new(vec![beta], vec![gamma]).unwrap(),
        InitialState::Plus,
        &diag,
    )
    .unwrap();
    let got = energy_expectation(&state, &diag).unwrap();
    assert!((got - want).abs() < 1e-10, "{got} vs {want}");
}

#[test]
fn diagonal_matches_energy() {
    for s in 0..20 {
        let mut rng = Seed::new(1, 3).stream(s);
        let n = 1 + below(&mut rng, 10);
        let g = sample_hypergraph(n, 2.5, 2 + below(&mut rng, 3), &mut rng).unwrap();
        let inst = sample_signs(&g, &mut rng);
        let du = build_cost_diagonal(&g).unwrap();
        let ds = build_cost_diagonal(&inst).unwrap();
        for b in 0..1u64 << n {
            let sigma = SpinConfig::from_basis_index(n, b);
            assert_eq!(du.values()[b as usize], energy(&g, &sigma).unwrap() as f64);
            assert_eq!(
                ds.values()[b as usize],
                signed_energy(&inst, &sigma).unwrap() as f64
            );
        }
    }
}

#[test]
fn lightcone_agrees_with_dense() {
    let mut worst: f64 = 0.0;
    for s in 0..50 {
        let mut rng = Seed::new(2, 4).stream(s);
        let n = 6 + below(&mut rng, 9);
        let k = 2 + below(&mut rng, 3);
        let d = 2.0 + below(&mut rng, 2) as f64;
        let p = 1 + below(&mut rng, 2);
        let beta: Vec<f64> = (0..p)
            .map(|_| std::f64::consts::PI * uniform(&mut rng))
            .collect();
        let gamma: Vec<f64> = (0..p)
            .map(|_| std::f64::consts::PI * uniform(&mut rng))
            .collect();
        let params = QaoaParams::new(beta, gamma).unwrap();
        let g = sample_hypergraph(n, d, k, &mut rng).unwrap();
        let inst = sample_signs(&g, &mut rng);
        let state = evolve(
            &params,
            InitialState::Plus,
            &build_cost_diagonal(&inst).unwrap(),
        )
        .unwrap();
        for e in 0..inst.clause_count() {
            let dense = z_product_expectation(&state, inst.parity_mask(e));
            let cone = lightcone_edge_expectation(
                &inst,
                &params,
                InitialState::Plus,
                e,
                DEFAULT_DENSE_CAP,
            )
            .unwrap();
            worst = worst.max((dense - cone).abs());
        }
    }
    assert!(worst <= 1e-10, "{worst}");
}

fn random_state(n: usize, seed: u64) -> Statevector {
    let mut rng = Seed::new(5, seed).stream(0);
    let amps: Vec<Complex64> = (0..1 << n)
        .map(|_| Complex64::new(uniform(&mut rng) - 0.5, uniform(&mut rng) - 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    Statevector::from_amplitudes(n, amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn conditioned_law_does_not_depend_on_measurement_order() {
    for s in 0..5 {
        let psi = random_state(8, s);
        let fixed = [(1usize, -1i8), (4, 1), (6, -1)];
        let orders = [[0, 1, 2], [2, 0, 1], [1, 2, 0]];
        let reference: Vec<f64> = (0..256u64)
            .map(|b| {
                let spins: Vec<(usize, i8)> = SpinConfig::from_basis_index(8, b)
                    .values()
                    .iter()
                    .copied()
                    .enumerate()
                    .collect();
                marginal_mass(&psi, &spins).unwrap()
            })
            .collect();
        let base = marginal_mass(&psi, &fixed).unwrap();
        for order in &orders {
            let reordered: Vec<(usize, i8)> = order.iter().map(|&i| fixed[i]).collect();
            let mass = marginal_mass(&psi, &reordered).unwrap();
            assert!((mass - base).abs() < 1e-12);
            for (b, &r) in reference.iter().enumerate() {
                let x = SpinConfig::from_basis_index(8, b as u64);
                let consistent = fixed.iter().all(|&(q, v)| x.values()[q] == v);
                let direct = if consistent { r / base } else { 0.0 };
                let mut joint = reordered.clone();
                joint.extend(x.values().iter().copied().enumerate());
                let via = marginal_mass(&psi, &joint).unwrap() / mass;
                assert!((direct - via).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn sampled_energy_matches_expectation() {
    let mut rng = Seed::new(6, 6).stream(0);
    let g = sample_hypergraph(9, 3.0, 3, &mut rng).unwrap();
    let diag = build_cost_diagonal(&g).unwrap();
    let state = evolve(
        &QaoaParams::new(vec![0.4, 0.2], vec![0.3, 0.8]).unwrap(),
        InitialState::Plus,
        &diag,
    )
    .unwrap();
    let exact = energy_expectation(&state, &diag).unwrap();
    let shots = 1_000_000;
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..shots {
        let x = sample_output(&state, &mut rng).unwrap();
        let h = energy(&g, &x).unwrap() as f64;
        sum += h;
        sq += h * h;
    }
    let mean = sum / shots as f64;
    let se = ((sq / shots as f64 - mean * mean) / shots as f64).sqrt();
    assert!(
        (mean - exact).abs() <= 4.0 * se,
        "{mean} vs {exact} (se {se})"
    );
}

#[test]
fn plus_state_samples_are_fair() {
    let psi = Statevector::plus(6);
    let shots = 100_000;
    let mut ups = [0i64; 6];
    let mut rng = Seed::new(7, 7).stream(0);
    for _ in 0..shots {
        let x = sample_output(&psi, &mut rng).unwrap();
        for (q, &v) in x.values().iter().enumerate() {
            ups[q] += v as i64;
        }
    }
    let sigma = (shots as f64).sqrt();
    assert!(
        ups.iter().all(|&u| (u as f64).abs() <= 4.0 * sigma),
        "{ups:?}"
    );
}

#[test]
fn bell_pair_conditioning() {
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let psi = Statevector::from_amplitudes(2, vec![amp, zero, zero, amp]).unwrap();
    let mut rng = Seed::new(8, 8).stream(0);
    for _ in 0..100 {
        let x = sample_conditional(&psi, &[(0, -1)], &mut rng).unwrap();
        assert_eq!(x.values(), &[-1, -1]);
    }
}

/// Correlators straight from the 16-outcome table.
fn table_correlators(angles: &BellAngles) -> [[f64; 2]; 2] {
    let probs = bell_state(angles).probabilities();
    let mut out = [[0.0; 2]; 2];
    for (sa, row) in out.iter_mut().enumerate() {
        for (sb, cell) in row.iter_mut().enumerate() {
            let (mut num, mut den) = (0.0, 0.0);
            for (b, &p) in probs.iter().enumerate() {
                if b & 1 == sa && (b >> 3) & 1 == sb {
                    let sign = if ((b >> 1) ^ (b >> 2)) & 1 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    num += sign * p;
                    den += p;
                }
            }
            *cell = num / den;
        }
    }
    out
}

#[test]
fn bell_separation() {
    let (angles, s) = optimal_angles();
    assert!((s - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
    let table = table_correlators(&angles);
    let exact = exact_correlators(&angles);
    for i in 0..2 {
        for j in 0..2 {
            assert!((table[i][j] - exact[i][j]).abs() < 1e-12);
        }
    }
    let q = bell_experiment(
        &angles,
        100_000,
        BellBaseline::Quantum,
        &mut Seed::new(9, 1).stream(0),
    )
    .unwrap();
    assert!(
        (q.chsh - 2.0 * std::f64::consts::SQRT_2).abs() <= 4.0 * q.chsh_std_err,
        "{q:?}"
    );
    let l = bell_experiment(
        &angles,
        100_000,
        BellBaseline::LocalHiddenVariable,
        &mut Seed::new(9, 2).stream(0),
    )
    .unwrap();
    assert!(l.chsh <= 2.0 + 4.0 * l.chsh_std_err, "{l:?}");

    let identity = BellAngles::default();
    let c = exact_correlators(&identity);
    assert!(c.iter().flatten().all(|&x| (x - c[0][0]).abs() < 1e-12));
    assert!(exact_chsh(&identity) <= 2.0 + 1e-12);
}
