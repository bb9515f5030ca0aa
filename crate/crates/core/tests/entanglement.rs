use fredkin_core::combinatorics::{classify, ClassId, SpinWord};
use fredkin_core::entanglement::*;
use fredkin_core::states::{colored_dyck_state, dyck_state};
use fredkin_core::Execution;
use proptest::prelude::*;

/// Weight of each Schmidt group by brute force: the fraction of Dyck words
/// whose height at the cut is `m`.
fn enumerated_weights(n: usize, cut: usize) -> Vec<(usize, f64)> {
    let n_sites = 2 * n;
    let mut by_height = std::collections::BTreeMap::<usize, usize>::new();
    let mut total = 0usize;
    for bits in 0..1u64 << n_sites {
        let w = SpinWord::new(n_sites, bits);
        if classify(&w) != ClassId::DYCK {
            continue;
        }
        total += 1;
        let height = (0..cut).map(|i| if w.is_up(i) { 1i64 } else { -1 }).sum::<i64>() as usize;
        *by_height.entry(height).or_default() += 1;
    }
    by_height
        .into_iter()
        .map(|(m, c)| (m, c as f64 / total as f64))
        .collect()
}

#[test]
fn formula_matches_svd() {
    for n in 1..=8 {
        let state = dyck_state(n).unwrap();
        for cut in 1..2 * n {
            let spec = schmidt_exact(n, cut).unwrap();
            let svd = schmidt_svd(&state, 2 * n, 2, cut).unwrap();
            let formula = spec.singular_values();
            for (i, s) in svd.iter().enumerate() {
                let f = formula.get(i).copied().unwrap_or(0.0);
                assert!((s - f).abs() < 1e-10, "n={n} cut={cut}");
            }
        }
    }
}

#[test]
fn formula_matches_enumeration() {
    for n in 1..=6 {
        for cut in 1..2 * n {
            let spec = schmidt_exact(n, cut).unwrap();
            let brute = enumerated_weights(n, cut);
            assert_eq!(spec.entries.len(), brute.len());
            for (e, (m, w)) in spec.entries.iter().zip(brute) {
                assert_eq!(e.m, m);
                assert!((e.weight() - w).abs() < 1e-13);
            }
        }
    }
}

#[test]
fn colored_formula_matches_svd() {
    for (n, k) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)] {
        let state = colored_dyck_state(n, k).unwrap();
        for cut in 1..2 * n {
            let spec = schmidt_colored(n, cut, k).unwrap();
            let svd = schmidt_svd(&state, 2 * n, 2 * k, cut).unwrap();
            let formula = spec.singular_values();
            let rank = svd.iter().filter(|&&s| s > 1e-10).count() as u128;
            assert_eq!(rank, schmidt_rank(&spec), "n={n} k={k} cut={cut}");
            for (i, s) in svd.iter().enumerate() {
                assert!((s - formula.get(i).copied().unwrap_or(0.0)).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn colored_entropy_identity() {
    for n in 1..=4 {
        for k in 1..=3 {
            for cut in 1..2 * n {
                let plain = entropy(&schmidt_exact(n, cut).unwrap()).unwrap();
                let colored = entropy(&schmidt_colored(n, cut, k).unwrap()).unwrap();
                let h = height_expectation(n, cut).unwrap();
                assert!((colored - plain - (k as f64).ln() * h).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn ranks() {
    assert_eq!(schmidt_rank(&schmidt_exact(2, 2).unwrap()), 2);
    assert_eq!(schmidt_rank(&schmidt_exact(2, 1).unwrap()), 1);
    assert_eq!(schmidt_rank(&schmidt_colored(2, 2, 2).unwrap()), 5);
    for n in 1..=10 {
        for cut in 1..2 * n {
            for k in 1..=4 {
                let spec = schmidt_colored(n, cut, k).unwrap();
                assert_eq!(schmidt_rank(&spec), schmidt_rank_formula(2 * n, cut, k));
            }
        }
    }
}

#[test]
fn entropy_is_symmetric_and_grows() {
    for n in 1..=12 {
        for cut in 1..2 * n {
            let a = entropy(&schmidt_exact(n, cut).unwrap()).unwrap();
            let b = entropy(&schmidt_exact(n, 2 * n - cut).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }
    for n in 1..=6 {
        let state = dyck_state(n).unwrap();
        for cut in 1..2 * n {
            let p = |c| {
                let sv = schmidt_svd(&state, 2 * n, 2, c).unwrap();
                entropy_of_probabilities(&sv.iter().map(|s| s * s).collect::<Vec<_>>()).unwrap()
            };
            assert!((p(cut) - p(2 * n - cut)).abs() < 1e-10);
        }
    }
    // at the symmetric cut the entropy grows along each parity of N/2 but
    // drops from N = 4k to N = 4k + 2, since only heights of the cut's parity
    // occur
    let half = |n: usize| entropy(&schmidt_exact(n, n).unwrap()).unwrap();
    for n in 2..=98 {
        assert!(half(n + 2) > half(n), "N={}", 2 * n);
    }
    assert!(half(3) < half(2));
    assert!((2..=100).any(|n| half(n + 1) < half(n)));
}

#[test]
fn entropy_edge_cases() {
    let spec = schmidt_exact(2, 2).unwrap();
    assert!((entropy(&spec).unwrap() - 2f64.ln()).abs() < 1e-15);
    assert_eq!(entropy(&schmidt_exact(1, 1).unwrap()).unwrap(), 0.0);
    for n in 1..=20 {
        for cut in 1..2 * n {
            let spec = schmidt_exact(n, cut).unwrap();
            let s = entropy(&spec).unwrap();
            assert!(s >= 0.0 && s <= (schmidt_rank(&spec) as f64).ln() + 1e-12);
        }
    }
}

#[test]
fn large_chain_entropy_against_the_continuum() {
    let (n_sites, cut) = (2000, 1000);
    let exact = entropy(&schmidt_exact(n_sites / 2, cut).unwrap()).unwrap();
    // the continuum estimate overshoots by half a log two
    let literal = asymptotic_entropy(n_sites, cut);
    assert!((literal - exact - LATTICE_OFFSET).abs() < 1e-3, "{}", literal - exact);
    assert!((asymptotic_entropy_corrected(n_sites, cut) - exact).abs() < 1e-3);
}

#[test]
fn square_root_term() {
    let (n_sites, cut) = (4000usize, 2000usize);
    let h = height_expectation(n_sites / 2, cut).unwrap();
    let scale = (2.0 * (cut * (n_sites - cut)) as f64 / n_sites as f64).sqrt();
    let ratio = h / scale;
    assert!(
        (ratio / (2.0 / std::f64::consts::PI.sqrt()) - 1.0).abs() < 0.02,
        "{ratio}"
    );

    let exact = entropy(&schmidt_colored(n_sites / 2, cut, 2).unwrap()).unwrap();
    let estimate = colored_entropy_asymptotic(n_sites, cut, 2);
    assert!(((estimate - exact) / exact).abs() < 0.03);

    // S(2N) - S(N) at the symmetric cut grows like sqrt(N/2)(sqrt 2 - 1)
    let s = |n: usize| entropy(&schmidt_colored(n / 2, n / 2, 2).unwrap()).unwrap();
    let plain = |n: usize| entropy(&schmidt_exact(n / 2, n / 2).unwrap()).unwrap();
    let n = 2000usize;
    let sqrt_part = (s(2 * n) - plain(2 * n)) - (s(n) - plain(n));
    let predicted = 2f64.ln() * 2.0 / std::f64::consts::PI.sqrt() * (n as f64 / 2.0).sqrt() * (2f64.sqrt() - 1.0);
    assert!((sqrt_part / predicted - 1.0).abs() < 0.05, "{sqrt_part} vs {predicted}");
}

#[test]
fn sweep_modes() {
    let points = [SweepPoint {
        n_sites: 8,
        cut: 4,
        n_colors: 2,
    }];
    let svd = entropy_sweep(&points, EntropyMode::Svd, Execution::Sequential).unwrap();
    let formula = entropy_sweep(&points, EntropyMode::Formula, Execution::Sequential).unwrap();
    assert!((svd[0].s_exact.unwrap() - formula[0].s_exact.unwrap()).abs() < 1e-10);
    let asym = entropy_sweep(&points, EntropyMode::Asymptotic, Execution::Sequential).unwrap();
    assert!(asym[0].s_exact.is_none());
}

proptest! {
    #[test]
    fn spectra_are_normalized(n in 1usize..=400, cut_frac in 0.0f64..1.0, k in 1usize..=5) {
        let cut = 1 + ((2 * n - 2) as f64 * cut_frac) as usize;
        let spec = schmidt_colored(n, cut, k).unwrap();
        prop_assert!((spec.total_weight() - 1.0).abs() < 1e-12);
        for e in &spec.entries {
            prop_assert!(e.ln_p.is_finite() && e.p >= 0.0);
            prop_assert_eq!(e.m % 2, cut % 2);
        }
    }
}
