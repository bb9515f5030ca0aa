use fredkin_core::combinatorics::{is_dyck, ClassId, SpinWord};
use fredkin_core::model::*;
use fredkin_core::solver::*;
use fredkin_core::states::*;

fn dyck_indicator(n: usize, bits: u64) -> f64 {
    // running height never negative and ends at zero
    let mut h = 0i64;
    for i in 0..n {
        h += if bits >> (n - 1 - i) & 1 == 1 { 1 } else { -1 };
        if h < 0 {
            return 0.0;
        }
    }
    if h == 0 {
        1.0
    } else {
        0.0
    }
}

#[test]
fn dyck_state_is_annihilated_term_by_term() {
    for n in 1..=6 {
        let terms = hamiltonian_terms(2 * n, BoundarySpec::default(), ModelForm::Projector).unwrap();
        let d = dyck_state(n).unwrap();
        for t in 0..terms.terms().len() {
            let out = terms.term_operator(t).apply(d.amplitudes()).unwrap();
            assert!(out.iter().all(|x| x.abs() < 1e-12), "n={n} term {t}");
        }
    }
}

#[test]
fn dyck_state_spans_the_solver_kernel() {
    for n in 1..=6 {
        let h = build_hamiltonian(2 * n, BoundarySpec::default(), ModelForm::Projector).unwrap();
        let kernel = kernel_basis(&h, KERNEL_TOL).unwrap();
        assert_eq!(kernel.len(), 1);
        assert!(kernel[0].fidelity(&dyck_state(n).unwrap()).unwrap() >= 1.0 - 1e-10);
    }
}

#[test]
fn exact_mps_is_the_dyck_indicator() {
    for n in (2..=16).step_by(2) {
        let rep = MpsRep::exact_for(n);
        assert_eq!(rep.bond_dim, n / 2 + 1);
        for bits in 0..1u64 << n {
            assert_eq!(mps_amplitude(&rep, &SpinWord::new(n, bits)), dyck_indicator(n, bits));
        }
    }
}

#[test]
fn bond_dimension_n_over_two_is_not_enough() {
    for n in (2..=12).step_by(2) {
        let rep = mps_matrices(n, n / 2);
        let tallest = SpinWord::from_ups(&(0..n).map(|i| i < n / 2).collect::<Vec<_>>());
        assert!(is_dyck(&tallest));
        assert_eq!(mps_amplitude(&rep, &tallest), 0.0);
        assert!(truncation_report(n, n / 2).fidelity < 1.0);
    }
}

#[test]
fn truncation_error_falls_with_bond_dimension() {
    let reports: Vec<TruncationReport> = (2..=21).map(|chi| truncation_report(40, chi)).collect();
    assert!(reports.windows(2).all(|w| w[1].fidelity >= w[0].fidelity));
    assert!((reports.last().unwrap().fidelity - 1.0).abs() < 1e-12);
}

#[test]
fn anomalous_state_is_odd_under_translation_and_has_zero_energy() {
    for n in 2..=4 {
        let s = anomalous_state(n).unwrap();
        let t = translation_operator(2 * n, 2).apply(s.amplitudes()).unwrap();
        assert!(t.iter().zip(s.amplitudes()).all(|(a, b)| (a + b).abs() < 1e-12));
        let h = build_hamiltonian(2 * n, BoundarySpec::Periodic, ModelForm::Projector).unwrap();
        assert!(h.apply(s.amplitudes()).unwrap().iter().all(|x| x.abs() < 1e-12));
    }
}

#[test]
fn anomalous_state_is_orthogonal_to_symmetric_ground_states() {
    for n in 2..=3 {
        let h = build_hamiltonian(2 * n, BoundarySpec::Periodic, ModelForm::Projector).unwrap();
        let t = translation_operator(2 * n, 2);
        let s = anomalous_state(n).unwrap();
        for v in kernel_basis(&h, KERNEL_TOL).unwrap() {
            // project onto the translation-even part
            let tv = t.apply(v.amplitudes()).unwrap();
            let mut even: Vec<f64> = v.amplitudes().to_vec();
            let mut shifted = tv;
            for _ in 1..2 * n {
                even.iter_mut().zip(&shifted).for_each(|(e, x)| *e += x);
                shifted = t.apply(&shifted).unwrap();
            }
            let overlap: f64 = even.iter().zip(s.amplitudes()).map(|(a, b)| a * b).sum();
            assert!(overlap.abs() < 1e-10);
        }
    }
}

#[test]
fn colored_dyck_state_is_the_colored_kernel() {
    for (n, k) in [(1, 2), (2, 2), (1, 3)] {
        let h = build_colored_hamiltonian(2 * n, k).unwrap();
        let kernel = kernel_basis(&h, KERNEL_TOL).unwrap();
        assert_eq!(kernel.len(), 1, "n={n} k={k}");
        assert!(kernel[0].fidelity(&colored_dyck_state(n, k).unwrap()).unwrap() >= 1.0 - 1e-10);
    }
}

#[test]
fn class_state_sizes() {
    assert_eq!(class_state(ClassId::DYCK, 6).unwrap(), dyck_state(3).unwrap());
    assert_eq!(class_state(ClassId::new(1, 1), 4).unwrap().support().count(), 3);
}

#[test]
fn magnon_sector_is_closed_and_hops() {
    for n in 3..=10 {
        let sector = magnon_sector(n).unwrap();
        assert_eq!(sector.dim(), n - 1);
        assert_eq!(sector.class.a + sector.class.b, n - 2);
        for h in [
            build_bulk_hamiltonian(n, false).unwrap(),
            build_hamiltonian(n, BoundarySpec::default(), ModelForm::Projector).unwrap(),
        ] {
            assert!(sector_closure_defect(&sector, &h).unwrap() <= 1e-12);
        }
        let r = magnon_restricted_hamiltonian(n).unwrap();
        let dense = r.to_dense();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                if i.abs_diff(j) > 1 {
                    assert_eq!(dense[(i, j)], 0.0);
                } else if i != j {
                    assert!(dense[(i, j)] < 0.0);
                }
            }
        }
    }
}

#[test]
fn magnon_spectrum_matches_the_xxx_chain() {
    for n in 4..=10 {
        let mut fredkin = dense_eigenvalues(&magnon_restricted_hamiltonian(n).unwrap());
        let xxx: Vec<f64> = dense_eigenvalues(&xxx_one_magnon(n - 1).unwrap());
        fredkin.iter_mut().for_each(|x| *x /= MAGNON_NORMALIZATION);
        // open XXX one-magnon levels 2 - 2cos(πq/M)
        let m = n - 1;
        let mut analytic: Vec<f64> = (0..m)
            .map(|q| 2.0 - 2.0 * (std::f64::consts::PI * q as f64 / m as f64).cos())
            .collect();
        analytic.sort_by(f64::total_cmp);
        for ((a, b), c) in fredkin.iter().zip(&xxx).zip(&analytic) {
            assert!((a - b).abs() < 1e-9 && (b - c).abs() < 1e-12);
            assert!((-1e-12..=4.0 + 1e-12).contains(b));
        }
    }
}
