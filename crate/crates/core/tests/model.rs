use std::sync::Arc;

use fredkin_core::model::*;
use fredkin_core::solver::dense_eigenvalues;
use fredkin_core::{Execution, Operator};
use proptest::prelude::*;

fn commutator_norm(a: &Operator, b: &Operator) -> f64 {
    let (a, b) = (a.to_dense(), b.to_dense());
    (&a * &b - &b * &a).abs().max()
}

#[test]
fn hamiltonians_commute_with_magnetization() {
    for n in 3..=8 {
        for boundary in [
            BoundarySpec::default(),
            BoundarySpec::open(-0.5, 2.0),
            BoundarySpec::Periodic,
        ] {
            let h = build_hamiltonian(n, boundary, ModelForm::Projector).unwrap();
            assert_eq!(commutator_norm(&h, &magnetization_operator(n, 2)), 0.0);
        }
    }
    let hc = build_colored_hamiltonian(3, 2).unwrap();
    assert!(commutator_norm(&hc, &magnetization_operator(3, 4)) < 1e-14);
}

#[test]
fn periodic_chain_is_translation_invariant() {
    for n in 3..=9 {
        let h = build_hamiltonian(n, BoundarySpec::Periodic, ModelForm::Projector).unwrap();
        assert!(commutator_norm(&h, &translation_operator(n, 2)) < 1e-14, "n={n}");
    }
    let open = build_hamiltonian(6, BoundarySpec::default(), ModelForm::Projector).unwrap();
    assert!(commutator_norm(&open, &translation_operator(6, 2)) > 0.1);
}

#[test]
fn hamiltonians_are_symmetric_and_positive() {
    for n in 2..=9 {
        for boundary in [BoundarySpec::default(), BoundarySpec::Periodic] {
            if boundary.is_periodic() && n < 3 {
                continue;
            }
            let h = build_hamiltonian(n, boundary, ModelForm::Projector).unwrap();
            assert_eq!(h.symmetry_defect(), 0.0);
            assert!(dense_eigenvalues(&h)[0] > -1e-12, "n={n} {boundary}");
        }
    }
    for (n, k) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)] {
        let h = build_colored_hamiltonian(n, k).unwrap();
        assert!(h.symmetry_defect() < 1e-15);
        assert!(dense_eigenvalues(&h)[0] > -1e-12);
    }
}

#[test]
fn forms_have_identical_spectra_after_rescaling() {
    let ratios = check_form_equivalence(7, 1e-12).unwrap();
    let bulk = |form| {
        hamiltonian_terms(7, BoundarySpec::default(), form)
            .unwrap()
            .part(TermKind::Bulk)
    };
    let reference = dense_eigenvalues(&bulk(ModelForm::Projector));
    for form in [ModelForm::Pauli, ModelForm::FredkinGate] {
        let h = bulk(form).scaled(1.0 / ratios.for_form(form));
        for (a, b) in dense_eigenvalues(&h).iter().zip(&reference) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn colored_spectrum_is_invariant_under_color_swaps() {
    for (n, k) in [(3, 2), (4, 2), (3, 3)] {
        let h = build_colored_hamiltonian(n, k).unwrap();
        for (a, b) in [(0, 1), (1, k - 1)] {
            assert!(commutator_norm(&h, &color_transposition(n, k, a, b)) < 1e-14);
        }
    }
}

#[test]
fn coordinate_dump_round_trips() {
    let h = build_hamiltonian(4, BoundarySpec::default(), ModelForm::Projector).unwrap();
    let mut buf = Vec::new();
    h.write_coordinate(&mut buf).unwrap();
    let triplets: Vec<(usize, usize, f64)> = String::from_utf8(buf)
        .unwrap()
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(
        Operator::from_triplets(16, triplets).max_abs_diff(&h, 1.0).unwrap(),
        0.0
    );
}

#[test]
fn invalid_sizes_are_rejected() {
    assert!(build_hamiltonian(1, BoundarySpec::default(), ModelForm::Projector).is_err());
    assert!(build_hamiltonian(2, BoundarySpec::Periodic, ModelForm::Projector).is_err());
    assert!(build_bulk_term(4, 6, ModelForm::Projector).is_err());
    assert!(build_colored_hamiltonian(3, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_free_matches_sparse(n in 3usize..=10, periodic in any::<bool>(), seed in any::<u64>()) {
        let boundary = if periodic { BoundarySpec::Periodic } else { BoundarySpec::open(0.7, -1.3) };
        let terms = Arc::new(hamiltonian_terms(n, boundary, ModelForm::Projector).unwrap());
        let sparse = terms.to_sparse();
        let free = terms.matrix_free();
        let v: Vec<f64> = (0..sparse.dim()).map(|i| ((i as u64 ^ seed) % 97) as f64 - 48.0).collect();
        let a = sparse.apply(&v).unwrap();
        let mut b = vec![0.0; v.len()];
        let mut c = vec![0.0; v.len()];
        free.apply_into(&v, &mut b, Execution::Parallel).unwrap();
        free.apply_into(&v, &mut c, Execution::Sequential).unwrap();
        for i in 0..v.len() {
            prop_assert!((a[i] - b[i]).abs() < 1e-12);
            prop_assert_eq!(b[i], c[i]);
        }
    }

    #[test]
    fn bulk_terms_are_projectors(n in 3usize..=8, j in 0usize..6) {
        prop_assume!(j + 3 <= n);
        let p = build_bulk_term(j, n, ModelForm::Projector).unwrap().to_dense();
        prop_assert!((&p * &p - &p).abs().max() < 1e-15);
    }
}
