use fredkin_core::combinatorics::*;
use proptest::prelude::*;

/// Height-path classifier written independently of the library: `a` is the
/// depth of the lowest point, `b` the final height above it.
fn path_class(word: &str) -> (usize, usize) {
    let (mut h, mut low) = (0i64, 0i64);
    for c in word.chars() {
        h += if c == '(' { 1 } else { -1 };
        low = low.min(h);
    }
    ((-low) as usize, (h - low) as usize)
}

fn word_string(n: usize, bits: u64) -> String {
    (0..n)
        .map(|i| if bits >> (n - 1 - i) & 1 == 1 { '(' } else { ')' })
        .collect()
}

fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut rows = vec![vec![1u128]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let row = (0..=i)
            .map(|k| if k == 0 || k == i { 1 } else { prev[k - 1] + prev[k] })
            .collect();
        rows.push(row);
    }
    rows
}

#[test]
fn class_sizes_match_exhaustive_count() {
    for n in 0..=12usize {
        let mut counts = std::collections::HashMap::new();
        for bits in 0..1u64 << n {
            *counts.entry(path_class(&word_string(n, bits))).or_insert(0u128) += 1;
        }
        for a in 0..=n {
            for b in 0..=n {
                let expected = counts.get(&(a, b)).copied().unwrap_or(0);
                assert_eq!(class_size(ClassId::new(a, b), n), expected, "N={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn classify_agrees_with_height_paths() {
    for n in 1..=10usize {
        for bits in 0..1u64 << n {
            let w = SpinWord::new(n, bits);
            let c = classify(&w);
            assert_eq!((c.a, c.b), path_class(&word_string(n, bits)));
        }
    }
}

#[test]
fn catalan_and_binomials() {
    let expected = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430];
    for (n, &c) in expected.iter().enumerate() {
        assert_eq!(catalan(n), c);
    }
    let p = pascal(60);
    for (n, row) in p.iter().enumerate() {
        for (k, &want) in row.iter().take(n + 1).enumerate() {
            assert_eq!(binomial(n as u64, k as u64), want);
        }
    }
}

#[test]
fn log_counts_track_exact_counts() {
    let lf = LogFactorials::new(60);
    for len in 1..=60usize {
        for m in 0..=len {
            let exact = class_size(ClassId::new(0, m), len);
            match lf.ln_class_size(len, m) {
                None => assert_eq!(exact, 0),
                Some(ln) => assert!((ln - (exact as f64).ln()).abs() < 1e-11, "len={len} m={m}"),
            }
        }
    }
}

#[test]
fn colored_dyck_counts() {
    for n in 1..=4usize {
        for k in 1..=3usize {
            let words = properly_colored_dyck_words(n, k).unwrap();
            assert_eq!(words.len() as u128, (k as u128).pow(n as u32) * catalan(n));
            assert!(words.iter().all(is_properly_colored));
        }
    }
}

#[test]
fn enumeration_honors_the_cap() {
    assert!(matches!(
        enumerate_class(ClassId::DYCK, 62),
        Err(fredkin_core::Error::CapExceeded { .. })
    ));
}

fn word_strategy() -> impl Strategy<Value = SpinWord> {
    (1usize..=20)
        .prop_flat_map(|n| (Just(n), 0u64..1u64 << n))
        .prop_map(|(n, bits)| SpinWord::new(n, bits))
}

proptest! {
    #[test]
    fn classes_partition_the_basis(n in 0usize..=16) {
        let mut total = 0u128;
        for a in 0..=n {
            for b in 0..=n - a {
                total += class_size(ClassId::new(a, b), n);
            }
        }
        prop_assert_eq!(total, 1u128 << n);
    }

    #[test]
    fn standard_form_round_trips(n in 1usize..=20, a in 0usize..=20, b in 0usize..=20) {
        let class = ClassId::new(a, b);
        if class.is_nonempty(n) {
            let w = standard_form(class, n).unwrap();
            prop_assert_eq!(classify(&w), class);
        } else {
            prop_assert!(standard_form(class, n).is_err());
        }
    }

    #[test]
    fn moves_are_symmetric_and_keep_the_class(w in word_strategy(), periodic in any::<bool>()) {
        for v in fredkin_neighbors(&w, periodic) {
            prop_assert!(fredkin_neighbors(&v, periodic).contains(&w));
            prop_assert_eq!(v.up_count(), w.up_count());
            if !periodic {
                prop_assert_eq!(classify(&v), classify(&w));
            }
        }
    }

    #[test]
    fn flip_is_a_bijection_onto_c0(w in word_strategy()) {
        let c = classify(&w);
        let f = flip_bijection(&w);
        prop_assert_eq!(classify(&f), ClassId::new(0, c.a + c.b));
        prop_assert_eq!(unflip_bijection(&f, c.a), w);
    }

    #[test]
    fn zero_magnetization_classes_sum_to_central_binomial(n in 1usize..=30) {
        let total: u128 = (0..=n).map(|m| class_size(ClassId::new(m, m), 2 * n)).sum();
        prop_assert_eq!(total, binomial(2 * n as u64, n as u64));
    }

    #[test]
    fn colored_moves_are_symmetric(n in 3usize..=6, k in 1usize..=3, seed in any::<u64>()) {
        let dim = (2 * k).pow(n as u32);
        let w = ColoredSpinWord::from_index((seed % dim as u64) as usize, n, k);
        for v in colored_fredkin_neighbors(&w) {
            prop_assert!(colored_fredkin_neighbors(&v).contains(&w));
            prop_assert_eq!(classify(&v.uncolored()), classify(&w.uncolored()));
        }
    }
}
