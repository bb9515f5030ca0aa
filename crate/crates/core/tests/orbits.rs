use std::collections::HashMap;

use fredkin_core::combinatorics::{classify, SpinWord};
use fredkin_core::dump::write_orbits;
use fredkin_core::orbits::*;

#[test]
fn open_orbits_are_the_classes() {
    for n in 1..=12 {
        let p = orbit_partition(n, false, None).unwrap();
        let mut class_of_orbit = HashMap::new();
        let mut orbit_of_class = HashMap::new();
        for i in 0..p.n_states {
            let c = classify(&SpinWord::new(n, i as u64));
            let o = p.orbit_id[i];
            assert_eq!(*class_of_orbit.entry(o).or_insert(c), c);
            assert_eq!(*orbit_of_class.entry(c).or_insert(o), o);
        }
        assert_eq!(class_of_orbit.len(), p.orbit_count);
    }
}

#[test]
fn periodic_orbits_by_magnetization() {
    for n in 3..=12 {
        let p = orbit_partition(n, true, None).unwrap();
        let mut per_z: HashMap<i64, std::collections::HashSet<u32>> = HashMap::new();
        for i in 0..p.n_states {
            per_z
                .entry(SpinWord::new(n, i as u64).magnetization())
                .or_default()
                .insert(p.orbit_id[i]);
        }
        for (z, orbits) in &per_z {
            let expected = if *z == 0 && n >= 4 { 2 } else { 1 };
            assert_eq!(orbits.len(), expected, "n={n} z={z}");
        }
        // one orbit per magnetization value plus the split Z = 0 sector
        let expected_total = if n % 2 == 0 { n + 2 } else { n + 1 };
        assert_eq!(p.orbit_count, expected_total, "n={n}");
    }
}

#[test]
fn zero_magnetization_orbits_follow_edge_crossing_parity() {
    for n in (4..=12).step_by(2) {
        let p = orbit_partition(n, true, None).unwrap();
        let mut orbit_of_parity = HashMap::new();
        for i in 0..p.n_states {
            let w = SpinWord::new(n, i as u64);
            if let Some(crossings) = edge_crossings(&w) {
                let o = p.orbit_id[i];
                assert_eq!(*orbit_of_parity.entry(crossings % 2).or_insert(o), o, "n={n} {w}");
                assert_eq!(crossings, classify(&w).a);
            }
        }
        assert_eq!(orbit_of_parity.len(), 2);
    }
}

#[test]
fn theorem_holds_for_every_small_case() {
    for n in 2..=12 {
        let r = verify_orbit_theorem(n, false, None).unwrap();
        assert_eq!(r.orbit_count, r.kernel_dim);
    }
    for n in 3..=12 {
        verify_orbit_theorem(n, true, None).unwrap();
    }
    for (n, k) in [(2, 2), (3, 2), (4, 2), (5, 2), (6, 2), (3, 3), (4, 3)] {
        verify_orbit_theorem(n, false, Some(k)).unwrap();
    }
    for (n, k) in [(3, 2), (4, 2), (5, 2)] {
        verify_orbit_theorem(n, true, Some(k)).unwrap();
    }
}

#[test]
fn colored_counts() {
    assert_eq!(orbit_partition(4, false, Some(2)).unwrap().orbit_count, 138);
    assert_eq!(verify_orbit_theorem(4, false, Some(2)).unwrap().kernel_dim, 138);
}

#[test]
fn orbit_states_are_orthogonal_and_annihilated() {
    let p = orbit_partition(7, true, None).unwrap();
    let h = bulk_operator(7, true, None).unwrap();
    let members = p.members();
    for m in &members {
        let mut u = vec![0.0; p.n_states];
        for &i in m {
            u[i] = 1.0 / (m.len() as f64).sqrt();
        }
        assert!(h.apply(&u).unwrap().iter().all(|x| x.abs() < 1e-10));
    }
    for (a, ma) in members.iter().enumerate() {
        for mb in &members[a + 1..] {
            assert!(ma.iter().all(|i| !mb.contains(i)));
        }
    }
}

#[test]
fn orbit_dump() {
    let p = orbit_partition(4, false, None).unwrap();
    let mut buf = Vec::new();
    write_orbits(&mut buf, &p).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "0\t1\t))))");
    let total: usize = lines
        .iter()
        .map(|l| l.split('\t').nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 16);
}

#[test]
fn phase_diagram_quadrants() {
    use fredkin_core::combinatorics::ClassId;
    for n in [4usize, 6] {
        let d = phase_diagram(n).unwrap();
        for q in &d.quadrants {
            assert!(q.is_consistent());
            assert!(q.classes_span());
        }
        assert_eq!(d.quadrant(1, 1).ground_classes(), &[ClassId::DYCK]);
        assert_eq!(d.quadrant(1, -1).ground_classes(), &[ClassId::new(0, n)]);
        assert_eq!(d.quadrant(-1, 1).ground_classes(), &[ClassId::new(n, 0)]);
        let walls: Vec<ClassId> = (1..n).map(|a| ClassId::new(a, n - a)).collect();
        let mut found = d.quadrant(-1, -1).ground_classes().to_vec();
        found.sort();
        let mut walls_sorted = walls.clone();
        walls_sorted.sort();
        assert_eq!(found, walls_sorted);
        assert_eq!(d.quadrant(-1, -1).degeneracy(), n - 1);
    }
}
