use std::fmt::Write as _;

use fredkin_core::combinatorics::{ClassId, SpinWord};
use fredkin_core::dump::{format_significant, write_orbits, write_state, write_sweep_csv};
use fredkin_core::entanglement::{entropy_sweep, SweepPoint};
use fredkin_core::model::*;
use fredkin_core::orbits::{orbit_partition, phase_diagram, verify_orbit_theorem};
use fredkin_core::solver::{dense_eigenvalues, gap_report, lowest_eigenpairs_with, SolverOptions};
use fredkin_core::states::*;
use fredkin_core::{Caps, Execution, Operator};
use serde_json::{json, Value};

use crate::output::{num, Report};
use crate::{
    Cli, Command, EntropyArgs, Failure, MagnonArgs, MpsArgs, OrbitArgs, PhaseArgs, SpectrumArgs, StateArgs, StateKind,
};

const EIGEN_TOL: f64 = 1e-10;

pub fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let opts = SolverOptions::default().with_seed(cli.common.seed);
    match &cli.command {
        Command::Spectrum(a) => spectrum(a, &opts),
        Command::Entropy(a) => entropy(a),
        Command::Orbits(a) => orbits(a),
        Command::Mps(a) => mps(a),
        Command::Magnon(a) => magnon(a),
        Command::Phase(a) => phase(a),
        Command::State(a) => state(a),
    }
}

fn g(x: f64) -> String {
    format_significant(x, 17)
}

fn spectrum_operator(a: &SpectrumArgs) -> Result<Operator, Failure> {
    if a.colors == 0 {
        return Err(Failure::Config("--colors must be at least 1".into()));
    }
    if a.colors == 1 {
        return Ok(build_hamiltonian(a.sites, a.boundary, a.form)?);
    }
    if a.form != ModelForm::Projector {
        return Err(Failure::Config("the colored chain only has the projector form".into()));
    }
    match a.boundary {
        BoundarySpec::Periodic => {
            let parts = ColoredParts {
                boundary: false,
                periodic: true,
                ..ColoredParts::FULL
            };
            Ok(colored_terms(a.sites, a.colors, parts)?.to_sparse())
        }
        b if b == BoundarySpec::default() => Ok(build_colored_hamiltonian(a.sites, a.colors)?),
        _ => Err(Failure::Config(
            "the colored chain supports `open` or `periodic` boundaries".into(),
        )),
    }
}

fn spectrum(a: &SpectrumArgs, opts: &SolverOptions) -> Result<Report, Failure> {
    if a.count == 0 {
        return Err(Failure::Config("--count must be at least 1".into()));
    }
    if a.sites < 2 {
        return Err(Failure::Config(format!("need at least 2 sites, got {}", a.sites)));
    }
    let op = spectrum_operator(a)?;
    let result = lowest_eigenpairs_with(&op, a.count, EIGEN_TOL, opts)?;
    let gap = gap_report(&op, opts)?;
    let mut r = Report::default();
    r.field("n", a.sites);
    r.field("boundary", a.boundary.to_string());
    r.field("form", a.form.to_string());
    r.field("colors", a.colors);
    r.field(
        "eigenvalues",
        result.eigenvalues.iter().map(|&x| num(x)).collect::<Vec<_>>(),
    );
    r.field(
        "residuals",
        result.residual_norms.iter().map(|&x| num(x)).collect::<Vec<_>>(),
    );
    r.field("ground_energy", num(gap.ground_energy));
    r.field("degeneracy", gap.degeneracy);
    r.field("gap", num(gap.gap()));
    r.notes.push(format!(
        "ground_energy={} degeneracy={} gap={}",
        g(gap.ground_energy),
        gap.degeneracy,
        g(gap.gap())
    ));
    r.table.push_str("index,eigenvalue,residual\n");
    for (i, (e, res)) in result.eigenvalues.iter().zip(&result.residual_norms).enumerate() {
        writeln!(r.table, "{i},{},{}", g(*e), g(*res)).unwrap();
    }
    Ok(r)
}

fn entropy(a: &EntropyArgs) -> Result<Report, Failure> {
    if a.colors == 0 {
        return Err(Failure::Config("--colors must be at least 1".into()));
    }
    if a.sites < 2 {
        return Err(Failure::Config(format!("need at least 2 sites, got {}", a.sites)));
    }
    let cuts: Vec<usize> = match a.cut {
        Some(c) => vec![c],
        None => (1..a.sites).collect(),
    };
    let points: Vec<SweepPoint> = cuts
        .iter()
        .map(|&cut| SweepPoint {
            n_sites: a.sites,
            cut,
            n_colors: a.colors,
        })
        .collect();
    let rows = entropy_sweep(&points, a.mode, Execution::Parallel)?;
    let mut r = Report::default();
    r.field("mode", a.mode.to_string());
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            json!({
                "N": row.point.n_sites,
                "L": row.point.cut,
                "k": row.point.n_colors,
                "S_exact": row.s_exact.map(num),
                "S_asymptotic": num(row.s_asymptotic),
                "rank": row.rank.map(|x| x.to_string()),
                "height_expectation": row.height_expectation.map(num),
            })
        })
        .collect();
    r.field("rows", json_rows);
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, &rows)?;
    r.table = String::from_utf8(buf).expect("ascii csv");
    Ok(r)
}

fn orbits(a: &OrbitArgs) -> Result<Report, Failure> {
    let p = orbit_partition(a.sites, a.periodic, a.colors)?;
    let mut r = Report::default();
    r.field("n", a.sites);
    r.field("periodic", a.periodic);
    r.field("colors", a.colors.unwrap_or(1));
    r.field("orbit_count", p.orbit_count);
    let listing: Vec<Value> = (0..p.orbit_count)
        .map(|o| json!({ "id": o, "size": p.sizes[o], "representative": p.word(p.representatives[o]) }))
        .collect();
    r.field("orbits", listing);
    r.notes.push(format!("orbit_count={}", p.orbit_count));
    if a.verify {
        let report = verify_orbit_theorem(a.sites, a.periodic, a.colors)?;
        r.field("kernel_dim", report.kernel_dim);
        r.field("max_orbit_energy", num(report.max_orbit_energy));
        r.notes.push(format!(
            "verified: kernel_dim={} max_orbit_energy={}",
            report.kernel_dim,
            g(report.max_orbit_energy)
        ));
    }
    r.table.push_str("orbit_id\tsize\trepresentative\n");
    let mut buf = Vec::new();
    write_orbits(&mut buf, &p)?;
    r.table.push_str(std::str::from_utf8(&buf).expect("ascii words"));
    Ok(r)
}

/// Dyck indicator with heights capped below `bond_dim`, by walking the word.
fn bounded_dyck(w: &SpinWord, bond_dim: usize) -> bool {
    let mut h = 0i64;
    for up in w.steps() {
        h += if up { 1 } else { -1 };
        if h < 0 || h >= bond_dim as i64 {
            return false;
        }
    }
    h == 0
}

fn mps(a: &MpsArgs) -> Result<Report, Failure> {
    if a.sites == 0 || !a.sites.is_multiple_of(2) {
        return Err(Failure::Config(format!(
            "the Dyck state needs a positive even number of sites, got {}",
            a.sites
        )));
    }
    let bond_dim = a.bond_dim.unwrap_or(a.sites / 2 + 1);
    if bond_dim == 0 {
        return Err(Failure::Config("--bond-dim must be at least 1".into()));
    }
    let rep = mps_matrices(a.sites, bond_dim);
    let t = truncation_report(a.sites, bond_dim);
    let mut r = Report::default();
    r.field("n", a.sites);
    r.field("bond_dim", bond_dim);
    r.field("exact", bond_dim > a.sites / 2);
    r.field("fidelity", num(t.fidelity));
    r.field("max_amplitude_error", num(t.max_amplitude_error));
    r.table.push_str("N,bond_dim,fidelity,max_amplitude_error\n");
    writeln!(
        r.table,
        "{},{bond_dim},{},{}",
        a.sites,
        g(t.fidelity),
        g(t.max_amplitude_error)
    )
    .unwrap();
    if a.verify {
        Caps::global().check_states(2f64.powi(a.sites as i32))?;
        let mut mismatches = 0u64;
        for bits in 0..1u64 << a.sites {
            let w = SpinWord::new(a.sites, bits);
            let expected = if bounded_dyck(&w, bond_dim) { 1.0 } else { 0.0 };
            if mps_amplitude(&rep, &w) != expected {
                mismatches += 1;
            }
        }
        r.field("mismatches", mismatches);
        r.notes
            .push(format!("verified {} words, {mismatches} mismatches", 1u64 << a.sites));
        if mismatches > 0 {
            r.verification_failure = Some(format!("{mismatches} MPS amplitudes differ from the Dyck indicator"));
        }
    }
    Ok(r)
}

fn magnon(a: &MagnonArgs) -> Result<Report, Failure> {
    let sector = magnon_sector(a.sites)?;
    let restricted = magnon_restricted_hamiltonian(a.sites)?;
    let xxx = xxx_one_magnon(a.sites - 1)?;
    let fredkin: Vec<f64> = dense_eigenvalues(&restricted)
        .iter()
        .map(|x| x / MAGNON_NORMALIZATION)
        .collect();
    let heisenberg = dense_eigenvalues(&xxx);
    let diff = fredkin
        .iter()
        .zip(&heisenberg)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let full = build_hamiltonian(a.sites, BoundarySpec::default(), ModelForm::Projector)?;
    let closure = sector_closure_defect(&sector, &full)?;
    let mut r = Report::default();
    r.field("n", a.sites);
    r.field("class", json!({ "a": sector.class.a, "b": sector.class.b }));
    r.field("normalization", MAGNON_NORMALIZATION);
    r.field("basis", sector.basis.iter().map(|w| w.to_string()).collect::<Vec<_>>());
    r.field(
        "restricted_eigenvalues_scaled",
        fredkin.iter().map(|&x| num(x)).collect::<Vec<_>>(),
    );
    r.field(
        "xxx_eigenvalues",
        heisenberg.iter().map(|&x| num(x)).collect::<Vec<_>>(),
    );
    r.field("max_spectral_difference", num(diff));
    r.field("closure_defect", num(closure));
    r.notes.push(format!(
        "class=({},{}) normalization={MAGNON_NORMALIZATION} max_spectral_difference={} closure_defect={}",
        sector.class.a,
        sector.class.b,
        g(diff),
        g(closure)
    ));
    r.table
        .push_str("index,word,restricted_eigenvalue_scaled,xxx_eigenvalue\n");
    for (i, w) in sector.basis.iter().enumerate() {
        writeln!(r.table, "{i},{w},{},{}", g(fredkin[i]), g(heisenberg[i])).unwrap();
    }
    if a.verify && (diff > 1e-9 || closure > 1e-12) {
        r.verification_failure = Some(format!("spectral difference {diff:e}, closure defect {closure:e}"));
    }
    Ok(r)
}

fn class_list(classes: &[ClassId]) -> String {
    classes
        .iter()
        .map(|c| format!("{}:{}", c.a, c.b))
        .collect::<Vec<_>>()
        .join(";")
}

fn phase(a: &PhaseArgs) -> Result<Report, Failure> {
    let d = phase_diagram(a.sites)?;
    let mut r = Report::default();
    r.field("n", a.sites);
    let mut quadrants = Vec::new();
    r.table
        .push_str("sign_alpha,sign_beta,alpha,beta,ground_energy,degeneracy,ground_classes\n");
    for q in &d.quadrants {
        let samples: Vec<Value> = q
            .samples
            .iter()
            .map(|s| {
                writeln!(
                    r.table,
                    "{},{},{},{},{},{},{}",
                    q.sign_alpha,
                    q.sign_beta,
                    s.alpha,
                    s.beta,
                    g(s.ground_energy),
                    s.degeneracy,
                    class_list(&s.ground_classes)
                )
                .unwrap();
                json!({
                    "alpha": s.alpha,
                    "beta": s.beta,
                    "ground_energy": num(s.ground_energy),
                    "degeneracy": s.degeneracy,
                    "ground_classes": s.ground_classes.iter().map(|c| [c.a, c.b]).collect::<Vec<_>>(),
                })
            })
            .collect();
        r.notes.push(format!(
            "quadrant ({:+},{:+}): degeneracy {} consistent={} classes_span={}",
            q.sign_alpha,
            q.sign_beta,
            q.degeneracy(),
            q.is_consistent(),
            q.classes_span()
        ));
        quadrants.push(json!({
            "sign_alpha": q.sign_alpha,
            "sign_beta": q.sign_beta,
            "degeneracy": q.degeneracy(),
            "consistent": q.is_consistent(),
            "classes_span": q.classes_span(),
            "samples": samples,
        }));
    }
    r.field("quadrants", quadrants);
    Ok(r)
}

fn even_half(sites: usize) -> Result<usize, Failure> {
    if sites == 0 || !sites.is_multiple_of(2) {
        return Err(Failure::Config(format!(
            "this state needs a positive even number of sites, got {}",
            sites
        )));
    }
    Ok(sites / 2)
}

fn state(a: &StateArgs) -> Result<Report, Failure> {
    let (state, local_colors) = match a.kind {
        StateKind::Dyck => (dyck_state(even_half(a.sites)?)?, None),
        StateKind::Anomalous => (anomalous_state(even_half(a.sites)?)?, None),
        StateKind::Colored => (colored_dyck_state(even_half(a.sites)?, a.colors)?, Some(a.colors)),
        StateKind::Class => {
            let (x, y) = a
                .class
                .ok_or_else(|| Failure::Config("--class a,b is required for class states".into()))?;
            (class_state(ClassId::new(x, y), a.sites)?, None)
        }
    };
    let n = a.sites;
    let word = |i: usize| match local_colors {
        None => SpinWord::new(n, i as u64).to_string(),
        Some(k) => fredkin_core::combinatorics::ColoredSpinWord::from_index(i, n, k).to_string(),
    };
    let mut r = Report::default();
    r.field("n", n);
    r.field("terms", state.support().count());
    r.field(
        "amplitudes",
        state
            .support()
            .map(|(i, x)| json!({ "word": word(i), "amplitude": num(x) }))
            .collect::<Vec<_>>(),
    );
    let mut buf = Vec::new();
    write_state(&mut buf, &state, word)?;
    r.table = String::from_utf8(buf).expect("ascii words");
    Ok(r)
}
