//! Plain-text output formats shared by the library and the command line.

use std::io::{self, Write};

use crate::entanglement::SweepRow;
use crate::orbits::OrbitPartition;
use crate::solver::StateVector;

/// `x` with `digits` significant digits, shortest of fixed or scientific
/// notation, trailing zeros removed (like C's `%.{digits}g`).
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `word<TAB>amplitude` for each nonzero amplitude, in basis order, 17
/// significant digits.
pub fn write_state<W: Write>(mut out: W, state: &StateVector, word: impl Fn(usize) -> String) -> io::Result<()> {
    for (i, a) in state.support() {
        writeln!(out, "{}\t{}", word(i), format_significant(a, 17))?;
    }
    Ok(())
}

/// `orbit_id<TAB>size<TAB>representative`, ordered by representative.
pub fn write_orbits<W: Write>(mut out: W, partition: &OrbitPartition) -> io::Result<()> {
    for (o, (&rep, &size)) in partition.representatives.iter().zip(&partition.sizes).enumerate() {
        writeln!(out, "{o}\t{size}\t{}", partition.word(rep))?;
    }
    Ok(())
}

pub const SWEEP_HEADER: &str = "N,L,k,S_exact,S_asymptotic,rank,height_expectation";

/// Sweep rows as CSV with 12 significant digits; absent values are empty.
pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    let opt = |x: Option<f64>| x.map(|v| format_significant(v, 12)).unwrap_or_default();
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.point.n_sites,
            r.point.cut,
            r.point.n_colors,
            opt(r.s_exact),
            format_significant(r.s_asymptotic, 12),
            r.rank.map(|x| x.to_string()).unwrap_or_default(),
            opt(r.height_expectation)
        )?;
    }
    Ok(())
}
