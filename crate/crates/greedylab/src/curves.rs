//! CSV curve emission: threshold constants across bases, levels, and
//! dimensions in a fixed, rerun-stable format.
//!
//! The column layout is `basis_id,dim,quantity,a,value,mode,m`, with an
//! `envelope` column appended on request. Bases appear in the order given,
//! levels in ascending order, and one row with an empty `a` stands for each
//! level-free quantity. Values print with 12 significant digits, so two
//! runs over the same inputs emit byte-identical output.

use crate::catalog::CatalogEntry;
use crate::error::Result;
use crate::estimator::{estimate, estimate_gamma, Quantity, SearchOpts};
use crate::grid::{GridSpec, Level};
use crate::report::sig12;
use std::io::Write;

/// What to tabulate.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    /// Quantities, emitted in the given order.
    pub quantities: Vec<Quantity>,
    /// Levels for the leveled quantities (deduplicated, sorted ascending).
    pub levels: Vec<Level>,
    /// Append the Γ̂-envelope column (`(Γ̂+1)/a^Γ̂ − 1`, φ rows only).
    pub envelope: bool,
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes the curve table for the given catalog entries.
pub fn emit_curves(
    entries: &[&CatalogEntry],
    grid: &GridSpec,
    spec: &CurveSpec,
    opts: &SearchOpts,
    out: &mut impl Write,
) -> Result<()> {
    let mut levels = spec.levels.clone();
    levels.sort();
    levels.dedup();

    if spec.envelope {
        writeln!(out, "basis_id,dim,quantity,a,value,mode,m,envelope")?;
    } else {
        writeln!(out, "basis_id,dim,quantity,a,value,mode,m")?;
    }

    for entry in entries {
        let basis = entry.build()?;
        // The envelope needs Γ̂ once per basis, and only when φ appears.
        let gamma = if spec.envelope && spec.quantities.contains(&Quantity::Phi) {
            Some(estimate_gamma(&basis, grid, opts)?.value)
        } else {
            None
        };
        for &q in &spec.quantities {
            if q.is_leveled() {
                for a in &levels {
                    let e = estimate(&basis, q, Some(a), grid, opts)?;
                    let envelope_cell = match (q, gamma) {
                        (Quantity::Phi, Some(g)) => {
                            sig12((g + 1.0) / a.as_f64().powf(g) - 1.0)
                        }
                        _ => String::new(),
                    };
                    write_row(out, entry, q, Some(a), e.value, e.mode.label(), grid.m(), spec.envelope, &envelope_cell)?;
                }
            } else {
                let e = estimate(&basis, q, None, grid, opts)?;
                write_row(out, entry, q, None, e.value, e.mode.label(), grid.m(), spec.envelope, "")?;
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn write_row(
    out: &mut impl Write,
    entry: &CatalogEntry,
    q: Quantity,
    a: Option<&Level>,
    value: f64,
    mode: &str,
    m: i64,
    envelope: bool,
    envelope_cell: &str,
) -> Result<()> {
    let a_cell = a.map(|l| l.to_string()).unwrap_or_default();
    if envelope {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            csv_field(&entry.id),
            entry.dim,
            q.token(),
            a_cell,
            sig12(value),
            mode,
            m,
            envelope_cell
        )?;
    } else {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            csv_field(&entry.id),
            entry.dim,
            q.token(),
            a_cell,
            sig12(value),
            mode,
            m
        )?;
    }
    Ok(())
}

/// Convenience wrapper collecting the CSV into a string.
pub fn curves_to_string(
    entries: &[&CatalogEntry],
    grid: &GridSpec,
    spec: &CurveSpec,
    opts: &SearchOpts,
) -> Result<String> {
    let mut buf = Vec::new();
    emit_curves(entries, grid, spec, opts, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin, find};

    #[test]
    fn header_and_row_shape() {
        let entries = builtin();
        let e = find(&entries, "l1-2").unwrap();
        let grid = GridSpec::new(1).unwrap();
        let spec = CurveSpec {
            quantities: vec![Quantity::Phi, Quantity::Gamma],
            levels: vec![Level::one()],
            envelope: false,
        };
        let csv = curves_to_string(&[e], &grid, &spec, &SearchOpts::default()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "basis_id,dim,quantity,a,value,mode,m");
        assert_eq!(lines[1], "l1-2,2,phi,1,1,exhaustive,1");
        // Level-free quantity: one row, empty level cell.
        assert_eq!(lines[2], "l1-2,2,gamma,,1,exhaustive,1");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn envelope_column_appears_on_phi_rows_only() {
        let entries = builtin();
        let e = find(&entries, "summing-2").unwrap();
        let grid = GridSpec::new(2).unwrap();
        let spec = CurveSpec {
            quantities: vec![Quantity::Phi, Quantity::Theta],
            levels: vec![Level::new(1, 2).unwrap()],
            envelope: true,
        };
        let csv = curves_to_string(&[e], &grid, &spec, &SearchOpts::default()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "basis_id,dim,quantity,a,value,mode,m,envelope");
        let phi_row: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(phi_row[2], "phi");
        assert!(!phi_row[7].is_empty(), "phi rows carry the envelope");
        let theta_row: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(theta_row[2], "theta");
        assert!(theta_row[7].is_empty(), "other rows leave it blank");
    }

    #[test]
    fn levels_ascend_and_reruns_are_byte_identical() {
        let entries = builtin();
        let e = find(&entries, "summing-3").unwrap();
        let grid = GridSpec::new(2).unwrap();
        let spec = CurveSpec {
            quantities: vec![Quantity::Theta],
            levels: vec![Level::one(), Level::new(1, 2).unwrap()],
            envelope: false,
        };
        let once = curves_to_string(&[e], &grid, &spec, &SearchOpts::default()).unwrap();
        let twice = curves_to_string(&[e], &grid, &spec, &SearchOpts::default()).unwrap();
        assert_eq!(once, twice);
        let lines: Vec<&str> = once.lines().collect();
        assert!(lines[1].contains(",1/2,"));
        assert!(lines[2].contains(",1,"));
    }

    #[test]
    fn summing_dimension_growth_is_monotone() {
        let entries = builtin();
        let ids = ["summing-2", "summing-3", "summing-4"];
        let selected: Vec<&CatalogEntry> =
            ids.iter().map(|id| find(&entries, id).unwrap()).collect();
        let grid = GridSpec::new(2).unwrap();
        let spec = CurveSpec {
            quantities: vec![Quantity::Phi],
            levels: vec![Level::one()],
            envelope: false,
        };
        let csv = curves_to_string(&selected, &grid, &spec, &SearchOpts::default()).unwrap();
        let values: Vec<f64> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
            .collect();
        assert_eq!(values.len(), 3);
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{values:?}");
    }
}
