//! File emission and ingestion: CSV in the two documented layouts, JSON
//! dumps, and 16-bit PGM with a metadata sidecar.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use bjq_core::{Grid1D, PhaseFunction, PhaseGrid, SampledSignal};
use num_complex::Complex64;
use serde_json::json;

use crate::Failure;

/// Writer for `--out`, or stdout when the flag is absent.
pub fn out_writer(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::Numeric(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_failed(e: io::Error) -> Failure {
    Failure::Numeric(format!("write failed: {e}"))
}

/// Row-major dump, x outer, full double precision.
pub fn write_phase_csv(f: &PhaseFunction, w: &mut dyn Write) -> Result<(), Failure> {
    let pg = f.grid();
    writeln!(w, "x,p,re,im").map_err(write_failed)?;
    for j in 0..pg.n() {
        for l in 0..pg.n() {
            let v = f.at(j, l);
            writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e}", pg.x(j), pg.p(l), v.re, v.im)
                .map_err(write_failed)?;
        }
    }
    Ok(())
}

pub fn write_phase_json(f: &PhaseFunction, w: &mut dyn Write) -> Result<(), Failure> {
    let pg = f.grid();
    let values: Vec<[f64; 2]> = f.values().iter().map(|v| [v.re, v.im]).collect();
    let doc = json!({
        "n": pg.n(),
        "half_length": pg.space().half_length(),
        "hbar": pg.hbar(),
        "layout": "row-major, x outer",
        "values": values,
    });
    writeln!(w, "{doc:#}").map_err(write_failed)
}

/// 16-bit binary PGM of the real part, min-max scaled; rows run from the
/// top of the momentum axis down so the image matches the usual plot
/// orientation. The value range goes into a `.json` sidecar next to the
/// image since PGM itself cannot carry it.
pub fn write_phase_pgm(f: &PhaseFunction, path: &Path) -> Result<(), Failure> {
    let pg = f.grid();
    let n = pg.n();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in f.values() {
        lo = lo.min(v.re);
        hi = hi.max(v.re);
    }
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut body = Vec::with_capacity(2 * n * n);
    for r in 0..n {
        let l = n - 1 - r;
        for j in 0..n {
            let t = ((f.at(j, l).re - lo) / span).clamp(0.0, 1.0);
            let px = (t * 65535.0).round() as u16;
            body.extend_from_slice(&px.to_be_bytes());
        }
    }
    let mut w = BufWriter::new(File::create(path).map_err(|e| {
        Failure::Numeric(format!("cannot create {}: {e}", path.display()))
    })?);
    write!(w, "P5\n{n} {n}\n65535\n").map_err(write_failed)?;
    w.write_all(&body).map_err(write_failed)?;
    w.flush().map_err(write_failed)?;

    let sidecar_path: PathBuf = {
        let mut s = path.as_os_str().to_os_string();
        s.push(".json");
        s.into()
    };
    let sidecar = json!({
        "component": "re",
        "min": lo,
        "max": hi,
        "maxval": 65535,
        "n": n,
        "half_length": pg.space().half_length(),
        "hbar": pg.hbar(),
    });
    fs::write(&sidecar_path, format!("{sidecar:#}\n")).map_err(|e| {
        Failure::Numeric(format!("cannot write {}: {e}", sidecar_path.display()))
    })
}

pub fn write_report(doc: &serde_json::Value, out: Option<&Path>) -> Result<(), Failure> {
    let mut w = out_writer(out)?;
    writeln!(w, "{doc:#}").map_err(write_failed)
}

/// One sample per row, same precision as the phase dump.
pub fn write_signal_csv(psi: &SampledSignal, w: &mut dyn Write) -> Result<(), Failure> {
    let g = psi.grid();
    writeln!(w, "x,re,im").map_err(write_failed)?;
    for (j, v) in psi.values().iter().enumerate() {
        writeln!(w, "{:.16e},{:.16e},{:.16e}", g.x(j), v.re, v.im).map_err(write_failed)?;
    }
    Ok(())
}

pub fn write_signal_json(psi: &SampledSignal, w: &mut dyn Write) -> Result<(), Failure> {
    let g = psi.grid();
    let values: Vec<[f64; 2]> = psi.values().iter().map(|v| [v.re, v.im]).collect();
    let doc = json!({
        "n": g.n(),
        "half_length": g.half_length(),
        "hbar": g.hbar(),
        "values": values,
    });
    writeln!(w, "{doc:#}").map_err(write_failed)
}

struct CsvRows {
    path: String,
    rows: Vec<Vec<f64>>,
}

fn read_csv(path: &Path, columns: usize) -> Result<CsvRows, Failure> {
    let body = fs::read_to_string(path).map_err(|e| {
        Failure::Validation(format!("cannot read {}: {e}", path.display()))
    })?;
    let mut rows = Vec::new();
    for (idx, raw) in body.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 && line.chars().next().is_some_and(|c| c.is_alphabetic()) {
            continue; // header
        }
        let fields: Result<Vec<f64>, _> =
            line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        let fields = fields.map_err(|_| {
            Failure::Validation(format!("{}:{}: bad row {raw:?}", path.display(), idx + 1))
        })?;
        if fields.len() != columns {
            return Err(Failure::Validation(format!(
                "{}:{}: expected {columns} columns, got {}",
                path.display(),
                idx + 1,
                fields.len()
            )));
        }
        rows.push(fields);
    }
    Ok(CsvRows { path: path.display().to_string(), rows })
}

fn check_axis(path: &str, row: usize, name: &str, got: f64, want: f64) -> Result<(), Failure> {
    if (got - want).abs() > 1e-9 * want.abs().max(1.0) {
        return Err(Failure::Validation(format!(
            "{path}: row {row}: {name} = {got} does not sit on the grid (expected {want}); \
             regenerate the file for this --n-points/--half-length"
        )));
    }
    Ok(())
}

/// `x,re,im` rows that must line up with the active grid sample for sample.
pub fn read_signal_csv(path: &Path, grid: Grid1D) -> Result<SampledSignal, Failure> {
    let csv = read_csv(path, 3)?;
    if csv.rows.len() != grid.n() {
        return Err(Failure::Validation(format!(
            "{}: {} samples but the grid has {}",
            csv.path,
            csv.rows.len(),
            grid.n()
        )));
    }
    let mut values = Vec::with_capacity(grid.n());
    for (j, row) in csv.rows.iter().enumerate() {
        check_axis(&csv.path, j + 1, "x", row[0], grid.x(j))?;
        values.push(Complex64::new(row[1], row[2]));
    }
    Ok(SampledSignal::from_values(grid, values)?)
}

/// `x,p,re,im` rows in the row-major x-outer layout [`write_phase_csv`]
/// produces.
pub fn read_phase_csv(path: &Path, pg: PhaseGrid) -> Result<PhaseFunction, Failure> {
    let csv = read_csv(path, 4)?;
    let n = pg.n();
    if csv.rows.len() != n * n {
        return Err(Failure::Validation(format!(
            "{}: {} samples but the phase grid has {}",
            csv.path,
            csv.rows.len(),
            n * n
        )));
    }
    let mut values = Vec::with_capacity(n * n);
    for (k, row) in csv.rows.iter().enumerate() {
        let (j, l) = (k / n, k % n);
        check_axis(&csv.path, k + 1, "x", row[0], pg.x(j))?;
        check_axis(&csv.path, k + 1, "p", row[1], pg.p(l))?;
        values.push(Complex64::new(row[2], row[3]));
    }
    Ok(PhaseFunction::from_values(pg, values)?)
}
