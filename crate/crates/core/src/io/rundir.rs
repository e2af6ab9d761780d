//! Run-directory emission: plain-text metadata, CSV curves, and optional
//! binary field snapshots.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::solver::SolveReport;
use crate::spectral::Field;

/// Paths of everything written for one run.
#[derive(Debug, Clone)]
pub struct RunDir {
    pub root: PathBuf,
    pub meta: PathBuf,
    pub inf_curve: PathBuf,
    pub norms: PathBuf,
    pub picard: PathBuf,
    pub snapshots: Option<PathBuf>,
}

/// Writes the run directory. `meta` is the full key=value echo of the
/// configuration plus any derived constants the caller wants recorded.
pub fn write_run_dir(
    root: &Path,
    meta: &str,
    report: &SolveReport,
    emit_fields: bool,
) -> Result<RunDir> {
    fs::create_dir_all(root)?;

    let meta_path = root.join("meta.txt");
    let mut meta_out = String::from(meta);
    if !meta_out.ends_with('\n') {
        meta_out.push('\n');
    }
    meta_out.push_str(&format!("iterations = {}\n", report.iterations));
    if let Some(gap) = report.oracle_gap {
        meta_out.push_str(&format!("oracle_gap = {gap:.16e}\n"));
    }
    if let Some(cert) = &report.certificate {
        meta_out.push_str(&format!(
            "certificate_t1 = {:.16e}\ncertificate_eta = {:.16e}\ncertificate_verdict = {}\n",
            cert.t1, cert.eta, cert.verdict
        ));
    }
    fs::write(&meta_path, meta_out)?;

    let inf_path = root.join("inf_curve.csv");
    write_curve(&inf_path, "t,weighted_inf", &report.inf_curve)?;

    let norms_path = root.join("norms.csv");
    write_curve(&norms_path, "t,x_norm", &report.norm_curve)?;

    let picard_path = root.join("picard.csv");
    {
        let mut f = fs::File::create(&picard_path)?;
        writeln!(f, "iter,distance,factor")?;
        for (i, d) in report.picard_history.iter().enumerate() {
            if i == 0 {
                writeln!(f, "{},{:.16e},", i + 1, d)?;
            } else {
                writeln!(
                    f,
                    "{},{:.16e},{:.16e}",
                    i + 1,
                    d,
                    report.contraction_factors[i - 1]
                )?;
            }
        }
    }

    let snapshots = if emit_fields && !report.snapshots.is_empty() {
        let path = root.join("snapshots.bin");
        write_snapshots(&path, &report.snapshots)?;
        Some(path)
    } else {
        None
    };

    Ok(RunDir {
        root: root.to_path_buf(),
        meta: meta_path,
        inf_curve: inf_path,
        norms: norms_path,
        picard: picard_path,
        snapshots,
    })
}

fn write_curve(path: &Path, header: &str, curve: &[(f64, f64)]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    writeln!(f, "{header}")?;
    for (t, v) in curve {
        writeln!(f, "{t:.16e},{v:.16e}")?;
    }
    Ok(())
}

/// Layout: one ASCII header line
/// `dim points half_length components count\n`
/// followed by `count` records. Each record is the time as a little-endian
/// f64 and then, component-major in row-major grid order, each complex value
/// as two little-endian f64 (real, imaginary).
fn write_snapshots(path: &Path, snaps: &[(f64, Field)]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    let grid = snaps[0].1.grid();
    writeln!(
        f,
        "{} {} {:.16e} {} {}",
        grid.dim(),
        grid.points(),
        grid.half_length(),
        snaps[0].1.components(),
        snaps.len()
    )?;
    let mut buf = Vec::new();
    for (t, field) in snaps {
        buf.extend_from_slice(&t.to_le_bytes());
        for z in field.physical_data().iter() {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    f.write_all(&buf)?;
    Ok(())
}

/// Reads a snapshot file back, for round-trip checks and post-processing.
pub fn read_snapshots(path: &Path) -> Result<Vec<(f64, Field)>> {
    use crate::error::Error;
    use crate::spectral::GridSpec;
    use num_complex::Complex64;

    let bytes = fs::read(path)?;
    let header_end = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::Validation("snapshot file has no header".into()))?;
    let header = std::str::from_utf8(&bytes[..header_end])
        .map_err(|_| Error::Validation("snapshot header is not ASCII".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 5 {
        return Err(Error::Validation(format!(
            "snapshot header has {} fields, expected 5",
            parts.len()
        )));
    }
    let bad = |what: &str| Error::Validation(format!("bad snapshot header field: {what}"));
    let dim: usize = parts[0].parse().map_err(|_| bad("dim"))?;
    let points: usize = parts[1].parse().map_err(|_| bad("points"))?;
    let half_length: f64 = parts[2].parse().map_err(|_| bad("half_length"))?;
    let components: usize = parts[3].parse().map_err(|_| bad("components"))?;
    let count: usize = parts[4].parse().map_err(|_| bad("count"))?;

    let grid = GridSpec::new(dim, half_length, points)?;
    let values_per_snap = components * grid.len();
    let record = 8 * (1 + 2 * values_per_snap);
    let body = &bytes[header_end + 1..];
    if body.len() != count * record {
        return Err(Error::Validation(format!(
            "snapshot body is {} bytes, expected {}",
            body.len(),
            count * record
        )));
    }

    let read_f64 = |chunk: &[u8]| f64::from_le_bytes(chunk.try_into().unwrap());
    let mut out = Vec::with_capacity(count);
    for rec in body.chunks_exact(record) {
        let t = read_f64(&rec[..8]);
        let mut vals = Vec::with_capacity(values_per_snap);
        for pair in rec[8..].chunks_exact(16) {
            vals.push(Complex64::new(read_f64(&pair[..8]), read_f64(&pair[8..])));
        }
        out.push((t, Field::from_values(grid, components, vals)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Certificate;
    use crate::spectral::GridSpec;
    use num_complex::Complex64;

    fn sample_field() -> Field {
        let grid = GridSpec::new(1, 8.0, 16).unwrap();
        let vals: Vec<Complex64> = (0..16)
            .map(|i| Complex64::new(i as f64, -(i as f64) / 3.0))
            .collect();
        Field::from_values(grid, 1, vals).unwrap()
    }

    fn sample_report() -> SolveReport {
        SolveReport {
            snapshots: vec![(0.0, sample_field()), (0.5, sample_field())],
            picard_history: vec![1.0e-2, 2.0e-3, 1.0e-4],
            contraction_factors: vec![0.2, 0.05],
            iterations: 3,
            inf_curve: vec![(0.0, 1.0), (0.5, 0.9)],
            norm_curve: vec![(0.0, 3.0), (0.5, 3.1)],
            certificate: Some(Certificate {
                t1: 0.5,
                eta: 0.5,
                verdict: true,
            }),
            oracle_gap: None,
        }
    }

    #[test]
    fn writes_all_files_and_curves() {
        let dir = tempfile::tempdir().unwrap();
        let out = write_run_dir(dir.path().join("run").as_path(), "key = 1", &sample_report(), false)
            .unwrap();
        let meta = std::fs::read_to_string(&out.meta).unwrap();
        assert!(meta.contains("key = 1"));
        assert!(meta.contains("certificate_verdict = true"));
        let inf = std::fs::read_to_string(&out.inf_curve).unwrap();
        assert_eq!(inf.lines().count(), 3);
        assert!(inf.starts_with("t,weighted_inf"));
        let picard = std::fs::read_to_string(&out.picard).unwrap();
        let lines: Vec<&str> = picard.lines().collect();
        assert_eq!(lines.len(), 4);
        // first iteration has no contraction factor
        assert!(lines[1].ends_with(','));
        assert!(lines[2].contains("2.0000000000000001e-1"));
        assert!(out.snapshots.is_none());
    }

    #[test]
    fn snapshot_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let out =
            write_run_dir(dir.path(), "a = b", &sample_report(), true).unwrap();
        let snaps = read_snapshots(out.snapshots.as_ref().unwrap()).unwrap();
        assert_eq!(snaps.len(), 2);
        assert_eq!(snaps[1].0, 0.5);
        let orig = sample_field();
        let orig_data = orig.physical_data();
        for (a, b) in snaps[0].1.physical_data().iter().zip(orig_data.iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn truncated_snapshot_file_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let out = write_run_dir(dir.path(), "", &sample_report(), true).unwrap();
        let path = out.snapshots.unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 8]).unwrap();
        assert!(read_snapshots(&path).is_err());
    }
}
