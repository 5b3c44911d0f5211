//! File formats: homodyne datasets, count records, density matrices, fit
//! reports, ensembles and balloon maps.
//!
//! CSV files may start with `#` comment lines (the provenance header written
//! by [`Provenance`]); readers skip them. Floats are written with 17
//! significant digits so every value round-trips bit-exactly.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dv::DensityMatrix4;
use crate::error::{Error, Result};
use crate::homodyne::{DatasetMeta, HomodyneDataset, HomodyneSample};
use crate::linalg::{c, Mat4};
use crate::mle::{AcquisitionMeta, CountRecord, FitDiagnostics};
use crate::resample::BalloonMap;

/// Full-precision float formatting.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Hex SHA-256 of the compact JSON encoding of `config`.
pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    let bytes = serde_json::to_vec(config)?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub seed: u64,
}

impl Provenance {
    pub fn comment_line(&self) -> String {
        format!("# config_hash={} seed={}", self.config_hash, self.seed)
    }

    /// Parses a `# config_hash=… seed=…` line.
    pub fn parse(line: &str) -> Option<Provenance> {
        let rest = line.strip_prefix('#')?.trim();
        let mut hash = None;
        let mut seed = None;
        for part in rest.split_whitespace() {
            if let Some(h) = part.strip_prefix("config_hash=") {
                hash = Some(h.to_string());
            } else if let Some(s) = part.strip_prefix("seed=") {
                seed = s.parse().ok();
            }
        }
        Some(Provenance {
            config_hash: hash?,
            seed: seed?,
        })
    }

    /// Provenance header of a file, if present.
    pub fn read(path: &Path) -> Result<Option<Provenance>> {
        let text = fs::read_to_string(path)?;
        Ok(text.lines().next().and_then(Provenance::parse))
    }
}

/// Writes a CSV table with an optional provenance line.
pub fn write_csv(
    path: &Path,
    provenance: Option<&Provenance>,
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut buf = Vec::new();
    if let Some(p) = provenance {
        writeln!(buf, "{}", p.comment_line())?;
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(columns)?;
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush()?;
    }
    write_bytes(path, &buf)
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, bytes)?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_bytes(path, &bytes)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::format(path, e.to_string()))
}

fn reader(path: &Path) -> Result<csv::Reader<fs::File>> {
    Ok(csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)?)
}

fn expect_header(path: &Path, r: &mut csv::Reader<fs::File>, want: &[&str]) -> Result<()> {
    let got: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if got != want {
        return Err(Error::format(path, format!("expected header {want:?}, found {got:?}")));
    }
    Ok(())
}

fn parse_f64(path: &Path, line: usize, s: &str) -> Result<f64> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::format(path, format!("record {line}: not a finite number: {s:?}")))
}

/// Sidecar metadata path: `data.csv` → `data.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes `theta,x` rows and the metadata sidecar.
pub fn write_homodyne(path: &Path, ds: &HomodyneDataset, provenance: Option<&Provenance>) -> Result<()> {
    write_csv(
        path,
        provenance,
        &["theta", "x"],
        ds.samples.iter().map(|s| vec![fmt_f64(s.theta), fmt_f64(s.x)]),
    )?;
    write_json(&sidecar_path(path), &ds.meta)
}

/// Reads a dataset; the sidecar is optional.
pub fn read_homodyne(path: &Path) -> Result<HomodyneDataset> {
    let mut r = reader(path)?;
    expect_header(path, &mut r, &["theta", "x"])?;
    let mut samples = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::format(
                path,
                format!("record {} has {} fields", i + 1, rec.len()),
            ));
        }
        samples.push(HomodyneSample {
            theta: parse_f64(path, i + 1, &rec[0])?,
            x: parse_f64(path, i + 1, &rec[1])?,
        });
    }
    let side = sidecar_path(path);
    let meta: DatasetMeta = if side.exists() {
        read_json(&side)?
    } else {
        DatasetMeta::default()
    };
    HomodyneDataset::new(samples, meta)
}

/// Writes `label,count` rows and the acquisition sidecar.
pub fn write_counts(path: &Path, counts: &CountRecord, provenance: Option<&Provenance>) -> Result<()> {
    write_csv(
        path,
        provenance,
        &["label", "count"],
        counts
            .labels
            .iter()
            .zip(&counts.counts)
            .map(|(l, n)| vec![l.clone(), fmt_f64(*n)]),
    )?;
    write_json(&sidecar_path(path), &counts.meta)
}

pub fn read_counts(path: &Path) -> Result<CountRecord> {
    let mut r = reader(path)?;
    expect_header(path, &mut r, &["label", "count"])?;
    let mut labels = Vec::new();
    let mut counts = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::format(
                path,
                format!("record {} has {} fields", i + 1, rec.len()),
            ));
        }
        labels.push(rec[0].to_string());
        counts.push(parse_f64(path, i + 1, &rec[1])?);
    }
    let side = sidecar_path(path);
    let meta: AcquisitionMeta = if side.exists() {
        read_json(&side)?
    } else {
        AcquisitionMeta::default()
    };
    CountRecord::new(labels, counts, meta).map_err(|e| Error::format(path, e.to_string()))
}

/// Row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub re: [[f64; 4]; 4],
    pub im: [[f64; 4]; 4],
}

impl From<&DensityMatrix4> for DensityMatrixJson {
    fn from(r: &DensityMatrix4) -> Self {
        let m = r.matrix();
        DensityMatrixJson {
            re: std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)].re)),
            im: std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)].im)),
        }
    }
}

impl DensityMatrixJson {
    /// Validates the state invariants.
    pub fn to_state(&self) -> Result<DensityMatrix4> {
        DensityMatrix4::new(Mat4::from_fn(|i, j| c(self.re[i][j], self.im[i][j])))
    }
}

pub fn write_density_matrix(path: &Path, r: &DensityMatrix4) -> Result<()> {
    write_json(path, &DensityMatrixJson::from(r))
}

pub fn read_density_matrix(path: &Path) -> Result<DensityMatrix4> {
    let j: DensityMatrixJson = read_json(path)?;
    j.to_state().map_err(|e| Error::format(path, e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub projector_set: String,
    pub labels: Vec<String>,
    pub likelihood: f64,
    pub matrix: DensityMatrixJson,
    pub diagnostics: FitDiagnostics,
    pub seed: Option<u64>,
    pub config_hash: Option<String>,
}

impl FitReport {
    pub fn new(
        r: &DensityMatrix4,
        diagnostics: FitDiagnostics,
        labels: Vec<String>,
        provenance: Option<&Provenance>,
    ) -> Self {
        FitReport {
            projector_set: diagnostics.projector_set.clone(),
            labels,
            likelihood: diagnostics.likelihood,
            matrix: r.into(),
            diagnostics,
            seed: provenance.map(|p| p.seed),
            config_hash: provenance.map(|p| p.config_hash.clone()),
        }
    }
}

pub fn write_balloon(path: &Path, map: &BalloonMap, provenance: Option<&Provenance>) -> Result<()> {
    write_csv(
        path,
        provenance,
        &["s", "mu", "fidelity", "in_balloon", "in_stripe", "nonclassical"],
        map.points.iter().map(|p| {
            vec![
                fmt_f64(p.s),
                fmt_f64(p.mu),
                fmt_f64(p.fidelity),
                p.in_balloon.to_string(),
                p.in_stripe.to_string(),
                p.nonclassical.to_string(),
            ]
        }),
    )
}

/// Ensemble table: `replica_id` followed by one column per quantity.
pub fn write_ensemble(
    path: &Path,
    provenance: Option<&Provenance>,
    columns: &[&str],
    rows: impl IntoIterator<Item = (usize, Vec<f64>)>,
) -> Result<()> {
    let mut header = vec!["replica_id"];
    header.extend_from_slice(columns);
    write_csv(
        path,
        provenance,
        &header,
        rows.into_iter().map(|(id, vals)| {
            std::iter::once(id.to_string())
                .chain(vals.into_iter().map(fmt_f64))
                .collect()
        }),
    )
}

/// Reads any numeric CSV written by this module: header and rows of floats.
pub fn read_numeric_table(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = reader(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        rows.push(
            rec.iter()
                .map(|s| parse_f64(path, i + 1, s))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((header, rows))
}
