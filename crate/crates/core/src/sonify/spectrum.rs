use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

// Relative tolerance on bin spacing when checking a frequency grid.
const GRID_TOLERANCE: f64 = 1e-2;

/// One acquisition: amplitude per frequency bin.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumFile {
    pub freqs: Vec<f64>,
    pub amps: Vec<f64>,
    pub index: usize,
}

impl SpectrumFile {
    pub fn new(freqs: Vec<f64>, amps: Vec<f64>, index: usize) -> Result<Self> {
        if freqs.len() != amps.len() {
            return Err(Error::invalid(format!(
                "frequency and amplitude columns differ in length ({} vs {})",
                freqs.len(),
                amps.len()
            )));
        }
        check_grid(&freqs).map_err(Error::InvalidInput)?;
        Ok(SpectrumFile { freqs, amps, index })
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        (self.freqs[self.freqs.len() - 1] - self.freqs[0]) / (self.freqs.len() - 1) as f64
    }
}

fn check_grid(freqs: &[f64]) -> std::result::Result<(), String> {
    if freqs.len() < 2 {
        return Err(format!("need at least 2 frequency points, got {}", freqs.len()));
    }
    let spacing = (freqs[freqs.len() - 1] - freqs[0]) / (freqs.len() - 1) as f64;
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err("frequencies must be strictly increasing".into());
    }
    for (i, w) in freqs.windows(2).enumerate() {
        let d = w[1] - w[0];
        if !(d > 0.0) {
            return Err(format!("frequencies not strictly increasing at row {}", i + 2));
        }
        if (d - spacing).abs() > GRID_TOLERANCE * spacing {
            return Err(format!(
                "non-uniform frequency grid at row {}: step {d} vs mean {spacing}",
                i + 2
            ));
        }
    }
    Ok(())
}

/// Ordered spectra sharing one frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    files: Vec<SpectrumFile>,
}

impl SpectrumSeries {
    pub fn new(files: Vec<SpectrumFile>) -> Result<Self> {
        let first = files
            .first()
            .ok_or_else(|| Error::invalid("spectrum series is empty"))?;
        let spacing = first.spacing();
        for f in &files[1..] {
            if f.len() != first.len() {
                return Err(Error::invalid(format!(
                    "spectrum {} has {} points, expected {}",
                    f.index,
                    f.len(),
                    first.len()
                )));
            }
            if (f.freqs[0] - first.freqs[0]).abs() > GRID_TOLERANCE * spacing
                || (f.spacing() - spacing).abs() > GRID_TOLERANCE * spacing
            {
                return Err(Error::invalid(format!(
                    "spectrum {} is on a different frequency grid",
                    f.index
                )));
            }
        }
        Ok(SpectrumSeries { files })
    }

    pub fn files(&self) -> &[SpectrumFile] {
        &self.files
    }

    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn points_per_file(&self) -> usize {
        self.files[0].len()
    }

    pub fn into_files(self) -> Vec<SpectrumFile> {
        self.files
    }
}

/// Which text column holds frequency and which holds amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnMap {
    pub freq: usize,
    pub amp: usize,
}

impl Default for ColumnMap {
    fn default() -> Self {
        ColumnMap { freq: 0, amp: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadOptions {
    pub column_map: ColumnMap,
    /// Leading rows dropped from every file (e.g. a header line).
    pub skip_rows: usize,
}

/// Loads every file with an integer stem from `dir`, ordered numerically
/// (`2.txt` before `10.txt`). Files whose stem is not an integer are ignored.
pub fn load_spectra(dir: &Path, opts: &LoadOptions) -> Result<SpectrumSeries> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut numbered: Vec<(u64, PathBuf)> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
        if let Ok(n) = stem.parse::<u64>() {
            numbered.push((n, path));
        }
    }
    if numbered.is_empty() {
        return Err(Error::invalid(format!(
            "no spectrum files with integer names in {}",
            dir.display()
        )));
    }
    numbered.sort();
    let files = numbered
        .iter()
        .enumerate()
        .map(|(i, (_, path))| read_spectrum_file(path, i, opts))
        .collect::<Result<Vec<_>>>()?;
    SpectrumSeries::new(files)
}

fn read_spectrum_file(path: &Path, index: usize, opts: &LoadOptions) -> Result<SpectrumFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let need = opts.column_map.freq.max(opts.column_map.amp) + 1;
    let mut width = None;
    let mut freqs = Vec::new();
    let mut amps = Vec::new();
    for (i, line) in text.lines().enumerate().skip(opts.skip_rows) {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(['\t', ' ', ',']).filter(|f| !f.is_empty()).collect();
        if fields.len() < need {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected at least {need} columns, found {}", fields.len()),
            ));
        }
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("ragged row: {} columns, previous rows had {w}", fields.len()),
                ))
            }
            _ => {}
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(path, line_no, format!("not a number: {s:?}")))
        };
        freqs.push(num(fields[opts.column_map.freq])?);
        amps.push(num(fields[opts.column_map.amp])?);
    }
    check_grid(&freqs).map_err(|msg| Error::parse(path, opts.skip_rows + 1, msg))?;
    SpectrumFile::new(freqs, amps, index)
}

/// Writes one `<index>.txt` per file, tab-separated `freq\tamp`.
pub fn write_spectra(dir: &Path, series: &SpectrumSeries) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for f in series.files() {
        let path = dir.join(format!("{}.txt", f.index));
        let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut w = BufWriter::new(file);
        for (fr, a) in f.freqs.iter().zip(&f.amps) {
            writeln!(w, "{fr}\t{a}").map_err(|e| Error::io(&path, e))?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

/// Output file `n` is the amplitude-wise mean of input files `n..n+window`.
pub fn moving_average(series: &SpectrumSeries, window: usize) -> Result<SpectrumSeries> {
    let n = series.len();
    if window == 0 || window > n {
        return Err(Error::invalid(format!(
            "moving-average window {window} must be in 1..={n}"
        )));
    }
    let files = series.files();
    let m = series.points_per_file();
    let scale = 1.0 / window as f64;
    let out = (0..=n - window)
        .map(|start| {
            let mut acc = vec![0.0; m];
            for f in &files[start..start + window] {
                for (a, x) in acc.iter_mut().zip(&f.amps) {
                    *a += x;
                }
            }
            acc.iter_mut().for_each(|a| *a *= scale);
            SpectrumFile {
                freqs: files[start].freqs.clone(),
                amps: acc,
                index: start,
            }
        })
        .collect();
    SpectrumSeries::new(out)
}

/// Inclusive, zero-based bin range used to estimate the noise floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoiseFloorRange {
    pub start: usize,
    pub end: usize,
}

impl Default for NoiseFloorRange {
    /// Bins 1500..=1800 counted from one, i.e. 301 points.
    fn default() -> Self {
        NoiseFloorRange {
            start: 1499,
            end: 1799,
        }
    }
}

impl NoiseFloorRange {
    pub fn check(&self, len: usize) -> Result<()> {
        if self.start > self.end {
            return Err(Error::invalid(format!(
                "empty noise-floor range {}..={}",
                self.start, self.end
            )));
        }
        if self.end >= len {
            return Err(Error::invalid(format!(
                "noise-floor range {}..={} exceeds spectrum length {len}",
                self.start, self.end
            )));
        }
        Ok(())
    }
}

/// Subtracts the mean amplitude over `range`. Results may go negative.
pub fn subtract_noise_floor(spectrum: &SpectrumFile, range: NoiseFloorRange) -> Result<SpectrumFile> {
    range.check(spectrum.len())?;
    let slice = &spectrum.amps[range.start..=range.end];
    let floor = slice.iter().sum::<f64>() / slice.len() as f64;
    Ok(SpectrumFile {
        freqs: spectrum.freqs.clone(),
        amps: spectrum.amps.iter().map(|a| a - floor).collect(),
        index: spectrum.index,
    })
}
