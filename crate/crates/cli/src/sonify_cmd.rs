use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use lgsound_core::sonify::{
    bin_for_audio_frequency, detect_frequency_switch, generate_synthetic, load_spectra, plan,
    sonify, spectrogram, write_events_csv, write_spectra, ColumnMap, LoadOptions, NoiseFloorRange,
    SonifyConfig, SonifyPlan, SpectrumSeries, SwitchDetector, SwitchSpec, SyntheticConfig,
    DEFAULT_HOP, DEFAULT_WINDOW,
};
use lgsound_core::wav::{write_wav, DEFAULT_PEAK};

use crate::manifest::RunManifest;
use crate::{create_dir, parse_pair};

const PNG_MAX_WIDTH: usize = 4000;

/// Synthetic drumhead-like series: a Lorentzian peak on a noisy floor.
#[derive(Args, Debug, Clone)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 200)]
    pub n_synth_files: usize,
    #[arg(long, default_value_t = 4095)]
    pub synth_points: usize,
    /// Audio frequency the peak should land on after sonification.
    #[arg(long, default_value_t = 470.0)]
    pub peak_hz: f64,
    /// Lorentzian half width, in bins.
    #[arg(long, default_value_t = 8.0)]
    pub linewidth_bins: f64,
    #[arg(long, default_value_t = 1.0)]
    pub peak_amp: f64,
    #[arg(long, default_value_t = 0.05)]
    pub floor_amp: f64,
    #[arg(long, default_value_t = 0.05)]
    pub floor_jitter: f64,
    /// Frequency axis step written to the files, Hz.
    #[arg(long, default_value_t = 6.706)]
    pub bin_spacing: f64,
    /// Peak jump `FILE:SHIFT_HZ[:RELAX_FILES]` (audio Hz; relax 0 keeps it). Repeatable.
    #[arg(long = "switch", value_parser = parse_switch)]
    pub switches: Vec<(usize, f64, usize)>,
    #[arg(long, default_value_t = 0)]
    pub synth_seed: u64,
}

impl SynthArgs {
    fn config(&self, sample_rate: f64) -> SyntheticConfig {
        let to_bin = |hz: f64| bin_for_audio_frequency(hz, self.synth_points, sample_rate);
        SyntheticConfig {
            n_files: self.n_synth_files,
            points_per_file: self.synth_points,
            bin_spacing: self.bin_spacing,
            peak_center_bin: to_bin(self.peak_hz),
            peak_linewidth_bins: self.linewidth_bins,
            peak_amp: self.peak_amp,
            noise_floor_amp: self.floor_amp,
            floor_jitter: self.floor_jitter,
            switches: self
                .switches
                .iter()
                .map(|&(file_index, hz, relaxation_files)| SwitchSpec {
                    file_index,
                    bin_shift: to_bin(hz),
                    relaxation_files,
                })
                .collect(),
            seed: self.synth_seed,
        }
    }

    fn record(&self, m: &mut RunManifest) {
        m.set("synthetic_files", self.n_synth_files)
            .set("synthetic_points", self.synth_points)
            .set("synthetic_peak_hz", self.peak_hz)
            .set("synthetic_seed", self.synth_seed);
        for (f, hz, r) in &self.switches {
            m.set("synthetic_switch", format!("{f}:{hz}:{r}"));
        }
    }
}

fn parse_switch(s: &str) -> Result<(usize, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || format!("expected FILE:SHIFT_HZ[:RELAX_FILES], got `{s}`");
    if !(2..=3).contains(&parts.len()) {
        return Err(bad());
    }
    let file = parts[0].parse().map_err(|_| bad())?;
    let hz = parts[1].parse().map_err(|_| bad())?;
    let relax = parts.get(2).map_or(Ok(0), |r| r.parse()).map_err(|_| bad())?;
    Ok((file, hz, relax))
}

#[derive(Args, Debug)]
pub struct GenSynthArgs {
    #[command(flatten)]
    pub synth: SynthArgs,
    /// Playback rate used to place the peak at `--peak-hz`.
    #[arg(long, default_value_t = 2015.0)]
    pub sample_rate: f64,
    #[arg(long, default_value = "synthetic_spectra")]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct SonifyArgs {
    /// Directory of numbered spectrum files (`0.txt`, `1.txt`, ...).
    #[arg(long, conflicts_with = "synthetic")]
    pub input_dir: Option<PathBuf>,
    /// Use a generated series instead of files on disk.
    #[arg(long)]
    pub synthetic: bool,
    #[command(flatten)]
    pub synth: SynthArgs,

    #[arg(long, default_value_t = 10)]
    pub window: usize,
    /// Zero-based inclusive bin range `a:b` for the noise floor.
    #[arg(long, value_parser = parse_pair::<usize>, default_value = "1499:1799")]
    pub noise_floor_range: (usize, usize),
    #[arg(long, default_value_t = 2015.0)]
    pub sample_rate: f64,
    /// Bandpass edges `lo:hi` in Hz.
    #[arg(long, value_parser = parse_pair::<f64>, default_value = "400:550")]
    pub band: (f64, f64),
    #[arg(long)]
    pub no_filter: bool,
    /// Phase seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub skip_rows: usize,
    /// Column indices `freq:amp`.
    #[arg(long, value_parser = parse_pair::<usize>, default_value = "0:1")]
    pub column_map: (usize, usize),
    /// Resample the filtered audio to this rate before writing.
    #[arg(long)]
    pub resample: Option<f64>,

    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub spec_window: usize,
    #[arg(long, default_value_t = DEFAULT_HOP)]
    pub spec_hop: usize,
    #[arg(long, default_value_t = 440.0)]
    pub fmin: f64,
    #[arg(long, default_value_t = 520.0)]
    pub fmax: f64,
    #[arg(long, default_value_t = 15.0)]
    pub jump_threshold: f64,
    /// Frames averaged before taking the per-frame peak.
    #[arg(long, default_value_t = 48)]
    pub smooth_frames: usize,
    /// Frames in the median baseline preceding a candidate jump.
    #[arg(long, default_value_t = 48)]
    pub baseline_frames: usize,
    /// Frames after a candidate jump that must agree with it.
    #[arg(long, default_value_t = 48)]
    pub confirm_frames: usize,

    /// Only print the duration plan.
    #[arg(long)]
    pub plan_only: bool,
    #[arg(long, requires = "plan_only")]
    pub n_files: Option<usize>,
    #[arg(long, requires = "plan_only")]
    pub points_per_file: Option<usize>,

    #[arg(long, default_value = "sonify_out")]
    pub out_dir: PathBuf,
}

pub fn gen_synth(a: GenSynthArgs) -> Result<(), String> {
    let cfg = a.synth.config(a.sample_rate);
    let series = generate_synthetic(&cfg).map_err(|e| e.to_string())?;
    create_dir(&a.out_dir)?;
    write_spectra(&a.out_dir, &series).map_err(|e| e.to_string())?;
    let mut m = RunManifest::new("gen-synth");
    a.synth.record(&mut m);
    m.set("sample_rate", a.sample_rate).output(&a.out_dir);
    m.write(&a.out_dir.join("manifest.txt"))?;
    println!("wrote {} spectra of {} points to {}", series.len(), series.points_per_file(), a.out_dir.display());
    Ok(())
}

fn print_plan(p: &SonifyPlan) {
    println!(
        "files {} -> {} averaged (window {}), {} samples/file, {:.4} s/file, total {} samples = {:.1} s ({:.2} h) at {} Hz",
        p.n_files,
        p.averaged_files,
        p.window,
        p.samples_per_file,
        p.per_file_duration_s(),
        p.total_samples,
        p.total_duration_s(),
        p.total_duration_s() / 3600.0,
        p.sample_rate
    );
}

fn load(a: &SonifyArgs) -> Result<SpectrumSeries, String> {
    if a.synthetic {
        return generate_synthetic(&a.synth.config(a.sample_rate)).map_err(|e| e.to_string());
    }
    let dir = a
        .input_dir
        .as_ref()
        .ok_or("give --input-dir DIR or --synthetic")?;
    let opts = LoadOptions {
        column_map: ColumnMap {
            freq: a.column_map.0,
            amp: a.column_map.1,
        },
        skip_rows: a.skip_rows,
    };
    load_spectra(dir, &opts).map_err(|e| e.to_string())
}

pub fn run(a: SonifyArgs) -> Result<(), String> {
    if a.plan_only {
        let (n, m) = match (a.n_files, a.points_per_file) {
            (Some(n), Some(m)) => (n, m),
            _ => {
                let s = load(&a)?;
                (a.n_files.unwrap_or(s.len()), a.points_per_file.unwrap_or(s.points_per_file()))
            }
        };
        let p = plan(n, m, a.window, a.sample_rate).map_err(|e| e.to_string())?;
        print_plan(&p);
        return Ok(());
    }

    let start = Instant::now();
    let series = load(&a)?;
    let cfg = SonifyConfig {
        window: a.window,
        noise_floor: NoiseFloorRange {
            start: a.noise_floor_range.0,
            end: a.noise_floor_range.1,
        },
        sample_rate: a.sample_rate,
        band: (!a.no_filter).then_some(a.band),
        seed: a.seed,
        resample_to: a.resample,
    };
    let p = plan(series.len(), series.points_per_file(), a.window, a.sample_rate).map_err(|e| e.to_string())?;
    let audio = sonify(&series, &cfg).map_err(|e| e.to_string())?;

    create_dir(&a.out_dir)?;
    let wav = a.out_dir.join("sound.wav");
    let rate = audio.sample_rate.round() as u32;
    write_wav(&wav, &audio.samples, rate, DEFAULT_PEAK).map_err(|e| e.to_string())?;

    let sg = spectrogram(&audio, a.spec_window, a.spec_hop, a.fmin, a.fmax).map_err(|e| e.to_string())?;
    let sg_csv = a.out_dir.join("spectrogram.csv");
    let sg_png = a.out_dir.join("spectrogram.png");
    sg.write_csv(&sg_csv).map_err(|e| e.to_string())?;
    sg.write_png(&sg_png, PNG_MAX_WIDTH).map_err(|e| e.to_string())?;
    let detector = SwitchDetector {
        jump_threshold_hz: a.jump_threshold,
        baseline_frames: a.baseline_frames,
        smooth_frames: a.smooth_frames,
        confirm_frames: a.confirm_frames,
    };
    let events = detect_frequency_switch(&sg, &detector);
    let events_csv = a.out_dir.join("events.csv");
    write_events_csv(&events_csv, &events).map_err(|e| e.to_string())?;

    let mut m = RunManifest::new("sonify");
    match &a.input_dir {
        Some(d) if !a.synthetic => {
            m.set("input_dir", d.display());
        }
        _ => a.synth.record(&mut m),
    }
    m.set("n_files", series.len())
        .set("points_per_file", series.points_per_file())
        .set("window", a.window)
        .set("noise_floor_range", format!("{}:{}", cfg.noise_floor.start, cfg.noise_floor.end))
        .set("sample_rate", a.sample_rate)
        .set("band", cfg.band.map_or("none".into(), |(l, h)| format!("{l}:{h}")))
        .set("phase_seed", a.seed)
        .set("output_rate", audio.sample_rate)
        .set("duration_s", audio.duration_s())
        .set("dominant_hz", sg.dominant_frequency().unwrap_or(f64::NAN))
        .set("events", events.len())
        .output(&wav)
        .output(&sg_csv)
        .output(&sg_png)
        .output(&events_csv);
    m.write(&a.out_dir.join("manifest.txt"))?;

    print_plan(&p);
    println!(
        "wrote {} ({:.1} s), dominant {:.1} Hz, {} switch event(s), {:.2} s elapsed",
        wav.display(),
        audio.duration_s(),
        sg.dominant_frequency().unwrap_or(f64::NAN),
        events.len(),
        start.elapsed().as_secs_f64()
    );
    for e in &events {
        println!("  switch at {:.2} s, {:+.1} Hz", e.time_s, e.delta_hz);
    }
    Ok(())
}
