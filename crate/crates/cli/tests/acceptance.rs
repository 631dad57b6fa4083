//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use lgsound_core::lg::*;
use lgsound_core::qmusic::*;
use lgsound_core::sonify::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn angle(m: f64) -> RotationAngle {
    RotationAngle::from_pi_multiple(m).unwrap()
}

fn k_of(cfg: &ExperimentConfig) -> f64 {
    let [a, b, c] = run_experiment(cfg).unwrap();
    let e = |r: &RecordSet| estimate_correlation(r).unwrap();
    k_statistic(&e(&a), &e(&b), &e(&c)).k
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac1() -> Outcome {
    let expected = [1.5, 1.0, -1.0, -3.0];
    let (ks, dt) = timed(|| table_thetas().map(|m| k_theoretical(angle(m))));
    let worst = ks.iter().zip(expected).map(|(k, e)| (k - e).abs()).fold(0.0, f64::max);
    check(
        worst <= 2e-3 && dt < Duration::from_millis(1),
        format!("theory K {ks:.4?}, max error {worst:.1e}, {dt:?}"),
    )
}

fn ac2() -> Outcome {
    let (ks, dt) = timed(|| {
        (0..100u64)
            .map(|s| k_of(&ExperimentConfig::new(angle(1.0 / 3.0), 500, s)))
            .collect::<Vec<_>>()
    });
    let mean = ks.iter().sum::<f64>() / 100.0;
    let above = ks.iter().filter(|&&k| k > 1.0).count();
    check(
        (mean - 1.5).abs() <= 0.05 && above >= 99 && dt < Duration::from_secs(1),
        format!("mean K {mean:.4}, {above}/100 runs above 1, {dt:?}"),
    )
}

fn ac3() -> Outcome {
    let p = 0.107;
    let mean = (0..100u64)
        .map(|s| k_of(&ExperimentConfig::new(angle(1.0 / 3.0), 500, s).with_noise(p)))
        .sum::<f64>()
        / 100.0;
    let target = (1.0 - p) * 1.5;
    check(
        (mean - target).abs() <= 0.05,
        format!("mean K {mean:.4} vs (1-p)·1.5 = {target:.4}"),
    )
}

fn ac4() -> Outcome {
    let (good, dt) = timed(|| {
        (0..100u64)
            .filter(|&s| {
                let [a, b, c] = run_experiment(&ExperimentConfig::new(angle(1.0 / 3.0), 500, s)).unwrap();
                cumulative_k(&a, &b, &c)
                    .unwrap()
                    .iter()
                    .filter(|(m, _)| *m >= 150)
                    .all(|(_, k)| *k > 1.0)
            })
            .count()
    });
    check(
        good >= 95 && dt < Duration::from_secs(2),
        format!("{good}/100 runs keep cumulative K > 1 from 150 shots, {dt:?}"),
    )
}

fn ac5() -> Outcome {
    let at_pi = k_of(&ExperimentConfig::new(angle(1.0), 500, 1));
    let at_zero = k_of(&ExperimentConfig::new(angle(0.0), 500, 1));
    check(at_pi == -3.0 && at_zero == 1.0, format!("K(π) = {at_pi}, K(0) = {at_zero}"))
}

fn render_synthetic(cfg: &SyntheticConfig, phase_seed: u64) -> SpectrogramData {
    let series = generate_synthetic(cfg).unwrap();
    let audio = sonify(&series, &SonifyConfig { seed: phase_seed, ..SonifyConfig::default() }).unwrap();
    spectrogram(&audio, DEFAULT_WINDOW, DEFAULT_HOP, 440.0, 520.0).unwrap()
}

fn ac6() -> Outcome {
    let (sg, dt) = timed(|| render_synthetic(&SyntheticConfig::default(), 0));
    let f = sg.dominant_frequency().unwrap_or(f64::NAN);
    check(
        (f - 470.0).abs() <= 7.0 && dt < Duration::from_secs(10),
        format!("dominant {f:.2} Hz, {dt:?}"),
    )
}

fn ac7() -> Outcome {
    let p = plan(200, 4095, 10, 2015.0).unwrap();
    let dur = p.per_file_duration_s();
    let mut details = Vec::new();
    let mut ok = true;
    for (trial, file) in [(1u64, 100usize), (2, 57), (3, 143)] {
        let cfg = SyntheticConfig {
            switches: vec![SwitchSpec {
                file_index: file,
                bin_shift: bin_for_audio_frequency(30.0, 4095, 2015.0),
                relaxation_files: 0,
            }],
            seed: trial,
            ..SyntheticConfig::default()
        };
        let events = detect_frequency_switch(&render_synthetic(&cfg, trial + 40), &SwitchDetector::default());
        let expected = p.audio_time_of_raw_file(file as f64);
        let err = events.first().map_or(f64::INFINITY, |e| (e.time_s - expected).abs() / dur);
        ok &= events.len() == 1 && err <= 2.0;
        details.push(format!("file {file}: {} event(s), off by {err:.2} files", events.len()));
    }
    check(ok, details.join("; "))
}

fn brute_idft(x: &[Complex64]) -> Vec<Complex64> {
    let l = x.len() as f64;
    (0..x.len())
        .map(|n| {
            x.iter()
                .enumerate()
                .map(|(k, v)| v * Complex64::from_polar(1.0, std::f64::consts::TAU * (k * n) as f64 / l))
                .sum::<Complex64>()
                / l
        })
        .collect()
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_imag = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for _ in 0..500 {
        let m = rng.gen_range(1..=32);
        let values: Vec<Complex64> = (0..m)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let ext = hermitian_extend(&ComplexSpectrum { values: values.clone() }).unwrap();
        let l = ext.values.len() as f64;
        let x = inverse_dft(&ext);
        let oracle = brute_idft(&ext.values);
        let target = values[0].im / l;
        for (a, b) in x.iter().zip(&oracle) {
            worst_imag = worst_imag.max((a.im - target).abs());
            worst_oracle = worst_oracle.max((a - b).norm());
        }
    }
    check(
        worst_imag <= 1e-9 && worst_oracle <= 1e-9,
        format!("max |Im x - Im X0/L| {worst_imag:.1e}, max oracle gap {worst_oracle:.1e}"),
    )
}

fn ac9() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_lgsound"))
        .args(["sonify", "--plan-only", "--n-files", "11930", "--points-per-file", "4095"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let total = plan(11930, 4095, 10, 2015.0).unwrap().total_duration_s();
    let reported = text.contains(&format!("{total:.1} s"));
    check(
        out.status.success() && reported && (total / 4.8e4 - 1.0).abs() <= 0.02,
        format!("planned {total:.1} s ({:.2} h)", total / 3600.0),
    )
}

fn ac10() -> Outcome {
    let params = ShepardParams::default();
    let ring = ScaleRing::eb_dorian();
    let db: Vec<f64> = ring
        .classes()
        .iter()
        .map(|&pc| {
            let note = shepard_tone(pc, &params, 1.0);
            let rms = (note.iter().map(|x| x * x).sum::<f64>() / note.len() as f64).sqrt();
            20.0 * rms.log10()
        })
        .collect();
    let mean = db.iter().sum::<f64>() / db.len() as f64;
    let spread = db.iter().map(|d| (d - mean).abs()).fold(0.0, f64::max);

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let bits: Vec<Vec<u8>> = (0..3).map(|_| (0..500).map(|_| rng.gen_range(0..=1)).collect()).collect();
    let movement = Movement::from_bits(0.0, [&bits[0], &bits[1], &bits[2]]).unwrap();
    let audio = render_movement(&movement, &ring, &params).unwrap();
    let secs = audio.len() as f64 / params.render_rate;
    let law = 500.0 * params.note_dur + params.final_note.total();
    check(
        spread <= 1.5 && (secs - law).abs() <= 0.05,
        format!("note loudness within ±{spread:.2} dB; movement {secs:.3} s vs {law:.3} s"),
    )
}

fn ac11() -> Outcome {
    let ring = ScaleRing::eb_dorian();
    let scale = ["Eb", "F", "Gb", "Ab", "Bb", "C", "Db"];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..1000 {
        let n = rng.gen_range(1..=64);
        let bits: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        // The original loop: play the current degree, then step.
        let mut i: i64 = 0;
        let mut played = Vec::new();
        for &b in &bits {
            played.push(scale[i.rem_euclid(7) as usize]);
            if b == 1 {
                i += 1;
            } else {
                i -= 1;
            }
        }
        let walk = walk_from_bits(&bits).unwrap();
        let names: Vec<&str> = walk.indices().iter().map(|&k| scale_pitch(k, &ring).name()).collect();
        if names != played || walk.final_index() != i {
            return Err(format!("case {case} differs: {bits:?}"));
        }
    }
    Ok("1000 random walks match the reference loop".into())
}

fn lgsound(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lgsound"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    }
}

fn run_suite(root: &Path) -> Result<(), String> {
    let p = |s: &str| root.join(s).to_string_lossy().into_owned();
    for (theta, dir) in [("1/3", "a"), ("1/2", "b"), ("0.712", "c"), ("1", "d")] {
        lgsound(&["lg-run", "--theta", theta, "--seed", "5", "--noise-p", "0.05", "--out-dir", &p(dir)])?;
    }
    lgsound(&["lg-table", "--seed", "5", "--out", &p("table.csv")])?;
    lgsound(&["gen-synth", "--n-synth-files", "30", "--switch", "15:30", "--out-dir", &p("spectra")])?;
    lgsound(&["sonify", "--input-dir", &p("spectra"), "--seed", "2", "--out-dir", &p("snd")])?;
    lgsound(&[
        "compose", "--from-lg-run", &p("a"), "--from-lg-run", &p("b"), "--from-lg-run", &p("c"),
        "--from-lg-run", &p("d"), "--shots", "60", "--shuffle", "--seed", "3", "--out-dir", &p("music"),
    ])
}

fn collect(root: &Path, dir: &Path, out: &mut Vec<(String, Vec<u8>)>) {
    let mut entries: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for path in entries {
        if path.is_dir() {
            collect(root, &path, out);
        } else if !path.to_string_lossy().contains("manifest") {
            let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
            out.push((rel, fs::read(&path).unwrap()));
        }
    }
}

fn ac12() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (tmp.path().join("first"), tmp.path().join("second"));
    run_suite(&a)?;
    run_suite(&b)?;
    let (mut fa, mut fb) = (Vec::new(), Vec::new());
    collect(&a, &a, &mut fa);
    collect(&b, &b, &mut fb);
    let wavs = fa.iter().filter(|(n, _)| n.ends_with(".wav")).count();
    let csvs = fa.iter().filter(|(n, _)| n.ends_with(".csv")).count();
    let differing: Vec<&String> = fa.iter().zip(&fb).filter(|(x, y)| x != y).map(|(x, _)| &x.0).collect();
    check(
        fa.len() == fb.len() && differing.is_empty() && wavs > 0,
        format!("{} files compared ({csvs} csv, {wavs} wav), differing: {differing:?}", fa.len()),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("AC1", "theory table", ac1),
        ("AC2", "ideal LG violation", ac2),
        ("AC3", "noise emulation", ac3),
        ("AC4", "cumulative convergence", ac4),
        ("AC5", "deterministic limits", ac5),
        ("AC6", "tone recovery", ac6),
        ("AC7", "switch detection", ac7),
        ("AC8", "realness of inverse transform", ac8),
        ("AC9", "duration plan", ac9),
        ("AC10", "Shepard loudness and length", ac10),
        ("AC11", "walk oracle", ac11),
        ("AC12", "command determinism", ac12),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        match f() {
            Ok(d) => println!("[PASS] {id} {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {d}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
