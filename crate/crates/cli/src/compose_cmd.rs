use std::path::{Path, PathBuf};

use clap::Args;
use lgsound_core::lg::{estimate_correlation, k_statistic, IntervalLabel, RecordSet};
use lgsound_core::qmusic::{
    compose, movement_order, parse_measurement_csv, render_movement, Movement, ScaleRing,
    ShepardParams, DEFAULT_GAP_S,
};
use lgsound_core::wav::{write_wav, DEFAULT_PEAK};

use crate::manifest::RunManifest;
use crate::{create_dir, parse_pair};

#[derive(Args, Debug)]
pub struct ComposeArgs {
    /// An `lg-run` output directory; K is measured from its records. Repeatable.
    #[arg(long = "from-lg-run")]
    pub from_lg_run: Vec<PathBuf>,
    /// Explicit movement `K=c21.csv,c32.csv,c31.csv`. Repeatable.
    #[arg(long = "movement", value_parser = parse_movement)]
    pub movements: Vec<(f64, [PathBuf; 3])>,
    /// Use only the first N shots of each record.
    #[arg(long, value_parser = crate::positive)]
    pub shots: Option<usize>,
    /// Seven pitch classes (`Eb,F,Gb,Ab,Bb,C,Db`) or `eb-dorian`.
    #[arg(long, default_value = "eb-dorian")]
    pub scale: String,
    /// Seconds per note.
    #[arg(long, default_value_t = 0.15)]
    pub tempo: f64,
    #[arg(long, default_value_t = 68.0)]
    pub center_midi: f64,
    #[arg(long, value_parser = parse_pair::<u8>, default_value = "1:9")]
    pub octaves: (u8, u8),
    /// Volumes of the C21, C32 and C31 voices.
    #[arg(long, default_value = "1,1,2")]
    pub voice_volumes: String,
    /// Silence between movements, seconds.
    #[arg(long, default_value_t = DEFAULT_GAP_S)]
    pub gap: f64,
    /// Shuffle the movements instead of sorting by ascending K.
    #[arg(long)]
    pub shuffle: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "compose_out")]
    pub out_dir: PathBuf,
}

fn parse_movement(s: &str) -> Result<(f64, [PathBuf; 3]), String> {
    let bad = || format!("expected K=c21.csv,c32.csv,c31.csv, got `{s}`");
    let (k, files) = s.split_once('=').ok_or_else(bad)?;
    let k: f64 = k.trim().parse().map_err(|_| bad())?;
    let files: Vec<PathBuf> = files.split(',').map(|f| PathBuf::from(f.trim())).collect();
    let files: [PathBuf; 3] = files.try_into().map_err(|_| bad())?;
    Ok((k, files))
}

fn parse_volumes(s: &str) -> Result<[f64; 3], String> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad volume `{x}`")))
        .collect::<Result<Vec<_>, _>>()?;
    v.try_into().map_err(|_| format!("expected three volumes, got `{s}`"))
}

fn read_bits(path: &Path, shots: Option<usize>) -> Result<Vec<u8>, String> {
    let mut bits = parse_measurement_csv(path, None).map_err(|e| e.to_string())?;
    if let Some(n) = shots {
        if bits.len() < n {
            return Err(format!("{}: has {} shots, fewer than --shots {n}", path.display(), bits.len()));
        }
        bits.truncate(n);
    }
    Ok(bits)
}

fn measured_k(bits: &[Vec<u8>; 3]) -> Result<f64, String> {
    let est = |label, b: &Vec<u8>| {
        RecordSet::from_bits(label, b, None)
            .and_then(|r| estimate_correlation(&r))
            .map_err(|e| e.to_string())
    };
    Ok(k_statistic(
        &est(IntervalLabel::C21, &bits[0])?,
        &est(IntervalLabel::C32, &bits[1])?,
        &est(IntervalLabel::C31, &bits[2])?,
    )
    .k)
}

struct Source {
    k: f64,
    files: [PathBuf; 3],
    bits: [Vec<u8>; 3],
}

fn gather(a: &ComposeArgs) -> Result<Vec<Source>, String> {
    let mut out = Vec::new();
    for dir in &a.from_lg_run {
        let files = IntervalLabel::ALL.map(|l| dir.join(format!("{}.csv", l.name().to_lowercase())));
        let bits = [read_bits(&files[0], a.shots)?, read_bits(&files[1], a.shots)?, read_bits(&files[2], a.shots)?];
        out.push(Source { k: measured_k(&bits)?, files, bits });
    }
    for (k, files) in &a.movements {
        let bits = [read_bits(&files[0], a.shots)?, read_bits(&files[1], a.shots)?, read_bits(&files[2], a.shots)?];
        out.push(Source { k: *k, files: files.clone(), bits });
    }
    if out.is_empty() {
        return Err("give at least one --from-lg-run DIR or --movement K=a,b,c".into());
    }
    Ok(out)
}

pub fn run(a: ComposeArgs) -> Result<(), String> {
    let ring: ScaleRing = a.scale.parse().map_err(|e: lgsound_core::Error| e.to_string())?;
    let params = ShepardParams {
        note_dur: a.tempo,
        volumes: parse_volumes(&a.voice_volumes)?,
        center_midi: a.center_midi,
        octaves: a.octaves.0..=a.octaves.1,
        ..ShepardParams::default()
    };
    params.validate().map_err(|e| e.to_string())?;
    let sources = gather(&a)?;
    create_dir(&a.out_dir)?;

    let rate = params.render_rate;
    let mut m = RunManifest::new("compose");
    m.set("scale", ring.classes().iter().map(|p| p.name()).collect::<Vec<_>>().join(","))
        .set("note_dur_s", a.tempo)
        .set("center_midi", a.center_midi)
        .set("octaves", format!("{}:{}", a.octaves.0, a.octaves.1))
        .set("voice_volumes", &a.voice_volumes)
        .set("gap_s", a.gap)
        .set("render_rate", rate);

    let mut rendered = Vec::with_capacity(sources.len());
    for (i, s) in sources.iter().enumerate() {
        let movement = Movement::from_bits(s.k, [&s.bits[0], &s.bits[1], &s.bits[2]]).map_err(|e| e.to_string())?;
        let audio = render_movement(&movement, &ring, &params).map_err(|e| e.to_string())?;
        let path = a.out_dir.join(format!("movement_{i}.wav"));
        write_wav(&path, &audio, rate as u32, DEFAULT_PEAK).map_err(|e| e.to_string())?;
        let inputs: Vec<String> = s.files.iter().map(|f| f.display().to_string()).collect();
        m.set(&format!("movement_{i}_k"), format!("{:.6}", s.k))
            .set(&format!("movement_{i}_shots"), s.bits[0].len())
            .set(&format!("movement_{i}_inputs"), inputs.join(","))
            .output(&path);
        println!("movement {i}: K = {:.4}, {} shots, {:.1} s", s.k, s.bits[0].len(), audio.len() as f64 / rate);
        rendered.push(audio);
    }

    let ks: Vec<f64> = sources.iter().map(|s| s.k).collect();
    let order = movement_order(&ks, a.shuffle.then_some(a.seed));
    let full = compose(&rendered, &order, a.gap, rate).map_err(|e| e.to_string())?;
    let path = a.out_dir.join("composition.wav");
    write_wav(&path, &full, rate as u32, DEFAULT_PEAK).map_err(|e| e.to_string())?;
    m.set("order", if a.shuffle { "shuffled" } else { "ascending_k" })
        .set("shuffle_seed", if a.shuffle { a.seed.to_string() } else { "none".into() })
        .set("permutation", order.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
        .output(&path);
    m.write(&a.out_dir.join("manifest.txt"))?;
    println!("composition: order {:?}, {:.1} s -> {}", order, full.len() as f64 / rate, path.display());
    Ok(())
}
