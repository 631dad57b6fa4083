use std::path::PathBuf;

use clap::Args;
use lgsound_core::lg::{
    cumulative_k, estimate_correlation, k_statistic, k_theoretical, run_experiment, table_thetas,
    write_cumulative_csv, write_k_report, write_record_csv, write_table_csv, ExperimentConfig,
    KStatistic, RecordSet, RotationAngle, TableRow, DEFAULT_SHOTS,
};

use crate::create_dir;
use crate::manifest::RunManifest;

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Rotation angle per interval as a multiple of π: `1/3`, `0.5`, `0.712`.
    #[arg(long, value_parser = parse_theta)]
    pub theta: RotationAngle,
    #[arg(long, default_value_t = DEFAULT_SHOTS, value_parser = crate::positive)]
    pub shots: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Depolarising strength p; each bit flips with probability p/2.
    #[arg(long)]
    pub noise_p: Option<f64>,
    #[arg(long, default_value = "lg_out")]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, default_value_t = DEFAULT_SHOTS, value_parser = crate::positive)]
    pub shots: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub noise_p: Option<f64>,
    #[arg(long, default_value = "k_table.csv")]
    pub out: PathBuf,
}

pub fn parse_theta(s: &str) -> Result<RotationAngle, String> {
    let cleaned = s.trim().replace('π', "pi").replace('*', "");
    let body = cleaned.replace("pi", "");
    let bad = || format!("bad angle `{s}`");
    let num = |x: &str| if x.is_empty() { Ok(1.0) } else { x.parse::<f64>().map_err(|_| bad()) };
    let multiple = match body.split_once('/') {
        Some((a, b)) => num(a)? / b.parse::<f64>().map_err(|_| bad())?,
        None => num(&body)?,
    };
    RotationAngle::from_pi_multiple(multiple).ok_or_else(|| format!("angle must be finite, got `{s}`"))
}

fn config(theta: RotationAngle, shots: usize, seed: u64, noise_p: Option<f64>) -> ExperimentConfig {
    let cfg = ExperimentConfig::new(theta, shots, seed);
    match noise_p {
        Some(p) => cfg.with_noise(p),
        None => cfg,
    }
}

fn measure(sets: &[RecordSet; 3]) -> Result<KStatistic, String> {
    let [a, b, c] = sets;
    let e = |r| estimate_correlation(r).map_err(|e| e.to_string());
    Ok(k_statistic(&e(a)?, &e(b)?, &e(c)?))
}

pub fn run(a: RunArgs) -> Result<(), String> {
    let cfg = config(a.theta, a.shots, a.seed, a.noise_p);
    cfg.validate().map_err(|e| e.to_string())?;
    let sets = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let k = measure(&sets)?;
    create_dir(&a.out_dir)?;

    let mut m = RunManifest::new("lg-run");
    m.set("theta_over_pi", a.theta.over_pi())
        .set("n_shots", a.shots)
        .set("seed", a.seed)
        .set("noise_p", a.noise_p.map_or("none".into(), |p| p.to_string()));
    for set in &sets {
        let path = a.out_dir.join(format!("{}.csv", set.label().name().to_lowercase()));
        write_record_csv(&path, set).map_err(|e| e.to_string())?;
        m.output(&path);
    }
    let report = a.out_dir.join("k_report.csv");
    write_k_report(&report, a.theta, a.shots, &k).map_err(|e| e.to_string())?;
    let cumulative = a.out_dir.join("cumulative_k.csv");
    let [s21, s32, s31] = &sets;
    let series = cumulative_k(s21, s32, s31).map_err(|e| e.to_string())?;
    write_cumulative_csv(&cumulative, &series).map_err(|e| e.to_string())?;
    m.output(&report).output(&cumulative);
    m.set("k_exp", k.k).set("k_theor", k_theoretical(a.theta));
    m.write(&a.out_dir.join("manifest.txt"))?;

    println!(
        "theta = {:.4}π  C21 = {:.4}  C32 = {:.4}  C31 = {:.4}  K = {:.4} (theory {:.4})  {}",
        a.theta.over_pi(),
        k.c21,
        k.c32,
        k.c31,
        k.k,
        k_theoretical(a.theta),
        k.classification.as_str()
    );
    Ok(())
}

pub fn table(a: TableArgs) -> Result<(), String> {
    let mut rows = Vec::new();
    for multiple in table_thetas() {
        let theta = RotationAngle::from_pi_multiple(multiple).expect("finite");
        let cfg = config(theta, a.shots, a.seed, a.noise_p);
        cfg.validate().map_err(|e| e.to_string())?;
        let sets = run_experiment(&cfg).map_err(|e| e.to_string())?;
        rows.push(TableRow::new(theta, &measure(&sets)?));
    }
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        create_dir(dir)?;
    }
    write_table_csv(&a.out, &rows).map_err(|e| e.to_string())?;

    let mut m = RunManifest::new("lg-table");
    m.set("n_shots", a.shots)
        .set("seed", a.seed)
        .set("noise_p", a.noise_p.map_or("none".into(), |p| p.to_string()))
        .output(&a.out);
    let mut name = a.out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.txt");
    m.write(&a.out.with_file_name(name))?;

    println!("theta/pi   K_exp     K_theor");
    for r in &rows {
        println!("{:<9.4}  {:>8.4}  {:>8.4}", r.theta_over_pi, r.k_exp, r.k_theor);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_forms() {
        let close = |s: &str, x: f64| (parse_theta(s).unwrap().over_pi() - x).abs() < 1e-12;
        assert!(close("1/3", 1.0 / 3.0));
        assert!(close("0.712", 0.712));
        assert!(close("pi/2", 0.5));
        assert!(close("0.5pi", 0.5));
        assert!(close("1", 1.0));
        assert!(close("2π/3", 2.0 / 3.0));
        assert!(parse_theta("x").is_err());
        assert!(parse_theta("1/0").is_err());
    }
}
