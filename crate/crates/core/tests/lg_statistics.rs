use std::f64::consts::PI;

use lgsound_core::lg::*;
use proptest::prelude::*;

fn angle(multiple: f64) -> RotationAngle {
    RotationAngle::from_pi_multiple(multiple).unwrap()
}

fn measured(cfg: &ExperimentConfig) -> KStatistic {
    let [a, b, c] = run_experiment(cfg).unwrap();
    k_statistic(
        &estimate_correlation(&a).unwrap(),
        &estimate_correlation(&b).unwrap(),
        &estimate_correlation(&c).unwrap(),
    )
}

#[test]
fn estimator_converges_at_one_million_shots() {
    for m in [1.0 / 6.0, 1.0 / 3.0, 0.5, 0.75] {
        let theta = angle(m);
        let cfg = ExperimentConfig::new(theta, 1_000_000, 2024);
        let c = estimate_correlation(&run_record_set(&cfg, IntervalLabel::C21).unwrap())
            .unwrap()
            .value();
        let cos = theta.radians().cos();
        let bound = 5.0 * ((1.0 - cos * cos) / 1e6).sqrt();
        assert!((c - cos).abs() <= bound, "θ = {m}π: C = {c}, cos = {cos}, bound {bound}");
    }
}

#[test]
fn noise_scales_correlation() {
    let p = 0.2;
    for m in [1.0 / 3.0, 0.25] {
        let theta = angle(m);
        let n = 10_000;
        let seeds = 200;
        let mean: f64 = (0..seeds)
            .map(|s| {
                let cfg = ExperimentConfig::new(theta, n, s).with_noise(p);
                estimate_correlation(&run_record_set(&cfg, IntervalLabel::C21).unwrap())
                    .unwrap()
                    .value()
            })
            .sum::<f64>()
            / seeds as f64;
        let expected = (1.0 - p) * theta.radians().cos();
        let sigma = ((1.0 - expected * expected) / (n as f64 * seeds as f64)).sqrt();
        assert!((mean - expected).abs() <= 3.0 * sigma, "mean {mean}, expected {expected}, σ {sigma}");
    }
}

#[test]
fn same_config_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::new(angle(1.0 / 3.0), 500, 9).with_noise(0.05);
    let first = run_experiment(&cfg).unwrap();
    let second = run_experiment(&cfg).unwrap();
    assert_eq!(first, second);
    let (pa, pb) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    write_record_csv(&pa, &first[0]).unwrap();
    write_record_csv(&pb, &second[0]).unwrap();
    assert_eq!(std::fs::read(pa).unwrap(), std::fs::read(pb).unwrap());
}

#[test]
fn threaded_run_matches_sequential() {
    let cfg = ExperimentConfig::new(angle(0.4), 2000, 77);
    let threaded = run_experiment(&cfg).unwrap();
    for (set, label) in threaded.iter().zip(IntervalLabel::ALL) {
        assert_eq!(set, &run_record_set(&cfg, label).unwrap());
    }
}

#[test]
fn label_streams_are_independent() {
    let cfg = ExperimentConfig::new(angle(0.5), 1000, 5);
    let [a, b, c] = run_experiment(&cfg).unwrap();
    assert_ne!(a.bits(), b.bits());
    assert_ne!(b.bits(), c.bits());
}

#[test]
fn pinned_seed_cumulative_k_stays_above_one() {
    let cfg = ExperimentConfig::new(angle(1.0 / 3.0), DEFAULT_SHOTS, 7);
    let [a, b, c] = run_experiment(&cfg).unwrap();
    let series = cumulative_k(&a, &b, &c).unwrap();
    assert_eq!(series.len(), DEFAULT_SHOTS);
    assert!(series.iter().filter(|(m, _)| *m >= 150).all(|(_, k)| *k > 1.0));
    assert_eq!(series.last().unwrap().1, measured(&cfg).k);
}

#[test]
fn table_reproduces_theory_column() {
    let expected = [1.5, 1.0, -1.0, -3.0];
    for (m, e) in table_thetas().into_iter().zip(expected) {
        assert!((k_theoretical(angle(m)) - e).abs() <= 2e-3);
    }
}

#[test]
fn hardware_file_round_trip() {
    // A file as exported by the hardware bridge: 1024 shots, seedless.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qc21.csv");
    let body: String = (0..HARDWARE_SHOTS).map(|i| format!("0\n{}\n", (i * 7 % 3 == 0) as u8)).collect();
    std::fs::write(&path, body).unwrap();
    let set = read_record_csv(&path, IntervalLabel::C21).unwrap();
    assert_eq!(set.len(), HARDWARE_SHOTS);
    assert_eq!(set.seed(), None);
    let out = dir.path().join("out.csv");
    write_record_csv(&out, &set).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&out).unwrap());
}

#[test]
fn theory_extremes_on_grid() {
    let n = 200_000;
    let (mut max, mut min) = ((f64::MIN, 0.0), (f64::MAX, 0.0));
    for i in 0..=n {
        let t = 2.0 * PI * i as f64 / n as f64;
        let k = k_theoretical(RotationAngle::new(t).unwrap());
        if k > max.0 {
            max = (k, t);
        }
        if k < min.0 {
            min = (k, t);
        }
    }
    assert!((max.0 - 1.5).abs() < 1e-9 && (max.1 - PI / 3.0).abs() < 1e-4);
    assert!((min.0 + 3.0).abs() < 1e-9 && (min.1 - PI).abs() < 1e-4);
}

proptest! {
    #[test]
    fn k_is_bounded(bits in proptest::collection::vec(0u8..=1, 3..=120)) {
        let n = bits.len() / 3;
        let sets: Vec<RecordSet> = IntervalLabel::ALL
            .iter()
            .zip(bits.chunks(n))
            .map(|(&l, chunk)| RecordSet::from_bits(l, chunk, None).unwrap())
            .collect();
        let est = |r: &RecordSet| estimate_correlation(r).unwrap();
        let k = k_statistic(&est(&sets[0]), &est(&sets[1]), &est(&sets[2])).k;
        prop_assert!((-3.0..=3.0).contains(&k));
    }

    #[test]
    fn rotations_compose(a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let s = prepare_initial();
        let two = rx_apply(rx_apply(s, RotationAngle::new(a).unwrap()), RotationAngle::new(b).unwrap());
        let one = rx_apply(s, RotationAngle::new(a + b).unwrap());
        prop_assert!((two.amp0 - one.amp0).norm() < 1e-10);
        prop_assert!((two.amp1 - one.amp1).norm() < 1e-10);
        prop_assert!((two.norm_sqr() - 1.0).abs() < 1e-12);
    }
}
