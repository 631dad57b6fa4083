use lgsound_core::qmusic::*;
use lgsound_core::wav::write_wav;

fn bits(n: usize, seed: u64) -> Vec<u8> {
    // xorshift keeps the test free of RNG crate details
    let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    (0..n)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x & 1) as u8
        })
        .collect()
}

#[test]
fn four_movement_composition_length() {
    let ring = ScaleRing::eb_dorian();
    let params = ShepardParams::default();
    let rendered: Vec<Vec<f64>> = (0..4)
        .map(|i| {
            let b = [bits(500, i * 3 + 1), bits(500, i * 3 + 2), bits(500, i * 3 + 3)];
            let m = Movement::from_bits(i as f64, [&b[0], &b[1], &b[2]]).unwrap();
            render_movement(&m, &ring, &params).unwrap()
        })
        .collect();
    for r in &rendered {
        assert_eq!(r.len(), movement_samples(500, &params));
    }
    let order = movement_order(&[1.5, 1.0, -1.0, -3.0], None);
    assert_eq!(order, vec![3, 2, 1, 0]);
    let total = compose(&rendered, &order, DEFAULT_GAP_S, params.render_rate).unwrap();
    let secs = total.len() as f64 / params.render_rate;
    assert!((secs - (4.0 * 76.4 + 3.0 * 2.0)).abs() < 0.05, "{secs}");
}

#[test]
fn shuffle_is_reproducible_permutation() {
    let ks = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
    let a = movement_order(&ks, Some(3));
    assert_eq!(a, movement_order(&ks, Some(3)));
    let mut sorted = a.clone();
    sorted.sort();
    assert_eq!(sorted, (0..6).collect::<Vec<_>>());
}

#[test]
fn movement_wav_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let ring = ScaleRing::eb_dorian();
    let params = ShepardParams::default();
    let b = [bits(40, 1), bits(40, 2), bits(40, 3)];
    let paths = [dir.path().join("a.wav"), dir.path().join("b.wav")];
    for p in &paths {
        let m = Movement::from_bits(0.0, [&b[0], &b[1], &b[2]]).unwrap();
        let audio = render_movement(&m, &ring, &params).unwrap();
        write_wav(p, &audio, 44100, 0.891).unwrap();
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn csv_records_drive_the_walk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c21.csv");
    std::fs::write(&path, "0\n1\n0\n0\n0\n0\n0\n1\n").unwrap();
    let b = parse_measurement_csv(&path, Some(4)).unwrap();
    let walk = walk_from_bits(&b).unwrap();
    assert_eq!(walk.indices(), &[0, 1, 0, -1]);
    assert_eq!(walk.final_index(), 0);
    let names: Vec<&str> = walk.indices().iter().map(|&i| scale_pitch(i, &ScaleRing::eb_dorian()).name()).collect();
    assert_eq!(names, ["Eb", "F", "Eb", "Db"]);
    assert!(parse_measurement_csv(&path, Some(5)).is_err());
}
