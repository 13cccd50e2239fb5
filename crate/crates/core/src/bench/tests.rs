use std::collections::BTreeSet;

use super::{
    derive_seed, errors, rows_to_csv, run_benchmark, BenchConfig, ImageSource, CSV_HEADER,
};
use crate::{save_pgm, synth, Image, Method, MethodConfig};

fn memory(id: &str, image: Image) -> ImageSource {
    ImageSource::Memory {
        id: id.into(),
        image,
    }
}

fn all_methods() -> Vec<MethodConfig> {
    Method::ALL.iter().map(|&m| MethodConfig::new(m)).collect()
}

#[test]
fn one_image_one_sigma_one_trial_gives_seven_rows() {
    let mut cfg = BenchConfig::new(vec![memory("shapes", synth::shapes(64))], all_methods());
    cfg.sigmas = vec![20.0];
    cfg.trials = 1;
    let rows = run_benchmark(&cfg).unwrap();
    assert_eq!(rows.len(), 7);
    let names: Vec<&str> = rows.iter().map(|r| r.method.as_str()).collect();
    assert_eq!(
        names,
        [
            "visu",
            "sure",
            "bayes",
            "neigh",
            "bilateral",
            "collab",
            "mrbf"
        ]
    );
    assert!(rows
        .iter()
        .all(|r| r.outcome.is_ok() && r.runtime_ms == 0.0));
}

#[test]
fn csv_is_byte_identical_across_runs_and_worker_counts() {
    let images = vec![
        memory("b", synth::shapes(64)),
        memory("a", synth::texture_image(64, 3)),
    ];
    let mut cfg = BenchConfig::new(images, all_methods());
    cfg.sigmas = vec![10.0, 30.0];
    cfg.trials = 2;
    let first = rows_to_csv(&run_benchmark(&cfg).unwrap());
    cfg.jobs = Some(3);
    let second = rows_to_csv(&run_benchmark(&cfg).unwrap());
    assert_eq!(first, second);

    let mut lines = first.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.count(), 2 * 2 * 7 * 2);
    // sorted by image id first
    assert!(first.lines().nth(1).unwrap().starts_with("a,"));
}

#[test]
fn trials_get_distinct_seeds() {
    let mut cfg = BenchConfig::new(
        vec![memory("s", synth::shapes(32))],
        vec![MethodConfig::new(Method::Bayes)],
    );
    cfg.sigmas = vec![10.0, 20.0];
    cfg.trials = 5;
    let rows = run_benchmark(&cfg).unwrap();
    let seeds: BTreeSet<u64> = rows.iter().map(|r| r.seed).collect();
    assert_eq!(seeds.len(), rows.len());
    for r in &rows {
        assert_eq!(
            r.seed,
            derive_seed(cfg.master_seed, "s", r.sigma, "bayes", r.trial)
        );
    }
}

#[test]
fn seed_derivation_depends_on_every_key_field() {
    let base = derive_seed(1, "img", 10.0, "visu", 0);
    assert_eq!(base, derive_seed(1, "img", 10.0, "visu", 0));
    for other in [
        derive_seed(2, "img", 10.0, "visu", 0),
        derive_seed(1, "img2", 10.0, "visu", 0),
        derive_seed(1, "img", 20.0, "visu", 0),
        derive_seed(1, "img", 10.0, "sure", 0),
        derive_seed(1, "img", 10.0, "visu", 1),
    ] {
        assert_ne!(base, other);
    }
}

#[test]
fn failing_cells_become_error_rows() {
    let dir = tempfile::tempdir().unwrap();
    let images = vec![
        ImageSource::Path(dir.path().join("missing.pgm")),
        memory("odd", Image::filled(36, 36, 50.0)),
    ];
    let methods = vec![
        MethodConfig::new(Method::Bilateral),
        MethodConfig::new(Method::Visu),
    ];
    let mut cfg = BenchConfig::new(images, methods);
    cfg.sigmas = vec![10.0];
    cfg.trials = 1;
    let rows = run_benchmark(&cfg).unwrap();
    assert_eq!(rows.len(), 4);
    let failed: Vec<(&str, &str)> = errors(&rows)
        .map(|(r, _)| (r.image_id.as_str(), r.method.as_str()))
        .collect();
    // 36 is not divisible by 2^3, so only the bilateral cell on "odd" succeeds
    assert_eq!(
        failed,
        [
            ("missing", "bilateral"),
            ("missing", "visu"),
            ("odd", "visu")
        ]
    );

    let csv = rows_to_csv(&rows);
    let missing_line = csv.lines().nth(1).unwrap();
    assert!(missing_line.contains(",,,,,,"), "{missing_line}");
}

#[test]
fn invalid_config_is_rejected() {
    let mut cfg = BenchConfig::new(vec![memory("s", synth::shapes(32))], all_methods());
    cfg.trials = 0;
    assert!(run_benchmark(&cfg).is_err());
    cfg.trials = 1;
    cfg.sigmas = vec![-1.0];
    assert!(run_benchmark(&cfg).is_err());
    cfg.sigmas = vec![10.0];
    cfg.methods.clear();
    assert!(run_benchmark(&cfg).is_err());
}

#[test]
fn saves_denoised_images_and_reads_pgm_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ramp.pgm");
    save_pgm(&synth::gradient(32, 32), &input).unwrap();
    let dump = dir.path().join("out");
    let mut cfg = BenchConfig::new(
        vec![ImageSource::Path(input)],
        vec![MethodConfig::new(Method::Neigh)],
    );
    cfg.sigmas = vec![15.0];
    cfg.trials = 2;
    cfg.save_images_dir = Some(dump.clone());
    let rows = run_benchmark(&cfg).unwrap();
    assert!(rows
        .iter()
        .all(|r| r.image_id == "ramp" && r.outcome.is_ok()));
    for t in 0..2 {
        let p = dump.join(format!("ramp_s15_neigh_t{t}.pgm"));
        assert_eq!(crate::load_pgm(&p).unwrap().dims(), (32, 32));
    }
}

#[test]
fn timing_flag_fills_runtime_column() {
    let mut cfg = BenchConfig::new(
        vec![memory("s", synth::shapes(64))],
        vec![MethodConfig::new(Method::Bilateral)],
    );
    cfg.sigmas = vec![10.0];
    cfg.trials = 1;
    cfg.record_runtime = true;
    let rows = run_benchmark(&cfg).unwrap();
    assert!(rows[0].runtime_ms > 0.0);
}
