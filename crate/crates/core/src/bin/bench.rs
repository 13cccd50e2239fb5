use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wavelet_denoise::bench::{
    self, parse_list, run_benchmark, summarize, BenchSettings, PlotMetric,
};
use wavelet_denoise::{
    add_awgn, denoise, evaluate, load_pgm, save_pgm, synth, Error, Method, MethodConfig,
    MetricsMode, NoiseModel, Result,
};

#[derive(Parser)]
#[command(
    name = "bench",
    about = "Wavelet and bilateral denoising benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep images x sigmas x methods x trials and write CSV reports.
    Run(RunArgs),
    /// Write the synthetic test images as PGM files.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Add noise to one image, denoise it and report metrics.
    Denoise {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        method: Method,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Also write the noisy input here.
        #[arg(long)]
        noisy_out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated PGM files and/or directories.
    #[arg(long)]
    images: Option<String>,
    #[arg(long)]
    sigmas: Option<String>,
    #[arg(long)]
    methods: Option<String>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    save_images: Option<PathBuf>,
    #[arg(long)]
    metrics: Option<MetricsMode>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Record wall time per trial (makes the CSV non-reproducible).
    #[arg(long)]
    timing: bool,
    /// estimated | oracle
    #[arg(long)]
    sigma_mode: Option<String>,
    /// every-level | coarsest-only
    #[arg(long)]
    mrbf_schedule: Option<String>,
}

impl RunArgs {
    fn settings(&self) -> Result<BenchSettings> {
        let base = match &self.config {
            Some(p) => BenchSettings::from_file(p)?,
            None => BenchSettings::default(),
        };
        let flags = BenchSettings {
            images: self.images.as_deref().map(parse_list).transpose()?,
            sigmas: self.sigmas.as_deref().map(parse_list).transpose()?,
            methods: self.methods.as_deref().map(parse_list).transpose()?,
            levels: self.levels,
            trials: self.trials,
            seed: self.seed,
            out: self.out.clone(),
            save_images: self.save_images.clone(),
            metrics: self.metrics,
            jobs: self.jobs,
            timing: self.timing.then_some(true),
            sigma_mode: self
                .sigma_mode
                .as_deref()
                .map(bench::parse_sigma_mode)
                .transpose()?,
            mrbf_schedule: self
                .mrbf_schedule
                .as_deref()
                .map(bench::parse_schedule)
                .transpose()?,
        };
        Ok(base.merged(flags))
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn run(args: RunArgs) -> Result<()> {
    let settings = args.settings()?;
    let out = settings
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("bench.csv"));
    let config = settings.into_config()?;
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Config(format!("{}: {e}", dir.display())))?;
    }
    if let Some(m) = config.methods.first() {
        eprintln!(
            "metrics: {}, noise sigma: {:?}, mrbf schedule: {:?}",
            config.metrics_mode.name(),
            m.sigma_mode,
            m.mrbf_schedule
        );
    }
    let rows = run_benchmark(&config)?;
    bench::write_csv(&rows, &out)?;
    for (row, msg) in bench::errors(&rows) {
        eprintln!(
            "error: {} sigma={} {} trial {}: {msg}",
            row.image_id, row.sigma, row.method, row.trial
        );
    }
    let summary = summarize(&rows)?;
    write(&sibling(&out, "_summary.csv"), &summary.to_csv())?;
    let psnr = summary.plot_table(PlotMetric::Psnr);
    write(&sibling(&out, "_psnr.dat"), &psnr)?;
    write(
        &sibling(&out, "_uqi.dat"),
        &summary.plot_table(PlotMetric::Uqi),
    )?;
    print!("{psnr}");
    eprintln!("{} rows -> {}", rows.len(), out.display());
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Synth { out, seed } => (|| {
            std::fs::create_dir_all(&out)
                .map_err(|e| Error::Config(format!("{}: {e}", out.display())))?;
            for (name, image) in synth::standard_set(seed) {
                let path = out.join(format!("{name}.pgm"));
                save_pgm(&image, &path)?;
                println!("{}", path.display());
            }
            Ok(())
        })(),
        Command::Denoise {
            input,
            method,
            sigma,
            out,
            seed,
            levels,
            noisy_out,
        } => (|| {
            let clean = load_pgm(&input)?;
            let noisy = add_awgn(&clean, &NoiseModel::new(sigma, seed)?);
            if let Some(p) = &noisy_out {
                save_pgm(&noisy, p)?;
            }
            let config = MethodConfig::new(method).with_levels(levels);
            let restored = denoise(&noisy, &config, Some(sigma))?;
            save_pgm(&restored, &out)?;
            let before = evaluate(&clean, &noisy, MetricsMode::Clamped)?;
            let after = evaluate(&clean, &restored, MetricsMode::Clamped)?;
            println!(
                "noisy     psnr {:.3} dB  uqi {:.4}",
                before.psnr_db, before.uqi
            );
            println!(
                "{:<9} psnr {:.3} dB  uqi {:.4}",
                method.name(),
                after.psnr_db,
                after.uqi
            );
            Ok(())
        })(),
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
