//! `key = value` benchmark configuration files and their merge with
//! command-line overrides.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{BenchConfig, ImageSource};
use crate::error::{Error, Result};
use crate::metrics::MetricsMode;
use crate::pipelines::{Method, MethodConfig, MrbfSchedule, SigmaMode};

/// Raw settings, all optional so a file and flags can be layered.
///
/// Keys match the long command-line flags: `images`, `sigmas`, `methods`,
/// `levels`, `trials`, `seed`, `out`, `save-images`, `metrics`, `jobs`,
/// `timing`, `sigma-mode`, `mrbf-schedule`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchSettings {
    pub images: Option<Vec<String>>,
    pub sigmas: Option<Vec<f64>>,
    pub methods: Option<Vec<Method>>,
    pub levels: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub save_images: Option<PathBuf>,
    pub metrics: Option<MetricsMode>,
    pub jobs: Option<usize>,
    pub timing: Option<bool>,
    pub sigma_mode: Option<SigmaMode>,
    pub mrbf_schedule: Option<MrbfSchedule>,
}

/// Splits a comma-separated list and parses each entry.
pub fn parse_list<T: FromStr>(value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|e| Error::Config(format!("bad list entry {s:?}: {e}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::Config(format!("bad value {value:?} for {key}: {e}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config(format!("bad boolean {value:?} for {key}"))),
    }
}

pub fn parse_sigma_mode(value: &str) -> Result<SigmaMode> {
    match value {
        "estimated" => Ok(SigmaMode::Estimated),
        "oracle" => Ok(SigmaMode::Oracle),
        _ => Err(Error::Config(format!("unknown sigma mode {value:?}"))),
    }
}

pub fn parse_schedule(value: &str) -> Result<MrbfSchedule> {
    match value {
        "every-level" => Ok(MrbfSchedule::EveryLevel),
        "coarsest-only" => Ok(MrbfSchedule::CoarsestOnly),
        _ => Err(Error::Config(format!("unknown MRBF schedule {value:?}"))),
    }
}

/// Parses `key = value` lines. Blank lines and `#` comments are ignored.
pub fn parse_config_file(text: &str) -> Result<BenchSettings> {
    let mut s = BenchSettings::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "images" => s.images = Some(parse_list(value)?),
            "sigmas" => s.sigmas = Some(parse_list(value)?),
            "methods" => s.methods = Some(parse_list(value)?),
            "levels" => s.levels = Some(parse_one(key, value)?),
            "trials" => s.trials = Some(parse_one(key, value)?),
            "seed" => s.seed = Some(parse_one(key, value)?),
            "out" => s.out = Some(PathBuf::from(value)),
            "save-images" => s.save_images = Some(PathBuf::from(value)),
            "metrics" => s.metrics = Some(value.parse()?),
            "jobs" => s.jobs = Some(parse_one(key, value)?),
            "timing" => s.timing = Some(parse_bool(key, value)?),
            "sigma-mode" => s.sigma_mode = Some(parse_sigma_mode(value)?),
            "mrbf-schedule" => s.mrbf_schedule = Some(parse_schedule(value)?),
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown key {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(s)
}

impl BenchSettings {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        parse_config_file(&text)
    }

    /// Fields set in `overrides` replace those in `self`.
    pub fn merged(self, overrides: BenchSettings) -> BenchSettings {
        BenchSettings {
            images: overrides.images.or(self.images),
            sigmas: overrides.sigmas.or(self.sigmas),
            methods: overrides.methods.or(self.methods),
            levels: overrides.levels.or(self.levels),
            trials: overrides.trials.or(self.trials),
            seed: overrides.seed.or(self.seed),
            out: overrides.out.or(self.out),
            save_images: overrides.save_images.or(self.save_images),
            metrics: overrides.metrics.or(self.metrics),
            jobs: overrides.jobs.or(self.jobs),
            timing: overrides.timing.or(self.timing),
            sigma_mode: overrides.sigma_mode.or(self.sigma_mode),
            mrbf_schedule: overrides.mrbf_schedule.or(self.mrbf_schedule),
        }
    }

    /// Resolves image entries (directories expand to their sorted `*.pgm`
    /// files) and fills defaults.
    pub fn into_config(self) -> Result<BenchConfig> {
        let entries = self
            .images
            .ok_or_else(|| Error::Config("no images given".into()))?;
        let images = expand_images(&entries)?;
        let methods = self.methods.unwrap_or_else(|| Method::ALL.to_vec());
        let method_configs = methods
            .into_iter()
            .map(|m| {
                let mut c = MethodConfig::new(m);
                if let Some(l) = self.levels {
                    c.levels = l;
                }
                if let Some(mode) = self.sigma_mode {
                    c.sigma_mode = mode;
                }
                if let Some(s) = self.mrbf_schedule {
                    c.mrbf_schedule = s;
                }
                c
            })
            .collect();
        let mut config = BenchConfig::new(images, method_configs);
        if let Some(s) = self.sigmas {
            config.sigmas = s;
        }
        if let Some(t) = self.trials {
            config.trials = t;
        }
        if let Some(seed) = self.seed {
            config.master_seed = seed;
        }
        config.save_images_dir = self.save_images;
        if let Some(m) = self.metrics {
            config.metrics_mode = m;
        }
        config.jobs = self.jobs;
        config.record_runtime = self.timing.unwrap_or(false);
        config.validate()?;
        Ok(config)
    }
}

fn expand_images(entries: &[String]) -> Result<Vec<ImageSource>> {
    let mut out = Vec::new();
    for entry in entries {
        let path = PathBuf::from(entry);
        if path.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(&path)
                .map_err(|e| Error::io(&path, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x.eq_ignore_ascii_case("pgm")))
                .collect();
            files.sort();
            if files.is_empty() {
                return Err(Error::Config(format!(
                    "no .pgm files in {}",
                    path.display()
                )));
            }
            out.extend(files.into_iter().map(ImageSource::Path));
        } else {
            out.push(ImageSource::Path(path));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let text = "\
# sweep
images = a.pgm, b.pgm
sigmas = 10,20
methods = visu,collab,mrbf
levels = 2
trials = 3
seed = 42
out = r.csv   # trailing comment
save-images = dump
metrics = unclamped
jobs = 2
timing = yes
sigma-mode = oracle
mrbf-schedule = coarsest-only
";
        let s = parse_config_file(text).unwrap();
        assert_eq!(
            s.images.as_deref(),
            Some(&["a.pgm".to_string(), "b.pgm".to_string()][..])
        );
        assert_eq!(s.sigmas, Some(vec![10.0, 20.0]));
        assert_eq!(
            s.methods,
            Some(vec![Method::Visu, Method::Collaborative, Method::Mrbf])
        );
        assert_eq!(
            (s.levels, s.trials, s.seed, s.jobs),
            (Some(2), Some(3), Some(42), Some(2))
        );
        assert_eq!(s.out, Some(PathBuf::from("r.csv")));
        assert_eq!(s.metrics, Some(MetricsMode::Unclamped));
        assert_eq!(s.timing, Some(true));
        assert_eq!(s.sigma_mode, Some(SigmaMode::Oracle));
        assert_eq!(s.mrbf_schedule, Some(MrbfSchedule::CoarsestOnly));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_config_file("levels 3").is_err());
        assert!(parse_config_file("colour = red").is_err());
        assert!(parse_config_file("methods = visu,wiener").is_err());
        assert!(parse_config_file("trials = many").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = parse_config_file("trials = 3\nlevels = 2").unwrap();
        let flags = BenchSettings {
            trials: Some(9),
            ..Default::default()
        };
        let m = file.merged(flags);
        assert_eq!((m.trials, m.levels), (Some(9), Some(2)));
    }

    #[test]
    fn directories_expand_sorted() {
        let dir = tempfile::tempdir().unwrap();
        for name in ["b.pgm", "a.pgm", "notes.txt"] {
            fs::write(dir.path().join(name), b"").unwrap();
        }
        let settings = BenchSettings {
            images: Some(vec![dir.path().display().to_string()]),
            ..Default::default()
        };
        let config = settings.into_config().unwrap();
        let ids: Vec<_> = config.images.iter().map(ImageSource::id).collect();
        assert_eq!(ids, vec!["a", "b"]);
        assert_eq!(config.methods.len(), 7);
        assert!(!config.record_runtime);
    }
}
