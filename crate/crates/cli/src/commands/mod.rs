pub mod curve;
pub mod flow;
pub mod profile;
pub mod verify;

use std::path::PathBuf;

use rayon::prelude::*;

use crate::config::{self, FileConfig, Format, Output, OutputArgs};
use crate::error::CliError;

/// What every command receives besides its own flags.
pub struct Ctx {
    pub config: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub output: OutputArgs,
}

impl Ctx {
    pub fn load(&self, command: &str) -> Result<FileConfig, CliError> {
        config::load(self.config.as_deref(), command)
    }

    pub fn output(
        &self,
        file: &FileConfig,
        command: &str,
        default_formats: &[Format],
        supported: &[Format],
    ) -> Result<Output, CliError> {
        config::output(&self.output, file, self.out_dir.clone(), command, default_formats, supported)
    }
}

/// Parses `start:stop:count` into `count` evenly spaced values.
pub fn parse_sweep(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Config(format!("sweep must look like start:stop:count, got {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, k] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    if k == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    if k == 1 {
        return Ok(vec![a]);
    }
    Ok((0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect())
}

/// Runs `run` once per swept value in parallel. Each run writes its own
/// files under `<stem>-<index>`; the first failure in sweep order wins.
pub fn sweep<F>(values: &[f64], out: &Output, run: F) -> Result<Vec<String>, CliError>
where
    F: Fn(f64, &Output) -> Result<Vec<String>, CliError> + Sync,
{
    let width = values.len().to_string().len();
    let results: Vec<Result<Vec<String>, CliError>> = values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| run(v, &out.suffixed(&format!("{i:0width$}"))))
        .collect();
    let mut written = Vec::new();
    for r in results {
        written.extend(r?);
    }
    Ok(written)
}
