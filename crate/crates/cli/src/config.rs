//! Run configuration: flags, an optional JSON file, and the resolved echo.
//!
//! A config file looks like
//! `{"command": "bottle", "params": {"n": 2, "r0p": 0.5}, "output": {"stem": "b"}}`.
//! Every key is optional; parameter names match the long flags. Flags win.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

pub const OUT_DIR_ENV: &str = "IMCF_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct OutputArgs {
    /// File name stem for the outputs (defaults to the command name).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
    /// Output formats, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Vec<Format>>,
}

/// Output settings after defaults; the directory is not echoed so that
/// runs into different directories produce identical files.
#[derive(Debug, Clone, Serialize)]
pub struct Output {
    #[serde(skip)]
    pub dir: PathBuf,
    pub stem: String,
    pub format: Vec<Format>,
}

impl Output {
    pub fn path(&self, format: Format) -> PathBuf {
        self.dir.join(format!("{}.{}", self.stem, format.extension()))
    }

    pub fn wants(&self, format: Format) -> bool {
        self.format.contains(&format)
    }

    /// Same settings with `-suffix` appended to the stem.
    pub fn suffixed(&self, suffix: &str) -> Self {
        Self {
            stem: format!("{}-{suffix}", self.stem),
            ..self.clone()
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    command: Option<String>,
    #[serde(default)]
    params: Option<Value>,
    #[serde(default)]
    output: Option<OutputArgs>,
}

/// Parsed config file, checked against the command being run.
#[derive(Debug, Default)]
pub struct FileConfig {
    params: Map<String, Value>,
    output: OutputArgs,
}

pub fn load(path: Option<&Path>, command: &str) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: ConfigFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    if let Some(c) = &file.command {
        if c != command {
            return Err(CliError::Config(format!(
                "{} is for command `{c}`, not `{command}`",
                path.display()
            )));
        }
    }
    let params = match file.params {
        None => Map::new(),
        Some(Value::Object(m)) => m,
        Some(_) => return Err(CliError::Config("`params` must be an object".into())),
    };
    Ok(FileConfig {
        params,
        output: file.output.unwrap_or_default(),
    })
}

/// Overlays the flags that were given on the file's parameters. Unknown
/// file keys are rejected by `T`'s own `deny_unknown_fields`.
pub fn merge<T: Serialize + DeserializeOwned>(flags: &T, file: &FileConfig) -> Result<T, CliError> {
    let mut merged = file.params.clone();
    let Value::Object(given) = serde_json::to_value(flags).map_err(|e| CliError::Config(e.to_string()))? else {
        unreachable!("parameter structs serialize to objects");
    };
    for (k, v) in given {
        if !v.is_null() {
            merged.insert(k, v);
        }
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| CliError::Config(e.to_string()))
}

pub fn output(
    flags: &OutputArgs,
    file: &FileConfig,
    dir: PathBuf,
    command: &str,
    default_formats: &[Format],
    supported: &[Format],
) -> Result<Output, CliError> {
    let stem = flags
        .stem
        .clone()
        .or_else(|| file.output.stem.clone())
        .unwrap_or_else(|| command.to_string());
    if stem.is_empty() || stem.contains(['/', '\\']) {
        return Err(CliError::Config(format!("bad output stem {stem:?}")));
    }
    let mut format = flags
        .format
        .clone()
        .or_else(|| file.output.format.clone())
        .unwrap_or_else(|| default_formats.to_vec());
    format.sort();
    format.dedup();
    if let Some(bad) = format.iter().find(|f| !supported.contains(f)) {
        return Err(CliError::Config(format!(
            "`{command}` cannot write {}",
            bad.extension()
        )));
    }
    Ok(Output { dir, stem, format })
}

/// The echo written into every output header.
pub fn echo<P: Serialize>(command: &str, params: &P, output: &Output) -> Value {
    serde_json::json!({
        "command": command,
        "params": params,
        "output": output,
    })
}
