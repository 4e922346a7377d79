// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `--config` merging and the run manifest embedded in every report.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::inputs::{read_file, CliError};

/// Keys that change how a run executes or where it writes, but not what it
/// computes. They stay out of the hashed configuration.
const EXECUTION_ONLY: &[&str] = &["config", "threads", "out", "csv", "record_time"];

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub config_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_file: Option<String>,
    /// Keys whose value came from the config file.
    pub from_config_file: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub started_unix_seconds: Option<u64>,
}

pub struct Merged<T> {
    pub args: T,
    pub manifest: Manifest,
}

/// Overlays the JSON object in `config_path` on the command-line arguments
/// (the file wins) and builds the manifest for the result.
pub fn merge<T: Serialize + DeserializeOwned>(
    command: &'static str,
    args: T,
    config_path: Option<&str>,
    record_time: bool,
) -> Result<Merged<T>, CliError> {
    let mut value = serde_json::to_value(&args).expect("arguments serialize");
    let mut from_file = Vec::new();
    if let Some(path) = config_path {
        let text = read_file(path, "config file")?;
        let overlay: Map<String, Value> = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("config file {path:?}: {e}")))?;
        let fields = value.as_object_mut().expect("arguments are a struct");
        for (key, mut v) in overlay {
            let key = key.replace('-', "_");
            if !fields.contains_key(&key) || key == "config" {
                return Err(CliError::usage(format!("config file {path:?}: unknown key {key:?}")));
            }
            // Structured models may be written inline as objects.
            if key == "model" && v.is_object() {
                v = Value::String(v.to_string());
            }
            fields.insert(key.clone(), v);
            from_file.push(key);
        }
    }
    let args: T = serde_json::from_value(value.clone())
        .map_err(|e| CliError::usage(format!("config file: {e}")))?;

    let mut config = value;
    let fields = config.as_object_mut().expect("arguments are a struct");
    for key in EXECUTION_ONLY {
        fields.remove(*key);
    }
    let seed = fields.get("seed").and_then(Value::as_u64);
    let canonical = serde_json::to_string(&config).expect("config serializes");
    let config_sha256 = hex::encode(Sha256::digest(canonical.as_bytes()));
    let started_unix_seconds = record_time.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    Ok(Merged {
        args,
        manifest: Manifest {
            tool: "motif-poisson",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            config_sha256,
            config_file: config_path.map(str::to_string),
            from_config_file: from_file,
            seed,
            started_unix_seconds,
        },
    })
}
