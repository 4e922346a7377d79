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

//! Resolution of motif and model arguments, and how library errors map to
//! exit codes.

use std::fmt;
use std::fs;

use motif_poisson::{
    BoundError, CountError, Error, GraphonSpec, Model, ModelError, Motif, MotifError, MotifFamily,
    SbmParams,
};
use serde_json::Value;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<MotifError> for CliError {
    fn from(e: MotifError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        let code = match e {
            BoundError::NotStrictlyBalanced => EXIT_PRECONDITION,
            _ => EXIT_INVALID,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Bound(b) => b.into(),
            other => CliError::invalid(other.to_string()),
        }
    }
}

pub fn read_file(path: &str, what: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {what} {path:?}: {e}")))
}

/// `family:v` for a builtin, otherwise a path to an edge-list file.
pub fn resolve_motif(spec: &str) -> Result<Motif, CliError> {
    if let Some((family, _)) = spec.split_once(':') {
        if family.parse::<MotifFamily>().is_ok() {
            return Ok(Motif::parse_builtin(spec)?);
        }
    }
    Ok(Motif::parse_edge_list(&read_file(spec, "motif file")?)?)
}

/// Inline JSON (anything starting with `{`) or a path to a JSON file.
pub fn model_json(spec: &str) -> Result<Value, CliError> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        read_file(spec, "model file")?
    };
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("model JSON: {e}")))
}

/// Dispatches on the `family` key: `sbm` (or no family with a `pi` matrix),
/// `erdos_renyi` with `p`, or one of the graphon families.
pub fn parse_model(value: &Value) -> Result<Model, CliError> {
    let family = value.get("family").and_then(Value::as_str);
    let bad = |e: serde_json::Error| CliError::invalid(format!("model parameters: {e}"));
    match family {
        Some("sbm") | None if value.get("pi").is_some() => {
            Ok(Model::Sbm(serde_json::from_value::<SbmParams>(value.clone()).map_err(bad)?))
        }
        Some("erdos_renyi") => {
            let p = value
                .get("p")
                .and_then(Value::as_f64)
                .ok_or_else(|| CliError::invalid("erdos_renyi model needs a numeric \"p\""))?;
            Ok(Model::Sbm(SbmParams::erdos_renyi(p)?))
        }
        Some(_) => Ok(Model::Graphon(serde_json::from_value::<GraphonSpec>(value.clone()).map_err(bad)?)),
        None => Err(CliError::invalid("model JSON needs a \"family\" key")),
    }
}

pub fn resolve_model(spec: &str) -> Result<Model, CliError> {
    parse_model(&model_json(spec)?)
}
