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

//! Exact rationals travel through JSON as `"p/q"` strings.

use num_rational::Rational64;
use serde::{de, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(value: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Integer(i64),
    Text(String),
}

/// Accepts `"p/q"`, `"p"` or a bare integer.
pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
    match Repr::deserialize(d)? {
        Repr::Integer(i) => Ok(Rational64::from_integer(i)),
        Repr::Text(text) => text.trim().parse().map_err(de::Error::custom),
    }
}

pub mod map {
    use std::collections::BTreeMap;

    use num_rational::Rational64;
    use serde::ser::SerializeMap;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(
        value: &BTreeMap<usize, Rational64>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(value.len()))?;
        for (k, v) in value {
            map.serialize_entry(k, &v.to_string())?;
        }
        map.end()
    }
}
