use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Geometry, FORMAT_VERSION};
use crate::error::{Error, Result};

#[derive(Serialize)]
struct DocumentOut<'a> {
    version: u64,
    #[serde(flatten)]
    geometry: &'a Geometry,
}

#[derive(Deserialize)]
struct VersionProbe {
    version: u64,
}

#[derive(Deserialize)]
struct DocumentIn {
    #[allow(dead_code)]
    version: u64,
    #[serde(flatten)]
    geometry: Geometry,
}

/// Check the `version` field before decoding the body, so an unknown version
/// is reported as such rather than as a schema mismatch.
pub(crate) fn check_version(text: &str, expected: u64) -> Result<()> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let probe: VersionProbe = serde_path_to_error::deserialize(de).map_err(Error::from_json)?;
    if probe.version != expected {
        return Err(Error::Version {
            found: probe.version,
            expected,
        });
    }
    Ok(())
}

pub fn from_str(text: &str) -> Result<Geometry> {
    check_version(text, FORMAT_VERSION)?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: DocumentIn = serde_path_to_error::deserialize(de).map_err(Error::from_json)?;
    Ok(doc.geometry)
}

pub fn to_string(g: &Geometry) -> String {
    crate::textfmt::to_string(&DocumentOut {
        version: FORMAT_VERSION,
        geometry: g,
    })
}

pub fn load(path: impl AsRef<Path>) -> Result<Geometry> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_str(&text)
}

pub fn save(g: &Geometry, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_string(g)).map_err(|e| Error::io(path, e))
}
