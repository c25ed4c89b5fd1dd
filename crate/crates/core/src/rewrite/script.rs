use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{rewrite, semantic_check, Check, Move};
use crate::error::{Error, Result};
use crate::geometry::{self, volume, Geometry};
use crate::verify::{verify_with, BuildOptions};

pub const SCRIPT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    #[serde(rename = "move")]
    pub mv: Move,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub annotation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveScript {
    /// Geometry file the script starts from, relative to the script.
    pub initial: String,
    pub moves: Vec<MoveRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_final_volume: Option<u64>,
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    version: u64,
    #[serde(flatten)]
    script: &'a MoveScript,
}

#[derive(Deserialize)]
struct DocumentIn {
    #[allow(dead_code)]
    version: u64,
    #[serde(flatten)]
    script: MoveScript,
}

impl MoveScript {
    pub fn new(initial: impl Into<String>) -> Self {
        MoveScript {
            initial: initial.into(),
            moves: Vec::new(),
            expected_final_volume: None,
        }
    }

    pub fn push(&mut self, mv: Move, annotation: impl Into<String>) {
        self.moves.push(MoveRecord {
            mv,
            annotation: annotation.into(),
        });
    }

    pub fn from_str(text: &str) -> Result<Self> {
        geometry::check_version(text, SCRIPT_VERSION)?;
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: DocumentIn = serde_path_to_error::deserialize(de).map_err(Error::from_json)?;
        Ok(doc.script)
    }

    pub fn to_string(&self) -> String {
        crate::textfmt::to_string(&DocumentOut {
            version: SCRIPT_VERSION,
            script: self,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_str(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_string()).map_err(|e| Error::io(path, e))
    }

    /// Where the initial geometry lives for a script stored in `dir`.
    pub fn initial_path(&self, dir: &Path) -> PathBuf {
        dir.join(&self.initial)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepCheck {
    Passed,
    /// Only structural validation ran.
    Structural,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub index: usize,
    pub kind: String,
    pub annotation: String,
    pub volume_before: u64,
    pub volume_after: u64,
    pub check: StepCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub initial_volume: u64,
    pub steps: Vec<StepReport>,
    pub final_volume: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_final_volume: Option<u64>,
}

impl ReplayReport {
    pub fn all_passed(&self) -> bool {
        self.steps.iter().all(|s| s.check == StepCheck::Passed)
    }

    pub fn meets_expectation(&self) -> bool {
        self.expected_final_volume.is_none_or(|v| v == self.final_volume)
    }
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>4}  {:<24} {:>7} {:>7}  {:<10} note", "step", "move", "before", "after", "check")?;
        for s in &self.steps {
            let check = match s.check {
                StepCheck::Passed => "semantic",
                StepCheck::Structural => "structural",
            };
            writeln!(
                f,
                "{:>4}  {:<24} {:>7} {:>7}  {:<10} {}",
                s.index, s.kind, s.volume_before, s.volume_after, check, s.annotation
            )?;
        }
        write!(f, "initial volume {}, final volume {}", self.initial_volume, self.final_volume)?;
        if let Some(v) = self.expected_final_volume {
            write!(f, " (expected {v})")?;
        }
        Ok(())
    }
}

/// Replay `script` from `initial`, stopping at the first failing move.
pub fn replay(
    script: &MoveScript,
    initial: &Geometry,
    check: Check,
    opts: BuildOptions,
) -> Result<(ReplayReport, Geometry)> {
    let mut g = initial.clone();
    let initial_volume = volume(&g)?;
    let mut map = match check {
        Check::Semantic => Some(verify_with(&g, opts)?),
        Check::Structural => None,
    };
    let mut steps = Vec::with_capacity(script.moves.len());
    let mut current = initial_volume;
    for (index, rec) in script.moves.iter().enumerate() {
        let wrap = |e: Error| Error::Replay {
            index,
            source: Box::new(e),
        };
        let next = rewrite(&g, &rec.mv).map_err(wrap)?;
        if let Some(before) = &map {
            map = Some(semantic_check(before, &next, &rec.mv, opts).map_err(wrap)?);
        }
        let after = volume(&next).map_err(wrap)?;
        steps.push(StepReport {
            index,
            kind: rec.mv.name().to_string(),
            annotation: rec.annotation.clone(),
            volume_before: current,
            volume_after: after,
            check: if map.is_some() { StepCheck::Passed } else { StepCheck::Structural },
        });
        current = after;
        g = next;
    }
    let report = ReplayReport {
        initial_volume,
        steps,
        final_volume: current,
        expected_final_volume: script.expected_final_volume,
    };
    Ok((report, g))
}
