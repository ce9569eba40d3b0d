//! Atomic file output and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use fuzzytrust::Error;

/// Accompanies every output set: what produced it, from which config, and
/// which artifacts were written. Written last, so a manifest's presence
/// means the artifacts beside it are complete.
#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    version: &'a str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    replicas: Option<usize>,
    config: serde_json::Value,
    created_unix_ms: u128,
    artifacts: &'a [&'a str],
}

pub struct OutputDir {
    dir: PathBuf,
}

impl OutputDir {
    pub fn create(dir: &Path) -> Result<Self, Error> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
        })
    }

    /// Writes `name` atomically: the content lands in a temporary file that
    /// is renamed into place.
    pub fn write(&self, name: &str, content: &str) -> Result<(), Error> {
        let target = self.dir.join(name);
        let temp = self.dir.join(format!("{name}.tmp"));
        fs::write(&temp, content)?;
        fs::rename(&temp, &target)?;
        Ok(())
    }

    pub fn manifest(
        &self,
        command: &str,
        seed: u64,
        replicas: Option<usize>,
        config: serde_json::Value,
        artifacts: &[&str],
    ) -> Result<(), Error> {
        let manifest = RunManifest {
            command,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            replicas,
            config,
            created_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            artifacts,
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        self.write("manifest.json", &text)
    }
}
