//! Output files and the run manifest written next to them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Named output files plus a short human summary for stdout.
#[derive(Default)]
pub struct Artifacts {
    pub files: Vec<(String, String)>,
    pub summary: String,
}

impl Artifacts {
    pub fn file(mut self, name: &str, content: String) -> Self {
        self.files.push((name.to_string(), content));
        self
    }

    pub fn line(mut self, text: impl AsRef<str>) -> Self {
        self.summary.push_str(text.as_ref());
        self.summary.push('\n');
        self
    }
}

#[derive(Serialize)]
pub struct Manifest<'a> {
    pub subcommand: &'a str,
    pub argv: Vec<String>,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub timestamp: String,
    /// sha256 of each output file, keyed by file name.
    pub outputs: BTreeMap<String, String>,
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Write every artifact into `dir` followed by `manifest.json`.
pub fn write_all(
    dir: &Path,
    artifacts: &Artifacts,
    subcommand: &str,
    inputs: Vec<String>,
    seed: Option<u64>,
) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut outputs = BTreeMap::new();
    for (name, content) in &artifacts.files {
        std::fs::write(dir.join(name), content)?;
        outputs.insert(name.clone(), sha256_hex(content.as_bytes()));
    }
    let manifest = Manifest {
        subcommand,
        argv: std::env::args().collect(),
        inputs,
        seed,
        version: env!("CARGO_PKG_VERSION"),
        timestamp: chrono::Utc::now().to_rfc3339(),
        outputs,
    };
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n")?;
    Ok(path)
}
