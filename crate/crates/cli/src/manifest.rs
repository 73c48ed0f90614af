use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Record of one invocation. Equal manifests mean byte-identical outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub args: Vec<String>,
    pub version: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn file_digests(paths: &[PathBuf]) -> Result<BTreeMap<String, String>> {
    paths
        .iter()
        .map(|p| {
            let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            Ok((p.display().to_string(), digest(&bytes)))
        })
        .collect()
}

impl RunManifest {
    pub fn new(
        subcommand: &str,
        args: Vec<String>,
        inputs: &[PathBuf],
        outputs: &[PathBuf],
        stdout: &str,
    ) -> Result<Self> {
        let mut out = file_digests(outputs)?;
        out.insert("<stdout>".into(), digest(stdout.as_bytes()));
        Ok(RunManifest {
            subcommand: subcommand.into(),
            args,
            version: env!("CARGO_PKG_VERSION").into(),
            inputs: file_digests(inputs)?,
            outputs: out,
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}
