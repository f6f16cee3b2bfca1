//! Run manifests: enough to re-execute a command and check that it
//! reproduces the same bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: String,
    pub command: String,
    /// Command line without the program name.
    pub args: Vec<String>,
    pub params: serde_json::Value,
    /// Decimal string; seeds may exceed the JSON double range.
    pub seed: Option<String>,
    pub input_files: Vec<FileRecord>,
    pub output_files: Vec<FileRecord>,
    pub exit_code: i32,
    pub tool_version: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn manifest_path(stem: &Path) -> std::path::PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(".manifest.json");
    s.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
