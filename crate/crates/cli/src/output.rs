//! Run directories are staged next to their destination and renamed into
//! place only after every file has been written.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::error::{config, CliError};

const MANIFEST: &str = "manifest.json";

pub struct RunDir {
    target: PathBuf,
    staging: PathBuf,
    files: Vec<String>,
}

impl RunDir {
    /// Checks the destination without creating anything.
    pub fn plan(target: &Path) -> Result<PathBuf, CliError> {
        if target.exists() && !(target.is_dir() && target.join(MANIFEST).is_file()) {
            return Err(config(format!(
                "{} exists and is not a previous run directory",
                target.display()
            )));
        }
        Ok(target.to_path_buf())
    }

    pub fn create(target: PathBuf) -> Result<Self, CliError> {
        let name = target
            .file_name()
            .ok_or_else(|| config("output path has no final component"))?
            .to_string_lossy()
            .into_owned();
        let parent = match target.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&parent)?;
        let staging = parent.join(format!(".{name}.partial-{}", std::process::id()));
        if staging.exists() {
            fs::remove_dir_all(&staging)?;
        }
        fs::create_dir(&staging)?;
        Ok(Self {
            target,
            staging,
            files: Vec::new(),
        })
    }

    pub fn write(&mut self, rel: &str, contents: &str) -> Result<(), CliError> {
        let path = self.staging.join(rel);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, contents)?;
        self.files.push(rel.to_string());
        Ok(())
    }

    pub fn write_json(&mut self, rel: &str, value: &impl Serialize) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(rel, &text)
    }

    /// Writes the manifest and moves the run into place.
    pub fn commit(mut self, command: &str, seeds: &[u64]) -> Result<PathBuf, CliError> {
        let mut files = self.files.clone();
        files.sort();
        let manifest = json!({
            "tool": env!("CARGO_BIN_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "seeds": seeds,
            "files": files,
        });
        self.write_json(MANIFEST, &manifest)?;
        if self.target.exists() {
            fs::remove_dir_all(&self.target)?;
        }
        fs::rename(&self.staging, &self.target)?;
        Ok(self.target.clone())
    }
}

impl Drop for RunDir {
    fn drop(&mut self) {
        if self.staging.exists() {
            let _ = fs::remove_dir_all(&self.staging);
        }
    }
}
