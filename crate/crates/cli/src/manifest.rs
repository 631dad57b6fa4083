use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Human-readable `key = value` record of one artifact-producing run.
pub struct RunManifest {
    entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        let argv: Vec<String> = std::env::args().collect();
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut m = RunManifest { entries: Vec::new() };
        m.set("command", command);
        m.set("tool_version", concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")));
        m.set("timestamp_unix", timestamp);
        m.set("argv", argv.join(" "));
        m
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn output(&mut self, path: &Path) -> &mut Self {
        self.set("output", path.display())
    }

    pub fn write(&self, path: &Path) -> Result<PathBuf, String> {
        let body: String = self.entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok(path.to_path_buf())
    }
}
