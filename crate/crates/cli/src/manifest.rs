//! Run manifests and the output directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use chrono::{SecondsFormat, Utc};
use serde::Serialize;
use serde_json::Value;

/// Written next to every output as `<stem>.manifest.json`. Apart from
/// `timestamp` it is a pure function of the command line.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub code_version: String,
    pub timestamp: String,
    /// Tolerance attached to each numeric output column or check.
    pub tolerances: BTreeMap<String, f64>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            code_version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string(),
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
            tolerances: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.parameters.insert(key.to_string(), v);
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.tolerances.insert(key.to_string(), value);
        self
    }
}

pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> anyhow::Result<Self> {
        fs::create_dir_all(root).with_context(|| format!("creating output directory {}", root.display()))?;
        Ok(Self {
            root: root.to_path_buf(),
        })
    }

    /// Write one output file and record it in the manifest.
    pub fn write(&self, manifest: &mut RunManifest, name: &str, contents: &str) -> anyhow::Result<()> {
        let path = self.root.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        manifest.outputs.push(name.to_string());
        Ok(())
    }

    pub fn finish(&self, manifest: &RunManifest, stem: &str) -> anyhow::Result<()> {
        let path = self.root.join(format!("{stem}.manifest.json"));
        let mut text = serde_json::to_string_pretty(manifest)?;
        text.push('\n');
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }
}

/// Quote a CSV field when it needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
