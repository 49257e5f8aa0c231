//! Versioned JSON disk cache for the coefficient tables, keyed by graph
//! spec and table kind. Stale versions or mismatched graphs are ignored
//! and overwritten.

use std::fs;
use std::path::PathBuf;

use serde_json::Value;
use temperley::coxeter::GroupTable;
use temperley::hecke::KlTable;
use temperley::tl::{TlAlgebra, TlCanonicalTable};
use temperley::TABLE_FORMAT_VERSION;

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn path(&self, kind: &str, label: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        Some(dir.join(format!(
            "{kind}-{}-v{TABLE_FORMAT_VERSION}.json",
            file_key(label)
        )))
    }

    fn read(&self, kind: &str, label: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(kind, label)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn write(&self, kind: &str, label: &str, value: &Value) {
        let Some(path) = self.path(kind, label) else {
            return;
        };
        if let Some(parent) = path.parent() {
            let _ = fs::create_dir_all(parent);
        }
        let _ = fs::write(path, value.to_string());
    }

    pub fn kl_table(&self, table: &GroupTable) -> anyhow::Result<KlTable> {
        let label = table.graph().label();
        if let Some(value) = self.read("kl", label) {
            if let Some(kl) = KlTable::from_json(&value, table, "kl", TABLE_FORMAT_VERSION) {
                return Ok(kl);
            }
        }
        let kl = temperley::hecke::HeckeAlgebra::new(table).kl_table()?;
        self.write("kl", label, &kl.to_json(table, "kl", TABLE_FORMAT_VERSION));
        Ok(kl)
    }

    pub fn canonical_table(&self, tl: &TlAlgebra) -> anyhow::Result<TlCanonicalTable> {
        let table = tl.group();
        let label = table.graph().label();
        if let Some(value) = self.read("tl-c", label) {
            if let Some(ic) =
                TlCanonicalTable::from_json(&value, table, "tl-c", TABLE_FORMAT_VERSION)
            {
                return Ok(ic);
            }
        }
        let ic = tl.canonical_table()?;
        self.write(
            "tl-c",
            label,
            &ic.to_json(table, "tl-c", TABLE_FORMAT_VERSION),
        );
        Ok(ic)
    }
}

/// Filesystem-safe cache key: alphanumerics kept, everything else
/// underscored, with a short hash suffix to keep long or exotic labels
/// distinct.
fn file_key(label: &str) -> String {
    let safe: String = label
        .chars()
        .take(32)
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    if safe.len() == label.len() && label.chars().all(|c| c.is_ascii_alphanumeric()) {
        safe
    } else {
        format!("{safe}-{:016x}", fnv1a(label.as_bytes()))
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}
