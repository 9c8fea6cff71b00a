//! On-disk obstruction catalogs: `<root>/<matrix-slug>/<class>/n<k>.g6`, one
//! graph6 line per obstruction of order `k`, plus a manifest.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{bipartite_bound, split_bound, star_free_bound, Bound, EnumerationReport};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Catalog layout version, bumped on incompatible changes.
const LAYOUT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct CatalogManifest {
    pub layout_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub matrix: String,
    pub class: String,
    pub n_max: usize,
    pub counts: std::collections::BTreeMap<usize, usize>,
    pub trivial_reason: Option<String>,
    pub bounds: ManifestBounds,
}

/// Bound values for the matrix; absent when undefined or too large.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ManifestBounds {
    pub split: Option<Bound>,
    pub bipartite: Option<u128>,
    pub star_free: Option<u128>,
}

impl CatalogManifest {
    pub fn for_report(report: &EnumerationReport) -> Self {
        let d = report.matrix.diag_counts();
        let bounds = if d.stars == 0 {
            ManifestBounds {
                split: split_bound(d.zeros, d.ones).ok(),
                bipartite: bipartite_bound(d.zeros, d.ones).ok(),
                star_free: report
                    .matrix
                    .is_star_free()
                    .then(|| star_free_bound(d.zeros, d.ones).ok())
                    .flatten(),
            }
        } else {
            ManifestBounds::default()
        };
        CatalogManifest {
            layout_version: LAYOUT_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            tool_version: env!("CARGO_PKG_VERSION"),
            matrix: report.matrix.to_string(),
            class: report.class.to_string(),
            n_max: report.n_max,
            counts: report.counts.clone(),
            trivial_reason: report.trivial_reason.clone(),
            bounds,
        }
    }
}

/// Writes the catalog for `report` under `root` and returns its directory.
/// Files for orders without obstructions are written empty, so a catalog
/// records which orders were searched.
pub fn write_catalog(report: &EnumerationReport, root: &Path) -> io::Result<PathBuf> {
    let dir = root.join(report.matrix.slug()).join(report.class.name());
    fs::create_dir_all(&dir)?;
    for n in 1..=report.n_max {
        let mut text = String::new();
        for r in report
            .obstructions
            .iter()
            .filter(|r| r.certificate.graph.order() == n)
        {
            text.push_str(r.graph6.as_graph6());
            text.push('\n');
        }
        fs::write(dir.join(format!("n{n}.g6")), text)?;
    }
    let manifest = serde_json::to_string_pretty(&CatalogManifest::for_report(report))?;
    fs::write(dir.join(MANIFEST_FILE), manifest + "\n")?;
    Ok(dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::enumerate_minimal_obstructions;
    use crate::pattern::PatternMatrix;
    use crate::recognize::GraphClass;

    #[test]
    fn layout() {
        let m = PatternMatrix::kl(2, 0).unwrap();
        let report = enumerate_minimal_obstructions(&m, GraphClass::All, 5).unwrap();
        let tmp = tempfile::tempdir().unwrap();
        let dir = write_catalog(&report, tmp.path()).unwrap();
        assert_eq!(dir, tmp.path().join("0x-x0").join("all"));
        assert_eq!(fs::read_to_string(dir.join("n3.g6")).unwrap(), "Bw\n");
        assert_eq!(fs::read_to_string(dir.join("n4.g6")).unwrap(), "");
        let manifest: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.join(MANIFEST_FILE)).unwrap()).unwrap();
        assert_eq!(manifest["matrix"], "0*;*0");
        assert_eq!(manifest["bounds"]["bipartite"], 6);
        assert_eq!(manifest["counts"]["5"], 1);
    }
}
