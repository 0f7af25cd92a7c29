//! On-disk lineage format: a directory holding `manifest.json` plus one
//! Matrix Market file per level, inter-level map and prolongation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lineage::{GradedGraph, Metadata};
use crate::mtx;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Manifest {
    pub name: String,
    pub num_levels: usize,
    pub level_files: Vec<String>,
    pub inter_files: Vec<String>,
    #[serde(default)]
    pub prolong_files: Vec<String>,
    #[serde(default)]
    pub metadata: Metadata,
}

/// Writes `gg` into `dir` (created if missing) and returns the manifest.
pub fn write_lineage(dir: &Path, gg: &GradedGraph) -> Result<Manifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut m = Manifest {
        name: gg.name.clone(),
        num_levels: gg.num_levels(),
        level_files: Vec::new(),
        inter_files: Vec::new(),
        prolong_files: Vec::new(),
        metadata: gg.metadata.clone(),
    };
    for (l, g) in gg.levels.iter().enumerate() {
        let f = format!("level_{l}.mtx");
        mtx::write(&dir.join(&f), g.adj(), g.is_undirected())?;
        m.level_files.push(f);
    }
    for (l, s) in gg.inter.iter().enumerate() {
        let f = format!("inter_{l}.mtx");
        mtx::write(&dir.join(&f), s, false)?;
        m.inter_files.push(f);
    }
    for (l, p) in gg.prolong.iter().flatten().enumerate() {
        let f = format!("prolong_{l}.mtx");
        mtx::write(&dir.join(&f), p, false)?;
        m.prolong_files.push(f);
    }
    let path = dir.join(MANIFEST_FILE);
    let mut text = serde_json::to_string_pretty(&m).map_err(|e| Error::Json {
        path: path.clone(),
        source: e,
    })?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(m)
}

/// Accepts either the lineage directory or the manifest file itself.
pub fn read_lineage(path: &Path) -> Result<GradedGraph> {
    let (dir, file) = if path.is_dir() {
        (path.to_path_buf(), path.join(MANIFEST_FILE))
    } else {
        (
            path.parent().map_or_else(PathBuf::new, Path::to_path_buf),
            path.to_path_buf(),
        )
    };
    let text = fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
    let m: Manifest = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: file.clone(),
        source: e,
    })?;
    if m.level_files.len() != m.num_levels {
        return Err(Error::InvalidLineage(format!(
            "{}: numLevels is {} but {} level files are listed",
            file.display(),
            m.num_levels,
            m.level_files.len()
        )));
    }
    let levels = m
        .level_files
        .iter()
        .map(|f| Graph::undirected(mtx::read(&dir.join(f))?))
        .collect::<Result<Vec<_>>>()?;
    let inter = m
        .inter_files
        .iter()
        .map(|f| mtx::read(&dir.join(f)))
        .collect::<Result<Vec<_>>>()?;
    let prolong = if m.prolong_files.is_empty() {
        None
    } else {
        Some(
            m.prolong_files
                .iter()
                .map(|f| mtx::read(&dir.join(f)))
                .collect::<Result<Vec<_>>>()?,
        )
    };
    let mut gg = GradedGraph::new(m.name, levels, inter, prolong)?;
    gg.metadata = m.metadata;
    Ok(gg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineage::{grid2d_lineage, path_lineage};

    #[test]
    fn round_trip_is_lossless() {
        let dir = tempfile::tempdir().unwrap();
        for gg in [path_lineage(3), grid2d_lineage(2)] {
            let sub = dir.path().join(&gg.name);
            write_lineage(&sub, &gg).unwrap();
            let back = read_lineage(&sub).unwrap();
            assert_eq!(back, gg);
            let again = dir.path().join(format!("{}_again", gg.name));
            write_lineage(&again, &back).unwrap();
            for f in fs::read_dir(&sub).unwrap() {
                let f = f.unwrap().file_name();
                assert_eq!(
                    fs::read(sub.join(&f)).unwrap(),
                    fs::read(again.join(&f)).unwrap()
                );
            }
        }
    }

    #[test]
    fn manifest_fields_are_camel_case() {
        let dir = tempfile::tempdir().unwrap();
        write_lineage(dir.path(), &path_lineage(1)).unwrap();
        let text = fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap();
        for key in [
            "\"numLevels\"",
            "\"levelFiles\"",
            "\"interFiles\"",
            "\"prolongFiles\"",
        ] {
            assert!(text.contains(key), "{key} missing");
        }
        assert!(read_lineage(&dir.path().join(MANIFEST_FILE)).is_ok());
    }

    #[test]
    fn missing_manifest_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(read_lineage(dir.path()), Err(Error::Io { .. })));
    }
}
