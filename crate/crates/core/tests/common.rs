#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use mudt::{parse_treebank_strict, Treebank};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn read(rel: &str) -> String {
    fs::read_to_string(fixtures().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn load(rel: &str) -> Treebank {
    parse_treebank_strict(&read(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Every `.conllu` file under the fixture directory, relative paths.
pub fn all_fixture_files() -> Vec<String> {
    let mut out = Vec::new();
    for dir in ["", "principles"] {
        let mut names: Vec<String> = fs::read_dir(fixtures().join(dir))
            .unwrap()
            .filter_map(|e| e.ok())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .filter(|n| n.ends_with(".conllu"))
            .map(|n| if dir.is_empty() { n } else { format!("{dir}/{n}") })
            .collect();
        names.sort();
        out.extend(names);
    }
    out
}
