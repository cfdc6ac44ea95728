//! Fixture formats, bundle loading and validation, expected-output records,
//! and report rendering.
//!
//! All fixture files are line-oriented structured text with a version
//! header (`lefblock-<kind> v1`), `#` comments, and whitespace-separated
//! fields; cyclotomic values use the compact `E(n,e)` encoding with no
//! embedded spaces so they tokenize cleanly. A manifest file carries a
//! sha256 per file so a bundle is tamper-evident.

mod expect;
mod format;
mod report;

pub use expect::{run_expectations, ExpectKind, ExpectOutcome, ExpectRecord};
pub use format::{
    parse_brauer, parse_fusion, parse_perm_spec, parse_qmap, parse_recipe, parse_table,
    write_brauer, write_fusion, write_perm_spec, write_qmap, write_recipe, write_table,
};
pub use report::{analyze_group, render_json, render_text, BlockPartDoc, GroupAnalysis};

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::blocks::BrauerBlockData;
use crate::chartab::{validate_table, CharacterTable, ClassFusion, QuotientMap};
use crate::cosetgeom::PermGroupSpec;
use crate::lefschetz::SimplexRecipe;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{file}:{line}: parse error: {msg}")]
    Parse { file: String, line: usize, msg: String },
    #[error("{file}: dangling reference to '{id}'")]
    Reference { file: String, id: String },
    #[error("{file}: validation failed [{check}]: {detail}")]
    Validation { file: String, check: String, detail: String },
    #[error("{file}: sha256 mismatch (bundle manifest out of date)")]
    HashMismatch { file: String },
    #[error("io error on {file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
}

impl DataError {
    pub(crate) fn parse(file: &str, line: usize, msg: impl Into<String>) -> Self {
        DataError::Parse { file: file.to_string(), line, msg: msg.into() }
    }
}

/// A fully loaded, fully validated fixture bundle.
#[derive(Debug, Default)]
pub struct FixtureBundle {
    pub name: String,
    pub root: PathBuf,
    pub tables: BTreeMap<String, Arc<CharacterTable>>,
    pub fusions: BTreeMap<String, Arc<ClassFusion>>,
    pub qmaps: BTreeMap<String, Arc<QuotientMap>>,
    pub brauer: BTreeMap<String, Arc<BrauerBlockData>>,
    pub recipes: BTreeMap<String, Arc<SimplexRecipe>>,
    pub perms: BTreeMap<String, Arc<PermGroupSpec>>,
    pub expects: Vec<ExpectRecord>,
}

impl FixtureBundle {
    /// Block data for a table at a prime, if bundled.
    pub fn brauer_for(&self, table_id: &str, prime: u64) -> Option<&Arc<BrauerBlockData>> {
        self.brauer
            .values()
            .find(|b| b.table.id == table_id && b.prime == prime)
    }

    /// The primary recipe of a group is the one whose id equals the table id.
    pub fn recipe_for(&self, group_id: &str) -> Option<&Arc<SimplexRecipe>> {
        self.recipes.get(group_id)
    }

    pub fn group_ids(&self) -> Vec<String> {
        self.recipes.keys().cloned().collect()
    }
}

fn read_file(path: &Path) -> Result<String, DataError> {
    std::fs::read_to_string(path).map_err(|e| DataError::Io {
        file: path.display().to_string(),
        source: e,
    })
}

pub fn sha256_hex(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    hex_string(&h.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Load and validate a bundle from a directory containing `manifest.txt`.
///
/// Loading is deterministic; every cross-reference must resolve, every table
/// must pass [`validate_table`], every fusion and quotient map its own
/// structural checks, and every Brauer datum its block axioms.
pub fn load_bundle(dir: &Path) -> Result<FixtureBundle, DataError> {
    let manifest_path = dir.join("manifest.txt");
    let manifest_text = read_file(&manifest_path)?;
    let mfile = manifest_path.display().to_string();

    let mut bundle = FixtureBundle { root: dir.to_path_buf(), ..Default::default() };
    let mut entries: Vec<(String, String)> = Vec::new(); // (kind, relative path)

    let mut saw_header = false;
    for (ln, raw) in manifest_text.lines().enumerate() {
        let line = raw.trim();
        let lineno = ln + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != "lefblock-manifest v1" {
                return Err(DataError::parse(&mfile, lineno, "missing manifest header"));
            }
            saw_header = true;
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("bundle") => {
                bundle.name = parts.next().unwrap_or("unnamed").to_string();
            }
            Some("file") => {
                let kind = parts
                    .next()
                    .ok_or_else(|| DataError::parse(&mfile, lineno, "missing kind"))?;
                let rel = parts
                    .next()
                    .ok_or_else(|| DataError::parse(&mfile, lineno, "missing path"))?;
                let hash = parts
                    .next()
                    .ok_or_else(|| DataError::parse(&mfile, lineno, "missing sha256"))?;
                let text = read_file(&dir.join(rel))?;
                if sha256_hex(&text) != hash {
                    return Err(DataError::HashMismatch { file: rel.to_string() });
                }
                entries.push((kind.to_string(), rel.to_string()));
            }
            Some(other) => {
                return Err(DataError::parse(&mfile, lineno, format!("unknown directive '{other}'")))
            }
            None => {}
        }
    }

    // load in dependency order: tables, fusions/qmaps, brauer, recipes, perms, expects
    let order = ["ctab", "fusion", "qmap", "brauer", "recipe", "perm", "expect"];
    for kind in order {
        for (k, rel) in &entries {
            if k != kind {
                continue;
            }
            let path = dir.join(rel);
            let text = read_file(&path)?;
            let fname = rel.clone();
            match kind {
                "ctab" => {
                    let t = parse_table(&fname, &text)?;
                    let report = validate_table(&t);
                    if !report.passed() {
                        let v = &report.violations[0];
                        return Err(DataError::Validation {
                            file: fname,
                            check: v.check.clone(),
                            detail: format!(
                                "{} (and {} more)",
                                v.detail,
                                report.violations.len() - 1
                            ),
                        });
                    }
                    bundle.tables.insert(t.id.clone(), Arc::new(t));
                }
                "fusion" => {
                    let f = parse_fusion(&fname, &text, &bundle.tables)?;
                    validate_fusion(&fname, &f)?;
                    bundle.fusions.insert(f.id.clone(), Arc::new(f));
                }
                "qmap" => {
                    let q = parse_qmap(&fname, &text, &bundle.tables)?;
                    validate_qmap(&fname, &q)?;
                    bundle.qmaps.insert(q.id.clone(), Arc::new(q));
                }
                "brauer" => {
                    let b = parse_brauer(&fname, &text, &bundle.tables)?;
                    let violations = b.validate();
                    if !violations.is_empty() {
                        return Err(DataError::Validation {
                            file: fname,
                            check: "brauer".to_string(),
                            detail: violations.join("; "),
                        });
                    }
                    bundle.brauer.insert(b_key(&b), Arc::new(b));
                }
                "recipe" => {
                    let r = parse_recipe(&fname, &text, &bundle)?;
                    r.validate().map_err(|e| DataError::Validation {
                        file: fname.clone(),
                        check: "recipe".to_string(),
                        detail: e.to_string(),
                    })?;
                    bundle.recipes.insert(r.id.clone(), Arc::new(r));
                }
                "perm" => {
                    let p = parse_perm_spec(&fname, &text)?;
                    bundle.perms.insert(p.id.clone(), Arc::new(p));
                }
                "expect" => {
                    let recs = expect::parse_expect(&fname, &text, &bundle)?;
                    bundle.expects.extend(recs);
                }
                _ => unreachable!(),
            }
        }
    }
    Ok(bundle)
}

fn b_key(b: &BrauerBlockData) -> String {
    format!("{}-mod{}", b.table.id, b.prime)
}

/// Element orders must be preserved and centralizer orders must divide.
fn validate_fusion(file: &str, f: &ClassFusion) -> Result<(), DataError> {
    if f.map.len() != f.from.class_count() {
        return Err(DataError::Validation {
            file: file.to_string(),
            check: "fusion-length".to_string(),
            detail: format!("map has {} entries, expected {}", f.map.len(), f.from.class_count()),
        });
    }
    for (k, &c) in f.map.iter().enumerate() {
        if c >= f.to.class_count() {
            return Err(DataError::Validation {
                file: file.to_string(),
                check: "fusion-range".to_string(),
                detail: format!("class {k} maps to out-of-range {c}"),
            });
        }
        let hk = &f.from.classes[k];
        let gc = &f.to.classes[c];
        if hk.element_order != gc.element_order {
            return Err(DataError::Validation {
                file: file.to_string(),
                check: "fusion-element-order".to_string(),
                detail: format!(
                    "element order not preserved: {} ({}) -> {} ({})",
                    hk.name, hk.element_order, gc.name, gc.element_order
                ),
            });
        }
        if gc.centralizer_order % hk.centralizer_order != 0 {
            return Err(DataError::Validation {
                file: file.to_string(),
                check: "fusion-centralizer".to_string(),
                detail: format!(
                    "centralizer order of {} does not divide that of {}",
                    hk.name, gc.name
                ),
            });
        }
    }
    Ok(())
}

/// Quotient maps must be surjective and divide element orders.
fn validate_qmap(file: &str, q: &QuotientMap) -> Result<(), DataError> {
    if q.map.len() != q.from.class_count() {
        return Err(DataError::Validation {
            file: file.to_string(),
            check: "qmap-length".to_string(),
            detail: format!("map has {} entries, expected {}", q.map.len(), q.from.class_count()),
        });
    }
    let mut hit = vec![false; q.quotient.class_count()];
    for (k, &c) in q.map.iter().enumerate() {
        if c >= q.quotient.class_count() {
            return Err(DataError::Validation {
                file: file.to_string(),
                check: "qmap-range".to_string(),
                detail: format!("class {k} maps to out-of-range {c}"),
            });
        }
        hit[c] = true;
        let ho = q.from.classes[k].element_order;
        let qo = q.quotient.classes[c].element_order;
        if ho % qo != 0 {
            return Err(DataError::Validation {
                file: file.to_string(),
                check: "qmap-element-order".to_string(),
                detail: format!(
                    "image order {qo} does not divide source order {ho} at class {}",
                    q.from.classes[k].name
                ),
            });
        }
    }
    if !hit.iter().all(|&b| b) {
        return Err(DataError::Validation {
            file: file.to_string(),
            check: "qmap-surjective".to_string(),
            detail: "not every quotient class is hit".to_string(),
        });
    }
    Ok(())
}

/// Write a manifest for the given (kind, relative path, content) triples.
pub fn render_manifest(bundle_name: &str, files: &[(String, String, String)]) -> String {
    let mut out = String::from("lefblock-manifest v1\n");
    out.push_str(&format!("bundle {bundle_name}\n"));
    for (kind, rel, text) in files {
        out.push_str(&format!("file {kind} {rel} {}\n", sha256_hex(text)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::test_tables::{a3, a3_into_s3, s3};

    #[test]
    fn table_round_trip_is_byte_identical() {
        let t = s3();
        let text = write_table(&t);
        let parsed = parse_table("s3.ctab", &text).unwrap();
        assert_eq!(write_table(&parsed), text);
        assert!(validate_table(&parsed).passed());
    }

    #[test]
    fn fusion_round_trip_and_validation() {
        let a3 = a3();
        let s3 = s3();
        let f = a3_into_s3(&a3, &s3);
        let text = write_fusion(&f);
        let mut tables = BTreeMap::new();
        tables.insert("A3".to_string(), a3.clone());
        tables.insert("S3".to_string(), s3.clone());
        let parsed = parse_fusion("f.fusion", &text, &tables).unwrap();
        assert_eq!(write_fusion(&parsed), text);
        assert!(validate_fusion("f.fusion", &parsed).is_ok());
        // corrupt: map a 3-element class onto the 2A class
        let mut bad = parsed.clone();
        bad.map[1] = 1;
        let err = validate_fusion("f.fusion", &bad).unwrap_err();
        assert!(err.to_string().contains("element order not preserved"), "{err}");
    }

    #[test]
    fn brauer_round_trip() {
        let b = crate::blocks::test_blocks::s3_mod2();
        let text = write_brauer(&b);
        let mut tables = BTreeMap::new();
        tables.insert("S3".to_string(), s3());
        let parsed = parse_brauer("s3.brauer", &text, &tables).unwrap();
        assert_eq!(write_brauer(&parsed), text);
        assert!(parsed.validate().is_empty());
    }

    #[test]
    fn perm_spec_round_trip() {
        let spec = crate::cosetgeom::gl32_spec();
        let text = write_perm_spec(&spec);
        let parsed = parse_perm_spec("gl32.perm", &text).unwrap();
        assert_eq!(write_perm_spec(&parsed), text);
        assert_eq!(parsed.degree, 7);
        assert_eq!(parsed.subgroups.len(), 2);
    }

    #[test]
    fn manifest_hash_math() {
        // sha256 of the empty string is a fixed constant
        assert_eq!(
            sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
