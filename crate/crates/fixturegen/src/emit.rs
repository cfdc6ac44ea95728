//! Bundle assembly: collects fixture files, writes them under the output
//! directory, and renders the manifest with content hashes.

use std::fs;
use std::path::Path;

use lefblock_core::blocks::BrauerBlockData;
use lefblock_core::chartab::{CharacterTable, ClassFusion, QuotientMap};
use lefblock_core::cosetgeom::PermGroupSpec;
use lefblock_core::dataio::{
    render_manifest, write_brauer, write_fusion, write_perm_spec, write_qmap, write_recipe,
    write_table,
};
use lefblock_core::lefschetz::SimplexRecipe;

#[derive(Default)]
pub struct BundleWriter {
    files: Vec<(String, String, String)>,
}

impl BundleWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&mut self, t: &CharacterTable) {
        self.files.push(("ctab".into(), format!("ctab/{}.ctab", t.id), write_table(t)));
    }

    pub fn fusion(&mut self, f: &ClassFusion) {
        self.files.push(("fusion".into(), format!("fusion/{}.fusion", f.id), write_fusion(f)));
    }

    pub fn qmap(&mut self, q: &QuotientMap) {
        self.files.push(("qmap".into(), format!("qmap/{}.qmap", q.id), write_qmap(q)));
    }

    pub fn brauer(&mut self, b: &BrauerBlockData) {
        self.files.push((
            "brauer".into(),
            format!("brauer/{}-mod{}.brauer", b.table.id, b.prime),
            write_brauer(b),
        ));
    }

    pub fn recipe(&mut self, r: &SimplexRecipe, exprs: &[String]) {
        self.files
            .push(("recipe".into(), format!("recipe/{}.recipe", r.id), write_recipe(r, exprs)));
    }

    pub fn perm(&mut self, p: &PermGroupSpec) {
        self.files.push(("perm".into(), format!("perm/{}.perm", p.id), write_perm_spec(p)));
    }

    /// Expect records: `lines` are full record bodies without the header.
    pub fn expect(&mut self, group: &str, lines: &[String]) {
        let mut text = String::from("lefblock-expect v1\n");
        for l in lines {
            text.push_str(l);
            text.push('\n');
        }
        self.files.push(("expect".into(), format!("expect/{group}.expect"), text));
    }

    pub fn write_all(&self, dir: &Path, bundle_name: &str) {
        for (_, rel, content) in &self.files {
            let path = dir.join(rel);
            fs::create_dir_all(path.parent().unwrap()).expect("create bundle subdirectory");
            fs::write(&path, content).expect("write fixture file");
        }
        let manifest = render_manifest(bundle_name, &self.files);
        fs::write(dir.join("manifest.txt"), manifest).expect("write manifest");
        println!("wrote {} fixture files to {}", self.files.len(), dir.display());
    }
}
