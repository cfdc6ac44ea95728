//! Offline generator for the committed fixture bundle: explicit group
//! constructions, exact character tables, block data, recipes, oracle
//! specs, and frozen expectations, all cross-validated before emission.

mod brauer;
mod dixon;
mod emit;
mod gf2m;
mod grp;
mod modp;
mod perm;
mod tables;
mod toys;

use std::path::PathBuf;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() < 3 || args[1] != "bundle" {
        eprintln!("usage: fixturegen bundle <outdir> [sections: toys gl32 u42 ...]");
        std::process::exit(2);
    }
    let out = PathBuf::from(&args[2]);
    let sections: Vec<String> = if args.len() > 3 {
        args[3..].to_vec()
    } else {
        vec!["toys".into(), "gl32".into(), "u42".into()]
    };
    let mut w = emit::BundleWriter::new();
    for s in &sections {
        eprintln!("== generating section {s}");
        match s.as_str() {
            "toys" => toys::emit_toys(&mut w),
            "gl32" => toys::emit_gl32(&mut w),
            "u42" => toys::emit_u42(&mut w),
            other => {
                eprintln!("unknown section '{other}'");
                std::process::exit(2);
            }
        }
    }
    w.write_all(&out, "lefblock-fixtures");
}
