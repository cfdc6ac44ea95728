//! Parsers and serializers for the individual fixture file kinds.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::bigint::BigInt;

use super::{DataError, FixtureBundle};
use crate::blocks::{BlockInfo, BrauerBlockData};
use crate::chartab::{
    decompose, inflate, parse_combination, CharacterTable, ClassFusion, ConjugacyClass,
    QuotientMap, VirtualCharacter,
};
use crate::cosetgeom::{PermGroupSpec, Permutation};
use crate::cyclo::Cyclotomic;
use crate::lefschetz::{RecipeTerm, SimplexRecipe};

/// Iterate the meaningful lines of a fixture file, checking the header.
fn content_lines<'a>(
    file: &str,
    text: &'a str,
    header: &str,
) -> Result<Vec<(usize, &'a str)>, DataError> {
    let mut lines = Vec::new();
    let mut saw_header = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != header {
                return Err(DataError::parse(
                    file,
                    ln + 1,
                    format!("expected header '{header}', found '{line}'"),
                ));
            }
            saw_header = true;
            continue;
        }
        lines.push((ln + 1, line));
    }
    if !saw_header {
        return Err(DataError::parse(file, 1, format!("missing header '{header}'")));
    }
    Ok(lines)
}

fn parse_u64(file: &str, ln: usize, s: &str, what: &str) -> Result<u64, DataError> {
    s.parse()
        .map_err(|_| DataError::parse(file, ln, format!("bad {what}: '{s}'")))
}

fn parse_usize(file: &str, ln: usize, s: &str, what: &str) -> Result<usize, DataError> {
    s.parse()
        .map_err(|_| DataError::parse(file, ln, format!("bad {what}: '{s}'")))
}

// ---------------------------------------------------------------------------
// character tables
// ---------------------------------------------------------------------------

pub fn parse_table(file: &str, text: &str) -> Result<CharacterTable, DataError> {
    let mut id = String::new();
    let mut group_name = String::new();
    let mut group_order = 0u64;
    let mut classes = Vec::new();
    let mut power_maps = BTreeMap::new();
    let mut irreducible_names = Vec::new();
    let mut irreducibles: Vec<Vec<Cyclotomic>> = Vec::new();

    for (ln, line) in content_lines(file, text, "lefblock-ctab v1")? {
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "id" => id = parts.next().unwrap_or_default().to_string(),
            "group" => group_name = parts.collect::<Vec<_>>().join(" "),
            "order" => {
                group_order = parse_u64(file, ln, parts.next().unwrap_or_default(), "order")?
            }
            "class" => {
                let name = parts
                    .next()
                    .ok_or_else(|| DataError::parse(file, ln, "class needs a name"))?
                    .to_string();
                let size = parse_u64(file, ln, parts.next().unwrap_or_default(), "class size")?;
                let element_order =
                    parse_u64(file, ln, parts.next().unwrap_or_default(), "element order")?;
                let centralizer_order =
                    parse_u64(file, ln, parts.next().unwrap_or_default(), "centralizer order")?;
                classes.push(ConjugacyClass { name, size, element_order, centralizer_order });
            }
            "powermap" => {
                let p = parse_u64(file, ln, parts.next().unwrap_or_default(), "power-map prime")?;
                let map = parts
                    .map(|s| parse_usize(file, ln, s, "power-map entry"))
                    .collect::<Result<Vec<_>, _>>()?;
                power_maps.insert(p, map);
            }
            "irr" => {
                let name = parts
                    .next()
                    .ok_or_else(|| DataError::parse(file, ln, "irr needs a name"))?
                    .to_string();
                let values = parts
                    .map(|s| {
                        Cyclotomic::parse(s).map_err(|e| {
                            DataError::parse(file, ln, format!("bad value '{s}': {e}"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                irreducible_names.push(name);
                irreducibles.push(values);
            }
            other => return Err(DataError::parse(file, ln, format!("unknown directive '{other}'"))),
        }
    }
    if id.is_empty() {
        return Err(DataError::parse(file, 1, "missing id"));
    }
    Ok(CharacterTable {
        id,
        group_name,
        group_order,
        classes,
        power_maps,
        irreducible_names,
        irreducibles,
    })
}

pub fn write_table(t: &CharacterTable) -> String {
    let mut out = String::from("lefblock-ctab v1\n");
    out.push_str(&format!("id {}\n", t.id));
    out.push_str(&format!("group {}\n", t.group_name));
    out.push_str(&format!("order {}\n", t.group_order));
    for c in &t.classes {
        out.push_str(&format!(
            "class {} {} {} {}\n",
            c.name, c.size, c.element_order, c.centralizer_order
        ));
    }
    for (p, map) in &t.power_maps {
        let entries: Vec<String> = map.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("powermap {} {}\n", p, entries.join(" ")));
    }
    for (name, row) in t.irreducible_names.iter().zip(&t.irreducibles) {
        let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("irr {} {}\n", name, vals.join(" ")));
    }
    out
}

// ---------------------------------------------------------------------------
// fusions and quotient maps
// ---------------------------------------------------------------------------

pub fn parse_fusion(
    file: &str,
    text: &str,
    tables: &BTreeMap<String, Arc<CharacterTable>>,
) -> Result<ClassFusion, DataError> {
    let mut id = String::new();
    let mut from = None;
    let mut to = None;
    let mut map = Vec::new();
    for (ln, line) in content_lines(file, text, "lefblock-fusion v1")? {
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "id" => id = parts.next().unwrap_or_default().to_string(),
            "from" => {
                let tid = parts.next().unwrap_or_default();
                from = Some(lookup_table(file, tables, tid)?);
            }
            "to" => {
                let tid = parts.next().unwrap_or_default();
                to = Some(lookup_table(file, tables, tid)?);
            }
            "map" => {
                map = parts
                    .map(|s| parse_usize(file, ln, s, "fusion entry"))
                    .collect::<Result<Vec<_>, _>>()?;
            }
            other => return Err(DataError::parse(file, ln, format!("unknown directive '{other}'"))),
        }
    }
    let from = from.ok_or_else(|| DataError::parse(file, 1, "missing 'from'"))?;
    let to = to.ok_or_else(|| DataError::parse(file, 1, "missing 'to'"))?;
    Ok(ClassFusion { id, from, to, map })
}

pub fn write_fusion(f: &ClassFusion) -> String {
    let entries: Vec<String> = f.map.iter().map(|i| i.to_string()).collect();
    format!(
        "lefblock-fusion v1\nid {}\nfrom {}\nto {}\nmap {}\n",
        f.id,
        f.from.id,
        f.to.id,
        entries.join(" ")
    )
}

pub fn parse_qmap(
    file: &str,
    text: &str,
    tables: &BTreeMap<String, Arc<CharacterTable>>,
) -> Result<QuotientMap, DataError> {
    let mut id = String::new();
    let mut from = None;
    let mut quotient = None;
    let mut map = Vec::new();
    for (ln, line) in content_lines(file, text, "lefblock-qmap v1")? {
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "id" => id = parts.next().unwrap_or_default().to_string(),
            "from" => from = Some(lookup_table(file, tables, parts.next().unwrap_or_default())?),
            "quotient" => {
                quotient = Some(lookup_table(file, tables, parts.next().unwrap_or_default())?)
            }
            "map" => {
                map = parts
                    .map(|s| parse_usize(file, ln, s, "quotient-map entry"))
                    .collect::<Result<Vec<_>, _>>()?;
            }
            other => return Err(DataError::parse(file, ln, format!("unknown directive '{other}'"))),
        }
    }
    let from = from.ok_or_else(|| DataError::parse(file, 1, "missing 'from'"))?;
    let quotient = quotient.ok_or_else(|| DataError::parse(file, 1, "missing 'quotient'"))?;
    Ok(QuotientMap { id, from, quotient, map })
}

pub fn write_qmap(q: &QuotientMap) -> String {
    let entries: Vec<String> = q.map.iter().map(|i| i.to_string()).collect();
    format!(
        "lefblock-qmap v1\nid {}\nfrom {}\nquotient {}\nmap {}\n",
        q.id,
        q.from.id,
        q.quotient.id,
        entries.join(" ")
    )
}

fn lookup_table(
    file: &str,
    tables: &BTreeMap<String, Arc<CharacterTable>>,
    id: &str,
) -> Result<Arc<CharacterTable>, DataError> {
    tables
        .get(id)
        .cloned()
        .ok_or_else(|| DataError::Reference { file: file.to_string(), id: id.to_string() })
}

// ---------------------------------------------------------------------------
// Brauer block data
// ---------------------------------------------------------------------------

pub fn parse_brauer(
    file: &str,
    text: &str,
    tables: &BTreeMap<String, Arc<CharacterTable>>,
) -> Result<BrauerBlockData, DataError> {
    let mut table = None;
    let mut prime = 0u64;
    let mut blocks = Vec::new();
    let mut ordinary_to_block = Vec::new();
    let mut brauer_names = Vec::new();
    let mut brauer_to_block = Vec::new();
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
    for (ln, line) in content_lines(file, text, "lefblock-brauer v1")? {
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "table" => table = Some(lookup_table(file, tables, parts.next().unwrap_or_default())?),
            "prime" => prime = parse_u64(file, ln, parts.next().unwrap_or_default(), "prime")?,
            "block" => {
                let id = parse_u64(file, ln, parts.next().unwrap_or_default(), "block id")? as u32;
                let defect =
                    parse_u64(file, ln, parts.next().unwrap_or_default(), "defect")? as u32;
                blocks.push(BlockInfo { id, defect });
            }
            "assign" => {
                ordinary_to_block = parts
                    .map(|s| parse_u64(file, ln, s, "block assignment").map(|v| v as u32))
                    .collect::<Result<Vec<_>, _>>()?;
            }
            "brauer" => {
                let name = parts
                    .next()
                    .ok_or_else(|| DataError::parse(file, ln, "brauer needs a name"))?
                    .to_string();
                let block =
                    parse_u64(file, ln, parts.next().unwrap_or_default(), "brauer block")? as u32;
                brauer_names.push(name);
                brauer_to_block.push(block);
            }
            "drow" => {
                let i = parse_usize(file, ln, parts.next().unwrap_or_default(), "row index")?;
                let row = parts
                    .map(|s| parse_u64(file, ln, s, "decomposition entry"))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push((i, row));
            }
            other => return Err(DataError::parse(file, ln, format!("unknown directive '{other}'"))),
        }
    }
    let table = table.ok_or_else(|| DataError::parse(file, 1, "missing 'table'"))?;
    let n = table.irreducibles.len();
    let mut decomposition = vec![Vec::new(); n];
    for (i, row) in rows {
        if i >= n {
            return Err(DataError::parse(file, 1, format!("drow index {i} out of range")));
        }
        decomposition[i] = row;
    }
    Ok(BrauerBlockData {
        table,
        prime,
        blocks,
        ordinary_to_block,
        brauer_names,
        brauer_to_block,
        decomposition,
    })
}

pub fn write_brauer(b: &BrauerBlockData) -> String {
    let mut out = String::from("lefblock-brauer v1\n");
    out.push_str(&format!("table {}\n", b.table.id));
    out.push_str(&format!("prime {}\n", b.prime));
    for blk in &b.blocks {
        out.push_str(&format!("block {} {}\n", blk.id, blk.defect));
    }
    let assign: Vec<String> = b.ordinary_to_block.iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("assign {}\n", assign.join(" ")));
    for (name, blk) in b.brauer_names.iter().zip(&b.brauer_to_block) {
        out.push_str(&format!("brauer {} {}\n", name, blk));
    }
    for (i, row) in b.decomposition.iter().enumerate() {
        let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("drow {} {}\n", i, vals.join(" ")));
    }
    out
}

// ---------------------------------------------------------------------------
// recipes
// ---------------------------------------------------------------------------

/// Evaluate a combination expression on a carrier table. The grammar is the
/// Atlas-style name sum, optionally wrapped in inflation chains:
/// `inflate(<qmap-id>, <expr>)` evaluates `expr` on the quotient table and
/// pulls it back to the qmap's source table.
pub fn eval_combination(
    file: &str,
    bundle: &FixtureBundle,
    expected_table: &Arc<CharacterTable>,
    expr: &str,
) -> Result<VirtualCharacter, DataError> {
    let expr = expr.trim();
    if let Some(rest) = expr.strip_prefix("inflate(") {
        let rest = rest
            .strip_suffix(')')
            .ok_or_else(|| DataError::parse(file, 0, "inflate(...) not closed"))?;
        let (qid, inner) = rest
            .split_once(',')
            .ok_or_else(|| DataError::parse(file, 0, "inflate needs a qmap id and an expression"))?;
        let qmap = bundle.qmaps.get(qid.trim()).ok_or_else(|| DataError::Reference {
            file: file.to_string(),
            id: qid.trim().to_string(),
        })?;
        if qmap.from.id != expected_table.id {
            return Err(DataError::Validation {
                file: file.to_string(),
                check: "inflate-table".to_string(),
                detail: format!(
                    "inflate({qid}) produces a character on {}, carrier is {}",
                    qmap.from.id, expected_table.id
                ),
            });
        }
        let inner_vc = eval_combination(file, bundle, &qmap.quotient, inner)?;
        let inflated = inflate(&inner_vc.class_function(), qmap).map_err(|e| {
            DataError::Validation {
                file: file.to_string(),
                check: "inflate".to_string(),
                detail: e.to_string(),
            }
        })?;
        return decompose(&inflated).map_err(|e| DataError::Validation {
            file: file.to_string(),
            check: "inflate-decompose".to_string(),
            detail: e.to_string(),
        });
    }
    parse_combination(expected_table, expr).map_err(|e| DataError::Validation {
        file: file.to_string(),
        check: "combination".to_string(),
        detail: e.to_string(),
    })
}

pub fn parse_recipe(
    file: &str,
    text: &str,
    bundle: &FixtureBundle,
) -> Result<SimplexRecipe, DataError> {
    let mut id = String::new();
    let mut group = None;
    let mut reduced = true;
    let mut negate = false;
    let mut terms = Vec::new();
    for (ln, line) in content_lines(file, text, "lefblock-recipe v1")? {
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "id" => id = parts.next().unwrap_or_default().to_string(),
            "group" => {
                group = Some(lookup_table(file, &bundle.tables, parts.next().unwrap_or_default())?)
            }
            "reduced" => reduced = parts.next() == Some("true"),
            "negate" => negate = parts.next() == Some("true"),
            "term" => {
                let subset_label = parts
                    .next()
                    .ok_or_else(|| DataError::parse(file, ln, "term needs a subset label"))?
                    .to_string();
                let sign_s = parts
                    .next()
                    .ok_or_else(|| DataError::parse(file, ln, "term needs a sign"))?;
                let sign: i64 = sign_s
                    .parse()
                    .map_err(|_| DataError::parse(file, ln, format!("bad sign '{sign_s}'")))?;
                let carrier_id = parts
                    .next()
                    .ok_or_else(|| DataError::parse(file, ln, "term needs a carrier"))?;
                let fusion_id = parts
                    .next()
                    .ok_or_else(|| DataError::parse(file, ln, "term needs a fusion"))?;
                let comb_expr = parts.collect::<Vec<_>>().join(" ");
                let carrier = lookup_table(file, &bundle.tables, carrier_id)?;
                let fusion =
                    bundle.fusions.get(fusion_id).cloned().ok_or_else(|| DataError::Reference {
                        file: file.to_string(),
                        id: fusion_id.to_string(),
                    })?;
                let combination = eval_combination(file, bundle, &carrier, &comb_expr)?;
                terms.push(RecipeTerm { subset_label, sign, carrier, combination, fusion });
            }
            other => return Err(DataError::parse(file, ln, format!("unknown directive '{other}'"))),
        }
    }
    let group = group.ok_or_else(|| DataError::parse(file, 1, "missing 'group'"))?;
    Ok(SimplexRecipe { id, group, terms, reduced, negate })
}

/// Recipes are written back with the original combination strings, so the
/// writer takes them alongside the parsed terms.
pub fn write_recipe(r: &SimplexRecipe, combination_exprs: &[String]) -> String {
    let mut out = String::from("lefblock-recipe v1\n");
    out.push_str(&format!("id {}\n", r.id));
    out.push_str(&format!("group {}\n", r.group.id));
    out.push_str(&format!("reduced {}\n", r.reduced));
    out.push_str(&format!("negate {}\n", r.negate));
    for (term, expr) in r.terms.iter().zip(combination_exprs) {
        out.push_str(&format!(
            "term {} {} {} {} {}\n",
            term.subset_label, term.sign, term.carrier.id, term.fusion.id, expr
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// permutation group specs
// ---------------------------------------------------------------------------

pub fn parse_perm_spec(file: &str, text: &str) -> Result<PermGroupSpec, DataError> {
    let mut id = String::new();
    let mut degree = 0usize;
    let mut group_gens = Vec::new();
    let mut subgroups: Vec<(String, Vec<Permutation>)> = Vec::new();
    let mut class_reps: Vec<(String, Permutation)> = Vec::new();
    for (ln, line) in content_lines(file, text, "lefblock-perm v1")? {
        let (directive, rest) = match line.split_once(char::is_whitespace) {
            Some((d, r)) => (d, r.trim()),
            None => (line, ""),
        };
        match directive {
            "id" => id = rest.to_string(),
            "degree" => degree = parse_usize(file, ln, rest, "degree")?,
            "gen" => group_gens.push(parse_perm(file, ln, degree, rest)?),
            "subgroup" => subgroups.push((rest.to_string(), Vec::new())),
            "sgen" => match subgroups.last_mut() {
                Some((_, gens)) => gens.push(parse_perm(file, ln, degree, rest)?),
                None => return Err(DataError::parse(file, ln, "sgen before subgroup")),
            },
            "classrep" => {
                let (name, cycles) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| DataError::parse(file, ln, "classrep needs name and cycles"))?;
                class_reps.push((name.to_string(), parse_perm(file, ln, degree, cycles.trim())?));
            }
            other => return Err(DataError::parse(file, ln, format!("unknown directive '{other}'"))),
        }
    }
    Ok(PermGroupSpec {
        id,
        degree,
        group_gens,
        subgroups,
        class_reps: if class_reps.is_empty() { None } else { Some(class_reps) },
    })
}

fn parse_perm(file: &str, ln: usize, degree: usize, s: &str) -> Result<Permutation, DataError> {
    Permutation::parse_cycles(degree, s)
        .map_err(|e| DataError::parse(file, ln, format!("bad permutation: {e}")))
}

pub fn write_perm_spec(p: &PermGroupSpec) -> String {
    let mut out = String::from("lefblock-perm v1\n");
    out.push_str(&format!("id {}\n", p.id));
    out.push_str(&format!("degree {}\n", p.degree));
    for g in &p.group_gens {
        out.push_str(&format!("gen {}\n", g.cycle_string()));
    }
    for (name, gens) in &p.subgroups {
        out.push_str(&format!("subgroup {}\n", name));
        for g in gens {
            out.push_str(&format!("sgen {}\n", g.cycle_string()));
        }
    }
    if let Some(reps) = &p.class_reps {
        for (name, g) in reps {
            out.push_str(&format!("classrep {} {}\n", name, g.cycle_string()));
        }
    }
    out
}

/// Parse a signed integer list used by expectation payloads.
pub(crate) fn parse_int_list(file: &str, s: &str) -> Result<Vec<BigInt>, DataError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<BigInt>()
                .map_err(|_| DataError::parse(file, 0, format!("bad integer '{tok}'")))
        })
        .collect()
}
