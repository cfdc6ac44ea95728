//! Assemble validated character-table fixtures from classified groups:
//! class ordering and naming follow the Atlas conventions (element order,
//! then descending centralizer), irreducibles are sorted by degree with
//! the trivial character first, and the result must pass the full
//! orthogonality validation before it may be emitted.

use std::collections::BTreeMap;
use std::sync::Arc;

use lefblock_core::chartab::{
    validate_table, CharacterTable, ClassFusion, ConjugacyClass, QuotientMap,
};
use lefblock_core::cyclo::Cyclotomic;

use crate::dixon;
use crate::grp::Classes;
use crate::perm::Perm;

/// A generated group: its classified conjugacy structure plus the finished
/// fixture table. The class order of `classes` matches the table columns.
pub struct GroupData {
    pub classes: Classes,
    pub table: Arc<CharacterTable>,
}

pub fn class_names(classes: &Classes) -> Vec<String> {
    let mut per_order: BTreeMap<u64, u8> = BTreeMap::new();
    classes
        .orders
        .iter()
        .map(|&ord| {
            let letter = per_order.entry(ord).or_insert(0);
            let name = format!("{}{}", ord, (b'A' + *letter) as char);
            *letter += 1;
            name
        })
        .collect()
}

/// Sort irreducibles by (degree, canonical encoding), trivial first, and
/// assign Atlas-style names (degree + letter) by position within a degree.
fn arrange_irreducibles(rows: Vec<Vec<Cyclotomic>>) -> (Vec<String>, Vec<Vec<Cyclotomic>>) {
    let mut keyed: Vec<(num::BigInt, bool, String, Vec<Cyclotomic>)> = rows
        .into_iter()
        .map(|r| {
            let deg = r[0].as_integer().expect("integral degree");
            let trivial = r.iter().all(|v| *v == Cyclotomic::one());
            let enc = r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";");
            (deg, !trivial, enc, r)
        })
        .collect();
    keyed.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));
    let mut per_degree: BTreeMap<String, u8> = BTreeMap::new();
    let mut names = Vec::new();
    let mut out = Vec::new();
    for (deg, _, _, row) in keyed {
        let key = deg.to_string();
        let letter = per_degree.entry(key.clone()).or_insert(0);
        names.push(format!("{}{}", key, (b'a' + *letter) as char));
        *letter += 1;
        out.push(row);
    }
    (names, out)
}

/// Compute and assemble the validated table fixture for a classified group.
pub fn build_table(id: &str, group_name: &str, classes: Classes) -> GroupData {
    let rows = dixon::character_table(&classes);
    let (irreducible_names, irreducibles) = arrange_irreducibles(rows);
    let class_names = class_names(&classes);
    let conj: Vec<ConjugacyClass> = (0..classes.class_count())
        .map(|i| ConjugacyClass {
            name: class_names[i].clone(),
            size: classes.sizes[i],
            element_order: classes.orders[i],
            centralizer_order: classes.centralizer_order(i),
        })
        .collect();
    let mut power_maps = BTreeMap::new();
    let mut n = classes.order;
    let mut q = 2u64;
    while n > 1 {
        if n % q as u128 == 0 {
            power_maps.insert(q, classes.power_map(q));
            while n % q as u128 == 0 {
                n /= q as u128;
            }
        }
        q += 1;
    }
    let table = CharacterTable {
        id: id.to_string(),
        group_name: group_name.to_string(),
        group_order: u64::try_from(classes.order).expect("group order fits u64"),
        classes: conj,
        power_maps,
        irreducible_names,
        irreducibles,
    };
    let report = validate_table(&table);
    assert!(
        report.passed(),
        "generated table {id} fails validation: {:?}",
        report.violations
    );
    GroupData { classes, table: Arc::new(table) }
}

/// Fusion of an embedded subgroup into its ambient group: each subgroup
/// class representative is identified inside the ambient class system.
/// Both class systems must live at the same permutation degree.
pub fn fusion_to_ambient(id: &str, sub: &GroupData, ambient: &GroupData) -> ClassFusion {
    let map = sub
        .classes
        .reps
        .iter()
        .map(|r| ambient.classes.identify(r))
        .collect();
    ClassFusion {
        id: id.to_string(),
        from: sub.table.clone(),
        to: ambient.table.clone(),
        map,
    }
}

/// Quotient map from an explicit class-level surjection: `project` sends an
/// element of the source group to an element of the quotient group's
/// permutation domain.
pub fn quotient_map(
    id: &str,
    from: &GroupData,
    quotient: &GroupData,
    project: impl Fn(&Perm) -> Perm,
) -> QuotientMap {
    let map = from
        .classes
        .reps
        .iter()
        .map(|r| quotient.classes.identify(&project(r)))
        .collect();
    QuotientMap {
        id: id.to_string(),
        from: from.table.clone(),
        quotient: quotient.table.clone(),
        map,
    }
}

/// Compose two fusions (used to emit explicit three-level chains).
pub fn compose_fusions(id: &str, inner: &ClassFusion, outer: &ClassFusion) -> ClassFusion {
    assert_eq!(inner.to.id, outer.from.id);
    let map = inner.map.iter().map(|&k| outer.map[k]).collect();
    ClassFusion {
        id: id.to_string(),
        from: inner.from.clone(),
        to: outer.to.clone(),
        map,
    }
}
