//! Desk-scale fixture groups: the symmetric-group family, the Fano-plane
//! building of GL(3,2), and U4(2) with its two Sylow-containing subgroups.
//! These carry the unit-scale expectations and the oracle route pairs.

use std::sync::Arc;

use lefblock_core::blocks::{BlockInfo, BrauerBlockData};
use lefblock_core::chartab::ClassFusion;
use lefblock_core::cosetgeom::{self, PermGroupSpec, Permutation};
use lefblock_core::lefschetz::{RecipeTerm, SimplexRecipe};

use crate::emit::BundleWriter;
use crate::grp::{self, find_classes, Subgroup};
use crate::perm::Perm;
use crate::tables::{self, build_table, compose_fusions, fusion_to_ambient, GroupData};

fn p(degree: usize, cycles: &str) -> Perm {
    let core = Permutation::parse_cycles(degree, cycles).expect("valid cycles");
    from_core(&core)
}

pub fn from_core(x: &Permutation) -> Perm {
    Perm(x.images.iter().map(|&v| v as u8).collect())
}

pub fn to_core(x: &Perm) -> Permutation {
    Permutation::from_images(x.0.iter().map(|&v| v as u16).collect()).expect("valid")
}

fn group(id: &str, name: &str, degree: usize, gens: Vec<Perm>, order: u128, seed: u64) -> GroupData {
    let classes = find_classes(&gens, degree, order, seed);
    build_table(id, name, classes)
}

/// Class representatives in table order, for oracle perm specs.
fn class_reps(g: &GroupData) -> Vec<(String, Permutation)> {
    g.table
        .classes
        .iter()
        .zip(&g.classes.reps)
        .map(|(c, rep)| (c.name.clone(), to_core(rep)))
        .collect()
}

struct Recipe {
    recipe: SimplexRecipe,
    exprs: Vec<String>,
}

fn make_recipe(
    id: &str,
    group: &GroupData,
    terms: Vec<(&str, i64, &GroupData, &ClassFusion, &str)>,
) -> Recipe {
    let mut exprs = Vec::new();
    let rterms = terms
        .into_iter()
        .map(|(label, sign, carrier, fusion, comb)| {
            exprs.push(comb.to_string());
            RecipeTerm {
                subset_label: label.to_string(),
                sign,
                carrier: carrier.table.clone(),
                combination: lefblock_core::chartab::parse_combination(&carrier.table, comb)
                    .expect("combination parses"),
                fusion: Arc::new(fusion.clone()),
            }
        })
        .collect();
    let recipe = SimplexRecipe {
        id: id.to_string(),
        group: group.table.clone(),
        terms: rterms,
        reduced: true,
        negate: false,
    };
    recipe.validate().expect("recipe validates");
    Recipe { recipe, exprs }
}

/// Assemble a recipe and freeze the oracle's fixed-point values alongside,
/// asserting the two independent routes agree before anything is emitted.
fn oracle_vector(spec: &PermGroupSpec, recipe: &SimplexRecipe) -> Vec<i64> {
    let oracle = cosetgeom::lefschetz_by_fixed_points(spec, cosetgeom::DEFAULT_BOUND)
        .expect("oracle within bound");
    let report = lefblock_core::lefschetz::assemble(recipe).expect("recipe assembles");
    let algebraic: Vec<i64> = report
        .lambda
        .values
        .iter()
        .map(|v| i64::try_from(&v.as_integer().expect("integral")).unwrap())
        .collect();
    let oracle_vals: Vec<i64> = oracle.iter().map(|(_, v)| *v).collect();
    assert_eq!(oracle_vals, algebraic, "oracle and algebraic routes disagree for {}", recipe.id);
    oracle_vals
}

fn ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn emit_toys(w: &mut BundleWriter) {
    // --- symmetric family ------------------------------------------------
    let s3 = group("S3", "S3", 3, vec![p(3, "(0 1)"), p(3, "(0 1 2)")], 6, 11);
    let a3 = group("A3", "A3", 3, vec![p(3, "(0 1 2)")], 3, 12);
    let s3_c2 = group("S3-C2", "C2 in S3", 3, vec![p(3, "(0 1)")], 2, 13);
    let s4 = group("S4", "S4", 4, vec![p(4, "(0 1)"), p(4, "(0 1 2 3)")], 24, 14);
    let s4_s3 = group("S4-S3", "S3 in S4", 4, vec![p(4, "(0 1)"), p(4, "(0 1 2)")], 6, 15);
    let s4_d8 = group("S4-D8", "D8 in S4", 4, vec![p(4, "(0 1 2 3)"), p(4, "(0 2)")], 8, 16);
    let s4_c2 = group("S4-C2", "C2 in S4", 4, vec![p(4, "(0 2)")], 2, 17);
    let a4 = group("A4", "A4", 4, vec![p(4, "(0 1 2)"), p(4, "(1 2 3)")], 12, 18);
    let a5 = group("A5", "A5", 5, vec![p(5, "(0 1 2)"), p(5, "(0 1 2 3 4)")], 60, 19);
    let a5_a4 = group("A5-A4", "A4 in A5", 5, vec![p(5, "(0 1 2)"), p(5, "(1 2 3)")], 12, 20);

    for g in [&s3, &a3, &s3_c2, &s4, &s4_s3, &s4_d8, &s4_c2, &a4, &a5, &a5_a4] {
        w.table(&g.table);
    }

    // fusions, including an explicit three-level chain A3 < S3 < S4
    let f_a3_s3 = fusion_to_ambient("A3-into-S3", &a3, &s3);
    let f_c2_s3 = fusion_to_ambient("S3-C2-into-S3", &s3_c2, &s3);
    let f_s3_s4 = fusion_to_ambient("S4-S3-into-S4", &s4_s3, &s4);
    let f_d8_s4 = fusion_to_ambient("S4-D8-into-S4", &s4_d8, &s4);
    let f_c2_s4 = fusion_to_ambient("S4-C2-into-S4", &s4_c2, &s4);
    let f_a4_a5 = fusion_to_ambient("A5-A4-into-A5", &a5_a4, &a5);
    // abstract S3 (3-point table) embedded in S4: classes match by element
    // order, which is unambiguous for S3
    let f_abs_s3_s4 = {
        let map = s3
            .classes
            .orders
            .iter()
            .map(|&ord| {
                let matches: Vec<usize> = s4_s3
                    .classes
                    .orders
                    .iter()
                    .enumerate()
                    .filter(|(_, &o)| o == ord)
                    .map(|(i, _)| i)
                    .collect();
                assert_eq!(matches.len(), 1, "S3 class orders must be unique");
                f_s3_s4.map[matches[0]]
            })
            .collect();
        ClassFusion { id: "S3-into-S4".into(), from: s3.table.clone(), to: s4.table.clone(), map }
    };
    let f_a3_s4 = compose_fusions("A3-into-S4", &f_a3_s3, &f_abs_s3_s4);
    for f in [&f_a3_s3, &f_c2_s3, &f_s3_s4, &f_d8_s4, &f_c2_s4, &f_a4_a5, &f_abs_s3_s4, &f_a3_s4] {
        w.fusion(f);
    }

    // quotient map S4 -> S3 via the action on the three 2|2 partitions
    let qmap = tables::quotient_map("S4-onto-S3", &s4, &s3, |g| {
        // partition k pairs 0 with k+1; the image partition pairs g(0) with
        // g(k+1), i.e. it is the partition pairing 0 with partner.
        let imgs: Vec<u8> = (0..3)
            .map(|k| {
                let a = g.0[0];
                let b = g.0[(k + 1) as usize];
                let partner = if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else {
                    // 0 is in the other pair {c, d} = {0..3} minus {a, b}
                    let mut rest = [0u8, 1, 2, 3]
                        .into_iter()
                        .filter(|&x| x != a && x != b);
                    let c = rest.next().unwrap();
                    let d = rest.next().unwrap();
                    if c == 0 {
                        d
                    } else {
                        c
                    }
                };
                partner - 1
            })
            .collect();
        Perm(imgs)
    });
    w.qmap(&qmap);

    // --- Brauer data (p = 2) ----------------------------------------------
    let b_s3 = BrauerBlockData {
        table: s3.table.clone(),
        prime: 2,
        blocks: vec![BlockInfo { id: 1, defect: 1 }, BlockInfo { id: 2, defect: 0 }],
        ordinary_to_block: vec![1, 1, 2],
        brauer_names: vec!["phi1".into(), "phi2".into()],
        brauer_to_block: vec![1, 2],
        decomposition: vec![vec![1, 0], vec![1, 0], vec![0, 1]],
    };
    let b_s4 = BrauerBlockData {
        table: s4.table.clone(),
        prime: 2,
        blocks: vec![BlockInfo { id: 1, defect: 3 }],
        ordinary_to_block: vec![1; 5],
        brauer_names: vec!["phi1".into(), "phi2".into()],
        brauer_to_block: vec![1, 1],
        decomposition: vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 1]],
    };
    let b_a5 = BrauerBlockData {
        table: a5.table.clone(),
        prime: 2,
        blocks: vec![BlockInfo { id: 1, defect: 2 }, BlockInfo { id: 2, defect: 0 }],
        ordinary_to_block: vec![1, 1, 1, 2, 1],
        brauer_names: vec!["phi1".into(), "phi2".into(), "phi3".into(), "phi4".into()],
        brauer_to_block: vec![1, 1, 1, 2],
        decomposition: vec![
            vec![1, 0, 0, 0],
            vec![1, 1, 0, 0],
            vec![1, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 1, 1, 0],
        ],
    };
    for b in [&b_s3, &b_s4, &b_a5] {
        let violations = b.validate();
        assert!(violations.is_empty(), "{}: {violations:?}", b.table.id);
        w.brauer(b);
    }

    // --- geometries, recipes and expectations -----------------------------
    // S3 on 3 points: single subgroup C2
    let s3_recipe = make_recipe("S3", &s3, vec![("1", 1, &s3_c2, &f_c2_s3, "1a")]);
    let s3_spec = PermGroupSpec {
        id: "S3-geom".into(),
        degree: 3,
        group_gens: s3.classes.gens.iter().map(to_core).collect(),
        subgroups: vec![("C2".into(), vec![to_core(&p(3, "(0 1)"))])],
        class_reps: Some(class_reps(&s3)),
    };
    let v = oracle_vector(&s3_spec, &s3_recipe.recipe);
    w.perm(&s3_spec);
    w.recipe(&s3_recipe.recipe, &s3_recipe.exprs);
    w.expect(
        "S3",
        &[
            format!("expect S3 lambda-vector {} :: derived: fixed-point oracle", ints(&v)),
            "expect S3 oracle-pair S3-geom S3 :: derived: route equivalence".to_string(),
            "expect S3 classification 2 I-evidence :: derived: vanishing test".to_string(),
            "expect S3 defect-gap 2 0 0 equal :: derived: defect-0 part of degree 2".to_string(),
        ],
    );

    // S4 with S3 and D8: the flag-type pair from the 4-point action
    let s4_recipe = make_recipe(
        "S4",
        &s4,
        vec![
            ("1", 1, &s4_s3, &f_s3_s4, "1a"),
            ("2", 1, &s4_d8, &f_d8_s4, "1a"),
            ("12", -1, &s4_c2, &f_c2_s4, "1a"),
        ],
    );
    // cancelled form through the S3 carrier: 1^(C2->S4) = [1a+2a]^(S3->S4)
    let s4_cancelled = make_recipe(
        "S4-cancelled",
        &s4,
        vec![
            ("1", 1, &s4_s3, &f_s3_s4, "1a"),
            ("2", 1, &s4_d8, &f_d8_s4, "1a"),
            ("12", -1, &s4_s3, &f_s3_s4, "1a+2a"),
        ],
    );
    let s4_spec = PermGroupSpec {
        id: "S4-geom".into(),
        degree: 4,
        group_gens: s4.classes.gens.iter().map(to_core).collect(),
        subgroups: vec![
            ("S3".into(), s4_s3.classes.gens.iter().map(to_core).collect()),
            ("D8".into(), s4_d8.classes.gens.iter().map(to_core).collect()),
        ],
        class_reps: Some(class_reps(&s4)),
    };
    let v = oracle_vector(&s4_spec, &s4_recipe.recipe);
    w.perm(&s4_spec);
    w.recipe(&s4_recipe.recipe, &s4_recipe.exprs);
    w.recipe(&s4_cancelled.recipe, &s4_cancelled.exprs);
    w.expect(
        "S4",
        &[
            format!("expect S4 lambda-vector {} :: derived: fixed-point oracle", ints(&v)),
            "expect S4 oracle-pair S4-geom S4 :: derived: route equivalence".to_string(),
            "expect S4 recipe-pair S4 S4-cancelled :: derived: cancellation via transitivity"
                .to_string(),
            "expect S4 classification 2 III :: derived: principal part fails vanishing"
                .to_string(),
        ],
    );

    // A5 with A4: degenerate recipe, Lefschetz character is the 4-dim
    let a5_recipe = make_recipe("A5", &a5, vec![("1", 1, &a5_a4, &f_a4_a5, "1a")]);
    let a5_spec = PermGroupSpec {
        id: "A5-geom".into(),
        degree: 5,
        group_gens: a5.classes.gens.iter().map(to_core).collect(),
        subgroups: vec![("A4".into(), a5_a4.classes.gens.iter().map(to_core).collect())],
        class_reps: Some(class_reps(&a5)),
    };
    let v = oracle_vector(&a5_spec, &a5_recipe.recipe);
    w.perm(&a5_spec);
    w.recipe(&a5_recipe.recipe, &a5_recipe.exprs);
    w.expect(
        "A5",
        &[
            format!("expect A5 lambda-vector {} :: derived: fixed-point oracle", ints(&v)),
            "expect A5 oracle-pair A5-geom A5 :: derived: route equivalence".to_string(),
            "expect A5 classification 2 I-evidence :: derived: defect-0 Lefschetz character"
                .to_string(),
            "expect A5 induce A5-A4-into-A5 1a = 1a+4a :: literature: 5-point permutation character"
                .to_string(),
        ],
    );
}

pub fn emit_gl32(w: &mut BundleWriter) {
    let spec = cosetgeom::gl32_spec();
    let gens: Vec<Perm> = spec.group_gens.iter().map(from_core).collect();
    let gl32 = {
        let classes = find_classes(&gens, 7, 168, 21);
        build_table("GL32", "GL(3,2)", classes)
    };
    let p1_gens: Vec<Perm> = spec.subgroups[0].1.iter().map(from_core).collect();
    let p2_gens: Vec<Perm> = spec.subgroups[1].1.iter().map(from_core).collect();
    let p1 = {
        let classes = find_classes(&p1_gens, 7, 24, 22);
        build_table("GL32-P1", "point stabilizer in GL(3,2)", classes)
    };
    let p2 = {
        let classes = find_classes(&p2_gens, 7, 24, 23);
        build_table("GL32-P2", "line stabilizer in GL(3,2)", classes)
    };
    // flag stabilizer = P1 meet P2
    let sub1 = Subgroup::from_gens(&p1_gens, 7, 50).unwrap();
    let sub2 = Subgroup::from_gens(&p2_gens, 7, 50).unwrap();
    let flag_elems = sub1.intersect(&sub2);
    assert_eq!(flag_elems.len(), 8);
    let borel = {
        let classes = find_classes(&flag_elems, 7, 8, 24);
        build_table("GL32-B", "flag stabilizer in GL(3,2)", classes)
    };

    for g in [&gl32, &p1, &p2, &borel] {
        w.table(&g.table);
    }
    let f_p1 = fusion_to_ambient("GL32-P1-into-GL32", &p1, &gl32);
    let f_p2 = fusion_to_ambient("GL32-P2-into-GL32", &p2, &gl32);
    let f_b = fusion_to_ambient("GL32-B-into-GL32", &borel, &gl32);
    let f_b_p1 = fusion_to_ambient("GL32-B-into-GL32-P1", &borel, &p1);
    for f in [&f_p1, &f_p2, &f_b, &f_b_p1] {
        w.fusion(f);
    }

    // Brauer data: Steinberg is the defect-0 block; the principal block
    // rows follow the mod-2 constituent pattern of the Fano-plane module
    let deg = |k: usize| -> i64 {
        i64::try_from(&gl32.table.degree(k)).unwrap()
    };
    let degs: Vec<i64> = (0..6).map(deg).collect();
    assert_eq!(degs, vec![1, 3, 3, 6, 7, 8]);
    let b_gl32 = BrauerBlockData {
        table: gl32.table.clone(),
        prime: 2,
        blocks: vec![BlockInfo { id: 1, defect: 3 }, BlockInfo { id: 2, defect: 0 }],
        ordinary_to_block: vec![1, 1, 1, 1, 1, 2],
        brauer_names: (1..=4).map(|i| format!("phi{i}")).collect(),
        brauer_to_block: vec![1, 1, 1, 2],
        decomposition: vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 1, 1, 0],
            vec![1, 1, 1, 0],
            vec![0, 0, 0, 1],
        ],
    };
    let violations = b_gl32.validate();
    assert!(violations.is_empty(), "GL32 brauer: {violations:?}");
    w.brauer(&b_gl32);

    let full = make_recipe(
        "GL32",
        &gl32,
        vec![
            ("1", 1, &p1, &f_p1, "1a"),
            ("2", 1, &p2, &f_p2, "1a"),
            ("12", -1, &borel, &f_b, "1a"),
        ],
    );
    // cancelled form: 1^(B->GL32) factors through P1 as 1a+2a
    let cancelled = make_recipe(
        "GL32-cancelled",
        &gl32,
        vec![
            ("1", 1, &p1, &f_p1, "1a"),
            ("2", 1, &p2, &f_p2, "1a"),
            ("12", -1, &p1, &f_p1, "1a+2a"),
        ],
    );
    let mut pspec = spec.clone();
    pspec.id = "GL32-geom".into();
    pspec.class_reps = Some(class_reps(&gl32));
    let v = oracle_vector(&pspec, &full.recipe);
    assert_eq!(v[0], -8);
    w.perm(&pspec);
    w.recipe(&full.recipe, &full.exprs);
    w.recipe(&cancelled.recipe, &cancelled.exprs);
    w.expect(
        "GL32",
        &[
            format!("expect GL32 lambda-vector {} :: derived: fixed-point oracle over the Fano building", ints(&v)),
            "expect GL32 degree -8 :: derived: 14 vertices - 21 flags - 1".to_string(),
            "expect GL32 oracle-pair GL32-geom GL32 :: derived: route equivalence".to_string(),
            "expect GL32 recipe-pair GL32 GL32-cancelled :: derived: cancellation via transitivity".to_string(),
            "expect GL32 classification 2 I-evidence :: derived: the building carries minus the Steinberg character".to_string(),
            "expect GL32 exact 2 2 -1*phi4 :: derived: Steinberg block solve".to_string(),
            "expect GL32 vanishing 2 full pass :: derived: values vanish at 2-power order classes".to_string(),
            "expect GL32 induce GL32-B-into-GL32-P1 1a = 1a+2a :: derived: 3-point coset action".to_string(),
        ],
    );
}

pub fn emit_u42(w: &mut BundleWriter) {
    // U4(2) as the projective symplectic group on the 40 points of PG(3,3)
    let (gens, degree) = u42_generators();
    let u42 = {
        let classes = find_classes(&gens, degree, 25920, 25);
        build_table("U42", "U4(2)", classes)
    };
    assert_eq!(u42.table.class_count(), 20);

    // Sylow-containing subgroups of orders 960 and 576
    let whole = Subgroup::from_gens(&gens, degree, 26000).expect("U4(2) enumerates");
    let sylow = grp::sylow2_of(&whole, degree);
    assert_eq!(sylow.order(), 64);
    let mut found: Vec<(usize, Subgroup)> = Vec::new();
    for g in &whole.elements {
        if found.iter().any(|(o, _)| *o == 960) && found.iter().any(|(o, _)| *o == 576) {
            break;
        }
        if g.order() % 2 == 0 || g.is_identity() {
            continue;
        }
        let mut cand_gens = sylow.gens.clone();
        cand_gens.push(g.clone());
        if let Some(sub) = Subgroup::from_gens(&cand_gens, degree, 1200) {
            let o = sub.order();
            if (o == 960 || o == 576) && !found.iter().any(|(fo, fs)| *fo == o && fs.set_fp() == sub.set_fp()) {
                found.push((o, sub));
            }
        }
    }
    let h12 = &found.iter().find(|(o, _)| *o == 960).expect("960-order subgroup").1;
    let h14 = &found.iter().find(|(o, _)| *o == 576).expect("576-order subgroup").1;

    let h12_data = {
        let classes = find_classes(&h12.gens, degree, 960, 26);
        build_table("U42-H12", "2^4:A5 in U4(2)", classes)
    };
    let h14_data = {
        let classes = find_classes(&h14.gens, degree, 576, 27);
        build_table("U42-H14", "index-45 2-local in U4(2)", classes)
    };
    for g in [&u42, &h12_data, &h14_data] {
        w.table(&g.table);
    }
    let f12 = fusion_to_ambient("U42-H12-into-U42", &h12_data, &u42);
    let f14 = fusion_to_ambient("U42-H14-into-U42", &h14_data, &u42);
    w.fusion(&f12);
    w.fusion(&f14);
    w.expect(
        "U42",
        &[
            "expect U42 induce U42-H12-into-U42 1a = 1a+6a+20a :: literature: 27-point permutation character of U4(2)".to_string(),
            "expect U42 induce U42-H14-into-U42 1a = 1a+20a+24a :: literature: 45-point permutation character of U4(2)".to_string(),
        ],
    );
}

/// Generators of PSp4(3) = U4(2) acting on the 40 projective points of
/// F_3^4, built from symplectic transvections.
fn u42_generators() -> (Vec<Perm>, usize) {
    // vectors over F3 packed as 4 digits; the symplectic form is
    // <x, y> = x1 y2 - x2 y1 + x3 y4 - x4 y3
    type V = [u8; 4];
    fn form(x: &V, y: &V) -> u8 {
        let s = (x[0] * y[1] + 2 * x[1] * y[0] + x[2] * y[3] + 2 * x[3] * y[2]) % 3;
        s % 3
    }
    fn scale(x: &V, c: u8) -> V {
        [x[0] * c % 3, x[1] * c % 3, x[2] * c % 3, x[3] * c % 3]
    }
    fn add(x: &V, y: &V) -> V {
        [(x[0] + y[0]) % 3, (x[1] + y[1]) % 3, (x[2] + y[2]) % 3, (x[3] + y[3]) % 3]
    }
    fn canonical(x: &V) -> V {
        let lead = x.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        if lead == 0 || lead == 1 {
            *x
        } else {
            scale(x, 2)
        }
    }
    // enumerate projective points
    let mut points: Vec<V> = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    let v = [a, b, c, d];
                    if v != [0, 0, 0, 0] && canonical(&v) == v {
                        points.push(v);
                    }
                }
            }
        }
    }
    assert_eq!(points.len(), 40);
    let index_of = |v: &V| -> usize {
        let c = canonical(v);
        points.iter().position(|p| *p == c).unwrap()
    };
    // transvection x -> x + lam <x, u> u as a projective permutation
    let transvection = |u: &V, lam: u8| -> Perm {
        let imgs: Vec<u8> = points
            .iter()
            .map(|x| {
                let f = form(x, u);
                let y = add(x, &scale(u, lam * f % 3));
                index_of(&y) as u8
            })
            .collect();
        Perm(imgs)
    };
    let gens = vec![
        transvection(&[1, 0, 0, 0], 1),
        transvection(&[0, 1, 0, 0], 1),
        transvection(&[0, 0, 1, 0], 1),
        transvection(&[0, 0, 0, 1], 1),
        transvection(&[1, 0, 1, 0], 1),
        transvection(&[0, 1, 1, 1], 2),
    ];
    (gens, 40)
}
