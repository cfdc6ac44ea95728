//! Expected-output records: the bundle's regression layer.
//!
//! Each record freezes one published quantity (a vector, a degree, a test
//! verdict, a decomposition) together with its citation, and the runner
//! recomputes it through the pipeline and diffs the result. The acceptance
//! suite and `lefblock verify` both run on top of this.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::bigint::BigInt;
use num::traits::Zero;

use super::format::parse_int_list;
use super::{DataError, FixtureBundle};
use crate::blocks::{block_project, BrauerBlockData, PatternOutcome};
use crate::chartab::parse_combination;
use crate::cosetgeom;
use crate::lefschetz::{assemble, LefschetzReport};
use crate::projtest::{
    classify, closest_decomposition, exact_vproj_solve, p_test, vanishing_test, Classification,
};

/// One frozen expectation with its provenance note.
#[derive(Debug, Clone)]
pub struct ExpectRecord {
    pub group: String,
    pub kind: ExpectKind,
    pub citation: String,
    pub file: String,
}

#[derive(Debug, Clone)]
pub enum ExpectKind {
    LambdaVector(Vec<BigInt>),
    LambdaMults(Vec<BigInt>),
    Degree(BigInt),
    /// (p, v_p(degree), v_p(|G|), gap)
    Profile(u64, u32, u32, i64),
    BlockVector { prime: u64, block: u32, values: Vec<BigInt> },
    BlockMults { prime: u64, block: u32, mults: Vec<BigInt> },
    PTest { prime: u64, scope: Scope, pass: bool },
    Vanishing { prime: u64, scope: Scope, pass: bool, witnesses: Vec<(String, BigInt)> },
    /// None = the exact solve must fail
    Exact { prime: u64, block: u32, combo: Option<Vec<(String, BigInt)>> },
    Closest {
        prime: u64,
        block: u32,
        phis: Vec<(String, BigInt)>,
        residue: Vec<(String, BigInt)>,
        total: BigInt,
    },
    Classification { prime: u64, class: Classification },
    DefectGap { prime: u64, defect: Option<u32>, gap: i64, outcome: PatternOutcome },
    /// induce the `from` combination through the fusion and compare
    Induce { fusion: String, from_expr: String, to_expr: String },
    OraclePair { perm: String, recipe: String },
    RecipePair { a: String, b: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Full,
    Block(u32),
}

/// Result of re-running one record.
#[derive(Debug, Clone)]
pub struct ExpectOutcome {
    pub record: ExpectRecord,
    pub pass: bool,
    pub detail: String,
}

pub(crate) fn parse_expect(
    file: &str,
    text: &str,
    bundle: &FixtureBundle,
) -> Result<Vec<ExpectRecord>, DataError> {
    let mut out = Vec::new();
    let mut saw_header = false;
    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != "lefblock-expect v1" {
                return Err(DataError::parse(file, ln, "missing header 'lefblock-expect v1'"));
            }
            saw_header = true;
            continue;
        }
        let (body, citation) = match line.split_once(" :: ") {
            Some((b, c)) => (b.trim(), c.trim().to_string()),
            None => (line, String::new()),
        };
        let mut parts = body.split_whitespace();
        let lead = parts.next().unwrap_or_default();
        if lead != "expect" {
            return Err(DataError::parse(file, ln, format!("expected 'expect', found '{lead}'")));
        }
        let group = parts
            .next()
            .ok_or_else(|| DataError::parse(file, ln, "expect needs a group id"))?
            .to_string();
        let kind_s = parts
            .next()
            .ok_or_else(|| DataError::parse(file, ln, "expect needs a record kind"))?;
        let rest: Vec<&str> = parts.collect();
        let kind = parse_kind(file, ln, kind_s, &rest, bundle)?;
        out.push(ExpectRecord { group, kind, citation, file: file.to_string() });
    }
    Ok(out)
}

fn parse_kind(
    file: &str,
    ln: usize,
    kind: &str,
    rest: &[&str],
    _bundle: &FixtureBundle,
) -> Result<ExpectKind, DataError> {
    let bad = |msg: &str| DataError::parse(file, ln, msg.to_string());
    let join = rest.join(" ");
    match kind {
        "lambda-vector" => Ok(ExpectKind::LambdaVector(parse_int_list(file, &join)?)),
        "lambda-mults" => Ok(ExpectKind::LambdaMults(parse_int_list(file, &join)?)),
        "degree" => Ok(ExpectKind::Degree(
            join.trim().parse().map_err(|_| bad("bad degree"))?,
        )),
        "profile" => {
            if rest.len() != 4 {
                return Err(bad("profile needs: p vdeg vgroup gap"));
            }
            Ok(ExpectKind::Profile(
                rest[0].parse().map_err(|_| bad("bad p"))?,
                rest[1].parse().map_err(|_| bad("bad vdeg"))?,
                rest[2].parse().map_err(|_| bad("bad vgroup"))?,
                rest[3].parse().map_err(|_| bad("bad gap"))?,
            ))
        }
        "block-vector" | "block-mults" => {
            if rest.len() < 2 {
                return Err(bad("block record needs: prime block values..."));
            }
            let prime = rest[0].parse().map_err(|_| bad("bad prime"))?;
            let block = rest[1].parse().map_err(|_| bad("bad block"))?;
            let values = parse_int_list(file, &rest[2..].join(" "))?;
            if kind == "block-vector" {
                Ok(ExpectKind::BlockVector { prime, block, values })
            } else {
                Ok(ExpectKind::BlockMults { prime, block, mults: values })
            }
        }
        "ptest" | "vanishing" => {
            if rest.len() < 3 {
                return Err(bad("test record needs: prime scope pass|fail"));
            }
            let prime = rest[0].parse().map_err(|_| bad("bad prime"))?;
            let scope = if rest[1] == "full" {
                Scope::Full
            } else {
                Scope::Block(rest[1].parse().map_err(|_| bad("bad block"))?)
            };
            let pass = match rest[2] {
                "pass" => true,
                "fail" => false,
                _ => return Err(bad("expected pass|fail")),
            };
            if kind == "ptest" {
                Ok(ExpectKind::PTest { prime, scope, pass })
            } else {
                let mut witnesses = Vec::new();
                if rest.len() > 3 {
                    if rest[3] != "witnesses" {
                        return Err(bad("expected 'witnesses'"));
                    }
                    for item in rest[4..].join(" ").split(',') {
                        let item = item.trim();
                        if item.is_empty() {
                            continue;
                        }
                        let (name, val) =
                            item.split_once('=').ok_or_else(|| bad("witness needs name=value"))?;
                        witnesses.push((
                            name.trim().to_string(),
                            val.trim().parse().map_err(|_| bad("bad witness value"))?,
                        ));
                    }
                }
                Ok(ExpectKind::Vanishing { prime, scope, pass, witnesses })
            }
        }
        "exact" => {
            if rest.len() < 3 {
                return Err(bad("exact record needs: prime block expr|none"));
            }
            let prime = rest[0].parse().map_err(|_| bad("bad prime"))?;
            let block = rest[1].parse().map_err(|_| bad("bad block"))?;
            let expr = rest[2..].join(" ");
            let combo = if expr.trim() == "none" { None } else { Some(parse_named_combo(file, ln, &expr)?) };
            Ok(ExpectKind::Exact { prime, block, combo })
        }
        "closest" => {
            // prime block phis <expr|0> residue <expr|0> total <int>
            let prime = rest
                .first()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad prime"))?;
            let block = rest
                .get(1)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad block"))?;
            let joined = rest[2..].join(" ");
            let phis_part = joined
                .split("phis")
                .nth(1)
                .and_then(|s| s.split("residue").next())
                .ok_or_else(|| bad("closest needs 'phis <expr> residue <expr> total <n>'"))?;
            let residue_part = joined
                .split("residue")
                .nth(1)
                .and_then(|s| s.split("total").next())
                .ok_or_else(|| bad("closest needs 'residue <expr>'"))?;
            let total_part = joined
                .split("total")
                .nth(1)
                .ok_or_else(|| bad("closest needs 'total <n>'"))?;
            let phis = parse_named_combo_or_zero(file, ln, phis_part.trim())?;
            let residue = parse_named_combo_or_zero(file, ln, residue_part.trim())?;
            let total = total_part.trim().parse().map_err(|_| bad("bad total"))?;
            Ok(ExpectKind::Closest { prime, block, phis, residue, total })
        }
        "classification" => {
            if rest.len() != 2 {
                return Err(bad("classification needs: prime class"));
            }
            let prime = rest[0].parse().map_err(|_| bad("bad prime"))?;
            let class = match rest[1] {
                "I-evidence" => Classification::IEvidence,
                "II" => Classification::II,
                "III" => Classification::III,
                _ => return Err(bad("expected I-evidence|II|III")),
            };
            Ok(ExpectKind::Classification { prime, class })
        }
        "defect-gap" => {
            if rest.len() != 4 {
                return Err(bad("defect-gap needs: prime defect gap outcome"));
            }
            let prime = rest[0].parse().map_err(|_| bad("bad prime"))?;
            let defect = if rest[1] == "none" {
                None
            } else {
                Some(rest[1].parse().map_err(|_| bad("bad defect"))?)
            };
            let gap = rest[2].parse().map_err(|_| bad("bad gap"))?;
            let outcome = match rest[3] {
                "equal" => PatternOutcome::Equal,
                "violated" => PatternOutcome::Violated,
                "none" => PatternOutcome::NoNonPrincipalPart,
                _ => return Err(bad("expected equal|violated|none")),
            };
            Ok(ExpectKind::DefectGap { prime, defect, gap, outcome })
        }
        "induce" => {
            // <fusion-id> <from-expr> = <to-expr>
            let joined = rest.join(" ");
            let mut split = joined.splitn(2, char::is_whitespace);
            let fusion = split.next().unwrap_or_default().to_string();
            let exprs = split.next().unwrap_or_default();
            let (from_expr, to_expr) =
                exprs.split_once('=').ok_or_else(|| bad("induce needs 'from = to'"))?;
            Ok(ExpectKind::Induce {
                fusion,
                from_expr: from_expr.trim().to_string(),
                to_expr: to_expr.trim().to_string(),
            })
        }
        "oracle-pair" => {
            if rest.len() != 2 {
                return Err(bad("oracle-pair needs: perm-id recipe-id"));
            }
            Ok(ExpectKind::OraclePair { perm: rest[0].to_string(), recipe: rest[1].to_string() })
        }
        "recipe-pair" => {
            if rest.len() != 2 {
                return Err(bad("recipe-pair needs two recipe ids"));
            }
            Ok(ExpectKind::RecipePair { a: rest[0].to_string(), b: rest[1].to_string() })
        }
        other => Err(bad(&format!("unknown record kind '{other}'"))),
    }
}

/// "2*phi8+phi6" or "97*phi9" or "chi24" style named sums.
fn parse_named_combo(
    file: &str,
    ln: usize,
    expr: &str,
) -> Result<Vec<(String, BigInt)>, DataError> {
    let mut out: BTreeMap<String, BigInt> = BTreeMap::new();
    for piece in expr.split('+') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(DataError::parse(file, ln, "empty term in combination"));
        }
        let (coeff, name) = match piece.split_once('*') {
            Some((c, n)) => (
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| DataError::parse(file, ln, format!("bad coefficient in '{piece}'")))?,
                n.trim().to_string(),
            ),
            None => (BigInt::from(1), piece.to_string()),
        };
        *out.entry(name).or_insert_with(BigInt::zero) += coeff;
    }
    Ok(out.into_iter().collect())
}

fn parse_named_combo_or_zero(
    file: &str,
    ln: usize,
    expr: &str,
) -> Result<Vec<(String, BigInt)>, DataError> {
    if expr == "0" {
        Ok(Vec::new())
    } else {
        parse_named_combo(file, ln, expr)
    }
}

// ---------------------------------------------------------------------------
// the runner
// ---------------------------------------------------------------------------

struct Ctx<'b> {
    bundle: &'b FixtureBundle,
    reports: BTreeMap<String, Arc<LefschetzReport>>,
}

impl<'b> Ctx<'b> {
    fn report(&mut self, group: &str) -> Result<Arc<LefschetzReport>, String> {
        if let Some(r) = self.reports.get(group) {
            return Ok(r.clone());
        }
        let recipe = self
            .bundle
            .recipe_for(group)
            .ok_or_else(|| format!("no recipe for group {group}"))?;
        let report = assemble(recipe).map_err(|e| e.to_string())?;
        let arc = Arc::new(report);
        self.reports.insert(group.to_string(), arc.clone());
        Ok(arc)
    }

    fn brauer(&self, group: &str, prime: u64) -> Result<Arc<BrauerBlockData>, String> {
        self.bundle
            .brauer_for(group, prime)
            .cloned()
            .ok_or_else(|| format!("no mod-{prime} block data for {group}"))
    }
}

/// Re-run every expectation in the bundle; one outcome per record.
pub fn run_expectations(bundle: &FixtureBundle) -> Vec<ExpectOutcome> {
    let mut ctx = Ctx { bundle, reports: BTreeMap::new() };
    bundle
        .expects
        .iter()
        .map(|rec| {
            let (pass, detail) = match eval(&mut ctx, rec) {
                Ok(detail) => (true, detail),
                Err(detail) => (false, detail),
            };
            ExpectOutcome { record: rec.clone(), pass, detail }
        })
        .collect()
}

fn check<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn eval(ctx: &mut Ctx, rec: &ExpectRecord) -> Result<String, String> {
    match &rec.kind {
        ExpectKind::LambdaVector(want) => {
            let report = ctx.report(&rec.group)?;
            let got = integer_vector(&report.lambda.values)?;
            check("lambda vector", &got, want)?;
            Ok(format!("{} classes match", want.len()))
        }
        ExpectKind::LambdaMults(want) => {
            let report = ctx.report(&rec.group)?;
            check("lambda mults", &report.mults.mults, want)?;
            Ok(format!("scalar-product form matches ({})", report.mults.describe()))
        }
        ExpectKind::Degree(want) => {
            let report = ctx.report(&rec.group)?;
            check("degree", &report.degree, want)?;
            Ok(format!("degree {want}"))
        }
        ExpectKind::Profile(p, vdeg, vg, gap) => {
            let report = ctx.report(&rec.group)?;
            let got = crate::lefschetz::two_adic_profile(&report, *p).map_err(|e| e.to_string())?;
            check("profile", got, (*vdeg, *vg, *gap))?;
            Ok(format!("v_{p} profile ({vdeg}, {vg}, {gap})"))
        }
        ExpectKind::BlockVector { prime, block, values } => {
            let report = ctx.report(&rec.group)?;
            let b = ctx.brauer(&rec.group, *prime)?;
            let part = block_project(&b, &report.mults, *block).map_err(|e| e.to_string())?;
            let got = integer_vector(&part.values.values)?;
            check("block vector", &got, values)?;
            Ok(format!("block {block} vector matches"))
        }
        ExpectKind::BlockMults { prime, block, mults } => {
            let report = ctx.report(&rec.group)?;
            let b = ctx.brauer(&rec.group, *prime)?;
            let part = block_project(&b, &report.mults, *block).map_err(|e| e.to_string())?;
            check("block mults", &part.mults.mults, mults)?;
            Ok(format!("block {block} multiplicities match"))
        }
        ExpectKind::PTest { prime, scope, pass } => {
            let report = ctx.report(&rec.group)?;
            let degree = match scope {
                Scope::Full => report.degree.clone(),
                Scope::Block(blk) => {
                    let b = ctx.brauer(&rec.group, *prime)?;
                    block_project(&b, &report.mults, *blk)
                        .map_err(|e| e.to_string())?
                        .mults
                        .degree()
                }
            };
            let v = p_test(&degree, report.lambda.table.order_valuation(*prime), *prime);
            check("p-test", v.pass, *pass)?;
            Ok(format!("p-test {}", if *pass { "passes" } else { "fails" }))
        }
        ExpectKind::Vanishing { prime, scope, pass, witnesses } => {
            let report = ctx.report(&rec.group)?;
            let cf = match scope {
                Scope::Full => report.lambda.clone(),
                Scope::Block(blk) => {
                    let b = ctx.brauer(&rec.group, *prime)?;
                    block_project(&b, &report.mults, *blk).map_err(|e| e.to_string())?.values
                }
            };
            let v = vanishing_test(&cf, *prime);
            check("vanishing", v.pass, *pass)?;
            if !witnesses.is_empty() {
                check("witnesses", &v.witnesses, witnesses)?;
            }
            Ok(format!(
                "vanishing {} ({} witnesses)",
                if *pass { "passes" } else { "fails" },
                v.witnesses.len()
            ))
        }
        ExpectKind::Exact { prime, block, combo } => {
            let report = ctx.report(&rec.group)?;
            let b = ctx.brauer(&rec.group, *prime)?;
            let part = block_project(&b, &report.mults, *block).map_err(|e| e.to_string())?;
            let sol = exact_vproj_solve(&part, &b);
            match combo {
                None => match sol {
                    Err(_) => Ok("exact solve fails as expected".to_string()),
                    Ok(s) => Err(format!("exact solve unexpectedly succeeded: {s:?}")),
                },
                Some(want) => {
                    let sol = sol.map_err(|e| e.to_string())?;
                    let got: Vec<(String, BigInt)> = sol
                        .into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(j, c)| (b.brauer_names[j].clone(), c))
                        .collect();
                    let want_sorted: Vec<(String, BigInt)> = want.clone();
                    check("exact expression", &got, &want_sorted)?;
                    Ok(format!("exact: {}", describe_combo(&got)))
                }
            }
        }
        ExpectKind::Closest { prime, block, phis, residue, total } => {
            let report = ctx.report(&rec.group)?;
            let b = ctx.brauer(&rec.group, *prime)?;
            let part = block_project(&b, &report.mults, *block).map_err(|e| e.to_string())?;
            let expr = closest_decomposition(&part, &b).map_err(|e| e.to_string())?;
            let got_phis: Vec<(String, BigInt)> = expr
                .phi_coeffs
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (b.brauer_names[*j].clone(), c.clone()))
                .collect();
            let got_res: Vec<(String, BigInt)> = expr
                .residue
                .iter()
                .map(|(i, c)| (format!("chi{}", i + 1), c.clone()))
                .collect();
            check("closest phis", &got_phis, phis)?;
            check("closest residue", &got_res, residue)?;
            check("residue total", &expr.residue_total, total)?;
            if !expr.reconstructs(&part, &b) {
                return Err("closest expression does not reconstruct the part".to_string());
            }
            Ok(format!(
                "closest: {} + [{}], residue total {}",
                describe_combo(&got_phis),
                describe_combo(&got_res),
                total
            ))
        }
        ExpectKind::Classification { prime, class } => {
            let report = ctx.report(&rec.group)?;
            let b = ctx.brauer(&rec.group, *prime)?;
            let out = classify(&report.mults, &b).map_err(|e| e.to_string())?;
            check("classification", out.classification, *class)?;
            Ok(format!("classification {}", class))
        }
        ExpectKind::DefectGap { prime, defect, gap, outcome } => {
            let report = ctx.report(&rec.group)?;
            let b = ctx.brauer(&rec.group, *prime)?;
            let v = crate::blocks::defect_gap_check(&b, &report.mults).map_err(|e| e.to_string())?;
            check("max non-principal defect", v.max_nonprincipal_defect, *defect)?;
            check("valuation gap", v.valuation_gap, *gap)?;
            check("pattern outcome", v.verdict, *outcome)?;
            Ok(format!("defect {defect:?} vs gap {gap}: {outcome:?}"))
        }
        ExpectKind::Induce { fusion, from_expr, to_expr } => {
            let f = ctx
                .bundle
                .fusions
                .get(fusion)
                .ok_or_else(|| format!("no fusion {fusion}"))?;
            let from_vc =
                parse_combination(&f.from, from_expr).map_err(|e| e.to_string())?;
            let induced = crate::chartab::induce(&from_vc.class_function(), f)
                .map_err(|e| e.to_string())?;
            let got = crate::chartab::decompose(&induced).map_err(|e| e.to_string())?;
            let want = parse_combination(&f.to, to_expr).map_err(|e| e.to_string())?;
            check("induced decomposition", &got.mults, &want.mults)?;
            Ok(format!("[{}]^ = {}", from_expr, got.describe()))
        }
        ExpectKind::OraclePair { perm, recipe } => {
            let spec = ctx.bundle.perms.get(perm).ok_or_else(|| format!("no perm spec {perm}"))?;
            let rec_arc =
                ctx.bundle.recipes.get(recipe).ok_or_else(|| format!("no recipe {recipe}"))?;
            let report = assemble(rec_arc).map_err(|e| e.to_string())?;
            let oracle = cosetgeom::lefschetz_by_fixed_points(spec, cosetgeom::DEFAULT_BOUND)
                .map_err(|e| e.to_string())?;
            let algebraic = integer_vector(&report.lambda.values)?;
            if oracle.len() != algebraic.len() {
                return Err(format!(
                    "oracle found {} classes, table has {}",
                    oracle.len(),
                    algebraic.len()
                ));
            }
            // the perm spec's class reps are emitted in table class order
            for (c, (name, chi)) in oracle.iter().enumerate() {
                if BigInt::from(*chi) != algebraic[c] {
                    return Err(format!(
                        "route mismatch at class {name}: oracle {chi}, algebraic {}",
                        algebraic[c]
                    ));
                }
            }
            Ok(format!("route equivalence over {} classes", oracle.len()))
        }
        ExpectKind::RecipePair { a, b } => {
            let ra = ctx.bundle.recipes.get(a).ok_or_else(|| format!("no recipe {a}"))?;
            let rb = ctx.bundle.recipes.get(b).ok_or_else(|| format!("no recipe {b}"))?;
            let xa = assemble(ra).map_err(|e| e.to_string())?;
            let xb = assemble(rb).map_err(|e| e.to_string())?;
            if xa.lambda != xb.lambda {
                return Err("recipe forms disagree".to_string());
            }
            Ok("recipe forms agree bit-identically".to_string())
        }
    }
}

fn integer_vector(values: &[crate::cyclo::Cyclotomic]) -> Result<Vec<BigInt>, String> {
    values
        .iter()
        .map(|v| v.as_integer().map_err(|e| e.to_string()))
        .collect()
}

fn describe_combo(combo: &[(String, BigInt)]) -> String {
    if combo.is_empty() {
        return "0".to_string();
    }
    combo
        .iter()
        .map(|(n, c)| {
            if c == &BigInt::from(1) {
                n.clone()
            } else {
                format!("{c}*{n}")
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}
