//! End-to-end analysis of one group from a bundle, and the two report
//! renderings (plain text and versioned JSON).

use serde::Serialize;

use num::traits::Zero;

use super::FixtureBundle;
use crate::blocks::{block_project, cartan, PatternOutcome};
use crate::lefschetz::{assemble, two_adic_profile, SimplexRecipe};
use crate::projtest::{
    closest_decomposition, exact_vproj_solve, p_test, vanishing_test, Classification, ProjMode,
};

#[derive(Debug, Serialize)]
pub struct GroupAnalysis {
    pub format: String,
    pub group: String,
    pub prime: u64,
    pub negated: bool,
    pub class_names: Vec<String>,
    /// marks classes of p-power order > 1 (the vanishing-test columns)
    pub p_singular: Vec<bool>,
    pub lambda_vector: Vec<String>,
    pub lambda_mults: Vec<String>,
    pub lambda_expression: String,
    pub degree: String,
    pub degree_valuation: Option<u32>,
    pub group_valuation: u32,
    pub valuation_gap: Option<i64>,
    pub blocks: Option<Vec<BlockPartDoc>>,
    pub classification: Option<String>,
    pub nonprincipal_nonprojective_blocks: Vec<u32>,
    pub pattern_line: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct BlockPartDoc {
    pub block: u32,
    pub defect: u32,
    pub vector: Vec<String>,
    pub mults: Vec<String>,
    pub degree: String,
    pub p_test: bool,
    pub vanishing: bool,
    pub vanishing_witnesses: Vec<(String, String)>,
    /// exact integral solve over the projective covers, if one exists
    pub exact: Option<String>,
    pub closest: Option<String>,
    pub closest_residue_total: Option<String>,
    pub cartan_det: String,
}

/// Assemble and fully analyze one group. `negate_toggle` flips the recipe's
/// presentation sign (the CLI's --negate pass-through).
pub fn analyze_group(
    bundle: &FixtureBundle,
    group: &str,
    prime: u64,
    negate_toggle: bool,
) -> Result<GroupAnalysis, String> {
    let recipe = bundle
        .recipe_for(group)
        .ok_or_else(|| format!("bundle has no recipe for group '{group}'"))?;
    let effective: SimplexRecipe = SimplexRecipe {
        negate: recipe.negate ^ negate_toggle,
        ..(**recipe).clone()
    };
    let report = assemble(&effective).map_err(|e| e.to_string())?;
    let table = &report.lambda.table;

    let profile = two_adic_profile(&report, prime).ok();
    let p_singular: Vec<bool> = table
        .classes
        .iter()
        .map(|c| c.element_order > 1 && is_p_power(c.element_order, prime))
        .collect();

    let mut doc = GroupAnalysis {
        format: "lefblock-report v1".to_string(),
        group: group.to_string(),
        prime,
        negated: report.negated,
        class_names: table.classes.iter().map(|c| c.name.clone()).collect(),
        p_singular,
        lambda_vector: report.lambda.values.iter().map(|v| v.to_string()).collect(),
        lambda_mults: report.mults.mults.iter().map(|m| m.to_string()).collect(),
        lambda_expression: report.mults.describe(),
        degree: report.degree.to_string(),
        degree_valuation: profile.map(|(v, _, _)| v),
        group_valuation: table.order_valuation(prime),
        valuation_gap: profile.map(|(_, _, g)| g),
        blocks: None,
        classification: None,
        nonprincipal_nonprojective_blocks: Vec::new(),
        pattern_line: None,
    };

    let Some(bdata) = bundle.brauer_for(&table.id, prime) else {
        return Ok(doc);
    };

    let mut parts = Vec::new();
    for blk in &bdata.blocks {
        let part = block_project(bdata, &report.mults, blk.id).map_err(|e| e.to_string())?;
        let degree = part.mults.degree();
        let pt = p_test(&degree, table.order_valuation(prime), prime);
        let vt = vanishing_test(&part.values, prime);
        let exact = exact_vproj_solve(&part, bdata).ok().map(|sol| {
            let nonzero: Vec<(usize, num::BigInt)> =
                sol.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            describe_phi(&nonzero, bdata)
        });
        let closest = if part.mults.mults.iter().any(|m| !m.is_zero()) {
            closest_decomposition(&part, bdata).ok()
        } else {
            None
        };
        let cart = cartan(bdata, blk.id).map_err(|e| e.to_string())?;
        let det = det_bigint(&cart);
        parts.push(BlockPartDoc {
            block: blk.id,
            defect: blk.defect,
            vector: part.values.values.iter().map(|v| v.to_string()).collect(),
            mults: part.mults.mults.iter().map(|m| m.to_string()).collect(),
            degree: degree.to_string(),
            p_test: pt.pass,
            vanishing: vt.pass,
            vanishing_witnesses: vt
                .witnesses
                .iter()
                .map(|(n, v)| (n.clone(), v.to_string()))
                .collect(),
            exact,
            closest: closest.as_ref().map(|c| {
                let phis: Vec<(usize, num::BigInt)> =
                    c.phi_coeffs.iter().filter(|(_, x)| x != &num::BigInt::from(0)).cloned().collect();
                let mut s = describe_phi(&phis, bdata);
                if !c.residue.is_empty() {
                    let res: Vec<String> = c
                        .residue
                        .iter()
                        .map(|(i, m)| {
                            if m == &num::BigInt::from(1) {
                                format!("chi{}", i + 1)
                            } else {
                                format!("{m}*chi{}", i + 1)
                            }
                        })
                        .collect();
                    if s == "0" {
                        s = res.join("+");
                    } else {
                        s = format!("{s}+{}", res.join("+"));
                    }
                }
                if c.mode == ProjMode::ExactVirtual {
                    s.push_str(" (exact mode: nonnegative convention not applicable)");
                }
                s
            }),
            closest_residue_total: closest.as_ref().map(|c| c.residue_total.to_string()),
            cartan_det: det.to_string(),
        });
    }
    doc.blocks = Some(parts);

    let outcome = crate::projtest::classify(&report.mults, bdata).map_err(|e| e.to_string())?;
    doc.classification = Some(match outcome.classification {
        Classification::IEvidence => {
            "Class I-evidence (Lefschetz character v-projective; module-level projectivity is not decidable from characters)"
                .to_string()
        }
        Classification::II => "Class II (Principal Block Part V-Projective)".to_string(),
        Classification::III => "Class III (Principal Block Part Non-Projective)".to_string(),
    });
    doc.nonprincipal_nonprojective_blocks = outcome.nonprincipal_nonprojective_blocks;
    doc.pattern_line = Some(match outcome.pattern.verdict {
        PatternOutcome::Equal => format!(
            "defect {} vs gap {}: equal",
            outcome.pattern.max_nonprincipal_defect.unwrap(),
            outcome.pattern.valuation_gap
        ),
        PatternOutcome::Violated => format!(
            "defect {} vs gap {}: VIOLATED",
            outcome.pattern.max_nonprincipal_defect.unwrap(),
            outcome.pattern.valuation_gap
        ),
        PatternOutcome::NoNonPrincipalPart => "no non-principal block part".to_string(),
    });

    Ok(doc)
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn describe_phi(sol: &[(usize, num::BigInt)], b: &crate::blocks::BrauerBlockData) -> String {
    let parts: Vec<String> = sol
        .iter()
        .filter(|(_, c)| c != &num::BigInt::from(0))
        .map(|(j, c)| {
            let name = format!("Phi({})", b.brauer_names[*j]);
            if c == &num::BigInt::from(1) {
                name
            } else {
                format!("{c}*{name}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

fn det_bigint(m: &[Vec<num::BigInt>]) -> num::BigInt {
    // exact fraction-free determinant on the (small) Cartan matrices
    use num::BigRational;
    use num::traits::{One, Zero};
    let n = m.len();
    if n == 0 {
        return num::BigInt::one();
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return num::BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].clone().recip();
        for r in (c + 1)..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for cc in c..n {
                    let t = &a[c][cc] * &f;
                    a[r][cc] -= t;
                }
            }
        }
    }
    det.to_integer()
}

/// Plain-text rendering: vector form with p-singular classes highlighted,
/// scalar-product form, per-block vectors and verdicts, classification and
/// the defect/gap pattern line.
pub fn render_text(doc: &GroupAnalysis) -> String {
    let mut out = String::new();
    out.push_str(&format!("group {}  (p = {})\n", doc.group, doc.prime));
    if doc.negated {
        out.push_str("presentation: negated to match positive degree\n");
    }
    out.push_str(&format!(
        "degree {} = Lambda(1A); v_{}(degree) = {}, v_{}(|G|) = {}, gap = {}\n",
        doc.degree,
        doc.prime,
        doc.degree_valuation.map_or("-".to_string(), |v| v.to_string()),
        doc.prime,
        doc.group_valuation,
        doc.valuation_gap.map_or("-".to_string(), |v| v.to_string()),
    ));
    out.push_str("\nLefschetz character, vector form (columns = conjugacy classes; * marks p-singular):\n");
    let header: Vec<String> = doc
        .class_names
        .iter()
        .zip(&doc.p_singular)
        .map(|(n, s)| if *s { format!("{n}*") } else { n.clone() })
        .collect();
    push_aligned(&mut out, &header, &doc.lambda_vector);
    out.push_str("\nscalar product form (columns = irreducibles):\n");
    out.push_str(&format!("  [{}]\n", doc.lambda_mults.join(", ")));
    out.push_str(&format!("  = {}\n", doc.lambda_expression));

    if let Some(blocks) = &doc.blocks {
        for b in blocks {
            out.push_str(&format!("\nblock {} (defect {}):\n", b.block, b.defect));
            push_aligned(&mut out, &header, &b.vector);
            out.push_str(&format!(
                "  degree {}; p-test {}; vanishing test {}\n",
                b.degree,
                pass_str(b.p_test),
                pass_str(b.vanishing)
            ));
            if !b.vanishing_witnesses.is_empty() {
                let w: Vec<String> = b
                    .vanishing_witnesses
                    .iter()
                    .map(|(n, v)| format!("({n}, {v})"))
                    .collect();
                out.push_str(&format!("  witnesses: {}\n", w.join(", ")));
            }
            match (&b.exact, &b.closest) {
                (Some(e), _) => out.push_str(&format!("  exact: {}\n", e)),
                (None, Some(c)) => out.push_str(&format!(
                    "  not v-projective; closest: {} (residue total {})\n",
                    c,
                    b.closest_residue_total.as_deref().unwrap_or("-")
                )),
                (None, None) => {}
            }
            out.push_str(&format!("  Cartan determinant {}\n", b.cartan_det));
        }
    }
    if let Some(c) = &doc.classification {
        out.push_str(&format!("\nclassification: {}\n", c));
    }
    if !doc.nonprincipal_nonprojective_blocks.is_empty() {
        out.push_str(&format!(
            "non-principal non-projective block parts: {:?}\n",
            doc.nonprincipal_nonprojective_blocks
        ));
    }
    if let Some(p) = &doc.pattern_line {
        out.push_str(&format!("pattern: {}\n", p));
    }
    out
}

fn pass_str(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn push_aligned(out: &mut String, header: &[String], values: &[String]) {
    let widths: Vec<usize> = header
        .iter()
        .zip(values)
        .map(|(h, v)| h.len().max(v.len()))
        .collect();
    let hline: Vec<String> = header
        .iter()
        .zip(&widths)
        .map(|(h, w)| format!("{h:>w$}", w = w))
        .collect();
    let vline: Vec<String> = values
        .iter()
        .zip(&widths)
        .map(|(v, w)| format!("{v:>w$}", w = w))
        .collect();
    out.push_str(&format!("  {}\n", hline.join(" ")));
    out.push_str(&format!("  {}\n", vline.join(" ")));
}

/// Machine-readable rendering, versioned by the `format` field.
pub fn render_json(doc: &GroupAnalysis) -> String {
    serde_json::to_string_pretty(doc).expect("report serialization cannot fail")
}
