//! Assembly of the reduced Lefschetz character from a simplex-of-subgroups
//! recipe: the signed sum of induced permutation characters, minus the
//! constant term when the recipe is reduced.

use std::sync::Arc;

use num::bigint::BigInt;
use num::traits::Zero;
use thiserror::Error;

use crate::chartab::{
    decompose, induce, CharacterTable, ChartabError, ClassFunction, ClassFusion, VirtualCharacter,
};

#[derive(Debug, Error)]
pub enum LefschetzError {
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error("invalid recipe: {0}")]
    RecipeInvalid(String),
    #[error("zero degree")]
    ZeroDegree,
}

/// One term of the alternating sum: the combination character on the
/// carrier subgroup, induced to the group through the fusion, with the
/// sign prescribed by the subset J it came from.
#[derive(Debug, Clone)]
pub struct RecipeTerm {
    /// label of the nonempty subset J of the type set, e.g. "124"
    pub subset_label: String,
    /// +1 for odd |J|, -1 for even |J|
    pub sign: i64,
    pub carrier: Arc<CharacterTable>,
    pub combination: VirtualCharacter,
    pub fusion: Arc<ClassFusion>,
}

/// The paper-shaped alternating-sum recipe for one group.
#[derive(Debug, Clone)]
pub struct SimplexRecipe {
    pub id: String,
    pub group: Arc<CharacterTable>,
    pub terms: Vec<RecipeTerm>,
    /// subtract the constant 1 term (reduced Lefschetz character)
    pub reduced: bool,
    /// negate the assembled character to match a printed presentation
    pub negate: bool,
}

impl SimplexRecipe {
    /// Sign and uniqueness validation: each declared sign must equal
    /// (-1)^(|J|-1) and no subset label may repeat.
    pub fn validate(&self) -> Result<(), LefschetzError> {
        let mut seen = std::collections::HashSet::new();
        for term in &self.terms {
            if term.subset_label.is_empty() {
                return Err(LefschetzError::RecipeInvalid("empty subset label".to_string()));
            }
            if !seen.insert(term.subset_label.clone()) {
                return Err(LefschetzError::RecipeInvalid(format!(
                    "subset {} appears twice",
                    term.subset_label
                )));
            }
            let expected = if term.subset_label.chars().count() % 2 == 1 { 1 } else { -1 };
            if term.sign != expected {
                return Err(LefschetzError::RecipeInvalid(format!(
                    "subset {} declares sign {}, expected {}",
                    term.subset_label, term.sign, expected
                )));
            }
            if term.combination.table.id != term.carrier.id {
                return Err(LefschetzError::RecipeInvalid(format!(
                    "combination for subset {} lives on {}, carrier is {}",
                    term.subset_label, term.combination.table.id, term.carrier.id
                )));
            }
            if term.fusion.from.id != term.carrier.id || term.fusion.to.id != self.group.id {
                return Err(LefschetzError::RecipeInvalid(format!(
                    "fusion {} does not map carrier {} into group {}",
                    term.fusion.id, term.carrier.id, self.group.id
                )));
            }
        }
        Ok(())
    }
}

/// The assembled Lefschetz character with its scalar-product form and the
/// p-adic bookkeeping the projectivity analysis consumes.
#[derive(Debug, Clone)]
pub struct LefschetzReport {
    pub group_id: String,
    /// vector form: one value per conjugacy class
    pub lambda: ClassFunction,
    /// scalar-product form: multiplicities over the irreducibles
    pub mults: VirtualCharacter,
    pub degree: BigInt,
    /// set when the recipe negated the algebraic sum for presentation
    pub negated: bool,
}

/// Assemble the reduced Lefschetz character of a validated recipe:
/// Lambda = sum of sign * (combination induced through fusion), minus the
/// trivial character when reduced, negated when the recipe says so.
pub fn assemble(recipe: &SimplexRecipe) -> Result<LefschetzReport, LefschetzError> {
    recipe.validate()?;
    let mut acc = ClassFunction::zero(recipe.group.clone());
    for term in &recipe.terms {
        let on_carrier = term.combination.class_function();
        let induced = induce(&on_carrier, &term.fusion)?;
        acc = if term.sign >= 0 { acc.add(&induced)? } else { acc.sub(&induced)? };
    }
    if recipe.reduced {
        acc = acc.sub(&ClassFunction::trivial(recipe.group.clone()))?;
    }
    if recipe.negate {
        acc = acc.negate();
    }
    let mults = decompose(&acc)?;
    let degree = acc.degree()?;
    Ok(LefschetzReport {
        group_id: recipe.group.id.clone(),
        lambda: acc,
        mults,
        degree,
        negated: recipe.negate,
    })
}

/// Exact p-adic valuations of the degree and the group order, and their
/// difference (the "p-power gap").
pub fn two_adic_profile(
    report: &LefschetzReport,
    p: u64,
) -> Result<(u32, u32, i64), LefschetzError> {
    if report.degree.is_zero() {
        return Err(LefschetzError::ZeroDegree);
    }
    let vdeg = crate::blocks::valuation_bigint(&report.degree, p);
    let vg = report.lambda.table.order_valuation(p);
    Ok((vdeg, vg, vg as i64 - vdeg as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::test_tables::{a3, a3_into_s3, s3};
    use crate::chartab::VirtualCharacter;

    /// Degenerate recipe on S3: Lambda = 1_{A3}^S3 - 1 with values (1, -1, 1).
    fn degenerate_s3_recipe() -> SimplexRecipe {
        let a3 = a3();
        let s3 = s3();
        let fusion = Arc::new(a3_into_s3(&a3, &s3));
        SimplexRecipe {
            id: "S3-degenerate".to_string(),
            group: s3.clone(),
            terms: vec![RecipeTerm {
                subset_label: "1".to_string(),
                sign: 1,
                carrier: a3.clone(),
                combination: VirtualCharacter::from_i64(a3, &[1, 0, 0]),
                fusion,
            }],
            reduced: true,
            negate: false,
        }
    }

    #[test]
    fn degenerate_recipe_assembles() {
        let recipe = degenerate_s3_recipe();
        let report = assemble(&recipe).unwrap();
        let got: Vec<String> = report.lambda.values.iter().map(|v| v.to_string()).collect();
        assert_eq!(got, vec!["1", "-1", "1"]);
        // 1_{A3}^S3 = 1a + 1b, so reduced it is the sign character
        assert_eq!(report.mults, VirtualCharacter::from_i64(s3(), &[0, 1, 0]));
        assert_eq!(report.degree, BigInt::from(1));
    }

    #[test]
    fn sign_validation_rejects_wrong_parity() {
        let mut recipe = degenerate_s3_recipe();
        recipe.terms[0].sign = -1;
        assert!(matches!(assemble(&recipe), Err(LefschetzError::RecipeInvalid(_))));
        let mut recipe = degenerate_s3_recipe();
        recipe.terms[0].subset_label = "12".to_string();
        assert!(matches!(assemble(&recipe), Err(LefschetzError::RecipeInvalid(_))));
    }

    #[test]
    fn duplicate_subsets_are_rejected() {
        let mut recipe = degenerate_s3_recipe();
        let dup = recipe.terms[0].clone();
        recipe.terms.push(dup);
        assert!(matches!(assemble(&recipe), Err(LefschetzError::RecipeInvalid(_))));
    }

    #[test]
    fn negate_flag_flips_values() {
        let mut recipe = degenerate_s3_recipe();
        recipe.negate = true;
        let report = assemble(&recipe).unwrap();
        assert_eq!(report.degree, BigInt::from(-1));
        assert!(report.negated);
    }

    #[test]
    fn profile_of_degenerate_recipe() {
        let report = assemble(&degenerate_s3_recipe()).unwrap();
        // degree 1: v2 = 0, |S3|_2 = 2^1, gap 1
        assert_eq!(two_adic_profile(&report, 2).unwrap(), (0, 1, 1));
        assert_eq!(two_adic_profile(&report, 3).unwrap(), (0, 1, 1));
    }
}
