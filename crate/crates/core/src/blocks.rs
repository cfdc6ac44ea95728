//! p-modular block bookkeeping: decomposition matrices, block projection of
//! virtual characters, projective-cover characters Phi(phi_j), Cartan
//! matrices and defects.
//!
//! Decomposition matrices are fixture inputs; this module validates them
//! against the block axioms but never computes them from group structure.

use std::sync::Arc;

use num::bigint::BigInt;
use num::traits::{Signed, Zero};
use thiserror::Error;

use crate::chartab::{CharacterTable, ClassFunction, VirtualCharacter};
use crate::cyclo::Cyclotomic;

#[derive(Debug, Error)]
pub enum BlockError {
    #[error("unknown block id {0}")]
    UnknownBlock(u32),
    #[error("Brauer index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("virtual character lives on table {0}, block data on {1}")]
    TableMismatch(String, String),
    #[error("invalid block data: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInfo {
    pub id: u32,
    pub defect: u32,
}

/// p-modular block data for one character table: block list, distribution
/// of ordinary irreducibles, Brauer character labels, and the decomposition
/// matrix D with rows indexed by ordinaries and columns by Brauer characters.
#[derive(Debug, Clone)]
pub struct BrauerBlockData {
    pub table: Arc<CharacterTable>,
    pub prime: u64,
    pub blocks: Vec<BlockInfo>,
    /// ordinary irreducible index -> block id
    pub ordinary_to_block: Vec<u32>,
    pub brauer_names: Vec<String>,
    /// Brauer character index -> block id
    pub brauer_to_block: Vec<u32>,
    /// D[i][j]: multiplicity of phi_j in the reduction of chi_i
    pub decomposition: Vec<Vec<u64>>,
}

/// The part of a virtual character supported on one block.
#[derive(Debug, Clone)]
pub struct BlockPart {
    pub block: u32,
    pub mults: VirtualCharacter,
    pub values: ClassFunction,
}

impl BrauerBlockData {
    pub fn block_info(&self, id: u32) -> Result<&BlockInfo, BlockError> {
        self.blocks.iter().find(|b| b.id == id).ok_or(BlockError::UnknownBlock(id))
    }

    pub fn ordinary_indices_of_block(&self, id: u32) -> Vec<usize> {
        (0..self.ordinary_to_block.len())
            .filter(|&i| self.ordinary_to_block[i] == id)
            .collect()
    }

    pub fn brauer_indices_of_block(&self, id: u32) -> Vec<usize> {
        (0..self.brauer_to_block.len())
            .filter(|&j| self.brauer_to_block[j] == id)
            .collect()
    }

    /// Degree of the Brauer character phi_j, solved from the degrees of the
    /// ordinaries through D (D has full column rank).
    pub fn brauer_degree(&self, j: usize) -> Result<BigInt, BlockError> {
        if j >= self.brauer_names.len() {
            return Err(BlockError::IndexOutOfRange(j));
        }
        // least-index triangular solve is not available in general; use exact
        // rational least squares via normal equations on the integer matrix
        let degrees: Vec<BigInt> = (0..self.table.irreducibles.len())
            .map(|i| self.table.degree(i))
            .collect();
        let sol = solve_exact(&self.decomposition, &degrees)
            .ok_or_else(|| BlockError::Invalid("degree system is inconsistent".to_string()))?;
        Ok(sol[j].numer().clone())
    }

    /// Run every structural invariant; returns a list of violations.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.table.irreducibles.len();
        let l = self.brauer_names.len();
        if self.ordinary_to_block.len() != n {
            out.push(format!(
                "ordinary block assignment has {} entries, expected {n}",
                self.ordinary_to_block.len()
            ));
            return out;
        }
        if self.decomposition.len() != n || self.decomposition.iter().any(|r| r.len() != l) {
            out.push("decomposition matrix shape mismatch".to_string());
            return out;
        }
        if self.brauer_to_block.len() != l {
            out.push("Brauer block assignment length mismatch".to_string());
            return out;
        }
        if self.table.group_order % self.prime != 0 {
            out.push(format!("prime {} does not divide group order", self.prime));
        }

        // block ids are known
        let known: Vec<u32> = self.blocks.iter().map(|b| b.id).collect();
        for (i, b) in self.ordinary_to_block.iter().enumerate() {
            if !known.contains(b) {
                out.push(format!("ordinary {} assigned to unknown block {}", i, b));
            }
        }
        for (j, b) in self.brauer_to_block.iter().enumerate() {
            if !known.contains(b) {
                out.push(format!("Brauer {} assigned to unknown block {}", j, b));
            }
        }

        // cross-block entries of D vanish
        for i in 0..n {
            for j in 0..l {
                if self.decomposition[i][j] != 0
                    && self.ordinary_to_block[i] != self.brauer_to_block[j]
                {
                    out.push(format!(
                        "D[{i}][{j}] = {} crosses blocks {} and {}",
                        self.decomposition[i][j],
                        self.ordinary_to_block[i],
                        self.brauer_to_block[j]
                    ));
                }
            }
        }

        // every row and column is nonzero
        for i in 0..n {
            if self.decomposition[i].iter().all(|&d| d == 0) {
                out.push(format!("ordinary {} has zero decomposition row", i));
            }
        }
        for j in 0..l {
            if (0..n).all(|i| self.decomposition[i][j] == 0) {
                out.push(format!("Brauer {} has zero decomposition column", j));
            }
        }

        // stored defects match v_p(|G|) - min v_p(chi(1)) over the block
        let vg = self.table.order_valuation(self.prime);
        for b in &self.blocks {
            let idxs = self.ordinary_indices_of_block(b.id);
            if idxs.is_empty() {
                out.push(format!("block {} holds no ordinary irreducibles", b.id));
                continue;
            }
            let min_v = idxs
                .iter()
                .map(|&i| valuation_bigint(&self.table.degree(i), self.prime))
                .min()
                .unwrap();
            let expected = vg.saturating_sub(min_v);
            if b.defect != expected {
                out.push(format!(
                    "block {} stores defect {}, recomputed {}",
                    b.id, b.defect, expected
                ));
            }
        }

        // the trivial character lies in block 1
        let trivial = (0..n).find(|&i| {
            self.table.irreducibles[i].iter().all(|v| *v == Cyclotomic::one())
        });
        match trivial {
            Some(i) => {
                if self.ordinary_to_block[i] != 1 {
                    out.push(format!(
                        "trivial character (index {}) lies in block {}, expected 1",
                        i, self.ordinary_to_block[i]
                    ));
                }
            }
            None => out.push("table has no trivial character row".to_string()),
        }

        // columns of D are linearly independent (exact rank over Q)
        if rank_exact(&self.decomposition) != l {
            out.push("decomposition matrix columns are linearly dependent".to_string());
        }

        // Phi degrees are divisible by |G|_p
        let pe = BigInt::from(self.prime).pow(vg);
        for j in 0..l {
            if let Ok(phi) = phi_character(self, j) {
                let d = phi.degree();
                if (&d % &pe) != BigInt::zero() {
                    out.push(format!(
                        "Phi(phi_{}) has degree {} not divisible by |G|_p = {}",
                        j + 1,
                        d,
                        pe
                    ));
                }
            }
        }

        out
    }
}

pub fn valuation_bigint(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Character of the projective cover of phi_j: the j-th column of D read
/// against the ordinary irreducibles.
pub fn phi_character(b: &BrauerBlockData, j: usize) -> Result<VirtualCharacter, BlockError> {
    if j >= b.brauer_names.len() {
        return Err(BlockError::IndexOutOfRange(j));
    }
    let mults = b
        .decomposition
        .iter()
        .map(|row| BigInt::from(row[j]))
        .collect();
    Ok(VirtualCharacter::new(b.table.clone(), mults))
}

/// Zero out all multiplicities outside the block; carries both the
/// multiplicity form and the class-value form.
pub fn block_project(
    b: &BrauerBlockData,
    v: &VirtualCharacter,
    block: u32,
) -> Result<BlockPart, BlockError> {
    if v.table.id != b.table.id {
        return Err(BlockError::TableMismatch(v.table.id.clone(), b.table.id.clone()));
    }
    b.block_info(block)?;
    let mults: Vec<BigInt> = v
        .mults
        .iter()
        .enumerate()
        .map(|(i, m)| if b.ordinary_to_block[i] == block { m.clone() } else { BigInt::zero() })
        .collect();
    let vc = VirtualCharacter::new(b.table.clone(), mults);
    let values = vc.class_function();
    Ok(BlockPart { block, mults: vc, values })
}

/// Cartan matrix of a block: C = D_B^T D_B over the block's rows/columns.
pub fn cartan(b: &BrauerBlockData, block: u32) -> Result<Vec<Vec<BigInt>>, BlockError> {
    b.block_info(block)?;
    let rows = b.ordinary_indices_of_block(block);
    let cols = b.brauer_indices_of_block(block);
    let l = cols.len();
    let mut c = vec![vec![BigInt::zero(); l]; l];
    for (a, &ja) in cols.iter().enumerate() {
        for (z, &jz) in cols.iter().enumerate() {
            let mut s = BigInt::zero();
            for &i in &rows {
                s += BigInt::from(b.decomposition[i][ja]) * BigInt::from(b.decomposition[i][jz]);
            }
            c[a][z] = s;
        }
    }
    Ok(c)
}

/// Verdict of the defect/valuation-gap pattern for a report's block split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternVerdict {
    /// largest defect among non-principal blocks with a nonzero part
    pub max_nonprincipal_defect: Option<u32>,
    /// v_p(|G|) - v_p(degree of the full Lefschetz character)
    pub valuation_gap: i64,
    pub verdict: PatternOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternOutcome {
    Equal,
    Violated,
    NoNonPrincipalPart,
}

/// Compare the largest non-principal block-part defect with the p-power gap
/// between |G|_p and the p-part of the Lefschetz degree.
pub fn defect_gap_check(
    b: &BrauerBlockData,
    lambda_mults: &VirtualCharacter,
) -> Result<PatternVerdict, BlockError> {
    if lambda_mults.table.id != b.table.id {
        return Err(BlockError::TableMismatch(
            lambda_mults.table.id.clone(),
            b.table.id.clone(),
        ));
    }
    let degree = lambda_mults.degree();
    let vdeg = valuation_bigint(&degree, b.prime);
    let vg = b.table.order_valuation(b.prime);
    let gap = vg as i64 - vdeg as i64;
    let mut max_defect: Option<u32> = None;
    for blk in &b.blocks {
        if blk.id == 1 {
            continue;
        }
        let part = block_project(b, lambda_mults, blk.id)?;
        if part.mults.mults.iter().any(|m| !m.is_zero()) {
            max_defect = Some(max_defect.map_or(blk.defect, |d| d.max(blk.defect)));
        }
    }
    let verdict = match max_defect {
        None => PatternOutcome::NoNonPrincipalPart,
        Some(d) if d as i64 == gap => PatternOutcome::Equal,
        Some(_) => PatternOutcome::Violated,
    };
    Ok(PatternVerdict { max_nonprincipal_defect: max_defect, valuation_gap: gap, verdict })
}

// ---------------------------------------------------------------------------
// exact linear algebra over Q on integer matrices
// ---------------------------------------------------------------------------

pub(crate) type Rat = num::BigRational;

/// Exact rank of a nonnegative integer matrix.
pub fn rank_exact(m: &[Vec<u64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        if let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) {
            a.swap(rank, pivot);
            let inv = a[rank][c].clone().recip();
            for v in a[rank].iter_mut() {
                *v *= &inv;
            }
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for c2 in 0..cols {
                        let t = &a[rank][c2] * &f;
                        a[r][c2] -= t;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Solve M x = rhs exactly over Q where M is an integer matrix with full
/// column rank; returns None if the system is inconsistent.
pub fn solve_exact(m: &[Vec<u64>], rhs: &[BigInt]) -> Option<Vec<Rat>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rat> = m[i]
                .iter()
                .map(|&x| Rat::from_integer(BigInt::from(x)))
                .collect();
            row.push(Rat::from_integer(rhs[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if let Some(pivot) = (prow..rows).find(|&r| !a[r][c].is_zero()) {
            a.swap(prow, pivot);
            let inv = a[prow][c].clone().recip();
            for v in a[prow].iter_mut() {
                *v *= &inv;
            }
            for r in 0..rows {
                if r != prow && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for c2 in 0..=cols {
                        let t = &a[prow][c2] * &f;
                        a[r][c2] -= t;
                    }
                }
            }
            pivots.push((prow, c));
            prow += 1;
        }
    }
    // consistency: zero rows must have zero rhs
    for r in prow..rows {
        if !a[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::from_integer(BigInt::zero()); cols];
    for (r, c) in pivots {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
pub(crate) mod test_blocks {
    use super::*;
    use crate::chartab::test_tables::s3;

    /// True 2-modular data for S3: principal block {1a, 1b} with phi_1 = 1,
    /// and a defect-0 block {2a} with phi_2 the Steinberg character.
    pub fn s3_mod2() -> BrauerBlockData {
        BrauerBlockData {
            table: s3(),
            prime: 2,
            blocks: vec![BlockInfo { id: 1, defect: 1 }, BlockInfo { id: 2, defect: 0 }],
            ordinary_to_block: vec![1, 1, 2],
            brauer_names: vec!["phi1".into(), "phi2".into()],
            brauer_to_block: vec![1, 2],
            decomposition: vec![vec![1, 0], vec![1, 0], vec![0, 1]],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::test_blocks::s3_mod2;
    use super::*;
    use crate::chartab::VirtualCharacter;

    #[test]
    fn s3_block_data_validates() {
        let b = s3_mod2();
        let violations = b.validate();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn phi_characters_and_degrees() {
        let b = s3_mod2();
        let phi1 = phi_character(&b, 0).unwrap();
        assert_eq!(phi1, VirtualCharacter::from_i64(b.table.clone(), &[1, 1, 0]));
        assert_eq!(phi1.degree(), BigInt::from(2));
        // defect-0 block: Phi is the unique ordinary character of the block
        let phi2 = phi_character(&b, 1).unwrap();
        assert_eq!(phi2, VirtualCharacter::from_i64(b.table.clone(), &[0, 0, 1]));
        assert_eq!(b.brauer_degree(0).unwrap(), BigInt::from(1));
        assert_eq!(b.brauer_degree(1).unwrap(), BigInt::from(2));
        assert!(phi_character(&b, 5).is_err());
    }

    #[test]
    fn block_projection_reconstructs() {
        let b = s3_mod2();
        let v = VirtualCharacter::from_i64(b.table.clone(), &[3, -1, 4]);
        let p1 = block_project(&b, &v, 1).unwrap();
        let p2 = block_project(&b, &v, 2).unwrap();
        assert_eq!(p1.mults, VirtualCharacter::from_i64(b.table.clone(), &[3, -1, 0]));
        assert_eq!(p2.mults, VirtualCharacter::from_i64(b.table.clone(), &[0, 0, 4]));
        let sum = p1.mults.add(&p2.mults).unwrap();
        assert_eq!(sum, v);
        // class values add componentwise too
        let vs = p1.values.add(&p2.values).unwrap();
        assert_eq!(vs, v.class_function());
        assert!(block_project(&b, &v, 9).is_err());
    }

    #[test]
    fn projecting_irreducible_is_identity_or_zero() {
        let b = s3_mod2();
        let chi3 = VirtualCharacter::from_i64(b.table.clone(), &[0, 0, 1]);
        assert_eq!(block_project(&b, &chi3, 2).unwrap().mults, chi3);
        let zero = VirtualCharacter::from_i64(b.table.clone(), &[0, 0, 0]);
        assert_eq!(block_project(&b, &chi3, 1).unwrap().mults, zero);
    }

    #[test]
    fn cartan_matrices() {
        let b = s3_mod2();
        // principal block: single column (1,1)^T -> C = [2], det 2
        let c1 = cartan(&b, 1).unwrap();
        assert_eq!(c1, vec![vec![BigInt::from(2)]]);
        // defect 0 block -> [1]
        let c2 = cartan(&b, 2).unwrap();
        assert_eq!(c2, vec![vec![BigInt::from(1)]]);
    }

    #[test]
    fn corrupted_defect_is_caught() {
        let mut b = s3_mod2();
        b.blocks[0].defect = 7;
        assert!(b.validate().iter().any(|v| v.contains("defect")));
    }

    #[test]
    fn cross_block_entry_is_caught() {
        let mut b = s3_mod2();
        b.decomposition[2][0] = 1;
        assert!(b.validate().iter().any(|v| v.contains("crosses blocks")));
    }

    #[test]
    fn defect_gap_equal_and_violated() {
        let b = s3_mod2();
        // Lefschetz character of the 3-point S3 geometry: (2, 0, -1) = 2a;
        // degree 2, gap = v2(6) - v2(2) = 0, non-principal defect 0 -> equal
        let lam = VirtualCharacter::from_i64(b.table.clone(), &[0, 0, 1]);
        let verdict = defect_gap_check(&b, &lam).unwrap();
        assert_eq!(verdict.max_nonprincipal_defect, Some(0));
        assert_eq!(verdict.valuation_gap, 0);
        assert_eq!(verdict.verdict, PatternOutcome::Equal);
        // synthetic vector of odd degree 3 with the same defect-0 part
        // violates the pattern (gap 1 vs defect 0)
        let odd = VirtualCharacter::from_i64(b.table.clone(), &[0, 1, 1]);
        let verdict = defect_gap_check(&b, &odd).unwrap();
        assert_eq!(verdict.valuation_gap, 1);
        assert_eq!(verdict.verdict, PatternOutcome::Violated);
        // nothing outside the principal block
        let pr = VirtualCharacter::from_i64(b.table.clone(), &[1, 1, 0]);
        let verdict = defect_gap_check(&b, &pr).unwrap();
        assert_eq!(verdict.verdict, PatternOutcome::NoNonPrincipalPart);
    }

    #[test]
    fn rank_and_solve() {
        let m = vec![vec![1, 0], vec![1, 0], vec![0, 1]];
        assert_eq!(rank_exact(&m), 2);
        let rhs = vec![BigInt::from(3), BigInt::from(3), BigInt::from(5)];
        let x = solve_exact(&m, &rhs).unwrap();
        assert_eq!(x[0], Rat::from_integer(BigInt::from(3)));
        assert_eq!(x[1], Rat::from_integer(BigInt::from(5)));
        let bad = vec![BigInt::from(3), BigInt::from(4), BigInt::from(5)];
        assert!(solve_exact(&m, &bad).is_none());
    }
}
