//! Character tables, class functions, and the induction / restriction /
//! inflation operations driving the Lefschetz-character pipeline.
//!
//! Tables, fusions and quotient maps are immutable data loaded from fixture
//! files; nothing here computes group structure. All values are exact
//! cyclotomics and every operation that promises an integer certifies it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cyclo::{Cyclotomic, Rational};

#[derive(Debug, Error)]
pub enum ChartabError {
    #[error("class functions live on different tables: {0} vs {1}")]
    TableMismatch(String, String),
    #[error("not a virtual character: {0}")]
    NotVirtual(String),
    #[error("unknown irreducible name '{0}'")]
    UnknownName(String),
    #[error("ambiguous irreducible name '{0}'")]
    AmbiguousName(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub name: String,
    pub size: u64,
    pub element_order: u64,
    pub centralizer_order: u64,
}

/// An ordinary character table. `id` identifies the table inside a fixture
/// bundle and is what fusions and recipes reference.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub id: String,
    pub group_name: String,
    pub group_order: u64,
    pub classes: Vec<ConjugacyClass>,
    /// prime -> (class index -> class index of the p-th power)
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub irreducible_names: Vec<String>,
    /// row-major: irreducibles[i][c] = chi_i(class c)
    pub irreducibles: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Degree of the i-th irreducible as a certified integer.
    pub fn degree(&self, i: usize) -> BigInt {
        self.irreducibles[i][0]
            .as_integer()
            .expect("irreducible degree must be a rational integer")
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// p-adic valuation of the group order.
    pub fn order_valuation(&self, p: u64) -> u32 {
        let mut n = self.group_order;
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        v
    }

    /// Resolve an Atlas-style name against this table; positional aliases
    /// `chi<k>` (1-based) are always available. Returns one index per
    /// multiplicity unit: "20a" is one index, "20aa" that index twice,
    /// "32ab" two distinct indices.
    fn resolve_name(&self, name: &str) -> Result<Vec<usize>, ChartabError> {
        if let Some(rest) = name.strip_prefix("chi") {
            let k: usize = rest
                .parse()
                .map_err(|_| ChartabError::UnknownName(name.to_string()))?;
            if k == 0 || k > self.irreducibles.len() {
                return Err(ChartabError::UnknownName(name.to_string()));
            }
            return Ok(vec![k - 1]);
        }
        let digits: String = name.chars().take_while(|c| c.is_ascii_digit()).collect();
        let letters = &name[digits.len()..];
        if digits.is_empty() {
            return Err(ChartabError::UnknownName(name.to_string()));
        }
        let deg: BigInt = digits.parse().unwrap();
        let of_degree: Vec<usize> = (0..self.irreducibles.len())
            .filter(|&i| self.degree(i) == deg)
            .collect();
        if letters.is_empty() {
            return match of_degree.len() {
                0 => Err(ChartabError::UnknownName(name.to_string())),
                1 => Ok(vec![of_degree[0]]),
                _ => Err(ChartabError::AmbiguousName(name.to_string())),
            };
        }
        let mut out = Vec::new();
        for ch in letters.chars() {
            if !ch.is_ascii_lowercase() {
                return Err(ChartabError::UnknownName(name.to_string()));
            }
            let k = (ch as u8 - b'a') as usize;
            match of_degree.get(k) {
                Some(&i) => out.push(i),
                None => return Err(ChartabError::UnknownName(name.to_string())),
            }
        }
        Ok(out)
    }
}

/// A class function on a fixed table.
#[derive(Clone)]
pub struct ClassFunction {
    pub table: Arc<CharacterTable>,
    pub values: Vec<Cyclotomic>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassFunction[{}](", self.table.id)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.table.id == other.table.id && self.values == other.values
    }
}
impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(table: Arc<CharacterTable>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), table.class_count(), "value count must match class count");
        ClassFunction { table, values }
    }

    pub fn zero(table: Arc<CharacterTable>) -> Self {
        let n = table.class_count();
        ClassFunction { table, values: vec![Cyclotomic::zero(); n] }
    }

    /// The trivial character (1 at every class).
    pub fn trivial(table: Arc<CharacterTable>) -> Self {
        let n = table.class_count();
        ClassFunction { table, values: vec![Cyclotomic::one(); n] }
    }

    pub fn irreducible(table: Arc<CharacterTable>, i: usize) -> Self {
        let values = table.irreducibles[i].clone();
        ClassFunction { table, values }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, ChartabError> {
        check_same_table(&self.table, &other.table)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(ClassFunction { table: self.table.clone(), values })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, ChartabError> {
        check_same_table(&self.table, &other.table)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(ClassFunction { table: self.table.clone(), values })
    }

    pub fn negate(&self) -> ClassFunction {
        let values = self.values.iter().map(|v| v.negate()).collect();
        ClassFunction { table: self.table.clone(), values }
    }

    pub fn scale_int(&self, k: i64) -> ClassFunction {
        let r = Rational::from_integer(BigInt::from(k));
        let values = self.values.iter().map(|v| v.scale(&r)).collect();
        ClassFunction { table: self.table.clone(), values }
    }

    /// Value at the identity class, certified integral.
    pub fn degree(&self) -> Result<BigInt, ChartabError> {
        self.values[0]
            .as_integer()
            .map_err(|e| ChartabError::NotVirtual(e.to_string()))
    }
}

/// A virtual character: integer multiplicities over the irreducibles.
#[derive(Clone)]
pub struct VirtualCharacter {
    pub table: Arc<CharacterTable>,
    pub mults: Vec<BigInt>,
}

impl fmt::Debug for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VirtualCharacter[{}]{:?}", self.table.id, self.mults)
    }
}

impl PartialEq for VirtualCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.table.id == other.table.id && self.mults == other.mults
    }
}
impl Eq for VirtualCharacter {}

impl VirtualCharacter {
    pub fn new(table: Arc<CharacterTable>, mults: Vec<BigInt>) -> Self {
        assert_eq!(mults.len(), table.irreducibles.len());
        VirtualCharacter { table, mults }
    }

    pub fn zero(table: Arc<CharacterTable>) -> Self {
        let n = table.irreducibles.len();
        VirtualCharacter { table, mults: vec![BigInt::zero(); n] }
    }

    pub fn from_i64(table: Arc<CharacterTable>, mults: &[i64]) -> Self {
        Self::new(table, mults.iter().map(|&m| BigInt::from(m)).collect())
    }

    /// Expand to the class function sum(mults_i * chi_i).
    pub fn class_function(&self) -> ClassFunction {
        let n = self.table.class_count();
        let mut values = vec![Cyclotomic::zero(); n];
        for (i, m) in self.mults.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let r = Rational::from_integer(m.clone());
            for (c, v) in values.iter_mut().enumerate() {
                *v = v.add(&self.table.irreducibles[i][c].scale(&r));
            }
        }
        ClassFunction { table: self.table.clone(), values }
    }

    pub fn degree(&self) -> BigInt {
        let mut d = BigInt::zero();
        for (i, m) in self.mults.iter().enumerate() {
            d += m * self.table.degree(i);
        }
        d
    }

    pub fn add(&self, other: &VirtualCharacter) -> Result<VirtualCharacter, ChartabError> {
        check_same_table(&self.table, &other.table)?;
        let mults = self.mults.iter().zip(&other.mults).map(|(a, b)| a + b).collect();
        Ok(VirtualCharacter { table: self.table.clone(), mults })
    }

    /// Pretty form like "chi14+2*chi15" used in reports.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (i, m) in self.mults.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let name = &self.table.irreducible_names[i];
            if m.is_one() {
                parts.push(name.clone());
            } else {
                parts.push(format!("{m}*{name}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// Class fusion from a subgroup table into an overgroup table.
#[derive(Debug, Clone)]
pub struct ClassFusion {
    pub id: String,
    pub from: Arc<CharacterTable>,
    pub to: Arc<CharacterTable>,
    /// for each class of `from`, the index of the containing class of `to`
    pub map: Vec<usize>,
}

/// Surjection H -> Q = H/N at the class level, driving inflation.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub id: String,
    pub from: Arc<CharacterTable>,
    pub quotient: Arc<CharacterTable>,
    pub map: Vec<usize>,
}

fn check_same_table(a: &Arc<CharacterTable>, b: &Arc<CharacterTable>) -> Result<(), ChartabError> {
    if a.id != b.id {
        return Err(ChartabError::TableMismatch(a.id.clone(), b.id.clone()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

/// One violated invariant found by [`validate_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, check: &str, detail: String) {
        self.violations.push(Violation { check: check.to_string(), detail });
    }
}

/// Check every table invariant: class bookkeeping, both orthogonality
/// relations, the degree-square sum, and power-map order consistency.
pub fn validate_table(t: &CharacterTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    let k = t.classes.len();

    if t.irreducibles.len() != k {
        report.push(
            "square",
            format!("{} irreducibles vs {} classes", t.irreducibles.len(), k),
        );
        return report;
    }
    for (i, row) in t.irreducibles.iter().enumerate() {
        if row.len() != k {
            report.push("row-length", format!("irreducible {i} has {} values", row.len()));
            return report;
        }
    }

    // class bookkeeping
    let mut size_sum = 0u64;
    for (c, cl) in t.classes.iter().enumerate() {
        size_sum += cl.size;
        if cl.size.checked_mul(cl.centralizer_order) != Some(t.group_order) {
            report.push(
                "class-size",
                format!("class {} ({}): size * centralizer != group order", c, cl.name),
            );
        }
    }
    if size_sum != t.group_order {
        report.push(
            "class-size-sum",
            format!("sum of class sizes {size_sum} != {}", t.group_order),
        );
    }
    let identities: Vec<usize> = (0..k).filter(|&c| t.classes[c].element_order == 1).collect();
    if identities != vec![0] {
        report.push("identity-class", format!("identity classes at {identities:?}, expected [0]"));
    }

    // degrees
    let mut degsum = BigInt::zero();
    for i in 0..k {
        match t.irreducibles[i][0].as_integer() {
            Ok(d) if d.is_positive() => degsum += &d * &d,
            other => report.push(
                "degree",
                format!("irreducible {} has non-positive or irrational degree: {:?}", i, other),
            ),
        }
    }
    if degsum != BigInt::from(t.group_order) {
        report.push("degree-sum", format!("sum of squared degrees {degsum} != {}", t.group_order));
    }

    // row orthogonality: <chi_i, chi_j> = delta_ij
    for i in 0..k {
        for j in i..k {
            let mut s = Cyclotomic::zero();
            for (c, cl) in t.classes.iter().enumerate() {
                let term = t.irreducibles[i][c].mul(&t.irreducibles[j][c].conjugate());
                let w = Rational::new(BigInt::one(), BigInt::from(cl.centralizer_order));
                s = s.add(&term.scale(&w));
            }
            let expected = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
            if s != expected {
                report.push(
                    "row-orthogonality",
                    format!("<chi_{}, chi_{}> = {}", i + 1, j + 1, s),
                );
            }
        }
    }

    // column orthogonality
    for c in 0..k {
        for c2 in c..k {
            let mut s = Cyclotomic::zero();
            for i in 0..k {
                s = s.add(&t.irreducibles[i][c].mul(&t.irreducibles[i][c2].conjugate()));
            }
            let expected = if c == c2 {
                Cyclotomic::from_bigint(BigInt::from(t.classes[c].centralizer_order))
            } else {
                Cyclotomic::zero()
            };
            if s != expected {
                report.push(
                    "column-orthogonality",
                    format!(
                        "columns ({}, {}): sum = {}, expected {}",
                        t.classes[c].name, t.classes[c2].name, s, expected
                    ),
                );
            }
        }
    }

    // power maps: order of the image class must be order/gcd(q, order)
    for (&q, pm) in &t.power_maps {
        if pm.len() != k {
            report.push("power-map", format!("power map for {q} has length {}", pm.len()));
            continue;
        }
        for c in 0..k {
            if pm[c] >= k {
                report.push("power-map", format!("power map for {q} out of range at class {c}"));
                continue;
            }
            let ord = t.classes[c].element_order;
            let expected = ord / gcd_u64(q, ord);
            let got = t.classes[pm[c]].element_order;
            if got != expected {
                report.push(
                    "power-map-order",
                    format!(
                        "class {} ^{} lands in order-{} class, expected order {}",
                        t.classes[c].name, q, got, expected
                    ),
                );
            }
        }
    }

    report
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Hermitian inner product sum_c a(c) * conj(b(c)) / |C(c)|.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic, ChartabError> {
    check_same_table(&a.table, &b.table)?;
    let mut s = Cyclotomic::zero();
    for (c, cl) in a.table.classes.iter().enumerate() {
        let term = a.values[c].mul(&b.values[c].conjugate());
        let w = Rational::new(BigInt::one(), BigInt::from(cl.centralizer_order));
        s = s.add(&term.scale(&w));
    }
    Ok(s)
}

/// Decompose a class function over the irreducibles, certifying that every
/// multiplicity is a rational integer and that the reconstruction is exact.
pub fn decompose(a: &ClassFunction) -> Result<VirtualCharacter, ChartabError> {
    let t = &a.table;
    let mut mults = Vec::with_capacity(t.irreducibles.len());
    for i in 0..t.irreducibles.len() {
        let chi = ClassFunction::irreducible(t.clone(), i);
        let ip = inner_product(a, &chi)?;
        let m = ip.as_integer().map_err(|_| {
            ChartabError::NotVirtual(format!(
                "<a, {}> = {} is not a rational integer",
                t.irreducible_names[i], ip
            ))
        })?;
        mults.push(m);
    }
    let vc = VirtualCharacter::new(t.clone(), mults);
    if &vc.class_function() != a {
        return Err(ChartabError::NotVirtual(
            "reconstruction from multiplicities does not match input".to_string(),
        ));
    }
    Ok(vc)
}

/// Induce a class function along a fusion H -> G (Frobenius formula):
/// (a^G)(c) = |C_G(c)| * sum over H-classes k fused to c of a(k)/|C_H(k)|.
pub fn induce(a: &ClassFunction, f: &ClassFusion) -> Result<ClassFunction, ChartabError> {
    check_same_table(&a.table, &f.from)?;
    let g = &f.to;
    let mut values = vec![Cyclotomic::zero(); g.class_count()];
    for (k, &c) in f.map.iter().enumerate() {
        let w = Rational::new(BigInt::one(), BigInt::from(a.table.classes[k].centralizer_order));
        values[c] = values[c].add(&a.values[k].scale(&w));
    }
    for (c, v) in values.iter_mut().enumerate() {
        let cg = Rational::from_integer(BigInt::from(g.classes[c].centralizer_order));
        *v = v.scale(&cg);
    }
    Ok(ClassFunction { table: g.clone(), values })
}

/// Restrict a class function on G to H through the fusion.
pub fn restrict(a: &ClassFunction, f: &ClassFusion) -> Result<ClassFunction, ChartabError> {
    check_same_table(&a.table, &f.to)?;
    let values = f.map.iter().map(|&c| a.values[c].clone()).collect();
    Ok(ClassFunction { table: f.from.clone(), values })
}

/// Inflate a class function on a quotient Q = H/N back to H.
pub fn inflate(a: &ClassFunction, q: &QuotientMap) -> Result<ClassFunction, ChartabError> {
    check_same_table(&a.table, &q.quotient)?;
    let values = q.map.iter().map(|&c| a.values[c].clone()).collect();
    Ok(ClassFunction { table: q.from.clone(), values })
}

/// Parse an Atlas-style combination like "1a+6a+20aa+24a+64a", "32ab",
/// "3*20a" or "chi14+2*chi15" into a virtual character on the table.
pub fn parse_combination(
    t: &Arc<CharacterTable>,
    expr: &str,
) -> Result<VirtualCharacter, ChartabError> {
    let mut mults = vec![BigInt::zero(); t.irreducibles.len()];
    let expr = expr.trim();
    if expr.is_empty() {
        return Err(ChartabError::UnknownName("<empty>".to_string()));
    }
    for piece in expr.split('+') {
        let piece = piece.trim();
        let (coeff, name) = match piece.split_once('*') {
            Some((c, n)) => {
                let c: i64 = c
                    .trim()
                    .parse()
                    .map_err(|_| ChartabError::UnknownName(piece.to_string()))?;
                (c, n.trim())
            }
            None => (1, piece),
        };
        for idx in t.resolve_name(name)? {
            mults[idx] += BigInt::from(coeff);
        }
    }
    Ok(VirtualCharacter::new(t.clone(), mults))
}

#[cfg(test)]
pub(crate) mod test_tables {
    use super::*;

    /// The textbook S3 table: classes 1A, 2A, 3A; degrees 1, 1, 2.
    pub fn s3() -> Arc<CharacterTable> {
        let z = |k: i64| Cyclotomic::from_integer(k);
        Arc::new(CharacterTable {
            id: "S3".to_string(),
            group_name: "S3".to_string(),
            group_order: 6,
            classes: vec![
                ConjugacyClass { name: "1A".into(), size: 1, element_order: 1, centralizer_order: 6 },
                ConjugacyClass { name: "2A".into(), size: 3, element_order: 2, centralizer_order: 2 },
                ConjugacyClass { name: "3A".into(), size: 2, element_order: 3, centralizer_order: 3 },
            ],
            power_maps: BTreeMap::from([(2, vec![0, 0, 2]), (3, vec![0, 1, 0])]),
            irreducible_names: vec!["1a".into(), "1b".into(), "2a".into()],
            irreducibles: vec![
                vec![z(1), z(1), z(1)],
                vec![z(1), z(-1), z(1)],
                vec![z(2), z(0), z(-1)],
            ],
        })
    }

    /// Cyclic group of order 3 (A3): classes 1A, 3A, 3B.
    pub fn a3() -> Arc<CharacterTable> {
        let z = |k: i64| Cyclotomic::from_integer(k);
        let w = |e: u64| Cyclotomic::root_of_unity(3, e);
        Arc::new(CharacterTable {
            id: "A3".to_string(),
            group_name: "A3".to_string(),
            group_order: 3,
            classes: vec![
                ConjugacyClass { name: "1A".into(), size: 1, element_order: 1, centralizer_order: 3 },
                ConjugacyClass { name: "3A".into(), size: 1, element_order: 3, centralizer_order: 3 },
                ConjugacyClass { name: "3B".into(), size: 1, element_order: 3, centralizer_order: 3 },
            ],
            power_maps: BTreeMap::from([(3, vec![0, 0, 0])]),
            irreducible_names: vec!["1a".into(), "1b".into(), "1c".into()],
            irreducibles: vec![
                vec![z(1), z(1), z(1)],
                vec![z(1), w(1), w(2)],
                vec![z(1), w(2), w(1)],
            ],
        })
    }

    /// Fusion of A3 = <(0 1 2)> into S3: 3A and 3B fuse into the 3A of S3.
    pub fn a3_into_s3(a3: &Arc<CharacterTable>, s3: &Arc<CharacterTable>) -> ClassFusion {
        ClassFusion {
            id: "A3->S3".to_string(),
            from: a3.clone(),
            to: s3.clone(),
            map: vec![0, 2, 2],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::test_tables::*;
    use super::*;

    #[test]
    fn s3_table_validates() {
        let t = s3();
        let report = validate_table(&t);
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn corrupted_s3_fails_column_orthogonality() {
        let t = s3();
        let mut bad = (*t).clone();
        // chi3(2A): 0 -> 1
        bad.irreducibles[2][1] = Cyclotomic::one();
        let report = validate_table(&bad);
        assert!(!report.passed());
        assert!(
            report
                .violations
                .iter()
                .any(|v| v.check == "column-orthogonality"
                    && v.detail.contains("1A")
                    && v.detail.contains("2A")),
            "expected a column-orthogonality violation at (1A, 2A): {:?}",
            report.violations
        );
    }

    #[test]
    fn a3_table_validates() {
        let report = validate_table(&a3());
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn irreducibles_are_orthonormal() {
        let t = s3();
        for i in 0..3 {
            let chi = ClassFunction::irreducible(t.clone(), i);
            assert_eq!(inner_product(&chi, &chi).unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn regular_character_contains_trivial_once() {
        let t = s3();
        // regular = sum deg(chi_i) * chi_i
        let reg = VirtualCharacter::from_i64(t.clone(), &[1, 1, 2]).class_function();
        let triv = ClassFunction::trivial(t.clone());
        assert_eq!(inner_product(&reg, &triv).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn decompose_round_trips() {
        let t = s3();
        let vc = VirtualCharacter::from_i64(t.clone(), &[3, -2, 5]);
        let back = decompose(&vc.class_function()).unwrap();
        assert_eq!(back, vc);
        // the zero class function decomposes to all-zero mults
        let zero = decompose(&ClassFunction::zero(t.clone())).unwrap();
        assert_eq!(zero, VirtualCharacter::from_i64(t, &[0, 0, 0]));
    }

    #[test]
    fn decompose_rejects_non_virtual() {
        let t = s3();
        let mut half = ClassFunction::trivial(t);
        half.values[0] = Cyclotomic::from_rational(Rational::new(1.into(), 2.into()));
        assert!(matches!(decompose(&half), Err(ChartabError::NotVirtual(_))));
    }

    #[test]
    fn induce_identity_fusion_is_identity() {
        let t = s3();
        let f = ClassFusion {
            id: "S3->S3".into(),
            from: t.clone(),
            to: t.clone(),
            map: vec![0, 1, 2],
        };
        let one = ClassFunction::trivial(t.clone());
        assert_eq!(induce(&one, &f).unwrap(), one);
    }

    #[test]
    fn induce_trivial_from_a3() {
        // brute-force oracle: S3 acts on the 2 cosets of A3; elements outside
        // A3 swap the cosets. Fixed cosets: 1A -> 2, 2A -> 0, 3A -> 2.
        let a3 = a3();
        let s3 = s3();
        let f = a3_into_s3(&a3, &s3);
        let ind = induce(&ClassFunction::trivial(a3), &f).unwrap();
        let expected: Vec<Cyclotomic> =
            [2, 0, 2].iter().map(|&k| Cyclotomic::from_integer(k)).collect();
        assert_eq!(ind.values, expected);
        // decomposes as trivial + sign
        let vc = decompose(&ind).unwrap();
        assert_eq!(vc, VirtualCharacter::from_i64(s3, &[1, 1, 0]));
    }

    #[test]
    fn frobenius_reciprocity_s3_a3() {
        let a3 = a3();
        let s3 = s3();
        let f = a3_into_s3(&a3, &s3);
        for i in 0..3 {
            for j in 0..3 {
                let x = ClassFunction::irreducible(a3.clone(), i);
                let y = ClassFunction::irreducible(s3.clone(), j);
                let lhs = inner_product(&induce(&x, &f).unwrap(), &y).unwrap();
                let rhs = inner_product(&x, &restrict(&y, &f).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "reciprocity at ({i}, {j})");
            }
        }
    }

    #[test]
    fn restrict_sign_character_to_a3_is_trivial() {
        let a3 = a3();
        let s3 = s3();
        let f = a3_into_s3(&a3, &s3);
        let sign = ClassFunction::irreducible(s3, 1);
        let r = restrict(&sign, &f).unwrap();
        assert_eq!(r, ClassFunction::trivial(a3));
    }

    #[test]
    fn parse_combination_names() {
        let t = s3();
        let vc = parse_combination(&t, "1a+2a").unwrap();
        assert_eq!(vc, VirtualCharacter::from_i64(t.clone(), &[1, 0, 1]));
        let doubled = parse_combination(&t, "1aa").unwrap();
        assert_eq!(doubled, VirtualCharacter::from_i64(t.clone(), &[2, 0, 0]));
        let spread = parse_combination(&t, "1ab").unwrap();
        assert_eq!(spread, VirtualCharacter::from_i64(t.clone(), &[1, 1, 0]));
        let coeff = parse_combination(&t, "3*2a + 1b").unwrap();
        assert_eq!(coeff, VirtualCharacter::from_i64(t.clone(), &[0, 1, 3]));
        let positional = parse_combination(&t, "chi1+2*chi3").unwrap();
        assert_eq!(positional, VirtualCharacter::from_i64(t.clone(), &[1, 0, 2]));
        assert!(matches!(parse_combination(&t, "99z"), Err(ChartabError::UnknownName(_))));
        assert!(matches!(parse_combination(&t, "1"), Err(ChartabError::AmbiguousName(_))));
        // bare degree is accepted when unique
        let bare = parse_combination(&t, "2").unwrap();
        assert_eq!(bare, VirtualCharacter::from_i64(t, &[0, 0, 1]));
    }
}
