//! Derivation of 2-modular block data from an exact ordinary table:
//! block distribution via central characters at a place over 2, the
//! lattice of virtual characters vanishing on 2-singular classes, and a
//! projective-cover basis obtained from induced projective characters with
//! subtract-reduction. Every derived datum is certified against the block
//! axioms: lattice-basis unimodularity, nonnegative generation of the whole
//! projective supply, degree divisibility by |G|_2, and Brauer's
//! elementary-divisor value for the product of the Cartan determinants.

use lefblock_core::blocks::{BlockInfo, BrauerBlockData};
use lefblock_core::cyclo::{Cyclotomic, Rational};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

use crate::gf2m::Gf2m;
use crate::perm::lcm;
use crate::tables::GroupData;

/// Image of a cyclotomic algebraic integer in GF(2^m) under the place
/// sending zeta_N to a fixed element of order N_odd.
fn reduce_value(
    v: &Cyclotomic,
    field: &Gf2m,
    alpha: u64,
    exponent: u64,
    n_odd: u64,
) -> u64 {
    let cond = v.conductor();
    debug_assert_eq!(exponent % cond, 0);
    let step = (exponent / cond) % n_odd;
    let mut acc = 0u64;
    for (e, c) in v.coords_at(cond) {
        assert!(c.is_integer(), "central character coordinate is not integral: {c}");
        let m2: BigInt = c.to_integer() % 2;
        if m2.is_zero() {
            continue;
        }
        let img = field.pow(alpha, step * e % n_odd);
        acc ^= img;
    }
    acc
}

/// Block ids (1-based, principal first) for every ordinary irreducible.
pub fn block_distribution(g: &GroupData, prime: u64) -> Vec<u32> {
    assert_eq!(prime, 2, "only p = 2 block data is generated");
    let t = &g.table;
    let k = t.class_count();
    let exponent = t.classes.iter().fold(1u64, |a, c| lcm(a, c.element_order));
    let mut n_odd = exponent;
    while n_odd % 2 == 0 {
        n_odd /= 2;
    }
    // multiplicative order of 2 mod n_odd
    let m = if n_odd == 1 {
        1
    } else {
        let mut ord = 1u32;
        let mut pow = 2u64 % n_odd;
        while pow != 1 {
            pow = pow * 2 % n_odd;
            ord += 1;
        }
        ord
    };
    let field = Gf2m::new(m.max(1));
    let alpha = if n_odd == 1 { 1 } else { field.element_of_order(n_odd) };

    // omega_i(K_j) = |K_j| chi_i(g_j) / chi_i(1), reduced at the place
    let mut signatures: Vec<Vec<u64>> = Vec::with_capacity(k);
    for i in 0..k {
        let deg = t.degree(i);
        let mut sig = Vec::with_capacity(k);
        for j in 0..k {
            let w = Rational::new(BigInt::from(t.classes[j].size), deg.clone());
            let omega = t.irreducibles[i][j].scale(&w);
            sig.push(reduce_value(&omega, &field, alpha, exponent, n_odd));
        }
        signatures.push(sig);
    }

    // group equal signatures
    let mut block_of = vec![0u32; k];
    let mut seen: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    for i in 0..k {
        match seen.iter_mut().find(|(s, _)| *s == signatures[i]) {
            Some((_, members)) => members.push(i),
            None => seen.push((signatures[i].clone(), vec![i])),
        }
    }
    // principal block = the one containing the trivial character
    let trivial = (0..k)
        .find(|&i| t.irreducibles[i].iter().all(|v| *v == Cyclotomic::one()))
        .expect("table has a trivial character");
    let vg = t.order_valuation(2);
    let defect_of = |members: &[usize]| -> u32 {
        let min_v = members
            .iter()
            .map(|&i| lefblock_core::blocks::valuation_bigint(&t.degree(i), 2))
            .min()
            .unwrap();
        vg - min_v
    };
    let mut order: Vec<usize> = (0..seen.len()).collect();
    order.sort_by_key(|&b| {
        let principal = seen[b].1.contains(&trivial);
        let defect = defect_of(&seen[b].1);
        (!principal, std::cmp::Reverse(defect), seen[b].1[0])
    });
    for (rank, &b) in order.iter().enumerate() {
        for &i in &seen[b].1 {
            block_of[i] = rank as u32 + 1;
        }
    }
    block_of
}

// ---------------------------------------------------------------------------
// exact integer/rational linear algebra
// ---------------------------------------------------------------------------

fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        return (a.clone(), BigInt::one(), BigInt::zero());
    }
    let (g, x, y) = xgcd(b, &(a % b));
    (g, y.clone(), x - (a / b) * y)
}

/// Basis of {x in Z^cols : A x = 0} by unimodular column operations.
pub fn integer_kernel(a: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    // work columns carry the A-part stacked over the identity tracker
    let mut work: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..cols)
        .map(|c| {
            let acol: Vec<BigInt> = (0..rows).map(|r| a[r][c].clone()).collect();
            let mut id = vec![BigInt::zero(); cols];
            id[c] = BigInt::one();
            (acol, id)
        })
        .collect();
    let mut active: Vec<usize> = (0..cols).collect();
    for r in 0..rows {
        // clear row r across active columns down to one pivot
        loop {
            let nz: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&c| !work[c].0[r].is_zero())
                .collect();
            if nz.len() <= 1 {
                if let Some(&pivot) = nz.first() {
                    active.retain(|&c| c != pivot);
                }
                break;
            }
            let (ci, cj) = (nz[0], nz[1]);
            let (av, bv) = (work[ci].0[r].clone(), work[cj].0[r].clone());
            let (gcd, x, y) = xgcd(&av, &bv);
            let (au, bu) = (&av / &gcd, &bv / &gcd);
            // unimodular 2x2 transform: new ci carries gcd, new cj carries 0
            let n = rows;
            let mut new_i_a = vec![BigInt::zero(); n];
            let mut new_j_a = vec![BigInt::zero(); n];
            for t in 0..n {
                new_i_a[t] = &x * &work[ci].0[t] + &y * &work[cj].0[t];
                new_j_a[t] = -&bu * &work[ci].0[t] + &au * &work[cj].0[t];
            }
            let mut new_i_id = vec![BigInt::zero(); cols];
            let mut new_j_id = vec![BigInt::zero(); cols];
            for t in 0..cols {
                new_i_id[t] = &x * &work[ci].1[t] + &y * &work[cj].1[t];
                new_j_id[t] = -&bu * &work[ci].1[t] + &au * &work[cj].1[t];
            }
            work[ci] = (new_i_a, new_i_id);
            work[cj] = (new_j_a, new_j_id);
        }
    }
    active
        .into_iter()
        .map(|c| {
            debug_assert!(work[c].0.iter().all(|v| v.is_zero()));
            work[c].1.clone()
        })
        .collect()
}

/// Solve basis * x = v exactly over Q when `basis` (columns) is full rank;
/// returns None if v is outside the span.
pub fn solve_in_basis(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<Rational>> {
    let n = v.len();
    let d = basis.len();
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = (0..d)
                .map(|c| Rational::from_integer(basis[c][r].clone()))
                .collect();
            row.push(Rational::from_integer(v[r].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..d {
        if let Some(r) = (pr..n).find(|&r| !aug[r][c].is_zero()) {
            aug.swap(pr, r);
            let inv = aug[pr][c].clone().recip();
            for x in aug[pr].iter_mut() {
                *x *= &inv;
            }
            for r2 in 0..n {
                if r2 != pr && !aug[r2][c].is_zero() {
                    let f = aug[r2][c].clone();
                    for c2 in 0..=d {
                        let t = &aug[pr][c2] * &f;
                        aug[r2][c2] -= t;
                    }
                }
            }
            pivots.push((pr, c));
            pr += 1;
        }
    }
    for r in pr..n {
        if !aug[r][d].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); d];
    for (r, c) in pivots {
        x[c] = aug[r][d].clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// projective supply
// ---------------------------------------------------------------------------

/// Inner product <a, chi_j> on raw value vectors, certified integral.
fn decompose_values(g: &GroupData, values: &[Cyclotomic]) -> Vec<BigInt> {
    let t = &g.table;
    let k = t.class_count();
    (0..k)
        .map(|j| {
            let mut s = Cyclotomic::zero();
            for c in 0..k {
                let term = values[c].mul(&t.irreducibles[j][c].conjugate());
                let w = Rational::new(BigInt::one(), BigInt::from(t.classes[c].centralizer_order));
                s = s.add(&term.scale(&w));
            }
            s.as_integer().expect("supply multiplicity must be integral")
        })
        .collect()
}

/// Characters induced from the linear characters of the cyclic subgroups
/// generated by 2-regular elements; all of them are projective.
pub fn cyclic_supply(g: &GroupData) -> Vec<Vec<BigInt>> {
    let t = &g.table;
    let k = t.class_count();
    let mut out = Vec::new();
    for j0 in 0..k {
        let d = t.classes[j0].element_order;
        if d % 2 == 0 {
            continue;
        }
        let rep = &g.classes.reps[j0];
        let power_class: Vec<usize> =
            (0..d).map(|s| g.classes.identify(&rep.pow(s))).collect();
        for tt in 0..d {
            // mults_i = (1/d) sum_s zeta_d^{t s} conj(chi_i(x^s))
            let mults: Vec<BigInt> = (0..k)
                .map(|i| {
                    let mut s_acc = Cyclotomic::zero();
                    for s in 0..d {
                        let lam = Cyclotomic::root_of_unity(d, tt * s % d);
                        let chi = t.irreducibles[i][power_class[s as usize]].conjugate();
                        s_acc = s_acc.add(&lam.mul(&chi));
                    }
                    let scaled = s_acc.scale(&Rational::new(BigInt::one(), BigInt::from(d)));
                    let m = scaled.as_integer().expect("induced multiplicity integral");
                    assert!(!m.is_negative(), "induced character has negative multiplicity");
                    m
                })
                .collect();
            out.push(mults);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// One closure round: tensor every supply character with every ordinary
/// irreducible (projective tensor anything is projective).
pub fn tensor_round(g: &GroupData, supply: &[Vec<BigInt>], cap: usize) -> Vec<Vec<BigInt>> {
    let t = &g.table;
    let k = t.class_count();
    let mut out: Vec<Vec<BigInt>> = supply.to_vec();
    for mults in supply {
        // class-function values of the supply character
        let values: Vec<Cyclotomic> = (0..k)
            .map(|c| {
                let mut acc = Cyclotomic::zero();
                for i in 0..k {
                    if mults[i].is_zero() {
                        continue;
                    }
                    acc = acc.add(
                        &t.irreducibles[i][c].scale(&Rational::from_integer(mults[i].clone())),
                    );
                }
                acc
            })
            .collect();
        for ch in 0..k {
            let prod: Vec<Cyclotomic> = (0..k)
                .map(|c| values[c].mul(&t.irreducibles[ch][c]))
                .collect();
            out.push(decompose_values(g, &prod));
            if out.len() > cap {
                break;
            }
        }
        if out.len() > cap {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// PIM extraction
// ---------------------------------------------------------------------------

/// The lattice of integer combinations of the listed ordinaries vanishing
/// on every 2-singular class, as basis vectors over those rows.
pub fn vanishing_lattice(g: &GroupData, rows: &[usize]) -> Vec<Vec<BigInt>> {
    let t = &g.table;
    let mut constraints: Vec<Vec<BigInt>> = Vec::new();
    for (c, cl) in t.classes.iter().enumerate() {
        if cl.element_order % 2 != 0 {
            continue;
        }
        let d = cl.element_order;
        // expand sum_i x_i chi_i(c) over the basis of conductor d
        let coords: Vec<Vec<(u64, Rational)>> =
            rows.iter().map(|&i| t.irreducibles[i][c].coords_at(d)).collect();
        let mut exps: Vec<u64> = coords.iter().flat_map(|v| v.iter().map(|(e, _)| *e)).collect();
        exps.sort_unstable();
        exps.dedup();
        for e in exps {
            let row: Vec<BigInt> = coords
                .iter()
                .map(|v| {
                    v.iter()
                        .find(|(ee, _)| *ee == e)
                        .map(|(_, c)| {
                            assert!(c.is_integer());
                            c.to_integer()
                        })
                        .unwrap_or_else(BigInt::zero)
                })
                .collect();
            constraints.push(row);
        }
    }
    integer_kernel(&constraints, rows.len())
}

/// Subtract-reduce a set of nonnegative lattice vectors to candidate
/// indecomposables.
fn minimalize(mut p: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    p.retain(|v| v.iter().any(|x| !x.is_zero()));
    p.sort();
    p.dedup();
    let mut changed = true;
    while changed {
        changed = false;
        p.sort_by_key(|v| v.iter().sum::<BigInt>());
        let snapshot = p.clone();
        for i in 0..p.len() {
            for small in &snapshot {
                if small == &p[i] {
                    continue;
                }
                loop {
                    let diff: Vec<BigInt> =
                        p[i].iter().zip(small).map(|(a, b)| a - b).collect();
                    if diff.iter().any(|x| x.is_negative())
                        || diff.iter().all(|x| x.is_zero())
                    {
                        break;
                    }
                    p[i] = diff;
                    changed = true;
                }
            }
        }
        p.retain(|v| v.iter().any(|x| !x.is_zero()));
        p.sort();
        p.dedup();
    }
    p
}

pub struct DerivedBlocks {
    pub data: BrauerBlockData,
}

/// Full derivation of the 2-modular block data for a classified group.
pub fn derive_block_data(g: &GroupData, prime: u64) -> BrauerBlockData {
    let t = &g.table;
    let k = t.class_count();
    let block_of = block_distribution(g, prime);
    let nblocks = *block_of.iter().max().unwrap();
    let vg = t.order_valuation(2);

    // supply: cyclic inductions closed once under tensoring
    let base = cyclic_supply(g);
    let supply = tensor_round(g, &base, 4000);

    let two_regular = t.classes.iter().filter(|c| c.element_order % 2 == 1).count();

    struct BlockCols {
        rows: Vec<usize>,
        cols: Vec<Vec<BigInt>>, // over `rows`
    }
    let mut per_block: Vec<BlockCols> = Vec::new();
    let mut total_l = 0usize;
    for b in 1..=nblocks {
        let rows: Vec<usize> = (0..k).filter(|&i| block_of[i] == b).collect();
        let lattice = vanishing_lattice(g, &rows);
        let l = lattice.len();
        total_l += l;
        // project supply to the block and express in the lattice
        let mut proj: Vec<Vec<BigInt>> = supply
            .iter()
            .map(|s| rows.iter().map(|&i| s[i].clone()).collect::<Vec<BigInt>>())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        proj.sort();
        proj.dedup();
        for s in &proj {
            let coords = solve_in_basis(&lattice, s)
                .expect("projected supply must lie in the vanishing lattice span");
            assert!(
                coords.iter().all(|c| c.is_integer()),
                "projected supply not in the integer lattice"
            );
        }
        // check the supply spans the full lattice: the Z-span of coords
        // must be all of Z^l (kernel of nothing => index via HNF-like
        // reduction through integer_kernel on the transpose trick)
        let coord_vecs: Vec<Vec<BigInt>> = proj
            .iter()
            .map(|s| {
                solve_in_basis(&lattice, s)
                    .unwrap()
                    .into_iter()
                    .map(|c| c.to_integer())
                    .collect()
            })
            .collect();
        assert_eq!(
            lattice_index(&coord_vecs, l),
            BigInt::one(),
            "supply spans a proper sublattice in block {b}; add closure rounds"
        );
        let candidates = minimalize(proj);
        // choose an l-subset forming a unimodular basis, smallest first
        let chosen = choose_basis(&candidates, &lattice, l)
            .expect("could not extract a candidate cover basis");
        // certify: every supply projection is a nonnegative integer
        // combination of the chosen columns
        for s in &coord_vecs {
            let in_chosen = solve_in_basis(
                &chosen
                    .iter()
                    .map(|c| solve_in_basis(&lattice, c).unwrap().iter().map(|x| x.to_integer()).collect())
                    .collect::<Vec<Vec<BigInt>>>(),
                s,
            )
            .expect("chosen set is a basis");
            assert!(
                in_chosen.iter().all(|c| c.is_integer() && !c.is_negative()),
                "supply element is not a nonnegative combination of the candidates"
            );
        }
        per_block.push(BlockCols { rows, cols: chosen });
    }
    assert_eq!(
        total_l, two_regular,
        "block lattice ranks must sum to the number of 2-regular classes"
    );

    // assemble D with global column order by Brauer degree
    struct Col {
        block: u32,
        full: Vec<BigInt>,
    }
    let mut cols: Vec<Col> = Vec::new();
    for (bi, bc) in per_block.iter().enumerate() {
        for c in &bc.cols {
            let mut full = vec![BigInt::zero(); k];
            for (pos, &i) in bc.rows.iter().enumerate() {
                full[i] = c[pos].clone();
            }
            cols.push(Col { block: bi as u32 + 1, full });
        }
    }
    // Phi-degree of a column and the Brauer degrees via the degree system
    let phi_degree = |col: &Vec<BigInt>| -> BigInt {
        (0..k).map(|i| &col[i] * t.degree(i)).sum()
    };
    let pe = BigInt::from(2).pow(vg);
    for c in &cols {
        let d = phi_degree(&c.full);
        assert!(
            (&d % &pe).is_zero(),
            "projective cover degree {d} not divisible by |G|_2 = {pe}"
        );
    }
    // Brauer degrees: solve D x = ordinary degrees
    let dmat: Vec<Vec<BigInt>> = (0..k)
        .map(|i| cols.iter().map(|c| c.full[i].clone()).collect())
        .collect();
    let degs: Vec<BigInt> = (0..k).map(|i| t.degree(i)).collect();
    let brauer_degrees = solve_in_basis(
        &(0..cols.len())
            .map(|c| (0..k).map(|r| dmat[r][c].clone()).collect())
            .collect::<Vec<Vec<BigInt>>>(),
        &degs,
    )
    .expect("degree system must be consistent");
    let brauer_degrees: Vec<BigInt> = brauer_degrees
        .into_iter()
        .map(|c| {
            assert!(c.is_integer() && c.is_positive(), "Brauer degree must be a positive integer");
            c.to_integer()
        })
        .collect();

    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&c| (brauer_degrees[c].clone(), cols[c].block, cols[c].full.clone()));

    let decomposition: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            order
                .iter()
                .map(|&c| u64::try_from(&cols[c].full[i]).expect("nonnegative entry"))
                .collect()
        })
        .collect();
    let brauer_to_block: Vec<u32> = order.iter().map(|&c| cols[c].block).collect();
    let brauer_names: Vec<String> =
        (1..=order.len()).map(|i| format!("phi{i}")).collect();

    // block defects
    let blocks: Vec<BlockInfo> = (1..=nblocks)
        .map(|b| {
            let min_v = (0..k)
                .filter(|&i| block_of[i] == b)
                .map(|i| lefblock_core::blocks::valuation_bigint(&t.degree(i), 2))
                .min()
                .unwrap();
            BlockInfo { id: b, defect: vg - min_v }
        })
        .collect();

    let data = BrauerBlockData {
        table: t.clone(),
        prime,
        blocks,
        ordinary_to_block: block_of,
        brauer_names,
        brauer_to_block,
        decomposition,
    };
    let violations = data.validate();
    assert!(violations.is_empty(), "derived block data invalid: {violations:?}");

    // Brauer's elementary-divisor theorem: the product of the per-block
    // Cartan determinants equals prod over 2-regular classes of the 2-part
    // of the centralizer order
    let mut expected = BigInt::one();
    for c in &t.classes {
        if c.element_order % 2 == 1 {
            let mut v = c.centralizer_order;
            while v % 2 == 0 {
                v /= 2;
                expected *= 2;
            }
        }
    }
    let mut product = BigInt::one();
    for b in &data.blocks {
        let cart = lefblock_core::blocks::cartan(&data, b.id).unwrap();
        product *= det_int(&cart);
    }
    assert_eq!(
        product, expected,
        "Cartan determinant product does not match the centralizer 2-parts"
    );

    data
}

/// |det| of the square integer matrix formed by `vecs` (each of length l)
/// when square, else the index-style gcd of maximal minors via kernel rank.
fn lattice_index(vecs: &[Vec<BigInt>], l: usize) -> BigInt {
    // reduce the generating set to a triangular form by integer row ops
    let mut m: Vec<Vec<BigInt>> = vecs.to_vec();
    let mut det = BigInt::one();
    let mut row = 0;
    for c in 0..l {
        // find a generator with nonzero entry at c, gcd-reduce the column
        loop {
            let nz: Vec<usize> =
                (row..m.len()).filter(|&r| !m[r][c].is_zero()).collect();
            if nz.is_empty() {
                return BigInt::zero();
            }
            if nz.len() == 1 {
                m.swap(row, nz[0]);
                break;
            }
            let (r1, r2) = (nz[0], nz[1]);
            let (a, b) = (m[r1][c].clone(), m[r2][c].clone());
            let (g, x, y) = xgcd(&a, &b);
            let (au, bu) = (&a / &g, &b / &g);
            let row1: Vec<BigInt> =
                (0..l).map(|j| &x * &m[r1][j] + &y * &m[r2][j]).collect();
            let row2: Vec<BigInt> =
                (0..l).map(|j| -&bu * &m[r1][j] + &au * &m[r2][j]).collect();
            m[r1] = row1;
            m[r2] = row2;
        }
        det *= m[row][c].abs();
        // clear below
        let pivot = m[row][c].clone();
        for r in (row + 1)..m.len() {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for j in 0..l {
                    let t = &m[row][j] * &f;
                    m[r][j] -= t;
                }
            }
        }
        row += 1;
        if row > m.len() {
            break;
        }
    }
    det
}

/// Pick l candidates forming a unimodular basis of the lattice, preferring
/// small total degree.
fn choose_basis(
    candidates: &[Vec<BigInt>],
    lattice: &[Vec<BigInt>],
    l: usize,
) -> Option<Vec<Vec<BigInt>>> {
    let mut sorted: Vec<&Vec<BigInt>> = candidates.iter().collect();
    sorted.sort_by_key(|v| v.iter().sum::<BigInt>());
    let coords: Vec<Vec<BigInt>> = sorted
        .iter()
        .map(|v| {
            solve_in_basis(lattice, v)
                .expect("candidate in lattice span")
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer());
                    c.to_integer()
                })
                .collect()
        })
        .collect();
    // greedy: maintain chosen coordinate vectors; add candidate if it
    // increases the rank; at the end demand unimodularity
    let mut chosen_idx: Vec<usize> = Vec::new();
    for i in 0..sorted.len() {
        if chosen_idx.len() == l {
            break;
        }
        let mut trial: Vec<Vec<BigInt>> =
            chosen_idx.iter().map(|&j| coords[j].clone()).collect();
        trial.push(coords[i].clone());
        let r = rank_int(&trial, l);
        if r == trial.len() {
            chosen_idx.push(i);
        }
    }
    if chosen_idx.len() != l {
        return None;
    }
    let index = lattice_index(
        &chosen_idx.iter().map(|&j| coords[j].clone()).collect::<Vec<_>>(),
        l,
    );
    if index != BigInt::one() {
        return None;
    }
    Some(chosen_idx.into_iter().map(|i| sorted[i].clone()).collect())
}

fn rank_int(vecs: &[Vec<BigInt>], l: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = vecs
        .iter()
        .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let rows = m.len();
    let mut rank = 0;
    for c in 0..l {
        if let Some(r) = (rank..rows).find(|&r| !m[r][c].is_zero()) {
            m.swap(rank, r);
            let inv = m[rank][c].clone().recip();
            for x in m[rank].iter_mut() {
                *x *= &inv;
            }
            for r2 in 0..rows {
                if r2 != rank && !m[r2][c].is_zero() {
                    let f = m[r2][c].clone();
                    for c2 in 0..l {
                        let t = &m[rank][c2] * &f;
                        m[r2][c2] -= t;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    lattice_index(&m.to_vec(), m.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::find_classes;
    use crate::perm::Perm;
    use crate::tables::build_table;

    fn a5() -> GroupData {
        let gens = vec![Perm(vec![1, 2, 0, 3, 4]), Perm(vec![1, 2, 3, 4, 0])];
        let classes = find_classes(&gens, 5, 60, 31);
        build_table("A5", "A5", classes)
    }

    #[test]
    fn a5_blocks_and_pims() {
        let g = a5();
        let dist = block_distribution(&g, 2);
        // principal block: 1, 3a, 3b, 5; defect 0 block: the 4-dim
        let four = (0..5).find(|&i| g.table.degree(i) == 4.into()).unwrap();
        for i in 0..5 {
            if i == four {
                assert_eq!(dist[i], 2);
            } else {
                assert_eq!(dist[i], 1, "chi{} should be principal", i + 1);
            }
        }
        let data = derive_block_data(&g, 2);
        assert!(data.validate().is_empty());
        // the known decomposition matrix of A5 mod 2
        assert_eq!(data.brauer_to_block, vec![1, 1, 1, 2]);
        let expected_cols: Vec<BigInt> =
            vec![12.into(), 8.into(), 8.into(), 4.into()];
        let got: Vec<BigInt> = (0..4)
            .map(|j| {
                (0..5)
                    .map(|i| BigInt::from(data.decomposition[i][j]) * g.table.degree(i))
                    .sum()
            })
            .collect();
        assert_eq!(got, expected_cols, "projective cover degrees of A5 mod 2");
    }

    #[test]
    fn s3_derivation_matches_textbook() {
        let gens = vec![Perm(vec![1, 0, 2]), Perm(vec![1, 2, 0])];
        let classes = find_classes(&gens, 3, 6, 33);
        let g = build_table("S3", "S3", classes);
        let data = derive_block_data(&g, 2);
        assert_eq!(data.blocks.len(), 2);
        assert_eq!(data.ordinary_to_block, vec![1, 1, 2]);
        assert_eq!(data.decomposition, vec![vec![1, 0], vec![1, 0], vec![0, 1]]);
    }
}

