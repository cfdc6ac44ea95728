//! Exact character tables of explicit permutation groups: class-algebra
//! structure constants, common eigenvector splitting over F_p, and the lift
//! back to exact cyclotomic values. The caller certifies the result with
//! the full orthogonality validation afterwards.

use std::collections::VecDeque;

use lefblock_core::cyclo::{Cyclotomic, Rational};
use num::BigInt;

use crate::grp::Classes;
use crate::modp::{self, add, inv, mul, powm, sub, Mat};
use crate::perm::Perm;

/// Conjugation-orbit BFS keeping the actual elements (small classes only).
fn class_elements(gens: &[Perm], rep: &Perm) -> Vec<Perm> {
    let mut seen = std::collections::HashSet::new();
    seen.insert(rep.fp());
    let mut out = vec![rep.clone()];
    let mut queue: VecDeque<Perm> = VecDeque::new();
    queue.push_back(rep.clone());
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.conj(g);
            if seen.insert(y.fp()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

/// Structure-constant matrix for class i: entry [j][k] counts pairs
/// (x, y) in K_i x K_j with xy = z_k.
fn class_matrix(classes: &Classes, i: usize, p: u64) -> Mat {
    let k = classes.class_count();
    let elements = class_elements(&classes.gens, &classes.reps[i]);
    let mut m = vec![vec![0u64; k]; k];
    for (kk, z) in classes.reps.iter().enumerate() {
        for x in &elements {
            let y = x.inv().mul(z);
            let j = classes.identify(&y);
            m[j][kk] = add(m[j][kk], 1, p);
        }
    }
    m
}

/// Tonelli-Shanks square root mod p.
fn sqrt_mod(n: u64, p: u64) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    if powm(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powm(n, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powm(z, (p - 1) / 2, p) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powm(z, q, p);
    let mut t = powm(n, q, p);
    let mut r = powm(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul(t2, t2, p);
            i += 1;
        }
        let b = powm(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b, p);
        t = mul(t, c, p);
        r = mul(r, b, p);
    }
    Some(r)
}

/// The full exact character table: one row of cyclotomic values per
/// irreducible, in no particular order.
pub fn character_table(classes: &Classes) -> Vec<Vec<Cyclotomic>> {
    let k = classes.class_count();
    let exponent = classes.orders.iter().fold(1u64, |a, &b| crate::perm::lcm(a, b));
    let sqrt_g = (classes.order as f64).sqrt() as u64 + 2;
    let p = modp::find_prime(exponent, (4 * sqrt_g).max(1 << 16));
    let z = modp::primitive_root(p);
    let g_mod = (classes.order % p as u128) as u64;

    // split the coordinate space into common eigenspaces of the class
    // matrices, cheapest classes first
    let mut order_by_size: Vec<usize> = (1..k).collect();
    order_by_size.sort_by_key(|&i| classes.sizes[i]);

    // spaces as k x d column-basis matrices
    let mut spaces: Vec<Mat> = vec![(0..k)
        .map(|r| (0..k).map(|c| u64::from(r == c)).collect())
        .collect()];
    let mut seed = 0x5eed5eed5eedu64;

    for &i in &order_by_size {
        if spaces.iter().all(|s| s[0].len() == 1) {
            break;
        }
        let m = class_matrix(classes, i, p);
        let mut next: Vec<Mat> = Vec::new();
        for b in spaces {
            let d = b[0].len();
            if d == 1 {
                next.push(b);
                continue;
            }
            // restricted action A with M B = B A
            let mb = modp::matmul(&m, &b, p);
            let mut aug: Mat = (0..k)
                .map(|r| {
                    let mut row = b[r].clone();
                    row.extend_from_slice(&mb[r]);
                    row
                })
                .collect();
            let pivots = modp::rref(&mut aug, p);
            let mut a = vec![vec![0u64; d]; d];
            for (r, &pc) in pivots.iter().enumerate() {
                assert!(pc < d, "basis matrix lost column rank");
                for j in 0..d {
                    a[pc][j] = aug[r][d + j];
                }
            }
            let cp = modp::charpoly(&a, p);
            let eigs = modp::roots(&cp, p, &mut seed);
            if eigs.len() == 1 {
                next.push(b);
                continue;
            }
            for lam in eigs {
                // nullspace of (A - lam I) pulled back through B
                let mut shifted = a.clone();
                for t in 0..d {
                    shifted[t][t] = sub(shifted[t][t], lam, p);
                }
                let ns = modp::nullspace(&shifted, p);
                assert!(!ns.is_empty());
                let sub_basis: Mat = (0..k)
                    .map(|r| {
                        ns.iter()
                            .map(|v| {
                                let mut s = 0u64;
                                for (t, &vt) in v.iter().enumerate() {
                                    s = add(s, mul(b[r][t], vt, p), p);
                                }
                                s
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub_basis);
            }
        }
        spaces = next;
    }
    assert!(
        spaces.iter().all(|s| s[0].len() == 1),
        "class matrices did not split the space completely"
    );
    assert_eq!(spaces.len(), k);

    // inverse-class map
    let inv_class: Vec<usize> =
        classes.reps.iter().map(|r| classes.identify(&r.inv())).collect();

    // central characters, normalized at the identity coordinate
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::with_capacity(k);
    let mut degree_check = 0u128;
    for space in &spaces {
        let raw: Vec<u64> = space.iter().map(|row| row[0]).collect();
        assert_ne!(raw[0], 0, "eigenvector vanishes at the identity class");
        let norm = inv(raw[0], p);
        let omega: Vec<u64> = raw.iter().map(|&x| mul(x, norm, p)).collect();
        // 1/deg^2 = (1/|G|) sum_j omega_j omega_j' / |K_j|
        let mut s = 0u64;
        for j in 0..k {
            let kj = (classes.sizes[j] % p as u128 as u64) % p;
            let term = mul(mul(omega[j], omega[inv_class[j]], p), inv(kj, p), p);
            s = add(s, term, p);
        }
        let deg2 = mul(g_mod, inv(s, p), p);
        let deg = {
            let r = sqrt_mod(deg2, p).expect("degree squared must be a QR");
            r.min(p - r)
        };
        degree_check += (deg as u128) * (deg as u128);

        // chi(g_j) = deg * omega_j / |K_j| mod p
        let chi_p: Vec<u64> = (0..k)
            .map(|j| {
                let kj = (classes.sizes[j] % p as u128 as u64) % p;
                mul(mul(deg as u64, omega[j], p), inv(kj, p), p)
            })
            .collect();

        // lift each value to an exact cyclotomic via eigenvalue counts
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let d = classes.orders[j];
            if d == 1 {
                row.push(Cyclotomic::from_bigint(BigInt::from(deg)));
                continue;
            }
            let wd = powm(z, (p - 1) / d, p);
            let chi_pows: Vec<u64> = (0..d)
                .map(|s| chi_p[classes.identify(&classes.reps[j].pow(s))])
                .collect();
            let dinv = inv(d % p, p);
            let mut terms: Vec<(u64, Rational)> = Vec::new();
            for t in 0..d {
                let mut acc = 0u64;
                for (s, &cps) in chi_pows.iter().enumerate() {
                    // omega_d^{-ts}
                    let e = (t * s as u64) % d;
                    let w = powm(wd, d - e, p);
                    acc = add(acc, mul(cps, w, p), p);
                }
                let ct = mul(acc, dinv, p);
                assert!(
                    ct <= deg,
                    "eigenvalue multiplicity {ct} exceeds degree {deg}; prime too small"
                );
                if ct > 0 {
                    terms.push((t, Rational::from_integer(BigInt::from(ct))));
                }
            }
            row.push(Cyclotomic::from_terms(d, terms));
        }
        rows.push(row);
    }
    assert_eq!(degree_check, classes.order, "degree squares must sum to the group order");
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::find_classes;

    #[test]
    fn s5_character_degrees() {
        let gens = vec![Perm(vec![1, 0, 2, 3, 4]), Perm(vec![1, 2, 3, 4, 0])];
        let classes = find_classes(&gens, 5, 120, 3);
        let rows = character_table(&classes);
        let mut degs: Vec<i64> = rows
            .iter()
            .map(|r| {
                let d: BigInt = r[0].as_integer().unwrap();
                i64::try_from(&d).unwrap()
            })
            .collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 4, 4, 5, 5, 6]);
    }

    #[test]
    fn a4_character_table_has_cube_roots() {
        // A4 = <(0 1 2), (1 2 3)>
        let gens = vec![Perm(vec![1, 2, 0, 3]), Perm(vec![0, 2, 3, 1])];
        let classes = find_classes(&gens, 4, 12, 5);
        assert_eq!(classes.class_count(), 4);
        let rows = character_table(&classes);
        let mut degs: Vec<i64> = rows
            .iter()
            .map(|r| i64::try_from(&r[0].as_integer().unwrap()).unwrap())
            .collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 3]);
        // the two nontrivial linear characters carry primitive cube roots
        let has_irrational = rows
            .iter()
            .any(|r| r.iter().any(|v| v.conductor() == 3));
        assert!(has_irrational);
    }
}
