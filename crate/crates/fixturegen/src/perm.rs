//! Compact permutations for the generator's heavy enumeration work.
//! Degree is bounded by 255 so images fit in bytes.

use std::collections::HashMap;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u8 == x)
    }

    /// (a * b)(x) = a(b(x)).
    pub fn mul(&self, b: &Perm) -> Perm {
        Perm(b.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn conj(&self, g: &Perm) -> Perm {
        // g^{-1} * self * g
        g.inv().mul(&self.mul(g))
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: u64 = 1;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0u64;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Sorted cycle-length multiset, the basic conjugacy invariant.
    pub fn cycle_type(&self) -> Vec<u8> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0u8;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// 128-bit fingerprint; collision-free in practice at our scales.
    pub fn fp(&self) -> u128 {
        let mut h1: u64 = 0x9e3779b97f4a7c15;
        let mut h2: u64 = 0xbf58476d1ce4e5b9;
        for &b in &self.0 {
            h1 = (h1 ^ b as u64).wrapping_mul(0x100000001b3);
            h1 ^= h1 >> 31;
            h2 = h2.wrapping_add(b as u64).wrapping_mul(0xff51afd7ed558ccd);
            h2 ^= h2 >> 29;
        }
        ((h1 as u128) << 64) | h2 as u128
    }

    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for i in 0..n {
            if seen[i] || self.0[i] as usize == i {
                seen[i] = true;
                continue;
            }
            out.push('(');
            let mut j = i;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&j.to_string());
                first = false;
                j = self.0[j] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// BFS closure of a generating set; panics if the bound is exceeded when
/// `hard` is set, otherwise returns None.
pub fn enumerate(gens: &[Perm], degree: usize, bound: usize) -> Option<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashMap<u128, ()> = HashMap::new();
    seen.insert(id.fp(), ());
    let mut out = vec![id];
    let mut frontier = 0usize;
    while frontier < out.len() {
        let g = out[frontier].clone();
        frontier += 1;
        for h in gens {
            let gh = g.mul(h);
            let fp = gh.fp();
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(fp) {
                e.insert(());
                out.push(gh);
                if out.len() > bound {
                    return None;
                }
            }
        }
    }
    Some(out)
}

/// Order of <gens> when it does not exceed `bound`, else None.
pub fn order_bounded(gens: &[Perm], degree: usize, bound: usize) -> Option<usize> {
    enumerate(gens, degree, bound).map(|v| v.len())
}
