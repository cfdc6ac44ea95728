//! Group-level machinery: stabilizer chains (orders, membership, uniform
//! random elements), conjugacy classes by orbit BFS, class identification
//! with ambiguity sets, power maps, centralizers, and subgroup helpers.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::perm::{enumerate, Perm};

// ---------------------------------------------------------------------------
// stabilizer chain (incremental Schreier-Sims)
// ---------------------------------------------------------------------------

struct Level {
    point: u8,
    gens: Vec<Perm>,
    /// point -> transversal representative mapping base point to it
    transversal: HashMap<u8, Perm>,
}

pub struct Bsgs {
    pub degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.transversal.len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.strip(g, 0).is_identity()
    }

    fn strip(&self, g: &Perm, from: usize) -> Perm {
        let mut h = g.clone();
        for lvl in &self.levels[from..] {
            let img = h.0[lvl.point as usize];
            match lvl.transversal.get(&img) {
                Some(rep) => h = rep.inv().mul(&h),
                None => return h,
            }
        }
        h
    }

    pub fn random_element(&self, rng: &mut Rng) -> Perm {
        let mut g = Perm::identity(self.degree);
        for lvl in &self.levels {
            let reps: Vec<&Perm> = lvl.transversal.values().collect();
            let pick = reps[(rng.next() as usize) % reps.len()];
            g = g.mul(pick);
        }
        g
    }

    fn recompute_orbit(&mut self, i: usize) {
        let point = self.levels[i].point;
        let gens = self.levels[i].gens.clone();
        let mut trans: HashMap<u8, Perm> = HashMap::new();
        trans.insert(point, Perm::identity(self.degree));
        let mut queue = vec![point];
        let mut qi = 0;
        while qi < queue.len() {
            let p = queue[qi];
            qi += 1;
            let rep = trans[&p].clone();
            for g in &gens {
                let img = g.0[p as usize];
                if !trans.contains_key(&img) {
                    trans.insert(img, g.mul(&rep));
                    queue.push(img);
                }
            }
        }
        self.levels[i].transversal = trans;
    }

    fn add_generator(&mut self, g: Perm, lvl: usize) {
        if lvl == self.levels.len() {
            let point = (0..self.degree as u8)
                .find(|&p| g.0[p as usize] != p)
                .expect("non-identity generator");
            self.levels.push(Level { point, gens: Vec::new(), transversal: HashMap::new() });
        }
        self.levels[lvl].gens.push(g);
        self.recompute_orbit(lvl);
    }

    /// Verify the chain condition at every level, adding stripped Schreier
    /// generators until stable.
    fn close(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            i -= 1;
            let level_ok = 'check: loop {
                let pts: Vec<u8> = self.levels[i].transversal.keys().copied().collect();
                for p in pts {
                    let rep = self.levels[i].transversal[&p].clone();
                    let gens = self.levels[i].gens.clone();
                    for g in gens {
                        let img = g.0[p as usize];
                        let rep_img = self.levels[i].transversal[&img].clone();
                        let schreier = rep_img.inv().mul(&g.mul(&rep));
                        let h = self.strip(&schreier, i + 1);
                        if !h.is_identity() {
                            self.add_generator(h, i + 1);
                            break 'check false;
                        }
                    }
                }
                break 'check true;
            };
            if !level_ok {
                // restart verification from the level below the insertion
                i = self.levels.len();
            }
        }
    }
}

/// Incremental Schreier-Sims; exact order and membership tests. Group
/// generators always enter at the top level; only Schreier residues flow
/// downward (inside `close`).
pub fn bsgs(gens: &[Perm], degree: usize) -> Bsgs {
    let mut chain = Bsgs { degree, levels: Vec::new() };
    for g in gens {
        if !g.is_identity() && !chain.contains(g) {
            chain.add_generator(g.clone(), 0);
            chain.close();
        }
    }
    chain
}

/// xorshift; deterministic seeds keep the generator reproducible.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

// ---------------------------------------------------------------------------
// conjugacy classes
// ---------------------------------------------------------------------------

/// Conjugation-orbit BFS keeping memory lean: fingerprints only, no paths.
/// Returns (class size, sorted member fingerprints).
pub fn class_members(gens: &[Perm], rep: &Perm) -> (u64, Vec<u128>) {
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(rep.fp());
    let mut members = vec![rep.fp()];
    let mut queue: VecDeque<Perm> = VecDeque::new();
    queue.push_back(rep.clone());
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.conj(g);
            let fy = y.fp();
            if seen.insert(fy) {
                members.push(fy);
                queue.push_back(y);
            }
        }
    }
    members.sort_unstable();
    (seen.len() as u64, members)
}

/// Path-tracking conjugation BFS for small classes: also returns Schreier
/// generators of the centralizer of `rep` (up to `cap` of them).
pub fn class_with_centralizer(gens: &[Perm], rep: &Perm, cap: usize) -> (u64, Vec<Perm>) {
    let mut trans: HashMap<u128, Perm> = HashMap::new();
    trans.insert(rep.fp(), Perm::identity(rep.degree()));
    let mut queue: VecDeque<(Perm, Perm)> = VecDeque::new();
    queue.push_back((rep.clone(), Perm::identity(rep.degree())));
    let mut cent: Vec<Perm> = Vec::new();
    let mut cent_seen: HashSet<u128> = HashSet::new();
    while let Some((x, via)) = queue.pop_front() {
        for g in gens {
            let y = x.conj(g);
            let fy = y.fp();
            if let std::collections::hash_map::Entry::Vacant(e) = trans.entry(fy) {
                let path = via.mul(g);
                e.insert(path.clone());
                queue.push_back((y, path));
            } else if cent.len() < cap {
                let s = via.mul(g).mul(&trans[&fy].inv());
                if !s.is_identity() && cent_seen.insert(s.fp()) {
                    debug_assert_eq!(rep.conj(&s).fp(), rep.fp());
                    cent.push(s);
                }
            }
        }
    }
    (trans.len() as u64, cent)
}

/// Centralizer of `rep` as an enumerated subgroup, verified against the
/// expected order |G| / |class|; the Schreier cap grows until the full
/// centralizer is generated.
pub fn centralizer(
    gens: &[Perm],
    rep: &Perm,
    group_order: u128,
    degree: usize,
) -> Subgroup {
    let mut cap = 20;
    loop {
        let (size, cgens) = class_with_centralizer(gens, rep, cap);
        let expected = (group_order / size as u128) as usize;
        let mut with_rep = cgens;
        with_rep.push(rep.clone());
        if let Some(sub) = Subgroup::from_gens(&with_rep, degree, expected) {
            if sub.order() == expected {
                return sub;
            }
        }
        cap *= 3;
        assert!(cap < 4000, "centralizer generation did not converge");
    }
}

/// Conjugacy invariant: element order plus the cycle types of the powers.
/// Separates all classes except algebraically conjugate families, which the
/// ambiguity sets then resolve.
pub fn invariant(g: &Perm) -> Vec<u8> {
    let ord = g.order();
    let mut out = vec![ord as u8, 0xff];
    for d in 2..=ord {
        if ord % d == 0 {
            out.extend(g.pow(d).cycle_type());
            out.push(0xfe);
        }
    }
    out.extend(g.cycle_type());
    out
}

/// The classified group: representatives in Atlas-style order plus an exact
/// class-identification routine for arbitrary elements.
pub struct Classes {
    pub gens: Vec<Perm>,
    pub order: u128,
    pub reps: Vec<Perm>,
    pub sizes: Vec<u64>,
    pub orders: Vec<u64>,
    invariant_map: HashMap<Vec<u8>, Vec<usize>>,
    /// sorted member-fingerprint sets for invariant-ambiguous classes
    ambiguity_sets: HashMap<usize, Vec<u128>>,
}

impl Classes {
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        (self.order / self.sizes[i] as u128) as u64
    }

    /// Class index of an arbitrary group element.
    pub fn identify(&self, g: &Perm) -> usize {
        let inv = invariant(g);
        let cands = self
            .invariant_map
            .get(&inv)
            .unwrap_or_else(|| panic!("element matches no class invariant (order {})", g.order()));
        if cands.len() == 1 {
            return cands[0];
        }
        let fp = g.fp();
        let mut fallback = None;
        for &c in cands {
            match self.ambiguity_sets.get(&c) {
                Some(set) => {
                    if set.binary_search(&fp).is_ok() {
                        return c;
                    }
                }
                None => fallback = Some(c),
            }
        }
        fallback.expect("ambiguous class identification")
    }

    /// Power map: class index of rep^k for every class.
    pub fn power_map(&self, k: u64) -> Vec<usize> {
        self.reps.iter().map(|r| self.identify(&r.pow(k))).collect()
    }

    /// Swap two classes in the stored order (used to match printed
    /// conventions); ambiguity data moves along.
    pub fn swap_classes(&mut self, a: usize, b: usize) {
        self.reps.swap(a, b);
        self.sizes.swap(a, b);
        self.orders.swap(a, b);
        for cands in self.invariant_map.values_mut() {
            for c in cands.iter_mut() {
                if *c == a {
                    *c = b;
                } else if *c == b {
                    *c = a;
                }
            }
        }
        let sa = self.ambiguity_sets.remove(&a);
        let sb = self.ambiguity_sets.remove(&b);
        if let Some(s) = sa {
            self.ambiguity_sets.insert(b, s);
        }
        if let Some(s) = sb {
            self.ambiguity_sets.insert(a, s);
        }
    }
}

/// Discover all conjugacy classes, certified by the class equation. Seeds
/// come from random elements closed under powers; stalls trigger sweeps of
/// centralizer subgroups so tiny classes cannot be missed.
pub fn find_classes(gens: &[Perm], degree: usize, order: u128, seed: u64) -> Classes {
    let chain = bsgs(gens, degree);
    assert_eq!(chain.order(), order, "generator set has unexpected order");
    let mut rng = Rng::new(seed);

    struct Found {
        rep: Perm,
        size: u64,
        members: Vec<u128>,
    }
    let mut found: Vec<Found> = Vec::new();
    let mut by_inv: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    let mut covered: u128 = 0;

    fn try_element(
        gens: &[Perm],
        g: &Perm,
        found: &mut Vec<Found>,
        by_inv: &mut HashMap<Vec<u8>, Vec<usize>>,
        covered: &mut u128,
    ) -> bool {
        let inv = invariant(g);
        if let Some(cands) = by_inv.get(&inv) {
            let fp = g.fp();
            for &c in cands {
                if found[c].members.binary_search(&fp).is_ok() {
                    return false;
                }
            }
        }
        let (size, members) = class_members(gens, g);
        *covered += size as u128;
        found.push(Found { rep: g.clone(), size, members });
        by_inv.entry(inv).or_default().push(found.len() - 1);
        true
    }

    try_element(gens, &Perm::identity(degree), &mut found, &mut by_inv, &mut covered);

    let mut stall = 0usize;
    let mut swept = false;
    while covered < order {
        let g = chain.random_element(&mut rng);
        let mut progressed = try_element(gens, &g, &mut found, &mut by_inv, &mut covered);
        // close under powers
        let mut changed = true;
        while changed && covered < order {
            changed = false;
            let reps: Vec<Perm> = found.iter().map(|c| c.rep.clone()).collect();
            for r in reps {
                let ord = r.order();
                for k in 2..ord {
                    if ord % k == 0 && try_element(gens, &r.pow(k), &mut found, &mut by_inv, &mut covered)
                    {
                        changed = true;
                        progressed = true;
                    }
                }
            }
        }
        stall = if progressed { 0 } else { stall + 1 };
        if stall > 600 && !swept {
            swept = true;
            // sweep centralizers of small classes for the remaining tiny ones
            let reps: Vec<(Perm, u64)> =
                found.iter().map(|c| (c.rep.clone(), c.size)).collect();
            for (r, size) in reps {
                if covered >= order {
                    break;
                }
                if r.is_identity() || size > 200_000 {
                    continue;
                }
                let cent = centralizer(gens, &r, order, degree);
                for x in &cent.elements {
                    try_element(gens, x, &mut found, &mut by_inv, &mut covered);
                }
            }
        }
        assert!(stall < 5000, "class discovery stalled at {covered} of {order}");
    }

    // identity first, then by element order, then descending class size,
    // then a deterministic tiebreak on the smallest member fingerprint
    let mut idx: Vec<usize> = (0..found.len()).collect();
    idx.sort_by_key(|&i| (found[i].rep.order(), found[i].size, found[i].members[0]));

    let reps: Vec<Perm> = idx.iter().map(|&i| found[i].rep.clone()).collect();
    let sizes: Vec<u64> = idx.iter().map(|&i| found[i].size).collect();
    let orders: Vec<u64> = idx.iter().map(|&i| found[i].rep.order()).collect();
    let members: Vec<Vec<u128>> = idx.iter().map(|&i| std::mem::take(&mut found[i].members)).collect();

    let mut invariant_map: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for (c, rep) in reps.iter().enumerate() {
        invariant_map.entry(invariant(rep)).or_default().push(c);
    }
    // keep member sets only where invariants collide, dropping the largest
    // class of each colliding family to save memory
    let mut ambiguity_sets: HashMap<usize, Vec<u128>> = HashMap::new();
    for cands in invariant_map.values() {
        if cands.len() <= 1 {
            continue;
        }
        let largest = *cands.iter().max_by_key(|&&c| sizes[c]).expect("nonempty");
        for &c in cands {
            if c != largest {
                ambiguity_sets.insert(c, members[c].clone());
            }
        }
    }

    Classes { gens: gens.to_vec(), order, reps, sizes, orders, invariant_map, ambiguity_sets }
}

// ---------------------------------------------------------------------------
// subgroup helpers
// ---------------------------------------------------------------------------

/// A fully enumerated subgroup with a fast membership set.
pub struct Subgroup {
    pub gens: Vec<Perm>,
    pub elements: Vec<Perm>,
    pub set: HashSet<u128>,
}

impl Subgroup {
    pub fn from_gens(gens: &[Perm], degree: usize, bound: usize) -> Option<Subgroup> {
        let elements = enumerate(gens, degree, bound)?;
        let set = elements.iter().map(|p| p.fp()).collect();
        Some(Subgroup { gens: gens.to_vec(), elements, set })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.set.contains(&g.fp())
    }

    pub fn intersect(&self, other: &Subgroup) -> Vec<Perm> {
        self.elements.iter().filter(|g| other.contains(g)).cloned().collect()
    }

    /// Deterministic fingerprint of the underlying element set.
    pub fn set_fp(&self) -> u128 {
        let mut fps: Vec<u128> = self.elements.iter().map(|p| p.fp()).collect();
        fps.sort_unstable();
        fold_fps(&fps)
    }
}

fn fold_fps(fps: &[u128]) -> u128 {
    let mut h: u128 = 0x6a09e667f3bcc908b2fb1366ea957d3e;
    for f in fps {
        h ^= *f;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Schreier generators of the setwise normalizer of `sub`, via the orbit of
/// its element set under conjugation. Paths are tracked per orbit node.
pub fn normalizer_gens(gens: &[Perm], sub: &Subgroup, cap: usize) -> Vec<Perm> {
    let degree = sub.elements[0].degree();
    let conj_key = |path: &Perm| -> u128 {
        let mut fps: Vec<u128> = sub.elements.iter().map(|x| x.conj(path).fp()).collect();
        fps.sort_unstable();
        fold_fps(&fps)
    };
    let base_key = conj_key(&Perm::identity(degree));
    let mut trans: HashMap<u128, Perm> = HashMap::new();
    trans.insert(base_key, Perm::identity(degree));
    let mut queue: VecDeque<Perm> = VecDeque::new();
    queue.push_back(Perm::identity(degree));
    let mut out: Vec<Perm> = Vec::new();
    let mut out_seen: HashSet<u128> = HashSet::new();
    while let Some(via) = queue.pop_front() {
        for g in gens {
            // (S^via)^g = S^(via o g) under x^p = p^{-1} x p
            let path = via.mul(g);
            let key = conj_key(&path);
            if let std::collections::hash_map::Entry::Vacant(e) = trans.entry(key) {
                e.insert(path.clone());
                queue.push_back(path);
            } else if out.len() < cap {
                let s = path.mul(&trans[&key].inv());
                if !s.is_identity() && out_seen.insert(s.fp()) {
                    out.push(s);
                }
            }
        }
    }
    // elements of the subgroup normalize it too
    out.extend(sub.gens.iter().cloned());
    out
}

/// Greedy Sylow-2 construction inside a fully enumerated ambient subgroup.
pub fn sylow2_of(sub: &Subgroup, degree: usize) -> Subgroup {
    let two_part = {
        let mut n = sub.order();
        let mut t = 1usize;
        while n % 2 == 0 {
            n /= 2;
            t *= 2;
        }
        t
    };
    let mut current: Vec<Perm> = vec![Perm::identity(degree)];
    let mut cur_sub = Subgroup::from_gens(&current, degree, 2).unwrap();
    while cur_sub.order() < two_part {
        let mut extended = false;
        for g in &sub.elements {
            if !g.order().is_power_of_two() || g.is_identity() || cur_sub.contains(g) {
                continue;
            }
            let mut gens2 = current.clone();
            gens2.push(g.clone());
            if let Some(cand) = Subgroup::from_gens(&gens2, degree, two_part) {
                if cand.order().is_power_of_two() && cand.order() > cur_sub.order() {
                    current = gens2;
                    cur_sub = cand;
                    extended = true;
                    break;
                }
            }
        }
        assert!(extended, "could not extend 2-subgroup to a full Sylow 2-subgroup");
    }
    cur_sub
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s5_gens() -> Vec<Perm> {
        vec![Perm(vec![1, 0, 2, 3, 4]), Perm(vec![1, 2, 3, 4, 0])]
    }

    #[test]
    fn bsgs_order_of_s5() {
        let chain = bsgs(&s5_gens(), 5);
        assert_eq!(chain.order(), 120);
        assert!(chain.contains(&Perm(vec![4, 3, 2, 1, 0])));
    }

    #[test]
    fn classes_of_s5() {
        let classes = find_classes(&s5_gens(), 5, 120, 7);
        assert_eq!(classes.class_count(), 7);
        let mut sizes = classes.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 10, 15, 20, 20, 24, 30]);
        // identify a random-ish element
        let g = Perm(vec![1, 0, 3, 2, 4]); // (0 1)(2 3): class of size 15
        let c = classes.identify(&g);
        assert_eq!(classes.sizes[c], 15);
        // power map of the 4-cycles squares into the 2+2 class
        let four = (0..classes.class_count()).find(|&i| classes.orders[i] == 4).unwrap();
        let pm = classes.power_map(2);
        assert_eq!(classes.sizes[pm[four]], 15);
    }

    #[test]
    fn centralizer_of_transposition_in_s5() {
        let g = Perm(vec![1, 0, 2, 3, 4]);
        let cent = centralizer(&s5_gens(), &g, 120, 5);
        assert_eq!(cent.order(), 12);
    }

    #[test]
    fn sylow2_of_s5() {
        let sub = Subgroup::from_gens(&s5_gens(), 5, 200).unwrap();
        let syl = sylow2_of(&sub, 5);
        assert_eq!(syl.order(), 8);
    }

    #[test]
    fn normalizer_of_sylow5_in_s5() {
        let five = Perm(vec![1, 2, 3, 4, 0]);
        let sub = Subgroup::from_gens(&[five], 5, 10).unwrap();
        let ngens = normalizer_gens(&s5_gens(), &sub, 12);
        let n = Subgroup::from_gens(&ngens, 5, 200).unwrap();
        assert_eq!(n.order(), 20);
    }
}
