//! Brute-force oracle for the fixed-point definition of the Lefschetz
//! character: build the coset complex of a simplex of subgroups of an
//! explicit permutation group, and read off reduced Euler characteristics
//! of fixed subcomplexes, class by class.
//!
//! This route is deliberately independent of the algebraic route in
//! [`crate::lefschetz`]; agreement of the two is a bundled acceptance check.
//! Group sizes are bounded; sporadic-scale groups are out of reach by design.

use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("enumeration bound {bound} exceeded while {context}")]
    BoundExceeded { bound: usize, context: String },
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error("cycle notation parse error: {0}")]
    Parse(String),
}

/// A permutation of {0, .., degree-1}, stored by images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    pub images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self, GeomError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(GeomError::BadPermutation(format!("images {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// (self * other)(x) = self(other(x)); composition applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = other.images.iter().map(|&x| self.images[x as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn apply(&self, x: u16) -> u16 {
        self.images[x as usize]
    }

    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0u64;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            ord = num::integer::lcm(ord, len);
        }
        ord
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i as u16 == x).count()
    }

    /// Parse disjoint cycle notation over 0-based points, e.g. "(0 1 2)(3 4)".
    /// "()" denotes the identity. Points may be separated by spaces or commas.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self, GeomError> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let s = s.trim();
        if s.is_empty() {
            return Err(GeomError::Parse("empty cycle string".to_string()));
        }
        let mut chars = s.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(GeomError::Parse(format!("expected '(' in '{s}'")));
            }
            chars.next();
            let mut cycle: Vec<u16> = Vec::new();
            let mut num = String::new();
            loop {
                match chars.next() {
                    Some(d) if d.is_ascii_digit() => num.push(d),
                    Some(d) if d.is_whitespace() || d == ',' => {
                        if !num.is_empty() {
                            cycle.push(parse_point(&num, degree)?);
                            num.clear();
                        }
                    }
                    Some(')') => {
                        if !num.is_empty() {
                            cycle.push(parse_point(&num, degree)?);
                            num.clear();
                        }
                        break;
                    }
                    Some(d) => return Err(GeomError::Parse(format!("unexpected '{d}'"))),
                    None => return Err(GeomError::Parse("unterminated cycle".to_string())),
                }
            }
            for w in 0..cycle.len() {
                let from = cycle[w] as usize;
                let to = cycle[(w + 1) % cycle.len()];
                if images[from] != from as u16 {
                    return Err(GeomError::Parse(format!("point {from} repeated")));
                }
                images[from] = to;
            }
            // undo the no-op writes for fixed points in 1-cycles
            if cycle.len() == 1 {
                images[cycle[0] as usize] = cycle[0];
            }
        }
        Permutation::from_images(images)
    }

    /// Disjoint cycle notation; identity prints as "()".
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for i in 0..n {
            if seen[i] || self.images[i] as usize == i {
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
                j = self.images[j] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn parse_point(s: &str, degree: usize) -> Result<u16, GeomError> {
    let v: usize = s.parse().map_err(|_| GeomError::Parse(format!("bad point '{s}'")))?;
    if v >= degree {
        return Err(GeomError::Parse(format!("point {v} out of range for degree {degree}")));
    }
    Ok(v as u16)
}

/// An explicit permutation group with named subgroup generator lists, one
/// per vertex type of the coset geometry.
#[derive(Debug, Clone)]
pub struct PermGroupSpec {
    pub id: String,
    pub degree: usize,
    pub group_gens: Vec<Permutation>,
    pub subgroups: Vec<(String, Vec<Permutation>)>,
    /// optional class representatives (name, element); identity first
    pub class_reps: Option<Vec<(String, Permutation)>>,
}

pub const DEFAULT_BOUND: usize = 10_000_000;

/// Closure of a generator list, BFS over right multiplication.
pub fn enumerate_group(
    gens: &[Permutation],
    degree: usize,
    bound: usize,
    context: &str,
) -> Result<Vec<Permutation>, GeomError> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue: VecDeque<Permutation> = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    let mut out = Vec::new();
    while let Some(g) = queue.pop_front() {
        out.push(g.clone());
        for h in gens {
            let gh = g.compose(h);
            if seen.insert(gh.clone()) {
                if seen.len() > bound {
                    return Err(GeomError::BoundExceeded { bound, context: context.to_string() });
                }
                queue.push_back(gh);
            }
        }
    }
    Ok(out)
}

/// A coset of a subgroup, identified by its lexicographically minimal member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coset {
    pub type_index: usize,
    pub rep: Permutation,
}

/// Coset complex: vertices are cosets g H_i, and a set of pairwise
/// distinct-type cosets spans a simplex iff the cosets intersect in a
/// common group element.
#[derive(Debug)]
pub struct CosetComplex {
    pub vertices: Vec<Coset>,
    /// simplices by dimension d >= 1, as sorted vertex-index tuples;
    /// dimension 0 is `vertices` itself
    pub simplices: Vec<Vec<Vec<usize>>>,
    subgroup_elements: Vec<Vec<Permutation>>,
    subgroup_sets: Vec<HashSet<Permutation>>,
}

impl CosetComplex {
    /// f-vector (f_0, f_1, ...): counts of simplices per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![self.vertices.len()];
        f.extend(self.simplices.iter().map(|s| s.len()));
        f
    }

    /// Reduced Euler characteristic -1 + f_0 - f_1 + f_2 - ...
    pub fn reduced_euler(&self) -> i64 {
        let mut chi = -1i64;
        for (d, fd) in self.f_vector().iter().enumerate() {
            let term = *fd as i64;
            chi += if d % 2 == 0 { term } else { -term };
        }
        chi
    }
}

fn canonical_rep(g: &Permutation, subgroup: &[Permutation]) -> Permutation {
    subgroup
        .iter()
        .map(|h| g.compose(h))
        .min()
        .expect("subgroup is nonempty")
}

/// All cosets of subgroup `type_index`, canonically represented, via orbit
/// of the identity coset under left multiplication by group generators.
pub fn enumerate_cosets(
    spec: &PermGroupSpec,
    type_index: usize,
    bound: usize,
) -> Result<Vec<Coset>, GeomError> {
    let (name, sgens) = &spec.subgroups[type_index];
    let h = enumerate_group(sgens, spec.degree, bound, &format!("enumerating subgroup {name}"))?;
    let start = canonical_rep(&Permutation::identity(spec.degree), &h);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(rep) = queue.pop_front() {
        out.push(Coset { type_index, rep: rep.clone() });
        for g in &spec.group_gens {
            let moved = canonical_rep(&g.compose(&rep), &h);
            if seen.insert(moved.clone()) {
                if seen.len() > bound {
                    return Err(GeomError::BoundExceeded {
                        bound,
                        context: format!("enumerating cosets of {name}"),
                    });
                }
                queue.push_back(moved);
            }
        }
    }
    out.sort_by(|a, b| a.rep.cmp(&b.rep));
    Ok(out)
}

/// Build the full coset complex for all subgroup types in the spec.
pub fn build_complex(spec: &PermGroupSpec, bound: usize) -> Result<CosetComplex, GeomError> {
    let ntypes = spec.subgroups.len();
    let mut subgroup_elements = Vec::with_capacity(ntypes);
    let mut subgroup_sets = Vec::with_capacity(ntypes);
    for (name, sgens) in &spec.subgroups {
        let h =
            enumerate_group(sgens, spec.degree, bound, &format!("enumerating subgroup {name}"))?;
        let set: HashSet<Permutation> = h.iter().cloned().collect();
        subgroup_elements.push(h);
        subgroup_sets.push(set);
    }
    let mut vertices = Vec::new();
    for t in 0..ntypes {
        vertices.extend(enumerate_cosets(spec, t, bound)?);
    }

    // intersection of two cosets g1 H1, g2 H2 as an explicit element list
    let coset_intersection = |a: &Coset, b: &Coset| -> Vec<Permutation> {
        let ha = &subgroup_elements[a.type_index];
        let sb = &subgroup_sets[b.type_index];
        let b_inv = b.rep.inverse();
        let mut out = Vec::new();
        for h in ha {
            let x = a.rep.compose(h);
            if sb.contains(&b_inv.compose(&x)) {
                out.push(x);
            }
        }
        out
    };

    // edges
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            if vertices[i].type_index == vertices[j].type_index {
                continue;
            }
            if !coset_intersection(&vertices[i], &vertices[j]).is_empty() {
                edges.push(vec![i, j]);
            }
        }
    }
    if ntypes >= 2 {
        simplices.push(edges.clone());
    }

    // higher simplices: extend each d-simplex by a vertex of a new type and
    // demand a common element in all cosets
    let mut current = edges;
    for _dim in 2..ntypes {
        let mut next: Vec<Vec<usize>> = Vec::new();
        for simp in &current {
            let types_used: HashSet<usize> =
                simp.iter().map(|&v| vertices[v].type_index).collect();
            let last = *simp.last().unwrap();
            for v in (last + 1)..vertices.len() {
                if types_used.contains(&vertices[v].type_index) {
                    continue;
                }
                // common intersection: start from the first pair, filter down
                let mut common = coset_intersection(&vertices[simp[0]], &vertices[v]);
                if common.is_empty() {
                    continue;
                }
                for &u in &simp[1..] {
                    let su = &subgroup_sets[vertices[u].type_index];
                    let u_inv = vertices[u].rep.inverse();
                    common.retain(|x| su.contains(&u_inv.compose(x)));
                    if common.is_empty() {
                        break;
                    }
                }
                if !common.is_empty() {
                    let mut s = simp.clone();
                    s.push(v);
                    next.push(s);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        simplices.push(next.clone());
        current = next;
    }

    Ok(CosetComplex { vertices, simplices, subgroup_elements, subgroup_sets })
}

/// Reduced Euler characteristic of the subcomplex fixed by `g`: a coset
/// x H is fixed iff g x H = x H, and a simplex survives iff all its
/// vertices do (types are preserved, so setwise fixed means vertexwise).
pub fn fixed_subcomplex_euler(complex: &CosetComplex, g: &Permutation) -> i64 {
    let fixed: Vec<bool> = complex
        .vertices
        .iter()
        .map(|c| {
            let moved = g.compose(&c.rep);
            let inv = c.rep.inverse();
            complex.subgroup_sets[c.type_index].contains(&inv.compose(&moved))
        })
        .collect();
    let mut chi: i64 = -1;
    chi += fixed.iter().filter(|&&b| b).count() as i64;
    for (d, level) in complex.simplices.iter().enumerate() {
        let count = level.iter().filter(|s| s.iter().all(|&v| fixed[v])).count() as i64;
        chi += if d % 2 == 0 { -count } else { count };
    }
    chi
}

/// Conjugacy classes of the (fully enumerated) group, as (representative,
/// class size) pairs, identity class first, then by element order and
/// descending class size. Used when a spec does not supply class reps.
pub fn conjugacy_classes(
    gens: &[Permutation],
    degree: usize,
    bound: usize,
) -> Result<Vec<(Permutation, u64)>, GeomError> {
    let all = enumerate_group(gens, degree, bound, "enumerating group for classes")?;
    let mut remaining: HashSet<Permutation> = all.iter().cloned().collect();
    let mut classes = Vec::new();
    let inv_gens: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();
    for g in &all {
        if !remaining.contains(g) {
            continue;
        }
        // conjugation orbit BFS
        let mut orbit: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        orbit.insert(g.clone());
        queue.push_back(g.clone());
        while let Some(x) = queue.pop_front() {
            for (gen, gen_inv) in gens.iter().zip(&inv_gens) {
                let y = gen_inv.compose(&x).compose(gen);
                if orbit.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        for x in &orbit {
            remaining.remove(x);
        }
        classes.push((g.clone(), orbit.len() as u64));
    }
    classes.sort_by_key(|(rep, size)| (rep.order(), u64::MAX - size, rep.clone()));
    Ok(classes)
}

/// The Lefschetz character by brute force: one reduced Euler characteristic
/// of a fixed subcomplex per conjugacy class. Returns (class name, value).
pub fn lefschetz_by_fixed_points(
    spec: &PermGroupSpec,
    bound: usize,
) -> Result<Vec<(String, i64)>, GeomError> {
    let complex = build_complex(spec, bound)?;
    let reps: Vec<(String, Permutation)> = match &spec.class_reps {
        Some(reps) => reps.clone(),
        None => conjugacy_classes(&spec.group_gens, spec.degree, bound)?
            .into_iter()
            .enumerate()
            .map(|(i, (rep, _))| (format!("c{}", i + 1), rep))
            .collect(),
    };
    Ok(reps
        .into_iter()
        .map(|(name, g)| {
            let chi = fixed_subcomplex_euler(&complex, &g);
            (name, chi)
        })
        .collect())
}

/// Sanity accessor used in tests: |H_i| for each declared subgroup.
pub fn subgroup_orders(complex: &CosetComplex) -> Vec<usize> {
    complex.subgroup_elements.iter().map(|h| h.len()).collect()
}

// ---------------------------------------------------------------------------
// explicit small groups used by tests and the toy bundle
// ---------------------------------------------------------------------------

/// GL(3,2) acting on the 7 nonzero vectors of F_2^3 (Fano plane points),
/// numbered 1..=7 as binary b2 b1 b0, shifted to 0-based points 0..=6.
pub fn gl32_spec() -> PermGroupSpec {
    // generators: the cyclic Singer shift and a transvection
    // point v in 1..=7 encodes the vector (v2, v1, v0)
    let mat_apply = |m: [[u8; 3]; 3], v: u8| -> u8 {
        let x = [(v >> 2) & 1, (v >> 1) & 1, v & 1];
        let mut y = 0u8;
        for r in 0..3 {
            let bit = (0..3).map(|c| m[r][c] & x[c]).fold(0, |a, b| a ^ b);
            y = (y << 1) | bit;
        }
        y
    };
    let to_perm = |m: [[u8; 3]; 3]| -> Permutation {
        let images = (1u8..=7).map(|v| (mat_apply(m, v) - 1) as u16).collect();
        Permutation::from_images(images).expect("invertible matrix gives a permutation")
    };
    // companion matrix of x^3 + x + 1 and an elementary transvection
    let a = to_perm([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
    let b = to_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    // point stabilizer of <e2> and line stabilizer of <e1, e2>: generated by
    // matrices fixing those subspaces
    let p1 = to_perm([[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
    let p2 = to_perm([[1, 0, 0], [0, 1, 1], [0, 0, 1]]);
    let p3 = to_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    let p4 = to_perm([[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
    let l1 = to_perm([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    let l2 = to_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    let l3 = to_perm([[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
    let l4 = to_perm([[1, 0, 0], [0, 1, 1], [0, 0, 1]]);
    PermGroupSpec {
        id: "GL32-toy".to_string(),
        degree: 7,
        group_gens: vec![a, b],
        subgroups: vec![
            ("P1".to_string(), vec![p1, p2, p3, p4]),
            ("P2".to_string(), vec![l1, l2, l3, l4]),
        ],
        class_reps: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_spec() -> PermGroupSpec {
        let g1 = Permutation::parse_cycles(3, "(0 1)").unwrap();
        let g2 = Permutation::parse_cycles(3, "(0 1 2)").unwrap();
        PermGroupSpec {
            id: "S3-geom".to_string(),
            degree: 3,
            group_gens: vec![g1.clone(), g2],
            subgroups: vec![("H".to_string(), vec![g1])],
            class_reps: None,
        }
    }

    #[test]
    fn cycle_notation_round_trip() {
        for s in ["()", "(0 1)", "(0 1 2)(3 4)", "(2 5)(3 7)(4 8)(6 9)"] {
            let p = Permutation::parse_cycles(10, s).unwrap();
            assert_eq!(p.cycle_string(), s);
        }
        assert!(Permutation::parse_cycles(3, "(0 5)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 1").is_err());
    }

    #[test]
    fn s3_has_three_cosets_of_point_stabilizer() {
        let spec = s3_spec();
        let cosets = enumerate_cosets(&spec, 0, DEFAULT_BOUND).unwrap();
        assert_eq!(cosets.len(), 3);
    }

    #[test]
    fn single_type_complex_has_no_edges() {
        let spec = s3_spec();
        let complex = build_complex(&spec, DEFAULT_BOUND).unwrap();
        assert_eq!(complex.f_vector(), vec![3]);
    }

    #[test]
    fn s3_lefschetz_is_permutation_character_minus_one() {
        let spec = s3_spec();
        let values = lefschetz_by_fixed_points(&spec, DEFAULT_BOUND).unwrap();
        let got: Vec<i64> = values.iter().map(|(_, v)| *v).collect();
        // fixed points of S3 on 3 points minus 1: (2, 0, -1)
        assert_eq!(got, vec![2, 0, -1]);
    }

    #[test]
    fn gl32_cosets_and_f_vector() {
        let spec = gl32_spec();
        let group = enumerate_group(&spec.group_gens, 7, DEFAULT_BOUND, "GL32").unwrap();
        assert_eq!(group.len(), 168);
        let points = enumerate_cosets(&spec, 0, DEFAULT_BOUND).unwrap();
        let lines = enumerate_cosets(&spec, 1, DEFAULT_BOUND).unwrap();
        assert_eq!((points.len(), lines.len()), (7, 7));
        let complex = build_complex(&spec, DEFAULT_BOUND).unwrap();
        assert_eq!(subgroup_orders(&complex), vec![24, 24]);
        // Fano incidence graph: 14 vertices, 21 flags
        assert_eq!(complex.f_vector(), vec![14, 21]);
        assert_eq!(complex.reduced_euler(), -8);
    }

    #[test]
    fn gl32_fixed_point_values() {
        let spec = gl32_spec();
        let complex = build_complex(&spec, DEFAULT_BOUND).unwrap();
        let classes = conjugacy_classes(&spec.group_gens, 7, DEFAULT_BOUND).unwrap();
        let sizes: Vec<u64> = classes.iter().map(|(_, s)| *s).collect();
        assert_eq!(sizes.iter().sum::<u64>(), 168);
        for (rep, _) in &classes {
            let chi = fixed_subcomplex_euler(&complex, rep);
            match rep.order() {
                1 => assert_eq!(chi, -8),
                2 | 4 => assert_eq!(chi, 0, "2-element fixed complex must be acyclic-like"),
                _ => {}
            }
        }
    }

    #[test]
    fn s4_two_subgroup_geometry() {
        // S4 with S3 (point stabilizer of 3) and D8 = <(0 1 2 3), (0 2)>
        let g1 = Permutation::parse_cycles(4, "(0 1)").unwrap();
        let g2 = Permutation::parse_cycles(4, "(0 1 2 3)").unwrap();
        let s3a = Permutation::parse_cycles(4, "(0 1)").unwrap();
        let s3b = Permutation::parse_cycles(4, "(0 1 2)").unwrap();
        let d8a = Permutation::parse_cycles(4, "(0 1 2 3)").unwrap();
        let d8b = Permutation::parse_cycles(4, "(0 2)").unwrap();
        let spec = PermGroupSpec {
            id: "S4-geom".to_string(),
            degree: 4,
            group_gens: vec![g1, g2],
            subgroups: vec![
                ("S3".to_string(), vec![s3a, s3b]),
                ("D8".to_string(), vec![d8a, d8b]),
            ],
            class_reps: None,
        };
        let complex = build_complex(&spec, DEFAULT_BOUND).unwrap();
        // 4 + 3 vertices; edges counted by exhaustive intersection check
        let f = complex.f_vector();
        assert_eq!(f[0], 7);
        let mut expected_edges = 0;
        for a in &complex.vertices {
            for b in &complex.vertices {
                if a.type_index == 0 && b.type_index == 1 {
                    let ha = &complex.subgroup_elements[0];
                    let sb = &complex.subgroup_sets[1];
                    let binv = b.rep.inverse();
                    if ha.iter().any(|h| sb.contains(&binv.compose(&a.rep.compose(h)))) {
                        expected_edges += 1;
                    }
                }
            }
        }
        assert_eq!(f[1], expected_edges);
    }
}
