//! Arithmetic mod a word-sized prime, with the dense linear algebra and
//! polynomial routines the character-table computation needs.

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let d = (n - 1) >> (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut r = d;
        while r != n - 1 {
            x = mul(x, x, n);
            r <<= 1;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime p = 1 mod e with p > floor.
pub fn find_prime(e: u64, floor: u64) -> u64 {
    let mut k = floor / e + 1;
    loop {
        let p = k * e + 1;
        if p > floor && is_prime(p) {
            return p;
        }
        k += 1;
    }
}

fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A generator of the multiplicative group mod p.
pub fn primitive_root(p: u64) -> u64 {
    let factors = factorize(p - 1);
    'outer: for g in 2..p {
        for &q in &factors {
            if powm(g, (p - 1) / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root found")
}

// ---------------------------------------------------------------------------
// dense matrices
// ---------------------------------------------------------------------------

pub type Mat = Vec<Vec<u64>>;

pub fn matmul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            let av = a[i][t];
            for j in 0..m {
                out[i][j] = add(out[i][j], mul(av, b[t][j], p), p);
            }
        }
    }
    out
}

/// Row-reduce in place; returns pivot columns.
pub fn rref(a: &mut Mat, p: u64) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        if let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) {
            a.swap(r, pr);
            let iv = inv(a[r][c], p);
            for j in 0..cols {
                a[r][j] = mul(a[r][j], iv, p);
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let t = mul(f, a[r][j], p);
                        a[i][j] = sub(a[i][j], t, p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    pivots
}

/// Basis of the (right) nullspace of a, as column vectors.
pub fn nullspace(a: &Mat, p: u64) -> Vec<Vec<u64>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m = a.clone();
    let pivots = rref(&mut m, p);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = sub(0, m[r][free], p);
        }
        out.push(v);
    }
    out
}

/// Determinant by Gaussian elimination.
pub fn det(a: &Mat, p: u64) -> u64 {
    let n = a.len();
    let mut m = a.clone();
    let mut d = 1u64;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(c, pr);
            d = sub(0, d, p);
        }
        d = mul(d, m[c][c], p);
        let iv = inv(m[c][c], p);
        for i in (c + 1)..n {
            if m[i][c] != 0 {
                let f = mul(m[i][c], iv, p);
                for j in c..n {
                    let t = mul(f, m[c][j], p);
                    m[i][j] = sub(m[i][j], t, p);
                }
            }
        }
    }
    d
}

/// Characteristic polynomial det(xI - A) by interpolation at n+1 points;
/// coefficients from constant term up.
pub fn charpoly(a: &Mat, p: u64) -> Vec<u64> {
    let n = a.len();
    let pts: Vec<u64> = (0..=n as u64).collect();
    let vals: Vec<u64> = pts
        .iter()
        .map(|&x| {
            let mut m = a.clone();
            for i in 0..n {
                for j in 0..n {
                    m[i][j] = sub(0, m[i][j], p);
                    if i == j {
                        m[i][j] = add(m[i][j], x, p);
                    }
                }
            }
            det(&m, p)
        })
        .collect();
    lagrange(&pts, &vals, p)
}

/// Interpolating polynomial through the given points, dense coefficients.
fn lagrange(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut acc = vec![0u64; n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut num = vec![0u64; n];
        num[0] = 1;
        let mut deg = 0;
        let mut denom = 1u64;
        for j in 0..n {
            if j == i {
                continue;
            }
            // multiply num by (x - x_j)
            let mut next = vec![0u64; n];
            for d in 0..=deg {
                next[d + 1] = add(next[d + 1], num[d], p);
                next[d] = add(next[d], mul(sub(0, xs[j], p), num[d], p), p);
            }
            num = next;
            deg += 1;
            denom = mul(denom, sub(xs[i], xs[j], p), p);
        }
        let f = mul(ys[i], inv(denom, p), p);
        for d in 0..n {
            acc[d] = add(acc[d], mul(num[d], f, p), p);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// polynomials over F_p (dense, low degree)
// ---------------------------------------------------------------------------

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

pub fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv(b[db], p);
    while r.len() - 1 >= db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let f = mul(r[dr], lead_inv, p);
        for i in 0..=db {
            let t = mul(f, b[i], p);
            r[dr - db + i] = sub(r[dr - db + i], t, p);
        }
        poly_trim(&mut r);
        if dr == db {
            break;
        }
    }
    r
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    // monic
    let lead = *x.last().unwrap();
    if lead != 0 && lead != 1 {
        let iv = inv(lead, p);
        for c in x.iter_mut() {
            *c = mul(*c, iv, p);
        }
    }
    x
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = add(prod[i + j], mul(ai, bj, p), p);
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

/// All roots in F_p of a polynomial (with multiplicity collapsed), via the
/// x^p - x split and Cantor-Zassenhaus refinement.
pub fn roots(f: &[u64], p: u64, rng_seed: &mut u64) -> Vec<u64> {
    let mut f = f.to_vec();
    poly_trim(&mut f);
    if f.len() == 1 {
        return Vec::new();
    }
    // linear-factor part: gcd(x^p - x, f)
    let xp = poly_powmod(&[0, 1], p, &f, p);
    let mut xp_minus_x = xp;
    if xp_minus_x.len() < 2 {
        xp_minus_x.resize(2, 0);
    }
    xp_minus_x[1] = sub(xp_minus_x[1], 1, p);
    let lin = poly_gcd(&xp_minus_x, &f, p);
    let mut out = Vec::new();
    let mut stack = vec![lin];
    while let Some(g) = stack.pop() {
        let deg = g.len() - 1;
        if deg == 0 {
            continue;
        }
        if deg == 1 {
            // root of c0 + c1 x
            out.push(mul(sub(0, g[0], p), inv(g[1], p), p));
            continue;
        }
        // random split: gcd((x + a)^((p-1)/2) - 1, g)
        loop {
            *rng_seed = rng_seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (*rng_seed >> 16) % p;
            let mut h = poly_powmod(&[a, 1], (p - 1) / 2, &g, p);
            if h.is_empty() {
                h = vec![0];
            }
            h[0] = sub(h[0], 1, p);
            let d = poly_gcd(&h, &g, p);
            let dd = d.len() - 1;
            if dd > 0 && dd < deg {
                let q = poly_divide_exact(&g, &d, p);
                stack.push(d);
                stack.push(q);
                break;
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn poly_divide_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let da = r.len() - 1;
    let mut q = vec![0u64; da - db + 1];
    let lead_inv = inv(b[db], p);
    for d in (0..=(da - db)).rev() {
        let f = mul(r[d + db], lead_inv, p);
        q[d] = f;
        if f != 0 {
            for i in 0..=db {
                let t = mul(f, b[i], p);
                r[d + i] = sub(r[d + i], t, p);
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots_of_unity() {
        let p = find_prime(12, 100);
        assert!(is_prime(p));
        assert_eq!((p - 1) % 12, 0);
        let z = primitive_root(p);
        assert_eq!(powm(z, p - 1, p), 1);
        assert_ne!(powm(z, (p - 1) / 2, p), 1);
    }

    #[test]
    fn charpoly_and_roots() {
        let p = 10007;
        // companion-ish matrix with eigenvalues 2, 3
        let a = vec![vec![2, 1], vec![0, 3]];
        let cp = charpoly(&a, p);
        // (x-2)(x-3) = 6 - 5x + x^2
        assert_eq!(cp, vec![6, p - 5, 1]);
        let mut seed = 42u64;
        assert_eq!(roots(&cp, p, &mut seed), vec![2, 3]);
    }

    #[test]
    fn nullspace_dimension() {
        let p = 101;
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(&a, p);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = add(add(mul(1, v[0], p), mul(2, v[1], p), p), mul(3, v[2], p), p);
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn roots_of_unity_poly() {
        // x^4 - 1 over F_13: roots 1, 5, 8, 12
        let p = 13;
        let f = vec![p - 1, 0, 0, 0, 1];
        let mut seed = 7;
        assert_eq!(roots(&f, p, &mut seed), vec![1, 5, 8, 12]);
    }
}
