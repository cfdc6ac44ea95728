//! GF(2^m) arithmetic for m <= 63, backing the 2-modular block distribution
//! via central characters reduced at a place over 2.

#[derive(Clone, Copy)]
pub struct Gf2m {
    pub m: u32,
    /// irreducible modulus as a bitmask including the x^m term
    pub modulus: u128,
}

impl Gf2m {
    pub fn new(m: u32) -> Gf2m {
        assert!(m >= 1 && m <= 63);
        // scan for an irreducible polynomial of degree m
        let mut f: u128 = (1u128 << m) | 1;
        loop {
            if is_irreducible(f, m) {
                return Gf2m { m, modulus: f };
            }
            f += 2;
            assert!(f < (1u128 << (m + 1)), "no irreducible polynomial found");
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let mut acc: u128 = 0;
        let aa = a as u128;
        for i in 0..64 {
            if (b >> i) & 1 == 1 {
                acc ^= aa << i;
            }
        }
        self.reduce(acc)
    }

    fn reduce(&self, mut x: u128) -> u64 {
        let m = self.m;
        let mut d = 127 - x.leading_zeros();
        while x >> m != 0 {
            if d >= m {
                x ^= self.modulus << (d - m);
            }
            if x == 0 {
                break;
            }
            d = 127 - x.leading_zeros();
        }
        x as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// An element of multiplicative order exactly n (n must divide 2^m - 1).
    pub fn element_of_order(&self, n: u64) -> u64 {
        let group = (1u128 << self.m) - 1;
        let group = group as u64;
        assert_eq!(group % n, 0, "order {n} does not divide 2^{}-1", self.m);
        let primes = prime_divisors(n);
        let mut g = 2u64;
        loop {
            let a = self.pow(g, group / n);
            if a != 0 && primes.iter().all(|&q| self.pow(a, n / q) != 1) {
                return a;
            }
            g += 1;
            assert!(g < 1 << 16, "no element of order {n} found");
        }
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
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

fn poly_mulmod2(a: u128, b: u128, f: u128, deg: u32) -> u128 {
    let mut acc: u128 = 0;
    for i in 0..128 {
        if (b >> i) & 1 == 1 {
            acc ^= a << i;
        }
        if b >> (i + 1) == 0 {
            break;
        }
    }
    // reduce acc mod f
    let mut x = acc;
    while x >> deg != 0 {
        let d = 127 - x.leading_zeros();
        x ^= f << (d - deg);
    }
    x
}

fn poly_powmod2(mut base: u128, mut e: u128, f: u128, deg: u32) -> u128 {
    let mut acc: u128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod2(acc, base, f, deg);
        }
        base = poly_mulmod2(base, base, f, deg);
        e >>= 1;
    }
    acc
}

fn poly_gcd2(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        // a mod b
        let db = 127 - b.leading_zeros();
        while a != 0 {
            let da = 127 - a.leading_zeros();
            if da < db {
                break;
            }
            a ^= b << (da - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Rabin irreducibility test over F2.
fn is_irreducible(f: u128, m: u32) -> bool {
    let x0 = poly_mulmod2(2, 1, f, m); // x reduced mod f (matters for m = 1)
    // x^(2^m) = x mod f
    let mut x = x0;
    for _ in 0..m {
        x = poly_mulmod2(x, x, f, m);
    }
    if x != x0 {
        return false;
    }
    for q in prime_divisors(m as u64) {
        let k = m / q as u32;
        let mut y = x0;
        for _ in 0..k {
            y = poly_mulmod2(y, y, f, m);
        }
        // gcd(x^(2^k) - x, f) must be 1
        if poly_gcd2(y ^ x0, f) != 1 {
            return false;
        }
    }
    true
}

// silence the dead-code alias
#[allow(unused)]
fn _use(f: u128, m: u32) -> u128 {
    poly_powmod2(2, 1, f, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for m in [1u32, 4, 12, 20, 60] {
            let f = Gf2m::new(m);
            let a = 0b1011u64 & ((1 << m) - 1).max(1);
            let b = 0b1101u64 & ((1 << m) - 1).max(1);
            let ord = if m == 1 { 1 } else { (1u128 << m) - 1 };
            if a != 0 {
                assert_eq!(f.pow(a, ord as u64), 1, "Fermat at m={m}");
            }
            assert_eq!(f.mul(a, b), f.mul(b, a));
        }
    }

    #[test]
    fn order_elements() {
        // 2^12 - 1 = 4095 = 3^2 * 5 * 7 * 13: orders 105 and 15 exist
        let f = Gf2m::new(12);
        let a = f.element_of_order(105);
        assert_eq!(f.pow(a, 105), 1);
        assert_ne!(f.pow(a, 105 / 3), 1);
        assert_ne!(f.pow(a, 105 / 5), 1);
        assert_ne!(f.pow(a, 105 / 7), 1);
        // 2^60 - 1 is divisible by 3 * 5^2 * 7 * 11 * 13 * 31 * 41 * 61 * ...
        let f60 = Gf2m::new(60);
        let b = f60.element_of_order(1155);
        assert_eq!(f60.pow(b, 1155), 1);
        for q in [3, 5, 7, 11] {
            assert_ne!(f60.pow(b, 1155 / q), 1, "order check at {q}");
        }
    }
}
