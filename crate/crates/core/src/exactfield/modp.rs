//! Reduction modulo a split prime, used for certified rank lower bounds.
//!
//! For a prime p = 1 mod N and a primitive N-th root r mod p, z_N -> r extends
//! to a ring map from the p-integral part of Q(z_N) onto F_p. Minors map to
//! minors, so the rank of the reduced matrix never exceeds the true rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::sparse::SVec;
use super::CycNum;

#[derive(Clone, Debug)]
pub struct ModpField {
    pub p: u64,
    pub n: u32,
    pub root: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ModpField {
    /// The `skip`-th prime below 2^62 that splits completely in Q(z_N).
    pub fn new(n: u32, skip: usize) -> Self {
        let n = n.max(1) as u64;
        let m = n.lcm(&2);
        let mut k = ((1u64 << 62) - 1) / m;
        let mut found = 0;
        loop {
            let p = k * m + 1;
            if is_prime(p) {
                if found == skip {
                    let qs = prime_factors(n);
                    let mut g = 2u64;
                    loop {
                        let r = powmod(g, (p - 1) / n, p);
                        if qs.iter().all(|&q| powmod(r, n / q, p) != 1) {
                            return ModpField {
                                p,
                                n: n as u32,
                                root: r,
                            };
                        }
                        g += 1;
                    }
                }
                found += 1;
            }
            k -= 1;
        }
    }

    fn int_mod(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }

    pub fn inv(&self, a: u64) -> u64 {
        powmod(a, self.p - 2, self.p)
    }

    /// Image of `x`, or None when a denominator vanishes mod p.
    pub fn map(&self, x: &CycNum) -> Option<u64> {
        let x = if x.conductor() == self.n {
            x.clone()
        } else {
            x.embed(self.n).ok()?
        };
        let mut acc = 0u64;
        let mut rk = 1u64;
        for c in x.coeffs() {
            if !c.is_zero() {
                let d = self.int_mod(c.denom());
                if d == 0 {
                    return None;
                }
                let v = mulmod(self.int_mod(c.numer()), self.inv(d), self.p);
                acc = (acc + mulmod(v, rk, self.p)) % self.p;
            }
            rk = mulmod(rk, self.root, self.p);
        }
        Some(acc)
    }

    /// Rank over F_p of a sparse matrix, split into connected blocks first.
    pub fn rank(&self, rows: &[Vec<(usize, u64)>], ncols: usize) -> usize {
        let mut parent: Vec<usize> = (0..ncols).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let nx = parent[y];
                parent[y] = r;
                y = nx;
            }
            r
        }
        for row in rows {
            if let Some(&(c0, _)) = row.first() {
                let a = find(&mut parent, c0);
                for &(c, _) in &row[1..] {
                    let b = find(&mut parent, c);
                    if a != b {
                        parent[b] = a;
                    }
                }
            }
        }
        let mut blocks: std::collections::HashMap<usize, Vec<usize>> =
            std::collections::HashMap::new();
        for (i, row) in rows.iter().enumerate() {
            if let Some(&(c0, _)) = row.first() {
                let r = find(&mut parent, c0);
                blocks.entry(r).or_default().push(i);
            }
        }
        let mut total = 0;
        for (_, rs) in blocks {
            let mut cols: Vec<usize> = rs
                .iter()
                .flat_map(|&i| rows[i].iter().map(|e| e.0))
                .collect();
            cols.sort_unstable();
            cols.dedup();
            let idx: std::collections::HashMap<usize, usize> =
                cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            let w = cols.len();
            let mut dense: Vec<Vec<u64>> = rs
                .iter()
                .map(|&i| {
                    let mut v = vec![0u64; w];
                    for &(c, x) in &rows[i] {
                        v[idx[&c]] = (v[idx[&c]] + x) % self.p;
                    }
                    v
                })
                .collect();
            total += dense_rank(&mut dense, w, self.p);
        }
        total
    }

    /// Certified lower bound for the rank of an exact sparse matrix. Returns None
    /// if some denominator is divisible by p.
    pub fn rank_lower_bound(&self, rows: &[SVec], ncols: usize) -> Option<usize> {
        let mut mapped = Vec::with_capacity(rows.len());
        for r in rows {
            let mut v = Vec::with_capacity(r.len());
            for (c, x) in r {
                let m = self.map(x)?;
                if m != 0 {
                    v.push((*c, m));
                }
            }
            mapped.push(v);
        }
        Some(self.rank(&mapped, ncols))
    }
}

fn dense_rank(a: &mut [Vec<u64>], w: usize, p: u64) -> usize {
    let m = a.len();
    let mut r = 0;
    for col in 0..w {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = powmod(a[r][col], p - 2, p);
        for j in col..w {
            a[r][j] = mulmod(a[r][j], inv, p);
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pr = &top[r];
        for row in bottom.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..w {
                if pr[j] != 0 {
                    row[j] = (row[j] + p - mulmod(f, pr[j], p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Certified rank lower bound, retrying with further primes on bad reduction.
pub fn rank_lower_bound(rows: &[SVec], ncols: usize, n: u32) -> usize {
    for skip in 0..8 {
        let f = ModpField::new(n, skip);
        if let Some(r) = f.rank_lower_bound(rows, ncols) {
            return r;
        }
    }
    0
}
