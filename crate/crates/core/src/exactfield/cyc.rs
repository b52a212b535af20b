//! Elements of the cyclotomic field Q(z_N) in the power basis modulo Phi_N.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduction data for one conductor.
#[derive(Debug)]
pub(crate) struct FieldData {
    pub phi: usize,
    /// `pow[k]` is z^k reduced, for 0 <= k < n.
    pub pow: Vec<Vec<BigInt>>,
}

fn poly_divexact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // both are integer polynomials, den monic, low degree first
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut q = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    q
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    let n = n.max(1);
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = poly_divexact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn build_field(n: u32) -> FieldData {
    let phi_poly = cyclotomic_poly(n);
    let phi = phi_poly.len() - 1;
    let mut pow = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..n {
        pow.push(cur.clone());
        // multiply by z and reduce with the monic relation
        let top = cur[phi - 1].clone();
        let mut next = vec![BigInt::zero(); phi];
        for k in (1..phi).rev() {
            next[k] = cur[k - 1].clone();
        }
        if !top.is_zero() {
            for k in 0..phi {
                next[k] -= &top * &phi_poly[k];
            }
        }
        cur = next;
    }
    FieldData { phi, pow }
}

pub(crate) fn field(n: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().unwrap().get(&n) {
        return f.clone();
    }
    let f = Arc::new(build_field(n));
    cache.write().unwrap().entry(n).or_insert(f).clone()
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    field(n.max(1)).phi
}

/// An exact element of Q(z_N).
///
/// Elements of conductor 1 are plain rationals and combine with any conductor.
#[derive(Clone)]
pub struct CycNum {
    n: u32,
    c: Vec<BigRational>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for CycNum {}

impl std::hash::Hash for CycNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self.as_rational() {
            Some(q) => q.hash(state),
            None => {
                self.n.hash(state);
                self.c.hash(state);
            }
        }
    }
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        let n = n.max(1);
        CycNum {
            n,
            c: vec![BigRational::zero(); totient(n)],
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(BigRational::one(), n)
    }

    pub fn from_rational(q: BigRational, n: u32) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = q;
        z
    }

    pub fn from_int(i: i64, n: u32) -> Self {
        Self::from_rational(rat(i), n)
    }

    pub fn from_frac(p: i64, q: i64, n: u32) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)), n)
    }

    /// z_N^k.
    pub fn root_pow(n: u32, k: i64) -> Self {
        let n = n.max(1);
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        CycNum {
            n,
            c: f.pow[e]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }

    /// z_M^k viewed inside Q(z_N); requires M | N.
    pub fn root_of_unity(m: u32, k: i64, n: u32) -> Result<Self> {
        let m = m.max(1);
        if n % m != 0 {
            return Err(Error::Conductor(format!("z{m} does not embed in Q(z{n})")));
        }
        Ok(Self::root_pow(n, k * (n / m) as i64))
    }

    /// Build from power-basis coefficients; longer inputs are reduced with z^N = 1.
    pub fn from_coeffs(n: u32, coeffs: &[BigRational]) -> Self {
        let n = n.max(1);
        let f = field(n);
        let mut out = vec![BigRational::zero(); f.phi];
        for (k, q) in coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let row = &f.pow[k % n as usize];
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    out[j] += q * BigRational::from_integer(r.clone());
                }
            }
        }
        CycNum { n, c: out }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Re-express inside Q(z_M) for a multiple M of the conductor.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == self.n {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.clone(), m));
        }
        if m % self.n != 0 {
            return Err(Error::Conductor(format!(
                "Q(z{}) does not embed in Q(z{m})",
                self.n
            )));
        }
        let s = (m / self.n) as usize;
        let mut coeffs = vec![BigRational::zero(); s * self.c.len()];
        for (k, q) in self.c.iter().enumerate() {
            coeffs[k * s] = q.clone();
        }
        Ok(Self::from_coeffs(m, &coeffs))
    }

    fn common(&self, other: &Self) -> Result<u32> {
        let (a, b) = (self.n, other.n);
        if a == b || b == 1 {
            Ok(a)
        } else if a == 1 || (b % a == 0 && self.as_rational().is_some()) {
            Ok(b)
        } else if a % b == 0 && other.as_rational().is_some() {
            Ok(a)
        } else {
            Err(Error::Conductor(format!("conductors {a} and {b} differ")))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let n = self.common(other)?;
        let (a, b) = (self.embed(n)?, other.embed(n)?);
        Ok(CycNum {
            n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let n = self.common(other)?;
        let (a, b) = (self.embed(n)?, other.embed(n)?);
        Ok(CycNum {
            n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let n = self.common(other)?;
        if let Some(q) = self.as_rational() {
            let b = other.embed(n)?;
            return Ok(CycNum {
                n,
                c: b.c.iter().map(|y| q * y).collect(),
            });
        }
        if let Some(q) = other.as_rational() {
            let a = self.embed(n)?;
            return Ok(CycNum {
                n,
                c: a.c.iter().map(|x| x * q).collect(),
            });
        }
        let (a, b) = (self.embed(n)?, other.embed(n)?);
        let phi = a.c.len();
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_coeffs(n, &prod))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse by solving the multiplication-matrix system.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip(), self.n));
        }
        let n = self.n;
        let phi = self.c.len();
        // column j = self * z^j
        let cols: Vec<CycNum> = (0..phi)
            .map(|j| self.try_mul(&Self::root_pow(n, j as i64)).unwrap())
            .collect();
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                (0..phi)
                    .map(|j| cols[j].c[i].clone())
                    .chain(std::iter::once(if i == 0 {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }))
                    .collect()
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=phi {
                        let t = &f * &m[col][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        Ok(CycNum {
            n,
            c: (0..phi).map(|i| m[i][phi].clone()).collect(),
        })
    }

    /// Complex conjugation z -> z^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.n as i64;
        let mut acc = Self::zero(self.n);
        for (k, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let t = Self::root_pow(self.n, n - k as i64);
            acc = acc + t.scale(q);
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNum {
            n: self.n,
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.c
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    /// Parse `"3/4 - 2*z^3 + z8 + i"`; `z` is z_N, `zM` is z_M (M | N), `i` is z_4.
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        parse_cyc(s, n.max(1))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(BigRational::new(a, b))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

fn parse_term(t: &str, n: u32) -> Result<CycNum> {
    let bad = || Error::Parse(format!("bad cyclotomic term '{t}'"));
    let mut acc = CycNum::one(n);
    for factor in t.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(bad());
        }
        let (base, exp) = match f.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim().parse::<i64>().map_err(|_| bad())?),
            None => (f, 1),
        };
        let val = if base == "i" {
            CycNum::root_of_unity(4, exp, n)?
        } else if let Some(rest) = base.strip_prefix('z') {
            let m = if rest.is_empty() {
                n
            } else {
                rest.parse::<u32>().map_err(|_| bad())?
            };
            CycNum::root_of_unity(m, exp, n)?
        } else {
            let q = parse_rational(base).ok_or_else(bad)?;
            if exp < 0 {
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                CycNum::from_rational(num_traits::pow(q.recip(), (-exp) as usize), n)
            } else {
                CycNum::from_rational(num_traits::pow(q, exp as usize), n)
            }
        };
        acc = acc.try_mul(&val)?;
    }
    Ok(acc)
}

fn parse_cyc(s: &str, n: u32) -> Result<CycNum> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let mut acc = CycNum::zero(n);
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut depth_start = true;
    let flush = |cur: &mut String, sign: i64, acc: &mut CycNum| -> Result<()> {
        if cur.trim().is_empty() {
            return Err(Error::Parse(format!("bad number '{s}'")));
        }
        let t = parse_term(cur, n)?;
        *acc = if sign > 0 {
            acc.try_add(&t)?
        } else {
            acc.try_sub(&t)?
        };
        cur.clear();
        Ok(())
    };
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let prev_is_exp = cur.trim_end().ends_with('^');
        if (ch == '+' || ch == '-') && !prev_is_exp {
            if depth_start && cur.trim().is_empty() {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                flush(&mut cur, sign, &mut acc)?;
                sign = if ch == '-' { -1 } else { 1 };
                depth_start = true;
                i += 1;
                continue;
            }
        } else if !ch.is_whitespace() {
            cur.push(ch);
            depth_start = false;
        }
        i += 1;
    }
    flush(&mut cur, sign, &mut acc)?;
    Ok(acc)
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::zero(1)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$f(rhs).expect("conductor mismatch")
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs).expect("conductor mismatch")
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$f(rhs).expect("conductor mismatch")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Div<&CycNum> for &CycNum {
    type Output = CycNum;
    fn div(self, rhs: &CycNum) -> CycNum {
        self.try_div(rhs).expect("division failed")
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            c: self.c.into_iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn cyc_arith(a: &CycNum, b: &CycNum, op: ArithOp) -> Result<CycNum> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

/// Rational with small integer parts, for tests and fixtures.
pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}
