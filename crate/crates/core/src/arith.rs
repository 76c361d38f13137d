//! Signs of permutations, Jacobi symbols, and the signs of multiplication
//! maps on `Z/n` and on its quotient by negation.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub enum Sign {
    Plus,
    Minus,
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.to_i64()
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;

    fn try_from(x: i64) -> Result<Sign> {
        Sign::from_i64(x).ok_or_else(|| Error::parse("sign", &x.to_string(), "expected 1 or -1"))
    }
}

impl Sign {
    /// `(-1)^k`.
    pub fn from_parity(k: u64) -> Sign {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_i64(x: i64) -> Option<Sign> {
        match x {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, e: u64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::from_parity(e),
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, Mul::mul)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(Error::parse("sign", other, "expected + or -")),
        }
    }
}

/// A residue class modulo `n`, stored by its least nonnegative representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    n: u64,
    value: u64,
}

impl Residue {
    pub fn new(value: i64, n: u64) -> Result<Residue> {
        if n == 0 {
            return Err(Error::BadModulus(0));
        }
        let value = value.rem_euclid(n as i64) as u64;
        Ok(Residue { n, value })
    }

    pub fn modulus(self) -> u64 {
        self.n
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn is_unit(self) -> bool {
        self.n == 1 || self.value.gcd(&self.n) == 1
    }

    pub fn pow(self, mut e: u64) -> Residue {
        let mut base = self;
        let mut acc = Residue {
            n: self.n,
            value: 1 % self.n,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Units of `Z/n`, in increasing order.
    pub fn units(n: u64) -> Vec<Residue> {
        (0..n)
            .map(|v| Residue { n, value: v })
            .filter(|r| r.is_unit())
            .collect()
    }
}

impl Mul for Residue {
    type Output = Residue;

    fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.n, other.n);
        Residue {
            n: self.n,
            value: ((self.value as u128 * other.value as u128) % self.n as u128) as u64,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue {
            n: self.n,
            value: (self.n - self.value) % self.n,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.n)
    }
}

/// A bijection of `{0, .., len-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!("{image:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Permutation {
        debug_assert!(Permutation::new(image.clone()).is_ok());
        Permutation { image }
    }

    pub fn identity(len: usize) -> Permutation {
        Permutation {
            image: (0..len).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(len: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        let mut image: Vec<usize> = (0..len).collect();
        let mut touched = vec![false; len];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= len || touched[x] {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                touched[x] = true;
                image[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.len());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose(&acc);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Cycles, each starting at its least element, listed by least element.
    /// Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image[x];
            }
            out.push(len);
        }
        out
    }

    /// `(-1)^(number of even-length cycles)`.
    pub fn sign(&self) -> Sign {
        let even = self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count();
        Sign::from_parity(even as u64)
    }

    /// Number of orbits of the cyclic group generated by `self`.
    pub fn orbit_count(&self) -> usize {
        self.cycle_lengths().len()
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }
}

pub fn perm_sign(p: &Permutation) -> Sign {
    p.sign()
}

pub fn orbit_count(p: &Permutation) -> usize {
    p.orbit_count()
}

/// The Jacobi symbol `(q|n)` for odd positive `n` coprime to `q`.
pub fn jacobi(q: i64, n: i64) -> Result<Sign> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadJacobiModulus(n));
    }
    if q.gcd(&n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    let mut a = q.rem_euclid(n);
    let mut m = n;
    let mut s = Sign::Plus;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            s = -s;
        }
        a %= m;
    }
    Ok(s)
}

fn check_coprime(n: i64, q: i64) -> Result<()> {
    if n <= 0 {
        return Err(Error::BadModulus(n));
    }
    if q.gcd(&n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    Ok(())
}

/// Sign of multiplication by `q` on `Z/n` (`eps = +1`) or on `<-1>\Z/n`
/// (`eps = -1`), computed by walking the cycles.
pub fn sgn_eps_bruteforce(n: i64, q: i64, eps: Sign) -> Result<Sign> {
    check_coprime(n, q)?;
    let nu = n as u64;
    let q = q.rem_euclid(n) as u64;
    let canon = |x: u64| match eps {
        Sign::Plus => x,
        Sign::Minus => x.min((nu - x) % nu),
    };
    let size = match eps {
        Sign::Plus => nu,
        Sign::Minus => nu / 2 + 1,
    } as usize;
    let mut seen = vec![false; size];
    let mut even = 0u64;
    for start in 0..size as u64 {
        if seen[start as usize] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            len += 1;
            x = canon(x * q % nu);
        }
        even += len.is_multiple_of(2) as u64;
    }
    Ok(Sign::from_parity(even))
}

/// `(-1)^((q-1)/2)` for odd `q`.
fn chi4(q: i64) -> Sign {
    if q.rem_euclid(4) == 1 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Closed form for the sign of multiplication by `q` on `Z/n`.
pub fn sgn_plus(n: i64, q: i64) -> Result<Sign> {
    check_coprime(n, q)?;
    match n % 4 {
        0 => Ok(chi4(q)),
        1 | 3 => jacobi(q, n),
        _ => Ok(Sign::Plus),
    }
}

/// Closed form for the sign of multiplication by `q` on `<-1>\Z/n`.
pub fn sgn_minus(n: i64, q: i64) -> Result<Sign> {
    check_coprime(n, q)?;
    match n % 4 {
        0 => kronecker_unit(n, q.rem_euclid(n)),
        1 => jacobi(q, n),
        _ => Ok(Sign::Plus),
    }
}

/// `(n|q)` for `4 | n` and odd positive `q`, as a Kronecker symbol.
fn kronecker_unit(n: i64, q: i64) -> Result<Sign> {
    debug_assert!(n % 4 == 0 && q % 2 == 1);
    let v = n.trailing_zeros() as u64;
    let odd = n >> v;
    let two = if q.rem_euclid(8) == 1 || q.rem_euclid(8) == 7 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    Ok(two.pow(v) * jacobi(odd, q)?)
}

/// `(2r|q)` read as `sgn^-_{2r}(q)`; this is the value of a character mod `2r`
/// and so is meaningful for negative `q`.
pub fn two_r_symbol(r: i64, q: i64) -> Result<Sign> {
    sgn_minus(2 * r, q)
}

/// Both sides of the three CRT checks, each evaluated by brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrtSides {
    /// `sgn^+_{mn}(q)` against `sgn^+_m(q)^n sgn^+_n(q)^m`.
    pub plus: (Sign, Sign),
    /// `sgn^-_{mn}(q)` against the product with exact orbit-count exponents.
    pub minus_exact: (Sign, Sign),
    /// `sgn^-_{mn}(q)` against the product with `ceil((n-1)/2)` exponents.
    pub minus_ceil: (Sign, Sign),
}

fn quotient_size(a: i64) -> u64 {
    (a / 2 + 1) as u64
}

fn two_torsion(a: i64) -> u64 {
    if a % 2 == 0 {
        2
    } else {
        1
    }
}

pub fn sgn_eps_crt_check(m: i64, n: i64, q: i64) -> Result<CrtSides> {
    if m <= 0 || n <= 0 {
        return Err(Error::BadModulus(m.min(n)));
    }
    if m.gcd(&n) != 1 {
        return Err(Error::NotCoprime { q: m, n });
    }
    check_coprime(m * n, q)?;
    let plus = |k: i64| sgn_eps_bruteforce(k, q, Sign::Plus);
    let minus = |k: i64| sgn_eps_bruteforce(k, q, Sign::Minus);
    let (pm, pn, mm, mn) = (plus(m)?, plus(n)?, minus(m)?, minus(n)?);
    let lhs_plus = plus(m * n)?;
    let lhs_minus = minus(m * n)?;
    let rhs_plus = pm.pow(n as u64) * pn.pow(m as u64);
    let exact = pm.pow(quotient_size(n) - two_torsion(n))
        * mm.pow(two_torsion(n))
        * pn.pow(quotient_size(m) - two_torsion(m))
        * mn.pow(two_torsion(m));
    let ceil_half = |a: i64| ((a - 1) as u64).div_ceil(2);
    let ceil = pm.pow(ceil_half(n)) * mm.pow(n as u64) * pn.pow(ceil_half(m)) * mn.pow(m as u64);
    Ok(CrtSides {
        plus: (lhs_plus, rhs_plus),
        minus_exact: (lhs_minus, exact),
        minus_ceil: (lhs_minus, ceil),
    })
}

/// Trial-division factorization, primes in increasing order with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// 2-adic valuation of a positive integer.
pub fn two_adic(n: u64) -> u32 {
    n.trailing_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cycles: &[&[usize]], len: usize) -> Permutation {
        Permutation::from_cycles(len, cycles).unwrap()
    }

    #[test]
    fn perm_sign_examples() {
        assert_eq!(Permutation::identity(5).sign(), Sign::Plus);
        assert_eq!(p(&[&[0, 1]], 2).sign(), Sign::Minus);
        assert_eq!(p(&[&[0, 1, 2, 3]], 4).sign(), Sign::Minus);
    }

    #[test]
    fn orbit_count_examples() {
        assert_eq!(Permutation::identity(5).orbit_count(), 5);
        assert_eq!(p(&[&[0, 1, 2, 3]], 4).orbit_count(), 1);
        assert_eq!(p(&[&[0, 1], &[2, 3, 4]], 5).orbit_count(), 2);
    }

    #[test]
    fn cycles_listed_by_least_element() {
        let q = Permutation::new(vec![3, 2, 1, 4, 0]).unwrap();
        assert_eq!(q.cycles(), vec![vec![0, 3, 4], vec![1, 2]]);
        assert_eq!(q.order(), 6);
        assert_eq!(q.pow(6), Permutation::identity(5));
        assert_eq!(q.pow(-1), q.inverse());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
    }

    #[test]
    fn jacobi_examples() {
        for n in [1, 3, 5, 7, 9, 15, 21] {
            assert_eq!(jacobi(1, n).unwrap(), Sign::Plus);
        }
        assert_eq!(jacobi(8, 3).unwrap(), Sign::Minus);
        assert_eq!(jacobi(2, 15).unwrap(), Sign::Plus);
        assert_eq!(jacobi(-1, 3).unwrap(), Sign::Minus);
        assert!(jacobi(3, 9).is_err());
        assert!(jacobi(3, 8).is_err());
        assert!(jacobi(3, -5).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(sgn_eps_bruteforce(8, 3, Sign::Plus).unwrap(), Sign::Minus);
        assert_eq!(sgn_eps_bruteforce(8, 3, Sign::Minus).unwrap(), Sign::Minus);
        assert_eq!(sgn_eps_bruteforce(5, 2, Sign::Plus).unwrap(), Sign::Minus);
        assert_eq!(sgn_eps_bruteforce(1, 7, Sign::Minus).unwrap(), Sign::Plus);
        assert_eq!(sgn_eps_bruteforce(2, 1, Sign::Plus).unwrap(), Sign::Plus);
        assert!(sgn_eps_bruteforce(8, 2, Sign::Plus).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(sgn_plus(8, 3).unwrap(), Sign::Minus);
        assert_eq!(sgn_minus(8, 3).unwrap(), Sign::Minus);
        assert_eq!(sgn_plus(6, 5).unwrap(), Sign::Plus);
        assert_eq!(sgn_plus(8, -3).unwrap(), sgn_plus(8, 5).unwrap());
    }

    #[test]
    fn two_r_symbol_negative_q() {
        assert_eq!(two_r_symbol(4, 3).unwrap(), Sign::Minus);
        assert_eq!(two_r_symbol(4, -3).unwrap(), Sign::Minus);
        assert_eq!(two_r_symbol(2, -1).unwrap(), Sign::Plus);
    }

    #[test]
    fn crt_examples() {
        let s = sgn_eps_crt_check(3, 5, 2).unwrap();
        assert_eq!(s.plus.0, s.plus.1);
        let s = sgn_eps_crt_check(1, 7, 3).unwrap();
        assert_eq!(s.plus.0, s.plus.1);
        assert_eq!(s.minus_exact.0, s.minus_exact.1);
        let s = sgn_eps_crt_check(3, 8, 5).unwrap();
        assert_eq!(s.minus_exact.0, s.minus_exact.1);
    }

    #[test]
    fn ceil_exponent_form_fails_for_even_product() {
        let s = sgn_eps_crt_check(2, 3, 5).unwrap();
        assert_eq!(s.minus_exact.0, s.minus_exact.1);
        assert_ne!(s.minus_ceil.0, s.minus_ceil.1);
        let s = sgn_eps_crt_check(3, 8, 5).unwrap();
        assert_eq!(s.minus_ceil, (Sign::Plus, Sign::Minus));
    }

    #[test]
    fn residue_arithmetic() {
        let r = Residue::new(-3, 8).unwrap();
        assert_eq!(r.value(), 5);
        assert_eq!(r.pow(2).value(), 1);
        assert_eq!((-r).value(), 3);
        assert_eq!(Residue::units(8).len(), 4);
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(two_adic(24), 3);
    }
}
