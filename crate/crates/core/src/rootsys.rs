//! Root systems in explicit coordinates.
//!
//! Every coordinate is stored multiplied by 2, so the half-integral roots of
//! F4 and E8 are integer vectors. Ratios of inner products are unaffected.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::arith::{Permutation, Sign};
use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix, Q};

pub const SCALE: i64 = 2;

/// A vector of the ambient space, in coordinates scaled by [`SCALE`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootVector(Vec<i64>);

impl RootVector {
    pub fn new(coords: Vec<i64>) -> RootVector {
        RootVector(coords)
    }

    /// From unscaled coordinates given as numerators over 2.
    pub fn from_halves(halves: &[i64]) -> RootVector {
        RootVector(halves.to_vec())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &RootVector) -> i64 {
        dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> i64 {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> RootVector {
        RootVector(self.0.iter().map(|x| k * x).collect())
    }

    /// `2<self, alpha> / <alpha, alpha>`, which must be an integer.
    pub fn cartan_integer(&self, alpha: &RootVector) -> Option<i64> {
        let num = 2 * self.dot(alpha);
        let den = alpha.norm();
        (num % den == 0).then(|| num / den)
    }

    pub fn reflect(&self, alpha: &RootVector) -> Option<RootVector> {
        let c = self.cartan_integer(alpha)?;
        Some(self.sub(&alpha.scale(c)))
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if x % SCALE == 0 {
                write!(f, "{}", x / SCALE)?;
            } else {
                write!(f, "{x}/{SCALE}")?;
            }
        }
        write!(f, "]")
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cartan type of an irreducible root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl Label {
    pub fn rank(self) -> usize {
        match self {
            Label::A(r) | Label::B(r) | Label::C(r) | Label::D(r) | Label::E(r) => r,
            Label::F4 => 4,
            Label::G2 => 2,
        }
    }

    /// The type of the dual root system.
    pub fn dual(self) -> Label {
        match self {
            Label::B(n) if n >= 3 => Label::C(n),
            Label::C(n) if n >= 3 => Label::B(n),
            other => other,
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Label::A(_) | Label::D(_) | Label::E(_))
            || matches!(self, Label::B(1) | Label::C(1))
    }

    pub fn dual_coxeter(self) -> u64 {
        match self {
            Label::A(r) => r as u64 + 1,
            Label::B(n) => 2 * n as u64 - 1,
            Label::C(n) => n as u64 + 1,
            Label::D(n) => 2 * (n as u64 - 1),
            Label::E(6) => 12,
            Label::E(7) => 18,
            Label::E(8) => 30,
            Label::E(_) => unreachable!("E rank is checked on construction"),
            Label::F4 => 9,
            Label::G2 => 4,
        }
    }

    pub fn coxeter_number(self) -> u64 {
        match self {
            Label::A(r) => r as u64 + 1,
            Label::B(n) | Label::C(n) => 2 * n as u64,
            Label::D(n) => 2 * (n as u64 - 1),
            Label::E(6) => 12,
            Label::E(7) => 18,
            Label::E(8) => 30,
            Label::E(_) => unreachable!("E rank is checked on construction"),
            Label::F4 => 12,
            Label::G2 => 6,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            Label::A(r) => r * (r + 1),
            Label::B(n) | Label::C(n) => 2 * n * n,
            Label::D(n) => 2 * n * (n - 1),
            Label::E(6) => 72,
            Label::E(7) => 126,
            Label::E(8) => 240,
            Label::E(_) => 0,
            Label::F4 => 48,
            Label::G2 => 12,
        }
    }

    fn check_buildable(self) -> Result<()> {
        let ok = match self {
            Label::A(r) => r >= 1,
            Label::B(n) | Label::C(n) => n >= 2,
            Label::D(n) => n >= 3,
            Label::E(r) => (6..=8).contains(&r),
            Label::F4 | Label::G2 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedLabel(self.to_string()))
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A(r) => write!(f, "A{r}"),
            Label::B(r) => write!(f, "B{r}"),
            Label::C(r) => write!(f, "C{r}"),
            Label::D(r) => write!(f, "D{r}"),
            Label::E(r) => write!(f, "E{r}"),
            Label::F4 => f.write_str("F4"),
            Label::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    /// Accepts `B4`, `E8`, `F4`, and for type A either the rank (`A4`) or
    /// the number of coordinates after a colon (`A:5` is `A4`).
    fn from_str(s: &str) -> Result<Label> {
        let t = s.trim().to_ascii_uppercase();
        let bad = |why: &str| Error::parse("root system label", s, why);
        if t == "F4" {
            return Ok(Label::F4);
        }
        if t == "G2" {
            return Ok(Label::G2);
        }
        let (head, rest) = t.split_at(1.min(t.len()));
        if let Some(n) = rest.strip_prefix(':') {
            let n: usize = n.parse().map_err(|_| bad("expected A:<n>"))?;
            if head != "A" || n < 2 {
                return Err(bad("the colon form is A:<n> with n >= 2"));
            }
            return Ok(Label::A(n - 1));
        }
        let r: usize = rest.parse().map_err(|_| bad("expected a rank"))?;
        let label = match head {
            "A" => Label::A(r),
            "B" => Label::B(r),
            "C" => Label::C(r),
            "D" => Label::D(r),
            "E" => Label::E(r),
            _ => return Err(bad("unknown type letter")),
        };
        if r == 0 || (head == "E" && !(6..=8).contains(&r)) {
            return Err(bad("rank out of range"));
        }
        Ok(label)
    }
}

/// An exact orthogonal matrix, stored as integer numerators over one
/// positive denominator in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isometry {
    dim: usize,
    num: Vec<i64>,
    den: i64,
}

impl Isometry {
    pub fn identity(dim: usize) -> Isometry {
        Isometry::scalar(dim, 1)
    }

    pub fn negation(dim: usize) -> Isometry {
        Isometry::scalar(dim, -1)
    }

    fn scalar(dim: usize, c: i64) -> Isometry {
        let mut num = vec![0; dim * dim];
        for i in 0..dim {
            num[i * dim + i] = c;
        }
        Isometry { dim, num, den: 1 }
    }

    /// From integer rows (no orthogonality check).
    pub fn from_rows(rows: &[Vec<i64>]) -> Isometry {
        let dim = rows.len();
        Isometry {
            dim,
            num: rows.iter().flatten().copied().collect(),
            den: 1,
        }
        .normalized()
    }

    pub fn from_q(rows: &QMatrix) -> Isometry {
        let dim = rows.len();
        let den = rows
            .iter()
            .flatten()
            .fold(1i128, |acc, x| acc.lcm(x.denom()));
        let num = rows
            .iter()
            .flatten()
            .map(|x| (x * Q::from_integer(den)).to_integer() as i64)
            .collect();
        Isometry {
            dim,
            num,
            den: den as i64,
        }
        .normalized()
    }

    fn normalized(mut self) -> Isometry {
        let g = self.num.iter().fold(self.den, |acc, x| acc.gcd(x));
        if g > 1 {
            self.num.iter_mut().for_each(|x| *x /= g);
            self.den /= g;
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn entry(&self, i: usize, j: usize) -> Q {
        Q::new(self.num[i * self.dim + j] as i128, self.den as i128)
    }

    pub fn to_q(&self) -> QMatrix {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Exact image of an integer vector, if it is again integral.
    pub fn apply(&self, v: &[i64]) -> Option<Vec<i64>> {
        (0..self.dim)
            .map(|i| {
                let s: i64 = dot(&self.num[i * self.dim..(i + 1) * self.dim], v);
                (s % self.den == 0).then(|| s / self.den)
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut num = vec![0i64; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.num[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    num[i * d + j] += a * other.num[k * d + j];
                }
            }
        }
        Isometry {
            dim: d,
            num,
            den: self.den * other.den,
        }
        .normalized()
    }

    /// The transpose, which is the inverse of an orthogonal matrix.
    pub fn inverse(&self) -> Isometry {
        let d = self.dim;
        let mut num = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                num[j * d + i] = self.num[i * d + j];
            }
        }
        Isometry {
            dim: d,
            num,
            den: self.den,
        }
    }

    pub fn pow(&self, e: i64) -> Isometry {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Isometry::identity(self.dim);
        for _ in 0..e.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn neg(&self) -> Isometry {
        Isometry {
            dim: self.dim,
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den,
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.compose(&self.inverse()) == Isometry::identity(self.dim)
    }

    pub fn det(&self) -> Q {
        linalg::det(&self.to_q())
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity(self.dim)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// An irreducible component of a root system.
#[derive(Debug, Clone)]
pub struct Component {
    pub cartan: Label,
    /// Positions in the simple system.
    pub simple: Vec<usize>,
    pub roots: Vec<usize>,
    pub long_norm: i64,
    pub short_norm: i64,
}

impl Component {
    pub fn is_simply_laced(&self) -> bool {
        self.long_norm == self.short_norm
    }
}

/// Coordinate block of a direct sum built by [`RootSystem::direct_sum`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub offset: usize,
    pub len: usize,
    pub label: Label,
}

/// `a = s_{word[0]} ... s_{word[k-1]} τ`, with `τ` fixing the simple system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub word: Vec<usize>,
    /// `τ(α_j) = α_{tau[j]}`, on positions in the simple system.
    pub tau: Permutation,
    /// Action of `τ` on all roots.
    pub tau_roots: Permutation,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    name: String,
    label: Option<Label>,
    dim: usize,
    roots: Vec<RootVector>,
    index: HashMap<RootVector, usize>,
    simple: Vec<usize>,
    coeffs: Vec<Vec<i64>>,
    positive: Vec<bool>,
    negation: Vec<usize>,
    components: Vec<Component>,
    root_component: Vec<usize>,
    simple_refl: Vec<Permutation>,
    blocks: Vec<Block>,
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn eps_diff(dim: usize, i: usize, j: usize) -> RootVector {
    let mut v = vec![0; dim];
    v[i] = SCALE;
    v[j] = -SCALE;
    RootVector(v)
}

/// Simple roots of the classical types in the standard 0-based coordinates;
/// ranks down to `B1`, `C1`, `D2` are allowed.
fn classical_simple(label: Label) -> Result<(usize, Vec<RootVector>)> {
    let out = match label {
        Label::A(r) if r >= 1 => {
            let dim = r + 1;
            (dim, (0..r).map(|i| eps_diff(dim, i, i + 1)).collect())
        }
        Label::B(n) | Label::C(n) if n >= 1 => {
            let last = if matches!(label, Label::B(_)) { SCALE } else { 2 * SCALE };
            let mut s: Vec<RootVector> = (0..n - 1).map(|i| eps_diff(n, i, i + 1)).collect();
            s.push(RootVector(unit(n, n - 1, last)));
            (n, s)
        }
        Label::D(n) if n >= 2 => {
            let mut s: Vec<RootVector> = (0..n - 1).map(|i| eps_diff(n, i, i + 1)).collect();
            let mut v = vec![0; n];
            v[n - 2] = SCALE;
            v[n - 1] = SCALE;
            s.push(RootVector(v));
            (n, s)
        }
        _ => return Err(Error::UnsupportedLabel(label.to_string())),
    };
    Ok(out)
}

/// `B4` simple roots `ε0-ε1, ε1-ε2, ε2-ε3, ε3`, and the F4 simple system
/// `(α2, α3, α4, (α1 - α3 - 2α4)/2)` built from them.
pub fn f4_simple_from_b4() -> Vec<RootVector> {
    let (_, b) = classical_simple(Label::B(4)).expect("B4");
    let half = b[0].sub(&b[2]).sub(&b[3].scale(2));
    let half = RootVector(half.0.iter().map(|x| x / 2).collect());
    vec![b[1].clone(), b[2].clone(), b[3].clone(), half]
}

/// The `D8` simple roots `α1 .. α8` used to coordinatize E8:
/// `α1 = -(ε6+ε7)`, `α_i = ε_{8-i} - ε_{7-i}` for `2 <= i <= 7`, `α8 = ε0+ε1`.
pub fn d8_simple_for_e8() -> Vec<RootVector> {
    let mut out = Vec::with_capacity(8);
    let mut a1 = vec![0; 8];
    a1[6] = -SCALE;
    a1[7] = -SCALE;
    out.push(RootVector(a1));
    for i in 2..=7 {
        out.push(eps_diff(8, 8 - i, 7 - i));
    }
    let mut a8 = vec![0; 8];
    a8[0] = SCALE;
    a8[1] = SCALE;
    out.push(RootVector(a8));
    out
}

/// `β = -(α1 + 2α2 + 3α3 + 4α4 + 5α5 + 6α6 + 4α7 + 3α8)/2` in terms of the
/// D8 simple roots.
pub fn e8_beta() -> RootVector {
    let d = d8_simple_for_e8();
    let weights = [1, 2, 3, 4, 5, 6, 4, 3];
    let sum = d
        .iter()
        .zip(weights)
        .fold(RootVector(vec![0; 8]), |acc, (a, w)| acc.add(&a.scale(w)));
    RootVector(sum.0.iter().map(|x| -x / 2).collect())
}

/// E8 simple roots in Bourbaki order: `(β, α8, α7, α6, α5, α4, α3, α2)`.
pub fn e8_simple() -> Vec<RootVector> {
    let d = d8_simple_for_e8();
    let mut out = vec![e8_beta()];
    out.extend([7, 6, 5, 4, 3, 2, 1].iter().map(|&i| d[i].clone()));
    out
}

fn g2_simple() -> Vec<RootVector> {
    vec![
        RootVector(vec![SCALE, -SCALE, 0]),
        RootVector(vec![-2 * SCALE, SCALE, SCALE]),
    ]
}

fn detect_type(rank: usize, roots: &[&RootVector]) -> Result<Label> {
    let norms: Vec<i64> = roots.iter().map(|r| r.norm()).collect();
    let long = *norms.iter().max().unwrap();
    let short = *norms.iter().min().unwrap();
    let count = roots.len();
    let n_long = norms.iter().filter(|&&x| x == long).count();
    let label = if long == short {
        match count {
            72 if rank == 6 => Label::E(6),
            126 if rank == 7 => Label::E(7),
            240 if rank == 8 => Label::E(8),
            c if c == rank * (rank + 1) => Label::A(rank),
            c if rank >= 4 && c == 2 * rank * (rank - 1) => Label::D(rank),
            _ => return Err(Error::Verification(format!("unrecognized simply laced component of rank {rank}"))),
        }
    } else if long == 3 * short {
        Label::G2
    } else if long == 2 * short {
        if rank == 4 && count == 48 {
            Label::F4
        } else if n_long == 2 * rank * (rank - 1) {
            Label::B(rank)
        } else {
            Label::C(rank)
        }
    } else {
        return Err(Error::Verification("unrecognized length ratio".into()));
    };
    Ok(label)
}

impl RootSystem {
    /// Standard irreducible root systems.
    pub fn build(label: Label) -> Result<RootSystem> {
        label.check_buildable()?;
        RootSystem::build_unchecked(label)
    }

    /// Like [`RootSystem::build`], also allowing the degenerate classical
    /// ranks `B1`, `C1` and `D2` used by the signed-permutation model.
    pub fn classical(label: Label) -> Result<RootSystem> {
        match label {
            Label::A(_) | Label::B(_) | Label::C(_) | Label::D(_) => RootSystem::build_unchecked(label),
            _ => Err(Error::UnsupportedLabel(label.to_string())),
        }
    }

    fn build_unchecked(label: Label) -> Result<RootSystem> {
        let (dim, simple) = match label {
            Label::A(_) | Label::B(_) | Label::C(_) | Label::D(_) => classical_simple(label)?,
            Label::F4 => (4, f4_simple_from_b4()),
            Label::G2 => (3, g2_simple()),
            Label::E(r) => (8, e8_simple()[..r].to_vec()),
        };
        let mut sys = RootSystem::from_simple_roots(&label.to_string(), dim, simple)?;
        sys.label = Some(label);
        if sys.roots.len() != label.root_count() {
            return Err(Error::Verification(format!(
                "{label} has {} roots, expected {}",
                sys.roots.len(),
                label.root_count()
            )));
        }
        if matches!(label, Label::A(_) | Label::B(_) | Label::C(_) | Label::D(_)) {
            sys.blocks = vec![Block {
                offset: 0,
                len: dim,
                label,
            }];
        }
        Ok(sys)
    }

    /// Direct sum of classical systems, each in its own block of coordinates.
    pub fn direct_sum(labels: &[Label]) -> Result<RootSystem> {
        let parts: Vec<(usize, Vec<RootVector>)> = labels
            .iter()
            .map(|&l| classical_simple(l))
            .collect::<Result<_>>()?;
        let dim: usize = parts.iter().map(|p| p.0).sum();
        let mut simple = Vec::new();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (&label, (d, s)) in labels.iter().zip(&parts) {
            for r in s {
                let mut v = vec![0; dim];
                v[offset..offset + d].copy_from_slice(&r.0);
                simple.push(RootVector(v));
            }
            blocks.push(Block { offset, len: *d, label });
            offset += d;
        }
        let name = labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("+");
        let mut sys = RootSystem::from_simple_roots(&name, dim, simple)?;
        sys.blocks = blocks;
        Ok(sys)
    }

    /// Closes a simple system under its reflections.
    pub fn from_simple_roots(name: &str, dim: usize, simple: Vec<RootVector>) -> Result<RootSystem> {
        let r = simple.len();
        for s in &simple {
            if s.dim() != dim || s.is_zero() {
                return Err(Error::DimensionMismatch { expected: dim, got: s.dim() });
            }
        }
        for a in &simple {
            for b in &simple {
                if a.cartan_integer(b).is_none() {
                    return Err(Error::Verification("non-integral Cartan matrix".into()));
                }
            }
        }
        let mut found: HashMap<RootVector, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for (i, s) in simple.iter().enumerate() {
            let c = unit(r, i, 1);
            if found.insert(s.clone(), c.clone()).is_none() {
                queue.push_back((s.clone(), c));
            }
        }
        while let Some((beta, c)) = queue.pop_front() {
            for (i, a) in simple.iter().enumerate() {
                let k = beta.cartan_integer(a).ok_or_else(|| Error::Verification("non-integral pairing".into()))?;
                if k == 0 {
                    continue;
                }
                let img = beta.sub(&a.scale(k));
                if !found.contains_key(&img) {
                    let mut ci = c.clone();
                    ci[i] -= k;
                    found.insert(img.clone(), ci.clone());
                    queue.push_back((img, ci));
                    if found.len() > 1000 {
                        return Err(Error::Verification("simple system generates an infinite set".into()));
                    }
                }
            }
        }
        let mut pairs: Vec<(RootVector, Vec<i64>)> = found.into_iter().collect();
        pairs.sort();
        let (roots, coeffs): (Vec<RootVector>, Vec<Vec<i64>>) = pairs.into_iter().unzip();
        let index: HashMap<RootVector, usize> =
            roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let positive: Vec<bool> = coeffs.iter().map(|c| c.iter().all(|&x| x >= 0)).collect();
        for c in &coeffs {
            if !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
                return Err(Error::Verification("simple roots do not form a base".into()));
            }
        }
        let negation = roots
            .iter()
            .map(|v| index.get(&v.neg()).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Verification("root set is not closed under negation".into()))?;
        let simple_idx: Vec<usize> = simple.iter().map(|s| index[s]).collect();

        // components of the Dynkin diagram
        let mut comp_of = (0..r).collect::<Vec<_>>();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let root = find(p, p[x]);
                p[x] = root;
            }
            p[x]
        }
        for i in 0..r {
            for j in i + 1..r {
                if simple[i].dot(&simple[j]) != 0 {
                    let (a, b) = (find(&mut comp_of, i), find(&mut comp_of, j));
                    comp_of[a.max(b)] = a.min(b);
                }
            }
        }
        let heads: Vec<usize> = (0..r).filter(|&i| find(&mut comp_of, i) == i).collect();
        let mut components = Vec::new();
        let mut root_component = vec![0; roots.len()];
        for (ci, &h) in heads.iter().enumerate() {
            let simple_pos: Vec<usize> = (0..r).filter(|&i| find(&mut comp_of, i) == h).collect();
            let members: Vec<usize> = (0..roots.len())
                .filter(|&k| simple_pos.iter().any(|&i| coeffs[k][i] != 0))
                .collect();
            for &k in &members {
                root_component[k] = ci;
            }
            let vecs: Vec<&RootVector> = members.iter().map(|&k| &roots[k]).collect();
            let cartan = detect_type(simple_pos.len(), &vecs)?;
            let long_norm = vecs.iter().map(|v| v.norm()).max().unwrap();
            let short_norm = vecs.iter().map(|v| v.norm()).min().unwrap();
            components.push(Component {
                cartan,
                simple: simple_pos,
                roots: members,
                long_norm,
                short_norm,
            });
        }
        let mut sys = RootSystem {
            name: name.to_string(),
            label: None,
            dim,
            roots,
            index,
            simple: simple_idx,
            coeffs,
            positive,
            negation,
            components,
            root_component,
            simple_refl: Vec::new(),
            blocks: Vec::new(),
        };
        sys.simple_refl = (0..r).map(|i| sys.reflection_perm(sys.simple[i])).collect();
        if components_are_single(&sys) {
            sys.label = Some(sys.components[0].cartan);
        }
        Ok(sys)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self) -> Option<Label> {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &RootVector {
        &self.roots[i]
    }

    pub fn index_of(&self, v: &RootVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<RootVector> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    /// Coordinates of root `i` in the simple basis.
    pub fn coeffs(&self, i: usize) -> &[i64] {
        &self.coeffs[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn negation_index(&self, i: usize) -> usize {
        self.negation[i]
    }

    pub fn negation_perm(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.negation.clone())
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.root_component[i]
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.roots[i].norm() == self.components[self.root_component[i]].long_norm
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.simple_roots();
        s.iter()
            .map(|a| s.iter().map(|b| a.cartan_integer(b).unwrap()).collect())
            .collect()
    }

    /// The reflection in `alpha` as an isometry.
    pub fn reflection(&self, alpha: &RootVector) -> Result<Isometry> {
        if self.index_of(alpha).is_none() {
            return Err(Error::NotARoot(alpha.to_string(), self.name.clone()));
        }
        Ok(reflection_matrix(alpha))
    }

    pub fn simple_reflection(&self, i: usize) -> Isometry {
        reflection_matrix(&self.roots[self.simple[i]])
    }

    /// Action of `s_{roots[i]}` on root indices.
    pub fn reflection_perm(&self, i: usize) -> Permutation {
        let a = &self.roots[i];
        Permutation::from_vec_unchecked(
            self.roots
                .iter()
                .map(|b| self.index[&b.reflect(a).expect("integral pairing")])
                .collect(),
        )
    }

    pub fn simple_reflection_perm(&self, i: usize) -> &Permutation {
        &self.simple_refl[i]
    }

    /// The permutation of root indices induced by `a`.
    pub fn root_action(&self, a: &Isometry) -> Result<Permutation> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: a.dim() });
        }
        let img = self
            .roots
            .iter()
            .map(|v| a.apply(v.coords()).and_then(|w| self.index.get(&RootVector(w)).copied()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotAnAutomorphism(self.name.clone()))?;
        Permutation::new(img).map_err(|_| Error::NotAnAutomorphism(self.name.clone()))
    }

    pub fn is_automorphism(&self, a: &Isometry) -> bool {
        a.is_orthogonal() && self.root_action(a).is_ok()
    }

    /// Basis of the orthogonal complement of the span of the roots.
    fn complement_basis(&self) -> Vec<Vec<i64>> {
        let rows: Vec<Vec<i64>> = self.simple_roots().into_iter().map(|v| v.0).collect();
        if rows.is_empty() {
            return (0..self.dim).map(|i| unit(self.dim, i, 1)).collect();
        }
        linalg::nullspace(&linalg::to_q(&rows), self.dim)
    }

    /// The linear map sending `α_i` to `images[i]` and fixing the
    /// orthogonal complement of the roots pointwise.
    pub fn isometry_from_simple_images(&self, images: &[RootVector]) -> Result<Isometry> {
        if images.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: images.len() });
        }
        let comp = self.complement_basis();
        let src: Vec<Vec<i64>> = self.simple_roots().into_iter().map(|v| v.0).chain(comp.clone()).collect();
        let dst: Vec<Vec<i64>> = images.iter().map(|v| v.0.clone()).chain(comp).collect();
        // columns are basis vectors: M * S = T, so M = T S^{-1}
        let s = linalg::transpose(&linalg::to_q(&src));
        let t = linalg::transpose(&linalg::to_q(&dst));
        let s_inv = linalg::inverse(&s).ok_or_else(|| Error::Verification("singular basis".into()))?;
        let m = Isometry::from_q(&linalg::mul(&t, &s_inv));
        if !m.is_orthogonal() {
            return Err(Error::NotAnAutomorphism(self.name.clone()));
        }
        self.root_action(&m)?;
        Ok(m)
    }

    /// Recovers the isometry (identity on the complement of the roots) from
    /// its action on roots.
    pub fn isometry_from_root_perm(&self, p: &Permutation) -> Result<Isometry> {
        let images: Vec<RootVector> = self.simple.iter().map(|&i| self.roots[p.apply(i)].clone()).collect();
        let m = self.isometry_from_simple_images(&images)?;
        if self.root_action(&m)? != *p {
            return Err(Error::NotAnAutomorphism(self.name.clone()));
        }
        Ok(m)
    }

    /// Matrix of the action on the span of the roots in the simple basis;
    /// column `j` holds the coordinates of the image of `α_j`.
    pub fn simple_matrix(&self, p: &Permutation) -> Vec<Vec<i64>> {
        let r = self.rank();
        let cols: Vec<&Vec<i64>> = self.simple.iter().map(|&i| &self.coeffs[p.apply(i)]).collect();
        (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect()
    }

    /// Chamber walk: `a = s_{i1} ... s_{ik} τ` with a reduced word.
    pub fn decompose_perm(&self, a: &Permutation) -> Decomposition {
        let mut y = a.inverse();
        let mut word = Vec::new();
        'walk: loop {
            for (i, &si) in self.simple.iter().enumerate() {
                if !self.positive[y.apply(si)] {
                    y = y.compose(&self.simple_refl[i]);
                    word.push(i);
                    continue 'walk;
                }
            }
            break;
        }
        let tau_roots = y.inverse();
        let tau = Permutation::new(
            self.simple
                .iter()
                .map(|&s| {
                    let img = tau_roots.apply(s);
                    self.simple.iter().position(|&t| t == img).expect("τ fixes the simple system")
                })
                .collect(),
        )
        .expect("τ permutes the simple roots");
        Decomposition { word, tau, tau_roots }
    }

    pub fn decompose(&self, a: &Isometry) -> Result<Decomposition> {
        Ok(self.decompose_perm(&self.root_action(a)?))
    }

    /// Rebuilds the root action from a decomposition.
    pub fn compose_word(&self, word: &[usize], tail: &Permutation) -> Permutation {
        word.iter()
            .rev()
            .fold(tail.clone(), |acc, &i| self.simple_refl[i].compose(&acc))
    }

    pub fn sgn_perm(&self, a: &Permutation) -> Sign {
        Sign::from_parity(self.decompose_perm(a).word.len() as u64)
    }

    pub fn sgn_r(&self, a: &Isometry) -> Result<Sign> {
        Ok(self.sgn_perm(&self.root_action(a)?))
    }

    /// `ε_{α,long}` for the simple root at position `i`.
    fn eps_long(&self, i: usize) -> Sign {
        let k = self.simple[i];
        let comp = &self.components[self.root_component[k]];
        if comp.is_simply_laced() || self.is_long(k) {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn sgn_long_perm(&self, a: &Permutation) -> Sign {
        self.decompose_perm(a).word.iter().map(|&i| self.eps_long(i)).product()
    }

    pub fn sgn_short_perm(&self, a: &Permutation) -> Sign {
        self.decompose_perm(a).word.iter().map(|&i| -self.eps_long(i)).product()
    }

    pub fn sgn_long(&self, a: &Isometry) -> Result<Sign> {
        Ok(self.sgn_long_perm(&self.root_action(a)?))
    }

    pub fn sgn_short(&self, a: &Isometry) -> Result<Sign> {
        Ok(self.sgn_short_perm(&self.root_action(a)?))
    }

    pub fn is_weyl(&self, a: &Permutation) -> bool {
        self.decompose_perm(a).tau.is_identity()
    }

    /// Permutations of the simple system preserving the Cartan matrix.
    pub fn diagram_automorphisms(&self) -> Vec<Permutation> {
        let c = self.cartan_matrix();
        let r = self.rank();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(r);
        let mut used = vec![false; r];
        fn extend(
            c: &[Vec<i64>],
            cur: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<Permutation>,
        ) {
            let k = cur.len();
            if k == c.len() {
                out.push(Permutation::from_vec_unchecked(cur.clone()));
                return;
            }
            for t in 0..c.len() {
                if used[t] || c[k][k] != c[t][t] {
                    continue;
                }
                if (0..k).all(|j| c[k][j] == c[t][cur[j]] && c[j][k] == c[cur[j]][t]) {
                    used[t] = true;
                    cur.push(t);
                    extend(c, cur, used, out);
                    cur.pop();
                    used[t] = false;
                }
            }
        }
        extend(&c, &mut cur, &mut used, &mut out);
        out.sort();
        out
    }

    /// The automorphism permuting the simple roots by `tau`.
    pub fn diagram_isometry(&self, tau: &Permutation) -> Result<Isometry> {
        let images: Vec<RootVector> = (0..self.rank()).map(|j| self.roots[self.simple[tau.apply(j)]].clone()).collect();
        self.isometry_from_simple_images(&images)
    }

    pub fn negation_isometry(&self) -> Isometry {
        Isometry::negation(self.dim)
    }

    /// A product of `len` uniformly chosen simple reflections.
    pub fn random_weyl_perm<R: Rng>(&self, rng: &mut R, len: usize) -> Permutation {
        let mut p = Permutation::identity(self.len());
        if self.rank() == 0 {
            return p;
        }
        for _ in 0..len {
            let i = rng.random_range(0..self.rank());
            p = self.simple_refl[i].compose(&p);
        }
        p
    }

    /// All elements of the group generated by `gens`, as root permutations;
    /// `None` if there are more than `limit`.
    pub fn generate(&self, gens: &[Permutation], limit: usize) -> Option<Vec<Permutation>> {
        generate_group(self.len(), gens, limit)
    }

    /// Every element of the Weyl group, for small groups.
    pub fn weyl_group(&self, limit: usize) -> Option<Vec<Permutation>> {
        self.generate(&self.simple_refl, limit)
    }

    /// Text dump: label, rank, ambient dimension, scaling, roots, simple indices.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("label: {}\n", self.name));
        s.push_str(&format!("rank: {}\n", self.rank()));
        s.push_str(&format!("ambient_dim: {}\n", self.dim));
        s.push_str(&format!("scaled_by: {SCALE}\n"));
        s.push_str(&format!("root_count: {}\n", self.len()));
        s.push_str("roots:\n");
        for r in &self.roots {
            let c: Vec<String> = r.0.iter().map(i64::to_string).collect();
            s.push_str(&format!("  - [{}]\n", c.join(", ")));
        }
        let simple: Vec<String> = self.simple.iter().map(usize::to_string).collect();
        s.push_str(&format!("simple: [{}]\n", simple.join(", ")));
        s
    }
}

fn components_are_single(sys: &RootSystem) -> bool {
    sys.components.len() == 1
}

pub fn reflection_matrix(alpha: &RootVector) -> Isometry {
    let d = alpha.dim();
    let n = alpha.norm();
    let rows: QMatrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let delta = if i == j { Q::one() } else { Q::zero() };
                    delta - Q::new(2 * (alpha.0[i] * alpha.0[j]) as i128, n as i128)
                })
                .collect()
        })
        .collect();
    Isometry::from_q(&rows)
}

/// Breadth-first closure of `gens` acting on `len` points.
pub fn generate_group(len: usize, gens: &[Permutation], limit: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(len);
    let mut seen: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                out.push(y);
                if out.len() > limit {
                    return None;
                }
            }
        }
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(sys("A2").len(), 6);
        assert_eq!(sys("A2").rank(), 2);
        let f4 = sys("F4");
        assert_eq!(f4.len(), 48);
        let long = (0..48).filter(|&i| f4.is_long(i)).count();
        assert_eq!(long, 24);
        let e8 = sys("E8");
        assert_eq!(e8.len(), 240);
        let d8 = e8.roots().iter().filter(|r| r.coords().iter().all(|x| x % 2 == 0)).count();
        assert_eq!(d8, 112);
        assert_eq!(sys("E7").len(), 126);
        assert_eq!(sys("E6").len(), 72);
        assert_eq!(sys("G2").len(), 12);
        assert_eq!(sys("D5").len(), 40);
        assert_eq!(sys("C3").len(), 18);
    }

    #[test]
    fn label_parsing() {
        assert_eq!("A:5".parse::<Label>().unwrap(), Label::A(4));
        assert_eq!("b4".parse::<Label>().unwrap(), Label::B(4));
        assert_eq!("E8".parse::<Label>().unwrap(), Label::E(8));
        assert!("E9".parse::<Label>().is_err());
        assert!("X3".parse::<Label>().is_err());
        assert!(RootSystem::build(Label::D(2)).is_err());
        assert!(RootSystem::build(Label::B(1)).is_err());
        assert!(RootSystem::classical(Label::B(1)).is_ok());
    }

    #[test]
    fn exceptional_cartan_determinants() {
        for (s, d) in [("E8", 1), ("E7", 2), ("E6", 3), ("F4", 1), ("G2", 1)] {
            let c = sys(s).cartan_matrix();
            assert_eq!(linalg::det(&linalg::to_q(&c)), Q::from_integer(d), "{s}");
        }
    }

    #[test]
    fn reflection_examples() {
        let a2 = sys("A2");
        let s = a2.simple_roots();
        let sa = a2.reflection(&s[0]).unwrap();
        assert_eq!(sa.apply(s[0].coords()).unwrap(), s[0].neg().coords());
        assert!(sa.compose(&sa).is_identity());
        assert_eq!(sa.apply(s[1].coords()).unwrap(), s[0].add(&s[1]).coords());
        assert!(a2.reflection(&RootVector::new(vec![2, 0, 0])).is_err());
    }

    #[test]
    fn reflection_closure() {
        for s in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = sys(s);
            for i in 0..r.len() {
                let p = r.reflection_perm(i);
                assert_eq!(p.apply(i), r.negation_index(i));
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let a2 = sys("A2");
        let id = a2.decompose(&Isometry::identity(3)).unwrap();
        assert!(id.word.is_empty() && id.tau.is_identity());
        let neg = a2.decompose(&Isometry::negation(3)).unwrap();
        assert_eq!(neg.word.len(), 3);
        assert_eq!(neg.tau.as_slice(), &[1, 0]);
        let s0 = a2.decompose(&a2.simple_reflection(0)).unwrap();
        assert_eq!(s0.word, vec![0]);
        assert!(s0.tau.is_identity());
    }

    #[test]
    fn sign_examples() {
        let b2 = sys("B2");
        let long = b2.index_of(&RootVector::new(vec![2, -2])).unwrap();
        let short = b2.index_of(&RootVector::new(vec![2, 0])).unwrap();
        let sl = b2.reflection_perm(long);
        let ss = b2.reflection_perm(short);
        assert_eq!(b2.sgn_long_perm(&sl), Sign::Minus);
        assert_eq!(b2.sgn_short_perm(&sl), Sign::Plus);
        assert_eq!(b2.sgn_long_perm(&ss), Sign::Plus);
        assert_eq!(b2.sgn_short_perm(&ss), Sign::Minus);
        let a3 = sys("A3");
        let flips = a3.diagram_automorphisms();
        assert_eq!(flips.len(), 2);
        let flip = a3.diagram_isometry(&flips[1]).unwrap();
        assert_eq!(a3.sgn_r(&flip).unwrap(), Sign::Plus);
        for i in 0..a3.len() {
            assert_eq!(a3.sgn_perm(&a3.reflection_perm(i)), Sign::Minus);
        }
    }

    #[test]
    fn diagram_group_orders() {
        for (s, n) in [("A1", 1), ("A4", 2), ("B3", 1), ("D4", 6), ("D5", 2), ("E6", 2), ("E7", 1), ("E8", 1), ("F4", 1), ("G2", 1)] {
            assert_eq!(sys(s).diagram_automorphisms().len(), n, "{s}");
        }
    }

    #[test]
    fn dual_coxeter_chart() {
        assert_eq!(Label::F4.dual_coxeter(), 9);
        assert_eq!(Label::E(8).dual_coxeter(), 30);
        assert_eq!(Label::A(4).dual_coxeter(), 5);
        assert_eq!(Label::B(4).dual_coxeter(), 7);
        assert_eq!(Label::C(4).dual_coxeter(), 5);
        assert_eq!(Label::D(5).dual_coxeter(), 8);
    }

    #[test]
    fn weyl_orders() {
        for (s, n) in [("A3", 24), ("B3", 48), ("B4", 384), ("D4", 192), ("G2", 12), ("F4", 1152)] {
            assert_eq!(sys(s).weyl_group(5000).unwrap().len(), n, "{s}");
        }
    }

    #[test]
    fn root_action_rejects_non_automorphism() {
        let a2 = sys("A2");
        let m = Isometry::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]]);
        assert!(a2.root_action(&m).is_err());
    }

    #[test]
    fn direct_sum_blocks() {
        let r = RootSystem::direct_sum(&[Label::A(1), Label::B(2)]).unwrap();
        assert_eq!(r.len(), 2 + 8);
        assert_eq!(r.components().len(), 2);
        assert_eq!(r.blocks()[1].offset, 2);
    }

    #[test]
    fn dump_is_stable() {
        let a = sys("B2").dump();
        assert_eq!(a, sys("B2").dump());
        assert!(a.starts_with("label: B2\nrank: 2\nambient_dim: 2\nscaled_by: 2\n"));
    }
}
