//! Signed permutations, orbit spaces, ellipticity and parabolic descent.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{two_adic, Permutation};
use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::rootsys::{dot, Isometry, Label, RootSystem, RootVector, SCALE};

/// A permutation of `Z/2n` commuting with `i -> i + n`; `i >= n` stands
/// for `-ε_{i-n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    n: usize,
    map: Vec<usize>,
}

/// One cycle of a signed permutation, listed from its least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCycle {
    pub negative: bool,
    /// `entries[k] = p^k(entries[0])`, with values in `[0, 2n)`.
    pub entries: Vec<usize>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation {
            n,
            map: (0..2 * n).collect(),
        }
    }

    pub fn negation(n: usize) -> SignedPermutation {
        SignedPermutation {
            n,
            map: (0..2 * n).map(|i| (i + n) % (2 * n)).collect(),
        }
    }

    /// From the images of `0 .. n`.
    pub fn from_images(images: &[usize]) -> Result<SignedPermutation> {
        let n = images.len();
        let mut map = vec![usize::MAX; 2 * n];
        for (i, &j) in images.iter().enumerate() {
            if j >= 2 * n {
                return Err(Error::InvalidPermutation(format!("{j} is out of range")));
            }
            map[i] = j;
            map[i + n] = (j + n) % (2 * n);
        }
        Permutation::new(map.clone()).map_err(|_| Error::InvalidPermutation(format!("{images:?}")))?;
        Ok(SignedPermutation { n, map })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map[..self.n]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.n, other.n);
        SignedPermutation {
            n: self.n,
            map: other.map.iter().map(|&j| self.map[j]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut map = vec![0; 2 * self.n];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        SignedPermutation { n: self.n, map }
    }

    pub fn pow(&self, e: i64) -> SignedPermutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(SignedPermutation::identity(self.n), |acc, _| base.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> u64 {
        Permutation::from_vec_unchecked(self.map.clone()).order()
    }

    pub fn cycles(&self) -> Vec<SignedCycle> {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut x = self.map[start];
            while x != start {
                orbit.push(x);
                seen[x] = true;
                x = self.map[x];
            }
            let negative = orbit.contains(&(start + n));
            if negative {
                orbit.truncate(orbit.len() / 2);
            } else {
                for &y in &orbit {
                    seen[(y + n) % (2 * n)] = true;
                }
            }
            out.push(SignedCycle { negative, entries: orbit });
        }
        out
    }

    pub fn negative_cycle_count(&self) -> usize {
        self.cycles().iter().filter(|c| c.negative).count()
    }

    /// Whether every cycle is negative, so that no nonzero vector is fixed.
    pub fn is_elliptic(&self) -> bool {
        self.cycles().iter().all(|c| c.negative)
    }

    /// Membership in `W(D_n)`: an even number of sign changes.
    pub fn in_weyl_d(&self) -> bool {
        self.images().iter().filter(|&&j| j >= self.n).count() % 2 == 0
    }

    /// Integer matrix sending `ε_i` to `ε̃_{p(i)}`, in unscaled coordinates.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut rows = vec![vec![0i64; n]; n];
        for (i, &j) in self.map[..n].iter().enumerate() {
            if j < n {
                rows[j][i] = 1;
            } else {
                rows[j - n][i] = -1;
            }
        }
        rows
    }

    pub fn to_isometry(&self) -> Isometry {
        Isometry::from_rows(&self.matrix())
    }

    /// The isometry of a classical system (or E8 in its D8 coordinates).
    pub fn to_isometry_on(&self, target: &RootSystem) -> Result<Isometry> {
        if target.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_dim(),
                got: self.n,
            });
        }
        let m = self.to_isometry();
        target.root_action(&m)?;
        Ok(m)
    }

    /// Action on the roots of `target`.
    pub fn root_action(&self, target: &RootSystem) -> Result<Permutation> {
        target.root_action(&self.to_isometry_on(target)?)
    }

    /// The normalizing element `norm_q` built from the cycles of `self`:
    /// on each cycle `t(k) = self^k(t(0))`, it sends `t(k)` to `t(qk)`.
    pub fn norm(&self, q: i64) -> Result<SignedPermutation> {
        let n = self.n;
        let mut map: Vec<usize> = (0..2 * n).collect();
        for c in self.cycles() {
            let m = c.entries.len();
            let period = if c.negative { 2 * m } else { m };
            let t: Vec<usize> = (0..period)
                .map(|k| {
                    if c.negative && k >= m {
                        (c.entries[k - m] + n) % (2 * n)
                    } else {
                        c.entries[k]
                    }
                })
                .collect();
            let qk = |k: usize| (q * k as i64).rem_euclid(period as i64) as usize;
            if num_integer::gcd(q, period as i64) != 1 {
                return Err(Error::NotCoprime { q, n: period as i64 });
            }
            for k in 0..period {
                map[t[k]] = t[qk(k)];
                if !c.negative {
                    map[(t[k] + n) % (2 * n)] = (t[qk(k)] + n) % (2 * n);
                }
            }
        }
        Ok(SignedPermutation { n, map })
    }

    /// `w_{C_λ}`: one negative cycle on each consecutive block of parts.
    pub fn from_partition(lambda: &Partition) -> SignedPermutation {
        let n = lambda.total();
        let mut images = vec![0; n];
        let mut start = 0;
        for &p in lambda.parts() {
            for k in 0..p {
                images[start + k] = if k + 1 < p { start + k + 1 } else { start + n };
            }
            start += p;
        }
        SignedPermutation::from_images(&images).expect("valid block cycles")
    }

    /// Lengths of the negative and positive cycles.
    pub fn cycle_type(&self) -> (Vec<usize>, Vec<usize>) {
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        for c in self.cycles() {
            if c.negative {
                neg.push(c.entries.len());
            } else {
                pos.push(c.entries.len());
            }
        }
        neg.sort_unstable_by(|a, b| b.cmp(a));
        pos.sort_unstable_by(|a, b| b.cmp(a));
        (neg, pos)
    }

    /// Parses `n(0 1)p(2 3)` style products in rank `n`.
    pub fn parse(s: &str, n: usize) -> Result<SignedPermutation> {
        let err = |why: &str| Error::parse("signed permutation", s, why);
        let t: String = s.split_whitespace().collect::<Vec<_>>().join(" ");
        let t = t.trim();
        if t.is_empty() || t == "id" || t == "1" {
            return Ok(SignedPermutation::identity(n));
        }
        if t == "-1" {
            return Ok(SignedPermutation::negation(n));
        }
        let mut factors = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            let (kind, tail) = rest_trim.split_at(1);
            let negative = match kind {
                "n" => true,
                "p" => false,
                _ => return Err(err("expected n(...) or p(...)")),
            };
            let tail = tail.trim_start().strip_prefix('(').ok_or_else(|| err("missing '('"))?;
            let close = tail.find(')').ok_or_else(|| err("missing ')'"))?;
            let entries: Vec<usize> = tail[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map_err(|_| err("bad entry")))
                .collect::<Result<_>>()?;
            if entries.is_empty() {
                return Err(err("empty cycle"));
            }
            factors.push((negative, entries));
            rest = tail[close + 1..].trim_start();
        }
        let mut acc = SignedPermutation::identity(n);
        for (negative, entries) in factors.iter().rev() {
            let c = SignedPermutation::cycle(n, entries, *negative).map_err(|e| err(&e.to_string()))?;
            acc = c.compose(&acc);
        }
        Ok(acc)
    }

    /// `j_1 -> j_2 -> ... -> j_r -> j_1` (positive) or `-> j_1 + n` (negative).
    pub fn cycle(n: usize, entries: &[usize], negative: bool) -> Result<SignedPermutation> {
        let mut map: Vec<usize> = (0..2 * n).collect();
        let mut touched = HashSet::new();
        for &e in entries {
            if e >= 2 * n {
                return Err(Error::InvalidPermutation(format!("{e} is out of range for rank {n}")));
            }
            if !touched.insert(e % n) {
                return Err(Error::InvalidPermutation(format!("{} repeats in a cycle", e % n)));
            }
        }
        let r = entries.len();
        for k in 0..r {
            let a = entries[k];
            let mut b = entries[(k + 1) % r];
            if k + 1 == r && negative {
                b = (b + n) % (2 * n);
            }
            map[a] = b;
            map[(a + n) % (2 * n)] = (b + n) % (2 * n);
        }
        Ok(SignedPermutation { n, map })
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if !c.negative && c.entries.len() == 1 {
                continue;
            }
            any = true;
            let body: Vec<String> = c.entries.iter().map(usize::to_string).collect();
            write!(f, "{}({})", if c.negative { 'n' } else { 'p' }, body.join(" "))?;
        }
        if !any {
            f.write_str("id")?;
        }
        Ok(())
    }
}

/// A partition of a positive integer, parts kept in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Lumps together the parts with equal 2-adic valuation.
    pub fn lump(&self) -> Partition {
        let mut by_val: HashMap<u32, usize> = HashMap::new();
        for &p in &self.0 {
            *by_val.entry(two_adic(p as u64)).or_default() += p;
        }
        Partition::new(by_val.into_values().collect()).expect("nonempty")
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `2,1,1`, `(2,1,1)`, `2 1 1` or exponent form `4^2 1`.
    fn from_str(s: &str) -> Result<Partition> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in t.split(|c: char| c == ',' || c == '+' || c.is_whitespace()).filter(|x| !x.is_empty()) {
            let (p, k) = match tok.split_once('^') {
                Some((p, k)) => (p, k.parse::<usize>().map_err(|_| Error::InvalidPartition(s.into()))?),
                None => (tok, 1),
            };
            let p: usize = p.parse().map_err(|_| Error::InvalidPartition(s.into()))?;
            parts.extend(std::iter::repeat_n(p, k));
        }
        Partition::new(parts).map_err(|_| Error::InvalidPartition(s.into()))
    }
}

/// Orbits of a group of root permutations on a subset of the roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSpace {
    orbits: Vec<Vec<usize>>,
    orbit_of: HashMap<usize, usize>,
    symmetric: Vec<bool>,
}

impl OrbitSpace {
    /// `points` must be closed under every generator; `negation` is the
    /// action of `-1` on root indices.
    pub fn new(points: &[usize], gens: &[Permutation], negation: &Permutation) -> Result<OrbitSpace> {
        let set: HashSet<usize> = points.iter().copied().collect();
        let mut sorted: Vec<usize> = set.iter().copied().collect();
        sorted.sort_unstable();
        let mut orbit_of = HashMap::new();
        let mut orbits = Vec::new();
        for &p in &sorted {
            if orbit_of.contains_key(&p) {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![p];
            orbit_of.insert(p, id);
            let mut queue = VecDeque::from([p]);
            while let Some(x) = queue.pop_front() {
                for g in gens {
                    let y = g.apply(x);
                    if !set.contains(&y) {
                        return Err(Error::Verification("orbit base is not closed under the generators".into()));
                    }
                    if let std::collections::hash_map::Entry::Vacant(e) = orbit_of.entry(y) {
                        e.insert(id);
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        let symmetric = orbits
            .iter()
            .enumerate()
            .map(|(i, o)| orbit_of.get(&negation.apply(o[0])) == Some(&i))
            .collect();
        Ok(OrbitSpace {
            orbits,
            orbit_of,
            symmetric,
        })
    }

    /// Orbits of isometries on an explicit set of vectors.
    pub fn of_vectors(base: &[RootVector], gens: &[Isometry]) -> Result<(OrbitSpace, Vec<RootVector>)> {
        let mut sorted = base.to_vec();
        sorted.sort();
        sorted.dedup();
        let index: HashMap<&RootVector, usize> = sorted.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let perm = |g: &Isometry| -> Result<Permutation> {
            let img = sorted
                .iter()
                .map(|v| g.apply(v.coords()).and_then(|w| index.get(&RootVector::new(w)).copied()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Verification("orbit base is not closed under the generators".into()))?;
            Permutation::new(img)
        };
        let perms = gens.iter().map(perm).collect::<Result<Vec<_>>>()?;
        let neg_img: Vec<usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, v)| index.get(&v.neg()).copied().unwrap_or(i))
            .collect();
        let neg = Permutation::new(neg_img)?;
        let all: Vec<usize> = (0..sorted.len()).collect();
        Ok((OrbitSpace::new(&all, &perms, &neg)?, sorted))
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn representative(&self, i: usize) -> usize {
        self.orbits[i][0]
    }

    pub fn orbit_of(&self, point: usize) -> Option<usize> {
        self.orbit_of.get(&point).copied()
    }

    pub fn is_symmetric(&self, i: usize) -> bool {
        self.symmetric[i]
    }

    pub fn symmetric_count(&self) -> usize {
        self.symmetric.iter().filter(|&&s| s).count()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    /// The permutation of orbits induced by `v`, which must map orbits to orbits.
    pub fn induced(&self, v: &Permutation) -> Result<Permutation> {
        let img = self
            .orbits
            .iter()
            .map(|o| {
                let t = self.orbit_of(v.apply(o[0]))?;
                o.iter().all(|&x| self.orbit_of(v.apply(x)) == Some(t)).then_some(t)
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Verification("element does not permute the orbits".into()))?;
        Permutation::new(img)
    }
}

/// Conjugation-invariant data used to recognize classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ClassFingerprint {
    /// `det(x - a)` on the span of the roots, highest degree first.
    pub char_poly: Vec<i64>,
    pub orbit_sizes: Vec<usize>,
    pub symmetric_orbit_count: usize,
    pub order: u64,
}

pub fn fingerprint(a: &Permutation, sys: &RootSystem) -> ClassFingerprint {
    let m = linalg::to_q(&sys.simple_matrix(a));
    let all: Vec<usize> = (0..sys.len()).collect();
    let os = OrbitSpace::new(&all, std::slice::from_ref(a), &sys.negation_perm()).expect("roots are closed");
    ClassFingerprint {
        char_poly: linalg::char_poly(&m),
        orbit_sizes: os.sizes(),
        symmetric_orbit_count: os.symmetric_count(),
        order: a.order(),
    }
}

fn fixed_space(a: &Permutation, sys: &RootSystem) -> Vec<Vec<i64>> {
    let m = sys.simple_matrix(a);
    let q: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, &x)| Q::from_integer((x - (i == j) as i64) as i128))
                .collect()
        })
        .collect();
    linalg::nullspace(&q, sys.rank())
}

/// No nonzero fixed vector on the span of the roots.
pub fn is_elliptic(a: &Permutation, sys: &RootSystem) -> bool {
    fixed_space(a, sys).is_empty()
}

pub fn is_elliptic_isometry(a: &Isometry, sys: &RootSystem) -> Result<bool> {
    Ok(is_elliptic(&sys.root_action(a)?, sys))
}

/// Result of the smallest-parabolic descent.
#[derive(Debug, Clone)]
pub struct Parabolic {
    /// The simple system whose chamber contains the generic fixed vector.
    pub simple: Vec<RootVector>,
    /// Positions in `simple` orthogonal to the fixed space.
    pub theta: Vec<usize>,
    pub levi: RootSystem,
    /// Action on the roots of `levi`.
    pub restricted: Permutation,
}

/// The smallest parabolic subgroup containing `a`, via a generic fixed vector.
pub fn smallest_parabolic(a: &Permutation, sys: &RootSystem) -> Result<Parabolic> {
    let basis = fixed_space(a, sys);
    let simple = sys.simple_roots();
    let to_ambient = |c: &[i64]| -> Vec<i64> {
        let mut v = vec![0i64; sys.ambient_dim()];
        for (k, s) in c.iter().zip(&simple) {
            for (x, y) in v.iter_mut().zip(s.coords()) {
                *x += k * y;
            }
        }
        v
    };
    let fixed: Vec<Vec<i64>> = basis.iter().map(|c| to_ambient(c)).collect();
    let bound = fixed
        .iter()
        .flat_map(|b| sys.roots().iter().map(move |r| dot(r.coords(), b).abs()))
        .max()
        .unwrap_or(0);
    let big = (2 * bound + 1) as i128;
    let mut chi = vec![0i128; sys.ambient_dim()];
    let mut weight = 1i128;
    for b in &fixed {
        for (x, y) in chi.iter_mut().zip(b) {
            *x += weight * *y as i128;
        }
        weight *= big;
    }
    let pair = |r: &RootVector, v: &[i128]| -> i128 { r.coords().iter().zip(v).map(|(a, b)| *a as i128 * b).sum() };

    // move χ into the fundamental chamber; track u with χ' = u χ
    let mut u = Permutation::identity(sys.len());
    let mut cur = chi.clone();
    'walk: loop {
        for (i, &si) in sys.simple_indices().iter().enumerate() {
            let r = sys.root(si);
            let p = pair(r, &cur);
            if p < 0 {
                let n = r.norm() as i128;
                for (x, y) in cur.iter_mut().zip(r.coords()) {
                    *x -= 2 * p * *y as i128 / n;
                }
                u = sys.simple_reflection_perm(i).compose(&u);
                continue 'walk;
            }
        }
        break;
    }
    let u_inv = u.inverse();
    let new_simple: Vec<RootVector> = sys
        .simple_indices()
        .iter()
        .map(|&s| sys.root(u_inv.apply(s)).clone())
        .collect();
    let theta: Vec<usize> = new_simple
        .iter()
        .enumerate()
        .filter(|(_, r)| pair(r, &chi) == 0)
        .map(|(i, _)| i)
        .collect();
    let levi_simple: Vec<RootVector> = theta.iter().map(|&i| new_simple[i].clone()).collect();
    let levi = RootSystem::from_simple_roots("Levi", sys.ambient_dim(), levi_simple)?;
    let restricted = Permutation::new(
        levi.roots()
            .iter()
            .map(|r| {
                let k = sys.index_of(r).expect("Levi roots are roots");
                levi.index_of(sys.root(a.apply(k)))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Verification("element does not stabilize its Levi subsystem".into()))?,
    )?;
    if !is_elliptic(&restricted, &levi) {
        return Err(Error::Verification("restriction to the smallest parabolic is not elliptic".into()));
    }
    Ok(Parabolic {
        simple: new_simple,
        theta,
        levi,
        restricted,
    })
}

/// `q` with `v w v^{-1} = w^q`, if `v` normalizes `<w>`.
pub fn normalizer_exponent(v: &Permutation, w: &Permutation) -> Option<i64> {
    let target = v.compose(w).compose(&v.inverse());
    let ord = w.order() as i64;
    let mut p = Permutation::identity(w.len());
    for q in 0..ord {
        if p == target {
            return Some(q);
        }
        p = w.compose(&p);
    }
    None
}

/// Conjugacy classes of the group with the given elements and generators,
/// as lists of indices into `elements`.
pub fn conjugacy_classes(elements: &[Permutation], gens: &[Permutation]) -> Vec<Vec<usize>> {
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let inv: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (g, gi) in gens.iter().zip(&inv) {
                let y = g.compose(&elements[x]).compose(gi);
                let j = index[&y];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// Every parabolic subgroup `u W_Θ u^{-1}` of a small Weyl group, as sorted
/// element lists (duplicates removed).
pub fn parabolic_subgroups(sys: &RootSystem, limit: usize) -> Option<Vec<Vec<Permutation>>> {
    let group = sys.weyl_group(limit)?;
    let r = sys.rank();
    let mut out: HashSet<Vec<Permutation>> = HashSet::new();
    for mask in 0u32..(1 << r) {
        let gens: Vec<Permutation> = (0..r)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| sys.simple_reflection_perm(i).clone())
            .collect();
        let sub = sys.generate(&gens, limit)?;
        for u in &group {
            let ui = u.inverse();
            let mut conj: Vec<Permutation> = sub.iter().map(|x| u.compose(x).compose(&ui)).collect();
            conj.sort();
            out.insert(conj);
        }
    }
    let mut v: Vec<Vec<Permutation>> = out.into_iter().collect();
    v.sort();
    Some(v)
}

/// `w_{C_λ}`-style element for a partition, as a root permutation of the
/// classical system `label` of rank `λ.total()`.
pub fn partition_element(label: Label, lambda: &Partition) -> Result<(RootSystem, Permutation)> {
    let sys = RootSystem::classical(label)?;
    let p = SignedPermutation::from_partition(lambda);
    let perm = p.root_action(&sys)?;
    Ok((sys, perm))
}

/// Root vector of a signed-permutation basis element, in scaled coordinates.
pub fn eps_tilde(n: usize, i: usize) -> RootVector {
    let mut v = vec![0; n];
    if i < n {
        v[i] = SCALE;
    } else {
        v[i - n] = -SCALE;
    }
    RootVector::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str, n: usize) -> SignedPermutation {
        SignedPermutation::parse(s, n).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        for (s, n) in [
            ("n(0 1)n(2 3)", 4),
            ("p(0 2)p(1 3)", 4),
            ("n(0)n(1 2)n(3 4)n(5)n(6)n(7)", 8),
            ("p(1 3)n(2)", 4),
            ("id", 3),
            ("n(0 5)", 4),
        ] {
            assert_eq!(sp(s, n).to_string(), s);
        }
        assert_eq!(sp(" n( 0 1 ) ", 2).to_string(), "n(0 1)");
        assert!(SignedPermutation::parse("n(0 0)", 2).is_err());
        assert!(SignedPermutation::parse("x(0)", 2).is_err());
        assert!(SignedPermutation::parse("n(5)", 2).is_err());
    }

    #[test]
    fn products_compose_right_to_left() {
        let a = sp("p(0 1)", 3);
        let b = sp("p(1 2)", 3);
        assert_eq!(sp("p(0 1)p(1 2)", 3), a.compose(&b));
        assert_eq!(a.compose(&b).apply(1), 2);
    }

    #[test]
    fn isometry_examples() {
        let b1 = RootSystem::classical(Label::B(1)).unwrap();
        let m = sp("n(0)", 1).to_isometry_on(&b1).unwrap();
        assert_eq!(m, Isometry::negation(1));
        let m = sp("n(0 1)", 2).to_isometry();
        assert_eq!(m.apply(&[1, 0]).unwrap(), vec![0, 1]);
        assert_eq!(m.apply(&[0, 1]).unwrap(), vec![-1, 0]);
        assert!(sp("id", 3).to_isometry().is_identity());
    }

    #[test]
    fn norm_examples() {
        let w = sp("n(0 1 2 3)", 4);
        assert_eq!(w.norm(3).unwrap().to_string(), "p(1 3)n(2)");
        assert_eq!(w.norm(-3).unwrap().to_string(), "n(1)n(3)");
        assert_eq!(w.norm(-1).unwrap().to_string(), "p(1 7)n(2)");
        assert_eq!(sp("n(0)n(1)n(2 3)", 4).norm(-1).unwrap().to_string(), "n(3)");
        let w = sp("n(0 1)n(2 3 4 5)n(6)n(7)", 8);
        assert_eq!(w.norm(3).unwrap().to_string(), "n(1)p(3 5)n(4)");
        assert_eq!(w.norm(-3).unwrap().to_string(), "n(3)n(5)");
        let w = sp("n(0 1 2 3)n(4 5 6 7)", 8);
        assert_eq!(w.norm(3).unwrap().to_string(), "p(1 3)n(2)p(5 7)n(6)");
        assert_eq!(w.norm(-3).unwrap().to_string(), "n(1)n(3)n(5)n(7)");
        assert_eq!(sp("n(0)n(1 2)n(3 4)n(5)n(6)n(7)", 8).norm(-1).unwrap().to_string(), "n(2)n(4)");
        assert!(w.norm(2).is_err());
    }

    #[test]
    fn norm_conjugates_to_power() {
        let w = sp("n(0 1 2)n(3 4)", 5);
        for q in [1, 5, -1, 7, -7, 11] {
            let v = w.norm(q).unwrap();
            assert_eq!(v.compose(&w).compose(&v.inverse()), w.pow(q));
        }
    }

    #[test]
    fn partitions() {
        let l: Partition = "2,1,1".parse().unwrap();
        assert_eq!(l.lump().to_string(), "(2,2)");
        assert_eq!("1".parse::<Partition>().unwrap().lump().to_string(), "(1)");
        assert_eq!("4,2,2,1,3".parse::<Partition>().unwrap().lump().to_string(), "(4,4,4)");
        assert_eq!("4^2".parse::<Partition>().unwrap().parts(), &[4, 4]);
        assert!("0,1".parse::<Partition>().is_err());
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::all(8).len(), 22);
        assert_eq!(SignedPermutation::from_partition(&"2,1".parse().unwrap()).to_string(), "n(0 1)n(2)");
    }

    #[test]
    fn orbit_space_examples() {
        let a2 = RootSystem::build(Label::A(2)).unwrap();
        let all: Vec<usize> = (0..6).collect();
        let os = OrbitSpace::new(&all, &[a2.negation_perm()], &a2.negation_perm()).unwrap();
        assert_eq!(os.len(), 3);
        assert_eq!(os.symmetric_count(), 3);
        let a4 = RootSystem::build(Label::A(4)).unwrap();
        let cox = sp("p(0 1 2 3 4)", 5).root_action(&a4).unwrap();
        let os = OrbitSpace::new(&(0..20).collect::<Vec<_>>(), &[cox], &a4.negation_perm()).unwrap();
        assert_eq!(os.sizes(), vec![5; 4]);
    }

    #[test]
    fn orbit_space_rejects_open_base() {
        let a2 = RootSystem::build(Label::A(2)).unwrap();
        assert!(OrbitSpace::new(&[0], &[a2.negation_perm()], &a2.negation_perm()).is_err());
    }

    #[test]
    fn fingerprint_examples() {
        let b4 = RootSystem::build(Label::B(4)).unwrap();
        let id = Permutation::identity(b4.len());
        let f = fingerprint(&id, &b4);
        assert_eq!(f.char_poly, vec![1, -4, 6, -4, 1]);
        assert_eq!(f.orbit_sizes, vec![1; 32]);
        let f = fingerprint(&b4.negation_perm(), &b4);
        assert_eq!(f.char_poly, vec![1, 4, 6, 4, 1]);
        assert_eq!(f.orbit_sizes, vec![2; 16]);
        let cox = sp("n(0 1 2 3)", 4).root_action(&b4).unwrap();
        assert_eq!(fingerprint(&cox, &b4).order, 8);
    }

    #[test]
    fn ellipticity() {
        let a2 = RootSystem::build(Label::A(2)).unwrap();
        assert!(is_elliptic(&a2.negation_perm(), &a2));
        assert!(!is_elliptic(&a2.reflection_perm(a2.simple_indices()[0]), &a2));
        let b3 = RootSystem::build(Label::B(3)).unwrap();
        for l in Partition::all(3) {
            let w = SignedPermutation::from_partition(&l).root_action(&b3).unwrap();
            assert!(is_elliptic(&w, &b3));
        }
    }

    #[test]
    fn smallest_parabolic_examples() {
        let a2 = RootSystem::build(Label::A(2)).unwrap();
        let p = smallest_parabolic(&a2.negation_perm(), &a2).unwrap();
        assert_eq!(p.theta, vec![0, 1]);
        let p = smallest_parabolic(&Permutation::identity(6), &a2).unwrap();
        assert!(p.theta.is_empty());
        let alpha = a2.simple_indices()[0];
        let p = smallest_parabolic(&a2.reflection_perm(alpha), &a2).unwrap();
        assert_eq!(p.levi.len(), 2);
        assert!(p.levi.index_of(a2.root(alpha)).is_some());
        assert_eq!(p.restricted, p.levi.negation_perm());
    }

    #[test]
    fn normalizer_exponent_examples() {
        let b4 = RootSystem::build(Label::B(4)).unwrap();
        let w = sp("n(0 1 2 3)", 4);
        let wp = w.root_action(&b4).unwrap();
        let v = w.norm(3).unwrap().root_action(&b4).unwrap();
        assert_eq!(normalizer_exponent(&v, &wp), Some(3));
        let s = b4.simple_reflection_perm(0).clone();
        assert_eq!(normalizer_exponent(&s, &wp), None);
    }

    #[test]
    fn b3_classes() {
        let b3 = RootSystem::build(Label::B(3)).unwrap();
        let g = b3.weyl_group(100).unwrap();
        let gens: Vec<Permutation> = (0..3).map(|i| b3.simple_reflection_perm(i).clone()).collect();
        let classes = conjugacy_classes(&g, &gens);
        assert_eq!(classes.len(), 10);
        for c in classes {
            let f = fingerprint(&g[c[0]], &b3);
            assert!(c.iter().all(|&i| fingerprint(&g[i], &b3) == f));
        }
    }
}
