//! The set `R_w` of roots on which a lift of `w` acts trivially in every
//! fixing power.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::arith::Permutation;
use crate::classify;
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::rootsys::{Label, RootSystem, SCALE};
use crate::weyl::{is_elliptic, Partition, SignedPermutation};

/// The defining module of a classical group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LiftKind {
    /// `GL_n` on `v_0 .. v_{n-1}`.
    A,
    /// `SO_{2n+1}` on `v_i, v̌_i, e`.
    B,
    /// `Sp_{2n}` on `v_i, v̌_i`.
    C,
    /// `SO_{2n}` on `v_i, v̌_i`.
    D,
}

impl LiftKind {
    pub fn of(label: Label) -> Result<LiftKind> {
        match label {
            Label::A(_) => Ok(LiftKind::A),
            Label::B(_) => Ok(LiftKind::B),
            Label::C(_) => Ok(LiftKind::C),
            Label::D(_) => Ok(LiftKind::D),
            other => Err(Error::UnsupportedLabel(other.to_string())),
        }
    }

    fn alternating(self) -> bool {
        self == LiftKind::C
    }
}

/// A monomial matrix `u_a -> c_a u_{p(a)}` with `c_a = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialLift {
    kind: LiftKind,
    n: usize,
    image: Vec<usize>,
    coeff: Vec<i64>,
}

impl MonomialLift {
    /// An arbitrary monomial matrix; checked to preserve the form.
    pub fn new(kind: LiftKind, n: usize, image: Vec<usize>, coeff: Vec<i64>) -> Result<MonomialLift> {
        let dim = match kind {
            LiftKind::A => n,
            LiftKind::B => 2 * n + 1,
            LiftKind::C | LiftKind::D => 2 * n,
        };
        if image.len() != dim || coeff.len() != dim || coeff.iter().any(|c| c.abs() != 1) {
            return Err(Error::InvalidPermutation(format!("monomial matrix of size {dim}")));
        }
        Permutation::new(image.clone())?;
        let lift = MonomialLift { kind, n, image, coeff };
        if !lift.preserves_form() {
            return Err(Error::Verification("monomial matrix does not preserve the form".into()));
        }
        Ok(lift)
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn kind(&self) -> LiftKind {
        self.kind
    }

    /// `v_i`, `v̌_i` or `e` for each axis.
    pub fn basis_labels(&self) -> Vec<String> {
        (0..self.dim())
            .map(|a| match a {
                a if a < self.n => format!("v{a}"),
                a if a < 2 * self.n && self.kind != LiftKind::A => format!("v̌{}", a - self.n),
                _ => "e".to_string(),
            })
            .collect()
    }

    /// Dense matrix, column `a` holding the image of `u_a`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut m = vec![vec![0; d]; d];
        for a in 0..d {
            m[self.image[a]][a] = self.coeff[a];
        }
        m
    }

    fn dual(&self, a: usize) -> Option<usize> {
        match self.kind {
            LiftKind::A => None,
            _ if a == 2 * self.n => Some(a),
            _ => Some((a + self.n) % (2 * self.n)),
        }
    }

    /// `B(u_a, u_{a*})`.
    fn pairing(&self, a: usize) -> i64 {
        if a == 2 * self.n {
            1
        } else if self.kind.alternating() {
            if a < self.n {
                -2
            } else {
                2
            }
        } else {
            2
        }
    }

    fn preserves_form(&self) -> bool {
        if self.kind == LiftKind::A {
            return true;
        }
        (0..self.dim()).all(|a| {
            let b = self.dual(a).unwrap();
            let pa = self.image[a];
            self.dual(pa) == Some(self.image[b])
                && self.coeff[a] * self.coeff[b] * self.pairing(pa) == self.pairing(a)
        })
    }

    pub fn compose(&self, other: &MonomialLift) -> MonomialLift {
        let d = self.dim();
        MonomialLift {
            kind: self.kind,
            n: self.n,
            image: (0..d).map(|a| self.image[other.image[a]]).collect(),
            coeff: (0..d).map(|a| self.coeff[other.image[a]] * other.coeff[a]).collect(),
        }
    }

    pub fn identity(&self) -> MonomialLift {
        let d = self.dim();
        MonomialLift {
            kind: self.kind,
            n: self.n,
            image: (0..d).collect(),
            coeff: vec![1; d],
        }
    }

    pub fn pow(&self, k: u64) -> MonomialLift {
        (0..k).fold(self.identity(), |acc, _| self.compose(&acc))
    }

    pub fn order(&self) -> u64 {
        let id = self.identity();
        let mut p = self.clone();
        let mut k = 1;
        while p != id {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    /// The induced signed permutation of the weights `ε̃_a`.
    pub fn signed_permutation(&self) -> SignedPermutation {
        SignedPermutation::from_images(&self.image[..self.n]).expect("lift permutes weights")
    }

    /// Scalar of `self` on the root vector `E_{xy} + κ E_{y*x*}`, if that
    /// root space is fixed.
    fn root_scalar(&self, x: usize, y: usize) -> Option<Q> {
        let mut terms: HashMap<(usize, usize), Q> = HashMap::new();
        let add = |map: &mut HashMap<(usize, usize), Q>, i: usize, j: usize, c: Q| {
            *map.entry((i, j)).or_insert_with(|| Q::from_integer(0)) += c;
        };
        let mut x_terms = HashMap::new();
        add(&mut x_terms, x, y, Q::from_integer(1));
        if let (Some(xs), Some(ys)) = (self.dual(x), self.dual(y)) {
            let kappa = Q::new(-self.pairing(x) as i128, self.pairing(y) as i128);
            add(&mut x_terms, ys, xs, kappa);
        }
        x_terms.retain(|_, c| *c != Q::from_integer(0));
        // g E_{ij} g^{-1} = (c_i / c_j) E_{p(i) p(j)}
        for (&(i, j), &c) in &x_terms {
            let f = Q::new((self.coeff[i] * self.coeff[j]) as i128, 1);
            add(&mut terms, self.image[i], self.image[j], c * f);
        }
        terms.retain(|_, c| *c != Q::from_integer(0));
        let (&key, &c0) = x_terms.iter().next()?;
        let ratio = *terms.get(&key)? / c0;
        let same = terms.len() == x_terms.len()
            && x_terms.iter().all(|(k, &c)| terms.get(k) == Some(&(c * ratio)));
        same.then_some(ratio)
    }
}

impl fmt::Display for MonomialLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.basis_labels();
        let parts: Vec<String> = (0..self.dim())
            .map(|a| {
                let s = if self.coeff[a] < 0 { "-" } else { "" };
                format!("{}->{}{}", labels[a], s, labels[self.image[a]])
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// The canonical lift of a signed permutation: coefficient 1 along each
/// cycle from its least element, the antipodal coefficients forced by the
/// form, and `e -> (-1)^{#negative cycles} e` in type B.
pub fn build_lift(kind: LiftKind, p: &SignedPermutation) -> Result<MonomialLift> {
    let n = p.rank();
    if kind == LiftKind::A {
        if p.negative_cycle_count() > 0 || p.images().iter().any(|&j| j >= n) {
            return Err(Error::Unsupported("sign changes have no monomial lift in GL_n".into()));
        }
        return MonomialLift::new(kind, n, p.images().to_vec(), vec![1; n]);
    }
    let sigma = |a: usize| if a < n { -1 } else { 1 };
    let mut image: Vec<usize> = (0..2 * n).map(|a| p.apply(a)).collect();
    let mut coeff = vec![0i64; 2 * n];
    for c in p.cycles() {
        for &a in &c.entries {
            coeff[a] = 1;
            let b = (a + n) % (2 * n);
            coeff[b] = if kind.alternating() { sigma(a) * sigma(p.apply(a)) } else { 1 };
        }
    }
    if kind == LiftKind::B {
        image.push(2 * n);
        coeff.push(if p.negative_cycle_count().is_multiple_of(2) { 1 } else { -1 });
    }
    MonomialLift::new(kind, n, image, coeff)
}

/// The lift `ẇ` of `w_{C_λ}` for a partition.
pub fn build_partition_lift(kind: LiftKind, lambda: &Partition) -> Result<MonomialLift> {
    build_lift(kind, &SignedPermutation::from_partition(lambda))
}

/// Axis pair `(x, y)` with the root space of `α` spanned by `E_{xy} + ...`.
fn weight_pair(kind: LiftKind, n: usize, coords: &[i64]) -> Option<(usize, usize)> {
    let nz: Vec<(usize, i64)> = coords.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
    let tilde = |i: usize, s: i64| if s > 0 { i } else { i + n };
    match nz.as_slice() {
        [(i, a), (j, b)] if a.abs() == SCALE && b.abs() == SCALE => {
            if kind == LiftKind::A {
                Some(if *a > 0 { (*i, *j) } else { (*j, *i) })
            } else {
                Some((tilde(*i, *a), tilde(*j, -*b)))
            }
        }
        [(i, a)] if a.abs() == SCALE && kind == LiftKind::B => Some((tilde(*i, *a), 2 * n)),
        [(i, a)] if a.abs() == 2 * SCALE && kind == LiftKind::C => {
            let x = tilde(*i, *a);
            Some((x, (x + n) % (2 * n)))
        }
        _ => None,
    }
}

/// Whether the lift acts trivially on the root space of root `alpha` in
/// every power that fixes it.
pub fn root_in_r_theta(lift: &MonomialLift, alpha: usize, sys: &RootSystem) -> Result<bool> {
    let (x, y) = weight_pair(lift.kind, lift.n, sys.root(alpha).coords())
        .ok_or_else(|| Error::NotARoot(sys.root(alpha).to_string(), sys.name().to_string()))?;
    // the fixing powers are the multiples of the least one
    let ord = lift.order();
    let mut g = lift.clone();
    for _ in 1..=ord {
        if let Some(s) = g.root_scalar(x, y) {
            return Ok(s == Q::from_integer(1));
        }
        g = lift.compose(&g);
    }
    Err(Error::Verification("no power of the lift fixes the root".into()))
}

pub fn lump_partition(lambda: &Partition) -> Partition {
    lambda.lump()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Asserted,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Computed => "computed",
            Provenance::Asserted => "asserted",
        })
    }
}

/// `R_θ` as a set of root indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RThetaSet {
    pub roots: Vec<usize>,
    pub provenance: Provenance,
    pub note: String,
}

impl RThetaSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.roots.binary_search(&i).is_ok()
    }

    fn all(sys: &RootSystem, provenance: Provenance, note: &str) -> RThetaSet {
        RThetaSet {
            roots: (0..sys.len()).collect(),
            provenance,
            note: note.to_string(),
        }
    }
}

/// `R_θ` for an explicit lift on its classical system.
pub fn r_theta_of_lift(lift: &MonomialLift, sys: &RootSystem) -> Result<RThetaSet> {
    let mut roots = Vec::new();
    for i in 0..sys.len() {
        if root_in_r_theta(lift, i, sys)? {
            roots.push(i);
        }
    }
    Ok(RThetaSet {
        roots,
        provenance: Provenance::Computed,
        note: format!("monomial lift {}", lift.signed_permutation()),
    })
}

/// Reads off the signed permutation of a root permutation of a classical
/// system in its standard coordinates.
pub fn signed_permutation_of(w: &Permutation, sys: &RootSystem) -> Result<SignedPermutation> {
    let n = sys.ambient_dim();
    if let Some(Label::A(_)) = sys.label() {
        if !sys.is_weyl(w) {
            return Err(Error::Unsupported("outer automorphism of type A".into()));
        }
        let word = sys.decompose_perm(w).word;
        let mut p = SignedPermutation::identity(n);
        for i in word.iter().rev() {
            p = SignedPermutation::cycle(n, &[*i, *i + 1], false)?.compose(&p);
        }
        return Ok(p);
    }
    let m = sys.isometry_from_root_perm(w)?;
    let images = (0..n)
        .map(|j| {
            let col: Vec<Q> = (0..n).map(|i| m.entry(i, j)).collect();
            let nz: Vec<usize> = (0..n).filter(|&i| col[i] != Q::from_integer(0)).collect();
            match nz.as_slice() {
                [i] if col[*i] == Q::from_integer(1) => Some(*i),
                [i] if col[*i] == Q::from_integer(-1) => Some(*i + n),
                _ => None,
            }
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Unsupported("element is not a signed permutation".into()))?;
    SignedPermutation::from_images(&images)
}

/// `R_w` for an elliptic `w`.
pub fn compute_r_w(w: &Permutation, sys: &RootSystem) -> Result<RThetaSet> {
    if !is_elliptic(w, sys) {
        return Err(Error::NotElliptic(sys.name().to_string()));
    }
    if sys.components().len() > 1 {
        return r_w_reducible(w, sys);
    }
    let label = sys.label().unwrap_or(sys.components()[0].cartan);
    let classical_coords = sys.blocks().len() == 1;
    match label {
        Label::A(_) if !sys.is_weyl(w) => {
            if *w == sys.negation_perm() {
                Ok(RThetaSet::all(sys, Provenance::Asserted, "R_{-1} = R"))
            } else {
                Err(Error::Unsupported("outer elliptic elements of type A other than -1".into()))
            }
        }
        Label::A(_) | Label::B(_) | Label::C(_) | Label::D(_) if classical_coords => {
            let p = signed_permutation_of(w, sys)?;
            let lift = build_lift(LiftKind::of(label)?, &p)?;
            r_theta_of_lift(&lift, sys)
        }
        Label::G2 if *w == sys.negation_perm() => Ok(RThetaSet::all(sys, Provenance::Asserted, "R_{-1} = R")),
        Label::F4 | Label::E(_) => r_w_exceptional(w, sys),
        _ => Err(Error::Unsupported(format!("R_w on {}", sys.name()))),
    }
}

fn r_w_exceptional(w: &Permutation, sys: &RootSystem) -> Result<RThetaSet> {
    if *w == sys.negation_perm() {
        return Ok(RThetaSet::all(sys, Provenance::Asserted, "R_{-1} = R"));
    }
    let class = classify::identify(w, sys)?;
    if sys.label() == Some(Label::F4) && class.name == "A3xA1~" {
        let mut roots: Vec<usize> = (0..sys.len()).filter(|&i| sys.is_long(i)).collect();
        let stable: Vec<Vec<usize>> = short_octets(sys)
            .into_iter()
            .filter(|o| o.iter().all(|&i| o.contains(&w.apply(i))))
            .collect();
        if stable.len() != 1 {
            return Err(Error::Verification("expected exactly one stable short octet".into()));
        }
        roots.extend(&stable[0]);
        roots.sort_unstable();
        return Ok(RThetaSet {
            roots,
            provenance: Provenance::Asserted,
            note: "long roots and the stable short octet (a B4 subsystem)".into(),
        });
    }
    Ok(RThetaSet::all(sys, Provenance::Asserted, &format!("R_w = R for class {}", class.name)))
}

/// The three classes of eight mutually orthogonal-or-opposite short roots of F4.
pub fn short_octets(sys: &RootSystem) -> Vec<Vec<usize>> {
    let short: Vec<usize> = (0..sys.len()).filter(|&i| !sys.is_long(i)).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &a in &short {
        if out.iter().any(|o| o.contains(&a)) {
            continue;
        }
        let ra = sys.root(a);
        let class: Vec<usize> = short
            .iter()
            .copied()
            .filter(|&b| b == a || b == sys.negation_index(a) || ra.dot(sys.root(b)) == 0)
            .collect();
        out.push(class);
    }
    out
}

/// Components as orbits of `w`; for each, `R_{w^f}` on one member is moved
/// around the orbit by powers of `w`.
fn r_w_reducible(w: &Permutation, sys: &RootSystem) -> Result<RThetaSet> {
    let comps = sys.components();
    let comp_img = |c: usize, p: &Permutation| sys.component_of(p.apply(comps[c].roots[0]));
    let mut done = vec![false; comps.len()];
    let mut roots = Vec::new();
    let mut provenance = Provenance::Computed;
    for c in 0..comps.len() {
        if done[c] {
            continue;
        }
        let mut cycle = vec![c];
        let mut d = comp_img(c, w);
        while d != c {
            cycle.push(d);
            d = comp_img(d, w);
        }
        let f = cycle.len() as i64;
        let (sub, embed) = component_system(sys, c)?;
        let wf = w.pow(f);
        let local = restrict(&wf, sys, &sub, &embed)?;
        let part = compute_r_w(&local, &sub)?;
        if part.provenance == Provenance::Asserted {
            provenance = Provenance::Asserted;
        }
        let mut wk = Permutation::identity(sys.len());
        for &comp in &cycle {
            done[comp] = true;
            roots.extend(part.roots.iter().map(|&i| wk.apply(embed[i])));
            wk = w.compose(&wk);
        }
    }
    roots.sort_unstable();
    Ok(RThetaSet {
        roots,
        provenance,
        note: "assembled over components".into(),
    })
}

/// The component `c` as a root system in its own coordinates, with the map
/// from its root indices to those of `sys`.
pub fn component_system(sys: &RootSystem, c: usize) -> Result<(RootSystem, Vec<usize>)> {
    let comp = &sys.components()[c];
    let label = comp.cartan;
    let standard = sys.blocks().iter().find(|b| b.label.rank() == label.rank() && {
        let r = sys.root(comp.roots[0]).coords();
        r.iter().enumerate().all(|(i, &x)| x == 0 || (b.offset..b.offset + b.len).contains(&i))
    });
    let (sub, slice): (RootSystem, Option<(usize, usize)>) = match standard {
        Some(b) => (RootSystem::classical(b.label)?, Some((b.offset, b.len))),
        None => {
            let simple = comp.simple.iter().map(|&i| sys.root(sys.simple_indices()[i]).clone()).collect();
            (RootSystem::from_simple_roots(&label.to_string(), sys.ambient_dim(), simple)?, None)
        }
    };
    let embed = sub
        .roots()
        .iter()
        .map(|r| {
            let full = match slice {
                Some((off, len)) => {
                    let mut v = vec![0; sys.ambient_dim()];
                    v[off..off + len].copy_from_slice(r.coords());
                    crate::rootsys::RootVector::new(v)
                }
                None => r.clone(),
            };
            sys.index_of(&full)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Verification("component embedding".into()))?;
    Ok((sub, embed))
}

/// Restriction of `p` (stabilizing the image of `embed`) to the subsystem.
pub fn restrict(p: &Permutation, sys: &RootSystem, sub: &RootSystem, embed: &[usize]) -> Result<Permutation> {
    let back: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &j)| (j, i)).collect();
    let img = embed
        .iter()
        .map(|&j| back.get(&p.apply(j)).copied())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Verification(format!("element does not stabilize a component of {}", sys.name())))?;
    let _ = sub;
    Permutation::new(img)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn lift_examples() {
        let c1 = build_partition_lift(LiftKind::C, &part("1")).unwrap();
        assert_eq!(c1.to_string(), "v0->v̌0 v̌0->-v0");
        assert_eq!(c1.order(), 4);
        let b2 = build_partition_lift(LiftKind::B, &part("2")).unwrap();
        assert_eq!(b2.to_string(), "v0->v1 v1->v̌0 v̌0->v̌1 v̌1->v0 e->-e");
        let d4 = build_partition_lift(LiftKind::D, &part("2,2")).unwrap();
        assert_eq!(d4.dim(), 8);
        assert_eq!(d4.signed_permutation().to_string(), "n(0 1)n(2 3)");
    }

    #[test]
    fn rejects_form_breaking_matrix() {
        assert!(MonomialLift::new(LiftKind::C, 1, vec![1, 0], vec![1, 1]).is_err());
        assert!(MonomialLift::new(LiftKind::D, 1, vec![1, 0], vec![1, 1]).is_ok());
    }

    #[test]
    fn type_b_and_d_give_everything() {
        for n in 1..=5 {
            for l in Partition::all(n) {
                let b = RootSystem::classical(Label::B(n)).unwrap();
                let lift = build_partition_lift(LiftKind::B, &l).unwrap();
                assert_eq!(r_theta_of_lift(&lift, &b).unwrap().len(), b.len(), "B {l}");
                if n >= 2 {
                    let d = RootSystem::classical(Label::D(n)).unwrap();
                    let lift = build_partition_lift(LiftKind::D, &l).unwrap();
                    assert_eq!(r_theta_of_lift(&lift, &d).unwrap().len(), d.len(), "D {l}");
                }
            }
        }
    }

    #[test]
    fn type_c_example() {
        let c4 = RootSystem::classical(Label::C(4)).unwrap();
        let lift = build_partition_lift(LiftKind::C, &part("2,1,1")).unwrap();
        let r = r_theta_of_lift(&lift, &c4).unwrap();
        // C2 x C2: 8 + 8 roots
        assert_eq!(r.len(), 16);
        let long0 = c4.index_of(&crate::rootsys::RootVector::new(vec![4, 0, 0, 0])).unwrap();
        assert!(r.contains(long0));
        let mixed = c4.index_of(&crate::rootsys::RootVector::new(vec![2, 0, 2, 0])).unwrap();
        assert!(!r.contains(mixed));
        let odd = c4.index_of(&crate::rootsys::RootVector::new(vec![0, 0, 2, -2])).unwrap();
        assert!(r.contains(odd));
    }

    #[test]
    fn gl6_counterexample() {
        // p = (1 3)(2 4 5) with v_0 -> -v_0
        let image = vec![0, 3, 4, 1, 5, 2];
        let lift = MonomialLift::new(LiftKind::A, 6, image, vec![-1, 1, 1, 1, 1, 1]).unwrap();
        let a5 = RootSystem::build(Label::A(5)).unwrap();
        let idx = |i: usize, j: usize| {
            let mut v = vec![0; 6];
            v[i] = 2;
            v[j] = -2;
            a5.index_of(&crate::rootsys::RootVector::new(v)).unwrap()
        };
        assert!(root_in_r_theta(&lift, idx(0, 1), &a5).unwrap());
        assert!(root_in_r_theta(&lift, idx(1, 2), &a5).unwrap());
        assert!(!root_in_r_theta(&lift, idx(0, 2), &a5).unwrap());
        let s = a5.reflection_perm(idx(0, 1));
        assert_eq!(s.apply(idx(1, 2)), idx(0, 2));
    }

    #[test]
    fn r_w_of_b4_coxeter() {
        let b4 = RootSystem::build(Label::B(4)).unwrap();
        let w = SignedPermutation::parse("n(0 1 2 3)", 4).unwrap().root_action(&b4).unwrap();
        let r = compute_r_w(&w, &b4).unwrap();
        assert_eq!(r.len(), 32);
        assert_eq!(r.provenance, Provenance::Computed);
    }

    #[test]
    fn r_w_rejects_non_elliptic() {
        let b2 = RootSystem::build(Label::B(2)).unwrap();
        let s = b2.simple_reflection_perm(0).clone();
        assert!(matches!(compute_r_w(&s, &b2), Err(Error::NotElliptic(_))));
    }

    #[test]
    fn r_w_of_minus_one() {
        for l in ["A3", "G2", "F4", "E6"] {
            let sys = RootSystem::build(l.parse().unwrap()).unwrap();
            assert_eq!(compute_r_w(&sys.negation_perm(), &sys).unwrap().len(), sys.len(), "{l}");
        }
    }

    #[test]
    fn signed_permutation_recovery() {
        let c3 = RootSystem::build(Label::C(3)).unwrap();
        let p = SignedPermutation::parse("n(0 2)n(1)", 3).unwrap();
        let w = p.root_action(&c3).unwrap();
        assert_eq!(signed_permutation_of(&w, &c3).unwrap(), p);
        let a3 = RootSystem::build(Label::A(3)).unwrap();
        let p = SignedPermutation::parse("p(0 2 1 3)", 4).unwrap();
        let w = p.root_action(&a3).unwrap();
        assert_eq!(signed_permutation_of(&w, &a3).unwrap(), p);
    }
}
