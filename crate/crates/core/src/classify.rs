//! Elliptic classes of 2-power order and the coordinate dictionaries that
//! realize them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{Permutation, Sign};
use crate::error::{Error, Result};
use crate::rootsys::{reflection_matrix, Isometry, Label, RootSystem, RootVector};
use crate::rtheta::signed_permutation_of;
use crate::weyl::{conjugacy_classes, fingerprint, is_elliptic, ClassFingerprint, Partition, SignedPermutation};

const REGISTRY_TOML: &str = include_str!("../data/classes.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Centralizer,
    Normalizer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
pub struct PerpOrbits {
    pub orbits: usize,
    pub size: usize,
    pub symmetric: usize,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub descriptor: String,
    pub role: Role,
    #[serde(with = "sign_text")]
    pub expected: Sign,
    #[serde(default)]
    pub perp_cycle_type: Option<String>,
    #[serde(default)]
    pub perp_symmetric: Option<usize>,
}

mod sign_text {
    use crate::arith::Sign;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &Sign, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&s.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Sign, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One registry row.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct ClassEntry {
    pub ambient: String,
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub cycles: String,
    pub order: u64,
    pub kernel: String,
    /// Generators of the kernel as described in the table, where it is small.
    #[serde(default)]
    pub kernel_generators: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
    #[serde(default)]
    pub perp: Option<PerpOrbits>,
    #[serde(default)]
    pub perp_e7: Option<usize>,
    #[serde(default)]
    pub perp_e6: Option<usize>,
    #[serde(default, rename = "generator")]
    pub generators: Vec<GeneratorSpec>,
}

impl ClassEntry {
    pub fn ambient_label(&self) -> Label {
        self.ambient.parse().expect("registry labels are validated on load")
    }

    pub fn matches_name(&self, name: &str) -> bool {
        let eq = |a: &str| a.eq_ignore_ascii_case(name.trim());
        eq(&self.name) || self.aliases.iter().any(|a| eq(a))
    }

    pub fn generator(&self, name: &str) -> Option<&GeneratorSpec> {
        self.generators.iter().find(|g| g.name == name)
    }
}

#[derive(Debug, Deserialize)]
pub struct Registry {
    #[serde(rename = "class")]
    classes: Vec<ClassEntry>,
}

impl Registry {
    pub fn parse(text: &str) -> Result<Registry> {
        let reg: Registry =
            toml::from_str(text).map_err(|e| Error::parse("class registry", "classes.toml", e.to_string()))?;
        for c in &reg.classes {
            let label: Label = c.ambient.parse()?;
            if !matches!(label, Label::F4 | Label::G2 | Label::E(_)) {
                return Err(Error::UnsupportedLabel(c.ambient.clone()));
            }
            if !c.order.is_power_of_two() {
                return Err(Error::parse("class registry", &c.name, "order is not a power of 2"));
            }
            if let Some(ct) = c.generators.iter().filter_map(|g| g.perp_cycle_type.as_deref()).next() {
                parse_cycle_type(ct)?;
            }
        }
        Ok(reg)
    }

    /// The registry compiled into the crate.
    pub fn builtin() -> &'static Registry {
        static REG: OnceLock<Registry> = OnceLock::new();
        REG.get_or_init(|| Registry::parse(REGISTRY_TOML).expect("built-in registry parses"))
    }

    pub fn classes(&self) -> &[ClassEntry] {
        &self.classes
    }

    pub fn for_ambient(&self, label: Label) -> impl Iterator<Item = &ClassEntry> {
        let name = label.to_string();
        self.classes.iter().filter(move |c| c.ambient == name)
    }

    pub fn find(&self, label: Label, name: &str) -> Result<&ClassEntry> {
        self.for_ambient(label)
            .find(|c| c.matches_name(name))
            .ok_or_else(|| Error::UnknownClass(format!("{name} in {label}")))
    }
}

/// A realized exceptional class.
#[derive(Debug, Clone)]
pub struct ClassLabel {
    pub name: String,
    pub ambient: Label,
    pub representative: Isometry,
    pub expected: ClassFingerprint,
    pub entry: &'static ClassEntry,
    pub sys: RootSystem,
    pub signed: SignedPermutation,
    pub w: Permutation,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {} ({})", self.name, self.ambient, self.signed)
    }
}

/// A linear map carrying the roots of `source` into those of `target`.
#[derive(Debug, Clone)]
pub struct EmbeddingDictionary {
    pub source: RootSystem,
    pub target: RootSystem,
    pub map: Isometry,
    images: Vec<usize>,
}

impl EmbeddingDictionary {
    pub fn new(source: RootSystem, target: RootSystem, map: Isometry) -> Result<EmbeddingDictionary> {
        if map.dim() != source.ambient_dim() || map.dim() != target.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_dim(),
                got: map.dim(),
            });
        }
        if !map.is_orthogonal() {
            return Err(Error::NotOrthogonal);
        }
        let images = source
            .roots()
            .iter()
            .map(|r| {
                let v = map.apply(r.coords())?;
                target.index_of(&RootVector::new(v))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotARoot(source.name().into(), target.name().into()))?;
        Ok(EmbeddingDictionary {
            source,
            target,
            map,
            images,
        })
    }

    /// `B4 ⊂ F4` in the shared classical coordinates.
    pub fn b4_in_f4() -> Result<EmbeddingDictionary> {
        EmbeddingDictionary::new(
            RootSystem::build(Label::B(4))?,
            RootSystem::build(Label::F4)?,
            Isometry::identity(4),
        )
    }

    /// `D8 ⊂ E8` in the shared classical coordinates.
    pub fn d8_in_e8() -> Result<EmbeddingDictionary> {
        EmbeddingDictionary::new(
            RootSystem::build(Label::D(8))?,
            RootSystem::build(Label::E(8))?,
            Isometry::identity(8),
        )
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Pushes a root permutation of `source` given by an isometry to `target`.
    pub fn push(&self, a: &Isometry) -> Result<Permutation> {
        let m = self.map.compose(a).compose(&self.map.inverse());
        self.target.root_action(&m)
    }

    /// Source roots orthogonal-complement check: every pair of images has the
    /// same inner product as its preimages.
    pub fn preserves_inner_products(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.source.root(i).dot(self.source.root(j))
                    == self.target.root(self.images[i]).dot(self.target.root(self.images[j]))
            })
        })
    }
}

/// A classical elliptic class of 2-power order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalClass {
    pub label: Label,
    pub name: String,
    pub partition: Partition,
    /// Cycles are negative except for the type A Coxeter class.
    pub negative: bool,
    pub in_weyl: bool,
    pub order: u64,
}

fn powers_of_two_partitions(n: usize) -> Vec<Partition> {
    Partition::all(n)
        .into_iter()
        .filter(|p| p.parts().iter().all(|x| x.is_power_of_two()))
        .collect()
}

/// Elliptic classes of 2-power order of a classical type. Type `A_{n-1}`
/// lives on `n` coordinates.
pub fn classical_elliptic_2power(label: Label) -> Result<Vec<ClassicalClass>> {
    let mut out = Vec::new();
    match label {
        Label::A(r) if r >= 1 => {
            let n = r + 1;
            if n.is_power_of_two() {
                out.push(ClassicalClass {
                    label,
                    name: "Coxeter".into(),
                    partition: Partition::new(vec![n])?,
                    negative: false,
                    in_weyl: true,
                    order: n as u64,
                });
            }
            if n >= 3 {
                out.push(ClassicalClass {
                    label,
                    name: "-1".into(),
                    partition: Partition::new(vec![1; n])?,
                    negative: true,
                    in_weyl: false,
                    order: 2,
                });
            }
        }
        Label::B(n) | Label::C(n) | Label::D(n) if n >= 1 => {
            for p in powers_of_two_partitions(n) {
                let order = 2 * *p.parts().iter().max().expect("nonempty") as u64;
                let in_weyl = !matches!(label, Label::D(_)) || p.parts().len() % 2 == 0;
                out.push(ClassicalClass {
                    label,
                    name: format!("C{p}"),
                    partition: p,
                    negative: true,
                    in_weyl,
                    order,
                });
            }
        }
        _ => return Err(Error::UnsupportedLabel(label.to_string())),
    }
    Ok(out)
}

/// Polynomial product, coefficients highest degree first.
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; `None` on a nonzero remainder.
fn poly_div(a: &[i64], d: &[i64]) -> Option<Vec<i64>> {
    let mut rem = a.to_vec();
    if d.len() > rem.len() {
        return None;
    }
    let mut q = vec![0; rem.len() - d.len() + 1];
    for i in 0..q.len() {
        let c = rem[i];
        q[i] = c;
        for (j, y) in d.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    rem.iter().all(|&x| x == 0).then_some(q)
}

/// `det(x - w)` read off the cycles: `x^r + 1` per negative and `x^r - 1` per
/// positive cycle of length `r`.
pub fn char_poly_of_cycles(p: &SignedPermutation) -> Vec<i64> {
    let mut out = vec![1];
    for c in p.cycles() {
        let r = c.entries.len();
        let mut f = vec![0; r + 1];
        f[0] = 1;
        f[r] = if c.negative { 1 } else { -1 };
        out = poly_mul(&out, &f);
    }
    out
}

/// The ambient system of a registry label.
pub fn ambient_system(label: Label) -> Result<RootSystem> {
    match label {
        Label::F4 | Label::G2 | Label::E(_) => RootSystem::build(label),
        _ => Err(Error::UnsupportedLabel(label.to_string())),
    }
}

/// Roots with a half-integral coordinate: `F4 ∖ B4`, `E8 ∖ D8` and their
/// intersections with `E7`, `E6`.
pub fn perp_roots(sys: &RootSystem) -> Vec<usize> {
    (0..sys.len())
        .filter(|&i| sys.root(i).coords().iter().any(|x| x % 2 != 0))
        .collect()
}

/// Builds, checks and returns the representative of a registry class.
pub fn exceptional_representative(name: &str, ambient: Label) -> Result<ClassLabel> {
    let entry = Registry::builtin().find(ambient, name)?;
    let sys = ambient_system(ambient)?;
    let dim = sys.ambient_dim();
    let signed = SignedPermutation::parse(&entry.cycles, dim)?;
    let (representative, w) = match ambient {
        Label::F4 => {
            let dict = EmbeddingDictionary::b4_in_f4()?;
            let m = signed.to_isometry();
            dict.source.root_action(&m)?;
            (m.clone(), dict.push(&m)?)
        }
        Label::E(8) => {
            let dict = EmbeddingDictionary::d8_in_e8()?;
            let m = signed.to_isometry();
            (m.clone(), dict.push(&m)?)
        }
        Label::E(_) => {
            let e8 = EmbeddingDictionary::d8_in_e8()?;
            let big = e8.push(&signed.to_isometry())?;
            let embed = sys
                .roots()
                .iter()
                .map(|r| e8.target.index_of(r))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::NotARoot(sys.name().into(), "E8".into()))?;
            let w = crate::rtheta::restrict(&big, &e8.target, &sys, &embed)?;
            (signed.to_isometry(), w)
        }
        _ => {
            let m = signed.to_isometry_on(&sys)?;
            let w = sys.root_action(&m)?;
            (m, w)
        }
    };
    if !is_elliptic(&w, &sys) {
        return Err(Error::Verification(format!("{} in {ambient} is not elliptic", entry.name)));
    }
    if w.order() != entry.order {
        return Err(Error::Verification(format!(
            "{} in {ambient} has order {}, expected {}",
            entry.name,
            w.order(),
            entry.order
        )));
    }
    let expected = fingerprint(&w, &sys);
    let complement = dim - sys.rank();
    let mut poly = char_poly_of_cycles(&signed);
    for _ in 0..complement {
        poly = poly_div(&poly, &[1, 1])
            .ok_or_else(|| Error::Verification(format!("{} does not negate the complement", entry.name)))?;
    }
    if poly != expected.char_poly {
        return Err(Error::Verification(format!(
            "{} characteristic polynomial {:?} vs {:?}",
            entry.name, poly, expected.char_poly
        )));
    }
    Ok(ClassLabel {
        name: entry.name.clone(),
        ambient,
        representative,
        expected,
        entry,
        sys,
        signed,
        w,
    })
}

fn representative_fingerprints(label: Label) -> Result<&'static [(String, ClassFingerprint)]> {
    static CACHE: OnceLock<BTreeMap<String, Vec<(String, ClassFingerprint)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let mut m: BTreeMap<String, Vec<(String, ClassFingerprint)>> = BTreeMap::new();
        for c in Registry::builtin().classes() {
            let rep = exceptional_representative(&c.name, c.ambient_label()).expect("registry representatives build");
            m.entry(c.ambient.clone()).or_default().push((c.name.clone(), rep.expected));
        }
        m
    });
    cache
        .get(&label.to_string())
        .map(Vec::as_slice)
        .ok_or_else(|| Error::UnsupportedLabel(label.to_string()))
}

/// Registry class of an elliptic element of an exceptional system, by
/// fingerprint.
pub fn identify(w: &Permutation, sys: &RootSystem) -> Result<&'static ClassEntry> {
    let label = sys
        .label()
        .filter(|l| matches!(l, Label::F4 | Label::G2 | Label::E(_)))
        .ok_or_else(|| Error::UnsupportedLabel(sys.name().into()))?;
    if !is_elliptic(w, sys) {
        return Err(Error::NotElliptic(sys.name().into()));
    }
    let fp = fingerprint(w, sys);
    let name = representative_fingerprints(label)?
        .iter()
        .find(|(_, f)| *f == fp)
        .map(|(n, _)| n.as_str())
        .ok_or_else(|| Error::UnknownClass(format!("no registry class in {label} with order {}", fp.order)))?;
    Registry::builtin().find(label, name)
}

/// What `classify` reports about an element.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub system: String,
    pub elliptic: bool,
    pub order: u64,
    pub two_power: bool,
    pub in_weyl: bool,
    pub class: Option<String>,
    pub signed: Option<String>,
    pub negative_cycles: Vec<usize>,
    pub positive_cycles: Vec<usize>,
    pub fingerprint: ClassFingerprint,
}

pub fn classify_element(w: &Permutation, sys: &RootSystem) -> Result<Classification> {
    let elliptic = is_elliptic(w, sys);
    let order = w.order();
    let classical = matches!(sys.label(), Some(Label::A(_) | Label::B(_) | Label::C(_) | Label::D(_)));
    let signed = if classical { signed_permutation_of(w, sys).ok() } else { None };
    let (negative_cycles, positive_cycles) = signed.as_ref().map(|p| p.cycle_type()).unwrap_or_default();
    let class = if let Some(p) = &signed {
        if elliptic {
            let lambda = Partition::new(negative_cycles.clone())?;
            if positive_cycles.is_empty() {
                Some(format!("C{lambda}"))
            } else {
                Some(format!("Coxeter {}", Partition::new(positive_cycles.clone())?))
            }
        } else {
            let _ = p;
            None
        }
    } else if elliptic && order.is_power_of_two() {
        identify(w, sys).ok().map(|c| c.name.clone())
    } else {
        None
    };
    Ok(Classification {
        system: sys.name().into(),
        elliptic,
        order,
        two_power: order.is_power_of_two(),
        in_weyl: sys.is_weyl(w),
        class,
        signed: signed.map(|p| p.to_string()),
        negative_cycles,
        positive_cycles,
        fingerprint: fingerprint(w, sys),
    })
}

/// Parses `"2^8 1^16"` into `(length, multiplicity)` pairs, longest first.
pub fn parse_cycle_type(s: &str) -> Result<Vec<(usize, usize)>> {
    let err = |why: &str| Error::parse("cycle type", s, why);
    let mut out: Vec<(usize, usize)> = Vec::new();
    for tok in s.split_whitespace() {
        let (len, mult) = match tok.split_once('^') {
            Some((a, b)) => (a.parse().map_err(|_| err("bad length"))?, b.parse().map_err(|_| err("bad exponent"))?),
            None => (tok.parse().map_err(|_| err("bad length"))?, 1),
        };
        if len == 0 || mult == 0 {
            return Err(err("zero entry"));
        }
        out.push((len, mult));
    }
    if out.is_empty() {
        return Err(err("empty"));
    }
    out.sort_by_key(|p| std::cmp::Reverse(p.0));
    Ok(out)
}

/// Cycle type of a permutation, in the notation of [`parse_cycle_type`].
pub fn cycle_type_string(p: &Permutation) -> String {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for l in p.cycle_lengths() {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .iter()
        .rev()
        .map(|(l, m)| if *m == 1 { l.to_string() } else { format!("{l}^{m}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A class element resolved from a command-line style description.
#[derive(Debug, Clone)]
pub struct ResolvedClass {
    pub sys: RootSystem,
    pub w: Permutation,
    pub signed: Option<SignedPermutation>,
    pub entry: Option<&'static ClassEntry>,
}

/// Resolves `cox`, `-1`, a partition such as `4+2+1+1`, a registry class
/// name, or cycle notation, in the system `label`.
pub fn resolve_class(label: Label, spec: &str) -> Result<ResolvedClass> {
    let spec = spec.trim();
    if matches!(label, Label::F4 | Label::G2 | Label::E(_)) {
        if let Ok(rep) = exceptional_representative(spec, label) {
            return Ok(ResolvedClass {
                sys: rep.sys,
                w: rep.w,
                signed: Some(rep.signed),
                entry: Some(rep.entry),
            });
        }
        if spec.eq_ignore_ascii_case("-1") {
            let sys = ambient_system(label)?;
            let w = sys.negation_perm();
            return Ok(ResolvedClass {
                signed: Some(SignedPermutation::negation(sys.ambient_dim())),
                sys,
                w,
                entry: None,
            });
        }
        let sys = ambient_system(label)?;
        let signed = SignedPermutation::parse(spec, sys.ambient_dim())?;
        let w = signed.root_action(&sys)?;
        let entry = identify(&w, &sys).ok();
        return Ok(ResolvedClass {
            sys,
            w,
            signed: Some(signed),
            entry,
        });
    }
    let sys = RootSystem::classical(label)?;
    let n = sys.ambient_dim();
    let signed = if spec.eq_ignore_ascii_case("cox") {
        if let Label::A(_) = label {
            let cyc: Vec<usize> = (0..n).collect();
            SignedPermutation::cycle(n, &cyc, false)?
        } else {
            SignedPermutation::from_partition(&Partition::new(vec![n])?)
        }
    } else if spec == "-1" {
        SignedPermutation::negation(n)
    } else if spec.starts_with(|c: char| c.is_ascii_digit()) {
        let lambda: Partition = spec.parse()?;
        if lambda.total() != n {
            return Err(Error::InvalidPartition(format!("{spec} is not a partition of {n}")));
        }
        SignedPermutation::from_partition(&lambda)
    } else {
        SignedPermutation::parse(spec, n)?
    };
    let w = signed.root_action(&sys)?;
    Ok(ResolvedClass {
        sys,
        w,
        signed: Some(signed),
        entry: None,
    })
}

/// Extends a signed permutation of rank `p.rank()` by the identity.
pub fn pad(p: &SignedPermutation, dim: usize) -> Result<SignedPermutation> {
    let n = p.rank();
    if dim < n {
        return Err(Error::DimensionMismatch { expected: dim, got: n });
    }
    let mut images: Vec<usize> = (0..n)
        .map(|i| {
            let y = p.apply(i);
            if y < n {
                y
            } else {
                y - n + dim
            }
        })
        .collect();
    images.extend(n..dim);
    SignedPermutation::from_images(&images)
}

/// Resolves a numerator descriptor against a class element: `id`, `-1`, `w`,
/// `s<i>`, `norm:<q>`, `norm:<partition>:<q>`, a registry generator name,
/// cycle notation, or a `*`-separated product of these.
pub fn resolve_element(desc: &str, class: &ResolvedClass) -> Result<Permutation> {
    let sys = &class.sys;
    let mut acc = Permutation::identity(sys.len());
    for tok in desc.split('*') {
        let tok = tok.trim();
        let p = match tok {
            "" => return Err(Error::parse("element", desc, "empty factor")),
            "id" | "1" => Permutation::identity(sys.len()),
            "-1" => sys.negation_perm(),
            "w" => class.w.clone(),
            _ => resolve_factor(tok, class)?,
        };
        acc = acc.compose(&p);
    }
    Ok(acc)
}

fn resolve_factor(tok: &str, class: &ResolvedClass) -> Result<Permutation> {
    let sys = &class.sys;
    let dim = sys.ambient_dim();
    if let Some(i) = tok.strip_prefix('s').and_then(|x| x.parse::<usize>().ok()) {
        if i >= sys.rank() {
            return Err(Error::parse("element", tok, "simple reflection index out of range"));
        }
        return Ok(sys.simple_reflection_perm(i).clone());
    }
    if let Some(rest) = tok.strip_prefix("norm:") {
        let (base, q) = match rest.rsplit_once(':') {
            Some((lambda, q)) => {
                let lambda: Partition = lambda.parse()?;
                (pad(&SignedPermutation::from_partition(&lambda), dim)?, q)
            }
            None => (
                class
                    .signed
                    .clone()
                    .ok_or_else(|| Error::parse("element", tok, "class has no signed-permutation form"))?,
                rest,
            ),
        };
        let q: i64 = q.trim().parse().map_err(|_| Error::parse("element", tok, "bad q"))?;
        return base.norm(q)?.root_action(sys);
    }
    if let Some(g) = class.entry.and_then(|e| e.generator(tok)) {
        return resolve_element(&g.descriptor, class);
    }
    SignedPermutation::parse(tok, dim)?.root_action(sys)
}

/// A named element of `N_A(<w>)`.
#[derive(Debug, Clone)]
pub struct NamedElement {
    pub name: String,
    pub descriptor: String,
    pub role: Role,
    pub element: Permutation,
}

fn classical_descriptors(label: Label, signed: &SignedPermutation) -> Result<Vec<(String, String, Role)>> {
    let mut out = vec![("w".to_string(), "w".to_string(), Role::Centralizer)];
    let order = signed.order() as i64;
    let units = || (2..order).filter(move |&q| num_integer::gcd(q, order) == 1);
    if let Label::A(_) = label {
        out.push(("-1".into(), "-1".into(), Role::Centralizer));
        out.extend(units().map(|q| (format!("norm{q}"), format!("norm:{q}"), Role::Normalizer)));
        return Ok(out);
    }
    let (neg, pos) = signed.cycle_type();
    let lambda = Partition::new(neg)?;
    if !pos.is_empty() || SignedPermutation::from_partition(&lambda) != *signed {
        return Err(Error::Unsupported("normalizer generators are tabulated for w_{C_λ} only".into()));
    }
    let parts = lambda.parts();
    let mut start = 0;
    for (i, &r) in parts.iter().enumerate() {
        let cyc: Vec<String> = (start..start + r).map(|k| k.to_string()).collect();
        out.push((format!("c{i}"), format!("n({})", cyc.join(" ")), Role::Centralizer));
        if i + 1 < parts.len() && parts[i + 1] == r {
            let swap: Vec<String> = (0..r).map(|k| format!("p({} {})", start + k, start + r + k)).collect();
            out.push((format!("p{i}{}", i + 1), swap.join(""), Role::Centralizer));
        }
        start += r;
    }
    out.extend(units().map(|q| (format!("norm{q}"), format!("norm:{q}"), Role::Normalizer)));
    Ok(out)
}

/// Generators of the tabulated subgroup of `N_A(<w>)`: the registry list for
/// an exceptional class; for type A Coxeter `w`, `-1` and the norms; for
/// `w_{C_λ}`, the component Coxeter elements, the switches of equal parts,
/// and the norms. Each generator is checked to normalize `<w>`.
pub fn centralizer_and_normalizer_gens(class: &ResolvedClass) -> Result<Vec<NamedElement>> {
    let descs: Vec<(String, String, Role)> = match (class.entry, class.sys.label(), &class.signed) {
        (Some(e), _, _) => e.generators.iter().map(|g| (g.name.clone(), g.descriptor.clone(), g.role)).collect(),
        (None, Some(l @ (Label::A(_) | Label::B(_) | Label::C(_) | Label::D(_))), Some(p)) => {
            classical_descriptors(l, p)?
        }
        _ => return Err(Error::Unsupported("no tabulated normalizer for this class".into())),
    };
    descs
        .into_iter()
        .map(|(name, descriptor, role)| {
            let element = resolve_element(&descriptor, class)?;
            if crate::weyl::normalizer_exponent(&element, &class.w).is_none() {
                return Err(Error::Verification(format!("{name} does not normalize <w>")));
            }
            Ok(NamedElement {
                name,
                descriptor,
                role,
                element,
            })
        })
        .collect()
}

/// Report of the exhaustive F4 enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct F4Report {
    pub group_order: usize,
    pub classes: Vec<EnumeratedClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumeratedClass {
    pub size: usize,
    pub order: u64,
    pub name: Option<String>,
}

impl F4Report {
    /// Exactly the four registry classes, each hit once.
    pub fn ok(&self) -> bool {
        let mut names: Vec<&str> = self.classes.iter().filter_map(|c| c.name.as_deref()).collect();
        names.sort_unstable();
        names.dedup();
        self.group_order == 1152 && self.classes.len() == 4 && names.len() == 4
    }
}

fn elliptic_two_power_classes(
    sys: &RootSystem,
    elements: &[Permutation],
    conjugators: &[Permutation],
) -> Vec<Vec<Permutation>> {
    let chosen: Vec<Permutation> = elements
        .iter()
        .filter(|x| x.order().is_power_of_two() && is_elliptic(x, sys))
        .cloned()
        .collect();
    conjugacy_classes(&chosen, conjugators)
        .into_iter()
        .map(|c| c.into_iter().map(|i| chosen[i].clone()).collect())
        .collect()
}

/// Enumerates `W(F4)` and sorts its elliptic elements of 2-power order into
/// conjugacy classes.
pub fn exhaustive_verify_f4() -> Result<F4Report> {
    let sys = RootSystem::build(Label::F4)?;
    let all = sys
        .weyl_group(2000)
        .ok_or_else(|| Error::Verification("W(F4) exceeded the enumeration limit".into()))?;
    let gens: Vec<Permutation> = (0..sys.rank()).map(|i| sys.simple_reflection_perm(i).clone()).collect();
    let classes = elliptic_two_power_classes(&sys, &all, &gens)
        .into_iter()
        .map(|c| EnumeratedClass {
            size: c.len(),
            order: c[0].order(),
            name: identify(&c[0], &sys).ok().map(|e| e.name.clone()),
        })
        .collect();
    Ok(F4Report {
        group_order: all.len(),
        classes,
    })
}

/// Exhaustive comparison for a classical system of small rank.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalReport {
    pub label: Label,
    pub group_order: usize,
    /// Partitions found by enumeration, with W-membership.
    pub found: Vec<(Partition, bool)>,
    /// Partitions predicted by [`classical_elliptic_2power`].
    pub predicted: Vec<(Partition, bool)>,
}

impl ClassicalReport {
    pub fn ok(&self) -> bool {
        self.found == self.predicted
    }
}

/// Enumerates the signed-permutation group (all of `W` for A, B, C and
/// `W(B_n)` acting on `D_n`) and compares its elliptic 2-power classes with
/// the predicted partitions.
pub fn exhaustive_verify_classical(label: Label) -> Result<ClassicalReport> {
    let sys = RootSystem::classical(label)?;
    let n = sys.ambient_dim();
    let mut gens: Vec<Permutation> = (0..sys.rank()).map(|i| sys.simple_reflection_perm(i).clone()).collect();
    if matches!(label, Label::D(_)) {
        gens.push(SignedPermutation::cycle(n, &[n - 1], true)?.root_action(&sys)?);
    }
    if matches!(label, Label::A(_)) && n >= 3 {
        gens.push(sys.negation_perm());
    }
    let all = crate::rootsys::generate_group(sys.len(), &gens, 50_000)
        .ok_or_else(|| Error::Verification(format!("{label} exceeded the enumeration limit")))?;
    let mut found = Vec::new();
    for class in elliptic_two_power_classes(&sys, &all, &gens) {
        let x = &class[0];
        let (parts, in_weyl) = if matches!(label, Label::A(_)) {
            if sys.is_weyl(x) {
                (signed_permutation_of(x, &sys)?.cycle_type().1, true)
            } else if *x == sys.negation_perm() {
                (vec![1; n], false)
            } else {
                return Err(Error::Verification("unexpected outer elliptic element of type A".into()));
            }
        } else {
            let p = signed_permutation_of(x, &sys)?;
            let (neg, pos) = p.cycle_type();
            if !pos.is_empty() {
                return Err(Error::Verification(format!("elliptic element {p} has a positive cycle")));
            }
            (neg, p.in_weyl_d() || !matches!(label, Label::D(_)))
        };
        found.push((Partition::new(parts)?, in_weyl));
    }
    found.sort();
    let mut predicted: Vec<(Partition, bool)> = classical_elliptic_2power(label)?
        .into_iter()
        .map(|c| (c.partition, c.in_weyl))
        .collect();
    predicted.sort();
    Ok(ClassicalReport {
        label,
        group_order: all.len(),
        found,
        predicted,
    })
}

/// `s_α s_β = s_{α+β} s_{α-β}` for orthogonal `α`, `β`.
pub fn admissible_diagram_identity_check(sys: &RootSystem, alpha: usize, beta: usize) -> Result<bool> {
    let (a, b) = (sys.root(alpha), sys.root(beta));
    if a.dot(b) != 0 {
        return Err(Error::NotOrthogonal);
    }
    let lhs = reflection_matrix(a).compose(&reflection_matrix(b));
    let rhs = reflection_matrix(&a.add(b)).compose(&reflection_matrix(&a.sub(b)));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizer_generators() {
        let a = resolve_class(Label::A(4), "cox").unwrap();
        let names: Vec<String> = centralizer_and_normalizer_gens(&a).unwrap().into_iter().map(|g| g.name).collect();
        assert_eq!(names, ["w", "-1", "norm2", "norm3", "norm4"]);
        let b = resolve_class(Label::B(6), "2+2+1+1").unwrap();
        let gens = centralizer_and_normalizer_gens(&b).unwrap();
        let names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["w", "c0", "p01", "c1", "c2", "p23", "c3", "norm3"]);
        let e = resolve_class(Label::E(8), "D8(a3)").unwrap();
        assert_eq!(centralizer_and_normalizer_gens(&e).unwrap().len(), 6);
        let bad = resolve_class(Label::B(3), "n(0 2 1)").unwrap();
        assert!(centralizer_and_normalizer_gens(&bad).is_err());
    }

    #[test]
    fn registry_loads() {
        let reg = Registry::builtin();
        assert_eq!(reg.classes().len(), 15);
        assert_eq!(reg.for_ambient(Label::F4).count(), 4);
        assert_eq!(reg.for_ambient(Label::E(8)).count(), 5);
        assert_eq!(reg.for_ambient(Label::E(7)).count(), 3);
        assert_eq!(reg.for_ambient(Label::E(6)).count(), 2);
        assert!(reg.find(Label::E(8), "d8a3").is_ok());
        assert!(reg.find(Label::E(8), "B4").is_err());
    }

    #[test]
    fn classical_lists() {
        let names = |l| -> Vec<String> {
            classical_elliptic_2power(l).unwrap().iter().map(|c| c.partition.to_string()).collect()
        };
        assert_eq!(names(Label::B(4)), ["(4)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(names(Label::B(3)), ["(2,1)", "(1,1,1)"]);
        let a2 = classical_elliptic_2power(Label::A(2)).unwrap();
        assert_eq!(a2.len(), 1);
        assert_eq!(a2[0].name, "-1");
        let a3 = classical_elliptic_2power(Label::A(3)).unwrap();
        assert_eq!(a3[0].name, "Coxeter");
        assert_eq!(a3[0].order, 4);
        let d3: Vec<bool> = classical_elliptic_2power(Label::D(3)).unwrap().iter().map(|c| c.in_weyl).collect();
        assert_eq!(d3, [true, false]);
        assert!(classical_elliptic_2power(Label::F4).is_err());
    }

    #[test]
    fn embeddings_land_in_targets() {
        let b4 = EmbeddingDictionary::b4_in_f4().unwrap();
        assert_eq!(b4.images().len(), 32);
        assert!(b4.preserves_inner_products());
        let d8 = EmbeddingDictionary::d8_in_e8().unwrap();
        assert_eq!(d8.images().len(), 112);
    }

    #[test]
    fn representatives_build() {
        for c in Registry::builtin().classes() {
            let rep = exceptional_representative(&c.name, c.ambient_label()).unwrap();
            assert_eq!(rep.w.order(), c.order);
            if let Some(p) = c.perp {
                let perp = perp_roots(&rep.sys);
                let os = crate::weyl::OrbitSpace::new(&perp, std::slice::from_ref(&rep.w), &rep.sys.negation_perm())
                    .unwrap();
                assert_eq!(os.len(), p.orbits, "{}", c.name);
                assert!(os.sizes().iter().all(|&s| s == p.size), "{}", c.name);
                assert_eq!(os.symmetric_count(), p.symmetric, "{}", c.name);
            }
        }
    }

    #[test]
    fn d4a1_order() {
        let rep = exceptional_representative("D4(a1)", Label::F4).unwrap();
        assert_eq!(rep.w.order(), 4);
    }

    #[test]
    fn b4_partitions_restrict_to_f4_classes() {
        let f4 = RootSystem::build(Label::F4).unwrap();
        for (lambda, name) in [("4", "B4"), ("2,2", "D4(a1)"), ("2,1,1", "A3xA1~"), ("1,1,1,1", "-1")] {
            let p = SignedPermutation::from_partition(&lambda.parse().unwrap());
            let w = p.root_action(&f4).unwrap();
            assert_eq!(identify(&w, &f4).unwrap().name, name);
        }
    }

    #[test]
    fn cycle_type_roundtrip() {
        assert_eq!(parse_cycle_type("2^8 1^16").unwrap(), vec![(2, 8), (1, 16)]);
        let p = Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(cycle_type_string(&p), "2^2 1");
    }

    #[test]
    fn reflection_identity() {
        let b2 = RootSystem::build(Label::B(2)).unwrap();
        let e0 = b2.index_of(&RootVector::new(vec![2, 0])).unwrap();
        let e1 = b2.index_of(&RootVector::new(vec![0, 2])).unwrap();
        assert!(admissible_diagram_identity_check(&b2, e0, e1).unwrap());
        let d4 = RootSystem::build(Label::D(4)).unwrap();
        let a = d4.index_of(&RootVector::new(vec![2, 2, 0, 0])).unwrap();
        let b = d4.index_of(&RootVector::new(vec![0, 0, 2, -2])).unwrap();
        assert!(admissible_diagram_identity_check(&d4, a, b).unwrap());
        let c = d4.index_of(&RootVector::new(vec![0, 2, 2, 0])).unwrap();
        assert!(admissible_diagram_identity_check(&d4, a, c).is_err());
    }
}
