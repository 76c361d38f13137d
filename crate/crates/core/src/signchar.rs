//! The sign symbol `<v/w>` and its closed forms.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{sgn_plus, two_adic, two_r_symbol, Permutation, Sign};
use crate::classify::{cycle_type_string, perp_roots, resolve_element, ClassLabel, ResolvedClass, Role};
use crate::error::{Error, Result};
use crate::rootsys::{Label, RootSystem};
use crate::rtheta::{component_system, compute_r_w, restrict, Provenance, RThetaSet};
use crate::weyl::{is_elliptic, normalizer_exponent, OrbitSpace, Partition, SignedPermutation};

/// `<v/w>` with the orbit counts that witness it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignValue {
    pub sign: Sign,
    /// `v w v^{-1} = w^q`.
    pub q: i64,
    pub orbits_w: usize,
    pub orbits_vw: usize,
    pub provenance: Provenance,
}

/// A fixed elliptic `w` with its orbit space on `R_w`, reused across numerators.
#[derive(Debug, Clone)]
pub struct SignContext<'a> {
    sys: &'a RootSystem,
    w: Permutation,
    r_w: RThetaSet,
    orbits: OrbitSpace,
    member: Vec<bool>,
}

impl<'a> SignContext<'a> {
    pub fn new(sys: &'a RootSystem, w: &Permutation) -> Result<SignContext<'a>> {
        let r_w = compute_r_w(w, sys)?;
        SignContext::with_r_w(sys, w, r_w)
    }

    pub fn with_r_w(sys: &'a RootSystem, w: &Permutation, r_w: RThetaSet) -> Result<SignContext<'a>> {
        if !is_elliptic(w, sys) {
            return Err(Error::NotElliptic(sys.name().into()));
        }
        let orbits = OrbitSpace::new(&r_w.roots, std::slice::from_ref(w), &sys.negation_perm())?;
        let mut member = vec![false; sys.len()];
        for &i in &r_w.roots {
            member[i] = true;
        }
        Ok(SignContext {
            sys,
            w: w.clone(),
            r_w,
            orbits,
            member,
        })
    }

    pub fn system(&self) -> &RootSystem {
        self.sys
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn r_w(&self) -> &RThetaSet {
        &self.r_w
    }

    pub fn orbit_space(&self) -> &OrbitSpace {
        &self.orbits
    }

    /// Sign of the permutation `v` induces on `<w>\R_w`, checked against
    /// `(-1)^(|<w>\R_w| - |<v,w>\R_w|)`.
    pub fn sign(&self, v: &Permutation) -> Result<SignValue> {
        let q = normalizer_exponent(v, &self.w).ok_or(Error::NotNormalizing)?;
        if self.r_w.roots.iter().any(|&i| !self.member[v.apply(i)]) {
            return Err(Error::RwNotStable);
        }
        let induced = self.orbits.induced(v)?;
        let sign = induced.sign();
        let joint = OrbitSpace::new(&self.r_w.roots, &[self.w.clone(), v.clone()], &self.sys.negation_perm())?;
        let (orbits_w, orbits_vw) = (self.orbits.len(), joint.len());
        if sign != Sign::from_parity((orbits_w - orbits_vw) as u64) {
            return Err(Error::Verification("orbit-count parity disagrees with the induced sign".into()));
        }
        Ok(SignValue {
            sign,
            q,
            orbits_w,
            orbits_vw,
            provenance: self.r_w.provenance,
        })
    }
}

/// Inputs of [`sign_symbol`]; `r_w` is computed when absent.
#[derive(Debug, Clone, Copy)]
pub struct SignSymbolQuery<'a> {
    pub sys: &'a RootSystem,
    pub w: &'a Permutation,
    pub v: &'a Permutation,
    pub r_w: Option<&'a RThetaSet>,
}

pub fn sign_symbol(query: &SignSymbolQuery<'_>) -> Result<SignValue> {
    let ctx = match query.r_w {
        Some(r) => SignContext::with_r_w(query.sys, query.w, r.clone())?,
        None => SignContext::new(query.sys, query.w)?,
    };
    ctx.sign(query.v)
}

/// A closed-form value next to its brute-force counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub closed: Sign,
    pub brute: Sign,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.closed == self.brute
    }
}

/// `<v/1> = sgn_R(v)`, against the sign of `v` as a permutation of `R`.
pub fn sign_plus_case(v: &Permutation, sys: &RootSystem) -> Comparison {
    Comparison {
        closed: sys.sgn_perm(v),
        brute: v.sign(),
    }
}

fn weyl_minus_closed(sys: &RootSystem, x: &Permutation, label: Label) -> Sign {
    let g = label.dual_coxeter();
    let gd = label.dual().dual_coxeter();
    sys.sgn_long_perm(x).pow(g) * sys.sgn_short_perm(x).pow(gd)
}

/// Closed form of `<v/-1>` on an irreducible system.
pub fn minus_closed_form(v: &Permutation, sys: &RootSystem) -> Result<Sign> {
    let label = sys
        .label()
        .filter(|_| sys.is_irreducible())
        .ok_or_else(|| Error::Reducible(sys.name().into()))?;
    let dec = sys.decompose_perm(v);
    let word = sys.compose_word(&dec.word, &Permutation::identity(sys.len()));
    let mut s = weyl_minus_closed(sys, &word, label);
    if !dec.tau.is_identity() {
        let k = dec.tau.order();
        let diag = if k % 2 == 1 {
            Sign::Plus
        } else if k != 2 {
            return Err(Error::Unsupported(format!("diagram automorphism of order {k}")));
        } else {
            match label {
                Label::D(n) if n % 2 == 0 => Sign::from_parity(n as u64 - 1),
                _ => {
                    // the involution is the diagram part of -1 = w0 τ0
                    let neg = sys.decompose_perm(&sys.negation_perm());
                    if neg.tau != dec.tau {
                        return Err(Error::Unsupported("diagram involution outside the -1 coset".into()));
                    }
                    let w0 = sys.compose_word(&neg.word, &Permutation::identity(sys.len()));
                    weyl_minus_closed(sys, &w0, label)
                }
            }
        };
        s *= diag;
    }
    Ok(s)
}

pub fn sign_minus_case(v: &Permutation, sys: &RootSystem) -> Result<Comparison> {
    let closed = minus_closed_form(v, sys)?;
    let brute = SignContext::new(sys, &sys.negation_perm())?.sign(v)?.sign;
    Ok(Comparison { closed, brute })
}

/// Numerator shapes for `w = w_{C_λ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassicalNumerator {
    /// `w` on the block of part `i`, identity elsewhere.
    ComponentCoxeter(usize),
    /// Exchange of the blocks of two equal parts.
    Switch(usize, usize),
    Norm(i64),
}

fn block_starts(lambda: &Partition) -> Vec<usize> {
    lambda
        .parts()
        .iter()
        .scan(0, |acc, &p| {
            let s = *acc;
            *acc += p;
            Some(s)
        })
        .collect()
}

/// The numerator as a signed permutation of rank `λ.total()`.
pub fn classical_numerator(lambda: &Partition, shape: ClassicalNumerator) -> Result<SignedPermutation> {
    let n = lambda.total();
    let parts = lambda.parts();
    let starts = block_starts(lambda);
    match shape {
        ClassicalNumerator::ComponentCoxeter(i) => {
            let r = *parts.get(i).ok_or_else(|| Error::InvalidPartition(format!("no part {i}")))?;
            let entries: Vec<usize> = (starts[i]..starts[i] + r).collect();
            SignedPermutation::cycle(n, &entries, true)
        }
        ClassicalNumerator::Switch(i, j) => {
            if i == j || parts.get(i).is_none() || parts.get(i) != parts.get(j) {
                return Err(Error::InvalidPartition(format!("parts {i} and {j} of {lambda} are not equal")));
            }
            let mut p = SignedPermutation::identity(n);
            for k in 0..parts[i] {
                p = SignedPermutation::cycle(n, &[starts[i] + k, starts[j] + k], false)?.compose(&p);
            }
            Ok(p)
        }
        ClassicalNumerator::Norm(q) => SignedPermutation::from_partition(lambda).norm(q),
    }
}

fn norm_factor(parts: &[usize], q: i64) -> Result<Sign> {
    let even: Vec<usize> = parts.iter().copied().filter(|r| r % 2 == 0).collect();
    let s = even.len() as i64;
    let e = (s * (s - 1) / 2) * ((q - 1) / 2);
    let mut out = Sign::from_parity(e.rem_euclid(2) as u64);
    for r in even {
        out *= two_r_symbol(r as i64, q)?;
    }
    Ok(out)
}

/// `<v/w_{C_λ}>` by the classical formulas; type C is split by the 2-adic
/// valuation of the parts.
pub fn classical_closed_form(label: Label, lambda: &Partition, shape: ClassicalNumerator) -> Result<Sign> {
    let parts = lambda.parts();
    let groups: Vec<Vec<usize>> = match label {
        Label::C(_) => {
            let vals: BTreeSet<u32> = parts.iter().map(|&p| two_adic(p as u64)).collect();
            vals.iter()
                .map(|&v| parts.iter().copied().filter(|&p| two_adic(p as u64) == v).collect())
                .collect()
        }
        Label::B(_) | Label::D(_) => vec![parts.to_vec()],
        _ => return Err(Error::UnsupportedLabel(label.to_string())),
    };
    match shape {
        ClassicalNumerator::ComponentCoxeter(i) => {
            let r = *parts.get(i).ok_or_else(|| Error::InvalidPartition(format!("no part {i}")))?;
            let s = match label {
                Label::C(_) => parts.iter().filter(|&&p| two_adic(p as u64) == two_adic(r as u64)).count(),
                _ => parts.len(),
            };
            Ok(Sign::from_parity(s as u64 - 1))
        }
        ClassicalNumerator::Switch(..) => {
            classical_numerator(lambda, shape)?;
            Ok(if matches!(label, Label::D(_)) { Sign::Plus } else { Sign::Minus })
        }
        ClassicalNumerator::Norm(q) => groups.iter().map(|g| norm_factor(g, q)).product(),
    }
}

/// The classical formula against brute force on `w_{C_λ}`.
pub fn sign_classical_closed(label: Label, lambda: &Partition, shape: ClassicalNumerator) -> Result<Comparison> {
    let label = match label {
        Label::B(_) => Label::B(lambda.total()),
        Label::C(_) => Label::C(lambda.total()),
        Label::D(_) => Label::D(lambda.total()),
        _ => return Err(Error::UnsupportedLabel(label.to_string())),
    };
    let sys = RootSystem::classical(label)?;
    let w = SignedPermutation::from_partition(lambda).root_action(&sys)?;
    let v = classical_numerator(lambda, shape)?.root_action(&sys)?;
    let brute = SignContext::new(&sys, &w)?.sign(&v)?.sign;
    Ok(Comparison {
        closed: classical_closed_form(label, lambda, shape)?,
        brute,
    })
}

fn a_coxeter(n: usize) -> Result<(RootSystem, SignedPermutation, Permutation)> {
    if n < 2 {
        return Err(Error::UnsupportedLabel(format!("A{}", n as i64 - 1)));
    }
    let sys = RootSystem::build(Label::A(n - 1))?;
    let cyc: Vec<usize> = (0..n).collect();
    let c = SignedPermutation::cycle(n, &cyc, false)?;
    let w = c.root_action(&sys)?;
    Ok((sys, c, w))
}

/// `<norm_q / Coxeter>` in `A_{n-1}` against `sgn⁺_n(q)`.
pub fn sign_a_coxeter(q: i64, n: usize) -> Result<Comparison> {
    let closed = sgn_plus(n as i64, q)?;
    let (sys, c, w) = a_coxeter(n)?;
    let v = c.norm(q)?.root_action(&sys)?;
    let brute = SignContext::new(&sys, &w)?.sign(&v)?.sign;
    Ok(Comparison { closed, brute })
}

/// `<-1 / Coxeter>` in `A_{n-1}` against `sgn⁺_n(-1)`.
pub fn sign_a_minus_one(n: usize) -> Result<Comparison> {
    let closed = sgn_plus(n as i64, -1)?;
    let (sys, _, w) = a_coxeter(n)?;
    let brute = SignContext::new(&sys, &w)?.sign(&sys.negation_perm())?.sign;
    Ok(Comparison { closed, brute })
}

/// `(<v/w>, <v/w^k>)` for odd `k`.
pub fn reduce_odd_power_check(sys: &RootSystem, w: &Permutation, v: &Permutation, k: i64) -> Result<(Sign, Sign)> {
    if k % 2 == 0 {
        return Err(Error::Unsupported(format!("even power {k}")));
    }
    let a = SignContext::new(sys, w)?.sign(v)?.sign;
    let b = SignContext::new(sys, &w.pow(k))?.sign(v)?.sign;
    Ok((a, b))
}

/// Direct `<v/w>` on a reducible system, and the product over orbits of
/// components with correction exponents `f - 1` and `e - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub direct: Sign,
    pub product: Sign,
    pub product_e: Sign,
}

pub fn product_over_components(sys: &RootSystem, w: &Permutation, v: &Permutation) -> Result<ProductCheck> {
    let comps = sys.components();
    if comps.len() < 2 {
        return Err(Error::Unsupported(format!("{} is irreducible", sys.name())));
    }
    let direct = SignContext::new(sys, w)?.sign(v)?.sign;
    let comp_img = |c: usize, p: &Permutation| sys.component_of(p.apply(comps[c].roots[0]));
    let stabilizes = |p: &Permutation, set: &BTreeSet<usize>| set.iter().all(|&c| set.contains(&comp_img(c, p)));
    let mut seen = vec![false; comps.len()];
    let mut product = Sign::Plus;
    let mut product_e = Sign::Plus;
    let order = w.order() as i64;
    for c in 0..comps.len() {
        if seen[c] {
            continue;
        }
        // Γ-orbit of the component
        let mut orbit = BTreeSet::from([c]);
        let mut frontier = vec![c];
        while let Some(x) = frontier.pop() {
            for g in [w, v] {
                let y = comp_img(x, g);
                if orbit.insert(y) {
                    frontier.push(y);
                }
            }
        }
        for &x in &orbit {
            seen[x] = true;
        }
        let e = (1..=order).find(|&e| comp_img(c, &w.pow(e)) == c).expect("w has finite order");
        let n_orbit: BTreeSet<usize> = (0..e).map(|k| comp_img(c, &w.pow(k))).collect();
        let f = (1..)
            .find(|&f| stabilizes(&v.pow(f), &n_orbit))
            .expect("v has finite order");
        let vf = v.pow(f);
        let sigma = (0..order)
            .map(|k| w.pow(k).compose(&vf))
            .find(|s| comp_img(c, s) == c)
            .ok_or_else(|| Error::Verification("no element of N·v^f stabilizes the component".into()))?;
        let theta = w.pow(e);
        let (sub, embed) = component_system(sys, c)?;
        let theta_c = restrict(&theta, sys, &sub, &embed)?;
        let sigma_c = restrict(&sigma, sys, &sub, &embed)?;
        let local = SignContext::new(&sub, &theta_c)?.sign(&sigma_c)?.sign;
        let plus = theta_c.sign();
        product = product * local * plus.pow(f as u64 - 1);
        product_e = product_e * local * plus.pow(e as u64 - 1);
    }
    Ok(ProductCheck {
        direct,
        product,
        product_e,
    })
}

/// One evaluated generator of a class table.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSign {
    pub name: String,
    pub descriptor: String,
    pub role: Role,
    pub expected: Sign,
    pub computed: Sign,
    pub q: i64,
    pub perp_cycle_type: Option<String>,
    pub perp_symmetric: Option<usize>,
}

impl GeneratorSign {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

/// Generator signs and the kernel they determine for one exceptional class.
#[derive(Debug, Clone, Serialize)]
pub struct KernelTable {
    pub ambient: String,
    pub class: String,
    pub generators: Vec<GeneratorSign>,
    /// Signs of `norm_q` for every unit `q` modulo the order of `w`.
    pub norms: Vec<(i64, Sign)>,
    pub kernel: String,
    pub registry_kernel: String,
    pub provenance: Provenance,
}

impl KernelTable {
    pub fn ok(&self) -> bool {
        self.generators.iter().all(GeneratorSign::matches) && self.kernel == self.registry_kernel
    }
}

fn signed_residue(q: i64, m: i64) -> i64 {
    let r = q.rem_euclid(m);
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

fn generator_label(g: &GeneratorSign) -> String {
    match g.descriptor.strip_prefix("norm:") {
        Some(q) => format!("norm_{{{q}}}"),
        None => g.descriptor.clone(),
    }
}

fn kernel_text(label: Label, class: &str, gens: &[GeneratorSign], norms: &[(i64, Sign)], order: i64) -> String {
    if gens.iter().all(|g| g.computed.is_plus()) && norms.iter().all(|n| n.1.is_plus()) {
        return if class == "-1" { "A".into() } else { "N_A(<w>)".into() };
    }
    if class == "-1" && gens.iter().all(|g| !g.computed.is_plus()) {
        return format!("ker sgn_{label}");
    }
    let cent: Vec<&GeneratorSign> = gens.iter().filter(|g| g.role == Role::Centralizer).collect();
    if cent.iter().all(|g| g.computed.is_plus()) {
        let kept: Vec<i64> = norms
            .iter()
            .filter(|(q, s)| s.is_plus() && *q != 1)
            .map(|(q, _)| signed_residue(*q, order))
            .collect();
        return match kept.iter().min_by_key(|q| (q.abs(), -q.signum())) {
            None => "C_A(w)".into(),
            Some(q) => format!("C_A(w) ⋊ <norm_{{{q}}}>"),
        };
    }
    let plus: Vec<String> = gens
        .iter()
        .filter(|g| g.computed.is_plus())
        .map(|g| format!("<{}>", generator_label(g)))
        .collect();
    let minus: Vec<&GeneratorSign> = gens.iter().filter(|g| !g.computed.is_plus()).collect();
    let products: Vec<String> = minus
        .windows(2)
        .map(|p| format!("<{}·{}>", generator_label(p[0]), generator_label(p[1])))
        .collect();
    let mut out = format!("({})", plus.join(" x "));
    if !products.is_empty() {
        out.push_str(" ⋊ ");
        out.push_str(&products.join(" x "));
    }
    out
}

/// Evaluates every registry generator of a class and derives its kernel.
pub fn kernel_table(class: &ClassLabel) -> Result<KernelTable> {
    let resolved = ResolvedClass {
        sys: class.sys.clone(),
        w: class.w.clone(),
        signed: Some(class.signed.clone()),
        entry: Some(class.entry),
    };
    let ctx = SignContext::new(&class.sys, &class.w)?;
    let perp = perp_roots(&class.sys);
    let neg = class.sys.negation_perm();
    let perp_orbits = OrbitSpace::new(&perp, std::slice::from_ref(&class.w), &neg)?;
    let mut generators = Vec::new();
    for g in &class.entry.generators {
        let v = resolve_element(&g.descriptor, &resolved)?;
        let value = ctx.sign(&v)?;
        let stable = perp.iter().all(|&i| perp.binary_search(&v.apply(i)).is_ok());
        let (perp_cycle_type, perp_symmetric) = if perp.is_empty() || !stable {
            (None, None)
        } else {
            let induced = perp_orbits.induced(&v)?;
            let joint = OrbitSpace::new(&perp, &[class.w.clone(), v.clone()], &neg)?;
            (Some(cycle_type_string(&induced)), Some(joint.symmetric_count()))
        };
        generators.push(GeneratorSign {
            name: g.name.clone(),
            descriptor: g.descriptor.clone(),
            role: g.role,
            expected: g.expected,
            computed: value.sign,
            q: value.q,
            perp_cycle_type,
            perp_symmetric,
        });
    }
    let order = class.w.order() as i64;
    let mut norms = Vec::new();
    if class.name != "-1" {
        for q in 1..order {
            if num_integer::gcd(q, order) == 1 {
                let v = class.signed.norm(q)?.root_action(&class.sys)?;
                norms.push((q, ctx.sign(&v)?.sign));
            }
        }
    }
    Ok(KernelTable {
        ambient: class.ambient.to_string(),
        class: class.name.clone(),
        kernel: kernel_text(class.ambient, &class.name, &generators, &norms, order),
        registry_kernel: class.entry.kernel.clone(),
        generators,
        norms,
        provenance: ctx.r_w().provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn identity_numerator_is_plus() {
        let (sys, _, w) = a_coxeter(5).unwrap();
        let id = Permutation::identity(sys.len());
        let s = sign_symbol(&SignSymbolQuery {
            sys: &sys,
            w: &w,
            v: &id,
            r_w: None,
        })
        .unwrap();
        assert_eq!(s.sign, Sign::Plus);
        assert_eq!(SignContext::new(&sys, &w).unwrap().sign(&w).unwrap().sign, Sign::Plus);
    }

    #[test]
    fn a4_norm_two() {
        let c = sign_a_coxeter(2, 5).unwrap();
        assert_eq!(c.brute, Sign::Minus);
        assert!(c.agrees());
        assert_eq!(sign_a_coxeter(3, 8).unwrap().closed, Sign::Minus);
        assert_eq!(sign_a_coxeter(5, 6).unwrap().closed, Sign::Plus);
    }

    #[test]
    fn plus_case_examples() {
        let a2 = RootSystem::build(Label::A(2)).unwrap();
        let s = a2.simple_reflection_perm(0).clone();
        assert_eq!(sign_plus_case(&s, &a2), Comparison { closed: Sign::Minus, brute: Sign::Minus });
        let flip = a2.diagram_automorphisms().into_iter().find(|t| !t.is_identity()).unwrap();
        let tau = a2.root_action(&a2.diagram_isometry(&flip).unwrap()).unwrap();
        assert_eq!(sign_plus_case(&tau, &a2), Comparison { closed: Sign::Plus, brute: Sign::Plus });
    }

    #[test]
    fn minus_case_examples() {
        let g2 = RootSystem::build(Label::G2).unwrap();
        for i in 0..2 {
            let c = sign_minus_case(g2.simple_reflection_perm(i), &g2).unwrap();
            assert_eq!(c, Comparison { closed: Sign::Plus, brute: Sign::Plus });
        }
        let b2 = RootSystem::build(Label::B(2)).unwrap();
        let long = (0..2).find(|&i| b2.is_long(b2.simple_indices()[i])).unwrap();
        let c = sign_minus_case(b2.simple_reflection_perm(long), &b2).unwrap();
        assert_eq!(c, Comparison { closed: Sign::Minus, brute: Sign::Minus });
        let d4 = RootSystem::build(Label::D(4)).unwrap();
        let flip = SignedPermutation::parse("n(3)", 4).unwrap().root_action(&d4).unwrap();
        let c = sign_minus_case(&flip, &d4).unwrap();
        assert_eq!(c, Comparison { closed: Sign::Minus, brute: Sign::Minus });
    }

    #[test]
    fn classical_examples() {
        let c = sign_classical_closed(Label::B(2), &part("1,1"), ClassicalNumerator::ComponentCoxeter(0)).unwrap();
        assert_eq!(c, Comparison { closed: Sign::Minus, brute: Sign::Minus });
        let c = sign_classical_closed(Label::D(4), &part("2,2"), ClassicalNumerator::Switch(0, 1)).unwrap();
        assert_eq!(c, Comparison { closed: Sign::Plus, brute: Sign::Plus });
        let c = sign_classical_closed(Label::B(4), &part("4"), ClassicalNumerator::Norm(3)).unwrap();
        assert_eq!(c, Comparison { closed: Sign::Minus, brute: Sign::Minus });
    }

    #[test]
    fn odd_power() {
        let lambda = part("3,2,1");
        let sys = RootSystem::classical(Label::B(6)).unwrap();
        let p = SignedPermutation::from_partition(&lambda);
        let w = p.root_action(&sys).unwrap();
        let v = p.norm(7).unwrap().root_action(&sys).unwrap();
        let (a, b) = reduce_odd_power_check(&sys, &w, &v, 3).unwrap();
        assert_eq!(a, b);
        let sys = RootSystem::classical(Label::B(4)).unwrap();
        let p = SignedPermutation::from_partition(&part("4"));
        let w = p.root_action(&sys).unwrap();
        let v = p.norm(3).unwrap().root_action(&sys).unwrap();
        let (a, b) = reduce_odd_power_check(&sys, &w, &v, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn odd_power_needs_q_one_mod_k() {
        let sys = RootSystem::classical(Label::B(3)).unwrap();
        let p = SignedPermutation::from_partition(&part("3"));
        let w = p.root_action(&sys).unwrap();
        let v = p.norm(-1).unwrap().root_action(&sys).unwrap();
        let (a, b) = reduce_odd_power_check(&sys, &w, &v, 3).unwrap();
        assert_eq!((a, b), (Sign::Plus, Sign::Minus));
    }

    #[test]
    fn swapped_a1_components_need_f_exponent() {
        let sys = RootSystem::direct_sum(&[Label::A(1), Label::A(1)]).unwrap();
        let w = sys.negation_perm();
        let swap = SignedPermutation::parse("p(0 2)p(1 3)", 4).unwrap().root_action(&sys).unwrap();
        let check = product_over_components(&sys, &w, &swap).unwrap();
        assert_eq!(check.direct, Sign::Minus);
        assert_eq!(check.product, check.direct);
        assert_ne!(check.product_e, check.direct);
    }

    #[test]
    fn f4_b4_norm_includes_perp_swap() {
        let rep = crate::classify::exceptional_representative("B4", Label::F4).unwrap();
        let t = kernel_table(&rep).unwrap();
        let n3 = t.generators.iter().find(|g| g.name == "norm3").unwrap();
        assert_eq!(n3.perp_cycle_type.as_deref(), Some("2"));
        assert_eq!(n3.computed, Sign::Plus);
        assert_eq!(t.kernel, "N_A(<w>)");
    }

    #[test]
    fn e8_d8a3_norm() {
        let rep = crate::classify::exceptional_representative("D8(a3)", Label::E(8)).unwrap();
        let t = kernel_table(&rep).unwrap();
        let n = t.generators.iter().find(|g| g.name == "norm-3").unwrap();
        assert_eq!(n.computed, Sign::Plus);
    }
}
