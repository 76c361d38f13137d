use num_integer::{gcd, lcm};
use proptest::prelude::*;

use rootsign::arith::{sgn_eps_bruteforce, two_adic};
use rootsign::classify::{centralizer_and_normalizer_gens, resolve_class, ResolvedClass};
use rootsign::signchar::{reduce_odd_power_check, SignContext};
use rootsign::{sgn_minus, sgn_plus, Label, Partition, Permutation, RootSystem, Sign, SignedPermutation};

fn unit(n: i64) -> impl Strategy<Value = i64> {
    (1..=n.max(2)).prop_filter("coprime", move |q| gcd(*q, n) == 1)
}

fn modulus_and_unit() -> impl Strategy<Value = (i64, i64)> {
    (1i64..200).prop_flat_map(|n| (Just(n), unit(n)))
}

fn permutation(len: usize) -> impl Strategy<Value = Permutation> {
    Just((0..len).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn signed_permutation(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(
        move |(p, flips)| {
            let images: Vec<usize> = p.iter().zip(&flips).map(|(&j, &f)| if f { j + n } else { j }).collect();
            SignedPermutation::from_images(&images).unwrap()
        },
    )
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=5, 1..=4).prop_map(|v| Partition::new(v).unwrap())
}

fn class_label(n: usize) -> impl Strategy<Value = Label> {
    let mut labels = vec![Label::B(n), Label::C(n)];
    if n >= 4 {
        labels.push(Label::D(n));
    }
    prop::sample::select(labels)
}

/// A classical class `w_{C_λ}` with `|λ| <= 6`, for D only with an even
/// number of parts.
fn classical_class() -> impl Strategy<Value = ResolvedClass> {
    (2usize..=6)
        .prop_flat_map(|n| (class_label(n), prop::sample::select(Partition::all(n))))
        .prop_filter("w in W", |(label, lambda)| !matches!(label, Label::D(_)) || lambda.parts().len() % 2 == 0)
        .prop_map(|(label, lambda)| {
            let spec: Vec<String> = lambda.parts().iter().map(ToString::to_string).collect();
            resolve_class(label, &spec.join("+")).unwrap()
        })
}

fn word(class: &ResolvedClass, picks: &[usize]) -> Permutation {
    let gens = centralizer_and_normalizer_gens(class).unwrap();
    picks
        .iter()
        .fold(Permutation::identity(class.sys.len()), |acc, &i| acc.compose(&gens[i % gens.len()].element))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn legendre_closed_forms_match_brute_force((n, q) in modulus_and_unit()) {
        prop_assert_eq!(sgn_plus(n, q).unwrap(), sgn_eps_bruteforce(n, q, Sign::Plus).unwrap());
        prop_assert_eq!(sgn_minus(n, q).unwrap(), sgn_eps_bruteforce(n, q, Sign::Minus).unwrap());
    }

    #[test]
    fn legendre_symbols_are_characters((n, a) in modulus_and_unit(), b in 1i64..1000) {
        prop_assume!(gcd(b, n) == 1);
        let ab = (a * b) % n.max(1);
        let ab = if ab == 0 { n } else { ab };
        prop_assert_eq!(sgn_plus(n, ab).unwrap(), sgn_plus(n, a).unwrap() * sgn_plus(n, b).unwrap());
        prop_assert_eq!(sgn_minus(n, ab).unwrap(), sgn_minus(n, a).unwrap() * sgn_minus(n, b).unwrap());
    }

    #[test]
    fn permutation_sign_is_multiplicative((a, b) in (1usize..12).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        let len = a.len();
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        prop_assert_eq!(a.sign(), Sign::from_parity((len - a.orbit_count()) as u64));
        prop_assert_eq!(a.inverse().sign(), a.sign());
    }

    #[test]
    fn signed_permutation_acts_by_homomorphism(
        (a, b) in (2usize..=5).prop_flat_map(|n| (signed_permutation(n), signed_permutation(n))),
    ) {
        let n = a.rank();
        let sys = RootSystem::classical(Label::B(n)).unwrap();
        let ab = a.compose(&b).root_action(&sys).unwrap();
        let (ra, rb) = (a.root_action(&sys).unwrap(), b.root_action(&sys).unwrap());
        prop_assert_eq!(ab, ra.compose(&rb));
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn block_cycle_order_is_twice_the_lcm(lambda in partition()) {
        let w = SignedPermutation::from_partition(&lambda);
        let l = lambda.parts().iter().fold(1u64, |acc, &p| lcm(acc, p as u64));
        prop_assert_eq!(w.order(), 2 * l);
        prop_assert!(w.is_elliptic());
        let n = lambda.total();
        let wl = w.pow(l as i64);
        let mut start = 0;
        for &p in lambda.parts() {
            let flipped = (l / p as u64) % 2 == 1;
            for i in start..start + p {
                prop_assert_eq!(wl.apply(i), if flipped { i + n } else { i });
            }
            start += p;
        }
    }

    #[test]
    fn lump_merges_equal_valuations(lambda in partition()) {
        let lumped = lambda.lump();
        prop_assert_eq!(lumped.total(), lambda.total());
        let mut sums = std::collections::BTreeMap::new();
        for &p in lambda.parts() {
            *sums.entry(two_adic(p as u64)).or_insert(0) += p;
        }
        prop_assert_eq!(lumped, Partition::new(sums.into_values().collect()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn w_has_sign_plus_one(class in classical_class()) {
        let ctx = SignContext::new(&class.sys, &class.w).unwrap();
        prop_assert_eq!(ctx.sign(&class.w).unwrap().sign, Sign::Plus);
        prop_assert_eq!(ctx.sign(&Permutation::identity(class.sys.len())).unwrap().sign, Sign::Plus);
    }

    #[test]
    fn sign_is_multiplicative_on_the_normalizer(
        class in classical_class(),
        a in prop::collection::vec(0usize..16, 1..4),
        b in prop::collection::vec(0usize..16, 1..4),
    ) {
        let ctx = SignContext::new(&class.sys, &class.w).unwrap();
        let (va, vb) = (word(&class, &a), word(&class, &b));
        let sa = ctx.sign(&va).unwrap();
        let sb = ctx.sign(&vb).unwrap();
        let sab = ctx.sign(&va.compose(&vb)).unwrap();
        prop_assert_eq!(sab.sign, sa.sign * sb.sign);
    }

    #[test]
    fn odd_powers_preserve_the_sign_when_q_is_one_mod_k(
        class in classical_class(),
        picks in prop::collection::vec(0usize..16, 1..4),
    ) {
        let order = class.w.order();
        let k = (order >> order.trailing_zeros()) as i64;
        prop_assume!(k > 1);
        let v = word(&class, &picks);
        let q = SignContext::new(&class.sys, &class.w).unwrap().sign(&v).unwrap().q;
        prop_assume!((q - 1).rem_euclid(k) == 0);
        let (a, b) = reduce_odd_power_check(&class.sys, &class.w, &v, k).unwrap();
        prop_assert_eq!(a, b);
    }
}
