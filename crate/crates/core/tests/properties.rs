mod common;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use proptest::prelude::*;
use rayon::prelude::*;

use spectile::arith;
use spectile::cm::{
    check_t1, check_t2, cm_report, cm_tiling_set, complete_residue_system_check, compute_sa, is_cm, laba_spectrum,
    PrimePowerSet,
};
use spectile::constructions::{
    compose_tiles, product_spectrum_check, szabo_example, szabo_factor_pair, verify_szabo, ProductSet, SzaboParams,
};
use spectile::cyclotomic::{cyclotomic, cyclotomic_factorization, phi_at_one, IntPolynomial};
use spectile::residue_sets::{
    complement_search, crt_dual_map, crt_inverse, crt_map, decimate, difference_criterion, direct_sum_check,
    equidistribution_profile, recompose_decimation, tiling_check_cyclotomic, GroupElementTuple, IntegerSet, ResidueSet,
};
use spectile::spectral::{float_unitarity_residual, spectrum_search, verify_spectrum};
use spectile::structures::{
    build_prime_power_tile, enumerate_t_s, newman_criterion, newman_sa, DigitTree, DEFAULT_ENUMERATION_BOUND,
};

fn mobius(n: u64) -> i32 {
    let f = arith::factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`, dividing out the negative factors.
fn phi_by_mobius(n: u64) -> IntPolynomial {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in arith::divisors(n) {
        match mobius(n / d) {
            1 => num = &num * &IntPolynomial::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPolynomial::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    num.exact_div(&den).unwrap().expect("exact quotient")
}

fn reduced(a: &ResidueSet) -> IntegerSet {
    a.to_integer_set()
}

// ---- cyclotomic ----

#[test]
fn cyclotomic_matches_mobius_product() {
    for n in 1..=150 {
        assert_eq!(*cyclotomic(n), phi_by_mobius(n), "Φ_{n}");
    }
}

#[test]
fn divisor_product_is_x_n_minus_one() {
    for n in 1..=200u64 {
        let prod = arith::divisors(n).into_iter().fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic(d));
        assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
    }
}

#[test]
fn substitution_by_a_prime() {
    for s in 1..=100u64 {
        for p in [2u64, 3, 5, 7] {
            let lhs = cyclotomic(s).substitute_power(p as usize);
            let rhs = if s % p == 0 { (*cyclotomic(p * s)).clone() } else { &*cyclotomic(s) * &*cyclotomic(p * s) };
            assert_eq!(lhs, rhs, "s = {s}, p = {p}");
        }
    }
}

#[test]
fn substitution_by_a_coprime_power() {
    for s in 1..=200u64 {
        for t in 1..=200 / s {
            if arith::gcd(s, t) != 1 {
                continue;
            }
            let lhs = cyclotomic(s).substitute_power(t as usize);
            let rhs = arith::divisors(t).into_iter().fold(IntPolynomial::one(), |acc, r| &acc * &cyclotomic(r * s));
            assert_eq!(lhs, rhs, "s = {s}, t = {t}");
        }
    }
}

#[test]
fn phi_at_one_matches_evaluation() {
    for s in 1..=500u64 {
        assert_eq!(BigInt::from(phi_at_one(s)), cyclotomic(s).eval_at_one(), "s = {s}");
    }
}

proptest! {
    #[test]
    fn factorization_reconstructs(
        picks in prop::collection::vec((1u64..40, 1u32..3), 0..4),
        cofactor in prop::collection::vec(-3i64..4, 1..6),
    ) {
        let mut p = IntPolynomial::from_i64(&cofactor);
        prop_assume!(!p.is_zero());
        for &(n, k) in &picks {
            p = &p * &cyclotomic(n).pow(k);
        }
        let f = cyclotomic_factorization(&p).unwrap();
        prop_assert_eq!(f.reconstruct(), p);
        let mut want: BTreeMap<u64, u32> = BTreeMap::new();
        for &(n, k) in &picks {
            *want.entry(n).or_default() += k;
        }
        for (n, k) in want {
            prop_assert!(f.multiplicity(n) >= k);
        }
    }
}

// ---- residue_sets ----

#[test]
fn tiling_criteria_agree_on_all_small_tilings() {
    for n in 1..=36u64 {
        for (a, b) in common::tilings(n) {
            assert!(direct_sum_check(&a, &b).unwrap());
            assert!(difference_criterion(&a, &b).unwrap());
            assert!(tiling_check_cyclotomic(&reduced(&a), &reduced(&b), n), "{a} {b}");
        }
    }
}

fn sized_pair() -> impl Strategy<Value = (u64, Vec<u64>, Vec<u64>)> {
    (2u64..=60)
        .prop_flat_map(|n| {
            let divs: Vec<u64> = arith::divisors(n);
            (Just(n), prop::sample::select(divs))
        })
        .prop_flat_map(|(n, k)| {
            (
                Just(n),
                prop::sample::subsequence((0..n).collect::<Vec<_>>(), k as usize),
                prop::sample::subsequence((0..n).collect::<Vec<_>>(), (n / k) as usize),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn tiling_criteria_agree_on_random_pairs((n, a, b) in sized_pair()) {
        let ra = ResidueSet::new(n, a).unwrap();
        let rb = ResidueSet::new(n, b).unwrap();
        let direct = direct_sum_check(&ra, &rb).unwrap();
        prop_assert_eq!(direct, difference_criterion(&ra, &rb).unwrap());
        prop_assert_eq!(direct, tiling_check_cyclotomic(&reduced(&ra), &reduced(&rb), n));
    }

    #[test]
    fn complement_search_is_sound(n in 1u64..=40, bits in any::<u64>()) {
        let a = common_subset(n, bits);
        if let Some(b) = complement_search(&a) {
            prop_assert!(b.contains(0));
            prop_assert!(direct_sum_check(&a, &b).unwrap());
        }
    }

    #[test]
    fn crt_is_a_group_isomorphism(
        moduli in prop::sample::select(vec![vec![4u64, 9], vec![4, 9, 25], vec![3, 5, 7], vec![8, 27], vec![2, 3, 5, 7]]),
        seed in prop::collection::vec(any::<u64>(), 8),
    ) {
        let x: Vec<u64> = moduli.iter().zip(&seed).map(|(m, s)| s % m).collect();
        let y: Vec<u64> = moduli.iter().zip(seed.iter().skip(4)).map(|(m, s)| s % m).collect();
        let sum: Vec<u64> = x.iter().zip(&y).zip(&moduli).map(|((a, b), m)| (a + b) % m).collect();
        let m: u64 = moduli.iter().product();
        let tx = GroupElementTuple::new(x, moduli.clone()).unwrap();
        let ty = GroupElementTuple::new(y, moduli.clone()).unwrap();
        let ts = GroupElementTuple::new(sum, moduli.clone()).unwrap();
        prop_assert_eq!(crt_map(&ts).unwrap(), (crt_map(&tx).unwrap() + crt_map(&ty).unwrap()) % m);
        prop_assert_eq!(crt_dual_map(&ts).unwrap(), (crt_dual_map(&tx).unwrap() + crt_dual_map(&ty).unwrap()) % m);
        prop_assert_eq!(crt_inverse(crt_map(&tx).unwrap(), &moduli).unwrap(), tx);
    }

    #[test]
    fn decimation_reconstructs(elements in prop::collection::btree_set(0u64..500, 1..30), k in 1u64..20) {
        let a = IntegerSet::new(elements);
        prop_assert_eq!(recompose_decimation(&decimate(&a, k), k), a.mask_polynomial());
    }

    #[test]
    fn complete_residue_systems_are_cm(n in 1u64..=30, lifts in prop::collection::vec(0u64..4, 30)) {
        let a = IntegerSet::new((0..n).map(|i| i + n * lifts[i as usize]));
        prop_assert!(complete_residue_system_check(&a, n));
        prop_assert!(check_t1(&a).unwrap().holds);
        prop_assert!(check_t2(&a).unwrap().holds);
    }
}

fn common_subset(n: u64, bits: u64) -> ResidueSet {
    ResidueSet::new(n, std::iter::once(0).chain((1..n).filter(|i| bits >> i & 1 == 1))).unwrap()
}

#[test]
fn crt_is_bijective() {
    for moduli in [vec![4u64, 9], vec![4, 9, 25], vec![8, 3, 5]] {
        let m: u64 = moduli.iter().product();
        let mut images = BTreeSet::new();
        let mut duals = BTreeSet::new();
        for x in 0..m {
            let t = crt_inverse(x, &moduli).unwrap();
            assert_eq!(crt_map(&t).unwrap(), x);
            images.insert(crt_map(&t).unwrap());
            duals.insert(crt_dual_map(&t).unwrap());
        }
        assert_eq!(images.len() as u64, m);
        assert_eq!(duals.len() as u64, m);
    }
}

#[test]
fn complement_search_absence_is_exhaustive() {
    for n in 1..=12u64 {
        for bits in 0..1u64 << n {
            let a = common_subset(n, bits);
            if complement_search(&a).is_some() {
                continue;
            }
            for bb in 0..1u64 << n {
                let b = common_subset(n, bb);
                assert!(!direct_sum_check(&a, &b).unwrap(), "{a} has complement {b}");
            }
        }
    }
}

// ---- cm ----

#[test]
fn tiling_splits_prime_power_divisors() {
    for n in 1..=30u64 {
        let all: BTreeSet<u64> = arith::prime_power_divisors(n).into_iter().collect();
        for (a, b) in common::tilings(n) {
            let sa: BTreeSet<u64> = compute_sa(&reduced(&a)).unwrap().iter().collect();
            let sb: BTreeSet<u64> = compute_sa(&reduced(&b)).unwrap().iter().collect();
            assert!(sa.is_disjoint(&sb), "{a} ⊕ {b}");
            assert_eq!(sa.union(&sb).copied().collect::<BTreeSet<_>>(), all, "{a} ⊕ {b}");
        }
    }
}

#[test]
fn every_small_tile_satisfies_t1_and_two_prime_tiles_t2() {
    let failures: Vec<String> = (1..=40u64)
        .into_par_iter()
        .flat_map_iter(|n| {
            common::tiles(n).into_iter().filter_map(move |a| {
                let set = reduced(&a);
                let r = cm_report(&set).unwrap();
                let two_primes = arith::factorize(a.len() as u64).len() <= 2;
                (!r.t1.holds || (two_primes && !r.t2.holds)).then(|| format!("{a}"))
            })
        })
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}

/// CM sets drawn from the small tile corpus, deduplicated.
fn cm_corpus(max_n: u64) -> Vec<IntegerSet> {
    let mut out = BTreeSet::new();
    for n in 1..=max_n {
        for a in common::tiles(n) {
            let set = reduced(&a);
            if is_cm(&set).unwrap() {
                out.insert(set);
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn canonical_complement_needs_the_prime_itself() {
    // 2 ∉ S but 4 ∈ S: the complement Φ_2(x^5) is not a polynomial in x^2
    let s = PrimePowerSet::new([4, 5]).unwrap();
    assert_eq!(cm_tiling_set(&s).unwrap().elements(), &[0, 5]);
}

#[test]
fn canonical_complement_and_spectrum_for_cm_corpus() {
    for a in cm_corpus(24) {
        let sa = compute_sa(&a).unwrap();
        let n = sa.lcm();
        let b = cm_tiling_set(&sa).unwrap();
        let an = a.reduce_mod(n).unwrap();
        assert!(direct_sum_check(&an, &b.reduce_mod(n).unwrap()).unwrap(), "{a}");
        for p in sa.primes().into_iter().filter(|&p| sa.contains(p)) {
            assert!(b.elements().iter().all(|x| x % p == 0), "{b} for {sa} not in {p}Z");
        }
        assert!(verify_spectrum(&an, &laba_spectrum(&sa)).unwrap().holds(), "{a}");
    }
}

// ---- spectral ----

/// Spectral pairs `(A, Λ)` with `N ≤ max_n`, one per spectral set.
fn spectral_corpus(max_n: u64) -> Vec<(ResidueSet, ResidueSet)> {
    (1..=max_n)
        .flat_map(|n| (0..1u64 << (n - 1)).map(move |bits| common_subset(n, bits << 1)))
        .filter_map(|a| spectrum_search(&a).map(|l| (a, l)))
        .collect()
}

#[test]
fn spectrum_verdict_symmetries() {
    for (a, l) in spectral_corpus(14) {
        let n = a.modulus();
        assert!(verify_spectrum(&a, &l).unwrap().holds());
        assert!(verify_spectrum(&l, &a).unwrap().holds(), "{a} {l}");
        for t in [1, n / 2, n - 1] {
            assert!(verify_spectrum(&a.translate(t), &l).unwrap().holds());
            assert!(verify_spectrum(&a, &l.translate(t)).unwrap().holds());
        }
        for r in (1..n).filter(|&r| arith::gcd(r, n) == 1) {
            assert!(verify_spectrum(&a, &l.scale(r).unwrap()).unwrap().holds(), "{a} {l} r = {r}");
        }
        assert!(float_unitarity_residual(&a, &l).unwrap() < 1e-9);
    }
}

#[test]
fn failed_spectra_have_float_residual() {
    for n in 2..=10u64 {
        for bits in 0..1u64 << (n - 1) {
            let a = common_subset(n, bits << 1);
            let l = common_subset(n, (bits >> 1) << 1);
            if l.len() != a.len() {
                continue;
            }
            let exact = verify_spectrum(&a, &l).unwrap().holds();
            let residual = float_unitarity_residual(&a, &l).unwrap();
            assert_eq!(exact, residual < 1e-9, "{a} {l} residual {residual}");
        }
    }
}

// ---- structures ----

fn random_tree(p: u64, exponents: Vec<u32>, lifts: &[u64]) -> DigitTree {
    let mut tree = DigitTree::standard(p, exponents).unwrap();
    let paths: Vec<Vec<u64>> = tree.systems().keys().cloned().collect();
    let mut it = lifts.iter().copied().cycle();
    for path in paths {
        // nonzero representatives j + p·lift, in a shuffled order
        let mut rest: Vec<u64> = (1..p).map(|j| j + p * (it.next().unwrap() % 3)).collect();
        let len = rest.len();
        rest.rotate_left(it.next().unwrap() as usize % len);
        tree.set_system(&path, std::iter::once(0).chain(rest).collect()).unwrap();
    }
    tree
}

fn exponent_lists(p: u64) -> Vec<Vec<u32>> {
    let max = if p == 2 { 6 } else { 3 };
    (1u32..1 << max).map(|mask| (1..=max).filter(|k| mask >> (k - 1) & 1 == 1).collect::<Vec<u32>>()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_power_tiles_satisfy_newman(lifts in prop::collection::vec(any::<u64>(), 1..40)) {
        for p in [2u64, 3] {
            for exps in exponent_lists(p) {
                let tree = random_tree(p, exps, &lifts);
                let a = build_prime_power_tile(&tree).unwrap();
                prop_assert!(newman_criterion(&a).unwrap());
                prop_assert_eq!(newman_sa(&a).unwrap(), compute_sa(&a).unwrap());
                prop_assert_eq!(compute_sa(&a).unwrap(), tree.prime_power_set());
            }
        }
    }
}

/// All `S` with lcm exactly `l`, built from the prime-power divisors of `l`.
fn sets_with_lcm(l: u64) -> Vec<PrimePowerSet> {
    let ppd = arith::prime_power_divisors(l);
    (0u64..1 << ppd.len())
        .map(|mask| PrimePowerSet::new((0..ppd.len()).filter(|i| mask >> i & 1 == 1).map(|i| ppd[i])).unwrap())
        .filter(|s| s.lcm() == l)
        .collect()
}

#[test]
fn tile_families_are_complete_up_to_36() {
    for l in 1..=36u64 {
        if arith::factorize(l).len() > 2 {
            continue;
        }
        let mut by_s: BTreeMap<PrimePowerSet, BTreeSet<IntegerSet>> = BTreeMap::new();
        for t in common::tiles(l) {
            let t = reduced(&t);
            by_s.entry(compute_sa(&t).unwrap()).or_default().insert(t);
        }
        for s in sets_with_lcm(l) {
            let family: BTreeSet<IntegerSet> =
                enumerate_t_s(&s, DEFAULT_ENUMERATION_BOUND).unwrap().tiles.into_iter().collect();
            assert_eq!(family, by_s.remove(&s).unwrap_or_default(), "S = {s}");
        }
    }
}

#[test]
fn tile_family_members_are_cm_tiles() {
    for l in 1..=72u64 {
        if arith::factorize(l).len() > 2 {
            continue;
        }
        for s in sets_with_lcm(l) {
            for t in enumerate_t_s(&s, DEFAULT_ENUMERATION_BOUND).unwrap().tiles {
                let r = cm_report(&t).unwrap();
                assert_eq!(r.sa, s);
                assert!(r.is_cm(), "{t}");
                assert!(complement_search(&t.reduce_mod(l).unwrap()).is_some(), "{t}");
                let card_primes = arith::factorize(t.len() as u64).len();
                assert!(card_primes <= 2 && s.primes().len() <= 2);
                assert_eq!(card_primes, s.primes().len(), "{t}");
            }
        }
    }
}

// ---- constructions ----

fn params(moduli: [u64; 3], u: [u64; 3], pi: &str) -> SzaboParams {
    SzaboParams {
        moduli: moduli.to_vec(),
        u: u.to_vec(),
        v: moduli.iter().zip(&u).map(|(m, u)| m / u).collect(),
        pi: pi.parse().unwrap(),
        sigma: Some(pi.parse().unwrap()),
    }
}

#[test]
fn szabo_constructions_verify() {
    let cases = [
        params([4, 9, 25], [2, 3, 5], "(1 2 3)"),
        params([4, 9, 25], [2, 3, 5], "(1 3 2)"),
        params([4, 4, 4], [2, 2, 2], "(1 2 3)"),
        params([9, 4, 25], [3, 2, 5], "(1 2 3)"),
        params([8, 9, 25], [2, 3, 5], "(1 2 3)"),
        params([8, 9, 25], [4, 3, 5], "(1 3 2)"),
    ];
    for p in cases {
        let out = szabo_example(&p).unwrap();
        let report = verify_szabo(&out).unwrap();
        assert!(report.all_passed(), "{p:?}: {:?}", report.failures());
        assert_ne!(out.b, out.b_prime);
    }
    let p = SzaboParams {
        moduli: vec![4, 4, 4, 4],
        u: vec![2; 4],
        v: vec![2; 4],
        pi: "(1 2 3 4)".parse().unwrap(),
        sigma: Some("(1 4 3 2)".parse().unwrap()),
    };
    assert!(verify_szabo(&szabo_example(&p).unwrap()).unwrap().all_passed());
}

#[test]
fn product_and_cyclic_spectrum_routes_agree() {
    let (a, b) = szabo_factor_pair(&[2, 3, 5], &[2, 3, 5]);
    let (lb, la) = szabo_factor_pair(&[2, 3, 5], &[2, 3, 5]);
    for (set, lambda) in [(&a, &la), (&b, &lb), (&a, &lb), (&b, &la)] {
        let product = product_spectrum_check(set, lambda).unwrap();
        let image = set.crt_image().unwrap();
        assert_eq!(product, verify_spectrum(&image, &lambda.crt_image().unwrap()).unwrap().holds());
        assert_eq!(product, verify_spectrum(&image, &lambda.crt_dual_image().unwrap()).unwrap().holds());
    }
    let moduli = vec![4u64, 9, 25];
    let lambda =
        ProductSet::new(moduli.clone(), la.elements().iter().map(|e| vec![e[0], (e[1] + 1) % 9, e[2]])).unwrap();
    assert!(product_spectrum_check(&a, &lambda).unwrap());
}

#[test]
fn two_factor_multiplicities() {
    let a: IntegerSet = "{0,4,8,9,13,17}".parse().unwrap();
    let b: IntegerSet = "{0,12,18,24,30,42}".parse().unwrap();
    let fa = cyclotomic_factorization(&a.mask_polynomial()).unwrap();
    let fb = cyclotomic_factorization(&b.mask_polynomial()).unwrap();
    assert_eq!(fa.multiplicity(6), 2);
    assert_eq!(fb.multiplicity(36), 2);
    for shared in [12, 18] {
        assert_eq!((fa.multiplicity(shared), fb.multiplicity(shared)), (1, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_profile(
        seed in any::<u64>(),
        n in 1u64..=8,
        m in 1u64..=8,
    ) {
        let outer = common::tilings(n);
        let inner = common::tilings(m);
        let (a, b) = outer[(seed % outer.len() as u64) as usize].clone();
        let c = inner[((seed >> 16) % inner.len() as u64) as usize].1.clone();
        let choices: Vec<ResidueSet> = inner.iter().filter(|(_, cc)| *cc == c).map(|(x, _)| x.clone()).collect();
        let family: BTreeMap<u64, ResidueSet> = a
            .elements()
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, choices[((seed >> (24 + i)) % choices.len() as u64) as usize].clone()))
            .collect();
        let t = compose_tiles(&a, &b, &family, &c).unwrap();
        prop_assert!(direct_sum_check(&t.a, &t.b).unwrap());
        let profile = equidistribution_profile(&reduced(&t.a), n);
        for class in 0..n {
            let want = family.get(&class).map_or(0, ResidueSet::len);
            prop_assert_eq!(profile[class as usize], want);
        }
    }
}
