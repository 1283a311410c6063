use super::*;
use crate::algebra::{eval_word, make_family, Engine, Family, GeneratorChoice, Word};
use crate::DEFAULT_ELEMENT_CAP;
use alloc::string::ToString;
use proptest::prelude::*;

fn session(family: Family) -> Semigroup {
    let (e, g) = make_family(&family).unwrap();
    Semigroup::new(e, g).unwrap()
}

fn z_sym() -> Family {
    Family::IntegerLattice {
        dim: 1,
        gens: vec![("a".to_string(), vec![1]), ("b".to_string(), vec![-1])],
    }
}

fn z_asym() -> Family {
    Family::IntegerLattice {
        dim: 1,
        gens: vec![
            ("a".to_string(), vec![1]),
            ("a'".to_string(), vec![1]),
            ("b".to_string(), vec![-1]),
        ],
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::default()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|w| (0..k).map(move |i| w.concat(&Word(vec![i]))))
            .collect();
    }
    out
}

/// Brute-force oracle: evaluate every word of length n from scratch.
fn histogram(engine: &Engine, gens: &GeneratorChoice, n: usize) -> BTreeMap<Form, u64> {
    let mut h = BTreeMap::new();
    for w in words(gens.len(), n) {
        *h.entry(eval_word(engine, gens, &w).unwrap()).or_insert(0) += 1;
    }
    h
}

/// Brute-force oracle: ordered pairs of nonempty words with |u|+|v| = n and ū = v̄.
fn pair_count(engine: &Engine, gens: &GeneratorChoice, n: usize) -> u64 {
    let mut total = 0;
    for i in 1..n {
        let us: Vec<Form> = words(gens.len(), i)
            .iter()
            .map(|w| eval_word(engine, gens, w).unwrap())
            .collect();
        let vs: Vec<Form> = words(gens.len(), n - i)
            .iter()
            .map(|w| eval_word(engine, gens, w).unwrap())
            .collect();
        total += us
            .iter()
            .map(|u| vs.iter().filter(|v| *v == u).count() as u64)
            .sum::<u64>();
    }
    total
}

#[test]
fn count_vectors_match_histograms() {
    for family in [
        Family::Bicyclic,
        Family::Free { rank: 2 },
        Family::FreeCommutative { rank: 2 },
        z_asym(),
    ] {
        let (e, g) = make_family(&family).unwrap();
        let mut sg = Semigroup::new(e.clone(), g.clone()).unwrap();
        let vectors = count_vectors(&mut sg, 6, DEFAULT_ELEMENT_CAP).unwrap();
        for v in &vectors {
            let oracle = histogram(&e, &g, v.n);
            let ours: BTreeMap<Form, u64> = v
                .counts
                .iter()
                .map(|(s, c)| (sg.form(*s).unwrap().clone(), u64::try_from(c).unwrap()))
                .collect();
            assert_eq!(ours, oracle, "{family:?} n={}", v.n);
        }
    }
}

#[test]
fn count_vector_examples() {
    let mut b = session(Family::Bicyclic);
    let v = count_vectors(&mut b, 2, 100).unwrap();
    assert_eq!(v[1].get(b.root()), big(1));

    let mut z = session(z_sym());
    let v = count_vectors(&mut z, 4, 100).unwrap();
    assert_eq!(v[3].get(z.root()), big(6));

    let mut f = session(Family::Free { rank: 2 });
    let v = count_vectors(&mut f, 5, 1000).unwrap();
    for cv in &v {
        assert_eq!(cv.support_len(), 1 << cv.n);
        assert!(cv.counts.values().all(|c| c == &big(1)));
    }
    assert!(matches!(
        count_vectors(&mut session(Family::Free { rank: 2 }), 12, 500),
        Err(Error::Resource { .. })
    ));
}

#[test]
fn local_cogrowth_examples() {
    let mut b = session(Family::Bicyclic);
    let v = count_vectors(&mut b, 8, 1000).unwrap();
    let l = local_cogrowth(&v, b.root());
    assert_eq!(
        [&l[1], &l[3], &l[5], &l[7]],
        [&big(1), &big(2), &big(5), &big(14)]
    );
    assert!(l[0].is_zero() && l[2].is_zero());

    let mut z = session(z_asym());
    let v = count_vectors(&mut z, 6, 1000).unwrap();
    let l = local_cogrowth(&v, z.root());
    assert_eq!([&l[1], &l[3], &l[5]], [&big(4), &big(24), &big(160)]);

    let mut fc = session(Family::FreeCommutative { rank: 2 });
    let ab = fc.parse_element("ab").unwrap();
    let v = count_vectors(&mut fc, 8, 1000).unwrap();
    let l = local_cogrowth(&v, ab);
    for (idx, x) in l.iter().enumerate() {
        assert_eq!(x, &big(if idx + 1 == 2 { 2 } else { 0 }));
    }
}

#[test]
fn gamma_examples() {
    let mut f = session(Family::Free { rank: 2 });
    let t = CogrowthTable::compute(&mut f, 4, &[], 1000).unwrap();
    assert_eq!(t.gamma_prime[4], big(4));
    assert_eq!(t.gamma[4], big(4));
    assert_eq!(t.gamma[3], big(0));
    assert_eq!(t.gamma_limit(), 8);

    let mut fc = session(Family::FreeCommutative { rank: 2 });
    let t = CogrowthTable::compute(&mut fc, 4, &[], 1000).unwrap();
    assert_eq!(t.gamma_prime[4], big(6));
    assert_eq!(t.gamma[4], big(6));

    let (e, g) = make_family(&Family::Bicyclic).unwrap();
    let mut b = Semigroup::new(e.clone(), g.clone()).unwrap();
    let t = CogrowthTable::compute(&mut b, 4, &[], 1000).unwrap();
    assert_eq!(t.gamma_prime[2], big(2));
    assert_eq!(t.gamma_limit(), 5);
    for n in 2..=5 {
        assert_eq!(t.gamma[n], big(pair_count(&e, &g, n)), "n = {n}");
    }
}

#[test]
fn gamma_rate_examples() {
    for n in 1..=8 {
        let mut f = session(Family::Free { rank: 2 });
        let t = CogrowthTable::compute(&mut f, n, &[], 10_000).unwrap();
        let r = t.gamma_rate();
        assert!((r.value - core::f64::consts::SQRT_2).abs() < 1e-13);
        assert!(r.certified_lower_bound);
    }
    // binom(20,10)^(1/20), computed independently.
    let expected = 1.8337069353546647;
    for family in [Family::FreeCommutative { rank: 2 }, z_sym()] {
        let mut sg = session(family);
        let t = CogrowthTable::compute(&mut sg, 10, &[], 10_000).unwrap();
        let r = t.gamma_rate();
        assert!((r.value - expected).abs() < 1e-12, "{}", r.value);
        assert_eq!(r.argmax, Some(20));
    }
    let mut one = session(Family::Free { rank: 1 });
    let t = CogrowthTable::compute(&mut one, 6, &[], 100).unwrap();
    assert_eq!(t.gamma_rate().value, 1.0);
    assert!(gamma_rate(&[BigUint::zero()]).is_err());
}

#[test]
fn local_rate_examples() {
    let mut b = session(Family::Bicyclic);
    let root = b.root();
    let t = CogrowthTable::compute(&mut b, 20, &[root], 10_000).unwrap();
    let r = local_rate(&t.lambda[0].1).unwrap();
    // 16796^(1/20)
    assert!((r.value - 1.626523316303129).abs() < 1e-12);
    assert_eq!(r.window, (10..=20).collect::<Vec<_>>());
    assert!(!r.certified_lower_bound);

    let mut fc = session(Family::FreeCommutative { rank: 2 });
    let ab = fc.parse_element("ab").unwrap();
    let t = CogrowthTable::compute(&mut fc, 10, &[ab], 10_000).unwrap();
    let r = local_rate(&t.lambda[0].1).unwrap();
    assert_eq!(r.value, 0.0);
    assert_eq!(r.argmax, None);

    let mut z = session(z_asym());
    let root = z.root();
    let t = CogrowthTable::compute(&mut z, 12, &[root], 10_000).unwrap();
    let r = local_rate(&t.lambda[0].1).unwrap();
    // (binom(12,6) * 2^6)^(1/12) = 59136^(1/12)
    assert!((r.value - 2.498356035034467).abs() < 1e-12, "{}", r.value);
    assert!(local_rate(&[big(1)]).is_err());
}

#[test]
fn convolution_check_passes() {
    for family in [Family::Free { rank: 2 }, Family::Bicyclic] {
        let mut sg = session(family);
        let tracked = default_tracked(&mut sg);
        let t = CogrowthTable::compute(&mut sg, 4, &tracked, 1000).unwrap();
        let check = verify_convolution(&sg, &t);
        assert!(check.passed, "{:?}", check.failure);
        assert!(check.enumerated_up_to >= 5);
    }
}

#[test]
fn convolution_check_detects_tampering() {
    let mut sg = session(Family::Bicyclic);
    let mut t = CogrowthTable::compute(&mut sg, 4, &[], 1000).unwrap();
    t.gamma[4] += 1u32;
    assert!(!verify_convolution(&sg, &t).passed);
}

#[test]
fn symmetric_group_local_equals_global() {
    let mut z = session(z_sym());
    let root = z.root();
    let t = CogrowthTable::compute(&mut z, 20, &[root], 10_000).unwrap();
    for n in 1..=10 {
        assert_eq!(t.lambda[0].1[2 * n - 1], t.gamma_prime[2 * n]);
    }
}

#[test]
fn quotient_increases_counts() {
    // Free commutative monoid on a, b onto (Z/2)^2 with a -> (1,0), b -> (0,1).
    let (fc, fg) = make_family(&Family::FreeCommutative { rank: 2 }).unwrap();
    let klein: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
    let t_engine = Engine::finite_table(&klein).unwrap();
    let tg = GeneratorChoice::new(
        vec!["a".to_string(), "b".to_string()],
        vec![Form::Table(1), Form::Table(2)],
    )
    .unwrap();
    let mut s = Semigroup::new(fc, fg).unwrap();
    let mut q = Semigroup::new(t_engine, tg).unwrap();
    let ts = CogrowthTable::compute(&mut s, 8, &[], 10_000).unwrap();
    let tq = CogrowthTable::compute(&mut q, 8, &[], 10_000).unwrap();
    for n in 2..=8 {
        assert!(tq.gamma[n] >= ts.gamma[n], "n = {n}");
    }
    for word in ["a", "ab", "aab", "abab", "bbbb"] {
        let x = s.parse_element(word).unwrap();
        let fx = q.parse_element(word).unwrap();
        for n in 1..=8 {
            assert!(tq.vectors[n - 1].get(fx) >= ts.vectors[n - 1].get(x));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_on_lattices(
        vecs in prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 2]), 1..4),
        horizon in 1usize..9,
    ) {
        let gens = vecs.iter().enumerate().map(|(i, &x)| (alloc::format!("g{i}"), vec![x])).collect();
        let mut sg = session(Family::IntegerLattice { dim: 1, gens });
        let t = CogrowthTable::compute(&mut sg, horizon, &[], 100_000).unwrap();
        let k = BigUint::from(vecs.len());
        for v in &t.vectors {
            prop_assert_eq!(v.total(), k.pow(v.n as u32));
        }
        for n in 0..t.gamma_prime.len() {
            if n % 2 == 1 {
                prop_assert!(t.gamma_prime[n].is_zero());
            }
            if n <= t.gamma_limit() {
                prop_assert!(t.gamma[n] >= t.gamma_prime[n]);
            }
        }
        let mut previous = 0.0;
        for n in 1..=horizon {
            let r = gamma_rate(&t.gamma_prime[..=2 * n]).unwrap().value;
            prop_assert!(r >= previous);
            prop_assert!(r >= libm::sqrt(vecs.len() as f64) - 1e-12);
            prop_assert!(r <= vecs.len() as f64 + 1e-12);
            previous = r;
        }
    }
}
