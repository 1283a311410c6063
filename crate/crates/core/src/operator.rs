//! The right random-walk Markov operator `M` on `ℓ2(S¹)`, applied to finitely
//! supported vectors.
//!
//! `M` is never materialised: `(vM)(t) = (1/|X|) Σ_{s, i : s·x_i = t} v(s)`
//! is evaluated on the exact image support of `v`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Semigroup};
use crate::cayley::{ball, right_indegree_stats};
use crate::cogrowth::{count_vectors, gamma_prime};
use crate::error::{usage, Result};
use crate::numeric::ratio_nth_root;

/// `χ_1 Mⁿ` in exact arithmetic: numerators over a shared denominator `|X|ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkVector {
    pub step: usize,
    pub denominator: BigUint,
    pub numerators: BTreeMap<Element, BigUint>,
}

impl WalkVector {
    /// `χ_s`.
    pub fn point(s: Element) -> Self {
        WalkVector {
            step: 0,
            denominator: BigUint::one(),
            numerators: BTreeMap::from([(s, BigUint::one())]),
        }
    }

    pub fn probability(&self, s: Element) -> Ratio<BigUint> {
        let num = self.numerators.get(&s).cloned().unwrap_or_default();
        Ratio::new(num, self.denominator.clone())
    }

    pub fn total(&self) -> Ratio<BigUint> {
        Ratio::new(self.numerators.values().sum(), self.denominator.clone())
    }

    /// `Σ_s num(s)²` and `den²`, unreduced.
    pub fn norm_squared_parts(&self) -> (BigUint, BigUint) {
        let num = self.numerators.values().map(|x| x * x).sum();
        (num, &self.denominator * &self.denominator)
    }

    /// `|v|₂²` as a reduced rational.
    pub fn norm_squared(&self) -> Ratio<BigUint> {
        let (num, den) = self.norm_squared_parts();
        Ratio::new(num, den)
    }
}

/// `vM` for a walk vector.
pub fn apply(sg: &mut Semigroup, v: &WalkVector) -> WalkVector {
    let mut out: BTreeMap<Element, BigUint> = BTreeMap::new();
    for (&s, w) in &v.numerators {
        for i in 0..sg.rank() {
            *out.entry(sg.step(s, i)).or_default() += w;
        }
    }
    WalkVector {
        step: v.step + 1,
        denominator: &v.denominator * BigUint::from(sg.rank()),
        numerators: out,
    }
}

/// `χ_1 Mⁿ` for `n = 1..=horizon`.
pub fn walk_vectors(sg: &mut Semigroup, horizon: usize) -> Vec<WalkVector> {
    let mut v = WalkVector::point(sg.root());
    let mut out = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        v = apply(sg, &v);
        out.push(v.clone());
    }
    out
}

/// `χ_1 Mⁿ`; its entries are `λ_s(n)/|X|ⁿ`.
pub fn walk_vector(sg: &mut Semigroup, n: usize) -> WalkVector {
    walk_vectors(sg, n)
        .pop()
        .unwrap_or_else(|| WalkVector::point(sg.root()))
}

/// Outcome of [`verify_walk_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkIdentityCheck {
    pub passed: bool,
    pub checked_up_to: usize,
    /// First `n` where `γ'(2n)/|X|^{2n} != |χ_1 Mⁿ|₂²`.
    pub failure: Option<usize>,
}

/// Checks `γ'(2n) = |X|^{2n} |χ_1 Mⁿ|₂²` exactly for `n = 1..=walks.len()`.
///
/// `gamma_prime` is indexed by length, as returned by
/// [`crate::cogrowth::gamma_prime`].
pub fn verify_walk_identity(
    rank: usize,
    gamma_prime: &[BigUint],
    walks: &[WalkVector],
) -> WalkIdentityCheck {
    let k = BigUint::from(rank);
    for w in walks {
        let n = w.step;
        let Some(g) = gamma_prime.get(2 * n) else {
            return WalkIdentityCheck {
                passed: false,
                checked_up_to: n - 1,
                failure: Some(n),
            };
        };
        let lhs = Ratio::new(g.clone(), k.pow(2 * n as u32));
        if lhs != w.norm_squared() {
            return WalkIdentityCheck {
                passed: false,
                checked_up_to: n - 1,
                failure: Some(n),
            };
        }
    }
    WalkIdentityCheck {
        passed: true,
        checked_up_to: walks.len(),
        failure: None,
    }
}

fn check_support<T>(sg: &Semigroup, v: &[(Element, T)]) -> Result<()> {
    if v.iter().any(|(e, _)| e.index() >= sg.len()) {
        return Err(usage("vector support contains a foreign element"));
    }
    Ok(())
}

/// `|vM|₂ / |v|₂` for a finitely supported real vector. Repeated elements
/// are summed.
pub fn rayleigh_quotient(sg: &mut Semigroup, v: &[(Element, f64)]) -> Result<f64> {
    check_support(sg, v)?;
    let mut merged: BTreeMap<Element, f64> = BTreeMap::new();
    for &(e, x) in v {
        *merged.entry(e).or_default() += x;
    }
    let norm_sq: f64 = merged.values().map(|x| x * x).sum();
    if norm_sq == 0.0 {
        return Err(usage("Rayleigh quotient of the zero vector"));
    }
    let image = apply_real(sg, &merged);
    let image_sq: f64 = image.values().map(|x| x * x).sum();
    Ok(libm::sqrt(image_sq) / libm::sqrt(norm_sq))
}

/// `|vM|₂² / |v|₂²` in exact rational arithmetic.
pub fn rayleigh_quotient_squared_exact(
    sg: &mut Semigroup,
    v: &[(Element, Ratio<BigInt>)],
) -> Result<Ratio<BigInt>> {
    check_support(sg, v)?;
    let mut merged: BTreeMap<Element, Ratio<BigInt>> = BTreeMap::new();
    for (e, x) in v {
        *merged.entry(*e).or_insert_with(Ratio::zero) += x;
    }
    let norm_sq: Ratio<BigInt> = merged.values().map(|x| x * x).sum();
    if norm_sq.is_zero() {
        return Err(usage("Rayleigh quotient of the zero vector"));
    }
    let k = Ratio::from_integer(BigInt::from(sg.rank()));
    let mut image: BTreeMap<Element, Ratio<BigInt>> = BTreeMap::new();
    for (&s, x) in &merged {
        for i in 0..sg.rank() {
            *image.entry(sg.step(s, i)).or_insert_with(Ratio::zero) += x / &k;
        }
    }
    let image_sq: Ratio<BigInt> = image.values().map(|x| x * x).sum();
    Ok(image_sq / norm_sq)
}

fn apply_real(sg: &mut Semigroup, v: &BTreeMap<Element, f64>) -> BTreeMap<Element, f64> {
    let k = sg.rank() as f64;
    let mut image: BTreeMap<Element, f64> = BTreeMap::new();
    for (&s, &x) in v {
        for i in 0..sg.rank() {
            *image.entry(sg.step(s, i)).or_default() += x / k;
        }
    }
    image
}

/// `n Σ s_i² − (Σ s_i)²`, which is never negative.
pub fn square_sum_gap(values: &[f64]) -> f64 {
    let sum: f64 = values.iter().sum();
    let sq: f64 = values.iter().map(|x| x * x).sum();
    values.len() as f64 * sq - sum * sum
}

/// Lower bound for `‖M‖₂` with the vectors that produced it.
#[derive(Clone, Debug)]
pub struct NormBound {
    pub value: f64,
    pub quotients: Vec<f64>,
    pub iterates: Vec<Vec<(Element, f64)>>,
}

/// Power iteration for the top singular vector of `M`, confined to a ball.
///
/// Starting from `χ_1`, each iterate is `v ↦ (vM)Mᵀ` restricted to the ball
/// and renormalised; `(wMᵀ)(s) = (1/|X|) Σ_i w(s·x_i)` needs only forward
/// edges. Every recorded quotient is attained by a concrete vector, so the
/// maximum is a lower bound for `‖M‖₂`.
pub fn norm_lower_bound(
    sg: &mut Semigroup,
    radius: usize,
    iterations: usize,
    cap: usize,
) -> Result<NormBound> {
    if radius == 0 {
        return Err(usage("norm lower bound needs a radius of at least 1"));
    }
    let b = ball(sg, radius, cap)?;
    let k = sg.rank() as f64;
    let mut v: BTreeMap<Element, f64> = BTreeMap::from([(sg.root(), 1.0)]);
    let mut quotients = Vec::with_capacity(iterations);
    let mut iterates = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let vec: Vec<(Element, f64)> = v.iter().map(|(&e, &x)| (e, x)).collect();
        quotients.push(rayleigh_quotient(sg, &vec)?);
        iterates.push(vec);
        let w = apply_real(sg, &v);
        let mut next = BTreeMap::new();
        for &s in b.elements() {
            let mut acc = 0.0;
            for i in 0..sg.rank() {
                if let Some(x) = w.get(&sg.step(s, i)) {
                    acc += x;
                }
            }
            if acc != 0.0 {
                next.insert(s, acc / k);
            }
        }
        let norm = libm::sqrt(next.values().map(|x| x * x).sum::<f64>());
        if norm == 0.0 {
            break;
        }
        next.values_mut().for_each(|x| *x /= norm);
        v = next;
    }
    let value = quotients.iter().copied().fold(0.0, f64::max);
    Ok(NormBound {
        value,
        quotients,
        iterates,
    })
}

/// One row of the walk-norm table.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkNormRow {
    pub n: usize,
    /// `|χ_1 Mⁿ|₂²`, reduced.
    pub norm_squared: Ratio<BigUint>,
    pub norm: f64,
    /// `|χ_1 Mⁿ|₂^{1/n}`.
    pub root: f64,
}

/// `max_n |χ_1 Mⁿ|₂^{1/n}`, a lower bound for the spectral radius since
/// `‖Mⁿ‖₂ >= |χ_1 Mⁿ|₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBound {
    pub value: f64,
    pub rows: Vec<WalkNormRow>,
}

pub fn spectral_radius_lower_bound(walks: &[WalkVector]) -> SpectralBound {
    let mut value = 0.0f64;
    let rows = walks
        .iter()
        .map(|w| {
            let (num, den) = w.norm_squared_parts();
            let root = ratio_nth_root(&num, &den, 2 * w.step);
            value = value.max(root);
            WalkNormRow {
                n: w.step,
                norm: ratio_nth_root(&num, &den, 2),
                root,
                norm_squared: Ratio::new(num, den),
            }
        })
        .collect();
    SpectralBound { value, rows }
}

/// Right-indegree diagnostic: the operator is defined on `ℓ2(S¹)` exactly
/// when right indegree is bounded.
#[derive(Clone, Debug, PartialEq)]
pub struct IndegreeVerdict {
    /// Known without exploration (families and finite tables).
    pub known_bounded: Option<bool>,
    pub radius: usize,
    /// Max indegree per generator in the full ball.
    pub max_indegree: Vec<usize>,
    /// Same, in the ball of half the radius.
    pub max_indegree_half: Vec<usize>,
    /// Indegree kept growing with the radius (evidence, not proof, of
    /// unboundedness).
    pub growing: bool,
    /// Ball element attaining the max indegree for each generator, rendered.
    pub witness: Vec<Option<alloc::string::String>>,
    /// `(1/|X|) Σ_a sqrt(b_a)`: bounds `|vM|₂/|v|₂` for every `v` supported
    /// on the inner ball.
    pub inner_ball_quotient_bound: f64,
}

pub fn indegree_verdict(sg: &mut Semigroup, radius: usize, cap: usize) -> Result<IndegreeVerdict> {
    let radius = radius.max(2);
    let full = right_indegree_stats(&ball(sg, radius, cap)?);
    let half_ball = ball(sg, radius / 2, cap)?;
    let half = right_indegree_stats(&half_ball);
    let full_ball = ball(sg, radius, cap)?;
    let witness = full
        .witness
        .iter()
        .map(|w| w.map(|pos| sg.render(full_ball.elements()[pos])))
        .collect();
    let growing = full.max.iter().zip(&half.max).any(|(a, b)| a > b);
    let bound = full.max.iter().map(|&b| libm::sqrt(b as f64)).sum::<f64>() / sg.rank() as f64;
    Ok(IndegreeVerdict {
        known_bounded: sg.engine().known_bounded_right_indegree(),
        radius,
        growing,
        max_indegree_half: half.max,
        max_indegree: full.max,
        witness,
        inner_ball_quotient_bound: bound,
    })
}

/// A random vector with support at most `max_support`, drawn from `pool`,
/// entries uniform in `[-1, 1]`.
pub fn random_vector<R: Rng>(
    rng: &mut R,
    pool: &[Element],
    max_support: usize,
) -> Vec<(Element, f64)> {
    let size = rng.gen_range(1..=max_support.clamp(1, pool.len().max(1)));
    loop {
        let v: Vec<(Element, f64)> = (0..size)
            .map(|_| {
                (
                    pool[rng.gen_range(0..pool.len())],
                    rng.gen_range(-1.0..=1.0),
                )
            })
            .collect();
        if v.iter().any(|&(_, x)| x != 0.0) {
            return v;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorOptions {
    pub horizon: usize,
    pub radius: usize,
    pub iterations: usize,
    pub rayleigh_samples: usize,
    pub max_support: usize,
    pub seed: u64,
    pub cap: usize,
}

impl Default for OperatorOptions {
    fn default() -> Self {
        OperatorOptions {
            horizon: 10,
            radius: 6,
            iterations: 20,
            rayleigh_samples: 0,
            max_support: 50,
            seed: 0,
            cap: crate::DEFAULT_ELEMENT_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OperatorReport {
    pub options: OperatorOptions,
    pub spectral: SpectralBound,
    pub walk_identity: WalkIdentityCheck,
    pub norm: NormBound,
    /// Largest quotient over the random samples (0 when none were drawn).
    pub rayleigh_max: f64,
    pub indegree: IndegreeVerdict,
}

/// Runs every operator routine with the given options.
pub fn operator_report(sg: &mut Semigroup, options: &OperatorOptions) -> Result<OperatorReport> {
    if options.horizon == 0 {
        return Err(usage("horizon must be at least 1"));
    }
    let vectors = count_vectors(sg, options.horizon, options.cap)?;
    let gp = gamma_prime(&vectors);
    let walks = walk_vectors(sg, options.horizon);
    let walk_identity = verify_walk_identity(sg.rank(), &gp, &walks);
    let spectral = spectral_radius_lower_bound(&walks);
    let norm = norm_lower_bound(sg, options.radius, options.iterations, options.cap)?;

    let pool: Vec<Element> = ball(sg, options.radius, options.cap)?.elements().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut rayleigh_max = 0.0f64;
    for _ in 0..options.rayleigh_samples {
        let v = random_vector(&mut rng, &pool, options.max_support);
        rayleigh_max = rayleigh_max.max(rayleigh_quotient(sg, &v)?);
    }
    let indegree = indegree_verdict(sg, options.radius, options.cap)?;
    Ok(OperatorReport {
        options: options.clone(),
        spectral,
        walk_identity,
        norm,
        rayleigh_max,
        indegree,
    })
}
