//! Exact local and global cogrowth functions and their rate estimates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::{Element, Form, Semigroup};
use crate::error::{usage, Error, Result};
use crate::numeric::nth_root;

/// Number of length-`n` words representing each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    pub n: usize,
    pub counts: BTreeMap<Element, BigUint>,
}

impl CountVector {
    /// `λ_s(n)`; zero for elements outside the support.
    pub fn get(&self, s: Element) -> BigUint {
        self.counts.get(&s).cloned().unwrap_or_default()
    }

    /// Sum of all counts, `|X|^n` by construction.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// `Σ_s v[s]·w[s]`.
    pub fn dot(&self, other: &CountVector) -> BigUint {
        let (small, large) = if self.counts.len() <= other.counts.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .counts
            .iter()
            .filter_map(|(s, a)| large.counts.get(s).map(|b| a * b))
            .sum()
    }
}

/// Count vectors `v_1..=v_horizon`: `v_1` histograms the generator targets
/// and `v_{n+1}[t] = Σ_{s·x_i = t} v_n[s]`.
pub fn count_vectors(sg: &mut Semigroup, horizon: usize, cap: usize) -> Result<Vec<CountVector>> {
    let mut out: Vec<CountVector> = Vec::with_capacity(horizon);
    if horizon == 0 {
        return Ok(out);
    }
    let root = sg.root();
    let mut current = CountVector {
        n: 0,
        counts: BTreeMap::from([(root, BigUint::one())]),
    };
    for n in 1..=horizon {
        let mut next: BTreeMap<Element, BigUint> = BTreeMap::new();
        for (&s, count) in &current.counts {
            for i in 0..sg.rank() {
                let t = sg.step(s, i);
                *next.entry(t).or_default() += count;
            }
            if sg.len() > cap {
                return Err(Error::Resource { cap, layer: n });
            }
        }
        current = CountVector { n, counts: next };
        out.push(current.clone());
    }
    Ok(out)
}

/// `λ_s(1..=N)` read off the count vectors.
pub fn local_cogrowth(vectors: &[CountVector], s: Element) -> Vec<BigUint> {
    vectors.iter().map(|v| v.get(s)).collect()
}

/// `γ'(0..=2N)`: `γ'(2k) = Σ_s v_k[s]²`, zero at odd lengths and at 0.
pub fn gamma_prime(vectors: &[CountVector]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); 2 * vectors.len() + 1];
    for v in vectors {
        out[2 * v.n] = v.counts.values().map(|c| c * c).sum();
    }
    out
}

/// Largest `n` for which `γ(n)` is exact from `v_1..=v_N`.
///
/// Every split `i + j = n` needs `i, j <= N`, so in general `n <= N + 1`.
/// When word length is an invariant, splits with `i != j` vanish and all
/// `n <= 2N` are exact.
pub fn gamma_limit(horizon: usize, graded: bool) -> usize {
    if horizon == 0 {
        0
    } else if graded {
        2 * horizon
    } else {
        horizon + 1
    }
}

/// `γ(0..=limit)` by the convolution `γ(n) = Σ_{i+j=n} ⟨v_i, v_j⟩`.
pub fn gamma(vectors: &[CountVector], graded: bool) -> Vec<BigUint> {
    let horizon = vectors.len();
    let limit = gamma_limit(horizon, graded);
    let mut out = vec![BigUint::zero(); limit + 1];
    for (n, slot) in out.iter_mut().enumerate().skip(2) {
        let lo = 1.max(n.saturating_sub(horizon));
        let hi = horizon.min(n - 1);
        for i in lo..=hi {
            let j = n - i;
            if graded && i != j {
                continue;
            }
            *slot += vectors[i - 1].dot(&vectors[j - 1]);
        }
    }
    out
}

/// A rate read off a finite prefix of a counting sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct RateEstimate {
    pub value: f64,
    pub horizon: usize,
    /// Whether `value` is a proven lower bound for the limiting rate.
    pub certified_lower_bound: bool,
    /// Lengths `n` that were considered.
    pub window: Vec<usize>,
    /// Length attaining the maximum, if any count was positive.
    pub argmax: Option<usize>,
}

fn max_root(values: impl Iterator<Item = (usize, BigUint)>) -> (f64, Option<usize>) {
    let mut best = (0.0f64, None);
    for (n, x) in values {
        if x.is_zero() {
            continue;
        }
        let r = nth_root(&x, n);
        if best.1.is_none() || r > best.0 {
            best = (r, Some(n));
        }
    }
    best
}

/// `max_{even n <= 2N} γ'(n)^{1/n}`.
///
/// `γ` is the supremum of `γ'(n)^{1/n}` over all `n`, so every value this
/// returns is a lower bound for the global cogrowth rate.
pub fn gamma_rate(gamma_prime: &[BigUint]) -> Result<RateEstimate> {
    let horizon = gamma_prime.len() / 2;
    if horizon == 0 {
        return Err(usage("global cogrowth rate needs a horizon of at least 1"));
    }
    let window: Vec<usize> = (1..=horizon).map(|k| 2 * k).collect();
    let (value, argmax) = max_root(window.iter().map(|&n| (n, gamma_prime[n].clone())));
    Ok(RateEstimate {
        value,
        horizon,
        certified_lower_bound: true,
        window,
        argmax,
    })
}

/// `max_{⌈N/2⌉ <= n <= N} λ_s(n)^{1/n}`, a heuristic for the limsup; never
/// certified.
pub fn local_rate(lambda: &[BigUint]) -> Result<RateEstimate> {
    let horizon = lambda.len();
    if horizon < 2 {
        return Err(usage("local cogrowth rate needs a horizon of at least 2"));
    }
    let window: Vec<usize> = (horizon.div_ceil(2)..=horizon).collect();
    let (value, argmax) = max_root(window.iter().map(|&n| (n, lambda[n - 1].clone())));
    Ok(RateEstimate {
        value,
        horizon,
        certified_lower_bound: false,
        window,
        argmax,
    })
}

/// Everything the cogrowth report needs, computed once.
#[derive(Clone, Debug)]
pub struct CogrowthTable {
    pub horizon: usize,
    pub graded: bool,
    pub vectors: Vec<CountVector>,
    /// `(s, λ_s(1..=N))` for each tracked element.
    pub lambda: Vec<(Element, Vec<BigUint>)>,
    /// `γ'(0..=2N)`.
    pub gamma_prime: Vec<BigUint>,
    /// `γ(0..=gamma_limit)`.
    pub gamma: Vec<BigUint>,
}

impl CogrowthTable {
    pub fn compute(
        sg: &mut Semigroup,
        horizon: usize,
        tracked: &[Element],
        cap: usize,
    ) -> Result<Self> {
        if horizon == 0 {
            return Err(usage("horizon must be at least 1"));
        }
        let vectors = count_vectors(sg, horizon, cap)?;
        let graded = sg.is_graded();
        let lambda = tracked
            .iter()
            .map(|&s| (s, local_cogrowth(&vectors, s)))
            .collect();
        Ok(CogrowthTable {
            horizon,
            graded,
            gamma_prime: gamma_prime(&vectors),
            gamma: gamma(&vectors, graded),
            lambda,
            vectors,
        })
    }

    pub fn gamma_limit(&self) -> usize {
        self.gamma.len() - 1
    }

    pub fn gamma_rate(&self) -> RateEstimate {
        gamma_rate(&self.gamma_prime).expect("horizon is positive")
    }

    pub fn local_rates(&self) -> Result<Vec<(Element, RateEstimate)>> {
        self.lambda
            .iter()
            .map(|(s, l)| Ok((*s, local_rate(l)?)))
            .collect()
    }
}

/// Elements tracked by default: the identity of `S¹` and every distinct
/// generator target, in generator order.
pub fn default_tracked(sg: &mut Semigroup) -> Vec<Element> {
    let mut out = vec![sg.root()];
    for i in 0..sg.rank() {
        let t = sg.step(sg.root(), i);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// Outcome of [`verify_convolution`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionCheck {
    pub passed: bool,
    /// Largest `n` compared against pair enumeration.
    pub enumerated_up_to: usize,
    pub failure: Option<String>,
}

/// Pairs enumerated per length before the brute-force side gives up.
const PAIR_BUDGET: u128 = 20_000_000;

/// Checks `γ(n)` against direct enumeration of word pairs for
/// `n <= min(limit, 8)`, and `γ(2n) >= λ_s(n)²` for every tracked element.
pub fn verify_convolution(sg: &Semigroup, table: &CogrowthTable) -> ConvolutionCheck {
    let engine = sg.engine();
    let targets = sg.generators().targets();
    let k = targets.len() as u128;
    let mut limit = table.gamma_limit().min(8);
    while limit >= 2 && (limit as u128 - 1) * k.pow(limit as u32) > PAIR_BUDGET {
        limit -= 1;
    }

    // forms_by_len[l] holds the element of every word of length l.
    let mut forms_by_len: Vec<Vec<Form>> = vec![Vec::new(), targets.to_vec()];
    for l in 2..limit {
        let prev = &forms_by_len[l - 1];
        let next: Vec<Form> = prev
            .iter()
            .flat_map(|f| targets.iter().map(move |t| engine.mul_unchecked(f, t)))
            .collect();
        forms_by_len.push(next);
    }

    for n in 2..=limit {
        let mut pairs = BigUint::zero();
        for i in 1..n {
            let (us, vs) = (&forms_by_len[i], &forms_by_len[n - i]);
            let count = us
                .iter()
                .map(|u| vs.iter().filter(|v| *v == u).count() as u64)
                .sum::<u64>();
            pairs += count;
        }
        if pairs != table.gamma[n] {
            return ConvolutionCheck {
                passed: false,
                enumerated_up_to: n,
                failure: Some(format!(
                    "gamma({n}) = {} but pair enumeration gives {pairs}",
                    table.gamma[n]
                )),
            };
        }
    }

    for (s, lambda) in &table.lambda {
        for (idx, l) in lambda.iter().enumerate() {
            let n = idx + 1;
            if 2 * n > table.gamma_limit() {
                break;
            }
            if table.gamma[2 * n] < l * l {
                return ConvolutionCheck {
                    passed: false,
                    enumerated_up_to: limit,
                    failure: Some(format!(
                        "gamma({}) < lambda_{}({n})^2",
                        2 * n,
                        sg.render(*s)
                    )),
                };
            }
        }
    }
    ConvolutionCheck {
        passed: true,
        enumerated_up_to: limit,
        failure: None,
    }
}

#[cfg(test)]
mod tests;
