//! Reference engines and brute-force oracles that recompute every quantity
//! from word evaluation alone, independently of the counting code.

use std::collections::BTreeMap;

use cogrowth::{
    eval_word, make_family, make_rewriting, Engine, Family, Form, GeneratorChoice, Semigroup, Word,
};
use num_bigint::BigUint;

pub struct Named {
    pub name: &'static str,
    pub engine: Engine,
    pub gens: GeneratorChoice,
}

impl Named {
    pub fn session(&self) -> Semigroup {
        Semigroup::new(self.engine.clone(), self.gens.clone()).unwrap()
    }
}

pub fn family(name: &'static str, f: Family) -> Named {
    let (engine, gens) = make_family(&f).unwrap();
    Named { name, engine, gens }
}

pub fn z_sym() -> Family {
    Family::IntegerLattice {
        dim: 1,
        gens: vec![("a".into(), vec![1]), ("b".into(), vec![-1])],
    }
}

pub fn z_asym() -> Family {
    Family::IntegerLattice {
        dim: 1,
        gens: vec![
            ("a".into(), vec![1]),
            ("a'".into(), vec![1]),
            ("b".into(), vec![-1]),
        ],
    }
}

pub fn acbc() -> Named {
    let engine = make_rewriting(
        vec!["a".into(), "b".into(), "c".into()],
        vec![(vec![1, 2], vec![0, 2])],
        false,
    )
    .unwrap();
    let gens = engine.default_generators();
    Named {
        name: "ac=bc",
        engine,
        gens,
    }
}

/// 0-based rows.
pub fn table(name: &'static str, rows: Vec<Vec<usize>>) -> Named {
    let engine = Engine::finite_table(&rows).unwrap();
    let gens = engine.default_generators();
    Named { name, engine, gens }
}

pub fn cyclic(m: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|i| (0..m).map(|j| (i + j) % m).collect())
        .collect()
}

pub fn right_zero(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|_| (0..m).collect()).collect()
}

pub fn left_zero(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|i| vec![i; m]).collect()
}

/// The symmetric group on three points, elements as permutations in
/// lexicographic order, product `(pq)(x) = q(p(x))`.
pub fn s3() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| idx([q[p[0]], q[p[1]], q[p[2]]]))
                .collect()
        })
        .collect()
}

/// Rectangular band `I × J` with `(i,j)(k,l) = (i,l)`.
pub fn rectangular_band(a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = a * b;
    (0..n)
        .map(|x| (0..n).map(|y| (x / b) * b + y % b).collect())
        .collect()
}

/// Chain `0 < 1 < ... < m-1` under min.
pub fn chain(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|i| (0..m).map(|j| i.min(j)).collect()).collect()
}

/// Every built-in engine kind, with the generator choices the tests lean on.
pub fn built_ins() -> Vec<Named> {
    vec![
        family("free rank 2", Family::Free { rank: 2 }),
        family("free rank 3", Family::Free { rank: 3 }),
        family(
            "free commutative rank 2",
            Family::FreeCommutative { rank: 2 },
        ),
        family("bicyclic", Family::Bicyclic),
        family("Z symmetric", z_sym()),
        family("Z asymmetric", z_asym()),
        family(
            "Z^2",
            Family::IntegerLattice {
                dim: 2,
                gens: vec![],
            },
        ),
        acbc(),
        table("C3", cyclic(3)),
        table("right zero 2", right_zero(2)),
        table("left zero 2", left_zero(2)),
    ]
}

pub fn words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::default()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|w| (0..k).map(move |i| w.concat(&Word(vec![i]))))
            .collect();
    }
    out
}

/// Element histogram of all `|X|^n` words, each evaluated from scratch.
pub fn histogram(engine: &Engine, gens: &GeneratorChoice, n: usize) -> BTreeMap<Form, u64> {
    let mut h = BTreeMap::new();
    for w in words(gens.len(), n) {
        *h.entry(eval_word(engine, gens, &w).unwrap()).or_insert(0) += 1;
    }
    h
}

/// Ordered pairs `(u, v)` of nonempty words with `|u| + |v| = n` and equal
/// values, enumerated pair by pair.
pub fn pair_count(engine: &Engine, gens: &GeneratorChoice, n: usize) -> u64 {
    let values: Vec<Vec<Form>> = (0..n)
        .map(|i| match i {
            0 => Vec::new(),
            _ => words(gens.len(), i)
                .iter()
                .map(|w| eval_word(engine, gens, w).unwrap())
                .collect(),
        })
        .collect();
    let mut total = 0;
    for i in 1..n {
        for u in &values[i] {
            total += values[n - i].iter().filter(|v| *v == u).count() as u64;
        }
    }
    total
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn catalan(k: u64) -> BigUint {
    binomial(2 * k, k) / BigUint::from(k + 1)
}

/// Brute-force predicates on a 0-based multiplication table.
pub struct TableOracle {
    pub rows: Vec<Vec<usize>>,
}

impl TableOracle {
    fn n(&self) -> usize {
        self.rows.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.rows[a][b]
    }

    /// `x S¹`
    pub fn right_ideal(&self, x: usize) -> Vec<bool> {
        let mut m = vec![false; self.n()];
        m[x] = true;
        for s in 0..self.n() {
            m[self.mul(x, s)] = true;
        }
        m
    }

    /// `S¹ x S¹`
    pub fn ideal(&self, x: usize) -> Vec<bool> {
        let mut m = vec![false; self.n()];
        for a in 0..=self.n() {
            for b in 0..=self.n() {
                let mut y = x;
                if a < self.n() {
                    y = self.mul(a, y);
                }
                if b < self.n() {
                    y = self.mul(y, b);
                }
                m[y] = true;
            }
        }
        m
    }

    pub fn left_reversible(&self) -> bool {
        (0..self.n()).all(|x| {
            (0..self.n()).all(|y| {
                let (a, b) = (self.right_ideal(x), self.right_ideal(y));
                a.iter().zip(&b).any(|(p, q)| *p && *q)
            })
        })
    }

    pub fn klawe(&self) -> bool {
        let n = self.n();
        (0..n).all(|s| {
            (0..n).all(|x| {
                (0..n).all(|y| {
                    self.mul(s, x) != self.mul(s, y)
                        || (0..n).any(|t| self.mul(x, t) == self.mul(y, t))
                })
            })
        })
    }

    pub fn right_cancellative(&self) -> bool {
        let n = self.n();
        (0..n).all(|s| (0..n).all(|x| (0..n).all(|y| x == y || self.mul(x, s) != self.mul(y, s))))
    }

    pub fn simple(&self) -> bool {
        (0..self.n()).all(|x| self.ideal(x).iter().all(|&b| b))
    }

    /// Intersection of all principal two-sided ideals.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&k| (0..self.n()).all(|x| self.ideal(x)[k]))
            .collect()
    }

    pub fn j_class_count(&self) -> usize {
        let ideals: Vec<Vec<bool>> = (0..self.n()).map(|x| self.ideal(x)).collect();
        let mut classes: Vec<&Vec<bool>> = ideals.iter().collect();
        classes.sort();
        classes.dedup();
        classes.len()
    }
}
