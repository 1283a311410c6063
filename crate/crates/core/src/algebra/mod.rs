//! Semigroup engines: multiplication and canonical forms, the built-in
//! families, and constructions on generator choices.

mod rewriting;
mod session;
mod table;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{domain, usage, Error, Result};

pub use rewriting::{shortlex_less, tokenize, RewritingSystem, Rule};
pub use session::{Element, Semigroup};
pub use table::Table;

/// Canonical form of a semigroup element. Equal forms are equal elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    /// Index into a multiplication table (`order` is the adjoined identity).
    Table(u32),
    /// Irreducible word over the engine alphabet; empty is the identity of `S¹`.
    Word(Vec<u8>),
    /// Exponent vector of a free commutative monoid.
    Exponents(Vec<u32>),
    /// `c^c b^b` in the bicyclic monoid `<b, c | bc = 1>`.
    Bicyclic { c: u32, b: u32 },
    /// Point of `Z^d`.
    Lattice(Vec<BigInt>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    FiniteTable,
    Rewriting,
    Free,
    FreeCommutative,
    Bicyclic,
    IntegerLattice,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::FiniteTable => "finite_table",
            EngineKind::Rewriting => "rewriting",
            EngineKind::Free => "free",
            EngineKind::FreeCommutative => "free_commutative",
            EngineKind::Bicyclic => "bicyclic",
            EngineKind::IntegerLattice => "integer_lattice",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "finite_table" => EngineKind::FiniteTable,
            "rewriting" => EngineKind::Rewriting,
            "free" => EngineKind::Free,
            "free_commutative" => EngineKind::FreeCommutative,
            "bicyclic" => EngineKind::Bicyclic,
            "integer_lattice" => EngineKind::IntegerLattice,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Table(Table),
    Rewriting(RewritingSystem),
    Free { rank: usize, monoid: bool },
    FreeCommutative { rank: usize },
    Bicyclic,
    Lattice { dim: usize },
}

/// An immutable semigroup engine.
///
/// Engines know how to multiply canonical forms; they know nothing about
/// generators or interning (see [`Semigroup`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Engine {
    repr: Repr,
    opposite: bool,
}

impl Engine {
    fn new(repr: Repr) -> Self {
        Engine {
            repr,
            opposite: false,
        }
    }

    /// Free semigroup of the given rank.
    pub fn free(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(Engine::new(Repr::Free {
            rank,
            monoid: false,
        }))
    }

    /// Free commutative monoid of the given rank.
    pub fn free_commutative(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(Engine::new(Repr::FreeCommutative { rank }))
    }

    /// The bicyclic monoid `<b, c | bc = 1>`.
    pub fn bicyclic() -> Self {
        Engine::new(Repr::Bicyclic)
    }

    /// The group `Z^dim` under addition.
    pub fn integer_lattice(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(usage("lattice dimension must be at least 1"));
        }
        Ok(Engine::new(Repr::Lattice { dim }))
    }

    /// Finite semigroup from 0-based table rows.
    pub fn finite_table(rows: &[Vec<usize>]) -> Result<Self> {
        Ok(Engine::new(Repr::Table(Table::from_rows(rows)?)))
    }

    pub fn kind(&self) -> EngineKind {
        match self.repr {
            Repr::Table(_) => EngineKind::FiniteTable,
            Repr::Rewriting(_) => EngineKind::Rewriting,
            Repr::Free { .. } => EngineKind::Free,
            Repr::FreeCommutative { .. } => EngineKind::FreeCommutative,
            Repr::Bicyclic => EngineKind::Bicyclic,
            Repr::Lattice { .. } => EngineKind::IntegerLattice,
        }
    }

    /// Whether the engine is a monoid (so `S¹ = S`).
    pub fn has_identity(&self) -> bool {
        match &self.repr {
            Repr::Table(t) => t.identity().is_some(),
            Repr::Rewriting(r) => r.is_monoid(),
            Repr::Free { monoid, .. } => *monoid,
            Repr::FreeCommutative { .. } | Repr::Bicyclic | Repr::Lattice { .. } => true,
        }
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn table(&self) -> Option<&Table> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn rewriting(&self) -> Option<&RewritingSystem> {
        match &self.repr {
            Repr::Rewriting(r) => Some(r),
            _ => None,
        }
    }

    /// Rank of a free or free commutative engine.
    pub fn rank(&self) -> Option<usize> {
        match self.repr {
            Repr::Free { rank, .. } | Repr::FreeCommutative { rank } => Some(rank),
            _ => None,
        }
    }

    pub fn lattice_dim(&self) -> Option<usize> {
        match self.repr {
            Repr::Lattice { dim } => Some(dim),
            _ => None,
        }
    }

    /// Identity of `S¹`: the engine's own identity, or the adjoined one.
    pub fn identity(&self) -> Form {
        match &self.repr {
            Repr::Table(t) => Form::Table(t.root()),
            Repr::Rewriting(_) | Repr::Free { .. } => Form::Word(Vec::new()),
            Repr::FreeCommutative { rank } => Form::Exponents(vec![0; *rank]),
            Repr::Bicyclic => Form::Bicyclic { c: 0, b: 0 },
            Repr::Lattice { dim } => Form::Lattice(vec![BigInt::zero(); *dim]),
        }
    }

    /// Checks that `form` is a canonical form of an element of `S¹`.
    pub fn validate(&self, form: &Form) -> Result<()> {
        let ok = match (&self.repr, form) {
            (Repr::Table(t), Form::Table(x)) => t.contains(*x),
            (Repr::Rewriting(r), Form::Word(w)) => {
                w.iter().all(|&x| (x as usize) < r.alphabet().len()) && r.is_irreducible(w)
            }
            (Repr::Free { rank, .. }, Form::Word(w)) => w.iter().all(|&x| (x as usize) < *rank),
            (Repr::FreeCommutative { rank }, Form::Exponents(e)) => e.len() == *rank,
            (Repr::Bicyclic, Form::Bicyclic { .. }) => true,
            (Repr::Lattice { dim }, Form::Lattice(v)) => v.len() == *dim,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(usage(format!(
                "{form:?} is not an element of this {} engine",
                self.kind().name()
            )))
        }
    }

    /// Product `st` of two canonical forms.
    pub fn mul(&self, s: &Form, t: &Form) -> Result<Form> {
        self.validate(s)?;
        self.validate(t)?;
        Ok(self.mul_unchecked(s, t))
    }

    /// Product of two forms already known to be valid for this engine.
    pub(crate) fn mul_unchecked(&self, s: &Form, t: &Form) -> Form {
        if self.opposite {
            self.repr_mul(t, s)
        } else {
            self.repr_mul(s, t)
        }
    }

    fn repr_mul(&self, s: &Form, t: &Form) -> Form {
        match (&self.repr, s, t) {
            (Repr::Table(table), Form::Table(x), Form::Table(y)) => Form::Table(table.mul(*x, *y)),
            (Repr::Rewriting(r), Form::Word(u), Form::Word(v)) => {
                Form::Word(r.append_normalized(u.clone(), v))
            }
            (Repr::Free { .. }, Form::Word(u), Form::Word(v)) => {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                Form::Word(w)
            }
            (Repr::FreeCommutative { .. }, Form::Exponents(a), Form::Exponents(b)) => {
                Form::Exponents(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Repr::Bicyclic, &Form::Bicyclic { c: i, b: j }, &Form::Bicyclic { c: k, b: l }) => {
                // c^i b^j c^k b^l: the middle b^j c^k cancels down to one letter kind.
                if j >= k {
                    Form::Bicyclic {
                        c: i,
                        b: l + (j - k),
                    }
                } else {
                    Form::Bicyclic {
                        c: i + (k - j),
                        b: l,
                    }
                }
            }
            (Repr::Lattice { .. }, Form::Lattice(a), Form::Lattice(b)) => {
                Form::Lattice(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("forms were validated against the engine"),
        }
    }

    /// Degree of `form` when word length is an invariant of the engine.
    pub fn degree(&self, form: &Form) -> Option<usize> {
        match (&self.repr, form) {
            (Repr::Free { .. }, Form::Word(w)) => Some(w.len()),
            (Repr::Rewriting(r), Form::Word(w)) if r.is_homogeneous() => Some(w.len()),
            (Repr::FreeCommutative { .. }, Form::Exponents(e)) => {
                Some(e.iter().map(|&x| x as usize).sum())
            }
            _ => None,
        }
    }

    /// Bounded right indegree where it is known without exploring the
    /// Cayley graph; `None` when it has to be estimated.
    pub fn known_bounded_right_indegree(&self) -> Option<bool> {
        match self.repr {
            Repr::Rewriting(_) => None,
            _ => Some(true),
        }
    }

    /// Human-readable canonical string, stable across runs.
    pub fn render(&self, form: &Form) -> String {
        match (&self.repr, form) {
            (Repr::Table(t), Form::Table(x)) => {
                if t.identity().is_none() && *x as usize == t.order() {
                    String::from("1")
                } else {
                    format!("[{}]", x + 1)
                }
            }
            (Repr::Rewriting(r), Form::Word(w)) => r.render(w),
            (Repr::Free { rank, .. }, Form::Word(w)) => {
                rewriting::render_letters(&default_letters(*rank), w)
            }
            (Repr::FreeCommutative { rank }, Form::Exponents(e)) => {
                let letters = default_letters(*rank);
                render_powers(e.iter().enumerate().map(|(i, &x)| (letters[i].as_str(), x)))
            }
            (Repr::Bicyclic, Form::Bicyclic { c, b }) => {
                render_powers([("c", *c), ("b", *b)].into_iter())
            }
            (Repr::Lattice { .. }, Form::Lattice(v)) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            _ => format!("{form:?}"),
        }
    }

    /// The generator choice the built-in families come with.
    pub fn default_generators(&self) -> GeneratorChoice {
        let (symbols, targets): (Vec<String>, Vec<Form>) = match &self.repr {
            Repr::Table(t) => (0..t.order())
                .map(|i| (format!("t{}", i + 1), Form::Table(i as u32)))
                .unzip(),
            Repr::Rewriting(r) => r
                .alphabet()
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), Form::Word(vec![i as u8])))
                .unzip(),
            Repr::Free { rank, .. } => default_letters(*rank)
                .into_iter()
                .enumerate()
                .map(|(i, a)| (a, Form::Word(vec![i as u8])))
                .unzip(),
            Repr::FreeCommutative { rank } => default_letters(*rank)
                .into_iter()
                .enumerate()
                .map(|(i, a)| {
                    let mut e = vec![0; *rank];
                    e[i] = 1;
                    (a, Form::Exponents(e))
                })
                .unzip(),
            Repr::Bicyclic => (
                vec![String::from("b"), String::from("c")],
                vec![Form::Bicyclic { c: 0, b: 1 }, Form::Bicyclic { c: 1, b: 0 }],
            ),
            Repr::Lattice { dim } => {
                let letters = default_letters(2 * dim);
                let mut targets = Vec::with_capacity(2 * dim);
                for i in 0..*dim {
                    for sign in [1i64, -1] {
                        let mut v = vec![BigInt::zero(); *dim];
                        v[i] = BigInt::from(sign);
                        targets.push(Form::Lattice(v));
                    }
                }
                (letters, targets)
            }
        };
        GeneratorChoice { symbols, targets }
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > u8::MAX as usize {
        return Err(usage("rank must be between 1 and 255"));
    }
    Ok(())
}

/// `a, b, c, ...` for up to 26 symbols, `x1, x2, ...` beyond.
pub fn default_letters(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn render_powers<'a>(parts: impl Iterator<Item = (&'a str, u32)>) -> String {
    let mut out = String::new();
    for (sym, exp) in parts {
        match exp {
            0 => {}
            1 => out.push_str(sym),
            _ => out.push_str(&format!("{sym}^{exp}")),
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// Ordered generator symbols and the elements they represent.
///
/// Several symbols may represent the same element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorChoice {
    symbols: Vec<String>,
    targets: Vec<Form>,
}

impl GeneratorChoice {
    pub fn new(symbols: Vec<String>, targets: Vec<Form>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(usage("a generator choice needs at least one symbol"));
        }
        if symbols.len() != targets.len() {
            return Err(usage("generator symbols and targets differ in length"));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s == "1" || symbols[..i].contains(s) {
                return Err(usage(format!("invalid or repeated generator symbol {s:?}")));
            }
        }
        Ok(GeneratorChoice { symbols, targets })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn targets(&self) -> &[Form] {
        &self.targets
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Ok(Word(tokenize(&self.symbols, text)?))
    }

    pub fn render_word(&self, word: &Word) -> String {
        if word.0.is_empty() {
            return String::from("1");
        }
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) {
            ""
        } else {
            "."
        };
        let parts: Vec<&str> = word.0.iter().map(|&i| self.symbols[i].as_str()).collect();
        parts.join(sep)
    }
}

/// A word over a generator choice, as generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

/// The element `ū` a word represents: the left-to-right product of targets.
pub fn eval_word(engine: &Engine, gens: &GeneratorChoice, word: &Word) -> Result<Form> {
    let Some((&first, rest)) = word.0.split_first() else {
        return if engine.has_identity() {
            Ok(engine.identity())
        } else {
            Err(domain(
                "the empty word does not represent an element of a semigroup without identity",
            ))
        };
    };
    let target = |i: usize| {
        gens.targets
            .get(i)
            .ok_or_else(|| usage(format!("letter {i} is not a generator index")))
    };
    let mut acc = target(first)?.clone();
    engine.validate(&acc)?;
    for &i in rest {
        acc = engine.mul(&acc, target(i)?)?;
    }
    Ok(acc)
}

/// Built-in families and their parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Free {
        rank: usize,
    },
    FreeCommutative {
        rank: usize,
    },
    Bicyclic,
    /// `Z^dim` with the given generator vectors, or `±e_i` when `gens` is empty.
    IntegerLattice {
        dim: usize,
        gens: Vec<(String, Vec<i64>)>,
    },
}

/// Engine plus the standard generator choice of a family.
pub fn make_family(family: &Family) -> Result<(Engine, GeneratorChoice)> {
    match family {
        Family::Free { rank } => {
            let e = Engine::free(*rank)?;
            let g = e.default_generators();
            Ok((e, g))
        }
        Family::FreeCommutative { rank } => {
            let e = Engine::free_commutative(*rank)?;
            let g = e.default_generators();
            Ok((e, g))
        }
        Family::Bicyclic => {
            let e = Engine::bicyclic();
            let g = e.default_generators();
            Ok((e, g))
        }
        Family::IntegerLattice { dim, gens } => {
            let e = Engine::integer_lattice(*dim)?;
            if gens.is_empty() {
                let g = e.default_generators();
                return Ok((e, g));
            }
            let mut symbols = Vec::with_capacity(gens.len());
            let mut targets = Vec::with_capacity(gens.len());
            for (name, v) in gens {
                if v.len() != *dim {
                    return Err(usage(format!(
                        "generator {name} has {} coordinates, expected {dim}",
                        v.len()
                    )));
                }
                if v.iter().all(|&x| x == 0) {
                    return Err(usage(format!("generator {name} is the zero vector")));
                }
                symbols.push(name.clone());
                targets.push(Form::Lattice(v.iter().map(|&x| BigInt::from(x)).collect()));
            }
            Ok((e, GeneratorChoice::new(symbols, targets)?))
        }
    }
}

/// Engine for a presented semigroup, checked to be shortlex-reducing and
/// confluent. Letters are indices into `alphabet`, whose order is the
/// shortlex order.
pub fn make_rewriting(
    alphabet: Vec<String>,
    rules: Vec<(Vec<u8>, Vec<u8>)>,
    monoid: bool,
) -> Result<Engine> {
    let rules = rules
        .into_iter()
        .map(|(lhs, rhs)| Rule { lhs, rhs })
        .collect();
    Ok(Engine::new(Repr::Rewriting(RewritingSystem::new(
        alphabet, rules, monoid,
    )?)))
}

/// `S¹` together with `X` plus one new symbol for its identity.
pub fn adjoin_identity(engine: &Engine, gens: &GeneratorChoice) -> (Engine, GeneratorChoice) {
    let mut one = engine.clone();
    one.repr = match &engine.repr {
        Repr::Table(t) => Repr::Table(t.with_identity()),
        Repr::Rewriting(r) => {
            let mut r = r.clone();
            r.set_monoid();
            Repr::Rewriting(r)
        }
        Repr::Free { rank, .. } => Repr::Free {
            rank: *rank,
            monoid: true,
        },
        other => other.clone(),
    };
    let mut name = String::from("e");
    let mut k = 1;
    while gens.symbols.contains(&name) {
        name = format!("e{k}");
        k += 1;
    }
    let mut symbols = gens.symbols.clone();
    symbols.push(name);
    let mut targets = gens.targets.clone();
    targets.push(one.identity());
    (one, GeneratorChoice { symbols, targets })
}

/// One generator for each word of length `p` over `X`, in lexicographic
/// order of the words. The engine must be a monoid.
pub fn power_generators(
    engine: &Engine,
    gens: &GeneratorChoice,
    p: usize,
    cap: usize,
) -> Result<GeneratorChoice> {
    if p == 0 {
        return Err(usage("power must be at least 1"));
    }
    if !engine.has_identity() {
        return Err(domain(
            "power generators are built over a monoid; adjoin an identity first",
        ));
    }
    let k = gens.len();
    let count = (0..p).try_fold(1usize, |acc, _| acc.checked_mul(k));
    let count = match count {
        Some(c) if c <= cap => c,
        _ => return Err(Error::Resource { cap, layer: p }),
    };
    if p == 1 {
        return Ok(gens.clone());
    }
    let mut symbols = Vec::with_capacity(count);
    let mut targets = Vec::with_capacity(count);
    let mut letters = vec![0usize; p];
    for _ in 0..count {
        let word = Word(letters.clone());
        symbols.push(gens.render_word(&word).replace('.', "_"));
        targets.push(eval_word(engine, gens, &word)?);
        // odometer increment, last letter fastest
        for pos in (0..p).rev() {
            letters[pos] += 1;
            if letters[pos] < k {
                break;
            }
            letters[pos] = 0;
        }
    }
    GeneratorChoice::new(symbols, targets)
}

/// The opposite semigroup `S^op` with the same generator symbols.
pub fn opposite(engine: &Engine, gens: &GeneratorChoice) -> (Engine, GeneratorChoice) {
    let mut op = engine.clone();
    op.opposite = !engine.opposite;
    (op, gens.clone())
}
