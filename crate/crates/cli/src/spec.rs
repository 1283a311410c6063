//! The line-oriented semigroup spec format.
//!
//! ```text
//! kind = rewriting
//! monoid = false
//! alphabet = a b c
//! rule = bc -> ac
//! gens = x:a y:b z:c w:c
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. [`SemigroupSpec::to_text`]
//! writes the fields in a fixed order with single spaces and `\n` endings, so
//! parsing and writing again reproduces the text exactly.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use cogrowth::algebra::{tokenize, Engine, EngineKind, Family, GeneratorChoice, Word};
use cogrowth::{eval_word, make_family, make_rewriting};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// Rows with 1-based entries.
    FiniteTable {
        rows: Vec<Vec<usize>>,
    },
    /// Rules as letter indices into the alphabet.
    Rewriting {
        alphabet: Vec<String>,
        rules: Vec<(Vec<u8>, Vec<u8>)>,
    },
    Free {
        rank: usize,
    },
    FreeCommutative {
        rank: usize,
    },
    Bicyclic,
    IntegerLattice {
        dim: usize,
        gens: Vec<(String, Vec<i64>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupSpec {
    pub presentation: Presentation,
    /// Resolved: implied by the family, detected for tables, declared for
    /// rewriting systems.
    pub monoid: bool,
    /// Symbols mapped to words over the default generators.
    pub gens: Option<Vec<(String, Word)>>,
}

#[derive(Default)]
struct Fields {
    kind: Option<String>,
    monoid: Option<bool>,
    order: Option<usize>,
    rows: Vec<String>,
    alphabet: Option<String>,
    rules: Vec<String>,
    dim: Option<usize>,
    gen: Vec<String>,
    rank: Option<usize>,
    gens: Option<String>,
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &str) -> Result<()> {
    if slot.is_some() {
        bail!("field `{key}` given twice");
    }
    *slot = Some(value);
    Ok(())
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.parse()
        .with_context(|| format!("`{key}` expects a nonnegative integer, got {v:?}"))
}

/// `(1,-2)` or `1,-2` or `+1`.
pub fn parse_vector(text: &str) -> Result<Vec<i64>> {
    let inner = text.trim();
    let inner = inner.strip_prefix('(').unwrap_or(inner);
    let inner = inner.strip_suffix(')').unwrap_or(inner);
    inner
        .split(',')
        .map(|x| {
            let x = x.trim();
            x.parse::<i64>()
                .with_context(|| format!("bad coordinate {x:?} in {text:?}"))
        })
        .collect()
}

fn check_symbol(name: &str) -> Result<()> {
    if name.is_empty()
        || name == "1"
        || name.contains(|c: char| c.is_whitespace() || matches!(c, ':' | '.' | '(' | ')' | ','))
    {
        bail!("invalid generator symbol {name:?}");
    }
    Ok(())
}

/// `name:word` pairs separated by whitespace.
fn parse_gens_pairs(text: &str) -> Result<Vec<(String, String)>> {
    text.split_whitespace()
        .map(|item| {
            let (sym, word) = item
                .split_once(':')
                .ok_or_else(|| anyhow!("generator {item:?} is not of the form symbol:word"))?;
            check_symbol(sym)?;
            Ok((sym.to_string(), word.to_string()))
        })
        .collect()
}

fn kind_default_monoid(kind: EngineKind) -> Option<bool> {
    match kind {
        EngineKind::Free => Some(false),
        EngineKind::FreeCommutative | EngineKind::Bicyclic | EngineKind::IntegerLattice => {
            Some(true)
        }
        EngineKind::FiniteTable | EngineKind::Rewriting => None,
    }
}

impl SemigroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut f = Fields::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected `key = value`", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim().to_string());
            let res = match key {
                "kind" => set_once(&mut f.kind, value, key),
                "monoid" => match value.as_str() {
                    "true" => set_once(&mut f.monoid, true, key),
                    "false" => set_once(&mut f.monoid, false, key),
                    _ => Err(anyhow!("`monoid` must be true or false")),
                },
                "order" => parse_usize(key, &value).and_then(|v| set_once(&mut f.order, v, key)),
                "row" => {
                    f.rows.push(value);
                    Ok(())
                }
                "alphabet" => set_once(&mut f.alphabet, value, key),
                "rule" => {
                    f.rules.push(value);
                    Ok(())
                }
                "dim" => parse_usize(key, &value).and_then(|v| set_once(&mut f.dim, v, key)),
                "gen" => {
                    f.gen.push(value);
                    Ok(())
                }
                "rank" => parse_usize(key, &value).and_then(|v| set_once(&mut f.rank, v, key)),
                "gens" => set_once(&mut f.gens, value, key),
                _ => Err(anyhow!("unknown field `{key}`")),
            };
            res.with_context(|| format!("line {}", lineno + 1))?;
        }
        Self::from_fields(f)
    }

    fn from_fields(f: Fields) -> Result<Self> {
        let kind_name = f.kind.ok_or_else(|| anyhow!("missing `kind`"))?;
        let kind = EngineKind::from_name(&kind_name)
            .ok_or_else(|| anyhow!("unknown kind {kind_name:?}"))?;
        let allowed: &[&str] = match kind {
            EngineKind::FiniteTable => &["order", "row"],
            EngineKind::Rewriting => &["alphabet", "rule"],
            EngineKind::IntegerLattice => &["dim", "gen"],
            EngineKind::Free | EngineKind::FreeCommutative => &["rank"],
            EngineKind::Bicyclic => &[],
        };
        let present = [
            ("order", f.order.is_some()),
            ("row", !f.rows.is_empty()),
            ("alphabet", f.alphabet.is_some()),
            ("rule", !f.rules.is_empty()),
            ("dim", f.dim.is_some()),
            ("gen", !f.gen.is_empty()),
            ("rank", f.rank.is_some()),
        ];
        for (key, there) in present {
            if there && !allowed.contains(&key) {
                bail!("field `{key}` does not apply to kind {kind_name}");
            }
        }
        let presentation = match kind {
            EngineKind::FiniteTable => {
                let order = f
                    .order
                    .ok_or_else(|| anyhow!("finite_table needs `order`"))?;
                if f.rows.len() != order {
                    bail!("finite_table of order {order} has {} rows", f.rows.len());
                }
                let rows = f
                    .rows
                    .iter()
                    .map(|r| {
                        r.split_whitespace()
                            .map(|x| parse_usize("row", x))
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<usize>>>>()?;
                Presentation::FiniteTable { rows }
            }
            EngineKind::Rewriting => {
                let alphabet: Vec<String> = f
                    .alphabet
                    .ok_or_else(|| anyhow!("rewriting needs `alphabet`"))?
                    .split_whitespace()
                    .map(str::to_string)
                    .collect();
                for a in &alphabet {
                    check_symbol(a)?;
                }
                if alphabet.len() > u8::MAX as usize {
                    bail!("alphabet has more than 255 letters");
                }
                let word = |w: &str| -> Result<Vec<u8>> {
                    Ok(tokenize(&alphabet, w)?
                        .into_iter()
                        .map(|x| x as u8)
                        .collect())
                };
                let rules = f
                    .rules
                    .iter()
                    .map(|r| {
                        let (l, rhs) = r
                            .split_once("->")
                            .ok_or_else(|| anyhow!("rule {r:?} is not of the form lhs -> rhs"))?;
                        Ok((word(l)?, word(rhs)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Presentation::Rewriting { alphabet, rules }
            }
            EngineKind::IntegerLattice => {
                let dim = f
                    .dim
                    .ok_or_else(|| anyhow!("integer_lattice needs `dim`"))?;
                let gens = f
                    .gen
                    .iter()
                    .map(|g| {
                        let (name, vec) = g
                            .split_once(char::is_whitespace)
                            .ok_or_else(|| anyhow!("gen {g:?} is not of the form name (x1,...)"))?;
                        check_symbol(name)?;
                        Ok((name.to_string(), parse_vector(vec)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Presentation::IntegerLattice { dim, gens }
            }
            EngineKind::Free => Presentation::Free {
                rank: f.rank.ok_or_else(|| anyhow!("free needs `rank`"))?,
            },
            EngineKind::FreeCommutative => Presentation::FreeCommutative {
                rank: f
                    .rank
                    .ok_or_else(|| anyhow!("free_commutative needs `rank`"))?,
            },
            EngineKind::Bicyclic => Presentation::Bicyclic,
        };
        let gens = f.gens.as_deref().map(parse_gens_pairs).transpose()?;
        Self::resolve(presentation, f.monoid, gens)
    }

    /// Resolves `monoid` and the generator words, and checks that the engine
    /// can be built.
    pub fn resolve(
        presentation: Presentation,
        monoid: Option<bool>,
        gens: Option<Vec<(String, String)>>,
    ) -> Result<Self> {
        let mut spec = SemigroupSpec {
            presentation,
            monoid: monoid.unwrap_or(false),
            gens: None,
        };
        let engine = spec.base_engine()?;
        let implied = kind_default_monoid(engine.kind())
            .or_else(|| (engine.kind() == EngineKind::FiniteTable).then(|| engine.has_identity()));
        if let Some(implied) = implied {
            if monoid.is_some_and(|m| m != implied) {
                bail!(
                    "`monoid = {}` contradicts the {} engine",
                    monoid.unwrap_or_default(),
                    engine.kind().name()
                );
            }
            spec.monoid = implied;
        }
        let engine = spec.base_engine()?;
        if let Some(pairs) = gens {
            let defaults = engine.default_generators();
            let mut words = Vec::with_capacity(pairs.len());
            for (sym, text) in pairs {
                let word = defaults.parse_word(&text)?;
                words.push((sym, word));
            }
            spec.gens = Some(words);
        }
        spec.build()?;
        Ok(spec)
    }

    fn base_engine(&self) -> Result<Engine> {
        Ok(match &self.presentation {
            Presentation::FiniteTable { rows } => {
                let zero_based = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|&x| {
                                x.checked_sub(1)
                                    .ok_or_else(|| anyhow!("table entries are 1-based"))
                            })
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<usize>>>>()?;
                Engine::finite_table(&zero_based)?
            }
            Presentation::Rewriting { alphabet, rules } => {
                make_rewriting(alphabet.clone(), rules.clone(), self.monoid)?
            }
            _ => make_family(&self.family().expect("family presentation"))?.0,
        })
    }

    fn family(&self) -> Option<Family> {
        Some(match &self.presentation {
            Presentation::Free { rank } => Family::Free { rank: *rank },
            Presentation::FreeCommutative { rank } => Family::FreeCommutative { rank: *rank },
            Presentation::Bicyclic => Family::Bicyclic,
            Presentation::IntegerLattice { dim, gens } => Family::IntegerLattice {
                dim: *dim,
                gens: gens.clone(),
            },
            _ => return None,
        })
    }

    /// The engine and its generator choice.
    pub fn build(&self) -> Result<(Engine, GeneratorChoice)> {
        let (engine, defaults) = match self.family() {
            Some(family) => make_family(&family)?,
            None => {
                let e = self.base_engine()?;
                let g = e.default_generators();
                (e, g)
            }
        };
        let Some(words) = &self.gens else {
            return Ok((engine, defaults));
        };
        let mut symbols = Vec::with_capacity(words.len());
        let mut targets = Vec::with_capacity(words.len());
        for (sym, word) in words {
            symbols.push(sym.clone());
            targets.push(
                eval_word(&engine, &defaults, word).with_context(|| format!("generator {sym}"))?,
            );
        }
        Ok((engine, GeneratorChoice::new(symbols, targets)?))
    }

    /// Replaces the generator choice by `sym:word` pairs (lattice: `name:vector`).
    pub fn with_gens(&self, items: &[String]) -> Result<Self> {
        let joined = items.join(" ");
        match &self.presentation {
            Presentation::IntegerLattice { dim, .. } => {
                let gens = parse_gens_pairs(&joined)?
                    .into_iter()
                    .map(|(s, v)| Ok((s, parse_vector(&v)?)))
                    .collect::<Result<Vec<_>>>()?;
                Self::resolve(
                    Presentation::IntegerLattice { dim: *dim, gens },
                    Some(self.monoid),
                    None,
                )
            }
            other => Self::resolve(
                other.clone(),
                Some(self.monoid),
                Some(parse_gens_pairs(&joined)?),
            ),
        }
    }

    pub fn kind(&self) -> EngineKind {
        match self.presentation {
            Presentation::FiniteTable { .. } => EngineKind::FiniteTable,
            Presentation::Rewriting { .. } => EngineKind::Rewriting,
            Presentation::Free { .. } => EngineKind::Free,
            Presentation::FreeCommutative { .. } => EngineKind::FreeCommutative,
            Presentation::Bicyclic => EngineKind::Bicyclic,
            Presentation::IntegerLattice { .. } => EngineKind::IntegerLattice,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kind = {}", self.kind().name());
        let _ = writeln!(out, "monoid = {}", self.monoid);
        match &self.presentation {
            Presentation::FiniteTable { rows } => {
                let _ = writeln!(out, "order = {}", rows.len());
                for r in rows {
                    let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "row = {}", cells.join(" "));
                }
            }
            Presentation::Rewriting { alphabet, rules } => {
                let _ = writeln!(out, "alphabet = {}", alphabet.join(" "));
                let letters = GeneratorChoice::new(
                    alphabet.clone(),
                    vec![cogrowth::Form::Word(Vec::new()); alphabet.len()],
                )
                .expect("alphabet was validated");
                let render =
                    |w: &[u8]| letters.render_word(&Word(w.iter().map(|&x| x as usize).collect()));
                for (l, r) in rules {
                    let _ = writeln!(out, "rule = {} -> {}", render(l), render(r));
                }
            }
            Presentation::IntegerLattice { dim, gens } => {
                let _ = writeln!(out, "dim = {dim}");
                for (name, v) in gens {
                    let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "gen = {name} ({})", coords.join(","));
                }
            }
            Presentation::Free { rank } | Presentation::FreeCommutative { rank } => {
                let _ = writeln!(out, "rank = {rank}");
            }
            Presentation::Bicyclic => {}
        }
        if let Some(words) = &self.gens {
            let defaults = self.build_defaults();
            let items: Vec<String> = words
                .iter()
                .map(|(s, w)| format!("{s}:{}", defaults.render_word(w)))
                .collect();
            let _ = writeln!(out, "gens = {}", items.join(" "));
        }
        out
    }

    fn build_defaults(&self) -> GeneratorChoice {
        match self.family() {
            Some(family) => make_family(&family).expect("validated").1,
            None => self.base_engine().expect("validated").default_generators(),
        }
    }

    /// Spec for a built-in family given by name.
    pub fn family_spec(name: &str, rank: Option<usize>, dim: Option<usize>) -> Result<Self> {
        let kind = EngineKind::from_name(name).ok_or_else(|| anyhow!("unknown family {name:?}"))?;
        let presentation = match kind {
            EngineKind::Free => Presentation::Free {
                rank: rank.ok_or_else(|| anyhow!("--family free needs --rank"))?,
            },
            EngineKind::FreeCommutative => Presentation::FreeCommutative {
                rank: rank.ok_or_else(|| anyhow!("--family free_commutative needs --rank"))?,
            },
            EngineKind::Bicyclic => Presentation::Bicyclic,
            EngineKind::IntegerLattice => Presentation::IntegerLattice {
                dim: dim.ok_or_else(|| anyhow!("--family integer_lattice needs --dim"))?,
                gens: Vec::new(),
            },
            EngineKind::FiniteTable | EngineKind::Rewriting => {
                bail!("{name} is not a built-in family; use --spec")
            }
        };
        Self::resolve(presentation, None, None)
    }
}
