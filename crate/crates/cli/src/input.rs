//! Turns input flags into a semigroup session.

use anyhow::{anyhow, Context, Result};
use cogrowth::{adjoin_identity, opposite, power_generators, Engine, GeneratorChoice, Semigroup};
use serde::Serialize;

use crate::args::InputArgs;
use crate::spec::SemigroupSpec;

/// The semigroup a command runs on, with what is needed to describe it.
pub struct Resolved {
    pub spec: SemigroupSpec,
    pub session: Semigroup,
}

#[derive(Serialize)]
pub struct GeneratorInfo {
    pub symbol: String,
    pub target: String,
}

#[derive(Serialize)]
pub struct SemigroupInfo {
    /// The base semigroup in spec-file form.
    pub spec: String,
    pub kind: &'static str,
    pub has_identity: bool,
    pub adjoin_identity: bool,
    pub power: usize,
    pub opposite: bool,
    pub generators: Vec<GeneratorInfo>,
}

pub fn load_spec(input: &InputArgs) -> Result<SemigroupSpec> {
    let spec = match (&input.spec, &input.family) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow!("cannot read {}: {e}", path.display()))?;
            SemigroupSpec::parse(&text).with_context(|| format!("in {}", path.display()))?
        }
        (None, Some(name)) => SemigroupSpec::family_spec(name, input.rank, input.dim)?,
        (None, None) => return Err(anyhow!("either --spec or --family is required")),
    };
    if input.gens.is_empty() {
        Ok(spec)
    } else {
        spec.with_gens(&input.gens)
    }
}

/// Spec, then `--gens`, then `--adjoin-identity`, `--power`, `--opposite`.
pub fn resolve(input: &InputArgs, cap: usize) -> Result<Resolved> {
    let spec = load_spec(input)?;
    let (mut engine, mut gens): (Engine, GeneratorChoice) = spec.build()?;
    if input.adjoin_identity {
        (engine, gens) = adjoin_identity(&engine, &gens);
    }
    if input.power != 1 {
        gens = power_generators(&engine, &gens, input.power, cap)?;
    }
    if input.opposite {
        (engine, gens) = opposite(&engine, &gens);
    }
    let session = Semigroup::new(engine, gens)?;
    Ok(Resolved { spec, session })
}

impl Resolved {
    pub fn info(&mut self, input: &InputArgs) -> SemigroupInfo {
        let sg = &mut self.session;
        let generators = (0..sg.rank())
            .map(|i| {
                let t = sg.step(sg.root(), i);
                GeneratorInfo {
                    symbol: sg.generators().symbols()[i].clone(),
                    target: sg.render(t),
                }
            })
            .collect();
        SemigroupInfo {
            spec: self.spec.to_text(),
            kind: sg.engine().kind().name(),
            has_identity: sg.engine().has_identity(),
            adjoin_identity: input.adjoin_identity,
            power: input.power,
            opposite: input.opposite,
            generators,
        }
    }
}
