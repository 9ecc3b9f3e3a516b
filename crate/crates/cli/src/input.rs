use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tate_syzygy::presentation::DEFAULT_LENGTH_BOUND;
use tate_syzygy::{bundled, parse_presentation, BasisAlgebra, Field, FieldSpec, Presentation, PrimeField, Rationals};

pub const DUMP_SCHEMA: &str = "tate-syzygy-algebra/1";

/// A basis algebra written out with its structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub schema: String,
    pub field: String,
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
    pub idempotents: Vec<usize>,
    /// `(i, j, k, c)`: the product `b_i b_j` has coefficient `c` on `b_k`.
    pub products: Vec<(usize, usize, usize, String)>,
}

impl AlgebraDump {
    pub fn of<F: Field>(a: &BasisAlgebra<F>) -> Self {
        let f = a.field();
        let n = a.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in a.product(i, j) {
                    products.push((i, j, *k, f.format(c)));
                }
            }
        }
        AlgebraDump {
            schema: DUMP_SCHEMA.into(),
            field: f.spec().to_string(),
            labels: a.labels().to_vec(),
            degrees: a.degrees().to_vec(),
            idempotents: a.idempotents().to_vec(),
            products,
        }
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<BasisAlgebra<F>> {
        if self.schema != DUMP_SCHEMA {
            bail!("unsupported dump schema `{}`", self.schema);
        }
        let n = self.labels.len();
        let mut table = vec![Vec::new(); n * n];
        for (i, j, k, c) in &self.products {
            if *i >= n || *j >= n || *k >= n {
                bail!("product index out of range in dump");
            }
            let c = field.parse_elem(c)?;
            if !field.is_zero(&c) {
                table[i * n + j].push((*k, c));
            }
        }
        for entry in &mut table {
            entry.sort_by_key(|e| e.0);
        }
        Ok(BasisAlgebra::from_parts(
            field.clone(),
            self.labels.clone(),
            table,
            self.idempotents.clone(),
            self.degrees.clone(),
        )?)
    }
}

pub enum Source {
    Presentation(Presentation),
    Dump(AlgebraDump),
}

/// A parsed input file with the digest of its bytes.
pub struct Input {
    pub name: String,
    pub digest: String,
    pub source: Source,
}

impl Input {
    /// Reads `arg` from disk, falling back to the bundled examples.
    pub fn load(arg: &str) -> Result<Self> {
        let text = if Path::new(arg).exists() {
            std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
        } else {
            bundled::source(arg).ok_or_else(|| anyhow!("{arg}: no such file or bundled example"))?.to_string()
        };
        Self::from_text(arg, &text)
    }

    pub fn from_text(name: &str, text: &str) -> Result<Self> {
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        let source = if text.trim_start().starts_with('{') {
            Source::Dump(serde_json::from_str(text).with_context(|| format!("{name}: malformed algebra dump"))?)
        } else {
            Source::Presentation(parse_presentation(text).with_context(|| format!("{name}: invalid presentation"))?)
        };
        Ok(Input { name: name.to_string(), digest, source })
    }

    pub fn field(&self) -> Result<FieldSpec> {
        Ok(match &self.source {
            Source::Presentation(p) => p.field,
            Source::Dump(d) => d.field.parse()?,
        })
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match &self.source {
            Source::Presentation(p) => Some(p),
            Source::Dump(_) => None,
        }
    }

    pub fn algebra<F: Field>(&self, field: &F) -> Result<BasisAlgebra<F>> {
        match &self.source {
            Source::Presentation(p) => {
                let p = p.clone().with_field(field.spec());
                Ok(BasisAlgebra::from_presentation(&p, field, DEFAULT_LENGTH_BOUND)?)
            }
            Source::Dump(d) => d.build(field),
        }
    }

    /// Vertex labels, one per primitive idempotent.
    pub fn vertex_labels<F: Field>(&self, a: &BasisAlgebra<F>) -> Vec<String> {
        match &self.source {
            Source::Presentation(p) => p.quiver.vertices.clone(),
            Source::Dump(_) => a.idempotents().iter().map(|&e| a.label(e).to_string()).collect(),
        }
    }
}

/// A computation generic over the ground field.
pub trait Job {
    type Output;
    fn run<F: Field>(self, field: &F) -> Result<Self::Output>;
}

pub fn dispatch<J: Job>(field: FieldSpec, job: J) -> Result<J::Output> {
    match field {
        FieldSpec::Rationals => job.run(&Rationals),
        FieldSpec::PrimeField(p) => job.run(&PrimeField::new(p)?),
    }
}

/// The field of the inputs, unless overridden; inputs must agree otherwise.
pub fn common_field(inputs: &[&Input], over: Option<FieldSpec>) -> Result<FieldSpec> {
    if let Some(f) = over {
        return Ok(f.validate()?);
    }
    let mut fields = inputs.iter().map(|i| i.field());
    let first = fields.next().expect("at least one input")?;
    for f in fields {
        let f = f?;
        if f != first {
            return Err(tate_syzygy::Error::FieldMismatch(first.to_string(), f.to_string()).into());
        }
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_round_trip() {
        let input = Input::load("a").unwrap();
        let a = input.algebra(&Rationals).unwrap();
        let dump = AlgebraDump::of(&a);
        let text = serde_json::to_string(&dump).unwrap();
        let again = Input::from_text("dump", &text).unwrap();
        assert_eq!(again.field().unwrap(), FieldSpec::Rationals);
        assert_eq!(again.algebra(&Rationals).unwrap(), a);
    }

    #[test]
    fn digest_is_of_bytes() {
        let a = Input::from_text("x", "vertices 1\n").unwrap();
        let b = Input::from_text("y", "vertices 1\n").unwrap();
        assert_eq!(a.digest, b.digest);
        assert_eq!(a.digest.len(), 64);
    }

    #[test]
    fn unknown_input() {
        assert!(Input::load("does-not-exist.alg").is_err());
    }
}
