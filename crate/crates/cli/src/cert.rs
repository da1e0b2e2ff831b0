//! Certificate JSON: `{field, n, target, pairs: [{x, y}], route}` with
//! matrices as rows of element tokens.

use serde::{Deserialize, Serialize};
use u2comm_core::field::{AnyField, Field};
use u2comm_core::unipotent::{CommutatorPair, Factorization};

use crate::error::{input, CliResult};
use crate::format::{matrix_from_tokens, parse_field_spec, ParseElem};

type Grid = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub x: Grid,
    pub y: Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub field: String,
    pub n: usize,
    pub target: Grid,
    pub pairs: Vec<PairJson>,
    pub route: Vec<String>,
}

impl CertificateJson {
    pub fn from_cert<F: Field>(cert: &Factorization<F>) -> Self {
        CertificateJson {
            field: cert.field().describe(),
            n: cert.n(),
            target: cert.target.tokens(),
            pairs: cert
                .pairs
                .iter()
                .map(|p| PairJson {
                    x: p.x.tokens(),
                    y: p.y.tokens(),
                })
                .collect(),
            route: cert.route.clone(),
        }
    }

    /// JSON with one matrix per line and a trailing newline.
    pub fn to_json(&self) -> String {
        let pairs: Vec<String> = self
            .pairs
            .iter()
            .map(|p| format!("    {{\"x\": {}, \"y\": {}}}", j(&p.x), j(&p.y)))
            .collect();
        let pairs = if pairs.is_empty() {
            "[]".to_string()
        } else {
            format!("[\n{}\n  ]", pairs.join(",\n"))
        };
        format!(
            "{{\n  \"field\": {},\n  \"n\": {},\n  \"target\": {},\n  \"pairs\": {},\n  \"route\": {}\n}}\n",
            j(&self.field),
            self.n,
            j(&self.target),
            pairs,
            j(&self.route)
        )
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| input(format!("certificate JSON: {e}")))
    }

    pub fn field(&self) -> CliResult<AnyField> {
        parse_field_spec(&self.field)
    }

    /// Rebuilds the certificate. Pairs are taken as written; [`verify`]
    /// decides whether they are legal.
    ///
    /// [`verify`]: u2comm_core::unipotent::verify
    pub fn to_cert<F: ParseElem>(&self, field: &F) -> CliResult<Factorization<F>> {
        let grid = |g: &Grid, what: &str| {
            if g.len() != self.n {
                return Err(input(format!("{what} has {} rows, expected {}", g.len(), self.n)));
            }
            matrix_from_tokens(field, g)
        };
        let target = grid(&self.target, "target")?;
        let pairs = self
            .pairs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                Ok(CommutatorPair {
                    x: grid(&p.x, &format!("pair {i} x"))?,
                    y: grid(&p.y, &format!("pair {i} y"))?,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Factorization {
            target,
            pairs,
            route: self.route.clone(),
        })
    }
}

fn j<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}
