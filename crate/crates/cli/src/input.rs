//! Reading the JSON input object and resolving its named fields.

use crate::Global;
use latsemi::algebra::{Element, QAlgebra};
use latsemi::exactla::Rationals;
use latsemi::io::{self, AnyAlgebra, Num};
use latsemi::lattice::{FullLattice, Order};
use latsemi::{Budget, Error, Result};
use num_bigint::BigInt;
use serde_json::{Map, Value};
use std::io::Read;
use std::sync::Arc;

pub struct Input {
    pub fields: Map<String, Value>,
    pub poly: Option<Vec<BigInt>>,
    pub budget: Budget,
    pub seed: u64,
}

fn parse_json(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text).map_err(|e| Error::Parse(format!("input: {e}")))? {
        Value::Object(m) => Ok(m),
        _ => Err(Error::Parse("input must be a JSON object".into())),
    }
}

impl Input {
    pub fn load(g: &Global) -> Result<Self> {
        let mut fields = Map::new();
        if let Some(p) = &g.input {
            let text = if p.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
                s
            } else {
                std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
            };
            fields.extend(parse_json(&text)?);
        }
        if let Some(j) = &g.json {
            fields.extend(parse_json(j)?);
        }
        let poly = g.poly.as_deref().map(io::parse_poly).transpose()?;
        Ok(Input { fields, poly, budget: g.budget(), seed: g.seed })
    }

    pub fn get(&self, key: &str) -> Result<&Value> {
        self.fields.get(key).ok_or_else(|| Error::Parse(format!("missing input field {key:?}")))
    }

    pub fn has(&self, key: &str) -> bool {
        self.fields.contains_key(key)
    }

    /// The polynomial f from --poly, or the "f" / "poly" fields.
    pub fn f(&self) -> Result<Vec<BigInt>> {
        if let Some(p) = &self.poly {
            return Ok(p.clone());
        }
        for key in ["f", "poly"] {
            if let Some(v) = self.fields.get(key) {
                return match v {
                    Value::String(s) => io::parse_poly(s),
                    other => nums(other)?.iter().map(Num::integer).collect(),
                };
            }
        }
        Err(Error::Parse("a polynomial is required (--poly or \"f\")".into()))
    }

    pub fn any_algebra(&self) -> Result<AnyAlgebra> {
        if self.poly.is_some() || (!self.has("algebra") && (self.has("f") || self.has("poly"))) {
            return Ok(AnyAlgebra::Q(latsemi::latmac::algebra_of(&self.f()?)?));
        }
        io::algebra_from_value(self.get("algebra")?)?.parse()
    }

    pub fn algebra(&self) -> Result<Arc<QAlgebra>> {
        match self.any_algebra()? {
            AnyAlgebra::Q(a) => Ok(a),
            AnyAlgebra::Fp(_) => Err(Error::PreconditionFailed("this operation needs an algebra over Q".into())),
        }
    }

    pub fn lattice(&self, alg: &Arc<QAlgebra>, key: &str) -> Result<FullLattice> {
        io::lattice_from_value(self.get(key)?, alg)
    }

    /// The order under `key`, defaulting to the coordinate lattice Z^n (which
    /// is Z[t]/(f) for A_f).
    pub fn order(&self, alg: &Arc<QAlgebra>, key: &str) -> Result<Order> {
        if self.has(key) {
            Order::new(self.lattice(alg, key)?)
        } else {
            Order::standard(alg)
        }
    }

    pub fn integer(&self, key: &str) -> Result<BigInt> {
        num(self.get(key)?)?.integer()
    }

    pub fn element(&self, alg: &QAlgebra, key: &str) -> Result<Element<Rationals>> {
        let v: Vec<_> = nums(self.get(key)?)?.iter().map(Num::rational).collect::<Result<_>>()?;
        if v.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!("{key} must have {} coordinates", alg.dim())));
        }
        Ok(v)
    }
}

pub fn num(v: &Value) -> Result<Num> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("number: {e}")))
}

pub fn nums(v: &Value) -> Result<Vec<Num>> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("number list: {e}")))
}
