use glsm_core::algebra::{fmt_rat, BigRat, CohClass, Poly, RatFun, TruncSeries, Var};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub first_failure: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check { name: name.to_string(), status: Status::Pass, first_failure: None }
    }

    pub fn fail(name: &str, why: impl Into<String>) -> Self {
        Check { name: name.to_string(), status: Status::Fail, first_failure: Some(why.into()) }
    }

    pub fn skipped(name: &str, why: impl Into<String>) -> Self {
        Check { name: name.to_string(), status: Status::Skipped, first_failure: Some(why.into()) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

pub fn rat(r: &BigRat) -> Value {
    Value::String(fmt_rat(r))
}

fn lambda_map(p: &Poly, shift: i64) -> Map<String, Value> {
    let mut m = Map::new();
    for (k, c) in p.collect(Var::Lambda) {
        let c = c.constant_value().expect("λ-only coefficient");
        m.insert(format!("l^{}", k as i64 - shift), rat(&c));
    }
    m
}

/// `{"z^j": {"l^i": "p/q"}}` when the denominator is a monomial, else the expression text.
pub fn ratfun(f: &RatFun) -> Value {
    let den = f.denom();
    if den.len() == 1 {
        let (mono, c) = den.lead().expect("nonzero");
        let inv = c.recip();
        let mut out = Map::new();
        for (zk, coeff) in f.numer().collect(Var::Z) {
            out.insert(format!("z^{}", zk as i64 - mono.z as i64), Value::Object(lambda_map(&coeff.scale(&inv), mono.l as i64)));
        }
        Value::Object(out)
    } else {
        json!({ "expr": f.to_string() })
    }
}

pub fn class(c: &CohClass) -> Value {
    let mut m = Map::new();
    for (k, f) in c.coeffs().iter().enumerate() {
        if !f.is_zero() {
            m.insert(format!("H^{}", k), ratfun(f));
        }
    }
    Value::Object(m)
}

/// `{"y^k": {"l^i": "p/q"}}`.
pub fn y_series(s: &TruncSeries<RatFun>) -> Value {
    let mut m = Map::new();
    for (k, f) in s.coeffs().iter().enumerate() {
        let v = ratfun(f);
        let flat = match &v {
            Value::Object(o) if o.len() <= 1 => o.get("z^0").cloned().unwrap_or(Value::Object(Map::new())),
            _ => v,
        };
        m.insert(format!("y^{}", k), flat);
    }
    Value::Object(m)
}
