//! The JSON cycle-set document read by `draw` and `transform`.
//!
//! ```json
//! {"sigma": -1, "viewport": [-2, 2, -2, 2],
//!  "cycles": [{"k": 1, "l": 0, "n": "1/2", "m": -1, "style": {"stroke": "red", "dash": false}}],
//!  "points": [[0, 1]]}
//! ```

use serde::Deserialize;
use serde_json::{json, Value};

use super::svg::Style;
use crate::cycle::CycleQuadruple;
use crate::error::{Error, Result};
use crate::hypercomplex::SpaceSign;
use crate::moebius::Point;
use crate::scalar::{NumericMode, Scalar};

#[derive(Debug, Clone)]
pub struct StyledCycle<S> {
    pub cycle: CycleQuadruple<S>,
    pub style: Style,
}

#[derive(Debug, Clone)]
pub struct CycleSetDocument<S> {
    pub sigma: SpaceSign,
    /// `[umin, umax, vmin, vmax]`
    pub viewport: [S; 4],
    pub cycles: Vec<StyledCycle<S>>,
    pub points: Vec<Point<S>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCycle {
    k: Value,
    l: Value,
    n: Value,
    m: Value,
    #[serde(default)]
    style: Style,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    sigma: i64,
    viewport: [Value; 4],
    #[serde(default)]
    cycles: Vec<RawCycle>,
    #[serde(default)]
    points: Vec<[Value; 2]>,
}

impl<S: Scalar> PartialEq for StyledCycle<S> {
    fn eq(&self, other: &Self) -> bool {
        self.style == other.style && self.cycle.components() == other.cycle.components()
    }
}

impl<S: Scalar> PartialEq for CycleSetDocument<S> {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.viewport == other.viewport && self.cycles == other.cycles && self.points == other.points
    }
}

fn scalar<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::Number(n) => S::parse_text(&n.to_string()),
        Value::String(s) => S::parse_text(s),
        other => Err(Error::Parse(format!("expected a number or \"p/q\", got {other}"))),
    }
}

fn scalar_value<S: Scalar>(x: &S) -> Value {
    if S::MODE == NumericMode::Approx {
        // full precision, unlike the 12 digits used in pictures
        let f = x.to_f64_lossy();
        return serde_json::Number::from_f64(f).map(Value::Number).unwrap_or_else(|| Value::String(f.to_string()));
    }
    let text = x.to_text();
    match serde_json::from_str::<Value>(&text) {
        Ok(v @ Value::Number(_)) => v,
        _ => Value::String(text),
    }
}

impl<S: Scalar> CycleSetDocument<S> {
    pub fn new(sigma: SpaceSign, viewport: [S; 4]) -> Result<Self> {
        let [umin, umax, vmin, vmax] = &viewport;
        if !(umin < umax && vmin < vmax) {
            return Err(Error::Parse("viewport must satisfy umin < umax and vmin < vmax".into()));
        }
        Ok(CycleSetDocument { sigma, viewport, cycles: Vec::new(), points: Vec::new() })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let sigma = SpaceSign::new(raw.sigma).map_err(|_| Error::Parse(format!("sigma must be -1, 0 or 1, got {}", raw.sigma)))?;
        let [a, b, c, d] = &raw.viewport;
        let mut doc = Self::new(sigma, [scalar(a)?, scalar(b)?, scalar(c)?, scalar(d)?])?;
        for rc in raw.cycles {
            let cycle = CycleQuadruple::new(scalar(&rc.k)?, scalar(&rc.l)?, scalar(&rc.n)?, scalar(&rc.m)?)
                .map_err(|e| Error::Parse(e.to_string()))?;
            doc.cycles.push(StyledCycle { cycle, style: rc.style });
        }
        for [u, v] in &raw.points {
            doc.points.push(Point::new(scalar(u)?, scalar(v)?));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let cycles: Vec<Value> = self
            .cycles
            .iter()
            .map(|c| {
                json!({
                    "k": scalar_value(&c.cycle.k),
                    "l": scalar_value(&c.cycle.l),
                    "n": scalar_value(&c.cycle.n),
                    "m": scalar_value(&c.cycle.m),
                    "style": {"stroke": c.style.stroke, "dash": c.style.dash},
                })
            })
            .collect();
        let points: Vec<Value> = self.points.iter().map(|p| json!([scalar_value(&p.u), scalar_value(&p.v)])).collect();
        let doc = json!({
            "sigma": self.sigma.value(),
            "viewport": self.viewport.iter().map(scalar_value).collect::<Vec<_>>(),
            "cycles": cycles,
            "points": points,
        });
        doc.to_string()
    }
}
