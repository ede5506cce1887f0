use serde_json::{json, Map, Value};

use super::{Deviation, FockState};
use crate::coeff::{poly_from_json, poly_to_json};
use crate::error::Error;
use crate::wedge::WedgeMonomial;

impl FockState {
    /// `{"n", "tail_start", "terms": [{"coeff", "columns": {"k": [indices]}}]}`
    /// with 1-based indices.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(dev, c)| {
                let columns: Map<String, Value> = dev
                    .iter()
                    .map(|(k, m)| {
                        let idx: Vec<usize> = m.indices().iter().map(|a| a + 1).collect();
                        (k.to_string(), json!(idx))
                    })
                    .collect();
                json!({ "coeff": poly_to_json(c), "columns": columns })
            })
            .collect();
        json!({ "n": self.n(), "tail_start": self.tail_start(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Format("missing positive integer field \"n\"".into()))?
            as usize;
        let tail = v
            .get("tail_start")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Format("missing integer field \"tail_start\"".into()))?;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("missing array field \"terms\"".into()))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let coeff = poly_from_json::<i64>(
                t.get("coeff")
                    .ok_or_else(|| Error::Format("term without \"coeff\"".into()))?,
            )?;
            let cols = t
                .get("columns")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Format("term without \"columns\" object".into()))?;
            let mut dev = Deviation::new();
            for (k, idx) in cols {
                let mode: i64 = k
                    .parse()
                    .map_err(|_| Error::Format(format!("bad column key {k:?}")))?;
                if mode >= tail {
                    return Err(Error::Format(format!(
                        "column {mode} lies in the tail starting at {tail}"
                    )));
                }
                let indices = idx
                    .as_array()
                    .ok_or_else(|| Error::Format("column must be an index list".into()))?
                    .iter()
                    .map(|x| match x.as_u64() {
                        Some(a) if a >= 1 && a as usize <= n => Ok(a as usize - 1),
                        _ => Err(Error::Format(format!("bad index {x} for n = {n}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let m = WedgeMonomial::new(indices).ok_or_else(|| {
                    Error::Format(format!("column {mode} is not strictly increasing"))
                })?;
                dev.insert(mode, m);
            }
            parsed.push((dev, coeff));
        }
        Ok(Self::from_terms(n, tail, parsed))
    }
}
