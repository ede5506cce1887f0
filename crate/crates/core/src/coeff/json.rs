use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use super::poly::{Monomial, Poly};
use crate::error::Error;

/// `{"-2": 1, "0": 1}`; coefficients outside the `i64` range become strings.
pub fn poly_to_json<M: Monomial>(p: &Poly<M>) -> Value {
    let mut map = Map::new();
    for (m, c) in p.terms() {
        let v = match i64::try_from(c) {
            Ok(small) => Value::Number(Number::from(small)),
            Err(_) => Value::String(c.to_string()),
        };
        map.insert(m.key(), v);
    }
    Value::Object(map)
}

pub fn poly_from_json<M: Monomial>(v: &Value) -> Result<Poly<M>, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Format("polynomial must be a JSON object".into()))?;
    let mut p = Poly::default();
    for (k, c) in obj {
        let m = M::parse_key(k)
            .ok_or_else(|| Error::Format(format!("bad exponent key {k:?}")))?;
        let c: BigInt = match c {
            Value::Number(num) => num
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Format(format!("non-integer coefficient {num}")))?,
            Value::String(s) => s
                .parse()
                .map_err(|_| Error::Format(format!("bad coefficient {s:?}")))?,
            other => return Err(Error::Format(format!("bad coefficient {other}"))),
        };
        p.add_term(m, c);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{LaurentPoly, PolyQZW, QzwExp};
    use proptest::prelude::*;

    #[test]
    fn big_coefficients_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LaurentPoly::monomial(big, -3);
        let v = poly_to_json(&p);
        assert_eq!(poly_from_json::<i64>(&v).unwrap(), p);
    }

    #[test]
    fn qzw_keys() {
        let p = PolyQZW::monomial(-2, QzwExp::new(-2, 1, 0));
        assert_eq!(poly_to_json(&p).to_string(), r#"{"-2,1,0":-2}"#);
    }

    #[test]
    fn rejects_garbage() {
        assert!(poly_from_json::<i64>(&serde_json::json!([1])).is_err());
        assert!(poly_from_json::<i64>(&serde_json::json!({"x": 1})).is_err());
        assert!(poly_from_json::<i64>(&serde_json::json!({"1": 0.5})).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(terms in prop::collection::vec((-20i64..20, -1000i64..1000), 0..8)) {
            let p = LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c))));
            prop_assert_eq!(poly_from_json::<i64>(&poly_to_json(&p)).unwrap(), p);
        }
    }
}
