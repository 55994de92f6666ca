//! Wire formats: rationals as `"p/q"` strings, polynomials as ascending
//! coefficient arrays, spectral polynomials as `{"n", "coeffs"}` with
//! coefficients ordered `c_{n-1} .. c_0`, matrices as
//! `{"rows", "cols", "entries"}` in row-major order.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::bipoly::SpectralPolynomial;
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::ring::Ring;

/// Entry types that have a JSON encoding.
pub trait Codec: Sized {
    fn encode(&self) -> Value;
    fn decode(v: &Value) -> Result<Self, String>;
}

impl Codec for Rational {
    fn encode(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn decode(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
            Value::Number(n) if n.is_i64() => Ok(crate::rational::int(n.as_i64().unwrap())),
            other => Err(format!("expected rational string, got {other}")),
        }
    }
}

impl Codec for UniPoly {
    fn encode(&self) -> Value {
        Value::Array(self.coeffs().iter().map(Codec::encode).collect())
    }
    fn decode(v: &Value) -> Result<Self, String> {
        let arr = v
            .as_array()
            .ok_or_else(|| format!("expected coefficient array, got {v}"))?;
        Ok(UniPoly::new(
            arr.iter().map(Rational::decode).collect::<Result<_, _>>()?,
        ))
    }
}

impl Codec for SpectralPolynomial {
    fn encode(&self) -> Value {
        serde_json::json!({
            "n": self.degree(),
            "coeffs": self.descending().iter().map(Codec::encode).collect::<Vec<_>>(),
        })
    }
    fn decode(v: &Value) -> Result<Self, String> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or("spectral polynomial needs integer field \"n\"")? as usize;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or("spectral polynomial needs array field \"coeffs\"")?;
        let coeffs = coeffs.iter().map(UniPoly::decode).collect::<Result<Vec<_>, _>>()?;
        SpectralPolynomial::from_descending(n, coeffs).map_err(|e| e.to_string())
    }
}

impl<R: Ring + Codec> Codec for Matrix<R> {
    fn encode(&self) -> Value {
        serde_json::json!({
            "rows": self.rows(),
            "cols": self.cols(),
            "entries": self.entries().iter().map(Codec::encode).collect::<Vec<_>>(),
        })
    }
    fn decode(v: &Value) -> Result<Self, String> {
        let get = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| format!("matrix needs integer field {k:?}"))
        };
        let (rows, cols) = (get("rows")?, get("cols")?);
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or("matrix needs array field \"entries\"")?
            .iter()
            .map(R::decode)
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::new(rows, cols, entries).map_err(|e| e.to_string())
    }
}

macro_rules! serde_via_codec {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                self.encode().serialize(s)
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let v = Value::deserialize(d)?;
                <$t>::decode(&v).map_err(D::Error::custom)
            }
        }
    )*};
}

serde_via_codec!(UniPoly, SpectralPolynomial, Matrix<Rational>, Matrix<UniPoly>);

/// `#[serde(with = "hitchin_exact::json::rational")]` for rational fields.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = Value::deserialize(d)?;
        Rational::decode(&v).map_err(D::Error::custom)
    }
}
