//! Deterministic text forms for numbers and records.
//!
//! Every float is written with 17 significant digits in scientific notation
//! (`{:.16e}`), which round-trips an `f64` exactly and does not depend on the
//! platform's shortest-representation algorithm. JSON objects keep their
//! insertion order, so a record parsed and re-emitted is byte-identical.

use std::io;

use num_complex::Complex64;
use serde_json::ser::Formatter;
use serde_json::{Map, Value};

/// A float as 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON formatter writing floats as [`float`] and non-finite values as null.
#[derive(Debug, Clone, Copy, Default)]
pub struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(float(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes a value on one line with [`FixedDigits`].
pub fn to_json_line(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    serde::Serialize::serialize(value, &mut ser).expect("serializing a JSON value into memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Parses a JSON document and writes it back in canonical form.
pub fn canonicalize(text: &str) -> serde_json::Result<String> {
    let value: Value = serde_json::from_str(text)?;
    Ok(to_json_line(&value))
}

pub fn real(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn complex(z: Complex64) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), real(z.re));
    m.insert("im".into(), real(z.im));
    Value::Object(m)
}

pub fn opt_complex(z: Option<Complex64>) -> Value {
    z.map_or(Value::Null, complex)
}

pub fn opt_real(x: Option<f64>) -> Value {
    x.map_or(Value::Null, real)
}

/// `a+bi` with both parts as [`float`].
pub fn complex_text(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", float(z.re), sign, float(z.im.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(float(std::f64::consts::FRAC_PI_2), "1.5707963267948966e0");
        assert_eq!(float(0.0), "0.0000000000000000e0");
        assert_eq!(float(-2.5e-300), "-2.5000000000000000e-300");
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut m = Map::new();
        m.insert("b".into(), real(0.1));
        m.insert("a".into(), complex(Complex64::new(1.0, -3.0e-17)));
        m.insert("n".into(), Value::from(3u64));
        m.insert("none".into(), real(f64::NAN));
        let text = to_json_line(&Value::Object(m));
        assert_eq!(
            text,
            r#"{"b":1.0000000000000001e-1,"a":{"re":1.0000000000000000e0,"im":-3.0000000000000001e-17},"n":3,"none":null}"#
        );
        assert_eq!(canonicalize(&text).unwrap(), text);
    }
}
