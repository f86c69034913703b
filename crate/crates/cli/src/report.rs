use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::Value;

/// Writes every float as `{:.16e}` (17 significant digits).
struct FixedFloats;

impl Formatter for FixedFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, FixedFloats);
    value.serialize(&mut ser).expect("report serializes");
    String::from_utf8(out).expect("utf-8")
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub spec: Option<String>,
    pub result: Value,
    pub warnings: Vec<String>,
    pub error: Option<String>,
    pub exit_status: u8,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn print(&self, json: bool) {
        if json {
            println!("{}", to_json(self));
            return;
        }
        if let Some(name) = &self.spec {
            println!("spec: {name}");
        }
        if !self.text.is_empty() {
            print!("{}", self.text);
        }
        for w in &self.warnings {
            println!("warning: {w}");
        }
    }
}

/// `1.0000000000000000e0` style in JSON, `{:.10}`-ish for humans.
pub fn fmt_num(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e6) {
        format!("{x:.10e}")
    } else {
        format!("{x:.12}")
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    }
}

pub fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| fmt_num(x)).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(to_json(&0.1), "1.0000000000000001e-1");
        assert_eq!(to_json(&-2.0), "-2.0000000000000000e0");
        assert_eq!(to_json(&f64::NAN), "null");
        let back: f64 = serde_json::from_str(&to_json(&(1.0 / 3.0))).unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn human_numbers() {
        assert_eq!(fmt_num(-0.5), "-0.5");
        assert_eq!(fmt_num(16.0), "16");
        assert_eq!(fmt_num(1e-9), "1.0000000000e-9");
    }
}
