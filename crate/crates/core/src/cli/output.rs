use std::io;

use serde::{Serialize, Serializer};
use serde_json::ser::Formatter;

use super::config::Format;

/// A numeric cell that may hold the marker `FAILED` instead of a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value(f64),
    Failed,
}

impl Cell {
    pub fn is_failed(&self) -> bool {
        matches!(self, Cell::Failed)
    }

    pub fn csv(&self) -> String {
        match self {
            Cell::Value(v) => csv_float(*v),
            Cell::Failed => "FAILED".into(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Value(v) => s.serialize_f64(*v),
            Cell::Failed => s.serialize_str("FAILED"),
        }
    }
}

/// Shortest representation that parses back to the same value.
pub fn csv_float(v: f64) -> String {
    format!("{v:?}")
}

/// Compact JSON with every float written to 17 significant digits; non-finite values become null.
struct Precise;

impl Formatter for Precise {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// One output row: CSV cells in header order, JSON through serde.
pub trait Row: Serialize {
    fn cells(&self) -> Vec<String>;
}

#[derive(Serialize)]
struct Document<'a, M: Serialize, R: Serialize> {
    meta: &'a M,
    rows: &'a [R],
}

/// CSV (header plus rows, LF endings) or a single JSON object {meta, rows}.
pub fn render<M: Serialize, R: Row>(format: Format, meta: &M, header: &[String], rows: &[R]) -> String {
    match format {
        Format::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for row in rows {
                out.push_str(&row.cells().join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut buf = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise);
            Document { meta, rows }.serialize(&mut ser).expect("serializing to memory");
            buf.push(b'\n');
            String::from_utf8(buf).expect("JSON is UTF-8")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct R {
        x: f64,
        c: Cell,
    }

    impl Row for R {
        fn cells(&self) -> Vec<String> {
            vec![csv_float(self.x), self.c.csv()]
        }
    }

    #[test]
    fn csv_and_json() {
        let rows = [
            R {
                x: std::f64::consts::PI,
                c: Cell::Failed,
            },
            R {
                x: 2.0,
                c: Cell::Value(1e-5),
            },
        ];
        let header = ["x".to_string(), "c".to_string()];
        let csv = render(Format::Csv, &(), &header, &rows);
        assert_eq!(csv, "x,c\n3.141592653589793,FAILED\n2.0,1e-5\n");
        let json = render(Format::Json, &serde_json::json!({"n": 1}), &header, &rows);
        assert!(json.contains("3.1415926535897931e0"));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rows"][0]["c"], "FAILED");
        assert_eq!(v["rows"][0]["x"].as_f64().unwrap(), std::f64::consts::PI);
        assert_eq!(v["rows"][1]["c"].as_f64().unwrap(), 1e-5);
    }
}
