//! CSV output and the matching reader. Infinite values are written as the
//! literal `inf`.

use std::io::{Read, Write};

use crate::error::CliError;

/// In-memory CSV: a header row and string cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Cell parsed as a number (`inf` included), if it is one.
    pub fn number(&self, row: usize, name: &str) -> Option<f64> {
        parse_number(&self.rows[row][self.column(name)?])
    }

    pub fn write_to<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(input: R) -> Result<Self, CliError> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<Result<_, _>>()?;
        Ok(Self { header, rows })
    }
}

/// Shortest representation that parses back to the same value.
pub fn num(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:?}")
    }
}

/// Fixed two-decimal form for tabulated dB values.
pub fn num2(x: f64) -> String {
    if x.is_infinite() {
        num(x)
    } else {
        format!("{x:.2}")
    }
}

pub fn parse_number(cell: &str) -> Option<f64> {
    match cell {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        s => s.parse().ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [
            0.0,
            -2.62,
            1e-300,
            6.02e22,
            f64::INFINITY,
            f64::NEG_INFINITY,
            0.1 + 0.2,
        ] {
            assert_eq!(parse_number(&num(x)), Some(x));
        }
        assert_eq!(num2(3.0103), "3.01");
        assert_eq!(num2(f64::INFINITY), "inf");
    }

    #[test]
    fn table_round_trip() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![num(1.5), "inf".into()]);
        t.push(vec![num(-0.25), "exact".into()]);
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "a,b\n1.5,inf\n-0.25,exact\n"
        );
        let back = Table::read_from(buf.as_slice()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.number(0, "b"), Some(f64::INFINITY));
    }
}
