use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub const SCHEMA_LINE: &str = "# schema=v1";

/// CSV sink that starts with the schema comment and the header.
pub struct CsvOut {
    inner: csv::Writer<Box<dyn Write>>,
}

impl CsvOut {
    pub fn create(path: Option<&Path>, header: &[&str]) -> io::Result<Self> {
        let mut sink: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        };
        writeln!(sink, "{SCHEMA_LINE}")?;
        let mut inner = csv::Writer::from_writer(sink);
        inner.write_record(header).map_err(io::Error::other)?;
        Ok(Self { inner })
    }

    pub fn row(&mut self, fields: &[String]) -> io::Result<()> {
        self.inner.write_record(fields).map_err(io::Error::other)
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Shortest round-trip form; non-finite values print as `NaN`/`inf`.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}
