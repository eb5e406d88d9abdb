use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Numeric CSV contents: column names and an `rows x cols` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub data: DenseMatrix,
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => Error::Parse {
            line,
            msg: format!("{kind:?}"),
        },
    }
}

/// Reads a comma-separated numeric table with a header row. Lines starting
/// with `#` are skipped.
pub fn read_table(reader: impl Read) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers().map_err(csv_err)?.iter().map(String::from).collect();
    if header.is_empty() || header.iter().all(|h| h.is_empty()) {
        return Err(Error::Parse {
            line: 1,
            msg: "missing header row".into(),
        });
    }
    let k = header.len();
    let mut rows: Vec<f64> = Vec::new();
    let mut count = 0usize;
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != k {
            return Err(Error::Parse {
                line,
                msg: format!("expected {k} fields, found {}", rec.len()),
            });
        }
        for (j, cell) in rec.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("non-numeric cell {cell:?} in column {:?}", header[j]),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line,
                    msg: format!("non-finite cell {cell:?}"),
                });
            }
            rows.push(v);
        }
        count += 1;
    }
    if count == 0 {
        return Err(Error::Parse {
            line: 2,
            msg: "no data rows".into(),
        });
    }
    let data = DenseMatrix::from_fn(count, k, |i, j| rows[i * k + j]);
    Ok(Table { header, data })
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Table> {
    read_table(File::open(path)?)
}

/// Loads features and the named target column from a CSV file. Row order
/// is preserved; every other column becomes a feature.
pub fn load_csv(path: impl AsRef<Path>, target_column: &str) -> Result<(DenseMatrix, Vec<f64>)> {
    let t = load_table(path)?;
    let Some(tc) = t.header.iter().position(|h| h == target_column) else {
        return Err(Error::Parse {
            line: 1,
            msg: format!("no column named {target_column:?}"),
        });
    };
    if t.header.len() < 2 {
        return Err(Error::Parse {
            line: 1,
            msg: "need at least one feature column besides the target".into(),
        });
    }
    let feats: Vec<usize> = (0..t.header.len()).filter(|&j| j != tc).collect();
    let points = DenseMatrix::from_fn(t.data.rows(), feats.len(), |i, j| t.data.get(i, feats[j]));
    Ok((points, t.data.col(tc).to_vec()))
}

/// Writes a table with shortest round-trip decimal formatting, so values
/// reload bit-for-bit.
pub fn write_table(out: impl Write, header: &[&str], data: &DenseMatrix) -> Result<()> {
    if header.len() != data.cols() {
        return Err(Error::Dimension("header length differs from column count".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    let mut rec = Vec::with_capacity(data.cols());
    for i in 0..data.rows() {
        rec.clear();
        rec.extend((0..data.cols()).map(|j| format!("{:?}", data.get(i, j))));
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes features `x0, x1, ...` followed by a target column.
pub fn write_csv(
    path: impl AsRef<Path>,
    points: &DenseMatrix,
    targets: &[f64],
    target_column: &str,
) -> Result<()> {
    if targets.len() != points.rows() {
        return Err(Error::Dimension("targets length differs from row count".into()));
    }
    let names: Vec<String> = (0..points.cols()).map(|j| format!("x{j}")).collect();
    let mut header: Vec<&str> = names.iter().map(String::as_str).collect();
    header.push(target_column);
    let data = points.hstack(&DenseMatrix::from_column(targets)?)?;
    write_table(File::create(path)?, &header, &data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{gaussian_matrix, seeded};
    use rand::Rng;

    #[test]
    fn small_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        std::fs::write(&p, "x,y\n1,2\n3,4").unwrap();
        let (pts, y) = load_csv(&p, "y").unwrap();
        assert_eq!(pts, DenseMatrix::from_rows(&[&[1.0], &[3.0]]).unwrap());
        assert_eq!(y, vec![2.0, 4.0]);
    }

    #[test]
    fn empty_and_bad_files() {
        assert!(matches!(read_table(&b""[..]), Err(Error::Parse { .. })));
        assert!(matches!(read_table(&b"a,b\n"[..]), Err(Error::Parse { .. })));
        match read_table(&b"a,b\n1,2\n3,oops\n"[..]) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(read_table(&b"a,b\n1,2,3\n"[..]), Err(Error::Parse { .. })));
    }

    #[test]
    fn comments_are_skipped() {
        let t = read_table(&b"# schema=v1\na,b\n1,2\n"[..]).unwrap();
        assert_eq!(t.header, vec!["a", "b"]);
        assert_eq!(t.data.rows(), 1);
    }

    #[test]
    fn round_trip_is_bitwise() {
        let mut rng = seeded(12);
        let mut pts = gaussian_matrix(&mut rng, 10_000, 3);
        for i in 0..10_000 {
            let e: i32 = rng.random_range(-300..300);
            pts.set(i, 0, pts.get(i, 0) * 10f64.powi(e));
        }
        let y: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>()).collect();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.csv");
        write_csv(&p, &pts, &y, "target").unwrap();
        let (pts2, y2) = load_csv(&p, "target").unwrap();
        assert!(pts
            .as_slice()
            .iter()
            .zip(pts2.as_slice())
            .all(|(a, b)| a.to_bits() == b.to_bits()));
        assert!(y.iter().zip(&y2).all(|(a, b)| a.to_bits() == b.to_bits()));
    }
}
