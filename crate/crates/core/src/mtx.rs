//! Matrix Market coordinate I/O (`real`, `general` or `symmetric`).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// Formats a value so that it reads back bit-identically: integral values
/// print as integers, everything else in shortest round-trip exponent form.
pub fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:e}")
    }
}

/// Serializes `m`. With `symmetric`, only the lower triangle is written and the
/// header says so; the caller is responsible for `m` actually being symmetric.
pub fn to_string(m: &SparseMatrix, symmetric: bool) -> String {
    let kind = if symmetric { "symmetric" } else { "general" };
    let kept: Vec<_> = m
        .entries()
        .iter()
        .filter(|e| !symmetric || e.0 >= e.1)
        .collect();
    let mut out = format!("%%MatrixMarket matrix coordinate real {kind}\n");
    let _ = writeln!(out, "{} {} {}", m.nrows(), m.ncols(), kept.len());
    for &&(r, c, v) in &kept {
        let _ = writeln!(out, "{} {} {}", r + 1, c + 1, format_value(v));
    }
    out
}

pub fn write(path: &Path, m: &SparseMatrix, symmetric: bool) -> Result<()> {
    fs::write(path, to_string(m, symmetric)).map_err(|e| Error::io(path, e))
}

pub fn read(path: &Path) -> Result<SparseMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text, path)
}

pub fn parse(text: &str, path: &Path) -> Result<SparseMatrix> {
    let err = |line: usize, msg: &str| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.to_string(),
    };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let head: Vec<String> = header.split_whitespace().map(str::to_lowercase).collect();
    if head.len() != 5 || head[0] != "%%matrixmarket" || head[1] != "matrix" {
        return Err(err(1, "missing %%MatrixMarket matrix header"));
    }
    if head[2] != "coordinate" {
        return Err(err(1, "only coordinate format is supported"));
    }
    if head[3] != "real" && head[3] != "integer" {
        return Err(err(1, "only real or integer fields are supported"));
    }
    let symmetric = match head[4].as_str() {
        "general" => false,
        "symmetric" => true,
        _ => return Err(err(1, "symmetry must be general or symmetric")),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut trip = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(err(lineno, "size line needs rows cols nnz"));
                }
                let p = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(lineno, "bad size field"))
                };
                size = Some((p(fields[0])?, p(fields[1])?, p(fields[2])?));
            }
            Some((nr, nc, _)) => {
                if fields.len() != 3 {
                    return Err(err(lineno, "entry line needs row col value"));
                }
                let idx = |s: &str| {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| err(lineno, "index must be a positive integer"))
                };
                let (r, c) = (idx(fields[0])? - 1, idx(fields[1])? - 1);
                if r >= nr || c >= nc {
                    return Err(err(lineno, "index out of range"));
                }
                let v: f64 = fields[2].parse().map_err(|_| err(lineno, "bad value"))?;
                trip.push((r, c, v));
                if symmetric && r != c {
                    trip.push((c, r, v));
                }
            }
        }
    }
    let (nr, nc, nnz) = size.ok_or_else(|| err(1, "missing size line"))?;
    let stored = if symmetric {
        trip.iter().filter(|e| e.0 >= e.1).count()
    } else {
        trip.len()
    };
    if stored != nnz {
        return Err(err(
            1,
            &format!("header declares {nnz} entries, found {stored}"),
        ));
    }
    SparseMatrix::from_triplets(nr, nc, trip)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_general_and_symmetric() {
        let m = SparseMatrix::from_triplets(
            3,
            2,
            [
                (0, 0, 1.0),
                (2, 1, std::f64::consts::FRAC_1_SQRT_2),
                (1, 0, -3.5e-17),
            ],
        )
        .unwrap();
        let back = parse(&to_string(&m, false), Path::new("m")).unwrap();
        assert_eq!(back, m);

        let s = SparseMatrix::from_triplets(2, 2, [(0, 1, 2.0), (1, 0, 2.0), (1, 1, 0.1)]).unwrap();
        let text = to_string(&s, true);
        assert!(text.contains("symmetric"));
        assert!(text.contains("2 2 2\n"));
        assert_eq!(parse(&text, Path::new("s")).unwrap(), s);
    }

    #[test]
    fn rejects_malformed_input() {
        let p = Path::new("x");
        assert!(parse("", p).is_err());
        assert!(parse("%%MatrixMarket matrix array real general\n1 1\n1\n", p).is_err());
        assert!(parse(
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n",
            p
        )
        .is_err());
        assert!(parse(
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n",
            p
        )
        .is_err());
        let ok = parse(
            "%%MatrixMarket matrix coordinate real general\n% c\n2 2 1\n1 2 5\n",
            p,
        )
        .unwrap();
        assert_eq!(ok.get(0, 1), 5.0);
    }

    #[test]
    fn integral_values_print_as_integers() {
        assert_eq!(format_value(1.0), "1");
        assert_eq!(format_value(-2.0), "-2");
        assert_eq!(format_value(0.5), "5e-1");
    }
}
