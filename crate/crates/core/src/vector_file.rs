//! Plain-text generating vector files.
//!
//! Line 1 holds `b m d`; the next d lines hold one decimal integer per
//! component (base-b digit encoding, least significant digit = constant
//! coefficient); optional trailing lines starting with `#` carry free-form
//! comments such as the construction weights.

use std::io::{BufRead, Write};

use crate::cbc_dbd::GeneratingVector;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// A vector file read back from disk.
#[derive(Debug, Clone)]
pub struct VectorFile {
    pub vector: GeneratingVector,
    pub comments: Vec<String>,
}

/// Writes the bit-exact vector file format.
pub fn write_vector<W: Write>(mut out: W, g: &GeneratingVector, comments: &[String]) -> std::io::Result<()> {
    writeln!(out, "{} {} {}", g.b(), g.m(), g.dim())?;
    for idx in g.indices() {
        writeln!(out, "{idx}")?;
    }
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    Ok(())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position: line,
        message: message.into(),
    }
}

/// Reads a vector file, validating the header and every component encoding.
pub fn read_vector<R: BufRead>(inp: R) -> Result<VectorFile> {
    let mut lines = inp.lines().enumerate();
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty vector file"))?;
    let header = header?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(lineno + 1, "header must be `b m d`"));
    }
    let b: u8 = fields[0]
        .parse()
        .map_err(|_| parse_err(1, format!("invalid base `{}`", fields[0])))?;
    let m: u32 = fields[1]
        .parse()
        .map_err(|_| parse_err(1, format!("invalid precision `{}`", fields[1])))?;
    let d: usize = fields[2]
        .parse()
        .map_err(|_| parse_err(1, format!("invalid dimension `{}`", fields[2])))?;
    if m == 0 || d == 0 {
        return Err(parse_err(1, "m and d must be >= 1"));
    }

    let mut components = Vec::with_capacity(d);
    let mut comments = Vec::new();
    for (lineno, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if components.len() == d {
            return Err(parse_err(lineno + 1, "more components than the header declares"));
        }
        if !comments.is_empty() {
            return Err(parse_err(lineno + 1, "component after trailing comments"));
        }
        let idx: u64 = line
            .parse()
            .map_err(|_| parse_err(lineno + 1, format!("invalid component `{line}`")))?;
        let poly = Poly::from_index(idx, b).map_err(|e| parse_err(lineno + 1, e.to_string()))?;
        if poly.degree().map_or(false, |dg| dg >= m as usize) {
            return Err(parse_err(
                lineno + 1,
                format!("component {idx} has degree >= m = {m}"),
            ));
        }
        components.push(poly);
    }
    if components.len() != d {
        return Err(parse_err(
            0,
            format!("expected {d} components, found {}", components.len()),
        ));
    }
    let vector =
        GeneratingVector::new(b, m, components).map_err(|e| parse_err(0, e.to_string()))?;
    Ok(VectorFile { vector, comments })
}
