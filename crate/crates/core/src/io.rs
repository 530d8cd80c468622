//! Polytope files, point-cloud files and JSON reports.
//!
//! A polytope file is a list of integer points: optional `#` comment lines,
//! a header `r c`, then `r` lines of `c` integers. When `r <= 6` and `r < c`
//! the columns are the points (PALP layout), otherwise the rows are.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arith::RationalVector;
use crate::error::{Error, Result};
use crate::measure::WeightedPointCloud;
use crate::polytope::Polytope;

/// A parsed polytope file together with its comment lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    /// Comment lines without the leading `#` and one following space.
    pub comments: Vec<String>,
    pub polytope: Polytope,
}

/// Integer points of a polytope file, before taking the convex hull.
pub fn parse_points(text: &str) -> Result<(Vec<String>, Vec<RationalVector>)> {
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(c) = t.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
        } else if !t.is_empty() {
            lines.push(t);
        }
    }
    let (header, body) = lines.split_first().ok_or_else(|| Error::MalformedHeader("missing header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| Error::MalformedHeader(header.to_string())))
        .collect::<Result<_>>()?;
    let [r, c] = dims[..] else {
        return Err(Error::MalformedHeader(header.to_string()));
    };
    if r == 0 || c == 0 {
        return Err(Error::MalformedHeader(header.to_string()));
    }
    if body.len() != r {
        return Err(Error::MalformedInput(format!("header announces {r} rows, found {}", body.len())));
    }
    let mut matrix = Vec::with_capacity(r);
    for line in body {
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| Error::NonIntegerEntry(s.to_string())))
            .collect::<Result<_>>()?;
        if row.len() != c {
            return Err(Error::MalformedInput(format!("expected {c} entries in row {line:?}")));
        }
        matrix.push(row);
    }
    let points = if r <= 6 && r < c {
        (0..c).map(|j| RationalVector::from_ints(&matrix.iter().map(|row| row[j]).collect::<Vec<_>>())).collect()
    } else {
        matrix.iter().map(|row| RationalVector::from_ints(row)).collect()
    };
    Ok((comments, points))
}

/// Splits a file holding several polytopes one after another, each with its
/// own header, into the text of each one. Comment lines go with the next
/// polytope.
pub fn split_polytope_stream(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut remaining: Option<usize> = None;
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        current.push_str(line);
        current.push('\n');
        if t.starts_with('#') {
            continue;
        }
        match remaining {
            None => {
                let r = t
                    .split_whitespace()
                    .next()
                    .and_then(|x| x.parse::<usize>().ok())
                    .ok_or_else(|| Error::MalformedHeader(t.to_string()))?;
                remaining = Some(r);
            }
            Some(r) => remaining = Some(r - 1),
        }
        if remaining == Some(0) {
            out.push(std::mem::take(&mut current));
            remaining = None;
        }
    }
    if remaining.is_some() {
        return Err(Error::MalformedInput("last polytope is truncated".into()));
    }
    Ok(out)
}

pub fn parse_polytope_file(text: &str) -> Result<PolytopeFile> {
    let (comments, points) = parse_points(text)?;
    Ok(PolytopeFile { comments, polytope: Polytope::from_points(&points)? })
}

/// Parses a polytope file and takes the convex hull of its points.
pub fn parse_polytope(text: &str) -> Result<Polytope> {
    Ok(parse_polytope_file(text)?.polytope)
}

/// Canonical text of a lattice polytope: its sorted vertices, as columns
/// when the file orientation rule allows it and as rows otherwise.
pub fn write_polytope(p: &Polytope, comments: &[String]) -> Result<String> {
    let verts: Vec<Vec<i64>> = p
        .vertices()
        .iter()
        .map(|v| v.to_i64s().ok_or(Error::NotLattice))
        .collect::<Result<_>>()?;
    let d = p.dim();
    let n = verts.len();
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    let line = |xs: &mut dyn Iterator<Item = i64>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    if d <= 6 && d < n {
        out.push_str(&format!("{d} {n}\n"));
        for i in 0..d {
            out.push_str(&line(&mut verts.iter().map(|v| v[i])));
            out.push('\n');
        }
    } else {
        out.push_str(&format!("{n} {d}\n"));
        for v in &verts {
            out.push_str(&line(&mut v.iter().copied()));
            out.push('\n');
        }
    }
    Ok(out)
}

impl PolytopeFile {
    pub fn to_canonical_string(&self) -> Result<String> {
        write_polytope(&self.polytope, &self.comments)
    }
}

/// `sha256:<hex>` of the given inputs; each is length-prefixed so that
/// concatenation is unambiguous.
pub fn input_hash(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    if let [single] = inputs {
        h.update(single);
    } else {
        for i in inputs {
            h.update((i.len() as u64).to_le_bytes());
            h.update(i);
        }
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    tool_version: &'static str,
    kind: &'a str,
    input_hash: String,
    report: &'a T,
}

/// Pretty-printed JSON document wrapping `report` with the tool version and
/// the hash of the inputs it was computed from.
pub fn write_report<T: Serialize>(kind: &str, inputs: &[&[u8]], report: &T) -> String {
    let env = Envelope {
        tool: "weylot",
        tool_version: env!("CARGO_PKG_VERSION"),
        kind,
        input_hash: input_hash(inputs),
        report,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

pub fn read_cloud(text: &str) -> Result<WeightedPointCloud> {
    let cloud: WeightedPointCloud = serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    let n = cloud.points.len();
    if cloud.masses.len() != n || cloud.facets.len() != n || cloud.chambers.len() != n {
        return Err(Error::MalformedInput("points, masses, facets and chambers differ in length".into()));
    }
    if let Some(d) = cloud.points.first().map(RationalVector::dim) {
        if let Some(bad) = cloud.points.iter().find(|x| x.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.dim() });
        }
    }
    Ok(cloud)
}

pub fn write_cloud(cloud: &WeightedPointCloud) -> String {
    let mut s = serde_json::to_string_pretty(cloud).expect("clouds serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::measure::discretize;
    use crate::roots::Side;

    const SQUARE_COLS: &str = "# square\n2 4\n1 1 -1 -1\n1 -1 1 -1\n";

    #[test]
    fn both_orientations() {
        let a = parse_polytope(SQUARE_COLS).unwrap();
        let b = parse_polytope("4 2\n1 1\n1 -1\n-1 1\n-1 -1\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices().len(), 4);
        // seven rows of dimension 6 is read row-wise
        let mut t = String::from("7 6\n");
        for i in 0..6 {
            let row: Vec<String> = (0..6).map(|j| if i == j { "1".into() } else { "0".into() }).collect();
            t.push_str(&row.join(" "));
            t.push('\n');
        }
        t.push_str("-1 -1 -1 -1 -1 -1\n");
        assert_eq!(parse_polytope(&t).unwrap().dim(), 6);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_polytope("2 4\n1 1 -1 x\n1 -1 1 -1\n"), Err(Error::NonIntegerEntry(_))));
        assert!(matches!(parse_polytope("2\n1 1\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(parse_polytope("a b\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(parse_polytope(""), Err(Error::MalformedHeader(_))));
        assert!(matches!(parse_polytope("2 4\n1 1 -1 -1\n"), Err(Error::MalformedInput(_))));
        assert_eq!(parse_polytope("2 3\n1 0 1\n0 1 1\n"), Err(Error::OriginNotInterior));
    }

    #[test]
    fn streams() {
        let two = format!("{SQUARE_COLS}\n1 2\n-1 1\n");
        let parts = split_polytope_stream(&two).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parse_polytope(&parts[1]).unwrap().dim(), 1);
        assert!(split_polytope_stream("2 4\n1 1 -1 -1\n").is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let f = parse_polytope_file(SQUARE_COLS).unwrap();
        let text = f.to_canonical_string().unwrap();
        assert_eq!(text, "# square\n2 4\n-1 -1 1 1\n-1 1 -1 1\n");
        assert_eq!(parse_polytope_file(&text).unwrap().to_canonical_string().unwrap(), text);
        let rational = crate::Polytope::from_int_points(&[&[2, 0], &[0, 2], &[-1, -1]]).unwrap().dual();
        assert_eq!(write_polytope(&rational, &[]), Err(Error::NotLattice));
    }

    #[test]
    fn reports_and_clouds() {
        let p = parse_polytope(SQUARE_COLS).unwrap();
        let cloud = discretize(&p, 0, None, Side::M);
        let text = write_cloud(&cloud);
        assert!(text.contains("\"1/8\""));
        assert_eq!(read_cloud(&text).unwrap(), cloud);
        let r = write_report("cloud", &[SQUARE_COLS.as_bytes()], &cloud);
        assert_eq!(r, write_report("cloud", &[SQUARE_COLS.as_bytes()], &cloud));
        let keys: Vec<usize> = ["\"tool\"", "\"tool_version\"", "\"kind\"", "\"input_hash\"", "\"report\""]
            .iter()
            .map(|k| r.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(r.contains("sha256:"));
        assert_eq!(cloud.masses[0], ratio(1, 8));
        assert!(matches!(read_cloud("{}"), Err(Error::MalformedInput(_))));
    }
}
