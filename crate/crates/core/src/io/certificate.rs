//! Line-oriented certificate files.
//!
//! ```text
//! kind: coloring | spectral
//! graph-hash: <sha256 of the canonical graph file>
//! two-t: <2·t△(G)>
//! coloring: <one 0/1 digit per edge, canonical edge order>      (coloring)
//! u: <one decimal per vertex of H_G, space separated>           (spectral)
//! sigma: <decimal>                                              (spectral)
//! tier: exact | numerical <margin>                              (spectral)
//! ```
//!
//! Floats are written in shortest round-trip form, so parsing a written
//! certificate and writing it again reproduces the same bytes.

use super::graph_file::graph_hash;
use super::FormatError;
use crate::arrow::ArrowCertificate;
use crate::graph::Graph;
use crate::spectra::Tier;
use crate::triangles::EdgeColoring;

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateFile {
    pub graph_hash: String,
    pub two_t: u64,
    pub certificate: ArrowCertificate,
}

impl CertificateFile {
    pub fn new(g: &Graph, two_t: u64, certificate: ArrowCertificate) -> Self {
        Self { graph_hash: graph_hash(g), two_t, certificate }
    }

    pub fn matches(&self, g: &Graph) -> bool {
        self.graph_hash == graph_hash(g)
    }
}

pub fn write_certificate(c: &CertificateFile) -> String {
    let mut out = String::new();
    let kind = match c.certificate {
        ArrowCertificate::Coloring(_) => "coloring",
        ArrowCertificate::Spectral { .. } => "spectral",
    };
    out.push_str(&format!("kind: {kind}\ngraph-hash: {}\ntwo-t: {}\n", c.graph_hash, c.two_t));
    match &c.certificate {
        ArrowCertificate::Coloring(col) => {
            out.push_str("coloring: ");
            out.extend(col.colors.iter().map(|&b| if b == 0 { '0' } else { '1' }));
            out.push('\n');
        }
        ArrowCertificate::Spectral { u, sigma, tier } => {
            out.push_str("u:");
            for x in u {
                out.push(' ');
                out.push_str(&format!("{x:?}"));
            }
            out.push('\n');
            out.push_str(&format!("sigma: {sigma:?}\n"));
            match tier {
                Tier::Exact => out.push_str("tier: exact\n"),
                Tier::Numerical { margin } => out.push_str(&format!("tier: numerical {margin:?}\n")),
            }
        }
    }
    out
}

fn parse_f64(line: usize, tok: &str) -> Result<f64, FormatError> {
    let x: f64 = tok.parse().map_err(|_| FormatError::new(line, format!("'{tok}' is not a decimal number")))?;
    if !x.is_finite() {
        return Err(FormatError::new(line, format!("'{tok}' is not finite")));
    }
    Ok(x)
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile, FormatError> {
    let mut fields: Vec<(usize, &str, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (k, v) = l.split_once(':').ok_or_else(|| FormatError::new(i + 1, "expected 'key: value'"))?;
        let key = k.trim();
        if fields.iter().any(|f| f.1 == key) {
            return Err(FormatError::new(i + 1, format!("repeated key '{key}'")));
        }
        fields.push((i + 1, key, v.trim()));
    }
    let get = |key: &str| -> Result<(usize, &str), FormatError> {
        fields
            .iter()
            .find(|f| f.1 == key)
            .map(|f| (f.0, f.2))
            .ok_or_else(|| FormatError::new(0, format!("missing key '{key}'")))
    };
    let (kline, kind) = get("kind")?;
    let (_, hash) = get("graph-hash")?;
    let (tline, two_t) = get("two-t")?;
    let two_t: u64 = two_t.parse().map_err(|_| FormatError::new(tline, format!("'{two_t}' is not an integer")))?;
    let allowed: &[&str] = match kind {
        "coloring" => &["kind", "graph-hash", "two-t", "coloring"],
        "spectral" => &["kind", "graph-hash", "two-t", "u", "sigma", "tier"],
        other => return Err(FormatError::new(kline, format!("unknown certificate kind '{other}'"))),
    };
    if let Some(f) = fields.iter().find(|f| !allowed.contains(&f.1)) {
        return Err(FormatError::new(f.0, format!("unexpected key '{}' for a {kind} certificate", f.1)));
    }
    let certificate = if kind == "coloring" {
        let (line, bits) = get("coloring")?;
        let colors = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(FormatError::new(line, format!("coloring digit '{other}' is not 0 or 1"))),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        ArrowCertificate::Coloring(EdgeColoring { colors })
    } else {
        let (uline, us) = get("u")?;
        let u = us.split_whitespace().map(|t| parse_f64(uline, t)).collect::<Result<Vec<_>, _>>()?;
        let (sline, s) = get("sigma")?;
        let sigma = parse_f64(sline, s)?;
        let (tline, t) = get("tier")?;
        let mut parts = t.split_whitespace();
        let tier = match (parts.next(), parts.next(), parts.next()) {
            (Some("exact"), None, None) => Tier::Exact,
            (Some("numerical"), Some(m), None) => Tier::Numerical { margin: parse_f64(tline, m)? },
            _ => return Err(FormatError::new(tline, format!("bad tier '{t}'"))),
        };
        ArrowCertificate::Spectral { u, sigma, tier }
    };
    Ok(CertificateFile { graph_hash: hash.to_string(), two_t, certificate })
}
