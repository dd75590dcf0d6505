//! JSON witness documents.
//!
//! A document pins one solver run: the weights, the two sides, which
//! path produced them, the peel order, the exact margins, and (on the
//! rounding path) the certificate. Every rational is serialized as a
//! `"num/den"` string in lowest terms, sets are ascending arrays, and
//! field order is fixed, so rendering is canonical: parse then render
//! returns the original bytes.

use adpart::{
    Error, PartitionWitness, PivotChoice, Rational, Result, RoundingCertificate, SolvePath,
    VertexSet,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDocument {
    pub s: String,
    pub t: String,
    #[serde(rename = "A")]
    pub a: Vec<u32>,
    #[serde(rename = "B")]
    pub b: Vec<u32>,
    pub path: String,
    pub peeled: Vec<u32>,
    pub margins: MarginsDocument,
    pub certificate: Option<CertificateDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarginsDocument {
    #[serde(rename = "sSide")]
    pub s_side: String,
    #[serde(rename = "tSide")]
    pub t_side: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    #[serde(rename = "T")]
    pub t: String,
    #[serde(rename = "xBound")]
    pub x_bound: String,
    #[serde(rename = "yBound")]
    pub y_bound: String,
    #[serde(rename = "aMargin")]
    pub a_margin: String,
    #[serde(rename = "bMargin")]
    pub b_margin: String,
    #[serde(rename = "aLocal")]
    pub a_local: Option<String>,
    #[serde(rename = "bLocal")]
    pub b_local: Option<String>,
    pub pivot: Option<u32>,
    pub chosen: Option<String>,
    pub f0: String,
    pub g0: String,
}

fn path_tag(path: &SolvePath) -> &'static str {
    match path {
        SolvePath::SmallSt => "small-st",
        SolvePath::CliqueFallback => "clique-fallback",
        SolvePath::Rounding => "rounding",
    }
}

fn parse_path(tag: &str) -> Result<SolvePath> {
    match tag {
        "small-st" => Ok(SolvePath::SmallSt),
        "clique-fallback" => Ok(SolvePath::CliqueFallback),
        "rounding" => Ok(SolvePath::Rounding),
        other => Err(Error::InvalidInput(format!("unknown path tag `{other}`"))),
    }
}

fn certificate_document(cert: &RoundingCertificate) -> CertificateDocument {
    CertificateDocument {
        t: cert.t_surplus.to_string(),
        x_bound: cert.x_bound.to_string(),
        y_bound: cert.y_bound.to_string(),
        a_margin: cert.a_margin.to_string(),
        b_margin: cert.b_margin.to_string(),
        a_local: cert.a_local.as_ref().map(Rational::to_string),
        b_local: cert.b_local.as_ref().map(Rational::to_string),
        pivot: cert.pivot,
        chosen: cert.chosen.as_ref().map(|c| {
            match c {
                PivotChoice::Plus => "plus",
                PivotChoice::Minus => "minus",
            }
            .to_string()
        }),
        f0: cert.f0.to_string(),
        g0: cert.g0.to_string(),
    }
}

/// Builds the document for a fresh witness.
pub fn witness_document(w: &PartitionWitness, s: &Rational, t: &Rational) -> WitnessDocument {
    WitnessDocument {
        s: s.to_string(),
        t: t.to_string(),
        a: w.a.as_slice().to_vec(),
        b: w.b.as_slice().to_vec(),
        path: path_tag(&w.path).to_string(),
        peeled: w.peeled.iter().map(|step| step.vertex).collect(),
        margins: MarginsDocument {
            s_side: w.s_side_margin.to_string(),
            t_side: w.t_side_margin.to_string(),
        },
        certificate: w.certificate.as_ref().map(certificate_document),
    }
}

/// Canonical rendering: two-space pretty JSON plus a trailing newline.
pub fn render_document(doc: &WitnessDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("witness documents always serialize");
    text.push('\n');
    text
}

pub fn parse_document(text: &str) -> Result<WitnessDocument> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("witness JSON: {e}")))
}

/// The parts of a document the verifier recomputes against the graph.
pub struct DocumentClaims {
    pub s: Rational,
    pub t: Rational,
    pub a: VertexSet,
    pub b: VertexSet,
    pub path: SolvePath,
    pub s_side_margin: Rational,
    pub t_side_margin: Rational,
}

/// Extracts and re-parses the checkable claims. Ordering or duplication
/// problems inside the arrays surface later as coverage failures, since
/// set construction sorts and dedups.
pub fn document_claims(doc: &WitnessDocument) -> Result<DocumentClaims> {
    Ok(DocumentClaims {
        s: doc.s.parse()?,
        t: doc.t.parse()?,
        a: VertexSet::new(doc.a.clone()),
        b: VertexSet::new(doc.b.clone()),
        path: parse_path(&doc.path)?,
        s_side_margin: doc.margins.s_side.parse()?,
        t_side_margin: doc.margins.t_side.parse()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use adpart::{complete_graph, solve};

    #[test]
    fn renders_the_clique_fallback_witness() {
        let g = complete_graph(7);
        let s = Rational::one();
        let t = Rational::one();
        let w = solve(&g, &s, &t).unwrap();
        let doc = witness_document(&w, &s, &t);
        assert_eq!(doc.s, "1/1");
        assert_eq!(doc.a, vec![0, 1, 2, 6]);
        assert_eq!(doc.b, vec![3, 4, 5]);
        assert_eq!(doc.path, "clique-fallback");
        assert_eq!(doc.margins.s_side, "2/1");
        assert_eq!(doc.margins.t_side, "0/1");
        assert!(doc.peeled.is_empty());
        assert!(doc.certificate.is_none());
    }

    #[test]
    fn parse_render_is_the_identity() {
        let g = complete_graph(7);
        let s = Rational::new(5, 4);
        let t = Rational::new(3, 4);
        let w = solve(&g, &s, &t).unwrap();
        let text = render_document(&witness_document(&w, &s, &t));
        let back = parse_document(&text).unwrap();
        assert_eq!(render_document(&back), text);
    }

    #[test]
    fn certificates_round_trip_on_the_rounding_path() {
        // complete graph minus a perfect matching keeps every branch of the
        // certificate populated except the pivot fields
        let mut edges = Vec::new();
        for u in 0..9u32 {
            for v in u + 1..9 {
                edges.push((u, v));
            }
        }
        let skip = [(0u32, 1u32), (2, 3), (4, 5), (6, 7)];
        edges.retain(|e| !skip.contains(e));
        let g = adpart::build_graph(9, &edges).unwrap();
        let s = Rational::one();
        let t = Rational::one();
        let w = solve(&g, &s, &t).unwrap();
        let doc = witness_document(&w, &s, &t);
        let cert = doc.certificate.as_ref().unwrap();
        assert_eq!(cert.t, "1/1");
        assert_eq!(cert.x_bound, "7/32");
        assert_eq!(doc.peeled, vec![0]);
        let text = render_document(&doc);
        let back = parse_document(&text).unwrap();
        assert_eq!(render_document(&back), text);
    }

    #[test]
    fn claims_reject_garbage() {
        let g = complete_graph(7);
        let s = Rational::one();
        let w = solve(&g, &s, &s).unwrap();
        let mut doc = witness_document(&w, &s, &s);
        doc.path = "sideways".to_string();
        assert!(document_claims(&doc).is_err());
        doc.path = "rounding".to_string();
        doc.margins.s_side = "0.5".to_string();
        assert!(document_claims(&doc).is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"s": "1/1", "t": "1/1", "A": [0], "B": [1], "path": "small-st",
            "peeled": [], "margins": {"sSide": "0/1", "tSide": "0/1"},
            "certificate": null, "extra": 3}"#;
        assert!(parse_document(text).is_err());
    }
}
