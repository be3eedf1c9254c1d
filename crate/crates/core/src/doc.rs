//! The algebra document format: a small self-describing JSON shape with
//! explicit arrow ids. Relations are 2-element arrow-id arrays in traversal
//! order (walk the first arrow, then the second).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{BoundQuiverAlgebra, MonomialIdeal};
use crate::error::{Error, Result};
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub relations: Vec<Vec<String>>,
}

/// Parses the JSON text of an algebra document. Syntax errors carry the
/// line/column reported by the JSON parser.
pub fn parse_document(text: &str) -> Result<AlgebraDocument> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| {
        Error::MalformedDocument(format!("{} (line {}, column {})", e, e.line(), e.column()))
    })?;
    for rel in &doc.relations {
        if rel.len() != 2 {
            return Err(Error::MalformedDocument(format!(
                "relation {rel:?} must list exactly two arrow ids"
            )));
        }
    }
    Ok(doc)
}

/// Canonical printer; `parse -> print -> parse` is the identity.
pub fn print_document(doc: &AlgebraDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization");
    s.push('\n');
    s
}

/// Builds the bound quiver algebra with all certificates. A cyclic quiver is
/// not a parse failure; it surfaces as a class-report failure downstream.
pub fn build_algebra(doc: &AlgebraDocument) -> Result<Arc<BoundQuiverAlgebra>> {
    let quiver = Quiver::new(
        doc.vertices.clone(),
        doc.arrows
            .iter()
            .map(|a| (a.id.clone(), a.tail.clone(), a.head.clone()))
            .collect(),
    )?;
    let mut generators = Vec::new();
    for rel in &doc.relations {
        let first = quiver
            .arrow_id(&rel[0])
            .ok_or_else(|| Error::UnknownArrow(rel[0].clone()))?;
        let second = quiver
            .arrow_id(&rel[1])
            .ok_or_else(|| Error::UnknownArrow(rel[1].clone()))?;
        generators.push((first, second));
    }
    let ideal = MonomialIdeal::new(&quiver, generators)?;
    Ok(Arc::new(BoundQuiverAlgebra::new(doc.name.clone(), quiver, ideal)))
}

/// One-stop parse: document plus algebra with certificates.
pub fn parse_algebra(text: &str) -> Result<(AlgebraDocument, Arc<BoundQuiverAlgebra>)> {
    let doc = parse_document(text)?;
    let algebra = build_algebra(&doc)?;
    Ok((doc, algebra))
}

/// FNV-1a hash of the canonical document text, for request echoes.
pub fn document_hash(doc: &AlgebraDocument) -> String {
    let text = print_document(doc);
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}
