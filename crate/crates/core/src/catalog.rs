//! Bundled algebras used throughout the test suites and the command line.
//!
//! The catalog spans the supported classes: hereditary gentle quivers, gentle
//! algebras with one or two relation chains, a string-but-not-gentle example,
//! the five-vertex wild Schur-tame algebra and its hereditary subquivers, and
//! the triangle-with-tail family.

use std::sync::Arc;

use crate::algebra::BoundQuiverAlgebra;
use crate::doc::{build_algebra, AlgebraDocument, ArrowDoc};
use crate::error::{Error, Result};

fn arrow(id: &str, tail: &str, head: &str) -> ArrowDoc {
    ArrowDoc { id: id.into(), tail: tail.into(), head: head.into() }
}

fn rel(first: &str, second: &str) -> Vec<String> {
    vec![first.into(), second.into()]
}

fn entry(name: &str) -> Option<AlgebraDocument> {
    let doc = match name {
        // two parallel arrows 1 -> 2
        "kronecker" => AlgebraDocument {
            name: "kronecker".into(),
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![arrow("a", "1", "2"), arrow("b", "1", "2")],
            relations: vec![],
        },
        // single arrow 2 -> 1
        "a2" => AlgebraDocument {
            name: "a2".into(),
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![arrow("a", "2", "1")],
            relations: vec![],
        },
        // 3 -> 2 -> 1 with the composite path zero
        "a3-relation" => AlgebraDocument {
            name: "a3-relation".into(),
            vertices: vec!["1".into(), "2".into(), "3".into()],
            arrows: vec![arrow("a", "2", "1"), arrow("b", "3", "2")],
            relations: vec![rel("b", "a")],
        },
        // 4 -> 3 -> 2 -> 1 with both length-two subpaths zero
        "a4-chain" => AlgebraDocument {
            name: "a4-chain".into(),
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            arrows: vec![arrow("a", "2", "1"), arrow("b", "3", "2"), arrow("c", "4", "3")],
            relations: vec![rel("b", "a"), rel("c", "b")],
        },
        // 3 => 2 -> 1, one of the two composites zero; gentle with two colors
        "kronecker-tail" => AlgebraDocument {
            name: "kronecker-tail".into(),
            vertices: vec!["1".into(), "2".into(), "3".into()],
            arrows: vec![arrow("a", "2", "1"), arrow("b", "3", "2"), arrow("c", "3", "2")],
            relations: vec![rel("b", "a")],
        },
        // 1 -> 2 branching to 3 and 4, both composites zero; string, not gentle
        "y-string" => AlgebraDocument {
            name: "y-string".into(),
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            arrows: vec![arrow("a", "2", "3"), arrow("b", "1", "2"), arrow("c", "2", "4")],
            relations: vec![rel("b", "a"), rel("b", "c")],
        },
        // commutative square with both composites zero; gentle with two
        // relation chains
        "square" => AlgebraDocument {
            name: "square".into(),
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            arrows: vec![
                arrow("a", "4", "2"),
                arrow("b", "4", "3"),
                arrow("c", "2", "1"),
                arrow("d", "3", "1"),
            ],
            relations: vec![rel("a", "c"), rel("b", "d")],
        },
        // the five-vertex wild Schur-tame algebra
        "ringel5" => AlgebraDocument {
            name: "ringel5".into(),
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into(), "5".into()],
            arrows: vec![
                arrow("alpha", "2", "1"),
                arrow("beta", "3", "2"),
                arrow("epsilon", "3", "1"),
                arrow("gamma", "5", "3"),
                arrow("delta", "4", "3"),
            ],
            relations: vec![rel("beta", "alpha")],
        },
        // ringel5 with the arrow alpha removed (a tilde-D4 quiver)
        "d4tilde" => AlgebraDocument {
            name: "d4tilde".into(),
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into(), "5".into()],
            arrows: vec![
                arrow("beta", "3", "2"),
                arrow("epsilon", "3", "1"),
                arrow("gamma", "5", "3"),
                arrow("delta", "4", "3"),
            ],
            relations: vec![],
        },
        // ringel5 with the arrow beta removed (a D5 quiver)
        "d5" => AlgebraDocument {
            name: "d5".into(),
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into(), "5".into()],
            arrows: vec![
                arrow("alpha", "2", "1"),
                arrow("epsilon", "3", "1"),
                arrow("gamma", "5", "3"),
                arrow("delta", "4", "3"),
            ],
            relations: vec![],
        },
        "ringel-family-n4" => ringel_family(4),
        "ringel-family-n5" => ringel_family(5),
        "ringel-family-n6" => ringel_family(6),
        _ => return None,
    };
    Some(doc)
}

/// Triangle 1 <- 2 <- 3, 1 <- 3 with the composite through 2 zero, plus a
/// tail 3 <- 4 <- ... <- n.
fn ringel_family(n: usize) -> AlgebraDocument {
    assert!(n >= 4);
    let vertices: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let mut arrows = vec![
        arrow("alpha", "2", "1"),
        arrow("beta", "3", "2"),
        arrow("gamma", "3", "1"),
    ];
    for v in 4..=n {
        arrows.push(arrow(&format!("a{v}"), &v.to_string(), &(v - 1).to_string()));
    }
    AlgebraDocument {
        name: format!("ringel-family-n{n}"),
        vertices,
        arrows,
        relations: vec![rel("beta", "alpha")],
    }
}

/// Catalog names, sorted.
pub fn names() -> Vec<&'static str> {
    vec![
        "a2",
        "a3-relation",
        "a4-chain",
        "d4tilde",
        "d5",
        "kronecker",
        "kronecker-tail",
        "ringel-family-n4",
        "ringel-family-n5",
        "ringel-family-n6",
        "ringel5",
        "square",
        "y-string",
    ]
}

pub fn document(name: &str) -> Result<AlgebraDocument> {
    entry(name).ok_or_else(|| Error::MalformedDocument(format!("unknown catalog entry `{name}`")))
}

pub fn algebra(name: &str) -> Result<Arc<BoundQuiverAlgebra>> {
    build_algebra(&document(name)?)
}
