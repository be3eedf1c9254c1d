//! Machine-readable analysis reports and their text rendering.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dimvec::{DimensionVector, Weight};
use crate::moduli::{ComponentAnalysis, StableClass};
use crate::stability::StabilityParams;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct RequestEcho {
    pub algebra: String,
    pub document_hash: String,
    pub dim_vector: Vec<u32>,
    pub theta: Vec<i64>,
    pub seed: u64,
    pub trials: u32,
    pub prime: u64,
    pub oracle_prime: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub multiplicity: u32,
    pub dim_vector: Vec<u32>,
    pub rank_sequence: BTreeMap<String, u32>,
    pub orbit_closure: bool,
    pub moduli_class: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProvenanceReport {
    pub seed: u64,
    pub trials: u32,
    pub prime: u64,
    pub oracle_prime: u64,
    pub reseeds: u32,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub factors: Vec<FactorReport>,
    pub provenance: ProvenanceReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeReport {
    pub normalized: String,
    pub dimension: u32,
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub rank_sequence: BTreeMap<String, u32>,
    pub dimension: u64,
    pub gl_dimension: u64,
    pub string_defect: Option<u32>,
    pub regular: Option<bool>,
    pub semistable: bool,
    pub decomposition: Option<DecompositionReport>,
    pub moduli: ShapeReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub request: RequestEcho,
    pub components: Vec<ComponentReport>,
}

fn rank_map(
    quiver: &crate::quiver::Quiver,
    ranks: &crate::components::RankSequence,
) -> BTreeMap<String, u32> {
    (0..quiver.arrow_count())
        .map(|a| (quiver.arrow(a).name.clone(), ranks.get(a)))
        .collect()
}

pub fn build_report(
    algebra_name: &str,
    document_hash: &str,
    d: &DimensionVector,
    theta: &Weight,
    params: &StabilityParams,
    analyses: &[ComponentAnalysis],
) -> AnalysisReport {
    let components = analyses
        .iter()
        .map(|analysis| {
            let comp = &analysis.component;
            let quiver = comp.algebra().quiver();
            let decomposition = analysis.decomposition.as_ref().map(|dec| {
                let shape_factors = &analysis.shape.factors;
                let factors = dec
                    .factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| FactorReport {
                        multiplicity: f.multiplicity,
                        dim_vector: f.dim.values().to_vec(),
                        rank_sequence: rank_map(quiver, f.component.ranks()),
                        orbit_closure: f.is_orbit_closure,
                        moduli_class: shape_factors
                            .get(i)
                            .map(|sf| sf.base.to_string())
                            .unwrap_or_else(|| StableClass::Point.to_string()),
                    })
                    .collect();
                DecompositionReport {
                    factors,
                    provenance: ProvenanceReport {
                        seed: dec.provenance.seed,
                        trials: dec.provenance.trials,
                        prime: dec.provenance.prime,
                        oracle_prime: dec.provenance.oracle_prime,
                        reseeds: dec.provenance.reseeds,
                        notes: dec.provenance.notes.clone(),
                    },
                }
            });
            ComponentReport {
                rank_sequence: rank_map(quiver, comp.ranks()),
                dimension: comp.dimension(),
                gl_dimension: comp.gl_dimension(),
                string_defect: comp.string_defect().ok(),
                regular: comp.is_regular().ok(),
                semistable: analysis.semistable,
                decomposition,
                moduli: ShapeReport {
                    normalized: analysis.shape.normalized.to_string(),
                    dimension: analysis.shape.normalized.dimension(),
                    assumptions: analysis.shape.assumptions.clone(),
                },
            }
        })
        .collect();
    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        request: RequestEcho {
            algebra: algebra_name.to_string(),
            document_hash: document_hash.to_string(),
            dim_vector: d.values().to_vec(),
            theta: theta.values().to_vec(),
            seed: params.seed,
            trials: params.trials,
            prime: params.prime,
            oracle_prime: params.oracle_prime,
        },
        components,
    }
}

pub fn to_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}

pub fn to_text(report: &AnalysisReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let r = &report.request;
    let _ = writeln!(
        out,
        "algebra {}  d={:?}  theta={:?}  (seed {}, trials {}, p={}, oracle p={})",
        r.algebra, r.dim_vector, r.theta, r.seed, r.trials, r.prime, r.oracle_prime
    );
    for (i, c) in report.components.iter().enumerate() {
        let ranks: Vec<String> = c
            .rank_sequence
            .iter()
            .map(|(name, r)| format!("{name}={r}"))
            .collect();
        let _ = writeln!(out, "component #{i}: ranks [{}]", ranks.join(", "));
        let _ = write!(out, "  dim C = {}, dim GL = {}", c.dimension, c.gl_dimension);
        if let Some(defect) = c.string_defect {
            let _ = write!(out, ", defect = {defect}");
        }
        if let Some(regular) = c.regular {
            let _ = write!(out, ", regular = {regular}");
        }
        let _ = writeln!(out);
        match &c.decomposition {
            None => {
                let _ = writeln!(out, "  not semistable; moduli: {}", c.moduli.normalized);
            }
            Some(dec) => {
                let _ = writeln!(out, "  stable decomposition:");
                for f in &dec.factors {
                    let _ = writeln!(
                        out,
                        "    {} x {:?}  ({}{})",
                        f.multiplicity,
                        f.dim_vector,
                        f.moduli_class,
                        if f.orbit_closure { ", orbit closure" } else { "" }
                    );
                }
                let _ = writeln!(out, "  moduli: {}", c.moduli.normalized);
            }
        }
    }
    out
}

/// Classification line used by the validate command.
pub fn class_summary(algebra: &crate::algebra::BoundQuiverAlgebra) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let classes = algebra.classes();
    let q = algebra.quiver();
    let plural = |n: usize, word: &str| {
        if n == 1 {
            format!("{n} {word}")
        } else {
            format!("{n} {word}s")
        }
    };
    let vertices = if q.vertex_count() == 1 { "1 vertex".to_string() } else { format!("{} vertices", q.vertex_count()) };
    let _ = writeln!(
        out,
        "algebra {} ({}, {}, {})",
        algebra.name(),
        vertices,
        plural(q.arrow_count(), "arrow"),
        plural(algebra.ideal().len(), "relation")
    );
    let yn = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "acyclic: {}", yn(classes.acyclic));
    let _ = writeln!(out, "quadratic-monomial: {}", yn(classes.quadratic_monomial));
    let _ = writeln!(out, "disjoint-chain: {}", yn(classes.disjoint_chain));
    let _ = writeln!(out, "string: {}", yn(classes.string));
    match algebra.find_coloring() {
        Ok(coloring) => {
            let _ = writeln!(out, "gentle: yes ({})", plural(coloring.color_count(), "color"));
        }
        Err(_) => {
            let _ = writeln!(out, "gentle: no");
        }
    }
    if classes.string && !classes.gentle {
        if let Ok(cover) = algebra.find_gentle_cover() {
            let covered = cover.induced_ideal(q).len();
            let _ = writeln!(
                out,
                "gentle cover: {} colors, I_c has {} of {} relations",
                cover.color_count(),
                covered,
                algebra.ideal().len()
            );
        }
    }
    if let Some(chains) = algebra.chains() {
        for chain in chains {
            let names: Vec<&str> = chain
                .arrows
                .iter()
                .map(|&a| q.arrow(a).name.as_str())
                .collect();
            let _ = writeln!(out, "relation chain: [{}]", names.join(", "));
        }
    }
    out
}
