//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use quiver_moduli::algebra::BoundQuiverAlgebra;
use quiver_moduli::components::{generic_module, Component, RankSequence};
use quiver_moduli::dimvec::DimensionVector;
use quiver_moduli::fp::PrimeField;
use quiver_moduli::matrix::Matrix;
use quiver_moduli::module::ExplicitModule;
use quiver_moduli::{catalog, Error};

pub fn alg(name: &str) -> Arc<BoundQuiverAlgebra> {
    catalog::algebra(name).unwrap()
}

pub fn d(values: &[u32]) -> DimensionVector {
    DimensionVector::new(values.to_vec())
}

pub fn w(values: &[i64]) -> quiver_moduli::Weight {
    quiver_moduli::Weight::new(values.to_vec())
}

pub fn f(p: u64) -> PrimeField {
    PrimeField::new(p)
}

/// Explicit module from per-arrow row-major entries.
pub fn module(
    algebra: &Arc<BoundQuiverAlgebra>,
    dim: &[u32],
    p: u64,
    entries: &[(&str, &[i64])],
) -> ExplicitModule {
    let field = f(p);
    let q = algebra.quiver();
    let dv = d(dim);
    let mut matrices: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field, dv.get(a.head) as usize, dv.get(a.tail) as usize))
        .collect();
    for (name, data) in entries {
        let a = q.arrow_id(name).unwrap();
        let arr = q.arrow(a);
        matrices[a] = Matrix::from_rows(
            field,
            dv.get(arr.head) as usize,
            dv.get(arr.tail) as usize,
            data,
        );
    }
    ExplicitModule::new(algebra.clone(), dv, field, matrices).unwrap()
}

/// A sampled module with the given rank profile (need not be maximal).
pub fn ranked_module(
    algebra: &Arc<BoundQuiverAlgebra>,
    dim: &[u32],
    ranks: &[u32],
    p: u64,
    seed: u64,
) -> Result<ExplicitModule, Error> {
    let comp = Component::new(algebra.clone(), d(dim), RankSequence::new(ranks.to_vec()))?;
    generic_module(&comp, f(p), seed)
}

pub fn simple(algebra: &Arc<BoundQuiverAlgebra>, vertex: &str, p: u64) -> ExplicitModule {
    let v = algebra.quiver().vertex_id(vertex).unwrap();
    ExplicitModule::simple(algebra.clone(), v, f(p))
}
