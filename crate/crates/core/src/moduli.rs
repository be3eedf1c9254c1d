//! Moduli shapes: classify stable components as points or rational curves,
//! assemble symmetric powers along a theta-stable decomposition, and
//! normalize to products of projective spaces.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::BoundQuiverAlgebra;
use crate::components::{enumerate_components, generic_module, Component};
use crate::dimvec::{DimensionVector, Weight};
use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::homalg::is_isomorphic;
use crate::rng::SplitMix64;
use crate::stability::{
    is_stable, stable_decomposition, StabilityParams, StableDecomposition,
};
use crate::submodule::ORACLE_MAX_TOTAL_DIM;

/// Isomorphism type of the moduli space of one stable component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StableClass {
    Empty,
    Point,
    ProjLine,
    /// Proven rational projective curve; conjecturally a projective line.
    RationalCurve,
}

impl fmt::Display for StableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StableClass::Empty => write!(f, "empty"),
            StableClass::Point => write!(f, "point"),
            StableClass::ProjLine => write!(f, "P^1"),
            StableClass::RationalCurve => write!(f, "rational curve"),
        }
    }
}

/// A symmetric power of a stable-component moduli space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeFactor {
    pub base: StableClass,
    pub power: u32,
}

/// Normal form of a product of symmetric powers: S^m(point) = point,
/// S^m(P^1) = P^m, point factors dropped (an empty product is a point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizedShape {
    Empty,
    Point,
    /// Projective-space dimensions, sorted descending.
    Projective(Vec<u32>),
}

impl NormalizedShape {
    /// Total dimension of the normalized shape.
    pub fn dimension(&self) -> u32 {
        match self {
            NormalizedShape::Empty | NormalizedShape::Point => 0,
            NormalizedShape::Projective(ms) => ms.iter().sum(),
        }
    }

    pub fn is_projective_space_product(&self) -> bool {
        !matches!(self, NormalizedShape::Empty)
    }

    /// A single projective space (a point counts as P^0).
    pub fn is_single_projective_space(&self) -> bool {
        match self {
            NormalizedShape::Empty => false,
            NormalizedShape::Point => true,
            NormalizedShape::Projective(ms) => ms.len() == 1,
        }
    }
}

impl fmt::Display for NormalizedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizedShape::Empty => write!(f, "empty"),
            NormalizedShape::Point => write!(f, "point"),
            NormalizedShape::Projective(ms) => {
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "P^{m}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModuliShape {
    pub factors: Vec<ShapeFactor>,
    pub normalized: NormalizedShape,
    pub assumptions: Vec<String>,
}

impl ModuliShape {
    pub fn empty() -> Self {
        ModuliShape {
            factors: Vec::new(),
            normalized: NormalizedShape::Empty,
            assumptions: Vec::new(),
        }
    }
}

/// Classifies the moduli space of a single theta-stable component: a point
/// for an orbit closure, a projective line for a one-parameter family over a
/// gentle algebra, and a rational curve (conjecturally a line) otherwise.
pub fn classify_stable_component(
    component: &Component,
    theta: &Weight,
    params: &StabilityParams,
) -> Result<StableClass> {
    let d = component.dim_vector();
    if theta.pairing(d) != 0 || d.is_zero() {
        return Ok(StableClass::Empty);
    }
    // certify a stable point when the oracle can reach it
    if d.total() <= ORACLE_MAX_TOTAL_DIM {
        let of = PrimeField::new(params.oracle_prime);
        let mut any_stable = false;
        for k in 0..2u64 {
            let s = SplitMix64::derived(params.seed, 0xC1A55 + k).next_u64();
            match generic_module(component, of, s) {
                Ok(m) => {
                    if is_stable(&m, theta)? {
                        any_stable = true;
                        break;
                    }
                }
                Err(Error::FieldTooSmall { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        if !any_stable {
            return Ok(StableClass::Empty);
        }
    }
    classify_certified_factor(component, params)
}

/// Classification once stability of the component is already established.
fn classify_certified_factor(
    component: &Component,
    params: &StabilityParams,
) -> Result<StableClass> {
    let gap = component.gl_dimension() as i64 - component.dimension() as i64;
    match gap {
        1 => Ok(StableClass::Point),
        0 => {
            // a genuine one-parameter family: distinct seeds must produce
            // non-isomorphic stable modules
            let field = PrimeField::new(params.prime);
            let samples: Vec<_> = (0..3u64)
                .map(|k| {
                    let s = SplitMix64::derived(params.seed, 0xFA_0 + k).next_u64();
                    generic_module(component, field, s)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut saw_distinct = false;
            'outer: for i in 0..samples.len() {
                for j in (i + 1)..samples.len() {
                    if !is_isomorphic(&samples[i], &samples[j], params.seed)? {
                        saw_distinct = true;
                        break 'outer;
                    }
                }
            }
            if !saw_distinct {
                return Err(Error::Inconsistent(format!(
                    "component {} has full orbit gap yet all samples are isomorphic",
                    component.dim_vector()
                )));
            }
            if component.algebra().classes().gentle {
                Ok(StableClass::ProjLine)
            } else {
                Ok(StableClass::RationalCurve)
            }
        }
        gap => Err(Error::Inconsistent(format!(
            "stable component with orbit gap {gap}"
        ))),
    }
}

/// Assembles the moduli shape of a decomposition: orbit closures contribute
/// points regardless of multiplicity; every other factor contributes the
/// m-th symmetric power of its stable moduli space.
pub fn compose_moduli(
    decomposition: &StableDecomposition,
    params: &StabilityParams,
) -> Result<ModuliShape> {
    let mut factors = Vec::new();
    let mut assumptions = vec![
        "component and non-orbit part assumed normal (product of varieties of complexes)"
            .to_string(),
    ];
    for f in &decomposition.factors {
        let base = if f.is_orbit_closure {
            StableClass::Point
        } else {
            classify_certified_factor(&f.component, params)?
        };
        factors.push(ShapeFactor { base, power: f.multiplicity });
    }
    let mut dims: Vec<u32> = Vec::new();
    for sf in &factors {
        match sf.base {
            StableClass::Point | StableClass::Empty => {}
            StableClass::ProjLine => dims.push(sf.power),
            StableClass::RationalCurve => {
                assumptions.push(
                    "rational stable curve normalized as P^1 (observed in all known cases)"
                        .to_string(),
                );
                dims.push(sf.power);
            }
        }
    }
    dims.sort_unstable_by(|a, b| b.cmp(a));
    let normalized = if dims.is_empty() {
        NormalizedShape::Point
    } else {
        NormalizedShape::Projective(dims)
    };
    Ok(ModuliShape { factors, normalized, assumptions })
}

/// Everything the pipeline knows about one component at one weight.
#[derive(Debug, Clone)]
pub struct ComponentAnalysis {
    pub component: Component,
    pub semistable: bool,
    pub decomposition: Option<StableDecomposition>,
    pub shape: ModuliShape,
}

/// Full pipeline: enumerate components, decompose the semistable ones, and
/// compose moduli shapes. Components are processed independently with
/// per-component derived seeds, so results do not depend on the parallel
/// schedule.
pub fn moduli_shape(
    algebra: &Arc<BoundQuiverAlgebra>,
    d: &DimensionVector,
    theta: &Weight,
    params: &StabilityParams,
) -> Result<Vec<ComponentAnalysis>> {
    let comps = enumerate_components(algebra, d)?;
    if theta.pairing(d) != 0 {
        return Ok(comps
            .into_iter()
            .map(|component| ComponentAnalysis {
                component,
                semistable: false,
                decomposition: None,
                shape: ModuliShape::empty(),
            })
            .collect());
    }
    comps
        .into_par_iter()
        .enumerate()
        .map(|(idx, component)| {
            let local = StabilityParams {
                seed: SplitMix64::derived(params.seed, idx as u64).next_u64(),
                ..*params
            };
            match stable_decomposition(&component, theta, &local) {
                Ok(dec) => {
                    let shape = compose_moduli(&dec, &local)?;
                    Ok(ComponentAnalysis {
                        component,
                        semistable: true,
                        decomposition: Some(dec),
                        shape,
                    })
                }
                Err(Error::NotSemistable(_)) => Ok(ComponentAnalysis {
                    component,
                    semistable: false,
                    decomposition: None,
                    shape: ModuliShape::empty(),
                }),
                Err(e) => Err(e),
            }
        })
        .collect()
}
