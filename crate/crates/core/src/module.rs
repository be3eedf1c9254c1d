//! Explicit modules: one matrix per arrow over a prime field.

use std::sync::Arc;

use crate::algebra::BoundQuiverAlgebra;
use crate::dimvec::DimensionVector;
use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::matrix::Matrix;
use crate::quiver::{ArrowId, VertexId};

/// A point of the module variety: matrices `M(a)` of shape d(ha) x d(ta)
/// with all relation products zero.
#[derive(Debug, Clone)]
pub struct ExplicitModule {
    algebra: Arc<BoundQuiverAlgebra>,
    dim: DimensionVector,
    field: PrimeField,
    matrices: Vec<Matrix>,
}

pub fn same_algebra(a: &Arc<BoundQuiverAlgebra>, b: &Arc<BoundQuiverAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || (a.quiver() == b.quiver() && a.ideal() == b.ideal())
}

impl ExplicitModule {
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        dim: DimensionVector,
        field: PrimeField,
        matrices: Vec<Matrix>,
    ) -> Result<Self> {
        assert_eq!(dim.len(), algebra.quiver().vertex_count());
        assert_eq!(matrices.len(), algebra.quiver().arrow_count());
        for (a, m) in matrices.iter().enumerate() {
            let arr = algebra.quiver().arrow(a);
            if m.rows() != dim.get(arr.head) as usize || m.cols() != dim.get(arr.tail) as usize {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for arrow `{}` has shape {}x{}, expected {}x{}",
                    arr.name,
                    m.rows(),
                    m.cols(),
                    dim.get(arr.head),
                    dim.get(arr.tail)
                )));
            }
        }
        let module = ExplicitModule { algebra, dim, field, matrices };
        module.check_relations()?;
        Ok(module)
    }

    fn check_relations(&self) -> Result<()> {
        for &(first, second) in self.algebra.ideal().generators() {
            let prod = self.matrices[second].mul(&self.matrices[first]);
            if !prod.is_zero() {
                let q = self.algebra.quiver();
                return Err(Error::DimensionMismatch(format!(
                    "relation ({}, {}) does not vanish",
                    q.arrow(first).name,
                    q.arrow(second).name
                )));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>, field: PrimeField) -> Self {
        let n = algebra.quiver().vertex_count();
        let matrices = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(field, 0, 0))
            .collect();
        ExplicitModule { algebra, dim: DimensionVector::zero(n), field, matrices }
    }

    /// The simple module supported at vertex `x`.
    pub fn simple(algebra: Arc<BoundQuiverAlgebra>, x: VertexId, field: PrimeField) -> Self {
        let dim = DimensionVector::simple(algebra.quiver().vertex_count(), x);
        let matrices = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                Matrix::zeros(field, dim.get(a.head) as usize, dim.get(a.tail) as usize)
            })
            .collect();
        ExplicitModule { algebra, dim, field, matrices }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> &DimensionVector {
        &self.dim
    }

    pub fn total_dim(&self) -> usize {
        self.dim.total() as usize
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn matrix(&self, a: ArrowId) -> &Matrix {
        &self.matrices[a]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn is_zero_module(&self) -> bool {
        self.dim.is_zero()
    }

    /// Rank of every arrow matrix, in arrow order.
    pub fn rank_profile(&self) -> Vec<usize> {
        self.matrices.iter().map(|m| m.rank()).collect()
    }

    pub fn direct_sum(&self, other: &ExplicitModule) -> ExplicitModule {
        assert!(same_algebra(&self.algebra, &other.algebra));
        assert_eq!(self.field, other.field);
        let dim = self.dim.add(other.dim());
        let matrices = (0..self.matrices.len())
            .map(|a| {
                let (m1, m2) = (&self.matrices[a], &other.matrices[a]);
                let mut m = Matrix::zeros(self.field, m1.rows() + m2.rows(), m1.cols() + m2.cols());
                m.set_block(0, 0, m1);
                m.set_block(m1.rows(), m1.cols(), m2);
                m
            })
            .collect();
        ExplicitModule { algebra: self.algebra.clone(), dim, field: self.field, matrices }
    }

    /// Base change by `g`: the isomorphic module g(ha) M(a) g(ta)^{-1}.
    pub fn base_change(&self, g: &[Matrix]) -> ExplicitModule {
        assert_eq!(g.len(), self.dim.len());
        let g_inv: Vec<Matrix> = g.iter().map(|m| m.inverse().expect("singular base change")).collect();
        let q = self.algebra.quiver();
        let matrices = (0..self.matrices.len())
            .map(|a| {
                let arr = q.arrow(a);
                g[arr.head].mul(&self.matrices[a]).mul(&g_inv[arr.tail])
            })
            .collect();
        ExplicitModule {
            algebra: self.algebra.clone(),
            dim: self.dim.clone(),
            field: self.field,
            matrices,
        }
    }

    /// Composite action of a path (in traversal order) on the module.
    pub fn path_action(&self, path: &[ArrowId]) -> Option<Matrix> {
        let first = *path.first()?;
        let mut acc = self.matrices[first].clone();
        for &a in &path[1..] {
            acc = self.matrices[a].mul(&acc);
        }
        Some(acc)
    }
}

/// A morphism of modules: one block per vertex intertwining the actions.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new(source: &ExplicitModule, target: &ExplicitModule, blocks: Vec<Matrix>) -> Result<Self> {
        let q = source.algebra().quiver();
        for a in 0..q.arrow_count() {
            let arr = q.arrow(a);
            let lhs = blocks[arr.head].mul(source.matrix(a));
            let rhs = target.matrix(a).mul(&blocks[arr.tail]);
            if lhs != rhs {
                return Err(Error::DimensionMismatch(format!(
                    "blocks do not intertwine arrow `{}`",
                    arr.name
                )));
            }
        }
        Ok(ModuleMap { blocks })
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: VertexId) -> &Matrix {
        &self.blocks[v]
    }
}

/// The indecomposable projective at `x`: basis given by the relation-free
/// paths starting at `x`, arrows acting by path extension.
pub struct ProjectiveModule {
    pub module: ExplicitModule,
    /// Per vertex, the paths (arrow id sequences from `x`) indexing the basis.
    pub paths: Vec<Vec<Vec<ArrowId>>>,
}

pub fn projective(
    algebra: &Arc<BoundQuiverAlgebra>,
    x: VertexId,
    field: PrimeField,
) -> Result<ProjectiveModule> {
    algebra.require_acyclic()?;
    let q = algebra.quiver();
    if x >= q.vertex_count() {
        return Err(Error::UnknownVertex {
            arrow: String::new(),
            vertex: format!("#{x}"),
        });
    }
    // enumerate relation-free paths from x, depth-first in arrow order
    let mut paths: Vec<Vec<Vec<ArrowId>>> = vec![Vec::new(); q.vertex_count()];
    let mut stack: Vec<(VertexId, Vec<ArrowId>)> = vec![(x, Vec::new())];
    while let Some((v, path)) = stack.pop() {
        paths[v].push(path.clone());
        // reverse so that lower arrow ids are explored first
        let mut outs: Vec<ArrowId> = q.arrows_out_of(v).collect();
        outs.reverse();
        for a in outs {
            if let Some(&last) = path.last() {
                if algebra.ideal().contains(last, a) {
                    continue;
                }
            }
            let mut ext = path.clone();
            ext.push(a);
            stack.push((q.arrow(a).head, ext));
        }
    }
    let dim = DimensionVector::new(paths.iter().map(|p| p.len() as u32).collect());
    let mut matrices: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field, dim.get(a.head) as usize, dim.get(a.tail) as usize))
        .collect();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        for (col, path) in paths[arr.tail].iter().enumerate() {
            if let Some(&last) = path.last() {
                if algebra.ideal().contains(last, a) {
                    continue;
                }
            }
            let mut ext = path.clone();
            ext.push(a);
            if let Some(row) = paths[arr.head].iter().position(|p| *p == ext) {
                matrices[a].set(row, col, 1);
            }
        }
    }
    let module = ExplicitModule::new(algebra.clone(), dim, field, matrices)?;
    Ok(ProjectiveModule { module, paths })
}

/// A random point of mod(A, d), for any acyclic quadratic monomial algebra:
/// arrows are sampled in an order compatible with the quiver topology, each
/// matrix constrained to kill the accumulated images of the relation
/// partners already drawn.
pub fn random_module(
    algebra: &Arc<BoundQuiverAlgebra>,
    dim: &DimensionVector,
    field: PrimeField,
    seed: u64,
) -> Result<ExplicitModule> {
    algebra.require_acyclic()?;
    let q = algebra.quiver();
    let mut rng = crate::rng::SplitMix64::derived(seed, 0x3A2D);
    // position of each vertex in the topological order
    let topo = q.topological_order()?;
    let mut pos = vec![0usize; q.vertex_count()];
    for (i, &v) in topo.iter().enumerate() {
        pos[v] = i;
    }
    let mut order: Vec<ArrowId> = (0..q.arrow_count()).collect();
    order.sort_by_key(|&a| pos[q.arrow(a).tail]);
    let mut matrices: Vec<Option<Matrix>> = vec![None; q.arrow_count()];
    for a in order {
        let arr = q.arrow(a);
        let (rows, cols) = (dim.get(arr.head) as usize, dim.get(arr.tail) as usize);
        // forced kernel: images of every relation partner feeding this arrow
        let mut forced = Matrix::zeros(field, cols, 0);
        for &(first, second) in algebra.ideal().generators() {
            if second == a {
                let prev = matrices[first]
                    .as_ref()
                    .expect("relation partner drawn first");
                forced = forced.hstack(prev);
            }
        }
        let kernel_part = crate::matrix::Subspace::from_columns(&forced);
        // rows of proj span the annihilator of the forced images
        let proj = kernel_part.basis().transpose().kernel_basis().transpose();
        let r = Matrix::random(field, rows, proj.rows(), &mut rng);
        matrices[a] = Some(r.mul(&proj));
    }
    ExplicitModule::new(
        algebra.clone(),
        dim.clone(),
        field,
        matrices.into_iter().map(|m| m.unwrap()).collect(),
    )
}

/// A letter of a string walk: an arrow traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub arrow: ArrowId,
    pub forward: bool,
}

/// Builds the string module of a walk, in its canonical coordinate basis
/// (one basis vector per walk vertex, partial permutation matrices).
pub fn string_module(
    algebra: &Arc<BoundQuiverAlgebra>,
    start: VertexId,
    walk: &[Letter],
    field: PrimeField,
) -> Result<ExplicitModule> {
    let q = algebra.quiver();
    // walk vertices z_0 .. z_n
    let mut vertices = vec![start];
    for l in walk {
        let arr = q.arrow(l.arrow);
        let cur = *vertices.last().unwrap();
        let next = if l.forward {
            if arr.tail != cur {
                return Err(Error::DimensionMismatch(format!(
                    "letter `{}` does not continue the walk",
                    arr.name
                )));
            }
            arr.head
        } else {
            if arr.head != cur {
                return Err(Error::DimensionMismatch(format!(
                    "letter `{}^-` does not continue the walk",
                    arr.name
                )));
            }
            arr.tail
        };
        vertices.push(next);
    }
    let mut dim_values = vec![0u32; q.vertex_count()];
    // basis index of z_i within its vertex
    let mut local_index = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        local_index.push(dim_values[v] as usize);
        dim_values[v] += 1;
    }
    let dim = DimensionVector::new(dim_values);
    let mut matrices: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field, dim.get(a.head) as usize, dim.get(a.tail) as usize))
        .collect();
    for (i, l) in walk.iter().enumerate() {
        let (from, to) = if l.forward { (i, i + 1) } else { (i + 1, i) };
        matrices[l.arrow].set(local_index[to], local_index[from], 1);
    }
    ExplicitModule::new(algebra.clone(), dim, field, matrices)
}

/// All valid string walks of at most `max_len` letters, including the empty
/// walks (one per vertex). Walks equal to the reverse of an earlier walk are
/// skipped.
pub fn enumerate_string_walks(
    algebra: &Arc<BoundQuiverAlgebra>,
    max_len: usize,
) -> Vec<(VertexId, Vec<Letter>)> {
    let q = algebra.quiver();
    let mut out: Vec<(VertexId, Vec<Letter>)> = Vec::new();
    let mut seen: Vec<(VertexId, Vec<(ArrowId, bool)>)> = Vec::new();
    for start in 0..q.vertex_count() {
        let mut stack: Vec<(VertexId, Vec<Letter>)> = vec![(start, Vec::new())];
        while let Some((cur, walk)) = stack.pop() {
            let key: Vec<(ArrowId, bool)> = walk.iter().map(|l| (l.arrow, l.forward)).collect();
            // reverse representative: inverted letters in reverse order
            let rev_start = cur;
            let rev_key: Vec<(ArrowId, bool)> =
                walk.iter().rev().map(|l| (l.arrow, !l.forward)).collect();
            if !seen.contains(&(rev_start, rev_key)) {
                seen.push((start, key));
                out.push((start, walk.clone()));
            }
            if walk.len() == max_len {
                continue;
            }
            for a in 0..q.arrow_count() {
                for forward in [true, false] {
                    let arr = q.arrow(a);
                    let from = if forward { arr.tail } else { arr.head };
                    if from != cur {
                        continue;
                    }
                    if let Some(last) = walk.last() {
                        // no immediate backtrack
                        if last.arrow == a && last.forward != forward {
                            continue;
                        }
                        // no relation subword in either direction
                        if last.forward && forward && algebra.ideal().contains(last.arrow, a) {
                            continue;
                        }
                        if !last.forward && !forward && algebra.ideal().contains(a, last.arrow) {
                            continue;
                        }
                        // string condition: two consecutive forward letters or
                        // two consecutive backward letters with the same
                        // arrow would collapse; distinctness is implied by
                        // composability in an acyclic quiver.
                    }
                    let mut ext = walk.clone();
                    ext.push(Letter { arrow: a, forward });
                    let next = if forward { arr.head } else { arr.tail };
                    stack.push((next, ext));
                }
            }
        }
    }
    out
}
