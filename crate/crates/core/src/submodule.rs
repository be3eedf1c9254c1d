//! Submodules of explicit modules: arrow-stable tuples of subspaces,
//! restriction and quotient, and the exhaustive small-scale enumeration that
//! serves as the exact oracle for stability questions.

use std::collections::BTreeSet;

use crate::dimvec::DimensionVector;
use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::matrix::{Matrix, Subspace};
use crate::module::{ExplicitModule, ModuleMap};

/// Hard guard for the exhaustive regime: enumeration is exact and only
/// offered over tiny fields at tiny total dimension.
pub const ORACLE_MAX_TOTAL_DIM: u32 = 8;
/// Safety valve on the number of enumeration nodes.
const ENUMERATION_NODE_CAP: usize = 4_000_000;

/// Vertex-indexed subspaces closed under all arrow actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    spaces: Vec<Subspace>,
}

impl Submodule {
    pub fn new(module: &ExplicitModule, spaces: Vec<Subspace>) -> Result<Self> {
        let q = module.algebra().quiver();
        assert_eq!(spaces.len(), q.vertex_count());
        for a in 0..q.arrow_count() {
            let arr = q.arrow(a);
            let image = module.matrix(a).mul(spaces[arr.tail].basis());
            if !spaces[arr.head].contains(&Subspace::from_columns(&image)) {
                return Err(Error::DimensionMismatch(format!(
                    "subspaces are not stable under arrow `{}`",
                    arr.name
                )));
            }
        }
        Ok(Submodule { spaces })
    }

    pub fn zero(module: &ExplicitModule) -> Self {
        let f = module.field();
        let spaces = (0..module.dim().len())
            .map(|v| Subspace::zero(f, module.dim().get(v) as usize))
            .collect();
        Submodule { spaces }
    }

    pub fn full(module: &ExplicitModule) -> Self {
        let f = module.field();
        let spaces = (0..module.dim().len())
            .map(|v| Subspace::full(f, module.dim().get(v) as usize))
            .collect();
        Submodule { spaces }
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn dim_vector(&self) -> DimensionVector {
        DimensionVector::new(self.spaces.iter().map(|s| s.dim() as u32).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn is_full(&self, module: &ExplicitModule) -> bool {
        self.dim_vector() == *module.dim()
    }
}

/// Smallest submodule containing the given spanning vectors (propagated once
/// along a topological order, which suffices in an acyclic quiver).
pub fn closure(module: &ExplicitModule, seeds: &[Vec<Vec<u64>>]) -> Result<Submodule> {
    let q = module.algebra().quiver();
    let f = module.field();
    let topo = q.topological_order()?.to_vec();
    let mut spaces: Vec<Subspace> = (0..q.vertex_count())
        .map(|v| {
            let n = module.dim().get(v) as usize;
            let mut m = Matrix::zeros(f, n, seeds[v].len());
            for (c, vec) in seeds[v].iter().enumerate() {
                for (r, &x) in vec.iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            Subspace::from_columns(&m)
        })
        .collect();
    for &v in &topo {
        let mut acc = spaces[v].clone();
        for a in q.arrows_into(v) {
            let ta = q.arrow(a).tail;
            let image = module.matrix(a).mul(spaces[ta].basis());
            acc = acc.sum(&Subspace::from_columns(&image));
        }
        spaces[v] = acc;
    }
    Submodule::new(module, spaces)
}

/// The submodule as a module of its own, together with the inclusion.
pub fn restrict(module: &ExplicitModule, sub: &Submodule) -> Result<(ExplicitModule, ModuleMap)> {
    let q = module.algebra().quiver();
    let f = module.field();
    let dim = sub.dim_vector();
    let mut matrices = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let image = module.matrix(a).mul(sub.spaces[arr.tail].basis());
        let block = sub.spaces[arr.head]
            .basis()
            .solve(&image)
            .ok_or_else(|| Error::DimensionMismatch("unstable subspace in restrict".into()))?;
        matrices.push(block);
    }
    let restricted = ExplicitModule::new(module.algebra().clone(), dim, f, matrices)?;
    let blocks = sub.spaces.iter().map(|s| s.basis().clone()).collect();
    let inclusion = ModuleMap::new(&restricted, module, blocks)?;
    Ok((restricted, inclusion))
}

/// The quotient by an arrow-stable submodule, via a basis extending the
/// submodule basis; relation products stay zero by functoriality.
pub fn quotient(module: &ExplicitModule, sub: &Submodule) -> Result<ExplicitModule> {
    let q = module.algebra().quiver();
    let f = module.field();
    let n_vert = q.vertex_count();
    let mut change: Vec<Matrix> = Vec::with_capacity(n_vert);
    let mut sub_dims = Vec::with_capacity(n_vert);
    for v in 0..n_vert {
        let basis = sub.spaces[v].basis();
        let comp = sub.spaces[v].complement();
        sub_dims.push(basis.cols());
        let g = basis.hstack(&comp);
        change.push(g.inverse().ok_or_else(|| {
            Error::DimensionMismatch("submodule basis does not extend to the full space".into())
        })?);
    }
    let mut matrices = Vec::with_capacity(q.arrow_count());
    let mut dim_values = Vec::with_capacity(n_vert);
    for v in 0..n_vert {
        dim_values.push(module.dim().get(v) - sub_dims[v] as u32);
    }
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        // conjugated matrix in the adapted basis; lower-left block vanishes
        let full_basis_tail = sub.spaces[arr.tail].basis().hstack(&sub.spaces[arr.tail].complement());
        let conj = change[arr.head].mul(module.matrix(a)).mul(&full_basis_tail);
        let block = conj.submatrix(
            sub_dims[arr.head],
            sub_dims[arr.tail],
            module.dim().get(arr.head) as usize - sub_dims[arr.head],
            module.dim().get(arr.tail) as usize - sub_dims[arr.tail],
        );
        matrices.push(block);
    }
    ExplicitModule::new(module.algebra().clone(), DimensionVector::new(dim_values), f, matrices)
}

fn check_oracle_scale(module: &ExplicitModule) -> Result<()> {
    let p = module.field().p();
    if !PrimeField::ORACLE.contains(&p) {
        return Err(Error::OracleScaleExceeded(format!(
            "exhaustive enumeration requires p in {{2,3,5}}, got {p}"
        )));
    }
    if module.dim().total() > ORACLE_MAX_TOTAL_DIM {
        return Err(Error::OracleScaleExceeded(format!(
            "total dimension {} exceeds the oracle bound {}",
            module.dim().total(),
            ORACLE_MAX_TOTAL_DIM
        )));
    }
    Ok(())
}

/// All subspaces of F_p^n, streamed as canonical column bases via reduced
/// row echelon forms. The visitor returns `false` to abort; the function
/// reports whether enumeration ran to completion.
pub fn enumerate_subspaces_with(
    field: PrimeField,
    n: usize,
    visit: &mut impl FnMut(Matrix) -> bool,
) -> bool {
    for k in 0..=n {
        let mut pivots = Vec::new();
        if !enumerate_pivot_sets(n, k, 0, &mut pivots, &mut |pivs| {
            enumerate_rref(field, n, pivs, &mut |m| visit(m.transpose()))
        }) {
            return false;
        }
    }
    true
}

/// Convenience collector over `enumerate_subspaces_with`.
pub fn enumerate_subspaces(field: PrimeField, n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    enumerate_subspaces_with(field, n, &mut |m| {
        out.push(m);
        true
    });
    out
}

fn enumerate_pivot_sets(
    n: usize,
    k: usize,
    start: usize,
    acc: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if acc.len() == k {
        return visit(acc);
    }
    let remaining = k - acc.len();
    for c in start..=(n - remaining) {
        acc.push(c);
        let keep_going = enumerate_pivot_sets(n, k, c + 1, acc, visit);
        acc.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

fn enumerate_rref(
    field: PrimeField,
    n: usize,
    pivots: &[usize],
    visit: &mut impl FnMut(Matrix) -> bool,
) -> bool {
    let k = pivots.len();
    let mut free_cells = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        for col in (p + 1)..n {
            if !pivots.contains(&col) {
                free_cells.push((row, col));
            }
        }
    }
    let p = field.p();
    let total = (p as u128).saturating_pow(free_cells.len() as u32);
    let mut assign: u128 = 0;
    while assign < total {
        let mut m = Matrix::zeros(field, k, n);
        for (row, &pc) in pivots.iter().enumerate() {
            m.set(row, pc, 1);
        }
        let mut v = assign;
        for &(row, col) in &free_cells {
            m.set(row, col, (v % p as u128) as u64);
            v /= p as u128;
        }
        if !visit(m) {
            return false;
        }
        assign += 1;
    }
    true
}

/// Subspaces of the ambient space containing `base`, lifted from subspaces
/// of a complement. Abortable like `enumerate_subspaces_with`.
fn enumerate_over(
    field: PrimeField,
    base: &Subspace,
    visit: &mut impl FnMut(Subspace) -> bool,
) -> bool {
    let comp = base.complement();
    enumerate_subspaces_with(field, comp.cols(), &mut |t| {
        let lifted = comp.mul(&t);
        visit(Subspace::from_columns(&base.basis().hstack(&lifted)))
    })
}

/// Every submodule of `module`, exactly once. Exhaustive-regime guarded.
pub fn enumerate_submodules(module: &ExplicitModule) -> Result<Vec<Submodule>> {
    check_oracle_scale(module)?;
    enumerate_submodules_unguarded(module)
}

/// The enumeration itself, bounded only by the node budget. Internal
/// pipeline stages run this over larger fields where the regime guard does
/// not apply; the public oracle surface stays guarded.
pub(crate) fn enumerate_submodules_unguarded(
    module: &ExplicitModule,
) -> Result<Vec<Submodule>> {
    let q = module.algebra().quiver();
    let topo = q.topological_order()?.to_vec();
    let mut out = Vec::new();
    let mut chosen: Vec<Option<Subspace>> = vec![None; q.vertex_count()];
    let mut nodes = 0usize;
    fn rec(
        module: &ExplicitModule,
        topo: &[usize],
        idx: usize,
        chosen: &mut Vec<Option<Subspace>>,
        out: &mut Vec<Submodule>,
        nodes: &mut usize,
    ) -> Result<()> {
        if idx == topo.len() {
            let spaces = chosen.iter().map(|s| s.clone().unwrap()).collect();
            out.push(Submodule { spaces });
            return Ok(());
        }
        let q = module.algebra().quiver();
        let f = module.field();
        let v = topo[idx];
        let n = module.dim().get(v) as usize;
        // forced part: images of the already-chosen tails
        let mut forced = Subspace::zero(f, n);
        for a in q.arrows_into(v) {
            let ta = q.arrow(a).tail;
            let img = module.matrix(a).mul(chosen[ta].as_ref().unwrap().basis());
            forced = forced.sum(&Subspace::from_columns(&img));
        }
        let mut res = Ok(());
        enumerate_over(f, &forced, &mut |u| {
            *nodes += 1;
            if *nodes > ENUMERATION_NODE_CAP {
                res = Err(Error::OracleScaleExceeded(
                    "submodule enumeration exceeded its node budget".into(),
                ));
                return false;
            }
            chosen[v] = Some(u);
            if let Err(e) = rec(module, topo, idx + 1, chosen, out, nodes) {
                res = Err(e);
                chosen[v] = None;
                return false;
            }
            chosen[v] = None;
            true
        });
        res
    }
    rec(module, &topo, 0, &mut chosen, &mut out, &mut nodes)?;
    Ok(out)
}

/// The exact set of dimension vectors of all submodules (exhaustive regime).
pub fn submodule_dimension_vectors(module: &ExplicitModule) -> Result<BTreeSet<DimensionVector>> {
    Ok(enumerate_submodules(module)?
        .iter()
        .map(|s| s.dim_vector())
        .collect())
}

/// Unguarded variant for internal exact checks over larger fields.
pub(crate) fn submodule_dimension_vectors_unguarded(
    module: &ExplicitModule,
) -> Result<BTreeSet<DimensionVector>> {
    Ok(enumerate_submodules_unguarded(module)?
        .iter()
        .map(|s| s.dim_vector())
        .collect())
}

/// Dimension vectors of arrow-closed coordinate subsets of the canonical
/// basis. Sound but not necessarily complete; requires the matrices to be
/// partial permutations with scalars.
pub fn coordinate_submodule_dimension_vectors(
    module: &ExplicitModule,
) -> Result<BTreeSet<DimensionVector>> {
    let q = module.algebra().quiver();
    for a in 0..q.arrow_count() {
        let m = module.matrix(a);
        for r in 0..m.rows() {
            if (0..m.cols()).filter(|&c| m.get(r, c) != 0).count() > 1 {
                return Err(Error::NotCanonicalForm(format!(
                    "matrix for arrow `{}` has a row with two entries",
                    q.arrow(a).name
                )));
            }
        }
        for c in 0..m.cols() {
            if (0..m.rows()).filter(|&r| m.get(r, c) != 0).count() > 1 {
                return Err(Error::NotCanonicalForm(format!(
                    "matrix for arrow `{}` has a column with two entries",
                    q.arrow(a).name
                )));
            }
        }
    }
    let total = module.dim().total() as usize;
    if total > 22 {
        return Err(Error::OracleScaleExceeded(format!(
            "coordinate enumeration over {total} basis vectors"
        )));
    }
    // global index of basis vector (v, i)
    let mut offset = vec![0usize; module.dim().len()];
    let mut acc = 0;
    for v in 0..module.dim().len() {
        offset[v] = acc;
        acc += module.dim().get(v) as usize;
    }
    // edges: coordinate i forces coordinate j
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let m = module.matrix(a);
        for c in 0..m.cols() {
            for r in 0..m.rows() {
                if m.get(r, c) != 0 {
                    edges.push((offset[arr.tail] + c, offset[arr.head] + r));
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << total) {
        if edges
            .iter()
            .all(|&(i, j)| mask & (1 << i) == 0 || mask & (1 << j) != 0)
        {
            let mut values = vec![0u32; module.dim().len()];
            for v in 0..module.dim().len() {
                for i in 0..module.dim().get(v) as usize {
                    if mask & (1 << (offset[v] + i)) != 0 {
                        values[v] += 1;
                    }
                }
            }
            out.insert(DimensionVector::new(values));
        }
    }
    Ok(out)
}
