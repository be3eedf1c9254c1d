//! Homological linear algebra on explicit modules: Hom spaces via the
//! intertwining system, Ext dimensions via iterated syzygies, and a
//! Krull-Schmidt decomposition engine driven by eigenvalue splittings of
//! random endomorphisms.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Poly, Subspace};
use crate::module::{projective, same_algebra, ExplicitModule, ModuleMap};
use crate::rng::SplitMix64;
use crate::submodule::{restrict, Submodule};

/// Basis of Hom(M, N): each element is one block per vertex.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub elements: Vec<Vec<Matrix>>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

fn check_compatible(m: &ExplicitModule, n: &ExplicitModule) -> Result<()> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::DimensionMismatch("modules over different algebras".into()));
    }
    if m.field() != n.field() {
        return Err(Error::DimensionMismatch(format!(
            "field mismatch: F_{} vs F_{}",
            m.field().p(),
            n.field().p()
        )));
    }
    Ok(())
}

/// Assembles the linear system phi(ha) M(a) = N(a) phi(ta) over all arrows.
fn intertwining_system(m: &ExplicitModule, n: &ExplicitModule) -> (Matrix, Vec<usize>) {
    let q = m.algebra().quiver();
    let f = m.field();
    let n_vert = q.vertex_count();
    let mut offsets = Vec::with_capacity(n_vert);
    let mut unknowns = 0usize;
    for v in 0..n_vert {
        offsets.push(unknowns);
        unknowns += n.dim().get(v) as usize * m.dim().get(v) as usize;
    }
    let mut rows = 0usize;
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        rows += n.dim().get(arr.head) as usize * m.dim().get(arr.tail) as usize;
    }
    let mut sys = Matrix::zeros(f, rows, unknowns);
    let mut row = 0usize;
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let dm_tail = m.dim().get(arr.tail) as usize;
        let dm_head = m.dim().get(arr.head) as usize;
        let dn_head = n.dim().get(arr.head) as usize;
        let dn_tail = n.dim().get(arr.tail) as usize;
        let ma = m.matrix(a);
        let na = n.matrix(a);
        for r in 0..dn_head {
            for c in 0..dm_tail {
                // sum_k phi(ha)[r][k] M(a)[k][c] - sum_k N(a)[r][k] phi(ta)[k][c]
                for k in 0..dm_head {
                    let idx = offsets[arr.head] + r * dm_head + k;
                    let v = f.add(sys.get(row, idx), ma.get(k, c));
                    sys.set(row, idx, v);
                }
                for k in 0..dn_tail {
                    let idx = offsets[arr.tail] + k * dm_tail + c;
                    let v = f.sub(sys.get(row, idx), na.get(r, k));
                    sys.set(row, idx, v);
                }
                row += 1;
            }
        }
    }
    (sys, offsets)
}

/// Basis of the space of module morphisms M -> N.
pub fn hom_space(m: &ExplicitModule, n: &ExplicitModule) -> Result<HomBasis> {
    check_compatible(m, n)?;
    let q = m.algebra().quiver();
    let f = m.field();
    let (sys, offsets) = intertwining_system(m, n);
    let kernel = sys.kernel_basis();
    let mut elements = Vec::with_capacity(kernel.cols());
    for col in 0..kernel.cols() {
        let mut blocks = Vec::with_capacity(q.vertex_count());
        for v in 0..q.vertex_count() {
            let (rn, cm) = (n.dim().get(v) as usize, m.dim().get(v) as usize);
            let mut b = Matrix::zeros(f, rn, cm);
            for r in 0..rn {
                for c in 0..cm {
                    b.set(r, c, kernel.get(offsets[v] + r * cm + c, col));
                }
            }
            blocks.push(b);
        }
        elements.push(blocks);
    }
    Ok(HomBasis { elements })
}

/// dim Hom(M, N) without materializing a basis.
pub fn hom_dim(m: &ExplicitModule, n: &ExplicitModule) -> Result<usize> {
    check_compatible(m, n)?;
    let (sys, _) = intertwining_system(m, n);
    Ok(sys.cols() - sys.rank())
}

pub fn end_dim(m: &ExplicitModule) -> Result<usize> {
    hom_dim(m, m)
}

/// One step of a projective resolution.
pub struct Syzygy {
    /// Projective cover P0 of M.
    pub cover: ExplicitModule,
    /// Multiplicity of each indecomposable projective in P0.
    pub cover_multiplicities: Vec<usize>,
    /// The epimorphism P0 -> M.
    pub cover_map: ModuleMap,
    /// The kernel, as a module of its own.
    pub omega: ExplicitModule,
}

/// Projective cover and first syzygy of M.
pub fn syzygy(m: &ExplicitModule) -> Result<Syzygy> {
    m.algebra().require_acyclic()?;
    let algebra = m.algebra().clone();
    let q = algebra.quiver();
    let f = m.field();
    let n_vert = q.vertex_count();

    // top multiplicities: codimension of the radical at each vertex
    let mut rad: Vec<Subspace> = (0..n_vert)
        .map(|v| Subspace::zero(f, m.dim().get(v) as usize))
        .collect();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let img = Subspace::from_columns(m.matrix(a));
        rad[arr.head] = rad[arr.head].sum(&img);
    }
    let mut generators: Vec<(usize, Vec<u64>)> = Vec::new(); // (vertex, generator vector)
    let mut mults = vec![0usize; n_vert];
    for v in 0..n_vert {
        let comp = rad[v].complement();
        mults[v] = comp.cols();
        for c in 0..comp.cols() {
            generators.push((v, comp.column(c)));
        }
    }

    // assemble P0 and the cover map
    let mut cover = ExplicitModule::zero(algebra.clone(), f);
    let mut proj_parts = Vec::new();
    for &(v, _) in &generators {
        let p = projective(&algebra, v, f)?;
        cover = cover.direct_sum(&p.module);
        proj_parts.push(p);
    }
    // cover blocks: per vertex w, columns indexed by (generator, path to w)
    let mut blocks: Vec<Matrix> = (0..n_vert)
        .map(|w| Matrix::zeros(f, m.dim().get(w) as usize, cover.dim().get(w) as usize))
        .collect();
    let mut col_offset = vec![0usize; n_vert];
    for (g, &(v, ref gen_vec)) in generators.iter().enumerate() {
        let part = &proj_parts[g];
        for w in 0..n_vert {
            for (j, path) in part.paths[w].iter().enumerate() {
                let image: Vec<u64> = if path.is_empty() {
                    debug_assert_eq!(w, v);
                    gen_vec.clone()
                } else {
                    m.path_action(path).unwrap().apply(gen_vec)
                };
                for (r, &x) in image.iter().enumerate() {
                    blocks[w].set(r, col_offset[w] + j, x);
                }
            }
        }
        for w in 0..n_vert {
            col_offset[w] += part.paths[w].len();
        }
    }
    // surjectivity is guaranteed by the generator choice; verify anyway
    for v in 0..n_vert {
        if blocks[v].rank() != m.dim().get(v) as usize {
            return Err(Error::DimensionMismatch(
                "projective cover failed to surject".into(),
            ));
        }
    }
    let cover_map = ModuleMap::new(&cover, m, blocks.clone())?;

    // omega = kernel of the cover map, vertex by vertex
    let spaces: Vec<Subspace> = (0..n_vert)
        .map(|v| Subspace::from_columns(&blocks[v].kernel_basis()))
        .collect();
    let sub = Submodule::new(&cover, spaces)?;
    let (omega, _) = restrict(&cover, &sub)?;
    // exactness: dim omega = dim P0 - dim M
    debug_assert_eq!(
        omega.dim().total() + m.dim().total(),
        cover.dim().total()
    );
    Ok(Syzygy { cover, cover_multiplicities: mults, cover_map, omega })
}

/// Projective dimension; `None` only if the iteration cap is hit, which
/// cannot happen for an acyclic quadratic monomial algebra.
pub fn pdim(m: &ExplicitModule) -> Result<Option<usize>> {
    if m.is_zero_module() {
        return Ok(Some(0));
    }
    let mut cur = m.clone();
    for step in 0..64 {
        let s = syzygy(&cur)?;
        if s.omega.is_zero_module() {
            return Ok(Some(step));
        }
        cur = s.omega;
    }
    Ok(None)
}

/// dim Ext^l(M, N) for l = 0, 1, ... until the resolution terminates.
pub fn ext_dims(m: &ExplicitModule, n: &ExplicitModule) -> Result<Vec<usize>> {
    check_compatible(m, n)?;
    let mut out = vec![hom_dim(m, n)?];
    let mut cur = m.clone();
    loop {
        if cur.is_zero_module() {
            break;
        }
        let s = syzygy(&cur)?;
        // ext^1(cur, N) = hom(omega, N) - hom(P0, N) + hom(cur, N)
        let value = hom_dim(&s.omega, n)? + hom_dim(&cur, n)?;
        let cover_hom = hom_dim(&s.cover, n)?;
        debug_assert!(value >= cover_hom);
        out.push(value - cover_hom);
        if s.omega.is_zero_module() {
            break;
        }
        cur = s.omega;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

pub fn ext_dim(l: usize, m: &ExplicitModule, n: &ExplicitModule) -> Result<usize> {
    Ok(ext_dims(m, n)?.get(l).copied().unwrap_or(0))
}

pub fn ext1_dim(m: &ExplicitModule, n: &ExplicitModule) -> Result<usize> {
    ext_dim(1, m, n)
}

/// Alternating sum of all Ext dimensions; the homological side of the Euler
/// form reconciliation.
pub fn ext_alternating_sum(m: &ExplicitModule, n: &ExplicitModule) -> Result<i64> {
    let dims = ext_dims(m, n)?;
    Ok(dims
        .iter()
        .enumerate()
        .map(|(l, &d)| if l % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum())
}

/// Isomorphism test. A found invertible morphism is a certificate; for small
/// search spaces the certificate search is exhaustive, so within the
/// exhaustive regime the answer is exact.
pub fn is_isomorphic(m: &ExplicitModule, n: &ExplicitModule, seed: u64) -> Result<bool> {
    check_compatible(m, n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m.is_zero_module() {
        return Ok(true);
    }
    let hom = hom_space(m, n)?;
    let h = hom.dim();
    if h == 0 {
        return Ok(false);
    }
    // cheap necessary conditions first
    if hom_dim(n, m)? != h || end_dim(m)? != end_dim(n)? {
        return Ok(false);
    }
    let f = m.field();
    let p = f.p();
    let invertible = |coeffs: &[u64]| -> bool {
        (0..m.dim().len()).all(|v| {
            let size = m.dim().get(v) as usize;
            let mut block = Matrix::zeros(f, size, n.dim().get(v) as usize);
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    block = block.add(&hom.elements[i][v].scale(c));
                }
            }
            block.rank() == size
        })
    };
    let exhaustive_budget = 1u128 << 14;
    if (p as u128).saturating_pow(h as u32) <= exhaustive_budget {
        let total = (p as u128).pow(h as u32);
        let mut idx: u128 = 1;
        while idx < total {
            let mut coeffs = vec![0u64; h];
            let mut v = idx;
            for c in coeffs.iter_mut() {
                *c = (v % p as u128) as u64;
                v /= p as u128;
            }
            if invertible(&coeffs) {
                return Ok(true);
            }
            idx += 1;
        }
        Ok(false)
    } else {
        let mut rng = SplitMix64::derived(seed, 0x15_0_15);
        for _ in 0..48 {
            let coeffs: Vec<u64> = (0..h).map(|_| rng.below(p)).collect();
            if invertible(&coeffs) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Krull-Schmidt decomposition into pairwise non-isomorphic indecomposables
/// with multiplicities. Deterministic for a fixed seed.
pub fn decompose(m: &ExplicitModule, seed: u64) -> Result<Vec<(ExplicitModule, usize)>> {
    let mut rng = SplitMix64::derived(seed, 0xDEC0);
    let parts = split_fully(m, &mut rng)?;
    merge_isomorphic(parts, seed)
}

fn merge_isomorphic(
    parts: Vec<ExplicitModule>,
    seed: u64,
) -> Result<Vec<(ExplicitModule, usize)>> {
    let mut out: Vec<(ExplicitModule, usize)> = Vec::new();
    for part in parts {
        let mut found = false;
        for (rep, mult) in out.iter_mut() {
            if is_isomorphic(&part, rep, seed)? {
                *mult += 1;
                found = true;
                break;
            }
        }
        if !found {
            out.push((part, 1));
        }
    }
    // canonical order: by dimension vector, then rank profile
    out.sort_by_key(|(m, _)| (m.dim().clone(), m.rank_profile()));
    Ok(out)
}

fn random_endo_blocks(
    m: &ExplicitModule,
    ends: &HomBasis,
    rng: &mut SplitMix64,
) -> Vec<Matrix> {
    let f = m.field();
    let p = f.p();
    let coeffs: Vec<u64> = (0..ends.dim()).map(|_| rng.below(p)).collect();
    (0..m.dim().len())
        .map(|v| {
            let size = m.dim().get(v) as usize;
            let mut b = Matrix::zeros(f, size, size);
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    b = b.add(&ends.elements[i][v].scale(c));
                }
            }
            b
        })
        .collect()
}

fn endo_char_poly(m: &ExplicitModule, blocks: &[Matrix]) -> Poly {
    let mut char_poly = Poly::new(m.field(), vec![1]);
    for b in blocks.iter().filter(|b| b.rows() > 0) {
        char_poly = char_poly.mul(&b.char_poly());
    }
    char_poly
}

/// Number of geometric summands an F_p-indecomposable module splits into
/// over the algebraic closure: the residue degree of its endomorphism ring.
/// Computed as the largest irreducible-factor degree of characteristic
/// polynomials of sampled endomorphisms.
pub fn geometric_splitting_degree(m: &ExplicitModule, seed: u64) -> Result<usize> {
    if m.is_zero_module() {
        return Ok(1);
    }
    let ends = hom_space(m, m)?;
    if ends.dim() == 1 {
        return Ok(1);
    }
    let mut rng = SplitMix64::derived(seed, 0x6E0);
    let mut best = 1usize;
    for _ in 0..6 {
        let blocks = random_endo_blocks(m, &ends, &mut rng);
        let cp = endo_char_poly(m, &blocks);
        best = best.max(cp.max_irreducible_factor_degree());
    }
    Ok(best)
}

fn split_fully(m: &ExplicitModule, rng: &mut SplitMix64) -> Result<Vec<ExplicitModule>> {
    if m.is_zero_module() {
        return Ok(Vec::new());
    }
    let ends = hom_space(m, m)?;
    if ends.dim() == 1 {
        return Ok(vec![m.clone()]);
    }
    let f = m.field();
    let n_vert = m.dim().len();
    const TRIALS: usize = 48;
    for _ in 0..TRIALS {
        let blocks = random_endo_blocks(m, &ends, rng);
        let char_poly = endo_char_poly(m, &blocks);
        let Some(lambda) = char_poly.any_root(rng) else {
            continue;
        };
        // Fitting split along (f - lambda)^dim, vertex by vertex
        let mut kernel_spaces = Vec::with_capacity(n_vert);
        let mut image_spaces = Vec::with_capacity(n_vert);
        for b in &blocks {
            let size = b.rows();
            let mut shifted = b.clone();
            for i in 0..size {
                shifted.set(i, i, f.sub(b.get(i, i), lambda));
            }
            let mut power = Matrix::identity(f, size);
            for _ in 0..size {
                power = power.mul(&shifted);
            }
            kernel_spaces.push(Subspace::from_columns(&power.kernel_basis()));
            image_spaces.push(Subspace::from_columns(&power));
        }
        let k_total: usize = kernel_spaces.iter().map(|s| s.dim()).sum();
        if k_total == 0 || k_total == m.total_dim() {
            continue;
        }
        let k_sub = Submodule::new(m, kernel_spaces)?;
        let i_sub = Submodule::new(m, image_spaces)?;
        let (m1, _) = restrict(m, &k_sub)?;
        let (m2, _) = restrict(m, &i_sub)?;
        let mut parts = split_fully(&m1, rng)?;
        parts.extend(split_fully(&m2, rng)?);
        return Ok(parts);
    }
    // no splitting found: every sampled non-unit was nilpotent, so the
    // endomorphism ring behaves as a local ring up to the search bound
    Ok(vec![m.clone()])
}
