//! Irreducible components of module varieties for disjoint-chain algebras.
//!
//! Components are cut out by arrow-indexed rank bounds. The constraints
//! decompose along relation chains: inside a chain, consecutive ranks are
//! capped by the dimension at the shared vertex; arrows outside every chain
//! are unconstrained and generically take the full rank min(d(ta), d(ha)).
//! Maximal rank sequences parameterize the components.

use std::sync::Arc;

use crate::algebra::{BoundQuiverAlgebra, RelationChain};
use crate::dimvec::DimensionVector;
use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::homalg::{decompose, ext1_dim, geometric_splitting_degree};
use crate::matrix::Matrix;
use crate::module::ExplicitModule;
use crate::rng::SplitMix64;

/// Arrow-indexed rank bounds, in arrow declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankSequence {
    ranks: Vec<u32>,
}

impl RankSequence {
    pub fn new(ranks: Vec<u32>) -> Self {
        RankSequence { ranks }
    }

    pub fn get(&self, a: usize) -> u32 {
        self.ranks[a]
    }

    pub fn values(&self) -> &[u32] {
        &self.ranks
    }

    pub fn total(&self) -> u32 {
        self.ranks.iter().sum()
    }
}

/// Checks the rank-sequence invariants against a dimension vector.
pub fn is_valid_rank_sequence(
    algebra: &BoundQuiverAlgebra,
    d: &DimensionVector,
    ranks: &[u32],
) -> bool {
    let q = algebra.quiver();
    if ranks.len() != q.arrow_count() {
        return false;
    }
    for (a, arr) in q.arrows().iter().enumerate() {
        if ranks[a] > d.get(arr.tail).min(d.get(arr.head)) {
            return false;
        }
    }
    algebra
        .ideal()
        .generators()
        .iter()
        .all(|&(first, second)| {
            let x = q.arrow(first).head;
            ranks[first] + ranks[second] <= d.get(x)
        })
}

/// An irreducible component C(A, d, r) of the module variety mod(A, d).
#[derive(Debug, Clone)]
pub struct Component {
    algebra: Arc<BoundQuiverAlgebra>,
    dim: DimensionVector,
    ranks: RankSequence,
    dimension: u64,
    gl_dimension: u64,
    string_defect: Option<u32>,
}

impl Component {
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        dim: DimensionVector,
        ranks: RankSequence,
    ) -> Result<Self> {
        algebra.require_disjoint_chain()?;
        if !is_valid_rank_sequence(&algebra, &dim, ranks.values()) {
            return Err(Error::DimensionMismatch(
                "rank sequence violates its bounds".into(),
            ));
        }
        let dimension = variety_dimension(&algebra, &dim, &ranks);
        let gl_dimension = dim.values().iter().map(|&v| (v as u64) * (v as u64)).sum();
        let string_defect = if algebra.classes().gentle {
            let defect = dim.total() as i64 - ranks.total() as i64;
            debug_assert!(defect >= 0);
            Some(defect.max(0) as u32)
        } else {
            None
        };
        Ok(Component { algebra, dim, ranks, dimension, gl_dimension, string_defect })
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn dim_vector(&self) -> &DimensionVector {
        &self.dim
    }

    pub fn ranks(&self) -> &RankSequence {
        &self.ranks
    }

    /// dim C(A, d, r).
    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    /// dim GL(d) = sum of d(x)^2.
    pub fn gl_dimension(&self) -> u64 {
        self.gl_dimension
    }

    /// total(d) - sum of ranks; counts the string summands of the generic
    /// module. Defined for gentle algebras.
    pub fn string_defect(&self) -> Result<u32> {
        self.string_defect.ok_or_else(|| {
            Error::UnsupportedClass(format!(
                "string defect requires a gentle algebra; `{}` is not gentle",
                self.algebra.name()
            ))
        })
    }

    /// Defect zero: the generic module is a direct sum of band modules.
    pub fn is_regular(&self) -> Result<bool> {
        Ok(self.string_defect()? == 0)
    }

    /// No single rank can be increased while staying valid. The constraint
    /// region is downward closed, so this local test is equivalent to
    /// maximality in the coordinatewise partial order.
    pub fn is_maximal(&self) -> bool {
        let mut ranks = self.ranks.values().to_vec();
        for a in 0..ranks.len() {
            ranks[a] += 1;
            let improvable = is_valid_rank_sequence(&self.algebra, &self.dim, &ranks);
            ranks[a] -= 1;
            if improvable {
                return false;
            }
        }
        true
    }
}

/// Vertex dimensions along a chain: n_0 = d(tail of first arrow), then the
/// heads in order.
fn chain_profile(
    algebra: &BoundQuiverAlgebra,
    d: &DimensionVector,
    chain: &RelationChain,
) -> Vec<u32> {
    let q = algebra.quiver();
    let mut out = vec![d.get(q.arrow(chain.arrows[0]).tail)];
    for &a in &chain.arrows {
        out.push(d.get(q.arrow(a).head));
    }
    out
}

/// dim C(A, d, r): full matrix spaces on free arrows plus the rank-bounded
/// complex stratum on each chain, where the i-th map contributes
/// r_i (n_i - r_i) + r_i (n_{i-1} - r_{i-1}).
fn variety_dimension(
    algebra: &BoundQuiverAlgebra,
    d: &DimensionVector,
    ranks: &RankSequence,
) -> u64 {
    let q = algebra.quiver();
    let chains = algebra.chains().expect("disjoint-chain algebra");
    let mut total: u64 = 0;
    for &a in &algebra.free_arrows() {
        let arr = q.arrow(a);
        total += d.get(arr.tail) as u64 * d.get(arr.head) as u64;
    }
    for chain in chains {
        let n = chain_profile(algebra, d, chain);
        let mut prev_rank = 0u64;
        for (i, &a) in chain.arrows.iter().enumerate() {
            let r = ranks.get(a) as u64;
            total += r * (n[i + 1] as u64 - r) + r * (n[i] as u64 - prev_rank);
            prev_rank = r;
        }
    }
    total
}

/// Tangent-space certification of the per-chain dimension formula: the
/// dimension of the base-change orbit through a sampled module with exact
/// ranks, plus the free-arrow cells. Smooth points of the stratum lie in a
/// single orbit of the chain groups, so at a generic sample this must equal
/// `Component::dimension`.
pub fn tangent_dimension(component: &Component, module: &ExplicitModule) -> u64 {
    let algebra = component.algebra();
    let q = algebra.quiver();
    let d = component.dim_vector();
    let f = module.field();
    let mut total: u64 = 0;
    for &a in &algebra.free_arrows() {
        let arr = q.arrow(a);
        total += d.get(arr.tail) as u64 * d.get(arr.head) as u64;
    }
    for chain in algebra.chains().expect("disjoint-chain algebra") {
        let n = chain_profile(algebra, d, chain);
        let slots: Vec<usize> = n.iter().map(|&v| v as usize).collect();
        let gl_cols: usize = slots.iter().map(|&v| v * v).sum();
        let rows: usize = (0..chain.arrows.len())
            .map(|i| slots[i + 1] * slots[i])
            .sum();
        // L(X_0..X_k) = (X_i M_i - M_i X_{i-1})_i
        let mut sys = Matrix::zeros(f, rows, gl_cols);
        let mut col_off = vec![0usize; slots.len()];
        for i in 1..slots.len() {
            col_off[i] = col_off[i - 1] + slots[i - 1] * slots[i - 1];
        }
        let mut row_off = 0usize;
        for (i, &a) in chain.arrows.iter().enumerate() {
            let m_i = module.matrix(a);
            let (nr, nc) = (slots[i + 1], slots[i]);
            for r in 0..nr {
                for c in 0..nc {
                    let row = row_off + r * nc + c;
                    // d/dX_{i}[r][k] of (X_i M_i)[r][c] = M_i[k][c]
                    for k in 0..nr {
                        let idx = col_off[i + 1] + r * nr + k;
                        let v = f.add(sys.get(row, idx), m_i.get(k, c));
                        sys.set(row, idx, v);
                    }
                    // d/dX_{i-1}[k][c] of (M_i X_{i-1})[r][c] = M_i[r][k]
                    for k in 0..nc {
                        let idx = col_off[i] + k * nc + c;
                        let v = f.sub(sys.get(row, idx), m_i.get(r, k));
                        sys.set(row, idx, v);
                    }
                }
            }
            row_off += nr * nc;
        }
        total += sys.rank() as u64;
    }
    total
}

/// All components of mod(A, d): maximal rank sequences, built per chain and
/// multiplied out, with free arrows forced to full rank.
pub fn enumerate_components(
    algebra: &Arc<BoundQuiverAlgebra>,
    d: &DimensionVector,
) -> Result<Vec<Component>> {
    algebra.require_disjoint_chain()?;
    let q = algebra.quiver();
    assert_eq!(d.len(), q.vertex_count());
    let chains = algebra.chains().unwrap().to_vec();
    let mut ranks = vec![0u32; q.arrow_count()];
    for &a in &algebra.free_arrows() {
        let arr = q.arrow(a);
        ranks[a] = d.get(arr.tail).min(d.get(arr.head));
    }
    let per_chain: Vec<Vec<Vec<u32>>> = chains
        .iter()
        .map(|chain| maximal_chain_sequences(algebra, d, chain))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_chain.len()];
    loop {
        let mut r = ranks.clone();
        for (ci, chain) in chains.iter().enumerate() {
            for (i, &a) in chain.arrows.iter().enumerate() {
                r[a] = per_chain[ci][choice[ci]][i];
            }
        }
        out.push(Component::new(algebra.clone(), d.clone(), RankSequence::new(r))?);
        // advance the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == per_chain.len() {
                out.sort_by(|a, b| a.ranks.cmp(&b.ranks));
                return Ok(out);
            }
            choice[pos] += 1;
            if choice[pos] < per_chain[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Maximal sequences (r_1..r_k) with r_i <= u_i and r_i + r_{i+1} <= c_i,
/// by depth-first generation with the local improvability filter.
fn maximal_chain_sequences(
    algebra: &BoundQuiverAlgebra,
    d: &DimensionVector,
    chain: &RelationChain,
) -> Vec<Vec<u32>> {
    let q = algebra.quiver();
    let k = chain.arrows.len();
    let upper: Vec<u32> = chain
        .arrows
        .iter()
        .map(|&a| d.get(q.arrow(a).tail).min(d.get(q.arrow(a).head)))
        .collect();
    let caps: Vec<u32> = chain
        .arrows
        .iter()
        .take(k - 1)
        .map(|&a| d.get(q.arrow(a).head))
        .collect();
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(
        i: usize,
        k: usize,
        upper: &[u32],
        caps: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == k {
            let maximal = (0..k).all(|j| {
                // can r_j be bumped by one?
                if cur[j] + 1 > upper[j] {
                    return true;
                }
                let left_ok = j == 0 || cur[j - 1] + cur[j] + 1 <= caps[j - 1];
                let right_ok = j + 1 == k || cur[j] + 1 + cur[j + 1] <= caps[j];
                !(left_ok && right_ok)
            });
            if maximal {
                out.push(cur.clone());
            }
            return;
        }
        let bound = if i == 0 {
            upper[0]
        } else {
            upper[i].min(caps[i - 1].saturating_sub(cur[i - 1]))
        };
        for r in 0..=bound {
            cur[i] = r;
            rec(i + 1, k, upper, caps, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, k, &upper, &caps, &mut cur, &mut out);
    out
}

/// A module in C(A, d, r) with rank exactly r(a) on every arrow, built from
/// random full-rank factors threaded through the chain kernels.
pub fn generic_module(
    component: &Component,
    field: PrimeField,
    seed: u64,
) -> Result<ExplicitModule> {
    let algebra = component.algebra();
    let q = algebra.quiver();
    let d = component.dim_vector();
    let ranks = component.ranks();
    let mut rng = SplitMix64::derived(seed, 0x6E4E);
    const RETRIES: usize = 100;

    let mut matrices: Vec<Option<Matrix>> = vec![None; q.arrow_count()];
    for &a in &algebra.free_arrows() {
        let arr = q.arrow(a);
        let (rows, cols) = (d.get(arr.head) as usize, d.get(arr.tail) as usize);
        let m = Matrix::random_of_rank(field, rows, cols, ranks.get(a) as usize, &mut rng, RETRIES)
            .ok_or_else(|| Error::FieldTooSmall {
                prime: field.p(),
                context: format!("free arrow `{}`", arr.name),
            })?;
        matrices[a] = Some(m);
    }
    for chain in algebra.chains().unwrap() {
        let profile = chain_profile(algebra, d, chain);
        'chain_attempt: for attempt in 0..RETRIES {
            let mut built: Vec<Matrix> = Vec::with_capacity(chain.arrows.len());
            // left-kernel projector of the previous image; starts as identity
            let mut proj = Matrix::identity(field, profile[0] as usize);
            for (i, &a) in chain.arrows.iter().enumerate() {
                let n_out = profile[i + 1] as usize;
                let r = ranks.get(a) as usize;
                if r == 0 {
                    built.push(Matrix::zeros(field, n_out, profile[i] as usize));
                    proj = Matrix::identity(field, n_out);
                    continue;
                }
                // image basis U (n_out x r), mixing map S (r x proj rows)
                let Some(u) = Matrix::random_of_rank(field, n_out, r, r, &mut rng, RETRIES) else {
                    continue 'chain_attempt;
                };
                let Some(s) = Matrix::random_of_rank(field, r, proj.rows(), r, &mut rng, RETRIES)
                else {
                    continue 'chain_attempt;
                };
                let m = u.mul(&s).mul(&proj);
                if m.rank() != r {
                    continue 'chain_attempt;
                }
                built.push(m);
                // next map must kill the image: project along U's left kernel
                proj = u.transpose().kernel_basis().transpose();
            }
            let _ = attempt;
            for (i, &a) in chain.arrows.iter().enumerate() {
                matrices[a] = Some(built[i].clone());
            }
            break;
        }
        if chain.arrows.iter().any(|&a| matrices[a].is_none()) {
            return Err(Error::FieldTooSmall {
                prime: field.p(),
                context: format!("chain starting at `{}`", q.arrow(chain.arrows[0]).name),
            });
        }
    }
    let module = ExplicitModule::new(
        algebra.clone(),
        d.clone(),
        field,
        matrices.into_iter().map(|m| m.unwrap()).collect(),
    )?;
    // the construction promises exact ranks
    for a in 0..q.arrow_count() {
        if module.matrix(a).rank() != ranks.get(a) as usize {
            return Err(Error::FieldTooSmall {
                prime: field.p(),
                context: format!("rank degenerated on arrow `{}`", q.arrow(a).name),
            });
        }
    }
    Ok(module)
}

/// One summand class of a generic decomposition.
#[derive(Debug, Clone)]
pub struct GenericSummand {
    pub multiplicity: u32,
    pub dim: DimensionVector,
    pub rank_profile: Vec<u32>,
    /// Component of mod(A, dim) with this exact rank profile, when the
    /// profile is maximal (which it is for truly generic samples).
    pub component: Option<Component>,
    /// Fresh generic samples of the matched component.
    pub samples: Vec<ExplicitModule>,
}

#[derive(Debug, Clone)]
pub struct GenericDecomposition {
    pub summands: Vec<GenericSummand>,
    pub trials: u32,
    pub seed: u64,
}

/// Samples `trials` generic modules, Krull-Schmidt decomposes each, and
/// requires the multiset of (dimension vector, rank profile, multiplicity)
/// to agree across trials. An F_p-indecomposable summand whose endomorphism
/// ring has residue degree s stands for s Galois-conjugate geometric
/// summands of dimension dim/s, and is normalized accordingly. Cross pairs
/// of distinct summand classes are certified by a vanishing sampled Ext^1
/// minimum.
pub fn generic_decomposition(
    component: &Component,
    field: PrimeField,
    trials: u32,
    seed: u64,
) -> Result<GenericDecomposition> {
    assert!(trials >= 1);
    let algebra = component.algebra();
    let mut classes: Vec<(DimensionVector, Vec<u32>, u32)> = Vec::new();
    for t in 0..trials {
        let sample_seed = SplitMix64::derived(seed, t as u64).next_u64();
        let m = generic_module(component, field, sample_seed)?;
        let parts = decompose(&m, sample_seed)?;
        let mut trial_classes: Vec<(DimensionVector, Vec<u32>, u32)> = Vec::new();
        for (part, mult) in parts {
            let s = geometric_splitting_degree(&part, sample_seed)? as u32;
            let (dim, profile, count) = if s > 1 {
                let divisible = part.dim().values().iter().all(|&v| v % s == 0)
                    && part.rank_profile().iter().all(|&r| r as u32 % s == 0);
                if !divisible {
                    return Err(Error::Inconsistent(format!(
                        "summand {} reports splitting degree {s} but is not divisible by it",
                        part.dim()
                    )));
                }
                let dim = DimensionVector::new(
                    part.dim().values().iter().map(|&v| v / s).collect(),
                );
                let profile: Vec<u32> =
                    part.rank_profile().iter().map(|&r| r as u32 / s).collect();
                (dim, profile, mult as u32 * s)
            } else {
                let profile: Vec<u32> = part.rank_profile().iter().map(|&r| r as u32).collect();
                (part.dim().clone(), profile, mult as u32)
            };
            match trial_classes
                .iter_mut()
                .find(|(d, p, _)| *d == dim && *p == profile)
            {
                Some(entry) => entry.2 += count,
                None => trial_classes.push((dim, profile, count)),
            }
        }
        trial_classes.sort();
        if t == 0 {
            classes = trial_classes;
        } else if classes != trial_classes {
            return Err(Error::Inconsistent(format!(
                "generic decomposition of {} differs between trials",
                component.dim_vector()
            )));
        }
    }
    // identify the component of each class by its rank profile and draw
    // fresh samples from it for downstream checks
    let mut summands = Vec::new();
    for (idx, (dim, profile, mult)) in classes.into_iter().enumerate() {
        let matched = enumerate_components(algebra, &dim)?
            .into_iter()
            .find(|c| c.ranks().values() == profile.as_slice());
        let mut samples = Vec::new();
        if let Some(comp) = &matched {
            for k in 0..2u64 {
                let s = SplitMix64::derived(seed, 0x5A_0 + idx as u64 * 7 + k).next_u64();
                samples.push(generic_module(comp, field, s)?);
            }
        }
        summands.push(GenericSummand {
            multiplicity: mult,
            dim,
            rank_profile: profile,
            component: matched,
            samples,
        });
    }
    // cross-class Ext^1 certification, including repeated classes
    for i in 0..summands.len() {
        for j in i..summands.len() {
            if i == j && summands[i].multiplicity < 2 {
                continue;
            }
            let (xs, ys) = (&summands[i].samples, &summands[j].samples);
            let mut min_ext = usize::MAX;
            let mut pairs = 0;
            for (si, x) in xs.iter().enumerate() {
                for (sj, y) in ys.iter().enumerate() {
                    if i == j && si == sj {
                        continue;
                    }
                    min_ext = min_ext.min(ext1_dim(x, y)?);
                    pairs += 1;
                    if min_ext == 0 || pairs >= 6 {
                        break;
                    }
                }
                if min_ext == 0 || pairs >= 6 {
                    break;
                }
            }
            if pairs > 0 && min_ext != 0 {
                return Err(Error::Inconsistent(format!(
                    "summand classes {} and {} have non-vanishing generic Ext^1",
                    summands[i].dim, summands[j].dim
                )));
            }
        }
    }
    // multiplicities must refill the ambient dimension vector
    let mut sum = DimensionVector::zero(component.dim_vector().len());
    for s in &summands {
        sum = sum.add(&s.dim.scaled(s.multiplicity));
    }
    debug_assert_eq!(sum, *component.dim_vector());
    Ok(GenericDecomposition { summands, trials, seed })
}

/// Sampled lower bound for ext^1 between two components: the minimum of
/// Ext^1 over independently drawn generic pairs.
pub fn ext1_generic(
    c: &Component,
    d: &Component,
    field: PrimeField,
    trials: u32,
    seed: u64,
) -> Result<usize> {
    let mut min_ext = usize::MAX;
    for t in 0..trials.max(1) {
        let sx = SplitMix64::derived(seed, 2 * t as u64).next_u64();
        let sy = SplitMix64::derived(seed, 2 * t as u64 + 1).next_u64();
        let x = generic_module(c, field, sx)?;
        let y = generic_module(d, field, sy)?;
        min_ext = min_ext.min(ext1_dim(&x, &y)?);
        if min_ext == 0 {
            break;
        }
    }
    Ok(min_ext)
}
