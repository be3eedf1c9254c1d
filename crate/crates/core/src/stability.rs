//! King stability: exact oracle verdicts in the exhaustive regime,
//! Jordan-Hoelder associated graded modules, and theta-stable decompositions
//! of components.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::BoundQuiverAlgebra;
use crate::components::{
    enumerate_components, generic_decomposition, generic_module, Component,
};
use crate::dimvec::{DimensionVector, Weight};
use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::homalg::{end_dim, is_isomorphic};
use crate::module::ExplicitModule;
use crate::rng::SplitMix64;
use crate::submodule::{
    closure, enumerate_submodules, quotient, restrict, submodule_dimension_vectors,
};

/// Knobs for the sampling pipeline.
#[derive(Debug, Clone, Copy)]
pub struct StabilityParams {
    pub trials: u32,
    pub seed: u64,
    /// Field for generic sampling.
    pub prime: u64,
    /// Field for exhaustive oracle runs (2, 3, or 5).
    pub oracle_prime: u64,
}

impl Default for StabilityParams {
    fn default() -> Self {
        StabilityParams { trials: 5, seed: 0, prime: PrimeField::GENERIC, oracle_prime: 5 }
    }
}

pub fn weight_pairing(theta: &Weight, d: &DimensionVector) -> i64 {
    theta.pairing(d)
}

/// theta(dim M) = 0 and theta(dim M') <= 0 for every submodule (exhaustive
/// regime; exact).
pub fn is_semistable(m: &ExplicitModule, theta: &Weight) -> Result<bool> {
    if theta.pairing(m.dim()) != 0 {
        return Ok(false);
    }
    let vectors = submodule_dimension_vectors(m)?;
    Ok(vectors.iter().all(|v| theta.pairing(v) <= 0))
}

/// Nonzero, theta(dim M) = 0, and theta(dim M') < 0 for every proper
/// nonzero submodule (exhaustive regime; exact).
pub fn is_stable(m: &ExplicitModule, theta: &Weight) -> Result<bool> {
    if m.is_zero_module() || theta.pairing(m.dim()) != 0 {
        return Ok(false);
    }
    let vectors = submodule_dimension_vectors(m)?;
    Ok(vectors
        .iter()
        .filter(|v| !v.is_zero() && **v != *m.dim())
        .all(|v| theta.pairing(v) < 0))
}

/// The associated graded of a Jordan-Hoelder filtration in the semistable
/// category: repeatedly split off a theta-trivial submodule of minimal total
/// dimension (such a submodule is automatically stable) and recurse on the
/// quotient. `tie_seed` shuffles between equally minimal choices; the result
/// is independent of the choice up to isomorphism.
pub fn gr_theta(
    m: &ExplicitModule,
    theta: &Weight,
    tie_seed: u64,
) -> Result<Vec<(ExplicitModule, usize)>> {
    if !is_semistable(m, theta)? {
        return Err(Error::NotSemistable(format!(
            "gr requires a semistable module (dim {})",
            m.dim()
        )));
    }
    gr_theta_impl(m, theta, tie_seed, true)
}

fn gr_theta_impl(
    m: &ExplicitModule,
    theta: &Weight,
    tie_seed: u64,
    guarded: bool,
) -> Result<Vec<(ExplicitModule, usize)>> {
    let mut rng = SplitMix64::derived(tie_seed, 0x62);
    let mut factors: Vec<ExplicitModule> = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero_module() {
        let subs = if guarded {
            enumerate_submodules(&cur)?
        } else {
            crate::submodule::enumerate_submodules_unguarded(&cur)?
        };
        let best_key = subs
            .iter()
            .filter(|s| !s.is_zero() && theta.pairing(&s.dim_vector()) == 0)
            .map(|s| (s.total_dim(), s.dim_vector()))
            .min()
            .expect("semistable module has a theta-trivial submodule (itself)");
        let ties: Vec<_> = subs
            .iter()
            .filter(|s| {
                !s.is_zero()
                    && theta.pairing(&s.dim_vector()) == 0
                    && (s.total_dim(), s.dim_vector()) == best_key
            })
            .collect();
        let pick = ties[rng.below(ties.len() as u64) as usize];
        let (factor, _) = restrict(&cur, pick)?;
        let next = quotient(&cur, pick)?;
        factors.push(factor);
        cur = next;
    }
    // merge isomorphic factors into multiplicities
    let mut out: Vec<(ExplicitModule, usize)> = Vec::new();
    for f in factors {
        let mut merged = false;
        for (rep, mult) in out.iter_mut() {
            if is_isomorphic(&f, rep, tie_seed)? {
                *mult += 1;
                merged = true;
                break;
            }
        }
        if !merged {
            out.push((f, 1));
        }
    }
    out.sort_by_key(|(f, _)| (f.dim().clone(), f.rank_profile()));
    Ok(out)
}

/// One aggregated factor of a theta-stable decomposition.
#[derive(Debug, Clone)]
pub struct StableFactor {
    pub multiplicity: u32,
    pub dim: DimensionVector,
    pub component: Component,
    pub is_orbit_closure: bool,
}

/// How the pipeline arrived at a decomposition.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub seed: u64,
    pub trials: u32,
    pub prime: u64,
    pub oracle_prime: u64,
    pub reseeds: u32,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct StableDecomposition {
    pub factors: Vec<StableFactor>,
    pub provenance: Provenance,
}

impl StableDecomposition {
    pub fn factor_sum(&self) -> DimensionVector {
        let n = self
            .factors
            .first()
            .map(|f| f.dim.len())
            .unwrap_or(0);
        let mut acc = DimensionVector::zero(n);
        for f in &self.factors {
            acc = acc.add(&f.dim.scaled(f.multiplicity));
        }
        acc
    }
}

enum FactorVerdict {
    Stable,
    /// Semistable but not stable; carries an exact-verdict witness for the
    /// Jordan-Hoelder refinement.
    Strict(Option<ExplicitModule>),
    NotSemistable,
}

/// Field used for internal exact stability checks: large enough that random
/// draws rarely degenerate, small enough that subspace enumeration stays
/// cheap.
const INTERNAL_STABILITY_PRIME: u64 = 101;

/// Upper bound on enumeration nodes for one submodule sweep: the product of
/// the subspace counts (Galois numbers) per vertex. Forcing prunes the real
/// count far below this, so the budget can be generous.
fn enumeration_bound(p: u64, dims: &DimensionVector) -> u128 {
    let mut total: u128 = 1;
    for &n in dims.values() {
        let mut count: u128 = 0;
        for k in 0..=n {
            // Gaussian binomial [n choose k]_p
            let mut b: u128 = 1;
            for i in 0..k {
                let num = (p as u128).saturating_pow(n - i) - 1;
                let den = (p as u128).pow(i + 1) - 1;
                b = b.saturating_mul(num) / den;
            }
            count = count.saturating_add(b);
        }
        total = total.saturating_mul(count);
    }
    total
}

/// Weight-independent data of one specialization draw: the endomorphism
/// dimension and the full set of submodule dimension vectors. Weight sweeps
/// re-query the same draws thousands of times, so these are memoized on a
/// structural key; values are pure functions of the key.
#[derive(Clone)]
enum CachedDraw {
    FieldTooSmall,
    ScaleExceeded,
    Entry { end: usize, vectors: Arc<BTreeSet<DimensionVector>> },
}

type DrawKey = (Vec<(usize, usize)>, Vec<(usize, usize)>, Vec<u32>, Vec<u32>, u64, u64);

fn draw_cache() -> &'static Mutex<HashMap<DrawKey, CachedDraw>> {
    static CACHE: OnceLock<Mutex<HashMap<DrawKey, CachedDraw>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn draw_key(component: &Component, p: u64, seed: u64) -> DrawKey {
    let q = component.algebra().quiver();
    let arrows: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.tail, a.head)).collect();
    let gens: Vec<(usize, usize)> = component.algebra().ideal().generators().to_vec();
    (
        arrows,
        gens,
        component.dim_vector().values().to_vec(),
        component.ranks().values().to_vec(),
        p,
        seed,
    )
}

/// Draws a generic specialization of the component and returns its cached
/// weight-independent stability data.
fn cached_specialization_draw(
    component: &Component,
    field: PrimeField,
    seed: u64,
) -> Result<CachedDraw> {
    let key = draw_key(component, field.p(), seed);
    if let Some(hit) = draw_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let value = match generic_module(component, field, seed) {
        Err(Error::FieldTooSmall { .. }) => CachedDraw::FieldTooSmall,
        Err(e) => return Err(e),
        Ok(m) => {
            let end = end_dim(&m)?;
            match crate::submodule::submodule_dimension_vectors_unguarded(&m) {
                Ok(vectors) => CachedDraw::Entry { end, vectors: Arc::new(vectors) },
                Err(Error::OracleScaleExceeded(_)) => CachedDraw::ScaleExceeded,
                Err(e) => return Err(e),
            }
        }
    };
    draw_cache().lock().unwrap().insert(key, value.clone());
    Ok(value)
}

fn verdict_from_vectors(
    dim: &DimensionVector,
    vectors: &BTreeSet<DimensionVector>,
    theta: &Weight,
) -> (bool, bool) {
    if theta.pairing(dim) != 0 {
        return (false, false);
    }
    let semi = vectors.iter().all(|v| theta.pairing(v) <= 0);
    let stable = !dim.is_zero()
        && vectors
            .iter()
            .filter(|v| !v.is_zero() && **v != *dim)
            .all(|v| theta.pairing(v) < 0);
    (semi, stable)
}

/// Sound one-sided screen: theta values of closures of coordinate and a few
/// random vectors. Returns (some proper closure has theta > 0, some proper
/// nonzero closure has theta = 0).
fn destabilizer_screen(
    m: &ExplicitModule,
    theta: &Weight,
    seed: u64,
) -> Result<(bool, bool)> {
    let n_vert = m.dim().len();
    let mut positive = false;
    let mut zero_proper = false;
    let mut rng = SplitMix64::derived(seed, 0xDE57);
    let mut seed_sets: Vec<Vec<Vec<Vec<u64>>>> = Vec::new();
    for v in 0..n_vert {
        let dv = m.dim().get(v) as usize;
        for i in 0..dv {
            let mut seeds: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n_vert];
            let mut e = vec![0u64; dv];
            e[i] = 1;
            seeds[v].push(e);
            seed_sets.push(seeds);
        }
        for _ in 0..2 {
            let mut seeds: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n_vert];
            let vec: Vec<u64> = (0..dv).map(|_| rng.below(m.field().p())).collect();
            if vec.iter().any(|&x| x != 0) {
                seeds[v].push(vec);
                seed_sets.push(seeds);
            }
        }
    }
    for seeds in seed_sets {
        let sub = closure(m, &seeds)?;
        if sub.is_zero() || sub.is_full(m) {
            continue;
        }
        let value = theta.pairing(&sub.dim_vector());
        if value > 0 {
            positive = true;
        } else if value == 0 {
            zero_proper = true;
        }
    }
    Ok((positive, zero_proper))
}

/// Stability of the generic module of a component, decided on freshly drawn
/// specializations with exact capped enumeration. Stability and
/// semistability are open conditions, so one stable draw certifies a stable
/// generic module; draws whose endomorphism-ring dimension disagrees with a
/// reference sample over the large field are discarded as degenerate.
fn component_stability(
    component: &Component,
    theta: &Weight,
    params: &StabilityParams,
    salt: u64,
    notes: &mut Vec<String>,
) -> Result<FactorVerdict> {
    let reference = generic_module(
        component,
        PrimeField::new(params.prime),
        SplitMix64::derived(params.seed, 0xB16 + salt).next_u64(),
    )?;
    let target_end = end_dim(&reference)?;
    const MATCH_TARGET: usize = 4;
    const MAX_DRAWS: u64 = 16;
    // ladder of specialization fields: prefer larger fields (draws are more
    // often generic) when the enumeration bound is affordable; the oracle
    // prime always gets a chance, protected by the node cap
    let mut primes: Vec<u64> = Vec::new();
    if enumeration_bound(INTERNAL_STABILITY_PRIME, component.dim_vector()) <= 300_000 {
        primes.push(INTERNAL_STABILITY_PRIME);
    }
    if enumeration_bound(11, component.dim_vector()) <= 1_000_000 {
        primes.push(11);
    }
    primes.push(params.oracle_prime);
    primes.dedup();
    for (pi, &p) in primes.iter().enumerate() {
        let field = PrimeField::new(p);
        let mut matched = 0usize;
        let mut witness_seed: Option<u64> = None;
        let mut scale_exceeded = false;
        for t in 0..MAX_DRAWS {
            let s = SplitMix64::derived(params.seed, salt * 131 + pi as u64 * 17 + t).next_u64();
            match cached_specialization_draw(component, field, s)? {
                CachedDraw::FieldTooSmall => break,
                CachedDraw::ScaleExceeded => {
                    scale_exceeded = true;
                    break;
                }
                CachedDraw::Entry { end, vectors } => {
                    if end != target_end {
                        continue;
                    }
                    let (semi, stable) =
                        verdict_from_vectors(component.dim_vector(), &vectors, theta);
                    if stable {
                        return Ok(FactorVerdict::Stable);
                    }
                    matched += 1;
                    if semi && witness_seed.is_none() {
                        witness_seed = Some(s);
                    }
                    if matched >= MATCH_TARGET {
                        break;
                    }
                }
            }
        }
        if scale_exceeded {
            continue;
        }
        if matched > 0 {
            return Ok(match witness_seed {
                // rebuild the witness module only when a refinement needs it
                Some(s) => FactorVerdict::Strict(Some(generic_module(component, field, s)?)),
                None => FactorVerdict::NotSemistable,
            });
        }
    }
    // enumeration out of reach at every prime: sound one-sided screens on
    // the large-field reference sample
    let (positive, zero_proper) = destabilizer_screen(&reference, theta, params.seed ^ salt)?;
    if positive {
        return Ok(FactorVerdict::NotSemistable);
    }
    if zero_proper || target_end > 1 {
        return Ok(FactorVerdict::Strict(None));
    }
    notes.push(format!(
        "factor {}: stability accepted from destabilizer screen + Schur check only",
        component.dim_vector()
    ));
    Ok(FactorVerdict::Stable)
}

/// The component of mod(A, d) carrying a summand with the given rank
/// profile: the exact match when the profile is maximal, otherwise the
/// unique component dominating it.
fn match_component(
    algebra: &Arc<BoundQuiverAlgebra>,
    d: &DimensionVector,
    profile: &[u32],
) -> Result<Component> {
    let comps = enumerate_components(algebra, d)?;
    if let Some(c) = comps.iter().find(|c| c.ranks().values() == profile) {
        return Ok(c.clone());
    }
    let dominating: Vec<&Component> = comps
        .iter()
        .filter(|c| {
            c.ranks()
                .values()
                .iter()
                .zip(profile)
                .all(|(&have, &want)| have >= want)
        })
        .collect();
    if dominating.len() == 1 {
        return Ok(dominating[0].clone());
    }
    Err(Error::Inconsistent(format!(
        "rank profile of a factor with dimension {d} does not identify a component"
    )))
}

fn orbit_closure_flag(component: &Component) -> Result<bool> {
    match component.gl_dimension() as i64 - component.dimension() as i64 {
        1 => Ok(true),
        0 => Ok(false),
        gap => Err(Error::Inconsistent(format!(
            "component {} with ranks {:?} violates the orbit dichotomy (gap {gap})",
            component.dim_vector(),
            component.ranks().values()
        ))),
    }
}

/// theta-stable decomposition of a semistable component: stable factors with
/// multiplicities, every strictly semistable generic summand refined through
/// an oracle Jordan-Hoelder filtration. Retries with derived seeds when a
/// Monte Carlo trial set is internally inconsistent.
pub fn stable_decomposition(
    component: &Component,
    theta: &Weight,
    params: &StabilityParams,
) -> Result<StableDecomposition> {
    let d = component.dim_vector().clone();
    if theta.len() != d.len() {
        return Err(Error::DimensionMismatch(
            "weight and dimension vector have different vertex sets".into(),
        ));
    }
    if theta.pairing(&d) != 0 {
        return Err(Error::NotSemistable(format!(
            "theta{theta} does not vanish on {d}"
        )));
    }
    const RESEEDS: u32 = 3;
    let mut last = None;
    for reseed in 0..RESEEDS {
        let seed = if reseed == 0 {
            params.seed
        } else {
            SplitMix64::derived(params.seed, 0xFADE + reseed as u64).next_u64()
        };
        match decomposition_attempt(component, theta, params, seed, reseed) {
            Err(Error::Inconsistent(msg)) => last = Some(Error::Inconsistent(msg)),
            other => return other,
        }
    }
    Err(last.unwrap())
}

fn decomposition_attempt(
    component: &Component,
    theta: &Weight,
    params: &StabilityParams,
    seed: u64,
    reseed: u32,
) -> Result<StableDecomposition> {
    let algebra = component.algebra().clone();
    let d = component.dim_vector().clone();
    let mut notes = Vec::new();
    let mut records: Vec<StableFactor> = Vec::new();
    if !d.is_zero() {
        let field = PrimeField::new(params.prime);
        let gen = generic_decomposition(component, field, params.trials, seed)?;
        for (idx, entry) in gen.summands.iter().enumerate() {
            if theta.pairing(&entry.dim) != 0 {
                return Err(Error::NotSemistable(format!(
                    "generic summand {} pairs to {} with theta",
                    entry.dim,
                    theta.pairing(&entry.dim)
                )));
            }
            let comp = entry.component.clone().ok_or_else(|| {
                Error::Inconsistent(format!(
                    "summand {} has a non-maximal rank profile",
                    entry.dim
                ))
            })?;
            let local = StabilityParams { seed, ..*params };
            let verdict = component_stability(&comp, theta, &local, idx as u64, &mut notes)?;
            match verdict {
                FactorVerdict::Stable => {
                    push_factor(&mut records, entry.multiplicity, comp)?;
                }
                FactorVerdict::NotSemistable => {
                    return Err(Error::NotSemistable(format!(
                        "generic summand {} of component {:?} is unstable",
                        entry.dim,
                        component.ranks().values()
                    )));
                }
                FactorVerdict::Strict(witness) => {
                    let w = witness.ok_or_else(|| {
                        Error::OracleScaleExceeded(format!(
                            "strictly semistable factor {} is beyond the oracle regime",
                            entry.dim
                        ))
                    })?;
                    let grs = gr_theta_impl(
                        &w,
                        theta,
                        SplitMix64::derived(seed, 0x9A + idx as u64).next_u64(),
                        false,
                    )?;
                    notes.push(format!(
                        "factor {} refined through an exact Jordan-Hoelder filtration over F_{}",
                        entry.dim,
                        w.field().p()
                    ));
                    for (factor_mod, gmult) in grs {
                        let profile: Vec<u32> =
                            factor_mod.rank_profile().iter().map(|&r| r as u32).collect();
                        let fcomp = match_component(&algebra, factor_mod.dim(), &profile)?;
                        push_factor(
                            &mut records,
                            entry.multiplicity * gmult as u32,
                            fcomp,
                        )?;
                    }
                }
            }
        }
    }
    records.sort_by(|a, b| {
        (&a.dim, a.component.ranks()).cmp(&(&b.dim, b.component.ranks()))
    });
    // non-orbit factors must carry pairwise distinct dimension vectors
    for i in 0..records.len() {
        for j in (i + 1)..records.len() {
            if !records[i].is_orbit_closure
                && !records[j].is_orbit_closure
                && records[i].dim == records[j].dim
            {
                return Err(Error::Inconsistent(format!(
                    "two distinct stable non-orbit components share dimension {}",
                    records[i].dim
                )));
            }
        }
    }
    let dec = StableDecomposition {
        factors: records,
        provenance: Provenance {
            seed: params.seed,
            trials: params.trials,
            prime: params.prime,
            oracle_prime: params.oracle_prime,
            reseeds: reseed,
            notes,
        },
    };
    if !d.is_zero() {
        debug_assert_eq!(dec.factor_sum(), d);
        for f in &dec.factors {
            debug_assert_eq!(theta.pairing(&f.dim), 0);
        }
    }
    Ok(dec)
}

fn push_factor(records: &mut Vec<StableFactor>, mult: u32, component: Component) -> Result<()> {
    let orbit = orbit_closure_flag(&component)?;
    let dim = component.dim_vector().clone();
    for r in records.iter_mut() {
        if r.dim == dim && r.component.ranks() == component.ranks() {
            r.multiplicity += mult;
            return Ok(());
        }
    }
    records.push(StableFactor { multiplicity: mult, dim, component, is_orbit_closure: orbit });
    Ok(())
}

/// Does mod(A, d) contain a theta-semistable module? Decided per component
/// on sampled generic modules with exact capped enumeration, falling back to
/// the one-sided screen when enumeration is out of reach.
pub fn is_theta_semistable_dimvec(
    algebra: &Arc<BoundQuiverAlgebra>,
    d: &DimensionVector,
    theta: &Weight,
    params: &StabilityParams,
) -> Result<bool> {
    if theta.pairing(d) != 0 {
        return Ok(false);
    }
    if d.is_zero() {
        return Ok(true);
    }
    let mut notes = Vec::new();
    for (idx, comp) in enumerate_components(algebra, d)?.iter().enumerate() {
        match component_stability(comp, theta, params, 0xD1 + idx as u64, &mut notes)? {
            FactorVerdict::Stable | FactorVerdict::Strict(_) => return Ok(true),
            FactorVerdict::NotSemistable => {}
        }
    }
    Ok(false)
}
