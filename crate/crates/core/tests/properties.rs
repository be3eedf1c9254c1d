//! Crate-wide invariants: bilinearity, soundness of the coordinate fast
//! path, Krull-Schmidt round trips, and the projective Hom property.

mod common;

use common::*;
use proptest::prelude::*;
use quiver_moduli::homalg::{decompose, end_dim, hom_dim, is_isomorphic};
use quiver_moduli::module::{enumerate_string_walks, projective, random_module, string_module};
use quiver_moduli::submodule::{
    coordinate_submodule_dimension_vectors, submodule_dimension_vectors,
};
use quiver_moduli::{catalog, DimensionVector};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_form_is_bilinear_everywhere(
        algebra_idx in 0usize..6,
        d1 in proptest::collection::vec(0u32..4, 6),
        d2 in proptest::collection::vec(0u32..4, 6),
        e1 in proptest::collection::vec(0u32..4, 6),
    ) {
        let names = ["kronecker", "a3-relation", "a4-chain", "kronecker-tail", "ringel5", "y-string"];
        let a = alg(names[algebra_idx]);
        let n = a.quiver().vertex_count();
        let d1 = DimensionVector::new(d1[..n].to_vec());
        let d2 = DimensionVector::new(d2[..n].to_vec());
        let e1 = DimensionVector::new(e1[..n].to_vec());
        let sum = d1.add(&d2);
        prop_assert_eq!(
            a.euler_form(&sum, &e1).unwrap(),
            a.euler_form(&d1, &e1).unwrap() + a.euler_form(&d2, &e1).unwrap()
        );
        prop_assert_eq!(
            a.euler_form(&e1, &sum).unwrap(),
            a.euler_form(&e1, &d1).unwrap() + a.euler_form(&e1, &d2).unwrap()
        );
    }

    #[test]
    fn coordinate_fast_path_is_sound_on_random_strings(
        algebra_idx in 0usize..3,
        walk_idx in 0usize..200,
        p_idx in 0usize..2,
    ) {
        let names = ["kronecker", "a3-relation", "kronecker-tail"];
        let a = alg(names[algebra_idx]);
        let walks = enumerate_string_walks(&a, 4);
        let (start, walk) = &walks[walk_idx % walks.len()];
        let p = [2u64, 3][p_idx];
        let m = string_module(&a, *start, walk, f(p)).unwrap();
        if m.dim().total() > 8 {
            return Ok(());
        }
        let fast = coordinate_submodule_dimension_vectors(&m).unwrap();
        let oracle = submodule_dimension_vectors(&m).unwrap();
        prop_assert!(fast.is_subset(&oracle));
    }
}

#[test]
fn projective_hom_property_100_random_modules_per_algebra() {
    for name in catalog::names() {
        let a = alg(name);
        if !a.classes().acyclic {
            continue;
        }
        let n_vert = a.quiver().vertex_count();
        for seed in 0..100u64 {
            let dims: Vec<u32> = (0..n_vert)
                .map(|v| ((seed + v as u64 * 3) % 3) as u32)
                .collect();
            let n = random_module(&a, &d(&dims), f(10007), seed).unwrap();
            for x in 0..n_vert {
                let p = projective(&a, x, f(10007)).unwrap();
                assert_eq!(
                    hom_dim(&p.module, &n).unwrap() as u32,
                    n.dim().get(x),
                    "{name} x={x} seed={seed}"
                );
            }
        }
    }
}

#[test]
fn krull_schmidt_round_trip_200_modules() {
    let mut count = 0u32;
    'outer: for name in ["kronecker", "a2", "a3-relation", "a4-chain", "kronecker-tail", "ringel5", "y-string", "d4tilde"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        for seed in 0..40u64 {
            let dims: Vec<u32> = (0..n_vert)
                .map(|v| ((seed + v as u64) % 3) as u32)
                .collect();
            let dv = d(&dims);
            if dv.total() == 0 || dv.total() > 6 {
                continue;
            }
            let m = random_module(&a, &dv, f(10007), seed).unwrap();
            let parts = decompose(&m, seed).unwrap();
            // non-isomorphic summand representatives
            for i in 0..parts.len() {
                for j in (i + 1)..parts.len() {
                    assert!(!is_isomorphic(&parts[i].0, &parts[j].0, seed).unwrap());
                }
            }
            // the direct sum of the parts is isomorphic to the module
            let mut resum: Option<quiver_moduli::ExplicitModule> = None;
            for (p, mult) in &parts {
                for _ in 0..*mult {
                    resum = Some(match resum {
                        None => p.clone(),
                        Some(acc) => acc.direct_sum(p),
                    });
                }
            }
            let resum = resum.unwrap();
            assert_eq!(resum.dim(), m.dim());
            assert_eq!(hom_dim(&resum, &m).unwrap(), end_dim(&m).unwrap());
            assert_eq!(hom_dim(&m, &resum).unwrap(), end_dim(&resum).unwrap());
            assert!(is_isomorphic(&resum, &m, seed).unwrap(), "{name} seed={seed}");
            count += 1;
            if count >= 200 {
                break 'outer;
            }
        }
    }
    assert!(count >= 200, "only {count} modules exercised");
}

#[test]
fn submodule_vectors_admit_joins() {
    // for any two submodule vectors, the sum of the submodules dominates
    // their pointwise max, and its vector is again in the set
    let a = alg("a3-relation");
    for seed in 0..6u64 {
        let m = random_module(&a, &d(&[1, 2, 1]), f(3), seed).unwrap();
        let subs = quiver_moduli::enumerate_submodules(&m).unwrap();
        let vectors = submodule_dimension_vectors(&m).unwrap();
        for x in subs.iter().take(12) {
            for y in subs.iter().take(12) {
                let join: Vec<quiver_moduli::Subspace> = x
                    .spaces()
                    .iter()
                    .zip(y.spaces())
                    .map(|(sx, sy)| sx.sum(sy))
                    .collect();
                let join_sub = quiver_moduli::Submodule::new(&m, join).unwrap();
                let jv = join_sub.dim_vector();
                assert!(vectors.contains(&jv));
                for v in 0..jv.len() {
                    assert!(jv.get(v) >= x.dim_vector().get(v).max(y.dim_vector().get(v)));
                }
            }
        }
    }
}

#[test]
fn euler_form_matches_ext_sums_exhaustively_on_small_algebras() {
    // all d, e with entries <= 2, one generic sample per component of each
    for name in ["kronecker", "a2", "a3-relation"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        let grid: Vec<Vec<u32>> = (0..3u32.pow(n_vert as u32))
            .map(|mut code| {
                (0..n_vert)
                    .map(|_| {
                        let v = code % 3;
                        code /= 3;
                        v
                    })
                    .collect()
            })
            .collect();
        for dm in &grid {
            for de in &grid {
                let dmv = d(dm);
                let dev = d(de);
                let expected = a.euler_form(&dmv, &dev).unwrap();
                for cm in quiver_moduli::enumerate_components(&a, &dmv).unwrap() {
                    for cn in quiver_moduli::enumerate_components(&a, &dev).unwrap() {
                        let m = quiver_moduli::generic_module(&cm, f(10007), 3).unwrap();
                        let n = quiver_moduli::generic_module(&cn, f(10007), 4).unwrap();
                        let dims = quiver_moduli::ext_dims(&m, &n).unwrap();
                        let alternating: i64 = dims
                            .iter()
                            .enumerate()
                            .map(|(l, &x)| if l % 2 == 0 { x as i64 } else { -(x as i64) })
                            .sum();
                        assert_eq!(alternating, expected, "{name} d={dm:?} e={de:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn hom_dimensions_agree_across_two_primes_on_fixtures() {
    // parallel constructions over F_5 and F_10007 give the same Hom/End data
    for name in ["kronecker", "a3-relation", "ringel5"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        for seed in 0..6u64 {
            let dims: Vec<u32> = (0..n_vert).map(|v| 1 + ((seed + v as u64) % 2) as u32).collect();
            let ranks = quiver_moduli::reference::valid_rank_sequences(&a, &d(&dims));
            let pick = ranks[seed as usize % ranks.len()].clone();
            let m5 = ranked_module(&a, &dims, &pick, 5, seed);
            let mbig = ranked_module(&a, &dims, &pick, 10007, seed);
            if let (Ok(m5), Ok(mbig)) = (m5, mbig) {
                assert_eq!(end_dim(&m5).unwrap(), end_dim(&mbig).unwrap(), "{name} {dims:?} {pick:?}");
            }
        }
    }
}
