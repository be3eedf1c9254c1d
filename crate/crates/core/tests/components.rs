//! Component enumeration, dimensions, defects, generic modules, and generic
//! decompositions.

mod common;

use common::*;
use quiver_moduli::components::{
    enumerate_components, generic_decomposition, generic_module, tangent_dimension, Component,
    RankSequence,
};
use quiver_moduli::homalg::end_dim;
use quiver_moduli::reference::maximal_rank_sequences_naive;
use quiver_moduli::{catalog, Error};

fn rank_lists(comps: &[Component]) -> Vec<Vec<u32>> {
    comps.iter().map(|c| c.ranks().values().to_vec()).collect()
}

#[test]
fn ringel5_ones_has_two_components() {
    let a = alg("ringel5");
    let comps = enumerate_components(&a, &d(&[1, 1, 1, 1, 1])).unwrap();
    // arrows: alpha, beta, epsilon, gamma, delta
    assert_eq!(
        rank_lists(&comps),
        vec![vec![0, 1, 1, 1, 1], vec![1, 0, 1, 1, 1]]
    );
}

#[test]
fn kronecker_is_irreducible() {
    let a = alg("kronecker");
    for dv in [[1, 1], [2, 2], [2, 3]] {
        let comps = enumerate_components(&a, &d(&dv)).unwrap();
        assert_eq!(comps.len(), 1);
        let m = dv[0].min(dv[1]);
        assert_eq!(comps[0].ranks().values(), &[m, m]);
    }
}

#[test]
fn a3_relation_1_2_1_is_irreducible() {
    let a = alg("a3-relation");
    let comps = enumerate_components(&a, &d(&[1, 2, 1])).unwrap();
    assert_eq!(rank_lists(&comps), vec![vec![1, 1]]);
}

#[test]
fn a4_chain_components_match_hand_computation() {
    // caps r_c + r_b <= d(3), r_b + r_a <= d(2)
    let a = alg("a4-chain");
    let comps = enumerate_components(&a, &d(&[1, 1, 1, 1])).unwrap();
    // arrows: a, b, c; maximal chain sequences for [c, b, a]
    assert_eq!(rank_lists(&comps), vec![vec![0, 1, 0], vec![1, 0, 1]]);
}

#[test]
fn square_has_two_chains_and_product_components() {
    let a = alg("square");
    assert!(a.classes().gentle);
    let chains = a.chains().unwrap();
    assert_eq!(chains.len(), 2);
    let coloring = a.find_coloring().unwrap();
    assert_eq!(coloring.color_count(), 2);
    // both chain caps bind independently: a 2 x 2 product of maxima
    let comps = enumerate_components(&a, &d(&[1, 1, 1, 1])).unwrap();
    assert_eq!(
        rank_lists(&comps),
        vec![
            vec![0, 0, 1, 1],
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 1],
            vec![1, 1, 0, 0],
        ]
    );
}

#[test]
fn enumeration_matches_brute_force_on_the_catalog() {
    for name in catalog::names() {
        let a = alg(name);
        if !a.classes().disjoint_chain || !a.classes().acyclic {
            continue;
        }
        let n_vert = a.quiver().vertex_count();
        for mask in 0..3u32.pow(n_vert.min(4) as u32) {
            let mut dims = Vec::with_capacity(n_vert);
            let mut m = mask;
            for _ in 0..n_vert {
                dims.push(m % 3);
                m /= 3;
            }
            let dv = d(&dims);
            let fast = enumerate_components(&a, &dv).unwrap();
            let naive = maximal_rank_sequences_naive(&a, &dv);
            assert_eq!(rank_lists(&fast), naive, "{name} d={dims:?}");
        }
    }
}

#[test]
fn enumeration_rejects_non_disjoint_chain_algebras() {
    let a = alg("y-string");
    assert!(matches!(
        enumerate_components(&a, &d(&[1, 1, 1, 1])),
        Err(Error::UnsupportedClass(_))
    ));
}

#[test]
fn component_dimensions() {
    let kron = alg("kronecker");
    let c = &enumerate_components(&kron, &d(&[1, 1])).unwrap()[0];
    assert_eq!(c.dimension(), 2);

    let a3 = alg("a3-relation");
    let comps = enumerate_components(&a3, &d(&[1, 1, 1])).unwrap();
    for c in &comps {
        assert_eq!(c.dimension(), 1, "ranks {:?}", c.ranks().values());
    }

    // zero ranks on a chain contribute nothing
    let c0 = Component::new(a3.clone(), d(&[1, 1, 1]), RankSequence::new(vec![0, 0])).unwrap();
    assert_eq!(c0.dimension(), 0);
}

#[test]
fn dimension_formula_certified_by_tangent_spaces() {
    for name in ["kronecker", "a3-relation", "a4-chain", "kronecker-tail", "ringel5"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        for seed in 0..6u64 {
            let dims: Vec<u32> = (0..n_vert)
                .map(|v| 1 + ((seed as usize + v) % 3) as u32)
                .collect();
            let dv = d(&dims);
            for comp in enumerate_components(&a, &dv).unwrap() {
                let m = generic_module(&comp, f(10007), seed).unwrap();
                assert_eq!(
                    comp.dimension(),
                    tangent_dimension(&comp, &m),
                    "{name} d={dims:?} ranks={:?}",
                    comp.ranks().values()
                );
            }
        }
    }
}

#[test]
fn dimension_certified_by_point_counts_on_a3() {
    // C(A, (1,1,1), r) with r = (1,0): the variety {M(b) = 0} is a line
    let a = alg("a3-relation");
    let comps = enumerate_components(&a, &d(&[1, 1, 1])).unwrap();
    for q in [2u64, 3, 5] {
        for comp in &comps {
            // count points of {(x_a, x_b) : x_a x_b = 0, rank bounds}
            let mut count = 0u64;
            for xa in 0..q {
                for xb in 0..q {
                    if (xa * xb) % q != 0 {
                        continue;
                    }
                    let ra = u32::from(xa != 0);
                    let rb = u32::from(xb != 0);
                    if ra <= comp.ranks().get(0) && rb <= comp.ranks().get(1) {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, q, "q={q}: a dimension-1 cone has q points");
        }
    }
}

#[test]
fn string_defects() {
    let kron = alg("kronecker");
    let c = &enumerate_components(&kron, &d(&[1, 1])).unwrap()[0];
    assert_eq!(c.string_defect().unwrap(), 0);
    assert!(c.is_regular().unwrap());

    let a3 = alg("a3-relation");
    for c in &enumerate_components(&a3, &d(&[1, 1, 1])).unwrap() {
        assert_eq!(c.string_defect().unwrap(), 2);
        assert!(!c.is_regular().unwrap());
    }

    // a simple is a single string
    let c = &enumerate_components(&a3, &d(&[1, 0, 0])).unwrap()[0];
    assert_eq!(c.string_defect().unwrap(), 1);

    // defect is gated on the gentle class
    let r5 = alg("ringel5");
    let c = &enumerate_components(&r5, &d(&[1, 1, 1, 1, 1])).unwrap()[0];
    assert!(matches!(c.string_defect(), Err(Error::UnsupportedClass(_))));
}

#[test]
fn defect_counts_string_summands_of_the_generic_module() {
    for name in ["kronecker", "a3-relation", "kronecker-tail"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        for seed in 0..4u64 {
            let dims: Vec<u32> = (0..n_vert)
                .map(|v| ((seed as usize + v) % 3) as u32)
                .collect();
            let dv = d(&dims);
            for comp in enumerate_components(&a, &dv).unwrap() {
                let m = generic_module(&comp, f(10007), seed).unwrap();
                let parts = quiver_moduli::decompose(&m, seed).unwrap();
                let mut strings = 0u32;
                for (p, mult) in &parts {
                    let total = p.dim().total();
                    let ranks: u32 = p.rank_profile().iter().map(|&r| r as u32).sum();
                    assert!(total == ranks || total == ranks + 1, "{name}: summand defect 0 or 1");
                    strings += (total - ranks) * *mult as u32;
                }
                assert_eq!(strings, comp.string_defect().unwrap(), "{name} d={dims:?}");
            }
        }
    }
}

#[test]
fn generic_module_hits_exact_ranks_many_seeds() {
    let a = alg("ringel5");
    let dv = d(&[1, 1, 2, 1, 1]);
    for comp in enumerate_components(&a, &dv).unwrap() {
        for seed in 0..50u64 {
            let m = generic_module(&comp, f(10007), seed).unwrap();
            let profile: Vec<u32> = m.rank_profile().iter().map(|&r| r as u32).collect();
            assert_eq!(profile, comp.ranks().values());
        }
    }
}

#[test]
fn generic_module_small_field_and_field_too_small() {
    let a = alg("kronecker");
    let comp = &enumerate_components(&a, &d(&[1, 1])).unwrap()[0];
    let m = generic_module(comp, f(2), 0).unwrap();
    assert_eq!(m.rank_profile(), vec![1, 1]);
}

#[test]
fn generic_module_ranks_on_ringel5_alpha_zero_component() {
    let a = alg("ringel5");
    let dv = d(&[1, 1, 2, 1, 1]);
    let comps = enumerate_components(&a, &dv).unwrap();
    let alpha = a.quiver().arrow_id("alpha").unwrap();
    let beta = a.quiver().arrow_id("beta").unwrap();
    let c = comps.iter().find(|c| c.ranks().get(alpha) == 0).unwrap();
    let m = generic_module(c, f(10007), 7).unwrap();
    assert!(m.matrix(alpha).is_zero());
    assert_eq!(m.matrix(beta).rank(), 1);
}

#[test]
fn a3_relation_generic_module_kills_the_composite() {
    let a = alg("a3-relation");
    let m = ranked_module(&a, &[1, 2, 1], &[1, 1], 10007, 5).unwrap();
    let ma = m.matrix(a.quiver().arrow_id("a").unwrap());
    let mb = m.matrix(a.quiver().arrow_id("b").unwrap());
    assert!(ma.mul(mb).is_zero());
    assert_eq!(ma.rank(), 1);
    assert_eq!(mb.rank(), 1);
}

#[test]
fn generic_decomposition_examples() {
    // a3-relation (1,1,1), ranks (1,0): string (2 -> 1) plus the simple S_3
    let a3 = alg("a3-relation");
    let comps = enumerate_components(&a3, &d(&[1, 1, 1])).unwrap();
    let c = comps
        .iter()
        .find(|c| c.ranks().values() == [1, 0])
        .unwrap();
    let gen = generic_decomposition(c, f(10007), 5, 1).unwrap();
    let classes: Vec<(Vec<u32>, Vec<u32>, u32)> = gen
        .summands
        .iter()
        .map(|s| (s.dim.values().to_vec(), s.rank_profile.clone(), s.multiplicity))
        .collect();
    assert_eq!(
        classes,
        vec![
            (vec![0, 0, 1], vec![0, 0], 1), // S_3
            (vec![1, 1, 0], vec![1, 0], 1), // the string 2 -> 1
        ]
    );

    // a simple dimension vector decomposes as itself
    let c = &enumerate_components(&a3, &d(&[0, 0, 1])).unwrap()[0];
    let gen = generic_decomposition(c, f(10007), 3, 0).unwrap();
    assert_eq!(gen.summands.len(), 1);
    assert_eq!(gen.summands[0].multiplicity, 1);
}

#[test]
fn generic_decomposition_multiplicities_refill_the_dimension() {
    for name in ["kronecker", "a3-relation", "ringel5", "kronecker-tail"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        for seed in 0..3u64 {
            let dims: Vec<u32> = (0..n_vert)
                .map(|v| 1 + ((seed as usize + 2 * v) % 2) as u32)
                .collect();
            let dv = d(&dims);
            for comp in enumerate_components(&a, &dv).unwrap() {
                let gen = generic_decomposition(&comp, f(10007), 3, seed).unwrap();
                let mut sum = d(&vec![0; n_vert]);
                for s in &gen.summands {
                    sum = sum.add(&s.dim.scaled(s.multiplicity));
                }
                assert_eq!(sum, dv, "{name} d={dims:?}");
            }
        }
    }
}

#[test]
fn schur_components_obey_the_orbit_dichotomy() {
    // dim GL - dim C lands in {0, 1} for every summand component whose
    // generic module is Schur; non-Schur indecomposable summands (larger
    // endomorphism rings) are exempt and do occur, e.g. over ringel5
    let mut schur_checked = 0;
    let mut non_schur_seen = 0;
    for name in ["kronecker", "a3-relation", "kronecker-tail", "ringel5"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        for seed in 0..3u64 {
            let dims: Vec<u32> = (0..n_vert)
                .map(|v| 1 + ((seed as usize + v) % 2) as u32)
                .collect();
            for comp in enumerate_components(&a, &d(&dims)).unwrap() {
                let gen = generic_decomposition(&comp, f(10007), 3, seed).unwrap();
                for s in &gen.summands {
                    let sc = s.component.as_ref().unwrap();
                    let gap = sc.gl_dimension() as i64 - sc.dimension() as i64;
                    if end_dim(&s.samples[0]).unwrap() == 1 {
                        schur_checked += 1;
                        assert!(
                            gap == 0 || gap == 1,
                            "{name}: Schur summand {} gap {gap}",
                            s.dim
                        );
                    } else {
                        non_schur_seen += 1;
                        assert!(gap >= 1, "{name}: non-Schur orbit summand {}", s.dim);
                    }
                }
            }
        }
    }
    assert!(schur_checked > 10);
    assert!(non_schur_seen > 0, "the exempt case should actually occur");
}

#[test]
fn ext1_generic_on_orbit_components() {
    // orbits of simples over a single arrow: one extension direction
    let a2 = alg("a2");
    let s2 = &enumerate_components(&a2, &d(&[0, 1])).unwrap()[0];
    let s1 = &enumerate_components(&a2, &d(&[1, 0])).unwrap()[0];
    assert_eq!(quiver_moduli::ext1_generic(s2, s1, f(10007), 3, 0).unwrap(), 1);
    assert_eq!(quiver_moduli::ext1_generic(s1, s2, f(10007), 3, 0).unwrap(), 0);
    // projectives never receive extensions
    let p2 = &enumerate_components(&a2, &d(&[1, 1])).unwrap()[0];
    assert_eq!(quiver_moduli::ext1_generic(&p2.clone(), p2, f(10007), 3, 0).unwrap(), 0);
}

#[test]
fn distinct_band_samples_have_no_homs_between_them() {
    let a = alg("kronecker");
    let band = &enumerate_components(&a, &d(&[1, 1])).unwrap()[0];
    let x = generic_module(band, f(10007), 1).unwrap();
    let y = generic_module(band, f(10007), 2).unwrap();
    assert!(!quiver_moduli::is_isomorphic(&x, &y, 0).unwrap());
    assert_eq!(quiver_moduli::hom_dim(&x, &y).unwrap(), 0);
    assert_eq!(quiver_moduli::ext1_generic(band, band, f(10007), 5, 0).unwrap(), 0);
}

#[test]
fn enumerated_components_are_maximal() {
    for name in ["kronecker", "a3-relation", "a4-chain", "ringel5"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        for seed in 0..4u64 {
            let dims: Vec<u32> = (0..n_vert).map(|v| ((seed + v as u64) % 4) as u32).collect();
            for comp in enumerate_components(&a, &d(&dims)).unwrap() {
                assert!(comp.is_maximal(), "{name} d={dims:?}");
            }
        }
    }
}

#[test]
fn regular_components_have_vanishing_euler_and_generic_ext() {
    for name in ["kronecker", "kronecker-tail"] {
        let a = alg(name);
        let n_vert = a.quiver().vertex_count();
        for mask in 0..2u32.pow(n_vert as u32) {
            let dims: Vec<u32> = (0..n_vert).map(|v| (mask >> v) & 1).collect();
            let dv = d(&dims);
            if dv.is_zero() {
                continue;
            }
            for comp in enumerate_components(&a, &dv).unwrap() {
                if !comp.is_regular().unwrap() {
                    continue;
                }
                let gen = generic_decomposition(&comp, f(10007), 3, 9).unwrap();
                if gen.summands.len() != 1 || gen.summands[0].multiplicity != 1 {
                    continue; // not an indecomposable component
                }
                assert_eq!(a.euler_form(&dv, &dv).unwrap(), 0, "{name} d={dims:?}");
                let e = quiver_moduli::ext1_generic(&comp, &comp, f(10007), 10, 4).unwrap();
                assert_eq!(e, 0, "{name} d={dims:?}");
            }
        }
    }
}
