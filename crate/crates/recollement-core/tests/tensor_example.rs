//! End-to-end checks on the 18-dimensional tensor-product algebra: the
//! cyclic radical-square-zero algebra on three vertices tensored with the
//! path algebra of a single arrow. Its corner and quotient at the unprimed
//! vertices are both isomorphic to the cyclic factor, and all three
//! exactness bits of the induced recollement hold.

use std::collections::BTreeMap;
use std::sync::Arc;

use recollement_core::algebra::{
    build_from_presentation, cyclic3_rad_square_zero, ideal_basis, tensor, Algebra, ArrowDecl,
    QuiverPresentation, RelationTerm,
};
use recollement_core::field::Field;
use recollement_core::itcert::{
    corollary_pipeline, default_panel, oracle_syzygy_finite, transform_main_1, transform_main_2,
    Caps,
};
use recollement_core::modcat::{decomp, is_projective, simple, syzygy, Module};
use recollement_core::recollement::{build, exactness_report, relative_gldim};

/// The double-cycle presentation: unprimed vertices carry the arrows `a_t`,
/// primed ones the arrows `b_t`, and `c_t` connects `t'` to `t`; squares
/// commute and both cycles have radical square zero.
fn double_cycle() -> QuiverPresentation {
    let vertices = vec![
        "1".to_string(),
        "2".to_string(),
        "3".to_string(),
        "1p".to_string(),
        "2p".to_string(),
        "3p".to_string(),
    ];
    let mut arrows = Vec::new();
    for t in 0..3 {
        arrows.push(ArrowDecl {
            name: format!("a{}", t + 1),
            source: t,
            target: (t + 1) % 3,
        });
    }
    for t in 0..3 {
        arrows.push(ArrowDecl {
            name: format!("b{}", t + 1),
            source: 3 + t,
            target: 3 + (t + 1) % 3,
        });
    }
    for t in 0..3 {
        arrows.push(ArrowDecl {
            name: format!("c{}", t + 1),
            source: 3 + t,
            target: t,
        });
    }
    // arrow indices: a_t = t, b_t = 3 + t, c_t = 6 + t
    let mut relations = Vec::new();
    for t in 0..3 {
        relations.push(vec![RelationTerm {
            coeff: 1,
            path: vec![t, (t + 1) % 3],
        }]);
        relations.push(vec![RelationTerm {
            coeff: 1,
            path: vec![3 + t, 3 + (t + 1) % 3],
        }]);
        relations.push(vec![
            RelationTerm {
                coeff: 1,
                path: vec![3 + t, 6 + (t + 1) % 3],
            },
            RelationTerm {
                coeff: Field::default().modulus() - 1,
                path: vec![6 + t, t],
            },
        ]);
    }
    QuiverPresentation {
        vertices,
        arrows,
        relations,
        nilpotency_bound: 3,
    }
}

fn lambda() -> Arc<Algebra> {
    build_from_presentation(&double_cycle(), Field::default()).unwrap()
}

fn unprimed() -> Vec<String> {
    vec!["1".into(), "2".into(), "3".into()]
}

#[test]
fn dimensions_of_the_derived_algebras() {
    let l = lambda();
    assert_eq!(l.dim, 18);
    let rec = build(&l, &unprimed()).unwrap();
    assert_eq!(rec.corner.dim, 6);
    assert_eq!(rec.quotient_alg.dim, 6);
    assert_eq!(ideal_basis(&l, &unprimed()).unwrap().rows, 12);
    assert_eq!(rec.e_lambda_rows.rows, 6);
    assert_eq!(rec.lambda_e_rows.rows, 12);
}

#[test]
fn tensor_construction_matches_the_presentation() {
    let f = Field::default();
    let cyc = build_from_presentation(&cyclic3_rad_square_zero(), f).unwrap();
    let arrow = build_from_presentation(
        &QuiverPresentation {
            vertices: vec!["u".into(), "v".into()],
            arrows: vec![ArrowDecl {
                name: "g".into(),
                source: 1, // primed side
                target: 0,
            }],
            relations: vec![],
            nilpotency_bound: 2,
        },
        f,
    )
    .unwrap();
    let prod = tensor(&cyc, &arrow).unwrap();
    let l = lambda();
    assert_eq!(prod.dim, l.dim);

    // explicit basis bijection: (p ⊗ q) ↦ path class of the double cycle
    let mut to_label: BTreeMap<String, String> = BTreeMap::new();
    for t in 1..=3 {
        let s = ((t) % 3) + 1; // target of the cyclic arrow x_t
        to_label.insert(format!("{t}@u"), format!("{t}"));
        to_label.insert(format!("{t}@v"), format!("{t}p"));
        to_label.insert(format!("x{t}@u"), format!("a{t}"));
        to_label.insert(format!("x{t}@v"), format!("b{t}"));
        to_label.insert(format!("{t}@g"), format!("c{t}"));
        to_label.insert(format!("x{t}@g"), format!("c{t}*a{t}"));
        let _ = s;
    }
    // index maps
    let pos = |alg: &Arc<Algebra>, label: &str| -> usize {
        alg.basis_labels
            .iter()
            .position(|l| l == label)
            .unwrap_or_else(|| panic!("missing label {label}"))
    };
    let perm: Vec<usize> = prod
        .basis_labels
        .iter()
        .map(|pl| pos(&l, &to_label[pl]))
        .collect();
    // structure constants transport along the bijection
    for i in 0..prod.dim {
        for j in 0..prod.dim {
            let lhs = &prod.mult[i][j];
            let rhs = &l.mult[perm[i]][perm[j]];
            for (k, &c) in lhs.iter().enumerate() {
                assert_eq!(c, rhs[perm[k]], "structure constants differ at ({i},{j})");
            }
        }
    }
}

#[test]
fn corner_and_quotient_match_the_cyclic_algebra() {
    let l = lambda();
    let rec = build(&l, &unprimed()).unwrap();
    let cyc = build_from_presentation(&cyclic3_rad_square_zero(), Field::default()).unwrap();
    // same dimension, same number of idempotents, radical square zero
    for alg in [&rec.corner, &rec.quotient_alg] {
        assert_eq!(alg.dim, cyc.dim);
        assert_eq!(alg.idempotents.len(), 3);
        // radical squares to zero: every product of radical elements vanishes
        for r in &alg.radical_basis {
            for s in &alg.radical_basis {
                assert!(alg.mul_vec(r, s).iter().all(|&x| x == 0));
            }
        }
    }
}

#[test]
fn projective_decompositions_of_the_bimodules() {
    let l = lambda();
    let rec = build(&l, &unprimed()).unwrap();

    // eΛ over the corner (left structure): projective with three
    // two-dimensional indecomposable summands
    let el = rec.e_lambda_as_left_module();
    assert!(is_projective(&el));
    let classes = decomp::decompose_with_multiplicities(&el, 11).unwrap();
    assert_eq!(classes.len(), 3);
    for (m, c) in &classes {
        assert_eq!((m.dim, *c), (2, 1));
    }

    // ΛeΛ as a right module: P(1)² ⊕ P(2)² ⊕ P(3)², all two-dimensional
    let ideal_mod = rec.ideal_as_right_module();
    assert!(is_projective(&ideal_mod));
    let classes = decomp::decompose_with_multiplicities(&ideal_mod, 13).unwrap();
    assert_eq!(classes.len(), 3);
    for (m, c) in &classes {
        assert_eq!((m.dim, *c), (2, 2));
    }

    // Λ/ΛeΛ as a left module: projective, three two-dimensional summands
    // supported at the primed vertices
    let quot_left = rec.quotient_as_left_module();
    assert!(is_projective(&quot_left));
    let classes = decomp::decompose_with_multiplicities(&quot_left, 17).unwrap();
    assert_eq!(classes.len(), 3);
    for (m, c) in &classes {
        assert_eq!((m.dim, *c), (2, 1));
        // support: the idempotents of the primed vertices act with total rank 2
        let mut primed_rank = 0;
        for (v, rank) in m.dimension_vector() {
            if v.ends_with('p') {
                primed_rank += rank;
            } else {
                assert_eq!(rank, 0, "unprimed vertex {v} in the support");
            }
        }
        assert_eq!(primed_rank, 2);
    }
}

#[test]
fn all_three_exactness_bits_hold() {
    let l = lambda();
    let rec = build(&l, &unprimed()).unwrap();
    let rep = exactness_report(&rec, 23, 3).unwrap();
    assert!(rep.l_exact);
    assert!(rep.q_exact);
    assert!(rep.p_exact);
    // the annihilator functor itself is not exact here; the divergence is
    // reported as a warning
    assert!(!rep.annihilator_p_exact);
    assert!(!rep.warnings.is_empty());
}

#[test]
fn cyclic_syzygy_orbit_and_oracle() {
    let cyc = build_from_presentation(&cyclic3_rad_square_zero(), Field::default()).unwrap();
    // Ω(S_t) ≅ S_{succ t}
    for t in 1..=3 {
        let s = simple(&cyc, &t.to_string()).unwrap();
        let next = simple(&cyc, &(((t) % 3) + 1).to_string()).unwrap();
        let o = syzygy(&s);
        assert!(decomp::is_iso(&o, &next, 29), "syzygy of S({t})");
    }
    let panel: Vec<_> = (1..=3)
        .map(|t| simple(&cyc, &t.to_string()).unwrap())
        .collect();
    let oracle = oracle_syzygy_finite(&cyc, 1, &panel, 8, 31).unwrap();
    assert_eq!(oracle.arity, 0);
    assert_eq!(oracle.depth, 1);
}

#[test]
fn transformers_certify_the_middle_algebra() {
    let l = lambda();
    let rec = build(&l, &unprimed()).unwrap();
    let corner_panel: Vec<_> = rec
        .corner
        .vertex_labels()
        .iter()
        .map(|v| simple(&rec.corner, v).unwrap())
        .collect();
    let quot_panel: Vec<_> = rec
        .quotient_alg
        .vertex_labels()
        .iter()
        .map(|v| simple(&rec.quotient_alg, v).unwrap())
        .collect();
    let oc = oracle_syzygy_finite(&rec.corner, 1, &corner_panel, 8, 37).unwrap();
    let oa = oracle_syzygy_finite(&rec.quotient_alg, 1, &quot_panel, 8, 41).unwrap();

    let panel = vec![
        simple(&l, "1").unwrap(),
        simple(&l, "1p").unwrap(),
        Module::regular(l.clone()),
    ];
    for (i, b) in panel.iter().enumerate() {
        let out2 = transform_main_2(&rec, &oa, &oc, b, 1000 + i as u64).unwrap();
        assert!(out2.verified, "short transformer failed on panel {i}");
        assert!(out2.chain.arity() <= 1, "arity {} too big", out2.chain.arity());

        let out1 = transform_main_1(&rec, &oa, &oc, b, 2000 + i as u64).unwrap();
        assert!(out1.verified, "long transformer failed on panel {i}");
        assert!(out1.chain.arity() <= 2);
    }
}

#[test]
fn pipeline_confirms_the_conclusion() {
    let l = lambda();
    let panel = default_panel(&l, 1, 43);
    let report = corollary_pipeline(&l, &unprimed(), &panel, &Caps::default(), 47).unwrap();
    assert!(report.standing_hypothesis);
    assert!(report.p_exact && report.q_exact);
    let both = report
        .clauses
        .iter()
        .find(|c| c.name == "projective-both-sides")
        .expect("clause present");
    assert!(both.applies);
    assert!(both.all_verified);
    assert_eq!(both.arity, Some(1));
    for a in &both.chain_arities {
        assert!(*a <= 1);
    }
    // interval-only reporting
    let (lo, hi) = report.it_interval.unwrap();
    assert_eq!(lo, 0);
    assert!(hi <= 1);
}

#[test]
fn relative_gldim_is_infinite_here() {
    // the first syzygy of an inflated simple is a three-dimensional module
    // whose own syzygies cycle, so the inflated simples have infinite
    // projective dimension and the relative global dimension exceeds any cap
    let l = lambda();
    let rec = build(&l, &unprimed()).unwrap();
    assert!(matches!(
        relative_gldim(&rec, 24),
        Err(recollement_core::Error::RelativeGldimInfinite(_))
    ));
    let s1p = simple(&rec.quotient_alg, "1p").unwrap();
    let inflated = rec.functor_i(&s1p);
    let v1 = syzygy(&inflated);
    assert_eq!(v1.dim, 3);
    let mut orbit = v1.clone();
    for _ in 0..3 {
        orbit = syzygy(&orbit);
        assert_eq!(orbit.dim, 3);
    }
    assert!(decomp::is_iso(&orbit, &v1, 53));
}
