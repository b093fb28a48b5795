//! The idempotent recollement `(mod Λ/ΛeΛ, mod Λ, mod eΛe)`: the six
//! functors with their units and counits, the four-term exact sequence of
//! the counit, module-theoretic exactness detectors with randomized probe
//! cross-checks, and the chain constructions that lift resolutions from the
//! corner side and descend them back.

pub mod morita;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    corner, ideal_basis, opposite, quotient_by_idempotent_ideal, Algebra, AlgebraMap,
    BimoduleData,
};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::modcat::tensor::{tensor_module_bimodule, tensor_morphism_bimodule, TensorSpace};
use crate::modcat::{
    annihilator_submodule, decomp, image, is_projective, kernel, pd, quotient, simple,
    submodule, syzygy_n, ExactChain, ModRef, Module, Morphism, ShortExact,
};
use crate::rng::SeededRng;
use crate::syzygylab::{
    chain_syzygy_shift, compose_tail_iso, pad_tail, random_ses, rotate_ses, splice,
    trim_tail, ModuleFunctor,
};

/// The recollement data for a pair `(Λ, e)`, `e` a sum of vertex
/// idempotents.
pub struct Recollement {
    pub lambda: Arc<Algebra>,
    pub verts: Vec<String>,
    pub e_vec: Vec<u64>,
    pub corner: Arc<Algebra>,
    pub corner_incl: AlgebraMap,
    pub corner_op: Arc<Algebra>,
    pub quotient_alg: Arc<Algebra>,
    pub quotient_proj: AlgebraMap,
    pub quotient_section: Mat,
    pub lambda_op: Arc<Algebra>,
    /// Row basis of the two-sided ideal `ΛeΛ`.
    pub ideal: Mat,
    /// `eΛ` as an `(eΛe, Λ)`-bimodule, rows inside `Λ`.
    pub e_lambda: BimoduleData,
    pub e_lambda_rows: Mat,
    /// `Λe` as a `(Λ, eΛe)`-bimodule, rows inside `Λ`.
    pub lambda_e: BimoduleData,
    pub lambda_e_rows: Mat,
    pub degenerate: Option<String>,
}

pub fn build(lambda: &Arc<Algebra>, verts: &[String]) -> Result<Arc<Recollement>> {
    if verts.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let f = &lambda.field;
    for v in verts {
        lambda.idempotent_vector(v)?;
    }
    let e_vec = lambda.idempotent_sum(verts)?;
    let (corner_alg, corner_incl) = corner(lambda, verts)?;
    let (quotient_alg, quotient_proj) = quotient_by_idempotent_ideal(lambda, verts)?;
    let quotient_section = if quotient_alg.dim == 0 {
        Mat::zero(0, lambda.dim)
    } else {
        Mat::solve(
            &quotient_proj.matrix,
            &Mat::identity(quotient_alg.dim),
            f,
        )
        .expect("projection is onto")
    };
    let ideal = ideal_basis(lambda, verts)?;
    let corner_op = opposite(&corner_alg);
    let lambda_op = opposite(lambda);

    // eΛ with its eΛe-left and Λ-right actions
    let e_lambda_rows = lambda.left_mult_matrix(&e_vec).row_space_basis(f);
    let e_lambda = bimodule_from_rows(
        &corner_alg,
        &corner_incl.matrix,
        lambda,
        &e_lambda_rows,
        lambda,
    )?;
    // Λe with its Λ-left and eΛe-right actions
    let lambda_e_rows = lambda.right_mult_matrix(&e_vec).row_space_basis(f);
    let lambda_e = BimoduleData {
        left_algebra: lambda.clone(),
        right_algebra: corner_alg.clone(),
        dim: lambda_e_rows.rows,
        left_action: left_actions(&lambda_e_rows, &Mat::identity(lambda.dim), lambda),
        right_action: right_actions(&lambda_e_rows, &corner_incl.matrix, lambda),
    };
    lambda_e.verify()?;

    let degenerate = if quotient_alg.dim == 0 {
        Some("idempotent covers every vertex; the quotient side is zero".to_string())
    } else if corner_alg.dim == lambda.dim {
        Some("corner equals the whole algebra".to_string())
    } else {
        None
    };

    Ok(Arc::new(Recollement {
        lambda: lambda.clone(),
        verts: verts.to_vec(),
        e_vec,
        corner: corner_alg,
        corner_incl,
        corner_op,
        quotient_alg,
        quotient_proj,
        quotient_section,
        lambda_op,
        ideal,
        e_lambda,
        e_lambda_rows,
        lambda_e,
        lambda_e_rows,
        degenerate,
    }))
}

fn right_actions(rows: &Mat, acting_basis_rows: &Mat, ambient: &Arc<Algebra>) -> Vec<Mat> {
    let f = &ambient.field;
    (0..acting_basis_rows.rows)
        .map(|ci| {
            let c = acting_basis_rows.row(ci);
            let mut out = Mat::zero(rows.rows, rows.rows);
            for i in 0..rows.rows {
                let prod = ambient.mul_vec(rows.row(i), c);
                let sol = Mat::solve(rows, &Mat::from_rows(&[prod], ambient.dim), f)
                    .expect("bimodule rows are action stable");
                for j in 0..rows.rows {
                    out.set(i, j, sol.get(0, j));
                }
            }
            out
        })
        .collect()
}

fn left_actions(rows: &Mat, acting_basis_rows: &Mat, ambient: &Arc<Algebra>) -> Vec<Mat> {
    let f = &ambient.field;
    (0..acting_basis_rows.rows)
        .map(|ci| {
            let c = acting_basis_rows.row(ci);
            let mut out = Mat::zero(rows.rows, rows.rows);
            for i in 0..rows.rows {
                let prod = ambient.mul_vec(c, rows.row(i));
                let sol = Mat::solve(rows, &Mat::from_rows(&[prod], ambient.dim), f)
                    .expect("bimodule rows are action stable");
                for j in 0..rows.rows {
                    out.set(i, j, sol.get(0, j));
                }
            }
            out
        })
        .collect()
}

fn bimodule_from_rows(
    left_alg: &Arc<Algebra>,
    left_basis_rows: &Mat,
    right_alg: &Arc<Algebra>,
    rows: &Mat,
    ambient: &Arc<Algebra>,
) -> Result<BimoduleData> {
    let right_rows = Mat::identity(ambient.dim);
    let b = BimoduleData {
        left_algebra: left_alg.clone(),
        right_algebra: right_alg.clone(),
        dim: rows.rows,
        left_action: left_actions(rows, left_basis_rows, ambient),
        right_action: right_actions(rows, &right_rows, ambient),
    };
    b.verify()?;
    Ok(b)
}

impl Recollement {
    fn field(&self) -> &crate::field::Field {
        &self.lambda.field
    }

    // -- the six functors -------------------------------------------------

    /// `e(m) = m·e` with its `eΛe`-action, plus the row basis inside `m`.
    pub fn e_data(&self, m: &ModRef) -> (ModRef, Mat) {
        let f = self.field();
        assert!(Arc::ptr_eq(&m.algebra, &self.lambda), "module not over Λ");
        let rows = m.rho(&self.e_vec).row_space_basis(f);
        let action: Vec<Mat> = (0..self.corner.dim)
            .map(|ci| {
                let c = self.corner_incl.matrix.row(ci);
                Mat::solve(&rows, &rows.mul(&m.rho(c), f), f)
                    .expect("m·e is stable under the corner action")
            })
            .collect();
        let module = Arc::new(Module {
            algebra: self.corner.clone(),
            dim: rows.rows,
            action,
        });
        (module, rows)
    }

    pub fn functor_e(&self, m: &ModRef) -> ModRef {
        self.e_data(m).0
    }

    pub fn functor_e_mor(&self, fm: &Morphism) -> Morphism {
        let f = self.field();
        let (src, src_rows) = self.e_data(&fm.src);
        let (tgt, tgt_rows) = self.e_data(&fm.tgt);
        let mat = Mat::solve(&tgt_rows, &src_rows.mul(&fm.mat, f), f)
            .expect("image of m·e lands in n·e");
        Morphism::new(src, tgt, mat)
    }

    /// Inflation along the projection `Λ → Λ/ΛeΛ`.
    pub fn functor_i(&self, n: &ModRef) -> ModRef {
        assert!(
            Arc::ptr_eq(&n.algebra, &self.quotient_alg),
            "module not over the quotient"
        );
        let action: Vec<Mat> = (0..self.lambda.dim)
            .map(|i| n.rho(self.quotient_proj.matrix.row(i)))
            .collect();
        Arc::new(Module {
            algebra: self.lambda.clone(),
            dim: n.dim,
            action,
        })
    }

    pub fn functor_i_mor(&self, fm: &Morphism) -> Morphism {
        Morphism::new(
            self.functor_i(&fm.src),
            self.functor_i(&fm.tgt),
            fm.mat.clone(),
        )
    }

    /// `q(m) = m / m·ΛeΛ` as a module over the quotient algebra; also
    /// returns the projection matrix from `m`.
    pub fn q_data(&self, m: &ModRef) -> (ModRef, Mat) {
        let f = self.field();
        let sub = self.ideal_image_rows(m);
        let (q_lambda, pi) = quotient(m, &sub);
        let action: Vec<Mat> = (0..self.quotient_alg.dim)
            .map(|j| q_lambda.rho(self.quotient_section.row(j)))
            .collect();
        let module = Arc::new(Module {
            algebra: self.quotient_alg.clone(),
            dim: q_lambda.dim,
            action,
        });
        let _ = f;
        (module, pi.mat)
    }

    pub fn functor_q(&self, m: &ModRef) -> ModRef {
        self.q_data(m).0
    }

    pub fn functor_q_mor(&self, fm: &Morphism) -> Morphism {
        let f = self.field();
        let (src, src_pi) = self.q_data(&fm.src);
        let (tgt, tgt_pi) = self.q_data(&fm.tgt);
        // section of the source projection
        let sect = Mat::solve(&src_pi, &Mat::identity(src.dim), f).expect("projection onto");
        let mat = sect.mul(&fm.mat, f).mul(&tgt_pi, f);
        Morphism::new(src, tgt, mat)
    }

    fn ideal_image_rows(&self, m: &ModRef) -> Mat {
        let f = self.field();
        let mats: Vec<Mat> = (0..self.ideal.rows).map(|i| m.rho(self.ideal.row(i))).collect();
        if mats.is_empty() {
            return Mat::zero(0, m.dim);
        }
        Mat::vstack_all(&mats, m.dim).row_space_basis(f)
    }

    /// `p(m) = {x : x·ΛeΛ = 0}` as a module over the quotient algebra,
    /// with the inclusion rows inside `m`.
    pub fn p_data(&self, m: &ModRef) -> (ModRef, Mat) {
        let (sub, incl) = annihilator_submodule(m, &self.ideal);
        let action: Vec<Mat> = (0..self.quotient_alg.dim)
            .map(|j| sub.rho(self.quotient_section.row(j)))
            .collect();
        let module = Arc::new(Module {
            algebra: self.quotient_alg.clone(),
            dim: sub.dim,
            action,
        });
        (module, incl.mat)
    }

    pub fn functor_p(&self, m: &ModRef) -> ModRef {
        self.p_data(m).0
    }

    pub fn functor_p_mor(&self, fm: &Morphism) -> Morphism {
        let f = self.field();
        let (src, src_rows) = self.p_data(&fm.src);
        let (tgt, tgt_rows) = self.p_data(&fm.tgt);
        let mat = Mat::solve(&tgt_rows, &src_rows.mul(&fm.mat, f), f)
            .expect("annihilator maps into annihilator");
        Morphism::new(src, tgt, mat)
    }

    /// `l(y) = y ⊗_{eΛe} eΛ` with the tensor bookkeeping.
    pub fn l_data(&self, y: &ModRef) -> TensorSpace {
        assert!(Arc::ptr_eq(&y.algebra, &self.corner), "module not over eΛe");
        tensor_module_bimodule(y, &self.e_lambda, &self.lambda)
    }

    pub fn functor_l(&self, y: &ModRef) -> ModRef {
        self.l_data(y).module
    }

    pub fn functor_l_mor(&self, fm: &Morphism) -> Morphism {
        let src = self.l_data(&fm.src);
        let tgt = self.l_data(&fm.tgt);
        tensor_morphism_bimodule(fm, &self.e_lambda, &src, &tgt)
    }

    /// `r(y) = Hom_{eΛe}(Λe, y)` with the hom-space basis retained.
    pub fn r_data(&self, y: &ModRef) -> (ModRef, Vec<Morphism>) {
        let f = self.field();
        assert!(Arc::ptr_eq(&y.algebra, &self.corner), "module not over eΛe");
        let le_mod = Arc::new(Module {
            algebra: self.corner.clone(),
            dim: self.lambda_e.dim,
            action: self.lambda_e.right_action.clone(),
        });
        let basis = crate::modcat::hom_basis(&le_mod, y);
        let k = basis.len();
        // flatten homs to solve for coordinates
        let flat = |m: &Mat| -> Vec<u64> {
            let mut v = Vec::with_capacity(m.rows * m.cols);
            for i in 0..m.rows {
                v.extend_from_slice(m.row(i));
            }
            v
        };
        let cols = self.lambda_e.dim * y.dim;
        let basis_flat = Mat::from_rows(
            &basis.iter().map(|b| flat(&b.mat)).collect::<Vec<_>>(),
            cols.max(1),
        );
        let action: Vec<Mat> = (0..self.lambda.dim)
            .map(|bi| {
                let mut unit = vec![0u64; self.lambda.dim];
                unit[bi] = 1;
                let lb = self.lambda_e.left(&unit);
                let mut out = Mat::zero(k, k);
                for (i, h) in basis.iter().enumerate() {
                    let moved = lb.mul(&h.mat, f);
                    let sol = Mat::solve(
                        &basis_flat,
                        &Mat::from_rows(&[flat(&moved)], cols.max(1)),
                        f,
                    )
                    .expect("hom space is stable under the Λ-action");
                    for j in 0..k {
                        out.set(i, j, sol.get(0, j));
                    }
                }
                out
            })
            .collect();
        let module = Arc::new(Module {
            algebra: self.lambda.clone(),
            dim: k,
            action,
        });
        (module, basis)
    }

    pub fn functor_r(&self, y: &ModRef) -> ModRef {
        self.r_data(y).0
    }

    pub fn functor_r_mor(&self, fm: &Morphism) -> Morphism {
        let f = self.field();
        let (src, src_basis) = self.r_data(&fm.src);
        let (tgt, tgt_basis) = self.r_data(&fm.tgt);
        let cols = self.lambda_e.dim * fm.tgt.dim;
        let flat = |m: &Mat| -> Vec<u64> {
            let mut v = Vec::with_capacity(m.rows * m.cols);
            for i in 0..m.rows {
                v.extend_from_slice(m.row(i));
            }
            v
        };
        let tgt_flat = Mat::from_rows(
            &tgt_basis.iter().map(|b| flat(&b.mat)).collect::<Vec<_>>(),
            cols.max(1),
        );
        let mut mat = Mat::zero(src.dim, tgt.dim);
        for (i, h) in src_basis.iter().enumerate() {
            let moved = h.mat.mul(&fm.mat, f);
            let sol = Mat::solve(&tgt_flat, &Mat::from_rows(&[flat(&moved)], cols.max(1)), f)
                .expect("post-composition lands in the hom space");
            for j in 0..tgt.dim {
                mat.set(i, j, sol.get(0, j));
            }
        }
        Morphism::new(src, tgt, mat)
    }

    // -- units, counits, canonical sequences ------------------------------

    /// Counit `μ_b : le(b) → b`, `x ⊗ w ↦ x·w`.
    pub fn counit_mu(&self, b: &ModRef) -> Morphism {
        let f = self.field();
        let (eb, eb_rows) = self.e_data(b);
        let ts = self.l_data(&eb);
        let w = &self.e_lambda_rows;
        let mut plain = Mat::zero(eb.dim * w.rows, b.dim);
        for i in 0..eb.dim {
            for j in 0..w.rows {
                let val = b.rho(w.row(j)).apply(eb_rows.row(i), f);
                for (c, &v) in val.iter().enumerate() {
                    plain.set(i * w.rows + j, c, v);
                }
            }
        }
        let mat = ts.section.mul(&plain, f);
        Morphism::new(ts.module, b.clone(), mat)
    }

    /// Unit `λ_b : b → iq(b)`, the quotient projection.
    pub fn unit_lambda(&self, b: &ModRef) -> Morphism {
        let (qb, pi) = self.q_data(b);
        let iqb = self.functor_i(&qb);
        Morphism::new(b.clone(), iqb, pi)
    }

    /// Unit `η_y : y → e(l(y))` of the `(l, e)`-adjunction; an iso.
    pub fn unit_el(&self, y: &ModRef) -> Morphism {
        let f = self.field();
        let ts = self.l_data(y);
        let (ely, el_rows) = self.e_data(&ts.module);
        let we = Mat::solve(
            &self.e_lambda_rows,
            &Mat::from_rows(&[self.e_vec.clone()], self.lambda.dim),
            f,
        )
        .expect("e lies in eΛ")
        .row(0)
        .to_vec();
        let wdim = self.e_lambda.dim;
        let mut mat = Mat::zero(y.dim, ely.dim);
        for i in 0..y.dim {
            let mut plain = vec![0u64; y.dim * wdim];
            for (j, &c) in we.iter().enumerate() {
                plain[i * wdim + j] = c;
            }
            let in_l = ts.projection.apply(&plain, f);
            let sol = Mat::solve(&el_rows, &Mat::from_rows(&[in_l], ts.module.dim), f)
                .expect("x ⊗ e lies in l(y)·e");
            for j in 0..ely.dim {
                mat.set(i, j, sol.get(0, j));
            }
        }
        Morphism::new(y.clone(), ely, mat)
    }

    /// Counit `qi(n) → n` of the `(q, i)`-adjunction; an iso.
    pub fn counit_qi(&self, n: &ModRef) -> Morphism {
        let f = self.field();
        let i_n = self.functor_i(n);
        let (qin, pi) = self.q_data(&i_n);
        // the projection is an iso on the underlying space here
        let inv = pi.inverse(f).expect("q(i(n)) ≅ n on the nose");
        Morphism::new(qin, n.clone(), inv)
    }

    /// The verified four-term sequence
    /// `0 → ker μ → le(b) → b → iq(b) → 0`, with the check that the kernel
    /// is annihilated by `e`.
    pub fn four_term(&self, b: &ModRef) -> Result<ExactChain> {
        let f = self.field();
        let mu = self.counit_mu(b);
        let lam = self.unit_lambda(b);
        let (_ker_mod, incl) = kernel(&mu);
        if !incl.mat.mul(&mu.src.rho(&self.e_vec), f).is_zero() {
            return Err(Error::NotExact(
                "kernel of the counit is not annihilated by e".into(),
            ));
        }
        ExactChain::new(vec![incl, mu, lam])
    }

    /// `0 → le(b) → b → iq(b) → 0`, valid when `q` is exact.
    pub fn q_exact_ses(&self, b: &ModRef) -> Result<ShortExact> {
        let mu = self.counit_mu(b);
        let lam = self.unit_lambda(b);
        if !mu.is_mono() {
            return Err(Error::QNotExact);
        }
        ShortExact::new(mu, lam)
    }

    // -- exactness --------------------------------------------------------

    /// `eΛ` as a left `eΛe`-module, presented over the opposite corner.
    pub fn e_lambda_as_left_module(&self) -> ModRef {
        Arc::new(Module {
            algebra: self.corner_op.clone(),
            dim: self.e_lambda.dim,
            action: self.e_lambda.left_action.clone(),
        })
    }

    /// `Λ/ΛeΛ` as a left `Λ`-module, presented over the opposite algebra.
    pub fn quotient_as_left_module(&self) -> ModRef {
        let f = self.field();
        let qd = self.quotient_alg.dim;
        let action: Vec<Mat> = (0..self.lambda.dim)
            .map(|bi| {
                let mut unit = vec![0u64; self.lambda.dim];
                unit[bi] = 1;
                let mut out = Mat::zero(qd, qd);
                for j in 0..qd {
                    let prod = self.lambda.mul_vec(&unit, self.quotient_section.row(j));
                    let img = self.quotient_proj.matrix.apply(&prod, f);
                    for (k, &v) in img.iter().enumerate() {
                        out.set(j, k, v);
                    }
                }
                out
            })
            .collect();
        Arc::new(Module {
            algebra: self.lambda_op.clone(),
            dim: qd,
            action,
        })
    }

    /// `ΛeΛ` as a right `Λ`-module (submodule of the regular module).
    pub fn ideal_as_right_module(&self) -> ModRef {
        let reg = Module::regular(self.lambda.clone());
        submodule(&reg, self.ideal.clone()).0
    }

    /// `Λ/ΛeΛ` as a right `Λ`-module (the inflated regular module).
    pub fn quotient_as_right_module(&self) -> ModRef {
        let reg_quot = Module::regular(self.quotient_alg.clone());
        self.functor_i(&reg_quot)
    }
}

/// Module-theoretic exactness bits with randomized probe cross-checks.
pub struct ExactnessReport {
    /// `l` exact ⇔ `eΛ` projective as a left `eΛe`-module.
    pub l_exact: bool,
    /// `q` exact ⇔ `Λ/ΛeΛ` projective as a left `Λ`-module.
    pub q_exact: bool,
    /// The hypothesis bit used by the certificate transformers:
    /// `ΛeΛ` projective as a right `Λ`-module.
    pub p_exact: bool,
    /// Exactness of the annihilator functor itself
    /// (⇔ `Λ/ΛeΛ` projective as a right `Λ`-module). Differs from `p_exact`
    /// in general; the divergence is reported, not hidden.
    pub annihilator_p_exact: bool,
    pub degenerate: Option<String>,
    pub probes_run: usize,
    pub warnings: Vec<String>,
}

pub fn exactness_report(rec: &Arc<Recollement>, seed: u64, probes: usize) -> Result<ExactnessReport> {
    let l_exact = is_projective(&rec.e_lambda_as_left_module());
    let q_exact = is_projective(&rec.quotient_as_left_module());
    let p_exact = is_projective(&rec.ideal_as_right_module());
    let annihilator_p_exact = is_projective(&rec.quotient_as_right_module());

    let f = &rec.lambda.field;
    let mut rng = SeededRng::new(seed);
    // l-probe on corner sequences
    for _ in 0..probes {
        let s = random_ses(&rec.corner, &mut rng);
        let lf = rec.functor_l_mor(&s.f);
        let lg = rec.functor_l_mor(&s.g);
        let ok = lf.is_mono()
            && lg.is_epi()
            && lf.mat.mul(&lg.mat, f).is_zero()
            && lf.rank() + lg.rank() == lf.tgt.dim;
        if ok != l_exact {
            // a single failing probe refutes exactness; a passing probe on an
            // inexact functor is possible, so only the refutation direction
            // counts against the criterion
            if !ok && l_exact {
                return Err(Error::ProbeCriterionDisagreement(
                    "l-criterion says exact but a probe failed".into(),
                ));
            }
        }
    }
    // q-probe on Λ sequences
    let mut q_probe_all_ok = true;
    for _ in 0..probes {
        let s = random_ses(&rec.lambda, &mut rng);
        let qf = rec.functor_q_mor(&s.f);
        let qg = rec.functor_q_mor(&s.g);
        let ok = qf.is_mono()
            && qg.is_epi()
            && qf.mat.mul(&qg.mat, f).is_zero()
            && qf.rank() + qg.rank() == qf.tgt.dim;
        if !ok {
            q_probe_all_ok = false;
        }
    }
    if !q_probe_all_ok && q_exact {
        return Err(Error::ProbeCriterionDisagreement(
            "q-criterion says exact but a probe failed".into(),
        ));
    }
    // p-probe for the hypothesis bit: hom out of the ideal module
    let ideal_mod = rec.ideal_as_right_module();
    let mut p_probe_all_ok = true;
    for _ in 0..probes {
        let s = random_ses(&rec.lambda, &mut rng);
        let ha = crate::modcat::hom_basis(&ideal_mod, s.sub()).len();
        let hb = crate::modcat::hom_basis(&ideal_mod, s.mid()).len();
        let hc = crate::modcat::hom_basis(&ideal_mod, s.quo()).len();
        if ha + hc != hb {
            p_probe_all_ok = false;
        }
    }
    if !p_probe_all_ok && p_exact {
        return Err(Error::ProbeCriterionDisagreement(
            "p-criterion says exact but a hom-dimension probe failed".into(),
        ));
    }

    let mut warnings = Vec::new();
    if p_exact != annihilator_p_exact {
        warnings.push(
            "the right adjoint of the inclusion is the annihilator functor; its own \
             exactness differs here from the reported p-bit, which follows the \
             projectivity of the ideal as used by the certificate transformers"
                .to_string(),
        );
    }
    Ok(ExactnessReport {
        l_exact,
        q_exact,
        p_exact,
        annihilator_p_exact,
        degenerate: rec.degenerate.clone(),
        probes_run: probes,
        warnings,
    })
}

// ---------------------------------------------------------------------------
// functor handles
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum FunctorName {
    I,
    E,
    L,
    R,
    Q,
    P,
}

pub struct RecFunctor {
    pub rec: Arc<Recollement>,
    pub which: FunctorName,
}

impl ModuleFunctor for RecFunctor {
    fn name(&self) -> String {
        match self.which {
            FunctorName::I => "i",
            FunctorName::E => "e",
            FunctorName::L => "l",
            FunctorName::R => "r",
            FunctorName::Q => "q",
            FunctorName::P => "p",
        }
        .into()
    }
    fn source_algebra(&self) -> Arc<Algebra> {
        match self.which {
            FunctorName::I | FunctorName::L | FunctorName::R => match self.which {
                FunctorName::I => self.rec.quotient_alg.clone(),
                _ => self.rec.corner.clone(),
            },
            _ => self.rec.lambda.clone(),
        }
    }
    fn target_algebra(&self) -> Arc<Algebra> {
        match self.which {
            FunctorName::I | FunctorName::L | FunctorName::R => self.rec.lambda.clone(),
            FunctorName::E => self.rec.corner.clone(),
            _ => self.rec.quotient_alg.clone(),
        }
    }
    fn map_module(&self, m: &ModRef) -> ModRef {
        match self.which {
            FunctorName::I => self.rec.functor_i(m),
            FunctorName::E => self.rec.functor_e(m),
            FunctorName::L => self.rec.functor_l(m),
            FunctorName::R => self.rec.functor_r(m),
            FunctorName::Q => self.rec.functor_q(m),
            FunctorName::P => self.rec.functor_p(m),
        }
    }
    fn map_morphism(&self, f: &Morphism) -> Morphism {
        match self.which {
            FunctorName::I => self.rec.functor_i_mor(f),
            FunctorName::E => self.rec.functor_e_mor(f),
            FunctorName::L => self.rec.functor_l_mor(f),
            FunctorName::R => self.rec.functor_r_mor(f),
            FunctorName::Q => self.rec.functor_q_mor(f),
            FunctorName::P => self.rec.functor_p_mor(f),
        }
    }
}

// ---------------------------------------------------------------------------
// chain constructions
// ---------------------------------------------------------------------------

/// Lift a corner-side chain ending stably at `Ω^t(e(b))` to a Λ-side chain
/// ending exactly at `Ω^t(le(b))`, with front term a summand of
/// `l(V₀) ⊕ projective`.
pub fn prop1_lift_chain(
    rec: &Arc<Recollement>,
    chain: &ExactChain,
    b: &ModRef,
    t: usize,
    seed: u64,
) -> Result<ExactChain> {
    if !is_projective(&rec.e_lambda_as_left_module()) {
        return Err(Error::LNotExact);
    }
    let eb = rec.functor_e(b);
    if !decomp::stably_isomorphic(chain.tail(), &syzygy_n(&eb, t), seed)? {
        return Err(Error::ChainMismatch(
            "chain does not resolve the required corner syzygy".into(),
        ));
    }
    // apply l to the whole chain
    let l_maps: Vec<Morphism> = chain.maps.iter().map(|m| rec.functor_l_mor(m)).collect();
    let l_chain = ExactChain::new(l_maps)?;
    // align with the minimal syzygy of le(b)
    let leb = rec.functor_l(&eb);
    let target = syzygy_n(&leb, t);
    let sm = decomp::stable_match(l_chain.tail(), &target, seed ^ 0x11)?;
    let l_chain = match &sm.pad_m {
        Some(p) if p.dim > 0 => pad_tail(&l_chain, p)?,
        _ => l_chain,
    };
    let l_chain = compose_tail_iso(&l_chain, &sm.iso)?;
    match &sm.pad_n {
        Some(p) if p.dim > 0 => {
            // trim back to the clean minimal syzygy
            let (sum, inj, _) = crate::modcat::direct_sum(&[target.clone(), p.clone()]);
            let _ = sum;
            trim_tail(&l_chain, &inj[0])
        }
        _ => Ok(l_chain),
    }
}

/// Output of the full chain construction: the verified chain plus the two
/// head objects it buries.
pub struct Prop1Full {
    pub chain: ExactChain,
    /// Head module, literally `Ω^{t+n+2}`-deep over `iq(b)`.
    pub head: ModRef,
    /// The counit kernel reinterpreted over the quotient algebra.
    pub a_module: ModRef,
    /// The kernel as a Λ-module (equal to `i(a_module)` on the nose).
    pub k_module: ModRef,
    /// Chain index of the term `Ω^{t+n}(i(A)) ⊕ Q`.
    pub a_term_index: usize,
}

pub fn prop1_full_chain(
    rec: &Arc<Recollement>,
    chain: &ExactChain,
    b: &ModRef,
    t: usize,
    seed: u64,
) -> Result<Prop1Full> {
    let lifted = prop1_lift_chain(rec, chain, b, t, seed)?;
    let mu = rec.counit_mu(b);
    let lam = rec.unit_lambda(b);
    let (k_mod, k_incl) = kernel(&mu);
    // A = ker μ as a module over the quotient (it is annihilated by the ideal)
    let a_module = reinterpret_over_quotient(rec, &k_mod)?;
    // first splice: across 0 → K → le(b) → im μ → 0
    let (_w_mod, w_incl, mu_onto) = image(&mu);
    let ses1 = ShortExact::new(k_incl, mu_onto)?;
    let spl1 = splice(&ses1, &lifted, t, seed ^ 0x21)?;
    // second splice: across the rotation of 0 → im μ → b → iq(b) → 0
    let ses2 = ShortExact::new(w_incl, lam)?;
    let rot = rotate_ses(&ses2)?;
    let spl2 = splice(&rot, &spl1.chain, t, seed ^ 0x22)?;
    let a_term_index = 1;
    Ok(Prop1Full {
        chain: spl2.chain,
        head: spl2.head,
        a_module,
        k_module: k_mod,
        a_term_index,
    })
}

/// The shorter chain available when `q` is exact: head `Ω^{t+n+1}(iq(b))`.
pub struct Prop1Q {
    pub chain: ExactChain,
    pub head: ModRef,
}

pub fn prop1_qexact_chain(
    rec: &Arc<Recollement>,
    chain: &ExactChain,
    b: &ModRef,
    t: usize,
    seed: u64,
) -> Result<Prop1Q> {
    if !is_projective(&rec.quotient_as_left_module()) {
        return Err(Error::QNotExact);
    }
    let lifted = prop1_lift_chain(rec, chain, b, t, seed)?;
    let ses = rec.q_exact_ses(b)?;
    let rot = rotate_ses(&ShortExact::new(ses.f.clone(), ses.g.clone())?)?;
    let spl = splice(&rot, &lifted, t, seed ^ 0x31)?;
    Ok(Prop1Q {
        chain: spl.chain,
        head: spl.head,
    })
}

/// Apply `e` to a Λ-side chain for `Ω^k(l(c))` and return the corner-side
/// chain ending exactly at `Ω^k(c)`.
pub fn descend_chain(
    rec: &Arc<Recollement>,
    chain: &ExactChain,
    c: &ModRef,
    k: usize,
    seed: u64,
) -> Result<ExactChain> {
    if !is_projective(&rec.e_lambda_as_left_module()) {
        return Err(Error::LNotExact);
    }
    let lc = rec.functor_l(c);
    if !decomp::stably_isomorphic(chain.tail(), &syzygy_n(&lc, k), seed)? {
        return Err(Error::ChainMismatch(
            "chain does not resolve the required syzygy of l(c)".into(),
        ));
    }
    // align the tail with l(Ω^k(c)) using the syzygy comparison for l
    let omega_c = syzygy_n(c, k);
    let l_omega = rec.functor_l(&omega_c);
    let sm = decomp::stable_match(chain.tail(), &l_omega, seed ^ 0x41)?;
    let chain = match &sm.pad_m {
        Some(p) if p.dim > 0 => pad_tail(chain, p)?,
        _ => chain.clone(),
    };
    let chain = compose_tail_iso(&chain, &sm.iso)?;
    let chain = match &sm.pad_n {
        Some(p) if p.dim > 0 => {
            let (sum, inj, _) = crate::modcat::direct_sum(&[l_omega.clone(), p.clone()]);
            let _ = sum;
            trim_tail(&chain, &inj[0])?
        }
        _ => chain,
    };
    // descend along e
    let e_maps: Vec<Morphism> = chain.maps.iter().map(|m| rec.functor_e_mor(m)).collect();
    let e_chain = ExactChain::new(e_maps)?;
    // identify e(l(Ω^k c)) with Ω^k(c) through the unit
    let eta = rec.unit_el(&omega_c);
    if !eta.is_iso() {
        return Err(Error::NotExact("unit of (l,e) is not invertible".into()));
    }
    // e-chain tail is e(l(Ω^k c)); its matrices match eta's target
    let eta_inv = eta.inverse()?;
    compose_tail_iso(&e_chain, &eta_inv)
}

/// Reinterpret a Λ-module annihilated by the ideal as a module over the
/// quotient algebra.
pub fn reinterpret_over_quotient(rec: &Arc<Recollement>, m: &ModRef) -> Result<ModRef> {
    for i in 0..rec.ideal.rows {
        if !m.rho(rec.ideal.row(i)).is_zero() {
            return Err(Error::InvariantViolation(
                "module is not annihilated by the ideal".into(),
            ));
        }
    }
    let action: Vec<Mat> = (0..rec.quotient_alg.dim)
        .map(|j| m.rho(rec.quotient_section.row(j)))
        .collect();
    Ok(Arc::new(Module {
        algebra: rec.quotient_alg.clone(),
        dim: m.dim,
        action,
    }))
}

/// Relative global dimension: the sup over simples of the quotient algebra
/// of `pd_Λ i(S)`, capped.
pub fn relative_gldim(rec: &Arc<Recollement>, cap: usize) -> Result<usize> {
    let mut best = 0usize;
    for (v, _) in rec.quotient_alg.idempotents.iter() {
        let s = simple(&rec.quotient_alg, v)?;
        let inflated = rec.functor_i(&s);
        match pd(&inflated, cap) {
            Ok(d) => best = best.max(d),
            Err(Error::ExceedsCap(c)) => return Err(Error::RelativeGldimInfinite(c)),
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

/// `Ω^j_Λ(i(y))` computed through the corner identity
/// `Ω^j(i(y)) ≅ Ω(i(Ω^{j-1}(y)))` up to projectives; used by the
/// transformers. Returns the chain built from an inflated quotient-side
/// chain by one syzygy shift.
pub fn inflate_and_shift(
    rec: &Arc<Recollement>,
    quotient_chain: &ExactChain,
) -> Result<ExactChain> {
    let maps: Vec<Morphism> = quotient_chain
        .maps
        .iter()
        .map(|m| rec.functor_i_mor(m))
        .collect();
    let inflated = ExactChain::new(maps)?;
    chain_syzygy_shift(&inflated)
}
