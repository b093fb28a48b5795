//! The category of finitely generated right modules over an [`Algebra`],
//! as explicit matrix data: modules, morphisms, hom spaces, (co)kernels,
//! pullbacks, projective covers, syzygies and projective dimension.
//!
//! A module of dimension `n` stores one `n×n` action matrix per algebra
//! basis element; row vectors are acted on from the right, so `v · ρ(a)`
//! is `v·a` and `ρ` is multiplicative.

pub mod decomp;
pub mod tensor;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::mat::Mat;

pub type ModRef = Arc<Module>;

#[derive(Debug, Clone)]
pub struct Module {
    pub algebra: Arc<Algebra>,
    pub dim: usize,
    pub action: Vec<Mat>,
}

impl Module {
    pub fn zero(algebra: Arc<Algebra>) -> ModRef {
        let action = (0..algebra.dim).map(|_| Mat::zero(0, 0)).collect();
        Arc::new(Module {
            algebra,
            dim: 0,
            action,
        })
    }

    /// Right multiplication on the algebra itself.
    pub fn regular(algebra: Arc<Algebra>) -> ModRef {
        let action = (0..algebra.dim)
            .map(|j| {
                let mut x = vec![0u64; algebra.dim];
                x[j] = 1;
                algebra.right_mult_matrix(&x)
            })
            .collect();
        Arc::new(Module {
            dim: algebra.dim,
            algebra,
            action,
        })
    }

    /// Action of a general algebra element.
    pub fn rho(&self, x: &[u64]) -> Mat {
        let f = &self.algebra.field;
        let mut out = Mat::zero(self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[i].scale(c, f), f);
            }
        }
        out
    }

    pub fn verify(&self) -> Result<()> {
        let f = &self.algebra.field;
        if self.action.len() != self.algebra.dim {
            return Err(Error::InvariantViolation("action count != algebra dim".into()));
        }
        if self.algebra.dim == 0 {
            return Ok(());
        }
        if self.rho(&self.algebra.unit) != Mat::identity(self.dim) {
            return Err(Error::InvariantViolation("unit does not act as identity".into()));
        }
        for i in 0..self.algebra.dim {
            for j in 0..self.algebra.dim {
                let lhs = self.rho(&self.algebra.mult[i][j]);
                let rhs = self.action[i].mul(&self.action[j], f);
                if lhs != rhs {
                    return Err(Error::InvariantViolation(format!(
                        "action not multiplicative at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Ranks of the idempotent actions, one entry per vertex.
    pub fn dimension_vector(&self) -> Vec<(String, usize)> {
        let f = &self.algebra.field;
        self.algebra
            .idempotents
            .iter()
            .map(|(l, e)| (l.clone(), self.rho(e).rank(f)))
            .collect()
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b)
}

/// Same module object: pointer-equal, or structurally identical matrix data
/// over the same algebra. Chain surgery stitches morphisms whose endpoint
/// modules were rebuilt independently, so structural identity is the
/// composition criterion.
pub fn same_module(a: &ModRef, b: &ModRef) -> bool {
    Arc::ptr_eq(a, b)
        || (same_algebra(&a.algebra, &b.algebra) && a.dim == b.dim && a.action == b.action)
}

#[derive(Debug, Clone)]
pub struct Morphism {
    pub src: ModRef,
    pub tgt: ModRef,
    pub mat: Mat,
}

impl Morphism {
    pub fn new(src: ModRef, tgt: ModRef, mat: Mat) -> Self {
        assert_eq!(mat.rows, src.dim, "morphism matrix rows");
        assert_eq!(mat.cols, tgt.dim, "morphism matrix cols");
        Morphism { src, tgt, mat }
    }

    pub fn zero(src: ModRef, tgt: ModRef) -> Self {
        let m = Mat::zero(src.dim, tgt.dim);
        Morphism::new(src, tgt, m)
    }

    pub fn identity(m: &ModRef) -> Self {
        Morphism::new(m.clone(), m.clone(), Mat::identity(m.dim))
    }

    pub fn verify(&self) -> Result<()> {
        if !same_algebra(&self.src.algebra, &self.tgt.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let f = &self.src.algebra.field;
        for i in 0..self.src.algebra.dim {
            if self.src.action[i].mul(&self.mat, f) != self.mat.mul(&self.tgt.action[i], f) {
                return Err(Error::NotAMorphism);
            }
        }
        Ok(())
    }

    /// `self` then `other`, reading left to right.
    pub fn then(&self, other: &Morphism) -> Morphism {
        assert!(
            same_module(&self.tgt, &other.src),
            "composition endpoint mismatch"
        );
        let f = &self.src.algebra.field;
        Morphism::new(self.src.clone(), other.tgt.clone(), self.mat.mul(&other.mat, f))
    }

    pub fn rank(&self) -> usize {
        self.mat.rank(&self.src.algebra.field)
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.src.dim
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.tgt.dim
    }

    pub fn is_iso(&self) -> bool {
        self.src.dim == self.tgt.dim && self.rank() == self.src.dim
    }

    pub fn inverse(&self) -> Result<Morphism> {
        let f = &self.src.algebra.field;
        let inv = self.mat.inverse(f)?;
        Ok(Morphism::new(self.tgt.clone(), self.src.clone(), inv))
    }

    /// Corestriction along a submodule inclusion containing the image.
    pub fn corestrict(&self, incl: &Morphism) -> Morphism {
        let f = &self.src.algebra.field;
        let mat = Mat::solve(&incl.mat, &self.mat, f)
            .expect("image must lie in the submodule");
        Morphism::new(self.src.clone(), incl.src.clone(), mat)
    }

    /// Block-diagonal sum of two morphisms.
    pub fn direct_sum(&self, other: &Morphism) -> Morphism {
        let (s, _inj, _proj) = direct_sum(&[self.src.clone(), other.src.clone()]);
        let (t, _, _) = direct_sum(&[self.tgt.clone(), other.tgt.clone()]);
        Morphism::new(s, t, self.mat.direct_sum(&other.mat))
    }
}

// ---------------------------------------------------------------------------
// submodules and quotients
// ---------------------------------------------------------------------------

/// Submodule on an action-stable row basis; returns the module and its
/// inclusion. `rows` must already be a basis (row reduced).
pub fn submodule(m: &ModRef, rows: Mat) -> (ModRef, Morphism) {
    let f = &m.algebra.field;
    let dim = rows.rows;
    let action = m
        .action
        .iter()
        .map(|a| {
            Mat::solve(&rows, &rows.mul(a, f), f)
                .expect("submodule basis must be action-stable")
        })
        .collect();
    let sub = Arc::new(Module {
        algebra: m.algebra.clone(),
        dim,
        action,
    });
    let incl = Morphism::new(sub.clone(), m.clone(), rows);
    (sub, incl)
}

/// Quotient by an action-stable row space; returns the module and the
/// projection.
pub fn quotient(m: &ModRef, rows: &Mat) -> (ModRef, Morphism) {
    let f = &m.algebra.field;
    let (rref, pivots) = rows.rref(f);
    let pivot_set: alloc::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..m.dim).filter(|c| !pivot_set.contains(c)).collect();
    let dim = free.len();
    let mut proj = Mat::zero(m.dim, dim);
    for i in 0..m.dim {
        let mut unit = vec![0u64; m.dim];
        unit[i] = 1;
        let nf = Mat::normal_form(&unit, &rref, &pivots, f);
        for (j, &c) in free.iter().enumerate() {
            proj.set(i, j, nf[c]);
        }
    }
    let section = Mat::from_fn(dim, m.dim, |i, j| u64::from(free[i] == j));
    let action = m
        .action
        .iter()
        .map(|a| section.mul(a, f).mul(&proj, f))
        .collect();
    let q = Arc::new(Module {
        algebra: m.algebra.clone(),
        dim,
        action,
    });
    let p = Morphism::new(m.clone(), q.clone(), proj);
    (q, p)
}

/// Close a set of row vectors under the algebra action.
pub fn generated_submodule(m: &ModRef, seed_rows: &Mat) -> Mat {
    let f = &m.algebra.field;
    let mut basis = seed_rows.row_space_basis(f);
    loop {
        let mut next = vec![basis.clone()];
        for a in &m.action {
            next.push(basis.mul(a, f));
        }
        let bigger = Mat::vstack_all(&next, m.dim).row_space_basis(f);
        if bigger.rows == basis.rows {
            return bigger;
        }
        basis = bigger;
    }
}

// ---------------------------------------------------------------------------
// kernels, images, limits
// ---------------------------------------------------------------------------

pub fn kernel(fm: &Morphism) -> (ModRef, Morphism) {
    let f = &fm.src.algebra.field;
    let rows = fm.mat.kernel_basis(f).row_space_basis(f);
    submodule(&fm.src, rows)
}

/// Image as a submodule of the target, with the epi from the source.
pub fn image(fm: &Morphism) -> (ModRef, Morphism, Morphism) {
    let f = &fm.src.algebra.field;
    let rows = fm.mat.row_space_basis(f);
    let (im, incl) = submodule(&fm.tgt, rows.clone());
    let onto = Mat::solve(&rows, &fm.mat, f).expect("image rows span the image");
    let epi = Morphism::new(fm.src.clone(), im.clone(), onto);
    (im, incl, epi)
}

pub fn cokernel(fm: &Morphism) -> (ModRef, Morphism) {
    let f = &fm.src.algebra.field;
    quotient(&fm.tgt, &fm.mat.row_space_basis(f))
}

/// Pullback of `f: X → Z ← Y : g`, with the two projections.
pub fn pullback(f: &Morphism, g: &Morphism) -> (ModRef, Morphism, Morphism) {
    assert!(Arc::ptr_eq(&f.tgt, &g.tgt), "pullback over different targets");
    let fld = &f.src.algebra.field;
    let (sum, _inj, proj) = direct_sum(&[f.src.clone(), g.src.clone()]);
    let stacked = f.mat.vstack(&g.mat.scale(fld.neg(1), fld));
    let rows = stacked.kernel_basis(fld).row_space_basis(fld);
    let (pb, incl) = submodule(&sum, rows);
    let to_x = incl.then(&proj[0]);
    let to_y = incl.then(&proj[1]);
    (pb, to_x, to_y)
}

/// Pushout of `X ← Z → Y`, with the two injections.
pub fn pushout(f: &Morphism, g: &Morphism) -> (ModRef, Morphism, Morphism) {
    assert!(Arc::ptr_eq(&f.src, &g.src), "pushout under different sources");
    let fld = &f.src.algebra.field;
    let (sum, inj, _proj) = direct_sum(&[f.tgt.clone(), g.tgt.clone()]);
    let rows = f.mat.hstack(&g.mat.scale(fld.neg(1), fld)).row_space_basis(fld);
    let (po, proj) = quotient(&sum, &rows);
    let from_x = inj[0].then(&proj);
    let from_y = inj[1].then(&proj);
    (po, from_x, from_y)
}

pub fn direct_sum(mods: &[ModRef]) -> (ModRef, Vec<Morphism>, Vec<Morphism>) {
    assert!(!mods.is_empty());
    let algebra = mods[0].algebra.clone();
    for m in mods {
        assert!(same_algebra(&m.algebra, &algebra));
    }
    let dim: usize = mods.iter().map(|m| m.dim).sum();
    let action = (0..algebra.dim)
        .map(|i| {
            let mats: Vec<Mat> = mods.iter().map(|m| m.action[i].clone()).collect();
            Mat::direct_sum_all(&mats)
        })
        .collect();
    let sum = Arc::new(Module {
        algebra,
        dim,
        action,
    });
    let mut inj = Vec::new();
    let mut proj = Vec::new();
    let mut at = 0usize;
    for m in mods {
        let mut imat = Mat::zero(m.dim, dim);
        let mut pmat = Mat::zero(dim, m.dim);
        for r in 0..m.dim {
            imat.set(r, at + r, 1);
            pmat.set(at + r, r, 1);
        }
        inj.push(Morphism::new(m.clone(), sum.clone(), imat));
        proj.push(Morphism::new(sum.clone(), m.clone(), pmat));
        at += m.dim;
    }
    (sum, inj, proj)
}

// ---------------------------------------------------------------------------
// projectives, tops, covers, syzygies
// ---------------------------------------------------------------------------

/// The indecomposable projective `e_vΛ` together with its row basis inside
/// the algebra and the coordinates of the generator `e_v`.
pub fn projective_with_basis(
    algebra: &Arc<Algebra>,
    vertex: &str,
) -> Result<(ModRef, Mat, Vec<u64>)> {
    let f = &algebra.field;
    let e = algebra.idempotent_vector(vertex)?;
    let basis = algebra.left_mult_matrix(&e).row_space_basis(f);
    let reg = Module::regular(algebra.clone());
    let (p, _incl) = submodule(&reg, basis.clone());
    let gen = Mat::solve(&basis, &Mat::from_rows(&[e], algebra.dim), f)
        .expect("e_v lies in e_v·Λ")
        .row(0)
        .to_vec();
    Ok((p, basis, gen))
}

pub fn projective(algebra: &Arc<Algebra>, vertex: &str) -> Result<ModRef> {
    projective_with_basis(algebra, vertex).map(|(p, _, _)| p)
}

/// `m / m·rad` with the quotient map.
pub fn top(m: &ModRef) -> (ModRef, Morphism) {
    let f = &m.algebra.field;
    let rad_rows: Vec<Mat> = m
        .algebra
        .radical_basis
        .iter()
        .map(|r| m.rho(r))
        .collect();
    let rows = if rad_rows.is_empty() {
        Mat::zero(0, m.dim)
    } else {
        Mat::vstack_all(&rad_rows, m.dim).row_space_basis(f)
    };
    quotient(m, &rows)
}

pub fn simple(algebra: &Arc<Algebra>, vertex: &str) -> Result<ModRef> {
    let p = projective(algebra, vertex)?;
    let (s, _) = top(&p);
    debug_assert_eq!(s.dim, 1, "split basic algebras have one-dimensional tops");
    Ok(s)
}

/// A projective cover `P ↠ m` with its block structure: one block `P(v)` per
/// simple summand of the top, generators tracked per block.
#[derive(Debug, Clone)]
pub struct Cover {
    pub module: ModRef,
    pub map: Morphism,
    /// Vertex label of each block.
    pub blocks: Vec<String>,
    pub block_dims: Vec<usize>,
    /// Row basis of each block's projective inside the algebra.
    pub block_bases: Vec<Mat>,
    /// Generator coordinates of each block inside the total cover.
    pub gens: Vec<Vec<u64>>,
}

pub fn projective_cover(m: &ModRef) -> Cover {
    let f = &m.algebra.field;
    let algebra = m.algebra.clone();
    let (t, pi) = top(m);
    let mut blocks = Vec::new();
    let mut block_modules = Vec::new();
    let mut block_bases = Vec::new();
    let mut lifts: Vec<Vec<u64>> = Vec::new();
    for (label, e) in &algebra.idempotents {
        let img = t.rho(e).row_space_basis(f);
        for r in 0..img.rows {
            let trow = Mat::from_rows(&[img.row(r).to_vec()], t.dim);
            let x0 = Mat::solve(&pi.mat, &trow, f).expect("top quotient is onto");
            let x = x0.mul(&m.rho(e), f);
            let (p, basis, _gen) =
                projective_with_basis(&algebra, label).expect("vertex exists");
            blocks.push(label.clone());
            block_modules.push(p);
            block_bases.push(basis);
            lifts.push(x.row(0).to_vec());
        }
    }
    if blocks.is_empty() {
        let z = Module::zero(algebra.clone());
        let map = Morphism::new(z.clone(), m.clone(), Mat::zero(0, m.dim));
        return Cover {
            module: z,
            map,
            blocks,
            block_dims: Vec::new(),
            block_bases,
            gens: Vec::new(),
        };
    }
    let (total, _inj, _proj) = direct_sum(&block_modules);
    let mut rows = Vec::new();
    for (bi, basis) in block_bases.iter().enumerate() {
        for r in 0..basis.rows {
            // image of the r-th basis path of this block: lift · ρ(path)
            let w = basis.row(r);
            let row = m.rho(w).apply(&lifts[bi], f);
            rows.push(row);
        }
    }
    let map_mat = Mat::from_rows(&rows, m.dim);
    let map = Morphism::new(total.clone(), m.clone(), map_mat);
    debug_assert!(map.is_epi(), "cover must be onto");
    let block_dims: Vec<usize> = block_bases.iter().map(|b| b.rows).collect();
    let mut gens = Vec::new();
    let mut at = 0usize;
    for (bi, basis) in block_bases.iter().enumerate() {
        let e = algebra
            .idempotent_vector(&blocks[bi])
            .expect("vertex exists");
        let g = Mat::solve(&basis.clone(), &Mat::from_rows(&[e], algebra.dim), f)
            .expect("generator lies in its block")
            .row(0)
            .to_vec();
        let mut full = vec![0u64; total.dim];
        for (k, &v) in g.iter().enumerate() {
            full[at + k] = v;
        }
        gens.push(full);
        at += basis.rows;
    }
    Cover {
        module: total,
        map,
        blocks,
        block_dims,
        block_bases,
        gens,
    }
}

/// The defining short exact sequence `0 → Ω(m) → P → m → 0` of the minimal
/// cover: returns `(cover, Ω(m), inclusion)`.
pub fn cover_sequence(m: &ModRef) -> (Cover, ModRef, Morphism) {
    let c = projective_cover(m);
    let (omega, incl) = kernel(&c.map);
    (c, omega, incl)
}

pub fn syzygy(m: &ModRef) -> ModRef {
    cover_sequence(m).1
}

pub fn syzygy_n(m: &ModRef, n: usize) -> ModRef {
    let mut cur = m.clone();
    for _ in 0..n {
        cur = syzygy(&cur);
    }
    cur
}

pub fn is_projective(m: &ModRef) -> bool {
    m.dim == 0 || syzygy(m).dim == 0
}

/// Least `n` with `Ω^n(m)` projective, or `ExceedsCap`.
pub fn pd(m: &ModRef, cap: usize) -> Result<usize> {
    let mut cur = m.clone();
    for n in 0..=cap {
        if is_projective(&cur) {
            return Ok(n);
        }
        cur = syzygy(&cur);
    }
    Err(Error::ExceedsCap(cap))
}

// ---------------------------------------------------------------------------
// hom spaces
// ---------------------------------------------------------------------------

/// Basis of `Hom(m, n)`, computed through a projective presentation of `m`:
/// a map from `P(v)` is a choice of element of `n·e_v`, and a map from the
/// cover descends to `m` exactly when it kills the relations.
pub fn hom_basis(m: &ModRef, n: &ModRef) -> Vec<Morphism> {
    assert!(same_algebra(&m.algebra, &n.algebra), "hom over one algebra");
    let f = &m.algebra.field;
    if m.dim == 0 || n.dim == 0 {
        return Vec::new();
    }
    let cover0 = projective_cover(m);
    let (_omega, incl) = kernel(&cover0.map);
    let cover1 = projective_cover(&incl.src);
    let d = cover1.map.then(&incl); // P1 → P0

    // parameter space: one element of n·e_v per block of P0
    let param_bases: Vec<Mat> = cover0
        .blocks
        .iter()
        .map(|v| {
            let e = m.algebra.idempotent_vector(v).expect("vertex exists");
            n.rho(&e).row_space_basis(f)
        })
        .collect();
    let d0: usize = param_bases.iter().map(|b| b.rows).sum();
    if d0 == 0 {
        return Vec::new();
    }
    let offsets: Vec<usize> = {
        let mut at = 0;
        let mut v = Vec::new();
        for bd in &cover0.block_dims {
            v.push(at);
            at += bd;
        }
        v
    };

    // constraint: for every generator of P1, the induced value in n is zero
    let n_constraints = cover1.gens.len();
    let mut cmat = Mat::zero(d0, n_constraints * n.dim);
    let mut prow = 0usize;
    for (bi, pbase) in param_bases.iter().enumerate() {
        for k in 0..pbase.rows {
            let nu = pbase.row(k);
            for (j, gen) in cover1.gens.iter().enumerate() {
                let u = d.mat.apply(gen, f); // in P0 coordinates
                // slice for block bi, mapped to algebra coordinates
                let slice = &u[offsets[bi]..offsets[bi] + cover0.block_dims[bi]];
                let w = cover0.block_bases[bi].apply(slice, f);
                let val = n.rho(&w).apply(nu, f);
                for (c, &x) in val.iter().enumerate() {
                    cmat.set(prow, j * n.dim + c, x);
                }
            }
            prow += 1;
        }
    }
    let sols = if n_constraints == 0 {
        Mat::identity(d0)
    } else {
        cmat.kernel_basis(f)
    };

    // reconstruct each solution as a morphism m → n
    let section = Mat::solve(&cover0.map.mat, &Mat::identity(m.dim), f)
        .expect("cover is onto, a section exists");
    let mut out = Vec::new();
    for s in 0..sols.rows {
        let params = sols.row(s);
        let mut psi = Mat::zero(cover0.module.dim, n.dim);
        let mut prow = 0usize;
        for (bi, pbase) in param_bases.iter().enumerate() {
            let mut nu = vec![0u64; n.dim];
            for k in 0..pbase.rows {
                let c = params[prow + k];
                if c != 0 {
                    for (t, &x) in pbase.row(k).iter().enumerate() {
                        nu[t] = f.add(nu[t], f.mul(c, x));
                    }
                }
            }
            prow += pbase.rows;
            for r in 0..cover0.block_dims[bi] {
                let w = cover0.block_bases[bi].row(r);
                let val = n.rho(w).apply(&nu, f);
                for (c, &x) in val.iter().enumerate() {
                    psi.set(offsets[bi] + r, c, x);
                }
            }
        }
        let phi = section.mul(&psi, f);
        out.push(Morphism::new(m.clone(), n.clone(), phi));
    }
    out
}

/// Largest submodule killed by every row of `ideal_rows` (vectors in the
/// algebra), as a submodule with inclusion.
pub fn annihilator_submodule(m: &ModRef, ideal_rows: &Mat) -> (ModRef, Morphism) {
    let f = &m.algebra.field;
    if ideal_rows.rows == 0 {
        return submodule(m, Mat::identity(m.dim));
    }
    let mats: Vec<Mat> = (0..ideal_rows.rows)
        .map(|i| m.rho(ideal_rows.row(i)))
        .collect();
    let mut stacked = mats[0].clone();
    for mm in &mats[1..] {
        stacked = stacked.hstack(mm);
    }
    let rows = stacked.kernel_basis(f).row_space_basis(f);
    submodule(m, rows)
}

// ---------------------------------------------------------------------------
// exact sequences
// ---------------------------------------------------------------------------

/// A verified short exact sequence `0 → A → B → C → 0`.
#[derive(Debug, Clone)]
pub struct ShortExact {
    pub f: Morphism,
    pub g: Morphism,
}

impl ShortExact {
    pub fn new(f: Morphism, g: Morphism) -> Result<Self> {
        if !same_module(&f.tgt, &g.src) {
            return Err(Error::NotExact("short exact: endpoints do not meet".into()));
        }
        let s = ShortExact { f, g };
        s.verify()?;
        Ok(s)
    }

    pub fn verify(&self) -> Result<()> {
        let fld = &self.f.src.algebra.field;
        if !self.f.is_mono() {
            return Err(Error::NotExact("left map is not injective".into()));
        }
        if !self.g.is_epi() {
            return Err(Error::NotExact("right map is not surjective".into()));
        }
        if !self.f.mat.mul(&self.g.mat, fld).is_zero() {
            return Err(Error::NotExact("composite is nonzero".into()));
        }
        if self.f.rank() + self.g.rank() != self.f.tgt.dim {
            return Err(Error::NotExact("image does not fill the kernel".into()));
        }
        Ok(())
    }

    pub fn sub(&self) -> &ModRef {
        &self.f.src
    }
    pub fn mid(&self) -> &ModRef {
        &self.f.tgt
    }
    pub fn quo(&self) -> &ModRef {
        &self.g.tgt
    }
}

/// A verified exact sequence `0 → C_k → … → C_0 → T → 0`, stored as its
/// maps in left-to-right order.
#[derive(Debug, Clone)]
pub struct ExactChain {
    pub maps: Vec<Morphism>,
}

impl ExactChain {
    pub fn new(maps: Vec<Morphism>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::NotExact("empty chain".into()));
        }
        let c = ExactChain { maps };
        c.verify()?;
        Ok(c)
    }

    pub fn verify(&self) -> Result<()> {
        let fld = &self.maps[0].src.algebra.field;
        for w in self.maps.windows(2) {
            if !same_module(&w[0].tgt, &w[1].src) {
                return Err(Error::NotExact("chain maps do not meet".into()));
            }
            if !w[0].mat.mul(&w[1].mat, fld).is_zero() {
                return Err(Error::NotExact("consecutive composite nonzero".into()));
            }
            if w[0].rank() + w[1].rank() != w[0].tgt.dim {
                return Err(Error::NotExact("exactness fails at an inner term".into()));
            }
        }
        if !self.maps[0].is_mono() {
            return Err(Error::NotExact("head map not injective".into()));
        }
        if !self.maps.last().unwrap().is_epi() {
            return Err(Error::NotExact("tail map not surjective".into()));
        }
        Ok(())
    }

    /// Sources of the maps: the terms `C_k, …, C_0`.
    pub fn internal_terms(&self) -> Vec<ModRef> {
        self.maps.iter().map(|m| m.src.clone()).collect()
    }

    pub fn head(&self) -> &ModRef {
        &self.maps[0].src
    }

    pub fn tail(&self) -> &ModRef {
        &self.maps.last().unwrap().tgt
    }

    /// Number of internal terms minus one: a chain `0 → U_m → … → U_0 → T → 0`
    /// has arity `m`.
    pub fn arity(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn from_ses(s: &ShortExact) -> Self {
        ExactChain {
            maps: vec![s.f.clone(), s.g.clone()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a2_presentation, build_from_presentation, cyclic3_rad_square_zero};
    use crate::field::Field;

    fn a2() -> Arc<Algebra> {
        build_from_presentation(&a2_presentation(), Field::default()).unwrap()
    }

    fn cyc3() -> Arc<Algebra> {
        build_from_presentation(&cyclic3_rad_square_zero(), Field::default()).unwrap()
    }

    #[test]
    fn regular_module_verifies() {
        let a = a2();
        let r = Module::regular(a);
        r.verify().unwrap();
        assert_eq!(r.dim, 3);
    }

    #[test]
    fn projective_dims_on_a2() {
        let a = a2();
        assert_eq!(projective(&a, "1").unwrap().dim, 2);
        assert_eq!(projective(&a, "2").unwrap().dim, 1);
        assert_eq!(simple(&a, "1").unwrap().dim, 1);
        assert_eq!(simple(&a, "2").unwrap().dim, 1);
        assert!(matches!(
            projective(&a, "nope"),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn sum_of_projectives_has_regular_dimension_vector() {
        let a = cyc3();
        let ps: Vec<ModRef> = a
            .vertex_labels()
            .iter()
            .map(|v| projective(&a, v).unwrap())
            .collect();
        let (sum, _, _) = direct_sum(&ps);
        let reg = Module::regular(a);
        assert_eq!(sum.dim, reg.dim);
        assert_eq!(sum.dimension_vector(), reg.dimension_vector());
    }

    #[test]
    fn top_of_projective_is_simple() {
        let a = a2();
        let p = projective(&a, "1").unwrap();
        let (t, pi) = top(&p);
        assert_eq!(t.dim, 1);
        pi.verify().unwrap();
        assert!(pi.is_epi());
    }

    #[test]
    fn top_of_regular_cyclic3_is_three_dimensional() {
        let a = cyc3();
        let (t, _) = top(&Module::regular(a));
        assert_eq!(t.dim, 3);
    }

    #[test]
    fn cover_of_zero_is_zero() {
        let a = a2();
        let z = Module::zero(a);
        let c = projective_cover(&z);
        assert_eq!(c.module.dim, 0);
    }

    #[test]
    fn cover_of_simple_is_projective_at_vertex() {
        let a = a2();
        let s = simple(&a, "1").unwrap();
        let c = projective_cover(&s);
        assert_eq!(c.module.dim, 2);
        assert_eq!(c.blocks, vec![String::from("1")]);
        c.map.verify().unwrap();
        assert!(c.map.is_epi());
    }

    #[test]
    fn cover_of_projective_is_iso() {
        let a = a2();
        let p = projective(&a, "1").unwrap();
        let c = projective_cover(&p);
        assert!(c.map.is_iso());
    }

    #[test]
    fn syzygy_facts_on_a2() {
        let a = a2();
        // Ω(S(1)) ≅ S(2) = P(2), so pd S(1) = 1
        let s1 = simple(&a, "1").unwrap();
        let o = syzygy(&s1);
        assert_eq!(o.dim, 1);
        assert!(is_projective(&o));
        assert_eq!(pd(&s1, 8).unwrap(), 1);
        assert_eq!(pd(&projective(&a, "1").unwrap(), 8).unwrap(), 0);
        // kernel of the cover of S(1) is one-dimensional at vertex 2
        let dv = o.dimension_vector();
        assert_eq!(dv, vec![("1".into(), 0), ("2".into(), 1)]);
    }

    #[test]
    fn syzygies_cycle_on_cyclic3() {
        let a = cyc3();
        let s1 = simple(&a, "1").unwrap();
        // Ω(S_t) ≅ S_{t+1}: one-dimensional at the next vertex round the cycle
        let mut cur = s1;
        for step in 0..6 {
            let next = syzygy(&cur);
            assert_eq!(next.dim, 1, "step {step}");
            cur = next;
        }
        assert!(matches!(
            pd(&simple(&a, "1").unwrap(), 16),
            Err(Error::ExceedsCap(16))
        ));
    }

    #[test]
    fn hom_dimension_matches_idempotent_rank() {
        let a = cyc3();
        let reg = Module::regular(a.clone());
        for v in a.vertex_labels() {
            let p = projective(&a, &v).unwrap();
            let h = hom_basis(&p, &reg);
            let e = a.idempotent_vector(&v).unwrap();
            assert_eq!(h.len(), reg.rho(&e).rank(&a.field));
            for m in &h {
                m.verify().unwrap();
            }
        }
    }

    #[test]
    fn hom_between_distinct_simples_vanishes_on_a2() {
        let a = a2();
        let s1 = simple(&a, "1").unwrap();
        let s2 = simple(&a, "2").unwrap();
        assert!(hom_basis(&s1, &s2).is_empty());
        assert!(hom_basis(&s2, &s1).is_empty());
    }

    #[test]
    fn identity_lies_in_end_span() {
        let a = a2();
        let p = projective(&a, "1").unwrap();
        let h = hom_basis(&p, &p);
        assert_eq!(h.len(), 1);
        // End(P(1)) = k, so the basis element is a scalar multiple of the identity
        let m = &h[0].mat;
        let c = m.get(0, 0);
        assert!(c != 0);
        assert_eq!(m.scale(a.field.inv(c), &a.field), Mat::identity(2));
    }

    #[test]
    fn kernel_cokernel_of_identity_and_cover() {
        let a = a2();
        let p = projective(&a, "1").unwrap();
        let id = Morphism::identity(&p);
        assert_eq!(kernel(&id).0.dim, 0);
        assert_eq!(cokernel(&id).0.dim, 0);
        let s1 = simple(&a, "1").unwrap();
        let c = projective_cover(&s1);
        let (k, incl) = kernel(&c.map);
        assert_eq!(k.dim, 1);
        incl.verify().unwrap();
    }

    #[test]
    fn pullback_over_zero_is_direct_sum() {
        let a = a2();
        let m = projective(&a, "1").unwrap();
        let n = simple(&a, "2").unwrap();
        let z = Module::zero(a);
        let f = Morphism::zero(m.clone(), z.clone());
        let g = Morphism::zero(n.clone(), z.clone());
        let (pb, px, py) = pullback(&f, &g);
        assert_eq!(pb.dim, m.dim + n.dim);
        assert!(px.is_epi());
        assert!(py.is_epi());
    }

    #[test]
    fn short_exact_verifies_cover_sequence() {
        let a = a2();
        let s1 = simple(&a, "1").unwrap();
        let (c, _omega, incl) = cover_sequence(&s1);
        let ses = ShortExact::new(incl, c.map).unwrap();
        assert_eq!(ses.mid().dim, ses.sub().dim + ses.quo().dim);
    }

    #[test]
    fn exact_chain_rejects_non_exact() {
        let a = a2();
        let p = projective(&a, "1").unwrap();
        let id = Morphism::identity(&p);
        // 0 → P → P → P → 0 with identities is not exact in the middle
        assert!(ExactChain::new(vec![id.clone(), id]).is_err());
    }

    #[test]
    fn annihilator_of_radical_is_socle_like() {
        let a = a2();
        let p = projective(&a, "1").unwrap();
        let rad = a.radical_matrix();
        let (soc, _) = annihilator_submodule(&p, &rad);
        assert_eq!(soc.dim, 1);
    }
}
