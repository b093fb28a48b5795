//! Finite-dimensional basic split algebras over `F_p`.
//!
//! Algebras are stored by structure constants together with distinguished
//! primitive orthogonal idempotents and a radical basis. Constructors cover
//! bound quiver algebras (basis enumeration under a declared nilpotency
//! bound), corner algebras `eΛe`, quotients `Λ/ΛeΛ`, opposites, tensor
//! products and Morita context rings with zero crossing products.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::Mat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One summand of a relation: a coefficient and a composable arrow sequence.
#[derive(Debug, Clone)]
pub struct RelationTerm {
    pub coeff: u64,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Vec<RelationTerm>>,
    pub nilpotency_bound: usize,
}

/// A basis path of the quotient path algebra: start vertex plus arrow indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisPath {
    pub source: usize,
    pub arrows: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct QuiverInfo {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub basis_paths: Vec<BasisPath>,
}

#[derive(Debug, Clone)]
pub struct MoritaInfo {
    pub a: Arc<Algebra>,
    pub b: Arc<Algebra>,
    /// `(A,B)`-bimodule sitting in the upper right corner.
    pub n: BimoduleData,
    /// `(B,A)`-bimodule sitting in the lower left corner.
    pub m: BimoduleData,
}

impl MoritaInfo {
    pub fn a_dim(&self) -> usize {
        self.a.dim
    }
    pub fn n_offset(&self) -> usize {
        self.a.dim
    }
    pub fn m_offset(&self) -> usize {
        self.a.dim + self.n.dim
    }
    pub fn b_offset(&self) -> usize {
        self.a.dim + self.n.dim + self.m.dim
    }
}

#[derive(Debug, Clone)]
pub enum Provenance {
    Quiver(QuiverInfo),
    Corner,
    Quotient,
    Opposite,
    Tensor,
    Morita(MoritaInfo),
}

/// A basic split algebra by structure constants.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    /// `mult[i][j]` = coordinates of `b_i · b_j`.
    pub mult: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
    /// Primitive orthogonal idempotents, one per vertex label.
    pub idempotents: Vec<(String, Vec<u64>)>,
    pub radical_basis: Vec<Vec<u64>>,
    pub provenance: Provenance,
}

impl Algebra {
    pub fn is_zero_algebra(&self) -> bool {
        self.dim == 0
    }

    pub fn vertex_labels(&self) -> Vec<String> {
        self.idempotents.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn idempotent_vector(&self, label: &str) -> Result<Vec<u64>> {
        self.idempotents
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Sum of the vertex idempotents named in `verts`.
    pub fn idempotent_sum(&self, verts: &[String]) -> Result<Vec<u64>> {
        let f = &self.field;
        let mut e = vec![0u64; self.dim];
        for v in verts {
            let ev = self.idempotent_vector(v)?;
            for i in 0..self.dim {
                e[i] = f.add(e[i], ev[i]);
            }
        }
        Ok(e)
    }

    pub fn mul_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut out = vec![0u64; self.dim];
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if y[j] == 0 {
                    continue;
                }
                let c = f.mul(x[i], y[j]);
                for (k, &m) in self.mult[i][j].iter().enumerate() {
                    if m != 0 {
                        out[k] = f.add(out[k], f.mul(c, m));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ x·v` acting on row vectors (row `j` is `x · b_j`).
    pub fn left_mult_matrix(&self, x: &[u64]) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let mut unit = vec![0u64; self.dim];
            unit[j] = 1;
            let row = self.mul_vec(x, &unit);
            for k in 0..self.dim {
                m.set(j, k, row[k]);
            }
        }
        m
    }

    /// Matrix of `v ↦ v·x` acting on row vectors (row `j` is `b_j · x`).
    pub fn right_mult_matrix(&self, x: &[u64]) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let mut unit = vec![0u64; self.dim];
            unit[j] = 1;
            let row = self.mul_vec(&unit, x);
            for k in 0..self.dim {
                m.set(j, k, row[k]);
            }
        }
        m
    }

    pub fn radical_matrix(&self) -> Mat {
        Mat::from_rows(&self.radical_basis, self.dim)
    }

    /// Full invariant suite: associativity, unit, idempotent axioms, radical
    /// ideal property and nilpotency, split basic dimension count.
    pub fn verify(&self) -> Result<()> {
        let f = &self.field;
        let d = self.dim;
        if d == 0 {
            return Ok(());
        }
        // unit acts as identity
        for i in 0..d {
            let mut unit_i = vec![0u64; d];
            unit_i[i] = 1;
            if self.mul_vec(&self.unit, &unit_i) != unit_i
                || self.mul_vec(&unit_i, &self.unit) != unit_i
            {
                return Err(Error::InvariantViolation(format!(
                    "unit fails on basis element {i}"
                )));
            }
        }
        // associativity on basis triples
        for i in 0..d {
            for j in 0..d {
                let ij = &self.mult[i][j];
                for k in 0..d {
                    let mut unit_k = vec![0u64; d];
                    unit_k[k] = 1;
                    let left = self.mul_vec(ij, &unit_k);
                    let jk = &self.mult[j][k];
                    let mut right = vec![0u64; d];
                    for (m, &c) in jk.iter().enumerate() {
                        if c != 0 {
                            for (t, &v) in self.mult[i][m].iter().enumerate() {
                                if v != 0 {
                                    right[t] = f.add(right[t], f.mul(c, v));
                                }
                            }
                        }
                    }
                    if left != right {
                        return Err(Error::InvariantViolation(format!(
                            "associativity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        // idempotent axioms
        for (a, (la, ea)) in self.idempotents.iter().enumerate() {
            if self.mul_vec(ea, ea) != *ea {
                return Err(Error::InvariantViolation(format!("{la} is not idempotent")));
            }
            for (b, (_, eb)) in self.idempotents.iter().enumerate() {
                if a != b && self.mul_vec(ea, eb).iter().any(|&x| x != 0) {
                    return Err(Error::InvariantViolation("idempotents not orthogonal".into()));
                }
            }
        }
        let mut s = vec![0u64; d];
        for (_, e) in &self.idempotents {
            for i in 0..d {
                s[i] = f.add(s[i], e[i]);
            }
        }
        if s != self.unit {
            return Err(Error::InvariantViolation(
                "idempotents do not sum to the unit".into(),
            ));
        }
        // radical: two-sided ideal, nilpotent, split basic codimension
        let rad = self.radical_matrix();
        let (rref, pivots) = rad.rref(f);
        if pivots.len() != self.radical_basis.len() {
            return Err(Error::InvariantViolation("radical basis not independent".into()));
        }
        for i in 0..d {
            let mut unit_i = vec![0u64; d];
            unit_i[i] = 1;
            for r in &self.radical_basis {
                for prod in [self.mul_vec(&unit_i, r), self.mul_vec(r, &unit_i)] {
                    if Mat::normal_form(&prod, &rref, &pivots, f).iter().any(|&x| x != 0) {
                        return Err(Error::InvariantViolation(
                            "radical is not a two-sided ideal".into(),
                        ));
                    }
                }
            }
        }
        let mut power = rad.clone();
        for _ in 0..d + 1 {
            if power.rows == 0 {
                break;
            }
            let mut next_rows = Vec::new();
            for i in 0..power.rows {
                for r in &self.radical_basis {
                    next_rows.push(self.mul_vec(power.row(i), r));
                }
            }
            power = Mat::from_rows(&next_rows, d).row_space_basis(f);
        }
        if power.rows != 0 {
            return Err(Error::InvariantViolation("radical is not nilpotent".into()));
        }
        if d - self.radical_basis.len() != self.idempotents.len() {
            return Err(Error::InvariantViolation(format!(
                "not split basic: dim {} - rad {} != {} idempotents",
                d,
                self.radical_basis.len(),
                self.idempotents.len()
            )));
        }
        Ok(())
    }
}

/// An algebra homomorphism given by its matrix on basis elements.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Mat,
}

impl AlgebraMap {
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.matrix.apply(x, &self.source.field)
    }

    /// Multiplicativity plus idempotent compatibility. The image of the
    /// source unit must be an idempotent (the unit itself for projections).
    pub fn verify(&self) -> Result<()> {
        let f = &self.source.field;
        let d = self.source.dim;
        for i in 0..d {
            for j in 0..d {
                let mut ui = vec![0u64; d];
                ui[i] = 1;
                let mut uj = vec![0u64; d];
                uj[j] = 1;
                let lhs = self.apply(&self.source.mul_vec(&ui, &uj));
                let rhs = self
                    .target
                    .mul_vec(&self.apply(&ui), &self.apply(&uj));
                if lhs != rhs {
                    return Err(Error::InvariantViolation(format!(
                        "algebra map not multiplicative at ({i},{j})"
                    )));
                }
            }
        }
        let u = self.apply(&self.source.unit);
        if self.target.mul_vec(&u, &u) != u {
            return Err(Error::InvariantViolation(
                "image of unit is not idempotent".into(),
            ));
        }
        for (l, e) in &self.source.idempotents {
            let img = self.apply(e);
            if self.target.mul_vec(&img, &img) != img {
                return Err(Error::InvariantViolation(format!(
                    "idempotent {l} does not map to an idempotent"
                )));
            }
        }
        let _ = f;
        Ok(())
    }
}

/// Bimodule data: a space with commuting left and right algebra actions.
///
/// Actions are stored as row-convention matrices: `left_action[i]` realizes
/// `x ↦ bᵢ·x` and `right_action[i]` realizes `x ↦ x·bᵢ`.
#[derive(Debug, Clone)]
pub struct BimoduleData {
    pub left_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    pub dim: usize,
    pub left_action: Vec<Mat>,
    pub right_action: Vec<Mat>,
}

impl BimoduleData {
    pub fn new(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Mat>,
        right_action: Vec<Mat>,
    ) -> Result<Self> {
        let b = BimoduleData {
            left_algebra,
            right_algebra,
            dim,
            left_action,
            right_action,
        };
        b.verify()?;
        Ok(b)
    }

    pub fn zero(left_algebra: Arc<Algebra>, right_algebra: Arc<Algebra>) -> Self {
        let la = (0..left_algebra.dim).map(|_| Mat::zero(0, 0)).collect();
        let ra = (0..right_algebra.dim).map(|_| Mat::zero(0, 0)).collect();
        BimoduleData {
            left_algebra,
            right_algebra,
            dim: 0,
            left_action: la,
            right_action: ra,
        }
    }

    pub fn left(&self, x: &[u64]) -> Mat {
        lin_combo(&self.left_action, x, self.dim, &self.left_algebra.field)
    }

    pub fn right(&self, x: &[u64]) -> Mat {
        lin_combo(&self.right_action, x, self.dim, &self.right_algebra.field)
    }

    pub fn verify(&self) -> Result<()> {
        let f = &self.left_algebra.field;
        if f.modulus() != self.right_algebra.field.modulus() {
            return Err(Error::BimoduleMismatch("fields differ".into()));
        }
        if self.left_action.len() != self.left_algebra.dim
            || self.right_action.len() != self.right_algebra.dim
        {
            return Err(Error::BimoduleMismatch("action counts differ from dims".into()));
        }
        if self.dim == 0 {
            return Ok(());
        }
        let id = Mat::identity(self.dim);
        if self.left(&self.left_algebra.unit) != id || self.right(&self.right_algebra.unit) != id {
            return Err(Error::BimoduleMismatch("units do not act as identity".into()));
        }
        // left is reversed-multiplicative, right is multiplicative
        let la = &self.left_algebra;
        for i in 0..la.dim {
            for j in 0..la.dim {
                let prod = self.left(&la.mult[i][j]);
                let composed = self.left_action[j].mul(&self.left_action[i], f);
                if prod != composed {
                    return Err(Error::BimoduleMismatch(format!(
                        "left action not an algebra action at ({i},{j})"
                    )));
                }
            }
        }
        let ra = &self.right_algebra;
        for i in 0..ra.dim {
            for j in 0..ra.dim {
                let prod = self.right(&ra.mult[i][j]);
                let composed = self.right_action[i].mul(&self.right_action[j], f);
                if prod != composed {
                    return Err(Error::BimoduleMismatch(format!(
                        "right action not multiplicative at ({i},{j})"
                    )));
                }
            }
        }
        for l in &self.left_action {
            for r in &self.right_action {
                if l.mul(r, f) != r.mul(l, f) {
                    return Err(Error::BimoduleMismatch("actions do not commute".into()));
                }
            }
        }
        Ok(())
    }
}

fn lin_combo(mats: &[Mat], x: &[u64], dim: usize, f: &Field) -> Mat {
    let mut out = Mat::zero(dim, dim);
    for (i, &c) in x.iter().enumerate() {
        if c != 0 {
            out = out.add(&mats[i].scale(c, f), f);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// bound quiver algebras
// ---------------------------------------------------------------------------

struct PathTable {
    /// All paths of length <= bound, columns ordered by length descending.
    paths: Vec<BasisPath>,
    index: BTreeMap<(usize, Vec<usize>), usize>,
    targets: Vec<usize>,
}

impl PathTable {
    fn target_of(arrows: &[ArrowDecl], p: &BasisPath) -> usize {
        p.arrows.last().map(|&a| arrows[a].target).unwrap_or(p.source)
    }

    fn build(q: &QuiverPresentation) -> PathTable {
        let mut by_len: Vec<Vec<BasisPath>> = vec![Vec::new()];
        for v in 0..q.vertices.len() {
            by_len[0].push(BasisPath {
                source: v,
                arrows: Vec::new(),
            });
        }
        for len in 1..=q.nilpotency_bound {
            let mut next = Vec::new();
            for p in &by_len[len - 1] {
                let t = Self::target_of(&q.arrows, p);
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(BasisPath {
                            source: p.source,
                            arrows,
                        });
                    }
                }
            }
            by_len.push(next);
        }
        let mut paths = Vec::new();
        for len_paths in by_len.into_iter().rev() {
            paths.extend(len_paths);
        }
        let mut index = BTreeMap::new();
        let mut targets = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            index.insert((p.source, p.arrows.clone()), i);
            targets.push(Self::target_of(&q.arrows, p));
        }
        PathTable {
            paths,
            index,
            targets,
        }
    }

    fn lookup(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }
}

/// Build the bound quiver algebra `kQ/I` under the declared nilpotency bound.
///
/// The basis is the set of path classes not rewritten by the truncated ideal
/// span; the bound is validated, not trusted: every path of length exactly
/// `L` must land in the ideal, and no vertex or arrow class may collapse.
pub fn build_from_presentation(q: &QuiverPresentation, field: Field) -> Result<Arc<Algebra>> {
    let f = &field;
    let nv = q.vertices.len();
    if nv == 0 {
        return Err(Error::NonAdmissible("quiver has no vertices".into()));
    }
    if q.nilpotency_bound == 0 {
        return Err(Error::NonAdmissible("nilpotency bound must be positive".into()));
    }
    for a in &q.arrows {
        if a.source >= nv || a.target >= nv {
            return Err(Error::UnknownVertex(a.name.clone()));
        }
    }
    // validate relations: nonempty, parallel, composable, summand length >= 2
    for (ri, rel) in q.relations.iter().enumerate() {
        if rel.is_empty() {
            return Err(Error::RelationEndpointMismatch(ri, "empty relation".into()));
        }
        let mut endpoints: Option<(usize, usize)> = None;
        for term in rel {
            if term.path.len() < 2 {
                return Err(Error::RelationEndpointMismatch(
                    ri,
                    "summand shorter than two arrows cannot generate an admissible ideal".into(),
                ));
            }
            let mut at = None;
            for &ai in &term.path {
                if ai >= q.arrows.len() {
                    return Err(Error::RelationEndpointMismatch(ri, "unknown arrow".into()));
                }
                let a = &q.arrows[ai];
                if let Some(prev) = at {
                    if prev != a.source {
                        return Err(Error::RelationEndpointMismatch(
                            ri,
                            format!("arrows do not compose at {}", a.name),
                        ));
                    }
                }
                at = Some(a.target);
            }
            let src = q.arrows[term.path[0]].source;
            let tgt = at.unwrap();
            match endpoints {
                None => endpoints = Some((src, tgt)),
                Some(e) => {
                    if e != (src, tgt) {
                        return Err(Error::RelationEndpointMismatch(
                            ri,
                            "summands are not parallel".into(),
                        ));
                    }
                }
            }
        }
    }

    let table = PathTable::build(q);
    let n_paths = table.paths.len();
    let bound = q.nilpotency_bound;

    // span of the ideal inside paths of length <= bound
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for rel in &q.relations {
        let src = q.arrows[rel[0].path[0]].source;
        let tgt = {
            let p = rel[0].path.last().unwrap();
            q.arrows[*p].target
        };
        for (ui, u) in table.paths.iter().enumerate() {
            if table.targets[ui] != src {
                continue;
            }
            for v in table.paths.iter() {
                if v.source != tgt {
                    continue;
                }
                let minlen = rel.iter().map(|t| t.path.len()).min().unwrap();
                if u.arrows.len() + v.arrows.len() + minlen > bound {
                    continue;
                }
                let mut row = vec![0u64; n_paths];
                let mut nonzero = false;
                for term in rel {
                    let total = u.arrows.len() + term.path.len() + v.arrows.len();
                    if total > bound {
                        continue;
                    }
                    let mut arrows = u.arrows.clone();
                    arrows.extend_from_slice(&term.path);
                    arrows.extend_from_slice(&v.arrows);
                    let idx = table
                        .lookup(u.source, &arrows)
                        .expect("composable product path must be enumerated");
                    row[idx] = f.add(row[idx], term.coeff % f.modulus());
                    nonzero = true;
                }
                if nonzero && row.iter().any(|&x| x != 0) {
                    gens.push(row);
                }
            }
        }
    }
    let ideal = Mat::from_rows(&gens, n_paths);
    let (rref, pivots) = ideal.rref(f);
    let pivot_set: alloc::collections::BTreeSet<usize> = pivots.iter().copied().collect();

    // admissibility: every path of length `bound` reduces to zero,
    // and no vertex or arrow class collapses
    for (i, p) in table.paths.iter().enumerate() {
        let mut unit = vec![0u64; n_paths];
        unit[i] = 1;
        let nf = Mat::normal_form(&unit, &rref, &pivots, f);
        let is_zero = nf.iter().all(|&x| x == 0);
        if p.arrows.len() == bound && !is_zero {
            return Err(Error::NonAdmissible(format!(
                "path of length {bound} not in the relation ideal: {}",
                path_label(q, p)
            )));
        }
        if p.arrows.len() <= 1 && is_zero {
            return Err(Error::NonAdmissible(format!(
                "class of {} collapses to zero",
                path_label(q, p)
            )));
        }
    }

    // quotient basis: non-pivot columns, reordered by ascending length
    let mut basis_cols: Vec<usize> = (0..n_paths)
        .filter(|i| !pivot_set.contains(i) && table.paths[*i].arrows.len() < bound)
        .collect();
    basis_cols.sort_by_key(|&i| (table.paths[i].arrows.len(), i));
    let dim = basis_cols.len();
    let col_of_basis: Vec<usize> = basis_cols.clone();
    let mut basis_of_col: BTreeMap<usize, usize> = BTreeMap::new();
    for (bi, &c) in col_of_basis.iter().enumerate() {
        basis_of_col.insert(c, bi);
    }

    let to_coords = |nf: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; dim];
        for (c, &bi) in &basis_of_col {
            out[bi] = nf[*c];
        }
        out
    };

    // structure constants by concatenation + reduction
    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    for (bi, &ci) in col_of_basis.iter().enumerate() {
        let pi = &table.paths[ci];
        for (bj, &cj) in col_of_basis.iter().enumerate() {
            let pj = &table.paths[cj];
            if table.targets[ci] != pj.source {
                continue;
            }
            let total = pi.arrows.len() + pj.arrows.len();
            if total >= bound {
                continue; // lies in the ideal
            }
            let mut arrows = pi.arrows.clone();
            arrows.extend_from_slice(&pj.arrows);
            let idx = table.lookup(pi.source, &arrows).unwrap();
            let mut unit = vec![0u64; n_paths];
            unit[idx] = 1;
            let nf = Mat::normal_form(&unit, &rref, &pivots, f);
            mult[bi][bj] = to_coords(&nf);
        }
    }

    let mut idempotents = Vec::new();
    let mut unit = vec![0u64; dim];
    let mut radical_basis = Vec::new();
    let mut basis_labels = Vec::new();
    let mut basis_paths = Vec::new();
    for (bi, &c) in col_of_basis.iter().enumerate() {
        let p = &table.paths[c];
        basis_labels.push(path_label(q, p));
        basis_paths.push(p.clone());
        if p.arrows.is_empty() {
            let mut e = vec![0u64; dim];
            e[bi] = 1;
            idempotents.push((q.vertices[p.source].clone(), e));
            unit[bi] = 1;
        } else {
            let mut r = vec![0u64; dim];
            r[bi] = 1;
            radical_basis.push(r);
        }
    }

    let alg = Algebra {
        field,
        dim,
        basis_labels,
        mult,
        unit,
        idempotents,
        radical_basis,
        provenance: Provenance::Quiver(QuiverInfo {
            vertices: q.vertices.clone(),
            arrows: q.arrows.clone(),
            basis_paths,
        }),
    };
    alg.verify()?;
    Ok(Arc::new(alg))
}

fn path_label(q: &QuiverPresentation, p: &BasisPath) -> String {
    if p.arrows.is_empty() {
        q.vertices[p.source].clone()
    } else {
        let names: Vec<&str> = p.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect();
        names.join("*")
    }
}

// ---------------------------------------------------------------------------
// derived algebras
// ---------------------------------------------------------------------------

/// Basis of the two-sided ideal `ΛeΛ` as rows inside `Λ`.
pub fn ideal_basis(a: &Algebra, verts: &[String]) -> Result<Mat> {
    let f = &a.field;
    let e = a.idempotent_sum(verts)?;
    let mut rows = Vec::new();
    for i in 0..a.dim {
        let mut ui = vec![0u64; a.dim];
        ui[i] = 1;
        let left = a.mul_vec(&ui, &e);
        for j in 0..a.dim {
            let mut uj = vec![0u64; a.dim];
            uj[j] = 1;
            rows.push(a.mul_vec(&left, &uj));
        }
    }
    Ok(Mat::from_rows(&rows, a.dim).row_space_basis(f))
}

/// The corner algebra `eΛe` with its inclusion into `Λ`.
pub fn corner(a: &Arc<Algebra>, verts: &[String]) -> Result<(Arc<Algebra>, AlgebraMap)> {
    if verts.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let f = &a.field;
    let e = a.idempotent_sum(verts)?;
    let mut rows = Vec::new();
    for i in 0..a.dim {
        let mut ui = vec![0u64; a.dim];
        ui[i] = 1;
        rows.push(a.mul_vec(&a.mul_vec(&e, &ui), &e));
    }
    let basis = Mat::from_rows(&rows, a.dim).row_space_basis(f);
    let dim = basis.rows;

    let express = |v: &[u64]| -> Vec<u64> {
        Mat::solve(&basis, &Mat::from_rows(&[v.to_vec()], a.dim), f)
            .expect("corner element must lie in the corner span")
            .row(0)
            .to_vec()
    };

    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            mult[i][j] = express(&a.mul_vec(basis.row(i), basis.row(j)));
        }
    }
    let unit = express(&e);
    let mut idempotents = Vec::new();
    for v in verts {
        idempotents.push((v.clone(), express(&a.idempotent_vector(v)?)));
    }
    // rad(eΛe) = e·rad(Λ)·e
    let mut rad_rows = Vec::new();
    for r in &a.radical_basis {
        rad_rows.push(express(&a.mul_vec(&a.mul_vec(&e, r), &e)));
    }
    let radical = Mat::from_rows(&rad_rows, dim).row_space_basis(f);

    let labels = (0..dim).map(|i| format!("c{i}")).collect();
    let alg = Algebra {
        field: a.field,
        dim,
        basis_labels: labels,
        mult,
        unit,
        idempotents,
        radical_basis: radical.rows_vec(),
        provenance: Provenance::Corner,
    };
    alg.verify()?;
    let alg = Arc::new(alg);
    let map = AlgebraMap {
        source: alg.clone(),
        target: a.clone(),
        matrix: basis,
    };
    Ok((alg, map))
}

/// The quotient `Λ/ΛeΛ` with its projection.
pub fn quotient_by_idempotent_ideal(
    a: &Arc<Algebra>,
    verts: &[String],
) -> Result<(Arc<Algebra>, AlgebraMap)> {
    let f = &a.field;
    if verts.is_empty() {
        let map = AlgebraMap {
            source: a.clone(),
            target: a.clone(),
            matrix: Mat::identity(a.dim),
        };
        return Ok((a.clone(), map));
    }
    let ideal = ideal_basis(a, verts)?;
    let (rref, pivots) = ideal.rref(f);
    let pivot_set: alloc::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free_cols: Vec<usize> = (0..a.dim).filter(|c| !pivot_set.contains(c)).collect();
    let dim = free_cols.len();

    let project = |v: &[u64]| -> Vec<u64> {
        let nf = Mat::normal_form(v, &rref, &pivots, f);
        free_cols.iter().map(|&c| nf[c]).collect()
    };
    // section: unit vectors at the free columns
    let section = Mat::from_fn(dim, a.dim, |i, j| u64::from(free_cols[i] == j));

    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            mult[i][j] = project(&a.mul_vec(section.row(i), section.row(j)));
        }
    }
    let unit = project(&a.unit);
    let mut idempotents = Vec::new();
    for (l, e) in &a.idempotents {
        if verts.contains(l) {
            continue;
        }
        let img = project(e);
        if img.iter().any(|&x| x != 0) {
            idempotents.push((l.clone(), img));
        }
    }
    let mut rad_rows = Vec::new();
    for r in &a.radical_basis {
        rad_rows.push(project(r));
    }
    let radical = Mat::from_rows(&rad_rows, dim).row_space_basis(f);

    let labels = (0..dim)
        .map(|i| format!("q:{}", a.basis_labels[free_cols[i]]))
        .collect();
    let alg = Algebra {
        field: a.field,
        dim,
        basis_labels: labels,
        mult,
        unit,
        idempotents,
        radical_basis: radical.rows_vec(),
        provenance: Provenance::Quotient,
    };
    alg.verify()?;
    let alg = Arc::new(alg);
    let proj = Mat::from_fn(a.dim, dim, |i, j| {
        let mut unit_i = vec![0u64; a.dim];
        unit_i[i] = 1;
        project(&unit_i)[j]
    });
    let map = AlgebraMap {
        source: a.clone(),
        target: alg.clone(),
        matrix: proj,
    };
    Ok((alg, map))
}

/// The opposite algebra: structure constants transposed.
pub fn opposite(a: &Arc<Algebra>) -> Arc<Algebra> {
    let mut mult = vec![vec![vec![0u64; a.dim]; a.dim]; a.dim];
    for i in 0..a.dim {
        for j in 0..a.dim {
            mult[i][j] = a.mult[j][i].clone();
        }
    }
    Arc::new(Algebra {
        field: a.field,
        dim: a.dim,
        basis_labels: a.basis_labels.clone(),
        mult,
        unit: a.unit.clone(),
        idempotents: a.idempotents.clone(),
        radical_basis: a.radical_basis.clone(),
        provenance: Provenance::Opposite,
    })
}

/// Tensor product of algebras over the common ground field.
pub fn tensor(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    let f = &a.field;
    if f.modulus() != b.field.modulus() {
        return Err(Error::BimoduleMismatch("tensor over different fields".into()));
    }
    let (da, db) = (a.dim, b.dim);
    let dim = da * db;
    let at = |i: usize, j: usize| i * db + j;
    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    for i1 in 0..da {
        for j1 in 0..db {
            for i2 in 0..da {
                for j2 in 0..db {
                    let va = &a.mult[i1][i2];
                    let vb = &b.mult[j1][j2];
                    let out = &mut mult[at(i1, j1)][at(i2, j2)];
                    for (m, &x) in va.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (n, &y) in vb.iter().enumerate() {
                            if y != 0 {
                                out[at(m, n)] = f.mul(x, y);
                            }
                        }
                    }
                }
            }
        }
    }
    let kron_vec = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; dim];
        for (i, &xv) in x.iter().enumerate() {
            if xv == 0 {
                continue;
            }
            for (j, &yv) in y.iter().enumerate() {
                if yv != 0 {
                    out[at(i, j)] = f.mul(xv, yv);
                }
            }
        }
        out
    };
    let unit = kron_vec(&a.unit, &b.unit);
    let mut idempotents = Vec::new();
    for (la, ea) in &a.idempotents {
        for (lb, eb) in &b.idempotents {
            idempotents.push((format!("{la}@{lb}"), kron_vec(ea, eb)));
        }
    }
    // rad(a⊗b) = rad(a)⊗b + a⊗rad(b)
    let mut rad_rows = Vec::new();
    for r in &a.radical_basis {
        for j in 0..db {
            let mut uj = vec![0u64; db];
            uj[j] = 1;
            rad_rows.push(kron_vec(r, &uj));
        }
    }
    for i in 0..da {
        let mut ui = vec![0u64; da];
        ui[i] = 1;
        for r in &b.radical_basis {
            rad_rows.push(kron_vec(&ui, r));
        }
    }
    let radical = Mat::from_rows(&rad_rows, dim).row_space_basis(f);
    let mut basis_labels = Vec::new();
    for i in 0..da {
        for j in 0..db {
            basis_labels.push(format!("{}@{}", a.basis_labels[i], b.basis_labels[j]));
        }
    }
    let alg = Algebra {
        field: a.field,
        dim,
        basis_labels,
        mult,
        unit,
        idempotents,
        radical_basis: radical.rows_vec(),
        provenance: Provenance::Tensor,
    };
    alg.verify()?;
    Ok(Arc::new(alg))
}

/// Morita context ring with zero crossing products: the space
/// `A ⊕ N ⊕ M ⊕ B` with multiplication `(a,n,m,b)(a',n',m',b') =
/// (aa', an'+nb', ma'+bm', bb')`.
pub fn morita_ring(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    n: &BimoduleData,
    m: &BimoduleData,
) -> Result<Arc<Algebra>> {
    let f = &a.field;
    if f.modulus() != b.field.modulus() {
        return Err(Error::BimoduleMismatch("fields differ".into()));
    }
    if !Arc::ptr_eq(&n.left_algebra, a)
        || !Arc::ptr_eq(&n.right_algebra, b)
        || !Arc::ptr_eq(&m.left_algebra, b)
        || !Arc::ptr_eq(&m.right_algebra, a)
    {
        return Err(Error::BimoduleMismatch(
            "expected an (A,B)-bimodule N and a (B,A)-bimodule M".into(),
        ));
    }
    n.verify()?;
    m.verify()?;
    let (da, dn, dm, db) = (a.dim, n.dim, m.dim, b.dim);
    let dim = da + dn + dm + db;
    let (on, om, ob) = (da, da + dn, da + dn + dm);

    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    // A·A, A·N, N·B, M·A, B·M, B·B; everything else is zero
    for i in 0..da {
        for j in 0..da {
            for (k, &v) in a.mult[i][j].iter().enumerate() {
                mult[i][j][k] = v;
            }
        }
        let mut ui = vec![0u64; da];
        ui[i] = 1;
        let ln = n.left(&ui);
        for j in 0..dn {
            for k in 0..dn {
                mult[i][on + j][on + k] = ln.get(j, k);
            }
        }
    }
    for i in 0..dn {
        for j in 0..db {
            let mut uj = vec![0u64; db];
            uj[j] = 1;
            let rn = n.right(&uj);
            for k in 0..dn {
                mult[on + i][ob + j][on + k] = rn.get(i, k);
            }
        }
    }
    for i in 0..dm {
        for j in 0..da {
            let mut uj = vec![0u64; da];
            uj[j] = 1;
            let rm = m.right(&uj);
            for k in 0..dm {
                mult[om + i][j][om + k] = rm.get(i, k);
            }
        }
    }
    for i in 0..db {
        let mut ui = vec![0u64; db];
        ui[i] = 1;
        let lm = m.left(&ui);
        for j in 0..dm {
            for k in 0..dm {
                mult[ob + i][om + j][om + k] = lm.get(j, k);
            }
        }
        for j in 0..db {
            for (k, &v) in b.mult[i][j].iter().enumerate() {
                mult[ob + i][ob + j][ob + k] = v;
            }
        }
    }

    let mut unit = vec![0u64; dim];
    for (k, &v) in a.unit.iter().enumerate() {
        unit[k] = v;
    }
    for (k, &v) in b.unit.iter().enumerate() {
        unit[ob + k] = v;
    }
    let mut idempotents = Vec::new();
    for (l, e) in &a.idempotents {
        let mut v = vec![0u64; dim];
        v[..da].copy_from_slice(e);
        idempotents.push((format!("a:{l}"), v));
    }
    for (l, e) in &b.idempotents {
        let mut v = vec![0u64; dim];
        v[ob..].copy_from_slice(e);
        idempotents.push((format!("b:{l}"), v));
    }
    let mut rad_rows = Vec::new();
    for r in &a.radical_basis {
        let mut v = vec![0u64; dim];
        v[..da].copy_from_slice(r);
        rad_rows.push(v);
    }
    for i in 0..dn {
        let mut v = vec![0u64; dim];
        v[on + i] = 1;
        rad_rows.push(v);
    }
    for i in 0..dm {
        let mut v = vec![0u64; dim];
        v[om + i] = 1;
        rad_rows.push(v);
    }
    for r in &b.radical_basis {
        let mut v = vec![0u64; dim];
        v[ob..].copy_from_slice(r);
        rad_rows.push(v);
    }
    let mut basis_labels = Vec::new();
    for l in &a.basis_labels {
        basis_labels.push(format!("a:{l}"));
    }
    for i in 0..dn {
        basis_labels.push(format!("n{i}"));
    }
    for i in 0..dm {
        basis_labels.push(format!("m{i}"));
    }
    for l in &b.basis_labels {
        basis_labels.push(format!("b:{l}"));
    }

    let alg = Algebra {
        field: a.field,
        dim,
        basis_labels,
        mult,
        unit,
        idempotents,
        radical_basis: rad_rows,
        provenance: Provenance::Morita(MoritaInfo {
            a: a.clone(),
            b: b.clone(),
            n: n.clone(),
            m: m.clone(),
        }),
    };
    alg.verify()?;
    Ok(Arc::new(alg))
}

// ---------------------------------------------------------------------------
// stock presentations used across the test suite
// ---------------------------------------------------------------------------

/// The path algebra of `1 → 2`.
pub fn a2_presentation() -> QuiverPresentation {
    QuiverPresentation {
        vertices: vec!["1".into(), "2".into()],
        arrows: vec![ArrowDecl {
            name: "a".into(),
            source: 0,
            target: 1,
        }],
        relations: vec![],
        nilpotency_bound: 2,
    }
}

/// Cyclic quiver on three vertices with all length-two paths zero.
pub fn cyclic3_rad_square_zero() -> QuiverPresentation {
    QuiverPresentation {
        vertices: vec!["1".into(), "2".into(), "3".into()],
        arrows: (0..3)
            .map(|t| ArrowDecl {
                name: format!("x{}", t + 1),
                source: t,
                target: (t + 1) % 3,
            })
            .collect(),
        relations: (0..3)
            .map(|t| {
                vec![RelationTerm {
                    coeff: 1,
                    path: vec![t, (t + 1) % 3],
                }]
            })
            .collect(),
        nilpotency_bound: 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Field {
        Field::default()
    }

    #[test]
    fn one_vertex_no_arrows() {
        let q = QuiverPresentation {
            vertices: vec!["v".into()],
            arrows: vec![],
            relations: vec![],
            nilpotency_bound: 1,
        };
        let a = build_from_presentation(&q, field()).unwrap();
        assert_eq!(a.dim, 1);
        assert!(a.radical_basis.is_empty());
    }

    #[test]
    fn a2_has_dimension_three() {
        let a = build_from_presentation(&a2_presentation(), field()).unwrap();
        assert_eq!(a.dim, 3);
        assert_eq!(a.idempotents.len(), 2);
        assert_eq!(a.radical_basis.len(), 1);
    }

    #[test]
    fn cyclic3_has_dimension_six() {
        let a = build_from_presentation(&cyclic3_rad_square_zero(), field()).unwrap();
        assert_eq!(a.dim, 6);
        assert_eq!(a.radical_basis.len(), 3);
    }

    #[test]
    fn undeclared_bound_is_rejected() {
        // cyclic quiver with no relations never becomes nilpotent
        let mut q = cyclic3_rad_square_zero();
        q.relations.clear();
        assert!(matches!(
            build_from_presentation(&q, field()),
            Err(Error::NonAdmissible(_))
        ));
    }

    #[test]
    fn malformed_relation_reports_index() {
        let mut q = a2_presentation();
        q.relations.push(vec![RelationTerm {
            coeff: 1,
            path: vec![0, 0], // a then a does not compose
        }]);
        match build_from_presentation(&q, field()) {
            Err(Error::RelationEndpointMismatch(0, _)) => {}
            other => panic!("expected endpoint mismatch at index 0, got {other:?}"),
        }
    }

    #[test]
    fn corner_full_vertex_set_is_identity() {
        let a = build_from_presentation(&a2_presentation(), field()).unwrap();
        let (c, map) = corner(&a, &a.vertex_labels()).unwrap();
        assert_eq!(c.dim, a.dim);
        assert_eq!(map.matrix.rank(&a.field), a.dim);
    }

    #[test]
    fn corner_a2_at_first_vertex() {
        let a = build_from_presentation(&a2_presentation(), field()).unwrap();
        let (c, _) = corner(&a, &["1".into()]).unwrap();
        assert_eq!(c.dim, 1);
    }

    #[test]
    fn corner_rejects_empty() {
        let a = build_from_presentation(&a2_presentation(), field()).unwrap();
        assert!(matches!(corner(&a, &[]), Err(Error::EmptyVertexSet)));
    }

    #[test]
    fn quotient_a2_at_second_vertex() {
        let a = build_from_presentation(&a2_presentation(), field()).unwrap();
        let (q, map) = quotient_by_idempotent_ideal(&a, &["2".into()]).unwrap();
        assert_eq!(q.dim, 1);
        map.verify().unwrap();
        // kernel of the projection is exactly the ideal
        let ideal = ideal_basis(&a, &["2".into()]).unwrap();
        assert_eq!(ideal.rows, 2);
        assert_eq!(map.matrix.kernel_basis(&a.field).rank(&a.field), 2);
    }

    #[test]
    fn quotient_empty_set_is_identity() {
        let a = build_from_presentation(&a2_presentation(), field()).unwrap();
        let (q, _) = quotient_by_idempotent_ideal(&a, &[]).unwrap();
        assert_eq!(q.dim, a.dim);
    }

    #[test]
    fn ideal_a2_at_first_vertex_has_dim_two() {
        let a = build_from_presentation(&a2_presentation(), field()).unwrap();
        let ideal = ideal_basis(&a, &["1".into()]).unwrap();
        assert_eq!(ideal.rows, 2); // e1 and the arrow
    }

    #[test]
    fn corner_plus_quotient_dimensions_add_up() {
        let a = build_from_presentation(&cyclic3_rad_square_zero(), field()).unwrap();
        for v in a.vertex_labels() {
            let ideal = ideal_basis(&a, &[v.clone()]).unwrap();
            let (q, _) = quotient_by_idempotent_ideal(&a, &[v.clone()]).unwrap();
            assert_eq!(ideal.rows + q.dim, a.dim);
        }
    }

    #[test]
    fn opposite_is_involutive_and_reverses_a2() {
        let a = build_from_presentation(&a2_presentation(), field()).unwrap();
        let op = opposite(&a);
        op.verify().unwrap();
        let opop = opposite(&op);
        assert_eq!(opop.mult, a.mult);
        // in the opposite, the arrow now composes through vertex 2 first
        let e2 = op.idempotent_vector("2").unwrap();
        let arrow_idx = op
            .basis_labels
            .iter()
            .position(|l| l == "a")
            .unwrap();
        let mut arrow = vec![0u64; op.dim];
        arrow[arrow_idx] = 1;
        // e2 ·op arrow = arrow · e2 (in the original) = arrow
        assert_eq!(op.mul_vec(&e2, &arrow), arrow);
    }

    #[test]
    fn tensor_with_ground_field_is_identity_like() {
        let f = field();
        let k = build_from_presentation(
            &QuiverPresentation {
                vertices: vec!["v".into()],
                arrows: vec![],
                relations: vec![],
                nilpotency_bound: 1,
            },
            f,
        )
        .unwrap();
        let a = build_from_presentation(&a2_presentation(), f).unwrap();
        let t = tensor(&k, &a).unwrap();
        assert_eq!(t.dim, a.dim);
        assert_eq!(t.radical_basis.len(), a.radical_basis.len());
    }

    #[test]
    fn tensor_dimensions_multiply() {
        let f = field();
        let a = build_from_presentation(&a2_presentation(), f).unwrap();
        let b = build_from_presentation(&cyclic3_rad_square_zero(), f).unwrap();
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.dim, a.dim * b.dim);
        assert_eq!(t.idempotents.len(), 6);
    }

    #[test]
    fn morita_ring_with_zero_bimodules_is_a_product() {
        let f = field();
        let a = build_from_presentation(&a2_presentation(), f).unwrap();
        let b = build_from_presentation(&cyclic3_rad_square_zero(), f).unwrap();
        let n = BimoduleData::zero(a.clone(), b.clone());
        let m = BimoduleData::zero(b.clone(), a.clone());
        let ring = morita_ring(&a, &b, &n, &m).unwrap();
        assert_eq!(ring.dim, a.dim + b.dim);
        assert_eq!(ring.idempotents.len(), 5);
    }

    #[test]
    fn morita_ring_recovers_a2_from_scalars() {
        // A = B = k, N = k, M = 0 gives the upper triangular 2x2 ring.
        let f = field();
        let k1 = build_from_presentation(
            &QuiverPresentation {
                vertices: vec!["1".into()],
                arrows: vec![],
                relations: vec![],
                nilpotency_bound: 1,
            },
            f,
        )
        .unwrap();
        let k2 = build_from_presentation(
            &QuiverPresentation {
                vertices: vec!["2".into()],
                arrows: vec![],
                relations: vec![],
                nilpotency_bound: 1,
            },
            f,
        )
        .unwrap();
        let n = BimoduleData::new(
            k1.clone(),
            k2.clone(),
            1,
            vec![Mat::identity(1)],
            vec![Mat::identity(1)],
        )
        .unwrap();
        let m = BimoduleData::zero(k2.clone(), k1.clone());
        let ring = morita_ring(&k1, &k2, &n, &m).unwrap();
        assert_eq!(ring.dim, 3);
        assert_eq!(ring.radical_basis.len(), 1);
        // hand-checked table: (e_a)·n = n, n·(e_b) = n, n·n = 0
        let ea = &ring.idempotents[0].1;
        let eb = &ring.idempotents[1].1;
        let mut nvec = vec![0u64; 3];
        nvec[1] = 1;
        assert_eq!(ring.mul_vec(ea, &nvec), nvec);
        assert_eq!(ring.mul_vec(&nvec, eb), nvec);
        assert!(ring.mul_vec(&nvec, &nvec).iter().all(|&x| x == 0));
        assert!(ring.mul_vec(&nvec, ea).iter().all(|&x| x == 0));
    }

    #[test]
    fn morita_dim_additivity() {
        let f = field();
        let a = build_from_presentation(&a2_presentation(), f).unwrap();
        let b = build_from_presentation(&a2_presentation(), f).unwrap();
        let n = BimoduleData::zero(a.clone(), b.clone());
        let m = BimoduleData::zero(b.clone(), a.clone());
        let ring = morita_ring(&a, &b, &n, &m).unwrap();
        assert_eq!(ring.dim, a.dim + n.dim + m.dim + b.dim);
    }
}
