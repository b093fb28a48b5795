//! Krull-Schmidt decomposition through endomorphism rings.
//!
//! A split of a module is found by factoring the minimal polynomial of a
//! random endomorphism: coprime factors give an exact idempotent by the
//! Chinese remainder identity, and the module splits into the two
//! generalized kernels. A module is declared indecomposable when its
//! endomorphism ring modulo the radical (computed as the kernel of the
//! trace form, valid since `p` exceeds every matrix degree in range) is
//! one-dimensional; otherwise the search either finds a split or reports
//! `DecompositionInconclusive` after its trial budget.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::poly;
use crate::rng::SeededRng;

use super::{
    direct_sum, hom_basis, is_projective, submodule, ModRef, Morphism,
};

pub const DEFAULT_TRIALS: usize = 64;

/// Endomorphism basis together with the radical (as combinations of the
/// basis) computed from the trace bilinear form.
pub struct EndRing {
    pub basis: Vec<Morphism>,
    pub radical_dim: usize,
}

pub fn end_ring(m: &ModRef) -> EndRing {
    let f = &m.algebra.field;
    let basis = hom_basis(m, m);
    let k = basis.len();
    let mut gram = Mat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            let prod = basis[i].mat.mul(&basis[j].mat, f);
            let mut tr = 0u64;
            for t in 0..prod.rows {
                tr = f.add(tr, prod.get(t, t));
            }
            gram.set(i, j, tr);
        }
    }
    let radical_dim = gram.kernel_basis(f).rows;
    EndRing { basis, radical_dim }
}

fn random_endo(end: &EndRing, m: &ModRef, rng: &mut SeededRng) -> Mat {
    let f = &m.algebra.field;
    let mut acc = Mat::zero(m.dim, m.dim);
    for b in &end.basis {
        let c = rng.element(f);
        if c != 0 {
            acc = acc.add(&b.mat.scale(c, f), f);
        }
    }
    acc
}

/// Try to split `m` into two nonzero stable row spaces.
fn try_split(m: &ModRef, end: &EndRing, rng: &mut SeededRng, trials: usize) -> Result<Option<(Mat, Mat)>> {
    let f = &m.algebra.field;
    if m.dim == 0 || end.basis.len() <= 1 {
        return Ok(None);
    }
    let semisimple_dim = end.basis.len() - end.radical_dim;
    if semisimple_dim <= 1 {
        return Ok(None); // local endomorphism ring
    }
    for _ in 0..trials {
        let phi = random_endo(end, m, rng);
        let mp = poly::min_poly(&phi, f);
        if poly::deg(&mp).unwrap_or(0) < 1 {
            continue;
        }
        let factors = poly::factor(&mp, f, rng);
        if factors.len() < 2 {
            continue;
        }
        // group the first irreducible power against the rest
        let (g1, e1) = &factors[0];
        let mut p1 = vec![1u64];
        for _ in 0..*e1 {
            p1 = poly::mul(&p1, g1, f);
        }
        let p2 = poly::divmod(&mp, &p1, f).0;
        let m1 = poly::eval_at_matrix(&p1, &phi, f).kernel_basis(f).row_space_basis(f);
        let m2 = poly::eval_at_matrix(&p2, &phi, f).kernel_basis(f).row_space_basis(f);
        if m1.rows > 0 && m2.rows > 0 && m1.rows + m2.rows == m.dim {
            return Ok(Some((m1, m2)));
        }
    }
    Err(Error::DecompositionInconclusive)
}

/// One indecomposable summand with its inclusion into the original module.
#[derive(Debug, Clone)]
pub struct Piece {
    pub module: ModRef,
    pub inclusion: Morphism,
}

/// Full decomposition into indecomposables, deterministic given the seed.
pub fn decompose(m: &ModRef, seed: u64) -> Result<Vec<Piece>> {
    let mut rng = SeededRng::new(seed);
    decompose_with(m, &mut rng, DEFAULT_TRIALS)
}

pub fn decompose_with(m: &ModRef, rng: &mut SeededRng, trials: usize) -> Result<Vec<Piece>> {
    let f = &m.algebra.field;
    let mut out = Vec::new();
    // stack of row bases in the coordinates of m
    let mut work = Vec::new();
    if m.dim > 0 {
        work.push(Mat::identity(m.dim));
    }
    while let Some(rows) = work.pop() {
        let (piece, _incl) = submodule(m, rows.clone());
        let end = end_ring(&piece);
        match try_split(&piece, &end, rng, trials)? {
            None => {
                let (module, inclusion) = submodule(m, rows);
                out.push(Piece { module, inclusion });
            }
            Some((r1, r2)) => {
                work.push(r1.mul(&rows, f).row_space_basis(f));
                work.push(r2.mul(&rows, f).row_space_basis(f));
            }
        }
    }
    // deterministic order: by dimension, then by matrix entries
    out.sort_by(|a, b| {
        (a.module.dim, a.inclusion.mat.rows_vec()).cmp(&(b.module.dim, b.inclusion.mat.rows_vec()))
    });
    Ok(out)
}

/// Invertible-intertwiner search; `Some` carries an explicit verified iso.
pub fn find_iso(m: &ModRef, n: &ModRef, seed: u64) -> Option<Morphism> {
    let f = &m.algebra.field;
    if m.dim != n.dim {
        return None;
    }
    if m.dim == 0 {
        return Some(Morphism::new(m.clone(), n.clone(), Mat::zero(0, 0)));
    }
    if m.dimension_vector() != n.dimension_vector() {
        return None;
    }
    let h = hom_basis(m, n);
    if h.is_empty() {
        return None;
    }
    // single basis elements first, then random combinations
    for cand in &h {
        if cand.mat.is_invertible(f) {
            return Some(cand.clone());
        }
    }
    let mut rng = SeededRng::new(seed);
    for _ in 0..DEFAULT_TRIALS {
        let mut acc = Mat::zero(m.dim, n.dim);
        for b in &h {
            let c = rng.element(f);
            if c != 0 {
                acc = acc.add(&b.mat.scale(c, f), f);
            }
        }
        if acc.is_invertible(f) {
            return Some(Morphism::new(m.clone(), n.clone(), acc));
        }
    }
    None
}

pub fn is_iso(m: &ModRef, n: &ModRef, seed: u64) -> bool {
    find_iso(m, n, seed).is_some()
}

/// Group pieces into isomorphism classes with multiplicities.
pub fn decompose_with_multiplicities(m: &ModRef, seed: u64) -> Result<Vec<(ModRef, usize)>> {
    let pieces = decompose(m, seed)?;
    let mut classes: Vec<(ModRef, usize)> = Vec::new();
    for p in pieces {
        match classes
            .iter_mut()
            .find(|(rep, _)| is_iso(rep, &p.module, seed ^ 0x9e37_79b9))
        {
            Some((_, mult)) => *mult += 1,
            None => classes.push((p.module, 1)),
        }
    }
    Ok(classes)
}

/// Drop every projective indecomposable summand.
pub fn stable_strip(m: &ModRef, seed: u64) -> Result<ModRef> {
    let pieces = decompose(m, seed)?;
    let kept: Vec<ModRef> = pieces
        .into_iter()
        .filter(|p| !is_projective(&p.module))
        .map(|p| p.module)
        .collect();
    if kept.is_empty() {
        return Ok(super::Module::zero(m.algebra.clone()));
    }
    Ok(direct_sum(&kept).0)
}

/// Does every indecomposable summand of `m` occur (up to iso) in `u`?
pub fn in_add(m: &ModRef, u: &ModRef, seed: u64) -> Result<bool> {
    let mp = decompose(m, seed)?;
    let up = decompose(u, seed.wrapping_add(1))?;
    for piece in &mp {
        let found = up
            .iter()
            .any(|cand| is_iso(&piece.module, &cand.module, seed ^ 0x51f0));
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two modules agree after discarding projective summands?
pub fn stably_isomorphic(m: &ModRef, n: &ModRef, seed: u64) -> Result<bool> {
    let sm = stable_strip(m, seed)?;
    let sn = stable_strip(n, seed.wrapping_add(7))?;
    Ok(is_iso(&sm, &sn, seed ^ 0xabcd))
}

/// Explicit stable match: projective paddings `p_m`, `p_n` and a verified
/// isomorphism `m ⊕ p_m ≅ n ⊕ p_n`. Fails with `ChainMismatch` when the
/// non-projective parts differ.
pub struct StableMatch {
    pub pad_m: Option<ModRef>,
    pub pad_n: Option<ModRef>,
    /// Iso from `m ⊕ pad_m` to `n ⊕ pad_n` (pads omitted when zero).
    pub iso: Morphism,
}

pub fn stable_match(m: &ModRef, n: &ModRef, seed: u64) -> Result<StableMatch> {
    let f = &m.algebra.field;
    let mp = decompose(m, seed)?;
    let np = decompose(n, seed.wrapping_add(13))?;
    let (m_proj, m_nonproj): (Vec<&Piece>, Vec<&Piece>) =
        mp.iter().partition(|p| is_projective(&p.module));
    let (n_proj, n_nonproj): (Vec<&Piece>, Vec<&Piece>) =
        np.iter().partition(|p| is_projective(&p.module));

    // match the non-projective parts bijectively
    let mut used = vec![false; n_nonproj.len()];
    let mut pairing: Vec<(usize, usize, Morphism)> = Vec::new();
    for (i, pm) in m_nonproj.iter().enumerate() {
        let mut matched = false;
        for (j, pn) in n_nonproj.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(w) = find_iso(&pm.module, &pn.module, seed ^ ((i * 31 + j) as u64)) {
                used[j] = true;
                pairing.push((i, j, w));
                matched = true;
                break;
            }
        }
        if !matched {
            return Err(Error::ChainMismatch(
                "stable parts do not match summand by summand".into(),
            ));
        }
    }
    if used.iter().any(|&u| !u) {
        return Err(Error::ChainMismatch(
            "target has extra non-projective summands".into(),
        ));
    }

    // match projective pieces pairwise; only the leftovers become padding
    let mut proj_used = vec![false; n_proj.len()];
    let mut proj_pairing: Vec<(usize, usize, Morphism)> = Vec::new();
    let mut m_leftover: Vec<usize> = Vec::new();
    for (i, pm) in m_proj.iter().enumerate() {
        let mut matched = false;
        for (j, pn) in n_proj.iter().enumerate() {
            if proj_used[j] {
                continue;
            }
            if let Some(w) = find_iso(&pm.module, &pn.module, seed ^ ((i * 97 + j) as u64)) {
                proj_used[j] = true;
                proj_pairing.push((i, j, w));
                matched = true;
                break;
            }
        }
        if !matched {
            m_leftover.push(i);
        }
    }
    let n_leftover: Vec<usize> = (0..n_proj.len()).filter(|&j| !proj_used[j]).collect();

    // m ⊕ (n's unmatched projectives) ≅ n ⊕ (m's unmatched projectives)
    let pad_m: Vec<ModRef> = n_leftover.iter().map(|&j| n_proj[j].module.clone()).collect();
    let pad_n: Vec<ModRef> = m_leftover.iter().map(|&i| m_proj[i].module.clone()).collect();

    let mut left_parts: Vec<ModRef> = vec![m.clone()];
    left_parts.extend(pad_m.iter().cloned());
    let (left, _left_inj, left_proj) = direct_sum(&left_parts);
    let mut right_parts: Vec<ModRef> = vec![n.clone()];
    right_parts.extend(pad_n.iter().cloned());
    let (right, right_inj, _right_proj) = direct_sum(&right_parts);

    // the dual system of m's decomposition: stacking the inclusions is a
    // change of basis, and its inverse provides projections that vanish on
    // the other summands
    let m_pieces: Vec<&Piece> = mp.iter().collect();
    let stack = Mat::vstack_all(
        &m_pieces.iter().map(|p| p.inclusion.mat.clone()).collect::<Vec<_>>(),
        m.dim.max(0),
    );
    let stack_inv = if m.dim == 0 {
        Mat::zero(0, 0)
    } else {
        stack.inverse(f).expect("decomposition stack is a change of basis")
    };
    let piece_proj = |global_index: usize| -> Mat {
        // m → piece: the matching column block of the inverse
        let mut offset = 0usize;
        for p in m_pieces.iter().take(global_index) {
            offset += p.module.dim;
        }
        let d = m_pieces[global_index].module.dim;
        Mat::from_fn(m.dim, d, |r, c| stack_inv.get(r, offset + c))
    };
    // indices of the partitioned views back into the decomposition order
    let m_proj_idx: Vec<usize> = mp
        .iter()
        .enumerate()
        .filter(|(_, p)| is_projective(&p.module))
        .map(|(i, _)| i)
        .collect();
    let m_nonproj_idx: Vec<usize> = mp
        .iter()
        .enumerate()
        .filter(|(_, p)| !is_projective(&p.module))
        .map(|(i, _)| i)
        .collect();

    let mut mat = Mat::zero(left.dim, right.dim);
    let add_block = |mat: &mut Mat, rows: &Mat| {
        for i in 0..rows.rows {
            for j in 0..rows.cols {
                let v = f.add(mat.get(i, j), rows.get(i, j));
                mat.set(i, j, v);
            }
        }
    };

    for (i, j, w) in &pairing {
        let from_left = left_proj[0].mat.mul(&piece_proj(m_nonproj_idx[*i]), f);
        let rm = n_nonproj[*j].inclusion.mat.mul(&right_inj[0].mat, f);
        let block = from_left.mul(&w.mat, f).mul(&rm, f);
        add_block(&mut mat, &block);
    }
    for (i, j, w) in &proj_pairing {
        let from_left = left_proj[0].mat.mul(&piece_proj(m_proj_idx[*i]), f);
        let rm = n_proj[*j].inclusion.mat.mul(&right_inj[0].mat, f);
        let block = from_left.mul(&w.mat, f).mul(&rm, f);
        add_block(&mut mat, &block);
    }
    // m's unmatched projectives map identically onto the pad on the right
    for (k, &i) in m_leftover.iter().enumerate() {
        let from_left = left_proj[0].mat.mul(&piece_proj(m_proj_idx[i]), f);
        let block = from_left.mul(&right_inj[1 + k].mat, f);
        add_block(&mut mat, &block);
    }
    // pad on the left maps identically onto n's unmatched projectives
    for (k, &j) in n_leftover.iter().enumerate() {
        let rm = n_proj[j].inclusion.mat.mul(&right_inj[0].mat, f);
        let block = left_proj[1 + k].mat.mul(&rm, f);
        add_block(&mut mat, &block);
    }

    let iso = Morphism::new(left.clone(), right.clone(), mat);
    if !iso.is_iso() {
        return Err(Error::ChainMismatch("assembled stable match is not invertible".into()));
    }
    Ok(StableMatch {
        pad_m: if pad_m.is_empty() {
            None
        } else {
            Some(direct_sum_or_zero(&pad_m, m))
        },
        pad_n: if pad_n.is_empty() {
            None
        } else {
            Some(direct_sum_or_zero(&pad_n, m))
        },
        iso,
    })
}

fn direct_sum_or_zero(parts: &[ModRef], like: &ModRef) -> ModRef {
    if parts.is_empty() {
        super::Module::zero(like.algebra.clone())
    } else {
        direct_sum(parts).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a2_presentation, build_from_presentation, cyclic3_rad_square_zero};
    use crate::field::Field;
    use crate::modcat::{projective, simple, Module};

    fn a2() -> alloc::sync::Arc<crate::algebra::Algebra> {
        build_from_presentation(&a2_presentation(), Field::default()).unwrap()
    }

    #[test]
    fn decompose_zero_is_empty() {
        let a = a2();
        let z = Module::zero(a);
        assert!(decompose(&z, 1).unwrap().is_empty());
    }

    #[test]
    fn decompose_known_sum_on_a2() {
        let a = a2();
        let p1 = projective(&a, "1").unwrap();
        let s2 = simple(&a, "2").unwrap();
        let (sum, _, _) = direct_sum(&[p1.clone(), p1.clone(), s2.clone()]);
        let classes = decompose_with_multiplicities(&sum, 42).unwrap();
        assert_eq!(classes.len(), 2);
        let mut sig: Vec<(usize, usize)> =
            classes.iter().map(|(m, c)| (m.dim, *c)).collect();
        sig.sort();
        assert_eq!(sig, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn decompose_regular_cyclic3() {
        let a = build_from_presentation(&cyclic3_rad_square_zero(), Field::default()).unwrap();
        let reg = Module::regular(a);
        let classes = decompose_with_multiplicities(&reg, 7).unwrap();
        assert_eq!(classes.len(), 3);
        for (m, c) in &classes {
            assert_eq!(m.dim, 2);
            assert_eq!(*c, 1);
        }
    }

    #[test]
    fn seeds_agree_up_to_iso() {
        let a = a2();
        let p1 = projective(&a, "1").unwrap();
        let s1 = simple(&a, "1").unwrap();
        let (sum, _, _) = direct_sum(&[p1, s1]);
        let c1 = decompose_with_multiplicities(&sum, 1).unwrap();
        let c2 = decompose_with_multiplicities(&sum, 999).unwrap();
        assert_eq!(c1.len(), c2.len());
        for (m, mult) in &c1 {
            let found = c2
                .iter()
                .find(|(n, _)| is_iso(m, n, 5))
                .expect("class match across seeds");
            assert_eq!(*mult, found.1);
        }
    }

    #[test]
    fn is_iso_accepts_self_and_rejects_different_dims() {
        let a = a2();
        let p1 = projective(&a, "1").unwrap();
        assert!(is_iso(&p1, &p1, 3));
        let s1 = simple(&a, "1").unwrap();
        assert!(!is_iso(&p1, &s1, 3));
    }

    #[test]
    fn strip_removes_projectives() {
        let a = a2();
        let p1 = projective(&a, "1").unwrap();
        let s1 = simple(&a, "1").unwrap();
        let (sum, _, _) = direct_sum(&[p1.clone(), s1.clone()]);
        let stripped = stable_strip(&sum, 11).unwrap();
        assert_eq!(stripped.dim, 1);
        assert!(is_iso(&stripped, &s1, 11));
        assert_eq!(stable_strip(&p1, 11).unwrap().dim, 0);
    }

    #[test]
    fn in_add_facts() {
        let a = a2();
        let p1 = projective(&a, "1").unwrap();
        let s1 = simple(&a, "1").unwrap();
        let (u, _, _) = direct_sum(&[p1.clone(), s1.clone()]);
        let (m, _, _) = direct_sum(&[s1.clone(), s1.clone()]);
        assert!(in_add(&m, &u, 2).unwrap());
        let s2 = simple(&a, "2").unwrap();
        assert!(!in_add(&s2, &u, 2).unwrap());
    }

    #[test]
    fn stable_match_pads_projectives() {
        let a = a2();
        let p1 = projective(&a, "1").unwrap();
        let s1 = simple(&a, "1").unwrap();
        let (m, _, _) = direct_sum(&[s1.clone(), p1.clone()]);
        let sm = stable_match(&m, &s1, 17).unwrap();
        assert!(sm.pad_m.is_none() || sm.pad_m.as_ref().unwrap().dim == 0);
        assert_eq!(sm.pad_n.as_ref().map(|p| p.dim), Some(2));
        assert!(sm.iso.is_iso());
        sm.iso.verify().unwrap();
    }

    #[test]
    fn omega_well_defined_over_any_projective_epi() {
        // kernel of any projective epi agrees with the minimal syzygy after
        // stripping projective summands
        let a = a2();
        let s1 = simple(&a, "1").unwrap();
        let p1 = projective(&a, "1").unwrap();
        let cover = crate::modcat::projective_cover(&s1);
        // fat epi: P(1) ⊕ P(1) → S(1), both blocks the cover map
        let (fat, _, _) = direct_sum(&[p1.clone(), p1.clone()]);
        let m = cover.map.mat.vstack(&cover.map.mat);
        let epi = Morphism::new(fat, s1.clone(), m);
        epi.verify().unwrap();
        let (k, _) = crate::modcat::kernel(&epi);
        let min = crate::modcat::syzygy(&s1);
        assert!(stably_isomorphic(&k, &min, 23).unwrap());
    }
}
