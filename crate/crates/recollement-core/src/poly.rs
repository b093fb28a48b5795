//! Univariate polynomials over `F_p`: just enough for minimal polynomials of
//! endomorphisms and their factorization into irreducible powers
//! (squarefree split, distinct-degree, Cantor-Zassenhaus).

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::mat::Mat;
use crate::rng::SeededRng;

/// Coefficients in ascending degree, no trailing zeros. The zero polynomial
/// is the empty vector.
pub type Poly = Vec<u64>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn deg(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &Poly, b: &Poly, f: &Field) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = f.add(x, y);
    }
    trim(out)
}

pub fn sub(a: &Poly, b: &Poly, f: &Field) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = f.sub(x, y);
    }
    trim(out)
}

pub fn mul(a: &Poly, b: &Poly, f: &Field) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn scale(a: &Poly, c: u64, f: &Field) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

/// Quotient and remainder by a nonzero divisor.
pub fn divmod(a: &Poly, b: &Poly, f: &Field) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    let mut quo = vec![0u64; a.len().saturating_sub(db)];
    while rem.len() > db || (rem.len() == b.len() && !rem.is_empty() && db == 0) {
        if rem.is_empty() || rem.len() - 1 < db {
            break;
        }
        let shift = rem.len() - 1 - db;
        let c = f.mul(*rem.last().unwrap(), lead_inv);
        quo[shift] = c;
        for i in 0..=db {
            let idx = shift + i;
            rem[idx] = f.sub(rem[idx], f.mul(c, b[i]));
        }
        rem = trim(rem);
    }
    (trim(quo), rem)
}

pub fn rem(a: &Poly, b: &Poly, f: &Field) -> Poly {
    divmod(a, b, f).1
}

pub fn monic(a: &Poly, f: &Field) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&c) => scale(a, f.inv(c), f),
    }
}

pub fn gcd(a: &Poly, b: &Poly, f: &Field) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, f);
        x = y;
        y = r;
    }
    monic(&x, f)
}

/// Extended gcd: returns `(g, u, v)` with `u·a + v·b = g` and `g` monic.
pub fn xgcd(a: &Poly, b: &Poly, f: &Field) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1, f);
        let s = sub(&s0, &mul(&q, &s1, f), f);
        let t = sub(&t0, &mul(&q, &t1, f), f);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(&c) = r0.last() {
        let ci = f.inv(c);
        (scale(&r0, ci, f), scale(&s0, ci, f), scale(&t0, ci, f))
    } else {
        (r0, s0, t0)
    }
}

pub fn derivative(a: &Poly, f: &Field) -> Poly {
    if a.len() <= 1 {
        return Vec::new();
    }
    trim(
        (1..a.len())
            .map(|i| f.mul(a[i], (i as u64) % f.modulus()))
            .collect(),
    )
}

/// `g^e mod m`.
pub fn pow_mod(g: &Poly, mut e: u64, m: &Poly, f: &Field) -> Poly {
    let mut base = rem(g, m, f);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &base, f), m, f);
        }
        base = rem(&mul(&base, &base, f), m, f);
        e >>= 1;
    }
    acc
}

/// Evaluate a polynomial at a square matrix.
pub fn eval_at_matrix(p: &Poly, m: &Mat, f: &Field) -> Mat {
    let n = m.rows;
    let mut acc = Mat::zero(n, n);
    // Horner from the top coefficient down.
    for &c in p.iter().rev() {
        acc = acc.mul(m, f);
        for i in 0..n {
            acc.set(i, i, f.add(acc.get(i, i), c));
        }
    }
    acc
}

/// Minimal polynomial of a square matrix acting on row vectors.
pub fn min_poly(m: &Mat, f: &Field) -> Poly {
    let n = m.rows;
    if n == 0 {
        return vec![1u64];
    }
    let mut result: Poly = vec![1u64];
    for start in 0..n {
        let mut v = vec![0u64; n];
        v[start] = 1;
        // Annihilator of the Krylov space of e_start.
        let mut krylov: Vec<Vec<u64>> = vec![v.clone()];
        loop {
            let next = m.apply(krylov.last().unwrap(), f);
            let span = Mat::from_rows(&krylov, n);
            match Mat::solve(&span, &Mat::from_rows(&[next.clone()], n), f) {
                Ok(coeffs) => {
                    // x^k - sum coeffs_i x^i annihilates e_start.
                    let k = krylov.len();
                    let mut p = vec![0u64; k + 1];
                    for i in 0..k {
                        p[i] = f.neg(coeffs.get(0, i));
                    }
                    p[k] = 1;
                    let g = gcd(&result, &p, f);
                    let (q, _) = divmod(&p, &g, f);
                    result = mul(&result, &q, f);
                    break;
                }
                Err(_) => krylov.push(next),
            }
        }
        if result.len() == n + 1 {
            break;
        }
    }
    monic(&result, f)
}

/// Factor a nonconstant monic polynomial into irreducible powers.
/// Requires `deg f < p` (true at the scales this crate targets).
pub fn factor(p: &Poly, f: &Field, rng: &mut SeededRng) -> Vec<(Poly, usize)> {
    assert!(deg(p).unwrap_or(0) >= 1);
    assert!((p.len() as u64) <= f.modulus(), "degree must stay below p");
    let mut out: Vec<(Poly, usize)> = Vec::new();
    // Squarefree part carries every irreducible factor once.
    let d = derivative(p, f);
    let sf = if d.is_empty() {
        unreachable!("derivative vanishes only in degree >= p")
    } else {
        let g = gcd(p, &d, f);
        divmod(p, &g, f).0
    };
    for irr in factor_squarefree(&monic(&sf, f), f, rng) {
        // Multiplicity by repeated division.
        let mut m = 0usize;
        let mut rest = p.clone();
        loop {
            let (q, r) = divmod(&rest, &irr, f);
            if r.is_empty() && !q.is_empty() {
                m += 1;
                rest = q;
            } else {
                break;
            }
            if deg(&rest) == Some(0) {
                break;
            }
        }
        out.push((irr, m));
    }
    out
}

fn factor_squarefree(p: &Poly, f: &Field, rng: &mut SeededRng) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut rest = p.clone();
    // Distinct-degree split.
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    while deg(&rest).unwrap_or(0) >= 1 {
        d += 1;
        if 2 * d > deg(&rest).unwrap() {
            out.push(monic(&rest, f));
            break;
        }
        h = pow_mod(&h, f.modulus(), &rest, f);
        let g = gcd(&sub(&h, &x, f), &rest, f);
        if deg(&g).unwrap_or(0) >= 1 {
            equal_degree_split(&g, d, f, rng, &mut out);
            rest = divmod(&rest, &g, f).0;
            h = rem(&h, &rest, f);
        }
    }
    out
}

/// Cantor-Zassenhaus on a squarefree product of irreducibles of degree `d`.
fn equal_degree_split(p: &Poly, d: usize, f: &Field, rng: &mut SeededRng, out: &mut Vec<Poly>) {
    let n = deg(p).unwrap();
    if n == d {
        out.push(monic(p, f));
        return;
    }
    loop {
        let r: Poly = trim((0..n).map(|_| rng.element(f)).collect());
        if deg(&r).unwrap_or(0) < 1 {
            continue;
        }
        // r^((p^d - 1)/2) mod p splits the roots by quadratic character.
        let mut s = rem(&r, p, f);
        // compute r^(p^d) step by step to assemble exponent (p^d - 1)/2:
        // use the identity (p^d - 1)/2 = (p-1)/2 * (p^(d-1) + ... + 1)
        let half = (f.modulus() - 1) / 2;
        let mut acc = pow_mod(&s, half, p, f);
        for _ in 1..d {
            s = pow_mod(&s, f.modulus(), p, f);
            acc = rem(&mul(&acc, &pow_mod(&s, half, p, f), f), p, f);
        }
        let g = gcd(&sub(&acc, &vec![1u64], f), p, f);
        let dg = deg(&g).unwrap_or(0);
        if dg >= 1 && dg < n {
            equal_degree_split(&g, d, f, rng, out);
            equal_degree_split(&divmod(p, &g, f).0, d, f, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divmod_round_trip() {
        let f = Field::new(7).unwrap();
        let a = vec![1, 2, 3, 4]; // 4x^3+3x^2+2x+1
        let b = vec![5, 1]; // x+5
        let (q, r) = divmod(&a, &b, &f);
        assert_eq!(add(&mul(&q, &b, &f), &r, &f), a);
    }

    #[test]
    fn gcd_of_multiples() {
        let f = Field::new(7).unwrap();
        let g = vec![1, 1]; // x+1
        let a = mul(&g, &vec![2, 3], &f);
        let b = mul(&g, &vec![4, 0, 1], &f);
        assert_eq!(gcd(&a, &b, &f), g);
    }

    #[test]
    fn min_poly_of_nilpotent_jordan_block() {
        let f = Field::default();
        let mut m = Mat::zero(3, 3);
        m.set(0, 1, 1);
        m.set(1, 2, 1);
        // minimal polynomial x^3
        assert_eq!(min_poly(&m, &f), vec![0, 0, 0, 1]);
    }

    #[test]
    fn min_poly_of_identity() {
        let f = Field::default();
        // x - 1
        assert_eq!(min_poly(&Mat::identity(4), &f), vec![f.neg(1), 1]);
    }

    #[test]
    fn factor_splits_distinct_roots() {
        let f = Field::new(7).unwrap();
        let mut rng = SeededRng::new(1);
        // (x-1)(x-2)^2
        let p = mul(
            &vec![f.neg(1), 1],
            &mul(&vec![f.neg(2), 1], &vec![f.neg(2), 1], &f),
            &f,
        );
        let mut fs = factor(&p, &f, &mut rng);
        fs.sort();
        assert_eq!(fs.len(), 2);
        let mult: usize = fs.iter().map(|(_, e)| e).sum();
        assert_eq!(mult, 3);
        for (g, _) in &fs {
            assert_eq!(deg(g), Some(1));
        }
    }

    #[test]
    fn factor_keeps_irreducible_quadratic_whole() {
        let f = Field::new(7).unwrap();
        let mut rng = SeededRng::new(2);
        // x^2 + 1 is irreducible mod 7 (since -1 is not a square mod 7)
        let p = vec![1, 0, 1];
        let fs = factor(&p, &f, &mut rng);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], (vec![1, 0, 1], 1));
    }
}
