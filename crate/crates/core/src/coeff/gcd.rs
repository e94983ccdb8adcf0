//! Multivariate polynomial gcd over the integers.
//!
//! The pipeline strips monomial and integer content, reduces on variables
//! that occur in only one operand, and then tries in order: a modular
//! coprimality test, trial division, the heuristic gcd (evaluation at a
//! large integer followed by `xi`-adic reconstruction), and finally a
//! primitive pseudo-remainder sequence. Every non-trivial answer is checked
//! by exact division, and the heuristic answer additionally by a modular
//! coprimality test on the cofactors.

use std::collections::BTreeMap;

use super::int::Int;
use super::poly::{invmod, mulmod, Mono, Poly, NVARS};

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

/// Greatest common divisor of two ordinary polynomials, normalized to a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let (ma, mb) = (a.min_mono(), b.min_mono());
    let m = ma.min(mb);
    let a = a.mul_mono(ma.inv());
    let b = b.mul_mono(mb.inv());
    let (ca, cb) = (a.content(), b.content());
    let c = ca.gcd(&cb);
    let a = a.div_int(&ca);
    let b = b.div_int(&cb);
    let g = if a.is_constant() || b.is_constant() { Poly::one() } else { primitive_gcd(&a, &b) };
    g.mul_term(m, &c)
}

fn positive(p: Poly) -> Poly {
    if !p.is_zero() && p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    positive(p.div_int(&p.content()))
}

/// Gcd of primitive, monomial-free, non-constant polynomials.
fn primitive_gcd(a: &Poly, b: &Poly) -> Poly {
    if a == b {
        return positive(a.clone());
    }
    if a.len() < b.len() {
        return primitive_gcd(b, a);
    }
    if let Some(g) = homogeneous_gcd(a, b).or_else(|| homogeneous_gcd(b, a)) {
        return g;
    }
    let (va, vb) = (a.var_mask(), b.var_mask());
    for v in 0..NVARS {
        if va[v] != vb[v] {
            // The gcd cannot involve a variable missing from one operand.
            let (with, without) = if va[v] { (a, b) } else { (b, a) };
            let mut g = without.clone();
            for (_, c) in with.coeffs_in(v) {
                g = gcd(&g, &c);
                if g.is_constant() {
                    return Poly::one();
                }
            }
            return primitive_part(&g);
        }
    }
    if coprime_mod_p(a, b) {
        return Poly::one();
    }
    if a.div_exact(b).is_some() {
        return positive(b.clone());
    }
    if let Some(h) = heuristic_gcd(a, b) {
        return h;
    }
    prs_gcd(a, b)
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 3) % (PRIME - 3) + 2
    }
}

/// Rigorous one-sided test: `true` only if `a` and `b` have no common
/// factor of positive degree. Each variable in turn is kept as the main
/// variable while the others are evaluated at pseudo-random residues.
pub(crate) fn coprime_mod_p(a: &Poly, b: &Poly) -> bool {
    let mask = a.var_mask();
    let mut rng = Lcg(0x9e3779b97f4a7c15);
    for v in 0..NVARS {
        if !mask[v] {
            continue;
        }
        let mut ok = false;
        for _ in 0..2 {
            let mut pt = [0u64; NVARS];
            for x in pt.iter_mut() {
                *x = rng.next();
            }
            let (Some(ua), Some(ub)) = (univariate_image(a, v, &pt), univariate_image(b, v, &pt)) else {
                continue;
            };
            if uni_gcd_degree(ua, ub) == 0 {
                ok = true;
                break;
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Dense image in `Z_p[x_v]`; `None` if the leading coefficient vanishes.
fn univariate_image(p: &Poly, v: usize, pt: &[u64; NVARS]) -> Option<Vec<u64>> {
    let deg = p.degree_in(v).max(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in p.terms() {
        let e = m.exp(v) as usize;
        let mut term = c.mod_u64(PRIME);
        for (w, &x) in pt.iter().enumerate() {
            if w != v {
                let k = m.exp(w);
                if k > 0 {
                    term = mulmod(term, super::poly::powmod(x, k as u64, PRIME), PRIME);
                }
            }
        }
        out[e] = (out[e] + term) % PRIME;
    }
    if out[deg] == 0 {
        None
    } else {
        Some(out)
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn uni_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    loop {
        if b.len() == 1 && b[0] == 0 {
            return a.len() - 1;
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let inv = invmod(*b.last().unwrap(), PRIME);
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let f = mulmod(*a.last().unwrap(), inv, PRIME);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let t = mulmod(f, bc, PRIME);
                a[i + shift] = (a[i + shift] + PRIME - t) % PRIME;
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                a.push(0);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

fn symmetric_mod(c: &Int, x: &Int) -> Int {
    let r = c.rem_euclid(x);
    if r.add(&r).cmp(x) == std::cmp::Ordering::Greater {
        r.sub(x)
    } else {
        r
    }
}

/// Reconstructs a polynomial in `v` from its image at `v = x`.
fn interpolate(mut h: Poly, x: &Int, v: usize) -> Poly {
    let mut out = Poly::zero();
    let mut i = 0;
    while !h.is_zero() {
        let g = Poly::from_terms(
            h.terms().iter().map(|(m, c)| (*m, symmetric_mod(c, x))).filter(|t| !t.1.is_zero()).collect(),
        );
        out = out.add(&g.mul_mono(Mono::var(v, i)));
        h = h.sub(&g).div_int(x);
        i += 1;
        if i > 4096 {
            return Poly::zero();
        }
    }
    out
}

fn isqrt(x: &Int) -> Int {
    Int::from_big(num_integer::Roots::sqrt(&x.to_big()))
}

fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let h = heu_rec(a, b)?;
    let h = primitive_part(&h);
    let ca = a.div_exact(&h)?;
    let cb = b.div_exact(&h)?;
    if ca.is_constant() || cb.is_constant() || coprime_mod_p(&ca, &cb) {
        Some(h)
    } else {
        None
    }
}

fn heu_rec(a: &Poly, b: &Poly) -> Option<Poly> {
    let (va, vb) = (a.var_mask(), b.var_mask());
    let Some(v) = (0..NVARS).rev().find(|&v| va[v] || vb[v]) else {
        return Some(Poly::constant(a.constant_value()?.gcd(&b.constant_value()?)));
    };
    let na = a.max_abs_coeff();
    let nb = b.max_abs_coeff();
    let bnd = na.clone().min(nb.clone()).mul(&Int::from(2)).add(&Int::from(29));
    let root = isqrt(&bnd).mul(&Int::from(99));
    let la = ground_lc(a).abs();
    let lb = ground_lc(b).abs();
    let alt = na.div(&la).min(nb.div(&lb)).mul(&Int::from(2)).add(&Int::from(2));
    let mut x = bnd.min(root).max(alt);
    for _ in 0..6 {
        let fa = a.eval_var_int(v, &x);
        let fb = b.eval_var_int(v, &x);
        if !fa.is_zero() && !fb.is_zero() {
            if let Some(himg) = heu_rec(&fa, &fb) {
                let h = primitive_part(&interpolate(himg.clone(), &x, v));
                if !h.is_zero() && a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                    return Some(h);
                }
                for (f, g, fimg) in [(a, b, &fa), (b, a, &fb)] {
                    if let Some(cimg) = fimg.div_exact(&himg) {
                        let cf = primitive_part(&interpolate(cimg, &x, v));
                        if cf.is_zero() {
                            continue;
                        }
                        if let Some(h) = f.div_exact(&cf) {
                            let h = primitive_part(&h);
                            if g.div_exact(&h).is_some() {
                                return Some(h);
                            }
                        }
                    }
                }
            }
        }
        let r = isqrt(&isqrt(&x));
        x = Int::from(73794).mul(&x).mul(&r).div(&Int::from(27011));
    }
    None
}

/// Coefficient of the leading monomial under the packed order.
fn ground_lc(p: &Poly) -> Int {
    p.lc().clone()
}

fn lc_in(p: &Poly, v: usize) -> (i32, Poly) {
    p.coeffs_in(v).into_iter().next().unwrap_or((0, Poly::zero()))
}

fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero();
    for (_, c) in p.coeffs_in(v) {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let (db, lb) = lc_in(b, v);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = lc_in(&r, v);
        if dr < db {
            return r;
        }
        r = r.mul(&lb).sub(&b.mul(&lr).mul_mono(Mono::var(v, dr - db)));
    }
}

/// `s`,`u`-degree of a homogeneous polynomial free of `b`.
fn su_degree(p: &Poly) -> Option<i32> {
    let mut it = p.terms().iter().map(|(m, _)| m.exps());
    let e = it.next()?;
    if e[2] != 0 {
        return None;
    }
    let d = e[0] + e[1];
    it.all(|e| e[2] == 0 && e[0] + e[1] == d).then_some(d)
}

/// Fast path when `b` is homogeneous in `s`, `u` and free of `b`, as every
/// denominator in `p = s/u` is. All factors of `b` are then homogeneous, so
/// they divide `a` iff they divide each homogeneous part of it, and two
/// homogeneous polynomials have the gcd of their `u = 1` restrictions.
fn homogeneous_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    su_degree(b)?;
    if su_degree(a).is_some() {
        let dehom = |p: &Poly| p.map_monos(|e| [e[0], 0, 0]);
        let g = gcd(&dehom(a), &dehom(b));
        let d = g.degree_in(0);
        return Some(positive(g.map_monos(|e| [e[0], d - e[0], 0])));
    }
    let mut parts: BTreeMap<(i32, i32), Vec<(Mono, Int)>> = BTreeMap::new();
    for (m, c) in a.terms() {
        let e = m.exps();
        parts.entry((e[0] + e[1], e[2])).or_default().push((*m, c.clone()));
    }
    let mut g = b.clone();
    for (_, t) in parts {
        g = gcd(&g, &Poly::from_terms(t));
        if g.is_constant() {
            return Some(Poly::one());
        }
    }
    Some(positive(g))
}

/// Primitive pseudo-remainder sequence in the first variable present.
fn prs_gcd(a: &Poly, b: &Poly) -> Poly {
    let mask = a.var_mask();
    let Some(v) = (0..NVARS).find(|&v| mask[v]) else {
        return Poly::one();
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut x = a.div_exact(&ca).expect("content divides");
    let mut y = b.div_exact(&cb).expect("content divides");
    if x.degree_in(v) < y.degree_in(v) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() && y.degree_in(v) > 0 {
        let r = prem(&x, &y, v);
        x = y;
        y = if r.is_zero() {
            r
        } else {
            let cr = content_in(&r, v);
            r.div_exact(&cr).expect("content divides")
        };
    }
    let g = if y.is_zero() { primitive_part(&x) } else { Poly::one() };
    primitive_part(&g.mul(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Poly {
        Poly::var(0)
    }
    fn u() -> Poly {
        Poly::var(1)
    }
    fn c(v: i64) -> Poly {
        Poly::from(v)
    }

    #[test]
    fn simple_gcds() {
        let a = s().add(&u());
        let b = s().sub(&u());
        assert_eq!(gcd(&a.mul(&b), &a), a);
        assert!(gcd(&a, &b).is_one());
        let x = a.pow(2).mul(&b).scale(&Int::from(6));
        let y = a.mul(&b.pow(3)).scale(&Int::from(4));
        assert_eq!(gcd(&x, &y), a.mul(&b).scale(&Int::from(2)));
        assert_eq!(gcd(&s().mul(&u()), &s().pow(3)), s());
    }

    #[test]
    fn paths_agree() {
        let f = s().pow(3).mul(&u()).add(&c(3)).sub(&u().pow(2));
        let g = s().mul(&u()).sub(&c(2)).add(&s().pow(2));
        let h = s().pow(2).sub(&u()).add(&c(1));
        let a = f.mul(&h);
        let b = g.mul(&h);
        assert_eq!(primitive_gcd(&a, &b), h);
        assert_eq!(prs_gcd(&a, &b), h);
        assert_eq!(heuristic_gcd(&a, &b), Some(h));
        assert!(!coprime_mod_p(&a, &b));
        assert!(coprime_mod_p(&f, &g));
    }
}
