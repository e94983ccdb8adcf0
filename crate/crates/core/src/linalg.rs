//! Dense Gaussian elimination over Q(s, u, b).

use crate::coeff::RatFunc;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Vec<Vec<RatFunc>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        // prefer the simplest pivot to keep intermediate sizes down
        let pick = (row..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].num().len() + m[r][col].den().len());
        let Some(p) = pick else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut().skip(col) {
            *x = x.mul(&inv);
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..ncols {
                if !m[row][c].is_zero() {
                    let v = m[r][c].sub(&f.mul(&m[row][c]));
                    m[r][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

/// Basis of `{x : M x = 0}`.
pub fn kernel(rows: &[Vec<RatFunc>], ncols: usize) -> Vec<Vec<RatFunc>> {
    let mut m: Vec<Vec<RatFunc>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RatFunc::zero(); ncols];
        v[free] = RatFunc::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        out.push(v);
    }
    out
}

pub fn rank(rows: &[Vec<RatFunc>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Determinant by fraction-based elimination.
pub fn det(m: &[Vec<RatFunc>]) -> RatFunc {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = RatFunc::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return RatFunc::zero();
        };
        if p != col {
            a.swap(p, col);
            d = d.neg();
        }
        let piv = a[col][col].clone();
        d = d.mul(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..n {
                let v = a[r][c].sub(&f.mul(&a[col][c]));
                a[r][c] = v;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn det_and_kernel() {
        let m = vec![vec![rf("s"), rf("u")], vec![rf("s^2"), rf("s*u")]];
        assert!(det(&m).is_zero());
        let k = kernel(&m, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(m[0][0].mul(&v[0]).add(&m[0][1].mul(&v[1])).is_zero());
        let m2 = vec![vec![rf("s"), rf("1")], vec![rf("1"), rf("u")]];
        assert_eq!(det(&m2), rf("s*u-1"));
        assert_eq!(rank(&m2, 2), 2);
        assert!(kernel(&m2, 2).is_empty());
    }
}
