//! Small exact linear algebra over the rationals.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;
pub type QMatrix = Vec<Vec<Q>>;

pub fn to_q(rows: &[Vec<i64>]) -> QMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + row[k] * b[k][j]))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &QMatrix) -> QMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x -= y * f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &QMatrix) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// A basis of `{x : a x = 0}`, each vector scaled to coprime integers.
pub fn nullspace(a: &QMatrix, cols: usize) -> Vec<Vec<i64>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f];
            }
            integer_multiple(&v)
        })
        .collect()
}

/// The primitive integer vector on the ray of `v`.
pub fn integer_multiple(v: &[Q]) -> Vec<i64> {
    let l = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * Q::from_integer(l)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    let g = if g == 0 { 1 } else { g };
    ints.iter().map(|x| (x / g) as i64).collect()
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut m: QMatrix = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &QMatrix) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest.iter_mut() {
            let f = row[c] / pivot[c];
            for (x, &y) in row[c..n].iter_mut().zip(&pivot[c..n]) {
                *x -= y * f;
            }
        }
    }
    d
}

/// Coefficients of `det(x I - a)`, highest degree first.
pub fn char_poly(a: &QMatrix) -> Vec<i64> {
    let n = a.len();
    let mut coeffs = vec![Q::one()];
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += coeffs[k - 1];
        }
        m = mul(a, &m);
        let tr = (0..n).fold(Q::zero(), |acc, i| acc + m[i][i]);
        coeffs.push(-tr / Q::from_integer(k as i128));
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "characteristic polynomial must be integral");
            c.to_integer() as i64
        })
        .collect()
}

pub fn is_identity(a: &QMatrix) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { Q::one() } else { Q::zero() }))
}

pub fn max_abs(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

pub fn abs_q(x: Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let a = to_q(&[vec![2, 1], vec![1, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(is_identity(&mul(&a, &inv)));
        assert_eq!(det(&a), Q::one());
        assert!(inverse(&to_q(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn nullspace_of_row() {
        let a = to_q(&[vec![1, 1, 1]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn char_poly_rotation() {
        let a = to_q(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(char_poly(&a), vec![1, 0, 1]);
        let b = to_q(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]);
        assert_eq!(char_poly(&b), vec![1, 3, 3, 1]);
    }
}
