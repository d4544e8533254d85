//! Dense exact linear algebra over a [`Field`].

use crate::scalar::Field;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<S: Field>(m: &mut [Vec<S>]) -> Vec<usize> {
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
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d = d.clone() - f.clone() * s.clone();
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Field>(m: &[Vec<S>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<S: Field>(m: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![S::zero(); cols];
        v[free] = S::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[row][free].clone();
        }
        out.push(v);
    }
    out
}

pub fn inverse<S: Field>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut aug: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// One solution of `m x = b`, if any.
pub fn solve<S: Field>(m: &[Vec<S>], b: &[S], cols: usize) -> Option<Vec<S>> {
    let mut aug: Vec<Vec<S>> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// An incrementally grown subspace kept in reduced echelon form.
#[derive(Debug, Clone)]
pub struct Span<S> {
    dim: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Field> Span<S> {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns true if the span grew.
    pub fn insert(&mut self, v: &[S]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        let w: Vec<S> = w.into_iter().map(|x| if x.is_zero() { x } else { x * inv.clone() }).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&w) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<S>> {
        self.rows.iter().map(|(_, r)| r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QScalar;

    fn v(x: &[i64]) -> Vec<QScalar> {
        x.iter().map(|&c| QScalar::from_int(c)).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let m = vec![v(&[1, 2, 3]), v(&[2, 4, 6])];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            for row in &m {
                let dot = row.iter().zip(x).fold(QScalar::zero(), |a, (p, q)| a + p * q);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn inverse_and_solve() {
        let m = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![v(&[1, -1]), v(&[-1, 2])]);
        assert_eq!(solve(&m, &v(&[3, 2]), 2), Some(v(&[1, 1])));
        assert!(inverse(&[v(&[1, 1]), v(&[1, 1])]).is_none());
    }

    #[test]
    fn span_growth() {
        let mut s = Span::new(3);
        assert!(s.insert(&v(&[1, 1, 0])));
        assert!(!s.insert(&v(&[2, 2, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(s.contains(&v(&[1, 2, 1])));
        assert_eq!(s.rank(), 2);
    }
}
