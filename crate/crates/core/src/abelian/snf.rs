//! Smith normal form with unimodular transforms, and the integer linear
//! algebra built on top of it (solving, kernels, column spans).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// Result of [`smith_normal_form`]: `d = u * m * v` with `u`, `v` unimodular.
///
/// The inverses of both transforms are tracked alongside them, so no matrix
/// inversion is ever needed downstream.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Solves `m x = b` over the integers; `None` if there is no integral solution.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.u.mul_vec(b);
        let n = self.v.rows();
        let mut z = vec![BigInt::zero(); n];
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank {
                let (q, r) = yi.div_rem(&self.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&z))
    }

    /// Basis of the integer kernel of `m`, one vector per column.
    pub fn kernel_basis(&self) -> IntegerMatrix {
        let n = self.v.cols();
        let idx: Vec<usize> = (self.rank..n).collect();
        self.v.select_columns(&idx)
    }

    /// Basis of the lattice spanned by the columns of `m`, one vector per column.
    pub fn column_span_basis(&self) -> IntegerMatrix {
        let mut b = self.u_inv.select_columns(&(0..self.rank).collect::<Vec<_>>());
        for j in 0..self.rank {
            let d = self.d[(j, j)].clone();
            if !d.is_one() {
                for i in 0..b.rows() {
                    b[(i, j)] *= &d;
                }
            }
        }
        b
    }
}

/// Computes the Smith normal form of `m`.
///
/// Pivots are chosen as the entry of smallest nonzero absolute value in the
/// remaining submatrix, ties broken by lowest row-major index, so the output is a
/// deterministic function of the input.
pub fn smith_normal_form(m: &IntegerMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut u_inv = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut v_inv = IntegerMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&a, t) else {
            break;
        };
        swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
        swap_cols(&mut a, &mut v, &mut v_inv, t, pj);
        loop {
            let p = a[(t, t)].clone();
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&p);
                if !q.is_zero() {
                    add_row(&mut a, &mut u, &mut u_inv, i, t, &-q);
                }
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&p);
                if !q.is_zero() {
                    add_col(&mut a, &mut v, &mut v_inv, j, t, &-q);
                }
            }
            let dirty = (t + 1..rows).any(|i| !a[(i, t)].is_zero())
                || (t + 1..cols).any(|j| !a[(t, j)].is_zero());
            if dirty {
                // a remainder smaller than the pivot survived; re-pivot on it
                let (pi, pj) = find_pivot(&a, t).expect("nonzero entries remain");
                swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
                swap_cols(&mut a, &mut v, &mut v_inv, t, pj);
                continue;
            }
            if p.magnitude().is_one() {
                break;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad_row {
                Some(i) => add_row(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }

    Smith {
        u,
        u_inv,
        d: a,
        v,
        v_inv,
        rank: t,
    }
}

fn find_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), &BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(_, b)| x.magnitude() < b.magnitude()) {
                if x.magnitude().is_one() {
                    // nothing smaller exists and earlier ties were not found
                    return Some((i, j));
                }
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(ij, _)| ij)
}

fn swap_rows(a: &mut IntegerMatrix, u: &mut IntegerMatrix, u_inv: &mut IntegerMatrix, i: usize, j: usize) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
}

fn swap_cols(a: &mut IntegerMatrix, v: &mut IntegerMatrix, v_inv: &mut IntegerMatrix, i: usize, j: usize) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
}

/// `row[target] += c * row[source]`, keeping `u` and its inverse in sync.
fn add_row(
    a: &mut IntegerMatrix,
    u: &mut IntegerMatrix,
    u_inv: &mut IntegerMatrix,
    target: usize,
    source: usize,
    c: &BigInt,
) {
    a.add_row_multiple(target, source, c);
    u.add_row_multiple(target, source, c);
    u_inv.add_col_multiple(source, target, &-c);
}

/// `col[target] += c * col[source]`, keeping `v` and its inverse in sync.
fn add_col(
    a: &mut IntegerMatrix,
    v: &mut IntegerMatrix,
    v_inv: &mut IntegerMatrix,
    target: usize,
    source: usize,
    c: &BigInt,
) {
    a.add_col_multiple(target, source, c);
    v.add_col_multiple(target, source, c);
    v_inv.add_row_multiple(source, target, &-c);
}

/// Solves `m x = b` over the integers.
pub fn solve_integer(m: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    smith_normal_form(m).solve(b)
}

/// Hermite normal form of the lattice spanned by the given rows: returns a basis
/// (as rows) in echelon form with positive pivots and reduced entries above each
/// pivot. Two generating sets of the same lattice give identical output.
pub fn hermite_rows(m: &IntegerMatrix) -> IntegerMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c among rows r..
            let mut best: Option<(usize, BigInt)> = None;
            for i in r..rows {
                let x = a[(i, c)].abs();
                if !x.is_zero() && best.as_ref().is_none_or(|(_, b)| x < *b) {
                    best = Some((i, x));
                }
            }
            let Some((pi, _)) = best else { break };
            a.swap_rows(r, pi);
            let p = a[(r, c)].clone();
            let mut clean = true;
            for i in r + 1..rows {
                let q = a[(i, c)].div_floor(&p);
                a.add_row_multiple(i, r, &-q);
                if !a[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < rows && !a[(r, c)].is_zero() {
            if a[(r, c)].is_negative() {
                a.negate_row(r);
            }
            let p = a[(r, c)].clone();
            for i in 0..r {
                let q = a[(i, c)].div_floor(&p);
                a.add_row_multiple(i, r, &-q);
            }
            r += 1;
        }
    }
    a.block(0, 0, r, cols)
}

/// Coordinates of `v` in the basis given by the rows of `echelon`, a matrix in
/// the form returned by [`hermite_rows`]; `None` when `v` is not in the span.
pub fn solve_echelon(echelon: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(echelon.rows());
    for i in 0..echelon.rows() {
        let row = echelon.row(i);
        let pivot = row.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
        if rest[..pivot].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rest[pivot].div_rem(&row[pivot]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in rest.iter_mut().zip(&row).skip(pivot) {
                *x -= &q * y;
            }
        }
        coords.push(q);
    }
    rest.iter().all(|x| x.is_zero()).then_some(coords)
}

/// A basis (as columns) of the integer kernel of `m`, computed by row reducing
/// `[m^T | I]` without tracking the inverse transforms an SNF would need.
pub fn integer_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let reduced = hermite_rows(&m.transpose().hstack(&IntegerMatrix::identity(cols)));
    let kernel_rows: Vec<Vec<BigInt>> = (0..reduced.rows())
        .map(|i| reduced.row(i))
        .filter(|row| row[..rows].iter().all(|x| x.is_zero()))
        .map(|row| row[rows..].to_vec())
        .collect();
    IntegerMatrix::from_rows(cols, &kernel_rows).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!((&s.u * &s.u_inv).is_identity());
        assert!((&s.v * &s.v_inv).is_identity());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntegerMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntegerMatrix::identity(4));
        assert!(s.d.is_identity());
        let s = check(&IntegerMatrix::zeros(3, 2));
        assert!(s.d.is_zero());
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn deterministic() {
        let m = IntegerMatrix::from_i64(&[&[3, 7, 1], &[5, -2, 9], &[0, 4, 4]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.u, b.u);
        assert_eq!(a.v, b.v);
    }

    #[test]
    fn solving_and_kernels() {
        let m = IntegerMatrix::from_i64(&[&[2, 4, 6]]);
        let s = check(&m);
        assert!(s.solve(&[BigInt::from(3)]).is_none());
        let x = s.solve(&[BigInt::from(8)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![BigInt::from(8)]);
        let k = s.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).is_zero());
        let k2 = integer_kernel(&m);
        assert_eq!(hermite_rows(&k.transpose()), hermite_rows(&k2.transpose()));
        assert_eq!(integer_kernel(&IntegerMatrix::identity(3)).cols(), 0);
        let h = hermite_rows(&k.transpose());
        let target: Vec<BigInt> = [5, -7, 3].iter().map(|&x| BigInt::from(x)).collect();
        assert!((&m * &IntegerMatrix::from_rows(3, std::slice::from_ref(&target)).transpose()).is_zero());
        let coords = solve_echelon(&h, &target).unwrap();
        assert_eq!(h.transpose().mul_vec(&coords), target);
        assert!(solve_echelon(&h, &[BigInt::from(1), BigInt::from(0), BigInt::from(0)]).is_none());
    }

    #[test]
    fn hermite_is_canonical() {
        let a = IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let b = IntegerMatrix::from_i64(&[&[2, 3], &[4, 3], &[0, 6]]);
        assert_eq!(hermite_rows(&a), hermite_rows(&b));
    }
}
