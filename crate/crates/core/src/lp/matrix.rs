use std::fmt;


use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `yᵀ M`.
    pub fn left_mul_vec(&self, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.rows, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += &(yi * a);
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Parses `rows cols` followed by row-major `num/den` tokens.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .enumerate()
            .flat_map(|(ln, line)| {
                let line = line.split('#').next().unwrap_or("");
                line.split_whitespace()
                    .map(move |t| (ln + 1, t))
                    .collect::<Vec<_>>()
            })
            .peekable();
        let mut dim = |what: &str| -> Result<usize> {
            let (ln, t) = tokens
                .next()
                .ok_or_else(|| Error::parse(1, 1, format!("missing {what}")))?;
            t.parse()
                .map_err(|_| Error::parse(ln, 1, format!("bad {what} `{t}`")))
        };
        let rows = dim("row count")?;
        let cols = dim("column count")?;
        let mut data = Vec::with_capacity(rows * cols);
        for (ln, t) in tokens.by_ref() {
            data.push(
                t.parse::<Rational>()
                    .map_err(|e| Error::parse(ln, 1, e.to_string()))?,
            );
        }
        if data.len() != rows * cols {
            return Err(Error::parse(
                text.lines().count().max(1),
                1,
                format!("expected {} entries, found {}", rows * cols, data.len()),
            ));
        }
        Ok(RationalMatrix { rows, cols, data })
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank over ℚ by fraction-free (Bareiss) elimination on the row-scaled
/// integer matrix.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = m
        .to_rows()
        .into_iter()
        .map(|row| {
            let l = Rational::from_bigint(common_denominator(&row));
            row.iter().map(|v| v * &l).collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = Rational::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = &(&pivot_row[c] * &row[j]) - &(&f * &pivot_row[j]);
                row[j] = &v / &prev;
            }
            row[c] = Rational::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns the matrix rows and pivot columns.
pub(crate) fn rref(m: &RationalMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of the right null space, one vector per non-pivot column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -&r[k][f];
            }
            v
        })
        .collect()
}

/// Unique solution of a square nonsingular system, or `None` if singular.
pub fn solve_square(m: &RationalMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.rows;
    assert_eq!(m.cols, n, "square system expected");
    let mut aug = RationalMatrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n, rhs[i].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(k, &p)| p != k) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&RationalMatrix::identity(4)), 4);
        assert_eq!(rank(&RationalMatrix::zeros(3, 5)), 0);
        let m = RationalMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_of_invertible_is_empty() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]);
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let m = RationalMatrix::from_rows(
            2,
            vec![
                vec![Rational::new(1, 2), Rational::from_integer(-3)],
                vec![Rational::zero(), Rational::new(280, 893)],
            ],
        )
        .unwrap();
        let text = m.to_string();
        assert_eq!(text, "2 2\n1/2 -3\n0 280/893\n");
        assert_eq!(RationalMatrix::parse(&text).unwrap(), m);
        assert!(RationalMatrix::parse("2 2\n1 2 3\n").is_err());
    }

    #[test]
    fn solve_square_system() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 1], vec![1, 3]]);
        let x = solve_square(&m, &[Rational::from_integer(3), Rational::from_integer(5)]).unwrap();
        assert_eq!(x, vec![Rational::new(4, 5), Rational::new(7, 5)]);
        let s = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![2, 2]]);
        assert!(solve_square(&s, &[Rational::one(), Rational::one()]).is_none());
    }

    #[test]
    fn random_rank_transpose_and_kernel() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..7);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-2..3)).collect())
                .collect();
            let m = RationalMatrix::from_i64_rows(&data);
            let r = rank(&m);
            assert_eq!(r, rank(&m.transpose()));
            let k = kernel_basis(&m);
            assert_eq!(k.len(), cols - r);
            for v in &k {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            if !k.is_empty() {
                let km = RationalMatrix::from_rows(cols, k.clone()).unwrap();
                assert_eq!(rank(&km), k.len());
            }
        }
    }
}
