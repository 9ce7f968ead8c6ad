//! Dense exact rational matrices.
//!
//! Pivoting is deterministic: the pivot of each step is the first nonzero
//! column, and within it the smallest row index. Every routine here is exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RatMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
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

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
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

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Integer entries, or `None` when some entry is not an integer.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_integral() {
            return None;
        }
        Some((0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_integer()).collect()).collect())
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x /= &g;
        }
    }
}

/// Reduced row echelon form of a list of rows of width `cols`, in place.
/// Zero rows are dropped; returns the pivot columns.
///
/// Elimination runs on primitive integer rows (content divided out after
/// every update), which avoids a gcd per rational operation.
pub fn rref_rows(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut ints: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == ints.len() {
            break;
        }
        let Some(p) = (r..ints.len()).find(|&i| !ints[i][c].is_zero()) else {
            continue;
        };
        ints.swap(r, p);
        let (head, tail) = ints.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&other[c]);
            let a = &pivot_row[c] / &g;
            let b = &other[c] / &g;
            for k in 0..cols {
                let scaled = if a.is_one() || other[k].is_zero() { None } else { Some(&a * &other[k]) };
                if let Some(v) = scaled {
                    other[k] = v;
                }
                if k >= c && !pivot_row[k].is_zero() {
                    other[k] -= &b * &pivot_row[k];
                }
            }
            make_primitive(other);
        }
        pivots.push(c);
        r += 1;
    }
    ints.truncate(r);
    *rows = ints
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let pv = row[c].clone();
            row.into_iter().map(|x| Rational::new(x, pv.clone())).collect()
        })
        .collect();
    pivots
}

pub fn rref(m: &RatMatrix) -> Rref {
    let mut rows = m.to_rows();
    let pivots = rref_rows(&mut rows, m.cols);
    let rank = pivots.len();
    let mut matrix = RatMatrix::zeros(m.rows, m.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            matrix.set(i, j, x);
        }
    }
    Rref { matrix, pivots, rank }
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).rank
}

pub fn rank_of_rows(rows: &[Vec<Rational>], cols: usize) -> usize {
    let mut rows = rows.to_vec();
    rref_rows(&mut rows, cols).len()
}

/// Kernel of the matrix whose (already reduced) rows are `rows`, one vector
/// per free column in increasing order.
fn kernel_from_rref(rows: &[Vec<Rational>], pivots: &[usize], cols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in rows.iter().zip(pivots) {
                if !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            v
        })
        .collect()
}

pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let mut rows = m.to_rows();
    let pivots = rref_rows(&mut rows, m.cols);
    kernel_from_rref(&rows, &pivots, m.cols)
}

/// Basis of `{w : <w, v> = 0 for all v in rows}` for the standard pairing.
pub fn orth_complement(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    assert!(rows.iter().all(|r| r.len() == dim), "vector length differs from dim");
    let mut rows = rows.to_vec();
    let pivots = rref_rows(&mut rows, dim);
    kernel_from_rref(&rows, &pivots, dim)
}

/// The canonical (reduced echelon) basis of the span of `rows`.
pub fn canonical_basis(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut rows = rows.to_vec();
    rref_rows(&mut rows, dim);
    rows
}

pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> bool {
    let ra = rank_of_rows(a, dim);
    let rb = rank_of_rows(b, dim);
    if ra != rb {
        return false;
    }
    let joined: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    rank_of_rows(&joined, dim) == ra
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Incrementally maintained echelon basis; used to test membership and
/// grow spans one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for k in 0..self.dim {
                if !row[k].is_zero() {
                    let d = &f * &row[k];
                    v[k] -= d;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` and returns true when it enlarges the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for k in 0..self.dim {
                if !w[k].is_zero() {
                    let d = &f * &w[k];
                    row[k] -= d;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

pub fn is_nonneg_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}
