//! Dense matrices over a [`Field`].

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// `sum u_i * conj(v_i)`.
pub fn hermitian_inner(field: &Field, u: &[Elem], v: &[Elem]) -> Result<Elem> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", u.len(), v.len())));
    }
    let mut acc = 0;
    for (&a, &b) in u.iter().zip(v) {
        acc = field.add(acc, field.mul(a, field.conj(b)?));
    }
    Ok(acc)
}

impl Matrix {
    pub fn new(field: Arc<Field>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&e| !field.contains(e)) {
            return Err(Error::Parse(format!("entry {bad} is not an element of {field:?}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from row vectors; all rows must have length `cols`.
    pub fn from_rows(field: Arc<Field>, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Entry-wise conjugate of the transpose.
    pub fn conj_transpose(&self) -> Result<Matrix> {
        let mut out = self.transpose();
        for x in out.data.iter_mut() {
            *x = self.field.conj(*x)?;
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in 0..m.cols {
                    let v = f.mul(neg, m.get(r, j));
                    let idx = i * m.cols + j;
                    m.data[idx] = f.add(m.data[idx], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let red = aug.rref();
        if red.pivots.iter().take_while(|&&c| c < n).count() < n {
            return Err(Error::Singular);
        }
        let mut out = Matrix::zeros(self.field.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.matrix.get(i, n + j));
            }
        }
        Ok(out)
    }

    /// Basis (as rows) of `{v : A v^T = 0}`.
    pub fn null_space(&self) -> Matrix {
        let f = &self.field;
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f.clone(), free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            out.set(b, fc, 1);
            for (i, &pc) in red.pivots.iter().enumerate() {
                out.set(b, pc, f.neg(red.matrix.get(i, fc)));
            }
        }
        out
    }

    /// Text form: header `rows cols p k`, then one space-separated row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {} {}\n", self.rows, self.cols, self.field.p(), self.field.k());
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let nums = parse_numbers(header)?;
        let [rows, cols, p, k] = nums[..] else {
            return Err(Error::Parse(format!("header must be `rows cols p k`, got `{header}`")));
        };
        let field = Field::new(p as u32, k as u32)?;
        let mut data = Vec::with_capacity((rows * cols) as usize);
        let mut seen = 0;
        for line in lines {
            let row = parse_numbers(line)?;
            if row.len() as u64 != cols {
                return Err(Error::Parse(format!("row {seen} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row.into_iter().map(|x| x as Elem));
            seen += 1;
        }
        if seen != rows {
            return Err(Error::Parse(format!("expected {rows} rows, found {seen}")));
        }
        Matrix::new(field, rows as usize, cols as usize, data)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
        .collect()
}
