//! Minimal exact linear algebra over the rationals: just what the rotation
//! and affine-equivalence machinery needs (tiny square matrices).

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::Rat;

/// Dense square matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    n: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RatMat {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Rat>]) -> Self {
        let n = cols.len();
        assert!(cols.iter().all(|c| c.len() == n), "matrix must be square");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        RatMat { n, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat {
            n,
            data: vec![Rat::zero(); n * n],
        };
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.n + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let mut rows = Vec::with_capacity(self.n);
        for j in 0..self.n {
            rows.push((0..self.n).map(|i| self.at(i, j).clone()).collect());
        }
        RatMat::from_rows(rows)
    }

    pub fn mul(&self, rhs: &RatMat) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = RatMat {
            n: self.n,
            data: vec![Rat::zero(); self.n * self.n],
        };
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Rat::zero();
                for k in 0..self.n {
                    acc = acc + self.at(i, k) * rhs.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, x) in v.iter().enumerate() {
                    acc = acc + self.at(i, j) * x;
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free expansion for the sizes in play.
    pub fn det(&self) -> Rat {
        match self.n {
            0 => Rat::one(),
            1 => self.at(0, 0).clone(),
            2 => self.at(0, 0) * self.at(1, 1) - self.at(0, 1) * self.at(1, 0),
            _ => {
                // Gaussian elimination; fine for the tiny matrices here.
                let mut m = self.clone();
                let mut det = Rat::one();
                for col in 0..m.n {
                    let pivot = (col..m.n).find(|&i| !m.at(i, col).is_zero());
                    let Some(p) = pivot else {
                        return Rat::zero();
                    };
                    if p != col {
                        for j in 0..m.n {
                            m.data.swap(p * m.n + j, col * m.n + j);
                        }
                        det = -det;
                    }
                    let lead = m.at(col, col).clone();
                    det = det * &lead;
                    for i in col + 1..m.n {
                        let factor = m.at(i, col) / &lead;
                        for j in col..m.n {
                            let v = m.at(i, j) - &(&factor * m.at(col, j));
                            *m.at_mut(i, j) = v;
                        }
                    }
                }
                det
            }
        }
    }

    /// Exact inverse via Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<RatMat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a.at(i, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let lead = a.at(col, col).clone();
            for j in 0..n {
                *a.at_mut(col, j) = a.at(col, j) / &lead;
                *inv.at_mut(col, j) = inv.at(col, j) / &lead;
            }
            for i in 0..n {
                if i == col || a.at(i, col).is_zero() {
                    continue;
                }
                let factor = a.at(i, col).clone();
                for j in 0..n {
                    let va = a.at(i, j) - &(&factor * a.at(col, j));
                    *a.at_mut(i, j) = va;
                    let vi = inv.at(i, j) - &(&factor * inv.at(col, j));
                    *inv.at_mut(i, j) = vi;
                }
            }
        }
        Some(inv)
    }
}

impl std::fmt::Debug for RatMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl Serialize for RatMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[Rat]> = (0..self.n).map(|i| self.row(i)).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatMat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rat>>::deserialize(deserializer)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("matrix must be square"));
        }
        Ok(RatMat::from_rows(rows))
    }
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}
