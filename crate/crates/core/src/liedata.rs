//! Lie-theoretic constants of the orthogonal algebras o_{2n+1} (type B) and
//! o_{2n} (type D). Vector-space indices are 0-based: basis vector e_{i+1} of
//! ℂ^N is index i, and i′ = N − 1 − i.

use crate::scalars::{Half, Scalar};
use crate::tensor::{dense_inverse, dense_mul};
use std::fmt;
use thiserror::Error;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum AlgType {
    B,
    D,
}

impl AlgType {
    pub fn parse(s: &str) -> Option<AlgType> {
        match s {
            "B" | "b" => Some(AlgType::B),
            "D" | "d" => Some(AlgType::D),
            _ => None,
        }
    }
}

impl fmt::Display for AlgType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgType::B => "B",
            AlgType::D => "D",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("rank {rank} is below the minimum {min} for type {typ}")]
    Rank { typ: AlgType, rank: usize, min: usize },
    #[error("closed form mismatch at ({i},{j}): inverse gives {got}, table gives {want}")]
    ClosedForm { i: usize, j: usize, got: String, want: String },
    #[error("B(q) is singular")]
    Singular,
}

/// Integer coordinates in the orthonormal basis ε_1…ε_n.
pub type Coords = Vec<i64>;

#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub typ: AlgType,
    pub n: usize,
    /// N = 2n+1 or 2n.
    pub dim: usize,
    pub xi: Scalar,
    pub bars: Vec<Half>,
    /// r_i = (α_i, α_i)/2.
    pub r: Vec<Half>,
    pub qi: Vec<Scalar>,
    pub cartan: Vec<Vec<i64>>,
    /// B = CA, i.e. B_ij = (α_i, α_j).
    pub bmat: Vec<Vec<i64>>,
    pub btilde: Vec<Vec<Scalar>>,
    pub roots: Vec<Coords>,
    pub eps: Vec<Coords>,
}

fn dot(a: &Coords, b: &Coords) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl AlgebraData {
    pub fn new(typ: AlgType, n: usize) -> Result<AlgebraData, LieError> {
        let min = match typ {
            AlgType::B => 1,
            AlgType::D => 2,
        };
        if n < min {
            return Err(LieError::Rank { typ, rank: n, min });
        }
        let dim = match typ {
            AlgType::B => 2 * n + 1,
            AlgType::D => 2 * n,
        };
        let eps: Vec<Coords> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut roots: Vec<Coords> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        let mut last = vec![0; n];
        match typ {
            AlgType::B => last[n - 1] = 1,
            AlgType::D => {
                last[n - 2] = 1;
                last[n - 1] = 1;
            }
        }
        roots.push(last);
        let bmat: Vec<Vec<i64>> = roots.iter().map(|a| roots.iter().map(|b| dot(a, b)).collect()).collect();
        let r: Vec<Half> = (0..n).map(|i| Half(bmat[i][i])).collect();
        let cartan: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| 2 * bmat[i][j] / bmat[i][i]).collect()).collect();
        let qi = r.iter().map(|&h| Scalar::q_half(h)).collect();
        let bars: Vec<Half> = (0..dim)
            .map(|i| match typ {
                AlgType::B => {
                    let k = if i < n { i } else { 2 * n - i } as i64;
                    let h = if i == n { 0 } else { 2 * n as i64 - 1 - 2 * k };
                    Half(if i > n { -h } else { h })
                }
                AlgType::D => {
                    let i = i as i64;
                    let n = n as i64;
                    if i < n {
                        Half(2 * (n - 1 - i))
                    } else {
                        Half(-2 * (i - n))
                    }
                }
            })
            .collect();
        let bq: Vec<Vec<Scalar>> = bmat.iter().map(|row| row.iter().map(|&x| Scalar::int(x)).collect()).collect();
        let btilde = dense_inverse(&bq).map_err(|_| LieError::Singular)?;
        Ok(AlgebraData {
            typ,
            n,
            dim,
            xi: Scalar::q_pow(2 - dim as i64),
            bars,
            r,
            qi,
            cartan,
            bmat,
            btilde,
            roots,
            eps,
        })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.typ, self.n)
    }

    pub fn prime(&self, i: usize) -> usize {
        self.dim - 1 - i
    }

    /// The shift q^{bar_i}, i.e. D_ii.
    pub fn qbar(&self, i: usize) -> Scalar {
        Scalar::q_half(self.bars[i])
    }

    /// (ε_i, α_j) for 1-based i ≤ n, 1-based j.
    pub fn eps_alpha(&self, i: usize, j: usize) -> i64 {
        dot(&self.eps[i - 1], &self.roots[j - 1])
    }

    /// (α_i, α_j), 1-based.
    pub fn alpha_alpha(&self, i: usize, j: usize) -> i64 {
        self.bmat[i - 1][j - 1]
    }

    /// B(q) with entries [B_ij]_q.
    pub fn bq(&self) -> Vec<Vec<Scalar>> {
        self.bmat.iter().map(|row| row.iter().map(|&x| Scalar::qint(x, Half(2))).collect()).collect()
    }

    /// Closed-form table for B̃(q), 1-based indices.
    pub fn btilde_q_closed(&self, i: usize, j: usize) -> Scalar {
        let (i, j) = if j <= i { (i as i64, j as i64) } else { (j as i64, i as i64) };
        let n = self.n as i64;
        let qi = |k: i64| Scalar::qint(k, Half(2));
        let div = |a: Scalar, b: Scalar| a.div(&b).expect("nonzero closed-form denominator");
        match self.typ {
            AlgType::B => {
                let den = qi(n).sub(&qi(n - 1));
                if i == n {
                    div(qi(j), den)
                } else {
                    div(qi(j).mul(&qi(n - i).sub(&qi(n - i - 1))), den)
                }
            }
            AlgType::D => {
                let two = |m: i64| Scalar::qint(2, Half(2 * m));
                if i <= n - 2 {
                    div(qi(j).mul(&two(n - 1 - i)), two(n - 1))
                } else if j <= n - 2 {
                    div(qi(j), two(n - 1))
                } else if i == j {
                    div(qi(n), qi(2).mul(&two(n - 1)))
                } else {
                    div(qi(n - 2), qi(2).mul(&two(n - 1)))
                }
            }
        }
    }

    /// Closed-form table for the rational B̃, 1-based indices.
    pub fn btilde_closed(&self, i: usize, j: usize) -> Scalar {
        let (i, j) = if j <= i { (i as i64, j as i64) } else { (j as i64, i as i64) };
        let n = self.n as i64;
        match self.typ {
            AlgType::B => Scalar::int(j),
            AlgType::D => {
                if i <= n - 2 {
                    Scalar::int(j)
                } else if j <= n - 2 {
                    Scalar::ratio(j, 2)
                } else if i == j {
                    Scalar::ratio(n, 4)
                } else {
                    Scalar::ratio(n - 2, 4)
                }
            }
        }
    }

    /// Inverts B(q) exactly and compares with the closed-form table.
    pub fn btilde_q(&self) -> Result<Vec<Vec<Scalar>>, LieError> {
        let bq = self.bq();
        let inv = dense_inverse(&bq).map_err(|_| LieError::Singular)?;
        let prod = dense_mul(&bq, &inv);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { Scalar::one() } else { Scalar::zero() };
                if *x != want {
                    return Err(LieError::ClosedForm {
                        i: i + 1,
                        j: j + 1,
                        got: x.to_string(),
                        want: want.to_string(),
                    });
                }
            }
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let want = self.btilde_q_closed(i + 1, j + 1);
                if inv[i][j] != want {
                    return Err(LieError::ClosedForm {
                        i: i + 1,
                        j: j + 1,
                        got: inv[i][j].to_string(),
                        want: want.to_string(),
                    });
                }
            }
        }
        Ok(inv)
    }

    /// Text description used by `qav info`.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        let list = |v: &[Half]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ");
        let mat = |m: &[Vec<i64>]| {
            m.iter()
                .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(", ")
        };
        out += &format!("algebra: {}\n", self.name());
        out += &format!("N: {}\n", self.dim);
        out += &format!("xi: {}\n", self.xi);
        out += &format!("bars: ({})\n", list(&self.bars));
        out += &format!(
            "prime: ({})\n",
            (0..self.dim).map(|i| (self.prime(i) + 1).to_string()).collect::<Vec<_>>().join(", ")
        );
        out += &format!("r: ({})\n", list(&self.r));
        out += &format!("q_i: ({})\n", self.qi.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
        out += &format!("cartan: [{}]\n", mat(&self.cartan));
        out += &format!("B: [{}]\n", mat(&self.bmat));
        out += &format!(
            "Btilde: [{}]\n",
            self.btilde
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(", ")
        );
        let coords = |v: &Coords| {
            format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
        };
        out += &format!("simple roots: {}\n", self.roots.iter().map(coords).collect::<Vec<_>>().join(" "));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let b1 = AlgebraData::new(AlgType::B, 1).unwrap();
        assert_eq!(b1.dim, 3);
        assert_eq!(b1.xi, Scalar::q_pow(-1));
        assert_eq!(b1.bars, vec![Half(1), Half(0), Half(-1)]);
        assert_eq!(b1.r, vec![Half(1)]);
        assert_eq!(b1.qi[0], Scalar::s());
        assert_eq!(b1.cartan, vec![vec![2]]);
        let d2 = AlgebraData::new(AlgType::D, 2).unwrap();
        assert_eq!(d2.bars, vec![Half(2), Half(0), Half(0), Half(-2)]);
        assert_eq!(d2.cartan, vec![vec![2, 0], vec![0, 2]]);
        let b2 = AlgebraData::new(AlgType::B, 2).unwrap();
        assert_eq!(b2.cartan, vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(b2.r, vec![Half(2), Half(1)]);
        assert!(AlgebraData::new(AlgType::D, 1).is_err());
    }

    #[test]
    fn btilde_tables() {
        for (t, lo) in [(AlgType::B, 1), (AlgType::D, 2)] {
            for n in lo..=4 {
                let a = AlgebraData::new(t, n).unwrap();
                a.btilde_q().unwrap();
                for i in 0..n {
                    for j in 0..n {
                        assert_eq!(a.btilde[i][j], a.btilde_closed(i + 1, j + 1), "{t}{n} ({i},{j})");
                    }
                }
            }
        }
        let d2 = AlgebraData::new(AlgType::D, 2).unwrap();
        let inv = d2.btilde_q().unwrap();
        let half = Scalar::qint(2, Half(2)).inv().unwrap();
        assert_eq!(inv, vec![vec![half.clone(), Scalar::zero()], vec![Scalar::zero(), half]]);
    }
}
