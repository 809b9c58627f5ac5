use num::{BigRational, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ClusterError;

/// Skew-symmetric integer exchange matrix ε.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ExMat {
    entries: Vec<Vec<i64>>,
}

impl ExMat {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(ClusterError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in i..n {
                if entries[i][j] != -entries[j][i] {
                    return Err(ClusterError::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(ExMat { entries })
    }

    pub fn zero(rank: usize) -> Self {
        ExMat {
            entries: vec![vec![0; rank]; rank],
        }
    }

    /// Number of indices.
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn check_index(&self, k: usize) -> Result<(), ClusterError> {
        if k < self.rank() {
            Ok(())
        } else {
            Err(ClusterError::IndexOutOfRange {
                index: k,
                rank: self.rank(),
            })
        }
    }
}

impl<'de> Deserialize<'de> for ExMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<Vec<i64>>::deserialize(d)?;
        ExMat::new(entries).map_err(serde::de::Error::custom)
    }
}

/// Quiver mutation at index k:
/// ε′_ij = −ε_ij when k ∈ {i, j}, otherwise ε_ij + (ε_ik|ε_kj| + |ε_ik|ε_kj)/2.
/// The half-sum is always integral, so the result stays an integer matrix.
pub fn mutate_exmat(e: &ExMat, k: usize) -> Result<ExMat, ClusterError> {
    e.check_index(k)?;
    let n = e.rank();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -e.get(i, j)
            } else {
                let cross = e.get(i, k) * e.get(k, j).abs() + e.get(i, k).abs() * e.get(k, j);
                debug_assert_eq!(cross % 2, 0);
                e.get(i, j) + cross / 2
            };
        }
    }
    Ok(ExMat { entries: out })
}

/// A permutation of 0..n stored by its images: i ↦ images[i].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, ClusterError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(ClusterError::NotABijection { images, rank: n });
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, ClusterError> {
        let mut images: Vec<usize> = (0..n).collect();
        if i >= n {
            return Err(ClusterError::IndexOutOfRange { index: i, rank: n });
        }
        if j >= n {
            return Err(ClusterError::IndexOutOfRange { index: j, rank: n });
        }
        images.swap(i, j);
        Ok(Perm { images })
    }

    /// Parses disjoint cycles of 0-based indices, e.g. "(0 1)(2 3)".
    pub fn from_cycles(n: usize, text: &str) -> Result<Self, ClusterError> {
        let mut images: Vec<usize> = (0..n).collect();
        let body = text.trim();
        if body.is_empty() {
            return Ok(Perm { images });
        }
        let mut rest = body;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| ClusterError::Parse {
                what: "cycle notation",
                detail: format!("expected '(' in {rest:?}"),
            })?;
            let close = rest.find(')').ok_or_else(|| ClusterError::Parse {
                what: "cycle notation",
                detail: format!("unclosed cycle in {rest:?}"),
            })?;
            let cycle: Vec<usize> = rest[open + 1..close]
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|e| ClusterError::Parse {
                        what: "cycle notation",
                        detail: format!("bad index {t:?}: {e}"),
                    })
                })
                .collect::<Result<_, _>>()?;
            for &i in &cycle {
                if i >= n {
                    return Err(ClusterError::IndexOutOfRange { index: i, rank: n });
                }
            }
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                images[from] = to;
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// The composite acting as self after other: (self ∘ other)(i) = self(other(i)).
    pub fn compose_after(&self, other: &Perm) -> Result<Perm, ClusterError> {
        if self.len() != other.len() {
            return Err(ClusterError::RankMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Perm {
            images: (0..self.len()).map(|i| self.apply(other.apply(i))).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Perm { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Perm::new(images).map_err(serde::de::Error::custom)
    }
}

/// Relabeling action on the exchange matrix: ε′_{σ(i)σ(j)} = ε_ij.
pub fn permute_exmat(e: &ExMat, sigma: &Perm) -> Result<ExMat, ClusterError> {
    if sigma.len() != e.rank() {
        return Err(ClusterError::RankMismatch {
            left: sigma.len(),
            right: e.rank(),
        });
    }
    let n = e.rank();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[sigma.apply(i)][sigma.apply(j)] = e.get(i, j);
        }
    }
    Ok(ExMat { entries: out })
}

/// Identifies where an integer kernel vector came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaTag {
    Puncture(String),
    Kernel(usize),
}

/// Integer vector θ with ε·θ = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaVec {
    pub coefficients: Vec<i64>,
    pub tag: ThetaTag,
}

impl ThetaVec {
    /// Exact check of kernel membership.
    pub fn in_kernel_of(&self, e: &ExMat) -> bool {
        if self.coefficients.len() != e.rank() {
            return false;
        }
        (0..e.rank()).all(|i| {
            (0..e.rank())
                .map(|j| i128::from(e.get(i, j)) * i128::from(self.coefficients[j]))
                .sum::<i128>()
                == 0
        })
    }
}

/// Integer basis of ker ε, computed by exact rational elimination with the
/// denominators cleared and each vector reduced and sign-normalized.
pub fn kernel_vectors(e: &ExMat) -> Vec<ThetaVec> {
    let n = e.rank();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(e.get(i, j).into())).collect())
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let inv = m[r][c].clone();
            for j in 0..n {
                m[r][j] = &m[r][j] / &inv;
            }
            for i in 0..n {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..n {
                        let delta = &f * &m[r][j];
                        m[i][j] = &m[i][j] - &delta;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
    }

    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::from_integer(1.into());
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        let mut denom_lcm: num::BigInt = 1.into();
        for x in &v {
            denom_lcm = num::integer::lcm(denom_lcm, x.denom().clone());
        }
        let mut ints: Vec<num::BigInt> = v
            .iter()
            .map(|x| (x * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g: num::BigInt = 0.into();
        for x in &ints {
            g = num::integer::gcd(g, x.abs());
        }
        if !g.is_zero() {
            for x in &mut ints {
                *x = &*x / &g;
            }
        }
        if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in &mut ints {
                    *x = -x.clone();
                }
            }
        }
        let coefficients: Vec<i64> = ints
            .iter()
            .map(|x| i64::try_from(x).expect("kernel entries stay in i64 range at desk scale"))
            .collect();
        basis.push(ThetaVec {
            coefficients,
            tag: ThetaTag::Kernel(basis.len()),
        });
    }
    basis
}
