use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::ClusterError;
use crate::exmat::{mutate_exmat, permute_exmat, ExMat, Perm};

/// One step applied to a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    Mutate(usize),
    Permute(Perm),
}

/// A cluster seed: exchange matrix, generator labels, and the move history
/// that produced it from the initial matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    exmat: ExMat,
    labels: Vec<String>,
    initial: ExMat,
    history: Vec<Move>,
}

impl Seed {
    pub fn new(exmat: ExMat, labels: Vec<String>) -> Result<Self, ClusterError> {
        if labels.len() != exmat.rank() {
            return Err(ClusterError::RankMismatch {
                left: labels.len(),
                right: exmat.rank(),
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(ClusterError::DuplicateLabel { label: l.clone() });
            }
        }
        Ok(Seed {
            initial: exmat.clone(),
            exmat,
            labels,
            history: Vec::new(),
        })
    }

    pub fn with_default_labels(exmat: ExMat) -> Self {
        let labels = (0..exmat.rank()).map(|i| format!("X{i}")).collect();
        Seed::new(exmat, labels).expect("default labels are distinct")
    }

    pub fn rank(&self) -> usize {
        self.exmat.rank()
    }

    pub fn exmat(&self) -> &ExMat {
        &self.exmat
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    /// Mutation at index k; the new seed keeps the labels in place and
    /// records the move.
    pub fn mutate(&self, k: usize) -> Result<Seed, ClusterError> {
        let exmat = mutate_exmat(&self.exmat, k)?;
        let mut history = self.history.clone();
        history.push(Move::Mutate(k));
        Ok(Seed {
            exmat,
            labels: self.labels.clone(),
            initial: self.initial.clone(),
            history,
        })
    }

    /// Relabeling by σ: entry (σi, σj) of the new matrix is entry (i, j) of
    /// the old one, and the label at position σi moves along with it.
    pub fn permute(&self, sigma: &Perm) -> Result<Seed, ClusterError> {
        let exmat = permute_exmat(&self.exmat, sigma)?;
        let mut labels = vec![String::new(); self.labels.len()];
        for i in 0..self.labels.len() {
            labels[sigma.apply(i)] = self.labels[i].clone();
        }
        let mut history = self.history.clone();
        history.push(Move::Permute(sigma.clone()));
        Ok(Seed {
            exmat,
            labels,
            initial: self.initial.clone(),
            history,
        })
    }

    pub fn apply(&self, m: &Move) -> Result<Seed, ClusterError> {
        match m {
            Move::Mutate(k) => self.mutate(*k),
            Move::Permute(sigma) => self.permute(sigma),
        }
    }

    /// Replays the recorded history from the initial matrix and checks that
    /// it reproduces the current one.
    pub fn history_is_consistent(&self) -> bool {
        let mut e = self.initial.clone();
        for m in &self.history {
            e = match m {
                Move::Mutate(k) => match mutate_exmat(&e, *k) {
                    Ok(next) => next,
                    Err(_) => return false,
                },
                Move::Permute(sigma) => match permute_exmat(&e, sigma) {
                    Ok(next) => next,
                    Err(_) => return false,
                },
            };
        }
        e == self.exmat
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Seed", 3)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("epsilon", &self.exmat)?;
        st.serialize_field("labels", &self.labels)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct SeedRepr {
    rank: usize,
    epsilon: ExMat,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SeedRepr::deserialize(d)?;
        if r.rank != r.epsilon.rank() {
            return Err(serde::de::Error::custom(format!(
                "declared rank {} does not match the {}x{} matrix",
                r.rank,
                r.epsilon.rank(),
                r.epsilon.rank()
            )));
        }
        match r.labels {
            Some(labels) => Seed::new(r.epsilon, labels).map_err(serde::de::Error::custom),
            None => Ok(Seed::with_default_labels(r.epsilon)),
        }
    }
}
