use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::map::MonotoneMap;
use crate::error::{Error, Result};

/// A finite preorder: labelled elements and a reflexive, transitive relation.
///
/// Elements are identified by position; labels are carried along for output.
/// Two preorders are equal when their labels and relation matrices agree.
/// Cloning is cheap, the data is shared.
#[derive(Clone)]
pub struct Preorder {
    inner: Arc<Inner>,
}

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    labels: Vec<String>,
    // row-major, leq[i * n + j] <=> i <= j
    leq: Vec<bool>,
}

impl PartialEq for Preorder {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}

impl Eq for Preorder {}

impl Hash for Preorder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.hash(state);
    }
}

impl fmt::Debug for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.len())
            .map(|i| {
                (0..self.len())
                    .map(|j| if self.leq(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        f.debug_struct("Preorder")
            .field("elements", &self.inner.labels)
            .field("leq", &rows)
            .finish()
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_distinct(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn warshall(n: usize, leq: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
}

impl Preorder {
    /// Builds a preorder from trusted parts. Callers guarantee the axioms.
    pub(crate) fn from_parts(labels: Vec<String>, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), labels.len() * labels.len());
        let p = Preorder {
            inner: Arc::new(Inner { labels, leq }),
        };
        debug_assert!(p.validate().is_ok(), "constructed relation is not a preorder");
        p
    }

    /// Builds a preorder on `labels` whose relation is given by `rel`, which
    /// must already be reflexive and transitive.
    pub(crate) fn from_fn(labels: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = rel(i, j);
            }
        }
        Self::from_parts(labels, leq)
    }

    /// The reflexive-transitive closure of the generating pairs.
    pub fn new<L: AsRef<str>>(labels: Vec<String>, pairs: &[(L, L)]) -> Result<Self> {
        let index = check_distinct(&labels)?;
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in pairs {
            let lookup = |l: &L| {
                index
                    .get(l.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
            };
            let (i, j) = (lookup(a)?, lookup(b)?);
            leq[i * n + j] = true;
        }
        warshall(n, &mut leq);
        Ok(Self::from_parts(labels, leq))
    }

    /// Takes the matrix as given and checks that it is a preorder.
    pub fn from_matrix(labels: Vec<String>, rows: Vec<Vec<bool>>) -> Result<Self> {
        check_distinct(&labels)?;
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MatrixShape { expected: n });
        }
        let p = Preorder {
            inner: Arc::new(Inner {
                labels,
                leq: rows.into_iter().flatten().collect(),
            }),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::NotReflexive(self.label(i).to_string()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::NotTransitive(
                            self.label(i).to_string(),
                            self.label(j).to_string(),
                            self.label(k).to_string(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new())
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(numbered(n), |i, j| i <= j)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(numbered(n), |i, j| i == j)
    }

    /// Every element below every other.
    pub fn indiscrete(n: usize) -> Self {
        Self::from_fn(numbered(n), |_, _| true)
    }

    /// Subsets of `base` ordered by inclusion; element `i` is the subset
    /// with bitmask `i`.
    pub fn powerset(base: &[String]) -> Self {
        let labels = (0..1usize << base.len())
            .map(|mask| subset_label(base, mask as u64))
            .collect();
        Self::from_fn(labels, |i, j| i & !j == 0)
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.inner.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.inner.leq[i * self.len() + j]
    }

    /// Mutual inequality.
    #[inline]
    pub fn equiv(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && self.leq(j, i)
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    pub fn is_poset(&self) -> bool {
        self.poset_witness().is_none()
    }

    /// A pair of distinct equivalent elements, if any.
    pub fn poset_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.equiv(i, j))
    }

    /// Same labels, reversed order.
    pub fn opposite(&self) -> Self {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[j * n + i] = self.leq(i, j);
            }
        }
        Self::from_parts(self.inner.labels.clone(), leq)
    }

    /// Same order, new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::MatrixShape { expected: self.len() });
        }
        check_distinct(&labels)?;
        Ok(Self::from_parts(labels, self.inner.leq.clone()))
    }

    /// The order restricted to `indices`, keeping their labels.
    pub fn induced(&self, indices: &[usize]) -> Self {
        let labels = indices.iter().map(|&i| self.label(i).to_string()).collect();
        Self::from_fn(labels, |a, b| self.leq(indices[a], indices[b]))
    }

    /// Collapses each equivalence class to one element.
    ///
    /// Classes are listed by their least member, which is also the class
    /// representative. A class is labelled by its sorted member labels in
    /// braces.
    pub fn quotient(&self) -> (Poset, MonotoneMap) {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            for (j, class) in class_of.iter_mut().enumerate().skip(i) {
                if self.equiv(i, j) {
                    *class = reps.len();
                    members.push(self.label(j));
                }
            }
            members.sort_unstable();
            labels.push(format!("{{{}}}", members.join(",")));
            reps.push(i);
        }
        let quotient = Preorder::from_fn(labels, |a, b| self.leq(reps[a], reps[b]));
        let canon = MonotoneMap::new_unchecked(self.clone(), quotient.clone(), class_of);
        (Poset(quotient), canon)
    }
}

pub(crate) fn subset_label(base: &[String], mask: u64) -> String {
    let mut members: Vec<&str> = base
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, l)| l.as_str())
        .collect();
    members.sort_unstable();
    format!("{{{}}}", members.join(","))
}

/// A preorder known to be antisymmetric.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poset(Preorder);

impl Poset {
    pub fn new(p: Preorder) -> Result<Self> {
        match p.poset_witness() {
            None => Ok(Poset(p)),
            Some((i, j)) => Err(Error::NotAPoset(p.label(i).to_string(), p.label(j).to_string())),
        }
    }

    pub fn preorder(&self) -> &Preorder {
        &self.0
    }

    pub fn into_preorder(self) -> Preorder {
        self.0
    }

    /// Cover pairs `(i, j)`: `i < j` with nothing strictly between,
    /// in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let p = &self.0;
        let n = p.len();
        let lt = |i: usize, j: usize| i != j && p.leq(i, j);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl Deref for Poset {
    type Target = Preorder;
    fn deref(&self) -> &Preorder {
        &self.0
    }
}

#[derive(Serialize, Deserialize)]
struct PreorderRepr {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Serialize for Preorder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PreorderRepr {
            elements: self.labels().to_vec(),
            leq: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Preorder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PreorderRepr::deserialize(d)?;
        Preorder::from_matrix(repr.elements, repr.leq).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}
