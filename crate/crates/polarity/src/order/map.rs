use std::fmt;

use serde::{Deserialize, Serialize};

use super::preorder::Preorder;
use crate::error::{Error, Result};

/// An order-preserving function between finite preorders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    src: Preorder,
    tgt: Preorder,
    map: Vec<usize>,
}

/// Outcome of comparing two maps in the pointwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HomOrdering {
    Leq,
    Geq,
    Equiv,
    Incomparable,
    /// The maps have different sources or targets.
    UnequalProfile,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", self.src.label(i), self.tgt.label(j)))
            .collect();
        write!(f, "MonotoneMap[{}]", pairs.join(", "))
    }
}

impl MonotoneMap {
    /// Checks totality, range and monotonicity.
    pub fn new(src: Preorder, tgt: Preorder, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.len() {
            return Err(Error::MapLength {
                expected: src.len(),
                got: map.len(),
            });
        }
        if let Some(&index) = map.iter().find(|&&j| j >= tgt.len()) {
            return Err(Error::IndexOutOfRange {
                index,
                len: tgt.len(),
            });
        }
        let f = MonotoneMap { src, tgt, map };
        if let Some((i, j)) = f.monotonicity_witness() {
            return Err(Error::NotMonotone(
                f.src.label(i).to_string(),
                f.src.label(j).to_string(),
                f.tgt.label(f.map[i]).to_string(),
                f.tgt.label(f.map[j]).to_string(),
            ));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: Preorder, tgt: Preorder, map: Vec<usize>) -> Self {
        let f = MonotoneMap { src, tgt, map };
        debug_assert!(f.map.len() == f.src.len() && f.map.iter().all(|&j| j < f.tgt.len()));
        debug_assert!(f.monotonicity_witness().is_none(), "map is not monotone");
        f
    }

    fn monotonicity_witness(&self) -> Option<(usize, usize)> {
        let n = self.src.len();
        for i in 0..n {
            for j in 0..n {
                if self.src.leq(i, j) && !self.tgt.leq(self.map[i], self.map[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn identity(p: &Preorder) -> Self {
        MonotoneMap {
            src: p.clone(),
            tgt: p.clone(),
            map: (0..p.len()).collect(),
        }
    }

    pub fn constant(src: &Preorder, tgt: &Preorder, value: usize) -> Result<Self> {
        Self::new(src.clone(), tgt.clone(), vec![value; src.len()])
    }

    pub fn src(&self) -> &Preorder {
        &self.src
    }

    pub fn tgt(&self) -> &Preorder {
        &self.tgt
    }

    /// The underlying function as a slice of target indices.
    pub fn image(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        if self.tgt != g.src {
            return Err(Error::NotComposable);
        }
        Ok(MonotoneMap {
            src: self.src.clone(),
            tgt: g.tgt.clone(),
            map: self.map.iter().map(|&j| g.map[j]).collect(),
        })
    }

    /// The same function between different endpoints, rechecked.
    pub fn retype(&self, src: &Preorder, tgt: &Preorder) -> Result<MonotoneMap> {
        Self::new(src.clone(), tgt.clone(), self.map.clone())
    }

    pub fn same_profile(&self, other: &MonotoneMap) -> bool {
        self.src == other.src && self.tgt == other.tgt
    }

    /// Pointwise `self(a) <= other(a)`; false when profiles differ.
    pub fn pointwise_leq(&self, other: &MonotoneMap) -> bool {
        self.same_profile(other) && self.map.iter().zip(&other.map).all(|(&a, &b)| self.tgt.leq(a, b))
    }

    /// Pointwise equivalence.
    pub fn equiv(&self, other: &MonotoneMap) -> bool {
        self.pointwise_leq(other) && other.pointwise_leq(self)
    }

    pub fn hom_compare(&self, other: &MonotoneMap) -> HomOrdering {
        if !self.same_profile(other) {
            return HomOrdering::UnequalProfile;
        }
        match (self.pointwise_leq(other), other.pointwise_leq(self)) {
            (true, true) => HomOrdering::Equiv,
            (true, false) => HomOrdering::Leq,
            (false, true) => HomOrdering::Geq,
            (false, false) => HomOrdering::Incomparable,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.tgt.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.tgt.len()];
        for &j in &self.map {
            seen[j] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `a <= b` whenever `f(a) <= f(b)`.
    pub fn reflects_order(&self) -> bool {
        let n = self.src.len();
        (0..n).all(|i| (0..n).all(|j| !self.tgt.leq(self.map[i], self.map[j]) || self.src.leq(i, j)))
    }
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    src: Preorder,
    tgt: Preorder,
    map: Vec<usize>,
}

impl Serialize for MonotoneMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapRepr {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            map: self.map.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonotoneMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MapRepr::deserialize(d)?;
        MonotoneMap::new(r.src, r.tgt, r.map).map_err(serde::de::Error::custom)
    }
}
