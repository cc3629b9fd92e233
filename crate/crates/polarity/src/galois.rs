//! Adjunctions between finite preorders and the closure operators they induce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{enumerate, equalizer, product_map, Equalizer, MonotoneMap, Preorder};

/// A Galois connection `left ⊣ right` between `A0 = left.src()` and
/// `A1 = left.tgt()`: `a <= right(b)` iff `left(a) <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Adjunction {
    left: MonotoneMap,
    right: MonotoneMap,
}

/// Which of the reflection-like classes an adjunction belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismClass {
    pub is_reflection: bool,
    pub is_coreflection: bool,
    pub is_pseudo_reflection: bool,
    pub is_pseudo_coreflection: bool,
    pub is_equivalence: bool,
    pub is_isomorphism: bool,
}

/// A subobject `sub ↪ ambient` cut out as an equalizer, together with a
/// map back onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubobjectInclusion {
    pub equalizer: Equalizer,
    /// Sends an element to the fixed point equivalent to its image under
    /// the operator. Missing when some image has no such fixed point, which
    /// can only happen on a non-posetal carrier.
    pub corestriction: Option<MonotoneMap>,
    /// Whether `incl·corestriction = 1` and `corestriction·incl` is the
    /// operator itself, both on the nose.
    pub strict: bool,
}

impl SubobjectInclusion {
    pub fn sub(&self) -> &Preorder {
        &self.equalizer.apex
    }

    pub fn incl(&self) -> &MonotoneMap {
        &self.equalizer.incl
    }

    /// The corestriction; panics on a subobject without one. Posetal
    /// carriers always have one.
    pub fn retraction(&self) -> &MonotoneMap {
        self.corestriction
            .as_ref()
            .expect("corestriction exists on posetal carriers")
    }
}

impl Adjunction {
    /// Checks shape, unit and counit, and cross-checks the hom-set form.
    pub fn new(left: MonotoneMap, right: MonotoneMap) -> Result<Self> {
        if left.src() != right.tgt() || left.tgt() != right.src() {
            return Err(Error::ShapeMismatch);
        }
        let (a0, a1) = (left.src(), left.tgt());
        for a in 0..a0.len() {
            let closed = right.apply(left.apply(a));
            if !a0.leq(a, closed) {
                return Err(Error::UnitViolated {
                    element: a0.label(a).to_string(),
                    image: a0.label(closed).to_string(),
                });
            }
        }
        for b in 0..a1.len() {
            let open = left.apply(right.apply(b));
            if !a1.leq(open, b) {
                return Err(Error::CounitViolated {
                    element: a1.label(b).to_string(),
                    image: a1.label(open).to_string(),
                });
            }
        }
        for a in 0..a0.len() {
            for b in 0..a1.len() {
                if a0.leq(a, right.apply(b)) != a1.leq(left.apply(a), b) {
                    return Err(Error::Internal(format!(
                        "hom-set form fails at ({}, {})",
                        a0.label(a),
                        a1.label(b)
                    )));
                }
            }
        }
        Ok(Adjunction { left, right })
    }

    pub(crate) fn new_unchecked(left: MonotoneMap, right: MonotoneMap) -> Self {
        debug_assert!(Self::new(left.clone(), right.clone()).is_ok());
        Adjunction { left, right }
    }

    pub fn identity(p: &Preorder) -> Self {
        let id = MonotoneMap::identity(p);
        Adjunction {
            left: id.clone(),
            right: id,
        }
    }

    pub fn left(&self) -> &MonotoneMap {
        &self.left
    }

    pub fn right(&self) -> &MonotoneMap {
        &self.right
    }

    pub fn source(&self) -> &Preorder {
        self.left.src()
    }

    pub fn target(&self) -> &Preorder {
        self.left.tgt()
    }

    pub fn is_posetal(&self) -> bool {
        self.source().is_poset() && self.target().is_poset()
    }

    /// `self` followed by `h`.
    pub fn then(&self, h: &Adjunction) -> Result<Adjunction> {
        if self.target() != h.source() {
            return Err(Error::NotComposable);
        }
        Ok(Adjunction {
            left: self.left.then(&h.left)?,
            right: h.right.then(&self.right)?,
        })
    }

    /// `right ⊣ left` between the opposite orders.
    pub fn involution(&self) -> Adjunction {
        let (a0, a1) = (self.source().opposite(), self.target().opposite());
        Adjunction {
            left: MonotoneMap::new_unchecked(a1.clone(), a0.clone(), self.right.image().to_vec()),
            right: MonotoneMap::new_unchecked(a0, a1, self.left.image().to_vec()),
        }
    }

    /// `a ↦ right(left(a))` on the source.
    pub fn closure(&self) -> MonotoneMap {
        self.left.then(&self.right).expect("adjoints are anti-parallel")
    }

    /// `b ↦ left(right(b))` on the target.
    pub fn interior(&self) -> MonotoneMap {
        self.right.then(&self.left).expect("adjoints are anti-parallel")
    }

    /// Both components pointwise equivalent.
    pub fn equiv(&self, other: &Adjunction) -> bool {
        self.left.equiv(&other.left) && self.right.equiv(&other.right)
    }

    pub fn classify(&self) -> MorphismClass {
        let closure = self.closure();
        let interior = self.interior();
        let id0 = MonotoneMap::identity(self.source());
        let id1 = MonotoneMap::identity(self.target());
        let is_reflection = interior.is_identity();
        let is_coreflection = closure.is_identity();
        let is_pseudo_reflection = interior.equiv(&id1);
        let is_pseudo_coreflection = closure.equiv(&id0);
        MorphismClass {
            is_reflection,
            is_coreflection,
            is_pseudo_reflection,
            is_pseudo_coreflection,
            is_equivalence: is_pseudo_reflection && is_pseudo_coreflection,
            is_isomorphism: is_reflection && is_coreflection,
        }
    }

    pub fn closed_elements(&self) -> SubobjectInclusion {
        fixed_points(self.closure())
    }

    pub fn open_elements(&self) -> SubobjectInclusion {
        fixed_points(self.interior())
    }
}

fn fixed_points(op: MonotoneMap) -> SubobjectInclusion {
    let carrier = op.src().clone();
    let eq = equalizer(&MonotoneMap::identity(&carrier), &op).expect("endomap is parallel to 1");
    let fixed = eq.incl.image();
    let image: Option<Vec<usize>> = (0..carrier.len())
        .map(|a| fixed.iter().position(|&c| carrier.equiv(c, op.apply(a))))
        .collect();
    let corestriction = image.map(|m| MonotoneMap::new_unchecked(carrier.clone(), eq.apex.clone(), m));
    let strict = corestriction.as_ref().is_some_and(|c| {
        eq.incl.then(c).is_ok_and(|r| r.is_identity()) && c.then(&eq.incl).as_ref() == Ok(&op)
    });
    SubobjectInclusion {
        equalizer: eq,
        corestriction,
        strict,
    }
}

/// Checks `left`, `right` form an adjunction.
pub fn verify_adjunction(left: &MonotoneMap, right: &MonotoneMap) -> Result<Adjunction> {
    Adjunction::new(left.clone(), right.clone())
}

/// The right adjoint of `left`, if every `{a | left(a) <= b}` has a greatest
/// element up to equivalence. Ties go to the least index.
pub fn right_adjoint(left: &MonotoneMap) -> Option<Adjunction> {
    let (a0, a1) = (left.src(), left.tgt());
    let mut image = Vec::with_capacity(a1.len());
    for b in 0..a1.len() {
        let below: Vec<usize> = (0..a0.len()).filter(|&a| a1.leq(left.apply(a), b)).collect();
        let top = below
            .iter()
            .copied()
            .find(|&m| below.iter().all(|&a| a0.leq(a, m)))?;
        image.push(top);
    }
    let right = MonotoneMap::new(a1.clone(), a0.clone(), image).ok()?;
    Adjunction::new(left.clone(), right).ok()
}

/// `g` followed by `h`.
pub fn compose_adjunctions(g: &Adjunction, h: &Adjunction) -> Result<Adjunction> {
    g.then(h)
}

pub fn involution(g: &Adjunction) -> Adjunction {
    g.involution()
}

pub fn closure(g: &Adjunction) -> MonotoneMap {
    g.closure()
}

pub fn interior(g: &Adjunction) -> MonotoneMap {
    g.interior()
}

pub fn closed_elements(g: &Adjunction) -> SubobjectInclusion {
    g.closed_elements()
}

pub fn open_elements(g: &Adjunction) -> SubobjectInclusion {
    g.open_elements()
}

pub fn classify(g: &Adjunction) -> MorphismClass {
    g.classify()
}

/// The componentwise adjunction between products.
pub fn product_adjunction(g: &Adjunction, h: &Adjunction) -> Adjunction {
    Adjunction::new_unchecked(product_map(g.left(), h.left()), product_map(g.right(), h.right()))
}

/// Every adjunction from `a` to `b`.
pub fn all_adjunctions(a: &Preorder, b: &Preorder) -> Vec<Adjunction> {
    let lefts = enumerate::monotone_maps(a, b);
    if a.is_poset() {
        // right adjoints into a poset are unique
        return lefts.iter().filter_map(right_adjoint).collect();
    }
    let rights = enumerate::monotone_maps(b, a);
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            if let Ok(g) = Adjunction::new(l.clone(), r.clone()) {
                out.push(g);
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct AdjunctionRepr {
    left: MonotoneMap,
    right: MonotoneMap,
}

impl Serialize for Adjunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AdjunctionRepr {
            left: self.left.clone(),
            right: self.right.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Adjunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = AdjunctionRepr::deserialize(d)?;
        Adjunction::new(r.left, r.right).map_err(serde::de::Error::custom)
    }
}

/// The two maps of an adjunction document, before any verification.
pub fn parse_adjunction_maps(json: &str) -> serde_json::Result<(MonotoneMap, MonotoneMap)> {
    let r: AdjunctionRepr = serde_json::from_str(json)?;
    Ok((r.left, r.right))
}
