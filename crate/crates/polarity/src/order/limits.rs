//! Finite limits of preorders and their mediating maps.

use std::collections::HashMap;

use super::enumerate::monotone_maps;
use super::map::MonotoneMap;
use super::preorder::{Poset, Preorder};
use crate::error::{Error, Result};

/// Uniqueness of mediators is searched exhaustively only when the number of
/// functions from the cone vertex into the limit is at most this.
pub const DEFAULT_MEDIATOR_SEARCH: u64 = 1_000_000;

/// A limit of a finite diagram, presented by its apex and projections.
pub trait Limit {
    fn apex(&self) -> &Preorder;
    fn projections(&self) -> Vec<&MonotoneMap>;
    /// Whether `legs`, already known to be typed like the projections,
    /// form a cone over the diagram.
    fn commutes(&self, legs: &[MonotoneMap]) -> bool;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub apex: Preorder,
    pub proj0: MonotoneMap,
    pub proj1: MonotoneMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equalizer {
    pub apex: Preorder,
    pub incl: MonotoneMap,
    pub f: MonotoneMap,
    pub g: MonotoneMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub apex: Preorder,
    pub proj0: MonotoneMap,
    pub proj1: MonotoneMap,
    pub f0: MonotoneMap,
    pub f1: MonotoneMap,
}

/// A vertex with legs out of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    vertex: Preorder,
    legs: Vec<MonotoneMap>,
}

impl Cone {
    pub fn new(vertex: Preorder, legs: Vec<MonotoneMap>) -> Result<Self> {
        if let Some(k) = legs.iter().position(|l| *l.src() != vertex) {
            return Err(Error::MalformedCone(format!(
                "leg {k} does not start at the vertex"
            )));
        }
        Ok(Cone { vertex, legs })
    }

    pub fn vertex(&self) -> &Preorder {
        &self.vertex
    }

    pub fn legs(&self) -> &[MonotoneMap] {
        &self.legs
    }
}

/// The componentwise order on pairs, listed lexicographically.
pub fn product(p: &Preorder, q: &Preorder) -> Product {
    let (n, m) = (p.len(), q.len());
    let labels = (0..n * m)
        .map(|k| format!("({},{})", p.label(k / m), q.label(k % m)))
        .collect();
    let apex = Preorder::from_fn(labels, |a, b| p.leq(a / m, b / m) && q.leq(a % m, b % m));
    let proj0 = MonotoneMap::new_unchecked(apex.clone(), p.clone(), (0..n * m).map(|k| k / m).collect());
    let proj1 = MonotoneMap::new_unchecked(apex.clone(), q.clone(), (0..n * m).map(|k| k % m).collect());
    Product { apex, proj0, proj1 }
}

/// The one-element poset.
pub fn terminal() -> Poset {
    Poset::new(Preorder::from_fn(vec!["*".to_string()], |_, _| true)).expect("a point is a poset")
}

/// The unique map into [`terminal`].
pub fn bang(p: &Preorder) -> MonotoneMap {
    MonotoneMap::new_unchecked(p.clone(), terminal().into_preorder(), vec![0; p.len()])
}

/// The elements where `f` and `g` agree, with the induced order.
pub fn equalizer(f: &MonotoneMap, g: &MonotoneMap) -> Result<Equalizer> {
    if !f.same_profile(g) {
        return Err(Error::NotParallel);
    }
    let keep: Vec<usize> = (0..f.src().len()).filter(|&a| f.apply(a) == g.apply(a)).collect();
    let apex = f.src().induced(&keep);
    let incl = MonotoneMap::new_unchecked(apex.clone(), f.src().clone(), keep);
    Ok(Equalizer {
        apex,
        incl,
        f: f.clone(),
        g: g.clone(),
    })
}

/// Pairs `(a0, a1)` with `f0(a0) = f1(a1)`, ordered componentwise.
pub fn pullback(f0: &MonotoneMap, f1: &MonotoneMap) -> Result<Pullback> {
    if f0.tgt() != f1.tgt() {
        return Err(Error::MismatchedTargets);
    }
    let (a, b) = (f0.src(), f1.src());
    let pairs: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| f0.apply(i) == f1.apply(j))
        .collect();
    let labels = pairs
        .iter()
        .map(|&(i, j)| format!("({},{})", a.label(i), b.label(j)))
        .collect();
    let apex = Preorder::from_fn(labels, |x, y| {
        a.leq(pairs[x].0, pairs[y].0) && b.leq(pairs[x].1, pairs[y].1)
    });
    let proj0 = MonotoneMap::new_unchecked(apex.clone(), a.clone(), pairs.iter().map(|p| p.0).collect());
    let proj1 = MonotoneMap::new_unchecked(apex.clone(), b.clone(), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback {
        apex,
        proj0,
        proj1,
        f0: f0.clone(),
        f1: f1.clone(),
    })
}

/// `f × g` between products, computed as the pairing of `π0·f` and `π1·g`.
pub fn product_map(f: &MonotoneMap, g: &MonotoneMap) -> MonotoneMap {
    let from = product(f.src(), g.src());
    let to = product(f.tgt(), g.tgt());
    let m = g.src().len();
    let tm = g.tgt().len();
    let image = (0..from.apex.len())
        .map(|k| f.apply(k / m) * tm + g.apply(k % m))
        .collect();
    MonotoneMap::new_unchecked(from.apex, to.apex, image)
}

impl Limit for Product {
    fn apex(&self) -> &Preorder {
        &self.apex
    }
    fn projections(&self) -> Vec<&MonotoneMap> {
        vec![&self.proj0, &self.proj1]
    }
    fn commutes(&self, _legs: &[MonotoneMap]) -> bool {
        true
    }
}

impl Limit for Equalizer {
    fn apex(&self) -> &Preorder {
        &self.apex
    }
    fn projections(&self) -> Vec<&MonotoneMap> {
        vec![&self.incl]
    }
    fn commutes(&self, legs: &[MonotoneMap]) -> bool {
        let h = &legs[0];
        (0..h.src().len()).all(|c| self.f.apply(h.apply(c)) == self.g.apply(h.apply(c)))
    }
}

impl Limit for Pullback {
    fn apex(&self) -> &Preorder {
        &self.apex
    }
    fn projections(&self) -> Vec<&MonotoneMap> {
        vec![&self.proj0, &self.proj1]
    }
    fn commutes(&self, legs: &[MonotoneMap]) -> bool {
        let (c0, c1) = (&legs[0], &legs[1]);
        (0..c0.src().len()).all(|c| self.f0.apply(c0.apply(c)) == self.f1.apply(c1.apply(c)))
    }
}

/// The unique map `c` out of the cone vertex with `c·πᵢ = legᵢ`.
pub fn mediator(cone: &Cone, limit: &impl Limit) -> Result<MonotoneMap> {
    mediator_with_search(cone, limit, DEFAULT_MEDIATOR_SEARCH)
}

/// [`mediator`] with an explicit bound on the exhaustive uniqueness search.
pub fn mediator_with_search(cone: &Cone, limit: &impl Limit, search: u64) -> Result<MonotoneMap> {
    let projections = limit.projections();
    if projections.len() != cone.legs.len() {
        return Err(Error::MalformedCone(format!(
            "expected {} legs, got {}",
            projections.len(),
            cone.legs.len()
        )));
    }
    for (k, (leg, p)) in cone.legs.iter().zip(&projections).enumerate() {
        if leg.tgt() != p.tgt() {
            return Err(Error::MalformedCone(format!("leg {k} has the wrong target")));
        }
    }
    if !limit.commutes(&cone.legs) {
        return Err(Error::ConeNotCommuting);
    }
    let apex = limit.apex();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::with_capacity(apex.len());
    for x in 0..apex.len() {
        let key = projections.iter().map(|p| p.apply(x)).collect();
        if index.insert(key, x).is_some() {
            return Err(Error::Internal(
                "limit projections are not jointly injective".into(),
            ));
        }
    }
    let mut image = Vec::with_capacity(cone.vertex.len());
    for c in 0..cone.vertex.len() {
        let key: Vec<usize> = cone.legs.iter().map(|l| l.apply(c)).collect();
        match index.get(&key) {
            Some(&x) => image.push(x),
            None => {
                return Err(Error::NoMediator(format!(
                    "`{}` has no matching limit element",
                    cone.vertex.label(c)
                )))
            }
        }
    }
    let med = MonotoneMap::new(cone.vertex.clone(), apex.clone(), image)
        .map_err(|e| Error::NoMediator(e.to_string()))?;
    let factors = |c: &MonotoneMap| {
        projections
            .iter()
            .zip(&cone.legs)
            .all(|(p, leg)| c.then(p).as_ref() == Ok(leg))
    };
    if !factors(&med) {
        return Err(Error::Internal("mediator does not factor the cone".into()));
    }
    let functions = (apex.len() as u64).checked_pow(cone.vertex.len() as u32);
    if functions.is_some_and(|count| count <= search) {
        let count = monotone_maps(&cone.vertex, apex)
            .iter()
            .filter(|c| factors(c))
            .count();
        if count != 1 {
            return Err(Error::Internal(format!("{count} mediators found")));
        }
    }
    Ok(med)
}

/// Whether the projections jointly reflect the pointwise order on the pair
/// `f`, `g` of maps into the apex.
pub fn projections_reflect_order(limit: &impl Limit, f: &MonotoneMap, g: &MonotoneMap) -> bool {
    let below = limit.projections().iter().all(|p| match (f.then(p), g.then(p)) {
        (Ok(fp), Ok(gp)) => fp.pointwise_leq(&gp),
        _ => false,
    });
    !below || f.pointwise_leq(g)
}
