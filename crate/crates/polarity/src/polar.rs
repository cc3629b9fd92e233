//! Polar factorization of an adjunction through its axis.
//!
//! For an adjunction `g : A0 ⇌ A1` between posets the axis is the poset of
//! pairs `(c, o)` of a closed element `c` of `A0` and an open element `o` of
//! `A1` that determine each other: `left(c) = o` and `right(o) = c`. Every
//! such `g` factors as a reflection onto the axis followed by a coreflection
//! out of it. Factoring through the closed elements alone, or the open
//! elements alone, gives two more factorizations, isomorphic to the first.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::galois::{all_adjunctions, Adjunction, SubobjectInclusion};
use crate::order::{mediator, Cone, MonotoneMap, Preorder};
use crate::report::LawCheck;

/// Fill-ins are checked for uniqueness by exhaustive search when both
/// carriers of the fill have at most this many elements.
pub const DEFAULT_FILL_SEARCH: usize = 4;
/// The same bound for the pseudo fill, whose search ranges over preorders.
pub const DEFAULT_PSEUDO_FILL_SEARCH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Through the axis.
    Full,
    /// Through the closed elements of the source.
    Closed,
    /// Through the open elements of the target.
    Open,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Full, Flavor::Closed, Flavor::Open];
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Full => "full",
            Flavor::Closed => "closed",
            Flavor::Open => "open",
        })
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(Flavor::Full),
            "closed" => Ok(Flavor::Closed),
            "open" => Ok(Flavor::Open),
            other => Err(format!(
                "unknown flavor `{other}` (expected full, closed or open)"
            )),
        }
    }
}

/// The axis order with its projections `pi0`, `pi1` and embeddings `xi0`, `xi1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub order: Preorder,
    /// `(closed, open)` for each axis element, as indices into `A0` and `A1`.
    pub pairs: Vec<(usize, usize)>,
    /// axis → A0
    pub pi0: MonotoneMap,
    /// axis → A1
    pub pi1: MonotoneMap,
    /// A0 → axis, `a ↦ (closure(a), left(a))`
    pub xi0: MonotoneMap,
    /// A1 → axis, `b ↦ (right(b), interior(b))`
    pub xi1: MonotoneMap,
}

/// A factorization `g = reflection · coreflection` through `axis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarFactorization {
    pub flavor: Flavor,
    pub source: Preorder,
    pub reflection: Adjunction,
    pub axis: Preorder,
    pub coreflection: Adjunction,
    pub target: Preorder,
    /// Legs are in the right classes and compose to the factored adjunction.
    pub identities_verified: bool,
}

impl PolarFactorization {
    fn new(flavor: Flavor, g: &Adjunction, reflection: Adjunction, coreflection: Adjunction) -> Self {
        let identities_verified = reflection.classify().is_reflection
            && coreflection.classify().is_coreflection
            && reflection.then(&coreflection).as_ref() == Ok(g);
        PolarFactorization {
            flavor,
            source: g.source().clone(),
            axis: reflection.target().clone(),
            target: g.target().clone(),
            reflection,
            coreflection,
            identities_verified,
        }
    }

    /// The composite of the two legs.
    pub fn compose(&self) -> Result<Adjunction> {
        self.reflection.then(&self.coreflection)
    }
}

impl Serialize for PolarFactorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            flavor: Flavor,
            axis: &'a Preorder,
            reflection: &'a Adjunction,
            coreflection: &'a Adjunction,
            identities_verified: bool,
        }
        Repr {
            flavor: self.flavor,
            axis: &self.axis,
            reflection: &self.reflection,
            coreflection: &self.coreflection,
            identities_verified: self.identities_verified,
        }
        .serialize(s)
    }
}

/// Everything derived from one adjunction with posetal endpoints: closed and
/// open elements, the restricted adjoints, the axis, and the maps between
/// the three middle objects.
#[derive(Clone, Debug)]
pub struct Polar {
    pub g: Adjunction,
    pub closed: SubobjectInclusion,
    pub open: SubobjectInclusion,
    /// clo → A1
    pub left_closed: MonotoneMap,
    /// A1 → clo
    pub right_closed: MonotoneMap,
    /// A0 → open
    pub left_open: MonotoneMap,
    /// open → A0
    pub right_open: MonotoneMap,
    /// clo → open
    pub closed_to_open: MonotoneMap,
    /// open → clo
    pub open_to_closed: MonotoneMap,
    pub axis: Axis,
    pub axis_to_closed: MonotoneMap,
    pub axis_to_open: MonotoneMap,
    pub closed_to_axis: MonotoneMap,
    pub open_to_axis: MonotoneMap,
}

fn internal(what: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::Internal(format!("{what}: {e}"))
}

fn check(ok: bool, law: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::IdentityFailed(law.to_string()))
    }
}

impl Polar {
    pub fn of(g: &Adjunction) -> Result<Polar> {
        if !g.source().is_poset() {
            return Err(Error::NonPosetal { side: "source" });
        }
        if !g.target().is_poset() {
            return Err(Error::NonPosetal { side: "target" });
        }
        let (a0, a1) = (g.source(), g.target());
        let closed = g.closed_elements();
        let open = g.open_elements();
        if !closed.strict || !open.strict {
            return Err(Error::Internal(
                "fixed points of a poset operator are not strict".into(),
            ));
        }
        let (incl0, cor0) = (closed.incl(), closed.retraction());
        let (incl1, cor1) = (open.incl(), open.retraction());

        let left_closed = incl0.then(g.left())?;
        let right_closed = g.right().then(cor0)?;
        let left_open = g.left().then(cor1)?;
        let right_open = incl1.then(g.right())?;

        let closed_to_open = mediator(
            &Cone::new(closed.sub().clone(), vec![left_closed.clone()])?,
            &open.equalizer,
        )
        .map_err(internal("left adjoint on closed elements"))?;
        let open_to_closed = mediator(
            &Cone::new(open.sub().clone(), vec![right_open.clone()])?,
            &closed.equalizer,
        )
        .map_err(internal("right adjoint on open elements"))?;

        let mut pairs = Vec::new();
        let mut sub_pairs = Vec::new();
        for c in 0..closed.sub().len() {
            let o = closed_to_open.apply(c);
            if open_to_closed.apply(o) == c {
                pairs.push((incl0.apply(c), incl1.apply(o)));
                sub_pairs.push((c, o));
            }
        }
        let labels = pairs
            .iter()
            .map(|&(a, b)| format!("({}|{})", a0.label(a), a1.label(b)))
            .collect();
        let (clo, opn) = (closed.sub(), open.sub());
        let order = Preorder::from_fn(labels, |x, y| {
            clo.leq(sub_pairs[x].0, sub_pairs[y].0) && opn.leq(sub_pairs[x].1, sub_pairs[y].1)
        });
        let lookup: HashMap<(usize, usize), usize> =
            sub_pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let into_axis = |src: &Preorder, f: &dyn Fn(usize) -> (usize, usize), what: &str| {
            let image = (0..src.len())
                .map(|x| {
                    lookup
                        .get(&f(x))
                        .copied()
                        .ok_or_else(|| Error::Internal(format!("{what}: `{}` misses the axis", src.label(x))))
                })
                .collect::<Result<Vec<_>>>()?;
            MonotoneMap::new(src.clone(), order.clone(), image).map_err(internal(what))
        };
        let xi0 = into_axis(a0, &|a| (cor0.apply(a), left_open.apply(a)), "xi0")?;
        let xi1 = into_axis(a1, &|b| (right_closed.apply(b), cor1.apply(b)), "xi1")?;
        let closed_to_axis = into_axis(clo, &|c| (c, closed_to_open.apply(c)), "closed iso")?;
        let open_to_axis = into_axis(opn, &|o| (open_to_closed.apply(o), o), "open iso")?;

        let axis_to_closed = MonotoneMap::new(
            order.clone(),
            clo.clone(),
            sub_pairs.iter().map(|p| p.0).collect(),
        )?;
        let axis_to_open = MonotoneMap::new(
            order.clone(),
            opn.clone(),
            sub_pairs.iter().map(|p| p.1).collect(),
        )?;
        let pi0 = axis_to_closed.then(incl0)?;
        let pi1 = axis_to_open.then(incl1)?;

        let polar = Polar {
            g: g.clone(),
            left_closed,
            right_closed,
            left_open,
            right_open,
            closed_to_open,
            open_to_closed,
            axis: Axis {
                order,
                pairs,
                pi0,
                pi1,
                xi0,
                xi1,
            },
            axis_to_closed,
            axis_to_open,
            closed_to_axis,
            open_to_axis,
            closed,
            open,
        };
        polar.check_axis_laws()?;
        Ok(polar)
    }

    /// The structure-map identities of the axis.
    pub fn check_axis_laws(&self) -> Result<()> {
        let Axis {
            pi0,
            pi1,
            xi0,
            xi1,
            order,
            ..
        } = &self.axis;
        let g = &self.g;
        let id = MonotoneMap::identity(order);
        check(pi0.then(g.left())? == *pi1, "pi0.left=pi1")?;
        check(pi1.then(g.right())? == *pi0, "pi1.right=pi0")?;
        check(xi0.then(pi0)? == g.closure(), "xi0.pi0=closure")?;
        check(xi0.then(pi1)? == *g.left(), "xi0.pi1=left")?;
        check(xi1.then(pi0)? == *g.right(), "xi1.pi0=right")?;
        check(xi1.then(pi1)? == g.interior(), "xi1.pi1=interior")?;
        check(pi0.then(xi0)? == id, "pi0.xi0=1")?;
        check(pi1.then(xi1)? == id, "pi1.xi1=1")
    }

    pub fn reflection(&self) -> Adjunction {
        Adjunction::new_unchecked(self.axis.xi0.clone(), self.axis.pi0.clone())
    }

    pub fn coreflection(&self) -> Adjunction {
        Adjunction::new_unchecked(self.axis.pi1.clone(), self.axis.xi1.clone())
    }

    pub fn closed_reflection(&self) -> Adjunction {
        Adjunction::new_unchecked(self.closed.retraction().clone(), self.closed.incl().clone())
    }

    pub fn closed_coreflection(&self) -> Adjunction {
        Adjunction::new_unchecked(self.left_closed.clone(), self.right_closed.clone())
    }

    pub fn open_reflection(&self) -> Adjunction {
        Adjunction::new_unchecked(self.left_open.clone(), self.right_open.clone())
    }

    pub fn open_coreflection(&self) -> Adjunction {
        Adjunction::new_unchecked(self.open.incl().clone(), self.open.retraction().clone())
    }

    /// clo ⇌ open
    pub fn central_isomorphism(&self) -> Adjunction {
        Adjunction::new_unchecked(self.closed_to_open.clone(), self.open_to_closed.clone())
    }

    /// clo ⇌ axis
    pub fn closed_isomorphism(&self) -> Adjunction {
        Adjunction::new_unchecked(self.closed_to_axis.clone(), self.axis_to_closed.clone())
    }

    /// axis ⇌ open
    pub fn open_isomorphism(&self) -> Adjunction {
        Adjunction::new_unchecked(self.axis_to_open.clone(), self.open_to_axis.clone())
    }

    pub fn factorization(&self, flavor: Flavor) -> PolarFactorization {
        let (reflection, coreflection) = match flavor {
            Flavor::Full => (self.reflection(), self.coreflection()),
            Flavor::Closed => (self.closed_reflection(), self.closed_coreflection()),
            Flavor::Open => (self.open_reflection(), self.open_coreflection()),
        };
        PolarFactorization::new(flavor, &self.g, reflection, coreflection)
    }

    /// How the three factorizations and the three isomorphisms fit together.
    pub fn check_isomorphism_laws(&self) -> Result<()> {
        let iso = self.central_isomorphism();
        let closed_iso = self.closed_isomorphism();
        let open_iso = self.open_isomorphism();
        for (name, a) in [("central", &iso), ("closed", &closed_iso), ("open", &open_iso)] {
            check(a.classify().is_isomorphism, &format!("{name} isomorphism"))?;
        }
        check(closed_iso.then(&open_iso)? == iso, "iso=iso_closed.iso_open")?;
        check(
            self.closed_reflection().then(&iso)? == self.open_reflection(),
            "ref_closed.iso=ref_open",
        )?;
        check(
            iso.then(&self.open_coreflection())? == self.closed_coreflection(),
            "iso.coref_open=coref_closed",
        )?;
        check(
            self.closed_reflection().then(&closed_iso)? == self.reflection(),
            "ref_closed.iso_closed=ref",
        )?;
        check(
            open_iso.then(&self.open_coreflection())? == self.coreflection(),
            "iso_open.coref_open=coref",
        )
    }
}

fn verified(f: PolarFactorization) -> Result<PolarFactorization> {
    if f.identities_verified {
        Ok(f)
    } else {
        Err(Error::Internal(format!(
            "{} factorization does not verify",
            f.flavor
        )))
    }
}

pub fn axis(g: &Adjunction) -> Result<Axis> {
    Ok(Polar::of(g)?.axis)
}

pub fn polar_factorization(g: &Adjunction) -> Result<PolarFactorization> {
    verified(Polar::of(g)?.factorization(Flavor::Full))
}

pub fn closed_polar_factorization(g: &Adjunction) -> Result<PolarFactorization> {
    verified(Polar::of(g)?.factorization(Flavor::Closed))
}

pub fn open_polar_factorization(g: &Adjunction) -> Result<PolarFactorization> {
    verified(Polar::of(g)?.factorization(Flavor::Open))
}

pub fn factorize(g: &Adjunction, flavor: Flavor) -> Result<PolarFactorization> {
    verified(Polar::of(g)?.factorization(flavor))
}

pub fn central_isomorphism(g: &Adjunction) -> Result<Adjunction> {
    Ok(Polar::of(g)?.central_isomorphism())
}

pub fn closed_isomorphism(g: &Adjunction) -> Result<Adjunction> {
    Ok(Polar::of(g)?.closed_isomorphism())
}

pub fn open_isomorphism(g: &Adjunction) -> Result<Adjunction> {
    Ok(Polar::of(g)?.open_isomorphism())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    Strict,
    Pseudo,
}

/// A morphism of adjunctions from `top : A0 ⇌ A1` to `bottom : B0 ⇌ B1`
/// given by `left : A0 ⇌ B0` and `right : A1 ⇌ B1` with
/// `top · right = left · bottom`, on the nose or up to equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingSquare {
    top: Adjunction,
    bottom: Adjunction,
    left: Adjunction,
    right: Adjunction,
    strictness: Strictness,
}

fn first_difference(f: &MonotoneMap, g: &MonotoneMap) -> Option<usize> {
    (0..f.src().len()).find(|&a| !f.tgt().equiv(f.apply(a), g.apply(a)))
}

impl CommutingSquare {
    pub fn new(top: Adjunction, bottom: Adjunction, left: Adjunction, right: Adjunction) -> Result<Self> {
        if left.source() != top.source()
            || right.source() != top.target()
            || bottom.source() != left.target()
            || bottom.target() != right.target()
        {
            return Err(Error::SquareNotCommuting("edges do not form a square".into()));
        }
        let upper = top.then(&right)?;
        let lower = left.then(&bottom)?;
        let strictness = if upper == lower {
            Strictness::Strict
        } else if upper.equiv(&lower) {
            Strictness::Pseudo
        } else {
            let witness = match first_difference(upper.left(), lower.left()) {
                Some(a) => format!("left adjoints differ at `{}`", upper.source().label(a)),
                None => {
                    let b = first_difference(upper.right(), lower.right()).unwrap_or(0);
                    format!("right adjoints differ at `{}`", upper.target().label(b))
                }
            };
            return Err(Error::SquareNotCommuting(witness));
        };
        Ok(CommutingSquare {
            top,
            bottom,
            left,
            right,
            strictness,
        })
    }

    /// The square with identity sides on `g`.
    pub fn identity(g: &Adjunction) -> Self {
        CommutingSquare {
            top: g.clone(),
            bottom: g.clone(),
            left: Adjunction::identity(g.source()),
            right: Adjunction::identity(g.target()),
            strictness: Strictness::Strict,
        }
    }

    pub fn top(&self) -> &Adjunction {
        &self.top
    }

    pub fn bottom(&self) -> &Adjunction {
        &self.bottom
    }

    pub fn left(&self) -> &Adjunction {
        &self.left
    }

    pub fn right(&self) -> &Adjunction {
        &self.right
    }

    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    /// `self` stacked on `next`, where `next.top() == self.bottom()`.
    pub fn paste(&self, next: &CommutingSquare) -> Result<CommutingSquare> {
        if self.bottom != next.top {
            return Err(Error::NotComposable);
        }
        CommutingSquare::new(
            self.top.clone(),
            next.bottom.clone(),
            self.left.then(&next.left)?,
            self.right.then(&next.right)?,
        )
    }
}

fn strict_fill(sq: &CommutingSquare) -> Result<Adjunction> {
    let (e, s, r, m) = (&sq.top, &sq.right, &sq.left, &sq.bottom);
    if !e.classify().is_reflection {
        return Err(Error::WrongClass {
            expected: "reflection",
        });
    }
    if !m.classify().is_coreflection {
        return Err(Error::WrongClass {
            expected: "coreflection",
        });
    }
    if sq.strictness != Strictness::Strict {
        return Err(Error::SquareNotCommuting(
            "square commutes only up to equivalence".into(),
        ));
    }
    let left = s.left().then(m.right())?;
    if left != e.right().then(r.left())? {
        return Err(Error::RoutesDisagree("left adjoint of the fill"));
    }
    let right = r.right().then(e.left())?;
    if right != m.left().then(s.right())? {
        return Err(Error::RoutesDisagree("right adjoint of the fill"));
    }
    let d = Adjunction::new(left, right).map_err(internal("fill"))?;
    if e.then(&d)? != *r || d.then(m)? != *s {
        return Err(Error::Internal("fill does not split the square".into()));
    }
    Ok(d)
}

/// Number of adjunctions `d` with `top·d = left` and `d·bottom = right`,
/// if both carriers of `d` have at most `search` elements.
pub fn count_fills(sq: &CommutingSquare, search: usize) -> Option<usize> {
    let (b, c) = (sq.top.target(), sq.bottom.source());
    if b.len() > search || c.len() > search {
        return None;
    }
    Some(
        all_adjunctions(b, c)
            .iter()
            .filter(|d| {
                sq.top.then(d).as_ref() == Ok(&sq.left) && d.then(&sq.bottom).as_ref() == Ok(&sq.right)
            })
            .count(),
    )
}

/// The unique `d` with `top·d = left` and `d·bottom = right`, for a strict
/// square with a reflection on top and a coreflection at the bottom.
pub fn diagonal_fill(sq: &CommutingSquare) -> Result<Adjunction> {
    diagonal_fill_with_search(sq, DEFAULT_FILL_SEARCH)
}

pub fn diagonal_fill_with_search(sq: &CommutingSquare, search: usize) -> Result<Adjunction> {
    let d = strict_fill(sq)?;
    match count_fills(sq, search) {
        None | Some(1) => Ok(d),
        Some(n) => Err(Error::Internal(format!("{n} fills found"))),
    }
}

/// A fill for a square that commutes up to equivalence, with a
/// pseudo-reflection on top and a pseudo-coreflection at the bottom. The
/// fill is unique up to equivalence.
pub fn pseudo_diagonal_fill(sq: &CommutingSquare) -> Result<Adjunction> {
    pseudo_diagonal_fill_with_search(sq, DEFAULT_PSEUDO_FILL_SEARCH)
}

pub fn pseudo_diagonal_fill_with_search(sq: &CommutingSquare, search: usize) -> Result<Adjunction> {
    let (e, s, r, m) = (&sq.top, &sq.right, &sq.left, &sq.bottom);
    if !e.classify().is_pseudo_reflection {
        return Err(Error::WrongClass {
            expected: "pseudo-reflection",
        });
    }
    if !m.classify().is_pseudo_coreflection {
        return Err(Error::WrongClass {
            expected: "pseudo-coreflection",
        });
    }
    let left = s.left().then(m.right())?;
    let right = r.right().then(e.left())?;
    let d = Adjunction::new(left, right).map_err(internal("pseudo fill"))?;
    let splits = |d: &Adjunction| e.then(d).is_ok_and(|x| x.equiv(r)) && d.then(m).is_ok_and(|x| x.equiv(s));
    if !splits(&d) {
        return Err(Error::Internal("pseudo fill does not split the square".into()));
    }
    let (b, c) = (e.target(), m.source());
    if b.len() <= search && c.len() <= search {
        if let Some(other) = all_adjunctions(b, c)
            .into_iter()
            .find(|x| splits(x) && !x.equiv(&d))
        {
            return Err(Error::Internal(format!("inequivalent pseudo fill {other:?}")));
        }
    }
    Ok(d)
}

/// The adjunction between axes induced by a strict square.
pub fn axis_morphism(sq: &CommutingSquare) -> Result<Adjunction> {
    axis_morphism_between(sq, &Polar::of(&sq.top)?, &Polar::of(&sq.bottom)?)
}

/// [`axis_morphism`] reusing precomputed factorizations of top and bottom.
pub fn axis_morphism_between(sq: &CommutingSquare, top: &Polar, bottom: &Polar) -> Result<Adjunction> {
    if sq.strictness != Strictness::Strict {
        return Err(Error::SquareNotCommuting(
            "square commutes only up to equivalence".into(),
        ));
    }
    if top.g != sq.top || bottom.g != sq.bottom {
        return Err(Error::Internal("factorizations do not match the square".into()));
    }
    let (f0, f1) = (&sq.left, &sq.right);
    let (g, h) = (&top.axis, &bottom.axis);
    let left = g.pi1.then(f1.left())?.then(&h.xi1)?;
    if left != g.pi0.then(f0.left())?.then(&h.xi0)? {
        return Err(Error::RoutesDisagree("left axis map"));
    }
    let right = h.pi0.then(f0.right())?.then(&g.xi0)?;
    if right != h.pi1.then(f1.right())?.then(&g.xi1)? {
        return Err(Error::RoutesDisagree("right axis map"));
    }
    let d = Adjunction::new(left, right).map_err(internal("axis adjunction"))?;
    check(
        top.reflection().then(&d)? == f0.then(&bottom.reflection())?,
        "ref_g.axis=f0.ref_h",
    )?;
    check(
        d.then(&bottom.coreflection())? == top.coreflection().then(f1)?,
        "axis.ref_h^=ref_g^.f1",
    )?;
    Ok(d)
}

/// Outcome of checking the factorization-system laws on samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationSystemReport {
    /// Isomorphisms lie in both classes, legs lie in their classes, and the
    /// classes are closed under composition; strict classes sit inside the
    /// pseudo ones.
    pub subcategory_laws: LawCheck,
    /// Every sample factors, in all three flavors.
    pub existence: LawCheck,
    /// Squares with a reflection on top and a coreflection below have fills.
    pub diagonalization: LawCheck,
    /// Fills are unique, and factorizations of one sample are linked by an
    /// isomorphism.
    pub uniqueness: LawCheck,
    /// Composing legs gives back the sample; factoring a composite gives a
    /// factorization isomorphic to the one composed.
    pub equivalence: LawCheck,
    /// Pseudo fills agree with strict fills up to equivalence.
    pub pseudo: LawCheck,
}

impl FactorizationSystemReport {
    pub fn all_passed(&self) -> bool {
        [
            &self.subcategory_laws,
            &self.existence,
            &self.diagonalization,
            &self.uniqueness,
            &self.equivalence,
            &self.pseudo,
        ]
        .iter()
        .all(|l| l.passed)
    }
}

/// Bound on the number of composites tried per class.
const COMPOSITION_BUDGET: usize = 20_000;

pub fn check_factorization_system(
    samples: &[Adjunction],
    squares: &[CommutingSquare],
) -> FactorizationSystemReport {
    check_factorization_system_with(samples, squares, &polar_factorization)
}

/// [`check_factorization_system`] with a replaceable choice of factorization.
pub fn check_factorization_system_with(
    samples: &[Adjunction],
    squares: &[CommutingSquare],
    factorize: &dyn Fn(&Adjunction) -> Result<PolarFactorization>,
) -> FactorizationSystemReport {
    let mut sub = LawCheck::default();
    let mut existence = LawCheck::default();
    let mut diag = LawCheck::default();
    let mut uniq = LawCheck::default();
    let mut equivalence = LawCheck::default();
    let mut pseudo = LawCheck::default();
    let mut reflections: Vec<Adjunction> = Vec::new();
    let mut coreflections: Vec<Adjunction> = Vec::new();

    for (k, g) in samples.iter().enumerate() {
        let class = g.classify();
        sub.record(
            (!class.is_reflection || class.is_pseudo_reflection)
                && (!class.is_coreflection || class.is_pseudo_coreflection)
                && (!class.is_isomorphism || class.is_equivalence),
            || format!("sample {k}: strict class outside its pseudo class"),
        );
        if class.is_reflection {
            reflections.push(g.clone());
        }
        if class.is_coreflection {
            coreflections.push(g.clone());
        }

        let chosen = factorize(g);
        existence.record_result(&chosen, || format!("sample {k}"));
        if let Ok(f) = &chosen {
            let rc = f.reflection.classify();
            let mc = f.coreflection.classify();
            sub.record(rc.is_reflection, || {
                format!("sample {k}: reflection leg is not a reflection ({rc:?})")
            });
            sub.record(mc.is_coreflection, || {
                let moved = first_difference(&f.coreflection.closure(), &MonotoneMap::identity(&f.axis));
                format!(
                    "sample {k}: coreflection leg is not a coreflection (closure moves `{}`)",
                    moved.map_or("?", |a| f.axis.label(a))
                )
            });
            equivalence.record(f.compose().as_ref() == Ok(g), || {
                format!("sample {k}: chosen legs do not compose to the sample")
            });
        }

        let polar = match Polar::of(g) {
            Ok(p) => p,
            Err(e) => {
                existence.record(false, || format!("sample {k}: {e}"));
                continue;
            }
        };
        let flavors: Vec<PolarFactorization> =
            Flavor::ALL.iter().map(|&fl| polar.factorization(fl)).collect();
        for f in &flavors {
            existence.record(f.identities_verified, || {
                format!("sample {k}: {} factorization does not verify", f.flavor)
            });
            reflections.push(f.reflection.clone());
            coreflections.push(f.coreflection.clone());
        }
        let swapped = polar
            .coreflection()
            .involution()
            .then(&polar.reflection().involution());
        existence.record(
            swapped.as_ref() == Ok(&g.involution())
                && polar.coreflection().involution().classify().is_reflection
                && polar.reflection().involution().classify().is_coreflection,
            || format!("sample {k}: involution does not swap the legs"),
        );
        for iso in [
            polar.central_isomorphism(),
            polar.closed_isomorphism(),
            polar.open_isomorphism(),
            Adjunction::identity(&polar.axis.order),
        ] {
            let c = iso.classify();
            sub.record(c.is_reflection && c.is_coreflection && c.is_equivalence, || {
                format!("sample {k}: an isomorphism is missing from a class")
            });
            reflections.push(iso.clone());
            coreflections.push(iso);
        }
        sub.record_result(&polar.check_isomorphism_laws(), || format!("sample {k}"));

        for f1 in &flavors {
            for f2 in &flavors {
                if f1.flavor == f2.flavor {
                    continue;
                }
                let sq = CommutingSquare::new(
                    f1.reflection.clone(),
                    f2.coreflection.clone(),
                    f2.reflection.clone(),
                    f1.coreflection.clone(),
                );
                let sq = match sq {
                    Ok(sq) => sq,
                    Err(e) => {
                        diag.record(false, || format!("sample {k}: {}/{}: {e}", f1.flavor, f2.flavor));
                        continue;
                    }
                };
                record_square(&sq, &mut diag, &mut uniq, &mut pseudo, true, || {
                    format!("sample {k}: {} vs {}", f1.flavor, f2.flavor)
                });
            }
        }

        if let Ok(f) = &chosen {
            for other in &flavors {
                let linked = CommutingSquare::new(
                    other.reflection.clone(),
                    f.coreflection.clone(),
                    f.reflection.clone(),
                    other.coreflection.clone(),
                )
                .and_then(|sq| strict_fill(&sq));
                equivalence.record(linked.as_ref().is_ok_and(|d| d.classify().is_isomorphism), || {
                    format!(
                        "sample {k}: refactoring the {} legs is not isomorphic",
                        other.flavor
                    )
                });
            }
        }
    }

    for (k, sq) in squares.iter().enumerate() {
        let eligible = sq.strictness == Strictness::Strict
            && sq.top.classify().is_reflection
            && sq.bottom.classify().is_coreflection;
        if eligible {
            record_square(sq, &mut diag, &mut uniq, &mut pseudo, false, || {
                format!("square {k}")
            });
        }
    }

    closed_under_composition(&reflections, &mut sub, "reflections", |c| c.is_reflection);
    closed_under_composition(&coreflections, &mut sub, "coreflections", |c| c.is_coreflection);

    FactorizationSystemReport {
        subcategory_laws: sub,
        existence,
        diagonalization: diag,
        uniqueness: uniq,
        equivalence,
        pseudo,
    }
}

fn record_square(
    sq: &CommutingSquare,
    diag: &mut LawCheck,
    uniq: &mut LawCheck,
    pseudo: &mut LawCheck,
    expect_iso: bool,
    name: impl Fn() -> String,
) {
    let fill = strict_fill(sq);
    diag.record_result(&fill, &name);
    let Ok(d) = fill else { return };
    if let Some(n) = count_fills(sq, DEFAULT_FILL_SEARCH) {
        uniq.record(n == 1, || format!("{}: {n} fills", name()));
    }
    if expect_iso {
        uniq.record(d.classify().is_isomorphism, || {
            format!("{}: fill is not an isomorphism", name())
        });
    }
    if sq.top.target().len() <= DEFAULT_PSEUDO_FILL_SEARCH
        && sq.bottom.source().len() <= DEFAULT_PSEUDO_FILL_SEARCH
    {
        let p = pseudo_diagonal_fill(sq);
        pseudo.record(p.as_ref().is_ok_and(|p| p.equiv(&d)), || match &p {
            Ok(_) => format!("{}: pseudo fill is not equivalent to the fill", name()),
            Err(e) => format!("{}: {e}", name()),
        });
    }
}

fn closed_under_composition(
    pool: &[Adjunction],
    law: &mut LawCheck,
    what: &str,
    member: impl Fn(&crate::galois::MorphismClass) -> bool,
) {
    let mut by_source: HashMap<&Preorder, Vec<usize>> = HashMap::new();
    for (i, a) in pool.iter().enumerate() {
        by_source.entry(a.source()).or_default().push(i);
    }
    let mut tried = 0;
    'outer: for (i, first) in pool.iter().enumerate() {
        for &j in by_source.get(first.target()).map(Vec::as_slice).unwrap_or(&[]) {
            if tried == COMPOSITION_BUDGET {
                break 'outer;
            }
            tried += 1;
            let ok = first.then(&pool[j]).is_ok_and(|c| member(&c.classify()));
            law.record(ok, || format!("{what} {i} then {j}: composite leaves the class"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::right_adjoint;

    fn map(src: &Preorder, tgt: &Preorder, m: &[usize]) -> MonotoneMap {
        MonotoneMap::new(src.clone(), tgt.clone(), m.to_vec()).unwrap()
    }

    fn collapse() -> Adjunction {
        let (c3, c2) = (Preorder::chain(3), Preorder::chain(2));
        right_adjoint(&map(&c3, &c2, &[0, 0, 1])).unwrap()
    }

    fn spread() -> Adjunction {
        let (c2, c3) = (Preorder::chain(2), Preorder::chain(3));
        right_adjoint(&map(&c2, &c3, &[0, 2])).unwrap()
    }

    #[test]
    fn identity_axis() {
        let c2 = Preorder::chain(2);
        let ax = axis(&Adjunction::identity(&c2)).unwrap();
        assert_eq!(ax.order.len(), 2);
        for m in [&ax.pi0, &ax.pi1, &ax.xi0, &ax.xi1] {
            assert_eq!(m.image(), &[0, 1]);
        }
        let f = polar_factorization(&Adjunction::identity(&c2)).unwrap();
        assert!(f.reflection.classify().is_isomorphism);
        assert!(f.coreflection.classify().is_isomorphism);
    }

    #[test]
    fn collapse_axis() {
        let g = collapse();
        let ax = axis(&g).unwrap();
        assert_eq!(ax.pairs, vec![(1, 0), (2, 1)]);
        assert_eq!(ax.order.labels(), &["(1|0)", "(2|1)"]);
        let f = polar_factorization(&g).unwrap();
        assert_eq!(f.reflection.left().image(), &[0, 0, 1]);
        assert!(f.coreflection.classify().is_isomorphism);
    }

    #[test]
    fn coreflection_has_iso_reflection_leg() {
        let f = polar_factorization(&spread()).unwrap();
        assert!(spread().classify().is_coreflection);
        assert!(f.reflection.classify().is_isomorphism);
    }

    #[test]
    fn flavors() {
        let g = collapse();
        let closed = closed_polar_factorization(&g).unwrap();
        assert_eq!(closed.axis.labels(), &["1", "2"]);
        let open = open_polar_factorization(&g).unwrap();
        assert_eq!(open.axis.len(), 2);
        let open = open_polar_factorization(&spread()).unwrap();
        assert_eq!(open.axis.labels(), &["0", "2"]);
        let id = Adjunction::identity(&Preorder::chain(3));
        assert_eq!(closed_polar_factorization(&id).unwrap().axis, Preorder::chain(3));
        assert_eq!(open_polar_factorization(&id).unwrap().axis, Preorder::chain(3));
    }

    #[test]
    fn isomorphisms() {
        let g = collapse();
        let iso = central_isomorphism(&g).unwrap();
        assert_eq!(iso.left().image(), &[0, 1]);
        assert_eq!(iso.source().labels(), &["1", "2"]);
        assert_eq!(iso.target().labels(), &["0", "1"]);
        Polar::of(&g).unwrap().check_isomorphism_laws().unwrap();
        Polar::of(&spread()).unwrap().check_isomorphism_laws().unwrap();
    }

    #[test]
    fn non_posetal_rejected() {
        let i2 = Preorder::indiscrete(2);
        assert_eq!(
            axis(&Adjunction::identity(&i2)),
            Err(Error::NonPosetal { side: "source" })
        );
    }

    #[test]
    fn trivial_fills() {
        let c2 = Preorder::chain(2);
        let id = Adjunction::identity(&c2);
        let sq = CommutingSquare::new(id.clone(), id.clone(), id.clone(), id.clone()).unwrap();
        assert_eq!(diagonal_fill(&sq).unwrap(), id);

        let g = collapse();
        let p = Polar::of(&g).unwrap();
        let sq =
            CommutingSquare::new(p.reflection(), p.coreflection(), p.reflection(), p.coreflection()).unwrap();
        assert_eq!(diagonal_fill(&sq).unwrap(), Adjunction::identity(&p.axis.order));
    }

    #[test]
    fn closed_versus_full_fill_is_the_closed_iso() {
        let g = collapse();
        let p = Polar::of(&g).unwrap();
        let sq = CommutingSquare::new(
            p.closed_reflection(),
            p.coreflection(),
            p.reflection(),
            p.closed_coreflection(),
        )
        .unwrap();
        assert_eq!(diagonal_fill(&sq).unwrap(), p.closed_isomorphism());
    }

    #[test]
    fn fill_preconditions() {
        let g = collapse();
        let sq = CommutingSquare::new(
            g.clone(),
            Adjunction::identity(g.target()),
            g.clone(),
            Adjunction::identity(g.target()),
        )
        .unwrap();
        assert!(diagonal_fill(&sq).is_ok());
        let sq = CommutingSquare::new(
            Adjunction::identity(g.source()),
            g.clone(),
            Adjunction::identity(g.source()),
            g.clone(),
        )
        .unwrap();
        assert_eq!(
            diagonal_fill(&sq),
            Err(Error::WrongClass {
                expected: "coreflection"
            })
        );
    }

    #[test]
    fn pseudo_fills() {
        use crate::order::{bang, terminal};
        let i2 = Preorder::indiscrete(2);
        let point = terminal().into_preorder();
        let e = Adjunction::new(bang(&i2), map(&point, &i2, &[0])).unwrap();
        let e_inv = Adjunction::new(map(&point, &i2, &[1]), bang(&i2)).unwrap();
        let id = Adjunction::identity(&i2);
        // e followed by e_inv is equivalent to the identity on i2, not equal to it
        let sq = CommutingSquare::new(e, id.clone(), id, e_inv.clone()).unwrap();
        assert_eq!(sq.strictness(), Strictness::Pseudo);
        let d = pseudo_diagonal_fill(&sq).unwrap();
        assert_eq!(d, e_inv);
        assert!(d.classify().is_equivalence);

        let g = collapse();
        let p = Polar::of(&g).unwrap();
        let sq =
            CommutingSquare::new(p.reflection(), p.coreflection(), p.reflection(), p.coreflection()).unwrap();
        assert!(pseudo_diagonal_fill(&sq)
            .unwrap()
            .equiv(&diagonal_fill(&sq).unwrap()));
    }

    #[test]
    fn perturbed_square_rejected() {
        let g = collapse();
        let p = Polar::of(&g).unwrap();
        let c2 = Preorder::chain(2);
        let bottom_only = right_adjoint(&map(&c2, &c2, &[0, 0])).unwrap();
        let err = CommutingSquare::new(
            p.reflection(),
            p.coreflection(),
            p.reflection(),
            p.coreflection().then(&bottom_only).unwrap(),
        );
        assert_eq!(
            err,
            Err(Error::SquareNotCommuting("left adjoints differ at `2`".into()))
        );
    }

    #[test]
    fn identity_axis_morphism() {
        let g = collapse();
        let d = axis_morphism(&CommutingSquare::identity(&g)).unwrap();
        assert_eq!(d, Adjunction::identity(&Polar::of(&g).unwrap().axis.order));
    }

    #[test]
    fn report_on_identities() {
        let samples: Vec<Adjunction> = (0..4)
            .map(|n| Adjunction::identity(&Preorder::chain(n)))
            .collect();
        let report = check_factorization_system(&samples, &[]);
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn corrupted_factorization_detected() {
        let g = collapse();
        let corrupt = |g: &Adjunction| {
            let mut f = polar_factorization(g)?;
            let ax = f.axis.clone();
            let bottom = MonotoneMap::constant(&ax, g.target(), 0)?;
            let top = MonotoneMap::constant(g.target(), &ax, ax.len() - 1)?;
            f.coreflection = Adjunction::new(bottom, top)?;
            Ok(f)
        };
        let report = check_factorization_system_with(&[g], &[], &corrupt);
        assert!(!report.subcategory_laws.passed);
        assert!(report.subcategory_laws.witnesses[0].contains("coreflection leg"));
    }
}
