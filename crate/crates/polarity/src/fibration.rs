//! Preorders fibred over finite sets.
//!
//! A monotone map `e : E2 → E1` factors as a *gap* `E2 → Δ(e)`, which is the
//! identity on elements, followed by a *lift* `Δ(e) → E1`, which is `e` on
//! elements. The apex `Δ(e)` is the carrier of `E2` with the order pulled back
//! along `e`. Maps whose source already carries the pulled-back order are the
//! cartesian ones.
//!
//! Applied to the two adjoints of a Galois connection this produces the two
//! kernels and the diamond diagram joining them to the axis.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{right_adjoint, Adjunction};
use crate::order::{enumerate, equalizer, product, pullback, MonotoneMap, Preorder};
use crate::polar::{axis_morphism_between, CommutingSquare, Polar, Strictness};
use crate::report::LawCheck;

/// The carrier of a preorder, the object part of the forgetful functor.
pub fn carrier(p: &Preorder) -> Vec<String> {
    p.labels().to_vec()
}

/// A function between finite sets, named by their element labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Function {
    domain: Vec<String>,
    codomain: Vec<String>,
    image: Vec<usize>,
}

impl Function {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.len() {
            return Err(Error::MapLength {
                expected: domain.len(),
                got: image.len(),
            });
        }
        if let Some(&index) = image.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::IndexOutOfRange {
                index,
                len: codomain.len(),
            });
        }
        Ok(Function {
            domain,
            codomain,
            image,
        })
    }

    /// The forgetful functor on maps.
    pub fn underlying(f: &MonotoneMap) -> Self {
        Function {
            domain: carrier(f.src()),
            codomain: carrier(f.tgt()),
            image: f.image().to_vec(),
        }
    }

    pub fn identity(set: &[String]) -> Self {
        Function {
            domain: set.to_vec(),
            codomain: set.to_vec(),
            image: (0..set.len()).collect(),
        }
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &Function) -> Result<Function> {
        if self.codomain != g.domain {
            return Err(Error::NotComposable);
        }
        Ok(Function {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            image: self.image.iter().map(|&j| g.image[j]).collect(),
        })
    }
}

/// A cartesian lift: the pulled-back order and the map into the base order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub apex: Preorder,
    pub lift: MonotoneMap,
}

/// Pulls the order of `over` back along `b`.
pub fn cartesian_lift(b: &Function, over: &Preorder) -> Result<Lift> {
    if b.codomain() != over.labels() {
        return Err(Error::MismatchedTargets);
    }
    let apex = Preorder::from_fn(b.domain.clone(), |x, y| over.leq(b.image[x], b.image[y]));
    let lift = MonotoneMap::new_unchecked(apex.clone(), over.clone(), b.image.clone());
    Ok(Lift { apex, lift })
}

/// `original = gap · lift` with `gap` vertical and `lift` cartesian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleavageFactorization {
    pub original: MonotoneMap,
    pub apex: Preorder,
    pub gap: MonotoneMap,
    pub lift: MonotoneMap,
}

impl CleavageFactorization {
    /// Assembles a factorization from raw images, checking only that the
    /// pieces are monotone maps of the right shape.
    pub fn from_parts(
        original: &MonotoneMap,
        apex: Preorder,
        gap: Vec<usize>,
        lift: Vec<usize>,
    ) -> Result<Self> {
        Ok(CleavageFactorization {
            gap: MonotoneMap::new(original.src().clone(), apex.clone(), gap)?,
            lift: MonotoneMap::new(apex.clone(), original.tgt().clone(), lift)?,
            original: original.clone(),
            apex,
        })
    }

    /// Checks the three defining properties, naming the first that fails.
    pub fn check(&self) -> std::result::Result<(), String> {
        if self.gap.then(&self.lift).as_ref() != Ok(&self.original) {
            return Err("gap followed by lift is not the original map".into());
        }
        if self.apex.labels() != self.original.src().labels()
            || self.gap.image().iter().enumerate().any(|(i, &j)| i != j)
        {
            return Err("gap is not vertical".into());
        }
        if !is_cartesian(&self.lift) {
            return Err("lift is not cartesian".into());
        }
        Ok(())
    }
}

pub fn cleavage_factorize(e: &MonotoneMap) -> CleavageFactorization {
    let Lift { apex, lift } =
        cartesian_lift(&Function::underlying(e), e.tgt()).expect("codomain is the target carrier");
    let gap = MonotoneMap::new_unchecked(e.src().clone(), apex.clone(), (0..e.src().len()).collect());
    CleavageFactorization {
        original: e.clone(),
        apex,
        gap,
        lift,
    }
}

/// `e2 · gap(e1)`, the factor of `e2 · e1` through the apex of `e1`.
pub fn diagonal(e2: &MonotoneMap, e1: &MonotoneMap) -> Result<MonotoneMap> {
    if e2.tgt() != e1.src() {
        return Err(Error::NotComposable);
    }
    e2.then(&cleavage_factorize(e1).gap)
}

/// Whether the source order is exactly the order pulled back along `e`.
pub fn is_cartesian(e: &MonotoneMap) -> bool {
    e.reflects_order()
}

/// Bounds for [`verify_oef_axioms`].
#[derive(Clone, Copy, Debug)]
pub struct OefConfig {
    /// Hom-sets with more maps than this are not enumerated.
    pub hom_cap: usize,
}

impl Default for OefConfig {
    fn default() -> Self {
        OefConfig { hom_cap: 256 }
    }
}

/// Outcome of checking the fibration axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OefReport {
    /// Each map is its gap followed by its lift, gap vertical, lift cartesian.
    pub cleavage: LawCheck,
    /// A cartesian map is its own lift, with identity gap.
    pub cleavage_uniqueness: LawCheck,
    /// Lifts compose as the functions below them do.
    pub split_laws: LawCheck,
    /// `g·e <= h·e` implies `g <= h` for cartesian `e`.
    pub right_cancellation: LawCheck,
    /// `gap·g <= gap·h` implies `g <= h`.
    pub left_cancellation: LawCheck,
    /// Equivalent maps share apex and gap, and have equivalent lifts.
    pub equivalence_factorization: LawCheck,
    /// Equalizer inclusions are cartesian.
    pub equalizers_cartesian: LawCheck,
    /// Right adjoints of reflections and left adjoints of coreflections are
    /// cartesian.
    pub adjoints_cartesian: LawCheck,
    /// Distinct maps have distinct underlying functions.
    pub faithfulness: LawCheck,
    /// Limits have the carriers computed in sets.
    pub limit_preservation: LawCheck,
}

impl OefReport {
    pub fn all_passed(&self) -> bool {
        [
            &self.cleavage,
            &self.cleavage_uniqueness,
            &self.split_laws,
            &self.right_cancellation,
            &self.left_cancellation,
            &self.equivalence_factorization,
            &self.equalizers_cartesian,
            &self.adjoints_cartesian,
            &self.faithfulness,
            &self.limit_preservation,
        ]
        .iter()
        .all(|l| l.passed)
    }
}

type Cleaver<'a> = &'a dyn Fn(&MonotoneMap) -> Result<CleavageFactorization>;

struct Homs {
    cap: usize,
    cache: HashMap<(Preorder, Preorder), Option<Vec<MonotoneMap>>>,
}

impl Homs {
    fn get(&mut self, a: &Preorder, b: &Preorder) -> Option<&[MonotoneMap]> {
        let cap = self.cap;
        self.cache
            .entry((a.clone(), b.clone()))
            .or_insert_with(|| enumerate::monotone_maps_bounded(a, b, cap))
            .as_deref()
    }
}

fn pair_witness(p: &Preorder, q: &Preorder) -> String {
    for i in 0..p.len() {
        for j in 0..p.len() {
            if p.leq(i, j) != q.leq(i, j) {
                return format!("`{}` <= `{}` holds in one order only", p.label(i), p.label(j));
            }
        }
    }
    "orders differ in labels".into()
}

/// Checks the fibration axioms on every map in `maps`, using `objects` as
/// test objects for the cancellation laws.
pub fn verify_oef_axioms(maps: &[MonotoneMap], objects: &[Preorder], config: OefConfig) -> OefReport {
    verify_oef_axioms_with(maps, objects, config, &|e| Ok(cleavage_factorize(e)))
}

/// [`verify_oef_axioms`] with a replaceable cleavage.
pub fn verify_oef_axioms_with(
    maps: &[MonotoneMap],
    objects: &[Preorder],
    config: OefConfig,
    cleave: Cleaver<'_>,
) -> OefReport {
    let mut r = OefReport {
        cleavage: LawCheck::default(),
        cleavage_uniqueness: LawCheck::default(),
        split_laws: LawCheck::default(),
        right_cancellation: LawCheck::default(),
        left_cancellation: LawCheck::default(),
        equivalence_factorization: LawCheck::default(),
        equalizers_cartesian: LawCheck::default(),
        adjoints_cartesian: LawCheck::default(),
        faithfulness: LawCheck::default(),
        limit_preservation: LawCheck::default(),
    };
    let mut homs = Homs {
        cap: config.hom_cap,
        cache: HashMap::new(),
    };
    let mut faithful_checked = HashSet::new();

    for obj in objects {
        let id = Function::identity(obj.labels());
        let lifted = cartesian_lift(&id, obj);
        r.split_laws.record(
            lifted.is_ok_and(|l| l.apex == *obj && l.lift.is_identity()),
            || "lift of an identity is not an identity".into(),
        );
    }

    for (k, e) in maps.iter().enumerate() {
        let (e2, e1) = (e.src(), e.tgt());
        let cartesian = is_cartesian(e);
        let cf = match cleave(e) {
            Ok(cf) => cf,
            Err(err) => {
                let w = || format!("map {k}: cleavage rejected: {err}");
                r.cleavage.record(false, w);
                if cartesian {
                    r.cleavage_uniqueness.record(false, w);
                }
                continue;
            }
        };
        match cf.check() {
            Ok(()) => r.cleavage.record(true, String::new),
            Err(why) => r.cleavage.record(false, || format!("map {k}: {why}")),
        }
        if cartesian {
            let ok = cf.apex == *e2 && cf.gap.is_identity() && cf.lift == *e;
            r.cleavage_uniqueness.record(ok, || {
                if cf.apex != *e2 {
                    format!(
                        "map {k}: apex differs from the source: {}",
                        pair_witness(&cf.apex, e2)
                    )
                } else {
                    format!("map {k}: cartesian map has a non-trivial factorization")
                }
            });
        }

        for e3 in objects {
            let Some(pre) = homs.get(e3, e2).map(<[_]>::to_vec) else {
                continue;
            };
            for e_pre in &pre {
                let composite = e_pre.then(e).expect("composable");
                let whole = cleave(&composite);
                let via = e_pre
                    .then(&cf.gap)
                    .map_err(|x| x.to_string())
                    .and_then(|d| cleave(&d).map(|c| (d, c)).map_err(|x| x.to_string()));
                let ok = match (&whole, &via) {
                    (Ok(w), Ok((d, c))) => {
                        *d == diagonal(e_pre, e).expect("composable")
                            && w.apex == c.apex
                            && w.gap == c.gap
                            && c.lift.then(&cf.lift).as_ref() == Ok(&w.lift)
                    }
                    _ => false,
                };
                r.split_laws
                    .record(ok, || format!("map {k}: split law fails after {e_pre:?}"));
                let lifted = cartesian_lift(&Function::underlying(e), e1).and_then(|l2| {
                    let l1 = cartesian_lift(&Function::underlying(e_pre), &l2.apex)?;
                    let direct = cartesian_lift(&Function::underlying(&composite), e1)?;
                    Ok(direct.apex == l1.apex && l1.lift.then(&l2.lift)? == direct.lift)
                });
                r.split_laws.record(lifted == Ok(true), || {
                    format!("map {k}: lift of a composite function is not the composite lift")
                });
            }
            if cartesian {
                let after: Vec<MonotoneMap> = pre.iter().map(|g| g.then(e).expect("composable")).collect();
                for (i, g) in pre.iter().enumerate() {
                    for (j, h) in pre.iter().enumerate() {
                        let ok = !after[i].pointwise_leq(&after[j]) || g.pointwise_leq(h);
                        r.right_cancellation.record(ok, || {
                            format!("map {k}: {g:?} and {h:?} are ordered only after composing")
                        });
                    }
                }
            }
            let Some(post) = homs.get(&cf.apex, e3).map(<[_]>::to_vec) else {
                continue;
            };
            let before: Vec<MonotoneMap> = post.iter().map(|g| cf.gap.then(g).expect("composable")).collect();
            for (i, g) in post.iter().enumerate() {
                for (j, h) in post.iter().enumerate() {
                    let ok = !before[i].pointwise_leq(&before[j]) || g.pointwise_leq(h);
                    r.left_cancellation.record(ok, || {
                        format!("map {k}: {g:?} and {h:?} are ordered only after the gap")
                    });
                }
            }
        }

        let parallel = homs
            .get(e2, e1)
            .map(<[_]>::to_vec)
            .unwrap_or_else(|| vec![e.clone()]);
        if faithful_checked.insert((e2.clone(), e1.clone())) {
            let functions: HashSet<Function> = parallel.iter().map(Function::underlying).collect();
            r.faithfulness.record(functions.len() == parallel.len(), || {
                format!("map {k}: two maps share an underlying function")
            });
        }
        for f in &parallel {
            if f.equiv(e) {
                let ok = cleave(f)
                    .is_ok_and(|cg| cg.apex == cf.apex && cg.gap == cf.gap && cg.lift.equiv(&cf.lift));
                r.equivalence_factorization.record(ok, || {
                    format!("map {k}: equivalent map {f:?} factors differently")
                });
            }
            let eq = equalizer(e, f).expect("parallel");
            r.equalizers_cartesian.record(is_cartesian(&eq.incl), || {
                format!("map {k}: equalizer with {f:?} is not cartesian")
            });
            let agree: Vec<&String> = (0..e2.len())
                .filter(|&a| e.apply(a) == f.apply(a))
                .map(|a| &e2.labels()[a])
                .collect();
            r.limit_preservation
                .record(eq.apex.labels().iter().collect::<Vec<_>>() == agree, || {
                    format!("map {k}: equalizer carrier differs from the set equalizer")
                });
        }

        let kernel = pullback(e, e).expect("same target");
        let expected = (0..e2.len())
            .flat_map(|x| (0..e2.len()).map(move |y| (x, y)))
            .filter(|&(x, y)| e.apply(x) == e.apply(y))
            .count();
        let prod = product(e2, e1);
        r.limit_preservation.record(
            kernel.apex.len() == expected && prod.apex.len() == e2.len() * e1.len(),
            || format!("map {k}: pullback or product carrier has the wrong size"),
        );

        if let Some(adj) = right_adjoint(e) {
            let class = adj.classify();
            if class.is_reflection {
                r.adjoints_cartesian.record(is_cartesian(adj.right()), || {
                    format!("map {k}: right adjoint of a reflection is not cartesian")
                });
            }
            if class.is_coreflection {
                r.adjoints_cartesian.record(is_cartesian(adj.left()), || {
                    format!("map {k}: left adjoint of a coreflection is not cartesian")
                });
            }
        }
    }
    r
}

/// The closure of `g` lifted to an endomap of the kernel of its left adjoint.
pub fn closure_lift(g: &Adjunction) -> Result<MonotoneMap> {
    if !g.target().is_poset() {
        return Err(Error::NonPosetal { side: "target" });
    }
    let kernel = cleavage_factorize(g.left());
    let closure = g.closure();
    let pushed = closure.then(&kernel.gap)?;
    let cf = cleavage_factorize(&pushed);
    if cf.apex != kernel.apex {
        return Err(Error::Internal(
            "closure does not pull back to the kernel order".into(),
        ));
    }
    let lifted = cf.lift;
    let id = MonotoneMap::identity(&kernel.apex);
    if lifted.then(&lifted)? != lifted || !lifted.equiv(&id) || kernel.gap.then(&lifted)? != pushed {
        return Err(Error::Internal("closure lift laws fail".into()));
    }
    Ok(lifted)
}

/// The five objects and eight adjunctions around the axis of `g`.
///
/// ```text
///                 A0
///        clo ↙          ↘ lift1
///   ker(left)   -- ref --   ker(right)
///      equ ↘    axis       ↗ equ∝
///        lift0 ↘        ↙ int
///                 A1
/// ```
#[derive(Clone, Debug)]
pub struct DiamondDiagram {
    pub g: Adjunction,
    pub polar: Polar,
    pub axis: Preorder,
    pub ker_left: Preorder,
    pub ker_right: Preorder,
    /// A0 ⇌ axis
    pub reflection: Adjunction,
    /// axis ⇌ A1
    pub coreflection: Adjunction,
    /// ker(left) ⇌ axis
    pub equ: Adjunction,
    /// axis ⇌ ker(right)
    pub equ_co: Adjunction,
    /// ker(left) ⇌ A1
    pub lift0: Adjunction,
    /// A0 ⇌ ker(right)
    pub lift1: Adjunction,
    /// A0 ⇌ ker(left)
    pub clo: Adjunction,
    /// ker(right) ⇌ A1
    pub int: Adjunction,
    /// ker(left) ⇌ clo, the kernel identified with the closed elements
    pub closed_equivalence: Adjunction,
    /// The seven composition identities of the diagram.
    pub identities: BTreeMap<String, bool>,
    /// How the closed factorization passes through the left kernel.
    pub closed_chain: BTreeMap<String, bool>,
}

fn adjunction(left: MonotoneMap, right: MonotoneMap, what: &str) -> Adjunction {
    Adjunction::new(left, right).unwrap_or_else(|e| panic!("diamond leg {what} is not an adjunction: {e}"))
}

fn retype(f: &MonotoneMap, src: &Preorder, tgt: &Preorder, what: &str) -> MonotoneMap {
    f.retype(src, tgt)
        .unwrap_or_else(|e| panic!("diamond map {what} does not retype: {e}"))
}

fn equal(a: Result<Adjunction>, b: &Adjunction) -> bool {
    a.as_ref() == Ok(b)
}

/// Builds the diamond of `g`. Fails only on non-posetal endpoints; a failed
/// identity is a bug and panics.
pub fn diamond(g: &Adjunction) -> Result<DiamondDiagram> {
    let polar = Polar::of(g)?;
    let (a0, a1) = (g.source(), g.target());
    let left_cf = cleavage_factorize(g.left());
    let right_cf = cleavage_factorize(g.right());
    let (kl, kr) = (left_cf.apex.clone(), right_cf.apex.clone());
    let ax = polar.axis.order.clone();

    let closure_cf = cleavage_factorize(&g.closure());
    let interior_cf = cleavage_factorize(&g.interior());
    assert!(
        closure_cf.apex == kl,
        "closure and left adjoint pull back different orders"
    );
    assert!(
        interior_cf.apex == kr,
        "interior and right adjoint pull back different orders"
    );

    let clo = adjunction(left_cf.gap.clone(), closure_cf.lift.clone(), "clo");
    let int = adjunction(interior_cf.lift.clone(), right_cf.gap.clone(), "int");
    let equ = adjunction(
        retype(&polar.axis.xi0, &kl, &ax, "xi0"),
        retype(&polar.axis.pi0, &ax, &kl, "pi0"),
        "equ",
    );
    let equ_co = adjunction(
        retype(&polar.axis.pi1, &ax, &kr, "pi1"),
        retype(&polar.axis.xi1, &kr, &ax, "xi1"),
        "equ∝",
    );
    let lift0 = adjunction(
        left_cf.lift.clone(),
        diagonal(g.right(), g.left()).expect("adjoints compose"),
        "lift0",
    );
    let lift1 = adjunction(
        diagonal(g.left(), g.right()).expect("adjoints compose"),
        right_cf.lift.clone(),
        "lift1",
    );
    let reflection = polar.reflection();
    let coreflection = polar.coreflection();

    let identities: BTreeMap<String, bool> = [
        ("clo.equ=ref", equal(clo.then(&equ), &reflection)),
        ("equ.ref∝=lift0", equal(equ.then(&coreflection), &lift0)),
        ("ref.equ∝=lift1", equal(reflection.then(&equ_co), &lift1)),
        ("equ∝.int=ref∝", equal(equ_co.then(&int), &coreflection)),
        ("ref.ref∝=g", equal(reflection.then(&coreflection), g)),
        ("clo.lift0=g", equal(clo.then(&lift0), g)),
        ("lift1.int=g", equal(lift1.then(&int), g)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    if let Some((name, _)) = identities.iter().find(|(_, &ok)| !ok) {
        panic!("diamond identity {name} fails for {g:?}");
    }
    for (name, leg) in [("equ", &equ), ("equ∝", &equ_co)] {
        assert!(leg.classify().is_equivalence, "{name} is not an equivalence");
    }

    let closed = &polar.closed;
    let retraction_cf = cleavage_factorize(closed.retraction());
    assert!(
        retraction_cf.apex == kl,
        "closed retraction pulls back a different order"
    );
    let closed_equivalence = adjunction(
        retraction_cf.lift.clone(),
        diagonal(closed.incl(), closed.retraction()).expect("inclusion then retraction"),
        "closed equivalence",
    );
    let closed_chain: BTreeMap<String, bool> = [
        (
            "clo.equ•=ref•",
            equal(clo.then(&closed_equivalence), &polar.closed_reflection()),
        ),
        (
            "equ•.ref•∝=lift0",
            equal(closed_equivalence.then(&polar.closed_coreflection()), &lift0),
        ),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    if let Some((name, _)) = closed_chain.iter().find(|(_, &ok)| !ok) {
        panic!("closed chain identity {name} fails for {g:?}");
    }

    let _ = (a0, a1);
    Ok(DiamondDiagram {
        g: g.clone(),
        axis: ax,
        ker_left: kl,
        ker_right: kr,
        reflection,
        coreflection,
        equ,
        equ_co,
        lift0,
        lift1,
        clo,
        int,
        closed_equivalence,
        identities,
        closed_chain,
        polar,
    })
}

impl Serialize for DiamondDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Leg<'a> {
            from: &'static str,
            to: &'static str,
            adjunction: &'a Adjunction,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            objects: BTreeMap<&'static str, &'a Preorder>,
            legs: BTreeMap<&'static str, Leg<'a>>,
            identities: &'a BTreeMap<String, bool>,
        }
        let leg = |from, to, adjunction| Leg { from, to, adjunction };
        let objects = BTreeMap::from([
            ("A0", self.g.source()),
            ("A1", self.g.target()),
            ("axis", &self.axis),
            ("ker_left", &self.ker_left),
            ("ker_right", &self.ker_right),
        ]);
        let legs = BTreeMap::from([
            ("ref", leg("A0", "axis", &self.reflection)),
            ("ref∝", leg("axis", "A1", &self.coreflection)),
            ("equ", leg("ker_left", "axis", &self.equ)),
            ("equ∝", leg("axis", "ker_right", &self.equ_co)),
            ("lift0", leg("ker_left", "A1", &self.lift0)),
            ("lift1", leg("A0", "ker_right", &self.lift1)),
            ("clo", leg("A0", "ker_left", &self.clo)),
            ("int", leg("ker_right", "A1", &self.int)),
        ]);
        Repr {
            objects,
            legs,
            identities: &self.identities,
        }
        .serialize(s)
    }
}

/// The adjunctions a square induces between kernels and axes.
#[derive(Clone, Debug)]
pub struct KernelSquareResult {
    pub square: CommutingSquare,
    /// ker(left of top) ⇌ ker(left of bottom)
    pub ker_left_adj: Adjunction,
    /// ker(right of top) ⇌ ker(right of bottom)
    pub ker_right_adj: Adjunction,
    /// axis of top ⇌ axis of bottom
    pub axis_adj: Adjunction,
    pub identity_report: BTreeMap<String, bool>,
}

pub fn kernel_square(sq: &CommutingSquare) -> Result<KernelSquareResult> {
    kernel_square_between(sq, &diamond(sq.top())?, &diamond(sq.bottom())?)
}

/// [`kernel_square`] reusing the diamonds of top and bottom.
pub fn kernel_square_between(
    sq: &CommutingSquare,
    top: &DiamondDiagram,
    bottom: &DiamondDiagram,
) -> Result<KernelSquareResult> {
    if sq.strictness() != Strictness::Strict {
        return Err(Error::SquareNotCommuting(
            "square commutes only up to equivalence".into(),
        ));
    }
    let (g, h) = (sq.top(), sq.bottom());
    let (f0, f1) = (sq.left(), sq.right());
    let ker_left_adj = Adjunction::new(
        f0.left().retype(&top.ker_left, &bottom.ker_left)?,
        h.closure()
            .then(f0.right())?
            .retype(&bottom.ker_left, &top.ker_left)?,
    )?;
    let ker_right_adj = Adjunction::new(
        g.interior()
            .then(f1.left())?
            .retype(&top.ker_right, &bottom.ker_right)?,
        f1.right().retype(&bottom.ker_right, &top.ker_right)?,
    )?;
    let axis_adj = axis_morphism_between(sq, &top.polar, &bottom.polar)?;
    let (kl, kr, ax) = (&ker_left_adj, &ker_right_adj, &axis_adj);
    let same = |a: Result<Adjunction>, b: Result<Adjunction>| matches!((a, b), (Ok(x), Ok(y)) if x == y);
    let identity_report: BTreeMap<String, bool> = [
        (
            "ref_g.axis=f0.ref_h",
            same(top.reflection.then(ax), f0.then(&bottom.reflection)),
        ),
        (
            "axis.ref∝_h=ref∝_g.f1",
            same(ax.then(&bottom.coreflection), top.coreflection.then(f1)),
        ),
        (
            "equ_g.axis=kerl.equ_h",
            same(top.equ.then(ax), kl.then(&bottom.equ)),
        ),
        (
            "axis.equ∝_h=equ∝_g.kerr",
            same(ax.then(&bottom.equ_co), top.equ_co.then(kr)),
        ),
        (
            "clo_g.kerl=f0.clo_h",
            same(top.clo.then(kl), f0.then(&bottom.clo)),
        ),
        (
            "kerr.int_h=int_g.f1",
            same(kr.then(&bottom.int), top.int.then(f1)),
        ),
        (
            "kerl.lift0_h=lift0_g.f1",
            same(kl.then(&bottom.lift0), top.lift0.then(f1)),
        ),
        (
            "lift1_g.kerr=f0.lift1_h",
            same(top.lift1.then(kr), f0.then(&bottom.lift1)),
        ),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    if let Some((name, _)) = identity_report.iter().find(|(_, &ok)| !ok) {
        return Err(Error::IdentityFailed(name.clone()));
    }
    Ok(KernelSquareResult {
        square: sq.clone(),
        ker_left_adj,
        ker_right_adj,
        axis_adj,
        identity_report,
    })
}
