//! Formal contexts and their concept lattices.
//!
//! The derivation operators of a context form an antitone Galois connection
//! between subsets of objects and subsets of attributes. Flipping the
//! attribute side makes it an ordinary adjunction between powerset posets,
//! whose axis is the concept lattice.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::Adjunction;
use crate::order::{subset_label, MonotoneMap, Poset, Preorder};
use crate::polar;

/// Largest object or attribute count for which powersets are built.
pub const DEFAULT_THRESHOLD: usize = 10;

/// Objects, attributes and the incidence relation between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Vec<Vec<bool>>,
}

/// A pair of subsets, each the derivation of the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Concept {
    pub extent: u64,
    pub intent: u64,
}

fn distinct(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl FormalContext {
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: Vec<Vec<bool>>) -> Result<Self> {
        distinct(&objects)?;
        distinct(&attributes)?;
        if incidence.len() != objects.len() || incidence.iter().any(|r| r.len() != attributes.len()) {
            return Err(Error::MatrixShape {
                expected: objects.len(),
            });
        }
        Ok(FormalContext {
            objects,
            attributes,
            incidence,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    pub fn has(&self, g: usize, m: usize) -> bool {
        self.incidence[g][m]
    }

    fn within(&self, threshold: usize) -> Result<()> {
        let size = self.objects.len().max(self.attributes.len());
        if size > threshold {
            return Err(Error::ThresholdExceeded {
                size,
                limit: threshold,
            });
        }
        Ok(())
    }

    /// Renders the context in Burmeister format.
    pub fn to_cxt(&self) -> String {
        let mut out = format!("B\n\n{}\n{}\n\n", self.objects.len(), self.attributes.len());
        for l in self.objects.iter().chain(&self.attributes) {
            out.push_str(l);
            out.push('\n');
        }
        for row in &self.incidence {
            out.extend(row.iter().map(|&x| if x { 'X' } else { '.' }));
            out.push('\n');
        }
        out
    }
}

fn cxt_error(line: usize, message: impl Into<String>) -> Error {
    Error::Cxt {
        line,
        message: message.into(),
    }
}

/// Parses a Burmeister `.cxt` file.
pub fn parse_cxt(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let line = |n: usize| lines.get(n - 1).copied();
    let expect_blank = |n: usize| match line(n) {
        Some("") => Ok(()),
        Some(_) => Err(cxt_error(n, "expected a blank line")),
        None => Err(cxt_error(n, "unexpected end of input")),
    };
    let count = |n: usize, what: &str| -> Result<usize> {
        let l = line(n).ok_or_else(|| cxt_error(n, "unexpected end of input"))?;
        l.trim()
            .parse()
            .map_err(|_| cxt_error(n, format!("expected the number of {what}, found `{l}`")))
    };

    if line(1) != Some("B") {
        return Err(cxt_error(1, "expected `B`"));
    }
    expect_blank(2)?;
    let g = count(3, "objects")?;
    let m = count(4, "attributes")?;
    expect_blank(5)?;

    let label = |n: usize| {
        line(n)
            .map(str::to_string)
            .ok_or_else(|| cxt_error(n, "unexpected end of input"))
    };
    let objects = (6..6 + g).map(label).collect::<Result<Vec<_>>>()?;
    let attributes = (6 + g..6 + g + m).map(label).collect::<Result<Vec<_>>>()?;
    let first_row = 6 + g + m;
    let mut incidence = Vec::with_capacity(g);
    for n in first_row..first_row + g {
        let row = line(n).ok_or_else(|| cxt_error(n, "unexpected end of input"))?;
        let cells = row
            .chars()
            .map(|c| match c {
                'X' => Ok(true),
                '.' => Ok(false),
                other => Err(cxt_error(n, format!("unexpected character `{other}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        if cells.len() != m {
            return Err(cxt_error(
                n,
                format!("row has {} cells, expected {m}", cells.len()),
            ));
        }
        incidence.push(cells);
    }
    if let Some(extra) = (first_row + g..=lines.len()).find(|&n| !lines[n - 1].trim().is_empty()) {
        return Err(cxt_error(extra, "trailing content"));
    }
    FormalContext::new(objects, attributes, incidence).map_err(|e| cxt_error(6, e.to_string()))
}

/// Attributes shared by every object in `objects`.
pub fn derive_objects(k: &FormalContext, objects: u64) -> u64 {
    (0..k.attributes.len())
        .filter(|&m| (0..k.objects.len()).all(|g| objects >> g & 1 == 0 || k.has(g, m)))
        .fold(0, |acc, m| acc | 1 << m)
}

/// Objects having every attribute in `attributes`.
pub fn derive_attributes(k: &FormalContext, attributes: u64) -> u64 {
    (0..k.objects.len())
        .filter(|&g| (0..k.attributes.len()).all(|m| attributes >> m & 1 == 0 || k.has(g, m)))
        .fold(0, |acc, g| acc | 1 << g)
}

pub fn context_adjunction(k: &FormalContext) -> Result<Adjunction> {
    context_adjunction_with(k, DEFAULT_THRESHOLD)
}

/// The derivation adjunction from subsets of objects to the opposite of
/// subsets of attributes.
pub fn context_adjunction_with(k: &FormalContext, threshold: usize) -> Result<Adjunction> {
    k.within(threshold)?;
    let a0 = Preorder::powerset(&k.objects);
    let a1 = Preorder::powerset(&k.attributes).opposite();
    let left = (0..a0.len())
        .map(|x| derive_objects(k, x as u64) as usize)
        .collect();
    let right = (0..a1.len())
        .map(|y| derive_attributes(k, y as u64) as usize)
        .collect();
    Adjunction::new(
        MonotoneMap::new(a0.clone(), a1.clone(), left)?,
        MonotoneMap::new(a1, a0, right)?,
    )
}

pub fn concept_lattice(k: &FormalContext) -> Result<(Poset, Vec<Concept>)> {
    concept_lattice_with(k, DEFAULT_THRESHOLD)
}

/// The axis of the derivation adjunction, ordered by extent inclusion.
pub fn concept_lattice_with(k: &FormalContext, threshold: usize) -> Result<(Poset, Vec<Concept>)> {
    let g = context_adjunction_with(k, threshold)?;
    let axis = polar::axis(&g)?;
    let concepts = axis
        .pairs
        .iter()
        .map(|&(extent, intent)| Concept {
            extent: extent as u64,
            intent: intent as u64,
        })
        .collect();
    Ok((Poset::new(axis.order)?, concepts))
}

pub fn brute_force_concepts(k: &FormalContext) -> Result<Vec<Concept>> {
    brute_force_concepts_with(k, DEFAULT_THRESHOLD)
}

/// Every closed subset of objects with its intent, straight from the
/// incidence rows.
pub fn brute_force_concepts_with(k: &FormalContext, threshold: usize) -> Result<Vec<Concept>> {
    k.within(threshold)?;
    let full_m: u64 = (1 << k.attributes.len()) - 1;
    let rows: Vec<u64> = k
        .incidence
        .iter()
        .map(|r| r.iter().rev().fold(0, |acc, &x| acc << 1 | x as u64))
        .collect();
    let mut out = Vec::new();
    for extent in 0..1u64 << k.objects.len() {
        let mut intent = full_m;
        for (g, row) in rows.iter().enumerate() {
            if extent >> g & 1 == 1 {
                intent &= row;
            }
        }
        let mut closed = 0u64;
        for (g, row) in rows.iter().enumerate() {
            if row & intent == intent {
                closed |= 1 << g;
            }
        }
        if closed == extent {
            out.push(Concept { extent, intent });
        }
    }
    Ok(out)
}

/// Member labels of `mask`, in index order.
pub fn members(labels: &[String], mask: u64) -> Vec<String> {
    labels
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, l)| l.clone())
        .collect()
}

/// `({extent}|{intent})` with sorted member labels.
pub fn concept_label(k: &FormalContext, c: &Concept) -> String {
    format!(
        "({}|{})",
        subset_label(&k.objects, c.extent),
        subset_label(&k.attributes, c.intent)
    )
}

#[derive(Serialize)]
struct ConceptRepr {
    extent: Vec<String>,
    intent: Vec<String>,
}

#[derive(Serialize)]
struct ConceptsRepr {
    concepts: Vec<ConceptRepr>,
}

/// `{"concepts": [{"extent": [...], "intent": [...]}, ...]}`
pub fn concepts_json(k: &FormalContext, concepts: &[Concept]) -> serde_json::Value {
    let repr = ConceptsRepr {
        concepts: concepts
            .iter()
            .map(|c| ConceptRepr {
                extent: members(&k.objects, c.extent),
                intent: members(&k.attributes, c.intent),
            })
            .collect(),
    };
    serde_json::to_value(repr).expect("plain data")
}
