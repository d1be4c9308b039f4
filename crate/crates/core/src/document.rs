//! The JSON pair document: a manifold, a surface in it and named cycles.
//!
//! ```json
//! {
//!   "closed": false,
//!   "blocks": [{"id": "left", "genus": 1, "boundary": ["alpha"]}],
//!   "tori": [{"id": "T1", "near": {"block": "left", "label": "alpha"},
//!             "far": {"block": "middle", "label": "alpha"}, "matrix": [[1, 1], [2, 1]]}],
//!   "pieces": [{"id": "left", "block": "left", "degree": 4, "genus": 2}],
//!   "circles": [{"id": "c1.left", "piece": "left", "torus": "T1", "side": "near", "class": [1, 2]},
//!               {"id": "c3", "piece": "middle", "label": "alpha'", "class": [1, -4]}],
//!   "edges": [{"id": "c1", "near_circle": "c1.left", "far_circle": "c1.middle"}],
//!   "cycles": {"gamma": [["c1", "-"], ["c2", "+"]]}
//! }
//! ```
//!
//! A circle on a free boundary torus gives the boundary `label` of its
//! piece's block instead of `torus`/`side`. Integers are written exactly,
//! with no size limit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::Matrix2;
use crate::manifold::{BoundaryRef, GraphManifold, JsjTorus, SeifertBlock, Side};
use crate::surface::{
    Attachment, Cycle, Direction, HorizontalSurface, Step, SurfaceCircle, SurfaceEdge, SurfacePiece,
};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Structure(String),
}

/// An integer of any size, written as a bare JSON number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self
            .0
            .to_string()
            .parse()
            .map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        let text = n.to_string();
        text.parse::<BigInt>()
            .map(JsonInt)
            .map_err(|_| de::Error::custom(format!("expected an integer, found {text}")))
    }
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        JsonInt(n.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideDoc {
    Near,
    Far,
}

impl From<SideDoc> for Side {
    fn from(s: SideDoc) -> Side {
        match s {
            SideDoc::Near => Side::Near,
            SideDoc::Far => Side::Far,
        }
    }
}

impl From<Side> for SideDoc {
    fn from(s: Side) -> SideDoc {
        match s {
            Side::Near => SideDoc::Near,
            Side::Far => SideDoc::Far,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub id: String,
    pub genus: u64,
    pub boundary: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDoc {
    pub block: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusDoc {
    pub id: String,
    pub near: BoundaryDoc,
    pub far: BoundaryDoc,
    pub matrix: [[JsonInt; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub id: String,
    pub block: String,
    pub degree: u64,
    pub genus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleDoc {
    pub id: String,
    pub piece: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<SideDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub class: [JsonInt; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub near_circle: String,
    pub far_circle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    #[serde(default)]
    pub closed: bool,
    pub blocks: Vec<BlockDoc>,
    pub tori: Vec<TorusDoc>,
    #[serde(default)]
    pub pieces: Vec<PieceDoc>,
    #[serde(default)]
    pub circles: Vec<CircleDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub cycles: BTreeMap<String, Vec<(String, String)>>,
}

/// A surface together with its named cycles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pair {
    pub surface: HorizontalSurface,
    pub cycles: BTreeMap<String, Cycle>,
}

impl PairDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Pretty JSON with a trailing newline. Field order is fixed and every
    /// list is sorted by id, so equal pairs serialize to identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_pair(pair: &Pair) -> Self {
        let s = &pair.surface;
        let m = &s.manifold;
        let bd = |r: &BoundaryRef| BoundaryDoc {
            block: r.block.clone(),
            label: r.label.clone(),
        };
        PairDocument {
            closed: m.closed,
            blocks: m
                .blocks
                .values()
                .map(|b| BlockDoc {
                    id: b.id.clone(),
                    genus: b.genus,
                    boundary: b.boundary.clone(),
                })
                .collect(),
            tori: m
                .tori
                .values()
                .map(|t| TorusDoc {
                    id: t.id.clone(),
                    near: bd(&t.near),
                    far: bd(&t.far),
                    matrix: [
                        [(&t.matrix.p).into(), (&t.matrix.q).into()],
                        [(&t.matrix.r).into(), (&t.matrix.s).into()],
                    ],
                })
                .collect(),
            pieces: s
                .pieces
                .values()
                .map(|p| PieceDoc {
                    id: p.id.clone(),
                    block: p.block.clone(),
                    degree: p.degree,
                    genus: p.genus,
                })
                .collect(),
            circles: s
                .circles
                .values()
                .map(|c| {
                    let (torus, side, label) = match &c.attachment {
                        Attachment::Torus { torus, side } => {
                            (Some(torus.clone()), Some((*side).into()), None)
                        }
                        Attachment::Boundary(b) => (None, None, Some(b.label.clone())),
                    };
                    CircleDoc {
                        id: c.id.clone(),
                        piece: c.piece.clone(),
                        torus,
                        side,
                        label,
                        class: [c.class.a().into(), c.class.b().into()],
                    }
                })
                .collect(),
            edges: s
                .edges
                .values()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    near_circle: e.near_circle.clone(),
                    far_circle: e.far_circle.clone(),
                })
                .collect(),
            cycles: pair
                .cycles
                .iter()
                .map(|(name, c)| {
                    let steps = c
                        .steps()
                        .iter()
                        .map(|st| (st.edge.clone(), st.direction.sign().to_string()))
                        .collect();
                    (name.clone(), steps)
                })
                .collect(),
        }
    }

    /// Builds the model. Only structural problems are reported here (duplicate
    /// ids, malformed attachments or signs); topological checks are left to
    /// validation.
    pub fn to_pair(&self) -> Result<Pair, DocumentError> {
        let structure = |msg: String| DocumentError::Structure(msg);
        unique("block", self.blocks.iter().map(|b| &b.id))?;
        unique("torus", self.tori.iter().map(|t| &t.id))?;
        unique("piece", self.pieces.iter().map(|p| &p.id))?;
        unique("circle", self.circles.iter().map(|c| &c.id))?;
        unique("edge", self.edges.iter().map(|e| &e.id))?;

        let blocks = self
            .blocks
            .iter()
            .map(|b| SeifertBlock {
                id: b.id.clone(),
                genus: b.genus,
                boundary: b.boundary.clone(),
            })
            .collect();
        let tori = self
            .tori
            .iter()
            .map(|t| {
                let [[p, q], [r, s]] = &t.matrix;
                JsjTorus {
                    id: t.id.clone(),
                    near: BoundaryRef::new(&t.near.block, &t.near.label),
                    far: BoundaryRef::new(&t.far.block, &t.far.label),
                    matrix: Matrix2::new(p.0.clone(), q.0.clone(), r.0.clone(), s.0.clone()),
                }
            })
            .collect();
        let manifold = GraphManifold::new(blocks, tori, self.closed);

        let piece_block: BTreeMap<&str, &str> = self
            .pieces
            .iter()
            .map(|p| (p.id.as_str(), p.block.as_str()))
            .collect();
        let mut circles = Vec::with_capacity(self.circles.len());
        for c in &self.circles {
            let attachment = match (&c.torus, c.side, &c.label) {
                (Some(torus), Some(side), None) => Attachment::Torus {
                    torus: torus.clone(),
                    side: side.into(),
                },
                (None, None, Some(label)) => {
                    let block = piece_block.get(c.piece.as_str()).ok_or_else(|| {
                        structure(format!("circle {}: unknown piece {}", c.id, c.piece))
                    })?;
                    Attachment::Boundary(BoundaryRef::new(*block, label))
                }
                _ => {
                    return Err(structure(format!(
                        "circle {}: give either torus and side, or label",
                        c.id
                    )))
                }
            };
            let [a, b] = &c.class;
            circles.push(SurfaceCircle::new(
                &c.id,
                &c.piece,
                attachment,
                a.0.clone(),
                b.0.clone(),
            ));
        }

        let surface = HorizontalSurface::new(
            manifold,
            self.pieces
                .iter()
                .map(|p| SurfacePiece::new(&p.id, &p.block, p.degree, p.genus))
                .collect(),
            circles,
            self.edges
                .iter()
                .map(|e| SurfaceEdge::new(&e.id, &e.near_circle, &e.far_circle))
                .collect(),
        );

        let mut cycles = BTreeMap::new();
        for (name, steps) in &self.cycles {
            let steps = steps
                .iter()
                .map(|(edge, sign)| {
                    parse_sign(sign)
                        .map(|d| Step::new(edge, d))
                        .ok_or_else(|| structure(format!("cycle {name}: bad direction {sign:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            cycles.insert(name.clone(), Cycle::new(steps));
        }
        Ok(Pair { surface, cycles })
    }
}

fn unique<'a>(what: &str, ids: impl Iterator<Item = &'a String>) -> Result<(), DocumentError> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(DocumentError::Structure(format!(
                "duplicate {what} id {id}"
            )));
        }
    }
    Ok(())
}

/// `+` is forward (near to far); `-` or `−` is backward.
pub fn parse_sign(s: &str) -> Option<Direction> {
    match s {
        "+" => Some(Direction::Forward),
        "-" | "−" => Some(Direction::Backward),
        _ => None,
    }
}

/// Parses `e1:+,e2:-,…`. An empty string is the empty cycle.
pub fn parse_cycle(text: &str) -> Result<Cycle, CycleSyntaxError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Cycle::empty());
    }
    text.split(',')
        .map(|part| {
            let (edge, sign) = part
                .trim()
                .rsplit_once(':')
                .ok_or_else(|| CycleSyntaxError(part.to_string()))?;
            let d = parse_sign(sign.trim()).ok_or_else(|| CycleSyntaxError(part.to_string()))?;
            Ok(Step::new(edge.trim(), d))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Cycle::new)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct CycleSyntaxError(pub String);

impl fmt::Display for CycleSyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad cycle step {:?}, expected EDGE:+ or EDGE:-", self.0)
    }
}

impl Pair {
    pub fn parse(text: &str) -> Result<Pair, DocumentError> {
        PairDocument::parse(text)?.to_pair()
    }

    pub fn to_json(&self) -> String {
        PairDocument::from_pair(self).to_json()
    }
}
