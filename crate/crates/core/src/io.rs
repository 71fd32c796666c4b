//! Canonical JSON forms.
//!
//! Output has sorted keys and no whitespace, so equal objects serialize to
//! identical bytes:
//!
//! * diagram: `{"k":3,"n":2,"stars":[[1,2,3],[4,5,6]]}`
//! * tree: `[]` for a leaf, a k-element array of subtrees otherwise
//! * dissection: `{"faces":[[1,2,3,4],[1,4,5,6]],"k":3,"sides":6}`
//!
//! Trees are parsed by hand: the grammar is tiny and a recursive JSON parser
//! would cap the depth of a tree.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::diagrams::{Diagram, Label};
use crate::dissections::{Dissection, Vertex};
use crate::error::{Error, Result};
use crate::trees::{FullKAryTree, OrderedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Diagram,
    Tree,
    Dissection,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Diagram => "diagram",
            Kind::Tree => "tree",
            Kind::Dissection => "dissection",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "diagram" => Ok(Kind::Diagram),
            "tree" => Ok(Kind::Tree),
            "dissection" => Ok(Kind::Dissection),
            other => Err(Error::Parse(format!("unknown kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Object {
    Diagram(Diagram),
    Tree(FullKAryTree),
    Dissection(Dissection),
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Diagram(_) => Kind::Diagram,
            Object::Tree(_) => Kind::Tree,
            Object::Dissection(_) => Kind::Dissection,
        }
    }
}

impl From<Diagram> for Object {
    fn from(d: Diagram) -> Self {
        Object::Diagram(d)
    }
}

impl From<FullKAryTree> for Object {
    fn from(t: FullKAryTree) -> Self {
        Object::Tree(t)
    }
}

impl From<Dissection> for Object {
    fn from(d: Dissection) -> Self {
        Object::Dissection(d)
    }
}

// Field order is alphabetical so serde emits sorted keys.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    k: u32,
    n: u32,
    stars: Vec<Vec<Label>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DissectionJson {
    faces: Vec<Vec<Vertex>>,
    k: u32,
    sides: u32,
}

pub fn encode_diagram(d: &Diagram) -> String {
    let json = DiagramJson {
        k: d.k(),
        n: d.n(),
        stars: d.to_star_lists(),
    };
    serde_json::to_string(&json).expect("plain data serializes")
}

pub fn encode_dissection(p: &Dissection) -> String {
    let json = DissectionJson {
        faces: p.faces().to_vec(),
        k: p.k(),
        sides: p.sides(),
    };
    serde_json::to_string(&json).expect("plain data serializes")
}

pub fn encode_tree(t: &FullKAryTree) -> String {
    let mut out = String::with_capacity(t.node_count() * 3);
    let mut remaining: Vec<u32> = Vec::new();
    for &internal in t.shape() {
        if internal {
            out.push('[');
            remaining.push(t.k());
            continue;
        }
        out.push_str("[]");
        // Close every ancestor whose last child just finished.
        while let Some(r) = remaining.last_mut() {
            *r -= 1;
            if *r == 0 {
                remaining.pop();
                out.push(']');
            } else {
                out.push(',');
                break;
            }
        }
    }
    out
}

pub fn encode(obj: &Object) -> String {
    match obj {
        Object::Diagram(d) => encode_diagram(d),
        Object::Tree(t) => encode_tree(t),
        Object::Dissection(p) => encode_dissection(p),
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn decode_diagram(text: &str) -> Result<Diagram> {
    let json: DiagramJson = serde_json::from_str(text).map_err(parse_error)?;
    Diagram::new(json.n, json.k, json.stars)
}

pub fn decode_dissection(text: &str) -> Result<Dissection> {
    let json: DissectionJson = serde_json::from_str(text).map_err(parse_error)?;
    Dissection::new(json.sides, json.k, json.faces)
}

/// Parses nested arrays into an ordered tree without checking arities.
pub fn parse_ordered_tree(text: &str) -> Result<OrderedTree> {
    let mut tree: Option<OrderedTree> = None;
    let mut stack: Vec<usize> = Vec::new();
    // What the previous token allows next.
    #[derive(PartialEq)]
    enum Prev {
        Start,
        Open,
        Close,
        Comma,
    }
    let mut prev = Prev::Start;
    let mut done = false;
    for (at, c) in text.char_indices() {
        if c.is_ascii_whitespace() {
            continue;
        }
        let err = |what: &str| Error::Parse(format!("{what} at byte {at}"));
        if done {
            return Err(err("trailing characters"));
        }
        match c {
            '[' => {
                if prev == Prev::Close {
                    return Err(err("expected ',' or ']'"));
                }
                let id = match (&mut tree, stack.last()) {
                    (None, _) => {
                        tree = Some(OrderedTree::new());
                        0
                    }
                    (Some(t), Some(&parent)) => t.add_child(parent),
                    (Some(_), None) => return Err(err("second top-level value")),
                };
                stack.push(id);
                prev = Prev::Open;
            }
            ']' => {
                if prev == Prev::Comma || prev == Prev::Start {
                    return Err(err("unexpected ']'"));
                }
                stack.pop();
                prev = Prev::Close;
                done = stack.is_empty();
            }
            ',' => {
                if prev != Prev::Close || stack.is_empty() {
                    return Err(err("unexpected ','"));
                }
                prev = Prev::Comma;
            }
            other => return Err(err(&format!("unexpected character {other:?}"))),
        }
    }
    match tree {
        Some(t) if done => Ok(t),
        _ => Err(Error::Parse("unexpected end of input".into())),
    }
}

/// Parses a tree. `k` is taken from the root when it is internal; a bare
/// leaf needs `k_hint`.
pub fn decode_tree(text: &str, k_hint: Option<u32>) -> Result<FullKAryTree> {
    let t = parse_ordered_tree(text)?;
    let k = match (t.children(0).len(), k_hint) {
        (_, Some(k)) => k,
        (0, None) => return Err(Error::Validation(vec!["arity of a single leaf is unknown".into()])),
        (root, None) => root as u32,
    };
    FullKAryTree::from_ordered(&t, k)
}

pub fn decode(text: &str, kind: Kind) -> Result<Object> {
    Ok(match kind {
        Kind::Diagram => Object::Diagram(decode_diagram(text)?),
        Kind::Tree => Object::Tree(decode_tree(text, None)?),
        Kind::Dissection => Object::Dissection(decode_dissection(text)?),
    })
}

/// An object together with the cut offset that ties trees and dissections
/// back to a particular labelling of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub object: Object,
    pub offset: u32,
}

/// Canonical form of an object with its offset:
/// `{"offset":2,"tree":[...]}` or `{"dissection":{...},"offset":2}`.
/// Diagrams carry no offset and encode bare.
pub fn encode_located(x: &Located) -> String {
    match &x.object {
        Object::Diagram(d) => encode_diagram(d),
        Object::Tree(t) => format!("{{\"offset\":{},\"tree\":{}}}", x.offset, encode_tree(t)),
        Object::Dissection(p) => format!("{{\"dissection\":{},\"offset\":{}}}", encode_dissection(p), x.offset),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Wrapped<'a> {
    #[serde(default)]
    offset: u32,
    #[serde(borrow, default)]
    tree: Option<&'a RawValue>,
    #[serde(borrow, default)]
    dissection: Option<&'a RawValue>,
}

/// Accepts either the bare canonical form (offset 0) or the wrapped form
/// produced by [`encode_located`].
pub fn decode_located(text: &str, kind: Kind) -> Result<Located> {
    let trimmed = text.trim_start();
    let wrapped = match kind {
        Kind::Diagram => false,
        Kind::Tree => trimmed.starts_with('{'),
        Kind::Dissection => trimmed.starts_with('{') && trimmed.contains("\"dissection\""),
    };
    if !wrapped {
        return Ok(Located {
            object: decode(text, kind)?,
            offset: 0,
        });
    }
    let w: Wrapped = serde_json::from_str(text).map_err(parse_error)?;
    let object = match (kind, w.tree, w.dissection) {
        (Kind::Tree, Some(raw), None) => Object::Tree(decode_tree(raw.get(), None)?),
        (Kind::Dissection, None, Some(raw)) => Object::Dissection(decode_dissection(raw.get())?),
        _ => return Err(Error::Parse(format!("expected a wrapped {kind}"))),
    };
    Ok(Located {
        object,
        offset: w.offset,
    })
}
