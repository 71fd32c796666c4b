//! Dissections of a convex polygon into (k+1)-gons.
//!
//! The polygon has `N = n(k-1) + 2` vertices labelled `1..=N`
//! counterclockwise. The edge `{N, 1}` is the base edge: the face on it
//! corresponds to the root of the dual tree, and the remaining edges of each
//! face, read counterclockwise, correspond to its children.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use crate::counting::catalan_nk;
use crate::error::{Error, Result};
use crate::trees::FullKAryTree;
use crate::validation::ValidationReport;

/// A polygon vertex, numbered from 1.
pub type Vertex = u32;

/// A valid dissection in canonical form: every face lists its vertices in
/// ascending order and faces are sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dissection {
    sides: u32,
    k: u32,
    faces: Vec<Vec<Vertex>>,
}

/// Number of `(k+1)`-gons needed for a `sides`-gon, if any.
pub fn face_count(sides: u32, k: u32) -> Result<u32> {
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    if sides < 3 || !(sides - 2).is_multiple_of(k - 1) || sides - 2 < k - 1 {
        return Err(Error::IncompatibleGeometry { sides, k });
    }
    Ok((sides - 2) / (k - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DissectionViolation {
    IncompatibleSides {
        sides: u32,
        k: u32,
    },
    WrongFaceCount {
        expected: u32,
        found: usize,
    },
    WrongFaceSize {
        face: usize,
        expected: u32,
        found: usize,
    },
    VertexOutOfRange {
        face: usize,
        vertex: Vertex,
    },
    RepeatedVertex {
        face: usize,
        vertex: Vertex,
    },
    NotCyclicOrder {
        face: usize,
    },
    BoundaryEdge {
        edge: (Vertex, Vertex),
        faces: usize,
    },
    Diagonal {
        edge: (Vertex, Vertex),
        faces: usize,
    },
    DiagonalCount {
        expected: u32,
        found: usize,
    },
    Crossing {
        first: (Vertex, Vertex),
        second: (Vertex, Vertex),
    },
}

impl fmt::Display for DissectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DissectionViolation::*;
        match self {
            IncompatibleSides { sides, k } => {
                write!(f, "a {sides}-gon cannot be split into {}-gons", k + 1)
            }
            WrongFaceCount { expected, found } => write!(f, "expected {expected} faces, found {found}"),
            WrongFaceSize { face, expected, found } => {
                write!(f, "face #{face} has {found} vertices, expected {expected}")
            }
            VertexOutOfRange { face, vertex } => write!(f, "face #{face} uses vertex {vertex} outside the polygon"),
            RepeatedVertex { face, vertex } => write!(f, "face #{face} repeats vertex {vertex}"),
            NotCyclicOrder { face } => write!(f, "face #{face} is not listed in cyclic order"),
            BoundaryEdge { edge: (a, b), faces } => {
                write!(f, "boundary edge {{{a},{b}}} lies on {faces} faces, expected 1")
            }
            Diagonal { edge: (a, b), faces } => {
                write!(f, "diagonal {{{a},{b}}} lies on {faces} faces, expected 2")
            }
            DiagonalCount { expected, found } => write!(f, "expected {expected} diagonals, found {found}"),
            Crossing {
                first: (a, b),
                second: (c, d),
            } => {
                write!(f, "diagonals {{{a},{b}}} and {{{c},{d}}} cross")
            }
        }
    }
}

fn is_boundary(sides: u32, a: Vertex, b: Vertex) -> bool {
    b == a + 1 || (a == 1 && b == sides)
}

/// Edges of a face given in ascending order, as `(low, high)` pairs.
fn face_edges(face: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    let last = (face[0], face[face.len() - 1]);
    face.windows(2).map(|w| (w[0], w[1])).chain(std::iter::once(last))
}

fn crosses((a, b): (Vertex, Vertex), (c, d): (Vertex, Vertex)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Checks a list of faces against the dissection invariants.
pub fn validate_faces(sides: u32, k: u32, faces: &[Vec<Vertex>]) -> ValidationReport<DissectionViolation> {
    use DissectionViolation::*;
    let mut out = Vec::new();
    let n = match face_count(sides, k) {
        Ok(n) => n,
        Err(_) => {
            out.push(IncompatibleSides { sides, k });
            return out.into();
        }
    };
    if faces.len() != n as usize {
        out.push(WrongFaceCount {
            expected: n,
            found: faces.len(),
        });
    }
    let mut edge_faces: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for (i, face) in faces.iter().enumerate() {
        if face.len() != k as usize + 1 {
            out.push(WrongFaceSize {
                face: i,
                expected: k + 1,
                found: face.len(),
            });
        }
        if let Some(&v) = face.iter().find(|&&v| v == 0 || v > sides) {
            out.push(VertexOutOfRange { face: i, vertex: v });
            continue;
        }
        let mut sorted = face.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            out.push(RepeatedVertex { face: i, vertex: w[0] });
            continue;
        }
        let descents = (0..face.len())
            .filter(|&j| face[j] > face[(j + 1) % face.len()])
            .count();
        if face.len() > 1 && descents != 1 {
            out.push(NotCyclicOrder { face: i });
        }
        if sorted.len() < 2 {
            continue;
        }
        for e in face_edges(&sorted) {
            *edge_faces.entry(e).or_default() += 1;
        }
    }
    for a in 1..=sides {
        let e = if a == sides { (1, sides) } else { (a, a + 1) };
        let c = edge_faces.get(&e).copied().unwrap_or(0);
        if c != 1 {
            out.push(BoundaryEdge { edge: e, faces: c });
        }
    }
    let mut diagonals: Vec<(Vertex, Vertex)> = edge_faces
        .keys()
        .copied()
        .filter(|&(a, b)| !is_boundary(sides, a, b))
        .collect();
    diagonals.sort_unstable();
    for &d in &diagonals {
        if edge_faces[&d] != 2 {
            out.push(Diagonal {
                edge: d,
                faces: edge_faces[&d],
            });
        }
    }
    if diagonals.len() != n as usize - 1 {
        out.push(DiagonalCount {
            expected: n - 1,
            found: diagonals.len(),
        });
    }
    for i in 0..diagonals.len() {
        for j in i + 1..diagonals.len() {
            if crosses(diagonals[i], diagonals[j]) {
                out.push(Crossing {
                    first: diagonals[i],
                    second: diagonals[j],
                });
            }
        }
    }
    out.into()
}

impl Dissection {
    /// Builds a dissection from faces given in any order, each face listed in
    /// cyclic order starting anywhere.
    pub fn new(sides: u32, k: u32, faces: Vec<Vec<Vertex>>) -> Result<Dissection> {
        validate_faces(sides, k, &faces).into_result()?;
        Ok(Dissection::from_faces_unchecked(sides, k, faces))
    }

    fn from_faces_unchecked(sides: u32, k: u32, mut faces: Vec<Vec<Vertex>>) -> Dissection {
        for f in &mut faces {
            f.sort_unstable();
        }
        faces.sort_unstable();
        Dissection { sides, k, faces }
    }

    pub fn sides(&self) -> u32 {
        self.sides
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of faces.
    pub fn n(&self) -> u32 {
        self.faces.len() as u32
    }

    pub fn faces(&self) -> &[Vec<Vertex>] {
        &self.faces
    }

    /// Internal diagonals in ascending order.
    pub fn diagonals(&self) -> Vec<(Vertex, Vertex)> {
        let mut d: Vec<_> = self
            .faces
            .iter()
            .flat_map(|f| face_edges(f))
            .filter(|&(a, b)| !is_boundary(self.sides, a, b))
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

pub fn validate_dissection(p: &Dissection) -> ValidationReport<DissectionViolation> {
    validate_faces(p.sides, p.k, &p.faces)
}

/// Lays the tree's leaves along the non-base edges in preorder; every
/// internal node becomes the face spanned by the endpoints of its children.
pub fn tree_to_dissection(t: &FullKAryTree) -> Result<Dissection> {
    let n = t.internal_count();
    if n == 0 {
        return Err(Error::Domain("a tree without internal nodes has no dissection".into()));
    }
    let k = t.k();
    let sides = n * (k - 1) + 2;
    let kids = t.children_lists();
    let mut leaves = vec![0u32; kids.len()];
    for v in (0..kids.len()).rev() {
        leaves[v] = if kids[v].is_empty() {
            1
        } else {
            kids[v].iter().map(|&c| leaves[c]).sum()
        };
    }
    let mut faces = Vec::with_capacity(n as usize);
    let mut stack = vec![(0usize, 1u32)];
    while let Some((v, lo)) = stack.pop() {
        if kids[v].is_empty() {
            continue;
        }
        let mut face = vec![lo];
        let mut at = lo;
        for &c in &kids[v] {
            stack.push((c, at));
            at += leaves[c];
            face.push(at);
        }
        faces.push(face);
    }
    Ok(Dissection::from_faces_unchecked(sides, k, faces))
}

/// Dual tree of a dissection, rooted at the face on the base edge.
pub fn dissection_to_tree(p: &Dissection) -> Result<FullKAryTree> {
    let mut by_edge: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
    for (i, f) in p.faces.iter().enumerate() {
        for e in face_edges(f) {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let root = match by_edge.get(&(1, p.sides)).map(Vec::as_slice) {
        Some(&[f]) => f,
        _ => {
            return Err(Error::MalformedDissection(
                "base edge is not on exactly one face".into(),
            ))
        }
    };
    enum Item {
        Leaf,
        Face(usize),
    }
    let mut shape = Vec::new();
    let mut stack = vec![Item::Face(root)];
    while let Some(item) = stack.pop() {
        let Item::Face(f) = item else {
            shape.push(false);
            continue;
        };
        shape.push(true);
        let face = &p.faces[f];
        for w in face.windows(2).rev() {
            let (a, b) = (w[0], w[1]);
            if b == a + 1 {
                stack.push(Item::Leaf);
                continue;
            }
            let other = by_edge
                .get(&(a, b))
                .and_then(|fs| match fs.as_slice() {
                    &[x, y] => Some(if x == f { y } else { x }),
                    _ => None,
                })
                .ok_or_else(|| {
                    Error::MalformedDissection(format!("diagonal {{{a},{b}}} is not shared by two faces"))
                })?;
            stack.push(Item::Face(other));
        }
        if shape.len() > p.faces.len() * (p.k as usize + 1) + 1 {
            return Err(Error::MalformedDissection("faces do not form a tree".into()));
        }
    }
    FullKAryTree::from_preorder(p.k, shape)
}

struct DissectionEnumerator<'a, F> {
    sides: u32,
    k: u32,
    faces: Vec<Vec<Vertex>>,
    // Sub-polygons still to fill, each given by its base edge (lo, hi).
    pending: Vec<(Vertex, Vertex)>,
    emit: &'a mut F,
}

impl<F: FnMut(&Dissection) -> ControlFlow<()>> DissectionEnumerator<'_, F> {
    fn run(&mut self) -> ControlFlow<()> {
        let Some((lo, hi)) = self.pending.pop() else {
            let d = Dissection::from_faces_unchecked(self.sides, self.k, self.faces.clone());
            return (self.emit)(&d);
        };
        let mut face = vec![lo];
        let r = self.choose(&mut face, hi);
        self.pending.push((lo, hi));
        r
    }

    /// Picks the next vertex of the face sitting on base edge `(face[0], hi)`.
    /// A gap of `m` edges is either a single edge or a sub-polygon, which
    /// needs `m - 1` divisible by `k - 1`.
    fn choose(&mut self, face: &mut Vec<Vertex>, hi: Vertex) -> ControlFlow<()> {
        let step = self.k - 1;
        let prev = *face.last().unwrap();
        if face.len() == self.k as usize {
            if !(hi - prev - 1).is_multiple_of(step) {
                return ControlFlow::Continue(());
            }
            face.push(hi);
            let depth = self.pending.len();
            for w in face.windows(2).rev() {
                if w[1] > w[0] + 1 {
                    self.pending.push((w[0], w[1]));
                }
            }
            self.faces.push(face.clone());
            let r = self.run();
            self.faces.pop();
            self.pending.truncate(depth);
            face.pop();
            return r;
        }
        let remaining = self.k as usize - face.len();
        let mut next = prev + 1;
        while next + remaining as u32 <= hi {
            face.push(next);
            let r = self.choose(face, hi);
            face.pop();
            r?;
            next += step;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every dissection of a `sides`-gon into `(k+1)`-gons once.
pub fn for_each_dissection<F>(sides: u32, k: u32, mut f: F) -> Result<()>
where
    F: FnMut(&Dissection) -> ControlFlow<()>,
{
    face_count(sides, k)?;
    let mut e = DissectionEnumerator {
        sides,
        k,
        faces: Vec::new(),
        pending: vec![(1, sides)],
        emit: &mut f,
    };
    let _ = e.run();
    Ok(())
}

/// All dissections of a `sides`-gon into `(k+1)`-gons, sorted.
pub fn enumerate_dissections(sides: u32, k: u32, cap: u64) -> Result<Vec<Dissection>> {
    let n = face_count(sides, k)?;
    let count = catalan_nk(n as u64, k as u64)?;
    let count = match count.to_u64() {
        Some(c) if c <= cap => c,
        _ => {
            return Err(Error::CapExceeded {
                count: count.into_inner(),
                cap,
            })
        }
    };
    let mut out = Vec::with_capacity(count as usize);
    for_each_dissection(sides, k, |d| {
        out.push(d.clone());
        ControlFlow::Continue(())
    })?;
    out.sort_unstable();
    Ok(out)
}
