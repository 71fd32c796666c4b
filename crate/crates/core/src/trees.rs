//! Full k-ary trees and their bijection with (n,k) diagrams.
//!
//! Children are named by letters `a, b, c, ...` from the left, so every
//! non-root node gets a word. Listing words in dictionary order is the same
//! as a preorder walk, and numbering them `1..=nk` places the nodes on the
//! boundary of a disc. The children of each internal node then form one star.

use std::fmt;
use std::ops::ControlFlow;

use crate::counting::catalan_nk;
use crate::diagrams::{canonical_cut, Diagram, Label};
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// A rooted ordered tree with arbitrary arities, as read from input.
/// Nodes are stored in preorder; node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderedTree {
    children: Vec<Vec<usize>>,
}

impl OrderedTree {
    pub fn new() -> Self {
        OrderedTree {
            children: vec![Vec::new()],
        }
    }

    /// Adds a child to `parent` and returns its index. Children must be added
    /// in preorder for [`FullKAryTree::from_ordered`] to read them correctly.
    pub fn add_child(&mut self, parent: usize) -> usize {
        let id = self.children.len();
        self.children.push(Vec::new());
        self.children[parent].push(id);
        id
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }
}

/// A node whose arity is neither 0 nor k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArityViolation {
    pub word: Word,
    pub found: usize,
    pub k: u32,
}

impl fmt::Display for ArityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.word.is_empty() {
            "root".to_string()
        } else {
            format!("node {}", self.word)
        };
        write!(f, "{at} has {} children, expected 0 or {}", self.found, self.k)
    }
}

/// Checks that every internal node has exactly `k` children.
pub fn validate_tree(t: &OrderedTree, k: u32) -> ValidationReport<ArityViolation> {
    let mut out = Vec::new();
    if t.is_empty() {
        return out.into();
    }
    let mut stack = vec![(0usize, Word::root(k))];
    while let Some((node, word)) = stack.pop() {
        let kids = &t.children[node];
        if !kids.is_empty() && kids.len() != k as usize {
            out.push(ArityViolation {
                word: word.clone(),
                found: kids.len(),
                k,
            });
        }
        for (i, &c) in kids.iter().enumerate().rev() {
            stack.push((c, word.child(i as u32)));
        }
    }
    out.into()
}

/// A full k-ary tree, stored as its preorder internal/leaf bitstring
/// (`true` for internal nodes).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullKAryTree {
    k: u32,
    shape: Vec<bool>,
}

impl FullKAryTree {
    /// The tree with a single leaf and no internal nodes.
    pub fn leaf(k: u32) -> Self {
        FullKAryTree { k, shape: vec![false] }
    }

    /// A root whose `k` children are all leaves.
    pub fn star(k: u32) -> Self {
        let mut shape = vec![true];
        shape.extend(std::iter::repeat_n(false, k as usize));
        FullKAryTree { k, shape }
    }

    /// Builds a tree from its preorder bitstring, checking that it describes
    /// exactly one complete full k-ary tree.
    pub fn from_preorder(k: u32, shape: Vec<bool>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("need k >= 2, got {k}")));
        }
        let mut open: u64 = 1;
        for (i, &internal) in shape.iter().enumerate() {
            if open == 0 {
                return Err(Error::Validation(vec![format!("trailing nodes after position {i}")]));
            }
            open = open - 1 + if internal { k as u64 } else { 0 };
        }
        if open != 0 || shape.is_empty() {
            return Err(Error::Validation(vec![format!("{open} children missing")]));
        }
        Ok(FullKAryTree { k, shape })
    }

    /// Converts an ordered tree, rejecting any arity other than 0 or `k`.
    pub fn from_ordered(t: &OrderedTree, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("need k >= 2, got {k}")));
        }
        validate_tree(t, k).into_result()?;
        let mut shape = Vec::with_capacity(t.len());
        let mut stack = vec![0usize];
        while let Some(node) = stack.pop() {
            let kids = &t.children[node];
            shape.push(!kids.is_empty());
            stack.extend(kids.iter().rev());
        }
        Ok(FullKAryTree { k, shape })
    }

    pub fn to_ordered(&self) -> OrderedTree {
        let mut t = OrderedTree::new();
        let mut stack: Vec<(usize, u32)> = Vec::new();
        for (i, &internal) in self.shape.iter().enumerate() {
            let id = if i == 0 {
                0
            } else {
                let top = stack.last_mut().expect("well-formed shape");
                let parent = top.0;
                top.1 -= 1;
                if top.1 == 0 {
                    stack.pop();
                }
                t.add_child(parent)
            };
            if internal {
                stack.push((id, self.k));
            }
        }
        t
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Preorder internal/leaf flags.
    pub fn shape(&self) -> &[bool] {
        &self.shape
    }

    /// Number of internal nodes.
    pub fn internal_count(&self) -> u32 {
        self.shape.iter().filter(|&&b| b).count() as u32
    }

    pub fn node_count(&self) -> usize {
        self.shape.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.shape.len() - self.internal_count() as usize
    }

    /// Children lists for every node in preorder.
    pub fn children_lists(&self) -> Vec<Vec<usize>> {
        self.to_ordered().children
    }
}

/// Visits the nodes of `t` in preorder, calling `f(parent, node, internal)`
/// for every non-root node; `node` counts from 1.
fn walk_children(t: &FullKAryTree, mut f: impl FnMut(usize, usize, bool)) {
    let mut stack: Vec<(usize, u32)> = Vec::new();
    for (i, &internal) in t.shape.iter().enumerate() {
        if i > 0 {
            let top = stack.last_mut().expect("well-formed shape");
            let parent = top.0;
            top.1 -= 1;
            if top.1 == 0 {
                stack.pop();
            }
            f(parent, i, internal);
        }
        if internal {
            stack.push((i, t.k));
        }
    }
}

/// The path from the root as child indices; index 0 is letter `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u32>,
    k: u32,
}

impl Word {
    pub fn root(k: u32) -> Self {
        Word { letters: Vec::new(), k }
    }

    pub fn new(k: u32, letters: Vec<u32>) -> Self {
        Word { letters, k }
    }

    pub fn child(&self, index: u32) -> Self {
        let mut letters = self.letters.clone();
        letters.push(index);
        Word { letters, k: self.k }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn ends_with_first_letter(&self) -> bool {
        self.letters.last() == Some(&0)
    }

    /// Parses `"acb"` (k <= 26) or `"0.2.1"` (any k).
    pub fn parse(k: u32, text: &str) -> Result<Self> {
        let letters: Option<Vec<u32>> = if text.contains('.') || k > 26 {
            text.split('.').map(|p| p.parse().ok()).collect()
        } else {
            text.bytes()
                .map(|b| b.is_ascii_lowercase().then(|| (b - b'a') as u32))
                .collect()
        };
        match letters {
            Some(l) if l.iter().all(|&x| x < k) => Ok(Word { letters: l, k }),
            _ => Err(Error::Parse(format!("bad word {text:?} for k={k}"))),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 26 {
            for &l in &self.letters {
                write!(f, "{}", (b'a' + l as u8) as char)?;
            }
            Ok(())
        } else {
            for (i, l) in self.letters.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{l}")?;
            }
            Ok(())
        }
    }
}

/// Every non-root word in dictionary order, paired with its position
/// `1..=nk`.
pub fn word_table(t: &FullKAryTree) -> Vec<(Word, u32)> {
    let mut words: Vec<Word> = vec![Word::root(t.k)];
    let mut next_child = vec![0u32; t.shape.len()];
    let mut out = Vec::with_capacity(t.shape.len().saturating_sub(1));
    walk_children(t, |parent, node, _| {
        let w = words[parent].child(next_child[parent]);
        next_child[parent] += 1;
        words.push(w.clone());
        debug_assert_eq!(words.len(), node + 1);
        out.push((w, node as u32));
    });
    out
}

/// Places the tree's non-root nodes on the boundary in preorder, the node at
/// position `p` getting label `((p + offset - 1) mod nk) + 1`, and turns the
/// children of each internal node into a star.
pub fn tree_to_diagram(t: &FullKAryTree, offset: u32) -> Result<Diagram> {
    let n = t.internal_count();
    if n == 0 {
        return Err(Error::Domain("a tree without internal nodes has no diagram".into()));
    }
    let nk = n * t.k;
    let offset = offset % nk;
    let label = |p: usize| ((p as u32 + offset - 1) % nk) + 1;
    let mut groups: Vec<Vec<Label>> = vec![Vec::new(); t.shape.len()];
    walk_children(t, |parent, node, _| groups[parent].push(label(node)));
    let stars: Vec<Vec<Label>> = groups.into_iter().filter(|g| !g.is_empty()).collect();
    Diagram::new(n, t.k, stars)
}

/// Cuts the disc open just before `start` and reads the tree off the
/// resulting line: a node is internal exactly when the next position holds
/// the first leg of its star.
pub fn diagram_to_tree_at(d: &Diagram, start: Label) -> Result<FullKAryTree> {
    let nk = d.nk();
    if start < 1 || start > nk {
        return Err(Error::Domain(format!("cut label {start} outside 1..={nk}")));
    }
    let owners = d.owners();
    let mut seen = vec![false; d.n() as usize];
    let mut first_leg = vec![false; nk as usize + 1];
    for i in 0..nk {
        let pos = (i + 1) as usize;
        let star = owners[((start - 1 + i) % nk + 1) as usize];
        first_leg[pos] = !seen[star];
        seen[star] = true;
    }
    let mut shape = Vec::with_capacity(nk as usize + 1);
    shape.push(true);
    for pos in 1..=nk as usize {
        shape.push(pos < nk as usize && first_leg[pos + 1]);
    }
    FullKAryTree::from_preorder(d.k(), shape)
}

/// Cuts the disc at the canonical point and returns the tree together with
/// the offset that [`tree_to_diagram`] needs to reproduce `d`.
pub fn diagram_to_tree(d: &Diagram) -> Result<(FullKAryTree, u32)> {
    let cut = canonical_cut(d);
    Ok((diagram_to_tree_at(d, cut)?, cut - 1))
}

struct TreeEnumerator<'a, F> {
    k: u32,
    shape: Vec<bool>,
    emit: &'a mut F,
}

impl<F: FnMut(&FullKAryTree) -> ControlFlow<()>> TreeEnumerator<'_, F> {
    /// `open` nodes still to be written, `internal` of which must be internal.
    fn run(&mut self, open: u64, internal: u32) -> ControlFlow<()> {
        if open == 0 {
            let t = FullKAryTree {
                k: self.k,
                shape: self.shape.clone(),
            };
            return (self.emit)(&t);
        }
        if internal == 0 || open > 1 {
            self.shape.push(false);
            let r = self.run(open - 1, internal);
            self.shape.pop();
            r?;
        }
        if internal > 0 {
            self.shape.push(true);
            let r = self.run(open - 1 + self.k as u64, internal - 1);
            self.shape.pop();
            r?;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every full k-ary tree with `n` internal nodes, in lexicographic
/// order of the preorder bitstring (leaf before internal).
pub fn for_each_tree<F>(n: u32, k: u32, mut f: F) -> Result<()>
where
    F: FnMut(&FullKAryTree) -> ControlFlow<()>,
{
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    let mut e = TreeEnumerator {
        k,
        shape: Vec::with_capacity((n * k + 1) as usize),
        emit: &mut f,
    };
    let _ = e.run(1, n);
    Ok(())
}

/// All full k-ary trees with `n` internal nodes.
pub fn enumerate_trees(n: u32, k: u32, cap: u64) -> Result<Vec<FullKAryTree>> {
    if n > 0 {
        crate::diagrams::check_cap(n, k, cap)?;
    } else if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    let expected = if n == 0 {
        1
    } else {
        catalan_nk(n as u64, k as u64)?.to_u64().unwrap_or(0)
    };
    let mut out = Vec::with_capacity(expected as usize);
    for_each_tree(n, k, |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The (6,3) tree whose canonical offset-2 embedding is the worked example
/// diagram in [`crate::diagrams::example_diagram`].
pub fn example_tree() -> FullKAryTree {
    // Internal nodes: root, a, ac, acb, b, c.
    let words = ["", "a", "ac", "acb", "b", "c"];
    let mut t = OrderedTree::new();
    fn build(t: &mut OrderedTree, node: usize, word: &str, internal: &[&str]) {
        if !internal.contains(&word) {
            return;
        }
        for letter in ['a', 'b', 'c'] {
            let c = t.add_child(node);
            build(t, c, &format!("{word}{letter}"), internal);
        }
    }
    build(&mut t, 0, "", &words);
    FullKAryTree::from_ordered(&t, 3).expect("valid fixture")
}
