//! (n,k) star diagrams.
//!
//! A diagram is a non-crossing partition of the cyclic labels `1..=nk` into
//! `n` blocks ("stars") of size `k`. Geometry plays no role: two embeddings
//! are the same diagram exactly when they induce the same partition.
//!
//! Subsets of labels encode diagrams by peeling. Members of the subset are
//! up-steps, the other labels down-steps. Scanning labels in increasing
//! cyclic order, an up-step followed by `k - 1` down-steps (among the labels
//! not yet removed) is an innermost star; it is removed and the scan repeats.
//! With `n` up-steps ([`psi`]) peeling consumes every label. With `n - 1`
//! up-steps ([`theta`]) it leaves exactly `k` labels, which form the last
//! star. Every diagram has exactly `n` preimages under [`theta`], which is
//! where `binomial(nk, n-1) / n` comes from.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use crate::counting::catalan_nk;
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// A boundary point of the disc, numbered from 1.
pub type Label = u32;

/// A valid (n,k) diagram in canonical form.
///
/// Stars are sorted by their minimum label and each star lists its labels in
/// ascending order. The derived ordering compares `(n, k)` and then the
/// canonical serialization lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: u32,
    k: u32,
    // Canonical stars, concatenated; star i is labels[i*k..(i+1)*k].
    labels: Vec<Label>,
}

/// A problem found by [`validate_stars`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramViolation {
    BadParameters { n: u32, k: u32 },
    WrongStarCount { expected: u32, found: usize },
    WrongStarSize { star: usize, expected: u32, found: usize },
    LabelOutOfRange { star: usize, label: Label },
    DuplicateLabel { label: Label },
    MissingLabel { label: Label },
    Crossing { first: usize, second: usize },
}

impl fmt::Display for DiagramViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DiagramViolation::*;
        match self {
            BadParameters { n, k } => write!(f, "need n >= 1 and k >= 2, got n={n}, k={k}"),
            WrongStarCount { expected, found } => {
                write!(f, "expected {expected} stars, found {found}")
            }
            WrongStarSize { star, expected, found } => {
                write!(f, "star #{star} has {found} legs, expected {expected}")
            }
            LabelOutOfRange { star, label } => {
                write!(f, "star #{star} uses label {label} outside the boundary")
            }
            DuplicateLabel { label } => write!(f, "label {label} used more than once"),
            MissingLabel { label } => write!(f, "label {label} is not covered"),
            Crossing { first, second } => write!(f, "stars #{first} and #{second} cross"),
        }
    }
}

/// True when `b` does not interleave with `a`: every label of `b` falls in
/// the same cyclic gap between consecutive labels of `a`. Both are sorted.
fn within_one_gap(a: &[Label], b: &[Label]) -> bool {
    let gap = |x: Label| a.partition_point(|&y| y < x) % a.len();
    let g = gap(b[0]);
    b.iter().all(|&x| gap(x) == g)
}

/// Checks the partition, block-size and non-crossing invariants of a list of
/// stars. Stars may be given in any order.
pub fn validate_stars(n: u32, k: u32, stars: &[Vec<Label>]) -> ValidationReport<DiagramViolation> {
    use DiagramViolation::*;
    let mut out = Vec::new();
    if n < 1 || k < 2 {
        out.push(BadParameters { n, k });
        return out.into();
    }
    if stars.len() != n as usize {
        out.push(WrongStarCount {
            expected: n,
            found: stars.len(),
        });
    }
    let nk = n as u64 * k as u64;
    let mut seen = vec![false; nk as usize + 1];
    for (i, star) in stars.iter().enumerate() {
        if star.len() != k as usize {
            out.push(WrongStarSize {
                star: i,
                expected: k,
                found: star.len(),
            });
        }
        for &label in star {
            if label == 0 || label as u64 > nk {
                out.push(LabelOutOfRange { star: i, label });
            } else if seen[label as usize] {
                out.push(DuplicateLabel { label });
            } else {
                seen[label as usize] = true;
            }
        }
    }
    for (label, _) in seen.iter().enumerate().skip(1).filter(|(_, &s)| !s) {
        out.push(MissingLabel { label: label as Label });
    }
    let sorted: Vec<Vec<Label>> = stars
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if sorted[i].is_empty() || sorted[j].is_empty() {
                continue;
            }
            if !within_one_gap(&sorted[i], &sorted[j]) {
                out.push(Crossing { first: i, second: j });
            }
        }
    }
    out.into()
}

/// Independent characterization of valid diagrams: repeatedly remove a star
/// whose labels are cyclically consecutive among the remaining labels.
/// Assumes `stars` already partitions `1..=nk` into blocks of size `k`.
pub fn is_peelable(n: u32, k: u32, stars: &[Vec<Label>]) -> bool {
    let nk = (n * k) as usize;
    let mut owner = vec![usize::MAX; nk + 1];
    for (i, s) in stars.iter().enumerate() {
        for &l in s {
            owner[l as usize] = i;
        }
    }
    let mut remaining: Vec<usize> = (1..=nk).map(|l| owner[l]).collect();
    while !remaining.is_empty() {
        let len = remaining.len();
        let k = k as usize;
        let start = (0..len).find(|&p| (0..k).all(|d| remaining[(p + d) % len] == remaining[p]));
        let Some(p) = start else { return false };
        let removed: BTreeSet<usize> = (0..k).map(|d| (p + d) % len).collect();
        remaining = remaining
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, &o)| o)
            .collect();
    }
    true
}

impl Diagram {
    /// Builds a diagram from stars in any order, validating every invariant.
    pub fn new(n: u32, k: u32, stars: Vec<Vec<Label>>) -> Result<Diagram> {
        validate_stars(n, k, &stars).into_result()?;
        Ok(Diagram::from_stars_unchecked(n, k, stars))
    }

    fn from_stars_unchecked(n: u32, k: u32, mut stars: Vec<Vec<Label>>) -> Diagram {
        for s in &mut stars {
            s.sort_unstable();
        }
        stars.sort_unstable_by_key(|s| s[0]);
        Diagram {
            n,
            k,
            labels: stars.concat(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of boundary points, `n * k`.
    pub fn nk(&self) -> u32 {
        self.n * self.k
    }

    /// Stars in canonical order.
    pub fn stars(&self) -> impl ExactSizeIterator<Item = &[Label]> + '_ {
        self.labels.chunks_exact(self.k as usize)
    }

    pub fn star(&self, i: usize) -> &[Label] {
        let k = self.k as usize;
        &self.labels[i * k..(i + 1) * k]
    }

    pub fn to_star_lists(&self) -> Vec<Vec<Label>> {
        self.stars().map(<[Label]>::to_vec).collect()
    }

    /// Star index of every label; index 0 is unused.
    pub fn owners(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.nk() as usize + 1];
        for (i, s) in self.stars().enumerate() {
            for &l in s {
                owner[l as usize] = i;
            }
        }
        owner
    }

    /// Rotates every label by `by` positions around the boundary.
    pub fn rotate(&self, by: u32) -> Diagram {
        let nk = self.nk();
        let stars = self
            .stars()
            .map(|s| s.iter().map(|&l| (l - 1 + by % nk) % nk + 1).collect())
            .collect();
        Diagram::from_stars_unchecked(self.n, self.k, stars)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.stars().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, l) in s.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// Re-checks an already constructed diagram.
pub fn validate_diagram(d: &Diagram) -> ValidationReport<DiagramViolation> {
    validate_stars(d.n, d.k, &d.to_star_lists())
}

/// A subset of the cyclic labels `1..=nk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetCode {
    nk: u32,
    members: Vec<Label>,
}

impl SubsetCode {
    /// Sorts and checks the members; duplicates and out-of-range labels are
    /// rejected.
    pub fn new(nk: u32, mut members: Vec<Label>) -> Result<SubsetCode> {
        members.sort_unstable();
        if let Some(&bad) = members.iter().find(|&&l| l == 0 || l > nk) {
            return Err(Error::InvalidCode(format!("label {bad} outside 1..={nk}")));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCode(format!("repeated label in {members:?}")));
        }
        Ok(SubsetCode { nk, members })
    }

    pub fn nk(&self) -> u32 {
        self.nk
    }

    pub fn members(&self) -> &[Label] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, label: Label) -> bool {
        self.members.binary_search(&label).is_ok()
    }

    fn up_flags(&self) -> Vec<bool> {
        let mut up = vec![false; self.nk as usize + 1];
        for &m in &self.members {
            up[m as usize] = true;
        }
        up
    }
}

impl fmt::Display for SubsetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// Running height of an up/down labelling, read cyclically from the
/// smallest up-step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile {
    /// Smallest member of the up-set.
    pub origin: Label,
    /// `heights[l]` for each label `l`; index 0 is unused.
    pub heights: Vec<i64>,
}

impl HeightProfile {
    pub fn at(&self, label: Label) -> i64 {
        self.heights[label as usize]
    }
}

/// Height profile of a non-empty up-set: +1 per up-step, -1 per down-step,
/// accumulated from `origin` around the circle.
pub fn height_profile(code: &SubsetCode) -> Result<HeightProfile> {
    let origin = *code
        .members
        .first()
        .ok_or_else(|| Error::InvalidCode("height profile of an empty up-set".into()))?;
    let nk = code.nk;
    let up = code.up_flags();
    let mut heights = vec![0i64; nk as usize + 1];
    let mut h = 0i64;
    for step in 0..nk {
        let l = (origin - 1 + step) % nk + 1;
        h += if up[l as usize] { 1 } else { -1 };
        heights[l as usize] = h;
    }
    Ok(HeightProfile { origin, heights })
}

/// Result of peeling: the extracted stars and the labels left over.
struct Peeled {
    stars: Vec<Vec<Label>>,
    leftover: Vec<Label>,
    unmatched_ups: usize,
}

/// Peels innermost stars in one linear pass plus one pass over the labels
/// that were skipped, which is where a star wrapping past `nk` finishes.
fn peel(nk: u32, k: u32, up: &[bool]) -> Peeled {
    let k = k as usize;
    let mut stars = Vec::new();
    // Open stars nest, so the top one always owns the tail of `buf`.
    let mut open: Vec<usize> = Vec::new();
    let mut buf: Vec<Label> = Vec::new();
    let mut skipped = Vec::new();
    let mut push_down = |label: Label, open: &mut Vec<usize>, buf: &mut Vec<Label>| -> bool {
        let Some(&start) = open.last() else { return false };
        buf.push(label);
        if buf.len() - start == k {
            stars.push(buf.split_off(start));
            open.pop();
        }
        true
    };
    for label in 1..=nk {
        if up[label as usize] {
            open.push(buf.len());
            buf.push(label);
        } else if !push_down(label, &mut open, &mut buf) {
            skipped.push(label);
        }
    }
    let mut leftover = Vec::new();
    for label in skipped {
        if !push_down(label, &mut open, &mut buf) {
            leftover.push(label);
        }
    }
    Peeled {
        stars,
        leftover,
        unmatched_ups: open.len(),
    }
}

fn check_code(code: &SubsetCode, n: u32, k: u32, size: u32) -> Result<()> {
    if n < 1 || k < 2 {
        return Err(Error::Domain(format!("need n >= 1 and k >= 2, got n={n}, k={k}")));
    }
    if code.nk != n * k {
        return Err(Error::InvalidCode(format!(
            "code lives on {} labels but n*k = {}",
            code.nk,
            n * k
        )));
    }
    if code.len() != size as usize {
        return Err(Error::InvalidCode(format!(
            "expected {size} members, found {}",
            code.len()
        )));
    }
    Ok(())
}

/// Decodes an `n`-element up-set into a diagram by peeling innermost stars.
pub fn psi(code: &SubsetCode, n: u32, k: u32) -> Result<Diagram> {
    check_code(code, n, k, n)?;
    let peeled = peel(code.nk, k, &code.up_flags());
    if !peeled.leftover.is_empty() || peeled.unmatched_ups != 0 {
        return Err(Error::NotPeelable {
            nk: code.nk,
            members: code.members.clone(),
        });
    }
    Ok(Diagram::from_stars_unchecked(n, k, peeled.stars))
}

/// The label `m` such that `theta(F) = psi(F ∪ {m})`: the smallest of the
/// `k` labels left after peeling `F`.
pub fn theta_completion(code: &SubsetCode, n: u32, k: u32) -> Result<Label> {
    check_code(code, n, k, n - 1)?;
    let peeled = peel(code.nk, k, &code.up_flags());
    finish_theta(code, n, k, peeled).map(|(m, _)| m)
}

fn finish_theta(code: &SubsetCode, n: u32, k: u32, mut peeled: Peeled) -> Result<(Label, Diagram)> {
    if peeled.unmatched_ups != 0 || peeled.leftover.len() != k as usize {
        return Err(Error::InternalInvariantBroken(format!(
            "peeling {code} left {} labels and {} open stars",
            peeled.leftover.len(),
            peeled.unmatched_ups
        )));
    }
    let m = peeled.leftover[0];
    peeled.stars.push(peeled.leftover);
    Ok((m, Diagram::from_stars_unchecked(n, k, peeled.stars)))
}

/// Decodes an `(n-1)`-element subset into a diagram: peel, then the `k`
/// remaining labels form the last star. Total on all `(n-1)`-subsets.
pub fn theta(code: &SubsetCode, n: u32, k: u32) -> Result<Diagram> {
    check_code(code, n, k, n - 1)?;
    let peeled = peel(code.nk, k, &code.up_flags());
    finish_theta(code, n, k, peeled).map(|(_, d)| d)
}

/// For a star `t` (sorted) and a label `x` outside it, the leg of `t` that
/// follows the cyclic gap containing `x`.
fn leg_after_gap(t: &[Label], x: Label) -> Label {
    t[t.partition_point(|&y| y < x) % t.len()]
}

/// All `(n-1)`-subsets that `theta` maps to `d`.
///
/// Dropping star `S`, every other star contributes the leg that follows the
/// gap containing `S`. Each candidate is re-checked with [`theta`].
pub fn theta_fibers(d: &Diagram) -> Result<BTreeSet<SubsetCode>> {
    let mut fiber = BTreeSet::new();
    for (dropped, s) in d.stars().enumerate() {
        let members = d
            .stars()
            .enumerate()
            .filter(|&(i, _)| i != dropped)
            .map(|(_, t)| leg_after_gap(t, s[0]))
            .collect();
        let code = SubsetCode::new(d.nk(), members)?;
        if theta(&code, d.n, d.k)? == *d {
            fiber.insert(code);
        }
    }
    if fiber.len() != d.n as usize {
        return Err(Error::InternalInvariantBroken(format!(
            "fiber of {d} has {} elements, expected {}",
            fiber.len(),
            d.n
        )));
    }
    Ok(fiber)
}

/// First leg of every star when the boundary is read from `start` onwards.
pub fn first_legs_from(d: &Diagram, start: Label) -> SubsetCode {
    let members = d
        .stars()
        .map(|s| s.iter().copied().find(|&l| l >= start).unwrap_or(s[0]))
        .collect();
    SubsetCode::new(d.nk(), members).expect("one leg per star")
}

/// Where the disc is cut open: the label read first.
///
/// Reading starts right after the last (by starting label) star whose legs
/// are cyclically consecutive, and the cut is then moved to just before the
/// smallest first-leg label seen from there.
pub fn canonical_cut(d: &Diagram) -> Label {
    let nk = d.nk();
    let k = d.k;
    let mut best_start: Option<Label> = None;
    for s in d.stars() {
        let mut big_gaps = 0;
        let mut start = s[0];
        for i in 0..s.len() {
            let next = s[(i + 1) % s.len()];
            let gap = (next + nk - s[i] - 1) % nk;
            if gap > 0 {
                big_gaps += 1;
                start = next;
            }
        }
        if big_gaps <= 1 {
            best_start = Some(best_start.map_or(start, |b: Label| b.max(start)));
        }
    }
    let start = best_start.expect("every diagram has an innermost star");
    let read_from = (start - 1 + k) % nk + 1;
    first_legs_from(d, read_from).members[0]
}

/// The up-set read off the cut-open diagram: the first leg of every star
/// after the canonical cut. `psi` of it returns `d`.
pub fn canonical_code(d: &Diagram) -> SubsetCode {
    first_legs_from(d, canonical_cut(d))
}

struct Enumerator<'a, F> {
    k: u32,
    labels: Vec<Label>,
    // Pending intervals, rightmost first, so the leftmost is at the end.
    pending: Vec<(Label, Label)>,
    legs: Vec<Label>,
    emit: &'a mut F,
    n: u32,
}

impl<F: FnMut(&Diagram) -> ControlFlow<()>> Enumerator<'_, F> {
    fn run(&mut self) -> ControlFlow<()> {
        let Some((lo, hi)) = self.pending.pop() else {
            let d = Diagram {
                n: self.n,
                k: self.k,
                labels: self.labels.clone(),
            };
            return (self.emit)(&d);
        };
        self.legs.push(lo);
        let r = self.place_leg(hi);
        self.legs.pop();
        self.pending.push((lo, hi));
        r
    }

    /// Chooses the next leg of the star opened at `legs[0]`, trying labels
    /// in increasing order.
    fn place_leg(&mut self, hi: Label) -> ControlFlow<()> {
        let k = self.k;
        let placed = self.legs.len() as u32;
        let prev = *self.legs.last().unwrap();
        if placed == k {
            if !(hi - prev).is_multiple_of(k) {
                return ControlFlow::Continue(());
            }
            let depth = self.pending.len();
            if hi > prev {
                self.pending.push((prev + 1, hi));
            }
            for w in self.legs.windows(2).rev() {
                if w[1] > w[0] + 1 {
                    self.pending.push((w[0] + 1, w[1] - 1));
                }
            }
            self.labels.extend_from_slice(&self.legs);
            let block = std::mem::take(&mut self.legs);
            let r = self.run();
            self.legs = block;
            self.labels.truncate(self.labels.len() - k as usize);
            self.pending.truncate(depth);
            return r;
        }
        let still_needed = k - placed;
        let mut next = prev + 1;
        while next + still_needed - 1 <= hi {
            self.legs.push(next);
            let r = self.place_leg(hi);
            self.legs.pop();
            r?;
            next += k;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every (n,k) diagram once, in ascending canonical order, until the
/// callback breaks.
pub fn for_each_diagram<F>(n: u32, k: u32, mut f: F) -> Result<()>
where
    F: FnMut(&Diagram) -> ControlFlow<()>,
{
    if n < 1 || k < 2 {
        return Err(Error::Domain(format!("need n >= 1 and k >= 2, got n={n}, k={k}")));
    }
    let mut e = Enumerator {
        k,
        labels: Vec::with_capacity((n * k) as usize),
        pending: vec![(1, n * k)],
        legs: Vec::with_capacity(k as usize),
        emit: &mut f,
        n,
    };
    let _ = e.run();
    Ok(())
}

/// Fails with [`Error::CapExceeded`] when `catalan_nk(n, k)` is above `cap`.
pub fn check_cap(n: u32, k: u32, cap: u64) -> Result<u64> {
    let count = catalan_nk(n as u64, k as u64)?;
    match count.to_u64() {
        Some(c) if c <= cap => Ok(c),
        _ => Err(Error::CapExceeded {
            count: count.into_inner(),
            cap,
        }),
    }
}

/// All (n,k) diagrams in ascending canonical order.
pub fn enumerate_diagrams(n: u32, k: u32, cap: u64) -> Result<Vec<Diagram>> {
    let count = check_cap(n, k, cap)?;
    let mut out = Vec::with_capacity(count as usize);
    for_each_diagram(n, k, |d| {
        out.push(d.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The (6,3) diagram used as the worked example throughout the tests.
pub fn example_diagram() -> Diagram {
    Diagram::new(
        6,
        3,
        vec![
            vec![1, 2, 18],
            vec![3, 13, 17],
            vec![4, 5, 6],
            vec![7, 8, 12],
            vec![9, 10, 11],
            vec![14, 15, 16],
        ],
    )
    .expect("valid fixture")
}
