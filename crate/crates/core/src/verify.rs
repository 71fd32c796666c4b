//! Exhaustive agreement checks at a single `(n, k)`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::counting::{binomial, catalan_nk, BigCount};
use crate::diagrams::{canonical_code, enumerate_diagrams, psi, theta, validate_diagram, Diagram, SubsetCode};
use crate::dissections::{dissection_to_tree, enumerate_dissections, tree_to_dissection};
use crate::error::Result;
use crate::trees::{diagram_to_tree, diagram_to_tree_at, enumerate_trees, tree_to_diagram};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberCheck {
    Checked {
        subsets: u64,
        classes: u64,
        min: u64,
        max: u64,
    },
    Skipped {
        subsets: BigCount,
    },
}

impl FiberCheck {
    fn holds(&self, n: u32, formula: &BigCount) -> bool {
        match self {
            FiberCheck::Checked { classes, min, max, .. } => formula == classes && *min == n as u64 && *max == n as u64,
            FiberCheck::Skipped { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: u32,
    pub k: u32,
    pub formula: BigCount,
    pub diagrams: u64,
    pub trees: u64,
    pub dissections: u64,
    pub fibers: FiberCheck,
    /// Human-readable descriptions of every failed check.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts_agree =
            self.formula == self.diagrams && self.formula == self.trees && self.formula == self.dissections;
        writeln!(
            f,
            "counts ({},{}): {} diagrams {} {} trees {} {} dissections {} formula {}",
            self.n,
            self.k,
            self.diagrams,
            if counts_agree { "=" } else { "vs" },
            self.trees,
            if counts_agree { "=" } else { "vs" },
            self.dissections,
            if counts_agree { "=" } else { "vs" },
            self.formula
        )?;
        match &self.fibers {
            FiberCheck::Checked {
                subsets,
                classes,
                min,
                max,
            } if min == max => writeln!(f, "fibers: {subsets} subsets onto {classes} diagrams, {min}-to-1")?,
            FiberCheck::Checked {
                subsets,
                classes,
                min,
                max,
            } => writeln!(
                f,
                "fibers: {subsets} subsets onto {classes} diagrams, fiber sizes {min}..{max}"
            )?,
            FiberCheck::Skipped { subsets } => writeln!(f, "fibers: skipped ({subsets} subsets above the limit)")?,
        }
        if self.failures.is_empty() {
            write!(f, "round trips: ok")
        } else {
            write!(f, "FAILED:")?;
            for msg in &self.failures {
                write!(f, "\n  {msg}")?;
            }
            Ok(())
        }
    }
}

/// Maps every `(n-1)`-subset of `1..=nk` through [`theta`] and tallies the
/// fibers.
pub fn fiber_census(n: u32, k: u32) -> Result<HashMap<Diagram, u64>> {
    let nk = n * k;
    let mut census: HashMap<Diagram, u64> = HashMap::new();
    for members in (1..=nk).combinations((n - 1) as usize) {
        let d = theta(&SubsetCode::new(nk, members)?, n, k)?;
        *census.entry(d).or_insert(0) += 1;
    }
    Ok(census)
}

/// Runs every check at `(n, k)`. The fiber census is skipped when it would
/// visit more than `max_subsets` subsets; enumerations obey `cap`.
pub fn verify_point(n: u32, k: u32, max_subsets: u64, cap: u64) -> Result<VerifyReport> {
    let formula = catalan_nk(n as u64, k as u64)?;
    let diagrams = enumerate_diagrams(n, k, cap)?;
    let trees = enumerate_trees(n, k, cap)?;
    let sides = n * (k - 1) + 2;
    let dissections = enumerate_dissections(sides, k, cap)?;
    let mut failures = Vec::new();

    for (what, got) in [
        ("diagrams", diagrams.len()),
        ("trees", trees.len()),
        ("dissections", dissections.len()),
    ] {
        if formula != got as u64 {
            failures.push(format!("{got} {what}, formula says {formula}"));
        }
    }

    let subsets = binomial((n * k) as u64, (n - 1) as u64);
    let fibers = match subsets.to_u64().filter(|&s| s <= max_subsets) {
        Some(count) => {
            let census = fiber_census(n, k)?;
            FiberCheck::Checked {
                subsets: count,
                classes: census.len() as u64,
                min: census.values().copied().min().unwrap_or(0),
                max: census.values().copied().max().unwrap_or(0),
            }
        }
        None => FiberCheck::Skipped { subsets },
    };
    if !fibers.holds(n, &formula) {
        failures.push(format!("fiber law fails: {fibers:?}"));
    }

    let mut check = |ok: bool, msg: &dyn Fn() -> String| {
        if !ok && failures.len() < 20 {
            failures.push(msg());
        }
    };
    for d in &diagrams {
        check(validate_diagram(d).is_ok(), &|| format!("{d} does not validate"));
        check(psi(&canonical_code(d), n, k).as_ref() == Ok(d), &|| {
            format!("psi(canonical_code({d})) differs")
        });
        let (t, offset) = diagram_to_tree(d)?;
        check(tree_to_diagram(&t, offset).as_ref() == Ok(d), &|| {
            format!("diagram {d} does not survive a tree")
        });
    }
    for t in &trees {
        let d = tree_to_diagram(t, 0)?;
        check(diagram_to_tree_at(&d, 1).as_ref() == Ok(t), &|| {
            format!("tree via {d} changes")
        });
        let p = tree_to_dissection(t)?;
        check(dissection_to_tree(&p).as_ref() == Ok(t), &|| {
            format!("tree via dissection {:?} changes", p.faces())
        });
    }
    for p in &dissections {
        let back = dissection_to_tree(p).and_then(|t| tree_to_dissection(&t));
        check(back.as_ref() == Ok(p), &|| {
            format!("dissection {:?} changes via its tree", p.faces())
        });
    }

    Ok(VerifyReport {
        n,
        k,
        formula,
        diagrams: diagrams.len() as u64,
        trees: trees.len() as u64,
        dissections: dissections.len() as u64,
        fibers,
        failures,
    })
}
