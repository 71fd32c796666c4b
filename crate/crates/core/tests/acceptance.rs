//! Acceptance suite. Runs without the libtest harness and prints one
//! `PASS`/`FAIL` line per criterion; the process fails if any criterion does.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fusscat_core::diagrams::example_diagram;
use fusscat_core::dissections::enumerate_dissections;
use fusscat_core::io::{decode, encode, encode_diagram, encode_tree};
use fusscat_core::render::{render, RenderOptions};
use fusscat_core::sampling::uniformity_report;
use fusscat_core::trees::word_table;
use fusscat_core::verify::fiber_census;
use fusscat_core::{
    catalan_nk, check_convolution, diagram_to_tree, diagram_to_tree_at, dissection_to_tree, enumerate_diagrams,
    enumerate_trees, gould_a, psi, theta, tree_to_diagram, tree_to_dissection, Diagram, Kind, Object, Sampler,
    SamplerConfig, SubsetCode,
};
use num_rational::BigRational;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const CAP: u64 = 10_000_000;

/// (n, k) points for counting; each k has its own bound on n.
fn grid() -> Vec<(u32, u32)> {
    let mut g = Vec::new();
    for (k, max_n) in [(2, 8), (3, 5), (4, 4), (5, 3)] {
        for n in 1..=max_n {
            g.push((n, k));
        }
    }
    g
}

const FIBER_POINTS: [(u32, u32); 8] = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (2, 4), (3, 4)];

const EXAMPLE_DIAGRAM_JSON: &str =
    r#"{"k":3,"n":6,"stars":[[1,2,18],[3,13,17],[4,5,6],[7,8,12],[9,10,11],[14,15,16]]}"#;
const EXAMPLE_TREE_JSON: &str = "[[[],[],[[],[[],[],[]],[]]],[[],[],[]],[[],[],[]]]";
const EXAMPLE_TREE_WORDS: [&str; 18] = [
    "a", "aa", "ab", "ac", "aca", "acb", "acba", "acbb", "acbc", "acc", "b", "ba", "bb", "bc", "c", "ca", "cb", "cc",
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: fusscat_core::Error) -> String {
    e.to_string()
}

fn criterion_1() -> Check {
    let mut slowest = Duration::ZERO;
    for (n, k) in grid() {
        let start = Instant::now();
        let formula = catalan_nk(n as u64, k as u64).map_err(err)?;
        let diagrams = enumerate_diagrams(n, k, CAP).map_err(err)?.len();
        let trees = enumerate_trees(n, k, CAP).map_err(err)?.len();
        ensure(formula == diagrams as u64 && formula == trees as u64, || {
            format!("({n},{k}): formula {formula}, {diagrams} diagrams, {trees} trees")
        })?;
        let took = start.elapsed();
        ensure(took < Duration::from_secs(10), || format!("({n},{k}) took {took:?}"))?;
        slowest = slowest.max(took);
    }
    for (n, k, expected) in [(4, 2, 14u64), (5, 3, 273)] {
        let c = catalan_nk(n, k).map_err(err)?;
        ensure(c == expected, || format!("C({n},{k}) = {c}, expected {expected}"))?;
    }
    let c63 = catalan_nk(6, 3).map_err(err)?;
    let t63 = enumerate_trees(6, 3, CAP).map_err(err)?.len();
    ensure(c63 == 1428 && t63 == 1428, || {
        format!("C(6,3): formula {c63}, trees {t63}")
    })?;
    Ok(format!(
        "{} grid points, C(6,3) = 1428 by trees, slowest {slowest:.1?}",
        grid().len()
    ))
}

fn fiber_law() -> Check {
    let mut subsets = 0u64;
    for (n, k) in FIBER_POINTS {
        let census = fiber_census(n, k).map_err(err)?;
        let formula = catalan_nk(n as u64, k as u64).map_err(err)?;
        ensure(formula == census.len() as u64, || {
            format!("({n},{k}): {} distinct images, formula {formula}", census.len())
        })?;
        if let Some((d, size)) = census.iter().find(|(_, &s)| s != n as u64) {
            return Err(format!("({n},{k}): fiber of {d} has {size} elements"));
        }
        let images: BTreeSet<&Diagram> = census.keys().collect();
        let enumerated = enumerate_diagrams(n, k, CAP).map_err(err)?;
        ensure(images == enumerated.iter().collect(), || {
            format!("({n},{k}): images differ from enumeration")
        })?;
        subsets += census.values().sum::<u64>();
    }
    Ok(format!(
        "{} points, {subsets} subsets, every fiber of size n",
        FIBER_POINTS.len()
    ))
}

fn criterion_2() -> Check {
    fiber_law()
}

fn code(nk: u32, members: &[u32]) -> Result<SubsetCode, String> {
    SubsetCode::new(nk, members.to_vec()).map_err(err)
}

fn criterion_3() -> Check {
    let example = example_diagram();
    ensure(encode_diagram(&example) == EXAMPLE_DIAGRAM_JSON, || {
        format!("fixture encodes as {}", encode_diagram(&example))
    })?;
    for members in [[3, 4, 7, 9, 14, 18], [4, 7, 9, 13, 14, 18]] {
        let d = psi(&code(18, &members)?, 6, 3).map_err(err)?;
        let got = encode_diagram(&d);
        ensure(got == EXAMPLE_DIAGRAM_JSON, || format!("psi({members:?}) = {got}"))?;
    }
    for members in [[3, 4, 7, 9, 14], [4, 7, 9, 14, 18]] {
        let d = theta(&code(18, &members)?, 6, 3).map_err(err)?;
        let got = encode_diagram(&d);
        ensure(got == EXAMPLE_DIAGRAM_JSON, || format!("theta({members:?}) = {got}"))?;
    }
    let (tree, offset) = diagram_to_tree(&example).map_err(err)?;
    let got = encode_tree(&tree);
    ensure(got == EXAMPLE_TREE_JSON, || format!("tree of the fixture is {got}"))?;
    let words: Vec<String> = word_table(&tree).iter().map(|(w, _)| w.to_string()).collect();
    ensure(words == EXAMPLE_TREE_WORDS, || format!("word table {words:?}"))?;
    let back = tree_to_diagram(&tree, offset).map_err(err)?;
    ensure(encode_diagram(&back) == EXAMPLE_DIAGRAM_JSON, || {
        "tree does not map back to the fixture".into()
    })?;
    Ok(format!(
        "psi x2, theta x2, tree and 18-word table byte-exact (offset {offset})"
    ))
}

fn criterion_4() -> Check {
    let mut points = 0;
    for (n, k) in grid().into_iter().filter(|&(n, _)| n <= 5) {
        let sides = n * (k - 1) + 2;
        let got = enumerate_dissections(sides, k, CAP).map_err(err)?.len();
        let formula = catalan_nk(n as u64, k as u64).map_err(err)?;
        ensure(formula == got as u64, || {
            format!("{sides}-gon into {}-gons: {got}, formula {formula}", k + 1)
        })?;
        points += 1;
    }
    let pentagon = enumerate_dissections(5, 2, CAP).map_err(err)?.len();
    let hexagon = enumerate_dissections(6, 3, CAP).map_err(err)?.len();
    ensure(pentagon == 5 && hexagon == 3, || {
        format!("pentagon {pentagon}, hexagon {hexagon}")
    })?;

    let mut objects = 0usize;
    for k in 2..=3 {
        for n in 1..=4 {
            for t in enumerate_trees(n, k, CAP).map_err(err)? {
                let p = tree_to_dissection(&t).map_err(err)?;
                ensure(dissection_to_tree(&p).as_ref() == Ok(&t), || {
                    format!("tree {} via dissection", encode_tree(&t))
                })?;
                let d = tree_to_diagram(&t, 0).map_err(err)?;
                ensure(diagram_to_tree_at(&d, 1).as_ref() == Ok(&t), || {
                    format!("tree {} via diagram", encode_tree(&t))
                })?;
                objects += 1;
            }
            for p in enumerate_dissections(n * (k - 1) + 2, k, CAP).map_err(err)? {
                let back = dissection_to_tree(&p).and_then(|t| tree_to_dissection(&t));
                ensure(back.as_ref() == Ok(&p), || {
                    format!("dissection {:?} via tree", p.faces())
                })?;
                objects += 1;
            }
            for d in enumerate_diagrams(n, k, CAP).map_err(err)? {
                let (t, offset) = diagram_to_tree(&d).map_err(err)?;
                ensure(tree_to_diagram(&t, offset).as_ref() == Ok(&d), || {
                    format!("diagram {d} via tree")
                })?;
                objects += 1;
            }
        }
    }
    Ok(format!(
        "{points} polygon sizes, pentagon 5, hexagon 3, {objects} round trips"
    ))
}

/// `binomial(2n, n) / (n + 1)` from a Pascal triangle in machine integers.
fn pascal_catalan(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..2 * n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[n] / (n as u128 + 1)
}

fn criterion_5() -> Check {
    for (n, k) in grid() {
        let a = gould_a(n as u64, 1, k as i64).map_err(err)?;
        let c = catalan_nk(n as u64, k as u64).map_err(err)?;
        ensure(a == BigRational::from_integer(c.value().clone().into()), || {
            format!("A_{n}(1,{k}) = {a}, C = {c}")
        })?;
    }
    let mut identities = 0;
    for n in 0..=6u64 {
        for a in 1..=4i64 {
            for c in 1..=4i64 {
                for b in 0..=4i64 {
                    let r = check_convolution(n, a, b, c).map_err(err)?;
                    ensure(r.equal, || format!("n={n} a={a} b={b} c={c}: {} vs {}", r.lhs, r.rhs))?;
                    identities += 1;
                }
            }
        }
    }
    for n in 1..=10 {
        let c = catalan_nk(n as u64, 2).map_err(err)?;
        let expected = pascal_catalan(n);
        ensure(c == expected as u64, || format!("C({n},2) = {c}, expected {expected}"))?;
    }
    Ok(format!(
        "{} Gould points, {identities} convolutions, Catalan n <= 10",
        grid().len()
    ))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let structural = fiber_law()?;
    let cfg = SamplerConfig {
        n: 3,
        k: 2,
        seed: 20240601,
    };
    let report = uniformity_report(cfg, 50_000, CAP).map_err(err)?;
    ensure(report.classes.len() == 5, || {
        format!("{} classes", report.classes.len())
    })?;
    ensure(report.chi_square < 18.47, || {
        format!("chi-square {:.3} with counts {:?}", report.chi_square, report.counts)
    })?;
    let stream = |seed| -> Vec<String> {
        Sampler::new(SamplerConfig { n: 7, k: 3, seed })
            .unwrap()
            .take(200)
            .map(|d| encode_diagram(&d))
            .collect()
    };
    ensure(stream(11) == stream(11), || "same seed, different output".into())?;
    ensure(stream(11) != stream(12), || "different seeds, same output".into())?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(5), || format!("took {took:?}"))?;
    Ok(format!(
        "{structural}; chi-square {:.3} < 18.47; seeded output reproducible; {took:.1?}",
        report.chi_square
    ))
}

fn svg_counts(svg: &str) -> Result<HashMap<String, usize>, String> {
    let doc = roxmltree::Document::parse(svg).map_err(|e| e.to_string())?;
    let mut m = HashMap::new();
    for node in doc.descendants() {
        if let Some(c) = node.attribute("class") {
            *m.entry(c.to_string()).or_insert(0) += 1;
        }
    }
    Ok(m)
}

fn expected_counts(obj: &Object) -> Vec<(&'static str, usize)> {
    match obj {
        Object::Diagram(d) => {
            let (n, nk) = (d.n() as usize, d.nk() as usize);
            vec![
                ("boundary", 1),
                ("point", nk),
                ("leg", nk),
                ("center", n),
                ("label", nk),
            ]
        }
        Object::Tree(t) => {
            let (n, k) = (t.internal_count() as usize, t.k() as usize);
            vec![
                ("edge", n * k),
                ("internal", n),
                ("leaf", n * (k - 1) + 1),
                ("label", n * k),
            ]
        }
        Object::Dissection(p) => {
            let (n, sides) = (p.n() as usize, p.sides() as usize);
            vec![("outline", 1), ("vertex", sides), ("diagonal", n - 1), ("label", sides)]
        }
    }
}

fn criterion_7() -> Check {
    let mut objects = Vec::new();
    for k in 2..=5 {
        for n in 1..=3 {
            objects.extend(
                enumerate_diagrams(n, k, CAP)
                    .map_err(err)?
                    .into_iter()
                    .map(Object::Diagram),
            );
            objects.extend(enumerate_trees(n, k, CAP).map_err(err)?.into_iter().map(Object::Tree));
            let sides = n * (k - 1) + 2;
            objects.extend(
                enumerate_dissections(sides, k, CAP)
                    .map_err(err)?
                    .into_iter()
                    .map(Object::Dissection),
            );
        }
    }
    let opts = RenderOptions::default();
    for obj in &objects {
        let text = encode(obj);
        let back = decode(&text, obj.kind()).map_err(err)?;
        ensure(&back == obj, || format!("{text} does not decode to itself"))?;
        ensure(encode(&back) == text, || format!("{text} re-encodes differently"))?;
        let svg = render(obj, &opts).map_err(err)?;
        let counts = svg_counts(&svg).map_err(|e| format!("{text}: {e}"))?;
        for (class, want) in expected_counts(obj) {
            let got = counts.get(class).copied().unwrap_or(0);
            ensure(got == want, || {
                format!("{text}: {got} {class} elements, expected {want}")
            })?;
        }
    }
    let crossing = decode(r#"{"k":3,"n":2,"stars":[[1,2,4],[3,5,6]]}"#, Kind::Diagram);
    ensure(matches!(crossing, Err(fusscat_core::Error::Validation(_))), || {
        format!("crossing decoded as {crossing:?}")
    })?;
    let truncated = decode(r#"{"k":3,"n":2,"st"#, Kind::Diagram);
    ensure(matches!(truncated, Err(fusscat_core::Error::Parse(_))), || {
        format!("truncated decoded as {truncated:?}")
    })?;
    Ok(format!("{} objects round-tripped and rendered", objects.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("formula matches diagram and tree enumeration", criterion_1),
        ("theta is n-to-1 onto all diagrams", criterion_2),
        ("worked example fixtures", criterion_3),
        ("dissection counts and bijection round trips", criterion_4),
        ("counting identities", criterion_5),
        ("sampler uniformity and reproducibility", criterion_6),
        ("serialization and rendering", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{:.2?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
