use std::io::{self, BufRead, BufWriter, Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use fusscat_core::counting::format_rational;
use fusscat_core::diagrams::check_cap;
use fusscat_core::io::{decode_located, encode_diagram, encode_dissection, encode_located, encode_tree};
use fusscat_core::sampling::ALGORITHM;
use fusscat_core::{
    catalan_nk, check_convolution, diagram_to_tree, dissection_to_tree, for_each_diagram, for_each_dissection,
    for_each_tree, gould_a, render, tree_to_diagram, tree_to_dissection, verify_point, Error, Kind, Located, Object,
    RenderOptions, Sampler, SamplerConfig, DEFAULT_CAP,
};

/// Generalized Catalan combinatorics: star diagrams, k-ary trees and
/// polygon dissections.
#[derive(Parser, Debug)]
#[command(name = "fusscat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Diagram,
    Tree,
    Dissection,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Diagram => Kind::Diagram,
            KindArg::Tree => Kind::Tree,
            KindArg::Dissection => Kind::Dissection,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print C(n,k) = binomial(kn, n-1)/n, or a table of them.
    Count {
        #[arg(long, required_unless_present = "table")]
        n: Option<u32>,
        #[arg(long, required_unless_present = "table")]
        k: Option<u32>,
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 10, requires = "table")]
        max_n: u32,
        #[arg(long, default_value_t = 5, requires = "table")]
        max_k: u32,
    },
    /// Print Gould's A_n(a,b), optionally checking the convolution identity.
    Gould {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, requires = "c")]
        check_convolution: bool,
        #[arg(long, allow_hyphen_values = true, requires = "check_convolution")]
        c: Option<i64>,
    },
    /// Stream every object of one family as canonical JSON lines.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long = "as", value_enum)]
        kind: KindArg,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Convert JSON lines on stdin between families.
    Convert {
        #[arg(long, value_enum)]
        from: KindArg,
        #[arg(long, value_enum)]
        to: KindArg,
    },
    /// Draw uniformly random diagrams.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check counts, the fiber law and all round trips at one (n,k).
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1_000_000)]
        max_subsets: u64,
    },
    /// Render one JSON object from stdin as SVG.
    Render {
        #[arg(long = "as", value_enum)]
        kind: KindArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 400.0)]
        width: f64,
        #[arg(long, default_value_t = 400.0)]
        height: f64,
        #[arg(long)]
        no_labels: bool,
    },
}

fn cap_from_env() -> Result<u64, String> {
    match std::env::var("FUSSCAT_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("FUSSCAT_CAP must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn count(
    out: &mut impl Write,
    n: Option<u32>,
    k: Option<u32>,
    table: bool,
    max_n: u32,
    max_k: u32,
) -> anyhow::Result<()> {
    if !table {
        let (n, k) = (n.unwrap_or(0), k.unwrap_or(0));
        writeln!(out, "{}", catalan_nk(n as u64, k as u64)?)?;
        return Ok(());
    }
    if max_n < 1 || max_k < 2 {
        bail!(Error::Domain("table needs --max-n >= 1 and --max-k >= 2".into()));
    }
    write!(out, "k\\n")?;
    for n in 1..=max_n {
        write!(out, "\t{n}")?;
    }
    writeln!(out)?;
    for k in 2..=max_k {
        write!(out, "{k}")?;
        for n in 1..=max_n {
            write!(out, "\t{}", catalan_nk(n as u64, k as u64)?)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn gould(out: &mut impl Write, n: u64, a: i64, b: i64, c: Option<i64>) -> anyhow::Result<bool> {
    let Some(c) = c else {
        writeln!(out, "{}", format_rational(&gould_a(n, a, b)?))?;
        return Ok(true);
    };
    let r = check_convolution(n, a, b, c)?;
    writeln!(
        out,
        "sum_j A_j({a},{b}) A_({n}-j)({c},{b}) = {}\nA_{n}({},{b}) = {}\n{}",
        format_rational(&r.lhs),
        a + c,
        format_rational(&r.rhs),
        if r.equal { "equal" } else { "NOT equal" }
    )?;
    Ok(r.equal)
}

fn enumerate(out: &mut impl Write, n: u32, k: u32, kind: Kind, limit: Option<u64>, cap: u64) -> anyhow::Result<()> {
    if let Err(e) = check_cap(n, k, cap) {
        let within = matches!(e, Error::CapExceeded { .. }) && limit.is_some_and(|l| l <= cap);
        if !within {
            bail!(e);
        }
    }
    let limit = limit.unwrap_or(u64::MAX);
    let mut written = 0u64;
    let mut failure: Option<io::Error> = None;
    let mut emit = |line: String| {
        if written >= limit {
            return ControlFlow::Break(());
        }
        if let Err(e) = writeln!(out, "{line}") {
            failure = Some(e);
            return ControlFlow::Break(());
        }
        written += 1;
        ControlFlow::Continue(())
    };
    match kind {
        Kind::Diagram => for_each_diagram(n, k, |d| emit(encode_diagram(d)))?,
        Kind::Tree => for_each_tree(n, k, |t| emit(encode_tree(t)))?,
        Kind::Dissection => for_each_dissection(n * (k - 1) + 2, k, |p| emit(encode_dissection(p)))?,
    }
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn convert_one(x: Located, to: Kind) -> fusscat_core::Result<Located> {
    let Located { object, offset } = x;
    let object = match (object, to) {
        (o, to) if o.kind() == to => o,
        (Object::Diagram(d), to) => {
            let (t, offset) = diagram_to_tree(&d)?;
            let object = match to {
                Kind::Tree => Object::Tree(t),
                _ => Object::Dissection(tree_to_dissection(&t)?),
            };
            return Ok(Located { object, offset });
        }
        (Object::Tree(t), Kind::Diagram) => Object::Diagram(tree_to_diagram(&t, offset)?),
        (Object::Tree(t), _) => Object::Dissection(tree_to_dissection(&t)?),
        (Object::Dissection(p), Kind::Diagram) => Object::Diagram(tree_to_diagram(&dissection_to_tree(&p)?, offset)?),
        (Object::Dissection(p), _) => Object::Tree(dissection_to_tree(&p)?),
    };
    Ok(Located { object, offset })
}

fn convert(input: impl BufRead, out: &mut impl Write, from: Kind, to: Kind) -> anyhow::Result<()> {
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let converted = decode_located(&line, from)
            .and_then(|x| convert_one(x, to))
            .with_context(|| format!("line {}", i + 1))?;
        writeln!(out, "{}", encode_located(&converted))?;
    }
    Ok(())
}

fn sample(out: &mut impl Write, cfg: SamplerConfig, count: u64) -> anyhow::Result<()> {
    let sampler = Sampler::new(cfg)?;
    let header = serde_json::json!({ "algorithm": ALGORITHM, "k": cfg.k, "n": cfg.n, "seed": cfg.seed });
    writeln!(out, "{header}")?;
    for d in sampler.take(count as usize) {
        writeln!(out, "{}", encode_diagram(&d))?;
    }
    Ok(())
}

fn run(command: Command, cap: u64) -> anyhow::Result<bool> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let ok = match command {
        Command::Count {
            n,
            k,
            table,
            max_n,
            max_k,
        } => count(&mut out, n, k, table, max_n, max_k).map(|_| true)?,
        Command::Gould { n, a, b, c, .. } => gould(&mut out, n, a, b, c)?,
        Command::Enumerate { n, k, kind, limit } => enumerate(&mut out, n, k, kind.into(), limit, cap).map(|_| true)?,
        Command::Convert { from, to } => convert(io::stdin().lock(), &mut out, from.into(), to.into()).map(|_| true)?,
        Command::Sample { n, k, count, seed } => sample(&mut out, SamplerConfig { n, k, seed }, count).map(|_| true)?,
        Command::Verify { n, k, max_subsets } => {
            let report = verify_point(n, k, max_subsets, cap)?;
            writeln!(out, "{report}")?;
            report.is_ok()
        }
        Command::Render {
            kind,
            out: path,
            width,
            height,
            no_labels,
        } => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            let kind: Kind = kind.into();
            let object = decode_located(text.trim(), kind)?.object;
            let opts = RenderOptions {
                width,
                height,
                labels: !no_labels,
                kind: Some(kind),
            };
            let svg = render(&object, &opts)?;
            std::fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))?;
            true
        }
    };
    out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match cap_from_env() {
        Ok(cap) => cap,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, cap) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
