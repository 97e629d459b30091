//! `qprod`: quantum graph products, coloring certificates and exact
//! classical oracles from the command line.
//!
//! Exit codes: 0 success, 1 verification failure or violated inequality,
//! 2 usage or format error, 3 instance above a solver size guard.

mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qprod::bounds::bounds_report;
use qprod::classical::{bfold_exact, chromatic_exact, kneser_hom_check, to_local_cert};
use qprod::coloring::{
    bell_coloring, categorical_lift, combine_bfold, complete_lower_bound_extract,
    hedetniemi_witness, lexicographic_coloring, reduce_bfold, sabidussi_witness, scale_bfold,
    strong_coloring, verify_bfold, verify_coloring, verify_homomorphism, Constructed, Factor,
};
use qprod::format::{cert_to_json, classical_to_json, graph_to_json, hom_to_json};
use qprod::products::{classical_crosscheck, product, LEXICOGRAPHIC_NOTICE};
use qprod::{CheckReport, ColoringCertificate, ProductKind, QuantumGraph};

#[derive(Parser)]
#[command(name = "qprod", version, about = "Quantum graph products and coloring certificates")]
#[command(after_help = input::SPEC_HELP)]
struct Cli {
    /// Residual tolerance for every check
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quantum graph axioms
    VerifyGraph { graph: String },
    /// Build a product of two quantum graphs
    Product {
        #[arg(long, value_enum)]
        kind: Kind,
        g: String,
        h: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Also compare against the classical product (classical inputs only)
        #[arg(long)]
        classical: bool,
    },
    /// Write a graph as a JSON document
    Export {
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit a classical graph document (or DIMACS with --dimacs)
        #[arg(long)]
        classical: bool,
        #[arg(long, requires = "classical")]
        dimacs: bool,
    },
    #[command(subcommand)]
    Color(ColorCommand),
    #[command(subcommand)]
    Hom(HomCommand),
    #[command(subcommand)]
    Classical(ClassicalCommand),
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cartesian,
    Categorical,
    Lexicographic,
    Strong,
}

impl From<Kind> for ProductKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cartesian => ProductKind::Cartesian,
            Kind::Categorical => ProductKind::Categorical,
            Kind::Lexicographic => ProductKind::Lexicographic,
            Kind::Strong => ProductKind::Strong,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Loc,
    Q,
    Qa,
    Qc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    First,
    Second,
}

impl From<Side> for Factor {
    fn from(s: Side) -> Self {
        match s {
            Side::First => Factor::First,
            Side::Second => Factor::Second,
        }
    }
}

#[derive(Subcommand)]
enum ColorCommand {
    /// Verify a coloring certificate
    Verify {
        graph: String,
        cert: String,
        /// Use the b-fold conditions with the certificate's fold
        #[arg(long)]
        bfold: bool,
        /// Strategy class the certificate is meant to witness
        #[arg(long, value_enum)]
        model: Option<Model>,
    },
    #[command(subcommand)]
    Transform(Transform),
    /// Bell-basis coloring of the complete quantum graph over M_n
    Bell {
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Optimal local certificate of a classical graph from the exact solver
    Classical {
        graph: String,
        #[arg(long, default_value_t = 1)]
        fold: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Partial-trace lower-bound check on a complete quantum graph
    Extract {
        graph: String,
        cert: String,
        #[arg(long, default_value_t = 1e-8)]
        extract_tol: f64,
    },
}

#[derive(Args)]
struct Out {
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand)]
enum Transform {
    /// b-fold → (b−1)-fold by dropping each vertex's smallest color
    Reduce {
        graph: String,
        cert: String,
        #[command(flatten)]
        out: Out,
    },
    /// (b1, c) and (b2, d) → (b1+b2, c+d)
    Combine {
        graph: String,
        cert1: String,
        cert2: String,
        #[command(flatten)]
        out: Out,
    },
    /// c-coloring → b-fold (b·c)-coloring
    Scale {
        graph: String,
        cert: String,
        #[arg(long)]
        fold: usize,
        #[command(flatten)]
        out: Out,
    },
    /// b-fold coloring of G and b-coloring of H → coloring of G[H]
    Lex {
        g: String,
        h: String,
        cert_g: String,
        cert_h: String,
        #[command(flatten)]
        out: Out,
    },
    /// colorings of G and H → coloring of the strong (and Cartesian) product
    StrongLift {
        g: String,
        h: String,
        cert_g: String,
        cert_h: String,
        #[command(flatten)]
        out: Out,
    },
    /// coloring of G → coloring of G × H
    CatLift {
        g: String,
        cert_g: String,
        h: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum HomCommand {
    /// Verify a homomorphism certificate
    Verify { src: String, dst: String, cert: String },
    /// Witness for a factor into the Cartesian product
    Sabidussi {
        g: String,
        h: String,
        #[arg(long, value_enum, default_value = "first")]
        factor: Side,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Witness for the categorical product onto a factor
    Hedetniemi {
        g: String,
        h: String,
        #[arg(long, value_enum, default_value = "first")]
        factor: Side,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum ClassicalCommand {
    /// Chromatic number with an optimal coloring
    Chi { graph: String },
    /// b-fold chromatic number with an optimal assignment
    ChiB { graph: String, b: usize },
    /// Classical product graph
    Product {
        #[arg(long, value_enum)]
        kind: Kind,
        g: String,
        h: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        dimacs: bool,
    },
    /// Kneser graph K(c, b), or a homomorphism test into it
    Kneser {
        c: usize,
        b: usize,
        /// Decide whether this graph maps homomorphically into K(c, b)
        #[arg(long)]
        hom: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReportCommand {
    /// Exact chromatic data and product inequalities for two classical graphs
    Bounds {
        g: String,
        h: String,
        /// Also write the report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Result of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(report: &CheckReport) -> Verdict {
    print!("{report}");
    let verdict = Verdict::of(report.passed());
    println!("result: {}", if report.passed() { "PASS" } else { "FAIL" });
    verdict
}

fn describe(g: &QuantumGraph) -> String {
    // runs of equal blocks are shown once with a count
    let mut blocks: Vec<(usize, String)> = Vec::new();
    for b in g.algebra().blocks() {
        let label = format!("{}x{}", b.multiplicity, b.size);
        match blocks.last_mut() {
            Some((count, last)) if *last == label => *count += 1,
            _ => blocks.push((1, label)),
        }
    }
    let blocks: Vec<String> = blocks
        .into_iter()
        .map(|(count, label)| if count == 1 { label } else { format!("{count} × {label}") })
        .collect();
    format!(
        "quantum graph on C^{}: dim S = {}, M blocks (mult x size) [{}], dim M = {}",
        g.dim(),
        g.s().dim(),
        blocks.join(", "),
        g.algebra().algebra_dim()
    )
}

fn describe_cert(c: &ColoringCertificate) -> String {
    format!(
        "certificate: {} colors, fold {}, graph dim {}, ancilla dim {} (t = {})",
        c.colors(),
        c.fold(),
        c.graph_dim(),
        c.ancilla_dim(),
        c.strategy()
    )
}

fn emit_constructed(label: &str, c: Constructed, output: &Path) -> Result<Verdict> {
    fs::write(output, cert_to_json(&c.cert)).with_context(|| format!("writing {}", output.display()))?;
    println!("{label}");
    println!("{}", describe_cert(&c.cert));
    println!("wrote {}", output.display());
    Ok(print_report(&c.report))
}

fn run(cli: Cli) -> Result<Verdict> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol > 0.0) {
        bail!("--tol must be a positive number");
    }
    let qg = |spec: &str| input::quantum_graph(spec, tol);
    match cli.command {
        Command::VerifyGraph { graph } => {
            let g = qg(&graph)?;
            println!("{}", describe(&g));
            Ok(print_report(&g.verify(tol)))
        }
        Command::Product { kind, g, h, output, classical } => {
            let kind = ProductKind::from(kind);
            let (gq, hq) = (qg(&g)?, qg(&h)?);
            let p = product(kind, &gq, &hq, tol)?;
            fs::write(&output, graph_to_json(&p)).with_context(|| format!("writing {}", output.display()))?;
            println!("{kind} product of {g} and {h}");
            println!("{}", describe(&p));
            println!("wrote {}", output.display());
            if kind == ProductKind::Lexicographic {
                println!("note: {LEXICOGRAPHIC_NOTICE}");
            }
            if !classical {
                return Ok(Verdict::Pass);
            }
            let (Some(gc), Some(hc)) = (input::as_classical(&g)?, input::as_classical(&h)?) else {
                bail!("--classical needs two classical graphs");
            };
            println!("classical cross-check:");
            let mut report = classical_crosscheck(&gc, &hc, kind, tol)?;
            // the notice was already printed above
            report.notes.clear();
            Ok(print_report(&report))
        }
        Command::Export { graph, output, classical, dimacs } => {
            let text = if classical {
                let g = input::classical_graph(&graph)?;
                if dimacs {
                    g.to_dimacs()
                } else {
                    classical_to_json(&g)
                }
            } else {
                graph_to_json(&qg(&graph)?)
            };
            write_out(output.as_deref(), &text)?;
            Ok(Verdict::Pass)
        }
        Command::Color(c) => color(c, tol),
        Command::Hom(c) => hom(c, tol),
        Command::Classical(c) => classical_cmd(c),
        Command::Report(ReportCommand::Bounds { g, h, json }) => {
            let (gc, hc) = (input::classical_graph(&g)?, input::classical_graph(&h)?);
            let r = bounds_report(&gc, &hc, &g, &h)?;
            print!("{r}");
            println!("note: {LEXICOGRAPHIC_NOTICE}");
            if let Some(path) = json {
                let mut text = serde_json::to_string_pretty(&r)?;
                text.push('\n');
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            let ok = r.all_hold();
            println!("result: {}", if ok { "all inequalities hold" } else { "VIOLATION" });
            Ok(Verdict::of(ok))
        }
    }
}

fn color(cmd: ColorCommand, tol: f64) -> Result<Verdict> {
    let qg = |spec: &str| input::quantum_graph(spec, tol);
    match cmd {
        ColorCommand::Verify { graph, cert, bfold, model } => {
            let g = qg(&graph)?;
            let c = input::certificate(&cert)?;
            println!("{}", describe_cert(&c));
            let mut report = if bfold {
                verify_bfold(&g, &c, tol)?
            } else {
                verify_coloring(&g, &c, tol)?
            };
            match model {
                Some(Model::Loc) => {
                    report.push_flag(
                        "local strategy (ancilla dim 1)",
                        c.is_local(),
                        format!("ancilla dim {}", c.ancilla_dim()),
                    );
                }
                Some(m @ (Model::Qa | Model::Qc)) => {
                    let name = if m == Model::Qa { "qa" } else { "qc" };
                    report.note(format!(
                        "t = {name} is not certifiable from finite data; a passing finite \
                         certificate bounds χ_{name} only through χ_q"
                    ));
                }
                Some(Model::Q) | None => {}
            }
            Ok(print_report(&report))
        }
        ColorCommand::Transform(t) => transform(t, tol),
        ColorCommand::Bell { n, output } => {
            if n == 0 {
                bail!("n must be positive");
            }
            let c = bell_coloring(n);
            fs::write(&output, cert_to_json(&c)).with_context(|| format!("writing {}", output.display()))?;
            println!("{}", describe_cert(&c));
            println!("wrote {}", output.display());
            Ok(Verdict::Pass)
        }
        ColorCommand::Classical { graph, fold, output } => {
            if fold == 0 {
                bail!("--fold must be positive");
            }
            let g = input::classical_graph(&graph)?;
            let w = bfold_exact(&g, fold)?;
            let c = to_local_cert(&g, &w)?;
            fs::write(&output, cert_to_json(&c)).with_context(|| format!("writing {}", output.display()))?;
            println!("{}", describe_cert(&c));
            println!("wrote {}", output.display());
            Ok(Verdict::Pass)
        }
        ColorCommand::Extract { graph, cert, extract_tol } => {
            let g = qg(&graph)?;
            let c = input::certificate(&cert)?;
            println!("{}", describe_cert(&c));
            Ok(print_report(&complete_lower_bound_extract(&g, &c, tol, extract_tol)?))
        }
    }
}

fn transform(t: Transform, tol: f64) -> Result<Verdict> {
    let qg = |spec: &str| input::quantum_graph(spec, tol);
    let cert = |path: &str| input::certificate(path);
    match t {
        Transform::Reduce { graph, cert: c, out } => {
            let r = reduce_bfold(&qg(&graph)?, &cert(&c)?, tol)?;
            let map: Vec<String> = r.color_map.iter().map(|a| a.to_string()).collect();
            let label = format!("reduced certificate; output colors come from input colors [{}]", map.join(", "));
            emit_constructed(&label, Constructed { cert: r.cert, report: r.report }, &out.output)
        }
        Transform::Combine { graph, cert1, cert2, out } => {
            let c = combine_bfold(&qg(&graph)?, &cert(&cert1)?, &cert(&cert2)?, tol)?;
            emit_constructed("combined certificate", c, &out.output)
        }
        Transform::Scale { graph, cert: c, fold, out } => {
            let c = scale_bfold(&qg(&graph)?, &cert(&c)?, fold, tol)?;
            emit_constructed("scaled certificate", c, &out.output)
        }
        Transform::Lex { g, h, cert_g, cert_h, out } => {
            let c = lexicographic_coloring(&qg(&g)?, &qg(&h)?, &cert(&cert_g)?, &cert(&cert_h)?, tol)?;
            println!("note: {LEXICOGRAPHIC_NOTICE}");
            emit_constructed(&format!("coloring of {g}[{h}]"), c, &out.output)
        }
        Transform::StrongLift { g, h, cert_g, cert_h, out } => {
            let c = strong_coloring(&qg(&g)?, &qg(&h)?, &cert(&cert_g)?, &cert(&cert_h)?, tol)?;
            emit_constructed(&format!("coloring of {g} ⊠ {h}"), c, &out.output)
        }
        Transform::CatLift { g, cert_g, h, out } => {
            let c = categorical_lift(&qg(&g)?, &cert(&cert_g)?, &qg(&h)?, tol)?;
            emit_constructed(&format!("coloring of {g} × {h}"), c, &out.output)
        }
    }
}

fn hom(cmd: HomCommand, tol: f64) -> Result<Verdict> {
    let qg = |spec: &str| input::quantum_graph(spec, tol);
    let write = |w: &qprod::HomomorphismCertificate, output: &Path| -> Result<()> {
        fs::write(output, hom_to_json(w)).with_context(|| format!("writing {}", output.display()))?;
        println!(
            "homomorphism certificate: C^{} → C^{}, {} Kraus operators, ancilla dim {}",
            w.source_dim(),
            w.target_dim(),
            w.kraus().len(),
            w.ancilla_dim()
        );
        println!("wrote {}", output.display());
        Ok(())
    };
    match cmd {
        HomCommand::Verify { src, dst, cert } => {
            let w = input::homomorphism(&cert)?;
            Ok(print_report(&verify_homomorphism(&qg(&src)?, &qg(&dst)?, &w, tol)?))
        }
        HomCommand::Sabidussi { g, h, factor, output } => {
            let (gq, hq) = (qg(&g)?, qg(&h)?);
            let factor = Factor::from(factor);
            let w = sabidussi_witness(&gq, &hq, factor);
            write(&w, &output)?;
            let src = if factor == Factor::First { &gq } else { &hq };
            let cart = product(ProductKind::Cartesian, &gq, &hq, tol)?;
            Ok(print_report(&verify_homomorphism(src, &cart, &w, tol)?))
        }
        HomCommand::Hedetniemi { g, h, factor, output } => {
            let (gq, hq) = (qg(&g)?, qg(&h)?);
            let factor = Factor::from(factor);
            let w = hedetniemi_witness(&gq, &hq, factor);
            write(&w, &output)?;
            let dst = if factor == Factor::First { &gq } else { &hq };
            let cat = product(ProductKind::Categorical, &gq, &hq, tol)?;
            Ok(print_report(&verify_homomorphism(&cat, dst, &w, tol)?))
        }
    }
}

fn classical_cmd(cmd: ClassicalCommand) -> Result<Verdict> {
    match cmd {
        ClassicalCommand::Chi { graph } => {
            let g = input::classical_graph(&graph)?;
            let chi = chromatic_exact(&g)?;
            let w = bfold_exact(&g, 1)?;
            println!("χ({graph}) = {chi}");
            print_assignment(&w);
            Ok(Verdict::Pass)
        }
        ClassicalCommand::ChiB { graph, b } => {
            if b == 0 {
                bail!("b must be positive");
            }
            let g = input::classical_graph(&graph)?;
            let w = bfold_exact(&g, b)?;
            println!("χ_{b}({graph}) = {}", w.palette_size());
            print_assignment(&w);
            Ok(Verdict::Pass)
        }
        ClassicalCommand::Product { kind, g, h, output, dimacs } => {
            let (gc, hc) = (input::classical_graph(&g)?, input::classical_graph(&h)?);
            let p = gc.product(&hc, kind.into());
            let text = if dimacs { p.to_dimacs() } else { classical_to_json(&p) };
            write_out(output.as_deref(), &text)?;
            Ok(Verdict::Pass)
        }
        ClassicalCommand::Kneser { c, b, hom, output } => {
            if b == 0 || b > c {
                bail!("Kneser graphs need 1 ≤ b ≤ c");
            }
            match hom {
                Some(spec) => {
                    let g = input::classical_graph(&spec)?;
                    let ok = kneser_hom_check(&g, c, b)?;
                    println!("{spec} → K({c},{b}): {}", if ok { "homomorphism exists" } else { "no homomorphism" });
                    Ok(Verdict::Pass)
                }
                None => {
                    let k = qprod::ClassicalGraph::kneser(c, b);
                    write_out(output.as_deref(), &classical_to_json(&k))?;
                    Ok(Verdict::Pass)
                }
            }
        }
    }
}

fn print_assignment(w: &qprod::BFoldAssignment) {
    for (v, s) in w.sets().iter().enumerate() {
        let colors: Vec<String> = s.iter().map(|a| a.to_string()).collect();
        println!("  {v}: {{{}}}", colors.join(", "));
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<qprod::Error>() {
        Some(qprod::Error::TooLarge(_)) => 3,
        Some(qprod::Error::VerificationFailed { .. }) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(err) => {
            let code = exit_code(&err);
            if code == 1 {
                // a failed construction: its report belongs with the normal output
                println!("{err:#}");
                println!("result: FAIL");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}
