use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use layerdraw::fixture::{choose_fixture, parse_fixtures, Fixture};
use layerdraw::render::render_svg;
use layerdraw::{
    decompose, decompose_pinned, enumerate_isometric_cycles, hamiltonian_rim, parse_graph,
    pinned_system, select_planar_cycle_system, validate_nonseparable, verify_document,
    DecomposeOptions, DecompositionDocument, Graph, PlanarOptions, Strategy,
};

#[derive(Parser)]
#[command(
    name = "layerdraw",
    version,
    about = "Layered topological drawings of nonseparable graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the isometric cycles of a graph.
    Cycles { input: PathBuf },
    /// Select the layer-1 planar cycle system and its chords.
    Planarize {
        input: PathBuf,
        /// Fixture file with a pinned planar system.
        #[arg(long)]
        pin: Option<PathBuf>,
        /// Fixture name inside the pin file.
        #[arg(long)]
        pin_name: Option<String>,
    },
    /// Build a full layered decomposition and write it as JSON.
    Decompose {
        input: PathBuf,
        #[arg(long, default_value = "thickness")]
        strategy: Strategy,
        /// Fixture file whose steps are replayed before automatic placement.
        #[arg(long)]
        pin: Option<PathBuf>,
        #[arg(long)]
        pin_name: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a decomposition document.
    Verify { document: PathBuf },
    /// Draw one layer of a decomposition document as SVG.
    Render {
        document: PathBuf,
        #[arg(long)]
        layer: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

enum Outcome {
    Ok,
    Rejected,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let g = parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(g)
}

fn load_fixture(path: &Path, name: Option<&str>, n: u32) -> anyhow::Result<Fixture> {
    let all = parse_fixtures(&read(path)?)?;
    Ok(choose_fixture(&all, name, n)?)
}

fn load_document(path: &Path) -> anyhow::Result<DecompositionDocument> {
    Ok(DecompositionDocument::from_json(&read(path)?)?)
}

fn ring(r: &[u32]) -> String {
    let parts: Vec<String> = r.iter().map(u32::to_string).collect();
    format!("<{}>", parts.join(","))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Cycles { input } => {
            let g = load_graph(&input)?;
            let cycles = enumerate_isometric_cycles(&g);
            for c in &cycles {
                println!("c{} {}", c.id, ring(&c.ring));
            }
            println!("{} isometric cycles", cycles.len());
        }
        Command::Planarize {
            input,
            pin,
            pin_name,
        } => {
            let g = load_graph(&input)?;
            let report = validate_nonseparable(&g);
            if !report.is_ok() {
                bail!("graph is separable: {report}");
            }
            let pool = enumerate_isometric_cycles(&g);
            let planar = match pin {
                Some(p) => {
                    let fx = load_fixture(&p, pin_name.as_deref(), g.n)?;
                    let oriented = (!fx.oriented.is_empty()).then_some(&fx.oriented);
                    pinned_system(&g, &pool, &fx.cycles, fx.rim, oriented)?
                }
                None => select_planar_cycle_system(&g, &pool, PlanarOptions::default()),
            };
            let sys = &planar.system;
            for c in &sys.cycles {
                println!("c{} {}", c.id, ring(&c.ring));
            }
            match &sys.rim {
                Some(r) => println!("rim c{} {}", r.id, ring(&r.ring)),
                None => println!("rim none"),
            }
            println!("edges {}", sys.region_edges(&g).len());
            println!("chords {:?}", planar.chords.ids());
            println!("spanning {}", planar.spanning);
            match hamiltonian_rim(&g, sys, 200_000) {
                Ok(h) => println!("hamiltonian {} inside {:?}", ring(&h.ring), h.inside),
                Err(_) => println!("hamiltonian none"),
            }
        }
        Command::Decompose {
            input,
            strategy,
            pin,
            pin_name,
            output,
        } => {
            let g = load_graph(&input)?;
            let d = match pin {
                Some(p) => {
                    let fx = load_fixture(&p, pin_name.as_deref(), g.n)?;
                    decompose_pinned(&g, &fx, strategy)?
                }
                None => decompose(
                    &g,
                    DecomposeOptions {
                        strategy,
                        ..DecomposeOptions::default()
                    },
                )?,
            };
            let doc = DecompositionDocument::of(&d);
            fs::write(&output, doc.to_json())
                .with_context(|| format!("cannot write {}", output.display()))?;
            for l in &d.layers {
                println!(
                    "layer {} edges {} imaginary {}",
                    l.index,
                    l.realized.len(),
                    l.imaginary.len()
                );
            }
            println!("layers {}", d.thickness());
        }
        Command::Verify { document } => {
            let doc = load_document(&document)?;
            let report = verify_document(&doc);
            print!("{report}");
            if !report.is_ok() {
                println!("verification failed");
                return Ok(Outcome::Rejected);
            }
            println!("verification passed");
        }
        Command::Render {
            document,
            layer,
            output,
        } => {
            let doc = load_document(&document)?;
            let svg = render_svg(&doc, layer)?;
            fs::write(&output, svg)
                .with_context(|| format!("cannot write {}", output.display()))?;
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Rejected) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
