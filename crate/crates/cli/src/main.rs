//! Command-line driver: classify induced bodies, compute cuts, synthesize
//! and verify split-rank certificates, probe ranks with the closure oracle,
//! and render certificate frames.
//!
//! Exit codes: 0 success/pass, 1 fail (including a refused T1 goal or a
//! probe that never reaches the target), 2 usage or input error.

use clap::{Parser, Subcommand};
use splitrank::classify::classify_body;
use splitrank::io::{
    certificate_from_document, certificate_to_document, parse_instance, CertificateDocument,
};
use splitrank::model::{cut_is_valid, induced_body, phi_from_body, CutIneq, TwoRowModel};
use splitrank::num::{fmt_rat, parse_rat};
use splitrank::geom::{ConvexBody2, Point2};
use splitrank::oracle::{rank_probe, ProbeOutcome};
use splitrank::render::render_frames;
use splitrank::synth::{synthesize, SynthOptions};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "splitrank",
    about = "Split-rank certificates for two-row intersection cuts, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the induced lattice-free set of each named cut.
    Classify { instance: PathBuf },
    /// Compute the intersection cut phi(B) for a body given by its vertices.
    Cut {
        instance: PathBuf,
        /// Vertices as "x1,y1;x2,y2;..." with exact rationals.
        #[arg(long)]
        body: String,
        /// Optional recession directions in the same format.
        #[arg(long)]
        recession: Option<String>,
    },
    /// Print the induced lattice-free set of a named cut.
    Induced {
        instance: PathBuf,
        #[arg(long)]
        cut: String,
    },
    /// Synthesize a verified split-rank certificate for a named goal cut.
    Synthesize {
        instance: PathBuf,
        #[arg(long)]
        goal: String,
        /// Write the certificate document here.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Write one SVG frame per step into this directory.
        #[arg(long)]
        render: Option<PathBuf>,
    },
    /// Re-verify a certificate document against an instance.
    Verify {
        instance: PathBuf,
        certificate: PathBuf,
    },
    /// Probe the split rank with the bounded closure oracle.
    Probe {
        instance: PathBuf,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 3)]
        rounds: u32,
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &PathBuf) -> Result<(TwoRowModel, std::collections::BTreeMap<String, CutIneq>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| e.to_string())
}

fn named_cut(
    cuts: &std::collections::BTreeMap<String, CutIneq>,
    name: &str,
) -> Result<CutIneq, String> {
    cuts.get(name)
        .cloned()
        .ok_or_else(|| format!("instance defines no cut named {name:?}"))
}

fn parse_points(text: &str) -> Result<Vec<Point2>, String> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let mut it = part.split(',');
        let x = it.next().ok_or("expected x,y pairs separated by ';'")?;
        let y = it.next().ok_or("expected x,y pairs separated by ';'")?;
        if it.next().is_some() {
            return Err("expected exactly two coordinates per point".to_string());
        }
        out.push(Point2::new(parse_rat(x)?, parse_rat(y)?));
    }
    Ok(out)
}

fn fmt_point(p: &Point2) -> String {
    format!("({}, {})", fmt_rat(&p.x), fmt_rat(&p.y))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let opts = synth_options();
    match cli.command {
        Command::Classify { instance } => {
            let (model, cuts) = load(&instance)?;
            if cuts.is_empty() {
                return Err("instance defines no cuts to classify".to_string());
            }
            for (name, cut) in &cuts {
                let body = induced_body(&model, cut);
                match classify_body(&body, &model.f) {
                    Ok(class) => println!("{name}: {class:?}"),
                    Err(e) => println!("{name}: unclassifiable ({e})"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cut {
            instance,
            body,
            recession,
        } => {
            let (model, _) = load(&instance)?;
            let verts = parse_points(&body)?;
            let dirs = match recession {
                None => Vec::new(),
                Some(r) => parse_points(&r)?
                    .into_iter()
                    .map(|p| {
                        splitrank::geom::Direction2::new(p.x, p.y).map_err(|e| e.to_string())
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let b = ConvexBody2::from_points_dirs(verts, dirs);
            let cut = phi_from_body(&model, &b).map_err(|e| e.to_string())?;
            let coeffs: Vec<String> = cut.alpha.iter().map(fmt_rat).collect();
            println!("[{}]", coeffs.join(", "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Induced { instance, cut } => {
            let (model, cuts) = load(&instance)?;
            let cut = named_cut(&cuts, &cut)?;
            let body = induced_body(&model, &cut);
            let vs: Vec<String> = body.vertices().iter().map(fmt_point).collect();
            println!("vertices: {}", vs.join(" "));
            if !body.recession().is_empty() {
                let rs: Vec<String> = body
                    .recession()
                    .iter()
                    .map(|d| format!("({}, {})", fmt_rat(&d.x), fmt_rat(&d.y)))
                    .collect();
                println!("recession: {}", rs.join(" "));
            }
            println!("lattice-free: {}", body.is_lattice_free());
            Ok(ExitCode::SUCCESS)
        }
        Command::Synthesize {
            instance,
            goal,
            emit,
            render,
        } => {
            let (model, cuts) = load(&instance)?;
            let goal_cut = named_cut(&cuts, &goal)?;
            if !cut_is_valid(&model, &goal_cut) {
                println!("goal is not valid for the instance");
                return Ok(ExitCode::FAILURE);
            }
            match synthesize(&model, &goal_cut, &opts) {
                Ok(cert) => {
                    println!("rank bound: {}", cert.rank_bound);
                    for (i, step) in cert.steps.iter().enumerate() {
                        println!(
                            "step {}: pi = ({}, {}), pi0 = {}, verified = {}",
                            i + 1,
                            step.disjunction.pi.0,
                            step.disjunction.pi.1,
                            step.disjunction.pi0,
                            step.record.pass
                        );
                    }
                    for name in cert.subs.keys() {
                        println!(
                            "sub-certificate {name}: rank bound {}",
                            cert.subs[name].cert.rank_bound
                        );
                    }
                    if let Some(path) = emit {
                        let doc = certificate_to_document(&cert);
                        std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap())
                            .map_err(|e| format!("{}: {e}", path.display()))?;
                        println!("certificate written to {}", path.display());
                    }
                    if let Some(dir) = render {
                        std::fs::create_dir_all(&dir)
                            .map_err(|e| format!("{}: {e}", dir.display()))?;
                        for (i, frame) in render_frames(&model, &cert).iter().enumerate() {
                            let path = dir.join(format!("step{:03}.svg", i + 1));
                            std::fs::write(&path, frame)
                                .map_err(|e| format!("{}: {e}", path.display()))?;
                        }
                        println!("frames written to {}", dir.display());
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(splitrank::SynthError::NotFiniteRank) => {
                    println!("refused: the induced set is a T1 triangle; no finite split rank");
                    Ok(ExitCode::FAILURE)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Verify {
            instance,
            certificate,
        } => {
            let (model, _) = load(&instance)?;
            let text = std::fs::read_to_string(&certificate)
                .map_err(|e| format!("{}: {e}", certificate.display()))?;
            let doc: CertificateDocument =
                serde_json::from_str(&text).map_err(|e| e.to_string())?;
            // Parse eagerly so reference errors surface as usage errors.
            certificate_from_document(&doc).map_err(|e| e.to_string())?;
            match splitrank::io::verify_certificate(&model, &doc) {
                Ok(()) => {
                    println!("certificate verifies: rank bound {}", doc.rank_bound);
                    Ok(ExitCode::SUCCESS)
                }
                Err(msg) => {
                    println!("certificate FAILS verification: {msg}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Probe {
            instance,
            goal,
            rounds,
            bound,
        } => {
            let (model, cuts) = load(&instance)?;
            let goal_cut = named_cut(&cuts, &goal)?;
            match rank_probe(&model, &goal_cut, rounds, bound).map_err(|e| e.to_string())? {
                ProbeOutcome::FirstValidRound(n) => {
                    println!("first valid round: {n} (bound {bound})");
                    Ok(ExitCode::SUCCESS)
                }
                ProbeOutcome::NotWithinN => {
                    println!("not implied within {rounds} rounds at bound {bound}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
    }
}

fn synth_options() -> SynthOptions {
    let mut opts = SynthOptions::default();
    if let Ok(v) = std::env::var("SPLITRANK_ITER_CAP") {
        if let Ok(cap) = v.parse::<u64>() {
            opts.iter_cap = cap;
        }
    }
    opts
}
