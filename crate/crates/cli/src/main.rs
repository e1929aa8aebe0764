use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use surfqp::dg::{GenKind, GinzburgPresentation};
use surfqp::ext::pi_dictionary;
use surfqp::fixtures;
use surfqp::ktheory::twist_charge;
use surfqp::surface::exchange_graph_bfs;
use surfqp::transport::path_transport;
use surfqp::{
    mutate, premutate, run_suite, CentralCharge, DecoratedTriangulation, ExtAlgebraTable,
    FlipDirection, K0Lattice, MarkedSurface, Qp, SuiteConfig, TwistWord, SUITES,
};

/// Directory searched for fixture files named on the command line.
const FIXTURE_ENV: &str = "SURFQP_FIXTURES";

#[derive(Parser)]
#[command(
    name = "surfqp",
    version,
    about = "Quivers with potential of triangulated surfaces"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SurfaceArg {
    /// Builtin triangulation name or a triangulation JSON file.
    #[arg(long, default_value = "hexagon")]
    surface: String,
}

#[derive(Args, Clone)]
struct QpArg {
    /// Builtin QP name, builtin triangulation name, or a QP JSON file.
    #[arg(long, conflicts_with = "surface")]
    qp: Option<String>,
    /// Use the QP of this triangulation.
    #[arg(long)]
    surface: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Arc and triangle counts, and a triangulation's sides.
    Surface {
        #[command(flatten)]
        src: SurfaceArg,
        /// Count for a surface of this genus instead.
        #[arg(long, requires = "marked")]
        genus: Option<u32>,
        /// Marked points per boundary component, e.g. `1,1`.
        #[arg(long, value_delimiter = ',')]
        marked: Option<Vec<u32>>,
    },
    /// The quiver with potential.
    Qp {
        #[command(flatten)]
        src: QpArg,
    },
    /// Mutation at a vertex.
    Mutate {
        #[command(flatten)]
        src: QpArg,
        #[arg(long)]
        vertex: String,
        /// Print the pre-mutation instead of its reduced part.
        #[arg(long)]
        pre: bool,
    },
    /// Flip an arc.
    Flip {
        #[command(flatten)]
        src: SurfaceArg,
        #[arg(long)]
        arc: String,
        #[arg(long)]
        backward: bool,
    },
    /// Generators and differential of the Ginzburg dg algebra.
    Ginzburg {
        #[command(flatten)]
        src: QpArg,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = PossibleValuesParser::new(SUITES))]
        suite: String,
        /// `builtin` runs every builtin fixture.
        #[arg(long, default_value = "builtin", conflicts_with_all = ["surface", "qp"])]
        fixtures: String,
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        qp: Option<String>,
    },
    /// Forward-flip exchange graph.
    Egraph {
        #[command(flatten)]
        src: SurfaceArg,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Distinguish decorations.
        #[arg(long)]
        decorated: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ext-algebra tables and their transport along flips.
    Ext {
        #[command(subcommand)]
        command: ExtCommand,
    },
    /// Spherical twists on K0.
    Twist {
        #[command(subcommand)]
        command: TwistCommand,
    },
}

#[derive(Subcommand)]
enum ExtCommand {
    Table {
        #[command(flatten)]
        src: SurfaceArg,
    },
    Transport {
        #[command(flatten)]
        src: SurfaceArg,
        /// Flips such as `d0-2+,d0-3-`.
        #[arg(long, default_value = "")]
        path: String,
    },
}

#[derive(Subcommand)]
enum TwistCommand {
    /// Matrix of a word, its action on a class and optionally on a charge.
    Apply {
        #[command(flatten)]
        src: QpArg,
        #[arg(long)]
        word: String,
        /// Central charge `{vertex: [re, im]}`, inline or as a file.
        #[arg(long)]
        charge: Option<String>,
    },
    /// Braid or commutation relation for a pair of vertices.
    Braid {
        #[command(flatten)]
        src: QpArg,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

fn read_fixture(name: &str) -> Result<String> {
    let direct = PathBuf::from(name);
    let path = if direct.is_file() {
        direct
    } else {
        let dir = std::env::var_os(FIXTURE_ENV).ok_or_else(|| {
            anyhow!("unknown fixture `{name}` (set {FIXTURE_ENV} to search a directory)")
        })?;
        let mut p = PathBuf::from(dir).join(name);
        if p.extension().is_none() {
            p.set_extension("json");
        }
        p
    };
    fs::read_to_string(&path).map_err(|e| anyhow!("cannot read {}: {e}", path.display()))
}

fn load_surface(name: &str) -> Result<DecoratedTriangulation> {
    if let Some(t) = fixtures::triangulation(name) {
        return Ok(t);
    }
    DecoratedTriangulation::from_json(&read_fixture(name)?).map_err(|e| anyhow!("{name}: {e}"))
}

fn load_qp_named(name: &str) -> Result<Qp> {
    if let Some(q) = fixtures::qp(name) {
        return Ok(q);
    }
    let text = read_fixture(name)?;
    if let Ok(q) = Qp::from_json(&text) {
        return Ok(q);
    }
    let t = DecoratedTriangulation::from_json(&text).map_err(|e| anyhow!("{name}: {e}"))?;
    Ok(t.qp()?)
}

fn load_qp(src: &QpArg) -> Result<Qp> {
    match (&src.qp, &src.surface) {
        (Some(q), _) => load_qp_named(q),
        (None, Some(s)) => Ok(load_surface(s)?.qp()?),
        (None, None) => Err(anyhow!("pass --qp or --surface")),
    }
}

fn parse_path(s: &str) -> Result<Vec<(String, FlipDirection)>> {
    let w: TwistWord = s.parse().map_err(|e| anyhow!("path: {e}"))?;
    Ok(w.letters
        .into_iter()
        .map(|(k, e)| {
            (
                k,
                if e > 0 {
                    FlipDirection::Forward
                } else {
                    FlipDirection::Backward
                },
            )
        })
        .collect())
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        println!("{text}");
    }
}

fn qp_text(qp: &Qp) -> String {
    let mut s = String::new();
    for a in qp.quiver.arrows() {
        s.push_str(&format!("{}: {} -> {}\n", a.id, a.source, a.target));
    }
    s.push_str(&format!("W = {}\nclass: {:?}", qp.potential, qp.classify()));
    s
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Surface { src, genus, marked } => {
            let s = match (genus, marked) {
                (Some(g), Some(m)) => {
                    MarkedSurface::new(g, m).map_err(|e| anyhow!(e.to_string()))?
                }
                (None, Some(m)) => MarkedSurface::new(0, m).map_err(|e| anyhow!(e.to_string()))?,
                _ => {
                    let t = load_surface(&src.surface)?;
                    let counts = t.surface().map(|s| (s.arc_count(), s.decoration_count()));
                    emit(
                        json,
                        json!({
                            "triangulation": serde_json::to_value(t.to_document())?,
                            "arcs": t.arcs(),
                            "decorations": t.decoration_count(),
                            "formula": counts.map(|(n, d)| json!({"arcs": n, "decorations": d})),
                        }),
                        format!(
                            "{t}\narcs: {}\ndecorations: {}",
                            t.arcs().join(" "),
                            t.decoration_count()
                        ),
                    );
                    return Ok(ExitCode::SUCCESS);
                }
            };
            emit(
                json,
                json!({"genus": s.genus, "boundaries": s.boundaries, "arcs": s.arc_count(), "decorations": s.decoration_count()}),
                format!(
                    "arcs: {}\ndecorations: {}",
                    s.arc_count(),
                    s.decoration_count()
                ),
            );
        }
        Command::Qp { src } => {
            let qp = load_qp(&src)?;
            emit(json, serde_json::to_value(qp.to_document())?, qp_text(&qp));
        }
        Command::Mutate { src, vertex, pre } => {
            let qp = load_qp(&src)?;
            let out = if pre {
                premutate(&qp.quiver, &qp.potential, &vertex)?.qp()
            } else {
                mutate(&qp.quiver, &qp.potential, &vertex)?
            };
            emit(
                json,
                serde_json::to_value(out.to_document())?,
                qp_text(&out),
            );
        }
        Command::Flip { src, arc, backward } => {
            let t = load_surface(&src.surface)?;
            let dir = if backward {
                FlipDirection::Backward
            } else {
                FlipDirection::Forward
            };
            let out = t.flip(&arc, dir)?;
            emit(
                json,
                serde_json::to_value(out.to_document())?,
                out.to_string(),
            );
        }
        Command::Ginzburg { src } => {
            let g = GinzburgPresentation::new(&load_qp(&src)?)?;
            let rows: Vec<_> = g
                .generators()
                .iter()
                .map(|x| {
                    let d = g.rule(&x.id).map(|e| e.to_string()).unwrap_or_default();
                    (
                        x.id.clone(),
                        x.source.clone(),
                        x.target.clone(),
                        x.degree,
                        x.kind,
                        d,
                    )
                })
                .collect();
            let text = rows
                .iter()
                .map(|(id, s, t, deg, _, d)| format!("{id}: {s} -> {t}  deg {deg}  d = {d}"))
                .collect::<Vec<_>>()
                .join("\n");
            let value = rows
                .iter()
                .map(|(id, s, t, deg, kind, d)| {
                    let kind = match kind {
                        GenKind::Arrow => "arrow",
                        GenKind::Star => "star",
                        GenKind::Loop => "loop",
                    };
                    json!({"id": id, "src": s, "tgt": t, "degree": deg, "kind": kind, "d": d})
                })
                .collect();
            emit(json, serde_json::Value::Array(value), text);
        }
        Command::Verify {
            suite,
            fixtures: fx,
            surface,
            qp,
        } => {
            let config = match (surface, qp) {
                (Some(s), _) => SuiteConfig::surface(&s, load_surface(&s)?)?,
                (None, Some(q)) => SuiteConfig::qp(&q, load_qp_named(&q)?),
                (None, None) if fx == "builtin" => SuiteConfig::builtin(),
                (None, None) => bail!("unknown fixture set `{fx}`"),
            };
            let report = run_suite(&suite, &config)?;
            if json {
                println!("{}", report.to_json());
            } else {
                println!("{report}");
            }
            return Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Egraph {
            src,
            depth,
            format,
            decorated,
            out,
        } => {
            let g = exchange_graph_bfs(&load_surface(&src.surface)?, depth, decorated);
            let text = match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => serde_json::to_string_pretty(&g.to_json_value())?,
            };
            match out {
                Some(p) => {
                    fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?
                }
                None => print!("{text}"),
            }
        }
        Command::Ext { command } => match command {
            ExtCommand::Table { src } => {
                let t = load_surface(&src.surface)?;
                let table = ExtAlgebraTable::of(&t)?;
                let dict = pi_dictionary(&t)?;
                let mut text = format!("graded dims {:?}\n", table.graded_dims());
                for b in table.basis() {
                    text.push_str(&format!(
                        "{}  deg {}  {} -> {}\n",
                        b.id, b.degree, b.source, b.target
                    ));
                }
                for (f, g, o) in table.products() {
                    text.push_str(&format!("{f} * {g} = {o}\n"));
                }
                let mut value = table.to_json_value();
                value["dictionary"] = serde_json::to_value(&dict)?;
                emit(json, value, text.trim_end().to_string());
            }
            ExtCommand::Transport { src, path } => {
                let t = load_surface(&src.surface)?;
                let map = path_transport(&t, &parse_path(&path)?)?;
                let mut text = format!("arcs {}\n", map.arcs.join(" "));
                for row in &map.frame {
                    text.push_str(&format!("{row:?}\n"));
                }
                text.push_str(&format!(
                    "euler form preserved: {}\nidentity: {}",
                    map.check_euler().is_ok(),
                    map.is_identity()
                ));
                let mut value = map.to_json_value();
                value["euler_ok"] = json!(map.check_euler().is_ok());
                emit(json, value, text);
            }
        },
        Command::Twist { command } => match command {
            TwistCommand::Apply { src, word, charge } => {
                let l = K0Lattice::from_quiver(&load_qp(&src)?.quiver);
                let w: TwistWord = word.parse().map_err(|e| anyhow!("word: {e}"))?;
                let m = l.word_matrix(&w)?;
                let mut text = format!("basis {}\n", l.vertices().join(" "));
                for row in &m {
                    text.push_str(&format!("{row:?}\n"));
                }
                let mut value = json!({"basis": l.vertices(), "word": w.to_string(), "matrix": m});
                if let Some(c) = charge {
                    let doc = if c.trim_start().starts_with('{') {
                        c.clone()
                    } else {
                        read_fixture(&c)?
                    };
                    let z = CentralCharge::from_json(&doc).map_err(|e| anyhow!("{c}: {e}"))?;
                    let z2 = twist_charge(&l, &w, &z)?;
                    for (v, c) in z2.values() {
                        text.push_str(&format!("Z'(S_{v}) = {} + {}i\n", c.re, c.im));
                    }
                    value["charge"] = z2.to_json_value();
                }
                emit(json, value, text.trim_end().to_string());
            }
            TwistCommand::Braid { src, i, j } => {
                let l = K0Lattice::from_quiver(&load_qp(&src)?.quiver);
                let r = l.braid_relation_check(&i, &j)?;
                let text = format!(
                    "arrows {}\nexpected {:?}\nbraid {}\ncommute {}",
                    r.arrows, r.expected, r.braid_holds, r.commute_holds
                );
                emit(json, serde_json::to_value(&r)?, text);
                return Ok(if r.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            // Failed verifications return 1 above; every error is a usage
            // or input problem.
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
