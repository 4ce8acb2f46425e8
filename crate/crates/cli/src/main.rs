use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use cutcomplex::acceptance::{self, CRITERIA, DEFAULT_SEED};
use cutcomplex::algebra::{stone_dual, verify_epsilon, FiniteBooleanAlgebra, Homomorphism};
use cutcomplex::cuts::{CutGraph, Mode};
use cutcomplex::io::{self, GraphFormat, GraphJson, SpaceDescriptor};
use cutcomplex::pants::{
    adjacency_graph, restrict_pants, standard_cantor_pants, valence_criterion_check,
    verify_pants_bounded,
};
use cutcomplex::reconstruction::{automorphisms, kernel_of_action, reconstruct, stabilizer_check};
use cutcomplex::space::{ClopenSet, SpaceSpec, Word, MAX_WORD_LEN};
use cutcomplex::spheres::{
    build_exhaustion, certify, inverse_limit_check, make_sphere, recognize_sphere,
};
use cutcomplex::systems::{fixture, pair_experiment, run_fixture, StoneSpaceSystem};

const DEFAULT_DEPTH: usize = 3;
const DEFAULT_PROBE_DEPTH: usize = 4;

#[derive(Parser)]
#[command(name = "cutcomplex", version, about = "Cut complexes of Stone spaces")]
struct Cli {
    /// Output format; `dot` applies to graph output only.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Enumeration depth for infinite spaces.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct SpaceArg {
    /// Space descriptor as JSON, or @path to a JSON file.
    #[arg(long)]
    space: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the non-peripheral cuts.
    Cuts(SpaceArg),
    /// Print or write the cut graph.
    Graph {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Diameter(SpaceArg),
    /// Automorphism group of a cut graph or of a graph given as JSON.
    Aut {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        space: Option<String>,
        /// `{"vertices": [...], "edges": [[i, j], ...]}` or @path.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Recover the point bijection behind a graph isomorphism.
    Reconstruct {
        #[command(flatten)]
        space: SpaceArg,
        /// Target space; defaults to `--space`.
        #[arg(long)]
        target: Option<String>,
        /// Vertex permutation as a JSON array.
        #[arg(long)]
        perm: String,
    },
    /// Point permutations acting trivially on the complex.
    Kernel(SpaceArg),
    /// Check that a family of cuts forces its stabilizer to map K into U.
    Stabcheck {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long = "k")]
        k_set: String,
        #[arg(long = "u")]
        u_set: String,
    },
    Pants {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        probe_depth: Option<usize>,
        #[arg(long, value_enum)]
        report: Option<Report>,
        /// Write the adjacency graph of the decomposition here.
        #[arg(long)]
        adjacency: Option<PathBuf>,
    },
    /// Recognize a sphere from its boundary sides, or build an exhaustion.
    Spheres {
        #[command(flatten)]
        space: SpaceArg,
        /// JSON array of sides, each an array of binary strings.
        #[arg(long, required_unless_present = "levels")]
        sides: Option<String>,
        #[arg(long)]
        levels: Option<usize>,
    },
    Duality {
        /// `{"atoms": k}`
        #[arg(long)]
        algebra: String,
        /// Element as a sorted array of atom indices.
        #[arg(long)]
        element: Option<String>,
        /// Target algebra of `--hom`.
        #[arg(long, requires = "hom")]
        target: Option<String>,
        /// `{"atom_map": [...]}` from atoms of the target to atoms of the algebra.
        #[arg(long, requires = "target")]
        hom: Option<String>,
        /// Random homomorphisms to verify, drawn with `--seed`.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    Systems {
        #[arg(long, conflicts_with = "system", required_unless_present = "system")]
        fixture: Option<String>,
        /// `{"n": 7, "nested": [[...], ...]}` or @path; runs the pair experiment.
        #[arg(long)]
        system: Option<String>,
    },
    /// Run the acceptance criteria.
    Acceptance {
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
    /// Write the cut graph to a file.
    Export {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Json,
    Text,
}

/// Text or JSON rendering plus whether a violation was found.
struct Output {
    text: String,
    json: Value,
    violation: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output {
            text,
            json,
            violation: false,
        }
    }
}

fn read_json_arg(flag: &str, raw: &str) -> Result<String> {
    match raw.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).with_context(|| format!("--{flag}: cannot read {path}"))
        }
        None => Ok(raw.to_owned()),
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(flag: &str, raw: &str) -> Result<T> {
    let text = read_json_arg(flag, raw)?;
    serde_json::from_str(&text).with_context(|| format!("--{flag}: malformed JSON"))
}

fn space(flag: &str, raw: &str) -> Result<Arc<SpaceSpec>> {
    let text = read_json_arg(flag, raw)?;
    io::parse_space(&text).with_context(|| format!("--{flag}"))
}

#[derive(Clone, Copy)]
struct Ctx {
    format: Option<Format>,
    depth: Option<usize>,
    seed: u64,
}

impl Ctx {
    fn depth(&self) -> Result<usize> {
        let d = self.depth.unwrap_or(DEFAULT_DEPTH);
        if d > MAX_WORD_LEN {
            bail!("--depth: {d} exceeds {MAX_WORD_LEN}");
        }
        Ok(d)
    }

    fn mode(&self, spec: &SpaceSpec) -> Result<Mode> {
        if spec.is_finite() {
            Ok(Mode::Finite)
        } else {
            Ok(Mode::Bounded(self.depth()?))
        }
    }

    fn complex(&self, spec: &Arc<SpaceSpec>) -> Result<CutGraph> {
        Ok(CutGraph::complex(spec, self.mode(spec)?)?)
    }

    fn no_dot(&self) -> Result<()> {
        if self.format == Some(Format::Dot) {
            bail!("--format: dot applies only to graph output");
        }
        Ok(())
    }

    fn graph_format(&self) -> GraphFormat {
        match self.format {
            Some(Format::Json) => GraphFormat::Json,
            _ => GraphFormat::Dot,
        }
    }
}

fn mode_json(m: Mode) -> Value {
    match m {
        Mode::Finite => json!("finite"),
        Mode::Bounded(d) => json!({ "bounded": d }),
    }
}

fn cuts(ctx: &Ctx, s: &Arc<SpaceSpec>) -> Result<Output> {
    let mode = ctx.mode(s)?;
    let cuts = cutcomplex::cuts::enumerate_cuts(s, mode)?;
    let mut text = format!("{} cuts of {s}\n", cuts.len());
    for c in &cuts {
        text.push_str(&format!("{c}\n"));
    }
    Ok(Output::ok(
        text,
        json!({ "space": SpaceDescriptor::from_spec(s), "mode": mode_json(mode), "count": cuts.len(), "cuts": cuts }),
    ))
}

fn graph_summary(g: &CutGraph) -> (String, Value) {
    let d = g.diameter();
    let text = format!(
        "{} vertices, {} edges, diameter {d}, {} components\n",
        g.vertex_count(),
        g.edge_count(),
        g.components().len()
    );
    let json =
        json!({ "vertices": g.vertex_count(), "edges": g.edge_count(), "diameter": d.to_string() });
    (text, json)
}

fn graph(ctx: &Ctx, s: &Arc<SpaceSpec>, out: Option<PathBuf>) -> Result<Output> {
    let g = ctx.complex(s)?;
    if let Some(path) = out {
        io::export_graph(&g, ctx.graph_format(), &path).context("--out")?;
        let (text, json) = graph_summary(&g);
        return Ok(Output::ok(
            format!("wrote {}: {text}", path.display()),
            json,
        ));
    }
    let text = match ctx.format {
        Some(Format::Text) => graph_summary(&g).0,
        f => io::render_graph(
            &g,
            if f == Some(Format::Json) {
                GraphFormat::Json
            } else {
                GraphFormat::Dot
            },
        ),
    };
    Ok(Output::ok(
        text,
        serde_json::to_value(GraphJson::from_cut_graph(&g))?,
    ))
}

fn aut(ctx: &Ctx, space_raw: Option<&str>, graph_raw: Option<&str>) -> Result<Output> {
    let g = match (space_raw, graph_raw) {
        (Some(raw), _) => ctx.complex(&space("space", raw)?)?.graph().clone(),
        (None, Some(raw)) => io::parse_graph(&read_json_arg("graph", raw)?).context("--graph")?,
        (None, None) => bail!("one of --space or --graph is required"),
    };
    let a = automorphisms(&g)?;
    let mut text = format!("order {}\n", a.order);
    for gen in &a.generators {
        text.push_str(&format!("generator {gen:?}\n"));
    }
    Ok(Output::ok(text, serde_json::to_value(&a)?))
}

fn reconstruct_cmd(
    ctx: &Ctx,
    s: &Arc<SpaceSpec>,
    target: Option<&str>,
    perm: &str,
) -> Result<Output> {
    let t = match target {
        Some(raw) => space("target", raw)?,
        None => s.clone(),
    };
    let (g, h) = (ctx.complex(s)?, ctx.complex(&t)?);
    let phi: Vec<usize> = parse_json("perm", perm)?;
    let f = reconstruct(&phi, &g, &h).context("--perm")?;
    Ok(Output::ok(
        format!("point bijection {f:?}\n"),
        json!({ "points": f }),
    ))
}

fn kernel(s: &Arc<SpaceSpec>) -> Result<Output> {
    let k = kernel_of_action(s)?;
    let mut text = format!("kernel order {}\n", k.len());
    for p in &k {
        text.push_str(&format!("{p:?}\n"));
    }
    Ok(Output::ok(text, json!({ "order": k.len(), "elements": k })))
}

fn stabcheck(s: &Arc<SpaceSpec>, k: &str, u: &str) -> Result<Output> {
    let k: Vec<usize> = parse_json("k", k)?;
    let u: Vec<usize> = parse_json("u", u)?;
    let r = stabilizer_check(s, &k, &u)?;
    let text = format!(
        "{} cuts, sphere {:?}, pinned {:?}: {} of {} permutations fix them; verified {}\n",
        r.cuts.len(),
        r.sphere,
        r.pinned,
        r.stabilizer,
        r.permutations,
        r.verified
    );
    Ok(Output {
        text,
        violation: !r.verified,
        json: serde_json::to_value(&r)?,
    })
}

fn pants(
    ctx: &Ctx,
    s: &Arc<SpaceSpec>,
    probe: Option<usize>,
    adjacency: Option<PathBuf>,
) -> Result<Output> {
    if s.is_finite() {
        let n = s.total().finite().expect("finite space") as usize;
        let r = valence_criterion_check(n)?;
        let text = format!(
            "{} decompositions, {} of the wrong size; outermost iff valence <= 2: {}; max valence {}\n",
            r.decompositions, r.wrong_size, r.biconditional, r.max_valence
        );
        return Ok(Output {
            text,
            violation: r.wrong_size != 0,
            json: serde_json::to_value(&r)?,
        });
    }
    let probe = probe.unwrap_or(DEFAULT_PROBE_DEPTH);
    let depth = ctx.depth.unwrap_or(probe.max(DEFAULT_DEPTH));
    if depth < probe {
        bail!("--depth: members of depth {depth} leave probes of depth {probe} uncrossed; raise --depth or lower --probe-depth");
    }
    let standard = standard_cantor_pants(
        Ctx {
            depth: Some(depth),
            ..*ctx
        }
        .depth()?,
    )?;
    let p = if **s == SpaceSpec::Cantor {
        standard
    } else {
        restrict_pants(s, &standard)?
    };
    let r = verify_pants_bounded(&p, probe)?;
    if let Some(path) = adjacency {
        let a = adjacency_graph(&p)?;
        let labels: Vec<String> = p.cuts().iter().map(|c| c.first().to_string()).collect();
        let body = match ctx.format {
            Some(Format::Json) => format!(
                "{}\n",
                serde_json::to_string_pretty(&GraphJson::from_graph(&a, labels))?
            ),
            _ => a.to_dot(&labels),
        };
        std::fs::write(&path, body)
            .with_context(|| format!("--adjacency: cannot write {}", path.display()))?;
    }
    let text = format!(
        "{} members of depth {}; {} probes of depth {probe}; {} uncrossed; max crossing {}; holds {}\n",
        r.members,
        r.member_depth,
        r.probes_checked,
        r.uncrossed.len(),
        r.max_crossing,
        r.holds()
    );
    let mut json = serde_json::to_value(&r)?;
    json["holds"] = json!(r.holds());
    Ok(Output {
        text,
        violation: !r.holds(),
        json,
    })
}

fn spheres(
    ctx: &Ctx,
    s: &Arc<SpaceSpec>,
    sides: Option<&str>,
    levels: Option<usize>,
) -> Result<Output> {
    let mut text = String::new();
    let mut json = json!({});
    let mut violation = false;
    if let Some(raw) = sides {
        let words: Vec<Vec<String>> = parse_json("sides", raw)?;
        let sides = words
            .iter()
            .map(|side| {
                let ws = side
                    .iter()
                    .map(|w| w.parse::<Word>())
                    .collect::<cutcomplex::Result<Vec<_>>>()?;
                Ok(ClopenSet::canonicalize(s, &ws))
            })
            .collect::<Result<Vec<_>>>()
            .context("--sides")?;
        let side_depth = sides.iter().map(ClopenSet::depth).max().unwrap_or(0);
        let depth = ctx.depth.unwrap_or(DEFAULT_DEPTH.max(side_depth + 1));
        let r = recognize_sphere(s, &sides, depth)?;
        text.push_str(&format!("recognition at depth {depth}: {:?}\n", r.nk()));
        json["recognition"] = serde_json::to_value(&r)?;
        if let Ok(sphere) = make_sphere(s, sides) {
            let q = sphere.quotient();
            let labels: Vec<String> = q.labels.iter().map(ToString::to_string).collect();
            text.push_str(&format!(
                "(n, k) = ({}, {}); quotient {}\n",
                sphere.n(),
                sphere.k(),
                labels.join(" ")
            ));
            json["sphere"] = json!({ "n": sphere.n(), "k": sphere.k(), "quotient": labels });
        }
    }
    if let Some(levels) = levels {
        let exh = build_exhaustion(s, levels)?;
        let cert = certify(&exh, levels)?;
        let lim = inverse_limit_check(&exh, levels)?;
        let maps = exh.restriction_maps()?;
        violation |= !cert.holds() || !lim.bijective;
        text.push_str(&format!(
            "exhaustion depths {:?}; (n, k) {:?}; certificate holds {} via {:?}; inverse limit {}/{} bijective {}\n",
            exh.depths(),
            exh.spheres().iter().map(|x| (x.n(), x.k())).collect::<Vec<_>>(),
            cert.holds(),
            cert.exhaustion,
            lim.threads,
            lim.classes,
            lim.bijective
        ));
        let mut c = serde_json::to_value(&cert)?;
        c["holds"] = json!(cert.holds());
        json["exhaustion"] = json!({
            "depths": exh.depths(),
            "spheres": exh.spheres().iter().map(|x| json!({ "n": x.n(), "k": x.k() })).collect::<Vec<_>>(),
            "certificate": c,
            "inverse_limit": lim,
            "restriction_maps": maps,
        });
    }
    Ok(Output {
        text,
        json,
        violation,
    })
}

fn duality(
    ctx: &Ctx,
    algebra: &str,
    element: Option<&str>,
    target_hom: Option<(&str, &str)>,
    random: usize,
) -> Result<Output> {
    let b = io::parse_algebra(&read_json_arg("algebra", algebra)?).context("--algebra")?;
    let k = b.atom_count();
    let dual = stone_dual(&b);
    let epsilon = verify_epsilon(&Arc::new(SpaceSpec::finite(k)?))?;
    let mut text = format!(
        "{k} atoms, {} ultrafilters, epsilon {epsilon}\n",
        b.ultrafilters().len()
    );
    let mut json =
        json!({ "atoms": k, "ultrafilters": b.ultrafilters().len(), "epsilon": epsilon });
    let mut violation = !epsilon;
    if let Some(raw) = element {
        let atoms: Vec<usize> = parse_json("element", raw)?;
        let a = b.from_atoms(&atoms).context("--element")?;
        let eta = dual.eta(&a)?;
        text.push_str(&format!("eta({atoms:?}) = {eta}\n"));
        json["eta"] = serde_json::to_value(&eta)?;
    }
    if let Some((target, hom)) = target_hom {
        let t = io::parse_algebra(&read_json_arg("target", target)?).context("--target")?;
        let h = io::parse_homomorphism(&read_json_arg("hom", hom)?, &b, &t).context("--hom")?;
        let ok = h.verify_dual()?;
        violation |= !ok;
        text.push_str(&format!("dual of {:?} commutes: {ok}\n", h.atom_map()));
        json["dual"] = json!(ok);
    }
    if random > 0 {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ctx.seed);
        let mut passed = 0;
        for _ in 0..random {
            let t = FiniteBooleanAlgebra::new(rng.gen_range(1..=k.min(6)))?;
            let map = (0..t.atom_count()).map(|_| rng.gen_range(0..k)).collect();
            passed += Homomorphism::new(&b, &t, map)?.verify_dual()? as usize;
        }
        violation |= passed != random;
        text.push_str(&format!(
            "{passed}/{random} random homomorphisms commute (seed {})\n",
            ctx.seed
        ));
        json["random"] = json!({ "trials": random, "passed": passed, "seed": ctx.seed });
    }
    Ok(Output {
        text,
        json,
        violation,
    })
}

fn systems(name: Option<&str>, system: Option<&str>) -> Result<Output> {
    if let Some(name) = name {
        fixture(name).context("--fixture")?;
        let r = run_fixture(name)?;
        let mut text = format!(
            "{name}: {} weak, {} strong vertices\n",
            r.weak_vertices, r.strong_vertices
        );
        for (check, ok) in &r.checks {
            text.push_str(&format!(
                "  [{}] {check}\n",
                if *ok { "PASS" } else { "FAIL" }
            ));
        }
        let mut json = serde_json::to_value(&r)?;
        json["passed"] = json!(r.passed());
        return Ok(Output {
            text,
            violation: !r.passed(),
            json,
        });
    }
    let raw = system.ok_or_else(|| anyhow!("one of --fixture or --system is required"))?;
    let sys: StoneSpaceSystem = parse_json("system", raw)?;
    sys.validate().context("--system")?;
    let r = pair_experiment(&sys)?;
    Ok(Output::ok(
        format!("{}\n", serde_json::to_string(&r)?),
        serde_json::to_value(&r)?,
    ))
}

fn acceptance_cmd(ctx: &Ctx, only: &[usize]) -> Result<Output> {
    for id in only {
        if !CRITERIA.iter().any(|c| c.0 == *id) {
            bail!("--only: no criterion {id}");
        }
    }
    let ids: Vec<usize> = CRITERIA
        .iter()
        .map(|c| c.0)
        .filter(|id| only.is_empty() || only.contains(id))
        .collect();
    let results: Vec<_> = ids
        .par_iter()
        .filter_map(|&id| acceptance::run(id, ctx.seed))
        .collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut text: String = results.iter().map(|r| format!("{r}\n")).collect();
    text.push_str(&format!(
        "{}/{} criteria passed\n",
        results.len() - failed,
        results.len()
    ));
    Ok(Output {
        text,
        violation: failed > 0,
        json: serde_json::to_value(&results)?,
    })
}

fn run(cli: Cli) -> Result<Output> {
    let ctx = Ctx {
        format: cli.format,
        depth: cli.depth,
        seed: cli.seed,
    };
    let graph_command = matches!(
        cli.command,
        Command::Graph { .. } | Command::Export { .. } | Command::Pants { .. }
    );
    if !graph_command {
        ctx.no_dot()?;
    }
    match &cli.command {
        Command::Cuts(a) => cuts(&ctx, &space("space", &a.space)?),
        Command::Graph { space: a, out } => graph(&ctx, &space("space", &a.space)?, out.clone()),
        Command::Diameter(a) => {
            let g = ctx.complex(&space("space", &a.space)?)?;
            let (_, json) = graph_summary(&g);
            Ok(Output::ok(format!("{}\n", g.diameter()), json))
        }
        Command::Aut { space, graph } => aut(&ctx, space.as_deref(), graph.as_deref()),
        Command::Reconstruct {
            space: a,
            target,
            perm,
        } => reconstruct_cmd(&ctx, &space("space", &a.space)?, target.as_deref(), perm),
        Command::Kernel(a) => kernel(&space("space", &a.space)?),
        Command::Stabcheck {
            space: a,
            k_set,
            u_set,
        } => stabcheck(&space("space", &a.space)?, k_set, u_set),
        Command::Pants {
            space: a,
            probe_depth,
            report,
            adjacency,
        } => {
            let ctx = Ctx {
                format: match report {
                    Some(Report::Json) => Some(Format::Json),
                    Some(Report::Text) => Some(Format::Text),
                    None => ctx.format,
                },
                ..ctx
            };
            pants(
                &ctx,
                &space("space", &a.space)?,
                *probe_depth,
                adjacency.clone(),
            )
        }
        Command::Spheres {
            space: a,
            sides,
            levels,
        } => spheres(&ctx, &space("space", &a.space)?, sides.as_deref(), *levels),
        Command::Duality {
            algebra,
            element,
            target,
            hom,
            random,
        } => duality(
            &ctx,
            algebra,
            element.as_deref(),
            target.as_deref().zip(hom.as_deref()),
            *random,
        ),
        Command::Systems { fixture, system } => systems(fixture.as_deref(), system.as_deref()),
        Command::Acceptance { only } => acceptance_cmd(&ctx, only),
        Command::Export { space: a, out } => {
            let g = ctx.complex(&space("space", &a.space)?)?;
            io::export_graph(&g, ctx.graph_format(), out).context("--out")?;
            let (text, json) = graph_summary(&g);
            Ok(Output::ok(format!("wrote {}: {text}", out.display()), json))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0
            || rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
                .is_err()
        {
            eprintln!("error: --jobs: cannot start {j} worker threads");
            return ExitCode::from(2);
        }
    }
    let format = match &cli.command {
        Command::Pants {
            report: Some(Report::Json),
            ..
        } => Some(Format::Json),
        Command::Pants {
            report: Some(Report::Text),
            ..
        } => Some(Format::Text),
        _ => cli.format,
    };
    let graph_text = matches!(cli.command, Command::Graph { out: None, .. });
    match run(cli) {
        Ok(out) => {
            let body = if format == Some(Format::Json) && !graph_text {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&out.json).expect("JSON output")
                )
            } else {
                out.text
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.violation as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
