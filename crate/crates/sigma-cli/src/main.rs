//! `sigma`: batch front end for sigma-core.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sigma_core::bounds::{self, MinWitness, PsiGraph};
use sigma_core::brown;
use sigma_core::characters::{abelianization, cyclic_min_stats, track, Character, Direction};
use sigma_core::combinators::{self, ComplementData, JoinWitness};
use sigma_core::linalg::{parse_rational, SubspaceQ, Q};
use sigma_core::oracle::ModelSpec;
use sigma_core::raag::{self, SimpleGraph};
use sigma_core::regions::SphereRegion;
use sigma_core::words::{parse_presentation, Letter, Presentation};
use sigma_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "sigma",
    version,
    about = "Exact computations of the invariant Sigma^1 of finitely generated groups"
)]
struct Cli {
    /// Output format; svg and csv apply to region results only.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    out: OutFormat,
    /// Worker threads for enumerations and sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Text,
    Svg,
    Csv,
}

#[derive(Args, Clone)]
struct PresentationArgs {
    /// File holding a presentation `< gens | relators >`.
    #[arg(long, conflicts_with = "inline")]
    presentation: Option<PathBuf>,
    /// Presentation given on the command line.
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Args, Clone)]
struct PointOrFull {
    #[command(flatten)]
    pres: PresentationArgs,
    /// Character values on the generators, e.g. `1,-2` or `1/2,0,3`.
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<String>,
    /// Sweep the whole circle (rank 2 only).
    #[arg(long, conflicts_with = "chi")]
    full: bool,
}

#[derive(Args, Clone)]
struct GraphArg {
    /// Edge-list file or a graph name such as `path:4`, `cycle:5`, `dodecahedron`, `bundle:3`.
    #[arg(long)]
    graph: String,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion-free rank of the abelianization and a character basis.
    Rank(PresentationArgs),
    /// Track and cyclic minimum of every relator.
    Track {
        #[command(flatten)]
        pres: PresentationArgs,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
    },
    /// Two-generator one-relator test.
    Brown(PointOrFull),
    /// The lower bound psi(R).
    Psi {
        #[command(flatten)]
        args: PointOrFull,
        #[arg(long)]
        no_symmetrize: bool,
    },
    /// The lower bound Psi(R).
    Bigpsi {
        #[command(flatten)]
        args: PointOrFull,
        #[arg(long)]
        no_symmetrize: bool,
    },
    /// Right-angled Artin groups.
    Raag {
        #[command(subcommand)]
        op: RaagOp,
    },
    /// Sigma^1 of a direct product of two factors.
    Product {
        /// `abelian:N`, `free:N`, `gpq:P,Q`, `raag:GRAPH` or a region JSON file.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Sigma^1 of a wreath product H wr Q from the ranks of H_ab and Q_ab.
    Wreath {
        #[arg(long)]
        h_rank: usize,
        #[arg(long)]
        q_rank: usize,
    },
    /// Join criterion for a group generated by subgroups.
    Join {
        #[arg(long)]
        input: PathBuf,
    },
    /// Finite generation of a normal subgroup containing the commutator subgroup.
    NormalTest {
        #[arg(long)]
        input: PathBuf,
    },
    /// Simultaneous supplement of a family of subspaces.
    Supplement {
        #[arg(long)]
        input: PathBuf,
    },
    /// Certificate search in a Cayley ball.
    Oracle {
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        /// Run the slice connectivity probe on the band `LO,HI` instead.
        #[arg(long, allow_hyphen_values = true)]
        band: Option<String>,
    },
    /// Psi graphs of a knot diagram given by Wirtinger triples.
    Wirtinger {
        #[arg(long)]
        input: PathBuf,
    },
    /// Emptiness of Sigma^1 from the shape of the presentation.
    Deficiency(PresentationArgs),
}

#[derive(Subcommand)]
enum RaagOp {
    /// Sigma^1 as a region, or a point test with --chi.
    Region {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
    },
    /// Minimal separating vertex sets.
    Minsep {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Largest co-rank of a finitely generated normal subgroup above G'.
    Corank {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// An explicit such normal subgroup.
    Normal {
        #[command(flatten)]
        graph: GraphArg,
    },
}

/// Result payload: JSON, a text rendering and, for region results, the region.
struct Outcome {
    json: Value,
    text: String,
    region: Option<SphereRegion>,
}

impl Outcome {
    fn region(r: SphereRegion) -> Self {
        Outcome {
            json: r.to_json(),
            text: r.to_text(),
            region: Some(r),
        }
    }

    fn boolean(b: bool, json: Value) -> Self {
        Outcome {
            json,
            text: format!("{b}\n"),
            region: None,
        }
    }
}

/// Everything read from disk goes into the inputs digest.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input("cli", format!("cannot read {}: {e}", path.display())))?;
        self.hasher.update(path.to_string_lossy().as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    fn presentation(&mut self, a: &PresentationArgs) -> Result<Presentation> {
        match (&a.presentation, &a.inline) {
            (Some(p), _) => parse_presentation(&self.read(p)?),
            (None, Some(s)) => parse_presentation(s),
            (None, None) => Err(Error::input(
                "cli",
                "give --presentation FILE or --inline TEXT",
            )),
        }
    }

    fn graph(&mut self, spec: &str) -> Result<SimpleGraph> {
        let path = Path::new(spec);
        if path.is_file() {
            raag::parse_edge_list(&self.read(path)?)
        } else {
            raag::named_graph(spec)
        }
    }

    fn json(&mut self, path: &Path) -> Result<Value> {
        let text = self.read(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::input("cli", format!("{}: {e}", path.display())))
    }
}

fn rat(x: &Q) -> Value {
    Value::String(x.to_string())
}

fn rats(v: &[Q]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn letter(l: Letter, names: &[String]) -> Value {
    Value::String(l.display_with(names))
}

fn witness_json(w: &MinWitness, names: &[String]) -> Value {
    json!({
        "relator": w.relator_index + 1,
        "positions": w.positions,
        "pair": w.involved_pair.map(|(a, b)| [letter(a, names), letter(b, names)]),
        "triple": w.zero_triple.map(|(a, b, c)| [letter(a, names), letter(b, names), letter(c, names)]),
    })
}

fn graph_json(g: &PsiGraph, names: &[String]) -> Value {
    json!({
        "vertices": g.vertices.iter().map(|&l| letter(l, names)).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|&(a, b)| [letter(a, names), letter(b, names)]).collect::<Vec<_>>(),
        "connected": g.is_connected(),
    })
}

fn single_relator(p: &Presentation) -> Result<&sigma_core::words::Word> {
    match p.relators() {
        [r] => Ok(r),
        _ => Err(Error::precondition(
            "brown",
            format!(
                "exactly one relator is required, found {}",
                p.relators().len()
            ),
        )),
    }
}

fn character_on(p: &Presentation, chi: &str) -> Result<Character> {
    let chi = Character::parse(chi)?;
    chi.validate(p)?;
    Ok(chi)
}

fn int_rows(v: &[Vec<i64>]) -> Value {
    json!(v)
}

fn subspaces(n: usize, rows: &[Vec<Vec<i64>>]) -> Result<Vec<SubspaceQ>> {
    rows.iter().map(|r| SubspaceQ::new(n, r)).collect()
}

fn factor_region(spec: &str, inputs: &mut Inputs) -> Result<SphereRegion> {
    let path = Path::new(spec);
    if path.is_file() {
        return SphereRegion::from_json(&inputs.json(path)?);
    }
    let model = ModelSpec::parse(spec)?;
    match &model {
        ModelSpec::FreeAbelian(m) => Ok(SphereRegion::all(m.n as i64 - 1)),
        ModelSpec::Free(m) => Ok(match m.n {
            0 => SphereRegion::empty(-1),
            1 => SphereRegion::all(0),
            n => SphereRegion::empty(n as i64 - 1),
        }),
        ModelSpec::Raag(m) => raag::raag_complement(&m.graph),
        ModelSpec::Gpq(g) => {
            if g.p == g.q {
                return Ok(SphereRegion::all(1));
            }
            let mut pts = Vec::new();
            for s in [1, -1] {
                if model.ground_truth(&Character::from_ints(&[0, s]))? {
                    pts.push(Direction::new(vec![s])?);
                }
            }
            SphereRegion::point_set(0, pts)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JoinInput {
    parts: Vec<bool>,
    #[serde(default)]
    witnesses: Vec<JoinWitness>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceInput {
    n: usize,
    complement: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    points: Vec<Vec<i64>>,
    #[serde(default)]
    image: Vec<Vec<i64>>,
}

fn parse_input<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::input("cli", format!("{what}: {e}")))
}

fn run(command: &Command, inputs: &mut Inputs) -> Result<Outcome> {
    match command {
        Command::Rank(pa) => {
            let p = inputs.presentation(pa)?;
            let ab = abelianization(&p);
            let basis: Vec<Value> = ab.character_basis.iter().map(|v| rats(v)).collect();
            let torsion: Vec<String> = ab.torsion.iter().map(|t| t.to_string()).collect();
            let mut text = format!("rank {}\n", ab.torsion_free_rank);
            if !torsion.is_empty() {
                text.push_str(&format!("torsion {}\n", torsion.join(" ")));
            }
            for v in &ab.character_basis {
                text.push_str(&format!("basis {}\n", Character::new(v.clone())));
            }
            Ok(Outcome {
                json: json!({"torsion_free_rank": ab.torsion_free_rank, "torsion": torsion, "character_basis": basis}),
                text,
                region: None,
            })
        }
        Command::Track { pres, chi } => {
            let p = inputs.presentation(pres)?;
            let chi = Character::parse(chi)?;
            chi.check_dim(p.n_gens(), "characters")?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for (i, r) in p.relators().iter().enumerate() {
                let t = track(r, &chi)?;
                let s = cyclic_min_stats(&t)?;
                text.push_str(&format!(
                    "relator {}: track ({}) min {} at {:?} multiplicity {} consecutive {}\n",
                    i + 1,
                    t.values()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    s.min_value,
                    s.positions,
                    s.multiplicity,
                    s.consecutive
                ));
                rows.push(json!({
                    "relator": i + 1,
                    "track": rats(t.values()),
                    "min": rat(&s.min_value),
                    "positions": s.positions,
                    "multiplicity": s.multiplicity,
                    "consecutive": s.consecutive,
                }));
            }
            Ok(Outcome {
                json: Value::Array(rows),
                text,
                region: None,
            })
        }
        Command::Brown(a) => {
            let p = inputs.presentation(&a.pres)?;
            let r = single_relator(&p)?;
            if a.full {
                return Ok(Outcome::region(brown::brown_full_circle(r)?));
            }
            let chi = a
                .chi
                .as_deref()
                .ok_or_else(|| Error::input("cli", "give --chi LIST or --full"))?;
            let chi = character_on(&p, chi)?;
            let b = brown::brown_point_test(r, &chi)?;
            Ok(Outcome::boolean(b, json!({ "member": b })))
        }
        Command::Psi {
            args,
            no_symmetrize,
        } => {
            let p = inputs.presentation(&args.pres)?;
            let sym = !no_symmetrize;
            if args.full {
                return Ok(Outcome::region(bounds::psi_full_circle(&p, sym)?));
            }
            let chi = args
                .chi
                .as_deref()
                .ok_or_else(|| Error::input("cli", "give --chi LIST or --full"))?;
            let chi = character_on(&p, chi)?;
            let r = bounds::psi_point_test(p.relators(), &chi, sym)?;
            let names = p.generator_names();
            let letters: Vec<Value> = r
                .letter_witnesses
                .iter()
                .map(|(y, w)| json!({"letter": letter(*y, names), "witness": witness_json(w, names)}))
                .collect();
            let zeros: Vec<Value> = r
                .zero_witnesses
                .iter()
                .map(|(g, w)| json!({"generator": names[*g], "witness": witness_json(w, names)}))
                .collect();
            Ok(Outcome::boolean(
                r.member,
                json!({
                    "member": r.member,
                    "t": r.t.map(|l| letter(l, names)),
                    "letter_witnesses": letters,
                    "zero_witnesses": zeros,
                }),
            ))
        }
        Command::Bigpsi {
            args,
            no_symmetrize,
        } => {
            let p = inputs.presentation(&args.pres)?;
            let sym = !no_symmetrize;
            if args.full {
                return Ok(Outcome::region(bounds::big_psi_full_circle(&p, sym)?));
            }
            let chi = args
                .chi
                .as_deref()
                .ok_or_else(|| Error::input("cli", "give --chi LIST or --full"))?;
            let chi = character_on(&p, chi)?;
            let r = bounds::big_psi_point_test(p.relators(), &chi, sym)?;
            let names = p.generator_names();
            let zeros: Vec<Value> = r
                .zero_witnesses
                .iter()
                .map(|(g, w)| json!({"generator": names[*g], "witness": witness_json(w, names)}))
                .collect();
            let unmatched: Vec<&String> = r
                .unmatched_zero_generators
                .iter()
                .map(|&g| &names[g])
                .collect();
            Ok(Outcome::boolean(
                r.member,
                json!({
                    "member": r.member,
                    "graph": graph_json(&r.graph, names),
                    "zero_witnesses": zeros,
                    "unmatched_zero_generators": unmatched,
                }),
            ))
        }
        Command::Raag { op } => run_raag(op, inputs),
        Command::Product { left, right } => {
            let l = ComplementData::from_region(&factor_region(left, inputs)?)?;
            let r = ComplementData::from_region(&factor_region(right, inputs)?)?;
            Ok(Outcome::region(
                combinators::product_complement(&l, &r)?.to_region()?,
            ))
        }
        Command::Wreath { h_rank, q_rank } => Ok(Outcome::region(
            combinators::wreath_complement(*h_rank, *q_rank)?.to_region()?,
        )),
        Command::Join { input } => {
            let j: JoinInput = parse_input(inputs.json(input)?, "join input")?;
            let witnesses = j
                .witnesses
                .iter()
                .map(|w| {
                    let vals = w
                        .values
                        .iter()
                        .map(|s| parse_rational(s))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((w.u, w.v, vals))
                })
                .collect::<Result<Vec<_>>>()?;
            let b = combinators::join_test(&j.parts, &witnesses)?;
            Ok(Outcome::boolean(b, json!({ "member": b })))
        }
        Command::NormalTest { input } => {
            let s: SubspaceInput = parse_input(inputs.json(input)?, "normal-test input")?;
            let points = s
                .points
                .into_iter()
                .map(Direction::new)
                .collect::<Result<Vec<_>>>()?;
            let c = ComplementData::new(s.n, subspaces(s.n, &s.complement)?, points)?;
            let image = SubspaceQ::new(s.n, &s.image)?;
            let b = combinators::fg_normal_test_data(&c, &image)?;
            Ok(Outcome::boolean(b, json!({ "finitely_generated": b })))
        }
        Command::Supplement { input } => {
            let s: SubspaceInput = parse_input(inputs.json(input)?, "supplement input")?;
            let us = subspaces(s.n, &s.complement)?;
            let corank = combinators::max_corank(&us)?;
            let sup = combinators::simultaneous_supplement(&us, s.n)?;
            Ok(Outcome {
                json: json!({"corank": corank, "basis": int_rows(sup.basis())}),
                text: format!("corank {corank}\nsupplement {sup}\n"),
                region: None,
            })
        }
        Command::Oracle {
            model,
            chi,
            radius,
            band,
        } => {
            let m = ModelSpec::parse(model)?;
            let chi = Character::parse(chi)?;
            let known = m.ground_truth(&chi).ok();
            if let Some(band) = band {
                let ends = band
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?;
                let [lo, hi] = ends.as_slice() else {
                    return Err(Error::input("cli", "--band takes LO,HI"));
                };
                let r = m.probe(&chi, *radius, lo, hi)?;
                eprintln!(
                    "note: the probe inspects a finite ball and proves nothing about Sigma^1"
                );
                return Ok(Outcome {
                    json: json!({
                        "diagnostic": true,
                        "radius": r.radius,
                        "vertices": r.vertices,
                        "components": r.components,
                        "identity_component_size": r.identity_component_size,
                        "component_sizes": r.component_sizes,
                    }),
                    text: format!(
                        "components {} (identity component {}, {} vertices, radius {})\n",
                        r.components, r.identity_component_size, r.vertices, r.radius
                    ),
                    region: None,
                });
            }
            let out = m.search(&chi, *radius)?;
            let names = match &m {
                ModelSpec::Gpq(_) => vec!["a".to_string(), "t".to_string()],
                _ => sigma_core::words::default_names(m.n_gens()),
            };
            match out.certificate {
                Some(cert) => {
                    let c = cert.to_json(&names);
                    let mut text = format!("certificate t = {}\n", c["t"].as_str().unwrap_or(""));
                    for (y, w) in &cert.paths {
                        text.push_str(&format!(
                            "{} : {}\n",
                            y.display_with(&names),
                            w.display_with(&names)
                        ));
                    }
                    Ok(Outcome {
                        json: json!({"found": true, "radius": out.radius, "t": c["t"], "paths": c["paths"]}),
                        text,
                        region: None,
                    })
                }
                None => {
                    match known {
                        Some(k) => eprintln!(
                            "note: no certificate within radius {}; by the ground-truth table the point is {}",
                            out.radius,
                            if k { "a member" } else { "not a member" }
                        ),
                        None => eprintln!(
                            "note: no certificate within radius {}; this does NOT establish non-membership",
                            out.radius
                        ),
                    }
                    Ok(Outcome {
                        json: json!({"found": false, "radius": out.radius}),
                        text: format!("no certificate within radius {}\n", out.radius),
                        region: None,
                    })
                }
            }
        }
        Command::Wirtinger { input } => {
            let text = inputs.read(input)?;
            let (m, beta, sigma) = bounds::parse_wirtinger(&text)?;
            let w = bounds::wirtinger_graphs(m, &beta, &sigma)?;
            let names = w.presentation.generator_names();
            let agrees = w.formula_agrees();
            Ok(Outcome {
                json: json!({
                    "presentation": w.presentation.to_string(),
                    "g_plus": graph_json(&w.g_plus, names),
                    "g_minus": graph_json(&w.g_minus, names),
                    "plus_member": w.plus_member,
                    "minus_member": w.minus_member,
                    "formula_agrees": agrees,
                }),
                text: format!(
                    "{}\nplus {}\nminus {}\nformula agrees {}\n",
                    w.presentation, w.plus_member, w.minus_member, agrees
                ),
                region: None,
            })
        }
        Command::Deficiency(pa) => {
            let p = inputs.presentation(pa)?;
            match bounds::emptiness_by_deficiency(&p) {
                Some(c) => {
                    let v =
                        serde_json::to_value(&c).map_err(|e| Error::input("cli", e.to_string()))?;
                    Ok(Outcome {
                        json: json!({"empty": true, "certificate": v}),
                        text: format!(
                            "empty ({:?}, prime {:?}, relators {:?})\n",
                            c.case, c.prime, c.relators
                        ),
                        region: None,
                    })
                }
                None => Ok(Outcome {
                    json: json!({"empty": null}),
                    text: "no conclusion\n".into(),
                    region: None,
                }),
            }
        }
    }
}

fn run_raag(op: &RaagOp, inputs: &mut Inputs) -> Result<Outcome> {
    match op {
        RaagOp::Region { graph, chi } => {
            let g = inputs.graph(&graph.graph)?;
            match chi {
                Some(chi) => {
                    let chi = Character::parse(chi)?;
                    let b = raag::raag_point_test(&g, &chi)?;
                    Ok(Outcome::boolean(b, json!({ "member": b })))
                }
                None => Ok(Outcome::region(raag::raag_complement(&g)?)),
            }
        }
        RaagOp::Minsep { graph } => {
            let g = inputs.graph(&graph.graph)?;
            let seps = raag::minimal_separating_subsets(&g);
            let classes = raag::size_classes(&g, &seps);
            let lists: Vec<Vec<usize>> = seps.iter().map(|&s| raag::set_to_vec(s)).collect();
            let mut text = format!("{} minimal separating subsets\n", lists.len());
            for (m, c) in &classes {
                text.push_str(&format!("class {m}: {c}\n"));
            }
            for l in &lists {
                text.push_str(&format!("{l:?}\n"));
            }
            Ok(Outcome {
                json: json!({"count": lists.len(), "size_classes": classes, "separators": lists}),
                text,
                region: None,
            })
        }
        RaagOp::Corank { graph } => {
            let g = inputs.graph(&graph.graph)?;
            let c = raag::max_fg_corank(&g);
            Ok(Outcome {
                json: json!({ "corank": c }),
                text: format!("{c}\n"),
                region: None,
            })
        }
        RaagOp::Normal { graph } => {
            let g = inputs.graph(&graph.graph)?;
            let n = raag::explicit_normal_subgroup(&g)?;
            let mut text = format!("corank {}\ntransversal {}\n", n.corank, n.transversal);
            for r in &n.rows {
                text.push_str(&format!("{r:?}\n"));
            }
            Ok(Outcome {
                json: json!({"corank": n.corank, "rows": n.rows, "transversal": n.transversal}),
                text,
                region: None,
            })
        }
    }
}

fn emit(format: OutFormat, outcome: &Outcome, report: Value) -> Result<String> {
    match format {
        OutFormat::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        )),
        OutFormat::Text => Ok(outcome.text.clone()),
        OutFormat::Svg | OutFormat::Csv => {
            let r = outcome.region.as_ref().ok_or_else(|| {
                Error::input("cli", "svg and csv output apply to region results only")
            })?;
            if format == OutFormat::Svg {
                r.to_svg()
            } else {
                r.to_csv()
            }
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cli: cannot start {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    let mut inputs = Inputs {
        hasher: Sha256::new(),
    };
    let words: Vec<&String> = args.iter().skip(1).collect();
    for w in &words {
        inputs.hasher.update(w.as_bytes());
        inputs.hasher.update([0]);
    }
    let start = Instant::now();
    let result = run(&cli.command, &mut inputs);
    let elapsed = start.elapsed();
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_input_error() { 2 } else { 3 });
        }
    };
    let digest = hex::encode(inputs.hasher.finalize());
    let report = json!({
        "command": std::iter::once("sigma".to_string())
            .chain(words.iter().map(|s| s.to_string()))
            .collect::<Vec<_>>()
            .join(" "),
        "inputs_digest": digest,
        "result": outcome.json,
        "version": env!("CARGO_PKG_VERSION"),
    });
    match emit(cli.out, &outcome, report) {
        Ok(s) => {
            print!("{s}");
            eprintln!("elapsed: {elapsed:.2?}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
