use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semigraphoid::fixtures::FixtureSet;
use semigraphoid::geometry::{class_poset, is_simplicial_partition};
use semigraphoid::imset::{structural_witness, DEFAULT_DEGREE_CAP};
use semigraphoid::markov::{connectivity_check, fibers_up_to_degree, indispensability, prime_orbit};
use semigraphoid::semigraphoid::{sweep, CLASSIFICATION_HEADER};
use semigraphoid::verify::{checksums, criteria};
use semigraphoid::{
    certificate_report, closure, enumerate_all, enumerate_fiber, face_lattice, in_kernel, is_coarsest,
    is_combinatorial, is_semigraphoid, is_submodular, orbit, prime_contains_axioms, rank_test, statements_of_partition,
    text, vertices_from_facets, CiSpace, Error, MonomialPrime, StatementSet,
};

#[derive(Parser)]
#[command(name = "semigraphoid", version, about = "Semigraphoids, rank tests and the semigraphoid semigroup")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Ground-set size; inferred from the largest element in the input when
    /// omitted.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Write the embedded reference fixtures to this directory and exit.
    #[arg(long, value_name = "DIR")]
    export_fixtures: Option<PathBuf>,

    /// Worker threads for the enumeration sweep.
    #[arg(long, env = "SEMIGRAPHOID_THREADS", global = true, hide_env_values = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxiomFormat {
    /// `x + y = z + w`
    Eq,
    /// The four statements separated by spaces.
    List,
}

#[derive(Subcommand)]
enum Command {
    /// List the semigraphoid axioms of [n].
    Axioms {
        #[arg(long, value_enum, default_value = "eq")]
        format: AxiomFormat,
    },
    /// Decide whether a statement set is a semigraphoid.
    Check { file: PathBuf },
    /// Semigraphoid closure of a statement set.
    Closure { file: PathBuf },
    /// Decide whether a semigraphoid is coarsest.
    Coarsest { file: PathBuf },
    /// Decide submodularity, with a witness or a certificate.
    Submodular { file: PathBuf },
    /// Enumerate every semigraphoid of [n], n <= 4.
    Enumerate {
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Sweep [n] and classify the non-submodular semigraphoids.
    Classify,
    /// Membership of an imset in the semigroup and its real cone, and fibers.
    #[command(subcommand)]
    Imset(ImsetCommand),
    /// Moves in ker A: indispensability, orbits, fiber connectivity, primes.
    #[command(subcommand)]
    Markov(MarkovCommand),
    /// Rank tests, simpliciality and polytope face counts.
    #[command(subcommand)]
    Geometry(GeometryCommand),
    /// Run the reference reproduction suite.
    VerifyPaper {
        /// Include the n=4 sweep and classification table.
        #[arg(long)]
        full: bool,
        /// Read the fixtures from this directory instead of the embedded copies.
        #[arg(long, value_name = "DIR")]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ImsetCommand {
    /// Is the imset in the real cone of the elementary imsets?
    Structural { file: PathBuf },
    /// Is the imset a nonnegative integer combination of elementary imsets?
    Combinatorial { file: PathBuf },
    /// Every nonnegative integer preimage.
    Fiber {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum MarkovCommand {
    /// Is the move in ker A?
    Kernel { file: PathBuf },
    /// Is the fiber of the move's positive part exactly its two monomials?
    Indispensable {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        max_degree: usize,
    },
    /// The orbit of the move under relabelings of [n].
    Orbit { file: PathBuf },
    /// Fiber-graph connectivity of a basis on every fiber up to a degree.
    Connect {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Whether each listed monomial prime contains every axiom binomial.
    Primes { file: PathBuf },
}

#[derive(Subcommand)]
enum GeometryCommand {
    /// Rank test partition of a semigraphoid.
    Ranktest { file: PathBuf },
    /// Statements of a rank test partition.
    Statements { file: PathBuf },
    /// Whether every class of the semigraphoid's rank test is simplicial.
    Simplicial { file: PathBuf },
    /// Vertices, f-vector and facet statistics of a polytope.
    Fvector { file: PathBuf },
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

type CliResult = Result<Output, String>;

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn err(path: &Path) -> impl Fn(Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn statements_json(s: &StatementSet) -> Value {
    json!(s.statements().iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn statements_text(s: &StatementSet) -> String {
    s.to_string()
}

fn load_set(path: &Path, n: Option<usize>) -> Result<StatementSet, String> {
    text::parse_statement_set(&read_input(path)?, n).map_err(err(path))
}

fn cmd_axioms(n: Option<usize>, format: AxiomFormat) -> CliResult {
    let n = n.ok_or("axioms needs --n")?;
    if !(2..=6).contains(&n) {
        return Err(format!("--n must be between 2 and 6 for axioms (got {n})"));
    }
    let space = CiSpace::get(n).map_err(|e| e.to_string())?;
    let lines: Vec<String> = space
        .axioms()
        .iter()
        .map(|ax| match format {
            AxiomFormat::Eq => space.format_axiom(ax),
            AxiomFormat::List => ax.indices().iter().map(|&i| space.statement(i).to_string()).collect::<Vec<_>>().join(" "),
        })
        .collect();
    let text = lines.iter().map(|l| format!("{l}\n")).collect();
    Ok(Output::ok(text, json!({ "n": n, "count": lines.len(), "axioms": lines })))
}

fn cmd_check(path: &Path, n: Option<usize>) -> CliResult {
    let s = load_set(path, n)?;
    let space = s.space();
    let violated: Vec<String> = space
        .axioms()
        .iter()
        .filter(|ax| {
            let l = s.contains(ax.lhs.0) && s.contains(ax.lhs.1);
            let r = s.contains(ax.rhs.0) && s.contains(ax.rhs.1);
            l != r
        })
        .map(|ax| space.format_axiom(ax))
        .collect();
    debug_assert_eq!(violated.is_empty(), is_semigraphoid(&s));
    let verdict = if violated.is_empty() { "SEMIGRAPHOID" } else { "NOT_SEMIGRAPHOID" };
    let mut text = format!("{verdict}\n");
    for v in &violated {
        text.push_str(&format!("violated: {v}\n"));
    }
    Ok(Output::ok(
        text,
        json!({ "n": s.n(), "semigraphoid": violated.is_empty(), "violated": violated }),
    ))
}

fn cmd_closure(path: &Path, n: Option<usize>) -> CliResult {
    let c = closure(&load_set(path, n)?);
    Ok(Output::ok(
        statements_text(&c),
        json!({ "n": c.n(), "size": c.len(), "closure": statements_json(&c) }),
    ))
}

fn cmd_coarsest(path: &Path, n: Option<usize>) -> CliResult {
    let s = load_set(path, n)?;
    let c = is_coarsest(&s).map_err(err(path))?;
    let verdict = if c { "COARSEST" } else { "NOT_COARSEST" };
    Ok(Output::ok(format!("{verdict}\n"), json!({ "n": s.n(), "coarsest": c })))
}

fn cmd_submodular(path: &Path, n: Option<usize>) -> CliResult {
    let s = load_set(path, n)?;
    let d = is_submodular(&s).map_err(err(path))?;
    if d.submodular {
        let space = s.space();
        let w: Vec<String> = d.witness.unwrap_or_default().iter().map(|v| v.to_string()).collect();
        let n = space.n();
        let mut text = String::from("SUBMODULAR\n# submodular function w(K), tight exactly on the input\n");
        let mut by_subset = Vec::new();
        for (mask, v) in w.iter().enumerate() {
            let k = semigraphoid::Subset::from_mask(mask as u32);
            let label = if k.is_empty() { "0".to_string() } else { k.to_string() };
            text.push_str(&format!("w {label} {v}\n"));
            by_subset.push(json!({ "subset": label, "value": v }));
        }
        return Ok(Output::ok(text, json!({ "n": n, "submodular": true, "witness": by_subset })));
    }
    let cert = certificate_report(&s).map_err(err(path))?;
    let space = s.space();
    let terms: Vec<Value> = cert
        .terms
        .iter()
        .map(|(k, ax)| {
            json!({
                "multiplier": k,
                "lhs": [space.statement(ax.lhs.0).to_string(), space.statement(ax.lhs.1).to_string()],
                "rhs": [space.statement(ax.rhs.0).to_string(), space.statement(ax.rhs.1).to_string()],
            })
        })
        .collect();
    let forced: Vec<Value> = cert
        .forced_zero
        .iter()
        .map(|(k, st)| json!({ "coefficient": k, "statement": space.statement(*st).to_string() }))
        .collect();
    Ok(Output::ok(
        format!("NOT_SUBMODULAR\n{cert}"),
        json!({ "n": s.n(), "submodular": false, "certificate": terms, "forced_zero": forced }),
    ))
}

fn cmd_enumerate(n: Option<usize>, count: bool) -> CliResult {
    let n = n.ok_or("enumerate needs --n")?;
    let all = enumerate_all(n).map_err(|e| e.to_string())?;
    if count {
        return Ok(Output::ok(format!("{}\n", all.len()), json!({ "n": n, "count": all.len() })));
    }
    let lines: Vec<String> = all
        .iter()
        .map(|s| s.statements().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let text = lines.iter().map(|l| if l.is_empty() { "{}\n".to_string() } else { format!("{l}\n") }).collect();
    Ok(Output::ok(text, json!({ "n": n, "count": all.len(), "semigraphoids": lines })))
}

fn cmd_classify(n: Option<usize>) -> CliResult {
    let n = n.unwrap_or(4);
    let r = sweep(n).map_err(|e| e.to_string())?;
    let mut text = format!(
        "semigraphoids\t{}\nsubmodular\t{}\nnon_submodular\t{}\n{CLASSIFICATION_HEADER}\n",
        r.semigraphoids, r.submodular, r.non_submodular
    );
    let mut rows = Vec::new();
    for row in &r.table {
        text.push_str(&format!("{row}\n"));
        rows.push(json!({
            "size": row.size,
            "type": row.signature,
            "non_simplicial": row.non_simplicial,
            "simplicial": row.simplicial,
            "total": row.total(),
        }));
    }
    Ok(Output::ok(
        text,
        json!({
            "n": n,
            "semigraphoids": r.semigraphoids,
            "submodular": r.submodular,
            "non_submodular": r.non_submodular,
            "table": rows,
        }),
    ))
}

fn cmd_imset(sub: ImsetCommand, n: Option<usize>) -> CliResult {
    match sub {
        ImsetCommand::Structural { file } => {
            let b = text::parse_imset(&read_input(&file)?, n).map_err(err(&file))?;
            let w = structural_witness(&b).map_err(err(&file))?;
            let space = CiSpace::get(b.ground().n()).map_err(|e| e.to_string())?;
            let terms: Vec<(String, String)> = w
                .iter()
                .flatten()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (v.to_string(), space.statement(semigraphoid::StatementIndex(c)).to_string()))
                .collect();
            let verdict = if w.is_some() { "STRUCTURAL" } else { "NOT_STRUCTURAL" };
            let mut text = format!("{verdict}\n");
            for (v, s) in &terms {
                text.push_str(&format!("{v} {s}\n"));
            }
            let json_terms: Vec<Value> = terms.iter().map(|(v, s)| json!({ "coefficient": v, "statement": s })).collect();
            Ok(Output::ok(text, json!({ "structural": w.is_some(), "witness": json_terms })))
        }
        ImsetCommand::Combinatorial { file } => {
            let b = text::parse_imset(&read_input(&file)?, n).map_err(err(&file))?;
            let w = is_combinatorial(&b).map_err(err(&file))?;
            let text = match &w {
                Some(x) => format!("COMBINATORIAL\n{x}\n"),
                None => "NOT_COMBINATORIAL\n".to_string(),
            };
            Ok(Output::ok(
                text,
                json!({ "combinatorial": w.is_some(), "witness": w.map(|x| x.to_string()) }),
            ))
        }
        ImsetCommand::Fiber { file, max_degree } => {
            let b = text::parse_imset(&read_input(&file)?, n).map_err(err(&file))?;
            let f = enumerate_fiber(&b, max_degree).map_err(err(&file))?;
            let elems: Vec<String> = f.elements.iter().map(|e| e.to_string()).collect();
            let mut text = format!("size {}\n", elems.len());
            for e in &elems {
                text.push_str(&format!("{e}\n"));
            }
            Ok(Output::ok(text, json!({ "size": elems.len(), "elements": elems })))
        }
    }
}

fn cmd_markov(sub: MarkovCommand, n: Option<usize>) -> CliResult {
    match sub {
        MarkovCommand::Kernel { file } => {
            let m = text::parse_move(&read_input(&file)?, n).map_err(err(&file))?;
            let k = in_kernel(&m);
            let verdict = if k { "IN_KERNEL" } else { "NOT_IN_KERNEL" };
            Ok(Output::ok(format!("{verdict}\n"), json!({ "in_kernel": k })))
        }
        MarkovCommand::Indispensable { file, max_degree } => {
            let m = text::parse_move(&read_input(&file)?, n).map_err(err(&file))?;
            let r = indispensability(&m, max_degree).map_err(err(&file))?;
            let verdict = if r.indispensable { "INDISPENSABLE" } else { "DISPENSABLE" };
            Ok(Output::ok(
                format!("{verdict}\ndegree {}\nfiber_size {}\n", r.degree, r.fiber_size),
                json!({ "indispensable": r.indispensable, "degree": r.degree, "fiber_size": r.fiber_size }),
            ))
        }
        MarkovCommand::Orbit { file } => {
            let m = text::parse_move(&read_input(&file)?, n).map_err(err(&file))?;
            let o = orbit(&m);
            let mut text = format!("size {}\n", o.len());
            for mv in &o {
                text.push_str(&mv.to_string());
            }
            let moves: Vec<String> = o.iter().map(|m| m.to_string()).collect();
            Ok(Output::ok(text, json!({ "size": o.len(), "moves": moves })))
        }
        MarkovCommand::Connect { file, degree } => {
            let basis = text::parse_basis(&read_input(&file)?, n).map_err(err(&file))?;
            let n = basis.first().map(|m| m.n()).ok_or("empty basis file")?;
            let fibers = fibers_up_to_degree(n, degree).map_err(|e| e.to_string())?;
            let r = connectivity_check(&basis, &fibers, degree).map_err(err(&file))?;
            let bad: Vec<_> = r.disconnected().collect();
            let verdict = if bad.is_empty() { "CONNECTED" } else { "DISCONNECTED" };
            let mut text = format!("{verdict}\nfibers {}\ndisconnected {}\n", r.fibers.len(), bad.len());
            let mut json_bad = Vec::new();
            for fc in &bad {
                let target: Vec<String> = fc.target.terms().iter().map(|(c, s)| format!("{c}:{s}")).collect();
                text.push_str(&format!("# size {} components {}\n{}", fc.size, fc.components, fc.target));
                json_bad.push(json!({ "size": fc.size, "components": fc.components, "target": target }));
            }
            Ok(Output::ok(
                text,
                json!({ "connected": bad.is_empty(), "fibers": r.fibers.len(), "disconnected": json_bad }),
            ))
        }
        MarkovCommand::Primes { file } => {
            let input = read_input(&file)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (i, line) in input.lines().enumerate() {
                if line.split('#').next().unwrap_or("").trim().is_empty() {
                    continue;
                }
                let vars = text::parse_statement_set(line, n).map_err(|e| format!("{}: line {}: {e}", file.display(), i + 1))?;
                let p = MonomialPrime { variables: vars };
                let contains = prime_contains_axioms(&p);
                let orbit = prime_orbit(&p).len();
                let verdict = if contains { "CONTAINS_AXIOMS" } else { "MISSES_AXIOMS" };
                text.push_str(&format!("{verdict}\tcodim {}\torbit {orbit}\n", p.variables.len()));
                rows.push(json!({ "contains_axioms": contains, "codim": p.variables.len(), "orbit": orbit }));
            }
            Ok(Output::ok(text, json!({ "primes": rows })))
        }
    }
}

fn cmd_geometry(sub: GeometryCommand, n: Option<usize>) -> CliResult {
    match sub {
        GeometryCommand::Ranktest { file } => {
            let s = load_set(&file, n)?;
            let p = rank_test(&s).map_err(err(&file))?;
            let classes: Vec<Vec<String>> = p
                .classes()
                .iter()
                .map(|c| c.iter().map(|x| x.to_string()).collect())
                .collect();
            Ok(Output::ok(p.to_string(), json!({ "n": p.n(), "classes": classes })))
        }
        GeometryCommand::Statements { file } => {
            let p = text::parse_partition(&read_input(&file)?).map_err(err(&file))?;
            let s = statements_of_partition(&p).map_err(err(&file))?;
            Ok(Output::ok(statements_text(&s), json!({ "n": s.n(), "statements": statements_json(&s) })))
        }
        GeometryCommand::Simplicial { file } => {
            let s = load_set(&file, n)?;
            let p = rank_test(&s).map_err(err(&file))?;
            let simplicial = is_simplicial_partition(&p).map_err(err(&file))?;
            let verdict = if simplicial { "SIMPLICIAL" } else { "NOT_SIMPLICIAL" };
            let mut text = format!("{verdict}\n");
            let mut classes = Vec::new();
            for c in p.classes() {
                let poset = class_poset(c);
                text.push_str(&format!("{}\tcovers {}\t{}\n", c[0], poset.covers.len(), if poset.is_simplicial() { "simplicial" } else { "not_simplicial" }));
                classes.push(json!({ "first": c[0].to_string(), "size": c.len(), "covers": poset.covers.len(), "simplicial": poset.is_simplicial() }));
            }
            Ok(Output::ok(text, json!({ "simplicial": simplicial, "classes": classes })))
        }
        GeometryCommand::Fvector { file } => {
            let h = text::parse_polytope(&read_input(&file)?).map_err(err(&file))?;
            let v = vertices_from_facets(&h).map_err(err(&file))?;
            let lat = face_lattice(&h, &v);
            let f: Vec<String> = lat.f_vector.iter().map(|x| x.to_string()).collect();
            let mut text = format!("vertices {}\nf_vector ({})\n", v.len(), f.join(", "));
            let mut facets = Vec::new();
            for i in 0..lat.facets.len() {
                let s = lat.facet_stats(i);
                text.push_str(&format!("facet {}\tvertices {}\tedges {}\t2-faces {}\n", i + 1, s.vertices, s.edges, s.two_faces));
                facets.push(json!({ "vertices": s.vertices, "edges": s.edges, "two_faces": s.two_faces }));
            }
            Ok(Output::ok(
                text,
                json!({ "vertices": v.len(), "f_vector": lat.f_vector, "facets": facets }),
            ))
        }
    }
}

fn cmd_verify(full: bool, dir: Option<&Path>) -> CliResult {
    let f = match dir {
        Some(d) => FixtureSet::load(d).map_err(|e| format!("{}: {e}", d.display()))?,
        None => FixtureSet::embedded(),
    };
    let mut all = checksums(&f);
    let mut text = String::new();
    let mut groups = Vec::new();
    text.push_str(&format!("== fixture checksums\n{all}"));
    groups.push(json!({ "number": 0, "title": "fixture checksums", "pass": all.passed(), "checks": all.checks }));
    for c in criteria(&f, full) {
        text.push_str(&format!("== [{}] {}\n{}", c.number, c.title, c.report));
        groups.push(json!({ "number": c.number, "title": c.title, "pass": c.report.passed(), "checks": c.report.checks }));
        let mut named = c.report;
        for check in &mut named.checks {
            check.name = format!("[{}] {}", c.number, check.name);
        }
        all.extend(named);
    }
    let passed = all.passed();
    let first = all.first_failure().map(|c| c.name.clone());
    text.push_str(&match &first {
        None => format!("verify: PASS ({} checks)\n", all.checks.len()),
        Some(name) => format!("verify: FAIL (first failure: {name})\n"),
    });
    Ok(Output {
        text,
        json: json!({ "pass": passed, "first_failure": first, "groups": groups }),
        code: if passed { 0 } else { 1 },
    })
}

fn dispatch(cmd: Command, n: Option<usize>) -> CliResult {
    match cmd {
        Command::Axioms { format } => cmd_axioms(n, format),
        Command::Check { file } => cmd_check(&file, n),
        Command::Closure { file } => cmd_closure(&file, n),
        Command::Coarsest { file } => cmd_coarsest(&file, n),
        Command::Submodular { file } => cmd_submodular(&file, n),
        Command::Enumerate { count } => cmd_enumerate(n, count),
        Command::Classify => cmd_classify(n),
        Command::Imset(sub) => cmd_imset(sub, n),
        Command::Markov(sub) => cmd_markov(sub, n),
        Command::Geometry(sub) => cmd_geometry(sub, n),
        Command::VerifyPaper { full, fixtures } => cmd_verify(full, fixtures.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads.filter(|&t| t > 0) {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    if let Some(dir) = &cli.export_fixtures {
        if let Err(e) = FixtureSet::embedded().export(dir) {
            eprintln!("error: {}: {e}", dir.display());
            return ExitCode::from(2);
        }
        if cli.command.is_none() {
            return ExitCode::SUCCESS;
        }
    }
    let Some(cmd) = cli.command else {
        eprintln!("error: no subcommand given (see --help)");
        return ExitCode::from(2);
    };
    match dispatch(cmd, cli.n) {
        Ok(out) => {
            let body = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable"))
            } else {
                out.text
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
