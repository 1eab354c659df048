use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sublogic::calculus::{Calculus, System};
use sublogic::chu::{
    chu_calculus, chu_s, chu_t, classify_conservative, conservativity_pipeline, prove_duality, sequent_system,
    translate_axiom, translate_frege_proof, ChuParams,
};
use sublogic::cutfree::{
    assemble_sn, audit_sn, clique_color_goal, feasible_deduction, lemma33_prove, translate_lknn_to_g, Goal,
};
use sublogic::experiment::{run_experiment, write_csv, Experiment, ExperimentSpec};
use sublogic::formula::{parse_formula, Formula, LanguageId};
use sublogic::frege::{parse_frege_proof, FregeAxiom, FregeSystem, Substitution};
use sublogic::gen;
use sublogic::hard;
use sublogic::horn::{horn_valid, random_horn, unit_prop_prove, HornError};
use sublogic::proof::{check_proof, proof_from_json, proof_to_json, Proof};
use sublogic::search::{boolean_valid, bounded_search, decide_with_cap, lknn_prove, SearchBudget, Verdict};
use sublogic::sequent::{parse_sequent, Sequent};
use sublogic::vass::{
    cover_bfs, cover_reduce, encode_sequent, parse_config, parse_vass, random_vass, reach_bfs, run_to_proof, Bounds,
    Mode, RandomVass, Reach, Run, Step, Vass,
};

#[derive(Parser)]
#[command(name = "sublogic", version, about = "Proof kernel and proof-size experiments for substructural logics")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Visit budget for proof search.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a proof file.
    Check {
        proof: PathBuf,
        /// Overrides the calculus named in the file.
        #[arg(long)]
        calculus: Option<String>,
        /// Sequents allowed as hypotheses.
        #[arg(long = "hyp")]
        hyps: Vec<String>,
    },
    /// Generate formula families, random formulas, sequents and machines.
    Gen(GenArgs),
    /// Chu translations of formulas, axioms and Frege proofs.
    #[command(subcommand)]
    Chu(ChuCmd),
    /// Decide and prove implicational Horn sequents.
    #[command(subcommand)]
    Horn(HornCmd),
    /// Reachability, coverability and sequent encodings of VASS.
    #[command(subcommand)]
    Vass(VassCmd),
    /// Cut-free proofs in G and their translations.
    #[command(subcommand)]
    Cutfree(CutfreeCmd),
    /// Decision procedures and bounded proof search.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Run an experiment and write a CSV report.
    Bench {
        #[arg(value_parser = experiment_name)]
        experiment: Experiment,
        /// Comma-separated size parameters.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Add a wall-time column (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

fn experiment_name(s: &str) -> Result<Experiment, String> {
    Experiment::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
        format!("unknown experiment; expected one of {}", names.join(", "))
    })
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Clique,
    Color,
    CliqueColor,
    CliqueColorSequent,
    Alpha,
    Beta,
    Theta,
    ThetaStar,
    ThetaBot,
    /// A random formula of `--lang`.
    Formula,
    /// A random implicational Horn sequent.
    Horn,
    /// A random machine in the text format.
    Vass,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Defaults to the integer square root of n.
    #[arg(long)]
    k: Option<usize>,
    /// Number of colors; defaults to k.
    #[arg(long)]
    m: Option<usize>,
    /// Print size counts as CSV instead of the object.
    #[arg(long)]
    stats: bool,
    #[arg(long, default_value = "u")]
    lang: String,
    #[arg(long, default_value_t = 10)]
    size: usize,
    #[arg(long, default_value_t = 3)]
    atoms: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 3)]
    states: usize,
    #[arg(long, default_value_t = 4)]
    rules: usize,
    #[arg(long)]
    ordinary: bool,
}

fn conjuncts(f: &Formula) -> usize {
    match f.as_op(sublogic::BinOp::And) {
        Some((a, b)) => conjuncts(a) + conjuncts(b),
        None => 1,
    }
}

fn gen(g: &GenArgs, rng: &mut ChaCha8Rng) -> Result<String, Failure> {
    let (n, k) = (g.n, g.k.unwrap_or_else(|| hard::isqrt(g.n)));
    let m = g.m.unwrap_or(k);
    let seq = |s: Sequent| {
        (
            s.to_string(),
            s.ant.iter().map(conjuncts).sum::<usize>(),
            s.size(),
            s.formulas().flat_map(|f| f.vars()).collect::<std::collections::BTreeSet<_>>().len(),
        )
    };
    let form = |f: Formula| (f.to_string(), conjuncts(&f), f.size(), f.vars().len());
    let (text, clauses, size, atoms) = match g.kind {
        GenKind::Clique => form(hard::clique_formula(n, k).map_err(usage)?),
        GenKind::Color => form(hard::color_formula(n, m).map_err(usage)?),
        GenKind::CliqueColor => form(hard::clique_color_implication(n, k).map_err(usage)?),
        GenKind::CliqueColorSequent => seq(hard::clique_color_sequent(n, k).map_err(usage)?),
        GenKind::Alpha => form(hard::alpha(n, k).map_err(usage)?),
        GenKind::Beta => form(hard::beta(n, k).map_err(usage)?),
        GenKind::Theta => form(hard::theta(n, k).map_err(usage)?),
        GenKind::ThetaStar => form(hard::theta_star(n, k).map_err(usage)?),
        GenKind::ThetaBot => form(hard::theta_bot(n).map_err(usage)?),
        GenKind::Formula => {
            let lang = LanguageId::parse(&g.lang).ok_or_else(|| usage(format!("unknown language '{}'", g.lang)))?;
            form(gen::random_formula(rng, lang, g.size, g.atoms))
        }
        GenKind::Horn => seq(random_horn(rng, g.size, 3)),
        GenKind::Vass => {
            let shape = RandomVass { max_dim: g.dim, max_states: g.states, max_rules: g.rules, ordinary: g.ordinary };
            let v = random_vass(rng, shape);
            (v.to_string(), v.rules.len(), v.rules.len() as u64, v.d)
        }
    };
    if !g.stats {
        return Ok(text);
    }
    let name = g.kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    Ok(format!("kind,n,k,m,clauses,size,atoms\n{name},{n},{k},{m},{clauses},{size},{atoms}\n"))
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value = "bot")]
    d: String,
    #[arg(long, default_value = "bot")]
    n: String,
}

impl ParamArgs {
    fn params(&self) -> Result<ChuParams, Failure> {
        Ok(ChuParams::new(formula(&self.d)?, formula(&self.n)?))
    }
}

#[derive(Subcommand)]
enum ChuCmd {
    /// Print A^t and A^s.
    TranslateFormula {
        formula: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Proof of the duality sequent A^t, A^s => D.
    Duality {
        formula: String,
        #[arg(long)]
        system: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Proof of => alpha^t for an axiom instance, e.g. --subst 'A:=p,B:=q*r'.
    TranslateAxiom {
        #[arg(long)]
        axiom: String,
        #[arg(long)]
        system: String,
        #[arg(long, default_value = "")]
        subst: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Proof of => A^t from a Hilbert-style proof file.
    TranslateProof {
        file: PathBuf,
        #[arg(long)]
        system: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Conservativity class of a formula.
    Classify { formula: String },
    /// Intuitionistic proof of a conservative conclusion.
    Pipeline {
        file: PathBuf,
        #[arg(long)]
        system: String,
    },
}

#[derive(Subcommand)]
enum HornCmd {
    /// Least-model validity.
    #[command(alias = "valid")]
    Check { sequent: String },
    /// LK_u proof by unit propagation, of SEQUENT or of the encoding of a
    /// machine given as `--from-vass FILE Q R`.
    Prove {
        #[arg(required_unless_present = "from_vass")]
        sequent: Option<String>,
        #[arg(long, num_args = 3, value_names = ["FILE", "Q", "R"], conflicts_with = "sequent")]
        from_vass: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Contractive,
    Expansive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Plain => Mode::Plain,
            ModeArg::Contractive => Mode::Contractive,
            ModeArg::Expansive => Mode::Expansive,
        }
    }
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value_t = 8)]
    cap: u64,
    #[arg(long, default_value_t = 50_000)]
    max_configs: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds { component_cap: self.cap, max_configs: self.max_configs }
    }
}

#[derive(Subcommand)]
enum VassCmd {
    /// Breadth-first reachability, e.g. --from 'q:0,0' --to 'r:0,0'.
    Reach {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "plain")]
        mode: ModeArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Breadth-first coverability.
    Cover {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// The machine whose contractive reachability decides coverability of `target`.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// The sequent (/\ Th) /\ 1, q => r.
    Encode {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// FL_ec proof for a run. Steps are `r<k>` (rule k), `e<i>` (expand
    /// counter i) and `c<i>` (contract); without --run an expansive run is
    /// searched for.
    RunToProof {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        run: Option<String>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

#[derive(Subcommand)]
enum CutfreeCmd {
    /// Tree-like G proof of A => 1, 0 => A, => A \/ ~A or A => A * A.
    Lemma33 {
        formula: String,
        #[arg(long, default_value = "em")]
        goal: String,
    },
    /// LK_nn proof file to a G proof.
    Translate { proof: PathBuf },
    /// G proof file to an FL_e proof with the initial sequents moved left.
    Deduce { proof: PathBuf },
    /// Assemble S_n from an LK_nn proof of the clique-color sequent.
    AssembleSn {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Complete search for calculi without contraction.
    Decide {
        sequent: String,
        #[arg(long)]
        calculus: String,
    },
    /// Cut-free search bounded by sequent size and contractions.
    Bounded {
        sequent: String,
        #[arg(long)]
        calculus: String,
        #[arg(long, default_value_t = 30)]
        size_cap: u64,
        #[arg(long, default_value_t = 2)]
        contractions: usize,
    },
    /// Boolean tautology check.
    Taut { formula: String },
    /// LK_nn proof of a classically valid negation normal form sequent.
    Lknn { sequent: String },
}

/// Exit status 1 for a negative verdict or violation, 2 for bad input.
enum Failure {
    Verdict(String),
    Usage(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn verdict(e: impl std::fmt::Display) -> Failure {
    Failure::Verdict(e.to_string())
}

fn formula(s: &str) -> Result<Formula, Failure> {
    parse_formula(s).map_err(usage)
}

fn sequent(s: &str) -> Result<Sequent, Failure> {
    parse_sequent(s).map_err(usage)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn system(s: &str) -> Result<System, Failure> {
    System::from_name(s).ok_or_else(|| usage(format!("unknown system '{s}'")))
}

fn frege_system(s: &str) -> Result<FregeSystem, Failure> {
    FregeSystem::from_name(s).ok_or_else(|| usage(format!("unknown Hilbert-style system '{s}'")))
}

fn calculus(s: &str) -> Result<Calculus, Failure> {
    s.parse().map_err(usage)
}

fn load_proof(path: &PathBuf) -> Result<(Calculus, Proof), Failure> {
    proof_from_json(&read(path)?).map_err(usage)
}

fn load_vass(path: &PathBuf) -> Result<Vass, Failure> {
    parse_vass(&read(path)?).map_err(usage)
}

fn parse_subst(text: &str) -> Result<Substitution, Failure> {
    let mut s = Substitution::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once(":=").ok_or_else(|| usage(format!("expected X:=formula, got '{part}'")))?;
        s.insert(k.trim().to_string(), formula(v)?);
    }
    Ok(s)
}

fn parse_run(v: &Vass, from: sublogic::vass::Config, text: &str) -> Result<Run, Failure> {
    let mut steps = Vec::new();
    for tok in text.split([',', ' ']).filter(|t| !t.is_empty()) {
        let (kind, idx) = tok.split_at(1);
        let i: usize = idx.parse().map_err(|_| usage(format!("bad step '{tok}'")))?;
        steps.push(match kind {
            "r" if i < v.rules.len() => Step::Rule(i),
            "e" if i < v.d => Step::Expand(i),
            "c" if i < v.d => Step::Contract(i),
            _ => return Err(usage(format!("bad step '{tok}'"))),
        });
    }
    Ok(Run { start: from, steps })
}

fn render_run(r: &Run) -> String {
    r.steps
        .iter()
        .map(|s| match s {
            Step::Rule(k) => format!("r{k}"),
            Step::Expand(i) => format!("e{i}"),
            Step::Contract(i) => format!("c{i}"),
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn proved(calc: &Calculus, v: Verdict) -> Result<String, Failure> {
    match v {
        Verdict::Proved(p) => Ok(proof_to_json(calc, &p)),
        Verdict::NotProvable => Err(verdict("not provable")),
        Verdict::Exhausted { visited } => Err(verdict(format!("search budget exhausted after {visited} sequents"))),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    Ok(match &cli.cmd {
        Cmd::Check { proof, calculus: over, hyps } => {
            let (named, p) = load_proof(proof)?;
            let calc = match over {
                Some(c) => calculus(c)?,
                None => named,
            };
            let hyps = hyps.iter().map(|h| sequent(h)).collect::<Result<Vec<_>, _>>()?;
            let m = check_proof(&calc, &p, &hyps).map_err(verdict)?;
            let mut conclusion = p.conclusion().to_string();
            if conclusion.len() > 160 {
                let cut = (0..=157).rev().find(|&i| conclusion.is_char_boundary(i)).unwrap_or(0);
                conclusion.replace_range(cut.., "...");
            }
            format!(
                "ok {calc}: {conclusion} ; size {} lines {} nodes {} tree-like {}",
                m.size, m.lines, m.node_count, m.tree_like
            )
        }
        Cmd::Gen(g) => gen(g, &mut rng)?,
        Cmd::Chu(c) => match c {
            ChuCmd::TranslateFormula { formula: a, params } => {
                let (a, p) = (formula(a)?, params.params()?);
                format!("t: {}\ns: {}", chu_t(&a, &p), chu_s(&a, &p))
            }
            ChuCmd::Duality { formula: a, system: s, params } => {
                let (a, p, s) = (formula(a)?, params.params()?, system(s)?);
                let d = prove_duality(&a, &p, s).map_err(usage)?;
                proof_to_json(&chu_calculus(s, &p), &d.dual)
            }
            ChuCmd::TranslateAxiom { axiom, system: s, subst, params } => {
                let ax = FregeAxiom::from_name(axiom).ok_or_else(|| usage(format!("unknown axiom '{axiom}'")))?;
                let (sys, p) = (frege_system(s)?, params.params()?);
                let proof = translate_axiom(ax, &parse_subst(subst)?, &p, sys).map_err(usage)?;
                proof_to_json(&chu_calculus(sequent_system(sys), &p), &proof)
            }
            ChuCmd::TranslateProof { file, system: s, params } => {
                let fp = parse_frege_proof(&read(file)?).map_err(usage)?;
                let (sys, p) = (frege_system(s)?, params.params()?);
                let proof = translate_frege_proof(&fp, &p, sys).map_err(verdict)?;
                proof_to_json(&chu_calculus(sequent_system(sys), &p), &proof)
            }
            ChuCmd::Classify { formula: a } => classify_conservative(&formula(a)?).name().to_string(),
            ChuCmd::Pipeline { file, system: s } => {
                let fp = parse_frege_proof(&read(file)?).map_err(usage)?;
                let sys = frege_system(s)?;
                let proof = conservativity_pipeline(&fp, sys).map_err(verdict)?;
                proof_to_json(&Calculus::new(sequent_system(sys).intuitionistic()), &proof)
            }
        },
        Cmd::Horn(h) => match h {
            HornCmd::Check { sequent: s } => {
                let s = sequent(s)?;
                if horn_valid(&s).map_err(usage)? {
                    "valid".into()
                } else {
                    return Err(verdict("not valid"));
                }
            }
            HornCmd::Prove { sequent: s, from_vass } => {
                let goal = match (s, from_vass) {
                    (Some(s), _) => sequent(s)?,
                    (None, Some(args)) => {
                        let v = load_vass(&PathBuf::from(&args[0]))?;
                        encode_sequent(&v, &args[1], &args[2]).map_err(usage)?
                    }
                    (None, None) => return Err(usage("give a sequent or --from-vass")),
                };
                let p = unit_prop_prove(&goal).map_err(|e| match e {
                    HornError::Invalid { .. } => verdict(e),
                    _ => usage(e),
                })?;
                proof_to_json(&Calculus::new(System::LKu), &p)
            }
        },
        Cmd::Vass(v) => vass(v)?,
        Cmd::Cutfree(c) => match c {
            CutfreeCmd::Lemma33 { formula: a, goal } => {
                let g = Goal::from_name(goal).ok_or_else(|| usage(format!("unknown goal '{goal}'")))?;
                let p = lemma33_prove(&formula(a)?, g).map_err(usage)?;
                proof_to_json(&Calculus::new(System::G), &p)
            }
            CutfreeCmd::Translate { proof } => {
                let (_, p) = load_proof(proof)?;
                let g = translate_lknn_to_g(&p).map_err(verdict)?;
                proof_to_json(&Calculus::new(System::G), &g)
            }
            CutfreeCmd::Deduce { proof } => {
                let (_, p) = load_proof(proof)?;
                let d = feasible_deduction(&p).map_err(verdict)?;
                proof_to_json(&Calculus::new(System::FLe), &d.proof)
            }
            CutfreeCmd::AssembleSn { n } => {
                let goal = clique_color_goal(*n).map_err(usage)?;
                let p = lknn_prove(&goal).map_err(verdict)?;
                let a = assemble_sn(*n, &p).map_err(verdict)?;
                audit_sn(&a).map_err(verdict)?;
                proof_to_json(&Calculus::new(System::FLe), &a.proof)
            }
        },
        Cmd::Search(s) => {
            let budget = cli.budget;
            match s {
                SearchCmd::Decide { sequent: s, calculus: c } => {
                    let calc = calculus(c)?;
                    if calc.system.contraction() {
                        return Err(usage(format!("{calc} has contraction; use `search bounded`")));
                    }
                    proved(&calc, decide_with_cap(&calc, &sequent(s)?, budget))?
                }
                SearchCmd::Bounded { sequent: s, calculus: c, size_cap, contractions } => {
                    let calc = calculus(c)?;
                    let b = SearchBudget { max_weight: *size_cap, contractions: *contractions, max_visits: budget };
                    proved(&calc, bounded_search(&calc, &sequent(s)?, b))?
                }
                SearchCmd::Taut { formula: a } => match boolean_valid(&formula(a)?.forgetful()).map_err(usage)? {
                    true => "tautology".into(),
                    false => return Err(verdict("not a tautology")),
                },
                SearchCmd::Lknn { sequent: s } => {
                    let p = lknn_prove(&sequent(s)?).map_err(verdict)?;
                    proof_to_json(&Calculus::new(System::LKnn), &p)
                }
            }
        }
        Cmd::Bench { experiment, sizes, samples, timing } => {
            let mut spec = ExperimentSpec::new(*experiment, cli.seed);
            if !sizes.is_empty() {
                spec.sizes = sizes.clone();
            }
            spec.samples = *samples;
            spec.timing = *timing;
            let rows = run_experiment(&spec).map_err(verdict)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(usage)?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
    })
}

fn vass(cmd: &VassCmd) -> Result<String, Failure> {
    let reach_text = |r: Reach| match r {
        Reach::Found(run) => Ok(format!("found {}", render_run(&run))),
        Reach::Absent { complete: true } => Err(verdict("absent")),
        Reach::Absent { complete: false } => Err(verdict("absent within bounds (search was cut short)")),
    };
    match cmd {
        VassCmd::Reach { file, from, to, mode, bounds } => {
            let v = load_vass(file)?;
            let (a, b) = (parse_config(from, v.d).map_err(usage)?, parse_config(to, v.d).map_err(usage)?);
            reach_text(reach_bfs(&v, &a, &b, (*mode).into(), bounds.bounds()).map_err(usage)?)
        }
        VassCmd::Cover { file, from, to, bounds } => {
            let v = load_vass(file)?;
            let (a, b) = (parse_config(from, v.d).map_err(usage)?, parse_config(to, v.d).map_err(usage)?);
            reach_text(cover_bfs(&v, &a, &b, bounds.bounds()).map_err(usage)?)
        }
        VassCmd::Reduce { file, target } => {
            let (red, q_new) = cover_reduce(&load_vass(file)?, target).map_err(usage)?;
            Ok(format!("# target state {q_new}\n{red}"))
        }
        VassCmd::Encode { file, from, to } => {
            Ok(encode_sequent(&load_vass(file)?, from, to).map_err(usage)?.to_string())
        }
        VassCmd::RunToProof { file, from, to, run, bounds } => {
            let v = load_vass(file)?;
            let start = parse_config(from, v.d).map_err(usage)?;
            let r = match (run, to) {
                (Some(text), _) => parse_run(&v, start, text)?,
                (None, Some(to)) => {
                    let end = parse_config(to, v.d).map_err(usage)?;
                    match reach_bfs(&v, &start, &end, Mode::Expansive, bounds.bounds()).map_err(usage)? {
                        Reach::Found(r) => r,
                        _ => return Err(verdict("no run found")),
                    }
                }
                (None, None) => return Err(usage("give --run or --to")),
            };
            let p = run_to_proof(&v, &r).map_err(verdict)?;
            Ok(proof_to_json(&Calculus::new(System::FLec), &p))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let res = match &cli.out {
                Some(path) => fs::write(path, text.as_bytes()),
                None => {
                    let mut out = io::stdout().lock();
                    out.write_all(text.as_bytes())
                        .and_then(|_| if text.ends_with('\n') { Ok(()) } else { writeln!(out) })
                }
            };
            match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(Failure::Verdict(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
