//! Seeded experiments producing one CSV row per instance.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::calculus::{Calculus, System};
use crate::chu::{chu_calculus, prove_duality, sequent_system, translate_axiom, ChuParams};
use crate::cutfree::{lemma33_prove, Goal};
use crate::formula::{f, LanguageId};
use crate::frege::{FregeAxiom, FregeSystem};
use crate::gen;
use crate::horn::{horn_valid, random_horn, unit_prop_prove};
use crate::proof::{check_proof, Proof};
use crate::vass::{cover_bfs, cover_reduce, random_vass, reach_bfs, Bounds, Config, Mode, RandomVass, Reach};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    ChuAxioms,
    Duality,
    Horn,
    VassReduction,
    Lemma33,
}

impl Experiment {
    pub const ALL: [Experiment; 5] =
        [Experiment::ChuAxioms, Experiment::Duality, Experiment::Horn, Experiment::VassReduction, Experiment::Lemma33];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::ChuAxioms => "chu-axioms",
            Experiment::Duality => "duality",
            Experiment::Horn => "horn",
            Experiment::VassReduction => "vass-reduction",
            Experiment::Lemma33 => "lemma33",
        }
    }

    pub fn from_name(s: &str) -> Option<Experiment> {
        Experiment::ALL.iter().copied().find(|e| e.name() == s)
    }

    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            Experiment::ChuAxioms => vec![5, 10, 20, 40, 70, 100],
            Experiment::Duality => vec![5, 10, 15, 20],
            Experiment::Horn => vec![10, 50, 100, 500, 1000, 2000],
            Experiment::VassReduction => vec![3],
            Experiment::Lemma33 => vec![5, 15, 30, 60, 120],
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub sizes: Vec<usize>,
    /// Instances per size (per case, where the experiment has cases).
    pub samples: usize,
    pub seed: u64,
    /// Adds a wall-time column. Timed reports are not reproducible.
    pub timing: bool,
}

impl ExperimentSpec {
    pub fn new(experiment: Experiment, seed: u64) -> ExperimentSpec {
        ExperimentSpec { experiment, sizes: experiment.default_sizes(), samples: 10, seed, timing: false }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Row {
    pub instance: usize,
    pub case: String,
    pub size_param: usize,
    pub input: String,
    pub input_size: u64,
    pub proof_size: u64,
    pub proof_lines: u64,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_us: Option<u128>,
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("instance {instance} ({case}): {reason}")]
    Instance { instance: usize, case: String, reason: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

struct Measured {
    input: String,
    input_size: u64,
    proof_size: u64,
    proof_lines: u64,
    verdict: String,
}

fn checked(calc: &Calculus, p: &Proof, input: String, input_size: u64) -> Result<Measured, String> {
    let m = check_proof(calc, p, &[]).map_err(|v| v.to_string())?;
    Ok(Measured { input, input_size, proof_size: m.size, proof_lines: m.lines, verdict: "ok".into() })
}

/// Every (case, size) pair of the experiment with one fresh generator each.
fn instances(spec: &ExperimentSpec) -> Vec<(String, usize)> {
    let cases: Vec<String> = match spec.experiment {
        Experiment::ChuAxioms => {
            FregeAxiom::ALL.iter().filter(|a| home(**a).is_some()).map(|a| a.name().to_string()).collect()
        }
        Experiment::Duality => vec!["L_u".into(), "L_b".into(), "L_!".into()],
        Experiment::Lemma33 => Goal::ALL.iter().map(|g| g.name().to_string()).collect(),
        Experiment::Horn | Experiment::VassReduction => vec![spec.experiment.name().to_string()],
    };
    let mut out = Vec::new();
    for c in &cases {
        for &s in &spec.sizes {
            for _ in 0..spec.samples {
                out.push((c.clone(), s));
            }
        }
    }
    out
}

fn home(ax: FregeAxiom) -> Option<FregeSystem> {
    [FregeSystem::FLe, FregeSystem::CFLe, FregeSystem::CFLew, FregeSystem::MALL, FregeSystem::CLL]
        .into_iter()
        .find(|s| s.has_axiom(ax))
}

fn run_one(exp: Experiment, case: &str, size: usize, rng: &mut ChaCha8Rng) -> Result<Measured, String> {
    match exp {
        Experiment::ChuAxioms => {
            let ax = FregeAxiom::from_name(case).expect("case names come from the axiom table");
            let sys = home(ax).expect("filtered");
            let params = if ax == FregeAxiom::W { ChuParams::bot() } else { ChuParams::new(f("d"), f("n")) };
            let lang = sequent_system(sys).language();
            let subst = gen::random_substitution(rng, ax, lang, size, 3);
            let alpha = ax.instantiate(&subst);
            let p = translate_axiom(ax, &subst, &params, sys).map_err(|e| e.to_string())?;
            checked(&chu_calculus(sequent_system(sys), &params), &p, alpha.to_string(), alpha.size())
        }
        Experiment::Duality => {
            let (lang, sys) = match case {
                "L_u" => (LanguageId::U, System::CFLe),
                "L_b" => (LanguageId::B, System::MALL),
                _ => (LanguageId::Bang, System::CLL),
            };
            let params = ChuParams::bot();
            let a = gen::random_formula(rng, lang, size, 3);
            let d = prove_duality(&a, &params, sys).map_err(|e| e.to_string())?;
            checked(&chu_calculus(sys, &params), &d.dual, a.to_string(), a.size())
        }
        Experiment::Horn => {
            let s = random_horn(rng, size, 3);
            let valid = horn_valid(&s).map_err(|e| e.to_string())?;
            if !valid {
                return Ok(Measured {
                    input: s.to_string(),
                    input_size: s.size(),
                    proof_size: 0,
                    proof_lines: 0,
                    verdict: "invalid".into(),
                });
            }
            let p = unit_prop_prove(&s).map_err(|e| e.to_string())?;
            checked(&Calculus::new(System::LKu), &p, s.to_string(), s.size())
        }
        Experiment::VassReduction => {
            let shape = RandomVass { max_dim: size.clamp(1, 16), max_states: 4, max_rules: 6, ordinary: false };
            let v = random_vass(rng, shape);
            let q = v.states[0].clone();
            let r = v.states[rng.gen_range(0..v.states.len())].clone();
            let bounds = Bounds::default();
            let cover =
                cover_bfs(&v, &Config::zero(&q, v.d), &Config::zero(&r, v.d), bounds).map_err(|e| e.to_string())?;
            let (red, q_new) = cover_reduce(&v, &r).map_err(|e| e.to_string())?;
            let reach = reach_bfs(&red, &Config::zero(&q, v.d), &Config::zero(&q_new, v.d), Mode::Contractive, bounds)
                .map_err(|e| e.to_string())?;
            let conclusive = |x: &Reach| matches!(x, Reach::Found(_) | Reach::Absent { complete: true });
            let verdict = if !conclusive(&cover) || !conclusive(&reach) {
                "inconclusive"
            } else if cover.found() == reach.found() {
                "agree"
            } else {
                "disagree"
            };
            let steps = reach.run().map(|r| r.steps.len() as u64).unwrap_or(0);
            Ok(Measured {
                input: format!("{v}{q} -> {r}").replace('\n', "; "),
                input_size: v.rules.len() as u64,
                proof_size: steps,
                proof_lines: red.rules.len() as u64,
                verdict: format!("{verdict}:{}", if cover.found() { "coverable" } else { "not-coverable" }),
            })
        }
        Experiment::Lemma33 => {
            let goal = Goal::from_name(case).expect("case names come from the goal table");
            let a = gen::random_formula(rng, LanguageId::StarNn, size, 4);
            let p = lemma33_prove(&a, goal).map_err(|e| e.to_string())?;
            checked(&Calculus::new(System::G), &p, a.to_string(), a.size())
        }
    }
}

/// Runs every instance in a fixed order. Each instance draws from its own
/// generator seeded by `(seed, index)`, so rows do not depend on timing.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<Row>, ExperimentError> {
    let mut rows = Vec::new();
    for (i, (case, size)) in instances(spec).into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(i as u64);
        let t = Instant::now();
        let m = run_one(spec.experiment, &case, size, &mut rng).map_err(|reason| ExperimentError::Instance {
            instance: i,
            case: case.clone(),
            reason,
        })?;
        rows.push(Row {
            instance: i,
            case,
            size_param: size,
            input: m.input,
            input_size: m.input_size,
            proof_size: m.proof_size,
            proof_lines: m.proof_lines,
            verdict: m.verdict,
            wall_us: spec.timing.then(|| t.elapsed().as_micros()),
        });
    }
    Ok(rows)
}

/// Header row, then one row per instance; text fields are quoted.
pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::WriterBuilder::new().quote_style(csv::QuoteStyle::NonNumeric).from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
