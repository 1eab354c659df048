use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sublogic::calculus::{Calculus, System};
use sublogic::chu::{chu_calculus, classify_conservative, prove_duality, sequent_system, translate_axiom, ChuParams};
use sublogic::cutfree::{lemma33_prove, Goal};
use sublogic::formula::{parse_formula, Formula, LanguageId};
use sublogic::frege::{FregeAxiom, FregeSystem};
use sublogic::gen;
use sublogic::horn::{horn_valid, least_model, random_horn, unit_prop_prove};
use sublogic::proof::{check_proof, proof_from_json, proof_to_json};
use sublogic::search::{boolean_valid, decide_with_cap, Verdict};
use sublogic::sequent::{interpretation, parse_sequent};
use sublogic::vass::{
    cover_bfs, cover_reduce, decontract_run, random_contractive_run, random_vass, reach_bfs, run_to_proof, Bounds,
    Config, Mode, RandomVass, Reach, Run, Step,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lang() -> impl Strategy<Value = LanguageId> {
    prop_oneof![
        Just(LanguageId::U),
        Just(LanguageId::B),
        Just(LanguageId::Bang),
        Just(LanguageId::P),
        Just(LanguageId::Nn),
        Just(LanguageId::StarNn),
    ]
}

fn dual_case() -> impl Strategy<Value = (LanguageId, System)> {
    prop_oneof![
        Just((LanguageId::U, System::FLe)),
        Just((LanguageId::U, System::CFLe)),
        Just((LanguageId::B, System::MALL)),
        Just((LanguageId::Bang, System::CLL)),
    ]
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn display_parse_round_trip(seed: u64, lang in lang(), size in 1usize..40) {
        let f = gen::random_formula(&mut rng(seed), lang, size, 4);
        let back = parse_formula(&f.to_string()).unwrap();
        prop_assert_eq!(&back, &f);
        // Hash-consing: structurally equal formulas share one node.
        prop_assert!(back.ptr_eq(&f));
        prop_assert!(f.in_language(lang));
    }

    #[test]
    fn forgetful_preserves_size_bound(seed: u64, size in 1usize..30) {
        let f = gen::random_formula(&mut rng(seed), LanguageId::Bang, size, 3);
        let g = f.forgetful();
        prop_assert!(g.size() <= f.size());
        prop_assert!(g.in_language(LanguageId::U) || g.in_language(LanguageId::B));
    }

    #[test]
    fn duality_proofs_check_and_stay_linear(seed: u64, (lang, sys) in dual_case(), size in 1usize..25, named: bool) {
        let a = gen::random_formula(&mut rng(seed), lang, size, 3);
        let params = if named && sys != System::CLL {
            ChuParams::new(Formula::atom("d"), Formula::atom("n"))
        } else {
            ChuParams::bot()
        };
        let d = prove_duality(&a, &params, sys).unwrap();
        let calc = chu_calculus(sys, &params);
        for p in d.all() {
            let m = check_proof(&calc, p, &[]).unwrap();
            prop_assert!(m.lines <= 60 * a.size(), "{} lines for |A| = {}", m.lines, a.size());
        }
    }

    #[test]
    fn axiom_translations_check(seed: u64, idx in 0usize..FregeAxiom::ALL.len(), size in 1usize..30) {
        let ax = FregeAxiom::ALL[idx];
        let home = [FregeSystem::FLe, FregeSystem::CFLe, FregeSystem::CFLew, FregeSystem::MALL, FregeSystem::CLL]
            .into_iter()
            .find(|s| s.has_axiom(ax));
        prop_assume!(home.is_some());
        let sys = home.unwrap();
        let params = if ax == FregeAxiom::W { ChuParams::bot() } else { ChuParams::new(Formula::atom("d"), Formula::atom("n")) };
        let mut r = rng(seed);
        let subst = gen::random_substitution(&mut r, ax, sequent_system(sys).language(), size, 3);
        let p = translate_axiom(ax, &subst, &params, sys).unwrap();
        check_proof(&chu_calculus(sequent_system(sys), &params), &p, &[]).unwrap();
        let alpha = ax.instantiate(&subst);
        prop_assert_eq!(p.conclusion().conclusion().cloned(), Some(sublogic::chu::chu_t(&alpha, &params)));
    }

    #[test]
    fn fully_conservative_generator_is_classified(seed: u64, size in 1usize..40) {
        let f = gen::random_fully_conservative(&mut rng(seed), LanguageId::Bang, size, 3);
        prop_assert_eq!(classify_conservative(&f), sublogic::chu::ConservativityClass::FullyConservative);
    }

    #[test]
    fn horn_proofs_exist_exactly_for_valid_sequents(seed: u64, size in 3usize..200) {
        let s = random_horn(&mut rng(seed), size, 3);
        let valid = horn_valid(&s).unwrap();
        let proof = unit_prop_prove(&s);
        prop_assert_eq!(valid, proof.is_ok());
        if let Ok(p) = proof {
            let m = check_proof(&Calculus::new(System::LKu), &p, &[]).unwrap();
            prop_assert_eq!(p.conclusion(), &s);
            prop_assert!(m.size <= s.size() * s.size() * 2);
        }
        // The least model never contains atoms that do not occur.
        let atoms: std::collections::BTreeSet<String> = s.formulas().flat_map(|f| f.vars()).collect();
        prop_assert!(least_model(&s).unwrap().is_subset(&atoms));
    }

    #[test]
    fn horn_agrees_with_truth_tables_on_small_inputs(seed: u64, size in 3usize..25) {
        let s = random_horn(&mut rng(seed), size, 2);
        // Horn validity is validity in the affine-free Boolean reading.
        if let Ok(b) = boolean_valid(&interpretation(&s).forgetful()) {
            prop_assert_eq!(horn_valid(&s).unwrap(), b);
        }
    }

    #[test]
    fn decided_proofs_are_sound(seed: u64, weight in 2usize..12) {
        let s = gen::random_micro_sequent(&mut rng(seed), 2, weight);
        let calc = Calculus::new(System::FLe);
        if let Verdict::Proved(p) = decide_with_cap(&calc, &s, 20_000) {
            check_proof(&calc, &p, &[]).unwrap();
            prop_assert_eq!(p.conclusion(), &s);
            prop_assert_eq!(boolean_valid(&interpretation(&s).forgetful()), Ok(true));
        }
    }

    #[test]
    fn json_round_trip_preserves_proofs(seed: u64, size in 1usize..20, g in 0usize..4) {
        let a = gen::random_formula(&mut rng(seed), LanguageId::StarNn, size, 3);
        let p = lemma33_prove(&a, Goal::ALL[g]).unwrap();
        let calc = Calculus::new(System::G);
        let (calc2, q) = proof_from_json(&proof_to_json(&calc, &p)).unwrap();
        prop_assert_eq!(&calc2, &calc);
        prop_assert_eq!(check_proof(&calc, &p, &[]).unwrap(), check_proof(&calc, &q, &[]).unwrap());
        prop_assert!(check_proof(&calc, &q, &[]).unwrap().tree_like);
    }

    #[test]
    fn tampering_is_detected(seed: u64, size in 1usize..15, victim in any::<prop::sample::Index>()) {
        let a = gen::random_formula(&mut rng(seed), LanguageId::StarNn, size, 3);
        let mut p = lemma33_prove(&a, Goal::Em).unwrap();
        let i = victim.index(p.nodes.len());
        let mut ant: Vec<Formula> = p.nodes[i].conclusion.ant.iter().cloned().collect();
        ant.push(Formula::atom("intruder"));
        p.nodes[i].conclusion = sublogic::Sequent::from_vecs(ant, p.nodes[i].conclusion.suc.iter().cloned().collect());
        prop_assert!(check_proof(&Calculus::new(System::G), &p, &[]).is_err());
    }

    #[test]
    fn reduction_preserves_coverability(seed: u64) {
        let mut r = rng(seed);
        let v = random_vass(&mut r, RandomVass { max_dim: 2, max_states: 3, max_rules: 5, ordinary: false });
        let q = v.states[0].clone();
        let target = v.states[v.states.len() - 1].clone();
        let b = Bounds { component_cap: 6, max_configs: 20_000 };
        let cover = cover_bfs(&v, &Config::zero(&q, v.d), &Config::zero(&target, v.d), b).unwrap();
        let (red, q_new) = cover_reduce(&v, &target).unwrap();
        let reach = reach_bfs(&red, &Config::zero(&q, v.d), &Config::zero(&q_new, v.d), Mode::Contractive, b).unwrap();
        let conclusive = |x: &Reach| matches!(x, Reach::Found(_) | Reach::Absent { complete: true });
        if conclusive(&cover) && conclusive(&reach) {
            prop_assert_eq!(cover.found(), reach.found());
        }
    }

    #[test]
    fn decontraction_reaches_a_larger_configuration(seed: u64, len in 0usize..15) {
        let mut r = rng(seed);
        let v = random_vass(&mut r, RandomVass { max_dim: 2, max_states: 3, max_rules: 5, ordinary: false });
        let start = Config::zero(&v.states[0], v.d);
        let run = random_contractive_run(&mut r, &v, &start, len, 0.3);
        let end = v.run_end(&run, Mode::Contractive).unwrap();
        let (plain, extra) = decontract_run(&v, &run).unwrap();
        prop_assert!(plain.steps.iter().all(|s| matches!(s, Step::Rule(_))));
        let plain_end = v.run_end(&plain, Mode::Plain).unwrap();
        prop_assert_eq!(&plain_end.state, &end.state);
        let lifted: Vec<u64> = end.vector.iter().zip(&extra).map(|(a, b)| a + b).collect();
        prop_assert_eq!(plain_end.vector, lifted);
    }

    #[test]
    fn plain_runs_become_checked_proofs(seed: u64, len in 0usize..12) {
        let mut r = rng(seed);
        let v = random_vass(&mut r, RandomVass { max_dim: 2, max_states: 3, max_rules: 5, ordinary: true });
        let start = Config::zero(&v.states[0], v.d);
        let walk = random_contractive_run(&mut r, &v, &start, len, 0.0);
        let run = Run { start, steps: walk.steps };
        let p = run_to_proof(&v, &run).unwrap();
        check_proof(&Calculus::new(System::FLec), &p, &[]).unwrap();
        check_proof(&Calculus::new(System::RLL), &p, &[]).unwrap();
    }
}

#[test]
fn parse_rejects_garbage() {
    for bad in ["", "p ->", "(p", "p q", "=> =>", "p * * q"] {
        assert!(parse_sequent(bad).is_err() || parse_formula(bad).is_err(), "{bad}");
    }
}
