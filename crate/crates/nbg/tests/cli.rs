use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nbg::io::{game_to_json, parse_game, AnyGame};
use nbg_core::instances;
use nbg_core::scalar::q;
use nbg_core::{Game, Rational};
use tempfile::TempDir;

fn nbg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbg")).args(args).env_remove("NBG_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_game(dir: &TempDir, name: &str, game: &Game<Rational>) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, game_to_json(game).unwrap()).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_exit_codes() {
    let ok = nbg(&["verify", "builtin:dilemma", "--dist", "3/4,1/4"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("equilibrium: yes"));

    let no = nbg(&["verify", "builtin:dilemma", "--dist", "1/2,1/2"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("costs: (1, 1/2 (≈0.5))"));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2, \"r\": 1,\n \"costs\": [").unwrap();
    let err = nbg(&["verify", arg(&bad), "--dist", "1,0"]);
    assert_eq!(err.status.code(), Some(2));
    assert!(stderr(&err).contains("line 2, column"), "{}", stderr(&err));
}

#[test]
fn verify_reads_distribution_files_and_delta() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "tri.json", &instances::directed_triangle(q(2, 1)));
    let dist = dir.path().join("x.json");
    std::fs::write(&dist, r#"["1/3", "1/3", "1/3"]"#).unwrap();
    assert_eq!(nbg(&["verify", arg(&game), arg(&dist)]).status.code(), Some(0));
    let strong = nbg(&["verify", arg(&game), arg(&dist), "--delta", "1/10"]);
    assert_eq!(strong.status.code(), Some(1));
    assert!(stdout(&strong).contains("-strong: no"));
}

#[test]
fn uniform_cost_path_solution() {
    let dir = TempDir::new().unwrap();
    let p6 = dir.path().join("p6.json");
    let made = nbg(&["family", "path", "--n", "6", "--alpha", "1/4", "--out", arg(&p6)]);
    assert_eq!(made.status.code(), Some(0));
    let out = nbg(&["solve", arg(&p6), "--method", "uniform-cost", "--kind", "path"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("15/76"), "{text}");
    assert!(text.contains("71/304"), "{text}");
}

#[test]
fn supports_finds_three_equilibria() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "poa.json", &instances::poa_example(q(2, 1)));
    let out = nbg(&["solve", arg(&game), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["equilibria"].as_array().unwrap().len(), 3);
}

#[test]
fn potential_needs_symmetry() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "tri.json", &instances::directed_triangle(q(2, 1)));
    let out = nbg(&["solve", arg(&game), "--method", "potential"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("symmetric"));
}

#[test]
fn metrics_values() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "poa.json", &instances::poa_example(q(9, 1)));
    let out = nbg(&["metrics", arg(&game), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["poa_u"], serde_json::json!(5));
    assert_eq!(v["exact_u"], serde_json::json!(true));

    let game = write_game(&dir, "pos.json", &instances::pos_family(q(1, 100)));
    let out = nbg(&["metrics", arg(&game), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pos: Rational = v["pos_u"].as_str().unwrap().parse().unwrap();
    assert_eq!(pos, q(101, 51));

    assert_eq!(nbg(&["metrics", "builtin:dilemma"]).status.code(), Some(2));
}

#[test]
fn reproduce_all_passes() {
    let out = nbg(&["reproduce", "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
    assert_eq!(nbg(&["reproduce", "--section", "9.9"]).status.code(), Some(2));
}

#[test]
fn scan_csv_and_counterexamples() {
    let out = nbg(&["scan-det", "path", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,alpha,det,unique,nonneg\n"));
    assert!(text.contains("2,1/20,19/10,true,true"));
    // P3 at α = 3/4 has no uniform-cost equilibrium.
    let out = nbg(&["scan-det", "path", "--n-min", "3", "--n-max", "3", "--alphas", "3/4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("counterexample: 3,3/4,0"), "{}", stderr(&out));
}

#[test]
fn dynamics_and_curve() {
    let out = nbg(&["dynamics", "builtin:dilemma", "--x0", "0.8,0.2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["x"][0].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let out = nbg(&["curve", "builtin:dilemma", "--points", "4"]);
    assert_eq!(stdout(&out).lines().next(), Some("x1,C1,C2"));
    assert_eq!(stdout(&out).lines().count(), 6);
}

#[test]
fn kernels_of_a_directed_four_cycle() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("c4.txt");
    std::fs::write(&d, "# four-cycle\n4\n1 2\n2 3\n3 4\n4 1\n").unwrap();
    let out = nbg(&["kernels", arg(&d), "--alpha", "3/2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("kernels: 2"), "{text}");
    assert!(text.contains("discrepancies: 0"), "{text}");
}

#[test]
fn seeds_and_determinism() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "c5.json", &nbg_core::closed_forms::make_family(
        nbg_core::closed_forms::GraphFamily::Cycle(5),
        q(2, 1),
        q(1, 1),
    )
    .unwrap());
    let run = |seed: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_nbg"));
        cmd.args(["solve", arg(&game), "--method", "potential", "--format", "json"]).env_remove("NBG_SEED");
        if let Some(s) = seed {
            cmd.env("NBG_SEED", s);
        }
        if let Some(s) = flag {
            cmd.args(["--seed", s]);
        }
        stdout(&cmd.output().unwrap())
    };
    let a = run(None, None);
    assert_eq!(a, run(None, None));
    assert!(a.contains("\"seed\": 0"));
    let env = run(Some("42"), None);
    assert!(env.contains("\"seed\": 42"));
    assert_eq!(env, run(None, Some("42")));
}

mod round_trip {
    use super::*;
    use nbg_core::equilibrium::verify_equilibrium;
    use nbg_core::supports::solve_affine_by_supports;
    use nbg_core::{InfluenceMatrix, MassDistribution, VertexCostFn};
    use proptest::prelude::*;

    fn game_strategy() -> impl Strategy<Value = Game<Rational>> {
        (1usize..=4, any::<bool>(), any::<u64>()).prop_map(|(n, symmetric, seed)| {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let costs = (0..n)
                .map(|_| match rng.gen_range(0..3) {
                    0 => VertexCostFn::Constant(q(rng.gen_range(0..5), 3)),
                    1 => VertexCostFn::Affine { slope: q(rng.gen_range(0..7), 4), intercept: q(rng.gen_range(0..5), 4) },
                    _ => VertexCostFn::Polynomial((0..3).map(|_| q(rng.gen_range(0..5), 2)).collect()),
                })
                .collect();
            let mut entries = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && (!symmetric || i < j) && rng.gen::<f64>() < 0.5 {
                        entries.push((i, j, q(rng.gen_range(1..9), 4)));
                    }
                }
            }
            let influence = if symmetric {
                InfluenceMatrix::symmetric(n, entries).unwrap()
            } else {
                InfluenceMatrix::new(n, entries).unwrap()
            };
            Game::graphical(q(rng.gen_range(1..4), 1), costs, influence).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn serialize_and_reload(game in game_strategy()) {
            let text = game_to_json(&game).unwrap();
            let AnyGame::Exact(back) = parse_game(&text, "round trip").unwrap() else {
                panic!("exact game reloaded as float");
            };
            prop_assert_eq!(game_to_json(&back).unwrap(), text);
            prop_assert_eq!(back.classify(), game.classify());
            let x = MassDistribution::uniform(game.n(), game.r().clone());
            prop_assert_eq!(back.cost_vector(&x).unwrap(), game.cost_vector(&x).unwrap());
            let zero = q(0, 1);
            prop_assert_eq!(
                verify_equilibrium(&back, &x, &zero).unwrap().is_equilibrium,
                verify_equilibrium(&game, &x, &zero).unwrap().is_equilibrium
            );
            if game.affine_costs().is_some() {
                prop_assert_eq!(
                    solve_affine_by_supports(&back, 16).unwrap(),
                    solve_affine_by_supports(&game, 16).unwrap()
                );
            }
        }
    }
}
