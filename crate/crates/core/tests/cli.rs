use regretlab::cli::{run, EXIT_LIMIT, EXIT_OK, EXIT_USAGE};
use regretlab::generators::Example;

fn cli(args: &[&str]) -> regretlab::cli::Report {
    let mut full = vec!["regretlab"];
    full.extend_from_slice(args);
    run(full)
}

#[test]
fn solve_travelers_dilemma() {
    let r = cli(&["solve", "--gen", "travelers-dilemma", "--p", "2", "--concept", "rm-pure"]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("fixed point after 2 round(s) of change: {97} x {97}"), "{}", r.stdout);
}

#[test]
fn solve_json_is_stable() {
    let args = ["solve", "--gen", "staircase", "--n", "4", "--format", "json"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["fixed_point"], serde_json::json!([["a1"], ["a1"]]));
}

#[test]
fn compare_table() {
    let r = cli(&["compare", "--gen", "travelers-dilemma", "--p", "2"]);
    assert_eq!(r.status, EXIT_OK);
    let line = |name: &str| r.stdout.lines().find(|l| l.starts_with(name)).unwrap().to_string();
    assert!(line("RM ").contains("{97} x {97}"));
    assert!(line("WD ").contains("{2} x {2}"));
    assert!(line("SD ").contains("(everything)"));
    assert!(line("Nash").contains("(2,2)"));
}

#[test]
fn every_generator_is_reachable() {
    for name in Example::NAMES {
        let r = cli(&["regret", "--gen", name]);
        assert_eq!(r.status, EXIT_OK, "{}: {}", name, r.stderr);
    }
}

#[test]
fn mixed_solve_and_regret() {
    let r = cli(&["solve", "--gen", "mixed-multiround", "--n", "3", "--mixed", "--oracle"]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("1/2 a11 + 1/2 a12"));
    let r = cli(&["regret", "--gen", "asym-matching-pennies", "--mixed", "--oracle"]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("player 1: minimax regret 35 at 7/8 a + 1/8 b"), "{}", r.stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["solve"]).status, EXIT_USAGE);
    assert_eq!(cli(&["solve", "--gen", "nonsense"]).status, EXIT_USAGE);
    assert_eq!(cli(&["solve", "--gen", "bertrand", "--p", "3"]).status, EXIT_USAGE);
    assert_eq!(cli(&["solve", "--gen", "rps", "--game", "x.json"]).status, EXIT_USAGE);
    assert_eq!(cli(&["solve", "--gen", "travelers-dilemma", "--p", "1"]).status, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).status, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).status, EXIT_OK);
}

#[test]
fn computation_limits() {
    let r = cli(&["solve", "--gen", "repeated-pd", "--rounds", "4"]);
    assert_eq!(r.status, EXIT_LIMIT, "{}", r.stderr);
    let r = cli(&["solve", "--gen", "mixed-multiround", "--n", "3", "--mixed", "--cap", "2"]);
    assert_eq!(r.status, EXIT_LIMIT, "{}", r.stderr);
    let r = cli(&["solve", "--gen", "mixed-multiround", "--n", "3", "--mixed", "--rounds-limit", "1"]);
    assert_eq!(r.status, EXIT_LIMIT, "{}", r.stderr);
}

#[test]
fn other_concepts() {
    for concept in ["wd", "sd", "just", "nash"] {
        let r = cli(&["solve", "--gen", "sd-vs-rm", "--concept", concept, "--oracle"]);
        assert_eq!(r.status, EXIT_OK, "{}: {}", concept, r.stderr);
    }
    let r = cli(&["solve", "--gen", "hawk-dove", "--concept", "nash", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["equilibria"], serde_json::json!([["d", "h"], ["h", "d"]]));
}

#[test]
fn bayes_auction() {
    let r = cli(&["bayes", "--auction", "first-price", "--values", "2,4,6"]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("type 6      keeps {3}"), "{}", r.stdout);
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/private_values.json");
    let r = cli(&["bayes", "--game", file, "--format", "json"]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
}

#[test]
fn game_file_round() {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/chicken.json");
    let r = cli(&["solve", "--game", file, "--oracle"]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("{swerve} x {swerve}"));
}

#[test]
fn reproduce_record_then_check() {
    let dir = std::env::temp_dir().join(format!("regretlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("manifest.json");
    let p = path.to_str().unwrap();
    let r = cli(&["reproduce", "--group", "staircase", "--record", p]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
    let r = cli(&["reproduce", "--group", "staircase", "--check", p, "--format", "json"]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
    std::fs::write(&path, r#"[{"id": "staircase-3", "computed": "something else"}]"#).unwrap();
    let r = cli(&["reproduce", "--group", "staircase", "--check", p]);
    assert_eq!(r.status, regretlab::cli::EXIT_ORACLE);
    assert!(r.stderr.contains("staircase-3"));
    std::fs::remove_dir_all(&dir).unwrap();
}
