use std::path::Path;
use std::process::{Command, Output};

fn plycover(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plycover"))
        .args(args)
        .current_dir(dir)
        .env_remove("PLYCOVER_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn gen_cover_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&plycover(
            &["gen", "-n", "60", "--seed", "5", "--output", "i.json"],
            d
        )),
        0
    );
    for shape in [
        "square",
        "rect:2,0.5",
        "disk",
        "tile-square:1",
        "tile-hex:0.7",
    ] {
        let out = plycover(
            &[
                "cover", "--input", "i.json", "--shape", shape, "--output", "c.json",
            ],
            d,
        );
        assert_eq!(
            code(&out),
            0,
            "{shape}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let bound = if shape == "disk" { "2" } else { "1" };
        let out = plycover(
            &[
                "verify",
                "--instance",
                "i.json",
                "--cover",
                "c.json",
                "--assert-ply",
                bound,
            ],
            d,
        );
        assert_eq!(code(&out), 0, "{shape}");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["uncovered"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn assert_ply_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("i.json"),
        r#"{"dim": 2, "points": [[0, 0], [0.5, 0.5]], "meta": {}}"#,
    )
    .unwrap();
    std::fs::write(
        d.join("c.json"),
        r#"{"shape": {"kind": "square"}, "placements": [[0, 0], [0.5, 0.5]],
            "provenance": {"algorithm": "hand", "version": "0"}}"#,
    )
    .unwrap();
    let out = plycover(
        &[
            "verify",
            "--input",
            "i.json",
            "--cover",
            "c.json",
            "--assert-ply",
            "1",
        ],
        d,
    );
    assert_eq!(code(&out), 1);
    let out = plycover(
        &[
            "verify",
            "--input",
            "i.json",
            "--cover",
            "c.json",
            "--assert-ply",
            "2",
        ],
        d,
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&plycover(&["frobnicate"], d)), 2);
    assert_eq!(code(&plycover(&["gen", "--kind", "spiral"], d)), 2);
    plycover(&["gen", "-n", "5", "--output", "i.json"], d);
    assert_eq!(
        code(&plycover(
            &["cover", "--input", "i.json", "--shape", "blob"],
            d
        )),
        2
    );
    assert_eq!(
        code(&plycover(
            &["cover", "--input", "i.json", "--shape", "polygon"],
            d
        )),
        2
    );
}

#[test]
fn seed_env_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = plycover(&["gen", "-n", "20", "--seed", "9"], d);
    let b = Command::new(env!("CARGO_BIN_EXE_plycover"))
        .args(["gen", "-n", "20"])
        .env("PLYCOVER_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let c = plycover(&["gen", "-n", "20", "--seed", "10"], d);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn polygon_oracle_render_and_bench() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("p.json"),
        r#"{"vertices": [[0, 0], [2, 0], [1, 1.5]]}"#,
    )
    .unwrap();
    plycover(&["gen", "-n", "40", "--seed", "2", "--output", "i.json"], d);
    let out = plycover(
        &[
            "cover",
            "--input",
            "i.json",
            "--shape",
            "polygon",
            "--polygon-file",
            "p.json",
            "--output",
            "c.json",
            "--svg",
            "c.svg",
        ],
        d,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(d.join("c.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polygon"));
    let out = plycover(
        &[
            "verify",
            "--input",
            "i.json",
            "--cover",
            "c.json",
            "--assert-ply",
            "4",
        ],
        d,
    );
    assert_eq!(code(&out), 0);

    let out = plycover(&["render", "--input", "i.json", "--cover", "c.json"], d);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, svg.as_bytes());

    plycover(
        &[
            "gen", "-n", "5", "--seed", "4", "--lo", "0", "--hi", "3", "--output", "s.json",
        ],
        d,
    );
    let out = plycover(&["oracle", "--input", "s.json", "--shape", "square"], d);
    assert_eq!(code(&out), 0);
    let sol: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let size = sol["size"].as_u64().unwrap();
    assert!((1..=5).contains(&size));
    assert_eq!(sol["lowers"].as_array().unwrap().len() as u64, size);

    plycover(&["gen", "-n", "30", "--output", "big.json"], d);
    assert_eq!(code(&plycover(&["oracle", "--input", "big.json"], d)), 2);

    let out = plycover(
        &[
            "bench",
            "--sizes",
            "64,128",
            "--shapes",
            "square;disk",
            "--repeats",
            "1",
            "--jobs",
            "2",
        ],
        d,
    );
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with(
        "generator,n,d,algorithm,seed,size,oracle,lb,ply,membership,time_ms,doubling_ratio"
    ));
}
