use std::process::Command;

use irs_beamforming::experiment::{build_setup1, write_config, CSV_HEADER};

fn irs_sim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_irs-sim"))
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# short run\ntrials = 3\nmaster_seed = 9\n").unwrap();
    let out = dir.path().join("results.csv");
    let status = irs_sim()
        .args(["run", "--config"])
        .arg(&cfg)
        .args(["--setup", "2", "--sweep", "M", "--values", "200,400,600", "--methods", "greedy,conventional", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 1 + 3 * 2);
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 7);
        assert_eq!(cols[0], "M");
        assert_eq!(&cols[5..], ["3", "9"]);
        assert!(cols[3].parse::<f64>().unwrap().is_finite());
    }
}

#[test]
fn cli_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("full.cfg");
    std::fs::write(&cfg, write_config(&build_setup1(5.0).unwrap())).unwrap();
    let out = dir.path().join("n.csv");
    let status = irs_sim()
        .args(["run", "--config"])
        .arg(&cfg)
        .args(["--sweep", "N", "--values", "16,32", "--trials", "2", "--seed", "4", "--methods", "theoretical", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("N,16,theoretical,"));
    assert!(text.lines().nth(1).unwrap().ends_with(",2,4"));
}

#[test]
fn same_seed_same_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("a.cfg");
    std::fs::write(&cfg, "trials = 4\n").unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let ok = irs_sim()
            .args(["run", "--config"])
            .arg(&cfg)
            .args(["--sweep", "d", "--values", "3,6", "--out"])
            .arg(&out)
            .status()
            .unwrap()
            .success();
        assert!(ok);
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("one.csv"), run("two.csv"));
}

#[test]
fn bad_input_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "trials = 2\nfoo\n").unwrap();
    let out = irs_sim().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"), "{}", String::from_utf8_lossy(&out.stderr));

    std::fs::write(&cfg, "trials = 2\n").unwrap();
    let out = irs_sim()
        .args(["run", "--config"])
        .arg(&cfg)
        .args(["--sweep", "M", "--values", "410"])
        .output()
        .unwrap();
    assert!(!out.status.success());

    let missing = irs_sim().args(["run", "--config", "/nonexistent/x.cfg"]).output().unwrap();
    assert!(!missing.status.success());
}
