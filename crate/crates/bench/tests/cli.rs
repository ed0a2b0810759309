use std::fs;
use std::path::Path;
use std::process::Command;

fn bench() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gols-bench"))
}

fn write_sweep(dir: &Path, seed: u64) -> std::path::PathBuf {
    let cfg = dir.join("sweep.toml");
    fs::write(
        &cfg,
        format!(
            "[sweep]\nn = 16\nm = 24\nk_values = [2, 4]\nL_values = [2]\ntrials = 5\n\
             master_seed = {seed}\noutput_dir = \"{}\"\n",
            dir.join("out").display()
        ),
    )
    .unwrap();
    cfg
}

#[test]
fn sweep_writes_csvs_and_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_sweep(dir.path(), 3);
    let out = bench()
        .args(["--jobs", "2", "sweep"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let trials = fs::read_to_string(dir.path().join("out/trials.csv")).unwrap();
    let mut lines = trials.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("# gols-bench 0.1.0 config="));
    assert!(lines
        .next()
        .unwrap()
        .starts_with("algorithm,n,m,k,L,trial,seed"));
    // 3 variants x 2 k x 5 trials
    assert_eq!(lines.count(), 30);

    let agg = fs::read_to_string(dir.path().join("out/aggregate.csv")).unwrap();
    assert_eq!(agg.lines().count(), 2 + 6);
    assert!(dir.path().join("out/plot/err.dat").exists());
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_sweep(dir.path(), 3);
    let run = |seed: &str| {
        let out = bench()
            .args(["--seed", seed, "sweep"])
            .arg(&cfg)
            .output()
            .unwrap();
        assert!(out.status.success());
        fs::read_to_string(dir.path().join("out/trials.csv")).unwrap()
    };
    let a = run("11");
    let b = run("12");
    assert_ne!(a.lines().next(), b.lines().next());
}

#[test]
fn phase_writes_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("phase.toml");
    fs::write(
        &cfg,
        format!(
            "[phase]\nm = 16\nk = 1\nn_values = [4, 8]\ntrials = 10\noutput_dir = \"{}\"\n",
            dir.path().display()
        ),
    )
    .unwrap();
    let out = bench().arg("phase").arg(&cfg).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("phase.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().contains("threshold_n=4"));
    assert_eq!(
        csv.lines().nth(2).unwrap(),
        "n,trials,successes,success_rate,stderr"
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[sweep]\nbogus = 1\n").unwrap();
    let code = |args: &[&str]| bench().args(args).output().unwrap().status.code();

    assert_eq!(code(&["sweep", bad.to_str().unwrap()]), Some(1));
    assert_eq!(code(&["sweep", "/nonexistent/cfg.toml"]), Some(2));

    let empty = dir.path().join("aggregate.csv");
    fs::write(&empty, "# gols-bench\n").unwrap();
    assert_eq!(code(&["plot", empty.to_str().unwrap()]), Some(3));
}
