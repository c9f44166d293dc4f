use std::path::PathBuf;
use std::process::{Command, Output};

fn wavesets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavesets"))
        .args(args)
        .env_remove("WAVESETS_DEPTH")
        .output()
        .unwrap()
}

fn temp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wavesets-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let good = temp("shannon.json", r#"[["-1","-1/2"],["1/2","1"]]"#);
    let o = wavesets(&["verify", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);

    let bad = temp("half.json", r#"[["1/2","1"]]"#);
    let o = wavesets(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    assert!(v["witness"].is_array());

    let broken = temp("broken.json", "[[\"1/2\",\n\"x\"]]");
    let o = wavesets(&["verify", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = wavesets(&["verify", "/nonexistent/set.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(wavesets(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn h2_and_mra() {
    let h2 = temp("h2.json", r#"{"space":"H2","intervals":[["3/5","1"],["2","7/3"],["28/3","48/5"]]}"#);
    assert_eq!(wavesets(&["verify", h2.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(wavesets(&["verify", "--space", "l2", h2.to_str().unwrap()]).status.code(), Some(1));

    let o = wavesets(&["construct", "family", "--id", "KA", "--params", "3/8"]);
    assert_eq!(o.status.code(), Some(0));
    let ka = temp("ka.json", &stdout(&o));
    let o = wavesets(&["verify", "--mra", "--depth", "12", ka.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["residual"], "1/4096");
}

#[test]
fn enumerate_csv() {
    let o = wavesets(&["enumerate", "--case", "T1D1", "--r-max", "1", "--s-max", "3", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "case,r,k,s,l,p1,q1,p2,q2,p3,q3");
    assert!(lines[1..].iter().all(|l| l.starts_with("T1D1,1,")));
    assert!(lines.iter().any(|l| l.starts_with("T1D1,1,1,3,8,")));
}

#[test]
fn classify_and_equiv() {
    let o = wavesets(&["construct", "family", "--id", "N2", "--params", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let n2 = temp("n2.json", &stdout(&o));
    let o = wavesets(&["classify", n2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let d: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(d["n"], 2);

    let shannon = temp("shannon2.json", r#"[["-1","-1/2"],["1/2","1"]]"#);
    let shifted = temp("shifted.json", r#"[["-1","-1/2"],["-1/2","0"]]"#);
    let o = wavesets(&["equiv", "--mode", "translation", shannon.to_str().unwrap(), shifted.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // Any two wavelet sets are dilation congruent.
    let o = wavesets(&["equiv", "--mode", "dilation", shannon.to_str().unwrap(), n2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let half = temp("half2.json", r#"[["1/2","1"]]"#);
    let o = wavesets(&["equiv", "--mode", "dilation", shannon.to_str().unwrap(), half.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = wavesets(&["classify", half.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"error\""));
}

#[test]
fn accumulate_reports_tail() {
    let o = wavesets(&["accumulate", "--id", "WNE", "--n", "2", "--eps", "1/16", "--depth", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["verdict"]["passed"], true);
    assert_eq!(r["document"]["metadata"]["depth"], 8);
    assert!(r["document"]["metadata"]["tail"].is_string());

    let env = Command::new(env!("CARGO_BIN_EXE_wavesets"))
        .args(["accumulate", "--id", "PROPBRA"])
        .env("WAVESETS_DEPTH", "5")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&env)).unwrap();
    assert_eq!(r["document"]["metadata"]["depth"], 5);

    assert_eq!(wavesets(&["accumulate", "--id", "WNE"]).status.code(), Some(2));
}

#[test]
fn export_formats() {
    let f = temp("exp.json", r#"[["-1","-1/2"],["1/2","1"]]"#);
    let o = wavesets(&["export", "--format", "csv", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "lo,hi\n-1,-1/2\n1/2,1\n");
    let o = wavesets(&["export", "--format", "plotdata", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "-1 -1/2 set\n1/2 1 set\n");
    let o = wavesets(&["export", "--format", "json", f.to_str().unwrap()]);
    let again = temp("exp2.json", &stdout(&o));
    let o2 = wavesets(&["export", "--format", "json", again.to_str().unwrap()]);
    assert_eq!(stdout(&o), stdout(&o2));
}
