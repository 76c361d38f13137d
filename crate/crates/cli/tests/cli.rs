use std::process::{Command, Output};

fn rootsign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootsign"))
        .args(args)
        .env("ROOTSIGN_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn sign_json(system: &str, class: &str, num: &str) -> serde_json::Value {
    let out = rootsign(&["sign", "--system", system, "--class", class, "--num", num, "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(sign_json("B4", "cox", "norm:4:3")["sign"], -1);
    assert_eq!(sign_json("E8", "D8a3", "norm:4+4:-3")["sign"], 1);
    assert_eq!(sign_json("A:5", "cox", "id")["sign"], 1);

    let out = rootsign(&["legendre", "--n", "8", "--q", "3", "--eps", "+"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("sgn+_8(3) = -1"));

    let out = rootsign(&["classify", "--system", "F4", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
}

#[test]
fn text_sign_output() {
    let out = rootsign(&["sign", "--system", "B4", "--class", "cox", "--num", "norm:4:3"]);
    let text = stdout(&out);
    assert!(text.starts_with("<v/w> = -1\n"), "{text}");
    assert!(text.contains("v w v^-1 = w^3"));
}

#[test]
fn cycle_notation_round_trip() {
    // the class printed by classify resolves back to the same element
    let out = rootsign(&["classify", "--system", "F4", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in rows.as_array().unwrap() {
        let name = row["name"].as_str().unwrap();
        let cycles = row["detail"].as_str().unwrap();
        let by_name = sign_json("F4", name, "-1");
        let by_cycles = sign_json("F4", cycles, "-1");
        assert_eq!(by_name["sign"], by_cycles["sign"], "{name}");
        assert_eq!(by_name["orbits_w"], by_cycles["orbits_w"], "{name}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(rootsign(&["sign", "--system", "Z4", "--class", "cox", "--num", "id"]).status.code(), Some(2));
    assert_eq!(rootsign(&["sign", "--system", "B4", "--class", "cox", "--num", "(1 2"]).status.code(), Some(2));
    assert_eq!(rootsign(&["sign", "--system", "B4", "--class", "cox", "--num", "norm:2"]).status.code(), Some(3));
    assert_eq!(rootsign(&["legendre", "--n", "6", "--q", "4"]).status.code(), Some(3));
    assert_eq!(rootsign(&["tables", "B4"]).status.code(), Some(2));
    assert_eq!(rootsign(&["verify", "golden"]).status.code(), Some(0));
    assert_eq!(rootsign(&["verify", "odd-power"]).status.code(), Some(4));
    assert_eq!(rootsign(&["bogus"]).status.code(), Some(2));
}

#[test]
fn tables_match_golden() {
    let out = rootsign(&["tables", "all"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), include_str!("golden/tables_all.txt"));
}

#[test]
fn csv_and_json_formats() {
    let out = rootsign(&["tables", "F4", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "system,class,generator,descriptor,role,computed,stated,closed,kernel,stated_kernel,r_w"
    );
    assert!(lines.count() >= 4);

    let out = rootsign(&["tables", "A:4", "--format", "json"]);
    let tables: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(tables.as_array().unwrap().len(), 1);
}
