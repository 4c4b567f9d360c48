use std::process::{Command, Output};

fn blockinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockinv"))
        .args(args)
        .env_remove("BLOCKINV_CAP")
        .output()
        .expect("spawn blockinv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_json() {
    let o = blockinv(&["compute", "--ell", "3", "--a", "1", "--w", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["kB"]["value"], "24");
    assert_eq!(v[0]["k0B"]["value"], "9");
    assert_eq!(v[0]["c1_verdict"], "Verified");
    assert_eq!(v[0]["c2_verdict"], "Verified");
}

#[test]
fn compute_sl_csv() {
    let o = blockinv(&["compute", "--ell", "3", "--a", "1", "--w", "3", "--mode", "sl", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("mode,ell,case,a,atilde,d,w,kB"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..8], ["sl", "3", "-", "1", "", "1", "3", "16"]);
}

#[test]
fn compute_three_mod4_markdown() {
    let o = blockinv(&["compute", "--ell", "2", "--case", "3mod4", "--atilde", "3", "--w", "8", "--format", "markdown"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("### GL, ell = 2, 3 mod 4, atilde = 3"));
    assert!(text.contains("| 8 | 2908 |"));
}

#[test]
fn compute_rejects_bad_parameters() {
    let o = blockinv(&["compute", "--ell", "2", "--case", "1mod4", "--a", "1", "--w", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = blockinv(&["compute", "--ell", "2", "--a", "2", "--w", "2", "--mode", "sl"]);
    assert_eq!(o.status.code(), Some(1));
    let o = blockinv(&["compute", "--ell", "5", "--a", "1", "--w", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_inline_grid() {
    let o = blockinv(&["sweep", "--grid", "ell=2; atilde=2; w=1..3", "--format", "csv", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let kb: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(7).unwrap()).collect();
    assert_eq!(kb, ["2", "8", "16"]);
}

#[test]
fn sweep_empty_grid_is_verified() {
    let o = blockinv(&["sweep", "--grid", "ell=3; a=1; w=5..4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[]\n");
}

#[test]
fn sweep_grid_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/grids/table_atilde2.grid");
    let o = blockinv(&["sweep", "--grid", path, "--format", "markdown"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| 3 | 16 |"));
}

#[test]
fn sweep_reports_bad_grid_line() {
    let o = blockinv(&["sweep", "--grid", "ell=3\na=1\nw=x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid line 3"));
}

#[test]
fn small_cap_falls_back_to_bounds() {
    let o = blockinv(&["compute", "--ell", "3", "--a", "1", "--w", "3", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["kDprime"]["source"], "PaperLowerBound");
}

#[test]
fn bounds_single_lemma() {
    let o = blockinv(&["bounds", "--lemma", "plw_p3", "--grid", "w_max=12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("plw_p3 [w=3]"));
    assert!(text.lines().last().unwrap().starts_with("total 12 holds 11 fails 1"));
}

#[test]
fn bounds_json_and_list() {
    let o = blockinv(&["bounds", "--lemma", "bound165_l3", "--grid", "w_max=10; a_max=2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["lemma_id"] == "bound165_l3"));
    let list = blockinv(&["bounds", "--list"]);
    assert_eq!(list.status.code(), Some(0));
    assert!(stdout(&list).contains("nrcharacters_kd\n"));
    let bad = blockinv(&["bounds", "--lemma", "no_such_lemma"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn group_queries() {
    let run = |spec: &str, op: &str| stdout(&blockinv(&["group", "--spec", spec, "--op", op]));
    assert_eq!(run("wr(c(3),3)", "order"), "81\n");
    assert_eq!(run("wr(c(3),3)", "classes"), "17\n");
    assert_eq!(run("wr(c(3),3)", "derived-classes"), "9\n");
    assert_eq!(run("sd(16)", "classes"), "7\n");
    assert_eq!(run("sd(32)", "derived-classes"), "8\n");
    let o = blockinv(&["group", "--spec", "wr(c(3),", "--op", "order"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_blockinv"))
        .args(["group", "--spec", "wr(c(9),3)", "--op", "derived-classes"])
        .env("BLOCKINV_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
