use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use canvaslab::canvas::Canvas;
use canvaslab::fixtures;
use canvaslab::format::CanvasFile;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_canvaslab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, t: &Canvas) -> PathBuf {
    let p = dir.join(format!("{name}.json"));
    fs::write(&p, CanvasFile::from_canvas(t, Some(name.into())).to_text()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let w5 = write(dir.path(), "w5", &fixtures::w5());
    let o = run(&["validate", s(&w5)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "ok\n");

    let k4 = write(dir.path(), "k4", &fixtures::k4(&[1, 2, 3, 4]));
    let o = run(&["validate", s(&k4)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("short-internal-list"));

    let text = fs::read_to_string(&w5).unwrap();
    let cut = dir.path().join("cut.json");
    fs::write(&cut, &text[..text.len() / 2]).unwrap();
    let o = run(&["validate", s(&cut)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 1, column"));
}

#[test]
fn color_command() {
    let dir = TempDir::new().unwrap();
    let w5 = write(dir.path(), "w5", &fixtures::w5());
    let o = run(&["color", s(&w5), "--phi", "0=0,1=1,2=2,3=3,4=4"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "NO_EXTENSION\n");

    let o = run(&["color", s(&w5), "--phi", "5=0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not on the outer cycle"));

    let k4 = write(dir.path(), "k4", &fixtures::k4(&[1, 2, 3, 4]));
    let o = run(&["color", s(&k4)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0=1,1=2,2=3,3=4\n");
}

#[test]
fn critical_and_extract() {
    let dir = TempDir::new().unwrap();
    let w5 = write(dir.path(), "w5", &fixtures::w5());
    assert_eq!(code(&run(&["critical", s(&w5)])), 0);

    let c4e = write(dir.path(), "c4e", &fixtures::c4e());
    let o = run(&["critical", s(&c4e)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"witness\":[[0,1],[1,2],[2,1],[3,2]]"));

    let k4 = write(dir.path(), "k4", &fixtures::k4(&[1, 2, 3, 4]));
    assert_eq!(code(&run(&["critical", s(&k4)])), 1);
    let h = CanvasFile::parse(&stdout(&run(&["extract", s(&k4)]))).unwrap();
    assert_eq!((h.n, h.outer.len()), (3, 3));

    let o = run(&["extract", s(&w5)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), fs::read_to_string(&w5).unwrap());

    let split = write(dir.path(), "split", &fixtures::c4e_with([vec![1, 2], vec![3, 4], vec![5, 6], vec![3, 4]]));
    let o = run(&["extract", s(&split)]);
    let h = CanvasFile::parse(&stdout(&o)).unwrap();
    assert_eq!(h.rotation.iter().map(Vec::len).sum::<usize>(), 8);
}

#[test]
fn params_violating_the_first_inequality() {
    let o = run(&["scan", "--k", "3", "--m", "0", "--params", "1/6,1/12,2/3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("3ε ≤ 2α"), "{}", stderr(&o));
}

#[test]
fn scan_report_and_resume() {
    let dir = TempDir::new().unwrap();
    let fresh = dir.path().join("fresh.jsonl");
    let args = ["scan", "--k", "3..4", "--m", "1", "--batch-size", "4", "--verbose"];
    let o = bin().args(args).args(["--report", s(&fresh)]).output().unwrap();
    // the chorded square is critical and has a face of length |C| - 1
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("examined "));
    let text = fs::read_to_string(&fresh).unwrap();
    let header: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(header["record"], "header");
    assert_eq!(header["spec"]["seed"], 0);

    let resumed = dir.path().join("resumed.jsonl");
    let cp = dir.path().join("scan.checkpoint");
    let o = bin()
        .args(args)
        .args(["--report", s(&resumed), "--checkpoint", s(&cp), "--stop-after-batches", "2"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("interrupted after 8 instances"));
    assert!(cp.exists());
    let o = bin().args(args).args(["--report", s(&resumed), "--checkpoint", s(&cp)]).output().unwrap();
    assert_eq!(code(&o), 1);
    assert!(!cp.exists());
    assert_eq!(fs::read(&resumed).unwrap(), fs::read(&fresh).unwrap());

    // a violation certificate replays from its own bytes
    let footer: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    let cert = &footer["violations"][0];
    let path = dir.path().join("cert.json");
    fs::write(&path, serde_json::to_string(cert).unwrap()).unwrap();
    assert_eq!(code(&run(&["replay", s(&path)])), 0);
    let mut bad = cert.clone();
    bad["outcome"]["status"] = "pass".into();
    fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    assert_eq!(code(&run(&["replay", s(&path)])), 1);
    fs::write(&path, "{\"check\":").unwrap();
    assert_eq!(code(&run(&["replay", s(&path)])), 2);
}

#[test]
fn draw_outputs() {
    let dir = TempDir::new().unwrap();
    let w5 = write(dir.path(), "w5", &fixtures::w5());
    let o = run(&["draw", s(&w5), "--svg"]);
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 6);

    let out = dir.path().join("w5.dot");
    assert_eq!(code(&run(&["draw", s(&w5), "--dot", "-o", s(&out)])), 0);
    let dot = fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("graph canvas {") && dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches(" -- ").count(), 10);

    // two triangles sharing vertex 0
    let bow = dir.path().join("bow.json");
    fs::write(
        &bow,
        "{\"n\":5,\"rotation\":[[1,2,3,4],[2,0],[0,1],[4,0],[0,3]],\"outer\":[0,1,2],\"lists\":[[1],[2],[3],[2],[3]]}\n",
    )
    .unwrap();
    let o = run(&["draw", s(&bow), "--svg"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not 2-connected"));

    assert_eq!(code(&run(&["draw", s(&w5)])), 2);
}
