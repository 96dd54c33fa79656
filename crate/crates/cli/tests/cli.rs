use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn plg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plg")).args(args).output().unwrap()
}

fn d(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn figure_one_minor_checks() {
    let o = plg(&["check-minor", &d("fig1_h.plg"), &d("fig1_g.plg")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1);
    assert_eq!(code(&plg(&["check-minor", &d("fig1_h.plg"), &d("fig1_gprime.plg")])), 1);
    assert_eq!(code(&plg(&["check-minor", "--abstract", &d("fig1_h.plg"), &d("fig1_gprime.plg")])), 0);
}

#[test]
fn minor_script_replays_to_the_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let o = plg(&["check-minor", &d("fig1_h.plg"), &d("fig1_g.plg")]);
    let script = write_temp(&dir, "s.txt", &stdout(&o));
    let o = plg(&["replay", &d("fig1_g.plg"), &script]);
    assert_eq!(code(&o), 0);
    let out = write_temp(&dir, "out.plg", &stdout(&o));
    assert_eq!(code(&plg(&["iso", &out, &d("fig1_h.plg")])), 0);
}

#[test]
fn widths_of_the_four_cycle() {
    let o = plg(&["cw", &d("c4.plg")]);
    assert_eq!((code(&o), stdout(&o)), (0, "2\n".to_string()));
    let o = plg(&["bw", &d("c4.plg")]);
    assert_eq!((code(&o), stdout(&o)), (0, "2\n".to_string()));
    let o = plg(&["--format", "machine", "cw", &d("k4.plg")]);
    assert!(stdout(&o).lines().any(|l| l == "cw 4"));
}

#[test]
fn decomposition_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for mode in ["linked", "bond-linked", "disc"] {
        let o = plg(&["decompose", &d("k4.plg"), "--mode", mode]);
        assert_eq!(code(&o), 0);
        let tree = write_temp(&dir, "t.sx", &stdout(&o));
        let o = plg(&["verify", &d("k4.plg"), &tree, "--check", "width,bond,linked,disc"]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(stdout(&o).contains("width: 4"));
        // the tree prints the same after a second run
        assert_eq!(stdout(&plg(&["decompose", &d("k4.plg"), "--mode", mode])), std::fs::read_to_string(&tree).unwrap());
    }
    let o = plg(&["leaving", &d("k4.plg"), &write_temp(&dir, "t.sx", "( a ( b ( c d ) ) )"), "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("vertex hub"));
}

#[test]
fn failed_verification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // splits the four-cycle into two non-adjacent pairs
    let tree = write_temp(&dir, "t.sx", "( ( a c ) ( b d ) )");
    let o = plg(&["verify", &d("c4.plg"), &tree, "--check", "width,bond"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("width: 4"));
}

#[test]
fn dual_of_dual() {
    let dir = tempfile::tempdir().unwrap();
    let once = write_temp(&dir, "d1.plg", &stdout(&plg(&["dual", &d("fig1_g.plg")])));
    let twice = write_temp(&dir, "d2.plg", &stdout(&plg(&["dual", &once])));
    assert_eq!(code(&plg(&["validate", &twice])), 0);
    assert_eq!(code(&plg(&["iso", &twice, &d("fig1_g.plg")])), 0);
}

#[test]
fn immersion_checks() {
    for extra in [&[][..], &["--ordered-only"][..]] {
        let mut args = vec!["--max-darts", "24", "check-immersion"];
        args.extend_from_slice(extra);
        let h = d("c4.plg");
        let g = d("k4.plg");
        let o = plg(&[&args[..], &[h.as_str(), g.as_str()]].concat());
        assert_eq!(code(&o), 0);
        let o = plg(&[&args[..], &[g.as_str(), h.as_str()]].concat());
        assert_eq!(code(&o), 1);
    }
}

#[test]
fn grid_embedding_replays() {
    let dir = tempfile::tempdir().unwrap();
    let o = plg(&["grid-embed", &d("c4.plg")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let n: usize = text.lines().next().unwrap().strip_prefix("target grid ").unwrap().parse().unwrap();
    assert_eq!(n, 4);
    let script = write_temp(&dir, "s.txt", &text);
    let grid = write_temp(&dir, "grid.plg", &plgraph::gridlib::grid(n).unwrap().to_plg());
    let out = write_temp(&dir, "out.plg", &stdout(&plg(&["replay", &grid, &script])));
    // the grid has an outer face, the cycle does not
    let sphere = plgraph::PlaneGraph::parse_plg(&std::fs::read_to_string(&out).unwrap()).unwrap().to_sphere();
    let out = write_temp(&dir, "sphere.plg", &sphere.to_plg());
    assert_eq!(code(&plg(&["iso", &out, &d("c4.plg")])), 0);
}

#[test]
fn census_and_caps() {
    let o = plg(&["--format", "machine", "census-grid", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "classes 1"));
    assert_eq!(code(&plg(&["census-grid", "5"])), 3);
    assert_eq!(code(&plg(&["--max-darts", "4", "check-minor", &d("c4.plg"), &d("k4.plg")])), 3);
    assert_eq!(code(&plg(&["--max-vertices", "3", "cw", &d("k4.plg")])), 3);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&plg(&["cw", "/nonexistent.plg"])), 2);
    assert_eq!(code(&plg(&["validate", &write_temp(&dir, "bad.plg", "vertex a : x\n")])), 2);
    assert_eq!(code(&plg(&["--bogus", "cw", &d("c4.plg")])), 2);
    let tree = write_temp(&dir, "t.sx", "( a ( b c ) )");
    assert_eq!(code(&plg(&["verify", &d("c4.plg"), &tree])), 2);
}

#[test]
fn medial_outputs_parse() {
    for flag in [&[][..], &["--directed"][..]] {
        let mut args = vec!["medial"];
        args.extend_from_slice(flag);
        let f = d("k4.plg");
        args.push(&f);
        let o = plg(&args);
        assert_eq!(code(&o), 0);
        let m = plgraph::PlaneGraph::parse_plg(&stdout(&o)).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges()), (6, 12));
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [vec!["faces", "fig1_g.plg"], vec!["grid-embed", "fig1_h.plg"], vec!["dual", "k4.plg"]] {
        let path = d(args[1]);
        let a = plg(&[args[0], &path]);
        let b = plg(&[args[0], &path]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
}
