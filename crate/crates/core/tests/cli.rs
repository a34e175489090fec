use std::fs;
use std::path::{Path, PathBuf};

use polyblend::cli::run;
use polyblend::mesh::{load_mesh, MeshFormat};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn polyblend(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polyblend").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = polyblend(&["check", path_str(&data("cube.obj"))]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("ok:"));

    let (code, out, _) = polyblend(&["check", path_str(&data("open_cube.obj"))]);
    assert_eq!(code, 1);
    assert!(out.contains("4 defect(s)"), "{out}");
    assert!(out.contains("boundary"), "{out}");

    let (code, out, _) = polyblend(&["check", path_str(&data("garbage.obj"))]);
    assert_eq!(code, 2);
    assert!(out.contains("line 1"), "{out}");

    let (code, _, _) = polyblend(&["check", "/nonexistent/mesh.obj"]);
    assert_eq!(code, 2);
}

#[test]
fn map_writes_a_reproducible_grid() {
    let dir = tempfile::tempdir().unwrap();
    let cache = path_str(dir.path());
    let (code, out, err) = polyblend(&["map", "--n", "5", "--grid-res", "33", "--cache", cache]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("1156 points"), "{out}");
    let path = dir.path().join("kite-n5-r33-tol1e-10-v1.json");
    let first = fs::read(&path).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(json["points"].as_array().unwrap().len(), 34 * 34);
    polyblend(&["map", "--n", "5", "--grid-res", "33", "--cache", cache]);
    assert_eq!(fs::read(&path).unwrap(), first);

    // the concave-looking triangle case solves to a small residual
    let (code, out, _) = polyblend(&["map", "--n", "3", "--grid-res", "16", "--cache", cache]);
    assert_eq!(code, 0);
    let residual: f64 = out
        .split("max residual ")
        .nth(1)
        .unwrap()
        .trim_end_matches(")\n")
        .parse()
        .unwrap();
    assert!(residual < 1e-8);

    let (code, _, err) = polyblend(&["map", "--n", "2", "--cache", cache]);
    assert_eq!(code, 1);
    assert!(err.contains("parameterization"), "{err}");
}

#[test]
fn build_torus_without_splitting() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("torus.obj");
    let (code, out, err) = polyblend(&[
        "build",
        path_str(&data("torus_8x16.obj")),
        "--out",
        path_str(&out_path),
        "--res",
        "4",
    ]);
    assert_eq!(code, 0, "{err}");
    let stats: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(stats["patches"], 128);
    assert_eq!(stats["corner_kinds"], serde_json::json!({"4": 128}));
    assert!(stats["max_edge_gap"].as_f64().unwrap() < 1e-9);
    assert!(stats["wall_time_ms"].is_u64());
    let mesh = load_mesh(fs::File::open(&out_path).unwrap(), MeshFormat::Obj).unwrap();
    assert_eq!(mesh.num_vertices(), 128 * 16);

    let (code, out, _) = polyblend(&[
        "build",
        path_str(&data("torus_8x16.obj")),
        "--out",
        path_str(&out_path),
        "--res",
        "2",
        "--split",
        "force",
    ]);
    assert_eq!(code, 0);
    let stats: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(stats["patches"], 512);
}

#[test]
fn build_icosahedron_reports_valences_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ply");
    let b = dir.path().join("b.ply");
    let stats_path = dir.path().join("stats.json");
    let input = data("icosahedron.obj");
    for out in [&a, &b] {
        let (code, _, err) = polyblend(&[
            "build",
            path_str(&input),
            "--out",
            path_str(out),
            "--res",
            "6",
            "--attr",
            "mean",
            "--stats",
            path_str(&stats_path),
        ]);
        assert_eq!(code, 0, "{err}");
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    assert!(bytes.starts_with(b"ply\nformat binary_little_endian 1.0\n"));
    let header_end = bytes.windows(10).position(|w| w == b"end_header").unwrap();
    assert!(std::str::from_utf8(&bytes[..header_end])
        .unwrap()
        .contains("property float quality"));
    let stats: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&stats_path).unwrap()).unwrap();
    assert_eq!(stats["patches"], 60);
    assert_eq!(
        stats["corner_kinds"],
        serde_json::json!({"3": 20, "4": 30, "5": 12})
    );
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(
        &config,
        r#"{"res": 3, "format": "ply", "attr": "isophote", "light": [1, 0, 0]}"#,
    )
    .unwrap();
    let out = dir.path().join("cube.out");
    let cube = data("cube.obj");
    let run_with = |extra: &[&str]| {
        let mut args = vec![
            "build",
            path_str(&cube),
            "--out",
            path_str(&out),
            "--config",
            path_str(&config),
        ];
        args.extend_from_slice(extra);
        let (code, _, err) = polyblend(&args);
        assert_eq!(code, 0, "{err}");
        fs::read(&out).unwrap()
    };
    // the cube is all quads, so it is not split: 8 vertices, 12 edges, 6 quads
    let from_config = run_with(&[]);
    assert!(from_config.starts_with(b"ply"));
    let text = String::from_utf8_lossy(&from_config);
    let verts = |res: usize| 8 + 12 * (res - 1) + 6 * (res - 1) * (res - 1);
    assert!(text.contains(&format!("element vertex {}\n", verts(3))));
    // a flag beats the config file
    let from_flag = run_with(&["--res", "2", "--format", "obj"]);
    let text = String::from_utf8(from_flag).unwrap();
    assert_eq!(
        text.lines().filter(|l| l.starts_with("v ")).count(),
        verts(2)
    );
    assert!(text.lines().any(|l| l.starts_with("vt ")));

    fs::write(&config, r#"{"resolution": 3}"#).unwrap();
    let (code, _, err) = polyblend(&[
        "build",
        path_str(&data("cube.obj")),
        "--out",
        path_str(&out),
        "--config",
        path_str(&config),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("config"), "{err}");
}

#[test]
fn build_errors_name_their_stage() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.obj");
    let (code, _, err) = polyblend(&[
        "build",
        path_str(&data("open_cube.obj")),
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("mesh:") && err.contains("closed"), "{err}");

    let (code, _, err) = polyblend(&[
        "build",
        path_str(&data("square_pyramid.obj")),
        "--out",
        path_str(&out),
        "--split",
        "no-split",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("not a quad") || err.contains("quad"), "{err}");

    let (code, _, _) = polyblend(&[
        "build",
        path_str(&data("cube.obj")),
        "--out",
        path_str(&out),
        "--k",
        "0",
    ]);
    assert_eq!(code, 1);
    let (code, _, _) = polyblend(&[
        "build",
        path_str(&data("cube.obj")),
        "--out",
        path_str(&out),
        "--light",
        "0,0,0",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = polyblend(&["frobnicate"]);
    assert_eq!(code, 2);
}
