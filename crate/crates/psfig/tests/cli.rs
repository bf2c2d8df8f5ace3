//! End-to-end tests of the `psfig` binary: flags, exit statuses, summary
//! output and file layout.

mod common;

use common::{fixture_path, run_cli, stderr_of, stdout_of};
use std::fs;
use std::path::Path;

fn dir_entries(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

fn write_doc(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn seed_document_renders_three_svgs_with_summary() {
    let out = tempfile::tempdir().unwrap();
    let output = run_cli([
        fixture_path().as_os_str(),
        "--out-dir".as_ref(),
        out.path().as_os_str(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("picture 1: 4 elements / 0 nodes"), "{}", stdout);
    assert!(stdout.contains("picture 2: 6 elements / 8 nodes"), "{}", stdout);
    assert!(stdout.contains("picture 3: 13 elements / 11 nodes"), "{}", stdout);
    assert_eq!(
        dir_entries(out.path()),
        ["paper-1.svg", "paper-2.svg", "paper-3.svg"]
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    let out = tempfile::tempdir().unwrap();
    let args = || {
        [
            fixture_path().into_os_string(),
            "--out-dir".into(),
            out.path().into(),
            "--formats".into(),
            "svg,json".into(),
        ]
    };
    assert_eq!(run_cli(args()).status.code(), Some(0));
    let first: Vec<(String, Vec<u8>)> = dir_entries(out.path())
        .into_iter()
        .map(|name| {
            let bytes = fs::read(out.path().join(&name)).unwrap();
            (name, bytes)
        })
        .collect();
    assert_eq!(run_cli(args()).status.code(), Some(0));
    for (name, bytes) in first {
        assert_eq!(fs::read(out.path().join(&name)).unwrap(), bytes, "{} changed", name);
    }
}

#[test]
fn empty_document_reports_zero_pictures_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(dir.path(), "empty.tex", "\\begin{document}\\end{document}");
    let out = dir.path().join("out");
    let output = run_cli([input.as_os_str(), "--out-dir".as_ref(), out.as_os_str()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout_of(&output).contains("0 pictures"));
    assert_eq!(dir_entries(&out), Vec::<String>::new());
}

#[test]
fn json_format_writes_only_the_resolved_dump() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "fig.tex",
        "\\begin{document}\\begin{pspicture}(-5,-5)(5,5)\\psccurve(5;90)(5.5;210)(6;330)\\end{pspicture}\\end{document}",
    );
    let out = dir.path().join("out");
    let output = run_cli([
        input.as_os_str(),
        "--out-dir".as_ref(),
        out.as_os_str(),
        "--formats".as_ref(),
        "json".as_ref(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    assert_eq!(dir_entries(&out), ["fig.resolved.json"]);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("fig.resolved.json")).unwrap()).unwrap();
    assert_eq!(json["pictures"][0]["elements"][0]["points"].as_array().unwrap().len(), 3);
}

#[test]
fn svg_and_json_formats_combine() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "fig.tex",
        "\\begin{document}\\begin{pspicture}(0,0)(2,2)\\psline(0,0)(1,1)\\end{pspicture}\\end{document}",
    );
    let out = dir.path().join("out");
    let output = run_cli([
        input.as_os_str(),
        "--out-dir".as_ref(),
        out.as_os_str(),
        "--formats".as_ref(),
        "svg,json".as_ref(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(dir_entries(&out), ["fig-1.svg", "fig.resolved.json"]);
}

#[test]
fn default_out_dir_is_the_input_directory() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "fig.tex",
        "\\begin{document}\\begin{pspicture}(0,0)(2,2)\\psline(0,0)(1,1)\\end{pspicture}\\end{document}",
    );
    let output = run_cli([input.as_os_str()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(dir.path().join("fig-1.svg").exists());
}

#[test]
fn unbound_node_exits_2_naming_the_node_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "bad.tex",
        "\\begin{document}\\begin{pspicture}(0,0)(2,2)\n\\psline(0,0)(Ghost)\n\\pnode(1,1){Ghost}\\end{pspicture}\\end{document}",
    );
    let out = dir.path().join("out");
    let output = run_cli([input.as_os_str(), "--out-dir".as_ref(), out.as_os_str()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("Ghost"), "{}", stderr);
    assert!(stderr.contains("line 2"), "{}", stderr);
    assert!(!out.exists() || dir_entries(&out).is_empty());
}

#[test]
fn newpage_inside_picture_exits_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "bad.tex",
        "\\begin{document}\n\\begin{pspicture}(0,0)(2,2)\n\\newpage\n\\end{pspicture}\\end{document}",
    );
    let out = dir.path().join("out");
    let output = run_cli([input.as_os_str(), "--out-dir".as_ref(), out.as_os_str()]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("error: 3:1:"), "{}", stderr);
    assert!(stderr.contains("\\newpage"), "{}", stderr);
    assert!(!out.exists() || dir_entries(&out).is_empty());
}

#[test]
fn missing_input_exits_1() {
    let output = run_cli(["/nonexistent/input.tex"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("cannot read"));
}

#[test]
fn unwritable_out_dir_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = write_doc(dir.path(), "blocker", "not a directory");
    let output = run_cli([
        fixture_path().as_os_str(),
        "--out-dir".as_ref(),
        blocker.join("nested").as_os_str(),
    ]);
    assert_eq!(output.status.code(), Some(3), "{}", stderr_of(&output));
}

#[test]
fn lenient_mode_skips_unknown_commands_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "mixed.tex",
        "\\begin{document}\\begin{pspicture}(0,0)(2,2)\\pscircle(1,1){0.5}\\psline(0,0)(1,1)\\end{pspicture}\\end{document}",
    );
    let out = dir.path().join("out");

    let strict = run_cli([input.as_os_str(), "--out-dir".as_ref(), out.as_os_str()]);
    assert_eq!(strict.status.code(), Some(1));

    let lenient = run_cli([
        input.as_os_str(),
        "--out-dir".as_ref(),
        out.as_os_str(),
        "--lenient".as_ref(),
    ]);
    assert_eq!(lenient.status.code(), Some(0), "{}", stderr_of(&lenient));
    let stdout = stdout_of(&lenient);
    assert!(stdout.contains("warning"), "{}", stdout);
    assert!(stdout.contains("pscircle"), "{}", stdout);
    assert!(stdout.contains("picture 1: 1 elements / 0 nodes"), "{}", stdout);
    assert_eq!(dir_entries(&out), ["mixed-1.svg"]);
}

#[test]
fn dump_ast_prints_the_tree() {
    let out = tempfile::tempdir().unwrap();
    let output = run_cli([
        fixture_path().as_os_str(),
        "--out-dir".as_ref(),
        out.path().as_os_str(),
        "--dump-ast".as_ref(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("DocumentTree"), "{}", stdout);
    assert!(stdout.contains("PsCCurve"), "{}", stdout);
}

#[test]
fn out_of_range_tension_is_a_usage_error() {
    let out = tempfile::tempdir().unwrap();
    let output = run_cli([
        fixture_path().as_os_str(),
        "--out-dir".as_ref(),
        out.path().as_os_str(),
        "--tension".as_ref(),
        "1.5".as_ref(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("tension"));
    assert_eq!(dir_entries(out.path()), Vec::<String>::new());
}

#[test]
fn tension_changes_curve_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "fig.tex",
        "\\begin{document}\\begin{pspicture}(-5,-5)(5,5)\\psccurve(5;90)(5.5;210)(6;330)\\end{pspicture}\\end{document}",
    );
    let loose_dir = dir.path().join("loose");
    let tight_dir = dir.path().join("tight");
    run_cli([input.as_os_str(), "--out-dir".as_ref(), loose_dir.as_os_str()]);
    run_cli([
        input.as_os_str(),
        "--out-dir".as_ref(),
        tight_dir.as_os_str(),
        "--tension".as_ref(),
        "0.9".as_ref(),
    ]);
    let loose = fs::read_to_string(loose_dir.join("fig-1.svg")).unwrap();
    let tight = fs::read_to_string(tight_dir.join("fig-1.svg")).unwrap();
    assert_ne!(loose, tight);
}

#[test]
fn precision_flag_controls_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_doc(
        dir.path(),
        "fig.tex",
        "\\begin{document}\\begin{pspicture}(0,0)(2,2)\\psline(0,0)(1,1)\\end{pspicture}\\end{document}",
    );
    let out = dir.path().join("out");
    let output = run_cli([
        input.as_os_str(),
        "--out-dir".as_ref(),
        out.as_os_str(),
        "--precision".as_ref(),
        "2".as_ref(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let svg = fs::read_to_string(out.join("fig-1.svg")).unwrap();
    assert!(svg.contains("75.59"), "{}", svg);
    assert!(!svg.contains("75.5906"), "{}", svg);
}
