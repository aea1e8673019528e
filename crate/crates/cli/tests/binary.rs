use std::process::{Command, Output};

fn kantor(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kantor"));
    cmd.args(args).env_remove("KANTOR_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("KANTOR_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(kantor(&["classify", "E6"], None).status.code(), Some(0));
    assert_eq!(kantor(&["classify", "BC2"], None).status.code(), Some(2));
    assert_eq!(kantor(&["classify"], None).status.code(), Some(2));
    assert_eq!(kantor(&["weyl-image", "E6", "--S", "6", "--T", "1", "--u", "s7"], None).status.code(), Some(2));
    assert_eq!(kantor(&["verify", "B2", "--suite", "chevalley"], None).status.code(), Some(0));
}

#[test]
fn validation_error_names_the_condition() {
    let out = kantor(&["render", "E6", "--S", "2", "--T", "1,6"], None);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("χ_T(μ⁺) = 3 exceeds 2"), "{err}");
}

#[test]
fn cached_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["weyl-image", "E7", "--S", "1", "--T", "6", "--check"];
    let plain = kantor(&args, None);
    let first = kantor(&args, Some(dir.path()));
    let second = kantor(&args, Some(dir.path()));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(plain.stdout, second.stdout);
    assert_eq!(second.status.code(), Some(0));
}

#[test]
fn json_render_round_trips_through_the_binary() {
    let out = kantor(&["--bourbaki", "render", "E7", "--S", "1", "--T", "7", "--format", "json"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    let (m, doc) = kantor_cli::render::parse_json(&text).unwrap();
    assert_eq!(doc.label, "E7(32,1,16)");
    assert_eq!(m.t.unwrap().ids(), vec![6]);
}
