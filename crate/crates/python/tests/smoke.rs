use std::path::PathBuf;
use std::process::Command;

// The cdylib sits next to the deps/ directory holding this test binary.
fn library() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let dir = exe.parent().and_then(|d| d.parent()).unwrap();
    ["liboctosolve_py.so", "liboctosolve_py.dylib"]
        .iter()
        .map(|name| dir.join(name))
        .find(|p| p.exists())
        .expect("extension library is built alongside the tests")
}

#[test]
fn python_smoke_script() {
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke_test.py");
    let out = Command::new("python3").arg(&script).arg(library()).output().expect("python3 runs");
    assert!(
        out.status.success(),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok"));
}
