//! Compiles `examples/demo.c` against the static library and runs it.
//! Skipped when no C compiler is on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

fn staticlib() -> Option<PathBuf> {
    // target/<profile>/deps/<test-binary>
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libnearmiss_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_demo_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let Some(lib) = staticlib() else {
        eprintln!("skipping: libnearmiss_ffi.a not built");
        return;
    };
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("nearmiss_demo_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(root.join("examples/demo.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("spawn cc");
    assert!(status.success(), "cc failed");

    let run = Command::new(&out).arg("3").output().expect("run demo");
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8(run.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "0\t22\t23\t717\tresidual=0");
    assert_eq!(lines[1], "1\t1058\t1103\t1653213\tresidual=0");
    assert_eq!(lines[3], "identities hold");
}
