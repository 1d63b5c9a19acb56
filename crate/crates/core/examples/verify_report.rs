//! Runs a verification suite through the command-line layer and reads the
//! report.

use logan_lab::cli::run;

fn main() {
    let out_path = std::env::temp_dir().join("logan-lab-report.json");
    let out = out_path.to_string_lossy().into_owned();
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = run(
        ["logan-lab", "verify", "logan", "--alpha", "-0.5,0", "--m", "0,1", "--out", out.as_str()],
        &mut stdout,
        &mut stderr,
    );
    print!("{}", String::from_utf8_lossy(&stdout));
    eprint!("{}", String::from_utf8_lossy(&stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    println!("exit code {code}; {} checks written to {out}", report["checks"].as_array().map_or(0, |c| c.len()));
}
