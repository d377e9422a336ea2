// Drive the command-line front end in-process and decode its JSON.

use trispec::cli::{self, OutputRecord};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["trispec", "spectrum", "2", "4", "4", "--max", "30", "--format", "json"];
    let code = cli::run(args, &mut out, &mut err);
    if code != cli::EXIT_OK {
        return Err(String::from_utf8_lossy(&err).into_owned().into());
    }
    let record: OutputRecord = serde_json::from_slice(&out)?;
    println!("{:?} {} ({})", record.group, record.geometry, record.metadata.normalization);
    for e in &record.entries {
        println!("  λ = {:>2}  μ = {}", e.lambda, e.mult);
    }

    let mut out = Vec::new();
    let code = cli::run(["trispec", "verify", "--suite", "relations"], &mut out, &mut err);
    print!("{}", String::from_utf8(out)?);
    println!("verify exit code {code}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
