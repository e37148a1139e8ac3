//! Drive the command-line front end from code with a JSON configuration.
//!
//! ```text
//! cargo run --release --example run_config
//! ```

use bcs_tc_lab::cli::{run, RunConfig};

fn main() {
    let config = r#"{
        "command": "tc",
        "interaction": "gaussian",
        "mu": 1.0,
        "lambda": 1.0,
        "targets": ["tc0", "tl", "tu"],
        "note": "unique critical temperature for a non-negative transform"
    }"#;
    let c = RunConfig::from_json(config).expect("valid JSON");
    if let Err(e) = c.validate() {
        eprintln!("invalid configuration: {e}");
        std::process::exit(2);
    }
    eprintln!("config digest {}", c.digest());
    std::process::exit(run(&c));
}
