// Feeds a recorded serial log through the filter and estimator.

use std::error::Error;
use std::path::Path;

use nerve_skin::harness::{cmd_replay, load_config};

const LOG: &str = "\
0,0,1023
10,0,1023
20,0,640
30,0,180
40,0,176
50,0,178
60,0,181
70,0,1023
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let config = load_config(&Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/default.toml"))?;
    print!("{}", cmd_replay(&config, LOG)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
