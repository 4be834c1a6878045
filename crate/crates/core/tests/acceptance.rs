use std::process::ExitCode;
use std::time::Instant;

use mgbar_core::acceptance::criteria;
use mgbar_core::Engine;

fn main() -> ExitCode {
    let engine = Engine::new();
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.check)(&engine);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  criterion {:>2}: {} ({secs:.2}s)", c.id, c.title),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {} ({secs:.2}s): {msg}", c.id, c.title);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
