use confblocks_cli::acceptance::{run_one, CRITERIA};
use confblocks_cli::DEFAULT_SEED;

fn main() {
    let mut failed = 0;
    for c in CRITERIA {
        let r = run_one(c, DEFAULT_SEED);
        println!("{}", r.line());
        failed += usize::from(!r.passed);
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
