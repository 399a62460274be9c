//! One line per acceptance criterion; nonzero exit when any fails.

use colwave::suite::{criterion, TITLES};

fn main() {
    let mut failed = 0;
    for id in 1..=TITLES.len() {
        match criterion(id) {
            Ok(c) => {
                println!("{}", c.report());
                if !c.ok() {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("criterion {id} FAIL {} (error: {e})", TITLES[id - 1]);
                failed += 1;
            }
        }
    }
    println!("{}/{} criteria passed", TITLES.len() - failed, TITLES.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
