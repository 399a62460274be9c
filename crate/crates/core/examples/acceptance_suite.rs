//! The preset acceptance suite, criterion by criterion; pass numbers to run
//! a subset.
//!
//! `cargo run --release --example acceptance_suite -- 1 4 7`

use colwave::suite::{criterion, TITLES};

fn main() {
    let ids: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() { (1..=TITLES.len()).collect() } else { ids };
    for id in ids {
        match criterion(id) {
            Ok(c) => println!("{}", c.report()),
            Err(e) => println!("criterion {id} FAIL {} (error: {e})", TITLES[id - 1]),
        }
    }
}
