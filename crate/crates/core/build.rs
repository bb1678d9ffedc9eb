// Guards the embedded fixture file: checksum plus the double-entry evaluations of
// every polynomial record (coefficients vs. independently recorded values at x=1, x=2).
use std::fs;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

fn eval(coeffs: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    coeffs.iter().rev().fold(BigInt::from(0), |acc, c| acc * &x + c)
}

fn main() {
    println!("cargo:rerun-if-changed=data/fixtures.txt");
    println!("cargo:rerun-if-changed=data/fixtures.sha256");
    let text = fs::read_to_string("data/fixtures.txt").expect("fixture file");
    let want = fs::read_to_string("data/fixtures.sha256").expect("fixture checksum");
    let got: String = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    if got != want.trim() {
        panic!("fixtures.txt checksum mismatch: file hashes to {got}, manifest says {}", want.trim());
    }
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(" | ").collect();
        if fields.len() != 4 || fields[1] != "polynomial" {
            continue;
        }
        let parts: Vec<&str> = fields[3].split(" ; ").collect();
        let coeffs: Vec<BigInt> = parts[0].split(',').map(|c| c.trim().parse().expect("integer coefficient")).collect();
        for p in &parts[1..] {
            let (key, val) = p.split_once('=').expect("key=value");
            let x = match key.trim() {
                "at1" => 1,
                "at2" => 2,
                other => panic!("{}: unknown evaluation key {other}", fields[0]),
            };
            let val: BigInt = val.trim().parse().expect("integer evaluation");
            let e = eval(&coeffs, x);
            if e != val {
                panic!("{}: coefficients evaluate to {e} at x={x} but the record says {val}", fields[0]);
            }
        }
    }
}
