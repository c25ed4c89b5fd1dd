mod common;

use common::bridge::{preserved, violations};

#[test]
fn bridges_preserve_the_logical_map() {
    assert_eq!(preserved(0xb41d, 200), Ok(200));
}

#[test]
fn every_violation_is_refused() {
    let counts = violations(0x0bad, 200).unwrap();
    assert!(counts.iter().all(|&n| n > 0), "{counts:?}");
}
