//! Seeded randomized suites shared by the property tests and the acceptance target. Each
//! suite returns the number of cases it ran, or the first failure.

#![allow(dead_code)]

pub mod algebra;
pub mod groups;

use std::cell::Cell;

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestCaseResult, TestRng, TestRunner};

pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

/// Runs `check` on `cases` values drawn from `strategy` with a fixed seed.
pub fn run<S, F>(cases: u32, seed: u8, strategy: S, check: F) -> Result<u32, String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> TestCaseResult,
{
    let ran = Cell::new(0u32);
    runner(cases, seed)
        .run(&strategy, |v| {
            ran.set(ran.get() + 1);
            check(v)
        })
        .map_err(|e| e.to_string())?;
    Ok(ran.get())
}

pub fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

/// Turns a library error into a case failure.
pub fn ok<T>(r: neron::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(e.to_string()))
}
