//! The six-node demonstration network, with original and extended line
//! capacities, and its balanced baseline.

use crate::format::NetworkFile;
use crate::model::{Network, OperationState};
use crate::preprocess::Nom;
use crate::scalar::Scalar;

pub const ORIGINAL_JSON: &str = include_str!("../fixtures/example_original.json");
pub const EXTENDED_JSON: &str = include_str!("../fixtures/example_extended.json");

/// Looks up a shipped fixture by name (`example_original`, `example_extended`).
pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "example_original" => Some(ORIGINAL_JSON),
        "example_extended" => Some(EXTENDED_JSON),
        _ => None,
    }
}

fn load<T: Scalar>(text: &str) -> (Network<T>, Nom<T>) {
    NetworkFile::parse(text)
        .and_then(|f| f.load::<T>(T::tolerance()))
        .expect("shipped fixture is valid")
}

pub fn original<T: Scalar>() -> (Network<T>, Nom<T>) {
    load(ORIGINAL_JSON)
}

pub fn extended<T: Scalar>() -> (Network<T>, Nom<T>) {
    load(EXTENDED_JSON)
}

pub fn original_state<T: Scalar>() -> (Network<T>, OperationState<T>) {
    let (net, nom) = original();
    (net, nom.into_state())
}
